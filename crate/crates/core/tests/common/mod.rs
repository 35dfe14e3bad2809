//! Brute-force oracles shared by the integration tests. None of these call the
//! routine they are used to check.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use equimap_core::intlinalg::{IntVector, RationalTorusPoint};
use equimap_core::torusrep::{TorusRep, Weight};
use num_bigint::BigInt;

pub fn to_i64s(v: &IntVector) -> Vec<i64> {
    v.entries().iter().map(|x| i64::try_from(x).unwrap()).collect()
}

/// Lattice points reachable from 0 by adding or subtracting generators while
/// staying inside `[-radius, radius]^k`.
pub fn bfs_lattice_points(k: usize, gens: &[Vec<i64>], radius: i64) -> HashSet<Vec<i64>> {
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(vec![0; k]);
    queue.push_back(vec![0; k]);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            for sign in [1, -1] {
                let q: Vec<i64> = p.iter().zip(g).map(|(a, b)| a + sign * b).collect();
                if q.iter().all(|x| x.abs() <= radius) && seen.insert(q.clone()) {
                    queue.push_back(q);
                }
            }
        }
    }
    seen
}

pub fn box_points(k: usize, radius: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|p| {
                (-radius..=radius).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// Number of weights (with multiplicity) trivial at every listed point.
pub fn brute_fixed_count(v: &TorusRep, points: &[RationalTorusPoint]) -> u64 {
    v.iter()
        .filter(|(w, _)| points.iter().all(|p| p.kills(w.vector())))
        .map(|(_, m)| m)
        .sum()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// `M = sum_{i >= 1} sum_{p^i | m_alpha} r_alpha` over all weights, computed from
/// raw weight entries.
pub fn prime_power_sum(v: &TorusRep, p: i64) -> u64 {
    let mut total = 0;
    for (w, r) in v.iter() {
        let m = to_i64s(w.vector()).into_iter().fold(0, gcd);
        let mut pk = p;
        while m % pk == 0 {
            total += r;
            pk *= p;
        }
    }
    total
}

/// Gaussian binomial `[n choose d]_q`.
pub fn gaussian_binomial(n: u32, d: u32, q: u64) -> u64 {
    if d > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..d {
        num *= (q as u128).pow(n - i) - 1;
        den *= (q as u128).pow(i + 1) - 1;
    }
    (num / den) as u64
}

/// Every subspace of `F_p^l` as the set of its elements, from spans of all
/// sets of at most `l` vectors.
pub fn naive_subspaces(p: u64, l: usize) -> BTreeSet<BTreeSet<Vec<u64>>> {
    let vectors: Vec<Vec<u64>> = (0..p.pow(l as u32))
        .map(|mut code| {
            (0..l)
                .map(|_| {
                    let d = code % p;
                    code /= p;
                    d
                })
                .collect()
        })
        .collect();
    let span = |gens: &[&Vec<u64>]| -> BTreeSet<Vec<u64>> {
        let mut elems: BTreeSet<Vec<u64>> = BTreeSet::new();
        elems.insert(vec![0; l]);
        loop {
            let mut added = false;
            let current: Vec<Vec<u64>> = elems.iter().cloned().collect();
            for e in &current {
                for g in gens {
                    let s: Vec<u64> = e.iter().zip(g.iter()).map(|(a, b)| (a + b) % p).collect();
                    added |= elems.insert(s);
                }
            }
            if !added {
                return elems;
            }
        }
    };
    let mut out = BTreeSet::new();
    let mut stack: Vec<(usize, Vec<&Vec<u64>>)> = vec![(0, vec![])];
    while let Some((start, chosen)) = stack.pop() {
        out.insert(span(&chosen));
        if chosen.len() == l {
            continue;
        }
        for (i, v) in vectors.iter().enumerate().skip(start) {
            let mut next = chosen.clone();
            next.push(v);
            stack.push((i + 1, next));
        }
    }
    out
}

/// Elements of a subspace given by a basis.
pub fn subspace_elements(p: u64, l: usize, basis: &[Vec<u64>]) -> BTreeSet<Vec<u64>> {
    let mut out = BTreeSet::new();
    let d = basis.len();
    for code in 0..p.pow(d as u32) {
        let mut c = code;
        let mut v = vec![0u64; l];
        for row in basis {
            let coeff = c % p;
            c /= p;
            for (x, y) in v.iter_mut().zip(row) {
                *x = (*x + coeff * y) % p;
            }
        }
        out.insert(v);
    }
    out
}

/// Determinant by cofactor expansion.
pub fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut total = BigInt::from(0);
    for j in 0..n {
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][j] * det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Multiplicities per primitive direction, computed from raw entries.
pub fn direction_totals(v: &TorusRep) -> BTreeMap<Vec<i64>, u64> {
    let mut out = BTreeMap::new();
    for (w, r) in v.iter() {
        let e = to_i64s(w.vector());
        let g = e.iter().copied().fold(0, gcd);
        let dir: Vec<i64> = e.iter().map(|x| x / g).collect();
        *out.entry(dir).or_insert(0) += r;
    }
    out
}

pub fn weight(xs: &[i64]) -> Weight {
    Weight::from_i64s(xs).unwrap()
}
