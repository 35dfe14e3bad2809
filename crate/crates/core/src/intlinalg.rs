//! Exact integer linear algebra over `Z^k`.
//!
//! Subgroups of `Z^k` are stored as row-style Hermite normal forms: pivots are
//! positive, pivot columns strictly increase, and every entry above a pivot
//! lies in `[0, pivot)`. That representative is unique, so two
//! [`LatticeBasis`] values compare equal exactly when they span the same
//! lattice. All arithmetic is carried out on [`BigInt`].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Dense integer matrix, row-major.
pub type IntMatrix = Vec<Vec<BigInt>>;

/// Upper bound on the number of points [`annihilator_elements`] will list.
pub const MAX_ANNIHILATOR_POINTS: u64 = 1_000_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct IntVector(Vec<BigInt>);

impl IntVector {
    pub fn new(entries: Vec<BigInt>) -> Self {
        IntVector(entries)
    }

    pub fn from_i64s(entries: &[i64]) -> Self {
        IntVector(entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(len: usize) -> Self {
        IntVector(vec![BigInt::zero(); len])
    }

    /// The `i`-th standard basis vector of `Z^len`.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zero(len);
        v.0[i] = BigInt::one();
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn first_nonzero(&self) -> Option<&BigInt> {
        self.0.iter().find(|x| !x.is_zero())
    }

    pub fn dot(&self, other: &IntVector) -> BigInt {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn scaled(&self, c: &BigInt) -> IntVector {
        IntVector(self.0.iter().map(|x| x * c).collect())
    }

    pub fn negated(&self) -> IntVector {
        IntVector(self.0.iter().map(|x| -x).collect())
    }

    pub fn add(&self, other: &IntVector) -> IntVector {
        IntVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

fn check_len(v: &IntVector, expected: usize) -> Result<()> {
    if v.len() != expected {
        return Err(Error::LengthMismatch { expected, found: v.len() });
    }
    Ok(())
}

/// Splits a nonzero vector into its content and primitive part:
/// `v = g * primitive` with `g > 0` and `gcd(primitive) = 1`.
/// Signs are left untouched.
pub fn gcd_primitive(v: &IntVector) -> Result<(BigInt, IntVector)> {
    let g = v.0.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return Err(Error::TrivialSummand);
    }
    let primitive = IntVector(v.0.iter().map(|x| x / &g).collect());
    Ok((g, primitive))
}

/// A subgroup of `Z^k` in canonical Hermite normal form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LatticeBasis {
    ambient: usize,
    rows: Vec<IntVector>,
}

impl LatticeBasis {
    /// The zero lattice of `Z^ambient`.
    pub fn zero(ambient: usize) -> Self {
        LatticeBasis { ambient, rows: Vec::new() }
    }

    /// All of `Z^ambient`, with the identity as basis.
    pub fn standard(ambient: usize) -> Self {
        LatticeBasis {
            ambient,
            rows: (0..ambient).map(|i| IntVector::unit(ambient, i)).collect(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rows(&self) -> &[IntVector] {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rows.len() == self.ambient
    }

    /// `(column, pivot)` for every row.
    pub fn pivots(&self) -> Vec<(usize, &BigInt)> {
        self.rows
            .iter()
            .map(|row| {
                let col = row.0.iter().position(|x| !x.is_zero()).expect("HNF rows are nonzero");
                (col, &row.0[col])
            })
            .collect()
    }

    /// Index `[Z^k : L]` for a full-rank lattice, i.e. `|det|`.
    pub fn index(&self) -> Option<BigInt> {
        if !self.is_full_rank() {
            return None;
        }
        Some(self.pivots().into_iter().map(|(_, p)| p.clone()).product())
    }

    pub fn contains(&self, v: &IntVector) -> Result<bool> {
        lattice_contains(self, v)
    }

    pub fn is_sublattice_of(&self, other: &LatticeBasis) -> Result<bool> {
        for row in &self.rows {
            if !other.contains(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Lattice generated by `self` together with `extra`.
    pub fn join(&self, extra: &[IntVector]) -> Result<LatticeBasis> {
        let mut gens = self.rows.clone();
        gens.extend_from_slice(extra);
        hnf(self.ambient, &gens)
    }

    pub fn matrix(&self) -> IntMatrix {
        self.rows.iter().map(|r| r.0.clone()).collect()
    }
}

impl fmt::Display for LatticeBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{row}")?;
        }
        write!(f, ">")
    }
}

fn sub_multiple(rows: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let src = rows[source].clone();
    for (t, s) in rows[target].iter_mut().zip(&src) {
        *t -= q * s;
    }
}

/// Canonical HNF basis of the subgroup of `Z^ambient` generated by `generators`.
pub fn hnf(ambient: usize, generators: &[IntVector]) -> Result<LatticeBasis> {
    for g in generators {
        check_len(g, ambient)?;
    }
    let mut rows: Vec<Vec<BigInt>> = generators
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.0.clone())
        .collect();

    let mut pivot_row = 0;
    for col in 0..ambient {
        if pivot_row == rows.len() {
            break;
        }
        loop {
            let best = (pivot_row..rows.len())
                .filter(|&r| !rows[r][col].is_zero())
                .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()));
            let Some(best) = best else { break };
            rows.swap(pivot_row, best);
            let mut cleared = true;
            for r in pivot_row + 1..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                let q = rows[r][col].div_floor(&rows[pivot_row][col]);
                sub_multiple(&mut rows, r, pivot_row, &q);
                if !rows[r][col].is_zero() {
                    cleared = false;
                }
            }
            if cleared {
                break;
            }
        }
        if rows[pivot_row][col].is_zero() {
            continue;
        }
        if rows[pivot_row][col].is_negative() {
            for x in rows[pivot_row].iter_mut() {
                *x = -&*x;
            }
        }
        for r in 0..pivot_row {
            let q = rows[r][col].div_floor(&rows[pivot_row][col]);
            sub_multiple(&mut rows, r, pivot_row, &q);
        }
        pivot_row += 1;
    }
    rows.truncate(pivot_row);
    Ok(LatticeBasis { ambient, rows: rows.into_iter().map(IntVector).collect() })
}

/// Whether `v` lies in the row span of `lattice` over `Z`.
pub fn lattice_contains(lattice: &LatticeBasis, v: &IntVector) -> Result<bool> {
    check_len(v, lattice.ambient)?;
    let mut rest = v.0.clone();
    let mut next_col = 0;
    for row in &lattice.rows {
        let col = row.0.iter().position(|x| !x.is_zero()).expect("HNF rows are nonzero");
        if rest[next_col..col].iter().any(|x| !x.is_zero()) {
            return Ok(false);
        }
        let (q, r) = rest[col].div_rem(&row.0[col]);
        if !r.is_zero() {
            return Ok(false);
        }
        for (x, y) in rest.iter_mut().zip(&row.0) {
            *x -= &q * y;
        }
        next_col = col + 1;
    }
    Ok(rest[next_col..].iter().all(Zero::is_zero))
}

pub fn lattice_rank(lattice: &LatticeBasis) -> usize {
    lattice.rank()
}

/// Smith normal form `left * A * right = diag(d_1, ..., d_r)` of a basis matrix `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Positive invariant factors with `d_1 | d_2 | ...`.
    pub diagonal: Vec<BigInt>,
    /// Unimodular, `r x r`.
    pub left: IntMatrix,
    /// Unimodular, `k x k`.
    pub right: IntMatrix,
}

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

fn add_col_multiple(m: &mut IntMatrix, target: usize, source: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let s = row[source].clone();
        row[target] += q * s;
    }
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

pub fn snf(basis: &LatticeBasis) -> Result<SmithForm> {
    if basis.rows.is_empty() {
        return Err(Error::EmptyBasis);
    }
    let r = basis.rank();
    let k = basis.ambient;
    let mut a = basis.matrix();
    let mut left = identity(r);
    let mut right = identity(k);

    for t in 0..r {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..r {
                for j in t..k {
                    if a[i][j].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            // Rows of an HNF basis are independent, so a pivot always exists.
            let (bi, bj) = best.expect("basis rows are linearly independent");
            a.swap(t, bi);
            left.swap(t, bi);
            swap_cols(&mut a, t, bj);
            swap_cols(&mut right, t, bj);

            let mut clean = true;
            for i in t + 1..r {
                let q = a[i][t].div_floor(&a[t][t]);
                sub_multiple(&mut a, i, t, &q);
                sub_multiple(&mut left, i, t, &q);
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..k {
                let q = -a[t][j].div_floor(&a[t][t]);
                add_col_multiple(&mut a, j, t, &q);
                add_col_multiple(&mut right, j, t, &q);
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let offending = (t + 1..r).find(|&i| (t + 1..k).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match offending {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    sub_multiple(&mut a, t, i, &minus_one);
                    sub_multiple(&mut left, t, i, &minus_one);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
            for x in left[t].iter_mut() {
                *x = -&*x;
            }
        }
    }
    let diagonal = (0..r).map(|i| a[i][i].clone()).collect();
    Ok(SmithForm { diagonal, left, right })
}

pub fn matmul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).map(|(x, brow)| x * &brow[j]).sum())
                .collect()
        })
        .collect()
}

/// A point of `T^k = R^k / Z^k` with rational coordinates in `[0, 1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RationalTorusPoint(Vec<BigRational>);

impl RationalTorusPoint {
    pub fn new(coordinates: Vec<BigRational>) -> Self {
        RationalTorusPoint(coordinates.into_iter().map(|q| &q - q.floor()).collect())
    }

    pub fn coordinates(&self) -> &[BigRational] {
        &self.0
    }

    /// Whether the character `chi` is trivial at this point, i.e. `chi . theta` is an integer.
    pub fn kills(&self, chi: &IntVector) -> bool {
        let s: BigRational = self
            .0
            .iter()
            .zip(chi.entries())
            .map(|(q, c)| q * BigRational::from_integer(c.clone()))
            .sum();
        s.is_integer()
    }
}

impl fmt::Display for RationalTorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, q) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{q}")?;
        }
        write!(f, "]")
    }
}

/// All `theta` in `T^k` on which every character of `lattice` is trivial.
///
/// Requires full rank; the result has exactly `|det|` points.
pub fn annihilator_elements(lattice: &LatticeBasis) -> Result<Vec<RationalTorusPoint>> {
    if !lattice.is_full_rank() {
        return Err(Error::InfiniteSubgroup { rank: lattice.rank(), ambient: lattice.ambient });
    }
    let k = lattice.ambient;
    if k == 0 {
        return Ok(vec![RationalTorusPoint(Vec::new())]);
    }
    let smith = snf(lattice)?;
    let order = lattice.index().expect("full rank");
    if order > BigInt::from(MAX_ANNIHILATOR_POINTS) {
        return Err(Error::LimitExceeded(format!(
            "annihilator has {order} elements (limit {MAX_ANNIHILATOR_POINTS})"
        )));
    }
    let radices: Vec<u64> = smith.diagonal.iter().map(|d| d.to_u64().expect("bounded by order")).collect();

    // theta = right * (a_1/d_1, ..., a_k/d_k) for 0 <= a_i < d_i.
    let mut points = Vec::new();
    let mut digits = vec![0u64; k];
    loop {
        let phi: Vec<BigRational> = digits
            .iter()
            .zip(&smith.diagonal)
            .map(|(&a, d)| BigRational::new(BigInt::from(a), d.clone()))
            .collect();
        let theta = smith
            .right
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&phi)
                    .map(|(c, q)| q * BigRational::from_integer(c.clone()))
                    .sum::<BigRational>()
            })
            .collect();
        points.push(RationalTorusPoint::new(theta));

        let mut pos = 0;
        loop {
            if pos == k {
                return Ok(points);
            }
            digits[pos] += 1;
            if digits[pos] < radices[pos] {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> IntVector {
        IntVector::from_i64s(xs)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn gcd_primitive_examples() {
        assert_eq!(gcd_primitive(&v(&[4, 6])).unwrap(), (2.into(), v(&[2, 3])));
        assert_eq!(gcd_primitive(&v(&[5])).unwrap(), (5.into(), v(&[1])));
        assert_eq!(gcd_primitive(&v(&[3, -6])).unwrap(), (3.into(), v(&[1, -2])));
        assert_eq!(gcd_primitive(&v(&[0, 0])), Err(Error::TrivialSummand));
    }

    #[test]
    fn hnf_examples() {
        let b = hnf(2, &[v(&[2, 0]), v(&[0, 2]), v(&[2, 2])]).unwrap();
        assert_eq!(b.rows(), &[v(&[2, 0]), v(&[0, 2])]);
        let empty = hnf(3, &[]).unwrap();
        assert_eq!(empty.rank(), 0);
        assert_eq!(empty, LatticeBasis::zero(3));
        assert_eq!(hnf(1, &[v(&[4]), v(&[6])]).unwrap().rows(), &[v(&[2])]);
    }

    #[test]
    fn hnf_reduces_above_pivots() {
        let b = hnf(2, &[v(&[1, 5]), v(&[0, 3])]).unwrap();
        assert_eq!(b.rows(), &[v(&[1, 2]), v(&[0, 3])]);
        let b = hnf(2, &[v(&[-1, -5]), v(&[0, -3])]).unwrap();
        assert_eq!(b.rows(), &[v(&[1, 2]), v(&[0, 3])]);
    }

    #[test]
    fn hnf_is_idempotent() {
        let b = hnf(3, &[v(&[2, 4, 6]), v(&[3, -1, 2]), v(&[0, 5, 5])]).unwrap();
        assert_eq!(hnf(3, b.rows()).unwrap(), b);
    }

    #[test]
    fn hnf_rejects_mismatched_lengths() {
        assert_eq!(
            hnf(2, &[v(&[1, 0]), v(&[1])]),
            Err(Error::LengthMismatch { expected: 2, found: 1 })
        );
    }

    #[test]
    fn snf_examples() {
        let s = snf(&hnf(1, &[v(&[3])]).unwrap()).unwrap();
        assert_eq!(s.diagonal, vec![BigInt::from(3)]);
        let s = snf(&hnf(2, &[v(&[2, 0]), v(&[0, 2])]).unwrap()).unwrap();
        assert_eq!(s.diagonal, vec![BigInt::from(2), BigInt::from(2)]);
        let basis = hnf(2, &[v(&[1, 1]), v(&[0, 2])]).unwrap();
        let s = snf(&basis).unwrap();
        assert_eq!(s.diagonal, vec![BigInt::from(1), BigInt::from(2)]);
        let d = matmul(&matmul(&s.left, &basis.matrix()), &s.right);
        assert_eq!(d, vec![vec![1.into(), 0.into()], vec![0.into(), 2.into()]]);
        assert_eq!(snf(&LatticeBasis::zero(2)), Err(Error::EmptyBasis));
    }

    #[test]
    fn contains_examples() {
        let three = hnf(1, &[v(&[3])]).unwrap();
        assert!(lattice_contains(&three, &v(&[3])).unwrap());
        assert!(!lattice_contains(&three, &v(&[5])).unwrap());
        assert!(!lattice_contains(&LatticeBasis::zero(2), &v(&[1, 1])).unwrap());
        assert!(lattice_contains(&LatticeBasis::zero(2), &v(&[0, 0])).unwrap());
        let skew = hnf(3, &[v(&[0, 2, 1])]).unwrap();
        assert!(lattice_contains(&skew, &v(&[0, -4, -2])).unwrap());
        assert!(!lattice_contains(&skew, &v(&[1, 2, 1])).unwrap());
        assert!(!lattice_contains(&skew, &v(&[0, 2, 2])).unwrap());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(lattice_rank(&LatticeBasis::zero(2)), 0);
        assert_eq!(lattice_rank(&hnf(2, &[v(&[2, 3])]).unwrap()), 1);
        assert_eq!(lattice_rank(&hnf(2, &[v(&[1, 0]), v(&[0, 1])]).unwrap()), 2);
    }

    #[test]
    fn annihilator_examples() {
        let pts = annihilator_elements(&hnf(1, &[v(&[3])]).unwrap()).unwrap();
        let mut coords: Vec<_> = pts.iter().map(|p| p.coordinates()[0].clone()).collect();
        coords.sort();
        assert_eq!(coords, vec![q(0, 1), q(1, 3), q(2, 3)]);

        let mut pts = annihilator_elements(&hnf(2, &[v(&[2, 0]), v(&[0, 2])]).unwrap()).unwrap();
        pts.sort();
        let mut expected: Vec<_> = [(0, 0), (0, 1), (1, 0), (1, 1)]
            .iter()
            .map(|&(a, b)| RationalTorusPoint::new(vec![q(a, 2), q(b, 2)]))
            .collect();
        expected.sort();
        assert_eq!(pts, expected);

        let mut pts = annihilator_elements(&hnf(2, &[v(&[1, 1]), v(&[0, 2])]).unwrap()).unwrap();
        pts.sort();
        assert_eq!(
            pts,
            vec![
                RationalTorusPoint::new(vec![q(0, 1), q(0, 1)]),
                RationalTorusPoint::new(vec![q(1, 2), q(1, 2)]),
            ]
        );
    }

    #[test]
    fn annihilator_of_non_full_rank_is_infinite() {
        let b = hnf(2, &[v(&[1, 1])]).unwrap();
        assert_eq!(
            annihilator_elements(&b),
            Err(Error::InfiniteSubgroup { rank: 1, ambient: 2 })
        );
    }

    #[test]
    fn torus_point_normalizes_mod_one() {
        let p = RationalTorusPoint::new(vec![q(-1, 3), q(7, 2)]);
        assert_eq!(p.coordinates(), &[q(2, 3), q(1, 2)]);
    }

    #[test]
    fn big_entries_do_not_overflow() {
        let big: BigInt = BigInt::from(i64::MAX) * BigInt::from(i64::MAX);
        let a = IntVector::new(vec![big.clone() * 3, big.clone() * 5]);
        let b = IntVector::new(vec![big.clone() * 2, big.clone() * 7]);
        let l = hnf(2, &[a.clone(), b.clone()]).unwrap();
        assert!(l.contains(&a).unwrap() && l.contains(&b).unwrap());
        assert_eq!(l.index().unwrap(), &big * &big * 11);
    }
}
