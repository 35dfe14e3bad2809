//! Representations of the p-torus `(Z_p)^l`.
//!
//! Closed subgroups of `(Z_p)^l` are the `F_p`-subspaces of `F_p^l`, so the
//! dimension criterion can be checked over every subgroup outright. A character
//! `lambda` is trivial on `H` when `lambda . h = 0` for every `h` in `H`.
//!
//! For odd `p` the characters `lambda` and `-lambda` index the same real
//! two-dimensional irreducible and are identified; for `p = 2` each nonzero
//! character is a real line. Dimensions are counted in these units.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::numtheory::is_prime;

pub const MAX_ENUM_PRIME: u64 = 7;
pub const MAX_ENUM_RANK: usize = 4;

fn check_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    Ok(())
}

fn inverse_mod(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// A nonzero character in `F_p^l`, normalized under `lambda ~ -lambda` for odd `p`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PCharacter {
    p: u64,
    entries: Vec<u64>,
}

impl PCharacter {
    /// Reduces `entries` mod `p` and normalizes so the first nonzero entry lies in
    /// `1..=(p-1)/2` (odd `p`).
    pub fn new(p: u64, entries: &[i64]) -> Result<PCharacter> {
        check_prime(p)?;
        let modulus = p as i64;
        let mut entries: Vec<u64> = entries.iter().map(|&x| x.rem_euclid(modulus) as u64).collect();
        let Some(&lead) = entries.iter().find(|&&x| x != 0) else {
            return Err(Error::TrivialSummand);
        };
        if p > 2 && lead > (p - 1) / 2 {
            for x in entries.iter_mut() {
                *x = (p - *x) % p;
            }
        }
        Ok(PCharacter { p, entries })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    fn pairing(&self, h: &[u64]) -> u64 {
        self.entries.iter().zip(h).fold(0, |acc, (a, b)| (acc + a * b) % self.p)
    }

    /// Whether this character is trivial on the subgroup `h`.
    pub fn vanishes_on(&self, h: &FpSubspace) -> bool {
        h.basis.iter().all(|row| self.pairing(row) == 0)
    }
}

impl fmt::Display for PCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PTorusRep {
    p: u64,
    rank: usize,
    chars: BTreeMap<PCharacter, u64>,
}

impl PTorusRep {
    pub fn zero(p: u64, rank: usize) -> Result<PTorusRep> {
        check_prime(p)?;
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        Ok(PTorusRep { p, rank, chars: BTreeMap::new() })
    }

    pub fn from_terms<'a, I>(p: u64, rank: usize, terms: I) -> Result<PTorusRep>
    where
        I: IntoIterator<Item = (u64, &'a [i64])>,
    {
        let mut rep = PTorusRep::zero(p, rank)?;
        for (mult, entries) in terms {
            if entries.len() != rank {
                return Err(Error::LengthMismatch { expected: rank, found: entries.len() });
            }
            rep.add(PCharacter::new(p, entries)?, mult)?;
        }
        Ok(rep)
    }

    pub fn add(&mut self, chi: PCharacter, mult: u64) -> Result<()> {
        if chi.p != self.p {
            return Err(Error::Precondition(format!("character over F_{} added to a rep over F_{}", chi.p, self.p)));
        }
        if chi.rank() != self.rank {
            return Err(Error::LengthMismatch { expected: self.rank, found: chi.rank() });
        }
        if mult == 0 {
            return Err(Error::ZeroMultiplicity);
        }
        *self.chars.entry(chi).or_insert(0) += mult;
        Ok(())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of irreducible summands, counted with multiplicity.
    pub fn dim(&self) -> u64 {
        self.chars.values().sum()
    }

    /// Real dimension of one irreducible summand: 1 for `p = 2`, otherwise 2.
    pub fn real_unit(&self) -> u64 {
        if self.p == 2 {
            1
        } else {
            2
        }
    }

    pub fn real_dim(&self) -> u64 {
        self.real_unit() * self.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.chars.is_empty()
    }

    pub fn multiplicity(&self, chi: &PCharacter) -> u64 {
        self.chars.get(chi).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PCharacter, u64)> {
        self.chars.iter().map(|(c, &m)| (c, m))
    }
}

impl fmt::Display for PTorusRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.chars.is_empty() {
            return write!(f, "0");
        }
        for (i, (c, m)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{m}*{c}")?;
        }
        Ok(())
    }
}

/// A subspace of `F_p^l` in reduced row echelon form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct FpSubspace {
    p: u64,
    ambient: usize,
    basis: Vec<Vec<u64>>,
}

impl FpSubspace {
    pub fn zero(p: u64, ambient: usize) -> FpSubspace {
        FpSubspace { p, ambient, basis: Vec::new() }
    }

    pub fn full(p: u64, ambient: usize) -> FpSubspace {
        let basis = (0..ambient)
            .map(|i| (0..ambient).map(|j| u64::from(i == j)).collect())
            .collect();
        FpSubspace { p, ambient, basis }
    }

    /// Span of `vectors` (entries taken mod `p`).
    pub fn span(p: u64, ambient: usize, vectors: &[Vec<i64>]) -> Result<FpSubspace> {
        check_prime(p)?;
        let modulus = p as i64;
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(vectors.len());
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::LengthMismatch { expected: ambient, found: v.len() });
            }
            rows.push(v.iter().map(|&x| x.rem_euclid(modulus) as u64).collect());
        }
        let mut lead = 0;
        for col in 0..ambient {
            let Some(pivot) = (lead..rows.len()).find(|&r| rows[r][col] != 0) else {
                continue;
            };
            rows.swap(lead, pivot);
            let inv = inverse_mod(rows[lead][col], p);
            for x in rows[lead].iter_mut() {
                *x = *x * inv % p;
            }
            for r in 0..rows.len() {
                if r == lead || rows[r][col] == 0 {
                    continue;
                }
                let factor = rows[r][col];
                let pivot_row = rows[lead].clone();
                for (x, y) in rows[r].iter_mut().zip(&pivot_row) {
                    *x = (*x + p - factor * y % p) % p;
                }
            }
            lead += 1;
        }
        rows.truncate(lead);
        Ok(FpSubspace { p, ambient, basis: rows })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.basis
    }

    pub fn is_subspace_of(&self, other: &FpSubspace) -> bool {
        let mut gens: Vec<Vec<i64>> = other.basis.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
        gens.extend(self.basis.iter().map(|r| r.iter().map(|&x| x as i64).collect()));
        FpSubspace::span(self.p, self.ambient, &gens).is_ok_and(|s| s.dim() == other.dim())
    }
}

impl fmt::Display for FpSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, row) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, ">")
    }
}

fn combinations(n: usize, d: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, d, &mut Vec::new(), &mut out);
    out
}

/// Every subspace of `F_p^l` exactly once, ordered by dimension, then pivot
/// columns, then free entries. Limited to `p <= 7`, `l <= 4`.
pub fn enumerate_subspaces(p: u64, l: usize) -> Result<Vec<FpSubspace>> {
    check_prime(p)?;
    if p > MAX_ENUM_PRIME || l > MAX_ENUM_RANK {
        return Err(Error::LimitExceeded(format!(
            "subspace enumeration supports p <= {MAX_ENUM_PRIME} and l <= {MAX_ENUM_RANK}, got p = {p}, l = {l}"
        )));
    }
    let mut out = Vec::new();
    for d in 0..=l {
        for pivots in combinations(l, d) {
            // Free slots: row i, column c > pivots[i] that is not a pivot column.
            let free: Vec<(usize, usize)> = pivots
                .iter()
                .enumerate()
                .flat_map(|(i, &pc)| (pc + 1..l).filter(|c| !pivots.contains(c)).map(move |c| (i, c)))
                .collect();
            let count = p.pow(free.len() as u32);
            for code in 0..count {
                let mut basis = vec![vec![0u64; l]; d];
                for (i, &pc) in pivots.iter().enumerate() {
                    basis[i][pc] = 1;
                }
                let mut rest = code;
                for &(i, c) in free.iter().rev() {
                    basis[i][c] = rest % p;
                    rest /= p;
                }
                out.push(FpSubspace { p, ambient: l, basis });
            }
        }
    }
    Ok(out)
}

fn check_compatible(v: &PTorusRep, h_p: u64, h_ambient: usize) -> Result<()> {
    if v.p != h_p {
        return Err(Error::Precondition(format!("prime mismatch: {} vs {}", v.p, h_p)));
    }
    if v.rank != h_ambient {
        return Err(Error::RankMismatch { left: v.rank, right: h_ambient });
    }
    Ok(())
}

/// Dimension of `V^H` in irreducible units.
pub fn fixed_dim_p(v: &PTorusRep, h: &FpSubspace) -> Result<u64> {
    check_compatible(v, h.p, h.ambient)?;
    Ok(v.iter().filter(|(c, _)| c.vanishes_on(h)).map(|(_, m)| m).sum())
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PWitness {
    pub subspace: FpSubspace,
    pub dim_v: u64,
    pub dim_w: u64,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PVerdict {
    pub exists: bool,
    pub witness: Option<PWitness>,
}

/// An equivariant map `S(V) -> S(W)` exists iff `dim V^H <= dim W^H` for every
/// subgroup `H`; the witness is the first violating subspace in enumeration order.
pub fn decide_p(v: &PTorusRep, w: &PTorusRep) -> Result<PVerdict> {
    check_compatible(v, w.p, w.rank)?;
    if v.is_zero() || w.is_zero() {
        return Err(Error::ZeroRepresentation);
    }
    for h in enumerate_subspaces(v.p, v.rank)? {
        let dim_v = fixed_dim_p(v, &h)?;
        let dim_w = fixed_dim_p(w, &h)?;
        if dim_v > dim_w {
            return Ok(PVerdict { exists: false, witness: Some(PWitness { subspace: h, dim_v, dim_w }) });
        }
    }
    Ok(PVerdict { exists: true, witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prep(p: u64, l: usize, terms: &[(u64, &[i64])]) -> PTorusRep {
        PTorusRep::from_terms(p, l, terms.iter().copied()).unwrap()
    }

    #[test]
    fn characters_normalize() {
        assert_eq!(PCharacter::new(5, &[4, 1]).unwrap().entries(), &[1, 4]);
        assert_eq!(PCharacter::new(5, &[0, 3]).unwrap().entries(), &[0, 2]);
        assert_eq!(PCharacter::new(2, &[1, 1]).unwrap().entries(), &[1, 1]);
        assert_eq!(PCharacter::new(3, &[-1]).unwrap().entries(), &[1]);
        assert_eq!(PCharacter::new(3, &[3, 6]), Err(Error::TrivialSummand));
        assert_eq!(PCharacter::new(4, &[1]), Err(Error::NotPrime("4".into())));
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_subspaces(2, 2).unwrap().len(), 5);
        assert_eq!(enumerate_subspaces(3, 1).unwrap().len(), 2);
        let all = enumerate_subspaces(5, 2).unwrap();
        assert!(all.contains(&FpSubspace::zero(5, 2)));
        assert!(all.contains(&FpSubspace::full(5, 2)));
        assert_eq!(all[0], FpSubspace::zero(5, 2));
        assert!(matches!(enumerate_subspaces(11, 1), Err(Error::LimitExceeded(_))));
        assert!(matches!(enumerate_subspaces(2, 5), Err(Error::LimitExceeded(_))));
    }

    #[test]
    fn span_is_canonical() {
        let a = FpSubspace::span(3, 3, &[vec![1, 2, 0], vec![0, 1, 1]]).unwrap();
        let b = FpSubspace::span(3, 3, &[vec![1, 0, 1], vec![2, 0, 2], vec![1, 2, 0]]).unwrap();
        assert_eq!(a, b);
        assert!(enumerate_subspaces(3, 3).unwrap().contains(&a));
    }

    #[test]
    fn fixed_dim_examples() {
        let v = prep(2, 2, &[(1, &[1, 0])]);
        let h = FpSubspace::span(2, 2, &[vec![0, 1]]).unwrap();
        assert_eq!(fixed_dim_p(&v, &h).unwrap(), 1);
        let v = prep(3, 2, &[(2, &[1, 0]), (1, &[1, 1])]);
        assert_eq!(fixed_dim_p(&v, &FpSubspace::zero(3, 2)).unwrap(), 3);
        assert_eq!(fixed_dim_p(&v, &FpSubspace::full(3, 2)).unwrap(), 0);
    }

    #[test]
    fn decide_examples() {
        let v = prep(2, 2, &[(1, &[1, 0])]);
        let w = prep(2, 2, &[(1, &[1, 0]), (1, &[0, 1])]);
        assert!(decide_p(&v, &w).unwrap().exists);
        let back = decide_p(&w, &v).unwrap();
        assert!(!back.exists);
        assert_eq!(back.witness, Some(PWitness { subspace: FpSubspace::zero(2, 2), dim_v: 2, dim_w: 1 }));
        assert!(decide_p(&v, &v).unwrap().exists);
    }

    #[test]
    fn decide_rejects_mismatches() {
        let v = prep(2, 2, &[(1, &[1, 0])]);
        let w = prep(3, 2, &[(1, &[1, 0])]);
        assert!(matches!(decide_p(&v, &w), Err(Error::Precondition(_))));
        let u = prep(2, 1, &[(1, &[1])]);
        assert_eq!(decide_p(&v, &u), Err(Error::RankMismatch { left: 2, right: 1 }));
        assert_eq!(decide_p(&v, &PTorusRep::zero(2, 2).unwrap()), Err(Error::ZeroRepresentation));
    }

    #[test]
    fn real_units() {
        assert_eq!(prep(2, 1, &[(3, &[1])]).real_dim(), 3);
        assert_eq!(prep(5, 1, &[(3, &[1])]).real_dim(), 6);
    }
}
