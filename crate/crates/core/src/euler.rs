//! Euler classes of torus representations in `H*(BT^k; Z) = Z[t_1, ..., t_k]`.
//!
//! The Euler class of `V_alpha` is the linear form `alpha_1 t_1 + ... + alpha_k t_k`
//! and Euler classes multiply over direct sums. Writing `alpha = m_alpha * dir` with
//! `dir` primitive, every class factors as
//!
//! ```text
//! content * prod_dir (dir . t)^exponent
//! ```
//!
//! with a positive integer content. Products of primitive polynomials are primitive
//! (Gauss), and distinct primitive directions give non-associate irreducible linear
//! forms, so divisibility in `Z[t]` reduces to divisibility of contents plus
//! domination of exponents. [`DensePoly`] is the multiplied-out form used to check
//! that rule.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::intlinalg::IntVector;
use crate::numtheory::{is_prime, p_valuation};
use crate::torusrep::{primitive_decomposition, TorusRep, Weight};

pub const MAX_DENSE_RANK: usize = 3;
pub const MAX_DENSE_DEGREE: u64 = 12;

/// A factored element `content * prod (dir . t)^e` of `Z[t_1, ..., t_k]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct EulerClass {
    rank: usize,
    content: BigInt,
    factors: BTreeMap<Weight, u64>,
}

impl EulerClass {
    /// The class `1`, Euler class of the zero representation.
    pub fn unit(rank: usize) -> EulerClass {
        EulerClass { rank, content: BigInt::one(), factors: BTreeMap::new() }
    }

    pub fn from_parts<I>(rank: usize, content: BigInt, factors: I) -> Result<EulerClass>
    where
        I: IntoIterator<Item = (Weight, u64)>,
    {
        if !content.is_positive() {
            return Err(Error::InvalidClass(format!("content {content} is not positive")));
        }
        let mut out = EulerClass { rank, content, factors: BTreeMap::new() };
        for (dir, e) in factors {
            if dir.rank() != rank {
                return Err(Error::LengthMismatch { expected: rank, found: dir.rank() });
            }
            if !dir.is_primitive() {
                return Err(Error::InvalidClass(format!("factor {dir} is not primitive")));
            }
            if e > 0 {
                *out.factors.entry(dir).or_insert(0) += e;
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn content(&self) -> &BigInt {
        &self.content
    }

    pub fn factors(&self) -> &BTreeMap<Weight, u64> {
        &self.factors
    }

    /// Total degree as a polynomial, equal to the complex dimension of the representation.
    pub fn degree(&self) -> u64 {
        self.factors.values().sum()
    }

    pub fn exponent(&self, dir: &Weight) -> u64 {
        self.factors.get(dir).copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &EulerClass) -> Result<EulerClass> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { left: self.rank, right: other.rank });
        }
        let mut out = self.clone();
        out.content *= &other.content;
        for (dir, &e) in &other.factors {
            *out.factors.entry(dir.clone()).or_insert(0) += e;
        }
        Ok(out)
    }

    /// Value at an integer point `t`.
    pub fn evaluate(&self, point: &[BigInt]) -> BigInt {
        let mut acc = self.content.clone();
        for (dir, &e) in &self.factors {
            let lin = dir.vector().dot(&IntVector::new(point.to_vec()));
            acc *= num_traits::pow(lin, e as usize);
        }
        acc
    }
}

fn write_linear_form(f: &mut fmt::Formatter<'_>, dir: &Weight) -> fmt::Result {
    let entries = dir.vector().entries();
    let single = entries.len() == 1;
    let mut first = true;
    for (i, c) in entries.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let var = if single { "t".to_string() } else { format!("t{}", i + 1) };
        let mag = c.abs();
        if c.is_negative() {
            write!(f, "-")?;
        } else if !first {
            write!(f, "+")?;
        }
        if mag.is_one() {
            write!(f, "{var}")?;
        } else {
            write!(f, "{mag}*{var}")?;
        }
        first = false;
    }
    Ok(())
}

/// Renders `45*t^3` for rank 1, `4*(t1)^2*(t1+2*t2)^1` otherwise.
/// The content is omitted when it is 1 and some factor is present.
impl fmt::Display for EulerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "{}", self.content);
        }
        let mut first = true;
        if !self.content.is_one() {
            write!(f, "{}", self.content)?;
            first = false;
        }
        for (dir, e) in &self.factors {
            if !first {
                write!(f, "*")?;
            }
            if self.rank == 1 {
                write!(f, "t^{e}")?;
            } else {
                write!(f, "(")?;
                write_linear_form(f, dir)?;
                write!(f, ")^{e}")?;
            }
            first = false;
        }
        Ok(())
    }
}

pub fn euler_class(v: &TorusRep) -> EulerClass {
    let mut out = EulerClass::unit(v.rank());
    for class in primitive_decomposition(v).into_values() {
        for (m, &r) in class.entries() {
            out.content *= num_traits::pow(m.clone(), r as usize);
        }
        out.factors.insert(class.direction().clone(), class.total());
    }
    out
}

/// Divisibility of `b` by `a` in `Z[t_1, ..., t_k]`.
pub fn euler_divides(a: &EulerClass, b: &EulerClass) -> Result<bool> {
    if a.rank != b.rank {
        return Err(Error::RankMismatch { left: a.rank, right: b.rank });
    }
    if !b.content.is_multiple_of(&a.content) {
        return Ok(false);
    }
    Ok(a.factors.iter().all(|(dir, &e)| b.exponent(dir) >= e))
}

/// Exponent of the prime `p` in the content of `e`.
pub fn content_p_valuation(e: &EulerClass, p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    Ok(p_valuation(&e.content, p))
}

/// A polynomial in `Z[t_1, ..., t_k]` as monomial exponent vector -> coefficient.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DensePoly {
    rank: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl DensePoly {
    pub fn zero(rank: usize) -> DensePoly {
        DensePoly { rank, terms: BTreeMap::new() }
    }

    pub fn constant(rank: usize, c: BigInt) -> DensePoly {
        let mut p = DensePoly::zero(rank);
        p.add_term(vec![0; rank], c);
        p
    }

    pub fn from_terms<I>(rank: usize, terms: I) -> DensePoly
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let mut p = DensePoly::zero(rank);
        for (mono, c) in terms {
            assert_eq!(mono.len(), rank, "monomial length must equal the rank");
            p.add_term(mono, c);
        }
        p
    }

    /// The linear form `v_1 t_1 + ... + v_k t_k`.
    pub fn linear(coeffs: &[BigInt]) -> DensePoly {
        let rank = coeffs.len();
        DensePoly::from_terms(
            rank,
            coeffs.iter().enumerate().map(|(i, c)| {
                let mut mono = vec![0; rank];
                mono[i] = 1;
                (mono, c.clone())
            }),
        )
    }

    fn add_term(&mut self, mono: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lexicographically largest monomial with its coefficient.
    pub fn leading_term(&self) -> Option<(&Vec<u32>, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn mul(&self, other: &DensePoly) -> DensePoly {
        let mut out = DensePoly::zero(self.rank);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mono = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                out.add_term(mono, ca * cb);
            }
        }
        out
    }

    fn sub_scaled_shifted(&mut self, p: &DensePoly, coeff: &BigInt, shift: &[u32]) {
        for (m, c) in &p.terms {
            let mono = m.iter().zip(shift).map(|(x, y)| x + y).collect();
            self.add_term(mono, -(c * coeff));
        }
    }

    pub fn evaluate(&self, point: &[BigInt]) -> BigInt {
        self.terms
            .iter()
            .map(|(mono, c)| {
                mono.iter()
                    .zip(point)
                    .fold(c.clone(), |acc, (&e, x)| acc * num_traits::pow(x.clone(), e as usize))
            })
            .sum()
    }
}

/// Multiplies out a factored class. Limited to rank <= 3 and degree <= 12.
pub fn expand(e: &EulerClass, rank: usize) -> Result<DensePoly> {
    if rank != e.rank {
        return Err(Error::RankMismatch { left: e.rank, right: rank });
    }
    if rank > MAX_DENSE_RANK {
        return Err(Error::LimitExceeded(format!("dense expansion needs rank <= {MAX_DENSE_RANK}, got {rank}")));
    }
    if e.degree() > MAX_DENSE_DEGREE {
        return Err(Error::LimitExceeded(format!(
            "dense expansion needs degree <= {MAX_DENSE_DEGREE}, got {}",
            e.degree()
        )));
    }
    let mut acc = DensePoly::constant(rank, e.content.clone());
    for (dir, &exp) in &e.factors {
        let lin = DensePoly::linear(dir.vector().entries());
        for _ in 0..exp {
            acc = acc.mul(&lin);
        }
    }
    Ok(acc)
}

/// Exact divisibility `p | q` in `Z[t]` by division on lexicographic leading terms.
///
/// If `q = p * r` then `lt(q) = lt(p) * lt(r)`, so cancelling leading terms never
/// gets stuck; any leading term that `lt(p)` does not divide over `Z` proves that
/// no quotient exists.
pub fn dense_divides(p: &DensePoly, q: &DensePoly) -> Result<bool> {
    if p.rank != q.rank {
        return Err(Error::RankMismatch { left: p.rank, right: q.rank });
    }
    let Some((lead_mono, lead_coeff)) = p.leading_term() else {
        return Err(Error::DivisionByZero);
    };
    let lead_mono = lead_mono.clone();
    let lead_coeff = lead_coeff.clone();
    let mut rest = q.clone();
    while let Some((mono, coeff)) = rest.leading_term() {
        if mono.iter().zip(&lead_mono).any(|(a, b)| a < b) {
            return Ok(false);
        }
        let (quot, rem) = coeff.div_rem(&lead_coeff);
        if !rem.is_zero() {
            return Ok(false);
        }
        let shift: Vec<u32> = mono.iter().zip(&lead_mono).map(|(a, b)| a - b).collect();
        rest.sub_scaled_shifted(p, &quot, &shift);
    }
    Ok(true)
}

/// Total degree of the dense polynomial, if nonzero.
pub fn dense_degree(p: &DensePoly) -> Option<u64> {
    p.terms.keys().map(|m| m.iter().map(|&e| e as u64).sum()).max()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rep(k: usize, terms: &[(u64, &[i64])]) -> TorusRep {
        TorusRep::from_i64_terms(k, terms).unwrap()
    }

    fn w(xs: &[i64]) -> Weight {
        Weight::from_i64s(xs).unwrap()
    }

    fn class(k: usize, content: i64, factors: &[(&[i64], u64)]) -> EulerClass {
        EulerClass::from_parts(k, content.into(), factors.iter().map(|&(d, e)| (w(d), e))).unwrap()
    }

    fn poly(k: usize, terms: &[(&[u32], i64)]) -> DensePoly {
        DensePoly::from_terms(k, terms.iter().map(|&(m, c)| (m.to_vec(), c.into())))
    }

    #[test]
    fn euler_class_examples() {
        let ev = euler_class(&rep(1, &[(2, &[3]), (1, &[5])]));
        assert_eq!(ev, class(1, 45, &[(&[1], 3)]));
        assert_eq!(ev.to_string(), "45*t^3");
        let ew = euler_class(&rep(1, &[(1, &[18]), (2, &[5])]));
        assert_eq!(ew, class(1, 450, &[(&[1], 3)]));
        assert_eq!(ew.to_string(), "450*t^3");
        let unit = euler_class(&TorusRep::zero(2).unwrap());
        assert_eq!(unit, EulerClass::unit(2));
        assert_eq!(unit.to_string(), "1");
    }

    #[test]
    fn rendering_multi_variable() {
        let e = class(2, 4, &[(&[1, 2], 1), (&[1, 0], 2)]);
        assert_eq!(e.to_string(), "4*(t1)^2*(t1+2*t2)^1");
        let e = class(3, 1, &[(&[0, 1, -3], 2)]);
        assert_eq!(e.to_string(), "(t2-3*t3)^2");
    }

    #[test]
    fn divides_examples() {
        let a = class(1, 45, &[(&[1], 3)]);
        let b = class(1, 450, &[(&[1], 3)]);
        assert!(euler_divides(&a, &b).unwrap());
        assert!(euler_divides(&a, &a).unwrap());
        let c = class(2, 4, &[(&[1, 2], 1)]);
        let d = class(2, 8, &[(&[1, 2], 1), (&[1, 0], 2)]);
        assert!(euler_divides(&c, &d).unwrap());
        assert!(!euler_divides(&d, &c).unwrap());
        assert!(!euler_divides(&b, &a).unwrap());
    }

    #[test]
    fn divides_examples_agree_with_dense() {
        let c = class(2, 4, &[(&[1, 2], 1)]);
        let d = class(2, 8, &[(&[1, 2], 1), (&[1, 0], 2)]);
        assert!(dense_divides(&expand(&c, 2).unwrap(), &expand(&d, 2).unwrap()).unwrap());
        assert!(!dense_divides(&expand(&d, 2).unwrap(), &expand(&c, 2).unwrap()).unwrap());
    }

    #[test]
    fn expand_examples() {
        assert_eq!(expand(&class(1, 45, &[(&[1], 3)]), 1).unwrap(), poly(1, &[(&[3], 45)]));
        let e = class(2, 1, &[(&[1, 0], 1), (&[1, 1], 1)]);
        assert_eq!(expand(&e, 2).unwrap(), poly(2, &[(&[2, 0], 1), (&[1, 1], 1)]));
        assert_eq!(expand(&EulerClass::unit(3), 3).unwrap(), poly(3, &[(&[0, 0, 0], 1)]));
    }

    #[test]
    fn expand_limits() {
        let big = class(1, 1, &[(&[1], 13)]);
        assert!(matches!(expand(&big, 1), Err(Error::LimitExceeded(_))));
        let wide = EulerClass::unit(4);
        assert!(matches!(expand(&wide, 4), Err(Error::LimitExceeded(_))));
    }

    #[test]
    fn dense_divides_examples() {
        assert!(dense_divides(&poly(1, &[(&[3], 1)]), &poly(1, &[(&[3], 450)])).unwrap());
        assert!(!dense_divides(&poly(1, &[(&[3], 45)]), &poly(1, &[(&[3], 46)])).unwrap());
        let p = poly(2, &[(&[2, 0], 1), (&[1, 1], 1)]);
        let q = poly(2, &[(&[3, 0], 1), (&[2, 1], 2), (&[1, 2], 1)]);
        assert!(dense_divides(&p, &q).unwrap());
        assert!(!dense_divides(&q, &p).unwrap());
        assert_eq!(dense_divides(&DensePoly::zero(1), &p), Err(Error::RankMismatch { left: 1, right: 2 }));
        assert_eq!(dense_divides(&DensePoly::zero(2), &p), Err(Error::DivisionByZero));
    }

    #[test]
    fn valuation_examples() {
        let ev = class(1, 45, &[(&[1], 3)]);
        let ew = class(1, 450, &[(&[1], 3)]);
        assert_eq!(content_p_valuation(&ev, 3).unwrap(), 2);
        assert_eq!(content_p_valuation(&ew, 3).unwrap(), 2);
        assert_eq!(content_p_valuation(&ev, 7).unwrap(), 0);
        assert_eq!(content_p_valuation(&ev, 9), Err(Error::NotPrime("9".into())));
    }

    #[test]
    fn from_parts_validates() {
        assert!(EulerClass::from_parts(1, 0.into(), []).is_err());
        assert!(EulerClass::from_parts(1, 3.into(), [(w(&[2]), 1)]).is_err());
        assert!(EulerClass::from_parts(2, 3.into(), [(w(&[1]), 1)]).is_err());
    }

    #[test]
    fn evaluation_matches_expansion() {
        let e = class(2, 6, &[(&[1, -2], 2), (&[0, 1], 1), (&[3, 1], 1)]);
        let p = expand(&e, 2).unwrap();
        for (x, y) in [(1, 1), (2, -3), (0, 5), (-4, 7)] {
            let pt = [BigInt::from(x), BigInt::from(y)];
            assert_eq!(e.evaluate(&pt), p.evaluate(&pt));
        }
        assert_eq!(dense_degree(&p), Some(e.degree()));
    }
}
