//! Orthogonal representations of the torus `T^k` without trivial summands.
//!
//! A real irreducible of `T^k` is indexed by a nonzero character up to sign,
//! so weights are stored with their first nonzero entry positive. A
//! representation is a multiset of such weights.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::intlinalg::{gcd_primitive, hnf, lattice_contains, IntVector, LatticeBasis};

/// Largest number of distinct weights accepted by [`isotropy_subgroups`].
pub const MAX_ISOTROPY_SUPPORT: usize = 20;

/// A nonzero character of `T^k`, sign-normalized.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Weight(IntVector);

impl Weight {
    pub fn new(v: IntVector) -> Result<Weight> {
        normalize_weight(v)
    }

    pub fn from_i64s(entries: &[i64]) -> Result<Weight> {
        normalize_weight(IntVector::from_i64s(entries))
    }

    pub fn vector(&self) -> &IntVector {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// `m_alpha`, the gcd of the entries.
    pub fn multiple(&self) -> BigInt {
        gcd_primitive(&self.0).expect("weights are nonzero").0
    }

    /// `(m_alpha, alpha / m_alpha)`. The primitive part keeps the normalized sign.
    pub fn split(&self) -> (BigInt, Weight) {
        let (m, p) = gcd_primitive(&self.0).expect("weights are nonzero");
        (m, Weight(p))
    }

    pub fn is_primitive(&self) -> bool {
        self.multiple() == BigInt::from(1)
    }

    pub fn scaled(&self, m: &BigInt) -> Result<Weight> {
        normalize_weight(self.0.scaled(m))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Picks the representative of `{v, -v}` whose first nonzero entry is positive.
pub fn normalize_weight(v: IntVector) -> Result<Weight> {
    match v.first_nonzero() {
        None => Err(Error::TrivialSummand),
        Some(x) if x.is_negative() => Ok(Weight(v.negated())),
        Some(_) => Ok(Weight(v)),
    }
}

/// `V = sum r_alpha V_alpha`, stored as weight -> multiplicity.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TorusRep {
    rank: usize,
    weights: BTreeMap<Weight, u64>,
}

impl TorusRep {
    /// The zero representation of `T^rank`.
    pub fn zero(rank: usize) -> Result<TorusRep> {
        if rank == 0 {
            return Err(Error::ZeroRank);
        }
        Ok(TorusRep { rank, weights: BTreeMap::new() })
    }

    /// Builds a representation from `(character, multiplicity)` pairs; characters
    /// may be unnormalized and repeated.
    pub fn from_terms<I>(rank: usize, terms: I) -> Result<TorusRep>
    where
        I: IntoIterator<Item = (IntVector, u64)>,
    {
        let mut rep = TorusRep::zero(rank)?;
        for (v, mult) in terms {
            if v.len() != rank {
                return Err(Error::LengthMismatch { expected: rank, found: v.len() });
            }
            rep.add(normalize_weight(v)?, mult)?;
        }
        Ok(rep)
    }

    /// Convenience constructor for small literal representations.
    pub fn from_i64_terms(rank: usize, terms: &[(u64, &[i64])]) -> Result<TorusRep> {
        TorusRep::from_terms(rank, terms.iter().map(|&(m, v)| (IntVector::from_i64s(v), m)))
    }

    pub fn add(&mut self, weight: Weight, mult: u64) -> Result<()> {
        if weight.rank() != self.rank {
            return Err(Error::LengthMismatch { expected: self.rank, found: weight.rank() });
        }
        if mult == 0 {
            return Err(Error::ZeroMultiplicity);
        }
        *self.weights.entry(weight).or_insert(0) += mult;
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Complex dimension, `sum r_alpha`.
    pub fn dim(&self) -> u64 {
        self.weights.values().sum()
    }

    pub fn real_dim(&self) -> u64 {
        2 * self.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn multiplicity(&self, weight: &Weight) -> u64 {
        self.weights.get(weight).copied().unwrap_or(0)
    }

    pub fn weights(&self) -> &BTreeMap<Weight, u64> {
        &self.weights
    }

    pub fn support(&self) -> impl Iterator<Item = &Weight> {
        self.weights.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, u64)> {
        self.weights.iter().map(|(w, &m)| (w, m))
    }

    /// Whether `self` is a subrepresentation of `other`.
    pub fn is_subrep_of(&self, other: &TorusRep) -> bool {
        self.rank == other.rank && self.iter().all(|(w, m)| other.multiplicity(w) >= m)
    }
}

impl fmt::Display for TorusRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.weights.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, m)) in self.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{m}*{w}")?;
        }
        Ok(())
    }
}

fn check_ranks(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::RankMismatch { left: a, right: b });
    }
    Ok(())
}

pub fn direct_sum(v: &TorusRep, w: &TorusRep) -> Result<TorusRep> {
    check_ranks(v.rank, w.rank)?;
    let mut out = v.clone();
    for (weight, m) in w.iter() {
        out.add(weight.clone(), m)?;
    }
    Ok(out)
}

/// Weights of a representation that share one primitive direction,
/// grouped by their multiple `m_alpha`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PrimitiveClass {
    direction: Weight,
    entries: BTreeMap<BigInt, u64>,
}

impl PrimitiveClass {
    pub fn direction(&self) -> &Weight {
        &self.direction
    }

    /// `m_alpha -> r_alpha`.
    pub fn entries(&self) -> &BTreeMap<BigInt, u64> {
        &self.entries
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    /// `sum r_alpha` over weights of the class with `m | m_alpha`.
    pub fn count_divisible_by(&self, m: &BigInt) -> u64 {
        self.entries
            .iter()
            .filter(|(ma, _)| ma.is_multiple_of(m))
            .map(|(_, &r)| r)
            .sum()
    }
}

pub fn primitive_decomposition(v: &TorusRep) -> BTreeMap<Weight, PrimitiveClass> {
    let mut classes: BTreeMap<Weight, PrimitiveClass> = BTreeMap::new();
    for (w, r) in v.iter() {
        let (m, direction) = w.split();
        let class = classes
            .entry(direction.clone())
            .or_insert_with(|| PrimitiveClass { direction, entries: BTreeMap::new() });
        *class.entries.entry(m).or_insert(0) += r;
    }
    classes
}

/// Reassembles a representation from its primitive classes.
pub fn from_decomposition(rank: usize, classes: &BTreeMap<Weight, PrimitiveClass>) -> Result<TorusRep> {
    let mut rep = TorusRep::zero(rank)?;
    for class in classes.values() {
        for (m, &r) in &class.entries {
            rep.add(class.direction.scaled(m)?, r)?;
        }
    }
    Ok(rep)
}

/// A closed subgroup `H` of `T^k`, stored as its annihilator lattice
/// `{chi : chi(H) = 1}`. Larger lattices mean smaller subgroups.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Subgroup {
    annihilator: LatticeBasis,
}

impl Subgroup {
    pub fn from_annihilator(annihilator: LatticeBasis) -> Subgroup {
        Subgroup { annihilator }
    }

    /// Subgroup on which exactly the characters in the span of `characters` vanish.
    pub fn from_characters(rank: usize, characters: &[IntVector]) -> Result<Subgroup> {
        Ok(Subgroup { annihilator: hnf(rank, characters)? })
    }

    /// The identity subgroup.
    pub fn trivial(rank: usize) -> Subgroup {
        Subgroup { annihilator: LatticeBasis::standard(rank) }
    }

    /// The whole torus.
    pub fn whole(rank: usize) -> Subgroup {
        Subgroup { annihilator: LatticeBasis::zero(rank) }
    }

    pub fn annihilator(&self) -> &LatticeBasis {
        &self.annihilator
    }

    pub fn ambient_rank(&self) -> usize {
        self.annihilator.ambient()
    }

    /// Dimension as a Lie group: `k - rank(annihilator)`.
    pub fn dimension(&self) -> usize {
        self.annihilator.ambient() - self.annihilator.rank()
    }

    pub fn is_finite(&self) -> bool {
        self.annihilator.is_full_rank()
    }

    /// Whether the character `chi` is trivial on this subgroup.
    pub fn fixes(&self, chi: &Weight) -> Result<bool> {
        lattice_contains(&self.annihilator, chi.vector())
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ann{}", self.annihilator)
    }
}

/// `K_alpha`, the kernel of `V_alpha`.
pub fn kernel_subgroup(alpha: &Weight) -> Subgroup {
    Subgroup::from_characters(alpha.rank(), std::slice::from_ref(alpha.vector()))
        .expect("a single weight has consistent length")
}

/// `V^H` with multiplicities.
pub fn fixed_subrep(v: &TorusRep, h: &Subgroup) -> Result<TorusRep> {
    check_ranks(v.rank, h.ambient_rank())?;
    let mut out = TorusRep::zero(v.rank)?;
    for (w, m) in v.iter() {
        if h.fixes(w)? {
            out.add(w.clone(), m)?;
        }
    }
    Ok(out)
}

/// Complex dimension of `V^H`.
pub fn fixed_dim(v: &TorusRep, h: &Subgroup) -> Result<u64> {
    check_ranks(v.rank, h.ambient_rank())?;
    let mut total = 0;
    for (w, m) in v.iter() {
        if h.fixes(w)? {
            total += m;
        }
    }
    Ok(total)
}

/// Isotropy groups of points of `S(V)`: one annihilator `<S>` per nonempty set `S`
/// of distinct weights, deduplicated.
pub fn isotropy_subgroups(v: &TorusRep) -> Result<BTreeSet<Subgroup>> {
    if v.is_zero() {
        return Err(Error::ZeroRepresentation);
    }
    let support: Vec<&Weight> = v.support().collect();
    if support.len() > MAX_ISOTROPY_SUPPORT {
        return Err(Error::LimitExceeded(format!(
            "{} distinct weights (isotropy enumeration supports at most {MAX_ISOTROPY_SUPPORT})",
            support.len()
        )));
    }
    // span(S + w) = span(span(S) + w), so closing the set of spans under
    // "add one weight" visits every subset span once per distinct lattice.
    let mut spans: BTreeSet<LatticeBasis> = BTreeSet::new();
    spans.insert(LatticeBasis::zero(v.rank));
    for w in support {
        let extended: Vec<LatticeBasis> = spans
            .iter()
            .map(|l| l.join(std::slice::from_ref(w.vector())))
            .collect::<Result<_>>()?;
        spans.extend(extended);
    }
    Ok(spans
        .into_iter()
        .filter(|l| l.rank() > 0)
        .map(Subgroup::from_annihilator)
        .collect())
}

/// Subtorus `T_dir`: the identity component of the kernel of a primitive direction.
pub fn subtorus(direction: &Weight) -> Subgroup {
    kernel_subgroup(direction)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(xs: &[i64]) -> Weight {
        Weight::from_i64s(xs).unwrap()
    }

    fn rep(k: usize, terms: &[(u64, &[i64])]) -> TorusRep {
        TorusRep::from_i64_terms(k, terms).unwrap()
    }

    fn example_v() -> TorusRep {
        rep(1, &[(2, &[3]), (1, &[5])])
    }

    fn example_w() -> TorusRep {
        rep(1, &[(1, &[18]), (2, &[5])])
    }

    fn sub(k: usize, gens: &[&[i64]]) -> Subgroup {
        let gens: Vec<_> = gens.iter().map(|g| IntVector::from_i64s(g)).collect();
        Subgroup::from_characters(k, &gens).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(w(&[-3, 6]).vector(), &IntVector::from_i64s(&[3, -6]));
        assert_eq!(w(&[0, -2]).vector(), &IntVector::from_i64s(&[0, 2]));
        assert_eq!(w(&[5]).vector(), &IntVector::from_i64s(&[5]));
        assert_eq!(Weight::from_i64s(&[0, 0]), Err(Error::TrivialSummand));
    }

    #[test]
    fn direct_sum_examples() {
        let a = rep(1, &[(2, &[3])]);
        let b = rep(1, &[(1, &[3]), (1, &[5])]);
        assert_eq!(direct_sum(&a, &b).unwrap(), rep(1, &[(3, &[3]), (1, &[5])]));
        assert_eq!(direct_sum(&a, &TorusRep::zero(1).unwrap()).unwrap(), a);
        let c = direct_sum(&rep(2, &[(1, &[1, 0])]), &rep(2, &[(1, &[0, 1])])).unwrap();
        assert_eq!(c, rep(2, &[(1, &[1, 0]), (1, &[0, 1])]));
        assert_eq!(
            direct_sum(&a, &rep(2, &[(1, &[1, 0])])),
            Err(Error::RankMismatch { left: 1, right: 2 })
        );
    }

    #[test]
    fn negative_and_repeated_terms_merge() {
        assert_eq!(rep(1, &[(1, &[3]), (2, &[-3])]), rep(1, &[(3, &[3])]));
        assert_eq!(TorusRep::from_i64_terms(1, &[(0, &[3])]), Err(Error::ZeroMultiplicity));
        assert_eq!(TorusRep::from_i64_terms(1, &[(1, &[0])]), Err(Error::TrivialSummand));
    }

    #[test]
    fn decomposition_examples() {
        let d = primitive_decomposition(&example_v());
        assert_eq!(d.len(), 1);
        let class = &d[&w(&[1])];
        let expected: BTreeMap<BigInt, u64> = [(3.into(), 2), (5.into(), 1)].into_iter().collect();
        assert_eq!(class.entries(), &expected);

        let d = primitive_decomposition(&rep(2, &[(1, &[2, 4]), (1, &[1, 2])]));
        assert_eq!(d.len(), 1);
        let expected: BTreeMap<BigInt, u64> = [(1.into(), 1), (2.into(), 1)].into_iter().collect();
        assert_eq!(d[&w(&[1, 2])].entries(), &expected);

        let d = primitive_decomposition(&rep(2, &[(1, &[1, 0]), (1, &[0, 1])]));
        assert_eq!(d.len(), 2);
        assert!(d.values().all(|c| c.total() == 1));
    }

    #[test]
    fn decomposition_round_trip() {
        let v = rep(2, &[(2, &[2, 4]), (1, &[1, 2]), (3, &[3, -3]), (1, &[0, 5])]);
        assert_eq!(from_decomposition(2, &primitive_decomposition(&v)).unwrap(), v);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_subgroup(&w(&[3])).annihilator().rows(), &[IntVector::from_i64s(&[3])]);
        assert_eq!(kernel_subgroup(&w(&[2, 4])).annihilator().rows(), &[IntVector::from_i64s(&[2, 4])]);
        assert_eq!(kernel_subgroup(&w(&[1])), Subgroup::trivial(1));
        assert_eq!(kernel_subgroup(&w(&[2, 4])).dimension(), 1);
    }

    #[test]
    fn fixed_subrep_examples() {
        let z3 = sub(1, &[&[3]]);
        assert_eq!(fixed_subrep(&example_v(), &z3).unwrap(), rep(1, &[(2, &[3])]));
        let v = rep(2, &[(1, &[1, 0]), (2, &[3, -1])]);
        assert_eq!(fixed_subrep(&v, &Subgroup::trivial(2)).unwrap(), v);
        let v = rep(2, &[(1, &[1, 0]), (1, &[1, 1])]);
        let h = sub(2, &[&[2, 0], &[0, 2]]);
        assert!(fixed_subrep(&v, &h).unwrap().is_zero());
    }

    #[test]
    fn fixed_dim_examples() {
        let z3 = sub(1, &[&[3]]);
        assert_eq!(fixed_dim(&example_v(), &z3).unwrap(), 2);
        assert_eq!(fixed_dim(&example_w(), &z3).unwrap(), 1);
        assert_eq!(fixed_dim(&example_v(), &Subgroup::whole(1)).unwrap(), 0);
        assert_eq!(
            fixed_dim(&example_v(), &Subgroup::whole(2)),
            Err(Error::RankMismatch { left: 1, right: 2 })
        );
    }

    #[test]
    fn isotropy_examples() {
        let got = isotropy_subgroups(&example_v()).unwrap();
        let expected: BTreeSet<_> = [sub(1, &[&[3]]), sub(1, &[&[5]]), sub(1, &[&[1]])].into_iter().collect();
        assert_eq!(got, expected);

        let got = isotropy_subgroups(&rep(1, &[(1, &[2])])).unwrap();
        assert_eq!(got.into_iter().collect::<Vec<_>>(), vec![sub(1, &[&[2]])]);

        let got = isotropy_subgroups(&rep(2, &[(1, &[1, 0]), (1, &[0, 1])])).unwrap();
        let expected: BTreeSet<_> =
            [sub(2, &[&[1, 0]]), sub(2, &[&[0, 1]]), sub(2, &[&[1, 0], &[0, 1]])].into_iter().collect();
        assert_eq!(got, expected);

        assert_eq!(isotropy_subgroups(&TorusRep::zero(1).unwrap()), Err(Error::ZeroRepresentation));
    }

    #[test]
    fn isotropy_support_guard() {
        let terms: Vec<(IntVector, u64)> = (1..=21).map(|i| (IntVector::from_i64s(&[i]), 1)).collect();
        let v = TorusRep::from_terms(1, terms).unwrap();
        assert!(matches!(isotropy_subgroups(&v), Err(Error::LimitExceeded(_))));
    }
}
