//! Deciding whether an equivariant map `S(V) -> S(W)` exists for `G = T^k`.
//!
//! Four criteria are implemented independently and must agree:
//!
//! * [`condition2`]: for every isotropy group `H` of `S(V)`, `e(V^H) | e(W^H)`;
//! * [`condition3`]: for every isotropy group `H`, `dim V^H <= dim W^H`;
//! * [`condition4`]: the same inequality for isotropy groups of dimension `k - 1`;
//! * [`condition5`]: for every primitive direction `dir` of `V` and every `m`,
//!   the number of weights `m' * dir` of `V` with `m | m'` (with multiplicity)
//!   is at most the corresponding count for `W`.
//!
//! [`decide_map_exists`] answers with condition 5, the cheapest of the four.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::euler::{euler_class, euler_divides, EulerClass};
use crate::numtheory::divisors;
use crate::random::{instance_rng, random_lattice, random_pair, SizeBounds};
use crate::torusrep::{
    fixed_dim, fixed_subrep, isotropy_subgroups, primitive_decomposition, subtorus, Subgroup, TorusRep, Weight,
};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Condition {
    C2,
    C3,
    C4,
    C5,
}

impl Condition {
    pub const ALL: [Condition; 4] = [Condition::C2, Condition::C3, Condition::C4, Condition::C5];

    pub fn number(self) -> u8 {
        match self {
            Condition::C2 => 2,
            Condition::C3 => 3,
            Condition::C4 => 4,
            Condition::C5 => 5,
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}", self.number())
    }
}

/// Why a criterion fails.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Witness {
    /// `dim V^H > dim W^H` (complex dimensions).
    DimensionViolation { subgroup: Subgroup, dim_v: u64, dim_w: u64 },
    /// Counting inequality fails for direction `direction` and divisor `m`.
    CountViolation { direction: Weight, m: BigInt, lhs: u64, rhs: u64 },
    /// `e(V^H)` does not divide `e(W^H)`.
    EulerViolation { subgroup: Subgroup, euler_v: EulerClass, euler_w: EulerClass },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::DimensionViolation { subgroup, dim_v, dim_w } => {
                write!(f, "dim V^H = {dim_v} > {dim_w} = dim W^H at H = {subgroup}")
            }
            Witness::CountViolation { direction, m, lhs, rhs } => {
                write!(f, "direction {direction}, m = {m}: {lhs} > {rhs}")
            }
            Witness::EulerViolation { subgroup, euler_v, euler_w } => {
                write!(f, "e(V^H) = {euler_v} does not divide e(W^H) = {euler_w} at H = {subgroup}")
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Verdict {
    pub exists: bool,
    /// Present exactly when `exists` is false.
    pub witness: Option<Witness>,
    pub condition: Condition,
}

impl Verdict {
    fn holds(condition: Condition) -> Verdict {
        Verdict { exists: true, witness: None, condition }
    }

    fn fails(condition: Condition, witness: Witness) -> Verdict {
        Verdict { exists: false, witness: Some(witness), condition }
    }
}

fn check_inputs(v: &TorusRep, w: &TorusRep) -> Result<()> {
    if v.rank() != w.rank() {
        return Err(Error::RankMismatch { left: v.rank(), right: w.rank() });
    }
    if v.is_zero() || w.is_zero() {
        return Err(Error::ZeroRepresentation);
    }
    Ok(())
}

/// The counting criterion. Only `m = 1` and divisors of the multiples `m_alpha`
/// occurring in `V` need checking: for any other `m` the left side is zero.
/// Directions and divisors are scanned in increasing order, so the reported
/// witness is the lexicographically smallest violation.
pub fn condition5(v: &TorusRep, w: &TorusRep) -> Result<Verdict> {
    check_inputs(v, w)?;
    let classes_v = primitive_decomposition(v);
    let classes_w = primitive_decomposition(w);
    for (dir, class) in &classes_v {
        let mut candidates: BTreeSet<BigInt> = BTreeSet::new();
        candidates.insert(BigInt::one());
        for m_alpha in class.entries().keys() {
            candidates.extend(divisors(m_alpha));
        }
        let target = classes_w.get(dir);
        for m in candidates {
            let lhs = class.count_divisible_by(&m);
            let rhs = target.map_or(0, |c| c.count_divisible_by(&m));
            if lhs > rhs {
                return Ok(Verdict::fails(
                    Condition::C5,
                    Witness::CountViolation { direction: dir.clone(), m, lhs, rhs },
                ));
            }
        }
    }
    Ok(Verdict::holds(Condition::C5))
}

fn dimension_check<'a, I>(condition: Condition, v: &TorusRep, w: &TorusRep, subgroups: I) -> Result<Verdict>
where
    I: IntoIterator<Item = &'a Subgroup>,
{
    for h in subgroups {
        let dim_v = fixed_dim(v, h)?;
        let dim_w = fixed_dim(w, h)?;
        if dim_v > dim_w {
            return Ok(Verdict::fails(
                condition,
                Witness::DimensionViolation { subgroup: h.clone(), dim_v, dim_w },
            ));
        }
    }
    Ok(Verdict::holds(condition))
}

/// Dimension inequality over the `(k-1)`-dimensional isotropy groups of `S(V)`,
/// i.e. those whose annihilator has rank one.
pub fn condition4(v: &TorusRep, w: &TorusRep) -> Result<Verdict> {
    check_inputs(v, w)?;
    let isotropy = isotropy_subgroups(v)?;
    dimension_check(Condition::C4, v, w, isotropy.iter().filter(|h| h.annihilator().rank() == 1))
}

/// Dimension inequality over all isotropy groups of `S(V)`.
pub fn condition3(v: &TorusRep, w: &TorusRep) -> Result<Verdict> {
    check_inputs(v, w)?;
    let isotropy = isotropy_subgroups(v)?;
    dimension_check(Condition::C3, v, w, &isotropy)
}

/// Euler class divisibility over all isotropy groups of `S(V)`.
pub fn condition2(v: &TorusRep, w: &TorusRep) -> Result<Verdict> {
    check_inputs(v, w)?;
    for h in isotropy_subgroups(v)? {
        let euler_v = euler_class(&fixed_subrep(v, &h)?);
        let euler_w = euler_class(&fixed_subrep(w, &h)?);
        if !euler_divides(&euler_v, &euler_w)? {
            return Ok(Verdict::fails(Condition::C2, Witness::EulerViolation { subgroup: h, euler_v, euler_w }));
        }
    }
    Ok(Verdict::holds(Condition::C2))
}

pub fn decide_map_exists(v: &TorusRep, w: &TorusRep) -> Result<Verdict> {
    condition5(v, w)
}

/// Runs all four criteria, in the order C2, C3, C4, C5.
pub fn all_conditions(v: &TorusRep, w: &TorusRep) -> Result<[Verdict; 4]> {
    Ok([condition2(v, w)?, condition3(v, w)?, condition4(v, w)?, condition5(v, w)?])
}

/// Enlarges `V` to `V' = V + sum d_dir V_dir` with `dim V' = dim W`, where an
/// equivariant map `S(V') -> S(W)` still exists.
///
/// For each primitive direction `dir` of `W` the padding is
/// `dim W^{T_dir} - dim V^{T_dir}` copies of `V_dir` itself (`m = 1`),
/// which leaves every count with `m > 1` unchanged.
pub fn extend_domain(v: &TorusRep, w: &TorusRep) -> Result<TorusRep> {
    let verdict = decide_map_exists(v, w)?;
    if !verdict.exists {
        return Err(Error::Precondition(format!(
            "no equivariant map S(V) -> S(W) exists ({})",
            verdict.witness.expect("failing verdicts carry a witness")
        )));
    }
    if v.dim() > w.dim() {
        return Err(Error::Precondition(format!("dim V = {} exceeds dim W = {}", v.dim(), w.dim())));
    }
    let classes_v = primitive_decomposition(v);
    let mut out = v.clone();
    for (dir, class_w) in primitive_decomposition(w) {
        let have = classes_v.get(&dir).map_or(0, |c| c.total());
        let need = class_w.total();
        if need > have {
            out.add(dir, need - have)?;
        }
    }
    Ok(out)
}

/// Per-direction fixed dimensions `dim X^{T_dir}` used to audit [`extend_domain`].
pub fn subtorus_dims(x: &TorusRep, directions: impl IntoIterator<Item = Weight>) -> Result<Vec<(Weight, u64)>> {
    directions
        .into_iter()
        .map(|dir| {
            let d = fixed_dim(x, &subtorus(&dir))?;
            Ok((dir, d))
        })
        .collect()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubgroupCounterexample {
    pub subgroup: Subgroup,
    pub dim_v: u64,
    pub dim_w: u64,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClosedSubgroupReport {
    pub seed: u64,
    /// Number of subgroups checked, including the whole group and the identity.
    pub checked: usize,
    pub counterexamples: Vec<SubgroupCounterexample>,
}

impl ClosedSubgroupReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Checks `dim V^H <= dim W^H` on randomly drawn closed subgroups `H`, beyond
/// the isotropy groups the criteria quantify over. Requires a positive verdict;
/// any counterexample indicates an implementation error.
pub fn check_all_closed_subgroups(v: &TorusRep, w: &TorusRep, samples: usize, seed: u64) -> Result<ClosedSubgroupReport> {
    let verdict = decide_map_exists(v, w)?;
    if !verdict.exists {
        return Err(Error::Precondition("closed-subgroup check needs a pair with a positive verdict".into()));
    }
    let k = v.rank();
    let mut subgroups = vec![Subgroup::whole(k), Subgroup::trivial(k)];
    subgroups.extend((0..samples as u64).map(|i| {
        let mut rng = instance_rng(seed, i);
        Subgroup::from_annihilator(random_lattice(&mut rng, k, 6))
    }));
    let outcomes: Vec<Option<SubgroupCounterexample>> = subgroups
        .par_iter()
        .map(|h| {
            let dim_v = fixed_dim(v, h)?;
            let dim_w = fixed_dim(w, h)?;
            Ok((dim_v > dim_w).then(|| SubgroupCounterexample { subgroup: h.clone(), dim_v, dim_w }))
        })
        .collect::<Result<_>>()?;
    Ok(ClosedSubgroupReport {
        seed,
        checked: subgroups.len(),
        counterexamples: outcomes.into_iter().flatten().collect(),
    })
}

/// The `k = 1` pair `V = 2 V_3 + V_5`, `W = V_18 + 2 V_5`: `e(V) = 45t^3` divides
/// `e(W) = 450t^3`, yet no map exists because `dim V^{Z_3} = 2 > 1 = dim W^{Z_3}`.
pub fn z3_obstruction_example() -> (TorusRep, TorusRep) {
    let v = TorusRep::from_i64_terms(1, &[(2, &[3]), (1, &[5])]).expect("valid");
    let w = TorusRep::from_i64_terms(1, &[(1, &[18]), (2, &[5])]).expect("valid");
    (v, w)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Disagreement {
    pub index: u64,
    pub v: TorusRep,
    pub w: TorusRep,
    /// Verdicts of C2, C3, C4, C5 in that order.
    pub verdicts: [bool; 4],
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CrossVerifyReport {
    pub seed: u64,
    pub bounds: SizeBounds,
    /// Random instances plus the fixed regression instance.
    pub total: usize,
    pub agreed: usize,
    /// Instances on which all four criteria report that a map exists.
    pub positive: usize,
    pub disagreements: Vec<Disagreement>,
}

impl CrossVerifyReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
    }
}

fn verdict_bits(v: &TorusRep, w: &TorusRep) -> Result<[bool; 4]> {
    let all = all_conditions(v, w)?;
    Ok([all[0].exists, all[1].exists, all[2].exists, all[3].exists])
}

/// Runs all four criteria on `instances` seeded random pairs (plus the
/// `Z_3` obstruction example as instance 0) and collects disagreements.
pub fn cross_verify(instances: usize, bounds: &SizeBounds, seed: u64) -> Result<CrossVerifyReport> {
    let (ev, ew) = z3_obstruction_example();
    let mut outcomes = vec![(0u64, ev.clone(), ew.clone(), verdict_bits(&ev, &ew)?)];
    let random: Vec<(u64, TorusRep, TorusRep, [bool; 4])> = (1..=instances as u64)
        .into_par_iter()
        .map(|i| {
            let (v, w) = random_pair(&mut instance_rng(seed, i), bounds);
            let bits = verdict_bits(&v, &w)?;
            Ok((i, v, w, bits))
        })
        .collect::<Result<_>>()?;
    outcomes.extend(random);

    let mut report = CrossVerifyReport {
        seed,
        bounds: *bounds,
        total: outcomes.len(),
        agreed: 0,
        positive: 0,
        disagreements: Vec::new(),
    };
    for (index, v, w, bits) in outcomes {
        if bits.iter().all(|&b| b == bits[0]) {
            report.agreed += 1;
            if bits[0] {
                report.positive += 1;
            }
        } else {
            report.disagreements.push(Disagreement { index, v, w, verdicts: bits });
        }
    }
    Ok(report)
}
