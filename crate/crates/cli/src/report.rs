//! The machine-readable report. Every integer that can grow without bound is a
//! decimal string. The human-readable text is rendered from a [`Report`].

use std::fmt::Write as _;

use equimap_core::decide::{ClosedSubgroupReport, Condition, CrossVerifyReport, Verdict, Witness};
use equimap_core::euler::EulerClass;
use equimap_core::intlinalg::{hnf, IntVector};
use equimap_core::ptorus::{FpSubspace, PVerdict, PWitness};
use equimap_core::torusrep::{Subgroup, Weight};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const FORMAT: &str = "equimap-report/1";

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("invalid integer `{0}`")]
    Integer(String),
    #[error("unknown condition `{0}`")]
    Condition(String),
    #[error("witness kind `{0}` does not belong to this verdict type")]
    WitnessKind(&'static str),
    #[error(transparent)]
    Core(#[from] equimap_core::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn int(s: &str) -> Result<BigInt, ReportError> {
    s.parse().map_err(|_| ReportError::Integer(s.to_string()))
}

fn ints(v: &IntVector) -> Vec<String> {
    v.entries().iter().map(ToString::to_string).collect()
}

fn vector(entries: &[String]) -> Result<IntVector, ReportError> {
    Ok(IntVector::new(entries.iter().map(|s| int(s)).collect::<Result<_, _>>()?))
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct InputEcho {
    pub group: String,
    /// Canonical (normalized) forms.
    pub v: String,
    pub w: String,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct SubgroupDto {
    pub rendered: String,
    pub ambient: usize,
    /// Annihilator lattice in Hermite normal form.
    pub annihilator: Vec<Vec<String>>,
    pub dimension: usize,
}

impl SubgroupDto {
    pub fn from_core(h: &Subgroup) -> Self {
        SubgroupDto {
            rendered: h.to_string(),
            ambient: h.ambient_rank(),
            annihilator: h.annihilator().rows().iter().map(ints).collect(),
            dimension: h.dimension(),
        }
    }

    pub fn to_core(&self) -> Result<Subgroup, ReportError> {
        let rows: Vec<IntVector> = self.annihilator.iter().map(|r| vector(r)).collect::<Result<_, _>>()?;
        Ok(Subgroup::from_annihilator(hnf(self.ambient, &rows)?))
    }
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct FactorDto {
    pub direction: Vec<String>,
    pub exponent: u64,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct EulerClassDto {
    pub rendered: String,
    pub rank: usize,
    pub content: String,
    pub factors: Vec<FactorDto>,
}

impl EulerClassDto {
    pub fn from_core(e: &EulerClass) -> Self {
        EulerClassDto {
            rendered: e.to_string(),
            rank: e.rank(),
            content: e.content().to_string(),
            factors: e
                .factors()
                .iter()
                .map(|(d, &exponent)| FactorDto { direction: ints(d.vector()), exponent })
                .collect(),
        }
    }

    pub fn to_core(&self) -> Result<EulerClass, ReportError> {
        let factors = self
            .factors
            .iter()
            .map(|f| Ok((Weight::new(vector(&f.direction)?)?, f.exponent)))
            .collect::<Result<Vec<_>, ReportError>>()?;
        Ok(EulerClass::from_parts(self.rank, int(&self.content)?, factors)?)
    }
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessDto {
    Count { direction: Vec<String>, m: String, lhs: u64, rhs: u64 },
    Dimension { subgroup: SubgroupDto, dim_v: u64, dim_w: u64 },
    Euler { subgroup: SubgroupDto, euler_v: EulerClassDto, euler_w: EulerClassDto },
    Subspace { p: u64, ambient: usize, basis: Vec<Vec<u64>>, rendered: String, dim_v: u64, dim_w: u64 },
}

impl WitnessDto {
    fn kind(&self) -> &'static str {
        match self {
            WitnessDto::Count { .. } => "count",
            WitnessDto::Dimension { .. } => "dimension",
            WitnessDto::Euler { .. } => "euler",
            WitnessDto::Subspace { .. } => "subspace",
        }
    }

    pub fn from_core(w: &Witness) -> Self {
        match w {
            Witness::CountViolation { direction, m, lhs, rhs } => WitnessDto::Count {
                direction: ints(direction.vector()),
                m: m.to_string(),
                lhs: *lhs,
                rhs: *rhs,
            },
            Witness::DimensionViolation { subgroup, dim_v, dim_w } => {
                WitnessDto::Dimension { subgroup: SubgroupDto::from_core(subgroup), dim_v: *dim_v, dim_w: *dim_w }
            }
            Witness::EulerViolation { subgroup, euler_v, euler_w } => WitnessDto::Euler {
                subgroup: SubgroupDto::from_core(subgroup),
                euler_v: EulerClassDto::from_core(euler_v),
                euler_w: EulerClassDto::from_core(euler_w),
            },
        }
    }

    pub fn from_p(w: &PWitness) -> Self {
        WitnessDto::Subspace {
            p: w.subspace.p(),
            ambient: w.subspace.ambient(),
            basis: w.subspace.basis().to_vec(),
            rendered: w.subspace.to_string(),
            dim_v: w.dim_v,
            dim_w: w.dim_w,
        }
    }

    pub fn to_core(&self) -> Result<Witness, ReportError> {
        Ok(match self {
            WitnessDto::Count { direction, m, lhs, rhs } => Witness::CountViolation {
                direction: Weight::new(vector(direction)?)?,
                m: int(m)?,
                lhs: *lhs,
                rhs: *rhs,
            },
            WitnessDto::Dimension { subgroup, dim_v, dim_w } => {
                Witness::DimensionViolation { subgroup: subgroup.to_core()?, dim_v: *dim_v, dim_w: *dim_w }
            }
            WitnessDto::Euler { subgroup, euler_v, euler_w } => Witness::EulerViolation {
                subgroup: subgroup.to_core()?,
                euler_v: euler_v.to_core()?,
                euler_w: euler_w.to_core()?,
            },
            WitnessDto::Subspace { .. } => return Err(ReportError::WitnessKind(self.kind())),
        })
    }

    pub fn to_p(&self) -> Result<PWitness, ReportError> {
        let WitnessDto::Subspace { p, ambient, basis, dim_v, dim_w, .. } = self else {
            return Err(ReportError::WitnessKind(self.kind()));
        };
        let rows: Vec<Vec<i64>> = basis.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
        Ok(PWitness { subspace: FpSubspace::span(*p, *ambient, &rows)?, dim_v: *dim_v, dim_w: *dim_w })
    }
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct VerdictDto {
    /// `C2`..`C5` for torus criteria, absent for the p-torus decision.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub condition: Option<String>,
    pub exists: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub explanation: Option<String>,
}

fn condition_from(s: &str) -> Result<Condition, ReportError> {
    Condition::ALL.into_iter().find(|c| c.to_string() == s).ok_or_else(|| ReportError::Condition(s.to_string()))
}

impl VerdictDto {
    pub fn from_core(v: &Verdict) -> Self {
        VerdictDto {
            condition: Some(v.condition.to_string()),
            exists: v.exists,
            witness: v.witness.as_ref().map(WitnessDto::from_core),
            explanation: v.witness.as_ref().map(ToString::to_string),
        }
    }

    pub fn from_p(v: &PVerdict) -> Self {
        VerdictDto {
            condition: None,
            exists: v.exists,
            witness: v.witness.as_ref().map(WitnessDto::from_p),
            explanation: v
                .witness
                .as_ref()
                .map(|w| format!("dim V^H = {} > {} = dim W^H at H = {}", w.dim_v, w.dim_w, w.subspace)),
        }
    }

    pub fn to_core(&self) -> Result<Verdict, ReportError> {
        let condition = condition_from(self.condition.as_deref().unwrap_or(""))?;
        let witness = self.witness.as_ref().map(WitnessDto::to_core).transpose()?;
        Ok(Verdict { exists: self.exists, witness, condition })
    }

    pub fn to_p(&self) -> Result<PVerdict, ReportError> {
        Ok(PVerdict { exists: self.exists, witness: self.witness.as_ref().map(WitnessDto::to_p).transpose()? })
    }
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct ConditionsDto {
    pub verdicts: Vec<VerdictDto>,
    pub agree: bool,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct EulerDto {
    pub euler_v: EulerClassDto,
    pub euler_w: EulerClassDto,
    pub divides: bool,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct FixedDimRow {
    pub subgroup: String,
    pub dim_v: u64,
    pub dim_w: u64,
    pub holds: bool,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct FixedDimTable {
    /// `complex` (irreducible units) or `real`.
    pub unit: String,
    pub rows: Vec<FixedDimRow>,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct DirectionDims {
    pub direction: String,
    pub dim_v_prime: u64,
    pub dim_w: u64,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct ExtensionDto {
    pub v_prime: String,
    pub dim_v_prime: u64,
    pub dim_w: u64,
    pub directions: Vec<DirectionDims>,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct DisagreementDto {
    pub index: u64,
    pub v: String,
    pub w: String,
    /// C2, C3, C4, C5.
    pub verdicts: [bool; 4],
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct CrossVerifyDto {
    pub seed: u64,
    pub total: usize,
    pub agreed: usize,
    pub positive: usize,
    pub disagreements: Vec<DisagreementDto>,
    pub passed: bool,
}

impl CrossVerifyDto {
    pub fn from_core(r: &CrossVerifyReport) -> Self {
        CrossVerifyDto {
            seed: r.seed,
            total: r.total,
            agreed: r.agreed,
            positive: r.positive,
            disagreements: r
                .disagreements
                .iter()
                .map(|d| DisagreementDto { index: d.index, v: d.v.to_string(), w: d.w.to_string(), verdicts: d.verdicts })
                .collect(),
            passed: r.passed(),
        }
    }
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct ClosedSubgroupsDto {
    pub seed: u64,
    pub checked: usize,
    pub counterexamples: Vec<FixedDimRow>,
    pub passed: bool,
}

impl ClosedSubgroupsDto {
    pub fn from_core(r: &ClosedSubgroupReport) -> Self {
        ClosedSubgroupsDto {
            seed: r.seed,
            checked: r.checked,
            counterexamples: r
                .counterexamples
                .iter()
                .map(|c| FixedDimRow { subgroup: c.subgroup.to_string(), dim_v: c.dim_v, dim_w: c.dim_w, holds: false })
                .collect(),
            passed: r.passed(),
        }
    }
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct VerificationDto {
    pub seed: u64,
    pub cross_verify: CrossVerifyDto,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_subgroups: Option<ClosedSubgroupsDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_subgroups_skipped: Option<String>,
    pub passed: bool,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct Report {
    pub format: String,
    pub tool_version: String,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<InputEcho>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<VerdictDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conditions: Option<ConditionsDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub euler: Option<EulerDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixed_dims: Option<FixedDimTable>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub isotropy: Option<Vec<SubgroupDto>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extension: Option<ExtensionDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationDto>,
    pub exit_code: i32,
}

impl Report {
    pub fn new(command: &str, input: Option<InputEcho>) -> Self {
        Report {
            format: FORMAT.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            input,
            verdict: None,
            conditions: None,
            euler: None,
            fixed_dims: None,
            isotropy: None,
            extension: None,
            verification: None,
            exit_code: 0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Report, ReportError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let yes_no = |b: bool| if b { "yes" } else { "no" };
        if let Some(input) = &self.input {
            let _ = writeln!(out, "group: {}", input.group);
            let _ = writeln!(out, "V = {}", input.v);
            let _ = writeln!(out, "W = {}", input.w);
        }
        if let Some(v) = &self.verdict {
            let _ = writeln!(out, "map S(V) -> S(W) exists: {}", yes_no(v.exists));
            if let Some(e) = &v.explanation {
                let _ = writeln!(out, "  witness: {e}");
            }
        }
        if let Some(c) = &self.conditions {
            for v in &c.verdicts {
                let _ = write!(out, "{}: {}", v.condition.as_deref().unwrap_or("?"), if v.exists { "holds" } else { "fails" });
                match &v.explanation {
                    Some(e) => {
                        let _ = writeln!(out, " ({e})");
                    }
                    None => out.push('\n'),
                }
            }
            let _ = writeln!(out, "criteria agree: {}", yes_no(c.agree));
        }
        if let Some(e) = &self.euler {
            let _ = writeln!(out, "e(V) = {}", e.euler_v.rendered);
            let _ = writeln!(out, "e(W) = {}", e.euler_w.rendered);
            let _ = writeln!(out, "e(V) divides e(W): {}", yes_no(e.divides));
        }
        if let Some(t) = &self.fixed_dims {
            let _ = writeln!(out, "fixed dimensions ({}):", t.unit);
            for r in &t.rows {
                let mark = if r.holds { "" } else { "  <-- violation" };
                let _ = writeln!(out, "  {}: dim V^H = {}, dim W^H = {}{mark}", r.subgroup, r.dim_v, r.dim_w);
            }
        }
        if let Some(list) = &self.isotropy {
            let _ = writeln!(out, "isotropy subgroups ({}):", list.len());
            for h in list {
                let _ = writeln!(out, "  {} (dim {})", h.rendered, h.dimension);
            }
        }
        if let Some(x) = &self.extension {
            let _ = writeln!(out, "V' = {}", x.v_prime);
            let _ = writeln!(out, "dim V' = {}, dim W = {}", x.dim_v_prime, x.dim_w);
            for d in &x.directions {
                let _ = writeln!(out, "  direction {}: dim V'^T = {}, dim W^T = {}", d.direction, d.dim_v_prime, d.dim_w);
            }
        }
        if let Some(v) = &self.verification {
            let c = &v.cross_verify;
            let _ = writeln!(out, "seed: {}", v.seed);
            let _ = writeln!(
                out,
                "cross-verification: {}/{} instances agree ({} positive)",
                c.agreed, c.total, c.positive
            );
            for d in &c.disagreements {
                let _ = writeln!(out, "  instance {}: V = {}, W = {}, verdicts {:?}", d.index, d.v, d.w, d.verdicts);
            }
            if let Some(s) = &v.closed_subgroups {
                let _ = writeln!(out, "closed subgroups: {} checked, {} counterexamples", s.checked, s.counterexamples.len());
                for r in &s.counterexamples {
                    let _ = writeln!(out, "  {}: dim V^H = {} > {} = dim W^H", r.subgroup, r.dim_v, r.dim_w);
                }
            }
            if let Some(reason) = &v.closed_subgroups_skipped {
                let _ = writeln!(out, "closed subgroups: skipped ({reason})");
            }
            let _ = writeln!(out, "verification passed: {}", yes_no(v.passed));
        }
        out
    }
}
