use clap::ValueEnum;
use equimap_core::decide::{
    all_conditions, check_all_closed_subgroups, cross_verify, decide_map_exists, extend_domain, subtorus_dims,
};
use equimap_core::euler::{euler_class, euler_divides};
use equimap_core::intlinalg::IntVector;
use equimap_core::ptorus::{decide_p, enumerate_subspaces, fixed_dim_p, FpSubspace, PTorusRep};
use equimap_core::random::SizeBounds;
use equimap_core::torusrep::{fixed_dim, isotropy_subgroups, primitive_decomposition, Subgroup, TorusRep};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::parse::{parse_generators, ParseError, ProblemInstance};
use crate::report::{
    ClosedSubgroupsDto, ConditionsDto, CrossVerifyDto, DirectionDims, EulerClassDto, EulerDto, ExtensionDto,
    FixedDimRow, FixedDimTable, InputEcho, Report, SubgroupDto, VerdictDto, VerificationDto,
};

pub const EXIT_EXISTS: i32 = 0;
pub const EXIT_NO_MAP: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Command {
    Decide,
    Conditions,
    Euler,
    Fixdim,
    Isotropy,
    Extend,
    Verify,
    Pdecide,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Decide => "decide",
            Command::Conditions => "conditions",
            Command::Euler => "euler",
            Command::Fixdim => "fixdim",
            Command::Isotropy => "isotropy",
            Command::Extend => "extend",
            Command::Verify => "verify",
            Command::Pdecide => "pdecide",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Flags {
    pub seed: u64,
    pub instances: usize,
    pub real_dims: bool,
    pub all_conditions: bool,
    /// Generator lists for `fixdim`, e.g. `(2,0),(0,2)`.
    pub subgroups: Vec<String>,
}

impl Default for Flags {
    fn default() -> Self {
        Flags { seed: 0, instances: 1000, real_dims: false, all_conditions: false, subgroups: Vec::new() }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Core(#[from] equimap_core::Error),
}

fn exit_for(ok: bool) -> i32 {
    if ok {
        EXIT_EXISTS
    } else {
        EXIT_NO_MAP
    }
}

fn echo(instance: &ProblemInstance) -> InputEcho {
    InputEcho { group: instance.group().to_string(), v: instance.v_text(), w: instance.w_text() }
}

/// Runs `command`; the exit code is stored in the report.
pub fn run(command: Command, instance: Option<&ProblemInstance>, flags: &Flags) -> Result<Report, CliError> {
    if command == Command::Verify {
        return verify(instance, flags);
    }
    let instance =
        instance.ok_or_else(|| CliError::Usage(format!("`{}` needs an instance (--file or --stdin)", command.name())))?;
    let mut report = Report::new(command.name(), Some(echo(instance)));
    if let ProblemInstance::PTorus { v, w } = instance {
        return match command {
            Command::Decide | Command::Pdecide => {
                p_decide(&mut report, v, w)?;
                Ok(report)
            }
            Command::Fixdim => {
                p_decide(&mut report, v, w)?;
                report.fixed_dims = Some(p_fixed_table(v, w, flags)?);
                Ok(report)
            }
            _ => Err(CliError::Usage(format!("`{}` needs a torus instance", command.name()))),
        };
    }
    let ProblemInstance::Torus { v, w } = instance else { unreachable!("p-torus handled above") };
    if command == Command::Pdecide {
        return Err(CliError::Usage("`pdecide` needs a p-torus instance (use `decide`)".into()));
    }
    let verdict = decide_map_exists(v, w)?;
    report.exit_code = exit_for(verdict.exists);
    report.verdict = Some(VerdictDto::from_core(&verdict));
    if command == Command::Conditions || flags.all_conditions {
        let all = all_conditions(v, w)?;
        let agree = all.iter().all(|x| x.exists == verdict.exists);
        report.conditions = Some(ConditionsDto { verdicts: all.iter().map(VerdictDto::from_core).collect(), agree });
        if !agree {
            report.exit_code = EXIT_NO_MAP;
        }
    }
    match command {
        Command::Euler => {
            let (ev, ew) = (euler_class(v), euler_class(w));
            report.euler = Some(EulerDto {
                euler_v: EulerClassDto::from_core(&ev),
                euler_w: EulerClassDto::from_core(&ew),
                divides: euler_divides(&ev, &ew)?,
            });
        }
        Command::Fixdim => report.fixed_dims = Some(fixed_table(v, w, flags)?),
        Command::Isotropy => {
            report.isotropy = Some(isotropy_subgroups(v)?.iter().map(SubgroupDto::from_core).collect());
        }
        Command::Extend if verdict.exists => {
            let ext = extend_domain(v, w)?;
            let dirs = primitive_decomposition(w).into_keys().collect::<Vec<_>>();
            let dims_ext = subtorus_dims(&ext, dirs.clone())?;
            let dims_w = subtorus_dims(w, dirs)?;
            report.extension = Some(ExtensionDto {
                v_prime: ext.to_string(),
                dim_v_prime: ext.dim(),
                dim_w: w.dim(),
                directions: dims_ext
                    .into_iter()
                    .zip(dims_w)
                    .map(|((d, a), (_, b))| DirectionDims { direction: d.to_string(), dim_v_prime: a, dim_w: b })
                    .collect(),
            });
        }
        _ => {}
    }
    Ok(report)
}

fn p_decide(report: &mut Report, v: &PTorusRep, w: &PTorusRep) -> Result<(), CliError> {
    let verdict = decide_p(v, w)?;
    report.exit_code = exit_for(verdict.exists);
    report.verdict = Some(VerdictDto::from_p(&verdict));
    Ok(())
}

fn fixed_table(v: &TorusRep, w: &TorusRep, flags: &Flags) -> Result<FixedDimTable, CliError> {
    let k = v.rank();
    let subgroups: Vec<Subgroup> = if flags.subgroups.is_empty() {
        isotropy_subgroups(v)?.into_iter().collect()
    } else {
        flags
            .subgroups
            .iter()
            .map(|text| {
                let gens: Vec<IntVector> =
                    parse_generators(text, '(', ')', k)?.into_iter().map(IntVector::new).collect();
                Ok(Subgroup::from_characters(k, &gens)?)
            })
            .collect::<Result<_, CliError>>()?
    };
    let unit = if flags.real_dims { 2 } else { 1 };
    let rows = subgroups
        .iter()
        .map(|h| {
            let (dv, dw) = (fixed_dim(v, h)?, fixed_dim(w, h)?);
            Ok(FixedDimRow { subgroup: h.to_string(), dim_v: unit * dv, dim_w: unit * dw, holds: dv <= dw })
        })
        .collect::<Result<_, CliError>>()?;
    Ok(FixedDimTable { unit: if flags.real_dims { "real" } else { "complex" }.into(), rows })
}

fn p_fixed_table(v: &PTorusRep, w: &PTorusRep, flags: &Flags) -> Result<FixedDimTable, CliError> {
    let (p, l) = (v.p(), v.rank());
    let subspaces: Vec<FpSubspace> = if flags.subgroups.is_empty() {
        enumerate_subspaces(p, l)?
    } else {
        flags
            .subgroups
            .iter()
            .map(|text| {
                let rows: Vec<Vec<i64>> = parse_generators(text, '[', ']', l)?
                    .into_iter()
                    .map(|r| r.iter().map(|x| x.mod_floor(&BigInt::from(p)).to_i64().expect("reduced below p")).collect())
                    .collect();
                Ok(FpSubspace::span(p, l, &rows)?)
            })
            .collect::<Result<_, CliError>>()?
    };
    let unit = if flags.real_dims { v.real_unit() } else { 1 };
    let rows = subspaces
        .iter()
        .map(|h| {
            let (dv, dw) = (fixed_dim_p(v, h)?, fixed_dim_p(w, h)?);
            Ok(FixedDimRow { subgroup: h.to_string(), dim_v: unit * dv, dim_w: unit * dw, holds: dv <= dw })
        })
        .collect::<Result<_, CliError>>()?;
    Ok(FixedDimTable { unit: if flags.real_dims { "real" } else { "complex" }.into(), rows })
}

fn verify(instance: Option<&ProblemInstance>, flags: &Flags) -> Result<Report, CliError> {
    let mut report = Report::new(Command::Verify.name(), instance.map(echo));
    let cross = cross_verify(flags.instances, &SizeBounds::default(), flags.seed)?;
    let mut verification = VerificationDto {
        seed: flags.seed,
        cross_verify: CrossVerifyDto::from_core(&cross),
        closed_subgroups: None,
        closed_subgroups_skipped: None,
        passed: cross.passed(),
    };
    match instance {
        Some(ProblemInstance::Torus { v, w }) => {
            let verdict = decide_map_exists(v, w)?;
            report.verdict = Some(VerdictDto::from_core(&verdict));
            if verdict.exists {
                let closed = check_all_closed_subgroups(v, w, flags.instances, flags.seed)?;
                verification.passed &= closed.passed();
                verification.closed_subgroups = Some(ClosedSubgroupsDto::from_core(&closed));
            } else {
                verification.closed_subgroups_skipped = Some("no equivariant map exists for this instance".into());
            }
        }
        Some(ProblemInstance::PTorus { v, w }) => {
            report.verdict = Some(VerdictDto::from_p(&decide_p(v, w)?));
            verification.closed_subgroups_skipped = Some("p-torus decisions already check every subgroup".into());
        }
        None => {}
    }
    report.exit_code = exit_for(verification.passed);
    report.verification = Some(verification);
    Ok(report)
}
