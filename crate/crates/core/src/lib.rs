//! Exact decision procedures for the existence of equivariant maps between
//! representation spheres `S(V) -> S(W)`, for `G` a torus `T^k` or a p-torus
//! `(Z_p)^l`.
//!
//! * [`intlinalg`]: Hermite and Smith normal forms, lattice membership and
//!   finite annihilator enumeration over `Z^k`.
//! * [`torusrep`]: torus representations, primitive decompositions, fixed
//!   points and isotropy subgroups.
//! * [`euler`]: factored Euler classes in `Z[t_1, ..., t_k]` with a dense
//!   polynomial cross-check.
//! * [`decide`]: the four equivalent torus criteria, domain extension and
//!   randomized cross-verification.
//! * [`ptorus`]: the p-torus criterion over all subspaces of `F_p^l`.

pub mod decide;
pub mod error;
pub mod euler;
pub mod intlinalg;
pub mod numtheory;
pub mod ptorus;
pub mod random;
pub mod torusrep;

pub use decide::{decide_map_exists, extend_domain, Condition, Verdict, Witness};
pub use error::{Error, Result};
pub use euler::{euler_class, euler_divides, EulerClass};
pub use intlinalg::{IntVector, LatticeBasis};
pub use ptorus::{decide_p, PTorusRep, PVerdict};
pub use torusrep::{Subgroup, TorusRep, Weight};
