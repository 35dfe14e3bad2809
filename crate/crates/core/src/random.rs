//! Seeded generators for representations, lattices and instance pairs.
//!
//! Every generator draws from a caller-supplied RNG; [`instance_rng`] derives an
//! independent stream per instance index so that parallel harnesses are
//! reproducible from a single seed.

use num_bigint::BigInt;
use rand::seq::IndexedRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::intlinalg::{hnf, IntVector, LatticeBasis};
use crate::torusrep::{direct_sum, TorusRep, Weight};

/// Size limits for generated torus instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeBounds {
    pub max_rank: usize,
    pub max_support: usize,
    /// Bound on `|entry|` of every weight.
    pub max_entry: i64,
    pub max_multiplicity: u64,
}

impl Default for SizeBounds {
    fn default() -> Self {
        SizeBounds { max_rank: 3, max_support: 5, max_entry: 6, max_multiplicity: 3 }
    }
}

pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn max_abs(v: &IntVector) -> i64 {
    v.entries()
        .iter()
        .map(|x| i64::try_from(x.magnitude().clone()).unwrap_or(i64::MAX))
        .max()
        .unwrap_or(0)
}

pub fn random_vector<R: Rng>(rng: &mut R, k: usize, max_entry: i64) -> IntVector {
    IntVector::from_i64s(&(0..k).map(|_| rng.random_range(-max_entry..=max_entry)).collect::<Vec<_>>())
}

pub fn random_weight<R: Rng>(rng: &mut R, k: usize, max_entry: i64) -> Weight {
    loop {
        if let Ok(w) = Weight::new(random_vector(rng, k, max_entry)) {
            return w;
        }
    }
}

fn random_primitive<R: Rng>(rng: &mut R, k: usize, max_entry: i64) -> Weight {
    random_weight(rng, k, max_entry).split().1
}

/// A random multiple `m * dir` with entries still bounded by `max_entry`.
fn random_multiple<R: Rng>(rng: &mut R, dir: &Weight, max_entry: i64) -> Weight {
    let top = (max_entry / max_abs(dir.vector())).max(1);
    dir.scaled(&BigInt::from(rng.random_range(1..=top))).expect("nonzero multiple")
}

/// Nonzero representation of `T^k` with independently drawn weights.
pub fn random_rep<R: Rng>(rng: &mut R, k: usize, bounds: &SizeBounds) -> TorusRep {
    let mut rep = TorusRep::zero(k).expect("k >= 1");
    let support = rng.random_range(1..=bounds.max_support);
    while rep.support().count() < support {
        let w = random_weight(rng, k, bounds.max_entry);
        if rep.multiplicity(&w) == 0 {
            rep.add(w, rng.random_range(1..=bounds.max_multiplicity)).expect("valid term");
        }
    }
    rep
}

/// Nonzero representation whose weights are multiples of directions in `pool`.
pub fn random_rep_from_pool<R: Rng>(rng: &mut R, pool: &[Weight], bounds: &SizeBounds) -> TorusRep {
    let k = pool[0].rank();
    let mut rep = TorusRep::zero(k).expect("k >= 1");
    let terms = rng.random_range(1..=bounds.max_support);
    for _ in 0..terms {
        let dir = pool.choose(rng).expect("nonempty pool");
        let w = random_multiple(rng, dir, bounds.max_entry);
        if rep.multiplicity(&w) == 0 && rep.support().count() >= bounds.max_support {
            continue;
        }
        rep.add(w, rng.random_range(1..=bounds.max_multiplicity)).expect("valid term");
    }
    rep
}

/// A representation `W` with an equivariant map `S(V) -> S(W)` by construction:
/// each weight `m * dir` is replaced by `(f * m) * dir` (entries permitting),
/// and extra summands may be added.
pub fn random_upgrade<R: Rng>(rng: &mut R, v: &TorusRep, bounds: &SizeBounds) -> TorusRep {
    let mut out = TorusRep::zero(v.rank()).expect("k >= 1");
    for (w, r) in v.iter() {
        let top = (bounds.max_entry / max_abs(w.vector())).max(1);
        let f = rng.random_range(1..=top);
        let scaled = w.scaled(&BigInt::from(f)).expect("nonzero multiple");
        out.add(scaled, r).expect("valid term");
    }
    if rng.random_bool(0.5) {
        let extra = random_rep(rng, v.rank(), &SizeBounds { max_support: 2, ..*bounds });
        out = direct_sum(&out, &extra).expect("same rank");
    }
    out
}

/// A random pair `(V, W)` for cross-verification. The mixture is tilted towards
/// borderline pairs sharing primitive directions, where the criteria are most
/// likely to diverge if something is wrong.
pub fn random_pair<R: Rng>(rng: &mut R, bounds: &SizeBounds) -> (TorusRep, TorusRep) {
    let (v, w) = unclamped_pair(rng, bounds);
    (clamp(&v, bounds), clamp(&w, bounds))
}

/// Keeps the first `max_support` weights and caps multiplicities.
pub fn clamp(v: &TorusRep, bounds: &SizeBounds) -> TorusRep {
    let mut out = TorusRep::zero(v.rank()).expect("k >= 1");
    for (w, r) in v.iter().take(bounds.max_support) {
        out.add(w.clone(), r.min(bounds.max_multiplicity)).expect("valid term");
    }
    out
}

fn unclamped_pair<R: Rng>(rng: &mut R, bounds: &SizeBounds) -> (TorusRep, TorusRep) {
    let k = rng.random_range(1..=bounds.max_rank);
    match rng.random_range(0..10) {
        0 => {
            let v = random_rep(rng, k, bounds);
            let extra = random_rep(rng, k, bounds);
            let w = direct_sum(&v, &extra).expect("same rank");
            (v, w)
        }
        1 => (random_rep(rng, k, bounds), random_rep(rng, k, bounds)),
        2 | 3 => {
            let v = random_rep(rng, k, bounds);
            let w = random_upgrade(rng, &v, bounds);
            (v, w)
        }
        _ => {
            let pool_size = rng.random_range(1..=3);
            let pool: Vec<Weight> = (0..pool_size).map(|_| random_primitive(rng, k, 3)).collect();
            let v = random_rep_from_pool(rng, &pool, bounds);
            let w = random_rep_from_pool(rng, &pool, bounds);
            (v, w)
        }
    }
}

/// A random subgroup lattice of `Z^k`: HNF of `0..=k+1` random rows.
pub fn random_lattice<R: Rng>(rng: &mut R, k: usize, max_entry: i64) -> LatticeBasis {
    let rows = rng.random_range(0..=k + 1);
    let gens: Vec<IntVector> = (0..rows).map(|_| random_vector(rng, k, max_entry)).collect();
    hnf(k, &gens).expect("consistent lengths")
}

/// A random full-rank lattice of `Z^k` with index at most `max_index`.
pub fn random_full_rank_lattice<R: Rng>(rng: &mut R, k: usize, max_entry: i64, max_index: u64) -> LatticeBasis {
    loop {
        let gens: Vec<IntVector> = (0..k + rng.random_range(0..=1)).map(|_| random_vector(rng, k, max_entry)).collect();
        let l = hnf(k, &gens).expect("consistent lengths");
        if let Some(idx) = l.index() {
            if idx <= BigInt::from(max_index) {
                return l;
            }
        }
    }
}
