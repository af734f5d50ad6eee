//! Exhaustive and sampled censuses over small carriers, the randomized
//! p-continuity run, the hypothesis-necessity search and the worked-example
//! fixtures.
//!
//! Workers are pure and every reducer sorts its output, so reports do not
//! depend on the thread count.

mod census;
mod fixtures;
mod necessity;
mod randomized;

use std::collections::BTreeMap;
use std::time::Duration;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::birelation::{soft_extensions, BiRelation};
use crate::error::{Error, Result};
use crate::relation::{Carrier, FinRelation, DEFAULT_ENUMERATION_BOUND};
use crate::subset::Subset;
use crate::topology::{is_continuous, tau_of, FinTopology};

pub use census::{
    census_claims, census_eilenberg, census_proposition1, census_sen, census_theorem1_canonical,
    census_theorem2,
};
pub use fixtures::{example_fixture, FixtureCheck, FixtureOutcome};
pub use necessity::{
    necessity_search, validate_witness, Conclusion, Hypothesis, NecessityOutcome, NecessityWitness,
};
pub use randomized::{theorem1_randomized, RandomizedBounds};

/// Largest carrier accepted by the exhaustive censuses.
pub const EXHAUSTIVE_LIMIT: usize = 3;
/// Largest carrier accepted at all (sampled, or exhaustive on request).
pub const CENSUS_LIMIT: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Mode {
    Exhaustive,
    Sampled { seed: u64, draws: u64 },
    Randomized { seed: u64, trials: u64 },
}

/// One failed conclusion. Ordered so reducers can sort.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub topology: Option<String>,
    pub subject: String,
    pub conclusion: String,
}

/// Per-topology equivalence record for the connectedness census.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TopologyVerdict {
    pub index: usize,
    pub topology: String,
    pub connected: bool,
    /// Members of the class examined (observed members in sampled mode).
    pub members: u64,
    pub diagonal_members: u64,
    /// Every diagonal member has a complete and transitive relation.
    pub diagonal_ok: bool,
    /// Every member has a complete and transitive soft part.
    pub general_ok: bool,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub census: &'static str,
    pub n: usize,
    pub mode: Mode,
    pub counts: BTreeMap<&'static str, u64>,
    pub violations: Vec<Violation>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub topologies: Vec<TopologyVerdict>,
    #[serde(skip)]
    pub duration: Duration,
}

impl CensusReport {
    fn new(census: &'static str, n: usize, mode: Mode) -> Self {
        CensusReport {
            census,
            n,
            mode,
            counts: BTreeMap::new(),
            violations: Vec::new(),
            topologies: Vec::new(),
            duration: Duration::ZERO,
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn count(&self, key: &str) -> u64 {
        self.counts.get(key).copied().unwrap_or(0)
    }

    fn add(&mut self, key: &'static str, v: u64) {
        *self.counts.entry(key).or_insert(0) += v;
    }

    fn finish(mut self, started: std::time::Instant) -> Self {
        self.violations.sort();
        self.duration = started.elapsed();
        self
    }
}

/// How the connectedness census treats carriers above the exhaustive limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sampling {
    /// Exhaustive up to the limit, refused above it.
    Auto,
    Exhaustive,
    Sampled {
        draws: u64,
    },
}

#[derive(Debug, Clone, Copy)]
pub struct CensusConfig {
    pub sampling: Sampling,
    pub seed: u64,
    /// Shuffle enumerations with this seed before processing.
    pub shuffle: Option<u64>,
}

impl Default for CensusConfig {
    fn default() -> Self {
        CensusConfig {
            sampling: Sampling::Auto,
            seed: 0,
            shuffle: None,
        }
    }
}

/// Runs `f` on a pool of `threads` workers (`None` for every available core).
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| Error::Precondition(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(f))
}

/// Non-trivial, semi-transitive, and `τ(B) ⊆ t`.
///
/// The containment is decided from the generating sets and cross-checked
/// against section continuity; a disagreement is an internal error.
#[allow(non_snake_case)]
pub fn membership_R(b: &BiRelation, t: &FinTopology) -> Result<bool> {
    if b.len() != t.len() {
        return Err(Error::CarrierMismatch {
            left: b.len(),
            right: t.len(),
        });
    }
    if !b.is_nontrivial() || !b.is_semi_transitive() {
        return Ok(false);
    }
    let contained = tau_of(b).is_coarser_than(t);
    let continuous = is_continuous(b, t)?;
    if contained != continuous {
        return Err(Error::Precondition(format!(
            "containment ({contained}) and continuity ({continuous}) disagree"
        )));
    }
    Ok(contained)
}

/// Subsets of a carrier of at most six points as bit positions of a `u64`.
pub(crate) fn set_bit(s: &Subset) -> u64 {
    1u64 << s.bits().expect("small carrier")
}

/// Bit `s` is set iff the subset with bit pattern `s` is open.
pub(crate) fn open_mask(t: &FinTopology) -> u64 {
    t.opens().iter().fold(0, |m, s| m | set_bit(s))
}

/// A bi-relation stored compactly with the data the censuses consult.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct Candidate {
    pub hard: u64,
    pub soft: u64,
    /// Generating sets of `τ(B)`; `B` is continuous for `t` iff all are open.
    pub required: u64,
    pub nontrivial: bool,
    pub semi_transitive: bool,
    pub diagonal: bool,
    pub soft_complete: bool,
    pub soft_transitive: bool,
}

impl Candidate {
    pub fn of(b: &BiRelation) -> Self {
        Candidate {
            hard: b.hard().to_bits().expect("small carrier"),
            soft: b.soft().to_bits().expect("small carrier"),
            required: b.generating_sets().iter().fold(0, |m, s| m | set_bit(s)),
            nontrivial: b.is_nontrivial(),
            semi_transitive: b.is_semi_transitive(),
            diagonal: b.is_diagonal(),
            soft_complete: b.soft().is_complete(),
            soft_transitive: b.soft().is_transitive(),
        }
    }

    pub fn in_class(&self) -> bool {
        self.nontrivial && self.semi_transitive
    }

    pub fn continuous_in(&self, open: u64) -> bool {
        self.required & !open == 0
    }

    pub fn soft_ok(&self) -> bool {
        self.soft_complete && self.soft_transitive
    }

    pub fn rebuild(&self, carrier: Carrier) -> BiRelation {
        BiRelation::new(
            FinRelation::from_bits(carrier, self.hard),
            FinRelation::from_bits(carrier, self.soft),
        )
        .expect("stored bi-relations are valid")
    }
}

/// Every valid bi-relation on the carrier, in enumeration order.
pub(crate) fn all_candidates(carrier: Carrier) -> Result<Vec<Candidate>> {
    collect_candidates(carrier, false).map(|(v, _)| v)
}

/// Non-trivial, semi-transitive bi-relations, with the number of valid
/// bi-relations scanned.
pub(crate) fn class_candidates(carrier: Carrier) -> Result<(Vec<Candidate>, u64)> {
    collect_candidates(carrier, true)
}

fn collect_candidates(carrier: Carrier, class_only: bool) -> Result<(Vec<Candidate>, u64)> {
    let n = carrier.len();
    if n > DEFAULT_ENUMERATION_BOUND {
        return Err(Error::BoundExceeded {
            n,
            bound: DEFAULT_ENUMERATION_BOUND,
        });
    }
    let (mut v, total) = (0..1u64 << (n * n))
        .into_par_iter()
        .map(|hard| {
            let mut found = Vec::new();
            let mut total = 0u64;
            for soft in soft_extensions(carrier, hard) {
                total += 1;
                // P_S empty: trivial, so outside the class.
                if class_only && soft & !transpose_bits(n, soft) == 0 {
                    continue;
                }
                let b = BiRelation::new(
                    FinRelation::from_bits(carrier, hard),
                    FinRelation::from_bits(carrier, soft),
                )
                .expect("enumerated bi-relations are valid");
                if !class_only || b.is_semi_transitive() {
                    found.push(Candidate::of(&b));
                }
            }
            (found, total)
        })
        .reduce(
            || (Vec::new(), 0),
            |(mut a, x), (b, y)| {
                a.extend(b);
                (a, x + y)
            },
        );
    v.par_sort_unstable();
    Ok((v, total))
}

pub(crate) fn transpose_bits(n: usize, bits: u64) -> u64 {
    let mut out = 0;
    for x in 0..n {
        for y in 0..n {
            if bits >> (x * n + y) & 1 == 1 {
                out |= 1 << (y * n + x);
            }
        }
    }
    out
}

pub(crate) fn describe(b: &BiRelation) -> String {
    format!(
        "hard={} soft={}",
        b.hard().to_row_string(),
        b.soft().to_row_string()
    )
}

pub(crate) fn maybe_shuffle<T>(items: &mut [T], shuffle: Option<u64>) {
    if let Some(seed) = shuffle {
        items.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
}

/// `U × U^c` for a clopen `U`: a non-trivial, semi-transitive, continuous,
/// incomplete relation on any disconnected finite space.
pub fn clopen_witness_relation(t: &FinTopology) -> Option<FinRelation> {
    let u = t.clopen_witness()?;
    Some(FinRelation::from_fn(t.carrier(), |x, y| {
        u.contains(x) && !u.contains(y)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_examples() {
        let c = Carrier::new(2).unwrap();
        let full = BiRelation::diagonal(FinRelation::full(c));
        assert!(!membership_R(&full, &FinTopology::discrete(c)).unwrap());
        let r = FinRelation::from_pairs(c, [(0, 1)]).unwrap();
        assert!(membership_R(&BiRelation::diagonal(r), &FinTopology::discrete(c)).unwrap());
        let c3 = Carrier::new(3).unwrap();
        assert!(membership_R(&full, &FinTopology::discrete(c3)).is_err());
    }

    #[test]
    fn clopen_witness_is_a_member() {
        let c = Carrier::new(3).unwrap();
        let t = FinTopology::from_opens(
            c,
            [
                Subset::empty(3),
                Subset::singleton(3, 0),
                Subset::from_indices(3, [1, 2]),
                Subset::full(3),
            ],
        )
        .unwrap();
        let r = clopen_witness_relation(&t).unwrap();
        assert!(!r.is_complete());
        assert!(membership_R(&BiRelation::diagonal(r), &t).unwrap());
        assert!(clopen_witness_relation(&FinTopology::indiscrete(c)).is_none());
    }

    #[test]
    fn candidate_mask_matches_continuity() {
        let c = Carrier::new(2).unwrap();
        let tops = crate::topology::enumerate_topologies(c).unwrap();
        for cand in all_candidates(c).unwrap() {
            let b = cand.rebuild(c);
            for t in &tops {
                assert_eq!(
                    cand.continuous_in(open_mask(t)),
                    is_continuous(&b, t).unwrap()
                );
            }
        }
    }
}
