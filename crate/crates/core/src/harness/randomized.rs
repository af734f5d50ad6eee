use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{describe, CensusReport, Mode, Violation, CENSUS_LIMIT};
use crate::birelation::BiRelation;
use crate::error::{Error, Result};
use crate::pcontinuity::{is_p_continuous, random_witness_family_with};
use crate::relation::{Carrier, FinRelation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomizedBounds {
    /// Carriers are drawn uniformly from `1..=max_n`.
    pub max_n: usize,
    /// Parameter spaces have at most this many points.
    pub max_witness_size: usize,
}

impl Default for RandomizedBounds {
    fn default() -> Self {
        RandomizedBounds {
            max_n: 4,
            max_witness_size: 3,
        }
    }
}

#[derive(Default)]
struct Tally {
    valid: u64,
    nontrivial: u64,
    semi_transitive: u64,
    p_continuous: u64,
    connected_family: u64,
    qualifying: u64,
    violation: Option<Violation>,
}

/// Random bi-relations paired with random witness families. Draws that are
/// non-trivial, semi-transitive, p-continuous and whose family is connected
/// qualify, and each qualifying draw must have a complete and transitive
/// soft part. Trial `i` uses stream `i` of the seeded generator.
pub fn theorem1_randomized(
    trials: u64,
    bounds: RandomizedBounds,
    seed: u64,
) -> Result<CensusReport> {
    let started = Instant::now();
    if bounds.max_n == 0 || bounds.max_n > CENSUS_LIMIT {
        return Err(Error::BoundExceeded {
            n: bounds.max_n,
            bound: CENSUS_LIMIT,
        });
    }
    if bounds.max_witness_size < 2 {
        return Err(Error::Precondition(
            "witness spaces need room for two points".into(),
        ));
    }
    let tallies: Vec<Tally> = (0..trials)
        .into_par_iter()
        .map(|i| trial(i, bounds, seed))
        .collect();
    let mut report = CensusReport::new(
        "theorem1_randomized",
        bounds.max_n,
        Mode::Randomized { seed, trials },
    );
    report.add("trials", trials);
    for t in tallies {
        report.add("valid_birelations", t.valid);
        report.add("nontrivial", t.nontrivial);
        report.add("semi_transitive", t.semi_transitive);
        report.add("p_continuous", t.p_continuous);
        report.add("connected_family", t.connected_family);
        report.add("qualifying", t.qualifying);
        report.violations.extend(t.violation);
    }
    Ok(report.finish(started))
}

fn trial(i: u64, bounds: RandomizedBounds, seed: u64) -> Tally {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i);
    let mut tally = Tally::default();
    let n = rng.random_range(1..=bounds.max_n);
    let carrier = Carrier::new(n).expect("positive");
    let Some(b) = random_birelation(carrier, &mut rng) else {
        return tally;
    };
    tally.valid = 1;
    let family = random_witness_family_with(carrier, bounds.max_witness_size, &mut rng);
    let nontrivial = b.is_nontrivial();
    let semi = b.is_semi_transitive();
    let pc = is_p_continuous(&b, &family).expect("same carrier").holds();
    let connected = family.is_connected();
    tally.nontrivial = nontrivial as u64;
    tally.semi_transitive = semi as u64;
    tally.p_continuous = pc as u64;
    tally.connected_family = connected as u64;
    if nontrivial && semi && pc && connected {
        tally.qualifying = 1;
        let soft = b.soft();
        if !soft.is_complete() || !soft.is_transitive() {
            tally.violation = Some(Violation {
                topology: None,
                subject: format!("trial {i}: {}", describe(&b)),
                conclusion: "soft part not complete and transitive".into(),
            });
        }
    }
    tally
}

/// Hard part uniform, soft part a uniform superset, rejected until the strict
/// soft part sits inside the strict hard part.
fn random_birelation<R: Rng>(carrier: Carrier, rng: &mut R) -> Option<BiRelation> {
    let n = carrier.len();
    let full = (1u64 << (n * n)) - 1;
    for _ in 0..256 {
        let hard = rng.random::<u64>() & full;
        let soft = hard | (rng.random::<u64>() & full);
        if let Ok(b) = BiRelation::new(
            FinRelation::from_bits(carrier, hard),
            FinRelation::from_bits(carrier, soft),
        ) {
            return Some(b);
        }
    }
    None
}
