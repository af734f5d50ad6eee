use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{
    all_candidates, class_candidates, clopen_witness_relation, describe, maybe_shuffle,
    membership_R, open_mask, Candidate, CensusConfig, CensusReport, Mode, Sampling,
    TopologyVerdict, Violation, CENSUS_LIMIT, EXHAUSTIVE_LIMIT,
};
use crate::birelation::BiRelation;
use crate::error::{Error, Result};
use crate::pcontinuity::{canonical_witness, is_p_continuous};
use crate::relation::{enumerate_relations, Carrier, FinRelation};
use crate::topology::{enumerate_topologies, is_continuous, FinTopology};

fn check_bound(n: usize, bound: usize) -> Result<Carrier> {
    if n > bound {
        return Err(Error::BoundExceeded { n, bound });
    }
    Carrier::new(n)
}

fn violation(t: Option<&FinTopology>, subject: String, conclusion: impl Into<String>) -> Violation {
    Violation {
        topology: t.map(FinTopology::to_compact_string),
        subject,
        conclusion: conclusion.into(),
    }
}

/// Connectedness versus "every member of the class is complete and
/// transitive", both for diagonal and general bi-relations, per topology.
///
/// Exhaustive up to three points; four points are sampled unless
/// [`Sampling::Exhaustive`] is requested.
pub fn census_theorem2(n: usize, config: &CensusConfig) -> Result<CensusReport> {
    let started = Instant::now();
    let carrier = check_bound(n, CENSUS_LIMIT)?;
    let sampled = match config.sampling {
        Sampling::Exhaustive => None,
        Sampling::Sampled { draws } => Some(draws),
        Sampling::Auto if n <= EXHAUSTIVE_LIMIT => None,
        Sampling::Auto => {
            return Err(Error::BoundExceeded {
                n,
                bound: EXHAUSTIVE_LIMIT,
            })
        }
    };
    let topologies = enumerate_topologies(carrier)?;
    let mut order: Vec<usize> = (0..topologies.len()).collect();
    maybe_shuffle(&mut order, config.shuffle);

    let (mut candidates, valid) = match sampled {
        None => class_candidates(carrier)?,
        Some(_) => (Vec::new(), 0),
    };
    maybe_shuffle(&mut candidates, config.shuffle);

    let mode = match sampled {
        None => Mode::Exhaustive,
        Some(draws) => Mode::Sampled {
            seed: config.seed,
            draws,
        },
    };
    let mut report = CensusReport::new("theorem2", n, mode);
    report.add("topologies", topologies.len() as u64);
    if sampled.is_none() {
        report.add("birelations", valid);
        report.add("class_candidates", candidates.len() as u64);
    }

    // Draw index -> (topology index, candidate) for sampled mode.
    let draws: Vec<(usize, Option<Candidate>)> = match sampled {
        None => Vec::new(),
        Some(draws) => (0..draws)
            .into_par_iter()
            .map(|i| sample_draw(carrier, topologies.len(), config.seed, i))
            .collect(),
    };

    let per_topology: Vec<(TopologyVerdict, Vec<Violation>, u64)> = order
        .par_iter()
        .map(|&index| {
            let t = &topologies[index];
            let open = open_mask(t);
            let connected = t.is_connected();
            let mut violations = Vec::new();
            let mut members = 0u64;
            let mut diagonal_members = 0u64;
            let mut diagonal_ok = true;
            let mut general_ok = true;
            let mut examined = 0u64;
            let mut visit = |c: &Candidate| {
                examined += 1;
                if !c.continuous_in(open) {
                    return;
                }
                members += 1;
                general_ok &= c.soft_ok();
                if c.diagonal {
                    diagonal_members += 1;
                    diagonal_ok &= c.soft_ok();
                }
                if connected && !c.soft_ok() {
                    let b = c.rebuild(carrier);
                    violations.push(violation(Some(t), describe(&b), counterexample_clause(&b)));
                }
            };
            match sampled {
                None => candidates.iter().for_each(&mut visit),
                Some(_) => draws
                    .iter()
                    .filter(|(ti, _)| *ti == index)
                    .filter_map(|(_, c)| c.as_ref())
                    .filter(|c| c.in_class())
                    .for_each(&mut visit),
            }
            if n <= EXHAUSTIVE_LIMIT && sampled.is_none() {
                // Containment of τ(B) and section continuity, decided separately.
                for c in &candidates {
                    let b = c.rebuild(carrier);
                    match membership_R(&b, t) {
                        Ok(m) if m == c.continuous_in(open) => {}
                        _ => violations.push(violation(
                            Some(t),
                            describe(&b),
                            "membership cross-check",
                        )),
                    }
                }
            }
            if !connected {
                match clopen_witness_relation(t) {
                    Some(r) => {
                        let b = BiRelation::diagonal(r);
                        if membership_R(&b, t).unwrap_or(false) && !b.soft().is_complete() {
                            diagonal_ok = false;
                            general_ok = false;
                        } else {
                            violations.push(violation(
                                Some(t),
                                describe(&b),
                                "clopen witness rejected",
                            ));
                        }
                    }
                    None => {
                        violations.push(violation(Some(t), String::new(), "no clopen set found"))
                    }
                }
            }
            let holds = connected == diagonal_ok && connected == general_ok;
            if !holds {
                violations.push(violation(
                    Some(t),
                    String::new(),
                    format!(
                        "connected={connected} diagonal_ok={diagonal_ok} general_ok={general_ok}"
                    ),
                ));
            }
            let verdict = TopologyVerdict {
                index,
                topology: t.to_compact_string(),
                connected,
                members,
                diagonal_members,
                diagonal_ok,
                general_ok,
                holds,
            };
            (verdict, violations, examined)
        })
        .collect();

    let mut verdicts = Vec::with_capacity(per_topology.len());
    for (v, violations, examined) in per_topology {
        report.add("connected_topologies", v.connected as u64);
        report.add("members", v.members);
        report.add("diagonal_members", v.diagonal_members);
        report.add("pairs_examined", examined);
        report.violations.extend(violations);
        verdicts.push(v);
    }
    if sampled.is_some() {
        report.add(
            "draws_valid",
            draws.iter().filter(|(_, c)| c.is_some()).count() as u64,
        );
    }
    verdicts.sort_by_key(|v| v.index);
    report.topologies = verdicts;
    Ok(report.finish(started))
}

fn counterexample_clause(b: &BiRelation) -> String {
    if let Some((x, y)) = b.soft().completeness_witness() {
        format!("soft part incomplete at ({x}, {y})")
    } else if let Some((x, y, z)) = b.soft().transitivity_witness() {
        format!("soft part intransitive at ({x}, {y}, {z})")
    } else {
        "soft part complete and transitive".into()
    }
}

/// A uniformly chosen topology and a bi-relation drawn by rejection; `None`
/// when the rejection budget runs out.
fn sample_draw(
    carrier: Carrier,
    topologies: usize,
    seed: u64,
    i: u64,
) -> (usize, Option<Candidate>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i);
    let t = rng.random_range(0..topologies);
    let n = carrier.len();
    let full = if n * n == 64 {
        u64::MAX
    } else {
        (1u64 << (n * n)) - 1
    };
    for _ in 0..64 {
        let hard = rng.random::<u64>() & full;
        let soft = hard | (rng.random::<u64>() & full);
        let h = FinRelation::from_bits(carrier, hard);
        let s = FinRelation::from_bits(carrier, soft);
        if let Ok(b) = BiRelation::new(h, s) {
            return (t, Some(Candidate::of(&b)));
        }
    }
    (t, None)
}

/// On every connected topology, every member of the class gets the canonical
/// identity witness, which must be p-continuous and connected, and must have
/// a complete and transitive soft part.
pub fn census_theorem1_canonical(n: usize) -> Result<CensusReport> {
    let started = Instant::now();
    let carrier = check_bound(n, EXHAUSTIVE_LIMIT)?;
    let topologies = enumerate_topologies(carrier)?;
    let (candidates, _) = class_candidates(carrier)?;
    let mut report = CensusReport::new("theorem1_canonical", n, Mode::Exhaustive);
    report.add("topologies", topologies.len() as u64);
    report.add("class_candidates", candidates.len() as u64);
    let results: Vec<(u64, u64, Vec<Violation>)> = topologies
        .par_iter()
        .filter(|t| t.is_connected())
        .map(|t| {
            let open = open_mask(t);
            let mut members = 0;
            let mut witnessed = 0;
            let mut violations = Vec::new();
            for c in candidates.iter().filter(|c| c.continuous_in(open)) {
                members += 1;
                let b = c.rebuild(carrier);
                let cw = canonical_witness(&b, t).expect("same carrier");
                let pc = is_p_continuous(&b, &cw.family).expect("same carrier");
                if cw.continuous && pc.holds() && cw.family.is_connected() {
                    witnessed += 1;
                } else {
                    violations.push(violation(
                        Some(t),
                        describe(&b),
                        "canonical witness rejected",
                    ));
                }
                if !c.soft_ok() {
                    violations.push(violation(Some(t), describe(&b), counterexample_clause(&b)));
                }
            }
            (members, witnessed, violations)
        })
        .collect();
    report.add("connected_topologies", results.len() as u64);
    for (members, witnessed, violations) in results {
        report.add("members", members);
        report.add("canonical_witnesses", witnessed);
        report.violations.extend(violations);
    }
    Ok(report.finish(started))
}

/// Every valid bi-relation continuous for a topology gets a p-continuous
/// canonical witness, and the family is connected exactly when the
/// topology is.
pub fn census_proposition1(n: usize) -> Result<CensusReport> {
    let started = Instant::now();
    let carrier = check_bound(n, EXHAUSTIVE_LIMIT)?;
    let topologies = enumerate_topologies(carrier)?;
    let candidates = all_candidates(carrier)?;
    let mut report = CensusReport::new("proposition1", n, Mode::Exhaustive);
    report.add("topologies", topologies.len() as u64);
    report.add("birelations", candidates.len() as u64);
    let results: Vec<(u64, Vec<Violation>)> = topologies
        .par_iter()
        .map(|t| {
            let mut continuous = 0;
            let mut violations = Vec::new();
            for c in &candidates {
                let b = c.rebuild(carrier);
                if !is_continuous(&b, t).expect("same carrier") {
                    continue;
                }
                continuous += 1;
                let cw = canonical_witness(&b, t).expect("same carrier");
                if !is_p_continuous(&b, &cw.family)
                    .expect("same carrier")
                    .holds()
                {
                    violations.push(violation(
                        Some(t),
                        describe(&b),
                        "canonical witness not p-continuous",
                    ));
                }
                if cw.family.is_connected() != t.is_connected() {
                    violations.push(violation(
                        Some(t),
                        describe(&b),
                        "family connectedness differs",
                    ));
                }
            }
            (continuous, violations)
        })
        .collect();
    for (continuous, violations) in results {
        report.add("continuous_pairs", continuous);
        report.violations.extend(violations);
    }
    Ok(report.finish(started))
}

/// Anti-symmetric, complete relations continuous for a connected topology
/// are transitive.
pub fn census_eilenberg(n: usize) -> Result<CensusReport> {
    let started = Instant::now();
    let carrier = check_bound(n, CENSUS_LIMIT)?;
    let topologies = enumerate_topologies(carrier)?;
    let relations: Vec<FinRelation> = enumerate_relations(carrier)?
        .filter(|r| r.is_antisymmetric() && r.is_complete())
        .collect();
    let mut report = CensusReport::new("eilenberg", n, Mode::Exhaustive);
    report.add("topologies", topologies.len() as u64);
    report.add("antisymmetric_complete", relations.len() as u64);
    let results: Vec<(u64, Vec<Violation>)> = topologies
        .par_iter()
        .filter(|t| t.is_connected())
        .map(|t| {
            let mut continuous = 0;
            let mut violations = Vec::new();
            for r in &relations {
                let b = BiRelation::diagonal(r.clone());
                if is_continuous(&b, t).expect("same carrier") {
                    continuous += 1;
                    if let Some((x, y, z)) = r.transitivity_witness() {
                        violations.push(violation(
                            Some(t),
                            r.to_row_string(),
                            format!("intransitive at ({x}, {y}, {z})"),
                        ));
                    }
                }
            }
            (continuous, violations)
        })
        .collect();
    report.add("connected_topologies", results.len() as u64);
    for (continuous, violations) in results {
        report.add("continuous_relations", continuous);
        report.violations.extend(violations);
    }
    Ok(report.finish(started))
}

/// The section-union identity at every strict soft pair of every class
/// member (no topology involved), then the covering and completeness claims
/// for members on connected topologies.
pub fn census_claims(n: usize) -> Result<CensusReport> {
    let started = Instant::now();
    let carrier = check_bound(n, EXHAUSTIVE_LIMIT)?;
    let (candidates, _) = class_candidates(carrier)?;
    let mut report = CensusReport::new("claims", n, Mode::Exhaustive);
    report.add("class_candidates", candidates.len() as u64);

    let identity: Vec<(u64, Vec<Violation>)> = candidates
        .par_iter()
        .map(|c| {
            let b = c.rebuild(carrier);
            let mut checked = 0;
            let mut violations = Vec::new();
            for (y, x) in b.soft_strict().pairs() {
                checked += 1;
                if !b.section_union_identity(y, x).expect("strict pair") {
                    violations.push(violation(
                        None,
                        describe(&b),
                        format!("section identity fails at ({y}, {x})"),
                    ));
                }
            }
            (checked, violations)
        })
        .collect();
    for (checked, violations) in identity {
        report.add("identity_pairs", checked);
        report.violations.extend(violations);
    }

    let topologies = enumerate_topologies(carrier)?;
    let full = crate::subset::Subset::full(n);
    let claims: Vec<(u64, u64, Vec<Violation>)> = topologies
        .par_iter()
        .filter(|t| t.is_connected())
        .map(|t| {
            let open = open_mask(t);
            let mut members = 0;
            let mut cover_pairs = 0;
            let mut violations = Vec::new();
            for c in candidates.iter().filter(|c| c.continuous_in(open)) {
                members += 1;
                let b = c.rebuild(carrier);
                let sp = b.soft_strict();
                for (y, x) in sp.pairs() {
                    cover_pairs += 1;
                    if sp.upper(y).union(&sp.lower(x)) != full {
                        violations.push(violation(
                            Some(t),
                            describe(&b),
                            format!("strict sections at ({y}, {x}) do not cover"),
                        ));
                    }
                }
                // Completeness two ways: relation algebra and a pair loop.
                let algebraic = b.soft().is_complete();
                let looped = (0..n)
                    .all(|x| (0..n).all(|y| b.soft().contains(x, y) || b.soft().contains(y, x)));
                if algebraic != looped {
                    violations.push(violation(Some(t), describe(&b), "completeness cross-check"));
                }
                if !algebraic {
                    violations.push(violation(Some(t), describe(&b), "soft part incomplete"));
                }
            }
            (members, cover_pairs, violations)
        })
        .collect();
    report.add("connected_topologies", claims.len() as u64);
    for (members, cover_pairs, violations) in claims {
        report.add("members", members);
        report.add("cover_pairs", cover_pairs);
        report.violations.extend(violations);
    }
    Ok(report.finish(started))
}

/// The three implications of Sen's lemma over every relation on `n` points.
pub fn census_sen(n: usize) -> Result<CensusReport> {
    let started = Instant::now();
    let carrier = check_bound(n, CENSUS_LIMIT)?;
    let mut report = CensusReport::new("sen", n, Mode::Exhaustive);
    let total = 1u64 << (n * n);
    let violations: Vec<Violation> = (0..total)
        .into_par_iter()
        .filter_map(|bits| {
            let r = FinRelation::from_bits(carrier, bits);
            let s = r.sen_check();
            if s.satisfied() {
                return None;
            }
            let which = [
                (
                    !s.complete_semi_transitive_gives_transitive_indifference
                        .satisfied(),
                    "a",
                ),
                (!s.negatively_transitive_strict_part.satisfied(), "b"),
                (!s.transitivity_decomposition.satisfied(), "c"),
            ]
            .iter()
            .filter(|(f, _)| *f)
            .map(|(_, l)| *l)
            .collect::<Vec<_>>()
            .join(",");
            Some(violation(
                None,
                r.to_row_string(),
                format!("clauses {which} fail"),
            ))
        })
        .collect();
    report.add("relations", total);
    report.violations = violations;
    Ok(report.finish(started))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem2_small() {
        let r = census_theorem2(2, &CensusConfig::default()).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        assert_eq!(r.count("topologies"), 4);
        assert_eq!(r.count("connected_topologies"), 3);
        let discrete = r.topologies.iter().find(|v| !v.connected).unwrap();
        assert!(!discrete.general_ok && !discrete.diagonal_ok);
    }

    #[test]
    fn theorem2_refuses_large_exhaustive_by_default() {
        assert!(census_theorem2(4, &CensusConfig::default()).is_err());
        assert!(census_theorem2(5, &CensusConfig::default()).is_err());
    }

    #[test]
    fn sen_on_three_points() {
        let r = census_sen(3).unwrap();
        assert!(r.passed());
        assert_eq!(r.count("relations"), 512);
    }
}
