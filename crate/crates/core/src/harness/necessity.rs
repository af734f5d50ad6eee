use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::birelation::BiRelation;
use crate::error::{Error, Result};
use crate::relation::{enumerate_relations, Carrier, FinRelation};
use crate::topology::{enumerate_topologies, is_continuous, FinTopology};

use super::CENSUS_LIMIT;

/// Hypotheses of the connectedness results that the search may drop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Hypothesis {
    Connectedness,
    SemiTransitivity,
    SymmetricPartTransitivity,
    Continuity,
}

impl Hypothesis {
    pub const ALL: [Hypothesis; 4] = [
        Hypothesis::Connectedness,
        Hypothesis::SemiTransitivity,
        Hypothesis::SymmetricPartTransitivity,
        Hypothesis::Continuity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Hypothesis::Connectedness => "connectedness",
            Hypothesis::SemiTransitivity => "semi-transitivity",
            Hypothesis::SymmetricPartTransitivity => "symmetric-part-transitivity",
            Hypothesis::Continuity => "continuity",
        }
    }
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Hypothesis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace('_', "-");
        Hypothesis::ALL
            .into_iter()
            .find(|h| h.name() == key)
            .ok_or_else(|| Error::Malformed(format!("unknown hypothesis {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "fails", rename_all = "snake_case")]
pub enum Conclusion {
    Completeness { x: usize, y: usize },
    Transitivity { x: usize, y: usize, z: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NecessityWitness {
    pub dropped: Hypothesis,
    pub n: usize,
    pub topology: FinTopology,
    pub relation: FinRelation,
    pub conclusion: Conclusion,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum NecessityOutcome {
    Found {
        witness: NecessityWitness,
    },
    NoneFound {
        dropped: Hypothesis,
        max_n: usize,
        examined: u64,
    },
}

fn failing_conclusion(r: &FinRelation) -> Option<Conclusion> {
    if let Some((x, y)) = r.completeness_witness() {
        return Some(Conclusion::Completeness { x, y });
    }
    r.transitivity_witness()
        .map(|(x, y, z)| Conclusion::Transitivity { x, y, z })
}

/// The first `(topology, relation)` pair, by carrier size, then topology
/// enumeration order, then relation order, that satisfies every hypothesis
/// except `dropped` (non-triviality is always kept) and is not complete and
/// transitive. Witnesses are re-validated by [`validate_witness`].
pub fn necessity_search(dropped: Hypothesis, max_n: usize) -> Result<NecessityOutcome> {
    if max_n > CENSUS_LIMIT {
        return Err(Error::BoundExceeded {
            n: max_n,
            bound: CENSUS_LIMIT,
        });
    }
    let keep = |h: Hypothesis| h != dropped;
    let mut examined = 0u64;
    for n in 1..=max_n {
        let carrier = Carrier::new(n)?;
        let relations: Vec<(FinRelation, Conclusion)> = enumerate_relations(carrier)?
            .filter(|r| r.is_nontrivial())
            .filter(|r| !keep(Hypothesis::SemiTransitivity) || r.is_semi_transitive())
            .filter(|r| {
                !keep(Hypothesis::SymmetricPartTransitivity) || r.symmetric_part().is_transitive()
            })
            .filter_map(|r| failing_conclusion(&r).map(|c| (r, c)))
            .collect();
        for t in enumerate_topologies(carrier)? {
            if keep(Hypothesis::Connectedness) && !t.is_connected() {
                continue;
            }
            for (r, conclusion) in &relations {
                examined += 1;
                if keep(Hypothesis::Continuity)
                    && !is_continuous(&BiRelation::diagonal(r.clone()), &t)?
                {
                    continue;
                }
                let witness = NecessityWitness {
                    dropped,
                    n,
                    topology: t.clone(),
                    relation: r.clone(),
                    conclusion: *conclusion,
                };
                validate_witness(&witness).map_err(Error::Precondition)?;
                return Ok(NecessityOutcome::Found { witness });
            }
        }
    }
    Ok(NecessityOutcome::NoneFound {
        dropped,
        max_n,
        examined,
    })
}

/// Re-checks a witness with plain loops over incidence tables.
pub fn validate_witness(w: &NecessityWitness) -> std::result::Result<(), String> {
    let n = w.n;
    if w.relation.len() != n || w.topology.len() != n {
        return Err("carrier sizes disagree".into());
    }
    let r: Vec<Vec<bool>> = (0..n)
        .map(|x| (0..n).map(|y| w.relation.contains(x, y)).collect())
        .collect();
    let p = |x: usize, y: usize| r[x][y] && !r[y][x];
    let i = |x: usize, y: usize| r[x][y] && r[y][x];
    let opens: Vec<Vec<bool>> = w
        .topology
        .opens()
        .iter()
        .map(|u| (0..n).map(|x| u.contains(x)).collect())
        .collect();
    let is_open = |s: &[bool]| opens.iter().any(|u| u.as_slice() == s);
    let is_closed = |s: &[bool]| {
        let c: Vec<bool> = s.iter().map(|b| !b).collect();
        is_open(&c)
    };
    let triples =
        || (0..n).flat_map(move |x| (0..n).flat_map(move |y| (0..n).map(move |z| (x, y, z))));

    if !(0..n).any(|x| (0..n).any(|y| p(x, y))) {
        return Err("relation is trivial".into());
    }
    let keep = |h: Hypothesis| h != w.dropped;
    if keep(Hypothesis::SemiTransitivity) {
        let ok = triples().all(|(x, y, z)| {
            (!(i(x, y) && p(y, z)) || p(x, z)) && (!(p(x, y) && i(y, z)) || p(x, z))
        });
        if !ok {
            return Err("relation is not semi-transitive".into());
        }
    }
    if keep(Hypothesis::SymmetricPartTransitivity)
        && !triples().all(|(x, y, z)| !(i(x, y) && i(y, z)) || i(x, z))
    {
        return Err("symmetric part is not transitive".into());
    }
    if keep(Hypothesis::Continuity) {
        for z in 0..n {
            let upper: Vec<bool> = (0..n).map(|y| r[z][y]).collect();
            let lower: Vec<bool> = (0..n).map(|x| r[x][z]).collect();
            let p_upper: Vec<bool> = (0..n).map(|y| p(z, y)).collect();
            let p_lower: Vec<bool> = (0..n).map(|x| p(x, z)).collect();
            if !is_closed(&upper) || !is_closed(&lower) || !is_open(&p_upper) || !is_open(&p_lower)
            {
                return Err(format!("sections at {z} break continuity"));
            }
        }
    }
    if keep(Hypothesis::Connectedness) {
        let clopen = opens
            .iter()
            .any(|u| u.iter().any(|&b| b) && !u.iter().all(|&b| b) && is_closed(u));
        if clopen {
            return Err("topology is disconnected".into());
        }
    }
    match w.conclusion {
        Conclusion::Completeness { x, y } if x < n && y < n && !r[x][y] && !r[y][x] => Ok(()),
        Conclusion::Transitivity { x, y, z }
            if x < n && y < n && z < n && r[x][y] && r[y][z] && !r[x][z] =>
        {
            Ok(())
        }
        _ => Err("named conclusion does not fail".into()),
    }
}
