//! Finite topologies stored as explicit families of open sets.
//!
//! Every topology on a finite carrier is Alexandrov, so all of them arise as
//! the up-set topologies of preorders. The enumerator uses that
//! correspondence, but values keep the open family itself.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::birelation::BiRelation;
use crate::error::{Error, Result};
use crate::relation::{
    enumerate_relations_bounded, Carrier, FinRelation, DEFAULT_ENUMERATION_BOUND,
};
use crate::subset::Subset;

/// Carriers larger than this are refused by constructors that scan every
/// subset of the carrier.
const SUBSET_SCAN_LIMIT: usize = 20;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinTopology {
    n: usize,
    opens: Vec<Subset>,
}

impl FinTopology {
    /// Validates the axioms and reports the first violation found.
    pub fn from_opens<I: IntoIterator<Item = Subset>>(carrier: Carrier, opens: I) -> Result<Self> {
        let n = carrier.len();
        let mut family = BTreeSet::new();
        for set in opens {
            if set.carrier_len() != n {
                return Err(Error::TopologyAxiom(format!(
                    "open set {set} is over a carrier of {} elements, expected {n}",
                    set.carrier_len()
                )));
            }
            family.insert(set);
        }
        if !family.contains(&Subset::empty(n)) {
            return Err(Error::TopologyAxiom("the empty set is not open".into()));
        }
        if !family.contains(&Subset::full(n)) {
            return Err(Error::TopologyAxiom("the whole carrier is not open".into()));
        }
        let opens: Vec<Subset> = family.into_iter().collect();
        for (i, a) in opens.iter().enumerate() {
            for b in &opens[i + 1..] {
                if opens.binary_search(&a.union(b)).is_err() {
                    return Err(Error::TopologyAxiom(format!(
                        "union of {a} and {b} is not open"
                    )));
                }
                if opens.binary_search(&a.intersection(b)).is_err() {
                    return Err(Error::TopologyAxiom(format!(
                        "intersection of {a} and {b} is not open"
                    )));
                }
            }
        }
        Ok(FinTopology { n, opens })
    }

    pub fn indiscrete(carrier: Carrier) -> Self {
        let n = carrier.len();
        let mut opens = vec![Subset::empty(n), Subset::full(n)];
        opens.dedup();
        FinTopology { n, opens }
    }

    pub fn discrete(carrier: Carrier) -> Self {
        let n = carrier.len();
        assert!(
            n <= SUBSET_SCAN_LIMIT,
            "discrete topology on {n} points is too large to list"
        );
        let opens = (0..1u64 << n).map(|b| Subset::from_bits(n, b)).collect();
        FinTopology { n, opens }
    }

    /// The coarsest topology containing `sets`: close under pairwise
    /// intersections, then under pairwise unions, each to a fixed point.
    pub fn from_subbasis<I: IntoIterator<Item = Subset>>(
        carrier: Carrier,
        sets: I,
    ) -> Result<Self> {
        let n = carrier.len();
        let mut family: BTreeSet<Subset> = BTreeSet::new();
        family.insert(Subset::empty(n));
        family.insert(Subset::full(n));
        for s in sets {
            if s.carrier_len() != n {
                return Err(Error::CarrierMismatch {
                    left: n,
                    right: s.carrier_len(),
                });
            }
            family.insert(s);
        }
        close_under(&mut family, Subset::intersection);
        close_under(&mut family, Subset::union);
        Ok(FinTopology {
            n,
            opens: family.into_iter().collect(),
        })
    }

    /// Up-set topology of a preorder: `U` is open iff `x ∈ U` and
    /// `(x, y) ∈ Q` imply `y ∈ U`.
    pub fn from_preorder(preorder: &SpecializationPreorder) -> Self {
        let q = preorder.relation();
        let n = q.len();
        assert!(
            n <= SUBSET_SCAN_LIMIT,
            "up-set scan on {n} points is too large"
        );
        let ups: Vec<Subset> = (0..n).map(|x| q.upper(x)).collect();
        let opens = (0..1u64 << n)
            .map(|b| Subset::from_bits(n, b))
            .filter(|u| u.iter().all(|x| ups[x].is_subset(u)))
            .collect();
        FinTopology { n, opens }
    }

    pub fn carrier(&self) -> Carrier {
        Carrier::new(self.n).expect("topologies live on non-empty carriers")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    /// Open sets in canonical order.
    pub fn opens(&self) -> &[Subset] {
        &self.opens
    }

    pub fn is_open(&self, set: &Subset) -> bool {
        set.carrier_len() == self.n && self.opens.binary_search(set).is_ok()
    }

    pub fn is_closed(&self, set: &Subset) -> bool {
        set.carrier_len() == self.n && self.is_open(&set.complement())
    }

    /// Largest open subset.
    pub fn interior(&self, set: &Subset) -> Subset {
        self.opens
            .iter()
            .filter(|u| u.is_subset(set))
            .fold(Subset::empty(self.n), |acc, u| acc.union(u))
    }

    /// Smallest closed superset.
    pub fn closure(&self, set: &Subset) -> Subset {
        self.interior(&set.complement()).complement()
    }

    /// No clopen set besides `∅` and the carrier.
    pub fn is_connected(&self) -> bool {
        self.clopen_witness().is_none()
    }

    /// A non-trivial clopen set, if one exists.
    pub fn clopen_witness(&self) -> Option<&Subset> {
        self.opens
            .iter()
            .find(|u| !u.is_empty() && !u.is_full() && self.is_open(&u.complement()))
    }

    /// Every open set of `self` is open in `other`.
    pub fn is_coarser_than(&self, other: &FinTopology) -> bool {
        self.n == other.n && self.opens.iter().all(|u| other.is_open(u))
    }

    /// `(x, y)` in the preorder iff `x` lies in the closure of `{y}`.
    pub fn specialization_preorder(&self) -> SpecializationPreorder {
        let closures: Vec<Subset> = (0..self.n)
            .map(|y| self.closure(&Subset::singleton(self.n, y)))
            .collect();
        let carrier = self.carrier();
        let rel = FinRelation::from_fn(carrier, |x, y| closures[y].contains(x));
        SpecializationPreorder(rel)
    }

    /// Open sets rendered as `{-,0,01,...}`.
    pub fn to_compact_string(&self) -> String {
        let parts: Vec<String> = self
            .opens
            .iter()
            .map(|u| {
                if u.is_empty() {
                    "-".to_string()
                } else if self.n <= 10 {
                    u.iter().map(|x| x.to_string()).collect()
                } else {
                    u.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(".")
                }
            })
            .collect();
        format!("{{{}}}", parts.join(","))
    }
}

fn close_under(family: &mut BTreeSet<Subset>, op: fn(&Subset, &Subset) -> Subset) {
    loop {
        let items: Vec<Subset> = family.iter().cloned().collect();
        let mut fresh = Vec::new();
        for (i, a) in items.iter().enumerate() {
            for b in &items[i + 1..] {
                let c = op(a, b);
                if !family.contains(&c) {
                    fresh.push(c);
                }
            }
        }
        if fresh.is_empty() {
            return;
        }
        family.extend(fresh);
    }
}

impl fmt::Debug for FinTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinTopology({})", self.to_compact_string())
    }
}

impl fmt::Display for FinTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_compact_string())
    }
}

impl Serialize for FinTopology {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("FinTopology", 2)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("opens", &self.opens)?;
        s.end()
    }
}

/// A reflexive, transitive relation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpecializationPreorder(FinRelation);

impl SpecializationPreorder {
    pub fn new(relation: FinRelation) -> Result<Self> {
        if !relation.is_reflexive() {
            return Err(Error::Precondition("preorder must be reflexive".into()));
        }
        if !relation.is_transitive() {
            return Err(Error::Precondition("preorder must be transitive".into()));
        }
        Ok(SpecializationPreorder(relation))
    }

    pub fn relation(&self) -> &FinRelation {
        &self.0
    }

    pub fn into_relation(self) -> FinRelation {
        self.0
    }

    /// The undirected comparability graph is connected.
    pub fn comparability_connected(&self) -> bool {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for y in 0..n {
                if !seen[y] && (self.0.contains(x, y) || self.0.contains(y, x)) {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// `τ(R_H, R_S)`: the coarsest topology containing the upper and lower
/// sections of `P_S` and the complements of the upper and lower sections of
/// `R_H`.
pub fn tau_of(b: &BiRelation) -> FinTopology {
    FinTopology::from_subbasis(b.carrier(), b.generating_sets()).expect("same carrier")
}

/// `R_H` has closed upper and lower sections and `P_S` has open upper and
/// lower sections. For a single relation pass [`BiRelation::diagonal`].
pub fn is_continuous(b: &BiRelation, t: &FinTopology) -> Result<bool> {
    if b.len() != t.len() {
        return Err(Error::CarrierMismatch {
            left: b.len(),
            right: t.len(),
        });
    }
    Ok(continuity_violation(b, t).is_none())
}

/// The first section, in element order, that breaks continuity.
pub fn continuity_violation(b: &BiRelation, t: &FinTopology) -> Option<SectionFailure> {
    for x in b.carrier().elements() {
        let failures = [
            (SectionKind::HardUpper, b.hard().upper(x)),
            (SectionKind::HardLower, b.hard().lower(x)),
            (SectionKind::StrictSoftUpper, b.soft_strict().upper(x)),
            (SectionKind::StrictSoftLower, b.soft_strict().lower(x)),
        ];
        for (kind, set) in failures {
            let ok = if kind.must_be_closed() {
                t.is_closed(&set)
            } else {
                t.is_open(&set)
            };
            if !ok {
                return Some(SectionFailure { at: x, kind, set });
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SectionKind {
    /// `R_H(z)`, required closed
    HardUpper,
    /// `R_H^-1(z)`, required closed
    HardLower,
    /// `P_S(z)`, required open
    StrictSoftUpper,
    /// `P_S^-1(z)`, required open
    StrictSoftLower,
}

impl SectionKind {
    pub fn must_be_closed(self) -> bool {
        matches!(self, SectionKind::HardUpper | SectionKind::HardLower)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SectionFailure {
    pub at: usize,
    pub kind: SectionKind,
    pub set: Subset,
}

/// Every topology on the carrier exactly once, in the incidence-bit order of
/// the preorders they come from.
pub fn enumerate_topologies(carrier: Carrier) -> Result<Vec<FinTopology>> {
    enumerate_topologies_bounded(carrier, DEFAULT_ENUMERATION_BOUND)
}

pub fn enumerate_topologies_bounded(carrier: Carrier, bound: usize) -> Result<Vec<FinTopology>> {
    Ok(enumerate_preorders_bounded(carrier, bound)?
        .iter()
        .map(FinTopology::from_preorder)
        .collect())
}

pub fn enumerate_preorders_bounded(
    carrier: Carrier,
    bound: usize,
) -> Result<Vec<SpecializationPreorder>> {
    Ok(enumerate_relations_bounded(carrier, bound)?
        .filter(|r| r.is_reflexive() && r.is_transitive())
        .map(SpecializationPreorder)
        .collect())
}
