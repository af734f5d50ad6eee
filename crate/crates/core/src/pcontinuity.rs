//! Parametric continuity: per-pair parameter spaces `Λ_xy` with maps
//! `f_xy: Λ_xy -> X`, checked pair by pair with no sharing between pairs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::birelation::BiRelation;
use crate::error::{Error, Result};
use crate::relation::{Carrier, FinRelation};
use crate::subset::Subset;
use crate::topology::{is_continuous, FinTopology, SectionKind, SpecializationPreorder};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    space: FinTopology,
    map: Vec<usize>,
}

impl Witness {
    /// `map[a]` is `f(a)`; it must be total on the parameter carrier.
    pub fn new(space: FinTopology, map: Vec<usize>) -> Result<Self> {
        if map.len() != space.len() {
            return Err(Error::WitnessFamily(format!(
                "map has {} entries for a parameter space of {} points",
                map.len(),
                space.len()
            )));
        }
        Ok(Witness { space, map })
    }

    pub fn space(&self) -> &FinTopology {
        &self.space
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn hits(&self, x: usize) -> bool {
        self.map.contains(&x)
    }

    /// `f^-1(set)` as a subset of the parameter carrier.
    pub fn preimage(&self, set: &Subset) -> Subset {
        Subset::from_indices(
            self.map.len(),
            self.map
                .iter()
                .enumerate()
                .filter(|(_, &v)| set.contains(v))
                .map(|(a, _)| a),
        )
    }
}

/// A witness for every ordered pair, the diagonal included.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessFamily {
    target: Carrier,
    table: Vec<Witness>,
}

impl WitnessFamily {
    /// `table[x * n + y]` is the witness for the pair `(x, y)`; its image must
    /// lie in the target and contain both `x` and `y`.
    pub fn new(target: Carrier, table: Vec<Witness>) -> Result<Self> {
        let n = target.len();
        if table.len() != n * n {
            return Err(Error::WitnessFamily(format!(
                "expected {} witnesses, got {}",
                n * n,
                table.len()
            )));
        }
        for (i, w) in table.iter().enumerate() {
            let (x, y) = (i / n, i % n);
            if let Some(&v) = w.map.iter().find(|&&v| v >= n) {
                return Err(Error::WitnessFamily(format!(
                    "witness for ({x}, {y}) maps into {v}, outside the target"
                )));
            }
            if !w.hits(x) || !w.hits(y) {
                return Err(Error::WitnessFamily(format!(
                    "image of the witness for ({x}, {y}) misses {}",
                    if w.hits(x) { y } else { x }
                )));
            }
        }
        Ok(WitnessFamily { target, table })
    }

    pub fn target(&self) -> Carrier {
        self.target
    }

    pub fn witness(&self, x: usize, y: usize) -> &Witness {
        &self.table[x * self.target.len() + y]
    }

    pub fn witnesses(&self) -> impl Iterator<Item = ((usize, usize), &Witness)> {
        let n = self.target.len();
        self.table
            .iter()
            .enumerate()
            .map(move |(i, w)| ((i / n, i % n), w))
    }

    /// Every parameter space is connected.
    pub fn is_connected(&self) -> bool {
        self.table.iter().all(|w| w.space.is_connected())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PViolation {
    pub pair: (usize, usize),
    pub z: usize,
    pub kind: SectionKind,
    /// The preimage that fails to be closed (hard sections) or open (strict
    /// soft sections).
    pub preimage: Subset,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum PContinuity {
    Holds,
    Violated(PViolation),
}

impl PContinuity {
    pub fn holds(&self) -> bool {
        matches!(self, PContinuity::Holds)
    }
}

/// Checks that every `f_xy^-1(R_H(z))`, `f_xy^-1(R_H^-1(z))` is closed and
/// every `f_xy^-1(P_S(z))`, `f_xy^-1(P_S^-1(z))` is open in `Λ_xy`. The
/// first failure in `(x, y, z)` order is returned.
pub fn is_p_continuous(b: &BiRelation, family: &WitnessFamily) -> Result<PContinuity> {
    if family.target().len() != b.len() {
        return Err(Error::CarrierMismatch {
            left: b.len(),
            right: family.target().len(),
        });
    }
    let sections = section_table(b);
    for (pair, w) in family.witnesses() {
        if let Some(v) = pair_violation(w, &sections) {
            return Ok(PContinuity::Violated(PViolation { pair, ..v }));
        }
    }
    Ok(PContinuity::Holds)
}

type SectionTable = Vec<[(SectionKind, Subset); 4]>;

fn section_table(b: &BiRelation) -> SectionTable {
    b.carrier()
        .elements()
        .map(|z| {
            [
                (SectionKind::HardUpper, b.hard().upper(z)),
                (SectionKind::HardLower, b.hard().lower(z)),
                (SectionKind::StrictSoftUpper, b.soft_strict().upper(z)),
                (SectionKind::StrictSoftLower, b.soft_strict().lower(z)),
            ]
        })
        .collect()
}

fn pair_violation(w: &Witness, sections: &SectionTable) -> Option<PViolation> {
    for (z, row) in sections.iter().enumerate() {
        for (kind, set) in row {
            let pre = w.preimage(set);
            let ok = if kind.must_be_closed() {
                w.space.is_closed(&pre)
            } else {
                w.space.is_open(&pre)
            };
            if !ok {
                return Some(PViolation {
                    pair: (0, 0),
                    z,
                    kind: *kind,
                    preimage: pre,
                });
            }
        }
    }
    None
}

/// Whether a single witness satisfies the p-continuity conditions for `b`.
pub fn witness_is_p_continuous(b: &BiRelation, w: &Witness) -> bool {
    pair_violation(w, &section_table(b)).is_none()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CanonicalWitness {
    pub family: WitnessFamily,
    /// `b` is continuous for the topology used; only then is the family
    /// guaranteed to be p-continuous.
    pub continuous: bool,
}

/// Every `Λ_xy` is the space itself and every `f_xy` the identity.
pub fn canonical_witness(b: &BiRelation, t: &FinTopology) -> Result<CanonicalWitness> {
    let continuous = is_continuous(b, t)?;
    let identity: Vec<usize> = t.carrier().elements().collect();
    let n = b.len();
    let w = Witness::new(t.clone(), identity)?;
    let family = WitnessFamily::new(b.carrier(), vec![w; n * n])?;
    Ok(CanonicalWitness { family, continuous })
}

/// Draws a witness family: each pair gets a parameter carrier of at most
/// `max_size` points (at least two for distinct points), the up-set topology
/// of a random preorder, and a random map whose image contains the pair.
/// Deterministic in `seed`.
pub fn random_witness_family(b: &BiRelation, max_size: usize, seed: u64) -> WitnessFamily {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_witness_family_with(b.carrier(), max_size, &mut rng)
}

pub fn random_witness_family_with<R: Rng>(
    target: Carrier,
    max_size: usize,
    rng: &mut R,
) -> WitnessFamily {
    let n = target.len();
    let max_size = max_size.max(2);
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let min = if x == y { 1 } else { 2 };
            let m = rng.random_range(min..=max_size);
            let space = random_topology(m, rng);
            let mut map: Vec<usize> = (0..m).map(|_| rng.random_range(0..n)).collect();
            let ax = rng.random_range(0..m);
            map[ax] = x;
            if x != y {
                let mut ay = rng.random_range(0..m - 1);
                if ay >= ax {
                    ay += 1;
                }
                map[ay] = y;
            }
            table.push(Witness::new(space, map).expect("sized map"));
        }
    }
    WitnessFamily::new(target, table).expect("images contain the pair")
}

/// Up-set topology of the reflexive-transitive closure of a random relation.
pub fn random_topology<R: Rng>(m: usize, rng: &mut R) -> FinTopology {
    let carrier = Carrier::new(m).expect("non-empty");
    let density: f64 = rng.random();
    let raw = FinRelation::from_fn(carrier, |x, y| x == y || rng.random_bool(density * 0.5));
    FinTopology::from_preorder(
        &SpecializationPreorder::new(transitive_closure(&raw)).expect("closed"),
    )
}

fn transitive_closure(r: &FinRelation) -> FinRelation {
    let n = r.len();
    let mut reach: Vec<Vec<bool>> = (0..n)
        .map(|x| (0..n).map(|y| r.contains(x, y)).collect())
        .collect();
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    FinRelation::from_fn(r.carrier(), |x, y| reach[x][y])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: usize) -> Carrier {
        Carrier::new(n).unwrap()
    }

    fn strict_pair() -> BiRelation {
        BiRelation::diagonal(FinRelation::from_pairs(c(2), [(0, 1)]).unwrap())
    }

    fn family_with(n: usize, space: impl Fn(usize) -> FinTopology) -> WitnessFamily {
        let mut table = Vec::new();
        for x in 0..n {
            for y in 0..n {
                let map = if x == y { vec![x] } else { vec![x, y] };
                table.push(Witness::new(space(map.len()), map).unwrap());
            }
        }
        WitnessFamily::new(c(n), table).unwrap()
    }

    #[test]
    fn discrete_witnesses_are_always_p_continuous() {
        let w = family_with(2, |m| FinTopology::discrete(c(m)));
        assert!(is_p_continuous(&strict_pair(), &w).unwrap().holds());
        assert!(!w.is_connected());
    }

    #[test]
    fn indiscrete_witness_reports_first_violation() {
        let w = family_with(2, |m| FinTopology::indiscrete(c(m)));
        assert!(w.is_connected());
        match is_p_continuous(&strict_pair(), &w).unwrap() {
            PContinuity::Violated(v) => {
                // Pair (0,1), Λ = {a0 -> 0, a1 -> 1}; R_H(0) = {1} pulls back to {a1}.
                assert_eq!(v.pair, (0, 1));
                assert_eq!((v.z, v.kind), (0, SectionKind::HardUpper));
                assert_eq!(v.preimage, Subset::singleton(2, 1));
            }
            PContinuity::Holds => panic!("expected violation"),
        }
    }

    #[test]
    fn family_invariants() {
        let point = Witness::new(FinTopology::indiscrete(c(1)), vec![0]).unwrap();
        let err = WitnessFamily::new(c(2), vec![point.clone(); 4]);
        assert!(matches!(err, Err(Error::WitnessFamily(_))));
        assert!(WitnessFamily::new(c(2), vec![point]).is_err());
        assert!(Witness::new(FinTopology::indiscrete(c(2)), vec![0]).is_err());
    }

    #[test]
    fn canonical_witness_flags_discontinuity() {
        // R = Δ ∪ {(0,1)} on {∅, {1}, X}: R(1) = {1} is not closed.
        let t = FinTopology::from_opens(
            c(2),
            [Subset::empty(2), Subset::singleton(2, 1), Subset::full(2)],
        )
        .unwrap();
        let r = FinRelation::from_pairs(c(2), [(0, 0), (1, 1), (0, 1)]).unwrap();
        let cw = canonical_witness(&BiRelation::diagonal(r), &t).unwrap();
        assert!(!cw.continuous);
        let cw = canonical_witness(&strict_pair(), &FinTopology::discrete(c(2))).unwrap();
        assert!(cw.continuous);
        assert!(is_p_continuous(&strict_pair(), &cw.family).unwrap().holds());
    }

    #[test]
    fn random_family_is_seed_deterministic() {
        let b = strict_pair();
        assert_eq!(
            random_witness_family(&b, 3, 7),
            random_witness_family(&b, 3, 7)
        );
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10_000 {
            let fam = random_witness_family_with(c(3), 3, &mut rng);
            for ((x, y), w) in fam.witnesses() {
                assert!(w.hits(x) && w.hits(y));
                assert!(w.space().len() <= 3);
            }
        }
    }
}
