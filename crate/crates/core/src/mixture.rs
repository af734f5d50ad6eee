//! Mixture sets over exact rationals, mixture-continuity and Archimedean
//! checks on finite parameter grids, and the fixture relations used by the
//! worked examples.
//!
//! Finite grids can exhibit an existential witness but never refute one, and
//! can only show boundary behaviour at sampled precision. Every verdict here
//! is one of confirmed, refuted (with the exact points that show it), or
//! inconclusive.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pcontinuity::{Witness, WitnessFamily};
use crate::rational::Rational;
use crate::relation::{Carrier, FinRelation};
use crate::subset::Subset;
use crate::topology::FinTopology;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MixturePoint(pub Vec<Rational>);

impl MixturePoint {
    pub fn new(coords: Vec<Rational>) -> Self {
        MixturePoint(coords)
    }

    pub fn from_ints(coords: &[(i64, i64)]) -> Self {
        MixturePoint(coords.iter().map(|&(p, q)| Rational::new(p, q)).collect())
    }

    pub fn scalar(v: Rational) -> Self {
        MixturePoint(vec![v])
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }
}

impl fmt::Debug for MixturePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MixturePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// A mixing operation `x λ y` for `λ ∈ [0,1]`.
pub trait MixtureStructure {
    fn mix(&self, x: &MixturePoint, lambda: &Rational, y: &MixturePoint) -> Result<MixturePoint>;
}

/// `x λ y = λx + (1 - λ)y`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ConvexMixture;

impl MixtureStructure for ConvexMixture {
    fn mix(&self, x: &MixturePoint, lambda: &Rational, y: &MixturePoint) -> Result<MixturePoint> {
        if x.dimension() != y.dimension() {
            return Err(Error::DimensionMismatch {
                expected: x.dimension(),
                got: y.dimension(),
            });
        }
        if !lambda.in_unit_interval() {
            return Err(Error::ParameterOutOfRange(lambda.to_string()));
        }
        let rest = &Rational::one() - lambda;
        Ok(MixturePoint(
            x.0.iter()
                .zip(&y.0)
                .map(|(a, b)| &(lambda * a) + &(&rest * b))
                .collect(),
        ))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixtureSample {
    pub x: MixturePoint,
    pub y: MixturePoint,
    pub lambda: Rational,
    pub mu: Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MixtureAxiom {
    /// `x 1 y = x`
    S1,
    /// `x μ y = y (1-μ) x`
    S2,
    /// `(x μ y) λ y = x (λμ) y`
    S3,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MixtureAxiomReport {
    pub samples: usize,
    /// `(axiom, sample index)` for every failure.
    pub violations: Vec<(MixtureAxiom, usize)>,
}

impl MixtureAxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn check_mixture_axioms<M: MixtureStructure + ?Sized>(
    m: &M,
    samples: &[MixtureSample],
) -> Result<MixtureAxiomReport> {
    let mut violations = Vec::new();
    let one = Rational::one();
    for (i, s) in samples.iter().enumerate() {
        for p in [&s.lambda, &s.mu] {
            if !p.in_unit_interval() {
                return Err(Error::ParameterOutOfRange(p.to_string()));
            }
        }
        if m.mix(&s.x, &one, &s.y)? != s.x {
            violations.push((MixtureAxiom::S1, i));
        }
        if m.mix(&s.x, &s.mu, &s.y)? != m.mix(&s.y, &(&one - &s.mu), &s.x)? {
            violations.push((MixtureAxiom::S2, i));
        }
        let inner = m.mix(&s.x, &s.mu, &s.y)?;
        if m.mix(&inner, &s.lambda, &s.y)? != m.mix(&s.x, &(&s.lambda * &s.mu), &s.y)? {
            violations.push((MixtureAxiom::S3, i));
        }
    }
    Ok(MixtureAxiomReport {
        samples: samples.len(),
        violations,
    })
}

/// A relation on a mixture set that can be decided exactly at rational points.
pub trait PointRelation {
    fn dimension(&self) -> usize;

    /// Whether `(a, b)` is in the relation.
    fn related(&self, a: &MixturePoint, b: &MixturePoint) -> Result<bool>;

    /// Whether `(a, b)` is in the asymmetric part.
    fn strictly(&self, a: &MixturePoint, b: &MixturePoint) -> Result<bool> {
        Ok(self.related(a, b)? && !self.related(b, a)?)
    }

    fn check_dimension(&self, p: &MixturePoint) -> Result<()> {
        if p.dimension() == self.dimension() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.dimension(),
                got: p.dimension(),
            })
        }
    }
}

/// Restricts a point relation to a finite list of points.
pub fn induce_relation<R: PointRelation + ?Sized>(
    rel: &R,
    points: &[MixturePoint],
) -> Result<FinRelation> {
    let carrier = Carrier::new(points.len())?;
    let mut rows = Vec::with_capacity(points.len());
    for a in points {
        let mut row = Subset::empty(points.len());
        for (j, b) in points.iter().enumerate() {
            if rel.related(a, b)? {
                row.insert(j);
            }
        }
        rows.push(row);
    }
    let r = FinRelation::from_rows(rows)?;
    debug_assert_eq!(r.carrier(), carrier);
    Ok(r)
}

/// `f(x) = 2 x1 x2 / (x1² + x2²)` away from the origin and `f(0,0) = 1`.
pub fn example1_value(p: &MixturePoint) -> Result<Rational> {
    if p.dimension() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: p.dimension(),
        });
    }
    let (a, b) = (&p.0[0], &p.0[1]);
    // Origin first: the formula is 0/0 there.
    if a.is_zero() && b.is_zero() {
        return Ok(Rational::one());
    }
    let two = Rational::integer(2);
    let num = &(&two * a) * b;
    let den = &(a * a) + &(b * b);
    Ok(&num / &den)
}

/// `(x, y)` related iff `f(x) <= f(y)` for the example-1 function.
#[derive(Debug, Clone, Copy, Default)]
pub struct Example1Relation;

impl PointRelation for Example1Relation {
    fn dimension(&self) -> usize {
        2
    }

    fn related(&self, a: &MixturePoint, b: &MixturePoint) -> Result<bool> {
        Ok(example1_value(a)? <= example1_value(b)?)
    }
}

/// `x >= y` coordinatewise.
#[derive(Debug, Clone, Copy)]
pub struct ComponentwiseOrder {
    pub dimension: usize,
}

impl PointRelation for ComponentwiseOrder {
    fn dimension(&self) -> usize {
        self.dimension
    }

    fn related(&self, a: &MixturePoint, b: &MixturePoint) -> Result<bool> {
        self.check_dimension(a)?;
        self.check_dimension(b)?;
        Ok(a.0.iter().zip(&b.0).all(|(p, q)| p >= q))
    }
}

/// On `[0,1]`: `{(x,y) | x <= 1/2, x <= y <= 1/2} ∪ {(x,y) | x >= 1/2, y >= x}`.
#[derive(Debug, Clone, Copy, Default)]
pub struct Example3Relation;

impl Example3Relation {
    pub fn holds(x: &Rational, y: &Rational) -> bool {
        let half = Rational::new(1, 2);
        (x <= &half && x <= y && y <= &half) || (x >= &half && y >= x)
    }
}

impl PointRelation for Example3Relation {
    fn dimension(&self) -> usize {
        1
    }

    fn related(&self, a: &MixturePoint, b: &MixturePoint) -> Result<bool> {
        self.check_dimension(a)?;
        self.check_dimension(b)?;
        Ok(Self::holds(&a.0[0], &b.0[0]))
    }
}

/// Every pair related.
#[derive(Debug, Clone, Copy)]
pub struct FullRelation {
    pub dimension: usize,
}

impl PointRelation for FullRelation {
    fn dimension(&self) -> usize {
        self.dimension
    }

    fn related(&self, a: &MixturePoint, b: &MixturePoint) -> Result<bool> {
        self.check_dimension(a)?;
        self.check_dimension(b)?;
        Ok(true)
    }
}

/// Strictly increasing rational points of `[0,1]` including both endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Grid(Vec<Rational>);

impl Grid {
    pub fn from_points(mut points: Vec<Rational>) -> Result<Self> {
        points.sort();
        points.dedup();
        if points.first() != Some(&Rational::zero()) || points.last() != Some(&Rational::one()) {
            return Err(Error::InvalidGrid("grid must contain 0 and 1".into()));
        }
        if let Some(p) = points.iter().find(|p| !p.in_unit_interval()) {
            return Err(Error::InvalidGrid(format!("{p} lies outside [0,1]")));
        }
        Ok(Grid(points))
    }

    /// Multiples of `1/denominator`.
    pub fn uniform(denominator: u32) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::InvalidGrid("denominator must be positive".into()));
        }
        let d = i64::from(denominator);
        Ok(Grid((0..=d).map(|i| Rational::new(i, d)).collect()))
    }

    /// Multiples of `2^-depth`.
    pub fn dyadic(depth: u32) -> Result<Self> {
        if depth > 30 {
            return Err(Error::InvalidGrid(format!(
                "dyadic depth {depth} is too fine"
            )));
        }
        Grid::uniform(1 << depth)
    }

    /// Adds breakpoints where membership may flip.
    pub fn with_breakpoints(self, breakpoints: &[Rational]) -> Result<Self> {
        let mut pts = self.0;
        pts.extend(breakpoints.iter().cloned());
        Grid::from_points(pts)
    }

    pub fn points(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, p: &Rational) -> bool {
        self.0.binary_search(p).is_ok()
    }

    pub fn index_of(&self, p: &Rational) -> Option<usize> {
        self.0.binary_search(p).ok()
    }

    pub fn require(&self, p: &Rational) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::GridTooCoarse(p.to_string()))
        }
    }

    /// Points strictly inside `(0,1)`.
    pub fn interior(&self) -> impl Iterator<Item = &Rational> {
        self.0.iter().filter(|p| p.in_open_unit_interval())
    }
}

/// Which section of `R` at `z` a profile tracks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SectionRole {
    /// `R(z)`: `(z, w) ∈ R`
    Upper,
    /// `R^-1(z)`: `(w, z) ∈ R`
    Lower,
    /// `P(z)`: `(z, w) ∈ P`
    StrictUpper,
    /// `P^-1(z)`: `(w, z) ∈ P`
    StrictLower,
}

impl SectionRole {
    pub fn member<R: PointRelation + ?Sized>(
        self,
        rel: &R,
        w: &MixturePoint,
        z: &MixturePoint,
    ) -> Result<bool> {
        match self {
            SectionRole::Upper => rel.related(z, w),
            SectionRole::Lower => rel.related(w, z),
            SectionRole::StrictUpper => rel.strictly(z, w),
            SectionRole::StrictLower => rel.strictly(w, z),
        }
    }
}

/// Membership of `x λ y` in a section at `z`, for every grid value `λ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SegmentProfile {
    pub x: MixturePoint,
    pub y: MixturePoint,
    pub z: MixturePoint,
    pub role: SectionRole,
    pub grid: Grid,
    pub membership: Vec<bool>,
}

impl SegmentProfile {
    pub fn all(&self) -> bool {
        self.membership.iter().all(|&m| m)
    }

    pub fn pattern(&self) -> String {
        self.membership
            .iter()
            .map(|&m| if m { '1' } else { '0' })
            .collect()
    }

    /// Grid values in the profiled set.
    pub fn members(&self) -> Vec<Rational> {
        self.grid
            .points()
            .iter()
            .zip(&self.membership)
            .filter(|(_, &m)| m)
            .map(|(p, _)| p.clone())
            .collect()
    }
}

pub fn segment_profile<R, M>(
    rel: &R,
    mixture: &M,
    role: SectionRole,
    x: &MixturePoint,
    y: &MixturePoint,
    z: &MixturePoint,
    grid: &Grid,
) -> Result<SegmentProfile>
where
    R: PointRelation + ?Sized,
    M: MixtureStructure + ?Sized,
{
    for p in [x, y, z] {
        rel.check_dimension(p)?;
    }
    let membership = grid
        .points()
        .iter()
        .map(|lambda| role.member(rel, &mixture.mix(x, lambda, y)?, z))
        .collect::<Result<Vec<_>>>()?;
    Ok(SegmentProfile {
        x: x.clone(),
        y: y.clone(),
        z: z.clone(),
        role,
        grid: grid.clone(),
        membership,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

/// A grid value whose membership differs from every probe approaching it
/// from one side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryWitness {
    pub at: Rational,
    pub member: bool,
    pub side: Side,
    pub probes: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Confirmed,
    Refuted { witness: BoundaryWitness },
    Inconclusive { reason: String },
}

impl Verdict {
    pub fn is_confirmed(&self) -> bool {
        matches!(self, Verdict::Confirmed)
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryAnalysis {
    pub closed: Verdict,
    pub open: Verdict,
}

struct GapProbes {
    /// Probes approaching the left end, nearest last.
    near_left: Vec<(Rational, bool)>,
    near_right: Vec<(Rational, bool)>,
}

impl GapProbes {
    fn uniform(&self) -> Option<bool> {
        let mut all = self
            .near_left
            .iter()
            .chain(&self.near_right)
            .map(|(_, m)| *m);
        let first = all.next()?;
        all.all(|m| m == first).then_some(first)
    }
}

/// Samples each gap `(g_i, g_{i+1})` of the grid at `g_i + h/2^k` and
/// `g_{i+1} - h/2^k` for `k = 1..=probe_depth`, then reads off whether the
/// profiled subset of `[0,1]` is closed or open at sampled precision.
///
/// A grid value outside the set whose approaching probes on one side are all
/// members refutes closedness; a member whose approaching probes on one side
/// are all non-members refutes openness. Without a refutation, a gap whose
/// probes disagree means membership flips off-grid and the verdict is
/// inconclusive.
pub fn boundary_analysis<R, M>(
    rel: &R,
    mixture: &M,
    profile: &SegmentProfile,
    probe_depth: u32,
) -> Result<BoundaryAnalysis>
where
    R: PointRelation + ?Sized,
    M: MixtureStructure + ?Sized,
{
    let depth = probe_depth.max(1);
    let pts = profile.grid.points();
    let eval = |lambda: &Rational| -> Result<bool> {
        profile.role.member(
            rel,
            &mixture.mix(&profile.x, lambda, &profile.y)?,
            &profile.z,
        )
    };
    let mut gaps = Vec::with_capacity(pts.len().saturating_sub(1));
    for pair in pts.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        let h = b - a;
        let mut near_left = Vec::new();
        let mut near_right = Vec::new();
        for k in 1..=depth {
            let step = &h / &Rational::integer(1i64 << k);
            let l = a + &step;
            let r = b - &step;
            near_left.push((l.clone(), eval(&l)?));
            near_right.push((r.clone(), eval(&r)?));
        }
        gaps.push(GapProbes {
            near_left,
            near_right,
        });
    }

    let mut closed_refutation = None;
    let mut open_refutation = None;
    for (i, p) in pts.iter().enumerate() {
        let member = profile.membership[i];
        let sides = [
            (Side::Left, i.checked_sub(1).map(|g| &gaps[g].near_right)),
            (Side::Right, gaps.get(i).map(|g| &g.near_left)),
        ];
        for (side, probes) in sides {
            let Some(probes) = probes else { continue };
            if probes.iter().all(|(_, m)| *m != member) {
                let witness = BoundaryWitness {
                    at: p.clone(),
                    member,
                    side,
                    probes: probes.iter().map(|(q, _)| q.clone()).collect(),
                };
                let slot = if member {
                    &mut open_refutation
                } else {
                    &mut closed_refutation
                };
                if slot.is_none() {
                    *slot = Some(witness);
                }
            }
        }
    }
    let split_gap = gaps
        .iter()
        .position(|g| g.uniform().is_none())
        .map(|i| format!("membership changes inside ({}, {})", pts[i], pts[i + 1]));
    let verdict = |refutation: Option<BoundaryWitness>| match (refutation, &split_gap) {
        (Some(witness), _) => Verdict::Refuted { witness },
        (None, Some(reason)) => Verdict::Inconclusive {
            reason: reason.clone(),
        },
        (None, None) => Verdict::Confirmed,
    };
    Ok(BoundaryAnalysis {
        closed: verdict(closed_refutation),
        open: verdict(open_refutation),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Archimedean {
    /// Interior grid values with `x λ z ∈ P(y)` and `y δ z ∈ P^-1(x)`.
    Satisfied { lambda: Rational, delta: Rational },
    /// No grid witness for at least one of the two existentials.
    Inconclusive {
        lambda: Option<Rational>,
        delta: Option<Rational>,
    },
}

/// Requires `(y, x) ∈ P`. A finite grid can only exhibit witnesses.
pub fn is_archimedean_on_grid<R, M>(
    rel: &R,
    mixture: &M,
    x: &MixturePoint,
    y: &MixturePoint,
    z: &MixturePoint,
    grid: &Grid,
) -> Result<Archimedean>
where
    R: PointRelation + ?Sized,
    M: MixtureStructure + ?Sized,
{
    if !rel.strictly(y, x)? {
        return Err(Error::Precondition(format!(
            "({y}, {x}) is not a strict pair"
        )));
    }
    let mut lambda = None;
    let mut delta = None;
    for t in grid.interior() {
        if lambda.is_none() && rel.strictly(y, &mixture.mix(x, t, z)?)? {
            lambda = Some(t.clone());
        }
        if delta.is_none() && rel.strictly(&mixture.mix(y, t, z)?, x)? {
            delta = Some(t.clone());
        }
        if lambda.is_some() && delta.is_some() {
            break;
        }
    }
    Ok(match (lambda, delta) {
        (Some(lambda), Some(delta)) => Archimedean::Satisfied { lambda, delta },
        (lambda, delta) => Archimedean::Inconclusive { lambda, delta },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Triple {
    pub x: MixturePoint,
    pub y: MixturePoint,
    pub z: MixturePoint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClauseVerdict {
    pub clause: &'static str,
    #[serde(flatten)]
    pub verdict: Verdict,
    /// Triple and role that produced a refutation or the first inconclusive
    /// profile.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub triple: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub role: Option<SectionRole>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProfileRecord {
    pub triple: usize,
    pub role: SectionRole,
    pub pattern: String,
    pub analysis: BoundaryAnalysis,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScalarContinuityReport {
    /// Sections of the hard part pull back to closed parameter sets.
    pub hard_mixture_continuity: ClauseVerdict,
    /// Sections of the strict soft part pull back to open parameter sets.
    pub strict_soft_openness: ClauseVerdict,
    pub profiles: Vec<ProfileRecord>,
}

/// Evaluates the scalar-continuity clauses of a bi-relation `(hard, soft)` on
/// the supplied triples. Pass the same relation twice for a single relation.
pub fn scalar_continuity_check<H, S, M>(
    hard: &H,
    soft: &S,
    mixture: &M,
    triples: &[Triple],
    grid: &Grid,
    probe_depth: u32,
) -> Result<ScalarContinuityReport>
where
    H: PointRelation + ?Sized,
    S: PointRelation + ?Sized,
    M: MixtureStructure + ?Sized,
{
    let mut profiles = Vec::new();
    let mut hard_clause = ClauseAccumulator::new("hard_mixture_continuity");
    let mut soft_clause = ClauseAccumulator::new("strict_soft_openness");
    for (i, t) in triples.iter().enumerate() {
        for role in [SectionRole::Upper, SectionRole::Lower] {
            let profile = segment_profile(hard, mixture, role, &t.x, &t.y, &t.z, grid)?;
            let analysis = boundary_analysis(hard, mixture, &profile, probe_depth)?;
            hard_clause.absorb(&analysis.closed, i, role);
            profiles.push(ProfileRecord {
                triple: i,
                role,
                pattern: profile.pattern(),
                analysis,
            });
        }
        for role in [SectionRole::StrictUpper, SectionRole::StrictLower] {
            let profile = segment_profile(soft, mixture, role, &t.x, &t.y, &t.z, grid)?;
            let analysis = boundary_analysis(soft, mixture, &profile, probe_depth)?;
            soft_clause.absorb(&analysis.open, i, role);
            profiles.push(ProfileRecord {
                triple: i,
                role,
                pattern: profile.pattern(),
                analysis,
            });
        }
    }
    Ok(ScalarContinuityReport {
        hard_mixture_continuity: hard_clause.finish(),
        strict_soft_openness: soft_clause.finish(),
        profiles,
    })
}

struct ClauseAccumulator {
    clause: &'static str,
    refuted: Option<(Verdict, usize, SectionRole)>,
    inconclusive: Option<(Verdict, usize, SectionRole)>,
}

impl ClauseAccumulator {
    fn new(clause: &'static str) -> Self {
        ClauseAccumulator {
            clause,
            refuted: None,
            inconclusive: None,
        }
    }

    fn absorb(&mut self, v: &Verdict, triple: usize, role: SectionRole) {
        let slot = match v {
            Verdict::Confirmed => return,
            Verdict::Refuted { .. } => &mut self.refuted,
            Verdict::Inconclusive { .. } => &mut self.inconclusive,
        };
        if slot.is_none() {
            *slot = Some((v.clone(), triple, role));
        }
    }

    fn finish(self) -> ClauseVerdict {
        match self.refuted.or(self.inconclusive) {
            Some((verdict, triple, role)) => ClauseVerdict {
                clause: self.clause,
                verdict,
                triple: Some(triple),
                role: Some(role),
            },
            None => ClauseVerdict {
                clause: self.clause,
                verdict: Verdict::Confirmed,
                triple: None,
                role: None,
            },
        }
    }
}

/// Path witnesses on a finite sample `points` of a mixture set: for each pair
/// `(a, b)` the parameter space is the set of grid values `λ` with
/// `a λ b` back in the sample, carrying the subspace topology from `[0,1]`
/// generated by open rays, and `f(λ) = a λ b`.
///
/// On a finite sample that subspace topology is discrete, so this is only a
/// grid-scale stand-in for the interval witnesses of scalar continuity.
pub fn grid_path_family<M: MixtureStructure + ?Sized>(
    points: &[MixturePoint],
    mixture: &M,
    grid: &Grid,
) -> Result<WitnessFamily> {
    let carrier = Carrier::new(points.len())?;
    let mut table = Vec::with_capacity(points.len() * points.len());
    for a in points {
        for b in points {
            let mut lambdas = Vec::new();
            let mut map = Vec::new();
            for t in grid.points() {
                let w = mixture.mix(a, t, b)?;
                if let Some(j) = points.iter().position(|p| *p == w) {
                    lambdas.push(t.clone());
                    map.push(j);
                }
            }
            let m = lambdas.len();
            let space_carrier = Carrier::new(m)?;
            // Rays [0, t) and (t, 1] restricted to the sampled values.
            let rays = (0..m).flat_map(|i| {
                [
                    Subset::from_indices(m, 0..i),
                    Subset::from_indices(m, i + 1..m),
                ]
            });
            let space = FinTopology::from_subbasis(space_carrier, rays)?;
            table.push(Witness::new(space, map)?);
        }
    }
    WitnessFamily::new(carrier, table)
}

/// JSON fixture description for a scalar-continuity run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureSpec {
    pub dimension: usize,
    pub function: FixtureFunction,
    pub grid_depth: u32,
    #[serde(default = "default_probe_depth")]
    pub probe_depth: u32,
    pub triples: Vec<Triple>,
}

fn default_probe_depth() -> u32 {
    8
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FixtureFunction {
    Example1,
    ComponentwiseOrder,
    Example3,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArchimedeanRecord {
    pub triple: usize,
    /// `None` when `(y, x)` is not a strict pair.
    pub verdict: Option<Archimedean>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixtureReport {
    pub function: FixtureFunction,
    pub grid_points: usize,
    pub continuity: ScalarContinuityReport,
    pub archimedean: Vec<ArchimedeanRecord>,
}

impl FixtureSpec {
    pub fn relation(&self) -> Result<Box<dyn PointRelation>> {
        let expected = match self.function {
            FixtureFunction::Example1 => Some(2),
            FixtureFunction::Example3 => Some(1),
            FixtureFunction::ComponentwiseOrder => None,
        };
        if let Some(d) = expected.filter(|&d| d != self.dimension) {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: self.dimension,
            });
        }
        Ok(match self.function {
            FixtureFunction::Example1 => Box::new(Example1Relation),
            FixtureFunction::Example3 => Box::new(Example3Relation),
            FixtureFunction::ComponentwiseOrder => Box::new(ComponentwiseOrder {
                dimension: self.dimension,
            }),
        })
    }

    pub fn run(&self) -> Result<FixtureReport> {
        let rel = self.relation()?;
        let breakpoints = [
            Rational::new(1, 4),
            Rational::new(1, 2),
            Rational::new(3, 4),
        ];
        let grid = Grid::dyadic(self.grid_depth)?.with_breakpoints(&breakpoints)?;
        let continuity = scalar_continuity_check(
            rel.as_ref(),
            rel.as_ref(),
            &ConvexMixture,
            &self.triples,
            &grid,
            self.probe_depth,
        )?;
        let mut archimedean = Vec::new();
        for (i, t) in self.triples.iter().enumerate() {
            let verdict = if rel.strictly(&t.y, &t.x)? {
                Some(is_archimedean_on_grid(
                    rel.as_ref(),
                    &ConvexMixture,
                    &t.x,
                    &t.y,
                    &t.z,
                    &grid,
                )?)
            } else {
                None
            };
            archimedean.push(ArchimedeanRecord { triple: i, verdict });
        }
        Ok(FixtureReport {
            function: self.function,
            grid_points: grid.len(),
            continuity,
            archimedean,
        })
    }
}
