use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mixture::{
    boundary_analysis, example1_value, scalar_continuity_check, segment_profile,
    ComponentwiseOrder, ConvexMixture, Example1Relation, Example3Relation, Grid, MixturePoint,
    ScalarContinuityReport, SectionRole, Triple, Verdict,
};
use crate::rational::Rational;
use crate::relation::{Carrier, FinRelation};
use crate::subset::Subset;

const PROBE_DEPTH: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixtureCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixtureOutcome {
    pub example: u8,
    pub grid_points: usize,
    pub carrier_points: usize,
    pub checks: Vec<FixtureCheck>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub continuity: Option<ScalarContinuityReport>,
}

impl FixtureOutcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn check(&mut self, name: &'static str, passed: bool, detail: impl Into<String>) {
        self.checks.push(FixtureCheck {
            name,
            passed,
            detail: detail.into(),
        });
    }
}

/// Runs worked example 1, 2 or 3 on the given parameter grid.
///
/// Examples 1 and 2 live on `grid × grid`, example 3 on `grid` itself.
pub fn example_fixture(id: u8, grid: &Grid) -> Result<FixtureOutcome> {
    if grid.len() < 3 {
        return Err(Error::GridTooCoarse(
            "the grid needs an interior point".into(),
        ));
    }
    match id {
        1 => example1(grid),
        2 => example2(grid),
        3 => example3(grid),
        _ => Err(Error::Malformed(format!("unknown example {id}"))),
    }
}

fn q(p: i64, d: i64) -> Rational {
    Rational::new(p, d)
}

fn point(a: &Rational, b: &Rational) -> MixturePoint {
    MixturePoint::new(vec![a.clone(), b.clone()])
}

/// Rows of the relation and whether every `R(y)` with `y ∈ R(x)` sits in `R(x)`.
fn rows_transitive(r: &FinRelation) -> bool {
    let rows: Vec<Subset> = (0..r.len()).into_par_iter().map(|x| r.upper(x)).collect();
    rows.par_iter()
        .all(|row| row.iter().all(|y| rows[y].is_subset(row)))
}

fn members(points: &[Rational], set: &Subset) -> Vec<Rational> {
    set.iter().map(|i| points[i].clone()).collect()
}

fn expected(points: &[Rational], keep: impl Fn(&Rational) -> bool) -> Vec<Rational> {
    points.iter().filter(|p| keep(p)).cloned().collect()
}

fn example1(grid: &Grid) -> Result<FixtureOutcome> {
    let half = q(1, 2);
    grid.require(&half)?;
    let g = grid.points();
    let m = g.len();
    let pts: Vec<MixturePoint> = g
        .iter()
        .flat_map(|a| g.iter().map(move |b| point(a, b)))
        .collect();
    let values: Vec<Rational> = pts
        .par_iter()
        .map(|p| example1_value(p).expect("planar"))
        .collect();
    let mut distinct = values.clone();
    distinct.par_sort();
    distinct.dedup();
    let rank: Vec<usize> = values
        .iter()
        .map(|v| distinct.binary_search(v).expect("present"))
        .collect();
    let carrier = Carrier::new(pts.len())?;
    let r = FinRelation::from_fn(carrier, |a, b| rank[a] <= rank[b]);

    let mut out = FixtureOutcome {
        example: 1,
        grid_points: m,
        carrier_points: pts.len(),
        checks: Vec::new(),
        notes: Vec::new(),
        continuity: None,
    };
    out.check(
        "complete",
        r.is_complete(),
        format!("{} distinct values of f", distinct.len()),
    );
    out.check(
        "transitive",
        rows_transitive(&r),
        "row inclusion over every related pair",
    );

    let zero = Rational::zero();
    let one = Rational::one();
    for (name, p, want) in [
        ("f(1,1) = 1", point(&one, &one), one.clone()),
        ("f(1,0) = 0", point(&one, &zero), zero.clone()),
        ("f(0,0) = 1", point(&zero, &zero), one.clone()),
    ] {
        let got = example1_value(&p)?;
        out.check(name, got == want, format!("f{p} = {got}"));
    }

    let x = point(&zero, &zero);
    let y = point(&one, &zero);
    let profile = segment_profile(
        &Example1Relation,
        &ConvexMixture,
        SectionRole::Lower,
        &x,
        &y,
        &y,
        grid,
    )?;
    let last = profile.membership.len() - 1;
    let half_open = profile.membership[..last].iter().all(|&b| b) && !profile.membership[last];
    out.check(
        "lower section of (1,0) along (0,0)-(1,0) is [0,1)",
        half_open,
        format!("membership {}", profile.pattern()),
    );
    let analysis = boundary_analysis(&Example1Relation, &ConvexMixture, &profile, PROBE_DEPTH)?;
    let refuted_at_one =
        matches!(&analysis.closed, Verdict::Refuted { witness } if witness.at == one);
    out.check(
        "closedness refuted at lambda = 1",
        refuted_at_one,
        serde_json::to_string(&analysis.closed)?,
    );
    let triples = vec![Triple {
        x: x.clone(),
        y: y.clone(),
        z: y.clone(),
    }];
    let report = scalar_continuity_check(
        &Example1Relation,
        &Example1Relation,
        &ConvexMixture,
        &triples,
        grid,
        PROBE_DEPTH,
    )?;
    out.check(
        "mixture-continuity refuted",
        report.hard_mixture_continuity.verdict.is_refuted(),
        serde_json::to_string(&report.hard_mixture_continuity)?,
    );
    out.continuity = Some(report);

    // Two-leg path from (0,0) to (1,0): the diagonal, then the anti-diagonal.
    let path = |l: &Rational| {
        if *l < half {
            point(l, l)
        } else {
            point(l, &(&one - l))
        }
    };
    let mut diagonal_ok = true;
    let mut anti_ok = true;
    for l in g {
        let v = example1_value(&path(l))?;
        if *l < half {
            diagonal_ok &= v == one;
        } else {
            let r = &one - l;
            let two = Rational::integer(2);
            let formula = &(&(&two * l) * &r) / &(&(l * l) + &(&r * &r));
            anti_ok &= v == formula;
        }
    }
    out.check(
        "path: f = 1 on the diagonal leg",
        diagonal_ok,
        "every grid value below 1/2",
    );
    out.check(
        "path: anti-diagonal leg follows 2l(1-l)/(l^2+(1-l)^2)",
        anti_ok,
        "every grid value from 1/2",
    );
    let at_half = example1_value(&path(&half))?;
    out.check(
        "path: f = 1 at lambda = 1/2",
        at_half == one,
        format!("f{} = {at_half}", path(&half)),
    );
    let at_one = example1_value(&path(&one))?;
    out.check(
        "path: f = 0 at lambda = 1",
        at_one == zero,
        format!("f{} = {at_one}", path(&one)),
    );
    out.check(
        "path: endpoints are (0,0) and (1,0)",
        path(&zero) == x && path(&one) == y,
        format!("{} and {}", path(&zero), path(&one)),
    );
    Ok(out)
}

fn example2(grid: &Grid) -> Result<FixtureOutcome> {
    let m = grid.len();
    let carrier = Carrier::new(m * m)?;
    // Grid values are increasing, so index order is value order.
    let r = FinRelation::from_fn(carrier, |a, b| a / m >= b / m && a % m >= b % m);
    let mut out = FixtureOutcome {
        example: 2,
        grid_points: m,
        carrier_points: m * m,
        checks: Vec::new(),
        notes: vec!["topological claims for this example are not checked".into()],
        continuity: None,
    };
    if m <= 9 {
        let g = grid.points();
        let pts: Vec<MixturePoint> = g
            .iter()
            .flat_map(|a| g.iter().map(move |b| point(a, b)))
            .collect();
        let exact = crate::mixture::induce_relation(&ComponentwiseOrder { dimension: 2 }, &pts)?;
        out.check(
            "index order agrees with exact comparison",
            exact == r,
            "all pairs",
        );
    }
    out.check("anti-symmetric", r.is_antisymmetric(), "");
    out.check(
        "transitive",
        rows_transitive(&r),
        "row inclusion over every related pair",
    );
    out.check("non-trivial", r.is_nontrivial(), "");
    let (a, b) = (m, 1); // (g1, g0) and (g0, g1)
    let incomparable = !r.contains(a, b) && !r.contains(b, a);
    out.check(
        "incomplete",
        !r.is_complete() && incomparable,
        format!(
            "({}, {}) and ({}, {}) are incomparable",
            grid.points()[1],
            grid.points()[0],
            grid.points()[0],
            grid.points()[1]
        ),
    );
    let p = r.asymmetric_part();
    let pointwise = (0..m * m).all(|x| {
        let mut rx = r.upper(x);
        rx.remove(x);
        p.upper(x) == rx
    });
    out.check("P(x) = R(x) minus x", pointwise, "every grid point");
    Ok(out)
}

fn example3(grid: &Grid) -> Result<FixtureOutcome> {
    let quarter = q(1, 4);
    let half = q(1, 2);
    let three = q(3, 4);
    for b in [&quarter, &half, &three] {
        grid.require(b)?;
    }
    let g = grid.points();
    let carrier = Carrier::new(g.len())?;
    let r = FinRelation::from_fn(carrier, |a, b| Example3Relation::holds(&g[a], &g[b]));
    let idx = |v: &Rational| grid.index_of(v).expect("required");
    let (iq, ih, it) = (idx(&quarter), idx(&half), idx(&three));

    let mut out = FixtureOutcome {
        example: 3,
        grid_points: g.len(),
        carrier_points: g.len(),
        checks: Vec::new(),
        notes: Vec::new(),
        continuity: None,
    };
    out.check("reflexive", r.is_reflexive(), "");
    out.check("anti-symmetric", r.is_antisymmetric(), "");
    out.check("semi-transitive", r.is_semi_transitive(), "");
    let witness = r.contains(iq, ih) && r.contains(ih, it) && !r.contains(iq, it);
    out.check(
        "not transitive at ((1/4,1/2),(1/2,3/4))",
        !r.is_transitive() && !rows_transitive(&r) && witness,
        "(1/4, 3/4) is not related",
    );
    let detail = r
        .completeness_witness()
        .map(|(x, y)| format!("{} and {} are incomparable", g[x], g[y]))
        .unwrap_or_default();
    out.check("incomplete", !r.is_complete(), detail);

    let upper_half = members(g, &r.upper(ih));
    out.check(
        "R(1/2) = grid from 1/2 to 1",
        upper_half == expected(g, |p| *p >= half),
        format!("{} points", upper_half.len()),
    );
    let lower_half = members(g, &r.lower(ih));
    out.check(
        "R^-1(1/2) = grid from 0 to 1/2",
        lower_half == expected(g, |p| *p <= half),
        format!("{} points", lower_half.len()),
    );
    let p = r.asymmetric_part();
    let p_quarter = members(g, &p.upper(iq));
    out.check(
        "P(1/4) = grid in (1/4, 1/2]",
        p_quarter == expected(g, |v| *v > quarter && *v <= half),
        format!("{} points", p_quarter.len()),
    );
    let p_three = members(g, &p.lower(it));
    out.check(
        "P^-1(3/4) = grid in [1/2, 3/4)",
        p_three == expected(g, |v| *v >= half && *v < three),
        format!("{} points", p_three.len()),
    );

    let x = MixturePoint::scalar(Rational::zero());
    let y = MixturePoint::scalar(Rational::one());
    let triples: Vec<Triple> = [&quarter, &half, &three]
        .into_iter()
        .map(|z| Triple {
            x: x.clone(),
            y: y.clone(),
            z: MixturePoint::scalar(z.clone()),
        })
        .collect();
    let report = scalar_continuity_check(
        &Example3Relation,
        &Example3Relation,
        &ConvexMixture,
        &triples,
        grid,
        PROBE_DEPTH,
    )?;
    out.check(
        "sections of R along [0,1] are closed",
        report.hard_mixture_continuity.verdict.is_confirmed(),
        serde_json::to_string(&report.hard_mixture_continuity)?,
    );
    out.notes.push(format!(
        "strict sections along [0,1] in the usual topology: {}",
        serde_json::to_string(&report.strict_soft_openness)?
    ));
    out.continuity = Some(report);
    Ok(out)
}
