//! One test per acceptance criterion. Each writes a single `PASS`/`FAIL`
//! line straight to stderr, so the lines appear even under captured output.

use std::collections::BTreeSet;
use std::io::Write;
use std::process::Command as Process;
use std::time::{Duration, Instant};

use bipref::harness::{
    census_claims, census_eilenberg, census_proposition1, census_sen, census_theorem2,
    example_fixture, membership_R, theorem1_randomized, validate_witness, with_threads,
};
use bipref::{
    enumerate_topologies, BiRelation, Carrier, CensusConfig, FinRelation, FinTopology,
    FixtureOutcome, Grid, NecessityOutcome, RandomizedBounds,
};

const SEN_LIMIT: Duration = Duration::from_secs(10);
const THEOREM2_LIMIT: Duration = Duration::from_secs(60);
const RANDOMIZED_TRIALS: u64 = 10_000;
const RANDOMIZED_SEED: u64 = 7;
const EXAMPLE1_DEPTH: u32 = 6;
const EXAMPLE3_DENOMINATOR: u32 = 100;

fn line(id: u8, name: &str, passed: bool, detail: &str) {
    let verdict = if passed { "PASS" } else { "FAIL" };
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err, "acceptance {id:>2} [{verdict}] {name}: {detail}");
}

fn bipref(args: &[&str]) -> std::process::Output {
    Process::new(env!("CARGO_BIN_EXE_bipref"))
        .args(args)
        .env_remove("BIPREF_THREADS")
        .output()
        .expect("binary runs")
}

fn carrier(n: usize) -> Carrier {
    Carrier::new(n).unwrap()
}

// Independent oracles over bit masks: relation bit `x * n + y` is (x, y),
// subset bit `x` is membership of x.

fn has(r: u64, n: usize, x: usize, y: usize) -> bool {
    r >> (x * n + y) & 1 == 1
}

fn transitive(r: u64, n: usize) -> bool {
    (0..n).all(|x| {
        (0..n).all(|y| (0..n).all(|z| !(has(r, n, x, y) && has(r, n, y, z)) || has(r, n, x, z)))
    })
}

fn complete(r: u64, n: usize) -> bool {
    (0..n).all(|x| (0..n).all(|y| has(r, n, x, y) || has(r, n, y, x)))
}

fn strict(r: u64, n: usize) -> u64 {
    let mut p = 0;
    for x in 0..n {
        for y in 0..n {
            if has(r, n, x, y) && !has(r, n, y, x) {
                p |= 1 << (x * n + y);
            }
        }
    }
    p
}

fn indifference(r: u64, n: usize) -> u64 {
    let mut i = 0;
    for x in 0..n {
        for y in 0..n {
            if has(r, n, x, y) && has(r, n, y, x) {
                i |= 1 << (x * n + y);
            }
        }
    }
    i
}

/// `I∘P ⊆ P` and `P∘I ⊆ P`, both orders of the chain.
fn semi_transitive(r: u64, n: usize) -> bool {
    let (p, i) = (strict(r, n), indifference(r, n));
    (0..n).all(|x| {
        (0..n).all(|y| {
            (0..n).all(|z| {
                let ip = has(i, n, x, y) && has(p, n, y, z);
                let pi = has(p, n, x, y) && has(i, n, y, z);
                !(ip || pi) || has(p, n, x, z)
            })
        })
    })
}

fn complement(r: u64, n: usize) -> u64 {
    !r & ((1u64 << (n * n)) - 1)
}

fn upper(r: u64, n: usize, x: usize) -> u64 {
    (0..n)
        .filter(|&y| has(r, n, x, y))
        .fold(0, |s, y| s | 1 << y)
}

fn lower(r: u64, n: usize, x: usize) -> u64 {
    (0..n)
        .filter(|&y| has(r, n, y, x))
        .fold(0, |s, y| s | 1 << y)
}

/// Every family of subsets containing the empty set and the carrier and closed
/// under pairwise union and intersection.
fn brute_force_topologies(n: usize) -> BTreeSet<Vec<u64>> {
    let subsets = 1usize << n;
    let full = (1u64 << n) - 1;
    let mut out = BTreeSet::new();
    for family in 0u64..(1u64 << subsets) {
        let members: Vec<u64> = (0..subsets as u64)
            .filter(|&s| family >> s & 1 == 1)
            .collect();
        let contains = |s: u64| family >> s & 1 == 1;
        if !contains(0) || !contains(full) {
            continue;
        }
        let closed = members
            .iter()
            .all(|&a| members.iter().all(|&b| contains(a | b) && contains(a & b)));
        if closed {
            out.insert(members);
        }
    }
    out
}

fn masks(t: &FinTopology) -> Vec<u64> {
    let mut v: Vec<u64> = t.opens().iter().map(|u| u.bits().unwrap()).collect();
    v.sort_unstable();
    v
}

#[test]
fn criterion_01_sen_census() {
    let started = Instant::now();
    let report = with_threads(Some(1), || census_sen(4)).unwrap().unwrap();
    let elapsed = started.elapsed();

    // Naive re-check of the three clauses on every relation.
    let n = 4;
    let mut naive_failures = 0u64;
    for r in 0u64..1 << 16 {
        let (p, i) = (strict(r, n), indifference(r, n));
        let a = !(complete(r, n) && semi_transitive(r, n)) || transitive(i, n);
        let b = !transitive(complement(p, n), n) || (transitive(p, n) && semi_transitive(r, n));
        let c = transitive(r, n) == (semi_transitive(r, n) && transitive(p, n) && transitive(i, n));
        if !(a && b && c) {
            naive_failures += 1;
        }
    }
    let passed = report.count("relations") == 65_536
        && report.passed()
        && naive_failures == 0
        && elapsed < SEN_LIMIT;
    line(
        1,
        "Sen lemma on every relation with n = 4",
        passed,
        &format!(
            "{} relations, {} violations, naive oracle {} failures, {:.2} s single-threaded (limit {} s)",
            report.count("relations"),
            report.violations.len(),
            naive_failures,
            elapsed.as_secs_f64(),
            SEN_LIMIT.as_secs()
        ),
    );
    assert!(passed);
}

#[test]
fn criterion_02_connectedness_equivalence() {
    let expected = [1usize, 4, 29];
    let started = Instant::now();
    let mut details = Vec::new();
    let mut passed = true;
    for n in 1..=3 {
        let report = census_theorem2(n, &CensusConfig::default()).unwrap();
        let enumerated: BTreeSet<Vec<u64>> = enumerate_topologies(carrier(n))
            .unwrap()
            .iter()
            .map(masks)
            .collect();
        let brute = brute_force_topologies(n);
        let preorders = bipref::topology::enumerate_preorders_bounded(carrier(n), 4).unwrap();
        let from_preorders: BTreeSet<Vec<u64>> = preorders
            .iter()
            .map(|p| masks(&FinTopology::from_preorder(p)))
            .collect();
        let exact = report
            .topologies
            .iter()
            .all(|v| v.connected == v.diagonal_ok && v.diagonal_ok == v.general_ok);
        let ok = report.passed()
            && exact
            && report.topologies.len() == expected[n - 1]
            && enumerated.len() == expected[n - 1]
            && brute == enumerated
            && from_preorders == enumerated
            && preorders.len() == expected[n - 1];
        passed &= ok;
        details.push(format!(
            "n={n}: {} topologies (brute force {}, preorders {}), {} members, {} violations",
            report.topologies.len(),
            brute.len(),
            preorders.len(),
            report.count("members"),
            report.violations.len()
        ));
    }
    let elapsed = started.elapsed();
    passed &= elapsed < THEOREM2_LIMIT;
    details.push(format!(
        "{:.2} s (limit {} s)",
        elapsed.as_secs_f64(),
        THEOREM2_LIMIT.as_secs()
    ));
    line(
        2,
        "connected <=> (b) <=> (c) on every topology, n <= 3",
        passed,
        &details.join("; "),
    );
    assert!(passed);
}

#[test]
fn criterion_03_disconnected_witness() {
    let o = bipref(&[
        "--format",
        "json",
        "search",
        "--drop",
        "connectedness",
        "--n",
        "2",
    ]);
    let exit_ok = o.status.code() == Some(0);
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let n = json["witness"]["n"].as_u64().unwrap() as usize;
    let opens: BTreeSet<Vec<u64>> = json["witness"]["topology"]["opens"]
        .as_array()
        .unwrap()
        .iter()
        .map(|u| {
            u.as_array()
                .unwrap()
                .iter()
                .map(|x| x.as_u64().unwrap())
                .collect()
        })
        .collect();
    let pairs: Vec<(usize, usize)> = json["witness"]["relation"]["pairs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| {
            (
                p[0].as_u64().unwrap() as usize,
                p[1].as_u64().unwrap() as usize,
            )
        })
        .collect();
    let discrete: BTreeSet<Vec<u64>> = [vec![], vec![0], vec![1], vec![0, 1]].into_iter().collect();
    let shape = n == 2 && opens == discrete && pairs == [(0, 1)];

    // From-scratch check: every set is open and closed in the discrete
    // topology, so continuity holds; non-trivial via (0, 1); semi-transitive
    // because the indifference part is empty; incomplete at (0, 0).
    let r = 1u64 << 1;
    let independent =
        strict(r, 2) != 0 && semi_transitive(r, 2) && !complete(r, 2) && !has(r, 2, 0, 0);

    let t = FinTopology::discrete(carrier(2));
    let rel = FinRelation::from_pairs(carrier(2), [(0, 1)]).unwrap();
    let in_class = membership_R(&BiRelation::diagonal(rel.clone()), &t).unwrap();
    let revalidated = json["revalidation"] == "passed";
    let core_check =
        match bipref::harness::necessity_search(bipref::Hypothesis::Connectedness, 2).unwrap() {
            NecessityOutcome::Found { witness } => {
                validate_witness(&witness).is_ok() && witness.relation == rel
            }
            NecessityOutcome::NoneFound { .. } => false,
        };
    let passed = exit_ok
        && shape
        && independent
        && in_class
        && revalidated
        && core_check
        && !t.is_connected();
    line(
        3,
        "discrete n = 2 witness {(0,1)} is in the class and incomplete",
        passed,
        &format!(
            "exit {:?}, witness shape {shape}, independent re-check {independent}, class membership {in_class}, CLI re-validation {revalidated}",
            o.status.code()
        ),
    );
    assert!(passed);
}

#[test]
fn criterion_04_section_union_identity() {
    let report = census_claims(3).unwrap();
    let identity_violations = report
        .violations
        .iter()
        .filter(|v| v.topology.is_none())
        .count();
    let passed = identity_violations == 0 && report.count("identity_pairs") > 0;
    line(
        4,
        "section union identity at every strict soft pair, n = 3, no topology",
        passed,
        &format!(
            "{} class candidates, {} strict pairs checked, {} violations",
            report.count("class_candidates"),
            report.count("identity_pairs"),
            identity_violations
        ),
    );
    assert!(passed);
}

#[test]
fn criterion_05_eilenberg() {
    let mut passed = true;
    let mut details = Vec::new();
    for n in 1..=3 {
        let report = census_eilenberg(n).unwrap();

        // Oracle: every brute-force topology, every relation, sections of R
        // closed and sections of P open.
        let full = (1u64 << n) - 1;
        let mut oracle_continuous = 0u64;
        let mut oracle_violations = 0u64;
        for opens in brute_force_topologies(n) {
            let open = |s: u64| opens.contains(&s);
            let closed = |s: u64| open(!s & full);
            let connected = opens.iter().all(|&u| u == 0 || u == full || !closed(u));
            if !connected {
                continue;
            }
            for r in 0u64..1 << (n * n) {
                let antisymmetric =
                    indifference(r, n) == (0..n).fold(0, |s, x| s | 1 << (x * n + x)) & r;
                if !antisymmetric || !complete(r, n) {
                    continue;
                }
                let p = strict(r, n);
                let continuous = (0..n).all(|x| {
                    closed(upper(r, n, x))
                        && closed(lower(r, n, x))
                        && open(upper(p, n, x))
                        && open(lower(p, n, x))
                });
                if continuous {
                    oracle_continuous += 1;
                    if !transitive(r, n) {
                        oracle_violations += 1;
                    }
                }
            }
        }
        let ok = report.passed()
            && oracle_violations == 0
            && report.count("continuous_relations") == oracle_continuous;
        passed &= ok;
        details.push(format!(
            "n={n}: {} continuous (oracle {}), {} violations",
            report.count("continuous_relations"),
            oracle_continuous,
            report.violations.len()
        ));
    }
    line(
        5,
        "anti-symmetric complete continuous relations on connected topologies are transitive, n <= 3",
        passed,
        &details.join("; "),
    );
    assert!(passed);
}

#[test]
fn criterion_06_canonical_witnesses() {
    let mut passed = true;
    let mut details = Vec::new();
    for n in 1..=3 {
        let report = census_proposition1(n).unwrap();
        let ok = report.passed() && report.count("continuous_pairs") > 0;
        passed &= ok;
        details.push(format!(
            "n={n}: {} continuous (bi-relation, topology) pairs, {} violations",
            report.count("continuous_pairs"),
            report.violations.len()
        ));
    }
    line(
        6,
        "canonical witnesses are p-continuous and inherit connectedness, n <= 3",
        passed,
        &details.join("; "),
    );
    assert!(passed);
}

#[test]
fn criterion_07_randomized_p_continuity() {
    let report = theorem1_randomized(
        RANDOMIZED_TRIALS,
        RandomizedBounds::default(),
        RANDOMIZED_SEED,
    )
    .unwrap();
    let qualifying = report.count("qualifying");
    let passed = report.passed() && report.count("trials") == RANDOMIZED_TRIALS && qualifying > 0;
    line(
        7,
        "randomized draws at n <= 4: no violations among qualifying draws, qualifying > 0",
        passed,
        &format!(
            "{} trials (seed {RANDOMIZED_SEED}), {} p-continuous, {} connected families, {} qualifying, {} violations",
            report.count("trials"),
            report.count("p_continuous"),
            report.count("connected_family"),
            qualifying,
            report.violations.len()
        ),
    );
    assert!(passed);
}

fn check<'a>(outcome: &'a FixtureOutcome, name: &str) -> Option<&'a bipref::harness::FixtureCheck> {
    outcome.checks.iter().find(|c| c.name == name)
}

fn passed_check(outcome: &FixtureOutcome, name: &str) -> bool {
    check(outcome, name).is_some_and(|c| c.passed)
}

#[test]
fn criterion_08_example_one() {
    let grid = Grid::dyadic(EXAMPLE1_DEPTH).unwrap();
    let outcome = example_fixture(1, &grid).unwrap();
    let required = [
        "complete",
        "transitive",
        "f(1,1) = 1",
        "f(1,0) = 0",
        "f(0,0) = 1",
        "lower section of (1,0) along (0,0)-(1,0) is [0,1)",
        "closedness refuted at lambda = 1",
        "mixture-continuity refuted",
        "path: f = 1 on the diagonal leg",
        "path: anti-diagonal leg follows 2l(1-l)/(l^2+(1-l)^2)",
        "path: f = 1 at lambda = 1/2",
        "path: f = 0 at lambda = 1",
    ];
    let missing: Vec<&str> = required
        .iter()
        .copied()
        .filter(|n| !passed_check(&outcome, n))
        .collect();

    // Half-open profile: constant membership except at the far endpoint.
    let pattern = check(
        &outcome,
        "lower section of (1,0) along (0,0)-(1,0) is [0,1)",
    )
    .and_then(|c| c.detail.rsplit(' ').next())
    .unwrap_or("");
    let flips = pattern
        .as_bytes()
        .windows(2)
        .filter(|w| w[0] != w[1])
        .count();
    let half_open = pattern.len() == grid.len() && flips == 1 && pattern.ends_with("10");

    let passed = missing.is_empty() && half_open && outcome.passed() && grid.len() == 65;
    line(
        8,
        "example 1 on the dyadic grid of depth 6",
        passed,
        &format!(
            "{} grid points, {} carrier points, {} checks, missing or failed {:?}, half-open profile {half_open}",
            outcome.grid_points,
            outcome.carrier_points,
            outcome.checks.len(),
            missing
        ),
    );
    assert!(passed);
}

#[test]
fn criterion_09_example_three() {
    let d = EXAMPLE3_DENOMINATOR as usize;
    let grid = Grid::uniform(EXAMPLE3_DENOMINATOR).unwrap();
    let outcome = example_fixture(3, &grid).unwrap();
    let required = [
        "reflexive",
        "anti-symmetric",
        "semi-transitive",
        "not transitive at ((1/4,1/2),(1/2,3/4))",
        "R(1/2) = grid from 1/2 to 1",
        "R^-1(1/2) = grid from 0 to 1/2",
        "P(1/4) = grid in (1/4, 1/2]",
    ];
    let missing: Vec<&str> = required
        .iter()
        .copied()
        .filter(|n| !passed_check(&outcome, n))
        .collect();

    // Integer oracle on i/100.
    let (h, q, t) = (d / 2, d / 4, 3 * d / 4);
    let rel = |x: usize, y: usize| (x <= h && x <= y && y <= h) || (x >= h && y >= x);
    let pts = 0..=d;
    let reflexive = pts.clone().all(|x| rel(x, x));
    let antisymmetric = pts
        .clone()
        .all(|x| pts.clone().all(|y| x == y || !(rel(x, y) && rel(y, x))));
    let strict = |x: usize, y: usize| rel(x, y) && !rel(y, x);
    let indiff = |x: usize, y: usize| rel(x, y) && rel(y, x);
    let semi = pts.clone().all(|x| {
        pts.clone().all(|y| {
            pts.clone().all(|z| {
                !((indiff(x, y) && strict(y, z)) || (strict(x, y) && indiff(y, z))) || strict(x, z)
            })
        })
    });
    let witness = rel(q, h) && rel(h, t) && !rel(q, t);
    let upper_half: Vec<usize> = pts.clone().filter(|&y| rel(h, y)).collect();
    let lower_half: Vec<usize> = pts.clone().filter(|&x| rel(x, h)).collect();
    let p_quarter: Vec<usize> = pts.clone().filter(|&y| strict(q, y)).collect();
    let oracle = reflexive
        && antisymmetric
        && semi
        && witness
        && upper_half == (h..=d).collect::<Vec<_>>()
        && lower_half == (0..=h).collect::<Vec<_>>()
        && p_quarter == (q + 1..=h).collect::<Vec<_>>();

    let cli = bipref(&["example", "3", "--grid", "100"]).status.code() == Some(0);
    let passed = missing.is_empty()
        && outcome.passed()
        && oracle
        && cli
        && passed_check(&outcome, "incomplete");
    line(
        9,
        "example 3 on the grid of hundredths",
        passed,
        &format!(
            "{} points, missing or failed {:?}, integer oracle {oracle}, CLI exit 0 {cli}",
            outcome.grid_points, missing
        ),
    );
    assert!(passed);
}

#[test]
fn criterion_10_determinism_across_parallelism() {
    let runs: [&[&str]; 8] = [
        &["census", "--theorem", "2", "--n", "3"],
        &[
            "census",
            "--theorem",
            "2",
            "--n",
            "4",
            "--sampled",
            "--draws",
            "300",
            "--seed",
            "5",
        ],
        &["census", "--theorem", "1", "--n", "3"],
        &["census", "--theorem", "claims", "--n", "3"],
        &["census", "--theorem", "eilenberg", "--n", "3"],
        &["census", "--theorem", "prop1", "--n", "3"],
        &["census", "--theorem", "sen", "--n", "4"],
        &[
            "census",
            "--theorem",
            "1",
            "--randomized",
            "--trials",
            "500",
            "--seed",
            "3",
        ],
    ];
    let mut mismatches = Vec::new();
    let mut compared = 0;
    for args in runs {
        for format in ["text", "json", "csv"] {
            let outputs: Vec<Vec<u8>> = ["1", "2", "3"]
                .iter()
                .map(|threads| {
                    let mut full = vec!["--format", format, "--threads", threads];
                    full.extend_from_slice(args);
                    let o = bipref(&full);
                    assert!(o.status.code().is_some_and(|c| c <= 1), "{full:?}");
                    o.stdout
                })
                .collect();
            compared += 1;
            if outputs.iter().any(|o| *o != outputs[0] || o.is_empty()) {
                mismatches.push(format!("{} ({format})", args.join(" ")));
            }
        }
    }
    let passed = mismatches.is_empty();
    line(
        10,
        "census reports are byte-identical for 1, 2 and 3 threads",
        passed,
        &format!("{compared} report formats compared, mismatches {mismatches:?}"),
    );
    assert!(passed);
}
