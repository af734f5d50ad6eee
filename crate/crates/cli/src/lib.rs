//! Argument parsing, validation and dispatch for the `bipref` binary.
//!
//! [`parse_args`] turns argv into a validated [`Command`]; [`run`] executes it
//! and writes the report. Exit codes: 0 when every assertion in scope holds,
//! 1 when one fails, 2 for usage or input errors.

mod render;

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use bipref::harness::{
    census_claims, census_eilenberg, census_proposition1, census_sen, census_theorem1_canonical,
    census_theorem2, example_fixture, membership_R, necessity_search, theorem1_randomized,
    validate_witness, with_threads, CENSUS_LIMIT, EXHAUSTIVE_LIMIT,
};
use bipref::io::{parse_birelation, parse_relation, parse_topology, parse_witness_family};
use bipref::mixture::FixtureSpec;
use bipref::topology::enumerate_preorders_bounded;
use bipref::{
    enumerate_birelations, enumerate_relations, enumerate_topologies, is_continuous,
    is_p_continuous, tau_of, BiRelation, Carrier, CensusConfig, FinTopology, Grid, Hypothesis,
    RandomizedBounds, Rational, Sampling,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

pub use render::Format;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or flag combinations.
    Usage(String),
    /// Unreadable or malformed input, or a precondition rejected by the core.
    Input(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        EXIT_USAGE
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Input(m) => write!(f, "input error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<bipref::Error> for CliError {
    fn from(e: bipref::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Debug, Parser)]
#[command(
    name = "bipref",
    version,
    about = "Exact checks and censuses for finite bi-relations and topologies"
)]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads for censuses (default: all available).
    #[arg(long, env = "BIPREF_THREADS", global = true)]
    threads: Option<usize>,
    /// Print the elapsed time to standard error.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    verb: VerbArgs,
}

#[derive(Debug, Subcommand)]
enum VerbArgs {
    /// Property checks on relation, bi-relation, topology, witness or fixture files.
    Check(CheckArgs),
    /// Run a census.
    Census(CensusArgs),
    /// Search for a counterexample with one hypothesis dropped.
    Search(SearchArgs),
    /// Run a worked example on a rational grid.
    Example(ExampleArgs),
    /// List or count small structures.
    Enumerate(EnumerateArgs),
}

#[derive(Debug, Args)]
struct CheckArgs {
    /// Relation file (0/1 rows or JSON pairs).
    #[arg(long, conflicts_with = "birelation")]
    relation: Option<PathBuf>,
    /// Bi-relation file (hard block, blank line, soft block, or JSON).
    #[arg(long)]
    birelation: Option<PathBuf>,
    /// Topology file (one open set per line, or JSON).
    #[arg(long)]
    topology: Option<PathBuf>,
    /// Witness family JSON for the bi-relation.
    #[arg(long, requires = "birelation")]
    witnesses: Option<PathBuf>,
    /// Scalar-continuity fixture JSON.
    #[arg(long, conflicts_with_all = ["relation", "birelation", "topology"])]
    fixture: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Theorem {
    /// Canonical-witness census of the class on connected topologies.
    #[value(name = "1")]
    One,
    /// Connectedness equivalence census.
    #[value(name = "2")]
    Two,
    /// Anti-symmetric complete continuous relations on connected topologies.
    Eilenberg,
    /// Section union identity and strict-section cover claims.
    Claims,
    /// Sen's lemma on every relation.
    Sen,
    /// Canonical witnesses of continuous bi-relations.
    Prop1,
}

impl Theorem {
    fn name(self) -> &'static str {
        match self {
            Theorem::One => "1",
            Theorem::Two => "2",
            Theorem::Eilenberg => "eilenberg",
            Theorem::Claims => "claims",
            Theorem::Sen => "sen",
            Theorem::Prop1 => "prop1",
        }
    }

    fn max_n(self) -> usize {
        match self {
            Theorem::One | Theorem::Claims | Theorem::Prop1 => EXHAUSTIVE_LIMIT,
            Theorem::Two | Theorem::Eilenberg | Theorem::Sen => CENSUS_LIMIT,
        }
    }
}

#[derive(Debug, Args)]
struct CensusArgs {
    #[arg(long, value_enum, default_value_t = Theorem::Two)]
    theorem: Theorem,
    /// Carrier size (largest carrier for the randomized run).
    #[arg(long)]
    n: Option<usize>,
    /// Enumerate everything, even above n = 3 (theorem 2 only).
    #[arg(long, conflicts_with = "sampled")]
    exhaustive: bool,
    /// Seeded sampling instead of full enumeration (theorem 2 only).
    #[arg(long)]
    sampled: bool,
    /// Draws in sampled mode.
    #[arg(long, requires = "sampled")]
    draws: Option<u64>,
    /// Seed for sampled and randomized runs.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Randomized p-continuity run (theorem 1 only).
    #[arg(long, conflicts_with_all = ["exhaustive", "sampled"])]
    randomized: bool,
    /// Draws in the randomized run.
    #[arg(long, requires = "randomized")]
    trials: Option<u64>,
    /// Largest parameter space in randomized witness families.
    #[arg(long, requires = "randomized")]
    max_witness: Option<usize>,
    /// Process the enumeration in a seeded random order.
    #[arg(long)]
    shuffle: Option<u64>,
}

#[derive(Debug, Args)]
struct SearchArgs {
    /// connectedness, semi-transitivity, symmetric-part-transitivity or continuity.
    #[arg(long = "drop")]
    dropped: Hypothesis,
    /// Largest carrier searched.
    #[arg(long, default_value_t = 3)]
    n: usize,
}

#[derive(Debug, Args)]
struct ExampleArgs {
    /// Example 1, 2 or 3.
    id: u8,
    /// Uniform grid with spacing 1/N.
    #[arg(long, conflicts_with = "depth")]
    grid: Option<u32>,
    /// Dyadic grid with spacing 2^-D.
    #[arg(long)]
    depth: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Structure {
    Topologies,
    Preorders,
    Relations,
    Birelations,
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    #[arg(value_enum)]
    kind: Structure,
    #[arg(long)]
    n: usize,
    /// Print only the number of structures.
    #[arg(long)]
    count: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GridSpec {
    Uniform(u32),
    Dyadic(u32),
}

impl GridSpec {
    pub fn build(&self) -> bipref::Result<Grid> {
        match *self {
            GridSpec::Uniform(d) => Grid::uniform(d),
            GridSpec::Dyadic(d) => Grid::dyadic(d),
        }
    }

    fn flag(&self) -> String {
        match self {
            GridSpec::Uniform(d) => format!("--grid {d}"),
            GridSpec::Dyadic(d) => format!("--depth {d}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CensusKind {
    Standard {
        theorem: Theorem,
        config: CensusConfigSpec,
    },
    Randomized {
        trials: u64,
        bounds: RandomizedBounds,
        seed: u64,
    },
}

/// Mirror of the core census configuration with equality for tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusConfigSpec {
    pub sampling: Sampling,
    pub seed: u64,
    pub shuffle: Option<u64>,
}

impl From<CensusConfigSpec> for CensusConfig {
    fn from(c: CensusConfigSpec) -> Self {
        CensusConfig {
            sampling: c.sampling,
            seed: c.seed,
            shuffle: c.shuffle,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verb {
    Check {
        relation: Option<PathBuf>,
        birelation: Option<PathBuf>,
        topology: Option<PathBuf>,
        witnesses: Option<PathBuf>,
        fixture: Option<PathBuf>,
    },
    Census {
        n: usize,
        kind: CensusKind,
    },
    Search {
        dropped: Hypothesis,
        n: usize,
    },
    Example {
        id: u8,
        grid: GridSpec,
    },
    Enumerate {
        kind: Structure,
        n: usize,
        count: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Command {
    pub verb: Verb,
    pub format: Format,
    pub threads: Option<usize>,
    pub timings: bool,
}

pub const DEFAULT_DRAWS: u64 = 2000;
pub const DEFAULT_TRIALS: u64 = 10_000;

/// Parses and validates argv (including the program name). Help and version
/// requests come back as `Usage` errors carrying the rendered text.
pub fn parse_args<I, T>(argv: I) -> Result<Command, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| CliError::Usage(e.to_string()))?;
    if cli.threads == Some(0) {
        return Err(usage("--threads must be at least 1"));
    }
    let verb = match cli.verb {
        VerbArgs::Check(a) => validate_check(a)?,
        VerbArgs::Census(a) => validate_census(a)?,
        VerbArgs::Search(a) => {
            check_n("--n", a.n, CENSUS_LIMIT)?;
            Verb::Search {
                dropped: a.dropped,
                n: a.n,
            }
        }
        VerbArgs::Example(a) => validate_example(a)?,
        VerbArgs::Enumerate(a) => {
            check_n("--n", a.n, CENSUS_LIMIT)?;
            if a.kind == Structure::Birelations && a.n > EXHAUSTIVE_LIMIT && !a.count {
                return Err(usage(format!(
                    "listing bi-relations is limited to --n {EXHAUSTIVE_LIMIT}; use --count for larger carriers"
                )));
            }
            Verb::Enumerate {
                kind: a.kind,
                n: a.n,
                count: a.count,
            }
        }
    };
    Ok(Command {
        verb,
        format: cli.format,
        threads: cli.threads,
        timings: cli.timings,
    })
}

fn check_n(flag: &str, n: usize, limit: usize) -> Result<(), CliError> {
    check_n_for(flag, n, limit, "")
}

fn check_n_for(flag: &str, n: usize, limit: usize, context: &str) -> Result<(), CliError> {
    if n == 0 {
        return Err(usage(format!("{flag} must be at least 1")));
    }
    if n > CENSUS_LIMIT {
        return Err(usage(format!(
            "exhaustive bound exceeded: {flag} {n} is larger than {CENSUS_LIMIT}"
        )));
    }
    if n > limit {
        return Err(usage(format!(
            "exhaustive bound exceeded: {flag} {n} is larger than {limit}{context}"
        )));
    }
    Ok(())
}

fn validate_check(a: CheckArgs) -> Result<Verb, CliError> {
    if a.relation.is_none() && a.birelation.is_none() && a.topology.is_none() && a.fixture.is_none()
    {
        return Err(usage(
            "check needs at least one of --relation, --birelation, --topology, --fixture",
        ));
    }
    Ok(Verb::Check {
        relation: a.relation,
        birelation: a.birelation,
        topology: a.topology,
        witnesses: a.witnesses,
        fixture: a.fixture,
    })
}

fn validate_census(a: CensusArgs) -> Result<Verb, CliError> {
    if a.randomized {
        if a.theorem != Theorem::One {
            return Err(usage("--randomized applies only to --theorem 1"));
        }
        if a.shuffle.is_some() {
            return Err(usage("--shuffle does not apply to --randomized"));
        }
        let defaults = RandomizedBounds::default();
        let n = a.n.unwrap_or(defaults.max_n);
        check_n("--n", n, CENSUS_LIMIT)?;
        let max_witness = a.max_witness.unwrap_or(defaults.max_witness_size);
        if max_witness == 0 {
            return Err(usage("--max-witness must be at least 1"));
        }
        return Ok(Verb::Census {
            n,
            kind: CensusKind::Randomized {
                trials: a.trials.unwrap_or(DEFAULT_TRIALS),
                bounds: RandomizedBounds {
                    max_n: n,
                    max_witness_size: max_witness,
                },
                seed: a.seed,
            },
        });
    }
    let n = a.n.unwrap_or(EXHAUSTIVE_LIMIT);
    check_n_for(
        "--n",
        n,
        a.theorem.max_n(),
        &format!(" for --theorem {}", a.theorem.name()),
    )?;
    let sampling = match (a.exhaustive, a.sampled) {
        (true, _) => Sampling::Exhaustive,
        (_, true) => Sampling::Sampled {
            draws: a.draws.unwrap_or(DEFAULT_DRAWS),
        },
        _ => Sampling::Auto,
    };
    if sampling != Sampling::Auto && a.theorem != Theorem::Two {
        return Err(usage(
            "--exhaustive and --sampled apply only to --theorem 2",
        ));
    }
    if a.theorem == Theorem::Two && n > EXHAUSTIVE_LIMIT && sampling == Sampling::Auto {
        return Err(usage(format!(
            "--theorem 2 with --n {n} needs --sampled or --exhaustive"
        )));
    }
    Ok(Verb::Census {
        n,
        kind: CensusKind::Standard {
            theorem: a.theorem,
            config: CensusConfigSpec {
                sampling,
                seed: a.seed,
                shuffle: a.shuffle,
            },
        },
    })
}

fn validate_example(a: ExampleArgs) -> Result<Verb, CliError> {
    let (breakpoints, default): (&[(i64, i64)], GridSpec) = match a.id {
        1 => (&[(1, 2)], GridSpec::Dyadic(6)),
        2 => (&[], GridSpec::Uniform(4)),
        3 => (&[(1, 4), (1, 2), (3, 4)], GridSpec::Uniform(100)),
        other => {
            return Err(usage(format!(
                "unknown example {other}; expected 1, 2 or 3"
            )))
        }
    };
    let grid = match (a.grid, a.depth) {
        (Some(d), _) => GridSpec::Uniform(d),
        (_, Some(d)) => {
            if d < 2 {
                return Err(usage("--depth must be at least 2"));
            }
            GridSpec::Dyadic(d)
        }
        _ => default,
    };
    let built = grid
        .build()
        .map_err(|e| usage(format!("{}: {e}", grid.flag())))?;
    if built.len() < 3 {
        return Err(usage(format!(
            "{}: the grid needs an interior point",
            grid.flag()
        )));
    }
    for &(p, q) in breakpoints {
        let b = Rational::new(p, q);
        if !built.contains(&b) {
            return Err(usage(format!(
                "{}: grid too coarse, example {} needs the point {b}",
                grid.flag(),
                a.id
            )));
        }
    }
    Ok(Verb::Example { id: a.id, grid })
}

/// Executes a validated command, writing the report to `out`. Returns whether
/// every assertion in scope passed.
pub fn run(cmd: &Command, out: &mut dyn Write) -> Result<bool, CliError> {
    let started = Instant::now();
    let format = cmd.format;
    let verb = cmd.verb.clone();
    let (text, passed) = with_threads(cmd.threads, move || dispatch(&verb, format))??;
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| CliError::Input(format!("writing report: {e}")))?;
    if cmd.timings {
        eprintln!("elapsed: {:.3} s", started.elapsed().as_secs_f64());
    }
    Ok(passed)
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn in_file<T>(path: &Path, r: bipref::Result<T>) -> Result<T, CliError> {
    r.map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn dispatch(verb: &Verb, format: Format) -> Result<(String, bool), CliError> {
    match verb {
        Verb::Check {
            relation,
            birelation,
            topology,
            witnesses,
            fixture,
        } => check(
            relation.as_deref(),
            birelation.as_deref(),
            topology.as_deref(),
            witnesses.as_deref(),
            fixture.as_deref(),
            format,
        ),
        Verb::Census { n, kind } => {
            let report = match kind {
                CensusKind::Standard { theorem, config } => match theorem {
                    Theorem::One => census_theorem1_canonical(*n)?,
                    Theorem::Two => census_theorem2(*n, &(*config).into())?,
                    Theorem::Eilenberg => census_eilenberg(*n)?,
                    Theorem::Claims => census_claims(*n)?,
                    Theorem::Sen => census_sen(*n)?,
                    Theorem::Prop1 => census_proposition1(*n)?,
                },
                CensusKind::Randomized {
                    trials,
                    bounds,
                    seed,
                } => theorem1_randomized(*trials, *bounds, *seed)?,
            };
            Ok((render::census(&report, format)?, report.passed()))
        }
        Verb::Search { dropped, n } => {
            let outcome = necessity_search(*dropped, *n)?;
            let validation = match &outcome {
                bipref::NecessityOutcome::Found { witness } => Some(validate_witness(witness)),
                bipref::NecessityOutcome::NoneFound { .. } => None,
            };
            let passed = !matches!(validation, Some(Err(_)));
            Ok((
                render::search(&outcome, validation.as_ref(), format)?,
                passed,
            ))
        }
        Verb::Example { id, grid } => {
            let outcome = example_fixture(*id, &grid.build()?)?;
            Ok((render::fixture(&outcome, format)?, outcome.passed()))
        }
        Verb::Enumerate { kind, n, count } => {
            enumerate(*kind, *n, *count, format).map(|s| (s, true))
        }
    }
}

fn check(
    relation: Option<&Path>,
    birelation: Option<&Path>,
    topology: Option<&Path>,
    witnesses: Option<&Path>,
    fixture: Option<&Path>,
    format: Format,
) -> Result<(String, bool), CliError> {
    let mut report = render::CheckReport::default();
    let relation = relation
        .map(|p| read(p).and_then(|t| in_file(p, parse_relation(&t))))
        .transpose()?;
    let birelation = birelation
        .map(|p| read(p).and_then(|t| in_file(p, parse_birelation(&t))))
        .transpose()?;
    let topology = topology
        .map(|p| read(p).and_then(|t| in_file(p, parse_topology(&t))))
        .transpose()?;
    if let Some(r) = &relation {
        report.relation = Some(render::RelationSection::of(r));
    }
    if let Some(b) = &birelation {
        report.birelation = Some(render::BiSection::of(b));
    }
    if let Some(t) = &topology {
        report.topology = Some(render::TopologySection::of(t));
        let subject = match (&relation, &birelation) {
            (Some(r), _) => Some(BiRelation::diagonal(r.clone())),
            (_, Some(b)) => Some(b.clone()),
            _ => None,
        };
        if let Some(b) = subject {
            report.membership = Some(membership(&b, t)?);
        }
    }
    if let (Some(p), Some(b)) = (witnesses, &birelation) {
        let family = in_file(p, parse_witness_family(&read(p)?))?;
        let verdict = is_p_continuous(b, &family)?;
        report.witnesses = Some(render::WitnessSection {
            connected: family.is_connected(),
            p_continuity: verdict,
        });
    }
    if let Some(p) = fixture {
        let spec: FixtureSpec = in_file(
            p,
            serde_json::from_str(&read(p)?).map_err(bipref::Error::from),
        )?;
        report.fixture = Some(spec.run()?);
    }
    Ok((render::check(&report, format)?, true))
}

fn membership(b: &BiRelation, t: &FinTopology) -> Result<render::MembershipSection, CliError> {
    if b.len() != t.len() {
        return Err(CliError::Input(format!(
            "carrier mismatch: {} elements in the relation, {} in the topology",
            b.len(),
            t.len()
        )));
    }
    let continuous = is_continuous(b, t)?;
    Ok(render::MembershipSection {
        continuous,
        generated_topology: tau_of(b).to_compact_string(),
        in_class: membership_R(b, t)?,
    })
}

fn enumerate(kind: Structure, n: usize, count: bool, format: Format) -> Result<String, CliError> {
    let carrier = Carrier::new(n)?;
    let items: Box<dyn Iterator<Item = render::Item>> = match kind {
        Structure::Topologies => Box::new(
            enumerate_topologies(carrier)?
                .into_iter()
                .map(render::Item::Topology),
        ),
        Structure::Preorders => Box::new(
            enumerate_preorders_bounded(carrier, CENSUS_LIMIT)?
                .into_iter()
                .map(|p| render::Item::Relation(p.into_relation())),
        ),
        Structure::Relations => Box::new(enumerate_relations(carrier)?.map(render::Item::Relation)),
        Structure::Birelations if count => {
            let total = bipref::birelation::enumerate_birelation_bits(carrier)?.count();
            return render::count(kind_name(kind), n, total as u64, format);
        }
        Structure::Birelations => {
            Box::new(enumerate_birelations(carrier)?.map(render::Item::BiRelation))
        }
    };
    if count {
        return render::count(kind_name(kind), n, items.count() as u64, format);
    }
    render::items(kind_name(kind), n, items, format)
}

fn kind_name(kind: Structure) -> &'static str {
    match kind {
        Structure::Topologies => "topologies",
        Structure::Preorders => "preorders",
        Structure::Relations => "relations",
        Structure::Birelations => "birelations",
    }
}

/// Parses argv, runs the command and maps the outcome to an exit code,
/// printing errors to standard error.
pub fn main_with<I, T>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    match Cli::try_parse_from(&argv) {
        Err(e)
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) =>
        {
            let _ = write!(out, "{e}");
            return EXIT_PASS;
        }
        _ => {}
    }
    let result = parse_args(argv).and_then(|cmd| run(&cmd, out));
    match result {
        Ok(true) => EXIT_PASS,
        Ok(false) => EXIT_VIOLATION,
        Err(e) => {
            match &e {
                CliError::Usage(m) if m.starts_with("error:") => eprint!("{m}"),
                _ => eprintln!("bipref: {e}"),
            }
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn argv(line: &str) -> Vec<&str> {
        std::iter::once("bipref")
            .chain(line.split_whitespace())
            .collect()
    }

    fn usage_message(line: &str) -> String {
        match parse_args(argv(line)) {
            Err(CliError::Usage(m)) => m,
            other => panic!("{line:?} parsed as {other:?}"),
        }
    }

    #[test]
    fn census_arguments_parse() {
        let cmd = parse_args(argv("census --theorem 2 --n 3")).unwrap();
        assert_eq!(
            cmd.verb,
            Verb::Census {
                n: 3,
                kind: CensusKind::Standard {
                    theorem: Theorem::Two,
                    config: CensusConfigSpec {
                        sampling: Sampling::Auto,
                        seed: 0,
                        shuffle: None
                    }
                }
            }
        );
        let sampled = parse_args(argv("census --n 4 --sampled --draws 50 --seed 3")).unwrap();
        assert!(matches!(
            sampled.verb,
            Verb::Census {
                n: 4,
                kind: CensusKind::Standard {
                    config: CensusConfigSpec {
                        sampling: Sampling::Sampled { draws: 50 },
                        seed: 3,
                        ..
                    },
                    ..
                }
            }
        ));
    }

    #[test]
    fn check_paths_are_bound() {
        let cmd = parse_args(argv("check --relation r.txt --topology t.txt")).unwrap();
        match cmd.verb {
            Verb::Check {
                relation,
                topology,
                birelation,
                ..
            } => {
                assert_eq!(relation.unwrap().to_str(), Some("r.txt"));
                assert_eq!(topology.unwrap().to_str(), Some("t.txt"));
                assert!(birelation.is_none());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn invalid_combinations_are_rejected_before_running() {
        assert!(usage_message("census --n 9").contains("exhaustive bound exceeded"));
        assert!(usage_message("census --theorem 1 --n 4").contains("--theorem 1"));
        assert!(usage_message("census --n 4").contains("--sampled or --exhaustive"));
        assert!(usage_message("census --exhaustive --sampled").contains("--sampled"));
        assert!(usage_message("census --theorem sen --sampled").contains("--theorem 2"));
        assert!(usage_message("census --theorem 2 --randomized").contains("--theorem 1"));
        assert!(usage_message("census --draws 5").contains("--sampled"));
        assert!(usage_message("frobnicate").contains("frobnicate"));
        assert!(usage_message("search --drop nothing").contains("nothing"));
        assert!(usage_message("search --drop continuity --n 5").contains("--n 5"));
        assert!(usage_message("example 4").contains("unknown example"));
        assert!(usage_message("example 3 --grid 10").contains("--grid 10"));
        assert!(usage_message("example 1 --depth 1").contains("--depth"));
        assert!(usage_message("example 1 --grid 4 --depth 3").contains("--depth"));
        assert!(usage_message("check").contains("--relation"));
        assert!(usage_message("check --witnesses w.json").contains("--birelation"));
        assert!(usage_message("enumerate birelations --n 4").contains("--count"));
        assert!(usage_message("--threads 0 census").contains("--threads"));
    }

    #[test]
    fn accepted_variants_parse() {
        assert!(parse_args(argv("census --n 4 --exhaustive")).is_ok());
        assert!(parse_args(argv("census --theorem sen --n 4")).is_ok());
        assert!(parse_args(argv(
            "census --theorem 1 --randomized --trials 10 --max-witness 2"
        ))
        .is_ok());
        assert!(parse_args(argv("search --drop symmetric_part_transitivity --n 2")).is_ok());
        let ex = parse_args(argv("example 1")).unwrap();
        assert_eq!(
            ex.verb,
            Verb::Example {
                id: 1,
                grid: GridSpec::Dyadic(6)
            }
        );
        let ex = parse_args(argv("example 3 --grid 8")).unwrap();
        assert_eq!(
            ex.verb,
            Verb::Example {
                id: 3,
                grid: GridSpec::Uniform(8)
            }
        );
        let s = parse_args(argv("search --drop semi-transitivity")).unwrap();
        assert_eq!(
            s.verb,
            Verb::Search {
                dropped: Hypothesis::SemiTransitivity,
                n: 3
            }
        );
    }
}
