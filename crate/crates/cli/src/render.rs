//! Report rendering in text, JSON and CSV.

use std::fmt::Write as _;

use bipref::harness::{Conclusion, FixtureOutcome, NecessityOutcome};
use bipref::mixture::{Archimedean, ClauseVerdict, FixtureReport};
use bipref::relation::SenReport;
use bipref::{
    BiRelation, CensusReport, FinRelation, FinTopology, Mode, PContinuity, PropertyRecord,
    SemiTransitivity, Subset, Verdict,
};
use clap::ValueEnum;
use serde::Serialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

fn json<T: Serialize + ?Sized>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Input(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

struct Csv(csv::Writer<Vec<u8>>);

impl Csv {
    fn new() -> Self {
        Csv(csv::Writer::from_writer(Vec::new()))
    }

    fn row<I, T>(&mut self, fields: I) -> Result<(), CliError>
    where
        I: IntoIterator<Item = T>,
        T: AsRef<[u8]>,
    {
        self.0.write_record(fields).map_err(csv_error)
    }

    fn record<T: Serialize>(&mut self, value: &T) -> Result<(), CliError> {
        self.0.serialize(value).map_err(csv_error)
    }

    fn finish(self) -> Result<String, CliError> {
        let bytes = self
            .0
            .into_inner()
            .map_err(|e| CliError::Input(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| CliError::Input(e.to_string()))
    }
}

fn csv_error(e: csv::Error) -> CliError {
    CliError::Input(format!("csv: {e}"))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn verdict_line(passed: bool) -> &'static str {
    if passed {
        "result: PASS\n"
    } else {
        "result: FAIL\n"
    }
}

fn mode_label(mode: &Mode) -> String {
    match mode {
        Mode::Exhaustive => "exhaustive".into(),
        Mode::Sampled { seed, draws } => format!("sampled (seed {seed}, {draws} draws)"),
        Mode::Randomized { seed, trials } => format!("randomized (seed {seed}, {trials} trials)"),
    }
}

pub fn census(report: &CensusReport, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => json(report),
        Format::Csv => {
            let mut w = Csv::new();
            if report.topologies.is_empty() {
                w.row(["census", "n", "key", "value"])?;
                let n = report.n.to_string();
                for (k, v) in &report.counts {
                    w.row([report.census, &n, k, &v.to_string()])?;
                }
                w.row([
                    report.census,
                    &n,
                    "violations",
                    &report.violations.len().to_string(),
                ])?;
            } else {
                for t in &report.topologies {
                    w.record(t)?;
                }
            }
            w.finish()
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "census: {}", report.census);
            let _ = writeln!(s, "n: {}", report.n);
            let _ = writeln!(s, "mode: {}", mode_label(&report.mode));
            s.push_str("counts:\n");
            let width = report.counts.keys().map(|k| k.len()).max().unwrap_or(0);
            for (k, v) in &report.counts {
                let _ = writeln!(s, "  {k:<width$}  {v}");
            }
            if !report.topologies.is_empty() {
                s.push_str("topologies:\n");
                let _ = writeln!(
                    s,
                    "  {:>5}  {:<9}  {:>8}  {:>8}  {:<8}  {:<7}  {:<5}  opens",
                    "index", "connected", "members", "diagonal", "diag_ok", "gen_ok", "holds"
                );
                for t in &report.topologies {
                    let _ = writeln!(
                        s,
                        "  {:>5}  {:<9}  {:>8}  {:>8}  {:<8}  {:<7}  {:<5}  {}",
                        t.index,
                        yes(t.connected),
                        t.members,
                        t.diagonal_members,
                        yes(t.diagonal_ok),
                        yes(t.general_ok),
                        yes(t.holds),
                        t.topology
                    );
                }
            }
            if report.violations.is_empty() {
                s.push_str("violations: none\n");
            } else {
                let _ = writeln!(s, "violations: {}", report.violations.len());
                for v in &report.violations {
                    match &v.topology {
                        Some(t) => {
                            let _ = writeln!(s, "  [{t}] {}: {}", v.subject, v.conclusion);
                        }
                        None => {
                            let _ = writeln!(s, "  {}: {}", v.subject, v.conclusion);
                        }
                    }
                }
            }
            s.push_str(verdict_line(report.passed()));
            Ok(s)
        }
    }
}

fn conclusion_label(c: &Conclusion) -> String {
    match c {
        Conclusion::Completeness { x, y } => format!("completeness fails at ({x},{y})"),
        Conclusion::Transitivity { x, y, z } => format!("transitivity fails at ({x},{y},{z})"),
    }
}

#[derive(Serialize)]
struct SearchJson<'a> {
    #[serde(flatten)]
    outcome: &'a NecessityOutcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    revalidation: Option<&'a str>,
}

pub fn search(
    outcome: &NecessityOutcome,
    validation: Option<&Result<(), String>>,
    format: Format,
) -> Result<String, CliError> {
    let revalidation = validation.map(|v| match v {
        Ok(()) => "passed".to_string(),
        Err(e) => format!("failed: {e}"),
    });
    match format {
        Format::Json => json(&SearchJson {
            outcome,
            revalidation: revalidation.as_deref(),
        }),
        Format::Csv => {
            let mut w = Csv::new();
            w.row([
                "dropped",
                "outcome",
                "n",
                "topology",
                "relation",
                "conclusion",
                "examined",
                "revalidation",
            ])?;
            match outcome {
                NecessityOutcome::Found { witness } => w.row([
                    witness.dropped.name(),
                    "found",
                    &witness.n.to_string(),
                    &witness.topology.to_compact_string(),
                    &witness.relation.to_row_string(),
                    &conclusion_label(&witness.conclusion),
                    "",
                    revalidation.as_deref().unwrap_or(""),
                ])?,
                NecessityOutcome::NoneFound {
                    dropped,
                    max_n,
                    examined,
                } => w.row([
                    dropped.name(),
                    "none_found",
                    &max_n.to_string(),
                    "",
                    "",
                    "",
                    &examined.to_string(),
                    "",
                ])?,
            }
            w.finish()
        }
        Format::Text => {
            let mut s = String::new();
            match outcome {
                NecessityOutcome::Found { witness } => {
                    let _ = writeln!(s, "dropped: {}", witness.dropped);
                    s.push_str("outcome: witness found\n");
                    let _ = writeln!(s, "n: {}", witness.n);
                    let _ = writeln!(s, "topology: {}", witness.topology.to_compact_string());
                    let _ = writeln!(s, "relation: {}", witness.relation.to_row_string());
                    let _ = writeln!(s, "conclusion: {}", conclusion_label(&witness.conclusion));
                    let _ = writeln!(
                        s,
                        "revalidation: {}",
                        revalidation.as_deref().unwrap_or("not run")
                    );
                    s.push_str(verdict_line(matches!(validation, Some(Ok(())))));
                }
                NecessityOutcome::NoneFound {
                    dropped,
                    max_n,
                    examined,
                } => {
                    let _ = writeln!(s, "dropped: {dropped}");
                    let _ = writeln!(s, "outcome: none found with n <= {max_n}");
                    let _ = writeln!(s, "examined: {examined}");
                    s.push_str(verdict_line(true));
                }
            }
            Ok(s)
        }
    }
}

/// The serialized name of a unit enum variant.
fn tag<T: Serialize>(value: &T) -> String {
    match serde_json::to_value(value) {
        Ok(serde_json::Value::String(s)) => s,
        _ => String::new(),
    }
}

fn verdict_label(v: &Verdict) -> String {
    match v {
        Verdict::Confirmed => "confirmed".into(),
        Verdict::Refuted { witness } => format!(
            "refuted at lambda = {} ({} side)",
            witness.at,
            tag(&witness.side)
        ),
        Verdict::Inconclusive { reason } => format!("inconclusive: {reason}"),
    }
}

fn clause_line(s: &mut String, c: &ClauseVerdict) {
    let _ = write!(s, "  {}: {}", c.clause, verdict_label(&c.verdict));
    if let Some(t) = c.triple {
        let _ = write!(s, " (triple {t}");
        if let Some(r) = c.role {
            let _ = write!(s, ", {}", tag(&r));
        }
        s.push(')');
    }
    s.push('\n');
}

pub fn fixture(outcome: &FixtureOutcome, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => json(outcome),
        Format::Csv => {
            let mut w = Csv::new();
            w.row(["example", "check", "passed", "detail"])?;
            let id = outcome.example.to_string();
            for c in &outcome.checks {
                w.row([id.as_str(), c.name, yes(c.passed), &c.detail])?;
            }
            w.finish()
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "example: {}", outcome.example);
            let _ = writeln!(s, "grid points: {}", outcome.grid_points);
            let _ = writeln!(s, "carrier points: {}", outcome.carrier_points);
            s.push_str("checks:\n");
            for c in &outcome.checks {
                let mark = if c.passed { "pass" } else { "FAIL" };
                if c.detail.is_empty() {
                    let _ = writeln!(s, "  [{mark}] {}", c.name);
                } else {
                    let _ = writeln!(s, "  [{mark}] {}: {}", c.name, c.detail);
                }
            }
            if let Some(c) = &outcome.continuity {
                s.push_str("mixture continuity:\n");
                clause_line(&mut s, &c.hard_mixture_continuity);
                clause_line(&mut s, &c.strict_soft_openness);
            }
            if !outcome.notes.is_empty() {
                s.push_str("notes:\n");
                for n in &outcome.notes {
                    let _ = writeln!(s, "  {n}");
                }
            }
            s.push_str(verdict_line(outcome.passed()));
            Ok(s)
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RelationSection {
    pub n: usize,
    pub rows: String,
    pub properties: PropertyRecord,
    pub sen: SenReport,
}

impl RelationSection {
    pub fn of(r: &FinRelation) -> Self {
        RelationSection {
            n: r.len(),
            rows: r.to_row_string(),
            properties: r.property_record(),
            sen: r.sen_check(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct BiSection {
    pub n: usize,
    pub hard: PropertyRecord,
    pub soft: PropertyRecord,
    pub non_trivial: bool,
    pub diagonal: bool,
    pub semi_transitivity: SemiTransitivity,
}

impl BiSection {
    pub fn of(b: &BiRelation) -> Self {
        BiSection {
            n: b.len(),
            hard: b.hard().property_record(),
            soft: b.soft().property_record(),
            non_trivial: b.is_nontrivial(),
            diagonal: b.is_diagonal(),
            semi_transitivity: b.semi_transitivity(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct TopologySection {
    pub n: usize,
    pub opens: String,
    pub open_sets: usize,
    pub connected: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clopen: Option<Subset>,
}

impl TopologySection {
    pub fn of(t: &FinTopology) -> Self {
        TopologySection {
            n: t.len(),
            opens: t.to_compact_string(),
            open_sets: t.opens().len(),
            connected: t.is_connected(),
            clopen: t.clopen_witness().cloned(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct MembershipSection {
    pub continuous: bool,
    pub generated_topology: String,
    pub in_class: bool,
}

#[derive(Debug, Serialize)]
pub struct WitnessSection {
    pub connected: bool,
    pub p_continuity: PContinuity,
}

#[derive(Debug, Default, Serialize)]
pub struct CheckReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relation: Option<RelationSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub birelation: Option<BiSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub topology: Option<TopologySection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub membership: Option<MembershipSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<WitnessSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixture: Option<FixtureReport>,
}

fn semi_label(s: &SemiTransitivity) -> String {
    match s {
        SemiTransitivity::Holds => "yes".into(),
        SemiTransitivity::Violated(v) => format!(
            "no ({:?} via {} -> {} -> {})",
            v.condition, v.from, v.via, v.to
        ),
    }
}

fn p_label(p: &PContinuity) -> String {
    match p {
        PContinuity::Holds => "yes".into(),
        PContinuity::Violated(v) => format!(
            "no (pair ({},{}), z = {}, {:?} preimage {})",
            v.pair.0, v.pair.1, v.z, v.kind, v.preimage
        ),
    }
}

impl CheckReport {
    /// Flat `(section, property, value)` rows shared by the text and CSV forms.
    fn rows(&self) -> Vec<(&'static str, String, String)> {
        let mut rows = Vec::new();
        if let Some(r) = &self.relation {
            rows.push(("relation", "n".into(), r.n.to_string()));
            for (k, v) in r.properties.rows() {
                rows.push(("relation", k.into(), yes(v).into()));
            }
            rows.push((
                "relation",
                "sen_lemma".into(),
                yes(r.sen.satisfied()).into(),
            ));
        }
        if let Some(b) = &self.birelation {
            rows.push(("birelation", "n".into(), b.n.to_string()));
            rows.push((
                "birelation",
                "non_trivial".into(),
                yes(b.non_trivial).into(),
            ));
            rows.push(("birelation", "diagonal".into(), yes(b.diagonal).into()));
            rows.push((
                "birelation",
                "semi_transitive".into(),
                semi_label(&b.semi_transitivity),
            ));
            for (k, v) in b.hard.rows() {
                rows.push(("hard", k.into(), yes(v).into()));
            }
            for (k, v) in b.soft.rows() {
                rows.push(("soft", k.into(), yes(v).into()));
            }
        }
        if let Some(t) = &self.topology {
            rows.push(("topology", "n".into(), t.n.to_string()));
            rows.push(("topology", "opens".into(), t.opens.clone()));
            rows.push(("topology", "open_sets".into(), t.open_sets.to_string()));
            rows.push(("topology", "connected".into(), yes(t.connected).into()));
            if let Some(c) = &t.clopen {
                rows.push(("topology", "clopen".into(), c.to_string()));
            }
        }
        if let Some(m) = &self.membership {
            rows.push((
                "membership",
                "generated_topology".into(),
                m.generated_topology.clone(),
            ));
            rows.push(("membership", "continuous".into(), yes(m.continuous).into()));
            rows.push(("membership", "in_class".into(), yes(m.in_class).into()));
        }
        if let Some(w) = &self.witnesses {
            rows.push(("witnesses", "connected".into(), yes(w.connected).into()));
            rows.push(("witnesses", "p_continuous".into(), p_label(&w.p_continuity)));
        }
        if let Some(f) = &self.fixture {
            rows.push(("fixture", "function".into(), tag(&f.function)));
            rows.push(("fixture", "grid_points".into(), f.grid_points.to_string()));
            for c in [
                &f.continuity.hard_mixture_continuity,
                &f.continuity.strict_soft_openness,
            ] {
                rows.push(("fixture", c.clause.into(), verdict_label(&c.verdict)));
            }
            for a in &f.archimedean {
                let v = match &a.verdict {
                    None => "not a strict pair".to_string(),
                    Some(Archimedean::Satisfied { lambda, delta }) => {
                        format!("satisfied (lambda = {lambda}, delta = {delta})")
                    }
                    Some(Archimedean::Inconclusive { lambda, delta }) => {
                        let show = |v: &Option<bipref::Rational>| {
                            v.as_ref().map_or("none".to_string(), |r| r.to_string())
                        };
                        format!(
                            "inconclusive (lambda = {}, delta = {})",
                            show(lambda),
                            show(delta)
                        )
                    }
                };
                rows.push(("fixture", format!("archimedean_{}", a.triple), v));
            }
        }
        rows
    }
}

pub fn check(report: &CheckReport, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => json(report),
        Format::Csv => {
            let mut w = Csv::new();
            w.row(["section", "property", "value"])?;
            for (section, k, v) in report.rows() {
                w.row([section, k.as_str(), v.as_str()])?;
            }
            w.finish()
        }
        Format::Text => {
            let rows = report.rows();
            let width = rows.iter().map(|(_, k, _)| k.len()).max().unwrap_or(0);
            let mut s = String::new();
            let mut current = "";
            for (section, k, v) in &rows {
                if *section != current {
                    let _ = writeln!(s, "{section}:");
                    current = section;
                }
                let _ = writeln!(s, "  {k:<width$}  {v}");
            }
            Ok(s)
        }
    }
}

pub enum Item {
    Topology(FinTopology),
    Relation(FinRelation),
    BiRelation(BiRelation),
}

impl Item {
    fn text(&self) -> String {
        match self {
            Item::Topology(t) => t.to_compact_string(),
            Item::Relation(r) => r.to_row_string(),
            Item::BiRelation(b) => format!(
                "{} / {}",
                b.hard().to_row_string(),
                b.soft().to_row_string()
            ),
        }
    }
}

impl Serialize for Item {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Item::Topology(t) => t.serialize(serializer),
            Item::Relation(r) => r.serialize(serializer),
            Item::BiRelation(b) => b.serialize(serializer),
        }
    }
}

#[derive(Serialize)]
struct CountJson<'a> {
    kind: &'a str,
    n: usize,
    count: u64,
}

pub fn count(kind: &str, n: usize, count: u64, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => json(&CountJson { kind, n, count }),
        Format::Csv => {
            let mut w = Csv::new();
            w.row(["kind", "n", "count"])?;
            w.row([kind, &n.to_string(), &count.to_string()])?;
            w.finish()
        }
        Format::Text => Ok(format!("{count}\n")),
    }
}

pub fn items(
    kind: &str,
    n: usize,
    items: impl Iterator<Item = Item>,
    format: Format,
) -> Result<String, CliError> {
    match format {
        Format::Json => {
            let all: Vec<Item> = items.collect();
            #[derive(Serialize)]
            struct ItemsJson<'a> {
                kind: &'a str,
                n: usize,
                items: Vec<Item>,
            }
            json(&ItemsJson {
                kind,
                n,
                items: all,
            })
        }
        Format::Csv => {
            let mut w = Csv::new();
            w.row(["index", "item"])?;
            for (i, item) in items.enumerate() {
                w.row([i.to_string(), item.text()])?;
            }
            w.finish()
        }
        Format::Text => {
            let mut s = String::new();
            for item in items {
                s.push_str(&item.text());
                s.push('\n');
            }
            Ok(s)
        }
    }
}
