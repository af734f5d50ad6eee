//! Text and JSON formats for relations, bi-relations, topologies and witness
//! families. Inputs whose first non-blank character is `{` are read as JSON.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::birelation::BiRelation;
use crate::error::{Error, Result};
use crate::pcontinuity::{Witness, WitnessFamily};
use crate::relation::{Carrier, FinRelation};
use crate::subset::{IndexList, Subset};
use crate::topology::FinTopology;

fn is_json(text: &str) -> bool {
    text.trim_start().starts_with('{')
}

fn json_error(e: serde_json::Error) -> Error {
    Error::parse(e.line(), e.column(), e.to_string())
}

/// Non-blank lines with their 1-based line numbers.
fn content_lines(text: &str, offset: usize) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(move |(i, l)| (i + 1 + offset, l.trim_end()))
        .filter(|(_, l)| !l.trim().is_empty())
}

fn parse_size(line: usize, raw: &str) -> Result<Carrier> {
    let trimmed = raw.trim();
    let col = raw.len() - raw.trim_start().len() + 1;
    let n: usize = trimmed.parse().map_err(|_| {
        Error::parse(
            line,
            col,
            format!("expected a carrier size, found {trimmed:?}"),
        )
    })?;
    Carrier::new(n).map_err(|e| Error::parse(line, col, e.to_string()))
}

fn parse_index(line: usize, col: usize, raw: &str, n: usize) -> Result<usize> {
    let idx: usize = raw.trim().parse().map_err(|_| {
        Error::parse(
            line,
            col,
            format!("expected an element index, found {:?}", raw.trim()),
        )
    })?;
    if idx >= n {
        return Err(Error::parse(
            line,
            col,
            format!("element {idx} out of range for {n} elements"),
        ));
    }
    Ok(idx)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RelationJson {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl RelationJson {
    fn build(self) -> Result<FinRelation> {
        FinRelation::from_pairs(Carrier::new(self.n)?, self.pairs)
    }
}

/// Relation text block starting at 1-based line `offset + 1`.
fn parse_relation_block(text: &str, offset: usize) -> Result<FinRelation> {
    let mut lines = content_lines(text, offset);
    let (first, header) = lines
        .next()
        .ok_or_else(|| Error::parse(offset + 1, 1, "empty relation block"))?;
    let carrier = parse_size(first, header)?;
    let n = carrier.len();
    let mut rows = Vec::with_capacity(n);
    let mut last = first;
    for (line, raw) in lines {
        if rows.len() == n {
            return Err(Error::parse(
                line,
                1,
                format!("expected {n} rows, found more"),
            ));
        }
        let cells = raw.trim();
        let start = raw.len() - raw.trim_start().len();
        let mut row = Subset::empty(n);
        let mut width = 0;
        for (j, ch) in cells.chars().enumerate() {
            match ch {
                '1' if j < n => row.insert(j),
                '0' | '1' => {}
                other => {
                    return Err(Error::parse(
                        line,
                        start + j + 1,
                        format!("unexpected character {other:?}"),
                    ))
                }
            }
            width += 1;
        }
        if width != n {
            return Err(Error::parse(
                line,
                start + 1,
                format!("row has {width} entries, expected {n}"),
            ));
        }
        rows.push(row);
        last = line;
    }
    if rows.len() != n {
        return Err(Error::parse(
            last + 1,
            1,
            format!("expected {n} rows, found {}", rows.len()),
        ));
    }
    FinRelation::from_rows(rows)
}

/// Relation in the `n` + 0/1 rows format, or `{"n":…, "pairs":[[x,y],…]}`.
pub fn parse_relation(text: &str) -> Result<FinRelation> {
    if is_json(text) {
        serde_json::from_str::<RelationJson>(text)
            .map_err(json_error)?
            .build()
    } else {
        parse_relation_block(text, 0)
    }
}

pub fn format_relation(r: &FinRelation) -> String {
    let n = r.len();
    let mut out = format!("{n}\n");
    for x in 0..n {
        for y in 0..n {
            out.push(if r.contains(x, y) { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BiRelationJson {
    hard: RelationJson,
    soft: RelationJson,
}

/// Two relation blocks (hard, then soft) separated by a blank line, or
/// `{"hard":…, "soft":…}`.
pub fn parse_birelation(text: &str) -> Result<BiRelation> {
    if is_json(text) {
        let raw: BiRelationJson = serde_json::from_str(text).map_err(json_error)?;
        return BiRelation::new(raw.hard.build()?, raw.soft.build()?);
    }
    let lines: Vec<&str> = text.lines().collect();
    let start = lines
        .iter()
        .position(|l| !l.trim().is_empty())
        .ok_or_else(|| Error::parse(1, 1, "empty bi-relation file"))?;
    let gap = lines[start..]
        .iter()
        .position(|l| l.trim().is_empty())
        .map(|p| p + start)
        .ok_or_else(|| {
            Error::parse(
                lines.len() + 1,
                1,
                "missing blank line before the soft block",
            )
        })?;
    let hard = parse_relation_block(&lines[..gap].join("\n"), 0)?;
    let soft = parse_relation_block(&lines[gap..].join("\n"), gap)?;
    BiRelation::new(hard, soft)
}

pub fn format_birelation(b: &BiRelation) -> String {
    format!(
        "{}\n{}",
        format_relation(b.hard()),
        format_relation(b.soft())
    )
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TopologyJson {
    n: usize,
    opens: Vec<IndexList>,
}

impl TopologyJson {
    fn build(self) -> Result<FinTopology> {
        let carrier = Carrier::new(self.n)?;
        let mut opens = Vec::with_capacity(self.opens.len());
        for IndexList(items) in self.opens {
            if let Some(&bad) = items.iter().find(|&&i| i >= self.n) {
                return Err(Error::IndexOutOfRange {
                    index: bad,
                    n: self.n,
                });
            }
            opens.push(Subset::from_indices(self.n, items));
        }
        FinTopology::from_opens(carrier, opens)
    }
}

/// `n`, then one open set per line as comma-separated indices with `-` for
/// the empty set, or `{"n":…, "opens":[[…],…]}`.
pub fn parse_topology(text: &str) -> Result<FinTopology> {
    if is_json(text) {
        return serde_json::from_str::<TopologyJson>(text)
            .map_err(json_error)?
            .build();
    }
    let mut lines = content_lines(text, 0);
    let (first, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, 1, "empty topology file"))?;
    let carrier = parse_size(first, header)?;
    let n = carrier.len();
    let mut opens = Vec::new();
    for (line, raw) in lines {
        let body = raw.trim();
        let mut set = Subset::empty(n);
        if body != "-" {
            let mut col = raw.len() - raw.trim_start().len() + 1;
            for piece in body.split(',') {
                set.insert(parse_index(line, col, piece, n)?);
                col += piece.len() + 1;
            }
        }
        opens.push(set);
    }
    FinTopology::from_opens(carrier, opens)
}

pub fn format_topology(t: &FinTopology) -> String {
    let mut out = format!("{}\n", t.len());
    for open in t.opens() {
        if open.is_empty() {
            out.push('-');
        } else {
            let items: Vec<String> = open.iter().map(|i| i.to_string()).collect();
            out.push_str(&items.join(","));
        }
        out.push('\n');
    }
    out
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WitnessJson {
    topology: TopologyJson,
    map: Vec<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyJson {
    target_n: usize,
    witnesses: BTreeMap<String, WitnessJson>,
}

fn parse_pair_key(key: &str, n: usize) -> Result<(usize, usize)> {
    let bad = || Error::Malformed(format!("witness key {key:?} is not of the form \"x,y\""));
    let (a, b) = key.split_once(',').ok_or_else(bad)?;
    let x: usize = a.trim().parse().map_err(|_| bad())?;
    let y: usize = b.trim().parse().map_err(|_| bad())?;
    for i in [x, y] {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
    }
    Ok((x, y))
}

/// `{"target_n":…, "witnesses":{"x,y":{"topology":…, "map":[…]}}}` with a
/// witness for every ordered pair.
pub fn parse_witness_family(text: &str) -> Result<WitnessFamily> {
    let raw: FamilyJson = serde_json::from_str(text).map_err(json_error)?;
    let target = Carrier::new(raw.target_n)?;
    let n = target.len();
    let mut slots: Vec<Option<Witness>> = (0..n * n).map(|_| None).collect();
    for (key, w) in raw.witnesses {
        let (x, y) = parse_pair_key(&key, n)?;
        let slot = &mut slots[x * n + y];
        if slot.is_some() {
            return Err(Error::Malformed(format!(
                "duplicate witness for pair ({x}, {y})"
            )));
        }
        *slot = Some(Witness::new(w.topology.build()?, w.map)?);
    }
    let mut table = Vec::with_capacity(n * n);
    for (i, slot) in slots.into_iter().enumerate() {
        let w = slot.ok_or_else(|| {
            Error::WitnessFamily(format!("no witness for pair ({}, {})", i / n, i % n))
        })?;
        table.push(w);
    }
    WitnessFamily::new(target, table)
}

pub fn format_witness_family(f: &WitnessFamily) -> String {
    let witnesses: serde_json::Map<String, serde_json::Value> = f
        .witnesses()
        .map(|((x, y), w)| {
            (
                format!("{x},{y}"),
                serde_json::json!({ "topology": w.space(), "map": w.map() }),
            )
        })
        .collect();
    let doc = serde_json::json!({ "target_n": f.target().len(), "witnesses": witnesses });
    serde_json::to_string_pretty(&doc).expect("witness family serializes")
}
