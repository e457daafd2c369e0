//! Line-oriented input formats and the tabular output records.
//!
//! Every input format ignores blank lines and `#` comments, and reports
//! errors with the 1-based line number.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use superhom::delta::{DeltaSet, GradedSubset};
use superhom::{CellId, MultiGraph, Subgraph};

use crate::error::{CliError, Result};

/// Non-blank lines with comments removed, numbered from 1.
pub fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

/// `directed 0|1`, then `v <id>` and `e <id> <head> <tail>` lines. An edge
/// runs from its tail to its head.
pub fn parse_graph(text: &str, origin: &str) -> Result<MultiGraph> {
    let mut lines = content_lines(text);
    let directed = match lines.next() {
        Some((no, line)) => match line.split_whitespace().collect::<Vec<_>>()[..] {
            ["directed", "0"] => false,
            ["directed", "1"] => true,
            _ => {
                return Err(CliError::parse(
                    origin,
                    no,
                    "expected header `directed 0` or `directed 1`",
                ))
            }
        },
        None => return Err(CliError::parse(origin, 1, "missing header `directed 0|1`")),
    };
    let mut g = MultiGraph::new(directed);
    for (no, line) in lines {
        let err = |m: String| CliError::parse(origin, no, m);
        match line.split_whitespace().collect::<Vec<_>>()[..] {
            ["v", id] => {
                g.add_vertex(id).map_err(|e| err(e.to_string()))?;
            }
            ["e", id, head, tail] => {
                let h = g
                    .vertex_id(head)
                    .ok_or_else(|| err(format!("unknown vertex `{head}`")))?;
                let t = g
                    .vertex_id(tail)
                    .ok_or_else(|| err(format!("unknown vertex `{tail}`")))?;
                g.add_edge(id, t, h).map_err(|e| err(e.to_string()))?;
            }
            _ => {
                return Err(err(format!(
                    "expected `v <id>` or `e <id> <head> <tail>`, got `{line}`"
                )))
            }
        }
    }
    Ok(g)
}

fn split_fields(line: &str) -> Vec<&str> {
    line.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .collect()
}

fn parse_coords(fields: &[&str], origin: &str, no: usize) -> Result<Vec<f64>> {
    fields
        .iter()
        .map(|f| match f.parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(x),
            _ => Err(CliError::parse(origin, no, format!("bad coordinate `{f}`"))),
        })
        .collect()
}

/// Rows `<vertex id> <x_1> ... <x_m>`, separated by commas, tabs or spaces.
pub fn parse_points(text: &str, origin: &str) -> Result<Vec<(String, Vec<f64>)>> {
    let mut rows: Vec<(String, Vec<f64>)> = Vec::new();
    let mut seen = BTreeSet::new();
    for (no, line) in content_lines(text) {
        let fields = split_fields(line);
        let coords = parse_coords(&fields[1..], origin, no)?;
        if coords.is_empty() {
            return Err(CliError::parse(
                origin,
                no,
                "a point needs at least one coordinate",
            ));
        }
        if let Some((_, first)) = rows.first() {
            if first.len() != coords.len() {
                return Err(CliError::parse(
                    origin,
                    no,
                    format!("expected {} coordinates, got {}", first.len(), coords.len()),
                ));
            }
        }
        if !seen.insert(fields[0].to_string()) {
            return Err(CliError::parse(
                origin,
                no,
                format!("duplicate vertex `{}`", fields[0]),
            ));
        }
        rows.push((fields[0].to_string(), coords));
    }
    Ok(rows)
}

/// Rows of coordinates without vertex ids (witness sets).
pub fn parse_witnesses(text: &str, origin: &str) -> Result<Vec<Vec<f64>>> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (no, line) in content_lines(text) {
        let row = parse_coords(&split_fields(line), origin, no)?;
        if rows.first().is_some_and(|r| r.len() != row.len()) {
            return Err(CliError::parse(
                origin,
                no,
                "inconsistent witness dimension",
            ));
        }
        rows.push(row);
    }
    Ok(rows)
}

fn lookup_vertex(g: &MultiGraph, name: &str, origin: &str, no: usize) -> Result<usize> {
    g.vertex_id(name)
        .ok_or_else(|| CliError::parse(origin, no, format!("unknown vertex `{name}`")))
}

/// `member` starts a subgraph; `v <ids...>` and `e <ids...>` add vertices
/// and edges. Edge endpoints are added implicitly.
pub fn parse_family(text: &str, origin: &str, g: &MultiGraph) -> Result<Vec<Subgraph>> {
    let mut members: Vec<Subgraph> = Vec::new();
    for (no, line) in content_lines(text) {
        let mut words = line.split_whitespace();
        let head = words.next().unwrap_or_default();
        if head == "member" {
            members.push(Subgraph::default());
            continue;
        }
        let m = members.last_mut().ok_or_else(|| {
            CliError::parse(origin, no, "expected `member` before vertex or edge lines")
        })?;
        match head {
            "v" => {
                for w in words {
                    m.vertices.insert(lookup_vertex(g, w, origin, no)?);
                }
            }
            "e" => {
                for w in words {
                    let e = g.edge_id(w).ok_or_else(|| {
                        CliError::parse(origin, no, format!("unknown edge `{w}`"))
                    })?;
                    m.edges.insert(e);
                    m.vertices.insert(g.edge(e).source);
                    m.vertices.insert(g.edge(e).target);
                }
            }
            _ => {
                return Err(CliError::parse(
                    origin,
                    no,
                    format!("expected `member`, `v` or `e`, got `{head}`"),
                ))
            }
        }
    }
    Ok(members)
}

/// `<vertex> <block>` per line; blocks are numbered by first appearance and
/// every vertex of `g` must be assigned.
pub fn parse_clustering(text: &str, origin: &str, g: &MultiGraph) -> Result<Vec<usize>> {
    let mut block_of: Vec<Option<usize>> = vec![None; g.num_vertices()];
    let mut blocks: HashMap<String, usize> = HashMap::new();
    for (no, line) in content_lines(text) {
        let [v, b] = line.split_whitespace().collect::<Vec<_>>()[..] else {
            return Err(CliError::parse(origin, no, "expected `<vertex> <block>`"));
        };
        let v = lookup_vertex(g, v, origin, no)?;
        let next = blocks.len();
        let b = *blocks.entry(b.to_string()).or_insert(next);
        if block_of[v].replace(b).is_some() {
            return Err(CliError::parse(
                origin,
                no,
                format!("vertex `{}` assigned twice", g.vertex_name(v)),
            ));
        }
    }
    block_of
        .into_iter()
        .enumerate()
        .map(|(v, b)| {
            b.ok_or_else(|| {
                CliError::Validation(format!("vertex `{}` has no block", g.vertex_name(v)))
            })
        })
        .collect()
}

/// `<member index> <vertices...>`: the starting vertices of each member.
pub fn parse_marked(
    text: &str,
    origin: &str,
    g: &MultiGraph,
    members: usize,
) -> Result<Vec<BTreeSet<usize>>> {
    let mut sv: Vec<Option<BTreeSet<usize>>> = vec![None; members];
    for (no, line) in content_lines(text) {
        let mut words = line.split_whitespace();
        let k: usize = words
            .next()
            .and_then(|w| w.parse().ok())
            .filter(|&k| k < members)
            .ok_or_else(|| {
                CliError::parse(
                    origin,
                    no,
                    format!("expected a member index below {members}"),
                )
            })?;
        let set = words
            .map(|w| lookup_vertex(g, w, origin, no))
            .collect::<Result<BTreeSet<_>>>()?;
        if sv[k].replace(set).is_some() {
            return Err(CliError::parse(
                origin,
                no,
                format!("member {k} marked twice"),
            ));
        }
    }
    sv.into_iter()
        .enumerate()
        .map(|(k, s)| {
            s.ok_or_else(|| CliError::Validation(format!("member {k} has no starting vertices")))
        })
        .collect()
}

/// A Δ-set read from `cell <dim> <id> : <face ids>` lines with optional
/// `mark <ids...>` lines. Without `mark` lines every cell is marked; a bare
/// `mark` line marks nothing.
#[derive(Clone, Debug, PartialEq)]
pub struct DeltaInput {
    pub x: DeltaSet<String>,
    pub h: GradedSubset,
}

pub fn parse_delta(text: &str, origin: &str) -> Result<DeltaInput> {
    struct Raw {
        dim: usize,
        name: String,
        faces: Vec<String>,
        line: usize,
    }
    let mut raw: Vec<Raw> = Vec::new();
    let mut marks: Vec<(usize, String)> = Vec::new();
    let mut any_mark = false;
    for (no, line) in content_lines(text) {
        let err = |m: &str| CliError::parse(origin, no, m);
        if let Some(rest) = line.strip_prefix("mark") {
            any_mark = true;
            marks.extend(rest.split_whitespace().map(|w| (no, w.to_string())));
            continue;
        }
        let Some(rest) = line.strip_prefix("cell") else {
            return Err(err("expected `cell <dim> <id> : <faces>` or `mark <ids>`"));
        };
        let (head, faces) = rest.split_once(':').unwrap_or((rest, ""));
        let [dim, name] = head.split_whitespace().collect::<Vec<_>>()[..] else {
            return Err(err("expected `cell <dim> <id> : <faces>`"));
        };
        let dim: usize = dim.parse().map_err(|_| err("bad dimension"))?;
        let faces: Vec<String> = faces.split_whitespace().map(str::to_string).collect();
        if faces.len() != if dim == 0 { 0 } else { dim + 1 } {
            return Err(CliError::parse(
                origin,
                no,
                format!(
                    "a {dim}-cell needs {} faces, got {}",
                    if dim == 0 { 0 } else { dim + 1 },
                    faces.len()
                ),
            ));
        }
        raw.push(Raw {
            dim,
            name: name.to_string(),
            faces,
            line: no,
        });
    }
    let mut index: BTreeMap<&str, CellId> = BTreeMap::new();
    let mut counts: Vec<usize> = Vec::new();
    for r in &raw {
        if counts.len() <= r.dim {
            counts.resize(r.dim + 1, 0);
        }
        let id = CellId::new(r.dim, counts[r.dim]);
        counts[r.dim] += 1;
        if index.insert(&r.name, id).is_some() {
            return Err(CliError::parse(
                origin,
                r.line,
                format!("duplicate cell `{}`", r.name),
            ));
        }
    }
    // Cells are added per dimension in file order so ids match `index`.
    let mut x: DeltaSet<String> = DeltaSet::new();
    for dim in 0..counts.len() {
        for r in raw.iter().filter(|r| r.dim == dim) {
            let faces = r
                .faces
                .iter()
                .map(|f| match index.get(f.as_str()) {
                    Some(c) if c.dim + 1 == dim => Ok(c.index),
                    Some(_) => Err(CliError::parse(
                        origin,
                        r.line,
                        format!("face `{f}` has the wrong dimension"),
                    )),
                    None => Err(CliError::parse(
                        origin,
                        r.line,
                        format!("unknown cell `{f}`"),
                    )),
                })
                .collect::<Result<Vec<_>>>()?;
            x.add_cell(dim, faces, r.name.clone());
        }
    }
    let h = if !any_mark {
        GradedSubset::full(&x)
    } else {
        let mut h = GradedSubset::empty();
        for (no, m) in marks {
            let c = index
                .get(m.as_str())
                .ok_or_else(|| CliError::parse(origin, no, format!("unknown cell `{m}`")))?;
            h.insert(*c);
        }
        h
    };
    Ok(DeltaInput { x, h })
}

/// Writes a Δ-set in the format read by [`parse_delta`]. Cells are named
/// `c<dim>.<index>`; `describe` supplies a trailing comment per cell.
pub fn write_delta<L>(
    x: &DeltaSet<L>,
    h: &GradedSubset,
    describe: impl Fn(&L) -> String,
) -> String {
    let name = |c: CellId| format!("c{}.{}", c.dim, c.index);
    let mut out = String::new();
    for c in x.all_cells() {
        let faces: Vec<String> = if c.dim == 0 {
            Vec::new()
        } else {
            x.faces_of(c)
                .iter()
                .map(|&k| name(CellId::new(c.dim - 1, k)))
                .collect()
        };
        let note = describe(x.label(c)).replace('#', "");
        out.push_str(&format!("cell {} {}", c.dim, name(c)));
        if !faces.is_empty() {
            out.push_str(&format!(" : {}", faces.join(" ")));
        }
        if !note.is_empty() {
            out.push_str(&format!("  # {note}"));
        }
        out.push('\n');
    }
    let marked: Vec<String> = h.iter().map(name).collect();
    if marked.is_empty() {
        // No marked cells: an empty mark line would mean "all marked".
        out.push_str("mark\n");
    } else {
        for chunk in marked.chunks(16) {
            out.push_str(&format!("mark {}\n", chunk.join(" ")));
        }
    }
    out
}

/// `h <vertices...>` lines, one hyperedge each.
pub fn parse_hypergraph(text: &str, origin: &str) -> Result<Vec<Vec<String>>> {
    content_lines(text)
        .map(|(no, line)| {
            let mut words = line.split_whitespace();
            if words.next() != Some("h") {
                return Err(CliError::parse(origin, no, "expected `h <vertices...>`"));
            }
            let vs: Vec<String> = words.map(str::to_string).collect();
            if vs.is_empty() {
                return Err(CliError::parse(origin, no, "empty hyperedge"));
            }
            Ok(vs)
        })
        .collect()
}

/// A bar endpoint: finite, or `inf`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Endpoint {
    Finite(f64),
    Infinite,
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endpoint::Finite(x) => write!(f, "{x}"),
            Endpoint::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Endpoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Endpoint::Finite(x) => s.serialize_f64(*x),
            Endpoint::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Endpoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(f64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            // csv reads `inf` as a float.
            Repr::Num(x) if x == f64::INFINITY => Ok(Endpoint::Infinite),
            Repr::Num(x) => Ok(Endpoint::Finite(x)),
            Repr::Text(s) if s == "inf" => Ok(Endpoint::Infinite),
            Repr::Text(s) => s
                .parse()
                .map(Endpoint::Finite)
                .map_err(|_| serde::de::Error::custom(format!("bad endpoint `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BettiRecord {
    pub mode: String,
    pub degree: usize,
    pub value: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BarRecord {
    pub module: String,
    pub degree: usize,
    pub birth: f64,
    pub death: Endpoint,
    pub multiplicity: usize,
}

/// One interval summand; `id` indexes rows/columns of correlation matrices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntervalRecord {
    pub module: String,
    pub degree: usize,
    pub id: usize,
    pub birth: f64,
    pub death: Endpoint,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrelationRecord {
    pub degree: usize,
    pub row: usize,
    pub col: usize,
    pub value: u8,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TriangleRecord {
    pub degree: usize,
    pub index: usize,
    pub embedded: usize,
    pub ambient: usize,
    pub relative: usize,
    pub rank_j: usize,
    pub rank_p: usize,
    pub rank_boundary: usize,
    pub exact: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalRecord {
    pub index: usize,
    pub value: f64,
}

pub fn to_csv<T: Serialize>(rows: &[T], header: &[&str]) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    let fail = |e: csv::Error| CliError::Compute(format!("csv encoding: {e}"));
    w.write_record(header).map_err(fail)?;
    for r in rows {
        w.serialize(r).map_err(fail)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Compute(format!("csv encoding: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn from_csv<T: for<'de> Deserialize<'de>>(text: &str, origin: &str) -> Result<Vec<T>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    r.deserialize()
        .enumerate()
        .map(|(i, row)| row.map_err(|e| CliError::parse(origin, i + 2, e.to_string())))
        .collect()
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Compute(format!("json encoding: {e}")))?;
    s.push('\n');
    Ok(s)
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str, origin: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| CliError::parse(origin, e.line(), e.to_string()))
}
