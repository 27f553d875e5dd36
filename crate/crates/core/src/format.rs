//! Line-oriented JSON documents.
//!
//! A document is a header line `{"kind": ..., "format_version": 1, ...}`
//! followed by one JSON record per line. Rationals are strings `p/q`.
//! Blank lines are ignored.
//!
//! | kind      | header fields                              | records                                  |
//! |-----------|--------------------------------------------|------------------------------------------|
//! | `points`  | `dim`                                      | `{"label": "a", "coords": ["1/2", ...]}` |
//! | `graph`   | `n`                                        | `[u, v]`                                 |
//! | `lattice` | `n_vertices`                               | `{"rank": r, "vertices": [...]}`         |
//! | `system`  | `n_vars`                                   | `{"rel": "=" \| ">" \| ">=", "poly": "..."}` |
//! | `shor`    | `n`, `completeness`, `var_map`             | `{"op", "i", "j", "k"}`, `{"less": [a, b]}`, `{"contradiction": "..."}` |
//! | `report`  | `command`, `seed`                          | `{"key": "...", "value": <any>}`         |

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lattice::{Face, FaceLattice};
use crate::numeric::{parse_rational, rational_to_string, PointConfiguration};
use crate::semialgebra::{Completeness, PolynomialZ, SemialgebraicSystem, ShorCompilation, ShorConstraint, ShorOp};
use crate::steinitz::Multigraph;

pub const FORMAT_VERSION: u32 = 1;

/// The serialized part of a Shor compilation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShorDocument {
    pub n: usize,
    pub completeness: Completeness,
    pub var_map: Vec<usize>,
    pub constraints: Vec<ShorConstraint>,
    pub order: Vec<(usize, usize)>,
    pub contradictions: Vec<String>,
}

impl From<&ShorCompilation> for ShorDocument {
    fn from(c: &ShorCompilation) -> Self {
        Self {
            n: c.normal_form.n,
            completeness: c.completeness,
            var_map: c.var_map.clone(),
            constraints: c.normal_form.constraints.clone(),
            order: c.order.clone(),
            contradictions: c.contradictions.clone(),
        }
    }
}

/// Named values produced by a command.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub entries: Vec<(String, Value)>,
}

impl Report {
    pub fn new(command: &str, seed: u64) -> Self {
        Self {
            command: command.to_string(),
            seed,
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, key: &str, value: impl Into<Value>) {
        self.entries.push((key.to_string(), value.into()));
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    Points(PointConfiguration),
    Graph(Multigraph),
    Lattice(FaceLattice),
    System(SemialgebraicSystem),
    Shor(ShorDocument),
    Report(Report),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Points(_) => "points",
            Document::Graph(_) => "graph",
            Document::Lattice(_) => "lattice",
            Document::System(_) => "system",
            Document::Shor(_) => "shor",
            Document::Report(_) => "report",
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointRecord {
    label: String,
    coords: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FaceRecord {
    rank: i32,
    vertices: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConstraintRecord {
    rel: String,
    poly: String,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
enum ShorRecord {
    Constraint { op: String, i: usize, j: usize, k: usize },
    Less { less: (usize, usize) },
    Contradiction { contradiction: String },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ReportRecord {
    key: String,
    value: Value,
}

fn header(kind: &str, mut extra: Value) -> String {
    let mut h = json!({ "kind": kind, "format_version": FORMAT_VERSION });
    if let (Some(h), Some(e)) = (h.as_object_mut(), extra.as_object_mut()) {
        h.append(e);
    }
    h.to_string()
}

fn line<T: Serialize>(out: &mut String, record: &T) {
    out.push_str(&serde_json::to_string(record).expect("records serialize"));
    out.push('\n');
}

pub fn write_document(doc: &Document) -> String {
    let mut out = String::new();
    match doc {
        Document::Points(c) => {
            out.push_str(&header("points", json!({ "dim": c.dim() })));
            out.push('\n');
            for (p, l) in c.points().iter().zip(c.labels()) {
                line(
                    &mut out,
                    &PointRecord {
                        label: l.clone(),
                        coords: p.iter().map(rational_to_string).collect(),
                    },
                );
            }
        }
        Document::Graph(g) => {
            out.push_str(&header("graph", json!({ "n": g.n })));
            out.push('\n');
            for e in &g.edges {
                line(&mut out, e);
            }
        }
        Document::Lattice(l) => {
            out.push_str(&header("lattice", json!({ "n_vertices": l.n_vertices() })));
            out.push('\n');
            for f in l.faces() {
                line(
                    &mut out,
                    &FaceRecord {
                        rank: f.rank,
                        vertices: f.vertices.clone(),
                    },
                );
            }
        }
        Document::System(s) => {
            out.push_str(&header("system", json!({ "n_vars": s.n_vars })));
            out.push('\n');
            for (rel, polys) in [("=", &s.equations), (">", &s.strict), (">=", &s.nonstrict)] {
                for p in polys {
                    line(
                        &mut out,
                        &ConstraintRecord {
                            rel: rel.into(),
                            poly: p.to_string(),
                        },
                    );
                }
            }
        }
        Document::Shor(s) => {
            let completeness = match s.completeness {
                Completeness::Total => "total",
                Completeness::Partial => "partial",
            };
            out.push_str(&header(
                "shor",
                json!({ "n": s.n, "completeness": completeness, "var_map": s.var_map }),
            ));
            out.push('\n');
            for c in &s.constraints {
                let op = if c.op == ShorOp::Add { "+" } else { "*" };
                line(&mut out, &ShorRecord::Constraint { op: op.into(), i: c.i, j: c.j, k: c.k });
            }
            for &less in &s.order {
                line(&mut out, &ShorRecord::Less { less });
            }
            for c in &s.contradictions {
                line(&mut out, &ShorRecord::Contradiction { contradiction: c.clone() });
            }
        }
        Document::Report(r) => {
            out.push_str(&header("report", json!({ "command": r.command, "seed": r.seed })));
            out.push('\n');
            for (key, value) in &r.entries {
                line(&mut out, &ReportRecord { key: key.clone(), value: value.clone() });
            }
        }
    }
    out
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn decode<T: DeserializeOwned>(line_no: usize, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| syntax(line_no, e.column().max(1), e.to_string()))
}

/// Lifts errors of a record's content to its line.
fn at<T>(line_no: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Syntax { .. } => e,
        other => syntax(line_no, 1, other.to_string()),
    })
}

#[derive(Deserialize)]
struct Header {
    kind: String,
    format_version: u32,
    #[serde(flatten)]
    rest: serde_json::Map<String, Value>,
}

fn field<T: DeserializeOwned>(h: &Header, name: &str) -> Result<T> {
    let v = h
        .rest
        .get(name)
        .ok_or_else(|| syntax(1, 1, format!("header lacks field {name:?}")))?;
    serde_json::from_value(v.clone()).map_err(|e| syntax(1, 1, format!("header field {name:?}: {e}")))
}

fn only_fields(h: &Header, names: &[&str]) -> Result<()> {
    match h.rest.keys().find(|k| !names.contains(&k.as_str())) {
        Some(k) => Err(syntax(1, 1, format!("unknown header field {k:?}"))),
        None => Ok(()),
    }
}

/// Parses any document kind.
pub fn parse_document(text: &str) -> Result<Document> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l)).filter(|(_, l)| !l.trim().is_empty());
    let Some((hl, htext)) = lines.next() else {
        return Err(syntax(1, 1, "empty document"));
    };
    let h: Header = decode(hl, htext)?;
    if h.format_version != FORMAT_VERSION {
        return Err(syntax(hl, 1, format!("unsupported format_version {}", h.format_version)));
    }
    let records: Vec<(usize, &str)> = lines.collect();
    match h.kind.as_str() {
        "points" => {
            only_fields(&h, &["dim"])?;
            let dim: usize = field(&h, "dim")?;
            let mut points = Vec::new();
            let mut labels = Vec::new();
            for &(n, l) in &records {
                let r: PointRecord = decode(n, l)?;
                if r.coords.len() != dim {
                    return Err(syntax(n, 1, format!("{} coordinates, expected {dim}", r.coords.len())));
                }
                points.push(at(n, r.coords.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>>>())?);
                labels.push(r.label);
            }
            let last = records.last().map_or(hl, |r| r.0);
            Ok(Document::Points(at(last, PointConfiguration::new(dim, points, labels))?))
        }
        "graph" => {
            only_fields(&h, &["n"])?;
            let n: usize = field(&h, "n")?;
            let mut edges = Vec::new();
            for &(ln, l) in &records {
                let (a, b): (usize, usize) = decode(ln, l)?;
                if a >= n || b >= n {
                    return Err(syntax(ln, 1, format!("edge ({a}, {b}) with {n} vertices")));
                }
                edges.push((a, b));
            }
            Ok(Document::Graph(Multigraph::new(n, edges)?))
        }
        "lattice" => {
            only_fields(&h, &["n_vertices"])?;
            let n: usize = field(&h, "n_vertices")?;
            let mut faces = Vec::new();
            for &(ln, l) in &records {
                let r: FaceRecord = decode(ln, l)?;
                if let Some(v) = r.vertices.iter().find(|&&v| v >= n) {
                    return Err(syntax(ln, 1, format!("vertex {v} with {n} vertices")));
                }
                faces.push(Face {
                    rank: r.rank,
                    vertices: r.vertices,
                });
            }
            let last = records.last().map_or(hl, |r| r.0);
            Ok(Document::Lattice(at(last, FaceLattice::from_faces(n, faces))?))
        }
        "system" => {
            only_fields(&h, &["n_vars"])?;
            let n_vars: usize = field(&h, "n_vars")?;
            let mut sys = SemialgebraicSystem::new(n_vars);
            for &(ln, l) in &records {
                let r: ConstraintRecord = decode(ln, l)?;
                let p = at(ln, PolynomialZ::parse(&r.poly, n_vars))?;
                match r.rel.as_str() {
                    "=" => sys.equations.push(p),
                    ">" => sys.strict.push(p),
                    ">=" => sys.nonstrict.push(p),
                    other => return Err(syntax(ln, 1, format!("unknown relation {other:?}"))),
                }
            }
            Ok(Document::System(sys))
        }
        "shor" => {
            only_fields(&h, &["n", "completeness", "var_map"])?;
            let n: usize = field(&h, "n")?;
            let completeness = match field::<String>(&h, "completeness")?.as_str() {
                "total" => Completeness::Total,
                "partial" => Completeness::Partial,
                other => return Err(syntax(hl, 1, format!("unknown completeness {other:?}"))),
            };
            let var_map: Vec<usize> = field(&h, "var_map")?;
            if let Some(v) = var_map.iter().find(|&&v| v == 0 || v > n) {
                return Err(syntax(hl, 1, format!("variable index {v} outside 1..={n}")));
            }
            let mut doc = ShorDocument {
                n,
                completeness,
                var_map,
                constraints: Vec::new(),
                order: Vec::new(),
                contradictions: Vec::new(),
            };
            let in_range = |i: usize| (1..=n).contains(&i);
            for &(ln, l) in &records {
                match decode::<ShorRecord>(ln, l)? {
                    ShorRecord::Constraint { op, i, j, k } => {
                        let op = match op.as_str() {
                            "+" => ShorOp::Add,
                            "*" => ShorOp::Mul,
                            other => return Err(syntax(ln, 1, format!("unknown operation {other:?}"))),
                        };
                        if ![i, j, k].into_iter().all(in_range) {
                            return Err(syntax(ln, 1, format!("index outside 1..={n}")));
                        }
                        doc.constraints.push(ShorConstraint { i, j, k, op });
                    }
                    ShorRecord::Less { less } => {
                        if !in_range(less.0) || !in_range(less.1) {
                            return Err(syntax(ln, 1, format!("index outside 1..={n}")));
                        }
                        doc.order.push(less);
                    }
                    ShorRecord::Contradiction { contradiction } => doc.contradictions.push(contradiction),
                }
            }
            Ok(Document::Shor(doc))
        }
        "report" => {
            only_fields(&h, &["command", "seed"])?;
            let mut r = Report::new(&field::<String>(&h, "command")?, field(&h, "seed")?);
            for &(ln, l) in &records {
                let rec: ReportRecord = decode(ln, l)?;
                r.entries.push((rec.key, rec.value));
            }
            Ok(Document::Report(r))
        }
        other => Err(syntax(hl, 1, format!("unknown document kind {other:?}"))),
    }
}

macro_rules! typed_parser {
    ($name:ident, $variant:ident, $ty:ty, $kind:literal) => {
        #[doc = concat!("Parses a `", $kind, "` document.")]
        pub fn $name(text: &str) -> Result<$ty> {
            match parse_document(text)? {
                Document::$variant(x) => Ok(x),
                other => Err(syntax(1, 1, format!("expected a {} document, found {}", $kind, other.kind()))),
            }
        }
    };
}

typed_parser!(parse_points, Points, PointConfiguration, "points");
typed_parser!(parse_graph, Graph, Multigraph, "graph");
typed_parser!(parse_lattice, Lattice, FaceLattice, "lattice");
typed_parser!(parse_system, System, SemialgebraicSystem, "system");
typed_parser!(parse_shor, Shor, ShorDocument, "shor");
typed_parser!(parse_report, Report, Report, "report");
