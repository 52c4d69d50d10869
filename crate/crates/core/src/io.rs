//! Text and JSON formats: graphs, operator matrices, basis manifests,
//! coefficient tables and gauge data.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::fock::FockSpace;
use crate::fourier::CoefficientTable;
use crate::gauge::GaugeData;
use crate::graph::DirectedMultigraph;
use crate::path::Path;
use crate::sparse::SparseOperator;
use crate::C64;

/// Version stamped into every JSON report.
pub const SCHEMA_VERSION: u32 = 1;

/// Real and imaginary parts for text export.
pub trait ComplexParts {
    fn parts(&self) -> (f64, f64);
}

impl ComplexParts for i64 {
    fn parts(&self) -> (f64, f64) {
        (*self as f64, 0.0)
    }
}

impl ComplexParts for f64 {
    fn parts(&self) -> (f64, f64) {
        (*self, 0.0)
    }
}

impl ComplexParts for Ratio<i64> {
    fn parts(&self) -> (f64, f64) {
        (*self.numer() as f64 / *self.denom() as f64, 0.0)
    }
}

impl<T: ComplexParts> ComplexParts for Complex<T> {
    fn parts(&self) -> (f64, f64) {
        (self.re.parts().0, self.im.parts().0)
    }
}

fn format_err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Format(format!("line {line}: {msg}"))
}

/// Content lines with their 1-based numbers, skipping blanks and `#` comments.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_field<T: std::str::FromStr>(line: usize, s: Option<&str>, what: &str) -> Result<T> {
    let s = s.ok_or_else(|| format_err(line, format!("missing {what}")))?;
    s.parse().map_err(|_| format_err(line, format!("bad {what} `{s}`")))
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeJson {
    id: String,
    src: String,
    dst: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<String>,
    edges: Vec<EdgeJson>,
}

/// Reads `{"vertices": [..], "edges": [{"id", "src", "dst"}, ..]}`.
pub fn read_graph(text: &str) -> Result<DirectedMultigraph> {
    let gj: GraphJson = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    DirectedMultigraph::new(gj.vertices, gj.edges.into_iter().map(|e| (e.id, e.src, e.dst)))
}

pub fn graph_to_json(g: &DirectedMultigraph) -> String {
    let gj = GraphJson {
        vertices: g.vertex_labels().to_vec(),
        edges: g
            .edges()
            .iter()
            .map(|e| EdgeJson {
                id: e.label.clone(),
                src: g.vertex_label(e.src).to_string(),
                dst: g.vertex_label(e.dst).to_string(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&gj).expect("graph serializes")
}

/// `dim <d> degree <g>`, then `row col re im` per stored entry.
pub fn write_matrix<T: crate::Scalar + ComplexParts>(op: &SparseOperator<T>) -> String {
    let mut out = format!("dim {} degree {}\n", op.dim(), op.degree());
    for (r, c, v) in op.entries() {
        let (re, im) = v.parts();
        writeln!(out, "{r} {c} {re} {im}").unwrap();
    }
    out
}

pub fn read_matrix(text: &str) -> Result<SparseOperator<C64>> {
    let mut lines = content_lines(text);
    let (n, head) = lines.next().ok_or_else(|| Error::Format("empty matrix file".into()))?;
    let h: Vec<&str> = head.split_whitespace().collect();
    if h.len() != 4 || h[0] != "dim" || h[2] != "degree" {
        return Err(format_err(n, "expected `dim <d> degree <g>`"));
    }
    let dim: usize = parse_field(n, Some(h[1]), "dimension")?;
    let degree: usize = parse_field(n, Some(h[3]), "degree")?;
    let mut triplets = Vec::new();
    for (n, line) in lines {
        let mut f = line.split_whitespace();
        let r: usize = parse_field(n, f.next(), "row")?;
        let c: usize = parse_field(n, f.next(), "column")?;
        let re: f64 = parse_field(n, f.next(), "real part")?;
        let im: f64 = parse_field(n, f.next(), "imaginary part")?;
        if f.next().is_some() {
            return Err(format_err(n, "trailing fields"));
        }
        if r >= dim || c >= dim {
            return Err(format_err(n, format!("index outside dimension {dim}")));
        }
        triplets.push((r, c, Complex::new(re, im)));
    }
    Ok(SparseOperator::from_triplets(dim, degree, triplets))
}

/// `basis <index> <path>` per basis vector.
pub fn write_basis(space: &FockSpace) -> String {
    let g = space.graph();
    let mut out = String::new();
    for (i, p) in space.table().paths().iter().enumerate() {
        writeln!(out, "basis {i} {}", p.display(g)).unwrap();
    }
    out
}

/// `path re im` per nonzero coefficient, in table order.
pub fn write_coefficients<T: crate::Scalar + ComplexParts>(g: &DirectedMultigraph, tbl: &CoefficientTable<T>) -> String {
    let mut out = String::new();
    for (p, v) in tbl.iter() {
        let (re, im) = v.parts();
        writeln!(out, "{} {re} {im}", p.display(g)).unwrap();
    }
    out
}

pub fn read_coefficients(g: &DirectedMultigraph, text: &str) -> Result<CoefficientTable<C64>> {
    let mut tbl = CoefficientTable::new();
    for (n, line) in content_lines(text) {
        let mut f = line.split_whitespace();
        let path = f.next().ok_or_else(|| format_err(n, "missing path"))?;
        let p = Path::parse(g, path).map_err(|e| format_err(n, e))?;
        let re: f64 = parse_field(n, f.next(), "real part")?;
        let im: f64 = parse_field(n, f.next(), "imaginary part")?;
        if f.next().is_some() {
            return Err(format_err(n, "trailing fields"));
        }
        tbl.add(p, Complex::new(re, im));
    }
    Ok(tbl)
}

#[derive(Debug, Serialize, Deserialize)]
struct GaugeJson {
    #[serde(default)]
    schema_version: Option<u32>,
    /// Row-major `[re, im]` entries keyed `"src->dst"`.
    blocks: BTreeMap<String, Vec<Vec<[f64; 2]>>>,
}

pub fn read_gauge(g: &DirectedMultigraph, text: &str) -> Result<GaugeData<f64>> {
    let gj: GaugeJson = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    let mut blocks = BTreeMap::new();
    for (key, rows) in gj.blocks {
        let (s, r) = key
            .split_once("->")
            .ok_or_else(|| Error::Format(format!("gauge key `{key}` is not `src->dst`")))?;
        let k = (g.vertex(s.trim())?, g.vertex(r.trim())?);
        let block = rows
            .into_iter()
            .map(|row| row.into_iter().map(|[re, im]| Complex::new(re, im)).collect())
            .collect();
        blocks.insert(k, block);
    }
    Ok(GaugeData { blocks })
}

pub fn gauge_to_json(g: &DirectedMultigraph, gd: &GaugeData<f64>) -> String {
    let gj = GaugeJson {
        schema_version: Some(SCHEMA_VERSION),
        blocks: gd
            .blocks
            .iter()
            .map(|(&(s, r), b)| {
                let key = format!("{}->{}", g.vertex_label(s), g.vertex_label(r));
                (key, b.iter().map(|row| row.iter().map(|z| [z.re, z.im]).collect()).collect())
            })
            .collect(),
    };
    serde_json::to_string_pretty(&gj).expect("gauge data serializes")
}

/// Wraps a report body as `{"schema_version", "kind", ..body}`.
pub fn report(kind: &str, body: Value) -> Value {
    let mut m = serde_json::Map::new();
    m.insert("schema_version".into(), SCHEMA_VERSION.into());
    m.insert("kind".into(), kind.into());
    match body {
        Value::Object(o) => m.extend(o),
        other => {
            m.insert("data".into(), other);
        }
    }
    Value::Object(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::graph::VertexId;

    #[test]
    fn graph_roundtrip() {
        for (_, g) in corpus::all() {
            assert_eq!(read_graph(&graph_to_json(&g)).unwrap(), g);
        }
        let g = read_graph(r#"{"vertices":["x1","x2"],"edges":[{"id":"e1","src":"x1","dst":"x2"}]}"#).unwrap();
        assert_eq!(g.source(crate::EdgeId(0)), VertexId(0));
        assert_eq!(g.range(crate::EdgeId(0)), VertexId(1));
        assert!(read_graph(r#"{"vertices":["x"],"edges":[{"id":"e","src":"x","dst":"z"}]}"#).is_err());
        assert!(read_graph(r#"{"vertices":["x-1"],"edges":[]}"#).is_err());
        assert!(read_graph("{").is_err());
    }

    #[test]
    fn matrix_roundtrip() {
        let g = corpus::loop_tail();
        let s = FockSpace::new(&g, 3).unwrap();
        let a: SparseOperator<i64> = &s.left(crate::EdgeId(0)) * &s.left(crate::EdgeId(0));
        let text = write_matrix(&a);
        assert!(text.starts_with(&format!("dim {} degree 2\n", s.dim())));
        let back = read_matrix(&text).unwrap();
        assert_eq!(back, a.map(|v| Complex::new(*v as f64, 0.0)));
        assert!(read_matrix("dim 2 degree 0\n5 0 1 0\n").is_err());
        assert!(read_matrix("dim 2 degree 0\n0 0 x 0\n").is_err());
        assert!(read_matrix("size 2\n").is_err());
        assert!(write_basis(&s).lines().any(|l| l == "basis 0 x"));
    }

    #[test]
    fn coefficient_roundtrip() {
        let g = corpus::loop_tail();
        let text = "# a comment\nx 1 0\ne.e 0.5 -2\nf.e 0 1\n";
        let t = read_coefficients(&g, text).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(read_coefficients(&g, &write_coefficients(&g, &t)).unwrap(), t);
        assert!(read_coefficients(&g, "e.f 1 0\n").is_err());
    }

    #[test]
    fn gauge_roundtrip() {
        let g = corpus::loops(2);
        let text = r#"{"blocks": {"x->x": [[[0,0],[1,0]],[[1,0],[0,0]]]}}"#;
        let gd = read_gauge(&g, text).unwrap();
        assert_eq!(gd.blocks[&(VertexId(0), VertexId(0))][0][1], Complex::new(1.0, 0.0));
        assert_eq!(read_gauge(&g, &gauge_to_json(&g, &gd)).unwrap(), gd);
        assert!(read_gauge(&g, r#"{"blocks": {"x=>x": []}}"#).is_err());
    }

    #[test]
    fn reports_carry_the_schema_version() {
        let r = report("radical", serde_json::json!({"semisimple": true}));
        assert_eq!(r["schema_version"], SCHEMA_VERSION);
        assert_eq!(r["semisimple"], true);
    }
}
