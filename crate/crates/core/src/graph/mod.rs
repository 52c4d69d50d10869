//! Finite directed multigraphs and the graph-theoretic computations the
//! operator algebra reduces to.

mod cycles;
mod iso;
mod scc;

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

pub use cycles::{DoubleCycle, StrongDoubleCycle};
pub use iso::Isomorphism;
pub use scc::Components;

/// Index of a vertex in its graph's vertex list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

/// Index of an edge in its graph's edge list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub label: String,
    /// Source vertex `s(e)`.
    pub src: VertexId,
    /// Range vertex `r(e)`.
    pub dst: VertexId,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.src == self.dst
    }
}

/// Square integer matrix indexed by vertices; entry `[y][x]` counts edges `x -> y`.
pub type TransitionMatrix = Vec<Vec<usize>>;

pub(crate) fn valid_label(label: &str) -> bool {
    !label.is_empty() && label.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

/// A finite directed graph with labelled vertices and labelled, possibly
/// parallel, edges (loops allowed).
#[derive(Debug, Clone)]
pub struct DirectedMultigraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    vertex_index: HashMap<String, VertexId>,
    edge_index: HashMap<String, EdgeId>,
    out_edges: Vec<Vec<EdgeId>>,
    in_edges: Vec<Vec<EdgeId>>,
}

impl PartialEq for DirectedMultigraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges
    }
}

impl Eq for DirectedMultigraph {}

impl DirectedMultigraph {
    /// Builds a graph from vertex labels and `(edge, src, dst)` triples.
    pub fn new<V, E, S>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        E: IntoIterator<Item = (S, S, S)>,
        S: Into<String>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        if vertices.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut vertex_index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if !valid_label(v) {
                return Err(Error::InvalidLabel(v.clone()));
            }
            if vertex_index.insert(v.clone(), VertexId(i)).is_some() {
                return Err(Error::DuplicateVertex(v.clone()));
            }
        }
        let mut built = Vec::new();
        let mut edge_index = HashMap::new();
        for (label, src, dst) in edges {
            let (label, src, dst): (String, String, String) = (label.into(), src.into(), dst.into());
            if !valid_label(&label) {
                return Err(Error::InvalidLabel(label));
            }
            let s = *vertex_index.get(&src).ok_or(Error::UnknownVertex(src))?;
            let d = *vertex_index.get(&dst).ok_or(Error::UnknownVertex(dst))?;
            if edge_index.insert(label.clone(), EdgeId(built.len())).is_some() {
                return Err(Error::DuplicateEdge(label));
            }
            built.push(Edge { label, src: s, dst: d });
        }
        Ok(Self::assemble(vertices, built, vertex_index, edge_index))
    }

    fn assemble(
        vertices: Vec<String>,
        edges: Vec<Edge>,
        vertex_index: HashMap<String, VertexId>,
        edge_index: HashMap<String, EdgeId>,
    ) -> Self {
        let mut out_edges = vec![Vec::new(); vertices.len()];
        let mut in_edges = vec![Vec::new(); vertices.len()];
        for (i, e) in edges.iter().enumerate() {
            out_edges[e.src.0].push(EdgeId(i));
            in_edges[e.dst.0].push(EdgeId(i));
        }
        DirectedMultigraph {
            vertices,
            edges,
            vertex_index,
            edge_index,
            out_edges,
            in_edges,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_ids(&self) -> impl DoubleEndedIterator<Item = VertexId> + ExactSizeIterator + '_ {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl DoubleEndedIterator<Item = EdgeId> + ExactSizeIterator + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn vertex_label(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertices
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn source(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].src
    }

    pub fn range(&self, e: EdgeId) -> VertexId {
        self.edges[e.0].dst
    }

    pub fn vertex(&self, label: &str) -> Result<VertexId> {
        self.vertex_index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    pub fn edge_id(&self, label: &str) -> Result<EdgeId> {
        self.edge_index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownEdge(label.to_string()))
    }

    pub(crate) fn lookup_vertex(&self, label: &str) -> Option<VertexId> {
        self.vertex_index.get(label).copied()
    }

    pub(crate) fn lookup_edge(&self, label: &str) -> Option<EdgeId> {
        self.edge_index.get(label).copied()
    }

    /// Edges leaving `v`, in edge order.
    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out_edges[v.0]
    }

    /// Edges entering `v`, in edge order.
    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.in_edges[v.0]
    }

    pub fn loops_at(&self, v: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.out_edges[v.0]
            .iter()
            .copied()
            .filter(move |&e| self.edges[e.0].dst == v)
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(Edge::is_loop)
    }

    /// Transition matrix with `[y][x]` = number of edges from `x` to `y`.
    pub fn transition_matrix(&self) -> TransitionMatrix {
        let n = self.vertices.len();
        let mut a = vec![vec![0usize; n]; n];
        for e in &self.edges {
            a[e.dst.0][e.src.0] += 1;
        }
        a
    }

    /// Reverses every edge. Edge labels and indices are kept, so the edge
    /// `e^t` of the transpose is addressed by the same label as `e`.
    pub fn transpose(&self) -> Self {
        let edges = self
            .edges
            .iter()
            .map(|e| Edge {
                label: e.label.clone(),
                src: e.dst,
                dst: e.src,
            })
            .collect();
        Self::assemble(
            self.vertices.clone(),
            edges,
            self.vertex_index.clone(),
            self.edge_index.clone(),
        )
    }

    /// Glues `g2` onto `g1` by identifying `x1` with `x2`.
    ///
    /// Labels are prefixed with `g1_` / `g2_`; the shared vertex keeps the
    /// prefixed label of `x1`. Vertex order: all of `g1`, then `g2` without `x2`.
    pub fn amalgamate(g1: &Self, g2: &Self, x1: &str, x2: &str) -> Result<Self> {
        let x1 = g1.vertex(x1)?;
        let x2 = g2.vertex(x2)?;
        let mut vertices: Vec<String> = g1.vertices.iter().map(|v| format!("g1_{v}")).collect();
        let mut map2 = vec![0usize; g2.vertex_count()];
        for (i, v) in g2.vertices.iter().enumerate() {
            if i == x2.0 {
                map2[i] = x1.0;
            } else {
                map2[i] = vertices.len();
                vertices.push(format!("g2_{v}"));
            }
        }
        let mut edges = Vec::with_capacity(g1.edge_count() + g2.edge_count());
        for e in &g1.edges {
            edges.push((
                format!("g1_{}", e.label),
                vertices[e.src.0].clone(),
                vertices[e.dst.0].clone(),
            ));
        }
        for e in &g2.edges {
            edges.push((
                format!("g2_{}", e.label),
                vertices[map2[e.src.0]].clone(),
                vertices[map2[e.dst.0]].clone(),
            ));
        }
        Self::new(vertices.clone(), edges)
    }

    /// Breadth-first shortest path from `from` to `to`, as edges in
    /// application order. Ties are broken by edge order.
    pub fn shortest_path(&self, from: VertexId, to: VertexId) -> Option<Vec<EdgeId>> {
        self.shortest_path_to_any(from, |v| v == to).map(|(_, p)| p)
    }

    /// Shortest path from `from` to the first vertex satisfying `target`
    /// (length 0 when `from` itself qualifies).
    pub fn shortest_path_to_any(
        &self,
        from: VertexId,
        target: impl Fn(VertexId) -> bool,
    ) -> Option<(VertexId, Vec<EdgeId>)> {
        let n = self.vertex_count();
        let mut parent: Vec<Option<EdgeId>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        seen[from.0] = true;
        queue.push_back(from);
        while let Some(v) = queue.pop_front() {
            if target(v) {
                let mut path = Vec::new();
                let mut cur = v;
                while cur != from {
                    let e = parent[cur.0].expect("visited vertex has a parent edge");
                    path.push(e);
                    cur = self.source(e);
                }
                path.reverse();
                return Some((v, path));
            }
            for &e in &self.out_edges[v.0] {
                let w = self.range(e);
                if !seen[w.0] {
                    seen[w.0] = true;
                    parent[w.0] = Some(e);
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// Vertices reachable from `from` by a path of length ≥ 0.
    pub fn reachable_from(&self, from: VertexId) -> Vec<bool> {
        let mut seen = vec![false; self.vertex_count()];
        let mut stack = vec![from];
        seen[from.0] = true;
        while let Some(v) = stack.pop() {
            for &e in &self.out_edges[v.0] {
                let w = self.range(e);
                if !seen[w.0] {
                    seen[w.0] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }
}

impl fmt::Display for DirectedMultigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G(V={{{}}}, E={{", self.vertices.join(","))?;
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(
                f,
                "{}:{}->{}",
                e.label, self.vertices[e.src.0], self.vertices[e.dst.0]
            )?;
        }
        write!(f, "}})")
    }
}


pub use cycles::{double_cycles, has_double_cycle, has_strong_double_cycle};
pub use iso::find_isomorphism;
pub use scc::{off_cycle_edges, strongly_connected_components};
