//! Paths of the free semigroupoid and their enumeration up to a length.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{DirectedMultigraph, EdgeId, VertexId};
use crate::scalar::Scalar;

/// A vertex (degenerate path) or an admissible edge sequence.
///
/// Edges are stored first-applied-first; the display form reverses them, so
/// `edges = [e1, e2]` prints as `e2.e1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    src: VertexId,
    dst: VertexId,
    edges: Vec<EdgeId>,
}

impl Path {
    pub fn vertex(v: VertexId) -> Self {
        Path {
            src: v,
            dst: v,
            edges: Vec::new(),
        }
    }

    pub fn edge(g: &DirectedMultigraph, e: EdgeId) -> Self {
        Path {
            src: g.source(e),
            dst: g.range(e),
            edges: vec![e],
        }
    }

    /// Builds a word from edges in application order, checking admissibility.
    pub fn word(g: &DirectedMultigraph, edges: Vec<EdgeId>) -> Result<Self> {
        let Some(&first) = edges.first() else {
            return Err(Error::InadmissiblePath("empty edge sequence".into()));
        };
        for pair in edges.windows(2) {
            if g.range(pair[0]) != g.source(pair[1]) {
                return Err(Error::InadmissiblePath(format!(
                    "{} cannot follow {}",
                    g.edge(pair[1]).label,
                    g.edge(pair[0]).label
                )));
            }
        }
        let last = *edges.last().unwrap();
        Ok(Path {
            src: g.source(first),
            dst: g.range(last),
            edges,
        })
    }

    pub(crate) fn from_parts(src: VertexId, dst: VertexId, edges: Vec<EdgeId>) -> Self {
        Path { src, dst, edges }
    }

    /// `s(w)`.
    pub fn source(&self) -> VertexId {
        self.src
    }

    /// `r(w)`.
    pub fn range(&self) -> VertexId {
        self.dst
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_vertex(&self) -> bool {
        self.edges.is_empty()
    }

    /// Edges in application order.
    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    /// `self · right`: `right` is applied first. `None` unless `s(self) = r(right)`.
    pub fn try_concat(&self, right: &Path) -> Option<Path> {
        if self.src != right.dst {
            return None;
        }
        let mut edges = Vec::with_capacity(self.len() + right.len());
        edges.extend_from_slice(&right.edges);
        edges.extend_from_slice(&self.edges);
        Some(Path {
            src: right.src,
            dst: self.dst,
            edges,
        })
    }

    /// `self · right`, with an error naming both paths when inadmissible.
    pub fn concat(&self, right: &Path, g: &DirectedMultigraph) -> Result<Path> {
        self.try_concat(right)
            .ok_or_else(|| Error::InadmissibleConcatenation {
                left: self.display(g).to_string(),
                right: right.display(g).to_string(),
            })
    }

    /// `w(λ)`: the product of `λ(e)` over the letters; vertices give 1.
    pub fn eval<T: Scalar>(&self, lambda: impl Fn(EdgeId) -> T) -> T {
        self.edges
            .iter()
            .fold(T::one(), |acc, &e| acc * lambda(e))
    }

    pub fn display<'a>(&'a self, g: &'a DirectedMultigraph) -> PathDisplay<'a> {
        PathDisplay { path: self, graph: g }
    }

    /// Parses `e3.e2.e1` or a bare vertex label.
    pub fn parse(g: &DirectedMultigraph, text: &str) -> Result<Path> {
        let text = text.trim();
        if !text.contains('.') {
            match (g.lookup_vertex(text), g.lookup_edge(text)) {
                (Some(_), Some(_)) => return Err(Error::AmbiguousLabel(text.to_string())),
                (Some(v), None) => return Ok(Path::vertex(v)),
                (None, Some(e)) => return Ok(Path::edge(g, e)),
                (None, None) => return Err(Error::UnknownPath(text.to_string())),
            }
        }
        let mut edges = text
            .split('.')
            .map(|l| g.edge_id(l.trim()))
            .collect::<Result<Vec<_>>>()?;
        edges.reverse();
        Path::word(g, edges)
    }
}

/// Canonical order: length, then edge indices first-applied-first, with
/// vertices ordered by index.
impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.edges.cmp(&other.edges))
            .then_with(|| self.src.cmp(&other.src))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub struct PathDisplay<'a> {
    path: &'a Path,
    graph: &'a DirectedMultigraph,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_vertex() {
            return f.write_str(self.graph.vertex_label(self.path.src));
        }
        for (i, e) in self.path.edges.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            f.write_str(&self.graph.edge(*e).label)?;
        }
        Ok(())
    }
}

/// Number of paths of each length `0..=level`, as entry sums of powers of
/// the transition matrix. Saturates instead of overflowing.
pub fn path_counts(g: &DirectedMultigraph, level: usize) -> Vec<u128> {
    let n = g.vertex_count();
    let a = g.transition_matrix();
    // ends[v] = number of length-k paths with range v
    let mut ends: Vec<u128> = vec![1; n];
    let mut counts = Vec::with_capacity(level + 1);
    for k in 0..=level {
        counts.push(ends.iter().fold(0u128, |s, &c| s.saturating_add(c)));
        if k == level {
            break;
        }
        let mut next = vec![0u128; n];
        for (y, row) in a.iter().enumerate() {
            for (x, &m) in row.iter().enumerate() {
                next[y] = next[y].saturating_add((m as u128).saturating_mul(ends[x]));
            }
        }
        ends = next;
    }
    counts
}

/// Default limit on the number of basis paths.
pub const DEFAULT_SIZE_CAP: usize = 4_000_000;

/// All paths of length at most `level`, in canonical order.
#[derive(Debug, Clone)]
pub struct PathTable {
    graph: DirectedMultigraph,
    level: usize,
    paths: Vec<Path>,
    level_start: Vec<usize>,
    index: HashMap<Path, usize>,
    // first child slot of each word path; children w·e are contiguous in e order
    child_start: Vec<usize>,
    // position of each edge among the out-edges of its source
    out_position: Vec<usize>,
}

impl PathTable {
    pub fn new(g: &DirectedMultigraph, level: usize) -> Result<Self> {
        Self::with_cap(g, level, DEFAULT_SIZE_CAP)
    }

    pub fn with_cap(g: &DirectedMultigraph, level: usize, cap: usize) -> Result<Self> {
        let total = path_counts(g, level)
            .iter()
            .fold(0u128, |s, &c| s.saturating_add(c));
        if total > cap as u128 {
            return Err(Error::SizeCap {
                requested: total,
                cap,
            });
        }
        let total = total as usize;
        let mut paths: Vec<Path> = Vec::with_capacity(total);
        let mut level_start = vec![0usize];
        paths.extend(g.vertex_ids().map(Path::vertex));
        let mut child_start = vec![usize::MAX; total];
        if level >= 1 {
            level_start.push(paths.len());
            paths.extend(g.edge_ids().map(|e| Path::edge(g, e)));
        }
        for _ in 2..=level {
            let (lo, hi) = (level_start[level_start.len() - 1], paths.len());
            level_start.push(hi);
            for i in lo..hi {
                child_start[i] = paths.len();
                let (src, dst) = (paths[i].src, paths[i].dst);
                for &e in g.out_edges(dst) {
                    let mut edges = Vec::with_capacity(paths[i].len() + 1);
                    edges.extend_from_slice(&paths[i].edges);
                    edges.push(e);
                    paths.push(Path::from_parts(src, g.range(e), edges));
                }
            }
        }
        level_start.push(paths.len());
        debug_assert_eq!(paths.len(), total);
        let index = paths
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let mut out_position = vec![0usize; g.edge_count()];
        for v in g.vertex_ids() {
            for (k, e) in g.out_edges(v).iter().enumerate() {
                out_position[e.0] = k;
            }
        }
        Ok(PathTable {
            graph: g.clone(),
            level,
            paths,
            level_start,
            index,
            child_start,
            out_position,
        })
    }

    pub fn graph(&self) -> &DirectedMultigraph {
        &self.graph
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn path(&self, i: usize) -> &Path {
        &self.paths[i]
    }

    pub fn index_of(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Index range of the paths of length `k`.
    pub fn level_range(&self, k: usize) -> std::ops::Range<usize> {
        if k > self.level {
            let end = self.paths.len();
            return end..end;
        }
        self.level_start[k]..self.level_start[k + 1]
    }

    /// Index of `ξ_x`.
    pub fn vertex_index(&self, v: VertexId) -> usize {
        v.0
    }

    /// Index of `e·w` (the path `w` followed by `e`), if admissible and within level.
    pub fn extend_index(&self, i: usize, e: EdgeId) -> Option<usize> {
        let p = &self.paths[i];
        if self.graph.source(e) != p.dst || p.len() >= self.level {
            return None;
        }
        if p.is_vertex() {
            Some(self.level_start[1] + e.0)
        } else {
            Some(self.child_start[i] + self.out_position[e.0])
        }
    }

    /// Index of `w` with its last applied edge removed; `None` for vertices.
    pub fn parent_index(&self, i: usize) -> Option<usize> {
        let p = &self.paths[i];
        let (_, rest) = p.edges.split_last()?;
        if rest.is_empty() {
            return Some(p.src.0);
        }
        let dst = self.graph.range(*rest.last().unwrap());
        self.index_of(&Path::from_parts(p.src, dst, rest.to_vec()))
    }

    /// Index of `w·e` (`e` applied first), if admissible and within level.
    pub fn prepend_index(&self, i: usize, e: EdgeId) -> Option<usize> {
        let p = &self.paths[i];
        if self.graph.range(e) != p.src || p.len() >= self.level {
            return None;
        }
        if p.is_vertex() {
            return Some(self.level_start[1] + e.0);
        }
        let mut edges = Vec::with_capacity(p.len() + 1);
        edges.push(e);
        edges.extend_from_slice(&p.edges);
        self.index_of(&Path::from_parts(self.graph.source(e), p.dst, edges))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn enumeration_sizes() {
        assert_eq!(PathTable::new(&corpus::fork(), 2).unwrap().len(), 5);
        assert_eq!(PathTable::new(&corpus::loops(2), 3).unwrap().len(), 15);
        assert_eq!(PathTable::new(&corpus::cycle(3), 5).unwrap().len(), 18);
    }

    #[test]
    fn canonical_order_is_sorted_and_indexed() {
        for (_, g) in corpus::all() {
            let t = PathTable::new(&g, 4).unwrap();
            assert!(t.paths().windows(2).all(|w| w[0] < w[1]));
            for (i, p) in t.paths().iter().enumerate() {
                assert_eq!(t.index_of(p), Some(i));
                if !p.is_vertex() {
                    assert!(Path::word(&g, p.edges().to_vec()).is_ok());
                }
            }
        }
    }

    #[test]
    fn extension_indices_match_hash_lookup() {
        for (_, g) in corpus::all() {
            let t = PathTable::new(&g, 3).unwrap();
            for i in 0..t.len() {
                for e in g.edge_ids() {
                    let ep = Path::edge(&g, e);
                    let want = ep
                        .try_concat(t.path(i))
                        .filter(|p| p.len() <= 3)
                        .and_then(|p| t.index_of(&p));
                    assert_eq!(t.extend_index(i, e), want);
                    let want = t
                        .path(i)
                        .try_concat(&ep)
                        .filter(|p| p.len() <= 3)
                        .and_then(|p| t.index_of(&p));
                    assert_eq!(t.prepend_index(i, e), want);
                }
            }
        }
    }

    #[test]
    fn concatenation_and_units() {
        let g = corpus::loop_bridge_loop();
        let (x, e, f) = (
            Path::vertex(g.vertex("x").unwrap()),
            Path::parse(&g, "e").unwrap(),
            Path::parse(&g, "f").unwrap(),
        );
        assert_eq!(x.concat(&x, &g).unwrap(), x);
        let fe = f.concat(&e, &g).unwrap();
        assert_eq!(fe.display(&g).to_string(), "f.e");
        assert_eq!(fe.source(), g.vertex("x").unwrap());
        assert_eq!(fe.range(), g.vertex("y").unwrap());
        assert!(matches!(
            e.concat(&f, &g),
            Err(Error::InadmissibleConcatenation { .. })
        ));
        let y = Path::vertex(g.vertex("y").unwrap());
        assert_eq!(y.concat(&fe, &g).unwrap(), fe);
        assert_eq!(fe.concat(&x, &g).unwrap(), fe);
    }

    #[test]
    fn evaluation_is_multiplicative() {
        use num_complex::Complex64 as C;
        let g = corpus::loops(2);
        let w = Path::parse(&g, "e2.e1").unwrap();
        let lam = |e: EdgeId| if e.0 == 0 { C::new(0.2, 0.0) } else { C::new(0.0, 0.3) };
        assert!((w.eval(lam) - C::new(0.0, 0.06)).norm() < 1e-15);
        let e3 = Path::parse(&g, "e1.e1.e1").unwrap();
        assert_eq!(e3.eval(|_| 0.5f64), 0.125);
        assert_eq!(Path::vertex(VertexId(0)).eval(|_| 7i64), 1);
    }

    #[test]
    fn counts_follow_matrix_powers() {
        let g = corpus::fibonacci();
        assert_eq!(path_counts(&g, 5), vec![2, 3, 5, 8, 13, 21]);
    }

    #[test]
    fn size_cap_is_enforced_before_enumeration() {
        let err = PathTable::with_cap(&corpus::loops(3), 30, 1000).unwrap_err();
        assert!(matches!(err, Error::SizeCap { .. }));
    }

    #[test]
    fn parse_rejects_bad_paths() {
        let g = corpus::loop_tail();
        assert!(matches!(Path::parse(&g, "e.f"), Err(Error::InadmissiblePath(_))));
        assert!(matches!(Path::parse(&g, "zz"), Err(Error::UnknownPath(_))));
        let amb = DirectedMultigraph::new(["a"], [("a", "a", "a")]).unwrap();
        assert!(matches!(Path::parse(&amb, "a"), Err(Error::AmbiguousLabel(_))));
    }
}
