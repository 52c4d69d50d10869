use super::scc::strongly_connected_components;
use super::{DirectedMultigraph, EdgeId, VertexId};

/// Two distinct primitive cycles based at the same vertex, as edge lists in
/// application order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleCycle {
    pub vertex: VertexId,
    pub first: Vec<EdgeId>,
    pub second: Vec<EdgeId>,
}

/// Outcome of the strong double-cycle test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongDoubleCycle {
    /// For each vertex: the base vertex reached and the connecting path.
    /// Empty when the property fails.
    pub witnesses: Vec<(VertexId, Vec<EdgeId>)>,
    /// Vertices reaching no double-cycle vertex.
    pub failing: Vec<VertexId>,
}

impl StrongDoubleCycle {
    pub fn holds(&self) -> bool {
        self.failing.is_empty()
    }
}

/// One double cycle per strongly connected component whose internal edges
/// outnumber its vertices, in component order.
///
/// The base is the smallest vertex with two internal out-edges `a`, `b`; each
/// cycle is its first edge followed by a shortest path home, so neither
/// revisits the base and the two differ in their first letter.
pub fn double_cycles(g: &DirectedMultigraph) -> Vec<DoubleCycle> {
    let comps = strongly_connected_components(g);
    let mut out = Vec::new();
    for (c, members) in comps.components.iter().enumerate() {
        let internal = comps.internal_edges(g, c);
        if internal.len() <= members.len() {
            continue;
        }
        let inside = |e: EdgeId| comps.component_of[g.range(e).0] == c;
        let base = members
            .iter()
            .copied()
            .find(|&v| g.out_edges(v).iter().filter(|&&e| inside(e)).count() >= 2)
            .expect("an excess component has a vertex of internal out-degree two");
        let mut firsts = g.out_edges(base).iter().copied().filter(|&e| inside(e));
        let (a, b) = (firsts.next().unwrap(), firsts.next().unwrap());
        let close = |e: EdgeId| {
            let mut cyc = vec![e];
            cyc.extend(
                g.shortest_path(g.range(e), base)
                    .expect("component is strongly connected"),
            );
            cyc
        };
        out.push(DoubleCycle {
            vertex: base,
            first: close(a),
            second: close(b),
        });
    }
    out
}

/// A double-cycle witness, if the graph has one.
pub fn has_double_cycle(g: &DirectedMultigraph) -> Option<DoubleCycle> {
    double_cycles(g).into_iter().next()
}

/// Whether every vertex reaches a double-cycle vertex; paths of length zero
/// count. Witness paths lead to the nearest base vertex of [`double_cycles`].
pub fn has_strong_double_cycle(g: &DirectedMultigraph) -> StrongDoubleCycle {
    let bases: Vec<VertexId> = double_cycles(g).iter().map(|d| d.vertex).collect();
    let mut witnesses = Vec::with_capacity(g.vertex_count());
    let mut failing = Vec::new();
    for v in g.vertex_ids() {
        match g.shortest_path_to_any(v, |u| bases.contains(&u)) {
            Some(w) => witnesses.push(w),
            None => failing.push(v),
        }
    }
    if !failing.is_empty() {
        witnesses.clear();
    }
    StrongDoubleCycle { witnesses, failing }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn is_cycle_at(g: &DirectedMultigraph, x: VertexId, c: &[EdgeId]) -> bool {
        !c.is_empty()
            && g.source(c[0]) == x
            && g.range(*c.last().unwrap()) == x
            && c.windows(2).all(|p| g.range(p[0]) == g.source(p[1]))
    }

    fn primitive(c: &[EdgeId]) -> bool {
        (1..c.len()).all(|d| c.len() % d != 0 || c[d..] != c[..c.len() - d])
    }

    #[test]
    fn two_loops_give_the_loops() {
        let g = corpus::loops(2);
        let d = has_double_cycle(&g).unwrap();
        assert_eq!(d.first, vec![EdgeId(0)]);
        assert_eq!(d.second, vec![EdgeId(1)]);
    }

    #[test]
    fn witnesses_are_distinct_primitive_cycles() {
        for (name, g) in corpus::all() {
            if let Some(d) = has_double_cycle(&g) {
                assert!(is_cycle_at(&g, d.vertex, &d.first), "{name}");
                assert!(is_cycle_at(&g, d.vertex, &d.second), "{name}");
                assert_ne!(d.first, d.second);
                assert!(primitive(&d.first) && primitive(&d.second), "{name}");
            }
        }
    }

    #[test]
    fn cycles_and_disjoint_loops_have_none() {
        for n in 1..6 {
            assert!(has_double_cycle(&corpus::cycle(n)).is_none());
        }
        assert!(has_double_cycle(&corpus::loop_bridge_loop()).is_none());
    }

    #[test]
    fn strong_property_examples() {
        let s = has_strong_double_cycle(&corpus::loops(2));
        assert!(s.holds());
        assert!(s.witnesses.iter().all(|(_, p)| p.is_empty()));

        let g = corpus::double_loop_return();
        let s = has_strong_double_cycle(&g);
        assert!(s.holds());
        let x2 = g.vertex("x2").unwrap();
        assert_eq!(s.witnesses[x2.0].1, vec![g.edge_id("e4").unwrap()]);

        let s = has_strong_double_cycle(&corpus::cycle(3));
        assert!(!s.holds());
        assert_eq!(s.failing.len(), 3);
    }

    #[test]
    fn decision_is_transpose_invariant() {
        for (name, g) in corpus::all() {
            assert_eq!(
                has_double_cycle(&g).is_some(),
                has_double_cycle(&g.transpose()).is_some(),
                "{name}"
            );
        }
    }
}
