use super::scc::strongly_connected_components;
use super::{DirectedMultigraph, EdgeId, VertexId};

/// A graph isomorphism `g1 -> g2` preserving sources and ranges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isomorphism {
    /// `vertex_map[v]` is the image of vertex `v` of the first graph.
    pub vertex_map: Vec<VertexId>,
    /// `edge_map[e]` is the image of edge `e` of the first graph.
    pub edge_map: Vec<EdgeId>,
}

impl Isomorphism {
    pub fn identity(g: &DirectedMultigraph) -> Self {
        Isomorphism {
            vertex_map: g.vertex_ids().collect(),
            edge_map: g.edge_ids().collect(),
        }
    }

    /// Checks bijectivity and that every edge keeps its endpoints.
    pub fn is_valid(&self, g1: &DirectedMultigraph, g2: &DirectedMultigraph) -> bool {
        if self.vertex_map.len() != g1.vertex_count()
            || self.edge_map.len() != g1.edge_count()
            || g1.vertex_count() != g2.vertex_count()
            || g1.edge_count() != g2.edge_count()
        {
            return false;
        }
        let mut seen_v = vec![false; g2.vertex_count()];
        for v in &self.vertex_map {
            if v.0 >= seen_v.len() || std::mem::replace(&mut seen_v[v.0], true) {
                return false;
            }
        }
        let mut seen_e = vec![false; g2.edge_count()];
        for (i, f) in self.edge_map.iter().enumerate() {
            if f.0 >= seen_e.len() || std::mem::replace(&mut seen_e[f.0], true) {
                return false;
            }
            let e = EdgeId(i);
            if self.vertex_map[g1.source(e).0] != g2.source(*f)
                || self.vertex_map[g1.range(e).0] != g2.range(*f)
            {
                return false;
            }
        }
        true
    }
}

type Signature = (usize, usize, usize, usize);

fn signatures(g: &DirectedMultigraph) -> Vec<Signature> {
    let comps = strongly_connected_components(g);
    g.vertex_ids()
        .map(|v| {
            (
                g.in_edges(v).len(),
                g.out_edges(v).len(),
                g.loops_at(v).count(),
                comps.components[comps.component_of[v.0]].len(),
            )
        })
        .collect()
}

/// Backtracking search for an isomorphism, assigning vertices of `g1` in
/// order and pruning by degree/loop/component-size signatures and edge
/// multiplicities. Returns the first witness found.
pub fn find_isomorphism(g1: &DirectedMultigraph, g2: &DirectedMultigraph) -> Option<Isomorphism> {
    let n = g1.vertex_count();
    if n != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return None;
    }
    let (s1, s2) = (signatures(g1), signatures(g2));
    let mut ms1 = s1.clone();
    let mut ms2 = s2.clone();
    ms1.sort_unstable();
    ms2.sort_unstable();
    if ms1 != ms2 {
        return None;
    }
    let (a1, a2) = (g1.transition_matrix(), g2.transition_matrix());
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if !assign(0, &s1, &s2, &a1, &a2, &mut map, &mut used) {
        return None;
    }

    // Within each (src, dst) class the multiplicities agree, so pair edges in order.
    let mut pools: std::collections::HashMap<(usize, usize), Vec<EdgeId>> =
        std::collections::HashMap::new();
    for f in g2.edge_ids().rev() {
        pools
            .entry((g2.source(f).0, g2.range(f).0))
            .or_default()
            .push(f);
    }
    let edge_map = g1
        .edge_ids()
        .map(|e| {
            let key = (map[g1.source(e).0], map[g1.range(e).0]);
            pools.get_mut(&key).and_then(Vec::pop).expect("multiplicities checked")
        })
        .collect();
    Some(Isomorphism {
        vertex_map: map.into_iter().map(VertexId).collect(),
        edge_map,
    })
}

fn assign(
    v: usize,
    s1: &[Signature],
    s2: &[Signature],
    a1: &[Vec<usize>],
    a2: &[Vec<usize>],
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if v == map.len() {
        return true;
    }
    for cand in 0..map.len() {
        if used[cand] || s1[v] != s2[cand] {
            continue;
        }
        let consistent = (0..v).all(|u| {
            let w = map[u];
            a1[v][u] == a2[cand][w] && a1[u][v] == a2[w][cand]
        }) && a1[v][v] == a2[cand][cand];
        if !consistent {
            continue;
        }
        map[v] = cand;
        used[cand] = true;
        if assign(v + 1, s1, s2, a1, a2, map, used) {
            return true;
        }
        used[cand] = false;
        map[v] = usize::MAX;
    }
    false
}
