use super::{DirectedMultigraph, EdgeId, VertexId};

/// Strongly connected components, ordered by smallest member vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Components {
    pub components: Vec<Vec<VertexId>>,
    /// `component_of[v]` is the position of `v`'s component in `components`.
    pub component_of: Vec<usize>,
}

impl Components {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn same(&self, a: VertexId, b: VertexId) -> bool {
        self.component_of[a.0] == self.component_of[b.0]
    }

    /// Edges with both endpoints inside component `c`, in edge order.
    pub fn internal_edges(&self, g: &DirectedMultigraph, c: usize) -> Vec<EdgeId> {
        g.edge_ids()
            .filter(|&e| {
                self.component_of[g.source(e).0] == c && self.component_of[g.range(e).0] == c
            })
            .collect()
    }
}

/// Tarjan's algorithm, iterative so deep graphs cannot overflow the stack.
pub fn strongly_connected_components(g: &DirectedMultigraph) -> Components {
    const UNSEEN: usize = usize::MAX;
    let n = g.vertex_count();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut raw: Vec<Vec<usize>> = Vec::new();
    let mut next = 0usize;
    // call frames: (vertex, position in its out-edge list)
    let mut frames: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        frames.push((root, 0));
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = frames.last_mut() {
            let outs = g.out_edges(VertexId(v));
            if *pos < outs.len() {
                let w = g.range(outs[*pos]).0;
                *pos += 1;
                if index[w] == UNSEEN {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            frames.pop();
            if let Some(&(parent, _)) = frames.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack holds the component");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                raw.push(comp);
            }
        }
    }

    raw.sort_by_key(|c| c[0]);
    let mut component_of = vec![0usize; n];
    for (i, c) in raw.iter().enumerate() {
        for &v in c {
            component_of[v] = i;
        }
    }
    Components {
        components: raw
            .into_iter()
            .map(|c| c.into_iter().map(VertexId).collect())
            .collect(),
        component_of,
    }
}

/// The set B(G) of edges lying on no cycle, in edge order.
pub fn off_cycle_edges(g: &DirectedMultigraph) -> Vec<EdgeId> {
    let comps = strongly_connected_components(g);
    g.edge_ids()
        .filter(|&e| !comps.same(g.source(e), g.range(e)))
        .collect()
}
