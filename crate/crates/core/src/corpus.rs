//! Small named graphs used throughout the tests and the CLI `example` command.

use crate::graph::DirectedMultigraph;

fn build(vertices: &[&str], edges: &[(&str, &str, &str)]) -> DirectedMultigraph {
    DirectedMultigraph::new(vertices.iter().copied(), edges.iter().copied())
        .expect("corpus graphs are well formed")
}

/// One vertex `x` carrying `n` loops `e1..en`.
pub fn loops(n: usize) -> DirectedMultigraph {
    let labels: Vec<String> = (1..=n).map(|i| format!("e{i}")).collect();
    let edges: Vec<(&str, &str, &str)> = labels.iter().map(|l| (l.as_str(), "x", "x")).collect();
    build(&["x"], &edges)
}

/// The directed cycle `x1 -> x2 -> ... -> xn -> x1`, with `ek: xk -> x(k+1)`.
pub fn cycle(n: usize) -> DirectedMultigraph {
    assert!(n >= 1, "a cycle needs at least one vertex");
    let vs: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let es: Vec<(String, String, String)> = (1..=n)
        .map(|k| (format!("e{k}"), vs[k - 1].clone(), vs[k % n].clone()))
        .collect();
    DirectedMultigraph::new(vs, es).expect("corpus graphs are well formed")
}

/// Three vertices, `e: x1 -> x2`, `f: x1 -> x3`. A five-dimensional algebra.
pub fn fork() -> DirectedMultigraph {
    build(&["x1", "x2", "x3"], &[("e", "x1", "x2"), ("f", "x1", "x3")])
}

/// A loop `e` at `x` and an edge `f: x -> y`.
pub fn loop_tail() -> DirectedMultigraph {
    build(&["x", "y"], &[("e", "x", "x"), ("f", "x", "y")])
}

/// [`loop_tail`] with a return edge `g: y -> x`.
pub fn loop_tail_return() -> DirectedMultigraph {
    build(
        &["x", "y"],
        &[("e", "x", "x"), ("f", "x", "y"), ("g", "y", "x")],
    )
}

/// [`loop_tail`] with a second loop `g` at `y`.
pub fn loop_bridge_loop() -> DirectedMultigraph {
    build(
        &["x", "y"],
        &[("e", "x", "x"), ("f", "x", "y"), ("g", "y", "y")],
    )
}

/// Two loops `e1, e2` at `x1`, with `e3: x1 -> x2` and `e4: x2 -> x1`.
pub fn double_loop_return() -> DirectedMultigraph {
    build(
        &["x1", "x2"],
        &[
            ("e1", "x1", "x1"),
            ("e2", "x1", "x1"),
            ("e3", "x1", "x2"),
            ("e4", "x2", "x1"),
        ],
    )
}

/// Transition matrix `[[1,1],[1,0]]`: loop `e1` at `x1`, `e2: x1 -> x2`, `e3: x2 -> x1`.
pub fn fibonacci() -> DirectedMultigraph {
    build(
        &["x1", "x2"],
        &[("e1", "x1", "x1"), ("e2", "x1", "x2"), ("e3", "x2", "x1")],
    )
}

/// Looks a corpus graph up by name: `loops<n>`, `cycle<n>`, or one of the
/// fixed names listed in [`all`].
pub fn by_name(name: &str) -> Option<DirectedMultigraph> {
    let numbered = |prefix: &str| {
        name.strip_prefix(prefix)
            .and_then(|n| n.parse::<usize>().ok())
            .filter(|&n| (1..=64).contains(&n))
    };
    if let Some(n) = numbered("loops") {
        return Some(loops(n));
    }
    if let Some(n) = numbered("cycle") {
        return Some(cycle(n));
    }
    Some(match name {
        "fork" => fork(),
        "loop_tail" => loop_tail(),
        "loop_tail_return" => loop_tail_return(),
        "loop_bridge_loop" => loop_bridge_loop(),
        "double_loop_return" => double_loop_return(),
        "fibonacci" => fibonacci(),
        _ => return None,
    })
}

/// The standard corpus with names.
pub fn all() -> Vec<(String, DirectedMultigraph)> {
    let mut out = Vec::new();
    for n in 1..=3 {
        out.push((format!("loops{n}"), loops(n)));
    }
    for n in 2..=4 {
        out.push((format!("cycle{n}"), cycle(n)));
    }
    for name in ["fork", "loop_tail", "loop_tail_return", "loop_bridge_loop", "double_loop_return", "fibonacci"] {
        out.push((name.to_string(), by_name(name).unwrap()));
    }
    out
}
