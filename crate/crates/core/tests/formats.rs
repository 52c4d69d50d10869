use num_complex::Complex;
use proptest::prelude::*;

use semigroupoid::fourier::{fourier_coefficients, synthesize};
use semigroupoid::io::{graph_to_json, read_coefficients, read_graph, read_matrix, write_basis, write_coefficients, write_matrix};
use semigroupoid::matrix_forms::series_from;
use semigroupoid::{corpus, DirectedMultigraph, FockSpace};

fn graph() -> impl Strategy<Value = DirectedMultigraph> {
    (1usize..4)
        .prop_flat_map(|nv| (Just(nv), prop::collection::vec((0..nv, 0..nv), 0..6)))
        .prop_map(|(nv, es)| {
            let vs: Vec<String> = (0..nv).map(|i| format!("v{i}")).collect();
            let edges: Vec<_> = es
                .iter()
                .enumerate()
                .map(|(i, &(s, r))| (format!("e{i}"), vs[s].clone(), vs[r].clone()))
                .collect();
            DirectedMultigraph::new(vs, edges).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graphs_roundtrip_through_json(g in graph()) {
        prop_assert_eq!(read_graph(&graph_to_json(&g)).unwrap(), g);
    }

    #[test]
    fn operators_roundtrip_through_text(g in graph(), seed in 0u64..1000) {
        let s = FockSpace::new(&g, 3).unwrap();
        let t = series_from(&s, 2, |i| Complex::new(((i as u64 * 7 + seed) % 5) as f64 - 2.0, 0.25 * i as f64));
        let a = synthesize(&t, &s).unwrap();
        let back = read_matrix(&write_matrix(&a)).unwrap();
        prop_assert_eq!(&back, &a);
        let coeffs = read_coefficients(&g, &write_coefficients(&g, &fourier_coefficients(&a, &s))).unwrap();
        prop_assert_eq!(coeffs, t);
    }
}

#[test]
fn basis_manifest_lists_every_path_once() {
    let g = corpus::loop_bridge_loop();
    let s = FockSpace::new(&g, 3).unwrap();
    let text = write_basis(&s);
    assert_eq!(text.lines().count(), s.dim());
    let first: Vec<&str> = text.lines().take(4).collect();
    assert_eq!(first, ["basis 0 x", "basis 1 y", "basis 2 e", "basis 3 f"]);
    assert!(text.lines().any(|l| l == "basis 11 g.f.e"));
}

#[test]
fn exact_matrices_print_integers() {
    let g = corpus::loops(1);
    let s = FockSpace::new(&g, 2).unwrap();
    let l = s.left::<i64>(semigroupoid::EdgeId(0));
    assert_eq!(write_matrix(&l), "dim 3 degree 1\n1 0 1 0\n2 1 1 0\n");
}
