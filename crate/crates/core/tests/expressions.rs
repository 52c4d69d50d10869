use num_complex::Complex;
use proptest::prelude::*;

use semigroupoid::corpus;
use semigroupoid::expr::{evaluate, evaluate_exact, parse_op_expr, Atom, OpExpr};
use semigroupoid::{FockSpace, SparseOperator, C64};

fn atom() -> impl Strategy<Value = OpExpr> {
    prop_oneof![
        prop::sample::select(vec!["e1", "e2"]).prop_map(|l| OpExpr::Atom(Atom::L(l.into()), 0)),
        prop::sample::select(vec!["e1", "e2"]).prop_map(|l| OpExpr::Atom(Atom::R(l.into()), 0)),
        Just(OpExpr::Atom(Atom::P("x".into()), 0)),
        Just(OpExpr::Atom(Atom::Q("x".into()), 0)),
        (0usize..3).prop_map(|k| OpExpr::Atom(Atom::E(k), 0)),
        Just(OpExpr::Atom(Atom::I, 0)),
    ]
}

fn scalar() -> impl Strategy<Value = C64> {
    (0u8..20, -20i8..20).prop_map(|(re, im)| Complex::new(f64::from(re) / 4.0, f64::from(im) / 2.0))
}

fn tree() -> impl Strategy<Value = OpExpr> {
    atom().prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (scalar(), inner.clone()).prop_map(|(s, e)| OpExpr::Scale(s, Box::new(e))),
            inner.clone().prop_map(|e| OpExpr::Adj(Box::new(e))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| OpExpr::Sum(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| OpExpr::Diff(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| OpExpr::Product(Box::new(a), Box::new(b))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn printing_is_a_parse_fixpoint(e in tree()) {
        let printed = e.to_string();
        let parsed = parse_op_expr(&printed).unwrap();
        prop_assert_eq!(parsed.to_string(), printed);
    }

    #[test]
    fn printed_trees_evaluate_to_the_same_operator(e in tree()) {
        let g = corpus::loops(2);
        let s = FockSpace::new(&g, 3).unwrap();
        let a = evaluate(&e, &s).unwrap();
        let b = evaluate(&parse_op_expr(&e.to_string()).unwrap(), &s).unwrap();
        prop_assert_eq!(a.entries(), b.entries());
        prop_assert_eq!(a.degree(), b.degree());
    }

    #[test]
    fn garbage_never_panics(text in "[LRPQEIadj()\\[\\]x0-9.+i -]{0,24}") {
        let _ = parse_op_expr(&text);
    }
}

#[test]
fn degrees_follow_the_operator_rules() {
    let g = corpus::loops(2);
    let s = FockSpace::new(&g, 4).unwrap();
    let deg = |t: &str| evaluate(&parse_op_expr(t).unwrap(), &s).unwrap().degree();
    assert_eq!(deg("L[e1].L[e2].adj(L[e1])"), 3);
    assert_eq!(deg("L[e1] + L[e2].L[e1]"), 2);
    assert_eq!(deg("2i adj(R[e1].R[e2])"), 2);
    assert_eq!(deg("P[x] + E[3]"), 0);
}

#[test]
fn left_and_right_letters_commute_in_expressions() {
    let g = corpus::double_loop_return();
    let s = FockSpace::new(&g, 5).unwrap();
    let c = evaluate_exact(&parse_op_expr("L[e1].R[e3] - R[e3].L[e1]").unwrap(), &s).unwrap();
    assert!(c.is_zero());
    let p: SparseOperator<Complex<i64>> = evaluate_exact(&parse_op_expr("P[x1] + P[x2] - I").unwrap(), &s).unwrap();
    assert!(p.is_zero());
}
