use proptest::prelude::*;
use stone_cli::expr::{parse_algebra_expr, AlgebraExpr};

fn leaf(p: u32) -> impl Strategy<Value = AlgebraExpr> {
    let quotient = (
        prop::sample::select(vec!["x", "y", "t", "z1"]),
        prop::collection::vec(0..p, 0..5),
        1..p,
    )
        .prop_map(move |(var, mut coeffs, top)| {
            coeffs.push(top);
            AlgebraExpr::UnivariateQuotient {
                p,
                var: var.to_string(),
                coeffs,
            }
        });
    let functions = (0usize..5).prop_map(move |size| AlgebraExpr::FunctionAlg { p, size });
    prop_oneof![quotient, functions]
}

fn expr() -> impl Strategy<Value = AlgebraExpr> {
    prop::sample::select(vec![2u32, 3, 5, 7]).prop_flat_map(|p| {
        leaf(p).prop_recursive(4, 16, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone())
                    .prop_map(|(l, r)| AlgebraExpr::Product(Box::new(l), Box::new(r))),
                (inner.clone(), inner)
                    .prop_map(|(l, r)| AlgebraExpr::Tensor(Box::new(l), Box::new(r))),
            ]
        })
    })
}

proptest! {
    #[test]
    fn printing_then_parsing_is_identity(e in expr()) {
        let printed = e.to_string();
        prop_assert_eq!(parse_algebra_expr(&printed).unwrap(), e, "printed as {}", printed);
    }

    #[test]
    fn whitespace_between_tokens_is_ignored(e in expr()) {
        let spaced = e.to_string().replace(" * ", "\t*  ").replace(" (x) ", "\n(x) ").replace(',', " , ").replace("]/(", "] / ( ");
        prop_assert_eq!(parse_algebra_expr(&spaced).unwrap(), e);
    }
}
