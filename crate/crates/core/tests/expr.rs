use proptest::prelude::*;
use sbmotive::expr::{eval_str, parse, Expr, Mode};
use sbmotive::{Error, GeometrySpec, GrassRing, Partition, ProdRing};

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        (0u64..50).prop_map(Expr::Int),
        prop::collection::vec(1u32..5, 0..4).prop_map(|mut v| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            Expr::Sigma(Partition::new(v).unwrap())
        }),
        (0u32..10).prop_map(Expr::E),
        (0u32..10).prop_map(Expr::H),
        (0u32..10).prop_map(Expr::C),
        (0u32..10).prop_map(Expr::Ct),
        (0u32..10).prop_map(Expr::ChernT),
        (0u32..10).prop_map(Expr::SegreT),
        Just(Expr::Hyperplane),
    ]
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(5, 48, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Expr::Push(Box::new(a))),
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner, 0u32..6).prop_map(|(a, n)| Expr::Pow(Box::new(a), n)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn printing_then_parsing_is_the_identity(e in expr()) {
        let text = e.to_string();
        prop_assert_eq!(parse(&text).unwrap(), e, "{}", text);
    }

    #[test]
    fn garbage_never_panics(s in "[a-zA-Z0-9+*^()\\[\\], -]{0,24}") {
        let _ = parse(&s);
    }
}

fn grass(k: u32, n: u32, p: u32) -> Mode {
    Mode::Grassmann(GrassRing::grassmannian(k, n, p).unwrap())
}

fn product(p: u32, n: u32, m: u32) -> Mode {
    Mode::Product(ProdRing::new(GeometrySpec::new(p, n, m).unwrap()))
}

#[test]
fn seventh_chern_class_identity() {
    let m = grass(3, 27, 3);
    let out = eval_str("e1^7 - (e1^4*e3 - e1^3*e2^2 + e1*e2^3)", &m).unwrap();
    assert_eq!(out.to_string(), "sigma[7]");
    assert_eq!(
        eval_str("c7 + e1^7 - (e1^4*e3 - e1^3*e2^2 + e1*e2^3)", &m)
            .unwrap()
            .to_string(),
        "0"
    );
}

#[test]
fn beta_certificate_pushes_to_c1_squared() {
    let m = product(3, 2, 1);
    let beta = eval_str("push(cT6*cT2*cT2*cT1^0)", &m).unwrap().to_string();
    assert_eq!(beta, eval_str("c1^2", &grass(3, 9, 3)).unwrap().to_string());
    assert_eq!(beta, "sigma[2] + sigma[1,1]");
}

#[test]
fn products_of_special_classes() {
    assert_eq!(
        eval_str("sigma[1]*sigma[1]", &grass(2, 4, 2))
            .unwrap()
            .to_string(),
        "sigma[2] + sigma[1,1]"
    );
    assert_eq!(eval_str("h3", &grass(2, 4, 2)).unwrap().to_string(), "0");
    assert_eq!(eval_str("e3", &grass(2, 4, 2)).unwrap().to_string(), "0");
    assert_eq!(
        eval_str("2*sigma[1] + sigma[1]", &grass(2, 4, 3))
            .unwrap()
            .to_string(),
        "0"
    );
}

#[test]
fn hyperplane_overflow_is_zero() {
    let m = product(3, 2, 1);
    assert_eq!(eval_str("H^9", &m).unwrap().to_string(), "0");
    assert_eq!(eval_str("H^8", &m).unwrap().to_string(), "H^8");
}

#[test]
fn product_atoms_need_product_mode() {
    for src in ["H", "cT1", "sT2", "push(1)"] {
        assert!(
            matches!(eval_str(src, &grass(2, 4, 2)), Err(Error::Eval(_))),
            "{src}"
        );
        assert!(parse(src).unwrap().needs_product());
    }
    assert!(!parse("sigma[2,1]*e1 - c2^3").unwrap().needs_product());
}

#[test]
fn parse_errors_carry_positions() {
    let cases = [
        ("e1 +", 4),
        ("sigma[1,2]", 0),
        ("foo3", 0),
        ("e1 ** e2", 4),
        ("(e1", 3),
        ("e", 1),
    ];
    for (src, pos) in cases {
        match parse(src) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, pos, "{src}"),
            other => panic!("{src}: {other:?}"),
        }
    }
}
