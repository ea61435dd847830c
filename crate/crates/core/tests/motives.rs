mod common;

use common::{binomial, box_partitions};
use num_bigint::BigUint;
use proptest::prelude::*;
use sbmotive::motives::{
    corollary_applies, corollary_conditions, decompose, lucas_binom, poincare_grassmannian,
    shift_candidates, vp, ReportJson,
};
use sbmotive::subring::{graded_spans_with, ClosureOptions};
use sbmotive::verify::small_specs;
use sbmotive::{GeometrySpec, PoincarePoly, ProdRing};

fn big_binomial(n: u64, k: u64) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

#[test]
fn lucas_matches_exact_binomials() {
    for p in [2u32, 3, 5, 7, 11] {
        for a in 0..=200u64 {
            for b in 0..=a {
                let exact = big_binomial(a, b) % BigUint::from(p);
                assert_eq!(
                    BigUint::from(lucas_binom(a, b, p)),
                    exact,
                    "C({a},{b}) mod {p}"
                );
            }
            assert_eq!(lucas_binom(a, a + 1, p), 0);
        }
    }
}

#[test]
fn valuation_examples() {
    assert_eq!(vp(1, 5), 0);
    assert_eq!(vp(2 * 3 * 3 * 3, 3), 3);
    assert_eq!(vp(1024, 2), 10);
}

#[test]
fn gaussian_binomials_are_symmetric_and_count_partitions() {
    for n in 0..=30u32 {
        for k in 0..=n {
            let g = poincare_grassmannian(k, n).unwrap();
            assert!(g.is_palindromic(), "[{n},{k}]");
            assert!(g.is_nonnegative());
            assert_eq!(g.eval_one() as u64, binomial(n as u64, k as u64));
            assert_eq!(g, poincare_grassmannian(n - k, n).unwrap());
        }
    }
    for n in 0..=10u32 {
        for k in 0..=n {
            let mut counts = vec![0i64; (k * (n - k)) as usize + 1];
            for lam in box_partitions(k, n - k) {
                counts[lam.iter().sum::<u32>() as usize] += 1;
            }
            assert_eq!(
                poincare_grassmannian(k, n).unwrap(),
                PoincarePoly::new(counts)
            );
        }
    }
    assert!(poincare_grassmannian(3, 2).is_err());
}

#[test]
fn corollary_hypotheses_imply_binomial_conditions() {
    for p in [2u32, 3, 5] {
        for n in 1..=4u32 {
            for m in 1..n {
                let spec = GeometrySpec::new(p, n, m).unwrap();
                let (a, b, c) = corollary_conditions(&spec).unwrap();
                if corollary_applies(&spec) {
                    assert!(a && b && c, "{spec:?}: {:?}", (a, b, c));
                }
            }
            assert!(corollary_conditions(&GeometrySpec::new(p, n, 0).unwrap()).is_err());
        }
    }
}

#[test]
fn early_exit_closure_matches_exhaustive_closure() {
    for spec in small_specs(9) {
        let ring = ProdRing::new(spec);
        let top = spec.d() + spec.dim_y();
        let fast = graded_spans_with(&ring, top, ClosureOptions::default());
        let full = graded_spans_with(
            &ring,
            top,
            ClosureOptions {
                exhaustive: true,
                ..Default::default()
            },
        );
        for j in 0..=top {
            assert_eq!(
                fast.span(j).dense_rows(),
                full.span(j).dense_rows(),
                "{spec:?} codegree {j}"
            );
        }
    }
}

#[test]
fn small_decompositions_satisfy_rank_identity() {
    for spec in small_specs(16) {
        let rep = decompose(&spec).unwrap();
        assert!(rep.rank_identity_holds(), "{spec:?}");
        let d = rep.diagnostics;
        assert!(
            d.residual_nonnegative && d.residual_palindromic && d.duality_consistent,
            "{spec:?}: {d:?}"
        );
        assert!(d.residual_unit_ends, "{spec:?}: {}", rep.residual);
        assert_eq!(rep.multiplicities.len() as u32, spec.shift_range() + 1);
        if spec.m == 0 {
            assert_eq!(rep.multiplicities, vec![1]);
            assert!(rep.residual.is_zero());
        }
    }
}

#[test]
fn json_report_has_fixed_key_order() {
    let rep = decompose(&GeometrySpec::new(3, 2, 1).unwrap()).unwrap();
    let text = serde_json::to_string(&rep.to_json(7)).unwrap();
    let keys = [
        "\"p\"",
        "\"n\"",
        "\"m\"",
        "\"dim_x\"",
        "\"dim_y\"",
        "\"shift_range\"",
        "\"multiplicities\"",
        "\"residual\"",
        "\"diagnostics\"",
        "\"elapsed_ms\"",
    ];
    let pos: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]), "{text}");
    let back: ReportJson = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string(&back).unwrap(), text);
}

fn poly() -> impl Strategy<Value = PoincarePoly> {
    prop::collection::vec(-5i64..=5, 0..12).prop_map(PoincarePoly::new)
}

proptest! {
    #[test]
    fn report_json_round_trips(
        p in 2u32..20, n in 1u32..5, m in 0u32..4,
        mult in prop::collection::vec(0u32..10, 0..30),
        residual in poly(),
        flags in prop::array::uniform4(any::<bool>()),
        elapsed in any::<u64>(),
    ) {
        let text = format!(
            "{{\"p\":{p},\"n\":{n},\"m\":{m},\"dim_x\":1,\"dim_y\":2,\"shift_range\":1,\
             \"multiplicities\":{},\"residual\":{},\"diagnostics\":{{\"residual_nonnegative\":{},\
             \"residual_palindromic\":{},\"residual_unit_ends\":{},\"duality_consistent\":{}}},\
             \"elapsed_ms\":{elapsed}}}",
            serde_json::to_string(&mult).unwrap(),
            serde_json::to_string(&residual).unwrap(),
            flags[0], flags[1], flags[2], flags[3],
        );
        let parsed: ReportJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(serde_json::to_string(&parsed).unwrap(), text);
    }

    #[test]
    fn exact_division_inverts_multiplication(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        let prod = &a * &b;
        prop_assert_eq!(prod.divide_exact(&b).unwrap(), a);
    }

    #[test]
    fn inexact_division_reports_remainder(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero() && b.degree() > Some(0));
        let num = &(&a * &b) + &PoincarePoly::one();
        // b has positive degree, so a*b + 1 is never a multiple of b
        prop_assert!(num.divide_exact(&b).is_err());
    }

    #[test]
    fn shift_candidates_match_direct_check(
        q in prop::collection::vec(0i64..=2, 0..40).prop_map(PoincarePoly::new),
        offsets in prop::collection::btree_set(0usize..12, 1..4),
    ) {
        let offsets: Vec<usize> = offsets.into_iter().collect();
        let got = shift_candidates(&q, &offsets);
        let want: Vec<usize> = (0..=q.degree().unwrap_or(0))
            .filter(|&k| q.degree().is_some() && offsets.iter().all(|o| q.coeff(k + o) >= 1))
            .collect();
        prop_assert_eq!(got, want);
    }
}

#[test]
fn division_by_zero_is_an_error() {
    assert!(PoincarePoly::one()
        .divide_exact(&PoincarePoly::zero())
        .is_err());
}
