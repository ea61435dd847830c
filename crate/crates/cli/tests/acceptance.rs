//! Acceptance suite: one PASS/FAIL line per criterion.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use sbmotive::motives::poincare_grassmannian;
use sbmotive::verify::{corpus, small_specs};
use sbmotive::{EchelonSpan, FpVector, GrassRing, Partition, PoincarePoly, PrimeField, ProdRing};
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_sbmotive"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

fn decompose_json(p: u32, n: u32, m: u32) -> Result<Value, String> {
    let (code, out) = run(&[
        "decompose",
        "--p",
        &p.to_string(),
        "--n",
        &n.to_string(),
        "--m",
        &m.to_string(),
        "--json",
    ]);
    if code != 0 {
        return Err(format!("decompose ({p},{n},{m}) exited {code}"));
    }
    serde_json::from_str(&out).map_err(|e| e.to_string())
}

fn multiplicities(v: &Value) -> Vec<u64> {
    v["multiplicities"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap())
        .collect()
}

fn residual(v: &Value) -> PoincarePoly {
    PoincarePoly::new(
        v["residual"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_i64().unwrap())
            .collect(),
    )
}

fn diagnostics_ok(v: &Value) -> bool {
    v["diagnostics"]
        .as_object()
        .unwrap()
        .values()
        .all(|b| b == true)
}

fn verify_case(id: &str) -> Result<String, String> {
    let (code, out) = run(&["verify", "--case", id, "--json"]);
    let v: Value = serde_json::from_str(&out).map_err(|e| format!("{id}: {e}"))?;
    let detail = v["cases"][0]["detail"]
        .as_str()
        .unwrap_or_default()
        .to_string();
    if code == 0 && v["cases"][0]["passed"] == true {
        Ok(detail)
    } else {
        Err(format!("{id}: {detail}"))
    }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn decom1() -> Result<(), String> {
    let v = decompose_json(3, 2, 1)?;
    let a = multiplicities(&v);
    ensure(a == [0, 0, 1, 1, 1, 1, 1, 1, 1, 0, 0], format!("a = {a:?}"))?;
    let res = residual(&v);
    // [9 choose 3]_t - Σ_{k=2}^{8} t^k (1 + … + t^8) leaves 1 + … + t^18 plus t^6 + t^12
    let want = &PoincarePoly::ones(19) + &PoincarePoly::from_exponents([6, 12]);
    ensure(
        res.eval_one() == 21 && res == want,
        format!("residual {res}"),
    )?;
    ensure(diagnostics_ok(&v), "diagnostics")
}

fn decom2() -> Result<(), String> {
    let v = decompose_json(2, 3, 2)?;
    let a = multiplicities(&v);
    ensure(a.len() == 10, "shift range")?;
    ensure(
        (2..=7).all(|k| a[k] == 1) && [0, 1, 8, 9].iter().all(|&k| a[k] == 0),
        format!("a = {a:?}"),
    )?;
    ensure(residual(&v).eval_one() == 22, "residual rank")?;
    ensure(diagnostics_ok(&v), "diagnostics")
}

fn decom3() -> Result<(), String> {
    let v = decompose_json(3, 3, 1)?;
    let a = multiplicities(&v);
    let b = |i: usize| -> u64 {
        let i = if i > 23 { 46 - i } else { i };
        match i {
            0..=1 => 0,
            2..=7 => 1,
            8..=13 => 2,
            14..=20 => 3,
            _ => 4,
        }
    };
    ensure(a.len() == 47, "shift range")?;
    for (i, &ai) in a.iter().enumerate() {
        let want = if i == 20 || i == 26 { 4 } else { b(i) };
        ensure(ai == want, format!("a_{i} = {ai}, expected {want}"))?;
    }
    ensure(residual(&v).eval_one() == 225, "residual rank")?;
    ensure(diagnostics_ok(&v), "diagnostics")
}

fn indecomposable() -> Result<(), String> {
    for (p, n, m) in [(2, 2, 1), (2, 3, 1)] {
        let v = decompose_json(p, n, m)?;
        ensure(
            multiplicities(&v).iter().all(|&x| x == 0),
            format!("({p},{n},{m}) {:?}", multiplicities(&v)),
        )?;
        let full = poincare_grassmannian(p.pow(m), p.pow(n)).unwrap();
        ensure(residual(&v) == full, format!("({p},{n},{m}) residual"))?;
    }
    for (p, n) in [(3, 2), (2, 2)] {
        let v = decompose_json(p, n, 0)?;
        ensure(multiplicities(&v) == [1], format!("({p},{n},0)"))?;
        ensure(residual(&v).is_zero(), format!("({p},{n},0) residual"))?;
    }
    Ok(())
}

fn formula_anchors() -> Result<(), String> {
    for id in ["c7-expansion", "minus-t-classes", "e-cycle", "example4-v20"] {
        verify_case(id)?;
    }
    Ok(())
}

fn q_chain() -> Result<(), String> {
    verify_case("q-poly")?;
    verify_case("shift-candidates")?;
    // recompute the chain here as well, from the CLI outputs
    let m1c = residual(&decompose_json(3, 2, 1)?);
    let ex = &corpus().example4;
    let b: Vec<u64> = multiplicities(&decompose_json(3, 3, 1)?)
        .iter()
        .enumerate()
        .map(|(i, &a)| a - u64::from(i == 20 || i == 26))
        .collect();
    let tri = PoincarePoly::from_exponents([0, 27, 54]);
    let mut rest = &poincare_grassmannian(3, 27).unwrap() - &(&tri * &m1c);
    for (i, &bi) in b.iter().enumerate() {
        rest = &rest - &PoincarePoly::ones(27).shift(i).scale(bi as i64);
    }
    ensure(
        rest.eval_one() == 216,
        format!("rank of P(N') = {}", rest.eval_one()),
    )?;
    let q = rest
        .divide_exact(&PoincarePoly::ones(9))
        .map_err(|e| e.to_string())?;
    ensure(
        q == PoincarePoly::from_exponents(ex.q_exponents.iter().copied()),
        format!("Q = {q}"),
    )?;
    let ks = sbmotive::motives::shift_candidates(&q, &[0, 9, 18]);
    ensure(ks == [20, 26], format!("candidates {ks:?}"))
}

fn schur_oracle() -> Result<(), String> {
    for k in 1..=3u32 {
        for w in 1..=4u32 {
            let parts = common::box_partitions(k, w);
            let rings: Vec<(i64, GrassRing)> = [2u32, 3, 5]
                .iter()
                .map(|&p| (p as i64, GrassRing::grassmannian(k, k + w, p).unwrap()))
                .collect();
            for a in &parts {
                for b in &parts {
                    let want = common::lr_in_box(a, b, k as usize, w);
                    for (p, g) in &rings {
                        let x = g.sigma(&Partition::new(a.clone()).unwrap()).unwrap();
                        let y = g.sigma(&Partition::new(b.clone()).unwrap()).unwrap();
                        let got = g.multiply(&x, &y).unwrap();
                        let ok = want.iter().all(|(nu, &c)| {
                            got.coeff(&Partition::new(nu.clone()).unwrap()) as i64
                                == c.rem_euclid(*p)
                        }) && got.terms().all(|(nu, _)| want.contains_key(nu.parts()));
                        ensure(ok, format!("G({k},{}) F_{p}: {a:?}*{b:?}", k + w))?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn relations() -> Result<(), String> {
    for spec in small_specs(16) {
        let ring = ProdRing::new(spec);
        let g = ring.grass();
        for big_r in 1..=spec.algebra_degree() {
            let mut acc = g.zero(big_r);
            for j in 0..=spec.k().min(big_r) {
                let t = g
                    .multiply(&ring.special_class(big_r - j), &ring.dual_taut_class(j))
                    .unwrap();
                acc = g.add(&acc, &t).unwrap();
            }
            ensure(acc.is_zero(), format!("{spec:?} R = {big_r}"))?;
        }
    }
    Ok(())
}

fn whitney() -> Result<(), String> {
    for spec in small_specs(16) {
        let ring = ProdRing::new(spec);
        let r = spec.r();
        let s = ring.inverse_chern_t(spec.k() + r + 2);
        for total in 1..s.len() as u32 {
            let mut acc = ring.zero(total);
            for i in 0..=total.min(r) {
                let t = ring
                    .multiply(&ring.chern_t(i as i64).unwrap(), &s[(total - i) as usize])
                    .unwrap();
                acc = ring.add(&acc, &t).unwrap();
            }
            ensure(acc.is_zero(), format!("{spec:?} degree {total}"))?;
        }
        ensure(
            s[spec.k() as usize + 1..].iter().all(|x| x.is_zero()),
            format!("{spec:?}: c_j(-T) past rank"),
        )?;
    }
    Ok(())
}

fn echelon() -> Result<(), String> {
    let config = Config {
        cases: 300,
        failure_persistence: None,
        ..Config::default()
    };
    let mut runner = TestRunner::new(config);
    let strategy =
        (prop::sample::select(vec![2u32, 3, 5]), 1usize..10).prop_flat_map(|(p, dim)| {
            (
                Just(p),
                prop::collection::vec(prop::collection::vec(-2i64..=2, dim), 1..=50),
            )
        });
    runner
        .run(&strategy, |(p, rows)| {
            let f = PrimeField::new(p).unwrap();
            let mut span = EchelonSpan::new(f, rows[0].len());
            for r in &rows {
                span.insert(&FpVector::from_dense(f, r)).unwrap();
            }
            prop_assert_eq!(span.rank(), common::naive_rank(&rows, p as i64));
            for r in &rows {
                prop_assert!(span.contains(&FpVector::from_dense(f, r)).unwrap());
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

fn properties() -> Result<(), String> {
    schur_oracle()?;
    relations()?;
    whitney()?;
    verify_case("beta-sweep")?;
    verify_case("duality")?;
    echelon()
}

type Criterion = (&'static str, fn() -> Result<(), String>, u64);

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("decom1 reproduction", decom1, 5),
        ("decom2 reproduction", decom2, 30),
        ("decom3 reproduction", decom3, 600),
        ("indecomposability regressions", indecomposable, 10),
        ("formula anchors", formula_anchors, 60),
        ("Q(t) chain and shift candidates", q_chain, 60),
        ("property suites", properties, 300),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let result = result.and_then(|()| {
            ensure(
                took <= Duration::from_secs(*limit),
                format!("took {took:?}, limit {limit} s"),
            )
        });
        match result {
            Ok(()) => println!("criterion {}: PASS {name} ({} ms)", i + 1, took.as_millis()),
            Err(msg) => {
                failed += 1;
                println!(
                    "criterion {}: FAIL {name} ({} ms): {msg}",
                    i + 1,
                    took.as_millis()
                );
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
