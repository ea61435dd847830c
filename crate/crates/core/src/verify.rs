//! Worked examples as executable checks.
//!
//! Expected values live in `data/corpus.json`, each tagged with where it comes
//! from. Every case recomputes its values from scratch and compares exactly;
//! failures are reported, never thrown.

use std::collections::BTreeMap;
use std::sync::OnceLock;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::chowprod::{GeometrySpec, ProdRing};
use crate::error::{Error, Result};
use crate::expr::{eval_str, Mode, Value};
use crate::gflin::EchelonSpan;
use crate::motives::{
    corollary_applies, decompose, poincare_grassmannian, shift_candidates, PoincarePoly,
};
use crate::schur::GrassClass;
use crate::subring::{graded_spans, v_dims, v_spaces, ClosureOptions, VSpace};

const CORPUS: &str = include_str!("../data/corpus.json");

#[derive(Clone, Debug, Deserialize)]
pub struct DecompositionCase {
    pub id: String,
    pub provenance: String,
    pub p: u32,
    pub n: u32,
    pub m: u32,
    pub multiplicities: Vec<u32>,
    pub residual_rank: i64,
    #[serde(default)]
    pub residual: Option<Vec<i64>>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Example4 {
    pub provenance: String,
    pub p: u32,
    pub n: u32,
    pub m: u32,
    /// `(from, to, value)`: `b_i = value` for `from ≤ i ≤ to`.
    pub b_ranges: Vec<(u32, u32, u32)>,
    /// `b_i = b_{mirror − i}` above the last range.
    pub b_mirror: u32,
    pub extra_shifts: Vec<u32>,
    pub residual_rank: i64,
    pub c1: String,
    pub c7: String,
    pub c2_minus_t: String,
    pub c3_minus_t: String,
    pub e_cycle: String,
    pub e_printed: String,
    pub e_printed_sign: i64,
    pub v20_span_of_three: Vec<String>,
    pub v20_dim: usize,
    pub v21_independent: Vec<String>,
    pub q_exponents: Vec<usize>,
    pub quotient_by: usize,
    pub shift_offsets: Vec<usize>,
    pub shift_candidates: Vec<usize>,
    pub m1c_printed_upper: usize,
    pub m1c_printed_extra: Vec<usize>,
}

impl Example4 {
    pub fn spec(&self) -> GeometrySpec {
        GeometrySpec::new(self.p, self.n, self.m).expect("corpus spec is valid")
    }

    pub fn b(&self, i: u32) -> u32 {
        let top = self.b_ranges.iter().map(|r| r.1).max().unwrap_or(0);
        let i = if i > top && i <= self.b_mirror {
            self.b_mirror - i
        } else {
            i
        };
        self.b_ranges
            .iter()
            .find(|r| r.0 <= i && i <= r.1)
            .map_or(0, |r| r.2)
    }

    /// `a_i`: `b_i`, plus one at each extra shift.
    pub fn expected_multiplicities(&self) -> Vec<u32> {
        (0..=self.spec().shift_range())
            .map(|i| self.b(i) + u32::from(self.extra_shifts.contains(&i)))
            .collect()
    }
}

#[derive(Clone, Debug, Deserialize)]
pub struct Corpus {
    pub decompositions: Vec<DecompositionCase>,
    pub example4: Example4,
}

pub fn corpus() -> &'static Corpus {
    static C: OnceLock<Corpus> = OnceLock::new();
    C.get_or_init(|| serde_json::from_str(CORPUS).expect("embedded corpus parses"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseOutcome {
    pub id: String,
    pub source: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u64,
}

const FIXED_CASES: &[&str] = &[
    "decom3",
    "c7-expansion",
    "minus-t-classes",
    "e-cycle",
    "example4-v20",
    "example4-lower-bounds",
    "q-poly",
    "shift-candidates",
    "beta-sweep",
    "duality",
];

pub fn case_ids() -> Vec<String> {
    corpus()
        .decompositions
        .iter()
        .map(|c| c.id.clone())
        .chain(FIXED_CASES.iter().map(|s| s.to_string()))
        .collect()
}

/// Runs one case; `Err` only for an unknown id.
pub fn run_case(id: &str) -> Result<CaseOutcome> {
    let c = corpus();
    let ex = &c.example4;
    let start = Instant::now();
    let (source, outcome) = if let Some(dc) = c.decompositions.iter().find(|d| d.id == id) {
        (dc.provenance.clone(), check_decomposition(dc))
    } else {
        let src = match id {
            "beta-sweep" => {
                "DERIVED: β_k = c_r(T)c_{p^m-1}(T)c_2(T)c_1(T)^{k-2}, f_*(β_k) = c_1^k".into()
            }
            "duality" => "DERIVED: a_k = a_{D-k}".into(),
            _ => ex.provenance.clone(),
        };
        let out = match id {
            "decom3" => check_decom3(ex),
            "c7-expansion" => check_c7(ex),
            "minus-t-classes" => check_minus_t(ex),
            "e-cycle" => check_e_cycle(ex),
            "example4-v20" => check_v20(ex),
            "example4-lower-bounds" => check_lower_bounds(ex),
            "q-poly" => check_q_poly(ex).map(|(ok, detail, _)| (ok, detail)),
            "shift-candidates" => check_shift_candidates(ex),
            "beta-sweep" => check_beta_sweep(16),
            "duality" => check_duality(12),
            _ => {
                return Err(Error::Eval(format!(
                    "unknown case '{id}'; known: {}",
                    case_ids().join(", ")
                )))
            }
        };
        (src, out)
    };
    let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    Ok(CaseOutcome {
        id: id.to_string(),
        source,
        passed,
        detail,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

pub fn run_all() -> Vec<CaseOutcome> {
    case_ids()
        .iter()
        .map(|id| run_case(id).expect("listed ids are known"))
        .collect()
}

type Check = Result<(bool, String)>;

fn fmt_list<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn check_decomposition(dc: &DecompositionCase) -> Check {
    let spec = GeometrySpec::new(dc.p, dc.n, dc.m)?;
    let rep = decompose(&spec)?;
    let d = rep.diagnostics;
    let mut ok = rep.multiplicities == dc.multiplicities
        && rep.residual.eval_one() == dc.residual_rank
        && d.residual_nonnegative
        && d.residual_palindromic
        && d.residual_unit_ends
        && d.duality_consistent
        && rep.rank_identity_holds();
    if let Some(res) = &dc.residual {
        ok &= rep.residual == PoincarePoly::new(res.clone());
    }
    Ok((
        ok,
        format!(
            "a = {} (expected {}), residual rank {} (expected {})",
            fmt_list(&rep.multiplicities),
            fmt_list(&dc.multiplicities),
            rep.residual.eval_one(),
            dc.residual_rank
        ),
    ))
}

fn check_decom3(ex: &Example4) -> Check {
    let rep = decompose(&ex.spec())?;
    let expected = ex.expected_multiplicities();
    let d = rep.diagnostics;
    let ok = rep.multiplicities == expected
        && rep.residual.eval_one() == ex.residual_rank
        && d.residual_nonnegative
        && d.residual_palindromic
        && d.residual_unit_ends
        && d.duality_consistent;
    let sum: u32 = rep.multiplicities.iter().sum();
    Ok((
        ok,
        format!(
            "a = {} (Σa = {sum}), residual rank {}",
            fmt_list(&rep.multiplicities),
            rep.residual.eval_one()
        ),
    ))
}

fn example4_ring() -> &'static ProdRing {
    static R: OnceLock<ProdRing> = OnceLock::new();
    R.get_or_init(|| ProdRing::new(corpus().example4.spec()))
}

/// `V_0..V_23` for the degree-27 example, computed once.
fn example4_v() -> &'static [VSpace] {
    static V: OnceLock<Vec<VSpace>> = OnceLock::new();
    V.get_or_init(|| v_spaces(example4_ring(), 23, ClosureOptions::default()))
}

fn product_mode() -> &'static Mode {
    static M: OnceLock<Mode> = OnceLock::new();
    M.get_or_init(|| Mode::Product(example4_ring().clone()))
}

fn grass_mode() -> &'static Mode {
    static M: OnceLock<Mode> = OnceLock::new();
    M.get_or_init(|| Mode::Grassmann(example4_ring().grass().clone()))
}

/// Evaluates a Grassmannian expression that must be homogeneous of degree `deg`.
/// `c<i>` atoms are expanded via the corpus formulas for `c1`, `c7` first.
fn grass_class(mode: &Mode, src: &str, deg: u32) -> Result<GrassClass> {
    let ev = eval_str(src, mode)?;
    let comps = ev
        .grass_components()
        .ok_or_else(|| Error::Eval(format!("'{src}' is not a Grassmannian class")))?;
    let g = match mode {
        Mode::Grassmann(g) => g.clone(),
        Mode::Product(r) => r.grass().clone(),
    };
    let mut out = g.zero(deg);
    for (k, c) in comps {
        if k != deg {
            return Err(Error::DegreeMismatch {
                expected: deg,
                found: k,
            });
        }
        out = c;
    }
    Ok(out)
}

fn is_zero_value(mode: &Mode, src: &str) -> Result<bool> {
    Ok(match eval_str(src, mode)?.value {
        Value::Grass(t) => t.is_empty(),
        Value::Prod(t) => t.is_empty(),
    })
}

/// Replaces `c1`/`c7` by their corpus expansions in `ct`.
fn in_ct(ex: &Example4, src: &str) -> String {
    let mut out = String::new();
    let mut rest = src;
    while let Some(pos) = rest.find('c') {
        out.push_str(&rest[..pos]);
        let tail = &rest[pos + 1..];
        let digits: String = tail.chars().take_while(char::is_ascii_digit).collect();
        let is_chern = !digits.is_empty() && !out.ends_with(|c: char| c.is_ascii_alphanumeric());
        match (is_chern, digits.as_str()) {
            (true, "1") => out.push_str(&format!("({})", ex.c1)),
            (true, "7") => out.push_str(&format!("({})", ex.c7)),
            _ => {
                out.push('c');
                out.push_str(&digits);
            }
        }
        rest = &tail[digits.len()..];
    }
    out.push_str(rest);
    out
}

fn check_c7(ex: &Example4) -> Check {
    let m = grass_mode();
    let c1 = is_zero_value(m, &format!("c1 - ({})", ex.c1))?;
    let c7 = is_zero_value(m, &format!("c7 - ({})", ex.c7))?;
    Ok((
        c1 && c7,
        format!(
            "c1 = {}: {}; c7 = {}: {}",
            ex.c1,
            if c1 { "ok" } else { "MISMATCH" },
            ex.c7,
            if c7 { "ok" } else { "MISMATCH" }
        ),
    ))
}

fn check_minus_t(ex: &Example4) -> Check {
    let m = product_mode();
    let s2 = is_zero_value(m, &format!("sT2 - ({})", ex.c2_minus_t))?;
    let s3 = is_zero_value(m, &format!("sT3 - ({})", ex.c3_minus_t))?;
    Ok((
        s2 && s3,
        format!(
            "c2(-T) = {}: {}; c3(-T) = {}: {}",
            ex.c2_minus_t,
            if s2 { "ok" } else { "MISMATCH" },
            ex.c3_minus_t,
            if s3 { "ok" } else { "MISMATCH" }
        ),
    ))
}

fn rank_of(classes: &[GrassClass]) -> usize {
    let Some(first) = classes.first() else {
        return 0;
    };
    let g = first.ring();
    let mut span = EchelonSpan::new(g.field(), g.basis().degree_count(first.degree()));
    for c in classes {
        span.insert_dense(c.to_dense());
    }
    span.rank()
}

fn check_e_cycle(ex: &Example4) -> Check {
    let m = product_mode();
    let e = grass_class(m, &ex.e_cycle, 20)?;
    let printed = grass_class(m, &ex.e_printed, 20)?;
    let g = example4_ring().grass();
    let sign_ok = g.add(&e, &g.scale(&printed, -ex.e_printed_sign))?.is_zero();
    let in_v20 = example4_v()[20].contains(&e)?;
    let three: Vec<GrassClass> = ex
        .v20_span_of_three
        .iter()
        .map(|s| grass_class(grass_mode(), &in_ct(ex, s), 20))
        .collect::<Result<_>>()?;
    let mut with_e = three.clone();
    with_e.push(e.clone());
    let outside = rank_of(&with_e) == rank_of(&three) + 1;
    Ok((
        sign_ok && in_v20 && outside,
        format!(
            "e = {} (printed form times {}: {}); e in V20: {in_v20}; e outside span of {}: {outside}",
            ex.e_cycle,
            ex.e_printed_sign,
            if sign_ok { "equal" } else { "DIFFERENT" },
            ex.v20_span_of_three.join(", ")
        ),
    ))
}

fn check_v20(ex: &Example4) -> Check {
    let v20 = &example4_v()[20];
    let three: Vec<GrassClass> = ex
        .v20_span_of_three
        .iter()
        .map(|s| grass_class(grass_mode(), &in_ct(ex, s), 20))
        .collect::<Result<_>>()?;
    let members = three
        .iter()
        .map(|c| v20.contains(c))
        .collect::<Result<Vec<_>>>()?;
    let ok = v20.dim() == ex.v20_dim && members.iter().all(|&b| b) && rank_of(&three) == 3;
    Ok((
        ok,
        format!("dim V20 = {} (expected {})", v20.dim(), ex.v20_dim),
    ))
}

/// Monomials `c1^{i-7j} c7^j` realizing the lower bound `b_i` (`i ≤ 23`).
fn family(i: u32) -> Vec<(u32, u32)> {
    [0, 8, 14, 21]
        .iter()
        .zip(0..)
        .filter(|(&from, _)| i >= from)
        .map(|(_, j)| (i - 7 * j, j))
        .collect()
}

fn check_lower_bounds(ex: &Example4) -> Check {
    let v = example4_v();
    let gm = grass_mode();
    let mut bad = Vec::new();
    for i in 2..=23u32 {
        let classes: Vec<GrassClass> = family(i)
            .iter()
            .take(ex.b(i) as usize)
            .map(|&(a, j)| grass_class(gm, &in_ct(ex, &format!("c1^{a}*c7^{j}")), i))
            .collect::<Result<_>>()?;
        let members = classes
            .iter()
            .map(|c| v[i as usize].contains(c))
            .collect::<Result<Vec<_>>>()?;
        if classes.len() != ex.b(i) as usize
            || rank_of(&classes) != ex.b(i) as usize
            || !members.iter().all(|&b| b)
        {
            bad.push(i);
        }
    }
    let v21: Vec<GrassClass> = ex
        .v21_independent
        .iter()
        .map(|s| grass_class(gm, &in_ct(ex, s), 21))
        .collect::<Result<_>>()?;
    let r21 = rank_of(&v21);
    let ok = bad.is_empty() && r21 == v21.len();
    Ok((
        ok,
        format!(
            "families independent and rational for 2 ≤ i ≤ 23{}; rank of {} = {r21}",
            if bad.is_empty() {
                String::new()
            } else {
                format!(" except i = {}", fmt_list(&bad))
            },
            ex.v21_independent.join(", ")
        ),
    ))
}

/// `P(N') / (1 + … + t^{q-1})` with `P(M_{1,C})` taken from the `(p, n−1, m)` residual.
pub fn example4_quotient(ex: &Example4, m1c: &PoincarePoly) -> Result<PoincarePoly> {
    let spec = ex.spec();
    let big = poincare_grassmannian(spec.k(), spec.algebra_degree())?;
    let d = spec.d() as usize;
    let px = PoincarePoly::ones(d + 1);
    // 1 + t^{p^n} + t^{2 p^n}: one copy of M_{1,C} per point of the degree-p extension.
    let pn = spec.algebra_degree() as usize;
    let tri = PoincarePoly::from_exponents((0..spec.p as usize).map(|i| i * pn));
    let mut rest = &big - &(&tri * m1c);
    for i in 0..=spec.shift_range() {
        rest = &rest - &px.shift(i as usize).scale(ex.b(i) as i64);
    }
    rest.divide_exact(&PoincarePoly::ones(ex.quotient_by))
}

fn m1c_derived() -> Result<PoincarePoly> {
    let ex = &corpus().example4;
    Ok(decompose(&GeometrySpec::new(ex.p, ex.n - 1, ex.m)?)?.residual)
}

fn check_q_poly(ex: &Example4) -> Result<(bool, String, PoincarePoly)> {
    let m1c = m1c_derived()?;
    let q = example4_quotient(ex, &m1c)?;
    let expected = PoincarePoly::from_exponents(ex.q_exponents.iter().copied());
    let printed = &PoincarePoly::ones(ex.m1c_printed_upper + 1)
        + &PoincarePoly::from_exponents(ex.m1c_printed_extra.iter().copied());
    let printed_note = match example4_quotient(ex, &printed) {
        Ok(qp) if qp == expected => "printed P(M_1,C) (sum to t^26) also reproduces Q".to_string(),
        Ok(qp) => {
            format!(
            "printed P(M_1,C) (sum to t^26, rank {}) gives a different quotient with {} terms{}",
            printed.eval_one(),
            qp.eval_one(),
            if qp.is_nonnegative() { "" } else { " and negative coefficients" }
        )
        }
        Err(_) => format!(
            "printed P(M_1,C) (sum to t^26, rank {}) is not exactly divisible",
            printed.eval_one()
        ),
    };
    let ok = q == expected;
    Ok((
        ok,
        format!(
            "P(M_1,C) = {m1c} (rank {}); Q = {q}; {printed_note}",
            m1c.eval_one()
        ),
        q,
    ))
}

fn check_shift_candidates(ex: &Example4) -> Check {
    let (_, _, q) = check_q_poly(ex)?;
    let ks = shift_candidates(&q, &ex.shift_offsets);
    Ok((
        ks == ex.shift_candidates,
        format!(
            "shift candidates {{{}}} (expected {{{}}})",
            fmt_list(&ks),
            fmt_list(&ex.shift_candidates)
        ),
    ))
}

/// Specs `(p, n, m)` with `p^n ≤ bound`, `0 ≤ m < n`.
pub fn small_specs(bound: u32) -> Vec<GeometrySpec> {
    let mut out = Vec::new();
    for p in (2..=bound).filter(|&p| crate::gflin::is_prime(p)) {
        let mut n = 1;
        while p.pow(n) <= bound {
            for m in 0..n {
                out.push(GeometrySpec::new(p, n, m).expect("valid by construction"));
            }
            n += 1;
        }
    }
    out
}

/// For every spec satisfying the decomposability hypotheses, the certificates
/// `β_k` lie in `R` and push forward to `c_1^k`, so `dim V_k ≥ 1` for `2 ≤ k ≤ r`.
pub fn beta_certificates(spec: &GeometrySpec) -> Result<Vec<u32>> {
    let ring = ProdRing::new(*spec);
    let (d, r, k) = (spec.d(), spec.r(), spec.k());
    let spans = graded_spans(&ring, d + r);
    let g = ring.grass();
    let c1 = g.scale(&g.h(1), -1);
    let fixed = ring.multiply(
        &ring.multiply(&ring.chern_t(r as i64)?, &ring.chern_t(k as i64 - 1)?)?,
        &ring.chern_t(2)?,
    )?;
    let ct1 = ring.chern_t(1)?;
    let mut failed = Vec::new();
    let mut beta = fixed;
    for kk in 2..=r {
        let ok = spans.contains(&beta)? && ring.pushforward(&beta) == g.pow(&c1, kk)?;
        if !ok {
            failed.push(kk);
        }
        beta = ring.multiply(&beta, &ct1)?;
    }
    Ok(failed)
}

fn check_beta_sweep(bound: u32) -> Check {
    let specs: Vec<_> = small_specs(bound)
        .into_iter()
        .filter(corollary_applies)
        .collect();
    let mut notes = Vec::new();
    let mut ok = !specs.is_empty();
    for s in &specs {
        let failed = beta_certificates(s)?;
        let dims = v_dims(&ProdRing::new(*s), s.r().min(s.shift_range()))?;
        let dims_ok = (2..=s.r().min(s.shift_range())).all(|k| dims[k as usize] >= 1);
        ok &= failed.is_empty() && dims_ok;
        notes.push(format!(
            "({},{},{}) k=2..{}: {}",
            s.p,
            s.n,
            s.m,
            s.r(),
            if failed.is_empty() && dims_ok {
                "ok".into()
            } else {
                format!("FAIL at {}", fmt_list(&failed))
            }
        ));
    }
    Ok((ok, notes.join("; ")))
}

fn check_duality(max_shift: u32) -> Check {
    let mut notes = Vec::new();
    let mut ok = true;
    for s in small_specs(16)
        .into_iter()
        .filter(|s| s.m > 0 && s.shift_range() <= max_shift)
    {
        let dims = v_dims(&ProdRing::new(s), s.shift_range())?;
        let sym = dims.iter().eq(dims.iter().rev());
        ok &= sym;
        notes.push(format!(
            "({},{},{}) a = {}{}",
            s.p,
            s.n,
            s.m,
            fmt_list(&dims),
            if sym { "" } else { " NOT symmetric" }
        ));
    }
    Ok((ok, notes.join("; ")))
}

/// Pass/fail counts by id, in run order.
pub fn summary(outcomes: &[CaseOutcome]) -> BTreeMap<&'static str, usize> {
    let passed = outcomes.iter().filter(|o| o.passed).count();
    BTreeMap::from([("passed", passed), ("failed", outcomes.len() - passed)])
}
