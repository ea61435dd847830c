//! Poincaré polynomials, binomial arithmetic mod `p`, and the decomposition
//! report.
//!
//! For `Y = X(p^m, D)` and `X = X(1, D)` the multiplicity `a_k` of `M(X)(k)` in
//! the complete decomposition of `M(Y)` is `dim V_k`. Whatever is left of
//! `P(M(Y), t)` after removing `Σ a_k t^k P(M(X), t)` is the Poincaré
//! polynomial of the upper motive.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::chowprod::{GeometrySpec, ProdRing};
use crate::error::{Error, Result};
use crate::subring::{v_spaces, ClosureOptions};

/// Integer polynomial in `t`; `coeffs[i]` is the coefficient of `t^i`.
/// Trailing zeros are always trimmed, so the zero polynomial is `[]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<i64>", into = "Vec<i64>")]
pub struct PoincarePoly {
    coeffs: Vec<i64>,
}

impl From<Vec<i64>> for PoincarePoly {
    fn from(coeffs: Vec<i64>) -> Self {
        Self::new(coeffs)
    }
}

impl From<PoincarePoly> for Vec<i64> {
    fn from(p: PoincarePoly) -> Self {
        p.coeffs
    }
}

impl PoincarePoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::new(vec![1])
    }

    /// `t^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![0; k + 1];
        c[k] = 1;
        Self::new(c)
    }

    /// `Σ_{e ∈ exps} t^e`.
    pub fn from_exponents(exps: impl IntoIterator<Item = usize>) -> Self {
        let mut c = Vec::new();
        for e in exps {
            if c.len() <= e {
                c.resize(e + 1, 0);
            }
            c[e] += 1;
        }
        Self::new(c)
    }

    /// `1 + t + … + t^{len−1}`.
    pub fn ones(len: usize) -> Self {
        Self::new(vec![1; len])
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Value at `t = 1`: the total rank.
    pub fn eval_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// `t^k · self`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![0; k];
        c.extend_from_slice(&self.coeffs);
        Self::new(c)
    }

    pub fn scale(&self, s: i64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    /// Symmetric about half of its degree. The zero polynomial counts as palindromic.
    pub fn is_palindromic(&self) -> bool {
        let n = self.coeffs.len();
        (0..n / 2).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }

    /// Exponents with nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// Exact quotient `self / den`, or the remainder as an error.
    pub fn divide_exact(&self, den: &PoincarePoly) -> Result<PoincarePoly> {
        let Some(dd) = den.degree() else {
            return Err(Error::DivisionByZero);
        };
        let lead = den.coeffs[dd];
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return if self.is_zero() {
                Ok(Self::zero())
            } else {
                Err(Error::NonExactDivision {
                    remainder: self.clone(),
                })
            };
        }
        let mut quot = vec![0i64; rem.len() - dd];
        for q in (0..quot.len()).rev() {
            let top = rem[q + dd];
            if top == 0 {
                continue;
            }
            if top % lead != 0 {
                return Err(Error::NonExactDivision {
                    remainder: Self::new(rem),
                });
            }
            let f = top / lead;
            quot[q] = f;
            for (i, &c) in den.coeffs.iter().enumerate() {
                rem[q + i] -= f * c;
            }
        }
        let rem = Self::new(rem);
        if rem.is_zero() {
            Ok(Self::new(quot))
        } else {
            Err(Error::NonExactDivision { remainder: rem })
        }
    }
}

impl Add for &PoincarePoly {
    type Output = PoincarePoly;
    fn add(self, rhs: &PoincarePoly) -> PoincarePoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PoincarePoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &PoincarePoly {
    type Output = PoincarePoly;
    fn sub(self, rhs: &PoincarePoly) -> PoincarePoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PoincarePoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &PoincarePoly {
    type Output = PoincarePoly;
    fn mul(self, rhs: &PoincarePoly) -> PoincarePoly {
        if self.is_zero() || rhs.is_zero() {
            return PoincarePoly::zero();
        }
        let mut c = vec![0i64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        PoincarePoly::new(c)
    }
}

impl fmt::Display for PoincarePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                let t = match i {
                    0 => "1".to_string(),
                    1 => "t".to_string(),
                    _ => format!("t^{i}"),
                };
                (c, t)
            })
            .collect::<Vec<_>>();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (c, t)) in terms.iter().enumerate() {
            let mag = c.unsigned_abs();
            match (n, *c < 0) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if t == "1" {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{t}")?;
            } else {
                write!(f, "{mag}*{t}")?;
            }
        }
        Ok(())
    }
}

/// The Gaussian binomial `[n, k]_t = Π_{i=1}^{k} (1 − t^{n−k+i}) / (1 − t^i)`,
/// the Poincaré polynomial of `G(k, n)`.
pub fn poincare_grassmannian(k: u32, n: u32) -> Result<PoincarePoly> {
    if k > n {
        return Err(Error::InvalidSpec {
            p: 0,
            n,
            m: k,
            reason: "need k <= n".into(),
        });
    }
    let one_minus = |e: u32| PoincarePoly::one().sub(&PoincarePoly::monomial(e as usize));
    let mut num = PoincarePoly::one();
    let mut den = PoincarePoly::one();
    for i in 1..=k {
        num = &num * &one_minus(n - k + i);
        den = &den * &one_minus(i);
    }
    Ok(num
        .divide_exact(&den)
        .expect("Gaussian binomial quotient is exact"))
}

/// `C(a, b) mod p` by Lucas' theorem.
pub fn lucas_binom(mut a: u64, mut b: u64, p: u32) -> u32 {
    let p64 = p as u64;
    let mut acc: u64 = 1;
    while b > 0 {
        let (ad, bd) = (a % p64, b % p64);
        if bd > ad {
            return 0;
        }
        acc = acc * small_binom_mod(ad, bd, p64) % p64;
        a /= p64;
        b /= p64;
    }
    (acc % p64) as u32
}

fn small_binom_mod(a: u64, b: u64, p: u64) -> u64 {
    // a < p, so the denominator is invertible
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..b {
        num = num * ((a - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    let mut inv = 1u64;
    let (mut base, mut e) = (den, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            inv = inv * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    num * inv % p
}

/// The `p`-adic valuation of a positive integer.
pub fn vp(mut l: u64, p: u32) -> u32 {
    assert!(l > 0, "v_p(0) is undefined");
    let mut v = 0;
    while l.is_multiple_of(p as u64) {
        l /= p as u64;
        v += 1;
    }
    v
}

/// The three binomial congruences behind the `β_k` certificates:
/// `C(r, 2) ≡ 0`, `C(r, p^m − 1) ≡ 0` and `C(r − 1, p^m − 2) ≡ (−1)^{p^m − 2}`.
pub fn corollary_conditions(spec: &GeometrySpec) -> Result<(bool, bool, bool)> {
    if spec.m == 0 {
        return Err(Error::CorollaryNeedsPositiveM);
    }
    let p = spec.p;
    let f = spec.field();
    let r = spec.r() as u64;
    let k = spec.k() as u64;
    let first = lucas_binom(r, 2, p) == 0;
    let second = lucas_binom(r, k - 1, p) == 0;
    let third = lucas_binom(r - 1, k - 2, p) == f.sign(k - 2);
    Ok((first, second, third))
}

/// Whether `(p, n, m)` satisfies `p = 2, 1 < m < n` or `p > 2, 0 < m < n`.
pub fn corollary_applies(spec: &GeometrySpec) -> bool {
    if spec.p == 2 {
        spec.m > 1 && spec.m < spec.n
    } else {
        spec.m > 0 && spec.m < spec.n
    }
}

/// All `k >= 0` with `q − Σ_{o ∈ offsets} t^{k+o}` coefficientwise nonnegative.
pub fn shift_candidates(q: &PoincarePoly, offsets: &[usize]) -> Vec<usize> {
    assert!(!offsets.is_empty(), "offsets must be nonempty");
    let Some(deg) = q.degree() else {
        return Vec::new();
    };
    let mut sorted = offsets.to_vec();
    sorted.sort_unstable();
    (0..=deg)
        .filter(|&k| {
            let probe = PoincarePoly::from_exponents(sorted.iter().map(|o| k + o));
            (q - &probe).is_nonnegative()
        })
        .collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub residual_nonnegative: bool,
    pub residual_palindromic: bool,
    /// Coefficient 1 at `t^0` and `t^{dim Y}`. For `m = 0` the residual is zero
    /// because the upper motive is `M(X)` itself; the flag is then set.
    pub residual_unit_ends: bool,
    pub duality_consistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    pub spec: GeometrySpec,
    /// `a_0, …, a_D`.
    pub multiplicities: Vec<u32>,
    pub residual: PoincarePoly,
    /// `dim V_k` was computed for `k` in `0..=computed_half`; the rest follow by duality.
    pub computed_half: u32,
    pub diagnostics: Diagnostics,
}

impl DecompositionReport {
    /// `P(M(Y)) = residual + Σ a_k t^k P(M(X))`.
    pub fn rank_identity_holds(&self) -> bool {
        let spec = &self.spec;
        let total = poincare_grassmannian(spec.k(), spec.algebra_degree()).unwrap();
        let px = PoincarePoly::ones(spec.d() as usize + 1);
        let mut sum = self.residual.clone();
        for (k, &a) in self.multiplicities.iter().enumerate() {
            sum = &sum + &px.shift(k).scale(a as i64);
        }
        sum == total
    }

    pub fn to_json(&self, elapsed_ms: u64) -> ReportJson {
        ReportJson {
            p: self.spec.p,
            n: self.spec.n,
            m: self.spec.m,
            dim_x: self.spec.dim_x(),
            dim_y: self.spec.dim_y(),
            shift_range: self.spec.shift_range(),
            multiplicities: self.multiplicities.clone(),
            residual: self.residual.clone(),
            diagnostics: self.diagnostics,
            elapsed_ms,
        }
    }
}

/// Serialized decomposition report; field order is the output key order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub p: u32,
    pub n: u32,
    pub m: u32,
    pub dim_x: u32,
    pub dim_y: u32,
    pub shift_range: u32,
    pub multiplicities: Vec<u32>,
    pub residual: PoincarePoly,
    pub diagnostics: Diagnostics,
    pub elapsed_ms: u64,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct DecomposeOptions {
    /// Highest shift computed directly; defaults to `ceil(D / 2)`.
    pub k_max: Option<u32>,
    pub closure: ClosureOptions,
}

pub fn decompose(spec: &GeometrySpec) -> Result<DecompositionReport> {
    decompose_with(spec, DecomposeOptions::default())
}

pub fn decompose_with(
    spec: &GeometrySpec,
    options: DecomposeOptions,
) -> Result<DecompositionReport> {
    let shift = spec.shift_range();
    let k_max = options.k_max.unwrap_or(shift.div_ceil(2));
    if k_max > shift {
        return Err(Error::ShiftOutOfRange {
            k: k_max,
            max: shift,
        });
    }
    let ring = ProdRing::new(*spec);
    let dims: Vec<u32> = v_spaces(&ring, k_max, options.closure)
        .iter()
        .map(|v| v.dim() as u32)
        .collect();
    let multiplicities: Vec<u32> = (0..=shift)
        .map(|k| {
            if k <= k_max {
                dims[k as usize]
            } else {
                dims[(shift - k) as usize]
            }
        })
        .collect();
    let duality_consistent = (0..=k_max)
        .filter(|&k| shift - k <= k_max)
        .all(|k| dims[k as usize] == dims[(shift - k) as usize]);

    let total = poincare_grassmannian(spec.k(), spec.algebra_degree())?;
    let px = PoincarePoly::ones(spec.d() as usize + 1);
    let mut residual = total;
    for (k, &a) in multiplicities.iter().enumerate() {
        residual = &residual - &px.shift(k).scale(a as i64);
    }
    let dim_y = spec.dim_y() as usize;
    let unit_ends = if spec.m == 0 {
        residual.is_zero()
    } else {
        residual.coeff(0) == 1 && residual.coeff(dim_y) == 1 && residual.degree() == Some(dim_y)
    };
    let diagnostics = Diagnostics {
        residual_nonnegative: residual.is_nonnegative(),
        residual_palindromic: residual.is_palindromic(),
        residual_unit_ends: unit_ends,
        duality_consistent,
    };
    let report = DecompositionReport {
        spec: *spec,
        multiplicities,
        residual,
        computed_half: k_max,
        diagnostics,
    };
    debug_assert!(report.rank_identity_holds());
    Ok(report)
}
