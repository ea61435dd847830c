//! The ring `Ch(P^d × G(p^m, p^n); F_p)` and the Chern classes of
//! `T = T₁ ⊠ (−T_{p^m})^∨`.
//!
//! Elements are sums of `h^a ⊗ σ_λ` with `h = c₁(T₁)` (so the hyperplane class
//! is `−h`) and `h^{d+1} = 0`. On the Grassmannian factor
//! `c_i = c_i((−T_{p^m})^∨) = (−1)^i σ_(i)` and `c̃_i = c_i(T_{p^m}^∨) = σ_(1^i)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::gflin::PrimeField;
use crate::motives::lucas_binom;
use crate::schur::{write_signed_sum, GrassBox, GrassClass, GrassRing, Partition, RingSpec};

/// The parameters `(p, n, m)` of `X(p^m, D)` for a division algebra `D` of
/// degree `p^n`, together with the derived dimensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GeometrySpec {
    pub p: u32,
    pub n: u32,
    pub m: u32,
    field: PrimeField,
    /// `p^n`
    degree: u32,
    /// `k = p^m`, rank of the tautological bundle on `Y`.
    k: u32,
}

impl GeometrySpec {
    pub fn new(p: u32, n: u32, m: u32) -> Result<Self> {
        let field = PrimeField::new(p)?;
        let invalid = |reason: &str| Error::InvalidSpec {
            p,
            n,
            m,
            reason: reason.to_string(),
        };
        if n == 0 {
            return Err(invalid("need n >= 1"));
        }
        if m >= n {
            return Err(invalid("need 0 <= m < n"));
        }
        let degree = p.checked_pow(n).ok_or_else(|| invalid("p^n overflows"))?;
        let k = p.pow(m);
        Ok(Self {
            p,
            n,
            m,
            field,
            degree,
            k,
        })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Degree `p^n` of the algebra.
    pub fn algebra_degree(&self) -> u32 {
        self.degree
    }

    /// `p^m`.
    pub fn k(&self) -> u32 {
        self.k
    }

    /// `d = dim X = p^n − 1`.
    pub fn d(&self) -> u32 {
        self.degree - 1
    }

    /// `r = p^n − p^m`: rank of `T` and width of the box.
    pub fn r(&self) -> u32 {
        self.degree - self.k
    }

    pub fn dim_x(&self) -> u32 {
        self.d()
    }

    pub fn dim_y(&self) -> u32 {
        self.k * self.r()
    }

    /// `D = dim Y − dim X`: shifts `M(X)(k)` can only occur for `0 <= k <= D`.
    pub fn shift_range(&self) -> u32 {
        self.dim_y() - self.d()
    }

    pub fn grass_box(&self) -> GrassBox {
        GrassBox {
            rows: self.k,
            cols: self.r(),
        }
    }

    pub fn ring_spec(&self) -> RingSpec {
        RingSpec {
            field: self.field,
            bbox: self.grass_box(),
        }
    }
}

impl fmt::Display for GeometrySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p={}, n={}, m={})", self.p, self.n, self.m)
    }
}

struct ProdRingInner {
    spec: GeometrySpec,
    grass: GrassRing,
    chern: OnceLock<Vec<ProdClass>>,
    inverse: Mutex<Vec<ProdClass>>,
}

/// Shared handle on `Ch(P^d × G; F_p)`.
#[derive(Clone)]
pub struct ProdRing(Arc<ProdRingInner>);

impl fmt::Debug for ProdRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProdRing{}", self.0.spec)
    }
}

/// Homogeneous element of `Ch(P^d × G; F_p)`, keyed by `(a, λ)` for
/// `h^a ⊗ σ_λ` with `a` as the major key.
#[derive(Clone)]
pub struct ProdClass {
    ring: ProdRing,
    codegree: u32,
    terms: BTreeMap<(u32, u32), u32>,
}

impl PartialEq for ProdClass {
    fn eq(&self, other: &Self) -> bool {
        self.ring.0.spec == other.ring.0.spec
            && self.codegree == other.codegree
            && self.terms == other.terms
    }
}

impl Eq for ProdClass {}

impl fmt::Debug for ProdClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProdClass(codeg {}: {})", self.codegree, self)
    }
}

impl fmt::Display for ProdClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = self.ring.field();
        let basis = self.ring.grass().basis();
        let terms = self
            .terms
            .iter()
            .map(|(&(a, i), &c)| (field.signed(c), format_prod_term(a, basis.partition(i))));
        write_signed_sum(f, terms)
    }
}

pub(crate) fn format_prod_term(a: u32, lambda: &Partition) -> String {
    match (a, lambda.is_empty()) {
        (0, _) => format!("sigma{lambda}"),
        (1, true) => "H".to_string(),
        (_, true) => format!("H^{a}"),
        (1, false) => format!("H*sigma{lambda}"),
        (_, false) => format!("H^{a}*sigma{lambda}"),
    }
}

impl ProdClass {
    pub fn ring(&self) -> &ProdRing {
        &self.ring
    }

    pub fn codegree(&self) -> u32 {
        self.codegree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(a, λ, coefficient)` in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &Partition, u32)> + '_ {
        let basis = self.ring.grass().basis();
        self.terms
            .iter()
            .map(move |(&(a, i), &c)| (a, basis.partition(i), c))
    }

    pub fn index_terms(&self) -> &BTreeMap<(u32, u32), u32> {
        &self.terms
    }

    pub fn coeff(&self, a: u32, lambda: &Partition) -> u32 {
        self.ring
            .grass()
            .basis()
            .index_of(lambda)
            .and_then(|i| self.terms.get(&(a, i)).copied())
            .unwrap_or(0)
    }

    /// Largest `h`-exponent present.
    pub fn max_h_exponent(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, _)| a).max()
    }

    /// The Grassmannian coefficient of `h^a`.
    pub fn h_component(&self, a: u32) -> GrassClass {
        let grass = self.ring.grass();
        let terms = self
            .terms
            .range((a, 0)..(a + 1, 0))
            .map(|(&(_, i), &c)| (i, c))
            .collect();
        grass.class_from_terms(self.codegree.saturating_sub(a), terms)
    }
}

impl ProdRing {
    pub fn new(spec: GeometrySpec) -> Self {
        Self(Arc::new(ProdRingInner {
            spec,
            grass: GrassRing::new(spec.ring_spec()),
            chern: OnceLock::new(),
            inverse: Mutex::new(Vec::new()),
        }))
    }

    pub fn spec(&self) -> GeometrySpec {
        self.0.spec
    }

    pub fn field(&self) -> PrimeField {
        self.0.spec.field()
    }

    pub fn grass(&self) -> &GrassRing {
        &self.0.grass
    }

    pub(crate) fn class_from_terms(
        &self,
        codegree: u32,
        terms: BTreeMap<(u32, u32), u32>,
    ) -> ProdClass {
        debug_assert!(terms.values().all(|&c| c != 0));
        debug_assert!(terms.keys().all(|&(a, _)| a <= self.spec().d()));
        ProdClass {
            ring: self.clone(),
            codegree,
            terms,
        }
    }

    pub fn zero(&self, codegree: u32) -> ProdClass {
        self.class_from_terms(codegree, BTreeMap::new())
    }

    pub fn one(&self) -> ProdClass {
        self.lift(0, &self.grass().one())
    }

    /// `h^a ⊗ y`; zero once `a > d`.
    pub fn lift(&self, a: u32, y: &GrassClass) -> ProdClass {
        let codegree = a + y.degree();
        if a > self.spec().d() {
            return self.zero(codegree);
        }
        let terms = y.index_terms().iter().map(|(&i, &c)| ((a, i), c)).collect();
        self.class_from_terms(codegree, terms)
    }

    /// `h^a ⊗ 1`.
    pub fn h_power(&self, a: u32) -> ProdClass {
        self.lift(a, &self.grass().one())
    }

    fn check_same(&self, u: &ProdClass) -> Result<()> {
        if u.ring.0.spec != self.0.spec {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, u: &ProdClass, v: &ProdClass) -> Result<ProdClass> {
        self.check_same(u)?;
        self.check_same(v)?;
        if u.codegree != v.codegree && !u.is_zero() && !v.is_zero() {
            return Err(Error::DegreeMismatch {
                expected: u.codegree,
                found: v.codegree,
            });
        }
        let codegree = if u.is_zero() { v.codegree } else { u.codegree };
        let f = self.field();
        let mut terms = u.terms.clone();
        for (&key, &c) in &v.terms {
            accumulate_pair(&mut terms, f, key, c);
        }
        Ok(self.class_from_terms(codegree, terms))
    }

    pub fn scale(&self, u: &ProdClass, c: i64) -> ProdClass {
        let f = self.field();
        let c = f.reduce(c);
        let terms = if c == 0 {
            BTreeMap::new()
        } else {
            u.terms.iter().map(|(&k, &x)| (k, f.mul(x, c))).collect()
        };
        self.class_from_terms(u.codegree, terms)
    }

    /// `c_i((−T_{p^m})^∨) = (−1)^i σ_(i)`, zero past the box width.
    pub fn special_class(&self, i: u32) -> GrassClass {
        let g = self.grass();
        g.scale(&g.h(i), if i.is_multiple_of(2) { 1 } else { -1 })
    }

    /// `c̃_i = c_i(T_{p^m}^∨) = σ_(1^i)`.
    pub fn dual_taut_class(&self, i: u32) -> GrassClass {
        self.grass().e(i)
    }

    /// `c_j(T) = Σ_i C(r−i, j−i) h^{j−i} ⊗ c_i`.
    pub fn chern_t(&self, j: i64) -> Result<ProdClass> {
        let r = self.spec().r();
        if j < 0 || j > r as i64 {
            return Err(Error::ChernIndex { index: j, rank: r });
        }
        Ok(self.chern_table()[j as usize].clone())
    }

    /// `c_0(T), …, c_r(T)`.
    pub fn chern_table(&self) -> &[ProdClass] {
        self.0.chern.get_or_init(|| {
            let r = self.spec().r();
            (0..=r).map(|j| self.build_chern(j)).collect()
        })
    }

    fn build_chern(&self, j: u32) -> ProdClass {
        let spec = self.spec();
        let f = self.field();
        let r = spec.r();
        let mut terms = BTreeMap::new();
        for i in 0..=j {
            let a = j - i;
            if a > spec.d() {
                continue;
            }
            let b = lucas_binom((r - i) as u64, a as u64, spec.p);
            if b == 0 {
                continue;
            }
            for (&idx, &c) in self.special_class(i).index_terms() {
                accumulate_pair(&mut terms, f, (a, idx), f.mul(b, c));
            }
        }
        self.class_from_terms(j, terms)
    }

    /// Ring product; `h`-exponents above `d` vanish.
    pub fn multiply(&self, u: &ProdClass, v: &ProdClass) -> Result<ProdClass> {
        self.check_same(u)?;
        self.check_same(v)?;
        let d = self.spec().d();
        let f = self.field();
        let g = self.grass();
        let split = |w: &ProdClass| -> Vec<(u32, GrassClass)> {
            let mut exps: Vec<u32> = w.terms.keys().map(|&(a, _)| a).collect();
            exps.dedup();
            exps.into_iter().map(|a| (a, w.h_component(a))).collect()
        };
        let (us, vs) = (split(u), split(v));
        let mut terms = BTreeMap::new();
        for (a, ua) in &us {
            for (b, vb) in &vs {
                if a + b > d {
                    continue;
                }
                let prod = g.multiply(ua, vb)?;
                for (&i, &c) in prod.index_terms() {
                    accumulate_pair(&mut terms, f, (a + b, i), c);
                }
            }
        }
        Ok(self.class_from_terms(u.codegree + v.codegree, terms))
    }

    pub fn pow(&self, u: &ProdClass, e: u32) -> Result<ProdClass> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.multiply(&acc, u)?;
        }
        Ok(acc)
    }

    /// Chern classes of `−T`: `s_0 = 1`, `s_j = −Σ_{i=1}^{min(j,r)} c_i(T) s_{j−i}`.
    pub fn inverse_chern_t(&self, j_max: u32) -> Vec<ProdClass> {
        let mut memo = self.0.inverse.lock().unwrap();
        if memo.is_empty() {
            memo.push(self.one());
        }
        let r = self.spec().r();
        while memo.len() <= j_max as usize {
            let j = memo.len() as u32;
            let mut acc = self.zero(j);
            for i in 1..=j.min(r) {
                let term = self
                    .multiply(&self.chern_table()[i as usize], &memo[(j - i) as usize])
                    .expect("same ring");
                acc = self.add(&acc, &term).expect("same degree");
            }
            memo.push(self.scale(&acc, -1));
        }
        memo[..=j_max as usize].to_vec()
    }

    /// Pushforward along the projection to `G`: the `h^d` coefficient times
    /// `deg(h^d) = (−1)^d`, since the point class is `(−h)^d`.
    pub fn pushforward(&self, u: &ProdClass) -> GrassClass {
        let d = self.spec().d();
        let f = self.field();
        let sign = f.sign(d as u64);
        assert_eq!(sign, 1 % f.p(), "(-1)^d must be 1 mod p");
        let comp = u.h_component(d);
        let g = self.grass();
        let out = g.scale(&comp, f.signed(sign));
        if u.codegree < d {
            g.zero(0)
        } else {
            g.class_from_terms(u.codegree - d, out.index_terms().clone())
        }
    }
}

fn accumulate_pair(terms: &mut BTreeMap<(u32, u32), u32>, f: PrimeField, key: (u32, u32), c: u32) {
    if c == 0 {
        return;
    }
    let e = terms.entry(key).or_insert(0);
    *e = f.add(*e, c);
    if *e == 0 {
        terms.remove(&key);
    }
}
