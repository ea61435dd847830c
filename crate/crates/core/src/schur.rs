//! Partitions and the Chow ring of the Grassmannian `G(k, n)` over `F_p` in
//! the Schubert basis.
//!
//! A Schubert class `σ_λ` is indexed by a partition fitting the `k × (n−k)`
//! box. The special classes are `σ_(i) = h_i` and `σ_(1^i) = e_i`; products
//! with them follow the Pieri rules, and a general product `σ_λ · σ_μ` is
//! obtained by expanding `σ_μ` through a Jacobi–Trudi determinant (in `h` or
//! in `e`, whichever is smaller) and applying Pieri steps. Every step is
//! truncated to the box, which is legitimate because the classes outside the
//! box span an ideal of the ring of symmetric functions.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::gflin::PrimeField;

/// A partition: weakly decreasing positive parts. The empty partition is `∅`.
///
/// The ordering is the canonical term order used everywhere in the crate:
/// first by size, then lexicographically *decreasing*, so `[2]` precedes
/// `[1,1]`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(parts));
        }
        Ok(Self(parts))
    }

    /// Drops trailing zeros; panics on an increasing sequence.
    pub(crate) fn from_padded(mut parts: Vec<u32>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        Self(parts)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// The one-row partition `(i)`; empty for `i = 0`.
    pub fn row(i: u32) -> Self {
        if i == 0 {
            Self::empty()
        } else {
            Self(vec![i])
        }
    }

    /// The one-column partition `(1^i)`.
    pub fn column(i: u32) -> Self {
        Self(vec![1; i as usize])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Self {
        let first = self.part(0);
        Self(
            (1..=first)
                .map(|j| self.0.iter().filter(|&&x| x >= j).count() as u32)
                .collect(),
        )
    }

    pub fn fits(&self, bbox: GrassBox) -> bool {
        self.len() <= bbox.rows as usize && self.part(0) <= bbox.cols
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            position: 0,
            message: format!("bad partition literal {s:?}"),
        };
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(bad)?;
        if inner.trim().is_empty() {
            return Ok(Self::empty());
        }
        let parts = inner
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

/// The `rows × cols` rectangle bounding Schubert classes of `G(rows, rows + cols)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GrassBox {
    pub rows: u32,
    pub cols: u32,
}

impl GrassBox {
    pub fn new(rows: u32, cols: u32) -> Result<Self> {
        if rows == 0 {
            return Err(Error::InvalidSpec {
                p: 0,
                n: rows + cols,
                m: rows,
                reason: "box needs at least one row".into(),
            });
        }
        Ok(Self { rows, cols })
    }

    pub fn top_degree(&self) -> u32 {
        self.rows * self.cols
    }

    fn check(&self, lambda: &Partition) -> Result<()> {
        if lambda.fits(*self) {
            Ok(())
        } else {
            Err(Error::OutsideBox {
                partition: lambda.to_string(),
                rows: self.rows,
                cols: self.cols,
            })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strip {
    /// Horizontal strips: multiplication by `h_i = σ_(i)`.
    Row,
    /// Vertical strips: multiplication by `e_i = σ_(1^i)`.
    Column,
}

/// Pieri rule: all `μ` in the box with `μ/λ` a horizontal (`Row`) or vertical
/// (`Column`) strip of size `i`, in canonical order.
pub fn pieri(lambda: &Partition, i: u32, kind: Strip, bbox: GrassBox) -> Result<Vec<Partition>> {
    bbox.check(lambda)?;
    let mut out = match kind {
        Strip::Row => row_strips(lambda, i, bbox),
        Strip::Column => column_strips(lambda, i, bbox),
    };
    out.sort();
    Ok(out)
}

fn row_strips(lambda: &Partition, i: u32, bbox: GrassBox) -> Vec<Partition> {
    let rows = bbox.rows as usize;
    let mut out = Vec::new();
    let mut mu = vec![0u32; rows];
    fn rec(
        j: usize,
        left: u32,
        lambda: &Partition,
        bbox: GrassBox,
        mu: &mut Vec<u32>,
        out: &mut Vec<Partition>,
    ) {
        if j == mu.len() {
            if left == 0 {
                out.push(Partition::from_padded(mu.clone()));
            }
            return;
        }
        let lo = lambda.part(j);
        let hi = if j == 0 {
            bbox.cols
        } else {
            lambda.part(j - 1)
        };
        if lo > hi {
            return;
        }
        let max_add = (hi - lo).min(left);
        for add in 0..=max_add {
            mu[j] = lo + add;
            rec(j + 1, left - add, lambda, bbox, mu, out);
        }
    }
    rec(0, i, lambda, bbox, &mut mu, &mut out);
    out
}

fn column_strips(lambda: &Partition, i: u32, bbox: GrassBox) -> Vec<Partition> {
    let rows = bbox.rows as usize;
    let mut out = Vec::new();
    let mut mu = vec![0u32; rows];
    fn rec(
        j: usize,
        left: u32,
        lambda: &Partition,
        bbox: GrassBox,
        mu: &mut Vec<u32>,
        out: &mut Vec<Partition>,
    ) {
        if left as usize > mu.len() - j {
            return;
        }
        if j == mu.len() {
            out.push(Partition::from_padded(mu.clone()));
            return;
        }
        let base = lambda.part(j);
        mu[j] = base;
        rec(j + 1, left, lambda, bbox, mu, out);
        let grown = base + 1;
        let room = j == 0 || grown <= mu[j - 1];
        if left > 0 && grown <= bbox.cols && room {
            mu[j] = grown;
            rec(j + 1, left - 1, lambda, bbox, mu, out);
        }
    }
    rec(0, i, lambda, bbox, &mut mu, &mut out);
    out
}

/// All partitions of the box in canonical order, with lazily built Pieri
/// tables over their indices.
pub struct BoxBasis {
    bbox: GrassBox,
    parts: Vec<Partition>,
    index: HashMap<Partition, u32>,
    /// `starts[s]..starts[s + 1]` are the indices of partitions of size `s`.
    starts: Vec<u32>,
    row_tables: Vec<OnceLock<Vec<Vec<u32>>>>,
    col_tables: Vec<OnceLock<Vec<Vec<u32>>>>,
}

impl BoxBasis {
    pub fn new(bbox: GrassBox) -> Self {
        let mut parts = Vec::new();
        let mut cur = Vec::new();
        fn rec(cur: &mut Vec<u32>, max: u32, rows: usize, out: &mut Vec<Partition>) {
            out.push(Partition(cur.clone()));
            if cur.len() == rows {
                return;
            }
            for x in 1..=max {
                cur.push(x);
                rec(cur, x, rows, out);
                cur.pop();
            }
        }
        rec(&mut cur, bbox.cols, bbox.rows as usize, &mut parts);
        parts.sort();
        let index = parts
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i as u32))
            .collect();
        let top = bbox.top_degree() as usize;
        let mut starts = vec![0u32; top + 2];
        for l in &parts {
            starts[l.size() as usize + 1] += 1;
        }
        for s in 1..starts.len() {
            starts[s] += starts[s - 1];
        }
        Self {
            bbox,
            parts,
            index,
            starts,
            row_tables: (0..=bbox.cols).map(|_| OnceLock::new()).collect(),
            col_tables: (0..=bbox.rows).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn bbox(&self) -> GrassBox {
        self.bbox
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn partition(&self, idx: u32) -> &Partition {
        &self.parts[idx as usize]
    }

    pub fn index_of(&self, lambda: &Partition) -> Option<u32> {
        self.index.get(lambda).copied()
    }

    /// Index range of partitions of size `s` (empty past the top degree).
    pub fn degree_range(&self, s: u32) -> std::ops::Range<u32> {
        let s = s as usize;
        if s + 1 >= self.starts.len() {
            let end = *self.starts.last().unwrap();
            return end..end;
        }
        self.starts[s]..self.starts[s + 1]
    }

    pub fn degree_count(&self, s: u32) -> usize {
        self.degree_range(s).len()
    }

    /// Indices of `σ_λ · h_l` (all coefficients 1).
    pub fn row_strip(&self, idx: u32, l: u32) -> &[u32] {
        if l > self.bbox.cols {
            return &[];
        }
        &self.row_tables[l as usize].get_or_init(|| self.build_table(l, Strip::Row))[idx as usize]
    }

    /// Indices of `σ_λ · e_l` (all coefficients 1).
    pub fn col_strip(&self, idx: u32, l: u32) -> &[u32] {
        if l > self.bbox.rows {
            return &[];
        }
        &self.col_tables[l as usize].get_or_init(|| self.build_table(l, Strip::Column))
            [idx as usize]
    }

    fn build_table(&self, l: u32, kind: Strip) -> Vec<Vec<u32>> {
        self.parts
            .iter()
            .map(|lam| {
                let res = match kind {
                    Strip::Row => row_strips(lam, l, self.bbox),
                    Strip::Column => column_strips(lam, l, self.bbox),
                };
                let mut idx: Vec<u32> = res.iter().map(|m| self.index[m]).collect();
                idx.sort_unstable();
                idx
            })
            .collect()
    }
}

/// Coefficient field plus box: identifies a ring `Ch(G(k, n); F_p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec {
    pub field: PrimeField,
    pub bbox: GrassBox,
}

/// Shared handle on `Ch(G(k, n); F_p)` with its basis and Pieri tables.
#[derive(Clone)]
pub struct GrassRing {
    spec: RingSpec,
    basis: Arc<BoxBasis>,
}

impl fmt::Debug for GrassRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GrassRing({}, {}x{} box)",
            self.spec.field, self.spec.bbox.rows, self.spec.bbox.cols
        )
    }
}

/// Homogeneous element of `Ch(G(k, n); F_p)`: basis index → nonzero scalar.
#[derive(Clone)]
pub struct GrassClass {
    ring: GrassRing,
    degree: u32,
    terms: BTreeMap<u32, u32>,
}

impl PartialEq for GrassClass {
    fn eq(&self, other: &Self) -> bool {
        self.ring.spec == other.ring.spec
            && self.degree == other.degree
            && self.terms == other.terms
    }
}

impl Eq for GrassClass {}

impl fmt::Debug for GrassClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GrassClass(deg {}: {})", self.degree, self)
    }
}

impl fmt::Display for GrassClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let field = self.ring.field();
        let terms = self.terms.iter().map(|(&i, &c)| {
            (
                field.signed(c),
                format!("sigma{}", self.ring.basis.partition(i)),
            )
        });
        write_signed_sum(f, terms)
    }
}

/// Writes `c1*t1 + c2*t2 - ...` with unit coefficients elided; `0` when empty.
pub(crate) fn write_signed_sum(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (i64, String)>,
) -> fmt::Result {
    let mut first = true;
    for (c, t) in terms {
        let (neg, mag) = (c < 0, c.unsigned_abs());
        match (first, neg) {
            (true, true) => write!(f, "-")?,
            (true, false) => {}
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
        }
        if mag == 1 {
            write!(f, "{t}")?;
        } else {
            write!(f, "{mag}*{t}")?;
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl GrassClass {
    pub fn ring(&self) -> &GrassRing {
        &self.ring
    }

    pub fn degree(&self) -> u32 {
        self.degree
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

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Partition, u32)> + '_ {
        self.terms
            .iter()
            .map(|(&i, &c)| (self.ring.basis.partition(i), c))
    }

    pub fn index_terms(&self) -> &BTreeMap<u32, u32> {
        &self.terms
    }

    pub fn coeff(&self, lambda: &Partition) -> u32 {
        self.ring
            .basis
            .index_of(lambda)
            .and_then(|i| self.terms.get(&i).copied())
            .unwrap_or(0)
    }

    /// Coordinates in the degree slice of the basis (canonical order).
    pub fn to_dense(&self) -> Vec<u32> {
        let range = self.ring.basis.degree_range(self.degree);
        let mut out = vec![0u32; range.len()];
        for (&i, &c) in &self.terms {
            out[(i - range.start) as usize] = c;
        }
        out
    }
}

impl GrassRing {
    pub fn new(spec: RingSpec) -> Self {
        Self {
            spec,
            basis: Arc::new(BoxBasis::new(spec.bbox)),
        }
    }

    /// `Ch(G(k, n); F_p)`.
    pub fn grassmannian(k: u32, n: u32, p: u32) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::InvalidSpec {
                p,
                n,
                m: k,
                reason: "need 1 <= k <= n".into(),
            });
        }
        let field = PrimeField::new(p)?;
        Ok(Self::new(RingSpec {
            field,
            bbox: GrassBox::new(k, n - k)?,
        }))
    }

    pub fn spec(&self) -> RingSpec {
        self.spec
    }

    pub fn field(&self) -> PrimeField {
        self.spec.field
    }

    pub fn bbox(&self) -> GrassBox {
        self.spec.bbox
    }

    pub fn basis(&self) -> &BoxBasis {
        &self.basis
    }

    pub(crate) fn class_from_terms(&self, degree: u32, terms: BTreeMap<u32, u32>) -> GrassClass {
        debug_assert!(terms.values().all(|&c| c != 0));
        GrassClass {
            ring: self.clone(),
            degree,
            terms,
        }
    }

    /// Class from dense coordinates over the degree slice.
    pub fn from_dense(&self, degree: u32, coords: &[u32]) -> GrassClass {
        let start = self.basis.degree_range(degree).start;
        let terms = coords
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (start + i as u32, c))
            .collect();
        self.class_from_terms(degree, terms)
    }

    pub fn zero(&self, degree: u32) -> GrassClass {
        self.class_from_terms(degree, BTreeMap::new())
    }

    pub fn one(&self) -> GrassClass {
        self.sigma(&Partition::empty()).unwrap()
    }

    pub fn sigma(&self, lambda: &Partition) -> Result<GrassClass> {
        self.spec.bbox.check(lambda)?;
        Ok(self.monomial(lambda, 1))
    }

    /// `c · σ_λ`; zero when `λ` leaves the box.
    pub fn monomial(&self, lambda: &Partition, c: i64) -> GrassClass {
        let c = self.field().reduce(c);
        let mut terms = BTreeMap::new();
        if let Some(i) = self.basis.index_of(lambda) {
            if c != 0 {
                terms.insert(i, c);
            }
        }
        self.class_from_terms(lambda.size(), terms)
    }

    /// `h_i = σ_(i)`, zero for `i` wider than the box.
    pub fn h(&self, i: u32) -> GrassClass {
        self.monomial(&Partition::row(i), 1)
    }

    /// `e_i = σ_(1^i)`, zero for `i` taller than the box.
    pub fn e(&self, i: u32) -> GrassClass {
        self.monomial(&Partition::column(i), 1)
    }

    fn check_same(&self, a: &GrassClass) -> Result<()> {
        if a.ring.spec != self.spec {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, a: &GrassClass, b: &GrassClass) -> Result<GrassClass> {
        self.check_same(a)?;
        self.check_same(b)?;
        if a.degree != b.degree && !a.is_zero() && !b.is_zero() {
            return Err(Error::DegreeMismatch {
                expected: a.degree,
                found: b.degree,
            });
        }
        let degree = if a.is_zero() { b.degree } else { a.degree };
        let f = self.field();
        let mut terms = a.terms.clone();
        for (&i, &c) in &b.terms {
            accumulate(&mut terms, f, i, c);
        }
        Ok(self.class_from_terms(degree, terms))
    }

    pub fn scale(&self, a: &GrassClass, c: i64) -> GrassClass {
        let f = self.field();
        let c = f.reduce(c);
        let terms = if c == 0 {
            BTreeMap::new()
        } else {
            a.terms.iter().map(|(&i, &x)| (i, f.mul(x, c))).collect()
        };
        self.class_from_terms(a.degree, terms)
    }

    /// Multiplies by the special class `h_l` (`Strip::Row`) or `e_l` (`Strip::Column`).
    pub fn mul_special(&self, a: &GrassClass, l: u32, kind: Strip) -> GrassClass {
        let f = self.field();
        let mut terms = BTreeMap::new();
        for (&i, &c) in &a.terms {
            let images = match kind {
                Strip::Row => self.basis.row_strip(i, l),
                Strip::Column => self.basis.col_strip(i, l),
            };
            for &j in images {
                accumulate(&mut terms, f, j, c);
            }
        }
        self.class_from_terms(a.degree + l, terms)
    }

    /// Product in `Ch(G(k, n); F_p)`.
    pub fn multiply(&self, a: &GrassClass, b: &GrassClass) -> Result<GrassClass> {
        self.check_same(a)?;
        self.check_same(b)?;
        let degree = a.degree + b.degree;
        let f = self.field();
        let mut terms = BTreeMap::new();
        // Expand the factor with fewer terms.
        let (a, b) = if a.terms.len() >= b.terms.len() {
            (a, b)
        } else {
            (b, a)
        };
        for (&j, &c) in &b.terms {
            let mu = self.basis.partition(j).clone();
            let prod = self.mul_schur(a, &mu);
            for (&i, &x) in &prod.terms {
                accumulate(&mut terms, f, i, f.mul(x, c));
            }
        }
        Ok(self.class_from_terms(degree, terms))
    }

    /// `a · σ_μ` through the Jacobi–Trudi determinant of `σ_μ`.
    ///
    /// The determinant is expanded row by row; the state after `i` rows is the
    /// set of columns used so far, so the work is `2^size` Pieri sweeps rather
    /// than `size!`.
    fn mul_schur(&self, a: &GrassClass, mu: &Partition) -> GrassClass {
        if mu.is_empty() {
            return a.clone();
        }
        // h-form has size len(μ), e-form has size μ_1.
        let (lam, kind) = if mu.len() <= mu.part(0) as usize {
            (mu.clone(), Strip::Row)
        } else {
            (mu.conjugate(), Strip::Column)
        };
        let size = lam.len();
        let f = self.field();
        let mut states: HashMap<u32, GrassClass> = HashMap::new();
        states.insert(0, a.clone());
        for row in 0..size {
            let mut next: HashMap<u32, GrassClass> = HashMap::new();
            for (mask, cls) in states {
                for col in 0..size {
                    if mask & (1 << col) != 0 {
                        continue;
                    }
                    // entry (row, col) = h_{λ_row − row + col} (0-based)
                    let idx = lam.part(row) as i64 - row as i64 + col as i64;
                    if idx < 0 {
                        continue;
                    }
                    let inversions = (mask >> (col + 1)).count_ones() as u64;
                    let prod = self.mul_special(&cls, idx as u32, kind);
                    if prod.is_zero() {
                        continue;
                    }
                    let prod = self.scale(&prod, f.signed(f.sign(inversions)));
                    let key = mask | (1 << col);
                    match next.get_mut(&key) {
                        Some(acc) => {
                            for (&i, &c) in &prod.terms {
                                accumulate(&mut acc.terms, f, i, c);
                            }
                        }
                        None => {
                            next.insert(key, prod);
                        }
                    }
                }
            }
            states = next;
        }
        let full = (1u32 << size) - 1;
        let mut out = states.remove(&full).unwrap_or_else(|| self.zero(0));
        out.degree = a.degree + mu.size();
        out
    }

    pub fn pow(&self, a: &GrassClass, e: u32) -> Result<GrassClass> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.multiply(&acc, a)?;
        }
        Ok(acc)
    }

    /// Expands a polynomial in `e_i`, `h_i` with integer coefficients into the
    /// Schubert basis. Returns the nonzero graded components, by degree.
    pub fn expand_in_schur(&self, poly: &FormalPoly) -> Result<BTreeMap<u32, GrassClass>> {
        let mut out: BTreeMap<u32, GrassClass> = BTreeMap::new();
        for (coeff, factors) in &poly.terms {
            let mut cls = self.scale(&self.one(), *coeff);
            for &(gen, exp) in factors {
                for _ in 0..exp {
                    cls = match gen {
                        SpecialGen::E(i) => self.mul_special(&cls, i, Strip::Column),
                        SpecialGen::H(i) => self.mul_special(&cls, i, Strip::Row),
                    };
                }
            }
            let deg = cls.degree;
            let acc = match out.remove(&deg) {
                Some(prev) => self.add(&prev, &cls)?,
                None => cls,
            };
            out.insert(deg, acc);
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }
}

pub(crate) fn accumulate(terms: &mut BTreeMap<u32, u32>, f: PrimeField, i: u32, c: u32) {
    if c == 0 {
        return;
    }
    let e = terms.entry(i).or_insert(0);
    *e = f.add(*e, c);
    if *e == 0 {
        terms.remove(&i);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpecialGen {
    E(u32),
    H(u32),
}

/// A polynomial in the special classes: `Σ coeff · Π gen^exp`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalPoly {
    pub terms: Vec<(i64, Vec<(SpecialGen, u32)>)>,
}

impl FormalPoly {
    pub fn term(mut self, coeff: i64, factors: &[(SpecialGen, u32)]) -> Self {
        self.terms.push((coeff, factors.to_vec()));
        self
    }
}
