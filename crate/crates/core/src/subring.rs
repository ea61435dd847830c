//! The subring `R ⊆ Ch(P^d × G; F_p)` of rational cycles, generated by
//! `c_1(T), …, c_r(T)`, and its pushforwards `V_k = f_*(R^{d+k}) ⊆ Ch^k(G)`.
//!
//! `R` is built degree by degree: `R^j` is the span of `c_i(T) · R^{j−i}` over
//! `1 <= i <= min(j, r)`. Any monomial of positive degree in the generators
//! factors through one of them, so nothing is missed.
//!
//! The relation `c(T) · c(−T) = 1`, with `c_j(−T) = 0` for `j > p^m`, presents
//! `R` as a quotient of `Ch(G(p^m, p^n))`. Hence `dim R^j` is bounded by the
//! `t^j` coefficient of the Gaussian binomial `[p^n, p^m]_t`; once a degree
//! reaches the bound the remaining candidates are necessarily dependent and
//! are skipped (unless [`ClosureOptions::exhaustive`] is set).

use std::collections::{BTreeMap, VecDeque};

use rayon::prelude::*;

use crate::chowprod::{ProdClass, ProdRing};
use crate::error::{Error, Result};
use crate::gflin::{EchelonSpan, FpVector, PrimeField};
use crate::motives::poincare_grassmannian;
use crate::schur::GrassClass;

/// Coordinates of `Ch^j(P^d × G)`: pairs `(a, λ)` with `a` ascending, then `λ`
/// in canonical order.
#[derive(Clone, Debug)]
pub struct AmbientIndex {
    codegree: u32,
    /// `(a, first coordinate, first basis index of size j − a, count)`
    blocks: Vec<(u32, usize, u32, usize)>,
    dim: usize,
}

impl AmbientIndex {
    pub fn new(ring: &ProdRing, codegree: u32) -> Self {
        let basis = ring.grass().basis();
        let d = ring.spec().d();
        let mut blocks = Vec::new();
        let mut dim = 0;
        for a in 0..=codegree.min(d) {
            let range = basis.degree_range(codegree - a);
            if range.is_empty() {
                continue;
            }
            blocks.push((a, dim, range.start, range.len()));
            dim += range.len();
        }
        Self {
            codegree,
            blocks,
            dim,
        }
    }

    pub fn codegree(&self) -> u32 {
        self.codegree
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn block(&self, a: u32) -> Option<&(u32, usize, u32, usize)> {
        self.blocks
            .binary_search_by_key(&a, |b| b.0)
            .ok()
            .map(|i| &self.blocks[i])
    }

    /// Coordinate of `h^a ⊗ σ_λ` (λ given by basis index).
    pub fn coord(&self, a: u32, lambda: u32) -> Option<usize> {
        let &(_, off, start, len) = self.block(a)?;
        let local = lambda.checked_sub(start)? as usize;
        (local < len).then_some(off + local)
    }

    /// Inverse of [`coord`](Self::coord).
    pub fn key(&self, coord: usize) -> (u32, u32) {
        let b = self.blocks.partition_point(|b| b.1 <= coord) - 1;
        let (a, off, start, _) = self.blocks[b];
        (a, start + (coord - off) as u32)
    }

    pub fn to_dense(&self, u: &ProdClass) -> Result<Vec<u32>> {
        if u.codegree() != self.codegree {
            return Err(Error::DegreeMismatch {
                expected: self.codegree,
                found: u.codegree(),
            });
        }
        let mut out = vec![0u32; self.dim];
        for (&(a, i), &c) in u.index_terms() {
            out[self.coord(a, i).expect("term outside ambient index")] = c;
        }
        Ok(out)
    }

    pub fn to_class(&self, ring: &ProdRing, v: &[u32]) -> ProdClass {
        let terms: BTreeMap<(u32, u32), u32> = v
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (self.key(i), c))
            .collect();
        ring.class_from_terms(self.codegree, terms)
    }

    /// The `h^a` block of a dense vector, as coordinates of `Ch^{j−a}(G)`.
    pub fn h_block<'v>(&self, v: &'v [u32], a: u32) -> Option<&'v [u32]> {
        self.block(a).map(|&(_, off, _, len)| &v[off..off + len])
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ClosureOptions {
    /// Process every candidate even after a degree reaches its rank bound.
    pub exhaustive: bool,
    /// Candidates multiplied per parallel batch.
    pub batch: usize,
}

impl Default for ClosureOptions {
    fn default() -> Self {
        Self {
            exhaustive: false,
            batch: 64,
        }
    }
}

/// `c_i(T)` in sparse form: `(h-exponent, l, coefficient)` for the terms
/// `coefficient · h^{i−l} ⊗ σ_(l)`.
type Generator = Vec<(u32, u32, u32)>;

/// Streaming closure: yields `(j, R^j)` for `j = 0, 1, …`, keeping only the
/// `r + 1` most recent degrees alive.
pub struct SubringBuilder {
    ring: ProdRing,
    options: ClosureOptions,
    generators: Vec<Generator>,
    bounds: Vec<i64>,
    window: VecDeque<(AmbientIndex, EchelonSpan)>,
    next: u32,
}

impl SubringBuilder {
    pub fn new(ring: &ProdRing, options: ClosureOptions) -> Self {
        let spec = ring.spec();
        let grass = ring.grass();
        let basis = grass.basis();
        let generators = ring
            .chern_table()
            .iter()
            .map(|c| {
                c.index_terms()
                    .iter()
                    .map(|(&(a, idx), &coef)| {
                        let lam = basis.partition(idx);
                        debug_assert!(lam.len() <= 1);
                        (a, lam.size(), coef)
                    })
                    .collect()
            })
            .collect();
        let bounds = poincare_grassmannian(spec.k(), spec.algebra_degree())
            .expect("k <= n")
            .coeffs()
            .to_vec();
        Self {
            ring: ring.clone(),
            options,
            generators,
            bounds,
            window: VecDeque::new(),
            next: 0,
        }
    }

    /// Upper bound for `dim R^j`.
    pub fn rank_bound(&self, j: u32) -> usize {
        self.bounds.get(j as usize).copied().unwrap_or(0) as usize
    }

    fn span_of(&self, j: u32) -> Option<&(AmbientIndex, EchelonSpan)> {
        self.window.iter().find(|(ix, _)| ix.codegree() == j)
    }

    /// `c_i(T) · v` for `v` dense in `src` coordinates.
    fn multiply_dense(
        &self,
        i: u32,
        src: &AmbientIndex,
        v: &[u32],
        dst: &AmbientIndex,
    ) -> Vec<u32> {
        let f = self.ring.field();
        let basis = self.ring.grass().basis();
        let d = self.ring.spec().d();
        let p = f.p() as u64;
        let mut out = vec![0u64; dst.dim()];
        let gen = &self.generators[i as usize];
        for (coord, &x) in v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let (a, lam) = src.key(coord);
            for &(b, l, coef) in gen {
                if a + b > d {
                    continue;
                }
                let c = (x as u64 * coef as u64) % p;
                let Some(&(_, off, start, _)) = dst.block(a + b) else {
                    continue;
                };
                for &mu in basis.row_strip(lam, l) {
                    let t = off + (mu - start) as usize;
                    out[t] += c;
                }
            }
            // keep the accumulators bounded
            if coord % 4096 == 4095 {
                out.iter_mut().for_each(|y| *y %= p);
            }
        }
        out.into_iter().map(|y| (y % p) as u32).collect()
    }

    fn build(&self, j: u32) -> (AmbientIndex, EchelonSpan) {
        let field = self.ring.field();
        let index = AmbientIndex::new(&self.ring, j);
        let mut span = EchelonSpan::new(field, index.dim());
        if j == 0 {
            let one = index.to_dense(&self.ring.one()).unwrap();
            span.insert_dense(one);
            return (index, span);
        }
        let bound = self.rank_bound(j);
        let r = self.ring.spec().r();
        'gens: for i in 1..=j.min(r) {
            let Some((src_ix, src_span)) = self.span_of(j - i) else {
                continue;
            };
            for chunk in src_span.dense_rows().chunks(self.options.batch.max(1)) {
                if !self.options.exhaustive && span.rank() >= bound {
                    break 'gens;
                }
                let cands: Vec<Vec<u32>> = chunk
                    .par_iter()
                    .map(|row| self.multiply_dense(i, src_ix, row, &index))
                    .collect();
                for c in cands {
                    span.insert_dense(c);
                }
            }
        }
        assert!(
            span.rank() <= bound,
            "rank {} of R^{} exceeds the Grassmannian bound {}",
            span.rank(),
            j,
            bound
        );
        (index, span)
    }
}

impl Iterator for SubringBuilder {
    type Item = (AmbientIndex, EchelonSpan);

    fn next(&mut self) -> Option<Self::Item> {
        let j = self.next;
        let built = self.build(j);
        self.window.push_back(built.clone());
        let keep = self.ring.spec().r() as usize + 1;
        while self.window.len() > keep {
            self.window.pop_front();
        }
        self.next += 1;
        Some(built)
    }
}

/// `R^0, …, R^{max_codeg}`.
#[derive(Clone, Debug)]
pub struct GradedSpan {
    pub spans: Vec<(AmbientIndex, EchelonSpan)>,
}

impl GradedSpan {
    pub fn max_codeg(&self) -> u32 {
        self.spans.len() as u32 - 1
    }

    pub fn dim(&self, j: u32) -> usize {
        self.spans[j as usize].1.rank()
    }

    pub fn ambient(&self, j: u32) -> &AmbientIndex {
        &self.spans[j as usize].0
    }

    pub fn span(&self, j: u32) -> &EchelonSpan {
        &self.spans[j as usize].1
    }

    /// Basis of `R^j` as classes.
    pub fn basis(&self, ring: &ProdRing, j: u32) -> Vec<ProdClass> {
        let (ix, span) = &self.spans[j as usize];
        span.dense_rows()
            .iter()
            .map(|r| ix.to_class(ring, r))
            .collect()
    }

    pub fn contains(&self, u: &ProdClass) -> Result<bool> {
        let j = u.codegree();
        if j > self.max_codeg() {
            return Err(Error::DegreeMismatch {
                expected: self.max_codeg(),
                found: j,
            });
        }
        let (ix, span) = &self.spans[j as usize];
        Ok(span.contains_dense(&ix.to_dense(u)?))
    }
}

pub fn graded_spans(ring: &ProdRing, max_codeg: u32) -> GradedSpan {
    graded_spans_with(ring, max_codeg, ClosureOptions::default())
}

pub fn graded_spans_with(ring: &ProdRing, max_codeg: u32, options: ClosureOptions) -> GradedSpan {
    GradedSpan {
        spans: SubringBuilder::new(ring, options)
            .take(max_codeg as usize + 1)
            .collect(),
    }
}

/// `V_k = f_*(R^{d+k})` as a subspace of `Ch^k(G)`.
#[derive(Clone, Debug)]
pub struct VSpace {
    pub k: u32,
    pub basis: EchelonSpan,
}

impl VSpace {
    pub fn dim(&self) -> usize {
        self.basis.rank()
    }

    pub fn contains(&self, x: &GrassClass) -> Result<bool> {
        if x.is_zero() {
            return Ok(true);
        }
        if x.degree() != self.k {
            return Err(Error::DegreeMismatch {
                expected: self.k,
                found: x.degree(),
            });
        }
        Ok(self.basis.contains_dense(&x.to_dense()))
    }

    pub fn basis_classes(&self, ring: &ProdRing) -> Vec<GrassClass> {
        self.basis
            .dense_rows()
            .iter()
            .map(|r| ring.grass().from_dense(self.k, r))
            .collect()
    }
}

fn push_span(ring: &ProdRing, k: u32, index: &AmbientIndex, span: &EchelonSpan) -> VSpace {
    let field: PrimeField = ring.field();
    let d = ring.spec().d();
    let dim = ring.grass().basis().degree_count(k);
    let mut basis = EchelonSpan::new(field, dim);
    let sign = field.sign(d as u64);
    assert_eq!(sign, 1 % field.p(), "(-1)^d must be 1 mod p");
    for row in span.dense_rows() {
        if let Some(block) = index.h_block(row, d) {
            basis.insert_dense(block.to_vec());
        }
    }
    VSpace { k, basis }
}

/// `V_0, …, V_{k_max}`.
pub fn v_spaces(ring: &ProdRing, k_max: u32, options: ClosureOptions) -> Vec<VSpace> {
    let d = ring.spec().d();
    SubringBuilder::new(ring, options)
        .take((d + k_max) as usize + 1)
        .filter(|(ix, _)| ix.codegree() >= d)
        .map(|(ix, span)| push_span(ring, ix.codegree() - d, &ix, &span))
        .collect()
}

/// `[dim V_0, …, dim V_{k_max}]`: the multiplicities of `M(X)(k)` in `M(Y)`.
pub fn v_dims(ring: &ProdRing, k_max: u32) -> Result<Vec<usize>> {
    let shift = ring.spec().shift_range();
    if k_max > shift {
        return Err(Error::ShiftOutOfRange {
            k: k_max,
            max: shift,
        });
    }
    Ok(v_spaces(ring, k_max, ClosureOptions::default())
        .iter()
        .map(VSpace::dim)
        .collect())
}

/// Basis of `V_k` and, for each candidate, whether it lies in `V_k`.
pub fn v_basis_and_membership(
    ring: &ProdRing,
    k: u32,
    candidates: &[GrassClass],
) -> Result<(VSpace, Vec<bool>)> {
    let shift = ring.spec().shift_range();
    if k > shift {
        return Err(Error::ShiftOutOfRange { k, max: shift });
    }
    let v = v_spaces(ring, k, ClosureOptions::default())
        .pop()
        .expect("k_max + 1 spaces");
    let flags = candidates
        .iter()
        .map(|c| v.contains(c))
        .collect::<Result<Vec<_>>>()?;
    Ok((v, flags))
}

/// Sparse coordinates of a Grassmannian class, for use with [`EchelonSpan`].
pub fn grass_vector(x: &GrassClass) -> FpVector {
    FpVector::from_canonical(&x.to_dense())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chowprod::GeometrySpec;

    fn ring(p: u32, n: u32, m: u32) -> ProdRing {
        ProdRing::new(GeometrySpec::new(p, n, m).unwrap())
    }

    #[test]
    fn ambient_index_roundtrip() {
        let r = ring(3, 2, 1);
        let ix = AmbientIndex::new(&r, 5);
        // a = 0..5, partitions in the 3x6 box of size 5 - a: 5,4,3,2,1,1
        assert_eq!(ix.dim(), 5 + 4 + 3 + 2 + 1 + 1);
        for c in 0..ix.dim() {
            let (a, l) = ix.key(c);
            assert_eq!(ix.coord(a, l), Some(c));
        }
        let u = r.chern_t(5).unwrap();
        let v = ix.to_dense(&u).unwrap();
        assert_eq!(ix.to_class(&r, &v), u);
    }

    #[test]
    fn low_degrees_for_degree_nine() {
        let r = ring(3, 2, 1);
        let g = graded_spans(&r, 2);
        assert_eq!(g.dim(0), 1);
        assert_eq!(g.dim(1), 1);
        assert!(g.contains(&r.chern_t(1).unwrap()).unwrap());
        assert_eq!(g.dim(2), 2);
    }

    #[test]
    fn dense_multiplication_matches_ring_product() {
        let r = ring(2, 3, 2);
        let b = SubringBuilder::new(&r, ClosureOptions::default());
        let src = AmbientIndex::new(&r, 3);
        let u = r
            .multiply(&r.chern_t(1).unwrap(), &r.chern_t(2).unwrap())
            .unwrap();
        let u = r.add(&u, &r.lift(2, &r.grass().h(1))).unwrap();
        for i in 1..=4 {
            let dst = AmbientIndex::new(&r, 3 + i);
            let got = b.multiply_dense(i, &src, &src.to_dense(&u).unwrap(), &dst);
            let want = r.multiply(&r.chern_t(i as i64).unwrap(), &u).unwrap();
            assert_eq!(dst.to_class(&r, &got), want);
        }
    }

    #[test]
    fn shift_range_is_enforced() {
        let r = ring(2, 2, 1);
        assert!(v_dims(&r, 2).is_err());
        assert_eq!(v_dims(&r, 1).unwrap(), vec![0, 0]);
    }

    #[test]
    fn zero_is_always_a_member() {
        let r = ring(3, 2, 1);
        let (v, flags) = v_basis_and_membership(&r, 3, &[r.grass().zero(3)]).unwrap();
        assert_eq!(v.dim(), 1);
        assert_eq!(flags, vec![true]);
    }
}
