//! Exact linear algebra over a prime field.
//!
//! [`EchelonSpan`] keeps a subspace of `F_p^dim` in reduced row-echelon form.
//! Rows are stored densely because the vectors produced by the subring
//! closure fill most of their ambient coordinates; [`FpVector`] is the sparse
//! exchange format used at the API boundary.

use std::fmt;

use crate::error::{Error, Result};

/// The prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    /// Canonical representative of an arbitrary integer.
    #[inline]
    pub fn reduce(&self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.p as u64 - b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(
            !a.is_multiple_of(self.p),
            "zero has no inverse in F_{}",
            self.p
        );
        self.pow(a, self.p as u64 - 2)
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `(-1)^e` as a field element.
    pub fn sign(&self, e: u64) -> u32 {
        if e.is_multiple_of(2) {
            1 % self.p
        } else {
            self.p - 1
        }
    }

    /// Signed representative in `(-p/2, p/2]`, used for printing.
    pub fn signed(&self, a: u32) -> i64 {
        if a as u64 * 2 > self.p as u64 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }

    /// `out += f * row`, coordinatewise.
    #[inline]
    pub fn axpy(&self, out: &mut [u32], f: u32, row: &[u32]) {
        if f == 0 {
            return;
        }
        let p = self.p as u64;
        let f = f as u64;
        for (o, &r) in out.iter_mut().zip(row) {
            if r != 0 {
                *o = ((*o as u64 + f * r as u64) % p) as u32;
            }
        }
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2u32;
    while (q as u64) * (q as u64) <= p as u64 {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

/// Sparse vector over `F_p`: sorted `(index, value)` pairs with nonzero values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpVector {
    dim: usize,
    coords: Vec<(usize, u32)>,
}

impl FpVector {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            coords: Vec::new(),
        }
    }

    /// Builds a vector from integer entries, reducing them into `[0, p)`.
    pub fn from_dense(field: PrimeField, entries: &[i64]) -> Self {
        let coords = entries
            .iter()
            .enumerate()
            .filter_map(|(i, &x)| {
                let v = field.reduce(x);
                (v != 0).then_some((i, v))
            })
            .collect();
        Self {
            dim: entries.len(),
            coords,
        }
    }

    /// Builds a vector from canonical dense entries (all `< p`).
    pub fn from_canonical(entries: &[u32]) -> Self {
        let coords = entries
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, &x)| (i, x))
            .collect();
        Self {
            dim: entries.len(),
            coords,
        }
    }

    /// Builds a vector from `(index, value)` pairs; duplicates are summed.
    pub fn from_entries(
        field: PrimeField,
        dim: usize,
        entries: impl IntoIterator<Item = (usize, i64)>,
    ) -> Result<Self> {
        let mut dense = vec![0u32; dim];
        for (i, x) in entries {
            if i >= dim {
                return Err(Error::IndexOutOfRange { index: i, dim });
            }
            dense[i] = field.add(dense[i], field.reduce(x));
        }
        Ok(Self::from_canonical(&dense))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.coords.len()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.coords
            .binary_search_by_key(&i, |&(j, _)| j)
            .map(|k| self.coords[k].1)
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.coords.iter().copied()
    }

    pub fn leading_index(&self) -> Option<usize> {
        self.coords.first().map(|&(i, _)| i)
    }

    pub fn to_dense(&self) -> Vec<u32> {
        let mut out = vec![0u32; self.dim];
        for &(i, x) in &self.coords {
            out[i] = x;
        }
        out
    }
}

/// A subspace of `F_p^dim` in reduced row-echelon form.
///
/// Pivots are the lowest nonzero index of each row; rows are kept sorted by
/// pivot, every pivot entry is 1 and every pivot column vanishes in the other
/// rows. The echelon form of a subspace is unique, so the stored basis does not
/// depend on insertion order.
#[derive(Clone, Debug)]
pub struct EchelonSpan {
    field: PrimeField,
    dim: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl EchelonSpan {
    pub fn new(field: PrimeField, dim: usize) -> Self {
        Self {
            field,
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> impl Iterator<Item = FpVector> + '_ {
        self.rows.iter().map(|r| FpVector::from_canonical(r))
    }

    pub fn dense_rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found,
            });
        }
        Ok(())
    }

    /// Adds `v` to the spanning set; returns whether the rank grew.
    pub fn insert(&mut self, v: &FpVector) -> Result<bool> {
        self.check_dim(v.dim())?;
        Ok(self.insert_dense(v.to_dense()))
    }

    /// Residual of `v` after elimination against every pivot.
    pub fn reduce(&self, v: &FpVector) -> Result<FpVector> {
        self.check_dim(v.dim())?;
        let mut dense = v.to_dense();
        self.reduce_dense(&mut dense);
        Ok(FpVector::from_canonical(&dense))
    }

    pub fn contains(&self, v: &FpVector) -> Result<bool> {
        Ok(self.reduce(v)?.is_zero())
    }

    /// Dense variant of [`reduce`](Self::reduce); `v` must have length `dim`
    /// and canonical entries.
    pub fn reduce_dense(&self, v: &mut [u32]) {
        debug_assert_eq!(v.len(), self.dim);
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c != 0 {
                self.field.axpy(v, self.field.neg(c), row);
            }
        }
    }

    pub fn contains_dense(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce_dense(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Dense variant of [`insert`](Self::insert).
    pub fn insert_dense(&mut self, mut v: Vec<u32>) -> bool {
        assert_eq!(v.len(), self.dim, "dimension mismatch");
        self.reduce_dense(&mut v);
        let Some(pc) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let f = self.field;
        let inv = f.inv(v[pc]);
        if inv != 1 {
            for x in v.iter_mut() {
                *x = f.mul(*x, inv);
            }
        }
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c != 0 {
                f.axpy(row, f.neg(c), &v);
            }
        }
        let at = self.pivots.partition_point(|&q| q < pc);
        self.pivots.insert(at, pc);
        self.rows.insert(at, v);
        true
    }
}
