//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

/// Monomial exponent vector -> integer coefficient.
pub type Poly = BTreeMap<Vec<u32>, i64>;

/// Schur polynomial `s_λ(x_1..x_k)` as a sum over semistandard tableaux.
pub fn schur_poly(lambda: &[u32], k: usize) -> Poly {
    let mut out = Poly::new();
    if lambda.len() > k {
        return out;
    }
    let cells: Vec<(usize, usize)> = lambda
        .iter()
        .enumerate()
        .flat_map(|(i, &l)| (0..l as usize).map(move |j| (i, j)))
        .collect();
    let mut filling = vec![vec![0u32; 0]; lambda.len()];
    for (i, &l) in lambda.iter().enumerate() {
        filling[i] = vec![0; l as usize];
    }
    fill(&cells, 0, &mut filling, k as u32, &mut out, k);
    out
}

fn fill(
    cells: &[(usize, usize)],
    at: usize,
    t: &mut Vec<Vec<u32>>,
    k: u32,
    out: &mut Poly,
    nvars: usize,
) {
    if at == cells.len() {
        let mut exps = vec![0u32; nvars];
        for row in t.iter() {
            for &v in row {
                exps[v as usize - 1] += 1;
            }
        }
        *out.entry(exps).or_insert(0) += 1;
        return;
    }
    let (i, j) = cells[at];
    let lo_row = if j > 0 { t[i][j - 1] } else { 1 };
    let lo_col = if i > 0 { t[i - 1][j] + 1 } else { 1 };
    for v in lo_row.max(lo_col)..=k {
        t[i][j] = v;
        fill(cells, at + 1, t, k, out, nvars);
    }
    t[i][j] = 0;
}

pub fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert(0) += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Writes a symmetric polynomial in the Schur basis by peeling off the
/// lexicographically largest monomial, which is always a leading Schur term.
pub fn schur_expand(mut f: Poly, k: usize) -> BTreeMap<Vec<u32>, i64> {
    let mut out = BTreeMap::new();
    f.retain(|_, c| *c != 0);
    while let Some((lead, &c)) = f.iter().next_back() {
        let lambda: Vec<u32> = lead.iter().copied().filter(|&x| x > 0).collect();
        assert!(lead.windows(2).all(|w| w[0] >= w[1]), "not symmetric");
        let s = schur_poly(&lambda, k);
        for (e, v) in s {
            *f.entry(e).or_insert(0) -= c * v;
        }
        f.retain(|_, c| *c != 0);
        out.insert(lambda, c);
    }
    out
}

/// Littlewood–Richardson product in the `rows x cols` box, by brute force.
pub fn lr_in_box(lambda: &[u32], mu: &[u32], rows: usize, cols: u32) -> BTreeMap<Vec<u32>, i64> {
    let prod = poly_mul(&schur_poly(lambda, rows), &schur_poly(mu, rows));
    let mut out = schur_expand(prod, rows);
    out.retain(|nu, _| nu.first().is_none_or(|&w| w <= cols));
    out
}

/// All partitions in the `rows x cols` box.
pub fn box_partitions(rows: u32, cols: u32) -> Vec<Vec<u32>> {
    fn go(rows: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        out.push(prefix.clone());
        if prefix.len() as u32 == rows {
            return;
        }
        for part in 1..=max {
            prefix.push(part);
            go(rows, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(rows, cols, &mut Vec::new(), &mut out);
    out
}

/// Rank over `F_p` by plain dense Gaussian elimination.
pub fn naive_rank(rows: &[Vec<i64>], p: i64) -> usize {
    let mut m: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| r.iter().map(|x| x.rem_euclid(p)).collect())
        .collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = modpow(m[rank][col], p - 2, p);
        for x in m[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..m.len() {
            if i != rank && m[i][col] != 0 {
                let f = m[i][col];
                let pivot_row = m[rank].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x = (*x - f * y).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn modpow(mut b: i64, mut e: i64, p: i64) -> i64 {
    let mut acc = 1;
    b = b.rem_euclid(p);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// `C(n, k)` over the integers.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
