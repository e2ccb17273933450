//! Howell normal form over `Z/n`.
//!
//! The Howell form is the canonical echelon form of a row module over `Z/n`:
//! pivots divide `n`, entries above a pivot lie in `0..pivot`, and every
//! element of the row span whose first `k` coordinates vanish is a combination
//! of the rows whose first `k` coordinates vanish. That last property is what
//! makes kernels and membership tests work by plain reduction.

use super::{gcd_u64, inv_mod, mul_mod, xgcd, Matrix};
use crate::error::{Error, Result};

/// Howell form of the row span of `m`, zero rows removed.
pub fn howell_form(m: &Matrix) -> Result<Matrix> {
    let n = m
        .ring()
        .modulus()
        .ok_or_else(|| Error::Domain(format!("Howell form needs Z/n coefficients, got {}", m.ring())))?;
    let rows = howell_rows(m.to_u64_rows(), m.cols(), n);
    Ok(Matrix::from_u64_rows(m.ring(), &rows, m.cols()))
}

fn sub_mod(a: u64, b: u64, n: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        n - (b - a)
    }
}

fn add_mod(a: u64, b: u64, n: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % n as u128) as u64
}

/// A unit `u` with `u * a = gcd(a, n) (mod n)`.
pub(crate) fn unit_normalizer(a: u64, n: u64) -> u64 {
    let g = gcd_u64(a, n);
    if g == 0 {
        return 1;
    }
    let np = n / g;
    let u0 = if np == 1 { 1 } else { inv_mod((a / g) % np, np).unwrap() };
    let mut u = u0 % n.max(1);
    loop {
        if gcd_u64(u, n) == 1 {
            return u;
        }
        u += np;
    }
}

fn scale_row(row: &mut [u64], c: u64, n: u64) {
    for x in row.iter_mut() {
        *x = mul_mod(*x, c, n);
    }
}

/// Row reduction to Howell form. Rows are residues in `0..n`.
pub(crate) fn howell_rows(mut a: Vec<Vec<u64>>, cols: usize, n: u64) -> Vec<Vec<u64>> {
    let mut r = 0usize;
    for c in 0..cols {
        if r >= a.len() {
            break;
        }
        for i in r + 1..a.len() {
            let b = a[i][c];
            if b == 0 {
                continue;
            }
            let p = a[r][c];
            if p == 0 {
                a.swap(r, i);
                continue;
            }
            let (g, s, t) = xgcd(p as i128, b as i128);
            let s = s.rem_euclid(n as i128) as u64;
            let t = t.rem_euclid(n as i128) as u64;
            let u = ((-(b as i128 / g)).rem_euclid(n as i128)) as u64;
            let v = ((p as i128 / g).rem_euclid(n as i128)) as u64;
            let (top, bottom) = a.split_at_mut(i);
            let (x, y) = (&mut top[r], &mut bottom[0]);
            for k in c..cols {
                let (xk, yk) = (x[k], y[k]);
                x[k] = add_mod(mul_mod(s, xk, n), mul_mod(t, yk, n), n);
                y[k] = add_mod(mul_mod(u, xk, n), mul_mod(v, yk, n), n);
            }
        }
        if a[r][c] == 0 {
            continue;
        }
        let unit = unit_normalizer(a[r][c], n);
        scale_row(&mut a[r], unit, n);
        let pivot = a[r][c];
        for i in 0..r {
            let q = a[i][c] / pivot;
            if q == 0 {
                continue;
            }
            for k in c..cols {
                let sub = mul_mod(q, a[r][k], n);
                a[i][k] = sub_mod(a[i][k], sub, n);
            }
        }
        let ann = n / pivot;
        if ann != n {
            let mut extra = a[r].clone();
            scale_row(&mut extra, ann, n);
            if extra.iter().any(|&x| x != 0) {
                a.push(extra);
            }
        }
        r += 1;
    }
    a.truncate(r);
    a.retain(|row| row.iter().any(|&x| x != 0));
    a
}

/// Generators of `{x : d x = 0}` for `d: (Z/n)^cols -> (Z/n)^rows`, in Howell form.
pub(crate) fn kernel_rows(d: &[Vec<u64>], rows: usize, cols: usize, n: u64) -> Vec<Vec<u64>> {
    let aug: Vec<Vec<u64>> = (0..cols)
        .map(|j| {
            let mut row: Vec<u64> = (0..rows).map(|i| d[i][j]).collect();
            row.extend((0..cols).map(|k| u64::from(k == j)));
            row
        })
        .collect();
    howell_rows(aug, rows + cols, n)
        .into_iter()
        .filter(|row| row[..rows].iter().all(|&x| x == 0))
        .map(|row| row[rows..].to_vec())
        .collect()
}

/// Reduces `y` against Howell rows `h` (echelon, with attached transforms `tr`).
/// Returns the combination `c` with `y = sum c_i h_i`, or `None` if `y` is outside the span.
pub(crate) fn solve_in_span(h: &[Vec<u64>], tr: &[Vec<u64>], y: &[u64], n: u64) -> Option<Vec<u64>> {
    let mut y = y.to_vec();
    let k = tr.first().map_or(0, Vec::len);
    let mut coeffs = vec![0u64; k];
    let mut row = 0;
    for c in 0..y.len() {
        let pivot_row = (row < h.len() && h[row][c] != 0 && h[row][..c].iter().all(|&x| x == 0)).then_some(row);
        match pivot_row {
            Some(pr) => {
                let p = h[pr][c];
                if y[c] % p != 0 {
                    return None;
                }
                let q = y[c] / p;
                for j in c..y.len() {
                    y[j] = sub_mod(y[j], mul_mod(q, h[pr][j], n), n);
                }
                for j in 0..k {
                    coeffs[j] = add_mod(coeffs[j], mul_mod(q, tr[pr][j], n), n);
                }
                row += 1;
            }
            None => {
                if y[c] != 0 {
                    return None;
                }
            }
        }
    }
    Some(coeffs)
}

/// Invariant factors of `(Z/n)^k / rowspan(rel)`: returns `(free_count, torsion)` where
/// `free_count` counts `Z/n` summands and `torsion` lists proper divisors `d` of `n` for
/// summands `Z/d`, in a divisibility chain.
pub(crate) fn cokernel_mod(rel: &[Vec<u64>], k: usize, n: u64) -> (usize, Vec<u64>) {
    let mut a: Vec<Vec<u64>> = rel.to_vec();
    let rows = a.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < k && t < rows {
        let pick = (t..rows)
            .flat_map(|i| (t..k).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| gcd_u64(a[i][j], n));
        let Some((pi, pj)) = pick else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let unit = unit_normalizer(a[t][t], n);
            scale_row(&mut a[t], unit, n);
            let mut dirty = false;
            for i in t + 1..rows {
                let b = a[i][t];
                if b == 0 {
                    continue;
                }
                let p = a[t][t];
                if b % p == 0 {
                    let q = b / p;
                    let pivot_row = a[t].clone();
                    for j in t..k {
                        a[i][j] = sub_mod(a[i][j], mul_mod(q, pivot_row[j], n), n);
                    }
                } else {
                    let (g, s, r) = xgcd(p as i128, b as i128);
                    let m = n as i128;
                    let c = [s.rem_euclid(m), r.rem_euclid(m), (-(b as i128 / g)).rem_euclid(m), (p as i128 / g).rem_euclid(m)];
                    let (top, bottom) = a.split_at_mut(i);
                    let (x, y) = (&mut top[t], &mut bottom[0]);
                    for j in t..k {
                        let (xj, yj) = (x[j], y[j]);
                        x[j] = add_mod(mul_mod(c[0] as u64, xj, n), mul_mod(c[1] as u64, yj, n), n);
                        y[j] = add_mod(mul_mod(c[2] as u64, xj, n), mul_mod(c[3] as u64, yj, n), n);
                    }
                    let unit = unit_normalizer(a[t][t], n);
                    scale_row(&mut a[t], unit, n);
                }
            }
            for j in t + 1..k {
                let b = a[t][j];
                if b == 0 {
                    continue;
                }
                let p = a[t][t];
                if b % p == 0 {
                    let q = b / p;
                    for row in a.iter_mut() {
                        let v = mul_mod(q, row[t], n);
                        row[j] = sub_mod(row[j], v, n);
                    }
                } else {
                    let (g, s, r) = xgcd(p as i128, b as i128);
                    let m = n as i128;
                    let c = [s.rem_euclid(m), r.rem_euclid(m), (-(b as i128 / g)).rem_euclid(m), (p as i128 / g).rem_euclid(m)];
                    for row in a.iter_mut() {
                        let (xt, xj) = (row[t], row[j]);
                        row[t] = add_mod(mul_mod(c[0] as u64, xt, n), mul_mod(c[1] as u64, xj, n), n);
                        row[j] = add_mod(mul_mod(c[2] as u64, xt, n), mul_mod(c[3] as u64, xj, n), n);
                    }
                    dirty = true;
                }
            }
            if dirty && (t + 1..rows).any(|i| a[i][t] != 0) {
                continue;
            }
            let p = {
                let unit = unit_normalizer(a[t][t], n);
                scale_row(&mut a[t], unit, n);
                a[t][t]
            };
            let bad = (t + 1..rows).find(|&i| (t + 1..k).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    let other = a[i].clone();
                    for j in t..k {
                        a[t][j] = add_mod(a[t][j], other[j], n);
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t]);
        t += 1;
    }
    // cyclic summands Z/g; the diagonal need not be a chain mod n, so regroup
    let mut summands: Vec<u64> = vec![n; k - diag.len()];
    summands.extend(diag.into_iter().map(|d| gcd_u64(d, n)).filter(|&g| g != 1));
    let chain = invariant_chain(&summands);
    let free = chain.iter().filter(|&&d| d == n).count();
    (free, chain.into_iter().filter(|&d| d != n).collect())
}

/// Invariant-factor chain `d_1 | d_2 | ...` of a direct sum of cyclic groups `Z/g`.
pub(crate) fn invariant_chain(orders: &[u64]) -> Vec<u64> {
    let mut by_prime: Vec<(u64, Vec<u64>)> = Vec::new();
    for &g in orders {
        let mut rest = g;
        let mut p = 2;
        while rest > 1 {
            if p * p > rest {
                p = rest;
            }
            let mut q = 1;
            while rest % p == 0 {
                rest /= p;
                q *= p;
            }
            if q > 1 {
                match by_prime.iter_mut().find(|(bp, _)| *bp == p) {
                    Some((_, v)) => v.push(q),
                    None => by_prime.push((p, vec![q])),
                }
            }
            p += 1;
        }
    }
    let len = by_prime.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
    let mut chain = vec![1u64; len];
    for (_, mut powers) in by_prime {
        powers.sort_unstable();
        let offset = len - powers.len();
        for (i, q) in powers.into_iter().enumerate() {
            chain[offset + i] *= q;
        }
    }
    chain
}
