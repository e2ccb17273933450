//! Smith normal form over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{CoeffRing, Matrix};
use crate::error::{Error, Result};

/// `u * m * v = d` with `u`, `v` unimodular and `d` diagonal, `d_i | d_{i+1}`, `d_i >= 0`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: Matrix,
    pub d: Matrix,
    pub v: Matrix,
}

impl SmithForm {
    /// The nonzero diagonal entries.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n)
            .map(|i| self.d.get(i, i).to_integer())
            .filter(|d| !d.is_zero())
            .collect()
    }
}

pub fn smith_normal_form(m: &Matrix) -> Result<SmithForm> {
    if *m.ring() != CoeffRing::Integers {
        return Err(Error::Domain(format!(
            "Smith normal form needs integer entries, got a matrix over {}",
            m.ring()
        )));
    }
    let z = CoeffRing::Integers;
    let mut calc = SnfCalc::new(m.to_bigint_rows(), m.rows(), m.cols(), true);
    calc.run();
    let (rows, cols) = (m.rows(), m.cols());
    Ok(SmithForm {
        d: Matrix::from_bigint_rows(&z, &calc.a, cols),
        u: Matrix::from_bigint_rows(&z, &calc.u.unwrap(), rows),
        v: Matrix::from_bigint_rows(&z, &calc.v.unwrap(), cols),
    })
}

/// Nonzero invariant factors only; no transforms are tracked.
pub(crate) fn smith_diagonal(a: Vec<Vec<BigInt>>, rows: usize, cols: usize) -> Vec<BigInt> {
    let mut calc = SnfCalc::new(a, rows, cols, false);
    calc.run();
    (0..rows.min(cols))
        .map(|i| calc.a[i][i].clone())
        .filter(|d| !d.is_zero())
        .collect()
}

struct SnfCalc {
    a: Vec<Vec<BigInt>>,
    rows: usize,
    cols: usize,
    u: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// `(g, s, t)` with `s*a + t*b = g = gcd(a, b) >= 0`.
fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Applies `[[s, t], [p, q]]` to the pair `(x, y)` in place.
fn combine(x: &mut [BigInt], y: &mut [BigInt], s: &BigInt, t: &BigInt, p: &BigInt, q: &BigInt) {
    for (xi, yi) in x.iter_mut().zip(y.iter_mut()) {
        if xi.is_zero() && yi.is_zero() {
            continue;
        }
        let nx = s * &*xi + t * &*yi;
        let ny = p * &*xi + q * &*yi;
        *xi = nx;
        *yi = ny;
    }
}

impl SnfCalc {
    fn new(a: Vec<Vec<BigInt>>, rows: usize, cols: usize, track: bool) -> Self {
        SnfCalc {
            a,
            rows,
            cols,
            u: track.then(|| identity(rows)),
            v: track.then(|| identity(cols)),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        if let Some(u) = self.u.as_mut() {
            u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        if let Some(v) = self.v.as_mut() {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn row_combine(&mut self, i: usize, j: usize, c: [&BigInt; 4]) {
        let (lo, hi) = (i.min(j), i.max(j));
        let (head, tail) = self.a.split_at_mut(hi);
        let (x, y) = if i < j {
            (&mut head[lo], &mut tail[0])
        } else {
            (&mut tail[0], &mut head[lo])
        };
        combine(x, y, c[0], c[1], c[2], c[3]);
        if let Some(u) = self.u.as_mut() {
            let (head, tail) = u.split_at_mut(hi);
            let (x, y) = if i < j {
                (&mut head[lo], &mut tail[0])
            } else {
                (&mut tail[0], &mut head[lo])
            };
            combine(x, y, c[0], c[1], c[2], c[3]);
        }
    }

    fn col_combine(&mut self, i: usize, j: usize, c: [&BigInt; 4]) {
        let apply = |m: &mut Vec<Vec<BigInt>>| {
            for row in m.iter_mut() {
                let (x, y) = (row[i].clone(), row[j].clone());
                if x.is_zero() && y.is_zero() {
                    continue;
                }
                row[i] = c[0] * &x + c[1] * &y;
                row[j] = c[2] * &x + c[3] * &y;
            }
        };
        apply(&mut self.a);
        if let Some(v) = self.v.as_mut() {
            apply(v);
        }
    }

    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.a[bi][bj].abs() <= x.abs() => {}
                    _ => best = Some((i, j)),
                }
                if x.abs().is_one() {
                    return best;
                }
            }
        }
        best
    }

    fn run(&mut self) {
        let n = self.rows.min(self.cols);
        let mut t = 0;
        while t < n {
            let Some((pi, pj)) = self.find_pivot(t) else { break };
            if pi != t {
                self.swap_rows(t, pi);
            }
            if pj != t {
                self.swap_cols(t, pj);
            }
            loop {
                let mut clean = true;
                for i in t + 1..self.rows {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let (p, b) = (self.a[t][t].clone(), self.a[i][t].clone());
                    if b.is_multiple_of(&p) {
                        let q = -(&b / &p);
                        let one = BigInt::one();
                        let zero = BigInt::zero();
                        self.row_combine(t, i, [&one, &zero, &q, &one]);
                    } else {
                        let (g, s, r) = ext_gcd(&p, &b);
                        let (pp, bb) = (-(&b / &g), &p / &g);
                        self.row_combine(t, i, [&s, &r, &pp, &bb]);
                    }
                }
                for j in t + 1..self.cols {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let (p, b) = (self.a[t][t].clone(), self.a[t][j].clone());
                    if b.is_multiple_of(&p) {
                        let q = -(&b / &p);
                        let one = BigInt::one();
                        let zero = BigInt::zero();
                        self.col_combine(t, j, [&one, &zero, &q, &one]);
                    } else {
                        let (g, s, r) = ext_gcd(&p, &b);
                        let (pp, bb) = (-(&b / &g), &p / &g);
                        self.col_combine(t, j, [&s, &r, &pp, &bb]);
                        clean = false;
                    }
                }
                if !clean && (t + 1..self.rows).any(|i| !self.a[i][t].is_zero()) {
                    continue;
                }
                // divisibility of the remaining block
                let p = self.a[t][t].clone();
                let bad = (t + 1..self.rows)
                    .find(|&i| (t + 1..self.cols).any(|j| !self.a[i][j].is_multiple_of(&p)));
                match bad {
                    Some(i) => {
                        let one = BigInt::one();
                        let zero = BigInt::zero();
                        // row_t += row_i
                        self.row_combine(t, i, [&one, &one, &zero, &one]);
                    }
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                for x in self.a[t].iter_mut() {
                    *x = -&*x;
                }
                if let Some(u) = self.u.as_mut() {
                    for x in u[t].iter_mut() {
                        *x = -&*x;
                    }
                }
            }
            t += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn det(m: &Matrix) -> BigInt {
        // Bareiss fraction-free elimination
        let n = m.rows();
        let mut a = m.to_bigint_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap(k, r);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    fn check(m: &Matrix) {
        let s = smith_normal_form(m).unwrap();
        assert_eq!(s.u.mul(m).unwrap().mul(&s.v).unwrap(), s.d);
        if m.rows() > 0 {
            assert!(det(&s.u).abs().is_one());
        }
        if m.cols() > 0 {
            assert!(det(&s.v).abs().is_one());
        }
        let k = m.rows().min(m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if i != j {
                    assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        for i in 0..k {
            assert!(!s.d.get(i, i).to_integer().is_negative());
            if i + 1 < k {
                let (a, b) = (s.d.get(i, i).to_integer(), s.d.get(i + 1, i + 1).to_integer());
                if a.is_zero() {
                    assert!(b.is_zero());
                } else {
                    assert!(b.is_multiple_of(&a));
                }
            }
        }
    }

    #[test]
    fn diag_two_three() {
        let z = CoeffRing::Integers;
        let m = Matrix::from_i64_rows(&z, &[vec![2, 0], vec![0, 3]]);
        let s = smith_normal_form(&m).unwrap();
        assert_eq!(s.d, Matrix::from_i64_rows(&z, &[vec![1, 0], vec![0, 6]]));
        check(&m);
    }

    #[test]
    fn zero_and_one_by_one() {
        let z = CoeffRing::Integers;
        let zero = Matrix::zeros(&z, 2, 2);
        let s = smith_normal_form(&zero).unwrap();
        assert!(s.d.is_zero());
        assert_eq!(s.u, Matrix::identity(&z, 2));
        assert_eq!(s.v, Matrix::identity(&z, 2));
        let two = Matrix::from_i64_rows(&z, &[vec![2]]);
        assert_eq!(smith_normal_form(&two).unwrap().d, two);
    }

    #[test]
    fn rejects_non_integer_matrices() {
        let m = Matrix::zeros(&CoeffRing::PrimeField(2), 1, 1);
        assert!(smith_normal_form(&m).is_err());
    }

    #[test]
    fn diagonal_only_matches_tracked() {
        let z = CoeffRing::Integers;
        let m = Matrix::from_i64_rows(&z, &[vec![4, 6, 2], vec![8, 2, 0], vec![0, 0, 12]]);
        let full = smith_normal_form(&m).unwrap().invariant_factors();
        let diag = smith_diagonal(m.to_bigint_rows(), 3, 3);
        assert_eq!(full, diag);
    }

    proptest! {
        #[test]
        fn random_small_matrices(rows in 1usize..5, cols in 1usize..5,
                                 seed in proptest::collection::vec(-9i64..10, 16)) {
            let z = CoeffRing::Integers;
            let data: Vec<Vec<i64>> = (0..rows)
                .map(|i| (0..cols).map(|j| seed[i * 4 + j]).collect())
                .collect();
            check(&Matrix::from_i64_rows(&z, &data));
        }
    }
}
