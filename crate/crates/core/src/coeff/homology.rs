use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::howell::{cokernel_mod, howell_rows, kernel_rows, solve_in_span};
use super::snf::smith_diagonal;
use super::{inv_mod, mul_mod, CoeffRing, Matrix, Scalar};
use crate::error::{Error, Result};

/// Isomorphism type of a finitely generated module over the coefficient ring:
/// `K^free_rank ⊕ ⊕_i K/(d_i)` with `d_1 | d_2 | ...`.
///
/// Over `Z/n`, `free_rank` counts summands `Z/n` and each `d_i` is a proper
/// divisor of `n`. Over fields the torsion list is always empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ModuleInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl ModuleInvariants {
    pub fn free(rank: usize) -> Self {
        ModuleInvariants { free_rank: rank, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Direct sum, renormalised into a divisibility chain.
    pub fn direct_sum(&self, other: &ModuleInvariants) -> ModuleInvariants {
        let mut primary: Vec<BigInt> = Vec::new();
        for d in self.torsion.iter().chain(&other.torsion) {
            primary.extend(prime_power_parts(d));
        }
        ModuleInvariants {
            free_rank: self.free_rank + other.free_rank,
            torsion: chain_from_prime_powers(primary),
        }
    }

    /// `copies` copies of this module.
    pub fn repeat(&self, copies: usize) -> ModuleInvariants {
        (0..copies).fold(ModuleInvariants::default(), |acc, _| acc.direct_sum(self))
    }

    /// Length over a field; `None` if there is torsion.
    pub fn dimension(&self) -> Option<usize> {
        self.torsion.is_empty().then_some(self.free_rank)
    }
}

impl Serialize for ModuleInvariants {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ModuleInvariants", 2)?;
        st.serialize_field("free_rank", &self.free_rank)?;
        let tors: Vec<String> = self.torsion.iter().map(ToString::to_string).collect();
        st.serialize_field("torsion", &tors)?;
        st.end()
    }
}

fn prime_power_parts(d: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut rest = d.clone();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let mut q = BigInt::one();
        while (&rest % &p).is_zero() {
            rest /= &p;
            q *= &p;
        }
        if !q.is_one() {
            out.push(q);
        }
        p += 1;
    }
    if rest > BigInt::one() {
        out.push(rest);
    }
    out
}

fn chain_from_prime_powers(mut parts: Vec<BigInt>) -> Vec<BigInt> {
    // largest power of each prime goes into the last invariant factor
    parts.sort();
    let mut by_prime: Vec<(BigInt, Vec<BigInt>)> = Vec::new();
    for q in parts {
        let p = smallest_prime_factor(&q);
        match by_prime.iter_mut().find(|(bp, _)| *bp == p) {
            Some((_, v)) => v.push(q),
            None => by_prime.push((p, vec![q])),
        }
    }
    let len = by_prime.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
    let mut chain = vec![BigInt::one(); len];
    for (_, mut powers) in by_prime {
        powers.sort();
        let offset = len - powers.len();
        for (i, q) in powers.into_iter().enumerate() {
            chain[offset + i] *= q;
        }
    }
    chain
}

fn smallest_prime_factor(q: &BigInt) -> BigInt {
    let mut p = BigInt::from(2);
    while &p * &p <= *q {
        if (q % &p).is_zero() {
            return p;
        }
        p += 1;
    }
    q.clone()
}

/// `ker(d_out) / im(d_in)` at the middle spot of `· --d_in--> K^N --d_out--> ·`.
pub fn cohomology_at(d_in: &Matrix, d_out: &Matrix) -> Result<ModuleInvariants> {
    if d_in.ring() != d_out.ring() {
        return Err(Error::InvalidInput("differentials over different rings".into()));
    }
    if d_in.rows() != d_out.cols() {
        return Err(Error::Complex(format!(
            "d_in has {} rows but d_out has {} columns",
            d_in.rows(),
            d_out.cols()
        )));
    }
    if !d_out.mul(d_in)?.is_zero() {
        return Err(Error::Complex("d_out * d_in is nonzero".into()));
    }
    let ambient = d_in.rows();
    match d_in.ring() {
        CoeffRing::Rationals => {
            let r_in = rank_rational(d_in);
            let r_out = rank_rational(d_out);
            Ok(ModuleInvariants::free(ambient - r_in - r_out))
        }
        CoeffRing::PrimeField(p) => {
            let r_in = rank_mod_p(&d_in.to_u64_rows(), d_in.cols(), *p);
            let r_out = rank_mod_p(&d_out.to_u64_rows(), d_out.cols(), *p);
            Ok(ModuleInvariants::free(ambient - r_in - r_out))
        }
        CoeffRing::Integers => {
            // ker(d_out) is saturated, so the torsion of the quotient is the
            // torsion of coker(d_in).
            let r_out = smith_diagonal(d_out.to_bigint_rows(), d_out.rows(), d_out.cols()).len();
            let diag = smith_diagonal(d_in.to_bigint_rows(), d_in.rows(), d_in.cols());
            let torsion: Vec<BigInt> = diag.iter().filter(|d| !d.is_one()).cloned().collect();
            Ok(ModuleInvariants { free_rank: ambient - r_out - diag.len(), torsion })
        }
        CoeffRing::IntegersModN(n) => Ok(cohomology_mod_n(d_in, d_out, *n)),
    }
}

fn cohomology_mod_n(d_in: &Matrix, d_out: &Matrix, n: u64) -> ModuleInvariants {
    let ambient = d_in.rows();
    let kernel = kernel_rows(&d_out.to_u64_rows(), d_out.rows(), ambient, n);
    let k = kernel.len();
    if k == 0 {
        return ModuleInvariants::default();
    }
    // present span(kernel) as (Z/n)^k / syzygies, with transforms to express cycles
    let aug: Vec<Vec<u64>> = kernel
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..k).map(|j| u64::from(i == j)));
            r
        })
        .collect();
    let reduced = howell_rows(aug, ambient + k, n);
    let (mut h, mut tr, mut relations) = (Vec::new(), Vec::new(), Vec::new());
    for row in reduced {
        if row[..ambient].iter().all(|&x| x == 0) {
            relations.push(row[ambient..].to_vec());
        } else {
            h.push(row[..ambient].to_vec());
            tr.push(row[ambient..].to_vec());
        }
    }
    let din = d_in.to_u64_rows();
    for j in 0..d_in.cols() {
        let y: Vec<u64> = (0..ambient).map(|i| din[i][j]).collect();
        if y.iter().all(|&x| x == 0) {
            continue;
        }
        let c = solve_in_span(&h, &tr, &y, n).expect("boundary outside the cycle module");
        relations.push(c);
    }
    let (free, torsion) = cokernel_mod(&relations, k, n);
    ModuleInvariants {
        free_rank: free,
        torsion: torsion.into_iter().map(BigInt::from).collect(),
    }
}

pub(crate) fn rank_mod_p(rows: &[Vec<u64>], cols: usize, p: u64) -> usize {
    let mut a = rows.to_vec();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(rank, piv);
        let inv = inv_mod(a[rank][c], p).unwrap();
        for x in a[rank].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let pivot = a[rank].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == rank || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for j in c..cols {
                row[j] = (row[j] + p - mul_mod(f, pivot[j], p)) % p;
            }
        }
        rank += 1;
    }
    rank
}

fn rank_rational(m: &Matrix) -> usize {
    rref(m).1.len()
}

/// Reduced row echelon form over a field; returns the rows and pivot columns.
pub(crate) fn rref(m: &Matrix) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let ring = m.ring();
    let mut a: Vec<Vec<Scalar>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..m.cols() {
        let Some(piv) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(rank, piv);
        let inv = ring.inv(&a[rank][c]).expect("field element not invertible");
        for x in a[rank].iter_mut() {
            *x = ring.mul(x, &inv);
        }
        let pivot = a[rank].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == rank || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for j in c..pivot.len() {
                if !pivot[j].is_zero() {
                    row[j] = ring.sub(&row[j], &ring.mul(&f, &pivot[j]));
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    a.truncate(rank);
    (a, pivots)
}

/// Rank over a field.
pub fn rank(m: &Matrix) -> Result<usize> {
    match m.ring() {
        CoeffRing::PrimeField(p) => Ok(rank_mod_p(&m.to_u64_rows(), m.cols(), *p)),
        CoeffRing::Rationals => Ok(rank_rational(m)),
        r => Err(Error::Domain(format!("rank over {r} is not a dimension"))),
    }
}

/// Basis of `{x : m x = 0}` over a field, as column vectors.
pub fn kernel_basis(m: &Matrix) -> Result<Vec<Vec<Scalar>>> {
    let ring = m.ring();
    if !ring.is_field() {
        return Err(Error::Domain(format!("kernel basis over {ring} needs a field")));
    }
    let (rows, pivots) = rref(m);
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    Ok(free
        .iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); m.cols()];
            v[f] = ring.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = ring.neg(&rows[r][f]);
            }
            v
        })
        .collect())
}

/// Whether `y` lies in the column span of `m` (fields only).
pub fn in_column_span(m: &Matrix, y: &[Scalar]) -> Result<bool> {
    let ring = m.ring();
    if !ring.is_field() {
        return Err(Error::Domain(format!("span test over {ring} needs a field")));
    }
    let mut aug = Matrix::zeros(ring, m.rows(), m.cols() + 1);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, m.cols(), y[i].clone());
    }
    Ok(rank(&aug)? == rank(m)?)
}
