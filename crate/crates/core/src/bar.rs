//! Brute-force Hochschild cohomology from the normalized bar complex of a
//! finite-dimensional algebra over a field. Used as an oracle for the Clifford model.

use serde::Serialize;

use crate::algebra::{KBasis, Presentation};
use crate::calculus::require_derivation;
use crate::cliffdg::{cup_square_class, CliffordModel, GradedModule};
use crate::coeff::{in_column_span, rank, CoeffRing, Matrix, ModuleInvariants, Scalar};
use crate::error::{Error, Result};
use crate::poly::Poly;

pub const DEFAULT_DIM_BOUND: usize = 4;
pub const MAX_BAR_DEGREE: usize = 3;

/// Structure constants `e_i e_j = Σ_k c[i][j][k] e_k` with `e_0 = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    ring: CoeffRing,
    dim: usize,
    mult: Vec<Vec<Vec<Scalar>>>,
}

impl FiniteAlgebra {
    /// Checks associativity on all triples and that `e_0` is a two-sided unit.
    pub fn new(ring: CoeffRing, mult: Vec<Vec<Vec<Scalar>>>) -> Result<Self> {
        if !ring.is_field() {
            return Err(Error::Domain(format!("the bar oracle needs a field, not {ring}")));
        }
        let dim = mult.len();
        if dim == 0 || mult.iter().any(|r| r.len() != dim || r.iter().any(|v| v.len() != dim)) {
            return Err(Error::InvalidInput("malformed multiplication table".into()));
        }
        let alg = FiniteAlgebra { ring, dim, mult };
        let e = |i: usize| alg.basis_vector(i);
        for i in 0..dim {
            if alg.mul(&e(0), &e(i)) != e(i) || alg.mul(&e(i), &e(0)) != e(i) {
                return Err(Error::Complex("e_0 is not a unit".into()));
            }
            for j in 0..dim {
                for k in 0..dim {
                    let l = alg.mul(&alg.mul(&e(i), &e(j)), &e(k));
                    let r = alg.mul(&e(i), &alg.mul(&e(j), &e(k)));
                    if l != r {
                        return Err(Error::Complex(format!("not associative on ({i}, {j}, {k})")));
                    }
                }
            }
        }
        Ok(alg)
    }

    /// Structure constants of `A` in its standard-monomial basis.
    pub fn from_presentation(pres: &Presentation) -> Result<Self> {
        let (kb, table) = table_of(pres)?;
        if kb.is_empty() || kb.monomials()[0].degree() != 0 {
            return Err(Error::InvalidInput("the zero algebra has no bar complex".into()));
        }
        Self::new(pres.ring().clone(), table)
    }

    pub fn ring(&self) -> &CoeffRing {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.ring.zero(); self.dim];
        v[i] = self.ring.one();
        v
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let r = &self.ring;
        let mut out = vec![r.zero(); self.dim];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !num_traits::Zero::is_zero(*x)) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !num_traits::Zero::is_zero(*y)) {
                let xy = r.mul(x, y);
                for (k, c) in self.mult[i][j].iter().enumerate() {
                    out[k] = r.add(&out[k], &r.mul(&xy, c));
                }
            }
        }
        out
    }

    fn add_scaled(&self, acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
        for (a, x) in acc.iter_mut().zip(v) {
            *a = self.ring.add(a, &self.ring.mul(c, x));
        }
    }
}

fn table_of(pres: &Presentation) -> Result<(KBasis, Vec<Vec<Vec<Scalar>>>)> {
    let kb = pres.k_basis()?;
    let ring = pres.ring();
    let mut table = Vec::with_capacity(kb.len());
    for i in 0..kb.len() {
        let mut row = Vec::with_capacity(kb.len());
        for j in 0..kb.len() {
            let p = pres.mul(&kb.element(ring, i), &kb.element(ring, j))?;
            row.push(kb.coordinates(&p));
        }
        table.push(row);
    }
    Ok((kb, table))
}

/// A normalized cochain `Ā^{⊗p} → A`, where `Ā` has basis `e_1..e_{d-1}`.
/// `values[u]` holds the coordinates of the value on the tuple with index `u`
/// (base `d - 1` digits, first argument most significant).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub values: Vec<Vec<Scalar>>,
}

impl Cochain {
    pub fn zero(alg: &FiniteAlgebra, degree: usize) -> Self {
        let count = (alg.dim - 1).pow(degree as u32);
        Cochain { degree, values: vec![vec![alg.ring.zero(); alg.dim]; count] }
    }

    /// The 0-cochain given by an element of `A`.
    pub fn element(a: Vec<Scalar>) -> Self {
        Cochain { degree: 0, values: vec![a] }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().flatten().all(num_traits::Zero::is_zero)
    }

    /// Flattened coordinates, value index fastest.
    pub fn coordinates(&self) -> Vec<Scalar> {
        self.values.iter().flatten().cloned().collect()
    }

    /// Value on an arbitrary tuple of elements of `A`, multilinearly; unit components vanish.
    pub fn eval(&self, alg: &FiniteAlgebra, args: &[Vec<Scalar>]) -> Vec<Scalar> {
        assert_eq!(args.len(), self.degree);
        let mut out = vec![alg.ring.zero(); alg.dim];
        let mut stack = vec![(0usize, 0usize, alg.ring.one())];
        while let Some((pos, index, coef)) = stack.pop() {
            if pos == self.degree {
                alg.add_scaled(&mut out, &coef, &self.values[index]);
                continue;
            }
            for (k, c) in args[pos].iter().enumerate().skip(1) {
                if !num_traits::Zero::is_zero(c) {
                    stack.push((pos + 1, index * (alg.dim - 1) + k - 1, alg.ring.mul(&coef, c)));
                }
            }
        }
        out
    }
}

fn tuple(alg: &FiniteAlgebra, mut index: usize, len: usize) -> Vec<usize> {
    let mut t = vec![0; len];
    for slot in t.iter_mut().rev() {
        *slot = index % (alg.dim - 1) + 1;
        index /= alg.dim - 1;
    }
    t
}

/// The Hochschild coboundary.
pub fn coboundary(f: &Cochain, alg: &FiniteAlgebra) -> Cochain {
    let p = f.degree;
    let r = &alg.ring;
    let mut out = Cochain::zero(alg, p + 1);
    for (u, value) in out.values.iter_mut().enumerate() {
        let a: Vec<Vec<Scalar>> = tuple(alg, u, p + 1).into_iter().map(|i| alg.basis_vector(i)).collect();
        let mut acc = alg.mul(&a[0], &f.eval(alg, &a[1..]));
        for i in 0..p {
            let mut merged: Vec<Vec<Scalar>> = a[..i].to_vec();
            merged.push(alg.mul(&a[i], &a[i + 1]));
            merged.extend_from_slice(&a[i + 2..]);
            let sign = if i % 2 == 0 { r.from_i64(-1) } else { r.one() };
            alg.add_scaled(&mut acc, &sign, &f.eval(alg, &merged));
        }
        let sign = if p % 2 == 0 { r.from_i64(-1) } else { r.one() };
        alg.add_scaled(&mut acc, &sign, &alg.mul(&f.eval(alg, &a[..p]), &a[p]));
        *value = acc;
    }
    out
}

/// `(f ∪ g)(a_1..a_{p+q}) = f(a_1..a_p) g(a_{p+1}..a_{p+q})`.
pub fn bar_cup(f: &Cochain, g: &Cochain, alg: &FiniteAlgebra) -> Result<Cochain> {
    let n = f.degree + g.degree;
    if n > MAX_BAR_DEGREE + 1 {
        return Err(Error::Size(format!("cup products limited to total degree {}", MAX_BAR_DEGREE + 1)));
    }
    let mut out = Cochain::zero(alg, n);
    let gcount = g.values.len();
    for (u, value) in out.values.iter_mut().enumerate() {
        *value = alg.mul(&f.values[u / gcount], &g.values[u % gcount]);
    }
    Ok(out)
}

#[cfg(test)]
fn basis_cochain(alg: &FiniteAlgebra, degree: usize, index: usize) -> Cochain {
    let mut c = Cochain::zero(alg, degree);
    c.values[index / alg.dim][index % alg.dim] = alg.ring.one();
    c
}

fn tuple_index(alg: &FiniteAlgebra, args: &[usize]) -> usize {
    args.iter().fold(0, |acc, &a| acc * (alg.dim - 1) + a - 1)
}

/// Matrix of the coboundary from degree `p` to `p + 1`, assembled term by term
/// from the structure constants.
pub fn coboundary_matrix(alg: &FiniteAlgebra, p: usize) -> Matrix {
    let (d, r) = (alg.dim, &alg.ring);
    let cols = (d - 1).pow(p as u32) * d;
    let rows = (d - 1).pow(p as u32 + 1) * d;
    let mut m = Matrix::zeros(r, rows, cols);
    let mut bump = |row: usize, col: usize, c: &Scalar| {
        if !num_traits::Zero::is_zero(c) {
            let v = r.add(m.get(row, col), c);
            m.set(row, col, v);
        }
    };
    for u in 0..(d - 1).pow(p as u32 + 1) {
        let a = tuple(alg, u, p + 1);
        // a_1 f(a_2..)
        let tail = tuple_index(alg, &a[1..]);
        for k in 0..d {
            for (l, c) in alg.mult[a[0]][k].iter().enumerate() {
                bump(u * d + l, tail * d + k, c);
            }
        }
        // (-1)^i f(.., a_i a_{i+1}, ..)
        for i in 0..p {
            let sign = if i % 2 == 0 { r.from_i64(-1) } else { r.one() };
            for (merged, c) in alg.mult[a[i]][a[i + 1]].iter().enumerate().skip(1) {
                let mut args = a[..i].to_vec();
                args.push(merged);
                args.extend_from_slice(&a[i + 2..]);
                let col = tuple_index(alg, &args);
                let c = r.mul(&sign, c);
                for k in 0..d {
                    bump(u * d + k, col * d + k, &c);
                }
            }
        }
        // (-1)^{p+1} f(a_1..a_p) a_{p+1}
        let sign = if p % 2 == 0 { r.from_i64(-1) } else { r.one() };
        let head = tuple_index(alg, &a[..p]);
        for k in 0..d {
            for (l, c) in alg.mult[k][a[p]].iter().enumerate() {
                bump(u * d + l, head * d + k, &r.mul(&sign, c));
            }
        }
    }
    m
}

pub fn is_coboundary(f: &Cochain, alg: &FiniteAlgebra) -> Result<bool> {
    if f.degree == 0 {
        return Ok(f.is_zero());
    }
    in_column_span(&coboundary_matrix(alg, f.degree - 1), &f.coordinates())
}

/// Dimensions of `HH^p` for `p = 0..=max_degree` with the default size bound.
pub fn bar_cohomology(alg: &FiniteAlgebra, max_degree: usize) -> Result<GradedModule> {
    bar_cohomology_bounded(alg, max_degree, DEFAULT_DIM_BOUND)
}

pub fn bar_cohomology_bounded(alg: &FiniteAlgebra, max_degree: usize, dim_bound: usize) -> Result<GradedModule> {
    if max_degree > MAX_BAR_DEGREE {
        return Err(Error::Size(format!("bar cohomology is limited to degree {MAX_BAR_DEGREE}")));
    }
    if alg.dim > dim_bound {
        return Err(Error::Size(format!("algebra of dimension {} exceeds the bound {dim_bound}", alg.dim)));
    }
    let ranks = (0..=max_degree).map(|p| rank(&coboundary_matrix(alg, p))).collect::<Result<Vec<_>>>()?;
    let degrees = (0..=max_degree)
        .map(|p| {
            let size = (alg.dim - 1).pow(p as u32) * alg.dim;
            let incoming = if p == 0 { 0 } else { ranks[p - 1] };
            ModuleInvariants::free(size - ranks[p] - incoming)
        })
        .collect();
    Ok(GradedModule { degrees, assumptions: Vec::new() })
}

/// The 1-cochain `e_i ↦ D(e_i)` of a derivation `D = Σ a_i ∂/∂x_i`.
pub fn derivation_cochain(d: &[Poly], pres: &Presentation, alg: &FiniteAlgebra) -> Result<Cochain> {
    require_derivation(d, pres)?;
    let kb = pres.k_basis()?;
    let ring = pres.ring();
    let mut c = Cochain::zero(alg, 1);
    for i in 1..kb.len() {
        let e = kb.element(ring, i);
        let de = (0..pres.nvars()).fold(pres.zero(), |acc, v| acc.add(&d[v].mul(&e.derivative(v))));
        c.values[i - 1] = kb.coordinates(&pres.normal_form(&de)?);
    }
    Ok(c)
}

/// Whether `D ∪ D` is nonzero in `HH²`, computed both ways.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SquareComparison {
    pub bar_nonzero: bool,
    pub clifford_nonzero: bool,
}

pub fn compare_square(d: &[Poly], pres: &Presentation) -> Result<SquareComparison> {
    let alg = FiniteAlgebra::from_presentation(pres)?;
    let f = derivation_cochain(d, pres, &alg)?;
    let bar_nonzero = !is_coboundary(&bar_cup(&f, &f, &alg)?, &alg)?;
    let model = CliffordModel::from_presentation(pres)?;
    let class = cup_square_class(d, pres)?;
    let clifford_nonzero = !in_column_span(&model.differential_matrix(1)?, &model.coordinates(&class, 2)?)?;
    Ok(SquareComparison { bar_nonzero, clifford_nonzero })
}
