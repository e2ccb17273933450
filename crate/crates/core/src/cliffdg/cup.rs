//! Cup products of 1-cochains through the explicit diagonal approximation.

use super::{CliffordElement, CliffordModel};
use crate::algebra::Presentation;
use crate::calculus::{hessian_q, hessian_quadratic};
use crate::error::{Error, Result};
use crate::poly::Poly;

/// `f ∪ g` for 1-cochains given by their values on `dx_1..dx_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CupOfOneCochains {
    /// `wedge[a][b] = g(dx_a) f(dx_b) - f(dx_a) g(dx_b)`.
    pub wedge: Vec<Vec<Poly>>,
    /// `(f ∪ g)(df_j) = Σ_{i ≤ k} ∂^(2) f_j/∂x_i∂x_k · f(dx_i) g(dx_k)`.
    pub hess: Vec<Poly>,
}

pub fn cup_1cochains(f: &[Poly], g: &[Poly], pres: &Presentation) -> Result<CupOfOneCochains> {
    let n = pres.nvars();
    if f.len() != n || g.len() != n {
        return Err(Error::InvalidInput(format!("1-cochains need {n} values")));
    }
    let wedge = (0..n)
        .map(|a| (0..n).map(|b| pres.normal_form(&g[a].mul(&f[b]).sub(&f[a].mul(&g[b])))).collect())
        .collect::<Result<Vec<Vec<Poly>>>>()?;
    let hess = pres
        .relations()
        .iter()
        .map(|rel| {
            let mut sum = pres.zero();
            for i in 0..n {
                for k in i..n {
                    let h = rel.hessian_entry(i, k);
                    if !h.is_zero() {
                        sum = sum.add(&h.mul(&f[i]).mul(&g[k]));
                    }
                }
            }
            pres.normal_form(&sum)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CupOfOneCochains { wedge, hess })
}

/// The degree-2 cocycle `Σ_j q(D)_j s_j`, checked against `(Σ a_i t_i)²`.
pub fn cup_square_class(d: &[Poly], pres: &Presentation) -> Result<CliffordElement> {
    let q = hessian_q(d, pres)?;
    let model = CliffordModel::from_presentation(pres)?;
    let class = model.linear_in_s(&q);
    let u = model.linear_in_t(d);
    let square = model.mul(&u, &u);
    assert_eq!(square, class, "Clifford square disagrees with the Hessian map");
    assert!(model.is_cocycle(&class));
    debug_assert_eq!(hessian_quadratic(d, pres)?, q);
    Ok(class)
}
