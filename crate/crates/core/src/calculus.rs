//! Jacobian, derivations and the Hessian quadratic map on them.
//!
//! A derivation `D = Σ a_i ∂/∂x_i` of `A` is represented by its coefficient
//! vector `(a_1, ..., a_n)` of normal forms; a normal-module element by its
//! values `(u_1, ..., u_c)` on the relations.

use crate::algebra::Presentation;
use crate::error::{Error, Result};
use crate::poly::Poly;

/// Coefficients `a_1..a_n` of `Σ a_i ∂/∂x_i`.
pub type DerivationVec = Vec<Poly>;
/// Values `u_1..u_c` on the relations.
pub type NormalVec = Vec<Poly>;

/// `c x n` matrix with entries `nf(∂f_j/∂x_i)`.
pub fn jacobian(pres: &Presentation) -> Result<Vec<Vec<Poly>>> {
    pres.relations()
        .iter()
        .map(|f| (0..pres.nvars()).map(|i| pres.normal_form(&f.derivative(i))).collect())
        .collect()
}

fn check_len(d: &[Poly], pres: &Presentation) -> Result<()> {
    if d.len() != pres.nvars() {
        return Err(Error::InvalidInput(format!(
            "a derivation needs {} coefficients, got {}",
            pres.nvars(),
            d.len()
        )));
    }
    Ok(())
}

/// `jac · D`, the values `D(f_j)` in `A`.
pub fn apply_jacobian(d: &[Poly], pres: &Presentation) -> Result<Vec<Poly>> {
    check_len(d, pres)?;
    jacobian(pres)?
        .iter()
        .map(|row| {
            let sum = row.iter().zip(d).fold(pres.zero(), |acc, (j, a)| acc.add(&j.mul(a)));
            pres.normal_form(&sum)
        })
        .collect()
}

pub fn is_derivation(d: &[Poly], pres: &Presentation) -> Result<bool> {
    Ok(apply_jacobian(d, pres)?.iter().all(Poly::is_zero))
}

pub(crate) fn require_derivation(d: &[Poly], pres: &Presentation) -> Result<()> {
    match apply_jacobian(d, pres)?.iter().position(|v| !v.is_zero()) {
        Some(j) => Err(Error::NotADerivation(j + 1)),
        None => Ok(()),
    }
}

/// The Hessian form evaluated on an arbitrary vector:
/// `f_j ↦ nf(Σ_{i ≤ k} ∂^(2) f_j/∂x_i∂x_k · a_i a_k)`, divided on the diagonal.
pub fn hessian_quadratic(a: &[Poly], pres: &Presentation) -> Result<NormalVec> {
    check_len(a, pres)?;
    let n = pres.nvars();
    pres.relations()
        .iter()
        .map(|f| {
            let mut sum = pres.zero();
            for i in 0..n {
                for k in i..n {
                    let h = f.hessian_entry(i, k);
                    if !h.is_zero() {
                        sum = sum.add(&h.mul(&a[i]).mul(&a[k]));
                    }
                }
            }
            pres.normal_form(&sum)
        })
        .collect()
}

/// `q(D)`; fails unless `D` is a derivation of `A`.
pub fn hessian_q(d: &[Poly], pres: &Presentation) -> Result<NormalVec> {
    require_derivation(d, pres)?;
    hessian_quadratic(d, pres)
}

/// Symmetric bilinear form attached to the Hessian on arbitrary vectors:
/// `2 ∂^(2)f/∂x_i² a_i b_i` on the diagonal and `∂²f/∂x_i∂x_k (a_i b_k + a_k b_i)` off it.
pub fn hessian_bilinear(a: &[Poly], b: &[Poly], pres: &Presentation) -> Result<NormalVec> {
    check_len(a, pres)?;
    check_len(b, pres)?;
    let n = pres.nvars();
    let two = pres.ring().from_i64(2);
    pres.relations()
        .iter()
        .map(|f| {
            let mut sum = pres.zero();
            for i in 0..n {
                let h = f.hessian_entry(i, i);
                if !h.is_zero() {
                    sum = sum.add(&h.mul(&a[i]).mul(&b[i]).scale(&two));
                }
                for k in i + 1..n {
                    let h = f.hessian_entry(i, k);
                    if !h.is_zero() {
                        sum = sum.add(&h.mul(&a[i].mul(&b[k]).add(&a[k].mul(&b[i]))));
                    }
                }
            }
            pres.normal_form(&sum)
        })
        .collect()
}

/// `B(D1, D2) = q(D1 + D2) - q(D1) - q(D2)` for derivations.
pub fn polarization(d1: &[Poly], d2: &[Poly], pres: &Presentation) -> Result<NormalVec> {
    require_derivation(d1, pres)?;
    require_derivation(d2, pres)?;
    hessian_bilinear(d1, d2, pres)
}

/// Parses `"a_1, ..., a_n"` into normal-form coefficients.
pub fn parse_derivation(text: &str, pres: &Presentation) -> Result<DerivationVec> {
    let parts: Vec<&str> = text.split(',').collect();
    let d = parts
        .iter()
        .map(|s| pres.parse_element(s).and_then(|p| pres.normal_form(&p)))
        .collect::<Result<Vec<_>>>()?;
    check_len(&d, pres)?;
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::CoeffRing;
    use proptest::prelude::*;

    fn pres(ring: &str, vars: &[&str], rels: &[&str]) -> Presentation {
        Presentation::parse(ring.parse().unwrap(), vars, rels, false).unwrap()
    }

    fn elems(p: &Presentation, v: &[&str]) -> Vec<Poly> {
        v.iter().map(|s| p.normal_form(&p.parse_element(s).unwrap()).unwrap()).collect()
    }

    fn hessian_example() -> Presentation {
        pres("Z", &["x", "y"], &["x^2 - 4*x*y + y^2 - 1"])
    }

    #[test]
    fn jacobian_examples() {
        let a = pres("GF(2)", &["x"], &["x^2"]);
        assert!(jacobian(&a).unwrap()[0][0].is_zero());
        let b = hessian_example();
        let j = jacobian(&b).unwrap();
        assert_eq!(j[0], elems(&b, &["2*x - 4*y", "-4*x + 2*y"]));
        let g = pres("Z", &["x", "y"], &["x^2 - 1", "y^4 - 1"]);
        let j = jacobian(&g).unwrap();
        assert_eq!(j, vec![elems(&g, &["2*x", "0"]), elems(&g, &["0", "4*y^3"])]);
    }

    #[test]
    fn derivation_examples() {
        let b = hessian_example();
        assert!(is_derivation(&elems(&b, &["2*x - y", "x - 2*y"]), &b).unwrap());
        let a = pres("GF(2)", &["x"], &["x^2"]);
        assert!(is_derivation(&elems(&a, &["1"]), &a).unwrap());
        let q = pres("Q", &["x"], &["x^2"]);
        assert!(!is_derivation(&elems(&q, &["1"]), &q).unwrap());
        assert_eq!(hessian_q(&elems(&q, &["1"]), &q), Err(Error::NotADerivation(1)));
    }

    #[test]
    fn q_on_the_hessian_example() {
        let b = hessian_example();
        let d = parse_derivation("2*x - y, x - 2*y", &b).unwrap();
        let q = hessian_q(&d, &b).unwrap();
        // q(D)(f) = -3 f - 3 ≡ -3
        assert_eq!(q, elems(&b, &["-3"]));
        let mod2 = b.change_ring(CoeffRing::PrimeField(2)).unwrap();
        let reduced = mod2.normal_form(&q[0].change_ring(mod2.ring())).unwrap();
        assert_eq!(reduced, mod2.one().unwrap());
    }

    #[test]
    fn q_small_cases() {
        let a = pres("GF(2)", &["x"], &["x^2"]);
        assert_eq!(hessian_q(&elems(&a, &["1"]), &a).unwrap(), elems(&a, &["1"]));
        let b = hessian_example();
        assert_eq!(hessian_q(&elems(&b, &["0", "0"]), &b).unwrap(), elems(&b, &["0"]));
    }

    #[test]
    fn bilinear_examples() {
        let a = pres("Q", &["x", "y"], &["x*y - 1"]);
        let (e1, e2) = (elems(&a, &["1", "0"]), elems(&a, &["0", "1"]));
        assert_eq!(hessian_bilinear(&e1, &e2, &a).unwrap(), elems(&a, &["1"]));
        // these coordinate vectors are not derivations of this algebra
        assert_eq!(polarization(&e1, &e2, &a), Err(Error::NotADerivation(1)));
        let zero = elems(&a, &["0", "0"]);
        assert_eq!(hessian_bilinear(&e1, &zero, &a).unwrap(), elems(&a, &["0"]));
        let b = hessian_example();
        let d = parse_derivation("2*x - y, x - 2*y", &b).unwrap();
        let q2: Vec<Poly> = hessian_q(&d, &b).unwrap().iter().map(|v| v.scale(&b.ring().from_i64(2))).collect();
        assert_eq!(polarization(&d, &d, &b).unwrap(), q2);
    }

    #[test]
    fn derivation_parsing_checks_arity() {
        let b = hessian_example();
        assert_eq!(parse_derivation("x", &b).unwrap_err().kind(), "InvalidInput");
        assert_eq!(parse_derivation("x, z", &b).unwrap_err().kind(), "UnknownVariable");
    }

    fn arb_coeffs() -> impl Strategy<Value = Vec<(u32, u32, i64)>> {
        proptest::collection::vec((0u32..3, 0u32..3, -3i64..4), 0..5)
    }

    fn elem(p: &Presentation, t: &[(u32, u32, i64)]) -> Poly {
        let r = p.ring();
        let f = t.iter().fold(p.zero(), |acc, &(a, b, c)| {
            acc.add(&p.var(0).pow(a).mul(&p.var(1).pow(b)).scale(&r.from_i64(c)))
        });
        p.normal_form(&f).unwrap()
    }

    fn samples() -> Vec<Presentation> {
        vec![
            hessian_example(),
            pres("GF(2)", &["x", "y"], &["x^2", "y^2 + x"]),
            pres("GF(3)", &["x", "y"], &["x^3 - y", "y^3"]),
            pres("Z/4", &["x", "y"], &["x^2 - 1", "y^2 - 1"]),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn polarization_identity(which in 0usize..4, a0 in arb_coeffs(), a1 in arb_coeffs(),
                                 b0 in arb_coeffs(), b1 in arb_coeffs()) {
            let p = &samples()[which];
            let a = vec![elem(p, &a0), elem(p, &a1)];
            let b = vec![elem(p, &b0), elem(p, &b1)];
            let sum: Vec<Poly> = a.iter().zip(&b).map(|(x, y)| x.add(y)).collect();
            let lhs = hessian_quadratic(&sum, p).unwrap();
            let qa = hessian_quadratic(&a, p).unwrap();
            let qb = hessian_quadratic(&b, p).unwrap();
            let bb = hessian_bilinear(&a, &b, p).unwrap();
            for j in 0..lhs.len() {
                prop_assert_eq!(&lhs[j], &p.normal_form(&qa[j].add(&qb[j]).add(&bb[j])).unwrap());
            }
        }

        #[test]
        fn quadratic_scaling(which in 0usize..4, c in arb_coeffs(), a0 in arb_coeffs(), a1 in arb_coeffs()) {
            let p = &samples()[which];
            let scalar = elem(p, &c);
            let d: Vec<Poly> = if which == 0 {
                parse_derivation("2*x - y, x - 2*y", p).unwrap()
            } else {
                vec![elem(p, &a0), elem(p, &a1)]
            };
            let scaled: Vec<Poly> = d.iter().map(|x| p.mul(x, &scalar).unwrap()).collect();
            let lhs = hessian_quadratic(&scaled, p).unwrap();
            let rhs = hessian_quadratic(&d, p).unwrap();
            let sq = p.mul(&scalar, &scalar).unwrap();
            for j in 0..lhs.len() {
                prop_assert_eq!(&lhs[j], &p.mul(&rhs[j], &sq).unwrap());
            }
            if which == 0 {
                // multiples of a derivation are derivations, so the checked map agrees
                prop_assert_eq!(hessian_q(&scaled, p).unwrap(), lhs);
            }
        }
    }
}
