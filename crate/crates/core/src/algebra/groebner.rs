//! Buchberger's algorithm over a field, and reduction by polynomials with
//! unit leading coefficients over any supported ring.

use std::cmp::Ordering;

use crate::coeff::Scalar;
use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly};

/// Monomial orders used by the engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic.
    Grevlex,
    /// The last variable is eliminated: compare its exponent first, then grevlex.
    EliminateLast,
}

impl MonomialOrder {
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Grevlex => a.cmp(b),
            MonomialOrder::EliminateLast => {
                let k = a.nvars() - 1;
                a.0[k].cmp(&b.0[k]).then_with(|| a.cmp(b))
            }
        }
    }

    pub fn leading(self, f: &Poly) -> Option<(&Monomial, &Scalar)> {
        match self {
            MonomialOrder::Grevlex => f.leading(),
            MonomialOrder::EliminateLast => f.terms().max_by(|x, y| self.cmp(x.0, y.0)),
        }
    }
}

/// Fully reduces `f` by `basis`, whose leading coefficients must be units.
pub fn reduce(f: &Poly, basis: &[Poly], order: MonomialOrder) -> Poly {
    let ring = f.ring().clone();
    let leads: Vec<(Monomial, Scalar)> = basis
        .iter()
        .map(|g| {
            let (m, c) = order.leading(g).expect("zero polynomial in reducer set");
            (m.clone(), ring.inv(c).expect("reducer with non-unit leading coefficient"))
        })
        .collect();
    let mut p = f.clone();
    let mut rem = Poly::zero(&ring, f.nvars());
    while let Some((m, c)) = order.leading(&p) {
        let (m, c) = (m.clone(), c.clone());
        match leads.iter().position(|(lm, _)| lm.divides(&m)) {
            Some(k) => {
                let coef = ring.mul(&c, &leads[k].1);
                p = p.sub(&basis[k].mul_term(&leads[k].0.quotient_of(&m), &coef));
            }
            None => {
                rem.add_term(m.clone(), &c);
                p = p.sub(&Poly::term(&ring, m, c));
            }
        }
    }
    rem
}

fn s_polynomial(f: &Poly, g: &Poly, order: MonomialOrder) -> Poly {
    let ring = f.ring();
    let (mf, cf) = order.leading(f).unwrap();
    let (mg, cg) = order.leading(g).unwrap();
    let l = mf.lcm(mg);
    let a = f.mul_term(&mf.quotient_of(&l), &ring.inv(cf).unwrap());
    let b = g.mul_term(&mg.quotient_of(&l), &ring.inv(cg).unwrap());
    a.sub(&b)
}

/// Reduced Gröbner basis of the ideal generated by `gens`, monic, sorted by
/// increasing leading monomial. Requires field coefficients.
pub fn groebner_basis(gens: &[Poly], order: MonomialOrder) -> Result<Vec<Poly>> {
    let Some(first) = gens.first() else { return Ok(Vec::new()) };
    let ring = first.ring().clone();
    if !ring.is_field() {
        return Err(Error::Domain(format!("Gröbner bases need a field, not {ring}")));
    }
    let mut basis: Vec<Poly> = Vec::new();
    for g in gens {
        let r = reduce(g, &basis, order);
        if let Some(m) = monic(&r, order) {
            basis.push(m);
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    while let Some(idx) = pick_pair(&pairs, &basis, order) {
        let (i, j) = pairs.swap_remove(idx);
        let (mi, mj) = (lm(&basis[i], order), lm(&basis[j], order));
        if mi.is_coprime(&mj) || chain_criterion(i, j, &basis, &pairs, order) {
            continue;
        }
        let r = reduce(&s_polynomial(&basis[i], &basis[j], order), &basis, order);
        if let Some(m) = monic(&r, order) {
            let k = basis.len();
            basis.push(m);
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    Ok(interreduce(basis, order))
}

fn lm(f: &Poly, order: MonomialOrder) -> Monomial {
    order.leading(f).unwrap().0.clone()
}

fn monic(f: &Poly, order: MonomialOrder) -> Option<Poly> {
    let (_, c) = order.leading(f)?;
    Some(f.scale(&f.ring().inv(c).expect("field")))
}

fn pick_pair(pairs: &[(usize, usize)], basis: &[Poly], order: MonomialOrder) -> Option<usize> {
    (0..pairs.len()).min_by(|&a, &b| {
        let la = lm(&basis[pairs[a].0], order).lcm(&lm(&basis[pairs[a].1], order));
        let lb = lm(&basis[pairs[b].0], order).lcm(&lm(&basis[pairs[b].1], order));
        order.cmp(&la, &lb)
    })
}

/// Gebauer–Möller style chain test: the pair `(i, j)` is redundant if some `k`
/// has a leading monomial dividing `lcm(i, j)` and both `(i, k)`, `(j, k)` are already treated.
fn chain_criterion(i: usize, j: usize, basis: &[Poly], pending: &[(usize, usize)], order: MonomialOrder) -> bool {
    let l = lm(&basis[i], order).lcm(&lm(&basis[j], order));
    let open = |a: usize, b: usize| pending.contains(&(a.min(b), a.max(b)));
    (0..basis.len()).any(|k| k != i && k != j && lm(&basis[k], order).divides(&l) && !open(i, k) && !open(j, k))
}

fn interreduce(mut basis: Vec<Poly>, order: MonomialOrder) -> Vec<Poly> {
    // drop elements whose leading monomial is divisible by another's
    basis.sort_by(|a, b| order.cmp(&lm(a, order), &lm(b, order)));
    let mut minimal: Vec<Poly> = Vec::new();
    for g in basis {
        let m = lm(&g, order);
        if !minimal.iter().any(|h| lm(h, order).divides(&m)) {
            minimal.push(g);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Poly> = minimal.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, g)| g.clone()).collect();
        let (m, c) = {
            let (m, c) = order.leading(&minimal[k]).unwrap();
            (m.clone(), c.clone())
        };
        let tail = minimal[k].sub(&Poly::term(minimal[k].ring(), m.clone(), c.clone()));
        let reduced_tail = reduce(&tail, &others, order);
        out.push(Poly::term(minimal[k].ring(), m, c).add(&reduced_tail));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::CoeffRing;
    use crate::poly::parse_poly;

    fn parse_all(gens: &[&str], vars: &[&str], ring: &CoeffRing) -> Vec<Poly> {
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        gens.iter().map(|g| parse_poly(g, &names, ring).unwrap()).collect()
    }

    fn s_pairs_reduce_to_zero(basis: &[Poly], order: MonomialOrder) -> bool {
        basis.iter().enumerate().all(|(j, g)| {
            basis[..j].iter().all(|f| reduce(&s_polynomial(f, g, order), basis, order).is_zero())
        })
    }

    #[test]
    fn principal_ideals_are_their_own_basis() {
        let q = CoeffRing::Rationals;
        let gens = parse_all(&["x^2 - 4*x*y + y^2 - 1"], &["x", "y"], &q);
        assert_eq!(groebner_basis(&gens, MonomialOrder::Grevlex).unwrap(), gens);
    }

    #[test]
    fn nilpotent_example_over_gf3() {
        let r = CoeffRing::PrimeField(3);
        let gens = parse_all(&["x^2 - y", "y^2"], &["x", "y"], &r);
        let gb = groebner_basis(&gens, MonomialOrder::Grevlex).unwrap();
        assert!(s_pairs_reduce_to_zero(&gb, MonomialOrder::Grevlex));
        let x4 = parse_all(&["x^4"], &["x", "y"], &r).remove(0);
        assert!(reduce(&x4, &gb, MonomialOrder::Grevlex).is_zero());
        // idempotent
        assert_eq!(groebner_basis(&gb, MonomialOrder::Grevlex).unwrap(), gb);
    }

    #[test]
    fn elimination_order_separates_last_variable() {
        let q = CoeffRing::Rationals;
        // (x - w, y - w^2) eliminating w gives y - x^2
        let gens = parse_all(&["x - w", "y - w^2"], &["x", "y", "w"], &q);
        let gb = groebner_basis(&gens, MonomialOrder::EliminateLast).unwrap();
        let free: Vec<&Poly> = gb.iter().filter(|g| g.degree_in(2) == Some(0)).collect();
        assert_eq!(free.len(), 1);
        let names = vec!["x".to_string(), "y".to_string(), "w".to_string()];
        assert_eq!(free[0].display_with(&names), "x^2 - y");
        assert!(s_pairs_reduce_to_zero(&gb, MonomialOrder::EliminateLast));
    }

    #[test]
    fn non_field_rejected() {
        let gens = parse_all(&["x"], &["x"], &CoeffRing::Integers);
        assert!(groebner_basis(&gens, MonomialOrder::Grevlex).is_err());
    }
}
