//! One-variable operations: content, division, gcd and the difference quotient.

use super::{Monomial, Poly};
use crate::coeff::Scalar;
use crate::error::{Error, Result};

fn require_univariate(f: &Poly) -> Result<()> {
    if f.nvars() != 1 {
        return Err(Error::InvalidInput(format!("expected one variable, got {}", f.nvars())));
    }
    Ok(())
}

/// Nonzero coefficients of `f`, from the constant term upwards.
pub fn content_ideal(f: &Poly) -> Result<Vec<Scalar>> {
    require_univariate(f)?;
    Ok(f.terms().map(|(_, c)| c.clone()).collect())
}

/// Division with remainder by a polynomial with unit leading coefficient.
pub fn div_rem_univariate(f: &Poly, g: &Poly) -> Result<(Poly, Poly)> {
    require_univariate(f)?;
    require_univariate(g)?;
    let ring = f.ring().clone();
    let (lm, lc) = g.leading().ok_or_else(|| Error::Domain("division by zero polynomial".into()))?;
    let (dg, lc) = (lm.0[0], lc.clone());
    let inv = ring
        .inv(&lc)
        .ok_or_else(|| Error::Domain(format!("leading coefficient {} is not a unit", ring.fmt_scalar(&lc))))?;
    let mut q = Poly::zero(&ring, 1);
    let mut r = f.clone();
    while let Some((m, c)) = r.leading() {
        let d = m.0[0];
        if d < dg {
            break;
        }
        let shift = Monomial(vec![d - dg]);
        let coef = ring.mul(c, &inv);
        r = r.sub(&g.mul_term(&shift, &coef));
        q.add_term(shift, &coef);
    }
    Ok((q, r))
}

/// Monic gcd over a field; `gcd(0, 0) = 0`.
pub fn gcd_univariate(f: &Poly, g: &Poly) -> Result<Poly> {
    require_univariate(f)?;
    require_univariate(g)?;
    if !f.ring().is_field() {
        return Err(Error::Domain(format!("gcd needs a field, not {}", f.ring())));
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    while !b.is_zero() {
        let (_, r) = div_rem_univariate(&a, &b)?;
        a = b;
        b = r;
    }
    Ok(a.monic().unwrap_or(a))
}

/// The quotient `Δ(x', x'')` of `f(x'') - f(x')` by `x'' - x'`, in variables `(x', x'')`.
pub fn delta_quotient(f: &Poly) -> Result<Poly> {
    require_univariate(f)?;
    let ring = f.ring();
    let mut out = Poly::zero(ring, 2);
    for (m, c) in f.terms() {
        let k = m.0[0];
        for i in 0..k {
            out.add_term(Monomial(vec![k - 1 - i, i]), c);
        }
    }
    debug_assert!({
        let diff = Poly::var(ring, 2, 1).sub(&Poly::var(ring, 2, 0));
        let lhs = diff.mul(&out);
        let rhs = f
            .substitute(&[Poly::var(ring, 2, 1)])
            .sub(&f.substitute(&[Poly::var(ring, 2, 0)]));
        lhs == rhs || (f.is_zero() && lhs.is_zero())
    });
    Ok(out)
}
