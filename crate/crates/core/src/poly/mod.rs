//! Multivariate polynomials with exact coefficients.
//!
//! Terms are stored densely by exponent vector in a map ordered by graded
//! reverse lexicographic order, so the leading term is the last entry.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};

use crate::coeff::{CoeffRing, Scalar};

mod parse;
mod univariate;

pub use parse::parse_poly;
pub use univariate::{content_ideal, delta_quotient, div_rem_univariate, gcd_univariate};

/// Exponent vector, ordered by grevlex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

/// Multi-index `a` of a divided partial derivative.
pub type MultiIndex = Monomial;

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0).rev() {
                if a != b {
                    // smaller exponent in the last differing variable is larger
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial over a [`CoeffRing`] in `nvars` variables. No zero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    ring: CoeffRing,
    nvars: usize,
    terms: BTreeMap<Monomial, Scalar>,
}

/// Degree of a polynomial, with a distinguished value for the zero polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degree {
    MinusInfinity,
    Finite(u32),
}

impl Poly {
    pub fn zero(ring: &CoeffRing, nvars: usize) -> Self {
        Poly { ring: ring.clone(), nvars, terms: BTreeMap::new() }
    }

    pub fn constant(ring: &CoeffRing, nvars: usize, c: Scalar) -> Self {
        Self::term(ring, Monomial::one(nvars), c)
    }

    pub fn from_i64(ring: &CoeffRing, nvars: usize, c: i64) -> Self {
        Self::constant(ring, nvars, ring.from_i64(c))
    }

    pub fn one(ring: &CoeffRing, nvars: usize) -> Self {
        Self::from_i64(ring, nvars, 1)
    }

    pub fn var(ring: &CoeffRing, nvars: usize, i: usize) -> Self {
        Self::term(ring, Monomial::var(nvars, i), ring.one())
    }

    pub fn term(ring: &CoeffRing, m: Monomial, c: Scalar) -> Self {
        let nvars = m.nvars();
        let mut p = Self::zero(ring, nvars);
        let c = ring.normalize(&c);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds from `(exponents, coefficient)` pairs, combining duplicates.
    pub fn from_terms<I>(ring: &CoeffRing, nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut p = Self::zero(ring, nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "exponent vector length mismatch");
            p.add_term(m, &ring.normalize(&c));
        }
        p
    }

    pub fn ring(&self) -> &CoeffRing {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Leading term under grevlex.
    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Degree {
        match self.terms.keys().map(Monomial::degree).max() {
            Some(d) => Degree::Finite(d),
            None => Degree::MinusInfinity,
        }
    }

    /// Degree in variable `i`; `None` for the zero polynomial.
    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[i]).max()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let ring = self.ring.clone();
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = ring.add(v, c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        let ring = &self.ring;
        Poly {
            ring: ring.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), ring.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        let ring = &self.ring;
        let mut out = Poly::zero(ring, self.nvars);
        for (m, v) in &self.terms {
            let p = ring.mul(v, c);
            if !p.is_zero() {
                out.terms.insert(m.clone(), p);
            }
        }
        out
    }

    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Poly {
        let ring = &self.ring;
        let mut out = Poly::zero(ring, self.nvars);
        for (k, v) in &self.terms {
            let p = ring.mul(v, c);
            if !p.is_zero() {
                out.terms.insert(k.mul(m), p);
            }
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(&self.ring, self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &self.ring.mul(c1, c2));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::one(&self.ring, self.nvars), |acc, _| acc.mul(self))
    }

    /// Ordinary partial derivative in variable `i`.
    pub fn derivative(&self, i: usize) -> Poly {
        let ring = &self.ring;
        let mut out = Poly::zero(ring, self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] -= 1;
            out.add_term(m2, &ring.mul(c, &ring.from_i64(e as i64)));
        }
        out
    }

    /// Divided partial derivative: `x^e ↦ Π binom(e_i, a_i) x^(e-a)`, with the
    /// binomials computed over `Z` and then mapped into the ring.
    pub fn divided_partial(&self, a: &MultiIndex) -> Poly {
        assert_eq!(a.nvars(), self.nvars, "multi-index length mismatch");
        let ring = &self.ring;
        let mut out = Poly::zero(ring, self.nvars);
        for (m, c) in &self.terms {
            if !a.divides(m) {
                continue;
            }
            let b: BigInt = m
                .0
                .iter()
                .zip(&a.0)
                .map(|(&e, &k)| binomial(BigInt::from(e), BigInt::from(k)))
                .product();
            out.add_term(a.quotient_of(m), &ring.mul(c, &ring.from_bigint(&b)));
        }
        out
    }

    /// Second divided derivative in `x_i, x_j`: the divided `∂²/∂x_i²` on the
    /// diagonal, the ordinary mixed partial off it.
    pub fn hessian_entry(&self, i: usize, j: usize) -> Poly {
        let mut a = Monomial::one(self.nvars);
        a.0[i] += 1;
        a.0[j] += 1;
        self.divided_partial(&a)
    }

    /// Substitutes polynomials (all in the same target ring and arity) for the variables.
    pub fn substitute(&self, values: &[Poly]) -> Poly {
        assert_eq!(values.len(), self.nvars);
        let (ring, nv) = (values[0].ring().clone(), values[0].nvars());
        let mut out = Poly::zero(&ring, nv);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(&ring, nv, c.clone());
            for (v, &e) in values.iter().zip(&m.0) {
                if e > 0 {
                    t = t.mul(&v.pow(e));
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Reinterprets the coefficients in another ring (e.g. reduction `Z -> Z/n`).
    pub fn change_ring(&self, ring: &CoeffRing) -> Poly {
        Poly::from_terms(ring, self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), c.clone())))
    }

    /// Multiplies by a unit so the leading coefficient is one (fields; units otherwise).
    pub fn monic(&self) -> Option<Poly> {
        let (_, lc) = self.leading()?;
        let inv = self.ring.inv(lc)?;
        Some(self.scale(&inv))
    }

    /// Canonical text with the given variable names, terms in decreasing grevlex order.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let (negative, abs) = if c < &Scalar::zero() { (true, -c.clone()) } else { (false, c.clone()) };
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            let monomial_is_one = m.degree() == 0;
            if !abs.is_one() || monomial_is_one {
                factors.push(self.ring.fmt_scalar(&abs));
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    _ => factors.push(format!("{}^{}", names[i], e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

/// Default variable names `x1..xn`, or `x` for one variable.
pub fn default_names(nvars: usize) -> Vec<String> {
    if nvars == 1 {
        vec!["x".to_string()]
    } else {
        (1..=nvars).map(|i| format!("x{i}")).collect()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&default_names(self.nvars)))
    }
}
