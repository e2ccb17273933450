//! The DG Clifford algebra `A⟨t_1..t_n; s_1..s_c⟩` with `∂t_i = Σ_j d_ij s_j`,
//! central cycles `s_j`, `t_i² = Σ_j Q_ij s_j` and
//! `t_i t_k + t_k t_i = Σ_j B_ikj s_j`.
//!
//! Elements are kept in normal form: each term is a strictly increasing
//! product of `t`'s (a bitmask), a monomial in the `s`'s, and a normal-form
//! coefficient in `A`.

use std::collections::BTreeMap;

use crate::algebra::Presentation;
use crate::calculus::jacobian;
use crate::error::{Error, Result};
use crate::poly::Poly;

mod cohomology;
mod cup;

pub use cohomology::{hh, hodge, GradedModule, HodgeEntry, HodgeTable, DEFAULT_MAX_DEGREE};
pub use cup::{cup_1cochains, cup_square_class, CupOfOneCochains};

/// Key of a basis term: `t`-bitmask and `s`-exponents.
pub type TermKey = (u32, Vec<u32>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordElement {
    terms: BTreeMap<TermKey, Poly>,
}

impl CliffordElement {
    pub fn zero() -> Self {
        CliffordElement { terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &Poly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &TermKey) -> Option<&Poly> {
        self.terms.get(key)
    }

    fn add_term(&mut self, key: TermKey, a: Poly) {
        if a.is_zero() {
            return;
        }
        match self.terms.remove(&key) {
            Some(old) => {
                let s = old.add(&a);
                if !s.is_zero() {
                    self.terms.insert(key, s);
                }
            }
            None => {
                self.terms.insert(key, a);
            }
        }
    }

    pub fn add(&self, other: &CliffordElement) -> CliffordElement {
        let mut out = self.clone();
        for (k, a) in &other.terms {
            out.add_term(k.clone(), a.clone());
        }
        out
    }

    pub fn neg(&self) -> CliffordElement {
        CliffordElement { terms: self.terms.iter().map(|(k, a)| (k.clone(), a.neg())).collect() }
    }

    pub fn sub(&self, other: &CliffordElement) -> CliffordElement {
        self.add(&other.neg())
    }

    /// Degree of each term is `|t-mask| + 2 |s-exponent|`.
    pub fn term_degree(key: &TermKey) -> usize {
        key.0.count_ones() as usize + 2 * key.1.iter().sum::<u32>() as usize
    }

    /// The common degree of all terms, or `None` for inhomogeneous elements and zero.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(Self::term_degree);
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }
}

/// Structure constants of a DG Clifford algebra over a finite presentation `A`.
#[derive(Clone, Debug)]
pub struct CliffordModel {
    base: Presentation,
    n: usize,
    c: usize,
    /// `diff[i][j]`: coefficient of `s_j` in `∂t_i`.
    diff: Vec<Vec<Poly>>,
    /// `square[i][j]`: coefficient of `s_j` in `t_i²`.
    square: Vec<Vec<Poly>>,
    /// `anti[i][k][j]` for `i < k`: coefficient of `s_j` in `t_i t_k + t_k t_i`.
    anti: Vec<Vec<Vec<Poly>>>,
}

impl CliffordModel {
    /// General constructor; every coefficient is reduced to normal form.
    pub fn new(
        base: Presentation,
        diff: Vec<Vec<Poly>>,
        square: Vec<Vec<Poly>>,
        anti: Vec<Vec<Vec<Poly>>>,
    ) -> Result<Self> {
        let n = diff.len();
        let c = diff.first().map_or(square.first().map_or(0, Vec::len), Vec::len);
        if n > 31 {
            return Err(Error::Size("at most 31 odd generators are supported".into()));
        }
        let shape_ok = square.len() == n
            && anti.len() == n
            && diff.iter().chain(&square).all(|r| r.len() == c)
            && anti.iter().all(|r| r.len() == n && r.iter().all(|v| v.len() == c));
        if !shape_ok {
            return Err(Error::InvalidInput("inconsistent Clifford structure constants".into()));
        }
        let nf = |m: Vec<Vec<Poly>>| -> Result<Vec<Vec<Poly>>> {
            m.iter().map(|r| r.iter().map(|a| base.normal_form(a)).collect()).collect()
        };
        let diff = nf(diff)?;
        let square = nf(square)?;
        let anti = anti.into_iter().map(nf).collect::<Result<Vec<_>>>()?;
        Ok(CliffordModel { base, n, c, diff, square, anti })
    }

    /// The model attached to a presentation: Jacobian differential and Hessian relations.
    pub fn from_presentation(pres: &Presentation) -> Result<Self> {
        let (n, c) = (pres.nvars(), pres.ncodim());
        let jac = jacobian(pres)?;
        let diff = (0..n).map(|i| (0..c).map(|j| jac[j][i].clone()).collect()).collect();
        let rel = pres.relations();
        let square = (0..n).map(|i| (0..c).map(|j| rel[j].hessian_entry(i, i)).collect()).collect();
        let anti = (0..n)
            .map(|i| (0..n).map(|k| (0..c).map(|j| rel[j].hessian_entry(i, k)).collect()).collect())
            .collect();
        Self::new(pres.clone(), diff, square, anti)
    }

    pub fn base(&self) -> &Presentation {
        &self.base
    }

    pub fn num_t(&self) -> usize {
        self.n
    }

    pub fn num_s(&self) -> usize {
        self.c
    }

    fn nf(&self, a: &Poly) -> Poly {
        self.base.normal_form(a).expect("model coefficients admit normal forms")
    }

    fn coeff_mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.nf(&a.mul(b))
    }

    /// `a · t_mask · s^e` with `a` reduced.
    pub fn monomial(&self, mask: u32, sexp: Vec<u32>, a: &Poly) -> CliffordElement {
        assert_eq!(sexp.len(), self.c);
        let mut out = CliffordElement::zero();
        out.add_term((mask, sexp), self.nf(a));
        out
    }

    pub fn scalar(&self, a: &Poly) -> CliffordElement {
        self.monomial(0, vec![0; self.c], a)
    }

    pub fn one(&self) -> CliffordElement {
        self.scalar(&Poly::one(self.base.ring(), self.base.nvars()))
    }

    pub fn t(&self, i: usize) -> CliffordElement {
        self.monomial(1 << i, vec![0; self.c], &Poly::one(self.base.ring(), self.base.nvars()))
    }

    pub fn s(&self, j: usize) -> CliffordElement {
        let mut e = vec![0; self.c];
        e[j] = 1;
        self.monomial(0, e, &Poly::one(self.base.ring(), self.base.nvars()))
    }

    /// `Σ_j v_j s_j`.
    pub fn linear_in_s(&self, v: &[Poly]) -> CliffordElement {
        let mut out = CliffordElement::zero();
        for (j, a) in v.iter().enumerate() {
            let mut e = vec![0; self.c];
            e[j] = 1;
            out.add_term((0, e), self.nf(a));
        }
        out
    }

    /// `Σ_i a_i t_i`.
    pub fn linear_in_t(&self, a: &[Poly]) -> CliffordElement {
        let mut out = CliffordElement::zero();
        for (i, x) in a.iter().enumerate() {
            out.add_term((1 << i, vec![0; self.c]), self.nf(x));
        }
        out
    }

    /// Multiplies every coefficient by `a` (the coefficients are central).
    pub fn scale(&self, u: &CliffordElement, a: &Poly) -> CliffordElement {
        let mut out = CliffordElement::zero();
        for (k, x) in &u.terms {
            out.add_term(k.clone(), self.coeff_mul(x, a));
        }
        out
    }

    /// `t_mask · t_b` with unit coefficient, as a normal-form element.
    fn word_times_t(&self, mask: u32, b: usize) -> CliffordElement {
        let zero_e = vec![0u32; self.c];
        let top = if mask == 0 { None } else { Some(31 - mask.leading_zeros() as usize) };
        match top {
            None => self.monomial(1 << b, zero_e, &self.base_one()),
            Some(r) if r < b => self.monomial(mask | (1 << b), zero_e, &self.base_one()),
            Some(r) if r == b => {
                let rest = mask & !(1 << b);
                self.times_linear_s(&self.monomial(rest, zero_e, &self.base_one()), &self.square[b])
            }
            Some(r) => {
                // w' t_r t_b = -(w' t_b) t_r + w' · B(b, r) s
                let rest = mask & !(1 << r);
                let moved = self.word_times_t(rest, b);
                let mut out = CliffordElement::zero();
                for ((m, e), a) in &moved.terms {
                    debug_assert!(*m < (1 << r));
                    out.add_term((m | (1 << r), e.clone()), a.neg());
                }
                let (lo, hi) = (b.min(r), b.max(r));
                let corr = self.times_linear_s(&self.monomial(rest, zero_e, &self.base_one()), &self.anti[lo][hi]);
                out.add(&corr)
            }
        }
    }

    fn base_one(&self) -> Poly {
        Poly::one(self.base.ring(), self.base.nvars())
    }

    /// `u · Σ_j v_j s_j`.
    fn times_linear_s(&self, u: &CliffordElement, v: &[Poly]) -> CliffordElement {
        let mut out = CliffordElement::zero();
        for ((m, e), a) in &u.terms {
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let mut e2 = e.clone();
                e2[j] += 1;
                out.add_term((*m, e2), self.coeff_mul(a, vj));
            }
        }
        out
    }

    /// `t_mask1 · t_mask2` with unit coefficient.
    fn word_product(&self, mask1: u32, mask2: u32) -> CliffordElement {
        let mut acc = self.monomial(mask1, vec![0; self.c], &self.base_one());
        for b in (0..self.n).filter(|b| mask2 & (1 << b) != 0) {
            let mut next = CliffordElement::zero();
            for ((m, e), a) in &acc.terms {
                for ((m2, e2), a2) in &self.word_times_t(*m, b).terms {
                    let sum: Vec<u32> = e.iter().zip(e2).map(|(x, y)| x + y).collect();
                    next.add_term((*m2, sum), self.coeff_mul(a, a2));
                }
            }
            acc = next;
        }
        acc
    }

    pub fn mul(&self, u: &CliffordElement, v: &CliffordElement) -> CliffordElement {
        let mut out = CliffordElement::zero();
        let mut words: BTreeMap<(u32, u32), CliffordElement> = BTreeMap::new();
        for ((m1, e1), a1) in &u.terms {
            for ((m2, e2), a2) in &v.terms {
                let w = words.entry((*m1, *m2)).or_insert_with(|| self.word_product(*m1, *m2));
                let a = self.coeff_mul(a1, a2);
                if a.is_zero() {
                    continue;
                }
                for ((m, e), b) in &w.terms {
                    let sexp: Vec<u32> = e.iter().zip(e1).zip(e2).map(|((x, y), z)| x + y + z).collect();
                    out.add_term((*m, sexp), self.coeff_mul(&a, b));
                }
            }
        }
        out
    }

    /// The graded derivation `∂` of degree one.
    pub fn differential(&self, u: &CliffordElement) -> CliffordElement {
        let mut out = CliffordElement::zero();
        for ((mask, e), a) in &u.terms {
            let mut sign_neg = false;
            for i in 0..self.n {
                if mask & (1 << i) == 0 {
                    continue;
                }
                let rest = mask & !(1 << i);
                for (j, d) in self.diff[i].iter().enumerate() {
                    if d.is_zero() {
                        continue;
                    }
                    let mut e2 = e.clone();
                    e2[j] += 1;
                    let v = self.coeff_mul(a, d);
                    out.add_term((rest, e2), if sign_neg { v.neg() } else { v });
                }
                sign_neg = !sign_neg;
            }
        }
        out
    }

    /// Text form with `t1..tn`, `s1..sc` and the presentation's variable names.
    pub fn display(&self, u: &CliffordElement) -> String {
        if u.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for ((mask, e), a) in u.terms.iter().rev() {
            let mut gens: Vec<String> = Vec::new();
            for i in (0..self.n).filter(|i| mask & (1 << i) != 0) {
                gens.push(format!("t{}", i + 1));
            }
            for (j, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => gens.push(format!("s{}", j + 1)),
                    _ => gens.push(format!("s{}^{}", j + 1, k)),
                }
            }
            let coeff = self.base.display(a);
            let text = if gens.is_empty() {
                coeff
            } else if coeff == "1" {
                gens.join("*")
            } else if coeff == "-1" {
                format!("-{}", gens.join("*"))
            } else if a.num_terms() == 1 {
                format!("{}*{}", coeff, gens.join("*"))
            } else {
                format!("({})*{}", coeff, gens.join("*"))
            };
            parts.push(text);
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            match p.strip_prefix('-') {
                Some(rest) => {
                    out.push_str(" - ");
                    out.push_str(rest);
                }
                None => {
                    out.push_str(" + ");
                    out.push_str(p);
                }
            }
        }
        out
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::coeff::CoeffRing;
    use proptest::prelude::*;

    pub(crate) fn model(ring: &str, vars: &[&str], rels: &[&str]) -> CliffordModel {
        let p = Presentation::parse(ring.parse().unwrap(), vars, rels, false).unwrap();
        CliffordModel::from_presentation(&p).unwrap()
    }

    fn el(m: &CliffordModel, s: &str) -> Poly {
        m.base().normal_form(&m.base().parse_element(s).unwrap()).unwrap()
    }

    #[test]
    fn squares_and_anticommutators() {
        let m = model("GF(2)", &["x"], &["x^2"]);
        assert_eq!(m.mul(&m.t(0), &m.t(0)), m.s(0));
        let m = model("Q", &["x", "y"], &["x*y - 3"]);
        let ac = m.mul(&m.t(0), &m.t(1)).add(&m.mul(&m.t(1), &m.t(0)));
        assert_eq!(ac, m.s(0));
        let m = model("Q", &["x", "y"], &["x^2 + y^2 - 1"]);
        assert_eq!(m.mul(&m.t(0), &m.t(1)), m.mul(&m.t(1), &m.t(0)).neg());
    }

    #[test]
    fn differential_examples() {
        let m = model("Z", &["x"], &["x^2 - 1"]);
        let expected = m.scale(&m.s(0), &el(&m, "2*x"));
        assert_eq!(m.differential(&m.t(0)), expected);
        let s3 = m.mul(&m.s(0), &m.mul(&m.s(0), &m.s(0)));
        assert!(m.differential(&s3).is_zero());
        let m = model("Q", &["x", "y"], &["x^2 - 1", "y^2 - 1"]);
        let t12 = m.mul(&m.t(0), &m.t(1));
        let d = m.differential(&t12);
        let expected = m
            .scale(&m.mul(&m.s(0), &m.t(1)), &el(&m, "2*x"))
            .sub(&m.scale(&m.mul(&m.t(0), &m.s(1)), &el(&m, "2*y")));
        assert_eq!(d, expected);
        assert!(m.differential(&d).is_zero());
    }

    #[test]
    fn display_is_readable() {
        let m = model("Z", &["x"], &["x^2 - 1"]);
        let u = m.differential(&m.t(0)).add(&m.t(0));
        assert_eq!(m.display(&u), "t1 + 2*x*s1");
        assert_eq!(m.display(&CliffordElement::zero()), "0");
    }

    /// Random homogeneous elements of the given degree.
    pub(crate) fn random_element(m: &CliffordModel, degree: usize, seed: &[(u8, u8, i8)]) -> CliffordElement {
        let (n, c) = (m.num_t(), m.num_s());
        let nv = m.base().nvars();
        let ring = m.base().ring().clone();
        let mut out = CliffordElement::zero();
        for &(pick, mono, coef) in seed {
            let masks: Vec<u32> = (0..1u32 << n)
                .filter(|mk| (mk.count_ones() as usize) <= degree && (degree - mk.count_ones() as usize) % 2 == 0)
                .collect();
            if masks.is_empty() || c == 0 && masks.iter().all(|mk| mk.count_ones() as usize != degree) {
                continue;
            }
            let mask = masks[pick as usize % masks.len()];
            let weight = (degree - mask.count_ones() as usize) / 2;
            if c == 0 && weight > 0 {
                continue;
            }
            let mut e = vec![0u32; c];
            for k in 0..weight {
                e[(pick as usize + k) % c] += 1;
            }
            let mut a = Poly::constant(&ring, nv, ring.from_i64(coef as i64));
            for v in 0..nv {
                a = a.mul(&Poly::var(&ring, nv, v).pow(((mono >> (2 * v)) & 3) as u32));
            }
            out = out.add(&m.monomial(mask, e, &a));
        }
        out
    }

    fn models() -> Vec<CliffordModel> {
        vec![
            model("Z", &["x", "y"], &["x^2 - 4*x*y + y^2 - 1"]),
            model("GF(2)", &["x", "y"], &["x^2 + y", "y^2"]),
            model("GF(3)", &["x", "y", "z"], &["x^3 - y*z", "y^2 - x", "z^2"]),
            model("Z/4", &["x", "y"], &["x^2 - 1", "y^2 - 1"]),
            model("Q", &["x", "y"], &["x*y - 1", "x^2 + y^2"]),
        ]
    }

    fn seed() -> impl Strategy<Value = Vec<(u8, u8, i8)>> {
        proptest::collection::vec((any::<u8>(), any::<u8>(), -3i8..4), 1..4)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(120))]

        #[test]
        fn differential_squares_to_zero(which in 0usize..5, deg in 0usize..7, s in seed()) {
            let m = &models()[which];
            let u = random_element(m, deg, &s);
            prop_assert!(m.differential(&m.differential(&u)).is_zero());
        }

        #[test]
        fn graded_leibniz(which in 0usize..5, du in 0usize..4, dv in 0usize..4, s1 in seed(), s2 in seed()) {
            let m = &models()[which];
            let (u, v) = (random_element(m, du, &s1), random_element(m, dv, &s2));
            let lhs = m.differential(&m.mul(&u, &v));
            let a = m.mul(&m.differential(&u), &v);
            let b = m.mul(&u, &m.differential(&v));
            let rhs = if du % 2 == 0 { a.add(&b) } else { a.sub(&b) };
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn associativity(which in 0usize..5, d in (0usize..4, 0usize..4, 0usize..4),
                         s1 in seed(), s2 in seed(), s3 in seed()) {
            let m = &models()[which];
            let (u, v, w) = (random_element(m, d.0, &s1), random_element(m, d.1, &s2), random_element(m, d.2, &s3));
            prop_assert_eq!(m.mul(&m.mul(&u, &v), &w), m.mul(&u, &m.mul(&v, &w)));
        }

        #[test]
        fn s_is_central(which in 0usize..5, deg in 0usize..5, s in seed()) {
            let m = &models()[which];
            let u = random_element(m, deg, &s);
            for j in 0..m.num_s() {
                prop_assert_eq!(m.mul(&m.s(j), &u), m.mul(&u, &m.s(j)));
            }
        }
    }

    #[test]
    fn ring_of_model_matches_presentation() {
        let m = model("Z/4", &["x"], &["x^4 - 1"]);
        assert_eq!(m.base().ring(), &CoeffRing::IntegersModN(4));
        // t^2 = binom(4,2) x^2 s = 6 x^2 s = 2 x^2 s over Z/4
        assert_eq!(m.mul(&m.t(0), &m.t(0)), m.scale(&m.s(0), &el(&m, "2*x^2")));
    }
}
