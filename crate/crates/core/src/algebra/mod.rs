//! Presentations `A = K[x_1..x_n]/(f_1..f_c)`, normal forms, finite bases and
//! the admissibility checks (regular sequences, one-variable homological CI test).

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::coeff::{CoeffRing, Scalar};
use crate::error::{Error, Result};
use crate::poly::{content_ideal, parse_poly, Monomial, Poly};

mod groebner;

pub use groebner::{groebner_basis, reduce, MonomialOrder};

/// How normal forms are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NormalFormStrategy {
    /// Reduced Gröbner basis under grevlex; fields only.
    GroebnerOverField,
    /// Relations with unit leading coefficient on pure powers of distinct variables.
    Triangular,
    /// One relation in one variable; normal forms need a unit leading coefficient.
    Univariate,
}

/// The JSON input format for presentations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationSpec {
    pub ring: String,
    pub vars: Vec<String>,
    pub relations: Vec<String>,
    #[serde(default)]
    pub assume_regular: bool,
}

#[derive(Clone, Debug)]
pub struct Presentation {
    ring: CoeffRing,
    vars: Vec<String>,
    relations: Vec<Poly>,
    strategy: NormalFormStrategy,
    assume_regular: bool,
    /// Gröbner basis over fields, the relations themselves otherwise.
    reducers: Vec<Poly>,
}

/// Whether the regular-sequence hypothesis was checked or taken on trust.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Regularity {
    Verified,
    Assumed,
}

/// Outcome of the one-variable homological complete intersection test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HciStatus {
    Hci,
    NotHci { reason: String },
    ZeroDivisor { reason: String },
}

impl HciStatus {
    pub fn label(&self) -> &'static str {
        match self {
            HciStatus::Hci => "HCI",
            HciStatus::NotHci { .. } => "NotHCI",
            HciStatus::ZeroDivisor { .. } => "ZeroDivisor",
        }
    }

    pub fn reason(&self) -> Option<&str> {
        match self {
            HciStatus::Hci => None,
            HciStatus::NotHci { reason } | HciStatus::ZeroDivisor { reason } => Some(reason),
        }
    }
}

/// Standard monomials forming a basis of a finite free algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KBasis {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl KBasis {
    fn new(monomials: Vec<Monomial>) -> Self {
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        KBasis { monomials, index }
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of a polynomial already in normal form.
    pub fn coordinates(&self, f: &Poly) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.len()];
        for (m, c) in f.terms() {
            let i = self.position(m).expect("polynomial not in normal form");
            v[i] = c.clone();
        }
        v
    }

    /// The basis element `i` as a polynomial.
    pub fn element(&self, ring: &CoeffRing, i: usize) -> Poly {
        Poly::term(ring, self.monomials[i].clone(), ring.one())
    }
}

impl Presentation {
    /// Builds a presentation, choosing the normal-form strategy automatically.
    pub fn new(ring: CoeffRing, vars: Vec<String>, relations: Vec<Poly>, assume_regular: bool) -> Result<Self> {
        if vars.is_empty() {
            return Err(Error::InvalidInput("at least one variable is required".into()));
        }
        if relations.is_empty() {
            return Err(Error::InvalidInput("at least one relation is required".into()));
        }
        let distinct: BTreeSet<&String> = vars.iter().collect();
        if distinct.len() != vars.len() {
            return Err(Error::InvalidInput("variable names must be distinct".into()));
        }
        for (j, f) in relations.iter().enumerate() {
            if f.is_zero() {
                return Err(Error::InvalidInput(format!("relation {} is zero", j + 1)));
            }
            if f.nvars() != vars.len() || f.ring() != &ring {
                return Err(Error::InvalidInput(format!("relation {} has the wrong shape", j + 1)));
            }
        }
        let strategy = if ring.is_field() {
            NormalFormStrategy::GroebnerOverField
        } else if is_triangular(&relations) {
            NormalFormStrategy::Triangular
        } else if vars.len() == 1 && relations.len() == 1 {
            NormalFormStrategy::Univariate
        } else {
            return Err(Error::Strategy(format!(
                "over {ring} the relations need unit leading coefficients on pure powers of distinct variables"
            )));
        };
        Self::assemble(ring, vars, relations, strategy, assume_regular)
    }

    /// The base ring itself, as the quotient of the polynomial ring in no variables.
    pub fn base(ring: CoeffRing) -> Self {
        Presentation {
            ring,
            vars: Vec::new(),
            relations: Vec::new(),
            strategy: NormalFormStrategy::Triangular,
            assume_regular: false,
            reducers: Vec::new(),
        }
    }

    fn assemble(
        ring: CoeffRing,
        vars: Vec<String>,
        relations: Vec<Poly>,
        strategy: NormalFormStrategy,
        assume_regular: bool,
    ) -> Result<Self> {
        let reducers = match strategy {
            NormalFormStrategy::GroebnerOverField => groebner_basis(&relations, MonomialOrder::Grevlex)?,
            _ => relations.clone(),
        };
        Ok(Presentation { ring, vars, relations, strategy, assume_regular, reducers })
    }

    /// Parses relation strings over the given ring.
    pub fn parse(ring: CoeffRing, vars: &[&str], relations: &[&str], assume_regular: bool) -> Result<Self> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let rels = relations
            .iter()
            .map(|r| parse_poly(r, &vars, &ring))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, vars, rels, assume_regular)
    }

    pub fn from_spec(spec: &PresentationSpec) -> Result<Self> {
        let ring: CoeffRing = spec.ring.parse()?;
        let vars: Vec<&str> = spec.vars.iter().map(String::as_str).collect();
        let rels: Vec<&str> = spec.relations.iter().map(String::as_str).collect();
        Self::parse(ring, &vars, &rels, spec.assume_regular)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: PresentationSpec =
            serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("presentation JSON: {e}")))?;
        Self::from_spec(&spec)
    }

    pub fn to_spec(&self) -> PresentationSpec {
        PresentationSpec {
            ring: self.ring.to_string(),
            vars: self.vars.clone(),
            relations: self.relations.iter().map(|f| self.display(f)).collect(),
            assume_regular: self.assume_regular,
        }
    }

    /// The same relations read in another coefficient ring (e.g. reduction mod p).
    pub fn change_ring(&self, ring: CoeffRing) -> Result<Self> {
        let rels: Vec<Poly> = self.relations.iter().map(|f| f.change_ring(&ring)).filter(|f| !f.is_zero()).collect();
        if rels.is_empty() {
            return Err(Error::InvalidInput(format!("every relation vanishes over {ring}")));
        }
        Self::new(ring, self.vars.clone(), rels, self.assume_regular)
    }

    pub fn ring(&self) -> &CoeffRing {
        &self.ring
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    pub fn ncodim(&self) -> usize {
        self.relations.len()
    }

    pub fn strategy(&self) -> NormalFormStrategy {
        self.strategy
    }

    pub fn assume_regular(&self) -> bool {
        self.assume_regular
    }

    pub fn display(&self, f: &Poly) -> String {
        f.display_with(&self.vars)
    }

    pub fn parse_element(&self, text: &str) -> Result<Poly> {
        parse_poly(text, &self.vars, &self.ring)
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(&self.ring, self.nvars())
    }

    pub fn one(&self) -> Result<Poly> {
        self.normal_form(&Poly::one(&self.ring, self.nvars()))
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::var(&self.ring, self.nvars(), i)
    }

    /// The reducer set: the reduced Gröbner basis over fields, the relations otherwise.
    pub fn groebner_basis(&self) -> Result<Vec<Poly>> {
        match self.strategy {
            NormalFormStrategy::GroebnerOverField => Ok(self.reducers.clone()),
            _ => Err(Error::Domain(format!("Gröbner bases need a field, not {}", self.ring))),
        }
    }

    fn require_reducible(&self) -> Result<()> {
        if self.strategy == NormalFormStrategy::Univariate {
            let (_, lc) = self.relations[0].leading().expect("nonzero relation");
            if !self.ring.is_unit(lc) {
                return Err(Error::Strategy(format!(
                    "leading coefficient {} of {} is not a unit in {}",
                    self.ring.fmt_scalar(lc),
                    self.display(&self.relations[0]),
                    self.ring
                )));
            }
        }
        Ok(())
    }

    pub fn normal_form(&self, g: &Poly) -> Result<Poly> {
        self.require_reducible()?;
        Ok(reduce(g, &self.reducers, MonomialOrder::Grevlex))
    }

    /// `nf(a * b)`.
    pub fn mul(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        self.normal_form(&a.mul(b))
    }

    /// Standard monomials, in increasing grevlex order.
    pub fn k_basis(&self) -> Result<KBasis> {
        self.require_reducible()?;
        let n = self.nvars();
        let leads: Vec<Monomial> = self.reducers.iter().map(|g| g.leading().unwrap().0.clone()).collect();
        if leads.iter().any(|m| m.degree() == 0) {
            return Ok(KBasis::new(Vec::new()));
        }
        let mut bounds = vec![None; n];
        for m in &leads {
            let support: Vec<usize> = (0..n).filter(|&i| m.0[i] > 0).collect();
            if let [i] = support[..] {
                bounds[i] = Some(bounds[i].map_or(m.0[i], |b: u32| b.min(m.0[i])));
            }
        }
        if let Some(i) = bounds.iter().position(Option::is_none) {
            return Err(Error::InfiniteBasis(format!(
                "every power of {} is a standard monomial",
                self.vars[i]
            )));
        }
        let bounds: Vec<u32> = bounds.into_iter().map(Option::unwrap).collect();
        let mut out = Vec::new();
        let mut e = vec![0u32; n];
        loop {
            let m = Monomial(e.clone());
            if !leads.iter().any(|l| l.divides(&m)) {
                out.push(m);
            }
            let mut k = 0;
            loop {
                if k == n {
                    out.sort();
                    return Ok(KBasis::new(out));
                }
                e[k] += 1;
                if e[k] < bounds[k] {
                    break;
                }
                e[k] = 0;
                k += 1;
            }
        }
    }

    /// Whether `f_1, ..., f_c` is a regular sequence in the polynomial ring.
    pub fn is_regular_sequence(&self) -> Result<bool> {
        if self.strategy == NormalFormStrategy::Triangular && units_on_pure_powers(&self.relations) {
            return Ok(true);
        }
        if self.strategy != NormalFormStrategy::GroebnerOverField {
            return Err(Error::Strategy(format!(
                "regular-sequence test over {} is only available for triangular relations",
                self.ring
            )));
        }
        let mut prefix: Vec<Poly> = Vec::new();
        for f in &self.relations {
            let gb = groebner_basis(&prefix, MonomialOrder::Grevlex)?;
            for q in ideal_quotient(&prefix, f)? {
                if !reduce(&q, &gb, MonomialOrder::Grevlex).is_zero() {
                    return Ok(false);
                }
            }
            prefix.push(f.clone());
        }
        // the quotient must be nonzero
        Ok(!self.reducers.iter().any(|g| g.degree() == crate::poly::Degree::Finite(0)))
    }

    /// Checks regularity, falling back on the caller's assumption where no test exists.
    pub fn regularity(&self) -> Result<Regularity> {
        match self.is_regular_sequence() {
            Ok(true) => Ok(Regularity::Verified),
            Ok(false) => Err(Error::NotRegular(format!(
                "({}) is not a regular sequence",
                self.relations.iter().map(|f| self.display(f)).collect::<Vec<_>>().join(", ")
            ))),
            Err(Error::Strategy(_)) if self.assume_regular => Ok(Regularity::Assumed),
            Err(e) => Err(e),
        }
    }

    /// Content-ideal test for `K[x]/(f)` being a homological complete intersection.
    pub fn hci_check_univariate(&self) -> Result<HciStatus> {
        if self.nvars() != 1 || self.ncodim() != 1 {
            return Err(Error::InvalidInput("the content test needs one variable and one relation".into()));
        }
        let coeffs = content_ideal(&self.relations[0])?;
        Ok(match &self.ring {
            CoeffRing::Rationals | CoeffRing::PrimeField(_) => {
                if coeffs.is_empty() {
                    HciStatus::ZeroDivisor { reason: "f = 0".into() }
                } else {
                    HciStatus::Hci
                }
            }
            CoeffRing::Integers => {
                let g = coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(&c.to_integer()));
                if g.is_zero() {
                    HciStatus::ZeroDivisor { reason: "content ideal is zero".into() }
                } else if g.abs() == BigInt::from(1) {
                    HciStatus::Hci
                } else {
                    HciStatus::NotHci { reason: "content grade 1".into() }
                }
            }
            CoeffRing::IntegersModN(n) => {
                let residues: Vec<Vec<u64>> = vec![coeffs.iter().map(|c| self.ring.residue(c)).collect()];
                // ann(c) = kernel of a |-> (a c_0, ..., a c_d) on Z/n
                let column: Vec<Vec<u64>> = (0..residues[0].len()).map(|i| vec![residues[0][i]]).collect();
                let ann = crate::coeff::howell::kernel_rows(&column, column.len(), 1, *n);
                if ann.is_empty() {
                    // Z/n is self-injective, so Ext^1(K/c, K) vanishes and the pair is exact
                    HciStatus::Hci
                } else {
                    let gens: Vec<String> = ann.iter().map(|r| r[0].to_string()).collect();
                    HciStatus::ZeroDivisor { reason: format!("annihilator of the content ideal is ({})", gens.join(", ")) }
                }
            }
        })
    }
}

fn units_on_pure_powers(relations: &[Poly]) -> bool {
    let mut used = BTreeSet::new();
    relations.iter().all(|f| {
        let (m, c) = f.leading().expect("nonzero relation");
        let support: Vec<usize> = (0..m.nvars()).filter(|&i| m.0[i] > 0).collect();
        support.len() == 1 && f.ring().is_unit(c) && used.insert(support[0])
    })
}

fn is_triangular(relations: &[Poly]) -> bool {
    units_on_pure_powers(relations)
}

/// Generators of `(J : f)` over a field, by eliminating an auxiliary variable
/// from `w J + (1 - w) f`.
pub fn ideal_quotient(j: &[Poly], f: &Poly) -> Result<Vec<Poly>> {
    let ring = f.ring().clone();
    let n = f.nvars();
    if j.is_empty() {
        return Ok(Vec::new());
    }
    let lift = |g: &Poly| {
        Poly::from_terms(&ring, n + 1, g.terms().map(|(m, c)| {
            let mut e = m.0.clone();
            e.push(0);
            (Monomial(e), c.clone())
        }))
    };
    let w = Poly::var(&ring, n + 1, n);
    let one_minus_w = Poly::one(&ring, n + 1).sub(&w);
    let mut gens: Vec<Poly> = j.iter().map(|g| w.mul(&lift(g))).collect();
    gens.push(one_minus_w.mul(&lift(f)));
    let gb = groebner_basis(&gens, MonomialOrder::EliminateLast)?;
    let mut out = Vec::new();
    for g in gb.iter().filter(|g| g.degree_in(n) == Some(0)) {
        let g = Poly::from_terms(&ring, n, g.terms().map(|(m, c)| (Monomial(m.0[..n].to_vec()), c.clone())));
        out.push(exact_quotient(&g, f)?);
    }
    Ok(out)
}

/// `g / f` for `f` dividing `g` (fields).
fn exact_quotient(g: &Poly, f: &Poly) -> Result<Poly> {
    let ring = f.ring();
    let (lm, lc) = f.leading().expect("nonzero divisor");
    let inv = ring.inv(lc).expect("field");
    let mut q = Poly::zero(ring, f.nvars());
    let mut r = g.clone();
    while let Some((m, c)) = r.leading() {
        if !lm.divides(m) {
            return Err(Error::Domain("division is not exact".into()));
        }
        let t = lm.quotient_of(m);
        let coef = ring.mul(c, &inv);
        r = r.sub(&f.mul_term(&t, &coef));
        q.add_term(t, &coef);
    }
    Ok(q)
}
