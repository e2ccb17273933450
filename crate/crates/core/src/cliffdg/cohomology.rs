//! Degree-wise cohomology of a Clifford model with a finite free base algebra.

use serde::Serialize;

use super::{CliffordElement, CliffordModel, TermKey};
use crate::algebra::{KBasis, Presentation, Regularity};
use crate::coeff::{cohomology_at, Matrix, ModuleInvariants};
use crate::error::Result;
use crate::poly::Monomial;

pub const DEFAULT_MAX_DEGREE: usize = 8;

/// Per-degree module invariants plus the hypotheses that were assumed rather than checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedModule {
    pub degrees: Vec<ModuleInvariants>,
    pub assumptions: Vec<String>,
}

impl GradedModule {
    /// Dimensions over a field; `None` if some degree has torsion.
    pub fn dimensions(&self) -> Option<Vec<usize>> {
        self.degrees.iter().map(ModuleInvariants::dimension).collect()
    }

    pub fn free_ranks(&self) -> Vec<usize> {
        self.degrees.iter().map(|m| m.free_rank).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HodgeEntry {
    /// Total degree `p = i + 2j`.
    pub p: usize,
    /// Number of `t`'s.
    pub i: usize,
    /// Number of `s`'s.
    pub j: usize,
    pub module: ModuleInvariants,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HodgeTable {
    pub entries: Vec<HodgeEntry>,
}

impl HodgeTable {
    pub fn get(&self, i: usize, j: usize) -> Option<&ModuleInvariants> {
        self.entries.iter().find(|e| e.i == i && e.j == j).map(|e| &e.module)
    }

    /// Direct sum of the entries in total degree `p`.
    pub fn total(&self, p: usize) -> ModuleInvariants {
        self.entries
            .iter()
            .filter(|e| e.p == p)
            .fold(ModuleInvariants::default(), |acc, e| acc.direct_sum(&e.module))
    }
}

/// Basis key of a cochain: `t`-mask, `s`-exponent, index into the base's K-basis.
type CochainKey = (u32, Vec<u32>, usize);

fn s_exponents(c: usize, total: usize) -> Vec<Vec<u32>> {
    if c == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in s_exponents(c - 1, total - first) {
            rest.insert(0, first as u32);
            out.push(rest);
        }
    }
    out
}

/// Degree-`p` part of the model; restricted to weight `|mask| + |e| = w` when given.
fn cochain_basis(model: &CliffordModel, kb: &KBasis, p: usize, weight: Option<usize>) -> Vec<CochainKey> {
    let mut out = Vec::new();
    for mask in 0..(1u32 << model.num_t()) {
        let k = mask.count_ones() as usize;
        if k > p || (p - k) % 2 == 1 {
            continue;
        }
        let e_total = (p - k) / 2;
        if weight.is_some_and(|w| k + e_total != w) {
            continue;
        }
        for e in s_exponents(model.num_s(), e_total) {
            for b in 0..kb.len() {
                out.push((mask, e.clone(), b));
            }
        }
    }
    out
}

struct Complex<'a> {
    model: &'a CliffordModel,
    kb: KBasis,
}

impl Complex<'_> {
    /// Matrix of `∂` from the span of `src` to the span of `dst`.
    fn matrix(&self, src: &[CochainKey], dst: &[CochainKey]) -> Matrix {
        let ring = self.model.base().ring();
        let index: std::collections::HashMap<(&u32, &Vec<u32>, usize), usize> =
            dst.iter().enumerate().map(|(r, (m, e, b))| ((m, e, *b), r)).collect();
        let mut mat = Matrix::zeros(ring, dst.len(), src.len());
        for (col, (mask, e, b)) in src.iter().enumerate() {
            let a = self.kb.element(ring, *b);
            let image = self.model.differential(&self.model.monomial(*mask, e.clone(), &a));
            for ((m2, e2), coeff) in image.terms() {
                for (mono, v) in coeff.terms() {
                    let row = index[&(m2, e2, self.position(mono))];
                    mat.set(row, col, v.clone());
                }
            }
        }
        mat
    }

    fn position(&self, m: &Monomial) -> usize {
        self.kb.position(m).expect("normal form outside the basis")
    }

    fn cohomology(&self, p: usize, weight: Option<usize>) -> Result<ModuleInvariants> {
        let here = cochain_basis(self.model, &self.kb, p, weight);
        let below = if p == 0 { Vec::new() } else { cochain_basis(self.model, &self.kb, p - 1, weight) };
        let above = cochain_basis(self.model, &self.kb, p + 1, weight);
        cohomology_at(&self.matrix(&below, &here), &self.matrix(&here, &above))
    }
}

impl CliffordModel {
    fn complex(&self) -> Result<Complex<'_>> {
        Ok(Complex { model: self, kb: self.base.k_basis()? })
    }

    /// `H^p` of the model for `p = 0..=max_degree`.
    pub fn cohomology(&self, max_degree: usize) -> Result<Vec<ModuleInvariants>> {
        let cx = self.complex()?;
        (0..=max_degree).map(|p| cx.cohomology(p, None)).collect()
    }

    /// Cohomology split by weight `|t| + |s|`, which the differential preserves.
    pub fn hodge_table(&self, max_degree: usize) -> Result<HodgeTable> {
        let cx = self.complex()?;
        let mut entries = Vec::new();
        for p in 0..=max_degree {
            for w in p.div_ceil(2)..=p {
                let i = 2 * w - p;
                if i > self.num_t() {
                    continue;
                }
                let module = cx.cohomology(p, Some(w))?;
                entries.push(HodgeEntry { p, i, j: p - w, module });
            }
        }
        Ok(HodgeTable { entries })
    }

    /// Cocycle test.
    pub fn is_cocycle(&self, u: &CliffordElement) -> bool {
        self.differential(u).is_zero()
    }

    /// Coordinates of a homogeneous element in the cochain basis of degree `p`.
    pub fn coordinates(&self, u: &CliffordElement, p: usize) -> Result<Vec<crate::coeff::Scalar>> {
        let cx = self.complex()?;
        let basis = cochain_basis(self, &cx.kb, p, None);
        let mut v = vec![crate::coeff::Scalar::from_integer(0.into()); basis.len()];
        for ((m, e), a) in u.terms() {
            for (mono, c) in a.terms() {
                let b = cx.position(mono);
                let k = basis
                    .iter()
                    .position(|(bm, be, bb)| bm == m && be == e && *bb == b)
                    .expect("element not homogeneous of the requested degree");
                v[k] = c.clone();
            }
        }
        Ok(v)
    }

    /// Matrix of `∂` from degree `p` to `p + 1`.
    pub fn differential_matrix(&self, p: usize) -> Result<Matrix> {
        let cx = self.complex()?;
        let here = cochain_basis(self, &cx.kb, p, None);
        let above = cochain_basis(self, &cx.kb, p + 1, None);
        Ok(cx.matrix(&here, &above))
    }

    /// Basis keys of degree `p`, for interpreting [`Self::coordinates`].
    pub fn cochain_keys(&self, p: usize) -> Result<Vec<(TermKey, Monomial)>> {
        let cx = self.complex()?;
        Ok(cochain_basis(self, &cx.kb, p, None)
            .into_iter()
            .map(|(m, e, b)| ((m, e), cx.kb.monomials()[b].clone()))
            .collect())
    }
}

fn assumptions(pres: &Presentation) -> Result<Vec<String>> {
    Ok(match pres.regularity()? {
        Regularity::Verified => Vec::new(),
        Regularity::Assumed => vec!["relations assumed to form a regular sequence".to_string()],
    })
}

/// Hochschild cohomology of `A` in degrees `0..=max_degree`.
pub fn hh(pres: &Presentation, max_degree: usize) -> Result<GradedModule> {
    pres.k_basis()?;
    let assumptions = assumptions(pres)?;
    let model = CliffordModel::from_presentation(pres)?;
    Ok(GradedModule { degrees: model.cohomology(max_degree)?, assumptions })
}

/// The Hodge table of `A` in degrees `0..=max_degree`.
pub fn hodge(pres: &Presentation, max_degree: usize) -> Result<HodgeTable> {
    pres.k_basis()?;
    assumptions(pres)?;
    CliffordModel::from_presentation(pres)?.hodge_table(max_degree)
}
