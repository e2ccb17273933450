//! Finite abelian groups: `H(G, K)` and `HH(KG/K)` as tensor products of
//! one-variable Clifford factors `K⟨τ, σ⟩` with `∂τ = nσ` and `τ² = mσ`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::algebra::Presentation;
use crate::cliffdg::{CliffordModel, GradedModule};
use crate::coeff::{smith_normal_form, CoeffRing, Matrix};
use crate::error::{Error, Result};
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianGroup {
    /// The orders as given.
    pub input: Vec<u64>,
    /// `n_1 | n_2 | ... | n_r`, each at least 2.
    pub invariant_factors: Vec<u64>,
}

impl AbelianGroup {
    /// `Z/o_1 × ... × Z/o_k`, normalized to invariant factors.
    pub fn new(orders: &[u64]) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::InvalidInput("group orders must be positive".into()));
        }
        if orders.iter().any(|&o| o > u32::MAX as u64) {
            return Err(Error::InvalidInput("group order too large".into()));
        }
        let rows: Vec<Vec<i64>> = (0..orders.len())
            .map(|i| (0..orders.len()).map(|j| if i == j { orders[i] as i64 } else { 0 }).collect())
            .collect();
        let snf = smith_normal_form(&Matrix::from_i64_rows(&CoeffRing::Integers, &rows))?;
        let invariant_factors = snf
            .invariant_factors()
            .iter()
            .filter(|d| **d > BigInt::from(1))
            .map(|d| d.to_u64().expect("fits"))
            .collect();
        Ok(AbelianGroup { input: orders.to_vec(), invariant_factors })
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn factors(&self) -> Vec<CliffordFactor> {
        self.invariant_factors.iter().map(|&n| CliffordFactor::new(n)).collect()
    }

    /// `K[x_1..x_r]/(x_j^{n_j} - 1)`, or `K` for the trivial group.
    pub fn group_algebra(&self, ring: &CoeffRing) -> Result<Presentation> {
        if self.invariant_factors.is_empty() {
            return Ok(Presentation::base(ring.clone()));
        }
        let r = self.invariant_factors.len();
        let vars = (1..=r).map(|j| format!("x{j}")).collect();
        let rels = self
            .invariant_factors
            .iter()
            .enumerate()
            .map(|(j, &n)| Poly::var(ring, r, j).pow(n as u32).sub(&Poly::one(ring, r)))
            .collect();
        Presentation::new(ring.clone(), vars, rels, false)
    }
}

/// One tensor factor: `∂τ = nσ`, `τ² = mσ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CliffordFactor {
    pub n: u64,
    pub m: u64,
}

impl CliffordFactor {
    pub fn new(n: u64) -> Self {
        CliffordFactor { n, m: if n % 2 == 0 { n / 2 } else { 0 } }
    }
}

/// The tensor product of the factors of `G` over the base `base`.
fn adapted_model(g: &AbelianGroup, base: Presentation) -> Result<CliffordModel> {
    let ring = base.ring().clone();
    let nv = base.nvars();
    let r = g.invariant_factors.len();
    let constant = |v: u64| Poly::constant(&ring, nv, ring.from_bigint(&BigInt::from(v)));
    let diag = |f: &dyn Fn(&CliffordFactor) -> u64| -> Vec<Vec<Poly>> {
        let fs = g.factors();
        (0..r).map(|i| (0..r).map(|j| constant(if i == j { f(&fs[i]) } else { 0 })).collect()).collect()
    };
    let diff = diag(&|c| c.n);
    let square = diag(&|c| c.m);
    let anti = vec![vec![vec![constant(0); r]; r]; r];
    CliffordModel::new(base, diff, square, anti)
}

/// Ordinary group cohomology `H^p(G, K)` for `p = 0..=max_degree`.
pub fn group_cohomology(g: &AbelianGroup, ring: &CoeffRing, max_degree: usize) -> Result<GradedModule> {
    let model = adapted_model(g, Presentation::base(ring.clone()))?;
    Ok(GradedModule { degrees: model.cohomology(max_degree)?, assumptions: Vec::new() })
}

/// `HH^p(KG/K)` for `p = 0..=max_degree`, as the cohomology of `KG ⊗ ⊗_j K⟨τ_j, σ_j⟩`.
pub fn group_hh(g: &AbelianGroup, ring: &CoeffRing, max_degree: usize) -> Result<GradedModule> {
    let model = adapted_model(g, g.group_algebra(ring)?)?;
    Ok(GradedModule { degrees: model.cohomology(max_degree)?, assumptions: Vec::new() })
}

/// The substitution `τ = x t`, `σ = x^n s` relating the general model of
/// `Z[x]/(x^n - 1)` to the adapted factor, checked in the engine.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChangeOfBasis {
    pub n: u64,
    pub m: u64,
    /// `τ² = binom(n, 2) σ` in the general model.
    pub binomial: u64,
    /// `τ² - mσ = ∂(kτ)`.
    pub k: u64,
    pub description: String,
}

pub fn clifford_change_of_basis(n: u64) -> Result<ChangeOfBasis> {
    if n < 2 {
        return Err(Error::InvalidInput("cyclic factors need order at least 2".into()));
    }
    let z = CoeffRing::Integers;
    let g = AbelianGroup::new(&[n])?;
    let pres = g.group_algebra(&z)?;
    let model = CliffordModel::from_presentation(&pres)?;
    let x = pres.var(0);
    let tau = model.scale(&model.t(0), &x);
    let sigma = model.scale(&model.s(0), &x.pow(n as u32));
    let CliffordFactor { m, .. } = CliffordFactor::new(n);
    let binomial = n * (n - 1) / 2;
    let k = (binomial - m) / n;
    let int = |v: u64| Poly::constant(&z, 1, z.from_bigint(&BigInt::from(v)));
    let ok_d = model.differential(&tau) == model.scale(&sigma, &int(n));
    let square = model.mul(&tau, &tau);
    let ok_sq = square == model.scale(&sigma, &int(binomial));
    let shift = model.differential(&model.scale(&tau, &int(k)));
    let ok_eta = square.sub(&model.scale(&sigma, &int(m))) == shift;
    if !(ok_d && ok_sq && ok_eta) {
        return Err(Error::Complex(format!("change of basis fails for n = {n}")));
    }
    let description = format!(
        "tau = x*t, sigma = x^{n}*s: d(tau) = {n}*sigma, tau^2 = {binomial}*sigma = {m}*sigma + d({k}*tau)"
    );
    Ok(ChangeOfBasis { n, m, binomial, k, description })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cliffdg::hh;
    use crate::coeff::ModuleInvariants;

    fn tors(free_rank: usize, t: &[i64]) -> ModuleInvariants {
        ModuleInvariants { free_rank, torsion: t.iter().map(|&v| BigInt::from(v)).collect() }
    }

    #[test]
    fn normalization() {
        assert_eq!(AbelianGroup::new(&[4, 2]).unwrap().invariant_factors, vec![2, 4]);
        assert_eq!(AbelianGroup::new(&[2, 3]).unwrap().invariant_factors, vec![6]);
        assert_eq!(AbelianGroup::new(&[1, 6, 10]).unwrap().invariant_factors, vec![2, 30]);
        assert!(AbelianGroup::new(&[1]).unwrap().invariant_factors.is_empty());
        assert!(AbelianGroup::new(&[0]).is_err());
    }

    #[test]
    fn factors() {
        assert_eq!(CliffordFactor::new(2).m, 1);
        assert_eq!(CliffordFactor::new(3).m, 0);
        assert_eq!(CliffordFactor::new(4).m, 2);
    }

    #[test]
    fn cyclic_group_cohomology() {
        let c2 = AbelianGroup::new(&[2]).unwrap();
        let gf2 = group_cohomology(&c2, &CoeffRing::PrimeField(2), 5).unwrap();
        assert_eq!(gf2.dimensions().unwrap(), vec![1; 6]);
        let z = group_cohomology(&c2, &CoeffRing::Integers, 4).unwrap();
        assert_eq!(z.degrees, vec![tors(1, &[]), tors(0, &[]), tors(0, &[2]), tors(0, &[]), tors(0, &[2])]);
        let c3 = AbelianGroup::new(&[3]).unwrap();
        let gf3 = group_cohomology(&c3, &CoeffRing::PrimeField(3), 4).unwrap();
        assert_eq!(gf3.dimensions().unwrap(), vec![1; 5]);
        let trivial = AbelianGroup::new(&[]).unwrap();
        let k = group_cohomology(&trivial, &CoeffRing::PrimeField(2), 3).unwrap();
        assert_eq!(k.dimensions().unwrap(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn group_algebra_cohomology() {
        let c2 = AbelianGroup::new(&[2]).unwrap();
        let gf2 = group_hh(&c2, &CoeffRing::PrimeField(2), 4).unwrap();
        assert_eq!(gf2.dimensions().unwrap(), vec![2; 5]);
        let z = group_hh(&c2, &CoeffRing::Integers, 4).unwrap();
        assert_eq!(z.degrees, vec![tors(2, &[]), tors(0, &[]), tors(0, &[2, 2]), tors(0, &[]), tors(0, &[2, 2])]);
        let g = AbelianGroup::new(&[2, 4]).unwrap();
        let hg = group_cohomology(&g, &CoeffRing::PrimeField(2), 3).unwrap().dimensions().unwrap();
        let hhg = group_hh(&g, &CoeffRing::PrimeField(2), 3).unwrap().dimensions().unwrap();
        assert_eq!(hhg, hg.iter().map(|d| 8 * d).collect::<Vec<_>>());
    }

    #[test]
    fn agrees_with_general_engine() {
        for orders in [vec![2], vec![3], vec![4], vec![2, 2]] {
            for ring in ["GF(2)", "GF(3)", "Z", "Z/4"] {
                let ring: CoeffRing = ring.parse().unwrap();
                let g = AbelianGroup::new(&orders).unwrap();
                let fast = group_hh(&g, &ring, 4).unwrap();
                let general = hh(&g.group_algebra(&ring).unwrap(), 4).unwrap();
                assert_eq!(fast.degrees, general.degrees, "{orders:?} over {ring}");
            }
        }
    }

    #[test]
    fn change_of_basis() {
        for (n, m, k) in [(2, 1, 0), (3, 0, 1), (4, 2, 1), (5, 0, 2), (6, 3, 2)] {
            let c = clifford_change_of_basis(n).unwrap();
            assert_eq!((c.m, c.k), (m, k));
        }
        assert!(clifford_change_of_basis(1).is_err());
    }
}
