//! Shannon and von Neumann entropies and the state entropy
//! `S(ω) = H(p) + Σᵢ pᵢ S_VN(ρᵢ)`.
//!
//! Entropies are in nats with `k_B = 1`.

use crate::algebra::BlockStructure;
use crate::decomp::{Component, Decomposition};
use crate::error::{Error, Result};
use crate::linalg::eigh;
use crate::scalar::{abs, Real};
use crate::states::{canonical_form, representative_density, DensityMatrix, StateFunctional};

/// `−Σ pᵢ log pᵢ` with `0 log 0 = 0`.
///
/// Entries in `[−tol, 0)` are clamped to zero and the vector renormalized;
/// anything further from a probability vector is rejected.
pub fn shannon<T: Real>(p: &[T]) -> Result<T> {
    shannon_with_tol(p, T::default_tol())
}

pub fn shannon_with_tol<T: Real>(p: &[T], tol: T) -> Result<T> {
    if p.is_empty() {
        return Err(Error::validation("empty probability vector"));
    }
    if let Some(k) = p.iter().position(|&x| x < -tol || !x.is_finite()) {
        return Err(Error::validation(format!(
            "entry {k} of the probability vector is {}",
            p[k].to_f64_lossy()
        )));
    }
    let clamped: Vec<T> = p.iter().map(|&x| if x < T::zero() { T::zero() } else { x }).collect();
    let total = clamped.iter().fold(T::zero(), |a, &x| a + x);
    if abs(total - T::one()) > tol {
        return Err(Error::validation(format!(
            "probability vector sums to {}",
            total.to_f64_lossy()
        )));
    }
    Ok(clamped.iter().fold(T::zero(), |acc, &x| {
        let q = x / total;
        if q > T::zero() {
            acc - q * q.ln()
        } else {
            acc
        }
    }))
}

/// Shannon entropy of the spectrum.
pub fn von_neumann<T: Real>(rho: &DensityMatrix<T>) -> Result<T> {
    let tol = crate::scalar::state_tol(rho.dim());
    shannon_with_tol(&rho.eigenvalues()?, tol)
}

/// Entropy breakdown of a state in a given representation.
#[derive(Clone, Debug, PartialEq)]
pub struct EntropyReport<T: Real> {
    /// `S(ω)`
    pub state_entropy: T,
    /// `H(p)`
    pub sector_entropy: T,
    /// `Σᵢ pᵢ S_VN(ρᵢ)`
    pub mean_block_entropy: T,
    /// `S_VN(ρ_ω)` of the representative in this representation.
    pub vn_of_representative: T,
    /// `Σᵢ pᵢ log mᵢ`
    pub multiplicity_term: T,
}

/// `S(ω)` from the canonical form of the representative in `alg`.
pub fn state_entropy<T: Real>(omega: &StateFunctional<T>, alg: &BlockStructure) -> Result<EntropyReport<T>> {
    let rho = representative_density(omega, alg)?;
    let cf = canonical_form(&rho, alg)?;
    let sector_entropy = shannon(&cf.p)?;
    let mut mean_block_entropy = T::zero();
    let mut multiplicity_term = T::zero();
    for ((&p, r), b) in cf.p.iter().zip(&cf.rhos).zip(alg.blocks()) {
        if let Some(r) = r {
            let block = DensityMatrix::new(r.clone(), crate::scalar::state_tol(b.dim))?;
            mean_block_entropy += p * von_neumann(&block)?;
            multiplicity_term += p * T::lit(b.multiplicity as f64).ln();
        }
    }
    Ok(EntropyReport {
        state_entropy: sector_entropy + mean_block_entropy,
        sector_entropy,
        mean_block_entropy,
        vn_of_representative: von_neumann(&rho)?,
        multiplicity_term,
    })
}

/// Decomposition with weights `pᵢ λⱼ⁽ⁱ⁾` on the eigenvectors of each `ρᵢ`.
///
/// For degenerate spectra any orthonormal eigenbasis is returned; weights at
/// or below the weight floor are dropped and the rest renormalized.
pub fn minimal_decomposition<T: Real>(omega: &StateFunctional<T>, alg: &BlockStructure) -> Result<Decomposition<T>> {
    let rho = representative_density(omega, alg)?;
    let cf = canonical_form(&rho, alg)?;
    let mut components = Vec::new();
    for (i, (&p, r)) in cf.p.iter().zip(&cf.rhos).enumerate() {
        let Some(r) = r else { continue };
        let (vals, vecs) = eigh(r)?;
        for (j, &lam) in vals.iter().enumerate() {
            let w = p * lam;
            if w > T::weight_floor() {
                components.push(Component {
                    weight: w,
                    block: i,
                    vector: vecs.column(j).into_owned(),
                });
            }
        }
    }
    Decomposition::renormalized(alg.clone(), components)
}
