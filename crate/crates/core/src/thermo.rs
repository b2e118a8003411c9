//! Definite values, Zeno sequences between pure states of one sector, and the
//! Einstein-gas entropy ledger.

use crate::algebra::{AlgebraElement, BlockStructure};
use crate::error::{Error, Result};
use crate::linalg::eigvalsh;
use crate::scalar::{abs, c, CVector, Real};
use crate::states::{canonical_form, is_pure, representative_density, StateFunctional};

/// Ensemble of `M` copies at temperature `T`, with an entropy `sᵢ` per copy
/// assigned to the pure states of each sector.
#[derive(Clone, Debug, PartialEq)]
pub struct GasAccount<T: Real> {
    copies: u64,
    temperature: T,
    sector_entropies: Vec<T>,
    boltzmann: T,
}

impl<T: Real> GasAccount<T> {
    pub fn new(copies: u64, temperature: T, sector_entropies: Vec<T>, boltzmann: T) -> Result<Self> {
        if copies == 0 {
            return Err(Error::validation("a gas needs at least one copy"));
        }
        if !(temperature > T::zero()) {
            return Err(Error::validation("temperature must be positive"));
        }
        if !(boltzmann > T::zero()) {
            return Err(Error::validation("Boltzmann constant must be positive"));
        }
        if sector_entropies.iter().any(|s| !s.is_finite()) {
            return Err(Error::validation("sector entropies must be finite"));
        }
        Ok(Self {
            copies,
            temperature,
            sector_entropies,
            boltzmann,
        })
    }

    /// `sᵢ = 0` for every block, `k_B = 1`.
    pub fn uniform(copies: u64, temperature: T, blocks: usize) -> Result<Self> {
        Self::new(copies, temperature, vec![T::zero(); blocks], T::one())
    }

    pub fn copies(&self) -> u64 {
        self.copies
    }

    pub fn temperature(&self) -> T {
        self.temperature
    }

    pub fn sector_entropies(&self) -> &[T] {
        &self.sector_entropies
    }

    pub fn boltzmann(&self) -> T {
        self.boltzmann
    }
}

/// `(ω((A − v)²) < tol, v)` with `v = Re ω(A)`.
pub fn has_definite_value<T: Real>(omega: &StateFunctional<T>, a: &AlgebraElement<T>, tol: T) -> Result<(bool, T)> {
    if !a.is_self_adjoint(tol) {
        return Err(Error::validation(format!(
            "observable is not self-adjoint (defect {:e})",
            a.self_adjoint_defect().to_f64_lossy()
        )));
    }
    let value = omega.evaluate(a)?.re;
    let shifted = a.shift(c(value));
    let variance = omega.evaluate(&shifted.product(&shifted)?)?.re;
    Ok((variance < tol, value))
}

/// Unit vector of the irreducible representation of one block.
#[derive(Clone, Debug, PartialEq)]
pub struct SectorVector<T: Real> {
    pub block: usize,
    pub vector: CVector<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ZenoPath<T: Real> {
    /// `ψ⁽⁰⁾ = φ, …, ψ⁽ᵏ⁾ = ψ`.
    pub vectors: Vec<CVector<T>>,
    /// `|⟨ψ⁽ᵛ⁻¹⁾|ψ⁽ᵛ⁾⟩|²` for `ν = 1 … k`.
    pub step_probabilities: Vec<T>,
    /// Product of the step probabilities.
    pub success_probability: T,
}

/// `ψ⁽ᵛ⁾ = cos(πν/2k) φ + sin(πν/2k) ψ` for orthogonal unit vectors of one
/// sector.
pub fn zeno_sequence<T: Real>(phi: &SectorVector<T>, psi: &SectorVector<T>, k: usize, tol: T) -> Result<ZenoPath<T>> {
    if phi.block != psi.block {
        return Err(Error::DisconnectedSectors {
            from: phi.block,
            to: psi.block,
        });
    }
    if k == 0 {
        return Err(Error::validation("a Zeno sequence needs at least one step"));
    }
    if phi.vector.len() != psi.vector.len() {
        return Err(Error::validation(format!(
            "vectors of length {} and {} in the same block",
            phi.vector.len(),
            psi.vector.len()
        )));
    }
    for (name, v) in [("φ", &phi.vector), ("ψ", &psi.vector)] {
        if abs(v.norm() - T::one()) > tol {
            return Err(Error::validation(format!("{name} is not a unit vector")));
        }
    }
    if phi.vector.dotc(&psi.vector).norm_sqr().sqrt() > tol {
        return Err(Error::validation("φ and ψ are not orthogonal"));
    }
    let step = T::pi() / T::lit(2.0 * k as f64);
    let vectors: Vec<CVector<T>> = (0..=k)
        .map(|nu| {
            let angle = step * T::lit(nu as f64);
            &phi.vector * c(angle.cos()) + &psi.vector * c(angle.sin())
        })
        .collect();
    let step_probabilities: Vec<T> = vectors
        .windows(2)
        .map(|w| w[0].dotc(&w[1]).norm_sqr())
        .collect();
    let success_probability = step_probabilities.iter().fold(T::one(), |acc, &p| acc * p);
    Ok(ZenoPath {
        vectors,
        step_probabilities,
        success_probability,
    })
}

/// `cos^{2k}(π/2k)`.
pub fn zeno_success_probability<T: Real>(k: i64) -> Result<T> {
    if k < 1 {
        return Err(Error::validation(format!("Zeno step count must be at least 1, got {k}")));
    }
    let x = T::pi() / T::lit(2.0 * k as f64);
    let cos2 = x.cos() * x.cos();
    Ok(cos2.powi(i32::try_from(k).unwrap_or(i32::MAX)))
}

/// Heat `k_B · w · M · T · ln w` exchanged when the fraction `w` of the gas
/// is compressed isothermally into the volume fraction `w`.
pub fn compression_heat<T: Real>(weight: T, acct: &GasAccount<T>) -> Result<T> {
    if !(weight > T::zero() && weight <= T::one()) {
        return Err(Error::validation(format!(
            "compressed fraction must lie in (0, 1], got {}",
            weight.to_f64_lossy()
        )));
    }
    Ok(acct.boltzmann * weight * T::lit(acct.copies as f64) * acct.temperature * weight.ln())
}

/// Separation of a gas in state `ω` into its pure components, in the
/// representation given by `alg`.
#[derive(Clone, Debug, PartialEq)]
pub struct HeatLedger<T: Real> {
    /// Spectrum of the representative density matrix, zero entries dropped.
    pub weights: Vec<T>,
    pub heats: Vec<T>,
    /// `−Σ Q / (k_B M T)`.
    pub entropy: T,
}

/// Heat of compressing each component of the spectral decomposition of `ρ_ω`.
/// On a multiplicity-free structure these are the minimal-decomposition
/// weights `pᵢ λⱼ⁽ⁱ⁾`.
pub fn heat_ledger<T: Real>(omega: &StateFunctional<T>, alg: &BlockStructure, acct: &GasAccount<T>) -> Result<HeatLedger<T>> {
    let rho = representative_density(omega, alg)?;
    let weights: Vec<T> = eigvalsh(rho.matrix())?
        .into_iter()
        .filter(|&w| w > T::weight_floor())
        .collect();
    let heats: Vec<T> = weights
        .iter()
        .map(|&w| compression_heat(if w > T::one() { T::one() } else { w }, acct))
        .collect::<Result<_>>()?;
    let scale = acct.boltzmann * T::lit(acct.copies as f64) * acct.temperature;
    let entropy = -heats.iter().fold(T::zero(), |a, &q| a + q) / scale;
    Ok(HeatLedger { weights, heats, entropy })
}

/// Per-copy gas entropy `S_VN(ρ_ω) + Σᵢ pᵢ sᵢ`.
#[derive(Clone, Debug, PartialEq)]
pub struct GasEntropy<T: Real> {
    pub per_copy: T,
    /// `S_VN(ρ_ω)`
    pub vn_term: T,
    /// `Σᵢ pᵢ sᵢ`
    pub sector_term: T,
}

pub fn gas_entropy<T: Real>(omega: &StateFunctional<T>, alg: &BlockStructure, acct: &GasAccount<T>) -> Result<GasEntropy<T>> {
    if acct.sector_entropies.len() != alg.len() {
        return Err(Error::validation(format!(
            "{} sector entropies for {} blocks",
            acct.sector_entropies.len(),
            alg.len()
        )));
    }
    let rho = representative_density(omega, alg)?;
    let cf = canonical_form(&rho, alg)?;
    let vn_term = crate::entropy::von_neumann(&rho)?;
    let sector_term = cf
        .p
        .iter()
        .zip(&acct.sector_entropies)
        .fold(T::zero(), |a, (&p, &s)| a + p * s);
    Ok(GasEntropy {
        per_copy: vn_term + sector_term,
        vn_term,
        sector_term,
    })
}

fn supporting_block<T: Real>(omega: &StateFunctional<T>, alg: &BlockStructure, tol: T) -> Result<usize> {
    if !is_pure(omega, alg, tol)? {
        return Err(Error::validation("sector connectivity is defined for pure states only"));
    }
    let cf = canonical_form(&representative_density(omega, alg)?, alg)?;
    Ok(cf
        .p
        .iter()
        .enumerate()
        .fold((0, T::zero()), |best, (i, &p)| if p > best.1 { (i, p) } else { best })
        .0)
}

/// Whether two pure states live in the same block.
pub fn sectors_connectable<T: Real>(
    omega_a: &StateFunctional<T>,
    omega_b: &StateFunctional<T>,
    alg: &BlockStructure,
    tol: T,
) -> Result<bool> {
    Ok(supporting_block(omega_a, alg, tol)? == supporting_block(omega_b, alg, tol)?)
}
