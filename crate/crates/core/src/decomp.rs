//! Convex decompositions into pure states.
//!
//! A pure state of block `i` is `|φ⟩⟨φ| ⊗ 𝕀_{mᵢ}/mᵢ` for a unit `φ ∈ ℂ^{nᵢ}`.
//! This module builds Schrödinger decompositions `pᵢ = Σⱼ |Uᵢⱼ|² λⱼ`, compares
//! probability vectors by majorization, and samples random decompositions to
//! check that none beats the closed-form entropy.

use nalgebra::DMatrix;
use rand::Rng;
use rayon::prelude::*;

use crate::algebra::{embed_parts, BlockStructure};
use crate::entropy::{minimal_decomposition, shannon, shannon_with_tol};
use crate::error::{Error, Result};
use crate::linalg::{eigh, modulus, unitarity_defect};
use crate::sampling::{haar_unitary, rng_for};
use crate::scalar::{abs, c, CMatrix, CVector, Real};
use crate::states::{canonical_form, representative_density, DensityMatrix, StateFunctional};

#[derive(Clone, Debug, PartialEq)]
pub struct Component<T: Real> {
    pub weight: T,
    pub block: usize,
    /// Unit vector in `ℂ^{n_block}`.
    pub vector: CVector<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition<T: Real> {
    structure: BlockStructure,
    components: Vec<Component<T>>,
}

impl<T: Real> Decomposition<T> {
    pub fn new(structure: BlockStructure, components: Vec<Component<T>>, tol: T) -> Result<Self> {
        let d = Self {
            structure,
            components,
        };
        d.validate(tol)?;
        Ok(d)
    }

    /// Normalizes the vectors and rescales the weights to sum to one.
    pub fn renormalized(structure: BlockStructure, mut components: Vec<Component<T>>) -> Result<Self> {
        let total = components.iter().fold(T::zero(), |a, x| a + x.weight);
        if total <= T::zero() {
            return Err(Error::validation("decomposition has no weight"));
        }
        for comp in components.iter_mut() {
            comp.weight /= total;
            let n = comp.vector.norm();
            comp.vector /= c(n);
        }
        Self::new(structure, components, T::default_tol())
    }

    fn validate(&self, tol: T) -> Result<()> {
        if self.components.is_empty() {
            return Err(Error::validation("empty decomposition"));
        }
        let mut total = T::zero();
        for (k, comp) in self.components.iter().enumerate() {
            if comp.block >= self.structure.len() {
                return Err(Error::validation(format!(
                    "component {k} refers to block {} of {}",
                    comp.block,
                    self.structure.len()
                )));
            }
            let n = self.structure.block(comp.block).dim;
            if comp.vector.len() != n {
                return Err(Error::validation(format!(
                    "component {k} has a vector of length {}, block dimension is {n}",
                    comp.vector.len()
                )));
            }
            if !(comp.weight > T::zero()) {
                return Err(Error::validation(format!("component {k} has non-positive weight")));
            }
            if abs(comp.vector.norm() - T::one()) > tol {
                return Err(Error::validation(format!("component {k} is not a unit vector")));
            }
            total += comp.weight;
        }
        if abs(total - T::one()) > tol {
            return Err(Error::validation(format!(
                "decomposition weights sum to {}",
                total.to_f64_lossy()
            )));
        }
        Ok(())
    }

    pub fn structure(&self) -> &BlockStructure {
        &self.structure
    }

    pub fn components(&self) -> &[Component<T>] {
        &self.components
    }

    pub fn weights(&self) -> Vec<T> {
        self.components.iter().map(|c| c.weight).collect()
    }

    /// Total weight per block.
    pub fn block_weights(&self) -> Vec<T> {
        let mut p = vec![T::zero(); self.structure.len()];
        for comp in &self.components {
            p[comp.block] += comp.weight;
        }
        p
    }

    /// `Σ w · (|φ⟩⟨φ| ⊗ 𝕀_m/m)` on the ambient space.
    pub fn reconstruct(&self) -> CMatrix<T> {
        let mut parts: Vec<CMatrix<T>> = self
            .structure
            .blocks()
            .iter()
            .map(|b| CMatrix::zeros(b.dim, b.dim))
            .collect();
        for comp in &self.components {
            let m = self.structure.block(comp.block).multiplicity;
            let scale = comp.weight / T::lit(m as f64);
            parts[comp.block] += &comp.vector * comp.vector.adjoint() * c(scale);
        }
        embed_parts(&self.structure, &parts)
    }

    pub fn reconstruction_error(&self, rho: &CMatrix<T>) -> T {
        (self.reconstruct() - rho).norm()
    }
}

/// Result of [`schrodinger_decomposition`].
#[derive(Clone, Debug)]
pub struct SchrodingerDecomposition<T: Real> {
    /// Components with weight at least `tol`, on the full algebra `[(d, 1)]`.
    pub decomposition: Decomposition<T>,
    /// All `r` weights `Σⱼ |Uᵢⱼ|² λⱼ`, including dropped ones.
    pub weights: Vec<T>,
    /// Spectrum of `ρ`, descending and zero-padded to length `r`.
    pub eigenvalues: Vec<T>,
}

/// Decomposition induced by an `r×r` unitary with `r ≥ rank(ρ)`:
/// `φᵢ ∝ Σⱼ Uᵢⱼ √λⱼ ψⱼ` with weight `Σⱼ |Uᵢⱼ|² λⱼ`.
pub fn schrodinger_decomposition<T: Real>(
    rho: &DensityMatrix<T>,
    u: &CMatrix<T>,
    tol: T,
) -> Result<SchrodingerDecomposition<T>> {
    check_unitary(u, tol)?;
    let (vals, vecs) = eigh(rho.matrix())?;
    let rank = vals.iter().filter(|&&v| v > tol).count();
    let r = u.nrows();
    if r < rank {
        return Err(Error::validation(format!(
            "unitary of size {r} is smaller than rank(ρ) = {rank}"
        )));
    }
    let d = rho.dim();
    let structure = BlockStructure::new([(d, 1)])?;
    let (weights, components) = schrodinger_components(&vals, &vecs, u, 0, tol);
    let decomposition = Decomposition::new(structure, components, tol.sqrt())?;
    let mut eigenvalues: Vec<T> = vals.iter().map(|&v| clamp0(v)).collect();
    eigenvalues.resize(r.max(d), T::zero());
    eigenvalues.truncate(r);
    Ok(SchrodingerDecomposition {
        decomposition,
        weights,
        eigenvalues,
    })
}

fn clamp0<T: Real>(x: T) -> T {
    if x < T::zero() {
        T::zero()
    } else {
        x
    }
}

/// Weights and surviving components of the Schrödinger construction for a
/// spectrum `(vals, vecs)` (descending) and unitary `u`.
fn schrodinger_components<T: Real>(
    vals: &[T],
    vecs: &CMatrix<T>,
    u: &CMatrix<T>,
    block: usize,
    drop_below: T,
) -> (Vec<T>, Vec<Component<T>>) {
    let r = u.nrows();
    let used = r.min(vals.len());
    let sqrt_l: Vec<T> = vals[..used].iter().map(|&v| clamp0(v).sqrt()).collect();
    let mut weights = Vec::with_capacity(r);
    let mut components = Vec::new();
    for i in 0..r {
        let w = (0..used).fold(T::zero(), |acc, j| {
            let m = modulus(u[(i, j)]);
            acc + m * m * clamp0(vals[j])
        });
        weights.push(w);
        if w >= drop_below && w > T::zero() {
            let mut phi = CVector::zeros(vecs.nrows());
            for j in 0..used {
                phi += vecs.column(j) * (u[(i, j)] * c(sqrt_l[j]));
            }
            phi /= c(w.sqrt());
            components.push(Component {
                weight: w,
                block,
                vector: phi,
            });
        }
    }
    (weights, components)
}

fn check_unitary<T: Real>(u: &CMatrix<T>, tol: T) -> Result<()> {
    if !u.is_square() || u.nrows() == 0 {
        return Err(Error::validation(format!(
            "unitary must be square and nonempty, got {}x{}",
            u.nrows(),
            u.ncols()
        )));
    }
    let defect = unitarity_defect(u);
    if defect > tol {
        return Err(Error::validation(format!(
            "matrix is not unitary (‖U†U − 𝕀‖ = {:e})",
            defect.to_f64_lossy()
        )));
    }
    Ok(())
}

/// `Bᵢⱼ = |Uᵢⱼ|²`.
pub fn doubly_stochastic_from_unitary<T: Real>(u: &CMatrix<T>, tol: T) -> Result<DMatrix<T>> {
    check_unitary(u, tol)?;
    Ok(u.map(|z| {
        let m = modulus(z);
        m * m
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Majorization {
    /// `p ≻ q`
    Majorizes,
    /// `q ≻ p`
    Majorized,
    /// Sorted vectors agree.
    Equal,
    Incomparable,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MajorizationVerdict<T: Real> {
    pub relation: Majorization,
    /// `(Σ_{i≤k} p↓ᵢ, Σ_{i≤k} q↓ᵢ)` for `k = 1 … n−1`.
    pub partial_sums: Vec<(T, T)>,
}

/// Compares sorted cumulative sums, zero-padding the shorter vector.
pub fn majorizes<T: Real>(p: &[T], q: &[T], tol: T) -> Result<MajorizationVerdict<T>> {
    crate::states::check_probability_vector(p, tol)?;
    crate::states::check_probability_vector(q, tol)?;
    let n = p.len().max(q.len());
    let sorted = |v: &[T]| {
        let mut s = v.to_vec();
        s.resize(n, T::zero());
        s.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
        s
    };
    let (ps, qs) = (sorted(p), sorted(q));
    let mut partial_sums = Vec::with_capacity(n.saturating_sub(1));
    let (mut a, mut b) = (T::zero(), T::zero());
    for k in 0..n.saturating_sub(1) {
        a += ps[k];
        b += qs[k];
        partial_sums.push((a, b));
    }
    let ge = partial_sums.iter().all(|&(x, y)| x >= y - tol);
    let le = partial_sums.iter().all(|&(x, y)| x <= y + tol);
    let relation = match (ge, le) {
        (true, true) => Majorization::Equal,
        (true, false) => Majorization::Majorizes,
        (false, true) => Majorization::Majorized,
        (false, false) => Majorization::Incomparable,
    };
    Ok(MajorizationVerdict {
        relation,
        partial_sums,
    })
}

/// `H(w) = H(p) + Σᵢ pᵢ H(v⁽ⁱ⁾)` with `pᵢ` the block weights and `v⁽ⁱ⁾` the
/// renormalized weights inside block `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct DecompositionEntropy<T: Real> {
    pub total: T,
    pub sector: T,
    pub within: T,
}

pub fn decomposition_entropy<T: Real>(d: &Decomposition<T>) -> Result<DecompositionEntropy<T>> {
    let tol = T::default_tol().sqrt();
    let total = shannon_with_tol(&d.weights(), tol)?;
    let p = d.block_weights();
    let sector = shannon_with_tol(&p, tol)?;
    let mut within = T::zero();
    for (i, &pi) in p.iter().enumerate() {
        if pi <= T::zero() {
            continue;
        }
        let v: Vec<T> = d
            .components()
            .iter()
            .filter(|c| c.block == i)
            .map(|c| c.weight / pi)
            .collect();
        within += pi * shannon_with_tol(&v, tol)?;
    }
    Ok(DecompositionEntropy {
        total,
        sector,
        within,
    })
}

/// Result of [`infimum_oracle`].
#[derive(Clone, Debug)]
pub struct OracleOutcome<T: Real> {
    /// Smallest Shannon entropy over all evaluated decompositions.
    pub min_entropy: T,
    pub argmin: Decomposition<T>,
    /// Index of the minimizing sample; 0 is the minimal decomposition.
    pub argmin_sample: usize,
    /// Entropy of sample 0.
    pub baseline: T,
    /// Smallest entropy among the random samples `1..=samples`.
    pub best_random: T,
    pub samples: usize,
}

/// Per-block spectral data reused across oracle samples.
#[derive(Clone, Debug)]
pub struct OraclePrep<T: Real> {
    structure: BlockStructure,
    blocks: Vec<(usize, T, Vec<T>, CMatrix<T>)>,
}

impl<T: Real> OraclePrep<T> {
    pub fn new(omega: &StateFunctional<T>, alg: &BlockStructure) -> Result<Self> {
        let rho = representative_density(omega, alg)?;
        let cf = canonical_form(&rho, alg)?;
        let mut blocks = Vec::new();
        for (i, (&p, r)) in cf.p.iter().zip(&cf.rhos).enumerate() {
            if let Some(r) = r {
                let (vals, vecs) = eigh(r)?;
                blocks.push((i, p, vals, vecs));
            }
        }
        Ok(Self {
            structure: alg.clone(),
            blocks,
        })
    }

    /// Random decomposition number `index ≥ 1`: per block a Haar unitary of
    /// size drawn from `[nᵢ, 2nᵢ]` and its Schrödinger decomposition of `ρᵢ`,
    /// weighted by `pᵢ`.
    pub fn sample(&self, seed: u64, index: u64) -> Result<Decomposition<T>> {
        let mut rng = rng_for(seed, index);
        let mut components = Vec::new();
        for (i, p, vals, vecs) in &self.blocks {
            let n = vals.len();
            let r = rng.random_range(n..=2 * n);
            let u: CMatrix<T> = haar_unitary(&mut rng, r);
            let (_, comps) = schrodinger_components(vals, vecs, &u, *i, T::weight_floor());
            components.extend(comps.into_iter().map(|mut comp| {
                comp.weight *= *p;
                comp
            }));
        }
        components.retain(|comp| comp.weight > T::weight_floor());
        Decomposition::renormalized(self.structure.clone(), components)
    }
}

/// Evidence for the infimum definition: sample 0 is the minimal
/// decomposition, samples `1..=samples` are random Schrödinger
/// decompositions. Samples run in parallel; each draws from its own
/// `(seed, index)` stream and ties go to the lowest index.
pub fn infimum_oracle<T: Real>(
    omega: &StateFunctional<T>,
    alg: &BlockStructure,
    samples: usize,
    seed: u64,
) -> Result<OracleOutcome<T>> {
    if samples == 0 {
        return Err(Error::validation("the oracle needs at least one sample"));
    }
    let minimal = minimal_decomposition(omega, alg)?;
    let baseline = shannon(&minimal.weights())?;
    let prep = OraclePrep::new(omega, alg)?;

    let scored: Vec<(T, usize)> = (1..=samples)
        .into_par_iter()
        .map(|s| {
            let d = prep.sample(seed, s as u64)?;
            Ok((shannon(&d.weights())?, s))
        })
        .collect::<Result<_>>()?;
    let (best_random, best_index) = scored
        .into_iter()
        .fold((T::max_value().unwrap_or_else(T::one), usize::MAX), |acc, x| {
            if x.0 < acc.0 || (x.0 == acc.0 && x.1 < acc.1) {
                x
            } else {
                acc
            }
        });

    let (min_entropy, argmin_sample, argmin) = if best_random < baseline {
        (best_random, best_index, prep.sample(seed, best_index as u64)?)
    } else {
        (baseline, 0, minimal)
    };
    Ok(OracleOutcome {
        min_entropy,
        argmin,
        argmin_sample,
        baseline,
        best_random,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::make_algebra;
    use crate::entropy::{state_entropy, von_neumann};
    use crate::sampling::{random_density, random_state};
    use crate::scalar::C;
    use crate::states::state_from_density;

    type M = CMatrix<f64>;

    fn diag(v: &[f64]) -> M {
        M::from_fn(v.len(), v.len(), |i, j| C::new(if i == j { v[i] } else { 0.0 }, 0.0))
    }

    fn hadamard() -> M {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        M::from_row_slice(2, 2, &[C::new(s, 0.0), C::new(s, 0.0), C::new(s, 0.0), C::new(-s, 0.0)])
    }

    #[test]
    fn identity_unitary_gives_spectral_decomposition() {
        let rho = DensityMatrix::new(diag(&[0.2, 0.5, 0.3]), 1e-9).unwrap();
        let sd = schrodinger_decomposition(&rho, &M::identity(3, 3), 1e-9).unwrap();
        assert_eq!(sd.weights.len(), 3);
        let mut w = sd.weights.clone();
        w.sort_by(|a, b| b.partial_cmp(a).unwrap());
        for (a, b) in w.iter().zip([0.5, 0.3, 0.2]) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn hadamard_on_maximally_mixed() {
        let rho = DensityMatrix::<f64>::maximally_mixed(2);
        let sd = schrodinger_decomposition(&rho, &hadamard(), 1e-9).unwrap();
        assert!((sd.weights[0] - 0.5).abs() < 1e-14 && (sd.weights[1] - 0.5).abs() < 1e-14);
        assert!(sd.decomposition.reconstruction_error(rho.matrix()) < 1e-14);
        // ψ₁ ± ψ₂ up to a global phase.
        let comps = sd.decomposition.components();
        let overlap = comps[0].vector.dotc(&comps[1].vector).norm();
        assert!(overlap < 1e-14);
        for comp in comps {
            assert!((comp.vector[0].norm() - comp.vector[1].norm()).abs() < 1e-14);
        }
    }

    #[test]
    fn schrodinger_rejects_bad_unitaries() {
        let rho = DensityMatrix::new(random_density(&mut rng_for(1, 0), 3, 3), 1e-9).unwrap();
        assert!(schrodinger_decomposition(&rho, &(M::identity(3, 3) * C::new(2.0, 0.0)), 1e-9).is_err());
        assert!(schrodinger_decomposition(&rho, &M::identity(2, 2), 1e-9).is_err());
        assert!(schrodinger_decomposition(&rho, &M::zeros(3, 2), 1e-9).is_err());
    }

    #[test]
    fn larger_unitary_than_rank() {
        let mut rng = rng_for(2, 0);
        let rho = DensityMatrix::new(random_density(&mut rng, 3, 2), 1e-9).unwrap();
        let u: M = haar_unitary(&mut rng, 5);
        let sd = schrodinger_decomposition(&rho, &u, 1e-9).unwrap();
        assert!(sd.decomposition.reconstruction_error(rho.matrix()) < 1e-12);
        assert!(shannon(&sd.decomposition.weights()).unwrap() >= von_neumann(&rho).unwrap() - 1e-9);
        let b = doubly_stochastic_from_unitary(&u, 1e-9).unwrap();
        let lam = nalgebra::DVector::from_vec(sd.eigenvalues.clone());
        let p = &b * lam;
        for (x, y) in p.iter().zip(&sd.weights) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn doubly_stochastic_examples() {
        assert_eq!(doubly_stochastic_from_unitary(&M::identity(3, 3), 1e-9).unwrap(), DMatrix::identity(3, 3));
        let b = doubly_stochastic_from_unitary(&hadamard(), 1e-9).unwrap();
        for x in b.iter() {
            assert!((x - 0.5).abs() < 1e-15);
        }
        assert!(doubly_stochastic_from_unitary(&diag(&[1.0, 0.5]), 1e-9).is_err());
        let u: M = haar_unitary(&mut rng_for(4, 0), 4);
        let b = doubly_stochastic_from_unitary(&u, 1e-9).unwrap();
        for k in 0..4 {
            assert!((b.row(k).sum() - 1.0).abs() < 1e-12);
            assert!((b.column(k).sum() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn majorization_examples() {
        let v = majorizes(&[1.0, 0.0], &[0.5, 0.5], 1e-9).unwrap();
        assert_eq!(v.relation, Majorization::Majorizes);
        let v = majorizes(&[0.5, 0.3, 0.2], &[0.4, 0.4, 0.2], 1e-9).unwrap();
        assert_eq!(v.relation, Majorization::Majorizes);
        assert_eq!(v.partial_sums.len(), 2);
        let v = majorizes(&[0.6, 0.2, 0.2], &[0.5, 0.4, 0.1], 1e-9).unwrap();
        assert_eq!(v.relation, Majorization::Incomparable);
        let v = majorizes(&[0.2, 0.3, 0.5], &[0.5, 0.2, 0.3], 1e-9).unwrap();
        assert_eq!(v.relation, Majorization::Equal);
        let v = majorizes(&[0.5, 0.5], &[1.0], 1e-9).unwrap();
        assert_eq!(v.relation, Majorization::Majorized);
        assert!(majorizes(&[0.5, 0.4], &[1.0], 1e-9).is_err());
    }

    #[test]
    fn decomposition_entropy_examples() {
        let alg = make_algebra(&[(2, 1), (1, 1)]).unwrap();
        let omega = random_state::<f64, _>(&mut rng_for(6, 0), &alg);
        let d = minimal_decomposition(&omega, &alg).unwrap();
        let de = decomposition_entropy(&d).unwrap();
        let s = state_entropy(&omega, &alg).unwrap();
        assert!((de.total - s.state_entropy).abs() < 1e-12);
        assert!((de.sector - s.sector_entropy).abs() < 1e-12);
        assert!((de.sector + de.within - de.total).abs() < 1e-12);

        let one = Decomposition::new(
            alg.clone(),
            vec![Component {
                weight: 1.0,
                block: 1,
                vector: CVector::from_vec(vec![C::new(1.0, 0.0)]),
            }],
            1e-9,
        )
        .unwrap();
        assert_eq!(decomposition_entropy(&one).unwrap().total, 0.0);

        let v = CVector::from_vec(vec![C::new(0.6, 0.0), C::new(0.8, 0.0)]);
        let dup = Decomposition::new(
            alg,
            vec![
                Component { weight: 0.5, block: 0, vector: v.clone() },
                Component { weight: 0.5, block: 0, vector: v },
            ],
            1e-9,
        )
        .unwrap();
        assert!((decomposition_entropy(&dup).unwrap().total - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn decomposition_validation() {
        let alg = make_algebra(&[(2, 1)]).unwrap();
        let v = CVector::from_vec(vec![C::new(1.0, 0.0), C::new(0.0, 0.0)]);
        let bad_weight = Decomposition::new(alg.clone(), vec![Component { weight: 0.5, block: 0, vector: v.clone() }], 1e-9);
        assert!(bad_weight.is_err());
        let bad_block = Decomposition::new(alg.clone(), vec![Component { weight: 1.0, block: 1, vector: v.clone() }], 1e-9);
        assert!(bad_block.is_err());
        let bad_norm = Decomposition::new(alg, vec![Component { weight: 1.0, block: 0, vector: v * C::new(2.0, 0.0) }], 1e-9);
        assert!(bad_norm.is_err());
    }

    #[test]
    fn oracle_on_full_matrix_algebra() {
        let alg = make_algebra(&[(2, 1)]).unwrap();
        let rho = DensityMatrix::new(diag(&[0.25, 0.75]), 1e-9).unwrap();
        let omega = state_from_density(&rho, &alg).unwrap();
        let out = infimum_oracle(&omega, &alg, 1000, 3).unwrap();
        assert!((out.min_entropy - 0.5623351).abs() < 1e-7);
        assert_eq!(out.argmin_sample, 0);
        assert!(out.best_random >= out.baseline - 1e-9);
    }

    #[test]
    fn oracle_on_pure_state_is_zero() {
        let alg = make_algebra(&[(3, 2)]).unwrap();
        let v = CVector::from_vec(vec![C::new(1.0, 0.0), C::new(0.0, 0.0), C::new(0.0, 0.0)]);
        let rho = (&v * v.adjoint()).kronecker(&(M::identity(2, 2) * C::new(0.5, 0.0)));
        let omega = state_from_density(&DensityMatrix::new(rho, 1e-9).unwrap(), &alg).unwrap();
        let out = infimum_oracle(&omega, &alg, 50, 0).unwrap();
        assert!(out.min_entropy.abs() < 1e-12);
    }

    #[test]
    fn oracle_is_deterministic_and_samples_reconstruct() {
        let alg = make_algebra(&[(2, 2), (1, 1)]).unwrap();
        let omega = random_state::<f64, _>(&mut rng_for(8, 0), &alg);
        let a = infimum_oracle(&omega, &alg, 200, 5).unwrap();
        let b = infimum_oracle(&omega, &alg, 200, 5).unwrap();
        assert_eq!(a.best_random, b.best_random);
        let rho = representative_density(&omega, &alg).unwrap();
        let prep = OraclePrep::new(&omega, &alg).unwrap();
        for s in 1..=50 {
            let d = prep.sample(5, s).unwrap();
            assert!(d.reconstruction_error(rho.matrix()) < 1e-9);
        }
        assert!(infimum_oracle(&omega, &alg, 0, 5).is_err());
    }
}
