//! The GNS representation of a state and the entropy computed through it.
//!
//! The algebra is coordinatized by its standard matrix-unit basis `Eₖ`. The
//! Gram matrix `Gₖₗ = ω(Eₖ† Eₗ)` defines the inner product on coefficient
//! vectors; factoring `G = V Λ V†` and dropping the null space `N_ω` gives
//! the quotient map `J = Λ^{1/2} V₊†`, under which left multiplication becomes
//! `π_ω(A) = J L_A J⁺` and the class of `𝕀` becomes the cyclic vector `Ω_ω`.

use rand::Rng;

use crate::algebra::{block_decompose, AlgebraElement, BlockStructure, Discovered, SubalgebraBasis};
use crate::entropy::{shannon_with_tol, EntropyReport};
use crate::error::{Error, Result};
use crate::linalg::{eigh, hermitian_defect, modulus};
use crate::sampling::{haar_unitary, rng_for};
use crate::scalar::{c, max, state_tol, CMatrix, CVector, Real, C};
use crate::states::StateFunctional;

/// GNS triple `(H_ω, π_ω, Ω_ω)` in coordinates.
#[derive(Clone, Debug)]
pub struct GnsData<T: Real> {
    structure: BlockStructure,
    dim: usize,
    rep_ops: Vec<CMatrix<T>>,
    cyclic: CVector<T>,
    gram: CMatrix<T>,
    /// `K × dim`, `V₊ Λ^{-1/2}`: orthonormal GNS basis as coefficient vectors.
    embedding: CMatrix<T>,
    tol: T,
}

impl<T: Real> GnsData<T> {
    pub fn structure(&self) -> &BlockStructure {
        &self.structure
    }

    /// Dimension of `H_ω`, the numerical rank of the Gram matrix.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `π_ω(Eₖ)` for the standard basis.
    pub fn rep_ops(&self) -> &[CMatrix<T>] {
        &self.rep_ops
    }

    pub fn cyclic(&self) -> &CVector<T> {
        &self.cyclic
    }

    pub fn gram(&self) -> &CMatrix<T> {
        &self.gram
    }

    /// Columns are the orthonormal GNS basis vectors written as coefficient
    /// vectors in the standard basis; orthonormal for the Gram inner product.
    pub fn embedding(&self) -> &CMatrix<T> {
        &self.embedding
    }

    pub fn tol(&self) -> T {
        self.tol
    }

    /// `π_ω(A)`.
    pub fn represent(&self, a: &AlgebraElement<T>) -> Result<CMatrix<T>> {
        if !a.structure().same_algebra(&self.structure) {
            return Err(Error::validation(format!(
                "element of {} in the GNS representation of a state over {}",
                a.structure(),
                self.structure
            )));
        }
        let mut out = CMatrix::zeros(self.dim, self.dim);
        for (coef, op) in a.coefficients().iter().zip(&self.rep_ops) {
            if *coef != C::new(T::zero(), T::zero()) {
                out += op * *coef;
            }
        }
        Ok(out)
    }

    /// `⟨Ω|π_ω(A) Ω⟩`.
    pub fn expectation(&self, a: &AlgebraElement<T>) -> Result<C<T>> {
        let pa = self.represent(a)?;
        Ok(self.cyclic.dotc(&(pa * &self.cyclic)))
    }
}

/// GNS representation of `ω` over the algebra of `alg`.
///
/// Gram eigenvalues at most `tol · λ_max` span the null space. A Gram matrix
/// that is not Hermitian, has an eigenvalue below `−tol · λ_max`, or a
/// functional with `ω(𝕀) ≠ 1` is reported as not a state.
pub fn gns_construct<T: Real>(omega: &StateFunctional<T>, alg: &BlockStructure, tol: T) -> Result<GnsData<T>> {
    if !alg.same_algebra(omega.structure()) {
        return Err(Error::validation(format!(
            "state over {} used with algebra {}",
            omega.structure(),
            alg
        )));
    }
    let structure = omega.structure().clone();
    let values = omega.standard_values()?;
    let offsets: Vec<usize> = (0..structure.len()).map(|i| structure.coefficient_range(i).start).collect();

    let unit = structure
        .blocks()
        .iter()
        .enumerate()
        .fold(C::new(T::zero(), T::zero()), |acc, (i, b)| {
            (0..b.dim).fold(acc, |acc, a| acc + values[offsets[i] + a * b.dim + a])
        });
    if modulus(unit - c(T::one())) > tol.sqrt() {
        return Err(Error::not_a_state(format!(
            "ω(𝕀) = {} + {}i",
            unit.re.to_f64_lossy(),
            unit.im.to_f64_lossy()
        )));
    }

    // G[(i,a,b),(i,a,d)] = ω(E_ba E_ad) = ω(E_bd); all other entries vanish.
    let k = structure.algebra_dim();
    let mut gram = CMatrix::zeros(k, k);
    for (i, blk) in structure.blocks().iter().enumerate() {
        let n = blk.dim;
        let off = offsets[i];
        for a in 0..n {
            for b in 0..n {
                for d in 0..n {
                    gram[(off + a * n + b, off + a * n + d)] = values[off + b * n + d];
                }
            }
        }
    }
    let scale = max(T::one(), gram.norm());
    if hermitian_defect(&gram) > tol * scale {
        return Err(Error::not_a_state("ω(A†B) is not Hermitian in (A, B)"));
    }
    let (vals, vecs) = eigh(&gram)?;
    let top = vals.first().copied().unwrap_or_else(T::zero);
    let bottom = vals.last().copied().unwrap_or_else(T::zero);
    if top <= T::zero() || bottom < -tol * top {
        return Err(Error::not_a_state(format!(
            "ω(A†A) has a negative direction (smallest Gram eigenvalue {:e})",
            bottom.to_f64_lossy()
        )));
    }
    let kept: Vec<usize> = (0..vals.len()).filter(|&j| vals[j] > tol * top).collect();
    let dim = kept.len();
    let mut embedding = CMatrix::zeros(k, dim);
    let mut quotient = CMatrix::zeros(dim, k);
    for (col, &j) in kept.iter().enumerate() {
        let s = vals[j].sqrt();
        let v = vecs.column(j);
        embedding.set_column(col, &(v / c(s)));
        quotient.set_row(col, &(v.adjoint() * c(s)));
    }

    // L_{E_ab} sends coefficient (i,b,d) to (i,a,d).
    let mut rep_ops = Vec::with_capacity(k);
    for (i, blk) in structure.blocks().iter().enumerate() {
        let n = blk.dim;
        let off = offsets[i];
        for a in 0..n {
            for b in 0..n {
                let mut op = CMatrix::zeros(dim, dim);
                for d in 0..n {
                    op += quotient.column(off + a * n + d) * embedding.row(off + b * n + d);
                }
                rep_ops.push(op);
            }
        }
    }

    let mut e_unit = CVector::zeros(k);
    for (i, blk) in structure.blocks().iter().enumerate() {
        for a in 0..blk.dim {
            e_unit[offsets[i] + a * blk.dim + a] = c(T::one());
        }
    }
    let cyclic = &quotient * e_unit;

    Ok(GnsData {
        structure,
        dim,
        rep_ops,
        cyclic,
        gram,
        embedding,
        tol,
    })
}

/// GNS representation resolved into blocks `⊕ᵢ M_{nᵢ} ⊗ 𝕀_{mᵢ}`.
#[derive(Clone, Debug)]
pub struct GnsBlocks<T: Real> {
    pub discovered: Discovered<T>,
    /// `W† Ω_ω` in block coordinates.
    pub cyclic: CVector<T>,
}

impl<T: Real> GnsBlocks<T> {
    pub fn structure(&self) -> &BlockStructure {
        &self.discovered.structure
    }

    /// Component of `Ω` in block `i` as an `nᵢ × mᵢ` matrix `M_ab`.
    pub fn segment(&self, i: usize) -> CMatrix<T> {
        let s = self.structure();
        let b = s.block(i);
        let start = s.ambient_range(i).start;
        CMatrix::from_fn(b.dim, b.multiplicity, |a, q| self.cyclic[start + a * b.multiplicity + q])
    }

    /// `pᵢ = ‖Ωᵢ‖²`.
    pub fn sector_weights(&self) -> Vec<T> {
        (0..self.structure().len())
            .map(|i| {
                let n = self.segment(i).norm();
                n * n
            })
            .collect()
    }

    /// Unnormalized reduced states on `ℂ^{mᵢ}`: `Tr_{Hᵢ} |Ωᵢ⟩⟨Ωᵢ| = Mᵀ M̄`.
    pub fn reduced_states(&self) -> Vec<CMatrix<T>> {
        (0..self.structure().len())
            .map(|i| {
                let m = self.segment(i);
                m.transpose() * m.map(|z| z.conj())
            })
            .collect()
    }

    /// Unnormalized reduced states on `Hᵢ`: `M M†`.
    pub fn sector_densities(&self) -> Vec<CMatrix<T>> {
        (0..self.structure().len())
            .map(|i| {
                let m = self.segment(i);
                &m * m.adjoint()
            })
            .collect()
    }
}

/// Block structure of `π_ω` via [`block_decompose`] on the span of `rep_ops`.
pub fn gns_block_decompose<T: Real>(g: &GnsData<T>, tol: T, seed: u64) -> Result<GnsBlocks<T>> {
    let sub = SubalgebraBasis::from_spanning(g.dim, &g.rep_ops, tol)?;
    let discovered = block_decompose(&sub, tol, seed)?;
    let cyclic = discovered.unitary.adjoint() * &g.cyclic;
    Ok(GnsBlocks { discovered, cyclic })
}

/// `S(ω)` through the GNS representation: `pᵢ` from the sector components of
/// `Ω`, `σᵢ` from the reduced states on the multiplicity factors. The
/// multiplicity term uses the GNS multiplicities.
pub fn gns_state_entropy<T: Real>(omega: &StateFunctional<T>, alg: &BlockStructure) -> Result<EntropyReport<T>> {
    let tol = T::default_tol();
    let g = gns_construct(omega, alg, tol)?;
    let blocks = gns_block_decompose(&g, tol, 0)?;
    entropy_from_blocks(&blocks)
}

pub fn entropy_from_blocks<T: Real>(blocks: &GnsBlocks<T>) -> Result<EntropyReport<T>> {
    let structure = blocks.structure();
    let wtol = state_tol::<T>(structure.ambient_dim());
    let p = blocks.sector_weights();
    let total = p.iter().fold(T::zero(), |a, &x| a + x);
    let sector_entropy = shannon_with_tol(&p, wtol)?;
    let mut mean_block_entropy = T::zero();
    let mut multiplicity_term = T::zero();
    let mut rep_spectrum = Vec::new();
    for (i, (sigma, dens)) in blocks.reduced_states().iter().zip(blocks.sector_densities()).enumerate() {
        let pi = p[i] / total;
        if pi <= T::weight_floor() {
            continue;
        }
        let (vals, _) = eigh(&(sigma / c(p[i])))?;
        mean_block_entropy += pi * shannon_with_tol(&vals, wtol)?;
        let m = structure.block(i).multiplicity;
        multiplicity_term += pi * T::lit(m as f64).ln();
        let (dvals, _) = eigh(&(dens / c(total)))?;
        for v in dvals {
            for _ in 0..m {
                rep_spectrum.push(v / T::lit(m as f64));
            }
        }
    }
    Ok(EntropyReport {
        state_entropy: sector_entropy + mean_block_entropy,
        sector_entropy,
        mean_block_entropy,
        vn_of_representative: shannon_with_tol(&rep_spectrum, wtol)?,
        multiplicity_term,
    })
}

/// `π_ω` is irreducible iff its commutant is `ℂ𝕀`, which for a unital
/// representation means the represented operators span all of `M_dim`.
pub fn is_irreducible<T: Real>(g: &GnsData<T>, tol: T) -> bool {
    let d = g.dim;
    if g.rep_ops.len() < d * d {
        return false;
    }
    match SubalgebraBasis::from_spanning(d, &g.rep_ops, tol) {
        Ok(sub) => sub.dim() == d * d,
        Err(_) => false,
    }
}

/// For `0 ≤ T ≤ 𝕀` in the commutant of `π_ω`: `λ = ⟨Ω|T Ω⟩` and the state
/// `ω_T(A) = ⟨Ω|T π_ω(A) Ω⟩ / λ`.
pub fn gns_commutant_functional<T: Real>(
    g: &GnsData<T>,
    t: &CMatrix<T>,
    tol: T,
) -> Result<(T, StateFunctional<T>)> {
    let d = g.dim;
    if t.nrows() != d || t.ncols() != d {
        return Err(Error::validation(format!(
            "operator of shape {}x{} on a GNS space of dimension {d}",
            t.nrows(),
            t.ncols()
        )));
    }
    let scale = max(T::one(), t.norm());
    if hermitian_defect(t) > tol * scale {
        return Err(Error::validation("operator is not self-adjoint"));
    }
    for (k, op) in g.rep_ops.iter().enumerate() {
        let comm = t * op - op * t;
        if comm.norm() > tol * scale * max(T::one(), op.norm()) {
            return Err(Error::validation(format!(
                "operator does not commute with π(E_{k}) (‖[T, π]‖ = {:e})",
                comm.norm().to_f64_lossy()
            )));
        }
    }
    let (vals, _) = eigh(t)?;
    if let (Some(&hi), Some(&lo)) = (vals.first(), vals.last()) {
        if lo < -tol || hi > T::one() + tol {
            return Err(Error::validation(format!(
                "operator spectrum [{:e}, {:e}] is outside [0, 1]",
                lo.to_f64_lossy(),
                hi.to_f64_lossy()
            )));
        }
    }
    let t_omega = t * &g.cyclic;
    let lambda = g.cyclic.dotc(&t_omega).re;
    if lambda <= tol {
        return Err(Error::validation("operator annihilates the cyclic vector"));
    }
    let values: Vec<C<T>> = g
        .rep_ops
        .iter()
        .map(|op| t_omega.dotc(&(op * &g.cyclic)) / c(lambda))
        .collect();
    let state = StateFunctional::from_standard_values(g.structure.clone(), values)?;
    Ok((lambda, state))
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdentityItem<T: Real> {
    pub t: T,
    pub block: usize,
    /// Unit vector in `ℂ^{m_block}`.
    pub vector: CVector<T>,
}

/// Per block, `Σⱼ tⱼ |vⱼ⟩⟨vⱼ| = 𝕀_{mᵢ}`.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityDecomposition<T: Real> {
    pub items: Vec<IdentityItem<T>>,
}

impl<T: Real> IdentityDecomposition<T> {
    /// Standard basis of every multiplicity factor, all `t = 1`.
    pub fn orthonormal(structure: &BlockStructure) -> Self {
        let mut items = Vec::new();
        for (i, b) in structure.blocks().iter().enumerate() {
            for q in 0..b.multiplicity {
                let mut v = CVector::zeros(b.multiplicity);
                v[q] = c(T::one());
                items.push(IdentityItem { t: T::one(), block: i, vector: v });
            }
        }
        Self { items }
    }

    /// Largest `‖Σⱼ tⱼ |vⱼ⟩⟨vⱼ| − 𝕀‖_F` over the blocks.
    pub fn resolution_defect(&self, structure: &BlockStructure) -> T {
        let mut sums: Vec<CMatrix<T>> = structure
            .blocks()
            .iter()
            .map(|b| -CMatrix::identity(b.multiplicity, b.multiplicity))
            .collect();
        for item in &self.items {
            sums[item.block] += &item.vector * item.vector.adjoint() * c(item.t);
        }
        sums.iter().fold(T::zero(), |acc, s| max(acc, s.norm()))
    }

    /// `λⱼ = tⱼ ⟨Ω|Pⱼ Ω⟩` with `Pⱼ = 𝕀_{nᵢ} ⊗ |vⱼ⟩⟨vⱼ|` in block coordinates.
    pub fn induced_weights(&self, blocks: &GnsBlocks<T>) -> Vec<T> {
        let segments: Vec<CMatrix<T>> = (0..blocks.structure().len()).map(|i| blocks.segment(i)).collect();
        self.items
            .iter()
            .map(|item| {
                let proj = &segments[item.block] * item.vector.map(|z| z.conj());
                let n = proj.norm();
                item.t * n * n
            })
            .collect()
    }
}

/// Random resolution of each `𝕀_{mᵢ}`: the rows `uⱼ` of the first `mᵢ`
/// columns of a Haar unitary of size `Mᵢ ∈ [mᵢ, 2mᵢ]` give
/// `tⱼ = ‖uⱼ‖²`, `vⱼ = uⱼ / ‖uⱼ‖`. A block with `mᵢ = 1` gets the single
/// term `t = 1`.
pub fn identity_decomposition_random<T: Real>(blocks: &GnsBlocks<T>, seed: u64) -> IdentityDecomposition<T> {
    let structure = blocks.structure();
    let mut items = Vec::new();
    for (i, b) in structure.blocks().iter().enumerate() {
        let m = b.multiplicity;
        if m == 1 {
            items.push(IdentityItem {
                t: T::one(),
                block: i,
                vector: CVector::from_element(1, c(T::one())),
            });
            continue;
        }
        let mut rng = rng_for(seed, i as u64);
        let size = rng.random_range(m..=2 * m);
        let v: CMatrix<T> = haar_unitary(&mut rng, size);
        for j in 0..size {
            let u = CVector::from_fn(m, |q, _| v[(j, q)].conj());
            let norm = u.norm();
            let t = norm * norm;
            if t > T::weight_floor() {
                items.push(IdentityItem {
                    t,
                    block: i,
                    vector: u / c(norm),
                });
            }
        }
    }
    IdentityDecomposition { items }
}
