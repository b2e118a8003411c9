//! States over a block algebra, their representative density matrices and
//! canonical form `ρ_ω = ⊕ᵢ pᵢ (ρᵢ ⊗ 𝕀_{mᵢ}/mᵢ)`.

use crate::algebra::{embed_parts, AlgebraElement, BlockStructure};
use crate::error::{Error, Result};
use crate::linalg::{self, eigvalsh, hermitian_defect, hermitize};
use crate::scalar::{abs, c, state_tol, CMatrix, CVector, Real, C};

/// Hermitian, positive semidefinite, unit-trace matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix<T: Real> {
    matrix: CMatrix<T>,
}

impl<T: Real> DensityMatrix<T> {
    /// Validates within `tol` and stores the Hermitian part.
    pub fn new(matrix: CMatrix<T>, tol: T) -> Result<Self> {
        validate_density(&matrix, tol).map_err(Error::Validation)?;
        Ok(Self {
            matrix: hermitize(&matrix),
        })
    }

    pub fn with_default_tol(matrix: CMatrix<T>) -> Result<Self> {
        let tol = state_tol(matrix.nrows());
        Self::new(matrix, tol)
    }

    pub fn maximally_mixed(n: usize) -> Self {
        Self {
            matrix: linalg::identity::<T>(n) / c(T::lit(n as f64)),
        }
    }

    /// `|ψ⟩⟨ψ|` for a nonzero vector, normalized.
    pub fn pure(psi: &CVector<T>) -> Result<Self> {
        let n = psi.norm();
        if n <= T::zero() {
            return Err(Error::validation("zero vector"));
        }
        let v = psi / c(n);
        Ok(Self {
            matrix: &v * v.adjoint(),
        })
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix<T> {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Eigenvalues, descending.
    pub fn eigenvalues(&self) -> Result<Vec<T>> {
        eigvalsh(&self.matrix)
    }
}

fn validate_density<T: Real>(m: &CMatrix<T>, tol: T) -> std::result::Result<(), String> {
    if !m.is_square() {
        return Err(format!("density matrix is {}x{}", m.nrows(), m.ncols()));
    }
    if m.nrows() == 0 {
        return Err("density matrix is empty".into());
    }
    let defect = hermitian_defect(m);
    if defect > tol {
        return Err(format!("not Hermitian (defect {:e})", defect.to_f64_lossy()));
    }
    let tr = m.trace();
    if abs(tr.re - T::one()) > tol || abs(tr.im) > tol {
        return Err(format!(
            "trace is {}{:+}i, expected 1",
            tr.re.to_f64_lossy(),
            tr.im.to_f64_lossy()
        ));
    }
    let vals = eigvalsh(&hermitize(m)).map_err(|e| e.to_string())?;
    if let Some(&min) = vals.last() {
        if min < -tol {
            return Err(format!("negative eigenvalue {:e}", min.to_f64_lossy()));
        }
    }
    Ok(())
}

/// `(p, ρᵢ)` with `ρᵢ = None` for blocks carrying no weight.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalForm<T: Real> {
    pub p: Vec<T>,
    pub rhos: Vec<Option<CMatrix<T>>>,
}

impl<T: Real> CanonicalForm<T> {
    pub fn validate(&self, structure: &BlockStructure, tol: T) -> Result<()> {
        if self.p.len() != structure.len() || self.rhos.len() != structure.len() {
            return Err(Error::validation(format!(
                "canonical form with {} weights and {} densities for {} blocks",
                self.p.len(),
                self.rhos.len(),
                structure.len()
            )));
        }
        check_probability_vector(&self.p, tol)?;
        for (i, (rho, b)) in self.rhos.iter().zip(structure.blocks()).enumerate() {
            match rho {
                Some(r) => {
                    if r.nrows() != b.dim || r.ncols() != b.dim {
                        return Err(Error::validation(format!(
                            "ρ_{i} has shape {}x{}, block dimension is {}",
                            r.nrows(),
                            r.ncols(),
                            b.dim
                        )));
                    }
                    validate_density(r, tol)
                        .map_err(|e| Error::validation(format!("ρ_{i}: {e}")))?;
                }
                None if self.p[i] > tol => {
                    return Err(Error::validation(format!(
                        "block {i} has weight {} but no density",
                        self.p[i].to_f64_lossy()
                    )));
                }
                None => {}
            }
        }
        Ok(())
    }

    /// Blockwise weighted densities `pᵢ ρᵢ`.
    pub fn weighted_parts(&self, structure: &BlockStructure) -> Vec<CMatrix<T>> {
        structure
            .blocks()
            .iter()
            .zip(self.p.iter().zip(&self.rhos))
            .map(|(b, (&p, rho))| match rho {
                Some(r) => r * c(p),
                None => CMatrix::zeros(b.dim, b.dim),
            })
            .collect()
    }

    /// `⊕ᵢ pᵢ (ρᵢ ⊗ 𝕀_{mᵢ}/mᵢ)` in the representation `rep`.
    pub fn reconstruct(&self, rep: &BlockStructure) -> CMatrix<T> {
        let parts: Vec<CMatrix<T>> = self
            .weighted_parts(rep)
            .into_iter()
            .zip(rep.blocks())
            .map(|(x, b)| x / c(T::lit(b.multiplicity as f64)))
            .collect();
        embed_parts(rep, &parts)
    }
}

pub(crate) fn check_probability_vector<T: Real>(p: &[T], tol: T) -> Result<()> {
    if p.is_empty() {
        return Err(Error::validation("empty probability vector"));
    }
    if let Some(k) = p.iter().position(|&x| x < -tol || !x.is_finite()) {
        return Err(Error::validation(format!(
            "probability {k} is {}",
            p[k].to_f64_lossy()
        )));
    }
    let total = p.iter().fold(T::zero(), |a, &x| a + x);
    if abs(total - T::one()) > tol {
        return Err(Error::validation(format!(
            "probabilities sum to {}",
            total.to_f64_lossy()
        )));
    }
    Ok(())
}

/// How a state is given.
#[derive(Clone, Debug, PartialEq)]
pub enum StateForm<T: Real> {
    /// `values[k] = ω(basis[k])` on a declared basis of the algebra.
    Values {
        basis: Vec<AlgebraElement<T>>,
        values: Vec<C<T>>,
    },
    Canonical(CanonicalForm<T>),
}

/// Linear functional on the algebra described by `structure`.
///
/// Positivity is checked through the representative density matrix, not on
/// the functional itself.
#[derive(Clone, Debug, PartialEq)]
pub struct StateFunctional<T: Real> {
    structure: BlockStructure,
    form: StateForm<T>,
}

impl<T: Real> StateFunctional<T> {
    pub fn from_values(
        structure: BlockStructure,
        basis: Vec<AlgebraElement<T>>,
        values: Vec<C<T>>,
    ) -> Result<Self> {
        if basis.len() != structure.algebra_dim() {
            return Err(Error::validation(format!(
                "declared basis has {} elements, algebra dimension is {}",
                basis.len(),
                structure.algebra_dim()
            )));
        }
        if values.len() != basis.len() {
            return Err(Error::validation(format!(
                "{} values for {} basis elements",
                values.len(),
                basis.len()
            )));
        }
        if let Some(b) = basis.iter().find(|b| !b.structure().same_algebra(&structure)) {
            return Err(Error::validation(format!(
                "basis element of {} in a state over {}",
                b.structure(),
                structure
            )));
        }
        Ok(Self {
            structure,
            form: StateForm::Values { basis, values },
        })
    }

    /// Values on the standard matrix-unit basis.
    pub fn from_standard_values(structure: BlockStructure, values: Vec<C<T>>) -> Result<Self> {
        let basis = AlgebraElement::standard_basis(&structure);
        Self::from_values(structure, basis, values)
    }

    pub fn canonical(structure: BlockStructure, form: CanonicalForm<T>, tol: T) -> Result<Self> {
        form.validate(&structure, tol)?;
        Ok(Self {
            structure,
            form: StateForm::Canonical(form),
        })
    }

    pub fn structure(&self) -> &BlockStructure {
        &self.structure
    }

    pub fn form(&self) -> &StateForm<T> {
        &self.form
    }

    /// Blockwise `Dᵢ = pᵢ ρᵢ`: the representative in the multiplicity-free
    /// representation, so that `ω(A) = Σᵢ Tr(Dᵢ Aᵢ)`.
    pub fn weighted_parts(&self) -> Result<Vec<CMatrix<T>>> {
        match &self.form {
            StateForm::Canonical(cf) => Ok(cf.weighted_parts(&self.structure)),
            StateForm::Values { .. } => {
                let free = self.structure.multiplicity_free();
                let rho = riesz_representative(self, &free)?;
                let (el, _) = AlgebraElement::from_embedded(&free, &rho)?;
                Ok(el.into_parts())
            }
        }
    }

    /// `ω(A)`.
    pub fn evaluate(&self, a: &AlgebraElement<T>) -> Result<C<T>> {
        if !a.structure().same_algebra(&self.structure) {
            return Err(Error::validation(format!(
                "evaluating a state over {} on an element of {}",
                self.structure,
                a.structure()
            )));
        }
        Ok(evaluate_parts(&self.weighted_parts()?, a))
    }

    /// `ω(Eₖ)` on the standard basis.
    pub fn standard_values(&self) -> Result<Vec<C<T>>> {
        let parts = self.weighted_parts()?;
        Ok(AlgebraElement::standard_basis(&self.structure)
            .iter()
            .map(|e| evaluate_parts(&parts, e))
            .collect())
    }
}

fn evaluate_parts<T: Real>(parts: &[CMatrix<T>], a: &AlgebraElement<T>) -> C<T> {
    parts
        .iter()
        .zip(a.parts())
        .fold(C::new(T::zero(), T::zero()), |acc, (d, x)| acc + (d * x).trace())
}

/// Solves the Gram system `G c = conj(ω)` with `Gₖₗ = Tr(Bₖ† Bₗ)` for the
/// embedded basis, giving `ρ = Σ cₗ Bₗ` with `Tr(ρ† Bₖ) = ω(Bₖ)`.
fn riesz_representative<T: Real>(omega: &StateFunctional<T>, rep: &BlockStructure) -> Result<CMatrix<T>> {
    let StateForm::Values { basis, values } = &omega.form else {
        unreachable!("riesz_representative is only used for value-form states");
    };
    let embedded: Vec<CMatrix<T>> = basis
        .iter()
        .map(|b| b.embed_in(rep))
        .collect::<Result<_>>()?;
    riesz_solve(&embedded, values)
}

pub(crate) fn riesz_solve<T: Real>(embedded: &[CMatrix<T>], values: &[C<T>]) -> Result<CMatrix<T>> {
    let k = embedded.len();
    let d = embedded.first().map(|b| b.nrows()).unwrap_or(0);
    let gram = CMatrix::from_fn(k, k, |i, j| embedded[i].dotc(&embedded[j]));
    let rhs = CVector::from_iterator(k, values.iter().map(|v| v.conj()));
    let chol = gram
        .cholesky()
        .ok_or_else(|| Error::internal("Gram matrix of the declared basis is singular"))?;
    let coef = chol.solve(&rhs);
    let mut rho = CMatrix::zeros(d, d);
    for (b, w) in embedded.iter().zip(coef.iter()) {
        rho += b * *w;
    }
    Ok(rho)
}

/// Functional `A ↦ Tr(ρ · embed(A))` for `A` in the algebra represented by `alg`.
pub fn state_from_density<T: Real>(rho: &DensityMatrix<T>, alg: &BlockStructure) -> Result<StateFunctional<T>> {
    if rho.dim() != alg.ambient_dim() {
        return Err(Error::validation(format!(
            "density matrix of dimension {} for ambient dimension {}",
            rho.dim(),
            alg.ambient_dim()
        )));
    }
    let basis = AlgebraElement::standard_basis(alg);
    let values = basis
        .iter()
        .map(|e| (rho.matrix() * e.embed()).trace())
        .collect();
    StateFunctional::from_values(alg.clone(), basis, values)
}

/// The unique density matrix inside the embedded algebra reproducing `ω`.
pub fn representative_density<T: Real>(omega: &StateFunctional<T>, alg: &BlockStructure) -> Result<DensityMatrix<T>> {
    if !alg.same_algebra(omega.structure()) {
        return Err(Error::validation(format!(
            "state over {} represented on {}",
            omega.structure(),
            alg
        )));
    }
    let raw = match &omega.form {
        StateForm::Canonical(cf) => cf.reconstruct(alg),
        StateForm::Values { .. } => riesz_representative(omega, alg)?,
    };
    let rho = hermitize(&raw);
    let tol = state_tol(alg.ambient_dim());
    let tr = rho.trace().re;
    if abs(tr - T::one()) > tol {
        return Err(Error::not_a_state(format!(
            "ω(𝕀) = {}, expected 1",
            tr.to_f64_lossy()
        )));
    }
    let vals = eigvalsh(&rho)?;
    if let Some(&min) = vals.last() {
        if min < -tol {
            return Err(Error::not_a_state(format!(
                "representative has negative eigenvalue {:e}",
                min.to_f64_lossy()
            )));
        }
    }
    Ok(DensityMatrix { matrix: rho })
}

/// Splits a density matrix of the embedded algebra into `(p, ρᵢ)`.
pub fn canonical_form<T: Real>(rho_omega: &DensityMatrix<T>, alg: &BlockStructure) -> Result<CanonicalForm<T>> {
    let tol = state_tol(alg.ambient_dim());
    canonical_form_with_tol(rho_omega, alg, tol)
}

pub fn canonical_form_with_tol<T: Real>(
    rho_omega: &DensityMatrix<T>,
    alg: &BlockStructure,
    tol: T,
) -> Result<CanonicalForm<T>> {
    let (el, residual) = AlgebraElement::from_embedded(alg, rho_omega.matrix())?;
    if residual > tol {
        return Err(Error::validation(format!(
            "matrix lies outside the embedded algebra (projection residual {:e})",
            residual.to_f64_lossy()
        )));
    }
    let mut p = Vec::with_capacity(alg.len());
    let mut rhos = Vec::with_capacity(alg.len());
    for (x, b) in el.parts().iter().zip(alg.blocks()) {
        let weight = x.trace().re * T::lit(b.multiplicity as f64);
        if weight <= tol {
            p.push(T::zero());
            rhos.push(None);
        } else {
            p.push(weight);
            rhos.push(Some(hermitize(&(x / c(x.trace().re)))));
        }
    }
    let total = p.iter().fold(T::zero(), |a, &x| a + x);
    for x in p.iter_mut() {
        *x /= total;
    }
    Ok(CanonicalForm { p, rhos })
}

/// Exactly one block carries weight and its `ρᵢ` has rank one.
pub fn is_pure<T: Real>(omega: &StateFunctional<T>, alg: &BlockStructure, tol: T) -> Result<bool> {
    let rho = representative_density(omega, alg)?;
    let cf = canonical_form(&rho, alg)?;
    let support: Vec<usize> = (0..cf.p.len()).filter(|&i| cf.p[i] > tol).collect();
    let [i] = support[..] else {
        return Ok(false);
    };
    let Some(r) = &cf.rhos[i] else {
        return Ok(false);
    };
    let vals = eigvalsh(r)?;
    Ok(vals.get(1).is_none_or(|&second| second < tol))
}

/// `Σ λₖ ωₖ`, as values on the standard basis.
pub fn convex_combine<T: Real>(states: &[StateFunctional<T>], weights: &[T]) -> Result<StateFunctional<T>> {
    let first = states
        .first()
        .ok_or_else(|| Error::validation("no states to combine"))?;
    if states.len() != weights.len() {
        return Err(Error::validation(format!(
            "{} states with {} weights",
            states.len(),
            weights.len()
        )));
    }
    check_probability_vector(weights, T::default_tol())?;
    let structure = first.structure().clone();
    let mut acc = vec![C::new(T::zero(), T::zero()); structure.algebra_dim()];
    for (s, &w) in states.iter().zip(weights) {
        if !s.structure().same_algebra(&structure) {
            return Err(Error::validation(format!(
                "combining states over {} and {}",
                structure,
                s.structure()
            )));
        }
        for (a, v) in acc.iter_mut().zip(s.standard_values()?) {
            *a += v * w;
        }
    }
    StateFunctional::from_standard_values(structure, acc)
}
