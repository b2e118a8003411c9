//! Dense complex helpers shared by the algebra, state and GNS modules.

use nalgebra::{ComplexField, SymmetricEigen};

use crate::error::{Error, Result};
use crate::scalar::{abs, c, max, CMatrix, CVector, Real, C};

/// Hermitian eigendecomposition with eigenvalues sorted in descending order.
/// The eigenvector for `values[k]` is column `k` of the returned matrix.
pub fn eigh<T: Real>(m: &CMatrix<T>) -> Result<(Vec<T>, CMatrix<T>)> {
    if !m.is_square() {
        return Err(Error::validation(format!(
            "eigendecomposition of non-square {}x{} matrix",
            m.nrows(),
            m.ncols()
        )));
    }
    let n = m.nrows();
    if n == 0 {
        return Ok((Vec::new(), CMatrix::zeros(0, 0)));
    }
    let h = hermitize(m);
    let eig = SymmetricEigen::try_new(h, T::default_epsilon(), 0)
        .ok_or_else(|| Error::internal("Hermitian eigensolver did not converge"))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[b]
            .partial_cmp(&eig.eigenvalues[a])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    Ok((values, vectors))
}

/// Eigenvalues only, descending.
pub fn eigvalsh<T: Real>(m: &CMatrix<T>) -> Result<Vec<T>> {
    eigh(m).map(|(v, _)| v)
}

pub fn hermitize<T: Real>(m: &CMatrix<T>) -> CMatrix<T> {
    (m + m.adjoint()) * c(T::lit(0.5))
}

/// Frobenius norm of the anti-Hermitian part.
pub fn hermitian_defect<T: Real>(m: &CMatrix<T>) -> T {
    (m - m.adjoint()).norm() * T::lit(0.5)
}

pub fn trace<T: Real>(m: &CMatrix<T>) -> C<T> {
    m.trace()
}

/// Hilbert–Schmidt inner product `Tr(A† B)`.
pub fn hs_inner<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> C<T> {
    a.dotc(b)
}

pub fn kron<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> CMatrix<T> {
    a.kronecker(b)
}

pub fn identity<T: Real>(n: usize) -> CMatrix<T> {
    CMatrix::identity(n, n)
}

/// Trace over the second factor of `ℂⁿ ⊗ ℂᵐ` (index `a·m + b`).
pub fn partial_trace_second<T: Real>(x: &CMatrix<T>, n: usize, m: usize) -> CMatrix<T> {
    debug_assert_eq!(x.nrows(), n * m);
    CMatrix::from_fn(n, n, |a, a2| {
        (0..m).fold(C::new(T::zero(), T::zero()), |acc, b| {
            acc + x[(a * m + b, a2 * m + b)]
        })
    })
}

/// Trace over the first factor of `ℂⁿ ⊗ ℂᵐ` (index `a·m + b`).
pub fn partial_trace_first<T: Real>(x: &CMatrix<T>, n: usize, m: usize) -> CMatrix<T> {
    debug_assert_eq!(x.nrows(), n * m);
    CMatrix::from_fn(m, m, |b, b2| {
        (0..n).fold(C::new(T::zero(), T::zero()), |acc, a| {
            acc + x[(a * m + b, a * m + b2)]
        })
    })
}

/// Largest absolute eigenvalue of a Hermitian matrix.
pub fn hermitian_norm<T: Real>(m: &CMatrix<T>) -> Result<T> {
    let vals = eigvalsh(m)?;
    Ok(vals.iter().fold(T::zero(), |acc, &v| max(acc, abs(v))))
}

/// Groups descending-sorted values: consecutive gaps below `threshold` join the
/// same cluster. Returns index ranges into `values`.
pub fn cluster_sorted<T: Real>(values: &[T], threshold: T) -> Vec<std::ops::Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for k in 1..=values.len() {
        if k == values.len() || abs(values[k - 1] - values[k]) >= threshold {
            if k > start {
                out.push(start..k);
            }
            start = k;
        }
    }
    out
}

/// Incrementally grown orthonormal (Hilbert–Schmidt) family of matrices.
///
/// Candidates are reduced by modified Gram–Schmidt with one reorthogonalization
/// pass; within a batch the largest residual is accepted first (column
/// pivoting) and the rest are updated against it.
#[derive(Clone, Debug)]
pub struct SpanBuilder<T: Real> {
    rows: usize,
    cols: usize,
    vectors: Vec<CMatrix<T>>,
}

impl<T: Real> SpanBuilder<T> {
    pub fn new(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            vectors: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[CMatrix<T>] {
        &self.vectors
    }

    pub fn into_vectors(self) -> Vec<CMatrix<T>> {
        self.vectors
    }

    pub fn is_full(&self) -> bool {
        self.vectors.len() >= self.rows * self.cols
    }

    fn reduce(&self, x: &mut CMatrix<T>) {
        for _ in 0..2 {
            for q in &self.vectors {
                let coef = q.dotc(x);
                *x -= q * coef;
            }
        }
    }

    /// Adds the residual directions of `candidates` whose norm exceeds
    /// `cutoff`. Returns the indices (into `vectors()`) of accepted elements.
    pub fn extend_pivoted(&mut self, candidates: Vec<CMatrix<T>>, cutoff: T) -> Vec<usize> {
        let mut residuals: Vec<CMatrix<T>> = candidates
            .into_iter()
            .map(|mut x| {
                self.reduce(&mut x);
                x
            })
            .collect();
        let mut accepted = Vec::new();
        loop {
            if self.is_full() || residuals.is_empty() {
                break;
            }
            let (best, best_norm) = residuals
                .iter()
                .enumerate()
                .map(|(k, r)| (k, r.norm()))
                .fold((0, T::zero()), |acc, x| if x.1 > acc.1 { x } else { acc });
            if best_norm <= cutoff {
                break;
            }
            let mut q = residuals.swap_remove(best);
            // Second pass against the current family before normalizing.
            self.reduce(&mut q);
            let qn = q.norm();
            if qn <= cutoff {
                continue;
            }
            q /= c(qn);
            for r in residuals.iter_mut() {
                let coef = q.dotc(r);
                *r -= &q * coef;
            }
            accepted.push(self.vectors.len());
            self.vectors.push(q);
        }
        accepted
    }

    /// Frobenius norm of `x` minus its orthogonal projection onto the span.
    pub fn residual(&self, x: &CMatrix<T>) -> T {
        let mut y = x.clone();
        self.reduce(&mut y);
        y.norm()
    }
}

/// Orthonormal basis of `{X : X Bₖ = Bₖ X  ∀k}` for square `d×d` matrices,
/// from the null space of `Σₖ Lₖ† Lₖ` with `Lₖ vec(X) = vec(Bₖ X − X Bₖ)`.
///
/// Eigenvalues at or below `tol · max(λ_max, Σ‖Bₖ‖²)` count as null.
pub fn commuting_matrices<T: Real>(ops: &[CMatrix<T>], d: usize, tol: T) -> Result<Vec<CMatrix<T>>> {
    let dd = d * d;
    let eye = identity::<T>(d);
    let mut s_left = CMatrix::<T>::zeros(d, d);
    let mut s_right = CMatrix::<T>::zeros(d, d);
    let mut cross = CMatrix::<T>::zeros(dd, dd);
    for b in ops {
        if b.nrows() != d || b.ncols() != d {
            return Err(Error::validation(format!(
                "operator of shape {}x{} in a {d}-dimensional family",
                b.nrows(),
                b.ncols()
            )));
        }
        s_left += b.adjoint() * b;
        let bc = b.map(|z| z.conj());
        s_right += &bc * b.transpose();
        cross += kron(&bc, b);
    }
    let gram = kron(&eye, &s_left) + kron(&s_right, &eye) - &cross - cross.adjoint();
    let (vals, vecs) = eigh(&gram)?;
    // Scale by the operators themselves, not the top eigenvalue: for a family
    // of scalars the whole spectrum is rounding noise.
    let scale = ops.iter().fold(T::zero(), |a, b| a + b.norm_squared());
    let top = vals.first().copied().unwrap_or_else(T::zero);
    let cutoff = if scale > T::zero() {
        tol * max(top, scale)
    } else {
        T::max_value().unwrap_or_else(T::one)
    };
    let mut out = Vec::new();
    for (k, &v) in vals.iter().enumerate() {
        if v <= cutoff {
            let col: CVector<T> = vecs.column(k).into_owned();
            out.push(CMatrix::from_column_slice(d, d, col.as_slice()));
        }
    }
    Ok(out)
}

/// `‖U†U − 𝕀‖_F` for a square matrix.
pub fn unitarity_defect<T: Real>(u: &CMatrix<T>) -> T {
    let n = u.ncols();
    (u.adjoint() * u - identity::<T>(n)).norm()
}

pub fn real_part<T: Real>(z: C<T>) -> T {
    z.re
}

pub fn modulus<T: Real>(z: C<T>) -> T {
    ComplexField::modulus(z)
}
