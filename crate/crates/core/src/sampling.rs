//! Seeded random draws: Gaussian matrices, Haar unitaries, random block
//! structures, densities and states.
//!
//! Every stream comes from a ChaCha generator keyed by `(seed, stream)`, so a
//! draw depends only on those two numbers and never on scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::algebra::{AlgebraElement, BlockStructure};
use crate::scalar::{c, CMatrix, CVector, Real, C};
use crate::states::{CanonicalForm, StateFunctional};

pub type SeededRng = ChaCha8Rng;

pub fn rng_for(seed: u64, stream: u64) -> SeededRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn gaussian<T: Real, R: Rng + ?Sized>(rng: &mut R) -> T {
    let x: f64 = rng.sample(StandardNormal);
    T::lit(x)
}

/// Entries `(x + iy)/√2` with `x, y` standard normal.
pub fn complex_gaussian<T: Real, R: Rng + ?Sized>(rng: &mut R) -> C<T> {
    let s = T::lit(std::f64::consts::FRAC_1_SQRT_2);
    C::new(gaussian::<T, R>(rng) * s, gaussian::<T, R>(rng) * s)
}

pub fn complex_gaussian_matrix<T: Real, R: Rng + ?Sized>(
    rng: &mut R,
    rows: usize,
    cols: usize,
) -> CMatrix<T> {
    // Row-major fill so the draw order does not depend on storage layout.
    let mut m = CMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m[(i, j)] = complex_gaussian(rng);
        }
    }
    m
}

/// Haar-distributed `n×n` unitary: QR of a complex Gaussian matrix with the
/// phases of `diag(R)` moved into `Q`.
pub fn haar_unitary<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix<T> {
    let z = complex_gaussian_matrix::<T, R>(rng, n, n);
    let qr = z.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let d = r[(j, j)];
        let m = crate::linalg::modulus(d);
        if m > T::zero() {
            let phase = d / c(m);
            let mut col = q.column_mut(j);
            col *= phase;
        }
    }
    q
}

pub fn random_unit_vector<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> CVector<T> {
    let v = CVector::from_fn(n, |_, _| complex_gaussian::<T, R>(rng));
    let norm = v.norm();
    v / c(norm)
}

/// Random density matrix of the given rank: `G G† / Tr(G G†)` with `G` an
/// `n × rank` complex Gaussian matrix.
pub fn random_density<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize, rank: usize) -> CMatrix<T> {
    let g = complex_gaussian_matrix::<T, R>(rng, n, rank.max(1));
    let rho = &g * g.adjoint();
    let tr = rho.trace().re;
    crate::linalg::hermitize(&(rho / c(tr)))
}

/// Random Hermitian matrix with Gaussian entries.
pub fn random_hermitian<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix<T> {
    crate::linalg::hermitize(&complex_gaussian_matrix::<T, R>(rng, n, n))
}

/// Random block structure with ambient dimension at most `max_ambient`.
pub fn random_block_structure<R: Rng + ?Sized>(
    rng: &mut R,
    max_ambient: usize,
    max_dim: usize,
    max_multiplicity: usize,
) -> BlockStructure {
    assert!(max_ambient >= 1 && max_dim >= 1 && max_multiplicity >= 1);
    let mut blocks = Vec::new();
    let mut used = 0;
    let target_blocks = rng.random_range(1..=4usize);
    while blocks.len() < target_blocks {
        let room = max_ambient - used;
        if room == 0 {
            break;
        }
        let n = rng.random_range(1..=max_dim.min(room));
        let m_cap = max_multiplicity.min(room / n).max(1);
        let m = rng.random_range(1..=m_cap);
        used += n * m;
        blocks.push((n, m));
    }
    BlockStructure::new(blocks).expect("positive block sizes")
}

/// Random probability vector from normalized exponentials.
pub fn random_probabilities<T: Real, R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<T> {
    let raw: Vec<f64> = (0..len)
        .map(|_| -(1.0 - rng.random::<f64>()).ln())
        .collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|x| T::lit(x / total)).collect()
}

/// Random state in canonical form: full-support sector weights and blockwise
/// random densities of random rank.
pub fn random_state<T: Real, R: Rng + ?Sized>(
    rng: &mut R,
    structure: &BlockStructure,
) -> StateFunctional<T> {
    let p = random_probabilities::<T, R>(rng, structure.len());
    let rhos = structure
        .blocks()
        .iter()
        .map(|b| {
            let rank = rng.random_range(1..=b.dim);
            Some(random_density::<T, R>(rng, b.dim, rank))
        })
        .collect();
    StateFunctional::canonical(
        structure.clone(),
        CanonicalForm { p, rhos },
        T::default_tol(),
    )
    .expect("random canonical form is valid")
}

/// Random pure state: one block, one random unit vector.
pub fn random_pure_state<T: Real, R: Rng + ?Sized>(
    rng: &mut R,
    structure: &BlockStructure,
) -> StateFunctional<T> {
    let k = rng.random_range(0..structure.len());
    let mut p = vec![T::zero(); structure.len()];
    p[k] = T::one();
    let rhos = structure
        .blocks()
        .iter()
        .enumerate()
        .map(|(i, b)| {
            (i == k).then(|| {
                let v = random_unit_vector::<T, R>(rng, b.dim);
                &v * v.adjoint()
            })
        })
        .collect();
    StateFunctional::canonical(structure.clone(), CanonicalForm { p, rhos }, T::default_tol())
        .expect("random pure state is valid")
}

/// Random element with complex Gaussian parts.
pub fn random_element<T: Real, R: Rng + ?Sized>(
    rng: &mut R,
    structure: &BlockStructure,
) -> AlgebraElement<T> {
    let parts = structure
        .blocks()
        .iter()
        .map(|b| complex_gaussian_matrix::<T, R>(rng, b.dim, b.dim))
        .collect();
    AlgebraElement::new(structure.clone(), parts).expect("shapes match structure")
}
