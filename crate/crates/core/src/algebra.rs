//! Finite-dimensional C*-algebras as block structures `⊕ᵢ M_{nᵢ} ⊗ 𝕀_{mᵢ}`.
//!
//! Inside block `i` the ambient space is `Hᵢ ⊗ ℂ^{mᵢ}` with basis index
//! `a·mᵢ + b`, so an element acts as `Xᵢ ⊗ 𝕀` (the Kronecker product
//! `kron(Xᵢ, 𝕀_{mᵢ})`) and the commutant is `𝕀 ⊗ M_{mᵢ}`.

use std::fmt;
use std::ops::Range;

use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{self, cluster_sorted, commuting_matrices, eigh, kron, SpanBuilder};
use crate::sampling::{gaussian, rng_for};
use crate::scalar::{c, max, CMatrix, CVector, Real, C};

/// One summand `M_n ⊗ 𝕀_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    pub dim: usize,
    pub multiplicity: usize,
}

impl Block {
    pub fn ambient_dim(&self) -> usize {
        self.dim * self.multiplicity
    }
}

/// Ordered list of blocks `(nᵢ, mᵢ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BlockStructure {
    blocks: Vec<Block>,
}

impl BlockStructure {
    pub fn new(blocks: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let blocks: Vec<Block> = blocks
            .into_iter()
            .map(|(dim, multiplicity)| Block { dim, multiplicity })
            .collect();
        if blocks.is_empty() {
            return Err(Error::validation("a block structure needs at least one block"));
        }
        for (i, b) in blocks.iter().enumerate() {
            if b.dim == 0 || b.multiplicity == 0 {
                return Err(Error::validation(format!(
                    "block {i} has dimension {} and multiplicity {}; both must be positive",
                    b.dim, b.multiplicity
                )));
            }
        }
        Ok(Self { blocks })
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> Block {
        self.blocks[i]
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// `Σ nᵢ mᵢ`
    pub fn ambient_dim(&self) -> usize {
        self.blocks.iter().map(Block::ambient_dim).sum()
    }

    /// `Σ nᵢ²`
    pub fn algebra_dim(&self) -> usize {
        self.blocks.iter().map(|b| b.dim * b.dim).sum()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.dim).collect()
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.multiplicity).collect()
    }

    pub fn is_multiplicity_free(&self) -> bool {
        self.blocks.iter().all(|b| b.multiplicity == 1)
    }

    /// Same blocks with every multiplicity set to 1.
    pub fn multiplicity_free(&self) -> Self {
        Self {
            blocks: self
                .blocks
                .iter()
                .map(|b| Block {
                    dim: b.dim,
                    multiplicity: 1,
                })
                .collect(),
        }
    }

    /// Whether both describe the same abstract algebra (same ordered block
    /// dimensions), possibly represented with different multiplicities.
    pub fn same_algebra(&self, other: &Self) -> bool {
        self.len() == other.len()
            && self.blocks.iter().zip(&other.blocks).all(|(a, b)| a.dim == b.dim)
    }

    /// Ambient index range occupied by block `i`.
    pub fn ambient_range(&self, i: usize) -> Range<usize> {
        let start: usize = self.blocks[..i].iter().map(Block::ambient_dim).sum();
        start..start + self.blocks[i].ambient_dim()
    }

    /// Offset of block `i` in the coefficient vector of the standard basis.
    pub fn coefficient_range(&self, i: usize) -> Range<usize> {
        let start: usize = self.blocks[..i].iter().map(|b| b.dim * b.dim).sum();
        start..start + self.blocks[i].dim * self.blocks[i].dim
    }

    /// Sorted `(n, m)` pairs, for comparisons up to block order.
    pub fn sorted_pairs(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = self.blocks.iter().map(|b| (b.dim, b.multiplicity)).collect();
        v.sort_unstable();
        v
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.blocks.iter().map(|b| (b.dim, b.multiplicity)).collect()
    }
}

impl fmt::Display for BlockStructure {
    /// Runs of equal blocks are written `(n,m)×k`: `[(2,2), (1,1)×3]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        let mut i = 0;
        let mut first = true;
        while i < self.blocks.len() {
            let b = self.blocks[i];
            let mut j = i + 1;
            while j < self.blocks.len() && self.blocks[j] == b {
                j += 1;
            }
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "({},{})", b.dim, b.multiplicity)?;
            if j - i > 1 {
                write!(f, "×{}", j - i)?;
            }
            i = j;
        }
        write!(f, "]")
    }
}

pub fn make_algebra(blocks: &[(usize, usize)]) -> Result<BlockStructure> {
    BlockStructure::new(blocks.iter().copied())
}

/// Element of the abstract algebra: one `nᵢ×nᵢ` matrix per block.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement<T: Real> {
    structure: BlockStructure,
    parts: Vec<CMatrix<T>>,
}

impl<T: Real> AlgebraElement<T> {
    pub fn new(structure: BlockStructure, parts: Vec<CMatrix<T>>) -> Result<Self> {
        if parts.len() != structure.len() {
            return Err(Error::validation(format!(
                "{} parts for {} blocks",
                parts.len(),
                structure.len()
            )));
        }
        for (i, (p, b)) in parts.iter().zip(structure.blocks()).enumerate() {
            if p.nrows() != b.dim || p.ncols() != b.dim {
                return Err(Error::validation(format!(
                    "part {i} has shape {}x{}, block dimension is {}",
                    p.nrows(),
                    p.ncols(),
                    b.dim
                )));
            }
        }
        Ok(Self { structure, parts })
    }

    pub fn zero(structure: &BlockStructure) -> Self {
        let parts = structure.blocks().iter().map(|b| CMatrix::zeros(b.dim, b.dim)).collect();
        Self {
            structure: structure.clone(),
            parts,
        }
    }

    pub fn identity(structure: &BlockStructure) -> Self {
        let parts = structure.blocks().iter().map(|b| linalg::identity(b.dim)).collect();
        Self {
            structure: structure.clone(),
            parts,
        }
    }

    /// Matrix unit `E_{row,col}` in block `block`.
    pub fn matrix_unit(structure: &BlockStructure, block: usize, row: usize, col: usize) -> Self {
        let mut e = Self::zero(structure);
        e.parts[block][(row, col)] = c(T::one());
        e
    }

    /// Matrix units, block by block, row-major inside each block. Coefficients
    /// in this basis are the entries of the parts.
    pub fn standard_basis(structure: &BlockStructure) -> Vec<Self> {
        let mut out = Vec::with_capacity(structure.algebra_dim());
        for (i, b) in structure.blocks().iter().enumerate() {
            for r in 0..b.dim {
                for col in 0..b.dim {
                    out.push(Self::matrix_unit(structure, i, r, col));
                }
            }
        }
        out
    }

    pub fn structure(&self) -> &BlockStructure {
        &self.structure
    }

    pub fn parts(&self) -> &[CMatrix<T>] {
        &self.parts
    }

    pub fn part(&self, i: usize) -> &CMatrix<T> {
        &self.parts[i]
    }

    pub fn into_parts(self) -> Vec<CMatrix<T>> {
        self.parts
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.structure.same_algebra(&other.structure) {
            Ok(())
        } else {
            Err(Error::validation(format!(
                "elements of different algebras {} and {}",
                self.structure, other.structure
            )))
        }
    }

    pub fn adjoint(&self) -> Self {
        Self {
            structure: self.structure.clone(),
            parts: self.parts.iter().map(|p| p.adjoint()).collect(),
        }
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self {
            structure: self.structure.clone(),
            parts: self.parts.iter().zip(&other.parts).map(|(a, b)| a * b).collect(),
        })
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self {
            structure: self.structure.clone(),
            parts: self.parts.iter().zip(&other.parts).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, s: C<T>) -> Self {
        Self {
            structure: self.structure.clone(),
            parts: self.parts.iter().map(|p| p * s).collect(),
        }
    }

    /// `self − s·𝕀`
    pub fn shift(&self, s: C<T>) -> Self {
        Self {
            structure: self.structure.clone(),
            parts: self
                .parts
                .iter()
                .map(|p| p - linalg::identity::<T>(p.nrows()) * s)
                .collect(),
        }
    }

    pub fn linear_combination(structure: &BlockStructure, terms: &[(C<T>, &Self)]) -> Result<Self> {
        let mut acc = Self::zero(structure);
        for (coef, x) in terms {
            acc.check_compatible(x)?;
            for (a, b) in acc.parts.iter_mut().zip(&x.parts) {
                *a += b * *coef;
            }
        }
        Ok(acc)
    }

    /// Frobenius norm of the parts.
    pub fn norm(&self) -> T {
        self.parts
            .iter()
            .fold(T::zero(), |acc, p| acc + p.norm_squared())
            .sqrt()
    }

    pub fn self_adjoint_defect(&self) -> T {
        self.parts
            .iter()
            .fold(T::zero(), |acc, p| acc + (p - p.adjoint()).norm_squared())
            .sqrt()
    }

    pub fn is_self_adjoint(&self, tol: T) -> bool {
        self.self_adjoint_defect() <= tol
    }

    /// Block-diagonal matrix `⊕ᵢ Xᵢ ⊗ 𝕀_{mᵢ}` on the ambient space.
    pub fn embed(&self) -> CMatrix<T> {
        embed_parts(&self.structure, &self.parts)
    }

    /// Embedding into a representation of the same algebra with other
    /// multiplicities.
    pub fn embed_in(&self, rep: &BlockStructure) -> Result<CMatrix<T>> {
        if !rep.same_algebra(&self.structure) {
            return Err(Error::validation(format!(
                "cannot embed an element of {} into {}",
                self.structure, rep
            )));
        }
        Ok(embed_parts(rep, &self.parts))
    }

    /// Coefficients in [`standard_basis`](Self::standard_basis).
    pub fn coefficients(&self) -> CVector<T> {
        let mut v = CVector::zeros(self.structure.algebra_dim());
        let mut k = 0;
        for p in &self.parts {
            for r in 0..p.nrows() {
                for col in 0..p.ncols() {
                    v[k] = p[(r, col)];
                    k += 1;
                }
            }
        }
        v
    }

    pub fn from_coefficients(structure: &BlockStructure, coefs: &[C<T>]) -> Result<Self> {
        if coefs.len() != structure.algebra_dim() {
            return Err(Error::validation(format!(
                "{} coefficients for an algebra of dimension {}",
                coefs.len(),
                structure.algebra_dim()
            )));
        }
        let mut k = 0;
        let parts = structure
            .blocks()
            .iter()
            .map(|b| {
                let p = CMatrix::from_fn(b.dim, b.dim, |r, col| coefs[k + r * b.dim + col]);
                k += b.dim * b.dim;
                p
            })
            .collect();
        Ok(Self {
            structure: structure.clone(),
            parts,
        })
    }

    /// Reads an element off an ambient matrix: `Xᵢ = Tr_{ℂ^{mᵢ}}(diagonal block)/mᵢ`.
    /// Returns the element and `‖x − embed(X)‖_F`, the distance to the
    /// embedded algebra.
    pub fn from_embedded(structure: &BlockStructure, x: &CMatrix<T>) -> Result<(Self, T)> {
        let d = structure.ambient_dim();
        if x.nrows() != d || x.ncols() != d {
            return Err(Error::validation(format!(
                "matrix of shape {}x{} for ambient dimension {d}",
                x.nrows(),
                x.ncols()
            )));
        }
        let parts: Vec<CMatrix<T>> = structure
            .blocks()
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let r = structure.ambient_range(i);
                let blk = x.view((r.start, r.start), (r.len(), r.len())).into_owned();
                linalg::partial_trace_second(&blk, b.dim, b.multiplicity)
                    / c(T::lit(b.multiplicity as f64))
            })
            .collect();
        let el = Self {
            structure: structure.clone(),
            parts,
        };
        let residual = (x - el.embed()).norm();
        Ok((el, residual))
    }
}

pub(crate) fn embed_parts<T: Real>(structure: &BlockStructure, parts: &[CMatrix<T>]) -> CMatrix<T> {
    let d = structure.ambient_dim();
    let mut out = CMatrix::zeros(d, d);
    for (i, (b, p)) in structure.blocks().iter().zip(parts).enumerate() {
        let r = structure.ambient_range(i);
        let blk = kron(p, &linalg::identity(b.multiplicity));
        out.view_mut((r.start, r.start), (r.len(), r.len())).copy_from(&blk);
    }
    out
}

/// Block structure found by [`block_decompose`] with its change of basis.
#[derive(Clone, Debug)]
pub struct Discovered<T: Real> {
    pub structure: BlockStructure,
    /// `W` with `W† · span · W = ⊕ᵢ M_{nᵢ} ⊗ 𝕀_{mᵢ}`.
    pub unitary: CMatrix<T>,
    /// Largest distance of a conjugated basis element from block form.
    pub residual: T,
}

/// Hilbert–Schmidt orthonormal basis of a concrete *-algebra of `d×d`
/// matrices.
#[derive(Clone, Debug)]
pub struct SubalgebraBasis<T: Real> {
    ambient_dim: usize,
    basis: Vec<CMatrix<T>>,
    discovered: Option<Discovered<T>>,
}

impl<T: Real> SubalgebraBasis<T> {
    /// Orthonormalizes `ops` without closing the span. The caller asserts the
    /// span is already a *-algebra.
    pub fn from_spanning(ambient_dim: usize, ops: &[CMatrix<T>], tol: T) -> Result<Self> {
        check_square_family(ambient_dim, ops)?;
        let largest = ops.iter().fold(T::zero(), |acc, x| max(acc, x.norm()));
        let mut sb = SpanBuilder::new(ambient_dim, ambient_dim);
        sb.extend_pivoted(ops.to_vec(), tol * largest);
        Ok(Self {
            ambient_dim,
            basis: sb.into_vectors(),
            discovered: None,
        })
    }

    /// Orthonormal basis of the embedding of `structure`: matrix units
    /// `E_{ab} ⊗ 𝕀_m / √m`.
    pub fn from_structure(structure: &BlockStructure) -> Self {
        let basis = AlgebraElement::<T>::standard_basis(structure)
            .into_iter()
            .zip(standard_basis_multiplicities(structure))
            .map(|(e, m)| e.embed() / c(T::lit(m as f64).sqrt()))
            .collect();
        Self {
            ambient_dim: structure.ambient_dim(),
            basis,
            discovered: None,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn elements(&self) -> &[CMatrix<T>] {
        &self.basis
    }

    pub fn discovered(&self) -> Option<&Discovered<T>> {
        self.discovered.as_ref()
    }

    pub fn with_discovered(mut self, d: Discovered<T>) -> Self {
        self.discovered = Some(d);
        self
    }

    /// Conjugates every element: `V X V†`.
    pub fn conjugated(&self, v: &CMatrix<T>) -> Self {
        Self {
            ambient_dim: self.ambient_dim,
            basis: self.basis.iter().map(|b| v * b * v.adjoint()).collect(),
            discovered: None,
        }
    }

    /// Distance of `x` from the span.
    pub fn residual(&self, x: &CMatrix<T>) -> T {
        let mut y = x.clone();
        for _ in 0..2 {
            for q in &self.basis {
                let coef = q.dotc(&y);
                y -= q * coef;
            }
        }
        y.norm()
    }

    /// Orthogonal projector onto the span, acting on column-major `vec(X)`.
    pub fn projector(&self) -> CMatrix<T> {
        let dd = self.ambient_dim * self.ambient_dim;
        let mut p = CMatrix::zeros(dd, dd);
        for b in &self.basis {
            let v = CVector::from_column_slice(b.as_slice());
            p += &v * v.adjoint();
        }
        p
    }

    /// Largest distance from the span of `Bₖ†` and `Bₖ Bₗ` over all pairs.
    pub fn closure_defect(&self) -> T {
        let mut worst = T::zero();
        for a in &self.basis {
            worst = max(worst, self.residual(&a.adjoint()));
            for b in &self.basis {
                worst = max(worst, self.residual(&(a * b)));
            }
        }
        worst
    }
}

fn standard_basis_multiplicities(structure: &BlockStructure) -> Vec<usize> {
    structure
        .blocks()
        .iter()
        .flat_map(|b| std::iter::repeat_n(b.multiplicity, b.dim * b.dim))
        .collect()
}

fn check_square_family<T: Real>(d: usize, ops: &[CMatrix<T>]) -> Result<()> {
    for (k, x) in ops.iter().enumerate() {
        if x.nrows() != d || x.ncols() != d {
            return Err(Error::validation(format!(
                "matrix {k} has shape {}x{}, expected {d}x{d}",
                x.nrows(),
                x.ncols()
            )));
        }
    }
    Ok(())
}

/// Smallest unital *-algebra containing `generators`.
///
/// Starting from `𝕀/√d`, the span is grown by left multiplication with an
/// orthonormal basis of `span(G ∪ G†)` until no new direction appears; the
/// span of all words in the generators and their adjoints is exactly that
/// closure. Directions with residual at most `tol · max(1, largest norm)` are
/// rejected.
pub fn generate_subalgebra<T: Real>(generators: &[CMatrix<T>], tol: T) -> Result<SubalgebraBasis<T>> {
    let first = generators
        .first()
        .ok_or_else(|| Error::validation("generator set is empty"))?;
    if !first.is_square() {
        return Err(Error::validation(format!(
            "generator 0 is not square ({}x{})",
            first.nrows(),
            first.ncols()
        )));
    }
    let d = first.nrows();
    check_square_family(d, generators)?;

    // Orthonormal multipliers spanning G ∪ G†.
    let largest = generators.iter().fold(T::zero(), |acc, g| max(acc, g.norm()));
    let mut mult = SpanBuilder::new(d, d);
    let mut raw: Vec<CMatrix<T>> = generators.to_vec();
    raw.extend(generators.iter().map(|g| g.adjoint()));
    mult.extend_pivoted(raw, tol * max(T::one(), largest));
    let multipliers = mult.into_vectors();

    let mut span = SpanBuilder::new(d, d);
    let unit = linalg::identity::<T>(d) / c(T::lit(d as f64).sqrt());
    let cutoff = tol;
    let mut frontier = span.extend_pivoted(vec![unit], cutoff);
    frontier.extend(span.extend_pivoted(multipliers.clone(), cutoff));

    let mut rounds = 0;
    while !frontier.is_empty() && !span.is_full() {
        rounds += 1;
        if rounds > d * d {
            return Err(Error::internal(format!(
                "subalgebra span did not stabilize within {} rounds; tolerance {:e} is too loose",
                d * d,
                tol.to_f64_lossy()
            )));
        }
        let mut next = Vec::new();
        for &k in &frontier {
            let q = span.vectors()[k].clone();
            let batch: Vec<CMatrix<T>> = multipliers.iter().map(|g| g * &q).collect();
            let batch_largest = batch.iter().fold(T::one(), |acc, x| max(acc, x.norm()));
            next.extend(span.extend_pivoted(batch, tol * batch_largest));
        }
        frontier = next;
    }
    Ok(SubalgebraBasis {
        ambient_dim: d,
        basis: span.into_vectors(),
        discovered: None,
    })
}

/// Orthonormal basis of the commutant `{X : X Bₖ = Bₖ X ∀k}`.
pub fn commutant<T: Real>(sub: &SubalgebraBasis<T>, tol: T) -> Result<SubalgebraBasis<T>> {
    let basis = commuting_matrices(sub.elements(), sub.ambient_dim(), tol)?;
    Ok(SubalgebraBasis {
        ambient_dim: sub.ambient_dim(),
        basis,
        discovered: None,
    })
}

/// Center `𝔄 ∩ 𝔄'`, computed as the commutant of `𝔄 ∪ 𝔄'`.
pub fn center<T: Real>(
    sub: &SubalgebraBasis<T>,
    comm: &SubalgebraBasis<T>,
    tol: T,
) -> Result<SubalgebraBasis<T>> {
    let mut ops = sub.elements().to_vec();
    ops.extend_from_slice(comm.elements());
    let basis = commuting_matrices(&ops, sub.ambient_dim(), tol)?;
    Ok(SubalgebraBasis {
        ambient_dim: sub.ambient_dim(),
        basis,
        discovered: None,
    })
}

const MAX_ATTEMPTS: u64 = 8;

fn random_self_adjoint<T: Real, R: Rng + ?Sized>(rng: &mut R, basis: &[CMatrix<T>], d: usize) -> CMatrix<T> {
    let mut acc = CMatrix::zeros(d, d);
    for b in basis {
        acc += linalg::hermitize(b) * c(gaussian::<T, R>(rng));
    }
    acc
}

struct Sector<T: Real> {
    dim: usize,
    multiplicity: usize,
    fingerprint: T,
    /// Ambient columns ordered `a·m + b`.
    columns: CMatrix<T>,
}

/// `X ↦ Σₖ Bₖ X Bₖ†` over the orthonormal basis. The map is self-adjoint and
/// positive with range exactly the commutant; on the algebra it lands in the
/// center.
pub fn twirl<T: Real>(sub: &SubalgebraBasis<T>, x: &CMatrix<T>) -> CMatrix<T> {
    let d = sub.ambient_dim();
    let mut out = CMatrix::zeros(d, d);
    for b in sub.elements() {
        out += b * x * b.adjoint();
    }
    out
}

/// Finds `W` with `W† · span(sub) · W = ⊕ᵢ M_{nᵢ} ⊗ 𝕀_{mᵢ}`.
///
/// The twirl of a random self-adjoint element of the span is central and
/// separates the sectors by its eigenvalue clusters. Inside each sector the
/// twirl of a random Hermitian matrix, `𝕀 ⊗ h`, splits the space into `m`
/// copies of `Hᵢ`, and the twirl of a random matrix supplies the intertwiners
/// that align the copies. Draws that produce inconsistent clusters are
/// resampled a bounded number of times.
///
/// Blocks are ordered by decreasing `n`, then by the central eigenvalue.
pub fn block_decompose<T: Real>(sub: &SubalgebraBasis<T>, tol: T, seed: u64) -> Result<Discovered<T>> {
    if sub.dim() == 0 {
        return Err(Error::validation("empty subalgebra basis"));
    }
    let mut best_residual = f64::INFINITY;
    let mut last_reason = String::from("no attempt made");
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = rng_for(seed, attempt);
        match try_decompose(sub, tol, &mut rng) {
            Ok(found) => {
                let residual_f = found.residual.to_f64_lossy();
                if found.residual <= tol.sqrt() {
                    return Ok(found);
                }
                best_residual = best_residual.min(residual_f);
                last_reason = "conjugated basis is not in block form".into();
            }
            Err(reason) => last_reason = reason,
        }
    }
    Err(Error::Decomposition {
        reason: format!("after {MAX_ATTEMPTS} attempts: {last_reason}"),
        residual: best_residual,
    })
}

fn try_decompose<T: Real, R: Rng + ?Sized>(
    sub: &SubalgebraBasis<T>,
    tol: T,
    rng: &mut R,
) -> std::result::Result<Discovered<T>, String> {
    let d = sub.ambient_dim();
    let z = twirl(sub, &random_self_adjoint(rng, sub.elements(), d));
    let (zvals, zvecs) = eigh(&z).map_err(|e| e.to_string())?;
    let znorm = zvals.iter().fold(T::zero(), |acc, &v| max(acc, crate::scalar::abs(v)));
    let clusters = cluster_sorted(&zvals, tol.sqrt() * znorm);
    let n_sectors = clusters.len();

    let mut sectors = Vec::with_capacity(n_sectors);
    for range in clusters {
        let ds = range.len();
        let v = zvecs.columns(range.start, ds).into_owned();
        let fingerprint = zvals[range.start];

        let h = twirl(sub, &crate::sampling::random_hermitian::<T, R>(rng, d));
        let hs = v.adjoint() * &h * &v;
        let (hvals, hvecs) = eigh(&hs).map_err(|e| e.to_string())?;
        let hnorm = hvals.iter().fold(T::zero(), |acc, &x| max(acc, crate::scalar::abs(x)));
        let copies = cluster_sorted(&hvals, tol.sqrt() * max(hnorm, T::default_epsilon()));
        let m = copies.len();
        let n = copies[0].len();
        if copies.iter().any(|r| r.len() != n) || n * m != ds {
            return Err(format!(
                "sector of dimension {ds} split into unequal copies {:?}",
                copies.iter().map(|r| r.len()).collect::<Vec<_>>()
            ));
        }

        // Copy 0 gets an arbitrary orthonormal basis; copies b > 0 receive its
        // image under P_b K P_0 for a random commutant element K, rescaled.
        let k = twirl(sub, &crate::sampling::complex_gaussian_matrix::<T, R>(rng, d, d));
        let ks = v.adjoint() * &k * &v;
        let e0 = hvecs.columns(copies[0].start, n).into_owned();
        let mut copy_bases: Vec<CMatrix<T>> = vec![e0.clone()];
        for r in &copies[1..] {
            let eb = hvecs.columns(r.start, n).into_owned();
            let img = &eb * (eb.adjoint() * &ks * &e0);
            let scale = img.norm() / T::lit(n as f64).sqrt();
            if scale <= tol.sqrt() * ks.norm() {
                return Err("degenerate intertwiner draw".into());
            }
            copy_bases.push(img / c(scale));
        }

        let mut columns = CMatrix::zeros(d, ds);
        for a in 0..n {
            for (b, basis) in copy_bases.iter().enumerate() {
                let col = &v * basis.column(a);
                columns.set_column(a * m + b, &col);
            }
        }
        sectors.push(Sector {
            dim: n,
            multiplicity: m,
            fingerprint,
            columns,
        });
    }

    sectors.sort_by(|a, b| {
        b.dim
            .cmp(&a.dim)
            .then(a.fingerprint.partial_cmp(&b.fingerprint).unwrap_or(std::cmp::Ordering::Equal))
    });

    let structure = BlockStructure::new(sectors.iter().map(|s| (s.dim, s.multiplicity)))
        .map_err(|e| e.to_string())?;
    if structure.algebra_dim() != sub.dim() || structure.ambient_dim() != d {
        return Err(format!(
            "dimension law fails: Σn² = {} vs dim = {}, Σnm = {} vs ambient = {d}",
            structure.algebra_dim(),
            sub.dim(),
            structure.ambient_dim()
        ));
    }
    let mut w = CMatrix::zeros(d, d);
    let mut col = 0;
    for s in &sectors {
        w.columns_mut(col, s.columns.ncols()).copy_from(&s.columns);
        col += s.columns.ncols();
    }

    let mut residual = linalg::unitarity_defect(&w);
    for b in sub.elements() {
        let y = w.adjoint() * b * &w;
        let (_, r) = AlgebraElement::from_embedded(&structure, &y).map_err(|e| e.to_string())?;
        residual = max(residual, r);
    }
    Ok(Discovered {
        structure,
        unitary: w,
        residual,
    })
}
