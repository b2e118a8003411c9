#![allow(dead_code)]

use cstar_entropy::{BlockStructure, CMatrix64, CanonicalForm, StateForm, StateFunctional64, C};

/// `−Σ p log p` evaluated directly.
pub fn h(p: &[f64]) -> f64 {
    p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.ln()).sum()
}

/// Spectrum through nalgebra's own Hermitian eigensolver.
pub fn spectrum(m: &CMatrix64) -> Vec<f64> {
    let herm = (m + m.adjoint()) * C::new(0.5, 0.0);
    herm.symmetric_eigenvalues().iter().copied().collect()
}

pub fn svn(m: &CMatrix64) -> f64 {
    h(&spectrum(m).iter().map(|&x| x.max(0.0)).collect::<Vec<_>>())
}

/// `H(p) + Σ pᵢ S_VN(ρᵢ)` straight from a canonical form.
pub fn canonical_entropy(cf: &CanonicalForm<f64>) -> f64 {
    let mut s = h(&cf.p);
    for (p, r) in cf.p.iter().zip(&cf.rhos) {
        if let Some(r) = r {
            s += p * svn(r);
        }
    }
    s
}

pub fn canonical_of(omega: &StateFunctional64) -> &CanonicalForm<f64> {
    match omega.form() {
        StateForm::Canonical(cf) => cf,
        StateForm::Values { .. } => panic!("state was not built from a canonical form"),
    }
}

/// Embedding of `⊕ pᵢ ρᵢ ⊗ 𝕀/mᵢ` assembled by hand.
pub fn density_from_canonical(cf: &CanonicalForm<f64>, s: &BlockStructure) -> CMatrix64 {
    let d = s.ambient_dim();
    let mut out = CMatrix64::zeros(d, d);
    let mut off = 0;
    for (i, b) in s.blocks().iter().enumerate() {
        let size = b.dim * b.multiplicity;
        if let Some(r) = &cf.rhos[i] {
            let eye = CMatrix64::identity(b.multiplicity, b.multiplicity) * C::new(cf.p[i] / b.multiplicity as f64, 0.0);
            out.view_mut((off, off), (size, size)).copy_from(&r.kronecker(&eye));
        }
        off += size;
    }
    out
}

pub fn diag(v: &[f64]) -> CMatrix64 {
    CMatrix64::from_fn(v.len(), v.len(), |i, j| C::new(if i == j { v[i] } else { 0.0 }, 0.0))
}
