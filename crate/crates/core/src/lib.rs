//! Entropy of states over finite-dimensional C*-algebras.
//!
//! A finite-dimensional C*-algebra is described by its block structure
//! `⊕ᵢ M_{nᵢ} ⊗ 𝕀_{mᵢ}`. States over it have a unique representative density
//! matrix inside the algebra, and their entropy is the minimal Shannon entropy
//! over all decompositions into pure states:
//!
//! ```text
//! S(ω) = H(p) + Σᵢ pᵢ S_VN(ρᵢ)
//! ```
//!
//! where `(p, ρᵢ)` is the canonical form of the representative. The crate
//! provides
//!
//! - [`algebra`]: block structures, embedded elements, numerical closure,
//!   commutants and block-structure discovery;
//! - [`states`]: state functionals, representative density matrices and the
//!   canonical form;
//! - [`entropy`]: Shannon / von Neumann entropy and the state entropy;
//! - [`decomp`]: Schrödinger decompositions, majorization and a randomized
//!   infimum oracle;
//! - [`gns`]: the GNS representation and the entropy computed through it;
//! - [`thermo`]: definite values, Zeno sequences and the Einstein-gas ledger.
//!
//! All numerical code is generic over [`Real`] (`f32` or `f64`); the `*64`
//! aliases below are the usual entry points.

pub mod algebra;
pub mod decomp;
pub mod entropy;
pub mod error;
pub mod gns;
pub mod linalg;
pub mod sampling;
pub mod scalar;
pub mod states;
pub mod thermo;

pub use algebra::{
    block_decompose, commutant, generate_subalgebra, make_algebra, twirl, AlgebraElement, Block,
    BlockStructure, Discovered, SubalgebraBasis,
};
pub use decomp::{
    decomposition_entropy, doubly_stochastic_from_unitary, infimum_oracle, majorizes,
    schrodinger_decomposition, Component, Decomposition, DecompositionEntropy, Majorization,
    MajorizationVerdict, OracleOutcome, SchrodingerDecomposition,
};
pub use entropy::{minimal_decomposition, shannon, state_entropy, von_neumann, EntropyReport};
pub use error::{Error, Result};
pub use gns::{
    gns_block_decompose, gns_commutant_functional, gns_construct, gns_state_entropy,
    identity_decomposition_random, is_irreducible, GnsBlocks, GnsData, IdentityDecomposition,
    IdentityItem,
};
pub use scalar::{CMatrix, CVector, Real, C};
pub use states::{
    canonical_form, convex_combine, is_pure, representative_density, state_from_density,
    CanonicalForm, DensityMatrix, StateForm, StateFunctional,
};
pub use thermo::{
    compression_heat, gas_entropy, has_definite_value, heat_ledger, sectors_connectable,
    zeno_sequence, zeno_success_probability, GasAccount, GasEntropy, HeatLedger, SectorVector,
    ZenoPath,
};

pub type AlgebraElement64 = AlgebraElement<f64>;
pub type SubalgebraBasis64 = SubalgebraBasis<f64>;
pub type StateFunctional64 = StateFunctional<f64>;
pub type DensityMatrix64 = DensityMatrix<f64>;
pub type Decomposition64 = Decomposition<f64>;
pub type EntropyReport64 = EntropyReport<f64>;
pub type GnsData64 = GnsData<f64>;
pub type CMatrix64 = CMatrix<f64>;
pub type CVector64 = CVector<f64>;

pub type AlgebraElement32 = AlgebraElement<f32>;
pub type StateFunctional32 = StateFunctional<f32>;
pub type DensityMatrix32 = DensityMatrix<f32>;
pub type EntropyReport32 = EntropyReport<f32>;
pub type CMatrix32 = CMatrix<f32>;
