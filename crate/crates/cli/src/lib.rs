//! Batch front end for `cstar-entropy`: problem files in, reports out.

pub mod problem;

use std::fmt;
use std::path::Path;

use serde::Serialize;

use cstar_entropy::decomp::{infimum_oracle, majorizes, schrodinger_decomposition, Majorization};
use cstar_entropy::entropy::{shannon, state_entropy, von_neumann};
use cstar_entropy::gns::{gns_block_decompose, gns_construct, is_irreducible};
use cstar_entropy::states::representative_density;
use cstar_entropy::thermo::zeno_success_probability;
use cstar_entropy::Error;

pub use problem::{matrix_from_json, matrix_to_json, MatrixJson, Problem, ProblemFile, Settings};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Lib(#[from] Error),
}

impl CliError {
    /// 2 for input problems, 3 for numerical failures, 4 for invalid states.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse(_) => 2,
            CliError::Lib(Error::Validation(_)) | CliError::Lib(Error::DisconnectedSectors { .. }) => 2,
            CliError::Lib(Error::NotAState(_)) => 4,
            CliError::Lib(Error::Decomposition { .. }) | CliError::Lib(Error::Internal(_)) => 3,
        }
    }
}

pub fn read_problem(path: &Path) -> Result<ProblemFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    ProblemFile::parse(&text)
}

/// Unit for reported entropies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Unit {
    Nats,
    Bits,
}

impl Unit {
    pub fn from_bits_flag(bits: bool) -> Self {
        if bits {
            Unit::Bits
        } else {
            Unit::Nats
        }
    }

    fn scale(self, nats: f64) -> f64 {
        match self {
            Unit::Nats => nats,
            Unit::Bits => nats / std::f64::consts::LN_2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StructureReport {
    pub structure: String,
    pub blocks: Vec<(usize, usize)>,
    pub algebra_dim: usize,
    pub ambient_dim: usize,
    pub residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unitary: Option<MatrixJson>,
}

pub fn cmd_structure(problem: &Problem, show_unitary: bool) -> StructureReport {
    let s = &problem.structure;
    let (residual, unitary) = match &problem.discovered {
        Some(d) => (d.residual, show_unitary.then(|| matrix_to_json(&d.unitary))),
        None => (
            0.0,
            show_unitary.then(|| matrix_to_json(&cstar_entropy::CMatrix64::identity(s.ambient_dim(), s.ambient_dim()))),
        ),
    };
    StructureReport {
        structure: s.to_string(),
        blocks: s.pairs(),
        algebra_dim: s.algebra_dim(),
        ambient_dim: s.ambient_dim(),
        residual,
        unitary,
    }
}

impl fmt::Display for StructureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "structure: {}", self.structure)?;
        writeln!(f, "algebra dimension: {}", self.algebra_dim)?;
        writeln!(f, "ambient dimension: {}", self.ambient_dim)?;
        writeln!(f, "residual: {:.3e}", self.residual)?;
        if let Some(u) = &self.unitary {
            writeln!(f, "unitary:")?;
            write_matrix(f, u)?;
        }
        Ok(())
    }
}

fn write_matrix(f: &mut fmt::Formatter<'_>, m: &MatrixJson) -> fmt::Result {
    for row in m {
        let cells: Vec<String> = row.iter().map(|[re, im]| format!("{re:+.6}{im:+.6}i")).collect();
        writeln!(f, "  {}", cells.join("  "))?;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntropyCmdReport {
    pub unit: Unit,
    pub structure: String,
    pub state_entropy: f64,
    pub sector_entropy: f64,
    pub mean_block_entropy: f64,
    pub vn_of_representative: f64,
    pub multiplicity_term: f64,
}

pub fn cmd_entropy(problem: &Problem, unit: Unit) -> Result<EntropyCmdReport, CliError> {
    let omega = problem.require_state()?;
    let r = state_entropy(omega, &problem.structure)?;
    Ok(EntropyCmdReport {
        unit,
        structure: problem.structure.to_string(),
        state_entropy: unit.scale(r.state_entropy),
        sector_entropy: unit.scale(r.sector_entropy),
        mean_block_entropy: unit.scale(r.mean_block_entropy),
        vn_of_representative: unit.scale(r.vn_of_representative),
        multiplicity_term: unit.scale(r.multiplicity_term),
    })
}

impl fmt::Display for EntropyCmdReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let u = unit_label(self.unit);
        writeln!(f, "structure: {}", self.structure)?;
        writeln!(f, "S(ω)          = {:.7} {u}", self.state_entropy)?;
        writeln!(f, "H(p)          = {:.7} {u}", self.sector_entropy)?;
        writeln!(f, "Σ p S_VN(ρᵢ)  = {:.7} {u}", self.mean_block_entropy)?;
        writeln!(f, "S_VN(ρ_ω)     = {:.7} {u}", self.vn_of_representative)?;
        writeln!(f, "Σ p log m     = {:.7} {u}", self.multiplicity_term)
    }
}

fn unit_label(u: Unit) -> &'static str {
    match u {
        Unit::Nats => "nats",
        Unit::Bits => "bits",
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleReport {
    pub unit: Unit,
    pub samples: usize,
    pub seed: u64,
    pub min_found: f64,
    pub state_entropy: f64,
    /// `min_found − S(ω)`; never negative when the closed form is right.
    pub gap: f64,
    pub argmin_sample: usize,
    pub best_random: f64,
}

pub fn cmd_oracle(problem: &Problem, unit: Unit) -> Result<OracleReport, CliError> {
    let omega = problem.require_state()?;
    let s = state_entropy(omega, &problem.structure)?.state_entropy;
    let out = infimum_oracle(omega, &problem.structure, problem.settings.samples, problem.settings.seed)?;
    Ok(OracleReport {
        unit,
        samples: out.samples,
        seed: problem.settings.seed,
        min_found: unit.scale(out.min_entropy),
        state_entropy: unit.scale(s),
        gap: unit.scale(out.min_entropy - s),
        argmin_sample: out.argmin_sample,
        best_random: unit.scale(out.best_random),
    })
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let u = unit_label(self.unit);
        writeln!(f, "samples: {} (seed {})", self.samples, self.seed)?;
        writeln!(f, "min found     = {:.7} {u} (sample {})", self.min_found, self.argmin_sample)?;
        writeln!(f, "S(ω)          = {:.7} {u}", self.state_entropy)?;
        writeln!(f, "gap           = {:.3e} {u}", self.gap)?;
        writeln!(f, "best random   = {:.7} {u}", self.best_random)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SchrodingerReport {
    pub unit: Unit,
    pub weights: Vec<f64>,
    pub eigenvalues: Vec<f64>,
    pub components: usize,
    pub shannon: f64,
    pub von_neumann: f64,
    pub reconstruction_error: f64,
    /// Relation of the spectrum to the weights.
    pub majorization: String,
}

/// Schrödinger decomposition of `ρ_ω` in the representation of the problem.
pub fn cmd_schrodinger(problem: &Problem, unitary: &MatrixJson, unit: Unit) -> Result<SchrodingerReport, CliError> {
    let omega = problem.require_state()?;
    let u = matrix_from_json(unitary)?;
    let rho = representative_density(omega, &problem.structure)?;
    let tol = problem.settings.tol;
    let sd = schrodinger_decomposition(&rho, &u, tol)?;
    let verdict = majorizes(&sd.eigenvalues, &sd.weights, tol.sqrt())?;
    let majorization = match verdict.relation {
        Majorization::Majorizes => "λ ≻ p",
        Majorization::Equal => "λ = p (up to order)",
        Majorization::Majorized => "p ≻ λ",
        Majorization::Incomparable => "incomparable",
    };
    Ok(SchrodingerReport {
        unit,
        weights: sd.weights.clone(),
        eigenvalues: sd.eigenvalues.clone(),
        components: sd.decomposition.components().len(),
        shannon: unit.scale(shannon(&sd.decomposition.weights())?),
        von_neumann: unit.scale(von_neumann(&rho)?),
        reconstruction_error: sd.decomposition.reconstruction_error(rho.matrix()),
        majorization: majorization.into(),
    })
}

impl fmt::Display for SchrodingerReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let u = unit_label(self.unit);
        let list = |v: &[f64]| v.iter().map(|x| format!("{x:.7}")).collect::<Vec<_>>().join(", ");
        writeln!(f, "weights       = [{}]", list(&self.weights))?;
        writeln!(f, "eigenvalues   = [{}]", list(&self.eigenvalues))?;
        writeln!(f, "components    = {}", self.components)?;
        writeln!(f, "H(p)          = {:.7} {u}", self.shannon)?;
        writeln!(f, "S_VN(ρ)       = {:.7} {u}", self.von_neumann)?;
        writeln!(f, "reconstruction error = {:.3e}", self.reconstruction_error)?;
        writeln!(f, "majorization: {}", self.majorization)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GnsReport {
    pub unit: Unit,
    pub dim: usize,
    pub irreducible: bool,
    pub gns_structure: String,
    pub gns_entropy: f64,
    pub state_entropy: f64,
    pub gap: f64,
}

pub fn cmd_gns(problem: &Problem, unit: Unit) -> Result<GnsReport, CliError> {
    let omega = problem.require_state()?;
    let tol = problem.settings.tol;
    let g = gns_construct(omega, &problem.structure, tol)?;
    let blocks = gns_block_decompose(&g, tol, problem.settings.seed)?;
    let via_gns = cstar_entropy::gns::entropy_from_blocks(&blocks)?.state_entropy;
    let direct = state_entropy(omega, &problem.structure)?.state_entropy;
    Ok(GnsReport {
        unit,
        dim: g.dim(),
        irreducible: is_irreducible(&g, tol),
        gns_structure: blocks.structure().to_string(),
        gns_entropy: unit.scale(via_gns),
        state_entropy: unit.scale(direct),
        gap: unit.scale(via_gns - direct),
    })
}

impl fmt::Display for GnsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let u = unit_label(self.unit);
        writeln!(f, "GNS dimension: {}", self.dim)?;
        writeln!(f, "irreducible: {}", if self.irreducible { "yes" } else { "no" })?;
        writeln!(f, "GNS structure: {}", self.gns_structure)?;
        writeln!(f, "S(ω) via GNS  = {:.7} {u}", self.gns_entropy)?;
        writeln!(f, "S(ω)          = {:.7} {u}", self.state_entropy)?;
        writeln!(f, "gap           = {:.3e} {u}", self.gap)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZenoReport {
    pub k: i64,
    pub step_probability: f64,
    pub probability: f64,
}

pub fn cmd_zeno(k: i64) -> Result<ZenoReport, CliError> {
    let probability = zeno_success_probability::<f64>(k)?;
    let x = std::f64::consts::PI / (2.0 * k as f64);
    Ok(ZenoReport {
        k,
        step_probability: x.cos() * x.cos(),
        probability,
    })
}

impl fmt::Display for ZenoReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "k = {}", self.k)?;
        writeln!(f, "step probability = {:.7}", self.step_probability)?;
        writeln!(f, "success probability = {:.7}", self.probability)
    }
}

pub fn to_json<R: Serialize>(report: &R) -> String {
    serde_json::to_string_pretty(report).expect("reports always serialize")
}
