use serde::{Deserialize, Serialize};

use cstar_entropy::algebra::{block_decompose, generate_subalgebra, AlgebraElement, BlockStructure, Discovered};
use cstar_entropy::states::{state_from_density, CanonicalForm, DensityMatrix, StateFunctional};
use cstar_entropy::{CMatrix64, Error, C};

use crate::CliError;

/// Rows of `[re, im]` pairs.
pub type MatrixJson = Vec<Vec<[f64; 2]>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub algebra: AlgebraSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state: Option<StateSpec>,
    #[serde(default, skip_serializing_if = "Options::is_empty")]
    pub options: Options,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum AlgebraSpec {
    Blocks(Vec<(usize, usize)>),
    Generators(Vec<MatrixJson>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum StateSpec {
    /// Density matrix on the ambient space.
    Density(MatrixJson),
    Canonical {
        p: Vec<f64>,
        rhos: Vec<Option<MatrixJson>>,
    },
    /// `values[k] = ω(basis[k])`, each basis element given by its block parts.
    Functional {
        basis: Vec<Vec<MatrixJson>>,
        values: Vec<[f64; 2]>,
    },
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
}

impl Options {
    pub fn is_empty(&self) -> bool {
        self.tol.is_none() && self.seed.is_none() && self.samples.is_none()
    }
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem files always serialize")
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Settings {
    pub tol: f64,
    pub seed: u64,
    pub samples: usize,
}

impl Settings {
    pub const DEFAULT: Settings = Settings {
        tol: 1e-9,
        seed: 0,
        samples: 1000,
    };

    /// Flags win over file options, which win over the defaults.
    pub fn resolve(tol: Option<f64>, seed: Option<u64>, samples: Option<usize>, file: &Options) -> Self {
        Self {
            tol: tol.or(file.tol).unwrap_or(Self::DEFAULT.tol),
            seed: seed.or(file.seed).unwrap_or(Self::DEFAULT.seed),
            samples: samples.or(file.samples).unwrap_or(Self::DEFAULT.samples),
        }
    }
}

pub fn matrix_from_json(m: &MatrixJson) -> Result<CMatrix64, CliError> {
    let rows = m.len();
    let cols = m.first().map(|r| r.len()).unwrap_or(0);
    if rows == 0 || cols == 0 {
        return Err(CliError::Parse("empty matrix".into()));
    }
    if let Some(k) = m.iter().position(|r| r.len() != cols) {
        return Err(CliError::Parse(format!("row {k} has {} entries, expected {cols}", m[k].len())));
    }
    if m.iter().flatten().flatten().any(|x| !x.is_finite()) {
        return Err(CliError::Parse("matrix entries must be finite".into()));
    }
    Ok(CMatrix64::from_fn(rows, cols, |i, j| C::new(m[i][j][0], m[i][j][1])))
}

pub fn matrix_to_json(m: &CMatrix64) -> MatrixJson {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

fn square(m: &MatrixJson, n: usize, what: &str) -> Result<CMatrix64, CliError> {
    let x = matrix_from_json(m)?;
    if x.nrows() != n || x.ncols() != n {
        return Err(CliError::Parse(format!(
            "{what} has shape {}x{}, expected {n}x{n}",
            x.nrows(),
            x.ncols()
        )));
    }
    Ok(x)
}

/// A problem file turned into library objects.
#[derive(Clone, Debug)]
pub struct Problem {
    pub structure: BlockStructure,
    /// Present when the algebra was given by generators.
    pub discovered: Option<Discovered<f64>>,
    pub state: Option<StateFunctional<f64>>,
    pub settings: Settings,
}

impl Problem {
    pub fn build(file: &ProblemFile, settings: Settings) -> Result<Self, CliError> {
        let (structure, discovered) = match &file.algebra {
            AlgebraSpec::Blocks(pairs) => {
                let s = BlockStructure::new(pairs.iter().copied()).map_err(parse_error)?;
                (s, None)
            }
            AlgebraSpec::Generators(gens) => {
                let gens: Vec<CMatrix64> = gens.iter().map(matrix_from_json).collect::<Result<_, _>>()?;
                let sub = generate_subalgebra(&gens, settings.tol).map_err(parse_error)?;
                let d = block_decompose(&sub, settings.tol, settings.seed)?;
                (d.structure.clone(), Some(d))
            }
        };
        let state = match &file.state {
            None => None,
            Some(spec) => Some(build_state(spec, &structure, discovered.as_ref(), settings.tol)?),
        };
        Ok(Self {
            structure,
            discovered,
            state,
            settings,
        })
    }

    pub fn require_state(&self) -> Result<&StateFunctional<f64>, CliError> {
        self.state
            .as_ref()
            .ok_or_else(|| CliError::Parse("problem file has no state".into()))
    }
}

// Library validation errors raised while reading the algebra are input errors.
fn parse_error(e: Error) -> CliError {
    match e {
        Error::Validation(msg) => CliError::Parse(msg),
        other => CliError::Lib(other),
    }
}

fn invalid_state(e: Error) -> CliError {
    match e {
        Error::Validation(msg) | Error::NotAState(msg) => CliError::Lib(Error::NotAState(msg)),
        other => CliError::Lib(other),
    }
}

fn build_state(
    spec: &StateSpec,
    structure: &BlockStructure,
    discovered: Option<&Discovered<f64>>,
    tol: f64,
) -> Result<StateFunctional<f64>, CliError> {
    match spec {
        StateSpec::Density(m) => {
            let d = structure.ambient_dim();
            let mut rho = square(m, d, "density matrix")?;
            if let Some(disc) = discovered {
                rho = disc.unitary.adjoint() * rho * &disc.unitary;
            }
            let rho = DensityMatrix::new(rho, tol).map_err(invalid_state)?;
            Ok(state_from_density(&rho, structure)?)
        }
        StateSpec::Canonical { p, rhos } => {
            if p.len() != structure.len() || rhos.len() != structure.len() {
                return Err(CliError::Parse(format!(
                    "canonical form has {} weights and {} blocks for {} algebra blocks",
                    p.len(),
                    rhos.len(),
                    structure.len()
                )));
            }
            let rhos = rhos
                .iter()
                .zip(structure.blocks())
                .enumerate()
                .map(|(i, (r, b))| r.as_ref().map(|r| square(r, b.dim, &format!("rho {i}"))).transpose())
                .collect::<Result<Vec<_>, _>>()?;
            let cf = CanonicalForm { p: p.clone(), rhos };
            StateFunctional::canonical(structure.clone(), cf, tol).map_err(invalid_state)
        }
        StateSpec::Functional { basis, values } => {
            let elements = basis
                .iter()
                .enumerate()
                .map(|(k, parts)| {
                    if parts.len() != structure.len() {
                        return Err(CliError::Parse(format!(
                            "basis element {k} has {} parts for {} blocks",
                            parts.len(),
                            structure.len()
                        )));
                    }
                    let parts = parts
                        .iter()
                        .zip(structure.blocks())
                        .map(|(m, b)| square(m, b.dim, &format!("part of basis element {k}")))
                        .collect::<Result<Vec<_>, _>>()?;
                    AlgebraElement::new(structure.clone(), parts).map_err(parse_error)
                })
                .collect::<Result<Vec<_>, _>>()?;
            let values = values.iter().map(|v| C::new(v[0], v[1])).collect();
            StateFunctional::from_values(structure.clone(), elements, values).map_err(parse_error)
        }
    }
}
