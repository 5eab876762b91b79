//! Job descriptions: the JSON schema, its validation rules, and resolution
//! into a concrete cube plus optional representation-theoretic data.

use std::path::PathBuf;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use twistcube::cube::CubeSpec;
use twistcube::rep::{derive_constants, CartanMatrix};
use twistcube::Limits;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    /// Decide untwistedness and report every individual condition.
    Check,
    /// List the Cartier point of every maximal cone.
    Cartier,
    /// Enumerate the signed lattice points of the cube.
    Lattice,
    /// Signed character of the cube under the derived weight map.
    Character,
    /// Demazure operator composition for the same data.
    Demazure,
    /// Necessary conditions on (lambda, word) for untwistedness.
    Necessary,
}

impl CommandKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CommandKind::Check => "check",
            CommandKind::Cartier => "cartier",
            CommandKind::Lattice => "lattice",
            CommandKind::Character => "character",
            CommandKind::Demazure => "demazure",
            CommandKind::Necessary => "necessary",
        }
    }

    fn needs_rep(self) -> bool {
        matches!(
            self,
            CommandKind::Character | CommandKind::Demazure | CommandKind::Necessary
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Raw,
    Rep,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Raw => "raw",
            Mode::Rep => "rep",
        }
    }
}

/// A Cartan matrix given either by type label or by its rows.
#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(untagged)]
pub enum CartanInput {
    Label(String),
    Matrix(Vec<Vec<i64>>),
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobOptions {
    pub point_cap: Option<u64>,
    pub cone_cap: Option<u32>,
    pub grid_denom: Option<u32>,
    pub out: Option<PathBuf>,
}

/// The deserialized job document. Exactly one of the raw fields `n`/`c`/`ell`
/// or the rep fields `cartan`/`lambda`/`word` may be populated.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub mode: Option<Mode>,
    pub command: Option<CommandKind>,
    pub n: Option<usize>,
    pub c: Option<Vec<[i64; 3]>>,
    pub ell: Option<Vec<i64>>,
    pub cartan: Option<CartanInput>,
    pub lambda: Option<Vec<i64>>,
    pub word: Option<Vec<usize>>,
    #[serde(default)]
    pub options: JobOptions,
}

pub struct RepData {
    pub input: CartanInput,
    pub cartan: CartanMatrix,
    pub lambda: Vec<i64>,
    pub word: Vec<usize>,
}

pub struct ResolvedJob {
    pub mode: Mode,
    pub spec: CubeSpec,
    pub rep: Option<RepData>,
    pub options: JobOptions,
}

impl JobConfig {
    pub fn resolve(self, command: CommandKind) -> Result<ResolvedJob, CliError> {
        if let Some(declared) = self.command {
            if declared != command {
                return Err(CliError::Invalid(format!(
                    "config declares command '{}' but '{}' was requested",
                    declared.as_str(),
                    command.as_str()
                )));
            }
        }

        let has_raw = self.n.is_some() || self.c.is_some() || self.ell.is_some();
        let has_rep = self.cartan.is_some() || self.lambda.is_some() || self.word.is_some();
        let mode = match (has_raw, has_rep) {
            (true, true) => {
                return Err(CliError::Invalid(
                    "config mixes raw fields (n, c, ell) with rep fields (cartan, lambda, word)"
                        .to_string(),
                ))
            }
            (false, false) => {
                return Err(CliError::Invalid(
                    "config provides neither raw fields (n, c, ell) nor rep fields \
                     (cartan, lambda, word)"
                        .to_string(),
                ))
            }
            (true, false) => Mode::Raw,
            (false, true) => Mode::Rep,
        };
        if let Some(declared) = self.mode {
            if declared != mode {
                return Err(CliError::Invalid(format!(
                    "config declares mode '{}' but its fields are {} inputs",
                    declared.as_str(),
                    mode.as_str()
                )));
            }
        }
        if command.needs_rep() && mode == Mode::Raw {
            return Err(CliError::Invalid(format!(
                "command '{}' needs rep inputs (cartan, lambda, word)",
                command.as_str()
            )));
        }

        match mode {
            Mode::Raw => {
                let n = self
                    .n
                    .ok_or_else(|| CliError::Invalid("raw config is missing 'n'".to_string()))?;
                let ell = self
                    .ell
                    .ok_or_else(|| CliError::Invalid("raw config is missing 'ell'".to_string()))?;
                let mut triples = Vec::new();
                for entry in self.c.unwrap_or_default() {
                    let [i, j, value] = entry;
                    let (i, j) = (usize::try_from(i), usize::try_from(j));
                    let (Ok(i), Ok(j)) = (i, j) else {
                        return Err(CliError::Invalid(format!(
                            "c entry [{}, {}, {value}] must use 1-based positive indices",
                            entry[0], entry[1]
                        )));
                    };
                    triples.push((i, j, value));
                }
                let spec = CubeSpec::new(n, &triples, &ell).map_err(CliError::Lib)?;
                Ok(ResolvedJob {
                    mode,
                    spec,
                    rep: None,
                    options: self.options,
                })
            }
            Mode::Rep => {
                let input = self.cartan.ok_or_else(|| {
                    CliError::Invalid("rep config is missing 'cartan'".to_string())
                })?;
                let lambda = self.lambda.ok_or_else(|| {
                    CliError::Invalid("rep config is missing 'lambda'".to_string())
                })?;
                let word = self
                    .word
                    .ok_or_else(|| CliError::Invalid("rep config is missing 'word'".to_string()))?;
                let cartan = match &input {
                    CartanInput::Label(label) => CartanMatrix::from_label(label),
                    CartanInput::Matrix(rows) => CartanMatrix::new(rows.clone()),
                }
                .map_err(CliError::Lib)?;
                let spec = derive_constants(&cartan, &lambda, &word).map_err(CliError::Lib)?;
                Ok(ResolvedJob {
                    mode,
                    spec,
                    rep: Some(RepData {
                        input,
                        cartan,
                        lambda,
                        word,
                    }),
                    options: self.options,
                })
            }
        }
    }
}

impl ResolvedJob {
    /// Library limits with flag values taking precedence over config options.
    pub fn limits(&self, point_cap: Option<u64>, cone_cap: Option<u32>) -> Limits {
        let defaults = Limits::default();
        Limits {
            point_cap: point_cap
                .or(self.options.point_cap)
                .unwrap_or(defaults.point_cap),
            cone_cap: cone_cap
                .or(self.options.cone_cap)
                .unwrap_or(defaults.cone_cap),
        }
    }
}
