//! TOML input formats.
//!
//! A state file holds `qubits` and exactly one of `amplitudes` (`2^qubits`
//! entries) or `density` (`4^qubits` entries, row-major), each entry a
//! `[re, im]` pair:
//!
//! ```toml
//! qubits = 1
//! amplitudes = [[0.780624749799799, 0.0], [0.625, 0.0]]
//! ```
//!
//! An experiment file names two state files (relative to itself) and the run
//! settings; every key except the states is optional:
//!
//! ```toml
//! state_a = "zero.toml"
//! state_b = "tilted.toml"
//! variant = "reduced"
//! M = [2, 3, 4, 5]
//! P = 8
//! unitary_mode = "exact"
//! estimator = "expectation"
//! init = "uniform"
//! seed = 7
//! output = "out.csv"
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use tracedist::{
    density_from_pure, ClockInit, ComplexMatrix, ComplexScalar, DensityMatrix, EstimatorKind, RunConfig,
    UnitaryMode, Variant,
};

use crate::error::{CliError, CliResult};

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str, origin: &str) -> CliResult<T> {
    toml::from_str(text).map_err(|e| CliError::Parse {
        path: origin.to_string(),
        message: e.to_string(),
    })
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub qubits: usize,
    pub amplitudes: Option<Vec<[f64; 2]>>,
    pub density: Option<Vec<[f64; 2]>>,
}

fn complex(entries: &[[f64; 2]]) -> Vec<ComplexScalar> {
    entries
        .iter()
        .map(|[re, im]| ComplexScalar::new(*re, *im))
        .collect()
}

impl StateFile {
    pub fn parse(text: &str, origin: &str) -> CliResult<Self> {
        parse(text, origin)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        Self::parse(&read(path)?, &path.display().to_string())
    }

    fn dim(&self) -> CliResult<usize> {
        if self.qubits == 0 || self.qubits > 10 {
            return Err(CliError::field(
                "qubits",
                format!("must be in 1..=10, got {}", self.qubits),
            ));
        }
        Ok(1 << self.qubits)
    }

    /// Amplitudes of a pure-state file.
    pub fn ket(&self) -> CliResult<Vec<ComplexScalar>> {
        let dim = self.dim()?;
        match (&self.amplitudes, &self.density) {
            (Some(a), None) => {
                if a.len() != dim {
                    return Err(CliError::field(
                        "amplitudes",
                        format!(
                            "expected {dim} entries for {} qubits, found {}",
                            self.qubits,
                            a.len()
                        ),
                    ));
                }
                Ok(complex(a))
            }
            (None, Some(_)) => Err(CliError::field("amplitudes", "a pure state is required here")),
            _ => Err(CliError::field(
                "amplitudes",
                "give exactly one of `amplitudes` or `density`",
            )),
        }
    }

    pub fn to_density(&self) -> CliResult<DensityMatrix> {
        let dim = self.dim()?;
        match (&self.amplitudes, &self.density) {
            (Some(_), None) => {
                density_from_pure(&self.ket()?).map_err(|e| CliError::field("amplitudes", e.to_string()))
            }
            (None, Some(d)) => {
                if d.len() != dim * dim {
                    return Err(CliError::field(
                        "density",
                        format!(
                            "expected {} entries for {} qubits, found {}",
                            dim * dim,
                            self.qubits,
                            d.len()
                        ),
                    ));
                }
                let m = ComplexMatrix::from_row_major(complex(d))
                    .map_err(|e| CliError::field("density", e.to_string()))?;
                DensityMatrix::from_matrix(m).map_err(|e| CliError::field("density", e.to_string()))
            }
            _ => Err(CliError::field(
                "amplitudes",
                "give exactly one of `amplitudes` or `density`",
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VariantName {
    Full,
    Reduced,
}

impl From<VariantName> for Variant {
    fn from(v: VariantName) -> Self {
        match v {
            VariantName::Full => Variant::Full,
            VariantName::Reduced => Variant::Reduced,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeName {
    Exact,
    Trotter,
    Lmr,
}

impl From<ModeName> for UnitaryMode {
    fn from(m: ModeName) -> Self {
        match m {
            ModeName::Exact => UnitaryMode::Exact,
            ModeName::Trotter => UnitaryMode::Trotter,
            ModeName::Lmr => UnitaryMode::LmrChannel,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EstimatorName {
    Expectation,
    Mode,
    Sample,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InitName {
    Uniform,
    ImprovedSine,
}

impl From<InitName> for ClockInit {
    fn from(i: InitName) -> Self {
        match i {
            InitName::Uniform => ClockInit::Uniform,
            InitName::ImprovedSine => ClockInit::ImprovedSine,
        }
    }
}

pub const DEFAULT_SHOTS: usize = 1024;

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub state_a: PathBuf,
    pub state_b: PathBuf,
    pub variant: Option<VariantName>,
    #[serde(rename = "M")]
    pub clock: Option<Vec<usize>>,
    #[serde(rename = "P")]
    pub second_clock: Option<usize>,
    pub t: Option<f64>,
    pub t0: Option<f64>,
    pub unitary_mode: Option<ModeName>,
    pub lmr_steps: Option<usize>,
    pub estimator: Option<EstimatorName>,
    pub shots: Option<usize>,
    pub init: Option<InitName>,
    pub seed: Option<u64>,
    pub output: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn parse(text: &str, origin: &str) -> CliResult<Self> {
        parse(text, origin)
    }

    /// Loads a config and resolves its relative paths against its directory.
    pub fn load(path: &Path) -> CliResult<Self> {
        let mut cfg = Self::parse(&read(path)?, &path.display().to_string())?;
        let base = path.parent().unwrap_or(Path::new("."));
        for p in [&mut cfg.state_a, &mut cfg.state_b] {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        if let Some(out) = cfg.output.as_mut().filter(|o| o.is_relative()) {
            *out = base.join(&*out);
        }
        Ok(cfg)
    }
}

/// Fully resolved settings for `estimate`.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimateSettings {
    pub variant: Variant,
    pub clock: Vec<usize>,
    pub run: RunConfig,
}

/// Checks a clock sweep: non-empty and every `M >= 2`.
pub fn validate_clock(field: &str, clock: &[usize]) -> CliResult<()> {
    if clock.is_empty() {
        return Err(CliError::field(field, "needs at least one clock size"));
    }
    if let Some(m) = clock.iter().find(|m| **m < 2 || **m > 16) {
        return Err(CliError::field(
            field,
            format!("clock sizes must be in 2..=16, got {m}"),
        ));
    }
    Ok(())
}

pub fn estimator_kind(name: EstimatorName, shots: Option<usize>) -> CliResult<EstimatorKind> {
    Ok(match name {
        EstimatorName::Expectation => EstimatorKind::Expectation,
        EstimatorName::Mode => EstimatorKind::Mode,
        EstimatorName::Sample => {
            let shots = shots.unwrap_or(DEFAULT_SHOTS);
            if shots == 0 {
                return Err(CliError::field("shots", "must be at least 1"));
            }
            EstimatorKind::Sample { shots }
        }
    })
}

fn positive(field: &str, v: f64) -> CliResult<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::field(field, format!("must be positive, got {v}")))
    }
}

impl ExperimentConfig {
    pub fn settings(&self) -> CliResult<EstimateSettings> {
        let clock = self
            .clock
            .clone()
            .unwrap_or_else(|| vec![RunConfig::default().clock_qubits]);
        validate_clock("M", &clock)?;
        if let Some(p) = self.second_clock {
            if !(1..=24).contains(&p) {
                return Err(CliError::field("P", format!("must be in 1..=24, got {p}")));
            }
        }
        let defaults = RunConfig::default();
        let lmr_steps = self.lmr_steps.unwrap_or(defaults.lmr_steps);
        if lmr_steps == 0 {
            return Err(CliError::field("lmr_steps", "must be at least 1"));
        }
        let run = RunConfig {
            clock_qubits: clock[0],
            second_clock_qubits: self.second_clock,
            t: positive("t", self.t.unwrap_or(defaults.t))?,
            t0: positive("t0", self.t0.unwrap_or(defaults.t0))?,
            unitary_mode: self.unitary_mode.map(Into::into).unwrap_or_default(),
            lmr_steps,
            estimator: estimator_kind(self.estimator.unwrap_or(EstimatorName::Expectation), self.shots)?,
            init: self.init.map(Into::into).unwrap_or_default(),
            seed: self.seed.unwrap_or(0),
            round_ell: false,
        };
        Ok(EstimateSettings {
            variant: self.variant.map(Into::into).unwrap_or(Variant::Reduced),
            clock,
            run,
        })
    }
}
