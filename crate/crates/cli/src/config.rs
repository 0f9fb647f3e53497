use std::fs;
use std::path::{Path, PathBuf};

use conewave_core::spectrum::Lq;
use serde::{Deserialize, Serialize};

use crate::{io_err, CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    SpectrumScaling,
    WaveValidate,
    MultiplierEnvelope,
    PhaseCertify,
    SectorCheck,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::SpectrumScaling => "spectrum-scaling",
            Experiment::WaveValidate => "wave-validate",
            Experiment::MultiplierEnvelope => "multiplier-envelope",
            Experiment::PhaseCertify => "phase-certify",
            Experiment::SectorCheck => "sector-check",
        }
    }
}

/// An entry of `q_list`: a number or the string "inf".
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum QEntry {
    Number(f64),
    Text(String),
}

impl QEntry {
    pub fn to_lq(&self) -> Result<Lq> {
        let lq = match self {
            QEntry::Number(q) => Lq::parse(&q.to_string()),
            QEntry::Text(s) => Lq::parse(s),
        }
        .map_err(|e| CliError::Config(e.to_string()))?;
        match lq {
            Lq::Inf => Ok(lq),
            Lq::Finite(q) if q == 2.0 || q == 6.0 => Ok(lq),
            Lq::Finite(q) => Err(CliError::Config(format!("q = {q} is not one of 2, 6, inf"))),
        }
    }
}

fn default_q_list() -> Vec<QEntry> {
    vec![QEntry::Text("inf".into())]
}

/// Run description, read from JSON and optionally overridden from the command line.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub experiment: Experiment,
    pub rho: f64,
    /// Truncation radius of the cone.
    #[serde(rename = "R", alias = "radius")]
    pub radius: f64,
    pub delta: f64,
    pub lambda_list: Vec<f64>,
    #[serde(default = "default_q_list")]
    pub q_list: Vec<QEntry>,
    pub seed: u64,
    pub output_path: PathBuf,
    /// Sweep several cone angles at once; replaces `rho` when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho_list: Option<Vec<f64>>,
    /// Random samples per sweep (kernel points, residual configurations, phase configurations).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    /// Random trial inputs per L^q lower bound.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    /// Frequencies of the residual sweep in multiplier-envelope.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual_lambdas: Option<Vec<f64>>,
    /// Persistent Bessel-zero cache used by spectrum-scaling.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero_cache: Option<PathBuf>,
}

/// Command-line replacements for config fields.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub experiment: Option<Experiment>,
    pub rho: Option<f64>,
    pub lambda_list: Option<Vec<f64>>,
    pub output_path: Option<PathBuf>,
    pub seed: Option<u64>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path).map_err(io_err(path))?)
    }

    pub fn apply(mut self, o: Overrides) -> Result<Self> {
        if let Some(e) = o.experiment {
            self.experiment = e;
        }
        if let Some(r) = o.rho {
            self.rho = r;
            self.rho_list = None;
        }
        if let Some(l) = o.lambda_list {
            self.lambda_list = l;
        }
        if let Some(p) = o.output_path {
            self.output_path = p;
        }
        if let Some(s) = o.seed {
            self.seed = s;
        }
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, x: f64| {
            if x > 0.0 && x.is_finite() {
                Ok(())
            } else {
                Err(CliError::Config(format!("{name} must be positive, got {x}")))
            }
        };
        positive("rho", self.rho)?;
        positive("R", self.radius)?;
        positive("delta", self.delta)?;
        for &r in self.rho_list.iter().flatten() {
            positive("rho_list entry", r)?;
        }
        if self.lambda_list.is_empty() {
            return Err(CliError::Config("lambda_list is empty".into()));
        }
        for list in [Some(&self.lambda_list), self.residual_lambdas.as_ref()].into_iter().flatten() {
            for &l in list {
                positive("lambda", l)?;
            }
            if list.windows(2).any(|w| w[1] < w[0]) {
                return Err(CliError::Config("lambda lists must be sorted ascending".into()));
            }
        }
        if self.q_list.is_empty() {
            return Err(CliError::Config("q_list is empty".into()));
        }
        self.q_values()?;
        if self.samples == Some(0) || self.trials == Some(0) {
            return Err(CliError::Config("samples and trials must be at least 1".into()));
        }
        if self.output_path.as_os_str().is_empty() {
            return Err(CliError::Config("output_path is empty".into()));
        }
        Ok(())
    }

    pub fn q_values(&self) -> Result<Vec<Lq>> {
        self.q_list.iter().map(QEntry::to_lq).collect()
    }

    pub fn rhos(&self) -> Vec<f64> {
        self.rho_list.clone().unwrap_or_else(|| vec![self.rho])
    }

    pub fn lambda_max(&self) -> f64 {
        *self.lambda_list.last().expect("validated nonempty")
    }
}
