use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sampling::WellBicolouredMethod;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    Markov,
    Ratio,
    ManyToOne,
    Profile,
    Diameter,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::Markov => "markov",
            Experiment::Ratio => "ratio",
            Experiment::ManyToOne => "many-to-one",
            Experiment::Profile => "profile",
            Experiment::Diameter => "diameter",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiameterMode {
    /// All-source breadth-first search.
    Exact,
    /// Double sweep from the root, a lower bound.
    Estimate,
}

impl FromStr for DiameterMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(DiameterMode::Exact),
            "estimate" => Ok(DiameterMode::Estimate),
            other => Err(Error::InvalidArgument(format!("unknown diameter mode {other:?}"))),
        }
    }
}

impl fmt::Display for DiameterMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiameterMode::Exact => "exact",
            DiameterMode::Estimate => "estimate",
        })
    }
}

/// Parameters of one experiment run. Every field is echoed into the run
/// manifest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub n: usize,
    pub replicates: u64,
    pub seed: u64,
    pub tolerance: f64,
    pub method: WellBicolouredMethod,
    /// Node budget for each lazily grown tree; `None` means unbounded.
    pub budget: Option<usize>,
    /// Tree sizes for the profile experiment.
    pub sizes: Vec<usize>,
    /// Profile: BFS sources per replicate.
    pub sources: usize,
    /// Profile: targets per source.
    pub targets: usize,
    /// Many-to-one: cap `K` on the distance.
    pub cap: usize,
    pub diameter: DiameterMode,
}

impl ExperimentConfig {
    /// Default parameters for each experiment.
    pub fn defaults(experiment: Experiment, seed: u64) -> Self {
        let base = ExperimentConfig {
            experiment,
            n: 50,
            replicates: 21_000,
            seed,
            tolerance: 0.01,
            method: WellBicolouredMethod::Rejection,
            budget: None,
            sizes: Vec::new(),
            sources: 10,
            targets: 100,
            cap: 10,
            diameter: DiameterMode::Exact,
        };
        match experiment {
            Experiment::Markov => base,
            Experiment::Ratio => ExperimentConfig { n: 2000, replicates: 200, tolerance: 0.02, ..base },
            Experiment::ManyToOne => ExperimentConfig { n: 5, replicates: 100_000, tolerance: 3.0, ..base },
            Experiment::Profile => ExperimentConfig {
                n: 10_000,
                replicates: 50,
                tolerance: 0.05,
                sizes: vec![1_000, 10_000, 100_000],
                ..base
            },
            Experiment::Diameter => ExperimentConfig { n: 2000, replicates: 100, tolerance: 0.05, ..base },
        }
    }

    /// Sets one `key = value` entry.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        fn num<T: FromStr>(key: &str, v: &str) -> Result<T> {
            v.parse()
                .map_err(|_| Error::InvalidArgument(format!("bad value {v:?} for {key}")))
        }
        match key {
            "n" => self.n = num(key, value)?,
            "replicates" => self.replicates = num(key, value)?,
            "seed" => self.seed = num(key, value)?,
            "tolerance" => self.tolerance = num(key, value)?,
            "method" => self.method = value.parse()?,
            "budget" => {
                self.budget = match value {
                    "none" | "" => None,
                    v => Some(num(key, v)?),
                }
            }
            "sizes" => {
                self.sizes = value
                    .split(',')
                    .map(|s| num(key, s.trim()))
                    .collect::<Result<_>>()?
            }
            "sources" => self.sources = num(key, value)?,
            "targets" => self.targets = num(key, value)?,
            "cap" => self.cap = num(key, value)?,
            "diameter" => self.diameter = value.parse()?,
            other => return Err(Error::InvalidArgument(format!("unknown config key {other:?}"))),
        }
        Ok(())
    }

    /// Applies a flat `key = value` file. Blank lines and `#` comments are
    /// ignored.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                Error::InvalidArgument(format!("config line {}: expected key = value", i + 1))
            })?;
            self.set(k.trim(), v.trim())?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidArgument(m.into()));
        if self.replicates == 0 {
            return bad("replicates must be positive");
        }
        match self.experiment {
            Experiment::Markov if self.n < 3 => bad("markov needs n >= 3"),
            Experiment::Ratio | Experiment::Diameter if self.n == 0 => bad("n must be positive"),
            Experiment::Profile if self.sizes.is_empty() || self.sizes.contains(&0) => {
                bad("profile needs a list of positive sizes")
            }
            Experiment::Profile if self.sources == 0 || self.targets == 0 => {
                bad("sources and targets must be positive")
            }
            _ => Ok(()),
        }
    }
}
