//! Experiment configuration and its flat `key = value` file form.
//!
//! Keys are the CLI flag names without dashes (`d-const`, `gamma`, …).
//! Reals accept plain numbers and multiples of pi such as `pi/48`, `-8pi`
//! or `2*pi`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{ShiftMode, SpinModelParams};
use crate::spectral::{DEFAULT_MIN_SEPARATION, DEFAULT_THRESHOLD};

pub const DEFAULT_SHOTS: u64 = 8192;
pub const DEFAULT_SEED: u64 = 2022;

/// The seven tunneling constants of the probe-spin sweep.
pub const DEFAULT_GAMMAS: [f64; 7] = [0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExperimentKind {
    Tunneling,
    Spectrum,
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExperimentKind::Tunneling => "tunneling",
            ExperimentKind::Spectrum => "spectrum",
        })
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tunneling" => Ok(Self::Tunneling),
            "spectrum" => Ok(Self::Spectrum),
            other => Err(Error::Config(format!("unknown experiment {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Shots,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Shots => "shots",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Self::Exact),
            "shots" => Ok(Self::Shots),
            other => Err(Error::Config(format!(
                "mode must be 'exact' or 'shots', got {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    pub params: SpinModelParams,
    pub auto_shift: bool,
    pub shift_margin: Option<f64>,
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub alpha_step: f64,
    pub mode: Mode,
    pub shots: u64,
    pub seed: u64,
    pub threshold: f64,
    pub min_separation: f64,
    pub peephole: bool,
    pub gammas: Vec<f64>,
    pub out_dir: PathBuf,
}

impl ExperimentConfig {
    /// `D = −2`, `γ = 0.5`, `α ∈ [0, 2π]` in steps of `π/48`.
    pub fn tunneling() -> Self {
        Self {
            experiment: ExperimentKind::Tunneling,
            params: SpinModelParams::new(-2.0, 0.5),
            auto_shift: false,
            shift_margin: None,
            alpha_min: 0.0,
            alpha_max: 2.0 * PI,
            alpha_step: PI / 48.0,
            mode: Mode::Exact,
            shots: DEFAULT_SHOTS,
            seed: DEFAULT_SEED,
            threshold: DEFAULT_THRESHOLD,
            min_separation: DEFAULT_MIN_SEPARATION,
            peephole: false,
            gammas: DEFAULT_GAMMAS.to_vec(),
            out_dir: PathBuf::from("out"),
        }
    }

    /// `D = −2`, `γ = 0.25`, `φ = π/4`, `C = 0`, `α ∈ [−8π, 8π]` in steps of `π/24`.
    pub fn spectrum() -> Self {
        Self {
            experiment: ExperimentKind::Spectrum,
            params: SpinModelParams::new(-2.0, 0.25),
            alpha_min: -8.0 * PI,
            alpha_max: 8.0 * PI,
            alpha_step: PI / 24.0,
            ..Self::tunneling()
        }
    }

    pub fn for_kind(kind: ExperimentKind) -> Self {
        match kind {
            ExperimentKind::Tunneling => Self::tunneling(),
            ExperimentKind::Spectrum => Self::spectrum(),
        }
    }

    pub fn shift_mode(&self) -> ShiftMode {
        if self.auto_shift {
            ShiftMode::Auto {
                margin: self.shift_margin,
            }
        } else {
            ShiftMode::Explicit
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        for (name, v) in [
            ("alpha-min", self.alpha_min),
            ("alpha-max", self.alpha_max),
            ("alpha-step", self.alpha_step),
        ] {
            if !v.is_finite() {
                return Err(Error::Config(format!("{name} must be finite, got {v}")));
            }
        }
        if self.alpha_step <= 0.0 {
            return Err(Error::Config(format!(
                "alpha-step must be positive, got {}",
                self.alpha_step
            )));
        }
        if self.alpha_min >= self.alpha_max {
            return Err(Error::Config(format!(
                "alpha-min {} must be below alpha-max {}",
                self.alpha_min, self.alpha_max
            )));
        }
        if self.shots == 0 {
            return Err(Error::Config("shots must be at least 1".into()));
        }
        if self.threshold.is_nan() || self.threshold <= 0.0 {
            return Err(Error::Config(format!(
                "threshold must be positive, got {}",
                self.threshold
            )));
        }
        if self.min_separation.is_nan() || self.min_separation < 0.0 {
            return Err(Error::Config(format!(
                "min-separation must be non-negative, got {}",
                self.min_separation
            )));
        }
        Ok(())
    }

    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let real = || parse_real(value);
        match key {
            "experiment" => self.experiment = value.parse()?,
            "d-const" => self.params.d = real()?,
            "gamma" => self.params.gamma = real()?,
            "c-shift" => self.params.c = real()?,
            "phi" => self.params.phi = real()?,
            "auto-shift" => self.auto_shift = parse_bool(value)?,
            "shift-margin" => self.shift_margin = Some(real()?),
            "alpha-min" => self.alpha_min = real()?,
            "alpha-max" => self.alpha_max = real()?,
            "alpha-step" => self.alpha_step = real()?,
            "mode" => self.mode = value.parse()?,
            "shots" => self.shots = parse_int(key, value)?,
            "seed" => self.seed = parse_int(key, value)?,
            "threshold" => self.threshold = real()?,
            "min-separation" => self.min_separation = real()?,
            "peephole" => self.peephole = parse_bool(value)?,
            "gammas" => self.gammas = parse_real_list(value)?,
            "out-dir" => self.out_dir = PathBuf::from(value),
            other => return Err(Error::Config(format!("unknown key {other:?}"))),
        }
        Ok(())
    }

    /// Every setting as `key = value`, in the same form [`parse_config_text`] reads.
    pub fn to_pairs(&self) -> Vec<(&'static str, String)> {
        let r = crate::format::sig17;
        let mut pairs = vec![
            ("experiment", self.experiment.to_string()),
            ("d-const", r(self.params.d)),
            ("gamma", r(self.params.gamma)),
            ("c-shift", r(self.params.c)),
            ("phi", r(self.params.phi)),
            ("auto-shift", self.auto_shift.to_string()),
        ];
        if let Some(m) = self.shift_margin {
            pairs.push(("shift-margin", r(m)));
        }
        pairs.extend([
            ("alpha-min", r(self.alpha_min)),
            ("alpha-max", r(self.alpha_max)),
            ("alpha-step", r(self.alpha_step)),
            ("mode", self.mode.to_string()),
            ("shots", self.shots.to_string()),
            ("seed", self.seed.to_string()),
            ("threshold", r(self.threshold)),
            ("min-separation", r(self.min_separation)),
            ("peephole", self.peephole.to_string()),
            (
                "gammas",
                self.gammas
                    .iter()
                    .map(|&g| r(g))
                    .collect::<Vec<_>>()
                    .join(","),
            ),
            ("out-dir", self.out_dir.display().to_string()),
        ]);
        pairs
    }

    pub fn to_text(&self) -> String {
        self.to_pairs()
            .into_iter()
            .map(|(k, v)| format!("{k} = {v}\n"))
            .collect()
    }

    /// Starts from the defaults for the file's `experiment` (or `fallback`)
    /// and applies every other key.
    pub fn from_text(text: &str, fallback: ExperimentKind) -> Result<Self> {
        let pairs = parse_config_text(text)?;
        let kind = match pairs.get("experiment") {
            Some(v) => v.parse()?,
            None => fallback,
        };
        let mut cfg = Self::for_kind(kind);
        for (k, v) in &pairs {
            cfg.set(k, v)?;
        }
        Ok(cfg)
    }
}

/// Recovers the configuration echoed at the top of a CSV artifact.
pub fn config_from_csv_echo(text: &str, fallback: ExperimentKind) -> Result<ExperimentConfig> {
    let echo: String = text
        .lines()
        .map_while(|l| l.strip_prefix("# "))
        .map(|l| format!("{l}\n"))
        .collect();
    if echo.is_empty() {
        return Err(Error::Config("no configuration echo found".into()));
    }
    ExperimentConfig::from_text(&echo, fallback)
}

/// Reads `key = value` lines; blank lines and `#` comments are skipped.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected key = value", n + 1)))?;
        out.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(out)
}

fn parse_bool(value: &str) -> Result<bool> {
    match value {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        other => Err(Error::Config(format!("expected a boolean, got {other:?}"))),
    }
}

fn parse_int(key: &str, value: &str) -> Result<u64> {
    value.parse().map_err(|_| {
        Error::Config(format!(
            "{key} must be a non-negative integer, got {value:?}"
        ))
    })
}

/// Parses `1.5`, `pi`, `-8pi`, `2*pi`, `pi/48`, `-3pi/4` or `0.1/3`.
pub fn parse_real(value: &str) -> Result<f64> {
    let bad = || Error::Config(format!("cannot parse real {value:?}"));
    let s: String = value.chars().filter(|c| !c.is_whitespace()).collect();
    let (numerator, denominator) = match s.split_once('/') {
        Some((a, b)) => (a.to_string(), Some(b.parse::<f64>().map_err(|_| bad())?)),
        None => (s.clone(), None),
    };
    let lower = numerator.to_ascii_lowercase();
    let value = if let Some(prefix) = lower.strip_suffix("pi") {
        let prefix = prefix.strip_suffix('*').unwrap_or(prefix);
        let factor = match prefix {
            "" | "+" => 1.0,
            "-" => -1.0,
            p => p.parse::<f64>().map_err(|_| bad())?,
        };
        factor * PI
    } else {
        lower.parse::<f64>().map_err(|_| bad())?
    };
    let value = match denominator {
        Some(d) => value / d,
        None => value,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(bad())
    }
}

pub fn parse_real_list(value: &str) -> Result<Vec<f64>> {
    if value.trim().is_empty() {
        return Ok(Vec::new());
    }
    value.split(',').map(parse_real).collect()
}
