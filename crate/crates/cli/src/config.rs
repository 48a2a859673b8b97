//! Run configuration. Every setting is taken from its command-line flag if
//! given, else from the optional `key = value` file, else the built-in
//! default.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::ValueEnum;
use pdm_core::spectral::{default_window, CmConfig, DEFAULT_EPS, DEFAULT_GRID_POINTS};
use pdm_core::{Parity, PotentialParams, ShootConfig};

use crate::error::{io_error, CliError, CliResult};
use crate::families::{potential, Coefficients, Family};

pub const GRID_RANGE: (usize, usize) = (501, 1_000_000);
pub const EPS_RANGE: (f64, f64) = (1e-7, 1e-3);

/// Keys accepted in a config file; they mirror the long flag names.
pub const KEYS: &[&str] = &[
    "family", "A", "B", "C", "mass", "n", "eps", "step", "emin", "emax", "out", "from", "to",
    "parity", "state", "xmax", "points",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mass {
    /// Solitonic mass `m0 sech^2 x`.
    Pdm,
    Constant,
}

impl FromStr for Mass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Mass as ValueEnum>::from_str(s, true)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParityArg {
    Sym,
    Anti,
    Both,
}

impl ParityArg {
    pub fn filter(self) -> Option<Parity> {
        match self {
            ParityArg::Sym => Some(Parity::Symmetric),
            ParityArg::Anti => Some(Parity::Antisymmetric),
            ParityArg::Both => None,
        }
    }
}

impl FromStr for ParityArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <ParityArg as ValueEnum>::from_str(s, true)
    }
}

/// Parsed `key = value` file. `#` starts a comment; blank lines are skipped.
#[derive(Debug, Clone, Default)]
pub struct ConfigFile {
    path: String,
    values: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| io_error(path, e))?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn parse(text: &str, path: &str) -> CliResult<Self> {
        let err = |line: usize, msg: String| CliError::Config {
            path: path.to_string(),
            msg: format!("line {line}: {msg}"),
        };
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(i + 1, format!("expected key = value, got {line:?}")))?;
            let (key, value) = (key.trim(), value.trim());
            if !KEYS.contains(&key) {
                return Err(err(i + 1, format!("unknown key {key:?}")));
            }
            if values.insert(key.to_string(), value.to_string()).is_some() {
                return Err(err(i + 1, format!("duplicate key {key:?}")));
            }
        }
        Ok(ConfigFile {
            path: path.to_string(),
            values,
        })
    }
}

/// Flag values layered over an optional config file.
#[derive(Debug, Clone, Default)]
pub struct Layers {
    file: Option<ConfigFile>,
}

impl Layers {
    pub fn new(config: Option<&Path>) -> CliResult<Self> {
        Ok(Layers {
            file: config.map(ConfigFile::load).transpose()?,
        })
    }

    pub fn from_file(file: ConfigFile) -> Self {
        Layers { file: Some(file) }
    }

    pub fn get<T>(&self, key: &str, flag: Option<T>) -> CliResult<Option<T>>
    where
        T: FromStr,
        T::Err: std::fmt::Display,
    {
        if flag.is_some() {
            return Ok(flag);
        }
        let Some(file) = &self.file else { return Ok(None) };
        file.values
            .get(key)
            .map(|v| {
                v.parse::<T>().map_err(|e| CliError::Config {
                    path: file.path.clone(),
                    msg: format!("{key} = {v:?}: {e}"),
                })
            })
            .transpose()
    }

    pub fn get_or<T>(&self, key: &str, flag: Option<T>, default: T) -> CliResult<T>
    where
        T: FromStr,
        T::Err: std::fmt::Display,
    {
        Ok(self.get(key, flag)?.unwrap_or(default))
    }
}

/// Model and solver flags shared by `spectrum`, `wavefunction` and `classify`.
#[derive(Debug, Clone, Default, clap::Args)]
pub struct ModelFlags {
    #[arg(long, value_enum)]
    pub family: Option<Family>,
    #[arg(long = "A", value_name = "A")]
    pub a: Option<f64>,
    #[arg(long = "B", value_name = "B")]
    pub b: Option<f64>,
    #[arg(long = "C", value_name = "C")]
    pub c: Option<f64>,
    #[arg(long, value_enum)]
    pub mass: Option<Mass>,
    /// Shooting grid points across the z interval.
    #[arg(long)]
    pub n: Option<usize>,
    /// Distance of the shooting endpoint from the singular point.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Constant-mass x step.
    #[arg(long)]
    pub step: Option<f64>,
    /// Optional key = value file with the same keys as the flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Shooting grid and endpoint offset, checked against [`GRID_RANGE`] and [`EPS_RANGE`].
pub fn shoot_config(layers: &Layers, n: Option<usize>, eps: Option<f64>) -> CliResult<ShootConfig> {
    let n = layers.get_or("n", n, DEFAULT_GRID_POINTS)?;
    let eps = layers.get_or("eps", eps, DEFAULT_EPS)?;
    if !(GRID_RANGE.0..=GRID_RANGE.1).contains(&n) {
        return Err(CliError::Usage(format!(
            "n = {n} outside [{}, {}]",
            GRID_RANGE.0, GRID_RANGE.1
        )));
    }
    if !(EPS_RANGE.0..=EPS_RANGE.1).contains(&eps) {
        return Err(CliError::Usage(format!(
            "eps = {eps:e} outside [{:e}, {:e}]",
            EPS_RANGE.0, EPS_RANGE.1
        )));
    }
    Ok(ShootConfig { n, eps })
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub family: Family,
    pub params: PotentialParams,
    pub mass: Mass,
    pub shoot: ShootConfig,
    pub cm: CmConfig,
}

impl RunConfig {
    pub fn resolve(flags: &ModelFlags, layers: &Layers) -> CliResult<Self> {
        let family = layers.get_or("family", flags.family, Family::General)?;
        let k = Coefficients {
            a: layers.get("A", flags.a)?,
            b: layers.get("B", flags.b)?,
            c: layers.get("C", flags.c)?,
        };
        let params = potential(family, k)?;
        let mass = layers.get_or("mass", flags.mass, Mass::Pdm)?;
        let shoot = shoot_config(layers, flags.n, flags.eps)?;
        let cm = CmConfig {
            h: layers.get_or("step", flags.step, CmConfig::default().h)?,
        };
        cm.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(RunConfig {
            family,
            params,
            mass,
            shoot,
            cm,
        })
    }

    /// `(emin, emax)` with the potential floor and threshold as defaults.
    pub fn window(&self, emin: Option<f64>, emax: Option<f64>) -> (f64, f64) {
        let (lo, hi) = default_window(&self.params);
        (emin.unwrap_or(lo), emax.unwrap_or(hi))
    }
}
