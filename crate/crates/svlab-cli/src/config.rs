//! Run configuration: defaults, optional TOML file, flag overrides.
//!
//! Precedence is flags over file over defaults. Defaults reproduce the
//! standard figure parameters so a bare subcommand is already useful.

use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Deserialize;

/// Optional per-command sections of a TOML config file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub parity_scan: Option<ParityScanSection>,
    pub parity_landscape: Option<LandscapeSection>,
    pub pseudospin_scan: Option<PseudospinScanSection>,
    pub f_sequence: Option<FSequenceSection>,
    pub threshold: Option<ThresholdSection>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParityScanSection {
    pub n: Option<usize>,
    pub a_min: Option<f64>,
    pub a_max: Option<f64>,
    pub steps: Option<usize>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LandscapeSection {
    pub n: Option<usize>,
    pub a: Option<f64>,
    pub p_min: Option<f64>,
    pub p_max: Option<f64>,
    pub grid: Option<usize>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PseudospinScanSection {
    pub r_min: Option<f64>,
    pub r_max: Option<f64>,
    pub steps: Option<usize>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FSequenceSection {
    pub n_max: Option<usize>,
    pub fit_lo: Option<usize>,
    pub fit_hi: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThresholdSection {
    pub n: Option<usize>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }
}

/// Fully resolved parameters, one struct per subcommand.
#[derive(Debug, Clone)]
pub struct ParityScanConfig {
    pub n: usize,
    pub a_min: f64,
    pub a_max: f64,
    pub steps: usize,
}

#[derive(Debug, Clone)]
pub struct LandscapeConfig {
    pub n: usize,
    pub a: f64,
    pub p_min: f64,
    pub p_max: f64,
    pub grid: usize,
}

#[derive(Debug, Clone)]
pub struct PseudospinScanConfig {
    pub r_min: f64,
    pub r_max: f64,
    pub steps: usize,
}

#[derive(Debug, Clone)]
pub struct FSequenceConfig {
    pub n_max: usize,
    pub fit_lo: usize,
    pub fit_hi: usize,
}

fn pick<T: Copy>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}

impl ParityScanConfig {
    pub fn resolve(
        file: Option<&ParityScanSection>,
        n: Option<usize>,
        a_min: Option<f64>,
        a_max: Option<f64>,
        steps: Option<usize>,
    ) -> Result<Self> {
        let f = file.cloned().unwrap_or_default();
        let cfg = Self {
            n: pick(n, f.n, 3),
            a_min: pick(a_min, f.a_min, 1.0),
            a_max: pick(a_max, f.a_max, 3.0),
            steps: pick(steps, f.steps, 50),
        };
        if cfg.n < 2 {
            bail!("parity-scan needs at least 2 modes, got {}", cfg.n);
        }
        if cfg.steps == 0 {
            bail!("parity-scan needs at least 1 grid point");
        }
        if !(cfg.a_min >= 1.0 && cfg.a_max >= cfg.a_min) {
            bail!(
                "parity-scan grid must satisfy 1 <= a_min <= a_max, got [{}, {}]",
                cfg.a_min,
                cfg.a_max
            );
        }
        Ok(cfg)
    }
}

impl LandscapeConfig {
    pub fn resolve(
        file: Option<&LandscapeSection>,
        n: Option<usize>,
        a: Option<f64>,
        p_min: Option<f64>,
        p_max: Option<f64>,
        grid: Option<usize>,
    ) -> Result<Self> {
        let f = file.cloned().unwrap_or_default();
        let cfg = Self {
            n: pick(n, f.n, 3),
            a: pick(a, f.a, 1.5),
            p_min: pick(p_min, f.p_min, -1.5),
            p_max: pick(p_max, f.p_max, 1.5),
            grid: pick(grid, f.grid, 101),
        };
        if cfg.n < 2 {
            bail!("parity-landscape needs at least 2 modes, got {}", cfg.n);
        }
        if cfg.grid == 0 {
            bail!("parity-landscape needs at least a 1x1 grid");
        }
        if !(cfg.a >= 1.0) {
            bail!("parity-landscape needs a >= 1, got {}", cfg.a);
        }
        if !(cfg.p_max >= cfg.p_min) {
            bail!(
                "parity-landscape grid must satisfy p_min <= p_max, got [{}, {}]",
                cfg.p_min,
                cfg.p_max
            );
        }
        Ok(cfg)
    }
}

impl PseudospinScanConfig {
    pub fn resolve(
        file: Option<&PseudospinScanSection>,
        r_min: Option<f64>,
        r_max: Option<f64>,
        steps: Option<usize>,
    ) -> Result<Self> {
        let f = file.cloned().unwrap_or_default();
        let cfg = Self {
            r_min: pick(r_min, f.r_min, 0.0),
            r_max: pick(r_max, f.r_max, 3.0),
            steps: pick(steps, f.steps, 13),
        };
        if cfg.steps == 0 {
            bail!("pseudospin-scan needs at least 1 grid point");
        }
        if !(cfg.r_min >= 0.0 && cfg.r_max >= cfg.r_min) {
            bail!(
                "pseudospin-scan grid must satisfy 0 <= r_min <= r_max, got [{}, {}]",
                cfg.r_min,
                cfg.r_max
            );
        }
        Ok(cfg)
    }
}

impl FSequenceConfig {
    pub fn resolve(
        file: Option<&FSequenceSection>,
        n_max: Option<usize>,
        fit_lo: Option<usize>,
        fit_hi: Option<usize>,
    ) -> Result<Self> {
        let f = file.cloned().unwrap_or_default();
        let cfg = Self {
            n_max: pick(n_max, f.n_max, 1000),
            fit_lo: pick(fit_lo, f.fit_lo, 500),
            fit_hi: pick(fit_hi, f.fit_hi, 1000),
        };
        if !(cfg.fit_lo >= 1 && cfg.fit_lo < cfg.fit_hi && cfg.fit_hi <= cfg.n_max) {
            bail!(
                "f-sequence fit window must satisfy 1 <= fit_lo < fit_hi <= n_max, \
                 got [{}, {}] with n_max {}",
                cfg.fit_lo,
                cfg.fit_hi,
                cfg.n_max
            );
        }
        Ok(cfg)
    }
}

pub fn resolve_threshold_n(file: Option<&ThresholdSection>, n: Option<usize>) -> Result<usize> {
    let n = pick(n, file.and_then(|s| s.n), 3);
    if n < 3 || n.is_multiple_of(2) {
        bail!(
            "threshold is defined for odd n >= 3 only, got {n} (even n violates for every a > 1)"
        );
    }
    Ok(n)
}
