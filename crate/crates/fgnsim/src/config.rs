//! Sweep specification files.
//!
//! The format is flat UTF-8 text: one `key = value` pair per line, `#`
//! starts a comment, lists are comma separated. Recognised keys:
//!
//! ```text
//! config     = CLCQ | BLCQ | TLCQ | ILCQ      (required)
//! hurst      = 0.01, 0.9                      (required)
//! p          = 1.0
//! tau_min    = 0
//! tau_max    = 3
//! tau_steps  = 300
//! mc_samples = 0          # 0 = analytic only
//! seed       = 0
//! out_csv    = sweep.csv
//! out_svg    = plots/sweep   # optional file prefix
//! ```

use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use fgnsim_core::channels::ConfigKind;

use crate::{FgnError, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub config: ConfigKind,
    pub hurst: Vec<f64>,
    pub p: f64,
    pub tau_min: f64,
    pub tau_max: f64,
    pub tau_steps: usize,
    pub mc_samples: usize,
    pub seed: u64,
    pub out_csv: PathBuf,
    pub out_svg: Option<PathBuf>,
}

impl SweepSpec {
    /// Defaults for everything except the preset and the Hurst list.
    pub fn new(config: ConfigKind, hurst: Vec<f64>) -> Self {
        Self {
            config,
            hurst,
            p: 1.0,
            tau_min: 0.0,
            tau_max: 3.0,
            tau_steps: 300,
            mc_samples: 0,
            seed: 0,
            out_csv: PathBuf::from("sweep.csv"),
            out_svg: None,
        }
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| {
            FgnError::config(0, "spec", format!("cannot read {}: {e}", path.display()))
        })?;
        text.parse()
    }

    /// Grid times `tau_min + (tau_max - tau_min) i / (steps - 1)`.
    pub fn taus(&self) -> Vec<f64> {
        let span = self.tau_max - self.tau_min;
        let last = (self.tau_steps - 1) as f64;
        (0..self.tau_steps)
            .map(|i| {
                if i + 1 == self.tau_steps {
                    self.tau_max
                } else {
                    self.tau_min + span * i as f64 / last
                }
            })
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |field: &str, msg: &str| Err(FgnError::config(0, field, msg));
        if self.config == ConfigKind::Custom {
            return bad("config", "expected one of CLCQ, BLCQ, TLCQ, ILCQ");
        }
        if self.hurst.is_empty() {
            return bad("hurst", "at least one value required");
        }
        if self.hurst.iter().any(|&h| !(h > 0.0 && h < 1.0)) {
            return bad("hurst", "values must lie in (0, 1)");
        }
        if !(0.0..=1.0).contains(&self.p) {
            return bad("p", "must lie in [0, 1]");
        }
        if !(self.tau_min >= 0.0 && self.tau_min.is_finite()) {
            return bad("tau_min", "must be finite and >= 0");
        }
        if !(self.tau_max > self.tau_min && self.tau_max.is_finite()) {
            return bad("tau_max", "must be finite and > tau_min");
        }
        if self.tau_steps < 2 {
            return bad("tau_steps", "must be at least 2");
        }
        Ok(())
    }
}

fn parse_num<T: FromStr>(line: usize, key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| FgnError::config(line, key, format!("cannot parse `{}`", value.trim())))
}

impl FromStr for SweepSpec {
    type Err = FgnError;

    fn from_str(text: &str) -> Result<Self> {
        let mut config = None;
        let mut hurst = None;
        let mut spec = SweepSpec::new(ConfigKind::Clcq, Vec::new());
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| FgnError::config(line, content, "expected `key = value`"))?;
            let key = key.trim();
            let value = value.trim();
            match key {
                "config" => {
                    config = Some(ConfigKind::from_name(value).ok_or_else(|| {
                        FgnError::config(line, key, format!("unknown configuration `{value}`"))
                    })?)
                }
                "hurst" => {
                    hurst = Some(
                        value
                            .split(',')
                            .map(|v| parse_num(line, key, v))
                            .collect::<Result<Vec<f64>>>()?,
                    )
                }
                "p" => spec.p = parse_num(line, key, value)?,
                "tau_min" => spec.tau_min = parse_num(line, key, value)?,
                "tau_max" => spec.tau_max = parse_num(line, key, value)?,
                "tau_steps" => spec.tau_steps = parse_num(line, key, value)?,
                "mc_samples" => spec.mc_samples = parse_num(line, key, value)?,
                "seed" => spec.seed = parse_num(line, key, value)?,
                "out_csv" => spec.out_csv = PathBuf::from(value),
                "out_svg" => {
                    spec.out_svg = (!value.is_empty()).then(|| PathBuf::from(value));
                }
                other => return Err(FgnError::config(line, other, "unknown key")),
            }
        }
        spec.config = config.ok_or_else(|| FgnError::config(0, "config", "missing"))?;
        spec.hurst = hurst.ok_or_else(|| FgnError::config(0, "hurst", "missing"))?;
        spec.validate()?;
        Ok(spec)
    }
}
