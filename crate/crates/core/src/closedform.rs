//! Reference closed-form witness and purity curves for the pure GHZ input,
//! as functions of the phase variance `beta`.
//!
//! These are transcribed as published, factorisations included. They are
//! regression oracles for the simulator, not part of it.

use core::fmt;

use crate::channels::ConfigKind;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClosedMeasure {
    Witness,
    Purity,
}

impl ClosedMeasure {
    pub const ALL: [ClosedMeasure; 2] = [Self::Witness, Self::Purity];

    pub fn name(self) -> &'static str {
        match self {
            Self::Witness => "ER",
            Self::Purity => "PY",
        }
    }
}

/// One of the eight published (configuration, measure) curves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ClosedFormId {
    config: ConfigKind,
    measure: ClosedMeasure,
}

impl ClosedFormId {
    pub fn new(config: ConfigKind, measure: ClosedMeasure) -> Result<Self> {
        if config == ConfigKind::Custom {
            return Err(Error::Domain("no closed form for custom partitions"));
        }
        Ok(Self { config, measure })
    }

    pub fn all() -> impl Iterator<Item = ClosedFormId> {
        ConfigKind::PRESETS.into_iter().flat_map(|config| {
            ClosedMeasure::ALL
                .into_iter()
                .map(move |measure| ClosedFormId { config, measure })
        })
    }

    pub fn config(&self) -> ConfigKind {
        self.config
    }

    pub fn measure(&self) -> ClosedMeasure {
        self.measure
    }
}

impl fmt::Display for ClosedFormId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.measure.name(), self.config.name())
    }
}

#[inline]
fn e(x: f64) -> f64 {
    libm::exp(x)
}

/// Evaluates the published expression at `beta`.
pub fn eval_closed(id: ClosedFormId, beta: f64) -> Result<f64> {
    if !(beta >= 0.0) {
        return Err(Error::Domain("beta must be non-negative"));
    }
    let b = beta;
    let v = match (id.config, id.measure) {
        (ConfigKind::Clcq, ClosedMeasure::Witness) => {
            (e(-32.0 * b) + 12.0 * e(-8.0 * b) + 3.0) / 32.0
        }
        (ConfigKind::Blcq, ClosedMeasure::Witness) => {
            (e(-16.0 * b) + e(-8.0 * b) + 8.0 * e(-4.0 * b) + e(-2.0 * b) - 3.0) / 16.0
        }
        (ConfigKind::Tlcq, ClosedMeasure::Witness) => {
            let v =
                e(-12.0 * b) * (11.0 * e(8.0 * b) + e(10.0 * b) - 5.0 * e(12.0 * b) + 1.0) / 16.0;
            if v.is_finite() {
                v
            } else {
                tlcq_witness_expanded(b)
            }
        }
        (ConfigKind::Ilcq, ClosedMeasure::Witness) => (e(-8.0 * b) + 6.0 * e(-4.0 * b) - 3.0) / 8.0,
        (ConfigKind::Clcq, ClosedMeasure::Purity) => {
            (19.0 + e(-64.0 * b) + 12.0 * e(-16.0 * b)) / 32.0
        }
        (ConfigKind::Blcq, ClosedMeasure::Purity) => {
            let v = e(-32.0 * b)
                * (1.0 + e(16.0 * b) + 8.0 * e(24.0 * b) + e(28.0 * b) + 5.0 * e(32.0 * b))
                / 16.0;
            if v.is_finite() {
                v
            } else {
                (e(-32.0 * b) + e(-16.0 * b) + 8.0 * e(-8.0 * b) + e(-4.0 * b) + 5.0) / 16.0
            }
        }
        (ConfigKind::Tlcq, ClosedMeasure::Purity) => {
            (5.0 + 8.0 * e(-8.0 * b) + 3.0 * e(-4.0 * b)) / 16.0
        }
        (ConfigKind::Ilcq, ClosedMeasure::Purity) => (1.0 + e(-16.0 * b) + 6.0 * e(-8.0 * b)) / 8.0,
        (ConfigKind::Custom, _) => unreachable!("rejected at construction"),
    };
    Ok(v)
}

/// The TLCQ witness multiplied out:
/// `-5/16 + 11 e^{-4b}/16 + e^{-2b}/16 + e^{-12b}/16`.
pub fn tlcq_witness_expanded(beta: f64) -> f64 {
    -5.0 / 16.0 + 11.0 * e(-4.0 * beta) / 16.0 + e(-2.0 * beta) / 16.0 + e(-12.0 * beta) / 16.0
}

/// Limit of the published expression as `beta -> infinity`.
pub fn asymptote(id: ClosedFormId) -> f64 {
    match (id.config, id.measure) {
        (ConfigKind::Clcq, ClosedMeasure::Witness) => 3.0 / 32.0,
        (ConfigKind::Blcq, ClosedMeasure::Witness) => -3.0 / 16.0,
        (ConfigKind::Tlcq, ClosedMeasure::Witness) => -5.0 / 16.0,
        (ConfigKind::Ilcq, ClosedMeasure::Witness) => -3.0 / 8.0,
        (ConfigKind::Clcq, ClosedMeasure::Purity) => 19.0 / 32.0,
        (ConfigKind::Blcq, ClosedMeasure::Purity) => 5.0 / 16.0,
        (ConfigKind::Tlcq, ClosedMeasure::Purity) => 5.0 / 16.0,
        (ConfigKind::Ilcq, ClosedMeasure::Purity) => 1.0 / 8.0,
        (ConfigKind::Custom, _) => unreachable!("rejected at construction"),
    }
}
