//! System states `|psi_S> = sum_x psi_x |x>` under the global-phase convention
//! that the amplitude sum `psi~ = sum_x psi_x` is real and positive.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::C64;

/// Tolerance for normalization and for the phase convention.
pub const STATE_TOL: f64 = 1e-12;

/// Below this amplitude sum the reconstruction is ill-conditioned; a warning
/// is logged but the state is accepted.
pub const SMALL_SUM_WARN: f64 = 1e-6;

/// A normalized pure state whose amplitude sum is real and positive.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemState {
    amplitudes: Vec<C64>,
}

impl SystemState {
    /// Normalizes `raw` and removes the global phase of its amplitude sum.
    pub fn new(raw: &[C64]) -> Result<Self> {
        if raw.len() < 2 {
            return Err(Error::TooShort(raw.len()));
        }
        let norm = raw.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::ZeroNorm);
        }
        let sum: C64 = raw.iter().sum::<C64>() / norm;
        if sum.norm() <= STATE_TOL {
            return Err(Error::ZeroSum(sum.norm()));
        }
        if sum.norm() < SMALL_SUM_WARN {
            log::warn!("amplitude sum {:e} is tiny; reconstruction is ill-conditioned", sum.norm());
        }
        let phase = C64::from_polar(1.0 / norm, -sum.arg());
        let amplitudes = raw.iter().map(|a| a * phase).collect();
        Ok(Self { amplitudes })
    }

    pub fn from_pairs(pairs: &[[f64; 2]]) -> Result<Self> {
        let raw: Vec<C64> = pairs.iter().map(|p| C64::new(p[0], p[1])).collect();
        Self::new(&raw)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    /// Amplitude at basis index `x`, counted from 1.
    pub fn amplitude(&self, x: usize) -> Result<C64> {
        if x == 0 || x > self.dim() {
            return Err(Error::TargetOutOfRange { x, dim: self.dim() });
        }
        Ok(self.amplitudes[x - 1])
    }

    /// `psi~ = sum_x psi_x`, real by construction.
    pub fn tilde_psi(&self) -> f64 {
        self.amplitudes.iter().sum::<C64>().re
    }

    /// Complex conjugation of all amplitudes; the basis is taken to be
    /// invariant under time reversal.
    pub fn time_reverse(&self) -> Self {
        Self { amplitudes: self.amplitudes.iter().map(|a| a.conj()).collect() }
    }
}

/// Named state presets accepted by the run configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum StatePreset {
    /// All amplitudes equal.
    Uniform(usize),
    /// `psi_x` proportional to `x`.
    Ramp(usize),
}

impl StatePreset {
    pub fn build(self) -> Result<SystemState> {
        let raw: Vec<C64> = match self {
            StatePreset::Uniform(d) => vec![C64::new(1.0, 0.0); d],
            StatePreset::Ramp(d) => (1..=d).map(|x| C64::new(x as f64, 0.0)).collect(),
        };
        SystemState::new(&raw)
    }
}

impl FromStr for StatePreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("unknown state preset `{s}` (expected uniform-<d> or ramp-<d>)"));
        let (kind, d) = s.rsplit_once('-').ok_or_else(bad)?;
        let d: usize = d.parse().map_err(|_| bad())?;
        match kind {
            "uniform" => Ok(StatePreset::Uniform(d)),
            "ramp" => Ok(StatePreset::Ramp(d)),
            _ => Err(bad()),
        }
    }
}

impl TryFrom<String> for StatePreset {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<StatePreset> for String {
    fn from(p: StatePreset) -> String {
        p.to_string()
    }
}

impl fmt::Display for StatePreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StatePreset::Uniform(d) => write!(f, "uniform-{d}"),
            StatePreset::Ramp(d) => write!(f, "ramp-{d}"),
        }
    }
}
