//! JSON run configuration. Unknown keys are rejected.

use serde::{Deserialize, Serialize};

use crate::coupling::PointerAxis;
use crate::error::{Error, Result};
use crate::sampler::Scheme;
use crate::statekit::{StatePreset, SystemState};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum StateSpec {
    Preset(StatePreset),
    /// `[re, im]` pairs; normalized and phase-fixed on load.
    Amplitudes(Vec<[f64; 2]>),
}

impl StateSpec {
    pub fn build(&self) -> Result<SystemState> {
        match self {
            StateSpec::Preset(p) => p.build(),
            StateSpec::Amplitudes(a) => SystemState::from_pairs(a),
        }
    }
}

/// Inclusive ranges `[start, stop, step]` for each phase component.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    pub phi1: [f64; 3],
    pub phi2: [f64; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShotConfig {
    #[serde(default)]
    pub seed: u64,
    pub per_observable: u64,
    #[serde(default = "default_repetitions")]
    pub repetitions: u32,
}

fn default_repetitions() -> u32 {
    200
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub scheme: Scheme,
    #[serde(default)]
    pub state: Option<StateSpec>,
    #[serde(default)]
    pub theta: Option<f64>,
    #[serde(default)]
    pub target_x: Option<usize>,
    #[serde(default)]
    pub pointer_axis: PointerAxis,
    #[serde(default)]
    pub n: Option<u32>,
    #[serde(default)]
    pub n_values: Option<Vec<u32>>,
    #[serde(default)]
    pub grid: Option<Grid>,
    #[serde(default)]
    pub phases: Option<Vec<[f64; 2]>>,
    #[serde(default)]
    pub shots: Option<ShotConfig>,
    #[serde(default)]
    pub exact: bool,
    #[serde(default)]
    pub gamma_abs: Option<Vec<f64>>,
    #[serde(default)]
    pub tr_split: Option<f64>,
    #[serde(default)]
    pub out: Option<String>,
}

fn missing(field: &str, why: &str) -> Error {
    Error::Config(format!("field `{field}`: required {why}"))
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn require_scheme(&self, allowed: &[Scheme], command: &str) -> Result<()> {
        if !allowed.contains(&self.scheme) {
            return Err(Error::Config(format!("field `scheme`: `{}` is not supported by `{command}`", self.scheme)));
        }
        Ok(())
    }

    pub fn state(&self) -> Result<SystemState> {
        self.state
            .as_ref()
            .ok_or_else(|| missing("state", "for reconstruction"))?
            .build()
            .map_err(|e| Error::Config(format!("field `state`: {e}")))
    }

    pub fn theta(&self) -> Result<f64> {
        let t = self.theta.ok_or_else(|| missing("theta", "for reconstruction"))?;
        if !(t > 0.0 && t <= std::f64::consts::PI) {
            return Err(Error::Config(format!("field `theta`: {t} is outside (0, pi]")));
        }
        Ok(t)
    }

    pub fn n(&self) -> Result<u32> {
        match self.n {
            Some(0) => Err(Error::Config("field `n`: must be positive".into())),
            Some(n) => Ok(n),
            None => Err(missing("n", "for this command")),
        }
    }

    /// `n_values` if given, otherwise the single `n`.
    pub fn n_list(&self) -> Result<Vec<u32>> {
        match &self.n_values {
            Some(v) if v.is_empty() => Err(Error::Config("field `n_values`: empty list".into())),
            Some(v) if v.contains(&0) => Err(Error::Config("field `n_values`: entries must be positive".into())),
            Some(v) => Ok(v.clone()),
            None => Ok(vec![self.n()?]),
        }
    }

    pub fn shots(&self) -> Result<&ShotConfig> {
        let s = self.shots.as_ref().ok_or_else(|| missing("shots", "for sampling"))?;
        if s.per_observable < 2 {
            return Err(Error::Config("field `shots.per_observable`: need at least 2".into()));
        }
        if s.repetitions < 2 {
            return Err(Error::Config("field `shots.repetitions`: need at least 2".into()));
        }
        Ok(s)
    }

    pub fn tr_split(&self) -> Result<f64> {
        let s = self.tr_split.unwrap_or(0.5);
        if !(s > 0.0 && s < 1.0) {
            return Err(Error::Config(format!("field `tr_split`: {s} is outside (0, 1)")));
        }
        Ok(s)
    }
}

/// Points of an inclusive `[start, stop, step]` range, each rounded to 15
/// significant digits so that printed and computed values coincide.
pub fn axis_points(field: &str, r: [f64; 3]) -> Result<Vec<f64>> {
    let [start, stop, step] = r;
    if !(step > 0.0) || !(stop >= start) || !start.is_finite() || !stop.is_finite() {
        return Err(Error::Config(format!("field `{field}`: need start <= stop and step > 0, got {r:?}")));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    if count > 1_000_000 {
        return Err(Error::Config(format!("field `{field}`: {count} points is too many")));
    }
    Ok((0..count)
        .map(|k| {
            let x = super::format::round_sig(start + k as f64 * step);
            if x.abs() < 1e-12 * step {
                0.0
            } else {
                x
            }
        })
        .collect())
}
