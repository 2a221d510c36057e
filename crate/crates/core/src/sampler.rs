//! Seeded Monte Carlo of projective measurements on the pointer states, and
//! the per-scheme estimators applied to the sampled means.
//!
//! Each `(repetition, setting)` pair draws from its own ChaCha8 stream,
//! `seed_from_u64(seed)` with stream number `(repetition << 16) | setting`, so
//! results do not depend on how work is scheduled across threads.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector, Matrix2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coupling::{final_pointer_from_phase, pauli_x, pauli_y, pauli_z, ComplexPhase, PointerAxis, QubitState};
use crate::dicke::{dicke_estimate, dicke_jacobian, rotate_dicke, DickeState};
use crate::error::{Error, Result};
use crate::metrology::{invert_error_propagation, CovarianceReport};
use crate::noon::{noon_estimate, noon_jacobian, noon_state_from_phase, NoonState};
use crate::qubit::estimate_phase;
use crate::spin::Spin;
use crate::tr::{tr_point_estimate, tr_state_from_phase, TrPairState};
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Qubit,
    Noon,
    Dicke,
    Tr,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scheme::Qubit => "qubit",
            Scheme::Noon => "noon",
            Scheme::Dicke => "dicke",
            Scheme::Tr => "tr",
        })
    }
}

impl FromStr for Scheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "qubit" => Ok(Scheme::Qubit),
            "noon" => Ok(Scheme::Noon),
            "dicke" => Ok(Scheme::Dicke),
            "tr" => Ok(Scheme::Tr),
            other => Err(Error::Config(format!("unknown scheme `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PointerState {
    Qubit(QubitState),
    Noon(NoonState),
    Dicke(DickeState),
    TrPair(TrPairState),
}

impl PointerState {
    /// Amplitudes in the representation the state lives in: the qubit basis,
    /// the two-dimensional NOON span, or the spin multiplet.
    pub fn vector(&self) -> DVector<C64> {
        match self {
            PointerState::Qubit(q) => DVector::from_column_slice(&q.amps),
            PointerState::Noon(s) => DVector::from_column_slice(&[s.amp0, s.amp1]),
            PointerState::Dicke(d) => d.coefficients.clone(),
            PointerState::TrPair(t) => DVector::from_column_slice(&[t.amp0, t.amp1]),
        }
    }

    pub fn representation(&self) -> &'static str {
        match self {
            PointerState::Qubit(_) => "qubit",
            PointerState::Noon(_) => "noon-span",
            PointerState::Dicke(_) => "spin-multiplet",
            PointerState::TrPair(_) => "tr-pair-span",
        }
    }
}

/// A projective measurement: distinct eigenvalues and the eigenvectors
/// spanning each eigenspace.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementModel {
    pub label: String,
    values: Vec<f64>,
    vectors: DMatrix<C64>,
    group: Vec<usize>,
}

impl MeasurementModel {
    pub fn from_hermitian(label: &str, op: &DMatrix<C64>) -> Result<Self> {
        Self::from_hermitian_mapped(label, op, |x| x)
    }

    /// Measures `op` and reports `f(eigenvalue)`; eigenspaces merging under
    /// `f` are merged in the model.
    pub fn from_hermitian_mapped(label: &str, op: &DMatrix<C64>, f: impl Fn(f64) -> f64) -> Result<Self> {
        if !op.is_square() || (op - op.adjoint()).iter().any(|z| z.norm() > 1e-12) {
            return Err(Error::InvalidInput(format!("observable `{label}` is not Hermitian")));
        }
        let eig = op.clone().symmetric_eigen();
        let mapped: Vec<f64> = eig.eigenvalues.iter().map(|&x| f(x)).collect();
        let mut sorted = mapped.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut values: Vec<f64> = Vec::new();
        for x in sorted {
            if values.last().is_none_or(|&v| (x - v).abs() > 1e-9) {
                values.push(x);
            }
        }
        let group = mapped.iter().map(|&x| values.iter().position(|&v| (x - v).abs() <= 1e-9).unwrap()).collect();
        for v in values.iter_mut() {
            let r = v.round();
            if (*v - r).abs() < 1e-9 {
                *v = r;
            }
        }
        Ok(Self { label: label.to_string(), values, vectors: eig.eigenvectors, group })
    }

    pub fn dim(&self) -> usize {
        self.vectors.nrows()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.values
    }

    /// Born probabilities of each distinct eigenvalue.
    pub fn probabilities(&self, state: &PointerState) -> Result<Vec<f64>> {
        let v = state.vector();
        if v.len() != self.dim() {
            return Err(Error::UnsupportedRepresentation {
                observable: self.label.clone(),
                state: state.representation().to_string(),
            });
        }
        let amps = self.vectors.adjoint() * v;
        let mut p = vec![0.0; self.values.len()];
        for (k, a) in amps.iter().enumerate() {
            p[self.group[k]] += a.norm_sqr();
        }
        let total: f64 = p.iter().sum();
        Ok(p.into_iter().map(|x| x / total).collect())
    }

    /// `(mean, variance)` of a single shot.
    pub fn moments(&self, state: &PointerState) -> Result<(f64, f64)> {
        let p = self.probabilities(state)?;
        let mean: f64 = p.iter().zip(&self.values).map(|(p, x)| p * x).sum();
        let sq: f64 = p.iter().zip(&self.values).map(|(p, x)| p * x * x).sum();
        Ok((mean, sq - mean * mean))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShotPlan {
    pub seed: u64,
    pub shots: u64,
}

impl ShotPlan {
    pub fn rng(&self, repetition: u64, setting: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream((repetition << 16) | setting);
        rng
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementRecord {
    pub observable: String,
    pub eigenvalues: Vec<f64>,
    pub counts: Vec<u64>,
    pub seed: u64,
}

impl MeasurementRecord {
    pub fn shots(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn mean(&self) -> f64 {
        let n = self.shots() as f64;
        self.counts.iter().zip(&self.eigenvalues).map(|(&c, x)| c as f64 * x).sum::<f64>() / n
    }

    /// Sample variance of one outcome divided by the number of shots.
    pub fn var_of_mean(&self) -> f64 {
        let n = self.shots() as f64;
        let m = self.mean();
        let ss: f64 = self.counts.iter().zip(&self.eigenvalues).map(|(&c, x)| c as f64 * (x - m) * (x - m)).sum();
        ss / (n - 1.0) / n
    }
}

/// Draws `plan.shots` outcomes of `model` on `state` from stream
/// `(repetition, setting)`.
pub fn sample_observable(
    state: &PointerState,
    model: &MeasurementModel,
    plan: &ShotPlan,
    repetition: u64,
    setting: u64,
) -> Result<MeasurementRecord> {
    let p = model.probabilities(state)?;
    let mut cdf: Vec<f64> = p
        .iter()
        .scan(0.0, |acc, x| {
            *acc += x;
            Some(*acc)
        })
        .collect();
    if let Some(last) = cdf.last_mut() {
        *last = 1.0;
    }
    let mut rng = plan.rng(repetition, setting);
    let mut counts = vec![0u64; p.len()];
    for _ in 0..plan.shots {
        let u: f64 = rng.random();
        let k = cdf.partition_point(|&c| c <= u).min(counts.len() - 1);
        counts[k] += 1;
    }
    Ok(MeasurementRecord {
        observable: model.label.clone(),
        eigenvalues: model.eigenvalues().to_vec(),
        counts,
        seed: plan.seed,
    })
}

/// CSV rows `scheme,observable,eigenvalue,count,seed`, header included.
pub fn records_to_csv(scheme: Scheme, records: &[MeasurementRecord]) -> String {
    let mut out = String::from("scheme,observable,eigenvalue,count,seed\n");
    for r in records {
        for (x, c) in r.eigenvalues.iter().zip(&r.counts) {
            out.push_str(&format!("{scheme},{},{x},{c},{}\n", r.observable, r.seed));
        }
    }
    out
}

/// One prepared pointer and the observable measured on it.
#[derive(Debug, Clone)]
pub struct Setting {
    pub state: PointerState,
    pub model: MeasurementModel,
    pub shots: u64,
}

/// The settings that make up one estimate of `phi` for a scheme. The first
/// two settings carry the two parameters; a third, if present, only fixes the
/// sign of `phi1`.
#[derive(Debug, Clone)]
pub struct Experiment {
    pub scheme: Scheme,
    pub n: u32,
    pub settings: Vec<Setting>,
}

fn real_matrix2(m: &nalgebra::Matrix2<C64>) -> DMatrix<C64> {
    DMatrix::from_iterator(2, 2, m.iter().cloned())
}

impl Experiment {
    /// `shots` per setting; in the time-reversal scheme `tr_split` of the
    /// total `2 shots` go to the pair interferometer.
    pub fn new(scheme: Scheme, n: u32, phi: ComplexPhase, shots: u64, tr_split: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("N must be positive".into()));
        }
        let x = real_matrix2(&pauli_x());
        let z = real_matrix2(&pauli_z());
        let settings = match scheme {
            Scheme::Qubit => {
                let input = QubitState::plus_eigenstate(&pauli_x());
                let st = PointerState::Qubit(final_pointer_from_phase(phi, PointerAxis::Z, &input)?);
                vec![
                    Setting { state: st.clone(), model: MeasurementModel::from_hermitian("K1", &x)?, shots },
                    Setting { state: st.clone(), model: MeasurementModel::from_hermitian("K", &z)?, shots },
                    Setting {
                        state: st,
                        model: MeasurementModel::from_hermitian("K2", &real_matrix2(&pauli_y()))?,
                        shots,
                    },
                ]
            }
            Scheme::Noon => {
                let st = PointerState::Noon(noon_state_from_phase(phi, n));
                vec![
                    Setting { state: st.clone(), model: MeasurementModel::from_hermitian("M1", &x)?, shots },
                    Setting { state: st, model: MeasurementModel::from_hermitian("M2", &z)?, shots },
                ]
            }
            Scheme::Dicke => {
                let spin = Spin::from_qubits(n);
                let st = PointerState::Dicke(rotate_dicke(spin, phi));
                vec![
                    Setting {
                        state: st.clone(),
                        model: MeasurementModel::from_hermitian_mapped("Jz^2", &spin.jz(), |m| m * m)?,
                        shots,
                    },
                    Setting { state: st, model: MeasurementModel::from_hermitian("Jy", &spin.jy())?, shots },
                ]
            }
            Scheme::Tr => {
                if !(tr_split > 0.0 && tr_split < 1.0) {
                    return Err(Error::Config(format!("tr_split must lie in (0, 1), got {tr_split}")));
                }
                let total = 2 * shots;
                let pair_shots = ((total as f64) * tr_split).round().max(1.0) as u64;
                let rest = total.saturating_sub(pair_shots).max(1);
                vec![
                    Setting {
                        state: PointerState::TrPair(tr_state_from_phase(phi.re, n)),
                        model: MeasurementModel::from_hermitian("parity", &x)?,
                        shots: pair_shots,
                    },
                    Setting {
                        state: PointerState::Noon(noon_state_from_phase(phi, n)),
                        model: MeasurementModel::from_hermitian("M2", &z)?,
                        shots: rest,
                    },
                ]
            }
        };
        Ok(Self { scheme, n, settings })
    }

    pub fn sample(&self, seed: u64, repetition: u64) -> Result<Vec<MeasurementRecord>> {
        self.settings
            .iter()
            .enumerate()
            .map(|(k, s)| {
                sample_observable(&s.state, &s.model, &ShotPlan { seed, shots: s.shots }, repetition, k as u64)
            })
            .collect()
    }

    /// Jacobian of the first two settings' means with respect to `(phi1, phi2)`.
    pub fn jacobian(&self, phi: ComplexPhase) -> Result<Matrix2<f64>> {
        let nf = self.n as f64;
        Ok(match self.scheme {
            Scheme::Qubit => {
                let (s, c) = phi.re.sin_cos();
                let (ch, th) = (phi.im.cosh(), phi.im.tanh());
                Matrix2::new(-s / ch, -c * th / ch, 0.0, 1.0 / (ch * ch))
            }
            Scheme::Noon => noon_jacobian(phi, self.n),
            Scheme::Dicke => dicke_jacobian(Spin::from_qubits(self.n), phi)?,
            Scheme::Tr => {
                let ch = (nf * phi.im).cosh();
                Matrix2::new(-2.0 * nf * (2.0 * nf * phi.re).sin(), 0.0, 0.0, nf / (ch * ch))
            }
        })
    }

    /// Covariance of the estimate implied by exact per-shot variances.
    pub fn analytic_covariance(&self, phi: ComplexPhase) -> Result<CovarianceReport> {
        let mut v = Matrix2::zeros();
        for k in 0..2 {
            let s = &self.settings[k];
            v[(k, k)] = s.model.moments(&s.state)?.1 / s.shots as f64;
        }
        invert_error_propagation(&self.jacobian(phi)?, &v)
    }

    /// Applies the scheme's inversion to sampled means; the covariance is the
    /// shot noise of the means propagated through the Jacobian at the estimate.
    pub fn estimate(&self, records: &[MeasurementRecord]) -> Result<(ComplexPhase, CovarianceReport)> {
        empirical_phase_estimate(records, self.scheme, self.n)
    }
}

fn find<'a>(records: &'a [MeasurementRecord], label: &str) -> Result<&'a MeasurementRecord> {
    records
        .iter()
        .find(|r| r.observable == label)
        .ok_or_else(|| Error::InvalidInput(format!("no record for observable `{label}`")))
}

pub fn empirical_phase_estimate(
    records: &[MeasurementRecord],
    scheme: Scheme,
    n: u32,
) -> Result<(ComplexPhase, CovarianceReport)> {
    let (labels, phi) = match scheme {
        Scheme::Qubit => {
            let (k1, k, k2) = (find(records, "K1")?, find(records, "K")?, find(records, "K2")?);
            (["K1", "K"], estimate_phase(k1.mean(), k.mean(), Some(k2.mean()), 1.0)?.phi)
        }
        Scheme::Noon => (["M1", "M2"], noon_estimate(find(records, "M1")?.mean(), find(records, "M2")?.mean(), n)?),
        Scheme::Dicke => (
            ["Jz^2", "Jy"],
            dicke_estimate(Spin::from_qubits(n), find(records, "Jz^2")?.mean(), find(records, "Jy")?.mean())?,
        ),
        Scheme::Tr => {
            let m2 = find(records, "M2")?.mean();
            if !(m2.abs() < 1.0) {
                return Err(Error::OutOfDomainMean { observable: "M2".into(), mean: m2 });
            }
            let phi1 = tr_point_estimate(find(records, "parity")?.mean(), n)?;
            (["parity", "M2"], ComplexPhase::new(phi1, m2.atanh() / n as f64))
        }
    };
    let v = Matrix2::new(find(records, labels[0])?.var_of_mean(), 0.0, 0.0, find(records, labels[1])?.var_of_mean());
    let probe = Experiment { scheme, n, settings: Vec::new() };
    let cov = invert_error_propagation(&probe.jacobian(phi)?, &v)?;
    Ok((phi, CovarianceReport { source: crate::metrology::CovarianceSource::Empirical, ..cov }))
}
