//! Time-reversal pairing: each pointer qubit coupled to `|psi>` is paired with
//! one coupled to its conjugate. The moduli of the two branch amplitudes then
//! coincide, `phi2` drops out, and the relative phase is `2 N phi1`.

use crate::coupling::{AlphaBeta, ComplexPhase};
use crate::error::{Error, Result};
use crate::C64;

/// State on the `2N`-qubit span of `|0...0>` and `|1...1>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrPairState {
    pub n_pairs: u32,
    pub amp0: C64,
    pub amp1: C64,
}

impl TrPairState {
    /// `<sigma_x^(x)2N>` on the pair register.
    pub fn parity(&self) -> f64 {
        2.0 * (self.amp0.conj() * self.amp1).re
    }

    pub fn relative_phase(&self) -> C64 {
        self.amp1 / self.amp0
    }
}

/// Builds `[(a - ib)(a* - ib*)]^N |0..0> + [(a* + ib*)(a + ib)]^N |1..1>` and
/// normalizes it, working with logarithms so any `N` is safe.
pub fn tr_final_state(ab: &AlphaBeta, n: u32) -> Result<TrPairState> {
    if n == 0 {
        return Err(Error::InvalidInput("time-reversal scheme needs at least one pair".into()));
    }
    let i = C64::new(0.0, 1.0);
    let t = ab.conj();
    let zero = (ab.alpha - i * ab.beta) * (t.alpha - i * t.beta);
    let one = (t.alpha + i * t.beta) * (ab.alpha + i * ab.beta);
    if zero.norm() == 0.0 || one.norm() == 0.0 {
        return Err(Error::DegenerateAlphaBeta);
    }
    let nf = n as f64;
    let (l0, l1) = (zero.ln() * nf, one.ln() * nf);
    let top = l0.re.max(l1.re);
    let (a0, a1) = ((l0 - top).exp(), (l1 - top).exp());
    let norm = (a0.norm_sqr() + a1.norm_sqr()).sqrt();
    Ok(TrPairState { n_pairs: n, amp0: a0 / norm, amp1: a1 / norm })
}

/// `(|0..0> + e^{2iN phi1}|1..1>)/sqrt(2)`.
pub fn tr_state_from_phase(phi1: f64, n: u32) -> TrPairState {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    TrPairState { n_pairs: n, amp0: C64::from(h), amp1: C64::from_polar(h, 2.0 * n as f64 * phi1) }
}

/// `| |(a - ib)(a* - ib*)| - |(a* + ib*)(a + ib)| |` relative to the larger side.
pub fn modulus_identity_check(a: C64, b: C64) -> f64 {
    let i = C64::new(0.0, 1.0);
    let lhs = ((a - i * b) * (a.conj() - i * b.conj())).norm();
    let rhs = ((a.conj() + i * b.conj()) * (a + i * b)).norm();
    let scale = lhs.max(rhs);
    if scale == 0.0 {
        0.0
    } else {
        (lhs - rhs).abs() / scale
    }
}

/// `cos(2 N phi1)`.
pub fn tr_parity(phi1: f64, n: u32) -> f64 {
    (2.0 * n as f64 * phi1).cos()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrEstimate {
    pub phi1: f64,
    /// Per-shot variance `1/(4N^2)`.
    pub variance: f64,
}

/// `phi1 = arccos(parity)/(2N)` on `[0, pi/(2N)]`.
pub fn tr_estimate_phi1(measured_parity: f64, n: u32) -> Result<TrEstimate> {
    if !(measured_parity.abs() <= 1.0) {
        return Err(Error::OutOfDomainMean { observable: "parity".into(), mean: measured_parity });
    }
    let nf = n as f64;
    let phi1 = measured_parity.acos() / (2.0 * nf);
    let s = (2.0 * nf * phi1).sin();
    if s.abs() < 1e-12 {
        return Err(Error::SingularWorkingPoint(format!("sin(2N phi1) = 0 at parity {measured_parity}")));
    }
    let variance = (1.0 - measured_parity * measured_parity) / (4.0 * nf * nf * s * s);
    Ok(TrEstimate { phi1, variance })
}

/// Like [`tr_estimate_phi1`] but tolerant of the fringe extremes, where only
/// the point estimate is meaningful.
pub fn tr_point_estimate(measured_parity: f64, n: u32) -> Result<f64> {
    if !(measured_parity.abs() <= 1.0) {
        return Err(Error::OutOfDomainMean { observable: "parity".into(), mean: measured_parity });
    }
    Ok(measured_parity.acos() / (2.0 * n as f64))
}

/// Relative phase `e^{2iN phi1}` of the pair state at `phi`.
pub fn relative_phase_from_phase(phi: ComplexPhase, n: u32) -> C64 {
    C64::from_polar(1.0, 2.0 * n as f64 * phi.re)
}
