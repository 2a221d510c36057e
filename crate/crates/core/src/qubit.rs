//! Single-qubit pointer: measured probabilities, amplitude reconstruction, and
//! the moments of the pointer Bloch vector under a complex rotation.

use serde::{Deserialize, Serialize};

use crate::coupling::{alpha_beta, final_pointer_state, ComplexPhase, CouplingConfig, QubitState};
use crate::error::{Error, Result};
use crate::statekit::SystemState;
use crate::C64;

/// Probabilities of outcome +1 for `K`, `K1`, `K2` on the post-selected pointer,
/// together with the post-selection probability itself.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbTriple {
    pub p_k: f64,
    pub p_k1: f64,
    pub p_k2: f64,
    pub post_selection: f64,
}

/// Bloch components of the pointer along `K`, `K1`, `K2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointerMoments {
    pub k: f64,
    pub k1: f64,
    pub k2: f64,
}

impl PointerMoments {
    pub fn of_state(state: &QubitState, c: &CouplingConfig) -> Self {
        let (k1, k2) = c.axis.transverse();
        Self { k: state.expectation(&c.axis.k()), k1: state.expectation(&k1), k2: state.expectation(&k2) }
    }

    pub fn norm(&self) -> f64 {
        (self.k * self.k + self.k1 * self.k1 + self.k2 * self.k2).sqrt()
    }
}

/// Default pointer input: the +1 eigenstate of `K1`.
pub fn default_pointer(c: &CouplingConfig) -> QubitState {
    QubitState::plus_eigenstate(&c.axis.transverse().0)
}

pub fn forward_probabilities(s: &SystemState, c: &CouplingConfig, pointer_in: &QubitState) -> Result<ProbTriple> {
    let ab = alpha_beta(s, c)?;
    let out = final_pointer_state(&ab, c.axis, pointer_in)?;
    let m = PointerMoments::of_state(&out, c);
    let op = nalgebra::Matrix2::identity() * ab.alpha - c.axis.k() * (C64::new(0.0, 1.0) * ab.beta);
    let v = op * nalgebra::Vector2::new(pointer_in.amps[0], pointer_in.amps[1]);
    Ok(ProbTriple {
        p_k: (1.0 + m.k) / 2.0,
        p_k1: (1.0 + m.k1) / 2.0,
        p_k2: (1.0 + m.k2) / 2.0,
        post_selection: v.norm_squared(),
    })
}

/// Recovers `psi_x` from the measured probabilities for a pointer prepared
/// along `+K1`:
/// `psi_x = p0 d / (psi~ sin(theta/2)) [(1 - P_K1) tan(theta/4) + P_K2 - 1/2 + i (P_K - 1/2)]`
/// where `p0` is the post-selection probability.
pub fn reconstruct_amplitude(p: &ProbTriple, theta: f64, psi_tilde: f64, d: usize) -> Result<C64> {
    if !(theta > 0.0 && theta <= std::f64::consts::PI) {
        return Err(Error::InvalidTheta(theta));
    }
    let sh = (theta / 2.0).sin();
    if sh.abs() < 1e-12 {
        return Err(Error::SingularTheta(theta));
    }
    if !(psi_tilde > 0.0) {
        return Err(Error::InvalidInput(format!("psi~ must be positive, got {psi_tilde}")));
    }
    let re = (1.0 - p.p_k1) * (theta / 4.0).tan() + p.p_k2 - 0.5;
    let im = p.p_k - 0.5;
    Ok(C64::new(re, im) * (p.post_selection * d as f64 / (psi_tilde * sh)))
}

/// `(<K1>_f, <K>_f)` for an input with `<K>_in = <K2>_in = 0`.
pub fn optimal_expectations(phi: ComplexPhase, k1_in: f64) -> (f64, f64) {
    (phi.re.cos() / phi.im.cosh() * k1_in, phi.im.tanh())
}

/// Final Bloch components for an arbitrary input: the transverse pair rotates
/// by `phi1`, and everything is rescaled by `cosh(phi2) + sinh(phi2) <K>_in`.
pub fn general_expectations(phi: ComplexPhase, input: PointerMoments) -> PointerMoments {
    let (s1, c1) = phi.re.sin_cos();
    let (sh, ch) = (phi.im.sinh(), phi.im.cosh());
    let denom = ch + sh * input.k;
    PointerMoments {
        k: (sh + ch * input.k) / denom,
        k1: (c1 * input.k1 - s1 * input.k2) / denom,
        k2: (s1 * input.k1 + c1 * input.k2) / denom,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseEstimate {
    pub phi: ComplexPhase,
    /// False when `<K2>` was not supplied and `phi1` is only known up to sign.
    pub sign_resolved: bool,
}

/// Inverts [`optimal_expectations`]: `phi2 = artanh <K>`, then
/// `phi1 = arccos(<K1> cosh(phi2) / k1_in)` with the sign of `<K2>` if given.
pub fn estimate_phase(k1_f: f64, k_f: f64, k2_f: Option<f64>, k1_in: f64) -> Result<PhaseEstimate> {
    if !(k_f.abs() < 1.0) {
        return Err(Error::OutOfDomainMean { observable: "K".into(), mean: k_f });
    }
    let phi2 = k_f.atanh();
    let arg = k1_f * phi2.cosh() / k1_in;
    if !(arg.abs() <= 1.0 + 1e-12) {
        return Err(Error::OutOfDomainMean { observable: "K1".into(), mean: k1_f });
    }
    let mut phi1 = arg.clamp(-1.0, 1.0).acos();
    if let Some(k2) = k2_f {
        if k2 * k1_in < 0.0 {
            phi1 = -phi1;
        }
    }
    Ok(PhaseEstimate { phi: ComplexPhase::new(phi1, phi2), sign_resolved: k2_f.is_some() })
}
