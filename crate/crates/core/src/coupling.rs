//! System–pointer coupling `exp(-i theta |x><x| (x) K/2)` followed by
//! post-selection on the uniform superposition. After post-selection the
//! pointer is acted on by `alpha I - i beta K`, which equals a rotation by the
//! complex angle `phi` (up to normalization) because `K^2 = I`.

use nalgebra::Matrix2;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::statekit::SystemState;
use crate::C64;

const I: C64 = C64 { re: 0.0, im: 1.0 };
const ONE: C64 = C64 { re: 1.0, im: 0.0 };
const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

pub fn pauli_x() -> Matrix2<C64> {
    Matrix2::new(ZERO, ONE, ONE, ZERO)
}

pub fn pauli_y() -> Matrix2<C64> {
    Matrix2::new(ZERO, -I, I, ZERO)
}

pub fn pauli_z() -> Matrix2<C64> {
    Matrix2::new(ONE, ZERO, ZERO, -ONE)
}

/// Which Pauli operator generates the pointer kick.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum PointerAxis {
    #[default]
    Z,
    Y,
}

impl PointerAxis {
    /// The coupling generator `K`.
    pub fn k(self) -> Matrix2<C64> {
        match self {
            PointerAxis::Z => pauli_z(),
            PointerAxis::Y => pauli_y(),
        }
    }

    /// `(K1, K2)`, chosen so that `(K1, K2, K)` is a cyclic Pauli triple and a
    /// real phase rotates `(<K1>, <K2>)` counter-clockwise.
    pub fn transverse(self) -> (Matrix2<C64>, Matrix2<C64>) {
        match self {
            PointerAxis::Z => (pauli_x(), pauli_y()),
            PointerAxis::Y => (pauli_z(), pauli_x()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingConfig {
    pub theta: f64,
    /// Basis index, counted from 1.
    pub target_x: usize,
    pub axis: PointerAxis,
}

impl CouplingConfig {
    pub fn new(theta: f64, target_x: usize, axis: PointerAxis) -> Result<Self> {
        if !(theta > 0.0 && theta <= PI) {
            return Err(Error::InvalidTheta(theta));
        }
        if target_x == 0 {
            return Err(Error::TargetOutOfRange { x: 0, dim: 0 });
        }
        Ok(Self { theta, target_x, axis })
    }
}

/// Post-selected pointer amplitudes: the pointer is left in
/// `(alpha I - i beta K)|phi_in>` up to normalization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaBeta {
    pub alpha: C64,
    pub beta: C64,
}

impl AlphaBeta {
    pub fn new(alpha: C64, beta: C64) -> Result<Self> {
        let ab = Self { alpha, beta };
        if (alpha * alpha + beta * beta).norm() <= 1e-14 {
            return Err(Error::DegenerateAlphaBeta);
        }
        Ok(ab)
    }

    /// `(cos(phi/2), sin(phi/2))`: the unit-normalized pair for a phase.
    pub fn from_phase(phi: ComplexPhase) -> Self {
        let half = phi.as_complex() / 2.0;
        Self { alpha: half.cos(), beta: half.sin() }
    }

    /// Principal square root of `alpha^2 + beta^2`.
    pub fn scale(&self) -> C64 {
        (self.alpha * self.alpha + self.beta * self.beta).sqrt()
    }

    /// The pair seen by a time-reversed system: `(alpha*, beta*)`.
    pub fn conj(&self) -> Self {
        Self { alpha: self.alpha.conj(), beta: self.beta.conj() }
    }
}

/// Complex phase `phi = re + i im`. `re` is a rotation angle in radians and
/// `im` a dimensionless hyperbolic angle.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ComplexPhase {
    pub re: f64,
    pub im: f64,
}

impl ComplexPhase {
    pub const ZERO: ComplexPhase = ComplexPhase { re: 0.0, im: 0.0 };

    pub fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    pub fn as_complex(&self) -> C64 {
        C64::new(self.re, self.im)
    }

    pub fn from_complex(z: C64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

/// `alpha = (psi~ - psi_x + psi_x cos(theta/2)) / sqrt(d)`,
/// `beta = psi_x sin(theta/2) / sqrt(d)`.
pub fn alpha_beta(s: &SystemState, c: &CouplingConfig) -> Result<AlphaBeta> {
    let psi_x = s.amplitude(c.target_x)?;
    let root_d = (s.dim() as f64).sqrt();
    let half = c.theta / 2.0;
    let alpha = (C64::from(s.tilde_psi()) - psi_x + psi_x * half.cos()) / root_d;
    let beta = psi_x * half.sin() / root_d;
    AlphaBeta::new(alpha, beta)
}

/// Solves `cos(phi/2) = alpha/r`, `sin(phi/2) = beta/r` with `r^2 = alpha^2 + beta^2`,
/// on the branch `Re(phi/2)` in `(-pi/2, pi/2]`. The sign of `r` is whatever
/// makes both relations hold on that branch.
pub fn phase_from_alpha_beta(ab: &AlphaBeta) -> Result<ComplexPhase> {
    if ab.alpha.norm() == 0.0 && ab.beta.norm() == 0.0 {
        return Err(Error::BranchAmbiguity);
    }
    if (ab.alpha * ab.alpha + ab.beta * ab.beta).norm() <= 1e-14 {
        return Err(Error::DegenerateAlphaBeta);
    }
    let mut half = if ab.alpha.norm() <= 1e-300 { C64::new(FRAC_PI_2, 0.0) } else { (ab.beta / ab.alpha).atan() };
    if half.re <= -FRAC_PI_2 {
        half.re += PI;
    }
    Ok(ComplexPhase::from_complex(2.0 * half))
}

/// Inverse of the phase map:
/// `psi_x = psi~ tan(phi/2) / (2 sin(theta/4) [cos(theta/4) + sin(theta/4) tan(phi/2)])`,
/// evaluated with numerator and denominator multiplied by `cos(phi/2)` so the
/// `tan` pole at `alpha = 0` is harmless.
pub fn psi_from_phase(phi: ComplexPhase, psi_tilde: f64, theta: f64) -> Result<C64> {
    if !(theta > 0.0 && theta <= PI) {
        return Err(Error::InvalidTheta(theta));
    }
    let half = phi.as_complex() / 2.0;
    let (s, c) = (half.sin(), half.cos());
    let q = theta / 4.0;
    let denom = 2.0 * q.sin() * (q.cos() * c + q.sin() * s);
    if denom.norm() <= 1e-14 * (s.norm() + c.norm()) {
        return Err(Error::PoleAtPhase);
    }
    Ok(psi_tilde * s / denom)
}

/// `exp(-i phi K / 2) = cos(phi/2) I - i sin(phi/2) K`, valid for complex `phi`
/// since `K^2 = I`.
pub fn rotation_operator(phi: C64, axis: PointerAxis) -> Matrix2<C64> {
    let half = phi / 2.0;
    Matrix2::identity() * half.cos() - axis.k() * (I * half.sin())
}

/// A normalized single-qubit pointer state in the `sigma_z` basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    pub amps: [C64; 2],
}

impl QubitState {
    pub fn new(a0: C64, a1: C64) -> Result<Self> {
        let n = (a0.norm_sqr() + a1.norm_sqr()).sqrt();
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::ZeroNorm);
        }
        Ok(Self { amps: [a0 / n, a1 / n] })
    }

    /// The +1 eigenstate of a Pauli matrix.
    pub fn plus_eigenstate(pauli: &Matrix2<C64>) -> Self {
        // (I + P)/2 projects onto the +1 eigenspace; pick its larger column.
        let proj = (Matrix2::identity() + pauli) * C64::from(0.5);
        let c0 = proj.column(0);
        let c1 = proj.column(1);
        let col = if c0.norm() >= c1.norm() { c0 } else { c1 };
        Self::new(col[0], col[1]).expect("projector column is nonzero")
    }

    pub fn apply(&self, m: &Matrix2<C64>) -> Result<Self> {
        let v = m * nalgebra::Vector2::new(self.amps[0], self.amps[1]);
        Self::new(v[0], v[1])
    }

    pub fn expectation(&self, m: &Matrix2<C64>) -> f64 {
        let v = nalgebra::Vector2::new(self.amps[0], self.amps[1]);
        v.dotc(&(m * v)).re
    }

    /// `|<self|other>|`, equal to 1 for states differing by a global phase.
    pub fn overlap(&self, other: &Self) -> f64 {
        (self.amps[0].conj() * other.amps[0] + self.amps[1].conj() * other.amps[1]).norm()
    }

    /// Maximal amplitude difference after aligning the global phase.
    pub fn distance_up_to_phase(&self, other: &Self) -> f64 {
        let ip = self.amps[0].conj() * other.amps[0] + self.amps[1].conj() * other.amps[1];
        let ph = if ip.norm() > 0.0 { ip / ip.norm() } else { ONE };
        (0..2).map(|k| (self.amps[k] * ph - other.amps[k]).norm()).fold(0.0, f64::max)
    }
}

/// Pointer after post-selection, built as `(alpha I - i beta K)|phi_in>` and
/// normalized.
pub fn final_pointer_state(ab: &AlphaBeta, axis: PointerAxis, pointer_in: &QubitState) -> Result<QubitState> {
    let op = Matrix2::identity() * ab.alpha - axis.k() * (I * ab.beta);
    pointer_in.apply(&op).map_err(|_| Error::DegenerateAlphaBeta)
}

/// The same pointer built from the phase:
/// `exp(-i phi K/2)|phi_in> / sqrt(<phi_in| exp(i(phi* - phi)K/2) |phi_in>)`.
/// The unobservable prefactor `sqrt((alpha^2+beta^2)/|alpha^2+beta^2|)` is dropped.
pub fn final_pointer_from_phase(phi: ComplexPhase, axis: PointerAxis, pointer_in: &QubitState) -> Result<QubitState> {
    let z = phi.as_complex();
    // exp(i(phi* - phi)K/2) is a rotation by the angle -(phi* - phi).
    let weight = rotation_operator(-(z.conj() - z), axis);
    let v = nalgebra::Vector2::new(pointer_in.amps[0], pointer_in.amps[1]);
    let norm_sq = v.dotc(&(weight * v));
    let unnorm = rotation_operator(z, axis) * v;
    let scale = C64::from(1.0 / norm_sq.re.sqrt());
    let out = QubitState { amps: [unnorm[0] * scale, unnorm[1] * scale] };
    debug_assert!((out.amps[0].norm_sqr() + out.amps[1].norm_sqr() - 1.0).abs() < 1e-9);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expm::expm;
    use crate::statekit::StatePreset;
    use nalgebra::DMatrix;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn alpha_beta_symmetric_state() {
        let s = StatePreset::Uniform(2).build().unwrap();
        let ab = alpha_beta(&s, &CouplingConfig::new(PI, 1, PointerAxis::Z).unwrap()).unwrap();
        assert!((ab.alpha - c(0.5, 0.0)).norm() < 1e-15);
        assert!((ab.beta - c(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn alpha_beta_zero_amplitude() {
        let s = SystemState::new(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let ab = alpha_beta(&s, &CouplingConfig::new(PI / 2.0, 2, PointerAxis::Z).unwrap()).unwrap();
        assert_eq!(ab.beta, c(0.0, 0.0));
        assert!((ab.alpha - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn weak_coupling_limit() {
        let s = StatePreset::Ramp(3).build().unwrap();
        let ab = alpha_beta(&s, &CouplingConfig::new(1e-9, 2, PointerAxis::Y).unwrap()).unwrap();
        assert!(ab.beta.norm() < 1e-9);
        assert!((ab.alpha.re - s.tilde_psi() / 3f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_coupling() {
        assert!(CouplingConfig::new(0.0, 1, PointerAxis::Z).is_err());
        assert!(CouplingConfig::new(4.0, 1, PointerAxis::Z).is_err());
        assert_eq!(AlphaBeta::new(c(1.0, 0.0), c(0.0, 1.0)).unwrap_err(), Error::DegenerateAlphaBeta);
    }

    #[test]
    fn phase_examples() {
        let phi = phase_from_alpha_beta(&AlphaBeta::new(c(0.5, 0.0), c(0.5, 0.0)).unwrap()).unwrap();
        assert!((phi.re - PI / 2.0).abs() < 1e-15 && phi.im.abs() < 1e-15);
        let phi = phase_from_alpha_beta(&AlphaBeta::new(c(1.0, 0.0), c(0.0, 0.0)).unwrap()).unwrap();
        assert_eq!(phi, ComplexPhase::ZERO);
        let phi = phase_from_alpha_beta(&AlphaBeta { alpha: c(0.0, 0.0), beta: c(0.3, 0.1) }).unwrap();
        assert!((phi.re - PI).abs() < 1e-15);
        assert_eq!(
            phase_from_alpha_beta(&AlphaBeta { alpha: c(0.0, 0.0), beta: c(0.0, 0.0) }),
            Err(Error::BranchAmbiguity)
        );
    }

    #[test]
    fn psi_from_phase_examples() {
        let psi = psi_from_phase(ComplexPhase::new(PI / 2.0, 0.0), SQRT_2, PI).unwrap();
        assert!((psi - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        assert_eq!(psi_from_phase(ComplexPhase::ZERO, 1.3, 0.4).unwrap(), c(0.0, 0.0));
        assert!(psi_from_phase(ComplexPhase::ZERO, 1.0, 0.0).is_err());
    }

    #[test]
    fn psi_from_phase_pole() {
        // cos(theta/4) cos(phi/2) + sin(theta/4) sin(phi/2) = cos(phi/2 - theta/4) = 0
        let theta = PI / 2.0;
        let phi = ComplexPhase::new(2.0 * (theta / 4.0 + PI / 2.0) - 2.0 * PI, 0.0);
        assert_eq!(psi_from_phase(phi, 1.0, theta), Err(Error::PoleAtPhase));
    }

    #[test]
    fn final_pointer_examples() {
        let plus = QubitState::plus_eigenstate(&pauli_x());
        let ab = AlphaBeta::new(c(0.7, 0.1), c(0.0, 0.0)).unwrap();
        let out = final_pointer_state(&ab, PointerAxis::Z, &plus).unwrap();
        assert!((out.overlap(&plus) - 1.0).abs() < 1e-14);

        let ab = AlphaBeta::new(c(0.5, 0.0), c(0.5, 0.0)).unwrap();
        let out = final_pointer_state(&ab, PointerAxis::Z, &plus).unwrap();
        let expect = QubitState::new(c(0.5, -0.5), c(0.5, 0.5)).unwrap();
        assert!(out.distance_up_to_phase(&expect) < 1e-15);
    }

    #[test]
    fn plus_eigenstates() {
        for p in [pauli_x(), pauli_y(), pauli_z()] {
            let s = QubitState::plus_eigenstate(&p);
            assert!((s.expectation(&p) - 1.0).abs() < 1e-15);
        }
    }

    fn to_dmatrix(m: &Matrix2<C64>) -> DMatrix<C64> {
        DMatrix::from_iterator(2, 2, m.iter().cloned())
    }

    proptest! {
        #[test]
        fn rotation_matches_matrix_exponential(re in -4.0..4.0f64, im in -2.0..2.0f64, y in any::<bool>()) {
            let axis = if y { PointerAxis::Y } else { PointerAxis::Z };
            let z = c(re, im);
            let closed = rotation_operator(z, axis);
            let gen = to_dmatrix(&axis.k()) * (c(0.0, -0.5) * z);
            let oracle = expm(&gen);
            for i in 0..2 {
                for j in 0..2 {
                    prop_assert!((closed[(i, j)] - oracle[(i, j)]).norm() < 1e-12 * (1.0 + oracle[(i, j)].norm()));
                }
            }
        }

        #[test]
        fn two_pointer_constructions_agree(
            ar in -1.0..1.0f64, ai in -1.0..1.0f64, br in -1.0..1.0f64, bi in -1.0..1.0f64,
            pr in -1.0..1.0f64, pi in -1.0..1.0f64, y in any::<bool>(),
        ) {
            let axis = if y { PointerAxis::Y } else { PointerAxis::Z };
            let Ok(ab) = AlphaBeta::new(c(ar, ai), c(br, bi)) else { return Ok(()) };
            prop_assume!((ab.alpha * ab.alpha + ab.beta * ab.beta).norm() > 1e-3);
            let input = QubitState::new(c(1.0, 0.0), c(pr, pi)).unwrap();
            let phi = phase_from_alpha_beta(&ab).unwrap();
            let a = final_pointer_state(&ab, axis, &input).unwrap();
            let b = final_pointer_from_phase(phi, axis, &input).unwrap();
            prop_assert!(a.distance_up_to_phase(&b) < 1e-12);
        }

        #[test]
        fn phase_relations_reproduce_inputs(ar in -1.0..1.0f64, ai in -1.0..1.0f64, br in -1.0..1.0f64, bi in -1.0..1.0f64) {
            let Ok(ab) = AlphaBeta::new(c(ar, ai), c(br, bi)) else { return Ok(()) };
            prop_assume!((ab.alpha * ab.alpha + ab.beta * ab.beta).norm() > 1e-3);
            let phi = phase_from_alpha_beta(&ab).unwrap();
            prop_assert!(phi.re > -PI && phi.re <= PI);
            let half = phi.as_complex() / 2.0;
            let r = ab.scale();
            // one overall sign of r is absorbed into both relations
            let plus = (half.cos() * r - ab.alpha).norm() + (half.sin() * r - ab.beta).norm();
            let minus = (half.cos() * r + ab.alpha).norm() + (half.sin() * r + ab.beta).norm();
            prop_assert!(plus.min(minus) < 1e-12);
            prop_assert!((half.cos().powi(2) + half.sin().powi(2) - 1.0).norm() < 1e-12);
        }

        #[test]
        fn real_amplitude_gives_real_phase(a in 0.1..1.0f64, b in -1.0..1.0f64, x in 1usize..3, t in 0usize..4) {
            let s = SystemState::new(&[c(a, 0.0), c(b, 0.0), c(0.3, 0.0)]).unwrap();
            let theta = [PI / 8.0, PI / 4.0, PI / 2.0, PI][t];
            let Ok(ab) = alpha_beta(&s, &CouplingConfig::new(theta, x, PointerAxis::Z).unwrap()) else { return Ok(()) };
            let phi = phase_from_alpha_beta(&ab).unwrap();
            prop_assert!(phi.im.abs() < 1e-12);
        }
    }
}
