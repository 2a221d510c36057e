//! N-qubit NOON pointer. All algebra stays inside the span of `|0...0>` and
//! `|1...1>`; `M1 = sigma_x^(x)N` swaps the two, `M2` is `diag(+1, -1)` there.

use nalgebra::Matrix2;
use std::f64::consts::PI;

use crate::coupling::{AlphaBeta, ComplexPhase};
use crate::error::{Error, Result};
use crate::metrology::{fisher_matrix, invert_error_propagation, CovarianceReport, FisherMatrix, DEFAULT_STEP};
use crate::C64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoonState {
    pub n: u32,
    pub amp0: C64,
    pub amp1: C64,
}

impl NoonState {
    /// Builds `e^{l0}|0..0> + e^{l1}|1..1>` from log-amplitudes and normalizes
    /// without ever exponentiating a large number.
    fn from_logs(n: u32, l0: C64, l1: C64) -> Self {
        let top = l0.re.max(l1.re);
        let a0 = if l0.re.is_finite() { (l0 - top).exp() } else { C64::from(0.0) };
        let a1 = if l1.re.is_finite() { (l1 - top).exp() } else { C64::from(0.0) };
        let norm = (a0.norm_sqr() + a1.norm_sqr()).sqrt();
        Self { n, amp0: a0 / norm, amp1: a1 / norm }
    }

    /// `(<M1>, <M2>)` evaluated on the amplitudes.
    pub fn expectations(&self) -> (f64, f64) {
        (2.0 * (self.amp0.conj() * self.amp1).re, self.amp0.norm_sqr() - self.amp1.norm_sqr())
    }
}

fn log_or_neg_inf(z: C64) -> C64 {
    if z.norm() == 0.0 {
        C64::new(f64::NEG_INFINITY, 0.0)
    } else {
        z.ln()
    }
}

/// `(alpha - i beta)^N |0..0> + (alpha + i beta)^N |1..1>`, normalized.
pub fn noon_final_state(ab: &AlphaBeta, n: u32) -> Result<NoonState> {
    if n == 0 {
        return Err(Error::InvalidInput("NOON pointer needs at least one qubit".into()));
    }
    let i = C64::new(0.0, 1.0);
    let nf = n as f64;
    let l0 = log_or_neg_inf(ab.alpha - i * ab.beta) * nf;
    let l1 = log_or_neg_inf(ab.alpha + i * ab.beta) * nf;
    if !l0.re.is_finite() && !l1.re.is_finite() {
        return Err(Error::DegenerateAlphaBeta);
    }
    Ok(NoonState::from_logs(n, l0, l1))
}

/// `(e^{-iN phi/2}|0..0> + e^{iN phi/2}|1..1>) / sqrt(2 cosh(N phi2))`.
pub fn noon_state_from_phase(phi: ComplexPhase, n: u32) -> NoonState {
    let half = phi.as_complex() * (n as f64 / 2.0);
    let i = C64::new(0.0, 1.0);
    NoonState::from_logs(n, -i * half, i * half)
}

/// `(cos(N phi1)/cosh(N phi2), tanh(N phi2))`.
pub fn noon_expectations(phi: ComplexPhase, n: u32) -> (f64, f64) {
    let nf = n as f64;
    ((nf * phi.re).cos() / (nf * phi.im).cosh(), (nf * phi.im).tanh())
}

/// `d<M_mu>/d phi_i`, rows indexed by observable.
pub fn noon_jacobian(phi: ComplexPhase, n: u32) -> Matrix2<f64> {
    let nf = n as f64;
    let (s, c) = (nf * phi.re).sin_cos();
    let ch = (nf * phi.im).cosh();
    let th = (nf * phi.im).tanh();
    Matrix2::new(-nf * s / ch, -nf * c * th / ch, 0.0, nf / (ch * ch))
}

/// Per-shot covariance of `(M1, M2)` measured on the same state. The two
/// anticommute, so the symmetrized cross moment is `-<M1><M2>`.
pub fn noon_measurement_covariance(phi: ComplexPhase, n: u32) -> Matrix2<f64> {
    let (x, z) = noon_expectations(phi, n);
    Matrix2::new(1.0 - x * x, -x * z, -x * z, 1.0 - z * z)
}

/// Per-shot parameter covariance by error propagation; the diagonal equals
/// `cosh^2(N phi2)/N^2`.
pub fn noon_variance(phi: ComplexPhase, n: u32) -> Result<CovarianceReport> {
    invert_error_propagation(&noon_jacobian(phi, n), &noon_measurement_covariance(phi, n))
}

/// Per-shot covariance when `M1` and `M2` are measured on separate, equally
/// sized ensembles.
pub fn noon_variance_separate(phi: ComplexPhase, n: u32) -> Result<CovarianceReport> {
    let v = noon_measurement_covariance(phi, n);
    invert_error_propagation(&noon_jacobian(phi, n), &Matrix2::new(v[(0, 0)], 0.0, 0.0, v[(1, 1)]))
}

/// Variance of `phi2 = artanh(<M2>)/N` alone, which never involves `M1`.
pub fn noon_var_phi2(phi: ComplexPhase, n: u32) -> f64 {
    let ch = (n as f64 * phi.im).cosh();
    ch * ch / (n as f64 * n as f64)
}

/// Inverts the expectations: `phi2 = artanh(m2)/N`, `phi1 = arccos(m1 cosh(N phi2))/N`
/// with `phi1` in `[0, pi/N]`.
pub fn noon_estimate(m1: f64, m2: f64, n: u32) -> Result<ComplexPhase> {
    if !(m2.abs() < 1.0) {
        return Err(Error::OutOfDomainMean { observable: "M2".into(), mean: m2 });
    }
    let nf = n as f64;
    let phi2 = m2.atanh() / nf;
    let arg = m1 * (nf * phi2).cosh();
    if !(arg.abs() <= 1.0 + 1e-12) {
        return Err(Error::OutOfDomainMean { observable: "M1".into(), mean: m1 });
    }
    Ok(ComplexPhase::new(arg.clamp(-1.0, 1.0).acos() / nf, phi2))
}

/// `gamma = (alpha - i beta)/(alpha + i beta)`, which equals `e^{-i phi}`.
pub fn gamma_ratio(ab: &AlphaBeta) -> Result<C64> {
    let i = C64::new(0.0, 1.0);
    let den = ab.alpha + i * ab.beta;
    if den.norm() <= 1e-14 * (ab.alpha.norm() + ab.beta.norm()) {
        return Err(Error::PoleAtGamma);
    }
    Ok((ab.alpha - i * ab.beta) / den)
}

/// One POVM element restricted to the NOON span: the Hermitian block
/// `[[a, c], [c*, b]]` in the basis `(|0..0>, |1..1>)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PovmElement {
    pub a: f64,
    pub b: f64,
    pub c: C64,
}

impl PovmElement {
    fn quadratic(&self, amp0: C64, amp1: C64) -> f64 {
        self.a * amp0.norm_sqr() + self.b * amp1.norm_sqr() + 2.0 * (self.c * amp0.conj() * amp1).re
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NoonPovm {
    elements: Vec<PovmElement>,
}

impl NoonPovm {
    pub fn new(elements: Vec<PovmElement>) -> Result<Self> {
        let tol = 1e-12;
        let sa: f64 = elements.iter().map(|e| e.a).sum();
        let sb: f64 = elements.iter().map(|e| e.b).sum();
        let sc: C64 = elements.iter().map(|e| e.c).sum();
        if (sa - 1.0).abs() > tol || (sb - 1.0).abs() > tol || sc.norm() > tol {
            return Err(Error::InvalidInput("POVM elements do not sum to the identity on the NOON span".into()));
        }
        for (k, e) in elements.iter().enumerate() {
            if e.a < -tol || e.b < -tol || e.a * e.b - e.c.norm_sqr() < -tol {
                return Err(Error::InvalidInput(format!("POVM element {k} is not positive semi-definite")));
            }
        }
        Ok(Self { elements })
    }

    pub fn elements(&self) -> &[PovmElement] {
        &self.elements
    }

    /// Projectors onto the `+1` and `-1` eigenspaces of `M1`.
    pub fn parity() -> Self {
        let h = C64::from(0.5);
        Self::new(vec![PovmElement { a: 0.5, b: 0.5, c: h }, PovmElement { a: 0.5, b: 0.5, c: -h }]).unwrap()
    }

    /// Projectors onto `|0..0>`, `|1..1>` and the rest of the register.
    pub fn projectors() -> Self {
        let z = C64::from(0.0);
        Self::new(vec![
            PovmElement { a: 1.0, b: 0.0, c: z },
            PovmElement { a: 0.0, b: 1.0, c: z },
            PovmElement { a: 0.0, b: 0.0, c: z },
        ])
        .unwrap()
    }

    /// Each shot measures either `M1` or `M2` with probability 1/2. The parity
    /// pair alone has a rank-one Fisher matrix, so this mixture is the smallest
    /// POVM informative about both `phi1` and `phi2`.
    pub fn parity_and_branch() -> Self {
        let z = C64::from(0.0);
        let q = C64::from(0.25);
        Self::new(vec![
            PovmElement { a: 0.25, b: 0.25, c: q },
            PovmElement { a: 0.25, b: 0.25, c: -q },
            PovmElement { a: 0.5, b: 0.0, c: z },
            PovmElement { a: 0.0, b: 0.5, c: z },
        ])
        .unwrap()
    }

    pub fn probabilities_on_state(&self, s: &NoonState) -> Vec<f64> {
        self.elements.iter().map(|e| e.quadratic(s.amp0, s.amp1)).collect()
    }
}

/// `p_j` in terms of `gamma^N`: dividing by the larger squared amplitude keeps
/// every term bounded for any `N`.
pub fn noon_povm_probabilities(povm: &NoonPovm, ab: &AlphaBeta, n: u32) -> Result<Vec<f64>> {
    let i = C64::new(0.0, 1.0);
    let minus = ab.alpha - i * ab.beta;
    let plus = ab.alpha + i * ab.beta;
    if minus.norm() == 0.0 && plus.norm() == 0.0 {
        return Err(Error::DegenerateAlphaBeta);
    }
    let nf = n as f64;
    let out = if plus.norm() >= minus.norm() {
        // g = gamma^N, |g| <= 1
        let g = if minus.norm() == 0.0 { C64::from(0.0) } else { ((minus / plus).ln() * nf).exp() };
        let den = 1.0 + g.norm_sqr();
        povm.elements.iter().map(|e| (e.a * g.norm_sqr() + e.b + 2.0 * (e.c * g.conj()).re) / den).collect()
    } else {
        // h = gamma^-N, |h| < 1
        let h = if plus.norm() == 0.0 { C64::from(0.0) } else { ((plus / minus).ln() * nf).exp() };
        let den = 1.0 + h.norm_sqr();
        povm.elements.iter().map(|e| (e.a + e.b * h.norm_sqr() + 2.0 * (e.c * h).re) / den).collect()
    };
    Ok(out)
}

/// Classical Fisher information of `povm` on the NOON pointer at `phi`.
pub fn noon_fisher(povm: &NoonPovm, phi: ComplexPhase, n: u32) -> Result<FisherMatrix> {
    fisher_matrix(|p| povm.probabilities_on_state(&noon_state_from_phase(p, n)), phi, DEFAULT_STEP)
}

/// Working point with `|gamma| = gamma_abs` and the fringe at half height,
/// `N phi1 = pi/2`.
pub fn fringe_locked_phase(gamma_abs: f64, n: u32) -> ComplexPhase {
    ComplexPhase::new(PI / (2.0 * n as f64), gamma_abs.ln())
}
