//! Two-parameter estimation machinery over `(phi1, phi2)`: error-propagation
//! inversion, classical Fisher information and the Cramér–Rao bound.

use std::ops::Add;

use nalgebra::Matrix2;

use crate::coupling::ComplexPhase;
use crate::error::{Error, Result};
use crate::C64;

/// Outcomes below this probability are left out of the Fisher sum.
pub const PROB_FLOOR: f64 = 1e-14;
/// Default relative step for finite-difference probability derivatives.
pub const DEFAULT_STEP: f64 = 1e-5;
const PSD_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CovarianceSource {
    ErrorPropagation,
    CramerRaoBound,
    Empirical,
}

/// A 2x2 parameter covariance over `(phi1, phi2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceReport {
    pub matrix: Matrix2<f64>,
    pub source: CovarianceSource,
}

impl CovarianceReport {
    pub fn var_phi1(&self) -> f64 {
        self.matrix[(0, 0)]
    }

    pub fn var_phi2(&self) -> f64 {
        self.matrix[(1, 1)]
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self { matrix: self.matrix * factor, source: self.source }
    }

    pub fn is_psd(&self) -> bool {
        min_eigenvalue(&self.matrix) >= -PSD_TOL * (1.0 + self.matrix.abs().max())
    }

    /// `self - other + slack` is positive semi-definite.
    pub fn dominates(&self, other: &Self, slack: &Matrix2<f64>) -> bool {
        min_eigenvalue(&(self.matrix - other.matrix + slack)) >= 0.0
    }
}

fn min_eigenvalue(m: &Matrix2<f64>) -> f64 {
    let sym = (m + m.transpose()) * 0.5;
    sym.symmetric_eigenvalues().min()
}

/// Solves `V = J C J^T` for `C`, where `J[mu][i] = d<M_mu>/d phi_i` and `V` is the
/// (symmetrized) measurement covariance.
pub fn invert_error_propagation(jac: &Matrix2<f64>, v: &Matrix2<f64>) -> Result<CovarianceReport> {
    let det = jac.determinant();
    let scale = jac.abs().max();
    if !det.is_finite() || det.abs() <= 1e-12 * scale * scale {
        return Err(Error::SingularJacobian { det });
    }
    let inv = jac.try_inverse().ok_or(Error::SingularJacobian { det })?;
    let c = inv * v * inv.transpose();
    Ok(CovarianceReport { matrix: (c + c.transpose()) * 0.5, source: CovarianceSource::ErrorPropagation })
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FisherMatrix {
    pub matrix: Matrix2<f64>,
}

impl FisherMatrix {
    pub fn is_psd(&self) -> bool {
        min_eigenvalue(&self.matrix) >= -PSD_TOL * (1.0 + self.matrix.abs().max())
    }
}

/// Information from independent ensembles adds.
impl Add for FisherMatrix {
    type Output = FisherMatrix;
    fn add(self, rhs: Self) -> Self {
        FisherMatrix { matrix: self.matrix + rhs.matrix }
    }
}

/// `F_{mu nu} = sum_j d_mu p_j d_nu p_j / p_j`, with derivatives by central
/// differences (step `step * (1 + |phi_i|)`) refined by one Richardson stage.
pub fn fisher_matrix<F>(probs: F, at: ComplexPhase, step: f64) -> Result<FisherMatrix>
where
    F: Fn(ComplexPhase) -> Vec<f64>,
{
    if !(step > 0.0) {
        return Err(Error::InvalidInput(format!("finite-difference step must be positive, got {step}")));
    }
    let p0 = probs(at);
    let central = |axis: usize, h: f64| -> Vec<f64> {
        let shift = |d: f64| {
            if axis == 0 {
                ComplexPhase::new(at.re + d, at.im)
            } else {
                ComplexPhase::new(at.re, at.im + d)
            }
        };
        let (up, down) = (probs(shift(h)), probs(shift(-h)));
        up.iter().zip(&down).map(|(a, b)| (a - b) / (2.0 * h)).collect()
    };
    let deriv = |axis: usize| -> Vec<f64> {
        let x = if axis == 0 { at.re } else { at.im };
        let h = step * (1.0 + x.abs());
        let coarse = central(axis, h);
        let fine = central(axis, h / 2.0);
        fine.iter().zip(&coarse).map(|(f, c)| (4.0 * f - c) / 3.0).collect()
    };
    let d1 = deriv(0);
    let d2 = deriv(1);
    let mut m = Matrix2::zeros();
    let mut kept = 0;
    for (k, &p) in p0.iter().enumerate() {
        if p < PROB_FLOOR {
            let slope = d1[k].abs().max(d2[k].abs());
            if slope > 1e-7 {
                log::warn!("dropped outcome {k} with p = {p:e} has derivative {slope:e}");
            }
            continue;
        }
        kept += 1;
        m[(0, 0)] += d1[k] * d1[k] / p;
        m[(1, 1)] += d2[k] * d2[k] / p;
        m[(0, 1)] += d1[k] * d2[k] / p;
    }
    if kept <= 1 {
        return Err(Error::DegenerateDistribution);
    }
    m[(1, 0)] = m[(0, 1)];
    Ok(FisherMatrix { matrix: m })
}

/// `F^{-1}`, the lower bound on any unbiased estimator's covariance.
pub fn cramer_rao_bound(f: &FisherMatrix) -> Result<CovarianceReport> {
    let eig = f.matrix.symmetric_eigenvalues();
    let (lo, hi) = (eig.min(), eig.max());
    let cond = if lo > 0.0 { hi / lo } else { f64::INFINITY };
    if !(cond < 1e12) {
        return Err(Error::SingularFisher(cond));
    }
    let inv = f.matrix.try_inverse().ok_or(Error::SingularFisher(cond))?;
    Ok(CovarianceReport { matrix: (inv + inv.transpose()) * 0.5, source: CovarianceSource::CramerRaoBound })
}

/// Covariance of `Z = phi1 + i phi2` in block form
/// `[[<dZ dZ*>, <dZ dZ>], [<dZ* dZ*>, <dZ* dZ>]]`.
pub fn complex_block_covariance(c: &CovarianceReport) -> Matrix2<C64> {
    let m = &c.matrix;
    let zz_conj = C64::from(m[(0, 0)] + m[(1, 1)]);
    let zz = C64::new(m[(0, 0)] - m[(1, 1)], 2.0 * m[(0, 1)]);
    Matrix2::new(zz_conj, zz, zz.conj(), zz_conj)
}

/// Inverse of [`complex_block_covariance`].
pub fn covariance_from_block(b: &Matrix2<C64>, source: CovarianceSource) -> CovarianceReport {
    let s = b[(0, 0)].re;
    let zz = b[(0, 1)];
    let c11 = (s + zz.re) / 2.0;
    let c22 = (s - zz.re) / 2.0;
    let c12 = zz.im / 2.0;
    CovarianceReport { matrix: Matrix2::new(c11, c12, c12, c22), source }
}
