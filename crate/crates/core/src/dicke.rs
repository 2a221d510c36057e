//! Dicke pointer `|j, 0>` rotated about `J_y` by a complex angle.
//!
//! Every moment comes in two flavours: a closed form in the Wigner elements
//! `W_m0` of the Legendre route, and a dense evaluation on the state produced
//! by the matrix exponential. The closed forms need integer `j`.

use nalgebra::{DMatrix, DVector, Matrix2};

use crate::coupling::ComplexPhase;
use crate::error::{Error, Result};
use crate::legendre::{wigner_column, wigner_m0};
use crate::metrology::{fisher_matrix, invert_error_propagation, CovarianceReport, FisherMatrix, DEFAULT_STEP};
use crate::numeric::{bisect, even_fit};
use crate::spin::{expectation, Spin};
use crate::C64;

/// Below this `|phi2|` the `coth(2 phi2)` forms are replaced by even extrapolation.
pub const SMALL_PHI2: f64 = 1e-4;
const SMALL_PHI2_NODES: [f64; 3] = [1e-4, 2e-4, 3e-4];
/// The derivative of `G` loses digits to cancellation sooner, so it switches earlier.
const SMALL_PHI2_DERIV: f64 = 1e-3;
const SMALL_PHI2_DERIV_NODES: [f64; 3] = [1e-3, 2e-3, 3e-3];
/// Within this distance of a zero of `sin(2 phi1)` the `phi1` information is
/// extrapolated in the squared offset. Off the real axis the information dips
/// to zero over a width of order `phi2^2`, so the nodes sit well inside it.
pub const SMALL_PHI1: f64 = 1e-7;
const SMALL_PHI1_NODES: [f64; 3] = [1e-5, 2e-5, 4e-5];
const REAL_TOL: f64 = 1e-9;

/// A normalized state in the `|j, m>` basis, `m = j, ..., -j`.
#[derive(Debug, Clone, PartialEq)]
pub struct DickeState {
    pub spin: Spin,
    pub coefficients: DVector<C64>,
}

impl DickeState {
    pub fn expectation(&self, op: &DMatrix<C64>) -> C64 {
        expectation(&self.coefficients, op)
    }

    /// Born probabilities of the `J_z` outcomes in basis order.
    pub fn jz_probabilities(&self) -> Vec<f64> {
        self.coefficients.iter().map(|c| c.norm_sqr()).collect()
    }

    /// `(<Jz^2>, <Jz^4>)` straight from the populations.
    pub fn jz_even_moments(&self) -> (f64, f64) {
        let mut m2 = 0.0;
        let mut m4 = 0.0;
        for (k, p) in self.jz_probabilities().into_iter().enumerate() {
            let m = self.spin.m_at(k);
            m2 += m * m * p;
            m4 += m * m * m * m * p;
        }
        (m2, m4)
    }

    /// `(<Jy>, Var Jy)`.
    pub fn jy_mean_var(&self) -> (f64, f64) {
        let jy = self.spin.jy();
        let mean = self.expectation(&jy).re;
        let sq = self.expectation(&(&jy * &jy)).re;
        (mean, sq - mean * mean)
    }
}

/// `exp(-i phi J_y)|j,0>` without normalization (`|j,1/2>` for half-integer `j`).
pub fn unnormalized_rotation(spin: Spin, phi: ComplexPhase) -> DVector<C64> {
    spin.rotation_y(phi.as_complex()) * spin.equatorial_state()
}

/// Dense route: matrix exponential, then normalization.
pub fn rotate_dicke(spin: Spin, phi: ComplexPhase) -> DickeState {
    let v = unnormalized_rotation(spin, phi);
    let n = v.norm();
    DickeState { spin, coefficients: v / C64::from(n) }
}

/// Legendre route: the column `W_m0(phi)` normalized by `sqrt(W_00(2i phi2))`.
pub fn dicke_from_wigner(spin: Spin, phi: ComplexPhase) -> Result<DickeState> {
    let col = wigner_column(spin, phi.as_complex())?;
    let w00 = norm_weight(spin, phi.im)?;
    let scale = C64::from(1.0 / w00.sqrt());
    Ok(DickeState { spin, coefficients: DVector::from_iterator(col.len(), col.into_iter().map(|w| w * scale)) })
}

/// `W_00(2i phi2) = sum_m |W_m0(phi)|^2`, real and positive.
pub fn norm_weight(spin: Spin, phi2: f64) -> Result<f64> {
    let w = wigner_m0(spin, 0, C64::new(0.0, 2.0 * phi2))?;
    check_real("W_00(2i phi2)", w)
}

fn check_real(what: &'static str, z: C64) -> Result<f64> {
    if z.im.abs() > REAL_TOL * (1.0 + z.re.abs()) {
        return Err(Error::ComplexResidue { what, residue: z.im });
    }
    Ok(z.re)
}

/// `<Jy> = i W_10(2i phi2)/W_00(2i phi2) sqrt(j(j+1))`, independent of `phi1`.
pub fn jy_mean(spin: Spin, phi2: f64) -> Result<f64> {
    let arg = C64::new(0.0, 2.0 * phi2);
    let r = wigner_m0(spin, 1, arg)? / wigner_m0(spin, 0, arg)?;
    check_real("<Jy>", C64::new(0.0, 1.0) * r * spin.casimir().sqrt())
}

/// `G = <Jy> coth(2 phi2)`, the even function that fixes `<Jy^2> = j(j+1) - G`.
pub fn coth_weighted_jy(spin: Spin, phi2: f64) -> Result<f64> {
    let direct = |t: f64| -> Result<f64> { Ok(jy_mean(spin, t)? / (2.0 * t).tanh()) };
    if phi2.abs() >= SMALL_PHI2 {
        return direct(phi2);
    }
    let ys = SMALL_PHI2_NODES.iter().map(|&t| direct(t)).collect::<Result<Vec<_>>>()?;
    Ok(even_fit(&SMALL_PHI2_NODES, &ys, phi2))
}

/// `(<Jy>, <Jy^2>)`.
pub fn jy_moments(spin: Spin, phi2: f64) -> Result<(f64, f64)> {
    Ok((jy_mean(spin, phi2)?, spin.casimir() - coth_weighted_jy(spin, phi2)?))
}

pub fn jy_variance(spin: Spin, phi2: f64) -> Result<f64> {
    let (m, sq) = jy_moments(spin, phi2)?;
    Ok(sq - m * m)
}

/// `(Delta phi2)^2 = 1/(4 Var Jy)`; equals `2/(N(N+2))` at `phi2 = 0`.
pub fn var_phi2(spin: Spin, phi2: f64) -> Result<f64> {
    Ok(1.0 / (4.0 * jy_variance(spin, phi2)?))
}

/// `(<Jz^2>, <Jz^4>)`. The first is evaluated as the complex expression
/// `G sin^2(phi) - (i/2) <Jy> sin(2 phi)` and must come out real.
pub fn jz_moments(spin: Spin, phi: ComplexPhase) -> Result<(f64, f64)> {
    let z = phi.as_complex();
    let g = jy_mean(spin, phi.im)?;
    let big = coth_weighted_jy(spin, phi.im)?;
    let s = z.sin();
    let jz2 = check_real("<Jz^2>", s * s * big - C64::new(0.0, 0.5) * g * (2.0 * z).sin())?;
    let col = wigner_column(spin, z)?;
    let w00 = norm_weight(spin, phi.im)?;
    let jz4 = col.iter().enumerate().map(|(k, w)| spin.m_at(k).powi(4) * w.norm_sqr()).sum::<f64>() / w00;
    Ok((jz2, jz4))
}

/// `d<Jy>/d phi2 = 2 Var Jy`.
fn jy_mean_derivative(spin: Spin, phi2: f64) -> Result<f64> {
    Ok(2.0 * jy_variance(spin, phi2)?)
}

/// `dG/d phi2 = g' coth(2 phi2) - 2 g / sinh^2(2 phi2)`, odd in `phi2`.
fn coth_weighted_jy_derivative(spin: Spin, phi2: f64) -> Result<f64> {
    let direct = |t: f64| -> Result<f64> {
        let g = jy_mean(spin, t)?;
        let dg = jy_mean_derivative(spin, t)?;
        Ok(dg / (2.0 * t).tanh() - 2.0 * g / (2.0 * t).sinh().powi(2))
    };
    if phi2.abs() >= SMALL_PHI2_DERIV {
        return direct(phi2);
    }
    let ys = SMALL_PHI2_DERIV_NODES.iter().map(|&t| Ok(direct(t)? / t)).collect::<Result<Vec<f64>>>()?;
    Ok(phi2 * even_fit(&SMALL_PHI2_DERIV_NODES, &ys, phi2))
}

/// `(d<Jz^2>/d phi1, d<Jz^2>/d phi2)` from `<Jz^2> = (G/2)(1 - cos 2phi1 / cosh 2phi2)`.
pub fn jz2_derivatives(spin: Spin, phi: ComplexPhase) -> Result<(f64, f64)> {
    let big = coth_weighted_jy(spin, phi.im)?;
    let dbig = coth_weighted_jy_derivative(spin, phi.im)?;
    let (s1, c1) = (2.0 * phi.re).sin_cos();
    let (sh, ch) = ((2.0 * phi.im).sinh(), (2.0 * phi.im).cosh());
    let d1 = big * s1 / ch;
    let d2 = 0.5 * dbig * (1.0 - c1 / ch) + big * c1 * sh / (ch * ch);
    Ok((d1, d2))
}

/// Jacobian of `(<Jz^2>, <Jy>)` with respect to `(phi1, phi2)`.
pub fn dicke_jacobian(spin: Spin, phi: ComplexPhase) -> Result<Matrix2<f64>> {
    let (d1, d2) = jz2_derivatives(spin, phi)?;
    Ok(Matrix2::new(d1, d2, 0.0, jy_mean_derivative(spin, phi.im)?))
}

/// Per-shot covariance of `(Jz^2, Jy)` on one state, with the symmetrized
/// cross moment `<{dJz^2, dJy}>/2`, evaluated on the dense rotated state.
pub fn dicke_measurement_covariance(spin: Spin, phi: ComplexPhase) -> Result<Matrix2<f64>> {
    let state = rotate_dicke(spin, phi);
    let (jz2, jz4) = state.jz_even_moments();
    let jz = spin.jz();
    let jy = spin.jy();
    let jz2_op = &jz * &jz;
    let cross = state.expectation(&(&jz2_op * &jy)).re - jz2 * state.expectation(&jy).re;
    let v22 = jy_variance(spin, phi.im)?;
    Ok(Matrix2::new(jz4 - jz2 * jz2, cross, cross, v22))
}

fn inv_var_phi1_direct(spin: Spin, phi: ComplexPhase) -> Result<f64> {
    let c = invert_error_propagation(&dicke_jacobian(spin, phi)?, &dicke_measurement_covariance(spin, phi)?)?;
    Ok(1.0 / c.var_phi1())
}

/// `1/(Delta phi1)^2` from joint error propagation through `Jz^2` and `Jy`.
/// Near zeros of `sin(2 phi1)` the Jacobian is singular and the value is
/// extrapolated from nearby points, quadratically in the offset.
pub fn inv_var_phi1(spin: Spin, phi: ComplexPhase) -> Result<f64> {
    let half_pi = std::f64::consts::FRAC_PI_2;
    let anchor = (phi.re / half_pi).round() * half_pi;
    let delta = phi.re - anchor;
    if delta.abs() >= SMALL_PHI1 {
        return inv_var_phi1_direct(spin, phi);
    }
    let ys = SMALL_PHI1_NODES
        .iter()
        .map(|&d| inv_var_phi1_direct(spin, ComplexPhase::new(anchor + d, phi.im)))
        .collect::<Result<Vec<f64>>>()?;
    let v = even_fit(&SMALL_PHI1_NODES, &ys, delta);
    if !v.is_finite() {
        return Err(Error::DivergentVariance(format!("extrapolation to phi1 = {} did not converge", phi.re)));
    }
    Ok(v.max(0.0))
}

/// `(Delta phi1)^2`, the reciprocal of [`inv_var_phi1`].
pub fn var_phi1(spin: Spin, phi: ComplexPhase) -> Result<f64> {
    let inv = inv_var_phi1(spin, phi)?;
    if !(inv > 0.0) {
        return Err(Error::DivergentVariance(format!("no phi1 information at ({}, {})", phi.re, phi.im)));
    }
    Ok(1.0 / inv)
}

/// Per-shot covariance when `Jz^2` and `Jy` are measured on separate ensembles.
pub fn dicke_variance_separate(spin: Spin, phi: ComplexPhase) -> Result<CovarianceReport> {
    let v = dicke_measurement_covariance(spin, phi)?;
    invert_error_propagation(&dicke_jacobian(spin, phi)?, &Matrix2::new(v[(0, 0)], 0.0, 0.0, v[(1, 1)]))
}

/// Left side of the three-term identity linking `W_20`, `W_10`, `W_00` at the
/// argument `2i phi2`, relative to its largest term.
pub fn legendre_recurrence_check(spin: Spin, phi2: f64) -> Result<f64> {
    let j = spin.j();
    if !spin.is_integer() || j < 2.0 {
        return Err(Error::InvalidInput(format!("recurrence check needs integer j >= 2, got {j}")));
    }
    if phi2 == 0.0 {
        return Err(Error::InvalidInput("recurrence check needs phi2 != 0".into()));
    }
    let arg = C64::new(0.0, 2.0 * phi2);
    let w00 = wigner_m0(spin, 0, arg)?;
    let r1 = wigner_m0(spin, 1, arg)? / w00;
    let r2 = wigner_m0(spin, 2, arg)? / w00;
    let f2 = ((j + 2.0) * (j + 1.0) * j * (j - 1.0)).sqrt();
    let a = (f2 * r2 + j * (j + 1.0)) * arg.sin();
    let b = 2.0 * spin.casimir().sqrt() * r1 * arg.cos();
    Ok((a + b).norm() / a.norm().max(b.norm()))
}

/// Inverts `(<Jz^2>, <Jy>)`: `phi2` by bisection on the monotone `<Jy>(phi2)`,
/// then `cos(2 phi1) = cosh(2 phi2)(1 - 2<Jz^2>/G)` with `phi1` in `[0, pi/2]`.
pub fn dicke_estimate(spin: Spin, jz2: f64, jy: f64) -> Result<ComplexPhase> {
    // keep cosh(2 phi2)^j comfortably inside f64
    let limit = (150.0 / spin.j().max(1.0)).min(10.0);
    let g_lim = jy_mean(spin, limit)?;
    if !(jy.abs() < g_lim) {
        return Err(Error::OutOfDomainMean { observable: "Jy".into(), mean: jy });
    }
    let phi2 = bisect(|t| jy_mean(spin, t).unwrap_or(f64::NAN) - jy, -limit, limit, 1e-15);
    let big = coth_weighted_jy(spin, phi2)?;
    let arg = (2.0 * phi2).cosh() * (1.0 - 2.0 * jz2 / big);
    if !(arg.abs() <= 1.0 + 1e-12) {
        return Err(Error::OutOfDomainMean { observable: "Jz^2".into(), mean: jz2 });
    }
    Ok(ComplexPhase::new(arg.clamp(-1.0, 1.0).acos() / 2.0, phi2))
}

/// Fisher information of separate `Jz` and `Jy` measurements, added.
pub fn dicke_fisher(spin: Spin, phi: ComplexPhase) -> Result<FisherMatrix> {
    let jy_basis = spin.jy().symmetric_eigen().eigenvectors;
    let state_at = |p: ComplexPhase| -> DVector<C64> {
        match dicke_from_wigner(spin, p) {
            Ok(s) => s.coefficients,
            Err(_) => rotate_dicke(spin, p).coefficients,
        }
    };
    let fz = fisher_matrix(|p| state_at(p).iter().map(|c| c.norm_sqr()).collect(), phi, DEFAULT_STEP)?;
    let fy = fisher_matrix(
        |p| {
            let v = state_at(p);
            jy_basis.column_iter().map(|e| e.dotc(&v).norm_sqr()).collect()
        },
        phi,
        DEFAULT_STEP,
    )?;
    Ok(fz + fy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrology::cramer_rao_bound;
    use crate::numeric::richardson_derivative;
    use proptest::prelude::*;

    fn spin(n: u32) -> Spin {
        Spin::from_qubits(n)
    }

    fn max_diff(a: &DVector<C64>, b: &DVector<C64>) -> f64 {
        (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn identity_rotation() {
        let s = rotate_dicke(spin(6), ComplexPhase::ZERO);
        assert_eq!(s.coefficients, spin(6).equatorial_state());
        assert_eq!(jz_moments(spin(6), ComplexPhase::ZERO).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn dual_routes_at_large_j() {
        let phi = ComplexPhase::new(0.3, 0.1);
        let a = rotate_dicke(spin(50), phi);
        let b = dicke_from_wigner(spin(50), phi).unwrap();
        assert!(max_diff(&a.coefficients, &b.coefficients) < 1e-10);
    }

    #[test]
    fn imaginary_angle_norm() {
        let phi2 = 0.35;
        let v = unnormalized_rotation(spin(8), ComplexPhase::new(0.0, phi2));
        // exp(phi2 Jy) with Jy imaginary: even m stay real, odd m turn imaginary
        for (k, z) in v.iter().enumerate() {
            let part = if k % 2 == 0 { z.im } else { z.re };
            assert!(part.abs() < 1e-14, "k={k} {z}");
        }
        assert!((v.norm_squared() - norm_weight(spin(8), phi2).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn jy_examples() {
        let (m, sq) = jy_moments(spin(4), 0.0).unwrap();
        assert!(m.abs() < 1e-15 && (sq - 3.0).abs() < 1e-9);
        let (m, _) = jy_moments(spin(2), 0.25).unwrap();
        assert!((m - 0.5f64.tanh()).abs() < 1e-14);
        let (a, b) = jy_moments(spin(10), 0.3).unwrap();
        let (c, d) = jy_moments(spin(10), -0.3).unwrap();
        assert!((a + c).abs() < 1e-12 && (b - d).abs() < 1e-12);
    }

    #[test]
    fn heisenberg_limit() {
        for n in [2u32, 4, 10, 20, 50] {
            let nf = n as f64;
            assert!((var_phi2(spin(n), 0.0).unwrap() - 2.0 / (nf * (nf + 2.0))).abs() < 1e-9);
        }
        let oracle = rotate_dicke(spin(4), ComplexPhase::new(0.0, 0.1)).jy_mean_var().1;
        assert!((1.0 / var_phi2(spin(4), 0.1).unwrap() - 4.0 * oracle).abs() < 1e-9);
    }

    #[test]
    fn jz_examples() {
        let (jz2, _) = jz_moments(spin(2), ComplexPhase::new(std::f64::consts::FRAC_PI_2, 0.0)).unwrap();
        assert!((jz2 - 1.0).abs() < 1e-12);
        assert_eq!(jz_moments(spin(3), ComplexPhase::ZERO), Err(Error::HalfIntegerJ(3)));
    }

    #[test]
    fn derivatives_vanish_at_phi1_zero() {
        let (d1, _) = jz2_derivatives(spin(10), ComplexPhase::new(0.0, 0.2)).unwrap();
        assert_eq!(d1, 0.0);
    }

    fn fd_check(n: u32, phi: ComplexPhase) {
        let (d1, d2) = jz2_derivatives(spin(n), phi).unwrap();
        let f1 = richardson_derivative(|x| jz_moments(spin(n), ComplexPhase::new(x, phi.im)).unwrap().0, phi.re, 1e-3);
        let f2 = richardson_derivative(|x| jz_moments(spin(n), ComplexPhase::new(phi.re, x)).unwrap().0, phi.im, 1e-3);
        assert!((d1 - f1).abs() <= 1e-6 * f1.abs().max(1e-3), "{d1} vs {f1}");
        assert!((d2 - f2).abs() <= 1e-6 * f2.abs().max(1e-3), "{d2} vs {f2}");
    }

    #[test]
    fn derivatives_match_finite_differences() {
        fd_check(2, ComplexPhase::new(0.4, 0.2));
        fd_check(50, ComplexPhase::new(std::f64::consts::FRAC_PI_4, 0.1));
        fd_check(20, ComplexPhase::new(0.3, 5e-4));
        fd_check(20, ComplexPhase::new(0.3, 0.0));
    }

    fn p1_closed(j: f64, phi1: f64) -> f64 {
        8.0 * j * (j + 1.0) / ((j * j + j - 2.0) * phi1.tan().powi(2) + 4.0)
    }

    #[test]
    fn real_slice() {
        for n in [2u32, 4, 10, 20, 50] {
            for phi1 in [0.1, 0.3, 0.6] {
                let got = inv_var_phi1(spin(n), ComplexPhase::new(phi1, 0.0)).unwrap();
                let want = p1_closed(n as f64 / 2.0, phi1);
                assert!((got - want).abs() <= 1e-9 * want, "n={n} phi1={phi1}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn origin_limit() {
        for n in [2u32, 10, 50] {
            let nf = n as f64;
            let v = var_phi1(spin(n), ComplexPhase::ZERO).unwrap();
            let want = 2.0 / (nf * (nf + 2.0));
            assert!((v - want).abs() <= 1e-6 * want, "n={n}: {v} vs {want}");
        }
    }

    #[test]
    fn no_phi1_information_off_axis() {
        let inv = inv_var_phi1(spin(50), ComplexPhase::new(0.0, 0.02)).unwrap();
        assert!(inv < 1e-2, "{inv}");
        assert!(var_phi1(spin(50), ComplexPhase::new(0.0, 0.02)).is_ok());
        let near = inv_var_phi1(spin(50), ComplexPhase::new(1e-3, 0.02)).unwrap();
        assert!((near - 47.857761003711).abs() < 1e-6);
    }

    #[test]
    fn recurrence_identity() {
        assert!(legendre_recurrence_check(spin(4), 0.3).unwrap() < 1e-10);
        assert!(legendre_recurrence_check(spin(20), 0.05).unwrap() < 1e-9);
        assert!(legendre_recurrence_check(spin(50), 1.0).unwrap() < 1e-8);
        assert!(legendre_recurrence_check(spin(2), 0.3).is_err());
    }

    #[test]
    fn estimator_inverts() {
        let phi = ComplexPhase::new(0.2, -0.07);
        let (jz2, _) = jz_moments(spin(8), phi).unwrap();
        let jy = jy_mean(spin(8), phi.im).unwrap();
        let est = dicke_estimate(spin(8), jz2, jy).unwrap();
        assert!((est.re - phi.re).abs() < 1e-10 && (est.im - phi.im).abs() < 1e-10);
        assert!(dicke_estimate(spin(8), 0.1, 4.0).is_err());
    }

    #[test]
    fn fisher_near_origin() {
        let f = dicke_fisher(spin(50), ComplexPhase::new(1e-3, 0.0)).unwrap();
        let crb = cramer_rao_bound(&f).unwrap();
        assert!(crb.var_phi1() <= 1.05 / 1300.0 && crb.var_phi2() <= 1.05 / 1300.0, "{:?}", crb.matrix);
    }

    #[test]
    fn half_integer_uses_matrix_route() {
        let s = rotate_dicke(spin(5), ComplexPhase::new(0.4, 0.1));
        assert!((s.coefficients.norm() - 1.0).abs() < 1e-12);
        assert!(dicke_from_wigner(spin(5), ComplexPhase::ZERO).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn closed_moments_match_dense(half in 1u32..=12, re in -1.5..1.5f64, im in -0.6..0.6f64) {
            let sp = spin(2 * half);
            let phi = ComplexPhase::new(re, im);
            let dense = rotate_dicke(sp, phi);
            let (jy, vy) = dense.jy_mean_var();
            let (cjy, cjy2) = jy_moments(sp, im).unwrap();
            prop_assert!((jy - cjy).abs() < 1e-9 * (1.0 + jy.abs()));
            prop_assert!((vy + jy * jy - cjy2).abs() < 1e-9 * (1.0 + cjy2));
            let (z2, z4) = dense.jz_even_moments();
            let (cz2, cz4) = jz_moments(sp, phi).unwrap();
            prop_assert!((z2 - cz2).abs() < 1e-9 * (1.0 + z2));
            prop_assert!((z4 - cz4).abs() < 1e-9 * (1.0 + z4));
            prop_assert!(cz4 >= cz2 * cz2 - 1e-9);
        }

        #[test]
        fn phi2_variance_ignores_phi1(half in 1u32..=25, im in -0.3..0.3f64, re in -1.0..1.0f64) {
            let sp = spin(2 * half);
            let a = var_phi2(sp, im).unwrap();
            let dense = rotate_dicke(sp, ComplexPhase::new(re, im)).jy_mean_var().1;
            prop_assert!((a - 1.0 / (4.0 * dense)).abs() < 1e-9 * a);
            prop_assert!(a >= var_phi2(sp, 0.0).unwrap() - 1e-12);
        }
    }
}
