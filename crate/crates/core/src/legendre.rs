//! Normalized associated Legendre functions of complex argument and the
//! Wigner elements `W_m0(phi) = <j,m| exp(-i phi J_y) |j,0>` built from them.
//!
//! With `x = cos(phi)` and `s = sin(phi)` (both complex),
//! `W_m0(phi) = sqrt((j-m)!/(j+m)!) P_j^m(x)` for `m >= 0` with the Condon–Shortley
//! phase, and `W_{-m,0} = (-1)^m W_m0`. The normalized functions
//! `Q_l^m = sqrt((l-m)!/(l+m)!) P_l^m` are generated by recurrence in `l`, which
//! never forms the factorials.

use crate::error::{Error, Result};
use crate::spin::Spin;
use crate::C64;

/// `Q_l^m(x)` for fixed `m` and all `l` in `m..=lmax`, given `x = cos(phi)`, `s = sin(phi)`.
fn normalized_column(m: usize, lmax: usize, x: C64, s: C64) -> Vec<C64> {
    let mut qmm = C64::from(1.0);
    for k in 1..=m {
        let k = k as f64;
        qmm *= -s * ((2.0 * k - 1.0) / (2.0 * k)).sqrt();
    }
    let mut out = Vec::with_capacity(lmax + 1 - m);
    out.push(qmm);
    if lmax == m {
        return out;
    }
    out.push(x * (2.0 * m as f64 + 1.0).sqrt() * qmm);
    let mf = m as f64;
    for l in (m + 2)..=lmax {
        let lf = l as f64;
        let a = (2.0 * lf - 1.0) * x * out[l - m - 1];
        let b = ((lf + mf - 1.0) * (lf - mf - 1.0)).sqrt() * out[l - m - 2];
        out.push((a - b) / ((lf - mf) * (lf + mf)).sqrt());
    }
    out
}

/// `Q_l^m(cos phi)` with the Condon–Shortley phase.
pub fn normalized_legendre(l: usize, m: usize, phi: C64) -> C64 {
    if m > l {
        return C64::from(0.0);
    }
    *normalized_column(m, l, phi.cos(), phi.sin()).last().unwrap()
}

fn integer_j(spin: Spin) -> Result<usize> {
    if !spin.is_integer() {
        return Err(Error::HalfIntegerJ(spin.two_j()));
    }
    Ok(spin.two_j() as usize / 2)
}

/// `W_m0(phi)` for integer `j`.
pub fn wigner_m0(spin: Spin, m: i32, phi: C64) -> Result<C64> {
    let j = integer_j(spin)?;
    if m.unsigned_abs() as usize > j {
        return Err(Error::InvalidInput(format!("|m| = {} exceeds j = {j}", m.abs())));
    }
    let q = normalized_legendre(j, m.unsigned_abs() as usize, phi);
    Ok(if m < 0 && m % 2 != 0 { -q } else { q })
}

/// The column `W_m0(phi)` in basis order `m = j, ..., -j`.
pub fn wigner_column(spin: Spin, phi: C64) -> Result<Vec<C64>> {
    let j = integer_j(spin)?;
    let (x, s) = (phi.cos(), phi.sin());
    let positive: Vec<C64> = (0..=j).map(|m| *normalized_column(m, j, x, s).last().unwrap()).collect();
    let mut out = Vec::with_capacity(2 * j + 1);
    for m in (1..=j).rev() {
        out.push(positive[m]);
    }
    out.push(positive[0]);
    for (m, w) in positive.iter().enumerate().skip(1) {
        out.push(if m % 2 == 1 { -w } else { *w });
    }
    Ok(out)
}
