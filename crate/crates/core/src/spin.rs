//! Collective spin operators in the `|j, m>` basis ordered `m = j, j-1, ..., -j`.

use nalgebra::{DMatrix, DVector};

use crate::expm::expm;
use crate::C64;

/// Spin quantum number stored as `2j` so half-integers are exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Spin {
    two_j: u32,
}

impl Spin {
    pub fn from_two_j(two_j: u32) -> Self {
        Self { two_j }
    }

    /// Spin of `n` qubits in the symmetric subspace: `j = n/2`.
    pub fn from_qubits(n: u32) -> Self {
        Self { two_j: n }
    }

    pub fn two_j(self) -> u32 {
        self.two_j
    }

    pub fn j(self) -> f64 {
        self.two_j as f64 / 2.0
    }

    pub fn is_integer(self) -> bool {
        self.two_j.is_multiple_of(2)
    }

    pub fn dim(self) -> usize {
        self.two_j as usize + 1
    }

    /// `j(j+1)`.
    pub fn casimir(self) -> f64 {
        let j = self.j();
        j * (j + 1.0)
    }

    /// Magnetic quantum number of basis index `k`.
    pub fn m_at(self, k: usize) -> f64 {
        self.j() - k as f64
    }

    /// Basis index of the state with `2m = two_m`.
    pub fn index_of(self, two_m: i32) -> Option<usize> {
        let k = self.two_j as i32 - two_m;
        if k % 2 != 0 || k < 0 || k > 2 * self.two_j as i32 {
            return None;
        }
        Some((k / 2) as usize)
    }

    pub fn jz(self) -> DMatrix<C64> {
        let d = self.dim();
        DMatrix::from_fn(d, d, |r, c| if r == c { C64::from(self.m_at(r)) } else { C64::from(0.0) })
    }

    pub fn jplus(self) -> DMatrix<C64> {
        let d = self.dim();
        let jj = self.casimir();
        // <m+1|J+|m> sits one row above the diagonal because m decreases with the index.
        DMatrix::from_fn(d, d, |r, c| {
            if c == r + 1 {
                let m = self.m_at(c);
                C64::from((jj - m * (m + 1.0)).sqrt())
            } else {
                C64::from(0.0)
            }
        })
    }

    pub fn jminus(self) -> DMatrix<C64> {
        self.jplus().adjoint()
    }

    pub fn jx(self) -> DMatrix<C64> {
        (self.jplus() + self.jminus()) * C64::from(0.5)
    }

    pub fn jy(self) -> DMatrix<C64> {
        (self.jplus() - self.jminus()) * C64::new(0.0, -0.5)
    }

    /// `|j, 0>` for integer `j`, `|j, 1/2>` otherwise.
    pub fn equatorial_state(self) -> DVector<C64> {
        let two_m = if self.is_integer() { 0 } else { 1 };
        let mut v = DVector::zeros(self.dim());
        v[self.index_of(two_m).unwrap()] = C64::from(1.0);
        v
    }

    /// `exp(-i phi J_y)` for complex `phi`, by dense matrix exponential.
    pub fn rotation_y(self, phi: C64) -> DMatrix<C64> {
        expm(&(self.jy() * (C64::new(0.0, -1.0) * phi)))
    }
}

/// `<v|A|v>` for a normalized vector.
pub fn expectation(v: &DVector<C64>, a: &DMatrix<C64>) -> C64 {
    v.dotc(&(a * v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_abs(m: &DMatrix<C64>) -> f64 {
        m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn commutation_relations() {
        let i = C64::new(0.0, 1.0);
        for two_j in 1..=12 {
            let s = Spin::from_two_j(two_j);
            let (x, y, z) = (s.jx(), s.jy(), s.jz());
            assert!(max_abs(&(&x * &y - &y * &x - &z * i)) < 1e-10);
            assert!(max_abs(&(&y * &z - &z * &y - &x * i)) < 1e-10);
            assert!(max_abs(&(&z * &x - &x * &z - &y * i)) < 1e-10);
            let cas = &x * &x + &y * &y + &z * &z;
            let expect = DMatrix::<C64>::identity(s.dim(), s.dim()) * C64::from(s.casimir());
            assert!(max_abs(&(cas - expect)) < 1e-10);
        }
    }

    #[test]
    fn hermitian_and_diagonal() {
        let s = Spin::from_two_j(5);
        assert!(max_abs(&(s.jy() - s.jy().adjoint())) < 1e-15);
        assert_eq!(s.jz()[(0, 0)], C64::from(2.5));
        assert_eq!(s.jz()[(5, 5)], C64::from(-2.5));
    }

    #[test]
    fn qubit_is_half_pauli() {
        let s = Spin::from_qubits(1);
        let y = s.jy() * C64::from(2.0);
        assert_eq!(y[(0, 1)], C64::new(0.0, -1.0));
        assert_eq!(y[(1, 0)], C64::new(0.0, 1.0));
    }

    #[test]
    fn indices() {
        let s = Spin::from_two_j(4);
        assert_eq!(s.index_of(4), Some(0));
        assert_eq!(s.index_of(0), Some(2));
        assert_eq!(s.index_of(1), None);
        assert_eq!(s.index_of(6), None);
        let h = Spin::from_two_j(3);
        assert_eq!(h.equatorial_state()[1], C64::from(1.0));
    }
}
