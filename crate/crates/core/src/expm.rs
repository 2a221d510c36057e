//! Dense complex matrix exponential by Padé(13) scaling and squaring.

use nalgebra::DMatrix;

use crate::C64;

const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

// Largest 1-norm for which the degree-13 approximant is accurate to unit roundoff.
const THETA13: f64 = 5.371920351148152;

fn one_norm(a: &DMatrix<C64>) -> f64 {
    a.column_iter().map(|c| c.iter().map(|z| z.norm()).sum::<f64>()).fold(0.0, f64::max)
}

/// `exp(a)` for a square complex matrix.
pub fn expm(a: &DMatrix<C64>) -> DMatrix<C64> {
    assert!(a.is_square(), "expm needs a square matrix");
    let n = a.nrows();
    if n == 0 {
        return a.clone();
    }
    let norm = one_norm(a);
    let s = if norm > THETA13 { (norm / THETA13).log2().ceil() as i32 } else { 0 };
    let a = a * C64::from(2f64.powi(-s));
    let b = |k: usize| C64::from(PADE13[k]);
    let id = DMatrix::<C64>::identity(n, n);
    let a2 = &a * &a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;

    let u_inner = &a6 * (&a6 * b(13) + &a4 * b(11) + &a2 * b(9)) + &a6 * b(7) + &a4 * b(5) + &a2 * b(3) + &id * b(1);
    let u = &a * u_inner;
    let v = &a6 * (&a6 * b(12) + &a4 * b(10) + &a2 * b(8)) + &a6 * b(6) + &a4 * b(4) + &a2 * b(2) + &id * b(0);

    let p = &v + &u;
    let q = &v - &u;
    let mut r = q.lu().solve(&p).expect("Padé denominator is nonsingular");
    for _ in 0..s {
        r = &r * &r;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn zero_and_diagonal() {
        let z = DMatrix::<C64>::zeros(3, 3);
        assert_eq!(expm(&z), DMatrix::identity(3, 3));
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(1.0, 0.0), c(0.0, 2.0), c(-3.0, 0.5)]));
        let e = expm(&d);
        for k in 0..3 {
            assert!((e[(k, k)] - d[(k, k)].exp()).norm() < 1e-13 * e[(k, k)].norm().max(1.0));
        }
    }

    #[test]
    fn large_norm_rotation() {
        // exp(-i t sigma_y) with t large enough to force squaring
        let t = 40.0;
        let a = DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(-t, 0.0), c(t, 0.0), c(0.0, 0.0)]);
        let e = expm(&a);
        assert!((e[(0, 0)] - c(t.cos(), 0.0)).norm() < 1e-11);
        assert!((e[(1, 0)] - c(t.sin(), 0.0)).norm() < 1e-11);
    }

    proptest! {
        #[test]
        fn agrees_with_nalgebra(vals in proptest::collection::vec(-2.0..2.0f64, 32)) {
            let a = DMatrix::from_iterator(4, 4, (0..16).map(|k| c(vals[2 * k], vals[2 * k + 1])));
            let ours = expm(&a);
            let theirs = a.clone().exp();
            let scale = theirs.iter().map(|z| z.norm()).fold(1.0, f64::max);
            for (x, y) in ours.iter().zip(theirs.iter()) {
                prop_assert!((x - y).norm() < 1e-10 * scale);
            }
        }
    }
}
