//! Rotated Dicke state two ways: associated Legendre recurrence and the dense
//! matrix exponential, at complex rotation angles.

use dtomo::dicke::legendre_recurrence_check;
use dtomo::legendre::wigner_column;
use dtomo::spin::Spin;
use dtomo::C64;

fn main() -> Result<(), dtomo::Error> {
    for n in [4u32, 10, 20, 50] {
        let spin = Spin::from_qubits(n);
        let mut worst: f64 = 0.0;
        for phi in [C64::new(0.4, 0.1), C64::new(-1.3, 0.35), C64::new(2.8, -0.2)] {
            let col = wigner_column(spin, phi)?;
            let dense = spin.rotation_y(phi) * spin.equatorial_state();
            let scale = dense.iter().map(|z| z.norm()).fold(0.0, f64::max);
            worst = col.iter().zip(dense.iter()).map(|(a, b)| (a - b).norm() / scale).fold(worst, f64::max);
        }
        println!(
            "N={n:2} max column difference {worst:.2e}, recurrence residual {:.2e}",
            legendre_recurrence_check(spin, 0.3)?
        );
    }
    Ok(())
}
