//! The coupling as a complex phase: amplitude to (alpha, beta) to phi and back.

use dtomo::coupling::{alpha_beta, phase_from_alpha_beta, psi_from_phase};
use dtomo::{CouplingConfig, PointerAxis, SystemState, C64};

fn main() -> Result<(), dtomo::Error> {
    let state = SystemState::new(&[C64::new(1.0, 0.0), C64::new(0.3, 0.8), C64::new(-0.5, 0.2)])?;
    for theta in [0.3, 1.0, std::f64::consts::PI] {
        for x in 1..=state.dim() {
            let c = CouplingConfig::new(theta, x, PointerAxis::Z)?;
            let ab = alpha_beta(&state, &c)?;
            let phi = phase_from_alpha_beta(&ab)?;
            let back = psi_from_phase(phi, state.tilde_psi(), theta)?;
            println!(
                "theta={theta:.3} x={x} phi=({:+.6}, {:+.6}) |psi - psi'|={:.1e}",
                phi.re,
                phi.im,
                (back - state.amplitude(x)?).norm()
            );
        }
    }
    Ok(())
}
