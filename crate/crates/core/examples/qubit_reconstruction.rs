//! Reconstructs every amplitude of a random state from the three pointer
//! probabilities, exact and with finite post-selection statistics.

use dtomo::qubit::{default_pointer, forward_probabilities, reconstruct_amplitude};
use dtomo::runner::{execute, Command, RunOptions};
use dtomo::{CouplingConfig, PointerAxis, SystemState, C64};

fn main() -> Result<(), dtomo::Error> {
    let state = SystemState::new(&[C64::new(0.6, 0.1), C64::new(-0.2, 0.4), C64::new(0.3, -0.3), C64::new(0.5, 0.0)])?;
    let theta = std::f64::consts::FRAC_PI_4;
    for x in 1..=state.dim() {
        let c = CouplingConfig::new(theta, x, PointerAxis::Z)?;
        let p = forward_probabilities(&state, &c, &default_pointer(&c))?;
        let est = reconstruct_amplitude(&p, theta, state.tilde_psi(), state.dim())?;
        println!("x={x} true={:.6} est={:.6} p0={:.4}", state.amplitude(x)?, est, p.post_selection);
    }

    let cfg = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/configs/reconstruct.json"))?;
    print!("{}", execute(Command::Reconstruct, &cfg, &RunOptions::default())?);
    Ok(())
}
