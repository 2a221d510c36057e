//! Pairing each pointer with one coupled to the conjugate state removes phi2
//! from the interference term.

use dtomo::coupling::{alpha_beta, phase_from_alpha_beta};
use dtomo::tr::{tr_estimate_phi1, tr_final_state};
use dtomo::{CouplingConfig, PointerAxis, SystemState, C64};

fn main() -> Result<(), dtomo::Error> {
    let state = SystemState::new(&[C64::new(0.9, 0.0), C64::new(0.2, 0.5), C64::new(-0.1, 0.3)])?;
    let c = CouplingConfig::new(0.5, 2, PointerAxis::Z)?;
    let ab = alpha_beta(&state, &c)?;
    let phi = phase_from_alpha_beta(&ab)?;
    println!("phi = ({:+.6}, {:+.6})", phi.re, phi.im);
    for n in [1u32, 2, 4, 8] {
        let pair = tr_final_state(&ab, n)?;
        let est = tr_estimate_phi1(pair.parity(), n)?;
        println!(
            "N={n} |amp0|={:.6} |amp1|={:.6} parity={:+.6} phi1 estimate={:.6} per-shot var={:.3e}",
            pair.amp0.norm(),
            pair.amp1.norm(),
            pair.parity(),
            est.phi1,
            est.variance
        );
    }
    Ok(())
}
