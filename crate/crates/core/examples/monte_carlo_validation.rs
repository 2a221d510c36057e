//! Seeded Monte Carlo of the phase estimators against the analytic
//! error-propagation variances.

use dtomo::runner::{execute, Command, RunOptions};

fn main() -> Result<(), dtomo::Error> {
    for name in ["mc_noon.json", "mc_dicke.json", "mc_tr.json"] {
        let path = format!("{}/examples/configs/{name}", env!("CARGO_MANIFEST_DIR"));
        let cfg = std::fs::read_to_string(path)?;
        print!("{}", execute(Command::Mc, &cfg, &RunOptions::default())?);
    }
    Ok(())
}
