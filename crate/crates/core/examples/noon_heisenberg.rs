//! NOON pointer: the phase variance cosh^2(N phi2)/N^2 against N, and a scan
//! of the inverse variances over a small grid.

use dtomo::noon::noon_variance;
use dtomo::runner::{execute, Command, RunOptions};
use dtomo::ComplexPhase;

fn main() -> Result<(), dtomo::Error> {
    for n in [2u32, 4, 8, 16, 32] {
        let phi = ComplexPhase::new(0.7 / n as f64, 0.02);
        let c = noon_variance(phi, n)?;
        println!(
            "N={n:2} var_phi1={:.6e} var_phi2={:.6e} N^2 var_phi1={:.6}",
            c.var_phi1(),
            c.var_phi2(),
            c.var_phi1() * (n * n) as f64
        );
    }
    let cfg = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/configs/noon_scan.json"))?;
    print!("{}", execute(Command::Scan, &cfg, &RunOptions::default())?);
    Ok(())
}
