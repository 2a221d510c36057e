//! Dicke pointer at N = 50: inverse phase variances over the grid and the
//! real-axis slice against its closed form.

use dtomo::dicke::{inv_var_phi1, var_phi2};
use dtomo::runner::{execute, Command, RunOptions};
use dtomo::spin::Spin;
use dtomo::ComplexPhase;

fn main() -> Result<(), dtomo::Error> {
    let spin = Spin::from_qubits(50);
    let j = spin.j();
    for phi1 in [0.0, 0.02, 0.1, 0.3, 0.5] {
        let closed = 8.0 * j * (j + 1.0) / ((j * j + j - 2.0) * f64::tan(phi1).powi(2) + 4.0);
        println!(
            "phi1={phi1:.2} 1/var_phi1={:.6} closed form={closed:.6}",
            inv_var_phi1(spin, ComplexPhase::new(phi1, 0.0))?
        );
    }
    println!("1/var_phi2 at phi2=0: {:.6}", 1.0 / var_phi2(spin, 0.0)?);

    let cfg = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/configs/dicke_scan.json"))?;
    let csv = execute(Command::Scan, &cfg, &RunOptions::default())?;
    let peak = csv
        .lines()
        .skip(2)
        .map(|l| l.split(',').map(str::to_owned).collect::<Vec<_>>())
        .max_by(|a, b| a[4].parse::<f64>().unwrap().total_cmp(&b[4].parse::<f64>().unwrap()))
        .unwrap();
    println!("grid peak 1/var_phi1={} at phi=({}, {}), {} rows", peak[4], peak[2], peak[3], csv.lines().count() - 2);
    Ok(())
}
