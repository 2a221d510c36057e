//! Fisher information of the NOON pointer for parity plus branch readout,
//! fringe-locked at each N, and the Cramer-Rao bound scaled by N^2.

use dtomo::runner::{execute, Command, RunOptions};

fn main() -> Result<(), dtomo::Error> {
    let cfg = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/configs/fisher.json"))?;
    let csv = execute(Command::Fisher, &cfg, &RunOptions::default())?;
    for line in csv.lines().skip(2).filter(|l| !l.starts_with('#')) {
        let f: Vec<&str> = line.split(',').collect();
        let n: f64 = f[0].parse().unwrap();
        let crb11: f64 = f[5].parse().unwrap();
        println!("N={:2} |gamma|={:<18} N^2 crb11={:.6}", f[0], f[1], n * n * crb11);
    }
    for fit in csv.lines().filter(|l| l.starts_with("# fit")) {
        println!("{fit}");
    }
    Ok(())
}
