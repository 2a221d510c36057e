//! CSV number formatting and the provenance header.

use sha2::{Digest, Sha256};

/// Rounds to 15 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

/// Shortest round-trip decimal of `x` after rounding to 15 significant digits;
/// scientific notation outside `[1e-5, 1e15)`.
pub fn fmt_num(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let r = round_sig(x);
    if r == 0.0 {
        return "0".into();
    }
    let a = r.abs();
    if !(1e-5..1e15).contains(&a) {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn header(config_text: &str, seed: u64) -> String {
    format!(
        "# dtomo {} config_sha256={} seed={}\n",
        env!("CARGO_PKG_VERSION"),
        sha256_hex(config_text.as_bytes()),
        seed
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers() {
        assert_eq!(fmt_num(0.1 + 0.2), "0.3");
        assert_eq!(fmt_num(1300.0), "1300");
        assert_eq!(fmt_num(-0.48000000000000004), "-0.48");
        assert_eq!(fmt_num(1.5e-7), "1.5e-7");
        assert_eq!(fmt_num(2e20), "2e20");
        assert_eq!(fmt_num(f64::NAN), "nan");
        assert_eq!(fmt_num(-0.0), "0");
        assert_eq!(fmt_num(std::f64::consts::PI), "3.14159265358979");
    }

    #[test]
    fn digest() {
        assert_eq!(sha256_hex(b"abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }
}
