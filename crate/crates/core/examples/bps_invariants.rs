//! Yukawa coupling and genus 0 and 1 BPS numbers for the four pfaffian families.

use cymirror::registry::get_family;
use cymirror::report::{bps_tables, Settings};

fn main() -> cymirror::Result<()> {
    let settings = Settings {
        order: 26,
        max_degree: 5,
    };
    for name in ["x13", "x5", "x7", "x10"] {
        let spec = get_family(name)?;
        let (n0, n1) = bps_tables(&spec, &settings, None, None)?;
        let fmt = |v: Vec<cymirror::Integer>| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        println!("{name} n0: {}", fmt(n0.integers()?));
        if let Some(n1) = n1 {
            println!(
                "{name} n1: {}  (disc {})",
                fmt(n1.integers()?),
                n1.assumptions["disc"]
            );
        }
    }
    Ok(())
}
