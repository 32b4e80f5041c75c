//! The full check table for one family, as `cymirror report --check` runs it.

use cymirror::report::{family_report, Settings};

fn main() -> cymirror::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "x13".into());
    let r = family_report(&name, &Settings::default(), &mut |stage| {
        eprintln!("{stage}...")
    })?;
    for c in &r.checks {
        println!("{:<24} {:?}", c.item, c.status);
    }
    Ok(())
}
