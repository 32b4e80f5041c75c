//! Invariants at the second MUM point. The virtual degree is an input: the
//! numbers scale linearly with it.

use cymirror::enumerative::virtual_invariants;
use cymirror::rational::rat;
use cymirror::registry::get_family;

fn main() -> cymirror::Result<()> {
    for name in ["x13_tilde", "x10_tilde"] {
        let op = get_family(name)?.operator()?;
        for a in [1, 2] {
            let (n0, _) = virtual_invariants(&op, &rat(a), None, None, 5, 12)?;
            let v: Vec<String> = n0.integers()?.iter().map(|x| x.to_string()).collect();
            println!("{name} a={a}: {}", v.join(", "));
        }
    }
    Ok(())
}
