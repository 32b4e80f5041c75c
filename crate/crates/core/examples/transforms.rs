//! Moving an operator to the point at infinity: the degree 5 family maps to
//! itself and the degree 10 family to a second point of maximal unipotent monodromy.

use cymirror::operator_equal;
use cymirror::registry::get_family;

fn main() -> cymirror::Result<()> {
    for name in ["x5", "x10", "x13"] {
        let spec = get_family(name)?;
        let recipe = spec.transform("to-infinity")?;
        let out = spec.transformed("to-infinity")?;
        println!("{name} --to-infinity--> {out}");
        if let Some(target) = &recipe.target {
            let printed = get_family(target)?.printed_operator()?;
            println!(
                "  equals printed {target}: {}",
                operator_equal(&out, &printed)
            );
        }
    }
    Ok(())
}
