//! Recovering a Picard-Fuchs operator from period coefficients alone.

use cymirror::registry::get_family;
use cymirror::{fit_operator, operator_equal};

fn main() -> cymirror::Result<()> {
    for name in ["x9", "x13", "x7"] {
        let spec = get_family(name)?;
        let printed = spec.operator()?;
        let s = spec.closed_form_period(40)?;
        match fit_operator(&s, 4, printed.phi_degree())? {
            Some(op) => println!(
                "{name}: fitted {op}\n    matches registry: {}",
                operator_equal(&op, &printed)
            ),
            None => println!("{name}: no operator of this shape"),
        }
    }
    Ok(())
}
