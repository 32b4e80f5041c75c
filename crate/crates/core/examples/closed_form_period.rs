//! Closed-form period of the degree 13 family against the recurrence of its operator.

use cymirror::rational::rat;
use cymirror::registry::get_family;

fn main() -> cymirror::Result<()> {
    let spec = get_family("x13")?;
    let closed = spec.closed_form_period(8)?;
    let op = spec.operator()?;
    let rec = op.recurrence_solve(&rat(1), 8)?;
    for n in 0..=8 {
        println!("a_{n} = {}", closed.coeff(n));
    }
    println!("recurrence agrees: {}", closed == rec);
    println!("L(period) = 0 to order 8: {}", op.apply(&closed).is_zero());
    Ok(())
}
