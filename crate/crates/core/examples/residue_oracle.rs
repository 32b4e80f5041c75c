//! Period coefficients by brute-force constant-term extraction.

use cymirror::oracle::LaurentMonomialSystem;
use cymirror::registry::get_family;

fn main() -> cymirror::Result<()> {
    let spec = get_family("x13")?;
    let sys = LaurentMonomialSystem::from_json(spec.residue_system.as_ref().unwrap())?;
    let basis = sys.solution_basis_check(21);
    println!(
        "null lattice rank {}, generator t-degrees {:?}, free {}",
        basis.rank, basis.t_degrees, basis.free
    );
    let closed = spec.closed_form_period(4)?;
    for k in 0..=4u64 {
        println!(
            "t^{:<2} oracle {:>10}  closed form {}",
            7 * k,
            sys.constant_term_coefficient(7 * k),
            closed.coeff(k as usize)
        );
    }
    println!("t^8 oracle {}", sys.constant_term_coefficient(8));
    println!(
        "naive path at t^14: {}",
        sys.constant_term_coefficient_naive(14)
    );
    Ok(())
}
