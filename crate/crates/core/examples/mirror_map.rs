//! Frobenius basis at the MUM point, the mirror map and its inverse.

use cymirror::frobenius::{frobenius_basis, inverse_mirror_map, mirror_map};
use cymirror::registry::get_family;

fn main() -> cymirror::Result<()> {
    let op = get_family("x13")?.operator()?;
    let basis = frobenius_basis(&op, 8, 1)?;
    let q = mirror_map(&basis)?;
    let phi = inverse_mirror_map(&q)?;
    let show = |s: &cymirror::Series| {
        (0..6)
            .map(|n| s.coeff(n).to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };
    println!("Phi0   = {}", show(&basis.phi0));
    println!("Psi    = {}", show(&basis.psi));
    println!("q(phi) = {}", show(&q));
    println!("phi(q) = {}", show(&phi));
    println!("integral: {}", q.is_integral() && phi.is_integral());
    Ok(())
}
