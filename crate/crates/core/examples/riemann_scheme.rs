//! Singular points, leading-coefficient factors and local exponents.

use cymirror::operator::pscheme;
use cymirror::registry::get_family;
use cymirror::Poly;

fn main() -> cymirror::Result<()> {
    for name in ["x13", "x5", "x7", "x10", "x9"] {
        let op = get_family(name)?.operator()?;
        println!("{name}");
        for (f, m) in op.leading_coefficient_factor().factors {
            println!("  factor ({})^{m}", Poly::from_integers(&f).display_in("p"));
        }
        let ps = pscheme(&op)?;
        for p in &ps.points {
            let ex: Vec<String> = p.exponents.roots.iter().map(|r| r.to_string()).collect();
            println!("  {:<28} {}", p.location.to_string(), ex.join(" "));
        }
        let (sum, fuchs) = ps.fuchs_relation();
        println!("  exponent sum {sum} (Fuchs relation needs {fuchs})");
    }
    Ok(())
}
