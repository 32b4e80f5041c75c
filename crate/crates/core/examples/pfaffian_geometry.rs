//! Hilbert series, degree, c2·H and h12 from the pfaffian resolution, and the
//! sub-pfaffians of the degree 13 skew matrix.

use cymirror::geometry::{hodge_h12, pfaffian_geometry, sub_pfaffians};
use cymirror::registry::get_family;

fn main() -> cymirror::Result<()> {
    for name in ["x5", "x7", "x10", "x13", "x9", "x14_ref"] {
        let spec = get_family(name)?;
        let w = spec.weighted_space()?;
        let g = pfaffian_geometry(&w, spec.bundle_twists.as_deref().unwrap(), spec.t.unwrap())?;
        print!(
            "{name}: H(t) = {}  deg {}  c2H {}",
            g.hilbert, g.degree, g.c2h
        );
        if let Some(i2) = &spec.i2_resolution {
            print!("  h12 {}", hodge_h12(&w, i2)?);
        }
        println!();
    }
    let (m, vars) = get_family("x13")?.mirror_matrix()?;
    let names: Vec<&str> = vars.iter().map(String::as_str).collect();
    for (i, p) in sub_pfaffians(&m).iter().enumerate() {
        println!("P{} = {}", i + 1, p.display_with(&names));
    }
    Ok(())
}
