//! Exact div/curl Rayleigh quotients of polynomial vector fields on the unit
//! ball of R^3.

use steklov_forms::galerkin::vector_fields::{vector_field_rayleigh_3d, BoundaryType};
use steklov_forms::{Poly, Result};

fn field(parts: [&str; 3]) -> Result<Vec<Poly>> {
    parts.iter().map(|s| Poly::parse(s, 3)).collect()
}

fn main() -> Result<()> {
    let cases = [
        (["2 - 2*x1^2 + x2^2 + x3^2", "-3*x1*x2", "-3*x1*x3"], BoundaryType::Tangent),
        (["x2", "-x1", "0"], BoundaryType::Tangent),
        (["x1", "x2", "x3"], BoundaryType::Normal),
    ];
    for (parts, boundary) in cases {
        let q = vector_field_rayleigh_3d(&field(parts)?, boundary)?;
        println!(
            "{:?} field ({}): div {} + curl {} over boundary {} = {}",
            boundary,
            parts.join(", "),
            q.div_energy,
            q.curl_energy,
            q.boundary_norm,
            q.quotient
        );
    }
    match vector_field_rayleigh_3d(&field(["x1", "x2", "x3"])?, BoundaryType::Tangent) {
        Err(e) => println!("radial field as a tangent field: {e}"),
        Ok(_) => unreachable!("the radial field is not tangent"),
    }
    Ok(())
}
