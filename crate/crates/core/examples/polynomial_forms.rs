//! Exact polynomial differential forms: parsing, d, delta, the Hodge star and
//! Laplacian, and the sphere pullback test through the ideal (r^2 - 1).

use steklov_forms::{PForm, Poly, Result};

fn main() -> Result<()> {
    let xi = PForm::parse("(2 - 2*x1^2 + x2^2 + x3^2) * dx1 + (-3*x1*x2) * dx2 + (-3*x1*x3) * dx3", 3, 1)?;
    println!("xi          = {xi}");
    println!("d xi        = {}", xi.exterior_d()?);
    println!("delta xi    = {}", xi.codifferential()?);
    println!("*xi         = {}", xi.hodge_star());
    println!("Laplace xi  = {}", xi.hodge_laplacian());
    println!("i_Z xi      = {}", xi.interior_radial()?);
    println!("i_Z xi = 0 on the sphere: {}", xi.interior_radial()?.vanishes_on_sphere());

    // The projection r^2 a - rho ^ i_Z a has no radial part, so it sees only the pullback.
    let rho = PForm::radial_one_form(3);
    println!("J* rho = 0: {}", rho.pullback_vanishes_on_sphere());

    let g = Poly::parse("x1^4 + x1^2*x2^2 + x1^2*x3^2 - x1^2", 3)?;
    println!("{g} vanishes on the sphere: {}", g.vanishes_on_sphere());
    println!("remainder of x3^4 mod (r^2 - 1): {}", Poly::parse("x3^4", 3)?.reduce_on_sphere());
    Ok(())
}
