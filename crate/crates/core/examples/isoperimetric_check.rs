//! Compare Galerkin upper bounds with the isoperimetric right-hand side on the
//! unit ball (where the bound is attained for large p) and on an ellipsoid.

use steklov_forms::galerkin::iso::{iso_bound_check, Verdict};
use steklov_forms::galerkin::Domain;

fn main() -> steklov_forms::Result<()> {
    println!("unit ball");
    for n in 1..=4 {
        for p in 1..=n {
            let r = iso_bound_check(&Domain::Ball, n, p, None)?;
            println!(
                "  n={n} p={p}  nu={}  rhs={}  closed-form minus rhs={}",
                r.galerkin_exact.map_or("?".into(), |v| v.to_string()),
                r.iso_rhs_exact.as_ref().unwrap(),
                r.equality_margin.as_ref().unwrap(),
            );
        }
    }

    let ellipsoid: Domain = "ellipsoid:2,1,1".parse()?;
    println!("{ellipsoid}");
    for p in 1..=2 {
        for d in 1..=4 {
            let r = iso_bound_check(&ellipsoid, 2, p, Some(d))?;
            let tag = if r.verdict == Verdict::Confirmed { "confirmed" } else { "inconclusive" };
            println!("  p={p} D={d}  galerkin={:.10}  rhs={:.10}  margin={:+.3e}  {tag}", r.galerkin_value, r.iso_rhs, r.margin);
        }
    }
    Ok(())
}
