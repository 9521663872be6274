//! Harmonic extensions of boundary eigenforms: the coexact family is its own
//! extension, the exact family needs the three-term correction. The radial
//! profiles of that correction are checked separately.

use steklov_forms::ball::{build_coexact_pair, build_exact_pair, derive_exact_family_constants, exact_family_constants, verify_harm2_profiles};
use steklov_forms::{PForm, Result};

fn main() -> Result<()> {
    let rot = PForm::parse("(x1) * dx2 + (-x2) * dx1", 3, 1)?;
    let pair = build_coexact_pair(2, 1, 1, &rot)?;
    println!("coexact: {} has eigenvalue {}", pair.boundary_eigenform, pair.eigenvalue);

    let phi = PForm::parse("(x1)", 3, 0)?;
    let pair = build_exact_pair(2, 1, 1, &phi)?;
    println!("exact:   d({phi}) extends to {}", pair.extension);
    println!("         eigenvalue {}, J* extension = {} J* d phi", pair.eigenvalue, pair.proportionality);

    let (a, b, c) = exact_family_constants(2, 1, 1);
    let (da, db, dc) = derive_exact_family_constants(1, 1, &phi)?;
    println!("constants ({a}, {b}, {c}); re-derived by a linear solve: ({da}, {db}, {dc})");

    for (n, k, p) in [(2, 1, 1), (3, 2, 2), (4, 3, 2)] {
        println!("radial profile identities hold for (n,k,p) = ({n},{k},{p}): {}", verify_harm2_profiles(n, k, p)?);
    }
    Ok(())
}
