//! The normal boundary problem on (p+1)-forms has the same first eigenvalue as
//! the tangential problem on (n-p)-forms.

use steklov_forms::ball::first_eigenvalue;
use steklov_forms::galerkin::{dual_first_eigenvalue, Domain};
use steklov_forms::Result;

fn main() -> Result<()> {
    for n in 2..=3 {
        for p in 0..n {
            let dual = dual_first_eigenvalue(Domain::Ball, n, p, 2)?;
            println!(
                "n={n} p={p}: normal problem {:.12}, tangential nu_(1,{}) = {}",
                dual.value,
                n - p,
                first_eigenvalue(n, n - p)?
            );
        }
    }
    Ok(())
}
