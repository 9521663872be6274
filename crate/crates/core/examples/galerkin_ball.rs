//! Galerkin upper bounds on the unit ball. Once the trial degree reaches the
//! minimizer degree the value is exact and comes with a rational certificate.

use steklov_forms::ball::first_eigenvalue;
use steklov_forms::galerkin::{assemble_problem, exact_eigenspace, smallest_rayleigh, smallest_rayleigh_of, Constraint, Domain, GalerkinProblem};
use steklov_forms::{Rational, Result};

fn main() -> Result<()> {
    for (n, p) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
        let exact = first_eigenvalue(n, p)?;
        for degree in 1..=3 {
            let res = smallest_rayleigh(&GalerkinProblem::new(Domain::Ball, n, p, degree, Constraint::Tangential)?)?;
            let cert = res.exact_value().map_or("-".to_string(), Rational::to_string);
            println!(
                "n={n} p={p} D={degree}: {:.12} (certified {cert}, closed form {exact}, trial dim {})",
                res.value, res.trial_dimension
            );
        }
    }

    let problem = GalerkinProblem::new(Domain::Ball, 2, 0, 2, Constraint::Tangential)?;
    println!("functions, constants removed: {:.12}", smallest_rayleigh(&problem)?.value);

    let asm = assemble_problem(&GalerkinProblem::new(Domain::Ball, 2, 1, 2, Constraint::Tangential)?)?;
    let res = smallest_rayleigh_of(&asm)?;
    if let Some(v) = res.exact_value() {
        for w in exact_eigenspace(&asm, v)? {
            println!("minimizer: {w}");
        }
    }
    Ok(())
}
