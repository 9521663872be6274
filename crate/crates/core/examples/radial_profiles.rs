//! Radial eigenvalue problem on rotationally symmetric balls. The flat profile
//! reproduces k + p; the volume family reproduces |boundary| / |ball|.

use steklov_forms::radial::{solve_radial_profile, sweep, sweep_csv, volume_ratio, RadialProblem, WarpProfile};
use steklov_forms::Result;

fn main() -> Result<()> {
    let flat = solve_radial_profile(&RadialProblem::coexact(WarpProfile::Euclidean, 3, 2, 1, 1.0)?)?;
    println!("euclidean n=3 k=2 p=1: nu = {:.12} (expected 3)", flat.nu);

    for profile in [WarpProfile::Spherical, WarpProfile::Hyperbolic] {
        for r in [0.5, 1.0, 1.5] {
            let sol = solve_radial_profile(&RadialProblem::volume(profile.clone(), 2, r)?)?;
            let ratio = volume_ratio(&profile, 2, r)?;
            println!("{profile:<10} R={r:<4} nu={:.12} ratio={ratio:.12}", sol.nu);
        }
    }

    let problems: Vec<RadialProblem> = (1..=4)
        .map(|i| RadialProblem::coexact(WarpProfile::Hyperbolic, 2, 1, 1, 0.5 * i as f64))
        .collect::<Result<_>>()?;
    print!("{}", sweep_csv(&sweep(&problems)?)?);
    Ok(())
}
