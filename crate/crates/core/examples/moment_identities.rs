//! Exact sphere and ball monomial moments and the parallel-form identities
//! used in the isoperimetric bound.

use steklov_forms::moments::{ball_monomial_moment, parallel_moment_identities, parallel_pairing, sphere_monomial_moment};
use steklov_forms::poly::{rat, rational_sphere_point};
use steklov_forms::{MultiIndex, Result};

fn main() -> Result<()> {
    for e in [vec![0, 0, 0], vec![2, 0, 0], vec![2, 2, 0], vec![4, 2, 2]] {
        let a = MultiIndex::new(e.clone());
        println!("x^{e:?}: sphere {}, ball {}", sphere_monomial_moment(&a), ball_monomial_moment(&a));
    }
    let normal = rational_sphere_point(&[rat(1, 2), rat(-2, 3), rat(3, 5)]);
    for p in 1..=3 {
        let m = parallel_moment_identities(3, p, &normal)?;
        println!(
            "n=3 p={p}: |V1^..^Vp|^2 -> {} (expected {}), |i_N(..)|^2 -> {} (expected {})",
            m.wedge_norm, m.wedge_expected, m.normal_contraction_norm, m.normal_contraction_expected
        );
    }
    let x = [rat(1, 2), rat(3, 1), rat(-1, 4)];
    let y = [rat(2, 1), rat(-1, 3), rat(5, 1)];
    let show = |v: &[steklov_forms::Rational]| v.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(", ");
    println!("pairing of ({}) and ({}): {}", show(&x), show(&y), parallel_pairing(&x, &y)?);
    Ok(())
}
