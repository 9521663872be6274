//! Randomized invariants of the exterior calculus, quadric reduction and moments.

use proptest::prelude::*;
use steklov_forms::exterior::index_tuples;
use steklov_forms::moments::{integrate_over_sphere, parallel_moment_identities, parallel_pairing};
use steklov_forms::poly::{int, rat, rational_sphere_point};
use steklov_forms::{MultiIndex, PForm, Poly, Rational};

fn poly_strategy(dim: usize, max_deg: u32) -> impl Strategy<Value = Poly> {
    let term = (prop::collection::vec(0..=max_deg, dim), -5i64..=5);
    prop::collection::vec(term, 0..5).prop_map(move |terms| {
        terms.into_iter().fold(Poly::zero(dim), |acc, (e, c)| {
            let e: Vec<u32> = e.into_iter().map(|v| v.min(max_deg)).collect();
            &acc + &Poly::monomial(dim, MultiIndex::new(e), int(c))
        })
    })
}

/// A random form of the given degree in `R^dim`.
fn form_strategy(dim: usize, p: usize) -> impl Strategy<Value = PForm> {
    let frames = index_tuples(dim, p);
    prop::collection::vec(poly_strategy(dim, 3), frames.len())
        .prop_map(move |coeffs| PForm::from_components(dim, p, frames.clone().into_iter().zip(coeffs)).unwrap())
}

fn any_form() -> impl Strategy<Value = PForm> {
    (2usize..=4).prop_flat_map(|dim| (0..=dim).prop_flat_map(move |p| form_strategy(dim, p)))
}

/// Random homogeneous form of coefficient degree `k`.
fn homogeneous_form() -> impl Strategy<Value = (PForm, u32)> {
    (2usize..=4, 0u32..=3).prop_flat_map(|(dim, k)| {
        (0..=dim).prop_flat_map(move |p| {
            let frames = index_tuples(dim, p);
            let monos = MultiIndex::all_of_degree(dim, k);
            let n = frames.len() * monos.len();
            prop::collection::vec(-4i64..=4, n).prop_map(move |cs| {
                let mut w = PForm::zero(dim, p);
                for (i, c) in cs.into_iter().enumerate() {
                    let (f, m) = (&frames[i % frames.len()], &monos[i / frames.len()]);
                    w = &w + &PForm::monomial(Poly::monomial(dim, m.clone(), int(c)), f);
                }
                (w, k)
            })
        })
    })
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-7i64..=7, 1i64..=5).prop_map(|(a, b)| rat(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn d_squared_vanishes(w in any_form()) {
        prop_assume!(w.degree() + 2 <= w.dim());
        prop_assert!(w.exterior_d().unwrap().exterior_d().unwrap().is_zero());
    }

    #[test]
    fn delta_squared_vanishes(w in any_form()) {
        prop_assume!(w.degree() >= 2);
        prop_assert!(w.codifferential().unwrap().codifferential().unwrap().is_zero());
    }

    #[test]
    fn hodge_laplacian_is_componentwise(w in any_form()) {
        prop_assert_eq!(w.hodge_laplacian(), w.componentwise_laplacian());
    }

    #[test]
    fn star_star_sign(w in any_form()) {
        let (p, n) = (w.degree(), w.dim());
        let sign = if (p * (n - p)) % 2 == 0 { int(1) } else { int(-1) };
        prop_assert_eq!(w.hodge_star().hodge_star(), w.scale(&sign));
    }

    #[test]
    fn codifferential_is_conjugated_d(w in any_form()) {
        // delta = (-1)^{N(p+1)+1} * d * on p-forms in R^N.
        prop_assume!(w.degree() >= 1);
        let (p, n) = (w.degree(), w.dim());
        let sign = if (n * (p + 1) + 1) % 2 == 0 { int(1) } else { int(-1) };
        let via_star = w.hodge_star().exterior_d().unwrap().hodge_star().scale(&sign);
        prop_assert_eq!(w.codifferential().unwrap(), via_star);
    }

    #[test]
    fn euler_identity((w, k) in homogeneous_form()) {
        // i_Z d w + d i_Z w = (k + p) w
        let p = w.degree();
        let lie = match (w.exterior_d(), w.interior_radial()) {
            (Ok(dw), Ok(iz)) => &dw.interior_radial().unwrap() + &iz.exterior_d().unwrap(),
            (Ok(dw), Err(_)) => dw.interior_radial().unwrap(),
            (Err(_), Ok(iz)) => iz.exterior_d().unwrap(),
            (Err(_), Err(_)) => unreachable!(),
        };
        prop_assert_eq!(lie, w.scale(&int(k as i64 + p as i64)));
    }

    #[test]
    fn projection_is_radially_horizontal(w in any_form()) {
        prop_assume!(w.degree() >= 1);
        prop_assert!(w.radial_horizontal_projection().interior_radial().unwrap().is_zero());
    }

    #[test]
    fn reduction_ignores_ideal_multiples(a in poly_strategy(3, 3), b in poly_strategy(3, 3)) {
        let g = Poly::unit_sphere(3);
        let shifted = &(&a * &g) + &b;
        prop_assert_eq!(shifted.reduce_on_sphere(), b.reduce_on_sphere());
        prop_assert!((&a * &g).vanishes_on_sphere());
    }

    #[test]
    fn reduction_mod_ellipsoid(a in poly_strategy(3, 2), b in poly_strategy(3, 2), s in small_rational()) {
        prop_assume!(s != int(0));
        let g = Poly::ellipsoid(&[int(2), s, int(1)]);
        let pivot = Poly::quadric_pivot(&g).unwrap();
        let lhs = (&(&a * &g) + &b).reduce_mod_quadric(&g, pivot).unwrap();
        prop_assert_eq!(lhs, b.reduce_mod_quadric(&g, pivot).unwrap());
    }

    #[test]
    fn pullback_test_agrees_with_sampling(
        w in form_strategy(3, 1),
        eta in form_strategy(3, 1),
        zeta in form_strategy(3, 0),
        t in prop::collection::vec(small_rational(), 2),
        v in prop::collection::vec(small_rational(), 3),
    ) {
        // Adding (r^2 - 1) eta and rho ^ zeta does not change the pullback.
        let rho = PForm::radial_one_form(3);
        let g = Poly::unit_sphere(3);
        let w2 = &(&w + &eta.mul_poly(&g)) + &rho.wedge(&zeta).unwrap();
        prop_assert!(w.pullback_equal_on_sphere(&w2).unwrap());

        // Pointwise check at a rational sphere point on a tangent vector.
        let x = rational_sphere_point(&t);
        let dot: Rational = x.iter().zip(&v).map(|(a, b)| a * b).sum();
        let tangent: Vec<Rational> = v.iter().zip(&x).map(|(vi, xi)| vi - &dot * xi).collect();
        prop_assert_eq!(w.evaluate_on(&x, std::slice::from_ref(&tangent)), w2.evaluate_on(&x, &[tangent]));
    }

    #[test]
    fn pullback_vanishing_matches_evaluation(
        w in form_strategy(3, 2),
        t in prop::collection::vec(small_rational(), 2),
        u in prop::collection::vec(small_rational(), 3),
        v in prop::collection::vec(small_rational(), 3),
    ) {
        // If the pullback vanishes, every evaluation on tangent vectors is zero.
        let x = rational_sphere_point(&t);
        let proj = |v: &[Rational]| {
            let dot: Rational = x.iter().zip(v).map(|(a, b)| a * b).sum();
            v.iter().zip(&x).map(|(vi, xi)| vi - &dot * xi).collect::<Vec<_>>()
        };
        let horizontal = w.radial_horizontal_projection();
        let r2 = Poly::radius_squared(3).eval(&x);
        prop_assert_eq!(r2, int(1));
        prop_assert_eq!(
            horizontal.evaluate_on(&x, &[proj(&u), proj(&v)]),
            w.evaluate_on(&x, &[proj(&u), proj(&v)])
        );
        if w.pullback_vanishes_on_sphere() {
            prop_assert_eq!(w.evaluate_on(&x, &[proj(&u), proj(&v)]), int(0));
        }
    }

    #[test]
    fn rotation_invariance_of_sphere_integral(t in prop::collection::vec(small_rational(), 2)) {
        // The integral of <x, a>^2 over the sphere depends only on |a|^2.
        let a = rational_sphere_point(&t);
        let lin = a.iter().enumerate().fold(Poly::zero(3), |acc, (i, c)| &acc + &Poly::var(3, i).scale(c));
        let reference = integrate_over_sphere(&(&Poly::var(3, 0) * &Poly::var(3, 0)));
        prop_assert_eq!(integrate_over_sphere(&(&lin * &lin)), reference);
    }

    #[test]
    fn parallel_identities_are_point_independent(n in 1usize..=3, t in prop::collection::vec(small_rational(), 3)) {
        let normal = rational_sphere_point(&t[..n]);
        for p in 1..=n {
            prop_assert!(parallel_moment_identities(n, p, &normal).unwrap().holds());
        }
    }

    #[test]
    fn parallel_pairing_is_euclidean(x in prop::collection::vec(small_rational(), 4), y in prop::collection::vec(small_rational(), 4)) {
        let dot: Rational = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        prop_assert_eq!(parallel_pairing(&x, &y).unwrap(), dot);
    }
}
