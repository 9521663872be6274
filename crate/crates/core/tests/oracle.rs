//! Library values against independently computed references.

use std::f64::consts::PI;

use steklov_forms::ball::{enumerate_spectrum, first_eigenvalue, nu_coexact, nu_exact};
use steklov_forms::harmonic::{build_hkp, dimension_row};
use steklov_forms::moments::{integrate_over_ball, sphere_monomial_moment};
use steklov_forms::poly::{int, rat, to_f64};
use steklov_forms::{MultiIndex, Poly};

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Harmonic homogeneous polynomials of degree `k` in `m` variables.
fn harmonic_polys(m: usize, k: u32) -> usize {
    let k = k as usize;
    let all = |d: usize| binom(m + d - 1, d);
    all(k) - if k >= 2 { all(k - 2) } else { 0 }
}

/// Harmonic coclosed forms. Below top degree, `delta` maps harmonic p-forms
/// of degree k onto harmonic coclosed (p-1)-forms of degree k-1; coclosed
/// top-degree forms have constant coefficient.
fn harmonic_coclosed(m: usize, k: u32, p: usize) -> usize {
    if p == 0 {
        return harmonic_polys(m, k);
    }
    if p == m {
        return usize::from(k == 0);
    }
    let total = binom(m, p) * harmonic_polys(m, k);
    if k == 0 {
        total
    } else {
        total - harmonic_coclosed(m, k - 1, p - 1)
    }
}

/// Simpson in the polar angle, trapezoid in the periodic azimuth.
fn sphere_quadrature(f: impl Fn(f64, f64, f64) -> f64) -> f64 {
    let (nt, np) = (2000usize, 256usize);
    let ht = PI / nt as f64;
    let hp = 2.0 * PI / np as f64;
    let mut total = 0.0;
    for i in 0..=nt {
        let t = i as f64 * ht;
        let w = if i == 0 || i == nt { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
        let ring: f64 = (0..np)
            .map(|j| {
                let ph = j as f64 * hp;
                f(t.sin() * ph.cos(), t.sin() * ph.sin(), t.cos())
            })
            .sum();
        total += w * ring * t.sin();
    }
    total * ht / 3.0 * hp
}

#[test]
fn sphere_moments_match_quadrature() {
    for e in [[0u32, 0, 0], [2, 0, 0], [2, 2, 0], [4, 2, 2], [6, 0, 2], [1, 2, 0]] {
        let exact = sphere_monomial_moment(&MultiIndex::new(e.to_vec())).to_f64();
        let num = sphere_quadrature(|x, y, z| x.powi(e[0] as i32) * y.powi(e[1] as i32) * z.powi(e[2] as i32));
        assert!((exact - num).abs() < 1e-10 * (1.0 + exact.abs()), "{e:?}: {exact} vs {num}");
    }
}

#[test]
fn circle_and_ball_moments_match_closed_forms() {
    // int_{S^1} x^2 = pi, int_{B^2} 1 = pi, int_{B^3} r^2 = 4 pi / 5.
    let s1 = sphere_monomial_moment(&MultiIndex::new(vec![2, 0])).to_f64();
    assert!((s1 - PI).abs() < 1e-14);
    assert!((integrate_over_ball(&Poly::one(2)).to_f64() - PI).abs() < 1e-14);
    let r2 = integrate_over_ball(&Poly::radius_squared(3)).to_f64();
    assert!((r2 - 4.0 * PI / 5.0).abs() < 1e-14);
}

#[test]
fn harmonic_dimensions_match_recursion() {
    for n in 1..=3usize {
        for k in 0..=3u32 {
            for p in 0..=n + 1 {
                let got = build_hkp(n, k, p).unwrap().dim();
                assert_eq!(got, harmonic_coclosed(n + 1, k, p), "n={n} k={k} p={p}");
            }
        }
    }
}

#[test]
fn split_is_direct_away_from_constants() {
    for n in 1..=3usize {
        for k in 0..=3u32 {
            for p in 0..=n + 1 {
                let row = dimension_row(n, k, p).unwrap();
                if (k, p) == (0, 0) {
                    assert_eq!((row.dim_h, row.dim_h_prime, row.dim_h_double_prime), (1, 1, 1));
                } else {
                    assert_eq!(row.dim_h, row.dim_h_prime + row.dim_h_double_prime, "{row:?}");
                }
            }
        }
    }
}

#[test]
fn first_eigenvalue_matches_closed_form() {
    for n in 1..=6usize {
        assert!(first_eigenvalue(n, 0).is_err());
        for p in 1..=n {
            let gap = rat((n as i64 + 1 - 2 * p as i64).max(0), n as i64 + 1);
            assert_eq!(first_eigenvalue(n, p).unwrap(), int(p as i64 + 1) - gap, "n={n} p={p}");
        }
    }
}

#[test]
fn published_values() {
    assert_eq!(first_eigenvalue(2, 1).unwrap(), rat(5, 3));
    assert_eq!(first_eigenvalue(2, 2).unwrap(), int(3));
    assert_eq!(first_eigenvalue(3, 1).unwrap(), rat(3, 2));
    assert_eq!(nu_exact(2, 1, 1).unwrap(), rat(5, 3));
    assert_eq!(nu_coexact(2, 1, 1).unwrap(), int(2));
    let levels = enumerate_spectrum(2, 1, 3).unwrap();
    let values: Vec<f64> = levels.iter().map(|l| to_f64(&l.eigenvalue)).collect();
    assert!(values.windows(2).all(|w| w[0] < w[1]));
    assert!((values[0] - 5.0 / 3.0).abs() < 1e-15);
}
