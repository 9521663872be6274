//! Monomial moments over the boundary of an axis-aligned ellipsoid.
//!
//! Parametrize the boundary by `x = a * u` with `u` on the unit sphere; the
//! area element is `prod(a) |u / a| dS(u)`. Sphere integrals use tensor
//! Gauss-Legendre rules in hyperspherical angles, refined until two successive
//! levels agree.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;

use crate::error::{Error, Result};
use crate::poly::MultiIndex;

fn rule(m: usize, a: f64, b: f64) -> Vec<(f64, f64)> {
    let gl = GaussLegendre::new(NonZeroUsize::new(m).expect("nonzero"));
    let (half, mid) = (0.5 * (b - a), 0.5 * (a + b));
    gl.as_node_weight_pairs().iter().map(|(x, w)| (mid + half * x, half * w)).collect()
}

/// Exponents with all entries even and total degree at most `max_degree`.
fn even_exponents(dim: usize, max_degree: u32) -> Vec<MultiIndex> {
    (0..=max_degree)
        .step_by(2)
        .flat_map(|k| MultiIndex::all_of_degree(dim, k))
        .filter(|a| a.exponents().iter().all(|e| e % 2 == 0))
        .collect()
}

fn moments_at_level(axes: &[f64], exps: &[MultiIndex], m: usize) -> Vec<f64> {
    let dim = axes.len();
    let polar = rule(m, 0.0, PI);
    let azimuth = rule(2 * m, 0.0, 2.0 * PI);
    let scale: f64 = axes.iter().product();
    let max_e = exps.iter().flat_map(|a| a.exponents().iter().copied()).max().unwrap_or(0) as usize;
    let mut out = vec![0.0; exps.len()];
    let n_polar = dim.saturating_sub(2);
    let mut idx = vec![0usize; n_polar];
    let mut u = vec![0.0; dim];
    let mut powers = vec![vec![1.0; max_e + 1]; dim];
    loop {
        // polar part of the point and Jacobian
        let mut sin_prod = 1.0;
        let mut jac = 1.0;
        let mut weight = 1.0;
        for (j, &i) in idx.iter().enumerate() {
            let (phi, w) = polar[i];
            u[j] = sin_prod * phi.cos();
            jac *= phi.sin().powi((dim - 2 - j) as i32);
            weight *= w;
            sin_prod *= phi.sin();
        }
        for &(psi, w) in &azimuth {
            u[dim - 2] = sin_prod * psi.cos();
            u[dim - 1] = sin_prod * psi.sin();
            let stretch: f64 = u.iter().zip(axes).map(|(x, a)| (x / a) * (x / a)).sum::<f64>().sqrt();
            let total = weight * w * jac * scale * stretch;
            for i in 0..dim {
                let x = axes[i] * u[i];
                for e in 1..=max_e {
                    powers[i][e] = powers[i][e - 1] * x;
                }
            }
            for (slot, alpha) in out.iter_mut().zip(exps) {
                let mut v = total;
                for (i, &e) in alpha.exponents().iter().enumerate() {
                    v *= powers[i][e as usize];
                }
                *slot += v;
            }
        }
        // advance the polar multi-index
        let mut j = 0;
        loop {
            if j == n_polar {
                return out;
            }
            idx[j] += 1;
            if idx[j] < m {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
    }
}

/// `int_{boundary} x^gamma dS` for every even `gamma` with `|gamma| <= max_degree`
/// (odd exponents integrate to zero and are omitted).
pub fn ellipsoid_surface_moments(axes: &[f64], max_degree: u32, tol: f64) -> Result<HashMap<MultiIndex, f64>> {
    if axes.len() < 2 || axes.iter().any(|a| !(a.is_finite() && *a > 0.0)) {
        return Err(Error::InvalidInput("ellipsoid needs at least two positive semi-axes".into()));
    }
    let exps = even_exponents(axes.len(), max_degree);
    let mut m = 16;
    let mut prev = moments_at_level(axes, &exps, m);
    while m <= 256 {
        m = m * 3 / 2;
        let next = moments_at_level(axes, &exps, m);
        let agree = prev.iter().zip(&next).all(|(a, b)| (a - b).abs() <= tol * b.abs().max(1e-300));
        if agree {
            return Ok(exps.into_iter().zip(next).collect());
        }
        prev = next;
    }
    Err(Error::Integration(format!("surface quadrature did not reach relative tolerance {tol:e}")))
}
