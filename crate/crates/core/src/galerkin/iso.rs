//! Check of the isoperimetric upper bound
//! `nu_{1,p} <= (p+1)/(n+1) * |boundary| / |domain|` against Galerkin values.
//!
//! A Galerkin value is an upper bound for `nu_{1,p}`, so a value below the
//! right-hand side confirms the inequality; a value above it says nothing.

use serde::Serialize;

use super::{minimizer_degree, smallest_rayleigh, surface, Constraint, Domain, GalerkinProblem};
use crate::ball::first_eigenvalue;
use crate::error::{Error, Result};
use crate::moments::{ball_monomial_moment, sphere_monomial_moment};
use crate::poly::{int, serialize_rational, to_f64, MultiIndex, Rational};

/// Relative slack allowed when comparing a floating Galerkin value to the bound.
pub const ISO_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Confirmed,
    Inconclusive,
}

fn opt_rational<S: serde::Serializer>(q: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match q {
        Some(q) => serialize_rational(q, s),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IsoReport {
    pub domain: Domain,
    pub n: usize,
    pub p: usize,
    #[serde(rename = "D")]
    pub degree: u32,
    pub galerkin_value: f64,
    #[serde(serialize_with = "opt_rational")]
    pub galerkin_exact: Option<Rational>,
    /// Closed-form `nu_{1,p}` (ball only).
    #[serde(serialize_with = "opt_rational")]
    pub closed_form: Option<Rational>,
    pub iso_rhs: f64,
    #[serde(serialize_with = "opt_rational")]
    pub iso_rhs_exact: Option<Rational>,
    pub isoperimetric_ratio: f64,
    /// `iso_rhs - galerkin_value`; nonnegative when confirmed.
    pub margin: f64,
    /// `closed_form - iso_rhs_exact` on the ball; zero exactly in the equality range.
    #[serde(serialize_with = "opt_rational")]
    pub equality_margin: Option<Rational>,
    pub verdict: Verdict,
}

/// `|boundary| / |domain|`, exact on the ball.
pub fn isoperimetric_ratio(domain: &Domain, dim: usize) -> Result<(f64, Option<Rational>)> {
    let zero = MultiIndex::zero(dim);
    let (sphere, ball) = (sphere_monomial_moment(&zero), ball_monomial_moment(&zero));
    match domain {
        Domain::Ball => {
            let q = sphere.ratio(&ball)?;
            Ok((to_f64(&q), Some(q)))
        }
        Domain::Ellipsoid(a) => {
            let axes = domain.axes_f64(dim);
            let area = surface::ellipsoid_surface_moments(&axes, 0, 1e-12)?[&zero];
            let volume = ball.to_f64() * a.iter().map(to_f64).product::<f64>();
            Ok((area / volume, None))
        }
    }
}

/// Compare the Galerkin value at degree `degree` (default: the ball
/// minimizer degree) with the isoperimetric right-hand side.
pub fn iso_bound_check(domain: &Domain, n: usize, p: usize, degree: Option<u32>) -> Result<IsoReport> {
    if p == 0 || p > n {
        return Err(Error::OutOfRange(format!("form degree {p} must lie in 1..={n}")));
    }
    let degree = degree.unwrap_or_else(|| minimizer_degree(n, p));
    let res = smallest_rayleigh(&GalerkinProblem::new(domain.clone(), n, p, degree, Constraint::Tangential)?)?;
    let (ratio, ratio_exact) = isoperimetric_ratio(domain, n + 1)?;
    let factor = Rational::new((p as i64 + 1).into(), (n as i64 + 1).into());
    let iso_rhs_exact = ratio_exact.map(|q| q * &factor);
    let iso_rhs = ratio * to_f64(&factor);
    let closed_form = if domain.is_ball() { Some(first_eigenvalue(n, p)?) } else { None };
    let equality_margin = closed_form.as_ref().zip(iso_rhs_exact.as_ref()).map(|(c, r)| c - r);
    let verdict = if res.value <= iso_rhs * (1.0 + ISO_TOLERANCE) { Verdict::Confirmed } else { Verdict::Inconclusive };
    Ok(IsoReport {
        domain: domain.clone(),
        n,
        p,
        degree,
        galerkin_value: res.value,
        galerkin_exact: res.exact_value().cloned(),
        closed_form,
        iso_rhs,
        iso_rhs_exact,
        isoperimetric_ratio: ratio,
        margin: iso_rhs - res.value,
        equality_margin,
        verdict,
    })
}

/// Exact gap `(p+1) - nu_{1,p}` on the unit ball, i.e. `(n+1-2p)/(n+1)` below
/// the equality range and zero inside it.
pub fn ball_strict_gap(n: usize, p: usize) -> Result<Rational> {
    Ok(int(p as i64 + 1) - first_eigenvalue(n, p)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn ball_equality_and_strict_cases() {
        let eq = iso_bound_check(&Domain::Ball, 2, 2, None).unwrap();
        assert_eq!(eq.verdict, Verdict::Confirmed);
        assert_eq!(eq.iso_rhs_exact, Some(int(3)));
        assert_eq!(eq.equality_margin, Some(int(0)));

        let strict = iso_bound_check(&Domain::Ball, 2, 1, None).unwrap();
        assert_eq!(strict.verdict, Verdict::Confirmed);
        assert_eq!(strict.galerkin_exact, Some(rat(5, 3)));
        assert_eq!(strict.equality_margin, Some(rat(-1, 3)));
        assert_eq!(ball_strict_gap(2, 1).unwrap(), rat(1, 3));
    }

    #[test]
    fn rejects_degree_outside_range() {
        assert!(iso_bound_check(&Domain::Ball, 2, 0, None).is_err());
        assert!(iso_bound_check(&Domain::Ball, 2, 3, None).is_err());
    }

    #[test]
    fn ellipsoid_top_degree_is_confirmed() {
        let d = Domain::Ellipsoid(vec![int(2), int(1), int(1)]);
        let r = iso_bound_check(&d, 2, 2, Some(2)).unwrap();
        assert_eq!(r.verdict, Verdict::Confirmed, "{r:?}");
        assert!(r.closed_form.is_none());
    }
}
