//! Rayleigh quotients of polynomial vector fields on the unit ball of `R^3`:
//! `int (div X)^2 + |curl X|^2` over `int_{S^2} |X|^2`.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::PForm;
use crate::moments::{integrate_over_ball, integrate_over_sphere};
use crate::poly::{Poly, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryType {
    /// `X` tangent to the sphere.
    Tangent,
    /// `X` normal to the sphere.
    Normal,
}

impl std::str::FromStr for BoundaryType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tangent" => Ok(BoundaryType::Tangent),
            "normal" => Ok(BoundaryType::Normal),
            _ => Err(Error::Parse(format!("unknown boundary type '{s}'"))),
        }
    }
}

/// The dual 1-form `sum X_i dx_i`.
pub fn dual_one_form(field: &[Poly]) -> Result<PForm> {
    if field.len() != 3 {
        return Err(Error::DimensionMismatch(field.len(), 3));
    }
    if let Some(f) = field.iter().find(|f| f.dim() != 3) {
        return Err(Error::DimensionMismatch(f.dim(), 3));
    }
    PForm::from_components(3, 1, field.iter().enumerate().map(|(i, f)| (vec![i], f.clone())))
}

pub fn divergence(field: &[Poly]) -> Result<Poly> {
    Ok(-&dual_one_form(field)?.codifferential()?.component(&[]))
}

/// `curl X` as the vector field dual to `*d` of the dual 1-form.
pub fn curl(field: &[Poly]) -> Result<Vec<Poly>> {
    let c = dual_one_form(field)?.exterior_d()?.hodge_star();
    Ok((0..3).map(|i| c.component(&[i])).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VectorFieldQuotient {
    #[serde(serialize_with = "crate::poly::serialize_rational")]
    pub div_energy: Rational,
    #[serde(serialize_with = "crate::poly::serialize_rational")]
    pub curl_energy: Rational,
    #[serde(serialize_with = "crate::poly::serialize_rational")]
    pub boundary_norm: Rational,
    #[serde(serialize_with = "crate::poly::serialize_rational")]
    pub quotient: Rational,
}

/// Exact quotient after checking the boundary condition. All integrals carry
/// the same power of pi, which cancels.
pub fn vector_field_rayleigh_3d(field: &[Poly], boundary: BoundaryType) -> Result<VectorFieldQuotient> {
    let w = dual_one_form(field)?;
    let ok = match boundary {
        BoundaryType::Tangent => w.interior_radial()?.vanishes_on_sphere(),
        BoundaryType::Normal => w.pullback_vanishes_on_sphere(),
    };
    if !ok {
        return Err(Error::Membership(format!("field is not {boundary:?} on the unit sphere").to_lowercase()));
    }
    let div = divergence(field)?;
    let rot = curl(field)?;
    let div_energy = integrate_over_ball(&(&div * &div)).rational_part;
    let curl_sq = rot.iter().fold(Poly::zero(3), |acc, c| &acc + &(c * c));
    let curl_energy = integrate_over_ball(&curl_sq).rational_part;
    let norm_sq = field.iter().fold(Poly::zero(3), |acc, c| &acc + &(c * c));
    let boundary_norm = integrate_over_sphere(&norm_sq).rational_part;
    if boundary_norm.is_zero() {
        return Err(Error::InvalidInput("field vanishes on the boundary".into()));
    }
    let quotient = (&div_energy + &curl_energy) / &boundary_norm;
    Ok(VectorFieldQuotient { div_energy, curl_energy, boundary_norm, quotient })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};

    fn field(s: [&str; 3]) -> Vec<Poly> {
        s.iter().map(|c| Poly::parse(c, 3).unwrap()).collect()
    }

    #[test]
    fn known_quotients() {
        let x = field(["2 - 2*x1^2 + x2^2 + x3^2", "-3*x1*x2", "-3*x1*x3"]);
        assert_eq!(vector_field_rayleigh_3d(&x, BoundaryType::Tangent).unwrap().quotient, rat(5, 3));
        let y = field(["x1", "x2", "x3"]);
        let q = vector_field_rayleigh_3d(&y, BoundaryType::Normal).unwrap();
        assert_eq!(q.quotient, int(3));
        assert!(q.curl_energy.is_zero());
        let rot = field(["x2", "-x1", "0"]);
        assert_eq!(vector_field_rayleigh_3d(&rot, BoundaryType::Tangent).unwrap().quotient, int(2));
    }

    #[test]
    fn constraint_and_degenerate_errors() {
        let y = field(["x1", "x2", "x3"]);
        assert!(matches!(vector_field_rayleigh_3d(&y, BoundaryType::Tangent), Err(Error::Membership(_))));
        let vanishing = field(["x1^2 + x2^2 + x3^2 - 1", "0", "0"]);
        assert!(matches!(vector_field_rayleigh_3d(&vanishing, BoundaryType::Tangent), Err(Error::InvalidInput(_))));
        assert!(vector_field_rayleigh_3d(&field(["1", "0", "0"])[..2], BoundaryType::Tangent).is_err());
    }

    #[test]
    fn curl_and_divergence_of_rotation() {
        let rot = field(["x2", "-x1", "0"]);
        assert!(divergence(&rot).unwrap().is_zero());
        let c = curl(&rot).unwrap();
        assert_eq!(c[2], Poly::constant(3, int(-2)));
    }
}
