//! The Dirichlet-to-Neumann spectrum of the unit ball on p-forms.
//!
//! Eigenvalues come in families:
//! - `function` (p = 0): `k` with multiplicity `M_{k,0}`;
//! - `coexact`: `k + p` with multiplicity `M_{k,p}` for `1 <= p <= n-1`;
//! - `volume` (p = n, k = 1): `n + 1`, simple;
//! - `exact`: `(k+p-1)(n+2k+1)/(n+2k-1)` with multiplicity `M_{k,p-1}`.
//!
//! Each eigenvalue is certified exactly in ambient coordinates. For a boundary
//! form `xi` represented by an ambient form, the DtN action is
//! `T xi = -i_N d(xi_hat) = J^*(i_Z d xi_hat)` on the sphere, where `xi_hat` is
//! the tangential harmonic extension (`Delta xi_hat = 0`, `i_Z xi_hat = 0` on the
//! sphere, `J^* xi_hat` proportional to `xi`).
//!
//! For the exact family with `phi` in `H''_{k,p-1}` the extension is
//! `A dphi + B r^2 dphi + C rho ^ phi`; the constants are pinned by harmonicity
//! and the boundary condition (see [`derive_exact_family_constants`]).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::PForm;
use crate::harmonic::{build_h_double_prime, build_hkp, check_membership, multiplicity, SpaceLabel};
use crate::linalg::{assemble_columns, nullspace};
use crate::poly::{int, serialize_rational, Poly, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Function,
    Coexact,
    Volume,
    Exact,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Function => "function",
            Family::Coexact => "coexact",
            Family::Volume => "volume",
            Family::Exact => "exact",
        };
        f.write_str(s)
    }
}

fn out_of_range(what: &str, n: usize, k: u32, p: usize) -> Error {
    Error::OutOfRange(format!("{what} undefined for (n, k, p) = ({n}, {k}, {p})"))
}

/// Eigenvalue `k` of the function family.
pub fn nu_function(k: u32) -> Rational {
    int(k as i64)
}

/// `nu''_{k,p} = k + p`; covers the volume family at `(k, p) = (1, n)`.
pub fn nu_coexact(n: usize, k: u32, p: usize) -> Result<Rational> {
    let ok = k >= 1 && ((1..n).contains(&p) || (p == n && k == 1));
    if !ok {
        return Err(out_of_range("coexact eigenvalue", n, k, p));
    }
    Ok(int(k as i64 + p as i64))
}

/// `nu'_{k,p} = (k+p-1)(n+2k+1)/(n+2k-1)`.
pub fn nu_exact(n: usize, k: u32, p: usize) -> Result<Rational> {
    if k == 0 || p == 0 || p > n {
        return Err(out_of_range("exact eigenvalue", n, k, p));
    }
    let (n, k, p) = (n as i64, k as i64, p as i64);
    Ok(Rational::new((k + p - 1).into(), 1.into()) * Rational::new((n + 2 * k + 1).into(), (n + 2 * k - 1).into()))
}

/// Hodge-Laplace eigenvalue of the sphere attached to a family.
pub fn sphere_hodge_eigenvalue(n: usize, k: u32, p: usize, family: Family) -> Result<Rational> {
    let (ni, ki, pi) = (n as i64, k as i64, p as i64);
    match family {
        Family::Function if p == 0 => Ok(int(ki * (ni + ki - 1))),
        Family::Coexact if k >= 1 && (1..n).contains(&p) => Ok(int((ki + pi) * (ni + ki - pi - 1))),
        Family::Volume if k == 1 && p == n => Ok(Rational::zero()),
        Family::Exact if k >= 1 && (1..=n).contains(&p) => Ok(int((ki + pi - 1) * (ni + ki - pi))),
        _ => Err(out_of_range(&format!("{family} sphere eigenvalue"), n, k, p)),
    }
}

/// One family contribution to the spectrum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumEntry {
    pub family: Family,
    pub n: usize,
    pub k: u32,
    pub p: usize,
    #[serde(serialize_with = "serialize_rational")]
    pub eigenvalue: Rational,
    pub multiplicity: usize,
    #[serde(serialize_with = "serialize_rational")]
    pub sphere_hodge_eigenvalue: Rational,
}

/// A distinct eigenvalue with the entries that produce it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumLevel {
    #[serde(serialize_with = "serialize_rational")]
    pub eigenvalue: Rational,
    pub multiplicity: usize,
    pub entries: Vec<SpectrumEntry>,
}

fn entries_for(n: usize, p: usize, k: u32) -> Result<Vec<SpectrumEntry>> {
    let mut out = Vec::new();
    let mut push = |family, eigenvalue, mult_k: u32, mult_p: usize| -> Result<()> {
        let multiplicity = if family == Family::Volume { 1 } else { multiplicity(n, mult_k, mult_p)? };
        if multiplicity > 0 {
            out.push(SpectrumEntry {
                family,
                n,
                k,
                p,
                eigenvalue,
                multiplicity,
                sphere_hodge_eigenvalue: sphere_hodge_eigenvalue(n, k, p, family)?,
            });
        }
        Ok(())
    };
    if p == 0 {
        push(Family::Function, nu_function(k), k, 0)?;
        return Ok(out);
    }
    if k >= 1 && p < n {
        push(Family::Coexact, nu_coexact(n, k, p)?, k, p)?;
    }
    if k == 1 && p == n {
        push(Family::Volume, nu_coexact(n, k, p)?, k, p)?;
    }
    if k >= 1 {
        push(Family::Exact, nu_exact(n, k, p)?, k, p - 1)?;
    }
    Ok(out)
}

/// All eigenvalues with `k <= k_max` (from `k = 0` for functions), merged by
/// exact equality and sorted ascending.
pub fn enumerate_spectrum(n: usize, p: usize, k_max: u32) -> Result<Vec<SpectrumLevel>> {
    if n == 0 || p > n {
        return Err(Error::OutOfRange(format!("need 0 <= p <= n and n >= 1, got n={n}, p={p}")));
    }
    let k_min = if p == 0 { 0 } else { 1 };
    let per_k: Vec<Vec<SpectrumEntry>> =
        (k_min..=k_max).into_par_iter().map(|k| entries_for(n, p, k)).collect::<Result<_>>()?;
    let mut levels: BTreeMap<Rational, Vec<SpectrumEntry>> = BTreeMap::new();
    for e in per_k.into_iter().flatten() {
        levels.entry(e.eigenvalue.clone()).or_default().push(e);
    }
    Ok(levels
        .into_iter()
        .map(|(eigenvalue, entries)| SpectrumLevel {
            eigenvalue,
            multiplicity: entries.iter().map(|e| e.multiplicity).sum(),
            entries,
        })
        .collect())
}

/// First nonzero eigenvalue `nu_{1,p}` from the closed-form piecewise expression.
pub fn first_eigenvalue(n: usize, p: usize) -> Result<Rational> {
    if p == 0 || p > n {
        return Err(Error::OutOfRange(format!("first eigenvalue needs 1 <= p <= n, got n={n}, p={p}")));
    }
    if 2 * p <= n + 1 {
        Ok(Rational::new(((n + 3) * p).into(), (n + 1).into()))
    } else {
        Ok(int(p as i64 + 1))
    }
}

/// A DtN eigenform with its certified tangential harmonic extension.
#[derive(Clone, Debug)]
pub struct VerifiedEigenpair {
    pub family: Family,
    pub n: usize,
    pub k: u32,
    pub p: usize,
    pub eigenvalue: Rational,
    /// Ambient representative of the boundary eigenform.
    pub boundary_eigenform: PForm,
    pub extension: PForm,
    /// `J^* extension = proportionality * J^* boundary_eigenform`.
    pub proportionality: Rational,
}

impl VerifiedEigenpair {
    /// Re-runs every exact identity; errors name the first failure.
    pub fn verify(&self) -> Result<()> {
        let fail = |what: &str| Err(Error::IdentityFailure(format!("{} pair (n={}, k={}, p={}): {what}", self.family, self.n, self.k, self.p)));
        let ext = &self.extension;
        if ext.is_zero() {
            return fail("extension is zero");
        }
        if !ext.hodge_laplacian().is_zero() {
            return fail("extension is not harmonic");
        }
        if ext.degree() > 0 && !ext.interior_radial()?.vanishes_on_sphere() {
            return fail("i_N extension does not vanish on the sphere");
        }
        let scaled = self.boundary_eigenform.scale(&self.proportionality);
        if !ext.pullback_equal_on_sphere(&scaled)? {
            return fail("J^* extension is not proportional to the boundary form");
        }
        let dtn = ext.exterior_d()?.interior_radial()?;
        if !dtn.pullback_equal_on_sphere(&ext.scale(&self.eigenvalue))? {
            return fail("J^*(i_Z d extension) != eigenvalue * J^* extension");
        }
        Ok(())
    }
}

/// A harmonic homogeneous function of degree `k` is its own extension, with `T f = k f`.
pub fn build_function_pair(n: usize, k: u32, f: &PForm) -> Result<VerifiedEigenpair> {
    check_shape(n, 0, f)?;
    check_membership(SpaceLabel::H, k, f)?;
    let pair = VerifiedEigenpair {
        family: Family::Function,
        n,
        k,
        p: 0,
        eigenvalue: nu_function(k),
        boundary_eigenform: f.clone(),
        extension: f.clone(),
        proportionality: Rational::one(),
    };
    pair.verify()?;
    Ok(pair)
}

/// Coexact (or volume, at `p = n`) eigenform: `xi` in `H''_{k,p}` is its own extension.
pub fn build_coexact_pair(n: usize, k: u32, p: usize, xi: &PForm) -> Result<VerifiedEigenpair> {
    check_shape(n, p, xi)?;
    if p == 0 {
        return Err(out_of_range("coexact pair", n, k, p));
    }
    check_membership(SpaceLabel::HDoublePrime, k, xi)?;
    if xi.is_zero() {
        return Err(Error::Membership("zero form is not an eigenform".into()));
    }
    let family = if p == n { Family::Volume } else { Family::Coexact };
    let pair = VerifiedEigenpair {
        family,
        n,
        k,
        p,
        eigenvalue: int(k as i64 + p as i64),
        boundary_eigenform: xi.clone(),
        extension: xi.clone(),
        proportionality: Rational::one(),
    };
    pair.verify()?;
    Ok(pair)
}

/// The constants `(A, B, C)` of the exact-family extension, hard-coded.
pub fn exact_family_constants(n: usize, k: u32, p: usize) -> (Rational, Rational, Rational) {
    let (n, k, p) = (n as i64, k as i64, p as i64);
    (int(n + k - p), int(k + p - 1), int(-(k + p - 1) * (n + 2 * k - 1)))
}

/// The three ansatz pieces `dphi`, `r^2 dphi`, `rho ^ phi`.
fn exact_ansatz(phi: &PForm) -> Result<[PForm; 3]> {
    let dim = phi.dim();
    let dphi = phi.exterior_d()?;
    let r2dphi = dphi.mul_poly(&Poly::radius_squared(dim));
    let rho_phi = PForm::radial_one_form(dim).wedge(phi)?;
    Ok([dphi, r2dphi, rho_phi])
}

/// Solves the two linear conditions `Delta w = 0` and `i_Z w = 0 mod (r^2 - 1)`
/// for `w = A dphi + B r^2 dphi + C rho ^ phi`, normalized to `B = k + p - 1`.
///
/// Independent of [`exact_family_constants`]; used to cross-check it.
pub fn derive_exact_family_constants(k: u32, p: usize, phi: &PForm) -> Result<(Rational, Rational, Rational)> {
    let pieces = exact_ansatz(phi)?;
    let columns: Vec<Vec<_>> = pieces
        .iter()
        .map(|w| -> Result<Vec<_>> {
            let lap = w.hodge_laplacian().entries().into_iter().map(|(key, c)| ((0u8, key), c));
            let bdry = w.interior_radial()?.reduce_on_sphere().entries().into_iter().map(|(key, c)| ((1u8, key), c));
            Ok(lap.chain(bdry).collect())
        })
        .collect::<Result<_>>()?;
    let kernel = nullspace(&assemble_columns(&columns), 3);
    if kernel.len() != 1 {
        return Err(Error::IdentityFailure(format!("exact-family ansatz has a {}-dimensional solution space", kernel.len())));
    }
    let v: Vec<Rational> = kernel[0].iter().cloned().map(Rational::from_integer).collect();
    if v[1].is_zero() {
        return Err(Error::IdentityFailure("exact-family solution has no r^2 dphi term".into()));
    }
    let scale = int(k as i64 + p as i64 - 1) / &v[1];
    Ok((&v[0] * &scale, &v[1] * &scale, &v[2] * &scale))
}

/// Exact eigenform `dphi` for `phi` in `H''_{k,p-1}`, with eigenvalue `nu'_{k,p}`.
pub fn build_exact_pair(n: usize, k: u32, p: usize, phi: &PForm) -> Result<VerifiedEigenpair> {
    if p == 0 || p > n || k == 0 {
        return Err(out_of_range("exact pair", n, k, p));
    }
    check_shape(n, p - 1, phi)?;
    check_membership(SpaceLabel::HDoublePrime, k, phi)?;
    if phi.is_zero() {
        return Err(Error::Membership("zero form is not an eigenform".into()));
    }
    let (a, b, c) = exact_family_constants(n, k, p);
    let [dphi, r2dphi, rho_phi] = exact_ansatz(phi)?;
    let extension = &(&dphi.scale(&a) + &r2dphi.scale(&b)) + &rho_phi.scale(&c);
    let pair = VerifiedEigenpair {
        family: Family::Exact,
        n,
        k,
        p,
        eigenvalue: nu_exact(n, k, p)?,
        boundary_eigenform: dphi,
        extension,
        proportionality: &a + &b,
    };
    pair.verify()?;
    Ok(pair)
}

fn check_shape(n: usize, p: usize, w: &PForm) -> Result<()> {
    if w.dim() != n + 1 {
        return Err(Error::DimensionMismatch(n + 1, w.dim()));
    }
    if w.degree() != p {
        return Err(Error::DegreeMismatch(p, w.degree()));
    }
    Ok(())
}

/// Laurent polynomial in one variable `r` with exact coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly(BTreeMap<i64, Rational>);

impl LaurentPoly {
    pub fn monomial(c: Rational, e: i64) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(e, c);
        }
        LaurentPoly(m)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut m = self.0.clone();
        for (e, c) in &other.0 {
            let v = m.entry(*e).or_insert_with(Rational::zero);
            *v += c;
            if v.is_zero() {
                m.remove(e);
            }
        }
        LaurentPoly(m)
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.scale(&int(-1)))
    }

    pub fn scale(&self, c: &Rational) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::default();
        }
        LaurentPoly(self.0.iter().map(|(e, v)| (*e, v * c)).collect())
    }

    /// Multiply by `r^s`.
    pub fn shift(&self, s: i64) -> LaurentPoly {
        LaurentPoly(self.0.iter().map(|(e, v)| (e + s, v.clone())).collect())
    }

    pub fn derivative(&self) -> LaurentPoly {
        LaurentPoly(
            self.0
                .iter()
                .filter(|(e, _)| **e != 0)
                .map(|(e, v)| (e - 1, v * int(*e)))
                .collect(),
        )
    }
}

/// Residuals of the two radial harmonicity equations for `Q dphi + P dr ^ phi`:
/// `mu (r P - 2 Q) - r^3 (P' + (n-2p+2) P / r)'` and
/// `mu Q - 2 r P - r^2 (Q'' + (n-2p) Q' / r)`, with `mu = mu''_{k,p-1}`.
pub fn harm2_residuals(n: usize, k: u32, p: usize, big_p: &LaurentPoly, big_q: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
    let (ni, ki, pi) = (n as i64, k as i64, p as i64);
    let mu = int((ki + pi - 1) * (ni + ki - pi));
    let m = ni - 2 * pi;
    let inner = big_p.derivative().add(&big_p.shift(-1).scale(&int(m + 2)));
    let lhs1 = big_p.shift(1).sub(&big_q.scale(&int(2))).scale(&mu);
    let eq1 = lhs1.sub(&inner.derivative().shift(3));
    let q1 = big_q.derivative();
    let rhs2 = q1.derivative().add(&q1.shift(-1).scale(&int(m))).shift(2);
    let eq2 = big_q.scale(&mu).sub(&big_p.shift(1).scale(&int(2))).sub(&rhs2);
    (eq1, eq2)
}

/// True iff `(P, Q)` satisfy both radial equations identically in `r`.
pub fn verify_harm2_with(n: usize, k: u32, p: usize, big_p: &LaurentPoly, big_q: &LaurentPoly) -> bool {
    let (a, b) = harm2_residuals(n, k, p, big_p, big_q);
    a.is_zero() && b.is_zero()
}

/// The profiles `P = -nu''_{k,p-1} r^{k+p}`, `Q = alpha_{k,p} r^{k+p+1}` with
/// `alpha = (k+p-1)/(n+k-p)`, at a chosen exponent (normally `k + p`).
pub fn harm2_profiles(n: usize, k: u32, p: usize, exponent: i64) -> (LaurentPoly, LaurentPoly) {
    let (ni, ki, pi) = (n as i64, k as i64, p as i64);
    let nu = int(ki + pi - 1);
    let alpha = Rational::new((ki + pi - 1).into(), (ni + ki - pi).into());
    (LaurentPoly::monomial(-nu, exponent), LaurentPoly::monomial(alpha, exponent + 1))
}

pub fn verify_harm2_profiles(n: usize, k: u32, p: usize) -> Result<bool> {
    if k == 0 || p == 0 || p > n {
        return Err(out_of_range("radial profile check", n, k, p));
    }
    let (bp, bq) = harm2_profiles(n, k, p, k as i64 + p as i64);
    Ok(verify_harm2_with(n, k, p, &bp, &bq))
}

/// One row of the ball verification report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationRow {
    pub family: Family,
    pub n: usize,
    pub k: u32,
    pub p: usize,
    #[serde(serialize_with = "serialize_rational")]
    pub eigenvalue: Rational,
    pub multiplicity: usize,
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

fn verify_all<F>(family: Family, n: usize, k: u32, p: usize, eigenvalue: Rational, basis: &[PForm], build: F) -> VerificationRow
where
    F: Fn(&PForm) -> Result<VerifiedEigenpair> + Sync,
{
    let failure = basis.par_iter().map(|w| build(w).err()).find_map_first(|e| e);
    VerificationRow {
        family,
        n,
        k,
        p,
        eigenvalue,
        multiplicity: basis.len(),
        verified: failure.is_none(),
        diagnostic: failure.map(|e| e.to_string()),
    }
}

/// Verifies every family at form degree `p` and homogeneity `k` on every basis element.
/// Rows with empty eigenspaces are omitted.
pub fn verify_level(n: usize, k: u32, p: usize) -> Result<Vec<VerificationRow>> {
    let mut rows = Vec::new();
    if p == 0 {
        let h = build_hkp(n, k, 0)?;
        rows.push(verify_all(Family::Function, n, k, 0, nu_function(k), h.basis(), |f| build_function_pair(n, k, f)));
    } else {
        if k >= 1 {
            let h2 = build_h_double_prime(n, k, p)?;
            if h2.dim() > 0 {
                let family = if p == n { Family::Volume } else { Family::Coexact };
                rows.push(verify_all(family, n, k, p, int(k as i64 + p as i64), h2.basis(), |xi| build_coexact_pair(n, k, p, xi)));
            }
            let phis = build_h_double_prime(n, k, p - 1)?;
            rows.push(verify_all(Family::Exact, n, k, p, nu_exact(n, k, p)?, phis.basis(), |phi| build_exact_pair(n, k, p, phi)));
        }
    }
    rows.retain(|r| r.multiplicity > 0);
    Ok(rows)
}

/// Verification of every level with `0 <= p <= n`, `k <= k_max`.
pub fn verify_ball(n: usize, k_max: u32) -> Result<Vec<VerificationRow>> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be at least 1".into()));
    }
    let jobs: Vec<(usize, u32)> = (0..=n).flat_map(|p| (0..=k_max).map(move |k| (p, k))).collect();
    let rows: Vec<Vec<VerificationRow>> = jobs.into_par_iter().map(|(p, k)| verify_level(n, k, p)).collect::<Result<_>>()?;
    Ok(rows.into_iter().flatten().collect())
}

pub fn verification_csv(rows: &[VerificationRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["family", "n", "k", "p", "eigenvalue", "multiplicity", "verified"])
        .map_err(|e| Error::InvalidInput(e.to_string()))?;
    for r in rows {
        w.write_record([
            r.family.to_string(),
            r.n.to_string(),
            r.k.to_string(),
            r.p.to_string(),
            r.eigenvalue.to_string(),
            r.multiplicity.to_string(),
            r.verified.to_string(),
        ])
        .map_err(|e| Error::InvalidInput(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::InvalidInput(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::InvalidInput(e.to_string()))
}
