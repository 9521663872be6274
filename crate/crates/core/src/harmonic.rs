//! Harmonic polynomial form spaces on `R^{n+1}` built by exact linear algebra.
//!
//! Every operator used here (`Delta`, `delta`, `d`, `i_Z`) commutes with the
//! coordinate reflections, so each kernel is computed separately on the
//! reflection-parity classes of monomial forms. That keeps the dense
//! eliminations small and the resulting bases deterministic.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{monomial_forms, PForm};
use crate::linalg::{assemble_columns, nullspace, rank};
use crate::poly::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SpaceLabel {
    P,
    H,
    HPrime,
    HDoublePrime,
}

impl fmt::Display for SpaceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SpaceLabel::P => "P",
            SpaceLabel::H => "H",
            SpaceLabel::HPrime => "H'",
            SpaceLabel::HDoublePrime => "H''",
        };
        f.write_str(s)
    }
}

/// A finite basis of homogeneous polynomial p-forms on `R^{n+1}`.
#[derive(Clone, Debug)]
pub struct FormSubspace {
    n: usize,
    k: u32,
    p: usize,
    label: SpaceLabel,
    basis: Vec<PForm>,
}

impl FormSubspace {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ambient_dim(&self) -> usize {
        self.n + 1
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn label(&self) -> SpaceLabel {
        self.label
    }

    pub fn basis(&self) -> &[PForm] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Exact rank test: is `w` in the span of the basis?
    pub fn contains(&self, w: &PForm) -> bool {
        if w.dim() != self.ambient_dim() || w.degree() != self.p {
            return false;
        }
        if w.is_zero() {
            return true;
        }
        let mut cols: Vec<_> = self.basis.iter().map(PForm::entries).collect();
        let before = rank(&assemble_columns(&cols), cols.len());
        cols.push(w.entries());
        rank(&assemble_columns(&cols), cols.len()) == before
    }

    /// Re-check every defining condition of the label on every basis element,
    /// plus linear independence.
    pub fn verify(&self) -> Result<()> {
        for w in &self.basis {
            check_membership(self.label, self.k, w)?;
        }
        let cols: Vec<_> = self.basis.iter().map(PForm::entries).collect();
        if rank(&assemble_columns(&cols), cols.len()) != self.basis.len() {
            return Err(Error::Membership(format!("{} basis is linearly dependent", self.label)));
        }
        Ok(())
    }
}

/// Checks the conditions defining `label` (homogeneous of degree `k`) on `w`.
pub fn check_membership(label: SpaceLabel, k: u32, w: &PForm) -> Result<()> {
    let fail = |what: &str| Err(Error::Membership(format!("{label}: {what} fails for {w}")));
    if !w.is_homogeneous_of(k) && !w.is_zero() {
        return fail("homogeneity");
    }
    if label == SpaceLabel::P {
        return Ok(());
    }
    if !w.hodge_laplacian().is_zero() {
        return fail("Delta w = 0");
    }
    if w.degree() > 0 && !w.codifferential()?.is_zero() {
        return fail("delta w = 0");
    }
    match label {
        SpaceLabel::HPrime if w.degree() < w.dim() && !w.exterior_d()?.is_zero() => fail("d w = 0"),
        SpaceLabel::HDoublePrime if w.degree() > 0 && !w.interior_radial()?.is_zero() => fail("i_Z w = 0"),
        _ => Ok(()),
    }
}

fn check_range(n: usize, p: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be at least 1".into()));
    }
    if p > n + 1 {
        return Err(Error::OutOfRange(format!("form degree p={p} exceeds n+1={}", n + 1)));
    }
    Ok(())
}

/// Groups forms by reflection parity; every input must be parity-pure.
fn parity_blocks(forms: Vec<PForm>) -> BTreeMap<u64, Vec<PForm>> {
    let mut blocks: BTreeMap<u64, Vec<PForm>> = BTreeMap::new();
    for w in forms {
        let key = w.parity().expect("basis forms are parity-pure");
        blocks.entry(key).or_default().push(w);
    }
    blocks
}

type LinearMap = fn(&PForm) -> Option<PForm>;

/// Kernel of the joint map `w -> (maps[0](w), maps[1](w), ...)` restricted to
/// `span(basis)`. A map returning `None` is treated as identically zero.
fn kernel_within(basis: &[PForm], maps: &[LinearMap]) -> Vec<PForm> {
    let Some(first) = basis.first() else {
        return Vec::new();
    };
    let (dim, degree) = (first.dim(), first.degree());
    let columns: Vec<Vec<_>> = basis
        .iter()
        .map(|w| {
            maps.iter()
                .enumerate()
                .filter_map(|(m, f)| f(w).map(|img| (m, img)))
                .flat_map(|(m, img)| img.entries().into_iter().map(move |(key, c)| ((m, key), c)))
                .collect()
        })
        .collect();
    let rows = assemble_columns(&columns);
    nullspace(&rows, basis.len())
        .into_iter()
        .map(|v| {
            let coeffs: Vec<Rational> = v.into_iter().map(|c: BigInt| Rational::from_integer(c)).collect();
            PForm::linear_combination(dim, degree, basis, &coeffs)
        })
        .collect()
}

/// Blockwise kernel within a parity-pure basis.
fn blockwise_kernel(basis: Vec<PForm>, maps: &[LinearMap]) -> Vec<PForm> {
    parity_blocks(basis)
        .into_values()
        .flat_map(|block| kernel_within(&block, maps))
        .collect()
}

fn laplacian_map(w: &PForm) -> Option<PForm> {
    Some(w.hodge_laplacian())
}

fn codifferential_map(w: &PForm) -> Option<PForm> {
    w.codifferential().ok()
}

fn d_map(w: &PForm) -> Option<PForm> {
    w.exterior_d().ok()
}

fn interior_radial_map(w: &PForm) -> Option<PForm> {
    w.interior_radial().ok()
}

/// All monomial p-forms of homogeneous degree k on `R^{n+1}`.
pub fn build_pkp(n: usize, k: u32, p: usize) -> Result<FormSubspace> {
    check_range(n, p)?;
    Ok(FormSubspace { n, k, p, label: SpaceLabel::P, basis: monomial_forms(n + 1, k, p) })
}

/// `H_{k,p}`: harmonic and coclosed homogeneous p-forms.
pub fn build_hkp(n: usize, k: u32, p: usize) -> Result<FormSubspace> {
    let pk = build_pkp(n, k, p)?;
    let basis = blockwise_kernel(pk.basis, &[laplacian_map, codifferential_map]);
    Ok(FormSubspace { n, k, p, label: SpaceLabel::H, basis })
}

/// Splits `H_{k,p}` into its closed part `H'` and radially horizontal part `H''`.
///
/// On 0-forms `i_Z` is taken to be zero, so `H''_{k,0} = H_{k,0}`; the sum is
/// direct except at `(k, p) = (0, 0)` where both parts are the constants.
pub fn split_h(space: &FormSubspace) -> Result<(FormSubspace, FormSubspace)> {
    if space.label != SpaceLabel::H {
        return Err(Error::WrongLabel { expected: SpaceLabel::H.to_string(), found: space.label.to_string() });
    }
    let make = |label, basis| FormSubspace { n: space.n, k: space.k, p: space.p, label, basis };
    let closed = blockwise_kernel(space.basis.clone(), &[d_map]);
    let horizontal = blockwise_kernel(space.basis.clone(), &[interior_radial_map]);
    Ok((make(SpaceLabel::HPrime, closed), make(SpaceLabel::HDoublePrime, horizontal)))
}

pub fn build_h_prime(n: usize, k: u32, p: usize) -> Result<FormSubspace> {
    Ok(split_h(&build_hkp(n, k, p)?)?.0)
}

pub fn build_h_double_prime(n: usize, k: u32, p: usize) -> Result<FormSubspace> {
    Ok(split_h(&build_hkp(n, k, p)?)?.1)
}

/// `M_{k,p} = dim H''_{k,p}`.
pub fn multiplicity(n: usize, k: u32, p: usize) -> Result<usize> {
    Ok(build_h_double_prime(n, k, p)?.dim())
}

/// Checks that `d` maps `H''_{k,p}` isomorphically onto `H'_{k-1,p+1}`.
pub fn check_d_isomorphism(n: usize, k: u32, p: usize) -> Result<bool> {
    if k == 0 {
        return Err(Error::OutOfRange("d-isomorphism needs k >= 1".into()));
    }
    if p > n {
        return Err(Error::OutOfRange(format!("d is undefined on {p}-forms in R^{}", n + 1)));
    }
    let source = build_h_double_prime(n, k, p)?;
    let target = build_h_prime(n, k - 1, p + 1)?;
    let images: Vec<PForm> = source.basis.iter().map(PForm::exterior_d).collect::<Result<_>>()?;
    for w in &images {
        if check_membership(SpaceLabel::HPrime, k - 1, w).is_err() {
            return Ok(false);
        }
    }
    let cols: Vec<_> = images.iter().map(PForm::entries).collect();
    let r = rank(&assemble_columns(&cols), cols.len());
    Ok(r == source.dim() && r == target.dim())
}

/// One row of the exported dimension table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionRow {
    pub n: usize,
    pub k: u32,
    pub p: usize,
    pub dim_p: usize,
    pub dim_h: usize,
    pub dim_h_prime: usize,
    pub dim_h_double_prime: usize,
}

pub fn dimension_row(n: usize, k: u32, p: usize) -> Result<DimensionRow> {
    let h = build_hkp(n, k, p)?;
    let (hp, hpp) = split_h(&h)?;
    Ok(DimensionRow {
        n,
        k,
        p,
        dim_p: build_pkp(n, k, p)?.dim(),
        dim_h: h.dim(),
        dim_h_prime: hp.dim(),
        dim_h_double_prime: hpp.dim(),
    })
}

/// Dimensions for every `p <= n+1` and `k <= k_max`, in `(k, p)` order.
pub fn dimension_table(n: usize, k_max: u32) -> Result<Vec<DimensionRow>> {
    let jobs: Vec<(u32, usize)> = (0..=k_max).flat_map(|k| (0..=n + 1).map(move |p| (k, p))).collect();
    jobs.into_par_iter().map(|(k, p)| dimension_row(n, k, p)).collect()
}

pub fn dimension_table_json(n: usize, k_max: u32) -> Result<String> {
    let rows = dimension_table(n, k_max)?;
    serde_json::to_string_pretty(&rows).map_err(|e| Error::InvalidInput(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    fn binom(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn pkp_dimensions() {
        assert_eq!(build_pkp(2, 0, 1).unwrap().dim(), 3);
        assert_eq!(build_pkp(2, 1, 1).unwrap().dim(), 9);
        assert_eq!(build_pkp(2, 2, 0).unwrap().dim(), 6);
        assert!(build_pkp(2, 1, 4).is_err());
    }

    #[test]
    fn hkp_dimensions() {
        assert_eq!(build_hkp(2, 1, 0).unwrap().dim(), 3);
        assert_eq!(build_hkp(2, 2, 0).unwrap().dim(), 5);
        assert_eq!(build_hkp(2, 1, 1).unwrap().dim(), 8);
    }

    #[test]
    fn split_examples() {
        let (hp, hpp) = split_h(&build_hkp(2, 0, 1).unwrap()).unwrap();
        assert_eq!((hp.dim(), hpp.dim()), (3, 0));
        let (hp, hpp) = split_h(&build_hkp(2, 1, 1).unwrap()).unwrap();
        assert_eq!((hp.dim(), hpp.dim()), (5, 3));
        let rot = PForm::parse("(x1) * dx2 + (-x2) * dx1", 3, 1).unwrap();
        assert!(hpp.contains(&rot));
        hp.verify().unwrap();
        hpp.verify().unwrap();
        assert!(matches!(split_h(&hp), Err(Error::WrongLabel { .. })));
    }

    #[test]
    fn function_multiplicities_match_spherical_harmonics() {
        for n in 1..=3 {
            for k in 0..=4u32 {
                let ku = k as usize;
                let expected = binom(n + ku, ku) - if ku >= 2 { binom(n + ku - 2, ku - 2) } else { 0 };
                assert_eq!(multiplicity(n, k, 0).unwrap(), expected, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn d_isomorphism_examples() {
        assert!(check_d_isomorphism(2, 1, 1).unwrap());
        assert_eq!(build_h_prime(2, 0, 2).unwrap().dim(), 3);
        assert!(check_d_isomorphism(2, 2, 0).unwrap());
        assert_eq!(build_h_prime(2, 1, 1).unwrap().dim(), 5);
    }

    #[test]
    fn volume_family_is_one_dimensional() {
        let v = build_h_double_prime(2, 1, 2).unwrap();
        assert_eq!(v.dim(), 1);
        let v_hat = PForm::parse("(x1) * dx2^dx3 + (x2) * dx3^dx1 + (x3) * dx1^dx2", 3, 2).unwrap();
        assert!(v.contains(&v_hat));
    }

    #[test]
    fn contains_rejects_outside() {
        let h = build_hkp(2, 1, 0).unwrap();
        assert!(h.contains(&PForm::function(Poly::var(3, 2))));
        assert!(!h.contains(&PForm::function(Poly::one(3))));
    }

    #[test]
    fn json_table_has_rows() {
        let rows = dimension_table(2, 2).unwrap();
        assert_eq!(rows.len(), 3 * 4);
        assert!(dimension_table_json(1, 1).unwrap().contains("dim_h_double_prime"));
    }
}
