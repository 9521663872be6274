//! Galerkin upper bounds for the first eigenvalue of the Dirichlet-to-Neumann
//! operator on p-forms over a ball or an axis-aligned ellipsoid.
//!
//! The trial space is every polynomial p-form with coefficients of degree at
//! most `D` that satisfies the boundary constraint exactly: the constraint map
//! is reduced modulo the defining quadric and its kernel is taken over the
//! rationals. The problem decouples by reflection parity, so each parity class
//! is assembled and solved on its own.
//!
//! Directions with zero boundary trace are removed by an exact Schur
//! complement rather than by discarding them, so the reduced pencil has a
//! positive definite right-hand side and the same finite eigenvalues.

pub mod certify;
pub mod iso;
pub mod surface;
pub mod vector_fields;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{monomial_forms, Indices, PForm};
use crate::linalg::{assemble_columns, nullspace, rank, RatMatrix, RowEchelon};
use crate::moments::{common_pi_half_power, MomentCache};
use crate::poly::{serialize_rational, to_f64, MultiIndex, Poly, Rational};

use certify::{certify_smallest_root, characteristic_polynomial};

/// Largest reduced block for which an exact certificate is attempted.
pub const MAX_CERTIFIED_BLOCK: usize = 12;

#[derive(Clone, Debug, PartialEq)]
pub enum Domain {
    Ball,
    /// Semi-axes, one per ambient coordinate.
    Ellipsoid(Vec<Rational>),
}

impl Domain {
    pub fn is_ball(&self) -> bool {
        matches!(self, Domain::Ball)
    }

    pub fn quadric(&self, dim: usize) -> Poly {
        match self {
            Domain::Ball => Poly::unit_sphere(dim),
            Domain::Ellipsoid(a) => Poly::ellipsoid(a),
        }
    }

    pub fn axes_f64(&self, dim: usize) -> Vec<f64> {
        match self {
            Domain::Ball => vec![1.0; dim],
            Domain::Ellipsoid(a) => a.iter().map(to_f64).collect(),
        }
    }

    /// `int_domain x^gamma dx` divided by `pi^(s/2)`, `s` the common pi power.
    fn volume_moment(&self, cache: &MomentCache, gamma: &MultiIndex) -> Rational {
        let base = cache.ball(gamma);
        match self {
            Domain::Ball => base,
            Domain::Ellipsoid(a) => {
                let mut v = base;
                for (ai, &e) in a.iter().zip(gamma.exponents()) {
                    v *= ai * num_traits::pow(ai.clone(), e as usize);
                }
                v
            }
        }
    }

    fn validate(&self, dim: usize) -> Result<()> {
        if let Domain::Ellipsoid(a) = self {
            if a.len() != dim {
                return Err(Error::DimensionMismatch(a.len(), dim));
            }
            if a.iter().any(|v| v <= &Rational::zero()) {
                return Err(Error::InvalidInput("semi-axes must be positive".into()));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Domain::Ball => write!(f, "ball"),
            Domain::Ellipsoid(a) => {
                let parts: Vec<String> = a.iter().map(|v| v.to_string()).collect();
                write!(f, "ellipsoid:{}", parts.join(","))
            }
        }
    }
}

impl FromStr for Domain {
    type Err = Error;

    /// `ball` or `ellipsoid:a1,a2,...` with rational semi-axes such as `3/2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "ball" {
            return Ok(Domain::Ball);
        }
        let rest = s
            .strip_prefix("ellipsoid:")
            .ok_or_else(|| Error::Parse(format!("unknown domain '{s}'")))?;
        let axes = rest
            .split(',')
            .map(|t| t.trim().parse::<Rational>().map_err(|e| Error::Parse(format!("semi-axis '{t}': {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Domain::Ellipsoid(axes))
    }
}

impl Serialize for Domain {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Constraint {
    /// `i_nu omega = 0` on the boundary.
    Tangential,
    /// The pullback of `omega` to the boundary vanishes.
    Normal,
    None,
}

impl FromStr for Constraint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tangential" => Ok(Constraint::Tangential),
            "normal" => Ok(Constraint::Normal),
            "none" => Ok(Constraint::None),
            _ => Err(Error::Parse(format!("unknown constraint '{s}'"))),
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Constraint::Tangential => "tangential",
            Constraint::Normal => "normal",
            Constraint::None => "none",
        };
        f.write_str(s)
    }
}

/// Trial p-forms on a domain in `R^{n+1}` with coefficient degree at most `degree`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GalerkinProblem {
    pub domain: Domain,
    pub n: usize,
    pub p: usize,
    pub degree: u32,
    pub constraint: Constraint,
}

impl GalerkinProblem {
    pub fn new(domain: Domain, n: usize, p: usize, degree: u32, constraint: Constraint) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("boundary dimension n must be at least 1".into()));
        }
        if p > n + 1 {
            return Err(Error::DegreeOverflow(p, n + 1));
        }
        domain.validate(n + 1)?;
        Ok(GalerkinProblem { domain, n, p, degree, constraint })
    }

    pub fn ambient_dim(&self) -> usize {
        self.n + 1
    }
}

/// Right-hand side of the pencil: exact on the ball, quadrature on ellipsoids.
#[derive(Clone, Debug)]
pub enum Mass {
    Exact(RatMatrix),
    Approx(DMatrix<f64>),
}

impl Mass {
    fn to_f64(&self) -> DMatrix<f64> {
        match self {
            Mass::Exact(m) => m.to_f64(),
            Mass::Approx(m) => m.clone(),
        }
    }
}

/// One reflection-parity class of the trial space.
#[derive(Clone, Debug)]
pub struct Block {
    pub parity: u64,
    /// Constrained trial forms.
    pub basis: Vec<PForm>,
    /// `int <d a, d b> + <delta a, delta b>` on `basis`.
    pub stiffness: RatMatrix,
    /// `int_boundary <a, b>` on `basis`.
    pub boundary_mass: Mass,
    /// Coordinates (into `basis`) kept after eliminating zero-trace directions.
    pub reduced: Vec<usize>,
    /// Columns span the zero-trace subspace, in `basis` coordinates.
    pub boundary_null: RatMatrix,
    pub schur: RatMatrix,
    pub reduced_mass: Mass,
    /// Number of lowest eigenvalues to discard (constants on ellipsoids for p = 0).
    pub deflate: usize,
}

impl Block {
    /// Full coefficient vector (in `basis` coordinates) of the Schur extension
    /// of a reduced vector.
    pub fn extend_exact(&self, reduced: &[Rational]) -> Result<Vec<Rational>> {
        let m = self.basis.len();
        let mut full = vec![Rational::zero(); m];
        for (&i, v) in self.reduced.iter().zip(reduced) {
            full[i] = v.clone();
        }
        let z = self.boundary_null.cols;
        if z == 0 {
            return Ok(full);
        }
        let u = RatMatrix::from_fn(m, 1, |i, _| full[i].clone());
        let k0t = self.boundary_null.transpose();
        let a00 = k0t.mul(&self.stiffness).mul(&self.boundary_null);
        let rhs = k0t.mul(&self.stiffness).mul(&u);
        let w = a00.solve(&rhs)?;
        let correction = self.boundary_null.mul(&w);
        for (i, f) in full.iter_mut().enumerate() {
            *f -= &correction[(i, 0)];
        }
        Ok(full)
    }
}

#[derive(Clone, Debug)]
pub struct Assembly {
    pub problem: GalerkinProblem,
    pub blocks: Vec<Block>,
}

impl Assembly {
    pub fn trial_dimension(&self) -> usize {
        self.blocks.iter().map(|b| b.basis.len()).sum()
    }

    pub fn reduced_dimension(&self) -> usize {
        self.blocks.iter().map(|b| b.reduced.len()).sum()
    }

    /// Exact membership of `w` in the trial space.
    pub fn contains(&self, w: &PForm) -> Result<bool> {
        let dim = self.problem.ambient_dim();
        if w.dim() != dim {
            return Err(Error::DimensionMismatch(w.dim(), dim));
        }
        if w.degree() != self.problem.p {
            return Err(Error::DegreeMismatch(w.degree(), self.problem.p));
        }
        for (parity, part) in split_by_parity(w) {
            let Some(block) = self.blocks.iter().find(|b| b.parity == parity) else {
                return Ok(false);
            };
            let mut cols: Vec<_> = block.basis.iter().map(PForm::entries).collect();
            let r0 = rank(&assemble_columns(&cols), cols.len());
            cols.push(part.entries());
            if rank(&assemble_columns(&cols), cols.len()) != r0 {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Decompose a form into its reflection-parity classes.
pub fn split_by_parity(w: &PForm) -> BTreeMap<u64, PForm> {
    let mut out: BTreeMap<u64, Vec<(Indices, Poly)>> = BTreeMap::new();
    for ((idx, alpha), c) in w.entries() {
        let frame = idx.iter().fold(0u64, |m, &i| m | (1 << i));
        let term = Poly::monomial(w.dim(), alpha.clone(), c);
        out.entry(alpha.parity() ^ frame).or_default().push((idx, term));
    }
    out.into_iter()
        .map(|(k, terms)| {
            let mut f = PForm::zero(w.dim(), w.degree());
            for (idx, t) in terms {
                f = &f + &PForm::monomial(t, &idx);
            }
            (k, f)
        })
        .collect()
}

struct Context<'a> {
    problem: &'a GalerkinProblem,
    quadric: Poly,
    pivot: usize,
    cache: MomentCache,
    /// Ellipsoid boundary moments divided by `pi^(s/2)`.
    surface: Option<HashMap<MultiIndex, f64>>,
}

impl Context<'_> {
    fn reduce(&self, w: &PForm) -> Result<PForm> {
        let comps = w
            .components()
            .map(|(idx, f)| Ok((idx.clone(), f.reduce_mod_quadric(&self.quadric, self.pivot)?)))
            .collect::<Result<Vec<_>>>()?;
        PForm::from_components(w.dim(), w.degree(), comps)
    }

    fn constraint_image(&self, w: &PForm) -> Result<Option<PForm>> {
        let dim = self.problem.ambient_dim();
        let image = match self.problem.constraint {
            Constraint::Tangential if w.degree() > 0 => {
                let grad: Vec<Poly> = (0..dim).map(|j| self.quadric.partial(j)).collect();
                w.interior(&grad)?
            }
            Constraint::Normal if w.degree() < dim => w.quadric_horizontal_projection(&self.quadric),
            _ => return Ok(None),
        };
        Ok(Some(self.reduce(&image)?))
    }

    fn integrate_volume(&self, f: &Poly) -> Rational {
        f.terms().fold(Rational::zero(), |acc, (a, c)| acc + c * self.problem.domain.volume_moment(&self.cache, a))
    }
}

fn single_term(w: &PForm) -> (Indices, MultiIndex) {
    let e = w.entries();
    debug_assert_eq!(e.len(), 1);
    e.into_iter().next().expect("monomial form").0
}

fn kernel_matrix(columns: &[Vec<((Indices, MultiIndex), Rational)>], extra: Option<Vec<Rational>>, ncols: usize) -> RatMatrix {
    let mut rows = assemble_columns(columns);
    rows.extend(extra);
    let basis: Vec<Vec<BigInt>> = if rows.is_empty() {
        (0..ncols).map(|i| (0..ncols).map(|j| BigInt::from(i32::from(i == j))).collect()).collect()
    } else {
        nullspace(&rows, ncols)
    };
    RatMatrix::from_fn(ncols, basis.len(), |i, j| Rational::from_integer(basis[j][i].clone()))
}

fn assemble_block(ctx: &Context, parity: u64, raw: &[PForm]) -> Result<Block> {
    let problem = ctx.problem;
    let dim = problem.ambient_dim();
    let r = raw.len();

    // Exact constraint kernel.
    let images = raw.iter().map(|w| ctx.constraint_image(w)).collect::<Result<Vec<_>>>()?;
    let cols: Vec<_> = images.iter().map(|im| im.as_ref().map(PForm::entries).unwrap_or_default()).collect();
    let deflate_row = (problem.p == 0 && problem.domain.is_ball() && problem.constraint != Constraint::Normal)
        .then(|| raw.iter().map(|w| ctx.cache.sphere(&single_term(w).1)).collect::<Vec<_>>())
        .filter(|row| row.iter().any(|v| !v.is_zero()));
    let k = kernel_matrix(&cols, deflate_row, r);
    let m = k.cols;
    let basis: Vec<PForm> = (0..m)
        .map(|j| {
            let coeffs: Vec<Rational> = (0..r).map(|i| k[(i, j)].clone()).collect();
            PForm::linear_combination(dim, problem.p, raw, &coeffs)
        })
        .collect();

    // Stiffness on the raw monomials, then restricted.
    let d_raw: Vec<Option<PForm>> = raw.iter().map(|w| w.exterior_d().ok()).collect();
    let delta_raw: Vec<Option<PForm>> = raw.iter().map(|w| w.codifferential().ok()).collect();
    let pair = |x: &Option<PForm>, y: &Option<PForm>| -> Result<Rational> {
        match (x, y) {
            (Some(x), Some(y)) => Ok(ctx.integrate_volume(&x.pointwise_inner(y)?)),
            _ => Ok(Rational::zero()),
        }
    };
    let mut a_raw = RatMatrix::zeros(r, r);
    for i in 0..r {
        for j in i..r {
            let v = pair(&d_raw[i], &d_raw[j])? + pair(&delta_raw[i], &delta_raw[j])?;
            a_raw[(i, j)] = v.clone();
            a_raw[(j, i)] = v;
        }
    }
    let kt = k.transpose();
    let stiffness = kt.mul(&a_raw).mul(&k);

    let terms: Vec<(Indices, MultiIndex)> = raw.iter().map(single_term).collect();
    let boundary_mass = match &ctx.surface {
        None => {
            let b_raw = RatMatrix::from_fn(r, r, |i, j| {
                if terms[i].0 == terms[j].0 {
                    ctx.cache.sphere(&terms[i].1.add(&terms[j].1))
                } else {
                    Rational::zero()
                }
            });
            Mass::Exact(kt.mul(&b_raw).mul(&k))
        }
        Some(table) => {
            let b_raw = DMatrix::from_fn(r, r, |i, j| {
                if terms[i].0 == terms[j].0 {
                    table.get(&terms[i].1.add(&terms[j].1)).copied().unwrap_or(0.0)
                } else {
                    0.0
                }
            });
            let kf = k.to_f64();
            Mass::Approx(kf.transpose() * b_raw * kf)
        }
    };

    // Zero-trace subspace: components divisible by the quadric.
    let trace_cols = raw.iter().map(|w| Ok(ctx.reduce(w)?.entries())).collect::<Result<Vec<_>>>()?;
    let trace = assemble_columns(&trace_cols);
    let trace_k: Vec<Vec<Rational>> = (0..trace.len())
        .map(|row| (0..m).map(|j| (0..r).fold(Rational::zero(), |acc, i| acc + &trace[row][i] * &k[(i, j)])).collect())
        .collect();
    let null_vecs = if trace_k.is_empty() {
        (0..m).map(|i| (0..m).map(|j| BigInt::from(i32::from(i == j))).collect()).collect()
    } else {
        nullspace(&trace_k, m)
    };
    let z = null_vecs.len();
    let boundary_null = RatMatrix::from_fn(m, z, |i, j| Rational::from_integer(null_vecs[j][i].clone()));
    let pivots = RowEchelon::new(null_vecs, m).pivots().to_vec();
    let reduced: Vec<usize> = (0..m).filter(|i| !pivots.contains(i)).collect();

    let all: Vec<usize> = (0..m).collect();
    let a_pp = stiffness.select(&reduced, &reduced);
    let schur = if z == 0 || reduced.is_empty() {
        a_pp
    } else {
        let k0t = boundary_null.transpose();
        let a00 = k0t.mul(&stiffness).mul(&boundary_null);
        let a0p = k0t.mul(&stiffness.select(&all, &reduced));
        let x = a00
            .solve(&a0p)
            .map_err(|_| Error::Eigensolver("stiffness is singular on zero-trace forms".into()))?;
        a_pp.sub(&a0p.transpose().mul(&x))
    };
    let reduced_mass = match &boundary_mass {
        Mass::Exact(b) => Mass::Exact(b.select(&reduced, &reduced)),
        Mass::Approx(b) => Mass::Approx(b.select_rows(&reduced).select_columns(&reduced)),
    };
    let deflate = usize::from(problem.p == 0 && !problem.domain.is_ball() && parity == 0 && !reduced.is_empty());
    Ok(Block { parity, basis, stiffness, boundary_mass, reduced, boundary_null, schur, reduced_mass, deflate })
}

/// Assemble every parity block of the trial space.
pub fn assemble_problem(problem: &GalerkinProblem) -> Result<Assembly> {
    let dim = problem.ambient_dim();
    let quadric = problem.domain.quadric(dim);
    let pivot = Poly::quadric_pivot(&quadric).ok_or(Error::NotMonicQuadric(dim))?;
    let surface = match &problem.domain {
        Domain::Ball => None,
        Domain::Ellipsoid(_) => {
            let raw = surface::ellipsoid_surface_moments(&problem.domain.axes_f64(dim), 2 * problem.degree, 1e-13)?;
            let scale = std::f64::consts::PI.powf(f64::from(common_pi_half_power(dim)) / 2.0);
            Some(raw.into_iter().map(|(k, v)| (k, v / scale)).collect())
        }
    };
    let ctx = Context { problem, quadric, pivot, cache: MomentCache::new(), surface };

    let mut raw: BTreeMap<u64, Vec<PForm>> = BTreeMap::new();
    for k in 0..=problem.degree {
        for w in monomial_forms(dim, k, problem.p) {
            raw.entry(w.parity().expect("monomial")).or_default().push(w);
        }
    }
    let raw: Vec<(u64, Vec<PForm>)> = raw.into_iter().collect();
    let blocks = raw
        .par_iter()
        .map(|(parity, forms)| assemble_block(&ctx, *parity, forms))
        .collect::<Result<Vec<_>>>()?;
    Ok(Assembly { problem: problem.clone(), blocks })
}

struct BlockSpectrum {
    values: Vec<f64>,
    vectors: DMatrix<f64>,
}

fn solve_block(block: &Block) -> Result<BlockSpectrum> {
    let n = block.reduced.len();
    if n == 0 {
        return Ok(BlockSpectrum { values: Vec::new(), vectors: DMatrix::zeros(0, 0) });
    }
    let s = block.schur.to_f64();
    let (c, back) = match &block.reduced_mass {
        Mass::Exact(b) => {
            let (l, d) = b.ldlt()?;
            let linv = l.unit_lower_inverse();
            let m = linv.mul(&block.schur).mul(&linv.transpose());
            let dinv: Vec<f64> = d.iter().map(|v| 1.0 / to_f64(v).sqrt()).collect();
            let c = DMatrix::from_fn(n, n, |i, j| to_f64(&m[(i, j)]) * dinv[i] * dinv[j]);
            let back = linv.transpose().to_f64() * DMatrix::from_diagonal(&DVector::from_vec(dinv));
            (c, back)
        }
        Mass::Approx(b) => {
            let chol = b
                .clone()
                .cholesky()
                .ok_or_else(|| Error::Eigensolver("boundary mass is not positive definite".into()))?;
            let linv = chol
                .l()
                .try_inverse()
                .ok_or_else(|| Error::Eigensolver("singular Cholesky factor".into()))?;
            let c = &linv * &s * linv.transpose();
            (c, linv.transpose())
        }
    };
    let c = (&c + c.transpose()) * 0.5;
    let eig = SymmetricEigen::new(c);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    Ok(BlockSpectrum { values, vectors: back * vectors })
}

fn relative_residual(block: &Block, lambda: f64, u: &DVector<f64>) -> f64 {
    let s = block.schur.to_f64();
    let b = block.reduced_mass.to_f64();
    let r = &s * u - &b * u * lambda;
    r.norm() / ((s.norm() + lambda.abs() * b.norm()) * u.norm()).max(f64::MIN_POSITIVE)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// Exact rational smallest root of every block's characteristic polynomial.
    ExactRational {
        #[serde(serialize_with = "serialize_rational")]
        value: Rational,
        blocks_checked: usize,
    },
    /// Floating-point value only.
    Numerical,
}

#[derive(Clone, Debug, Serialize)]
pub struct EigResult {
    pub value: f64,
    pub residual: f64,
    pub trial_dimension: usize,
    pub reduced_dimension: usize,
    pub block_parity: u64,
    /// A few of the lowest eigenvalues over all blocks, with multiplicity.
    pub lowest: Vec<f64>,
    pub certificate: Certificate,
}

impl EigResult {
    pub fn exact_value(&self) -> Option<&Rational> {
        match &self.certificate {
            Certificate::ExactRational { value, .. } => Some(value),
            Certificate::Numerical => None,
        }
    }
}

/// Smallest Galerkin eigenvalue of the assembled problem.
pub fn smallest_rayleigh_of(assembly: &Assembly) -> Result<EigResult> {
    let spectra = assembly.blocks.par_iter().map(solve_block).collect::<Result<Vec<_>>>()?;
    let mut all: Vec<f64> = Vec::new();
    let mut best: Option<(usize, usize)> = None;
    for (bi, (block, spec)) in assembly.blocks.iter().zip(&spectra).enumerate() {
        for (vi, &v) in spec.values.iter().enumerate().skip(block.deflate) {
            all.push(v);
            if best.is_none_or(|(b, i)| v < spectra[b].values[i]) {
                best = Some((bi, vi));
            }
        }
    }
    let (bi, vi) = best.ok_or_else(|| Error::EmptyTrialSpace(format!("{:?}", assembly.problem)))?;
    let value = spectra[bi].values[vi];
    let u = spectra[bi].vectors.column(vi).into_owned();
    let residual = relative_residual(&assembly.blocks[bi], value, &u);
    all.sort_by(f64::total_cmp);
    all.truncate(8);
    let certificate = certify(assembly, value).unwrap_or(Certificate::Numerical);
    Ok(EigResult {
        value,
        residual,
        trial_dimension: assembly.trial_dimension(),
        reduced_dimension: assembly.reduced_dimension(),
        block_parity: assembly.blocks[bi].parity,
        lowest: all,
        certificate,
    })
}

pub fn smallest_rayleigh(problem: &GalerkinProblem) -> Result<EigResult> {
    smallest_rayleigh_of(&assemble_problem(problem)?)
}

/// Exact proof that the smallest Galerkin eigenvalue is the rational nearest
/// to `estimate`: it must be a root in some block and no block may have a
/// smaller root. Only available with exact boundary mass.
pub fn certify(assembly: &Assembly, estimate: f64) -> Option<Certificate> {
    let blocks: Vec<&Block> = assembly.blocks.iter().filter(|b| !b.reduced.is_empty()).collect();
    let mut polys = Vec::with_capacity(blocks.len());
    for b in &blocks {
        let Mass::Exact(mass) = &b.reduced_mass else { return None };
        if b.reduced.len() > MAX_CERTIFIED_BLOCK || b.deflate > 0 {
            return None;
        }
        polys.push(characteristic_polynomial(&b.schur, mass));
    }
    let (value, _) = polys.iter().find_map(|chi| {
        let cert = certify_smallest_root(chi, estimate, 1_000_000_000)?;
        Some((cert.value, ()))
    })?;
    for chi in &polys {
        let sqf = chi.squarefree();
        let lower = -sqf.cauchy_bound();
        let below = sqf.count_roots(&lower, &value) - usize::from(chi.eval(&value).is_zero());
        if below != 0 {
            return None;
        }
    }
    Some(Certificate::ExactRational { value, blocks_checked: polys.len() })
}

/// Exact eigenspace of the Galerkin pencil for the eigenvalue `value`, as
/// forms in the trial space (empty if `value` is not an eigenvalue).
pub fn exact_eigenspace(assembly: &Assembly, value: &Rational) -> Result<Vec<PForm>> {
    let dim = assembly.problem.ambient_dim();
    let mut out = Vec::new();
    for block in &assembly.blocks {
        let Mass::Exact(mass) = &block.reduced_mass else {
            return Err(Error::InvalidInput("exact eigenspaces need an exact boundary mass".into()));
        };
        let n = block.reduced.len();
        if n == 0 {
            continue;
        }
        let pencil = block.schur.sub(&mass.scale(value));
        let rows: Vec<Vec<Rational>> = (0..n).map(|i| (0..n).map(|j| pencil[(i, j)].clone()).collect()).collect();
        for v in nullspace(&rows, n) {
            let reduced: Vec<Rational> = v.into_iter().map(Rational::from_integer).collect();
            let full = block.extend_exact(&reduced)?;
            out.push(PForm::linear_combination(dim, assembly.problem.p, &block.basis, &full));
        }
    }
    Ok(out)
}

/// Degree of the polynomial trial space that contains a ball minimizer.
pub fn minimizer_degree(n: usize, p: usize) -> u32 {
    if p == 0 || 2 * p > n {
        1
    } else {
        2
    }
}

/// Galerkin value of the normal-constraint problem on (p+1)-forms, which by
/// Hodge duality matches the tangential problem on (n-p)-forms.
pub fn dual_first_eigenvalue(domain: Domain, n: usize, p: usize, degree: u32) -> Result<EigResult> {
    smallest_rayleigh(&GalerkinProblem::new(domain, n, p + 1, degree, Constraint::Normal)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::first_eigenvalue;
    use crate::poly::{int, rat};

    fn ball(n: usize, p: usize, d: u32) -> GalerkinProblem {
        GalerkinProblem::new(Domain::Ball, n, p, d, Constraint::Tangential).unwrap()
    }

    #[test]
    fn two_sphere_one_forms_certify_five_thirds() {
        let asm = assemble_problem(&ball(2, 1, 2)).unwrap();
        let xi = PForm::parse("(2 - 2*x1^2 + x2^2 + x3^2) * dx1 + (-3*x1*x2) * dx2 + (-3*x1*x3) * dx3", 3, 1).unwrap();
        assert!(asm.contains(&xi).unwrap());
        let res = smallest_rayleigh_of(&asm).unwrap();
        assert!((res.value - 5.0 / 3.0).abs() < 1e-10);
        assert!(res.residual < 1e-10);
        assert_eq!(res.exact_value(), Some(&rat(5, 3)));
        // The minimizer family is three-dimensional.
        let space = exact_eigenspace(&asm, &rat(5, 3)).unwrap();
        assert_eq!(space.len(), 3);
    }

    #[test]
    fn top_degree_and_functions() {
        let r = smallest_rayleigh(&ball(2, 2, 1)).unwrap();
        assert_eq!(r.exact_value(), Some(&int(3)));
        let r = smallest_rayleigh(&ball(2, 0, 1)).unwrap();
        assert_eq!(r.exact_value(), Some(&int(1)));
        let r = smallest_rayleigh(&ball(2, 3, 1));
        assert!(matches!(r, Err(Error::EmptyTrialSpace(_))));
    }

    #[test]
    fn degree_one_misses_the_exact_family() {
        // Only the coexact value 2 is reachable with linear coefficients.
        let r = smallest_rayleigh(&ball(2, 1, 1)).unwrap();
        assert_eq!(r.exact_value(), Some(&int(2)));
    }

    #[test]
    fn ball_matches_closed_forms() {
        for (n, p) in [(3, 1), (3, 2), (3, 3)] {
            let r = smallest_rayleigh(&ball(n, p, minimizer_degree(n, p))).unwrap();
            assert_eq!(r.exact_value(), Some(&first_eigenvalue(n, p).unwrap()), "n={n} p={p}");
        }
    }

    #[test]
    fn normal_problem_is_dual() {
        for p in 0..=2 {
            let r = dual_first_eigenvalue(Domain::Ball, 2, p, 2).unwrap();
            let expected = if p == 2 { Rational::zero() } else { first_eigenvalue(2, 2 - p).unwrap() };
            assert_eq!(r.exact_value(), Some(&expected), "p={p}");
        }
    }

    #[test]
    fn stretched_ball_is_still_a_ball() {
        let unit = GalerkinProblem::new(Domain::Ellipsoid(vec![int(1); 3]), 2, 1, 2, Constraint::Tangential).unwrap();
        let r = smallest_rayleigh(&unit).unwrap();
        assert!((r.value - 5.0 / 3.0).abs() < 1e-9, "{}", r.value);
        // Scaling by 2 halves the first eigenvalue.
        let big = GalerkinProblem::new(Domain::Ellipsoid(vec![int(2); 3]), 2, 1, 2, Constraint::Tangential).unwrap();
        let r = smallest_rayleigh(&big).unwrap();
        assert!((r.value - 5.0 / 6.0).abs() < 1e-9, "{}", r.value);
    }

    #[test]
    fn matrices_are_symmetric_and_semidefinite() {
        let asm = assemble_problem(&ball(2, 1, 2)).unwrap();
        for b in &asm.blocks {
            assert!(b.stiffness.is_positive_semidefinite());
            assert!(b.schur.is_positive_semidefinite());
            let Mass::Exact(m) = &b.boundary_mass else { panic!() };
            assert!(m.is_positive_semidefinite());
        }
    }

    #[test]
    fn domain_parsing() {
        assert_eq!("ball".parse::<Domain>().unwrap(), Domain::Ball);
        let d: Domain = "ellipsoid:2,1,3/2".parse().unwrap();
        assert_eq!(d, Domain::Ellipsoid(vec![int(2), int(1), rat(3, 2)]));
        assert_eq!(d.to_string(), "ellipsoid:2,1,3/2");
        assert!("cube".parse::<Domain>().is_err());
        assert!(GalerkinProblem::new(d, 3, 1, 1, Constraint::Tangential).is_err());
    }
}
