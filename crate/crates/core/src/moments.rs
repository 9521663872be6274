//! Exact monomial integrals over the unit sphere and ball.
//!
//! Values are `rational * pi^{s/2}`. For a fixed ambient dimension `N` every
//! nonzero sphere or ball moment carries the same half-power `s` (`N` for even
//! `N`, `N - 1` for odd `N`), so ratios of integrals are exact rationals.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{int, serialize_rational, to_f64, MultiIndex, Poly, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MomentValue {
    #[serde(serialize_with = "serialize_rational")]
    pub rational_part: Rational,
    pub pi_half_power: u32,
}

impl MomentValue {
    pub fn zero(dim: usize) -> Self {
        MomentValue { rational_part: Rational::zero(), pi_half_power: common_pi_half_power(dim) }
    }

    pub fn is_zero(&self) -> bool {
        self.rational_part.is_zero()
    }

    pub fn checked_add(&self, other: &MomentValue) -> Result<MomentValue> {
        if self.pi_half_power != other.pi_half_power {
            return Err(Error::InvalidInput(format!(
                "cannot add multiples of pi^({}/2) and pi^({}/2)",
                self.pi_half_power, other.pi_half_power
            )));
        }
        Ok(MomentValue { rational_part: &self.rational_part + &other.rational_part, pi_half_power: self.pi_half_power })
    }

    pub fn scale(&self, c: &Rational) -> MomentValue {
        MomentValue { rational_part: &self.rational_part * c, pi_half_power: self.pi_half_power }
    }

    /// Exact ratio of two values with the same pi power.
    pub fn ratio(&self, other: &MomentValue) -> Result<Rational> {
        if self.pi_half_power != other.pi_half_power || other.is_zero() {
            return Err(Error::InvalidInput("ratio needs equal pi powers and a nonzero denominator".into()));
        }
        Ok(&self.rational_part / &other.rational_part)
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.rational_part) * PI.powf(self.pi_half_power as f64 / 2.0)
    }
}

impl fmt::Display for MomentValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pi_half_power {
            0 => write!(f, "{}", self.rational_part),
            s if s % 2 == 0 => write!(f, "({}) * pi^{}", self.rational_part, s / 2),
            s => write!(f, "({}) * pi^({s}/2)", self.rational_part),
        }
    }
}

/// Half-power of pi shared by all nonzero moments in `R^dim`.
pub fn common_pi_half_power(dim: usize) -> u32 {
    (dim - dim % 2) as u32
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `Gamma(m + 1/2) / sqrt(pi) = (2m)! / (4^m m!)`.
fn gamma_half_integer(m: u32) -> Rational {
    Rational::new(factorial(2 * m), BigInt::from(4).pow(m) * factorial(m))
}

/// `Gamma(t/2)` as `(rational, has_sqrt_pi)`.
fn gamma_half(t: u32) -> (Rational, bool) {
    if t.is_multiple_of(2) {
        (Rational::from_integer(factorial(t / 2 - 1)), false)
    } else {
        (gamma_half_integer((t - 1) / 2), true)
    }
}

/// `int_{S^{N-1}} x^alpha dS = 2 prod Gamma((alpha_i+1)/2) / Gamma((|alpha|+N)/2)`.
pub fn sphere_monomial_moment(alpha: &MultiIndex) -> MomentValue {
    let dim = alpha.dim();
    if alpha.exponents().iter().any(|a| a % 2 == 1) {
        return MomentValue::zero(dim);
    }
    let num = alpha.exponents().iter().fold(int(2), |acc, a| acc * gamma_half_integer(a / 2));
    let (den, den_sqrt_pi) = gamma_half(alpha.degree() + dim as u32);
    let s = dim as u32 - u32::from(den_sqrt_pi);
    debug_assert_eq!(s, common_pi_half_power(dim));
    MomentValue { rational_part: num / den, pi_half_power: s }
}

/// `int_{B^N} x^alpha dx = sphere moment / (|alpha| + N)`.
pub fn ball_monomial_moment(alpha: &MultiIndex) -> MomentValue {
    let s = sphere_monomial_moment(alpha);
    let denom = int(alpha.degree() as i64 + alpha.dim() as i64);
    s.scale(&(Rational::one() / denom))
}

/// Memoized rational parts of sphere moments, shared across threads.
#[derive(Default)]
pub struct MomentCache {
    sphere: Mutex<HashMap<MultiIndex, Rational>>,
}

impl MomentCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn sphere(&self, alpha: &MultiIndex) -> Rational {
        if let Some(v) = self.sphere.lock().expect("moment cache poisoned").get(alpha) {
            return v.clone();
        }
        let v = sphere_monomial_moment(alpha).rational_part;
        self.sphere.lock().expect("moment cache poisoned").insert(alpha.clone(), v.clone());
        v
    }

    pub fn ball(&self, alpha: &MultiIndex) -> Rational {
        self.sphere(alpha) / int(alpha.degree() as i64 + alpha.dim() as i64)
    }
}

pub fn integrate_over_sphere(f: &Poly) -> MomentValue {
    let parts = f.terms().map(|(a, c)| sphere_monomial_moment(a).rational_part * c);
    MomentValue { rational_part: parts.fold(Rational::zero(), |acc, x| acc + x), pi_half_power: common_pi_half_power(f.dim()) }
}

pub fn integrate_over_ball(f: &Poly) -> MomentValue {
    let parts = f.terms().map(|(a, c)| ball_monomial_moment(a).rational_part * c);
    MomentValue { rational_part: parts.fold(Rational::zero(), |acc, x| acc + x), pi_half_power: common_pi_half_power(f.dim()) }
}

/// Integral of a polynomial in `V_1, ..., V_p` (each in `R^dim`, variables laid
/// out block by block) against the product of `dmu = dim / Vol(S^{dim-1}) dS`.
pub fn integrate_parallel_measure(f: &Poly, dim: usize, p: usize) -> Result<Rational> {
    if f.dim() != dim * p {
        return Err(Error::DimensionMismatch(dim * p, f.dim()));
    }
    let area = sphere_monomial_moment(&MultiIndex::zero(dim)).rational_part;
    let weight = int(dim as i64) / area;
    let mut total = Rational::zero();
    for (alpha, c) in f.terms() {
        let mut term = c.clone();
        for block in alpha.exponents().chunks(dim) {
            let m = sphere_monomial_moment(&MultiIndex::new(block.to_vec()));
            term *= &m.rational_part * &weight;
            if term.is_zero() {
                break;
            }
        }
        total += term;
    }
    Ok(total)
}

/// Results of the parallel-form moment identities at one point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParallelMoments {
    pub n: usize,
    pub p: usize,
    #[serde(serialize_with = "serialize_rational")]
    pub wedge_norm: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub wedge_expected: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub normal_contraction_norm: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub normal_contraction_expected: Rational,
}

impl ParallelMoments {
    pub fn holds(&self) -> bool {
        self.wedge_norm == self.wedge_expected && self.normal_contraction_norm == self.normal_contraction_expected
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// Determinant of a small square matrix of polynomials by cofactor expansion.
fn poly_det(m: &[Vec<Poly>]) -> Poly {
    let size = m.len();
    if size == 0 {
        return Poly::one(0);
    }
    if size == 1 {
        return m[0][0].clone();
    }
    let dim = m[0][0].dim();
    let mut total = Poly::zero(dim);
    for (j, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = entry * &poly_det(&minor);
        total = if j % 2 == 0 { &total + &term } else { &total - &term };
    }
    total
}

/// Checks `int |V_1 ^ ... ^ V_p|^2 = p! C(n+1, p)` and
/// `int |i_N (V_1 ^ ... ^ V_p)|^2 = p! C(n, p-1)` for the unit normal `normal`
/// (the first integrand does not depend on the point).
pub fn parallel_moment_identities(n: usize, p: usize, normal: &[Rational]) -> Result<ParallelMoments> {
    let dim = n + 1;
    if p == 0 || p > n {
        return Err(Error::OutOfRange(format!("moment identities need 1 <= p <= n, got n={n}, p={p}")));
    }
    if normal.len() != dim {
        return Err(Error::DimensionMismatch(dim, normal.len()));
    }
    let norm2: Rational = normal.iter().map(|x| x * x).sum();
    if !norm2.is_one() {
        return Err(Error::InvalidInput(format!("normal has squared length {norm2}, expected 1")));
    }
    let vars = dim * p;
    // entry (i, j) = i-th coordinate of V_j
    let v = |i: usize, j: usize| Poly::var(vars, j * dim + i);
    let tuples = crate::exterior::index_tuples(dim, p);
    let coeff = |rows: &[usize]| -> Poly {
        let m: Vec<Vec<Poly>> = rows.iter().map(|&i| (0..p).map(|j| v(i, j)).collect()).collect();
        poly_det(&m)
    };
    let coeffs: HashMap<Vec<usize>, Poly> = tuples.iter().map(|t| (t.clone(), coeff(t))).collect();
    let wedge = tuples.iter().fold(Poly::zero(vars), |acc, t| &acc + &(&coeffs[t] * &coeffs[t]));

    // (i_N xi)_J = sum_{i not in J} N_i * sign * xi_{{i} u J}, sign = (-1)^{position of i}
    let mut contraction = Poly::zero(vars);
    for j_tuple in crate::exterior::index_tuples(dim, p - 1) {
        let mut comp = Poly::zero(vars);
        for (i, ni) in normal.iter().enumerate() {
            if ni.is_zero() || j_tuple.contains(&i) {
                continue;
            }
            let pos = j_tuple.iter().filter(|&&j| j < i).count();
            let mut merged = j_tuple.clone();
            merged.insert(pos, i);
            let sign = if pos % 2 == 0 { ni.clone() } else { -ni.clone() };
            comp = &comp + &coeffs[&merged].scale(&sign);
        }
        contraction = &contraction + &(&comp * &comp);
    }
    let fact_p = Rational::from_integer((1..=p).fold(BigInt::one(), |a, i| a * BigInt::from(i)));
    Ok(ParallelMoments {
        n,
        p,
        wedge_norm: integrate_parallel_measure(&wedge, dim, p)?,
        wedge_expected: &fact_p * Rational::from_integer(binomial(dim, p)),
        normal_contraction_norm: integrate_parallel_measure(&contraction, dim, p)?,
        normal_contraction_expected: &fact_p * Rational::from_integer(binomial(n, p - 1)),
    })
}

/// `int <V, X> <V, Y> dmu(V)`; equals `<X, Y>` for the normalized measure.
pub fn parallel_pairing(x: &[Rational], y: &[Rational]) -> Result<Rational> {
    if x.len() != y.len() || x.is_empty() {
        return Err(Error::DimensionMismatch(x.len(), y.len()));
    }
    let dim = x.len();
    let lin = |w: &[Rational]| {
        w.iter()
            .enumerate()
            .fold(Poly::zero(dim), |acc, (i, c)| &acc + &Poly::var(dim, i).scale(c))
    };
    integrate_parallel_measure(&(&lin(x) * &lin(y)), dim, 1)
}
