//! Exact rational arithmetic and sparse multivariate polynomials.
//!
//! Polynomials live in `Q[x_1, ..., x_N]` with a fixed number of variables `N`
//! (the ambient dimension `n + 1`). Terms are kept in a `BTreeMap` under a graded
//! ordering so that iteration, printing and every kernel computation built on top
//! of it are reproducible.
//!
//! Variables are 0-based in the API (`Poly::var(3, 0)` is `x1` in `R^3`) and
//! 1-based in the text format.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// `n / d` as an exact rational.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Lossy conversion used only at the floating-point boundary.
pub fn to_f64(q: &Rational) -> f64 {
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Huge numerator/denominator: scale both down by a common power of two.
            let bits = q.numer().bits().max(q.denom().bits());
            let shift = bits.saturating_sub(1000) as usize;
            let n = (q.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (q.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

/// Serializes a rational as its exact string form (`"5/3"`, `"2"`).
pub fn serialize_rational<S: serde::Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

/// Exponent vector of a monomial.
///
/// Ordered by total degree first; within a degree, monomials with a larger
/// exponent on an earlier variable come first (`x1^2 < x1*x2 < x2^2`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    pub fn zero(dim: usize) -> Self {
        MultiIndex(vec![0; dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut e = vec![0; dim];
        e[i] = 1;
        MultiIndex(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Homogeneity degree `|alpha|`.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Bit `i` set iff the exponent of `x_{i+1}` is odd.
    pub fn parity(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .fold(0, |m, (i, &e)| if e % 2 == 1 { m | (1 << i) } else { m })
    }

    /// All exponent vectors of total degree `k` in `dim` variables, in ascending order.
    pub fn all_of_degree(dim: usize, k: u32) -> Vec<MultiIndex> {
        fn rec(dim: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if cur.len() + 1 == dim {
                cur.push(left);
                out.push(MultiIndex(cur.clone()));
                cur.pop();
                return;
            }
            for e in (0..=left).rev() {
                cur.push(e);
                rec(dim, left - e, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if dim == 0 {
            if k == 0 {
                out.push(MultiIndex(vec![]));
            }
            return out;
        }
        rec(dim, k, &mut Vec::with_capacity(dim), &mut out);
        out
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial with rational coefficients. No zero coefficient is ever stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    dim: usize,
    terms: BTreeMap<MultiIndex, Rational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl Poly {
    pub fn zero(dim: usize) -> Self {
        Poly { dim, terms: BTreeMap::new() }
    }

    pub fn one(dim: usize) -> Self {
        Poly::constant(dim, Rational::one())
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        Poly::monomial(dim, MultiIndex::zero(dim), c)
    }

    /// The coordinate function `x_{i+1}`.
    pub fn var(dim: usize, i: usize) -> Self {
        assert!(i < dim, "variable index {i} out of range for dimension {dim}");
        Poly::monomial(dim, MultiIndex::unit(dim, i), Rational::one())
    }

    pub fn monomial(dim: usize, alpha: MultiIndex, c: Rational) -> Self {
        assert_eq!(alpha.dim(), dim, "multi-index length must equal ambient dimension");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(alpha, c);
        }
        Poly { dim, terms }
    }

    /// `r^2 = x_1^2 + ... + x_N^2`.
    pub fn radius_squared(dim: usize) -> Self {
        let mut p = Poly::zero(dim);
        for i in 0..dim {
            let mut e = vec![0; dim];
            e[i] = 2;
            p.terms.insert(MultiIndex(e), Rational::one());
        }
        p
    }

    /// `r^2 - 1`, the defining quadric of the unit sphere.
    pub fn unit_sphere(dim: usize) -> Self {
        &Poly::radius_squared(dim) - &Poly::one(dim)
    }

    /// `sum x_i^2 / a_i^2 - 1` for an axis-aligned ellipsoid with semi-axes `a`.
    pub fn ellipsoid(axes: &[Rational]) -> Self {
        let dim = axes.len();
        let mut p = -&Poly::one(dim);
        for (i, a) in axes.iter().enumerate() {
            let mut e = vec![0; dim];
            e[i] = 2;
            p = &p + &Poly::monomial(dim, MultiIndex(e), (a * a).recip());
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> Rational {
        self.terms.get(alpha).cloned().unwrap_or_else(Rational::zero)
    }

    /// Highest total degree among the terms, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(MultiIndex::degree).max()
    }

    /// True iff every term has total degree `k` (the zero polynomial is homogeneous of every degree).
    pub fn is_homogeneous_of(&self, k: u32) -> bool {
        self.terms.keys().all(|a| a.degree() == k)
    }

    /// Common coordinate-reflection parity of all terms, if they share one.
    pub fn parity(&self) -> Option<u64> {
        let mut it = self.terms.keys().map(MultiIndex::parity);
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }

    fn insert_add(&mut self, alpha: MultiIndex, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(alpha) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_dim(&self, other: &Poly) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        Ok(())
    }

    /// Exact ring operation with dimension checking.
    pub fn arith(&self, other: &Poly, op: ArithOp) -> Result<Poly> {
        self.check_dim(other)?;
        Ok(match op {
            ArithOp::Add => self.add_impl(other, false),
            ArithOp::Sub => self.add_impl(other, true),
            ArithOp::Mul => self.mul_impl(other),
        })
    }

    fn add_impl(&self, other: &Poly, negate: bool) -> Poly {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.insert_add(a.clone(), if negate { -c } else { c.clone() });
        }
        out
    }

    fn mul_impl(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.dim);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                out.insert_add(a.add(b), c * d);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.dim);
        }
        Poly {
            dim: self.dim,
            terms: self.terms.iter().map(|(a, v)| (a.clone(), v * c)).collect(),
        }
    }

    /// Multiply by the coordinate `x_{i+1}`.
    pub fn mul_var(&self, i: usize) -> Poly {
        Poly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(a, c)| {
                    let mut e = a.0.clone();
                    e[i] += 1;
                    (MultiIndex(e), c.clone())
                })
                .collect(),
        }
    }

    /// Partial derivative with respect to `x_{i+1}`.
    pub fn partial(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.dim);
        for (a, c) in &self.terms {
            let e = a.0[i];
            if e == 0 {
                continue;
            }
            let mut na = a.0.clone();
            na[i] -= 1;
            out.terms.insert(MultiIndex(na), c * int(e as i64));
        }
        out
    }

    /// Flat Laplacian with the analyst's sign, `sum_i d^2/dx_i^2`.
    pub fn flat_laplacian(&self) -> Poly {
        (0..self.dim).fold(Poly::zero(self.dim), |acc, i| &acc + &self.partial(i).partial(i))
    }

    /// Sum of the terms of total degree `k`.
    pub fn homogeneous_component(&self, k: u32) -> Poly {
        Poly {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(a, _)| a.degree() == k)
                .map(|(a, c)| (a.clone(), c.clone()))
                .collect(),
        }
    }

    /// Substitute `x_i -> s_i x_i`.
    pub fn scale_variables(&self, s: &[Rational]) -> Poly {
        assert_eq!(s.len(), self.dim);
        let mut out = Poly::zero(self.dim);
        for (a, c) in &self.terms {
            let mut f = c.clone();
            for (e, si) in a.0.iter().zip(s) {
                f *= num_traits::pow(si.clone(), *e as usize);
            }
            out.insert_add(a.clone(), f);
        }
        out
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        assert_eq!(x.len(), self.dim);
        let mut sum = Rational::zero();
        for (a, c) in &self.terms {
            let mut t = c.clone();
            for (e, xi) in a.0.iter().zip(x) {
                if *e > 0 {
                    t *= num_traits::pow(xi.clone(), *e as usize);
                }
            }
            sum += t;
        }
        sum
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.dim);
        self.terms
            .iter()
            .map(|(a, c)| {
                a.0.iter()
                    .zip(x)
                    .fold(to_f64(c), |acc, (e, xi)| acc * xi.powi(*e as i32))
            })
            .sum()
    }

    /// Split into coefficients of powers of `x_{pivot+1}`: `self = sum_e slices[e] * x_pivot^e`.
    fn pivot_slices(&self, pivot: usize) -> Vec<Poly> {
        let mut slices: Vec<Poly> = Vec::new();
        for (a, c) in &self.terms {
            let e = a.0[pivot] as usize;
            if slices.len() <= e {
                slices.resize(e + 1, Poly::zero(self.dim));
            }
            let mut na = a.0.clone();
            na[pivot] = 0;
            slices[e].terms.insert(MultiIndex(na), c.clone());
        }
        slices
    }

    /// Remainder of `self` on division by the quadric `g`, viewing both as
    /// polynomials in the pivot variable. `g` must have pivot-degree exactly 2
    /// with a nonzero constant leading coefficient; the remainder has
    /// pivot-degree at most 1.
    pub fn reduce_mod_quadric(&self, g: &Poly, pivot: usize) -> Result<Poly> {
        self.check_dim(g)?;
        if pivot >= self.dim {
            return Err(Error::OutOfRange(format!("pivot x{} in dimension {}", pivot + 1, self.dim)));
        }
        let gs = g.pivot_slices(pivot);
        if gs.len() != 3 || gs[2].degree() != Some(0) {
            return Err(Error::NotMonicQuadric(pivot + 1));
        }
        let lead_inv = gs[2].coeff(&MultiIndex::zero(self.dim)).recip();
        let g1 = gs[1].scale(&lead_inv);
        let g0 = gs[0].scale(&lead_inv);

        let mut slices = self.pivot_slices(pivot);
        for e in (2..slices.len()).rev() {
            let s = std::mem::replace(&mut slices[e], Poly::zero(self.dim));
            if s.is_zero() {
                continue;
            }
            slices[e - 1] = &slices[e - 1] - &(&s * &g1);
            slices[e - 2] = &slices[e - 2] - &(&s * &g0);
        }
        let mut out = slices.first().cloned().unwrap_or_else(|| Poly::zero(self.dim));
        if let Some(s1) = slices.get(1) {
            out = &out + &s1.mul_var(pivot);
        }
        Ok(out)
    }

    /// Highest-index variable in which `g` is a monic quadric (up to a constant factor).
    pub fn quadric_pivot(g: &Poly) -> Option<usize> {
        (0..g.dim).rev().find(|&i| {
            let s = g.pivot_slices(i);
            s.len() == 3 && s[2].degree() == Some(0)
        })
    }

    /// True iff `self` lies in the ideal generated by the quadric `g`.
    pub fn vanishes_on_quadric(&self, g: &Poly) -> Result<bool> {
        let pivot = Poly::quadric_pivot(g).ok_or(Error::NotMonicQuadric(g.dim))?;
        Ok(self.reduce_mod_quadric(g, pivot)?.is_zero())
    }

    /// True iff `self` vanishes identically on the unit sphere `S^{N-1}`.
    pub fn vanishes_on_sphere(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        if self.dim == 0 {
            return false;
        }
        self.reduce_mod_quadric(&Poly::unit_sphere(self.dim), self.dim - 1)
            .map(|r| r.is_zero())
            .unwrap_or(false)
    }

    /// Remainder modulo `r^2 - 1` with pivot on the last variable.
    pub fn reduce_on_sphere(&self) -> Poly {
        if self.dim == 0 {
            return self.clone();
        }
        self.reduce_mod_quadric(&Poly::unit_sphere(self.dim), self.dim - 1)
            .expect("unit sphere is monic in the last variable")
    }

    /// Parse the text format, e.g. `2 + -2 * x1^2 + x2^2 + 1/3 * x1 * x3`.
    pub fn parse(s: &str, dim: usize) -> Result<Poly> {
        Parser { chars: s.chars().collect(), pos: 0, dim }.parse_poly()
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    dim: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Parse(format!("expected a number at offset {start}")));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse::<BigInt>().map_err(|e| Error::Parse(e.to_string()))
    }

    fn factor(&mut self, coeff: &mut Rational, alpha: &mut [u32]) -> Result<()> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                let mut q = Rational::from_integer(n);
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let d = self.number()?;
                    if d.is_zero() {
                        return Err(Error::Parse("zero denominator".into()));
                    }
                    q /= Rational::from_integer(d);
                }
                *coeff *= q;
                Ok(())
            }
            Some('x') => {
                self.pos += 1;
                let idx = self
                    .number()?
                    .to_usize()
                    .filter(|&i| i >= 1 && i <= self.dim)
                    .ok_or_else(|| Error::Parse(format!("variable index out of range 1..={}", self.dim)))?;
                let mut e = 1u32;
                if self.peek() == Some('^') {
                    self.pos += 1;
                    e = self.number()?.to_u32().ok_or_else(|| Error::Parse("exponent too large".into()))?;
                }
                alpha[idx - 1] += e;
                Ok(())
            }
            other => Err(Error::Parse(format!("unexpected {:?} at offset {}", other, self.pos))),
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut coeff = Rational::one();
        while self.peek() == Some('-') {
            self.pos += 1;
            coeff = -coeff;
        }
        let mut alpha = vec![0u32; self.dim];
        self.factor(&mut coeff, &mut alpha)?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    self.factor(&mut coeff, &mut alpha)?;
                }
                Some(c) if c == 'x' || c.is_ascii_digit() => self.factor(&mut coeff, &mut alpha)?,
                _ => break,
            }
        }
        Ok(Poly::monomial(self.dim, MultiIndex(alpha), coeff))
    }

    fn parse_poly(mut self) -> Result<Poly> {
        let mut out = Poly::zero(self.dim);
        let mut negate = false;
        loop {
            let t = self.term()?;
            out = if negate { &out - &t } else { &out + &t };
            match self.peek() {
                None => break,
                Some('+') => {
                    self.pos += 1;
                    negate = false;
                }
                Some('-') => {
                    self.pos += 1;
                    negate = true;
                }
                Some(c) => return Err(Error::Parse(format!("unexpected {c:?} at offset {}", self.pos))),
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (a, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let factors: Vec<String> = a
                .0
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(i, e)| if *e == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, e) })
                .collect();
            if factors.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", factors.join(" * "))?;
            } else if (-c).is_one() {
                write!(f, "-{}", factors.join(" * "))?;
            } else {
                write!(f, "{} * {}", c, factors.join(" * "))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[R^{}]({})", self.dim, self)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a Poly> for &'a Poly {
            type Output = Poly;
            fn $method(self, rhs: &'a Poly) -> Poly {
                assert_eq!(self.dim, rhs.dim, "polynomial dimension mismatch");
                $body(self, rhs)
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &Poly, b: &Poly| a.add_impl(b, false));
forward_binop!(Sub, sub, |a: &Poly, b: &Poly| a.add_impl(b, true));
forward_binop!(Mul, mul, |a: &Poly, b: &Poly| a.mul_impl(b));

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            dim: self.dim,
            terms: self.terms.iter().map(|(a, c)| (a.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Rational point on `S^{dim-1}` from the inverse stereographic projection of `t in Q^{dim-1}`.
pub fn rational_sphere_point(t: &[Rational]) -> Vec<Rational> {
    let s: Rational = t.iter().map(|v| v * v).sum();
    let den = &s + Rational::one();
    let mut x: Vec<Rational> = t.iter().map(|v| (v * int(2)) / &den).collect();
    x.push((&s - Rational::one()) / &den);
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3(s: &str) -> Poly {
        Poly::parse(s, 3).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let x1 = Poly::var(3, 0);
        assert_eq!(&x1 * &x1, p3("x1^2"));
        let s = p3("x1 + x2");
        assert!((&s - &s).is_zero());
        let r2 = Poly::radius_squared(3);
        assert_eq!(&r2 * &Poly::one(3), r2);
        assert_eq!(
            Poly::var(2, 0).arith(&Poly::var(3, 0), ArithOp::Add),
            Err(Error::DimensionMismatch(2, 3))
        );
    }

    #[test]
    fn homogeneous_components_of_minimizer_coefficient() {
        let a = p3("2 - 2 * x1^2 + x2^2 + x3^2");
        assert_eq!(a.homogeneous_component(0), p3("2"));
        assert_eq!(a.homogeneous_component(2), p3("-2 * x1^2 + x2^2 + x3^2"));
        let q = p3("x1^2 * x3 + 5 * x2^3");
        assert_eq!(q.homogeneous_component(3), q);
    }

    #[test]
    fn reduction_examples() {
        let g = Poly::unit_sphere(3);
        assert_eq!(p3("x3^2").reduce_mod_quadric(&g, 2).unwrap(), p3("1 - x1^2 - x2^2"));
        let member = &g * &Poly::var(3, 0);
        assert!(member.reduce_mod_quadric(&g, 2).unwrap().is_zero());
        assert_eq!(p3("x1 * x2").reduce_mod_quadric(&g, 2).unwrap(), p3("x1 * x2"));
        assert!(g.vanishes_on_quadric(&g).unwrap());
        assert!(!Poly::var(3, 0).vanishes_on_quadric(&g).unwrap());
    }

    #[test]
    fn rejects_non_monic_quadric() {
        let bad = p3("x1 * x3^2 - 1");
        assert_eq!(p3("x3^3").reduce_mod_quadric(&bad, 2), Err(Error::NotMonicQuadric(3)));
        let cubic = p3("x3^3 - 1");
        assert_eq!(p3("x3^3").reduce_mod_quadric(&cubic, 2), Err(Error::NotMonicQuadric(3)));
    }

    #[test]
    fn ellipsoid_quadric_reduces() {
        let g = Poly::ellipsoid(&[int(2), int(1), int(1)]);
        let member = &g * &p3("x1^3 + x2 * x3");
        assert!(member.vanishes_on_quadric(&g).unwrap());
        assert!(!p3("x1^2").vanishes_on_quadric(&g).unwrap());
    }

    #[test]
    fn text_round_trip() {
        let a = p3("2 + -2 * x1^2 + x2^2 + 1/3 * x1 * x3 - x2");
        assert_eq!(Poly::parse(&a.to_string(), 3).unwrap(), a);
        assert_eq!(a.to_string(), "2 + -x2 + -2 * x1^2 + 1/3 * x1 * x3 + x2^2");
        assert_eq!(Poly::zero(3).to_string(), "0");
        assert!(Poly::parse("x4", 3).is_err());
        assert!(Poly::parse("3 * * x1", 3).is_err());
    }

    #[test]
    fn graded_order() {
        let m = MultiIndex::all_of_degree(3, 2);
        assert_eq!(m.len(), 6);
        assert_eq!(m[0].exponents(), &[2, 0, 0]);
        assert!(m.windows(2).all(|w| w[0] < w[1]));
        assert!(MultiIndex::zero(3) < MultiIndex::unit(3, 2));
    }

    #[test]
    fn stereographic_points_lie_on_sphere() {
        let x = rational_sphere_point(&[rat(1, 2), rat(-3, 7)]);
        assert!(Poly::unit_sphere(3).eval(&x).is_zero());
    }
}
