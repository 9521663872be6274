//! Polynomial differential forms on flat `R^N` and their calculus.
//!
//! A p-form is stored as a map from strictly increasing index tuples
//! `(i_1 < ... < i_p)` (0-based) to polynomial coefficients in the orthonormal
//! coordinate coframe `dx_1, ..., dx_N`.
//!
//! Sign conventions: the Hodge Laplacian is `d delta + delta d`, which on
//! functions is `-sum d^2/dx_i^2` (non-negative), and `delta` on 1-forms is minus
//! the divergence.
//!
//! Boundary questions on the unit sphere are decided algebraically. The
//! projection `pi(a) = r^2 a - rho ^ i_Z a` (with `rho = sum x_i dx_i` and
//! `Z = sum x_i d/dx_i`) kills the radial part of `a`; at points of the sphere
//! it agrees with `a` on tangent vectors, so `J^* a = 0` iff every component of
//! `pi(a)` is divisible by `r^2 - 1`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{int, MultiIndex, Poly, Rational};

/// Strictly increasing tuple of 0-based coframe indices.
pub type Indices = Vec<usize>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PForm {
    dim: usize,
    degree: usize,
    comps: BTreeMap<Indices, Poly>,
}

/// Sign of the shuffle that sorts the concatenation `I ++ J` (disjoint inputs).
fn shuffle_sign(i: &[usize], j: &[usize]) -> i64 {
    let inversions: usize = i.iter().map(|a| j.iter().filter(|b| *b < a).count()).sum();
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn merge_sorted(i: &[usize], j: &[usize]) -> Option<Indices> {
    let mut out = Vec::with_capacity(i.len() + j.len());
    let (mut a, mut b) = (0, 0);
    while a < i.len() || b < j.len() {
        if b == j.len() || (a < i.len() && i[a] < j[b]) {
            out.push(i[a]);
            a += 1;
        } else if a == i.len() || j[b] < i[a] {
            out.push(j[b]);
            b += 1;
        } else {
            return None;
        }
    }
    Some(out)
}

/// All strictly increasing `p`-tuples from `0..dim`, in lexicographic order.
pub fn index_tuples(dim: usize, p: usize) -> Vec<Indices> {
    fn rec(start: usize, dim: usize, p: usize, cur: &mut Indices, out: &mut Vec<Indices>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..dim {
            cur.push(i);
            rec(i + 1, dim, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if p <= dim {
        rec(0, dim, p, &mut Vec::new(), &mut out);
    }
    out
}

impl PForm {
    pub fn zero(dim: usize, degree: usize) -> Self {
        assert!(degree <= dim, "form degree {degree} exceeds dimension {dim}");
        PForm { dim, degree, comps: BTreeMap::new() }
    }

    /// A function viewed as a 0-form.
    pub fn function(f: Poly) -> Self {
        let mut w = PForm::zero(f.dim(), 0);
        w.insert_add(Vec::new(), f);
        w
    }

    /// `coeff * dx_{i_1} ^ ... ^ dx_{i_p}` for arbitrary (not necessarily sorted) 0-based indices.
    pub fn monomial(coeff: Poly, indices: &[usize]) -> Self {
        let dim = coeff.dim();
        assert!(indices.iter().all(|&i| i < dim), "coframe index out of range");
        let mut sorted = indices.to_vec();
        let mut sign = 1i64;
        // insertion sort, tracking the permutation sign
        for a in 1..sorted.len() {
            let mut b = a;
            while b > 0 && sorted[b - 1] > sorted[b] {
                sorted.swap(b - 1, b);
                sign = -sign;
                b -= 1;
            }
        }
        let mut w = PForm::zero(dim, indices.len());
        if sorted.windows(2).any(|p| p[0] == p[1]) {
            return w;
        }
        w.insert_add(sorted, coeff.scale(&int(sign)));
        w
    }

    /// The constant coframe `dx_{i_1} ^ ... ^ dx_{i_p}`.
    pub fn dx(dim: usize, indices: &[usize]) -> Self {
        PForm::monomial(Poly::one(dim), indices)
    }

    /// `rho = sum x_i dx_i`, the 1-form dual to the radial field.
    pub fn radial_one_form(dim: usize) -> Self {
        let mut w = PForm::zero(dim, 1);
        for i in 0..dim {
            w.insert_add(vec![i], Poly::var(dim, i));
        }
        w
    }

    /// The volume form `dx_1 ^ ... ^ dx_N`.
    pub fn volume(dim: usize) -> Self {
        PForm::dx(dim, &(0..dim).collect::<Vec<_>>())
    }

    pub fn from_components(dim: usize, degree: usize, comps: impl IntoIterator<Item = (Indices, Poly)>) -> Result<Self> {
        if degree > dim {
            return Err(Error::DegreeOverflow(degree, dim));
        }
        let mut w = PForm::zero(dim, degree);
        for (idx, f) in comps {
            if f.dim() != dim {
                return Err(Error::DimensionMismatch(dim, f.dim()));
            }
            if idx.len() != degree || idx.windows(2).any(|p| p[0] >= p[1]) || idx.iter().any(|&i| i >= dim) {
                return Err(Error::OutOfRange(format!("index tuple {idx:?}")));
            }
            w.insert_add(idx, f);
        }
        Ok(w)
    }

    fn insert_add(&mut self, idx: Indices, f: Poly) {
        if f.is_zero() {
            return;
        }
        match self.comps.entry(idx) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(f);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &f;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&Indices, &Poly)> {
        self.comps.iter()
    }

    pub fn component(&self, idx: &[usize]) -> Poly {
        self.comps.get(idx).cloned().unwrap_or_else(|| Poly::zero(self.dim))
    }

    /// True iff every coefficient is homogeneous of degree `k`.
    pub fn is_homogeneous_of(&self, k: u32) -> bool {
        self.comps.values().all(|f| f.is_homogeneous_of(k))
    }

    /// Highest coefficient degree.
    pub fn coefficient_degree(&self) -> Option<u32> {
        self.comps.values().filter_map(Poly::degree).max()
    }

    /// Reflection parity of a monomial form `x^a dx_I`: bit `i` is `a_i + [i in I] mod 2`.
    /// Returns the common parity of all terms, if any.
    pub fn parity(&self) -> Option<u64> {
        let mut out: Option<u64> = None;
        for (idx, f) in &self.comps {
            let frame = idx.iter().fold(0u64, |m, &i| m | (1 << i));
            for (a, _) in f.terms() {
                let p = a.parity() ^ frame;
                match out {
                    None => out = Some(p),
                    Some(q) if q != p => return None,
                    _ => {}
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> PForm {
        self.map_coefficients(|f| f.scale(c))
    }

    pub fn mul_poly(&self, g: &Poly) -> PForm {
        self.map_coefficients(|f| f * g)
    }

    pub fn map_coefficients(&self, mut f: impl FnMut(&Poly) -> Poly) -> PForm {
        let mut out = PForm::zero(self.dim, self.degree);
        for (idx, c) in &self.comps {
            out.insert_add(idx.clone(), f(c));
        }
        out
    }

    fn check_same_shape(&self, other: &PForm) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &PForm) -> Result<PForm> {
        self.check_same_shape(other)?;
        Ok(self.add_impl(other, false))
    }

    pub fn checked_sub(&self, other: &PForm) -> Result<PForm> {
        self.check_same_shape(other)?;
        Ok(self.add_impl(other, true))
    }

    fn add_impl(&self, other: &PForm, negate: bool) -> PForm {
        let mut out = self.clone();
        for (idx, f) in &other.comps {
            out.insert_add(idx.clone(), if negate { -f } else { f.clone() });
        }
        out
    }

    /// Exterior product with exact sign bookkeeping.
    pub fn wedge(&self, other: &PForm) -> Result<PForm> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        let degree = self.degree + other.degree;
        if degree > self.dim {
            return Err(Error::DegreeOverflow(degree, self.dim));
        }
        let mut out = PForm::zero(self.dim, degree);
        for (i, f) in &self.comps {
            for (j, g) in &other.comps {
                if let Some(merged) = merge_sorted(i, j) {
                    let c = f * g;
                    out.insert_add(merged, c.scale(&int(shuffle_sign(i, j))));
                }
            }
        }
        Ok(out)
    }

    /// Exterior derivative. Top-degree forms have no `d` (degree would overflow).
    pub fn exterior_d(&self) -> Result<PForm> {
        if self.degree >= self.dim {
            return Err(Error::DegreeOverflow(self.degree + 1, self.dim));
        }
        let mut out = PForm::zero(self.dim, self.degree + 1);
        for (idx, f) in &self.comps {
            for j in (0..self.dim).filter(|j| !idx.contains(j)) {
                let df = f.partial(j);
                if df.is_zero() {
                    continue;
                }
                let before = idx.iter().filter(|&&i| i < j).count();
                let mut merged = idx.clone();
                merged.insert(before, j);
                let sign = if before % 2 == 0 { 1 } else { -1 };
                out.insert_add(merged, df.scale(&int(sign)));
            }
        }
        Ok(out)
    }

    /// `d`, with the convention that `d` of a top-degree form vanishes (returned as `None`).
    fn d_or_none(&self) -> Option<PForm> {
        self.exterior_d().ok()
    }

    /// Interior product with the constant field `e_j`.
    pub fn interior_basis(&self, j: usize) -> Result<PForm> {
        if self.degree == 0 {
            return Err(Error::ZeroFormInput);
        }
        let mut out = PForm::zero(self.dim, self.degree - 1);
        for (idx, f) in &self.comps {
            if let Some(pos) = idx.iter().position(|&i| i == j) {
                let mut rest = idx.clone();
                rest.remove(pos);
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                out.insert_add(rest, f.scale(&int(sign)));
            }
        }
        Ok(out)
    }

    /// Interior product with the polynomial vector field `sum_j field[j] d/dx_j`.
    pub fn interior(&self, field: &[Poly]) -> Result<PForm> {
        if field.len() != self.dim {
            return Err(Error::DimensionMismatch(self.dim, field.len()));
        }
        let mut out = PForm::zero(self.dim, self.degree.checked_sub(1).ok_or(Error::ZeroFormInput)?);
        for (j, v) in field.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            out = out.add_impl(&self.interior_basis(j)?.mul_poly(v), false);
        }
        Ok(out)
    }

    /// `i_Z` with `Z = sum x_j d/dx_j`; coefficients gain one polynomial degree.
    pub fn interior_radial(&self) -> Result<PForm> {
        let z: Vec<Poly> = (0..self.dim).map(|j| Poly::var(self.dim, j)).collect();
        self.interior(&z)
    }

    /// Codifferential `delta a = -sum_j i_{e_j}(d a / dx_j)`.
    pub fn codifferential(&self) -> Result<PForm> {
        if self.degree == 0 {
            return Err(Error::ZeroFormInput);
        }
        let mut out = PForm::zero(self.dim, self.degree - 1);
        for j in 0..self.dim {
            let dj = self.map_coefficients(|f| f.partial(j));
            out = out.add_impl(&dj.interior_basis(j)?, true);
        }
        Ok(out)
    }

    /// Hodge Laplacian `d delta + delta d` (geometer's sign).
    pub fn hodge_laplacian(&self) -> PForm {
        let mut out = PForm::zero(self.dim, self.degree);
        if self.degree > 0 {
            let dd = self
                .codifferential()
                .expect("degree checked")
                .exterior_d()
                .expect("degree decreased then increased");
            out = out.add_impl(&dd, false);
        }
        if let Some(d) = self.d_or_none() {
            out = out.add_impl(&d.codifferential().expect("d raised the degree"), false);
        }
        debug_assert_eq!(out, self.componentwise_laplacian(), "Hodge Laplacian must be componentwise on flat space");
        out
    }

    /// `-sum_j d^2/dx_j^2` applied to each component.
    pub fn componentwise_laplacian(&self) -> PForm {
        self.map_coefficients(|f| -f.flat_laplacian())
    }

    /// Hodge star in the orthonormal coordinate coframe: `dx_I ^ *dx_I = vol`.
    pub fn hodge_star(&self) -> PForm {
        let mut out = PForm::zero(self.dim, self.dim - self.degree);
        for (idx, f) in &self.comps {
            let comp: Indices = (0..self.dim).filter(|i| !idx.contains(i)).collect();
            let sign = shuffle_sign(idx, &comp);
            out.insert_add(comp, f.scale(&int(sign)));
        }
        out
    }

    /// `pi(a) = r^2 a - rho ^ i_Z a`; satisfies `i_Z pi(a) = 0` identically.
    pub fn radial_horizontal_projection(&self) -> PForm {
        let r2 = Poly::radius_squared(self.dim);
        let scaled = self.mul_poly(&r2);
        if self.degree == 0 {
            return scaled;
        }
        let iz = self.interior_radial().expect("degree >= 1");
        let rho = PForm::radial_one_form(self.dim);
        let radial = rho.wedge(&iz).expect("degree preserved");
        scaled.add_impl(&radial, true)
    }

    /// Same projection for the quadric `g`: `|grad g|^2 a - dg ^ i_{grad g} a`.
    pub fn quadric_horizontal_projection(&self, g: &Poly) -> PForm {
        let grad: Vec<Poly> = (0..self.dim).map(|j| g.partial(j)).collect();
        let norm2 = grad.iter().fold(Poly::zero(self.dim), |acc, v| &acc + &(v * v));
        let scaled = self.mul_poly(&norm2);
        if self.degree == 0 {
            return scaled;
        }
        let inner = self.interior(&grad).expect("degree >= 1");
        let mut dg = PForm::zero(self.dim, 1);
        for (j, v) in grad.into_iter().enumerate() {
            dg.insert_add(vec![j], v);
        }
        scaled.add_impl(&dg.wedge(&inner).expect("degree preserved"), true)
    }

    /// True iff the pullback of `self` to the unit sphere vanishes.
    pub fn pullback_vanishes_on_sphere(&self) -> bool {
        self.radial_horizontal_projection().comps.values().all(Poly::vanishes_on_sphere)
    }

    /// Decide `J^* a = J^* b` on the unit sphere.
    pub fn pullback_equal_on_sphere(&self, other: &PForm) -> Result<bool> {
        Ok(self.checked_sub(other)?.pullback_vanishes_on_sphere())
    }

    /// True iff every component vanishes on the unit sphere.
    pub fn vanishes_on_sphere(&self) -> bool {
        self.comps.values().all(Poly::vanishes_on_sphere)
    }

    /// Componentwise remainder modulo `r^2 - 1`.
    pub fn reduce_on_sphere(&self) -> PForm {
        self.map_coefficients(Poly::reduce_on_sphere)
    }

    /// Pointwise inner product in the orthonormal coframe metric.
    pub fn pointwise_inner(&self, other: &PForm) -> Result<Poly> {
        self.check_same_shape(other)?;
        let mut s = Poly::zero(self.dim);
        for (idx, f) in &self.comps {
            if let Some(g) = other.comps.get(idx) {
                s = &s + &(f * g);
            }
        }
        Ok(s)
    }

    /// Value of the form at `point` on the vectors `vectors` (each of length `dim`).
    pub fn evaluate_on(&self, point: &[Rational], vectors: &[Vec<Rational>]) -> Rational {
        assert_eq!(vectors.len(), self.degree);
        let mut total = Rational::zero();
        for (idx, f) in &self.comps {
            let minor = crate::linalg::RatMatrix::from_fn(self.degree, self.degree, |r, c| vectors[c][idx[r]].clone());
            let det = if self.degree == 0 { Rational::one() } else { minor.determinant() };
            if !det.is_zero() {
                total += f.eval(point) * det;
            }
        }
        total
    }

    /// Flattened coefficients keyed by `(frame, monomial)`.
    pub fn entries(&self) -> Vec<((Indices, MultiIndex), Rational)> {
        let mut out = Vec::new();
        for (idx, f) in &self.comps {
            for (a, c) in f.terms() {
                out.push(((idx.clone(), a.clone()), c.clone()));
            }
        }
        out
    }

    /// `sum_i coeffs[i] * forms[i]`; all forms must share `dim` and `degree`.
    pub fn linear_combination(dim: usize, degree: usize, forms: &[PForm], coeffs: &[Rational]) -> PForm {
        assert_eq!(forms.len(), coeffs.len());
        let mut out = PForm::zero(dim, degree);
        for (w, c) in forms.iter().zip(coeffs) {
            if !c.is_zero() {
                out = &out + &w.scale(c);
            }
        }
        out
    }

    /// Parse the text format `(poly) * dx1^dx3 + (poly) * dx2^dx3`.
    ///
    /// A 0-form is written as a single `(poly)`; the zero form as `0`.
    pub fn parse(s: &str, dim: usize, degree: usize) -> Result<PForm> {
        if degree > dim {
            return Err(Error::DegreeOverflow(degree, dim));
        }
        let mut out = PForm::zero(dim, degree);
        let s = s.trim();
        if s == "0" {
            return Ok(out);
        }
        for term in split_top_level(s)? {
            let term = term.trim();
            let (coeff, frame) = if let Some(rest) = term.strip_prefix('(') {
                let close = matching_paren(rest).ok_or_else(|| Error::Parse(format!("unbalanced parentheses in {term:?}")))?;
                let poly = Poly::parse(&rest[..close], dim)?;
                let tail = rest[close + 1..].trim();
                let frame = match tail.strip_prefix('*') {
                    Some(f) => f.trim(),
                    None if tail.is_empty() => "",
                    None => return Err(Error::Parse(format!("expected '*' after coefficient in {term:?}"))),
                };
                (poly, frame)
            } else {
                (Poly::one(dim), term)
            };
            let indices: Vec<usize> = if frame.is_empty() {
                Vec::new()
            } else {
                frame
                    .split('^')
                    .map(|t| {
                        t.trim()
                            .strip_prefix("dx")
                            .and_then(|n| n.parse::<usize>().ok())
                            .filter(|&i| i >= 1 && i <= dim)
                            .map(|i| i - 1)
                            .ok_or_else(|| Error::Parse(format!("bad coframe factor {t:?}")))
                    })
                    .collect::<Result<_>>()?
            };
            if indices.len() != degree {
                return Err(Error::DegreeMismatch(degree, indices.len()));
            }
            out = out.add_impl(&PForm::monomial(coeff, &indices), false);
        }
        Ok(out)
    }
}

fn matching_paren(s: &str) -> Option<usize> {
    let mut depth = 1usize;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

fn split_top_level(s: &str) -> Result<Vec<&str>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse("unbalanced parentheses".into()));
                }
            }
            '+' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Parse("unbalanced parentheses".into()));
    }
    out.push(&s[start..]);
    Ok(out)
}

impl fmt::Display for PForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "0");
        }
        for (n, (idx, c)) in self.comps.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            if idx.is_empty() {
                write!(f, "({c})")?;
            } else {
                let frame: Vec<String> = idx.iter().map(|i| format!("dx{}", i + 1)).collect();
                write!(f, "({c}) * {}", frame.join("^"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PForm[R^{}, p={}]({})", self.dim, self.degree, self)
    }
}

impl<'a> Add<&'a PForm> for &'a PForm {
    type Output = PForm;
    fn add(self, rhs: &'a PForm) -> PForm {
        self.checked_add(rhs).expect("form shape mismatch")
    }
}

impl<'a> Sub<&'a PForm> for &'a PForm {
    type Output = PForm;
    fn sub(self, rhs: &'a PForm) -> PForm {
        self.checked_sub(rhs).expect("form shape mismatch")
    }
}

impl Neg for &PForm {
    type Output = PForm;
    fn neg(self) -> PForm {
        self.scale(&int(-1))
    }
}

/// Monomial forms `x^alpha dx_I` with `|alpha| = k` and `|I| = p`, in graded-lex
/// monomial order then lexicographic frame order.
pub fn monomial_forms(dim: usize, k: u32, p: usize) -> Vec<PForm> {
    let frames = index_tuples(dim, p);
    let mut out = Vec::new();
    for alpha in MultiIndex::all_of_degree(dim, k) {
        for idx in &frames {
            out.push(PForm::monomial(Poly::monomial(dim, alpha.clone(), Rational::one()), idx));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3(s: &str) -> Poly {
        Poly::parse(s, 3).unwrap()
    }

    fn xi_hat() -> PForm {
        PForm::parse("(2 - 2*x1^2 + x2^2 + x3^2) * dx1 + (-3*x1*x2) * dx2 + (-3*x1*x3) * dx3", 3, 1).unwrap()
    }

    fn v_hat() -> PForm {
        PForm::parse("(x1) * dx2^dx3 + (x2) * dx3^dx1 + (x3) * dx1^dx2", 3, 2).unwrap()
    }

    #[test]
    fn wedge_examples() {
        let a = PForm::dx(3, &[0]).wedge(&PForm::dx(3, &[1])).unwrap();
        assert_eq!(a, PForm::dx(3, &[0, 1]));
        assert!(PForm::dx(3, &[0]).wedge(&PForm::dx(3, &[0])).unwrap().is_zero());
        assert!(matches!(
            PForm::dx(3, &[0, 1]).wedge(&PForm::dx(3, &[1, 2])),
            Err(Error::DegreeOverflow(4, 3))
        ));
    }

    #[test]
    fn d_examples() {
        assert_eq!(PForm::function(Poly::var(3, 0)).exterior_d().unwrap(), PForm::dx(3, &[0]));
        assert_eq!(v_hat().exterior_d().unwrap(), PForm::volume(3).scale(&int(3)));
        // d xi_hat = 6 x2 dx1^dx2 + 6 x3 dx1^dx3 ... computed by hand:
        // d(f dx1) = f_2 dx2^dx1 + f_3 dx3^dx1 = -2x2 dx1^dx2 - 2x3 dx1^dx3,
        // d(-3x1x2 dx2) = -3x2 dx1^dx2, d(-3x1x3 dx3) = -3x3 dx1^dx3.
        let expected = PForm::parse("(-5*x2) * dx1^dx2 + (-5*x3) * dx1^dx3", 3, 2).unwrap();
        assert_eq!(xi_hat().exterior_d().unwrap(), expected);
    }

    #[test]
    fn codifferential_examples() {
        let w = PForm::monomial(Poly::var(3, 0), &[0]);
        assert_eq!(w.codifferential().unwrap(), PForm::function(Poly::constant(3, int(-1))));
        assert_eq!(xi_hat().codifferential().unwrap(), PForm::function(p3("10*x1")));
        assert!(v_hat().codifferential().unwrap().is_zero());
        assert_eq!(PForm::function(Poly::one(3)).codifferential(), Err(Error::ZeroFormInput));
    }

    #[test]
    fn laplacian_examples() {
        let f = PForm::function(p3("x1^2"));
        assert_eq!(f.hodge_laplacian(), PForm::function(Poly::constant(3, int(-2))));
        assert!(xi_hat().hodge_laplacian().is_zero());
        assert!(v_hat().hodge_laplacian().is_zero());
    }

    #[test]
    fn star_examples() {
        assert_eq!(PForm::dx(3, &[0]).hodge_star(), PForm::dx(3, &[1, 2]));
        assert_eq!(PForm::volume(3).hodge_star(), PForm::function(Poly::one(3)));
        assert_eq!(v_hat().hodge_star(), PForm::radial_one_form(3));
    }

    #[test]
    fn interior_examples() {
        assert_eq!(PForm::dx(3, &[0]).interior_radial().unwrap(), PForm::function(Poly::var(3, 0)));
        assert!(v_hat().interior_radial().unwrap().is_zero());
        assert_eq!(PForm::function(Poly::one(3)).interior_radial(), Err(Error::ZeroFormInput));
    }

    #[test]
    fn projection_examples() {
        let tangential = PForm::parse("(x2) * dx1 + (-x1) * dx2", 3, 1).unwrap();
        assert_eq!(
            tangential.radial_horizontal_projection(),
            tangential.mul_poly(&Poly::radius_squared(3))
        );
        assert!(PForm::radial_one_form(3).radial_horizontal_projection().is_zero());
    }

    #[test]
    fn pullback_examples() {
        let a = xi_hat();
        assert!(a.pullback_equal_on_sphere(&a).unwrap());
        let phi = PForm::monomial(Poly::var(3, 0), &[1]);
        let rho_phi = PForm::radial_one_form(3).wedge(&phi).unwrap();
        assert!(rho_phi.pullback_equal_on_sphere(&PForm::zero(3, 2)).unwrap());
        assert!(!PForm::dx(3, &[0]).pullback_equal_on_sphere(&PForm::zero(3, 1)).unwrap());
        assert!(PForm::dx(3, &[0]).pullback_equal_on_sphere(&PForm::dx(3, &[0, 1])).is_err());
    }

    #[test]
    fn inner_examples() {
        assert_eq!(PForm::dx(3, &[0]).pointwise_inner(&PForm::dx(3, &[0])).unwrap(), Poly::one(3));
        assert_eq!(v_hat().pointwise_inner(&v_hat()).unwrap(), Poly::radius_squared(3));
    }

    #[test]
    fn star_star_sign() {
        for dim in 1..=5 {
            for p in 0..=dim {
                let w = PForm::monomial(Poly::var(dim, 0), &(0..p).collect::<Vec<_>>());
                let sign = if (p * (dim - p)) % 2 == 0 { 1 } else { -1 };
                assert_eq!(w.hodge_star().hodge_star(), w.scale(&int(sign)));
            }
        }
    }

    #[test]
    fn text_format() {
        let w = xi_hat();
        assert_eq!(PForm::parse(&w.to_string(), 3, 1).unwrap(), w);
        let f = PForm::function(p3("x1 + 1"));
        assert_eq!(f.to_string(), "(1 + x1)");
        assert_eq!(PForm::parse("dx1^dx2", 3, 2).unwrap(), PForm::dx(3, &[0, 1]));
        assert!(PForm::parse("(x1) * dx1", 3, 2).is_err());
        assert!(PForm::parse("(x1 * dx1", 3, 1).is_err());
    }

    #[test]
    fn monomial_form_counts() {
        assert_eq!(monomial_forms(3, 1, 1).len(), 9);
        assert_eq!(monomial_forms(3, 2, 0).len(), 6);
        assert_eq!(index_tuples(5, 2).len(), 10);
    }
}
