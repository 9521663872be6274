//! Exact certification of the smallest root of `det(S - t B)`.
//!
//! The characteristic polynomial is recovered by exact interpolation, a
//! rational candidate is read off the floating-point estimate by continued
//! fractions, and a Sturm count proves that no smaller root exists.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::linalg::RatMatrix;
use crate::poly::{int, to_f64, Rational};

/// Dense univariate polynomial, lowest coefficient first, no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly(Vec<Rational>);

impl UniPoly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        UniPoly(c)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * int(i as i64)).collect())
    }

    fn neg(&self) -> UniPoly {
        UniPoly(self.0.iter().map(|c| -c).collect())
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.0[dd].clone();
        let mut r = self.0.clone();
        let mut q = vec![Rational::zero(); r.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1;
            let c = &r[k] / &lead;
            if !c.is_zero() {
                for (i, dc) in d.0.iter().enumerate() {
                    r[k - dd + i] -= &c * dc;
                }
                q[k - dd] = c;
            }
            r.pop();
        }
        (UniPoly::new(q), UniPoly::new(r))
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a
    }

    /// `self / gcd(self, self')`: same roots, all simple.
    pub fn squarefree(&self) -> UniPoly {
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            self.clone()
        } else {
            self.div_rem(&g).0
        }
    }

    /// Upper bound on the modulus of every root.
    pub fn cauchy_bound(&self) -> Rational {
        let n = self.degree().expect("nonzero polynomial");
        let lead = self.0[n].abs();
        let m = self.0[..n].iter().map(|c| c.abs() / &lead).max().unwrap_or_else(Rational::zero);
        m + Rational::one()
    }

    fn sturm_chain(&self) -> Vec<UniPoly> {
        let mut chain = vec![self.clone(), self.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                return chain;
            }
            let r = chain[n - 2].div_rem(&chain[n - 1]).1.neg();
            if r.is_zero() {
                return chain;
            }
            chain.push(r);
        }
    }

    /// Number of distinct real roots in `(a, b]`.
    pub fn count_roots(&self, a: &Rational, b: &Rational) -> usize {
        let chain = self.sturm_chain();
        let variations = |t: &Rational| {
            let signs: Vec<bool> = chain.iter().map(|p| p.eval(t)).filter(|v| !v.is_zero()).map(|v| v.is_positive()).collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        variations(a) - variations(b)
    }
}

/// Coefficients of `det(s - t b)` from exact values at `t = 0, ..., m`.
pub fn characteristic_polynomial(s: &RatMatrix, b: &RatMatrix) -> UniPoly {
    let m = s.rows;
    let xs: Vec<Rational> = (0..=m).map(|i| int(i as i64)).collect();
    let ys: Vec<Rational> = xs.iter().map(|t| s.sub(&b.scale(t)).determinant()).collect();
    // Newton divided differences, then expand to the monomial basis.
    let mut dd = ys.clone();
    for j in 1..=m {
        for i in (j..=m).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut coeffs = vec![Rational::zero(); m + 1];
    for i in (0..=m).rev() {
        // coeffs = coeffs * (t - x_i) + dd[i]
        let mut next = vec![Rational::zero(); m + 1];
        for k in 0..m {
            next[k + 1] += &coeffs[k];
            next[k] -= &coeffs[k] * &xs[i];
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    UniPoly::new(coeffs)
}

/// Continued-fraction convergents of `x` with denominator at most `max_den`.
pub fn convergents(x: f64, max_den: i64) -> Vec<Rational> {
    let mut out = Vec::new();
    if !x.is_finite() {
        return out;
    }
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        let ai = BigInt::from(a as i64);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        if k2 > BigInt::from(max_den) {
            break;
        }
        out.push(Rational::new(h2.clone(), k2.clone()));
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = r - a;
        if frac.abs() < 1e-15 {
            break;
        }
        r = 1.0 / frac;
    }
    out
}

/// Proof that `value` is the smallest root of a characteristic polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct RootCertificate {
    pub value: Rational,
    pub polynomial: UniPoly,
}

/// Try to prove that the smallest real root of `chi` is a rational close to
/// `estimate`. Returns `None` when no candidate passes.
pub fn certify_smallest_root(chi: &UniPoly, estimate: f64, max_den: i64) -> Option<RootCertificate> {
    chi.degree().filter(|&d| d > 0)?;
    let sqf = chi.squarefree();
    let lower = -sqf.cauchy_bound();
    for c in convergents(estimate, max_den).into_iter().rev() {
        let close = (to_f64(&c) - estimate).abs() <= 1e-6 * estimate.abs().max(1.0);
        if close && chi.eval(&c).is_zero() && sqf.count_roots(&lower, &c) == 1 {
            return Some(RootCertificate { value: c, polynomial: chi.clone() });
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn up(c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&v| int(v)).collect())
    }

    #[test]
    fn sturm_counts_roots() {
        // (t - 1)^2 (t - 3) (t + 2)
        let p = up(&[-6, 11, -3, -3, 1]);
        let lo = int(-100);
        assert_eq!(p.squarefree().count_roots(&lo, &int(100)), 3);
        assert_eq!(p.squarefree().count_roots(&lo, &int(1)), 2);
        assert_eq!(p.squarefree().count_roots(&rat(3, 2), &rat(5, 2)), 0);
    }

    #[test]
    fn characteristic_polynomial_of_a_pencil() {
        let s = RatMatrix::from_fn(2, 2, |i, j| if i == j { int(2 + i as i64) } else { Rational::zero() });
        let b = RatMatrix::identity(2);
        // (2 - t)(3 - t)
        assert_eq!(characteristic_polynomial(&s, &b), up(&[6, -5, 1]));
    }

    #[test]
    fn certifies_five_thirds_and_rejects_wrong_estimates() {
        // 3 (3t - 5)(t - 4)
        let chi = UniPoly::new(vec![int(60), int(-51), int(9)]);
        let cert = certify_smallest_root(&chi, 5.0 / 3.0 + 1e-12, 1_000_000_000).unwrap();
        assert_eq!(cert.value, rat(5, 3));
        assert!(certify_smallest_root(&chi, 4.0, 1_000_000_000).is_none());
        assert!(certify_smallest_root(&chi, 1.7, 1_000_000_000).is_none());
    }
}
