//! Dense univariate polynomials over ℚ with Sturm-sequence root isolation.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::polyring::{ratio_to_f64, Polynomial, Var};

type Q = BigRational;

/// Coefficients low to high, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Q>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Q::from_integer(c.into())).collect())
    }

    /// Views `p` as a polynomial in `v`; `None` if another variable occurs.
    pub fn from_polynomial(p: &Polynomial, v: Var) -> Option<Self> {
        let cs = p.coefficients_in(v);
        let mut out = Vec::with_capacity(cs.len());
        for c in cs {
            if !c.is_constant() {
                return None;
            }
            out.push(c.terms().next().map(|(_, c)| c.clone()).unwrap_or_else(Q::zero));
        }
        Some(Self::new(out))
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + ratio_to_f64(c))
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * Q::from_integer(k.into())).collect())
    }

    /// Euclidean division: `(quotient, remainder)`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.coeffs.clone();
        let dd = d.degree();
        let lead = d.leading();
        if r.len() < d.coeffs.len() {
            return (Self::new(vec![]), self.clone());
        }
        let mut q = vec![Q::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] / &lead;
            if !c.is_zero() {
                for (i, dc) in d.coeffs.iter().enumerate() {
                    r[k + i] -= &c * dc;
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn monic(&self) -> Self {
        let l = self.leading();
        Self::new(self.coeffs.iter().map(|c| c / &l).collect())
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Same roots, each simple.
    pub fn square_free(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            self.clone()
        } else {
            self.div_rem(&g).0
        }
    }

    /// Integer multiple with coprime integer coefficients and positive
    /// leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let den = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &den).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if self.leading().is_negative() { -BigInt::one() } else { BigInt::one() };
        if g.is_zero() {
            return ints;
        }
        ints.into_iter().map(|c| c / &g * &sign).collect()
    }

    fn sturm_sequence(&self) -> Vec<Self> {
        let mut seq = vec![self.clone(), self.derivative()];
        while !seq[seq.len() - 1].is_zero() {
            let n = seq.len();
            let r = seq[n - 2].div_rem(&seq[n - 1]).1;
            seq.push(Self::new(r.coeffs.into_iter().map(|c| -c).collect()));
        }
        seq.pop();
        seq
    }

    /// Distinct real roots in the half-open interval `(a, b]`.
    pub fn count_roots(&self, a: &Q, b: &Q) -> usize {
        if self.is_zero() {
            return 0;
        }
        let seq = self.square_free().sturm_sequence();
        count_in(&seq, a, b)
    }

    /// Bound `B` with every real root in `(-B, B)`.
    pub fn root_bound(&self) -> Q {
        let lead = self.leading().abs();
        let m = self.coeffs[..self.degree()].iter().map(|c| c.abs() / &lead).max().unwrap_or_else(Q::zero);
        m + Q::one() + Q::one()
    }

    /// Disjoint intervals `(lo, hi]`, ascending, each containing exactly one
    /// distinct real root, covering all roots in `(a, b]`.
    pub fn isolate_roots(&self, a: &Q, b: &Q) -> Vec<(Q, Q)> {
        let seq = self.square_free().sturm_sequence();
        let mut out = Vec::new();
        let mut stack = vec![(a.clone(), b.clone())];
        while let Some((lo, hi)) = stack.pop() {
            match count_in(&seq, &lo, &hi) {
                0 => {}
                1 => out.push((lo, hi)),
                _ => {
                    let mid = (&lo + &hi) / Q::from_integer(2.into());
                    stack.push((lo, mid.clone()));
                    stack.push((mid, hi));
                }
            }
        }
        out.sort_by(|x, y| x.0.cmp(&y.0));
        out
    }

    /// Shrinks an isolating interval `(lo, hi]` to width at most `tol`.
    pub fn refine(&self, lo: &Q, hi: &Q, tol: &Q) -> (Q, Q) {
        let sf = self.square_free();
        let (mut lo, mut hi) = (lo.clone(), hi.clone());
        let hi_sign = sf.eval(&hi).signum();
        if hi_sign.is_zero() {
            return (hi.clone(), hi);
        }
        let two = Q::from_integer(2.into());
        // One simple root in (lo, hi] and none at hi: the sign differs at lo.
        while &hi - &lo > *tol {
            let mid = (&lo + &hi) / &two;
            let v = sf.eval(&mid).signum();
            if v.is_zero() {
                return (mid.clone(), mid);
            }
            if v == hi_sign {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (lo, hi)
    }

    /// All distinct real roots in `[a, b]`, each accurate to `tol`.
    pub fn real_roots_in(&self, a: &Q, b: &Q, tol: &Q) -> Vec<f64> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut roots = Vec::new();
        if self.eval(a).is_zero() {
            roots.push(ratio_to_f64(a));
        }
        for (lo, hi) in self.isolate_roots(a, b) {
            let (lo, hi) = self.refine(&lo, &hi, tol);
            roots.push(ratio_to_f64(&((&lo + &hi) / Q::from_integer(2.into()))));
        }
        roots
    }

    /// All distinct real roots, ascending.
    pub fn real_roots(&self, tol: &Q) -> Vec<f64> {
        if self.degree() == 0 {
            return Vec::new();
        }
        let b = self.root_bound();
        self.real_roots_in(&-b.clone(), &b, tol)
    }

    /// Rational roots of a polynomial whose primitive integer form has
    /// modest coefficients; `None` when the search would be too large.
    pub fn rational_roots(&self) -> Option<Vec<Q>> {
        let ints = self.primitive_integer();
        let mut roots = Vec::new();
        let first_nonzero = ints.iter().position(|c| !c.is_zero())?;
        if first_nonzero > 0 {
            roots.push(Q::zero());
        }
        let ints = &ints[first_nonzero..];
        if ints.len() <= 1 {
            return Some(roots);
        }
        let limit = BigInt::from(1_000_000_000_000i64);
        let (c0, cn) = (ints[0].abs(), ints[ints.len() - 1].abs());
        if c0 > limit || cn > limit {
            return None;
        }
        let p = Self::new(ints.iter().map(|c| Q::from_integer(c.clone())).collect());
        for num in divisors(&c0) {
            for den in divisors(&cn) {
                for sign in [1, -1] {
                    let r = Q::new(BigInt::from(sign) * &num, den.clone());
                    if p.eval(&r).is_zero() && !roots.contains(&r) {
                        roots.push(r);
                    }
                }
            }
        }
        roots.sort();
        Some(roots)
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.to_u64().expect("bounded by caller");
    let mut out = Vec::new();
    let r = n.sqrt();
    for d in 1..=r {
        if n.is_multiple_of(d) {
            out.push(BigInt::from(d));
            if d != n / d {
                out.push(BigInt::from(n / d));
            }
        }
    }
    out
}

fn sign_changes(seq: &[UniPoly], x: &Q) -> usize {
    let mut last = 0i32;
    let mut changes = 0;
    for p in seq {
        let v = p.eval(x);
        let s = if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        };
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

/// Sturm count on `(a, b]` for a square-free polynomial's sequence.
fn count_in(seq: &[UniPoly], a: &Q, b: &Q) -> usize {
    sign_changes(seq, a).saturating_sub(sign_changes(seq, b))
}

/// Splits `n > 0` as `k² · m` with `m` free of square factors below 10⁶.
pub fn extract_square(n: &BigInt) -> (BigInt, BigInt) {
    let mut m = n.clone();
    let mut k = BigInt::one();
    let mut p = BigInt::from(2);
    let limit = BigInt::from(1_000_000);
    while &p * &p <= m && p <= limit {
        let sq = &p * &p;
        while (&m % &sq).is_zero() {
            m /= &sq;
            k *= &p;
        }
        p += 1;
    }
    (k, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn counts_and_isolates() {
        // (x - 1)(x - 2)(x + 3)
        let p = UniPoly::from_ints(&[6, -7, 0, 1]);
        assert_eq!(p.count_roots(&q(0, 1), &q(5, 1)), 2);
        assert_eq!(p.count_roots(&q(-5, 1), &q(5, 1)), 3);
        assert_eq!(p.count_roots(&q(1, 1), &q(2, 1)), 1);
        let roots = p.real_roots(&q(1, 1 << 50));
        assert_eq!(roots.len(), 3);
        for (r, want) in roots.iter().zip([-3.0, 1.0, 2.0]) {
            assert!((r - want).abs() < 1e-12, "{r} vs {want}");
        }
    }

    #[test]
    fn repeated_roots_count_once() {
        // (x - 1)² (x + 1)
        let p = UniPoly::from_ints(&[1, -1, -1, 1]);
        assert_eq!(p.count_roots(&q(-2, 1), &q(2, 1)), 2);
        assert_eq!(p.square_free(), UniPoly::from_ints(&[-1, 0, 1]));
    }

    #[test]
    fn irrational_root_refinement() {
        // 3λ² − λ − 3 has largest root (1 + √37)/6.
        let p = UniPoly::from_ints(&[-3, -1, 3]);
        let roots = p.real_roots(&q(1, 1 << 55));
        let want = (1.0 + 37f64.sqrt()) / 6.0;
        assert!((roots[1] - want).abs() < 1e-14);
    }

    #[test]
    fn rational_root_search() {
        let p = UniPoly::from_ints(&[0, -12, -4, 12]); // 4λ(3λ² − λ − 3)
        assert_eq!(p.rational_roots().unwrap(), vec![q(0, 1)]);
        let p = UniPoly::from_ints(&[-1, 2]);
        assert_eq!(p.rational_roots().unwrap(), vec![q(1, 2)]);
        let p = UniPoly::from_ints(&[3, -8, 4]); // (2x − 1)(2x − 3)
        assert_eq!(p.rational_roots().unwrap(), vec![q(1, 2), q(3, 2)]);
    }

    #[test]
    fn euclid() {
        let a = UniPoly::from_ints(&[-1, 0, 1]);
        let b = UniPoly::from_ints(&[-1, 1]);
        let (qt, r) = a.div_rem(&b);
        assert_eq!(qt, UniPoly::from_ints(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&UniPoly::from_ints(&[1, 2, 1])), UniPoly::from_ints(&[1, 1]));
    }

    #[test]
    fn square_extraction() {
        assert_eq!(extract_square(&BigInt::from(4)), (BigInt::from(2), BigInt::from(1)));
        assert_eq!(extract_square(&BigInt::from(72)), (BigInt::from(6), BigInt::from(2)));
        assert_eq!(extract_square(&BigInt::from(37)), (BigInt::from(1), BigInt::from(37)));
    }
}
