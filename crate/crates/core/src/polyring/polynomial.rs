use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, Var};
use super::order::MonomialOrder;

pub type Coeff = BigRational;

/// Multivariate polynomial with exact rational coefficients.
///
/// The term map never holds a zero coefficient, so the zero polynomial has
/// no terms and derived equality is mathematical equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Coeff>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Coeff::one())
    }

    pub fn constant(c: Coeff) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn integer(n: i64) -> Self {
        Self::constant(Coeff::from_integer(n.into()))
    }

    pub fn var(v: Var) -> Self {
        Self::term(Monomial::var(v), Coeff::one())
    }

    pub fn term(m: Monomial, c: Coeff) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    /// Sums the given terms; repeated monomials are combined.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Coeff)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in storage order (not any particular monomial order).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    /// Terms sorted descending under `ord`.
    pub fn sorted_terms(&self, ord: &MonomialOrder) -> Vec<(&Monomial, &Coeff)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| ord.compare(b.0, a.0));
        v
    }

    pub fn leading_term(&self, ord: &MonomialOrder) -> Option<(&Monomial, &Coeff)> {
        self.terms.iter().max_by(|a, b| ord.compare(a.0, b.0))
    }

    pub fn leading_monomial(&self, ord: &MonomialOrder) -> Option<&Monomial> {
        self.leading_term(ord).map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self, ord: &MonomialOrder) -> Option<&Coeff> {
        self.leading_term(ord).map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.vars()).collect()
    }

    /// Canonical-form check used by tests: no zero coefficients, every
    /// monomial canonical.
    pub fn is_canonical(&self) -> bool {
        self.terms.iter().all(|(m, c)| !c.is_zero() && m.is_canonical())
    }

    pub fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect() }
    }

    /// `self - c·m·other`, in place.
    pub fn sub_scaled(&mut self, other: &Polynomial, m: &Monomial, c: &Coeff) {
        for (t, a) in &other.terms {
            self.add_term(t.mul(m), -(a * c));
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        (0..e).fold(Polynomial::one(), |acc, _| &acc * self)
    }

    /// Replaces `v` by a rational value.
    pub fn substitute(&self, v: Var, value: &Coeff) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let (rest, e) = m.without(v);
            out.add_term(rest, c * num_traits::pow(value.clone(), e as usize));
        }
        out
    }

    /// Replaces every variable accepted by `pick` with the same value.
    pub fn substitute_where(&self, pick: impl Fn(Var) -> bool, value: &Coeff) -> Polynomial {
        self.vars().into_iter().filter(|&v| pick(v)).fold(self.clone(), |p, v| p.substitute(v, value))
    }

    /// Collects coefficients of powers of `v`: `self = Σ_k out[k]·v^k`.
    pub fn coefficients_in(&self, v: Var) -> Vec<Polynomial> {
        let mut out = vec![Polynomial::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            let (rest, e) = m.without(v);
            out[e as usize].add_term(rest, c.clone());
        }
        out
    }

    /// Numeric evaluation with `value_of` giving each variable's value.
    pub fn eval_f64(&self, value_of: impl Fn(Var) -> f64) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let c = ratio_to_f64(c);
                m.powers().iter().fold(c, |acc, &(v, e)| acc * value_of(v).powi(e as i32))
            })
            .sum()
    }

    /// Integer content of a polynomial with rational coefficients: the
    /// positive rational `c` such that `self / c` has coprime integer
    /// coefficients.
    pub fn content(&self) -> Coeff {
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            return Coeff::one();
        }
        Coeff::new(num_gcd, den_lcm)
    }

    /// Divides out the content and fixes the sign so the leading
    /// coefficient under `ord` is positive. Returns the normalized
    /// polynomial and the scalar `s` with `self = s · normalized`.
    pub fn primitive(&self, ord: &MonomialOrder) -> (Polynomial, Coeff) {
        if self.is_zero() {
            return (Polynomial::zero(), Coeff::one());
        }
        let mut s = self.content();
        if self.leading_coefficient(ord).is_some_and(|c| c.is_negative()) {
            s = -s;
        }
        (self.scale(&s.recip()), s)
    }

    pub fn is_primitive(&self, ord: &MonomialOrder) -> bool {
        self.is_zero()
            || (self.terms.values().all(|c| c.is_integer())
                && self.content().is_one()
                && self.leading_coefficient(ord).is_some_and(|c| c.is_positive()))
    }

    /// True when `self = c · other` for some nonzero rational `c`.
    pub fn is_scalar_multiple_of(&self, other: &Polynomial) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        if self.terms.len() != other.terms.len() {
            return false;
        }
        let (m0, c0) = self.terms.iter().next().expect("nonzero");
        let Some(d0) = other.terms.get(m0) else {
            return false;
        };
        let ratio = c0 / d0;
        other.scale(&ratio) == *self
    }
}

pub(crate) fn ratio_to_f64(c: &Coeff) -> f64 {
    use num_traits::ToPrimitive;
    c.to_f64().unwrap_or_else(|| {
        // Huge numerators/denominators: scale down before converting.
        let shift = c.numer().bits().max(c.denom().bits()).saturating_sub(1000);
        let n = (c.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (c.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

impl From<Var> for Polynomial {
    fn from(v: Var) -> Self {
        Polynomial::var(v)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const L: Var = Var(0);
    const X: Var = Var(1);
    const Y: Var = Var(2);

    fn v(var: Var) -> Polynomial {
        Polynomial::var(var)
    }

    fn int(n: i64) -> Polynomial {
        Polynomial::integer(n)
    }

    #[test]
    fn add_cancels() {
        let p = &(&int(2) * &v(L)) * &v(Y) - v(X);
        assert_eq!(&p + &v(X), &(&int(2) * &v(L)) * &v(Y));
        assert_eq!(&p + &Polynomial::zero(), p);
        let q = v(Y) - v(X).pow(2);
        assert!((&q + &(-&q)).is_zero());
    }

    #[test]
    fn multiply_examples() {
        // (x - 1)(2λx - 1) = 2λx² - 2λx - x + 1
        let lhs = (v(X) - int(1)) * (int(2) * v(L) * v(X) - int(1));
        let rhs = int(2) * v(L) * v(X).pow(2) - int(2) * v(L) * v(X) - v(X) + int(1);
        assert_eq!(lhs, rhs);
        assert_eq!(&rhs * &Polynomial::one(), rhs);
        assert_eq!((v(X) + v(Y)) * (v(X) - v(Y)), v(X).pow(2) - v(Y).pow(2));
        assert!(lhs.is_canonical());
    }

    #[test]
    fn primitive_normalizes_content_and_sign() {
        let ord = MonomialOrder::lex([L, X, Y]);
        let p = int(-4) * v(Y) + int(6) * v(X).pow(2) - int(2);
        let (q, s) = p.primitive(&ord);
        assert_eq!(q, int(2) * v(Y) - int(3) * v(X).pow(2) + int(1));
        assert_eq!(s, Coeff::from_integer((-2).into()));
        assert!(q.is_primitive(&ord));
        let half = Polynomial::constant(Coeff::new(1.into(), 2.into()));
        let (r, _) = (&half * &v(X) + Polynomial::constant(Coeff::new(1.into(), 3.into()))).primitive(&ord);
        assert_eq!(r, int(3) * v(X) + int(2));
    }

    #[test]
    fn substitution_and_coefficients() {
        let p = int(2) * v(L) * v(X).pow(2) - int(2) * v(L) * v(X) - v(X) + int(1);
        assert!(p.substitute(X, &Coeff::one()).is_zero());
        let cs = p.coefficients_in(X);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[2], int(2) * v(L));
        assert_eq!(cs[1], int(-2) * v(L) - int(1));
        assert_eq!(cs[0], int(1));
        assert_eq!(p.eval_f64(|w| if w == L { 1.0 } else { 0.5 }), 0.5 - 1.0 - 0.5 + 1.0);
    }

    #[test]
    fn scalar_multiple_detection() {
        let p = v(X) - int(1);
        assert!((int(-3) * p.clone()).is_scalar_multiple_of(&p));
        assert!(!(v(X) + int(1)).is_scalar_multiple_of(&p));
        assert!(!p.is_scalar_multiple_of(&Polynomial::zero()));
    }
}
