//! Buchberger's algorithm producing the reduced Gröbner basis.
//!
//! Critical pairs are processed by ascending lcm of leading monomials (the
//! normal strategy) and pairs with coprime leading monomials are skipped.
//! Basis elements are kept primitive with integer coefficients.

use std::cmp::Ordering;

use log::debug;
use thiserror::Error;

use crate::polyring::{reduce, Monomial, MonomialOrder, Polynomial};

/// Safety valve on the total number of terms across the working basis.
pub const DEFAULT_TERM_LIMIT: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("all generators are zero")]
    EmptyIdeal,
    #[error("basis grew to {terms} terms, above the limit of {limit}; the system is too large for this solver")]
    TermLimitExceeded { terms: usize, limit: usize },
}

#[derive(Clone, Debug)]
pub struct BuchbergerOptions {
    pub term_limit: usize,
    /// Log every processed pair at `debug` level.
    pub trace: bool,
}

impl Default for BuchbergerOptions {
    fn default() -> Self {
        Self { term_limit: DEFAULT_TERM_LIMIT, trace: false }
    }
}

/// A reduced Gröbner basis, sorted by leading monomial ascending.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    elements: Vec<Polynomial>,
    order: MonomialOrder,
    source: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// The generators the basis was computed from.
    pub fn source(&self) -> &[Polynomial] {
        &self.source
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Normal form of `f` modulo the basis.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        reduce(f, &self.elements, &self.order).remainder
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }
}

pub fn is_member(f: &Polynomial, gb: &GroebnerBasis) -> bool {
    gb.contains(f)
}

/// `S(f, g) = (L/lt f)·f − (L/lt g)·g` with `L` the lcm of leading monomials.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, ord: &MonomialOrder) -> Polynomial {
    let (fm, fc) = f.leading_term(ord).expect("S-polynomial of zero");
    let (gm, gc) = g.leading_term(ord).expect("S-polynomial of zero");
    let lcm = fm.lcm(gm);
    let a = f.mul_term(&lcm.div(fm).expect("lcm"), &fc.recip());
    let b = g.mul_term(&lcm.div(gm).expect("lcm"), &gc.recip());
    a - b
}

/// True when every S-polynomial of `basis` reduces to zero modulo `basis`.
pub fn satisfies_buchberger_criterion(basis: &[Polynomial], ord: &MonomialOrder) -> bool {
    (0..basis.len()).all(|i| {
        (i + 1..basis.len()).all(|j| reduce(&s_polynomial(&basis[i], &basis[j], ord), basis, ord).remainder.is_zero())
    })
}

pub fn buchberger(generators: &[Polynomial], ord: &MonomialOrder) -> Result<GroebnerBasis, GroebnerError> {
    buchberger_with(generators, ord, &BuchbergerOptions::default())
}

pub fn buchberger_with(
    generators: &[Polynomial],
    ord: &MonomialOrder,
    opts: &BuchbergerOptions,
) -> Result<GroebnerBasis, GroebnerError> {
    let mut basis: Vec<Polynomial> = generators.iter().filter(|g| !g.is_zero()).map(|g| g.primitive(ord).0).collect();
    if basis.is_empty() {
        return Err(GroebnerError::EmptyIdeal);
    }

    let lead = |p: &Polynomial| p.leading_monomial(ord).expect("nonzero").clone();
    let mut leads: Vec<Monomial> = basis.iter().map(lead).collect();
    let mut pairs: Vec<(Monomial, usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((leads[i].lcm(&leads[j]), i, j));
        }
    }

    let mut processed = 0usize;
    while !pairs.is_empty() {
        let pick = (0..pairs.len())
            .min_by(|&a, &b| {
                let (la, ia, ja) = &pairs[a];
                let (lb, ib, jb) = &pairs[b];
                match ord.compare(la, lb) {
                    Ordering::Equal => (ja, ia).cmp(&(jb, ib)),
                    o => o,
                }
            })
            .expect("nonempty");
        let (_, i, j) = pairs.swap_remove(pick);
        processed += 1;

        if leads[i].is_coprime(&leads[j]) {
            if opts.trace {
                debug!("pair ({i}, {j}): skipped, coprime leading monomials");
            }
            continue;
        }

        let s = s_polynomial(&basis[i], &basis[j], ord);
        let r = reduce(&s, &basis, ord).remainder;
        if r.is_zero() {
            if opts.trace {
                debug!("pair ({i}, {j}): reduces to 0");
            }
            continue;
        }

        let r = r.primitive(ord).0;
        let k = basis.len();
        if opts.trace {
            debug!("pair ({i}, {j}): new element {k} with {} terms", r.num_terms());
        }
        leads.push(lead(&r));
        basis.push(r);
        for m in 0..k {
            pairs.push((leads[m].lcm(&leads[k]), m, k));
        }

        let terms: usize = basis.iter().map(Polynomial::num_terms).sum();
        if terms > opts.term_limit {
            return Err(GroebnerError::TermLimitExceeded { terms, limit: opts.term_limit });
        }
    }
    if opts.trace {
        debug!("processed {processed} pairs; {} elements before inter-reduction", basis.len());
    }

    Ok(GroebnerBasis { elements: normalize_basis(&basis, ord), order: ord.clone(), source: generators.to_vec() })
}

/// Turns a Gröbner basis into the reduced one: drops elements whose leading
/// monomial is divisible by another's, fully reduces every tail, and makes
/// each element primitive with a positive leading coefficient.
pub fn normalize_basis(raw: &[Polynomial], ord: &MonomialOrder) -> Vec<Polynomial> {
    let mut polys: Vec<Polynomial> = raw.iter().filter(|p| !p.is_zero()).map(|p| p.primitive(ord).0).collect();

    let leads: Vec<Monomial> = polys.iter().map(|p| p.leading_monomial(ord).expect("nonzero").clone()).collect();
    let keep: Vec<bool> = (0..polys.len())
        .map(|i| !(0..polys.len()).any(|j| j != i && leads[j].divides(&leads[i]) && (leads[j] != leads[i] || j < i)))
        .collect();
    let mut k = 0;
    polys.retain(|_| {
        k += 1;
        keep[k - 1]
    });

    for i in 0..polys.len() {
        let others: Vec<Polynomial> =
            polys.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p.clone()).collect();
        let r = reduce(&polys[i], &others, ord).remainder;
        polys[i] = r.primitive(ord).0;
    }

    polys.sort_by(|a, b| {
        ord.compare(a.leading_monomial(ord).expect("nonzero"), b.leading_monomial(ord).expect("nonzero"))
    });
    polys
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse, NameTable, Var};

    fn names() -> NameTable {
        NameTable::new(["l", "x", "y"])
    }

    fn p(t: &str) -> Polynomial {
        parse(t, &names()).unwrap()
    }

    fn lex_lxy() -> MonomialOrder {
        MonomialOrder::lex([Var(0), Var(1), Var(2)])
    }

    #[test]
    fn s_polynomial_examples() {
        let ord = lex_lxy();
        let f = p("y - x^2");
        assert!(s_polynomial(&f, &f, &ord).is_zero());
        // Here y ≺ x is wanted, so use a local order with x on top.
        let xy = MonomialOrder::lex([Var(2), Var(1)]);
        assert_eq!(s_polynomial(&p("x - y"), &p("y^2"), &xy), p("-y^3"));
    }

    #[test]
    fn principal_ideal() {
        let gb = buchberger(&[p("x - 1")], &lex_lxy()).unwrap();
        assert_eq!(gb.elements(), &[p("x - 1")]);
    }

    #[test]
    fn empty_ideal_rejected() {
        assert_eq!(buchberger(&[Polynomial::zero()], &lex_lxy()).unwrap_err(), GroebnerError::EmptyIdeal);
        assert_eq!(buchberger(&[], &lex_lxy()).unwrap_err(), GroebnerError::EmptyIdeal);
    }

    #[test]
    fn first_approximation_basis() {
        let ord = lex_lxy();
        let gb = buchberger(&[p("2*l*y - 2*l*x - x + 1"), p("y - x^2")], &ord).unwrap();
        assert_eq!(gb.elements(), &[p("(x - 1)*(2*l*x - 1)"), p("y - x^2")]);
        assert!(gb.contains(&p("2*l*y - 2*l*x - x + 1")));
        assert!(gb.contains(&Polynomial::zero()));
        assert!(!gb.contains(&p("l")));
    }

    #[test]
    fn normalization() {
        let ord = lex_lxy();
        assert_eq!(normalize_basis(&[p("x - 1"), p("2*x - 2")], &ord), vec![p("x - 1")]);
        assert_eq!(normalize_basis(&[p("y - x^2"), p("y - x^2")], &ord), vec![p("y - x^2")]);
        assert_eq!(normalize_basis(&[p("-3*y + 3*x"), p("x^2 - x")], &ord), vec![p("x^2 - x"), p("y - x")]);
    }

    #[test]
    fn term_limit_trips() {
        let opts = BuchbergerOptions { term_limit: 3, trace: true };
        let err = buchberger_with(&[p("2*l*y - 2*l*x - x + 1"), p("y - x^2")], &lex_lxy(), &opts).unwrap_err();
        assert!(matches!(err, GroebnerError::TermLimitExceeded { limit: 3, .. }));
    }
}
