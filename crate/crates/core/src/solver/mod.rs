//! From a reduced basis to `ν(o)`, the density and the critical bound.
//!
//! Under the registry's lex order λ and `x = ν(o)` are the two lowest
//! variables, so the basis elements free of every other variable generate
//! the elimination ideal in `ℚ[λ, x]`. That element always carries the
//! factor `x − 1` (the all-vacant solution); what remains is the nontrivial
//! branch.

pub mod univariate;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::closures::{build_ideal, ApproximationOrder, Ideal};
use crate::groebner::{buchberger, GroebnerBasis, GroebnerError};
use crate::identities::{VariableRegistry, SINGLE_SITE};
use crate::polyring::{exact_divide, format, int, ratio_to_f64, MonomialOrder, PolyError, Polynomial, Var, VarNames};

use univariate::{extract_square, UniPoly};

type Q = BigRational;

/// Half-width of the slack around `[0, 1]` accepted for a root before it is
/// clamped; absorbs the rounding of a floating-point λ near λ_c.
pub const ROOT_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error("no basis element involves only λ and x; the closure system does not determine ν(o)")]
    NoEliminationElement,
    #[error("{} basis elements involve only λ and x", .0.len())]
    MultipleElements(Vec<Polynomial>),
    #[error("elimination polynomial lacks the factor x - 1")]
    NotDivisible,
    #[error("only the trivial solution x = 1 exists")]
    Degenerate,
    #[error("no root in [0, 1] at λ = {lambda}")]
    NoPhysicalRoot { lambda: f64 },
    #[error("several roots in [0, 1] at λ = {lambda}: {roots:?}")]
    AmbiguousRoot { lambda: f64, roots: Vec<f64> },
    #[error("root finder and quadratic formula disagree at λ = {lambda}: {sturm} vs {closed_form}")]
    CrossCheckFailed { lambda: f64, sturm: f64, closed_form: f64 },
    #[error("the nontrivial branch never meets x = 1 for real λ")]
    NoCriticalValue,
}

fn lambda_x_order() -> MonomialOrder {
    MonomialOrder::lex([Var::LAMBDA, SINGLE_SITE])
}

/// The unique basis element whose variables lie in `{λ, x}`.
pub fn elimination_polynomial(gb: &GroebnerBasis) -> Result<Polynomial, SolverError> {
    let mut found: Vec<Polynomial> = gb
        .elements()
        .iter()
        .filter(|p| p.vars().iter().all(|&v| v == Var::LAMBDA || v == SINGLE_SITE))
        .cloned()
        .collect();
    match found.len() {
        0 => Err(SolverError::NoEliminationElement),
        1 => Ok(found.pop().expect("one")),
        _ => Err(SolverError::MultipleElements(found)),
    }
}

/// Divides out `x − 1`; the quotient is made primitive with positive leading
/// coefficient.
pub fn strip_trivial(elim: &Polynomial) -> Result<Polynomial, SolverError> {
    let trivial = Polynomial::var(SINGLE_SITE) - int(1);
    let q = exact_divide(elim, &trivial).map_err(|e| match e {
        PolyError::NotDivisible | PolyError::DivisionByZero => SolverError::NotDivisible,
        _ => unreachable!("exact_divide only fails by divisibility"),
    })?;
    if q.degree_in(SINGLE_SITE) == 0 {
        return Err(SolverError::Degenerate);
    }
    Ok(q.primitive(&lambda_x_order()).0)
}

/// The root of `nontrivial(λ0, x)` in `[0, 1]`, refined by Sturm bisection
/// to well below 1e-12. For quadratics the value is also checked against
/// the quadratic formula.
pub fn branch_value(nontrivial: &Polynomial, lambda: &Q) -> Result<f64, SolverError> {
    let lambda_f = ratio_to_f64(lambda);
    let at = nontrivial.substitute(Var::LAMBDA, lambda);
    let uni = UniPoly::from_polynomial(&at, SINGLE_SITE).expect("nontrivial factor is in λ and x only");
    if uni.is_zero() {
        return Err(SolverError::AmbiguousRoot { lambda: lambda_f, roots: vec![] });
    }
    let slack = Q::from_float(ROOT_SLACK).expect("finite");
    let tol = Q::new(BigInt::one(), BigInt::one() << 52);
    let roots = uni.real_roots_in(&-slack.clone(), &(Q::one() + &slack), &tol);
    let x = match roots.as_slice() {
        [] => return Err(SolverError::NoPhysicalRoot { lambda: lambda_f }),
        [r] => r.clamp(0.0, 1.0),
        _ => return Err(SolverError::AmbiguousRoot { lambda: lambda_f, roots }),
    };
    if uni.degree() == 2 {
        let [c, b, a] = [0, 1, 2].map(|k| ratio_to_f64(&uni.coeffs()[k]));
        let nearest = quadratic_roots(a, b, c)
            .into_iter()
            .map(|r| r.clamp(0.0, 1.0))
            .min_by(|p, q| (p - x).abs().total_cmp(&(q - x).abs()));
        match nearest {
            Some(r) if (r - x).abs() <= 1e-9 * x.abs().max(1.0) => {}
            other => {
                return Err(SolverError::CrossCheckFailed {
                    lambda: lambda_f,
                    sturm: x,
                    closed_form: other.unwrap_or(f64::NAN),
                })
            }
        }
    }
    Ok(x)
}

pub fn branch_value_f64(nontrivial: &Polynomial, lambda: f64) -> Result<f64, SolverError> {
    let q = Q::from_float(lambda).ok_or(SolverError::NoPhysicalRoot { lambda })?;
    branch_value(nontrivial, &q)
}

/// Real roots of `a x² + b x + c` by the cancellation-free formula.
fn quadratic_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    if a == 0.0 {
        return if b == 0.0 { vec![] } else { vec![-c / b] };
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return vec![];
    }
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    if q == 0.0 {
        return vec![0.0];
    }
    vec![q / a, c / q]
}

/// Exact description of a critical value where one is available.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactValue {
    Rational(Q),
    /// `rational + coefficient · √radicand`
    Surd {
        rational: Q,
        coefficient: Q,
        radicand: BigInt,
    },
    /// Only the refined numeric value is known.
    Numeric,
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactValue::Rational(q) => write!(f, "{q}"),
            ExactValue::Surd { rational, coefficient, radicand } => {
                let den = rational.denom().lcm(coefficient.denom());
                let a = (rational * Q::from_integer(den.clone())).to_integer();
                let b = (coefficient * Q::from_integer(den.clone())).to_integer();
                let root = if b.abs().is_one() {
                    format!("sqrt({radicand})")
                } else {
                    format!("{}*sqrt({radicand})", b.abs())
                };
                let sign = if b.is_negative() { "-" } else { "+" };
                let inner = if a.is_zero() {
                    format!("{}{root}", if b.is_negative() { "-" } else { "" })
                } else {
                    format!("{a} {sign} {root}")
                };
                if den.is_one() {
                    f.write_str(&inner)
                } else {
                    write!(f, "({inner})/{den}")
                }
            }
            ExactValue::Numeric => f.write_str("numeric"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriticalBound {
    pub value: f64,
    pub exact: ExactValue,
}

/// Largest real root of `nontrivial(λ, 1)`: where the nontrivial branch
/// meets the trivial one.
pub fn critical_bound(nontrivial: &Polynomial) -> Result<CriticalBound, SolverError> {
    let at_one = nontrivial.substitute(SINGLE_SITE, &Q::one());
    let q = UniPoly::from_polynomial(&at_one, Var::LAMBDA).expect("nontrivial factor is in λ and x only");
    if q.is_zero() {
        return Err(SolverError::Degenerate);
    }
    let tol = Q::new(BigInt::one(), BigInt::one() << 60);
    let value = *q.real_roots(&tol).last().ok_or(SolverError::NoCriticalValue)?;

    let close = |v: f64| (v - value).abs() <= 1e-9 * value.abs().max(1.0);
    let sf = q.square_free();
    let rational = sf.rational_roots().unwrap_or_default();
    if let Some(r) = rational.last().filter(|r| close(ratio_to_f64(r))) {
        return Ok(CriticalBound { value, exact: ExactValue::Rational(r.clone()) });
    }
    let mut rest = sf;
    for r in &rational {
        rest = rest.div_rem(&UniPoly::new(vec![-r.clone(), Q::one()])).0;
    }
    if rest.degree() == 2 {
        let [c, b, a] = [0, 1, 2].map(|k| rest.coeffs()[k].clone());
        let disc = &b * &b - Q::from_integer(4.into()) * &a * &c;
        if disc.is_positive() {
            // Clear the denominator of disc so the radicand is an integer.
            let den = disc.denom().clone();
            let (k, m) = extract_square(&(disc.numer() * &den));
            let two_a = Q::from_integer(2.into()) * &a;
            let exact =
                ExactValue::Surd { rational: -&b / &two_a, coefficient: Q::new(k, den) / two_a.abs(), radicand: m };
            if let ExactValue::Surd { rational, coefficient, radicand } = &exact {
                let v = ratio_to_f64(rational)
                    + ratio_to_f64(coefficient) * ratio_to_f64(&Q::from_integer(radicand.clone())).sqrt();
                if close(v) {
                    return Ok(CriticalBound { value, exact });
                }
            }
        }
    }
    Ok(CriticalBound { value, exact: ExactValue::Numeric })
}

/// Closed form of the branch `x(λ)` when the nontrivial factor has degree
/// at most two in `x`.
#[derive(Clone, Debug, PartialEq)]
pub enum ClosedForm {
    /// `x = numerator / denominator`
    Linear { numerator: Polynomial, denominator: Polynomial },
    /// `x = (minus_b + sign · scale · √discriminant) / denominator`
    Quadratic { minus_b: Polynomial, scale: BigInt, sign: i8, discriminant: Polynomial, denominator: Polynomial },
}

impl ClosedForm {
    pub fn eval(&self, lambda: f64) -> f64 {
        let at = |p: &Polynomial| p.eval_f64(|_| lambda);
        match self {
            ClosedForm::Linear { numerator, denominator } => at(numerator) / at(denominator),
            ClosedForm::Quadratic { minus_b, scale, sign, discriminant, denominator } => {
                let s = ratio_to_f64(&Q::from_integer(scale.clone()));
                (at(minus_b) + f64::from(*sign) * s * at(discriminant).sqrt()) / at(denominator)
            }
        }
    }

    pub fn render(&self, names: &dyn VarNames) -> String {
        let ord = lambda_x_order();
        let f = |p: &Polynomial| {
            let s = format(p, names, &ord);
            if s.contains([' ', '*']) {
                format!("({s})")
            } else {
                s
            }
        };
        match self {
            ClosedForm::Linear { numerator, denominator } => format!("x = {}/{}", f(numerator), f(denominator)),
            ClosedForm::Quadratic { minus_b, scale, sign, denominator, .. } => {
                let root = if scale.is_one() { "sqrt(D)".to_string() } else { format!("{scale}*sqrt(D)") };
                let op = if *sign >= 0 { "+" } else { "-" };
                format!("x = ({} {op} {root})/{}", format(minus_b, names, &ord), f(denominator))
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct ApproximationResult {
    pub order_label: String,
    pub basis: GroebnerBasis,
    /// The (λ, x) element of the basis.
    pub elim: Polynomial,
    /// `elim / (x − 1)`, primitive.
    pub nontrivial: Polynomial,
    pub lambda_c: CriticalBound,
    /// For a quadratic branch: `b² − 4ac` with square integer factors removed.
    pub discriminant: Option<Polynomial>,
    pub closed_form: Option<ClosedForm>,
}

impl ApproximationResult {
    /// `ν(o)` on the nontrivial branch.
    pub fn branch_value(&self, lambda: f64) -> Result<f64, SolverError> {
        branch_value_f64(&self.nontrivial, lambda)
    }

    /// `1 − ν(o)` above λ_c, and 0 below it.
    pub fn density(&self, lambda: f64) -> Result<f64, SolverError> {
        if lambda < self.lambda_c.value {
            return Ok(0.0);
        }
        Ok(1.0 - self.branch_value(lambda)?)
    }

    /// Extinction probability of a single site, `ν(o)`; 1 below λ_c.
    pub fn extinction(&self, lambda: f64) -> Result<f64, SolverError> {
        Ok(1.0 - self.density(lambda)?)
    }
}

pub fn density(res: &ApproximationResult, lambda: f64) -> Result<f64, SolverError> {
    res.density(lambda)
}

/// Reads the approximation off a reduced basis.
pub fn solve_basis(label: &str, basis: GroebnerBasis) -> Result<ApproximationResult, SolverError> {
    let elim = elimination_polynomial(&basis)?;
    let nontrivial = strip_trivial(&elim)?;
    let lambda_c = critical_bound(&nontrivial)?;
    let (discriminant, closed_form) = closed_form(&nontrivial, &lambda_c);
    Ok(ApproximationResult {
        order_label: label.to_string(),
        basis,
        elim,
        nontrivial,
        lambda_c,
        discriminant,
        closed_form,
    })
}

fn closed_form(nontrivial: &Polynomial, lambda_c: &CriticalBound) -> (Option<Polynomial>, Option<ClosedForm>) {
    let cs = nontrivial.coefficients_in(SINGLE_SITE);
    match cs.as_slice() {
        [c, b] => (None, Some(ClosedForm::Linear { numerator: -c, denominator: b.clone() })),
        [c, b, a] => {
            let disc = b * b - int(4) * (a * c);
            let content = disc.content().to_integer();
            let (k, _) = extract_square(&content);
            let k2 = Q::from_integer(&k * &k);
            let d = disc.scale(&k2.recip());
            let two_a = int(2) * a.clone();
            let g = k.gcd(&b.content().to_integer()).gcd(&two_a.content().to_integer());
            let g = Q::from_integer(g);
            let minus_b = (-b).scale(&g.recip());
            let denominator = two_a.scale(&g.recip());
            let scale = (Q::from_integer(k) / &g).to_integer();
            let make = |sign: i8| ClosedForm::Quadratic {
                minus_b: minus_b.clone(),
                scale: scale.clone(),
                sign,
                discriminant: d.clone(),
                denominator: denominator.clone(),
            };
            // Pick the sign that matches the physical branch above λ_c.
            let probe = lambda_c.value + 1.0;
            let sign = branch_value_f64(nontrivial, probe)
                .ok()
                .and_then(|x| [1i8, -1].into_iter().find(|&s| (make(s).eval(probe) - x).abs() < 1e-9))
                .unwrap_or(1);
            (Some(d.clone()), Some(make(sign)))
        }
        _ => (None, None),
    }
}

/// Builds, solves and reads off one of the built-in approximations.
pub fn approximate(order: ApproximationOrder) -> Result<ApproximationResult, SolverError> {
    let (_, _, basis) = compute_basis(order)?;
    solve_basis(order.label(), basis)
}

/// Ideal and reduced basis of a built-in approximation, with the registry
/// that names their variables.
pub fn compute_basis(order: ApproximationOrder) -> Result<(VariableRegistry, Ideal, GroebnerBasis), SolverError> {
    let mut reg = VariableRegistry::new();
    let ideal = build_ideal(order, &mut reg);
    let basis = buchberger(&ideal.generators, &reg.lex_order())?;
    Ok((reg, ideal, basis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse;

    fn p(t: &str) -> Polynomial {
        parse(t, &VariableRegistry::new()).unwrap()
    }

    #[test]
    fn strip_examples() {
        assert_eq!(strip_trivial(&p("(x - 1)*(2*l*x - 1)")).unwrap(), p("2*l*x - 1"));
        assert_eq!(strip_trivial(&p("-(x - 1)*(2*l*x - 1)")).unwrap(), p("2*l*x - 1"));
        assert_eq!(strip_trivial(&p("x - 1")), Err(SolverError::Degenerate));
        assert_eq!(strip_trivial(&p("x^2 + 1")), Err(SolverError::NotDivisible));
    }

    #[test]
    fn branch_examples() {
        let q = |n: i64| Q::from_integer(n.into());
        assert_eq!(branch_value(&p("2*l*x - 1"), &q(1)).unwrap(), 0.5);
        assert_eq!(branch_value(&p("(2*l - 1)*x - 1"), &q(1)).unwrap(), 1.0);
        let third = p("(12*l^3 - 5*l - 1)*x^2 - 2*l*(2*l + 3)*x - l + 1");
        let x = branch_value(&third, &q(2)).unwrap();
        // Frozen from a 40-digit evaluation of (λ(2λ+3) + √D)/(12λ³ − 5λ − 1) at λ = 2, D = 281.
        assert!((x - 0.361_918_289_579_296_6).abs() < 1e-14, "{x}");
        assert_eq!(
            branch_value(&p("2*l*x - 1"), &Q::new(1.into(), 4.into())),
            Err(SolverError::NoPhysicalRoot { lambda: 0.25 })
        );
        // Two roots in [0, 1]: 4x² − 4x + 3/4 = (2x − 1/2)(2x − 3/2).
        assert!(matches!(branch_value(&p("4*x^2 - 4*x + 3/4"), &q(1)), Err(SolverError::AmbiguousRoot { .. })));
    }

    #[test]
    fn critical_examples() {
        let half = critical_bound(&p("2*l*x - 1")).unwrap();
        assert_eq!(half.exact, ExactValue::Rational(Q::new(1.into(), 2.into())));
        assert_eq!(half.value, 0.5);
        let one = critical_bound(&p("(2*l - 1)*x - 1")).unwrap();
        assert_eq!(one.exact, ExactValue::Rational(Q::one()));
        let third = critical_bound(&p("(12*l^3 - 5*l - 1)*x^2 - 2*l*(2*l + 3)*x - l + 1")).unwrap();
        assert_eq!(third.exact.to_string(), "(1 + sqrt(37))/6");
        assert!((third.value - 1.180_460_421_716_37).abs() < 1e-14);
        assert_eq!(critical_bound(&p("x^2 - x")), Err(SolverError::Degenerate));
    }

    #[test]
    fn exact_value_rendering() {
        let s = ExactValue::Surd { rational: Q::zero(), coefficient: Q::new(2.into(), 3.into()), radicand: 5.into() };
        assert_eq!(s.to_string(), "(2*sqrt(5))/3");
        assert_eq!(ExactValue::Rational(Q::new(1.into(), 2.into())).to_string(), "1/2");
    }

    #[test]
    fn quadratic_formula_is_stable() {
        let r = quadratic_roots(1.0, -3.0, 2.0);
        assert!(r.contains(&1.0) && r.contains(&2.0));
        assert_eq!(quadratic_roots(0.0, 2.0, -1.0), vec![0.5]);
        assert!(quadratic_roots(1.0, 0.0, 1.0).is_empty());
    }
}
