use super::order::MonomialOrder;
use super::polynomial::Polynomial;
use super::PolyError;

/// Result of dividing `f` by an ordered list of divisors:
/// `f = Σ quotients[i]·divisors[i] + remainder`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Division {
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
}

/// Multivariate division of `f` by `divisors` under `ord`.
///
/// The current leading term is always attacked first, using the first
/// divisor in list order whose leading monomial divides it; if none does the
/// term moves to the remainder. Zero divisors are skipped.
pub fn reduce(f: &Polynomial, divisors: &[Polynomial], ord: &MonomialOrder) -> Division {
    let leads: Vec<_> = divisors.iter().map(|g| g.leading_term(ord).map(|(m, c)| (m.clone(), c.clone()))).collect();
    let mut quotients = vec![Polynomial::zero(); divisors.len()];
    let mut remainder = Polynomial::zero();
    let mut p = f.clone();

    while let Some((lm, lc)) = p.leading_term(ord).map(|(m, c)| (m.clone(), c.clone())) {
        let hit = leads.iter().enumerate().find_map(|(i, lead)| {
            let (gm, gc) = lead.as_ref()?;
            lm.div(gm).map(|q| (i, q, &lc / gc))
        });
        match hit {
            Some((i, qm, qc)) => {
                p.sub_scaled(&divisors[i], &qm, &qc);
                quotients[i].add_term(qm, qc);
            }
            None => {
                p.add_term(lm.clone(), -lc.clone());
                remainder.add_term(lm, lc);
            }
        }
    }
    Division { quotients, remainder }
}

/// Returns `q` with `f = q·g`, or [`PolyError::NotDivisible`].
///
/// Division by a single polynomial has a unique remainder under any order,
/// so the choice of order here does not affect the answer.
pub fn exact_divide(f: &Polynomial, g: &Polynomial) -> Result<Polynomial, PolyError> {
    if g.is_zero() {
        return Err(PolyError::DivisionByZero);
    }
    let ord = MonomialOrder::lex_by_index();
    let Division { mut quotients, remainder } = reduce(f, std::slice::from_ref(g), &ord);
    if remainder.is_zero() {
        Ok(quotients.pop().expect("one divisor"))
    } else {
        Err(PolyError::NotDivisible)
    }
}
