use std::cmp::Ordering;

use super::monomial::{Monomial, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    /// Pure lexicographic order. Eliminates high-precedence variables first.
    Lex,
    /// Total degree first, ties broken lexicographically.
    GradedLex,
}

/// A monomial order given by a kind and a precedence on variables.
///
/// `precedence` lists variables from lowest to highest. Variables missing
/// from the list rank above every listed variable, among themselves by
/// index, so the order stays total on any monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    kind: OrderKind,
    precedence: Vec<Var>,
    rank: Vec<Option<u32>>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, precedence: impl IntoIterator<Item = Var>) -> Self {
        let precedence: Vec<Var> = precedence.into_iter().collect();
        let size = precedence.iter().map(|v| v.index() + 1).max().unwrap_or(0);
        let mut rank = vec![None; size];
        for (r, v) in precedence.iter().enumerate() {
            assert!(rank[v.index()].is_none(), "variable {v} listed twice in precedence");
            rank[v.index()] = Some(r as u32);
        }
        Self { kind, precedence, rank }
    }

    /// Lexicographic order; `precedence` runs from lowest to highest.
    pub fn lex(precedence: impl IntoIterator<Item = Var>) -> Self {
        Self::new(OrderKind::Lex, precedence)
    }

    pub fn graded_lex(precedence: impl IntoIterator<Item = Var>) -> Self {
        Self::new(OrderKind::GradedLex, precedence)
    }

    /// Lex order on variable index: `v0 ≺ v1 ≺ v2 ≺ …`.
    pub fn lex_by_index() -> Self {
        Self::lex([])
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    /// Variables from lowest to highest precedence.
    pub fn precedence(&self) -> &[Var] {
        &self.precedence
    }

    /// Sort key of a variable; larger means higher precedence.
    pub fn rank(&self, v: Var) -> (bool, u32) {
        match self.rank.get(v.index()).copied().flatten() {
            Some(r) => (false, r),
            None => (true, v.0),
        }
    }

    pub fn var_cmp(&self, a: Var, b: Var) -> Ordering {
        self.rank(a).cmp(&self.rank(b))
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        if self.kind == OrderKind::GradedLex {
            match a.degree().cmp(&b.degree()) {
                Ordering::Equal => {}
                other => return other,
            }
        }
        self.lex_compare(a, b)
    }

    // Among variables whose exponents differ, the one of highest precedence
    // decides. Equivalent to scanning from the top variable downward.
    fn lex_compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let mut deciding: Option<((bool, u32), Ordering)> = None;
        let mut consider = |v: Var| {
            let (ea, eb) = (a.exponent(v), b.exponent(v));
            if ea != eb {
                let r = self.rank(v);
                if deciding.is_none_or(|(best, _)| r > best) {
                    deciding = Some((r, ea.cmp(&eb)));
                }
            }
        };
        a.vars().for_each(&mut consider);
        b.vars().for_each(&mut consider);
        deciding.map_or(Ordering::Equal, |(_, o)| o)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // λ ≺ x ≺ y, with ids λ=0, x=1, y=2.
    fn lambda_x_y_order() -> MonomialOrder {
        MonomialOrder::lex([Var(0), Var(1), Var(2)])
    }

    #[test]
    fn lex_examples() {
        let ord = lambda_x_y_order();
        let x2 = Monomial::pow(Var(1), 2);
        let lx = Monomial::from_powers([(Var(0), 1), (Var(1), 1)]);
        let y = Monomial::var(Var(2));
        assert_eq!(ord.compare(&x2, &lx), Ordering::Greater);
        assert_eq!(ord.compare(&y, &x2), Ordering::Greater);
        assert_eq!(ord.compare(&lx, &lx), Ordering::Equal);
        assert_eq!(ord.compare(&Monomial::one(), &lx), Ordering::Less);
    }

    #[test]
    fn precedence_need_not_follow_index() {
        // z has id 3 but ranks above w (id 4): λ ≺ x ≺ y ≺ w ≺ z.
        let ord = MonomialOrder::lex([Var(0), Var(1), Var(2), Var(4), Var(3)]);
        let z = Monomial::var(Var(3));
        let w2 = Monomial::pow(Var(4), 2);
        assert_eq!(ord.compare(&z, &w2), Ordering::Greater);
    }

    #[test]
    fn unlisted_variables_rank_on_top() {
        let ord = MonomialOrder::lex([Var(5), Var(0)]);
        assert_eq!(ord.var_cmp(Var(1), Var(0)), Ordering::Greater);
        assert_eq!(ord.var_cmp(Var(0), Var(5)), Ordering::Greater);
        assert_eq!(ord.var_cmp(Var(2), Var(1)), Ordering::Greater);
    }

    #[test]
    fn graded_lex_counts_degree_first() {
        let ord = MonomialOrder::graded_lex([Var(0), Var(1), Var(2)]);
        let y = Monomial::var(Var(2));
        let x2 = Monomial::pow(Var(1), 2);
        assert_eq!(ord.compare(&y, &x2), Ordering::Less);
    }
}
