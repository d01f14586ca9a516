use std::fmt;

/// Index into a variable registry. Index 0 is always the infection rate λ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub u32);

impl Var {
    pub const LAMBDA: Var = Var(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_lambda(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

/// A power product of variables.
///
/// Stored as `(variable, exponent)` pairs sorted by variable index with no
/// zero exponents, so structural equality is monomial equality. The empty
/// product is the unit monomial.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    powers: Vec<(Var, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: Var) -> Self {
        Self::pow(v, 1)
    }

    pub fn pow(v: Var, e: u32) -> Self {
        if e == 0 {
            Self::one()
        } else {
            Self { powers: vec![(v, e)] }
        }
    }

    /// Builds a monomial from arbitrary `(var, exp)` pairs, merging repeats
    /// and dropping zero exponents.
    pub fn from_powers(powers: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut powers: Vec<(Var, u32)> = powers.into_iter().filter(|&(_, e)| e > 0).collect();
        powers.sort_unstable_by_key(|&(v, _)| v);
        let mut merged: Vec<(Var, u32)> = Vec::with_capacity(powers.len());
        for (v, e) in powers {
            match merged.last_mut() {
                Some((last, acc)) if *last == v => *acc += e,
                _ => merged.push((v, e)),
            }
        }
        Self { powers: merged }
    }

    pub fn is_one(&self) -> bool {
        self.powers.is_empty()
    }

    pub fn powers(&self) -> &[(Var, u32)] {
        &self.powers
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.powers.iter().map(|&(v, _)| v)
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.powers.binary_search_by_key(&v, |&(w, _)| w).map(|i| self.powers[i].1).unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.powers.iter().map(|&(_, e)| e).sum()
    }

    /// True when the stored representation has no zero exponent and is
    /// strictly sorted. Always holds for values built through this API.
    pub fn is_canonical(&self) -> bool {
        self.powers.iter().all(|&(_, e)| e > 0) && self.powers.windows(2).all(|w| w[0].0 < w[1].0)
    }

    /// Removes every occurrence of `v`, returning the exponent it had.
    pub fn without(&self, v: Var) -> (Monomial, u32) {
        let e = self.exponent(v);
        let powers = self.powers.iter().copied().filter(|&(w, _)| w != v).collect();
        (Monomial { powers }, e)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.merge(other, |a, b| Some(a + b)).expect("monomial product is always defined")
    }

    /// `true` when `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.powers.iter().all(|&(v, e)| other.exponent(v) >= e)
    }

    /// `self / divisor`, or `None` when the division is not exact.
    pub fn div(&self, divisor: &Monomial) -> Option<Monomial> {
        if !divisor.divides(self) {
            return None;
        }
        let powers = self
            .powers
            .iter()
            .filter_map(|&(v, e)| {
                let r = e - divisor.exponent(v);
                (r > 0).then_some((v, r))
            })
            .collect();
        Some(Monomial { powers })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        self.merge(other, |a, b| Some(a.max(b))).expect("lcm is always defined")
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.powers.iter().all(|&(v, _)| other.exponent(v) == 0)
    }

    fn merge(&self, other: &Monomial, f: impl Fn(u32, u32) -> Option<u32>) -> Option<Monomial> {
        let (a, b) = (&self.powers, &other.powers);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let (v, ea, eb) = match (a.get(i), b.get(j)) {
                (Some(&(va, ea)), Some(&(vb, eb))) if va == vb => {
                    i += 1;
                    j += 1;
                    (va, ea, eb)
                }
                (Some(&(va, ea)), Some(&(vb, _))) if va < vb => {
                    i += 1;
                    (va, ea, 0)
                }
                (Some(_), Some(&(vb, eb))) => {
                    j += 1;
                    (vb, 0, eb)
                }
                (Some(&(va, ea)), None) => {
                    i += 1;
                    (va, ea, 0)
                }
                (None, Some(&(vb, eb))) => {
                    j += 1;
                    (vb, 0, eb)
                }
                (None, None) => unreachable!(),
            };
            let e = f(ea, eb)?;
            if e > 0 {
                out.push((v, e));
            }
        }
        Some(Monomial { powers: out })
    }
}
