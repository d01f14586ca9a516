//! Stationarity identities of the upper invariant measure in one dimension.
//!
//! For a finite set `A ⊂ ℤ`, write `ν(A)` for the probability that every
//! site of `A` is vacant. Stationarity gives
//!
//! ```text
//! λ Σ_{a∈A} Σ_{b=a±1} [ν(A ∪ {b}) − ν(A)] + Σ_{a∈A} [ν(A \ {a}) − ν(A)] = 0
//! ```
//!
//! with `ν(∅) = 1`. Each `ν(A)` becomes a ring variable indexed by the
//! canonical pattern of `A` (translation and reflection reduced).

use std::borrow::Cow;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_traits::One;
use thiserror::Error;

use crate::polyring::{Coeff, MonomialOrder, NameTable, Polynomial, Var, VarNames};

/// Variable of `ν(o)`, the single-site vacancy probability.
pub const SINGLE_SITE: Var = Var(1);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("the empty configuration is the constant 1, not a variable")]
    EmptyPattern,
    #[error("invalid pattern `{0}`: use `o` for occupied-by-A sites and `x` for gaps, starting and ending with `o`")]
    BadPattern(String),
    #[error("approximation order {0} has no built-in identity schedule; pass an explicit pattern list")]
    UnsupportedOrder(u32),
}

/// A finite subset of ℤ up to translation and reflection.
///
/// Sites are strictly increasing and start at 0; the rendered `o`/`x`
/// string is the smaller of itself and its reversal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConfigurationPattern {
    sites: Vec<i64>,
}

/// Translates `sites` to start at 0 and picks the smaller of the pattern and
/// its mirror image.
pub fn canonicalize(sites: impl IntoIterator<Item = i64>) -> Result<ConfigurationPattern, IdentityError> {
    let set: BTreeSet<i64> = sites.into_iter().collect();
    let (&lo, &hi) = match (set.first(), set.last()) {
        (Some(lo), Some(hi)) => (lo, hi),
        _ => return Err(IdentityError::EmptyPattern),
    };
    let forward: Vec<i64> = set.iter().map(|s| s - lo).collect();
    let mut mirrored: Vec<i64> = set.iter().map(|s| hi - s).collect();
    mirrored.sort_unstable();
    let a = ConfigurationPattern { sites: forward };
    let b = ConfigurationPattern { sites: mirrored };
    Ok(if b.render() < a.render() { b } else { a })
}

impl ConfigurationPattern {
    pub fn single() -> Self {
        Self { sites: vec![0] }
    }

    pub fn sites(&self) -> &[i64] {
        &self.sites
    }

    /// Number of sites from first to last, inclusive.
    pub fn span(&self) -> usize {
        (*self.sites.last().expect("nonempty") + 1) as usize
    }

    /// Number of sites in the set.
    pub fn count(&self) -> usize {
        self.sites.len()
    }

    pub fn render(&self) -> String {
        let mut s = vec![b'x'; self.span()];
        for &i in &self.sites {
            s[i as usize] = b'o';
        }
        String::from_utf8(s).expect("ascii")
    }

    /// Registry precedence: span, then site count, then the string.
    pub fn precedence_key(&self) -> (usize, usize, String) {
        (self.span(), self.count(), self.render())
    }

    /// All canonical patterns of span at most `max_span`.
    pub fn enumerate(max_span: usize) -> Vec<ConfigurationPattern> {
        let mut out = BTreeSet::new();
        for span in 1..=max_span {
            // First and last sites are fixed; choose the interior freely.
            let interior = span.saturating_sub(2);
            for mask in 0u64..(1 << interior) {
                let mut sites = vec![0i64];
                sites.extend((0..interior).filter(|b| mask >> b & 1 == 1).map(|b| b as i64 + 1));
                if span > 1 {
                    sites.push(span as i64 - 1);
                }
                out.insert(canonicalize(sites).expect("nonempty"));
            }
        }
        out.into_iter().collect()
    }
}

impl fmt::Display for ConfigurationPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl FromStr for ConfigurationPattern {
    type Err = IdentityError;

    /// Accepts any `o`/`x` string starting and ending with `o` and returns
    /// its canonical form (`oxoo` parses to `ooxo`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || IdentityError::BadPattern(s.to_string());
        if s.is_empty() {
            return Err(IdentityError::EmptyPattern);
        }
        if !s.bytes().all(|c| c == b'o' || c == b'x') || !s.starts_with('o') || !s.ends_with('o') {
            return Err(bad());
        }
        canonicalize(s.bytes().enumerate().filter(|&(_, c)| c == b'o').map(|(i, _)| i as i64))
    }
}

/// Bidirectional map between patterns and ring variables.
///
/// `Var(0)` is λ. The seven named variables are preloaded with ids
/// `x=1, y=2, z=3, w=4, s=5, u=6`; later patterns get fresh ids and the
/// generated name `v<id>`.
#[derive(Clone, Debug)]
pub struct VariableRegistry {
    patterns: Vec<ConfigurationPattern>,
    ids: HashMap<ConfigurationPattern, Var>,
}

const NAMED: [(&str, &str); 6] = [("o", "x"), ("oo", "y"), ("ooo", "z"), ("oxo", "w"), ("oooo", "s"), ("ooxo", "u")];

impl Default for VariableRegistry {
    fn default() -> Self {
        Self::new()
    }
}

impl VariableRegistry {
    pub fn new() -> Self {
        let mut reg = Self { patterns: Vec::new(), ids: HashMap::new() };
        for (pat, _) in NAMED {
            reg.register(&pat.parse().expect("valid builtin pattern"));
        }
        reg
    }

    /// Returns the id of `p`, allocating one on first sight.
    pub fn register(&mut self, p: &ConfigurationPattern) -> Var {
        if let Some(&v) = self.ids.get(p) {
            return v;
        }
        self.patterns.push(p.clone());
        let v = Var(self.patterns.len() as u32);
        self.ids.insert(p.clone(), v);
        v
    }

    pub fn var_of(&self, p: &ConfigurationPattern) -> Option<Var> {
        self.ids.get(p).copied()
    }

    pub fn pattern_of(&self, v: Var) -> Option<&ConfigurationPattern> {
        v.index().checked_sub(1).and_then(|i| self.patterns.get(i))
    }

    /// Number of configuration variables (λ excluded).
    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }

    /// Configuration variables in precedence order, lowest first.
    pub fn configuration_vars(&self) -> Vec<Var> {
        let mut vars: Vec<Var> = (1..=self.patterns.len() as u32).map(Var).collect();
        vars.sort_by_cached_key(|&v| self.pattern_of(v).expect("registered").precedence_key());
        vars
    }

    /// Lex order with λ lowest, then patterns by span, site count and string.
    /// Covers every variable registered so far.
    pub fn lex_order(&self) -> MonomialOrder {
        MonomialOrder::lex(std::iter::once(Var::LAMBDA).chain(self.configuration_vars()))
    }

    /// Snapshot of the current names, usable after the registry is dropped.
    pub fn name_table(&self) -> NameTable {
        NameTable((0..=self.patterns.len() as u32).map(|i| self.name_of(Var(i)).into_owned()).collect())
    }

    /// Variable holding `ν(A)` as a polynomial; the empty set maps to 1.
    fn nu(&mut self, sites: &BTreeSet<i64>) -> Polynomial {
        if sites.is_empty() {
            Polynomial::one()
        } else {
            let p = canonicalize(sites.iter().copied()).expect("nonempty");
            Polynomial::var(self.register(&p))
        }
    }
}

impl VarNames for VariableRegistry {
    fn name_of(&self, v: Var) -> Cow<'_, str> {
        if v.is_lambda() {
            return Cow::Borrowed("l");
        }
        match self.pattern_of(v) {
            Some(p) => match NAMED.iter().find(|(pat, _)| *pat == p.render()) {
                Some((_, name)) => Cow::Borrowed(name),
                None => Cow::Owned(format!("v{}", v.0)),
            },
            None => Cow::Owned(format!("v{}", v.0)),
        }
    }

    fn var_named(&self, name: &str) -> Option<Var> {
        if name == "l" {
            return Some(Var::LAMBDA);
        }
        if let Some((pat, _)) = NAMED.iter().find(|(_, n)| *n == name) {
            return self.var_of(&pat.parse().ok()?);
        }
        let k: u32 = name.strip_prefix('v')?.parse().ok()?;
        (k as usize <= self.patterns.len()).then_some(Var(k))
    }
}

/// The stationarity identity for `ν(A)` as a polynomial in λ and pattern
/// variables, registering any new patterns it mentions.
///
/// The raw integer sum is divided by its content and the sign is fixed so
/// the leading coefficient under the registry's lex order is positive.
pub fn correlation_identity(a: &ConfigurationPattern, reg: &mut VariableRegistry) -> Polynomial {
    let set: BTreeSet<i64> = a.sites().iter().copied().collect();
    let nu_a = reg.nu(&set);
    let lambda = Polynomial::var(Var::LAMBDA);
    let mut raw = Polynomial::zero();
    for &site in &set {
        for nb in [site - 1, site + 1] {
            if set.contains(&nb) {
                continue;
            }
            let mut grown = set.clone();
            grown.insert(nb);
            raw = raw + &lambda * &(reg.nu(&grown) - &nu_a);
        }
        let mut shrunk = set.clone();
        shrunk.remove(&site);
        raw = raw + (reg.nu(&shrunk) - &nu_a);
    }
    raw.primitive(&reg.lex_order()).0
}

/// Identities used by the built-in approximation orders 1, 2 and 3.
pub fn identity_patterns(order: u32) -> Result<Vec<ConfigurationPattern>, IdentityError> {
    let pats: &[&str] = match order {
        1 => &["o"],
        2 => &["o", "oo"],
        3 => &["o", "oo", "ooo", "oxo"],
        m => return Err(IdentityError::UnsupportedOrder(m)),
    };
    Ok(pats.iter().map(|p| p.parse().expect("valid builtin pattern")).collect())
}

pub fn identity_system(order: u32, reg: &mut VariableRegistry) -> Result<Vec<Polynomial>, IdentityError> {
    Ok(identity_system_for(&identity_patterns(order)?, reg))
}

/// Identities for an explicit pattern list, in list order.
pub fn identity_system_for(patterns: &[ConfigurationPattern], reg: &mut VariableRegistry) -> Vec<Polynomial> {
    patterns.iter().map(|p| correlation_identity(p, reg)).collect()
}

/// Sets every configuration variable to 1, leaving λ alone.
pub fn substitute_all_ones(p: &Polynomial) -> Polynomial {
    p.substitute_where(|v| !v.is_lambda(), &Coeff::one())
}
