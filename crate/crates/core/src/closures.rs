//! Closure relations that truncate the identity hierarchy, and the ideals
//! they generate together with the identities.

use std::fmt;
use std::str::FromStr;

use crate::identities::{
    identity_patterns, identity_system_for, ConfigurationPattern, IdentityError, VariableRegistry,
};
use crate::polyring::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SchemeName {
    /// `ν(oo) = ν(o)²`
    MeanField1,
    /// `ν(o)·ν(ooo) = ν(oo)²`
    Pair2,
    /// `ν(oo) = ν(o)²` and `ν(ooo) = ν(o)³`
    Naive2Prime,
    /// `ν(oo)·ν(oooo) = ν(ooo)²` and `ν(o)·ν(ooxo) = ν(oo)·ν(oxo)`
    Third3,
    Custom,
}

impl SchemeName {
    pub fn as_str(self) -> &'static str {
        match self {
            SchemeName::MeanField1 => "mean_field_1",
            SchemeName::Pair2 => "pair_2",
            SchemeName::Naive2Prime => "naive_2prime",
            SchemeName::Third3 => "third_3",
            SchemeName::Custom => "custom",
        }
    }
}

impl fmt::Display for SchemeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `Π lhs = Π rhs` over pattern variables; an empty product is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureRelation {
    pub lhs: Vec<ConfigurationPattern>,
    pub rhs: Vec<ConfigurationPattern>,
}

impl ClosureRelation {
    fn new(lhs: &[&str], rhs: &[&str]) -> Self {
        let parse = |ps: &[&str]| ps.iter().map(|p| p.parse().expect("valid builtin pattern")).collect();
        Self { lhs: parse(lhs), rhs: parse(rhs) }
    }

    pub fn polynomial(&self, reg: &mut VariableRegistry) -> Polynomial {
        let mut product = |ps: &[ConfigurationPattern]| {
            ps.iter().fold(Polynomial::one(), |acc, p| acc * Polynomial::var(reg.register(p)))
        };
        let lhs = product(&self.lhs);
        let rhs = product(&self.rhs);
        lhs - rhs
    }
}

impl FromStr for ClosureRelation {
    type Err = IdentityError;

    /// Parses `o*ooxo=oo*oxo`; `1` stands for the empty product.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (l, r) = s.split_once('=').ok_or_else(|| IdentityError::BadPattern(s.to_string()))?;
        let side = |t: &str| -> Result<Vec<ConfigurationPattern>, IdentityError> {
            let t = t.trim();
            if t == "1" {
                return Ok(Vec::new());
            }
            t.split('*').map(|p| p.trim().parse()).collect()
        };
        Ok(Self { lhs: side(l)?, rhs: side(r)? })
    }
}

impl fmt::Display for ClosureRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = |ps: &[ConfigurationPattern]| {
            if ps.is_empty() {
                "1".to_string()
            } else {
                ps.iter().map(|p| p.render()).collect::<Vec<_>>().join("*")
            }
        };
        write!(f, "{}={}", side(&self.lhs), side(&self.rhs))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureScheme {
    pub name: SchemeName,
    pub relations: Vec<ClosureRelation>,
}

impl ClosureScheme {
    pub fn mean_field_1() -> Self {
        Self { name: SchemeName::MeanField1, relations: vec![ClosureRelation::new(&["oo"], &["o", "o"])] }
    }

    pub fn pair_2() -> Self {
        Self { name: SchemeName::Pair2, relations: vec![ClosureRelation::new(&["o", "ooo"], &["oo", "oo"])] }
    }

    pub fn naive_2prime() -> Self {
        Self {
            name: SchemeName::Naive2Prime,
            relations: vec![
                ClosureRelation::new(&["oo"], &["o", "o"]),
                ClosureRelation::new(&["ooo"], &["o", "o", "o"]),
            ],
        }
    }

    pub fn third_3() -> Self {
        Self {
            name: SchemeName::Third3,
            relations: vec![
                ClosureRelation::new(&["oo", "oooo"], &["ooo", "ooo"]),
                ClosureRelation::new(&["o", "ooxo"], &["oo", "oxo"]),
            ],
        }
    }

    pub fn custom(relations: Vec<ClosureRelation>) -> Self {
        Self { name: SchemeName::Custom, relations }
    }
}

/// One `LHS − RHS` polynomial per relation, in relation order.
pub fn closure_polynomials(scheme: &ClosureScheme, reg: &mut VariableRegistry) -> Vec<Polynomial> {
    scheme.relations.iter().map(|r| r.polynomial(reg)).collect()
}

/// The built-in approximation ideals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ApproximationOrder {
    First,
    Second,
    /// Second-order identities closed by the naive product rule; degenerate.
    SecondPrime,
    Third,
}

impl ApproximationOrder {
    pub const ALL: [ApproximationOrder; 4] = [Self::First, Self::Second, Self::SecondPrime, Self::Third];

    pub fn label(self) -> &'static str {
        match self {
            Self::First => "1",
            Self::Second => "2",
            Self::SecondPrime => "2prime",
            Self::Third => "3",
        }
    }

    /// Which identity schedule the order draws from.
    pub fn identity_order(self) -> u32 {
        match self {
            Self::First => 1,
            Self::Second | Self::SecondPrime => 2,
            Self::Third => 3,
        }
    }

    pub fn scheme(self) -> ClosureScheme {
        match self {
            Self::First => ClosureScheme::mean_field_1(),
            Self::Second => ClosureScheme::pair_2(),
            Self::SecondPrime => ClosureScheme::naive_2prime(),
            Self::Third => ClosureScheme::third_3(),
        }
    }
}

impl fmt::Display for ApproximationOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ApproximationOrder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "1" => Ok(Self::First),
            "2" => Ok(Self::Second),
            "2prime" | "2'" | "2p" => Ok(Self::SecondPrime),
            "3" => Ok(Self::Third),
            other => Err(format!("unknown approximation order `{other}` (expected 1, 2, 2prime or 3)")),
        }
    }
}

/// Generators of an approximation ideal with their provenance.
#[derive(Clone, Debug)]
pub struct Ideal {
    pub label: String,
    /// Identities first (one per pattern), then closures.
    pub generators: Vec<Polynomial>,
    pub identity_patterns: Vec<ConfigurationPattern>,
    pub scheme: ClosureScheme,
}

impl Ideal {
    pub fn identities(&self) -> &[Polynomial] {
        &self.generators[..self.identity_patterns.len()]
    }

    pub fn closures(&self) -> &[Polynomial] {
        &self.generators[self.identity_patterns.len()..]
    }
}

pub fn build_ideal(order: ApproximationOrder, reg: &mut VariableRegistry) -> Ideal {
    let patterns = identity_patterns(order.identity_order()).expect("built-in orders have schedules");
    let mut ideal = build_custom_ideal(&patterns, order.scheme(), reg);
    ideal.label = order.label().to_string();
    ideal
}

/// Identities for `patterns` followed by the closures of `scheme`.
pub fn build_custom_ideal(
    patterns: &[ConfigurationPattern],
    scheme: ClosureScheme,
    reg: &mut VariableRegistry,
) -> Ideal {
    let mut generators = identity_system_for(patterns, reg);
    generators.extend(closure_polynomials(&scheme, reg));
    Ideal { label: scheme.name.to_string(), generators, identity_patterns: patterns.to_vec(), scheme }
}
