//! Closure approximations for the one-dimensional contact process.
//!
//! The pipeline turns stationarity identities of the upper invariant measure
//! into a polynomial ideal ([`identities`], [`closures`]), computes its
//! reduced Gröbner basis under a lexicographic order ([`groebner`]) and reads
//! off the nontrivial branch of `ν(o)`, the density and the critical bound
//! ([`solver`]). [`simulator`] runs the process itself for comparison.

pub mod closures;
pub mod groebner;
pub mod identities;
pub mod polyring;
pub mod simulator;
pub mod solver;

pub use closures::{
    build_custom_ideal, build_ideal, ApproximationOrder, ClosureRelation, ClosureScheme, Ideal, SchemeName,
};
pub use groebner::{buchberger, is_member, GroebnerBasis, GroebnerError};
pub use identities::{
    canonicalize, correlation_identity, identity_system, ConfigurationPattern, IdentityError, VariableRegistry,
};
pub use polyring::{Coeff, Monomial, MonomialOrder, PolyError, Polynomial, Var};
pub use simulator::{InitialCondition, SimConfig, SimError, SimulationEstimate};
pub use solver::{approximate, ApproximationResult, CriticalBound, ExactValue, SolverError};
