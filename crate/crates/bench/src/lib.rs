//! Shared fixtures for the benchmarks.

use cp_groebner::simulator::{replica_rng, run_until, LatticeState};
use cp_groebner::{build_ideal, ApproximationOrder, MonomialOrder, Polynomial, VariableRegistry};

/// Generators of a built-in approximation ideal and the order to use.
pub fn generators(order: ApproximationOrder) -> (Vec<Polynomial>, MonomialOrder) {
    let mut reg = VariableRegistry::new();
    let ideal = build_ideal(order, &mut reg);
    (ideal.generators, reg.lex_order())
}

/// Runs one replica from the full lattice and returns how many sites are
/// still occupied at the horizon.
pub fn survivors(lambda: f64, size: usize, horizon: f64, seed: u64) -> usize {
    let mut state = LatticeState::all_ones(size);
    let mut rng = replica_rng(seed, 0);
    run_until(&mut state, lambda, horizon, &mut rng);
    state.occupied_count()
}
