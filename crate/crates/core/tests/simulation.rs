use cp_groebner::simulator::{
    density_estimate, extinction_probability, rate_function, replica_rng, run_until, Event, LatticeState,
};
use cp_groebner::*;
use rand::Rng;

fn cfg(lambda: f64, size: usize, replicas: usize, initial: InitialCondition) -> SimConfig {
    SimConfig { lambda, size, horizon: 50.0, replicas, seed: 9, initial }
}

#[test]
fn events_flip_one_site_at_a_positive_rate() {
    let mut rng = replica_rng(3, 0);
    for size in 3..=8usize {
        for bits in 0u32..(1 << size) {
            let occ: Vec<bool> = (0..size).map(|i| bits >> i & 1 == 1).collect();
            let state = LatticeState::from_bits(&occ);
            let total: f64 = (0..size).map(|x| rate_function(&occ, x).at(1.7)).sum();
            assert!((state.total_rate(1.7) - total).abs() < 1e-12);
            let Some((wait, ev)) = state.next_event(1.7, &mut rng) else {
                assert_eq!(bits, 0);
                continue;
            };
            assert!(wait > 0.0);
            let site = match ev {
                Event::Death { site } => site,
                Event::Infection { from, to } => {
                    assert!(occ[from] && !occ[to]);
                    assert!((to + 1) % size == from || (from + 1) % size == to);
                    to
                }
            };
            assert!(rate_function(&occ, site).at(1.7) > 0.0);
            let mut next = state.clone();
            next.apply(ev);
            assert!(next.is_consistent());
            let flipped = (0..size).filter(|&i| next.is_occupied(i) != occ[i]).count();
            assert_eq!(flipped, 1);
        }
    }
}

#[test]
fn empty_lattice_is_absorbing() {
    let mut state = LatticeState::empty(12);
    let mut rng = replica_rng(1, 0);
    assert!(state.next_event(5.0, &mut rng).is_none());
    assert_eq!(run_until(&mut state, 5.0, 10.0, &mut rng), 0.0);
    assert!(state.is_extinct());
}

#[test]
fn runs_stop_at_the_horizon() {
    let mut state = LatticeState::all_ones(50);
    let mut rng = replica_rng(2, 0);
    assert_eq!(run_until(&mut state, 4.0, 3.0, &mut rng), 3.0);
    assert!(!state.is_extinct());
    assert!(state.is_consistent());
}

#[test]
fn streams_are_independent_of_each_other() {
    let a: Vec<u64> = (0..4).map(|_| replica_rng(5, 0).gen()).collect();
    let b: u64 = replica_rng(5, 1).gen();
    assert!(a.windows(2).all(|w| w[0] == w[1]));
    assert_ne!(a[0], b);
}

#[test]
fn estimates_are_reproducible() {
    let c = cfg(2.0, 80, 100, InitialCondition::AllOnes);
    assert_eq!(density_estimate(&c).unwrap(), density_estimate(&c).unwrap());
    let mut other = c.clone();
    other.seed += 1;
    assert_ne!(density_estimate(&c).unwrap().mean, density_estimate(&other).unwrap().mean);
}

#[test]
fn survival_grows_with_infection_rate() {
    let ext: Vec<f64> = [0.5, 1.5, 3.0]
        .iter()
        .map(|&l| extinction_probability(&cfg(l, 120, 400, InitialCondition::SingleSite)).unwrap().mean)
        .collect();
    assert!(ext[0] > ext[1] && ext[1] > ext[2], "{ext:?}");
    let dens: Vec<f64> = [2.5, 4.0]
        .iter()
        .map(|&l| density_estimate(&cfg(l, 120, 40, InitialCondition::AllOnes)).unwrap().mean)
        .collect();
    assert!(dens[0] < dens[1], "{dens:?}");
}

#[test]
fn larger_patterns_survive_more_often() {
    let single = extinction_probability(&cfg(2.0, 120, 400, InitialCondition::SingleSite)).unwrap();
    let block =
        extinction_probability(&cfg(2.0, 120, 400, InitialCondition::Pattern("oooo".parse().unwrap()))).unwrap();
    assert!(block.mean < single.mean, "{} vs {}", block.mean, single.mean);
    assert!(single.half_width > 0.0 && single.half_width < 0.1);
}
