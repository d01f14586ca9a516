//! Continuous-time Monte Carlo for the contact process on a ring.
//!
//! Each replica runs an aggregate-rate Gillespie loop until the lattice is
//! empty or the horizon is reached. Replicas are independent: replica `i`
//! draws from the ChaCha8 stream `i` of the configured seed, so estimates do
//! not depend on how replicas are scheduled across threads.

mod lattice;

pub use lattice::{rate_function, Event, LatticeState, RateWeight};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::identities::ConfigurationPattern;

/// Generator identification recorded with every estimate.
pub const RNG_NAME: &str = "rand_chacha-0.3/ChaCha8Rng(seed_from_u64(seed), stream=replica)";

/// z-value of the two-sided 95% normal interval.
const Z95: f64 = 1.959_963_984_540_054;

/// Stream offset separating the two halves of a duality check.
const DUALITY_STREAM_OFFSET: u64 = 1 << 32;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
    #[error("invalid simulation config: {0}")]
    InvalidConfig(String),
    #[error("pattern of span {span} needs a margin of L/4 on each side; L = {size} is too small")]
    PatternTooWide { span: usize, size: usize },
    #[error("{0}")]
    WrongInitial(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InitialCondition {
    SingleSite,
    Pattern(ConfigurationPattern),
    AllOnes,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SimConfig {
    pub lambda: f64,
    pub size: usize,
    pub horizon: f64,
    pub replicas: usize,
    pub seed: u64,
    pub initial: InitialCondition,
}

impl SimConfig {
    pub fn validate(&self) -> Result<(), SimError> {
        let bad = |m: String| Err(SimError::InvalidConfig(m));
        if !(self.lambda.is_finite() && self.lambda >= 0.0) {
            return bad(format!("lambda must be finite and >= 0, got {}", self.lambda));
        }
        if self.size < 3 {
            return bad(format!("L must be at least 3, got {}", self.size));
        }
        if !(self.horizon.is_finite() && self.horizon > 0.0) {
            return bad(format!("T must be finite and > 0, got {}", self.horizon));
        }
        if self.replicas == 0 {
            return bad("replicas must be at least 1".into());
        }
        Ok(())
    }

    fn pattern(&self) -> Option<ConfigurationPattern> {
        match &self.initial {
            InitialCondition::SingleSite => Some(ConfigurationPattern::single()),
            InitialCondition::Pattern(p) => Some(p.clone()),
            InitialCondition::AllOnes => None,
        }
    }
}

/// Monte Carlo estimate of a probability or density.
#[derive(Clone, Debug, PartialEq)]
pub struct SimulationEstimate {
    pub mean: f64,
    /// Half-width of the 95% normal-approximation interval.
    pub half_width: f64,
    pub replicas: usize,
    /// Mean simulated time per replica (extinction time or horizon).
    pub elapsed_sim_time: f64,
}

impl SimulationEstimate {
    fn from_samples(samples: &[(f64, f64)]) -> Self {
        let n = samples.len() as f64;
        let mean = samples.iter().map(|s| s.0).sum::<f64>() / n;
        let elapsed = samples.iter().map(|s| s.1).sum::<f64>() / n;
        let half_width = if samples.len() > 1 {
            let var = samples.iter().map(|s| (s.0 - mean).powi(2)).sum::<f64>() / (n - 1.0);
            Z95 * (var / n).sqrt()
        } else {
            0.0
        };
        Self { mean: mean.clamp(0.0, 1.0), half_width, replicas: samples.len(), elapsed_sim_time: elapsed }
    }
}

/// Both sides of the self-duality relation `ν(A) = P(ξ^A dies out)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualityEstimate {
    /// Fraction of all-ones-started replicas with `A` vacant at the horizon.
    pub lhs: SimulationEstimate,
    /// Extinction probability starting from `A`.
    pub rhs: SimulationEstimate,
}

pub fn replica_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Runs until extinction or `horizon`; returns the stopping time.
pub fn run_until<R: Rng + ?Sized>(state: &mut LatticeState, lambda: f64, horizon: f64, rng: &mut R) -> f64 {
    let mut t = 0.0;
    while let Some((dt, ev)) = state.next_event(lambda, rng) {
        if t + dt > horizon {
            return horizon;
        }
        t += dt;
        state.apply(ev);
    }
    t
}

/// Sites of `pattern` placed in the middle of a ring of `size` sites, with
/// at least `size / 4` free sites on either side.
pub fn place_pattern(pattern: &ConfigurationPattern, size: usize) -> Result<Vec<usize>, SimError> {
    let span = pattern.span();
    let margin = size / 4;
    if span + 2 * margin > size {
        return Err(SimError::PatternTooWide { span, size });
    }
    let offset = (size - span) / 2;
    Ok(pattern.sites().iter().map(|&s| offset + s as usize).collect())
}

fn run_replicas<F>(replicas: usize, stream_offset: u64, seed: u64, body: F) -> SimulationEstimate
where
    F: Fn(&mut ChaCha8Rng) -> (f64, f64) + Sync,
{
    let samples: Vec<(f64, f64)> =
        (0..replicas as u64).into_par_iter().map(|i| body(&mut replica_rng(seed, stream_offset + i))).collect();
    SimulationEstimate::from_samples(&samples)
}

/// Fraction of replicas started from the configured pattern that are empty
/// by the horizon.
pub fn extinction_probability(cfg: &SimConfig) -> Result<SimulationEstimate, SimError> {
    cfg.validate()?;
    let pattern = cfg.pattern().ok_or(SimError::WrongInitial("extinction needs a finite initial pattern"))?;
    let sites = place_pattern(&pattern, cfg.size)?;
    Ok(run_replicas(cfg.replicas, 0, cfg.seed, |rng| {
        let mut state = LatticeState::from_sites(cfg.size, sites.iter().copied());
        let t = run_until(&mut state, cfg.lambda, cfg.horizon, rng);
        (if state.is_extinct() { 1.0 } else { 0.0 }, t)
    }))
}

/// Mean occupancy of the middle `L/2` sites at the horizon, started from
/// the fully occupied lattice.
pub fn density_estimate(cfg: &SimConfig) -> Result<SimulationEstimate, SimError> {
    cfg.validate()?;
    if cfg.initial != InitialCondition::AllOnes {
        return Err(SimError::WrongInitial("density needs the all-ones initial state"));
    }
    let lo = cfg.size / 4;
    let window = (cfg.size / 2).max(1);
    Ok(run_replicas(cfg.replicas, 0, cfg.seed, |rng| {
        let mut state = LatticeState::all_ones(cfg.size);
        let t = run_until(&mut state, cfg.lambda, cfg.horizon, rng);
        let occupied = (lo..lo + window).filter(|&i| state.is_occupied(i)).count();
        (occupied as f64 / window as f64, t)
    }))
}

/// Estimates both sides of the duality relation for `pattern`.
pub fn duality_check(
    lambda: f64,
    pattern: &ConfigurationPattern,
    size: usize,
    horizon: f64,
    replicas: usize,
    seed: u64,
) -> Result<DualityEstimate, SimError> {
    let cfg = SimConfig { lambda, size, horizon, replicas, seed, initial: InitialCondition::Pattern(pattern.clone()) };
    cfg.validate()?;
    let sites = place_pattern(pattern, size)?;
    let lhs = run_replicas(replicas, DUALITY_STREAM_OFFSET, seed, |rng| {
        let mut state = LatticeState::all_ones(size);
        let t = run_until(&mut state, lambda, horizon, rng);
        (if sites.iter().all(|&i| !state.is_occupied(i)) { 1.0 } else { 0.0 }, t)
    });
    let rhs = extinction_probability(&cfg)?;
    Ok(DualityEstimate { lhs, rhs })
}
