use std::fmt;
use std::fs::File;
use std::io::{self, Write};

use cp_groebner::groebner::{buchberger_with, BuchbergerOptions};
use cp_groebner::identities::identity_patterns;
use cp_groebner::polyring::format;
use cp_groebner::simulator::{density_estimate, duality_check, extinction_probability, RNG_NAME};
use cp_groebner::solver::solve_basis;
use cp_groebner::*;
use serde::Serialize;

use crate::args::*;
use crate::manifest::{ManifestClock, RunManifest};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Degenerate(String),
    Numerical(String),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Degenerate(_) => 3,
            CliError::Numerical(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Degenerate(m) | CliError::Numerical(m) => f.write_str(m),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.into())
    }
}

impl From<SolverError> for CliError {
    fn from(e: SolverError) -> Self {
        let msg = e.to_string();
        match e {
            SolverError::Degenerate
            | SolverError::NoEliminationElement
            | SolverError::MultipleElements(_)
            | SolverError::NotDivisible => CliError::Degenerate(msg),
            SolverError::Groebner(GroebnerError::EmptyIdeal) => CliError::Usage(msg),
            _ => CliError::Numerical(msg),
        }
    }
}

impl From<GroebnerError> for CliError {
    fn from(e: GroebnerError) -> Self {
        SolverError::from(e).into()
    }
}

impl From<IdentityError> for CliError {
    fn from(e: IdentityError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub type CmdResult = Result<(), CliError>;

/// Rounds to 12 significant digits.
fn sig12(x: f64) -> f64 {
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn print_lines(lines: impl IntoIterator<Item = String>) -> CmdResult {
    let mut out = io::stdout().lock();
    for l in lines {
        writeln!(out, "{l}")?;
    }
    Ok(())
}

fn print_json<T: Serialize>(value: &T) -> CmdResult {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

pub fn identities(a: &IdentitiesArgs) -> CmdResult {
    let mut reg = VariableRegistry::new();
    let ids = match (&a.pattern, a.order) {
        (Some(p), _) => vec![correlation_identity(p, &mut reg)],
        (None, Some(m)) => identity_system(m, &mut reg)?,
        (None, None) => return Err(CliError::Usage("give --pattern or --order".into())),
    };
    let ord = reg.lex_order();
    print_lines(ids.iter().map(|p| format(p, &reg, &ord)))
}

struct System {
    reg: VariableRegistry,
    ideal: Ideal,
    label: String,
}

fn build_system(a: &SystemArgs) -> Result<System, CliError> {
    let mut reg = VariableRegistry::new();
    let (ideal, label) = match a.scheme {
        SchemeArg::Builtin => {
            if !a.relations.is_empty() {
                return Err(CliError::Usage("--relation needs --scheme custom".into()));
            }
            let ideal = if a.patterns.is_empty() {
                build_ideal(a.order, &mut reg)
            } else {
                build_custom_ideal(&a.patterns, a.order.scheme(), &mut reg)
            };
            (ideal, a.order.label().to_string())
        }
        SchemeArg::Custom => {
            let patterns =
                if a.patterns.is_empty() { identity_patterns(a.order.identity_order())? } else { a.patterns.clone() };
            let ideal = build_custom_ideal(&patterns, ClosureScheme::custom(a.relations.clone()), &mut reg);
            (ideal, "custom".to_string())
        }
    };
    Ok(System { reg, ideal, label })
}

fn basis_of(sys: &System, trace: bool) -> Result<GroebnerBasis, CliError> {
    let opts = BuchbergerOptions { trace, ..BuchbergerOptions::default() };
    Ok(buchberger_with(&sys.ideal.generators, &sys.reg.lex_order(), &opts)?)
}

pub fn ideal(a: &SystemArgs) -> CmdResult {
    let sys = build_system(a)?;
    let ord = sys.reg.lex_order();
    print_lines(sys.ideal.generators.iter().map(|p| format(p, &sys.reg, &ord)))
}

pub fn groebner(a: &GroebnerArgs) -> CmdResult {
    let sys = build_system(&a.system)?;
    let gb = basis_of(&sys, a.trace)?;
    print_lines(gb.elements().iter().map(|p| format(p, &sys.reg, gb.order())))
}

#[derive(Serialize)]
struct CriticalJson {
    exact: Option<String>,
    value: f64,
}

#[derive(Serialize)]
struct ApproxReport {
    manifest: RunManifest,
    order: String,
    basis: Vec<String>,
    degenerate: bool,
    elimination: Option<String>,
    nontrivial: Option<String>,
    lambda_c: Option<CriticalJson>,
    closed_form: Option<String>,
    discriminant: Option<String>,
    error: Option<String>,
}

pub fn approx(a: &ApproxArgs, clock: &ManifestClock) -> CmdResult {
    if a.out == OutFormat::Csv {
        return Err(CliError::Usage("approx writes text or json".into()));
    }
    let sys = build_system(&a.system)?;
    let gb = basis_of(&sys, false)?;
    let reg = &sys.reg;
    let ord = gb.order().clone();
    let show = |p: &Polynomial| format(p, reg, &ord);
    let basis: Vec<String> = gb.elements().iter().map(show).collect();
    let solved = solve_basis(&sys.label, gb);
    let failure = solved.as_ref().err().cloned().map(CliError::from);
    let degenerate = matches!(failure, Some(CliError::Degenerate(_)));

    match a.out {
        OutFormat::Json => {
            let res = solved.as_ref().ok();
            let report = ApproxReport {
                manifest: clock.finish(None, None),
                order: sys.label.clone(),
                basis,
                degenerate,
                elimination: res.map(|r| show(&r.elim)),
                nontrivial: res.map(|r| show(&r.nontrivial)),
                lambda_c: res.map(|r| CriticalJson {
                    exact: (r.lambda_c.exact != ExactValue::Numeric).then(|| r.lambda_c.exact.to_string()),
                    value: sig12(r.lambda_c.value),
                }),
                closed_form: res.and_then(|r| r.closed_form.as_ref()).map(|c| c.render(reg)),
                discriminant: res.and_then(|r| r.discriminant.as_ref()).map(show),
                error: failure.as_ref().map(|e| e.to_string()),
            };
            print_json(&report)?;
        }
        OutFormat::Text | OutFormat::Csv => {
            let mut lines = vec![format!("order: {}", sys.label), format!("basis ({} elements):", basis.len())];
            lines.extend(basis.iter().map(|b| format!("  {b}")));
            match &solved {
                Ok(r) => {
                    lines.push(format!("elimination: {}", show(&r.elim)));
                    lines.push(format!("nontrivial: {}", show(&r.nontrivial)));
                    let value = sig12(r.lambda_c.value);
                    lines.push(match &r.lambda_c.exact {
                        ExactValue::Numeric => format!("lambda_c: {value}"),
                        exact => format!("lambda_c: {exact} = {value}"),
                    });
                    if let Some(cf) = &r.closed_form {
                        lines.push(format!("branch: {}", cf.render(reg)));
                    }
                    if let Some(d) = &r.discriminant {
                        lines.push(format!("D = {}", show(d)));
                    }
                }
                Err(_) if degenerate => lines.push("trivial solution only".into()),
                Err(_) => {}
            }
            print_lines(lines)?;
        }
    }
    match failure {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

#[derive(Serialize)]
struct SweepRow {
    lambda: f64,
    rho: f64,
}

#[derive(Serialize)]
struct SweepReport {
    manifest: RunManifest,
    order: String,
    rows: Vec<SweepRow>,
}

pub fn sweep(a: &SweepArgs, clock: &ManifestClock) -> CmdResult {
    if !(a.from.is_finite() && a.to.is_finite() && a.step.is_finite()) || a.from < 0.0 || a.to < a.from || a.step <= 0.0
    {
        return Err(CliError::Usage("need 0 <= --from <= --to and --step > 0".into()));
    }
    let res = approximate(a.order)?;
    let n = ((a.to - a.from) / a.step + 1e-9).floor() as usize + 1;
    let rows = (0..n)
        .map(|i| {
            let lambda = sig12(a.from + i as f64 * a.step);
            Ok(SweepRow { lambda, rho: res.density(lambda)? })
        })
        .collect::<Result<Vec<_>, SolverError>>()?;
    let manifest = clock.finish(None, None);
    let mut out: Box<dyn Write> = match &a.output {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout().lock()),
    };
    match a.out {
        OutFormat::Csv => {
            writeln!(out, "# {}", serde_json::to_string(&manifest)?)?;
            let mut w = csv::Writer::from_writer(out);
            for r in &rows {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        OutFormat::Json => {
            serde_json::to_writer_pretty(&mut out, &SweepReport { manifest, order: a.order.label().into(), rows })?;
            writeln!(out)?;
        }
        OutFormat::Text => {
            for r in &rows {
                writeln!(out, "{:>10} {:.12}", r.lambda, r.rho)?;
            }
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct SimParamsJson {
    lambda: f64,
    pattern: Option<String>,
    initial: &'static str,
    #[serde(rename = "L")]
    size: usize,
    #[serde(rename = "T")]
    horizon: f64,
    replicas: usize,
    seed: u64,
}

#[derive(Serialize)]
struct DualityJson {
    occupation_absent: f64,
    occupation_absent_half_width: f64,
    extinction: f64,
    extinction_half_width: f64,
}

#[derive(Serialize)]
struct SimulateReport {
    manifest: RunManifest,
    mode: &'static str,
    params: SimParamsJson,
    mean: f64,
    half_width: f64,
    rng: &'static str,
    elapsed: f64,
    duality: Option<DualityJson>,
}

fn sim_config(lambda: f64, p: &SimParams, initial: InitialCondition) -> SimConfig {
    SimConfig { lambda, size: p.size, horizon: p.horizon, replicas: p.replicas, seed: p.seed, initial }
}

pub fn simulate(a: &SimulateArgs, clock: &ManifestClock) -> CmdResult {
    let p = &a.params;
    let pattern = Some(a.pattern.render());
    let (mode, initial, est, duality) = match a.mode {
        SimMode::Extinction => {
            let e = extinction_probability(&sim_config(a.lambda, p, InitialCondition::Pattern(a.pattern.clone())))?;
            ("extinction", "pattern", e, None)
        }
        SimMode::Density => {
            let e = density_estimate(&sim_config(a.lambda, p, InitialCondition::AllOnes))?;
            ("density", "all-ones", e, None)
        }
        SimMode::Duality => {
            let d = duality_check(a.lambda, &a.pattern, p.size, p.horizon, p.replicas, p.seed)?;
            let diff = SimulationEstimate {
                mean: d.lhs.mean - d.rhs.mean,
                half_width: d.lhs.half_width.hypot(d.rhs.half_width),
                replicas: d.rhs.replicas,
                elapsed_sim_time: d.rhs.elapsed_sim_time,
            };
            let extra = DualityJson {
                occupation_absent: d.lhs.mean,
                occupation_absent_half_width: d.lhs.half_width,
                extinction: d.rhs.mean,
                extinction_half_width: d.rhs.half_width,
            };
            ("duality", "pattern", diff, Some(extra))
        }
    };
    let report = SimulateReport {
        manifest: clock.finish(Some(RNG_NAME), Some(p.seed)),
        mode,
        params: SimParamsJson {
            lambda: a.lambda,
            pattern: if a.mode == SimMode::Density { None } else { pattern },
            initial,
            size: p.size,
            horizon: p.horizon,
            replicas: p.replicas,
            seed: p.seed,
        },
        mean: est.mean,
        half_width: est.half_width,
        rng: RNG_NAME,
        elapsed: est.elapsed_sim_time,
        duality,
    };
    print_json(&report)
}

#[derive(Serialize)]
struct CompareReport {
    manifest: RunManifest,
    order: String,
    lambda: f64,
    lambda_c: f64,
    rho_approx: f64,
    rho_sim: f64,
    ci: f64,
    extinction_approx: f64,
    extinction_sim: f64,
    extinction_ci: f64,
}

pub fn compare(a: &CompareArgs, clock: &ManifestClock) -> CmdResult {
    let res = approximate(a.order)?;
    let p = &a.params;
    let rho_approx = res.density(a.lambda)?;
    let density = density_estimate(&sim_config(a.lambda, p, InitialCondition::AllOnes))?;
    let extinction = extinction_probability(&sim_config(a.lambda, p, InitialCondition::SingleSite))?;
    print_json(&CompareReport {
        manifest: clock.finish(Some(RNG_NAME), Some(p.seed)),
        order: a.order.label().into(),
        lambda: a.lambda,
        lambda_c: sig12(res.lambda_c.value),
        rho_approx,
        rho_sim: density.mean,
        ci: density.half_width,
        extinction_approx: 1.0 - rho_approx,
        extinction_sim: extinction.mean,
        extinction_ci: extinction.half_width,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(sig12(1.180_460_421_716_37), 1.18046042172);
        assert_eq!(sig12(0.5), 0.5);
        assert_eq!(sig12(1.05 + 1e-15), 1.05);
    }

    #[test]
    fn solver_errors_map_to_exit_codes() {
        assert_eq!(CliError::from(SolverError::Degenerate).exit_code(), 3);
        assert_eq!(CliError::from(SolverError::NoEliminationElement).exit_code(), 3);
        assert_eq!(CliError::from(SolverError::NoPhysicalRoot { lambda: 0.1 }).exit_code(), 4);
        let limit = GroebnerError::TermLimitExceeded { terms: 10, limit: 5 };
        assert_eq!(CliError::from(limit).exit_code(), 4);
        assert_eq!(CliError::from(GroebnerError::EmptyIdeal).exit_code(), 2);
    }
}
