use mvrho::dependence::Builtin;
use mvrho::efficiency::power_curve;
use mvrho::green::{
    count_upsets, lagrange_lambda, optimal_alternative, parse_subsets, solve_coeffs, subset_label, Measure,
    UpSetFamily,
};
use mvrho::rank_stats::{compute_ranks, stat_s, stat_v, stat_w, standardize, u_statistic, U_STATISTIC_CAP};
use mvrho::sim::{run_power, s_vs_u, Alternative, ExperimentPlan, ModelSource};
use mvrho::{DependenceFunction, Error, Method, ModelSpec, StatKind, TiePolicy};

use crate::args::{EfficiencyArgs, GreenArgs, ModelChoice, SimStat, SimulateArgs, StatArgs, StatChoice};
use crate::error::{CliError, CliResult};
use crate::input::read_sample;
use crate::report::{Coefficient, EfficiencyEntry, GreenReport, GridDump, Payload, StatReport};

/// Largest grid tabulated by `green --optimal`.
pub const GRID_DUMP_CAP: usize = 1_000_000;

fn builtin(choice: ModelChoice) -> Builtin {
    match choice {
        ModelChoice::Fgm => Builtin::Fgm,
        ModelChoice::Gaussian => Builtin::Gaussian,
        ModelChoice::OptimalS => Builtin::OptimalS,
        ModelChoice::OptimalW => Builtin::OptimalW,
    }
}

fn parse_ties(spec: &str) -> CliResult<TiePolicy> {
    match spec.trim() {
        "reject" => Ok(TiePolicy::Reject),
        other => other
            .strip_prefix("random:")
            .and_then(|s| s.parse().ok())
            .map(TiePolicy::Random)
            .ok_or_else(|| CliError::Usage(format!("--ties must be `reject` or `random:SEED`, got `{other}`"))),
    }
}

pub fn stat(args: &StatArgs) -> CliResult<Payload> {
    let sample = read_sample(&args.input)?;
    let ranks = compute_ranks(&sample, parse_ties(&args.ties)?)?;
    let (n, m) = (sample.n(), sample.m());
    let mut statistics = Vec::new();
    let mut notes = Vec::new();
    let want = |k: StatChoice| args.stat == k || args.stat == StatChoice::All;
    if want(StatChoice::S) {
        statistics.push(stat_s(&ranks));
    }
    if want(StatChoice::W) {
        statistics.push(stat_w(&ranks));
    }
    if want(StatChoice::V) {
        statistics.push(stat_v(&ranks));
    }
    if want(StatChoice::U) {
        match u_statistic(&sample) {
            Ok(u) => statistics.push(u),
            Err(Error::TooLarge { size, .. }) if args.stat == StatChoice::All => {
                notes.push(format!("U skipped: {size:e} kernel terms exceed the cap of {U_STATISTIC_CAP:e}"));
            }
            Err(Error::InvalidSample(msg)) if args.stat == StatChoice::All => notes.push(format!("U skipped: {msg}")),
            Err(e) => return Err(e.into()),
        }
    }
    let standardized_s = match statistics.iter().find(|s| s.kind == StatKind::S) {
        Some(s) => Some(standardize(s, args.alpha)?),
        None => None,
    };
    Ok(Payload::Stat(StatReport { n, m, ties: args.ties.clone(), statistics, standardized_s, notes }))
}

pub fn efficiency(args: &EfficiencyArgs) -> CliResult<Payload> {
    let method = args.method.as_deref().map(|s| Method::parse_with_seed(s, args.seed)).transpose()?;
    let mut entries = Vec::new();
    for &m in &args.m {
        let dep = DependenceFunction::builtin(builtin(args.model), m)?;
        let report = mvrho::report(&dep, method)?;
        if let Some(w) = &report.warning {
            log::warn!("m = {m}: {w}");
        }
        let power = if args.h.is_empty() {
            None
        } else {
            Some(power_curve(&report.functionals, m, args.alpha, &args.h)?)
        };
        entries.push(EfficiencyEntry { report, power });
    }
    Ok(Payload::Efficiency(entries))
}

fn source(args: &SimulateArgs) -> CliResult<ModelSource> {
    Ok(match args.model {
        ModelChoice::Gaussian => ModelSource::GaussianCopula { m: args.m },
        other => ModelSource::Density(ModelSpec::new(DependenceFunction::builtin(builtin(other), args.m)?, 0.0)?),
    })
}

pub fn simulate(args: &SimulateArgs) -> CliResult<Payload> {
    if args.u_gap {
        return Ok(Payload::UGap(s_vs_u(&args.n, args.m, args.reps, args.seed)?));
    }
    let source = source(args)?;
    let alternatives: Vec<Alternative> = if !args.theta.is_empty() {
        args.theta.iter().map(|&t| Alternative::Fixed(t)).collect()
    } else if !args.h.is_empty() {
        args.h.iter().map(|&h| Alternative::Local(h)).collect()
    } else {
        vec![Alternative::Local(0.0)]
    };
    let mut results = Vec::new();
    for &n in &args.n {
        for &alternative in &alternatives {
            for &kind in &args.stat {
                let kind = match kind {
                    SimStat::S => StatKind::S,
                    SimStat::W => StatKind::W,
                    SimStat::V => StatKind::V,
                };
                let plan = ExperimentPlan {
                    source: source.clone(),
                    kind,
                    n,
                    reps: args.reps,
                    alpha: args.alpha,
                    alternative,
                    seed: args.seed,
                };
                results.push(run_power(&plan)?);
            }
        }
    }
    Ok(Payload::Simulation(results))
}

fn parse_point(text: &str, m: usize) -> CliResult<Vec<f64>> {
    let p: Vec<f64> = text
        .split(',')
        .map(|v| v.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("`{text}` is not a comma-separated point")))?;
    if p.len() != m {
        return Err(CliError::Usage(format!("point `{text}` has {} coordinates, expected {m}", p.len())));
    }
    Ok(p)
}

fn grid_points(m: usize, g: usize) -> impl Iterator<Item = Vec<f64>> {
    let total = g.pow(m as u32);
    (0..total).map(move |idx| {
        (0..m).map(|j| ((idx / g.pow((m - 1 - j) as u32)) % g) as f64 / (g - 1) as f64).collect()
    })
}

pub fn green(args: &GreenArgs) -> CliResult<Payload> {
    let m = args.m;
    let family = UpSetFamily::new(m, parse_subsets(m, &args.family)?, args.close)?;
    let kernel = solve_coeffs(&family);
    let measure = if args.points.is_empty() {
        if !args.weights.is_empty() {
            return Err(CliError::Usage("--weights needs --point".into()));
        }
        Measure::Lebesgue
    } else {
        let points = args.points.iter().map(|p| parse_point(p, m)).collect::<CliResult<Vec<_>>>()?;
        let weights =
            if args.weights.is_empty() { vec![1.0 / points.len() as f64; points.len()] } else { args.weights.clone() };
        Measure::Discrete { points, weights }
    };
    let measure_name = match &measure {
        Measure::Lebesgue => "lebesgue".to_string(),
        Measure::Discrete { points, .. } => format!("discrete({})", points.len()),
    };
    let kernel_value = if args.eval.is_empty() {
        None
    } else {
        if args.eval.len() != m || args.xi.len() != m {
            return Err(CliError::Usage(format!("--eval and --xi need {m} coordinates each")));
        }
        Some(kernel.eval(&args.eval, &args.xi)?)
    };
    let lambda = if args.lambda { Some(lagrange_lambda(&kernel, &measure)?) } else { None };
    let optimal = if args.optimal {
        if args.grid < 2 {
            return Err(CliError::Usage("--grid needs at least 2 points per axis".into()));
        }
        let total = (args.grid as f64).powi(m as i32);
        if total > GRID_DUMP_CAP as f64 {
            return Err(Error::TooLarge { what: "grid dump", size: total, cap: GRID_DUMP_CAP as f64 }.into());
        }
        let dep = optimal_alternative(&family, &measure)?;
        let rows = grid_points(m, args.grid)
            .map(|mut x| {
                let v = dep.omega_upper(&x);
                x.push(v);
                x
            })
            .collect();
        Some(GridDump { points_per_axis: args.grid, name: dep.name().to_string(), rows })
    } else {
        None
    };
    let upset_count = if args.count_upsets { Some(count_upsets(m)?) } else { None };
    Ok(Payload::Green(GreenReport {
        m,
        family: family.members().map(subset_label).collect(),
        coefficients: kernel.coefficients().map(|(u, value)| Coefficient { subset: subset_label(u), value }).collect(),
        measure: measure_name,
        kernel_value,
        lambda,
        optimal,
        upset_count,
    }))
}
