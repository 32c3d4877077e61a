//! Monte Carlo checks of the limit theory: null calibration, local power
//! and the equivalence of S with its U-statistic.
//!
//! Replication `r` draws its sample from seed `split(master, r)`, so a plan
//! gives bit-identical results for any number of worker threads.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dependence::{sample, sample_gaussian_copula, Builtin, DependenceFunction, ModelSpec};
use crate::efficiency::{local_mean, local_power};
use crate::error::{Error, Result};
use crate::normal::{inv_norm_cdf, norm_cdf};
use crate::quadrature::{resolve_functionals, FunctionalSet};
use crate::rank_stats::{
    compute_ranks, null_variance, stat_s, stat_v, stat_w, u_statistic, RankMatrix, SampleMatrix, StatKind, TiePolicy,
};
use crate::seed::{split, stream_rng};

/// Smallest accepted number of replications.
pub const MIN_REPLICATIONS: usize = 100;

/// Asymptotic 1% critical value of the Kolmogorov distribution.
pub const KS_CRITICAL_1PCT: f64 = 1.6276;

// Stream index reserved for the null runs that calibrate W and V.
const CALIBRATION_STREAM: u64 = u64::MAX;

/// Where the samples come from.
#[derive(Debug, Clone)]
pub enum ModelSource {
    /// `1 + θω`, drawn by rejection. The θ stored in the spec is ignored.
    Density(ModelSpec),
    /// Equicorrelated Gaussian copula with correlation θ.
    GaussianCopula { m: usize },
}

impl ModelSource {
    pub fn m(&self) -> usize {
        match self {
            ModelSource::Density(spec) => spec.m(),
            ModelSource::GaussianCopula { m } => *m,
        }
    }

    pub fn name(&self) -> String {
        match self {
            ModelSource::Density(spec) => spec.dependence().name().to_string(),
            ModelSource::GaussianCopula { .. } => "gaussian-copula".into(),
        }
    }

    fn theta_max(&self) -> f64 {
        match self {
            ModelSource::Density(spec) => spec.theta_max(),
            ModelSource::GaussianCopula { .. } => 1.0,
        }
    }

    /// The dependence function whose functionals predict the local power.
    fn dependence(&self) -> Result<DependenceFunction> {
        match self {
            ModelSource::Density(spec) => Ok(spec.dependence().clone()),
            ModelSource::GaussianCopula { m } => DependenceFunction::builtin(Builtin::Gaussian, *m),
        }
    }
}

/// Strength of the alternative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Alternative {
    /// Local parameter, `θ = h/√n`.
    Local(f64),
    /// Fixed θ, independent of n.
    Fixed(f64),
}

#[derive(Debug, Clone)]
pub struct ExperimentPlan {
    pub source: ModelSource,
    pub kind: StatKind,
    pub n: usize,
    pub reps: usize,
    pub alpha: f64,
    pub alternative: Alternative,
    pub seed: u64,
}

impl ExperimentPlan {
    pub fn theta(&self) -> f64 {
        match self.alternative {
            Alternative::Local(h) => h / (self.n as f64).sqrt(),
            Alternative::Fixed(theta) => theta,
        }
    }

    pub fn h(&self) -> f64 {
        match self.alternative {
            Alternative::Local(h) => h,
            Alternative::Fixed(theta) => theta * (self.n as f64).sqrt(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.reps < MIN_REPLICATIONS {
            return Err(Error::InvalidArgument(format!(
                "at least {MIN_REPLICATIONS} replications are required, got {}",
                self.reps
            )));
        }
        if self.kind == StatKind::U {
            return Err(Error::UnsupportedKind("U (use s_vs_u)".into()));
        }
        if self.n < 2 {
            return Err(Error::InvalidArgument(format!("n must be at least 2, got {}", self.n)));
        }
        if !(self.alpha > 0.0 && self.alpha < 0.5) {
            return Err(Error::InvalidArgument(format!("alpha must lie in (0, 0.5), got {}", self.alpha)));
        }
        let theta = self.theta();
        if !(theta >= 0.0) || !theta.is_finite() {
            return Err(Error::InvalidArgument(format!("the alternative must be non-negative, got θ = {theta}")));
        }
        let theta_max = self.source.theta_max();
        let too_large = match self.source {
            ModelSource::GaussianCopula { .. } => theta >= theta_max,
            ModelSource::Density(_) => theta > theta_max,
        };
        if too_large {
            return Err(Error::ThetaTooLarge { theta, theta_max });
        }
        Ok(())
    }
}

/// How the rejection threshold was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Calibration {
    /// `z_α σ_m(0) / √n` from the limit law.
    Asymptotic,
    /// Empirical `1 − α` quantile of R null replications.
    NullSimulation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentResult {
    pub model: String,
    pub kind: StatKind,
    pub m: usize,
    pub n: usize,
    pub reps: usize,
    pub alpha: f64,
    pub h: f64,
    pub theta: f64,
    pub seed: u64,
    pub rejection_rate: f64,
    pub rejection_se: f64,
    pub critical_value: f64,
    pub calibration: Calibration,
    /// Mean and variance of `√n · stat`.
    pub mean_scaled: f64,
    pub var_scaled: f64,
    pub mean_scaled_se: f64,
    /// Limit variance of `√n S`; absent for W and V.
    pub predicted_variance: Option<f64>,
    /// Limit mean `μ_m(h)` of `√n S`.
    pub predicted_mean: Option<f64>,
    /// Limit power `γ_m(h)` of the S test.
    pub predicted_power: Option<f64>,
    /// KS distance of `√n S / σ_m(0)` to `N(μ_m(h)/σ_m(0), 1)`.
    pub ks_distance: Option<f64>,
    pub ks_critical_1pct: f64,
}

fn draw(source: &ModelSource, theta: f64, n: usize, seed: u64) -> Result<SampleMatrix> {
    match source {
        ModelSource::Density(spec) => sample(&spec.with_theta(theta)?, n, seed),
        ModelSource::GaussianCopula { m } => sample_gaussian_copula(*m, theta, n, seed),
    }
}

fn uniform_sample(m: usize, n: usize, seed: u64) -> Result<SampleMatrix> {
    let mut rng = stream_rng(seed, 0);
    SampleMatrix::new(n, m, (0..n * m).map(|_| rng.gen::<f64>()).collect())
}

fn evaluate(kind: StatKind, ranks: &RankMatrix) -> f64 {
    match kind {
        StatKind::S => stat_s(ranks).value,
        StatKind::W => stat_w(ranks).value,
        _ => stat_v(ranks).value,
    }
}

fn replicate<F>(reps: usize, master: u64, f: F) -> Result<Vec<f64>>
where
    F: Fn(u64) -> Result<f64> + Sync,
{
    (0..reps as u64).into_par_iter().map(|r| f(split(master, r))).collect()
}

/// Kolmogorov–Smirnov distance of a sample to a continuous cdf.
pub fn ks_distance(values: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let r = sorted.len() as f64;
    sorted.iter().enumerate().fold(0.0f64, |acc, (i, &v)| {
        let f = cdf(v);
        acc.max((i as f64 + 1.0) / r - f).max(f - i as f64 / r)
    })
}

/// Empirical `p` quantile (type 7, linear interpolation).
pub fn quantile(values: &[f64], p: f64) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let pos = p * (sorted.len() - 1) as f64;
    let (lo, frac) = (pos.floor() as usize, pos.fract());
    if lo + 1 < sorted.len() {
        sorted[lo] + frac * (sorted[lo + 1] - sorted[lo])
    } else {
        sorted[lo]
    }
}

fn mean_var(values: &[f64]) -> (f64, f64) {
    let r = values.len() as f64;
    let mean = values.iter().sum::<f64>() / r;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (r - 1.0);
    (mean, var)
}

/// Runs the plan at any alternative, including `θ = 0`.
pub fn run_power(plan: &ExperimentPlan) -> Result<ExperimentResult> {
    plan.validate()?;
    let (m, n) = (plan.source.m(), plan.n);
    let theta = plan.theta();
    let root_n = (n as f64).sqrt();

    let values = replicate(plan.reps, plan.seed, |seed| {
        let sample = draw(&plan.source, theta, n, seed)?;
        Ok(evaluate(plan.kind, &compute_ranks(&sample, TiePolicy::Reject)?))
    })?;

    let (critical_value, calibration) = if plan.kind == StatKind::S {
        (inv_norm_cdf(1.0 - plan.alpha)? * null_variance(m).sqrt() / root_n, Calibration::Asymptotic)
    } else {
        let null = replicate(plan.reps, split(plan.seed, CALIBRATION_STREAM), |seed| {
            Ok(evaluate(plan.kind, &compute_ranks(&uniform_sample(m, n, seed)?, TiePolicy::Reject)?))
        })?;
        (quantile(&null, 1.0 - plan.alpha), Calibration::NullSimulation)
    };

    let r = plan.reps as f64;
    let rate = values.iter().filter(|&&v| v > critical_value).count() as f64 / r;
    let scaled: Vec<f64> = values.iter().map(|v| root_n * v).collect();
    let (mean_scaled, var_scaled) = mean_var(&scaled);

    let (mut predicted_variance, mut predicted_mean, mut predicted_power, mut ks) = (None, None, None, None);
    if plan.kind == StatKind::S {
        let fs: FunctionalSet = if theta == 0.0 {
            FunctionalSet::new(0.0, 0.0, 0.0, 0.0)
        } else {
            resolve_functionals(&plan.source.dependence()?, None)?.set
        };
        let sd = null_variance(m).sqrt();
        let mu = local_mean(&fs, m, plan.h());
        predicted_variance = Some(sd * sd);
        predicted_mean = Some(mu);
        predicted_power = Some(if theta == 0.0 { plan.alpha } else { local_power(&fs, m, plan.alpha, plan.h())? });
        let shift = mu / sd;
        ks = Some(ks_distance(&scaled.iter().map(|v| v / sd).collect::<Vec<_>>(), |z| norm_cdf(z - shift)));
    }

    Ok(ExperimentResult {
        model: plan.source.name(),
        kind: plan.kind,
        m,
        n,
        reps: plan.reps,
        alpha: plan.alpha,
        h: plan.h(),
        theta,
        seed: plan.seed,
        rejection_rate: rate,
        rejection_se: (rate * (1.0 - rate) / r).sqrt(),
        critical_value,
        calibration,
        mean_scaled,
        var_scaled,
        mean_scaled_se: (var_scaled / r).sqrt(),
        predicted_variance,
        predicted_mean,
        predicted_power,
        ks_distance: ks,
        ks_critical_1pct: KS_CRITICAL_1PCT / r.sqrt(),
    })
}

/// Null calibration run; the plan must have a zero alternative.
pub fn run_null(plan: &ExperimentPlan) -> Result<ExperimentResult> {
    if plan.theta() != 0.0 {
        return Err(Error::InvalidArgument(format!("null run needs h = 0, got θ = {}", plan.theta())));
    }
    run_power(plan)
}

/// Mean absolute difference between S and its U-statistic at one n.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapRow {
    pub n: usize,
    pub mean_gap: f64,
    pub se: f64,
}

/// `mean |S − U|` over R independent null samples for each n.
pub fn s_vs_u(n_list: &[usize], m: usize, reps: usize, seed: u64) -> Result<Vec<GapRow>> {
    if reps < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 replications, got {reps}")));
    }
    n_list
        .iter()
        .map(|&n| {
            let gaps = replicate(reps, split(seed, n as u64), |s| {
                let sample = uniform_sample(m, n, s)?;
                let u = u_statistic(&sample)?.value;
                Ok((stat_s(&compute_ranks(&sample, TiePolicy::Reject)?).value - u).abs())
            })?;
            let (mean, var) = mean_var(&gaps);
            Ok(GapRow { n, mean_gap: mean, se: (var / reps as f64).sqrt() })
        })
        .collect()
}
