//! Integration over the unit cube: tensor Gauss–Legendre rules, a
//! Gauss–Hermite rule in latent normal coordinates for the Gaussian
//! dependence function, and plain Monte Carlo.

use std::fmt;

use rand::Rng;
use rand_distr::Open01;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dependence::DependenceFunction;
use crate::error::{Error, Result};
use crate::seed::stream_rng;

/// Maximum number of tensor-rule evaluations.
pub const TENSOR_CAP: f64 = 1e8;

/// One-dimensional rule on `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn points_per_axis(&self) -> usize {
        self.nodes.len()
    }
}

/// Gauss–Legendre rule with `k` nodes mapped to `[0, 1]`.
pub fn gauss_rule(k: usize) -> Result<QuadratureRule> {
    if !(1..=64).contains(&k) {
        return Err(Error::InvalidArgument(format!("Gauss rule order must be in 1..=64, got {k}")));
    }
    let mut nodes = vec![0.0; k];
    let mut weights = vec![0.0; k];
    let kf = k as f64;
    for i in 0..k.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (kf + 0.5)).cos();
        let mut dp;
        loop {
            let (mut p1, mut p2) = (1.0, 0.0);
            for j in 0..k {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = ((2.0 * jf + 1.0) * z * p2 - jf * p3) / (jf + 1.0);
            }
            dp = kf * (z * p1 - p2) / (z * z - 1.0);
            let step = p1 / dp;
            z -= step;
            if step.abs() < 1e-15 {
                break;
            }
        }
        let w = 1.0 / ((1.0 - z * z) * dp * dp);
        nodes[i] = 0.5 * (1.0 - z);
        nodes[k - 1 - i] = 0.5 * (1.0 + z);
        weights[i] = w;
        weights[k - 1 - i] = w;
    }
    Ok(QuadratureRule { nodes, weights })
}

/// Gauss–Hermite rule for the standard normal law: nodes `z_i`, weights
/// summing to one, so `Σ w_i f(z_i) ≈ E f(Z)`.
pub fn gauss_hermite_normal(k: usize) -> Result<QuadratureRule> {
    if !(1..=64).contains(&k) {
        return Err(Error::InvalidArgument(format!("Gauss-Hermite order must be in 1..=64, got {k}")));
    }
    // Newton on orthonormal physicists' Hermite polynomials.
    let pim4 = std::f64::consts::PI.powf(-0.25);
    let kf = k as f64;
    let mut x = vec![0.0; k];
    let mut w = vec![0.0; k];
    let mut z = 0.0;
    for i in 0..k.div_ceil(2) {
        z = match i {
            0 => (2.0 * kf + 1.0).sqrt() - 1.85575 * (2.0 * kf + 1.0).powf(-0.16667),
            1 => z - 1.14 * kf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * x[0],
            3 => 1.91 * z - 0.91 * x[1],
            _ => 2.0 * z - x[i - 2],
        };
        let mut pp;
        let mut iterations = 0;
        loop {
            let (mut p1, mut p2) = (pim4, 0.0);
            for j in 0..k {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = z * (2.0 / (jf + 1.0)).sqrt() * p2 - (jf / (jf + 1.0)).sqrt() * p3;
            }
            pp = (2.0 * kf).sqrt() * p2;
            let step = p1 / pp;
            z -= step;
            iterations += 1;
            if step.abs() <= 1e-15 * z.abs().max(1.0) || iterations > 100 {
                break;
            }
        }
        x[i] = z;
        x[k - 1 - i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[k - 1 - i] = w[i];
    }
    let sqrt_pi = std::f64::consts::PI.sqrt();
    let mut nodes: Vec<f64> = x.iter().map(|v| v * std::f64::consts::SQRT_2).collect();
    let mut weights: Vec<f64> = w.iter().map(|v| v / sqrt_pi).collect();
    nodes.reverse();
    weights.reverse();
    Ok(QuadratureRule { nodes, weights })
}

/// Integration method for the functionals of a dependence function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    ClosedForm,
    Gauss(usize),
    MonteCarlo { samples: usize, seed: u64 },
    /// Gauss–Hermite in latent normal coordinates `x_j = Φ(z_j)`.
    GaussHermite(usize),
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::ClosedForm => write!(f, "closed"),
            Method::Gauss(k) => write!(f, "gauss:{k}"),
            Method::MonteCarlo { samples, seed } => write!(f, "mc:{samples}@{seed}"),
            Method::GaussHermite(k) => write!(f, "gh:{k}"),
        }
    }
}

impl Method {
    /// Parses `closed`, `gauss:K`, `gh:K` or `mc:N[@SEED]`. A Monte Carlo
    /// method without its own seed takes `seed`; without either it is rejected.
    pub fn parse_with_seed(s: &str, seed: Option<u64>) -> Result<Method> {
        let bad = || Error::InvalidArgument(format!("unknown integration method `{s}`"));
        let count = |v: &str| v.trim().parse::<usize>().map_err(|_| bad());
        let s = s.trim();
        if s == "closed" {
            return Ok(Method::ClosedForm);
        }
        let (name, arg) = s.split_once(':').ok_or_else(bad)?;
        match name {
            "gauss" => Ok(Method::Gauss(count(arg)?)),
            "gh" => Ok(Method::GaussHermite(count(arg)?)),
            "mc" => {
                let (samples, own_seed) = match arg.split_once('@') {
                    Some((n, sd)) => (count(n)?, Some(sd.trim().parse::<u64>().map_err(|_| bad())?)),
                    None => (count(arg)?, None),
                };
                let seed = own_seed.or(seed).ok_or_else(|| {
                    Error::InvalidArgument(format!("Monte Carlo method `{s}` needs a seed (mc:N@SEED)"))
                })?;
                Ok(Method::MonteCarlo { samples, seed })
            }
            _ => Err(bad()),
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Method> {
        Method::parse_with_seed(s, None)
    }
}

/// Default Gauss–Legendre order, exact for every polynomial built-in.
pub fn default_gauss_order(m: usize) -> usize {
    6.max(m + 2)
}

/// Default latent Gauss–Hermite order: at most 40 nodes and about 2·10⁶ points.
pub fn default_hermite_order(m: usize) -> usize {
    let mut k = 40usize;
    while k > 2 && (k as f64).powi(m as i32) > 2e6 {
        k -= 1;
    }
    k
}

impl Method {
    /// Numerical rule used when no method is requested: latent Gauss–Hermite
    /// for the Gaussian function, Gauss–Legendre otherwise.
    pub fn default_for(dep: &DependenceFunction) -> Method {
        if dep.is_gaussian() {
            Method::GaussHermite(default_hermite_order(dep.m()))
        } else {
            let k = dep.max_integrand_degree().map_or(0, |d| d / 2 + 1);
            Method::Gauss(default_gauss_order(dep.m()).max(k))
        }
    }
}

fn tensor_size(k: usize, m: usize) -> f64 {
    (k as f64).powi(m as i32)
}

/// Σ over the tensor grid of `∏ w · f(point)`, vector-valued. The first axis
/// is split across workers and partial sums are added in index order.
fn tensor_sum<F>(m: usize, rule: &QuadratureRule, width: usize, f: F) -> Result<Vec<f64>>
where
    F: Fn(&[f64], &mut [f64]) + Sync,
{
    let k = rule.points_per_axis();
    let size = tensor_size(k, m);
    if size > TENSOR_CAP {
        return Err(Error::TooLarge { what: "tensor quadrature", size, cap: TENSOR_CAP });
    }
    let partials: Vec<Vec<f64>> = (0..k)
        .into_par_iter()
        .map(|first| {
            let mut acc = vec![0.0; width];
            let mut out = vec![0.0; width];
            let mut idx = vec![0usize; m];
            idx[0] = first;
            let mut point = vec![0.0; m];
            loop {
                let mut w = 1.0;
                for (d, &i) in idx.iter().enumerate() {
                    point[d] = rule.nodes[i];
                    w *= rule.weights[i];
                }
                out.iter_mut().for_each(|v| *v = 0.0);
                f(&point, &mut out);
                for (a, o) in acc.iter_mut().zip(&out) {
                    *a += w * o;
                }
                let mut d = 1;
                loop {
                    if d >= m {
                        return acc;
                    }
                    idx[d] += 1;
                    if idx[d] < k {
                        break;
                    }
                    idx[d] = 0;
                    d += 1;
                }
            }
        })
        .collect();
    let mut total = vec![0.0; width];
    for p in partials {
        for (t, v) in total.iter_mut().zip(p) {
            *t += v;
        }
    }
    Ok(total)
}

/// Tensor-product rule applied to `f` on `[0,1]^m`.
pub fn integrate_cube<F>(f: F, m: usize, rule: &QuadratureRule) -> Result<f64>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    Ok(tensor_sum(m, rule, 1, |x, out| out[0] = f(x))?[0])
}

const MC_BLOCK: usize = 1 << 14;

/// Per-component Monte Carlo means and standard errors over uniform points.
/// Block `b` of the sample uses stream `b` of `seed`.
fn mc_sum<F>(m: usize, samples: usize, seed: u64, width: usize, f: F) -> (Vec<f64>, Vec<f64>)
where
    F: Fn(&[f64], &mut [f64]) + Sync,
{
    let blocks = samples.div_ceil(MC_BLOCK);
    let partials: Vec<(Vec<f64>, Vec<f64>)> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = stream_rng(seed, b as u64);
            let count = MC_BLOCK.min(samples - b * MC_BLOCK);
            let mut sum = vec![0.0; width];
            let mut sq = vec![0.0; width];
            let mut x = vec![0.0; m];
            let mut out = vec![0.0; width];
            for _ in 0..count {
                x.iter_mut().for_each(|v| *v = rng.sample(Open01));
                out.iter_mut().for_each(|v| *v = 0.0);
                f(&x, &mut out);
                for c in 0..width {
                    sum[c] += out[c];
                    sq[c] += out[c] * out[c];
                }
            }
            (sum, sq)
        })
        .collect();
    let mut sum = vec![0.0; width];
    let mut sq = vec![0.0; width];
    for (s, q) in partials {
        for c in 0..width {
            sum[c] += s[c];
            sq[c] += q[c];
        }
    }
    let nf = samples as f64;
    let mean: Vec<f64> = sum.iter().map(|s| s / nf).collect();
    let se = mean
        .iter()
        .zip(&sq)
        .map(|(mu, q)| {
            let var = ((q / nf - mu * mu) * nf / (nf - 1.0)).max(0.0);
            (var / nf).sqrt()
        })
        .collect();
    (mean, se)
}

/// Plain Monte Carlo estimate of `∫ f` over `[0,1]^m` with its standard error.
pub fn mc_integrate<F>(f: F, m: usize, samples: usize, seed: u64) -> Result<(f64, f64)>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    if samples < 1000 {
        return Err(Error::InvalidArgument(format!("Monte Carlo needs at least 1000 samples, got {samples}")));
    }
    let (mean, se) = mc_sum(m, samples, seed, 1, |x, out| out[0] = f(x));
    Ok((mean[0], se[0]))
}

/// The four integrals entering the slopes and the Fisher information.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FunctionalSet {
    /// ∫Ω dx.
    pub int_omega: f64,
    /// ∫∏x_j ω dx.
    pub int_prodx_omega: f64,
    /// Σ_{i<j} ∫x_i x_j ω dx.
    pub int_pair: f64,
    /// ∫ω² dx.
    pub fisher: f64,
    /// Monte Carlo standard errors in the same order, when estimated.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub std_errors: Option<[f64; 4]>,
}

impl FunctionalSet {
    pub fn new(int_omega: f64, int_prodx_omega: f64, int_pair: f64, fisher: f64) -> Self {
        Self { int_omega, int_prodx_omega, int_pair, fisher, std_errors: None }
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.int_omega, self.int_prodx_omega, self.int_pair, self.fisher]
    }
}

/// Integrates a vector-valued function of `(x, Ω(x), ω(x))` against the
/// Lebesgue measure with the given numerical method.
pub fn integrate_dependence<F>(dep: &DependenceFunction, method: Method, width: usize, f: F) -> Result<Vec<f64>>
where
    F: Fn(&[f64], f64, f64) -> Vec<f64> + Sync,
{
    let m = dep.m();
    let fill = |x: &[f64], out: &mut [f64]| {
        let v = f(x, dep.omega_upper(x), dep.omega_density(x));
        out.copy_from_slice(&v);
    };
    match method {
        Method::ClosedForm => Err(Error::InvalidArgument("closed form is not a numerical rule".into())),
        Method::Gauss(k) => {
            if dep.is_gaussian() {
                return Err(Error::SingularIntegrand(dep.name().to_string()));
            }
            tensor_sum(m, &gauss_rule(k)?, width, fill)
        }
        Method::GaussHermite(k) => {
            if !dep.is_gaussian() {
                return Err(Error::InvalidArgument(format!(
                    "the latent Gauss-Hermite rule applies only to the gaussian function, not `{}`",
                    dep.name()
                )));
            }
            let rule = gauss_hermite_normal(k)?;
            tensor_sum(m, &rule, width, |z, out| {
                let mut x = vec![0.0; m];
                let (upper, dens) = dep.eval_latent(z, &mut x).expect("gaussian has a latent form");
                out.copy_from_slice(&f(&x, upper, dens));
            })
        }
        Method::MonteCarlo { samples, seed } => {
            if samples < 1000 {
                return Err(Error::InvalidArgument(format!("Monte Carlo needs at least 1000 samples, got {samples}")));
            }
            Ok(mc_sum(m, samples, seed, width, fill).0)
        }
    }
}

fn functional_integrand(x: &[f64], upper: f64, dens: f64) -> [f64; 4] {
    let mut pair = 0.0;
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            pair += x[i] * x[j];
        }
    }
    [upper, x.iter().product::<f64>() * dens, pair * dens, dens * dens]
}

/// Computes the four functionals of `dep` by the requested method.
pub fn functionals(dep: &DependenceFunction, method: Method) -> Result<FunctionalSet> {
    let m = dep.m();
    match method {
        Method::ClosedForm => dep.closed_form().copied().ok_or_else(|| Error::MissingClosedForm(dep.name().to_string())),
        Method::MonteCarlo { samples, seed } => {
            if samples < 1000 {
                return Err(Error::InvalidArgument(format!("Monte Carlo needs at least 1000 samples, got {samples}")));
            }
            let (mean, se) = mc_sum(m, samples, seed, 4, |x, out| {
                out.copy_from_slice(&functional_integrand(x, dep.omega_upper(x), dep.omega_density(x)))
            });
            Ok(FunctionalSet {
                std_errors: Some([se[0], se[1], se[2], se[3]]),
                ..FunctionalSet::new(mean[0], mean[1], mean[2], mean[3])
            })
        }
        _ => {
            let v = integrate_dependence(dep, method, 4, |x, u, d| functional_integrand(x, u, d).to_vec())?;
            Ok(FunctionalSet::new(v[0], v[1], v[2], v[3]))
        }
    }
}

/// Functionals together with the method that produced them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResolvedFunctionals {
    pub set: FunctionalSet,
    pub method: Method,
    pub warning: Option<String>,
}

/// Samples used when a tensor rule would exceed [`TENSOR_CAP`].
pub const FALLBACK_MC_SAMPLES: usize = 1_000_000;

/// Applies the method precedence: the requested method if given, otherwise
/// closed form, then the default numerical rule. Tensor rules over the
/// evaluation cap fall back to Monte Carlo with a warning.
pub fn resolve_functionals(dep: &DependenceFunction, requested: Option<Method>) -> Result<ResolvedFunctionals> {
    let method = match requested {
        Some(m) => m,
        None if dep.closed_form().is_some() => Method::ClosedForm,
        None => Method::default_for(dep),
    };
    match functionals(dep, method) {
        Ok(set) => Ok(ResolvedFunctionals { set, method, warning: None }),
        Err(Error::TooLarge { size, .. }) => {
            let fallback = Method::MonteCarlo { samples: FALLBACK_MC_SAMPLES, seed: 0 };
            log::warn!("{method} needs {size:e} evaluations; falling back to {fallback}");
            let set = functionals(dep, fallback)?;
            Ok(ResolvedFunctionals {
                set,
                method: fallback,
                warning: Some(format!("{method} exceeds the tensor cap ({size:e} points); used {fallback}")),
            })
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dependence::Builtin;

    #[test]
    fn low_order_rules() {
        let r1 = gauss_rule(1).unwrap();
        assert_eq!(r1.nodes, vec![0.5]);
        assert!((r1.weights[0] - 1.0).abs() < 1e-15);
        let r2 = gauss_rule(2).unwrap();
        let h = 1.0 / (2.0 * 3f64.sqrt());
        assert!((r2.nodes[0] - (0.5 - h)).abs() < 1e-15);
        assert!((r2.nodes[1] - (0.5 + h)).abs() < 1e-15);
    }

    #[test]
    fn degree_exactness_and_normalization() {
        for k in 1..=64 {
            let r = gauss_rule(k).unwrap();
            let total: f64 = r.weights.iter().sum();
            assert!((total - 1.0).abs() < 1e-12, "k={k}");
            assert!(r.nodes.iter().all(|&x| x > 0.0 && x < 1.0));
            for d in 0..2 * k {
                let q: f64 = r.nodes.iter().zip(&r.weights).map(|(x, w)| w * x.powi(d as i32)).sum();
                assert!((q - 1.0 / (d as f64 + 1.0)).abs() < 1e-12, "k={k} d={d}");
            }
        }
        let r5 = gauss_rule(5).unwrap();
        assert!((integrate_cube(|x| x[0].powi(9), 1, &r5).unwrap() - 0.1).abs() < 1e-12);
        assert!(gauss_rule(0).is_err() && gauss_rule(65).is_err());
    }

    #[test]
    fn hermite_moments() {
        for k in [1usize, 2, 5, 10, 20, 40, 64] {
            let r = gauss_hermite_normal(k).unwrap();
            let moment = |p: i32| -> f64 { r.nodes.iter().zip(&r.weights).map(|(z, w)| w * z.powi(p)).sum() };
            assert!((moment(0) - 1.0).abs() < 1e-12, "k={k}");
            assert!(moment(1).abs() < 1e-12);
            if k >= 2 {
                assert!((moment(2) - 1.0).abs() < 1e-11, "k={k}");
            }
            if k >= 3 {
                assert!((moment(4) - 3.0).abs() < 1e-10, "k={k}");
            }
        }
    }

    #[test]
    fn cube_integrals() {
        let r = gauss_rule(4).unwrap();
        for m in 1..=4 {
            assert!((integrate_cube(|_| 1.0, m, &r).unwrap() - 1.0).abs() < 1e-13);
            let p = integrate_cube(|x| x.iter().product(), m, &r).unwrap();
            assert!((p - 0.5f64.powi(m as i32)).abs() < 1e-14);
        }
        let fgm = DependenceFunction::builtin(Builtin::Fgm, 2).unwrap();
        let r2 = gauss_rule(2).unwrap();
        let v = integrate_cube(|x| fgm.omega_density(x).powi(2), 2, &r2).unwrap();
        assert!((v - 1.0 / 9.0).abs() < 1e-14);
        let big = gauss_rule(64).unwrap();
        assert!(matches!(integrate_cube(|_| 1.0, 5, &big), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn monte_carlo_basics() {
        let (v, se) = mc_integrate(|_| 2.5, 3, 5000, 1).unwrap();
        assert_eq!(v, 2.5);
        assert!(se < 1e-12);
        let (v, se) = mc_integrate(|x| x.iter().product(), 3, 1_000_000, 42).unwrap();
        assert!((v - 0.125).abs() < 4.0 * se, "{v} ± {se}");
        assert!(mc_integrate(|_| 1.0, 2, 10, 0).is_err());
    }

    #[test]
    fn gaussian_fisher_by_monte_carlo() {
        let g = DependenceFunction::builtin(Builtin::Gaussian, 3).unwrap();
        let (v, se) = mc_integrate(|x| g.omega_density(x).powi(2), 3, 1_000_000, 7).unwrap();
        assert!((v - 3.0).abs() < 4.0 * se, "{v} ± {se}");
    }

    #[test]
    fn fgm_gauss_matches_closed_form() {
        let dep = DependenceFunction::builtin(Builtin::Fgm, 3).unwrap();
        let g = functionals(&dep, Method::Gauss(4)).unwrap().as_array();
        let c = functionals(&dep, Method::ClosedForm).unwrap().as_array();
        for (a, b) in g.iter().zip(&c) {
            assert!((a - b).abs() < 1e-10, "{g:?} vs {c:?}");
        }
    }

    #[test]
    fn gaussian_latent_rule() {
        let dep = DependenceFunction::builtin(Builtin::Gaussian, 2).unwrap();
        let fs = functionals(&dep, Method::GaussHermite(40)).unwrap();
        assert!((fs.int_pair - 1.0 / (4.0 * std::f64::consts::PI)).abs() < 1e-6, "{fs:?}");
        assert!(matches!(functionals(&dep, Method::Gauss(6)), Err(Error::SingularIntegrand(_))));
        let fgm = DependenceFunction::builtin(Builtin::Fgm, 2).unwrap();
        assert!(functionals(&fgm, Method::GaussHermite(10)).is_err());
        let opt = DependenceFunction::builtin(Builtin::OptimalS, 2).unwrap();
        assert!(matches!(functionals(&opt, Method::ClosedForm), Err(Error::MissingClosedForm(_))));
    }

    #[test]
    fn method_round_trip() {
        for m in [Method::ClosedForm, Method::Gauss(7), Method::GaussHermite(30), Method::MonteCarlo { samples: 5000, seed: 9 }] {
            assert_eq!(m.to_string().parse::<Method>().unwrap(), m);
        }
        assert!("mc:100".parse::<Method>().is_err());
        assert_eq!(Method::parse_with_seed("mc:100", Some(4)).unwrap(), Method::MonteCarlo { samples: 100, seed: 4 });
        assert!("simpson:3".parse::<Method>().is_err());
    }

    #[test]
    fn precedence_and_fallback() {
        let fgm = DependenceFunction::builtin(Builtin::Fgm, 3).unwrap();
        assert_eq!(resolve_functionals(&fgm, None).unwrap().method, Method::ClosedForm);
        let opt = DependenceFunction::builtin(Builtin::OptimalS, 3).unwrap();
        assert_eq!(resolve_functionals(&opt, None).unwrap().method, Method::Gauss(6));
        let opt5 = DependenceFunction::builtin(Builtin::OptimalS, 5).unwrap();
        let wide = resolve_functionals(&opt5, Some(Method::Gauss(64))).unwrap();
        assert!(matches!(wide.method, Method::MonteCarlo { .. }));
        assert!(wide.warning.is_some());
    }

    #[test]
    fn gauss_and_monte_carlo_agree_for_builtins() {
        for kind in [Builtin::Fgm, Builtin::OptimalS, Builtin::OptimalW, Builtin::Gaussian] {
            let dep = DependenceFunction::builtin(kind, 3).unwrap();
            let exact = functionals(&dep, Method::default_for(&dep)).unwrap().as_array();
            let mc = functionals(&dep, Method::MonteCarlo { samples: 400_000, seed: 3 }).unwrap();
            let se = mc.std_errors.unwrap();
            for c in 0..4 {
                assert!((exact[c] - mc.as_array()[c]).abs() <= 4.0 * se[c], "{kind:?} component {c}");
            }
        }
    }

    #[test]
    fn mc_is_thread_count_independent() {
        let dep = DependenceFunction::builtin(Builtin::OptimalW, 3).unwrap();
        let method = Method::MonteCarlo { samples: 100_000, seed: 5 };
        let a = functionals(&dep, method).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
        let b = pool.install(|| functionals(&dep, method).unwrap());
        assert_eq!(a, b);
    }
}
