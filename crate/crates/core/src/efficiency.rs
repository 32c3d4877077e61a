//! Pitman slopes, absolute efficiencies relative to the Fisher bound,
//! relative efficiencies, local power curves and population concordance.

use serde::{Deserialize, Serialize};

use crate::dependence::{DependenceFunction, ModelSpec};
use crate::error::{Error, Result};
use crate::normal::{inv_norm_cdf, norm_sf};
use crate::quadrature::{resolve_functionals, FunctionalSet, Method};
use crate::rank_stats::null_variance;

/// Allowed excess of an absolute efficiency over one.
pub const FISHER_BOUND_TOL: f64 = 1e-8;

/// `(4/3)^m − m/3 − 1`, the variance constant shared by S and W.
pub fn variance_constant(m: usize) -> f64 {
    (4.0f64 / 3.0).powi(m as i32) - m as f64 / 3.0 - 1.0
}

fn pair_count(m: usize) -> f64 {
    (m * (m - 1) / 2) as f64
}

/// Squared slopes of the S, W and V tests.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Slopes {
    pub s: f64,
    pub w: f64,
    pub v: f64,
}

pub fn slopes(fs: &FunctionalSet, m: usize) -> Slopes {
    let c = 4f64.powi(m as i32) / variance_constant(m);
    Slopes {
        s: c * fs.int_omega * fs.int_omega,
        w: c * fs.int_prodx_omega * fs.int_prodx_omega,
        v: 144.0 / pair_count(m) * fs.int_pair * fs.int_pair,
    }
}

/// Signed slope of the S test, `2^m ∫Ω / √((4/3)^m − m/3 − 1)`.
pub fn slope_s(fs: &FunctionalSet, m: usize) -> f64 {
    2f64.powi(m as i32) * fs.int_omega / variance_constant(m).sqrt()
}

/// Mean of the limit law of `√n U` under the local alternative `h`.
pub fn local_mean(fs: &FunctionalSet, m: usize, h: f64) -> f64 {
    let two_m = 2f64.powi(m as i32);
    two_m * (m as f64 + 1.0) / (two_m - (m as f64 + 1.0)) * h * fs.int_omega
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Efficiencies {
    pub s: f64,
    pub w: f64,
    pub v: f64,
}

/// Squared slopes divided by the Fisher information. Values above
/// `1 + FISHER_BOUND_TOL` (plus the Monte Carlo uncertainty, when the
/// functionals carry standard errors) are reported as errors, never clamped.
pub fn abs_efficiency(fs: &FunctionalSet, m: usize) -> Result<Efficiencies> {
    if !(fs.fisher > 0.0) {
        return Err(Error::DegenerateModel);
    }
    let sl = slopes(fs, m);
    let e = Efficiencies { s: sl.s / fs.fisher, w: sl.w / fs.fisher, v: sl.v / fs.fisher };
    // Monte Carlo functionals: widen by four propagated standard errors,
    // δe/e ≈ 2 δI/|I| + δF/F.
    let slack = |int: f64, se_int: f64| match fs.std_errors {
        Some(se) if int != 0.0 => 4.0 * (2.0 * se_int / int.abs() + se[3] / fs.fisher),
        _ => 0.0,
    };
    let se = fs.std_errors.unwrap_or([0.0; 4]);
    let checks = [
        ("S", e.s, slack(fs.int_omega, se[0])),
        ("W", e.w, slack(fs.int_prodx_omega, se[1])),
        ("V", e.v, slack(fs.int_pair, se[2])),
    ];
    for (name, value, extra) in checks {
        if value > 1.0 + FISHER_BOUND_TOL + value * extra {
            return Err(Error::FisherBoundViolated { statistic: name, value });
        }
    }
    Ok(e)
}

/// Relative efficiency `slope_a² / slope_b²`.
pub fn are(slope_a_sq: f64, slope_b_sq: f64) -> Result<f64> {
    if slope_b_sq == 0.0 {
        return Err(Error::DivisionByZeroSlope);
    }
    Ok(slope_a_sq / slope_b_sq)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AreTable {
    pub s_vs_w: Option<f64>,
    pub s_vs_v: Option<f64>,
    pub w_vs_v: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EfficiencyReport {
    pub m: usize,
    pub dependence: String,
    pub method: String,
    pub functionals: FunctionalSet,
    pub slopes: Slopes,
    pub fisher: f64,
    pub efficiency: Efficiencies,
    pub are: AreTable,
    /// Tolerance of the integrals: zero for closed forms and exact rules,
    /// four standard errors for Monte Carlo.
    pub tolerance: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

/// Full efficiency report; `method = None` applies the default precedence.
pub fn report(dep: &DependenceFunction, method: Option<Method>) -> Result<EfficiencyReport> {
    let m = dep.m();
    let resolved = resolve_functionals(dep, method)?;
    let fs = resolved.set;
    let efficiency = abs_efficiency(&fs, m)?;
    let sl = slopes(&fs, m);
    let tolerance = fs.std_errors.map_or(0.0, |se| 4.0 * se.iter().fold(0.0f64, |a, b| a.max(*b)));
    Ok(EfficiencyReport {
        m,
        dependence: dep.name().to_string(),
        method: resolved.method.to_string(),
        functionals: fs,
        slopes: sl,
        fisher: fs.fisher,
        efficiency,
        are: AreTable {
            s_vs_w: are(sl.s, sl.w).ok(),
            s_vs_v: are(sl.s, sl.v).ok(),
            w_vs_v: are(sl.w, sl.v).ok(),
        },
        tolerance,
        warning: resolved.warning,
    })
}

/// Local limiting power of the S test and the Fisher envelope.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerCurve {
    pub m: usize,
    pub alpha: f64,
    pub h: Vec<f64>,
    pub power: Vec<f64>,
    pub envelope: Vec<f64>,
}

pub fn power_curve(fs: &FunctionalSet, m: usize, alpha: f64, h_grid: &[f64]) -> Result<PowerCurve> {
    if !(alpha > 0.0 && alpha <= 0.5) {
        return Err(Error::InvalidArgument(format!("alpha must lie in (0, 0.5], got {alpha}")));
    }
    if let Some(h) = h_grid.iter().find(|h| !(**h >= 0.0)) {
        return Err(Error::InvalidArgument(format!("local parameter must be non-negative, got {h}")));
    }
    let z_alpha = inv_norm_cdf(1.0 - alpha)?;
    let slope = slope_s(fs, m);
    let root_fisher = fs.fisher.max(0.0).sqrt();
    Ok(PowerCurve {
        m,
        alpha,
        h: h_grid.to_vec(),
        power: h_grid.iter().map(|h| norm_sf(z_alpha - slope * h)).collect(),
        envelope: h_grid.iter().map(|h| norm_sf(z_alpha - root_fisher * h)).collect(),
    })
}

/// Local limiting power at a single `h`.
pub fn local_power(fs: &FunctionalSet, m: usize, alpha: f64, h: f64) -> Result<f64> {
    Ok(power_curve(fs, m, alpha, &[h])?.power[0])
}

/// Population values `(s_m(F_θ), w_m(F_θ))` from the functionals.
pub fn concordance_from_functionals(fs: &FunctionalSet, m: usize, theta: f64) -> (f64, f64) {
    let c = 0.5f64.powi(m as i32);
    let d = 1.0 / (m as f64 + 1.0) - c;
    (theta * fs.int_omega / d, theta * fs.int_prodx_omega / d)
}

pub fn population_concordance(model: &ModelSpec) -> Result<(f64, f64)> {
    let fs = resolve_functionals(model.dependence(), None)?.set;
    Ok(concordance_from_functionals(&fs, model.m(), model.theta()))
}

/// Lower bound of `s_m(F)`, attained at the lower Fréchet bound.
pub fn s_lower_bound(m: usize) -> f64 {
    let two_m = 2f64.powi(m as i32);
    let m_f = m as f64;
    let factorial: f64 = (1..=m + 1).map(|k| k as f64).product();
    two_m * (m_f + 1.0) / (two_m - (m_f + 1.0)) * (1.0 / factorial - 1.0 / two_m)
}

/// Null standard deviation of `√n S`.
pub fn null_sd(m: usize) -> f64 {
    null_variance(m).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dependence::Builtin;

    fn dep(kind: Builtin, m: usize) -> DependenceFunction {
        DependenceFunction::builtin(kind, m).unwrap()
    }

    #[test]
    fn gaussian_efficiencies() {
        for (m, e_s) in [(3, 0.8207), (4, 0.7349), (5, 0.6548)] {
            let r = report(&dep(Builtin::Gaussian, m), None).unwrap();
            assert!((r.efficiency.s - e_s).abs() < 1e-4, "m={m} {}", r.efficiency.s);
            assert!((r.efficiency.w - r.efficiency.s).abs() < 1e-14);
            assert!((r.efficiency.v - 9.0 / std::f64::consts::PI.powi(2)).abs() < 1e-12);
            assert!((r.slopes.s - r.slopes.w).abs() < 1e-14);
        }
    }

    #[test]
    fn fgm_efficiencies() {
        for (m, e_s) in [(3, 0.9000), (4, 0.8060), (5, 0.7181)] {
            let r = report(&dep(Builtin::Fgm, m), None).unwrap();
            let formula = (m * (m - 1)) as f64 / (18.0 * variance_constant(m));
            assert!((r.efficiency.s - formula).abs() < 1e-12);
            assert!((r.efficiency.s - e_s).abs() < 1e-4);
            assert!((r.efficiency.v - 1.0).abs() < 1e-12);
            assert!((r.are.s_vs_v.unwrap() - r.efficiency.s).abs() < 1e-12);
        }
    }

    #[test]
    fn null_dependence_has_zero_slopes() {
        let zero = FunctionalSet::new(0.0, 0.0, 0.0, 1.0);
        let s = slopes(&zero, 3);
        assert_eq!((s.s, s.w, s.v), (0.0, 0.0, 0.0));
        assert_eq!(abs_efficiency(&FunctionalSet::new(0.0, 0.0, 0.0, 0.0), 3), Err(Error::DegenerateModel));
        assert_eq!(are(1.0, 0.0), Err(Error::DivisionByZeroSlope));
        assert_eq!(are(2.0, 2.0).unwrap(), 1.0);
    }

    #[test]
    fn fisher_bound_violation_is_an_error() {
        let bogus = FunctionalSet::new(1.0, 0.0, 0.0, 1e-3);
        assert!(matches!(abs_efficiency(&bogus, 2), Err(Error::FisherBoundViolated { statistic: "S", .. })));
    }

    #[test]
    fn optimal_alternatives_attain_the_bound() {
        for m in 2..=4 {
            let s = report(&dep(Builtin::OptimalS, m), None).unwrap();
            assert!((s.efficiency.s - 1.0).abs() < 1e-8, "m={m}: {}", s.efficiency.s);
            let w = report(&dep(Builtin::OptimalW, m), None).unwrap();
            assert!((w.efficiency.w - 1.0).abs() < 1e-8, "m={m}: {}", w.efficiency.w);
        }
    }

    #[test]
    fn slope_agrees_with_mean_over_sd() {
        for m in 2..=6 {
            let fs = report(&dep(Builtin::Fgm, m), None).unwrap().functionals;
            let via_mean = local_mean(&fs, m, 1.0) / null_sd(m);
            assert!((via_mean - slope_s(&fs, m)).abs() < 1e-10);
            assert!((via_mean.powi(2) - slopes(&fs, m).s).abs() < 1e-10);
        }
    }

    #[test]
    fn power_curve_properties() {
        let fs = report(&dep(Builtin::Fgm, 3), None).unwrap().functionals;
        let h: Vec<f64> = (0..=20).map(|i| i as f64 * 0.25).collect();
        let pc = power_curve(&fs, 3, 0.05, &h).unwrap();
        assert!((pc.power[0] - 0.05).abs() < 1e-15);
        for i in 1..h.len() {
            assert!(pc.power[i] >= pc.power[i - 1]);
            assert!(pc.power[i] <= pc.envelope[i] + 1e-10);
        }
        let opt = report(&dep(Builtin::OptimalS, 3), None).unwrap().functionals;
        let pc = power_curve(&opt, 3, 0.05, &h).unwrap();
        for (p, e) in pc.power.iter().zip(&pc.envelope) {
            assert!((p - e).abs() < 1e-8);
        }
        assert!(power_curve(&fs, 3, 0.7, &h).is_err());
        assert!(power_curve(&fs, 3, 0.05, &[-1.0]).is_err());
    }

    #[test]
    fn concordance_values() {
        let fgm = dep(Builtin::Fgm, 2);
        let model = ModelSpec::new(fgm.clone(), 0.5).unwrap();
        let (s, w) = population_concordance(&model).unwrap();
        assert!((s - 1.0 / 6.0).abs() < 1e-14);
        assert!((s - w).abs() < 1e-14);
        let zero = ModelSpec::new(fgm, 0.0).unwrap();
        assert_eq!(population_concordance(&zero).unwrap(), (0.0, 0.0));
        let g = dep(Builtin::Gaussian, 4);
        let (s, w) = concordance_from_functionals(g.closed_form().unwrap(), 4, 0.1);
        assert!((s - w).abs() < 1e-15);
    }

    #[test]
    fn lower_bound() {
        assert!((s_lower_bound(2) + 1.0).abs() < 1e-15);
        assert!((s_lower_bound(3) + 2.0 / 3.0).abs() < 1e-15);
        for m in 3..30 {
            assert!(s_lower_bound(m + 1) > s_lower_bound(m));
        }
        assert!(s_lower_bound(10) > s_lower_bound(3));
        assert!(s_lower_bound(30).abs() < 1e-6);
    }
}
