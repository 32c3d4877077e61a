use mvrho::dependence::Builtin;
use mvrho::efficiency::{local_mean, null_sd, power_curve, report, slope_s};
use mvrho::quadrature::{functionals, Method};
use mvrho::DependenceFunction;
use proptest::prelude::*;

fn kinds() -> impl Strategy<Value = Builtin> {
    prop_oneof![Just(Builtin::Fgm), Just(Builtin::Gaussian), Just(Builtin::OptimalS), Just(Builtin::OptimalW)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn efficiencies_ignore_the_scale_of_omega(kind in kinds(), m in 2usize..=4, c in 0.01f64..1000.0) {
        let dep = DependenceFunction::builtin(kind, m).unwrap();
        let a = report(&dep, None).unwrap();
        let b = report(&dep.scaled(c), None).unwrap();
        prop_assert!((a.efficiency.s - b.efficiency.s).abs() < 1e-10);
        prop_assert!((a.efficiency.w - b.efficiency.w).abs() < 1e-10);
        prop_assert!((a.efficiency.v - b.efficiency.v).abs() < 1e-10);
    }

    #[test]
    fn power_stays_under_the_envelope(kind in kinds(), m in 2usize..=4, alpha in 0.01f64..0.2) {
        let dep = DependenceFunction::builtin(kind, m).unwrap();
        let fs = report(&dep, None).unwrap().functionals;
        let h: Vec<f64> = (0..20).map(|i| i as f64 * 0.25).collect();
        let curve = power_curve(&fs, m, alpha, &h).unwrap();
        prop_assert!((curve.power[0] - alpha).abs() < 1e-12);
        for i in 0..h.len() {
            prop_assert!(curve.power[i] <= curve.envelope[i] + 1e-12);
            if i > 0 {
                prop_assert!(curve.power[i] >= curve.power[i - 1]);
            }
        }
    }
}

#[test]
fn slope_equals_mean_derivative_over_sd() {
    for kind in [Builtin::Fgm, Builtin::Gaussian, Builtin::OptimalS, Builtin::OptimalW] {
        for m in 2..=5 {
            let fs = report(&DependenceFunction::builtin(kind, m).unwrap(), None).unwrap().functionals;
            let via_mean = local_mean(&fs, m, 1.0) / null_sd(m);
            assert!((via_mean - slope_s(&fs, m)).abs() < 1e-10, "{kind:?} m={m}");
        }
    }
}

#[test]
fn monte_carlo_report_agrees_with_exact() {
    let dep = DependenceFunction::builtin(Builtin::OptimalW, 3).unwrap();
    let exact = functionals(&dep, Method::Gauss(6)).unwrap();
    let mc = functionals(&dep, Method::MonteCarlo { samples: 200_000, seed: 3 }).unwrap();
    let se = mc.std_errors.unwrap();
    for (k, (a, b)) in exact.as_array().iter().zip(mc.as_array()).enumerate() {
        assert!((a - b).abs() < 4.0 * se[k] + 1e-12, "functional {k}: {a} vs {b}");
    }
    let r = report(&dep, Some(Method::MonteCarlo { samples: 200_000, seed: 3 })).unwrap();
    assert!(r.tolerance > 0.0);
}

#[test]
fn radially_symmetric_builtins_have_equal_s_and_w() {
    for kind in [Builtin::Fgm, Builtin::Gaussian] {
        for m in 2..=5 {
            let r = report(&DependenceFunction::builtin(kind, m).unwrap(), None).unwrap();
            assert!((r.efficiency.s - r.efficiency.w).abs() < 1e-12);
            assert!((r.are.s_vs_w.unwrap() - 1.0).abs() < 1e-12);
        }
    }
}
