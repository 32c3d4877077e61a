//! CSV tables for the `--csv` output.

use std::path::Path;

use crate::error::{CliError, CliResult};
use crate::report::Payload;

fn fmt(v: f64) -> String {
    format!("{v}")
}

fn opt(v: Option<f64>) -> String {
    v.map(fmt).unwrap_or_default()
}

pub fn rows(payload: &Payload) -> (Vec<String>, Vec<Vec<String>>) {
    let head = |cols: &[&str]| cols.iter().map(|c| c.to_string()).collect::<Vec<_>>();
    match payload {
        Payload::Stat(r) => (
            head(&["statistic", "n", "m", "value"]),
            r.statistics.iter().map(|s| vec![s.kind.to_string(), s.n.to_string(), s.m.to_string(), fmt(s.value)]).collect(),
        ),
        Payload::Efficiency(entries) => {
            let mut rows = Vec::new();
            for e in entries {
                let r = &e.report;
                let base = vec![
                    r.dependence.clone(),
                    r.m.to_string(),
                    r.method.clone(),
                    fmt(r.efficiency.s),
                    fmt(r.efficiency.w),
                    fmt(r.efficiency.v),
                    opt(r.are.s_vs_w),
                    opt(r.are.s_vs_v),
                    opt(r.are.w_vs_v),
                    fmt(r.fisher),
                ];
                match &e.power {
                    None => rows.push([base, vec![String::new(); 3]].concat()),
                    Some(p) => {
                        for i in 0..p.h.len() {
                            rows.push([base.clone(), vec![fmt(p.h[i]), fmt(p.power[i]), fmt(p.envelope[i])]].concat());
                        }
                    }
                }
            }
            (
                head(&["model", "m", "method", "e_S", "e_W", "e_V", "ARE_S_W", "ARE_S_V", "ARE_W_V", "fisher", "h", "power", "envelope"]),
                rows,
            )
        }
        Payload::Simulation(results) => (
            head(&[
                "model", "statistic", "m", "n", "h", "theta", "reps", "alpha", "rate", "se", "predicted_power",
                "mean_scaled", "var_scaled", "predicted_mean", "predicted_variance", "ks", "ks_critical",
            ]),
            results
                .iter()
                .map(|r| {
                    vec![
                        r.model.clone(),
                        r.kind.to_string(),
                        r.m.to_string(),
                        r.n.to_string(),
                        fmt(r.h),
                        fmt(r.theta),
                        r.reps.to_string(),
                        fmt(r.alpha),
                        fmt(r.rejection_rate),
                        fmt(r.rejection_se),
                        opt(r.predicted_power),
                        fmt(r.mean_scaled),
                        fmt(r.var_scaled),
                        opt(r.predicted_mean),
                        opt(r.predicted_variance),
                        opt(r.ks_distance),
                        fmt(r.ks_critical_1pct),
                    ]
                })
                .collect(),
        ),
        Payload::UGap(rows) => (
            head(&["n", "mean_gap", "se"]),
            rows.iter().map(|r| vec![r.n.to_string(), fmt(r.mean_gap), fmt(r.se)]).collect(),
        ),
        Payload::Green(g) => match &g.optimal {
            Some(dump) => {
                let mut cols: Vec<String> = (1..=g.m).map(|j| format!("x{j}")).collect();
                cols.push("omega".into());
                (cols, dump.rows.iter().map(|r| r.iter().map(|v| fmt(*v)).collect()).collect())
            }
            None => (
                head(&["subset", "coefficient"]),
                g.coefficients.iter().map(|c| vec![c.subset.clone(), c.value.to_string()]).collect(),
            ),
        },
    }
}

pub fn write(payload: &Payload, path: &Path) -> CliResult<()> {
    let io = |e: csv::Error| CliError::Io { path: path.into(), source: std::io::Error::other(e.to_string()) };
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    let (header, rows) = rows(payload);
    w.write_record(&header).map_err(io)?;
    for r in rows {
        w.write_record(&r).map_err(io)?;
    }
    w.flush().map_err(|source| CliError::Io { path: path.into(), source })
}
