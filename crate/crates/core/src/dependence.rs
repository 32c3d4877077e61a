//! Dependence functions Ω of the model `F_θ(x) = ∏ x_j + θ Ω(x)` on the unit
//! cube, their mixed derivatives ω, validation of the boundary conditions and
//! samplers for the resulting distributions.

use std::fmt;
use std::sync::Arc;

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::normal::{density_at_quantile, inv_norm_cdf_closed, norm_cdf, norm_pdf};
use crate::poly::Poly;
use crate::quadrature::{self, FunctionalSet, Method};
use crate::rank_stats::SampleMatrix;
use crate::seed::stream_rng;

type PointFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

#[derive(Clone)]
enum Repr {
    Polynomial { upper: Poly, density: Poly },
    /// First-order term of the equicorrelated Gaussian copula.
    Gaussian,
    Custom { upper: PointFn, density: PointFn },
}

/// Built-in dependence functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Builtin {
    /// Multivariate Farlie–Gumbel–Morgenstern: `∏x_j Σ_{i<j}(1−x_i)(1−x_j)`.
    Fgm,
    /// Equicorrelated Gaussian, first-order expansion in the correlation.
    Gaussian,
    /// The alternative under which the S test is Pitman optimal.
    OptimalS,
    /// The alternative under which the W test is Pitman optimal.
    OptimalW,
}

impl std::str::FromStr for Builtin {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "fgm" => Ok(Builtin::Fgm),
            "gaussian" | "normal" => Ok(Builtin::Gaussian),
            "optimal-s" => Ok(Builtin::OptimalS),
            "optimal-w" => Ok(Builtin::OptimalW),
            other => Err(Error::InvalidArgument(format!("unknown model `{other}`"))),
        }
    }
}

/// A dependence function Ω together with its mixed derivative ω.
#[derive(Clone)]
pub struct DependenceFunction {
    name: String,
    m: usize,
    scale: f64,
    repr: Repr,
    closed_form: Option<FunctionalSet>,
}

impl fmt::Debug for DependenceFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DependenceFunction")
            .field("name", &self.name)
            .field("m", &self.m)
            .field("scale", &self.scale)
            .field("closed_form", &self.closed_form)
            .finish_non_exhaustive()
    }
}

fn pairs(m: usize) -> f64 {
    (m * (m - 1) / 2) as f64
}

impl DependenceFunction {
    /// Wraps a polynomial Ω; ω is its exact mixed derivative.
    pub fn from_polynomial(name: impl Into<String>, upper: Poly) -> Self {
        let m = upper.dim();
        let density = upper.mixed_derivative();
        Self { name: name.into(), m, scale: 1.0, repr: Repr::Polynomial { upper, density }, closed_form: None }
    }

    /// A user-supplied pair (Ω, ω). Validate it before building a model.
    pub fn custom<F, G>(name: impl Into<String>, m: usize, upper: F, density: G) -> Self
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
        G: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            m,
            scale: 1.0,
            repr: Repr::Custom { upper: Arc::new(upper), density: Arc::new(density) },
            closed_form: None,
        }
    }

    pub fn with_closed_form(mut self, fs: FunctionalSet) -> Self {
        self.closed_form = Some(fs);
        self
    }

    pub fn builtin(kind: Builtin, m: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidArgument(format!("dimension must be at least 2, got {m}")));
        }
        let p = pairs(m);
        Ok(match kind {
            Builtin::Fgm => Self::from_polynomial("fgm", fgm_polynomial(m)).with_closed_form(FunctionalSet::new(
                p / (9.0 * 2f64.powi(m as i32)),
                p / (9.0 * 2f64.powi(m as i32)),
                p / 36.0,
                p / 9.0,
            )),
            Builtin::Gaussian => {
                let pi = std::f64::consts::PI;
                let int_omega = (m * (m - 1)) as f64 / (2f64.powi(m as i32 + 1) * pi);
                Self { name: "gaussian".into(), m, scale: 1.0, repr: Repr::Gaussian, closed_form: None }
                    .with_closed_form(FunctionalSet::new(int_omega, int_omega, p / (4.0 * pi), p))
            }
            Builtin::OptimalS => Self::from_polynomial("optimal-s", optimal_s_polynomial(m)),
            Builtin::OptimalW => Self::from_polynomial("optimal-w", optimal_w_polynomial(m)),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn closed_form(&self) -> Option<&FunctionalSet> {
        self.closed_form.as_ref()
    }

    pub fn is_gaussian(&self) -> bool {
        matches!(self.repr, Repr::Gaussian)
    }

    pub fn is_custom(&self) -> bool {
        matches!(self.repr, Repr::Custom { .. })
    }

    /// Ω and ω as polynomials (scaled), when available.
    pub fn polynomials(&self) -> Option<(Poly, Poly)> {
        match &self.repr {
            Repr::Polynomial { upper, density } => Some((upper.scale(self.scale), density.scale(self.scale))),
            _ => None,
        }
    }

    /// Largest per-axis degree of the integrands `Ω`, `ω²`, `x_i x_j ω`
    /// for polynomial functions.
    pub fn max_integrand_degree(&self) -> Option<usize> {
        match &self.repr {
            Repr::Polynomial { upper, density } => {
                Some(upper.max_axis_degree().max(2 * density.max_axis_degree()).max(density.max_axis_degree() + 1))
            }
            _ => None,
        }
    }

    /// `cΩ`: closed-form integrals scale by `c` (linear ones) and `c²` (Fisher).
    pub fn scaled(&self, c: f64) -> Self {
        let mut out = self.clone();
        out.scale *= c;
        out.closed_form = self.closed_form.as_ref().map(|fs| {
            FunctionalSet::new(fs.int_omega * c, fs.int_prodx_omega * c, fs.int_pair * c, fs.fisher * c * c)
        });
        out
    }

    /// Ω(x).
    pub fn omega_upper(&self, x: &[f64]) -> f64 {
        self.scale
            * match &self.repr {
                Repr::Polynomial { upper, .. } => upper.eval(x),
                Repr::Gaussian => gaussian_upper(x),
                Repr::Custom { upper, .. } => upper(x),
            }
    }

    /// ω(x), the mixed derivative of Ω.
    pub fn omega_density(&self, x: &[f64]) -> f64 {
        self.scale
            * match &self.repr {
                Repr::Polynomial { density, .. } => density.eval(x),
                Repr::Gaussian => {
                    let z: Vec<f64> = x.iter().map(|&v| inv_norm_cdf_closed(v)).collect();
                    pair_sum(&z, |a, b| a * b)
                }
                Repr::Custom { density, .. } => density(x),
            }
    }

    /// Evaluates (x, Ω, ω) at latent normal coordinates `x_j = Φ(z_j)`.
    /// Only the Gaussian function has a latent form.
    pub(crate) fn eval_latent(&self, z: &[f64], x: &mut [f64]) -> Option<(f64, f64)> {
        if !self.is_gaussian() {
            return None;
        }
        for (xi, &zi) in x.iter_mut().zip(z) {
            *xi = norm_cdf(zi);
        }
        let dens: Vec<f64> = z.iter().map(|&v| norm_pdf(v)).collect();
        let mut upper = 0.0;
        for i in 0..z.len() {
            for j in i + 1..z.len() {
                let rest: f64 = (0..z.len()).filter(|&k| k != i && k != j).map(|k| x[k]).product();
                upper += dens[i] * dens[j] * rest;
            }
        }
        Some((self.scale * upper, self.scale * pair_sum(z, |a, b| a * b)))
    }
}

fn pair_sum(v: &[f64], f: impl Fn(f64, f64) -> f64) -> f64 {
    let mut s = 0.0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            s += f(v[i], v[j]);
        }
    }
    s
}

fn gaussian_upper(x: &[f64]) -> f64 {
    let d: Vec<f64> = x.iter().map(|&v| density_at_quantile(v)).collect();
    let mut s = 0.0;
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            let rest: f64 = (0..x.len()).filter(|&k| k != i && k != j).map(|k| x[k]).product();
            s += d[i] * d[j] * rest;
        }
    }
    s
}

fn prod_x(m: usize) -> Poly {
    Poly::product(m, (0..m).map(|j| Poly::var(m, j)))
}

fn sum_x(m: usize) -> Poly {
    Poly::sum(m, (0..m).map(|j| Poly::var(m, j)))
}

fn one_minus(m: usize, j: usize) -> Poly {
    &Poly::constant(m, 1.0) - &Poly::var(m, j)
}

/// `∏x_j Σ_{i<j}(1−x_i)(1−x_j)`.
pub fn fgm_polynomial(m: usize) -> Poly {
    let mut pair_terms = Poly::zero(m);
    for i in 0..m {
        for j in i + 1..m {
            pair_terms = &pair_terms + &(&one_minus(m, i) * &one_minus(m, j));
        }
    }
    &prod_x(m) * &pair_terms
}

/// `∏x_j (∏(2−x_j) + Σx_j − (m+1))`.
pub fn optimal_s_polynomial(m: usize) -> Poly {
    let two_minus = Poly::product(m, (0..m).map(|j| &Poly::constant(m, 2.0) - &Poly::var(m, j)));
    let inner = &(&two_minus + &sum_x(m)) - &Poly::constant(m, m as f64 + 1.0);
    &prod_x(m) * &inner
}

/// `∏x_j (∏x_j − Σx_j + (m−1))`.
pub fn optimal_w_polynomial(m: usize) -> Poly {
    let inner = &(&prod_x(m) - &sum_x(m)) + &Poly::constant(m, m as f64 - 1.0);
    &prod_x(m) * &inner
}

/// Integrals of the FGM function in its conventional normalization, i.e. for
/// `Ω / C(m,2)`: (∫Ω, ∫∏x ω, Σ∫x_i x_j ω, ∫ω²).
pub fn fgm_reference_integrals(m: usize) -> FunctionalSet {
    let int = 1.0 / (9.0 * 2f64.powi(m as i32));
    FunctionalSet::new(int, int, 1.0 / 36.0, 2.0 / (9.0 * (m * (m - 1)) as f64))
}

/// Outcome of [`validate`]. All violations are non-negative magnitudes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub name: String,
    pub m: usize,
    pub grid_points_per_axis: usize,
    /// Minimum of Ω on the grid.
    pub grid_min_omega: f64,
    /// `max(0, −min Ω)`: nonnegativity.
    pub nonnegativity_violation: f64,
    /// Largest |Ω| on the faces `x_k = 0` and the lines `(1,…,x_k,…,1)`.
    pub boundary_violation: f64,
    /// Largest of |∫ω| and |∫x_j ω|.
    pub moment_violation: f64,
    /// |∫Ω − ∫∏(1−x_j) ω|.
    pub identity_gap: f64,
    pub quadrature: String,
}

impl ValidationReport {
    pub fn max_violation(&self) -> f64 {
        self.nonnegativity_violation.max(self.boundary_violation).max(self.moment_violation).max(self.identity_gap)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_violation() <= tol
    }
}

const GRID_CAP: f64 = 2e7;

fn grid_values(g: usize) -> Vec<f64> {
    (0..g).map(|i| i as f64 / (g - 1) as f64).collect()
}

/// Visits every point of the `g^m` grid including the faces.
fn for_each_grid_point(m: usize, g: usize, mut f: impl FnMut(&[f64])) -> Result<()> {
    let total = (g as f64).powi(m as i32);
    if total > GRID_CAP {
        return Err(Error::TooLarge { what: "grid scan", size: total, cap: GRID_CAP });
    }
    let vals = grid_values(g);
    let mut idx = vec![0usize; m];
    let mut x = vec![0.0; m];
    loop {
        for (xi, &k) in x.iter_mut().zip(&idx) {
            *xi = vals[k];
        }
        f(&x);
        let mut d = 0;
        loop {
            if d == m {
                return Ok(());
            }
            idx[d] += 1;
            if idx[d] < g {
                break;
            }
            idx[d] = 0;
            d += 1;
        }
    }
}

/// Checks nonnegativity and boundary vanishing on a grid and the moment
/// identities by quadrature.
pub fn validate(dep: &DependenceFunction, grid_points_per_axis: usize) -> Result<ValidationReport> {
    let g = grid_points_per_axis;
    if g < 3 {
        return Err(Error::InvalidArgument(format!("validation grid needs at least 3 points per axis, got {g}")));
    }
    let m = dep.m();
    let mut grid_min = f64::INFINITY;
    for_each_grid_point(m, g, |x| grid_min = grid_min.min(dep.omega_upper(x)))?;

    let mut boundary: f64 = 0.0;
    let vals = grid_values(g);
    for k in 0..m {
        // Face x_k = 0.
        for_each_grid_point(m - 1, g, |y| {
            let mut x = Vec::with_capacity(m);
            x.extend_from_slice(&y[..k]);
            x.push(0.0);
            x.extend_from_slice(&y[k..]);
            boundary = boundary.max(dep.omega_upper(&x).abs());
        })?;
        for &t in &vals {
            let mut x = vec![1.0; m];
            x[k] = t;
            boundary = boundary.max(dep.omega_upper(&x).abs());
        }
    }

    let method = Method::default_for(dep);
    let moments = quadrature::integrate_dependence(dep, method, m + 3, |x, upper, dens| {
        let mut out = vec![0.0; m + 3];
        out[0] = dens;
        for j in 0..m {
            out[1 + j] = x[j] * dens;
        }
        out[m + 1] = upper;
        out[m + 2] = x.iter().map(|v| 1.0 - v).product::<f64>() * dens;
        out
    })?;
    let moment_violation = moments[..=m].iter().fold(0.0f64, |a, v| a.max(v.abs()));
    Ok(ValidationReport {
        name: dep.name().to_string(),
        m,
        grid_points_per_axis: g,
        grid_min_omega: grid_min,
        nonnegativity_violation: (-grid_min).max(0.0),
        boundary_violation: boundary,
        moment_violation,
        identity_gap: (moments[m + 1] - moments[m + 2]).abs(),
        quadrature: method.to_string(),
    })
}

/// Grid resolution used for density extrema.
pub fn extremum_grid(m: usize) -> usize {
    match m {
        0..=3 => 101,
        4 | 5 => 21,
        6 | 7 => 9,
        _ => 5,
    }
}

/// (min ω, max ω) over the extremum grid; `Unbounded` when ω is not finite
/// somewhere on it.
pub fn density_range(dep: &DependenceFunction) -> Result<(f64, f64)> {
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    let mut finite = true;
    for_each_grid_point(dep.m(), extremum_grid(dep.m()), |x| {
        let w = dep.omega_density(x);
        if w.is_finite() {
            lo = lo.min(w);
            hi = hi.max(w);
        } else {
            finite = false;
        }
    })?;
    if !finite {
        return Err(Error::Unbounded(format!("ω of `{}` is not finite on the cube", dep.name())));
    }
    Ok((lo, hi))
}

/// Largest θ for which `1 + θω ≥ 0` on the extremum grid (a grid estimate).
pub fn theta_max(dep: &DependenceFunction) -> Result<f64> {
    let (lo, _) = density_range(dep)?;
    Ok(if lo < 0.0 { 1.0 / lo.abs() } else { f64::INFINITY })
}

// θ_max comes from a floating-point extremum; forgive rounding at the edge.
fn exceeds(theta: f64, theta_max: f64) -> bool {
    theta > theta_max * (1.0 + 1e-12)
}

/// A dependence function with a value of the association parameter.
#[derive(Debug, Clone)]
pub struct ModelSpec {
    dependence: DependenceFunction,
    theta: f64,
    theta_max: f64,
    density_sup: f64,
}

/// Tolerance a custom dependence function must meet before it may be sampled.
pub const CUSTOM_VALIDATION_TOL: f64 = 1e-6;

impl ModelSpec {
    pub fn new(dependence: DependenceFunction, theta: f64) -> Result<Self> {
        if !(theta >= 0.0) || !theta.is_finite() {
            return Err(Error::InvalidArgument(format!("theta must be a finite non-negative number, got {theta}")));
        }
        if dependence.is_custom() {
            let report = validate(&dependence, 11.min(extremum_grid(dependence.m())).max(3))?;
            if !report.passes(CUSTOM_VALIDATION_TOL) {
                return Err(Error::InvalidArgument(format!(
                    "custom dependence function `{}` fails validation (max violation {:e})",
                    dependence.name(),
                    report.max_violation()
                )));
            }
        }
        let (lo, hi) = density_range(&dependence)?;
        let theta_max = if lo < 0.0 { 1.0 / lo.abs() } else { f64::INFINITY };
        if exceeds(theta, theta_max) {
            return Err(Error::ThetaTooLarge { theta, theta_max });
        }
        Ok(Self { dependence, theta, theta_max, density_sup: hi.max(0.0) })
    }

    pub fn dependence(&self) -> &DependenceFunction {
        &self.dependence
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn theta_max(&self) -> f64 {
        self.theta_max
    }

    pub fn m(&self) -> usize {
        self.dependence.m()
    }

    /// Same dependence function at a different θ.
    pub fn with_theta(&self, theta: f64) -> Result<Self> {
        if !(theta >= 0.0) {
            return Err(Error::InvalidArgument(format!("theta must be non-negative, got {theta}")));
        }
        if exceeds(theta, self.theta_max) {
            return Err(Error::ThetaTooLarge { theta, theta_max: self.theta_max });
        }
        Ok(Self { theta, ..self.clone() })
    }

    /// Model cdf `∏x_j + θΩ(x)`.
    pub fn cdf(&self, x: &[f64]) -> f64 {
        x.iter().product::<f64>() + self.theta * self.dependence.omega_upper(x)
    }
}

/// `n` draws from the density `1 + θω` by rejection from the uniform law.
/// Row `i` consumes stream `i` of `seed`, so the sample does not depend on
/// the number of worker threads.
pub fn sample(model: &ModelSpec, n: usize, seed: u64) -> Result<SampleMatrix> {
    let m = model.m();
    let theta = model.theta;
    let envelope = 1.0 + theta * model.density_sup;
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, i as u64);
            let mut x = vec![0.0; m];
            loop {
                x.iter_mut().for_each(|v| *v = rng.gen());
                if theta == 0.0 {
                    return x;
                }
                let u: f64 = rng.gen();
                if u * envelope <= 1.0 + theta * model.dependence.omega_density(&x) {
                    return x;
                }
            }
        })
        .collect();
    SampleMatrix::new(n, m, rows.into_iter().flatten().collect())
}

/// `n` draws from the equicorrelated Gaussian copula with correlation θ.
pub fn sample_gaussian_copula(m: usize, theta: f64, n: usize, seed: u64) -> Result<SampleMatrix> {
    if !(0.0..1.0).contains(&theta) {
        return Err(Error::BadCorrelation(theta));
    }
    if m < 2 {
        return Err(Error::InvalidArgument(format!("dimension must be at least 2, got {m}")));
    }
    let (common, own) = (theta.sqrt(), (1.0 - theta).sqrt());
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, i as u64);
            let y: f64 = rng.sample(StandardNormal);
            (0..m)
                .map(|_| {
                    let e: f64 = rng.sample(StandardNormal);
                    norm_cdf(common * y + own * e)
                })
                .collect()
        })
        .collect();
    SampleMatrix::new(n, m, rows.into_iter().flatten().collect())
}
