//! Green functions of the extremal problem `∫ω² → min` subject to
//! `∫Ω dμ = 1` and `Ω|_{x_U = 1} = 0` for every `U` in an up-set family.
//!
//! Subsets of `{1, …, m}` are bit masks (bit `j` is coordinate `j + 1`).

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::dependence::{fgm_polynomial, optimal_s_polynomial, optimal_w_polynomial, DependenceFunction};
use crate::error::{Error, Result};
use crate::poly::Poly;

pub type Subset = u32;

/// Largest dimension supported by the mask encoding.
pub const MAX_DIM: usize = 16;

fn full_mask(m: usize) -> Subset {
    ((1u64 << m) - 1) as Subset
}

/// Renders a subset as its 1-based digits, `0` for the empty set.
pub fn subset_label(mask: Subset) -> String {
    if mask == 0 {
        return "0".into();
    }
    (0..32).filter(|j| mask & (1 << j) != 0).map(|j| (j + 1).to_string()).collect()
}

/// Parses `"12,13,23,123"`; `0` denotes the empty set, an empty string the
/// empty family. Coordinates are single digits `1..=9`.
pub fn parse_subsets(m: usize, spec: &str) -> Result<Vec<Subset>> {
    let mut out = Vec::new();
    for token in spec.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        if token == "0" {
            out.push(0);
            continue;
        }
        let mut mask = 0;
        for c in token.chars() {
            let d = c
                .to_digit(10)
                .filter(|&d| d >= 1 && d as usize <= m)
                .ok_or_else(|| Error::InvalidArgument(format!("bad coordinate `{c}` in subset `{token}` (m = {m})")))?;
            mask |= 1 << (d - 1);
        }
        out.push(mask);
    }
    Ok(out)
}

/// A family of subsets closed under taking supersets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpSetFamily {
    m: usize,
    members: BTreeSet<Subset>,
}

impl UpSetFamily {
    /// Validates the family, or replaces it by its superset closure when
    /// `close` is set.
    pub fn new(m: usize, members: impl IntoIterator<Item = Subset>, close: bool) -> Result<Self> {
        if m == 0 || m > MAX_DIM {
            return Err(Error::InvalidArgument(format!("dimension must be in 1..={MAX_DIM}, got {m}")));
        }
        let full = full_mask(m);
        let mut set = BTreeSet::new();
        for s in members {
            if s & !full != 0 {
                return Err(Error::InvalidArgument(format!("subset {s:#b} is not contained in {{1..{m}}}")));
            }
            set.insert(s);
        }
        if close {
            let mut stack: Vec<Subset> = set.iter().copied().collect();
            while let Some(s) = stack.pop() {
                for j in 0..m {
                    let up = s | (1 << j);
                    if set.insert(up) {
                        stack.push(up);
                    }
                }
            }
        } else {
            for &s in &set {
                for j in 0..m {
                    let up = s | (1 << j);
                    if !set.contains(&up) {
                        return Err(Error::NotUpward(format!(
                            "{} is a member but its superset {} is not",
                            subset_label(s),
                            subset_label(up)
                        )));
                    }
                }
            }
        }
        Ok(Self { m, members: set })
    }

    /// No boundary conditions: the Brownian sheet.
    pub fn empty(m: usize) -> Self {
        Self { m, members: BTreeSet::new() }
    }

    /// Every subset including ∅; forces Ω ≡ 0.
    pub fn all_subsets(m: usize) -> Self {
        Self { m, members: (0..=full_mask(m)).collect() }
    }

    /// Zero on every face `x_j = 1`: the Brownian pillow.
    pub fn pillow(m: usize) -> Self {
        Self { m, members: (1..=full_mask(m)).collect() }
    }

    /// Zero at the corner `(1, …, 1)`: the pinned Brownian sheet.
    pub fn pinned(m: usize) -> Self {
        Self { m, members: [full_mask(m)].into_iter().collect() }
    }

    /// `{M, M∖{1}, …, M∖{m}}`, the conditions of the S extremal problem.
    pub fn s_case(m: usize) -> Self {
        let full = full_mask(m);
        let mut members: BTreeSet<Subset> = (0..m).map(|j| full & !(1 << j)).collect();
        members.insert(full);
        Self { m, members }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn members(&self) -> impl Iterator<Item = Subset> + '_ {
        self.members.iter().copied()
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.members.contains(&s)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Green function `K_M − Σ_U a_U K_{U^c} k_U` with `K_j = min(x_j, ξ_j)`
/// and `k_j = x_j ξ_j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GreenKernel {
    family: UpSetFamily,
    coeffs: BTreeMap<Subset, i64>,
}

/// Solves `Σ_{V ⊆ U, V ∈ ℳ} a_V = 1` for every `U ∈ ℳ`, visiting members
/// by increasing cardinality so each equation has one new unknown.
pub fn solve_coeffs(family: &UpSetFamily) -> GreenKernel {
    let mut order: Vec<Subset> = family.members().collect();
    order.sort_by_key(|s| (s.count_ones(), *s));
    let mut coeffs: BTreeMap<Subset, i64> = BTreeMap::new();
    for &u in &order {
        let below: i64 = coeffs.iter().filter(|(&v, _)| v & !u == 0).map(|(_, a)| a).sum();
        coeffs.insert(u, 1 - below);
    }
    GreenKernel { family: family.clone(), coeffs }
}

fn check_point(p: &[f64], m: usize) -> Result<()> {
    if p.len() != m || p.iter().any(|v| !(0.0..=1.0).contains(v)) {
        return Err(Error::OutOfDomain(format!("{p:?} is not a point of [0,1]^{m}")));
    }
    Ok(())
}

impl GreenKernel {
    pub fn family(&self) -> &UpSetFamily {
        &self.family
    }

    pub fn m(&self) -> usize {
        self.family.m
    }

    pub fn coefficient(&self, u: Subset) -> Option<i64> {
        self.coeffs.get(&u).copied()
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (Subset, i64)> + '_ {
        self.coeffs.iter().map(|(&u, &a)| (u, a))
    }

    /// Kernel value at `(x, ξ)`.
    pub fn eval(&self, x: &[f64], xi: &[f64]) -> Result<f64> {
        check_point(x, self.m())?;
        check_point(xi, self.m())?;
        Ok(self.eval_unchecked(x, xi))
    }

    pub(crate) fn eval_unchecked(&self, x: &[f64], xi: &[f64]) -> f64 {
        let big: Vec<f64> = x.iter().zip(xi).map(|(a, b)| a.min(*b)).collect();
        let small: Vec<f64> = x.iter().zip(xi).map(|(a, b)| a * b).collect();
        self.combine(&big, &small)
    }

    /// `∏ big_j − Σ_U a_U ∏_{j∉U} big_j ∏_{j∈U} small_j` for per-axis factors.
    fn combine(&self, big: &[f64], small: &[f64]) -> f64 {
        let mut value: f64 = big.iter().product();
        for (&u, &a) in &self.coeffs {
            if a == 0 {
                continue;
            }
            let term: f64 =
                (0..self.m()).map(|j| if u & (1 << j) != 0 { small[j] } else { big[j] }).product();
            value -= a as f64 * term;
        }
        value
    }

    fn combine_poly(&self, big: &[Poly], small: &[Poly]) -> Poly {
        let m = self.m();
        let mut value = Poly::product(m, big.iter().cloned());
        for (&u, &a) in &self.coeffs {
            if a == 0 {
                continue;
            }
            let term = Poly::product(m, (0..m).map(|j| if u & (1 << j) != 0 { small[j].clone() } else { big[j].clone() }));
            value = &value - &term.scale(a as f64);
        }
        value
    }
}

/// Measure μ of the integral constraint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Measure {
    Lebesgue,
    Discrete { points: Vec<Vec<f64>>, weights: Vec<f64> },
}

impl Measure {
    pub fn point_mass(z: Vec<f64>) -> Self {
        Measure::Discrete { points: vec![z], weights: vec![1.0] }
    }

    fn check(&self, m: usize) -> Result<()> {
        if let Measure::Discrete { points, weights } = self {
            if points.is_empty() || points.len() != weights.len() {
                return Err(Error::InvalidArgument("discrete measure needs one weight per point".into()));
            }
            if weights.iter().any(|w| !(*w >= 0.0) || !w.is_finite()) {
                return Err(Error::InvalidArgument("discrete measure weights must be finite and non-negative".into()));
            }
            for p in points {
                check_point(p, m)?;
            }
        }
        Ok(())
    }
}

// ∬ min(x, ξ) dx dξ and ∬ x ξ dx dξ over the unit square.
const MIN_DOUBLE_INTEGRAL: f64 = 1.0 / 3.0;
const PRODUCT_DOUBLE_INTEGRAL: f64 = 1.0 / 4.0;

/// `λ = ∬ 𝒢 dμ dμ`. The Lebesgue case integrates each separable term of
/// the kernel exactly, axis by axis.
pub fn lagrange_lambda(kernel: &GreenKernel, measure: &Measure) -> Result<f64> {
    let m = kernel.m();
    measure.check(m)?;
    Ok(match measure {
        Measure::Lebesgue => kernel.combine(&vec![MIN_DOUBLE_INTEGRAL; m], &vec![PRODUCT_DOUBLE_INTEGRAL; m]),
        Measure::Discrete { points, weights } => {
            let mut total = 0.0;
            for (p, wp) in points.iter().zip(weights) {
                for (q, wq) in points.iter().zip(weights) {
                    total += wp * wq * kernel.eval_unchecked(p, q);
                }
            }
            total
        }
    })
}

/// Threshold below which the Lagrange multiplier counts as zero.
pub const DEGENERATE_LAMBDA: f64 = 1e-14;

/// Extremal dependence function `Ω(x) = λ⁻¹ ∫𝒢(x, ξ) dμ(ξ)`, normalized so
/// that `∫Ω dμ = 1`. Under Lebesgue measure the result is a polynomial.
pub fn optimal_alternative(family: &UpSetFamily, measure: &Measure) -> Result<DependenceFunction> {
    let kernel = solve_coeffs(family);
    let lambda = lagrange_lambda(&kernel, measure)?;
    if lambda.abs() < DEGENERATE_LAMBDA {
        return Err(Error::DegenerateMeasure);
    }
    let m = kernel.m();
    match measure {
        Measure::Lebesgue => {
            // ∫ min(x, ξ) dξ = x − x²/2,  ∫ x ξ dξ = x/2.
            let big: Vec<Poly> = (0..m)
                .map(|j| &Poly::var(m, j) - &(&Poly::var(m, j) * &Poly::var(m, j)).scale(0.5))
                .collect();
            let small: Vec<Poly> = (0..m).map(|j| Poly::var(m, j).scale(0.5)).collect();
            let upper = kernel.combine_poly(&big, &small).scale(1.0 / lambda);
            Ok(DependenceFunction::from_polynomial("green-lebesgue", upper))
        }
        Measure::Discrete { points, weights } => {
            let atoms: Vec<(Vec<f64>, f64)> =
                points.iter().cloned().zip(weights.iter().map(|w| w / lambda)).collect();
            let atoms_density = atoms.clone();
            let k_upper = kernel.clone();
            let k_density = kernel;
            Ok(DependenceFunction::custom(
                "green-discrete",
                m,
                move |x| atoms.iter().map(|(z, w)| w * k_upper.eval_unchecked(x, z)).sum(),
                move |x| {
                    // Mixed derivatives: ∂min(x, z)/∂x = 1{x < z}, ∂(x z)/∂x = z.
                    atoms_density
                        .iter()
                        .map(|(z, w)| {
                            let big: Vec<f64> =
                                x.iter().zip(z).map(|(a, b)| if a < b { 1.0 } else { 0.0 }).collect();
                            w * k_density.combine(&big, z)
                        })
                        .sum()
                },
            ))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OptimalFor {
    S,
    W,
    V,
}

/// Closed-form most favourable alternatives (constant `C = 1`).
pub fn closed_form_optimal(kind: OptimalFor, m: usize) -> Result<DependenceFunction> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("dimension must be at least 2, got {m}")));
    }
    Ok(match kind {
        OptimalFor::S => DependenceFunction::from_polynomial("optimal-s", optimal_s_polynomial(m)),
        OptimalFor::W => DependenceFunction::from_polynomial("optimal-w", optimal_w_polynomial(m)),
        OptimalFor::V => DependenceFunction::from_polynomial("optimal-v", fgm_polynomial(m)),
    })
}

/// Largest dimension for which [`count_upsets`] enumerates.
pub const COUNT_UPSETS_MAX_DIM: usize = 5;

/// Number of up-set families of `2^{1..m}` (monotone Boolean functions of
/// `m` variables), by depth-first enumeration. A subset may join the family
/// only once all its one-element extensions are members.
pub fn count_upsets(m: usize) -> Result<u64> {
    if m > COUNT_UPSETS_MAX_DIM {
        return Err(Error::TooLarge {
            what: "up-set enumeration",
            size: 2f64.powi(1 << m),
            cap: 2f64.powi(1 << COUNT_UPSETS_MAX_DIM),
        });
    }
    let full = full_mask(m);
    let mut order: Vec<Subset> = (0..=full).collect();
    order.sort_by_key(|s| (std::cmp::Reverse(s.count_ones()), *s));
    let mut included = vec![false; full as usize + 1];
    fn descend(order: &[Subset], pos: usize, m: usize, included: &mut [bool]) -> u64 {
        let Some(&s) = order.get(pos) else {
            return 1;
        };
        let mut total = descend(order, pos + 1, m, included);
        let closed = (0..m).all(|j| s & (1 << j) != 0 || included[(s | (1 << j)) as usize]);
        if closed {
            included[s as usize] = true;
            total += descend(order, pos + 1, m, included);
            included[s as usize] = false;
        }
        total
    }
    Ok(descend(&order, 0, m, &mut included))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_construction() {
        let s3 = UpSetFamily::new(3, parse_subsets(3, "123,23,13,12").unwrap(), false).unwrap();
        assert_eq!(s3, UpSetFamily::s_case(3));
        assert!(matches!(UpSetFamily::new(2, [0b01], false), Err(Error::NotUpward(_))));
        let closed = UpSetFamily::new(2, [0b01], true).unwrap();
        assert_eq!(closed.members().collect::<Vec<_>>(), vec![0b01, 0b11]);
        assert!(UpSetFamily::new(3, [], false).unwrap().is_empty());
        assert!(parse_subsets(2, "13").is_err());
        assert_eq!(parse_subsets(3, "0, 12").unwrap(), vec![0, 0b011]);
        assert_eq!(subset_label(0b101), "13");
    }

    #[test]
    fn s_case_coefficients() {
        for m in 2..=6 {
            let k = solve_coeffs(&UpSetFamily::s_case(m));
            let full = full_mask(m);
            for j in 0..m {
                assert_eq!(k.coefficient(full & !(1 << j)), Some(1));
            }
            assert_eq!(k.coefficient(full), Some(-(m as i64 - 1)));
        }
        assert_eq!(solve_coeffs(&UpSetFamily::pinned(3)).coefficient(0b111), Some(1));
    }

    #[test]
    fn all_subsets_family_gives_zero_kernel() {
        let k = solve_coeffs(&UpSetFamily::all_subsets(2));
        assert_eq!(k.coefficient(0), Some(1));
        assert_eq!(k.coefficient(0b01), Some(0));
        assert_eq!(k.coefficient(0b11), Some(0));
        assert_eq!(k.eval(&[0.3, 0.6], &[0.7, 0.2]).unwrap(), 0.0);
        assert!(matches!(
            optimal_alternative(&UpSetFamily::all_subsets(2), &Measure::Lebesgue),
            Err(Error::DegenerateMeasure)
        ));
    }

    #[test]
    fn s_case_corner_value() {
        let k = solve_coeffs(&UpSetFamily::s_case(2));
        assert_eq!(k.eval(&[1.0, 1.0], &[1.0, 1.0]).unwrap(), 0.0);
        assert!(matches!(k.eval(&[1.2, 0.0], &[0.5, 0.5]), Err(Error::OutOfDomain(_))));
    }

    #[test]
    fn lambda_values() {
        for m in 1..=4 {
            let sheet = solve_coeffs(&UpSetFamily::empty(m));
            assert!((lagrange_lambda(&sheet, &Measure::Lebesgue).unwrap() - (1.0f64 / 3.0).powi(m as i32)).abs() < 1e-15);
        }
        let s2 = solve_coeffs(&UpSetFamily::s_case(2));
        assert!((lagrange_lambda(&s2, &Measure::Lebesgue).unwrap() - 1.0 / 144.0).abs() < 1e-16);
        let z = vec![0.3, 0.8];
        let dirac = lagrange_lambda(&s2, &Measure::point_mass(z.clone())).unwrap();
        assert_eq!(dirac, s2.eval(&z, &z).unwrap());
    }

    #[test]
    fn pinned_corner_mass_is_degenerate() {
        let err = optimal_alternative(&UpSetFamily::pinned(3), &Measure::point_mass(vec![1.0; 3]));
        assert!(matches!(err, Err(Error::DegenerateMeasure)));
    }

    #[test]
    fn optimal_alternative_bivariate() {
        let dep = optimal_alternative(&UpSetFamily::s_case(2), &Measure::Lebesgue).unwrap();
        for i in 0..=10 {
            for j in 0..=10 {
                let x = [i as f64 / 10.0, j as f64 / 10.0];
                let expect = 36.0 * x[0] * x[1] * (1.0 - x[0]) * (1.0 - x[1]);
                assert!((dep.omega_upper(&x) - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn discrete_optimum_is_normalized() {
        let points = vec![vec![0.3, 0.6, 0.9], vec![0.5, 0.5, 0.2]];
        let measure = Measure::Discrete { points: points.clone(), weights: vec![0.25, 0.75] };
        let dep = optimal_alternative(&UpSetFamily::s_case(3), &measure).unwrap();
        let total: f64 = points.iter().zip([0.25, 0.75]).map(|(p, w)| w * dep.omega_upper(p)).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn closed_forms_coincide_where_expected() {
        let s = closed_form_optimal(OptimalFor::S, 2).unwrap().polynomials().unwrap().0;
        let w = closed_form_optimal(OptimalFor::W, 2).unwrap().polynomials().unwrap().0;
        assert_eq!(s, w);
        let v = closed_form_optimal(OptimalFor::V, 4).unwrap().polynomials().unwrap().0;
        assert_eq!(v, fgm_polynomial(4));
    }

    #[test]
    fn upset_counts() {
        assert_eq!(count_upsets(0).unwrap(), 2);
        assert_eq!(count_upsets(1).unwrap(), 3);
        assert_eq!(count_upsets(2).unwrap(), 6);
        assert_eq!(count_upsets(3).unwrap(), 20);
        assert_eq!(count_upsets(4).unwrap(), 168);
        assert_eq!(count_upsets(5).unwrap(), 7581);
        assert!(matches!(count_upsets(6), Err(Error::TooLarge { .. })));
    }
}
