//! Sparse multivariate polynomials with real coefficients.
//!
//! Used to carry closed-form dependence functions together with their exact
//! mixed derivative, and to integrate them exactly over the unit cube.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A polynomial in `dim` variables, stored as exponent vector -> coefficient.
#[derive(Clone, PartialEq, Default)]
pub struct Poly {
    dim: usize,
    terms: BTreeMap<Vec<u8>, f64>,
}

impl Poly {
    pub fn zero(dim: usize) -> Self {
        Self { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: f64) -> Self {
        let mut p = Self::zero(dim);
        p.add_term(vec![0; dim], c);
        p
    }

    /// The coordinate function `x_j` (zero-based `j`).
    pub fn var(dim: usize, j: usize) -> Self {
        assert!(j < dim, "variable index {j} out of range for dimension {dim}");
        let mut e = vec![0; dim];
        e[j] = 1;
        let mut p = Self::zero(dim);
        p.add_term(e, 1.0);
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8], f64)> {
        self.terms.iter().map(|(e, &c)| (e.as_slice(), c))
    }

    fn add_term(&mut self, exps: Vec<u8>, c: f64) {
        if c == 0.0 {
            return;
        }
        let vanished = {
            let entry = self.terms.entry(exps.clone()).or_insert(0.0);
            *entry += c;
            *entry == 0.0
        };
        if vanished {
            self.terms.remove(&exps);
        }
    }

    pub fn scale(&self, c: f64) -> Self {
        if c == 0.0 {
            return Self::zero(self.dim);
        }
        Self { dim: self.dim, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim);
        self.terms
            .iter()
            .map(|(e, c)| e.iter().zip(x).fold(*c, |acc, (&k, &xi)| acc * xi.powi(k as i32)))
            .sum()
    }

    /// Exact integral over `[0,1]^dim`.
    pub fn integrate_unit_cube(&self) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| e.iter().fold(*c, |acc, &k| acc / (k as f64 + 1.0)))
            .sum()
    }

    /// ∂^dim / ∂x_1 … ∂x_dim.
    pub fn mixed_derivative(&self) -> Self {
        let mut out = Self::zero(self.dim);
        for (e, c) in &self.terms {
            if e.iter().any(|&k| k == 0) {
                continue;
            }
            let coeff = e.iter().fold(*c, |acc, &k| acc * k as f64);
            out.add_term(e.iter().map(|&k| k - 1).collect(), coeff);
        }
        out
    }

    /// Fixes `x_j = value`; the result still has `dim` variables.
    pub fn substitute(&self, j: usize, value: f64) -> Self {
        let mut out = Self::zero(self.dim);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[j];
            e2[j] = 0;
            out.add_term(e2, c * value.powi(k as i32));
        }
        out
    }

    /// Largest exponent of any single variable.
    pub fn max_axis_degree(&self) -> usize {
        self.terms.keys().flat_map(|e| e.iter()).copied().max().unwrap_or(0) as usize
    }

    /// Largest absolute coefficient; zero for the zero polynomial.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().fold(0.0, |a, v| a.max(v.abs()))
    }

    /// Product of polynomials, each given as a function of the index.
    pub fn product<I: IntoIterator<Item = Poly>>(dim: usize, factors: I) -> Self {
        factors.into_iter().fold(Self::constant(dim, 1.0), |acc, f| &acc * &f)
    }

    pub fn sum<I: IntoIterator<Item = Poly>>(dim: usize, parts: I) -> Self {
        parts.into_iter().fold(Self::zero(dim), |acc, f| &acc + &f)
    }

    fn prune(mut self, tol: f64) -> Self {
        self.terms.retain(|_, c| c.abs() > tol);
        self
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| if k == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, k) })
                    .collect();
                if mono.is_empty() {
                    format!("{c}")
                } else {
                    format!("{c}*{}", mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.dim, rhs.dim);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), *c);
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(-1.0)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.dim, rhs.dim);
        let mut acc: BTreeMap<Vec<u8>, f64> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<u8> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert(0.0) += c1 * c2;
            }
        }
        Poly { dim: self.dim, terms: acc }.prune(0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_minus(dim: usize, j: usize) -> Poly {
        &Poly::constant(dim, 1.0) - &Poly::var(dim, j)
    }

    #[test]
    fn product_integral_is_separable() {
        let p = Poly::product(3, (0..3).map(|j| Poly::var(3, j)));
        assert!((p.integrate_unit_cube() - 0.125).abs() < 1e-15);
    }

    #[test]
    fn mixed_derivative_of_bilinear_bump() {
        // x1 x2 (1-x1)(1-x2) -> (1-2x1)(1-2x2)
        let d = 2;
        let p = Poly::product(d, (0..d).map(|j| &Poly::var(d, j) * &one_minus(d, j)));
        let w = p.mixed_derivative();
        let expect = Poly::product(d, (0..d).map(|j| &Poly::constant(d, 1.0) - &Poly::var(d, j).scale(2.0)));
        assert_eq!(w, expect);
        assert!(((&w * &w).integrate_unit_cube() - 1.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn substitution_and_cancellation() {
        let p = &Poly::var(2, 0) * &one_minus(2, 1);
        assert!(p.substitute(1, 1.0).is_zero());
        let q = &p - &p;
        assert!(q.is_zero());
        assert_eq!(p.max_axis_degree(), 1);
    }

    #[test]
    fn eval_matches_expansion() {
        let p = &(&Poly::var(2, 0) + &Poly::constant(2, 2.0)) * &Poly::var(2, 1);
        assert!((p.eval(&[0.5, 3.0]) - 7.5).abs() < 1e-15);
    }
}
