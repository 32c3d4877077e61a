//! Ranks and the multivariate Spearman-type statistics S, W and V.
//!
//! All three statistics are evaluated exactly: rank products are summed in
//! 128-bit integers (falling back to big integers on overflow) and the final
//! value is a rational number, rounded to `f64` once.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::efficiency::variance_constant;
use crate::error::{Error, Result};
use crate::normal::{inv_norm_cdf, norm_sf};
use crate::seed::stream_rng;

/// `n × m` real observations, rows are subjects and columns are margins.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleMatrix {
    n: usize,
    m: usize,
    data: Vec<f64>,
}

impl SampleMatrix {
    /// Builds a sample from row-major data.
    pub fn new(n: usize, m: usize, data: Vec<f64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSample(format!("need at least 2 rows, got {n}")));
        }
        if m < 2 {
            return Err(Error::InvalidSample(format!("need at least 2 columns, got {m}")));
        }
        if data.len() != n * m {
            return Err(Error::InvalidSample(format!("expected {} values, got {}", n * m, data.len())));
        }
        if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidSample(format!("non-finite value at row {}, column {}", pos / m + 1, pos % m + 1)));
        }
        Ok(Self { n, m, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let m = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != m) {
            return Err(Error::InvalidSample(format!("row {} has {} columns, expected {m}", bad + 1, rows[bad].len())));
        }
        Self::new(rows.len(), m, rows.iter().flatten().copied().collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.m..(i + 1) * self.m]
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.m + j]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.m)
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }
}

/// Column-wise ranks `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankMatrix {
    n: usize,
    m: usize,
    ranks: Vec<u32>,
}

impl RankMatrix {
    /// Builds a rank matrix from row-major ranks, checking that every column
    /// is a permutation of `1..=n`.
    pub fn new(n: usize, m: usize, ranks: Vec<u32>) -> Result<Self> {
        if n < 2 || m < 2 || ranks.len() != n * m {
            return Err(Error::InvalidSample(format!("bad rank matrix shape {n}x{m} with {} entries", ranks.len())));
        }
        for j in 0..m {
            let mut seen = vec![false; n];
            for i in 0..n {
                let r = ranks[i * m + j] as usize;
                if r == 0 || r > n || seen[r - 1] {
                    return Err(Error::InvalidSample(format!("column {} is not a permutation of 1..{n}", j + 1)));
                }
                seen[r - 1] = true;
            }
        }
        Ok(Self { n, m, ranks })
    }

    /// Builds from one permutation per column.
    pub fn from_columns(columns: &[Vec<u32>]) -> Result<Self> {
        let m = columns.len();
        let n = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != n) {
            return Err(Error::InvalidSample("columns differ in length".into()));
        }
        let ranks = (0..n).flat_map(|i| columns.iter().map(move |c| c[i])).collect();
        Self::new(n, m, ranks)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.ranks[i * self.m + j]
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.ranks[i * self.m..(i + 1) * self.m]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TiePolicy {
    Reject,
    /// Break ties by a shuffle seeded with the given value.
    Random(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StatKind {
    S,
    W,
    V,
    U,
}

impl std::fmt::Display for StatKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            StatKind::S => "S",
            StatKind::W => "W",
            StatKind::V => "V",
            StatKind::U => "U",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for StatKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "S" => Ok(StatKind::S),
            "W" => Ok(StatKind::W),
            "V" => Ok(StatKind::V),
            "U" => Ok(StatKind::U),
            _ => Err(Error::InvalidArgument(format!("unknown statistic `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StatValue {
    pub kind: StatKind,
    pub value: f64,
    pub n: usize,
    pub m: usize,
}

/// Outcome of the one-sided asymptotic test based on S.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Standardized {
    pub z: f64,
    pub p_value: f64,
    pub reject: bool,
    pub alpha: f64,
}

/// Ranks each column. Ranks run from 1 (smallest) to n.
pub fn compute_ranks(sample: &SampleMatrix, policy: TiePolicy) -> Result<RankMatrix> {
    let (n, m) = (sample.n(), sample.m());
    let mut ranks = vec![0u32; n * m];
    let mut order: Vec<usize> = Vec::with_capacity(n);
    for j in 0..m {
        order.clear();
        order.extend(0..n);
        match policy {
            TiePolicy::Reject => {
                order.sort_by(|&a, &b| sample.get(a, j).total_cmp(&sample.get(b, j)));
                if order.windows(2).any(|w| sample.get(w[0], j) == sample.get(w[1], j)) {
                    return Err(Error::TiesPresent { column: j + 1 });
                }
            }
            TiePolicy::Random(seed) => {
                let mut rng = stream_rng(seed, j as u64);
                let keys: Vec<u64> = (0..n).map(|_| rng.gen()).collect();
                order.sort_by(|&a, &b| sample.get(a, j).total_cmp(&sample.get(b, j)).then(keys[a].cmp(&keys[b])));
            }
        }
        for (r, &i) in order.iter().enumerate() {
            ranks[i * m + j] = r as u32 + 1;
        }
    }
    Ok(RankMatrix { n, m, ranks })
}

/// Σ_i ∏_j f(R_ij), accumulated in u128 and promoted to big integers on overflow.
fn sum_row_products(ranks: &RankMatrix, f: impl Fn(u32) -> u64) -> BigInt {
    let mut acc: u128 = 0;
    let mut big: Option<BigUint> = None;
    for i in 0..ranks.n() {
        let narrow = ranks.row(i).iter().try_fold(1u128, |p, &r| p.checked_mul(f(r) as u128));
        match (narrow, big.as_mut()) {
            (Some(p), None) => match acc.checked_add(p) {
                Some(s) => acc = s,
                None => big = Some(BigUint::from(acc) + BigUint::from(p)),
            },
            (Some(p), Some(b)) => *b += BigUint::from(p),
            (None, _) => {
                let p = ranks.row(i).iter().fold(BigUint::one(), |p, &r| p * BigUint::from(f(r)));
                match big.as_mut() {
                    Some(b) => *b += p,
                    None => big = Some(BigUint::from(acc) + p),
                }
            }
        }
    }
    BigInt::from(big.unwrap_or_else(|| BigUint::from(acc)))
}

fn pow_big(base: u64, exp: usize) -> BigInt {
    num_traits::pow(BigInt::from(base), exp)
}

fn power_sum(n: usize, m: usize) -> BigInt {
    (1..=n as u64).fold(BigInt::zero(), |acc, i| acc + pow_big(i, m))
}

/// Exact normalizer `C_m = n⁻¹ Σ i^m − ((n+1)/2)^m`.
pub fn normalizer_exact(n: usize, m: usize) -> BigRational {
    let n_big = BigInt::from(n as u64);
    let two_m = pow_big(2, m);
    let num = &two_m * power_sum(n, m) - &n_big * pow_big(n as u64 + 1, m);
    BigRational::new(num, n_big * two_m)
}

pub fn normalizer(n: usize, m: usize) -> f64 {
    normalizer_exact(n, m).to_f64().unwrap_or(f64::NAN)
}

// (2^m Σ_i ∏_j g(R_ij) − n (n+1)^m) / (2^m Σ_i i^m − n (n+1)^m)
fn product_statistic_exact(ranks: &RankMatrix, g: impl Fn(u32) -> u64) -> BigRational {
    let (n, m) = (ranks.n(), ranks.m());
    let two_m = pow_big(2, m);
    let centre = BigInt::from(n as u64) * pow_big(n as u64 + 1, m);
    let num = &two_m * sum_row_products(ranks, g) - &centre;
    let den = &two_m * power_sum(n, m) - &centre;
    BigRational::new(num, den)
}

/// Exact S: uses products of reversed ranks `n + 1 − R_ij`.
pub fn stat_s_exact(ranks: &RankMatrix) -> BigRational {
    let n1 = ranks.n() as u64 + 1;
    product_statistic_exact(ranks, |r| n1 - r as u64)
}

/// Exact W: uses products of ranks `R_ij`.
pub fn stat_w_exact(ranks: &RankMatrix) -> BigRational {
    product_statistic_exact(ranks, |r| r as u64)
}

/// Exact V: the average of the pairwise Spearman coefficients.
pub fn stat_v_exact(ranks: &RankMatrix) -> BigRational {
    let (n, m) = (ranks.n(), ranks.m());
    let pairs = (m * (m - 1) / 2) as u64;
    let mut cross: u128 = 0;
    for i in 0..n {
        let row = ranks.row(i);
        for a in 0..m {
            for b in a + 1..m {
                cross += row[a] as u128 * row[b] as u128;
            }
        }
    }
    let n_big = BigInt::from(n as u64);
    let num = BigInt::from(3u8)
        * (BigInt::from(4u8) * BigInt::from(cross) - BigInt::from(pairs) * &n_big * pow_big(n as u64 + 1, 2));
    let den = BigInt::from(pairs) * &n_big * (pow_big(n as u64, 2) - BigInt::one());
    BigRational::new(num, den)
}

fn to_value(kind: StatKind, ranks: &RankMatrix, exact: BigRational) -> StatValue {
    StatValue { kind, value: exact.to_f64().unwrap_or(f64::NAN), n: ranks.n(), m: ranks.m() }
}

pub fn stat_s(ranks: &RankMatrix) -> StatValue {
    to_value(StatKind::S, ranks, stat_s_exact(ranks))
}

pub fn stat_w(ranks: &RankMatrix) -> StatValue {
    to_value(StatKind::W, ranks, stat_w_exact(ranks))
}

pub fn stat_v(ranks: &RankMatrix) -> StatValue {
    to_value(StatKind::V, ranks, stat_v_exact(ranks))
}

/// Null variance σ²_m(0) of √n·S (and of √n·U).
pub fn null_variance(m: usize) -> f64 {
    let m_f = m as f64;
    let gap = 2f64.powi(m as i32) - (m_f + 1.0);
    (m_f + 1.0).powi(2) / (gap * gap) * variance_constant(m)
}

/// Asymptotic one-sided test of independence: reject when `√n S / σ_m(0) > z_α`.
pub fn standardize(stat: &StatValue, alpha: f64) -> Result<Standardized> {
    if !matches!(stat.kind, StatKind::S | StatKind::U) {
        return Err(Error::UnsupportedKind(stat.kind.to_string()));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidArgument(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    let z = (stat.n as f64).sqrt() * stat.value / null_variance(stat.m).sqrt();
    let z_alpha = inv_norm_cdf(1.0 - alpha)?;
    Ok(Standardized { z, p_value: norm_sf(z), reject: z > z_alpha, alpha })
}

/// Maximum number of kernel terms evaluated by [`u_statistic`].
pub const U_STATISTIC_CAP: f64 = 1e8;

/// The (m+1)-sample U-statistic whose kernel symmetrizes
/// `I(X_{m+1,j} < X_{j,j}, j = 1..m)`, averaged over every ordered tuple of
/// distinct observations.
pub fn u_statistic(sample: &SampleMatrix) -> Result<StatValue> {
    let (n, m) = (sample.n(), sample.m());
    if n < m + 1 {
        return Err(Error::InvalidSample(format!("U-statistic needs n >= m+1 = {}, got n = {n}", m + 1)));
    }
    let tuples = (0..=m).fold(1.0f64, |acc, k| acc * (n - k) as f64);
    if tuples > U_STATISTIC_CAP {
        return Err(Error::TooLarge { what: "U-statistic kernel", size: tuples, cap: U_STATISTIC_CAP });
    }
    let mut hits: u64 = 0;
    let mut used = vec![false; n];
    for low in 0..n {
        used[low] = true;
        hits += count_dominating(sample, low, 0, &mut used);
        used[low] = false;
    }
    let c = 0.5f64.powi(m as i32);
    let d = 1.0 / (m as f64 + 1.0) - c;
    let value = (hits as f64 / tuples - c) / d;
    Ok(StatValue { kind: StatKind::U, value, n, m })
}

// Ordered choices of distinct, unused i_j, i_{j+1}, …, i_{m-1} with X[i_k, k] > X[low, k].
fn count_dominating(sample: &SampleMatrix, low: usize, j: usize, used: &mut [bool]) -> u64 {
    if j == sample.m() {
        return 1;
    }
    let threshold = sample.get(low, j);
    let mut total = 0;
    for i in 0..sample.n() {
        if !used[i] && sample.get(i, j) > threshold {
            used[i] = true;
            total += count_dominating(sample, low, j + 1, used);
            used[i] = false;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;
    use proptest::prelude::*;

    fn ratio(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    fn sample(rows: &[&[f64]]) -> SampleMatrix {
        SampleMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    // Classical Spearman rho from its textbook definition.
    fn classical_rho(a: &[u32], b: &[u32]) -> BigRational {
        let n = a.len() as i64;
        let d2: i64 = a.iter().zip(b).map(|(&x, &y)| (x as i64 - y as i64).pow(2)).sum();
        BigRational::one() - ratio(6 * d2, n * (n * n - 1))
    }

    fn permutations(n: u32) -> Vec<Vec<u32>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn ranks_of_simple_column() {
        let s = sample(&[&[0.3, 1.0], &[0.1, 2.0], &[0.9, 3.0]]);
        let r = compute_ranks(&s, TiePolicy::Reject).unwrap();
        assert_eq!(r.column(0), vec![2, 1, 3]);
        assert_eq!(r.column(1), vec![1, 2, 3]);
    }

    #[test]
    fn ties_rejected_or_broken() {
        let s = sample(&[&[0.5, 0.1], &[0.5, 0.2]]);
        assert_eq!(compute_ranks(&s, TiePolicy::Reject), Err(Error::TiesPresent { column: 1 }));
        let a = compute_ranks(&s, TiePolicy::Random(9)).unwrap();
        let b = compute_ranks(&s, TiePolicy::Random(9)).unwrap();
        assert_eq!(a, b);
        let mut col = a.column(0);
        col.sort_unstable();
        assert_eq!(col, vec![1, 2]);
    }

    #[test]
    fn invalid_samples() {
        assert!(SampleMatrix::new(1, 2, vec![0.0, 1.0]).is_err());
        assert!(SampleMatrix::new(2, 1, vec![0.0, 1.0]).is_err());
        assert!(SampleMatrix::new(2, 2, vec![0.0, 1.0, f64::NAN, 0.0]).is_err());
        assert!(RankMatrix::new(2, 2, vec![1, 1, 1, 2]).is_err());
    }

    #[test]
    fn normalizer_values() {
        assert_eq!(normalizer_exact(3, 2), ratio(2, 3));
        assert_eq!(normalizer_exact(2, 3), ratio(9, 8));
        for n in 2..=100i64 {
            let direct = BigRational::new(BigInt::from((1..=n).map(|i| i * i).sum::<i64>()), BigInt::from(n))
                - ratio((n + 1) * (n + 1), 4);
            assert_eq!(normalizer_exact(n as usize, 2), direct);
            assert_eq!(direct, ratio(n * n - 1, 12));
        }
    }

    #[test]
    fn perfect_and_reversed_concordance() {
        let same = RankMatrix::from_columns(&[vec![1, 2, 3], vec![1, 2, 3]]).unwrap();
        for v in [stat_s(&same), stat_w(&same), stat_v(&same)] {
            assert_eq!(v.value, 1.0);
        }
        let rev = RankMatrix::from_columns(&[vec![1, 2, 3], vec![3, 2, 1]]).unwrap();
        for v in [stat_s(&rev), stat_w(&rev), stat_v(&rev)] {
            assert_eq!(v.value, -1.0);
        }
        let cube = RankMatrix::from_columns(&[vec![3, 1, 4, 2], vec![3, 1, 4, 2], vec![3, 1, 4, 2]]).unwrap();
        assert_eq!(stat_s_exact(&cube), BigRational::one());
    }

    #[test]
    fn bivariate_collapse_exhaustive() {
        for n in 2..=5u32 {
            let perms = permutations(n);
            for p in &perms {
                for q in &perms {
                    let r = RankMatrix::from_columns(&[p.clone(), q.clone()]).unwrap();
                    let rho = classical_rho(p, q);
                    assert_eq!(stat_s_exact(&r), rho);
                    assert_eq!(stat_w_exact(&r), rho);
                    assert_eq!(stat_v_exact(&r), rho);
                }
            }
        }
    }

    #[test]
    fn trivariate_values_stay_above_population_lower_bound() {
        let lb = crate::efficiency::s_lower_bound(3);
        for n in 3..=5u32 {
            let perms = permutations(n);
            let id: Vec<u32> = (1..=n).collect();
            for p in &perms {
                for q in &perms {
                    let r = RankMatrix::from_columns(&[id.clone(), p.clone(), q.clone()]).unwrap();
                    let s = stat_s(&r).value;
                    assert!(s > lb && s <= 1.0 + 1e-15, "S = {s}");
                }
            }
        }
    }

    #[test]
    fn wide_accumulation_path_matches_narrow() {
        // m = 10 with n = 100 overflows u64 rank products, not u128; m = 20 overflows u128.
        for &(n, m) in &[(100usize, 10usize), (60, 20)] {
            let cols: Vec<Vec<u32>> = (0..m).map(|_| (1..=n as u32).collect()).collect();
            let r = RankMatrix::from_columns(&cols).unwrap();
            assert_eq!(stat_s_exact(&r), BigRational::one());
            assert_eq!(stat_w_exact(&r), BigRational::one());
        }
    }

    #[test]
    fn standardization() {
        assert!((null_variance(2) - 1.0).abs() < 1e-15);
        assert!((null_variance(3) - 10.0 / 27.0).abs() < 1e-15);
        let z = standardize(&StatValue { kind: StatKind::S, value: 0.3, n: 100, m: 2 }, 0.05).unwrap();
        assert!((z.z - 3.0).abs() < 1e-12);
        assert!(z.reject);
        let zero = standardize(&StatValue { kind: StatKind::S, value: 0.0, n: 50, m: 3 }, 0.4).unwrap();
        assert_eq!(zero.p_value, 0.5);
        assert!(!zero.reject);
        let w = StatValue { kind: StatKind::W, value: 0.1, n: 10, m: 3 };
        assert_eq!(standardize(&w, 0.05), Err(Error::UnsupportedKind("W".into())));
    }

    #[test]
    fn u_statistic_degenerate_and_concordant() {
        // n = m + 1: a single subset. Rows (0.1,0.2),(0.5,0.6),(0.9,0.7).
        let s = sample(&[&[0.1, 0.2], &[0.5, 0.6], &[0.9, 0.7]]);
        // Ordered triples (i1, i2, low) with x[low] < x[i1] and y[low] < y[i2]:
        // only low = 0 qualifies, with both orders of {1, 2}.
        let expected = (2.0 / 6.0 - 0.25) / (1.0 / 3.0 - 0.25);
        assert!((u_statistic(&s).unwrap().value - expected).abs() < 1e-12);

        let rows: Vec<Vec<f64>> = (0..12).map(|i| vec![i as f64; 2]).collect();
        let conc = SampleMatrix::from_rows(&rows).unwrap();
        assert!((u_statistic(&conc).unwrap().value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn u_statistic_cap_and_size() {
        let rows: Vec<Vec<f64>> = (0..3).map(|i| vec![i as f64; 3]).collect();
        assert!(u_statistic(&SampleMatrix::from_rows(&rows).unwrap()).is_err());
        let rows: Vec<Vec<f64>> = (0..200).map(|i| vec![i as f64; 3]).collect();
        assert!(matches!(u_statistic(&SampleMatrix::from_rows(&rows).unwrap()), Err(Error::TooLarge { .. })));
    }

    proptest! {
        #[test]
        fn statistics_invariant_under_column_permutation(
            data in proptest::collection::vec(0.0f64..1.0, 24),
            swap in 0usize..3,
        ) {
            let s = SampleMatrix::new(8, 3, data.clone()).unwrap();
            prop_assume!(compute_ranks(&s, TiePolicy::Reject).is_ok());
            let r = compute_ranks(&s, TiePolicy::Reject).unwrap();
            let (a, b) = [(0, 1), (1, 2), (0, 2)][swap];
            let mut permuted = data.clone();
            for row in permuted.chunks_exact_mut(3) {
                row.swap(a, b);
            }
            let r2 = compute_ranks(&SampleMatrix::new(8, 3, permuted).unwrap(), TiePolicy::Reject).unwrap();
            prop_assert_eq!(stat_s_exact(&r), stat_s_exact(&r2));
            prop_assert_eq!(stat_w_exact(&r), stat_w_exact(&r2));
            prop_assert_eq!(stat_v_exact(&r), stat_v_exact(&r2));
        }

        #[test]
        fn statistics_invariant_under_monotone_margins(
            data in proptest::collection::vec(0.01f64..1.0, 21),
        ) {
            let s = SampleMatrix::new(7, 3, data.clone()).unwrap();
            prop_assume!(compute_ranks(&s, TiePolicy::Reject).is_ok());
            let mapped: Vec<f64> = data.iter().enumerate()
                .map(|(k, &v)| match k % 3 { 0 => v.ln(), 1 => v.powi(3) + 2.0, _ => (5.0 * v).exp() })
                .collect();
            let r = compute_ranks(&s, TiePolicy::Reject).unwrap();
            let r2 = compute_ranks(&SampleMatrix::new(7, 3, mapped).unwrap(), TiePolicy::Reject).unwrap();
            prop_assert_eq!(&r, &r2);
            prop_assert_eq!(stat_s(&r), stat_s(&r2));
        }
    }

    #[test]
    fn big_rational_roundtrip_sanity() {
        let x = BigRational::from_f64(0.25).unwrap();
        assert_eq!(x, ratio(1, 4));
    }
}
