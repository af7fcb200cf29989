//! Power-law fits, distributions and Spearman rank correlation.

use std::collections::{BTreeMap, BTreeSet};

use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::centrality::{ordinal_ranks, CentralityVector};
use crate::error::{Error, Result};
use crate::graph::CoauthGraph;
use crate::ingest::AuthorKey;

/// `y = coefficient * x^exponent`, fitted by least squares on `ln y ~ ln x`.
/// `r_squared` is the coefficient of determination of that log-log regression.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerFit {
    pub coefficient: f64,
    pub exponent: f64,
    pub r_squared: f64,
    pub n_points: usize,
}

pub fn power_fit(points: &[(f64, f64)]) -> Result<PowerFit> {
    if points.len() < 3 {
        return Err(Error::domain(format!("power fit needs at least 3 points, got {}", points.len())));
    }
    if let Some(&(x, y)) = points.iter().find(|&&(x, y)| !(x > 0.0 && y > 0.0) || !x.is_finite() || !y.is_finite()) {
        return Err(Error::domain(format!("power fit needs positive finite coordinates, got ({x}, {y})")));
    }
    let n = points.len() as f64;
    let lx: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ly: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let mean_x = lx.iter().sum::<f64>() / n;
    let mean_y = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mean_x).powi(2)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mean_x) * (y - mean_y)).sum();
    let syy: f64 = ly.iter().map(|y| (y - mean_y).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::domain("rank-deficient power fit: all x values are equal"));
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let sse: f64 = lx
        .iter()
        .zip(&ly)
        .map(|(x, y)| (y - (intercept + slope * x)).powi(2))
        .sum();
    let r_squared = if syy == 0.0 { 1.0 } else { (1.0 - sse / syy).clamp(0.0, 1.0) };
    Ok(PowerFit {
        coefficient: intercept.exp(),
        exponent: slope,
        r_squared,
        n_points: points.len(),
    })
}

/// `(degree, share of all vertices)` for every degree k >= 1 that occurs.
/// Isolated vertices count toward the denominator only.
pub fn degree_distribution(g: &CoauthGraph) -> Result<Vec<(usize, f64)>> {
    let mut tally: BTreeMap<usize, u64> = BTreeMap::new();
    for v in 0..g.vertex_count() {
        let k = g.degree(v);
        if k > 0 {
            *tally.entry(k).or_default() += 1;
        }
    }
    if tally.is_empty() {
        return Err(Error::domain("degree distribution needs a vertex of degree >= 1"));
    }
    let n = g.vertex_count() as f64;
    Ok(tally.into_iter().map(|(k, c)| (k, c as f64 / n)).collect())
}

/// 1-based ranks; tied values share the mean of the positions they span.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for &idx in &order[i..=j] {
            ranks[idx] = rank;
        }
        i = j + 1;
    }
    ranks
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spearman {
    pub rho: f64,
    /// Two-sided, from the t approximation with n - 2 degrees of freedom.
    pub p_value: f64,
}

/// Spearman's rho with average-rank ties.
pub fn spearman(xs: &[f64], ys: &[f64]) -> Result<Spearman> {
    if xs.len() != ys.len() {
        return Err(Error::domain(format!("series lengths differ ({} vs {})", xs.len(), ys.len())));
    }
    let n = xs.len();
    if n < 3 {
        return Err(Error::domain(format!("spearman needs at least 3 observations, got {n}")));
    }
    if xs.iter().chain(ys).any(|v| v.is_nan()) {
        return Err(Error::domain("spearman input contains NaN"));
    }
    let rx = average_ranks(xs);
    let ry = average_ranks(ys);
    // both rank vectors have mean (n + 1) / 2
    let mean = (n as f64 + 1.0) / 2.0;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in rx.iter().zip(&ry) {
        let (dx, dy) = (a - mean, b - mean);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::UndefinedCorrelation("a series has constant ranks".to_owned()));
    }
    let rho = (sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0);
    let p_value = if rho.abs() == 1.0 {
        0.0
    } else {
        let df = (n - 2) as f64;
        let t = rho * (df / (1.0 - rho * rho)).sqrt();
        let dist = StudentsT::new(0.0, 1.0, df).expect("df >= 1");
        (2.0 * dist.sf(t.abs())).min(1.0)
    };
    Ok(Spearman { rho, p_value })
}

pub const SIGNIFICANCE_LEVEL: f64 = 0.01;

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationReport {
    pub labels: Vec<String>,
    pub rho: Vec<Vec<f64>>,
    pub p_values: Vec<Vec<f64>>,
    /// `p_value < 0.01`.
    pub significant_01: Vec<Vec<bool>>,
    pub n: usize,
}

/// Pairwise Spearman correlations. Series must be aligned element-wise.
pub fn correlation_matrix(series: &[(String, Vec<f64>)]) -> Result<CorrelationReport> {
    if series.len() < 2 {
        return Err(Error::domain("correlation matrix needs at least two series"));
    }
    let n = series[0].1.len();
    let m = series.len();
    let mut rho = vec![vec![1.0; m]; m];
    let mut p_values = vec![vec![0.0; m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let (a, xs) = &series[i];
            let (b, ys) = &series[j];
            let s = spearman(xs, ys).map_err(|e| match e {
                Error::UndefinedCorrelation(msg) => Error::UndefinedCorrelation(format!("{a} vs {b}: {msg}")),
                Error::Domain(msg) => Error::Domain(format!("{a} vs {b}: {msg}")),
                other => other,
            })?;
            rho[i][j] = s.rho;
            rho[j][i] = s.rho;
            p_values[i][j] = s.p_value;
            p_values[j][i] = s.p_value;
        }
    }
    let significant_01 = p_values
        .iter()
        .map(|row| row.iter().map(|&p| p < SIGNIFICANCE_LEVEL).collect())
        .collect();
    Ok(CorrelationReport {
        labels: series.iter().map(|(name, _)| name.clone()).collect(),
        rho,
        p_values,
        significant_01,
        n,
    })
}

/// Equal-width histogram.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub bin_edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub normalized: bool,
}

impl Histogram {
    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        let total = self.total() as f64;
        self.counts.iter().map(|&c| c as f64 / total).collect()
    }
}

/// Bins span `[min, max]`. Each bin is half-open except the last, which
/// includes `max`. A constant input produces a single bin.
pub fn histogram(values: &[f64], bins: usize, normalized: bool) -> Result<Histogram> {
    if values.is_empty() {
        return Err(Error::domain("histogram of an empty series"));
    }
    if bins == 0 {
        return Err(Error::domain("histogram needs at least one bin"));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::domain("histogram input must be finite"));
    }
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if lo == hi {
        return Ok(Histogram {
            bin_edges: vec![lo, hi],
            counts: vec![values.len() as u64],
            normalized,
        });
    }
    let width = (hi - lo) / bins as f64;
    let mut bin_edges: Vec<f64> = (0..bins).map(|i| lo + width * i as f64).collect();
    bin_edges.push(hi);

    let mut counts = vec![0u64; bins];
    for &v in values {
        let mut idx = (((v - lo) / width) as usize).min(bins - 1);
        // settle rounding against the stored edges
        while idx > 0 && v < bin_edges[idx] {
            idx -= 1;
        }
        while idx + 1 < bins && v >= bin_edges[idx + 1] {
            idx += 1;
        }
        counts[idx] += 1;
    }
    Ok(Histogram {
        bin_edges,
        counts,
        normalized,
    })
}

/// Ordinal ranks of every vertex under several orderings, listed in
/// baseline rank order.
#[derive(Debug, Clone, PartialEq)]
pub struct RankingProfile {
    /// Column names: baseline measure, other measures, then `citations`.
    pub columns: Vec<String>,
    pub rows: Vec<(AuthorKey, Vec<usize>)>,
}

pub fn ranking_profile(
    baseline: &CentralityVector,
    others: &[CentralityVector],
    citations: &BTreeMap<AuthorKey, u64>,
) -> Result<RankingProfile> {
    for cv in others {
        if cv.keys() != baseline.keys() {
            return Err(Error::domain(format!(
                "{} and {} cover different vertex sets",
                baseline.measure(),
                cv.measure()
            )));
        }
    }
    let cited: BTreeSet<&AuthorKey> = citations.keys().collect();
    let base: BTreeSet<&AuthorKey> = baseline.keys().iter().collect();
    if cited != base {
        return Err(Error::domain("citation counts cover a different vertex set"));
    }
    let citation_cv = CentralityVector::new(
        baseline.measure(),
        citations.iter().map(|(k, &c)| (k.clone(), c as f64)).collect(),
    )?;

    let mut columns = vec![baseline.measure().name().to_owned()];
    columns.extend(others.iter().map(|cv| cv.measure().name().to_owned()));
    columns.push("citations".to_owned());

    let mut rank_columns = vec![ordinal_ranks(baseline)];
    rank_columns.extend(others.iter().map(ordinal_ranks));
    rank_columns.push(ordinal_ranks(&citation_cv));

    let mut rows: Vec<(AuthorKey, Vec<usize>)> = baseline
        .keys()
        .iter()
        .enumerate()
        .map(|(i, k)| (k.clone(), rank_columns.iter().map(|col| col[i]).collect()))
        .collect();
    rows.sort_by_key(|(_, ranks)| ranks[0]);
    Ok(RankingProfile { columns, rows })
}
