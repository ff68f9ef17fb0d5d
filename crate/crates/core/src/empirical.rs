//! Spacings-based estimator of the concomitant CPI, its exact moments under
//! exponential and uniform marginals, and a Monte Carlo harness.
//!
//! Ties in a sample produce zero spacings and contribute nothing.

use rayon::prelude::*;
use serde::Serialize;

use crate::cpi::cpi_gos;
use crate::error::{Error, Result};
use crate::fgm::{FgmModel, GosParams};
use crate::marginals::{self, MarginalFamily};
use crate::numerics::stats;
use crate::numerics::RngStream;

/// Fewest replicates [`mc_validate`] accepts.
pub const MIN_REPLICATES: usize = 100;

/// `E|W − EW|³ / (EW)³` for an exponential `W`.
const EXP_THIRD_ABS_MOMENT: f64 = 2.0 * (6.0 - std::f64::consts::E) / std::f64::consts::E;

/// An ordered sample of at least two finite values.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Sample {
    values: Vec<f64>,
    was_sorted: bool,
}

impl Sample {
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::domain(format!("a sample needs at least 2 values (got {})", values.len())));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::domain(format!("sample values must be finite (got {v})")));
        }
        let was_sorted = values.windows(2).all(|w| w[0] <= w[1]);
        if !was_sorted {
            values.sort_by(f64::total_cmp);
        }
        Ok(Sample { values, was_sorted })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Values in ascending order.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Whether the input arrived already in ascending order.
    pub fn was_sorted(&self) -> bool {
        self.was_sorted
    }

    /// `U_j = Z_(j+1) − Z_(j)` for `j = 1..n−1`.
    pub fn spacings(&self) -> Vec<f64> {
        self.values.windows(2).map(|w| w[1] - w[0]).collect()
    }
}

/// Estimator weights `w_j = (j/n)(−ln(j/n))[1 + c(1 − j/n)]`, `j = 1..n−1`.
fn weights(n: usize, c: f64) -> Vec<f64> {
    let nf = n as f64;
    (1..n)
        .map(|j| {
            let x = j as f64 / nf;
            -x * x.ln() * (1.0 + c * (1.0 - x))
        })
        .collect()
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.abs() <= 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("association parameter must satisfy |alpha| <= 1 (got {alpha})")))
    }
}

fn weighted_spacings(sample: &Sample, c: f64) -> f64 {
    weights(sample.len(), c)
        .iter()
        .zip(sample.spacings())
        .map(|(w, u)| w * u)
        .sum()
}

/// Empirical CPI `Σ U_j (j/n)(−ln(j/n))[1 + αC*(1 − j/n)]`.
pub fn empirical_cpi(sample: &Sample, alpha: f64, p: &GosParams) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(weighted_spacings(sample, alpha * p.c_star()))
}

/// [`empirical_cpi`] for the r-th upper record.
pub fn empirical_cpi_record(sample: &Sample, alpha: f64, r: u32) -> Result<f64> {
    empirical_cpi(sample, alpha, &GosParams::record(r)?)
}

/// `Σ U_j (j/n)(−ln(j/n))`
pub fn empirical_cumulative_entropy(sample: &Sample) -> f64 {
    weighted_spacings(sample, 0.0)
}

/// `Σ U_j (j/n)²(−2 ln(j/n))`
pub fn empirical_cumulative_entropy_max2(sample: &Sample) -> f64 {
    let n = sample.len() as f64;
    sample
        .spacings()
        .iter()
        .enumerate()
        .map(|(i, u)| {
            let x = (i + 1) as f64 / n;
            -2.0 * x * x * x.ln() * u
        })
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Moments {
    pub mean: f64,
    pub variance: f64,
}

fn check_n(n: usize) -> Result<()> {
    if n >= 2 {
        Ok(())
    } else {
        Err(Error::domain(format!("sample size must be at least 2 (got {n})")))
    }
}

/// Exact moments of the estimator with coefficient `c` when the sample is
/// exponential with the given rate. Spacings are then independent with
/// `U_j ~ Exp(rate·(n − j))`.
fn exponential_spacing_moments(n: usize, rate: f64, c: f64) -> Moments {
    let nf = n as f64;
    let (mut mean, mut variance) = (0.0, 0.0);
    for (i, w) in weights(n, c).into_iter().enumerate() {
        let mu = w / (rate * (nf - (i + 1) as f64));
        mean += mu;
        variance += mu * mu;
    }
    Moments { mean, variance }
}

/// Moments for the uniform marginal on (0, θ) treating each spacing as an
/// independent `θ·Beta(1, n)` variable.
fn uniform_spacing_moments_independent(n: usize, theta: f64, c: f64) -> Moments {
    let nf = n as f64;
    let w = weights(n, c);
    let s1: f64 = w.iter().sum();
    let s2: f64 = w.iter().map(|x| x * x).sum();
    Moments {
        mean: theta * s1 / (nf + 1.0),
        variance: theta * theta * nf / ((nf + 1.0).powi(2) * (nf + 2.0)) * s2,
    }
}

/// Exact moments for the uniform marginal on (0, θ): the spacings are
/// exchangeable Dirichlet components with `Cov(U_i, U_j) = −θ²/((n+1)²(n+2))`.
fn uniform_spacing_moments(n: usize, theta: f64, c: f64) -> Moments {
    let nf = n as f64;
    let w = weights(n, c);
    let s1: f64 = w.iter().sum();
    let s2: f64 = w.iter().map(|x| x * x).sum();
    Moments {
        mean: theta * s1 / (nf + 1.0),
        variance: theta * theta * ((nf + 1.0) * s2 - s1 * s1) / ((nf + 1.0).powi(2) * (nf + 2.0)),
    }
}

/// Mean and variance of the record-concomitant estimator for the
/// generalized exponential marginal with `λ = 1` and rate `θ₂`.
pub fn moments_mtbged(n: usize, theta2: f64, alpha: f64, r: u32) -> Result<Moments> {
    check_n(n)?;
    check_alpha(alpha)?;
    if !(theta2 > 0.0 && theta2.is_finite()) {
        return Err(Error::domain(format!("theta2 must be positive (got {theta2})")));
    }
    let p = GosParams::record(r)?;
    Ok(exponential_spacing_moments(n, theta2, alpha * p.c_star()))
}

/// Mean and variance of the record-concomitant estimator for the standard
/// uniform marginal, using the tabulated variance sum
/// `n/((n+1)²(n+2)) Σ w_j²`, which omits the negative covariance between
/// uniform spacings. See [`moments_mtbud_exact`] for the exact variance.
pub fn moments_mtbud(n: usize, alpha: f64, r: u32) -> Result<Moments> {
    check_n(n)?;
    check_alpha(alpha)?;
    let p = GosParams::record(r)?;
    Ok(uniform_spacing_moments_independent(n, 1.0, alpha * p.c_star()))
}

/// Like [`moments_mtbud`] but with the variance of the dependent spacings.
pub fn moments_mtbud_exact(n: usize, alpha: f64, r: u32) -> Result<Moments> {
    check_n(n)?;
    check_alpha(alpha)?;
    let p = GosParams::record(r)?;
    Ok(uniform_spacing_moments(n, 1.0, alpha * p.c_star()))
}

/// Exact moments of [`empirical_cpi`] for a sample of size `n` from
/// `marginal`, when they are available in closed form (exponential,
/// generalized exponential with `λ = 1`, uniform).
pub fn estimator_moments(marginal: &MarginalFamily, n: usize, c: f64) -> Option<Moments> {
    if n < 2 {
        return None;
    }
    match *marginal {
        MarginalFamily::Exponential { theta } => Some(exponential_spacing_moments(n, 1.0 / theta, c)),
        MarginalFamily::GeneralizedExponential { theta, lambda: 1.0 } => {
            Some(exponential_spacing_moments(n, theta, c))
        }
        MarginalFamily::Uniform { theta } => Some(uniform_spacing_moments(n, theta, c)),
        _ => None,
    }
}

pub fn clt_zscore(value: f64, mean: f64, variance: f64) -> Result<f64> {
    if !(variance > 0.0) {
        return Err(Error::domain(format!("variance must be positive (got {variance})")));
    }
    Ok((value - mean) / variance.sqrt())
}

/// `(Σ E|W_j − EW_j|³)^{1/3} / (Σ Var W_j)^{1/2}` for the summands
/// `W_j = w_j U_j` of the estimator under the `λ = 1` generalized
/// exponential marginal.
pub fn lyapunov_ratio(n: usize, theta2: f64, alpha: f64, r: u32) -> Result<f64> {
    check_n(n)?;
    check_alpha(alpha)?;
    if !(theta2 > 0.0 && theta2.is_finite()) {
        return Err(Error::domain(format!("theta2 must be positive (got {theta2})")));
    }
    let c = alpha * GosParams::record(r)?.c_star();
    let nf = n as f64;
    let (mut s2, mut s3) = (0.0, 0.0);
    for (i, w) in weights(n, c).into_iter().enumerate() {
        let mu = w / (theta2 * (nf - (i + 1) as f64));
        s2 += mu * mu;
        s3 += EXP_THIRD_ABS_MOMENT * mu * mu * mu;
    }
    Ok(s3.cbrt() / s2.sqrt())
}

/// One evaluation of the estimator together with its theoretical moments.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalStudy {
    pub sample: Sample,
    pub config: GosParams,
    pub alpha: f64,
    pub value: f64,
    pub theoretical_mean: Option<f64>,
    pub theoretical_var: Option<f64>,
    pub z_score: Option<f64>,
}

impl EmpiricalStudy {
    /// Evaluates the estimator on `sample`; moments are attached when
    /// `marginal` admits them.
    pub fn new(sample: Sample, config: GosParams, alpha: f64, marginal: Option<&MarginalFamily>) -> Result<Self> {
        let value = empirical_cpi(&sample, alpha, &config)?;
        let moments = marginal.and_then(|m| estimator_moments(m, sample.len(), alpha * config.c_star()));
        let z_score = match moments {
            Some(m) => Some(clt_zscore(value, m.mean, m.variance)?),
            None => None,
        };
        Ok(EmpiricalStudy {
            sample,
            config,
            alpha,
            value,
            theoretical_mean: moments.map(|m| m.mean),
            theoretical_var: moments.map(|m| m.variance),
            z_score,
        })
    }
}

/// Summary of a Monte Carlo run of the estimator.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McReport {
    pub marginal: String,
    pub gos: String,
    pub alpha: f64,
    pub n: usize,
    pub replicates: usize,
    pub seed: u64,
    pub mean: f64,
    pub variance: f64,
    pub theoretical_mean: Option<f64>,
    pub theoretical_var: Option<f64>,
    /// `mean − theoretical_mean`
    pub bias: Option<f64>,
    /// Population CPI the estimator targets as `n → ∞`.
    pub analytic_cpi: Option<f64>,
    /// KS distance of the standardized estimates from N(0, 1).
    pub ks_statistic: Option<f64>,
    pub ks_critical_1pct: f64,
    pub normality_pass: Option<bool>,
}

/// Runs `replicates` independent estimates on samples of size `n` drawn from
/// the Y marginal. Replicate `i` uses `RngStream::new(stream.seed(), i)`, so
/// results do not depend on the number of worker threads.
pub fn mc_validate(
    model: &FgmModel,
    p: &GosParams,
    n: usize,
    replicates: usize,
    stream: &RngStream,
) -> Result<McReport> {
    if replicates < MIN_REPLICATES {
        return Err(Error::domain(format!(
            "replicates must be at least {MIN_REPLICATES} (got {replicates})"
        )));
    }
    check_n(n)?;
    let seed = stream.seed();
    let marginal = *model.marginal_y();
    let alpha = model.alpha();
    let estimates = (0..replicates)
        .into_par_iter()
        .map(|i| {
            let mut s = RngStream::new(seed, i as u64);
            let sample = Sample::new(marginals::sample(&marginal, n, &mut s))?;
            empirical_cpi(&sample, alpha, p)
        })
        .collect::<Result<Vec<f64>>>()?;

    let mean = stats::mean(&estimates);
    let variance = stats::variance(&estimates);
    let theory = estimator_moments(&marginal, n, model.coefficient(p));
    let ks = theory.filter(|m| m.variance > 0.0).map(|m| {
        let mut z: Vec<f64> = estimates.iter().map(|v| (v - m.mean) / m.variance.sqrt()).collect();
        z.sort_by(f64::total_cmp);
        stats::ks_statistic(&z, stats::standard_normal_cdf)
    });
    let critical = stats::ks_critical_1pct(replicates);
    Ok(McReport {
        marginal: marginal.to_string(),
        gos: p.to_string(),
        alpha,
        n,
        replicates,
        seed,
        mean,
        variance,
        theoretical_mean: theory.map(|m| m.mean),
        theoretical_var: theory.map(|m| m.variance),
        bias: theory.map(|m| mean - m.mean),
        analytic_cpi: cpi_gos(model, p).ok().map(|r| r.value),
        ks_statistic: ks,
        ks_critical_1pct: critical,
        normality_pass: ks.map(|d| d < critical),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepPoint {
    pub n: usize,
    pub estimate: f64,
    pub analytic: f64,
    pub gap: f64,
}

/// One estimate per sample size on a single stream: the sample of size
/// `ns[i]` is a prefix of the next, so the sweep follows one sample path.
pub fn consistency_sweep(model: &FgmModel, p: &GosParams, ns: &[usize], stream: &RngStream) -> Result<Vec<SweepPoint>> {
    let analytic = cpi_gos(model, p)?.value;
    let largest = ns.iter().copied().max().unwrap_or(0);
    check_n(largest)?;
    let mut s = RngStream::new(stream.seed(), stream.stream_id());
    let path = marginals::sample(model.marginal_y(), largest, &mut s);
    ns.iter()
        .map(|&n| {
            let sample = Sample::new(path[..n].to_vec())?;
            let estimate = empirical_cpi(&sample, model.alpha(), p)?;
            Ok(SweepPoint {
                n,
                estimate,
                analytic,
                gap: (estimate - analytic).abs(),
            })
        })
        .collect()
}
