//! Cumulative past inaccuracy (CPI) between a concomitant cdf and its parent
//! cdf.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fgm::{FgmModel, GosKind, GosParams};
use crate::marginals::MarginalFamily;
use crate::measure::{MeasureResult, Method};
use crate::numerics::{gamma, integrate, trigamma, Tolerance};

/// `(1 + c)CE(Y) − (c/2)CE(Y₍₂:₂₎)` with `c = αC*`.
pub fn cpi_gos(model: &FgmModel, p: &GosParams) -> Result<MeasureResult> {
    let c = model.coefficient(p);
    let m = model.marginal_y();
    let ce = m.cumulative_entropy_result()?;
    let ce2 = m.cumulative_entropy_max2_result()?;
    Ok(ce.combine(1.0 + c, ce2, -c / 2.0))
}

/// `−∫ G_[r,n,m,k] ln F_Y` by direct quadrature.
pub fn cpi_gos_quadrature(model: &FgmModel, p: &GosParams) -> Result<MeasureResult> {
    cpi_gos_quadrature_with(model, p, Tolerance::default())
}

pub fn cpi_gos_quadrature_with(model: &FgmModel, p: &GosParams, tol: Tolerance) -> Result<MeasureResult> {
    let m = model.marginal_y();
    let (lo, hi) = m.support();
    let q = integrate(
        |y| {
            let g = model.concomitant_cdf(p, y);
            if g == 0.0 {
                0.0
            } else {
                -g * m.ln_cdf(y)
            }
        },
        lo,
        hi,
        tol,
    )?;
    Ok(MeasureResult::from_quadrature(q, Method::Quadrature))
}

/// Per-family closed form of the concomitant CPI as a function of
/// `coeff = αC*`. Rayleigh has no closed form and reports `Unsupported`.
pub fn closed_form_cpi(marginal: &MarginalFamily, coeff: f64) -> Result<f64> {
    use MarginalFamily::*;
    marginal.validate()?;
    if !(coeff.abs() <= 1.0) {
        return Err(Error::domain(format!("coefficient must satisfy |alpha C*| <= 1 (got {coeff})")));
    }
    let pi2_6 = PI * PI / 6.0;
    Ok(match *marginal {
        Uniform { theta } => theta / 4.0 + coeff * 5.0 * theta / 36.0,
        Exponential { theta } => (pi2_6 - 1.0) * theta + coeff * theta / 4.0,
        InverseWeibull { theta, beta } => {
            if beta <= 1.0 {
                return Err(Error::domain(format!(
                    "inverse Weibull CPI is infinite for beta <= 1 (got beta={beta})"
                )));
            }
            theta / beta * gamma((beta - 1.0) / beta)? * (1.0 + coeff * (1.0 - 2f64.powf(1.0 / beta - 1.0)))
        }
        Logistic => pi2_6 + coeff,
        GeneralizedExponential { theta, lambda } => {
            let ce = lambda / theta * trigamma(lambda + 1.0)?;
            ce + coeff * lambda / theta * (trigamma(lambda + 1.0)? - trigamma(2.0 * lambda + 1.0)?)
        }
        Rayleigh { .. } => {
            return Err(Error::Unsupported("no closed-form CPI for the Rayleigh family".into()));
        }
    })
}

/// Reversed CPI `I(F_Y, G) = CE(Y) − E[U ln(1 + αC*(1 − U)) / f(Q(U))]`.
pub fn reversed_cpi(model: &FgmModel, p: &GosParams) -> Result<MeasureResult> {
    let c = model.coefficient(p);
    let m = model.marginal_y();
    let ce = m.cumulative_entropy_result()?;
    let q = integrate(
        |u| {
            let t = (c * (1.0 - u)).ln_1p();
            if t == 0.0 {
                0.0
            } else {
                u * t * (-m.ln_density_quantile(u)).exp()
            }
        },
        0.0,
        1.0,
        Tolerance::default(),
    )?;
    Ok(MeasureResult {
        value: ce.value - q.value,
        method: Method::Quadrature,
        abs_error: ce.abs_error + q.abs_error,
    })
}

/// Position of the concomitant CPI relative to `CE(Y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CpiBound {
    BelowCe,
    AboveCe,
    Equal,
}

/// Classifies `cpi_gos` against `CE(Y)`.
///
/// For order statistics the bound is only meaningful for `r ≤ (n + 1)/2`;
/// larger `r` is a domain error.
pub fn check_cpi_bounds(model: &FgmModel, p: &GosParams) -> Result<CpiBound> {
    if p.kind() == GosKind::OrderStatistic && 2 * p.r() > p.n() + 1 {
        return Err(Error::domain(format!(
            "order-statistic CPI bound requires r <= (n+1)/2 (got r={}, n={})",
            p.r(),
            p.n()
        )));
    }
    let ce = model.marginal_y().cumulative_entropy_result()?;
    let cpi = cpi_gos(model, p)?;
    let diff = cpi.value - ce.value;
    let slack = 1e-12 * ce.value.abs().max(1.0) + cpi.abs_error + ce.abs_error;
    Ok(if model.coefficient(p) == 0.0 || diff.abs() <= slack {
        CpiBound::Equal
    } else if diff < 0.0 {
        CpiBound::BelowCe
    } else {
        CpiBound::AboveCe
    })
}
