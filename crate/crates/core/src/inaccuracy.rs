//! Kerridge inaccuracy between a concomitant density and its parent density.

use crate::error::{Error, Result};
use crate::fgm::{Extreme, FgmModel, GosParams, HeterogeneousAlphas};
use crate::marginals::{harmonic_b, MarginalFamily};
use crate::measure::{MeasureResult, Method};
use crate::numerics::{digamma, integrate, Tolerance, EULER_GAMMA};

use std::f64::consts::LN_2;

/// `(1 + c)H(Y) + 2cφ_f` for a concomitant with coefficient `c = αC*`.
fn compose(marginal: &MarginalFamily, c: f64) -> Result<MeasureResult> {
    let h = marginal.shannon_entropy()?;
    let phi = marginal.phi_f()?;
    let value = (1.0 + c) * h + 2.0 * c * phi;
    if !value.is_finite() {
        return Err(Error::Divergent { last: value });
    }
    Ok(MeasureResult::closed_form(value))
}

/// `I(g_[r,n,m,k], f_Y)` from the entropy decomposition.
pub fn inaccuracy_gos(model: &FgmModel, p: &GosParams) -> Result<MeasureResult> {
    compose(model.marginal_y(), model.coefficient(p))
}

/// `−∫ g_[r,n,m,k] ln f_Y` by direct quadrature over the support.
pub fn inaccuracy_gos_quadrature(model: &FgmModel, p: &GosParams) -> Result<MeasureResult> {
    inaccuracy_gos_quadrature_with(model, p, Tolerance::default())
}

pub fn inaccuracy_gos_quadrature_with(model: &FgmModel, p: &GosParams, tol: Tolerance) -> Result<MeasureResult> {
    let m = model.marginal_y();
    let (lo, hi) = m.support();
    let q = integrate(
        |y| {
            let g = model.concomitant_pdf(p, y);
            if g == 0.0 {
                0.0
            } else {
                -g * m.ln_pdf(y)
            }
        },
        lo,
        hi,
        tol,
    )?;
    Ok(MeasureResult::from_quadrature(q, Method::Quadrature))
}

/// `H(Y) + 2φ_f`, the rate at which the inaccuracy moves with `αC*`.
pub fn inaccuracy_slope(marginal: &MarginalFamily) -> Result<f64> {
    Ok(marginal.shannon_entropy()? + 2.0 * marginal.phi_f()?)
}

/// Per-family closed form of the concomitant inaccuracy as a function of
/// `coeff = αC*`.
///
/// The logistic family has `H(Y) = 2` and `φ_f = −1`, so its inaccuracy does
/// not depend on `coeff`.
pub fn closed_form_inaccuracy(marginal: &MarginalFamily, coeff: f64) -> Result<f64> {
    use MarginalFamily::*;
    marginal.validate()?;
    if !(coeff.abs() <= 1.0) {
        return Err(Error::domain(format!("coefficient must satisfy |alpha C*| <= 1 (got {coeff})")));
    }
    Ok(match *marginal {
        Exponential { theta } => (1.0 + theta.ln()) - coeff / 2.0,
        Logistic => 2.0,
        Rayleigh { sigma } => {
            coeff * (2f64.sqrt().ln() - 0.5) + 1.0 - 0.5 * digamma(1.0)? + (sigma / 2f64.sqrt()).ln()
        }
        GeneralizedExponential { theta, lambda } => {
            let b = harmonic_b(lambda)?;
            let d = harmonic_b(2.0 * lambda)? - b;
            -(lambda * theta).ln() + b - coeff * d + (lambda - 1.0) / lambda * (1.0 + coeff / 2.0)
        }
        Uniform { theta } => theta.ln(),
        InverseWeibull { theta, beta } => {
            1.0 + EULER_GAMMA * (1.0 + 1.0 / beta) + (theta / beta).ln() + coeff * (0.5 - (1.0 + 1.0 / beta) * LN_2)
        }
    })
}

/// Reversed inaccuracy `I(f_Y, g_[r,n,m,k]) = H(Y) − E ln(1 + αC*(1 − 2U))`,
/// with `U` uniform on (0, 1).
pub fn reversed_inaccuracy(model: &FgmModel, p: &GosParams) -> Result<MeasureResult> {
    let c = model.coefficient(p);
    let h = model.marginal_y().shannon_entropy()?;
    let q = integrate(|u| (c * (1.0 - 2.0 * u)).ln_1p(), 0.0, 1.0, Tolerance::default())?;
    Ok(MeasureResult {
        value: h - q.value,
        method: Method::Quadrature,
        abs_error: q.abs_error,
    })
}

/// Inaccuracy through the quantile density `q(u) = 1/f(Q(u))`:
/// `E ln q(U) + αC* E[(1 − 2U) ln q(U)]`.
pub fn quantile_form_inaccuracy(model: &FgmModel, p: &GosParams) -> Result<MeasureResult> {
    let c = model.coefficient(p);
    let m = model.marginal_y();
    let q = integrate(
        |u| -(1.0 + c * (1.0 - 2.0 * u)) * m.ln_density_quantile(u),
        0.0,
        1.0,
        Tolerance::default(),
    )?;
    Ok(MeasureResult::from_quadrature(q, Method::QuantileForm))
}

/// Inaccuracy of the concomitant of the sample minimum or maximum when
/// each pair carries its own association parameter.
pub fn extremes_inaccuracy(
    marginal_y: &MarginalFamily,
    alphas: &HeterogeneousAlphas,
    which: Extreme,
) -> Result<MeasureResult> {
    compose(marginal_y, which.signed(alphas.kappa()))
}
