//! Univariate marginal families with the entropy functionals needed by the
//! inaccuracy and cumulative-inaccuracy measures.
//!
//! Every family is supported on `[0, ∞)` or a subset of it except the
//! standard logistic, which lives on the whole line. All logarithms are
//! natural.

use std::f64::consts::{LN_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, ParseError, Result};
use crate::measure::{MeasureResult, Method};
use crate::numerics::{self, digamma, gamma, integrate, trigamma, Tolerance, EULER_GAMMA};
use crate::parse::Spec;

const PI2_6: f64 = PI * PI / 6.0;

/// A univariate marginal law.
///
/// Scale parameters follow the conventions of the named bivariate models:
/// `Exponential { theta }` has mean `theta` (`F = 1 − e^{−y/θ}`), while
/// `GeneralizedExponential { theta, lambda }` uses `theta` as a rate
/// (`F = (1 − e^{−θy})^λ`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum MarginalFamily {
    Exponential { theta: f64 },
    /// Standard logistic, `F = 1 / (1 + e^{−y})`.
    Logistic,
    Rayleigh { sigma: f64 },
    GeneralizedExponential { theta: f64, lambda: f64 },
    /// Uniform on `(0, theta)`.
    Uniform { theta: f64 },
    /// `F = exp(−(θ/y)^β)`.
    InverseWeibull { theta: f64, beta: f64 },
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must be a finite positive number (got {v})")))
    }
}

/// `ln(1 − e^{−z})` for `z > 0`, accurate at both ends.
fn ln1m_exp(z: f64) -> f64 {
    if z > LN_2 {
        (-(-z).exp()).ln_1p()
    } else {
        (-(-z).exp_m1()).ln()
    }
}

impl MarginalFamily {
    pub fn exponential(theta: f64) -> Result<Self> {
        positive("theta", theta)?;
        Ok(MarginalFamily::Exponential { theta })
    }

    pub fn logistic() -> Self {
        MarginalFamily::Logistic
    }

    pub fn rayleigh(sigma: f64) -> Result<Self> {
        positive("sigma", sigma)?;
        Ok(MarginalFamily::Rayleigh { sigma })
    }

    pub fn generalized_exponential(theta: f64, lambda: f64) -> Result<Self> {
        positive("theta", theta)?;
        positive("lambda", lambda)?;
        Ok(MarginalFamily::GeneralizedExponential { theta, lambda })
    }

    pub fn uniform(theta: f64) -> Result<Self> {
        positive("theta", theta)?;
        Ok(MarginalFamily::Uniform { theta })
    }

    pub fn inverse_weibull(theta: f64, beta: f64) -> Result<Self> {
        positive("theta", theta)?;
        positive("beta", beta)?;
        Ok(MarginalFamily::InverseWeibull { theta, beta })
    }

    /// Re-checks parameter constraints; useful for values built directly
    /// from the enum variants.
    pub fn validate(&self) -> Result<()> {
        use MarginalFamily::*;
        match *self {
            Exponential { theta } | Uniform { theta } => positive("theta", theta),
            Logistic => Ok(()),
            Rayleigh { sigma } => positive("sigma", sigma),
            GeneralizedExponential { theta, lambda } => {
                positive("theta", theta)?;
                positive("lambda", lambda)
            }
            InverseWeibull { theta, beta } => {
                positive("theta", theta)?;
                positive("beta", beta)
            }
        }
    }

    pub fn name(&self) -> &'static str {
        use MarginalFamily::*;
        match self {
            Exponential { .. } => "exponential",
            Logistic => "logistic",
            Rayleigh { .. } => "rayleigh",
            GeneralizedExponential { .. } => "genexp",
            Uniform { .. } => "uniform",
            InverseWeibull { .. } => "invweibull",
        }
    }

    /// Closure of the support as `(lo, hi)`; limits may be infinite.
    pub fn support(&self) -> (f64, f64) {
        match *self {
            MarginalFamily::Logistic => (f64::NEG_INFINITY, f64::INFINITY),
            MarginalFamily::Uniform { theta } => (0.0, theta),
            _ => (0.0, f64::INFINITY),
        }
    }

    pub fn pdf(&self, y: f64) -> f64 {
        use MarginalFamily::*;
        let (lo, hi) = self.support();
        if y.is_nan() || y < lo || y > hi {
            return 0.0;
        }
        match *self {
            Exponential { theta } => (-y / theta).exp() / theta,
            Logistic => {
                let e = (-y.abs()).exp();
                e / ((1.0 + e) * (1.0 + e))
            }
            Rayleigh { sigma } => y / (sigma * sigma) * (-y * y / (2.0 * sigma * sigma)).exp(),
            GeneralizedExponential { theta, lambda } => {
                if y == 0.0 {
                    return if lambda == 1.0 {
                        theta
                    } else if lambda < 1.0 {
                        f64::INFINITY
                    } else {
                        0.0
                    };
                }
                let e = (-theta * y).exp();
                lambda * theta * e * (-(-theta * y).exp_m1()).powf(lambda - 1.0)
            }
            Uniform { theta } => 1.0 / theta,
            InverseWeibull { theta, beta } => {
                if y == 0.0 {
                    return 0.0;
                }
                let z = (theta / y).powf(beta);
                beta / theta * (theta / y).powf(beta + 1.0) * (-z).exp()
            }
        }
    }

    /// `ln f(y)` computed without forming `f` where that would underflow.
    pub fn ln_pdf(&self, y: f64) -> f64 {
        use MarginalFamily::*;
        let (lo, hi) = self.support();
        if y.is_nan() || y < lo || y > hi {
            return f64::NEG_INFINITY;
        }
        match *self {
            Exponential { theta } => -y / theta - theta.ln(),
            Logistic => -y.abs() - 2.0 * (-y.abs()).exp().ln_1p(),
            Rayleigh { sigma } => y.ln() - 2.0 * sigma.ln() - y * y / (2.0 * sigma * sigma),
            GeneralizedExponential { theta, lambda } => {
                if y == 0.0 {
                    return self.pdf(0.0).ln();
                }
                (lambda * theta).ln() - theta * y + (lambda - 1.0) * ln1m_exp(theta * y)
            }
            Uniform { theta } => -theta.ln(),
            InverseWeibull { theta, beta } => {
                if y == 0.0 {
                    return f64::NEG_INFINITY;
                }
                (beta / theta).ln() + (beta + 1.0) * (theta / y).ln() - (theta / y).powf(beta)
            }
        }
    }

    pub fn cdf(&self, y: f64) -> f64 {
        use MarginalFamily::*;
        if y.is_nan() {
            return f64::NAN;
        }
        match *self {
            Logistic => {
                if y >= 0.0 {
                    1.0 / (1.0 + (-y).exp())
                } else {
                    let e = y.exp();
                    e / (1.0 + e)
                }
            }
            _ if y <= 0.0 => 0.0,
            Exponential { theta } => -(-y / theta).exp_m1(),
            Rayleigh { sigma } => -(-y * y / (2.0 * sigma * sigma)).exp_m1(),
            GeneralizedExponential { theta, lambda } => (-(-theta * y).exp_m1()).powf(lambda),
            Uniform { theta } => (y / theta).min(1.0),
            InverseWeibull { theta, beta } => (-(theta / y).powf(beta)).exp(),
        }
    }

    /// `ln F(y)`, accurate where `F` is close to 1.
    pub fn ln_cdf(&self, y: f64) -> f64 {
        use MarginalFamily::*;
        match *self {
            Logistic => {
                if y >= 0.0 {
                    -(-y).exp().ln_1p()
                } else {
                    y - y.exp().ln_1p()
                }
            }
            _ if y <= 0.0 => f64::NEG_INFINITY,
            Exponential { theta } => ln1m_exp(y / theta),
            Rayleigh { sigma } => ln1m_exp(y * y / (2.0 * sigma * sigma)),
            GeneralizedExponential { theta, lambda } => lambda * ln1m_exp(theta * y),
            Uniform { theta } => (y / theta).min(1.0).ln(),
            InverseWeibull { theta, beta } => -(theta / y).powf(beta),
        }
    }

    /// `Q(u) = F^{-1}(u)` for `u` in the open unit interval.
    pub fn quantile(&self, u: f64) -> Result<f64> {
        use MarginalFamily::*;
        if !(u > 0.0 && u < 1.0) {
            return Err(Error::domain(format!("quantile requires 0 < u < 1 (got {u})")));
        }
        Ok(match *self {
            Exponential { theta } => -theta * (-u).ln_1p(),
            Logistic => (u / (1.0 - u)).ln(),
            Rayleigh { sigma } => sigma * (-2.0 * (-u).ln_1p()).sqrt(),
            GeneralizedExponential { theta, lambda } => -(-(u.powf(1.0 / lambda))).ln_1p() / theta,
            Uniform { theta } => theta * u,
            InverseWeibull { theta, beta } => theta * (-u.ln()).powf(-1.0 / beta),
        })
    }

    /// `ln f(Q(u))`, the log density-quantile function, evaluated in closed
    /// form so it stays accurate as `u → 0` or `u → 1`.
    pub fn ln_density_quantile(&self, u: f64) -> f64 {
        use MarginalFamily::*;
        match *self {
            Exponential { theta } => (-u).ln_1p() - theta.ln(),
            Logistic => u.ln() + (-u).ln_1p(),
            Rayleigh { sigma } => {
                let l = (-u).ln_1p();
                l + 0.5 * (-2.0 * l).ln() - sigma.ln()
            }
            GeneralizedExponential { theta, lambda } => {
                let lu = u.ln();
                let w = -(lu / lambda).exp_m1();
                (lambda * theta).ln() + w.ln() + (lambda - 1.0) / lambda * lu
            }
            Uniform { theta } => -theta.ln(),
            InverseWeibull { theta, beta } => {
                let lu = u.ln();
                (beta / theta).ln() + (beta + 1.0) / beta * (-lu).ln() + lu
            }
        }
    }

    /// Shannon entropy `H(Y) = −∫ f ln f`.
    pub fn shannon_entropy(&self) -> Result<f64> {
        use MarginalFamily::*;
        self.validate()?;
        Ok(match *self {
            Exponential { theta } => 1.0 + theta.ln(),
            Logistic => 2.0,
            Rayleigh { sigma } => 1.0 + 0.5 * EULER_GAMMA + (sigma / 2f64.sqrt()).ln(),
            GeneralizedExponential { theta, lambda } => {
                -(lambda * theta).ln() + harmonic_b(lambda)? + (lambda - 1.0) / lambda
            }
            Uniform { theta } => theta.ln(),
            InverseWeibull { theta, beta } => 1.0 + EULER_GAMMA * (1.0 + 1.0 / beta) + (theta / beta).ln(),
        })
    }

    /// `φ_f = ∫_0^1 u ln f(Q(u)) du`.
    pub fn phi_f(&self) -> Result<f64> {
        use MarginalFamily::*;
        self.validate()?;
        Ok(match *self {
            Exponential { theta } => -0.75 - 0.5 * theta.ln(),
            Logistic => -1.0,
            Rayleigh { sigma } => -0.75 + 0.5 * LN_2 - 0.25 * EULER_GAMMA - 0.5 * sigma.ln(),
            GeneralizedExponential { theta, lambda } => {
                0.5 * (lambda * theta).ln() - 0.5 * harmonic_b(2.0 * lambda)? - (lambda - 1.0) / (4.0 * lambda)
            }
            Uniform { theta } => -0.5 * theta.ln(),
            InverseWeibull { theta, beta } => {
                0.5 * (beta / theta).ln() - (beta + 1.0) / (2.0 * beta) * (EULER_GAMMA + LN_2) - 0.25
            }
        })
    }

    /// Cumulative entropy `CE(Y) = −∫ F ln F`.
    pub fn cumulative_entropy(&self) -> Result<f64> {
        self.cumulative_entropy_result().map(|m| m.value)
    }

    /// Cumulative entropy with provenance. Families without a closed form
    /// (Rayleigh) fall back to quadrature.
    pub fn cumulative_entropy_result(&self) -> Result<MeasureResult> {
        use MarginalFamily::*;
        self.validate()?;
        let v = match *self {
            Exponential { theta } => (PI2_6 - 1.0) * theta,
            Logistic => PI2_6,
            Rayleigh { .. } => return self.cumulative_entropy_by_quadrature(),
            GeneralizedExponential { theta, lambda } => lambda / theta * trigamma(lambda + 1.0)?,
            Uniform { theta } => theta / 4.0,
            InverseWeibull { theta, beta } => {
                require_finite_ce(beta)?;
                theta / beta * gamma(1.0 - 1.0 / beta)?
            }
        };
        Ok(MeasureResult::closed_form(v))
    }

    /// Cumulative entropy of the maximum of two independent copies,
    /// `CE(Y_(2:2)) = −∫ F² ln F² = −2∫ F² ln F`.
    pub fn cumulative_entropy_max2(&self) -> Result<f64> {
        self.cumulative_entropy_max2_result().map(|m| m.value)
    }

    pub fn cumulative_entropy_max2_result(&self) -> Result<MeasureResult> {
        use MarginalFamily::*;
        self.validate()?;
        let v = match *self {
            Exponential { theta } => 2.0 * (PI2_6 - 1.25) * theta,
            Logistic => 2.0 * (PI2_6 - 1.0),
            Rayleigh { .. } => return self.cumulative_entropy_max2_by_quadrature(),
            GeneralizedExponential { theta, lambda } => 2.0 * lambda / theta * trigamma(2.0 * lambda + 1.0)?,
            Uniform { theta } => 2.0 * theta / 9.0,
            InverseWeibull { theta, beta } => {
                require_finite_ce(beta)?;
                2f64.powf(1.0 / beta) * theta / beta * gamma(1.0 - 1.0 / beta)?
            }
        };
        Ok(MeasureResult::closed_form(v))
    }

    /// `−∫ f ln f dy` by quadrature over the support.
    pub fn entropy_by_quadrature(&self) -> Result<MeasureResult> {
        self.validate()?;
        let (lo, hi) = self.support();
        let q = integrate(|y| -mul_ln_pdf(self, y), lo, hi, Tolerance::default())?;
        Ok(MeasureResult::from_quadrature(q, Method::Quadrature))
    }

    /// `∫_0^1 u ln f(Q(u)) du` by quadrature.
    pub fn phi_f_by_quadrature(&self) -> Result<MeasureResult> {
        self.validate()?;
        let q = integrate(|u| u * self.ln_density_quantile(u), 0.0, 1.0, Tolerance::default())?;
        Ok(MeasureResult::from_quadrature(q, Method::Quadrature))
    }

    /// `−∫ F ln F dy` by quadrature, reporting divergence when the estimate
    /// keeps growing with the evaluation budget.
    pub fn cumulative_entropy_by_quadrature(&self) -> Result<MeasureResult> {
        self.validate()?;
        let (lo, hi) = self.support();
        cumulative_quadrature(|y| -mul_ln_cdf_pow(self, y, 1), lo, hi)
    }

    /// `−2∫ F² ln F dy` by quadrature.
    pub fn cumulative_entropy_max2_by_quadrature(&self) -> Result<MeasureResult> {
        self.validate()?;
        let (lo, hi) = self.support();
        cumulative_quadrature(|y| -2.0 * mul_ln_cdf_pow(self, y, 2), lo, hi)
    }
}

/// `B(λ) = ψ(λ+1) − ψ(1)`.
pub(crate) fn harmonic_b(lambda: f64) -> Result<f64> {
    Ok(digamma(lambda + 1.0)? + EULER_GAMMA)
}

fn require_finite_ce(beta: f64) -> Result<()> {
    if beta > 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "inverse Weibull cumulative entropy is infinite for beta <= 1 (got beta={beta})"
        )))
    }
}

/// `f(y) ln f(y)` with `0 ln 0 = 0`.
pub(crate) fn mul_ln_pdf(m: &MarginalFamily, y: f64) -> f64 {
    let f = m.pdf(y);
    if f == 0.0 {
        0.0
    } else {
        f * m.ln_pdf(y)
    }
}

/// `F(y)^k ln F(y)` with `0 ln 0 = 0`.
pub(crate) fn mul_ln_cdf_pow(m: &MarginalFamily, y: f64, k: i32) -> f64 {
    let f = m.cdf(y);
    if f == 0.0 {
        0.0
    } else {
        f.powi(k) * m.ln_cdf(y)
    }
}

fn cumulative_quadrature<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> Result<MeasureResult> {
    match integrate(&f, lo, hi, Tolerance::default()) {
        Ok(q) => Ok(MeasureResult::from_quadrature(q, Method::Quadrature)),
        Err(Error::NotConverged { best }) => {
            // Probe with two small budgets: a divergent tail keeps adding mass
            // as the mapped endpoint is refined.
            let probe = |budget| match integrate(&f, lo, hi, Tolerance::default().with_budget(budget)) {
                Ok(q) => Ok(q.value),
                Err(Error::NotConverged { best }) => Ok(best.value),
                Err(e) => Err(e),
            };
            let coarse = probe(100)?;
            let fine = probe(200)?;
            if !fine.is_finite() || fine.abs() > 1.1 * coarse.abs() {
                Err(Error::Divergent { last: fine })
            } else {
                Err(Error::NotConverged { best })
            }
        }
        Err(e) => Err(e),
    }
}

impl fmt::Display for MarginalFamily {
    /// Canonical `family:param=value` form accepted by [`FromStr`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use MarginalFamily::*;
        match *self {
            Exponential { theta } => write!(f, "exponential:theta={theta}"),
            Logistic => write!(f, "logistic"),
            Rayleigh { sigma } => write!(f, "rayleigh:sigma={sigma}"),
            GeneralizedExponential { theta, lambda } => write!(f, "genexp:theta={theta},lambda={lambda}"),
            Uniform { theta } => write!(f, "uniform:theta={theta}"),
            InverseWeibull { theta, beta } => write!(f, "invweibull:theta={theta},beta={beta}"),
        }
    }
}

impl FromStr for MarginalFamily {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        let spec = Spec::parse(s)?;
        let head = match (&spec.head, spec.pairs.is_empty()) {
            (Some(h), _) => h.clone(),
            (None, true) => crate::parse::Token { text: s.trim(), column: 1 },
            (None, false) => return Err(spec.error_at_end("family", "missing `family:` prefix")),
        };
        // positive finite parameter, reported against its own token
        let pos = |key: &str| -> std::result::Result<f64, ParseError> {
            let v = spec.real(key)?;
            positive(key, v).map_err(|e| spec.error(key, spec.get(key).expect("present"), e.to_string()))?;
            Ok(v)
        };
        let family = match head.text.to_ascii_lowercase().as_str() {
            "exponential" | "exp" => {
                spec.reject_unknown(&["theta"])?;
                MarginalFamily::Exponential { theta: pos("theta")? }
            }
            "logistic" => {
                spec.reject_unknown(&[])?;
                MarginalFamily::Logistic
            }
            "rayleigh" => {
                spec.reject_unknown(&["sigma"])?;
                MarginalFamily::Rayleigh { sigma: pos("sigma")? }
            }
            "genexp" | "generalized-exponential" => {
                spec.reject_unknown(&["theta", "lambda"])?;
                MarginalFamily::GeneralizedExponential {
                    theta: pos("theta")?,
                    lambda: pos("lambda")?,
                }
            }
            "uniform" => {
                spec.reject_unknown(&["theta"])?;
                MarginalFamily::Uniform { theta: pos("theta")? }
            }
            "invweibull" | "inverse-weibull" => {
                spec.reject_unknown(&["theta", "beta"])?;
                MarginalFamily::InverseWeibull {
                    theta: pos("theta")?,
                    beta: pos("beta")?,
                }
            }
            _ => {
                return Err(spec.error(
                    "family",
                    &head,
                    "unknown family (expected exponential, logistic, rayleigh, genexp, uniform or invweibull)",
                ))
            }
        };
        Ok(family)
    }
}

/// Draws `n` values from `m` by inversion.
pub fn sample(m: &MarginalFamily, n: usize, stream: &mut numerics::RngStream) -> Vec<f64> {
    (0..n)
        .map(|_| m.quantile(stream.uniform01()).expect("uniform01 is in (0,1)"))
        .collect()
}
