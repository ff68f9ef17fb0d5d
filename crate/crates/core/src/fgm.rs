//! The Morgenstern (FGM) bivariate family and concomitants of generalized
//! order statistics.
//!
//! For a Morgenstern pair `(X, Y)` the concomitant of the r-th GOS of the
//! X-sample has density `f_Y(y)[1 + αC*(1 − 2F_Y(y))]` and distribution
//! `F_Y(y)[1 + αC*(1 − F_Y(y))]`, so every concomitant law is fixed by the
//! single number `αC*(r, n, m, k)`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, ParseError, Result};
use crate::marginals::MarginalFamily;
use crate::numerics::RngStream;
use crate::parse::Spec;

/// Below this magnitude the conditional-inversion quadratic is treated as
/// linear.
const LINEAR_BRANCH: f64 = 1e-12;

/// Parameters `(r, n, m, k)` of the r-th generalized order statistic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GosParams {
    r: u32,
    n: u32,
    m: f64,
    k: f64,
}

/// Which classical model a [`GosParams`] reduces to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GosKind {
    /// `m = 0, k = 1`
    OrderStatistic,
    /// `m = −1, k = 1`
    Record,
    General,
}

impl GosParams {
    /// Validates `1 ≤ r ≤ n`, `k > 0` and `γ_j = k + (n − j)(m + 1) > 0` for
    /// every `1 ≤ j ≤ n`.
    pub fn new(r: u32, n: u32, m: f64, k: f64) -> Result<Self> {
        if r < 1 || r > n {
            return Err(Error::domain(format!("GOS index must satisfy 1 <= r <= n (got r={r}, n={n})")));
        }
        if !(k > 0.0 && k.is_finite()) || !m.is_finite() {
            return Err(Error::domain(format!("GOS requires finite m and k > 0 (got m={m}, k={k})")));
        }
        let p = GosParams { r, n, m, k };
        // γ_j is monotone in j, so checking both ends covers all j.
        for j in [1, n] {
            let g = p.gamma_j(j);
            if !(g > 0.0) {
                return Err(Error::domain(format!(
                    "GOS requires gamma_j = k + (n-j)(m+1) > 0; gamma_{j} = {g} for n={n}, m={m}, k={k}"
                )));
            }
        }
        Ok(p)
    }

    /// Ordinary order statistic `X_(r:n)`.
    pub fn order_statistic(r: u32, n: u32) -> Result<Self> {
        GosParams::new(r, n, 0.0, 1.0)
    }

    /// The r-th upper record. `n` does not enter the record model and is set
    /// to `r`.
    pub fn record(r: u32) -> Result<Self> {
        GosParams::new(r, r, -1.0, 1.0)
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn kind(&self) -> GosKind {
        if self.k == 1.0 && self.m == 0.0 {
            GosKind::OrderStatistic
        } else if self.k == 1.0 && self.m == -1.0 {
            GosKind::Record
        } else {
            GosKind::General
        }
    }

    pub fn gamma_j(&self, j: u32) -> f64 {
        self.k + (self.n as f64 - j as f64) * (self.m + 1.0)
    }

    /// `C*(r,n,m,k) = 2 ∏_{j=1}^r γ_j / (γ_j + 1) − 1`.
    pub fn c_star(&self) -> f64 {
        let prod: f64 = (1..=self.r)
            .map(|j| {
                let g = self.gamma_j(j);
                g / (g + 1.0)
            })
            .product();
        2.0 * prod - 1.0
    }
}

/// `C*` for the given parameters; see [`GosParams::c_star`].
pub fn c_star(p: &GosParams) -> f64 {
    p.c_star()
}

impl fmt::Display for GosParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            GosKind::OrderStatistic => write!(f, "os:r={},n={}", self.r, self.n),
            GosKind::Record if self.n == self.r => write!(f, "record:r={}", self.r),
            _ => write!(f, "r={},n={},m={},k={}", self.r, self.n, self.m, self.k),
        }
    }
}

impl FromStr for GosParams {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        let spec = Spec::parse(s)?;
        let built = match spec.head.as_ref().map(|h| h.text.to_ascii_lowercase()) {
            Some(h) if h == "os" => {
                spec.reject_unknown(&["r", "n"])?;
                GosParams::order_statistic(spec.integer("r")?, spec.integer("n")?)
            }
            Some(h) if h == "record" => {
                spec.reject_unknown(&["r"])?;
                GosParams::record(spec.integer("r")?)
            }
            Some(_) => {
                let head = spec.head.as_ref().expect("checked");
                return Err(spec.error("gos kind", head, "expected `os`, `record`, or no prefix"));
            }
            None => {
                spec.reject_unknown(&["r", "n", "m", "k"])?;
                GosParams::new(spec.integer("r")?, spec.integer("n")?, spec.real("m")?, spec.real("k")?)
            }
        };
        built.map_err(|e| {
            let tok = spec.get("r").cloned().unwrap_or(crate::parse::Token { text: s, column: 1 });
            spec.error("gos parameters", &tok, e.to_string())
        })
    }
}

/// Morgenstern bivariate law with marginals `F_X`, `F_Y` and association
/// `α ∈ [−1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FgmModel {
    marginal_x: MarginalFamily,
    marginal_y: MarginalFamily,
    alpha: f64,
}

impl FgmModel {
    pub fn new(marginal_x: MarginalFamily, marginal_y: MarginalFamily, alpha: f64) -> Result<Self> {
        marginal_x.validate()?;
        marginal_y.validate()?;
        if !(alpha.abs() <= 1.0) {
            return Err(Error::domain(format!("association parameter must satisfy |alpha| <= 1 (got {alpha})")));
        }
        Ok(FgmModel {
            marginal_x,
            marginal_y,
            alpha,
        })
    }

    /// Both marginals from the same family.
    pub fn symmetric(marginal: MarginalFamily, alpha: f64) -> Result<Self> {
        FgmModel::new(marginal, marginal, alpha)
    }

    pub fn marginal_x(&self) -> &MarginalFamily {
        &self.marginal_x
    }

    pub fn marginal_y(&self) -> &MarginalFamily {
        &self.marginal_y
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn joint_pdf(&self, x: f64, y: f64) -> f64 {
        let (fx, fy) = (self.marginal_x.pdf(x), self.marginal_y.pdf(y));
        let (cx, cy) = (self.marginal_x.cdf(x), self.marginal_y.cdf(y));
        fx * fy * (1.0 + self.alpha * (2.0 * cx - 1.0) * (2.0 * cy - 1.0))
    }

    pub fn joint_cdf(&self, x: f64, y: f64) -> f64 {
        let (cx, cy) = (self.marginal_x.cdf(x), self.marginal_y.cdf(y));
        cx * cy * (1.0 + self.alpha * (1.0 - cx) * (1.0 - cy))
    }

    /// `α · C*(r,n,m,k)`, the coefficient that fixes the concomitant law.
    pub fn coefficient(&self, p: &GosParams) -> f64 {
        self.alpha * p.c_star()
    }

    pub fn concomitant_pdf(&self, p: &GosParams, y: f64) -> f64 {
        let c = self.coefficient(p);
        let f = self.marginal_y.pdf(y);
        if f == 0.0 {
            return 0.0;
        }
        f * (1.0 + c * (1.0 - 2.0 * self.marginal_y.cdf(y)))
    }

    pub fn concomitant_cdf(&self, p: &GosParams, y: f64) -> f64 {
        let c = self.coefficient(p);
        let v = self.marginal_y.cdf(y);
        v * (1.0 + c * (1.0 - v))
    }

    /// One `(x, y)` pair by conditional inversion: `X = Q_X(u₁)`, then
    /// `Y | X` has `F_Y`-scale cdf `v[1 + a(1 − v)]` with `a = α(1 − 2u₁)`.
    pub fn sample_joint(&self, stream: &mut RngStream) -> (f64, f64) {
        let u1 = stream.uniform01();
        let u2 = stream.uniform01();
        let x = quantile_open(&self.marginal_x, u1);
        let v = invert_tilted(self.alpha * (1.0 - 2.0 * u1), u2);
        (x, quantile_open(&self.marginal_y, v))
    }

    /// One draw of the concomitant `Y_[r,n,m,k]` by direct inversion of its
    /// cdf. Only order statistics and records are supported.
    pub fn sample_concomitant(&self, p: &GosParams, stream: &mut RngStream) -> Result<f64> {
        if p.kind() == GosKind::General {
            return Err(Error::Unsupported(format!(
                "concomitant sampling is available for order statistics (m=0,k=1) and records (m=-1,k=1), not {p}"
            )));
        }
        let v = invert_tilted(self.coefficient(p), stream.uniform01());
        Ok(quantile_open(&self.marginal_y, v))
    }
}

/// Solves `v[1 + a(1 − v)] = w` for the root in `[0, 1]`.
///
/// Uses the rationalised form of `[(1+a) − √((1+a)² − 4aw)] / (2a)`, which is
/// the same root without cancellation for small `a`.
pub fn invert_tilted(a: f64, w: f64) -> f64 {
    if a.abs() < LINEAR_BRANCH {
        return w;
    }
    let b = 1.0 + a;
    let disc = (b * b - 4.0 * a * w).max(0.0);
    2.0 * w / (b + disc.sqrt())
}

fn quantile_open(m: &MarginalFamily, v: f64) -> f64 {
    let v = v.clamp(f64::MIN_POSITIVE, 1.0 - f64::EPSILON / 2.0);
    m.quantile(v).expect("clamped into the open unit interval")
}

/// Association parameters `α_1..α_n` of independent, non-identically
/// associated Morgenstern pairs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HeterogeneousAlphas(Vec<f64>);

impl HeterogeneousAlphas {
    pub fn new(alphas: Vec<f64>) -> Result<Self> {
        if alphas.is_empty() {
            return Err(Error::domain("heterogeneous alphas must be non-empty"));
        }
        if let Some(a) = alphas.iter().find(|a| !(a.abs() <= 1.0)) {
            return Err(Error::domain(format!("every alpha must satisfy |alpha| <= 1 (got {a})")));
        }
        Ok(HeterogeneousAlphas(alphas))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// `(n − 1) / ((n + 1) n) · Σ α_j`
    pub fn kappa(&self) -> f64 {
        let n = self.0.len() as f64;
        (n - 1.0) / ((n + 1.0) * n) * self.0.iter().sum::<f64>()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Extreme {
    Min,
    Max,
}

impl Extreme {
    pub(crate) fn signed(self, kappa: f64) -> f64 {
        match self {
            Extreme::Min => kappa,
            Extreme::Max => -kappa,
        }
    }
}

/// Density of the concomitant of the sample minimum (or maximum) of X when
/// each pair has its own association parameter.
pub fn extremes_pdf(marginal_y: &MarginalFamily, alphas: &HeterogeneousAlphas, which: Extreme, y: f64) -> f64 {
    let f = marginal_y.pdf(y);
    if f == 0.0 {
        return 0.0;
    }
    f * (1.0 + which.signed(alphas.kappa()) * (1.0 - 2.0 * marginal_y.cdf(y)))
}
