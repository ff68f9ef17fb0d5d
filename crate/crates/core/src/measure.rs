use std::fmt;

use serde::Serialize;

use crate::numerics::QuadratureResult;

/// How a [`MeasureResult`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Quadrature,
    QuantileForm,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ClosedForm => "closed_form",
            Method::Quadrature => "quadrature",
            Method::QuantileForm => "quantile_form",
        })
    }
}

/// A computed measure with its provenance and an absolute error estimate
/// (zero for closed forms).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasureResult {
    pub value: f64,
    pub method: Method,
    pub abs_error: f64,
}

impl MeasureResult {
    pub fn closed_form(value: f64) -> Self {
        MeasureResult {
            value,
            method: Method::ClosedForm,
            abs_error: 0.0,
        }
    }

    pub fn from_quadrature(q: QuadratureResult, method: Method) -> Self {
        MeasureResult {
            value: q.value,
            method,
            abs_error: q.abs_error,
        }
    }

    /// `a·self + b·other`, downgrading the method tag if either input was
    /// computed numerically.
    pub(crate) fn combine(self, a: f64, other: MeasureResult, b: f64) -> Self {
        let method = match (self.method, other.method) {
            (Method::ClosedForm, Method::ClosedForm) => Method::ClosedForm,
            (Method::QuantileForm, _) | (_, Method::QuantileForm) => Method::QuantileForm,
            _ => Method::Quadrature,
        };
        MeasureResult {
            value: a * self.value + b * other.value,
            method,
            abs_error: a.abs() * self.abs_error + b.abs() * other.abs_error,
        }
    }
}
