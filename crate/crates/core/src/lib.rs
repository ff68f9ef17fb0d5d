//! Inaccuracy and cumulative past inaccuracy measures for concomitants of
//! generalized order statistics in the Morgenstern (FGM) family.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` also rejects NaN

pub mod cli;
pub mod cpi;
pub mod empirical;
pub mod error;
pub mod fgm;
pub mod inaccuracy;
pub mod marginals;
pub mod measure;
pub mod numerics;
mod parse;
pub mod tables;

pub use cpi::{check_cpi_bounds, closed_form_cpi, cpi_gos, reversed_cpi, CpiBound};
pub use empirical::{empirical_cpi, empirical_cpi_record, mc_validate, McReport, Moments, Sample};
pub use error::{Error, ParseError, Result};
pub use fgm::{c_star, Extreme, FgmModel, GosKind, GosParams, HeterogeneousAlphas};
pub use inaccuracy::{
    closed_form_inaccuracy, extremes_inaccuracy, inaccuracy_gos, quantile_form_inaccuracy, reversed_inaccuracy,
};
pub use marginals::MarginalFamily;
pub use measure::{MeasureResult, Method};
