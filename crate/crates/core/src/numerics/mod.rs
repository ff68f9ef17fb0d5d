//! Shared numerical kernel: quadrature, special functions, seeded RNG and
//! sample statistics.

mod quadrature;
mod rng;
mod special;
pub mod stats;

pub use quadrature::{integrate, integrate_default, QuadratureResult, Tolerance};
pub use rng::RngStream;
pub use special::{digamma, gamma, trigamma, EULER_GAMMA};

/// `x * ln(y)` with the convention that the product is 0 when `x == 0`.
#[inline]
pub fn mul_ln(x: f64, y: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * y.ln()
    }
}
