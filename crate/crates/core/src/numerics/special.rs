//! Digamma and trigamma via upward recurrence plus asymptotic expansion.

use crate::error::{Error, Result};

/// Euler–Mascheroni constant γ = −ψ(1).
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const SHIFT: f64 = 10.0;

/// B_{2k} / (2k) for k = 1..7.
const DIGAMMA_ASYMP: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
];

/// B_{2k} for k = 1..7.
const BERNOULLI: [f64; 7] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
];

fn check_positive(x: f64, name: &str) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} requires a finite x > 0 (got {x})")))
    }
}

/// ψ(x) = d/dx ln Γ(x) for x > 0.
pub fn digamma(x: f64) -> Result<f64> {
    check_positive(x, "digamma")?;
    let mut acc = 0.0;
    let mut z = x;
    while z < SHIFT {
        acc -= 1.0 / z;
        z += 1.0;
    }
    let inv2 = 1.0 / (z * z);
    let mut term = inv2;
    let mut series = 0.0;
    for c in DIGAMMA_ASYMP {
        series += c * term;
        term *= inv2;
    }
    Ok(acc + z.ln() - 0.5 / z - series)
}

/// ψ'(x) for x > 0.
pub fn trigamma(x: f64) -> Result<f64> {
    check_positive(x, "trigamma")?;
    let mut acc = 0.0;
    let mut z = x;
    while z < SHIFT {
        acc += 1.0 / (z * z);
        z += 1.0;
    }
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut term = inv2 * inv;
    let mut series = inv + 0.5 * inv2;
    for b in BERNOULLI {
        series += b * term;
        term *= inv2;
    }
    Ok(acc + series)
}

/// Γ(x) for x > 0.
pub fn gamma(x: f64) -> Result<f64> {
    check_positive(x, "gamma")?;
    Ok(statrs::function::gamma::gamma(x))
}
