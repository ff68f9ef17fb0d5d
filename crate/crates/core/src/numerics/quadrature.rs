//! Adaptive Gauss–Kronrod quadrature on finite and (semi-)infinite intervals.
//!
//! Each subinterval is evaluated with the 7-point Gauss / 15-point Kronrod
//! embedded pair; the subinterval with the largest error estimate is bisected
//! until the global estimate meets `max(abs, rel * |value|)`. Nodes are strictly
//! interior, so integrands with integrable logarithmic (or mild algebraic)
//! endpoint singularities are never evaluated at the singular point.
//!
//! An infinite upper limit is mapped through `y = lo + t / (1 - t)`. The
//! integration variable actually carried is `s = 1 - t`, i.e.
//! `y = lo + (1 - s) / s`, `dy = ds / s^2`, so that points arbitrarily close to
//! `t = 1` remain representable.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureResult {
    pub value: f64,
    /// Estimated absolute error, always `>= 0`.
    pub abs_error: f64,
    /// Number of integrand evaluations, always `>= 1`.
    pub evaluations: usize,
}

/// Convergence targets and evaluation budget for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
    /// Maximum number of subintervals held at once.
    pub max_subintervals: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rel: 1e-10,
            abs: 1e-12,
            max_subintervals: 4000,
        }
    }
}

impl Tolerance {
    pub fn new(rel: f64, abs: f64) -> Self {
        Tolerance {
            rel,
            abs,
            ..Default::default()
        }
    }

    pub fn with_budget(self, max_subintervals: usize) -> Self {
        Tolerance {
            max_subintervals,
            ..self
        }
    }

    fn target(&self, value: f64) -> f64 {
        self.abs.max(self.rel * value.abs())
    }
}

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// QUADPACK-style rescaling of the raw Gauss/Kronrod difference.
fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

/// One 15-point Kronrod evaluation of `g` on `[a, b]`.
///
/// `origin` maps a node of the integration variable back to the caller's
/// abscissa so NaN reports point at the user's coordinate.
#[allow(clippy::needless_range_loop)]
fn gk15<G, M>(g: &mut G, origin: &M, a: f64, b: f64) -> Result<Segment>
where
    G: FnMut(f64) -> f64,
    M: Fn(f64) -> f64,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut eval = |x: f64| -> Result<f64> {
        let v = g(x);
        if v.is_nan() {
            Err(Error::NanIntegrand {
                abscissa: origin(x),
            })
        } else {
            Ok(v)
        }
    };

    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    let f_center = eval(center)?;
    let mut res_gauss = f_center * WG[3];
    let mut res_kronrod = f_center * WGK[7];
    let mut res_abs = res_kronrod.abs();

    for j in 0..3 {
        let jtw = 2 * j + 1;
        let dx = half * XGK[jtw];
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        fv1[jtw] = f1;
        fv2[jtw] = f2;
        res_gauss += WG[j] * (f1 + f2);
        res_kronrod += WGK[jtw] * (f1 + f2);
        res_abs += WGK[jtw] * (f1.abs() + f2.abs());
    }
    for j in 0..4 {
        let jtwm1 = 2 * j;
        let dx = half * XGK[jtwm1];
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        fv1[jtwm1] = f1;
        fv2[jtwm1] = f2;
        res_kronrod += WGK[jtwm1] * (f1 + f2);
        res_abs += WGK[jtwm1] * (f1.abs() + f2.abs());
    }

    let mean = 0.5 * res_kronrod;
    let mut res_asc = WGK[7] * (f_center - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let err = (res_kronrod - res_gauss) * half;
    let abs_half = half.abs();
    Ok(Segment {
        lo: a,
        hi: b,
        value: res_kronrod * half,
        error: rescale_error(err, res_abs * abs_half, res_asc * abs_half),
    })
}

fn splittable(seg: &Segment) -> bool {
    let mid = 0.5 * (seg.lo + seg.hi);
    mid > seg.lo && mid < seg.hi && (seg.hi - seg.lo) > 4.0 * f64::EPSILON * seg.lo.abs().max(seg.hi.abs())
}

fn adaptive<G, M>(mut g: G, origin: M, a: f64, b: f64, tol: &Tolerance) -> Result<QuadratureResult>
where
    G: FnMut(f64) -> f64,
    M: Fn(f64) -> f64,
{
    let mut evaluations = 15;
    let mut heap = BinaryHeap::new();
    let mut frozen: Vec<Segment> = Vec::new();
    heap.push(gk15(&mut g, &origin, a, b)?);

    let summarize = |heap: &BinaryHeap<Segment>, frozen: &[Segment]| {
        let mut value = 0.0;
        let mut error = 0.0;
        for s in heap.iter().chain(frozen.iter()) {
            value += s.value;
            error += s.error;
        }
        (value, error)
    };

    loop {
        let (value, error) = summarize(&heap, &frozen);
        let result = QuadratureResult {
            value,
            abs_error: error,
            evaluations,
        };
        if error <= tol.target(value) {
            return Ok(result);
        }
        if heap.len() + frozen.len() >= tol.max_subintervals {
            return Err(Error::NotConverged { best: result });
        }
        let Some(worst) = heap.pop() else {
            return Err(Error::NotConverged { best: result });
        };
        if !splittable(&worst) {
            frozen.push(worst);
            continue;
        }
        let mid = 0.5 * (worst.lo + worst.hi);
        heap.push(gk15(&mut g, &origin, worst.lo, mid)?);
        heap.push(gk15(&mut g, &origin, mid, worst.hi)?);
        evaluations += 30;
    }
}

/// Integrate `f` over `[lo, hi]`. Either limit may be infinite.
///
/// A half-line is mapped onto `(0, 1]`; the whole real line is split at zero
/// and the two half-lines are integrated separately.
pub fn integrate<F>(f: F, lo: f64, hi: f64, tol: Tolerance) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    if lo.is_nan() || hi.is_nan() || lo >= hi {
        return Err(Error::domain(format!(
            "integration limits must satisfy lo < hi (got lo={lo}, hi={hi})"
        )));
    }
    if !(tol.rel > 0.0 && tol.abs > 0.0 && tol.rel.is_finite() && tol.abs.is_finite()) {
        return Err(Error::domain("tolerances must be positive and finite"));
    }
    if tol.max_subintervals < 1 {
        return Err(Error::domain("subinterval budget must be at least 1"));
    }

    let result = match (lo.is_finite(), hi.is_finite()) {
        (true, true) => adaptive(&f, |x| x, lo, hi, &tol),
        (true, false) => upper_tail(&f, lo, &tol),
        (false, true) => lower_tail(&f, hi, &tol),
        (false, false) => Ok(lower_tail(&f, 0.0, &tol)?.plus(upper_tail(&f, 0.0, &tol)?)),
    }?;
    if !result.value.is_finite() {
        return Err(Error::Divergent { last: result.value });
    }
    Ok(result)
}

/// Integrate `f` over `[lo, hi]` with the default tolerance.
pub fn integrate_default<F>(f: F, lo: f64, hi: f64) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    integrate(f, lo, hi, Tolerance::default())
}

// The tails are split into a finite piece next to the endpoint, integrated
// in y directly so that endpoint singularities keep full resolution, and the
// remainder mapped onto (0, 1] by y = a ± (1 − s)/s.
fn upper_tail<F: Fn(f64) -> f64>(f: &F, lo: f64, tol: &Tolerance) -> Result<QuadratureResult> {
    let a = lo + lo.abs().max(1.0);
    let near = adaptive(f, |y| y, lo, a, tol)?;
    let to_y = move |s: f64| a + (1.0 - s) / s;
    let g = |s: f64| {
        let v = f(to_y(s));
        if v == 0.0 {
            0.0
        } else {
            v / s / s
        }
    };
    Ok(near.plus(adaptive(g, to_y, 0.0, 1.0, tol)?))
}

fn lower_tail<F: Fn(f64) -> f64>(f: &F, hi: f64, tol: &Tolerance) -> Result<QuadratureResult> {
    let a = hi - hi.abs().max(1.0);
    let near = adaptive(f, |y| y, a, hi, tol)?;
    let to_y = move |s: f64| a - (1.0 - s) / s;
    let g = |s: f64| {
        let v = f(to_y(s));
        if v == 0.0 {
            0.0
        } else {
            v / s / s
        }
    };
    Ok(near.plus(adaptive(g, to_y, 0.0, 1.0, tol)?))
}

impl QuadratureResult {
    fn plus(self, other: QuadratureResult) -> QuadratureResult {
        QuadratureResult {
            value: self.value + other.value,
            abs_error: self.abs_error + other.abs_error,
            evaluations: self.evaluations + other.evaluations,
        }
    }
}
