//! Numerical integration used by the production contour path and by the
//! oracles: adaptive Gauss-Kronrod, a semi-infinite mapping, cell-wise
//! summation of oscillatory tails with iterated averaging, and Taylor
//! coefficients of an analytic function from a Cauchy contour.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Values that can be integrated: reals and complex numbers.
pub trait QuadValue:
    Copy + Default + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    fn magnitude(self) -> f64;
}

impl QuadValue for f64 {
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

/// Result of a quadrature together with a conservative error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T> {
    pub value: T,
    pub abs_err: f64,
    pub intervals: usize,
}

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

fn gk21<T: QuadValue, F: Fn(f64) -> T>(f: &F, a: f64, b: f64) -> (T, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[10];
    let mut gauss = T::default();
    for j in 0..10 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod = kronrod + pair * WGK[j];
        if j % 2 == 1 {
            gauss = gauss + pair * WG[j / 2];
        }
    }
    let kronrod = kronrod * half;
    let gauss = gauss * half;
    let err = (kronrod - gauss).magnitude();
    // floor at the rounding level of the rule itself
    let floor = 50.0 * f64::EPSILON * kronrod.magnitude();
    (kronrod, err.max(floor))
}

/// Adaptive bisection driven by the Gauss-Kronrod 10/21 pair.
///
/// Stops when the summed error estimate falls below
/// `max(abs_tol, rel_tol * |value|)`. Returns [`Error::Accuracy`] if
/// `max_intervals` is exhausted first.
pub fn integrate<T: QuadValue, F: Fn(f64) -> T>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_intervals: usize,
) -> Result<Estimate<T>> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::domain("integration limits must be finite"));
    }
    if a == b {
        return Ok(Estimate {
            value: T::default(),
            abs_err: 0.0,
            intervals: 0,
        });
    }
    let (v, e) = gk21(&f, a, b);
    let mut pieces = vec![(a, b, v, e)];
    loop {
        let (value, err) = pieces
            .iter()
            .fold((T::default(), 0.0), |(s, t), p| (s + p.2, t + p.3));
        // rounding-limited pieces cannot be refined further
        let roundoff = 100.0 * f64::EPSILON * pieces.iter().map(|p| p.2.magnitude()).sum::<f64>();
        if err <= abs_tol.max(rel_tol * value.magnitude()).max(roundoff) {
            return Ok(Estimate {
                value,
                abs_err: err,
                intervals: pieces.len(),
            });
        }
        if pieces.len() >= max_intervals {
            return Err(Error::Accuracy {
                what: format!("adaptive quadrature on [{a}, {b}]"),
                partial: value.magnitude(),
                estimate: err,
            });
        }
        let (worst, _) = pieces
            .iter()
            .enumerate()
            .max_by(|l, r| l.1 .3.total_cmp(&r.1 .3))
            .expect("at least one interval");
        let (lo, hi, _, _) = pieces.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Err(Error::Accuracy {
                what: format!("interval [{lo}, {hi}] cannot be bisected further"),
                partial: value.magnitude(),
                estimate: err,
            });
        }
        let (v1, e1) = gk21(&f, lo, mid);
        let (v2, e2) = gk21(&f, mid, hi);
        pieces.push((lo, mid, v1, e1));
        pieces.push((mid, hi, v2, e2));
    }
}

/// Integral over `[a, ∞)` through the map `x = a + s·t/(1-t)`.
///
/// `scale` should be of the order of the decay length of the integrand.
pub fn integrate_to_infinity<T: QuadValue, F: Fn(f64) -> T>(
    f: F,
    a: f64,
    scale: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_intervals: usize,
) -> Result<Estimate<T>> {
    if !(scale > 0.0) {
        return Err(Error::domain("scale must be positive"));
    }
    let mapped = |t: f64| {
        let one_minus = 1.0 - t;
        let x = a + scale * t / one_minus;
        let jac = scale / (one_minus * one_minus);
        let v = f(x);
        if jac.is_finite() && x.is_finite() {
            v * jac
        } else {
            T::default()
        }
    };
    integrate(mapped, 0.0, 1.0, abs_tol, rel_tol, max_intervals)
}

/// Partial sums of `f` over `cells` consecutive intervals of width
/// `half_period` starting at `start`, followed by `levels` rounds of
/// pairwise averaging.
///
/// For an integrand whose cell contributions alternate in sign with a
/// smooth envelope (including non-decaying envelopes, which are then
/// summed in the Abel sense) the averaged partial sums converge to the
/// tail integral. The error estimate combines the spread between the two
/// deepest averaging levels with the per-cell quadrature errors.
pub fn oscillatory_tail<T: QuadValue, F: Fn(f64) -> T>(
    f: F,
    start: f64,
    half_period: f64,
    cells: usize,
    levels: usize,
    cell_rel_tol: f64,
) -> Result<Estimate<T>> {
    if !(half_period > 0.0) || levels + 2 > cells {
        return Err(Error::domain(
            "oscillatory tail needs a positive half period and cells > levels + 1",
        ));
    }
    let mut sums = Vec::with_capacity(cells);
    let mut acc = T::default();
    let mut cell_err = 0.0;
    let mut intervals = 0;
    for k in 0..cells {
        let lo = start + k as f64 * half_period;
        let hi = lo + half_period;
        let est = integrate(&f, lo, hi, 0.0, cell_rel_tol, 200).or_else(|_| {
            integrate(&f, lo, hi, 1e-300, 1e3 * cell_rel_tol, 400)
        })?;
        acc = acc + est.value;
        cell_err += est.abs_err;
        intervals += est.intervals;
        sums.push(acc);
    }
    let mut previous_last = *sums.last().expect("cells > 0");
    for _ in 0..levels {
        previous_last = *sums.last().expect("non-empty");
        sums = sums.windows(2).map(|w| (w[0] + w[1]) * 0.5).collect();
    }
    let n = sums.len();
    let value = sums[n - 1];
    let spread = (value - previous_last)
        .magnitude()
        .max((value - sums[n - 2]).magnitude());
    Ok(Estimate {
        value,
        abs_err: spread + cell_err,
        intervals,
    })
}

/// Taylor coefficients `c_0..=c_order` of an analytic `f` about `center`,
/// from the trapezoid rule on the circle of the given radius.
///
/// `f` must be analytic on a disc somewhat larger than `radius`.
pub fn taylor_coefficients<F: Fn(Complex64) -> Complex64>(
    f: F,
    center: f64,
    radius: f64,
    order: usize,
) -> Vec<Complex64> {
    const NODES: usize = 64;
    let samples: Vec<(Complex64, Complex64)> = (0..NODES)
        .map(|j| {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / NODES as f64;
            let w = Complex64::from_polar(1.0, theta);
            (w, f(Complex64::new(center, 0.0) + w * radius))
        })
        .collect();
    (0..=order)
        .map(|k| {
            let sum: Complex64 = samples
                .iter()
                .map(|(w, v)| v * w.conj().powu(k as u32))
                .sum();
            sum / (NODES as f64 * radius.powi(k as i32))
        })
        .collect()
}
