//! Sine and cosine integrals and the auxiliary functions
//!
//! ```text
//! f(x) = Ci(x) sin x + (π/2 − Si(x)) cos x = ∫₀^∞ e^{−xt}/(1+t²) dt
//! g(x) = −Ci(x) cos x + (π/2 − Si(x)) sin x = ∫₀^∞ t e^{−xt}/(1+t²) dt
//! ```
//!
//! with f′ = −g and g′ = f − 1/x. Below `SERIES_LIMIT` Si and Ci come from
//! their power series; above it `g − i f = e^{ix} E₁(ix)` is evaluated by
//! the Lentz continued fraction, which avoids cancellation for large x.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082_402_43;

/// Crossover between the power series and the continued fraction.
pub const SERIES_LIMIT: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuxFunValue {
    pub x: f64,
    pub f: f64,
    pub g: f64,
    pub f_prime: f64,
    pub f_double_prime: f64,
    pub abs_err_est: f64,
}

impl AuxFunValue {
    fn new(x: f64, f: f64, g: f64, abs_err_est: f64) -> Self {
        AuxFunValue {
            x,
            f,
            g,
            f_prime: -g,
            f_double_prime: 1.0 / x - f,
            abs_err_est,
        }
    }

    /// g′ = f − 1/x.
    pub fn g_prime(&self) -> f64 {
        self.f - 1.0 / self.x
    }
}

struct SiCi {
    si: f64,
    ci: f64,
    err: f64,
}

fn series(x: f64) -> SiCi {
    let x2 = x * x;
    // Si: Σ (−1)^n x^{2n+1} / ((2n+1)(2n+1)!)
    // Ci − γ − ln x: Σ_{n≥1} (−1)^n x^{2n} / (2n (2n)!)
    let mut si = x;
    let mut si_abs = x;
    let mut si_term = x; // x^{2n+1}/(2n+1)! with sign
    let mut cin = 0.0;
    let mut cin_abs = 0.0;
    let mut ci_term = 1.0; // x^{2n}/(2n)! with sign
    for n in 1..60 {
        let k = 2.0 * n as f64;
        ci_term *= -x2 / ((k - 1.0) * k);
        si_term *= -x2 / (k * (k + 1.0));
        let c = ci_term / k;
        let s = si_term / (k + 1.0);
        cin += c;
        cin_abs += c.abs();
        si += s;
        si_abs += s.abs();
        if s.abs() < 1e-18 * si.abs() && c.abs() < 1e-18 * (cin.abs() + 1e-300) {
            break;
        }
    }
    let ln_x = x.ln();
    let ci = EULER_GAMMA + ln_x + cin;
    let err = 4.0 * f64::EPSILON * (si_abs + cin_abs + ln_x.abs() + EULER_GAMMA);
    SiCi { si, ci, err }
}

/// Returns (g, f, error bound) from the continued fraction for e^{ix}E₁(ix).
fn continued_fraction(x: f64) -> (f64, f64, f64) {
    const TINY: f64 = 1e-300;
    let one = Complex64::new(1.0, 0.0);
    let mut b = Complex64::new(1.0, x);
    let mut c = Complex64::new(1.0 / TINY, 0.0);
    let mut d = one / b;
    let mut h = d;
    let mut iterations = 1;
    for i in 2..10_000 {
        let a = -((i - 1) as f64).powi(2);
        b += 2.0;
        d = one / (d * a + b);
        c = b + Complex64::new(a, 0.0) / c;
        let del = c * d;
        h *= del;
        iterations = i;
        if (del.re - 1.0).abs() + del.im.abs() < 1e-16 {
            break;
        }
    }
    let err = 8.0 * f64::EPSILON * h.norm() * (iterations as f64).sqrt();
    (h.re, -h.im, err)
}

fn check_arg(x: f64, allow_zero: bool) -> Result<()> {
    let ok = x.is_finite() && if allow_zero { x >= 0.0 } else { x > 0.0 };
    if ok {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "argument must be {} and finite, got {x}",
            if allow_zero { "non-negative" } else { "positive" }
        )))
    }
}

/// Si(x) = ∫₀ˣ sin t / t dt for x ≥ 0.
pub fn si(x: f64) -> Result<f64> {
    check_arg(x, true)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    if x < SERIES_LIMIT {
        Ok(series(x).si)
    } else {
        let (g, f, _) = continued_fraction(x);
        let (s, c) = x.sin_cos();
        Ok(FRAC_PI_2 - f * c - g * s)
    }
}

/// Ci(x) = γ + ln x + ∫₀ˣ (cos t − 1)/t dt for x > 0.
pub fn ci(x: f64) -> Result<f64> {
    check_arg(x, false)?;
    if x < SERIES_LIMIT {
        Ok(series(x).ci)
    } else {
        let (g, f, _) = continued_fraction(x);
        let (s, c) = x.sin_cos();
        Ok(f * s - g * c)
    }
}

/// The auxiliary pair f, g and the derivatives implied by f′ = −g,
/// f″ = 1/x − f.
pub fn aux(x: f64) -> Result<AuxFunValue> {
    check_arg(x, false)?;
    if x < SERIES_LIMIT {
        let SiCi { si, ci, err } = series(x);
        let (s, c) = x.sin_cos();
        let rest = FRAC_PI_2 - si;
        let f = ci * s + rest * c;
        let g = -ci * c + rest * s;
        let round = 4.0 * f64::EPSILON * (ci.abs() + rest.abs());
        Ok(AuxFunValue::new(x, f, g, err + round))
    } else {
        let (g, f, err) = continued_fraction(x);
        Ok(AuxFunValue::new(x, f, g, err))
    }
}
