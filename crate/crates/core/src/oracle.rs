//! Brute-force validators for the closed forms.
//!
//! These evaluate the defining integrals directly and are deliberately
//! slow. After the polarization sum and the solid-angle integral the mode
//! sums become radial integrals over z = kR of the angular kernels
//! `A_T = j0 − j1/z` and `A_L = 2 j1/z`:
//!
//! ```text
//! T(x) = −∫₀^∞ q³/(1+q) A(qx) dq        (first order)
//! Y(x) =  ∫₀^∞ q³/(1+q)² A(qx) dq       (second order)
//! ```
//!
//! Both are only Abel-summable. Splitting off polynomial pieces whose Abel
//! sums are elementary leaves decaying oscillatory remainders
//!
//! ```text
//! T_T = π/(2x³) − π/(4x) + ∫ A_T/(z+x) dz
//! T_L = −π/x³ + 2/x² − π/(2x) + ∫ A_L/(z+x) dz
//! ```
//!
//! which are summed cell by cell with iterated averaging. For x > 2 the
//! remainder nearly cancels the leading terms, so there the equivalent
//! form `T = −x⁻³ ∫ z³ A/(z+x) dz` is summed instead.

use std::f64::consts::PI;

use nalgebra::Vector3;
use num_complex::Complex64;

use crate::casimir::{self, Polarization};
use crate::error::{Error, Result};
use crate::kernel::angular_kernel;
use crate::model::PairConfiguration;
use crate::quad::{self, Estimate};

/// Outcome of an oracle quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureReport<T> {
    pub value: T,
    pub abs_err_est: f64,
    pub intervals_used: usize,
    /// True when the value relies on averaging of oscillatory partial sums.
    pub accelerated: bool,
}

/// Cell count, averaging depth and per-cell tolerance of the oscillatory
/// summation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resolution {
    pub cells: usize,
    pub levels: usize,
    pub cell_rel_tol: f64,
}

impl Resolution {
    pub const STANDARD: Resolution = Resolution {
        cells: 48,
        levels: 20,
        cell_rel_tol: 1e-13,
    };
    pub const HIGH: Resolution = Resolution {
        cells: 96,
        levels: 40,
        cell_rel_tol: 1e-14,
    };
}

/// Switch between the remainder form and the fully subtracted form.
const SUBTRACTED_ABOVE: f64 = 2.0;

fn check_x(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("x must be positive and finite, got {x}")))
    }
}

/// Weights of the transverse and longitudinal parts in a contraction.
fn weights(n_a: Vector3<f64>, n_b: Vector3<f64>, r_hat: Vector3<f64>) -> Result<(f64, f64)> {
    for v in [n_a, n_b, r_hat] {
        if (v.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::domain("orientations must be unit vectors"));
        }
    }
    let along = n_a.dot(&r_hat) * n_b.dot(&r_hat);
    Ok((n_a.dot(&n_b) - along, along))
}

#[derive(Clone, Copy)]
enum Part {
    Transverse,
    Longitudinal,
}

fn kernel_part(z: f64, part: Part) -> f64 {
    let (t, l) = angular_kernel(z);
    match part {
        Part::Transverse => t,
        Part::Longitudinal => l,
    }
}

fn sum_cells<F: Fn(f64) -> f64>(f: F, res: Resolution) -> Result<Estimate<f64>> {
    quad::oscillatory_tail(f, 0.0, PI, res.cells, res.levels, res.cell_rel_tol)
}

fn first_order_part(x: f64, part: Part, res: Resolution) -> Result<Estimate<f64>> {
    if x > SUBTRACTED_ABOVE {
        let e = sum_cells(|z| z.powi(3) * kernel_part(z, part) / (z + x), res)?;
        let s = -1.0 / x.powi(3);
        return Ok(Estimate {
            value: s * e.value,
            abs_err: s.abs() * e.abs_err,
            intervals: e.intervals,
        });
    }
    let e = sum_cells(|z| kernel_part(z, part) / (z + x), res)?;
    let lead = match part {
        Part::Transverse => PI / (2.0 * x.powi(3)) - PI / (4.0 * x),
        Part::Longitudinal => -PI / x.powi(3) + 2.0 / (x * x) - PI / (2.0 * x),
    };
    Ok(Estimate {
        value: lead + e.value,
        abs_err: e.abs_err + 4.0 * f64::EPSILON * lead.abs(),
        intervals: e.intervals,
    })
}

fn second_order_part(x: f64, part: Part, res: Resolution) -> Result<Estimate<f64>> {
    if x > SUBTRACTED_ABOVE {
        let e = sum_cells(|z| z.powi(3) * kernel_part(z, part) / ((z + x) * (z + x)), res)?;
        let s = 1.0 / (x * x);
        return Ok(Estimate {
            value: s * e.value,
            abs_err: s * e.abs_err,
            intervals: e.intervals,
        });
    }
    let e = sum_cells(
        |z| (3.0 * z + 2.0 * x) / ((z + x) * (z + x)) * kernel_part(z, part),
        res,
    )?;
    let lead = match part {
        Part::Transverse => -PI / (2.0 * x),
        Part::Longitudinal => 2.0 / (x * x) - PI / x,
    };
    Ok(Estimate {
        value: lead + e.value,
        abs_err: e.abs_err + 4.0 * f64::EPSILON * lead.abs(),
        intervals: e.intervals,
    })
}

fn contracted(
    x: f64,
    n_a: Vector3<f64>,
    n_b: Vector3<f64>,
    r_hat: Vector3<f64>,
    res: Resolution,
    part_fn: fn(f64, Part, Resolution) -> Result<Estimate<f64>>,
) -> Result<QuadratureReport<f64>> {
    check_x(x)?;
    let (wt, wl) = weights(n_a, n_b, r_hat)?;
    let mut value = 0.0;
    let mut err = 0.0;
    let mut intervals = 0;
    for (w, part) in [(wt, Part::Transverse), (wl, Part::Longitudinal)] {
        if w == 0.0 {
            continue;
        }
        let e = part_fn(x, part, res)?;
        value += w * e.value;
        err += w.abs() * e.abs_err;
        intervals += e.intervals;
    }
    Ok(QuadratureReport {
        value: value / PI,
        abs_err_est: err / PI,
        intervals_used: intervals,
        accelerated: intervals > 0,
    })
}

/// (1/π)·T(x) contracted with the orientations, from the mode sum.
pub fn modesum_first_order(
    x: f64,
    n_a: Vector3<f64>,
    n_b: Vector3<f64>,
    r_hat: Vector3<f64>,
) -> Result<QuadratureReport<f64>> {
    modesum_first_order_at(x, n_a, n_b, r_hat, Resolution::STANDARD)
}

pub fn modesum_first_order_at(
    x: f64,
    n_a: Vector3<f64>,
    n_b: Vector3<f64>,
    r_hat: Vector3<f64>,
    res: Resolution,
) -> Result<QuadratureReport<f64>> {
    contracted(x, n_a, n_b, r_hat, res, first_order_part)
}

/// First-order mode sum with resonance parameter s in the denominator,
/// −(1/π)∫ q³/(s+q) A(qx) dq. Rescaling q = s p gives s³·T(sx)/π.
pub fn modesum_first_order_detuned(
    x: f64,
    s: f64,
    n_a: Vector3<f64>,
    n_b: Vector3<f64>,
    r_hat: Vector3<f64>,
) -> Result<QuadratureReport<f64>> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::domain(format!("resonance parameter must be positive, got {s}")));
    }
    let r = modesum_first_order(s * x, n_a, n_b, r_hat)?;
    let s3 = s.powi(3);
    Ok(QuadratureReport {
        value: s3 * r.value,
        abs_err_est: s3 * r.abs_err_est,
        ..r
    })
}

/// (1/π)·Y(x), the cross-coherence kernel with squared denominator.
pub fn modesum_second_order(
    x: f64,
    n_a: Vector3<f64>,
    n_b: Vector3<f64>,
    r_hat: Vector3<f64>,
) -> Result<QuadratureReport<f64>> {
    modesum_second_order_at(x, n_a, n_b, r_hat, Resolution::STANDARD)
}

pub fn modesum_second_order_at(
    x: f64,
    n_a: Vector3<f64>,
    n_b: Vector3<f64>,
    r_hat: Vector3<f64>,
    res: Resolution,
) -> Result<QuadratureReport<f64>> {
    contracted(x, n_a, n_b, r_hat, res, second_order_part)
}

/// Local one-photon population per unit μ with the wavenumber cut at Λk₀:
/// (2/(3π)) ∫₀^Λ q³/(1+q)² dq.
pub fn local_population(cutoff: f64) -> Result<QuadratureReport<f64>> {
    if !(cutoff > 1.0 && cutoff.is_finite()) {
        return Err(Error::domain(format!("cutoff must exceed 1, got {cutoff}")));
    }
    let e = quad::integrate(
        |q: f64| q.powi(3) / ((1.0 + q) * (1.0 + q)),
        0.0,
        cutoff,
        0.0,
        1e-14,
        500,
    )?;
    let c = 2.0 / (3.0 * PI);
    Ok(QuadratureReport {
        value: c * e.value,
        abs_err_est: c * e.abs_err,
        intervals_used: e.intervals,
        accelerated: false,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuxKind {
    F,
    G,
}

/// f(x) = ∫₀^∞ e^{−xt}/(1+t²) dt and g(x) = ∫₀^∞ t e^{−xt}/(1+t²) dt.
/// f accepts x = 0 (value π/2); g needs x > 0.
pub fn aux_integral_rep(x: f64, which: AuxKind) -> Result<QuadratureReport<f64>> {
    let ok = match which {
        AuxKind::F => x >= 0.0 && x.is_finite(),
        AuxKind::G => x > 0.0 && x.is_finite(),
    };
    if !ok {
        return Err(Error::domain(format!("integral representation diverges at x = {x}")));
    }
    let integrand = move |t: f64| {
        let w = (-x * t).exp() / (1.0 + t * t);
        match which {
            AuxKind::F => w,
            AuxKind::G => t * w,
        }
    };
    // two length scales: 1 from the rational factor, 1/x from the exponential
    let knee = if x > 0.0 { (1.0 / x).max(1.0) } else { 1.0 };
    let mut total = Estimate {
        value: 0.0,
        abs_err: 0.0,
        intervals: 0,
    };
    let mut lo = 0.0;
    for hi in [(1.0 / x.max(1e-300)).min(1.0), 1.0, knee] {
        if hi > lo {
            let e = quad::integrate(integrand, lo, hi, 1e-15, 1e-14, 500)?;
            total.value += e.value;
            total.abs_err += e.abs_err;
            total.intervals += e.intervals;
            lo = hi;
        }
    }
    let scale = if x > 0.0 { (1.0 / x).max(lo) } else { lo };
    let tail = quad::integrate_to_infinity(integrand, lo, scale, 1e-15, 1e-14, 500)?;
    Ok(QuadratureReport {
        value: total.value + tail.value,
        abs_err_est: total.abs_err + tail.abs_err,
        intervals_used: total.intervals + tail.intervals,
        accelerated: false,
    })
}

/// A pole of order 1 or 2 on the real axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleSpec {
    pub location: f64,
    pub order: u32,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrincipalValueReport {
    pub report: QuadratureReport<Complex64>,
    /// Coefficient of (q − q₀)⁻¹ in the Laurent expansion at the pole.
    pub residue: Complex64,
    /// |value(δ) − value(δ/3)|.
    pub window_shift: f64,
}

const WINDOW_ORDER: usize = 8;

fn window_integral(coeffs: &[Complex64], order: u32, delta: f64) -> Complex64 {
    // finite part of ∫_{−δ}^{δ} t^p dt for p = k − order
    coeffs
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let p = k as i32 - order as i32;
            let w = match p {
                -2 => -2.0 / delta,
                -1 => 0.0,
                p if p % 2 == 0 => 2.0 * delta.powi(p + 1) / (p + 1) as f64,
                _ => 0.0,
            };
            c * w
        })
        .sum()
}

fn pv_at<F: Fn(Complex64) -> Complex64>(
    numerator: &F,
    pole: PoleSpec,
    a: f64,
    b: f64,
    delta: f64,
    coeffs: &[Complex64],
) -> Result<Estimate<Complex64>> {
    let q0 = pole.location;
    let outer = |q: f64| numerator(Complex64::new(q, 0.0)) / (q - q0).powi(pole.order as i32);
    let left = quad::integrate(outer, a, q0 - delta, 1e-15, 1e-13, 2000)?;
    let right = quad::integrate(outer, q0 + delta, b, 1e-15, 1e-13, 2000)?;
    Ok(Estimate {
        value: left.value + right.value + window_integral(coeffs, pole.order, delta),
        abs_err: left.abs_err + right.abs_err,
        intervals: left.intervals + right.intervals,
    })
}

/// Principal value (order 1) or Hadamard finite part (order 2) of
/// ∫_a^b N(q)/(q − q₀)^n dq for N analytic on the disc of radius
/// `taylor_radius` about q₀.
///
/// Outside the window [q₀ − δ, q₀ + δ] the integral is adaptive; inside,
/// N is replaced by its Taylor series from a Cauchy contour and the
/// window is integrated term by term. The result is recomputed at δ/3 and
/// a shift beyond the quadrature errors is reported as an accuracy error.
pub fn principal_value_quadrature<F: Fn(Complex64) -> Complex64>(
    numerator: F,
    pole: PoleSpec,
    a: f64,
    b: f64,
    half_width: f64,
    taylor_radius: f64,
) -> Result<PrincipalValueReport> {
    let q0 = pole.location;
    if !(1..=2).contains(&pole.order) {
        return Err(Error::domain("pole order must be 1 or 2"));
    }
    if !(a < q0 - half_width && q0 + half_width < b && half_width > 0.0) {
        return Err(Error::domain("window must lie strictly inside the interval"));
    }
    if !(taylor_radius > half_width) {
        return Err(Error::domain("Taylor radius must exceed the window half-width"));
    }
    let coeffs = quad::taylor_coefficients(&numerator, q0, taylor_radius, WINDOW_ORDER);
    let coarse = pv_at(&numerator, pole, a, b, half_width, &coeffs)?;
    let fine = pv_at(&numerator, pole, a, b, half_width / 3.0, &coeffs)?;
    let shift = (coarse.value - fine.value).norm();
    let allowed = 1e-9 * coarse.value.norm().max(1.0) + coarse.abs_err + fine.abs_err;
    if shift > allowed {
        return Err(Error::Accuracy {
            what: "principal value depends on the window half-width".into(),
            partial: coarse.value.norm(),
            estimate: shift,
        });
    }
    Ok(PrincipalValueReport {
        report: QuadratureReport {
            value: coarse.value,
            abs_err_est: coarse.abs_err + shift,
            intervals_used: coarse.intervals + fine.intervals,
            accelerated: false,
        },
        residue: coeffs[pole.order as usize - 1],
        window_shift: shift,
    })
}

/// The reduced Casimir–Polder integral I(x) evaluated on the real
/// wavenumber axis, through the double pole of the polarizabilities at
/// q = 1.
///
/// With F(q) = ĝ(q)²/(1 − q²)² the imaginary-axis integral equals
/// Im[finite part ∫₀^∞ F] − π Re(c₋₁), c₋₁ being the simple-pole
/// coefficient of F at q = 1 (half of the residue picked up by the
/// indented contour). The finite part is taken on [0, 2]; beyond q = 2
/// Im F oscillates with half period π/(2x) without decay and is summed
/// in the Abel sense.
pub fn wcp_principal_value(
    cfg: &PairConfiguration,
    polarization: Polarization,
) -> Result<QuadratureReport<f64>> {
    wcp_principal_value_at(cfg, polarization, Resolution::STANDARD)
}

pub fn wcp_principal_value_at(
    cfg: &PairConfiguration,
    polarization: Polarization,
    res: Resolution,
) -> Result<QuadratureReport<f64>> {
    let x = cfg.x();
    let sq = casimir::squared_propagator(cfg, polarization);
    let f = |q: Complex64| sq(q, x);
    let numerator = |q: Complex64| f(q) / ((1.0 + q) * (1.0 + q));
    let pv = principal_value_quadrature(
        numerator,
        PoleSpec {
            location: 1.0,
            order: 2,
        },
        0.0,
        2.0,
        1e-2,
        0.5,
    )?;
    let tail = quad::oscillatory_tail(
        |q: f64| {
            let d = 1.0 - q * q;
            (f(Complex64::new(q, 0.0)) / (d * d)).im
        },
        2.0,
        PI / (2.0 * x),
        2 * res.cells,
        res.levels,
        res.cell_rel_tol,
    )?;
    Ok(QuadratureReport {
        value: pv.report.value.im + tail.value - PI * pv.residue.re,
        abs_err_est: pv.report.abs_err_est + tail.abs_err + 1e-13 * (PI * pv.residue.re).abs(),
        intervals_used: pv.report.intervals_used + tail.intervals,
        accelerated: true,
    })
}

/// Contracted far-zone field-correlation coefficient c̃ = ∫₀^∞ z³ A(z) dz
/// (Abel sum), with ⟨E(R_A) E(R_B)⟩ ∝ c̃/R⁴ at equal times.
pub fn field_correlator(
    n_a: Vector3<f64>,
    n_b: Vector3<f64>,
    r_hat: Vector3<f64>,
) -> Result<QuadratureReport<f64>> {
    let (wt, wl) = weights(n_a, n_b, r_hat)?;
    let res = Resolution::STANDARD;
    let mut value = 0.0;
    let mut err = 0.0;
    let mut intervals = 0;
    for (w, part) in [(wt, Part::Transverse), (wl, Part::Longitudinal)] {
        if w == 0.0 {
            continue;
        }
        let e = sum_cells(|z| z.powi(3) * kernel_part(z, part), res)?;
        value += w * e.value;
        err += w.abs() * e.abs_err;
        intervals += e.intervals;
    }
    Ok(QuadratureReport {
        value,
        abs_err_est: err,
        intervals_used: intervals,
        accelerated: true,
    })
}
