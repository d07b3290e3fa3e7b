//! Casimir–Polder interaction energy of the atom pair.
//!
//! In reduced units the energy is
//!
//! ```text
//! W = −(2/π) ħω₀ μ² I(x),   I(x) = ∫₀^∞ ĝ(is)² / (1 + s²)² ds
//! ĝ(q) = e^{iqx} [q² t/x + l (1/x³ − iq/x²)]
//! ```
//!
//! where t = n_a·n_b − a_r b_r and l = 3 a_r b_r − n_a·n_b are the
//! contractions of the transverse and static parts of the retarded dipole
//! propagator, and (1 + s²)⁻¹ is the polarizability at imaginary
//! frequency per unit of its static value. On the imaginary axis the
//! integrand is smooth and decays as e^{−2sx}. The isotropic option
//! replaces ĝ² with (1/9)Tr G² = (1/9)(2ĝ_T² + ĝ_L²).

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{PairConfiguration, Scales};
use crate::oracle;
use crate::quad::{self, Estimate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Polarization {
    /// Fixed dipole orientations of the pair configuration.
    #[default]
    Oriented,
    /// Rotationally averaged polarizabilities.
    Isotropic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    RotatedContour,
    PrincipalValueOracle,
    NearClosedForm,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::RotatedContour => "rotated_contour",
            Method::PrincipalValueOracle => "principal_value_oracle",
            Method::NearClosedForm => "near_closed_form",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialResult {
    /// Separation in the length unit of the scales.
    pub r: f64,
    pub energy: f64,
    pub method: Method,
    pub abs_err_est: f64,
}

fn propagator(q: Complex64, x: f64, t: f64, l: f64) -> Complex64 {
    let i = Complex64::i();
    (i * q * x).exp() * (q * q * t / x + l * (1.0 / x.powi(3) - i * q / (x * x)))
}

fn contractions(cfg: &PairConfiguration) -> (f64, f64) {
    let ab = cfg.n_a().dot(&cfg.n_b());
    let along = cfg.n_a().dot(&cfg.r_hat()) * cfg.n_b().dot(&cfg.r_hat());
    (ab - along, 3.0 * along - ab)
}

/// ĝ(q)², or its rotational average, as an analytic function of the
/// complex wavenumber q (in units of k₀) at reduced separation x.
pub(crate) fn squared_propagator(
    cfg: &PairConfiguration,
    polarization: Polarization,
) -> impl Fn(Complex64, f64) -> Complex64 {
    let (t, l) = contractions(cfg);
    move |q, x| match polarization {
        Polarization::Oriented => propagator(q, x, t, l).powi(2),
        Polarization::Isotropic => {
            let gt = propagator(q, x, 1.0, -1.0);
            let gl = propagator(q, x, 0.0, 2.0);
            (gt * gt * 2.0 + gl * gl) / 9.0
        }
    }
}

fn imaginary_axis_integral<F: Fn(f64) -> f64>(f: F, x: f64) -> Result<Estimate<f64>> {
    let mut knots = vec![0.0, (1.0 / x).min(1.0), (1.0 / x).max(1.0)];
    knots.dedup();
    let mut total = Estimate {
        value: 0.0,
        abs_err: 0.0,
        intervals: 0,
    };
    for w in knots.windows(2) {
        let e = quad::integrate(&f, w[0], w[1], 0.0, 1e-13, 1000)?;
        total.value += e.value;
        total.abs_err += e.abs_err;
        total.intervals += e.intervals;
    }
    let last = *knots.last().expect("knots");
    let tail = quad::integrate_to_infinity(&f, last, 0.5 / x, 0.0, 1e-13, 1000)?;
    total.value += tail.value;
    total.abs_err += tail.abs_err;
    total.intervals += tail.intervals;
    Ok(total)
}

/// I(x) from the imaginary-axis integral.
pub fn reduced_integral(cfg: &PairConfiguration, polarization: Polarization) -> Result<Estimate<f64>> {
    let x = cfg.x();
    let sq = squared_propagator(cfg, polarization);
    imaginary_axis_integral(
        |s| {
            let d = 1.0 + s * s;
            sq(Complex64::new(0.0, s), x).re / (d * d)
        },
        x,
    )
}

fn reduced_to_potential(
    cfg: &PairConfiguration,
    scales: &Scales,
    integral: f64,
    err: f64,
    method: Method,
) -> PotentialResult {
    let prefactor = 2.0 / PI * cfg.mu() * cfg.mu() * scales.hbar_omega0;
    PotentialResult {
        r: cfg.x() / scales.k0,
        energy: -prefactor * integral,
        method,
        abs_err_est: prefactor * err,
    }
}

/// Casimir–Polder energy for fixed orientations, by contour rotation.
pub fn wcp(cfg: &PairConfiguration, scales: &Scales) -> Result<PotentialResult> {
    wcp_with(cfg, scales, Method::RotatedContour, Polarization::Oriented)
}

pub fn wcp_with(
    cfg: &PairConfiguration,
    scales: &Scales,
    method: Method,
    polarization: Polarization,
) -> Result<PotentialResult> {
    match method {
        Method::RotatedContour => {
            let e = reduced_integral(cfg, polarization)?;
            Ok(reduced_to_potential(cfg, scales, e.value, e.abs_err, method))
        }
        Method::PrincipalValueOracle => {
            let r = oracle::wcp_principal_value(cfg, polarization)?;
            Ok(reduced_to_potential(cfg, scales, r.value, r.abs_err_est, method))
        }
        Method::NearClosedForm => Ok(match polarization {
            Polarization::Oriented => vdw_near(cfg, scales),
            Polarization::Isotropic => PotentialResult {
                r: cfg.x() / scales.k0,
                energy: -scales.hbar_omega0 * cfg.mu().powi(2) / (3.0 * cfg.x().powi(6)),
                method,
                abs_err_est: 0.0,
            },
        }),
    }
}

/// London energy −(μ κ_near)²/(2x⁶) ħω₀ from second-order perturbation
/// theory in the static dipole coupling.
pub fn vdw_near(cfg: &PairConfiguration, scales: &Scales) -> PotentialResult {
    let v = cfg.mu() * cfg.near_orientation_factor() / cfg.x().powi(3);
    PotentialResult {
        r: cfg.x() / scales.k0,
        energy: -0.5 * v * v * scales.hbar_omega0,
        method: Method::NearClosedForm,
        abs_err_est: 0.0,
    }
}

/// Large-separation form with static polarizabilities, −(2/π)μ² ∫ ĝ(is)² ds.
pub fn wcp_far(
    cfg: &PairConfiguration,
    scales: &Scales,
    polarization: Polarization,
) -> Result<PotentialResult> {
    let x = cfg.x();
    let sq = squared_propagator(cfg, polarization);
    let e = imaginary_axis_integral(|s| sq(Complex64::new(0.0, s), x).re, x)?;
    Ok(reduced_to_potential(cfg, scales, e.value, e.abs_err, Method::RotatedContour))
}

/// Far-zone concurrence written through the equal-time field correlator,
/// (2/π) μ |c̃| / x⁴ with c̃ from [`oracle::field_correlator`].
pub fn far_zone_concurrence_from_correlator(cfg: &PairConfiguration) -> Result<f64> {
    let c = oracle::field_correlator(cfg.n_a(), cfg.n_b(), cfg.r_hat())?;
    Ok(2.0 / PI * cfg.mu() * c.value.abs() / cfg.x().powi(4))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawFit {
    pub slope: f64,
    pub stderr: f64,
    pub intercept: f64,
    pub points: usize,
}

/// Least-squares slope of log|value| against log r over the points with
/// r in the closed window.
pub fn fit_powerlaw(curve: &[(f64, f64)], window: (f64, f64)) -> Result<PowerLawFit> {
    let pts: Vec<(f64, f64)> = curve
        .iter()
        .copied()
        .filter(|&(r, _)| r >= window.0 && r <= window.1)
        .collect();
    if pts.len() < 5 {
        return Err(Error::domain(format!(
            "power-law fit needs at least 5 points in the window, got {}",
            pts.len()
        )));
    }
    let positive = pts[0].1 > 0.0;
    if pts.iter().any(|&(r, v)| !(r > 0.0) || v == 0.0 || !v.is_finite() || (v > 0.0) != positive) {
        return Err(Error::domain("values must be nonzero and of one sign within the window"));
    }
    let n = pts.len() as f64;
    let (lx, ly): (Vec<f64>, Vec<f64>) = pts.iter().map(|&(r, v)| (r.ln(), v.abs().ln())).unzip();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::domain("window contains a single abscissa"));
    }
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = lx
        .iter()
        .zip(&ly)
        .map(|(a, b)| (b - intercept - slope * a).powi(2))
        .sum();
    Ok(PowerLawFit {
        slope,
        stderr: (ss / (n - 2.0) / sxx).sqrt(),
        intercept,
        points: pts.len(),
    })
}
