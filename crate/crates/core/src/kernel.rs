//! Dipole tensors of the mode-sum identity, the classical oscillating-dipole
//! potential, the single-mode vacuum field correlator and the two-level
//! polarizability.
//!
//! The operator `D_mn^R = −(−∇²δ_mn + ∇_m∇_n)` applied to `f(k₀R)/R`
//! gives `k₀³ τ_mn(x)` with
//!
//! ```text
//! τ_mn(x) = (1/x)[(δ − r̂r̂) f″ + (δ − 3r̂r̂)(f/x² − f′/x)].
//! ```
//!
//! Substituting f′ = −g and f″ = 1/x − f yields, in the frame with r̂ = ẑ,
//!
//! ```text
//! τ_trans(x) = (x − x² f + f + x g)/x³
//! τ_long(x)  = −2 (f + x g)/x³
//! ```
//!
//! The second-order (squared-denominator) kernel follows from rescaling the
//! resonance parameter: `Y(x) = ∂_s [s³ τ(s x)]_{s=1} = 3τ + xτ′`, i.e.
//! `Y_trans = g − f/x` and `Y_long = 2(1 − x f)/x²`.

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{PhysicalConstants, TwoLevelAtom};
use crate::specfun;

/// A symmetric tensor with axial symmetry about r̂: `transverse` on the
/// plane orthogonal to r̂, `longitudinal` along it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DipoleTensor {
    pub x: f64,
    pub transverse: f64,
    pub longitudinal: f64,
}

fn is_unit(v: &Vector3<f64>) -> bool {
    (v.norm() - 1.0).abs() <= 1e-12
}

impl DipoleTensor {
    /// Component in the frame where r̂ = ẑ.
    pub fn component(&self, m: usize, n: usize) -> f64 {
        match (m, n) {
            (2, 2) => self.longitudinal,
            (a, b) if a == b => self.transverse,
            _ => 0.0,
        }
    }

    /// Full matrix for an arbitrary separation direction.
    pub fn matrix(&self, r_hat: Vector3<f64>) -> Matrix3<f64> {
        let rr = r_hat * r_hat.transpose();
        (Matrix3::identity() - rr) * self.transverse + rr * self.longitudinal
    }

    /// Σ_mn (n_a)_m (n_b)_n τ_mn for unit orientations and direction r̂.
    pub fn contract(&self, n_a: Vector3<f64>, n_b: Vector3<f64>, r_hat: Vector3<f64>) -> Result<f64> {
        if !(is_unit(&n_a) && is_unit(&n_b) && is_unit(&r_hat)) {
            return Err(Error::domain("contract expects unit vectors"));
        }
        let along = n_a.dot(&r_hat) * n_b.dot(&r_hat);
        Ok(self.transverse * (n_a.dot(&n_b) - along) + self.longitudinal * along)
    }
}

fn check_x(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("x = k0 R must be positive and finite, got {x}")))
    }
}

/// τ(x) of the first-order mode sum, from the closed forms above.
pub fn dipole_tensor(x: f64) -> Result<DipoleTensor> {
    check_x(x)?;
    let a = specfun::aux(x)?;
    let x3 = x * x * x;
    Ok(DipoleTensor {
        x,
        transverse: (x - x * x * a.f + a.f + x * a.g) / x3,
        longitudinal: -2.0 * (a.f + x * a.g) / x3,
    })
}

/// Y(x) of the second-order (cross-coherence) mode sum with denominator
/// `(ω₀ + ω_k)²`.
pub fn cross_coherence_tensor(x: f64) -> Result<DipoleTensor> {
    check_x(x)?;
    let a = specfun::aux(x)?;
    Ok(DipoleTensor {
        x,
        transverse: a.g - a.f / x,
        longitudinal: 2.0 * (1.0 - x * a.f) / (x * x),
    })
}

/// Full potential tensor V(k, R) of two dipoles oscillating at frequency ck.
pub fn dipole_potential_tensor(k: f64, r_vec: Vector3<f64>) -> Result<Matrix3<f64>> {
    let r = r_vec.norm();
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::domain("dipole potential needs a non-zero separation"));
    }
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::domain(format!("wavenumber must be positive, got {k}")));
    }
    let r_hat = r_vec / r;
    let rr = r_hat * r_hat.transpose();
    let id = Matrix3::identity();
    let z = k * r;
    let (s, c) = z.sin_cos();
    let trans = (id - rr) * (c / z);
    let static_part = (id - rr * 3.0) * (s / (z * z) + c / (z * z * z));
    Ok((trans - static_part) * k.powi(3))
}

/// V_ℓm(k, R) = k³[(δ − R̂R̂) cos kR/(kR) − (δ − 3R̂R̂)(sin kR/(kR)² + cos kR/(kR)³)].
pub fn dipole_potential(k: f64, r_vec: Vector3<f64>, l: usize, m: usize) -> Result<f64> {
    if l > 2 || m > 2 {
        return Err(Error::domain("tensor index out of range"));
    }
    Ok(dipole_potential_tensor(k, r_vec)?[(l, m)])
}

/// Isotropic dynamic polarizability `2ω₀d²/(3ħ(ω₀² − c²k²))` at real k.
pub fn polarizability(k: f64, atom: &TwoLevelAtom, consts: &PhysicalConstants) -> Result<f64> {
    if !(k >= 0.0 && k.is_finite()) {
        return Err(Error::domain(format!("wavenumber must be >= 0, got {k}")));
    }
    let w0 = atom.omega0();
    let wk = consts.c * k;
    let denom = w0 * w0 - wk * wk;
    if denom.abs() <= 1e-12 * w0 * w0 {
        return Err(Error::Pole(format!(
            "polarizability evaluated at resonance ck = {wk}, omega0 = {w0}"
        )));
    }
    Ok(2.0 * w0 * atom.dipole().norm_squared() / (3.0 * consts.hbar * denom))
}

/// Polarizability at the imaginary wavenumber k = iu; pole-free and positive.
pub fn polarizability_imaginary(u: f64, atom: &TwoLevelAtom, consts: &PhysicalConstants) -> f64 {
    let w0 = atom.omega0();
    let wu = consts.c * u;
    2.0 * w0 * atom.dipole().norm_squared() / (3.0 * consts.hbar * (w0 * w0 + wu * wu))
}

/// Two linear polarization vectors orthogonal to k̂ (and to each other).
pub fn polarization_basis(k_hat: Vector3<f64>) -> [Vector3<f64>; 2] {
    let axis = if k_hat.x.abs() < 0.9 {
        Vector3::x()
    } else {
        Vector3::y()
    };
    let e1 = k_hat.cross(&axis).normalize();
    let e2 = k_hat.cross(&e1);
    [e1, e2]
}

/// Single-mode equal-time vacuum correlator ⟨0|E_kj(R_B)_m E_kj(R_A)_ℓ|0⟩
/// as the matrix indexed (m, ℓ): `(2πħc/V) ê_m ê_ℓ k e^{ik·R}` with
/// R = R_A − R_B. The volume is a formal parameter that cancels in every
/// mode sum.
pub fn vacuum_mode_correlator(
    k_vec: Vector3<f64>,
    polarization: usize,
    r_a: Vector3<f64>,
    r_b: Vector3<f64>,
    volume: f64,
    consts: &PhysicalConstants,
) -> Result<Matrix3<Complex64>> {
    let k = k_vec.norm();
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::domain("mode wavevector must be non-zero"));
    }
    if polarization > 1 {
        return Err(Error::domain("polarization index must be 0 or 1"));
    }
    if !(volume > 0.0) {
        return Err(Error::domain("quantization volume must be positive"));
    }
    let e = polarization_basis(k_vec / k)[polarization];
    let phase = Complex64::from_polar(1.0, k_vec.dot(&(r_a - r_b)));
    let pref = 2.0 * std::f64::consts::PI * consts.hbar * consts.c / volume * k;
    Ok((e * e.transpose()).map(|v| phase * (pref * v)))
}

/// Spherical Bessel j₀(z).
pub fn sph_j0(z: f64) -> f64 {
    if z.abs() < 0.5 {
        let z2 = z * z;
        let mut term = 1.0;
        let mut sum = 1.0;
        for n in 1..12 {
            let k = 2.0 * n as f64;
            term *= -z2 / (k * (k + 1.0));
            sum += term;
        }
        sum
    } else {
        z.sin() / z
    }
}

/// j₁(z)/z, regular at the origin (→ 1/3).
pub fn sph_j1_over_z(z: f64) -> f64 {
    if z.abs() < 0.5 {
        // Σ_m (−1)^m 2(m+1) z^{2m}/(2m+3)!
        let z2 = z * z;
        let mut inv_fact = 1.0 / 6.0;
        let mut pow = 1.0;
        let mut sum = 0.0;
        for m in 0..12 {
            let mf = m as f64;
            sum += 2.0 * (mf + 1.0) * pow * inv_fact;
            pow *= -z2;
            inv_fact /= (2.0 * mf + 4.0) * (2.0 * mf + 5.0);
        }
        sum
    } else {
        (z.sin() - z * z.cos()) / (z * z * z)
    }
}

/// Solid-angle average of the polarization-summed single-mode correlator,
/// `(1/4π)∫dΩ (δ − k̂k̂) e^{i z k̂·R̂}`, split into its transverse and
/// longitudinal coefficients: `(j₀ − j₁/z, 2j₁/z)`.
pub fn angular_kernel(z: f64) -> (f64, f64) {
    let j0 = sph_j0(z);
    let j1z = sph_j1_over_z(z);
    (j0 - j1z, 2.0 * j1z)
}
