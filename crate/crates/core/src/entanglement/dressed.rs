//! Entanglement of the perturbatively dressed ground state.

use std::f64::consts::PI;

use nalgebra::Vector4;
use num_complex::Complex64;

use super::qubit::TwoQubitState;
use crate::error::{Error, Result};
use crate::kernel;
use crate::model::{perturbative_validity, PairConfiguration, Validity};
use crate::oracle;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Full,
    Near,
    Far,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Full => "full",
            Regime::Near => "near",
            Regime::Far => "far",
        }
    }
}

/// A concurrence with its unclamped value and the validity of the
/// perturbative expansion it came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConcurrenceResult {
    pub value: f64,
    pub raw: f64,
    pub regime: Regime,
    pub validity: Validity,
}

impl ConcurrenceResult {
    fn new(raw: f64, regime: Regime, cfg: &PairConfiguration) -> Self {
        ConcurrenceResult {
            value: raw.clamp(0.0, 1.0),
            raw,
            regime,
            validity: perturbative_validity(cfg).flag,
        }
    }
}

fn contracted(t: kernel::DipoleTensor, cfg: &PairConfiguration) -> Result<f64> {
    t.contract(cfg.n_a(), cfg.n_b(), cfg.r_hat())
}

/// c_ee = −(μ/π) T(x), sign kept.
pub fn amplitude_c_ee(cfg: &PairConfiguration) -> Result<f64> {
    let t = contracted(kernel::dipole_tensor(cfg.x())?, cfg)?;
    Ok(-cfg.mu() / PI * t)
}

/// X = Σ c_eg c*_ge = (μ/π) Y(x), the finite cross-coherence.
pub fn cross_coherence(cfg: &PairConfiguration) -> Result<f64> {
    let y = contracted(kernel::cross_coherence_tensor(cfg.x())?, cfg)?;
    Ok(cfg.mu() / PI * y)
}

/// C = 2|c_ee| = (2μ/π)|T(x)|.
pub fn concurrence_full(cfg: &PairConfiguration) -> Result<ConcurrenceResult> {
    let raw = 2.0 * amplitude_c_ee(cfg)?.abs();
    Ok(ConcurrenceResult::new(raw, Regime::Full, cfg))
}

/// μ|κ_near|/x³.
pub fn concurrence_near(cfg: &PairConfiguration) -> ConcurrenceResult {
    let raw = cfg.mu() * cfg.near_orientation_factor().abs() / cfg.x().powi(3);
    ConcurrenceResult::new(raw, Regime::Near, cfg)
}

/// (8μ/π)|κ_far|/x⁴.
pub fn concurrence_far(cfg: &PairConfiguration) -> ConcurrenceResult {
    let raw = 8.0 * cfg.mu() / PI * cfg.far_orientation_factor().abs() / cfg.x().powi(4);
    ConcurrenceResult::new(raw, Regime::Far, cfg)
}

/// How the separation-independent one-photon populations are treated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LocalTerms {
    /// Dropped.
    Renormalized,
    /// Kept with the photon wavenumber cut at Λk₀, Λ > 1.
    Cutoff(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct C1C2 {
    pub c1: f64,
    pub c2: f64,
    pub c_ee: f64,
    pub cross_coherence: f64,
    /// √(L_A L_B); zero when renormalized.
    pub local_population: f64,
}

/// The two branches of the correlator form for the dressed state.
///
/// With P_gg = 1 to this order,
/// c1 = |c_ee| − √(L_A L_B) and
/// c2 = |X| − √(|X|² + L_A L_B + |c_ee|²),
/// the second radicand being the doubly excited population.
pub fn c1_c2(cfg: &PairConfiguration, local: LocalTerms) -> Result<C1C2> {
    let c_ee = amplitude_c_ee(cfg)?;
    let x = cross_coherence(cfg)?;
    let l = match local {
        LocalTerms::Renormalized => 0.0,
        LocalTerms::Cutoff(cutoff) => {
            if !(cutoff > 1.0) {
                return Err(Error::domain(format!("cutoff must exceed 1, got {cutoff}")));
            }
            cfg.mu() * oracle::local_population(cutoff)?.value
        }
    };
    let p_ee = x * x + l * l + c_ee * c_ee;
    Ok(C1C2 {
        c1: c_ee.abs() - l,
        c2: x.abs() - p_ee.sqrt(),
        c_ee,
        cross_coherence: x,
        local_population: l,
    })
}

pub fn c1_c2_from_amplitudes(cfg: &PairConfiguration, cutoff: f64) -> Result<(f64, f64)> {
    let r = c1_c2(cfg, LocalTerms::Cutoff(cutoff))?;
    Ok((r.c1, r.c2))
}

/// |φ⟩⟨φ| with |φ⟩ = (|gg⟩ + c_ee|ee⟩)/√(1 + c_ee²).
pub fn effective_density_matrix(cfg: &PairConfiguration) -> Result<TwoQubitState> {
    let report = perturbative_validity(cfg);
    if report.flag == Validity::Invalid {
        return Err(Error::domain(format!(
            "perturbative expansion invalid (margin {:.3})",
            report.margin
        )));
    }
    let c = amplitude_c_ee(cfg)?;
    let zero = Complex64::new(0.0, 0.0);
    TwoQubitState::pure(Vector4::new(Complex64::new(c, 0.0), zero, zero, Complex64::new(1.0, 0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entanglement::qubit::{palma_concurrence, wootters_concurrence, SpinCorrelators};
    use crate::specfun;
    use std::f64::consts::TAU;
    use nalgebra::{Rotation3, Vector3};
    use proptest::prelude::*;

    fn cfg(x: f64, a: Vector3<f64>, b: Vector3<f64>, mu: f64) -> PairConfiguration {
        PairConfiguration::normalized(x, a, b, Vector3::z(), mu).unwrap()
    }

    fn transverse(x: f64, mu: f64) -> PairConfiguration {
        cfg(x, Vector3::x(), Vector3::x(), mu)
    }

    #[test]
    fn amplitude_examples() {
        assert_eq!(amplitude_c_ee(&transverse(1.0, 0.0)).unwrap(), 0.0);
        let g1 = specfun::aux(1.0).unwrap().g;
        let c = amplitude_c_ee(&transverse(1.0, 0.01)).unwrap();
        assert!((c + 0.01 / PI * (1.0 + g1)).abs() < 1e-15);
        assert!((c + 4.276e-3).abs() < 1e-6);
        for x in [0.01, 1.0, 100.0] {
            let c = amplitude_c_ee(&cfg(x, Vector3::z(), Vector3::x(), 0.1)).unwrap();
            assert_eq!(c, 0.0);
        }
    }

    #[test]
    fn concurrence_examples() {
        let c = concurrence_full(&transverse(1.0, 0.01)).unwrap();
        let g1 = specfun::aux(1.0).unwrap().g;
        assert!((c.raw - 0.02 / PI * (1.0 + g1)).abs() < 1e-16);
        assert!((c.raw - 8.551e-3).abs() < 2e-6);
        assert_eq!(c.value, c.raw);
        assert_eq!(c.regime, Regime::Full);
        assert_eq!(c.validity, Validity::Ok);

        let n = concurrence_near(&transverse(0.1, 1e-4));
        assert!((n.raw - 1e-4 / 1e-3).abs() < 1e-15);
        let n = concurrence_near(&cfg(0.1, Vector3::z(), Vector3::z(), 1e-4));
        assert!((n.raw - 2e-4 / 1e-3).abs() < 1e-15);

        let f = concurrence_far(&transverse(10.0, 1.0));
        assert!((f.raw - 8.0 / PI * 1e-4).abs() < 1e-18);
        let f = concurrence_far(&cfg(10.0, Vector3::z(), Vector3::z(), 1.0));
        assert!((f.raw - 8.0 / PI * 1e-4).abs() < 1e-18);
    }

    #[test]
    fn clamping_only_in_value() {
        let c = concurrence_near(&transverse(0.01, 1.0));
        assert!(c.raw > 1.0);
        assert_eq!(c.value, 1.0);
        assert_eq!(c.validity, Validity::Invalid);
    }

    #[test]
    fn regime_matching() {
        for x in [0.005, 0.01, 0.02] {
            let c = transverse(x, 1e-9);
            let full = concurrence_full(&c).unwrap().raw;
            assert!((full - concurrence_near(&c).raw).abs() / full < 0.01, "x={x}");
        }
        for x in [100.0, 150.0, 200.0] {
            let c = transverse(x, 1.0);
            let full = concurrence_full(&c).unwrap().raw;
            assert!((full - concurrence_far(&c).raw).abs() / full < 0.01, "x={x}");
        }
    }

    #[test]
    fn c1_c2_structure() {
        let c = transverse(1.0, 1e-3);
        let r = c1_c2(&c, LocalTerms::Renormalized).unwrap();
        assert_eq!(r.c1, r.c_ee.abs());
        assert!(r.c2 < 0.0);
        let (c1, c2) = c1_c2_from_amplitudes(&c, 100.0).unwrap();
        assert!(c1 < r.c1 && c2 < 0.0);
        assert!(c1_c2_from_amplitudes(&c, 1.0).is_err());
        let l2 = c1_c2(&c, LocalTerms::Cutoff(100.0)).unwrap().local_population;
        let l3 = c1_c2(&c, LocalTerms::Cutoff(1000.0)).unwrap().local_population;
        assert!(l3 > 50.0 * l2);
    }

    #[test]
    fn effective_state() {
        let s = effective_density_matrix(&transverse(1.0, 0.0)).unwrap();
        assert!((s.element(3, 3).re - 1.0).abs() < 1e-15);
        assert_eq!(wootters_concurrence(&s), 0.0);
        assert!(effective_density_matrix(&transverse(0.01, 1.0)).is_err());
    }

    #[test]
    fn consistency_triangle() {
        let c = cfg(0.3, Vector3::new(1.0, 0.2, 0.4), Vector3::new(0.3, -1.0, 0.5), 1e-3);
        let s = effective_density_matrix(&c).unwrap();
        let c_ee = amplitude_c_ee(&c).unwrap();
        let w = wootters_concurrence(&s);
        let p = palma_concurrence(&SpinCorrelators::from_state(&s)).unwrap();
        let two = 2.0 * c_ee.abs();
        assert!((w - 2.0 * c_ee.abs() / (1.0 + c_ee * c_ee)).abs() < 1e-15);
        assert!((w - two).abs() <= two * c_ee * c_ee * 1.0000001);
        assert!((p - w).abs() < 1e-14);
    }

    fn unit(theta: f64, phi: f64) -> Vector3<f64> {
        Vector3::new(theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos())
    }

    proptest! {
        #[test]
        fn invariant_under_sign_flips_and_rotations(
            x in 0.01f64..50.0,
            ta in 0.0f64..PI, pa in 0.0f64..TAU,
            tb in 0.0f64..PI, pb in 0.0f64..TAU,
            axis in prop::array::uniform3(-1.0f64..1.0), angle in 0.0f64..TAU,
        ) {
            let (a, b) = (unit(ta, pa), unit(tb, pb));
            let base = PairConfiguration::normalized(x, a, b, Vector3::z(), 1e-3).unwrap();
            let c0 = concurrence_full(&base).unwrap().raw;
            let flipped = PairConfiguration::normalized(x, -a, b, Vector3::z(), 1e-3).unwrap();
            prop_assert!((concurrence_full(&flipped).unwrap().raw - c0).abs() <= 1e-14 * c0.max(1e-300));
            let ax = Vector3::from(axis);
            prop_assume!(ax.norm() > 1e-3);
            let rot = Rotation3::from_axis_angle(&nalgebra::Unit::new_normalize(ax), angle);
            let rotated = PairConfiguration::normalized(x, rot * a, rot * b, rot * Vector3::z(), 1e-3).unwrap();
            let c1 = concurrence_full(&rotated).unwrap().raw;
            prop_assert!((c1 - c0).abs() <= 1e-9 * c0 + 1e-15);
        }

        #[test]
        fn c2_is_negative(x in 0.01f64..100.0, cutoff in 1.5f64..1e3, mu in 1e-6f64..1e-2) {
            let c = transverse(x, mu);
            let r = c1_c2(&c, LocalTerms::Cutoff(cutoff)).unwrap();
            prop_assert!(r.c2 < 0.0);
        }

        #[test]
        fn effective_state_is_pure(x in 0.05f64..50.0, mu in 0.0f64..1e-5) {
            let s = effective_density_matrix(&transverse(x, mu)).unwrap();
            prop_assert!(s.purity_defect() < 1e-14);
        }
    }
}
