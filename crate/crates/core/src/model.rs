//! Physical constants, atom and geometry records, and the reduction to the
//! dimensionless variables used everywhere else.
//!
//! Internal units are Hartree atomic units with Gaussian electromagnetism:
//! ħ = e = mₑ = a₀ = 1 and c = 1/α. Lengths are in bohr, energies in
//! hartree, dipoles in e·a₀.

use nalgebra::Vector3;

use crate::error::{Error, Result};
use crate::kernel;

/// Inverse fine-structure constant (CODATA 2018).
pub const INVERSE_FINE_STRUCTURE: f64 = 137.035_999_084;

/// Bohr radius in metres (CODATA 2018).
pub const BOHR_RADIUS_M: f64 = 5.291_772_109_03e-11;

/// Lyman-α transition energy of hydrogen, 3/8 hartree.
pub const HYDROGEN_LYMAN_ALPHA: f64 = 0.375;

/// |⟨1s|z|2p₀⟩| = 2⁷√2/3⁵ e·a₀.
pub fn hydrogen_1s2p_dipole() -> f64 {
    128.0 * std::f64::consts::SQRT_2 / 243.0
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub c: f64,
    pub elementary_charge: f64,
    pub bohr_radius: f64,
}

impl PhysicalConstants {
    /// Hartree atomic units, Gaussian convention.
    pub const ATOMIC: PhysicalConstants = PhysicalConstants {
        hbar: 1.0,
        c: INVERSE_FINE_STRUCTURE,
        elementary_charge: 1.0,
        bohr_radius: 1.0,
    };

    /// α = e²/(ħc).
    pub fn fine_structure(&self) -> f64 {
        self.elementary_charge * self.elementary_charge / (self.hbar * self.c)
    }
}

/// One probe atom: transition frequency ω₀ and a real transition dipole.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoLevelAtom {
    omega0: f64,
    dipole: Vector3<f64>,
}

impl TwoLevelAtom {
    pub fn new(omega0: f64, dipole: Vector3<f64>) -> Result<Self> {
        if !(omega0 > 0.0 && omega0.is_finite()) {
            return Err(Error::domain(format!(
                "transition frequency must be positive and finite, got {omega0}"
            )));
        }
        if !dipole.iter().all(|d| d.is_finite()) {
            return Err(Error::domain("dipole components must be finite"));
        }
        Ok(TwoLevelAtom { omega0, dipole })
    }

    /// Hydrogen 1s-2p atom with the dipole along `orientation`.
    pub fn hydrogen_1s2p(orientation: Vector3<f64>) -> Result<Self> {
        let n = unit(orientation, "dipole orientation")?;
        Self::new(HYDROGEN_LYMAN_ALPHA, n * hydrogen_1s2p_dipole())
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn dipole(&self) -> Vector3<f64> {
        self.dipole
    }

    /// k₀ = ω₀/c.
    pub fn k0(&self, consts: &PhysicalConstants) -> f64 {
        self.omega0 / consts.c
    }
}

/// Scales needed to turn reduced results back into atomic units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scales {
    /// Transition wavenumber k₀ (1/bohr).
    pub k0: f64,
    /// Transition energy ħω₀ (hartree).
    pub hbar_omega0: f64,
}

impl Scales {
    /// Identity scales: lengths in units of 1/k₀, energies in units of ħω₀.
    pub const REDUCED: Scales = Scales {
        k0: 1.0,
        hbar_omega0: 1.0,
    };

    pub fn of(atom: &TwoLevelAtom, consts: &PhysicalConstants) -> Self {
        Scales {
            k0: atom.k0(consts),
            hbar_omega0: consts.hbar * atom.omega0(),
        }
    }
}

/// Dimensionless description of the pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairConfiguration {
    x: f64,
    n_a: Vector3<f64>,
    n_b: Vector3<f64>,
    r_hat: Vector3<f64>,
    mu: f64,
}

const UNIT_TOL: f64 = 1e-12;

fn check_unit(v: &Vector3<f64>, what: &str) -> Result<()> {
    if (v.norm() - 1.0).abs() > UNIT_TOL {
        return Err(Error::domain(format!("{what} must be a unit vector, |v| = {}", v.norm())));
    }
    Ok(())
}

fn unit(v: Vector3<f64>, what: &str) -> Result<Vector3<f64>> {
    let n = v.norm();
    if !(n > 0.0 && n.is_finite()) {
        return Err(Error::domain(format!("{what} must be a non-zero finite vector")));
    }
    Ok(v / n)
}

impl PairConfiguration {
    /// Validating constructor. Orientation vectors must already be unit
    /// length to 1e-12; use [`PairConfiguration::normalized`] otherwise.
    pub fn new(
        x: f64,
        n_a: Vector3<f64>,
        n_b: Vector3<f64>,
        r_hat: Vector3<f64>,
        mu: f64,
    ) -> Result<Self> {
        if !(x > 0.0 && x.is_finite()) {
            return Err(Error::domain(format!("x = k0 R must be positive and finite, got {x}")));
        }
        if !(mu >= 0.0 && mu.is_finite()) {
            return Err(Error::domain(format!("coupling mu must be >= 0, got {mu}")));
        }
        check_unit(&n_a, "n_a")?;
        check_unit(&n_b, "n_b")?;
        check_unit(&r_hat, "r_hat")?;
        Ok(PairConfiguration {
            x,
            n_a,
            n_b,
            r_hat,
            mu,
        })
    }

    /// Like [`PairConfiguration::new`] but normalizes the three directions.
    pub fn normalized(
        x: f64,
        dir_a: Vector3<f64>,
        dir_b: Vector3<f64>,
        r_dir: Vector3<f64>,
        mu: f64,
    ) -> Result<Self> {
        Self::new(
            x,
            unit(dir_a, "dipole a")?,
            unit(dir_b, "dipole b")?,
            unit(r_dir, "separation direction")?,
            mu,
        )
    }

    pub fn x(&self) -> f64 {
        self.x
    }
    pub fn n_a(&self) -> Vector3<f64> {
        self.n_a
    }
    pub fn n_b(&self) -> Vector3<f64> {
        self.n_b
    }
    pub fn r_hat(&self) -> Vector3<f64> {
        self.r_hat
    }
    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn with_x(&self, x: f64) -> Result<Self> {
        Self::new(x, self.n_a, self.n_b, self.r_hat, self.mu)
    }

    pub fn with_mu(&self, mu: f64) -> Result<Self> {
        Self::new(self.x, self.n_a, self.n_b, self.r_hat, mu)
    }

    /// κ_near = n_a·n_b − 3(n_a·r̂)(n_b·r̂).
    pub fn near_orientation_factor(&self) -> f64 {
        self.n_a.dot(&self.n_b) - 3.0 * self.n_a.dot(&self.r_hat) * self.n_b.dot(&self.r_hat)
    }

    /// κ_far = n_a·n_b − 2(n_a·r̂)(n_b·r̂).
    pub fn far_orientation_factor(&self) -> f64 {
        self.n_a.dot(&self.n_b) - 2.0 * self.n_a.dot(&self.r_hat) * self.n_b.dot(&self.r_hat)
    }
}

/// Reduces two atoms and their separation `R = R_A − R_B` to a
/// [`PairConfiguration`]. A vanishing dipole gets the orientation x̂ and
/// contributes μ = 0.
pub fn reduce(
    atom_a: &TwoLevelAtom,
    atom_b: &TwoLevelAtom,
    separation: Vector3<f64>,
    consts: &PhysicalConstants,
) -> Result<PairConfiguration> {
    let (wa, wb) = (atom_a.omega0(), atom_b.omega0());
    if (wa - wb).abs() > 1e-9 * wa.max(wb) {
        return Err(Error::FrequencyMismatch { a: wa, b: wb });
    }
    let r = separation.norm();
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::domain("separation must be non-zero and finite"));
    }
    let k0 = atom_a.k0(consts);
    let orientation = |d: Vector3<f64>| {
        if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Vector3::x()
        }
    };
    let da = atom_a.dipole().norm();
    let db = atom_b.dipole().norm();
    let mu = da * db * k0.powi(3) / (consts.hbar * wa);
    PairConfiguration::new(
        k0 * r,
        orientation(atom_a.dipole()),
        orientation(atom_b.dipole()),
        separation / r,
        mu,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Validity {
    Ok,
    Warn,
    Invalid,
}

impl Validity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Validity::Ok => "OK",
            Validity::Warn => "WARN",
            Validity::Invalid => "INVALID",
        }
    }
}

impl std::fmt::Display for Validity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Validity {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "OK" => Ok(Validity::Ok),
            "WARN" => Ok(Validity::Warn),
            "INVALID" => Ok(Validity::Invalid),
            other => Err(Error::domain(format!("unknown validity flag {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidityReport {
    pub flag: Validity,
    /// The predicted concurrence, which doubles as the expansion parameter.
    pub margin: f64,
}

/// Second-order perturbation theory is trusted while the predicted
/// concurrence stays below 0.1; above 1 it has certainly broken down.
pub fn perturbative_validity(cfg: &PairConfiguration) -> ValidityReport {
    let margin = kernel::dipole_tensor(cfg.x())
        .and_then(|t| t.contract(cfg.n_a(), cfg.n_b(), cfg.r_hat()))
        .map(|t| 2.0 * cfg.mu() / std::f64::consts::PI * t.abs())
        .unwrap_or(f64::INFINITY);
    let flag = if margin <= 0.1 {
        Validity::Ok
    } else if margin <= 1.0 {
        Validity::Warn
    } else {
        Validity::Invalid
    };
    ValidityReport { flag, margin }
}
