//! One evaluated configuration and its CSV form.

use std::fmt;

use nalgebra::Vector3;

use super::args::{AtomArgs, PolarizationArg, Preset};
use crate::casimir::{self, Polarization};
use crate::entanglement;
use crate::error::{Error, Result};
use crate::model::{
    self, PairConfiguration, PhysicalConstants, Scales, TwoLevelAtom, Validity,
};

/// Column names in output order.
pub const COLUMNS: [&str; 8] = [
    "x",
    "r_over_a0",
    "concurrence_full",
    "concurrence_near",
    "concurrence_far",
    "eof",
    "wcp_energy",
    "validity",
];

/// Everything except the separation.
#[derive(Debug, Clone, PartialEq)]
pub struct Setup {
    pub n_a: Vector3<f64>,
    pub n_b: Vector3<f64>,
    pub r_hat: Vector3<f64>,
    pub mu: f64,
    /// k0 and ħω0 in atomic units when atoms are dimensional.
    pub atomic: Option<Scales>,
    pub polarization: Polarization,
    pub label: String,
}

fn unit(v: Vector3<f64>, what: &str) -> Result<Vector3<f64>> {
    let n = v.norm();
    if n > 0.0 && n.is_finite() {
        Ok(v / n)
    } else {
        Err(Error::Domain(format!("{what} must be a non-zero vector")))
    }
}

impl Setup {
    pub fn from_args(a: &AtomArgs) -> Result<Self> {
        let r_hat = unit(a.r_hat.unwrap_or_else(Vector3::z), "--r-hat")?;
        let polarization = match a.polarization {
            PolarizationArg::Oriented => Polarization::Oriented,
            PolarizationArg::Isotropic => Polarization::Isotropic,
        };
        let consts = PhysicalConstants::ATOMIC;
        let dimensional = |atom_a: TwoLevelAtom, atom_b: TwoLevelAtom, label: String| -> Result<Setup> {
            // μ and the orientations do not depend on the separation
            let cfg = model::reduce(&atom_a, &atom_b, r_hat, &consts)?;
            Ok(Setup {
                n_a: cfg.n_a(),
                n_b: cfg.n_b(),
                r_hat,
                mu: cfg.mu(),
                atomic: Some(Scales::of(&atom_a, &consts)),
                polarization,
                label,
            })
        };
        if let Some(Preset::Hydrogen1s2p) = a.preset {
            let da = unit(a.dipole_a.unwrap_or_else(Vector3::x), "--dipole-a")?;
            let db = unit(a.dipole_b.unwrap_or(da), "--dipole-b")?;
            return dimensional(
                TwoLevelAtom::hydrogen_1s2p(da)?,
                TwoLevelAtom::hydrogen_1s2p(db)?,
                "hydrogen-1s2p".into(),
            );
        }
        if let Some(omega0) = a.omega0 {
            let (Some(da), Some(db)) = (a.dipole_a, a.dipole_b) else {
                return Err(Error::Domain("--omega0 needs --dipole-a and --dipole-b".into()));
            };
            return dimensional(
                TwoLevelAtom::new(omega0, da)?,
                TwoLevelAtom::new(omega0, db)?,
                "custom".into(),
            );
        }
        let Some(mu) = a.mu else {
            return Err(Error::Domain(
                "give --mu, --preset or --omega0 with dipoles".into(),
            ));
        };
        if !(mu >= 0.0 && mu.is_finite()) {
            return Err(Error::Domain(format!("--mu must be >= 0, got {mu}")));
        }
        let n_a = unit(a.dipole_a.unwrap_or_else(Vector3::x), "--dipole-a")?;
        let n_b = unit(a.dipole_b.unwrap_or(n_a), "--dipole-b")?;
        Ok(Setup {
            n_a,
            n_b,
            r_hat,
            mu,
            atomic: None,
            polarization,
            label: "reduced".into(),
        })
    }

    pub fn config(&self, x: f64) -> Result<PairConfiguration> {
        PairConfiguration::new(x, self.n_a, self.n_b, self.r_hat, self.mu)
    }

    fn scales(&self) -> Scales {
        self.atomic.unwrap_or(Scales::REDUCED)
    }

    /// Metadata lines without the leading `# `.
    pub fn describe(&self) -> Vec<String> {
        let v = |v: &Vector3<f64>| format!("{:.16e},{:.16e},{:.16e}", v.x, v.y, v.z);
        let mut lines = vec![
            format!("vacent {}", env!("CARGO_PKG_VERSION")),
            format!("atoms = {}", self.label),
            format!("mu = {:.16e}", self.mu),
            format!("n_a = {}", v(&self.n_a)),
            format!("n_b = {}", v(&self.n_b)),
            format!("r_hat = {}", v(&self.r_hat)),
            format!("polarization = {:?}", self.polarization).to_lowercase(),
        ];
        match self.atomic {
            Some(s) => {
                lines.push(format!("k0 = {:.16e} 1/a0", s.k0));
                lines.push("units = atomic (lengths a0, energies Hartree)".into());
            }
            None => lines.push("units = reduced (energies hbar*omega0)".into()),
        }
        lines
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Row {
    pub x: f64,
    pub r_over_a0: Option<f64>,
    pub concurrence_full: f64,
    pub concurrence_near: f64,
    pub concurrence_far: f64,
    pub eof: f64,
    pub wcp_energy: f64,
    pub validity: Validity,
}

pub fn evaluate(setup: &Setup, x: f64) -> Result<Row> {
    let cfg = setup.config(x)?;
    let full = entanglement::concurrence_full(&cfg)?;
    let w = casimir::wcp_with(
        &cfg,
        &setup.scales(),
        casimir::Method::RotatedContour,
        setup.polarization,
    )?;
    Ok(Row {
        x,
        r_over_a0: setup.atomic.map(|s| x / s.k0),
        concurrence_full: full.value,
        concurrence_near: entanglement::concurrence_near(&cfg).value,
        concurrence_far: entanglement::concurrence_far(&cfg).value,
        eof: entanglement::entanglement_of_formation(full.value)?,
        // avoid a signed zero for decoupled atoms
        wcp_energy: w.energy + 0.0,
        validity: full.validity,
    })
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

impl Row {
    pub fn field(&self, column: &str) -> Option<String> {
        Some(match column {
            "x" => num(self.x),
            "r_over_a0" => self.r_over_a0.map(num).unwrap_or_default(),
            "concurrence_full" => num(self.concurrence_full),
            "concurrence_near" => num(self.concurrence_near),
            "concurrence_far" => num(self.concurrence_far),
            "eof" => num(self.eof),
            "wcp_energy" => num(self.wcp_energy),
            "validity" => self.validity.to_string(),
            _ => return None,
        })
    }

    pub fn to_csv(&self, columns: &[&str]) -> String {
        columns
            .iter()
            .map(|c| self.field(c).unwrap_or_default())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Inverse of [`Row::to_csv`] with all columns.
    pub fn from_csv(header: &str, line: &str) -> Result<Row> {
        let names: Vec<&str> = header.split(',').collect();
        let values: Vec<&str> = line.split(',').collect();
        if names != COLUMNS || values.len() != COLUMNS.len() {
            return Err(Error::Domain("row does not have the full column set".into()));
        }
        let f = |i: usize| -> Result<f64> {
            values[i]
                .parse::<f64>()
                .map_err(|e| Error::Domain(format!("column {}: {e}", names[i])))
        };
        Ok(Row {
            x: f(0)?,
            r_over_a0: if values[1].is_empty() { None } else { Some(f(1)?) },
            concurrence_full: f(2)?,
            concurrence_near: f(3)?,
            concurrence_far: f(4)?,
            eof: f(5)?,
            wcp_energy: f(6)?,
            validity: values[7].parse()?,
        })
    }
}

impl fmt::Display for Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in COLUMNS {
            let value = self.field(c).unwrap_or_default();
            writeln!(f, "{c:<17} = {}", if value.is_empty() { "-" } else { &value })?;
        }
        Ok(())
    }
}

/// Resolves a `--columns` selection to the fixed output order.
pub fn select_columns(spec: Option<&str>) -> Result<Vec<&'static str>> {
    let Some(spec) = spec else {
        return Ok(COLUMNS.to_vec());
    };
    let wanted: Vec<&str> = spec.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    if wanted.is_empty() {
        return Err(Error::Domain("--columns is empty".into()));
    }
    if let Some(bad) = wanted.iter().find(|w| !COLUMNS.contains(w)) {
        return Err(Error::Domain(format!(
            "unknown column '{bad}' (known: {})",
            COLUMNS.join(",")
        )));
    }
    Ok(COLUMNS.iter().copied().filter(|c| wanted.contains(c)).collect())
}

/// Grid with exact end points.
pub fn grid(xmin: f64, xmax: f64, points: usize, log: bool) -> Result<Vec<f64>> {
    if !(xmin.is_finite() && xmax.is_finite() && xmin < xmax) {
        return Err(Error::Domain(format!("need xmin < xmax, got {xmin} and {xmax}")));
    }
    if points < 2 {
        return Err(Error::Domain(format!("need at least 2 points, got {points}")));
    }
    if log && xmin <= 0.0 {
        return Err(Error::Domain("log scale needs xmin > 0".into()));
    }
    let last = (points - 1) as f64;
    Ok((0..points)
        .map(|i| {
            if i == 0 {
                xmin
            } else if i == points - 1 {
                xmax
            } else if log {
                (xmin.ln() + (xmax.ln() - xmin.ln()) * i as f64 / last).exp()
            } else {
                xmin + (xmax - xmin) * i as f64 / last
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reduced(mu: f64) -> Setup {
        Setup {
            n_a: Vector3::x(),
            n_b: Vector3::x(),
            r_hat: Vector3::z(),
            mu,
            atomic: None,
            polarization: Polarization::Oriented,
            label: "reduced".into(),
        }
    }

    #[test]
    fn csv_round_trip_is_bit_exact() {
        for x in [1e-2, 0.337, 1.0, 42.5] {
            let row = evaluate(&reduced(1e-4), x).unwrap();
            let back = Row::from_csv(&COLUMNS.join(","), &row.to_csv(&COLUMNS)).unwrap();
            assert_eq!(back, row);
            assert_eq!(back.wcp_energy.to_bits(), row.wcp_energy.to_bits());
        }
    }

    #[test]
    fn decoupled_atoms_give_zero_columns() {
        let row = evaluate(&reduced(0.0), 1.0).unwrap();
        assert_eq!(row.concurrence_full, 0.0);
        assert_eq!(row.eof, 0.0);
        assert_eq!(row.wcp_energy.to_bits(), 0.0f64.to_bits());
    }

    #[test]
    fn columns_keep_fixed_order() {
        assert_eq!(select_columns(Some("eof,x")).unwrap(), vec!["x", "eof"]);
        assert!(select_columns(Some("x,bogus")).is_err());
        assert!(select_columns(Some("")).is_err());
        assert_eq!(select_columns(None).unwrap().len(), 8);
    }

    #[test]
    fn grids() {
        let g = grid(0.01, 100.0, 81, true).unwrap();
        assert_eq!(g.len(), 81);
        assert_eq!((g[0], g[80]), (0.01, 100.0));
        assert!((g[40] - 1.0).abs() < 1e-14);
        assert_eq!(grid(1.0, 2.0, 2, false).unwrap(), vec![1.0, 2.0]);
        assert!(grid(2.0, 1.0, 5, false).is_err());
        assert!(grid(1.0, 2.0, 1, false).is_err());
        assert!(grid(0.0, 2.0, 5, true).is_err());
    }

    #[test]
    fn hydrogen_setup() {
        let args = AtomArgs {
            mu: None,
            preset: Some(Preset::Hydrogen1s2p),
            omega0: None,
            dipole_a: None,
            dipole_b: None,
            r_hat: None,
            polarization: PolarizationArg::Oriented,
        };
        let s = Setup::from_args(&args).unwrap();
        let d = model::hydrogen_1s2p_dipole();
        let k0 = 0.375 / model::INVERSE_FINE_STRUCTURE;
        assert!((s.mu - d * d * k0.powi(3) / 0.375).abs() < 1e-18);
        let row = evaluate(&s, 10.0 * k0).unwrap();
        assert!((row.r_over_a0.unwrap() - 10.0).abs() < 1e-12);
        assert!((row.concurrence_near - 1.48e-3).abs() < 0.01e-3);
    }
}
