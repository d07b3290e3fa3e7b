use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::Vector3;

#[derive(Debug, Parser)]
#[command(
    name = "vacent",
    version,
    about = "Vacuum-induced entanglement and Casimir-Polder energy of two two-level atoms",
    args_override_self = true
)]
pub struct Cli {
    /// Flat key=value file mirroring the flags; flags on the command line win.
    /// Defaults to $VACENT_CONFIG when set.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate every quantity at one separation.
    #[command(args_override_self = true)]
    Point(PointArgs),
    /// Evaluate a grid of separations and write CSV.
    #[command(args_override_self = true)]
    Sweep(SweepArgs),
    /// Run the closed-form versus oracle comparisons.
    #[command(args_override_self = true)]
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    #[value(name = "hydrogen-1s2p")]
    Hydrogen1s2p,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Units {
    /// Lengths in Bohr radii, energies in Hartree.
    #[default]
    Atomic,
    /// Lengths in metres.
    Si,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Scale {
    #[default]
    Log,
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum PolarizationArg {
    #[default]
    Oriented,
    Isotropic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum LevelArg {
    #[default]
    Fast,
    Full,
}

pub(crate) fn parse_vec3(s: &str) -> Result<Vector3<f64>, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated numbers, got '{s}'"));
    }
    let mut v = [0.0; 3];
    for (slot, p) in v.iter_mut().zip(&parts) {
        *slot = p.parse::<f64>().map_err(|e| format!("'{p}': {e}"))?;
        if !slot.is_finite() {
            return Err(format!("'{p}' is not finite"));
        }
    }
    Ok(Vector3::from(v))
}

/// Atoms and geometry shared by `point` and `sweep`.
#[derive(Debug, Clone, Args)]
pub struct AtomArgs {
    /// Dimensionless coupling |d_A||d_B|k0³/(ħω0).
    #[arg(long, allow_negative_numbers = true, conflicts_with_all = ["preset", "omega0"])]
    pub mu: Option<f64>,

    /// Built-in atom pair; dipole flags then only set orientations.
    #[arg(long, value_enum, conflicts_with = "omega0")]
    pub preset: Option<Preset>,

    /// Transition frequency in Hartree (both atoms).
    #[arg(long, allow_negative_numbers = true)]
    pub omega0: Option<f64>,

    /// Dipole of atom A as x,y,z (e·a0 with --omega0, orientation otherwise).
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
    pub dipole_a: Option<Vector3<f64>>,

    /// Dipole of atom B as x,y,z.
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
    pub dipole_b: Option<Vector3<f64>>,

    /// Separation direction R_A − R_B as x,y,z.
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true)]
    pub r_hat: Option<Vector3<f64>>,

    #[arg(long, value_enum, default_value_t = PolarizationArg::Oriented)]
    pub polarization: PolarizationArg,
}

#[derive(Debug, Clone, Args)]
pub struct PointArgs {
    #[command(flatten)]
    pub atoms: AtomArgs,

    /// Reduced separation k0 R.
    #[arg(long, allow_negative_numbers = true, conflicts_with = "r", required_unless_present = "r")]
    pub x: Option<f64>,

    /// Separation in the length unit given by --units (needs a dimensional atom).
    #[arg(long, allow_negative_numbers = true)]
    pub r: Option<f64>,

    #[arg(long, value_enum, default_value_t = Units::Atomic)]
    pub units: Units,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub atoms: AtomArgs,

    #[arg(long, allow_negative_numbers = true)]
    pub xmin: f64,

    #[arg(long, allow_negative_numbers = true)]
    pub xmax: f64,

    #[arg(long)]
    pub points: usize,

    #[arg(long, value_enum, default_value_t = Scale::Log)]
    pub scale: Scale,

    /// Comma-separated subset of the columns; output keeps the fixed order.
    #[arg(long)]
    pub columns: Option<String>,

    /// Output file, or '-' for standard output.
    #[arg(long, default_value = "-")]
    pub output: String,
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    #[arg(long, value_enum, default_value_t = LevelArg::Fast)]
    pub level: LevelArg,

    /// Relative change applied to the closed-form transverse kernel, to
    /// check that the suite notices.
    #[arg(long, hide = true, allow_negative_numbers = true)]
    pub perturb_tau_trans: Option<f64>,
}
