//! Paired closed-form / oracle comparisons behind `vacent validate`.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::{Matrix4, Vector3};
use num_complex::Complex64;

use crate::casimir::{self, Method, Polarization};
use crate::entanglement::{self, LocalTerms, TwoQubitState};
use crate::error::Result;
use crate::kernel;
use crate::model::{PairConfiguration, Scales};
use crate::oracle::{self, AuxKind};
use crate::specfun;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Fast,
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteOptions {
    pub level: Level,
    /// Multiplies the closed-form transverse kernel before comparison.
    pub tau_trans_scale: f64,
}

impl SuiteOptions {
    pub fn new(level: Level) -> Self {
        SuiteOptions {
            level,
            tau_trans_scale: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Criterion {
    Relative(f64),
    Absolute(f64),
    Negative,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub observed: f64,
    pub expected: f64,
    pub criterion: Criterion,
    pub passed: bool,
}

impl Check {
    fn new(name: impl Into<String>, observed: f64, expected: f64, criterion: Criterion) -> Self {
        let passed = match criterion {
            Criterion::Relative(tol) => {
                observed.is_finite()
                    && ((observed - expected).abs() <= tol * expected.abs()
                        || observed == expected)
            }
            Criterion::Absolute(tol) => observed.is_finite() && (observed - expected).abs() <= tol,
            Criterion::Negative => observed < 0.0,
        };
        Check {
            name: name.into(),
            observed,
            expected,
            criterion,
            passed,
        }
    }

    fn failed(name: impl Into<String>, criterion: Criterion) -> Self {
        Check {
            name: name.into(),
            observed: f64::NAN,
            expected: f64::NAN,
            criterion,
            passed: false,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tol = match self.criterion {
            Criterion::Relative(t) => format!("rel {t:.0e}"),
            Criterion::Absolute(t) => format!("abs {t:.0e}"),
            Criterion::Negative => "< 0".into(),
        };
        write!(
            f,
            "{} {:<62} observed {:>24.16e} expected {:>24.16e} ({tol})",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.observed,
            self.expected
        )
    }
}

struct Suite {
    checks: Vec<Check>,
}

impl Suite {
    fn push(&mut self, name: String, criterion: Criterion, pair: Result<(f64, f64)>) {
        self.checks.push(match pair {
            Ok((obs, exp)) => Check::new(name, obs, exp, criterion),
            Err(e) => {
                let mut c = Check::failed(format!("{name} [{e}]"), criterion);
                c.passed = false;
                c
            }
        });
    }
}

fn ex() -> Vector3<f64> {
    Vector3::x()
}
fn ez() -> Vector3<f64> {
    Vector3::z()
}

fn geometries() -> Vec<(&'static str, Vector3<f64>, Vector3<f64>)> {
    vec![
        ("transverse-parallel", ex(), ex()),
        ("longitudinal", ez(), ez()),
        ("mixed", Vector3::new(2.0, 0.0, 1.0).normalize(), Vector3::new(2.0, 0.0, 1.0).normalize()),
    ]
}

fn check_kernel_vs_modesum(suite: &mut Suite, xs: &[f64], scale: f64) {
    for &x in xs {
        for (name, a, b) in geometries() {
            let pair = kernel::dipole_tensor(x).and_then(|t| {
                let t = kernel::DipoleTensor {
                    transverse: t.transverse * scale,
                    ..t
                };
                let closed = t.contract(a, b, ez())? / PI;
                let o = oracle::modesum_first_order(x, a, b, ez())?;
                Ok((closed, o.value))
            });
            suite.push(
                format!("kernel.dipole_tensor/oracle.modesum_first_order {name} x={x}"),
                Criterion::Relative(1e-6),
                pair,
            );
        }
    }
}

fn check_second_order(suite: &mut Suite, xs: &[f64]) {
    for &x in xs {
        for (name, a, b) in geometries().into_iter().take(2) {
            let pair = kernel::cross_coherence_tensor(x).and_then(|t| {
                let o = oracle::modesum_second_order(x, a, b, ez())?;
                Ok((t.contract(a, b, ez())? / PI, o.value))
            });
            suite.push(
                format!("kernel.cross_coherence_tensor/oracle.modesum_second_order {name} x={x}"),
                Criterion::Relative(1e-6),
                pair,
            );
        }
    }
}

fn check_aux(suite: &mut Suite, xs: &[f64]) {
    for &x in xs {
        for (kind, label) in [(AuxKind::F, "f"), (AuxKind::G, "g")] {
            let pair = specfun::aux(x).and_then(|v| {
                let o = oracle::aux_integral_rep(x, kind)?;
                Ok((if kind == AuxKind::F { v.f } else { v.g }, o.value))
            });
            suite.push(
                format!("specfun.aux/oracle.aux_integral_rep {label} x={x}"),
                Criterion::Absolute(1e-10),
                pair,
            );
        }
    }
}

fn transverse(x: f64, mu: f64) -> Result<PairConfiguration> {
    PairConfiguration::new(x, ex(), ex(), ez(), mu)
}

fn check_regimes(suite: &mut Suite) {
    for x in [0.005, 0.02] {
        let pair = transverse(x, 1e-9).and_then(|c| {
            Ok((entanglement::concurrence_full(&c)?.raw, entanglement::concurrence_near(&c).raw))
        });
        suite.push(format!("entanglement.concurrence_full/near x={x}"), Criterion::Relative(1e-2), pair);
    }
    for x in [100.0, 200.0] {
        let pair = transverse(x, 1.0).and_then(|c| {
            Ok((entanglement::concurrence_full(&c)?.raw, entanglement::concurrence_far(&c).raw))
        });
        suite.push(format!("entanglement.concurrence_full/far x={x}"), Criterion::Relative(1e-2), pair);
    }
}

/// Deterministic X-states spread over the parameter box.
fn x_states(n: usize) -> Vec<TwoQubitState> {
    let frac = |k: usize, m: f64| ((k as f64 + 1.0) * m).fract();
    (0..n)
        .filter_map(|k| {
            let w: Vec<f64> = (0..4).map(|j| frac(k, 0.618_034 + 0.1 * j as f64) + 1e-3).collect();
            let total: f64 = w.iter().sum();
            let p: Vec<f64> = w.iter().map(|v| v / total).collect();
            let c14 = Complex64::from_polar(frac(k, 0.414) * (p[0] * p[3]).sqrt(), 6.0 * frac(k, 0.732));
            let c23 = Complex64::from_polar(frac(k, 0.236) * (p[1] * p[2]).sqrt(), 6.0 * frac(k, 0.302));
            let mut m = Matrix4::<Complex64>::zeros();
            for i in 0..4 {
                m[(i, i)] = Complex64::new(p[i], 0.0);
            }
            m[(0, 3)] = c14;
            m[(3, 0)] = c14.conj();
            m[(1, 2)] = c23;
            m[(2, 1)] = c23.conj();
            TwoQubitState::new(m).ok()
        })
        .collect()
}

fn check_entanglement_algebra(suite: &mut Suite, n: usize) {
    let worst = x_states(n)
        .iter()
        .map(|s| {
            (entanglement::wootters_concurrence_dense(s) - entanglement::x_state_concurrence(s)).abs()
        })
        .fold(0.0, f64::max);
    suite.push(
        format!("entanglement.wootters dense/X-state closed form ({n} states, max dev)"),
        Criterion::Absolute(1e-10),
        Ok((worst, 0.0)),
    );
    for c in [0.0, 1.0] {
        suite.push(
            format!("entanglement.entanglement_of_formation C={c}"),
            Criterion::Absolute(0.0),
            entanglement::entanglement_of_formation(c).map(|e| (e, c)),
        );
    }
}

fn check_c2(suite: &mut Suite) {
    for x in [0.1, 1.0, 10.0] {
        for cutoff in [10.0, 100.0, 1000.0] {
            let r = transverse(x, 1e-3).and_then(|c| entanglement::c1_c2(&c, LocalTerms::Cutoff(cutoff)));
            suite.push(
                format!("entanglement.c1_c2 c2 x={x} cutoff={cutoff}"),
                Criterion::Negative,
                r.map(|r| (r.c2, 0.0)),
            );
        }
    }
}

fn check_local_population(suite: &mut Suite) {
    let j = |l: f64| l * l / 2.0 - 2.0 * l + 3.0 * (1.0 + l).ln() + 1.0 / (1.0 + l) - 1.0;
    for cutoff in [10.0, 100.0, 1000.0] {
        suite.push(
            format!("oracle.local_population/antiderivative cutoff={cutoff}"),
            Criterion::Relative(1e-12),
            oracle::local_population(cutoff).map(|r| (r.value, 2.0 / (3.0 * PI) * j(cutoff))),
        );
    }
}

fn check_casimir_near(suite: &mut Suite) {
    let pair = transverse(0.01, 1e-3).and_then(|c| {
        Ok((
            casimir::wcp(&c, &Scales::REDUCED)?.energy,
            casimir::vdw_near(&c, &Scales::REDUCED).energy,
        ))
    });
    suite.push("casimir.wcp/vdw_near x=0.01".into(), Criterion::Relative(1e-2), pair);
}

fn check_casimir_paths(suite: &mut Suite, xs: &[f64]) {
    for &x in xs {
        let pair = transverse(x, 1e-3).and_then(|c| {
            let a = casimir::wcp_with(&c, &Scales::REDUCED, Method::RotatedContour, Polarization::Oriented)?;
            let b = casimir::wcp_with(&c, &Scales::REDUCED, Method::PrincipalValueOracle, Polarization::Oriented)?;
            Ok((a.energy, b.energy))
        });
        suite.push(
            format!("casimir.wcp contour/oracle.wcp_principal_value x={x}"),
            Criterion::Relative(1e-6),
            pair,
        );
    }
}

fn check_far_correlator(suite: &mut Suite) {
    for x in [100.0, 200.0] {
        let pair = transverse(x, 1.0).and_then(|c| {
            Ok((
                casimir::far_zone_concurrence_from_correlator(&c)?,
                entanglement::concurrence_far(&c).raw,
            ))
        });
        suite.push(
            format!("oracle.field_correlator/entanglement.concurrence_far x={x}"),
            Criterion::Relative(1e-2),
            pair,
        );
    }
}

pub fn run_suite(opts: SuiteOptions) -> Vec<Check> {
    let mut suite = Suite { checks: Vec::new() };
    let full = opts.level == Level::Full;
    let grid: &[f64] = if full {
        &[0.01, 0.05, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 30.0, 100.0]
    } else {
        &[0.1, 1.0, 10.0]
    };
    check_aux(&mut suite, grid);
    check_kernel_vs_modesum(&mut suite, grid, opts.tau_trans_scale);
    check_second_order(&mut suite, if full { &grid[..9] } else { &[0.5, 5.0] });
    check_regimes(&mut suite);
    check_entanglement_algebra(&mut suite, if full { 1000 } else { 100 });
    check_c2(&mut suite);
    check_local_population(&mut suite);
    check_casimir_near(&mut suite);
    if full {
        check_casimir_paths(&mut suite, &[0.5, 1.0, 2.0, 5.0]);
        check_far_correlator(&mut suite);
    }
    suite.checks
}
