//! Two-qubit states and their entanglement measures.
//!
//! Basis order is (ee, eg, ge, gg), with e the spin-up state of S_z.

use nalgebra::{Matrix2, Matrix3, Matrix4, Vector4};
use num_complex::Complex64;

use crate::error::{Error, Result};

const HERMITIAN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;
const PSD_TOL: f64 = 1e-10;
const X_STRUCTURE_TOL: f64 = 1e-12;

/// Entries outside the main and anti-diagonal.
const OFF_X: [(usize, usize); 8] = [
    (0, 1),
    (0, 2),
    (1, 0),
    (1, 3),
    (2, 0),
    (2, 3),
    (3, 1),
    (3, 2),
];

#[derive(Debug, Clone, PartialEq)]
pub struct TwoQubitState {
    matrix: Matrix4<Complex64>,
}

impl TwoQubitState {
    /// Validates Hermiticity, unit trace and positive semidefiniteness.
    pub fn new(matrix: Matrix4<Complex64>) -> Result<Self> {
        if matrix.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::domain("density matrix has non-finite entries"));
        }
        let asym = (matrix - matrix.adjoint()).iter().map(|v| v.norm()).fold(0.0, f64::max);
        if asym > HERMITIAN_TOL {
            return Err(Error::domain(format!("density matrix is not Hermitian ({asym:e})")));
        }
        let tr = matrix.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > TRACE_TOL {
            return Err(Error::domain(format!("density matrix trace is {tr}, expected 1")));
        }
        let hermitian = (matrix + matrix.adjoint()) * Complex64::new(0.5, 0.0);
        let min_eig = hermitian.symmetric_eigenvalues().min();
        if min_eig < -PSD_TOL {
            return Err(Error::domain(format!(
                "density matrix is not positive semidefinite (eigenvalue {min_eig:e})"
            )));
        }
        Ok(TwoQubitState { matrix })
    }

    /// |ψ⟩⟨ψ| for a (not necessarily normalized) state vector.
    pub fn pure(psi: Vector4<Complex64>) -> Result<Self> {
        let n = psi.norm();
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::domain("state vector must be non-zero"));
        }
        let psi = psi.unscale(n);
        Self::new(psi * psi.adjoint())
    }

    pub fn matrix(&self) -> &Matrix4<Complex64> {
        &self.matrix
    }

    pub fn element(&self, i: usize, j: usize) -> Complex64 {
        self.matrix[(i, j)]
    }

    /// True when all weight sits on the main and anti-diagonal.
    pub fn is_x_state(&self) -> bool {
        let off: f64 = OFF_X.iter().map(|&(i, j)| self.matrix[(i, j)].norm()).sum();
        off < X_STRUCTURE_TOL
    }

    /// ‖ρ² − ρ‖_F, zero for pure states.
    pub fn purity_defect(&self) -> f64 {
        (self.matrix * self.matrix - self.matrix).norm()
    }

    pub fn expectation(&self, op: &Matrix4<Complex64>) -> Complex64 {
        (self.matrix * op).trace()
    }
}

fn spin_flip() -> Matrix4<Complex64> {
    let sy = pauli_y();
    sy.kronecker(&sy)
}

fn pauli_x() -> Matrix2<Complex64> {
    Matrix2::new(0.0, 1.0, 1.0, 0.0).map(|v| Complex64::new(v, 0.0))
}

fn pauli_y() -> Matrix2<Complex64> {
    let i = Complex64::i();
    Matrix2::new(Complex64::default(), -i, i, Complex64::default())
}

fn pauli_z() -> Matrix2<Complex64> {
    Matrix2::new(1.0, 0.0, 0.0, -1.0).map(|v| Complex64::new(v, 0.0))
}

fn hermitian_sqrt(m: &Matrix4<Complex64>) -> Matrix4<Complex64> {
    let eig = m.symmetric_eigen();
    let roots = eig.eigenvalues.map(|l| Complex64::new(l.max(0.0).sqrt(), 0.0));
    let v = &eig.eigenvectors;
    v * Matrix4::from_diagonal(&roots) * v.adjoint()
}

/// Wootters concurrence through the singular values of √ρ (σy⊗σy) √ρ*,
/// which are the square roots of the eigenvalues of ρ(σy⊗σy)ρ*(σy⊗σy).
pub fn wootters_concurrence_dense(state: &TwoQubitState) -> f64 {
    let root = hermitian_sqrt(state.matrix());
    let product = root * spin_flip() * root.map(|v| v.conj());
    let mut s: Vec<f64> = product.singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    (s[0] - s[1] - s[2] - s[3]).clamp(0.0, 1.0)
}

/// Closed form for X-states: 2 max(0, |ρ₁₄| − √(ρ₂₂ρ₃₃), |ρ₂₃| − √(ρ₁₁ρ₄₄)).
pub fn x_state_concurrence(state: &TwoQubitState) -> f64 {
    let d = |i: usize| state.element(i, i).re.max(0.0);
    let a = state.element(0, 3).norm() - (d(1) * d(2)).sqrt();
    let b = state.element(1, 2).norm() - (d(0) * d(3)).sqrt();
    (2.0 * a.max(b).max(0.0)).min(1.0)
}

/// C = max(0, α₁ − α₂ − α₃ − α₄); X-states take the closed-form path.
pub fn wootters_concurrence(state: &TwoQubitState) -> f64 {
    if state.is_x_state() {
        x_state_concurrence(state)
    } else {
        wootters_concurrence_dense(state)
    }
}

/// E_F = −x log₂x − (1−x) log₂(1−x) with x = (1 + √(1−C²))/2.
pub fn entanglement_of_formation(c: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&c) {
        return Err(Error::domain(format!("concurrence must lie in [0, 1], got {c}")));
    }
    let root = (1.0 - c * c).sqrt();
    // 1 − x without cancellation for small C
    let small = c * c / (2.0 * (1.0 + root));
    let large = 1.0 - small;
    let h = |p: f64| if p > 0.0 { -p * p.log2() } else { 0.0 };
    Ok(h(large) + h(small))
}

/// Spin correlators of a two-qubit state with S = σ/2.
///
/// `m_z` and `delta_s_z` are the half-sum and half-difference
/// ⟨S_z^A ± S_z^B⟩/2, the normalization under which the correlator form of
/// the concurrence reproduces the X-state closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinCorrelators {
    /// g_ij = ⟨S_i^A S_j^B⟩.
    pub g: Matrix3<f64>,
    pub m_z: f64,
    pub delta_s_z: f64,
}

impl SpinCorrelators {
    pub fn from_state(state: &TwoQubitState) -> Self {
        let half = Complex64::new(0.5, 0.0);
        let spins = [pauli_x() * half, pauli_y() * half, pauli_z() * half];
        let id = Matrix2::<Complex64>::identity();
        let g = Matrix3::from_fn(|i, j| state.expectation(&spins[i].kronecker(&spins[j])).re);
        let sz_a = state.expectation(&spins[2].kronecker(&id)).re;
        let sz_b = state.expectation(&id.kronecker(&spins[2])).re;
        SpinCorrelators {
            g,
            m_z: 0.5 * (sz_a + sz_b),
            delta_s_z: 0.5 * (sz_a - sz_b),
        }
    }
}

/// The two branches C₁, C₂ of the correlator form.
pub fn palma_terms(corr: &SpinCorrelators) -> Result<(f64, f64)> {
    let g = &corr.g;
    let radicand = |v: f64| -> Result<f64> {
        if v < -1e-12 {
            Err(Error::domain(format!(
                "inconsistent spin correlators: negative radicand {v:e}"
            )))
        } else {
            Ok(v.max(0.0).sqrt())
        }
    };
    let c1 = (g[(0, 0)] - g[(1, 1)]).hypot(g[(0, 1)] + g[(1, 0)])
        - radicand((0.25 - g[(2, 2)]).powi(2) - corr.delta_s_z.powi(2))?;
    let c2 = (g[(0, 0)] + g[(1, 1)]).hypot(g[(0, 1)] - g[(1, 0)])
        - radicand((0.25 + g[(2, 2)]).powi(2) - corr.m_z.powi(2))?;
    Ok((c1, c2))
}

/// C = 2 max(0, C₁, C₂), valid for states supported on the two diagonals.
pub fn palma_concurrence(corr: &SpinCorrelators) -> Result<f64> {
    let (c1, c2) = palma_terms(corr)?;
    Ok(2.0 * c1.max(c2).max(0.0))
}
