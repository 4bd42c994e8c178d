//! Brute-force oracle: full density-matrix conjugation by an explicit
//! controlled-rotation unitary, followed by an explicit crush.
//!
//! This module deliberately shares no code with the population kernel. It
//! exists to validate `gate::apply_gate` on small systems; the fast path
//! never calls it. Dense matrices limit it to a handful of qubits, which is
//! exactly why the population calculus is the primary representation.

use crate::error::{Error, Result};
use num_complex::Complex64;

pub const HERMITICITY_TOLERANCE: f64 = 1e-12;

/// Rotation axis of the controlled rotation. The crush erases the choice;
/// both are provided so tests can demonstrate that.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RotationAxis {
    X,
    Y,
}

/// A dense 2^n x 2^n complex matrix, row major.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    dim: usize,
    entries: Vec<Complex64>,
}

impl DensityMatrix {
    pub fn zeros(n_qubits: usize) -> Self {
        let dim = 1 << n_qubits;
        Self {
            n_qubits,
            dim,
            entries: vec![Complex64::ZERO; dim * dim],
        }
    }

    /// Diagonal matrix from real populations (length must be a power of two).
    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        let dim = diag.len();
        let n_qubits = dim.trailing_zeros() as usize;
        if dim == 0 || dim != 1 << n_qubits {
            return Err(Error::BadStateLength {
                len: dim,
                n_qubits,
            });
        }
        let mut m = Self::zeros(n_qubits);
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        Ok(m)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self[(i, i)].re).collect()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn max_offdiagonal(&self) -> f64 {
        let mut max = 0.0f64;
        for r in 0..self.dim {
            for c in 0..self.dim {
                if r != c {
                    max = max.max(self[(r, c)].norm());
                }
            }
        }
        max
    }

    pub fn is_hermitian(&self) -> bool {
        for r in 0..self.dim {
            for c in 0..=r {
                if (self[(r, c)] - self[(c, r)].conj()).norm() > HERMITICITY_TOLERANCE {
                    return false;
                }
            }
        }
        true
    }

    fn mul(&self, rhs: &Self) -> Self {
        let dim = self.dim;
        let mut out = Self::zeros(self.n_qubits);
        for r in 0..dim {
            for k in 0..dim {
                let a = self[(r, k)];
                if a == Complex64::ZERO {
                    continue;
                }
                for c in 0..dim {
                    out[(r, c)] += a * rhs[(k, c)];
                }
            }
        }
        out
    }

    fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.n_qubits);
        for r in 0..self.dim {
            for c in 0..self.dim {
                out[(c, r)] = self[(r, c)].conj();
            }
        }
        out
    }

    /// U rho U^dagger.
    pub fn conjugated_by(&self, u: &Self) -> Self {
        u.mul(self).mul(&u.adjoint())
    }
}

impl std::ops::Index<(usize, usize)> for DensityMatrix {
    type Output = Complex64;
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.entries[r * self.dim + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DensityMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[r * self.dim + c]
    }
}

/// The controlled-rotation unitary about the x axis: identity on the
/// control=0 subspace, single-qubit rotation on the target within the
/// control=1 subspace. Qubits are 1-based with qubit 1 the most significant
/// basis bit, matching the population convention.
pub fn controlled_rotation_unitary(
    n: usize,
    control: usize,
    target: usize,
    theta: f64,
) -> Result<DensityMatrix> {
    controlled_rotation_unitary_about(n, control, target, theta, RotationAxis::X)
}

pub fn controlled_rotation_unitary_about(
    n: usize,
    control: usize,
    target: usize,
    theta: f64,
    axis: RotationAxis,
) -> Result<DensityMatrix> {
    for idx in [control, target] {
        if idx == 0 || idx > n {
            return Err(Error::IndexOutOfRange {
                index: idx,
                n_qubits: n,
            });
        }
    }
    if control == target {
        return Err(Error::ControlEqualsTarget(control));
    }
    let (half_c, half_s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    // 2x2 single-qubit rotation block [[r00, r01], [r10, r11]].
    let (r00, r01, r10, r11) = match axis {
        RotationAxis::X => (
            Complex64::new(half_c, 0.0),
            Complex64::new(0.0, -half_s),
            Complex64::new(0.0, -half_s),
            Complex64::new(half_c, 0.0),
        ),
        RotationAxis::Y => (
            Complex64::new(half_c, 0.0),
            Complex64::new(-half_s, 0.0),
            Complex64::new(half_s, 0.0),
            Complex64::new(half_c, 0.0),
        ),
    };

    let dim = 1 << n;
    let cmask = 1usize << (n - control);
    let tmask = 1usize << (n - target);
    let mut u = DensityMatrix::zeros(n);
    for s in 0..dim {
        if s & cmask == 0 {
            u[(s, s)] = Complex64::ONE;
        } else if s & tmask == 0 {
            let hi = s | tmask;
            u[(s, s)] = r00;
            u[(s, hi)] = r01;
            u[(hi, s)] = r10;
            u[(hi, hi)] = r11;
        }
    }
    Ok(u)
}

/// Zero every off-diagonal entry: the action of a perfect crush gradient.
pub fn crush(rho: &DensityMatrix) -> DensityMatrix {
    let mut out = DensityMatrix::zeros(rho.n_qubits);
    for i in 0..rho.dim {
        out[(i, i)] = rho[(i, i)];
    }
    out
}

/// Full-matrix reference for one controlled-transfer gate: conjugate by the
/// rotation unitary, then crush. Input must be diagonal; the oracle contract
/// does not cover coherent inputs.
pub fn apply_gate_ref(
    rho: &DensityMatrix,
    control: usize,
    target: usize,
    theta: f64,
) -> Result<DensityMatrix> {
    apply_gate_ref_about(rho, control, target, theta, RotationAxis::X)
}

pub fn apply_gate_ref_about(
    rho: &DensityMatrix,
    control: usize,
    target: usize,
    theta: f64,
    axis: RotationAxis,
) -> Result<DensityMatrix> {
    let max_offdiag = rho.max_offdiagonal();
    if max_offdiag > HERMITICITY_TOLERANCE {
        return Err(Error::NonDiagonalInput { max_offdiag });
    }
    let u = controlled_rotation_unitary_about(rho.n_qubits, control, target, theta, axis)?;
    Ok(crush(&rho.conjugated_by(&u)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn theta_zero_is_identity() {
        let u = controlled_rotation_unitary(2, 1, 2, 0.0).unwrap();
        for r in 0..4 {
            for c in 0..4 {
                let expect = if r == c { Complex64::ONE } else { Complex64::ZERO };
                assert_abs_diff_eq!((u[(r, c)] - expect).norm(), 0.0, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn theta_pi_acts_as_cnot_on_populations() {
        let rho = DensityMatrix::from_diagonal(&[0.1, 0.2, 0.3, 0.4]).unwrap();
        let out = apply_gate_ref(&rho, 1, 2, PI).unwrap();
        let diag = out.diagonal();
        assert_abs_diff_eq!(diag[0], 0.1, epsilon = 1e-14);
        assert_abs_diff_eq!(diag[1], 0.2, epsilon = 1e-14);
        assert_abs_diff_eq!(diag[2], 0.4, epsilon = 1e-14);
        assert_abs_diff_eq!(diag[3], 0.3, epsilon = 1e-14);
    }

    #[test]
    fn half_pi_splits_a_population_evenly() {
        let rho = DensityMatrix::from_diagonal(&[0.0, 0.0, 1.0, 0.0]).unwrap();
        let out = apply_gate_ref(&rho, 1, 2, FRAC_PI_2).unwrap();
        let diag = out.diagonal();
        assert_abs_diff_eq!(diag[2], 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(diag[3], 0.5, epsilon = 1e-14);
    }

    #[test]
    fn crush_preserves_trace_and_diagonal() {
        let mut rho = DensityMatrix::from_diagonal(&[0.5, 0.5]).unwrap();
        rho[(0, 1)] = Complex64::new(0.3, 0.1);
        rho[(1, 0)] = Complex64::new(0.3, -0.1);
        let out = crush(&rho);
        assert_eq!(out.max_offdiagonal(), 0.0);
        assert_abs_diff_eq!((out.trace() - rho.trace()).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn crushed_uniform_superposition_is_maximally_mixed() {
        // |+><+| on one qubit.
        let mut rho = DensityMatrix::zeros(1);
        for r in 0..2 {
            for c in 0..2 {
                rho[(r, c)] = Complex64::new(0.5, 0.0);
            }
        }
        let out = crush(&rho);
        assert_abs_diff_eq!(out[(0, 0)].re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(out[(1, 1)].re, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn rejects_non_diagonal_input() {
        let mut rho = DensityMatrix::from_diagonal(&[1.0, 0.0]).unwrap();
        rho[(0, 1)] = Complex64::new(0.2, 0.0);
        rho[(1, 0)] = Complex64::new(0.2, 0.0);
        assert!(matches!(
            apply_gate_ref(&rho, 1, 2, FRAC_PI_2),
            Err(Error::NonDiagonalInput { .. })
        ));
    }

    #[test]
    fn pre_crush_coherence_stays_in_control_one_block() {
        // Rotations on a diagonal input only create off-diagonals between
        // basis states whose control bit is 1 (no zero-quantum terms).
        let rho = DensityMatrix::from_diagonal(&[0.4, 0.3, 0.2, 0.1]).unwrap();
        let u = controlled_rotation_unitary(2, 1, 2, 1.1).unwrap();
        let full = rho.conjugated_by(&u);
        for r in 0..4 {
            for c in 0..4 {
                if r != c && full[(r, c)].norm() > 1e-14 {
                    assert!(r & 0b10 != 0 && c & 0b10 != 0, "coherence at ({r},{c})");
                }
            }
        }
    }

    #[test]
    fn unitary_times_adjoint_is_identity() {
        let u = controlled_rotation_unitary(3, 2, 3, 0.7).unwrap();
        let prod = u.mul(&u.adjoint());
        for r in 0..8 {
            for c in 0..8 {
                let expect = if r == c { 1.0 } else { 0.0 };
                assert_abs_diff_eq!(prod[(r, c)].re, expect, epsilon = 1e-14);
                assert_abs_diff_eq!(prod[(r, c)].im, 0.0, epsilon = 1e-14);
            }
        }
    }
}
