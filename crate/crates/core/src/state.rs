//! Population states in the computational basis, thermal and pseudo-pure
//! constructors, and the normalized error metric.
//!
//! Only the diagonal of the deviation density matrix is stored: every gate in
//! this crate maps diagonal states to diagonal states, so a length-2^n real
//! vector is a complete description. Entries are traceless deviation
//! populations and may be negative.

use crate::error::{Error, Result};

/// Absolute tolerance for "these populations are equal" on unit-scale inputs.
pub const POP_TOLERANCE: f64 = 1e-12;

/// Per-qubit polarizations of a thermal state. Homonuclear systems have all
/// entries equal; units are arbitrary because every downstream quantity is
/// homogeneous of degree zero in the populations.
#[derive(Debug, Clone, PartialEq)]
pub struct Polarizations(Vec<f64>);

impl Polarizations {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if p.is_empty() || p.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinitePopulation);
        }
        Ok(Self(p))
    }

    /// All qubits share one polarization.
    pub fn homonuclear(n_qubits: usize, p: f64) -> Result<Self> {
        Self::new(vec![p; n_qubits])
    }

    pub fn n_qubits(&self) -> usize {
        self.0.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }
}

/// Diagonal deviation populations of an n-qubit spin system.
///
/// Basis convention: qubit 1 is the most significant bit of the basis index,
/// so the last qubit varies most rapidly across consecutive indices. For two
/// qubits the entries are (a, b, c, d) = populations of |00>, |01>, |10>, |11>.
#[derive(Debug, Clone, PartialEq)]
pub struct PopulationState {
    n_qubits: usize,
    pops: Vec<f64>,
}

impl PopulationState {
    pub fn new(n_qubits: usize, pops: Vec<f64>) -> Result<Self> {
        if n_qubits == 0 || pops.len() != 1 << n_qubits {
            return Err(Error::BadStateLength {
                len: pops.len(),
                n_qubits,
            });
        }
        if pops.iter().any(|p| !p.is_finite()) {
            return Err(Error::NonFinitePopulation);
        }
        Ok(Self { n_qubits, pops })
    }

    /// Thermal (Boltzmann deviation) state: each basis index contributes
    /// +p_i when qubit i is 0 and -p_i when it is 1, summed over qubits.
    /// The total deviation is zero by construction.
    pub fn thermal(pol: &Polarizations) -> Self {
        let n = pol.n_qubits();
        let pops = (0..1usize << n)
            .map(|s| {
                pol.values()
                    .iter()
                    .enumerate()
                    .map(|(i, &p)| if bit(s, i, n) { -p } else { p })
                    .sum()
            })
            .collect();
        Self { n_qubits: n, pops }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.pops.len()
    }

    pub fn pops(&self) -> &[f64] {
        &self.pops
    }

    pub(crate) fn pops_mut(&mut self) -> &mut [f64] {
        &mut self.pops
    }

    pub fn total(&self) -> f64 {
        self.pops.iter().sum()
    }

    /// The pseudo-pure state this system should be driven to: ground
    /// population untouched, every other population replaced by the average
    /// of the non-ground populations. This is the unique fixed point of
    /// population averaging that conserves both the total and the ground
    /// population.
    pub fn pseudo_pure_target(&self) -> Self {
        let ground = self.pops[0];
        let rest = (self.total() - ground) / (self.dim() - 1) as f64;
        let mut pops = vec![rest; self.dim()];
        pops[0] = ground;
        Self {
            n_qubits: self.n_qubits,
            pops,
        }
    }

    /// True when every non-ground population already equals the average,
    /// within `POP_TOLERANCE`.
    pub fn is_pseudo_pure(&self) -> bool {
        distance(self, &self.pseudo_pure_target()) <= POP_TOLERANCE
    }
}

/// Bit of qubit `i` (0-based) in basis index `s`, qubit 0 most significant.
#[inline]
pub(crate) fn bit(s: usize, i: usize, n: usize) -> bool {
    (s >> (n - 1 - i)) & 1 == 1
}

fn distance(x: &PopulationState, y: &PopulationState) -> f64 {
    x.pops
        .iter()
        .zip(&y.pops)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

/// Normalized distance to the pseudo-pure target of `initial`:
/// ||state - rho0|| / ||initial - rho0|| over the population vectors.
/// All states in scope are diagonal, so the Frobenius norm of the matrix
/// difference reduces to the 2-norm of the population difference. Equals 1
/// for the initial state itself and 0 exactly at the target.
pub fn epsilon(state: &PopulationState, initial: &PopulationState) -> Result<f64> {
    if state.n_qubits != initial.n_qubits {
        return Err(Error::DimensionMismatch {
            state_qubits: state.n_qubits,
            expected: initial.n_qubits,
        });
    }
    let target = initial.pseudo_pure_target();
    let denom = distance(initial, &target);
    if denom <= POP_TOLERANCE {
        return Err(Error::DegenerateInitial);
    }
    Ok(distance(state, &target) / denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn thermal_two_qubit_homonuclear() {
        let p = Polarizations::new(vec![1.0, 1.0]).unwrap();
        let s = PopulationState::thermal(&p);
        assert_eq!(s.pops(), &[2.0, 0.0, 0.0, -2.0]);
        assert_abs_diff_eq!(s.total(), 0.0, epsilon = POP_TOLERANCE);
    }

    #[test]
    fn thermal_zero_polarization_is_zero_state() {
        let p = Polarizations::new(vec![0.0, 0.0]).unwrap();
        let s = PopulationState::thermal(&p);
        assert_eq!(s.pops(), &[0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn thermal_heteronuclear_two_to_one() {
        let p = Polarizations::new(vec![2.0, 1.0]).unwrap();
        let s = PopulationState::thermal(&p);
        assert_eq!(s.pops(), &[3.0, 1.0, -1.0, -3.0]);
    }

    #[test]
    fn thermal_three_qubit() {
        let p = Polarizations::homonuclear(3, 1.0).unwrap();
        let s = PopulationState::thermal(&p);
        assert_eq!(s.pops(), &[3.0, 1.0, 1.0, -1.0, 1.0, -1.0, -1.0, -3.0]);
    }

    #[test]
    fn target_of_deviation_thermal() {
        let s = PopulationState::new(2, vec![1.0, 0.0, 0.0, -1.0]).unwrap();
        let t = s.pseudo_pure_target();
        assert_abs_diff_eq!(t.pops()[0], 1.0);
        for &p in &t.pops()[1..] {
            assert_abs_diff_eq!(p, -1.0 / 3.0, epsilon = POP_TOLERANCE);
        }
    }

    #[test]
    fn target_is_idempotent() {
        let s = PopulationState::new(2, vec![4.0, 2.0, -1.0, 0.5]).unwrap();
        let t = s.pseudo_pure_target();
        assert_eq!(t.pseudo_pure_target(), t);
        assert!(t.is_pseudo_pure());
    }

    #[test]
    fn target_three_qubit_thermal() {
        let s = PopulationState::thermal(&Polarizations::homonuclear(3, 1.0).unwrap());
        let t = s.pseudo_pure_target();
        assert_abs_diff_eq!(t.pops()[0], 3.0);
        for &p in &t.pops()[1..] {
            assert_abs_diff_eq!(p, -3.0 / 7.0, epsilon = POP_TOLERANCE);
        }
    }

    #[test]
    fn target_conserves_total_and_ground() {
        let s = PopulationState::new(3, vec![5.0, 1.0, -2.0, 0.0, 3.0, -1.0, 2.0, -4.5]).unwrap();
        let t = s.pseudo_pure_target();
        assert_abs_diff_eq!(t.total(), s.total(), epsilon = 1e-12);
        assert_eq!(t.pops()[0], s.pops()[0]);
    }

    #[test]
    fn epsilon_of_initial_is_one() {
        let s = PopulationState::new(2, vec![1.0, 0.0, 0.0, -1.0]).unwrap();
        assert_abs_diff_eq!(epsilon(&s, &s).unwrap(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn epsilon_quarter_after_naive_network() {
        let initial = PopulationState::new(2, vec![1.0, 0.0, 0.0, -1.0]).unwrap();
        let state = PopulationState::new(2, vec![1.0, -0.25, -0.5, -0.25]).unwrap();
        assert_abs_diff_eq!(epsilon(&state, &initial).unwrap(), 0.25, epsilon = 1e-14);
    }

    #[test]
    fn epsilon_of_target_is_zero() {
        let initial = PopulationState::new(2, vec![1.0, 0.0, 0.0, -1.0]).unwrap();
        let target = initial.pseudo_pure_target();
        assert_abs_diff_eq!(epsilon(&target, &initial).unwrap(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn epsilon_rejects_pseudo_pure_initial() {
        let initial = PopulationState::new(2, vec![1.0, -0.5, -0.5, -0.5]).unwrap();
        let state = PopulationState::new(2, vec![1.0, 0.0, 0.0, -1.0]).unwrap();
        assert_eq!(epsilon(&state, &initial), Err(Error::DegenerateInitial));
    }

    #[test]
    fn rejects_bad_lengths_and_nonfinite() {
        assert!(PopulationState::new(2, vec![1.0, 2.0]).is_err());
        assert!(PopulationState::new(0, vec![1.0]).is_err());
        assert!(PopulationState::new(1, vec![f64::NAN, 0.0]).is_err());
        assert!(Polarizations::new(vec![]).is_err());
    }
}
