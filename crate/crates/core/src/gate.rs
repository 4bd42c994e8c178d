//! Controlled-transfer gates and gate networks acting on population states.
//!
//! A controlled-transfer gate is a controlled rotation by theta about an
//! in-plane axis followed by a crush gradient. On a diagonal state the only
//! surviving effect is pairwise: for every population pair that differs in
//! the target bit and has the control bit set, the pair difference is scaled
//! by cos(theta) while the pair sum is preserved. The rotation axis never
//! enters; the crush removes everything that depends on it.

use crate::error::{Error, Result};
use crate::state::{epsilon, PopulationState};

/// A controlled rotation by `theta` on `target`, conditioned on `control`,
/// with the crush gradient implicit. Qubits are numbered 1..=n, qubit 1 being
/// the most significant bit of the basis index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferGate {
    control: usize,
    target: usize,
    theta: f64,
}

impl TransferGate {
    /// Angles are canonicalized to [0, pi]: only cos(theta) enters the
    /// population calculus, so any input angle is folded by the cosine's
    /// symmetries before storage.
    pub fn new(control: usize, target: usize, theta: f64) -> Result<Self> {
        if control == target {
            return Err(Error::ControlEqualsTarget(control));
        }
        if control == 0 || target == 0 {
            return Err(Error::IndexOutOfRange {
                index: 0,
                n_qubits: 0,
            });
        }
        Ok(Self {
            control,
            target,
            theta: fold_angle(theta),
        })
    }

    pub fn control(&self) -> usize {
        self.control
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub(crate) fn with_theta(&self, theta: f64) -> Self {
        Self {
            theta: fold_angle(theta),
            ..*self
        }
    }

    /// Largest qubit index the gate touches.
    pub fn max_qubit(&self) -> usize {
        self.control.max(self.target)
    }
}

/// Fold an arbitrary angle into [0, pi] without changing its cosine.
fn fold_angle(theta: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let r = theta.rem_euclid(tau);
    if r > std::f64::consts::PI {
        tau - r
    } else {
        r
    }
}

/// An ordered gate list applied left to right, the whole list `repetitions`
/// times.
#[derive(Debug, Clone, PartialEq)]
pub struct GateNetwork {
    gates: Vec<TransferGate>,
    repetitions: usize,
}

impl GateNetwork {
    pub fn new(gates: Vec<TransferGate>) -> Result<Self> {
        Self::repeated(gates, 1)
    }

    pub fn repeated(gates: Vec<TransferGate>, repetitions: usize) -> Result<Self> {
        if gates.is_empty() || repetitions == 0 {
            return Err(Error::UnsupportedSpec(
                "network needs at least one gate and one repetition".into(),
            ));
        }
        Ok(Self { gates, repetitions })
    }

    pub fn gates(&self) -> &[TransferGate] {
        &self.gates
    }

    pub fn repetitions(&self) -> usize {
        self.repetitions
    }

    /// Number of qubits the network requires of a state.
    pub fn min_qubits(&self) -> usize {
        self.gates.iter().map(TransferGate::max_qubit).max().unwrap_or(0)
    }
}

/// Core pairwise update, shared by every public entry point. `pops` must have
/// length 2^n; `control`/`target` are 1-based and already validated.
#[inline]
pub(crate) fn apply_gate_in_place(
    pops: &mut [f64],
    n: usize,
    control: usize,
    target: usize,
    cos_theta: f64,
) {
    let cmask = 1usize << (n - control);
    let tmask = 1usize << (n - target);
    for s in 0..pops.len() {
        if s & cmask != 0 && s & tmask == 0 {
            let hi = s | tmask;
            let (x, y) = (pops[s], pops[hi]);
            let sum = x + y;
            let diff = (x - y) * cos_theta;
            pops[s] = 0.5 * (sum + diff);
            pops[hi] = 0.5 * (sum - diff);
        }
    }
}

fn check_gate(state: &PopulationState, gate: &TransferGate) -> Result<()> {
    let n = state.n_qubits();
    for idx in [gate.control, gate.target] {
        if idx > n {
            return Err(Error::IndexOutOfRange {
                index: idx,
                n_qubits: n,
            });
        }
    }
    Ok(())
}

/// Apply one controlled-transfer gate. The ground state (index 0) is never
/// touched: its control bit is always 0.
pub fn apply_gate(state: &PopulationState, gate: &TransferGate) -> Result<PopulationState> {
    check_gate(state, gate)?;
    let mut out = state.clone();
    apply_gate_in_place(
        out.pops_mut(),
        state.n_qubits(),
        gate.control,
        gate.target,
        gate.theta.cos(),
    );
    Ok(out)
}

/// Apply a network: all gates left to right, repeated `repetitions` times.
pub fn apply_network(state: &PopulationState, net: &GateNetwork) -> Result<PopulationState> {
    for g in net.gates() {
        check_gate(state, g)?;
    }
    let n = state.n_qubits();
    let mut out = state.clone();
    for _ in 0..net.repetitions {
        for g in net.gates() {
            apply_gate_in_place(out.pops_mut(), n, g.control, g.target, g.theta.cos());
        }
    }
    Ok(out)
}

/// Error metric after 1..=r_max passes of the network's gate list: element
/// k-1 holds epsilon after k applications, measured against `initial`.
pub fn epsilon_trace(
    initial: &PopulationState,
    net: &GateNetwork,
    r_max: usize,
) -> Result<Vec<f64>> {
    for g in net.gates() {
        check_gate(initial, g)?;
    }
    let n = initial.n_qubits();
    let mut state = initial.clone();
    let mut trace = Vec::with_capacity(r_max);
    for _ in 0..r_max {
        for g in net.gates() {
            apply_gate_in_place(state.pops_mut(), n, g.control, g.target, g.theta.cos());
        }
        trace.push(epsilon(&state, initial)?);
    }
    Ok(trace)
}
