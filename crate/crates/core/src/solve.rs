//! Closed-form two-qubit angle solutions and the heteronuclear feasibility
//! curve.
//!
//! A two-gate network with the right angles drives any two-qubit diagonal
//! state exactly to its pseudo-pure target. The first gate partially
//! averages one population pair; the second, a half-pi transfer in the
//! opposite direction, finishes the job. Which pair goes first is the
//! `GateOrder`; some states admit only one of the two orders.

use crate::error::{Error, Result};
use crate::gate::{GateNetwork, TransferGate};
use crate::state::{PopulationState, Polarizations, POP_TOLERANCE};
use std::f64::consts::FRAC_PI_2;

/// Which population pair the first gate mixes.
///
/// `CdFirst`: first gate (control=1, target=2) averages the c,d pair, then
/// (control=2, target=1) at half pi. `BdFirst` interchanges the two gates,
/// averaging b,d first; the closed-form angle swaps b and c accordingly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateOrder {
    CdFirst,
    BdFirst,
}

impl GateOrder {
    pub const BOTH: [GateOrder; 2] = [GateOrder::CdFirst, GateOrder::BdFirst];

    /// (control, target) of the first gate in this order.
    fn first_gate(self) -> (usize, usize) {
        match self {
            GateOrder::CdFirst => (1, 2),
            GateOrder::BdFirst => (2, 1),
        }
    }
}

impl std::fmt::Display for GateOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GateOrder::CdFirst => write!(f, "cd-first"),
            GateOrder::BdFirst => write!(f, "bd-first"),
        }
    }
}

/// Exact angles for one gate order. The second angle is always half pi.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleSolution {
    pub theta1: f64,
    pub theta2: f64,
    pub order: GateOrder,
}

impl AngleSolution {
    /// The two-gate network realizing this solution.
    pub fn network(&self) -> GateNetwork {
        let (c1, t1) = self.order.first_gate();
        GateNetwork::new(vec![
            TransferGate::new(c1, t1, self.theta1).expect("valid first gate"),
            TransferGate::new(t1, c1, self.theta2).expect("valid second gate"),
        ])
        .expect("two-gate network")
    }
}

/// Solve for the first-gate angle that makes the two-gate network exact on
/// `initial`.
///
/// For the c,d-first order the angle is arccos[(2b-(c+d))/(3(c-d))]; the
/// b,d-first order swaps b and c. When the mixed pair is already averaged
/// (denominator zero), any angle works if the numerator vanishes too, and
/// half pi is returned; otherwise no angle can work.
pub fn solve_angles(initial: &PopulationState, order: GateOrder) -> Result<AngleSolution> {
    if initial.n_qubits() != 2 {
        return Err(Error::DimensionMismatch {
            state_qubits: initial.n_qubits(),
            expected: 2,
        });
    }
    let [_a, b, c, d] = [
        initial.pops()[0],
        initial.pops()[1],
        initial.pops()[2],
        initial.pops()[3],
    ];
    let (num, den) = match order {
        GateOrder::CdFirst => (2.0 * b - (c + d), 3.0 * (c - d)),
        GateOrder::BdFirst => (2.0 * c - (b + d), 3.0 * (b - d)),
    };
    let scale = initial.pops().iter().fold(1.0f64, |m, p| m.max(p.abs()));
    let theta1 = if den.abs() <= POP_TOLERANCE * scale {
        if num.abs() <= POP_TOLERANCE * scale {
            FRAC_PI_2
        } else {
            return Err(Error::Infeasible { arg: f64::INFINITY });
        }
    } else {
        let arg = num / den;
        if !(-1.0..=1.0).contains(&arg) {
            return Err(Error::Infeasible { arg });
        }
        arg.acos()
    };
    Ok(AngleSolution {
        theta1,
        theta2: FRAC_PI_2,
        order,
    })
}

/// Try both gate orders, returning each order's solution or failure. Some
/// states admit only one order; callers should surface both outcomes rather
/// than pick silently.
pub fn solve_both_orders(
    initial: &PopulationState,
) -> [(GateOrder, Result<AngleSolution>); 2] {
    GateOrder::BOTH.map(|order| (order, solve_angles(initial, order)))
}

/// First-gate angle versus polarization ratio for a two-spin thermal state
/// with spin 1 the more polarized (ratio >= 1). The first gate targets the
/// more polarized spin, which always admits a solution; the angle rises from
/// arccos(1/3) at ratio 1 toward pi - arccos(1/3) as the ratio grows.
/// Samples are geometrically spaced so wide ratio ranges plot sensibly.
pub fn heteronuclear_theta_curve(
    ratio_min: f64,
    ratio_max: f64,
    steps: usize,
) -> Result<Vec<(f64, f64)>> {
    if !(1.0 <= ratio_min && ratio_min < ratio_max) || steps < 2 {
        return Err(Error::UnsupportedSpec(format!(
            "need 1 <= ratio_min < ratio_max and steps >= 2, got [{ratio_min}, {ratio_max}] x {steps}"
        )));
    }
    let log_span = (ratio_max / ratio_min).ln();
    (0..steps)
        .map(|k| {
            let ratio = ratio_min * (log_span * k as f64 / (steps - 1) as f64).exp();
            let initial =
                PopulationState::thermal(&Polarizations::new(vec![ratio, 1.0])?);
            let sol = solve_angles(&initial, GateOrder::BdFirst)?;
            Ok((ratio, sol.theta1.to_degrees()))
        })
        .collect()
}
