//! Angle optimization for a fixed gate pattern.
//!
//! With a single network pass the final populations are multilinear in the
//! per-gate cosines, so the squared error is an exact quadratic along each
//! coordinate. Cyclic coordinate descent with closed-form line minima then
//! converges quickly and lands on exact solutions; multiple starts guard
//! against coordinate-wise stationary points. With repeated passes the
//! per-coordinate slice is a higher-degree polynomial and is minimized by
//! dense sampling plus golden-section refinement instead.

use crate::error::{Error, Result};
use crate::gate::apply_gate_in_place;
use crate::state::{PopulationState, POP_TOLERANCE};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Squared-error objective for one gate pattern against the pseudo-pure
/// target of a fixed initial state.
pub(crate) struct NetworkObjective {
    n_qubits: usize,
    gates: Vec<(usize, usize)>,
    repetitions: usize,
    initial: Vec<f64>,
    target: Vec<f64>,
    inv_denom_sq: f64,
}

impl NetworkObjective {
    pub fn new(
        gates: &[(usize, usize)],
        initial: &PopulationState,
        repetitions: usize,
    ) -> Result<Self> {
        let n = initial.n_qubits();
        for &(c, t) in gates {
            for idx in [c, t] {
                if idx == 0 || idx > n {
                    return Err(Error::IndexOutOfRange {
                        index: idx,
                        n_qubits: n,
                    });
                }
            }
        }
        let target = initial.pseudo_pure_target();
        let denom_sq: f64 = initial
            .pops()
            .iter()
            .zip(target.pops())
            .map(|(a, b)| (a - b) * (a - b))
            .sum();
        if denom_sq.sqrt() <= POP_TOLERANCE {
            return Err(Error::DegenerateInitial);
        }
        Ok(Self {
            n_qubits: n,
            gates: gates.to_vec(),
            repetitions,
            initial: initial.pops().to_vec(),
            target: target.pops().to_vec(),
            inv_denom_sq: 1.0 / denom_sq,
        })
    }

    pub fn dim(&self) -> usize {
        self.initial.len()
    }

    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    /// Epsilon squared for one per-gate cosine assignment. `buf` is caller
    /// scratch of length `dim()`.
    pub fn eps_sq(&self, cos_thetas: &[f64], buf: &mut [f64]) -> f64 {
        buf.copy_from_slice(&self.initial);
        for _ in 0..self.repetitions {
            for (&(c, t), &x) in self.gates.iter().zip(cos_thetas) {
                apply_gate_in_place(buf, self.n_qubits, c, t, x);
            }
        }
        let num: f64 = buf
            .iter()
            .zip(&self.target)
            .map(|(b, t)| (b - t) * (b - t))
            .sum();
        num * self.inv_denom_sq
    }

    /// Epsilon squared with every gate sharing one cosine.
    pub fn eps_sq_shared(&self, cos_theta: f64, buf: &mut [f64]) -> f64 {
        buf.copy_from_slice(&self.initial);
        for _ in 0..self.repetitions {
            for &(c, t) in &self.gates {
                apply_gate_in_place(buf, self.n_qubits, c, t, cos_theta);
            }
        }
        let num: f64 = buf
            .iter()
            .zip(&self.target)
            .map(|(b, t)| (b - t) * (b - t))
            .sum();
        num * self.inv_denom_sq
    }
}

/// Below this squared error a network is exact to rounding; further starts
/// cannot improve anything that matters.
const EXACT_SQ: f64 = 1e-24;
const MAX_SWEEPS: usize = 500;

/// Cyclic coordinate descent over the free gate cosines. Returns the final
/// squared error; `cos` is updated in place.
pub(crate) fn coordinate_descent(
    obj: &NetworkObjective,
    cos: &mut [f64],
    free: &[usize],
    buf: &mut [f64],
) -> f64 {
    let mut current = obj.eps_sq(cos, buf);
    if free.is_empty() {
        return current;
    }
    let exact_quadratic = obj.repetitions == 1;
    for _ in 0..MAX_SWEEPS {
        let before = current;
        for &j in free {
            if exact_quadratic {
                // One pass is multilinear in each cosine, so the slice along
                // coordinate j is exactly A x^2 + B x + C.
                cos[j] = -1.0;
                let f_lo = obj.eps_sq(cos, buf);
                cos[j] = 0.0;
                let f_mid = obj.eps_sq(cos, buf);
                cos[j] = 1.0;
                let f_hi = obj.eps_sq(cos, buf);
                let a = 0.5 * (f_hi + f_lo) - f_mid;
                let b = 0.5 * (f_hi - f_lo);
                let quad = |x: f64| (a * x + b) * x + f_mid;
                let (mut best_x, mut best_f) =
                    if f_lo <= f_hi { (-1.0, f_lo) } else { (1.0, f_hi) };
                if a > 0.0 {
                    let x = (-b / (2.0 * a)).clamp(-1.0, 1.0);
                    let fx = quad(x);
                    if fx < best_f {
                        (best_x, best_f) = (x, fx);
                    }
                }
                cos[j] = best_x;
                current = best_f.max(0.0);
            } else {
                let save = cos[j];
                let f = |x: f64, buf: &mut [f64]| {
                    cosine_probe(obj, cos, j, x, buf)
                };
                let (x, fx) = sampled_line_min(|x| {
                    let mut probe = cos.to_vec();
                    probe[j] = x;
                    obj.eps_sq(&probe, buf)
                });
                let _ = (f, save);
                cos[j] = x;
                current = fx;
            }
        }
        if before - current <= 1e-16 * current.max(1e-30) || current < EXACT_SQ {
            break;
        }
    }
    current
}

fn cosine_probe(
    obj: &NetworkObjective,
    cos: &[f64],
    j: usize,
    x: f64,
    buf: &mut [f64],
) -> f64 {
    let mut probe = cos.to_vec();
    probe[j] = x;
    obj.eps_sq(&probe, buf)
}

/// Global 1-D minimum on [-1, 1]: dense sampling, then golden-section
/// refinement of the best bracketing interval.
fn sampled_line_min(mut f: impl FnMut(f64) -> f64) -> (f64, f64) {
    const SAMPLES: usize = 41;
    let mut best = (0usize, f64::INFINITY);
    let xs: Vec<f64> = (0..SAMPLES)
        .map(|k| -1.0 + 2.0 * k as f64 / (SAMPLES - 1) as f64)
        .collect();
    for (k, &x) in xs.iter().enumerate() {
        let fx = f(x);
        if fx < best.1 {
            best = (k, fx);
        }
    }
    let lo = if best.0 == 0 { xs[0] } else { xs[best.0 - 1] };
    let hi = if best.0 == SAMPLES - 1 {
        xs[SAMPLES - 1]
    } else {
        xs[best.0 + 1]
    };
    golden_min(f, lo, hi, 1e-12)
}

/// Golden-section minimization of a unimodal slice of `f` on [lo, hi].
pub(crate) fn golden_min(
    mut f: impl FnMut(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    let mid = 0.5 * (lo + hi);
    (mid, f(mid))
}

/// Multi-start minimization over the free coordinates. Starts come from a
/// full 5-degree grid when at most two angles are free, otherwise from 200
/// seeded uniform draws. Returns the best squared error; `cos` holds the
/// winning assignment.
pub(crate) fn multi_start_descent(
    obj: &NetworkObjective,
    cos: &mut [f64],
    free: &[usize],
    seed: u64,
) -> f64 {
    let mut buf = vec![0.0; obj.dim()];
    if free.is_empty() {
        return obj.eps_sq(cos, &mut buf);
    }

    let mut best_cos = cos.to_vec();
    let mut best_sq = f64::INFINITY;
    let mut try_start = |start: &[f64], cos: &mut [f64], buf: &mut [f64]| -> bool {
        for (&j, &x) in free.iter().zip(start) {
            cos[j] = x;
        }
        let got = coordinate_descent(obj, cos, free, buf);
        if got < best_sq {
            best_sq = got;
            best_cos.copy_from_slice(cos);
        }
        best_sq < EXACT_SQ
    };

    if free.len() <= 2 {
        // 5-degree grid over each free angle, cosines thereof.
        let grid: Vec<f64> = (0..=36).map(|k| (k as f64 * 5.0).to_radians().cos()).collect();
        if free.len() == 1 {
            for &x in &grid {
                if try_start(&[x], cos, &mut buf) {
                    break;
                }
            }
        } else {
            'outer: for &x0 in &grid {
                for &x1 in &grid {
                    if try_start(&[x0, x1], cos, &mut buf) {
                        break 'outer;
                    }
                }
            }
        }
    } else {
        const STARTS: usize = 200;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut start = vec![0.0; free.len()];
        for _ in 0..STARTS {
            for x in start.iter_mut() {
                *x = rng.random_range(-1.0..=1.0);
            }
            if try_start(&start, cos, &mut buf) {
                break;
            }
        }
    }

    cos.copy_from_slice(&best_cos);
    best_sq
}
