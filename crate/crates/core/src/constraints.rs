//! Exact-penalty encoding of volume constraints.
//!
//! A constraint `vol_h(C) <= k` (or `>= k`) becomes the penalty set function
//! `T(C) = max{0, violation}` with `T(empty) = 0`. Both directions split into a
//! difference of submodular functions:
//!
//! * upper: `T = vol_h - min{k, vol_h}`
//! * lower: `T = k * P - min{k, vol_h}` where `P(C) = 1` for non-empty `C`
//!
//! Adding `gamma * T` to the numerator of a ratio makes the penalized and the
//! constrained problem equivalent once `gamma` exceeds [`gamma_sufficient`].

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::volume;
use crate::lovasz::descending_order;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `vol_h(C) <= bound`
    Upper,
    /// `vol_h(C) >= bound`
    Lower,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VolumeConstraint {
    pub weights: Vec<f64>,
    pub bound: f64,
    pub direction: Direction,
}

impl VolumeConstraint {
    pub fn upper(weights: Vec<f64>, bound: f64) -> Self {
        VolumeConstraint { weights, bound, direction: Direction::Upper }
    }

    pub fn lower(weights: Vec<f64>, bound: f64) -> Self {
        VolumeConstraint { weights, bound, direction: Direction::Lower }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.bound.is_finite() {
            return Err(Error::Invalid("constraint bound must be finite"));
        }
        if self.weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::Invalid("constraint weights must be finite and non-negative"));
        }
        Ok(())
    }

    /// Signed slack: non-negative iff the constraint holds for `vol`.
    pub fn slack_at(&self, vol: f64) -> f64 {
        match self.direction {
            Direction::Upper => self.bound - vol,
            Direction::Lower => vol - self.bound,
        }
    }

    pub fn slack(&self, set: &[bool]) -> f64 {
        self.slack_at(volume(&self.weights, set))
    }

    pub fn is_satisfied(&self, set: &[bool]) -> bool {
        self.slack(set) >= 0.0
    }
}

/// `max{0, violation}` for non-empty sets, 0 for the empty set.
pub fn penalty_value(c: &VolumeConstraint, set: &[bool]) -> f64 {
    if !set.iter().any(|&b| b) {
        return 0.0;
    }
    (-c.slack(set)).max(0.0)
}

/// Difference-of-submodular form of a penalty:
/// `T(C) = vol_modular(C) + pmax * P(C) - min{cap, vol_h(C)}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PenaltyDC {
    /// Modular part on the convex side (`h` for upper bounds).
    pub modular: Option<Vec<f64>>,
    /// Weights and cap of the subtracted `min{cap, vol_h}`.
    pub truncated_weights: Vec<f64>,
    pub cap: f64,
    /// Multiple of `P` on the convex side (`k` for lower bounds).
    pub pmax_coefficient: f64,
}

impl PenaltyDC {
    /// The identically zero penalty.
    pub fn zero(n: usize) -> Self {
        PenaltyDC { modular: None, truncated_weights: vec![0.0; n], cap: 0.0, pmax_coefficient: 0.0 }
    }

    pub fn is_zero(&self) -> bool {
        self.modular.is_none() && self.pmax_coefficient == 0.0 && self.cap == 0.0
    }

    pub fn eval(&self, set: &[bool]) -> f64 {
        if !set.iter().any(|&b| b) {
            return 0.0;
        }
        let modular = self.modular.as_ref().map_or(0.0, |m| volume(m, set));
        modular + self.pmax_coefficient - self.cap.min(volume(&self.truncated_weights, set))
    }
}

pub fn penalty_dc(c: &VolumeConstraint) -> Result<PenaltyDC> {
    c.validate()?;
    match c.direction {
        Direction::Upper => {
            if c.bound < 0.0 {
                return Err(Error::Infeasible("upper volume bound is negative"));
            }
            Ok(PenaltyDC {
                modular: Some(c.weights.clone()),
                truncated_weights: c.weights.clone(),
                cap: c.bound,
                pmax_coefficient: 0.0,
            })
        }
        // a non-positive lower bound holds for every set
        Direction::Lower if c.bound <= 0.0 => Ok(PenaltyDC::zero(c.weights.len())),
        Direction::Lower => Ok(PenaltyDC {
            modular: None,
            truncated_weights: c.weights.clone(),
            cap: c.bound,
            pmax_coefficient: c.bound,
        }),
    }
}

/// Subgradient of the Lovász extension of `min{cap, vol_h}` at `f`.
///
/// With `j_i` the index of the i-th smallest entry of `f` and
/// `A_i = {j_i, ..., j_n}`, component `j_i` is `0` when
/// `vol_h(A_{i+1}) > cap`, `cap - vol_h(A_{i+1})` when
/// `vol_h(A_i) >= cap >= vol_h(A_{i+1})`, and `h_{j_i}` when `vol_h(A_i) < cap`.
pub fn t2_subgradient(weights: &[f64], cap: f64, f: &[f64]) -> Vec<f64> {
    // the descending order lists j_n, j_{n-1}, ..., j_1, so A_{i+1} is the
    // prefix strictly before j_i
    let order = descending_order(f);
    let mut t = vec![0.0; f.len()];
    let mut vol_after = 0.0; // vol_h(A_{i+1})
    for &j in &order {
        let vol_here = vol_after + weights[j]; // vol_h(A_i)
        t[j] = if vol_after > cap {
            0.0
        } else if vol_here >= cap {
            cap - vol_after
        } else {
            weights[j]
        };
        vol_after = vol_here;
    }
    t
}

/// Smallest denominator `q <= max_den` with `|x - p/q|` within tolerance, or
/// `None` when `x` is not representable on that grid.
fn rational_denominator(x: f64, max_den: u64) -> Option<u64> {
    let tol = 1e-9 * x.abs().max(1.0);
    // continued-fraction convergents
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut rest = x;
    for _ in 0..64 {
        let a = libm::floor(rest);
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 as u64 > max_den {
            return None;
        }
        if (x - h2 as f64 / k2 as f64).abs() <= tol {
            return Some(k2 as u64);
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = rest - a;
        if frac.abs() < 1e-15 {
            return None;
        }
        rest = 1.0 / frac;
    }
    None
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Lower bound `theta` on the violation of any infeasible set.
///
/// Weights and bounds are placed on the coarsest grid `1/q` (with
/// `q <= max_denominator`) that represents them all; violations are then
/// multiples of `1/q`. Values off every such grid are rounded to
/// `1/max_denominator`.
pub fn theta_of(constraints: &[VolumeConstraint], max_denominator: u64) -> f64 {
    let mut theta = 1.0f64;
    for c in constraints {
        let mut q: u64 = 1;
        for &x in c.weights.iter().chain(core::iter::once(&c.bound)) {
            let d = rational_denominator(x, max_denominator).unwrap_or(max_denominator);
            q = q / gcd(q, d) * d;
            if q >= max_denominator {
                q = max_denominator;
                break;
            }
        }
        theta = theta.min(1.0 / q as f64);
    }
    theta
}

/// Default grid for [`theta_of`].
pub const DEFAULT_THETA_DENOMINATOR: u64 = 1_000_000;

/// Multiplicative margin making the sufficient-gamma inequality strict.
pub const GAMMA_MARGIN: f64 = 0.01;

/// `R(C0) * max_C S(C) / (theta * S(C0))` times `1 + GAMMA_MARGIN`; any larger
/// gamma makes the penalized and constrained problems equivalent.
pub fn gamma_sufficient(r0: f64, s0: f64, s_max: f64, theta: f64) -> Result<f64> {
    if !(s0 > 0.0) {
        return Err(Error::Invalid("feasible reference set has zero denominator"));
    }
    if !(theta > 0.0) {
        return Err(Error::Invalid("theta must be positive"));
    }
    let bound = r0 * s_max / (theta * s0);
    // any positive gamma works when the reference ratio is zero
    Ok(if bound > 0.0 { bound * (1.0 + GAMMA_MARGIN) } else { GAMMA_MARGIN })
}

/// Increasing penalty weights: `0`, then `initial`, then geometric growth,
/// clipped to a cap while the cap lies above the current value.
#[derive(Clone, Debug)]
pub struct GammaSchedule {
    pub initial: f64,
    pub growth: f64,
    pub cap: Option<f64>,
    current: f64,
    steps: usize,
}

impl GammaSchedule {
    pub fn new(initial: f64, growth: f64) -> Self {
        GammaSchedule { initial, growth, cap: None, current: 0.0, steps: 0 }
    }

    pub fn current(&self) -> f64 {
        self.current
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    /// Tighten the cap with a newly known sufficient gamma.
    pub fn offer_cap(&mut self, cap: f64) {
        self.cap = Some(self.cap.map_or(cap, |c| c.min(cap)));
    }

    /// Next gamma; strictly larger than the current one.
    pub fn advance(&mut self) -> f64 {
        let mut next = if self.current == 0.0 { self.initial } else { self.current * self.growth };
        if let Some(cap) = self.cap {
            if cap > self.current {
                next = next.min(cap);
            }
        }
        self.current = next;
        self.steps += 1;
        next
    }

    pub fn at_cap(&self) -> bool {
        self.cap.is_some_and(|c| self.current >= c)
    }
}

/// Seed containment plus volume bounds, checked on full vertex sets.
#[derive(Clone, Debug, Default)]
pub struct FeasibilityRule {
    pub seed: Vec<usize>,
    pub constraints: Vec<VolumeConstraint>,
}

impl FeasibilityRule {
    pub fn new(seed: Vec<usize>, constraints: Vec<VolumeConstraint>) -> Self {
        FeasibilityRule { seed, constraints }
    }

    pub fn is_feasible(&self, set: &[bool]) -> bool {
        self.seed.iter().all(|&s| set[s]) && self.constraints.iter().all(|c| c.is_satisfied(set))
    }

    /// Feasibility of each prefix of `order`, computed incrementally.
    pub fn sweep(&self, n: usize, order: &[usize]) -> Vec<bool> {
        let mut is_seed = vec![false; n];
        for &s in &self.seed {
            is_seed[s] = true;
        }
        let mut seeds_in = 0usize;
        let mut vols = vec![0.0; self.constraints.len()];
        order
            .iter()
            .map(|&v| {
                if is_seed[v] {
                    seeds_in += 1;
                }
                for (vol, c) in vols.iter_mut().zip(&self.constraints) {
                    *vol += c.weights[v];
                }
                seeds_in == self.seed.len()
                    && vols.iter().zip(&self.constraints).all(|(&vol, c)| c.slack_at(vol) >= 0.0)
            })
            .collect()
    }
}
