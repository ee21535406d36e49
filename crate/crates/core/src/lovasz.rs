//! Lovász extensions, greedy subgradients and optimal thresholding.
//!
//! Everything is driven by one ordering: vertices sorted by decreasing `f`,
//! ties broken by increasing vertex index. Prefixes of that order are the
//! threshold sets `C_i = {j : f_j >= f_i}`; a prefix is a genuine threshold set
//! only where the next value is strictly smaller.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::setfn::SetFunction;

/// Vertices by decreasing `f`, lowest index first among ties.
pub fn descending_order(f: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..f.len()).collect();
    order.sort_by(|&a, &b| f[b].total_cmp(&f[a]).then(a.cmp(&b)));
    order
}

/// Lovász extension value given prefix values of `F` along `order`.
pub fn lovasz_from_sweep(f: &[f64], order: &[usize], values: &[f64]) -> f64 {
    let n = order.len();
    (0..n)
        .map(|k| {
            let next = if k + 1 < n { f[order[k + 1]] } else { 0.0 };
            values[k] * (f[order[k]] - next)
        })
        .sum()
}

/// Greedy subgradient from prefix values: `s[order[k]] = F(P_k) - F(P_{k-1})`.
pub fn subgradient_from_sweep(order: &[usize], values: &[f64]) -> Vec<f64> {
    let mut s = vec![0.0; order.len()];
    let mut prev = 0.0;
    for (k, &v) in order.iter().enumerate() {
        s[v] = values[k] - prev;
        prev = values[k];
    }
    s
}

pub fn lovasz_value<S: SetFunction + ?Sized>(s: &S, f: &[f64]) -> f64 {
    let order = descending_order(f);
    lovasz_from_sweep(f, &order, &s.sweep(&order))
}

/// Element of the subdifferential of the Lovász extension of a submodular
/// `s` at `f`, with `<f, s> = lovasz_value(s, f)`.
pub fn greedy_subgradient<S: SetFunction + ?Sized>(s: &S, f: &[f64]) -> Vec<f64> {
    let order = descending_order(f);
    subgradient_from_sweep(&order, &s.sweep(&order))
}

/// Prefix lengths that are genuine threshold sets of `f` along `order`.
pub fn threshold_positions<'a>(f: &'a [f64], order: &'a [usize]) -> impl Iterator<Item = usize> + 'a {
    let n = order.len();
    (1..=n).filter(move |&k| k == n || f[order[k - 1]] > f[order[k]])
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    /// Length of the winning prefix of the descending order.
    pub best_index: usize,
    pub best_set: Vec<usize>,
    pub best_value: f64,
    /// `(prefix length, ratio)` for every evaluated threshold set.
    pub per_threshold_values: Vec<(usize, f64)>,
}

/// Optimal thresholding from precomputed prefix values.
///
/// `feasible[k]` refers to the prefix of length `k + 1`. Thresholds with a
/// zero denominator are skipped; among equal ratios the smallest set wins.
pub fn threshold_sweep(
    f: &[f64],
    order: &[usize],
    numerator: &[f64],
    denominator: &[f64],
    feasible: Option<&[bool]>,
) -> Result<SweepResult> {
    let mut best: Option<(usize, f64)> = None;
    let mut trace = Vec::new();
    let mut any_positive = false;
    for k in threshold_positions(f, order) {
        let den = denominator[k - 1];
        if !(den > 0.0) {
            continue;
        }
        any_positive = true;
        if feasible.is_some_and(|ok| !ok[k - 1]) {
            continue;
        }
        let q = numerator[k - 1] / den;
        trace.push((k, q));
        if best.is_none_or(|(_, b)| q < b) {
            best = Some((k, q));
        }
    }
    match best {
        Some((k, q)) => {
            let mut best_set = order[..k].to_vec();
            best_set.sort_unstable();
            Ok(SweepResult { best_index: k, best_set, best_value: q, per_threshold_values: trace })
        }
        None if feasible.is_some() && any_positive => Err(Error::NoFeasibleThreshold),
        None if feasible.is_some() && f.is_empty() => Err(Error::NoFeasibleThreshold),
        None => Err(Error::AllDenominatorsZero),
    }
}

/// Best ratio `numerator(C_i)/denominator(C_i)` over the threshold sets of
/// `f`, optionally restricted to sets accepted by `feasible`.
pub fn optimal_threshold<N, D>(
    f: &[f64],
    numerator: &N,
    denominator: &D,
    feasible: Option<&dyn Fn(&[bool]) -> bool>,
) -> Result<SweepResult>
where
    N: SetFunction + ?Sized,
    D: SetFunction + ?Sized,
{
    let order = descending_order(f);
    let num = numerator.sweep(&order);
    let den = denominator.sweep(&order);
    let ok = feasible.map(|pred| {
        let mut set = vec![false; f.len()];
        order
            .iter()
            .map(|&v| {
                set[v] = true;
                pred(&set)
            })
            .collect::<Vec<_>>()
    });
    threshold_sweep(f, &order, &num, &den, ok.as_deref())
}
