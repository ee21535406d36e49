//! Set functions used by the solvers, each with an incremental sweep.
//!
//! A sweep evaluates a set function on the nested sets obtained by adding the
//! vertices of `order` one at a time: `out[k] = F({order[0], ..., order[k]})`.

use alloc::vec;
use alloc::vec::Vec;

use crate::graph::{self, Graph};

pub trait SetFunction {
    fn ground_size(&self) -> usize;

    /// Value on the set given as a membership mask. Must be 0 on the empty set.
    fn eval(&self, set: &[bool]) -> f64;

    /// Values on the prefixes of `order`. The default re-evaluates each prefix.
    fn sweep(&self, order: &[usize]) -> Vec<f64> {
        let mut set = vec![false; self.ground_size()];
        order
            .iter()
            .map(|&v| {
                set[v] = true;
                self.eval(&set)
            })
            .collect()
    }
}

impl<T: SetFunction + ?Sized> SetFunction for &T {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }
    fn eval(&self, set: &[bool]) -> f64 {
        (**self).eval(set)
    }
    fn sweep(&self, order: &[usize]) -> Vec<f64> {
        (**self).sweep(order)
    }
}

pub(crate) fn cut_sweep(g: &Graph, order: &[usize]) -> Vec<f64> {
    let mut inside = vec![false; g.n()];
    let mut cut = 0.0;
    order
        .iter()
        .map(|&v| {
            let internal: f64 = g.neighbors(v).iter().filter(|(u, _)| inside[*u]).map(|(_, w)| w).sum();
            cut += g.degree()[v] - 2.0 * internal;
            inside[v] = true;
            cut
        })
        .collect()
}

pub(crate) fn assoc_sweep(g: &Graph, order: &[usize]) -> Vec<f64> {
    let mut inside = vec![false; g.n()];
    let mut assoc = 0.0;
    order
        .iter()
        .map(|&v| {
            let internal: f64 = g.neighbors(v).iter().filter(|(u, _)| inside[*u]).map(|(_, w)| w).sum();
            assoc += 2.0 * internal;
            inside[v] = true;
            assoc
        })
        .collect()
}

pub(crate) fn volume_sweep(w: &[f64], order: &[usize]) -> Vec<f64> {
    let mut vol = 0.0;
    order
        .iter()
        .map(|&v| {
            vol += w[v];
            vol
        })
        .collect()
}

/// `cut(C, V\C)`.
#[derive(Clone, Copy, Debug)]
pub struct Cut<'g>(pub &'g Graph);

impl SetFunction for Cut<'_> {
    fn ground_size(&self) -> usize {
        self.0.n()
    }
    fn eval(&self, set: &[bool]) -> f64 {
        graph::cut_value(self.0, set)
    }
    fn sweep(&self, order: &[usize]) -> Vec<f64> {
        cut_sweep(self.0, order)
    }
}

/// `assoc(C)`.
#[derive(Clone, Copy, Debug)]
pub struct Assoc<'g>(pub &'g Graph);

impl SetFunction for Assoc<'_> {
    fn ground_size(&self) -> usize {
        self.0.n()
    }
    fn eval(&self, set: &[bool]) -> f64 {
        graph::assoc_value(self.0, set)
    }
    fn sweep(&self, order: &[usize]) -> Vec<f64> {
        assoc_sweep(self.0, order)
    }
}

/// Modular `vol_w(C)`.
#[derive(Clone, Copy, Debug)]
pub struct Volume<'w>(pub &'w [f64]);

impl SetFunction for Volume<'_> {
    fn ground_size(&self) -> usize {
        self.0.len()
    }
    fn eval(&self, set: &[bool]) -> f64 {
        graph::volume(self.0, set)
    }
    fn sweep(&self, order: &[usize]) -> Vec<f64> {
        volume_sweep(self.0, order)
    }
}

/// `vol_w(C) * (vol_w(V) - vol_w(C))`, the normalized-cut balancing term.
#[derive(Clone, Copy, Debug)]
pub struct VolumeProduct<'w>(pub &'w [f64]);

impl SetFunction for VolumeProduct<'_> {
    fn ground_size(&self) -> usize {
        self.0.len()
    }
    fn eval(&self, set: &[bool]) -> f64 {
        let total: f64 = self.0.iter().sum();
        let v = graph::volume(self.0, set);
        v * (total - v)
    }
    fn sweep(&self, order: &[usize]) -> Vec<f64> {
        let total: f64 = self.0.iter().sum();
        volume_sweep(self.0, order).into_iter().map(|v| v * (total - v)).collect()
    }
}

/// `min{vol_w(C), vol_w(V\C)}`, the Cheeger balancing term.
#[derive(Clone, Copy, Debug)]
pub struct BalancedMin<'w>(pub &'w [f64]);

impl SetFunction for BalancedMin<'_> {
    fn ground_size(&self) -> usize {
        self.0.len()
    }
    fn eval(&self, set: &[bool]) -> f64 {
        let total: f64 = self.0.iter().sum();
        let v = graph::volume(self.0, set);
        v.min(total - v)
    }
    fn sweep(&self, order: &[usize]) -> Vec<f64> {
        let total: f64 = self.0.iter().sum();
        volume_sweep(self.0, order).into_iter().map(|v| v.min(total - v)).collect()
    }
}

/// `min{cap, vol_w(C)}`; submodular for `cap >= 0`.
#[derive(Clone, Copy, Debug)]
pub struct Truncated<'w> {
    pub weights: &'w [f64],
    pub cap: f64,
}

impl SetFunction for Truncated<'_> {
    fn ground_size(&self) -> usize {
        self.weights.len()
    }
    fn eval(&self, set: &[bool]) -> f64 {
        if set.iter().any(|&b| b) {
            self.cap.min(graph::volume(self.weights, set))
        } else {
            0.0
        }
    }
    fn sweep(&self, order: &[usize]) -> Vec<f64> {
        volume_sweep(self.weights, order).into_iter().map(|v| self.cap.min(v)).collect()
    }
}

/// `P(C) = 1` for non-empty `C`; its Lovász extension is `max_i f_i`.
#[derive(Clone, Copy, Debug)]
pub struct NonEmpty(pub usize);

impl SetFunction for NonEmpty {
    fn ground_size(&self) -> usize {
        self.0
    }
    fn eval(&self, set: &[bool]) -> f64 {
        if set.iter().any(|&b| b) {
            1.0
        } else {
            0.0
        }
    }
    fn sweep(&self, order: &[usize]) -> Vec<f64> {
        vec![1.0; order.len()]
    }
}

/// Adapter for closures over membership masks.
pub struct FnSetFunction<F> {
    n: usize,
    f: F,
}

impl<F: Fn(&[bool]) -> f64> FnSetFunction<F> {
    pub fn new(n: usize, f: F) -> Self {
        FnSetFunction { n, f }
    }
}

impl<F: Fn(&[bool]) -> f64> SetFunction for FnSetFunction<F> {
    fn ground_size(&self) -> usize {
        self.n
    }
    fn eval(&self, set: &[bool]) -> f64 {
        (self.f)(set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::b6;

    fn check_sweep<S: SetFunction>(s: &S, order: &[usize]) {
        let fast = s.sweep(order);
        let mut set = vec![false; s.ground_size()];
        for (k, &v) in order.iter().enumerate() {
            set[v] = true;
            assert!((fast[k] - s.eval(&set)).abs() < 1e-12, "prefix {k}");
        }
    }

    #[test]
    fn incremental_sweeps_match_evaluation() {
        let g = b6();
        let order = [3, 0, 5, 2, 1, 4];
        let h = [0.5, 1.0, 2.0, 0.0, 1.5, 1.0];
        check_sweep(&Cut(&g), &order);
        check_sweep(&Assoc(&g), &order);
        check_sweep(&Volume(&h), &order);
        check_sweep(&VolumeProduct(g.degree()), &order);
        check_sweep(&BalancedMin(g.degree()), &order);
        check_sweep(&Truncated { weights: &h, cap: 2.5 }, &order);
        check_sweep(&NonEmpty(6), &order);
    }
}
