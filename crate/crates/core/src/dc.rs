//! Set functions written as differences of submodular terms.
//!
//! Every [`Term`] is submodular on the vertex set of a fixed graph, so its
//! Lovász extension is convex and one-homogeneous. A [`DcFunction`] is
//! `sum(convex) - sum(concave)`; "concave" names the side whose extension is
//! subtracted. RatioDCA linearizes exactly those subtracted pieces.

use alloc::vec;
use alloc::vec::Vec;

use crate::constraints::t2_subgradient;
use crate::graph::{cut_value, volume, Graph};
use crate::lovasz::{descending_order, lovasz_from_sweep, subgradient_from_sweep};
use crate::math::{dot, max_value};
use crate::setfn::{cut_sweep, volume_sweep, SetFunction};

#[derive(Clone, Debug, PartialEq)]
pub enum Term {
    /// `vol_w(A)`; extension `<w, f>`.
    Modular(Vec<f64>),
    /// `c * P(A)`; extension `c * max_i f_i`.
    Max(f64),
    /// `c * cut(A)` in the graph; extension `c * sum_edges w |f_i - f_j|`.
    TotalVariation(f64),
    /// `coef * min{cap, vol_w(A)}`, zero on the empty set.
    Truncated { weights: Vec<f64>, cap: f64, coef: f64 },
    /// `coef * (vol_w(A) + offset) * (total - vol_w(A) - offset)` for non-empty
    /// `A`, zero on the empty set.
    VolumeProduct { weights: Vec<f64>, offset: f64, total: f64, coef: f64 },
}

impl Term {
    pub fn set_value(&self, g: &Graph, set: &[bool]) -> f64 {
        let nonempty = set.iter().any(|&b| b);
        match self {
            Term::Modular(w) => volume(w, set),
            Term::Max(c) => {
                if nonempty {
                    *c
                } else {
                    0.0
                }
            }
            Term::TotalVariation(c) => c * cut_value(g, set),
            Term::Truncated { weights, cap, coef } => {
                if nonempty {
                    coef * cap.min(volume(weights, set))
                } else {
                    0.0
                }
            }
            Term::VolumeProduct { weights, offset, total, coef } => {
                if nonempty {
                    let a = volume(weights, set) + offset;
                    coef * a * (total - a)
                } else {
                    0.0
                }
            }
        }
    }

    /// Values on the prefixes of `order`.
    pub fn sweep(&self, g: &Graph, order: &[usize]) -> Vec<f64> {
        match self {
            Term::Modular(w) => volume_sweep(w, order),
            Term::Max(c) => vec![*c; order.len()],
            Term::TotalVariation(c) => cut_sweep(g, order).into_iter().map(|x| c * x).collect(),
            Term::Truncated { weights, cap, coef } => {
                volume_sweep(weights, order).into_iter().map(|v| coef * cap.min(v)).collect()
            }
            Term::VolumeProduct { weights, offset, total, coef } => volume_sweep(weights, order)
                .into_iter()
                .map(|v| {
                    let a = v + offset;
                    coef * a * (total - a)
                })
                .collect(),
        }
    }

    /// Lovász extension at `f`; `order` must be `descending_order(f)`.
    pub fn value(&self, g: &Graph, f: &[f64], order: &[usize]) -> f64 {
        match self {
            Term::Modular(w) => dot(w, f),
            Term::Max(c) => {
                if f.is_empty() {
                    0.0
                } else {
                    c * max_value(f)
                }
            }
            Term::TotalVariation(c) => {
                c * g.edges().iter().map(|e| e.weight * (f[e.u] - f[e.v]).abs()).sum::<f64>()
            }
            _ => lovasz_from_sweep(f, order, &self.sweep(g, order)),
        }
    }

    /// Greedy subgradient of the extension at `f`.
    pub fn subgradient(&self, g: &Graph, f: &[f64], order: &[usize]) -> Vec<f64> {
        match self {
            Term::Modular(w) => w.clone(),
            Term::Max(c) => {
                let mut s = vec![0.0; f.len()];
                if let Some(&top) = order.first() {
                    s[top] = *c;
                }
                s
            }
            Term::Truncated { weights, cap, coef } => {
                t2_subgradient(weights, *cap, f).into_iter().map(|x| coef * x).collect()
            }
            _ => subgradient_from_sweep(order, &self.sweep(g, order)),
        }
    }

    pub fn scaled(&self, s: f64) -> Term {
        match self {
            Term::Modular(w) => Term::Modular(w.iter().map(|x| s * x).collect()),
            Term::Max(c) => Term::Max(s * c),
            Term::TotalVariation(c) => Term::TotalVariation(s * c),
            Term::Truncated { weights, cap, coef } => {
                Term::Truncated { weights: weights.clone(), cap: *cap, coef: s * coef }
            }
            Term::VolumeProduct { weights, offset, total, coef } => Term::VolumeProduct {
                weights: weights.clone(),
                offset: *offset,
                total: *total,
                coef: s * coef,
            },
        }
    }
}

/// `sum(convex) - sum(concave)` over a shared graph.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DcFunction {
    pub convex: Vec<Term>,
    pub concave: Vec<Term>,
}

impl DcFunction {
    pub fn new(convex: Vec<Term>, concave: Vec<Term>) -> Self {
        DcFunction { convex, concave }
    }

    pub fn is_empty(&self) -> bool {
        self.convex.is_empty() && self.concave.is_empty()
    }

    pub fn set_value(&self, g: &Graph, set: &[bool]) -> f64 {
        let plus: f64 = self.convex.iter().map(|t| t.set_value(g, set)).sum();
        let minus: f64 = self.concave.iter().map(|t| t.set_value(g, set)).sum();
        plus - minus
    }

    pub fn sweep(&self, g: &Graph, order: &[usize]) -> Vec<f64> {
        let mut out = vec![0.0; order.len()];
        for (terms, sign) in [(&self.convex, 1.0), (&self.concave, -1.0)] {
            for t in terms {
                for (o, x) in out.iter_mut().zip(t.sweep(g, order)) {
                    *o += sign * x;
                }
            }
        }
        out
    }

    /// Extension at `f`; `order` must be `descending_order(f)`.
    pub fn value_with_order(&self, g: &Graph, f: &[f64], order: &[usize]) -> f64 {
        let plus: f64 = self.convex.iter().map(|t| t.value(g, f, order)).sum();
        let minus: f64 = self.concave.iter().map(|t| t.value(g, f, order)).sum();
        plus - minus
    }

    pub fn value(&self, g: &Graph, f: &[f64]) -> f64 {
        self.value_with_order(g, f, &descending_order(f))
    }

    /// Bind to a graph as a [`SetFunction`].
    pub fn on<'a>(&'a self, g: &'a Graph) -> BoundDc<'a> {
        BoundDc { function: self, graph: g }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct BoundDc<'a> {
    pub function: &'a DcFunction,
    pub graph: &'a Graph,
}

impl SetFunction for BoundDc<'_> {
    fn ground_size(&self) -> usize {
        self.graph.n()
    }
    fn eval(&self, set: &[bool]) -> f64 {
        self.function.set_value(self.graph, set)
    }
    fn sweep(&self, order: &[usize]) -> Vec<f64> {
        self.function.sweep(self.graph, order)
    }
}
