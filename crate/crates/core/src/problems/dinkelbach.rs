//! Exact minimization of `vol_g(C) / assoc(C)` by Dinkelbach iterations.
//!
//! For fixed `lambda`, `min_C vol_g(C) - lambda assoc(C)` is an s-t min-cut:
//! arcs `s -> i` of capacity `lambda d_i`, `i -> t` of capacity `g_i`, and
//! `lambda w_ij` both ways between neighbours. A source side `C` costs
//! `lambda vol_d(V) + vol_g(C) - lambda assoc(C)`.

use alloc::vec::Vec;

use super::maxflow::FlowNetwork;
use crate::error::{Error, Result};
use crate::graph::{assoc_value, members, volume, Graph};

#[derive(Clone, Debug, PartialEq)]
pub struct DensityResult {
    pub set: Vec<usize>,
    /// `vol_g(set) / assoc(set)`.
    pub ratio: f64,
    /// `assoc(set) / vol_g(set)`.
    pub density: f64,
    /// Ratio before each min-cut, starting from the full vertex set.
    pub lambdas: Vec<f64>,
    /// Flow value of each min-cut solved.
    pub flow_values: Vec<f64>,
    /// Worst conservation or capacity violation seen in any flow.
    pub flow_audit: f64,
}

/// Global minimizer of `vol_g / assoc` (the maximum-density subgraph).
///
/// `tol` is the relative decrease below which the iteration stops.
pub fn dinkelbach_max_density(g: &Graph, weights: &[f64], tol: f64) -> Result<DensityResult> {
    let n = g.n();
    if weights.len() != n {
        return Err(Error::Invalid("vertex weights must have one entry per vertex"));
    }
    if weights.iter().any(|w| !(*w >= 0.0) || !w.is_finite()) {
        return Err(Error::Invalid("vertex weights must be finite and non-negative"));
    }
    if g.num_edges() == 0 {
        return Err(Error::NoEdges);
    }
    let mut best = alloc::vec![true; n];
    let mut lambda = volume(weights, &best) / g.total_volume();
    let mut lambdas = alloc::vec![lambda];
    let mut flow_values = Vec::new();
    let mut flow_audit = 0.0f64;
    let (s, t) = (n, n + 1);
    loop {
        let mut net = FlowNetwork::new(n + 2);
        for v in 0..n {
            net.add_arc(s, v, lambda * g.degree()[v]);
            net.add_arc(v, t, weights[v]);
        }
        for e in g.edges() {
            net.add_arc(e.u, e.v, lambda * e.weight);
            net.add_arc(e.v, e.u, lambda * e.weight);
        }
        let flow = net.max_flow(s, t);
        flow_values.push(flow.value);
        flow_audit = flow_audit.max(net.audit(s, t));
        let candidate = &flow.source_side[..n];
        if !candidate.iter().any(|&b| b) {
            break;
        }
        let assoc = assoc_value(g, candidate);
        if !(assoc > 0.0) {
            break;
        }
        let next = volume(weights, candidate) / assoc;
        if !(next < lambda * (1.0 - tol.max(1e-15))) {
            break;
        }
        best = candidate.to_vec();
        lambda = next;
        lambdas.push(lambda);
    }
    let assoc = assoc_value(g, &best);
    let vol = volume(weights, &best);
    Ok(DensityResult {
        set: members(&best),
        ratio: vol / assoc,
        density: if vol > 0.0 { assoc / vol } else { f64::INFINITY },
        lambdas,
        flow_values,
        flow_audit,
    })
}
