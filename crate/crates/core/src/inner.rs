//! The convex inner problem of RatioDCA and its dual FISTA solver.
//!
//! Primal: minimize `c1 * max_i f_i + <f, c2> + mu * sum_edges w |f_i - f_j|`
//! over `f >= 0, ||f||_2 <= 1`. Adding `||f||^2 / 2` and dropping the ball
//! gives a problem with the same minimizing direction whose dual is
//! `max -||P+(-c1 v - c2 - mu B alpha)||^2 / 2` over `|alpha_e| <= 1` and `v` in
//! the simplex, where `(B alpha)_u += w alpha_e`, `(B alpha)_v -= w alpha_e` for
//! edge `e = (u, v)`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::math::{dot, max_value, norm2, sqrt};

#[derive(Clone, Debug)]
pub struct InnerProblem<'a> {
    pub graph: &'a Graph,
    pub c1: f64,
    pub c2: Vec<f64>,
    pub mu: f64,
}

impl InnerProblem<'_> {
    pub fn validate(&self) -> Result<()> {
        if !(self.c1 >= 0.0) || !(self.mu >= 0.0) {
            return Err(Error::Invalid("inner problem needs c1 >= 0 and mu >= 0"));
        }
        if self.c2.len() != self.graph.n() || self.c2.iter().any(|x| !x.is_finite()) {
            return Err(Error::Invalid("inner problem c2 has wrong length or non-finite entries"));
        }
        Ok(())
    }

    pub fn total_variation(&self, f: &[f64]) -> f64 {
        self.graph.edges().iter().map(|e| e.weight * (f[e.u] - f[e.v]).abs()).sum()
    }

    /// The one-homogeneous objective at `f`.
    pub fn objective(&self, f: &[f64]) -> f64 {
        let fmax = if f.is_empty() { 0.0 } else { max_value(f) };
        self.c1 * fmax + dot(f, &self.c2) + self.mu * self.total_variation(f)
    }
}

#[derive(Clone, Debug)]
pub struct InnerConfig {
    /// Stop once `gap / max(1, |dual|)` falls below this.
    pub tol: f64,
    pub max_iter: usize,
    /// Iterations between duality-gap evaluations.
    pub check_every: usize,
    /// Gradient-based momentum restart.
    pub restart: bool,
    pub power_steps: usize,
}

impl Default for InnerConfig {
    fn default() -> Self {
        InnerConfig { tol: 1e-6, max_iter: 200_000, check_every: 10, restart: true, power_steps: 30 }
    }
}

/// Dual variables, reusable as a warm start for problems on the same graph.
#[derive(Clone, Debug, PartialEq)]
pub struct DualState {
    /// One entry per edge, in `[-1, 1]`.
    pub alpha: Vec<f64>,
    /// Point of the simplex.
    pub v: Vec<f64>,
    /// Cached `lambda_max(A^T A)` of the graph.
    pub sigma_sq: Option<f64>,
}

impl DualState {
    pub fn new(g: &Graph) -> Self {
        let n = g.n();
        let v = if n == 0 { Vec::new() } else { vec![1.0 / n as f64; n] };
        DualState { alpha: vec![0.0; g.num_edges()], v, sigma_sq: None }
    }

    fn fits(&self, g: &Graph) -> bool {
        self.alpha.len() == g.num_edges() && self.v.len() == g.n()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InnerSolution {
    /// Primal point, `f >= 0` and `||f||_2 = 1` (or zero).
    pub f: Vec<f64>,
    /// Objective at `f`.
    pub primal_value: f64,
    /// Dual objective `-||z||^2 / 2`.
    pub dual_value: f64,
    /// Absolute duality gap of the regularized problem.
    pub gap: f64,
    pub relative_gap: f64,
    pub iterations: usize,
    pub converged: bool,
}

impl InnerSolution {
    pub fn is_zero(&self) -> bool {
        self.f.iter().all(|&x| x == 0.0)
    }
}

/// Euclidean projection onto `{v >= 0, sum v = 1}`.
pub fn simplex_project(x: &[f64]) -> Vec<f64> {
    if x.is_empty() {
        return Vec::new();
    }
    let mut sorted = x.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cumsum = 0.0;
    let mut tau = 0.0;
    for (k, &s) in sorted.iter().enumerate() {
        cumsum += s;
        let candidate = (cumsum - 1.0) / (k + 1) as f64;
        if s - candidate > 0.0 {
            tau = candidate;
        }
    }
    x.iter().map(|&xi| (xi - tau).max(0.0)).collect()
}

/// `(A alpha)` with two entries of magnitude `2 w` per edge.
fn apply_a(g: &Graph, alpha: &[f64], out: &mut [f64]) {
    out.iter_mut().for_each(|o| *o = 0.0);
    for (e, a) in g.edges().iter().zip(alpha) {
        out[e.u] += 2.0 * e.weight * a;
        out[e.v] -= 2.0 * e.weight * a;
    }
}

fn apply_at(g: &Graph, z: &[f64], out: &mut [f64]) {
    for (o, e) in out.iter_mut().zip(g.edges()) {
        *o = 2.0 * e.weight * (z[e.u] - z[e.v]);
    }
}

/// Power iteration for `lambda_max(A^T A)` from a fixed pseudo-random start.
pub fn operator_norm_sq(g: &Graph, steps: usize) -> f64 {
    let m = g.num_edges();
    if m == 0 {
        return 0.0;
    }
    // a start orthogonal to the top eigenvector is vanishingly unlikely here
    let mut x: Vec<f64> = (0..m)
        .map(|i| {
            let h = (i as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
            ((h >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        })
        .collect();
    let mut y = vec![0.0; g.n()];
    let mut estimate = 0.0;
    for _ in 0..steps.max(1) {
        let nx = norm2(&x);
        if nx == 0.0 {
            return 0.0;
        }
        x.iter_mut().for_each(|xi| *xi /= nx);
        apply_a(g, &x, &mut y);
        apply_at(g, &y, &mut x);
        estimate = dot(&y, &y);
    }
    estimate
}

/// Gershgorin bound on `lambda_max(A A^T) = 4 lambda_max(Laplacian of w^2)`.
fn gershgorin_bound(g: &Graph) -> f64 {
    (0..g.n())
        .map(|v| 8.0 * g.neighbors(v).iter().map(|(_, w)| w * w).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Safety factor applied to the power-iteration estimate.
const POWER_SAFETY: f64 = 1.1;

fn lipschitz_from_sigma(p: &InnerProblem<'_>, sigma_sq: f64) -> f64 {
    let half_mu = 0.5 * p.mu;
    half_mu * half_mu * sigma_sq + p.c1 * p.c1
}

fn sigma_sq(g: &Graph, steps: usize) -> f64 {
    (POWER_SAFETY * operator_norm_sq(g, steps)).min(gershgorin_bound(g))
}

/// Upper bound on the Lipschitz constant of the dual gradient.
pub fn lipschitz_estimate(p: &InnerProblem<'_>, power_steps: usize) -> f64 {
    lipschitz_from_sigma(p, sigma_sq(p.graph, power_steps))
}

struct Workspace {
    b: Vec<f64>,
    scratch: Vec<f64>,
    z: Vec<f64>,
    v: Vec<f64>,
}

impl Workspace {
    /// `v(alpha)` and `z(alpha)` for the dual point `alpha`.
    fn evaluate(&mut self, p: &InnerProblem<'_>, alpha: &[f64]) {
        apply_a(p.graph, alpha, &mut self.b);
        for (bi, c) in self.b.iter_mut().zip(&p.c2) {
            *bi = -c - 0.5 * p.mu * *bi;
        }
        if p.c1 > 0.0 {
            for (s, bi) in self.scratch.iter_mut().zip(&self.b) {
                *s = (bi / p.c1).max(0.0);
            }
            self.v = simplex_project(&self.scratch);
        }
        for ((zi, bi), vi) in self.z.iter_mut().zip(&self.b).zip(&self.v) {
            *zi = (bi - p.c1 * vi).max(0.0);
        }
    }

    /// `(gap, dual value)` at the current `z`.
    fn gap(&self, p: &InnerProblem<'_>) -> (f64, f64) {
        let zz = dot(&self.z, &self.z);
        let dual = -0.5 * zz;
        let primal = p.objective(&self.z) + 0.5 * zz;
        ((primal - dual).max(0.0), dual)
    }
}

/// Solve the inner problem from a warm-started dual state, which is updated
/// in place.
pub fn solve_inner(p: &InnerProblem<'_>, cfg: &InnerConfig, state: &mut DualState) -> Result<InnerSolution> {
    p.validate()?;
    if !(cfg.tol > 0.0) {
        return Err(Error::Invalid("inner tolerance must be positive"));
    }
    let g = p.graph;
    let n = g.n();
    if !state.fits(g) {
        *state = DualState::new(g);
    }
    let sigma = *state.sigma_sq.get_or_insert_with(|| sigma_sq(g, cfg.power_steps));
    let lipschitz = lipschitz_from_sigma(p, sigma);

    let mut ws = Workspace { b: vec![0.0; n], scratch: vec![0.0; n], z: vec![0.0; n], v: state.v.clone() };
    let mut beta_prev = state.alpha.clone();
    let mut y = state.alpha.clone();
    let mut beta = state.alpha.clone();
    let mut t = 1.0f64;
    let check_every = cfg.check_every.max(1);

    // alpha only moves when the TV term is present
    let step = if lipschitz > 0.0 && p.mu > 0.0 { p.mu / lipschitz } else { 0.0 };
    let mut iterations = 0;
    let mut converged = false;
    ws.evaluate(p, &beta);
    let (mut gap, mut dual) = ws.gap(p);
    if gap / dual.abs().max(1.0) < cfg.tol || step == 0.0 {
        converged = gap / dual.abs().max(1.0) < cfg.tol;
    } else {
        while iterations < cfg.max_iter {
            iterations += 1;
            ws.evaluate(p, &y);
            for ((bn, yi), e) in beta.iter_mut().zip(&y).zip(g.edges()) {
                *bn = (yi + step * e.weight * (ws.z[e.u] - ws.z[e.v])).clamp(-1.0, 1.0);
            }
            let restart = cfg.restart
                && y.iter().zip(&beta).zip(&beta_prev).map(|((yi, bn), bp)| (yi - bn) * (bn - bp)).sum::<f64>()
                    > 0.0;
            if restart {
                t = 1.0;
                y.copy_from_slice(&beta);
            } else {
                let t_next = 0.5 * (1.0 + sqrt(1.0 + 4.0 * t * t));
                let momentum = (t - 1.0) / t_next;
                for ((yi, bn), bp) in y.iter_mut().zip(&beta).zip(&beta_prev) {
                    *yi = bn + momentum * (bn - bp);
                }
                t = t_next;
            }
            beta_prev.copy_from_slice(&beta);
            if iterations % check_every == 0 || iterations == cfg.max_iter {
                ws.evaluate(p, &beta);
                (gap, dual) = ws.gap(p);
                if gap / dual.abs().max(1.0) < cfg.tol {
                    converged = true;
                    break;
                }
            }
        }
        if !converged {
            ws.evaluate(p, &beta);
            (gap, dual) = ws.gap(p);
        }
    }

    state.alpha = beta;
    state.v = ws.v.clone();
    let norm = norm2(&ws.z);
    let f: Vec<f64> = if norm > 0.0 { ws.z.iter().map(|x| x / norm).collect() } else { vec![0.0; n] };
    Ok(InnerSolution {
        primal_value: p.objective(&f),
        f,
        dual_value: dual,
        gap,
        relative_gap: gap / dual.abs().max(1.0),
        iterations,
        converged,
    })
}

/// Solve from a fresh dual state.
pub fn solve_inner_cold(p: &InnerProblem<'_>, cfg: &InnerConfig) -> Result<InnerSolution> {
    let mut state = DualState::new(p.graph);
    solve_inner(p, cfg, &mut state)
}
