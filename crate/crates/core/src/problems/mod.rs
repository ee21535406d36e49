//! Builders for the two applications and the exact unconstrained solver.
//!
//! Seed constraints `J ⊆ C` are removed by optimizing over `A = C \ J` on the
//! graph induced by `V \ J`. Constants that depend only on `J` are carried by
//! `P(A)` (one on non-empty sets), whose extension is `max_i f_i`; the set
//! `J` alone is compared separately.

mod dinkelbach;
pub mod maxflow;

pub use dinkelbach::{dinkelbach_max_density, DensityResult};

use alloc::vec;
use alloc::vec::Vec;

use crate::constraints::{penalty_value, theta_of, VolumeConstraint, DEFAULT_THETA_DENOMINATOR};
use crate::dc::{DcFunction, Term};
use crate::error::{Error, Result};
use crate::graph::{assoc_value, cut_value, mask, volume, Graph, VertexWeights};
use crate::ratiodca::{ConstrainedRatioProblem, SeedTerms};

/// Seed set `J` with the quantities the reduced objectives need.
#[derive(Clone, Debug)]
pub struct SeedReduction {
    /// Sorted, deduplicated seed in original ids.
    pub seed: Vec<usize>,
    pub seed_mask: Vec<bool>,
    /// `V \ J` in increasing order.
    pub active: Vec<usize>,
    /// Graph induced on `active`.
    pub graph: Graph,
    /// `d_i^J = sum_{j in J} w_ij` for active `i`.
    pub d_seed: Vec<f64>,
    /// Degrees inside the induced graph.
    pub d_active: Vec<f64>,
    /// `cut(J, V \ J)`.
    pub seed_cut: f64,
    pub seed_assoc: f64,
}

impl SeedReduction {
    pub fn new(g: &Graph, seed: &[usize]) -> Result<Self> {
        let n = g.n();
        if seed.iter().any(|&s| s >= n) {
            return Err(Error::Invalid("seed vertex out of range"));
        }
        let seed_mask = mask(n, seed);
        let seed: Vec<usize> = (0..n).filter(|&v| seed_mask[v]).collect();
        let active: Vec<usize> = (0..n).filter(|&v| !seed_mask[v]).collect();
        let graph = g.induced_subgraph(&active);
        let d_seed = active
            .iter()
            .map(|&v| g.neighbors(v).iter().filter(|(u, _)| seed_mask[*u]).map(|(_, w)| w).sum())
            .collect();
        let d_active = graph.degree().to_vec();
        Ok(SeedReduction {
            seed_cut: cut_value(g, &seed_mask),
            seed_assoc: assoc_value(g, &seed_mask),
            seed,
            seed_mask,
            active,
            graph,
            d_seed,
            d_active,
        })
    }

    pub fn m(&self) -> usize {
        self.active.len()
    }

    /// Weights restricted to the active vertices.
    pub fn restrict(&self, weights: &[f64]) -> Vec<f64> {
        self.active.iter().map(|&v| weights[v]).collect()
    }

    pub fn seed_volume(&self, weights: &[f64]) -> f64 {
        volume(weights, &self.seed_mask)
    }

    /// The constraint on active sets: `vol_h(A) + vol_h(J)` against the bound.
    pub fn reduce_constraint(&self, c: &VolumeConstraint) -> VolumeConstraint {
        VolumeConstraint {
            weights: self.restrict(&c.weights),
            bound: c.bound - self.seed_volume(&c.weights),
            direction: c.direction,
        }
    }

    /// Penalty terms of one constraint on active sets.
    fn penalty_terms(&self, c: &VolumeConstraint, penalty: &mut DcFunction) -> Result<()> {
        use crate::constraints::Direction;
        c.validate()?;
        let reduced = self.reduce_constraint(c);
        let k = reduced.bound;
        match c.direction {
            Direction::Upper => {
                if k < 0.0 {
                    return Err(Error::Infeasible("upper volume bound is below the seed volume"));
                }
                penalty.convex.push(Term::Modular(reduced.weights.clone()));
                penalty.concave.push(Term::Truncated { weights: reduced.weights, cap: k, coef: 1.0 });
            }
            // already met by the seed alone
            Direction::Lower if k <= 0.0 => {}
            Direction::Lower => {
                penalty.convex.push(Term::Max(k));
                penalty.concave.push(Term::Truncated { weights: reduced.weights, cap: k, coef: 1.0 });
            }
        }
        Ok(())
    }

    fn assemble(
        &self,
        g: &Graph,
        numerator: DcFunction,
        denominator: DcFunction,
        constraints: Vec<VolumeConstraint>,
        seed_values: (f64, f64),
        denominator_max: f64,
        gamma: f64,
    ) -> Result<ConstrainedRatioProblem> {
        let mut penalty = DcFunction::default();
        for c in &constraints {
            if c.weights.len() != g.n() {
                return Err(Error::Invalid("constraint weights must have one entry per vertex"));
            }
            self.penalty_terms(c, &mut penalty)?;
        }
        let seed_terms = (!self.seed.is_empty()).then(|| SeedTerms {
            numerator: seed_values.0,
            penalty: constraints.iter().map(|c| penalty_value(c, &self.seed_mask)).sum(),
            denominator: seed_values.1,
        });
        Ok(ConstrainedRatioProblem {
            graph: self.graph.clone(),
            active: self.active.clone(),
            seed: self.seed.clone(),
            n_full: g.n(),
            numerator,
            penalty,
            denominator,
            reduced_constraints: constraints.iter().map(|c| self.reduce_constraint(c)).collect(),
            theta: if constraints.is_empty() { 1.0 } else { theta_of(&constraints, DEFAULT_THETA_DENOMINATOR) },
            constraints,
            seed_terms,
            denominator_max,
            gamma,
        })
    }
}

/// Constrained maximum density: maximize `assoc(C) / vol_g(C)` subject to
/// `lower <= vol_h(C) <= upper` and `J ⊆ C`, solved as the minimization of
/// `vol_g(C) / assoc(C)`.
#[derive(Clone, Debug)]
pub struct DensityProblemSpec {
    pub g: VertexWeights,
    pub h: VertexWeights,
    pub lower: Option<f64>,
    pub upper: Option<f64>,
    pub seed: Vec<usize>,
}

impl DensityProblemSpec {
    /// `g = h = 1`, no bounds, empty seed.
    pub fn unit(n: usize) -> Self {
        DensityProblemSpec { g: VertexWeights::ones(n), h: VertexWeights::ones(n), lower: None, upper: None, seed: Vec::new() }
    }

    pub fn constraints(&self) -> Vec<VolumeConstraint> {
        let h = self.h.as_slice().to_vec();
        let mut out = Vec::new();
        if let Some(k) = self.lower {
            out.push(VolumeConstraint::lower(h.clone(), k));
        }
        if let Some(k) = self.upper {
            out.push(VolumeConstraint::upper(h, k));
        }
        out
    }
}

pub fn build_max_density(g: &Graph, spec: &DensityProblemSpec, gamma: f64) -> Result<ConstrainedRatioProblem> {
    let n = g.n();
    if spec.g.len() != n || spec.h.len() != n {
        return Err(Error::Invalid("vertex weights must have one entry per vertex"));
    }
    if let (Some(lo), Some(hi)) = (spec.lower, spec.upper) {
        if lo > hi {
            return Err(Error::Infeasible("lower volume bound exceeds the upper bound"));
        }
    }
    if g.num_edges() == 0 {
        return Err(Error::NoEdges);
    }
    let red = SeedReduction::new(g, &spec.seed)?;
    let gw = spec.g.as_slice();
    let seed_gvol = red.seed_volume(gw);

    let mut numerator = DcFunction::new(vec![Term::Modular(red.restrict(gw))], Vec::new());
    if seed_gvol > 0.0 {
        numerator.convex.push(Term::Max(seed_gvol));
    }
    // assoc(A ∪ J) = vol_{d + d^J}(A) + assoc(J) P(A) - cut inside V \ J
    let full_degree = red.restrict(g.degree());
    let modular: Vec<f64> = full_degree.iter().zip(&red.d_seed).map(|(d, dj)| d + dj).collect();
    let mut denominator = DcFunction::new(vec![Term::Modular(modular)], vec![Term::TotalVariation(1.0)]);
    if red.seed_assoc > 0.0 {
        denominator.convex.push(Term::Max(red.seed_assoc));
    }
    red.assemble(
        g,
        numerator,
        denominator,
        spec.constraints(),
        (seed_gvol, red.seed_assoc),
        g.total_volume(),
        gamma,
    )
}

/// Local normalized cut `cut(C) / (vol(C) vol(V \ C))` with `J ⊆ C` and
/// `vol(C) <= bound`. Volumes use the degrees unless overridden.
#[derive(Clone, Debug)]
pub struct NCutProblemSpec {
    pub seed: Vec<usize>,
    pub bound: f64,
    /// Replaces the degree vector in both volumes, e.g. degrees of the graph
    /// before a restriction.
    pub volume_weights: Option<VertexWeights>,
}

impl NCutProblemSpec {
    pub fn new(seed: Vec<usize>, bound: f64) -> Self {
        NCutProblemSpec { seed, bound, volume_weights: None }
    }

    pub fn weights(&self, g: &Graph) -> Vec<f64> {
        self.volume_weights.as_ref().map_or_else(|| g.degree().to_vec(), |w| w.as_slice().to_vec())
    }
}

pub fn build_local_ncut(g: &Graph, spec: &NCutProblemSpec, gamma: f64) -> Result<ConstrainedRatioProblem> {
    let n = g.n();
    if spec.seed.is_empty() {
        return Err(Error::Invalid("local normalized cut needs a non-empty seed"));
    }
    let vw = spec.weights(g);
    if vw.len() != n {
        return Err(Error::Invalid("volume weights must have one entry per vertex"));
    }
    let red = SeedReduction::new(g, &spec.seed)?;
    let total: f64 = vw.iter().sum();
    let seed_vol = red.seed_volume(&vw);
    if seed_vol >= spec.bound {
        return Err(Error::Infeasible("seed volume reaches the volume bound"));
    }
    // cut(A ∪ J) = cut inside V \ J + cut(J, V \ J) P(A) - vol_{d^J}(A)
    let mut numerator = DcFunction::new(vec![Term::TotalVariation(1.0)], vec![Term::Modular(red.d_seed.clone())]);
    if red.seed_cut > 0.0 {
        numerator.convex.push(Term::Max(red.seed_cut));
    }
    let denominator = DcFunction::new(
        vec![Term::VolumeProduct { weights: red.restrict(&vw), offset: seed_vol, total, coef: 1.0 }],
        Vec::new(),
    );
    red.assemble(
        g,
        numerator,
        denominator,
        vec![VolumeConstraint::upper(vw, spec.bound)],
        (red.seed_cut, seed_vol * (total - seed_vol)),
        total * total / 4.0,
        gamma,
    )
}
