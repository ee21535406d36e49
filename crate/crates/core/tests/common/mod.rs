#![allow(dead_code)]

use cfsp_core::baselines::{brute_force, OracleMode, OracleResult};
use cfsp_core::constraints::{FeasibilityRule, VolumeConstraint};
use cfsp_core::graph::volume;
use cfsp_core::problems::{build_local_ncut, build_max_density, DensityProblemSpec, NCutProblemSpec};
use cfsp_core::ratiodca::ConstrainedRatioProblem;
use cfsp_core::setfn::{Assoc, Cut, Volume, VolumeProduct};
use cfsp_core::{Graph, VertexWeights};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Barbell: triangles {0,1,2} and {3,4,5} joined by the edge (2,3).
pub fn b6() -> Graph {
    Graph::from_edges(6, [(0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0), (3, 4, 1.0), (3, 5, 1.0), (4, 5, 1.0), (2, 3, 1.0)])
        .unwrap()
}

/// Erdős–Rényi graph with unit weights.
pub fn erdos_renyi(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((i, j, 1.0));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Erdős–Rényi graph with weights drawn from {0.5, 1, 1.5, 2}.
pub fn weighted_er(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((i, j, 0.5 * rng.gen_range(1..=4) as f64));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// Two planted blocks of `half` vertices.
pub fn planted_partition(rng: &mut ChaCha8Rng, half: usize, p_in: f64, p_out: f64) -> Graph {
    let n = 2 * half;
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let p = if (i < half) == (j < half) { p_in } else { p_out };
            if rng.gen::<f64>() < p {
                edges.push((i, j, 1.0));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen::<f64>()).collect()
}

/// Random non-negative vector with deliberate ties and zeros.
pub fn tied_vector(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| if rng.gen_bool(0.3) { rng.gen_range(0..3) as f64 * 0.5 } else { rng.gen::<f64>() }).collect()
}

pub fn all_subsets(n: usize) -> impl Iterator<Item = Vec<bool>> {
    (0u32..1 << n).map(move |bits| (0..n).map(|i| bits >> i & 1 == 1).collect())
}

pub fn indicator(set: &[bool]) -> Vec<f64> {
    set.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    NCut,
    Density,
}

/// A seeded, volume-constrained instance with its exhaustive optimum.
pub struct Instance {
    pub graph: Graph,
    pub kind: Kind,
    pub problem: ConstrainedRatioProblem,
    pub rule: FeasibilityRule,
    pub g: Vec<f64>,
}

impl Instance {
    pub fn oracle(&self) -> OracleResult {
        let g = &self.graph;
        match self.kind {
            Kind::NCut => brute_force(g, &Cut(g), &VolumeProduct(g.degree()), &self.rule, OracleMode::Min),
            Kind::Density => brute_force(g, &Volume(&self.g), &Assoc(g), &self.rule, OracleMode::Min),
        }
        .unwrap()
    }
}

/// Random constrained instance on `n` vertices; alternates between local
/// normalized cut and seeded maximum density by `index`.
pub fn random_instance(rng: &mut ChaCha8Rng, index: usize, n_range: (usize, usize)) -> Instance {
    loop {
        let n = rng.gen_range(n_range.0..=n_range.1);
        let graph = if rng.gen_bool(0.5) { erdos_renyi(rng, n, 0.4) } else { weighted_er(rng, n, 0.4) };
        let seed_vertex = rng.gen_range(0..n);
        if graph.degree()[seed_vertex] == 0.0 {
            continue;
        }
        let kind = if index.is_multiple_of(2) { Kind::NCut } else { Kind::Density };
        match kind {
            Kind::NCut => {
                let d = graph.degree();
                let total = graph.total_volume();
                let frac = rng.gen_range(0.2..0.7);
                let bound = d[seed_vertex] + frac * (total - d[seed_vertex]);
                let spec = NCutProblemSpec::new(vec![seed_vertex], bound);
                let problem = build_local_ncut(&graph, &spec, 0.0).unwrap();
                let rule = FeasibilityRule::new(vec![seed_vertex], vec![VolumeConstraint::upper(d.to_vec(), bound)]);
                let g = d.to_vec();
                return Instance { graph, kind, problem, rule, g };
            }
            Kind::Density => {
                let mut seed = vec![seed_vertex];
                if rng.gen_bool(0.3) {
                    let (v, _) = graph.neighbors(seed_vertex)[0];
                    seed.push(v);
                }
                let h: Vec<f64> =
                    if rng.gen_bool(0.5) { vec![1.0; n] } else { (0..n).map(|_| 0.25 * rng.gen_range(1..=8) as f64).collect() };
                let g: Vec<f64> = if rng.gen_bool(0.5) { vec![1.0; n] } else { graph.degree().to_vec() };
                let seed_mask = cfsp_core::graph::mask(n, &seed);
                let seed_h = volume(&h, &seed_mask);
                let total_h: f64 = h.iter().sum();
                let upper = seed_h + rng.gen_range(0.25..0.6) * (total_h - seed_h);
                let lower = if rng.gen_bool(0.3) { Some(seed_h + 0.3 * (upper - seed_h)) } else { None };
                let spec = DensityProblemSpec {
                    g: VertexWeights::new(g.clone()).unwrap(),
                    h: VertexWeights::new(h).unwrap(),
                    lower,
                    upper: Some(upper),
                    seed: seed.clone(),
                };
                let problem = build_max_density(&graph, &spec, 0.0).unwrap();
                let rule = FeasibilityRule::new(seed, spec.constraints());
                let inst = Instance { graph, kind, problem, rule, g };
                if inst.oracle().best.is_some() {
                    return inst;
                }
            }
        }
    }
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}
