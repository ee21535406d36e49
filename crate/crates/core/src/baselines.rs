//! Lazy random walk baseline and the exhaustive oracle.

use alloc::vec::Vec;

use crate::constraints::FeasibilityRule;
use crate::error::{Error, Result};
use crate::graph::{mask, Graph};
use crate::lovasz::{descending_order, threshold_sweep};
use crate::setfn::SetFunction;

#[derive(Clone, Debug)]
pub struct LrwConfig {
    pub max_steps: usize,
    /// Stop once `||p_{t+1} - p_t||_1` drops below this.
    pub tol: f64,
    /// Sweep `p_i / d_i` instead of `p_i`.
    pub degree_normalized: bool,
}

impl Default for LrwConfig {
    fn default() -> Self {
        LrwConfig { max_steps: 1000, tol: 1e-10, degree_normalized: false }
    }
}

/// Walk distribution under `M = (I + W D^-1) / 2`.
#[derive(Clone, Debug)]
pub struct LrwState<'g> {
    graph: &'g Graph,
    pub distribution: Vec<f64>,
    pub step: usize,
}

impl<'g> LrwState<'g> {
    /// Uniform on the seed.
    pub fn new(graph: &'g Graph, seed: &[usize]) -> Result<Self> {
        if seed.is_empty() {
            return Err(Error::Invalid("random walk needs a non-empty seed"));
        }
        if seed.iter().any(|&s| s >= graph.n() || graph.degree()[s] <= 0.0) {
            return Err(Error::Invalid("seed vertices must exist and have positive degree"));
        }
        let seed_mask = mask(graph.n(), seed);
        let k = seed_mask.iter().filter(|&&b| b).count() as f64;
        let distribution = seed_mask.iter().map(|&b| if b { 1.0 / k } else { 0.0 }).collect();
        Ok(LrwState { graph, distribution, step: 0 })
    }

    /// One lazy step; returns the L1 change. Isolated vertices keep their mass.
    pub fn advance(&mut self) -> f64 {
        let g = self.graph;
        let p = &self.distribution;
        let mut next: Vec<f64> = p.iter().map(|x| 0.5 * x).collect();
        for u in 0..g.n() {
            let d = g.degree()[u];
            if d > 0.0 {
                let share = 0.5 * p[u] / d;
                for &(v, w) in g.neighbors(u) {
                    next[v] += share * w;
                }
            } else {
                next[u] += 0.5 * p[u];
            }
        }
        let change = next.iter().zip(p).map(|(a, b)| (a - b).abs()).sum();
        self.distribution = next;
        self.step += 1;
        change
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LrwResult {
    pub set: Vec<usize>,
    pub value: f64,
    /// Walk step whose sweep produced `set` (0 is the initial distribution).
    pub step: usize,
    pub steps_run: usize,
}

/// Best feasible threshold set of the walk distributions over all steps.
pub fn lrw_cluster<N, D>(
    g: &Graph,
    seed: &[usize],
    numerator: &N,
    denominator: &D,
    rule: &FeasibilityRule,
    cfg: &LrwConfig,
) -> Result<LrwResult>
where
    N: SetFunction + ?Sized,
    D: SetFunction + ?Sized,
{
    let mut state = LrwState::new(g, seed)?;
    let mut best: Option<LrwResult> = None;
    let n = g.n();
    loop {
        let key: Vec<f64> = if cfg.degree_normalized {
            state
                .distribution
                .iter()
                .zip(g.degree())
                .map(|(p, d)| if *d > 0.0 { p / d } else { 0.0 })
                .collect()
        } else {
            state.distribution.clone()
        };
        let order = descending_order(&key);
        let ok = rule.sweep(n, &order);
        let num = numerator.sweep(&order);
        let den = denominator.sweep(&order);
        if let Ok(r) = threshold_sweep(&key, &order, &num, &den, Some(&ok)) {
            if best.as_ref().is_none_or(|b| r.best_value < b.value) {
                best = Some(LrwResult { set: r.best_set, value: r.best_value, step: state.step, steps_run: 0 });
            }
        }
        if state.step >= cfg.max_steps {
            break;
        }
        if state.advance() < cfg.tol {
            break;
        }
    }
    let steps_run = state.step;
    best.map(|b| LrwResult { steps_run, ..b }).ok_or(Error::NoFeasibleThreshold)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleMode {
    Min,
    Max,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleResult {
    /// Optimal set and value, if any feasible set has a positive denominator.
    pub best: Option<(Vec<usize>, f64)>,
    pub enumerated_count: u64,
    pub feasible_count: u64,
}

impl OracleResult {
    pub fn best_value(&self) -> Option<f64> {
        self.best.as_ref().map(|b| b.1)
    }
}

/// Largest vertex count the oracle accepts.
pub const ORACLE_CAP: usize = 20;

/// Exact optimum of `numerator / denominator` over all supersets of the
/// rule's seed that satisfy its constraints. Zero-denominator sets are
/// skipped; the first optimum in enumeration order wins ties.
pub fn brute_force<N, D>(
    g: &Graph,
    numerator: &N,
    denominator: &D,
    rule: &FeasibilityRule,
    mode: OracleMode,
) -> Result<OracleResult>
where
    N: SetFunction + ?Sized,
    D: SetFunction + ?Sized,
{
    let n = g.n();
    if n > ORACLE_CAP {
        return Err(Error::TooLarge { n, cap: ORACLE_CAP });
    }
    if rule.seed.iter().any(|&s| s >= n) {
        return Err(Error::Invalid("seed vertex out of range"));
    }
    let seed_mask = mask(n, &rule.seed);
    let free: Vec<usize> = (0..n).filter(|&v| !seed_mask[v]).collect();
    let mut set = seed_mask.clone();
    let mut best: Option<(u64, f64)> = None;
    let mut enumerated = 0u64;
    let mut feasible = 0u64;
    for bits in 0u64..1 << free.len() {
        for (i, &v) in free.iter().enumerate() {
            set[v] = bits >> i & 1 == 1;
        }
        enumerated += 1;
        if !rule.constraints.iter().all(|c| c.is_satisfied(&set)) {
            continue;
        }
        let den = denominator.eval(&set);
        if !(den > 0.0) {
            continue;
        }
        feasible += 1;
        let q = numerator.eval(&set) / den;
        let better = match (best, mode) {
            (None, _) => true,
            (Some((_, b)), OracleMode::Min) => q < b,
            (Some((_, b)), OracleMode::Max) => q > b,
        };
        if better {
            best = Some((bits, q));
        }
    }
    let best = best.map(|(bits, q)| {
        let mut members: Vec<usize> = rule.seed.clone();
        members.extend(free.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &v)| v));
        members.sort_unstable();
        members.dedup();
        (members, q)
    });
    Ok(OracleResult { best, enumerated_count: enumerated, feasible_count: feasible })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constraints::VolumeConstraint;
    use alloc::vec;
    use crate::graph::fixtures::b6;
    use crate::setfn::{Assoc, Cut, Volume, VolumeProduct};

    #[test]
    fn degree_vector_is_stationary() {
        let g = b6();
        let total = g.total_volume();
        let mut s = LrwState::new(&g, &[0]).unwrap();
        s.distribution = g.degree().iter().map(|d| d / total).collect();
        assert!(s.advance() < 1e-15);
    }

    #[test]
    fn mass_is_conserved() {
        let g = b6();
        let mut s = LrwState::new(&g, &[0, 4]).unwrap();
        for _ in 0..50 {
            s.advance();
            assert!((s.distribution.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            assert!(s.distribution.iter().all(|&p| p >= 0.0));
        }
    }

    #[test]
    fn lrw_on_b6_finds_left_triangle() {
        let g = b6();
        let rule = FeasibilityRule::new(vec![0], vec![VolumeConstraint::upper(g.degree().to_vec(), 7.0)]);
        let r = lrw_cluster(&g, &[0], &Cut(&g), &VolumeProduct(g.degree()), &rule, &LrwConfig::default()).unwrap();
        assert_eq!(r.set, vec![0, 1, 2]);
        assert!((r.value - 1.0 / 49.0).abs() < 1e-15);
    }

    #[test]
    fn oracle_examples() {
        let g = b6();
        let ones = [1.0; 6];
        let free = FeasibilityRule::default();
        let r = brute_force(&g, &Assoc(&g), &Volume(&ones), &free, OracleMode::Max).unwrap();
        assert_eq!(r.best, Some(((0..6).collect(), 7.0 / 3.0)));
        assert_eq!(r.enumerated_count, 64);

        let rule = FeasibilityRule::new(vec![0], vec![VolumeConstraint::upper(g.degree().to_vec(), 7.0)]);
        let r = brute_force(&g, &Cut(&g), &VolumeProduct(g.degree()), &rule, OracleMode::Min).unwrap();
        assert_eq!(r.best, Some((vec![0, 1, 2], 1.0 / 49.0)));
        assert_eq!(r.enumerated_count, 32);

        let rule = FeasibilityRule::new(vec![2], vec![VolumeConstraint::upper(g.degree().to_vec(), 1.0)]);
        let r = brute_force(&g, &Cut(&g), &VolumeProduct(g.degree()), &rule, OracleMode::Min).unwrap();
        assert_eq!(r.feasible_count, 0);
        assert!(r.best.is_none());

        let big = Graph::empty(21);
        assert!(matches!(
            brute_force(&big, &Cut(&big), &Volume(&[1.0; 21]), &free, OracleMode::Min),
            Err(Error::TooLarge { .. })
        ));
    }
}
