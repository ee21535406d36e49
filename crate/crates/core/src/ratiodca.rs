//! RatioDCA on the positive orthant, multi-start, and the penalty schedule.
//!
//! A [`ConstrainedRatioProblem`] lives on the active vertices `A = C \ J`; the
//! seed `J` is added back when sets are reported. Each outer step linearizes
//! the subtracted parts of numerator and denominator at the current iterate
//! and solves the resulting [`InnerProblem`].

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constraints::{gamma_sufficient, penalty_value, FeasibilityRule, GammaSchedule, VolumeConstraint};
use crate::dc::{DcFunction, Term};
use crate::error::{Error, Result};
use crate::graph::{mask, members, Graph};
use crate::inner::{solve_inner, DualState, InnerConfig, InnerProblem};
use crate::lovasz::{descending_order, threshold_sweep};

/// Unpenalized numerator, penalty and denominator of the seed set alone.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeedTerms {
    pub numerator: f64,
    pub penalty: f64,
    pub denominator: f64,
}

/// `min (R(A) + gamma T(A)) / S(A)` over subsets `A` of the active vertices.
#[derive(Clone, Debug)]
pub struct ConstrainedRatioProblem {
    /// Graph induced on the active vertices.
    pub graph: Graph,
    /// `active[i]` is the original id of active vertex `i`.
    pub active: Vec<usize>,
    /// Seed set in original ids, sorted.
    pub seed: Vec<usize>,
    pub n_full: usize,
    pub numerator: DcFunction,
    /// Sum of constraint penalties, expressed on the active vertices.
    pub penalty: DcFunction,
    pub denominator: DcFunction,
    /// Constraints on full vertex sets.
    pub constraints: Vec<VolumeConstraint>,
    /// The same constraints on active sets, bounds shifted by the seed.
    pub reduced_constraints: Vec<VolumeConstraint>,
    /// `None` when the seed is empty.
    pub seed_terms: Option<SeedTerms>,
    /// Upper bound on the denominator over all sets.
    pub denominator_max: f64,
    /// Lower bound on the penalty of infeasible sets.
    pub theta: f64,
    pub gamma: f64,
}

/// Values of the three set functions on one set.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SetTerms {
    pub numerator: f64,
    pub penalty: f64,
    pub denominator: f64,
}

impl SetTerms {
    pub fn ratio(&self) -> Option<f64> {
        (self.denominator > 0.0).then(|| self.numerator / self.denominator)
    }

    pub fn penalized_ratio(&self, gamma: f64) -> Option<f64> {
        (self.denominator > 0.0).then(|| (self.numerator + gamma * self.penalty) / self.denominator)
    }
}

impl ConstrainedRatioProblem {
    pub fn m(&self) -> usize {
        self.active.len()
    }

    pub fn with_gamma(&self, gamma: f64) -> Self {
        ConstrainedRatioProblem { gamma, ..self.clone() }
    }

    /// Terms for the full set `A ∪ J`; the empty mask stands for `J` alone.
    pub fn set_terms(&self, active_mask: &[bool]) -> Option<SetTerms> {
        if active_mask.iter().any(|&b| b) {
            Some(SetTerms {
                numerator: self.numerator.set_value(&self.graph, active_mask),
                penalty: self.penalty.set_value(&self.graph, active_mask),
                denominator: self.denominator.set_value(&self.graph, active_mask),
            })
        } else {
            self.seed_terms.map(|s| SetTerms { numerator: s.numerator, penalty: s.penalty, denominator: s.denominator })
        }
    }

    /// Extensions at `f`: `(R(f) + gamma T(f), S(f))`.
    pub fn continuous_terms(&self, f: &[f64]) -> (f64, f64) {
        let order = descending_order(f);
        let num = self.numerator.value_with_order(&self.graph, f, &order);
        let pen = if self.gamma > 0.0 { self.penalty.value_with_order(&self.graph, f, &order) } else { 0.0 };
        let den = self.denominator.value_with_order(&self.graph, f, &order);
        (num + self.gamma * pen, den)
    }

    /// `Q_gamma(f)`, or `None` where the denominator vanishes.
    pub fn continuous_ratio(&self, f: &[f64]) -> Option<f64> {
        let (num, den) = self.continuous_terms(f);
        (den > 0.0).then(|| num / den)
    }

    /// Original ids of `A ∪ J`, sorted.
    pub fn full_set(&self, active_mask: &[bool]) -> Vec<usize> {
        let mut set: Vec<usize> = self.seed.clone();
        set.extend(members(active_mask).into_iter().map(|i| self.active[i]));
        set.sort_unstable();
        set
    }

    /// Per-constraint satisfaction of a full vertex set.
    pub fn constraint_flags(&self, full: &[usize]) -> Vec<bool> {
        let m = mask(self.n_full, full);
        self.constraints.iter().map(|c| c.is_satisfied(&m)).collect()
    }

    pub fn is_feasible(&self, active_mask: &[bool]) -> bool {
        self.reduced_constraints.iter().all(|c| c.is_satisfied(active_mask))
            && (active_mask.iter().any(|&b| b) || self.seed_penalty() == 0.0)
    }

    fn seed_penalty(&self) -> f64 {
        let m = mask(self.n_full, &self.seed);
        self.constraints.iter().map(|c| penalty_value(c, &m)).sum()
    }

    /// Assemble the inner problem at iterate `f` with current ratio `lambda`.
    pub fn inner_problem(&self, f: &[f64], lambda: f64) -> Result<InnerProblem<'_>> {
        let g = &self.graph;
        let order = descending_order(f);
        let mut ip = InnerProblem { graph: g, c1: 0.0, c2: vec![0.0; self.m()], mu: 0.0 };
        let add_convex = |ip: &mut InnerProblem<'_>, t: &Term, s: f64| -> Result<()> {
            match t {
                Term::Modular(w) => ip.c2.iter_mut().zip(w).for_each(|(c, x)| *c += s * x),
                Term::Max(c) => ip.c1 += s * c,
                Term::TotalVariation(c) => ip.mu += s * c,
                _ => return Err(Error::Unsupported("only modular, max and TV terms can stay convex")),
            }
            Ok(())
        };
        let linearize = |ip: &mut InnerProblem<'_>, t: &Term, s: f64| {
            for (c, x) in ip.c2.iter_mut().zip(t.subgradient(g, f, &order)) {
                *c -= s * x;
            }
        };
        let parts = [(&self.numerator, 1.0), (&self.penalty, self.gamma)];
        for (func, s) in parts {
            if s == 0.0 {
                continue;
            }
            for t in &func.convex {
                add_convex(&mut ip, t, s)?;
            }
            for t in &func.concave {
                linearize(&mut ip, t, s);
            }
        }
        for t in &self.denominator.convex {
            linearize(&mut ip, t, lambda);
        }
        for t in &self.denominator.concave {
            add_convex(&mut ip, t, lambda)?;
        }
        Ok(ip)
    }

    /// Best threshold set of `f` under `Q_gamma`, compared against `J` alone.
    /// Returns the active mask (empty for `J`) and its penalized ratio.
    pub fn threshold(&self, f: &[f64]) -> Result<(Vec<bool>, f64)> {
        let m = self.m();
        let mut best: Option<(Vec<bool>, f64)> = None;
        if m > 0 {
            let order = descending_order(f);
            let mut num = self.numerator.sweep(&self.graph, &order);
            if self.gamma > 0.0 {
                for (x, p) in num.iter_mut().zip(self.penalty.sweep(&self.graph, &order)) {
                    *x += self.gamma * p;
                }
            }
            let den = self.denominator.sweep(&self.graph, &order);
            match threshold_sweep(f, &order, &num, &den, None) {
                Ok(r) => best = Some((mask(m, &r.best_set), r.best_value)),
                Err(Error::AllDenominatorsZero) => {}
                Err(e) => return Err(e),
            }
        }
        self.compare_with_seed(best).ok_or(Error::AllDenominatorsZero)
    }

    /// Best feasible threshold set of `f`, by the unpenalized ratio.
    pub fn feasible_threshold(&self, f: &[f64]) -> Option<(Vec<bool>, f64)> {
        let m = self.m();
        let mut best = None;
        if m > 0 {
            let order = descending_order(f);
            let num = self.numerator.sweep(&self.graph, &order);
            let den = self.denominator.sweep(&self.graph, &order);
            let ok = FeasibilityRule::new(Vec::new(), self.reduced_constraints.clone()).sweep(m, &order);
            if let Ok(r) = threshold_sweep(f, &order, &num, &den, Some(&ok)) {
                best = Some((mask(m, &r.best_set), r.best_value));
            }
        }
        if self.seed_penalty() > 0.0 {
            return best;
        }
        self.compare_with_seed(best)
    }

    fn compare_with_seed(&self, best: Option<(Vec<bool>, f64)>) -> Option<(Vec<bool>, f64)> {
        let seed_value = self.set_terms(&vec![false; self.m()]).and_then(|t| t.penalized_ratio(self.gamma));
        match (best, seed_value) {
            // the smaller set wins ties
            (Some((_, q)), Some(qj)) if qj <= q => Some((vec![false; self.m()], qj)),
            (Some(b), _) => Some(b),
            (None, Some(qj)) => Some((vec![false; self.m()], qj)),
            (None, None) => None,
        }
    }

    fn solution(&self, f: Vec<f64>, lambda: f64, active_mask: &[bool], trace: Vec<f64>, stats: RunStats) -> Solution {
        let set = self.full_set(active_mask);
        let terms = self.set_terms(active_mask).unwrap_or(SetTerms { numerator: 0.0, penalty: 0.0, denominator: 0.0 });
        Solution {
            f,
            active_set: members(active_mask),
            feasible: self.constraint_flags(&set),
            set,
            lambda,
            set_value: terms.ratio().unwrap_or(f64::INFINITY),
            penalized_value: terms.penalized_ratio(self.gamma).unwrap_or(f64::INFINITY),
            terms,
            gamma_used: self.gamma,
            trace,
            init_id: stats.init_id,
            outer_iterations: stats.outer,
            inner_iterations: stats.inner,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ScheduleConfig {
    /// Floor for the first positive gamma.
    pub min_initial: f64,
    pub growth: f64,
    /// Maximum number of positive gammas tried.
    pub max_steps: usize,
}

impl Default for ScheduleConfig {
    fn default() -> Self {
        ScheduleConfig { min_initial: 1e-3, growth: 2.0, max_steps: 60 }
    }
}

#[derive(Clone, Debug)]
pub struct SolverConfig {
    /// Stop when the relative decrease of the ratio falls below this.
    pub eps: f64,
    pub max_outer: usize,
    pub inner: InnerConfig,
    /// Inner optimum above `-zero_tol` counts as zero (termination).
    pub zero_tol: f64,
    pub initializations: usize,
    pub seed: u64,
    pub schedule: ScheduleConfig,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            eps: 1e-4,
            max_outer: 100,
            inner: InnerConfig::default(),
            zero_tol: 1e-10,
            initializations: 10,
            seed: 0,
            schedule: ScheduleConfig::default(),
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.eps > 0.0) || !(self.inner.tol > 0.0) {
            return Err(Error::Invalid("tolerances must be positive"));
        }
        if self.initializations == 0 && self.max_outer == 0 {
            return Err(Error::Invalid("solver needs iterations"));
        }
        if !(self.schedule.growth > 1.0) || !(self.schedule.min_initial > 0.0) {
            return Err(Error::Invalid("gamma schedule must grow from a positive start"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    /// Final iterate on the active vertices.
    pub f: Vec<f64>,
    /// Reported set in original ids, seed included.
    pub set: Vec<usize>,
    /// Thresholded active indices.
    pub active_set: Vec<usize>,
    /// `Q_gamma(f)` at the final iterate.
    pub lambda: f64,
    /// Unpenalized ratio of `set`.
    pub set_value: f64,
    /// Penalized ratio of `set` at `gamma_used`.
    pub penalized_value: f64,
    pub terms: SetTerms,
    pub feasible: Vec<bool>,
    pub gamma_used: f64,
    /// Ratio after every accepted step, starting with the initial one.
    pub trace: Vec<f64>,
    pub init_id: usize,
    pub outer_iterations: usize,
    pub inner_iterations: usize,
}

impl Solution {
    pub fn is_feasible(&self) -> bool {
        self.feasible.iter().all(|&b| b)
    }
}

#[derive(Clone, Copy, Debug, Default)]
struct RunStats {
    init_id: usize,
    outer: usize,
    inner: usize,
}

/// One RatioDCA run from `f0`.
pub fn ratio_dca(p: &ConstrainedRatioProblem, f0: &[f64], cfg: &SolverConfig) -> Result<Solution> {
    ratio_dca_tagged(p, f0, cfg, 0)
}

fn ratio_dca_tagged(p: &ConstrainedRatioProblem, f0: &[f64], cfg: &SolverConfig, init_id: usize) -> Result<Solution> {
    let m = p.m();
    let mut stats = RunStats { init_id, ..RunStats::default() };
    if m == 0 {
        let lambda = p.set_terms(&[]).and_then(|t| t.penalized_ratio(p.gamma)).ok_or(Error::ZeroDenominator)?;
        return Ok(p.solution(Vec::new(), lambda, &[], vec![lambda], stats));
    }
    if f0.len() != m || f0.iter().any(|&x| !(x >= 0.0) || !x.is_finite()) {
        return Err(Error::Invalid("start vector must be finite, non-negative and sized to the active set"));
    }
    let mut f = f0.to_vec();
    let mut lambda = p.continuous_ratio(&f).ok_or(Error::ZeroDenominator)?;
    let mut trace = vec![lambda];
    let mut state = DualState::new(&p.graph);
    while stats.outer < cfg.max_outer && lambda > 0.0 {
        stats.outer += 1;
        let ip = p.inner_problem(&f, lambda)?;
        let sol = solve_inner(&ip, &cfg.inner, &mut state)?;
        stats.inner += sol.iterations;
        if sol.is_zero() || sol.primal_value > -cfg.zero_tol {
            break;
        }
        let Some(next) = p.continuous_ratio(&sol.f) else { break };
        if next >= lambda {
            if next - lambda <= 1e-9 * lambda.max(1.0) {
                break;
            }
            return Err(Error::NonDescent { previous: lambda, next });
        }
        let decrease = (lambda - next) / lambda;
        f = sol.f;
        lambda = next;
        trace.push(lambda);
        if decrease < cfg.eps {
            break;
        }
    }
    let (active_mask, _) = p.threshold(&f)?;
    Ok(p.solution(f, lambda, &active_mask, trace, stats))
}

/// `count` i.i.d. uniform `[0, 1]^m` vectors from a seeded ChaCha8 stream.
pub fn random_starts(m: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (0..m).map(|_| rng.gen::<f64>()).collect()).collect()
}

/// Executes independent start jobs; implementations may run them in parallel.
pub trait StartRunner {
    fn run(&self, count: usize, job: &(dyn Fn(usize) -> Result<Solution> + Sync)) -> Vec<Result<Solution>>;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Sequential;

impl StartRunner for Sequential {
    fn run(&self, count: usize, job: &(dyn Fn(usize) -> Result<Solution> + Sync)) -> Vec<Result<Solution>> {
        (0..count).map(job).collect()
    }
}

/// Lowest penalized set value; ties go to the lowest `init_id`. With no
/// success the first error is returned.
pub fn pick_best(results: Vec<Result<Solution>>) -> Result<Solution> {
    let mut best: Option<Solution> = None;
    let mut first_err = None;
    for r in results {
        match r {
            Ok(s) => {
                let better = best.as_ref().is_none_or(|b| {
                    s.penalized_value < b.penalized_value
                        || (s.penalized_value == b.penalized_value && s.init_id < b.init_id)
                });
                if better {
                    best = Some(s);
                }
            }
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    best.ok_or_else(|| first_err.unwrap_or(Error::Invalid("no starts")))
}

/// RatioDCA from `cfg.initializations` random starts plus `warm` starts;
/// random starts get ids `0..k`, warm starts follow.
pub fn ratio_dca_multistart(p: &ConstrainedRatioProblem, cfg: &SolverConfig, warm: &[Vec<f64>]) -> Result<Solution> {
    ratio_dca_multistart_with(&Sequential, p, cfg, warm)
}

pub fn ratio_dca_multistart_with<R: StartRunner + ?Sized>(
    runner: &R,
    p: &ConstrainedRatioProblem,
    cfg: &SolverConfig,
    warm: &[Vec<f64>],
) -> Result<Solution> {
    cfg.validate()?;
    if p.m() == 0 {
        return ratio_dca(p, &[], cfg);
    }
    let mut starts = random_starts(p.m(), cfg.initializations, cfg.seed);
    starts.extend(warm.iter().cloned());
    if starts.is_empty() {
        return Err(Error::Invalid("no starting vectors"));
    }
    let job = |i: usize| ratio_dca_tagged(p, &starts[i], cfg, i);
    pick_best(runner.run(starts.len(), &job))
}

/// Indicator vector of an active mask.
pub fn indicator(active_mask: &[bool]) -> Vec<f64> {
    active_mask.iter().map(|&b| if b { 1.0 } else { 0.0 }).collect()
}

/// Outcome of the penalty schedule.
#[derive(Clone, Debug, PartialEq)]
pub struct ScheduleResult {
    pub solution: Solution,
    /// Gammas tried, starting with 0.
    pub gammas: Vec<f64>,
    /// Whether the reported set came from a feasible threshold seen earlier
    /// rather than from the final run's own thresholding.
    pub from_history: bool,
}

/// Solve at `gamma = 0`, then raise gamma until the returned set is feasible.
pub fn solve_with_gamma_schedule(
    p: &ConstrainedRatioProblem,
    cfg: &SolverConfig,
    warm: &[Vec<f64>],
) -> Result<ScheduleResult> {
    solve_with_gamma_schedule_with(&Sequential, p, cfg, warm)
}

pub fn solve_with_gamma_schedule_with<R: StartRunner + ?Sized>(
    runner: &R,
    base: &ConstrainedRatioProblem,
    cfg: &SolverConfig,
    warm: &[Vec<f64>],
) -> Result<ScheduleResult> {
    cfg.validate()?;
    let m = base.m();
    let mut problem = base.with_gamma(0.0);
    let mut schedule = GammaSchedule::new(cfg.schedule.min_initial, cfg.schedule.growth);
    let mut gammas = Vec::new();
    // best feasible set overall (possibly J alone) and best non-empty one
    let mut best: Option<(Vec<bool>, f64)> = None;
    let mut best_nonempty: Option<(Vec<bool>, f64)> = None;
    let offer = |cand: (Vec<bool>, f64), best: &mut Option<(Vec<bool>, f64)>, best_ne: &mut Option<(Vec<bool>, f64)>| {
        let nonempty = cand.0.iter().any(|&b| b);
        if best.as_ref().is_none_or(|b| cand.1 < b.1) {
            *best = Some(cand.clone());
        }
        if nonempty && best_ne.as_ref().is_none_or(|b| cand.1 < b.1) {
            *best_ne = Some(cand);
        }
    };
    let mut extra: Vec<Vec<f64>> = Vec::new();
    let mut last: Option<Solution>;
    loop {
        gammas.push(problem.gamma);
        let mut starts: Vec<Vec<f64>> = warm.to_vec();
        starts.extend(extra.iter().cloned());
        let sol = ratio_dca_multistart_with(runner, &problem, cfg, &starts)?;
        let active_mask = mask(m, &sol.active_set);
        if sol.is_feasible() {
            offer((active_mask.clone(), sol.set_value), &mut best, &mut best_nonempty);
        }
        if let Some(c) = problem.feasible_threshold(&sol.f) {
            offer(c, &mut best, &mut best_nonempty);
        }
        let feasible = sol.is_feasible();
        last = Some(sol);
        if feasible || m == 0 {
            break;
        }
        if problem.gamma == 0.0 {
            let lambda0 = last.as_ref().map_or(0.0, |s| s.set_value);
            schedule.initial = cfg.schedule.min_initial.max(if lambda0.is_finite() { lambda0 } else { 0.0 });
        }
        if let Some((a0, _)) = &best_nonempty {
            let t = problem.set_terms(a0).expect("non-empty feasible set has terms");
            if let Ok(cap) = gamma_sufficient(t.numerator, t.denominator, problem.denominator_max, problem.theta) {
                schedule.offer_cap(cap);
            }
            extra = vec![indicator(a0)];
        }
        if schedule.steps() >= cfg.schedule.max_steps {
            break;
        }
        let previous_f = last.as_ref().map(|s| s.f.clone()).unwrap_or_default();
        if previous_f.iter().any(|&x| x > 0.0) && !extra.contains(&previous_f) {
            extra.push(previous_f);
        }
        problem = problem.with_gamma(schedule.advance());
    }
    let sol = last.expect("at least one solve");
    if sol.is_feasible() && best.as_ref().is_none_or(|b| sol.set_value <= b.1) {
        return Ok(ScheduleResult { solution: sol, gammas, from_history: false });
    }
    match best {
        Some((a, _)) => {
            let stats = RunStats { init_id: sol.init_id, outer: sol.outer_iterations, inner: sol.inner_iterations };
            let s = problem.solution(sol.f, sol.lambda, &a, sol.trace, stats);
            Ok(ScheduleResult { solution: s, gammas, from_history: true })
        }
        None => Err(Error::Infeasible("no feasible set found within the gamma schedule")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::b6;
    use crate::problems::{build_local_ncut, build_max_density, DensityProblemSpec, NCutProblemSpec};

    fn strictly_decreasing(trace: &[f64]) -> bool {
        trace.windows(2).all(|w| w[1] < w[0])
    }

    #[test]
    fn unconstrained_density_reaches_full_graph() {
        let g = b6();
        let p = build_max_density(&g, &DensityProblemSpec::unit(6), 0.0).unwrap();
        let s = ratio_dca_multistart(&p, &SolverConfig::default(), &[]).unwrap();
        assert_eq!(s.set, (0..6).collect::<Vec<_>>());
        assert!((s.set_value - 3.0 / 7.0).abs() < 1e-12);
        assert!(strictly_decreasing(&s.trace));
    }

    #[test]
    fn density_schedule_enforces_cardinality() {
        let g = b6();
        let spec = DensityProblemSpec { seed: vec![0], upper: Some(3.0), ..DensityProblemSpec::unit(6) };
        let p = build_max_density(&g, &spec, 0.0).unwrap();
        let r = solve_with_gamma_schedule(&p, &SolverConfig::default(), &[]).unwrap();
        assert_eq!(r.solution.set, vec![0, 1, 2]);
        assert!((r.solution.set_value - 0.5).abs() < 1e-12);
        assert!(r.solution.is_feasible());
        assert!(r.gammas.len() > 1 && r.gammas[0] == 0.0);
    }

    #[test]
    fn local_ncut_on_b6() {
        let g = b6();
        let cfg = SolverConfig::default();
        let p = build_local_ncut(&g, &NCutProblemSpec::new(vec![0], 7.0), 0.0).unwrap();
        let r = solve_with_gamma_schedule(&p, &cfg, &[]).unwrap();
        assert_eq!(r.solution.set, vec![0, 1, 2]);
        assert!((r.solution.set_value - 1.0 / 49.0).abs() < 1e-15);
        assert_eq!(r.solution.gamma_used, 0.0);

        let p = build_local_ncut(&g, &NCutProblemSpec::new(vec![0], 4.0), 0.0).unwrap();
        let r = solve_with_gamma_schedule(&p, &cfg, &[]).unwrap();
        assert_eq!(r.solution.set, vec![0, 1]);
        assert!((r.solution.set_value - 1.0 / 20.0).abs() < 1e-15);
    }

    #[test]
    fn runs_are_reproducible() {
        let g = b6();
        let p = build_local_ncut(&g, &NCutProblemSpec::new(vec![0], 7.0), 0.0).unwrap();
        let cfg = SolverConfig { seed: 42, ..SolverConfig::default() };
        assert_eq!(ratio_dca_multistart(&p, &cfg, &[]).unwrap(), ratio_dca_multistart(&p, &cfg, &[]).unwrap());
        assert_eq!(random_starts(3, 2, 7), random_starts(3, 2, 7));
    }

    #[test]
    fn warm_start_at_sufficient_gamma_keeps_feasibility() {
        let g = b6();
        let spec = DensityProblemSpec { seed: vec![0], upper: Some(3.0), ..DensityProblemSpec::unit(6) };
        let p = build_max_density(&g, &spec, 0.0).unwrap();
        // A = {1} on active indices, i.e. C = {0, 1}
        let a = vec![true, false, false, false, false];
        let t = p.set_terms(&a).unwrap();
        let gamma = gamma_sufficient(t.numerator, t.denominator, p.denominator_max, p.theta).unwrap();
        let q = p.with_gamma(gamma);
        let s = ratio_dca(&q, &indicator(&a), &SolverConfig::default()).unwrap();
        assert!(s.is_feasible());
        assert!(s.set_value <= t.ratio().unwrap() + 1e-12);
    }

    #[test]
    fn full_seed_returns_the_seed() {
        let g = b6();
        let spec = DensityProblemSpec { seed: (0..6).collect(), ..DensityProblemSpec::unit(6) };
        let p = build_max_density(&g, &spec, 0.0).unwrap();
        let s = ratio_dca_multistart(&p, &SolverConfig::default(), &[]).unwrap();
        assert_eq!(s.set.len(), 6);
        assert!((s.set_value - 3.0 / 7.0).abs() < 1e-12);
    }

    #[test]
    fn start_vector_is_validated() {
        let g = b6();
        let p = build_local_ncut(&g, &NCutProblemSpec::new(vec![0], 7.0), 0.0).unwrap();
        let cfg = SolverConfig::default();
        assert!(ratio_dca(&p, &[1.0; 3], &cfg).is_err());
        assert!(ratio_dca(&p, &[-1.0, 0.0, 0.0, 0.0, 0.0], &cfg).is_err());
        assert_eq!(ratio_dca(&p, &[0.0; 5], &cfg).unwrap_err(), Error::ZeroDenominator);
    }
}
