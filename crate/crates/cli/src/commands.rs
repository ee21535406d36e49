//! One pipeline per subcommand. Each fills the run record in place.

use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use cfsp_core::baselines::{brute_force, lrw_cluster, LrwConfig, OracleMode};
use cfsp_core::constraints::{Direction, FeasibilityRule, VolumeConstraint};
use cfsp_core::graph::{assoc_value, coauthor_graph, cut_value, mask, restrict_ball, volume, Restriction};
use cfsp_core::problems::{
    build_local_ncut, build_max_density, dinkelbach_max_density, DensityProblemSpec, NCutProblemSpec,
};
use cfsp_core::ratiodca::{solve_with_gamma_schedule_with, ConstrainedRatioProblem, ScheduleResult, SolverConfig};
use cfsp_core::setfn::{Assoc, BalancedMin, Cut, SetFunction, Volume, VolumeProduct};
use cfsp_core::{Graph, VertexWeights};
use log::info;

use crate::io::{self, LoadedGraph};
use crate::record::{ConstraintReport, GraphStats, Objective, RestrictedStats, RunRecord, Stage, Status};
use crate::runner::PoolRunner;
use crate::{
    CutObjective, GlobalArgs, GraphArgs, IngestArgs, LocalCutArgs, LrwArgs, MaxDensityArgs, OracleArgs,
    OracleObjective, RestrictArgs, SolveArgs,
};

/// A configuration with no feasible set; exits with code 2.
#[derive(Debug)]
pub struct Infeasible(pub String);

impl fmt::Display for Infeasible {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "infeasible: {}", self.0)
    }
}

impl std::error::Error for Infeasible {}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

/// The graph being solved and the way back to original IDs.
struct Prepared {
    loaded: LoadedGraph,
    restriction: Option<Restriction>,
}

impl Prepared {
    fn graph(&self) -> &Graph {
        self.restriction.as_ref().map_or(&self.loaded.graph, |r| &r.graph)
    }

    fn original(&self, v: usize) -> u64 {
        let compact = self.restriction.as_ref().map_or(v, |r| r.to_original[v]);
        self.loaded.ids.original(compact)
    }

    fn originals(&self, set: &[usize]) -> Vec<u64> {
        let mut ids: Vec<u64> = set.iter().map(|&v| self.original(v)).collect();
        ids.sort_unstable();
        ids
    }

    /// Per-vertex values given on the loaded graph, moved to the solved one.
    fn values(&self, full: Vec<f64>) -> Vec<f64> {
        match &self.restriction {
            Some(r) => r.map_weights(&full),
            None => full,
        }
    }

    /// Degrees before the restriction, on the solved vertices.
    fn original_degrees(&self) -> Vec<f64> {
        self.values(self.loaded.graph.degree().to_vec())
    }

    fn load_weights(&self, path: &std::path::Path) -> Result<Vec<f64>> {
        Ok(self.values(io::load_weights(path, &self.loaded.ids)?))
    }
}

fn load(args: &GraphArgs, rec: &mut RunRecord) -> Result<LoadedGraph> {
    let t = Instant::now();
    let loaded = io::load_edge_list(&args.graph, args.weighted)?;
    let g = &loaded.graph;
    rec.graph = GraphStats { n: g.n(), m: g.num_edges(), total_weight: g.total_volume() / 2.0, restricted: None };
    rec.timings_ms.load_ms = ms(t);
    info!("loaded {} vertices and {} edges", g.n(), g.num_edges());
    Ok(loaded)
}

/// Maps seed IDs and applies the optional ball restriction. Returns seed
/// indices in the solved graph.
fn prepare(loaded: LoadedGraph, seed_ids: &[u64], restrict: &RestrictArgs, rec: &mut RunRecord) -> Result<(Prepared, Vec<usize>)> {
    let mut seed = Vec::with_capacity(seed_ids.len());
    for &id in seed_ids {
        let v = loaded.ids.compact(id).ok_or_else(|| anyhow!("seed vertex {id} does not occur in the graph"))?;
        if !seed.contains(&v) {
            seed.push(v);
        }
    }
    let Some(radius) = restrict.radius else {
        if restrict.min_count.is_some() {
            bail!("--min-count needs --radius");
        }
        return Ok((Prepared { loaded, restriction: None }, seed));
    };
    if seed.is_empty() {
        bail!("--radius needs a seed");
    }
    let attr = match &restrict.attr_file {
        Some(p) => Some(io::load_attribute(p, &loaded.ids)?),
        None => None,
    };
    let filter = attr.as_deref().zip(restrict.min_count);
    let r = restrict_ball(&loaded.graph, &seed, radius, filter)?;
    rec.graph.restricted =
        Some(RestrictedStats { n: r.graph.n(), m: r.graph.num_edges(), radius: Some(radius), min_count: restrict.min_count });
    info!("restricted to {} vertices", r.graph.n());
    let seed = seed.iter().map(|&v| r.from_original[v].expect("seed vertices are kept")).collect();
    Ok((Prepared { loaded, restriction: Some(r) }, seed))
}

fn report(c: &VolumeConstraint, weights: &'static str, set: &[bool]) -> ConstraintReport {
    ConstraintReport {
        direction: match c.direction {
            Direction::Upper => "upper",
            Direction::Lower => "lower",
        },
        weights,
        bound: c.bound,
        volume: volume(&c.weights, set),
        slack: c.slack(set),
        satisfied: c.is_satisfied(set),
    }
}

fn solver_config(s: &SolveArgs) -> SolverConfig {
    SolverConfig { initializations: s.inits, seed: s.rng, ..SolverConfig::default() }
}

/// Cut objective of `set` recomputed from the graph primitives.
fn cut_objective(obj: CutObjective, g: &Graph, vw: &[f64], set: &[bool]) -> Objective {
    let num = cut_value(g, set);
    let den = match obj {
        CutObjective::Ncut => VolumeProduct(vw).eval(set),
        CutObjective::Cheeger => BalancedMin(vw).eval(set),
    };
    let name = match obj {
        CutObjective::Ncut => "ncut",
        CutObjective::Cheeger => "cheeger",
    };
    Objective { name: name.into(), value: num / den, numerator: num, denominator: den, lambda: None, penalized_value: None }
}

fn density_objective(g: &Graph, gw: &[f64], set: &[bool]) -> Objective {
    let num = assoc_value(g, set);
    let den = volume(gw, set);
    Objective { name: "density".into(), value: num / den, numerator: num, denominator: den, lambda: None, penalized_value: None }
}

fn run_schedule(runner: &PoolRunner, p: &ConstrainedRatioProblem, cfg: &SolverConfig) -> Result<ScheduleResult> {
    let res = solve_with_gamma_schedule_with(runner, p, cfg, &[])?;
    info!(
        "schedule finished after {} penalty weights, value {}",
        res.gammas.len(),
        res.solution.set_value
    );
    Ok(res)
}

fn fill_solution(rec: &mut RunRecord, prep: &Prepared, res: &ScheduleResult, mut objective: Objective) {
    let s = &res.solution;
    objective.lambda = Some(s.lambda);
    objective.penalized_value = Some(s.penalized_value);
    rec.set = prep.originals(&s.set);
    rec.objective = Some(objective);
    rec.gamma_used = Some(s.gamma_used);
    rec.gammas = res.gammas.clone();
    rec.detail("best_start", s.init_id);
    rec.detail("outer_iterations", s.outer_iterations);
    rec.detail("inner_iterations", s.inner_iterations);
    rec.detail("from_history", res.from_history);
}

fn set_status(rec: &mut RunRecord) {
    if rec.constraints.iter().any(|c| !c.satisfied) {
        rec.status = Status::Infeasible;
        rec.message = Some("returned set violates a constraint".into());
    }
}

pub fn local_cut(a: &LocalCutArgs, rec: &mut RunRecord) -> Result<()> {
    let loaded = load(&a.graph, rec)?;
    let (prep, seed) = prepare(loaded, &a.seed, &a.restrict, rec)?;
    let g = prep.graph();
    let (vw, label) = match &a.h_file {
        Some(p) => (prep.load_weights(p)?, "h"),
        None => (g.degree().to_vec(), "degree"),
    };
    let total: f64 = vw.iter().sum();
    let runner = PoolRunner::new(a.solve.threads)?;
    let cfg = solver_config(&a.solve);
    rec.rng_seed = Some(a.solve.rng);
    rec.detail("threads", runner.threads());
    let t = Instant::now();
    let spec = |bound: f64| -> Result<NCutProblemSpec> {
        Ok(NCutProblemSpec { seed: seed.clone(), bound, volume_weights: Some(VertexWeights::new(vw.clone())?) })
    };
    let bound = match (a.bound.vol, a.bound.vol_total_frac, a.bound.vol_frac) {
        (Some(k), _, _) => k,
        (_, Some(beta), _) => beta * total,
        (_, _, Some(alpha)) => {
            let p = build_local_ncut(g, &spec(total)?, 0.0)?;
            let s0 = run_schedule(&runner, &p, &cfg)?.solution;
            let v0 = volume(&vw, &mask(g.n(), &s0.set));
            let bound = alpha * v0;
            info!("seed-only solution has volume {v0}; bound {bound}");
            rec.stages.push(Stage {
                name: "seed-only",
                set: prep.originals(&s0.set),
                value: s0.set_value,
                volume: v0,
                derived_bound: bound,
            });
            bound
        }
        _ => total,
    };
    let p = build_local_ncut(g, &spec(bound)?, 0.0)?;
    let res = run_schedule(&runner, &p, &cfg)?;
    rec.timings_ms.solve_ms = ms(t);
    let set = mask(g.n(), &res.solution.set);
    rec.constraints = vec![report(&VolumeConstraint::upper(vw.clone(), bound), label, &set)];
    fill_solution(rec, &prep, &res, cut_objective(CutObjective::Ncut, g, &vw, &set));
    rec.starts = runner.take_log();
    set_status(rec);
    Ok(())
}

pub fn max_density(a: &MaxDensityArgs, rec: &mut RunRecord) -> Result<()> {
    let loaded = load(&a.graph, rec)?;
    let (prep, seed) = prepare(loaded, &a.seed, &a.restrict, rec)?;
    let g = prep.graph();
    let n = g.n();
    let gw = match &a.g_file {
        Some(p) => prep.load_weights(p)?,
        None if a.g_degree => prep.original_degrees(),
        None => vec![1.0; n],
    };
    let (hw, label) = match &a.h_file {
        Some(p) => (prep.load_weights(p)?, "h"),
        None => (vec![1.0; n], "ones"),
    };
    let runner = PoolRunner::new(a.solve.threads)?;
    let cfg = solver_config(&a.solve);
    rec.rng_seed = Some(a.solve.rng);
    rec.detail("threads", runner.threads());
    let t = Instant::now();
    let spec = |lower: Option<f64>, upper: Option<f64>| -> Result<DensityProblemSpec> {
        Ok(DensityProblemSpec {
            g: VertexWeights::new(gw.clone())?,
            h: VertexWeights::new(hw.clone())?,
            lower,
            upper,
            seed: seed.clone(),
        })
    };
    let upper = match (a.upper, a.vol_total_frac, a.vol_frac) {
        (Some(k), _, _) => Some(k),
        (_, Some(beta), _) => Some(beta * hw.iter().sum::<f64>()),
        (_, _, Some(alpha)) => {
            let p = build_max_density(g, &spec(None, None)?, 0.0)?;
            let s0 = run_schedule(&runner, &p, &cfg)?.solution;
            let v0 = volume(&hw, &mask(n, &s0.set));
            rec.stages.push(Stage {
                name: "seed-only",
                set: prep.originals(&s0.set),
                value: 1.0 / s0.set_value,
                volume: v0,
                derived_bound: alpha * v0,
            });
            Some(alpha * v0)
        }
        _ => None,
    };
    let spec = spec(a.lower, upper)?;
    let p = build_max_density(g, &spec, 0.0)?;
    let res = run_schedule(&runner, &p, &cfg)?;
    rec.timings_ms.solve_ms = ms(t);
    let set = mask(n, &res.solution.set);
    rec.constraints = spec.constraints().iter().map(|c| report(c, label, &set)).collect();
    fill_solution(rec, &prep, &res, density_objective(g, &gw, &set));
    rec.starts = runner.take_log();
    set_status(rec);
    Ok(())
}

pub fn max_density_global(a: &GlobalArgs, rec: &mut RunRecord) -> Result<()> {
    let loaded = load(&a.graph, rec)?;
    let gw = match &a.g_file {
        Some(p) => io::load_weights(p, &loaded.ids)?,
        None if a.g_degree => loaded.graph.degree().to_vec(),
        None => vec![1.0; loaded.graph.n()],
    };
    let prep = Prepared { loaded, restriction: None };
    let g = prep.graph();
    let t = Instant::now();
    let r = dinkelbach_max_density(g, &gw, 1e-12)?;
    rec.timings_ms.solve_ms = ms(t);
    let set = mask(g.n(), &r.set);
    rec.set = prep.originals(&r.set);
    rec.objective = Some(density_objective(g, &gw, &set));
    rec.detail("lambdas", &r.lambdas);
    rec.detail("flow_values", &r.flow_values);
    rec.detail("flow_audit", r.flow_audit);
    Ok(())
}

pub fn lrw(a: &LrwArgs, rec: &mut RunRecord) -> Result<()> {
    let loaded = load(&a.graph, rec)?;
    let (prep, seed) = prepare(loaded, &a.seed, &a.restrict, rec)?;
    let g = prep.graph();
    let (vw, label) = match &a.h_file {
        Some(p) => (prep.load_weights(p)?, "h"),
        None => (g.degree().to_vec(), "degree"),
    };
    let total: f64 = vw.iter().sum();
    let bound = a.vol.or(a.vol_total_frac.map(|b| b * total));
    let constraints: Vec<VolumeConstraint> = bound.map(|k| VolumeConstraint::upper(vw.clone(), k)).into_iter().collect();
    let rule = FeasibilityRule::new(seed.clone(), constraints.clone());
    let cfg = LrwConfig { max_steps: a.max_steps, degree_normalized: a.degree_normalized, ..LrwConfig::default() };
    let t = Instant::now();
    let r = match a.objective {
        CutObjective::Ncut => lrw_cluster(g, &seed, &Cut(g), &VolumeProduct(&vw), &rule, &cfg),
        CutObjective::Cheeger => lrw_cluster(g, &seed, &Cut(g), &BalancedMin(&vw), &rule, &cfg),
    }?;
    rec.timings_ms.solve_ms = ms(t);
    let set = mask(g.n(), &r.set);
    rec.set = prep.originals(&r.set);
    rec.objective = Some(cut_objective(a.objective, g, &vw, &set));
    rec.constraints = constraints.iter().map(|c| report(c, label, &set)).collect();
    rec.detail("best_step", r.step);
    rec.detail("steps_run", r.steps_run);
    set_status(rec);
    Ok(())
}

pub fn oracle(a: &OracleArgs, rec: &mut RunRecord) -> Result<()> {
    let loaded = load(&a.graph, rec)?;
    let (prep, seed) = prepare(loaded, &a.seed, &a.restrict, rec)?;
    let g = prep.graph();
    let n = g.n();
    let density = a.objective == OracleObjective::Density;
    let (hw, label) = match (&a.h_file, density) {
        (Some(p), _) => (prep.load_weights(p)?, "h"),
        (None, false) => (g.degree().to_vec(), "degree"),
        (None, true) => (vec![1.0; n], "ones"),
    };
    let gw = match &a.g_file {
        Some(p) if density => prep.load_weights(p)?,
        Some(_) => bail!("--g-file only applies to the density objective"),
        None if a.g_degree && density => prep.original_degrees(),
        None if a.g_degree => bail!("--g-degree only applies to the density objective"),
        None => vec![1.0; n],
    };
    let total: f64 = hw.iter().sum();
    let mut constraints = Vec::new();
    if let Some(k) = a.lower {
        constraints.push(VolumeConstraint::lower(hw.clone(), k));
    }
    if let Some(k) = a.vol.or(a.upper).or(a.vol_total_frac.map(|b| b * total)) {
        constraints.push(VolumeConstraint::upper(hw.clone(), k));
    }
    let rule = FeasibilityRule::new(seed, constraints.clone());
    let t = Instant::now();
    let r = match a.objective {
        OracleObjective::Ncut => brute_force(g, &Cut(g), &VolumeProduct(&hw), &rule, OracleMode::Min),
        OracleObjective::Cheeger => brute_force(g, &Cut(g), &BalancedMin(&hw), &rule, OracleMode::Min),
        OracleObjective::Density => brute_force(g, &Assoc(g), &Volume(&gw), &rule, OracleMode::Max),
    }?;
    rec.timings_ms.solve_ms = ms(t);
    rec.detail("enumerated", r.enumerated_count);
    rec.detail("feasible", r.feasible_count);
    let Some((best, _)) = r.best else {
        return Err(Infeasible("no feasible set with a positive denominator".into()).into());
    };
    let set = mask(n, &best);
    rec.set = prep.originals(&best);
    rec.objective = Some(match a.objective {
        OracleObjective::Ncut => cut_objective(CutObjective::Ncut, g, &hw, &set),
        OracleObjective::Cheeger => cut_objective(CutObjective::Cheeger, g, &hw, &set),
        OracleObjective::Density => density_objective(g, &gw, &set),
    });
    rec.constraints = constraints.iter().map(|c| report(c, label, &set)).collect();
    Ok(())
}

pub fn ingest_coauthor(a: &IngestArgs, rec: &mut RunRecord) -> Result<()> {
    let t = Instant::now();
    let pubs = io::load_publications(&a.publications)?;
    let ids = io::author_ids(&pubs);
    let compact: Vec<Vec<usize>> =
        pubs.iter().map(|p| p.iter().map(|&x| ids.compact(x).expect("author listed")).collect()).collect();
    let g = coauthor_graph(ids.len(), &compact)?;
    rec.timings_ms.load_ms = ms(t);
    let connected = g.degree().iter().filter(|&&d| d > 0.0).count();
    rec.graph = GraphStats { n: connected, m: g.num_edges(), total_weight: g.total_volume() / 2.0, restricted: None };
    rec.detail("publications", pubs.len());
    rec.detail("authors", ids.len());

    let file = File::create(&a.out).with_context(|| format!("cannot create {}", a.out.display()))?;
    let mut out = BufWriter::new(file);
    writeln!(out, "# co-author graph: w_ij = sum over shared publications of 1/|authors|")?;
    io::write_edge_list(&mut out, &g, &ids)?;
    out.flush()?;
    if let Some(path) = &a.counts_out {
        let mut counts = vec![0u32; ids.len()];
        for p in &compact {
            let mut p = p.clone();
            p.sort_unstable();
            p.dedup();
            for v in p {
                counts[v] += 1;
            }
        }
        let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
        let mut out = BufWriter::new(file);
        for (v, c) in counts.iter().enumerate() {
            writeln!(out, "{} {c}", ids.original(v))?;
        }
        out.flush()?;
    }
    Ok(())
}
