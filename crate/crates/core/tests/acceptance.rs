//! Acceptance suite: one line per criterion, non-zero exit if any fails.

mod common;

use std::time::Instant;

use cfsp_core::baselines::{brute_force, lrw_cluster, LrwConfig, OracleMode};
use cfsp_core::constraints::{
    gamma_sufficient, penalty_dc, penalty_value, t2_subgradient, FeasibilityRule, VolumeConstraint,
};
use cfsp_core::graph::{mask, volume};
use cfsp_core::inner::{solve_inner_cold, InnerConfig, InnerProblem};
use cfsp_core::lovasz::{descending_order, greedy_subgradient, lovasz_value};
use cfsp_core::problems::{
    build_local_ncut, build_max_density, dinkelbach_max_density, DensityProblemSpec, NCutProblemSpec,
};
use cfsp_core::ratiodca::{
    ratio_dca, ratio_dca_multistart, solve_with_gamma_schedule, ConstrainedRatioProblem, Solution, SolverConfig,
};
use cfsp_core::setfn::{Assoc, Cut, FnSetFunction, NonEmpty, SetFunction, Truncated, Volume, VolumeProduct};
use common::*;
use rand::Rng;

struct Report {
    failures: usize,
    traces: Vec<Vec<f64>>,
}

impl Report {
    fn line(&mut self, id: usize, pass: bool, detail: String) {
        println!("criterion {id:>2}: {} {detail}", if pass { "PASS" } else { "FAIL" });
        if !pass {
            self.failures += 1;
        }
    }

    fn keep(&mut self, s: &Solution) {
        self.traces.push(s.trace.clone());
    }
}

fn main() {
    let mut r = Report { failures: 0, traces: Vec::new() };
    let start = Instant::now();
    global_oracle(&mut r);
    tightness(&mut r);
    thresholding(&mut r);
    quality_guarantee(&mut r);
    feasibility(&mut r);
    inner_oracle(&mut r);
    subgradients(&mut r);
    recovery(&mut r);
    baseline_dominance(&mut r);
    descent(&mut r);
    println!("acceptance finished in {:.1} s", start.elapsed().as_secs_f64());
    if r.failures > 0 {
        println!("{} criteria failed", r.failures);
        std::process::exit(1);
    }
}

/// Dinkelbach against exhaustive search on random unit-weight graphs.
fn global_oracle(r: &mut Report) {
    let mut rng = rng(1);
    let t = Instant::now();
    let mut ok = 0;
    let mut worst = 0.0f64;
    let total = 100;
    let mut done = 0;
    while done < total {
        let n = rng.gen_range(5..=12);
        let g = erdos_renyi(&mut rng, n, 0.4);
        if g.num_edges() == 0 {
            continue;
        }
        done += 1;
        let ones = vec![1.0; n];
        let exact = dinkelbach_max_density(&g, &ones, 1e-12).unwrap();
        let brute = brute_force(&g, &Volume(&ones), &Assoc(&g), &FeasibilityRule::default(), OracleMode::Min).unwrap();
        let diff = (exact.ratio - brute.best_value().unwrap()).abs();
        worst = worst.max(diff);
        if diff < 1e-9 && exact.flow_audit < 1e-9 {
            ok += 1;
        }
    }
    let secs = t.elapsed().as_secs_f64();
    r.line(
        1,
        ok == total && secs < 10.0,
        format!("Dinkelbach = brute force on {ok}/{total} graphs, max |diff| {worst:.1e}, {secs:.2} s"),
    );
}

/// Extensions at indicators reproduce set values; assembled problems
/// reproduce the full-graph objectives.
fn tightness(r: &mut Report) {
    let mut rng = rng(2);
    let mut worst = 0.0f64;
    let mut checks = 0usize;
    for _ in 0..50 {
        let n = rng.gen_range(3..=10);
        let g = weighted_er(&mut rng, n, 0.5);
        let gw: Vec<f64> = (0..n).map(|_| rng.gen_range(0..4) as f64 * 0.5).collect();
        let k = rng.gen_range(0.5..4.0);
        let upper = penalty_dc(&VolumeConstraint::upper(gw.clone(), k)).unwrap();
        let lower = penalty_dc(&VolumeConstraint::lower(gw.clone(), k)).unwrap();
        let upper_fn = FnSetFunction::new(n, |s: &[bool]| upper.eval(s));
        let lower_fn = FnSetFunction::new(n, |s: &[bool]| lower.eval(s));
        let funcs: Vec<Box<dyn SetFunction + '_>> = vec![
            Box::new(Cut(&g)),
            Box::new(Assoc(&g)),
            Box::new(Volume(&gw)),
            Box::new(VolumeProduct(g.degree())),
            Box::new(Truncated { weights: &gw, cap: k }),
            Box::new(NonEmpty(n)),
            Box::new(upper_fn),
            Box::new(lower_fn),
        ];
        for set in all_subsets(n) {
            let f = indicator(&set);
            for s in &funcs {
                worst = worst.max((lovasz_value(s.as_ref(), &f) - s.eval(&set)).abs());
                checks += 1;
            }
        }
    }
    // assembled reduced problems against the full-graph objectives
    let mut assembled = 0usize;
    let mut assembled_worst = 0.0f64;
    for i in 0..20 {
        let inst = random_instance(&mut rng, i, (4, 9));
        let p = inst.problem.with_gamma(rng.gen_range(0.0..3.0));
        for a in all_subsets(p.m()).filter(|a| a.iter().any(|&b| b)) {
            let c = mask(p.n_full, &p.full_set(&a));
            let full_num = match inst.kind {
                Kind::NCut => cfsp_core::graph::cut_value(&inst.graph, &c),
                Kind::Density => volume(&inst.g, &c),
            };
            let full_den = match inst.kind {
                Kind::NCut => {
                    let v = volume(inst.graph.degree(), &c);
                    v * (inst.graph.total_volume() - v)
                }
                Kind::Density => cfsp_core::graph::assoc_value(&inst.graph, &c),
            };
            let full_pen: f64 = p.constraints.iter().map(|k| penalty_value(k, &c)).sum();
            let t = p.set_terms(&a).unwrap();
            let (num, den) = p.continuous_terms(&indicator(&a));
            for d in [
                t.numerator - full_num,
                t.denominator - full_den,
                t.penalty - full_pen,
                num - (full_num + p.gamma * full_pen),
                den - full_den,
            ] {
                assembled_worst = assembled_worst.max(d.abs());
            }
            assembled += 1;
        }
    }
    r.line(
        2,
        worst <= 1e-12 && assembled_worst <= 1e-12,
        format!(
            "{checks} indicator checks (max err {worst:.1e}); {assembled} reduced sets (max err {assembled_worst:.1e})"
        ),
    );
}

/// `Q(f) >= min_i Q(C_i)` for random vectors.
fn thresholding(r: &mut Report) {
    let mut rng = rng(3);
    let total = 1000;
    let mut ok = 0;
    for i in 0..total {
        let inst = random_instance(&mut rng, i, (4, 10));
        let p = inst.problem.with_gamma(if i % 3 == 0 { 0.0 } else { rng.gen_range(0.0..5.0) });
        let f = if i % 2 == 0 { random_vector(&mut rng, p.m()) } else { tied_vector(&mut rng, p.m()) };
        let Some(q) = p.continuous_ratio(&f) else {
            ok += 1;
            continue;
        };
        let order = descending_order(&f);
        let mut best = f64::INFINITY;
        let mut set = vec![false; p.m()];
        for &v in &order {
            set[v] = true;
            if let Some(x) = p.set_terms(&set).and_then(|t| t.penalized_ratio(p.gamma)) {
                best = best.min(x);
            }
        }
        if q >= best - 1e-10 {
            ok += 1;
        }
    }
    r.line(3, ok == total, format!("thresholding lemma held in {ok}/{total} trials"));
}

fn random_feasible_set(rng: &mut impl Rng, p: &ConstrainedRatioProblem) -> Option<Vec<bool>> {
    for _ in 0..2000 {
        let density = rng.gen_range(0.05..0.9);
        let a: Vec<bool> = (0..p.m()).map(|_| rng.gen_bool(density)).collect();
        if a.iter().any(|&b| b) && p.is_feasible(&a) && p.set_terms(&a).is_some_and(|t| t.denominator > 0.0) {
            return Some(a);
        }
    }
    None
}

/// Warm start from a feasible set at a sufficient penalty weight.
fn quality_guarantee(r: &mut Report) {
    let mut rng = rng(5);
    let cfg = SolverConfig::default();
    let total = 100;
    let mut ok = 0;
    let mut strict = 0;
    let mut done = 0;
    let mut i = 0;
    while done < total {
        i += 1;
        let inst = random_instance(&mut rng, i, (6, 12));
        let Some(a) = random_feasible_set(&mut rng, &inst.problem) else { continue };
        done += 1;
        let p = &inst.problem;
        let t = p.set_terms(&a).unwrap();
        let gamma = gamma_sufficient(t.numerator, t.denominator, p.denominator_max, p.theta).unwrap();
        let q = p.with_gamma(gamma);
        match ratio_dca(&q, &indicator(&a), &cfg) {
            Ok(s) => {
                r.keep(&s);
                let ratio_a = t.ratio().unwrap();
                if s.is_feasible() && s.set_value <= ratio_a + 1e-12 * ratio_a.max(1.0) {
                    ok += 1;
                    if s.set_value < ratio_a - 1e-12 {
                        strict += 1;
                    }
                }
            }
            Err(e) => println!("  quality run {i}: {e}"),
        }
    }
    r.line(5, ok == total, format!("feasible and no worse than the warm start in {ok}/{total} ({strict} strictly better)"));
}

/// The penalty schedule always ends feasible.
fn feasibility(r: &mut Report) {
    let mut rng = rng(6);
    let cfg = SolverConfig { seed: 6, ..SolverConfig::default() };
    let total = 100;
    let mut ok = 0;
    let mut raised = 0;
    for i in 0..total {
        let inst = random_instance(&mut rng, i, (6, 12));
        match solve_with_gamma_schedule(&inst.problem, &cfg, &[]) {
            Ok(res) => {
                r.keep(&res.solution);
                let full = mask(inst.graph.n(), &res.solution.set);
                if inst.rule.is_feasible(&full) {
                    ok += 1;
                }
                if res.gammas.len() > 1 {
                    raised += 1;
                }
            }
            Err(e) => println!("  schedule run {i}: {e}"),
        }
    }
    r.line(6, ok == total, format!("all constraints met in {ok}/{total} runs ({raised} needed gamma > 0)"));
}

fn grid_min(p: &InnerProblem<'_>) -> f64 {
    let half_pi = std::f64::consts::FRAC_PI_2;
    let mut best = 0.0f64;
    match p.graph.n() {
        1 => best = best.min(p.objective(&[1.0])),
        2 => {
            // arc length 1e-3 over the quarter circle
            let steps = 1571;
            for i in 0..=steps {
                let a = half_pi * i as f64 / steps as f64;
                best = best.min(p.objective(&[a.cos(), a.sin()]));
            }
        }
        _ => {
            let steps = 1571;
            for i in 0..=steps {
                let a = half_pi * i as f64 / steps as f64;
                for j in 0..=steps {
                    let b = half_pi * j as f64 / steps as f64;
                    best = best.min(p.objective(&[a.cos() * b.cos(), a.sin() * b.cos(), b.sin()]));
                }
            }
        }
    }
    best
}

/// FISTA against grid search, and duality gaps on larger instances.
fn inner_oracle(r: &mut Report) {
    let mut rng = rng(7);
    let cfg = InnerConfig::default();
    let mut ok = 0;
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let n = rng.gen_range(1..=3);
        let g = weighted_er(&mut rng, n, 0.7);
        let c2: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..1.0)).collect();
        let p = InnerProblem { graph: &g, c1: rng.gen_range(0.0..1.5), c2, mu: rng.gen_range(0.0..1.5) };
        let s = solve_inner_cold(&p, &cfg).unwrap();
        let diff = (s.primal_value - grid_min(&p)).abs();
        worst = worst.max(diff);
        if diff < 2e-3 {
            ok += 1;
        }
    }
    let mut gap_ok = 0;
    let mut worst_gap = 0.0f64;
    let large = 30;
    for _ in 0..large {
        let n = rng.gen_range(20..=200);
        let g = weighted_er(&mut rng, n, 4.0 / n as f64);
        let c2: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..1.0)).collect();
        let p = InnerProblem { graph: &g, c1: rng.gen_range(0.0..2.0), c2, mu: rng.gen_range(0.05..1.0) };
        let s = solve_inner_cold(&p, &cfg).unwrap();
        worst_gap = worst_gap.max(s.relative_gap);
        if s.converged && s.relative_gap < 1e-6 {
            gap_ok += 1;
        }
    }
    r.line(
        7,
        ok == 50 && gap_ok == large,
        format!(
            "grid oracle matched {ok}/50 (max diff {worst:.1e}); gap / max(1, |dual|) < 1e-6 on {gap_ok}/{large} (max {worst_gap:.1e})"
        ),
    );
}

/// `<f, t2> = T2(f)` and `<f, greedy> = Lovász value`.
fn subgradients(r: &mut Report) {
    let mut rng = rng(8);
    let trials = 1000;
    let mut ok_t2 = 0;
    let mut ok_greedy = 0;
    for i in 0..trials {
        let n = rng.gen_range(1..=12);
        let f = if i % 2 == 0 { random_vector(&mut rng, n) } else { tied_vector(&mut rng, n) };
        let h: Vec<f64> = (0..n).map(|_| rng.gen_range(0..5) as f64 * 0.5).collect();
        let cap = rng.gen_range(0.0..(h.iter().sum::<f64>() + 1.0));
        let t = t2_subgradient(&h, cap, &f);
        let dot: f64 = t.iter().zip(&f).map(|(a, b)| a * b).sum();
        if (dot - lovasz_value(&Truncated { weights: &h, cap }, &f)).abs() < 1e-10 {
            ok_t2 += 1;
        }
        let g = weighted_er(&mut rng, n, 0.5);
        let funcs: Vec<Box<dyn SetFunction + '_>> = vec![
            Box::new(Cut(&g)),
            Box::new(Volume(&h)),
            Box::new(Truncated { weights: &h, cap }),
            Box::new(NonEmpty(n)),
            Box::new(VolumeProduct(g.degree())),
        ];
        let all = funcs.iter().all(|s| {
            let sg = greedy_subgradient(s.as_ref(), &f);
            let dot: f64 = sg.iter().zip(&f).map(|(a, b)| a * b).sum();
            (dot - lovasz_value(s.as_ref(), &f)).abs() < 1e-10
        });
        if all {
            ok_greedy += 1;
        }
    }
    r.line(
        8,
        ok_t2 == trials && ok_greedy == trials,
        format!("t2 identity {ok_t2}/{trials}, greedy identity {ok_greedy}/{trials}"),
    );
}

/// Multi-start RatioDCA with the schedule against the constrained optimum.
fn recovery(r: &mut Report) {
    let mut rng = rng(9);
    let cfg = SolverConfig { seed: 9, initializations: 10, ..SolverConfig::default() };
    let total = 100;
    let mut hit = 0;
    let mut infeasible = 0;
    for i in 0..total {
        let inst = random_instance(&mut rng, i, (6, 12));
        let opt = inst.oracle().best_value().unwrap();
        match solve_with_gamma_schedule(&inst.problem, &cfg, &[]) {
            Ok(res) => {
                r.keep(&res.solution);
                let full = mask(inst.graph.n(), &res.solution.set);
                if !inst.rule.is_feasible(&full) {
                    infeasible += 1;
                } else if close(res.solution.set_value, opt, 1e-9) {
                    hit += 1;
                }
            }
            Err(e) => {
                infeasible += 1;
                println!("  recovery run {i}: {e}");
            }
        }
    }
    r.line(
        9,
        hit * 100 >= 80 * total && infeasible == 0,
        format!("optimum recovered in {hit}/{total}, infeasible {infeasible}"),
    );
}

/// RatioDCA warm-started from the random-walk set never loses to it.
fn baseline_dominance(r: &mut Report) {
    let mut rng = rng(10);
    let cfg = SolverConfig { seed: 10, ..SolverConfig::default() };
    let mut ok = 0;
    let mut better = 0;
    let mut total = 0;
    for _ in 0..10 {
        let g = planted_partition(&mut rng, 30, 0.3, 0.02);
        let d = g.degree().to_vec();
        let bound = 0.5 * g.total_volume();
        let mut seeds = 0;
        while seeds < 10 {
            let s = rng.gen_range(0..g.n());
            if d[s] == 0.0 {
                continue;
            }
            seeds += 1;
            total += 1;
            let rule = FeasibilityRule::new(vec![s], vec![VolumeConstraint::upper(d.clone(), bound)]);
            let lrw = lrw_cluster(&g, &[s], &Cut(&g), &VolumeProduct(&d), &rule, &LrwConfig::default()).unwrap();
            let p = build_local_ncut(&g, &NCutProblemSpec::new(vec![s], bound), 0.0).unwrap();
            let full = mask(g.n(), &lrw.set);
            let a: Vec<bool> = p.active.iter().map(|&v| full[v]).collect();
            let outcome = if a.iter().any(|&b| b) {
                let t = p.set_terms(&a).unwrap();
                let gamma = gamma_sufficient(t.numerator, t.denominator, p.denominator_max, p.theta).unwrap();
                ratio_dca_multistart(&p.with_gamma(gamma), &cfg, &[indicator(&a)])
            } else {
                solve_with_gamma_schedule(&p, &cfg, &[]).map(|x| x.solution)
            };
            match outcome {
                Ok(sol) => {
                    r.keep(&sol);
                    if sol.is_feasible() && sol.set_value <= lrw.value * (1.0 + 1e-12) {
                        ok += 1;
                        if sol.set_value < lrw.value * (1.0 - 1e-9) {
                            better += 1;
                        }
                    }
                }
                Err(e) => println!("  dominance run: {e}"),
            }
        }
    }
    r.line(10, ok == total, format!("never worse than LRW in {ok}/{total} ({better} strictly better)"));
}

/// Every trace recorded above is strictly decreasing.
fn descent(r: &mut Report) {
    // a few more traces from plain multi-start runs on unconstrained density
    let mut rng = rng(4);
    for _ in 0..20 {
        let n = rng.gen_range(6..=12);
        let g = erdos_renyi(&mut rng, n, 0.4);
        if g.num_edges() == 0 {
            continue;
        }
        let spec = DensityProblemSpec::unit(n);
        let p = build_max_density(&g, &spec, 0.0).unwrap();
        let cfg = SolverConfig { initializations: 3, ..SolverConfig::default() };
        if let Ok(s) = ratio_dca_multistart(&p, &cfg, &[]) {
            r.keep(&s);
        }
    }
    let violations = r.traces.iter().filter(|t| t.windows(2).any(|w| w[1].partial_cmp(&w[0]) != Some(std::cmp::Ordering::Less))).count();
    let steps: usize = r.traces.iter().map(|t| t.len().saturating_sub(1)).sum();
    r.line(
        4,
        violations == 0,
        format!("{} traces, {steps} accepted steps, {violations} non-decreasing", r.traces.len()),
    );
}
