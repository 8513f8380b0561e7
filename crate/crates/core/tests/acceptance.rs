//! End-to-end acceptance checks. Runs as a plain binary so every criterion
//! prints one PASS/FAIL line under `cargo test`.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::OnceLock;
use std::time::Instant;

use lalkit::condition::{
    array_theorem_check, array_theorem_margins, check_lal_inequality, check_lopsided_condition,
    corollary_supremum, lll_condition_table, lll_to_weight, lower_bound_value, nonrep_color_threshold,
    ramsey_certify, ramsey_max_n, AcyclicStrategy, LllWeights, PresetParams, TruncatedArray,
};
use lalkit::engine::{run, Run, RunReport, RunStatus, RunTrace, StepOutcome, DEFAULT_BUDGET};
use lalkit::monoid::{trace_decodes, MonoidElement, WeightFunction};
use lalkit::problems::{ChoiceSystem, Graph, ListSystem, ProblemSpec};
use lalkit::rng::DrawRng;
use lalkit::validate::{
    check_ramsey_witness, exact_event_enumeration, exhaustive_feasibility, validate_assignment, validate_solution,
};
use rayon::prelude::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("condition equalities", condition_equalities),
        ("solver success", solver_success),
        ("oracle equivalence", oracle_equivalence),
        ("ramsey pipeline", ramsey_pipeline),
        ("lopsided bound", lopsided_bound),
        ("array theorem", array_theorem),
        ("trace integrity", trace_integrity),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}) [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({detail}) [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}

// 1

fn condition_equalities() -> Outcome {
    let tol = 1e-12;
    let mut worst: f64 = 0.0;
    let mut slack_at = |params: PresetParams, f: f64| -> Result<f64, String> {
        let table = params.table().map_err(|e| e.to_string())?;
        let w = WeightFunction::uniform(1, f).map_err(|e| e.to_string())?;
        let s = check_lal_inequality(&w, &table).map_err(|e| e.to_string())?.min_slack();
        worst = worst.max(s.abs());
        Ok(s)
    };
    for delta in 1..=12 {
        let s = slack_at(PresetParams::Proper { delta, colors: delta + 1 }, (delta + 1) as f64)?;
        ensure!(s.abs() <= tol, "proper delta {delta}: slack {s:e}");
    }
    let s = slack_at(PresetParams::NonrepSeq { list_size: 4 }, 2.0)?;
    ensure!(s.abs() <= tol, "sequences: slack {s:e}");
    let golden = 5f64.sqrt() - 1.0;
    for delta in 2..=12 {
        let colors = 4 * (delta - 1);
        let s = slack_at(PresetParams::Acyclic { delta, colors, strategy: AcyclicStrategy::Restricted }, golden)?;
        ensure!(s.abs() <= tol, "acyclic restricted delta {delta}: slack {s:e}");
        let s = slack_at(PresetParams::Acyclic { delta, colors, strategy: AcyclicStrategy::Uniform }, 2.0 * golden)?;
        ensure!(s.abs() <= tol, "acyclic uniform delta {delta}: slack {s:e}");
    }

    // probabilities at the lopsided equality make every row tight
    let mut rng = DrawRng::seed_from_u64(0x11);
    for _ in 0..200 {
        let m = 1 + rng.below(12) as usize;
        let mu: Vec<f64> = (0..m).map(|_| 0.9 * rng.unit()).collect();
        let gamma: Vec<BTreeSet<usize>> =
            (0..m).map(|a| (0..m).filter(|&b| b != a && rng.bernoulli(0.4)).collect()).collect();
        let pr: Vec<f64> =
            (0..m).map(|a| mu[a] * gamma[a].iter().map(|&b| 1.0 - mu[b]).product::<f64>()).collect();
        let lll = LllWeights::new(mu, gamma, pr).map_err(|e| e.to_string())?;
        let f = lll_to_weight(&lll).map_err(|e| e.to_string())?;
        let report = check_lal_inequality(&f, &lll_condition_table(&lll)).map_err(|e| e.to_string())?;
        for g in &report.entries {
            let scaled = g.slack / f.values()[g.generator.0];
            worst = worst.max(scaled.abs());
            ensure!(scaled.abs() <= tol, "lll transform: relative slack {scaled:e}");
        }
    }
    Ok(format!("max |slack| {worst:.1e}"))
}

// 2 and 7

struct Solved {
    label: &'static str,
    spec: ProblemSpec,
    seed: u64,
    report: RunReport,
    trace: RunTrace,
}

fn corpus_specs() -> Vec<(&'static str, ProblemSpec, u64)> {
    let mut out = Vec::new();
    let lists = ListSystem::uniform(500, 4);
    for seed in 0..100 {
        out.push(("nonrep-seq", ProblemSpec::NonrepSeq { lists: lists.clone() }, seed));
    }
    for seed in 0..100 {
        let mut rng = DrawRng::seed_from_u64(1000 + seed);
        let delta = 1 + rng.below(5) as usize;
        let graph = Graph::random_bounded_degree(200, delta, 200 * delta * 9 / 20, &mut rng);
        let colors = graph.max_degree() as u32 + 1;
        out.push(("proper", ProblemSpec::Proper { graph, colors }, seed));
    }
    for strategy in [AcyclicStrategy::Restricted, AcyclicStrategy::Uniform] {
        for seed in 0..100 {
            let mut rng = DrawRng::seed_from_u64(2000 + seed);
            let delta = 3 + rng.below(4) as usize;
            let n = 60 + rng.below(60) as usize;
            let target = (n * delta * 9 / 20).min(300);
            let graph = Graph::random_bounded_degree(n, delta, target, &mut rng);
            let colors = 4 * (graph.max_degree().max(2) as u32 - 1);
            out.push(("acyclic", ProblemSpec::Acyclic { graph, colors, strategy }, seed));
        }
    }
    let colors = nonrep_color_threshold(3).expect("threshold") as u32;
    for seed in 0..100 {
        let mut rng = DrawRng::seed_from_u64(3000 + seed);
        let n = 2 + rng.below(29) as usize;
        let graph = Graph::random_tree(n, 3, &mut rng);
        out.push(("nonrep-color", ProblemSpec::NonrepColor { graph, colors, max_half_length: 15, y: None }, seed));
    }
    out
}

fn corpus() -> &'static Vec<Solved> {
    static CORPUS: OnceLock<Vec<Solved>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        corpus_specs()
            .into_par_iter()
            .map(|(label, spec, seed)| {
                let instance = spec.build().expect("corpus instance builds");
                let (report, trace) = run(&*instance, seed, DEFAULT_BUDGET);
                Solved { label, spec, seed, report, trace }
            })
            .collect()
    })
}

fn solver_success() -> Outcome {
    let runs = corpus();
    let failures: Vec<String> = runs
        .par_iter()
        .filter_map(|s| {
            if s.report.status != RunStatus::Terminated || s.report.steps_used > DEFAULT_BUDGET {
                return Some(format!("{} seed {}: {:?}", s.label, s.seed, s.report.status));
            }
            match validate_solution(&s.spec, &s.report.final_state) {
                Ok(None) => None,
                other => Some(format!("{} seed {}: validator {other:?}", s.label, s.seed)),
            }
        })
        .collect();
    ensure!(failures.is_empty(), "{} failures, first {}", failures.len(), failures[0]);
    let max_steps = runs.iter().map(|s| s.report.steps_used).max().unwrap_or(0);
    Ok(format!("{} runs valid, max steps {max_steps}", runs.len()))
}

fn trace_integrity() -> Outcome {
    let runs = corpus();
    let failures: Vec<String> = runs
        .par_iter()
        .filter_map(|s| {
            let instance = s.spec.build().expect("corpus instance builds");
            if !trace_decodes(&s.trace, &instance.initial_word()) {
                return Some(format!("{} seed {}: trace does not decode", s.label, s.seed));
            }
            let (report, trace) = run(&*instance, s.seed, DEFAULT_BUDGET);
            let same = report == s.report
                && trace == s.trace
                && serde_json::to_string(&report).ok() == serde_json::to_string(&s.report).ok()
                && serde_json::to_string(&trace).ok() == serde_json::to_string(&s.trace).ok();
            (!same).then(|| format!("{} seed {}: rerun differs", s.label, s.seed))
        })
        .collect();
    ensure!(failures.is_empty(), "{} failures, first {}", failures.len(), failures[0]);
    Ok(format!("{} traces decode and rerun identically", runs.len()))
}

// 3

const SMALL_SLOTS: usize = 12;
const SMALL_SPACE: f64 = (1u64 << 20) as f64;
const SMALL_BUDGET: u64 = 20_000;

fn small_graph(rng: &mut DrawRng, max_edges: usize) -> Graph {
    let n = 2 + rng.below(7) as usize;
    let delta = 1 + rng.below(4) as usize;
    let target = 1 + rng.below(max_edges as u64) as usize;
    Graph::random_bounded_degree(n, delta, target, rng)
}

/// Largest color count in `lo..=hi` keeping `colors^slots` within the search cap.
fn colors_for(rng: &mut DrawRng, slots: usize, lo: u32, hi: u32) -> u32 {
    let mut c = lo + rng.below((hi - lo + 1) as u64) as u32;
    while c > lo && (c as f64).powi(slots as i32) > SMALL_SPACE {
        c -= 1;
    }
    c
}

fn small_spec(kind: usize, rng: &mut DrawRng) -> ProblemSpec {
    match kind {
        0 => {
            let graph = small_graph(rng, SMALL_SLOTS);
            let colors = colors_for(rng, graph.n(), 1, 4);
            ProblemSpec::Proper { graph, colors }
        }
        1 => {
            let n = 1 + rng.below(SMALL_SLOTS as u64) as usize;
            let lists = (0..n)
                .map(|_| {
                    let size = 1 + rng.below(3) as usize;
                    let mut all: Vec<u32> = (0..4).collect();
                    for i in 0..size {
                        let j = i + rng.below((4 - i) as u64) as usize;
                        all.swap(i, j);
                    }
                    let mut list = all[..size].to_vec();
                    list.sort_unstable();
                    list
                })
                .collect();
            ProblemSpec::NonrepSeq { lists: ListSystem { lists } }
        }
        2 => {
            let graph = if rng.bernoulli(0.5) {
                let n = 2 + rng.below(9) as usize;
                Graph::random_tree(n, 3, rng)
            } else {
                small_graph(rng, SMALL_SLOTS)
            };
            let colors = colors_for(rng, graph.n(), 1, 4);
            ProblemSpec::NonrepColor { graph, colors, max_half_length: SMALL_SLOTS / 2, y: None }
        }
        3 => {
            let graph = loop {
                let g = small_graph(rng, SMALL_SLOTS);
                if g.num_edges() > 0 {
                    break g;
                }
            };
            let colors = colors_for(rng, graph.num_edges(), 2, 6);
            let strategy = if rng.bernoulli(0.5) { AcyclicStrategy::Restricted } else { AcyclicStrategy::Uniform };
            ProblemSpec::Acyclic { graph, colors, strategy }
        }
        4 => {
            let n = 2 + rng.below(4) as usize;
            let k = 3 + rng.below(3) as usize;
            let p = if rng.bernoulli(0.3) { None } else { Some(0.1 + 0.8 * rng.unit()) };
            ProblemSpec::Ramsey { n, k, p }
        }
        _ => {
            let blocks = 1 + rng.below(6) as usize;
            let sizes: Vec<usize> = (0..blocks).map(|_| 1 + rng.below(3) as usize).collect();
            let marginals = sizes.iter().map(|&s| (0..s).map(|_| 0.2 + 0.8 * rng.unit()).collect()).collect();
            let forbidden = (0..rng.below(6))
                .map(|_| {
                    let width = 1 + rng.below(blocks.min(3) as u64) as usize;
                    let mut chosen: Vec<usize> = (0..blocks).collect();
                    for i in 0..width {
                        let j = i + rng.below((blocks - i) as u64) as usize;
                        chosen.swap(i, j);
                    }
                    chosen[..width].iter().map(|&k| (k, rng.below(sizes[k] as u64) as u32)).collect()
                })
                .collect();
            ProblemSpec::Choice { system: ChoiceSystem { marginals, forbidden } }
        }
    }
}

#[derive(Default)]
struct SmallTally {
    instances: usize,
    solved: usize,
    unsolved: usize,
    steps: u64,
    witnesses: u64,
}

impl SmallTally {
    fn merge(mut self, other: SmallTally) -> SmallTally {
        self.instances += other.instances;
        self.solved += other.solved;
        self.unsolved += other.unsolved;
        self.steps += other.steps;
        self.witnesses += other.witnesses;
        self
    }
}

fn check_small(spec: &ProblemSpec, seed: u64) -> Result<SmallTally, String> {
    let instance = spec.build().map_err(|e| e.to_string())?;
    let mut tally = SmallTally { instances: 1, ..SmallTally::default() };
    let mut runner = Run::new(&*instance, seed);
    let mut stuck = false;
    while runner.steps() < SMALL_BUDGET {
        let before = runner.state().clone();
        match runner.step() {
            None => break,
            Some(StepOutcome::Stuck { .. }) => {
                stuck = true;
                break;
            }
            Some(StepOutcome::Filled(step)) => {
                tally.steps += 1;
                let mut filled = before;
                filled.set(step.slot, step.value);
                let seen = validate_assignment(spec, &filled).map_err(|e| e.to_string())?;
                if seen.is_some() != step.event.is_some() {
                    return Err(format!("{spec:?}: detector {:?} vs validator {seen:?}", step.event));
                }
                tally.witnesses += u64::from(step.event.is_some());
                let after = validate_assignment(spec, runner.state()).map_err(|e| e.to_string())?;
                if after.is_some() {
                    return Err(format!("{spec:?}: state after erasure still violates {after:?}"));
                }
            }
        }
    }
    if runner.is_done() && !stuck {
        tally.solved = 1;
        let total = runner.state();
        if !total.is_total() || validate_solution(spec, total).map_err(|e| e.to_string())?.is_some() {
            return Err(format!("{spec:?}: engine output invalid"));
        }
        if !exhaustive_feasibility(spec, u128::MAX).map_err(|e| e.to_string())? {
            return Err(format!("{spec:?}: engine solved an instance the oracle calls infeasible"));
        }
    } else {
        tally.unsolved = 1;
    }
    Ok(tally)
}

fn oracle_equivalence() -> Outcome {
    let mut specs = Vec::new();
    let mut rng = DrawRng::seed_from_u64(0x5eed);
    while specs.len() < 1200 {
        let kind = specs.len() % 6;
        let spec = small_spec(kind, &mut rng);
        // constructors reject some parameter draws, e.g. unsatisfiable choice systems
        if spec.build().is_ok() && lalkit::validate::slot_count(&spec) <= SMALL_SLOTS {
            specs.push(spec);
        }
    }
    let tally = specs
        .par_iter()
        .enumerate()
        .map(|(i, spec)| check_small(spec, i as u64))
        .try_reduce(SmallTally::default, |a, b| Ok(a.merge(b)))?;
    ensure!(tally.witnesses > 0, "no witness events exercised");
    Ok(format!(
        "{} instances, {} solved and oracle-feasible, {} unsolved, {} steps with {} witnesses checked",
        tally.instances, tally.solved, tally.unsolved, tally.steps, tally.witnesses
    ))
}

// 4

fn binomial(a: u64, b: u64) -> f64 {
    if b > a {
        return 0.0;
    }
    let mut c: u128 = 1;
    for i in 0..b as u128 {
        c = c * (a as u128 - i) / (i + 1);
    }
    c as f64
}

/// Brute-force search for a grid point with both brackets summing to 1.
fn grid_certified(k: u64, n: u64) -> bool {
    const STEPS: usize = 2000;
    let pts: Vec<f64> = (1..=STEPS).map(|i| i as f64 / (STEPS + 1) as f64).collect();
    let tri = n as f64 - 2.0;
    let c = binomial(n - 2, k - 2);
    let m = (k * (k - 1) / 2) as i32;
    let h1: Vec<f64> = pts.iter().map(|&x| x - tri * x * x * x).collect();
    let h2: Vec<f64> = pts.iter().map(|&y| y - c * y.powi(m)).collect();
    h1.iter().any(|a| h2.iter().any(|b| a + b >= 1.0))
}

fn ramsey_pipeline() -> Outcome {
    let mut notes = Vec::new();
    for k in [4u64, 5, 6] {
        for n in 2..=30u64 {
            let cert = ramsey_certify(k, n).map_err(|e| e.to_string())?;
            let grid = grid_certified(k, n);
            ensure!(cert.certified == grid, "k {k} n {n}: certificate {} vs grid {grid}", cert.certified);
        }
        let n_star = ramsey_max_n(k).map_err(|e| e.to_string())? as usize;
        let spec = ProblemSpec::Ramsey { n: n_star, k: k as usize, p: None };
        let instance = spec.build().map_err(|e| e.to_string())?;
        for seed in 0..20 {
            let (report, _) = run(&*instance, seed, DEFAULT_BUDGET);
            ensure!(report.terminated, "k {k} seed {seed}: {:?}", report.status);
            let found = check_ramsey_witness(n_star, k as usize, report.final_state.values())
                .map_err(|e| e.to_string())?;
            ensure!(found.is_none(), "k {k} seed {seed}: {found:?}");
        }
        notes.push(format!("k {k}: n* {n_star}"));
    }
    Ok(format!("grid agrees for n <= 30; witnesses for {}", notes.join(", ")))
}

// 5

struct Space {
    probs: Vec<f64>,
    /// Each event is a conjunction of `(variable, value)` literals.
    events: Vec<Vec<(usize, bool)>>,
    lll: LllWeights,
}

fn random_space(rng: &mut DrawRng) -> Option<Space> {
    let vars = 4 + rng.below(13) as usize;
    let q: Vec<f64> = (0..vars).map(|_| 0.1 + 0.8 * rng.unit()).collect();
    let m = 2 + rng.below(7) as usize;
    let events: Vec<Vec<(usize, bool)>> = (0..m)
        .map(|_| {
            let width = 2 + rng.below(3) as usize;
            let mut chosen: Vec<usize> = (0..vars).collect();
            for i in 0..width {
                let j = i + rng.below((vars - i) as u64) as usize;
                chosen.swap(i, j);
            }
            chosen[..width].iter().map(|&v| (v, rng.bernoulli(0.5))).collect()
        })
        .collect();
    let lit = |&(v, val): &(usize, bool)| if val { q[v] } else { 1.0 - q[v] };
    let pr: Vec<f64> = events.iter().map(|e| e.iter().map(lit).product()).collect();
    let gamma: Vec<BTreeSet<usize>> = (0..m)
        .map(|a| {
            (0..m)
                .filter(|&b| b != a && events[a].iter().any(|&(v, _)| events[b].iter().any(|&(u, _)| u == v)))
                .collect()
        })
        .collect();
    // smallest mu meeting the condition, by monotone iteration from below
    let mut mu = pr.clone();
    for _ in 0..10_000 {
        let next: Vec<f64> =
            (0..m).map(|a| pr[a] / gamma[a].iter().map(|&b| 1.0 - mu[b]).product::<f64>()).collect();
        if next.iter().any(|&x| !(x < 0.95)) {
            return None;
        }
        let moved = next.iter().zip(&mu).any(|(x, y)| (x - y).abs() > 1e-15);
        mu = next;
        if !moved {
            break;
        }
    }
    let mu: Vec<f64> = mu.iter().map(|x| x * (1.0 + 1e-6)).collect();
    let lll = LllWeights::new(mu, gamma, pr).ok()?;
    if check_lopsided_condition(&lll).iter().any(|&s| s < 0.0) {
        return None;
    }
    let probs = (0..1usize << vars)
        .map(|w| (0..vars).map(|v| if w >> v & 1 == 1 { q[v] } else { 1.0 - q[v] }).product())
        .collect();
    Some(Space { probs, events, lll })
}

fn lopsided_bound() -> Outcome {
    let mut rng = DrawRng::seed_from_u64(0x1011);
    let mut spaces = 0;
    let mut min_margin = f64::INFINITY;
    while spaces < 100 {
        let Some(space) = random_space(&mut rng) else { continue };
        spaces += 1;
        let tests: Vec<_> = space
            .events
            .iter()
            .map(|e| move |w: usize| e.iter().all(|&(v, val)| (w >> v & 1 == 1) == val))
            .collect();
        let good = exact_event_enumeration(&space.probs, &tests).map_err(|e| e.to_string())?;
        let f = lll_to_weight(&space.lll).map_err(|e| e.to_string())?;
        let all = MonoidElement::powerset(0..space.lll.len());
        let bound = lower_bound_value(&all, 1.0, &f).map_err(|e| e.to_string())?;
        let product: f64 = space.lll.mu.iter().map(|m| 1.0 - m).product();
        ensure!((bound - product).abs() <= 1e-12, "bound {bound} vs product {product}");
        ensure!(good > 0.0 && good >= bound - 1e-12, "Pr(good) {good} below bound {bound}");
        min_margin = min_margin.min(good - bound);
    }

    // two fair coins, each event "heads", mu = 1/2: the bound 1/4 is exact
    let coins = LllWeights::new(vec![0.5, 0.5], vec![BTreeSet::new(), BTreeSet::new()], vec![0.5, 0.5])
        .map_err(|e| e.to_string())?;
    ensure!(check_lopsided_condition(&coins).iter().all(|&s| s == 0.0), "two-coin case is not tight");
    let f = lll_to_weight(&coins).map_err(|e| e.to_string())?;
    let bound = lower_bound_value(&MonoidElement::powerset([0, 1]), 1.0, &f).map_err(|e| e.to_string())?;
    let events = [|w: usize| w & 1 == 1, |w: usize| w & 2 == 2];
    let exact = exact_event_enumeration(&[0.25; 4], &events).map_err(|e| e.to_string())?;
    ensure!(bound == 0.25 && exact == 0.25, "two coins: bound {bound}, exact {exact}");
    let mut rng = DrawRng::seed_from_u64(0xc011);
    let trials = 1000;
    let hits = (0..trials).filter(|_| !rng.bernoulli(0.5) & !rng.bernoulli(0.5)).count();
    let freq = hits as f64 / trials as f64;
    let sigma = (0.25f64 * 0.75 / trials as f64).sqrt();
    ensure!((freq - 0.25).abs() <= 3.0 * sigma, "two coins: frequency {freq}");
    Ok(format!("{spaces} spaces, min margin {min_margin:.3e}; two coins {freq:.3} vs 0.25 +- {:.3}", 3.0 * sigma))
}

// 6

fn array_theorem() -> Outcome {
    let xs = [0.1, 1.0, 10.0, 50.0];
    let mut rng = DrawRng::seed_from_u64(0xa77a);
    let mut min_array = f64::INFINITY;
    for _ in 0..10_000 {
        let rows = 1 + rng.below(8) as usize;
        let width = 1 + rng.below(8) as usize;
        let a: Vec<Vec<f64>> = (0..rows).map(|_| (0..width).map(|_| 1.0 - rng.unit()).collect()).collect();
        let a = TruncatedArray::new(a).map_err(|e| e.to_string())?;
        ensure!(array_theorem_check(&a, &xs).map_err(|e| e.to_string())?, "array fails: {a:?}");
        let margin = array_theorem_margins(&a, &xs).map_err(|e| e.to_string())?;
        min_array = margin.into_iter().fold(min_array, f64::min);
    }
    let mut min_seq = f64::INFINITY;
    for _ in 0..10_000 {
        let len = 1 + rng.below(40) as usize;
        let k = 1 + rng.below(5) as usize;
        let a: Vec<f64> = (0..len).map(|_| (10.0 * rng.unit() - 5.0).exp()).collect();
        let (sup, _) = corollary_supremum(&a, k).map_err(|e| e.to_string())?;
        let margin = sup - 1.0 / (std::f64::consts::E * k as f64);
        ensure!(margin > 0.0, "sequence fails at k {k}: {a:?}");
        min_seq = min_seq.min(margin);
    }
    Ok(format!("min array margin {min_array:.3e}, min corollary margin {min_seq:.3e}"))
}
