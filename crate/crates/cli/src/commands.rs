use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use lalkit::condition::{
    default_nonrep_y, nonrep_color_bound, nonrep_color_threshold, ramsey_certify, ramsey_max_n, PresetCheck,
    PresetParams, SlackReport,
};
use lalkit::engine::{run, run_many, ProblemInstance};
use lalkit::monoid::{trace_decodes, PartialAssignment};
use lalkit::problems::{
    ChoiceFunction, ChoiceSystem, Graph, ListSystem, ProblemError, ProblemSpec, DEFAULT_MAX_HALF_LENGTH,
};
use lalkit::rng::DrawRng;
use lalkit::validate::{validate_solution, Violation};
use serde::Serialize;

use crate::args::{Cli, Command, GraphFamily, ProblemArgs, ProblemKind, ReplayArgs, SolveArgs, ValidateArgs};
use crate::config::{ExperimentConfig, Seeds, SolveDocument, SolveRecord};

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or unreadable input.
    Usage(String),
    /// Well-formed input whose answer is negative.
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::from(2),
            CliError::Domain(_) => ExitCode::from(1),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Domain(m) => f.write_str(m),
        }
    }
}

impl From<ProblemError> for CliError {
    fn from(e: ProblemError) -> Self {
        match e {
            ProblemError::Graph(_) | ProblemError::InvalidParameter(_) => CliError::Usage(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

type CliResult = Result<ExitCode, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    serde_json::from_str(&read_text(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn emit<T: Serialize>(out: Option<&Path>, value: &T) -> Result<(), CliError> {
    let json = serde_json::to_string_pretty(value).expect("report types serialize");
    match out {
        Some(path) => fs::write(path, json + "\n").map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            writeln!(stdout, "{json}").map_err(|e| usage(e.to_string()))
        }
    }
}

fn success(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

pub fn dispatch(cli: Cli) -> CliResult {
    match &cli.command {
        Command::Solve(args) => solve(&cli, args),
        Command::Check(args) => check(&cli, args),
        Command::Threshold(args) => threshold(&cli, args),
        Command::Validate(args) => validate(args),
        Command::Replay(args) => replay(args),
    }
}

fn require<T>(value: Option<T>, flag: &str, problem: &str) -> Result<T, CliError> {
    value.ok_or_else(|| usage(format!("--{flag} is required for {problem}")))
}

fn build_graph(args: &ProblemArgs) -> Result<Graph, CliError> {
    if let Some(path) = &args.graph {
        return Graph::parse_edge_list(&read_text(path)?).map_err(|e| usage(format!("{}: {e}", path.display())));
    }
    let family = require(args.family, "graph or --family", "this problem")?;
    let mut rng = DrawRng::seed_from_u64(args.graph_seed);
    let n = || require(args.n, "n", "generated graphs");
    let degree = || require(args.degree, "degree", "this graph family");
    let graph = match family {
        GraphFamily::Path => Graph::path(n()?),
        GraphFamily::Cycle => Graph::cycle(n()?).map_err(|e| usage(e.to_string()))?,
        GraphFamily::Complete => Graph::complete(n()?),
        GraphFamily::Star => Graph::star(n()?.saturating_sub(1)),
        GraphFamily::Petersen => Graph::petersen(),
        GraphFamily::RandomRegular => Graph::random_regular(n()?, degree()?, &mut rng).map_err(|e| usage(e.to_string()))?,
        GraphFamily::RandomBounded => {
            let n = n()?;
            let target = args.edges.unwrap_or(n * degree()? / 2);
            Graph::random_bounded_degree(n, degree()?, target, &mut rng)
        }
        GraphFamily::RandomTree => Graph::random_tree(n()?, degree()?, &mut rng),
    };
    Ok(graph)
}

fn max_degree(args: &ProblemArgs) -> Result<u32, CliError> {
    match args.delta {
        Some(d) => Ok(d),
        None if args.graph.is_some() || args.family.is_some() => Ok(build_graph(args)?.max_degree() as u32),
        None => Err(usage("--delta (or a graph) is required")),
    }
}

fn build_spec(args: &ProblemArgs) -> Result<ProblemSpec, CliError> {
    let kind = require(args.problem, "problem", "solve")?;
    Ok(match kind {
        ProblemKind::Proper => {
            let graph = build_graph(args)?;
            let colors = args.colors.unwrap_or(graph.max_degree() as u32 + 1);
            ProblemSpec::Proper { graph, colors }
        }
        ProblemKind::NonrepSeq => {
            let lists = match &args.lists {
                Some(path) => read_json::<ListSystem>(path)?,
                None => ListSystem::uniform(require(args.n, "n", "nonrep-seq")?, args.alphabet.unwrap_or(4)),
            };
            ProblemSpec::NonrepSeq { lists }
        }
        ProblemKind::NonrepColor => {
            let graph = build_graph(args)?;
            let colors = match args.colors {
                Some(c) => c,
                None => nonrep_color_threshold(graph.max_degree() as u32)
                    .map_err(|e| CliError::Domain(format!("{e}; pass --colors explicitly")))? as u32,
            };
            ProblemSpec::NonrepColor {
                graph,
                colors,
                max_half_length: args.max_half_length.unwrap_or(DEFAULT_MAX_HALF_LENGTH),
                y: args.y,
            }
        }
        ProblemKind::Acyclic => {
            let graph = build_graph(args)?;
            let colors = args.colors.unwrap_or((4 * graph.max_degree().saturating_sub(1)).max(1) as u32);
            ProblemSpec::Acyclic { graph, colors, strategy: args.strategy.into() }
        }
        ProblemKind::Ramsey => ProblemSpec::Ramsey {
            n: require(args.n, "n", "ramsey")?,
            k: require(args.k, "k", "ramsey")?,
            p: args.p,
        },
        ProblemKind::Choice => ProblemSpec::Choice { system: read_json(&require(args.system.clone(), "system", "choice")?)? },
    })
}

fn solve(cli: &Cli, args: &SolveArgs) -> CliResult {
    let config = match &args.config {
        Some(path) => read_json::<ExperimentConfig>(path)?,
        None => ExperimentConfig {
            instance: build_spec(&args.problem)?,
            seeds: match &args.seed_list {
                Some(list) => Seeds::List(list.clone()),
                None => Seeds::Range { count: args.seeds, base: cli.seed_base },
            },
            budget: cli.budget,
            output: cli.out.clone(),
        },
    };
    let instance = config.instance.build()?;
    let seeds = config.seeds.expand();
    let batch = run_many(instance.as_ref(), &seeds, config.budget);
    let mut runs = Vec::with_capacity(batch.reports.len());
    for report in batch.reports {
        let (valid, violation) = if report.terminated {
            match validate_solution(&config.instance, &report.final_state) {
                Ok(None) => (true, None),
                Ok(Some(v)) => (false, Some(v)),
                Err(e) => {
                    eprintln!("seed {}: validator unavailable: {e}", report.seed);
                    (false, None)
                }
            }
        } else {
            (false, None)
        };
        runs.push(SolveRecord { report, valid, violation });
    }
    let all_valid = runs.iter().all(|r| r.valid);
    let s = &batch.summary;
    eprintln!(
        "{}: {}/{} terminated, {} validated, mean steps {:.1}, max steps {}",
        instance.name(),
        s.terminated,
        s.runs,
        runs.iter().filter(|r| r.valid).count(),
        s.mean_steps,
        s.max_steps
    );
    let out = config.output.clone();
    emit(out.as_deref(), &SolveDocument { config, summary: batch.summary, runs })?;
    Ok(success(all_valid))
}

fn preset_params(args: &ProblemArgs) -> Result<PresetParams, CliError> {
    let kind = require(args.problem, "problem", "check")?;
    Ok(match kind {
        ProblemKind::Proper => {
            let delta = max_degree(args)?;
            PresetParams::Proper { delta, colors: args.colors.unwrap_or(delta + 1) }
        }
        ProblemKind::NonrepSeq => PresetParams::NonrepSeq { list_size: args.alphabet.unwrap_or(4) },
        ProblemKind::NonrepColor => {
            let delta = max_degree(args)?;
            let colors = match args.colors {
                Some(c) => c,
                None => nonrep_color_threshold(delta).map_err(|e| CliError::Domain(e.to_string()))? as u32,
            };
            PresetParams::NonrepColor { delta, colors, y: args.y }
        }
        ProblemKind::Acyclic => {
            let delta = max_degree(args)?;
            let colors = args.colors.unwrap_or((4 * delta.saturating_sub(1)).max(1));
            PresetParams::Acyclic { delta, colors, strategy: args.strategy.into() }
        }
        ProblemKind::Ramsey => PresetParams::Ramsey {
            n: require(args.n, "n", "ramsey")? as u64,
            k: require(args.k, "k", "ramsey")? as u64,
            p: args.p,
        },
        ProblemKind::Choice => return Err(usage("choice systems are checked per block; use --system")),
    })
}

fn print_slack(report: &SlackReport, limit: usize) {
    println!("{:>10}  {:>22}  {:>22}  {:>12}", "generator", "weight", "rhs", "slack");
    for e in report.entries.iter().take(limit) {
        println!("{:>10}  {:>22.16}  {:>22.16}  {:>12.3e}", e.generator.0, e.weight, e.rhs, e.slack);
    }
    if report.entries.len() > limit {
        println!("... {} more generators", report.entries.len() - limit);
    }
}

fn check(cli: &Cli, args: &ProblemArgs) -> CliResult {
    if args.problem == Some(ProblemKind::Choice) {
        let system: ChoiceSystem = read_json(&require(args.system.clone(), "system", "choice")?)?;
        let instance = ChoiceFunction::new(system)?;
        let report = instance.check_condition().map_err(|e| CliError::Domain(e.to_string()))?;
        print_slack(&report, 20);
        println!("minimum slack {:.3e}", report.min_slack());
        println!("condition {}", if report.holds() { "holds" } else { "fails" });
        if let Some(out) = &cli.out {
            emit(Some(out), &report)?;
        }
        return Ok(success(report.holds()));
    }
    let params = preset_params(args)?;
    let checked: PresetCheck = params.evaluate().map_err(|e| CliError::Domain(e.to_string()))?;
    println!("{}", serde_json::to_string(&params).expect("params serialize"));
    println!(
        "fixpoint {:.16} ({}), gap {:.3e}",
        checked.fixpoint.best_f,
        if checked.fixpoint.feasible { "feasible" } else { "infeasible" },
        checked.fixpoint.gap
    );
    match &checked.report {
        Some(report) => {
            print_slack(report, 1);
            println!("condition {}", if report.holds() { "holds" } else { "fails" });
        }
        None => println!("right-hand side diverges at weight {:.16}; condition fails", checked.weight),
    }
    if let Some(out) = &cli.out {
        emit(Some(out), &checked)?;
    }
    Ok(success(checked.holds()))
}

#[derive(Serialize)]
struct NonrepThreshold {
    delta: u32,
    bound: f64,
    colors: u64,
    y: f64,
}

fn threshold(cli: &Cli, args: &ProblemArgs) -> CliResult {
    let kind = require(args.problem, "problem", "threshold")?;
    match kind {
        ProblemKind::NonrepColor => {
            let delta = max_degree(args)?;
            let domain = |e: lalkit::condition::ConditionError| CliError::Domain(e.to_string());
            let t = NonrepThreshold {
                delta,
                bound: nonrep_color_bound(delta).map_err(domain)?,
                colors: nonrep_color_threshold(delta).map_err(domain)?,
                y: default_nonrep_y(delta).map_err(domain)?,
            };
            println!("delta {}: {} colors (bound {:.12}, y {:.12})", t.delta, t.colors, t.bound, t.y);
            if let Some(out) = &cli.out {
                emit(Some(out), &t)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        ProblemKind::Ramsey => {
            let k = require(args.k, "k", "ramsey")? as u64;
            let n = ramsey_max_n(k).map_err(|e| CliError::Domain(e.to_string()))?;
            let cert = ramsey_certify(k, n).map_err(|e| CliError::Domain(e.to_string()))?;
            println!(
                "k {k}: n* = {n} (x {:.12}, y {:.12}, p {:.12}, f {:.12}, h1 + h2 = {:.12})",
                cert.x,
                cert.y,
                cert.p,
                cert.f,
                cert.h1 + cert.h2
            );
            if let Some(out) = &cli.out {
                emit(Some(out), &cert)?;
            }
            Ok(ExitCode::SUCCESS)
        }
        ProblemKind::Choice => Err(usage("no threshold is defined for choice systems")),
        _ => {
            let checked = preset_params(args)?.evaluate().map_err(|e| CliError::Domain(e.to_string()))?;
            let fp = checked.fixpoint;
            println!(
                "smallest weight {:.16} ({}), gap {:.3e}",
                fp.best_f,
                if fp.feasible { "feasible" } else { "infeasible" },
                fp.gap
            );
            if let Some(out) = &cli.out {
                emit(Some(out), &fp)?;
            }
            Ok(success(fp.feasible))
        }
    }
}

fn report_violation(label: &str, v: &Violation) {
    println!("{label}: {}", serde_json::to_string(v).expect("violations serialize"));
}

fn validate(args: &ValidateArgs) -> CliResult {
    if let Some(path) = &args.report {
        let doc: SolveDocument = read_json(path)?;
        let mut ok = true;
        for run in &doc.runs {
            let label = format!("seed {}", run.report.seed);
            if !run.report.terminated {
                println!("{label}: did not terminate");
                ok = false;
                continue;
            }
            match validate_solution(&doc.config.instance, &run.report.final_state) {
                Ok(None) => println!("{label}: valid"),
                Ok(Some(v)) => {
                    report_violation(&label, &v);
                    ok = false;
                }
                Err(e) => {
                    println!("{label}: {e}");
                    ok = false;
                }
            }
        }
        return Ok(success(ok));
    }
    let (Some(spec), Some(solution)) = (&args.spec, &args.solution) else {
        return Err(usage("give --report, or --spec with --solution"));
    };
    let spec: ProblemSpec = read_json(spec)?;
    let state: PartialAssignment = read_json(solution)?;
    match validate_solution(&spec, &state) {
        Ok(None) => {
            println!("valid");
            Ok(ExitCode::SUCCESS)
        }
        Ok(Some(v)) => {
            report_violation("violation", &v);
            Ok(ExitCode::from(1))
        }
        Err(e) => Err(CliError::Domain(e.to_string())),
    }
}

fn replay(args: &ReplayArgs) -> CliResult {
    let doc: SolveDocument = read_json(&args.report)?;
    let instance: Box<dyn ProblemInstance> = doc.config.instance.build()?;
    let selected: Vec<&SolveRecord> =
        doc.runs.iter().filter(|r| args.seed.is_none_or(|s| s == r.report.seed)).collect();
    if selected.is_empty() {
        return Err(usage("no run in the report matches"));
    }
    let mut ok = true;
    let mut trace_written = false;
    for record in selected {
        let (report, trace) = run(instance.as_ref(), record.report.seed, doc.config.budget);
        let identical = report == record.report;
        let decodes = trace_decodes(&trace, &instance.initial_word());
        println!(
            "seed {}: {} steps, report {}, trace {}",
            report.seed,
            report.steps_used,
            if identical { "identical" } else { "DIFFERS" },
            if decodes { "decodes" } else { "DOES NOT DECODE" }
        );
        ok &= identical && decodes;
        if let (Some(path), false) = (&args.trace_out, trace_written) {
            emit(Some(path), &trace)?;
            trace_written = true;
        }
    }
    Ok(success(ok))
}
