//! Command-line front end: a single executable exposing the solvers and
//! checkers with reproducible seeds and machine-readable output.
//!
//! Exit codes: 0 on success, 1 on domain errors (including verification
//! suites that find violations), 2 on usage errors.

pub mod formats;

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ranset_core::combine::{self, CombinationRule};
use ranset_core::geometry;
use ranset_core::likelihood::{self, TrialModel, TrialRule};
use ranset_core::limits;
use ranset_core::mass::MassFunction;
use ranset_core::maxent::{self, EntropyKind, MaxentConfig};
use ranset_core::pac;
use ranset_core::regression::{self, FitConfig, FitTarget};
use ranset_core::total_belief;
use ranset_core::Rng;

#[derive(Parser)]
#[command(
    name = "ranset",
    about = "Belief-function / finite random-set calculus: combination rules, belief likelihoods, the total belief theorem, generalised regression and max-entropy classification, limit-theorem and PAC checkers.",
    version
)]
struct Cli {
    /// Seed for all randomized commands; identical inputs and seed give
    /// byte-identical outputs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the primary output document here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format where both are supported. Reports default to JSON;
    /// plot-data commands (the Bernoulli surface, subspace vertices)
    /// default to CSV.
    #[arg(long, global = true, value_enum, ignore_case = true)]
    format: Option<OutputFormat>,
    /// Reject unknown fields when parsing documents.
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum RuleArg {
    Dempster,
    Conjunctive,
    Disjunctive,
    Yager,
    Dubois,
}

impl From<RuleArg> for CombinationRule {
    fn from(rule: RuleArg) -> Self {
        match rule {
            RuleArg::Dempster => CombinationRule::Dempster,
            RuleArg::Conjunctive => CombinationRule::Conjunctive,
            RuleArg::Disjunctive => CombinationRule::Disjunctive,
            RuleArg::Yager => CombinationRule::Yager,
            RuleArg::Dubois => CombinationRule::DuboisPrade,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TrialRuleArg {
    Dempster,
    Conjunctive,
    Disjunctive,
}

impl From<TrialRuleArg> for TrialRule {
    fn from(rule: TrialRuleArg) -> Self {
        match rule {
            TrialRuleArg::Dempster => TrialRule::Dempster,
            TrialRuleArg::Conjunctive => TrialRule::Conjunctive,
            TrialRuleArg::Disjunctive => TrialRule::Disjunctive,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Combine two or more mass functions under a rule (left fold).
    Combine {
        #[arg(long, value_enum, ignore_case = true)]
        rule: RuleArg,
        /// Mass-function documents, combined left to right.
        #[arg(required = true, num_args = 2..)]
        files: Vec<PathBuf>,
    },
    /// Dempster-condition a mass function on an event.
    Condition {
        /// Conditioning event as comma-separated outcome labels.
        #[arg(long)]
        on: String,
        file: PathBuf,
    },
    /// Belief likelihoods: lower/upper likelihood of an observed trial
    /// sequence, or the Bernoulli likelihood surface.
    Likelihood(LikelihoodArgs),
    /// Fit the generalised logistic regression model.
    FitLogistic {
        /// CSV with header `x,y`; `y` in {0, 1, NA}.
        data: PathBuf,
        #[arg(long, value_enum, ignore_case = true, default_value_t = TargetArg::Lower)]
        target: TargetArg,
        /// Pin the third link parameter (e.g. 1.0 recovers the classical
        /// logistic model under the lower target).
        #[arg(long)]
        fix_beta2: Option<f64>,
    },
    /// Construct, verify and optionally enumerate total belief functions.
    TotalBelief {
        problem: PathBuf,
        /// Enumerate minimal nonnegative solutions per prior focal element.
        #[arg(long)]
        enumerate: bool,
        /// Cap on the column subsets tried per focal element.
        #[arg(long, default_value_t = 100_000)]
        limit: usize,
    },
    /// Binary-frame combination geometry and geometric conditioning.
    Geometry {
        #[command(subcommand)]
        command: GeometryCommand,
    },
    /// Fit the generalised maximum-entropy classifier.
    MaxentTrain {
        /// CSV with header `x,class`.
        data: PathBuf,
        /// Feature tables over (observation, class).
        features: PathBuf,
        #[arg(long, default_value = "HBel")]
        entropy: String,
    },
    /// Monte Carlo checkers for the Bernoulli limit theorems.
    Limits {
        #[command(subcommand)]
        command: LimitsCommand,
    },
    /// PAC bounds and simulators.
    Pac {
        #[command(subcommand)]
        command: PacCommand,
    },
    /// Run a property suite; exits 1 if violations are found.
    Verify {
        #[arg(long, value_enum, ignore_case = true)]
        suite: SuiteArg,
        /// Number of trials per instance (binary trials / frame size).
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Number of random instances.
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
}

#[derive(Args)]
struct LikelihoodArgs {
    /// Observed trial sequence: CSV with one outcome label per row.
    #[arg(long, requires = "model")]
    trials: Option<PathBuf>,
    /// Mass-function document for the (equally distributed) conditional.
    #[arg(long)]
    model: Option<PathBuf>,
    #[arg(long, value_enum, ignore_case = true, default_value_t = TrialRuleArg::Conjunctive)]
    rule: TrialRuleArg,
    /// Bernoulli surface: number of successes.
    #[arg(long, requires = "n")]
    k: Option<u32>,
    /// Bernoulli surface: number of trials.
    #[arg(long)]
    n: Option<u32>,
    /// Bernoulli surface grid step.
    #[arg(long, default_value_t = 1e-3)]
    step: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Lower,
    Upper,
}

#[derive(Subcommand)]
enum GeometryCommand {
    /// Vertices of the conditional subspace of a binary mass function.
    Subspace {
        #[arg(long, value_enum, ignore_case = true)]
        rule: SubspaceRuleArg,
        file: PathBuf,
    },
    /// Geometric conditioning: nearest mass function supported inside an
    /// event, under the chosen norm.
    Condition {
        /// Conditioning event as comma-separated outcome labels.
        #[arg(long)]
        on: String,
        #[arg(long, value_enum, ignore_case = true, default_value_t = NormArg::L2)]
        norm: NormArg,
        file: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SubspaceRuleArg {
    Dempster,
    Yager,
    Disjunctive,
    ConjunctiveUnnorm,
    DisjunctiveUnnorm,
}

impl From<SubspaceRuleArg> for geometry::SubspaceRule {
    fn from(rule: SubspaceRuleArg) -> Self {
        match rule {
            SubspaceRuleArg::Dempster => geometry::SubspaceRule::Dempster,
            SubspaceRuleArg::Yager => geometry::SubspaceRule::Yager,
            SubspaceRuleArg::Disjunctive => geometry::SubspaceRule::Disjunctive,
            SubspaceRuleArg::ConjunctiveUnnorm => {
                geometry::SubspaceRule::ConjunctiveUnnormalized
            }
            SubspaceRuleArg::DisjunctiveUnnorm => {
                geometry::SubspaceRule::DisjunctiveUnnormalized
            }
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum NormArg {
    L1,
    L2,
    Linf,
}

impl From<NormArg> for geometry::NormKind {
    fn from(norm: NormArg) -> Self {
        match norm {
            NormArg::L1 => geometry::NormKind::L1,
            NormArg::L2 => geometry::NormKind::L2,
            NormArg::Linf => geometry::NormKind::Linf,
        }
    }
}

#[derive(Subcommand)]
enum LimitsCommand {
    /// Law-of-large-numbers band coverage.
    Lln {
        model: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        n: usize,
        #[arg(long, default_value_t = 1_000)]
        trials: usize,
        #[arg(long, default_value_t = 0.02)]
        epsilon: f64,
        /// Outcome of interest (label); defaults to the first outcome.
        #[arg(long)]
        outcome: Option<String>,
    },
    /// Central-limit statistics against the normal distribution.
    Clt {
        model: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 31)]
        alpha_points: usize,
        #[arg(long, default_value_t = -3.0)]
        alpha_lo: f64,
        #[arg(long, default_value_t = 3.0)]
        alpha_hi: f64,
        #[arg(long)]
        outcome: Option<String>,
    },
}

#[derive(Subcommand)]
enum PacCommand {
    /// Closed-form bound: ε for a given n, and n for a given ε.
    Bound {
        #[arg(long)]
        h: usize,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        epsilon: Option<f64>,
    },
    /// Realizable or credal ERM simulation from a scenario document.
    Simulate { scenario: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Factorization,
    Disjunctive,
    Conjecture,
    TotalBelief,
    BayesianPrior,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Format(#[from] formats::FormatError),
    #[error("{0}")]
    Core(#[from] ranset_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Other(String),
}

fn read_file(path: &PathBuf) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Runs the CLI on the given arguments, writing the primary output to
/// `stdout` (unless `--out` redirects it). Returns the process exit code.
pub fn execute<I, S>(args: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = err.print();
            return code;
        }
    };
    let out = cli.out.clone();
    match dispatch(cli) {
        Ok(Output { text, exit_code }) => {
            let result = match &out {
                Some(path) => fs::write(path, text.as_bytes()).map_err(|e| e.to_string()),
                None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            match result {
                Ok(()) => exit_code,
                Err(message) => {
                    eprintln!("error: {message}");
                    1
                }
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            1
        }
    }
}

struct Output {
    text: String,
    exit_code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, exit_code: 0 }
    }
}

fn render_json(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report encodes");
    text.push('\n');
    text
}

fn parse_event(m: &MassFunction, spec: &str) -> Result<ranset_core::SubsetMask, CliError> {
    let labels: Vec<&str> = spec
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    m.frame().mask_of_labels(labels).map_err(Into::into)
}

fn kkt_json(kkt: &regression::KktReport) -> Value {
    json!({
        "stationarity": kkt.stationarity,
        "primal": kkt.primal,
        "dual": kkt.dual,
        "slackness": kkt.slackness,
        "max_residual": kkt.max_residual,
    })
}

fn mass_report(m: &MassFunction) -> Value {
    let masses: Vec<Value> = m
        .focal_elements()
        .map(|(set, mass)| {
            let mut labels: Vec<&str> = m.frame().labels_of(set);
            labels.sort_unstable();
            json!({"set": labels, "m": mass})
        })
        .collect();
    json!({
        "frame": m.frame().labels(),
        "masses": masses,
        "normalized": m.is_normalized_regime(),
    })
}

fn dispatch(cli: Cli) -> Result<Output, CliError> {
    let strict = cli.strict;
    let mut rng = Rng::seed_from(cli.seed);
    match cli.command {
        Command::Combine { rule, files } => {
            let inputs: Result<Vec<MassFunction>, CliError> = files
                .iter()
                .map(|f| Ok(formats::parse_mass(&read_file(f)?, strict)?))
                .collect();
            let combined = combine::combine_all(rule.into(), &inputs?)?;
            Ok(Output::ok(formats::serialize_mass(&combined)))
        }
        Command::Condition { on, file } => {
            let m = formats::parse_mass(&read_file(&file)?, strict)?;
            let event = parse_event(&m, &on)?;
            let conditioned = combine::condition(&m, event)?;
            Ok(Output::ok(formats::serialize_mass(&conditioned)))
        }
        Command::Likelihood(args) => likelihood_command(args, cli.format, strict),
        Command::FitLogistic {
            data,
            target,
            fix_beta2,
        } => {
            let samples = formats::parse_dataset_csv(&read_file(&data)?)?;
            let mut config = FitConfig::new(match target {
                TargetArg::Lower => FitTarget::Lower,
                TargetArg::Upper => FitTarget::Upper,
            });
            config.fix_beta2 = fix_beta2;
            let fit = regression::fit(&samples, &config)?;
            let report = json!({
                "kind": "report",
                "schema_version": formats::SCHEMA_VERSION,
                "command": "fit-logistic",
                "target": match target { TargetArg::Lower => "lower", TargetArg::Upper => "upper" },
                "beta0": fit.params.beta0,
                "beta1": fit.params.beta1,
                "beta2": fit.params.beta2,
                "objective": fit.objective,
                "mu0": fit.mu0,
                "kkt": kkt_json(&fit.kkt),
                "iterations": fit.iterations,
                "converged": fit.converged,
                "warnings": fit.warnings,
            });
            Ok(Output::ok(render_json(&report)))
        }
        Command::TotalBelief {
            problem,
            enumerate,
            limit,
        } => {
            let problem = formats::parse_total_belief_problem(&read_file(&problem)?, strict)?;
            let solution = total_belief::construct_total(&problem)?;
            let verification = total_belief::verify_total(&problem, &solution)?;
            let system = total_belief::build_constraint_system(&problem)?;
            let mut report = json!({
                "kind": "report",
                "schema_version": formats::SCHEMA_VERSION,
                "command": "total-belief",
                "solution": mass_report(&solution),
                "verification": {
                    "p1_ok": verification.p1_ok,
                    "p2_ok": verification.p2_ok,
                    "prior_residual": verification.prior_residual,
                    "conditional_residuals": verification.conditional_residuals,
                },
                "constraints": {
                    "unknowns": system.unknown_count,
                    "g1_independent": system.g1_independent,
                    "g2_independent": system.g2_independent,
                    "rank": system.rank,
                },
            });
            if enumerate {
                let mut enumerations = Vec::new();
                for (prior_fe, _) in problem.prior().focal_elements() {
                    let labels: Vec<&str> = problem.prior().frame().labels_of(prior_fe);
                    let outcome =
                        total_belief::enumerate_minimal_solutions(&problem, prior_fe, limit);
                    match outcome {
                        Ok(result) => {
                            let solutions: Vec<Value> = result
                                .solutions
                                .iter()
                                .map(|s| {
                                    json!({
                                        "columns": s.column_indices,
                                        "values": s.values,
                                    })
                                })
                                .collect();
                            enumerations.push(json!({
                                "prior_focal_element": labels,
                                "n_min": result.n_min,
                                "n_max": result.n_max,
                                "systems": result.systems_total,
                                "singular": result.systems_singular,
                                "solutions": solutions,
                            }));
                        }
                        Err(err) => enumerations.push(json!({
                            "prior_focal_element": labels,
                            "error": err.to_string(),
                        })),
                    }
                }
                report["enumeration"] = Value::Array(enumerations);
            }
            Ok(Output::ok(render_json(&report)))
        }
        Command::Geometry { command } => geometry_command(command, cli.format, strict),
        Command::MaxentTrain {
            data,
            features,
            entropy,
        } => {
            let kind = EntropyKind::parse(&entropy).ok_or_else(|| {
                CliError::Other(format!(
                    "unknown entropy {entropy:?} (want Ht, Hn, Hd, HBel or HPl)"
                ))
            })?;
            let problem = formats::build_maxent_problem(
                &read_file(&data)?,
                &read_file(&features)?,
                kind,
                strict,
            )?;
            let fit = maxent::fit_maxent(&problem, &MaxentConfig::default())?;
            let classical = maxent::classical_maxent(&problem).ok();
            let report = json!({
                "kind": "report",
                "schema_version": formats::SCHEMA_VERSION,
                "command": "maxent-train",
                "entropy": kind.name(),
                "objective": fit.objective,
                "mass": mass_report(&fit.mass),
                "mu1": fit.mu1,
                "mu2": fit.mu2,
                "kkt": {
                    "stationarity": fit.kkt.stationarity,
                    "active_dual": fit.kkt.active_dual,
                    "primal": fit.kkt.primal,
                    "slackness": fit.kkt.slackness,
                    "max_residual": fit.kkt.max_residual,
                },
                "converged": fit.converged,
                "classical": classical.map(|c| json!({
                    "conditional": c.conditional,
                    "moment_residual": c.moment_residual,
                    "total_variation_to_fit":
                        maxent::total_variation_to_bayesian(&fit.mass, &c.joint),
                })),
            });
            Ok(Output::ok(render_json(&report)))
        }
        Command::Limits { command } => limits_command(command, strict, &mut rng),
        Command::Pac { command } => pac_command(command, strict, &mut rng),
        Command::Verify { suite, n, trials } => verify_command(suite, n, trials, &mut rng),
    }
}

fn likelihood_command(
    args: LikelihoodArgs,
    format: Option<OutputFormat>,
    strict: bool,
) -> Result<Output, CliError> {
    if let (Some(k), Some(n)) = (args.k, args.n) {
        let surface = likelihood::bernoulli_surface(k, n, args.step)?;
        if format.unwrap_or(OutputFormat::Csv) == OutputFormat::Csv {
            let mut text = String::from("p,q,lower,upper\n");
            let steps = (1.0 / args.step) as u32;
            for i in 0..=steps {
                let p = i as f64 * args.step;
                for j in 0..=(steps - i) {
                    let q = j as f64 * args.step;
                    text.push_str(&format!(
                        "{p},{q},{},{}\n",
                        likelihood::bernoulli_lower(p, q, k, n),
                        likelihood::bernoulli_upper(p, q, k, n)
                    ));
                }
            }
            return Ok(Output::ok(text));
        }
        let report = json!({
            "kind": "report",
            "schema_version": formats::SCHEMA_VERSION,
            "command": "likelihood",
            "surface": {
                "k": k,
                "n": n,
                "step": args.step,
                "lower_argmax": [surface.lower_argmax.0, surface.lower_argmax.1],
                "lower_max": surface.lower_max,
                "upper_argmax": [surface.upper_argmax.0, surface.upper_argmax.1],
                "upper_max": surface.upper_max,
            },
        });
        return Ok(Output::ok(render_json(&report)));
    }
    let (Some(trials_path), Some(model_path)) = (&args.trials, &args.model) else {
        return Err(CliError::Other(
            "provide either --trials with --model, or --k with --n for the surface".into(),
        ));
    };
    let model = formats::parse_mass(&read_file(model_path)?, strict)?;
    let sample = formats::parse_trials_csv(&read_file(trials_path)?, model.frame())?;
    if sample.is_empty() {
        return Err(CliError::Other("trial sequence is empty".into()));
    }
    let trial_model = TrialModel::iid(model.clone(), sample.len())?;
    let bounds = trial_model.lower_upper(&sample)?;
    let rule: TrialRule = args.rule.into();
    // Dense sharp-sample values under the chosen rule, when tractable.
    let dense = trial_model.dense_combination(rule).ok().map(|combined| {
        let product = trial_model.product_frame().expect("frames exist");
        let tuple = ranset_core::SubsetMask::singleton(product.flat_index(&sample));
        (combined.bel_of(tuple), combined.pl_of(tuple))
    });
    let report = json!({
        "kind": "report",
        "schema_version": formats::SCHEMA_VERSION,
        "command": "likelihood",
        "rule": match rule {
            TrialRule::Dempster => "dempster",
            TrialRule::Conjunctive => "conjunctive",
            TrialRule::Disjunctive => "disjunctive",
        },
        "trials": sample.len(),
        "lower": bounds.lower,
        "upper": bounds.upper,
        "conjectural_upper": bounds.conjectural,
        "dense_bel": dense.map(|d| d.0),
        "dense_pl": dense.map(|d| d.1),
    });
    Ok(Output::ok(render_json(&report)))
}

fn geometry_command(
    command: GeometryCommand,
    format: Option<OutputFormat>,
    strict: bool,
) -> Result<Output, CliError> {
    match command {
        GeometryCommand::Subspace { rule, file } => {
            let bel = formats::parse_mass(&read_file(&file)?, strict)?;
            let vertices = geometry::conditional_subspace(&bel, rule.into())?;
            if format.unwrap_or(OutputFormat::Csv) == OutputFormat::Csv {
                let frame = bel.frame();
                let mut text = String::from("event");
                for subset in frame.subsets() {
                    let labels = frame.labels_of(subset);
                    let name = if labels.is_empty() {
                        "empty".to_string()
                    } else {
                        labels.join("|")
                    };
                    text.push_str(&format!(",m({name})"));
                }
                text.push('\n');
                for vertex in &vertices {
                    let labels = frame.labels_of(vertex.event);
                    let name = if labels.is_empty() {
                        "empty".to_string()
                    } else {
                        labels.join("|")
                    };
                    text.push_str(&name);
                    for subset in frame.subsets() {
                        text.push_str(&format!(",{}", vertex.point.mass(subset)));
                    }
                    text.push('\n');
                }
                return Ok(Output::ok(text));
            }
            let rows: Vec<Value> = vertices
                .iter()
                .map(|v| {
                    json!({
                        "event": bel.frame().labels_of(v.event),
                        "point": mass_report(&v.point),
                    })
                })
                .collect();
            let report = json!({
                "kind": "report",
                "schema_version": formats::SCHEMA_VERSION,
                "command": "geometry subspace",
                "vertices": rows,
            });
            Ok(Output::ok(render_json(&report)))
        }
        GeometryCommand::Condition { on, norm, file } => {
            let bel = formats::parse_mass(&read_file(&file)?, strict)?;
            let event = parse_event(&bel, &on)?;
            let conditioned = geometry::geometric_condition(&bel, event, norm.into())?;
            Ok(Output::ok(formats::serialize_mass(&conditioned)))
        }
    }
}

fn limits_command(
    command: LimitsCommand,
    strict: bool,
    rng: &mut Rng,
) -> Result<Output, CliError> {
    match command {
        LimitsCommand::Lln {
            model,
            n,
            trials,
            epsilon,
            outcome,
        } => {
            let m = formats::parse_mass(&read_file(&model)?, strict)?;
            let outcome_index = resolve_outcome(&m, outcome.as_deref())?;
            let report = limits::lln_band_check(&m, outcome_index, n, trials, epsilon, rng)?;
            let value = json!({
                "kind": "report",
                "schema_version": formats::SCHEMA_VERSION,
                "command": "limits lln",
                "bel": report.bel,
                "pl": report.pl,
                "epsilon": report.epsilon,
                "n": report.n,
                "trials": report.trials,
                "coverage": report.coverage,
            });
            Ok(Output::ok(render_json(&value)))
        }
        LimitsCommand::Clt {
            model,
            n,
            samples,
            alpha_points,
            alpha_lo,
            alpha_hi,
            outcome,
        } => {
            let m = formats::parse_mass(&read_file(&model)?, strict)?;
            let outcome_index = resolve_outcome(&m, outcome.as_deref())?;
            let grid = limits::alpha_grid(alpha_lo, alpha_hi, alpha_points);
            let report = limits::clt_check(&m, outcome_index, n, samples, &grid, rng)?;
            let value = json!({
                "kind": "report",
                "schema_version": formats::SCHEMA_VERSION,
                "command": "limits clt",
                "n": report.n,
                "samples": report.samples,
                "alphas": report.alphas,
                "upper_estimates": report.upper_estimates,
                "lower_estimates": report.lower_estimates,
                "ks_upper": report.ks_upper,
                "ks_lower": report.ks_lower,
            });
            Ok(Output::ok(render_json(&value)))
        }
    }
}

fn resolve_outcome(m: &MassFunction, outcome: Option<&str>) -> Result<usize, CliError> {
    match outcome {
        None => Ok(0),
        Some(label) => m
            .frame()
            .index_of(label)
            .ok_or_else(|| CliError::Other(format!("outcome {label:?} is not in the frame"))),
    }
}

fn pac_command(command: PacCommand, strict: bool, rng: &mut Rng) -> Result<Output, CliError> {
    match command {
        PacCommand::Bound {
            h,
            delta,
            n,
            epsilon,
        } => {
            let mut body = serde_json::Map::new();
            body.insert("kind".into(), json!("report"));
            body.insert("schema_version".into(), json!(formats::SCHEMA_VERSION));
            body.insert("command".into(), json!("pac bound"));
            body.insert("h".into(), json!(h));
            body.insert("delta".into(), json!(delta));
            if let Some(n) = n {
                body.insert("n".into(), json!(n));
                body.insert("epsilon".into(), json!(pac::risk_bound(h, n, delta)?));
            }
            if let Some(eps) = epsilon {
                body.insert("target_epsilon".into(), json!(eps));
                body.insert(
                    "sample_complexity".into(),
                    json!(pac::sample_complexity(h, eps, delta)?),
                );
            }
            if n.is_none() && epsilon.is_none() {
                return Err(CliError::Other(
                    "provide --n (risk bound) and/or --epsilon (sample complexity)".into(),
                ));
            }
            Ok(Output::ok(render_json(&Value::Object(body))))
        }
        PacCommand::Simulate { scenario } => {
            let scenario = formats::parse_pac_scenario(&read_file(&scenario)?, strict)?;
            let value = if scenario.credal {
                let report = pac::simulate_credal(
                    &scenario.class,
                    &scenario.distributions,
                    scenario.n,
                    scenario.epsilon,
                    scenario.trials,
                    rng,
                )?;
                json!({
                    "kind": "report",
                    "schema_version": formats::SCHEMA_VERSION,
                    "command": "pac simulate",
                    "mode": "credal",
                    "n": report.n,
                    "epsilon": report.epsilon,
                    "trials": report.trials,
                    "vertex_realizable": report.vertex_realizable,
                    "uniformly_realizable": report.uniformly_realizable,
                    "worst_case_tail": report.worst_case_tail,
                    "mean_worst_risk": report.mean_worst_risk,
                })
            } else {
                let report = pac::simulate_realizable(
                    &scenario.class,
                    &scenario.distributions[0],
                    scenario.n,
                    scenario.epsilon,
                    scenario.trials,
                    rng,
                )?;
                json!({
                    "kind": "report",
                    "schema_version": formats::SCHEMA_VERSION,
                    "command": "pac simulate",
                    "mode": "realizable",
                    "n": report.n,
                    "epsilon": report.epsilon,
                    "trials": report.trials,
                    "violation_frequency": report.violation_frequency,
                    "worst_risk": report.worst_risk,
                    "zero_empirical_risk_frequency": report.zero_empirical_risk_frequency,
                })
            };
            Ok(Output::ok(render_json(&value)))
        }
    }
}

fn verify_command(
    suite: SuiteArg,
    n: usize,
    trials: usize,
    rng: &mut Rng,
) -> Result<Output, CliError> {
    let (value, violations) = match suite {
        SuiteArg::Factorization => {
            let report =
                likelihood::check_conjunctive_factorization(trials, &vec![2; n], 1e-12, rng)?;
            (
                json!({
                    "suite": "factorization",
                    "instances": report.instances,
                    "max_mass_deviation": report.max_mass_deviation,
                    "max_tuple_deviation": report.max_tuple_deviation,
                    "max_cartesian_deviation": report.max_cartesian_deviation,
                    "focal_count_ok": report.focal_count_ok,
                    "violations": report.violations,
                }),
                report.violations,
            )
        }
        SuiteArg::Disjunctive => {
            let report = likelihood::check_disjunctive_factorization(n, trials, 1e-12, rng)?;
            (
                json!({
                    "suite": "disjunctive",
                    "instances": report.instances,
                    "max_mass_deviation": report.max_mass_deviation,
                    "max_complement_deviation": report.max_complement_deviation,
                    "max_pl_deviation": report.max_pl_deviation,
                    "focal_count_ok": report.focal_count_ok,
                    "violations": report.violations,
                }),
                report.violations,
            )
        }
        SuiteArg::Conjecture => {
            let report = likelihood::check_plausibility_conjecture(n, trials, 1e-9, rng)?;
            let violations = usize::from(report.counterexample.is_some());
            (
                json!({
                    "suite": "conjecture",
                    "instances": report.instances,
                    "max_deviation": report.max_deviation,
                    "counterexample": report.counterexample.map(|c| json!({
                        "instance": c.instance,
                        "sample": c.sample,
                        "deviation": c.deviation,
                    })),
                }),
                violations,
            )
        }
        SuiteArg::TotalBelief => {
            let mut violations = 0usize;
            let mut worst: f64 = 0.0;
            for _ in 0..trials {
                let problem = random_total_belief_problem(n.clamp(1, 3), rng);
                let total = total_belief::construct_total(&problem)?;
                let report = total_belief::verify_total(&problem, &total)?;
                let residual = report
                    .conditional_residuals
                    .iter()
                    .fold(report.prior_residual, |a, &b| a.max(b));
                worst = worst.max(residual);
                if !(report.p1_ok && report.p2_ok) {
                    violations += 1;
                }
            }
            (
                json!({
                    "suite": "total-belief",
                    "instances": trials,
                    "max_residual": worst,
                    "violations": violations,
                }),
                violations,
            )
        }
        SuiteArg::BayesianPrior => {
            let mut violations = 0usize;
            for _ in 0..trials {
                let problem = random_bayesian_total_belief_problem(n.clamp(2, 3), rng);
                for (prior_fe, _) in problem.prior().focal_elements() {
                    let result =
                        total_belief::enumerate_minimal_solutions(&problem, prior_fe, 100_000)?;
                    if result.solutions.len() != 1 {
                        violations += 1;
                    }
                }
            }
            (
                json!({
                    "suite": "bayesian-prior",
                    "instances": trials,
                    "violations": violations,
                }),
                violations,
            )
        }
    };
    let mut report = value;
    report["kind"] = json!("report");
    report["schema_version"] = json!(formats::SCHEMA_VERSION);
    report["command"] = json!("verify");
    let exit_code = i32::from(violations > 0);
    Ok(Output {
        text: render_json(&report),
        exit_code,
    })
}

fn random_total_belief_problem(
    max_omega: usize,
    rng: &mut Rng,
) -> total_belief::TotalBeliefProblem {
    use ranset_core::frame::{Frame, SubsetMask};
    use ranset_core::multivariate::Refining;
    use ranset_core::sampling;

    let omega = 1 + rng.below(max_omega);
    let cell_sizes: Vec<usize> = (0..omega).map(|_| 1 + rng.below(2)).collect();
    let fine_size: usize = cell_sizes.iter().sum();
    let coarse = Frame::of_size(omega).expect("small frame");
    let fine = Frame::new((0..fine_size).map(|i| format!("t{i}"))).expect("small frame");
    let mut cells = Vec::new();
    let mut next = 0usize;
    for &size in &cell_sizes {
        let mut mask = SubsetMask::EMPTY;
        for i in 0..size {
            mask = mask.union(SubsetMask::singleton(next + i));
        }
        cells.push(mask);
        next += size;
    }
    let rho = Refining::new(coarse.clone(), fine, cells).expect("valid refining");
    let prior = sampling::random_full_support(&coarse, rng);
    let conditionals: Vec<MassFunction> = (0..omega)
        .map(|i| {
            let cell_frame = rho.cell_frame(i);
            let max_focals = cell_frame.subset_count() - 1;
            sampling::random_with_focal_count(&cell_frame, max_focals.min(3), rng)
                .expect("valid mass")
        })
        .collect();
    total_belief::TotalBeliefProblem::new(rho, prior, conditionals).expect("valid problem")
}

fn random_bayesian_total_belief_problem(
    max_omega: usize,
    rng: &mut Rng,
) -> total_belief::TotalBeliefProblem {
    use ranset_core::sampling;

    let problem = random_total_belief_problem(max_omega, rng);
    let prior = sampling::random_bayesian(problem.prior().frame(), rng);
    total_belief::TotalBeliefProblem::new(
        problem.refining().clone(),
        prior,
        problem.conditionals().to_vec(),
    )
    .expect("valid problem")
}
