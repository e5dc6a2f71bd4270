use std::fs;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use treecast::broadcast;
use treecast::construct;
use treecast::generate::{self, TreeKind};
use treecast::io::{self, BroadcastJson, TreeJson};
use treecast::solver::{self, Objective, SolveResult, SolverError, DEFAULT_BUDGET};
use treecast::split;
use treecast::{Broadcast, Tree};
use treecast_cli::verify::{verify_theorem, Claim};
use treecast_cli::{fixtures, HarnessError};

#[derive(Parser)]
#[command(name = "treecast", version, about = "Broadcast independence on trees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Node budget for the exact solver.
    #[arg(long, global = true, env = "TREECAST_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    GammaB,
    Ibn,
    Ih,
}

impl From<ObjectiveArg> for Objective {
    fn from(o: ObjectiveArg) -> Objective {
        match o {
            ObjectiveArg::GammaB => Objective::GammaB,
            ObjectiveArg::Ibn => Objective::Ibn,
            ObjectiveArg::Ih => Objective::Ih,
        }
    }
}

#[derive(Args)]
struct Input {
    /// Tree JSON file, or inline JSON.
    #[arg(long)]
    input: String,
}

#[derive(Subcommand)]
enum Command {
    /// Broadcast domination number by the split-set formula.
    GammaB(Input),
    /// Lower broadcast independence number.
    Ibn(Input),
    /// Lower hearing independence number.
    Ih(Input),
    Solve {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        objective: ObjectiveArg,
        /// List every feasible broadcast of cost at most `--cap`
        /// (the optimum if omitted).
        #[arg(long)]
        enumerate: bool,
        #[arg(long, requires = "enumerate")]
        cap: Option<u32>,
    },
    /// Independence and maximality of a given broadcast.
    Check {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        broadcast: String,
        /// Include neighbourhoods, boundaries and edge covers.
        #[arg(long)]
        audit: bool,
    },
    Splitsets(Input),
    /// Maximal bn-independent broadcast from a maximum split-set.
    Construct(Input),
    /// Carry a maximal broadcast down to a subtree.
    Reduce {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        broadcast: String,
        /// JSON list of the vertices to keep.
        #[arg(long)]
        keep: String,
    },
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    Verify {
        #[arg(long, conflicts_with_all = ["fixture", "claim"])]
        all: bool,
        #[arg(long)]
        fixture: Option<String>,
        #[arg(long, value_enum)]
        claim: Option<Claim>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum GenKind {
    Path {
        n: usize,
    },
    Spider {
        #[arg(required = true, num_args = 1..)]
        legs: Vec<usize>,
    },
    /// Spine vertex i gets the i-th number of leaves.
    Caterpillar {
        #[arg(required = true, num_args = 1..)]
        pendants: Vec<usize>,
    },
    Random {
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Failure {
    /// Bad input: exit 2.
    Input(String),
    /// Runtime or claim failure: exit 1.
    Run(String),
}

impl From<SolverError> for Failure {
    fn from(e: SolverError) -> Failure {
        match e {
            SolverError::TooLarge { .. } => Failure::Input(e.to_string()),
            SolverError::BudgetExhausted(_) => Failure::Run(e.to_string()),
        }
    }
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Failure {
        match e {
            HarnessError::Solver(s) => s.into(),
            HarnessError::UnknownFixture(_)
            | HarnessError::UnknownClaim(_)
            | HarnessError::CorpusTooLarge(_) => Failure::Input(e.to_string()),
            _ => Failure::Run(e.to_string()),
        }
    }
}

fn input_err(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

/// Inline JSON when the argument looks like JSON, otherwise a file path.
fn read_arg(arg: &str) -> Result<String, Failure> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(arg.to_string());
    }
    fs::read_to_string(arg).map_err(|e| Failure::Input(format!("{arg}: {e}")))
}

fn load_tree(input: &Input) -> Result<Tree, Failure> {
    io::parse_tree(&read_arg(&input.input)?).map_err(input_err)
}

fn load_broadcast(t: &Tree, arg: &str) -> Result<Broadcast, Failure> {
    io::parse_broadcast(t, &read_arg(arg)?).map_err(input_err)
}

fn strengths(f: &Broadcast) -> BroadcastJson {
    BroadcastJson::from(f)
}

struct Output {
    json: String,
    dot: Option<(Tree, Option<Broadcast>)>,
    ok: bool,
}

impl Output {
    fn new(json: impl Serialize) -> Output {
        Output {
            json: serde_json::to_string(&json).expect("output serializes"),
            dot: None,
            ok: true,
        }
    }

    fn drawn(mut self, t: &Tree, f: Option<&Broadcast>) -> Output {
        self.dot = Some((t.clone(), f.cloned()));
        self
    }
}

fn solve_json(r: &SolveResult) -> Value {
    json!({
        "objective": r.objective,
        "value": r.value,
        "witness": strengths(&r.witness),
        "optimal": r.optimal,
        "stats": r.stats,
    })
}

#[derive(Serialize)]
struct GammaBOut {
    gamma_b: u32,
    kind: split::RadialKind,
    m: usize,
}

#[derive(Serialize)]
struct CheckOut {
    bn_independent: bool,
    maximal: bool,
    cost: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    hearing_independent: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dominating: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    audit: Option<broadcast::BroadcastAudit>,
}

fn solved(t: &Tree, r: SolveResult) -> Output {
    Output::new(solve_json(&r)).drawn(t, Some(&r.witness))
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let budget = cli.budget;
    Ok(match &cli.command {
        Command::GammaB(input) => {
            let t = load_tree(input)?;
            let class = split::gamma_b(&t);
            Output::new(GammaBOut {
                gamma_b: class.gamma_b,
                kind: class.kind,
                m: class.max_split_size,
            })
            .drawn(&t, Some(&class.witness))
        }
        Command::Ibn(input) => {
            let t = load_tree(input)?;
            solved(&t, solver::solve_ibn(&t, budget)?)
        }
        Command::Ih(input) => {
            let t = load_tree(input)?;
            solved(&t, solver::solve_ih(&t, budget)?)
        }
        Command::Solve {
            input,
            objective,
            enumerate,
            cap,
        } => {
            let t = load_tree(input)?;
            let objective = Objective::from(*objective);
            if *enumerate {
                let cap = match cap {
                    Some(c) => *c,
                    None => solver::solve_objective(&t, objective, budget)?.value,
                };
                let all = solver::enumerate_optimal(&t, objective, cap)?;
                let list: Vec<BroadcastJson> = all.iter().map(strengths).collect();
                Output::new(json!({
                    "objective": objective,
                    "cap": cap,
                    "count": list.len(),
                    "broadcasts": list,
                }))
                .drawn(&t, all.first())
            } else {
                solved(&t, solver::solve_objective(&t, objective, budget)?)
            }
        }
        Command::Check {
            input,
            broadcast: b,
            audit,
        } => {
            let t = load_tree(input)?;
            let f = load_broadcast(&t, b)?;
            let out = CheckOut {
                bn_independent: broadcast::is_bn_independent(&t, &f),
                maximal: broadcast::is_maximal_bn(&t, &f),
                cost: f.cost(),
                hearing_independent: audit.then(|| broadcast::is_hearing_independent(&t, &f)),
                dominating: audit.then(|| broadcast::is_dominating(&t, &f)),
                audit: if *audit {
                    Some(broadcast::audit(&t, &f).map_err(input_err)?)
                } else {
                    None
                },
            };
            Output::new(out).drawn(&t, Some(&f))
        }
        Command::Splitsets(input) => {
            let t = load_tree(input)?;
            Output::new(split::split_report(&t)).drawn(&t, None)
        }
        Command::Construct(input) => {
            let t = load_tree(input)?;
            let ms = split::witness_split_set(&t)
                .ok_or_else(|| Failure::Run(construct::ConstructError::RadialTree.to_string()))?;
            let up =
                construct::construct_ibn_upper(&t, &ms).map_err(|e| Failure::Run(e.to_string()))?;
            let ok = up.certificate.maximal && up.certificate.bn_independent;
            let mut out = Output::new(json!({
                "split_set": ms.report(),
                "base": strengths(&up.base),
                "broadcast": strengths(&up.broadcast),
                "certificate": up.certificate,
            }))
            .drawn(&t, Some(&up.broadcast));
            out.ok = ok;
            out
        }
        Command::Reduce {
            input,
            broadcast: b,
            keep,
        } => {
            let t = load_tree(input)?;
            let f = load_broadcast(&t, b)?;
            let keep = io::parse_vertex_set(&read_arg(keep)?).map_err(input_err)?;
            let trace = construct::subtree_reduce(&t, &f, &keep).map_err(|e| match e {
                construct::ConstructError::NotMaximal
                | construct::ConstructError::KeepNotSubtree
                | construct::ConstructError::Broadcast(_) => input_err(e),
                _ => Failure::Run(e.to_string()),
            })?;
            let target = &trace.target;
            Output::new(json!({
                "initial_cost": trace.initial_cost,
                "final_cost": trace.final_cost(),
                "steps": trace.steps,
                "target": TreeJson::from(&target.tree),
                "mapping": target.mapping,
                "final_broadcast": strengths(&trace.final_broadcast),
            }))
            .drawn(&target.tree, Some(&trace.final_broadcast))
        }
        Command::Gen { kind } => {
            let kind = match kind {
                GenKind::Path { n } => TreeKind::Path(*n),
                GenKind::Spider { legs } => TreeKind::Spider(legs.clone()),
                GenKind::Caterpillar { pendants } => TreeKind::Caterpillar(pendants.clone()),
                GenKind::Random { n, seed } => TreeKind::Random { n: *n, seed: *seed },
            };
            let t = generate::generate(&kind).map_err(input_err)?;
            Output::new(TreeJson::from(&t)).drawn(&t, None)
        }
        Command::Verify {
            all,
            fixture,
            claim,
            seed,
        } => verify(*all, fixture.as_deref(), *claim, *seed, budget)?,
    })
}

fn verify(
    all: bool,
    fixture: Option<&str>,
    claim: Option<Claim>,
    seed: u64,
    budget: u64,
) -> Result<Output, Failure> {
    let mut fixture_reports = Vec::new();
    let mut claim_reports = Vec::new();
    let names: Vec<&str> = match (all, fixture) {
        (true, _) => fixtures::names(),
        (false, Some(n)) => vec![n],
        (false, None) => Vec::new(),
    };
    for n in names {
        fixture_reports.push(fixtures::verify_fixture(n, budget)?);
    }
    let claims: Vec<Claim> = match (all, claim) {
        (true, _) => Claim::ALL.to_vec(),
        (false, Some(c)) => vec![c],
        (false, None) => Vec::new(),
    };
    if fixture_reports.is_empty() && claims.is_empty() {
        return Err(Failure::Input(
            "verify needs --all, --fixture or --claim".to_string(),
        ));
    }
    for c in claims {
        claim_reports.push(verify_theorem(c, &c.default_corpus(seed), budget)?);
    }
    let ok = fixture_reports.iter().all(|r| r.pass) && claim_reports.iter().all(|r| r.pass);
    let mut out = Output::new(json!({
        "pass": ok,
        "fixtures": fixture_reports,
        "claims": claim_reports,
    }));
    out.ok = ok;
    Ok(out)
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match (cli.format, &out.dot) {
                (Format::Json, _) => emit(&format!("{}\n", out.json)),
                (Format::Dot, Some((t, f))) => emit(&io::to_dot(t, f.as_ref())),
                (Format::Dot, None) => {
                    eprintln!("error: this command has no DOT rendering");
                    return ExitCode::from(2);
                }
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Run(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
