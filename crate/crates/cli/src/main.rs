use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use negtrans::formula::{parse, print, Formula};
use negtrans::harness::{parse_checks, run_checks, CheckName, CheckStatus, GenConfig};
use negtrans::kripke::{chain_threshold, presets, Model};
use negtrans::prove::{classify_scale, decide, equivalent, Decision, Logic};
use negtrans::translate::{capture_warnings, translate, KindName};
use serde_json::json;

/// Negative translations, propositional deciders and Kripke models.
///
/// Formula arguments use the text syntax (`bot`, `~`, `&`, `|`, `->`,
/// `<->`, `forall x. A`, `exists x. A`); `@path` reads the formula from a
/// file.
#[derive(Parser)]
#[command(name = "negtrans", version)]
struct Cli {
    /// Machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a formula in canonical form.
    Parse { formula: String },
    /// Apply a translation.
    Translate {
        /// ko, g, goedel, ku, kr, n1, n2, fd or rfd.
        #[arg(long)]
        kind: String,
        /// Parameter formula for n1, n2, fd and rfd.
        #[arg(long = "param-f")]
        param_f: Option<String>,
        formula: String,
    },
    /// Decide a propositional formula.
    Prove {
        #[arg(long)]
        logic: String,
        /// Print a Kripke countermodel when unprovable.
        #[arg(long)]
        countermodel: bool,
        formula: String,
    },
    /// Decide the equivalence of two propositional formulas.
    Equiv {
        #[arg(long)]
        logic: String,
        /// Print a Kripke countermodel when not equivalent.
        #[arg(long)]
        countermodel: bool,
        left: String,
        right: String,
    },
    /// Place a formula on the provability/refutability scale.
    Classify { formula: String },
    /// Evaluate formulas in Kripke models.
    Kripke {
        #[command(subcommand)]
        command: KripkeCommand,
    },
    /// Run the check suite.
    Suite {
        #[command(subcommand)]
        command: SuiteCommand,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ModelSource {
    /// Model file in JSON.
    #[arg(long)]
    model: Option<String>,
    /// Embedded model: fig3, fig4 or fig5.
    #[arg(long)]
    preset: Option<String>,
}

#[derive(Subcommand)]
enum KripkeCommand {
    /// Whether the root forces the formula.
    Eval {
        #[command(flatten)]
        source: ModelSource,
        formula: String,
    },
    /// First node of an ω-chain model forcing the formula.
    Threshold {
        #[command(flatten)]
        source: ModelSource,
        formula: String,
    },
}

#[derive(Subcommand)]
enum SuiteCommand {
    /// Run all checks, or those named with --check.
    Run {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Restrict to this check; may be repeated.
        #[arg(long = "check")]
        checks: Vec<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("negtrans: {message}");
            ExitCode::from(2)
        }
    }
}

fn verdict(yes: bool) -> ExitCode {
    if yes {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn read_formula(arg: &str) -> Result<Formula, String> {
    let text = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?,
        None => arg.to_string(),
    };
    parse(text.trim()).map_err(|e| e.to_string())
}

fn read_logic(s: &str) -> Result<Logic, String> {
    s.parse()
        .map_err(|e: negtrans::prove::ProveError| e.to_string())
}

fn load_model(source: &ModelSource) -> Result<Model, String> {
    match (&source.model, &source.preset) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
            let model = Model::from_json(&text).map_err(|e| format!("{path}: {e}"))?;
            let violations = model.validate();
            if let Some(v) = violations.first() {
                return Err(format!("{path}: malformed model: {v}"));
            }
            Ok(model)
        }
        (None, Some(name)) => presets::get(name).ok_or_else(|| {
            format!(
                "unknown preset `{name}` (expected {})",
                presets::NAMES.join(", ")
            )
        }),
        (None, None) => Err("one of --model or --preset is required".into()),
    }
}

fn print_decision(d: &Decision, json: bool, countermodel: bool) {
    if json {
        let mut value = serde_json::to_value(d).expect("decisions serialize");
        // tagged like model files, so it can be fed back to `kripke eval`
        value["countermodel"] = match &d.countermodel {
            Some(m) if countermodel => {
                serde_json::to_value(Model::Finite(m.clone())).expect("models serialize")
            }
            _ => serde_json::Value::Null,
        };
        println!("{value}");
        return;
    }
    println!(
        "{}",
        if d.is_provable() {
            "provable"
        } else {
            "unprovable"
        }
    );
    if countermodel {
        if let Some(m) = &d.countermodel {
            println!("{}", Model::Finite(m.clone()).to_json());
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let json = cli.json;
    match cli.command {
        Command::Parse { formula } => {
            let f = read_formula(&formula)?;
            if json {
                println!("{}", json!({ "formula": print(&f) }));
            } else {
                println!("{}", print(&f));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Translate {
            kind,
            param_f,
            formula,
        } => {
            let name: KindName = kind
                .parse()
                .map_err(|e: negtrans::translate::KindError| e.to_string())?;
            let param = param_f.as_deref().map(read_formula).transpose()?;
            let kind = name.with_parameter(param).map_err(|e| e.to_string())?;
            let a = read_formula(&formula)?;
            let warnings = capture_warnings(&kind, &a);
            for w in &warnings {
                eprintln!("warning: {w}");
            }
            let out = translate(&kind, &a);
            if json {
                println!(
                    "{}",
                    json!({
                        "kind": name.as_str(),
                        "input": print(&a),
                        "output": print(&out),
                        "warnings": warnings,
                    })
                );
            } else {
                println!("{}", print(&out));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Prove {
            logic,
            countermodel,
            formula,
        } => {
            let logic = read_logic(&logic)?;
            let a = read_formula(&formula)?;
            let d = decide(logic, &a).map_err(|e| e.to_string())?;
            print_decision(&d, json, countermodel);
            Ok(verdict(d.is_provable()))
        }
        Command::Equiv {
            logic,
            countermodel,
            left,
            right,
        } => {
            let logic = read_logic(&logic)?;
            let (a, b) = (read_formula(&left)?, read_formula(&right)?);
            let d = equivalent(logic, &a, &b).map_err(|e| e.to_string())?;
            print_decision(&d, json, countermodel);
            Ok(verdict(d.is_provable()))
        }
        Command::Classify { formula } => {
            let a = read_formula(&formula)?;
            let class = classify_scale(&a).map_err(|e| e.to_string())?;
            if json {
                println!(
                    "{}",
                    json!({ "formula": print(&a), "class": class.as_str() })
                );
            } else {
                println!("{class}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Kripke { command } => match command {
            KripkeCommand::Eval { source, formula } => {
                let model = load_model(&source)?;
                let a = read_formula(&formula)?;
                let forced = model.forces_at_root(&a).map_err(|e| e.to_string())?;
                if json {
                    println!("{}", json!({ "formula": print(&a), "forced": forced }));
                } else {
                    println!("{}", if forced { "forced" } else { "not forced" });
                }
                Ok(verdict(forced))
            }
            KripkeCommand::Threshold { source, formula } => {
                let Model::Chain(chain) = load_model(&source)? else {
                    return Err("threshold needs an ω-chain model".into());
                };
                let a = read_formula(&formula)?;
                let t = chain_threshold(&chain, &a).map_err(|e| e.to_string())?;
                if json {
                    println!("{}", json!({ "formula": print(&a), "threshold": t }));
                } else {
                    println!("{t}");
                }
                Ok(ExitCode::SUCCESS)
            }
        },
        Command::Suite { command } => match command {
            SuiteCommand::Run {
                seed,
                samples,
                checks,
            } => {
                let names = if checks.is_empty() {
                    CheckName::ALL.to_vec()
                } else {
                    parse_checks(checks.iter().map(String::as_str)).map_err(|e| e.to_string())?
                };
                let cfg = GenConfig {
                    seed,
                    samples,
                    ..GenConfig::default()
                };
                let report = run_checks(&names, &cfg).map_err(|e| e.to_string())?;
                if json {
                    println!("{}", report.to_json());
                } else {
                    for c in &report.checks {
                        let status = match c.status {
                            CheckStatus::Pass => "pass",
                            CheckStatus::Fail => "FAIL",
                            CheckStatus::Skipped => "skipped",
                        };
                        println!(
                            "{status:7} {:28} {:5} samples {:6} ms",
                            c.name, c.samples, c.ms
                        );
                        if let Some(cx) = &c.counterexample {
                            println!("        counterexample: {cx}");
                        }
                    }
                }
                Ok(verdict(report.passed()))
            }
        },
    }
}
