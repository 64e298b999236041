use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use halflat::assoc::{is_a_module_spec, iso_decide, simplicity_witness};
use halflat::config::Config;
use halflat::json::{
    laurent_to_json, module_element_to_json, parse_laurent, parse_module_context, parse_module_element,
    parse_omega_spec, parse_velement, velement_to_json, witness_to_json, zhu_to_json,
};
use halflat::suites::run_verification;
use halflat::vertex::nth_product;
use halflat::zhu::{zhu_reduce, zhu_star};
use halflat::Error;

#[derive(Parser)]
#[command(name = "halflat", version, about = "Exact computations in the half-lattice vertex algebra and its modules")]
struct Cli {
    /// JSON config: {nu, k, mode_window, jacobi_window, probe_count, max_degree, seed}
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Print machine-readable JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    #[command(subcommand)]
    Eval(Eval),
    #[command(subcommand)]
    Decide(Decide),
    #[command(subcommand)]
    Witness(WitnessCmd),
    /// Run one verification suite
    Verify { suite: String },
}

/// Element arguments take inline JSON (starting with `{` or `[`) or a file path.
#[derive(Subcommand)]
enum Eval {
    /// u_n v in V
    Product {
        #[arg(long)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long)]
        v: String,
    },
    /// Zhu normal form of u, or of u * v when v is given
    Zhu {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: Option<String>,
    },
    /// u_n w in the module V_{λ,W}
    Act {
        #[arg(long)]
        context: String,
        #[arg(long)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long)]
        w: String,
    },
}

#[derive(Subcommand)]
enum Decide {
    /// Is M_ω(s1) ≅ M_ω(s2)?
    Iso {
        #[arg(long)]
        s1: String,
        #[arg(long)]
        s2: String,
    },
    /// Is M_ω an A-module?
    Amodule(SpecArg),
}

#[derive(Args)]
struct SpecArg {
    #[arg(long)]
    spec: String,
}

#[derive(Subcommand)]
enum WitnessCmd {
    /// Steps reducing f·ω to a nonzero multiple of ω
    Simplicity {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        f: String,
    },
}

enum Failure {
    Input(String),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn document(arg: &str) -> Result<Value, Failure> {
    let trimmed = arg.trim_start();
    let text = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| Failure::Input(format!("{arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("invalid JSON: {e}")))
}

fn emit(as_json: bool, value: Value, text: String) {
    if as_json {
        println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
    } else {
        println!("{text}");
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let config = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            Config::from_json(&text)?
        }
        None => Config::default(),
    };
    config.validate()?;
    let cfg = config.lattice()?;
    let j = cli.json;

    match cli.command {
        Command::Eval(Eval::Product { u, n, v }) => {
            let u = parse_velement(&document(&u)?, &cfg)?;
            let v = parse_velement(&document(&v)?, &cfg)?;
            let out = nth_product(&cfg, &u, n, &v);
            emit(j, velement_to_json(&out), out.to_string());
        }
        Command::Eval(Eval::Zhu { u, v }) => {
            let u = parse_velement(&document(&u)?, &cfg)?;
            let x = match v {
                Some(v) => zhu_star(&cfg, &u, &parse_velement(&document(&v)?, &cfg)?),
                None => u,
            };
            let nf = zhu_reduce(&cfg, &x);
            emit(j, zhu_to_json(&nf), nf.to_string());
        }
        Command::Eval(Eval::Act { context, u, n, w }) => {
            let ctx = parse_module_context(&document(&context)?, cfg)?;
            let u = parse_velement(&document(&u)?, &cfg)?;
            let w = parse_module_element(&document(&w)?, &cfg)?;
            let out = ctx.y_coefficient(&u, n, &w);
            emit(j, module_element_to_json(&out), out.to_string());
        }
        Command::Decide(Decide::Iso { s1, s2 }) => {
            let s1 = parse_omega_spec(&document(&s1)?, cfg.nu)?;
            let s2 = parse_omega_spec(&document(&s2)?, cfg.nu)?;
            match iso_decide(&s1, &s2) {
                Some(iso) => emit(
                    j,
                    json!({"isomorphic": true, "shifts": iso.shifts}),
                    format!("isomorphic, N = {:?}", iso.shifts),
                ),
                None => emit(j, json!({"isomorphic": false}), "not isomorphic".into()),
            }
        }
        Command::Decide(Decide::Amodule(SpecArg { spec })) => {
            let spec = parse_omega_spec(&document(&spec)?, cfg.nu)?;
            let verdict = is_a_module_spec(&spec);
            let witness = verdict.witness.map(|(a, b)| vec![a, b]);
            let text = match &witness {
                None => "A-module".to_string(),
                Some(w) => format!("not an A-module: D_{} f_{} ≠ D_{} f_{}", w[0] + 1, w[1] + 1, w[1] + 1, w[0] + 1),
            };
            emit(j, json!({"is_a_module": verdict.is_a_module, "witness": witness}), text);
        }
        Command::Witness(WitnessCmd::Simplicity { spec, f }) => {
            let spec = parse_omega_spec(&document(&spec)?, cfg.nu)?;
            let f = parse_laurent(&document(&f)?, spec.nu(), spec.laurent_vars(), "f")?;
            let w = simplicity_witness(&spec, &f)?;
            let end = w.replay(&spec, &f)?;
            let text = w.steps.iter().enumerate().map(|(i, s)| format!("step {}: {s}\n", i + 1)).collect::<String>()
                + &format!("result: {end}");
            let mut value = witness_to_json(&w);
            value["result"] = laurent_to_json(&end);
            emit(j, value, text);
        }
        Command::Verify { suite } => {
            let report = run_verification(&suite, &config)?;
            if j {
                emit(true, report.to_json(), String::new());
            } else {
                for c in report.failures() {
                    println!("FAIL {}: {}", c.id, c.residual.as_deref().unwrap_or(""));
                }
                println!("{}", report.summary());
            }
            eprintln!("wall time: {:.2?}", report.wall_time);
            if !report.passed() {
                return Err(Failure::Checks);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
