//! samlab command line: run experiments, sweeps, and theorem audits.
//!
//! Exit codes: 0 success, 2 validation error, 3 nonfinite termination.

use std::path::PathBuf;
use std::process::ExitCode;

use samlab::analysis::TheoremTag;
use samlab::harness::{
    all_presets, audit, execute_to_dir, find_preset, parse_config, run_sweep_to_dir,
    serialize_config, summary_csv, ExperimentConfig, HarnessError,
};

const USAGE: &str = "\
samlab - deterministic lab for SAM-family optimizers and inexact gradient descent

USAGE:
    samlab run    (--preset NAME | --config PATH) [--seed U64] [--out DIR] [--no-svg]
    samlab sweep  (--preset NAME | --config PATH) [--parallel N] [--seed U64] [--out DIR]
    samlab audit  (--preset NAME | --config PATH) --theorem T1|C1|T3|T4
    samlab presets
    samlab config (--preset NAME | --config PATH)

Artifacts land in --out, then $SAMLAB_OUT, then ./out.
`run` writes trace.csv, report.csv, trace.svg and (for the counterexample
presets) certificate.txt; `sweep` writes summary.csv.
";

struct Flags {
    preset: Option<String>,
    config: Option<String>,
    seed: Option<u64>,
    out: Option<String>,
    parallel: usize,
    no_svg: bool,
    theorem: Option<String>,
}

fn parse_flags(args: &[String]) -> Result<Flags, String> {
    let mut flags = Flags {
        preset: None,
        config: None,
        seed: None,
        out: None,
        parallel: 1,
        no_svg: false,
        theorem: None,
    };
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        let mut take = |name: &str| {
            it.next()
                .map(|s| s.to_string())
                .ok_or_else(|| format!("{name} needs a value"))
        };
        match arg.as_str() {
            "--preset" => flags.preset = Some(take("--preset")?),
            "--config" => flags.config = Some(take("--config")?),
            "--seed" => {
                let v = take("--seed")?;
                flags.seed = Some(
                    v.parse()
                        .map_err(|_| format!("--seed: `{v}` is not a u64"))?,
                )
            }
            "--out" => flags.out = Some(take("--out")?),
            "--parallel" => {
                let v = take("--parallel")?;
                flags.parallel = v
                    .parse()
                    .map_err(|_| format!("--parallel: `{v}` is not an integer"))?;
            }
            "--no-svg" => flags.no_svg = true,
            "--theorem" => flags.theorem = Some(take("--theorem")?),
            other => return Err(format!("unknown flag `{other}`")),
        }
    }
    Ok(flags)
}

fn load_config(flags: &Flags) -> Result<ExperimentConfig, String> {
    match (&flags.preset, &flags.config) {
        (Some(_), Some(_)) => Err("--preset and --config are mutually exclusive".into()),
        (Some(name), None) => find_preset(name)
            .ok_or_else(|| format!("unknown preset `{name}` (try `samlab presets`)")),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read config {path}: {e}"))?;
            parse_config(&text).map_err(|e| format!("config {path}: {e}"))
        }
        (None, None) => Err("one of --preset or --config is required".into()),
    }
}

fn out_dir(flags: &Flags, config: &ExperimentConfig) -> PathBuf {
    if let Some(out) = &flags.out {
        return PathBuf::from(out);
    }
    if let Some(dir) = &config.output.dir {
        return PathBuf::from(dir);
    }
    if let Ok(env) = std::env::var("SAMLAB_OUT") {
        if !env.is_empty() {
            return PathBuf::from(env);
        }
    }
    PathBuf::from("out")
}

fn validation_error(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("samlab: {message}");
    ExitCode::from(2)
}

fn harness_error(e: HarnessError) -> ExitCode {
    eprintln!("samlab: {e}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let Some(command) = args.first() else {
        eprint!("{USAGE}");
        return ExitCode::from(2);
    };
    let flags = match parse_flags(&args[1..]) {
        Ok(f) => f,
        Err(e) => return validation_error(e),
    };

    match command.as_str() {
        "presets" => {
            for p in all_presets() {
                println!("{:<16} {}", p.name, p.description);
            }
            ExitCode::SUCCESS
        }
        "run" => {
            let mut config = match load_config(&flags) {
                Ok(c) => c,
                Err(e) => return validation_error(e),
            };
            if let Some(seed) = flags.seed {
                config.optimizer.seed = seed;
            }
            if config.is_sweep() {
                return validation_error(
                    "config declares [cell] sections; use `samlab sweep` for it",
                );
            }
            let dir = out_dir(&flags, &config);
            let resolved = match samlab::harness::resolve(&config) {
                Ok(r) => r,
                Err(e) => return harness_error(e),
            };
            match execute_to_dir(&config, &dir, !flags.no_svg) {
                Ok(outcome) => {
                    print!("{}", outcome.summary_text(&resolved.problem));
                    println!("artifacts in {}", dir.display());
                    ExitCode::from(outcome.exit_code() as u8)
                }
                Err(e) => harness_error(e),
            }
        }
        "sweep" => {
            let mut config = match load_config(&flags) {
                Ok(c) => c,
                Err(e) => return validation_error(e),
            };
            if let Some(seed) = flags.seed {
                config.optimizer.seed = seed;
            }
            let dir = out_dir(&flags, &config);
            match run_sweep_to_dir(&config, flags.parallel, &dir) {
                Ok(rows) => {
                    print!("{}", summary_csv(&rows));
                    println!("summary in {}", dir.join("summary.csv").display());
                    ExitCode::SUCCESS
                }
                Err(e) => harness_error(e),
            }
        }
        "audit" => {
            let config = match load_config(&flags) {
                Ok(c) => c,
                Err(e) => return validation_error(e),
            };
            let Some(theorem) = flags.theorem.as_deref().and_then(TheoremTag::parse) else {
                return validation_error("--theorem must be one of T1, C1, T3, T4");
            };
            match audit(&config, theorem) {
                Ok(report) => {
                    print!("{}", report.text_block());
                    ExitCode::SUCCESS
                }
                Err(e) => harness_error(e),
            }
        }
        "config" => {
            // prints the canonical text form, handy as a starting template
            let config = match load_config(&flags) {
                Ok(c) => c,
                Err(e) => return validation_error(e),
            };
            print!("{}", serialize_config(&config));
            ExitCode::SUCCESS
        }
        other => validation_error(format!("unknown command `{other}`\n{USAGE}")),
    }
}
