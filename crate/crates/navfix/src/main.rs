use clap::{Parser, Subcommand};
use navfix::{presets::Family, resolve_out_root, run_config, run_suite, verify_manifest, ScenarioConfig};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "navfix", version, about = "Fixed-point Euler / Navier-Stokes scenario runner")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario from a TOML config.
    Solve {
        #[arg(long)]
        config: PathBuf,
        /// Output root; a directory named after the scenario is created inside.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every shipped scenario of a family.
    Suite {
        #[arg(long, default_value = "all")]
        family: Family,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Re-hash the files listed in a manifest and report its checks.
    Verify {
        #[arg(long)]
        manifest: PathBuf,
    },
    /// Write the shipped scenario configs as TOML files.
    Presets {
        #[arg(long, default_value = "all")]
        family: Family,
        #[arg(long)]
        dir: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Solve { config, out } => solve(config, out),
        Command::Suite { family, out, jobs } => {
            let root = resolve_out_root(out.as_deref(), None);
            match run_suite(family, &root, jobs) {
                Ok(summary) => {
                    for e in &summary.entries {
                        let what = match (&e.status, &e.error) {
                            (Some(s), _) => format!("{s:?}"),
                            (None, Some(err)) => format!("error: {err}"),
                            _ => String::new(),
                        };
                        println!("{:<20} exit {}  {what}", e.scenario, e.exit_code);
                    }
                    summary.exit_code
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    e.exit_code()
                }
            }
        }
        Command::Verify { manifest } => match verify_manifest(&manifest) {
            Ok(check) => {
                for f in &check.mismatched {
                    println!("hash mismatch: {f}");
                }
                for c in &check.failed_checks {
                    println!("failed check: {c}");
                }
                println!(
                    "{}: {} files, {} checks, exit {}",
                    check.manifest.scenario,
                    check.manifest.files.len(),
                    check.manifest.checks.len(),
                    check.exit_code()
                );
                check.exit_code()
            }
            Err(e) => {
                eprintln!("error: {e}");
                1
            }
        },
        Command::Presets { family, dir } => {
            let mut code = 0;
            if let Err(e) = std::fs::create_dir_all(&dir) {
                eprintln!("error: {}: {e}", dir.display());
                return ExitCode::from(1);
            }
            for cfg in navfix::presets(family) {
                let path = dir.join(format!("{}.toml", cfg.name));
                if let Err(e) = std::fs::write(&path, cfg.to_toml()) {
                    eprintln!("error: {}: {e}", path.display());
                    code = 1;
                }
            }
            code
        }
    };
    ExitCode::from(code)
}

fn solve(config: PathBuf, out: Option<PathBuf>) -> u8 {
    let cfg = match ScenarioConfig::load(&config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let root = resolve_out_root(out.as_deref(), cfg.output_dir.as_deref());
    match run_config(&cfg, &root) {
        Ok(outcome) => {
            for c in outcome.manifest.checks.iter().filter(|c| !c.pass) {
                eprintln!("check failed: {} value {:e} threshold {:e}", c.check, c.value(), c.threshold);
            }
            println!("{} -> {}", cfg.name, outcome.manifest_path.display());
            outcome.status().exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
