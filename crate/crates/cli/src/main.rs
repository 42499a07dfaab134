use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use morsify::frontend::{emit_dot, emit_report, error_exit_code, parse_input, run_analysis, Analysis, Options, Status};
use morsify::Injectivity;

#[derive(Parser)]
#[command(name = "morsify", version, about = "Snakes of morsifications from Newton-Puiseux roots")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a root-system file.
    ///
    /// Exit status: 0 success, 2 injectivity failure (report still written),
    /// 3 invalid input, 4 internal disagreement, 1 I/O or usage error.
    Analyze {
        input: PathBuf,
        /// Also recover the snake by exact evaluation at small x0.
        #[arg(long)]
        oracle: bool,
        /// Write the JSON report here.
        #[arg(long, value_name = "PATH")]
        json: Option<PathBuf>,
        /// Write Graphviz files for every tree into this directory.
        #[arg(long, value_name = "PATH")]
        dot_dir: Option<PathBuf>,
        /// Print nothing on success.
        #[arg(long)]
        quiet: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(1);
        }
        Err(e) => e.exit(),
    };
    let Command::Analyze { input, oracle, json, dot_dir, quiet } = cli.command;
    let code = analyze(&input, Options { oracle, json, dot_dir, quiet });
    ExitCode::from(code as u8)
}

fn analyze(input: &Path, options: Options) -> i32 {
    let text = match fs::read_to_string(input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", input.display());
            return 1;
        }
    };
    let mut spec = match parse_input(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {}: {e}", input.display());
            return 3;
        }
    };
    spec.options = options;
    let analysis = match run_analysis(&spec) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return error_exit_code(&e);
        }
    };
    if let Err(e) = write_outputs(&analysis, &spec.options) {
        eprintln!("error: {e}");
        return 1;
    }
    let status = analysis.status();
    if !spec.options.quiet {
        print_summary(&analysis);
    }
    if let Injectivity::Fail(ws) = &analysis.report.injectivity {
        for w in ws {
            eprintln!(
                "injectivity fails at vertex {} (E = {}): table entries {} and {} coincide, s over areas {:?} sums to zero",
                w.vertex, w.exponent, w.entries.0, w.entries.1, w.zero_sum_areas
            );
        }
    }
    if status == Status::Inconsistent {
        for m in analysis.inconsistencies() {
            eprintln!("inconsistency: {m}");
        }
    }
    status.exit_code()
}

fn write_outputs(a: &Analysis, options: &Options) -> std::io::Result<()> {
    if let Some(path) = &options.json {
        fs::write(path, emit_report(&a.report, a.oracle_result()))?;
    }
    if let Some(dir) = &options.dot_dir {
        fs::create_dir_all(dir)?;
        let r = &a.report;
        fs::write(dir.join("real.dot"), emit_dot(r.real_tree(), "T_R", "xi"))?;
        fs::write(dir.join("complex.dot"), emit_dot(r.complex_tree(), "T_C", "xi"))?;
        if let Some(t) = &r.integrated {
            fs::write(dir.join("integrated.dot"), emit_dot(t, "T_Int", "xi"))?;
        }
        if let Some(t) = &r.discriminant {
            fs::write(dir.join("discriminant.dot"), emit_dot(t, "T_D", "delta"))?;
        }
    }
    Ok(())
}

fn print_summary(a: &Analysis) {
    let r = &a.report;
    let list = |v: Vec<String>| v.join(", ");
    println!("real roots: {}", r.roots.n_real());
    println!("sigma: [{}]", list(r.areas.iter().map(|x| x.sigma.to_string()).collect()));
    println!("s: [{}]", list(r.areas.iter().map(|x| x.s.to_string()).collect()));
    for t in &r.tables {
        println!(
            "table at vertex {} (E = {}): [{}]",
            t.vertex,
            t.exponent,
            list(t.partial_sums.iter().map(|x| x.to_string()).collect())
        );
    }
    println!("injectivity: {}", if r.injectivity.passes() { "pass" } else { "fail" });
    if let Some(s) = &r.snake {
        println!("snake: {s}");
    }
    if let Some(tb) = &r.theorem_b {
        println!("discriminant tree isomorphic: {}", tb.isomorphic);
    }
    match &a.oracle {
        Some(Ok(o)) => println!("oracle: {} at x0 = {}", o.snake, o.x0_used),
        Some(Err(e)) => println!("oracle: {e}"),
        None => {}
    }
}
