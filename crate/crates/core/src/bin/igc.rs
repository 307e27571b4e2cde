use std::process::ExitCode;

use clap::Parser;
use igc::session::{tokenize, Format, Output, Session};
use igc::{ChartSpec, Error, RelativeSpec};

/// Exact computations in the infinitesimal groupoid of a coordinate chart.
#[derive(Parser, Debug)]
#[command(name = "igc", version)]
struct Cli {
    /// Chart dimension.
    #[arg(long)]
    dim: usize,
    /// Bracket length truncation of the free algebra.
    #[arg(long, default_value_t = 4)]
    max_degree: usize,
    /// Seed for the randomized checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Run commands from a file, one per line.
    #[arg(long)]
    script: Option<std::path::PathBuf>,
    /// Vertical coordinate indices of the relative algebra, e.g. `1,2`.
    #[arg(long, value_delimiter = ',')]
    vertical: Vec<usize>,
    /// Command and its arguments.
    #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
    command: Vec<String>,
}

fn emit(out: &Output, format: Format) {
    println!("{}", out.render(format));
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let spec = match ChartSpec::new(cli.dim, cli.max_degree).and_then(|c| RelativeSpec::new(c, cli.vertical.clone())) {
        Ok(s) => s,
        Err(e) => return fail(&e),
    };
    let mut session = Session::new(spec);
    session.format = cli.format;
    session.seed = cli.seed;

    let mut status = 0;
    if let Some(path) = &cli.script {
        let src = match std::fs::read_to_string(path) {
            Ok(s) => s,
            Err(e) => return fail(&Error::Usage(format!("cannot read {}: {e}", path.display()))),
        };
        let (outs, err) = session.run_script(&src);
        for o in &outs {
            emit(o, cli.format);
            status = status.max(o.exit_code);
        }
        if let Some(e) = err {
            return fail(&e);
        }
    }
    if !cli.command.is_empty() {
        // A single argument may hold a whole command line.
        let tokens = if cli.command.len() == 1 {
            match tokenize(&cli.command[0]) {
                Ok(t) => t,
                Err(e) => return fail(&e),
            }
        } else {
            cli.command.clone()
        };
        match session.run(&tokens, 1) {
            Ok(o) => {
                emit(&o, cli.format);
                status = status.max(o.exit_code);
            }
            Err(e) => return fail(&e),
        }
    } else if cli.script.is_none() {
        return fail(&Error::Usage("no command given; try `igc --help`".into()));
    }
    ExitCode::from(status as u8)
}
