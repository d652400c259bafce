use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use lts_tvd::cli::config::{CaseConfig, Settings};
use lts_tvd::cli::verify::{verify, VerifyConfig};
use lts_tvd::cli::{run_case, cases::CaseName};
use lts_tvd::driver::BoundaryCondition;
use lts_tvd::schemes::{SchemeKind, SchemeSpec, StepMode};

/// Large-time-step TVD schemes for 1D conservation laws.
#[derive(Parser, Debug)]
#[command(name = "lts", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a benchmark case and write CSV output.
    Run(RunArgs),
    /// Sweep coefficient sets and report TVD, bound, diffusion and round-trip checks.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Flat `key = value` file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// burgers-square, burgers-transonic, advection-shift or sod.
    #[arg(long)]
    case: Option<CaseName>,
    /// roe, lxf, roelxf, roestar or godunov.
    #[arg(long)]
    scheme: Option<SchemeKind>,
    /// Target global Courant number.
    #[arg(long)]
    courant: Option<f64>,
    #[arg(long)]
    cells: Option<usize>,
    #[arg(long)]
    t_end: Option<f64>,
    /// LxF weight of LTS-RoeLxF.
    #[arg(long)]
    beta: Option<f64>,
    /// Sets beta = value * dx.
    #[arg(long)]
    beta_per_dx: Option<f64>,
    /// Harten fix width of LTS-Roe*.
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// fixed or random.
    #[arg(long)]
    step: Option<StepMode>,
    /// zero-gradient or periodic.
    #[arg(long)]
    bc: Option<BoundaryCondition>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write diagnostics.csv.
    #[arg(long)]
    diagnostics: bool,
    /// Write plot.gp.
    #[arg(long)]
    emit_plot: bool,
}

impl RunArgs {
    fn settings(&self) -> Settings {
        Settings {
            case: self.case,
            scheme: self.scheme,
            courant: self.courant,
            cells: self.cells,
            t_end: self.t_end,
            beta: self.beta,
            beta_per_dx: self.beta_per_dx,
            delta: self.delta,
            seed: self.seed,
            out: self.out.clone(),
            diagnostics: self.diagnostics.then_some(true),
            emit_plot: self.emit_plot.then_some(true),
            step: self.step,
            bc: self.bc,
        }
    }
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Scheme to check; all schemes when omitted.
    #[arg(long)]
    scheme: Option<SchemeKind>,
    /// Stencil half-width.
    #[arg(long, default_value_t = 3)]
    k: usize,
    #[arg(long, default_value_t = 601)]
    samples: usize,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
}

const USAGE: u8 = 1;
const FAILURE: u8 = 2;

fn run(args: RunArgs) -> ExitCode {
    let file = match &args.config {
        Some(path) => match Settings::load(path) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(USAGE);
            }
        },
        None => Settings::default(),
    };
    let config = match CaseConfig::resolve(&file.overridden_by(args.settings())) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(USAGE);
        }
    };
    println!(
        "case {} scheme {} courant {} cells {} t_end {}",
        config.case.name, config.spec.kind, config.courant, config.grid.ncells, config.t_end
    );
    match run_case(&config) {
        Ok(report) => {
            print!("{report}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("solver failure: {e}");
            ExitCode::from(FAILURE)
        }
    }
}

fn verify_cmd(args: VerifyArgs) -> ExitCode {
    let kinds = match args.scheme {
        Some(k) => vec![k],
        None => SchemeKind::ALL.to_vec(),
    };
    let schemes = kinds
        .into_iter()
        .map(|k| {
            let mut s = SchemeSpec::new(k);
            if let Some(b) = args.beta {
                s.beta = b;
            }
            if let Some(d) = args.delta {
                s.delta = d;
            }
            s
        })
        .collect::<Vec<_>>();
    if args.k == 0 {
        eprintln!("error: k must be at least 1");
        return ExitCode::from(USAGE);
    }
    if let Some(e) = schemes.iter().find_map(|s| s.validate().err()) {
        eprintln!("error: {e}");
        return ExitCode::from(USAGE);
    }
    let config = VerifyConfig {
        schemes,
        k: args.k,
        samples: args.samples,
        tol: args.tol,
        ..VerifyConfig::default()
    };
    match verify(&config) {
        Ok(report) => {
            print!("{report}");
            if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(FAILURE)
            }
        }
        Err(e) => {
            eprintln!("solver failure: {e}");
            ExitCode::from(FAILURE)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match cli.command {
        Command::Run(args) => run(args),
        Command::Verify(args) => verify_cmd(args),
    }
}
