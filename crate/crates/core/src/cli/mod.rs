//! Front end shared by the `lts` binary and the integration tests: benchmark
//! cases, configuration, CSV and gnuplot output, and verification sweeps.

pub mod cases;
pub mod config;
pub mod verify;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use cases::{CaseDefinition, Problem};
use config::CaseConfig;

use crate::driver::{run, Diagnostics, EulerLaw, Grid1D, RunConfig, ScalarLaw};
use crate::error::{LtsError, Result};
use crate::euler::{EulerState, GasModel};
use crate::scalar_flux::{Advection, Burgers};

/// Final field of a case run.
#[derive(Clone, Debug)]
pub enum Solution {
    Scalar(Vec<f64>),
    Euler { gas: GasModel, field: Vec<EulerState> },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErrorNorms {
    /// `Σ |e_j| Δx`.
    pub l1: f64,
    pub linf: f64,
}

impl ErrorNorms {
    pub fn between(values: &[f64], reference: &[f64], dx: f64) -> Self {
        let (mut l1, mut linf) = (0.0, 0.0f64);
        for (v, r) in values.iter().zip(reference) {
            let e = (v - r).abs();
            l1 += e * dx;
            linf = linf.max(e);
        }
        Self { l1, linf }
    }
}

/// Result of [`simulate`].
#[derive(Clone, Debug)]
pub struct CaseRun {
    pub grid: Grid1D,
    pub time: f64,
    pub solution: Solution,
    pub diagnostics: Diagnostics,
    /// Final `u` (scalar) or density (Euler) at cell centres.
    pub primary: Vec<f64>,
    /// Exact counterpart of `primary`, when the case has one.
    pub reference: Option<Vec<f64>>,
}

impl CaseRun {
    pub fn errors(&self) -> Option<ErrorNorms> {
        let r = self.reference.as_ref()?;
        Some(ErrorNorms::between(&self.primary, r, self.grid.dx()))
    }
}

/// Runs a case to its final time without writing anything.
pub fn simulate(config: &CaseConfig) -> Result<CaseRun> {
    let case = &config.case;
    let grid = config.grid;
    let x = grid.centers();
    let t_end = config.t_end;

    macro_rules! scalar_run {
        ($model:expr) => {{
            let initial = x.iter().map(|&x| case.initial_scalar(x)).collect();
            let rc = RunConfig::new(ScalarLaw::new($model), config.spec, grid, initial, config.courant, t_end)
                .with_bc(config.bc)
                .with_exec(config.exec);
            let out = run(&rc)?;
            let reference = x
                .iter()
                .map(|&x| case.reference_scalar(x, out.time))
                .collect::<Option<Vec<_>>>();
            CaseRun {
                grid,
                time: out.time,
                primary: out.field.clone(),
                solution: Solution::Scalar(out.field),
                diagnostics: out.diagnostics,
                reference,
            }
        }};
    }

    Ok(match case.problem {
        Problem::Burgers => scalar_run!(Burgers),
        Problem::Advection { speed } => scalar_run!(Advection::new(speed)),
        Problem::Euler(gas) => {
            let initial = x.iter().map(|&x| gas.to_conservative(&case.initial_euler(x))).collect();
            let rc = RunConfig::new(EulerLaw::new(gas), config.spec, grid, initial, config.courant, t_end)
                .with_bc(config.bc)
                .with_exec(config.exec);
            let out = run(&rc)?;
            let reference = x
                .iter()
                .map(|&x| case.reference_euler(x, out.time).map(|w| w.rho))
                .collect::<Option<Vec<_>>>();
            CaseRun {
                grid,
                time: out.time,
                primary: out.field.iter().map(|s| s.rho).collect(),
                solution: Solution::Euler { gas, field: out.field },
                diagnostics: out.diagnostics,
                reference,
            }
        }
    })
}

/// Solution CSV. Numbers use Rust's shortest round-trip formatting.
pub fn solution_csv(grid: &Grid1D, solution: &Solution) -> String {
    let mut out = String::new();
    match solution {
        Solution::Scalar(u) => {
            out.push_str("x,u\n");
            for (j, u) in u.iter().enumerate() {
                out.push_str(&format!("{},{}\n", grid.center(j), u));
            }
        }
        Solution::Euler { gas, field } => {
            out.push_str("x,rho,u,p,E\n");
            for (j, s) in field.iter().enumerate() {
                let w = gas.to_primitive(s);
                out.push_str(&format!("{},{},{},{},{}\n", grid.center(j), w.rho, w.u, w.p, s.ene));
            }
        }
    }
    out
}

/// The exact solution sampled at cell centres, in the solution CSV layout.
pub fn reference_csv(case: &CaseDefinition, grid: &Grid1D, t: f64) -> Option<String> {
    let mut out = String::new();
    if case.is_scalar() {
        out.push_str("x,u\n");
        for x in grid.centers() {
            out.push_str(&format!("{},{}\n", x, case.reference_scalar(x, t)?));
        }
    } else {
        let Problem::Euler(gas) = case.problem else { return None };
        out.push_str("x,rho,u,p,E\n");
        for x in grid.centers() {
            let w = case.reference_euler(x, t)?;
            let e = gas.to_conservative(&w).ene;
            out.push_str(&format!("{},{},{},{},{}\n", x, w.rho, w.u, w.p, e));
        }
    }
    Some(out)
}

/// Gnuplot script comparing `solution.csv` with `reference.csv` (if written).
pub fn plot_script(config: &CaseConfig, with_reference: bool) -> String {
    let ylabel = if config.case.is_scalar() { "u" } else { "rho" };
    let mut s = String::new();
    s.push_str("set datafile separator ','\n");
    s.push_str("set terminal pngcairo size 900,600\n");
    s.push_str("set output 'solution.png'\n");
    s.push_str(&format!(
        "set title '{} {} C={} N={} t={}'\n",
        config.case.name,
        config.spec.kind,
        config.courant,
        config.grid.ncells,
        config.t_end
    ));
    s.push_str("set xlabel 'x'\n");
    s.push_str(&format!("set ylabel '{ylabel}'\n"));
    s.push_str("set key top left\n");
    let mut plot = format!(
        "plot 'solution.csv' every ::1 using 1:2 with points pt 7 ps 0.4 title '{}'",
        config.spec.kind
    );
    if with_reference {
        plot.push_str(", 'reference.csv' every ::1 using 1:2 with lines lw 2 title 'exact'");
    }
    s.push_str(&plot);
    s.push('\n');
    s
}

/// What [`run_case`] did.
#[derive(Clone, Debug)]
pub struct CaseReport {
    pub run: CaseRun,
    pub files: Vec<PathBuf>,
}

impl fmt::Display for CaseReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = &self.run.diagnostics;
        writeln!(f, "steps: {}  t = {}", d.steps(), self.run.time)?;
        if let Some(e) = self.run.errors() {
            writeln!(f, "L1 error: {:e}", e.l1)?;
            writeln!(f, "Linf error: {:e}", e.linf)?;
        }
        writeln!(f, "min TVD residual: {:e}", d.min_tvd_residual())?;
        for p in &self.files {
            writeln!(f, "wrote {}", p.display())?;
        }
        Ok(())
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| LtsError::io(path, e))
}

/// Runs a case and writes its output files under `config.out`.
pub fn run_case(config: &CaseConfig) -> Result<CaseReport> {
    let run = simulate(config)?;
    let dir = &config.out;
    fs::create_dir_all(dir).map_err(|e| LtsError::io(dir, e))?;
    let mut files = Vec::new();

    let path = dir.join("solution.csv");
    write_file(&path, &solution_csv(&run.grid, &run.solution))?;
    files.push(path);

    let reference = reference_csv(&config.case, &run.grid, run.time);
    if let Some(text) = &reference {
        let path = dir.join("reference.csv");
        write_file(&path, text)?;
        files.push(path);
    }
    if config.diagnostics {
        let path = dir.join("diagnostics.csv");
        write_file(&path, &run.diagnostics.to_csv())?;
        files.push(path);
    }
    if config.emit_plot {
        let path = dir.join("plot.gp");
        write_file(&path, &plot_script(config, reference.is_some()))?;
        files.push(path);
    }
    Ok(CaseReport { run, files })
}
