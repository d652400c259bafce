//! Run configuration: flat `key = value` files, command-line overrides and
//! case defaults.

use std::path::{Path, PathBuf};

use super::cases::{build_case, CaseDefinition, CaseName};
use crate::driver::{BoundaryCondition, Grid1D};
use crate::error::{LtsError, Result};
use crate::par::Execution;
use crate::schemes::{SchemeKind, SchemeSpec, StepMode};

/// Every setting a run accepts; `None` means "not given".
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Settings {
    pub case: Option<CaseName>,
    pub scheme: Option<SchemeKind>,
    pub courant: Option<f64>,
    pub cells: Option<usize>,
    pub t_end: Option<f64>,
    pub beta: Option<f64>,
    pub beta_per_dx: Option<f64>,
    pub delta: Option<f64>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub diagnostics: Option<bool>,
    pub emit_plot: Option<bool>,
    pub step: Option<StepMode>,
    pub bc: Option<BoundaryCondition>,
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| LtsError::Config(format!("invalid value `{value}` for `{key}`")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value.to_ascii_lowercase().as_str() {
        "true" | "yes" | "on" | "1" => Ok(true),
        "false" | "no" | "off" | "0" => Ok(false),
        _ => Err(LtsError::Config(format!("invalid boolean `{value}` for `{key}`"))),
    }
}

impl Settings {
    /// Sets one key. Keys match the long flag names; `_` and `-` are interchangeable.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.trim().to_ascii_lowercase().replace('_', "-");
        let value = value.trim();
        match key.as_str() {
            "case" => self.case = Some(value.parse()?),
            "scheme" => self.scheme = Some(value.parse()?),
            "courant" => self.courant = Some(parse_value(&key, value)?),
            "cells" => self.cells = Some(parse_value(&key, value)?),
            "t-end" => self.t_end = Some(parse_value(&key, value)?),
            "beta" => self.beta = Some(parse_value(&key, value)?),
            "beta-per-dx" => self.beta_per_dx = Some(parse_value(&key, value)?),
            "delta" => self.delta = Some(parse_value(&key, value)?),
            "seed" => self.seed = Some(parse_value(&key, value)?),
            "out" => self.out = Some(PathBuf::from(value)),
            "diagnostics" => self.diagnostics = Some(parse_bool(&key, value)?),
            "emit-plot" => self.emit_plot = Some(parse_bool(&key, value)?),
            "step" => self.step = Some(value.parse()?),
            "bc" => self.bc = Some(value.parse()?),
            _ => return Err(LtsError::Config(format!("unknown key `{key}`"))),
        }
        Ok(())
    }

    /// Parses a config file body. Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut s = Self::default();
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| LtsError::Config(format!("line {}: expected `key = value`", no + 1)))?;
            s.set(key, value)
                .map_err(|e| LtsError::Config(format!("line {}: {e}", no + 1)))?;
        }
        Ok(s)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| LtsError::io(path, e))?;
        Self::parse(&text)
    }

    /// `other` wins wherever it is set.
    pub fn overridden_by(self, other: Settings) -> Settings {
        Settings {
            case: other.case.or(self.case),
            scheme: other.scheme.or(self.scheme),
            courant: other.courant.or(self.courant),
            cells: other.cells.or(self.cells),
            t_end: other.t_end.or(self.t_end),
            beta: other.beta.or(self.beta),
            beta_per_dx: other.beta_per_dx.or(self.beta_per_dx),
            delta: other.delta.or(self.delta),
            seed: other.seed.or(self.seed),
            out: other.out.or(self.out),
            diagnostics: other.diagnostics.or(self.diagnostics),
            emit_plot: other.emit_plot.or(self.emit_plot),
            step: other.step.or(self.step),
            bc: other.bc.or(self.bc),
        }
    }
}

/// A fully resolved run of one benchmark case.
#[derive(Clone, Debug, PartialEq)]
pub struct CaseConfig {
    pub case: CaseDefinition,
    pub spec: SchemeSpec,
    pub courant: f64,
    pub grid: Grid1D,
    pub t_end: f64,
    pub bc: BoundaryCondition,
    pub out: PathBuf,
    pub diagnostics: bool,
    pub emit_plot: bool,
    pub exec: Execution,
}

impl CaseConfig {
    /// Fills unset values from the case defaults and validates the result.
    pub fn resolve(settings: &Settings) -> Result<Self> {
        let name = settings
            .case
            .ok_or_else(|| LtsError::Config("no case given".into()))?;
        let kind = settings
            .scheme
            .ok_or_else(|| LtsError::Config("no scheme given".into()))?;
        let case = build_case(name)?;
        let d = case.defaults;

        let ncells = settings.cells.unwrap_or(d.ncells);
        let grid = Grid1D::new(case.xlo, case.xhi, ncells).map_err(|e| LtsError::Config(e.to_string()))?;
        let courant = settings.courant.unwrap_or(d.courant);
        let t_end = settings.t_end.unwrap_or(d.t_end);
        if !(courant.is_finite() && courant > 0.0) {
            return Err(LtsError::Config(format!("courant must be positive, got {courant}")));
        }
        if !(t_end.is_finite() && t_end > 0.0) {
            return Err(LtsError::Config(format!("t-end must be positive, got {t_end}")));
        }

        let mut spec = SchemeSpec::new(kind);
        spec.beta = match (settings.beta, settings.beta_per_dx) {
            (Some(_), Some(_)) => return Err(LtsError::Config("give either beta or beta-per-dx, not both".into())),
            (Some(b), None) => b,
            (None, Some(per_dx)) => per_dx * grid.dx(),
            (None, None) => spec.beta,
        };
        if let Some(delta) = settings.delta {
            spec.delta = delta;
        }
        if let Some(seed) = settings.seed {
            spec.seed = seed;
        }
        if let Some(step) = settings.step {
            spec.step_mode = step;
        }
        spec.validate().map_err(|e| LtsError::Config(e.to_string()))?;
        if spec.is_randomized() && courant <= 0.5 {
            return Err(LtsError::Config("random steps need courant above 1/2".into()));
        }
        if kind == SchemeKind::Godunov && !case.is_scalar() {
            return Err(LtsError::Config("godunov is only available for scalar cases".into()));
        }

        Ok(Self {
            spec,
            courant,
            grid,
            t_end,
            bc: settings.bc.unwrap_or(d.bc),
            out: settings.out.clone().unwrap_or_else(|| PathBuf::from("out")),
            diagnostics: settings.diagnostics.unwrap_or(false),
            emit_plot: settings.emit_plot.unwrap_or(false),
            exec: Execution::default(),
            case,
        })
    }
}
