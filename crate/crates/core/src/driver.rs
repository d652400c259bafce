//! Grid, boundaries, time-step selection and the conservative update loop.
//!
//! One step works on a frozen copy of the field padded with `k` ghost cells
//! per side. Every interface of the padded field writes its `2k` fluctuation
//! products into its own slot of two flat buffers; cells then gather their
//! contributions. Both passes are data-parallel and race-free by construction,
//! and the gather sums in a fixed order, so sequential and parallel runs give
//! bit-identical fields.

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use crate::coefficients::min_tvd_residual_fds;
use crate::error::{LtsError, Result};
use crate::euler::{fill_split, roe_linearize, EulerState, GasModel};
use crate::par::Execution;
use crate::rng::Xorshift64Star;
use crate::scalar_flux::{courant_unchecked, max_wavespeed, FluxModel};
use crate::schemes::{enforce_cfl, fill_godunov, SchemeKind, SchemeSpec, CFL_SLACK};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid1D {
    pub xlo: f64,
    pub xhi: f64,
    pub ncells: usize,
}

impl Grid1D {
    pub fn new(xlo: f64, xhi: f64, ncells: usize) -> Result<Self> {
        if !(xlo.is_finite() && xhi.is_finite() && xhi > xlo) {
            return Err(LtsError::InvalidParameter(format!("empty domain [{xlo}, {xhi}]")));
        }
        if ncells < 2 {
            return Err(LtsError::InvalidParameter(format!("need at least 2 cells, got {ncells}")));
        }
        Ok(Self { xlo, xhi, ncells })
    }

    pub fn unit(ncells: usize) -> Result<Self> {
        Self::new(0.0, 1.0, ncells)
    }

    pub fn dx(&self) -> f64 {
        (self.xhi - self.xlo) / self.ncells as f64
    }

    pub fn center(&self, j: usize) -> f64 {
        self.xlo + (j as f64 + 0.5) * self.dx()
    }

    pub fn centers(&self) -> Vec<f64> {
        (0..self.ncells).map(|j| self.center(j)).collect()
    }

    pub fn sample<S>(&self, f: impl Fn(f64) -> S) -> Vec<S> {
        (0..self.ncells).map(|j| f(self.center(j))).collect()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BoundaryCondition {
    #[default]
    ZeroGradient,
    Periodic,
}

impl fmt::Display for BoundaryCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundaryCondition::ZeroGradient => "zero-gradient",
            BoundaryCondition::Periodic => "periodic",
        })
    }
}

impl FromStr for BoundaryCondition {
    type Err = LtsError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "zero-gradient" | "outflow" | "extrapolate" => Ok(BoundaryCondition::ZeroGradient),
            "periodic" => Ok(BoundaryCondition::Periodic),
            _ => Err(LtsError::InvalidParameter(format!("unknown boundary condition `{s}`"))),
        }
    }
}

impl BoundaryCondition {
    /// Field padded with `k` ghost cells on each side.
    pub fn pad<S: Copy>(self, field: &[S], k: usize) -> Vec<S> {
        let n = field.len() as isize;
        let k = k as isize;
        (-k..n + k)
            .map(|j| {
                let idx = match self {
                    BoundaryCondition::ZeroGradient => j.clamp(0, n - 1),
                    BoundaryCondition::Periodic => j.rem_euclid(n),
                };
                field[idx as usize]
            })
            .collect()
    }
}

/// A conserved state: a scalar or a fixed-size vector of components.
pub trait Conserved:
    Copy + Default + Send + Sync + fmt::Debug + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    const NCOMP: usize;

    fn component(&self, c: usize) -> f64;

    fn is_finite(&self) -> bool {
        (0..Self::NCOMP).all(|c| self.component(c).is_finite())
    }
}

impl Conserved for f64 {
    const NCOMP: usize = 1;

    fn component(&self, _c: usize) -> f64 {
        *self
    }
}

impl Conserved for EulerState {
    const NCOMP: usize = 3;

    fn component(&self, c: usize) -> f64 {
        match c {
            0 => self.rho,
            1 => self.mom,
            _ => self.ene,
        }
    }
}

/// A 1D conservation law discretised by a local `2k+1`-point scheme.
pub trait ConservationLaw: Sync {
    type State: Conserved;

    fn component_names(&self) -> &'static [&'static str];

    /// Bound on the characteristic speeds that interfaces of this field (with
    /// the given boundary closure) can produce.
    fn max_speed(&self, field: &[Self::State], bc: BoundaryCondition) -> Result<f64>;

    /// Writes the `k` products `𝒜^{i±}Δ` of one interface into `plus`/`minus`
    /// and returns the smallest TVD residual of the applied coefficient sets
    /// (`+∞` when none is defined). `scratch` is reusable storage.
    #[allow(clippy::too_many_arguments)]
    fn fill_interface(
        &self,
        spec: &SchemeSpec,
        left: &Self::State,
        right: &Self::State,
        ratio: f64,
        k: usize,
        plus: &mut [Self::State],
        minus: &mut [Self::State],
        scratch: &mut Vec<f64>,
    ) -> Result<f64>;
}

/// Scalar law `u_t + f(u)_x = 0`.
#[derive(Clone, Copy, Debug, Default)]
pub struct ScalarLaw<M> {
    pub model: M,
}

impl<M: FluxModel> ScalarLaw<M> {
    pub fn new(model: M) -> Self {
        Self { model }
    }
}

impl<M: FluxModel> ConservationLaw for ScalarLaw<M> {
    type State = f64;

    fn component_names(&self) -> &'static [&'static str] {
        &["u"]
    }

    fn max_speed(&self, field: &[f64], bc: BoundaryCondition) -> Result<f64> {
        let mut speed = max_wavespeed(&self.model, field)?;
        if bc == BoundaryCondition::Periodic {
            let (a, b) = (field[field.len() - 1], field[0]);
            speed = speed.max(self.model.wavespeed_bound(a.min(b), a.max(b)));
        }
        Ok(speed)
    }

    fn fill_interface(
        &self,
        spec: &SchemeSpec,
        left: &f64,
        right: &f64,
        ratio: f64,
        k: usize,
        plus: &mut [f64],
        minus: &mut [f64],
        _scratch: &mut Vec<f64>,
    ) -> Result<f64> {
        let (ul, ur) = (*left, *right);
        let du = ur - ul;
        if spec.kind == SchemeKind::Godunov {
            let reach = ratio * self.model.wavespeed_bound(ul.min(ur), ul.max(ur));
            if reach > k as f64 * (1.0 + CFL_SLACK) {
                return Err(LtsError::Cfl { courant: reach, k });
            }
            fill_godunov(&self.model, ul, ur, ratio, plus, minus);
            let scale = ul.abs().max(ur.abs()).max(f64::MIN_POSITIVE);
            if du.abs() <= GODUNOV_CERTIFY_GAP * scale {
                return Ok(f64::INFINITY);
            }
            // Recover the coefficients from the products to certify them.
            let coeffs: Vec<f64> = plus.iter().chain(minus.iter()).map(|p| p / du).collect();
            let (a_plus, a_minus) = coeffs.split_at(k);
            return Ok(min_tvd_residual_fds(ratio, a_plus, a_minus));
        }
        let c = enforce_cfl(courant_unchecked(&self.model, ul, ur, ratio), k)?;
        spec.courant_scheme(spec.beta)?.fill_fluctuations(c, ratio, k, plus, minus);
        let residual = min_tvd_residual_fds(ratio, plus, minus);
        plus.iter_mut().chain(minus.iter_mut()).for_each(|a| *a *= du);
        Ok(residual)
    }
}

/// Godunov coefficients are recovered as products divided by `Δu`, which
/// amplifies round-off by `|u| / |Δu|`. Jumps below this relative size are not
/// certified.
pub const GODUNOV_CERTIFY_GAP: f64 = 1e-6;

/// Euler equations with field-by-field splitting of the Roe linearisation.
#[derive(Clone, Copy, Debug, Default)]
pub struct EulerLaw {
    pub gas: GasModel,
}

impl EulerLaw {
    pub fn new(gas: GasModel) -> Self {
        Self { gas }
    }
}

impl ConservationLaw for EulerLaw {
    type State = EulerState;

    fn component_names(&self) -> &'static [&'static str] {
        &["rho", "mom", "E"]
    }

    // Largest of the cell speeds |u| + a and the Roe-averaged interface
    // eigenvalues, which may exceed both neighbouring cell speeds.
    fn max_speed(&self, field: &[EulerState], bc: BoundaryCondition) -> Result<f64> {
        if field.is_empty() {
            return Err(LtsError::EmptyStates);
        }
        let mut speed = 0.0f64;
        for s in field {
            self.gas.check_physical(s)?;
            speed = speed.max(self.gas.max_speed(s));
        }
        for w in field.windows(2) {
            speed = speed.max(roe_linearize(&w[0], &w[1], &self.gas)?.max_abs_eigenvalue());
        }
        if bc == BoundaryCondition::Periodic {
            let lin = roe_linearize(&field[field.len() - 1], &field[0], &self.gas)?;
            speed = speed.max(lin.max_abs_eigenvalue());
        }
        Ok(speed)
    }

    fn fill_interface(
        &self,
        spec: &SchemeSpec,
        left: &EulerState,
        right: &EulerState,
        ratio: f64,
        k: usize,
        plus: &mut [EulerState],
        minus: &mut [EulerState],
        scratch: &mut Vec<f64>,
    ) -> Result<f64> {
        let lin = roe_linearize(left, right, &self.gas)?;
        scratch.resize(2 * k, 0.0);
        let (sp, sm) = scratch.split_at_mut(k);
        plus.fill(EulerState::default());
        minus.fill(EulerState::default());
        let mut residual = f64::INFINITY;
        for m in 0..3 {
            fill_split(spec, lin.lambda[m], ratio, k, sp, sm)?;
            residual = residual.min(min_tvd_residual_fds(ratio, sp, sm));
            let wave = lin.rvec[m] * lin.alpha[m];
            for i in 0..k {
                plus[i] = plus[i] + wave * sp[i];
                minus[i] = minus[i] + wave * sm[i];
            }
        }
        Ok(residual)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimeStep {
    pub dt: f64,
    /// Courant number `Δt maxSpeed / Δx` of the step actually taken.
    pub courant: f64,
    /// Stencil half-width `⌈courant⌉`, at least 1.
    pub k: usize,
}

/// Stencil half-width for a global Courant number, tolerant of round-off just
/// above an integer.
pub fn stencil_width(courant: f64) -> usize {
    ((courant * (1.0 - CFL_SLACK)).ceil() as usize).max(1)
}

/// Picks `Δt` from the target Courant number. Randomised specs add a draw from
/// `[-1/2, 1/2)` before the step is clamped to `t_remaining`.
pub fn select_timestep(
    spec: &SchemeSpec,
    target_courant: f64,
    max_speed: f64,
    dx: f64,
    t_remaining: f64,
    rng: &mut Xorshift64Star,
) -> Result<TimeStep> {
    for (value, what) in [
        (target_courant, "target Courant number"),
        (max_speed, "max speed"),
        (dx, "dx"),
        (t_remaining, "remaining time"),
    ] {
        if !(value.is_finite() && value > 0.0) {
            return Err(LtsError::InvalidParameter(format!("{what} must be positive, got {value}")));
        }
    }
    if spec.is_randomized() && target_courant <= 0.5 {
        return Err(LtsError::InvalidParameter(format!(
            "randomised steps need a target Courant number above 1/2, got {target_courant}"
        )));
    }
    let mut courant = target_courant;
    if spec.is_randomized() {
        courant += rng.centered();
    }
    let mut dt = courant * dx / max_speed;
    if dt > t_remaining || t_remaining - dt < 1e-9 * dt {
        dt = t_remaining;
        courant = dt * max_speed / dx;
    }
    Ok(TimeStep {
        dt,
        courant,
        k: stencil_width(courant),
    })
}

/// Output of one conservative update.
#[derive(Clone, Debug, PartialEq)]
pub struct StepOutput<S> {
    pub field: Vec<S>,
    pub min_tvd_residual: f64,
}

/// Context of a step that does not change between steps.
#[derive(Clone, Copy, Debug)]
pub struct StepContext<'a, L> {
    pub law: &'a L,
    pub spec: &'a SchemeSpec,
    pub grid: Grid1D,
    pub bc: BoundaryCondition,
    pub exec: Execution,
}

fn fill_all<L: ConservationLaw>(
    ctx: &StepContext<'_, L>,
    padded: &[L::State],
    ratio: f64,
    k: usize,
    plus: &mut [L::State],
    minus: &mut [L::State],
) -> Result<f64> {
    type Chunks<'s, S> = (usize, (&'s mut [S], &'s mut [S]));
    let fill = |scratch: &mut Vec<f64>, (g, (p, m)): Chunks<'_, L::State>| {
        ctx.law
            .fill_interface(ctx.spec, &padded[g], &padded[g + 1], ratio, k, p, m, scratch)
    };
    #[cfg(feature = "parallel")]
    if ctx.exec.is_parallel() {
        use rayon::prelude::*;
        return plus
            .par_chunks_mut(k)
            .zip(minus.par_chunks_mut(k))
            .enumerate()
            .map_init(Vec::new, fill)
            .try_reduce(|| f64::INFINITY, |a, b| Ok(a.min(b)));
    }
    let mut scratch = Vec::new();
    let mut min = f64::INFINITY;
    for item in plus.chunks_mut(k).zip(minus.chunks_mut(k)).enumerate() {
        min = min.min(fill(&mut scratch, item)?);
    }
    Ok(min)
}

fn gather<S: Conserved>(
    exec: Execution,
    padded: &[S],
    plus: &[S],
    minus: &[S],
    ratio: f64,
    k: usize,
    out: &mut [S],
) {
    // Interface g sits between padded cells g and g + 1; cell j is padded cell
    // j + k, with left interface j + k - 1 and right interface j + k.
    let update = |(j, u): (usize, &mut S)| {
        let mut acc = S::default();
        for i in 0..k {
            acc = acc + plus[(j + k - 1 - i) * k + i];
            acc = acc + minus[(j + k + i) * k + i];
        }
        *u = padded[j + k] - acc * ratio;
    };
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        out.par_iter_mut().enumerate().for_each(update);
        return;
    }
    let _ = exec;
    out.iter_mut().enumerate().for_each(update);
}

/// One conservative update `U_j -= (Δt/Δx) Σ_i (𝒜^{i+}Δ_{j-1/2-i} + 𝒜^{i-}Δ_{j+1/2+i})`.
/// The CFL condition is checked before any interface is evaluated.
pub fn step<L: ConservationLaw>(
    ctx: &StepContext<'_, L>,
    field: &[L::State],
    dt: f64,
    k: usize,
) -> Result<StepOutput<L::State>> {
    let n = ctx.grid.ncells;
    if field.len() != n {
        return Err(LtsError::InvalidParameter(format!(
            "field has {} cells, grid has {n}",
            field.len()
        )));
    }
    if k == 0 || n < 2 * k + 1 {
        return Err(LtsError::InvalidParameter(format!(
            "stencil half-width {k} needs at least {} cells, grid has {n}",
            2 * k + 1
        )));
    }
    if !(dt.is_finite() && dt > 0.0) {
        return Err(LtsError::InvalidParameter(format!("dt must be positive, got {dt}")));
    }
    ctx.spec.validate()?;
    let ratio = dt / ctx.grid.dx();
    let reach = ratio * ctx.law.max_speed(field, ctx.bc)?;
    if reach > k as f64 * (1.0 + CFL_SLACK) {
        return Err(LtsError::Cfl { courant: reach, k });
    }

    let padded = ctx.bc.pad(field, k);
    let interfaces = padded.len() - 1;
    let mut plus = vec![L::State::default(); interfaces * k];
    let mut minus = vec![L::State::default(); interfaces * k];
    let min_tvd_residual = fill_all(ctx, &padded, ratio, k, &mut plus, &mut minus)?;
    let mut out = vec![L::State::default(); n];
    gather(ctx.exec, &padded, &plus, &minus, ratio, k, &mut out);
    Ok(StepOutput {
        field: out,
        min_tvd_residual,
    })
}

/// `Σ_j |u_{j+1} - u_j|`.
pub fn total_variation(field: &[f64]) -> f64 {
    field.windows(2).map(|w| (w[1] - w[0]).abs()).sum()
}

/// Total variation of each component.
pub fn total_variation_components<S: Conserved>(field: &[S]) -> Vec<f64> {
    (0..S::NCOMP)
        .map(|c| field.windows(2).map(|w| (w[1].component(c) - w[0].component(c)).abs()).sum())
        .collect()
}

/// Cell sum of each component.
pub fn cell_sums<S: Conserved>(field: &[S]) -> Vec<f64> {
    (0..S::NCOMP)
        .map(|c| field.iter().map(|s| s.component(c)).sum())
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepRecord {
    pub n: usize,
    /// Time at the end of the step.
    pub t: f64,
    pub dt: f64,
    pub courant: f64,
    pub k: usize,
}

/// Per-step history of a run. Every vector has one entry per completed step.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Diagnostics {
    pub components: Vec<String>,
    pub initial_tv: Vec<f64>,
    pub initial_mass: Vec<f64>,
    pub tv_history: Vec<Vec<f64>>,
    pub tvd_residuals: Vec<f64>,
    pub mass_history: Vec<Vec<f64>>,
    pub step_log: Vec<StepRecord>,
}

impl Diagnostics {
    fn new<S: Conserved>(names: &[&str], initial: &[S]) -> Self {
        Self {
            components: names.iter().map(|s| s.to_string()).collect(),
            initial_tv: total_variation_components(initial),
            initial_mass: cell_sums(initial),
            ..Self::default()
        }
    }

    fn record<S: Conserved>(&mut self, step: StepRecord, field: &[S], residual: f64) {
        self.tv_history.push(total_variation_components(field));
        self.mass_history.push(cell_sums(field));
        self.tvd_residuals.push(residual);
        self.step_log.push(step);
    }

    pub fn steps(&self) -> usize {
        self.step_log.len()
    }

    pub fn min_tvd_residual(&self) -> f64 {
        self.tvd_residuals.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Largest single-step increase of the total variation of component `c`
    /// (negative when it decreased on every step).
    pub fn max_tv_increase(&self, c: usize) -> f64 {
        let mut last = self.initial_tv[c];
        let mut worst = f64::NEG_INFINITY;
        for tv in &self.tv_history {
            worst = worst.max(tv[c] - last);
            last = tv[c];
        }
        worst
    }

    /// Largest relative deviation of the cell sum of component `c` from its
    /// initial value.
    pub fn max_mass_drift(&self, c: usize) -> f64 {
        let m0 = self.initial_mass[c];
        let scale = m0.abs().max(f64::MIN_POSITIVE);
        self.mass_history
            .iter()
            .map(|m| (m[c] - m0).abs() / scale)
            .fold(0.0, f64::max)
    }

    /// One row per step: `n,t,dt,courant,k,tv_*,min_tvd_residual,mass_*`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,t,dt,courant,k");
        for name in &self.components {
            out.push_str(&format!(",tv_{name}"));
        }
        out.push_str(",min_tvd_residual");
        for name in &self.components {
            out.push_str(&format!(",mass_{name}"));
        }
        out.push('\n');
        for (i, s) in self.step_log.iter().enumerate() {
            out.push_str(&format!("{},{},{},{},{}", s.n, s.t, s.dt, s.courant, s.k));
            for tv in &self.tv_history[i] {
                out.push_str(&format!(",{tv}"));
            }
            out.push_str(&format!(",{}", self.tvd_residuals[i]));
            for m in &self.mass_history[i] {
                out.push_str(&format!(",{m}"));
            }
            out.push('\n');
        }
        out
    }
}

/// Everything a time loop needs.
#[derive(Clone, Debug)]
pub struct RunConfig<L: ConservationLaw> {
    pub law: L,
    pub spec: SchemeSpec,
    pub grid: Grid1D,
    pub bc: BoundaryCondition,
    pub initial: Vec<L::State>,
    pub courant: f64,
    pub t_end: f64,
    pub exec: Execution,
    /// Stop after this many steps even if `t_end` is not reached.
    pub max_steps: Option<usize>,
}

impl<L: ConservationLaw> RunConfig<L> {
    pub fn new(law: L, spec: SchemeSpec, grid: Grid1D, initial: Vec<L::State>, courant: f64, t_end: f64) -> Self {
        Self {
            law,
            spec,
            grid,
            bc: BoundaryCondition::ZeroGradient,
            initial,
            courant,
            t_end,
            exec: Execution::default(),
            max_steps: None,
        }
    }

    pub fn with_bc(self, bc: BoundaryCondition) -> Self {
        Self { bc, ..self }
    }

    pub fn with_exec(self, exec: Execution) -> Self {
        Self { exec, ..self }
    }

    pub fn with_max_steps(self, max_steps: usize) -> Self {
        Self {
            max_steps: Some(max_steps),
            ..self
        }
    }
}

/// Final field and history of a run.
#[derive(Clone, Debug)]
pub struct RunOutput<S> {
    pub field: Vec<S>,
    pub time: f64,
    pub diagnostics: Diagnostics,
}

/// Time loop from `t = 0` to `t_end`; the last step lands exactly on `t_end`.
pub fn run<L: ConservationLaw>(config: &RunConfig<L>) -> Result<RunOutput<L::State>> {
    if !(config.t_end.is_finite() && config.t_end > 0.0) {
        return Err(LtsError::InvalidParameter(format!("t_end must be positive, got {}", config.t_end)));
    }
    if !(config.courant.is_finite() && config.courant > 0.0) {
        return Err(LtsError::InvalidParameter(format!(
            "Courant number must be positive, got {}",
            config.courant
        )));
    }
    if config.initial.len() != config.grid.ncells {
        return Err(LtsError::InvalidParameter(format!(
            "initial field has {} cells, grid has {}",
            config.initial.len(),
            config.grid.ncells
        )));
    }
    config.spec.validate()?;

    let ctx = StepContext {
        law: &config.law,
        spec: &config.spec,
        grid: config.grid,
        bc: config.bc,
        exec: config.exec,
    };
    let mut rng = Xorshift64Star::new(config.spec.seed);
    let mut field = config.initial.clone();
    let mut diagnostics = Diagnostics::new(config.law.component_names(), &field);
    let dx = config.grid.dx();
    let mut t = 0.0;
    let mut n = 0;
    while t < config.t_end && config.max_steps.is_none_or(|m| n < m) {
        let remaining = config.t_end - t;
        let speed = config.law.max_speed(&field, config.bc)?;
        let ts = if speed > 0.0 {
            select_timestep(&config.spec, config.courant, speed, dx, remaining, &mut rng)?
        } else {
            TimeStep {
                dt: remaining,
                courant: 0.0,
                k: 1,
            }
        };
        let out = step(&ctx, &field, ts.dt, ts.k)?;
        if let Some(cell) = out.field.iter().position(|s| !s.is_finite()) {
            return Err(LtsError::NonFiniteState { step: n, cell });
        }
        field = out.field;
        #[allow(clippy::float_cmp)]
        let landed = ts.dt == remaining;
        t = if landed { config.t_end } else { t + ts.dt };
        n += 1;
        diagnostics.record(
            StepRecord {
                n,
                t,
                dt: ts.dt,
                courant: ts.courant,
                k: ts.k,
            },
            &field,
            out.min_tvd_residual,
        );
    }
    Ok(RunOutput {
        field,
        time: t,
        diagnostics,
    })
}
