//! Per-interface coefficient generators.
//!
//! LTS-Roe, LTS-LxF, LTS-RoeLxF(β) and LTS-Roe* depend on an interface only
//! through its signed Courant number `C`, so they are evaluated by
//! [`courant_coefficients`]. LTS-Godunov needs the flux itself and is built
//! from the interval extremum of `f(u) - s u` in [`godunov_fluctuations`] and
//! [`godunov_viscosities`].

use std::fmt;
use std::str::FromStr;

use crate::coefficients::{fill_q_to_a, q_to_a, ViscositySet};
use crate::error::{ensure_finite, LtsError, Result};
use crate::scalar_flux::{courant_unchecked, Extremum, FluxModel};

/// Relative slack accepted on `|C| <= k` before an interface is rejected.
/// `C` is recomputed from `Δt` and can land a few ulps above an integer `k`;
/// such values are clamped onto `±k`.
pub const CFL_SLACK: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SchemeKind {
    Roe,
    LxF,
    RoeLxF,
    RoeStar,
    Godunov,
}

impl SchemeKind {
    pub const ALL: [SchemeKind; 5] = [
        SchemeKind::Roe,
        SchemeKind::LxF,
        SchemeKind::RoeLxF,
        SchemeKind::RoeStar,
        SchemeKind::Godunov,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SchemeKind::Roe => "roe",
            SchemeKind::LxF => "lxf",
            SchemeKind::RoeLxF => "roelxf",
            SchemeKind::RoeStar => "roestar",
            SchemeKind::Godunov => "godunov",
        }
    }
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SchemeKind {
    type Err = LtsError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "roe" => Ok(SchemeKind::Roe),
            "lxf" => Ok(SchemeKind::LxF),
            "roelxf" | "roe-lxf" => Ok(SchemeKind::RoeLxF),
            "roestar" | "roe*" | "roe-star" => Ok(SchemeKind::RoeStar),
            "godunov" => Ok(SchemeKind::Godunov),
            _ => Err(LtsError::UnknownScheme(s.to_string())),
        }
    }
}

/// How the driver picks the Courant number of each step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepMode {
    /// Every step uses the target Courant number.
    Fixed,
    /// Every step uses the target plus a uniform draw from `[-1/2, 1/2)`.
    Randomized,
}

impl FromStr for StepMode {
    type Err = LtsError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fixed" => Ok(StepMode::Fixed),
            "random" | "randomized" => Ok(StepMode::Randomized),
            _ => Err(LtsError::InvalidParameter(format!("unknown step mode `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SchemeSpec {
    pub kind: SchemeKind,
    /// Convex weight of LxF in LTS-RoeLxF(β).
    pub beta: f64,
    /// Width of Harten's fix in LTS-Roe*.
    pub delta: f64,
    pub seed: u64,
    pub step_mode: StepMode,
}

impl SchemeSpec {
    pub const DEFAULT_BETA: f64 = 0.2;
    pub const DEFAULT_DELTA: f64 = 0.5;

    /// Spec with default parameters; LTS-Roe* steps randomly, everything else
    /// uses fixed steps.
    pub fn new(kind: SchemeKind) -> Self {
        Self {
            kind,
            beta: Self::DEFAULT_BETA,
            delta: Self::DEFAULT_DELTA,
            seed: 0,
            step_mode: if kind == SchemeKind::RoeStar {
                StepMode::Randomized
            } else {
                StepMode::Fixed
            },
        }
    }

    pub fn roe() -> Self {
        Self::new(SchemeKind::Roe)
    }

    pub fn lxf() -> Self {
        Self::new(SchemeKind::LxF)
    }

    pub fn roe_lxf(beta: f64) -> Self {
        Self {
            beta,
            ..Self::new(SchemeKind::RoeLxF)
        }
    }

    pub fn roe_star(delta: f64, seed: u64) -> Self {
        Self {
            delta,
            seed,
            ..Self::new(SchemeKind::RoeStar)
        }
    }

    pub fn godunov() -> Self {
        Self::new(SchemeKind::Godunov)
    }

    pub fn with_step_mode(self, step_mode: StepMode) -> Self {
        Self { step_mode, ..self }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    pub fn is_randomized(&self) -> bool {
        self.step_mode == StepMode::Randomized
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.beta) {
            return Err(LtsError::InvalidParameter(format!("beta = {} outside [0, 1]", self.beta)));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(LtsError::InvalidParameter(format!("delta = {} outside (0, 1)", self.delta)));
        }
        Ok(())
    }

    pub(crate) fn courant_scheme(&self, beta: f64) -> Result<CourantScheme> {
        let family = match self.kind {
            SchemeKind::Roe => Family::Roe,
            SchemeKind::LxF => Family::LxF,
            SchemeKind::RoeLxF => Family::RoeLxF(beta),
            SchemeKind::RoeStar => Family::RoeStar(self.delta),
            SchemeKind::Godunov => {
                return Err(LtsError::Unsupported(
                    "Courant-number coefficients for LTS-Godunov (it needs the flux model)".into(),
                ))
            }
        };
        Ok(CourantScheme { family })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Family {
    Roe,
    LxF,
    RoeLxF(f64),
    RoeStar(f64),
}

/// A scheme whose coefficients are functions of `(C, k)` only. Entries with
/// index `i >= k` are zero.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct CourantScheme {
    family: Family,
}

fn roe_tail(c: f64, i: usize) -> f64 {
    (c - i as f64).max(0.0)
}

/// `Q^{i-} = (k-i)(C+k)/(2k)`. The smaller member of the `±` pair is
/// evaluated directly and the other as its complement, so the pair sums to
/// `k - i` exactly in floating point.
fn lxf_tail(c: f64, k: usize, i: usize) -> f64 {
    let kf = k as f64;
    let weight = (kf - i as f64) / (2.0 * kf);
    if c < 0.0 {
        weight * (c + kf)
    } else {
        (kf - i as f64) - weight * (kf - c)
    }
}

impl CourantScheme {
    pub(crate) fn q0(&self, c: f64, k: usize) -> f64 {
        match self.family {
            Family::Roe => c.abs(),
            Family::LxF => k as f64,
            Family::RoeLxF(beta) => beta * k as f64 + (1.0 - beta) * c.abs(),
            Family::RoeStar(delta) => {
                if c.abs() >= delta {
                    c.abs()
                } else {
                    (c * c + delta * delta) / (2.0 * delta)
                }
            }
        }
    }

    /// `Q^{i+}` at `C = c` equals `Q^{i-}` at `C = -c` for every family.
    pub(crate) fn q_plus(&self, c: f64, k: usize, i: usize) -> f64 {
        self.q_minus(-c, k, i)
    }

    pub(crate) fn q_minus(&self, c: f64, k: usize, i: usize) -> f64 {
        if i >= k {
            return 0.0;
        }
        match self.family {
            Family::Roe | Family::RoeStar(_) => roe_tail(c, i),
            Family::LxF => lxf_tail(c, k, i),
            Family::RoeLxF(beta) => beta * lxf_tail(c, k, i) + (1.0 - beta) * roe_tail(c, i),
        }
    }

    pub(crate) fn viscosities(&self, c: f64, k: usize) -> ViscositySet {
        ViscositySet {
            k,
            q0: self.q0(c, k),
            q_plus: (1..k).map(|i| self.q_plus(c, k, i)).collect(),
            q_minus: (1..k).map(|i| self.q_minus(c, k, i)).collect(),
            courant: c,
        }
    }

    /// Fluctuation coefficients `𝒜^{i±}` at Courant number `c`.
    pub(crate) fn fill_fluctuations(&self, c: f64, ratio: f64, k: usize, a_plus: &mut [f64], a_minus: &mut [f64]) {
        fill_q_to_a(
            k,
            c,
            ratio,
            self.q0(c, k),
            |i| self.q_plus(c, k, i),
            |i| self.q_minus(c, k, i),
            a_plus,
            a_minus,
        );
    }
}

/// Validates `|C| <= k` up to [`CFL_SLACK`] and clamps onto `[-k, k]`.
pub fn enforce_cfl(c: f64, k: usize) -> Result<f64> {
    let kf = k as f64;
    if !c.is_finite() || c.abs() > kf * (1.0 + CFL_SLACK) {
        return Err(LtsError::Cfl { courant: c, k });
    }
    Ok(c.clamp(-kf, kf))
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        Err(LtsError::InvalidParameter("stencil half-width k must be >= 1".into()))
    } else {
        Ok(())
    }
}

/// Viscosity coefficients of a Courant-number scheme at interface Courant `C`.
pub fn courant_coefficients(spec: &SchemeSpec, courant: f64, k: usize) -> Result<ViscositySet> {
    courant_coefficients_with_beta(spec, spec.beta, courant, k)
}

/// As [`courant_coefficients`] with an interface-specific `β` for LTS-RoeLxF.
pub fn courant_coefficients_with_beta(spec: &SchemeSpec, beta: f64, courant: f64, k: usize) -> Result<ViscositySet> {
    check_k(k)?;
    SchemeSpec { beta, ..*spec }.validate()?;
    let c = enforce_cfl(courant, k)?;
    Ok(spec.courant_scheme(beta)?.viscosities(c, k))
}

/// State-valued fluctuation products `𝒜^{i±}Δ` of one interface.
#[derive(Clone, Debug, PartialEq)]
pub struct InterfaceFluctuations<S> {
    pub plus: Vec<S>,
    pub minus: Vec<S>,
}

impl<S> InterfaceFluctuations<S>
where
    S: Copy + Default + std::ops::Add<Output = S>,
{
    pub fn k(&self) -> usize {
        self.plus.len()
    }

    /// Sum of every product; equals `f(U_R) - f(U_L)` for a consistent split.
    pub fn total(&self) -> S {
        self.plus
            .iter()
            .chain(&self.minus)
            .fold(S::default(), |acc, &p| acc + p)
    }
}

/// LTS-Godunov fluctuation products, written into `plus`/`minus` (length `k`).
pub(crate) fn fill_godunov<M: FluxModel + ?Sized>(
    model: &M,
    u_left: f64,
    u_right: f64,
    ratio: f64,
    plus: &mut [f64],
    minus: &mut [f64],
) {
    #[allow(clippy::float_cmp)]
    if u_left == u_right {
        plus.fill(0.0);
        minus.fill(0.0);
        return;
    }
    let h = 1.0 / ratio;
    let mode = Extremum::for_pair(u_left, u_right);
    let (lo, hi) = (u_left.min(u_right), u_left.max(u_right));
    // m(s) = M(f - s u)
    let m = |s: f64| model.extremum(s, lo, hi, mode);
    let mut below = m(0.0);
    for (i, p) in plus.iter_mut().enumerate() {
        let above = m((i + 1) as f64 * h);
        *p = above - below + h * u_right;
        below = above;
    }
    let mut upper = m(0.0);
    for (i, q) in minus.iter_mut().enumerate() {
        let lower = m(-((i + 1) as f64) * h);
        *q = upper - lower + h * u_left;
        upper = lower;
    }
}

fn check_godunov_stencil<M: FluxModel + ?Sized>(model: &M, u_left: f64, u_right: f64, ratio: f64, k: usize) -> Result<()> {
    check_k(k)?;
    ensure_finite(u_left, "u_L")?;
    ensure_finite(u_right, "u_R")?;
    if !(ratio.is_finite() && ratio > 0.0) {
        return Err(LtsError::InvalidParameter(format!("dt/dx must be positive, got {ratio}")));
    }
    let reach = ratio * model.wavespeed_bound(u_left.min(u_right), u_left.max(u_right));
    if reach > k as f64 * (1.0 + CFL_SLACK) {
        return Err(LtsError::Cfl { courant: reach, k });
    }
    Ok(())
}

/// LTS-Godunov fluctuation products of one interface. Requires
/// `k >= (Δt/Δx) max|f'|` over the interface hull, so that every product with
/// index `>= k` vanishes.
pub fn godunov_fluctuations<M: FluxModel + ?Sized>(
    model: &M,
    u_left: f64,
    u_right: f64,
    ratio: f64,
    k: usize,
) -> Result<InterfaceFluctuations<f64>> {
    check_godunov_stencil(model, u_left, u_right, ratio, k)?;
    let mut plus = vec![0.0; k];
    let mut minus = vec![0.0; k];
    fill_godunov(model, u_left, u_right, ratio, &mut plus, &mut minus);
    Ok(InterfaceFluctuations { plus, minus })
}

/// LTS-Godunov in viscosity form. Undefined for `u_L = u_R`.
pub fn godunov_viscosities<M: FluxModel + ?Sized>(
    model: &M,
    u_left: f64,
    u_right: f64,
    ratio: f64,
    k: usize,
) -> Result<ViscositySet> {
    check_godunov_stencil(model, u_left, u_right, ratio, k)?;
    #[allow(clippy::float_cmp)]
    if u_left == u_right {
        return Err(LtsError::DegenerateInterface(u_left));
    }
    let mode = Extremum::for_pair(u_left, u_right);
    let (lo, hi) = (u_left.min(u_right), u_left.max(u_right));
    let du = u_right - u_left;
    let h = 1.0 / ratio;
    // M((Δt/Δx) f + σ i u) = (Δt/Δx) M(f - s u) with s = -σ i Δx/Δt
    let m = |s: f64| ratio * model.extremum(s, lo, hi, mode);
    let (f_left, f_right) = (model.eval(u_left), model.eval(u_right));
    let q0 = (ratio * (f_left + f_right) - 2.0 * m(0.0)) / du;
    let q_plus = (1..k)
        .map(|i| {
            let i = i as f64;
            (ratio * f_left + i * u_left - m(-i * h)) / du
        })
        .collect();
    let q_minus = (1..k)
        .map(|i| {
            let i = i as f64;
            (ratio * f_right - i * u_right - m(i * h)) / du
        })
        .collect();
    Ok(ViscositySet {
        k,
        q0,
        q_plus,
        q_minus,
        courant: courant_unchecked(model, u_left, u_right, ratio),
    })
}

/// Fluctuation products of any scheme at one scalar interface.
pub fn interface_fluctuations<M: FluxModel + ?Sized>(
    spec: &SchemeSpec,
    model: &M,
    u_left: f64,
    u_right: f64,
    ratio: f64,
    k: usize,
) -> Result<InterfaceFluctuations<f64>> {
    if spec.kind == SchemeKind::Godunov {
        return godunov_fluctuations(model, u_left, u_right, ratio, k);
    }
    let c = crate::scalar_flux::local_courant(model, u_left, u_right, ratio)?;
    let v = courant_coefficients(spec, c, k)?;
    let a = q_to_a(&v, ratio);
    let du = u_right - u_left;
    Ok(InterfaceFluctuations {
        plus: a.a_plus.iter().map(|&a| a * du).collect(),
        minus: a.a_minus.iter().map(|&a| a * du).collect(),
    })
}
