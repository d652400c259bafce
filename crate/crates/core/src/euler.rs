//! 1D Euler equations of gas dynamics for an ideal gas.
//!
//! Systems are handled field by field: the Roe linearisation at an interface
//! decomposes `ΔU` into three characteristic waves and each eigenvalue is split
//! with the scalar coefficients of the chosen scheme at `C = (Δt/Δx) λ`.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{LtsError, Result};
use crate::schemes::{enforce_cfl, InterfaceFluctuations, SchemeKind, SchemeSpec};

/// Conservative state `(ρ, ρu, E)`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct EulerState {
    pub rho: f64,
    pub mom: f64,
    pub ene: f64,
}

/// Primitive state `(ρ, u, p)`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Primitive {
    pub rho: f64,
    pub u: f64,
    pub p: f64,
}

impl Primitive {
    pub fn new(rho: f64, u: f64, p: f64) -> Self {
        Self { rho, u, p }
    }
}

impl EulerState {
    pub fn new(rho: f64, mom: f64, ene: f64) -> Self {
        Self { rho, mom, ene }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.rho, self.mom, self.ene]
    }

    pub fn norm(self) -> f64 {
        (self.rho * self.rho + self.mom * self.mom + self.ene * self.ene).sqrt()
    }

    pub fn velocity(self) -> f64 {
        self.mom / self.rho
    }

    fn internal_energy(self) -> f64 {
        self.ene - 0.5 * self.mom * self.mom / self.rho
    }
}

impl Add for EulerState {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.rho + o.rho, self.mom + o.mom, self.ene + o.ene)
    }
}

impl Sub for EulerState {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.rho - o.rho, self.mom - o.mom, self.ene - o.ene)
    }
}

impl Mul<f64> for EulerState {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self::new(self.rho * s, self.mom * s, self.ene * s)
    }
}

impl Neg for EulerState {
    type Output = Self;
    fn neg(self) -> Self {
        self * -1.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GasModel {
    pub gamma: f64,
}

impl Default for GasModel {
    fn default() -> Self {
        Self { gamma: 1.4 }
    }
}

impl GasModel {
    pub fn new(gamma: f64) -> Result<Self> {
        if !(gamma.is_finite() && gamma > 1.0) {
            return Err(LtsError::InvalidParameter(format!("gamma = {gamma} must exceed 1")));
        }
        Ok(Self { gamma })
    }

    pub fn pressure(&self, s: &EulerState) -> f64 {
        (self.gamma - 1.0) * s.internal_energy()
    }

    pub fn sound_speed(&self, s: &EulerState) -> f64 {
        (self.gamma * self.pressure(s) / s.rho).sqrt()
    }

    pub fn to_conservative(&self, w: &Primitive) -> EulerState {
        EulerState::new(w.rho, w.rho * w.u, w.p / (self.gamma - 1.0) + 0.5 * w.rho * w.u * w.u)
    }

    pub fn to_primitive(&self, s: &EulerState) -> Primitive {
        Primitive::new(s.rho, s.velocity(), self.pressure(s))
    }

    pub fn flux(&self, s: &EulerState) -> EulerState {
        let u = s.velocity();
        let p = self.pressure(s);
        EulerState::new(s.mom, s.mom * u + p, (s.ene + p) * u)
    }

    /// Largest characteristic speed `|u| + a` of a state.
    pub fn max_speed(&self, s: &EulerState) -> f64 {
        s.velocity().abs() + self.sound_speed(s)
    }

    pub fn check_physical(&self, s: &EulerState) -> Result<()> {
        let finite = s.rho.is_finite() && s.mom.is_finite() && s.ene.is_finite();
        if !finite || s.rho <= 0.0 || s.internal_energy() <= 0.0 {
            return Err(LtsError::Unphysical(format!(
                "rho = {}, internal energy = {}",
                s.rho,
                s.internal_energy()
            )));
        }
        Ok(())
    }
}

/// Roe eigen-decomposition of one interface jump.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RoeLinearization {
    /// `ũ - ã, ũ, ũ + ã`.
    pub lambda: [f64; 3],
    pub rvec: [EulerState; 3],
    /// Coordinates of `U_R - U_L` in the eigenbasis.
    pub alpha: [f64; 3],
}

impl RoeLinearization {
    /// `Σ α_m r_m`.
    pub fn jump(&self) -> EulerState {
        (0..3).fold(EulerState::default(), |acc, m| acc + self.rvec[m] * self.alpha[m])
    }

    /// `Σ λ_m α_m r_m`, equal to `f(U_R) - f(U_L)` by the Roe property.
    pub fn flux_jump(&self) -> EulerState {
        (0..3).fold(EulerState::default(), |acc, m| {
            acc + self.rvec[m] * (self.lambda[m] * self.alpha[m])
        })
    }

    pub fn max_abs_eigenvalue(&self) -> f64 {
        self.lambda.iter().fold(0.0, |m, l| m.max(l.abs()))
    }
}

/// Roe-averaged eigenstructure between two states.
pub fn roe_linearize(left: &EulerState, right: &EulerState, gas: &GasModel) -> Result<RoeLinearization> {
    gas.check_physical(left)?;
    gas.check_physical(right)?;
    let (sl, sr) = (left.rho.sqrt(), right.rho.sqrt());
    let enthalpy = |s: &EulerState| (s.ene + gas.pressure(s)) / s.rho;
    let u = (sl * left.velocity() + sr * right.velocity()) / (sl + sr);
    let h = (sl * enthalpy(left) + sr * enthalpy(right)) / (sl + sr);
    let a2 = (gas.gamma - 1.0) * (h - 0.5 * u * u);
    if a2.is_nan() || a2 <= 0.0 {
        return Err(LtsError::RoeAverage(a2));
    }
    let a = a2.sqrt();

    let d = *right - *left;
    let alpha2 = (gas.gamma - 1.0) / a2 * (d.rho * (h - u * u) + u * d.mom - d.ene);
    let alpha1 = (d.rho * (u + a) - d.mom - a * alpha2) / (2.0 * a);
    let alpha3 = d.rho - alpha1 - alpha2;

    Ok(RoeLinearization {
        lambda: [u - a, u, u + a],
        rvec: [
            EulerState::new(1.0, u - a, h - u * a),
            EulerState::new(1.0, u, 0.5 * u * u),
            EulerState::new(1.0, u + a, h + u * a),
        ],
        alpha: [alpha1, alpha2, alpha3],
    })
}

/// Closed-form LTS-Roe split of one eigenvalue.
fn roe_split(lambda: f64, ratio: f64, k: usize, plus: &mut [f64], minus: &mut [f64]) {
    let h = 1.0 / ratio;
    for i in 0..k {
        let shift = i as f64 * h;
        plus[i] = (lambda - shift).min(h).max(0.0);
        minus[i] = (lambda + shift).max(-h).min(0.0);
    }
}

fn check_split_args(spec: &SchemeSpec, lambda: f64, ratio: f64, k: usize) -> Result<f64> {
    if spec.kind == SchemeKind::Godunov {
        return Err(LtsError::Unsupported("LTS-Godunov for systems".into()));
    }
    if k == 0 {
        return Err(LtsError::InvalidParameter("stencil half-width k must be >= 1".into()));
    }
    if !(ratio.is_finite() && ratio > 0.0) {
        return Err(LtsError::InvalidParameter(format!("dt/dx must be positive, got {ratio}")));
    }
    spec.validate()?;
    enforce_cfl(ratio * lambda, k)
}

/// Writes `λ^{i±}`, `i = 0..k`, into `plus`/`minus`.
pub(crate) fn fill_split(
    spec: &SchemeSpec,
    lambda: f64,
    ratio: f64,
    k: usize,
    plus: &mut [f64],
    minus: &mut [f64],
) -> Result<()> {
    let c = check_split_args(spec, lambda, ratio, k)?;
    if spec.kind == SchemeKind::Roe {
        roe_split(c / ratio, ratio, k, plus, minus);
    } else {
        spec.courant_scheme(spec.beta)?.fill_fluctuations(c, ratio, k, plus, minus);
    }
    Ok(())
}

/// Split one Roe eigenvalue into `λ^{i+}`, `λ^{i-}` (`i = 0..k`).
pub fn split_eigenvalue(spec: &SchemeSpec, lambda: f64, ratio: f64, k: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let mut plus = vec![0.0; k];
    let mut minus = vec![0.0; k];
    fill_split(spec, lambda, ratio, k, &mut plus, &mut minus)?;
    Ok((plus, minus))
}

/// Writes the vector products `Σ_m λ_m^{i±} α_m r_m` into `plus`/`minus`.
#[allow(clippy::too_many_arguments)]
pub(crate) fn fill_system(
    spec: &SchemeSpec,
    lin: &RoeLinearization,
    ratio: f64,
    k: usize,
    plus: &mut [EulerState],
    minus: &mut [EulerState],
    scratch_plus: &mut [f64],
    scratch_minus: &mut [f64],
) -> Result<()> {
    plus.fill(EulerState::default());
    minus.fill(EulerState::default());
    for m in 0..3 {
        fill_split(spec, lin.lambda[m], ratio, k, scratch_plus, scratch_minus)?;
        let wave = lin.rvec[m] * lin.alpha[m];
        for i in 0..k {
            plus[i] = plus[i] + wave * scratch_plus[i];
            minus[i] = minus[i] + wave * scratch_minus[i];
        }
    }
    Ok(())
}

/// Field-by-field fluctuation products of one Euler interface.
pub fn system_fluctuations(
    spec: &SchemeSpec,
    lin: &RoeLinearization,
    ratio: f64,
    k: usize,
) -> Result<InterfaceFluctuations<EulerState>> {
    let mut plus = vec![EulerState::default(); k];
    let mut minus = vec![EulerState::default(); k];
    let mut sp = vec![0.0; k];
    let mut sm = vec![0.0; k];
    fill_system(spec, lin, ratio, k, &mut plus, &mut minus, &mut sp, &mut sm)?;
    Ok(InterfaceFluctuations { plus, minus })
}

/// One of the two nonlinear waves of the exact Riemann solution.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Wave {
    Shock { speed: f64 },
    Rarefaction { head: f64, tail: f64 },
}

/// Exact self-similar solution of a Riemann problem.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RiemannSolution {
    pub left: Primitive,
    pub right: Primitive,
    pub gamma: f64,
    pub p_star: f64,
    pub u_star: f64,
    pub rho_star_left: f64,
    pub rho_star_right: f64,
    pub left_wave: Wave,
    pub right_wave: Wave,
}

pub const RIEMANN_TOL: f64 = 1e-12;
const MAX_NEWTON: usize = 100;
const MAX_BISECTION: usize = 400;

/// Pressure function of one side and its derivative.
fn side_function(p: f64, w: &Primitive, gamma: f64) -> (f64, f64) {
    let a = (gamma * w.p / w.rho).sqrt();
    if p > w.p {
        let big_a = 2.0 / ((gamma + 1.0) * w.rho);
        let big_b = (gamma - 1.0) / (gamma + 1.0) * w.p;
        let root = (big_a / (p + big_b)).sqrt();
        let f = (p - w.p) * root;
        let df = root * (1.0 - 0.5 * (p - w.p) / (p + big_b));
        (f, df)
    } else {
        let e = (gamma - 1.0) / (2.0 * gamma);
        let ratio = p / w.p;
        let f = 2.0 * a / (gamma - 1.0) * (ratio.powf(e) - 1.0);
        let df = ratio.powf(-(gamma + 1.0) / (2.0 * gamma)) / (w.rho * a);
        (f, df)
    }
}

fn validate_primitive(w: &Primitive) -> Result<()> {
    if !(w.rho.is_finite() && w.u.is_finite() && w.p.is_finite()) || w.rho <= 0.0 || w.p <= 0.0 {
        return Err(LtsError::Unphysical(format!("rho = {}, p = {}", w.rho, w.p)));
    }
    Ok(())
}

impl RiemannSolution {
    pub fn solve(left: Primitive, right: Primitive, gas: &GasModel) -> Result<Self> {
        validate_primitive(&left)?;
        validate_primitive(&right)?;
        let g = gas.gamma;
        let al = (g * left.p / left.rho).sqrt();
        let ar = (g * right.p / right.rho).sqrt();
        let du = right.u - left.u;
        if 2.0 / (g - 1.0) * (al + ar) <= du {
            return Err(LtsError::Vacuum);
        }
        let pressure_fn = |p: f64| {
            let (fl, dl) = side_function(p, &left, g);
            let (fr, dr) = side_function(p, &right, g);
            (fl + fr + du, dl + dr)
        };

        // Primitive-variable linearised guess.
        let guess = 0.5 * (left.p + right.p) - 0.125 * du * (left.rho + right.rho) * (al + ar);
        let mut p = guess.max(1e-8 * left.p.min(right.p));
        let mut converged = false;
        for _ in 0..MAX_NEWTON {
            let (f, df) = pressure_fn(p);
            let mut next = p - f / df;
            if next.is_nan() || next <= 0.0 {
                next = 0.5 * p;
            }
            let change = 2.0 * (next - p).abs() / (next + p);
            p = next;
            if change < RIEMANN_TOL {
                converged = true;
                break;
            }
        }
        if !converged {
            p = bisect_pressure(pressure_fn, left.p.max(right.p))?;
        }

        let (fl, _) = side_function(p, &left, g);
        let (fr, _) = side_function(p, &right, g);
        let u_star = 0.5 * (left.u + right.u) + 0.5 * (fr - fl);
        let gm = (g - 1.0) / (g + 1.0);

        let (rho_star_left, left_wave) = if p > left.p {
            let ratio = p / left.p;
            let rho = left.rho * (ratio + gm) / (gm * ratio + 1.0);
            let speed = left.u - al * ((g + 1.0) / (2.0 * g) * ratio + (g - 1.0) / (2.0 * g)).sqrt();
            (rho, Wave::Shock { speed })
        } else {
            let rho = left.rho * (p / left.p).powf(1.0 / g);
            let a_star = al * (p / left.p).powf((g - 1.0) / (2.0 * g));
            (
                rho,
                Wave::Rarefaction {
                    head: left.u - al,
                    tail: u_star - a_star,
                },
            )
        };
        let (rho_star_right, right_wave) = if p > right.p {
            let ratio = p / right.p;
            let rho = right.rho * (ratio + gm) / (gm * ratio + 1.0);
            let speed = right.u + ar * ((g + 1.0) / (2.0 * g) * ratio + (g - 1.0) / (2.0 * g)).sqrt();
            (rho, Wave::Shock { speed })
        } else {
            let rho = right.rho * (p / right.p).powf(1.0 / g);
            let a_star = ar * (p / right.p).powf((g - 1.0) / (2.0 * g));
            (
                rho,
                Wave::Rarefaction {
                    head: right.u + ar,
                    tail: u_star + a_star,
                },
            )
        };

        Ok(Self {
            left,
            right,
            gamma: g,
            p_star: p,
            u_star,
            rho_star_left,
            rho_star_right,
            left_wave,
            right_wave,
        })
    }

    /// Primitive state at similarity coordinate `ξ = x / t`.
    pub fn sample(&self, xi: f64) -> Primitive {
        let g = self.gamma;
        if xi <= self.u_star {
            let w = self.left;
            match self.left_wave {
                Wave::Shock { speed } => {
                    if xi < speed {
                        w
                    } else {
                        Primitive::new(self.rho_star_left, self.u_star, self.p_star)
                    }
                }
                Wave::Rarefaction { head, tail } => {
                    if xi < head {
                        w
                    } else if xi > tail {
                        Primitive::new(self.rho_star_left, self.u_star, self.p_star)
                    } else {
                        let a = (g * w.p / w.rho).sqrt();
                        let c = 2.0 / (g + 1.0) + (g - 1.0) / ((g + 1.0) * a) * (w.u - xi);
                        Primitive::new(
                            w.rho * c.powf(2.0 / (g - 1.0)),
                            2.0 / (g + 1.0) * (a + 0.5 * (g - 1.0) * w.u + xi),
                            w.p * c.powf(2.0 * g / (g - 1.0)),
                        )
                    }
                }
            }
        } else {
            let w = self.right;
            match self.right_wave {
                Wave::Shock { speed } => {
                    if xi > speed {
                        w
                    } else {
                        Primitive::new(self.rho_star_right, self.u_star, self.p_star)
                    }
                }
                Wave::Rarefaction { head, tail } => {
                    if xi > head {
                        w
                    } else if xi < tail {
                        Primitive::new(self.rho_star_right, self.u_star, self.p_star)
                    } else {
                        let a = (g * w.p / w.rho).sqrt();
                        let c = 2.0 / (g + 1.0) - (g - 1.0) / ((g + 1.0) * a) * (w.u - xi);
                        Primitive::new(
                            w.rho * c.powf(2.0 / (g - 1.0)),
                            2.0 / (g + 1.0) * (-a + 0.5 * (g - 1.0) * w.u + xi),
                            w.p * c.powf(2.0 * g / (g - 1.0)),
                        )
                    }
                }
            }
        }
    }
}

fn bisect_pressure(f: impl Fn(f64) -> (f64, f64), scale: f64) -> Result<f64> {
    // The pressure function is increasing in p.
    let mut lo = 0.0f64;
    let mut hi = scale.max(1e-300);
    let mut grow = 0;
    while f(hi).0 < 0.0 {
        hi *= 2.0;
        grow += 1;
        if grow > 200 {
            return Err(LtsError::NoConvergence(MAX_NEWTON + grow));
        }
    }
    for _ in 0..MAX_BISECTION {
        let mid = 0.5 * (lo + hi);
        if f(mid).0 < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= RIEMANN_TOL * hi {
            return Ok(0.5 * (lo + hi));
        }
    }
    Err(LtsError::NoConvergence(MAX_NEWTON + MAX_BISECTION))
}

/// Exact Riemann solution sampled at `ξ = x / t`.
pub fn exact_riemann(left: Primitive, right: Primitive, gas: &GasModel, xi: f64) -> Result<Primitive> {
    Ok(RiemannSolution::solve(left, right, gas)?.sample(xi))
}

/// Standard Sod shock-tube data, left and right of the diaphragm.
pub fn sod_states() -> (Primitive, Primitive) {
    (Primitive::new(1.0, 0.0, 1.0), Primitive::new(0.125, 0.0, 0.1))
}
