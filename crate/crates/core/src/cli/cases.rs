//! Benchmark cases with their initial data and exact reference solutions.

use std::fmt;
use std::str::FromStr;

use crate::driver::BoundaryCondition;
use crate::error::{LtsError, Result};
use crate::euler::{sod_states, GasModel, Primitive, RiemannSolution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseName {
    BurgersSquare,
    BurgersTransonic,
    AdvectionShift,
    Sod,
}

impl CaseName {
    pub const ALL: [CaseName; 4] = [
        CaseName::BurgersSquare,
        CaseName::BurgersTransonic,
        CaseName::AdvectionShift,
        CaseName::Sod,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CaseName::BurgersSquare => "burgers-square",
            CaseName::BurgersTransonic => "burgers-transonic",
            CaseName::AdvectionShift => "advection-shift",
            CaseName::Sod => "sod",
        }
    }
}

impl fmt::Display for CaseName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CaseName {
    type Err = LtsError;

    fn from_str(s: &str) -> Result<Self> {
        CaseName::ALL
            .into_iter()
            .find(|c| c.name() == s.to_ascii_lowercase())
            .ok_or_else(|| LtsError::UnknownCase(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Problem {
    Burgers,
    Advection { speed: f64 },
    Euler(GasModel),
}

/// Defaults used when a run does not override them.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CaseDefaults {
    pub ncells: usize,
    pub courant: f64,
    pub t_end: f64,
    pub bc: BoundaryCondition,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CaseDefinition {
    pub name: CaseName,
    pub xlo: f64,
    pub xhi: f64,
    pub problem: Problem,
    pub defaults: CaseDefaults,
    sod: Option<RiemannSolution>,
}

const SOD_DIAPHRAGM: f64 = 0.5;

fn square_pulse(x: f64) -> f64 {
    if 0.3 < x && x < 0.7 {
        1.0
    } else {
        0.0
    }
}

fn transonic(x: f64) -> f64 {
    if 0.25 < x && x <= 0.5 {
        -1.0
    } else if 0.5 < x && x < 0.75 {
        1.0
    } else {
        0.0
    }
}

/// Entropy solution of Burgers' equation from the square pulse.
fn square_pulse_exact(x: f64, t: f64) -> f64 {
    if t <= 0.0 {
        return square_pulse(x);
    }
    // Fan from x = 0.3 followed by a plateau and a shock of speed 1/2; the fan
    // overtakes the shock at t = 0.8, after which the shock slows down.
    let fan_end = 0.3 + t;
    if t < 0.8 {
        let shock = 0.7 + 0.5 * t;
        if x <= 0.3 || x >= shock {
            0.0
        } else if x < fan_end {
            (x - 0.3) / t
        } else {
            1.0
        }
    } else {
        let shock = 0.3 + (0.8 * t).sqrt();
        if x <= 0.3 || x >= shock {
            0.0
        } else {
            (x - 0.3) / t
        }
    }
}

/// Entropy solution from the transonic data: shock, centred fan at x = 0.5, shock.
fn transonic_exact(x: f64, t: f64) -> f64 {
    if t <= 0.0 {
        return transonic(x);
    }
    let (left, right) = if t < 0.5 {
        (0.25 - 0.5 * t, 0.75 + 0.5 * t)
    } else {
        (0.5 - (0.5 * t).sqrt(), 0.5 + (0.5 * t).sqrt())
    };
    if x <= left || x >= right {
        0.0
    } else {
        ((x - 0.5) / t).clamp(-1.0, 1.0)
    }
}

impl CaseDefinition {
    pub fn is_scalar(&self) -> bool {
        !matches!(self.problem, Problem::Euler(_))
    }

    pub fn initial_scalar(&self, x: f64) -> f64 {
        match self.name {
            CaseName::BurgersSquare | CaseName::AdvectionShift => square_pulse(x),
            CaseName::BurgersTransonic => transonic(x),
            CaseName::Sod => self.initial_euler(x).rho,
        }
    }

    pub fn initial_euler(&self, x: f64) -> Primitive {
        let (l, r) = sod_states();
        if x < SOD_DIAPHRAGM {
            l
        } else {
            r
        }
    }

    /// Exact solution of a scalar case at `(x, t)`.
    pub fn reference_scalar(&self, x: f64, t: f64) -> Option<f64> {
        match self.problem {
            Problem::Burgers if self.name == CaseName::BurgersSquare => Some(square_pulse_exact(x, t)),
            Problem::Burgers => Some(transonic_exact(x, t)),
            Problem::Advection { speed } => {
                let width = self.xhi - self.xlo;
                let shifted = self.xlo + (x - speed * t - self.xlo).rem_euclid(width);
                Some(square_pulse(shifted))
            }
            Problem::Euler(_) => None,
        }
    }

    /// Exact solution of the Sod case at `(x, t)`.
    pub fn reference_euler(&self, x: f64, t: f64) -> Option<Primitive> {
        let sol = self.sod.as_ref()?;
        if t <= 0.0 {
            return Some(self.initial_euler(x));
        }
        Some(sol.sample((x - SOD_DIAPHRAGM) / t))
    }
}

pub fn build_case(name: CaseName) -> Result<CaseDefinition> {
    let burgers_defaults = CaseDefaults {
        ncells: 800,
        courant: 5.0,
        t_end: 0.2,
        bc: BoundaryCondition::ZeroGradient,
    };
    let (problem, defaults, sod) = match name {
        CaseName::BurgersSquare | CaseName::BurgersTransonic => (Problem::Burgers, burgers_defaults, None),
        CaseName::AdvectionShift => (
            Problem::Advection { speed: 1.0 },
            CaseDefaults {
                courant: 2.0,
                bc: BoundaryCondition::Periodic,
                ..burgers_defaults
            },
            None,
        ),
        CaseName::Sod => {
            let gas = GasModel::default();
            let (l, r) = sod_states();
            (
                Problem::Euler(gas),
                CaseDefaults {
                    ncells: 1800,
                    courant: 3.0,
                    t_end: 0.25,
                    bc: BoundaryCondition::ZeroGradient,
                },
                Some(RiemannSolution::solve(l, r, &gas)?),
            )
        }
    };
    Ok(CaseDefinition {
        name,
        xlo: 0.0,
        xhi: 1.0,
        problem,
        defaults,
        sod,
    })
}

/// Like [`build_case`] but from a case name string.
pub fn build_case_named(name: &str) -> Result<CaseDefinition> {
    build_case(name.parse()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::driver::{total_variation, Grid1D};

    #[test]
    fn names_round_trip() {
        for c in CaseName::ALL {
            assert_eq!(c.name().parse::<CaseName>().unwrap(), c);
        }
        assert!(matches!(build_case_named("riemann"), Err(LtsError::UnknownCase(_))));
    }

    #[test]
    fn square_reference_at_t02() {
        let case = build_case(CaseName::BurgersSquare).unwrap();
        let r = |x| case.reference_scalar(x, 0.2).unwrap();
        assert_eq!(r(0.2), 0.0);
        assert!((r(0.4) - 0.5).abs() < 1e-15);
        assert_eq!(r(0.5), 1.0);
        assert_eq!(r(0.79), 1.0);
        assert_eq!(r(0.81), 0.0);
        // Past the interaction time the shock follows x = 0.3 + sqrt(0.8 t).
        let late = |x| case.reference_scalar(x, 1.8).unwrap();
        assert!(late(1.49) > 0.6 && late(1.51) == 0.0);
    }

    #[test]
    fn transonic_initial_tv() {
        let case = build_case(CaseName::BurgersTransonic).unwrap();
        let grid = Grid1D::unit(800).unwrap();
        let u0 = grid.sample(|x| case.initial_scalar(x));
        assert_eq!(total_variation(&u0), 4.0);
        let r = |x| case.reference_scalar(x, 0.2).unwrap();
        assert_eq!(r(0.14), 0.0);
        assert_eq!(r(0.2), -1.0);
        assert!((r(0.6) - 0.5).abs() < 1e-15);
        assert_eq!(r(0.8), 1.0);
        assert_eq!(r(0.86), 0.0);
    }

    #[test]
    fn sod_reference_star_velocity() {
        let case = build_case(CaseName::Sod).unwrap();
        for t in [0.05, 0.25] {
            let w = case.reference_euler(0.5, t).unwrap();
            assert!((w.u - 0.92745).abs() < 1e-5);
        }
        assert_eq!(case.reference_euler(0.4, 0.0).unwrap().rho, 1.0);
        assert!(case.reference_scalar(0.5, 0.1).is_none());
    }

    #[test]
    fn advection_reference_wraps() {
        let case = build_case(CaseName::AdvectionShift).unwrap();
        assert_eq!(case.defaults.bc, BoundaryCondition::Periodic);
        assert_eq!(case.reference_scalar(0.95, 0.5).unwrap(), 1.0);
        assert_eq!(case.reference_scalar(0.1, 0.5).unwrap(), 1.0);
        assert_eq!(case.reference_scalar(0.5, 0.5).unwrap(), 0.0);
        assert_eq!(case.reference_scalar(0.5, 1.0).unwrap(), 1.0);
    }
}
