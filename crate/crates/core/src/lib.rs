//! Large-time-step (LTS) explicit TVD schemes for 1D hyperbolic conservation laws.
//!
//! The crate is organised bottom-up:
//!
//! - [`scalar_flux`]: scalar flux models and the interval-extremum oracle used by
//!   the Godunov solution formula.
//! - [`coefficients`]: the viscosity (`Q`) and flux-difference-splitting (`𝒜`)
//!   parametrisations of local `2k+1` point schemes, their exact inverse maps,
//!   the TVD inequalities and the modified-equation diffusion.
//! - [`schemes`]: coefficient generators for LTS-Roe, LTS-LxF, LTS-RoeLxF(β),
//!   LTS-Roe* and LTS-Godunov.
//! - [`euler`]: the 1D Euler system, Roe linearisation, field-by-field
//!   splitting and an exact Riemann solver.
//! - [`driver`]: grids, boundaries, time-step selection and the conservative
//!   update loop with diagnostics.
//! - [`cli`]: benchmark cases, configuration, output files and verification sweeps.
//!
//! Interface computations inside a step run on rayon when the `parallel`
//! feature is enabled (the default); see [`par::Execution`].

pub mod cli;
pub mod coefficients;
pub mod driver;
pub mod error;
pub mod euler;
pub mod par;
pub mod rng;
pub mod scalar_flux;
pub mod schemes;

pub use error::{LtsError, Result};
