//! Verification sweeps over the coefficient sets of a scheme.
//!
//! Courant-number schemes are sampled on a uniform grid of `C ∈ [-k, k]`;
//! LTS-Godunov on a grid of Burgers pairs `(u_L, u_R) ∈ [-k, k]²` at
//! `Δt/Δx = 1`, which keeps every wave inside the stencil.

use std::fmt;

use crate::coefficients::{a_to_q, check_bounds, check_tvd, modified_diffusion, q_to_a, ViscositySet, DEFAULT_TOL};
use crate::error::Result;
use crate::par::{map_collect, Execution};
use crate::scalar_flux::Burgers;
use crate::schemes::{courant_coefficients, courant_coefficients_with_beta, godunov_viscosities, SchemeKind, SchemeSpec};

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    pub schemes: Vec<SchemeSpec>,
    pub k: usize,
    pub samples: usize,
    pub tol: f64,
    pub exec: Execution,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            schemes: SchemeKind::ALL.iter().map(|&k| SchemeSpec::new(k)).collect(),
            k: 3,
            samples: 601,
            tol: DEFAULT_TOL,
            exec: Execution::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyRow {
    pub property: &'static str,
    pub scheme: SchemeKind,
    pub samples: usize,
    /// Smallest residual or margin, or largest error, depending on the property.
    pub worst: f64,
    /// Sampled values landing exactly on the boundary (`tvd` only).
    pub exact_zeros: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct VerifyReport {
    pub rows: Vec<VerifyRow>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("property,scheme,samples,worst,exact_zeros,status\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{:e},{},{}\n",
                r.property,
                r.scheme,
                r.samples,
                r.worst,
                r.exact_zeros,
                if r.pass { "pass" } else { "fail" }
            ));
        }
        out
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_csv())
    }
}

/// Per-sample measurements.
struct Sample {
    tvd_min: f64,
    tvd_zeros: usize,
    bound_margin: f64,
    round_trip: f64,
    diffusion_error: Option<f64>,
}

fn relative_error(a: &ViscositySet, b: &ViscositySet) -> f64 {
    a.entries()
        .zip(b.entries())
        .map(|(x, y)| (x.1 - y.1).abs() / x.1.abs().max(1.0))
        .fold((a.courant - b.courant).abs() / a.courant.abs().max(1.0), f64::max)
}

fn measure(v: &ViscositySet, kind: SchemeKind, tol: f64) -> Result<Sample> {
    let tvd = check_tvd(v, tol);
    let bounds = check_bounds(v, tol)?;
    let back = a_to_q(&q_to_a(v, 1.0));
    let c = v.courant;
    let k = v.k as f64;
    let d = modified_diffusion(v, c);
    let diffusion_error = match kind {
        SchemeKind::Roe => {
            let up = c.abs().ceil();
            Some((d - (up - c.abs()) * (1.0 + c.abs() - up)).abs())
        }
        SchemeKind::LxF => Some((d - (k * k - c * c)).abs()),
        _ => None,
    };
    Ok(Sample {
        tvd_min: tvd.min_residual(),
        tvd_zeros: tvd.residuals.iter().filter(|(_, r)| *r == 0.0).count(),
        bound_margin: bounds.min_margin(),
        round_trip: relative_error(v, &back),
        diffusion_error,
    })
}

fn sweep_sets(spec: &SchemeSpec, config: &VerifyConfig) -> Result<Vec<ViscositySet>> {
    let k = config.k;
    let kf = k as f64;
    let n = config.samples.max(2);
    if spec.kind == SchemeKind::Godunov {
        let side = (n as f64).sqrt().ceil() as usize;
        let grid: Vec<f64> = (0..side).map(|i| -kf + 2.0 * kf * i as f64 / (side - 1) as f64).collect();
        let pairs: Vec<(f64, f64)> = grid
            .iter()
            .flat_map(|&a| grid.iter().map(move |&b| (a, b)))
            .filter(|(a, b)| a != b)
            .collect();
        return map_collect(config.exec, &pairs, |&(a, b)| godunov_viscosities(&Burgers, a, b, 1.0, k))
            .into_iter()
            .collect();
    }
    let cs: Vec<f64> = (0..n).map(|i| -kf + 2.0 * kf * i as f64 / (n - 1) as f64).collect();
    map_collect(config.exec, &cs, |&c| courant_coefficients(spec, c, k))
        .into_iter()
        .collect()
}

/// Runs every property for every configured scheme.
pub fn verify(config: &VerifyConfig) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    let tol = config.tol;
    for spec in &config.schemes {
        let sets = sweep_sets(spec, config)?;
        let samples: Vec<Sample> = map_collect(config.exec, &sets, |v| measure(v, spec.kind, tol))
            .into_iter()
            .collect::<Result<_>>()?;
        let n = samples.len();
        let min = |f: fn(&Sample) -> f64| samples.iter().map(f).fold(f64::INFINITY, f64::min);
        let max = |f: fn(&Sample) -> f64| samples.iter().map(f).fold(0.0, f64::max);

        let tvd = min(|s| s.tvd_min);
        report.rows.push(VerifyRow {
            property: "tvd",
            scheme: spec.kind,
            samples: n,
            worst: tvd,
            exact_zeros: samples.iter().map(|s| s.tvd_zeros).sum(),
            pass: tvd >= -tol,
        });
        let margin = min(|s| s.bound_margin);
        report.rows.push(VerifyRow {
            property: "bounds",
            scheme: spec.kind,
            samples: n,
            worst: margin,
            exact_zeros: 0,
            pass: margin >= -tol,
        });
        let rt = max(|s| s.round_trip);
        report.rows.push(VerifyRow {
            property: "roundtrip",
            scheme: spec.kind,
            samples: n,
            worst: rt,
            exact_zeros: 0,
            pass: rt <= tol,
        });
        if samples.iter().all(|s| s.diffusion_error.is_some()) {
            let err = max(|s| s.diffusion_error.unwrap_or(0.0));
            report.rows.push(VerifyRow {
                property: "diffusion",
                scheme: spec.kind,
                samples: n,
                worst: err,
                exact_zeros: 0,
                pass: err <= tol,
            });
        }
        if spec.kind == SchemeKind::RoeLxF {
            report.rows.push(beta_sweep(spec, config)?);
        }
    }
    Ok(report)
}

/// `D(β)` at `c = 2.5` must increase strictly with `β`; `worst` is the
/// smallest increment.
fn beta_sweep(spec: &SchemeSpec, config: &VerifyConfig) -> Result<VerifyRow> {
    let k = config.k.max(3);
    let c = 2.5;
    let n = config.samples.max(2);
    let betas: Vec<f64> = (0..n).map(|i| i as f64 / (n - 1) as f64).collect();
    let d: Vec<f64> = map_collect(config.exec, &betas, |&b| {
        courant_coefficients_with_beta(spec, b, c, k).map(|v| modified_diffusion(&v, c))
    })
    .into_iter()
    .collect::<Result<_>>()?;
    let worst = d.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
    Ok(VerifyRow {
        property: "diffusion-beta-monotone",
        scheme: spec.kind,
        samples: n,
        worst,
        exact_zeros: 0,
        pass: worst > 0.0,
    })
}
