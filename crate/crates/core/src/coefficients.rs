//! Coefficient algebra of local `2k+1` point schemes.
//!
//! A local scheme can be written either in the viscosity form, with partial
//! numerical viscosity coefficients `Q⁰, Q^{i±}` (`1 ≤ i ≤ k-1`), or in the
//! flux-difference-splitting form with fluctuation coefficients `𝒜^{i±}`
//! (`0 ≤ i ≤ k-1`). Both vanish for `i ≥ k`. [`q_to_a`] and [`a_to_q`] are the
//! exact inverse linear maps between the two.
//!
//! The TVD conditions in viscosity form are the `2k+1` inequalities
//!
//! ```text
//! Qa      1 - Q⁰ + Q^{1-} + Q^{1+}             >= 0
//! Qb±     Q⁰ - 4 Q^{1±} + 2 Q^{2±} ∓ C         >= 0
//! Qc±(i)  Q^{i±} - 2 Q^{(i+1)±} + Q^{(i+2)±}   >= 0,   1 <= i <= k-1
//! ```
//!
//! and [`check_tvd_fds`] evaluates the equivalent conditions on the
//! fluctuation coefficients, scaled so that both reports carry identical
//! residuals.

use std::fmt;

use crate::error::{LtsError, Result};

/// Tolerance below zero at which a residual still counts as satisfied. Roe and
/// LxF sit exactly on TVD boundaries, so exact zeros must survive round-off.
pub const DEFAULT_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct ViscositySet {
    pub k: usize,
    pub q0: f64,
    /// `Q^{i+}` for `i = 1..k`, stored at index `i - 1`.
    pub q_plus: Vec<f64>,
    /// `Q^{i-}` for `i = 1..k`, stored at index `i - 1`.
    pub q_minus: Vec<f64>,
    /// The local Courant number the set was built for.
    pub courant: f64,
}

impl ViscositySet {
    pub fn new(k: usize, q0: f64, q_plus: Vec<f64>, q_minus: Vec<f64>, courant: f64) -> Result<Self> {
        let set = Self {
            k,
            q0,
            q_plus,
            q_minus,
            courant,
        };
        set.validate()?;
        Ok(set)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(LtsError::InvalidParameter("stencil half-width k must be >= 1".into()));
        }
        if self.q_plus.len() != self.k - 1 || self.q_minus.len() != self.k - 1 {
            return Err(LtsError::InvalidParameter(format!(
                "viscosity set with k = {} needs {} entries per side, got {} / {}",
                self.k,
                self.k - 1,
                self.q_plus.len(),
                self.q_minus.len()
            )));
        }
        let finite = self.q0.is_finite()
            && self.courant.is_finite()
            && self.q_plus.iter().chain(&self.q_minus).all(|q| q.is_finite());
        if !finite {
            return Err(LtsError::NonFinite("viscosity coefficient"));
        }
        Ok(())
    }

    /// `Q^{i+}` for `i >= 1`, zero for `i >= k`.
    pub fn plus(&self, i: usize) -> f64 {
        debug_assert!(i >= 1);
        self.q_plus.get(i - 1).copied().unwrap_or(0.0)
    }

    /// `Q^{i-}` for `i >= 1`, zero for `i >= k`.
    pub fn minus(&self, i: usize) -> f64 {
        debug_assert!(i >= 1);
        self.q_minus.get(i - 1).copied().unwrap_or(0.0)
    }

    /// All coefficients in a fixed order: `Q⁰`, then `Q^{i+}`, then `Q^{i-}`.
    pub fn entries(&self) -> impl Iterator<Item = (CoefficientId, f64)> + '_ {
        std::iter::once((CoefficientId::Zero, self.q0))
            .chain(self.q_plus.iter().enumerate().map(|(i, &q)| (CoefficientId::Plus(i + 1), q)))
            .chain(self.q_minus.iter().enumerate().map(|(i, &q)| (CoefficientId::Minus(i + 1), q)))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FluctuationSet {
    pub k: usize,
    /// `𝒜^{i+}`, `i = 0..k`, in units of `Δx/Δt`.
    pub a_plus: Vec<f64>,
    /// `𝒜^{i-}`, `i = 0..k`.
    pub a_minus: Vec<f64>,
    /// `Δt/Δx`.
    pub ratio: f64,
}

impl FluctuationSet {
    pub fn new(a_plus: Vec<f64>, a_minus: Vec<f64>, ratio: f64) -> Result<Self> {
        let set = Self {
            k: a_plus.len(),
            a_plus,
            a_minus,
            ratio,
        };
        set.validate()?;
        Ok(set)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 || self.a_plus.len() != self.k || self.a_minus.len() != self.k {
            return Err(LtsError::InvalidParameter(format!(
                "fluctuation set with k = {} has {} / {} entries",
                self.k,
                self.a_plus.len(),
                self.a_minus.len()
            )));
        }
        if !(self.ratio.is_finite() && self.ratio > 0.0) {
            return Err(LtsError::InvalidParameter(format!("dt/dx = {} must be positive", self.ratio)));
        }
        if !self.a_plus.iter().chain(&self.a_minus).all(|a| a.is_finite()) {
            return Err(LtsError::NonFinite("fluctuation coefficient"));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoefficientId {
    Zero,
    Plus(usize),
    Minus(usize),
}

impl fmt::Display for CoefficientId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientId::Zero => write!(f, "Q0"),
            CoefficientId::Plus(i) => write!(f, "Q{i}+"),
            CoefficientId::Minus(i) => write!(f, "Q{i}-"),
        }
    }
}

/// Q-form to A-form.
pub fn q_to_a(v: &ViscositySet, ratio: f64) -> FluctuationSet {
    let k = v.k;
    let mut a_plus = vec![0.0; k];
    let mut a_minus = vec![0.0; k];
    fill_q_to_a(k, v.courant, ratio, v.q0, |i| v.plus(i), |i| v.minus(i), &mut a_plus, &mut a_minus);
    FluctuationSet {
        k,
        a_plus,
        a_minus,
        ratio,
    }
}

/// Allocation-free Q→A map; `q_plus(i)`/`q_minus(i)` must return 0 for `i >= k`.
#[allow(clippy::too_many_arguments)]
pub(crate) fn fill_q_to_a(
    k: usize,
    courant: f64,
    ratio: f64,
    q0: f64,
    q_plus: impl Fn(usize) -> f64,
    q_minus: impl Fn(usize) -> f64,
    a_plus: &mut [f64],
    a_minus: &mut [f64],
) {
    let h = 1.0 / ratio;
    a_plus[0] = 0.5 * h * (courant + q0 - 2.0 * q_minus(1));
    a_minus[0] = 0.5 * h * (courant - q0 + 2.0 * q_plus(1));
    for i in 1..k {
        a_plus[i] = h * (q_minus(i) - q_minus(i + 1));
        a_minus[i] = h * (q_plus(i + 1) - q_plus(i));
    }
}

/// A-form to Q-form, through tail partial sums.
pub fn a_to_q(a: &FluctuationSet) -> ViscositySet {
    let k = a.k;
    let r = a.ratio;
    let mut q_plus = vec![0.0; k.saturating_sub(1)];
    let mut q_minus = vec![0.0; k.saturating_sub(1)];
    let mut tail_plus = 0.0;
    let mut tail_minus = 0.0;
    for i in (1..k).rev() {
        tail_plus += a.a_plus[i];
        tail_minus += a.a_minus[i];
        q_minus[i - 1] = r * tail_plus;
        q_plus[i - 1] = -r * tail_minus;
    }
    tail_plus += a.a_plus[0];
    tail_minus += a.a_minus[0];
    ViscositySet {
        k,
        q0: r * (tail_plus - tail_minus),
        q_plus,
        q_minus,
        courant: r * (tail_plus + tail_minus),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InequalityId {
    /// `1 - Q⁰ + Q^{1-} + Q^{1+} >= 0`.
    Central,
    /// `Q⁰ - 4Q^{1+} + 2Q^{2+} - C >= 0`.
    FirstPlus,
    /// `Q⁰ - 4Q^{1-} + 2Q^{2-} + C >= 0`.
    FirstMinus,
    /// `Q^{i+} - 2Q^{(i+1)+} + Q^{(i+2)+} >= 0`.
    CurvaturePlus(usize),
    /// `Q^{i-} - 2Q^{(i+1)-} + Q^{(i+2)-} >= 0`.
    CurvatureMinus(usize),
}

impl fmt::Display for InequalityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InequalityId::Central => write!(f, "Qa"),
            InequalityId::FirstPlus => write!(f, "Qb+"),
            InequalityId::FirstMinus => write!(f, "Qb-"),
            InequalityId::CurvaturePlus(i) => write!(f, "Qc+({i})"),
            InequalityId::CurvatureMinus(i) => write!(f, "Qc-({i})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TvdReport {
    pub residuals: Vec<(InequalityId, f64)>,
    pub satisfied: bool,
    pub tol: f64,
}

impl TvdReport {
    fn from_residuals(residuals: Vec<(InequalityId, f64)>, tol: f64) -> Self {
        let satisfied = residuals.iter().all(|&(_, r)| r >= -tol);
        Self {
            residuals,
            satisfied,
            tol,
        }
    }

    pub fn min_residual(&self) -> f64 {
        self.residuals.iter().map(|&(_, r)| r).fold(f64::INFINITY, f64::min)
    }

    pub fn residual(&self, id: InequalityId) -> Option<f64> {
        self.residuals.iter().find(|(i, _)| *i == id).map(|&(_, r)| r)
    }

    /// Inequalities violated beyond the tolerance.
    pub fn violations(&self) -> impl Iterator<Item = &(InequalityId, f64)> {
        self.residuals.iter().filter(|(_, r)| *r < -self.tol)
    }

    /// Two-column CSV, header `inequality,residual`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("inequality,residual\n");
        for (id, r) in &self.residuals {
            out.push_str(&format!("{id},{r}\n"));
        }
        out
    }

    pub fn to_table(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for TvdReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<10} {:>24}  status", "inequality", "residual")?;
        for (id, r) in &self.residuals {
            let status = if *r >= -self.tol { "ok" } else { "VIOLATED" };
            writeln!(f, "{:<10} {:>24.16e}  {status}", id.to_string(), r)?;
        }
        write!(
            f,
            "{} (tol {:e})",
            if self.satisfied { "TVD" } else { "NOT TVD" },
            self.tol
        )
    }
}

/// Calls `visit` with every TVD residual of the set described by the closures.
pub(crate) fn for_each_tvd_residual(
    k: usize,
    courant: f64,
    q0: f64,
    q_plus: impl Fn(usize) -> f64,
    q_minus: impl Fn(usize) -> f64,
    mut visit: impl FnMut(InequalityId, f64),
) {
    visit(InequalityId::Central, 1.0 - q0 + (q_minus(1) + q_plus(1)));
    visit(InequalityId::FirstPlus, q0 - 4.0 * q_plus(1) + 2.0 * q_plus(2) - courant);
    visit(InequalityId::FirstMinus, q0 - 4.0 * q_minus(1) + 2.0 * q_minus(2) + courant);
    for i in 1..k {
        visit(
            InequalityId::CurvaturePlus(i),
            q_plus(i) - 2.0 * q_plus(i + 1) + q_plus(i + 2),
        );
        visit(
            InequalityId::CurvatureMinus(i),
            q_minus(i) - 2.0 * q_minus(i + 1) + q_minus(i + 2),
        );
    }
}

pub fn check_tvd(v: &ViscositySet, tol: f64) -> TvdReport {
    let mut residuals = Vec::with_capacity(2 * v.k + 1);
    for_each_tvd_residual(v.k, v.courant, v.q0, |i| v.plus(i), |i| v.minus(i), |id, r| {
        residuals.push((id, r))
    });
    TvdReport::from_residuals(residuals, tol)
}

/// Smallest TVD residual of a set, without building a report.
pub fn min_tvd_residual(v: &ViscositySet) -> f64 {
    let mut min = f64::INFINITY;
    for_each_tvd_residual(v.k, v.courant, v.q0, |i| v.plus(i), |i| v.minus(i), |_, r| {
        min = min.min(r)
    });
    min
}

/// TVD conditions on the fluctuation coefficients:
/// `Δx/Δt - 𝒜^{0+} + 𝒜^{0-} >= 0`, `𝒜^{i+}` nonincreasing and `𝒜^{i-}`
/// nondecreasing in `i`. Residuals are scaled by `Δt/Δx` (and by `2Δt/Δx`
/// for the `i = 0` differences) so they coincide with [`check_tvd`] on the
/// transformed set.
pub fn check_tvd_fds(a: &FluctuationSet, tol: f64) -> TvdReport {
    let mut residuals = Vec::with_capacity(2 * a.k + 1);
    for_each_tvd_residual_fds(a.ratio, &a.a_plus, &a.a_minus, |id, r| residuals.push((id, r)));
    TvdReport::from_residuals(residuals, tol)
}

pub(crate) fn for_each_tvd_residual_fds(
    ratio: f64,
    a_plus: &[f64],
    a_minus: &[f64],
    mut visit: impl FnMut(InequalityId, f64),
) {
    let r = ratio;
    let k = a_plus.len();
    let plus = |i: usize| a_plus.get(i).copied().unwrap_or(0.0);
    let minus = |i: usize| a_minus.get(i).copied().unwrap_or(0.0);
    visit(InequalityId::Central, r * (1.0 / r - plus(0) + minus(0)));
    visit(InequalityId::FirstPlus, 2.0 * r * (minus(1) - minus(0)));
    visit(InequalityId::FirstMinus, 2.0 * r * (plus(0) - plus(1)));
    for i in 1..k {
        visit(InequalityId::CurvaturePlus(i), r * (minus(i + 1) - minus(i)));
        visit(InequalityId::CurvatureMinus(i), r * (plus(i) - plus(i + 1)));
    }
}

/// Smallest FDS-form TVD residual of raw coefficient slices.
pub(crate) fn min_tvd_residual_fds(ratio: f64, a_plus: &[f64], a_minus: &[f64]) -> f64 {
    let mut min = f64::INFINITY;
    for_each_tvd_residual_fds(ratio, a_plus, a_minus, |_, r| min = min.min(r));
    min
}

/// Lower (LTS-Roe) bound of each coefficient of a TVD set.
pub fn roe_lower_bound(id: CoefficientId, courant: f64) -> f64 {
    match id {
        CoefficientId::Zero => courant.abs(),
        CoefficientId::Plus(i) => (-courant - i as f64).max(0.0),
        CoefficientId::Minus(i) => (courant - i as f64).max(0.0),
    }
}

/// Upper (LTS-LxF) bound of each coefficient of a `2k+1` point TVD set.
pub fn lxf_upper_bound(id: CoefficientId, courant: f64, k: usize) -> f64 {
    let kf = k as f64;
    match id {
        CoefficientId::Zero => kf,
        CoefficientId::Plus(i) => (kf - i as f64) / (2.0 * kf) * (kf - courant),
        CoefficientId::Minus(i) => (kf - i as f64) / (2.0 * kf) * (kf + courant),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundEntry {
    pub id: CoefficientId,
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
}

impl BoundEntry {
    pub fn within(&self, tol: f64) -> bool {
        self.value >= self.lower - tol && self.value <= self.upper + tol
    }

    /// Distance to the nearer bound; negative when outside.
    pub fn margin(&self) -> f64 {
        (self.value - self.lower).min(self.upper - self.value)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundsReport {
    pub entries: Vec<BoundEntry>,
    pub tol: f64,
}

impl BoundsReport {
    pub fn satisfied(&self) -> bool {
        self.entries.iter().all(|e| e.within(self.tol))
    }

    pub fn violations(&self) -> impl Iterator<Item = &BoundEntry> {
        self.entries.iter().filter(|e| !e.within(self.tol))
    }

    pub fn min_margin(&self) -> f64 {
        self.entries.iter().map(BoundEntry::margin).fold(f64::INFINITY, f64::min)
    }
}

/// Compares every coefficient against the Roe lower and LxF upper bound.
pub fn check_bounds(v: &ViscositySet, tol: f64) -> Result<BoundsReport> {
    v.validate()?;
    if v.courant.abs() > v.k as f64 {
        return Err(LtsError::Cfl {
            courant: v.courant,
            k: v.k,
        });
    }
    let entries = v
        .entries()
        .map(|(id, value)| BoundEntry {
            id,
            value,
            lower: roe_lower_bound(id, v.courant),
            upper: lxf_upper_bound(id, v.courant, v.k),
        })
        .collect();
    Ok(BoundsReport { entries, tol })
}

/// Diffusion coefficient of the modified equation,
/// `D = Q⁰ - c² + Σ 2(Q^{i-} + Q^{i+})`, for a set built at a degenerate
/// interface with pointwise Courant number `c`.
pub fn modified_diffusion(v: &ViscositySet, c: f64) -> f64 {
    let tails: f64 = v.q_plus.iter().chain(&v.q_minus).sum();
    v.q0 - c * c + 2.0 * tails
}
