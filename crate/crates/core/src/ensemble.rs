//! Domain types and deterministic sampling of an initial distribution into a
//! weighted shell ensemble.
//!
//! Phase space is described by the radial coordinates `(r, w, ell)`: radius,
//! radial momentum, and squared angular momentum. A distribution
//! `f0(r, w, ell)` supported on a box with `r > 0` and `ell > 0` is
//! discretized by midpoint quadrature of the measure
//! `2*pi * f0 * ell^(-1/2) dr dw dell` into shells, each carrying a constant
//! mass weight `mu`.

use crate::numeric::compensated_sum;
use thiserror::Error;

/// Selects the classical or relativistic characteristic system.
///
/// The choice fixes the right-hand sides used by the integrator and the
/// kinetic-energy functional; it is never mixed within a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum ModelKind {
    Classical,
    Relativistic,
}

impl ModelKind {
    pub fn name(&self) -> &'static str {
        match self {
            ModelKind::Classical => "classical",
            ModelKind::Relativistic => "relativistic",
        }
    }
}

/// One computational shell: a weighted ring of charge at radius `r` with
/// radial momentum `w`, squared angular momentum `ell`, and mass weight `mu`.
///
/// `ell` and `mu` are constants of the motion; the integrator only ever
/// updates `r` and `w`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialState {
    pub r: f64,
    pub w: f64,
    pub ell: f64,
    pub mu: f64,
}

impl RadialState {
    pub fn new(r: f64, w: f64, ell: f64, mu: f64) -> Self {
        Self { r, w, ell, mu }
    }
}

/// The full weighted shell population at one instant.
///
/// Shell order is stable for the lifetime of a run: integration and
/// diagnostics never reorder `shells`, so index `i` refers to the same
/// physical shell at every time.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    pub time: f64,
    pub shells: Vec<RadialState>,
    /// Uniform positive lower bound on `ell` over the support.
    pub ell_min: f64,
}

impl Ensemble {
    /// Builds an ensemble directly from shells, deriving `ell_min`.
    ///
    /// Rejects shells violating `r > 0`, `ell > 0`, or `mu > 0`.
    pub fn from_shells(shells: Vec<RadialState>) -> Result<Self, SampleError> {
        let mut ell_min = f64::INFINITY;
        for s in &shells {
            if !(s.r > 0.0) || !s.r.is_finite() {
                return Err(SampleError::NonPositiveRadius(s.r));
            }
            if !(s.ell > 0.0) || !s.ell.is_finite() {
                return Err(SampleError::NonPositiveAngularMomentum(s.ell));
            }
            if !(s.mu > 0.0) || !s.mu.is_finite() {
                return Err(SampleError::NonPositiveWeight(s.mu));
            }
            ell_min = ell_min.min(s.ell);
        }
        if shells.is_empty() {
            ell_min = 0.0;
        }
        Ok(Self { time: 0.0, shells, ell_min })
    }

    pub fn len(&self) -> usize {
        self.shells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shells.is_empty()
    }
}

/// Total mass of the ensemble: the compensated sum of the shell weights in
/// storage order. Deterministic regardless of thread count.
pub fn total_mass(ens: &Ensemble) -> f64 {
    compensated_sum(ens.shells.iter().map(|s| s.mu))
}

/// Built-in initial-distribution profiles.
#[derive(Debug, Clone, PartialEq)]
pub enum ProfileKind {
    /// Flat indicator of the support box. Not C1; useful for quadrature
    /// checks against analytically integrable masses.
    BoxBump,
    /// Product of per-axis quartic bumps `(1 - s^2)^2` rescaled to each
    /// interval. C1 with compact support equal to the box.
    TensorBump,
    /// Explicit per-cell values on the tensor grid, row-major in
    /// `(r, w, ell)` order; must hold exactly `n_r * n_w * n_ell` entries.
    CustomGrid(Vec<f64>),
}

/// Specification of the initial distribution `f0` on a support box, together
/// with the tensor-grid resolution used to sample it.
#[derive(Debug, Clone, PartialEq)]
pub struct DistributionSpec {
    pub kind: ProfileKind,
    pub amplitude: f64,
    pub r_range: (f64, f64),
    pub w_range: (f64, f64),
    pub ell_range: (f64, f64),
    pub n_r: usize,
    pub n_w: usize,
    pub n_ell: usize,
}

#[derive(Debug, Error, PartialEq)]
pub enum SampleError {
    #[error("support box requires r_min > 0, got {0}")]
    NonPositiveRadius(f64),
    #[error("support box requires ell_min > 0, got {0}")]
    NonPositiveAngularMomentum(f64),
    #[error("shell weights must be positive and finite, got {0}")]
    NonPositiveWeight(f64),
    #[error("range ({0}, {1}) must be increasing and finite")]
    BadRange(f64, f64),
    #[error("grid resolution must be positive in every direction")]
    EmptyResolution,
    #[error("amplitude must be nonnegative and finite, got {0}")]
    BadAmplitude(f64),
    #[error("custom grid holds {got} values, expected {expected}")]
    GridSizeMismatch { got: usize, expected: usize },
    #[error("distribution values must be nonnegative and finite, got {0}")]
    NegativeValue(f64),
}

impl DistributionSpec {
    pub fn validate(&self) -> Result<(), SampleError> {
        let check_range = |(a, b): (f64, f64)| {
            if a.is_finite() && b.is_finite() && a < b {
                Ok(())
            } else {
                Err(SampleError::BadRange(a, b))
            }
        };
        check_range(self.r_range)?;
        check_range(self.w_range)?;
        check_range(self.ell_range)?;
        if self.r_range.0 <= 0.0 {
            return Err(SampleError::NonPositiveRadius(self.r_range.0));
        }
        if self.ell_range.0 <= 0.0 {
            return Err(SampleError::NonPositiveAngularMomentum(self.ell_range.0));
        }
        if self.n_r == 0 || self.n_w == 0 || self.n_ell == 0 {
            return Err(SampleError::EmptyResolution);
        }
        if !(self.amplitude >= 0.0) || !self.amplitude.is_finite() {
            return Err(SampleError::BadAmplitude(self.amplitude));
        }
        if let ProfileKind::CustomGrid(values) = &self.kind {
            let expected = self.n_r * self.n_w * self.n_ell;
            if values.len() != expected {
                return Err(SampleError::GridSizeMismatch { got: values.len(), expected });
            }
            for &v in values {
                if !(v >= 0.0) || !v.is_finite() {
                    return Err(SampleError::NegativeValue(v));
                }
            }
        }
        Ok(())
    }

    /// Evaluates `f0` at a phase-space point. Zero outside the support box.
    ///
    /// `CustomGrid` values are piecewise constant per cell, so evaluation off
    /// the sampling midpoints snaps to the containing cell.
    pub fn density(&self, r: f64, w: f64, ell: f64) -> f64 {
        let inside = |x: f64, (a, b): (f64, f64)| x >= a && x <= b;
        if !inside(r, self.r_range) || !inside(w, self.w_range) || !inside(ell, self.ell_range) {
            return 0.0;
        }
        match &self.kind {
            ProfileKind::BoxBump => self.amplitude,
            ProfileKind::TensorBump => {
                self.amplitude
                    * bump(r, self.r_range)
                    * bump(w, self.w_range)
                    * bump(ell, self.ell_range)
            }
            ProfileKind::CustomGrid(values) => {
                let idx = |x: f64, (a, b): (f64, f64), n: usize| -> usize {
                    let t = ((x - a) / (b - a) * n as f64).floor() as isize;
                    (t.max(0) as usize).min(n - 1)
                };
                let i = idx(r, self.r_range, self.n_r);
                let j = idx(w, self.w_range, self.n_w);
                let k = idx(ell, self.ell_range, self.n_ell);
                self.amplitude * values[(i * self.n_w + j) * self.n_ell + k]
            }
        }
    }
}

/// Quartic bump `(1 - s^2)^2` with `s` the affine map of `[a, b]` onto
/// `[-1, 1]`. Vanishes with its first derivative at the endpoints.
fn bump(x: f64, (a, b): (f64, f64)) -> f64 {
    let s = (2.0 * x - a - b) / (b - a);
    let q = 1.0 - s * s;
    if q <= 0.0 {
        0.0
    } else {
        q * q
    }
}

/// Samples the distribution into a weighted shell ensemble by midpoint
/// quadrature on the tensor grid.
///
/// Each occupied cell yields one shell at the cell midpoint with weight
/// `mu = 2*pi * f0 * ell^(-1/2) * dr * dw * dell`; cells where `f0 = 0`
/// produce no shell. Sampling is a pure function of the spec: identical
/// specs yield bit-identical ensembles.
pub fn sample_ensemble(spec: &DistributionSpec) -> Result<Ensemble, SampleError> {
    spec.validate()?;
    let (r0, r1) = spec.r_range;
    let (w0, w1) = spec.w_range;
    let (l0, l1) = spec.ell_range;
    let dr = (r1 - r0) / spec.n_r as f64;
    let dw = (w1 - w0) / spec.n_w as f64;
    let dl = (l1 - l0) / spec.n_ell as f64;
    let cell_volume = dr * dw * dl;

    let mut shells = Vec::new();
    for i in 0..spec.n_r {
        let r = r0 + (i as f64 + 0.5) * dr;
        for j in 0..spec.n_w {
            let w = w0 + (j as f64 + 0.5) * dw;
            for k in 0..spec.n_ell {
                let ell = l0 + (k as f64 + 0.5) * dl;
                let f = spec.density(r, w, ell);
                if f > 0.0 {
                    let mu = 2.0 * std::f64::consts::PI * f / ell.sqrt() * cell_volume;
                    shells.push(RadialState::new(r, w, ell, mu));
                }
            }
        }
    }
    Ok(Ensemble { time: 0.0, shells, ell_min: l0 })
}
