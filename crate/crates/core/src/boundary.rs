//! Geometry of the boundary of a removed ball: the induced metric
//! `ds^2 + B^2(s) ds_{n-2}^2`, its pole distance and waist, and the
//! admissible interval for the neck radius `rho`.
//!
//! The boundary meets the `(t, x)` hemisphere in a circle of spherical
//! radius `r0` centred on the equator `t = 0`; with unit-speed parameter
//! `s` its latitude is `t(s) = asin(sin r0 sin(s / sin r0))`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::curvature::{intrinsic_sectional, rescale_curvature};
use crate::error::{Clause, Error, Result};
use crate::grid::{refined, GridSpec};
use crate::paramgen::ParamSet;
use crate::profile::Warping;

/// Unrescaled length of the boundary arc, `pi sin r0`.
pub fn arc_length(r0: f64) -> f64 {
    PI * r0.sin()
}

/// Reflects `s` into the first half of the arc, tolerating round-off at the
/// far end.
fn fold(r0: f64, s: f64) -> Result<f64> {
    let len = arc_length(r0);
    let slack = 1e-12 * len;
    if !(s >= -slack && s <= len + slack) {
        return Err(Error::domain(format!(
            "s = {s} outside [0, pi sin r0 = {len}]"
        )));
    }
    let s = s.clamp(0.0, len);
    Ok(s.min(len - s))
}

/// Latitude of the boundary point at unrescaled arc length `s`.
pub fn t_of_s(r0: f64, s: f64) -> Result<f64> {
    let s = fold(r0, s)?;
    let sr = r0.sin();
    Ok((sr * (s / sr).sin()).asin().min(r0))
}

/// `(t, dt/ds, d^2t/ds^2)` along the arc.
pub fn t_jet(r0: f64, s: f64) -> Result<(f64, f64, f64)> {
    let len = arc_length(r0);
    let sign = if s > 0.5 * len { -1.0 } else { 1.0 };
    let folded = fold(r0, s)?;
    let sr = r0.sin();
    let phi = folded / sr;
    let t = (sr * phi.sin()).asin().min(r0);
    let ct = t.cos();
    let d1 = phi.cos() / ct;
    let d2 = (-phi.sin() / sr * ct + phi.cos() * t.sin() * d1) / (ct * ct);
    Ok((t, sign * d1, d2))
}

/// Pole-to-pole length of the boundary circle, measured on its embedding in
/// the unit 2-sphere as a sum of great-circle segments (Richardson
/// extrapolated). Independent of [`t_of_s`].
pub fn embedded_arc_length(r0: f64, segments: usize) -> f64 {
    let polyline = |m: usize| -> f64 {
        let (cr, sr) = (r0.cos(), r0.sin());
        let point = |phi: f64| [cr, sr * phi.cos(), sr * phi.sin()];
        (0..m)
            .map(|k| {
                let a = point(PI * k as f64 / m as f64);
                let b = point(PI * (k + 1) as f64 / m as f64);
                let chord =
                    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt();
                2.0 * (0.5 * chord).asin()
            })
            .sum()
    };
    let coarse = polyline(segments);
    let fine = polyline(2 * segments);
    (4.0 * fine - coarse) / 3.0
}

/// One point of the rescaled boundary metric. `k_rad = -B''/B` and
/// `k_tan = (1 - B'^2)/B^2` are evaluated through the closed-form intrinsic
/// curvatures, which stay finite at the poles where the quotients are `0/0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundarySample {
    /// Rescaled arc length.
    pub s: f64,
    #[serde(skip)]
    pub t: f64,
    #[serde(rename = "B")]
    pub b: f64,
    #[serde(rename = "B1")]
    pub b1: f64,
    #[serde(rename = "B2")]
    pub b2: f64,
    #[serde(rename = "K_rad")]
    pub k_rad: f64,
    #[serde(rename = "K_tan")]
    pub k_tan: f64,
}

/// The boundary metric after rescaling by `cot^2 r0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryMetric {
    pub r0: f64,
    pub n: u32,
    /// Rescaled pole distance is `pi omega`.
    pub omega: f64,
    /// Maximum of the rescaled warping function.
    pub tau: f64,
    /// `(n - 2) / (n - 1)` with the ambient `n`.
    pub exponent: f64,
    pub rho_lo: f64,
    pub rho_hi: f64,
    #[serde(skip)]
    pub samples: Vec<BoundarySample>,
}

impl BoundaryMetric {
    /// Rescaled pole distance `pi cos r0`.
    pub fn pole_distance(&self) -> f64 {
        PI * self.omega
    }
}

/// Rescaled warping function and its first two `s`-derivatives.
pub fn rescaled_sample<W: Warping + ?Sized>(
    r: &W,
    r0: f64,
    s_rescaled: f64,
) -> Result<BoundarySample> {
    let tan_r0 = r0.tan();
    let (t, dt, ddt) = t_jet(r0, s_rescaled * tan_r0)?;
    let j = r.jet(t);
    let (ki_ys, ki_ss) = intrinsic_sectional(r, r0, t)?;
    Ok(BoundarySample {
        s: s_rescaled,
        t,
        b: j.v / tan_r0,
        b1: j.d1 * dt,
        b2: tan_r0 * (j.d2 * dt * dt + j.d1 * ddt),
        k_rad: rescale_curvature(ki_ys, r0),
        k_tan: rescale_curvature(ki_ss, r0),
    })
}

/// Rescaled arc length of the boundary point at latitude `t` on the first
/// half of the arc.
pub fn rescaled_s_of_t(r0: f64, t: f64) -> f64 {
    let sr = r0.sin();
    sr * (t.sin() / sr).min(1.0).asin() / r0.tan()
}

/// Samples the rescaled boundary metric on `grid.points` nodes of
/// `[0, pi cos r0]`, refined around the images of the profile's features.
pub fn boundary_metric<W: Warping + ?Sized>(
    r: &W,
    params: &ParamSet,
    grid: &GridSpec,
) -> Result<BoundaryMetric> {
    grid.validate()?;
    let r0 = params.r0;
    let len = PI * r0.cos();
    let mut features = Vec::new();
    for t in r.features().into_iter().filter(|&t| t > 0.0 && t < r0) {
        let s = rescaled_s_of_t(r0, t);
        features.extend([s, len - s]);
    }
    features.push(0.5 * len);
    let samples = refined(0.0, len, grid.points, &features)
        .into_iter()
        .map(|s| rescaled_sample(r, r0, s))
        .collect::<Result<Vec<_>>>()?;

    let tau = r.jet(r0).v / r0.tan();
    let omega = r0.cos();
    let exponent = (params.n - 2) as f64 / (params.n - 1) as f64;
    Ok(BoundaryMetric {
        r0,
        n: params.n,
        omega,
        tau,
        exponent,
        rho_lo: tau.powf(exponent),
        rho_hi: omega.min(0.5),
        samples,
    })
}

/// `(tau^((n-2)/(n-1)), min(omega, 1/2))`; must be non-empty.
pub fn rho_interval(bm: &BoundaryMetric, n: u32) -> Result<(f64, f64)> {
    if n < 3 {
        return Err(Error::config(format!(
            "dimension n must be at least 3, got {n}"
        )));
    }
    let lo = bm.tau.powf((n - 2) as f64 / (n - 1) as f64);
    let hi = bm.omega.min(0.5);
    if !(lo < hi) {
        return Err(Error::certification(
            Clause::RhoInterval,
            format!("rho interval ({lo}, {hi}) is empty"),
        ));
    }
    Ok((lo, hi))
}
