use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Clause, Error, Result};
#[cfg(test)]
use crate::numeric::integrate;
use crate::numeric::{gauss_legendre8, smooth_step, Jet};
use crate::paramgen::ParamSet;

/// Concave correction `theta` on `[psi, b]` joining the inner sine profile
/// to the outer one.
///
/// `theta'` ramps from 0 to `dtheta_b` through the C-infinity step over
/// `[psi, psi + ramp]` and is constant afterwards, so `theta` is flat to all
/// orders at `psi` and linear on `[psi + ramp, b]`. The ramp width is fixed
/// by `theta(b) = theta_b`; it is positive exactly when (*) holds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BridgeTheta {
    pub psi: f64,
    pub b: f64,
    pub theta_b: f64,
    pub dtheta_b: f64,
    /// `dtheta_b (b - psi) / theta_b - 1`: the relative slack of (*).
    pub q: f64,
    /// Width of the ramp in `theta'`.
    pub ramp: f64,
}

impl BridgeTheta {
    pub fn ramp_end(&self) -> f64 {
        self.psi + self.ramp
    }

    /// `theta` and its derivatives; zero left of `psi`, the linear
    /// continuation right of `b`.
    pub fn eval(&self, t: f64) -> Jet {
        if t <= self.psi {
            return Jet::new(0.0, 0.0, 0.0);
        }
        if t >= self.ramp_end() {
            return Jet::new(
                self.theta_b + self.dtheta_b * (t - self.b),
                self.dtheta_b,
                0.0,
            );
        }
        let u = (t - self.psi) / self.ramp;
        let h = smooth_step(u);
        Jet::new(
            self.dtheta_b * self.ramp * step_integral(u),
            self.dtheta_b * h.v,
            self.dtheta_b * h.d1 / self.ramp,
        )
    }
}

const STEP_PANELS: usize = 4096;

/// Cumulative `int_0^{k/(2 STEP_PANELS)} h` at the panel edges of `[0, 1/2]`.
fn step_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let width = 0.5 / STEP_PANELS as f64;
        let mut acc = 0.0;
        let mut table = Vec::with_capacity(STEP_PANELS + 1);
        table.push(0.0);
        for k in 0..STEP_PANELS {
            let a = k as f64 * width;
            acc += gauss_legendre8(|s| smooth_step(s).v, a, a + width);
            table.push(acc);
        }
        table
    })
}

/// `J(u) = int_0^u h` for the unit step `h`. The symmetry
/// `h(1 - s) = 1 - h(s)` gives `J(u) = u - 1/2 + J(1 - u)`, so only
/// `[0, 1/2]` is tabulated and `J(1) = 1/2` exactly.
pub fn step_integral(u: f64) -> f64 {
    let half = |x: f64| {
        let width = 0.5 / STEP_PANELS as f64;
        let k = ((x / width) as usize).min(STEP_PANELS);
        let edge = k as f64 * width;
        step_table()[k] + gauss_legendre8(|s| smooth_step(s).v, edge, x)
    };
    if u <= 0.0 {
        0.0
    } else if u >= 1.0 {
        u - 0.5
    } else if u > 0.5 {
        u - 0.5 + half(1.0 - u)
    } else {
        half(u)
    }
}

/// Boundary data `(theta(b), theta'(b))` forced by matching the outer
/// profile at `b = r0^2 / kappa`.
pub fn bridge_boundary_values(params: &ParamSet) -> (f64, f64) {
    let b = params.outer_junction();
    let arg = b + params.shift();
    let inner = 2.0 * b / params.r0;
    (
        params.squash * arg.sin() - 0.5 * params.r0 * inner.sin(),
        params.squash * arg.cos() - inner.cos(),
    )
}

pub fn build_bridge_theta(params: &ParamSet) -> Result<BridgeTheta> {
    let b = params.outer_junction();
    let psi = params.psi;
    if !(psi > 0.0 && psi < b) {
        return Err(Error::certification(
            Clause::BridgeInequality,
            format!("psi = {psi} must lie in (0, b = {b})"),
        ));
    }
    let (theta_b, dtheta_b) = bridge_boundary_values(params);
    if !(theta_b < 0.0 && dtheta_b < 0.0) {
        return Err(Error::certification(
            Clause::BridgeConcavity,
            format!("theta(b) = {theta_b:e} and theta'(b) = {dtheta_b:e} must both be negative"),
        ));
    }
    let q = dtheta_b * (b - psi) / theta_b - 1.0;
    if !(q > 0.0) {
        return Err(Error::certification(
            Clause::BridgeInequality,
            format!("(*) fails at psi = {psi:e}: exponent q = {q:e} is not positive"),
        ));
    }
    let ramp = 2.0 * (b - psi - theta_b / dtheta_b);
    if !(ramp > 0.0 && ramp <= b - psi) {
        return Err(Error::certification(
            Clause::BridgeConcavity,
            format!("ramp width {ramp:e} does not fit in [psi, b] (q = {q:e} must not exceed 1)"),
        ));
    }
    Ok(BridgeTheta {
        psi,
        b,
        theta_b,
        dtheta_b,
        q,
        ramp,
    })
}
