use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use super::{
    check_domain, one_minus_x_cot_x, sine_minus_scaled_sine, tan_over_x_minus_one, BridgeTheta,
    BumpFunction, Warping,
};
use crate::error::{Clause, Error, Result};
use crate::grid::uniform;
use crate::numeric::Jet;
use crate::paramgen::ParamSet;

/// Tolerance on value and slope jumps at the two junctions.
pub const JUNCTION_TOL: f64 = 1e-9;
const VALIDATION_POINTS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Piece {
    Inner,
    Bridge,
    Outer,
}

/// The C1 profile: `(r0/2) sin(2t/r0)` on `[0, psi]`, that plus `theta` on
/// `[psi, b]`, and `R0 sin(t + (r0^4/zeta) gamma(t/r0 - 1))` on `[b, pi/2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileC1 {
    pub params: ParamSet,
    pub bump: BumpFunction,
    pub bridge: BridgeTheta,
}

impl ProfileC1 {
    pub fn outer_junction(&self) -> f64 {
        self.bridge.b
    }

    pub fn piece(&self, t: f64) -> Piece {
        if t <= self.bridge.psi {
            Piece::Inner
        } else if t < self.bridge.b {
            Piece::Bridge
        } else {
            Piece::Outer
        }
    }

    pub fn eval(&self, t: f64) -> Result<Jet> {
        check_domain(t)?;
        Ok(self.jet(t))
    }

    /// `(r0/2) sin(2t/r0)`, valid for any `t`.
    pub fn inner_jet(&self, t: f64) -> Jet {
        let r0 = self.params.r0;
        let a = 2.0 * t / r0;
        Jet::new(0.5 * r0 * a.sin(), a.cos(), -2.0 / r0 * a.sin())
    }

    /// Inner sine plus `theta`; past `b` this is the analytic continuation
    /// of the bridge piece (with `theta` linear).
    pub fn bridge_extension(&self, t: f64) -> Jet {
        let f = self.inner_jet(t);
        let th = self.bridge.eval(t);
        Jet::new(f.v + th.v, f.d1 + th.d1, f.d2 + th.d2)
    }

    /// `R0 sin(phi)` with `phi = t + eps gamma(t/r0 - 1)`, valid for any `t`.
    pub fn outer_jet(&self, t: f64) -> Jet {
        let (phi, dphi, ddphi) = self.outer_phase(t);
        let r = self.params.squash;
        Jet::new(
            r * phi.sin(),
            r * phi.cos() * dphi,
            r * (phi.cos() * ddphi - phi.sin() * dphi * dphi),
        )
    }

    fn outer_phase(&self, t: f64) -> (f64, f64, f64) {
        let r0 = self.params.r0;
        let eps = self.params.shift();
        let g = self.bump.eval(t / r0 - 1.0);
        (t + eps * g.v, 1.0 + eps * g.d1 / r0, eps * g.d2 / (r0 * r0))
    }

    /// `(-theta'' - 4 theta / r0^2) / R`, which equals `-R''/R - 4/r0^2` on
    /// the bridge piece without the cancellation.
    pub fn inner_concavity_margin(&self, t: f64) -> f64 {
        let r0 = self.params.r0;
        let th = self.bridge.eval(t);
        (-th.d2 - 4.0 * th.v / (r0 * r0)) / self.bridge_extension(t).v
    }

    /// `(value jump, slope jump)` at `psi` and at `b`.
    pub fn junction_jumps(&self) -> [(f64, f64); 2] {
        let psi = self.bridge.psi;
        let b = self.bridge.b;
        let (l, r) = (self.inner_jet(psi), self.bridge_extension(psi));
        let (bl, br) = (self.bridge_extension(b), self.outer_jet(b));
        [
            ((l.v - r.v).abs(), (l.d1 - r.d1).abs()),
            ((bl.v - br.v).abs(), (bl.d1 - br.d1).abs()),
        ]
    }
}

impl Warping for ProfileC1 {
    fn jet(&self, t: f64) -> Jet {
        match self.piece(t) {
            Piece::Inner => self.inner_jet(t),
            Piece::Bridge => self.bridge_extension(t),
            Piece::Outer => self.outer_jet(t),
        }
    }

    fn neg_curv_ratio(&self, t: f64) -> f64 {
        match self.piece(t) {
            Piece::Inner => 4.0 / (self.params.r0 * self.params.r0),
            Piece::Bridge => {
                let j = self.bridge_extension(t);
                -j.d2 / j.v
            }
            Piece::Outer => {
                let (phi, dphi, ddphi) = self.outer_phase(t);
                dphi * dphi - ddphi / phi.tan()
            }
        }
    }

    fn log_slope_tan(&self, t: f64) -> f64 {
        match self.piece(t) {
            Piece::Inner if t == 0.0 => 1.0,
            Piece::Inner => {
                let j = self.inner_jet(t);
                j.d1 * t.tan() / j.v
            }
            Piece::Bridge => {
                let j = self.bridge_extension(t);
                j.d1 * t.tan() / j.v
            }
            Piece::Outer => {
                let (phi, dphi, _) = self.outer_phase(t);
                dphi * t.tan() / phi.tan()
            }
        }
    }

    fn slope_deficit(&self, t: f64) -> f64 {
        let a = 2.0 * t / self.params.r0;
        match self.piece(t) {
            Piece::Inner => a.sin().powi(2),
            Piece::Bridge => {
                let d = self.bridge.eval(t).d1;
                a.sin().powi(2) - d * (2.0 * a.cos() + d)
            }
            Piece::Outer => {
                let d1 = self.outer_jet(t).d1;
                (1.0 - d1) * (1.0 + d1)
            }
        }
    }

    fn deficit_ratio(&self, t: f64) -> f64 {
        match self.piece(t) {
            Piece::Inner => 4.0 / (self.params.r0 * self.params.r0),
            _ => self.slope_deficit(t) / self.jet(t).v.powi(2),
        }
    }

    fn tan_over_r(&self, t: f64) -> f64 {
        if t == 0.0 {
            return 1.0;
        }
        t.tan() / self.jet(t).v
    }

    fn slope_tan_gap(&self, t: f64) -> f64 {
        match self.piece(t) {
            Piece::Inner => {
                // (R'/R) tan t = (u cot u)(tan t / t) with u = 2t/r0
                let a = one_minus_x_cot_x(2.0 * t / self.params.r0);
                let b = tan_over_x_minus_one(t);
                a - b + a * b
            }
            _ => 1.0 - self.log_slope_tan(t),
        }
    }

    fn sine_gap(&self, t: f64) -> f64 {
        let a = 2.0 / self.params.r0;
        match self.piece(t) {
            Piece::Inner => sine_minus_scaled_sine(t, a),
            Piece::Bridge => sine_minus_scaled_sine(t, a) - self.bridge.eval(t).v,
            Piece::Outer => t.sin() - self.outer_jet(t).v,
        }
    }

    fn features(&self) -> Vec<f64> {
        let p = &self.params;
        vec![
            self.bridge.psi,
            self.bridge.ramp_end(),
            self.bridge.b,
            p.r0,
            p.r0 * (1.0 + self.bump.length),
        ]
    }
}

/// Assembles the C1 profile and validates it piece by piece.
pub fn assemble_profile(
    params: &ParamSet,
    bump: &BumpFunction,
    bridge: &BridgeTheta,
) -> Result<ProfileC1> {
    let b = params.outer_junction();
    if bridge.psi != params.psi || bridge.b != b || bump.length != params.bump_length {
        return Err(Error::config(
            "bump, bridge and parameters come from different cascades",
        ));
    }
    let profile = ProfileC1 {
        params: *params,
        bump: *bump,
        bridge: *bridge,
    };

    for ((dv, d1), (name, at)) in profile
        .junction_jumps()
        .into_iter()
        .zip([("psi", params.psi), ("b", b)])
    {
        if !(dv < JUNCTION_TOL && d1 < JUNCTION_TOL) {
            return Err(Error::certification(
                Clause::C1Join,
                format!("jump at {name} = {at:e}: value {dv:e}, slope {d1:e}"),
            ));
        }
    }

    let bridge_grid = uniform(params.psi, bridge.ramp_end(), VALIDATION_POINTS)
        .into_iter()
        .chain(uniform(bridge.ramp_end(), b, VALIDATION_POINTS))
        .filter(|&t| t > params.psi && t < b);
    for t in bridge_grid {
        let margin = profile.inner_concavity_margin(t);
        if !(margin >= 0.0) {
            return Err(Error::certification(
                Clause::InnerConcavity,
                format!("-R''/R < 4/r0^2 at t = {t:e} (margin {margin:e})"),
            ));
        }
    }

    for t in uniform(b, FRAC_PI_2, VALIDATION_POINTS)
        .into_iter()
        .filter(|&t| t > b)
    {
        let d2 = profile.outer_jet(t).d2;
        if !(d2 < 0.0) {
            return Err(Error::certification(
                Clause::OuterConcavity,
                format!("R'' = {d2:e} at t = {t}"),
            ));
        }
    }

    for t in uniform(0.0, FRAC_PI_2, VALIDATION_POINTS)
        .into_iter()
        .skip(1)
    {
        let v = profile.jet(t).v;
        if !(v > 0.0) {
            return Err(Error::certification(
                Clause::C1Join,
                format!("profile not positive at t = {t}: {v:e}"),
            ));
        }
    }
    Ok(profile)
}
