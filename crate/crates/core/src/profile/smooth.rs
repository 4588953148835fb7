//! Smoothing of the C1 profile at the outer junction `b`.
//!
//! Right of `b` the second derivative is blended from the bridge
//! continuation `L''` to the outer `O''` over a width `w`:
//! `D'' = (L'' - O'')(1 - h(x/w))`, `x = t - b`, with `D(0) = D'(0) = 0`.
//! Because `O` and `L` already agree to first order at `b`, `O + D` matches
//! `L` to all orders there. Past `x = w`, `D` is linear; a second step `H`
//! over `[w, mu]` fades it out, so `R = O + D (1 - H)` equals the C1 profile
//! from `b + mu` on. The inner junction needs no work: the bridge is flat to
//! all orders at `psi`.

use super::{check_domain, ProfileC1, Warping};
use crate::error::{Clause, Error, Result};
use crate::grid::{merge, uniform};
use crate::numeric::{integrate, smooth_step, smooth_step_complement, Jet};

/// Maximum number of width halvings before giving up.
pub const MAX_HALVINGS: u32 = 40;
const WINDOW_CHECK_POINTS: usize = 4001;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmoothProfile {
    pub base: ProfileC1,
    pub mu: f64,
    /// Width `w` of the second-derivative blend.
    pub width: f64,
    /// `int_0^w D''`: slope offset carried by the linear part of `D`.
    pub slope_offset: f64,
    /// `int_0^w s D''(s) ds`.
    pub moment: f64,
}

/// Outcome of the window checks for one candidate width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowMargins {
    /// `min (-R''/R - (1 - mu))` on `[b, b + mu]`.
    pub concavity: f64,
    /// `min (mu - |R'/R - R_c'/R_c|)` on the window.
    pub log_slope: f64,
    /// `min -R''` on the window.
    pub second_derivative: f64,
    /// `min 1 - (R'/R) tan t` on the window.
    pub slope_tan: f64,
}

impl WindowMargins {
    fn all_positive(&self) -> bool {
        self.concavity > 0.0
            && self.log_slope > 0.0
            && self.second_derivative > 0.0
            && self.slope_tan > 0.0
    }
}

impl SmoothProfile {
    fn b(&self) -> f64 {
        self.base.bridge.b
    }

    /// The two smoothing windows `(psi - mu, psi)` and `(b, b + mu)`.
    pub fn windows(&self) -> [(f64, f64); 2] {
        let psi = self.base.params.psi;
        [(psi - self.mu, psi), (self.b(), self.b() + self.mu)]
    }

    pub fn in_right_window(&self, t: f64) -> bool {
        t >= self.b() && t < self.b() + self.mu
    }

    pub fn eval(&self, t: f64) -> Result<Jet> {
        check_domain(t)?;
        Ok(self.jet(t))
    }

    fn blend_kernel(&self, x: f64) -> f64 {
        let t = self.b() + x;
        let gap = self.base.bridge_extension(t).d2 - self.base.outer_jet(t).d2;
        gap * smooth_step_complement(x / self.width)
    }

    /// `(D, D', D'')` at offset `x >= 0`.
    fn correction(&self, x: f64) -> Jet {
        if x >= self.width {
            return Jet::new(x * self.slope_offset - self.moment, self.slope_offset, 0.0);
        }
        let tol = 1e-18 * self.slope_offset.abs().max(f64::MIN_POSITIVE);
        let d1 = integrate(|s| self.blend_kernel(s), 0.0, x, tol);
        let d0 = integrate(|s| (x - s) * self.blend_kernel(s), 0.0, x, tol * x);
        Jet::new(d0, d1, self.blend_kernel(x))
    }

    /// `(O, R - O, R' - O', R'' - O'')` on the right window.
    fn window_parts(&self, t: f64) -> (Jet, Jet) {
        let x = t - self.b();
        let fade_len = self.mu - self.width;
        let d = self.correction(x);
        let fade = smooth_step((x - self.width) / fade_len);
        let keep = 1.0 - fade.v;
        let h1 = fade.d1 / fade_len;
        let h2 = fade.d2 / (fade_len * fade_len);
        let extra = Jet::new(
            d.v * keep,
            d.d1 * keep - d.v * h1,
            d.d2 * keep - 2.0 * d.d1 * h1 - d.v * h2,
        );
        (self.base.outer_jet(t), extra)
    }

    /// `R'/R - R_c'/R_c` where `R_c` is the C1 profile; zero outside the
    /// right window.
    pub fn log_slope_gap(&self, t: f64) -> f64 {
        if !self.in_right_window(t) {
            return 0.0;
        }
        let (o, e) = self.window_parts(t);
        let r = o.v + e.v;
        (e.d1 * o.v - o.d1 * e.v) / (r * o.v)
    }

    /// `R - O` where `O` is the outer formula; zero off the right window.
    pub fn outer_excess(&self, t: f64) -> f64 {
        if !self.in_right_window(t) {
            return 0.0;
        }
        self.window_parts(t).1.v
    }

    /// Margins of the window conditions at the current width.
    pub fn window_margins(&self) -> WindowMargins {
        let b = self.b();
        let near: Vec<f64> = (0..64)
            .map(|k| b + self.width * 2f64.powf(k as f64 / 4.0 - 2.0))
            .filter(|&t| t < b + self.mu)
            .collect();
        let grid = merge(vec![uniform(b, b + self.mu, WINDOW_CHECK_POINTS), near]);
        let mut m = WindowMargins {
            concavity: f64::INFINITY,
            log_slope: f64::INFINITY,
            second_derivative: f64::INFINITY,
            slope_tan: f64::INFINITY,
        };
        for t in grid.into_iter().filter(|&t| self.in_right_window(t)) {
            m.concavity = m.concavity.min(self.neg_curv_ratio(t) - (1.0 - self.mu));
            m.log_slope = m.log_slope.min(self.mu - self.log_slope_gap(t).abs());
            m.second_derivative = m.second_derivative.min(-self.jet(t).d2);
            m.slope_tan = m.slope_tan.min(1.0 - self.log_slope_tan(t));
        }
        m
    }

    fn with_width(base: &ProfileC1, mu: f64, width: f64) -> SmoothProfile {
        let mut sp = SmoothProfile {
            base: *base,
            mu,
            width,
            slope_offset: 0.0,
            moment: 0.0,
        };
        let scale = sp.blend_kernel(0.0).abs().max(f64::MIN_POSITIVE);
        sp.slope_offset = integrate(|s| sp.blend_kernel(s), 0.0, width, 1e-18 * scale * width);
        sp.moment = integrate(
            |s| s * sp.blend_kernel(s),
            0.0,
            width,
            1e-18 * scale * width * width,
        );
        sp
    }
}

impl Warping for SmoothProfile {
    fn jet(&self, t: f64) -> Jet {
        if !self.in_right_window(t) {
            return self.base.jet(t);
        }
        let (o, e) = self.window_parts(t);
        Jet::new(o.v + e.v, o.d1 + e.d1, o.d2 + e.d2)
    }

    fn neg_curv_ratio(&self, t: f64) -> f64 {
        if !self.in_right_window(t) {
            return self.base.neg_curv_ratio(t);
        }
        if t == self.b() {
            let l = self.base.bridge_extension(t);
            return -l.d2 / l.v;
        }
        let (o, e) = self.window_parts(t);
        (self.base.neg_curv_ratio(t) * o.v - e.d2) / (o.v + e.v)
    }

    fn log_slope_tan(&self, t: f64) -> f64 {
        if !self.in_right_window(t) {
            return self.base.log_slope_tan(t);
        }
        let j = self.jet(t);
        j.d1 / j.v * t.tan()
    }

    fn slope_deficit(&self, t: f64) -> f64 {
        if !self.in_right_window(t) {
            return self.base.slope_deficit(t);
        }
        let d1 = self.jet(t).d1;
        (1.0 - d1) * (1.0 + d1)
    }

    fn deficit_ratio(&self, t: f64) -> f64 {
        if !self.in_right_window(t) {
            return self.base.deficit_ratio(t);
        }
        self.slope_deficit(t) / self.jet(t).v.powi(2)
    }

    fn tan_over_r(&self, t: f64) -> f64 {
        if !self.in_right_window(t) {
            return self.base.tan_over_r(t);
        }
        t.tan() / self.jet(t).v
    }

    fn slope_tan_gap(&self, t: f64) -> f64 {
        if !self.in_right_window(t) {
            return self.base.slope_tan_gap(t);
        }
        1.0 - self.log_slope_tan(t)
    }

    fn sine_gap(&self, t: f64) -> f64 {
        if !self.in_right_window(t) {
            return self.base.sine_gap(t);
        }
        t.sin() - self.jet(t).v
    }

    fn features(&self) -> Vec<f64> {
        let mut f = self.base.features();
        let [(l0, _), (_, r1)] = self.windows();
        f.extend([l0, self.b() + self.width, r1]);
        f.sort_by(f64::total_cmp);
        f
    }
}

/// Smooths `base` at its outer junction with budget `mu`.
///
/// Starts from the widest blend the window conditions tolerate to leading
/// order and halves it until every window margin is positive.
pub fn smooth_profile(base: &ProfileC1, mu: f64) -> Result<SmoothProfile> {
    let mu0 = base.params.mu0;
    if !(mu > 0.0 && mu < mu0) {
        return Err(Error::certification(
            Clause::SmoothingParameter,
            format!("mu = {mu:e} must lie in (0, mu0 = {mu0:e})"),
        ));
    }
    let b = base.bridge.b;
    let gap = (base.bridge_extension(b).d2 - base.outer_jet(b).d2).abs();
    let rb = base.outer_jet(b).v;
    let mut width = if gap > 0.0 {
        (0.25 * mu).min(mu * mu * rb / (16.0 * gap))
    } else {
        0.25 * mu
    };
    let mut last = None;
    for _ in 0..=MAX_HALVINGS {
        let sp = SmoothProfile::with_width(base, mu, width);
        let margins = sp.window_margins();
        if margins.all_positive() {
            return Ok(sp);
        }
        last = Some(margins);
        width *= 0.5;
    }
    Err(Error::certification(
        Clause::Smoothing,
        format!("window conditions still fail after {MAX_HALVINGS} halvings: {last:?}"),
    ))
}
