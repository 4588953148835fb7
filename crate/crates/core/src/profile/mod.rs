//! Warping functions `R(t)` on `[0, pi/2]`: the C1 three-piece profile, its
//! smoothing, and the round-sphere reference `sin t`.

pub mod assembled;
pub mod bridge;
pub mod bump;
pub mod smooth;

use std::f64::consts::FRAC_PI_2;

pub use assembled::{assemble_profile, Piece, ProfileC1};
pub use bridge::{build_bridge_theta, BridgeTheta};
pub use bump::{build_gamma, BumpFunction};
pub use smooth::{smooth_profile, SmoothProfile};

use crate::error::{Error, Result};
use crate::numeric::Jet;

/// A warping function `R` with the ratios curvature formulas need.
///
/// The default ratio methods divide by `R`; implementors override them where
/// a closed form is better conditioned or has a finite limit at `t = 0`.
pub trait Warping {
    /// `(R, R', R'')` at `t` in `[0, pi/2]`.
    fn jet(&self, t: f64) -> Jet;

    /// `-R''/R`.
    fn neg_curv_ratio(&self, t: f64) -> f64 {
        let j = self.jet(t);
        -j.d2 / j.v
    }

    /// `(R'/R) tan t`.
    fn log_slope_tan(&self, t: f64) -> f64 {
        let j = self.jet(t);
        j.d1 / j.v * t.tan()
    }

    /// `1 - R'^2`.
    fn slope_deficit(&self, t: f64) -> f64 {
        let d1 = self.jet(t).d1;
        (1.0 - d1) * (1.0 + d1)
    }

    /// `(1 - R'^2) / R^2`.
    fn deficit_ratio(&self, t: f64) -> f64 {
        let v = self.jet(t).v;
        self.slope_deficit(t) / (v * v)
    }

    /// `tan t / R`.
    fn tan_over_r(&self, t: f64) -> f64 {
        t.tan() / self.jet(t).v
    }

    /// `1 - (R'/R) tan t`.
    fn slope_tan_gap(&self, t: f64) -> f64 {
        1.0 - self.log_slope_tan(t)
    }

    /// `sin t - R`.
    fn sine_gap(&self, t: f64) -> f64 {
        t.sin() - self.jet(t).v
    }

    /// Points where the profile changes character (junctions, window
    /// edges); sampling grids are refined between consecutive features.
    fn features(&self) -> Vec<f64> {
        Vec::new()
    }
}

pub fn check_domain(t: f64) -> Result<()> {
    if (0.0..=FRAC_PI_2).contains(&t) {
        Ok(())
    } else {
        Err(Error::domain(format!("t = {t} lies outside [0, pi/2]")))
    }
}

/// `R(t) = sin t`: the round metric, used as a reference oracle.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RoundSphere;

impl Warping for RoundSphere {
    fn jet(&self, t: f64) -> Jet {
        Jet::new(t.sin(), t.cos(), -t.sin())
    }

    fn neg_curv_ratio(&self, _t: f64) -> f64 {
        1.0
    }

    fn log_slope_tan(&self, _t: f64) -> f64 {
        1.0
    }

    fn slope_deficit(&self, t: f64) -> f64 {
        t.sin().powi(2)
    }

    fn deficit_ratio(&self, _t: f64) -> f64 {
        1.0
    }

    fn tan_over_r(&self, t: f64) -> f64 {
        1.0 / t.cos()
    }

    fn slope_tan_gap(&self, _t: f64) -> f64 {
        0.0
    }

    fn sine_gap(&self, _t: f64) -> f64 {
        0.0
    }
}

/// `1 - x cot x`, accurate for small `x`.
pub(crate) fn one_minus_x_cot_x(x: f64) -> f64 {
    if x.abs() < 1e-2 {
        let x2 = x * x;
        x2 / 3.0 + x2 * x2 / 45.0 + 2.0 * x2 * x2 * x2 / 945.0
    } else {
        1.0 - x / x.tan()
    }
}

/// `tan x / x - 1`, accurate for small `x`.
pub(crate) fn tan_over_x_minus_one(x: f64) -> f64 {
    if x.abs() < 1e-2 {
        let x2 = x * x;
        x2 / 3.0 + 2.0 * x2 * x2 / 15.0 + 17.0 * x2 * x2 * x2 / 315.0
    } else {
        x.tan() / x - 1.0
    }
}

/// `sin t - sin(a t) / a`, accurate when `a t` is small.
pub(crate) fn sine_minus_scaled_sine(t: f64, a: f64) -> f64 {
    let at = a * t;
    if at.abs() < 1e-2 {
        let (a2, t2) = (a * a, t * t);
        let t3 = t2 * t;
        (a2 - 1.0) * t3 / 6.0 - (a2 * a2 - 1.0) * t3 * t2 / 120.0
            + (a2 * a2 * a2 - 1.0) * t3 * t2 * t2 / 5040.0
    } else {
        t.sin() - at.sin() / a
    }
}

impl<W: Warping + ?Sized> Warping for &W {
    fn jet(&self, t: f64) -> Jet {
        (**self).jet(t)
    }
    fn neg_curv_ratio(&self, t: f64) -> f64 {
        (**self).neg_curv_ratio(t)
    }
    fn log_slope_tan(&self, t: f64) -> f64 {
        (**self).log_slope_tan(t)
    }
    fn slope_deficit(&self, t: f64) -> f64 {
        (**self).slope_deficit(t)
    }
    fn deficit_ratio(&self, t: f64) -> f64 {
        (**self).deficit_ratio(t)
    }
    fn tan_over_r(&self, t: f64) -> f64 {
        (**self).tan_over_r(t)
    }
    fn slope_tan_gap(&self, t: f64) -> f64 {
        (**self).slope_tan_gap(t)
    }
    fn sine_gap(&self, t: f64) -> f64 {
        (**self).sine_gap(t)
    }
    fn features(&self) -> Vec<f64> {
        (**self).features()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_sphere_ratios_match_generic_formulas() {
        struct Plain;
        impl Warping for Plain {
            fn jet(&self, t: f64) -> Jet {
                RoundSphere.jet(t)
            }
        }
        for &t in &[0.1, 0.5, 1.0, 1.4] {
            assert!((Plain.neg_curv_ratio(t) - RoundSphere.neg_curv_ratio(t)).abs() < 1e-14);
            assert!((Plain.log_slope_tan(t) - RoundSphere.log_slope_tan(t)).abs() < 1e-13);
            assert!((Plain.deficit_ratio(t) - RoundSphere.deficit_ratio(t)).abs() < 1e-13);
            assert!((Plain.tan_over_r(t) - RoundSphere.tan_over_r(t)).abs() < 1e-12);
        }
    }

    #[test]
    fn series_helpers_match_direct_forms() {
        for &x in &[1e-3f64, 5e-3, 9.9e-3, 2e-2, 0.3] {
            assert!((one_minus_x_cot_x(x) - (1.0 - x / x.tan())).abs() < 1e-13);
            assert!((tan_over_x_minus_one(x) - (x.tan() / x - 1.0)).abs() < 1e-13);
        }
        let tiny = 1e-9;
        assert!((one_minus_x_cot_x(tiny) - tiny * tiny / 3.0).abs() < 1e-35);
        let a = 2.0 / 0.06;
        for &t in &[1e-10f64, 1e-6, 2.9e-4, 1e-2] {
            let direct = t.sin() - (a * t).sin() / a;
            let stable = sine_minus_scaled_sine(t, a);
            assert!(stable > 0.0);
            assert!(
                (stable - direct).abs() <= 1e-9 * stable + 4.0 * f64::EPSILON * t,
                "t={t}"
            );
        }
    }

    #[test]
    fn domain_is_closed_quarter_turn() {
        assert!(check_domain(0.0).is_ok());
        assert!(check_domain(FRAC_PI_2).is_ok());
        assert!(check_domain(-1e-12).is_err());
        assert!(check_domain(1.6).is_err());
    }
}
