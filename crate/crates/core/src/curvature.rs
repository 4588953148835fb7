//! Closed-form curvature of `dt^2 + cos^2 t ds_1^2 + R^2(t) ds_{n-2}^2`.
//!
//! Everything is expressed through the ratios exposed by [`Warping`], so the
//! `t = 0` limits come from the profile rather than from `0/0`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::profile::{check_domain, Warping};

/// Curvature data at one value of `t`. Boundary quantities are present only
/// for `t <= r0`, where the boundary of the removed ball lives.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvatureSample {
    pub t: f64,
    #[serde(rename = "ric_TT")]
    pub ric_tt: f64,
    #[serde(rename = "ric_XX")]
    pub ric_xx: f64,
    #[serde(rename = "ric_SS")]
    pub ric_ss: f64,
    pub pc_circle: Option<f64>,
    pub pc_sphere: Option<f64>,
    #[serde(rename = "ki_YS")]
    pub ki_ys: Option<f64>,
    #[serde(rename = "ki_SS")]
    pub ki_ss: Option<f64>,
}

impl CurvatureSample {
    pub fn min_ricci(&self) -> f64 {
        self.ric_tt.min(self.ric_xx).min(self.ric_ss)
    }
}

fn check_dim(n: u32) -> Result<()> {
    if n >= 3 {
        Ok(())
    } else {
        Err(Error::config(format!(
            "dimension n must be at least 3, got {n}"
        )))
    }
}

fn check_boundary(r0: f64, t: f64) -> Result<()> {
    if !(r0 > 0.0 && r0 < std::f64::consts::FRAC_PI_2) {
        return Err(Error::domain(format!(
            "disc radius r0 = {r0} outside (0, pi/2)"
        )));
    }
    if !(0.0..=r0).contains(&t) {
        return Err(Error::domain(format!(
            "t = {t} is off the boundary sphere (t must lie in [0, r0 = {r0}])"
        )));
    }
    Ok(())
}

/// `(Ric(T,T), Ric(X,X), Ric(S,S))` on unit vectors.
pub fn ricci_components<W: Warping + ?Sized>(r: &W, n: u32, t: f64) -> Result<(f64, f64, f64)> {
    check_dim(n)?;
    check_domain(t)?;
    let k = (n - 2) as f64;
    let ncr = r.neg_curv_ratio(t);
    let lst = r.log_slope_tan(t);
    Ok((
        1.0 + k * ncr,
        1.0 + k * lst,
        ncr + lst + (n - 3) as f64 * r.deficit_ratio(t),
    ))
}

/// Principal curvatures of the boundary of the ball of radius `r0` (inward
/// normal): the circle family `-cot r0` and the sphere family
/// `-(R'/R) tan t cot r0`.
pub fn principal_curvatures<W: Warping + ?Sized>(r: &W, r0: f64, t: f64) -> Result<(f64, f64)> {
    check_boundary(r0, t)?;
    let c = 1.0 / r0.tan();
    Ok((-c, -r.log_slope_tan(t) * c))
}

/// Intrinsic sectional curvatures `(K(Y ^ S), K(S ^ S'))` of the boundary.
pub fn intrinsic_sectional<W: Warping + ?Sized>(r: &W, r0: f64, t: f64) -> Result<(f64, f64)> {
    check_boundary(r0, t)?;
    let c2 = (1.0 / r0.tan()).powi(2);
    let tt2 = t.tan().powi(2);
    let ki_ys = r.neg_curv_ratio(t) * (1.0 - c2 * tt2) + r.log_slope_tan(t) * c2 * (1.0 + tt2);
    let d1 = r.jet(t).d1;
    let ki_ss = r.deficit_ratio(t) + c2 * (d1 * r.tan_over_r(t)).powi(2);
    Ok((ki_ys, ki_ss))
}

pub fn sample<W: Warping + ?Sized>(r: &W, n: u32, r0: f64, t: f64) -> Result<CurvatureSample> {
    let (ric_tt, ric_xx, ric_ss) = ricci_components(r, n, t)?;
    let (pc, ki) = if t <= r0 {
        (
            Some(principal_curvatures(r, r0, t)?),
            Some(intrinsic_sectional(r, r0, t)?),
        )
    } else {
        (None, None)
    };
    Ok(CurvatureSample {
        t,
        ric_tt,
        ric_xx,
        ric_ss,
        pc_circle: pc.map(|p| p.0),
        pc_sphere: pc.map(|p| p.1),
        ki_ys: ki.map(|k| k.0),
        ki_ss: ki.map(|k| k.1),
    })
}

/// Samples at arbitrary parameter values.
pub fn curvature_samples<W: Warping + ?Sized>(
    r: &W,
    n: u32,
    r0: f64,
    ts: &[f64],
) -> Result<Vec<CurvatureSample>> {
    ts.iter().map(|&t| sample(r, n, r0, t)).collect()
}

/// Samples at the nodes of `grid`.
pub fn curvature_grid<W: Warping + ?Sized>(
    r: &W,
    n: u32,
    r0: f64,
    grid: &GridSpec,
) -> Result<Vec<CurvatureSample>> {
    grid.validate()?;
    curvature_samples(r, n, r0, &grid.nodes())
}

/// Sectional and Ricci values after rescaling the metric by `cot^2 r0`.
pub fn rescale_curvature(k: f64, r0: f64) -> f64 {
    k * r0.tan().powi(2)
}

/// Principal curvatures after rescaling the metric by `cot^2 r0`.
pub fn rescale_principal(k: f64, r0: f64) -> f64 {
    k * r0.tan()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::RoundSphere;

    #[test]
    fn round_sphere_is_einstein() {
        for n in [3, 4, 7, 12] {
            for &t in &[0.0, 1e-6, 0.3, 1.0, std::f64::consts::FRAC_PI_2] {
                let (a, b, c) = ricci_components(&RoundSphere, n, t).unwrap();
                let e = (n - 1) as f64;
                assert!((a - e).abs() < 1e-12 && (b - e).abs() < 1e-12 && (c - e).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn round_sphere_boundary_is_umbilic() {
        let r0: f64 = 0.07;
        let c = 1.0 / r0.tan();
        for &t in &[0.0, 0.01, 0.05, r0] {
            let (pc, ps) = principal_curvatures(&RoundSphere, r0, t).unwrap();
            assert!((pc + c).abs() < 1e-12 && (ps + c).abs() < 1e-12);
            let (ys, ss) = intrinsic_sectional(&RoundSphere, r0, t).unwrap();
            assert!((ss - (1.0 + c * c)).abs() < 1e-10 * c * c);
            assert!((ys - (1.0 + c * c)).abs() < 1e-10 * c * c);
        }
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(
            ricci_components(&RoundSphere, 3, -0.1),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            ricci_components(&RoundSphere, 2, 0.1),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            principal_curvatures(&RoundSphere, 0.05, 0.06),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            intrinsic_sectional(&RoundSphere, 0.05, 0.06),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn single_point_grid_at_the_top() {
        let samples =
            curvature_samples(&RoundSphere, 3, 0.05, &[std::f64::consts::FRAC_PI_2]).unwrap();
        assert_eq!(samples.len(), 1);
        assert!(samples[0].min_ricci().is_finite());
        assert!(samples[0].pc_sphere.is_none());
    }

    #[test]
    fn rescaling_sends_round_bounds_to_one() {
        let r0: f64 = 0.05;
        let c = 1.0 / r0.tan();
        assert!((rescale_principal(-c, r0) + 1.0).abs() < 1e-14);
        assert!((rescale_curvature(c * c, r0) - 1.0).abs() < 1e-14);
    }
}
