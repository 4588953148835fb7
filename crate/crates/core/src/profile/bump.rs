use serde::Serialize;

use crate::error::{Clause, Error, Result};
use crate::grid::uniform;
use crate::numeric::{smooth_step, Jet};

/// Resolution used to bound the derivatives of the unit step.
const STEP_SUP_POINTS: usize = 100_001;
const LENGTH_SAFETY: f64 = 1.1;

/// Monotone C-infinity cutoff: 1 on `(-inf, 0]`, 0 on `[length, inf)`.
///
/// Built as `gamma(x) = S(x / length)` from a fixed unit step `S`, so the
/// derivative bounds scale as `sup|S'| / length` and `sup|S''| / length^2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BumpFunction {
    /// Support length Lambda.
    pub length: f64,
    /// Grid supremum of `|S'|` for the unit step.
    pub unit_sup_d1: f64,
    /// Grid supremum of `|S''|` for the unit step.
    pub unit_sup_d2: f64,
}

impl BumpFunction {
    /// Cutoff of the given length; checks it against the squash bound.
    pub fn with_length(squash: f64, length: f64) -> Result<Self> {
        let (s1, s2) = unit_step_sups();
        let bump = BumpFunction {
            length,
            unit_sup_d1: s1,
            unit_sup_d2: s2,
        };
        if !(length > 1.0 / squash) {
            return Err(Error::certification(
                Clause::BumpLength,
                format!("Lambda = {length} must exceed 1/R0 = {}", 1.0 / squash),
            ));
        }
        if !(bump.sup_d1() < squash && bump.sup_d2() < squash) {
            return Err(Error::certification(
                Clause::BumpDerivatives,
                format!(
                    "sup|gamma'| = {}, sup|gamma''| = {} must both be < R0 = {squash}",
                    bump.sup_d1(),
                    bump.sup_d2()
                ),
            ));
        }
        Ok(bump)
    }

    pub fn eval(&self, x: f64) -> Jet {
        let s = smooth_step(x / self.length);
        let l = self.length;
        Jet::new(1.0 - s.v, -s.d1 / l, -s.d2 / (l * l))
    }

    pub fn sup_d1(&self) -> f64 {
        self.unit_sup_d1 / self.length
    }

    pub fn sup_d2(&self) -> f64 {
        self.unit_sup_d2 / (self.length * self.length)
    }
}

/// Builds the cutoff for squash factor `squash`, choosing the shortest
/// length the derivative bounds allow, with a 10% cushion.
pub fn build_gamma(squash: f64) -> Result<BumpFunction> {
    if !(squash > 0.0 && squash <= 0.1) {
        return Err(Error::config(format!(
            "R0 must lie in (0, 1/10], got {squash}"
        )));
    }
    let (s1, s2) = unit_step_sups();
    let length = (1.0 / squash + 1.0)
        .max(LENGTH_SAFETY * s1 / squash)
        .max(LENGTH_SAFETY * (s2 / squash).sqrt());
    BumpFunction::with_length(squash, length)
}

fn unit_step_sups() -> (f64, f64) {
    uniform(0.0, 1.0, STEP_SUP_POINTS)
        .into_iter()
        .map(smooth_step)
        .fold((0.0f64, 0.0f64), |(a, b), j| {
            (a.max(j.d1.abs()), b.max(j.d2.abs()))
        })
}
