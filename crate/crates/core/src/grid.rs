use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    #[default]
    Uniform,
}

/// A sampling grid on a closed interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub points: usize,
    pub lo: f64,
    pub hi: f64,
    #[serde(default)]
    pub spacing: Spacing,
}

impl GridSpec {
    pub fn new(points: usize, lo: f64, hi: f64) -> Result<Self> {
        let g = GridSpec {
            points,
            lo,
            hi,
            spacing: Spacing::Uniform,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.points < 2 {
            return Err(Error::config(format!(
                "grid needs at least 2 points, got {}",
                self.points
            )));
        }
        if !(self.lo.is_finite() && self.hi.is_finite() && self.lo < self.hi) {
            return Err(Error::config(format!(
                "grid bounds must satisfy lo < hi, got [{}, {}]",
                self.lo, self.hi
            )));
        }
        Ok(())
    }

    /// Same resolution, different interval.
    pub fn with_bounds(&self, lo: f64, hi: f64) -> GridSpec {
        GridSpec { lo, hi, ..*self }
    }

    pub fn step(&self) -> f64 {
        (self.hi - self.lo) / (self.points - 1) as f64
    }

    /// Grid nodes, endpoints included exactly.
    pub fn nodes(&self) -> Vec<f64> {
        uniform(self.lo, self.hi, self.points)
    }
}

/// `count` uniformly spaced points on `[lo, hi]`, endpoints exact.
pub fn uniform(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let last = count - 1;
            (0..count)
                .map(|i| {
                    if i == last {
                        hi
                    } else {
                        lo + (hi - lo) * (i as f64 / last as f64)
                    }
                })
                .collect()
        }
    }
}

/// Merges several sorted point sets into one sorted, de-duplicated list.
pub fn merge(mut sets: Vec<Vec<f64>>) -> Vec<f64> {
    let mut all: Vec<f64> = sets.drain(..).flatten().filter(|x| x.is_finite()).collect();
    all.sort_by(f64::total_cmp);
    all.dedup();
    all
}

/// A uniform grid of `points` nodes on `[lo, hi]`, plus
/// `max(points / 10, 100)` extra nodes between every pair of consecutive
/// breakpoints (`lo`, the features inside `(lo, hi)`, `hi`), so narrow
/// features are resolved however coarse the base grid is.
pub fn refined(lo: f64, hi: f64, points: usize, features: &[f64]) -> Vec<f64> {
    let mut cuts: Vec<f64> = features
        .iter()
        .copied()
        .filter(|&f| f > lo && f < hi)
        .collect();
    cuts.push(lo);
    cuts.push(hi);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let extra = (points / 10).max(100);
    let mut sets = vec![uniform(lo, hi, points)];
    if cuts.len() > 2 {
        sets.extend(cuts.windows(2).map(|w| uniform(w[0], w[1], extra)));
    }
    merge(sets)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degenerate_grids() {
        assert!(GridSpec::new(1, 0.0, 1.0).is_err());
        assert!(GridSpec::new(10, 1.0, 1.0).is_err());
        assert!(GridSpec::new(10, 2.0, 1.0).is_err());
    }

    #[test]
    fn nodes_hit_both_endpoints() {
        let g = GridSpec::new(7, 0.25, 1.75).unwrap();
        let n = g.nodes();
        assert_eq!(n.len(), 7);
        assert_eq!(n[0], 0.25);
        assert_eq!(n[6], 1.75);
        assert!((g.step() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn refined_grid_resolves_narrow_features() {
        let g = refined(0.0, 1.0, 11, &[1e-9, 2e-9, 5.0]);
        assert_eq!(g[0], 0.0);
        assert_eq!(*g.last().unwrap(), 1.0);
        let inside = g.iter().filter(|&&x| x > 1e-9 && x < 2e-9).count();
        assert_eq!(inside, 98);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(refined(0.0, 1.0, 11, &[]), uniform(0.0, 1.0, 11));
    }

    #[test]
    fn merge_sorts_and_dedups() {
        let m = merge(vec![vec![0.0, 0.5, 1.0], vec![0.25, 0.5]]);
        assert_eq!(m, vec![0.0, 0.25, 0.5, 1.0]);
    }
}
