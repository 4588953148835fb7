//! Construction and numerical certification of a Ricci-positive metric on
//! a sphere with geodesic balls removed.
//!
//! The pipeline runs [`paramgen::select_params`] to fix the constants,
//! builds the warping profile in [`profile`], evaluates curvature in
//! [`curvature`] and the boundary geometry in [`boundary`], and collects
//! every named check into a [`verify::VerificationReport`].

pub mod boundary;
pub mod cli;
pub mod curvature;
pub mod error;
pub mod grid;
pub mod numeric;
pub mod paramgen;
pub mod profile;
pub mod verify;

pub use error::{Clause, Error, Result};
pub use grid::GridSpec;
pub use numeric::Jet;
pub use paramgen::{select_params, Overrides, ParamSet};
pub use profile::{ProfileC1, RoundSphere, SmoothProfile, Warping};
pub use verify::{run_pipeline, run_verification, CheckResult, VerificationReport};
