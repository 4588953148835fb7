use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// A named requirement of the construction. Every certification failure
/// points at exactly one of these.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Clause {
    SquashBound,
    KappaBound,
    ZetaInterval,
    BumpLength,
    BumpDerivatives,
    DiscRadius,
    DiscDisjointness,
    Lemma2_2,
    Lemma2_3,
    Lemma2_4,
    Lemma2_5,
    Lemma2_6,
    BridgeInequality,
    Iota,
    SmoothingBudget,
    SmoothingParameter,
    C1Join,
    BridgeConcavity,
    InnerConcavity,
    OuterConcavity,
    Smoothing,
    RhoInterval,
}

impl Clause {
    /// Short identifier of the statement the clause comes from.
    pub fn anchor(self) -> &'static str {
        match self {
            Clause::SquashBound => "Definition 2.1(a)",
            Clause::KappaBound => "Definition 2.1(b)",
            Clause::ZetaInterval => "Definition 2.1(c)",
            Clause::BumpLength => "Definition 2.7 (Lambda > 1/R0)",
            Clause::BumpDerivatives => "Definition 2.7 (sup|gamma'|, sup|gamma''| < R0)",
            Clause::DiscRadius => "Definition 2.8",
            Clause::DiscDisjointness => "Proposition 2.19 (disjoint discs, r0 < pi/p)",
            Clause::Lemma2_2 => "Lemma 2.2",
            Clause::Lemma2_3 => "Lemma 2.3",
            Clause::Lemma2_4 => "Lemma 2.4",
            Clause::Lemma2_5 => "Lemma 2.5",
            Clause::Lemma2_6 => "Lemma 2.6",
            Clause::BridgeInequality => "Lemma 2.9 (*)",
            Clause::Iota => "Lemma 2.11",
            Clause::SmoothingBudget => "Lemma 2.12",
            Clause::SmoothingParameter => "Lemma 2.13 (mu in (0, mu0))",
            Clause::C1Join => "Lemma 2.9 (C1 join)",
            Clause::BridgeConcavity => "Lemma 2.9 (theta <= 0, theta'' <= 0)",
            Clause::InnerConcavity => "Lemma 2.9(iii)",
            Clause::OuterConcavity => "Lemma 2.10",
            Clause::Smoothing => "Lemma 2.13",
            Clause::RhoInterval => "Corollary 2.22 / Proposition 1.12",
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.anchor())
    }
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("certification failed at {clause}: {detail}")]
    Certification { clause: Clause, detail: String },
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub fn certification(clause: Clause, detail: impl Into<String>) -> Self {
        Error::Certification {
            clause,
            detail: detail.into(),
        }
    }

    /// The violated clause, if this is a certification failure.
    pub fn clause(&self) -> Option<Clause> {
        match self {
            Error::Certification { clause, .. } => Some(*clause),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
