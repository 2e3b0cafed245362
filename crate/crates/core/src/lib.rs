//! Bell nonlocality toolkit for finite correlation scenarios.
//!
//! * [`scenario`] and [`behavior`]: scenarios, probability tables, marginals, nonsignaling checks.
//! * [`functional`]: Bell functionals, tight LHV constants by strategy enumeration, correlation forms.
//! * [`lp`]: dense exact/float simplex with dual values.
//! * [`nonlocality`]: γ as a minimum total-variation signed model, dual certificates,
//!   nonsignaling analogs of Bell inequalities.
//! * [`quantum`]: Born-rule behaviors and closed-form quantum bounds.
//! * [`document`] and [`cli`]: JSON documents and the command-line surface.

pub mod behavior;
pub mod cli;
pub mod document;
pub mod error;
pub mod functional;
pub mod lp;
pub mod nonlocality;
pub mod quantum;
pub mod scalar;
pub mod scenario;

pub use behavior::{deterministic_behavior, mix, pr_box, Behavior, DeterministicStrategy, NonsignalingReport};
pub use error::{Error, Result};
pub use functional::{builtin, BellFunctional, Builtin, CorrelationFunctional, LhvBounds};
pub use nonlocality::{analog_bounds, gamma, upsilon_family, GammaResult, SignedDistribution, SolveMode};
pub use scalar::{ratio, Entries, Mode, Rational, Value};
pub use scenario::Scenario;
