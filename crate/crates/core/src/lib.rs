//! Two-bridge knots through their reduced even continued fractions.
//!
//! - [`contfrac`]: continued fractions and the reduced even expansion.
//! - [`knot`]: knot and mirror classes with crossing number, braid index and
//!   genus.
//! - [`census`]: enumeration by crossing number and the closed-form counts.
//! - [`epim`]: epimorphisms between knot groups via interleavings.
//! - [`classify`]: closed-form minimality for braid index at most 4.
//! - [`report`]: Markdown, CSV, JSON and DOT output.

pub mod census;
pub mod classify;
pub mod contfrac;
pub mod epim;
pub mod error;
pub mod knot;
pub mod par;
pub mod rational;
pub mod report;

pub use contfrac::{EvenWord, IntWord};
pub use error::{Error, Result};
pub use knot::{KnotClass, MirrorClass};
pub use par::Parallelism;
pub use rational::Rational;
