//! Exact 2-adic spectral computations on the tame-level-1 eigencurve.
//!
//! The crate covers q-expansion arithmetic and Hecke/`U_p` operators on small
//! spaces of classical modular forms, Newton-polygon slope extraction, the
//! weight-space coordinate `w = kappa(5) - 1`, a value model of eigencurve
//! points over the boundary annulus `0 < v(w) < 3`, and a planner/checker for
//! annulus-walk ("ping pong") certificates.

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod linalg;
pub mod padic;
pub mod qseries;
pub mod rational;
pub mod spaces;
pub mod weightspace;
pub mod eigencurve;
pub mod pingpong;
pub mod overconvergent;
pub mod fixtures;
pub mod cache;
pub mod cli;

pub use error::{Error, Result};
pub use padic::{newton_slopes, val, NewtonPolygon, RootValuations, Valuation};
pub use qseries::{standard_series, QSeries, StandardSeries};
pub use rational::Q;
