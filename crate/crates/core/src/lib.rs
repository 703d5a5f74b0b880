//! Maximum quadratic assignment: the Adams–Johnson relaxation, its rounding,
//! a Label Cover reduction and exact oracles for small instances.
//!
//! ```
//! use maxqap::instance::{random_instance, WeightLaw};
//! use maxqap::lp::{solve_instance, Variant};
//! use maxqap::rounding::{best_of_k, derandomized_round};
//!
//! let inst = random_instance(6, WeightLaw::Uniform01, 3)?;
//! let sol = solve_instance(&inst, Variant::Equality)?;
//! let (best, _) = best_of_k(&inst, &sol, 42, 32)?;
//! let det = derandomized_round(&inst, &sol)?;
//! assert!(best.value <= sol.objective() + 1e-6 && det.value <= sol.objective() + 1e-6);
//! # Ok::<(), maxqap::Error>(())
//! ```

pub mod cli;
pub mod error;
pub mod formats;
pub mod instance;
pub mod labelcover;
pub mod lp;
pub mod matching;
pub mod oracle;
pub mod report;
pub mod rounding;
pub mod seed;
pub mod suite;

pub use error::{Error, Result};
