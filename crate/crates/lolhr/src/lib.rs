//! Local Latin hypercube refinement (LoLHR) for multi-objective
//! reliability-based robust design optimization.
//!
//! The library combines
//!
//! * probability distributions and problem definitions ([`dist`], [`problem`]),
//! * Latin hypercube and orthogonal sampling with simulated-annealing
//!   optimization ([`sampling`]),
//! * Gaussian process and epsilon-SVR surrogates ([`surrogate`]),
//! * Monte Carlo and directional-sampling reliability estimators
//!   ([`reliability`]),
//! * NSGA-II multi-objective search with a penalty-based probabilistic
//!   constraint and hypervolume evaluation ([`moo`]),
//! * the sequential refinement engine that clusters the predicted region of
//!   interest and fills it with locally optimized Latin hypercubes
//!   ([`refine`]),
//! * built-in analytic benchmark problems and baseline strategies ([`bench`]).
//!
//! All numeric kernels are generic over the scalar type through the
//! [`Scalar`] trait; `f64` aliases for the common containers are exported at
//! the crate root and are what the benchmark and CLI layers use.

pub mod assess;
pub mod bench;
pub mod dataset;
pub mod dist;
pub mod error;
pub mod linalg;
pub mod moo;
pub mod problem;
pub mod record;
pub mod refine;
pub mod reliability;
pub mod response;
pub mod sampling;
mod scalar;
pub mod surrogate;

pub use error::{Error, Result};
pub use scalar::Scalar;

/// Default scalar type used by the benchmark problems and the CLI.
pub type Real = f64;
/// Dense matrix of [`Real`] values (rows are samples, columns are dimensions).
pub type Matrix = ndarray::Array2<Real>;
/// Dense vector of [`Real`] values.
pub type Vector = ndarray::Array1<Real>;
