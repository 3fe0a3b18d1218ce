//! Concept-bottleneck image classification with an adversarial
//! reconstruction path.
//!
//! A shared backbone feeds two heads: a linear classifier and a concept
//! encoder whose sigmoid scores both explain the prediction (through a
//! linear auxiliary classifier) and, concatenated with structured Gaussian
//! noise, drive a deconvolutional generator that reconstructs the input.
//! A VGG-style discriminator scores real against reconstructed images, and
//! the whole stack is trained jointly on a weighted sum of classification,
//! reconstruction, fidelity and adversarial terms.
//!
//! The numeric core is generic over the scalar type ([`Scalar`]); training
//! normally runs in `f32` while gradient checks instantiate the identical
//! code in `f64`.

pub mod config;
pub mod data;
pub mod error;
pub mod eval;
pub mod loss;
pub mod metrics;
pub mod model;
pub mod nn;
pub mod noise;
pub mod optim;
pub mod rng;
pub mod scalar;
pub mod train;
pub mod viz;

pub use error::{Error, Result};
pub use rng::{Rng, RngState};
pub use scalar::{Dtype, Scalar};

/// Scalar type used for ordinary training and evaluation.
pub type Real = f32;

/// Model instantiated at the default training precision.
pub type Model = model::ConceptGanModel<Real>;

/// Training state at the default training precision.
pub type TrainState = train::TrainState<Real>;
