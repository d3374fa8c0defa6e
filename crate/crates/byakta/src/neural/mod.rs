//! Minimal differentiable tensor kernel: shaped float arrays, a recorded
//! computation graph with reverse-mode gradients, finite-difference
//! verification, and Adam.
//!
//! Training runs at single precision; gradient checking instantiates the
//! same generic ops at double precision.

mod gradcheck;
mod graph;
mod optim;
mod tensor;

pub use gradcheck::grad_check;
pub use graph::{Graph, NodeId, PadMode};
pub use optim::{adam_step, OptimizerState, Param, ParameterSet};
pub use tensor::{Scalar, Tensor};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum NeuralError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("non-finite value produced by {0}")]
    NonFinite(String),
    #[error("missing gradient for parameter {0}")]
    MissingGradient(String),
    #[error("token id {id} out of range for embedding with {rows} rows")]
    IdOutOfRange { id: u32, rows: usize },
}
