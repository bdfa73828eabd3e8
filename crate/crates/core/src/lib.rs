#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod analysis;
pub mod error;
pub mod invariant;
pub mod matrix;
pub mod modular;
pub mod perm;
pub mod reduce;
pub mod sample;
pub mod scalar;
pub mod state;
pub mod symbolic;
pub mod tensor_rep;
pub mod tree;
pub mod tuple;

pub use error::{Error, Result};
pub use invariant::{eval_invariant, InvariantId};
pub use matrix::Matrix;
pub use perm::Permutation;
pub use scalar::{GaussianRational, Scalar};
pub use state::{DensityOperator, LocalUnitary, Role};
pub use tree::BinaryTree;
pub use tuple::PermTuple;
