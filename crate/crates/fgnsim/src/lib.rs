//! Batch front end for `fgnsim-core`: sweep specifications, CSV and SVG
//! output, and the self-validation suite behind `fgnsim validate`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod csv;
mod error;
pub mod svg;
pub mod sweep;
pub mod validate;

pub use error::{FgnError, Result};
