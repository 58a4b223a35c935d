//! Exact valuations, discrepancies and jumping numbers for cone
//! singularities over polarized surfaces.
//!
//! The cone over `(S, L)` is resolved by blowing up its vertex; the single
//! exceptional divisor is the negative section, and every invariant here is
//! read off along it from the effectivity thresholds of the pencils
//! `s·L ∓ K_S`. All arithmetic is exact in `Q` or a real quadratic field.

pub mod cli;
pub mod config;
pub mod error;
pub mod exactnum;
pub mod plot;
pub mod presets;
pub mod report;
pub mod singularity;
pub mod surface;
pub mod threshold;

pub use error::{Error, Result};
pub use exactnum::{QuadNum, Rat};
