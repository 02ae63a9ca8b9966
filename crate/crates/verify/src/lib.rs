//! Acceptance suite for `sclkit`: seeded samplers, an independent float
//! oracle for the joint program, and one runner per acceptance criterion.

pub mod criteria;
pub mod oracle;
pub mod sample;

pub use criteria::{run_all, Outcome};
