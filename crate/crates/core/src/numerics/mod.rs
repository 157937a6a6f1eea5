//! Scalar numerical building blocks shared by the analysis modules.

pub mod poly;
pub mod quad;
pub mod roots;
