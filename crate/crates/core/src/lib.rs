//! Irreducibility analysis for polynomial families `x^N c(1/x) + d(x)`.

pub mod arith;
pub(crate) mod bigstr;
pub mod error;
pub mod factor;
pub mod family;
pub mod heights;
pub mod hensel;
pub mod modp;
pub mod pipeline;
pub mod poly;
pub mod search;

pub use error::{Error, Result};
pub use poly::{Degree, IntPoly};
