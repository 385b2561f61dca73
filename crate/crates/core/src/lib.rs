//! Derivative descendants and ascendants of extended binary cyclic codes,
//! and derivative soft-decision decoding built on them.

pub mod bits;
pub mod codealg;
pub mod ddcodec;
pub mod decoders;
pub mod derivative;
pub mod error;
pub mod gf2m;
pub mod llr;
pub mod poly;
pub mod sim;

pub use error::{Error, Result};
