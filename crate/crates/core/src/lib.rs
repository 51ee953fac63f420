//! Exact real arithmetic on `[-1,1]` by signed-digit streams, together with
//! the finitely generated opens of Cantor space and the maps relating them to
//! opens of the interval.

pub mod ball_iteration;
pub mod cantor_opens;
pub mod coeq;
pub mod dyadic;
pub mod error;
pub mod forall_c;
pub mod inverse_image;
pub mod report;
pub mod streams;
pub mod words;

pub use error::{Error, Result};
