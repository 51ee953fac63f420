use thiserror::Error;

use crate::words::SignWord;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse {what} {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },

    #[error("{value} is outside {range}")]
    OutOfRange { value: String, range: &'static str },

    #[error("stream has no eventually periodic closed form")]
    NoClosedForm,

    #[error("endpoint {0} is not a dyadic rational")]
    NonDyadicEndpoint(String),

    #[error("ball {index} of the chain is not contained in ball {prev}", prev = .index - 1)]
    NotAChain { index: usize },

    #[error("{word} is not a member of the open being factored")]
    NotMember { word: SignWord },

    #[error(
        "no witness of the form {family} found within {bound} probes{}",
        if *.conclusive { " (the open fails the coequalizer condition)" } else { " (retry with a larger bound)" }
    )]
    WitnessBoundExhausted {
        family: String,
        bound: usize,
        /// True when the bound already exceeds the open's stabilization
        /// depth, so no larger bound can succeed.
        conclusive: bool,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
