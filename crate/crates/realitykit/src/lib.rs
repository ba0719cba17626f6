//! Measurement channels, quantum divergences, and reality quantifiers for
//! finite-dimensional density operators.

pub mod channels;
pub mod divergences;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod optim;
pub mod reality;
pub mod state;

pub use error::{Error, Result};
pub use harness::{HarnessConfig, PropertyReport};
pub use linalg::{CMatrix, CVector};
pub use state::{DensityOperator, Ensemble, ProjectiveObservable, SubsystemLayout};

/// Runs every code snippet in the guide and the README under
/// `cargo test --doc`, so neither can drift from the library.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}

    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}

    #[doc = include_str!("../../../book/src/states.md")]
    mod states {}

    #[doc = include_str!("../../../book/src/channels.md")]
    mod channels {}

    #[doc = include_str!("../../../book/src/divergences.md")]
    mod divergences {}

    #[doc = include_str!("../../../book/src/reality.md")]
    mod reality {}

    #[doc = include_str!("../../../book/src/harness.md")]
    mod harness {}

    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
