//! File formats, verification reports and the command line front end for
//! [`qdgg_core`].

pub mod cli;
pub mod error;
pub mod family;
pub mod format;
pub mod table;
pub mod verify;

pub use error::{CliError, Result};
pub use family::{Built, Family};
