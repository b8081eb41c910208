//! Symbolic descent calculus for enhanced L-parameters of classical groups
//! over local fields of characteristic zero.

pub mod cli;
pub mod descent;
pub mod epsilon;
pub mod error;
pub mod ggp;
pub mod hermitian;
pub mod local_field;
pub mod lparam;
pub mod model;
pub mod oracle;
pub mod random;
pub mod sign;
pub mod spectrum;

pub use error::{Error, Result};
pub use local_field::{LocalField, NormClassGroup, QuadExt, SquareClass};
pub use lparam::{Alphabet, EnhancedParameter, Parameter, SimpleSummand};
pub use model::Model;
pub use sign::Sign;
