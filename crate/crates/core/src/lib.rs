pub mod collapse;
pub mod constructions;
pub mod corpus;
pub mod cubic;
pub mod error;
pub mod gcover;
pub mod implication;
pub mod io;
pub mod order;
pub mod registry;
pub mod special;

pub use error::{Error, Result};
