pub mod arith;
pub mod chain_map;
pub mod complex;
pub mod error;
pub mod gen;
pub mod io;
pub mod linalg;
pub mod torsion;
pub mod ufd;

pub use error::{Error, Result};
