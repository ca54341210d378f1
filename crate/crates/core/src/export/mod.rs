//! Model files and solver encodings.

pub mod dimacs;
pub mod model_file;
pub mod tptp;

pub use dimacs::{parse_dimacs_solution, to_dimacs, DimacsError, DimacsSolution, VarMap};
pub use model_file::{parse_model, serialize_model, ModelFileError};
pub use tptp::{to_tptp, TptpError};
