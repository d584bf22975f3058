//! The dual Steenrod algebra A_* at an odd prime, left A_*-comodule algebras
//! with coactions given on generators, and their primitives.

mod comodule;
mod dual;
mod models;
mod tensor;

pub use comodule::{regular_comodule, CoactionTerm, Comodule, ComoduleJson, GeneratorCoaction};
pub use dual::DualSteenrod;
pub use models::{homology_of_k_comodule, v1_thh_comodule};
pub use tensor::Tensor;
