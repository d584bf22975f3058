//! Exact F_p computations for the algebraic side of topological Hochschild
//! homology of K(F_q): presented graded algebras, bar and Hochschild
//! complexes, minimal resolutions, dual Steenrod comodules and multiplicative
//! spectral sequence pages, all truncated at a degree bound.

pub mod algebra;
pub mod error;
pub mod fp;
pub mod homological;
pub mod ktheory;
pub mod report;
pub mod specseq;
pub mod steenrod;

pub use algebra::{Algebra, Element, GenKind, Generator, Monomial, PoincareSeries, Presentation};
pub use error::{EngineError, Result};
pub use ktheory::{classify, run_scenario, CaseParams};
pub use fp::{lucas_binomial, FpMatrix, PrimeField, Scalar};
pub use report::{Claim, Report};
