//! Chain complexes, Tor and Hochschild homology, free resolutions and the
//! homology of differential graded algebras.

mod bar;
mod complex;
mod dga;
mod explicit;
mod resolution;

pub use bar::{bar_cell_counts, bar_degree_within, hochschild_complex, tor_via_bar, CoefficientMap};
pub use complex::{dims_to_json, BigradedDims, ChainComplexGM, ComplexJson, DimJson, StageJson};
pub use dga::{DGAlgebra, DgaHomology};
pub use explicit::{case_four_resolution, truncated_quotient_algebra};
pub use resolution::{minimal_resolution, Exactness, FreeGenerator, FreeResolution};
