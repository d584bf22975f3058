//! Multiplicative spectral sequences computed page by page.
//!
//! A page is a subquotient Z/B of a presented bigraded algebra. Each
//! differential is given on generators, extended by the Leibniz rule, checked
//! to be well defined on the current page, and replaced by its homology.

mod compare;
mod page;
mod spec;
mod subquotient;

pub use compare::{einfty_compare, Comparison, GenRep, RepCheck, RepMap};
pub use page::{BigradedPage, Collapse, CollapseMethod, Convention, PageRecord, PageStatus};
pub use spec::{Assignment, Derivation, DifferentialSpec, Rule, Shift, SpecStatus};
pub use subquotient::{Bidegree, Ranks, Subquotient};
