//! Homology of a differential graded algebra given by generators.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Element, Presentation};
use crate::error::{invalid, Result};
use crate::specseq::{einfty_compare, Comparison, Derivation, DifferentialSpec, GenRep, Shift, Subquotient};

/// A presented algebra with a derivation of degree −1 given on generators.
/// Bigraded presentations are allowed; the shift says how d moves bidegrees.
#[derive(Clone, Debug)]
pub struct DGAlgebra {
    pub pres: Presentation,
    pub spec: DifferentialSpec,
    pub shift: Shift,
}

/// H(A, d) through a degree bound.
#[derive(Clone, Debug)]
pub struct DgaHomology {
    through: u32,
    sq: Subquotient,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DgaHomologyJson {
    pub through: u32,
    pub dims: Vec<usize>,
    /// Total degree ↦ representative cycles.
    pub representatives: BTreeMap<u32, Vec<String>>,
}

impl DGAlgebra {
    pub fn new(pres: Presentation, spec: DifferentialSpec) -> Self {
        DGAlgebra { pres, spec, shift: Shift::total() }
    }

    pub fn with_shift(mut self, shift: Shift) -> Self {
        self.shift = shift;
        self
    }

    /// Homology through total degree D. The algebra is built one degree
    /// higher so that every boundary landing in degree D is seen.
    pub fn homology(&self, max_degree: u32) -> Result<DgaHomology> {
        let alg = Algebra::new(self.pres.clone(), max_degree + 1)?;
        let mut sq = Subquotient::new(alg);
        let arc = sq.algebra_arc();
        let d = Derivation::new(&arc, &self.spec, self.shift)?;
        d.check_relations()?;
        d.check_square_zero()?;
        sq.apply(&d)?;
        Ok(DgaHomology { through: max_degree, sq })
    }
}

impl DgaHomology {
    pub fn through(&self) -> u32 {
        self.through
    }

    pub fn subquotient(&self) -> &Subquotient {
        &self.sq
    }

    pub fn algebra(&self) -> &Algebra {
        self.sq.algebra()
    }

    /// dim H_n for n ≤ D.
    pub fn dims(&self) -> Vec<usize> {
        self.sq.total_dims()[..=self.through as usize].to_vec()
    }

    pub fn representatives(&self, degree: u32) -> Vec<Element> {
        self.sq
            .bidegrees()
            .filter(|&(s, t)| s + t == degree)
            .collect::<Vec<_>>()
            .into_iter()
            .flat_map(|bd| self.sq.reps(bd))
            .collect()
    }

    /// Compares with a claimed presentation of the homology, optionally
    /// checking representatives and up to `max_pairs` products.
    pub fn compare(&self, claimed: &Algebra, reps: Option<&[(String, GenRep)]>, max_pairs: usize) -> Result<Comparison> {
        if claimed.max_degree() < self.through {
            return Err(invalid("claimed algebra is not computed far enough"));
        }
        einfty_compare(&self.sq, claimed, self.through, reps, max_pairs)
    }

    pub fn to_json(&self) -> DgaHomologyJson {
        let pres = self.algebra().presentation();
        let representatives = (0..=self.through)
            .map(|n| (n, self.representatives(n).iter().map(|e| pres.format_element(e)).collect::<Vec<_>>()))
            .filter(|(_, v)| !v.is_empty())
            .collect();
        DgaHomologyJson { through: self.through, dims: self.dims(), representatives }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::PrimeField;

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    #[test]
    fn koszul_complex_is_acyclic() {
        // E(e)⊗P(y), d(e) = y: homology is F_p in degree 0.
        let pres = Presentation::builder(f5()).ext("e", 3).poly("y", 2).build().unwrap();
        let dga = DGAlgebra::new(pres, DifferentialSpec::new(1).set("e", "y"));
        let h = dga.homology(20).unwrap();
        let mut want = vec![0; 21];
        want[0] = 1;
        assert_eq!(h.dims(), want);
    }

    #[test]
    fn truncation_at_the_top_degree() {
        // d(e) = y^5 kills y^5 and beyond; the top degree is still correct.
        let pres = Presentation::builder(f5()).ext("e", 11).poly("y", 2).build().unwrap();
        let dga = DGAlgebra::new(pres, DifferentialSpec::new(1).set("e", "y^5"));
        let h = dga.homology(10).unwrap();
        assert_eq!(h.dims(), vec![1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 0]);
        let json = h.to_json();
        assert_eq!(json.representatives[&8], vec!["y^4".to_string()]);
    }

    #[test]
    fn rejects_a_differential_that_does_not_square_to_zero() {
        let pres = Presentation::builder(f5()).ext("a", 1).poly("b", 2).ext("c", 3).build().unwrap();
        let dga = DGAlgebra::new(pres, DifferentialSpec::new(1).set("c", "b").set("b", "a"));
        assert!(dga.homology(6).is_err());
    }
}
