use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, EngineError, Result};
use crate::fp::{FpMatrix, PrimeField, QuotientSpace, Scalar, Subspace};

pub type BigradedDims = BTreeMap<(u32, u32), usize>;

/// A bigraded chain complex of F_p vector spaces. Stage s in internal degree
/// t has a labelled basis; d lowers s by one and preserves t.
#[derive(Clone, Debug)]
pub struct ChainComplexGM {
    field: PrimeField,
    stages: BTreeMap<(u32, u32), Vec<String>>,
    // (s, t) ↦ matrix of C_{s,t} → C_{s−1,t}; absent means zero.
    diffs: BTreeMap<(u32, u32), FpMatrix>,
    ranks: BTreeMap<(u32, u32), usize>,
}

impl ChainComplexGM {
    /// Validates shapes and d∘d = 0.
    pub fn new(
        field: PrimeField,
        stages: BTreeMap<(u32, u32), Vec<String>>,
        diffs: BTreeMap<(u32, u32), FpMatrix>,
    ) -> Result<Self> {
        let dim = |k: (u32, u32)| stages.get(&k).map_or(0, Vec::len);
        for (&(s, t), m) in &diffs {
            if s == 0 {
                return Err(invalid("stage 0 has no outgoing differential"));
            }
            if m.cols() != dim((s, t)) || m.rows() != dim((s - 1, t)) {
                return Err(invalid(format!(
                    "differential at ({s},{t}) is {}×{}, expected {}×{}",
                    m.rows(),
                    m.cols(),
                    dim((s - 1, t)),
                    dim((s, t))
                )));
            }
        }
        for (&(s, t), m) in &diffs {
            if let Some(m2) = diffs.get(&(s - 1, t)) {
                if !m2.mul(m).is_zero() {
                    return Err(EngineError::NotSquareZero(format!("d∘d ≠ 0 leaving bidegree ({s},{t})")));
                }
            }
        }
        let ranks = diffs.iter().map(|(&k, m)| (k, m.rank())).collect();
        Ok(ChainComplexGM { field, stages, diffs, ranks })
    }

    /// Recomputes d∘d on every pair of composable differentials.
    pub fn check_square_zero(&self) -> bool {
        self.diffs
            .iter()
            .all(|(&(s, t), m)| s == 0 || self.diffs.get(&(s - 1, t)).is_none_or(|m2| m2.mul(m).is_zero()))
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self, s: u32, t: u32) -> usize {
        self.stages.get(&(s, t)).map_or(0, Vec::len)
    }

    pub fn labels(&self, s: u32, t: u32) -> &[String] {
        self.stages.get(&(s, t)).map_or(&[], Vec::as_slice)
    }

    pub fn bidegrees(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.stages.keys().copied()
    }

    pub fn differential(&self, s: u32, t: u32) -> Option<&FpMatrix> {
        self.diffs.get(&(s, t))
    }

    fn rank(&self, s: u32, t: u32) -> usize {
        self.ranks.get(&(s, t)).copied().unwrap_or(0)
    }

    pub fn homology_dim(&self, s: u32, t: u32) -> usize {
        self.dim(s, t) - self.rank(s, t) - self.rank(s + 1, t)
    }

    /// Nonzero homology dimensions.
    pub fn homology_dims(&self) -> BigradedDims {
        self.stages
            .keys()
            .map(|&(s, t)| ((s, t), self.homology_dim(s, t)))
            .filter(|&(_, d)| d > 0)
            .collect()
    }

    /// Homology by total degree s + t, 0..=max_total.
    pub fn total_homology(&self, max_total: u32) -> Vec<usize> {
        let mut out = vec![0; max_total as usize + 1];
        for ((s, t), d) in self.homology_dims() {
            if s + t <= max_total {
                out[(s + t) as usize] += d;
            }
        }
        out
    }

    /// Σ_s (−1)^s dim C_{s,t} = Σ_s (−1)^s dim H_{s,t} for every internal degree t.
    pub fn euler_check(&self) -> bool {
        let mut chain: BTreeMap<u32, i64> = BTreeMap::new();
        let mut hom: BTreeMap<u32, i64> = BTreeMap::new();
        for &(s, t) in self.stages.keys() {
            let sign = if s % 2 == 0 { 1 } else { -1 };
            *chain.entry(t).or_insert(0) += sign * self.dim(s, t) as i64;
            *hom.entry(t).or_insert(0) += sign * self.homology_dim(s, t) as i64;
        }
        chain == hom
    }

    fn cycles(&self, s: u32, t: u32) -> Subspace {
        let n = self.dim(s, t);
        match self.diffs.get(&(s, t)) {
            None => Subspace::full(self.field, n),
            Some(m) => Subspace::from_vectors(self.field, n, crate::fp::rank_and_kernel(m).1),
        }
    }

    fn boundaries(&self, s: u32, t: u32) -> Subspace {
        let n = self.dim(s, t);
        match self.diffs.get(&(s + 1, t)) {
            None => Subspace::zero(self.field, n),
            Some(m) => Subspace::from_vectors(self.field, n, (0..m.cols()).map(|j| m.column(j))),
        }
    }

    /// Representatives of a homology basis at (s, t).
    pub fn homology_basis(&self, s: u32, t: u32) -> Vec<Vec<Scalar>> {
        QuotientSpace::new(&self.cycles(s, t), &self.boundaries(s, t)).reps().to_vec()
    }

    /// A vector as a signed sum of basis labels.
    pub fn describe(&self, s: u32, t: u32, v: &[Scalar]) -> String {
        let p = self.field.p();
        let parts: Vec<String> = self
            .labels(s, t)
            .iter()
            .zip(v)
            .filter(|(_, &c)| c != 0)
            .map(|(l, &c)| match c {
                1 => l.clone(),
                c if c == p - 1 => format!("-{l}"),
                c => format!("{c}*{l}"),
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            p: self.field.p(),
            stages: self
                .stages
                .iter()
                .map(|(&(s, t), labels)| StageJson { s, t, labels: labels.clone() })
                .collect(),
            homology: self.homology_dims().into_iter().map(|((s, t), dim)| DimJson { s, t, dim }).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageJson {
    pub s: u32,
    pub t: u32,
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimJson {
    pub s: u32,
    pub t: u32,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub p: u32,
    pub stages: Vec<StageJson>,
    pub homology: Vec<DimJson>,
}

pub fn dims_to_json(dims: &BigradedDims) -> Vec<DimJson> {
    dims.iter().map(|(&(s, t), &dim)| DimJson { s, t, dim }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    #[test]
    fn bar_complex_squares_to_zero() {
        use crate::algebra::{Algebra, Presentation};
        use crate::homological::{hochschild_complex, CoefficientMap};
        let alg = Algebra::new(Presentation::builder(f5()).ext("x", 3).poly("y", 4).build().unwrap(), 16).unwrap();
        let cx = hochschild_complex(&alg, &CoefficientMap::identity(&alg).unwrap(), 16).unwrap();
        assert!(cx.check_square_zero());
    }

    #[test]
    fn rejects_nonzero_square() {
        let f = f5();
        let mut stages = BTreeMap::new();
        for s in 0..3 {
            stages.insert((s, 0), vec![format!("e{s}")]);
        }
        let one = FpMatrix::identity(f, 1);
        let mut diffs = BTreeMap::new();
        diffs.insert((1, 0), one.clone());
        diffs.insert((2, 0), one);
        assert!(matches!(ChainComplexGM::new(f, stages, diffs), Err(EngineError::NotSquareZero(_))));
    }

    #[test]
    fn homology_of_a_short_complex() {
        let f = f5();
        let mut stages = BTreeMap::new();
        stages.insert((0, 2), vec!["a".to_string(), "b".to_string()]);
        stages.insert((1, 2), vec!["c".to_string()]);
        let mut diffs = BTreeMap::new();
        diffs.insert((1, 2), FpMatrix::from_columns(f, 2, &[vec![1, 4]]));
        let c = ChainComplexGM::new(f, stages, diffs).unwrap();
        assert_eq!(c.homology_dim(0, 2), 1);
        assert_eq!(c.homology_dim(1, 2), 0);
        assert!(c.euler_check());
        let basis = c.homology_basis(0, 2);
        assert_eq!(basis.len(), 1);
        assert_eq!(c.describe(1, 2, &[1]), "c");
    }
}
