//! Free resolutions of F_p over a connected graded algebra.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::complex::{BigradedDims, ChainComplexGM};
use crate::algebra::{Algebra, Element, Monomial};
use crate::error::{invalid, EngineError, Result};
use crate::fp::{rank_and_kernel, FpMatrix, Scalar, Subspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeGenerator {
    pub name: String,
    /// Internal degree.
    pub degree: u32,
    /// d(g) = Σ coefficient · (generator of the previous stage, by index).
    pub boundary: Vec<(usize, Element)>,
}

/// A complex of free modules F_s → F_{s−1} → … → F_0 → F_p, where F_0 is
/// free on one generator in degree 0 mapping to 1. Module differentials are
/// A-linear without extra signs.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    alg: Arc<Algebra>,
    stages: Vec<Vec<FreeGenerator>>,
}

/// Result of an exactness check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exactness {
    pub through_total: u32,
    /// (s, t) of every bidegree with homology, and its dimension.
    pub failures: Vec<(u32, u32, usize)>,
}

impl Exactness {
    pub fn exact(&self) -> bool {
        self.failures.is_empty()
    }
}

impl FreeResolution {
    /// Starts with F_0 = A·ι, ι ↦ 1.
    pub fn new(alg: Arc<Algebra>) -> Self {
        let unit = FreeGenerator { name: "1".into(), degree: 0, boundary: Vec::new() };
        FreeResolution { alg, stages: vec![vec![unit]] }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }

    pub fn stage(&self, s: usize) -> &[FreeGenerator] {
        self.stages.get(s).map_or(&[], Vec::as_slice)
    }

    /// Adds a generator to stage s; its boundary refers to stage s − 1.
    pub fn add_generator(&mut self, s: usize, name: &str, degree: u32, boundary: &[(&str, &str)]) -> Result<()> {
        if s == 0 || s > self.stages.len() {
            return Err(invalid(format!("cannot add to stage {s}")));
        }
        let prev = &self.stages[s - 1];
        let mut b = Vec::new();
        for (target, coef) in boundary {
            let j = prev
                .iter()
                .position(|g| g.name == *target)
                .ok_or_else(|| invalid(format!("stage {} has no generator {target:?}", s - 1)))?;
            let c = self.alg.parse(coef)?;
            for (m, _) in c.terms() {
                if self.alg.presentation().degree(m) + prev[j].degree != degree {
                    return Err(EngineError::Bidegree(format!(
                        "term {coef}·{target} in d({name}) has internal degree {}, expected {degree}",
                        self.alg.presentation().degree(m) + prev[j].degree
                    )));
                }
            }
            b.push((j, c));
        }
        if s == self.stages.len() {
            self.stages.push(Vec::new());
        }
        self.stages[s].push(FreeGenerator { name: name.into(), degree, boundary: b });
        Ok(())
    }

    /// Basis of F_{s,t}: pairs (generator, algebra monomial).
    pub fn basis(&self, s: usize, t: u32) -> Vec<(usize, Monomial)> {
        let mut out = Vec::new();
        for (j, g) in self.stage(s).iter().enumerate() {
            if g.degree <= t && t - g.degree <= self.alg.max_degree() {
                for m in self.alg.basis(t - g.degree) {
                    out.push((j, m.clone()));
                }
            }
        }
        out
    }

    fn coordinates(&self, s: usize, t: u32, terms: &[(usize, Element)]) -> Vec<Scalar> {
        let basis = self.basis(s, t);
        let f = self.alg.field();
        let pos: std::collections::HashMap<(usize, Monomial), usize> = basis.into_iter().zip(0..).collect();
        let mut v = vec![0; pos.len()];
        for (j, e) in terms {
            for (m, c) in e.terms() {
                let i = pos[&(*j, m.clone())];
                v[i] = f.add(v[i], c);
            }
        }
        v
    }

    /// Matrix of F_{s,t} → F_{s−1,t}; for s = 0 the augmentation to F_p.
    pub fn differential_matrix(&self, s: usize, t: u32) -> FpMatrix {
        let f = self.alg.field();
        let src = self.basis(s, t);
        if s == 0 {
            let mut m = FpMatrix::zeros(f, usize::from(t == 0), src.len());
            if t == 0 {
                m.set(0, 0, 1);
            }
            return m;
        }
        let rows = self.basis(s - 1, t).len();
        let cols: Vec<Vec<Scalar>> = src
            .iter()
            .map(|(j, m)| {
                let am = Element::from_monomial(m.clone(), 1);
                let terms: Vec<(usize, Element)> = self.stages[s][*j]
                    .boundary
                    .iter()
                    .map(|(i, c)| (*i, self.alg.mul(&am, c)))
                    .collect();
                self.coordinates(s - 1, t, &terms)
            })
            .collect();
        FpMatrix::from_columns(f, rows, &cols)
    }

    /// d∘d = 0 in every internal degree ≤ D (including the augmentation).
    pub fn check_square_zero(&self, max_degree: u32) -> Result<()> {
        for s in 1..self.stages.len() {
            for t in 0..=max_degree {
                let a = self.differential_matrix(s, t);
                let b = self.differential_matrix(s - 1, t);
                if b.cols() > 0 && a.cols() > 0 && !b.mul(&a).is_zero() {
                    return Err(EngineError::NotSquareZero(format!("d∘d ≠ 0 leaving ({s}, {t})")));
                }
            }
        }
        Ok(())
    }

    /// Homology of F_* → F_p at every (s, t) with s + t ≤ bound, for the
    /// stages present (the last stage is not checked).
    pub fn exactness(&self, max_total: u32) -> Exactness {
        let mut failures = Vec::new();
        for s in 0..self.stages.len().saturating_sub(1) {
            for t in 0..=max_total.saturating_sub(s as u32) {
                let d = self.differential_matrix(s, t);
                let n = d.cols();
                let kernel = n - d.rank();
                let image = self.differential_matrix(s + 1, t).rank();
                // The augmentation complex is exact at F_p when d_0 is onto.
                if kernel != image {
                    failures.push((s as u32, t, kernel - image.min(kernel)));
                }
            }
        }
        Exactness { through_total: max_total, failures }
    }

    /// Minimal when every boundary coefficient lies in the augmentation ideal.
    pub fn is_minimal(&self) -> bool {
        self.stages.iter().flatten().all(|g| {
            g.boundary
                .iter()
                .all(|(_, c)| c.terms().all(|(m, _)| !m.is_one()))
        })
    }

    /// F ⊗_A F_p: one basis element per generator, differential the
    /// constant coefficients.
    pub fn tensor_down(&self) -> Result<ChainComplexGM> {
        let f = self.alg.field();
        let mut stages: BTreeMap<(u32, u32), Vec<String>> = BTreeMap::new();
        let mut position: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (s, gens) in self.stages.iter().enumerate() {
            for (j, g) in gens.iter().enumerate() {
                let list = stages.entry((s as u32, g.degree)).or_default();
                position.insert((s, j), list.len());
                list.push(g.name.clone());
            }
        }
        let mut diffs = BTreeMap::new();
        for (s, gens) in self.stages.iter().enumerate().skip(1) {
            for (j, g) in gens.iter().enumerate() {
                let t = g.degree;
                for (i, c) in &g.boundary {
                    let unit = c.coefficient(&self.alg.presentation().one());
                    if unit == 0 {
                        continue;
                    }
                    let rows = stages.get(&(s as u32 - 1, t)).map_or(0, Vec::len);
                    let cols = stages[&(s as u32, t)].len();
                    let m = diffs
                        .entry((s as u32, t))
                        .or_insert_with(|| FpMatrix::zeros(f, rows, cols));
                    m.add_to(position[&(s - 1, *i)], position[&(s, j)], unit);
                }
            }
        }
        ChainComplexGM::new(f, stages, diffs)
    }

    /// Number of generators in each (s, t), which is Tor when minimal.
    pub fn generator_dims(&self) -> BigradedDims {
        let mut out = BigradedDims::new();
        for (s, gens) in self.stages.iter().enumerate() {
            for g in gens {
                *out.entry((s as u32, g.degree)).or_insert(0) += 1;
            }
        }
        out
    }

    /// The resolution itself as a complex of vector spaces in internal
    /// degrees ≤ D, with F_p in stage −1 dropped.
    pub fn to_complex(&self, max_degree: u32) -> Result<ChainComplexGM> {
        let f = self.alg.field();
        let mut stages = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for s in 0..self.stages.len() {
            for t in 0..=max_degree {
                let basis = self.basis(s, t);
                if basis.is_empty() {
                    continue;
                }
                let labels = basis
                    .iter()
                    .map(|(j, m)| format!("{}·{}", self.alg.presentation().format_monomial(m), self.stages[s][*j].name))
                    .collect();
                stages.insert((s as u32, t), labels);
                if s > 0 && !self.basis(s - 1, t).is_empty() {
                    diffs.insert((s as u32, t), self.differential_matrix(s, t));
                }
            }
        }
        ChainComplexGM::new(f, stages, diffs)
    }

    /// Plain-text listing of generators and boundaries.
    pub fn chart(&self) -> String {
        let pres = self.alg.presentation();
        let mut out = String::new();
        for (s, gens) in self.stages.iter().enumerate() {
            out.push_str(&format!("stage {s}:\n"));
            for g in gens {
                let prev = if s > 0 { &self.stages[s - 1] } else { &self.stages[0] };
                let terms: Vec<String> = g
                    .boundary
                    .iter()
                    .map(|(i, c)| format!("({})·{}", pres.format_element(c), prev[*i].name))
                    .collect();
                let d = if s == 0 { "1".to_string() } else if terms.is_empty() { "0".into() } else { terms.join(" + ") };
                out.push_str(&format!("  {} ({}, {})  d = {}\n", g.name, s, g.degree, d));
            }
        }
        out
    }
}

/// Minimal free resolution of F_p through internal degree D, built stage by
/// stage: each new generator kills one kernel vector not yet in the image,
/// lowest internal degree first, kernel vectors in echelon order.
pub fn minimal_resolution(alg: &Algebra, max_degree: u32) -> Result<FreeResolution> {
    if alg.dim(0) != 1 {
        return Err(invalid("the algebra is not connected"));
    }
    if max_degree > alg.max_degree() {
        return Err(invalid(format!("algebra is only known through degree {}", alg.max_degree())));
    }
    let f = alg.field();
    let pres = alg.presentation();
    let min_deg = pres.generators().iter().map(|g| g.total_degree()).min();
    let mut res = FreeResolution::new(Arc::new(alg.clone()));
    let Some(min_deg) = min_deg else { return Ok(res) };
    let max_s = (max_degree / min_deg) as usize;
    for s in 1..=max_s {
        res.stages.push(Vec::new());
        for t in 0..=max_degree {
            let d_prev = res.differential_matrix(s - 1, t);
            let (_, kernel) = rank_and_kernel(&d_prev);
            if kernel.is_empty() {
                continue;
            }
            let basis_prev = res.basis(s - 1, t);
            let d_cur = res.differential_matrix(s, t);
            let mut image = Subspace::from_vectors(f, basis_prev.len(), (0..d_cur.cols()).map(|j| d_cur.column(j)));
            for k in kernel {
                if !image.insert(k.clone()) {
                    continue;
                }
                let mut by_gen: BTreeMap<usize, Element> = BTreeMap::new();
                for ((j, m), &c) in basis_prev.iter().zip(&k) {
                    if c != 0 {
                        by_gen.entry(*j).or_insert_with(Element::zero).add_term(f, m.clone(), c);
                    }
                }
                let n = res.stages[s].len();
                res.stages[s].push(FreeGenerator {
                    name: format!("g{s}_{n}"),
                    degree: t,
                    boundary: by_gen.into_iter().collect(),
                });
            }
        }
        if res.stages[s].is_empty() {
            res.stages.pop();
            break;
        }
    }
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::super::bar::tor_via_bar;
    use super::*;
    use crate::algebra::Presentation;
    use crate::fp::PrimeField;

    #[test]
    fn ground_field_resolution() {
        let alg = Algebra::new(Presentation::trivial(PrimeField::new(5).unwrap()), 10).unwrap();
        let res = minimal_resolution(&alg, 10).unwrap();
        assert_eq!(res.len(), 1);
    }

    #[test]
    fn exterior_times_polynomial_matches_bar() {
        let pres = Presentation::builder(PrimeField::new(5).unwrap()).ext("x", 3).poly("y", 4).build().unwrap();
        let alg = Algebra::new(pres, 24).unwrap();
        let res = minimal_resolution(&alg, 24).unwrap();
        res.check_square_zero(24).unwrap();
        assert!(res.is_minimal());
        assert!(res.exactness(24 - res.len() as u32).exact());
        let gens: Vec<u32> = res.stage(1).iter().map(|g| g.degree).collect();
        assert_eq!(gens, vec![3, 4]);
        let gens2: Vec<u32> = res.stage(2).iter().map(|g| g.degree).collect();
        assert_eq!(gens2, vec![6, 7]);
        assert_eq!(res.generator_dims(), tor_via_bar(&alg, 24).unwrap());
        let down = res.tensor_down().unwrap();
        assert_eq!(down.homology_dims(), res.generator_dims());
    }
}
