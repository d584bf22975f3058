//! Normalized Hochschild and bar complexes of a connected graded algebra.

use std::collections::{BTreeMap, HashMap};

use super::complex::{BigradedDims, ChainComplexGM};
use crate::algebra::{Algebra, Element, GenKind, Monomial, Presentation};
use crate::error::{invalid, Result};
use crate::fp::FpMatrix;

/// An algebra map A → Q given on generators, making Q an A-bimodule.
#[derive(Clone, Debug)]
pub struct CoefficientMap {
    target: Algebra,
    images: Vec<Element>,
}

impl CoefficientMap {
    /// Q = F_p through the augmentation.
    pub fn ground(source: &Presentation) -> Result<Self> {
        let target = Algebra::new(Presentation::trivial(source.field()), 0)?;
        Ok(CoefficientMap { target, images: vec![Element::zero(); source.ngens()] })
    }

    /// Q = A through the identity.
    pub fn identity(source: &Algebra) -> Result<Self> {
        let pres = source.presentation();
        let images = pres.generators().iter().map(|g| source.generator(&g.name)).collect::<Result<_>>()?;
        Ok(CoefficientMap { target: source.clone(), images })
    }

    /// A map given by generator images written in the target's syntax.
    pub fn new(source: &Presentation, target: Algebra, images: &[(&str, &str)]) -> Result<Self> {
        let mut out = vec![Element::zero(); source.ngens()];
        for (name, expr) in images {
            let i = source.index_of(name).ok_or_else(|| invalid(format!("no generator {name:?}")))?;
            let e = target.parse(expr)?;
            let want = source.generators()[i].total_degree();
            if e.terms().any(|(m, _)| target.presentation().degree(m) != want) {
                return Err(invalid(format!("image of {name} has the wrong degree")));
            }
            out[i] = e;
        }
        Ok(CoefficientMap { target, images: out })
    }

    pub fn target(&self) -> &Algebra {
        &self.target
    }

    /// φ of a basis monomial of the source.
    pub fn apply(&self, source: &Presentation, m: &Monomial) -> Result<Element> {
        let q = &self.target;
        let f = q.field();
        let mut acc = q.one();
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let img = &self.images[i];
            if img.is_zero() {
                return Ok(Element::zero());
            }
            let factor = if source.generators()[i].kind == GenKind::DividedPower {
                let single = img.len() == 1
                    && img.terms().next().is_some_and(|(mm, _)| {
                        let nz: Vec<usize> = (0..mm.0.len()).filter(|&j| mm.0[j] > 0).collect();
                        nz.len() == 1
                            && mm.0[nz[0]] == 1
                            && q.presentation().generators()[nz[0]].kind == GenKind::DividedPower
                    });
                if single {
                    // γ_e(c·h) = c^e γ_e(h).
                    let (mm, c) = img.terms().next().expect("one term");
                    let j = mm.0.iter().position(|&x| x > 0).expect("one generator");
                    q.reduce(&Element::from_monomial(Monomial::single(mm.0.len(), j, e), f.pow(c, e as u64)))
                } else if e < f.p() {
                    let fact = (1..=e).fold(1, |a, k| f.mul(a, k));
                    q.power(img, e).scaled(f, f.inv(fact))
                } else {
                    return Err(invalid(format!(
                        "cannot evaluate γ_{e} of {} under the coefficient map",
                        source.generators()[i].name
                    )));
                }
            } else {
                q.power(img, e)
            };
            acc = q.mul(&acc, &factor);
        }
        Ok(acc)
    }
}

type Chain = (Monomial, Vec<Monomial>);

fn enumerate_tensors(alg: &Algebra, s: usize, t: u32, out: &mut Vec<Vec<Monomial>>, cur: &mut Vec<Monomial>) {
    if cur.len() == s {
        if t == 0 {
            out.push(cur.clone());
        }
        return;
    }
    let remaining = (s - cur.len()) as u32;
    // Each remaining factor has degree at least 1.
    if t < remaining {
        return;
    }
    for d in 1..=(t - (remaining - 1)) {
        for m in alg.basis(d) {
            cur.push(m.clone());
            enumerate_tensors(alg, s, t - d, out, cur);
            cur.pop();
        }
    }
}

/// The normalized Hochschild complex Q ⊗ Ā^{⊗s} with
/// d(q[a1|…|as]) = q·a1[a2|…] + Σ (−1)^i q[…|a_i a_{i+1}|…]
///               + (−1)^{s + |a_s|(|q| + |a_1| + … + |a_{s−1}|)} a_s·q[a1|…|a_{s−1}],
/// in internal degrees ≤ D.
pub fn hochschild_complex(alg: &Algebra, coeff: &CoefficientMap, max_degree: u32) -> Result<ChainComplexGM> {
    let pres = alg.presentation();
    let q = coeff.target();
    let f = alg.field();
    if max_degree > alg.max_degree() {
        return Err(invalid(format!("algebra is only known through degree {}", alg.max_degree())));
    }
    if alg.dim(0) != 1 {
        return Err(invalid("the algebra is not connected"));
    }
    let min_deg = pres.generators().iter().map(|g| g.total_degree()).min();

    let mut stages: BTreeMap<(u32, u32), Vec<String>> = BTreeMap::new();
    let mut bases: BTreeMap<(u32, u32), Vec<Chain>> = BTreeMap::new();
    let mut index: HashMap<(u32, u32), HashMap<Chain, usize>> = HashMap::new();
    let max_s = match min_deg {
        None => 0,
        Some(m) => max_degree / m,
    };
    for s in 0..=max_s {
        for t in 0..=max_degree {
            let mut chains = Vec::new();
            for tq in 0..=t.min(q.max_degree()) {
                if q.dim(tq) == 0 {
                    continue;
                }
                let mut tensors = Vec::new();
                enumerate_tensors(alg, s as usize, t - tq, &mut tensors, &mut Vec::new());
                for qm in q.basis(tq) {
                    for ts in &tensors {
                        chains.push((qm.clone(), ts.clone()));
                    }
                }
            }
            if chains.is_empty() {
                continue;
            }
            let labels = chains
                .iter()
                .map(|(qm, ts)| {
                    let bars: Vec<String> = ts.iter().map(|m| pres.format_monomial(m)).collect();
                    format!("{}[{}]", q.presentation().format_monomial(qm), bars.join("|"))
                })
                .collect();
            stages.insert((s, t), labels);
            index.insert((s, t), chains.iter().cloned().zip(0..).collect());
            bases.insert((s, t), chains);
        }
    }

    let mut diffs = BTreeMap::new();
    for (&(s, t), chains) in &bases {
        if s == 0 {
            continue;
        }
        let Some(tgt_index) = index.get(&(s - 1, t)) else { continue };
        let mut m = FpMatrix::zeros(f, tgt_index.len(), chains.len());
        for (col, (qm, ts)) in chains.iter().enumerate() {
            let mut entries: Vec<(usize, u32)> = Vec::new();
            let add = |entries: &mut Vec<(usize, u32)>, qe: &Element, rest: Vec<Monomial>, sign: u32| {
                for (qq, c) in qe.terms() {
                    entries.push((tgt_index[&(qq.clone(), rest.clone())], f.mul(c, sign)));
                }
            };
            // First face: q·φ(a1).
            let phi1 = coeff.apply(pres, &ts[0])?;
            if !phi1.is_zero() {
                let prod = q.mul(&Element::from_monomial(qm.clone(), 1), &phi1);
                add(&mut entries, &prod, ts[1..].to_vec(), 1);
            }
            // Inner faces.
            for i in 0..(ts.len() - 1) {
                let prod = alg.multiply(&ts[i], &ts[i + 1]);
                let sign = f.sign((i + 1) % 2 == 1);
                for (pm, c) in prod.terms() {
                    let mut rest = ts[..i].to_vec();
                    rest.push(pm.clone());
                    rest.extend_from_slice(&ts[i + 2..]);
                    entries.push((tgt_index[&(qm.clone(), rest)], f.mul(c, sign)));
                }
            }
            // Last face: φ(a_s)·q, moved to the front.
            let last = ts.last().expect("s ≥ 1");
            let phis = coeff.apply(pres, last)?;
            if !phis.is_zero() {
                let deg_last = pres.degree(last);
                let before: u32 = q.presentation().degree(qm) + ts[..ts.len() - 1].iter().map(|a| pres.degree(a)).sum::<u32>();
                let odd = (s % 2 == 1) ^ (deg_last % 2 == 1 && before % 2 == 1);
                let prod = q.mul(&phis, &Element::from_monomial(qm.clone(), 1));
                add(&mut entries, &prod, ts[..ts.len() - 1].to_vec(), f.sign(odd));
            }
            for (row, c) in entries {
                m.add_to(row, col, c);
            }
        }
        diffs.insert((s, t), m);
    }
    ChainComplexGM::new(f, stages, diffs)
}

/// Tor^A_{s,t}(F_p, F_p) for t ≤ D from the normalized bar complex.
/// Number of normalized bar cells [a_1|…|a_s] in each internal degree
/// through `max_degree`, summed over s.
pub fn bar_cell_counts(alg: &Algebra, max_degree: u32) -> Vec<u128> {
    let top = max_degree.min(alg.max_degree()) as usize;
    let mut n = vec![0u128; top + 1];
    n[0] = 1;
    for t in 1..=top {
        n[t] = (1..=t).map(|u| alg.dim(u as u32) as u128 * n[t - u]).fold(0u128, u128::saturating_add);
    }
    n
}

/// The largest degree ≤ `max_degree` whose bar cell count stays within
/// `budget` in every internal degree. The count grows exponentially, so
/// this is what keeps the bar complex usable as a cross-check.
pub fn bar_degree_within(alg: &Algebra, max_degree: u32, budget: u128) -> u32 {
    let counts = bar_cell_counts(alg, max_degree);
    counts.iter().position(|&c| c > budget).map_or(counts.len() as u32 - 1, |t| t as u32 - 1)
}

pub fn tor_via_bar(alg: &Algebra, max_degree: u32) -> Result<BigradedDims> {
    let coeff = CoefficientMap::ground(alg.presentation())?;
    Ok(hochschild_complex(alg, &coeff, max_degree)?.homology_dims())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::PrimeField;

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    #[test]
    fn ground_field_has_trivial_complex() {
        let pres = Presentation::trivial(f5());
        let alg = Algebra::new(pres, 10).unwrap();
        let dims = tor_via_bar(&alg, 10).unwrap();
        assert_eq!(dims.into_iter().collect::<Vec<_>>(), vec![((0, 0), 1)]);
    }

    #[test]
    fn exterior_gives_divided_powers() {
        let pres = Presentation::builder(f5()).ext("x", 3).build().unwrap();
        let alg = Algebra::new(pres, 30).unwrap();
        let dims = tor_via_bar(&alg, 30).unwrap();
        let expect: BigradedDims = (0..=10).map(|n| ((n, 3 * n), 1)).collect();
        assert_eq!(dims, expect);
    }

    #[test]
    fn hochschild_homology_of_polynomial_algebra() {
        // HH(P(y)) = P(y) ⊗ E(σy).
        let pres = Presentation::builder(f5()).poly("y", 2).build().unwrap();
        let alg = Algebra::new(pres, 12).unwrap();
        let coeff = CoefficientMap::identity(&alg).unwrap();
        let c = hochschild_complex(&alg, &coeff, 12).unwrap();
        for t in (0..=12).step_by(2) {
            assert_eq!(c.homology_dim(0, t), 1, "t = {t}");
            if t >= 2 {
                assert_eq!(c.homology_dim(1, t), 1, "t = {t}");
            }
        }
        assert_eq!(c.homology_dims().keys().filter(|&&(s, _)| s >= 2).count(), 0);
        assert!(c.euler_check());
    }

    #[test]
    fn hochschild_homology_of_exterior_algebra() {
        // HH(E(x)) = E(x) ⊗ Γ(σx): internal degree 3n has dims 1 in s = n and s = n − 1.
        let pres = Presentation::builder(f5()).ext("x", 3).build().unwrap();
        let alg = Algebra::new(pres, 21).unwrap();
        let coeff = CoefficientMap::identity(&alg).unwrap();
        let c = hochschild_complex(&alg, &coeff, 21).unwrap();
        for n in 1..=7u32 {
            assert_eq!(c.homology_dim(n, 3 * n), 1);
            assert_eq!(c.homology_dim(n - 1, 3 * n), 1);
        }
    }
}
