//! Left A_*-comodule algebras and their primitives.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::dual::DualSteenrod;
use super::tensor::{add_triple, Tensor, Triple};
use crate::algebra::{Algebra, Element, GenKind, Monomial};
use crate::error::{invalid, EngineError, Result};
use crate::fp::{rank_and_kernel, FpMatrix, Scalar};

/// A graded-commutative algebra M with a multiplicative coaction
/// ν: M → A_* ⊗ M given on generators. Divided-power generators must be
/// primitive, or only used below γ_p.
#[derive(Clone, Debug)]
pub struct Comodule {
    steenrod: Arc<DualSteenrod>,
    module: Algebra,
    gen_coactions: Vec<Tensor>,
    valid_through: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoactionTerm {
    pub steenrod: String,
    pub module: String,
    pub scalar: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorCoaction {
    pub name: String,
    pub degree: u32,
    pub coaction: Vec<CoactionTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComoduleJson {
    pub p: u32,
    pub max_degree: u32,
    pub valid_through: u32,
    pub generators: Vec<GeneratorCoaction>,
}

impl Comodule {
    /// Builds a comodule; generators without an entry are primitive.
    /// `valid_through` is the degree up to which the presentation is known
    /// to agree with the object it models.
    pub fn new(
        steenrod: Arc<DualSteenrod>,
        module: Algebra,
        coactions: Vec<(String, Tensor)>,
        valid_through: u32,
    ) -> Result<Self> {
        if module.field() != steenrod.field() {
            return Err(invalid("module and A_* are over different fields"));
        }
        let pres = module.presentation();
        let mut gen = Vec::with_capacity(pres.ngens());
        for i in 0..pres.ngens() {
            let me = Monomial::single(pres.ngens(), i, 1);
            gen.push(Tensor::pure(module.field(), &steenrod.algebra().one(), &Element::from_monomial(me, 1)));
        }
        for (name, t) in coactions {
            let i = pres.index_of(&name).ok_or_else(|| invalid(format!("module has no generator {name:?}")))?;
            let g = &pres.generators()[i];
            let want = g.total_degree();
            for (a, m, _) in t.terms() {
                let d = steenrod.algebra().presentation().degree(a) + pres.degree(m);
                if d != want {
                    return Err(EngineError::Bidegree(format!("coaction of {name} has a term in degree {d}, expected {want}")));
                }
            }
            gen[i] = t;
        }
        Ok(Comodule { steenrod, module, gen_coactions: gen, valid_through })
    }

    pub fn steenrod(&self) -> &DualSteenrod {
        &self.steenrod
    }

    pub fn module(&self) -> &Algebra {
        &self.module
    }

    pub fn valid_through(&self) -> u32 {
        self.valid_through
    }

    /// Degrees in which both the truncation and the model are trustworthy.
    pub fn computed_through(&self) -> u32 {
        self.valid_through.min(self.module.max_degree()).min(self.steenrod.max_degree())
    }

    fn is_primitive_generator(&self, i: usize) -> bool {
        let t = &self.gen_coactions[i];
        t.len() == 1 && t.terms().next().is_some_and(|(a, _, c)| a.is_one() && c == 1)
    }

    /// ν of a basis monomial.
    pub fn coaction(&self, m: &Monomial) -> Result<Tensor> {
        let a = self.steenrod.algebra();
        let f = self.module.field();
        let pres = self.module.presentation();
        let mut acc = Tensor::one(a, &self.module);
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let factor = if pres.generators()[i].kind == GenKind::DividedPower {
                if self.is_primitive_generator(i) {
                    Tensor::pure(f, &a.one(), &Element::from_monomial(Monomial::single(pres.ngens(), i, e), 1))
                } else if e < f.p() {
                    // γ_e(g) = g^e / e! inside the tensor product.
                    let mut pw = Tensor::one(a, &self.module);
                    for _ in 0..e {
                        pw = pw.mul(&self.gen_coactions[i], a, &self.module);
                    }
                    let fact = (1..=e).fold(1, |x, k| f.mul(x, k));
                    let mut out = Tensor::zero();
                    out.add_scaled(f, &pw, f.inv(fact));
                    out
                } else {
                    return Err(invalid(format!(
                        "coaction of γ_{e}({}) is not determined by the stored data",
                        pres.generators()[i].name
                    )));
                }
            } else {
                let mut pw = Tensor::one(a, &self.module);
                for _ in 0..e {
                    pw = pw.mul(&self.gen_coactions[i], a, &self.module);
                }
                pw
            };
            acc = acc.mul(&factor, a, &self.module);
        }
        Ok(acc)
    }

    pub fn coaction_of(&self, e: &Element) -> Result<Tensor> {
        let f = self.module.field();
        let mut out = Tensor::zero();
        for (m, c) in e.terms() {
            out.add_scaled(f, &self.coaction(m)?, c);
        }
        Ok(out)
    }

    fn check_range(&self, n: u32) -> Result<()> {
        if n > self.computed_through() {
            return Err(EngineError::Truncated { valid_through: self.computed_through(), requested: n });
        }
        Ok(())
    }

    /// Basis of {x ∈ M_n : ν(x) = 1⊗x}.
    pub fn primitives(&self, n: u32) -> Result<Vec<Element>> {
        self.check_range(n)?;
        let basis = self.module.basis(n).to_vec();
        self.primitives_in(n, &basis.iter().map(|m| Element::from_monomial(m.clone(), 1)).collect::<Vec<_>>())
    }

    /// Primitives in the span of the given degree-n elements, expressed in
    /// the monomial basis. The elements must be linearly independent.
    pub fn primitives_in(&self, n: u32, span: &[Element]) -> Result<Vec<Element>> {
        self.check_range(n)?;
        let f = self.module.field();
        let a = self.steenrod.algebra();
        // Coordinates of the reduced coaction: A_*-part of positive degree.
        let mut index = std::collections::HashMap::new();
        let mut cols: Vec<Vec<(usize, Scalar)>> = Vec::new();
        for e in span {
            let mut col = Vec::new();
            for (am, mm, c) in self.coaction_of(e)?.terms() {
                if a.presentation().degree(am) == 0 {
                    continue;
                }
                let k = (am.clone(), mm.clone());
                let next = index.len();
                let row = *index.entry(k).or_insert(next);
                col.push((row, c));
            }
            cols.push(col);
        }
        let mut mat = FpMatrix::zeros(f, index.len(), span.len());
        for (j, col) in cols.iter().enumerate() {
            for &(r, c) in col {
                mat.add_to(r, j, c);
            }
        }
        let (_, kernel) = rank_and_kernel(&mat);
        Ok(kernel
            .into_iter()
            .map(|v| {
                let mut out = Element::zero();
                for (e, &c) in span.iter().zip(&v) {
                    out.add_scaled(f, e, c);
                }
                out
            })
            .collect())
    }

    /// (Δ⊗1)ν = (1⊗ν)ν on every basis monomial of degree ≤ bound.
    pub fn check_coassociativity(&self, bound: u32) -> Result<()> {
        let f = self.module.field();
        let top = bound.min(self.module.max_degree()).min(self.steenrod.max_degree());
        for d in 0..=top {
            for m in self.module.basis(d) {
                let nu = self.coaction(m)?;
                let mut lhs = Triple::new();
                let mut rhs = Triple::new();
                for (a, x, c) in nu.terms() {
                    for (a1, a2, c2) in self.steenrod.coproduct(a).terms() {
                        add_triple(f, &mut lhs, (a1.clone(), a2.clone(), x.clone()), f.mul(c, c2));
                    }
                    for (a2, y, c2) in self.coaction(x)?.terms() {
                        add_triple(f, &mut rhs, (a.clone(), a2.clone(), y.clone()), f.mul(c, c2));
                    }
                }
                if lhs != rhs {
                    return Err(EngineError::IllDefined(format!(
                        "coaction is not coassociative on {}",
                        self.module.presentation().format_monomial(m)
                    )));
                }
            }
        }
        Ok(())
    }

    /// (ε⊗1)ν = id on every basis monomial of degree ≤ bound.
    pub fn check_counit(&self, bound: u32) -> Result<()> {
        let f = self.module.field();
        let top = bound.min(self.module.max_degree()).min(self.steenrod.max_degree());
        for d in 0..=top {
            for m in self.module.basis(d) {
                let mut got = Element::zero();
                for (a, x, c) in self.coaction(m)?.terms() {
                    if a.is_one() {
                        got.add_term(f, x.clone(), c);
                    }
                }
                if got != Element::from_monomial(m.clone(), 1) {
                    return Err(EngineError::IllDefined(format!(
                        "counit fails on {}",
                        self.module.presentation().format_monomial(m)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> ComoduleJson {
        let a = self.steenrod.algebra();
        let pres = self.module.presentation();
        let generators = pres
            .generators()
            .iter()
            .zip(&self.gen_coactions)
            .map(|(g, t)| GeneratorCoaction {
                name: g.name.clone(),
                degree: g.total_degree(),
                coaction: t
                    .terms()
                    .map(|(am, mm, c)| CoactionTerm {
                        steenrod: a.presentation().format_monomial(am),
                        module: pres.format_monomial(mm),
                        scalar: c,
                    })
                    .collect(),
            })
            .collect();
        ComoduleJson {
            p: self.module.field().p(),
            max_degree: self.module.max_degree(),
            valid_through: self.valid_through,
            generators,
        }
    }
}

/// A_* as a left comodule over itself through Δ.
pub fn regular_comodule(steenrod: Arc<DualSteenrod>) -> Result<Comodule> {
    let alg = steenrod.algebra().clone();
    let n = alg.presentation().ngens();
    let coactions = (0..n)
        .map(|i| {
            let name = alg.presentation().generators()[i].name.clone();
            (name, steenrod.coproduct(&Monomial::single(n, i, 1)))
        })
        .collect();
    let top = alg.max_degree();
    Comodule::new(steenrod, alg, coactions, top)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::PrimeField;

    #[test]
    fn regular_comodule_has_no_positive_primitives() {
        let a = Arc::new(DualSteenrod::new(PrimeField::new(5).unwrap(), 30).unwrap());
        let c = regular_comodule(a).unwrap();
        assert_eq!(c.primitives(0).unwrap().len(), 1);
        for n in 1..=30 {
            assert!(c.primitives(n).unwrap().is_empty(), "degree {n}");
        }
        c.check_coassociativity(30).unwrap();
        c.check_counit(30).unwrap();
        assert!(matches!(c.primitives(31), Err(EngineError::Truncated { .. })));
    }
}
