//! Differential specifications on generators and their Leibniz extension.

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Element, GenKind, Monomial};
use crate::error::{invalid, EngineError, Result};
use crate::fp::Scalar;

/// How a single generator's differential is given.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Rule {
    /// d(g) = target. On a divided-power generator this means
    /// d(γ_n(g)) = target·γ_{n−1}(g).
    Target { target: String },
    /// d(γ_{offset+i}(g)) = target·γ_i(g), and d vanishes on γ_j for j < offset.
    GammaPattern { offset: u32, target: String },
}

fn one() -> Scalar {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    pub generator: String,
    #[serde(flatten)]
    pub rule: Rule,
    /// Unit multiplying the target; differentials known only up to a unit
    /// default to 1.
    #[serde(default = "one")]
    pub unit: Scalar,
}

/// Where a differential comes from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpecStatus {
    /// Established by an argument outside the engine, up to a unit.
    #[default]
    Given,
    /// A hypothesis; results depending on it are labelled conjectural.
    Conjectural,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferentialSpec {
    pub page: u32,
    pub assignments: Vec<Assignment>,
    #[serde(default)]
    pub status: SpecStatus,
}

impl DifferentialSpec {
    pub fn new(page: u32) -> Self {
        DifferentialSpec { page, assignments: Vec::new(), status: SpecStatus::Given }
    }

    pub fn set(mut self, generator: &str, target: &str) -> Self {
        self.assignments.push(Assignment {
            generator: generator.to_string(),
            rule: Rule::Target { target: target.to_string() },
            unit: 1,
        });
        self
    }

    /// Records that the differential on this generator is known to vanish.
    pub fn zero(self, generator: &str) -> Self {
        self.set(generator, "0")
    }

    pub fn gamma(mut self, generator: &str, offset: u32, target: &str) -> Self {
        self.assignments.push(Assignment {
            generator: generator.to_string(),
            rule: Rule::GammaPattern { offset, target: target.to_string() },
            unit: 1,
        });
        self
    }

    pub fn conjectural(mut self) -> Self {
        self.status = SpecStatus::Conjectural;
        self
    }

    /// Same spec with every unit multiplied by `u`.
    pub fn rescaled(&self, field: crate::fp::PrimeField, u: Scalar) -> Self {
        let mut s = self.clone();
        for a in s.assignments.iter_mut() {
            a.unit = field.mul(a.unit, u);
        }
        s
    }

    pub fn generators(&self) -> impl Iterator<Item = &str> {
        self.assignments.iter().map(|a| a.generator.as_str())
    }
}

/// Bidegree change of a differential, in (filtration, internal).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shift {
    pub filtration: i64,
    pub internal: i64,
}

impl Shift {
    /// d_r: (s, t) → (s − r, t + r − 1).
    pub fn page(r: u32) -> Shift {
        Shift { filtration: -(r as i64), internal: r as i64 - 1 }
    }

    /// An ordinary differential of degree −1 on a singly graded algebra.
    pub fn total() -> Shift {
        Shift { filtration: 0, internal: -1 }
    }

    pub fn apply(&self, (s, t): (u32, u32)) -> Option<(u32, u32)> {
        let s2 = s as i64 + self.filtration;
        let t2 = t as i64 + self.internal;
        (s2 >= 0 && t2 >= 0).then_some((s2 as u32, t2 as u32))
    }

    fn apply_signed(&self, (s, t): (u32, u32)) -> (i64, i64) {
        (s as i64 + self.filtration, t as i64 + self.internal)
    }
}

#[derive(Clone, Debug)]
enum GenRule {
    Zero,
    Target(Element),
    Gamma { offset: u32, target: Element },
}

/// A derivation of odd total degree determined by its values on generators.
#[derive(Clone, Debug)]
pub struct Derivation<'a> {
    alg: &'a Algebra,
    rules: Vec<GenRule>,
    shift: Shift,
}

impl<'a> Derivation<'a> {
    pub fn new(alg: &'a Algebra, spec: &DifferentialSpec, shift: Shift) -> Result<Self> {
        let pres = alg.presentation();
        let f = alg.field();
        if (shift.filtration + shift.internal) != -1 {
            return Err(invalid("a differential must lower total degree by one"));
        }
        let mut rules = vec![GenRule::Zero; pres.ngens()];
        let mut seen = vec![false; pres.ngens()];
        for a in &spec.assignments {
            let i = pres
                .index_of(&a.generator)
                .ok_or_else(|| invalid(format!("differential names unknown generator {:?}", a.generator)))?;
            if seen[i] {
                return Err(invalid(format!("generator {:?} assigned twice", a.generator)));
            }
            seen[i] = true;
            if a.unit % f.p() == 0 {
                return Err(invalid(format!("unit for {:?} must be nonzero", a.generator)));
            }
            let g = &pres.generators()[i];
            let gbideg = (g.filtration_degree, g.internal_degree);
            let (target_str, offset) = match &a.rule {
                Rule::Target { target } => (target, 1),
                Rule::GammaPattern { offset, target } => {
                    if g.kind != GenKind::DividedPower {
                        return Err(invalid(format!("γ-pattern on {:?}, which is not a divided-power generator", g.name)));
                    }
                    if *offset == 0 {
                        return Err(invalid("γ-pattern offset must be positive"));
                    }
                    (target, *offset)
                }
            };
            let target = alg.parse(target_str)?.scaled(f, a.unit);
            // Source bidegree is that of γ_offset (or g itself).
            let src = (gbideg.0 * offset, gbideg.1 * offset);
            let want = shift.apply_signed(src);
            for (m, _) in target.terms() {
                let (s, t) = pres.bidegree(m);
                if (s as i64, t as i64) != want {
                    return Err(EngineError::Bidegree(format!(
                        "d({}) = {} has a term {} in bidegree ({s},{t}), expected {want:?}",
                        g.name,
                        pres.format_element(&target),
                        pres.format_monomial(m)
                    )));
                }
            }
            rules[i] = match (&a.rule, target.is_zero()) {
                (_, true) => GenRule::Zero,
                (Rule::Target { .. }, false) => GenRule::Target(target),
                (Rule::GammaPattern { .. }, false) => GenRule::Gamma { offset, target },
            };
        }
        Ok(Derivation { alg, rules, shift })
    }

    pub fn algebra(&self) -> &Algebra {
        self.alg
    }

    pub fn shift(&self) -> Shift {
        self.shift
    }

    pub fn is_zero(&self) -> bool {
        self.rules.iter().all(|r| matches!(r, GenRule::Zero))
    }

    fn factor_differential(&self, i: usize, e: u32) -> Element {
        let alg = self.alg;
        let f = alg.field();
        let n = alg.presentation().ngens();
        let g = &alg.presentation().generators()[i];
        match (&self.rules[i], g.kind) {
            (GenRule::Zero, _) => Element::zero(),
            (GenRule::Target(t), GenKind::DividedPower) => {
                alg.mul(t, &Element::from_monomial(Monomial::single(n, i, e - 1), 1))
            }
            (GenRule::Target(t), GenKind::Exterior) => t.clone(),
            (GenRule::Target(t), _) => {
                let lower = Element::from_monomial(Monomial::single(n, i, e - 1), 1);
                alg.mul(&lower, t).scaled(f, e % f.p())
            }
            (GenRule::Gamma { offset, target }, _) => {
                if e < *offset {
                    Element::zero()
                } else {
                    alg.mul(target, &Element::from_monomial(Monomial::single(n, i, e - offset), 1))
                }
            }
        }
    }

    /// d of an admissible monomial (not necessarily a basis element), reduced.
    pub fn apply_monomial(&self, m: &Monomial) -> Element {
        let alg = self.alg;
        let pres = alg.presentation();
        let f = alg.field();
        let n = pres.ngens();
        let mut out = Element::zero();
        let mut prefix_odd = false;
        for i in 0..n {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let df = self.factor_differential(i, e);
            if !df.is_zero() {
                let mut prefix = m.clone();
                let mut suffix = m.clone();
                for j in 0..n {
                    if j >= i {
                        prefix.0[j] = 0;
                    }
                    if j <= i {
                        suffix.0[j] = 0;
                    }
                }
                let left = alg.mul(&Element::from_monomial(prefix, 1), &df);
                let term = alg.mul(&left, &Element::from_monomial(suffix, 1));
                out.add_scaled(f, &term, f.sign(prefix_odd));
            }
            if pres.generators()[i].is_odd() && e % 2 == 1 {
                prefix_odd = !prefix_odd;
            }
        }
        out
    }

    pub fn apply(&self, e: &Element) -> Element {
        let f = self.alg.field();
        let mut out = Element::zero();
        for (m, c) in e.terms() {
            out.add_scaled(f, &self.apply_monomial(m), c);
        }
        out
    }

    /// d(ρ) ≡ 0 for every relation and truncation, so d descends to the quotient.
    pub fn check_relations(&self) -> Result<()> {
        let alg = self.alg;
        let pres = alg.presentation();
        for rel in pres.relations() {
            if pres.degree(rel.terms().next().expect("nonzero relation").0) > alg.max_degree() {
                continue;
            }
            let d = self.apply(rel);
            if !d.is_zero() {
                return Err(EngineError::IllDefined(format!(
                    "d({}) = {} is not in the relation ideal",
                    pres.format_element(rel),
                    pres.format_element(&d)
                )));
            }
        }
        for (i, g) in pres.generators().iter().enumerate() {
            if let GenKind::Truncated(h) = g.kind {
                if g.total_degree() * h > alg.max_degree() + 1 {
                    continue;
                }
                // d(g^h) = h·g^{h−1}·d(g) must vanish.
                let d = self.factor_differential(i, h);
                if !d.is_zero() {
                    return Err(EngineError::IllDefined(format!(
                        "d({}^{h}) = {} does not vanish",
                        g.name,
                        pres.format_element(&d)
                    )));
                }
            }
        }
        Ok(())
    }

    /// d∘d = 0 on every basis monomial.
    pub fn check_square_zero(&self) -> Result<()> {
        let alg = self.alg;
        for deg in 0..=alg.max_degree() {
            for m in alg.basis(deg) {
                let dd = self.apply(&self.apply_monomial(m));
                if !dd.is_zero() {
                    let pres = alg.presentation();
                    return Err(EngineError::NotSquareZero(format!(
                        "d(d({})) = {}",
                        pres.format_monomial(m),
                        pres.format_element(&dd)
                    )));
                }
            }
        }
        Ok(())
    }

    /// d(ab) = d(a)b + (−1)^{|a|} a d(b) for all basis pairs with |a|+|b| ≤ bound.
    /// Returns the first failing pair.
    pub fn check_leibniz(&self, bound: u32) -> Result<()> {
        let alg = self.alg;
        let pres = alg.presentation();
        let f = alg.field();
        let bound = bound.min(alg.max_degree());
        for da in 0..=bound {
            for a in alg.basis(da) {
                let d_a = self.apply_monomial(a);
                let a_el = Element::from_monomial(a.clone(), 1);
                let sign = f.sign(da % 2 == 1);
                for db in 0..=(bound - da) {
                    for b in alg.basis(db) {
                        let b_el = Element::from_monomial(b.clone(), 1);
                        let lhs = self.apply(&alg.multiply(a, b));
                        let mut rhs = alg.mul(&d_a, &b_el);
                        rhs.add_scaled(f, &alg.mul(&a_el, &self.apply_monomial(b)), sign);
                        if lhs != rhs {
                            return Err(EngineError::IllDefined(format!(
                                "Leibniz rule fails on ({}, {})",
                                pres.format_monomial(a),
                                pres.format_monomial(b)
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Presentation;
    use crate::fp::PrimeField;

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    #[test]
    fn divided_power_leibniz() {
        // Γ(y) ⊗ E(z) with d(y) = z, singly graded.
        let pres = Presentation::builder(f5()).divided("y", 4).ext("z", 3).build().unwrap();
        let alg = Algebra::new(pres, 40).unwrap();
        let spec = DifferentialSpec::new(1).set("y", "z");
        let d = Derivation::new(&alg, &spec, Shift::total()).unwrap();
        let g3 = alg.parse("y^[3]").unwrap();
        assert_eq!(d.apply(&g3), alg.parse("z*y^[2]").unwrap());
        d.check_square_zero().unwrap();
        d.check_leibniz(40).unwrap();
    }

    #[test]
    fn gamma_pattern_is_a_derivation() {
        let pres = Presentation::builder(f5()).divided("y", 2).ext("w", 9).build().unwrap();
        let alg = Algebra::new(pres, 60).unwrap();
        let spec = DifferentialSpec::new(1).gamma("y", 5, "w");
        let d = Derivation::new(&alg, &spec, Shift::total()).unwrap();
        assert!(d.apply(&alg.parse("y^[4]").unwrap()).is_zero());
        assert_eq!(d.apply(&alg.parse("y^[7]").unwrap()), alg.parse("w*y^[2]").unwrap());
        d.check_leibniz(60).unwrap();
        d.check_square_zero().unwrap();
    }

    #[test]
    fn bidegree_is_checked() {
        let pres = Presentation::builder(f5())
            .bigraded("l", GenKind::Exterior, 9, 0)
            .bigraded("sx", GenKind::DividedPower, 0, 8)
            .build()
            .unwrap();
        let alg = Algebra::new(pres, 30).unwrap();
        let ok = DifferentialSpec::new(9).set("l", "sx");
        assert!(Derivation::new(&alg, &ok, Shift::page(9)).is_ok());
        let bad = DifferentialSpec::new(8).set("l", "sx");
        assert!(matches!(Derivation::new(&alg, &bad, Shift::page(8)), Err(EngineError::Bidegree(_))));
    }

    #[test]
    fn ill_defined_on_quotient_is_reported() {
        // P_2(y) with d(y) = x: d(y^2) = 2xy ≠ 0.
        let pres = Presentation::builder(f5()).ext("x", 3).truncated("y", 4, 2).build().unwrap();
        let alg = Algebra::new(pres, 20).unwrap();
        let spec = DifferentialSpec::new(1).set("y", "x");
        let d = Derivation::new(&alg, &spec, Shift::total()).unwrap();
        assert!(d.check_relations().is_err());
    }
}
