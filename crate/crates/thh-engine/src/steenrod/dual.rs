//! The dual Steenrod algebra in the conjugate generators ξ̄_n, τ̄_n.

use std::collections::HashMap;

use super::tensor::{add_triple, Tensor, Triple};
use crate::algebra::{Algebra, Element, Monomial, Presentation};
use crate::error::{invalid, Result};
use crate::fp::PrimeField;

/// A_* = P(ξ̄_1, ξ̄_2, …) ⊗ E(τ̄_0, τ̄_1, …) through degree D, with
/// |ξ̄_n| = 2p^n − 2, |τ̄_n| = 2p^n − 1 and
/// Δ(ξ̄_n) = Σ_{i+j=n} ξ̄_i ⊗ ξ̄_j^{p^i},
/// Δ(τ̄_n) = 1 ⊗ τ̄_n + Σ_{i+j=n} τ̄_i ⊗ ξ̄_j^{p^i}.
/// Generators are named `xi1`, `xi2`, … and `tau0`, `tau1`, …
#[derive(Clone, Debug)]
pub struct DualSteenrod {
    alg: Algebra,
    // Coproduct of each generator, by generator index.
    gen_coproducts: Vec<Tensor>,
    antipodes: Vec<Element>,
}

impl DualSteenrod {
    pub fn new(field: PrimeField, max_degree: u32) -> Result<Self> {
        let p = field.p() as u64;
        if p == 2 {
            return Err(invalid("the dual Steenrod algebra model needs an odd prime"));
        }
        let mut b = Presentation::builder(field);
        let mut n = 0u32;
        loop {
            let pn = p.pow(n);
            if 2 * pn - 1 > max_degree as u64 {
                break;
            }
            if n > 0 && 2 * pn - 2 <= max_degree as u64 {
                b = b.poly(&format!("xi{n}"), (2 * pn - 2) as u32);
            }
            b = b.ext(&format!("tau{n}"), (2 * pn - 1) as u32);
            n += 1;
        }
        // ξ̄_n may fit when τ̄_n does not.
        let pn = p.pow(n);
        if n > 0 && 2 * pn - 2 <= max_degree as u64 {
            b = b.poly(&format!("xi{n}"), (2 * pn - 2) as u32);
        }
        let alg = Algebra::new(b.build()?, max_degree)?;
        let mut out = DualSteenrod { alg, gen_coproducts: Vec::new(), antipodes: Vec::new() };
        out.gen_coproducts = out.build_generator_coproducts()?;
        out.antipodes = out.build_antipodes();
        Ok(out)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn field(&self) -> PrimeField {
        self.alg.field()
    }

    pub fn max_degree(&self) -> u32 {
        self.alg.max_degree()
    }

    /// ξ̄_i^e as an element, with ξ̄_0 = 1; zero when out of range.
    fn xi_power(&self, i: u32, e: u32) -> Element {
        if i == 0 {
            return self.alg.one();
        }
        match self.alg.generator(&format!("xi{i}")) {
            Ok(x) => self.alg.power(&x, e),
            Err(_) => Element::zero(),
        }
    }

    fn build_generator_coproducts(&self) -> Result<Vec<Tensor>> {
        let pres = self.alg.presentation();
        let f = self.field();
        let p = f.p();
        let mut out = Vec::new();
        for g in pres.generators() {
            let (is_tau, n) = match g.name.strip_prefix("xi") {
                Some(rest) => (false, rest.parse::<u32>().expect("generator index")),
                None => (true, g.name["tau".len()..].parse::<u32>().expect("generator index")),
            };
            let mut t = Tensor::zero();
            let me = self.alg.generator(&g.name)?;
            if is_tau {
                t.add_scaled(f, &Tensor::pure(f, &self.alg.one(), &me), 1);
            }
            for i in 0..=n {
                let j = n - i;
                let left = if is_tau {
                    self.alg.generator(&format!("tau{i}")).unwrap_or_default()
                } else {
                    self.xi_power(i, 1)
                };
                let right = self.xi_power(j, p.pow(i));
                t.add_scaled(f, &Tensor::pure(f, &left, &right), 1);
            }
            out.push(t);
        }
        Ok(out)
    }

    /// Δ of a basis monomial, multiplicatively from the generators.
    pub fn coproduct(&self, m: &Monomial) -> Tensor {
        let mut acc = Tensor::one(&self.alg, &self.alg);
        for (i, &e) in m.0.iter().enumerate() {
            for _ in 0..e {
                acc = acc.mul(&self.gen_coproducts[i], &self.alg, &self.alg);
            }
        }
        acc
    }

    pub fn coproduct_of(&self, e: &Element) -> Tensor {
        let f = self.field();
        let mut out = Tensor::zero();
        for (m, c) in e.terms() {
            out.add_scaled(f, &self.coproduct(m), c);
        }
        out
    }

    /// ε: the coefficient of 1.
    pub fn counit(&self, e: &Element) -> u32 {
        e.coefficient(&self.alg.presentation().one())
    }

    fn build_antipodes(&self) -> Vec<Element> {
        // From x + χ(x) + Σ' a·χ(b) = 0 over the reduced coproduct, in order
        // of increasing degree so that every χ(b) needed is known.
        let pres = self.alg.presentation();
        let f = self.field();
        let n = pres.ngens();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| pres.generators()[i].internal_degree);
        let mut chi: Vec<Option<Element>> = vec![None; n];
        for &i in &order {
            let g = Monomial::single(n, i, 1);
            let mut val = Element::from_monomial(g.clone(), f.neg(1));
            for (a, b, c) in self.gen_coproducts[i].terms() {
                if b.is_one() || a.is_one() {
                    continue;
                }
                let chib = self.antipode_with(b, &chi);
                let prod = self.alg.mul(&Element::from_monomial(a.clone(), 1), &chib);
                val.add_scaled(f, &prod, f.neg(c));
            }
            chi[i] = Some(val);
        }
        chi.into_iter().map(|x| x.expect("all generators visited")).collect()
    }

    fn antipode_with(&self, m: &Monomial, chi: &[Option<Element>]) -> Element {
        // χ is multiplicative on a graded-commutative Hopf algebra.
        let mut acc = self.alg.one();
        for (i, &e) in m.0.iter().enumerate() {
            for _ in 0..e {
                let c = chi[i].as_ref().expect("antipode of a lower-degree generator");
                acc = self.alg.mul(&acc, c);
            }
        }
        acc
    }

    /// The conjugation χ on a basis monomial.
    pub fn antipode(&self, m: &Monomial) -> Element {
        let chi: Vec<Option<Element>> = self.antipodes.iter().cloned().map(Some).collect();
        self.antipode_with(m, &chi)
    }

    /// The untwisted Milnor generator ξ_n or τ_n, i.e. χ of the conjugate one.
    pub fn untwisted(&self, name: &str) -> Result<Element> {
        let pres = self.alg.presentation();
        let i = pres.index_of(name).ok_or_else(|| invalid(format!("A_* has no generator {name:?} in range")))?;
        Ok(self.antipodes[i].clone())
    }

    /// (Δ⊗1)Δ = (1⊗Δ)Δ on every basis monomial of degree ≤ bound.
    pub fn check_coassociativity(&self, bound: u32) -> std::result::Result<(), String> {
        let f = self.field();
        for d in 0..=bound.min(self.max_degree()) {
            for m in self.alg.basis(d) {
                let delta = self.coproduct(m);
                let mut lhs = Triple::new();
                let mut rhs = Triple::new();
                for (a, b, c) in delta.terms() {
                    for (x, y, c2) in self.coproduct(a).terms() {
                        add_triple(f, &mut lhs, (x.clone(), y.clone(), b.clone()), f.mul(c, c2));
                    }
                    for (x, y, c2) in self.coproduct(b).terms() {
                        add_triple(f, &mut rhs, (a.clone(), x.clone(), y.clone()), f.mul(c, c2));
                    }
                }
                if lhs != rhs {
                    return Err(format!("Δ is not coassociative on {}", self.alg.presentation().format_monomial(m)));
                }
            }
        }
        Ok(())
    }

    /// (ε⊗1)Δ = id = (1⊗ε)Δ on every basis monomial of degree ≤ bound.
    pub fn check_counit(&self, bound: u32) -> std::result::Result<(), String> {
        let f = self.field();
        for d in 0..=bound.min(self.max_degree()) {
            for m in self.alg.basis(d) {
                let delta = self.coproduct(m);
                let mut left = HashMap::new();
                let mut right = HashMap::new();
                for (a, b, c) in delta.terms() {
                    if a.is_one() {
                        *left.entry(b.clone()).or_insert(0) = f.add(*left.get(b).unwrap_or(&0), c);
                    }
                    if b.is_one() {
                        *right.entry(a.clone()).or_insert(0) = f.add(*right.get(a).unwrap_or(&0), c);
                    }
                }
                let want: HashMap<Monomial, u32> = [(m.clone(), 1)].into_iter().collect();
                left.retain(|_, v| *v != 0);
                right.retain(|_, v| *v != 0);
                if left != want || right != want {
                    return Err(format!("counit fails on {}", self.alg.presentation().format_monomial(m)));
                }
            }
        }
        Ok(())
    }

    /// μ(1⊗χ)Δ = ηε on every basis monomial of degree ≤ bound.
    pub fn check_antipode(&self, bound: u32) -> std::result::Result<(), String> {
        let f = self.field();
        for d in 0..=bound.min(self.max_degree()) {
            for m in self.alg.basis(d) {
                let mut acc = Element::zero();
                for (a, b, c) in self.coproduct(m).terms() {
                    let prod = self.alg.mul(&Element::from_monomial(a.clone(), 1), &self.antipode(b));
                    acc.add_scaled(f, &prod, c);
                }
                let want = if d == 0 { self.alg.one() } else { Element::zero() };
                if acc != want {
                    return Err(format!("antipode identity fails on {}", self.alg.presentation().format_monomial(m)));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a5(d: u32) -> DualSteenrod {
        DualSteenrod::new(PrimeField::new(5).unwrap(), d).unwrap()
    }

    #[test]
    fn low_degree_basis() {
        let a = a5(10);
        let dims: Vec<usize> = (0..=10).map(|d| a.algebra().dim(d)).collect();
        assert_eq!(dims, vec![1, 1, 0, 0, 0, 0, 0, 0, 1, 2, 1]);
    }

    #[test]
    fn generator_coproducts() {
        let a = a5(50);
        let alg = a.algebra();
        let xi1 = alg.presentation().gen_monomial("xi1").unwrap();
        assert_eq!(a.coproduct(&xi1).format(alg, alg), "1⊗xi1 + xi1⊗1");
        let one = alg.presentation().one();
        assert_eq!(a.coproduct(&one).format(alg, alg), "1⊗1");
        let tau1 = alg.presentation().gen_monomial("tau1").unwrap();
        assert_eq!(a.coproduct(&tau1).len(), 3);
    }

    #[test]
    fn hopf_algebra_identities() {
        let a = a5(50);
        a.check_coassociativity(50).unwrap();
        a.check_counit(50).unwrap();
        a.check_antipode(50).unwrap();
    }

    #[test]
    fn untwisted_tau1() {
        let a = a5(10);
        let t = a.untwisted("tau1").unwrap();
        let want = a.algebra().parse("-tau1 + tau0*xi1").unwrap();
        assert_eq!(t, want);
    }

    #[test]
    fn other_primes() {
        let a = DualSteenrod::new(PrimeField::new(3).unwrap(), 60).unwrap();
        a.check_coassociativity(60).unwrap();
        a.check_antipode(60).unwrap();
        assert!(DualSteenrod::new(PrimeField::new(2).unwrap(), 10).is_err());
    }
}
