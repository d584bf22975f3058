//! Comodule models for the mod p homology of K(F_q) and of V(1) ∧ THH(K(F_q)).

use std::sync::Arc;

use super::comodule::Comodule;
use super::dual::DualSteenrod;
use super::tensor::Tensor;
use crate::algebra::{Algebra, Element, Presentation};
use crate::error::{invalid, Result};
use crate::fp::Scalar;

struct Terms<'a> {
    a: &'a DualSteenrod,
    m: &'a Algebra,
    t: Tensor,
}

impl<'a> Terms<'a> {
    fn new(a: &'a DualSteenrod, m: &'a Algebra) -> Self {
        Terms { a, m, t: Tensor::zero() }
    }

    fn add(mut self, c: Scalar, left: &Element, right: &str) -> Result<Self> {
        let f = self.a.field();
        let right = self.m.parse(right)?;
        self.t.add_scaled(f, &Tensor::pure(f, left, &right), c);
        Ok(self)
    }

    fn add_expr(self, c: Scalar, left: &str, right: &str) -> Result<Self> {
        let left = self.a.algebra().parse(left)?;
        self.add(c, &left, right)
    }
}

/// Degree through which the truncated models are exact: the first omitted
/// generator is ξ̃_3 in degree 2p³ − 2.
fn first_gap(p: u32) -> u32 {
    2 * p * p * p - 3
}

/// (HF_p)_* K(F_q) as an A_*-comodule for cases 1 to 3, through degree D.
///
/// Case 1 is E(b) ⊗ P(ξ̃_1^p, ξ̃_2) ⊗ E(τ̃_2) with b primitive. Cases 2 and 3
/// are E(x) ⊗ P_k(y) ⊗ P(ξ̃_1, ξ̃_2) ⊗ E(τ̃_2) with x and y primitive and
/// ν(ξ̃_1) = 1⊗ξ̃_1 + ξ̄_1⊗1 + a τ̄_0⊗xy^{k−1}; y is absent when k = 1.
/// The coaction parameter `a` is not known in general and must be supplied.
pub fn homology_of_k_comodule(a_star: Arc<DualSteenrod>, case: u8, r: u32, k: u32, a: Scalar, max_degree: u32) -> Result<Comodule> {
    let f = a_star.field();
    let p = f.p();
    let (d_xi1, d_xi2) = (2 * p - 2, 2 * p * p - 2);
    let module = match case {
        1 => Presentation::builder(f)
            .ext("b", p * d_xi1 - 1)
            .poly("xi1p", p * d_xi1)
            .poly("xi2", d_xi2)
            .ext("tau2", d_xi2 + 1)
            .build()?,
        2 | 3 => {
            if r * k != p - 1 {
                return Err(invalid(format!("need r·k = p − 1, got r = {r}, k = {k}")));
            }
            let mut b = Presentation::builder(f).ext("x", 2 * r - 1);
            if k > 1 {
                b = b.truncated("y", 2 * r, k);
            }
            b.poly("xi1", d_xi1).poly("xi2", d_xi2).ext("tau2", d_xi2 + 1).build()?
        }
        4 => return Err(invalid("the homology of K(F_q) in case 4 is only modelled through degree 2p")),
        _ => return Err(invalid(format!("no case {case}"))),
    };
    let m = Algebra::new(module, max_degree)?;
    let aa = &*a_star;
    let neg = |c: Scalar| f.neg(c);
    let coactions = match case {
        1 => {
            let tau1 = aa.untwisted("tau1")?;
            vec![
                (
                    "xi1p".to_string(),
                    Terms::new(aa, &m)
                        .add_expr(1, "1", "xi1p")?
                        .add_expr(1, &format!("xi1^{p}"), "1")?
                        .add_expr(1, "tau0", "b")?
                        .t,
                ),
                (
                    "xi2".to_string(),
                    Terms::new(aa, &m)
                        .add_expr(1, "1", "xi2")?
                        .add_expr(1, "xi1", "xi1p")?
                        .add(1, &tau1, "b")?
                        .add_expr(1, "xi2", "1")?
                        .t,
                ),
                (
                    "tau2".to_string(),
                    Terms::new(aa, &m)
                        .add_expr(1, "1", "tau2")?
                        .add_expr(1, "tau0", "xi2")?
                        .add_expr(1, "tau1", "xi1p")?
                        .add_expr(1, "tau2", "1")?
                        .add_expr(neg(1), "tau0*tau1", "b")?
                        .t,
                ),
            ]
        }
        _ => {
            let xy = if k > 1 { format!("x*y^{}", k - 1) } else { "x".to_string() };
            vec![
                (
                    "xi1".to_string(),
                    Terms::new(aa, &m)
                        .add_expr(1, "1", "xi1")?
                        .add_expr(1, "xi1", "1")?
                        .add_expr(a % p, "tau0", &xy)?
                        .t,
                ),
                (
                    "xi2".to_string(),
                    Terms::new(aa, &m)
                        .add_expr(1, "1", "xi2")?
                        .add_expr(1, "xi1", &format!("xi1^{p}"))?
                        .add_expr(1, "xi2", "1")?
                        .t,
                ),
                (
                    "tau2".to_string(),
                    Terms::new(aa, &m)
                        .add_expr(1, "1", "tau2")?
                        .add_expr(1, "tau0", "xi2")?
                        .add_expr(1, "tau1", &format!("xi1^{p}"))?
                        .add_expr(1, "tau2", "1")?
                        .t,
                ),
            ]
        }
    };
    Comodule::new(a_star, m, coactions, first_gap(p))
}

/// (HF_p)_*(V(1) ∧ THH(K(F_q))) in case 1, through degree D:
/// E(ε_0, ε_1) ⊗ (HF_p)_*K ⊗ E([σξ̃_1^p], [σξ̃_2]) ⊗ P([στ̃_2]) ⊗ Γ([σb]).
///
/// Generators: `e0`, `e1`, `b`, `xi1p`, `xi2`, `tau2`, `sb`, `sxi1p`,
/// `sxi2`, `stau2`. The σ-classes carry the coactions of their
/// unsuspended partners with the terms of A_*-degree 0 on 1 dropped.
pub fn v1_thh_comodule(a_star: Arc<DualSteenrod>, max_degree: u32) -> Result<Comodule> {
    let f = a_star.field();
    let p = f.p();
    let (d_xi1, d_xi2) = (2 * p - 2, 2 * p * p - 2);
    let pres = Presentation::builder(f)
        .ext("e0", 1)
        .ext("e1", 2 * p - 1)
        .ext("b", p * d_xi1 - 1)
        .poly("xi1p", p * d_xi1)
        .poly("xi2", d_xi2)
        .ext("tau2", d_xi2 + 1)
        .divided("sb", p * d_xi1)
        .ext("sxi1p", p * d_xi1 + 1)
        .ext("sxi2", d_xi2 + 1)
        .poly("stau2", d_xi2 + 2)
        .build()?;
    let m = Algebra::new(pres, max_degree)?;
    let aa = &*a_star;
    let tau1 = aa.untwisted("tau1")?;
    let neg = |c: Scalar| f.neg(c);
    // ε_0, ε_1 are the images of −τ_0, −τ_1 under H_*V(1) → A_*.
    let minus_tau1 = tau1.scaled(f, neg(1));
    let coactions = vec![
        ("e0".to_string(), Terms::new(aa, &m).add_expr(1, "1", "e0")?.add_expr(1, "tau0", "1")?.t),
        (
            "e1".to_string(),
            Terms::new(aa, &m).add_expr(1, "1", "e1")?.add_expr(neg(1), "xi1", "e0")?.add(1, &minus_tau1, "1")?.t,
        ),
        (
            "xi1p".to_string(),
            Terms::new(aa, &m)
                .add_expr(1, "1", "xi1p")?
                .add_expr(1, &format!("xi1^{p}"), "1")?
                .add_expr(1, "tau0", "b")?
                .t,
        ),
        (
            "xi2".to_string(),
            Terms::new(aa, &m)
                .add_expr(1, "1", "xi2")?
                .add_expr(1, "xi1", "xi1p")?
                .add(1, &tau1, "b")?
                .add_expr(1, "xi2", "1")?
                .t,
        ),
        (
            "tau2".to_string(),
            Terms::new(aa, &m)
                .add_expr(1, "1", "tau2")?
                .add_expr(1, "tau0", "xi2")?
                .add_expr(1, "tau1", "xi1p")?
                .add_expr(1, "tau2", "1")?
                .add_expr(neg(1), "tau0*tau1", "b")?
                .t,
        ),
        ("sxi1p".to_string(), Terms::new(aa, &m).add_expr(1, "1", "sxi1p")?.add_expr(1, "tau0", "sb")?.t),
        (
            "sxi2".to_string(),
            Terms::new(aa, &m).add_expr(1, "1", "sxi2")?.add_expr(1, "xi1", "sxi1p")?.add(1, &tau1, "sb")?.t,
        ),
        (
            "stau2".to_string(),
            Terms::new(aa, &m)
                .add_expr(1, "1", "stau2")?
                .add_expr(1, "tau0", "sxi2")?
                .add_expr(1, "tau1", "sxi1p")?
                .add_expr(neg(1), "tau0*tau1", "sb")?
                .t,
        ),
    ];
    Comodule::new(a_star, m, coactions, first_gap(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::PrimeField;

    fn a_star(d: u32) -> Arc<DualSteenrod> {
        Arc::new(DualSteenrod::new(PrimeField::new(5).unwrap(), d).unwrap())
    }

    #[test]
    fn case_one_homology_is_a_comodule() {
        let c = homology_of_k_comodule(a_star(60), 1, 4, 1, 0, 60).unwrap();
        c.check_coassociativity(60).unwrap();
        c.check_counit(60).unwrap();
        let b = c.module().generator("b").unwrap();
        assert_eq!(c.primitives(39).unwrap(), vec![b]);
    }

    #[test]
    fn cases_two_and_three_for_every_parameter() {
        for a in 0..5 {
            let c2 = homology_of_k_comodule(a_star(50), 2, 4, 1, a, 50).unwrap();
            c2.check_coassociativity(50).unwrap();
            c2.check_counit(50).unwrap();
            let x = c2.module().generator("x").unwrap();
            assert_eq!(c2.primitives(7).unwrap(), vec![x]);
            let c3 = homology_of_k_comodule(a_star(50), 3, 2, 2, a, 50).unwrap();
            c3.check_coassociativity(50).unwrap();
            for name in ["x", "y"] {
                let g = c3.module().generator(name).unwrap();
                assert!(c3.coaction_of(&g).unwrap().len() == 1, "{name} is primitive");
            }
            let dims: Vec<usize> = (0..8).map(|d| c3.module().dim(d)).collect();
            assert_eq!(dims, vec![1, 0, 0, 1, 1, 0, 0, 1]);
        }
        assert!(homology_of_k_comodule(a_star(20), 4, 2, 2, 0, 20).is_err());
    }

    #[test]
    fn v1_thh_degree_49() {
        let c = v1_thh_comodule(a_star(50), 50).unwrap();
        c.check_coassociativity(50).unwrap();
        c.check_counit(50).unwrap();
        assert_eq!(c.module().dim(49), 6);
        assert!(c.primitives(49).unwrap().is_empty());
        let sb = c.module().generator("sb").unwrap();
        assert_eq!(c.primitives(40).unwrap().len(), 1);
        assert_eq!(c.coaction_of(&sb).unwrap().len(), 1);
        assert_eq!(c.primitives(0).unwrap().len(), 1);
    }
}
