use std::collections::BTreeMap;

use crate::algebra::{Algebra, Element, Monomial};
use crate::fp::{PrimeField, Scalar};

/// An element of L ⊗ R for two presented algebras, as (left, right) ↦ scalar.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tensor {
    terms: BTreeMap<(Monomial, Monomial), Scalar>,
}

impl Tensor {
    pub fn zero() -> Self {
        Tensor::default()
    }

    /// a ⊗ m for elements a and m.
    pub fn pure(field: PrimeField, a: &Element, m: &Element) -> Self {
        let mut t = Tensor::zero();
        for (am, ac) in a.terms() {
            for (mm, mc) in m.terms() {
                t.add_term(field, am.clone(), mm.clone(), field.mul(ac, mc));
            }
        }
        t
    }

    pub fn add_term(&mut self, field: PrimeField, a: Monomial, m: Monomial, c: Scalar) {
        if c == 0 {
            return;
        }
        let key = (a, m);
        let v = field.add(self.terms.get(&key).copied().unwrap_or(0), c);
        if v == 0 {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, v);
        }
    }

    pub fn add_scaled(&mut self, field: PrimeField, other: &Tensor, c: Scalar) {
        for ((a, m), &v) in &other.terms {
            self.add_term(field, a.clone(), m.clone(), field.mul(v, c));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Monomial, Scalar)> {
        self.terms.iter().map(|((a, m), &c)| (a, m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Product in the graded tensor product:
    /// (a⊗m)(a'⊗m') = (−1)^{|m||a'|} aa' ⊗ mm'.
    pub fn mul(&self, other: &Tensor, left: &Algebra, right: &Algebra) -> Tensor {
        let f = left.field();
        let mut out = Tensor::zero();
        for ((a, m), &c) in &self.terms {
            let m_odd = right.presentation().monomial_is_odd(m);
            for ((a2, m2), &c2) in &other.terms {
                let sign = f.sign(m_odd && left.presentation().monomial_is_odd(a2));
                let pa = left.multiply(a, a2);
                if pa.is_zero() {
                    continue;
                }
                let pm = right.multiply(m, m2);
                for (x, cx) in pa.terms() {
                    for (y, cy) in pm.terms() {
                        let c = f.mul(f.mul(c, c2), f.mul(sign, f.mul(cx, cy)));
                        out.add_term(f, x.clone(), y.clone(), c);
                    }
                }
            }
        }
        out
    }

    /// The unit 1 ⊗ 1.
    pub fn one(left: &Algebra, right: &Algebra) -> Tensor {
        let mut t = Tensor::zero();
        t.add_term(left.field(), left.presentation().one(), right.presentation().one(), 1);
        t
    }

    pub fn format(&self, left: &Algebra, right: &Algebra) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let p = left.field().p();
        self.terms
            .iter()
            .map(|((a, m), &c)| {
                let body = format!(
                    "{}⊗{}",
                    left.presentation().format_monomial(a),
                    right.presentation().format_monomial(m)
                );
                match c {
                    1 => body,
                    c if c == p - 1 => format!("-{body}"),
                    c => format!("{c}*{body}"),
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Elements of L ⊗ M ⊗ R, used for coassociativity checks.
pub(crate) type Triple = BTreeMap<(Monomial, Monomial, Monomial), Scalar>;

pub(crate) fn add_triple(field: PrimeField, t: &mut Triple, key: (Monomial, Monomial, Monomial), c: Scalar) {
    if c == 0 {
        return;
    }
    let v = field.add(t.get(&key).copied().unwrap_or(0), c);
    if v == 0 {
        t.remove(&key);
    } else {
        t.insert(key, v);
    }
}
