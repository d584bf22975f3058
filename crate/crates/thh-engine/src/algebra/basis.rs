use std::collections::HashMap;

use super::{Element, Monomial, PoincareSeries, Presentation};
use crate::error::{invalid, Result};
use crate::fp::{PrimeField, Scalar, Subspace};

#[derive(Clone, Debug)]
struct DegreeData {
    free: Vec<Monomial>,
    free_index: HashMap<Monomial, usize>,
    // Span of the relation ideal in this degree, over the free monomials.
    ideal: Option<Subspace>,
    basis: Vec<Monomial>,
    free_to_basis: Vec<Option<usize>>,
}

/// A presentation together with its monomial basis in every total degree up
/// to a bound. Products landing above the bound are dropped.
#[derive(Clone, Debug)]
pub struct Algebra {
    pres: Presentation,
    max_degree: u32,
    degrees: Vec<DegreeData>,
    lookup: HashMap<Monomial, (u32, usize)>,
}

fn enumerate_free(pres: &Presentation, max_degree: u32) -> Vec<Vec<Monomial>> {
    let mut by_degree = vec![Vec::new(); max_degree as usize + 1];
    let n = pres.ngens();
    let mut cur = vec![0u32; n];

    fn rec(pres: &Presentation, i: usize, deg: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<Monomial>>) {
        if i == cur.len() {
            out[deg as usize].push(Monomial(cur.clone()));
            return;
        }
        let g = &pres.generators()[i];
        let d = g.total_degree();
        let cap = g.kind.max_exponent().unwrap_or(u32::MAX);
        let mut e = 0;
        loop {
            let total = deg + e * d;
            if total > max {
                break;
            }
            cur[i] = e;
            rec(pres, i + 1, total, max, cur, out);
            if e == cap {
                break;
            }
            e += 1;
        }
        cur[i] = 0;
    }

    rec(pres, 0, 0, max_degree, &mut cur, &mut by_degree);
    for list in by_degree.iter_mut() {
        list.sort();
    }
    by_degree
}

impl Algebra {
    pub fn new(pres: Presentation, max_degree: u32) -> Result<Self> {
        let free = enumerate_free(&pres, max_degree);
        let f = pres.field();
        let rel_degrees: Vec<u32> = pres
            .relations()
            .iter()
            .map(|r| pres.degree(r.terms().next().expect("relations are nonzero").0))
            .collect();
        let mut degrees = Vec::with_capacity(free.len());
        for (d, mons) in free.iter().cloned().enumerate() {
            let d = d as u32;
            let free_index: HashMap<Monomial, usize> =
                if pres.relations().is_empty() { HashMap::new() } else { mons.iter().cloned().zip(0..).collect() };
            let mut ideal = None;
            for (rel, &rd) in pres.relations().iter().zip(&rel_degrees) {
                if rd > d {
                    continue;
                }
                let space = ideal.get_or_insert_with(|| Subspace::zero(f, mons.len()));
                // The ideal in degree d is spanned by (degree d − |ρ| monomials)·ρ.
                for m in &free[(d - rd) as usize] {
                    let prod = pres.mul_free(&Element::from_monomial(m.clone(), 1), rel);
                    let mut v = vec![0; mons.len()];
                    for (pm, c) in prod.terms() {
                        v[free_index[pm]] = c;
                    }
                    space.insert(v);
                }
            }
            let (basis, free_to_basis) = match &ideal {
                None => (mons.clone(), (0..mons.len()).map(Some).collect()),
                Some(space) => {
                    let mut pivot = vec![false; mons.len()];
                    for &c in space.pivots() {
                        pivot[c] = true;
                    }
                    let mut basis = Vec::new();
                    let mut map = vec![None; mons.len()];
                    for (j, m) in mons.iter().enumerate() {
                        if !pivot[j] {
                            map[j] = Some(basis.len());
                            basis.push(m.clone());
                        }
                    }
                    (basis, map)
                }
            };
            degrees.push(DegreeData { free: mons, free_index, ideal, basis, free_to_basis });
        }
        let mut lookup = HashMap::new();
        for (d, data) in degrees.iter().enumerate() {
            for (i, m) in data.basis.iter().enumerate() {
                lookup.insert(m.clone(), (d as u32, i));
            }
        }
        Ok(Algebra { pres, max_degree, degrees, lookup })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn field(&self) -> PrimeField {
        self.pres.field()
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn basis(&self, degree: u32) -> &[Monomial] {
        self.degrees.get(degree as usize).map(|d| d.basis.as_slice()).unwrap_or(&[])
    }

    pub fn dim(&self, degree: u32) -> usize {
        self.basis(degree).len()
    }

    /// All free (admissible) monomials in a degree, before relations.
    pub fn free_monomials(&self, degree: u32) -> &[Monomial] {
        self.degrees.get(degree as usize).map(|d| d.free.as_slice()).unwrap_or(&[])
    }

    pub fn poincare(&self) -> PoincareSeries {
        PoincareSeries::new(self.degrees.iter().map(|d| d.basis.len()).collect())
    }

    /// (degree, index) of a basis monomial.
    pub fn index_of(&self, m: &Monomial) -> Option<(u32, usize)> {
        self.lookup.get(m).copied()
    }

    pub fn has_relations(&self) -> bool {
        !self.pres.relations().is_empty()
    }

    /// Normal form of a free-algebra element: relations applied, terms above
    /// the bound dropped.
    pub fn reduce(&self, e: &Element) -> Element {
        let f = self.field();
        if !self.has_relations() {
            let mut out = Element::zero();
            for (m, c) in e.terms() {
                if self.pres.degree(m) <= self.max_degree {
                    out.add_term(f, m.clone(), c);
                }
            }
            return out;
        }
        let mut by_degree: HashMap<u32, Vec<Scalar>> = HashMap::new();
        for (m, c) in e.terms() {
            let d = self.pres.degree(m);
            if d > self.max_degree {
                continue;
            }
            let data = &self.degrees[d as usize];
            let v = by_degree.entry(d).or_insert_with(|| vec![0; data.free.len()]);
            let j = data.free_index[m];
            v[j] = f.add(v[j], c);
        }
        let mut out = Element::zero();
        for (d, mut v) in by_degree {
            let data = &self.degrees[d as usize];
            if let Some(ideal) = &data.ideal {
                ideal.reduce(&mut v);
            }
            for (j, &c) in v.iter().enumerate() {
                if c != 0 {
                    out.add_term(f, data.free[j].clone(), c);
                }
            }
        }
        out
    }

    /// Product of two basis monomials in normal form.
    pub fn multiply(&self, a: &Monomial, b: &Monomial) -> Element {
        match self.pres.multiply_free(a, b) {
            None => Element::zero(),
            Some((c, m)) => {
                if self.pres.degree(&m) > self.max_degree {
                    Element::zero()
                } else if self.has_relations() && !self.lookup.contains_key(&m) {
                    self.reduce(&Element::from_monomial(m, c))
                } else {
                    Element::from_monomial(m, c)
                }
            }
        }
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let f = self.field();
        let mut out = Element::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let prod = self.multiply(ma, mb);
                out.add_scaled(f, &prod, f.mul(ca, cb));
            }
        }
        out
    }

    pub fn power(&self, e: &Element, n: u32) -> Element {
        let mut acc = Element::from_monomial(self.pres.one(), 1);
        for _ in 0..n {
            acc = self.mul(&acc, e);
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    fn basis_through(&self, bound: u32) -> Vec<&Monomial> {
        (0..=bound.min(self.max_degree)).flat_map(|d| self.basis(d).iter()).collect()
    }

    /// (ab)c = a(bc) on all basis triples of total degree ≤ bound. Returns
    /// the number of triples checked or the first failure.
    pub fn check_associativity(&self, bound: u32) -> std::result::Result<usize, String> {
        let basis = self.basis_through(bound);
        let mut checked = 0;
        for a in &basis {
            let da = self.pres.degree(a);
            for b in &basis {
                let db = self.pres.degree(b);
                if da + db > bound {
                    continue;
                }
                let ab = self.multiply(a, b);
                for c in &basis {
                    if da + db + self.pres.degree(c) > bound {
                        continue;
                    }
                    let cm = Element::from_monomial((*c).clone(), 1);
                    let left = self.mul(&ab, &cm);
                    let right = self.mul(&Element::from_monomial((*a).clone(), 1), &self.multiply(b, c));
                    if left != right {
                        let show = |m: &Monomial| self.pres.format_monomial(m);
                        return Err(format!("({}·{})·{} ≠ {}·({}·{})", show(a), show(b), show(c), show(a), show(b), show(c)));
                    }
                    checked += 1;
                }
            }
        }
        Ok(checked)
    }

    /// ab = (−1)^{|a||b|} ba on all basis pairs of total degree ≤ bound.
    pub fn check_graded_commutativity(&self, bound: u32) -> std::result::Result<usize, String> {
        let f = self.field();
        let basis = self.basis_through(bound);
        let mut checked = 0;
        for a in &basis {
            for b in &basis {
                if self.pres.degree(a) + self.pres.degree(b) > bound {
                    continue;
                }
                let odd = self.pres.monomial_is_odd(a) && self.pres.monomial_is_odd(b);
                let ab = self.multiply(a, b);
                let ba = self.multiply(b, a).scaled(f, f.sign(odd));
                if ab != ba {
                    let show = |m: &Monomial| self.pres.format_monomial(m);
                    return Err(format!("{}·{} and {}·{} disagree", show(a), show(b), show(b), show(a)));
                }
                checked += 1;
            }
        }
        Ok(checked)
    }

    pub fn one(&self) -> Element {
        Element::from_monomial(self.pres.one(), 1)
    }

    pub fn generator(&self, name: &str) -> Result<Element> {
        Ok(self.reduce(&Element::from_monomial(self.pres.gen_monomial(name)?, 1)))
    }

    /// Parses and reduces an element.
    pub fn parse(&self, s: &str) -> Result<Element> {
        Ok(self.reduce(&self.pres.parse_free(s)?))
    }

    /// The common degree of a nonzero homogeneous element.
    pub fn degree_of(&self, e: &Element) -> Option<u32> {
        let mut degs = e.terms().map(|(m, _)| self.pres.degree(m));
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }

    /// Coordinates of a homogeneous element of the given degree.
    pub fn to_vector(&self, degree: u32, e: &Element) -> Result<Vec<Scalar>> {
        let f = self.field();
        let n = self.dim(degree);
        let mut v = vec![0; n];
        let reduced;
        let e = if self.has_relations() && e.terms().any(|(m, _)| !self.lookup.contains_key(m)) {
            reduced = self.reduce(e);
            &reduced
        } else {
            e
        };
        for (m, c) in e.terms() {
            match self.lookup.get(m) {
                Some(&(d, i)) if d == degree => v[i] = f.add(v[i], c),
                _ => {
                    return Err(invalid(format!(
                        "{} is not a basis monomial of degree {degree}",
                        self.pres.format_monomial(m)
                    )))
                }
            }
        }
        Ok(v)
    }

    pub fn from_vector(&self, degree: u32, v: &[Scalar]) -> Element {
        let mut e = Element::zero();
        for (m, &c) in self.basis(degree).iter().zip(v) {
            e.add_term(self.field(), m.clone(), c);
        }
        e
    }

    /// Position of a free monomial's basis image, if it is itself a basis element.
    pub fn free_is_basis(&self, m: &Monomial) -> bool {
        let d = self.pres.degree(m);
        match self.degrees.get(d as usize) {
            None => false,
            Some(data) => {
                if data.ideal.is_none() {
                    return self.lookup.contains_key(m);
                }
                data.free_index.get(m).is_some_and(|&j| data.free_to_basis[j].is_some())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GenKind;

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    #[test]
    fn sweeps_cover_every_pair() {
        let p = Presentation::builder(f5()).ext("x", 3).divided("b", 4).truncated("u", 2, 3).build().unwrap();
        let a = Algebra::new(p, 12).unwrap();
        let n = a.check_associativity(12).unwrap();
        assert!(n > 0);
        // Ordered pairs of basis monomials with total degree ≤ 12.
        let dims: Vec<usize> = (0..=12).map(|d| a.dim(d)).collect();
        let pairs: usize = (0..=12).flat_map(|i| (0..=12 - i).map(move |j| (i, j))).map(|(i, j)| dims[i] * dims[j]).sum();
        assert_eq!(a.check_graded_commutativity(12).unwrap(), pairs);
    }

    #[test]
    fn exterior_polynomial_basis() {
        let p = Presentation::builder(f5()).ext("x", 7).poly("y", 8).build().unwrap();
        let a = Algebra::new(p, 16).unwrap();
        assert_eq!(a.poincare().nonzero_degrees(), vec![0, 7, 8, 15, 16]);
        assert!(a.poincare().dims.iter().all(|&d| d <= 1));
    }

    #[test]
    fn divided_powers_are_nilpotent_of_order_p() {
        for p in [3u32, 5, 7] {
            let pres = Presentation::builder(PrimeField::new(p).unwrap()).divided("g", 2).build().unwrap();
            let a = Algebra::new(pres, 2 * 20 * p).unwrap();
            for n in 1..=20 {
                let g = Element::from_monomial(Monomial(vec![n]), 1);
                assert!(a.power(&g, p).is_zero(), "γ_{n}^{p} ≠ 0");
            }
        }
    }

    #[test]
    fn divided_power_basis() {
        let p = Presentation::builder(f5()).divided("b", 40).build().unwrap();
        let a = Algebra::new(p, 85).unwrap();
        assert_eq!(a.poincare().nonzero_degrees(), vec![0, 40, 80]);
    }

    #[test]
    fn empty_presentation() {
        let a = Algebra::new(Presentation::trivial(f5()), 5).unwrap();
        assert_eq!(a.poincare().dims, vec![1, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn quotient_basis_of_relation_algebra() {
        let p = Presentation::builder(f5())
            .ext("x", 7)
            .poly("c", 56)
            .poly("d", 90)
            .ext("e", 41)
            .relation("d^2")
            .relation("c^2")
            .relation("x*e")
            .relation("x*c")
            .relation("d*e")
            .relation("d*c")
            .relation("e*c + x*d")
            .build()
            .unwrap();
        let a = Algebra::new(p, 200).unwrap();
        assert_eq!(a.poincare().nonzero_degrees(), vec![0, 7, 41, 56, 90, 97]);
        let ec = a.parse("e*c").unwrap();
        let xd = a.parse("x*d").unwrap();
        assert_eq!(ec, xd.negated(f5()));
        assert_eq!(a.basis(97).len(), 1);
    }

    #[test]
    fn truncated_generator() {
        let p = Presentation::builder(f5()).ext("x", 3).truncated("y", 4, 2).build().unwrap();
        let a = Algebra::new(p, 8).unwrap();
        assert_eq!(a.poincare().nonzero_degrees(), vec![0, 3, 4, 7]);
        assert!(a.parse("y^2").unwrap().is_zero());
        assert_eq!(a.presentation().generators()[1].kind, GenKind::Truncated(2));
    }
}
