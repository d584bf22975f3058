//! Graded-commutative algebras over F_p presented as tensor products of
//! polynomial, exterior, divided-power and truncated polynomial pieces,
//! optionally modulo homogeneous relations.
//!
//! A [`Monomial`] stores one exponent per generator in declaration order. For
//! a divided-power generator the exponent n names the basis class γ_n, not
//! the n-th power. The canonical monomial is the ordered product of its
//! factors, which fixes all Koszul signs.

mod basis;
mod json;
mod parse;
mod series;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{invalid, Result};
use crate::fp::{lucas_binomial, PrimeField, Scalar};

pub use basis::Algebra;
pub use json::{GeneratorJson, PresentationJson};
pub use series::PoincareSeries;

/// The four kinds of tensor factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenKind {
    Polynomial,
    Exterior,
    DividedPower,
    /// Polynomial modulo the h-th power.
    Truncated(u32),
}

impl GenKind {
    /// Largest admissible exponent, if bounded.
    pub fn max_exponent(&self) -> Option<u32> {
        match self {
            GenKind::Exterior => Some(1),
            GenKind::Truncated(h) => Some(h - 1),
            GenKind::Polynomial | GenKind::DividedPower => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub internal_degree: u32,
    pub filtration_degree: u32,
    pub kind: GenKind,
}

impl Generator {
    pub fn new(name: impl Into<String>, internal_degree: u32, kind: GenKind) -> Self {
        Generator { name: name.into(), internal_degree, filtration_degree: 0, kind }
    }

    pub fn with_filtration(mut self, filtration: u32) -> Self {
        self.filtration_degree = filtration;
        self
    }

    pub fn total_degree(&self) -> u32 {
        self.internal_degree + self.filtration_degree
    }

    pub fn is_odd(&self) -> bool {
        self.total_degree() % 2 == 1
    }
}

/// Exponent vector indexed by generator position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn single(n: usize, idx: usize, exp: u32) -> Self {
        let mut m = Monomial::one(n);
        m.0[idx] = exp;
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }
}

/// A linear combination of monomials with nonzero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Element {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn from_monomial(m: Monomial, c: Scalar) -> Self {
        let mut e = Element::zero();
        if c != 0 {
            e.terms.insert(m, c);
        }
        e
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, Scalar)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, field: PrimeField, m: Monomial, c: Scalar) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c % field.p());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = field.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    /// self += c·other
    pub fn add_scaled(&mut self, field: PrimeField, other: &Element, c: Scalar) {
        if c == 0 {
            return;
        }
        for (m, x) in other.terms() {
            self.add_term(field, m.clone(), field.mul(x, c));
        }
    }

    pub fn scaled(&self, field: PrimeField, c: Scalar) -> Element {
        let mut e = Element::zero();
        e.add_scaled(field, self, c);
        e
    }

    pub fn negated(&self, field: PrimeField) -> Element {
        self.scaled(field, field.neg(1))
    }

    pub fn sum(field: PrimeField, parts: &[&Element]) -> Element {
        let mut e = Element::zero();
        for part in parts {
            e.add_scaled(field, part, 1);
        }
        e
    }
}

/// A presented graded-commutative algebra. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    field: PrimeField,
    generators: Vec<Generator>,
    relations: Vec<Element>,
}

/// Collects generators and relation strings, validating on [`build`](Self::build).
#[derive(Clone, Debug)]
pub struct PresentationBuilder {
    field: PrimeField,
    generators: Vec<Generator>,
    relations: Vec<String>,
}

impl PresentationBuilder {
    pub fn generator(mut self, g: Generator) -> Self {
        self.generators.push(g);
        self
    }

    pub fn poly(self, name: &str, degree: u32) -> Self {
        self.generator(Generator::new(name, degree, GenKind::Polynomial))
    }

    pub fn ext(self, name: &str, degree: u32) -> Self {
        self.generator(Generator::new(name, degree, GenKind::Exterior))
    }

    pub fn divided(self, name: &str, degree: u32) -> Self {
        self.generator(Generator::new(name, degree, GenKind::DividedPower))
    }

    pub fn truncated(self, name: &str, degree: u32, height: u32) -> Self {
        self.generator(Generator::new(name, degree, GenKind::Truncated(height)))
    }

    /// Generator in bidegree (filtration, internal).
    pub fn bigraded(self, name: &str, kind: GenKind, filtration: u32, internal: u32) -> Self {
        self.generator(Generator::new(name, internal, kind).with_filtration(filtration))
    }

    pub fn relation(mut self, rel: &str) -> Self {
        self.relations.push(rel.to_string());
        self
    }

    pub fn build(self) -> Result<Presentation> {
        let mut pres = Presentation { field: self.field, generators: self.generators, relations: Vec::new() };
        pres.validate_generators()?;
        let mut relations = Vec::new();
        for r in &self.relations {
            let e = parse::parse_free(&pres, r)?;
            if !e.is_zero() {
                relations.push(e);
            }
        }
        pres.relations = relations;
        pres.validate_relations()?;
        Ok(pres)
    }
}

impl Presentation {
    pub fn builder(field: PrimeField) -> PresentationBuilder {
        PresentationBuilder { field, generators: Vec::new(), relations: Vec::new() }
    }

    /// The ground field F_p as a presentation with no generators.
    pub fn trivial(field: PrimeField) -> Self {
        Presentation { field, generators: Vec::new(), relations: Vec::new() }
    }

    pub fn from_parts(field: PrimeField, generators: Vec<Generator>, relations: Vec<Element>) -> Result<Self> {
        let pres = Presentation { field, generators, relations: relations.into_iter().filter(|r| !r.is_zero()).collect() };
        pres.validate_generators()?;
        pres.validate_relations()?;
        Ok(pres)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relations(&self) -> &[Element] {
        &self.relations
    }

    pub fn ngens(&self) -> usize {
        self.generators.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn generator(&self, name: &str) -> Result<&Generator> {
        self.index_of(name)
            .map(|i| &self.generators[i])
            .ok_or_else(|| invalid(format!("no generator named {name:?}")))
    }

    pub fn one(&self) -> Monomial {
        Monomial::one(self.ngens())
    }

    /// The monomial consisting of a single generator (γ_1 for divided powers).
    pub fn gen_monomial(&self, name: &str) -> Result<Monomial> {
        let i = self.index_of(name).ok_or_else(|| invalid(format!("no generator named {name:?}")))?;
        Ok(Monomial::single(self.ngens(), i, 1))
    }

    fn validate_generators(&self) -> Result<()> {
        let odd_p = self.field.p() != 2;
        for (i, g) in self.generators.iter().enumerate() {
            let valid_name = g.name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && g.name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'');
            if !valid_name {
                return Err(invalid(format!("generator name {:?} is not an identifier", g.name)));
            }
            if self.generators[..i].iter().any(|h| h.name == g.name) {
                return Err(invalid(format!("duplicate generator name {:?}", g.name)));
            }
            if g.total_degree() == 0 {
                return Err(invalid(format!("generator {:?} has total degree 0", g.name)));
            }
            if let GenKind::Truncated(h) = g.kind {
                if h < 2 {
                    return Err(invalid(format!("truncation height of {:?} must be at least 2", g.name)));
                }
            }
            if odd_p {
                let want_odd = g.kind == GenKind::Exterior;
                if g.is_odd() != want_odd {
                    return Err(invalid(format!(
                        "generator {:?} of kind {:?} has total degree {}, wrong parity for a graded-commutative algebra",
                        g.name,
                        g.kind,
                        g.total_degree()
                    )));
                }
            }
        }
        Ok(())
    }

    fn validate_relations(&self) -> Result<()> {
        for r in &self.relations {
            let mut bideg = None;
            for (m, _) in r.terms() {
                if m.0.len() != self.ngens() || !self.is_admissible(m) {
                    return Err(invalid(format!("relation term {} is not admissible", self.format_monomial(m))));
                }
                let b = self.bidegree(m);
                if *bideg.get_or_insert(b) != b {
                    return Err(invalid(format!("relation {} is not homogeneous", self.format_element(r))));
                }
            }
        }
        Ok(())
    }

    pub fn is_admissible(&self, m: &Monomial) -> bool {
        m.0.len() == self.ngens()
            && self
                .generators
                .iter()
                .zip(&m.0)
                .all(|(g, &e)| g.kind.max_exponent().is_none_or(|mx| e <= mx))
    }

    pub fn degree(&self, m: &Monomial) -> u32 {
        self.generators.iter().zip(&m.0).map(|(g, &e)| g.total_degree() * e).sum()
    }

    /// (filtration, internal) bidegree.
    pub fn bidegree(&self, m: &Monomial) -> (u32, u32) {
        self.generators
            .iter()
            .zip(&m.0)
            .fold((0, 0), |(s, t), (g, &e)| (s + g.filtration_degree * e, t + g.internal_degree * e))
    }

    /// Parity of the factor g_i^e (or γ_e(g_i)).
    fn factor_is_odd(&self, i: usize, e: u32) -> bool {
        self.generators[i].is_odd() && e % 2 == 1
    }

    pub fn monomial_is_odd(&self, m: &Monomial) -> bool {
        self.degree(m) % 2 == 1
    }

    /// Product in the free algebra (relations ignored). None means zero.
    pub fn multiply_free(&self, a: &Monomial, b: &Monomial) -> Option<(Scalar, Monomial)> {
        let f = self.field;
        let n = self.ngens();
        let mut coef: Scalar = 1;
        let mut out = vec![0u32; n];
        for i in 0..n {
            let (x, y) = (a.0[i], b.0[i]);
            out[i] = match self.generators[i].kind {
                GenKind::Exterior => {
                    if x + y > 1 {
                        return None;
                    }
                    x + y
                }
                GenKind::Truncated(h) => {
                    if x + y >= h {
                        return None;
                    }
                    x + y
                }
                GenKind::Polynomial => x + y,
                GenKind::DividedPower => {
                    let c = lucas_binomial((x + y) as u64, x as u64, f);
                    if c == 0 {
                        return None;
                    }
                    coef = f.mul(coef, c);
                    x + y
                }
            };
        }
        // Move each factor of b leftwards past the later factors of a.
        let mut odd = false;
        let mut a_suffix_odd = false;
        for i in (0..n).rev() {
            if self.factor_is_odd(i, b.0[i]) && a_suffix_odd {
                odd = !odd;
            }
            if self.factor_is_odd(i, a.0[i]) {
                a_suffix_odd = !a_suffix_odd;
            }
        }
        if odd {
            coef = f.neg(coef);
        }
        Some((coef, Monomial(out)))
    }

    /// Product of elements in the free algebra.
    pub fn mul_free(&self, a: &Element, b: &Element) -> Element {
        let f = self.field;
        let mut out = Element::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                if let Some((c, m)) = self.multiply_free(ma, mb) {
                    out.add_term(f, m, f.mul(f.mul(ca, cb), c));
                }
            }
        }
        out
    }

    /// Parses an element of the free algebra; see the parser for syntax.
    pub fn parse_free(&self, s: &str) -> Result<Element> {
        parse::parse_free(self, s)
    }

    /// Tensor product; generator names must be disjoint.
    pub fn tensor(&self, other: &Presentation) -> Result<Presentation> {
        if self.field != other.field {
            return Err(invalid("tensor factors live over different fields"));
        }
        let (n1, n2) = (self.ngens(), other.ngens());
        let pad = |e: &Element, left: bool| {
            let mut out = Element::zero();
            for (m, c) in e.terms() {
                let mut v = vec![0; n1 + n2];
                if left {
                    v[..n1].copy_from_slice(&m.0);
                } else {
                    v[n1..].copy_from_slice(&m.0);
                }
                out.add_term(self.field, Monomial(v), c);
            }
            out
        };
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().cloned());
        let mut relations: Vec<Element> = self.relations.iter().map(|r| pad(r, true)).collect();
        relations.extend(other.relations.iter().map(|r| pad(r, false)));
        Presentation::from_parts(self.field, generators, relations)
    }

    /// Maps an element over another presentation's generators into this one
    /// by generator name.
    pub fn transport(&self, from: &Presentation, e: &Element) -> Result<Element> {
        let map: Vec<usize> = from
            .generators
            .iter()
            .map(|g| self.index_of(&g.name).ok_or_else(|| invalid(format!("generator {:?} missing", g.name))))
            .collect::<Result<_>>()?;
        let mut out = Element::zero();
        // Reordering generators can introduce Koszul signs, so rebuild by products.
        for (m, c) in e.terms() {
            let mut acc = Element::from_monomial(self.one(), c);
            for (i, &ex) in m.0.iter().enumerate() {
                if ex > 0 {
                    let factor = Element::from_monomial(Monomial::single(self.ngens(), map[i], ex), 1);
                    acc = self.mul_free(&acc, &factor);
                }
            }
            out.add_scaled(self.field, &acc, 1);
        }
        Ok(out)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let parts: Vec<String> = self
            .generators
            .iter()
            .zip(&m.0)
            .filter(|(_, &e)| e > 0)
            .map(|(g, &e)| match (g.kind, e) {
                (GenKind::DividedPower, 1) => g.name.clone(),
                (GenKind::DividedPower, e) => format!("{}^[{e}]", g.name),
                (_, 1) => g.name.clone(),
                (_, e) => format!("{}^{e}", g.name),
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    pub fn format_element(&self, e: &Element) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        let p = self.field.p();
        let mut out = String::new();
        for (i, (m, c)) in e.terms().enumerate() {
            // Print coefficients in the symmetric range so −1 reads as a minus sign.
            let (neg, mag) = if c > p / 2 { (true, p - c) } else { (false, c) };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = self.format_monomial(m);
            match (mag, mono.as_str()) {
                (1, _) => out.push_str(&mono),
                (_, "1") => out.push_str(&mag.to_string()),
                _ => out.push_str(&format!("{mag}*{mono}")),
            }
        }
        out
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|g| {
                let kind = match g.kind {
                    GenKind::Polynomial => "P".to_string(),
                    GenKind::Exterior => "E".to_string(),
                    GenKind::DividedPower => "Γ".to_string(),
                    GenKind::Truncated(h) => format!("P_{h}"),
                };
                format!("{kind}({} @ ({},{}))", g.name, g.filtration_degree, g.internal_degree)
            })
            .collect();
        write!(f, "{} over {}", gens.join(" ⊗ "), self.field)?;
        if !self.relations.is_empty() {
            let rels: Vec<String> = self.relations.iter().map(|r| self.format_element(r)).collect();
            write!(f, " / ({})", rels.join(", "))?;
        }
        Ok(())
    }
}
