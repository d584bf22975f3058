//! Comparing a computed page with a claimed presentation of it.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::subquotient::{Bidegree, Subquotient};
use crate::algebra::{Algebra, Element, GenKind, Monomial};
use crate::error::{invalid, Result};
use crate::fp::FpMatrix;
use crate::report::Claim;

/// Where a claimed generator lives on the page.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GenRep {
    /// An element of the page algebra, written in the parser syntax.
    Element { expr: String },
    /// γ_n of the claimed generator is γ_{stride·n} of a page generator.
    DividedPower { generator: String, stride: u32 },
}

impl GenRep {
    pub fn expr(s: &str) -> GenRep {
        GenRep::Element { expr: s.to_string() }
    }

    pub fn divided(generator: &str, stride: u32) -> GenRep {
        GenRep::DividedPower { generator: generator.to_string(), stride }
    }
}

enum Image {
    Element(Element),
    Divided { index: usize, stride: u32 },
}

/// The multiplicative map from a claimed algebra to a page algebra that
/// sends each claimed generator to its representative.
pub struct RepMap<'a> {
    page: &'a Algebra,
    claimed: &'a Algebra,
    images: Vec<Image>,
}

impl<'a> RepMap<'a> {
    pub fn new(page: &'a Algebra, claimed: &'a Algebra, reps: &[(String, GenRep)]) -> Result<Self> {
        let cp = claimed.presentation();
        let pp = page.presentation();
        let mut images: Vec<Option<Image>> = (0..cp.ngens()).map(|_| None).collect();
        for (name, rep) in reps {
            let i = cp.index_of(name).ok_or_else(|| invalid(format!("claimed algebra has no generator {name:?}")))?;
            let g = &cp.generators()[i];
            let want = (g.filtration_degree, g.internal_degree);
            let img = match rep {
                GenRep::Element { expr } => {
                    let e = page.parse(expr)?;
                    for (m, _) in e.terms() {
                        if pp.bidegree(m) != want {
                            return Err(invalid(format!(
                                "representative {expr} of {name} has bidegree {:?}, expected {want:?}",
                                pp.bidegree(m)
                            )));
                        }
                    }
                    Image::Element(e)
                }
                GenRep::DividedPower { generator, stride } => {
                    let j = pp.index_of(generator).ok_or_else(|| invalid(format!("page has no generator {generator:?}")))?;
                    let pg = &pp.generators()[j];
                    if pg.kind != GenKind::DividedPower || g.kind != GenKind::DividedPower {
                        return Err(invalid(format!("{name} ↦ γ({generator}) needs divided-power generators on both sides")));
                    }
                    let got = (pg.filtration_degree * stride, pg.internal_degree * stride);
                    if got != want {
                        return Err(invalid(format!("γ_{stride}({generator}) has bidegree {got:?}, expected {want:?}")));
                    }
                    Image::Divided { index: j, stride: *stride }
                }
            };
            images[i] = Some(img);
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, x)| x.ok_or_else(|| invalid(format!("no representative for {}", cp.generators()[i].name))))
            .collect::<Result<_>>()?;
        Ok(RepMap { page, claimed, images })
    }

    /// Image of one claimed basis monomial, as the ordered product of its factors.
    pub fn image_monomial(&self, m: &Monomial) -> Result<Element> {
        let cp = self.claimed.presentation();
        let f = self.page.field();
        let n = self.page.presentation().ngens();
        let mut acc = self.page.one();
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let factor = match (&self.images[i], cp.generators()[i].kind) {
                (Image::Divided { index, stride }, _) => {
                    Element::from_monomial(Monomial::single(n, *index, e * stride), 1)
                }
                (Image::Element(x), GenKind::DividedPower) => {
                    // γ_e = x^e / e!, available below p.
                    if e >= f.p() {
                        return Err(invalid(format!(
                            "γ_{e}({}) has no image from an element representative",
                            cp.generators()[i].name
                        )));
                    }
                    let fact = (1..=e).fold(1, |a, k| f.mul(a, k));
                    self.page.power(x, e).scaled(f, f.inv(fact))
                }
                (Image::Element(x), _) => self.page.power(x, e),
            };
            acc = self.page.mul(&acc, &factor);
        }
        Ok(acc)
    }

    pub fn image(&self, e: &Element) -> Result<Element> {
        let f = self.page.field();
        let mut out = Element::zero();
        for (m, c) in e.terms() {
            out.add_scaled(f, &self.image_monomial(m)?, c);
        }
        Ok(out)
    }
}

/// Outcome of [`einfty_compare`].
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Comparison {
    pub through: u32,
    pub expected_total: Vec<usize>,
    pub computed_total: Vec<usize>,
    /// (s, t, expected, computed) for every bidegree that differs.
    pub bigraded_mismatches: Vec<(u32, u32, usize, usize)>,
    /// Present when representatives were supplied.
    pub representatives: Option<RepCheck>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct RepCheck {
    pub generator_issues: Vec<String>,
    pub relation_issues: Vec<String>,
    /// Bidegrees where the images of the claimed basis are not a basis.
    pub basis_failures: Vec<(u32, u32)>,
    pub pairs_checked: usize,
    pub product_failures: Vec<String>,
}

impl RepCheck {
    pub fn ok(&self) -> bool {
        self.generator_issues.is_empty()
            && self.relation_issues.is_empty()
            && self.basis_failures.is_empty()
            && self.product_failures.is_empty()
    }
}

impl Comparison {
    pub fn dims_match(&self) -> bool {
        self.expected_total == self.computed_total && self.bigraded_mismatches.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.dims_match() && self.representatives.as_ref().is_none_or(RepCheck::ok)
    }

    pub fn claims(&self, label: &str) -> Vec<Claim> {
        let mut out = vec![
            Claim::equal(
                format!("{label}: total Poincaré series through degree {}", self.through),
                self.expected_total.clone(),
                self.computed_total.clone(),
            ),
            Claim::holds(
                format!("{label}: dimensions agree in every bidegree"),
                self.bigraded_mismatches.is_empty(),
                format!("(s, t, expected, computed): {:?}", self.bigraded_mismatches),
            ),
        ];
        if let Some(r) = &self.representatives {
            out.push(Claim::holds(
                format!("{label}: representatives are nonzero classes of the right bidegree"),
                r.generator_issues.is_empty(),
                r.generator_issues.join("; "),
            ));
            out.push(Claim::holds(
                format!("{label}: claimed relations hold on representatives"),
                r.relation_issues.is_empty(),
                r.relation_issues.join("; "),
            ));
            out.push(Claim::holds(
                format!("{label}: claimed basis maps to a basis in every bidegree"),
                r.basis_failures.is_empty(),
                format!("failing bidegrees {:?}", r.basis_failures),
            ));
            out.push(Claim::holds(
                format!("{label}: products agree on {} basis pairs", r.pairs_checked),
                r.product_failures.is_empty(),
                r.product_failures.join("; "),
            ));
        }
        out
    }
}

fn claimed_bigraded(claimed: &Algebra, through: u32) -> BTreeMap<Bidegree, usize> {
    let mut out = BTreeMap::new();
    let pres = claimed.presentation();
    for d in 0..=through.min(claimed.max_degree()) {
        for m in claimed.basis(d) {
            *out.entry(pres.bidegree(m)).or_insert(0) += 1;
        }
    }
    out
}

/// Compares the current page with a claimed algebra through a total degree.
///
/// With representatives, also checks that the claimed generators map to
/// permanent cycles, relations map to zero, the claimed basis maps to a basis
/// in each bidegree, and up to `max_pairs` products are respected.
pub fn einfty_compare(
    page: &Subquotient,
    claimed: &Algebra,
    through: u32,
    reps: Option<&[(String, GenRep)]>,
    max_pairs: usize,
) -> Result<Comparison> {
    if through > page.max_degree() || through > claimed.max_degree() {
        return Err(invalid(format!(
            "comparison through {through} exceeds the computed range ({} and {})",
            page.max_degree(),
            claimed.max_degree()
        )));
    }
    let mut cmp = Comparison { through, ..Default::default() };
    cmp.expected_total = claimed.poincare().truncate(through).dims;
    cmp.computed_total = page.total_dims()[..=through as usize].to_vec();
    let exp = claimed_bigraded(claimed, through);
    let got: BTreeMap<Bidegree, usize> =
        page.bigraded_dims().into_iter().filter(|&((s, t), _)| s + t <= through).collect();
    let keys: std::collections::BTreeSet<Bidegree> = exp.keys().chain(got.keys()).copied().collect();
    for k in keys {
        let (e, g) = (exp.get(&k).copied().unwrap_or(0), got.get(&k).copied().unwrap_or(0));
        if e != g {
            cmp.bigraded_mismatches.push((k.0, k.1, e, g));
        }
    }
    if let Some(reps) = reps {
        cmp.representatives = Some(check_reps(page, claimed, through, reps, max_pairs)?);
    }
    Ok(cmp)
}

fn check_reps(
    page: &Subquotient,
    claimed: &Algebra,
    through: u32,
    reps: &[(String, GenRep)],
    max_pairs: usize,
) -> Result<RepCheck> {
    let map = RepMap::new(page.algebra(), claimed, reps)?;
    let cp = claimed.presentation();
    let pp = page.algebra().presentation();
    let f = claimed.field();
    let mut out = RepCheck::default();

    for (i, g) in cp.generators().iter().enumerate() {
        if g.total_degree() > through {
            continue;
        }
        let img = map.image_monomial(&Monomial::single(cp.ngens(), i, 1))?;
        if img.is_zero() || !page.is_cycle(&img)? || page.is_boundary(&img)? {
            out.generator_issues.push(format!("{} ↦ {} is not a nonzero class", g.name, pp.format_element(&img)));
        }
    }
    for rel in cp.relations() {
        let deg = cp.degree(rel.terms().next().expect("nonzero relation").0);
        if deg > through {
            continue;
        }
        let img = map.image(rel)?;
        if !page.is_boundary(&img)? {
            out.relation_issues
                .push(format!("{} ↦ {} is nonzero", cp.format_element(rel), pp.format_element(&img)));
        }
    }

    let mut images: BTreeMap<Monomial, Element> = BTreeMap::new();
    let mut by_bidegree: BTreeMap<Bidegree, Vec<Element>> = BTreeMap::new();
    for d in 0..=through {
        for m in claimed.basis(d) {
            let img = map.image_monomial(m)?;
            images.insert(m.clone(), img.clone());
            by_bidegree.entry(cp.bidegree(m)).or_default().push(img);
        }
    }
    for (bd, imgs) in &by_bidegree {
        let ok = (|| -> Result<bool> {
            let Some(q) = page.quotient(*bd) else { return Ok(false) };
            if q.dim() != imgs.len() {
                return Ok(false);
            }
            let mut coords = Vec::new();
            for e in imgs {
                if e.is_zero() {
                    return Ok(false);
                }
                let (ebd, v) = page.vector(e)?;
                if ebd != *bd {
                    return Ok(false);
                }
                match q.coordinates(&v) {
                    None => return Ok(false),
                    Some(c) => coords.push(c),
                }
            }
            Ok(FpMatrix::from_rows(f, q.dim(), &coords).rank() == q.dim())
        })()?;
        if !ok {
            out.basis_failures.push(*bd);
        }
    }

    'outer: for (a, ia) in &images {
        let da = cp.degree(a);
        for (b, ib) in &images {
            if da + cp.degree(b) > through {
                continue;
            }
            if out.pairs_checked >= max_pairs {
                break 'outer;
            }
            out.pairs_checked += 1;
            let ab = map.image(&claimed.multiply(a, b))?;
            let mut diff = page.algebra().mul(ia, ib);
            diff.add_scaled(f, &ab, f.neg(1));
            if !page.is_boundary(&diff)? {
                out.product_failures.push(format!("{} · {}", cp.format_monomial(a), cp.format_monomial(b)));
                if out.product_failures.len() > 10 {
                    break 'outer;
                }
            }
        }
    }
    Ok(out)
}
