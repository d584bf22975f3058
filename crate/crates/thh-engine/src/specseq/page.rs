use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::compare::{einfty_compare, Comparison, GenRep, RepMap};
use super::spec::{Derivation, DifferentialSpec, Shift, SpecStatus};
use super::subquotient::{Bidegree, Subquotient};
use crate::algebra::{Algebra, GenKind, Monomial};
use crate::error::{invalid, Result};

/// Grading convention of a spectral sequence. Both conventions place E^r
/// classes at (filtration, internal) and use d^r: (s, t) → (s − r, t + r − 1).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    Homological,
    Brun,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PageStatus {
    /// A differential was supplied.
    Specified(SpecStatus),
    /// No differential was supplied and bidegrees force it to vanish.
    ZeroByBidegree,
    /// No differential was supplied; it was taken to be zero without proof.
    AssumedZero,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageRecord {
    pub page: u32,
    pub status: PageStatus,
    /// Total-degree dimensions before and after taking homology.
    pub dims_before: Vec<usize>,
    pub dims_after: Vec<usize>,
    /// Rank of the differential leaving each total degree.
    pub rank_out: Vec<usize>,
}

impl PageRecord {
    pub fn total_rank(&self) -> usize {
        self.rank_out.iter().sum()
    }

    /// dims_r(n) − dims_{r+1}(n) = rank out of n + rank into n, for every n.
    pub fn euler_identity_holds(&self) -> bool {
        (0..self.dims_before.len()).all(|n| {
            let into = self.rank_out.get(n + 1).copied().unwrap_or(0);
            self.dims_before[n] == self.dims_after[n] + self.rank_out[n] + into
        })
    }

    fn chi(dims: &[usize]) -> i64 {
        dims.iter().enumerate().map(|(n, &d)| if n % 2 == 0 { d as i64 } else { -(d as i64) }).sum()
    }

    pub fn euler_preserved(&self) -> bool {
        Self::chi(&self.dims_before) == Self::chi(&self.dims_after)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CollapseMethod {
    /// Every later differential has a zero source or target.
    Bidegree,
    /// Later differentials vanish on a set of multiplicative generators.
    Generators,
    /// Neither argument applies; collapse would be an assumption.
    NotProven,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Collapse {
    pub method: CollapseMethod,
    /// Later pages checked, inclusive.
    pub pages: (u32, u32),
    pub obstructions: Vec<String>,
}

impl Collapse {
    pub fn proven(&self) -> bool {
        self.method != CollapseMethod::NotProven
    }
}

/// A multiplicative spectral sequence page E^r, starting from a presented
/// bigraded algebra and advanced by supplied differentials.
#[derive(Clone, Debug)]
pub struct BigradedPage {
    sq: Subquotient,
    page: u32,
    convention: Convention,
    history: Vec<PageRecord>,
}

impl BigradedPage {
    /// E^start is the given algebra.
    pub fn new(alg: Algebra, start: u32, convention: Convention) -> Self {
        BigradedPage { sq: Subquotient::new(alg), page: start, convention, history: Vec::new() }
    }

    pub fn page(&self) -> u32 {
        self.page
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn history(&self) -> &[PageRecord] {
        &self.history
    }

    pub fn subquotient(&self) -> &Subquotient {
        &self.sq
    }

    pub fn algebra(&self) -> &Algebra {
        self.sq.algebra()
    }

    pub fn dims(&self) -> BTreeMap<Bidegree, usize> {
        self.sq.bigraded_dims()
    }

    pub fn total_dims(&self) -> Vec<usize> {
        self.sq.total_dims()
    }

    /// True when some applied differential was only a hypothesis.
    pub fn is_conjectural(&self) -> bool {
        self.history.iter().any(|r| r.status == PageStatus::Specified(SpecStatus::Conjectural))
    }

    /// Every page passed the Euler-characteristic bookkeeping.
    pub fn euler_consistent(&self) -> bool {
        self.history.iter().all(|r| r.euler_identity_holds() && r.euler_preserved())
    }

    fn rank_by_total(&self, ranks: &BTreeMap<Bidegree, usize>) -> Vec<usize> {
        let mut out = vec![0; self.sq.max_degree() as usize + 1];
        for (&(s, t), &r) in ranks {
            out[(s + t) as usize] += r;
        }
        out
    }

    /// Applies d^r for the spec's page, first passing intermediate pages with
    /// zero differentials. Afterwards the page is E^{r+1}.
    pub fn run_page(&mut self, spec: &DifferentialSpec) -> Result<()> {
        if spec.page < self.page {
            return Err(invalid(format!("page {} already passed (now at E^{})", spec.page, self.page)));
        }
        while self.page < spec.page {
            self.advance_zero();
        }
        let alg = self.sq.algebra_arc();
        let d = Derivation::new(&alg, spec, Shift::page(spec.page))?;
        d.check_relations()?;
        let before = self.sq.total_dims();
        let ranks = self.sq.apply(&d)?;
        let rank_out = self.rank_by_total(&ranks);
        self.history.push(PageRecord {
            page: spec.page,
            status: PageStatus::Specified(spec.status),
            dims_before: before,
            dims_after: self.sq.total_dims(),
            rank_out,
        });
        self.page += 1;
        Ok(())
    }

    /// Passes to the next page with d^r = 0.
    pub fn advance_zero(&mut self) {
        let status = if self.sq.zero_by_bidegree(Shift::page(self.page)) {
            PageStatus::ZeroByBidegree
        } else {
            PageStatus::AssumedZero
        };
        let dims = self.sq.total_dims();
        self.history.push(PageRecord {
            page: self.page,
            status,
            rank_out: vec![0; dims.len()],
            dims_before: dims.clone(),
            dims_after: dims,
        });
        self.page += 1;
    }

    /// Runs the given differentials in page order, then advances with zero
    /// differentials until the page is E^{last_page}.
    pub fn run_sequence(&mut self, specs: &[DifferentialSpec], last_page: u32) -> Result<()> {
        let mut sorted: Vec<&DifferentialSpec> = specs.iter().collect();
        sorted.sort_by_key(|s| s.page);
        for s in sorted {
            self.run_page(s)?;
        }
        while self.page < last_page {
            self.advance_zero();
        }
        Ok(())
    }

    /// Largest filtration of a nonzero class; d^r vanishes for r beyond it.
    pub fn max_filtration(&self) -> u32 {
        self.sq.bigraded_dims().keys().map(|&(s, _)| s).max().unwrap_or(0)
    }

    /// Decides whether the current page is E^∞ within the computed range.
    ///
    /// Tries bidegrees first. Otherwise, with a claimed presentation and
    /// representatives of its generators, checks that those generate the page
    /// and that no later differential can be nonzero on any of them, taking
    /// γ_{p^i} as the multiplicative generators of a divided-power factor.
    pub fn check_collapse(&self, claimed: Option<(&Algebra, &[(String, GenRep)])>) -> Result<Collapse> {
        let first = self.page;
        let last = self.max_filtration().max(first);
        let mut obstructions = Vec::new();
        for r in first..=last {
            if !self.sq.zero_by_bidegree(Shift::page(r)) {
                obstructions.push(format!("d^{r} has nonzero source and target bidegrees"));
            }
        }
        if obstructions.is_empty() {
            return Ok(Collapse { method: CollapseMethod::Bidegree, pages: (first, last), obstructions });
        }
        let Some((claimed, reps)) = claimed else {
            return Ok(Collapse { method: CollapseMethod::NotProven, pages: (first, last), obstructions });
        };
        let mut gen_obstructions = Vec::new();
        let through = self.sq.max_degree().min(claimed.max_degree());
        let cmp = einfty_compare(&self.sq, claimed, through, Some(reps), 0)?;
        let rc = cmp.representatives.as_ref().expect("representatives were supplied");
        if !cmp.dims_match() || !rc.basis_failures.is_empty() || !rc.generator_issues.is_empty() {
            gen_obstructions.push("representatives do not generate the page".to_string());
        }
        let map = RepMap::new(self.algebra(), claimed, reps)?;
        let cp = claimed.presentation();
        let p = cp.field().p();
        for (i, g) in cp.generators().iter().enumerate() {
            let mut exps = vec![1u32];
            if g.kind == GenKind::DividedPower {
                let mut e = p;
                while g.total_degree() * e <= through {
                    exps.push(e);
                    e *= p;
                }
            }
            for e in exps {
                if g.total_degree() * e > through {
                    continue;
                }
                let img = map.image_monomial(&Monomial::single(cp.ngens(), i, e))?;
                let Some(bd) = img.terms().next().map(|(m, _)| self.algebra().presentation().bidegree(m)) else {
                    continue;
                };
                for r in first..=last {
                    if let Some(tgt) = Shift::page(r).apply(bd) {
                        if self.sq.dim(tgt) > 0 {
                            let name = if e == 1 { g.name.clone() } else { format!("{}^[{e}]", g.name) };
                            gen_obstructions.push(format!("d^{r}({name}) could land in {tgt:?}"));
                        }
                    }
                }
            }
        }
        if gen_obstructions.is_empty() {
            Ok(Collapse { method: CollapseMethod::Generators, pages: (first, last), obstructions: Vec::new() })
        } else {
            obstructions.extend(gen_obstructions);
            Ok(Collapse { method: CollapseMethod::NotProven, pages: (first, last), obstructions })
        }
    }

    /// Compares the current page with a claimed algebra; see [`einfty_compare`].
    pub fn compare(
        &self,
        claimed: &Algebra,
        through: u32,
        reps: Option<&[(String, GenRep)]>,
        max_pairs: usize,
    ) -> Result<Comparison> {
        einfty_compare(&self.sq, claimed, through, reps, max_pairs)
    }

    /// Dimension chart through a total degree: one row per internal degree,
    /// one column per filtration.
    pub fn chart(&self, through: u32) -> String {
        let dims: BTreeMap<Bidegree, usize> =
            self.dims().into_iter().filter(|&((s, t), _)| s + t <= through).collect();
        let mut cols: Vec<u32> = dims.keys().map(|&(s, _)| s).collect();
        cols.sort();
        cols.dedup();
        let mut rows: Vec<u32> = dims.keys().map(|&(_, t)| t).collect();
        rows.sort();
        rows.dedup();
        let mut out = format!("E^{} (rows: internal degree, columns: filtration)\n", self.page);
        out.push_str(&format!("{:>5} |", "t\\s"));
        for s in &cols {
            out.push_str(&format!("{s:>4}"));
        }
        out.push('\n');
        for t in rows.iter().rev() {
            out.push_str(&format!("{t:>5} |"));
            for s in &cols {
                match dims.get(&(*s, *t)) {
                    Some(d) => out.push_str(&format!("{d:>4}")),
                    None => out.push_str("   ."),
                }
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Presentation;
    use crate::fp::PrimeField;

    fn e2() -> Algebra {
        // E(l) ⊗ P(m) ⊗ Γ(sx) ⊗ E(sy) in the shape of a p = 5, r = 4 page.
        let pres = Presentation::builder(PrimeField::new(5).unwrap())
            .bigraded("sx", GenKind::DividedPower, 0, 8)
            .bigraded("sy", GenKind::Exterior, 0, 9)
            .bigraded("l", GenKind::Exterior, 9, 0)
            .bigraded("m", GenKind::Polynomial, 10, 0)
            .build()
            .unwrap();
        Algebra::new(pres, 61).unwrap()
    }

    #[test]
    fn pages_are_recorded_with_euler_bookkeeping() {
        let mut page = BigradedPage::new(e2(), 2, Convention::Brun);
        let specs = [DifferentialSpec::new(9).set("l", "sx"), DifferentialSpec::new(10).set("m", "sy")];
        page.run_sequence(&specs, 11).unwrap();
        assert_eq!(page.page(), 11);
        assert_eq!(page.history().len(), 9);
        assert!(page.euler_consistent());
        assert_eq!(page.history()[0].status, PageStatus::ZeroByBidegree);
        assert!(page.history()[7].total_rank() > 0);
        assert!(!page.is_conjectural());
    }

    #[test]
    fn passed_pages_are_rejected() {
        let mut page = BigradedPage::new(e2(), 2, Convention::Brun);
        page.run_page(&DifferentialSpec::new(9).set("l", "sx")).unwrap();
        assert!(page.run_page(&DifferentialSpec::new(3)).is_err());
    }

    #[test]
    fn collapse_by_bidegree_on_a_single_column() {
        let pres = Presentation::builder(PrimeField::new(5).unwrap())
            .bigraded("sx", GenKind::DividedPower, 0, 8)
            .build()
            .unwrap();
        let page = BigradedPage::new(Algebra::new(pres, 40).unwrap(), 2, Convention::Homological);
        assert_eq!(page.check_collapse(None).unwrap().method, CollapseMethod::Bidegree);
    }

    #[test]
    fn chart_lists_classes() {
        let page = BigradedPage::new(e2(), 2, Convention::Brun);
        let chart = page.chart(10);
        assert!(chart.contains("E^2"));
        assert!(chart.lines().count() > 3);
    }
}
