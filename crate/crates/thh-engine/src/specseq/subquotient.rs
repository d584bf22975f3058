//! Iterated homology of a bigraded algebra, kept as cycles Z and boundaries B
//! inside the underlying vector space of each bidegree.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use super::spec::Derivation;
use crate::algebra::{Algebra, Element, Monomial};
use crate::error::{invalid, EngineError, Result};
use crate::fp::{rank_and_kernel, FpMatrix, QuotientSpace, Scalar, Subspace};

pub type Bidegree = (u32, u32);

#[derive(Clone, Debug)]
struct Cell {
    monos: Vec<Monomial>,
    z: Subspace,
    b: Subspace,
}

impl Cell {
    fn dim(&self) -> usize {
        self.z.dim() - self.b.dim()
    }
}

/// Ranks of one applied differential, keyed by source bidegree.
pub type Ranks = BTreeMap<Bidegree, usize>;

#[derive(Clone, Debug)]
pub struct Subquotient {
    alg: Arc<Algebra>,
    cells: BTreeMap<Bidegree, Cell>,
    locate: HashMap<Monomial, (Bidegree, usize)>,
}

impl Subquotient {
    /// Starts with Z everything and B zero, so the subquotient is the algebra.
    pub fn new(alg: Algebra) -> Self {
        let alg = Arc::new(alg);
        let f = alg.field();
        let pres = alg.presentation();
        let mut cells: BTreeMap<Bidegree, Cell> = BTreeMap::new();
        let mut locate = HashMap::new();
        for deg in 0..=alg.max_degree() {
            for m in alg.basis(deg) {
                let bd = pres.bidegree(m);
                let cell = cells
                    .entry(bd)
                    .or_insert_with(|| Cell { monos: Vec::new(), z: Subspace::zero(f, 0), b: Subspace::zero(f, 0) });
                locate.insert(m.clone(), (bd, cell.monos.len()));
                cell.monos.push(m.clone());
            }
        }
        for cell in cells.values_mut() {
            cell.z = Subspace::full(f, cell.monos.len());
            cell.b = Subspace::zero(f, cell.monos.len());
        }
        Subquotient { alg, cells, locate }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub(crate) fn algebra_arc(&self) -> Arc<Algebra> {
        self.alg.clone()
    }

    pub fn max_degree(&self) -> u32 {
        self.alg.max_degree()
    }

    pub fn bidegrees(&self) -> impl Iterator<Item = Bidegree> + '_ {
        self.cells.keys().copied()
    }

    pub fn dim(&self, bd: Bidegree) -> usize {
        self.cells.get(&bd).map_or(0, Cell::dim)
    }

    /// Nonzero dimensions by bidegree.
    pub fn bigraded_dims(&self) -> BTreeMap<Bidegree, usize> {
        self.cells.iter().filter(|(_, c)| c.dim() > 0).map(|(&k, c)| (k, c.dim())).collect()
    }

    /// Dimensions by total degree 0..=max_degree.
    pub fn total_dims(&self) -> Vec<usize> {
        let mut out = vec![0; self.max_degree() as usize + 1];
        for (&(s, t), c) in &self.cells {
            out[(s + t) as usize] += c.dim();
        }
        out
    }

    /// Alternating sum of all dimensions present.
    pub fn euler_characteristic(&self) -> i64 {
        self.total_dims()
            .iter()
            .enumerate()
            .map(|(n, &d)| if n % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }

    /// Coordinates of a homogeneous element in its cell.
    pub fn vector(&self, e: &Element) -> Result<(Bidegree, Vec<Scalar>)> {
        let f = self.alg.field();
        let mut bd = None;
        let mut v = Vec::new();
        for (m, c) in e.terms() {
            let &(cell_bd, i) = self.locate.get(m).ok_or_else(|| {
                invalid(format!("{} is not a basis monomial in range", self.alg.presentation().format_monomial(m)))
            })?;
            match bd {
                None => {
                    bd = Some(cell_bd);
                    v = vec![0; self.cells[&cell_bd].monos.len()];
                }
                Some(b) if b != cell_bd => {
                    return Err(EngineError::Bidegree(format!(
                        "{} is not bihomogeneous",
                        self.alg.presentation().format_element(e)
                    )))
                }
                _ => {}
            }
            v[i] = f.add(v[i], c);
        }
        bd.map(|b| (b, v)).ok_or_else(|| invalid("the zero element has no bidegree"))
    }

    pub fn element(&self, bd: Bidegree, v: &[Scalar]) -> Element {
        let f = self.alg.field();
        let mut e = Element::zero();
        if let Some(cell) = self.cells.get(&bd) {
            for (m, &c) in cell.monos.iter().zip(v) {
                e.add_term(f, m.clone(), c);
            }
        }
        e
    }

    /// Is e a cycle at the current stage? Zero counts as a cycle.
    pub fn is_cycle(&self, e: &Element) -> Result<bool> {
        if e.is_zero() {
            return Ok(true);
        }
        let (bd, v) = self.vector(e)?;
        Ok(self.cells[&bd].z.contains(&v))
    }

    /// Is e a boundary at the current stage, i.e. zero in the subquotient?
    pub fn is_boundary(&self, e: &Element) -> Result<bool> {
        if e.is_zero() {
            return Ok(true);
        }
        let (bd, v) = self.vector(e)?;
        Ok(self.cells[&bd].b.contains(&v))
    }

    pub fn quotient(&self, bd: Bidegree) -> Option<QuotientSpace> {
        self.cells.get(&bd).map(|c| QuotientSpace::new(&c.z, &c.b))
    }

    /// Chosen representatives of a basis of the subquotient in a bidegree.
    pub fn reps(&self, bd: Bidegree) -> Vec<Element> {
        match self.quotient(bd) {
            None => Vec::new(),
            Some(q) => q.reps().iter().map(|v| self.element(bd, v)).collect(),
        }
    }

    /// Replaces the subquotient by the homology of the induced differential.
    ///
    /// Fails when the derivation does not preserve cycles and boundaries, or
    /// when the induced map does not square to zero.
    pub fn apply(&mut self, d: &Derivation<'_>) -> Result<Ranks> {
        if !std::ptr::eq(&*self.alg, d.algebra()) {
            return Err(invalid("derivation is defined on a different algebra"));
        }
        let f = self.alg.field();
        let pres = self.alg.presentation();
        let shift = d.shift();
        // Matrix of d from each cell, columns indexed by source monomials.
        let mut maps: BTreeMap<Bidegree, (Bidegree, FpMatrix)> = BTreeMap::new();
        for (&src, cell) in &self.cells {
            let Some(tgt) = shift.apply(src) else { continue };
            let Some(tcell) = self.cells.get(&tgt) else { continue };
            let mut cols = Vec::with_capacity(cell.monos.len());
            for m in &cell.monos {
                let img = d.apply_monomial(m);
                let mut v = vec![0; tcell.monos.len()];
                for (tm, c) in img.terms() {
                    match self.locate.get(tm) {
                        Some(&(bd, i)) if bd == tgt => v[i] = f.add(v[i], c),
                        _ => {
                            return Err(EngineError::Bidegree(format!(
                                "d({}) has a term {} outside bidegree {tgt:?}",
                                pres.format_monomial(m),
                                pres.format_monomial(tm)
                            )))
                        }
                    }
                }
                cols.push(v);
            }
            maps.insert(src, (tgt, FpMatrix::from_columns(f, tcell.monos.len(), &cols)));
        }

        let mut new_z: BTreeMap<Bidegree, Subspace> = BTreeMap::new();
        let mut new_b: BTreeMap<Bidegree, Subspace> = BTreeMap::new();
        let mut ranks = Ranks::new();
        for (&src, (tgt, mat)) in &maps {
            let cell = &self.cells[&src];
            let tcell = &self.cells[tgt];
            let images: Vec<Vec<Scalar>> = cell.z.basis().iter().map(|z| mat.apply(z)).collect();
            for (z, img) in cell.z.basis().iter().zip(&images) {
                if !tcell.z.contains(img) {
                    return Err(EngineError::IllDefined(format!(
                        "d sends the cycle {} to a non-cycle",
                        pres.format_element(&self.element(src, z))
                    )));
                }
                // d∘d on the page: the image must be a cycle whose own image is a boundary.
                if let Some((tt, mat2)) = maps.get(tgt) {
                    let dd = mat2.apply(img);
                    if !self.cells[tt].b.contains(&dd) {
                        return Err(EngineError::NotSquareZero(format!(
                            "d(d({})) is nonzero on the page",
                            pres.format_element(&self.element(src, z))
                        )));
                    }
                }
            }
            for bvec in cell.b.basis() {
                if !tcell.b.contains(&mat.apply(bvec)) {
                    return Err(EngineError::IllDefined(format!(
                        "d sends the boundary {} to a non-boundary",
                        pres.format_element(&self.element(src, bvec))
                    )));
                }
            }
            // Kernel of Z_src → Z_tgt/B_tgt.
            let reduced: Vec<Vec<Scalar>> = images
                .iter()
                .map(|v| {
                    let mut w = v.clone();
                    tcell.b.reduce(&mut w);
                    w
                })
                .collect();
            let red = FpMatrix::from_columns(f, tcell.monos.len(), &reduced);
            let (rank, kernel) = rank_and_kernel(&red);
            if rank == 0 {
                continue;
            }
            ranks.insert(src, rank);
            let zs = kernel.iter().map(|k| {
                let mut v = vec![0; cell.monos.len()];
                for (coef, z) in k.iter().zip(cell.z.basis()) {
                    if *coef != 0 {
                        f.axpy(*coef, z, &mut v);
                    }
                }
                v
            });
            new_z.insert(src, Subspace::from_vectors(f, cell.monos.len(), zs));
            let mut b = tcell.b.clone();
            for img in images {
                b.insert(img);
            }
            new_b.insert(*tgt, b);
        }
        for (bd, z) in new_z {
            self.cells.get_mut(&bd).expect("cell exists").z = z;
        }
        for (bd, b) in new_b {
            self.cells.get_mut(&bd).expect("cell exists").b = b;
        }
        Ok(ranks)
    }

    /// True when every nonzero cell maps to a zero cell under the shift, so
    /// any differential of that shape vanishes.
    pub fn zero_by_bidegree(&self, shift: super::spec::Shift) -> bool {
        self.cells.iter().all(|(&src, c)| {
            c.dim() == 0 || shift.apply(src).is_none_or(|tgt| self.dim(tgt) == 0)
        })
    }
}
