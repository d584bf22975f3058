//! Arithmetic in the prime field F_p and dense linear algebra over it.
//!
//! Everything here is deterministic: row reduction always pivots on the
//! first nonzero entry, so kernels, complements and homology
//! representatives come out identical on every run.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{EngineError, Result};

/// A field element, always kept in `[0, p)`.
pub type Scalar = u32;

/// The prime field F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct PrimeField {
    p: u32,
}

impl TryFrom<u32> for PrimeField {
    type Error = EngineError;

    fn try_from(p: u32) -> Result<Self> {
        PrimeField::new(p)
    }
}

impl From<PrimeField> for u32 {
    fn from(f: PrimeField) -> u32 {
        f.p
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

/// Trial-division primality test, fine for the sizes used here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p >= (1 << 31) || !is_prime(p as u64) {
            return Err(EngineError::InvalidInput(format!("{p} is not a prime below 2^31")));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn reduce(&self, x: i64) -> Scalar {
        x.rem_euclid(self.p as i64) as Scalar
    }

    pub fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        let s = a as u64 + b as u64;
        (s % self.p as u64) as Scalar
    }

    pub fn sub(&self, a: Scalar, b: Scalar) -> Scalar {
        self.add(a, self.neg(b))
    }

    pub fn neg(&self, a: Scalar) -> Scalar {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        ((a as u64 * b as u64) % self.p as u64) as Scalar
    }

    pub fn pow(&self, a: Scalar, mut e: u64) -> Scalar {
        let mut base = a % self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero, which is always a caller bug.
    pub fn inv(&self, a: Scalar) -> Scalar {
        assert!(a % self.p != 0, "attempted to invert zero in {self}");
        self.pow(a, (self.p - 2) as u64)
    }

    /// The sign (−1)^e as a field element.
    pub fn sign(&self, odd: bool) -> Scalar {
        if odd {
            self.neg(1)
        } else {
            1 % self.p
        }
    }

    /// Every nonzero element, in increasing order.
    pub fn units(&self) -> impl Iterator<Item = Scalar> {
        1..self.p
    }

    /// a·x + y, entrywise, stored in y.
    pub fn axpy(&self, a: Scalar, x: &[Scalar], y: &mut [Scalar]) {
        if a == 0 {
            return;
        }
        let p = self.p as u64;
        let a = a as u64;
        for (yi, &xi) in y.iter_mut().zip(x) {
            if xi != 0 {
                *yi = ((*yi as u64 + a * xi as u64) % p) as Scalar;
            }
        }
    }

    pub fn scale(&self, a: Scalar, x: &mut [Scalar]) {
        for xi in x.iter_mut() {
            *xi = self.mul(*xi, a);
        }
    }
}

/// C(n, k) mod p by Lucas' theorem.
pub fn lucas_binomial(mut n: u64, mut k: u64, field: PrimeField) -> Scalar {
    if k > n {
        return 0;
    }
    let p = field.p() as u64;
    let mut acc: Scalar = 1 % field.p();
    while k > 0 || n > 0 {
        let (ni, ki) = (n % p, k % p);
        if ki > ni {
            return 0;
        }
        acc = field.mul(acc, small_binomial(ni as u32, ki as u32, field));
        n /= p;
        k /= p;
    }
    acc
}

// C(n, k) mod p for n < p, where k! is invertible.
fn small_binomial(n: u32, k: u32, field: PrimeField) -> Scalar {
    let k = k.min(n - k);
    let mut num: Scalar = 1;
    let mut den: Scalar = 1;
    for j in 0..k {
        num = field.mul(num, n - j);
        den = field.mul(den, j + 1);
    }
    field.mul(num, field.inv(den))
}

/// Dense row-major matrix over F_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl FpMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FpMatrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = FpMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from row vectors; entries are reduced mod p.
    pub fn from_rows(field: PrimeField, cols: usize, rows: &[Vec<Scalar>]) -> Self {
        let mut m = FpMatrix::zeros(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row {i} has the wrong length");
            for (j, &x) in r.iter().enumerate() {
                m.data[i * cols + j] = x % field.p();
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: PrimeField, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = FpMatrix::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column {j} has the wrong length");
            for (i, &x) in c.iter().enumerate() {
                m.data[i * columns.len() + j] = x % field.p();
            }
        }
        m
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x % self.field.p();
    }

    pub fn add_to(&mut self, i: usize, j: usize, x: Scalar) {
        let idx = i * self.cols + j;
        self.data[idx] = self.field.add(self.data[idx], x);
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = FpMatrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                let (row_out, row_b) = (
                    &mut out.data[i * other.cols..(i + 1) * other.cols],
                    &other.data[k * other.cols..(k + 1) * other.cols],
                );
                self.field.axpy(a, row_b, row_out);
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "dimension mismatch in matrix-vector product");
        let p = self.field.p() as u64;
        (0..self.rows)
            .map(|i| {
                let s = self
                    .row(i)
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % p);
                s as Scalar
            })
            .collect()
    }

    /// Reduced row-echelon form and its pivot columns.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let mut m = self.clone();
        let f = self.field;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c));
            f.scale(inv, &mut m.data[r * m.cols..(r + 1) * m.cols]);
            let pivot_row: Vec<Scalar> = m.row(r).to_vec();
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let x = m.get(i, c);
                if x != 0 {
                    let cols = m.cols;
                    f.axpy(f.neg(x), &pivot_row, &mut m.data[i * cols..(i + 1) * cols]);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        // Reduce the smaller orientation.
        if self.rows > self.cols {
            self.transpose().rref().1.len()
        } else {
            self.rref().1.len()
        }
    }
}

/// Rank and a kernel basis (one vector per free column, in column order).
pub fn rank_and_kernel(m: &FpMatrix) -> (usize, Vec<Vec<Scalar>>) {
    let f = m.field();
    let (r, pivots) = m.rref();
    let mut is_pivot = vec![false; m.cols()];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut kernel = Vec::new();
    for free in (0..m.cols()).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0; m.cols()];
        v[free] = 1;
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(r.get(i, free));
        }
        kernel.push(v);
    }
    (pivots.len(), kernel)
}

/// Standard basis vectors completing span(sub) to the whole space.
pub fn image_complement(field: PrimeField, sub: &[Vec<Scalar>], ambient_dim: usize) -> Vec<Vec<Scalar>> {
    let s = Subspace::from_vectors(field, ambient_dim, sub.iter().cloned());
    let mut is_pivot = vec![false; ambient_dim];
    for &c in s.pivots() {
        is_pivot[c] = true;
    }
    (0..ambient_dim)
        .filter(|&j| !is_pivot[j])
        .map(|j| {
            let mut v = vec![0; ambient_dim];
            v[j] = 1;
            v
        })
        .collect()
}

/// A subspace of F_p^n held in reduced row-echelon form, rows sorted by pivot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: PrimeField,
    ambient: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Subspace { field, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Self {
        let mut s = Subspace::zero(field, ambient);
        for j in 0..ambient {
            let mut v = vec![0; ambient];
            v[j] = 1;
            s.rows.push(v);
            s.pivots.push(j);
        }
        s
    }

    pub fn from_vectors(field: PrimeField, ambient: usize, vs: impl IntoIterator<Item = Vec<Scalar>>) -> Self {
        let mut s = Subspace::zero(field, ambient);
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Replaces v by its normal form modulo the subspace.
    pub fn reduce(&self, v: &mut [Scalar]) {
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let x = v[c];
            if x != 0 {
                self.field.axpy(self.field.neg(x), row, v);
            }
        }
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds v to the span; returns false if it was already there.
    pub fn insert(&mut self, mut v: Vec<Scalar>) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length does not match the ambient space");
        self.reduce(&mut v);
        let Some(c) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.field.inv(v[c]);
        self.field.scale(inv, &mut v);
        for row in self.rows.iter_mut() {
            let x = row[c];
            if x != 0 {
                self.field.axpy(self.field.neg(x), &v, row);
            }
        }
        let at = self.pivots.partition_point(|&q| q < c);
        self.pivots.insert(at, c);
        self.rows.insert(at, v);
        true
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for r in other.basis() {
            s.insert(r.clone());
        }
        s
    }
}

/// A subquotient Z/B with deterministic representatives and coordinates.
#[derive(Clone, Debug)]
pub struct QuotientSpace {
    field: PrimeField,
    boundaries: Subspace,
    reps: Vec<Vec<Scalar>>,
    // Rows spanning the reps modulo B, each with its coefficient vector over reps.
    tracked: Vec<(usize, Vec<Scalar>, Vec<Scalar>)>,
}

impl QuotientSpace {
    /// `cycles` must contain `boundaries`; representatives are the cycle basis
    /// vectors that are new modulo the boundaries, in order.
    pub fn new(cycles: &Subspace, boundaries: &Subspace) -> Self {
        let field = cycles.field();
        let mut span = boundaries.clone();
        let mut reps = Vec::new();
        for z in cycles.basis() {
            if span.insert(z.clone()) {
                reps.push(z.clone());
            }
        }
        let mut q = QuotientSpace { field, boundaries: boundaries.clone(), reps: Vec::new(), tracked: Vec::new() };
        let n = reps.len();
        for (i, r) in reps.iter().enumerate() {
            let mut v = r.clone();
            q.boundaries.reduce(&mut v);
            let mut combo = vec![0; n];
            combo[i] = 1;
            q.insert_tracked(v, combo);
        }
        q.reps = reps;
        q
    }

    fn insert_tracked(&mut self, mut v: Vec<Scalar>, mut combo: Vec<Scalar>) {
        let f = self.field;
        for (c, row, rc) in &self.tracked {
            let x = v[*c];
            if x != 0 {
                f.axpy(f.neg(x), row, &mut v);
                f.axpy(f.neg(x), rc, &mut combo);
            }
        }
        let c = v.iter().position(|&x| x != 0).expect("representatives are independent modulo boundaries");
        let inv = f.inv(v[c]);
        f.scale(inv, &mut v);
        f.scale(inv, &mut combo);
        for (_, row, rc) in self.tracked.iter_mut() {
            let x = row[c];
            if x != 0 {
                f.axpy(f.neg(x), &v, row);
                f.axpy(f.neg(x), &combo, rc);
            }
        }
        self.tracked.push((c, v, combo));
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn reps(&self) -> &[Vec<Scalar>] {
        &self.reps
    }

    /// Coordinates of the class of v in the representative basis, or None
    /// when v is not in Z.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let f = self.field;
        let mut w = v.to_vec();
        self.boundaries.reduce(&mut w);
        let mut coords = vec![0; self.reps.len()];
        for (c, row, combo) in &self.tracked {
            let x = w[*c];
            if x != 0 {
                f.axpy(f.neg(x), row, &mut w);
                f.axpy(x, combo, &mut coords);
            }
        }
        w.iter().all(|&x| x == 0).then_some(coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> PrimeField {
        PrimeField::new(5).unwrap()
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(2).is_ok());
    }

    #[test]
    fn lucas_examples() {
        let f = f5();
        assert_eq!(lucas_binomial(7, 2, f), 1);
        assert_eq!(lucas_binomial(13, 0, f), 1);
        assert_eq!(lucas_binomial(5, 1, f), 0);
        assert_eq!(lucas_binomial(3, 4, f), 0);
    }

    #[test]
    fn lucas_matches_pascal_triangle() {
        for p in [2u32, 3, 5, 7] {
            let f = PrimeField::new(p).unwrap();
            // Row-by-row Pascal triangle mod p as an independent oracle.
            let mut row = vec![1u32];
            for n in 0..=200u64 {
                for k in 0..=n {
                    assert_eq!(lucas_binomial(n, k, f), row[k as usize], "C({n},{k}) mod {p}");
                }
                let mut next = vec![1u32; row.len() + 1];
                for k in 1..row.len() {
                    next[k] = (row[k - 1] + row[k]) % p;
                }
                row = next;
            }
        }
    }

    #[test]
    fn rank_kernel_edge_cases() {
        let f = f5();
        let (r, k) = rank_and_kernel(&FpMatrix::zeros(f, 3, 3));
        assert_eq!((r, k.len()), (0, 3));
        let (r, k) = rank_and_kernel(&FpMatrix::identity(f, 4));
        assert_eq!((r, k.len()), (4, 0));
    }

    #[test]
    fn complement_examples() {
        let f = f5();
        assert_eq!(image_complement(f, &[], 2), vec![vec![1, 0], vec![0, 1]]);
        let full: Vec<Vec<u32>> = (0..3).map(|i| (0..3).map(|j| (i == j) as u32).collect()).collect();
        assert!(image_complement(f, &full, 3).is_empty());
        let sub = vec![vec![1, 1, 0]];
        let comp = image_complement(f, &sub, 3);
        assert_eq!(comp.len(), 2);
        let mut all = sub.clone();
        all.extend(comp);
        assert_eq!(FpMatrix::from_rows(f, 3, &all).rank(), 3);
    }

    #[test]
    fn quotient_coordinates_round_trip() {
        let f = f5();
        let z = Subspace::from_vectors(f, 4, [vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 1]]);
        let b = Subspace::from_vectors(f, 4, [vec![1, 1, 0, 0]]);
        let q = QuotientSpace::new(&z, &b);
        assert_eq!(q.dim(), 2);
        // (0,1,0,0) ≡ −(1,0,0,0) modulo b.
        let c0 = q.coordinates(&[1, 0, 0, 0]).unwrap();
        let c1 = q.coordinates(&[0, 1, 0, 0]).unwrap();
        assert_eq!(c1, c0.iter().map(|&x| f.neg(x)).collect::<Vec<_>>());
        assert!(q.coordinates(&[0, 0, 0, 1]).is_none());
        assert_eq!(q.coordinates(&[1, 1, 0, 0]).unwrap(), vec![0, 0]);
    }

    #[test]
    fn field_ops() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        assert_eq!(f.reduce(-1), 6);
        assert_eq!(f.pow(3, 6), 1);
    }
}
