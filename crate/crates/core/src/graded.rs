//! Graded vector spaces, sparse elements, graded linear maps, and Koszul
//! signs.
//!
//! A space is a finite family of named basis vectors distributed over degrees
//! `0..=top_degree`. Elements are sparse rational combinations of basis
//! vectors, indexed by `(degree, index)` pairs. Linear maps of a fixed degree
//! shift are stored as one matrix per source degree.

use crate::matrix::Mat;
use crate::scalar::{sign_pow, zero, Scalar};
use num::Zero;
use std::collections::BTreeMap;

/// Position of a basis vector: (degree, index within that degree).
pub type BasisRef = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedVectorSpace {
    pub top_degree: usize,
    /// Ordered basis names per degree; length is `top_degree + 1`.
    pub basis: Vec<Vec<String>>,
}

impl GradedVectorSpace {
    pub fn new(top_degree: usize, basis: Vec<Vec<String>>) -> Self {
        assert_eq!(basis.len(), top_degree + 1, "one basis list per degree 0..=n");
        let mut seen = std::collections::BTreeSet::new();
        for names in &basis {
            for name in names {
                assert!(seen.insert(name.clone()), "duplicate basis name {name}");
            }
        }
        GradedVectorSpace { top_degree, basis }
    }

    pub fn dim(&self, degree: i64) -> usize {
        if degree < 0 || degree > self.top_degree as i64 {
            0
        } else {
            self.basis[degree as usize].len()
        }
    }

    pub fn dims(&self) -> Vec<usize> {
        self.basis.iter().map(|b| b.len()).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.basis.iter().map(|b| b.len()).sum()
    }

    pub fn name(&self, (deg, idx): BasisRef) -> &str {
        &self.basis[deg][idx]
    }

    pub fn find(&self, name: &str) -> Option<BasisRef> {
        for (deg, names) in self.basis.iter().enumerate() {
            if let Some(idx) = names.iter().position(|n| n == name) {
                return Some((deg, idx));
            }
        }
        None
    }

    pub fn basis_refs(&self, degree: i64) -> Vec<BasisRef> {
        (0..self.dim(degree)).map(|i| (degree as usize, i)).collect()
    }

    pub fn all_refs(&self) -> Vec<BasisRef> {
        (0..=self.top_degree as i64).flat_map(|d| self.basis_refs(d)).collect()
    }
}

/// Sparse element of a graded space. The zero element has an empty table.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Element {
    pub coords: BTreeMap<BasisRef, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn basis(r: BasisRef) -> Self {
        let mut e = Element::zero();
        e.coords.insert(r, crate::scalar::one());
        e
    }

    pub fn term(r: BasisRef, c: Scalar) -> Self {
        let mut e = Element::zero();
        e.add_term(r, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn add_term(&mut self, r: BasisRef, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.coords.entry(r).or_insert_with(zero);
        *entry += c;
        if entry.is_zero() {
            self.coords.remove(&r);
        }
    }

    pub fn add_scaled(&mut self, other: &Element, c: &Scalar) {
        for (r, v) in &other.coords {
            self.add_term(*r, v * c);
        }
    }

    pub fn add(&self, other: &Element) -> Element {
        let mut e = self.clone();
        e.add_scaled(other, &crate::scalar::one());
        e
    }

    pub fn sub(&self, other: &Element) -> Element {
        let mut e = self.clone();
        e.add_scaled(other, &-crate::scalar::one());
        e
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        let mut e = Element::zero();
        e.add_scaled(self, c);
        e
    }

    pub fn coeff(&self, r: BasisRef) -> Scalar {
        self.coords.get(&r).cloned().unwrap_or_else(zero)
    }

    /// The degree of a nonzero homogeneous element; `None` for zero or mixed.
    pub fn degree(&self) -> Option<usize> {
        let mut deg = None;
        for ((d, _), _) in &self.coords {
            match deg {
                None => deg = Some(*d),
                Some(existing) if existing != *d => return None,
                _ => {}
            }
        }
        deg
    }

    /// The degree-`k` slice as a dense coordinate vector in `space`.
    pub fn coords_in_degree(&self, space: &GradedVectorSpace, k: i64) -> Vec<Scalar> {
        let mut v = vec![zero(); space.dim(k)];
        for ((d, i), c) in &self.coords {
            if *d as i64 == k {
                v[*i] = c.clone();
            }
        }
        v
    }

    pub fn from_coords(degree: usize, v: &[Scalar]) -> Element {
        let mut e = Element::zero();
        for (i, c) in v.iter().enumerate() {
            e.add_term((degree, i), c.clone());
        }
        e
    }
}

/// A degree-homogeneous linear map between graded spaces, stored as one
/// matrix per source degree. `blocks[k]` maps source degree `k` to target
/// degree `k + shift`; absent blocks are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedLinearMap {
    pub shift: i64,
    pub source_dims: Vec<usize>,
    pub target_dims: Vec<usize>,
    pub blocks: BTreeMap<usize, Mat>,
}

impl GradedLinearMap {
    pub fn zero(source_dims: Vec<usize>, target_dims: Vec<usize>, shift: i64) -> Self {
        GradedLinearMap { shift, source_dims, target_dims, blocks: BTreeMap::new() }
    }

    pub fn identity(dims: Vec<usize>) -> Self {
        let blocks = dims
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(k, &d)| (k, Mat::identity(d)))
            .collect();
        GradedLinearMap { shift: 0, source_dims: dims.clone(), target_dims: dims, blocks }
    }

    fn dim_of(dims: &[usize], k: i64) -> usize {
        if k < 0 || k as usize >= dims.len() {
            0
        } else {
            dims[k as usize]
        }
    }

    pub fn source_dim(&self, k: i64) -> usize {
        Self::dim_of(&self.source_dims, k)
    }

    pub fn target_dim(&self, k: i64) -> usize {
        Self::dim_of(&self.target_dims, k)
    }

    /// The block for source degree `k`, materializing zeros when absent.
    pub fn block(&self, k: i64) -> Mat {
        let rows = self.target_dim(k + self.shift);
        let cols = self.source_dim(k);
        if k >= 0 {
            if let Some(b) = self.blocks.get(&(k as usize)) {
                assert_eq!((b.rows, b.cols), (rows, cols), "block shape mismatch");
                return b.clone();
            }
        }
        Mat::zeros(rows, cols)
    }

    pub fn set_block(&mut self, k: usize, block: Mat) {
        let rows = self.target_dim(k as i64 + self.shift);
        let cols = self.source_dim(k as i64);
        assert_eq!((block.rows, block.cols), (rows, cols), "block shape mismatch");
        if block.is_zero() {
            self.blocks.remove(&k);
        } else {
            self.blocks.insert(k, block);
        }
    }

    pub fn set_entry(&mut self, source: BasisRef, target: BasisRef, c: Scalar) {
        let (sd, si) = source;
        let (td, ti) = target;
        assert_eq!(td as i64, sd as i64 + self.shift, "entry violates degree shift");
        let mut b = self.block(sd as i64);
        b[(ti, si)] = c;
        self.set_block(sd, b);
    }

    pub fn apply(&self, e: &Element) -> Element {
        let mut out = Element::zero();
        for ((d, i), c) in &e.coords {
            let b = self.block(*d as i64);
            let td = *d as i64 + self.shift;
            if td < 0 || b.rows == 0 {
                continue;
            }
            for r in 0..b.rows {
                if !b[(r, *i)].is_zero() {
                    out.add_term((td as usize, r), &b[(r, *i)] * c);
                }
            }
        }
        out
    }

    /// `self ∘ rhs`: apply `rhs` first. Shifts add.
    pub fn compose(&self, rhs: &GradedLinearMap) -> GradedLinearMap {
        assert_eq!(self.source_dims, rhs.target_dims, "composition space mismatch");
        let shift = self.shift + rhs.shift;
        let mut out =
            GradedLinearMap::zero(rhs.source_dims.clone(), self.target_dims.clone(), shift);
        for k in 0..rhs.source_dims.len() {
            let k = k as i64;
            if out.source_dim(k) == 0 || out.target_dim(k + shift) == 0 {
                continue;
            }
            let b = self.block(k + rhs.shift).mul(&rhs.block(k));
            out.set_block(k as usize, b);
        }
        out
    }

    pub fn add(&self, rhs: &GradedLinearMap) -> GradedLinearMap {
        self.combine(rhs, |a, b| a.add(b))
    }

    pub fn sub(&self, rhs: &GradedLinearMap) -> GradedLinearMap {
        self.combine(rhs, |a, b| a.sub(b))
    }

    fn combine(
        &self,
        rhs: &GradedLinearMap,
        op: impl Fn(&Mat, &Mat) -> Mat,
    ) -> GradedLinearMap {
        assert_eq!(self.shift, rhs.shift, "shift mismatch");
        assert_eq!(self.source_dims, rhs.source_dims);
        assert_eq!(self.target_dims, rhs.target_dims);
        let mut out =
            GradedLinearMap::zero(self.source_dims.clone(), self.target_dims.clone(), self.shift);
        for k in 0..self.source_dims.len() {
            let b = op(&self.block(k as i64), &rhs.block(k as i64));
            out.set_block(k, b);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.values().all(|b| b.is_zero())
    }
}

/// Koszul sign of reordering graded symbols.
///
/// `perm[i]` is the original position of the symbol that ends up in slot `i`,
/// so the reordered sequence is `x_{perm[0]}, ..., x_{perm[len-1]}`. The sign
/// is `(-1)^Σ deg(x_a)·deg(x_b)` over all pairs that cross, i.e. pairs
/// `i < j` in the output with `perm[i] > perm[j]`.
pub fn koszul_sign(perm: &[usize], degrees: &[i64]) -> Scalar {
    assert_eq!(perm.len(), degrees.len(), "permutation/degree length mismatch");
    let mut e = 0i64;
    for i in 0..perm.len() {
        for j in (i + 1)..perm.len() {
            if perm[i] > perm[j] {
                e += degrees[perm[i]] * degrees[perm[j]];
            }
        }
    }
    sign_pow(e)
}
