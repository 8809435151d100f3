//! Sparse multilinear maps on a graded space.
//!
//! A `MultilinearMap` of arity `k` and internal degree `s` sends a `k`-tuple
//! of basis vectors to an element whose degree is the sum of the input
//! degrees plus `s`. The table stores only nonzero images, keyed by the basis
//! tuple; evaluation extends multilinearly.

use crate::graded::{BasisRef, Element};
use crate::scalar::Scalar;
use num::Zero;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultilinearMap {
    pub arity: usize,
    pub internal_degree: i64,
    pub table: BTreeMap<Vec<BasisRef>, Element>,
}

impl MultilinearMap {
    pub fn new(arity: usize, internal_degree: i64) -> Self {
        assert!(arity >= 1, "arity must be at least 1");
        MultilinearMap { arity, internal_degree, table: BTreeMap::new() }
    }

    fn check_entry(&self, key: &[BasisRef], value: &Element) {
        assert_eq!(key.len(), self.arity, "key arity mismatch");
        let in_deg: i64 = key.iter().map(|(d, _)| *d as i64).sum();
        for ((d, _), _) in &value.coords {
            assert_eq!(
                *d as i64,
                in_deg + self.internal_degree,
                "entry degree violates internal degree {}",
                self.internal_degree
            );
        }
    }

    pub fn set(&mut self, key: Vec<BasisRef>, value: Element) {
        self.check_entry(&key, &value);
        if value.is_zero() {
            self.table.remove(&key);
        } else {
            self.table.insert(key, value);
        }
    }

    pub fn add_to(&mut self, key: Vec<BasisRef>, value: &Element, c: &Scalar) {
        if value.is_zero() || c.is_zero() {
            return;
        }
        let mut current = self.get(&key);
        current.add_scaled(value, c);
        self.set(key, current);
    }

    pub fn get(&self, key: &[BasisRef]) -> Element {
        assert_eq!(key.len(), self.arity, "key arity mismatch");
        self.table.get(key).cloned().unwrap_or_default()
    }

    /// Multilinear evaluation on sparse elements.
    pub fn eval(&self, args: &[Element]) -> Element {
        assert_eq!(args.len(), self.arity, "argument arity mismatch");
        let mut out = Element::zero();
        let mut key = vec![(0usize, 0usize); self.arity];
        self.eval_rec(args, 0, &mut key, &crate::scalar::one(), &mut out);
        out
    }

    fn eval_rec(
        &self,
        args: &[Element],
        slot: usize,
        key: &mut Vec<BasisRef>,
        coeff: &Scalar,
        out: &mut Element,
    ) {
        if slot == self.arity {
            if let Some(v) = self.table.get(key.as_slice()) {
                out.add_scaled(v, coeff);
            }
            return;
        }
        for (r, c) in &args[slot].coords {
            key[slot] = *r;
            let next = coeff * c;
            if !next.is_zero() {
                self.eval_rec(args, slot + 1, key, &next, out);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.table.values().all(|v| v.is_zero())
    }

    pub fn add(&self, rhs: &MultilinearMap) -> MultilinearMap {
        self.combine(rhs, crate::scalar::one())
    }

    pub fn sub(&self, rhs: &MultilinearMap) -> MultilinearMap {
        self.combine(rhs, -crate::scalar::one())
    }

    fn combine(&self, rhs: &MultilinearMap, c: Scalar) -> MultilinearMap {
        assert_eq!(self.arity, rhs.arity);
        assert_eq!(self.internal_degree, rhs.internal_degree);
        let mut out = self.clone();
        for (key, value) in &rhs.table {
            out.add_to(key.clone(), value, &c);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> MultilinearMap {
        let mut out = MultilinearMap::new(self.arity, self.internal_degree);
        for (key, value) in &self.table {
            out.set(key.clone(), value.scale(c));
        }
        out
    }
}
