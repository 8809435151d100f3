//! Homotopy transfer of the algebra structure to harmonic space.
//!
//! The engine is the recursion
//!
//! ```text
//! m̂₂(α₁, α₂) = α₁·α₂
//! m̂ₖ(α₁, …, αₖ) = (−1)^{k−1} d⁻m̂ₖ₋₁(α₁, …, αₖ₋₁)·αₖ
//!               − (−1)^{k·deg α₁} α₁·d⁻m̂ₖ₋₁(α₂, …, αₖ)
//!               − Σ_{i=2}^{k−2} (−1)^ν d⁻m̂ᵢ(α₁, …, αᵢ)·d⁻m̂ₖ₋ᵢ(αᵢ₊₁, …, αₖ)
//! ```
//!
//! with ν = i + (k−i−1)(deg α₁ + ⋯ + deg αᵢ), and mₖ = π∘m̂ₖ. The values m̂ₖ
//! live in the algebra and are memoized on harmonic basis tuples.
//!
//! As an independent cross-check, the same operations are recomputed as a sum
//! over rooted trivalent (binary) trees with k leaves: tails carry the
//! harmonic inclusion, internal edges carry d⁻, the root carries π, vertices
//! multiply. The per-tree sign is obtained by expanding the recursion, which
//! is the normative sign convention here; the expansion hits every binary
//! tree exactly once, so the enumeration doubles as a Catalan count check.

use crate::graded::{BasisRef, Element, GradedVectorSpace};
use crate::hodge::HodgeHomotopy;
use crate::multilinear::MultilinearMap;
use crate::scalar::{sign_pow, Scalar};
use itertools::Itertools;
use std::collections::BTreeMap;

/// A minimal unital C∞-structure: operations m_k of internal degree 2−k on a
/// graded space, with m₁ = 0 left implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalCInftyStructure {
    pub space: GradedVectorSpace,
    pub unit: Element,
    pub max_arity: usize,
    pub mults: BTreeMap<usize, MultilinearMap>,
}

impl MinimalCInftyStructure {
    pub fn m(&self, k: usize) -> &MultilinearMap {
        &self.mults[&k]
    }

    pub fn eval(&self, k: usize, args: &[Element]) -> Element {
        self.mults[&k].eval(args)
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        self.eval(2, &[a.clone(), b.clone()])
    }
}

/// Memoizing evaluator for the recursion. Values are algebra elements, not
/// yet projected; keys are (arity, harmonic basis tuple).
pub struct TransferWorkspace<'a> {
    pub hodge: &'a HodgeHomotopy,
    memo: BTreeMap<Vec<BasisRef>, Element>,
}

impl<'a> TransferWorkspace<'a> {
    pub fn new(hodge: &'a HodgeHomotopy) -> Self {
        TransferWorkspace { hodge, memo: BTreeMap::new() }
    }

    /// m̂ on a tuple of harmonic basis vectors, as an algebra element.
    pub fn merkulov_hat(&mut self, args: &[BasisRef]) -> Element {
        let k = args.len();
        assert!(k >= 2, "the recursion starts at arity 2");
        if let Some(v) = self.memo.get(args) {
            return v.clone();
        }
        let value = self.compute_hat(args);
        self.memo.insert(args.to_vec(), value.clone());
        value
    }

    fn include(&self, r: BasisRef) -> Element {
        self.hodge.include(&Element::basis(r))
    }

    fn dminus_hat(&mut self, args: &[BasisRef]) -> Element {
        let v = self.merkulov_hat(args);
        self.hodge.dminus.apply(&v)
    }

    fn compute_hat(&mut self, args: &[BasisRef]) -> Element {
        let k = args.len();
        let a = &self.hodge.base;
        if k == 2 {
            return a.product(&self.include(args[0]), &self.include(args[1]));
        }
        let deg = |r: BasisRef| r.0 as i64;
        let mut out = Element::zero();

        let left = self.dminus_hat(&args[..k - 1]);
        let term = a.product(&left, &self.include(args[k - 1]));
        out.add_scaled(&term, &sign_pow(k as i64 - 1));

        let right = self.dminus_hat(&args[1..]);
        let term = a.product(&self.include(args[0]), &right);
        out.add_scaled(&term, &-sign_pow(k as i64 * deg(args[0])));

        for i in 2..=(k - 2) {
            let left = self.dminus_hat(&args[..i]);
            let right = self.dminus_hat(&args[i..]);
            let nu = i as i64
                + (k as i64 - i as i64 - 1) * args[..i].iter().map(|&r| deg(r)).sum::<i64>();
            out.add_scaled(&a.product(&left, &right), &-sign_pow(nu));
        }
        out
    }

    /// m̂ extended multilinearly to harmonic elements.
    pub fn hat_eval(&mut self, args: &[Element]) -> Element {
        let mut out = Element::zero();
        let mut key = vec![(0usize, 0usize); args.len()];
        self.hat_eval_rec(args, 0, &mut key, &crate::scalar::one(), &mut out);
        out
    }

    fn hat_eval_rec(
        &mut self,
        args: &[Element],
        slot: usize,
        key: &mut Vec<BasisRef>,
        coeff: &Scalar,
        out: &mut Element,
    ) {
        use num::Zero;
        if slot == args.len() {
            let v = self.merkulov_hat(&key.clone());
            out.add_scaled(&v, coeff);
            return;
        }
        let coords = args[slot].coords.clone();
        for (r, c) in coords {
            key[slot] = r;
            let next = coeff * &c;
            if !next.is_zero() {
                self.hat_eval_rec(args, slot + 1, key, &next, out);
            }
        }
    }

    /// m_k on a harmonic basis tuple, in harmonic coordinates.
    pub fn merkulov(&mut self, args: &[BasisRef]) -> Element {
        let hat = self.merkulov_hat(args);
        let projected = self.hodge.pi_apply(&hat);
        self.hodge.project(&projected)
    }
}

fn tuple_output_in_range(space: &GradedVectorSpace, args: &[BasisRef], k: usize) -> bool {
    let out: i64 = args.iter().map(|(d, _)| *d as i64).sum::<i64>() + 2 - k as i64;
    out >= 0 && out <= space.top_degree as i64
}

/// Transfers the algebra structure to a minimal C∞-structure on harmonic
/// space, computing every m_k for 2 ≤ k ≤ max_arity on all basis tuples.
pub fn transfer(hodge: &HodgeHomotopy, max_arity: usize) -> MinimalCInftyStructure {
    assert!(max_arity >= 2, "max_arity must be at least 2");
    let mut ws = TransferWorkspace::new(hodge);
    let mut mults = BTreeMap::new();
    for k in 2..=max_arity {
        let mut m = MultilinearMap::new(k, 2 - k as i64);
        for tuple in (0..k)
            .map(|_| hodge.harmonic.all_refs())
            .multi_cartesian_product()
        {
            if !tuple_output_in_range(&hodge.harmonic, &tuple, k) {
                continue;
            }
            let value = ws.merkulov(&tuple);
            m.set(tuple, value);
        }
        mults.insert(k, m);
    }
    MinimalCInftyStructure {
        space: hodge.harmonic.clone(),
        unit: hodge.project(&hodge.base.unit_element()),
        max_arity,
        mults,
    }
}

/// Same tables as [`transfer`], computed tuple-parallel with rayon. Each
/// tuple is evaluated in its own workspace, so the result is a pure function
/// of the input and must coincide with the sequential tables bit for bit.
pub fn transfer_parallel(hodge: &HodgeHomotopy, max_arity: usize) -> MinimalCInftyStructure {
    use rayon::prelude::*;
    assert!(max_arity >= 2, "max_arity must be at least 2");
    let mut mults = BTreeMap::new();
    for k in 2..=max_arity {
        let tuples: Vec<Vec<BasisRef>> = (0..k)
            .map(|_| hodge.harmonic.all_refs())
            .multi_cartesian_product()
            .filter(|t| tuple_output_in_range(&hodge.harmonic, t, k))
            .collect();
        let entries: Vec<(Vec<BasisRef>, Element)> = tuples
            .into_par_iter()
            .map(|tuple| {
                let mut ws = TransferWorkspace::new(hodge);
                let value = ws.merkulov(&tuple);
                (tuple, value)
            })
            .collect();
        let mut m = MultilinearMap::new(k, 2 - k as i64);
        for (tuple, value) in entries {
            m.set(tuple, value);
        }
        mults.insert(k, m);
    }
    MinimalCInftyStructure {
        space: hodge.harmonic.clone(),
        unit: hodge.project(&hodge.base.unit_element()),
        max_arity,
        mults,
    }
}

/// Rooted trivalent tree with ordered leaves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tree {
    Leaf,
    Node(Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn leaves(&self) -> usize {
        match self {
            Tree::Leaf => 1,
            Tree::Node(l, r) => l.leaves() + r.leaves(),
        }
    }
}

/// All rooted binary trees with `k` ordered leaves; there are Catalan(k−1).
pub fn enumerate_trees(k: usize) -> Vec<Tree> {
    assert!(k >= 1);
    if k == 1 {
        return vec![Tree::Leaf];
    }
    let mut out = Vec::new();
    for i in 1..k {
        for l in enumerate_trees(i) {
            for r in enumerate_trees(k - i) {
                out.push(Tree::Node(Box::new(l.clone()), Box::new(r)));
            }
        }
    }
    out
}

/// The sign attached to a tree by expanding the recursion, for leaf
/// arguments of the given degrees (in leaf order).
pub fn tree_sign(tree: &Tree, degrees: &[i64]) -> Scalar {
    let Tree::Node(l, r) = tree else {
        panic!("a single leaf is not an operation tree");
    };
    let k = tree.leaves();
    assert_eq!(k, degrees.len());
    if k == 2 {
        return crate::scalar::one();
    }
    let i = l.leaves();
    match (l.as_ref(), r.as_ref()) {
        (_, Tree::Leaf) => sign_pow(k as i64 - 1) * tree_sign(l, &degrees[..k - 1]),
        (Tree::Leaf, _) => -sign_pow(k as i64 * degrees[0]) * tree_sign(r, &degrees[1..]),
        _ => {
            let nu = i as i64 + (k as i64 - i as i64 - 1) * degrees[..i].iter().sum::<i64>();
            -sign_pow(nu) * tree_sign(l, &degrees[..i]) * tree_sign(r, &degrees[i..])
        }
    }
}

/// Evaluates one decorated tree: leaves are harmonic inclusions of the
/// arguments, internal edges apply d⁻, vertices multiply. Returns the raw
/// root value (before π).
fn tree_eval(hodge: &HodgeHomotopy, tree: &Tree, args: &[Element]) -> Element {
    fn go(hodge: &HodgeHomotopy, tree: &Tree, args: &[Element], pos: &mut usize) -> Element {
        match tree {
            Tree::Leaf => {
                let v = hodge.include(&args[*pos]);
                *pos += 1;
                v
            }
            Tree::Node(l, r) => {
                let lv = decorate(hodge, l, args, pos);
                let rv = decorate(hodge, r, args, pos);
                hodge.base.product(&lv, &rv)
            }
        }
    }
    fn decorate(hodge: &HodgeHomotopy, t: &Tree, args: &[Element], pos: &mut usize) -> Element {
        let v = go(hodge, t, args, pos);
        match t {
            Tree::Leaf => v,
            Tree::Node(_, _) => hodge.dminus.apply(&v),
        }
    }
    let mut pos = 0;
    let v = go(hodge, tree, args, &mut pos);
    assert_eq!(pos, args.len());
    v
}

/// Independent recomputation of m_k (3 ≤ k ≤ 5) as a signed sum over all
/// rooted binary trees, returned in harmonic coordinates. Arguments must be
/// homogeneous harmonic elements.
pub fn tree_summation_oracle(hodge: &HodgeHomotopy, k: usize, args: &[Element]) -> Element {
    assert!((3..=5).contains(&k), "oracle covers arities 3 through 5");
    assert_eq!(args.len(), k);
    let degrees: Vec<i64> = args
        .iter()
        .map(|a| a.degree().map(|d| d as i64).unwrap_or(0))
        .collect();
    let mut total = Element::zero();
    for tree in enumerate_trees(k) {
        let sign = tree_sign(&tree, &degrees);
        let raw = tree_eval(hodge, &tree, args);
        total.add_scaled(&raw, &sign);
    }
    let projected = hodge.pi_apply(&total);
    hodge.project(&projected)
}

/// Relocates a structure on harmonic space to cohomology by conjugating with
/// the class-map isomorphism ℋ* ≅ H*(𝒜). Asserts that μ₂ is the cup product.
pub fn transfer_to_cohomology(
    hodge: &HodgeHomotopy,
    s: &MinimalCInftyStructure,
    ring: &crate::pdgca::CohomologyRing,
) -> MinimalCInftyStructure {
    use crate::graded::GradedLinearMap;
    use crate::matrix::Mat;
    let n = hodge.base.top_degree();
    // φ: ℋ → H on basis vectors, assembled degreewise; invertible since the
    // class map is an isomorphism for a valid Hodge homotopy.
    let mut phi = GradedLinearMap::zero(s.space.dims(), ring.space.dims(), 0);
    for k in 0..=n {
        let hd = s.space.dim(k as i64);
        if hd == 0 {
            continue;
        }
        let mut block = Mat::zeros(ring.space.dim(k as i64), hd);
        for i in 0..hd {
            let class = ring.class_of(&hodge.base, &hodge.include(&Element::basis((k, i))));
            for ((d, j), c) in &class.coords {
                assert_eq!(*d, k);
                block[(*j, i)] = c.clone();
            }
        }
        phi.set_block(k, block);
    }
    let mut phi_inv = GradedLinearMap::zero(ring.space.dims(), s.space.dims(), 0);
    for k in 0..=n {
        if ring.space.dim(k as i64) == 0 {
            continue;
        }
        let inv = phi.block(k as i64).inverse().expect("class map must be invertible");
        phi_inv.set_block(k, inv);
    }

    let mut mults = BTreeMap::new();
    for (k, m) in &s.mults {
        let mut out = MultilinearMap::new(*k, m.internal_degree);
        for tuple in (0..*k)
            .map(|_| ring.space.all_refs())
            .multi_cartesian_product()
        {
            if !tuple_output_in_range(&ring.space, &tuple, *k) {
                continue;
            }
            let args: Vec<Element> =
                tuple.iter().map(|&r| phi_inv.apply(&Element::basis(r))).collect();
            let value = phi.apply(&m.eval(&args));
            out.set(tuple, value);
        }
        mults.insert(*k, out);
    }

    // μ₂ must be the induced cup product on cohomology.
    assert_eq!(mults[&2], ring.product, "μ₂ differs from the cup product");

    MinimalCInftyStructure {
        space: ring.space.clone(),
        unit: phi.apply(&s.unit),
        max_arity: s.max_arity,
        mults,
    }
}

/// Per-arity support report with degree-constraint cross-checks.
#[derive(Clone, Debug, Default)]
pub struct VanishingProfile {
    /// For each arity, the sorted list of degree tuples carrying a nonzero
    /// value (empty list = the operation vanishes identically).
    pub support: BTreeMap<usize, Vec<Vec<usize>>>,
    /// Violated degree-support constraints, when their dimension hypotheses
    /// hold.
    pub violations: Vec<String>,
}

impl VanishingProfile {
    pub fn vanishes_from(&self, k0: usize) -> bool {
        self.support.iter().all(|(k, s)| *k < k0 || s.is_empty())
    }
}

/// Reports, for each computed arity, whether m_k vanishes and on which degree
/// tuples it does not; cross-checks the degree-support constraints that hold
/// for an (r−1)-connected Poincaré algebra of degree n:
/// - if n ≤ (k+1)(r−1)+3, then m_k is supported on all-degree-r tuples only;
/// - if n ≤ k(r−1)+4, the same holds for m_k;
/// - if n = (k+1)(r−1)+4, m_k is supported on tuples of degree r with at most
///   one slot of degree r+1.
pub fn vanishing_profile(s: &MinimalCInftyStructure, r: usize, n: usize) -> VanishingProfile {
    let mut profile = VanishingProfile::default();
    for (k, m) in &s.mults {
        let mut tuples: Vec<Vec<usize>> = m
            .table
            .keys()
            .map(|key| key.iter().map(|(d, _)| *d).collect())
            .collect();
        tuples.sort();
        tuples.dedup();
        profile.support.insert(*k, tuples);
    }
    for (k, tuples) in &profile.support {
        if *k < 3 {
            continue;
        }
        let all_r_only = n <= (*k + 1) * (r - 1) + 3 || n <= *k * (r - 1) + 4;
        let one_slot_r1 = n == (*k + 1) * (r - 1) + 4;
        for t in tuples {
            let extra: Vec<usize> = t.iter().filter(|&&d| d != r).cloned().collect();
            let ok_all_r = extra.is_empty();
            let ok_one_r1 = extra.len() == 1 && extra[0] == r + 1;
            if all_r_only && !ok_all_r && !(one_slot_r1 && ok_one_r1) {
                profile.violations.push(format!(
                    "m_{k} supported on degree tuple {t:?}, outside the allowed pattern"
                ));
            }
        }
    }
    profile
}

/// Hypothesis arithmetic for the arity-vanishing theorem: an (r−1)-connected
/// Poincaré algebra of degree n with r ≥ 2 and n ≤ ℓ(r−1)+2 (ℓ ≥ 4) has
/// m_k ≡ 0 for all k ≥ ℓ−1.
pub fn a2_hypothesis(r: usize, n: usize, ell: usize) -> bool {
    r >= 2 && ell >= 4 && n <= ell * (r - 1) + 2
}

/// Hypothesis arithmetic for the b_r = 1 sharpening: n ≤ ℓ(r−1)+4 and
/// b_r = 1 give m_k ≡ 0 for all k ≥ ℓ−1.
pub fn zhou_hypothesis(r: usize, n: usize, ell: usize, b_r: usize) -> bool {
    r >= 2 && ell >= 4 && n <= ell * (r - 1) + 4 && b_r == 1
}
