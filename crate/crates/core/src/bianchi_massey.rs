//! The Bianchi-Massey tensor of a Poincaré DGCA with a Hodge homotopy, its
//! restriction ℱ to the kernel of the multiplication map, and the four-term
//! identity tying it to the ternary operation μ₃ on cohomology:
//!   −x·Ξ(y,z) + Ξ(x⊙y, z) − Ξ(x, y⊙z) + Ξ(x,y)·z = μ₃(x,y,z).
//!
//! Single classes x enter the identity through the embedding x ↦ 1⊙x, so one
//! data structure covers both word lengths.

use crate::graded::{BasisRef, Element, GradedVectorSpace};
use crate::hodge::HodgeHomotopy;
use crate::matrix::{kernel_basis, Mat};
use crate::multilinear::MultilinearMap;
use crate::pdgca::{CohomologyRing, ValidationReport};
use crate::scalar::{sign_pow, Scalar};
use num::Zero;
use std::collections::BTreeMap;

/// Normalized key of a symmetric product: factors sorted, Koszul sign folded
/// into the coefficient, odd-degree squares dropped.
pub type SymKey = (BasisRef, BasisRef);

/// Formal sum Σ c·(a ⊙ b) of graded-symmetric products of cohomology classes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymmetricSquareElement {
    pub terms: BTreeMap<SymKey, Scalar>,
}

/// Sorted key and the sign of bringing (a, b) into sorted order; `None` for
/// an odd-degree square, which is zero by graded symmetry.
pub fn normalize_pair(a: BasisRef, b: BasisRef) -> Option<(SymKey, Scalar)> {
    if a == b && a.0 % 2 != 0 {
        return None;
    }
    if b < a {
        Some(((b, a), sign_pow((a.0 * b.0) as i64)))
    } else {
        Some(((a, b), sign_pow(0)))
    }
}

impl SymmetricSquareElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn pair(a: BasisRef, b: BasisRef) -> Self {
        let mut e = Self::zero();
        e.add_pair(a, b, &sign_pow(0));
        e
    }

    /// Embeds a single class as 1 ⊙ a.
    pub fn single(ring: &CohomologyRing, a: BasisRef) -> Self {
        Self::pair(ring.unit, a)
    }

    pub fn add_pair(&mut self, a: BasisRef, b: BasisRef, c: &Scalar) {
        if let Some((key, sign)) = normalize_pair(a, b) {
            let entry = self.terms.entry(key).or_insert_with(crate::scalar::zero);
            *entry += c * &sign;
            if entry.is_zero() {
                self.terms.remove(&key);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree, when homogeneous.
    pub fn degree(&self) -> Option<i64> {
        let mut degs = self.terms.keys().map(|((d1, _), (d2, _))| (d1 + d2) as i64);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// ε: image under the multiplication map Sym²H → H.
    pub fn multiply(&self, ring: &CohomologyRing) -> Element {
        let mut out = Element::zero();
        for ((a, b), c) in &self.terms {
            out.add_scaled(&ring.mul(&Element::basis(*a), &Element::basis(*b)), c);
        }
        out
    }
}

/// Harmonic representative in the algebra of a cohomology element: project
/// any closed representative onto harmonics; the class is unchanged since the
/// correction is exact.
pub fn harmonic_rep(h: &HodgeHomotopy, ring: &CohomologyRing, x: &Element) -> Element {
    let mut rep = Element::zero();
    for (r, c) in &x.coords {
        rep.add_scaled(&ring.reps[r], c);
    }
    h.pi_apply(&rep)
}

/// α₂: multiplies the harmonic representatives, α₂(a ⊙ b) = ι(a)·ι(b).
pub fn alpha2(h: &HodgeHomotopy, ring: &CohomologyRing, e: &SymmetricSquareElement) -> Element {
    let mut out = Element::zero();
    for ((a, b), c) in &e.terms {
        let ia = harmonic_rep(h, ring, &Element::basis(*a));
        let ib = harmonic_rep(h, ring, &Element::basis(*b));
        out.add_scaled(&h.base.product(&ia, &ib), c);
    }
    out
}

/// γ = d⁻ ∘ ε ∘ ι, one degree below its argument.
pub fn gamma(h: &HodgeHomotopy, ring: &CohomologyRing, e: &SymmetricSquareElement) -> Element {
    h.dminus.apply(&alpha2(h, ring, e))
}

/// One tensor value: [π(γ(e)·α₂(e′) + (−1)^{deg e} α₂(e)·γ(e′))], extended
/// bilinearly over monomials.
pub fn xi_bm(
    h: &HodgeHomotopy,
    ring: &CohomologyRing,
    e: &SymmetricSquareElement,
    e2: &SymmetricSquareElement,
) -> Element {
    let mut out = Element::zero();
    for ((a, b), c) in &e.terms {
        let m = SymmetricSquareElement::pair(*a, *b);
        for ((a2, b2), c2) in &e2.terms {
            let m2 = SymmetricSquareElement::pair(*a2, *b2);
            let mut v = h.base.product(&gamma(h, ring, &m), &alpha2(h, ring, &m2));
            v.add_scaled(
                &h.base.product(&alpha2(h, ring, &m), &gamma(h, ring, &m2)),
                &sign_pow((a.0 + b.0) as i64),
            );
            if v.is_zero() {
                continue;
            }
            let class = ring.class_of(&h.base, &h.pi_apply(&v));
            out.add_scaled(&class, &(c * c2));
        }
    }
    out
}

/// Full tensor table over all normalized ⊙-monomials (including unit
/// factors, so single classes are covered), plus ℱ on a basis of the kernel
/// of the multiplication map.
#[derive(Clone, Debug)]
pub struct BianchiMasseyTensor {
    /// Cohomology space the tensor lives over, for input-compatibility checks.
    pub space: GradedVectorSpace,
    /// All normalized ⊙-monomials, in deterministic order.
    pub monomials: Vec<SymKey>,
    /// Ξ values on ordered monomial pairs m ≤ m′; zero values omitted.
    pub table: BTreeMap<(SymKey, SymKey), Element>,
    /// Basis of K = ker(Sym²H → H).
    pub kernel: Vec<SymmetricSquareElement>,
    /// ℱ(kᵢ ⊙ kⱼ) on the kernel basis, full square.
    pub f_table: Vec<Vec<Element>>,
}

impl BianchiMasseyTensor {
    /// Table lookup on two normalized monomials, applying the outer
    /// graded-symmetry sign when they are given in reverse order.
    pub fn xi_monomials(&self, m: SymKey, m2: SymKey) -> Element {
        let (key, sign) = if m <= m2 {
            ((m, m2), sign_pow(0))
        } else {
            ((m2, m), sign_pow(((m.0 .0 + m.1 .0) * (m2.0 .0 + m2.1 .0)) as i64))
        };
        match self.table.get(&key) {
            Some(v) => v.scale(&sign),
            None => Element::zero(),
        }
    }

    pub fn eval(&self, e: &SymmetricSquareElement, e2: &SymmetricSquareElement) -> Element {
        let mut out = Element::zero();
        for (m, c) in &e.terms {
            for (m2, c2) in &e2.terms {
                out.add_scaled(&self.xi_monomials(*m, *m2), &(c * c2));
            }
        }
        out
    }

    /// Whether the restriction ℱ to the multiplication kernel vanishes.
    pub fn f_is_zero(&self) -> bool {
        self.f_table.iter().all(|row| row.iter().all(|v| v.is_zero()))
    }
}

/// Computes the tensor on every monomial pair and ℱ on the kernel basis.
pub fn bianchi_massey(h: &HodgeHomotopy, ring: &CohomologyRing) -> BianchiMasseyTensor {
    let refs = ring.space.all_refs();
    let mut monomials: Vec<SymKey> = Vec::new();
    for (i, &a) in refs.iter().enumerate() {
        for &b in &refs[i..] {
            if normalize_pair(a, b).is_some() {
                monomials.push((a, b));
            }
        }
    }
    let mut table = BTreeMap::new();
    for (i, &m) in monomials.iter().enumerate() {
        for &m2 in &monomials[i..] {
            let e = SymmetricSquareElement::pair(m.0, m.1);
            let e2 = SymmetricSquareElement::pair(m2.0, m2.1);
            let v = xi_bm(h, ring, &e, &e2);
            if !v.is_zero() {
                table.insert((m, m2), v);
            }
        }
    }
    // K = exact kernel of the multiplication map Sym²H → H.
    let row_of: BTreeMap<BasisRef, usize> =
        refs.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let mut mult = Mat::zeros(refs.len(), monomials.len());
    for (j, &(a, b)) in monomials.iter().enumerate() {
        let prod = ring.mul(&Element::basis(a), &Element::basis(b));
        for (r, c) in &prod.coords {
            mult[(row_of[r], j)] = c.clone();
        }
    }
    let kernel: Vec<SymmetricSquareElement> = kernel_basis(&mult)
        .into_iter()
        .map(|v| {
            let mut e = SymmetricSquareElement::zero();
            for (&(a, b), c) in monomials.iter().zip(&v) {
                if !c.is_zero() {
                    e.add_pair(a, b, c);
                }
            }
            e
        })
        .collect();
    let tensor = BianchiMasseyTensor {
        space: ring.space.clone(),
        monomials,
        table,
        kernel: kernel.clone(),
        f_table: Vec::new(),
    };
    let f_table = kernel
        .iter()
        .map(|e| kernel.iter().map(|e2| tensor.eval(e, e2)).collect())
        .collect();
    BianchiMasseyTensor { f_table, ..tensor }
}

/// Checks the four-term identity against μ₃ on every basis triple; single
/// classes enter as 1⊙x and the corresponding values vanish.
pub fn verify_harr_to_sym(
    t: &BianchiMasseyTensor,
    ring: &CohomologyRing,
    mu3: &MultilinearMap,
) -> Result<ValidationReport, String> {
    if t.space != ring.space {
        return Err("tensor and ring live on different cohomology spaces".into());
    }
    if mu3.arity != 3 || mu3.internal_degree != -1 {
        return Err("ternary operation must have arity 3 and internal degree -1".into());
    }
    let mut report = ValidationReport::default();
    let single = |r| SymmetricSquareElement::single(ring, r);
    for &x in &ring.space.all_refs() {
        for &y in &ring.space.all_refs() {
            for &z in &ring.space.all_refs() {
                let mut lhs = Element::zero();
                lhs.add_scaled(
                    &ring.mul(&Element::basis(x), &t.eval(&single(y), &single(z))),
                    &-sign_pow(0),
                );
                lhs.add_scaled(
                    &t.eval(&SymmetricSquareElement::pair(x, y), &single(z)),
                    &sign_pow(0),
                );
                lhs.add_scaled(
                    &t.eval(&single(x), &SymmetricSquareElement::pair(y, z)),
                    &-sign_pow(0),
                );
                lhs.add_scaled(
                    &ring.mul(&t.eval(&single(x), &single(y)), &Element::basis(z)),
                    &sign_pow(0),
                );
                let rhs = mu3.get(&[x, y, z]);
                if lhs != rhs {
                    report.note(format!(
                        "four-term identity fails on ({}, {}, {})",
                        ring.space.name(x),
                        ring.space.name(y),
                        ring.space.name(z)
                    ));
                }
            }
        }
    }
    Ok(report)
}

/// True iff the two formality detectors agree: ℱ ≡ 0 on the multiplication
/// kernel exactly when the obstruction dφ₂ = μ₃ is solvable.
pub fn bm_equivalence(
    t: &BianchiMasseyTensor,
    ring: &CohomologyRing,
    obstruction: &crate::harrison::ObstructionResult,
) -> Result<bool, String> {
    if t.space != ring.space {
        return Err("tensor and obstruction come from different algebras".into());
    }
    if let Some(w) = &obstruction.witness {
        for key in w.map.table.keys() {
            if key.iter().any(|&(d, i)| i >= ring.space.dim(d as i64)) {
                return Err("obstruction witness references unknown classes".into());
            }
        }
    }
    Ok(t.f_is_zero() == obstruction.solvable)
}
