//! Hodge homotopies: a degree −1 operator d⁻ on a Poincaré DGCA satisfying
//!
//! ```text
//! d⁻d⁻ = 0,   d⁻dd⁻ = d⁻,   dd⁻d = d,   d⁻(1) = 0,
//! ⟨im d⁻, im d⁻⟩ = 0,   ⟨im π, im d⁻⟩ = 0,
//! ```
//!
//! where π = id − dd⁻ − d⁻d is the harmonic projector. The image ℋ* of π is
//! a space of closed elements mapping isomorphically onto cohomology, and the
//! algebra splits as ℋ* ⊕ dd⁻𝒜* ⊕ d⁻d𝒜* with the last two summands spanning
//! an acyclic complement ℒ*.
//!
//! Two construction paths are supported: an explicit d⁻ matrix, and the
//! metric route (adjoint d*, Laplacian, Green operator, d⁻ = G d*). A metric
//! need not make its d⁻ pairing-orthogonal, so the metric constructor
//! re-validates orthogonality and rejects incompatible metrics.

use crate::graded::{Element, GradedLinearMap, GradedVectorSpace};
use crate::matrix::{image_basis, solve, Mat};
use crate::pdgca::{cohomology_unchecked, validate_pdgca, Pdgca, ValidationReport};
use crate::scalar::Scalar;
use num::Zero;
use thiserror::Error;

#[derive(Clone, Debug)]
pub struct HodgeHomotopy {
    pub base: Pdgca,
    pub dminus: GradedLinearMap,
    /// Harmonic projector π = id − dd⁻ − d⁻d on the algebra.
    pub pi: GradedLinearMap,
    /// Abstract harmonic space with basis names `e{degree}_{index}`.
    pub harmonic: GradedVectorSpace,
    /// Inclusion ℋ* → 𝒜* (columns are harmonic basis vectors).
    pub inclusion: GradedLinearMap,
    /// Coordinate projection 𝒜* → ℋ* with projection∘inclusion = id and
    /// inclusion∘projection = π.
    pub projection: GradedLinearMap,
}

#[derive(Debug, Error)]
pub enum HodgeError {
    #[error("base algebra invalid:\n{0}")]
    InvalidBase(ValidationReport),
    #[error("operator is not a Hodge homotopy:\n{0}")]
    Invalid(ValidationReport),
    #[error("metric block in degree {0} is not symmetric")]
    MetricNotSymmetric(usize),
    #[error("metric block in degree {0} is not positive definite")]
    MetricNotPositiveDefinite(usize),
    #[error("metric block in degree {0} has wrong dimensions")]
    MetricShape(usize),
    #[error("metric incompatible with pairing:\n{0}")]
    MetricIncompatible(ValidationReport),
}

/// π = id − dd⁻ − d⁻d for a candidate d⁻.
pub fn harmonic_projector_of(a: &Pdgca, dminus: &GradedLinearMap) -> GradedLinearMap {
    let id = GradedLinearMap::identity(a.space.dims());
    id.sub(&a.d.compose(dminus)).sub(&dminus.compose(&a.d))
}

/// Checks every Hodge-homotopy invariant exactly and reports each violation.
/// Assumes (and re-checks) that the base algebra itself is valid.
pub fn validate_hodge(a: &Pdgca, dminus: &GradedLinearMap) -> ValidationReport {
    let mut report = ValidationReport::default();
    if dminus.shift != -1 {
        report.note("d⁻ must have degree shift −1");
        return report;
    }
    let base = validate_pdgca(a);
    if !base.is_valid() {
        report.note("base algebra invalid (run validate on it for details)");
        return report;
    }

    let d = &a.d;
    let dm = dminus;
    if !dm.compose(dm).is_zero() {
        report.note("d⁻d⁻ ≠ 0");
    }
    if dm.compose(d).compose(dm) != *dm {
        report.note("d⁻dd⁻ ≠ d⁻");
    }
    if d.compose(dm).compose(d) != *d {
        report.note("dd⁻d ≠ d");
    }
    if !dm.apply(&a.unit_element()).is_zero() {
        report.note("d⁻(1) ≠ 0");
    }

    let pi = harmonic_projector_of(a, dm);
    if pi.compose(&pi) != pi {
        report.note("π is not idempotent");
    }
    if !d.compose(&pi).is_zero() || !pi.compose(d).is_zero() {
        report.note("dπ ≠ 0 or πd ≠ 0");
    }
    if !dm.compose(&pi).is_zero() || !pi.compose(dm).is_zero() {
        report.note("d⁻π ≠ 0 or πd⁻ ≠ 0");
    }

    // Pairing orthogonality of the images of d⁻ and π. The chain pairing
    // already returns 0 on non-complementary degrees, so checking all pairs
    // of image vectors covers exactly the complementary ones.
    let image_elements = |m: &GradedLinearMap| -> Vec<Element> {
        let mut out = Vec::new();
        for k in 0..=a.top_degree() as i64 {
            let target = k + m.shift;
            if target < 0 {
                continue;
            }
            for v in image_basis(&m.block(k)) {
                out.push(Element::from_coords(target as usize, &v));
            }
        }
        out
    };
    let im_dm = image_elements(dm);
    let im_pi = image_elements(&pi);
    if im_dm
        .iter()
        .any(|x| im_dm.iter().any(|y| !a.pairing(x, y).is_zero()))
    {
        report.note("⟨im d⁻, im d⁻⟩ ≠ 0");
    }
    if im_pi
        .iter()
        .any(|x| im_dm.iter().any(|y| !a.pairing(x, y).is_zero()))
    {
        report.note("⟨im π, im d⁻⟩ ≠ 0");
    }

    // ℋᵏ must map isomorphically onto Hᵏ(𝒜).
    let h = cohomology_unchecked(a);
    for k in 0..=a.top_degree() as i64 {
        let harmonics = image_basis(&pi.block(k));
        if harmonics.len() != h.betti[k as usize] {
            report.note(format!(
                "harmonic dimension {} ≠ Betti number {} in degree {k}",
                harmonics.len(),
                h.betti[k as usize]
            ));
            continue;
        }
        // Independence of the classes of the harmonic basis.
        let classes: Vec<Vec<Scalar>> = harmonics
            .iter()
            .map(|v| {
                let e = Element::from_coords(k as usize, v);
                h.class_of(a, &e).coords_in_degree(&h.space, k)
            })
            .collect();
        if !classes.is_empty() {
            let m = Mat::from_rows(classes).transpose();
            if m.rank() != harmonics.len() {
                report.note(format!("harmonic classes dependent in degree {k}"));
            }
        }
    }

    report
}

impl HodgeHomotopy {
    /// Builds the derived data (projector, harmonic basis, inclusion,
    /// projection) for a validated d⁻. Fails with the validation report.
    pub fn new(base: Pdgca, dminus: GradedLinearMap) -> Result<Self, HodgeError> {
        let report = validate_hodge(&base, &dminus);
        if !report.is_valid() {
            return Err(HodgeError::Invalid(report));
        }
        Ok(Self::new_unchecked(base, dminus))
    }

    fn new_unchecked(base: Pdgca, dminus: GradedLinearMap) -> Self {
        let pi = harmonic_projector_of(&base, &dminus);
        let n = base.top_degree();
        let mut harmonic_basis: Vec<Vec<String>> = Vec::with_capacity(n + 1);
        let mut columns: Vec<Vec<Vec<Scalar>>> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let cols = image_basis(&pi.block(k as i64));
            harmonic_basis.push((0..cols.len()).map(|i| format!("e{k}_{i}")).collect());
            columns.push(cols);
        }
        let harmonic = GradedVectorSpace::new(n, harmonic_basis);

        let mut inclusion = GradedLinearMap::zero(harmonic.dims(), base.space.dims(), 0);
        let mut projection = GradedLinearMap::zero(base.space.dims(), harmonic.dims(), 0);
        for k in 0..=n {
            let cols = &columns[k];
            let dim = base.space.dim(k as i64);
            if cols.is_empty() {
                continue;
            }
            let mut j = Mat::zeros(dim, cols.len());
            for (c, col) in cols.iter().enumerate() {
                for r in 0..dim {
                    j[(r, c)] = col[r].clone();
                }
            }
            inclusion.set_block(k, j.clone());
            // projection = coordinates of π(basis vector) in the column basis
            let pik = pi.block(k as i64);
            let mut p = Mat::zeros(cols.len(), dim);
            for col in 0..dim {
                let x = solve(&j, &pik.column(col))
                    .expect("π image must lie in the harmonic column span");
                for r in 0..cols.len() {
                    p[(r, col)] = x[r].clone();
                }
            }
            projection.set_block(k, p);
        }

        HodgeHomotopy { base, dminus, pi, harmonic, inclusion, projection }
    }

    /// The harmonic projector as a graded linear map on the algebra.
    pub fn harmonic_projector(&self) -> GradedLinearMap {
        self.pi.clone()
    }

    /// Project an algebra element to harmonic coordinates.
    pub fn project(&self, e: &Element) -> Element {
        self.projection.apply(e)
    }

    /// Include a harmonic element into the algebra.
    pub fn include(&self, e: &Element) -> Element {
        self.inclusion.apply(e)
    }

    /// π applied inside the algebra (inclusion ∘ projection).
    pub fn pi_apply(&self, e: &Element) -> Element {
        self.pi.apply(e)
    }

    /// Dimension of the acyclic part ℒᵏ = (dd⁻ ⊕ d⁻d)𝒜ᵏ.
    pub fn acyclic_dim(&self, k: i64) -> usize {
        self.base.space.dim(k) - self.harmonic.dim(k)
    }

    /// Harmonic unit (projection of the algebra unit).
    pub fn unit(&self) -> Element {
        self.project(&self.base.unit_element())
    }
}

/// Builds a Hodge homotopy from an exact positive-definite metric, one Gram
/// matrix per degree: d* is the metric adjoint of d, Δ = dd* + d*d, G inverts
/// Δ on its image and kills its kernel, and d⁻ = G d*. Pairing orthogonality
/// is then re-validated; metrics that break it are rejected.
pub fn construct_hodge_from_metric(a: &Pdgca, gram: &[Mat]) -> Result<HodgeHomotopy, HodgeError> {
    let base = validate_pdgca(a);
    if !base.is_valid() {
        return Err(HodgeError::InvalidBase(base));
    }
    let n = a.top_degree();
    assert_eq!(gram.len(), n + 1, "one Gram matrix per degree 0..=n");
    let mut gram_inv = Vec::with_capacity(n + 1);
    for (k, g) in gram.iter().enumerate() {
        let dim = a.space.dim(k as i64);
        if g.rows != dim || g.cols != dim {
            return Err(HodgeError::MetricShape(k));
        }
        if *g != g.transpose() {
            return Err(HodgeError::MetricNotSymmetric(k));
        }
        // Sylvester's criterion: all leading principal minors positive.
        for m in 1..=dim {
            let mut minor = Mat::zeros(m, m);
            for i in 0..m {
                for j in 0..m {
                    minor[(i, j)] = g[(i, j)].clone();
                }
            }
            if minor.det() <= crate::scalar::zero() {
                return Err(HodgeError::MetricNotPositiveDefinite(k));
            }
        }
        gram_inv.push(g.inverse().expect("positive definite matrices are invertible"));
    }

    // d*: 𝒜ᵏ → 𝒜ᵏ⁻¹ with ⟨d*x, y⟩_g = ⟨x, dy⟩_g, i.e. G⁻¹_{k−1} Dᵀ_{k−1} G_k.
    let mut dstar = GradedLinearMap::zero(a.space.dims(), a.space.dims(), -1);
    for k in 1..=n {
        if a.space.dim(k as i64) == 0 || a.space.dim(k as i64 - 1) == 0 {
            continue;
        }
        let dk1 = a.d.block(k as i64 - 1);
        let block = gram_inv[k - 1].mul(&dk1.transpose()).mul(&gram[k]);
        dstar.set_block(k, block);
    }

    // Δ = dd* + d*d degreewise, Green operator G, then d⁻ = G d*.
    let mut green = GradedLinearMap::zero(a.space.dims(), a.space.dims(), 0);
    let laplace = a.d.compose(&dstar).add(&dstar.compose(&a.d));
    for k in 0..=n {
        let dim = a.space.dim(k as i64);
        if dim == 0 {
            continue;
        }
        let l = laplace.block(k as i64);
        let kernel = crate::matrix::kernel_basis(&l);
        let image = image_basis(&l);
        // Solve Δ²z = v for each image basis vector v; then Gv = Δz lies in
        // im Δ and satisfies ΔGv = v.
        let l2 = l.mul(&l);
        let mut basis_cols = Mat::zeros(dim, dim);
        let mut green_cols = Mat::zeros(dim, dim);
        for (j, v) in kernel.iter().chain(image.iter()).enumerate() {
            for i in 0..dim {
                basis_cols[(i, j)] = v[i].clone();
            }
            if j >= kernel.len() {
                let z = solve(&l2, v).expect("image vector must be in im Δ²");
                let w = l.mul_vec(&z);
                for i in 0..dim {
                    green_cols[(i, j)] = w[i].clone();
                }
            }
        }
        let block = green_cols.mul(
            &basis_cols.inverse().expect("kernel and image of Δ span the degree"),
        );
        green.set_block(k, block);
    }

    let dminus = green.compose(&dstar);
    let report = validate_hodge(a, &dminus);
    if !report.is_valid() {
        // The algebraic identities hold for any metric; only pairing
        // orthogonality can fail. Name the error accordingly but return the
        // full report either way.
        if report.violations.iter().all(|v| v.starts_with('⟨')) {
            return Err(HodgeError::MetricIncompatible(report));
        }
        return Err(HodgeError::Invalid(report));
    }
    Ok(HodgeHomotopy::new_unchecked(a.clone(), dminus))
}

/// Degreewise shape report for the small-quotient profile.
#[derive(Clone, Debug, Default)]
pub struct QShapeReport {
    pub violations: Vec<(usize, String)>,
}

impl QShapeReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first_violation(&self) -> Option<&(usize, String)> {
        self.violations.first()
    }
}

/// Checks the degreewise band profile of a small quotient algebra for an
/// (r−1)-connected base of top degree n: only the unit in degree 0, nothing
/// in 1..r−1, harmonic-only in r..2r−2 and n−2r+2..n−r, acyclic part allowed
/// only in 2r−1..n−2r+1, nothing in n−r+1..n−1, and a one-dimensional
/// harmonic top degree.
pub fn qshape_check(h: &HodgeHomotopy, r: usize) -> Result<QShapeReport, String> {
    let a = &h.base;
    let n = a.top_degree();
    let ring = cohomology_unchecked(a);
    let conn = crate::pdgca::connectivity(&ring)?;
    if conn < r {
        return Err(format!(
            "requested r = {r} but the algebra is only ({} − 1)-connected",
            conn
        ));
    }
    if !crate::pdgca::is_nondegenerate(a) {
        return Err("chain-level pairing is degenerate".to_string());
    }

    let mut report = QShapeReport::default();
    let in_band = |k: usize, lo: i64, hi: i64| lo <= k as i64 && k as i64 <= hi;
    for k in 0..=n {
        let dim = a.space.dim(k as i64);
        let acyclic = h.acyclic_dim(k as i64);
        if k == 0 {
            if dim != 1 {
                report.violations.push((k, "degree 0 must be spanned by the unit".into()));
            }
        } else if in_band(k, 1, r as i64 - 1) || in_band(k, n as i64 - r as i64 + 1, n as i64 - 1)
        {
            if dim != 0 {
                report.violations.push((k, format!("degree {k} must be zero")));
            }
        } else if k == n {
            if dim != 1 || acyclic != 0 {
                report
                    .violations
                    .push((k, "top degree must be one-dimensional and harmonic".into()));
            }
        } else if in_band(k, r as i64, 2 * r as i64 - 2)
            || in_band(k, n as i64 - 2 * r as i64 + 2, n as i64 - r as i64)
        {
            if acyclic != 0 {
                report.violations.push((k, format!("degree {k} must be purely harmonic")));
            }
        }
        // remaining band 2r−1..n−2r+1: anything goes
    }
    Ok(report)
}

/// Ready-made Hodge data for the built-in algebras.
pub mod fixtures {
    use super::*;
    use crate::pdgca::fixtures::dim7;
    use crate::scalar::int;

    /// Gram matrices declaring every basis orthonormal.
    pub fn identity_metric(a: &Pdgca) -> Vec<Mat> {
        (0..=a.top_degree() as i64).map(|k| Mat::identity(a.space.dim(k))).collect()
    }

    /// The db = a² algebra with its canonical d⁻ (a² ↦ b, zero elsewhere).
    pub fn dim7_hodge() -> HodgeHomotopy {
        let a = dim7();
        let mut dm = GradedLinearMap::zero(a.space.dims(), a.space.dims(), -1);
        dm.set_entry(a.space.find("aa").unwrap(), a.space.find("b").unwrap(), int(1));
        HodgeHomotopy::new(a, dm).unwrap()
    }
}
