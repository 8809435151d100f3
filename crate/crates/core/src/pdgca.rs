//! The Poincaré DGCA data model: axiom validation, cohomology with
//! deterministic representatives, the integration pairing, connectivity, and
//! chain-level nondegeneracy.

use crate::graded::{BasisRef, Element, GradedLinearMap, GradedVectorSpace};
use crate::matrix::{image_basis, kernel_basis, solve, Mat};
use crate::multilinear::MultilinearMap;
use crate::scalar::{sign_pow, zero, Scalar};
use num::Zero;
use std::collections::BTreeMap;

/// Outcome of a total validation pass: every violated axiom, or empty when
/// the input satisfies all of them.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn note(&mut self, msg: impl Into<String>) {
        self.violations.push(msg.into());
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_valid() {
            writeln!(f, "valid")
        } else {
            for v in &self.violations {
                writeln!(f, "violation: {v}")?;
            }
            Ok(())
        }
    }
}

/// A finite-dimensional graded commutative algebra with differential and an
/// integration functional on the top degree.
#[derive(Clone, Debug)]
pub struct Pdgca {
    pub name: String,
    pub space: GradedVectorSpace,
    pub unit: BasisRef,
    /// Arity-2, internal-degree-0 product table.
    pub mul: MultilinearMap,
    /// Differential, shift +1.
    pub d: GradedLinearMap,
    /// Integration functional on the top degree, one coefficient per
    /// degree-`n` basis vector.
    pub integrate: Vec<Scalar>,
}

impl Pdgca {
    pub fn top_degree(&self) -> usize {
        self.space.top_degree
    }

    pub fn unit_element(&self) -> Element {
        Element::basis(self.unit)
    }

    pub fn product(&self, a: &Element, b: &Element) -> Element {
        self.mul.eval(&[a.clone(), b.clone()])
    }

    /// ∫e: reads off the top-degree part of `e` (lower degrees integrate to
    /// zero by definition).
    pub fn integral(&self, e: &Element) -> Scalar {
        let n = self.top_degree();
        let mut acc = zero();
        for ((deg, i), c) in &e.coords {
            if *deg == n {
                acc += &self.integrate[*i] * c;
            }
        }
        acc
    }

    /// The chain-level pairing ⟨a, b⟩ = ∫(a·b). Products landing outside the
    /// top degree integrate to zero, so complementary-degree bookkeeping is
    /// automatic.
    pub fn pairing(&self, a: &Element, b: &Element) -> Scalar {
        self.integral(&self.product(a, b))
    }

    pub fn basis_element(&self, name: &str) -> Element {
        Element::basis(self.space.find(name).unwrap_or_else(|| panic!("no basis vector {name}")))
    }
}

/// Checks every PDGCA axiom on all basis tuples and reports each violation.
pub fn validate_pdgca(a: &Pdgca) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = a.top_degree();
    if a.mul.arity != 2 || a.mul.internal_degree != 0 {
        report.note("product must have arity 2 and internal degree 0");
    }
    if a.d.shift != 1 {
        report.note("differential must have degree shift +1");
    }
    if a.unit.0 != 0 {
        report.note("unit must live in degree 0");
    }
    if a.integrate.len() != a.space.dim(n as i64) {
        report.note("integration functional has wrong length for the top degree");
    }
    if !report.is_valid() {
        return report;
    }

    let refs = a.space.all_refs();
    let one = a.unit_element();

    for &x in &refs {
        let ex = Element::basis(x);
        if a.product(&one, &ex) != ex || a.product(&ex, &one) != ex {
            report.note(format!("unit axiom fails on {}", a.space.name(x)));
        }
    }

    for &x in &refs {
        for &y in &refs {
            let (ex, ey) = (Element::basis(x), Element::basis(y));
            let xy = a.product(&ex, &ey);
            let yx = a.product(&ey, &ex);
            if xy != yx.scale(&sign_pow((x.0 * y.0) as i64)) {
                report.note(format!(
                    "graded commutativity fails on ({}, {})",
                    a.space.name(x),
                    a.space.name(y)
                ));
            }
            let leibniz_lhs = a.d.apply(&xy);
            let mut leibniz_rhs = a.product(&a.d.apply(&ex), &ey);
            leibniz_rhs.add_scaled(&a.product(&ex, &a.d.apply(&ey)), &sign_pow(x.0 as i64));
            if leibniz_lhs != leibniz_rhs {
                report.note(format!(
                    "Leibniz rule fails on ({}, {})",
                    a.space.name(x),
                    a.space.name(y)
                ));
            }
        }
    }

    for &x in &refs {
        for &y in &refs {
            for &z in &refs {
                if x.0 + y.0 + z.0 > n {
                    continue;
                }
                let (ex, ey, ez) = (Element::basis(x), Element::basis(y), Element::basis(z));
                if a.product(&a.product(&ex, &ey), &ez) != a.product(&ex, &a.product(&ey, &ez)) {
                    report.note(format!(
                        "associativity fails on ({}, {}, {})",
                        a.space.name(x),
                        a.space.name(y),
                        a.space.name(z)
                    ));
                }
            }
        }
    }

    if !a.d.compose(&a.d).is_zero() {
        report.note("d² ≠ 0");
    }

    for r in a.space.basis_refs(n as i64 - 1) {
        if !a.integral(&a.d.apply(&Element::basis(r))).is_zero() {
            report.note(format!("∫∘d ≠ 0 on {}", a.space.name(r)));
        }
    }

    if report.is_valid() {
        // Only meaningful once d² = 0 and the ring axioms hold.
        let h = cohomology_unchecked(a);
        for k in 0..=n {
            let bk = h.betti[k];
            let bnk = h.betti[n - k];
            if bk != bnk {
                report.note(format!("Betti numbers b_{k} = {bk} and b_{} = {bnk} differ", n - k));
            } else if bk > 0 && h.pairing_block(k).rank() != bk {
                report.note(format!("cohomology pairing degenerate in degree {k}"));
            }
        }
    }

    report
}

/// Cohomology of a valid PDGCA: Betti numbers, deterministic closed
/// representatives, and the induced product and pairing.
#[derive(Clone, Debug)]
pub struct CohomologyRing {
    /// Abstract cohomology space with basis names `h{degree}_{index}`.
    pub space: GradedVectorSpace,
    pub betti: Vec<usize>,
    /// Chosen closed representative (coordinates in the algebra) per class.
    pub reps: BTreeMap<BasisRef, Element>,
    /// Per-degree image basis of d, used to reduce closed elements to classes.
    im_d: Vec<Vec<Vec<Scalar>>>,
    pub unit: BasisRef,
    /// Induced product on representatives.
    pub product: MultilinearMap,
    /// Top degree of the underlying algebra.
    pub top_degree: usize,
    /// ⟨h_i, h_j⟩ blocks: `pairing_blocks[k]` is `betti[k] × betti[n-k]`.
    pairing_blocks: Vec<Mat>,
}

impl CohomologyRing {
    pub fn pairing_block(&self, k: usize) -> Mat {
        self.pairing_blocks[k].clone()
    }

    /// Class of a closed algebra element, as coordinates in this ring.
    /// Panics if some degree slice is not in the span of representatives and
    /// exact elements (i.e. if the input was not closed).
    pub fn class_of(&self, a: &Pdgca, e: &Element) -> Element {
        let mut out = Element::zero();
        let degrees: std::collections::BTreeSet<usize> =
            e.coords.keys().map(|(d, _)| *d).collect();
        for k in degrees {
            let v = e.coords_in_degree(&a.space, k as i64);
            let dim = v.len();
            let reps: Vec<Vec<Scalar>> = (0..self.betti[k])
                .map(|i| self.reps[&(k, i)].coords_in_degree(&a.space, k as i64))
                .collect();
            let mut m = Mat::zeros(dim, reps.len() + self.im_d[k].len());
            for (j, col) in reps.iter().chain(self.im_d[k].iter()).enumerate() {
                for i in 0..dim {
                    m[(i, j)] = col[i].clone();
                }
            }
            let x = solve(&m, &v).expect("element is not closed: class undefined");
            for (i, c) in x.iter().take(self.betti[k]).enumerate() {
                out.add_term((k, i), c.clone());
            }
        }
        out
    }

    pub fn unit_element(&self) -> Element {
        Element::basis(self.unit)
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        self.product.eval(&[x.clone(), y.clone()])
    }

    /// Induced pairing of two cohomology elements.
    pub fn pairing(&self, x: &Element, y: &Element) -> Scalar {
        let n = self.top_degree;
        let mut acc = zero();
        for ((dx, i), cx) in &x.coords {
            for ((dy, j), cy) in &y.coords {
                if dx + dy == n {
                    acc += &self.pairing_blocks[*dx][(*i, *j)] * &(cx * cy);
                }
            }
        }
        acc
    }
}

fn d_block(a: &Pdgca, k: i64) -> Mat {
    a.d.block(k)
}

pub(crate) fn cohomology_unchecked(a: &Pdgca) -> CohomologyRing {
    let n = a.top_degree();
    let mut betti = Vec::with_capacity(n + 1);
    let mut reps: BTreeMap<BasisRef, Element> = BTreeMap::new();
    let mut im_d: Vec<Vec<Vec<Scalar>>> = Vec::with_capacity(n + 1);

    for k in 0..=n {
        let dim = a.space.dim(k as i64);
        let kernel = kernel_basis(&d_block(a, k as i64));
        let image = if k == 0 { Vec::new() } else { image_basis(&d_block(a, k as i64 - 1)) };
        // Column-order echelon selection over [image | kernel]: pivots in the
        // kernel region complete the image to a basis of ker d and are the
        // chosen representatives.
        let mut m = Mat::zeros(dim, image.len() + kernel.len());
        for (j, col) in image.iter().chain(kernel.iter()).enumerate() {
            for i in 0..dim {
                m[(i, j)] = col[i].clone();
            }
        }
        let (_, pivots) = m.rref();
        let chosen: Vec<&Vec<Scalar>> = pivots
            .iter()
            .filter(|&&c| c >= image.len())
            .map(|&c| &kernel[c - image.len()])
            .collect();
        betti.push(chosen.len());
        for (i, v) in chosen.iter().enumerate() {
            reps.insert((k, i), Element::from_coords(k, v));
        }
        im_d.push(image);
    }

    let basis: Vec<Vec<String>> =
        (0..=n).map(|k| (0..betti[k]).map(|i| format!("h{k}_{i}")).collect()).collect();
    let space = GradedVectorSpace::new(n, basis);

    let mut ring = CohomologyRing {
        space,
        betti: betti.clone(),
        reps,
        im_d,
        unit: (0, 0),
        product: MultilinearMap::new(2, 0),
        top_degree: n,
        pairing_blocks: Vec::new(),
    };

    // Locate the unit class before computing products.
    let unit_class = ring.class_of(a, &a.unit_element());
    assert!(
        unit_class.coords.len() <= 1,
        "unit class should be a single coordinate after representative choice"
    );
    if let Some(((deg, i), c)) = unit_class.coords.iter().next() {
        // Rescale the degree-0 representative so the unit class is exactly h0_i.
        let r = ring.reps.get_mut(&(*deg, *i)).unwrap();
        *r = r.scale(c);
        ring.unit = (*deg, *i);
    }

    let mut product = MultilinearMap::new(2, 0);
    for k in 0..=n {
        for i in 0..betti[k] {
            for l in 0..=(n - k) {
                for j in 0..betti[l] {
                    let prod =
                        a.product(&ring.reps[&(k, i)].clone(), &ring.reps[&(l, j)].clone());
                    let class = ring.class_of(a, &prod);
                    product.set(vec![(k, i), (l, j)], class);
                }
            }
        }
    }
    ring.product = product;

    let mut blocks = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut block = Mat::zeros(betti[k], betti[n - k]);
        for i in 0..betti[k] {
            for j in 0..betti[n - k] {
                block[(i, j)] = a.pairing(&ring.reps[&(k, i)].clone(), &ring.reps[&(n - k, j)].clone());
            }
        }
        blocks.push(block);
    }
    ring.pairing_blocks = blocks;

    ring
}

/// Cohomology of a PDGCA; refuses invalid inputs with the validation report.
pub fn cohomology(a: &Pdgca) -> Result<CohomologyRing, ValidationReport> {
    let report = validate_pdgca(a);
    if report.is_valid() {
        Ok(cohomology_unchecked(a))
    } else {
        Err(report)
    }
}

/// Largest `r ≥ 1` with H⁰ = 𝕂 and Hᵏ = 0 for 1 ≤ k ≤ r−1; the algebra is
/// then (r−1)-connected. Errors when H⁰ ≠ 𝕂.
pub fn connectivity(h: &CohomologyRing) -> Result<usize, String> {
    if h.betti[0] != 1 {
        return Err("not connected: H⁰ ≠ 𝕂".to_string());
    }
    let mut r = 1;
    while r < h.top_degree && h.betti[r] == 0 {
        r += 1;
    }
    Ok(r.max(1))
}

/// Whether the chain-level pairing on the whole algebra has zero radical.
pub fn is_nondegenerate(a: &Pdgca) -> bool {
    let refs = a.space.all_refs();
    let t = refs.len();
    let mut gram = Mat::zeros(t, t);
    for (i, &x) in refs.iter().enumerate() {
        for (j, &y) in refs.iter().enumerate() {
            gram[(i, j)] = a.pairing(&Element::basis(x), &Element::basis(y));
        }
    }
    gram.rank() == t
}

/// Incremental constructor used by tests, fixtures, and the file loader.
/// Products are given on one ordered pair; the transpose is filled in by
/// graded commutativity, and unit products are implicit.
pub struct PdgcaBuilder {
    name: String,
    top_degree: usize,
    basis: Vec<(String, usize)>,
    unit: Option<String>,
    d_entries: Vec<(String, String, Scalar)>,
    products: Vec<(String, String, Vec<(String, Scalar)>)>,
    integrals: Vec<(String, Scalar)>,
}

impl PdgcaBuilder {
    pub fn new(name: &str, top_degree: usize) -> Self {
        PdgcaBuilder {
            name: name.to_string(),
            top_degree,
            basis: Vec::new(),
            unit: None,
            d_entries: Vec::new(),
            products: Vec::new(),
            integrals: Vec::new(),
        }
    }

    pub fn basis(mut self, name: &str, degree: usize) -> Self {
        self.basis.push((name.to_string(), degree));
        self
    }

    pub fn unit(mut self, name: &str) -> Self {
        self.unit = Some(name.to_string());
        self
    }

    pub fn d(mut self, source: &str, terms: &[(&str, Scalar)]) -> Self {
        for (t, c) in terms {
            self.d_entries.push((source.to_string(), t.to_string(), c.clone()));
        }
        self
    }

    pub fn product(mut self, a: &str, b: &str, terms: &[(&str, Scalar)]) -> Self {
        self.products.push((
            a.to_string(),
            b.to_string(),
            terms.iter().map(|(t, c)| (t.to_string(), c.clone())).collect(),
        ));
        self
    }

    pub fn integral(mut self, name: &str, value: Scalar) -> Self {
        self.integrals.push((name.to_string(), value));
        self
    }

    pub fn build(self) -> Pdgca {
        let n = self.top_degree;
        let mut per_degree: Vec<Vec<String>> = vec![Vec::new(); n + 1];
        for (name, deg) in &self.basis {
            assert!(*deg <= n, "basis vector {name} above top degree");
            per_degree[*deg].push(name.clone());
        }
        let space = GradedVectorSpace::new(n, per_degree);
        let find = |name: &str| {
            space.find(name).unwrap_or_else(|| panic!("undeclared basis name {name}"))
        };

        let unit_name = self.unit.unwrap_or_else(|| {
            space.basis[0].first().expect("no degree-0 basis vector for the unit").clone()
        });
        let unit = find(&unit_name);

        let mut d = GradedLinearMap::zero(space.dims(), space.dims(), 1);
        for (src, tgt, c) in &self.d_entries {
            d.set_entry(find(src), find(tgt), c.clone());
        }

        let mut mul = MultilinearMap::new(2, 0);
        // Unit row first, so explicit entries may not silently disagree.
        for r in space.all_refs() {
            mul.set(vec![unit, r], Element::basis(r));
            mul.set(vec![r, unit], Element::basis(r));
        }
        for (a_name, b_name, terms) in &self.products {
            let x = find(a_name);
            let y = find(b_name);
            let mut value = Element::zero();
            for (t, c) in terms {
                value.add_term(find(t), c.clone());
            }
            mul.set(vec![x, y], value.clone());
            if x != y {
                mul.set(vec![y, x], value.scale(&sign_pow((x.0 * y.0) as i64)));
            }
        }

        let mut integrate = vec![zero(); space.dim(n as i64)];
        for (name, value) in &self.integrals {
            let (deg, idx) = find(name);
            assert_eq!(deg, n, "integration entry {name} is not in the top degree");
            integrate[idx] = value.clone();
        }

        Pdgca { name: self.name, space, unit, mul, d, integrate }
    }
}

/// Small built-in algebras used across the test suites and benchmarks.
pub mod fixtures {
    use super::*;
    use crate::scalar::int;

    /// Cohomology of the 3-sphere: unit and one degree-3 class.
    pub fn sphere3() -> Pdgca {
        PdgcaBuilder::new("s3", 3)
            .basis("1", 0)
            .basis("x", 3)
            .integral("x", int(1))
            .build()
    }

    /// Cohomology of ℂP²: truncated polynomial ring on a degree-2 class.
    pub fn cp2() -> Pdgca {
        PdgcaBuilder::new("cp2", 4)
            .basis("1", 0)
            .basis("a", 2)
            .basis("aa", 4)
            .product("a", "a", &[("aa", int(1))])
            .integral("aa", int(1))
            .build()
    }

    /// Seven-dimensional algebra with db = a²; Poincaré degree 7.
    pub fn dim7() -> Pdgca {
        PdgcaBuilder::new("dim7", 7)
            .basis("1", 0)
            .basis("a", 2)
            .basis("b", 3)
            .basis("aa", 4)
            .basis("ab", 5)
            .basis("w", 7)
            .d("b", &[("aa", int(1))])
            .product("a", "a", &[("aa", int(1))])
            .product("a", "b", &[("ab", int(1))])
            .product("a", "ab", &[("w", int(1))])
            .product("b", "aa", &[("w", int(1))])
            .integral("w", int(1))
            .build()
    }

    /// Eleven-dimensional 2-connected non-formal example: dβ = xy with
    /// ∫x·β·y = 1; the degree-8 classes xβ, yβ complete Poincaré duality.
    pub fn dim11() -> Pdgca {
        PdgcaBuilder::new("dim11", 11)
            .basis("1", 0)
            .basis("x", 3)
            .basis("y", 3)
            .basis("beta", 5)
            .basis("xy", 6)
            .basis("xbeta", 8)
            .basis("ybeta", 8)
            .basis("w", 11)
            .d("beta", &[("xy", int(1))])
            .product("x", "y", &[("xy", int(1))])
            .product("x", "beta", &[("xbeta", int(1))])
            .product("y", "beta", &[("ybeta", int(1))])
            .product("x", "ybeta", &[("w", int(1))])
            .product("y", "xbeta", &[("w", int(-1))])
            .product("beta", "xy", &[("w", int(1))])
            .integral("w", int(1))
            .build()
    }

    /// (r = 2, n = 8, b₂ = 1) algebra with a nonzero differential: db = a²,
    /// dc = v, with Poincaré partners a·s = w, aa·c = w, b·v = w.
    pub fn dim8() -> Pdgca {
        PdgcaBuilder::new("dim8", 8)
            .basis("1", 0)
            .basis("a", 2)
            .basis("b", 3)
            .basis("aa", 4)
            .basis("c", 4)
            .basis("v", 5)
            .basis("s", 6)
            .basis("w", 8)
            .d("b", &[("aa", int(1))])
            .d("c", &[("v", int(1))])
            .product("a", "a", &[("aa", int(1))])
            .product("a", "c", &[("s", int(1))])
            .product("a", "s", &[("w", int(1))])
            .product("aa", "c", &[("w", int(1))])
            .product("b", "v", &[("w", int(1))])
            .integral("w", int(1))
            .build()
    }

    /// (r = 2, n = 9, b₂ = 1) algebra: the truncation Λ(a, b)/(db = a²) with
    /// t = a²b and w = a³b; H* = {1, a, t, w}.
    pub fn dim9() -> Pdgca {
        PdgcaBuilder::new("dim9", 9)
            .basis("1", 0)
            .basis("a", 2)
            .basis("b", 3)
            .basis("aa", 4)
            .basis("ab", 5)
            .basis("z", 6)
            .basis("t", 7)
            .basis("w", 9)
            .d("b", &[("aa", int(1))])
            .d("ab", &[("z", int(1))])
            .product("a", "a", &[("aa", int(1))])
            .product("a", "b", &[("ab", int(1))])
            .product("a", "aa", &[("z", int(1))])
            .product("a", "ab", &[("t", int(1))])
            .product("a", "t", &[("w", int(1))])
            .product("b", "aa", &[("t", int(1))])
            .product("b", "z", &[("w", int(1))])
            .product("aa", "ab", &[("w", int(1))])
            .integral("w", int(1))
            .build()
    }

    /// Cohomology of ℂP³: truncated polynomial ring, r = 2, n = 6 (the
    /// n = 4r − 2 borderline case).
    pub fn cp3() -> Pdgca {
        PdgcaBuilder::new("cp3", 6)
            .basis("1", 0)
            .basis("h", 2)
            .basis("hh", 4)
            .basis("hhh", 6)
            .product("h", "h", &[("hh", int(1))])
            .product("h", "hh", &[("hhh", int(1))])
            .integral("hhh", int(1))
            .build()
    }

    /// Cohomology of S² × S³ with zero differential: mixed-parity degrees.
    pub fn s2s3() -> Pdgca {
        PdgcaBuilder::new("s2s3", 5)
            .basis("1", 0)
            .basis("a", 2)
            .basis("b", 3)
            .basis("ab", 5)
            .product("a", "b", &[("ab", int(1))])
            .integral("ab", int(1))
            .build()
    }

    /// Cohomology of S² × S² × S³ with zero differential; its ring carries a
    /// nonzero space of arity-2, internal-degree −1 cochains with nonzero
    /// coboundaries (degree pattern 2 + 2 − 1 = 3).
    pub fn s2s2s3() -> Pdgca {
        PdgcaBuilder::new("s2s2s3", 7)
            .basis("1", 0)
            .basis("a", 2)
            .basis("b", 2)
            .basis("c", 3)
            .basis("ab", 4)
            .basis("ac", 5)
            .basis("bc", 5)
            .basis("abc", 7)
            .product("a", "b", &[("ab", int(1))])
            .product("a", "c", &[("ac", int(1))])
            .product("b", "c", &[("bc", int(1))])
            .product("a", "bc", &[("abc", int(1))])
            .product("b", "ac", &[("abc", int(1))])
            .product("c", "ab", &[("abc", int(1))])
            .integral("abc", int(1))
            .build()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::scalar::int;

    #[test]
    fn sphere3_is_valid_with_betti() {
        let a = sphere3();
        assert!(validate_pdgca(&a).is_valid());
        let h = cohomology(&a).unwrap();
        assert_eq!(h.betti, vec![1, 0, 0, 1]);
        assert_eq!(connectivity(&h), Ok(3));
        assert!(is_nondegenerate(&a));
    }

    #[test]
    fn sphere3_zero_integral_is_degenerate() {
        let a = PdgcaBuilder::new("s3-bad", 3)
            .basis("1", 0)
            .basis("x", 3)
            .integral("x", int(0))
            .build();
        let report = validate_pdgca(&a);
        assert!(report
            .violations
            .iter()
            .any(|v| v.contains("pairing degenerate")));
        assert!(!is_nondegenerate(&a));
    }

    #[test]
    fn cp2_ring_structure() {
        let a = cp2();
        assert!(validate_pdgca(&a).is_valid());
        let h = cohomology(&a).unwrap();
        assert_eq!(h.betti, vec![1, 0, 1, 0, 1]);
        assert_eq!(connectivity(&h), Ok(2));
        // ⟨a, a⟩ = ∫a² = 1 in cohomology
        let ha = h.class_of(&a, &a.basis_element("a"));
        assert_eq!(h.pairing(&ha, &ha), int(1));
    }

    #[test]
    fn dim7_betti_and_pairing() {
        let a = dim7();
        assert!(validate_pdgca(&a).is_valid());
        let h = cohomology(&a).unwrap();
        assert_eq!(h.betti, vec![1, 0, 1, 0, 0, 1, 0, 1]);
        assert_eq!(connectivity(&h), Ok(2));
        // ⟨a, ab⟩ = ∫(a·ab) = ∫w = 1 at chain level
        assert_eq!(a.pairing(&a.basis_element("a"), &a.basis_element("ab")), int(1));
        // mismatched degrees pair to zero
        assert_eq!(a.pairing(&a.basis_element("a"), &a.basis_element("b")), int(0));
        assert!(is_nondegenerate(&a));
    }

    #[test]
    fn constructed_corpus_algebras_validate() {
        for (a, betti, r) in [
            (dim11(), vec![1, 0, 0, 2, 0, 0, 0, 0, 2, 0, 0, 1], 3),
            (dim8(), vec![1, 0, 1, 0, 0, 0, 1, 0, 1], 2),
            (dim9(), vec![1, 0, 1, 0, 0, 0, 0, 1, 0, 1], 2),
        ] {
            let report = validate_pdgca(&a);
            assert!(report.is_valid(), "{}: {report}", a.name);
            let h = cohomology(&a).unwrap();
            assert_eq!(h.betti, betti, "{}", a.name);
            assert_eq!(connectivity(&h), Ok(r), "{}", a.name);
            assert!(is_nondegenerate(&a), "{}", a.name);
        }
    }

    #[test]
    fn dim7_broken_leibniz_is_reported_once() {
        // Corrupt the differential with d(a) = b: then d(a·a) = 0 while
        // da·a + a·da = 2ab, and d² picks up d(d(a)) = a².
        let mut a = dim7();
        let ra = a.space.find("a").unwrap();
        let rb = a.space.find("b").unwrap();
        a.d.set_entry(ra, rb, int(1));
        let report = validate_pdgca(&a);
        assert!(report.violations.iter().any(|v| v == "Leibniz rule fails on (a, a)"));
        assert!(report.violations.iter().any(|v| v == "d² ≠ 0"));
    }

    #[test]
    fn exact_elements_have_zero_class() {
        let a = dim7();
        let h = cohomology(&a).unwrap();
        // db = a², so [a²] = 0 and the induced square of [a] vanishes.
        assert!(h.class_of(&a, &a.d.apply(&a.basis_element("b"))).is_zero());
        let ha = h.class_of(&a, &a.basis_element("a"));
        assert!(h.mul(&ha, &ha).is_zero());
        // [a]·[ab] = [w] pairs the middle classes to the fundamental class.
        let hab = h.class_of(&a, &a.basis_element("ab"));
        let hw = h.class_of(&a, &a.basis_element("w"));
        assert_eq!(h.mul(&ha, &hab), hw);
    }
}
