//! Line-oriented text format for algebra descriptions, with a canonical
//! emitter defining the normal form.
//!
//! ```text
//! algebra: dim11
//! top_degree: 11
//!
//! [basis]
//! 1: 0
//! x: 3
//!
//! [unit]
//! 1
//!
//! [differential]
//! beta: 1*xy
//!
//! [product]
//! x * y: 1*xy
//!
//! [integrate]
//! w: 1
//!
//! [metric]            (optional; per-degree Gram rows separated by '/')
//! degree 5: 2
//!
//! [hodge]             (optional; explicit entries of the degree -1 homotopy)
//! xy: 1*beta
//! ```
//!
//! Coefficients are exact rationals (`p/q` or integers); `#` starts a
//! comment. Products are given on one canonical half of each pair (first
//! factor not after the second in declaration order); the other half follows
//! by graded commutativity, and unit products are implicit.

use crate::graded::GradedLinearMap;
use crate::matrix::Mat;
use crate::pdgca::{Pdgca, PdgcaBuilder};
use crate::scalar::{sign_pow, Scalar};
use num::Zero;
use std::fmt::Write as _;
use std::str::FromStr;

pub type Terms = Vec<(Scalar, String)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraDescription {
    pub name: String,
    pub top_degree: usize,
    pub basis: Vec<(String, usize)>,
    pub unit: String,
    pub differential: Vec<(String, Terms)>,
    pub products: Vec<(String, String, Terms)>,
    pub integrate: Vec<(String, Scalar)>,
    pub metric: Option<Vec<(usize, Vec<Vec<Scalar>>)>>,
    pub hodge: Option<Vec<(String, Terms)>>,
}

fn err(line: usize, msg: impl std::fmt::Display) -> String {
    format!("line {line}: {msg}")
}

fn parse_scalar(s: &str, line: usize) -> Result<Scalar, String> {
    Scalar::from_str(s.trim()).map_err(|_| err(line, format!("invalid rational '{}'", s.trim())))
}

fn parse_terms(s: &str, line: usize) -> Result<Terms, String> {
    let s = s.trim();
    if s == "0" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for part in s.split('+') {
        let part = part.trim();
        if part.is_empty() {
            return Err(err(line, "empty term in linear combination"));
        }
        if let Some((c, name)) = part.split_once('*') {
            out.push((parse_scalar(c, line)?, name.trim().to_string()));
        } else {
            out.push((Scalar::from_integer(1.into()), part.to_string()));
        }
    }
    Ok(out)
}

fn fmt_terms(terms: &[(Scalar, String)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    terms
        .iter()
        .map(|(c, n)| format!("{c}*{n}"))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Parses the per-degree Gram rows of a `[metric]` section body line.
fn parse_metric_line(rest: &str, line: usize) -> Result<Vec<Vec<Scalar>>, String> {
    let mut rows = Vec::new();
    for row in rest.split('/') {
        let entries: Result<Vec<Scalar>, String> =
            row.split_whitespace().map(|e| parse_scalar(e, line)).collect();
        let entries = entries?;
        if entries.is_empty() {
            return Err(err(line, "empty Gram matrix row"));
        }
        rows.push(entries);
    }
    if rows.iter().any(|r| r.len() != rows.len()) {
        return Err(err(line, "Gram matrix is not square"));
    }
    Ok(rows)
}

pub fn parse(text: &str) -> Result<AlgebraDescription, String> {
    let mut name: Option<String> = None;
    let mut top_degree: Option<usize> = None;
    let mut basis: Vec<(String, usize)> = Vec::new();
    let mut unit: Option<String> = None;
    let mut differential: Vec<(String, Terms)> = Vec::new();
    let mut products: Vec<(String, String, Terms)> = Vec::new();
    let mut integrate: Vec<(String, Scalar)> = Vec::new();
    let mut metric: Option<Vec<(usize, Vec<Vec<Scalar>>)>> = None;
    let mut hodge: Option<Vec<(String, Terms)>> = None;
    let mut section: Option<String> = None;

    for (i, raw) in text.lines().enumerate() {
        let lno = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(sec) = line.strip_prefix('[') {
            let sec = sec
                .strip_suffix(']')
                .ok_or_else(|| err(lno, "unterminated section header"))?
                .trim()
                .to_string();
            match sec.as_str() {
                "basis" | "unit" | "differential" | "product" | "integrate" => {}
                "metric" => metric.get_or_insert_with(Vec::new).clear(),
                "hodge" => hodge.get_or_insert_with(Vec::new).clear(),
                other => return Err(err(lno, format!("unknown section '[{other}]'"))),
            }
            section = Some(sec);
            continue;
        }
        match section.as_deref() {
            None => {
                let (key, value) = line
                    .split_once(':')
                    .ok_or_else(|| err(lno, "expected 'key: value' before sections"))?;
                match key.trim() {
                    "algebra" => name = Some(value.trim().to_string()),
                    "top_degree" => {
                        top_degree = Some(
                            value
                                .trim()
                                .parse()
                                .map_err(|_| err(lno, "top_degree must be a natural number"))?,
                        )
                    }
                    other => return Err(err(lno, format!("unknown header key '{other}'"))),
                }
            }
            Some("basis") => {
                let (n, d) = line
                    .split_once(':')
                    .ok_or_else(|| err(lno, "expected 'name: degree'"))?;
                let n = n.trim().to_string();
                if basis.iter().any(|(b, _)| *b == n) {
                    return Err(err(lno, format!("duplicate basis name '{n}'")));
                }
                let d: usize =
                    d.trim().parse().map_err(|_| err(lno, "degree must be a natural number"))?;
                basis.push((n, d));
            }
            Some("unit") => {
                if unit.is_some() {
                    return Err(err(lno, "duplicate unit declaration"));
                }
                unit = Some(line.to_string());
            }
            Some("differential") => {
                let (src, terms) = line
                    .split_once(':')
                    .ok_or_else(|| err(lno, "expected 'source: terms'"))?;
                let src = src.trim().to_string();
                if differential.iter().any(|(s, _)| *s == src) {
                    return Err(err(lno, format!("duplicate differential entry for '{src}'")));
                }
                differential.push((src, parse_terms(terms, lno)?));
            }
            Some("product") => {
                let (pair, terms) = line
                    .split_once(':')
                    .ok_or_else(|| err(lno, "expected 'a * b: terms'"))?;
                let (a, b) = pair
                    .split_once('*')
                    .ok_or_else(|| err(lno, "expected 'a * b' on the left"))?;
                let (a, b) = (a.trim().to_string(), b.trim().to_string());
                if products
                    .iter()
                    .any(|(x, y, _)| (*x == a && *y == b) || (*x == b && *y == a))
                {
                    return Err(err(
                        lno,
                        format!("product ({a}, {b}) already given (directly or by commutativity)"),
                    ));
                }
                products.push((a, b, parse_terms(terms, lno)?));
            }
            Some("integrate") => {
                let (n, v) = line
                    .split_once(':')
                    .ok_or_else(|| err(lno, "expected 'name: rational'"))?;
                let n = n.trim().to_string();
                if integrate.iter().any(|(m, _)| *m == n) {
                    return Err(err(lno, format!("duplicate integration entry for '{n}'")));
                }
                integrate.push((n, parse_scalar(v, lno)?));
            }
            Some("metric") => {
                let rest = line
                    .strip_prefix("degree")
                    .ok_or_else(|| err(lno, "expected 'degree k: rows'"))?;
                let (k, rows) = rest
                    .split_once(':')
                    .ok_or_else(|| err(lno, "expected 'degree k: rows'"))?;
                let k: usize =
                    k.trim().parse().map_err(|_| err(lno, "degree must be a natural number"))?;
                let m = metric.as_mut().expect("inside [metric]");
                if m.iter().any(|(d, _)| *d == k) {
                    return Err(err(lno, format!("duplicate metric block for degree {k}")));
                }
                m.push((k, parse_metric_line(rows, lno)?));
            }
            Some("hodge") => {
                let (src, terms) = line
                    .split_once(':')
                    .ok_or_else(|| err(lno, "expected 'source: terms'"))?;
                let src = src.trim().to_string();
                let h = hodge.as_mut().expect("inside [hodge]");
                if h.iter().any(|(s, _)| *s == src) {
                    return Err(err(lno, format!("duplicate homotopy entry for '{src}'")));
                }
                h.push((src, parse_terms(terms, lno)?));
            }
            Some(_) => unreachable!(),
        }
    }

    let name = name.ok_or("missing 'algebra:' header")?;
    let top_degree = top_degree.ok_or("missing 'top_degree:' header")?;
    if basis.is_empty() {
        return Err("no [basis] section".into());
    }
    let declared = |n: &str| basis.iter().any(|(b, _)| b == n);
    let check_terms = |what: &str, terms: &Terms| -> Result<(), String> {
        for (_, t) in terms {
            if !declared(t) {
                return Err(format!("{what} references undeclared basis name '{t}'"));
            }
        }
        Ok(())
    };
    let unit = match unit {
        Some(u) => {
            if !declared(&u) {
                return Err(format!("unit references undeclared basis name '{u}'"));
            }
            u
        }
        None => basis
            .iter()
            .find(|(_, d)| *d == 0)
            .map(|(n, _)| n.clone())
            .ok_or("no degree-0 basis vector for the unit")?,
    };
    for (s, terms) in &differential {
        if !declared(s) {
            return Err(format!("differential source '{s}' is undeclared"));
        }
        check_terms("differential", terms)?;
    }
    for (a, b, terms) in &products {
        for n in [a, b] {
            if !declared(n) {
                return Err(format!("product references undeclared basis name '{n}'"));
            }
        }
        check_terms("product", terms)?;
    }
    for (n, _) in &integrate {
        if !declared(n) {
            return Err(format!("integration entry references undeclared basis name '{n}'"));
        }
    }
    if let Some(h) = &hodge {
        for (s, terms) in h {
            if !declared(s) {
                return Err(format!("homotopy source '{s}' is undeclared"));
            }
            check_terms("homotopy", terms)?;
        }
    }

    // Normalize products to the canonical half (first factor not after the
    // second in declaration order), folding in the Koszul sign.
    let index = |n: &str| basis.iter().position(|(b, _)| b == n).unwrap();
    let degree = |n: &str| basis[index(n)].1;
    let mut canonical: Vec<(String, String, Terms)> = Vec::new();
    for (a, b, terms) in products {
        if index(&a) <= index(&b) {
            canonical.push((a, b, terms));
        } else {
            let sign = sign_pow((degree(&a) * degree(&b)) as i64);
            let terms = terms.into_iter().map(|(c, t)| (c * &sign, t)).collect();
            canonical.push((b, a, terms));
        }
    }
    canonical.sort_by_key(|(a, b, _)| (index(a), index(b)));
    let mut differential = differential;
    differential.sort_by_key(|(s, _)| index(s));
    let mut integrate = integrate;
    integrate.sort_by_key(|(n, _)| index(n));
    if let Some(m) = &mut metric {
        m.sort_by_key(|(d, _)| *d);
    }
    if let Some(h) = &mut hodge {
        h.sort_by_key(|(s, _)| index(s));
    }

    Ok(AlgebraDescription {
        name,
        top_degree,
        basis,
        unit,
        differential,
        products: canonical,
        integrate,
        metric,
        hodge,
    })
}

/// Canonical normal form; `emit(parse(emit(d))) == emit(d)` byte-for-byte.
pub fn emit(d: &AlgebraDescription) -> String {
    let mut out = String::new();
    writeln!(out, "algebra: {}", d.name).unwrap();
    writeln!(out, "top_degree: {}", d.top_degree).unwrap();
    writeln!(out).unwrap();
    writeln!(out, "[basis]").unwrap();
    for (n, deg) in &d.basis {
        writeln!(out, "{n}: {deg}").unwrap();
    }
    writeln!(out).unwrap();
    writeln!(out, "[unit]").unwrap();
    writeln!(out, "{}", d.unit).unwrap();
    if !d.differential.is_empty() {
        writeln!(out).unwrap();
        writeln!(out, "[differential]").unwrap();
        for (s, terms) in &d.differential {
            writeln!(out, "{s}: {}", fmt_terms(terms)).unwrap();
        }
    }
    if !d.products.is_empty() {
        writeln!(out).unwrap();
        writeln!(out, "[product]").unwrap();
        for (a, b, terms) in &d.products {
            writeln!(out, "{a} * {b}: {}", fmt_terms(terms)).unwrap();
        }
    }
    if !d.integrate.is_empty() {
        writeln!(out).unwrap();
        writeln!(out, "[integrate]").unwrap();
        for (n, v) in &d.integrate {
            writeln!(out, "{n}: {v}").unwrap();
        }
    }
    if let Some(m) = &d.metric {
        writeln!(out).unwrap();
        writeln!(out, "[metric]").unwrap();
        for (k, rows) in m {
            let body = rows
                .iter()
                .map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "))
                .collect::<Vec<_>>()
                .join(" / ");
            writeln!(out, "degree {k}: {body}").unwrap();
        }
    }
    if let Some(h) = &d.hodge {
        writeln!(out).unwrap();
        writeln!(out, "[hodge]").unwrap();
        for (s, terms) in h {
            writeln!(out, "{s}: {}", fmt_terms(terms)).unwrap();
        }
    }
    out
}

/// A loaded description: the algebra plus whatever homotopy data the file
/// carried.
pub struct LoadedAlgebra {
    pub algebra: Pdgca,
    pub metric: Option<Vec<Mat>>,
    pub dminus: Option<GradedLinearMap>,
}

pub fn load(d: &AlgebraDescription) -> Result<LoadedAlgebra, String> {
    for (n, deg) in &d.basis {
        if *deg > d.top_degree {
            return Err(format!("basis vector '{n}' lies above the top degree"));
        }
    }
    let mut builder = PdgcaBuilder::new(&d.name, d.top_degree);
    for (n, deg) in &d.basis {
        builder = builder.basis(n, *deg);
    }
    builder = builder.unit(&d.unit);
    let degree_of = |n: &str| d.basis.iter().find(|(b, _)| b == n).map(|(_, deg)| *deg);
    for (s, terms) in &d.differential {
        let src = degree_of(s).unwrap();
        for (_, t) in terms {
            if degree_of(t).unwrap() != src + 1 {
                return Err(format!("differential entry {s} -> {t} does not raise degree by one"));
            }
        }
        let refs: Vec<(&str, Scalar)> =
            terms.iter().map(|(c, t)| (t.as_str(), c.clone())).collect();
        builder = builder.d(s, &refs);
    }
    for (a, b, terms) in &d.products {
        let expected = degree_of(a).unwrap() + degree_of(b).unwrap();
        for (_, t) in terms {
            if degree_of(t).unwrap() != expected {
                return Err(format!("product entry {a} * {b} -> {t} has the wrong degree"));
            }
        }
        let refs: Vec<(&str, Scalar)> =
            terms.iter().map(|(c, t)| (t.as_str(), c.clone())).collect();
        builder = builder.product(a, b, &refs);
    }
    for (n, v) in &d.integrate {
        let deg = d.basis.iter().find(|(b, _)| b == n).map(|(_, deg)| *deg).unwrap();
        if deg != d.top_degree {
            return Err(format!("integration entry '{n}' is not in the top degree"));
        }
        builder = builder.integral(n, v.clone());
    }
    let algebra = builder.build();

    let metric = match &d.metric {
        Some(entries) => Some(metric_matrices(entries, &algebra)?),
        None => None,
    };
    let dminus = match &d.hodge {
        Some(entries) => {
            let mut map =
                GradedLinearMap::zero(algebra.space.dims(), algebra.space.dims(), -1);
            for (s, terms) in entries {
                let src = algebra.space.find(s).unwrap();
                for (c, t) in terms {
                    let tgt = algebra.space.find(t).unwrap();
                    if tgt.0 + 1 != src.0 {
                        return Err(format!(
                            "homotopy entry {s} -> {t} does not lower degree by one"
                        ));
                    }
                    map.set_entry(src, tgt, c.clone());
                }
            }
            Some(map)
        }
        None => None,
    };
    Ok(LoadedAlgebra { algebra, metric, dminus })
}

/// Completes partial per-degree Gram data to one positive-size matrix per
/// degree, identity where unspecified.
pub fn metric_matrices(
    entries: &[(usize, Vec<Vec<Scalar>>)],
    algebra: &Pdgca,
) -> Result<Vec<Mat>, String> {
    let n = algebra.top_degree();
    let mut mats: Vec<Mat> = (0..=n).map(|k| Mat::identity(algebra.space.dim(k as i64))).collect();
    for (k, rows) in entries {
        if *k > n {
            return Err(format!("metric block for degree {k} above the top degree"));
        }
        let dim = algebra.space.dim(*k as i64);
        if rows.len() != dim {
            return Err(format!(
                "metric block for degree {k} has size {}, expected {dim}",
                rows.len()
            ));
        }
        let mut m = Mat::zeros(dim, dim);
        for (i, row) in rows.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                m[(i, j)] = c.clone();
            }
        }
        mats[*k] = m;
    }
    Ok(mats)
}

/// Standalone metric file: a bare `[metric]` section.
pub fn parse_metric_file(text: &str) -> Result<Vec<(usize, Vec<Vec<Scalar>>)>, String> {
    let mut entries = Vec::new();
    let mut in_section = false;
    for (i, raw) in text.lines().enumerate() {
        let lno = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if line == "[metric]" {
            in_section = true;
            continue;
        }
        if !in_section {
            return Err(err(lno, "expected a [metric] section"));
        }
        let rest =
            line.strip_prefix("degree").ok_or_else(|| err(lno, "expected 'degree k: rows'"))?;
        let (k, rows) =
            rest.split_once(':').ok_or_else(|| err(lno, "expected 'degree k: rows'"))?;
        let k: usize =
            k.trim().parse().map_err(|_| err(lno, "degree must be a natural number"))?;
        if entries.iter().any(|(d, _)| *d == k) {
            return Err(err(lno, format!("duplicate metric block for degree {k}")));
        }
        entries.push((k, parse_metric_line(rows, lno)?));
    }
    if !in_section {
        return Err("expected a [metric] section".into());
    }
    entries.sort_by_key(|(d, _)| *d);
    Ok(entries)
}

/// Canonical description of an in-memory algebra (no metric/homotopy blocks).
pub fn from_pdgca(a: &Pdgca) -> AlgebraDescription {
    let space = &a.space;
    let name_of = |r| space.name(r).to_string();
    let basis: Vec<(String, usize)> =
        space.all_refs().into_iter().map(|r| (name_of(r), r.0)).collect();
    let element_terms = |e: &crate::graded::Element| -> Terms {
        e.coords.iter().map(|(r, c)| (c.clone(), name_of(*r))).collect()
    };
    let mut differential = Vec::new();
    for r in space.all_refs() {
        let de = a.d.apply(&crate::graded::Element::basis(r));
        if !de.is_zero() {
            differential.push((name_of(r), element_terms(&de)));
        }
    }
    let mut products = Vec::new();
    for x in space.all_refs() {
        for y in space.all_refs() {
            if x > y || x == a.unit || y == a.unit {
                continue;
            }
            let v = a.mul.get(&[x, y]);
            if !v.is_zero() {
                products.push((name_of(x), name_of(y), element_terms(&v)));
            }
        }
    }
    let n = a.top_degree();
    let integrate = space
        .basis_refs(n as i64)
        .into_iter()
        .filter(|r| !a.integrate[r.1].is_zero())
        .map(|r| (name_of(r), a.integrate[r.1].clone()))
        .collect();
    AlgebraDescription {
        name: a.name.clone(),
        top_degree: n,
        basis,
        unit: name_of(a.unit),
        differential,
        products,
        integrate,
        metric: None,
        hodge: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pdgca::{cohomology, fixtures, validate_pdgca};

    fn corpus_fixtures() -> Vec<Pdgca> {
        vec![
            fixtures::sphere3(),
            fixtures::cp2(),
            fixtures::cp3(),
            fixtures::s2s3(),
            fixtures::dim7(),
            fixtures::dim8(),
            fixtures::dim9(),
            fixtures::dim11(),
            fixtures::s2s2s3(),
        ]
    }

    #[test]
    fn round_trip_is_byte_stable() {
        for a in corpus_fixtures() {
            let d = from_pdgca(&a);
            let text = emit(&d);
            let reparsed = parse(&text).unwrap();
            assert_eq!(reparsed, d, "{}", a.name);
            assert_eq!(emit(&reparsed), text, "{}", a.name);
        }
    }

    #[test]
    fn loaded_algebras_match_fixtures() {
        for a in corpus_fixtures() {
            let loaded = load(&from_pdgca(&a)).unwrap();
            assert_eq!(loaded.algebra.space, a.space);
            assert_eq!(loaded.algebra.unit, a.unit);
            assert_eq!(loaded.algebra.mul, a.mul);
            assert_eq!(loaded.algebra.d, a.d);
            assert_eq!(loaded.algebra.integrate, a.integrate);
            assert!(validate_pdgca(&loaded.algebra).is_valid());
        }
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = "algebra: t\ntop_degree: 3\n\n[basis]\n1: 0\na: 3\n\n[product]\na * q: 1*a\n";
        let e = parse(bad).unwrap_err();
        assert!(e.contains("undeclared basis name 'q'"), "{e}");
        let bad_coeff = "algebra: t\ntop_degree: 3\n\n[basis]\n1: 0\n\n[integrate]\n1: x/y\n";
        let e = parse(bad_coeff).unwrap_err();
        assert!(e.starts_with("line 8:"), "{e}");
        let dup = "algebra: t\ntop_degree: 3\n\n[basis]\na: 1\na: 2\n";
        assert!(parse(dup).unwrap_err().contains("duplicate basis name"));
        let both_halves =
            "algebra: t\ntop_degree: 4\n\n[basis]\n1: 0\na: 2\nb: 2\nc: 4\n\n[product]\na * b: 1*c\nb * a: 1*c\n";
        assert!(parse(both_halves).unwrap_err().contains("already given"));
    }

    #[test]
    fn non_canonical_product_order_is_normalized() {
        // Giving b * a for odd-degree a, b folds the Koszul sign into the
        // canonical half.
        let text = "algebra: t\ntop_degree: 6\n\n[basis]\n1: 0\na: 3\nb: 3\nc: 6\n\n[product]\nb * a: 1*c\n\n[integrate]\nc: 1";
        let d = parse(text).unwrap();
        assert_eq!(d.products.len(), 1);
        let (x, y, terms) = &d.products[0];
        assert_eq!((x.as_str(), y.as_str()), ("a", "b"));
        assert_eq!(terms[0].0, crate::scalar::int(-1));
    }

    #[test]
    fn metric_and_hodge_blocks_load() {
        let a = fixtures::dim11();
        let mut d = from_pdgca(&a);
        d.metric = Some(vec![(5, vec![vec![crate::scalar::int(2)]])]);
        d.hodge = Some(vec![("xy".into(), vec![(crate::scalar::int(1), "beta".into())])]);
        let text = emit(&d);
        let loaded = load(&parse(&text).unwrap()).unwrap();
        let mats = loaded.metric.unwrap();
        assert_eq!(mats[5][(0, 0)], crate::scalar::int(2));
        assert_eq!(mats[3], Mat::identity(2));
        let dm = loaded.dminus.unwrap();
        let xy = a.space.find("xy").unwrap();
        let beta = a.space.find("beta").unwrap();
        assert_eq!(
            dm.apply(&crate::graded::Element::basis(xy)),
            crate::graded::Element::basis(beta)
        );
        // The explicit block is exactly the valid homotopy for this algebra.
        assert!(crate::hodge::validate_hodge(&a, &dm).is_valid());
    }

    #[test]
    fn standalone_metric_files_parse() {
        let text = "# second metric\n[metric]\ndegree 5: 2\ndegree 3: 2 1 / 1 2\n";
        let entries = parse_metric_file(text).unwrap();
        assert_eq!(entries.len(), 2);
        assert_eq!(entries[0].0, 3);
        assert!(parse_metric_file("degree 5: 2\n").is_err());
    }

    #[test]
    fn comments_and_whitespace_are_ignored() {
        let a = fixtures::cp2();
        let canonical = emit(&from_pdgca(&a));
        let noisy = canonical
            .lines()
            .map(|l| format!("  {l}   # trailing note"))
            .collect::<Vec<_>>()
            .join("\n");
        assert_eq!(parse(&noisy).unwrap(), from_pdgca(&a));
    }

    /// Writes the canonical corpus files; run explicitly after fixture edits:
    /// `cargo test -p formality-core regenerate_corpus -- --ignored`.
    #[test]
    #[ignore]
    fn regenerate_corpus() {
        let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus");
        std::fs::create_dir_all(dir).unwrap();
        for a in corpus_fixtures() {
            let path = format!("{dir}/{}.alg", a.name);
            std::fs::write(&path, emit(&from_pdgca(&a))).unwrap();
        }
        std::fs::write(
            format!("{dir}/dim11-scaled.metric"),
            "# Alternative inner product for the 11-dimensional example:\n# rescales the degree-5 line, mixes the two degree-3 directions.\n[metric]\ndegree 3: 2 1 / 1 2\ndegree 5: 2\n",
        )
        .unwrap();
    }

    #[test]
    fn corpus_files_are_canonical_and_current() {
        let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus");
        for a in corpus_fixtures() {
            let path = format!("{dir}/{}.alg", a.name);
            let on_disk = std::fs::read_to_string(&path)
                .unwrap_or_else(|_| panic!("missing corpus file {path}; run regenerate_corpus"));
            assert_eq!(
                on_disk,
                emit(&from_pdgca(&a)),
                "{path} is stale; run regenerate_corpus"
            );
            let loaded = load(&parse(&on_disk).unwrap()).unwrap();
            assert!(validate_pdgca(&loaded.algebra).is_valid());
            assert!(cohomology(&loaded.algebra).is_ok());
        }
    }
}
