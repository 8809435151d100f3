//! Theorem certificates: hypothesis arithmetic plus exact verification of
//! the claimed conclusions on a concrete algebra.
//!
//! A certificate distinguishes three outcomes: `Certified` (hypotheses hold
//! and every conclusion verified), `NotApplicable` (some hypothesis fails —
//! nothing is claimed), and `Failed` (hypotheses hold but a conclusion does
//! not; this would falsify the theorem and always aborts with a nonzero
//! exit).

use crate::bianchi_massey::{bianchi_massey, bm_equivalence, verify_harr_to_sym};
use crate::cinfty::{check_morphism, CInftyMorphism};
use crate::harrison::{solve_formality_obstruction, HochschildCochain};
use crate::hodge::{qshape_check, HodgeHomotopy};
use crate::multilinear::MultilinearMap;
use crate::pdgca::{cohomology, connectivity, CohomologyRing};
use crate::transfer::{
    a2_hypothesis, transfer, transfer_to_cohomology, zhou_hypothesis, MinimalCInftyStructure,
};
use serde::Serialize;
use std::fmt;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremId {
    A2,
    Zhou,
    Miller,
    Cavalcanti,
    Qshape,
    HarrBm,
    Canonicity,
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TheoremId::A2 => "A2",
            TheoremId::Zhou => "zhou",
            TheoremId::Miller => "miller",
            TheoremId::Cavalcanti => "cavalcanti",
            TheoremId::Qshape => "qshape",
            TheoremId::HarrBm => "harr-bm",
            TheoremId::Canonicity => "canonicity",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for TheoremId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "A2" | "a2" => Ok(TheoremId::A2),
            "zhou" => Ok(TheoremId::Zhou),
            "miller" => Ok(TheoremId::Miller),
            "cavalcanti" => Ok(TheoremId::Cavalcanti),
            "qshape" => Ok(TheoremId::Qshape),
            "harr-bm" => Ok(TheoremId::HarrBm),
            "canonicity" => Ok(TheoremId::Canonicity),
            other => Err(format!(
                "unknown theorem id '{other}' (expected A2, zhou, miller, cavalcanti, qshape, harr-bm, or canonicity)"
            )),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HypothesisCheck {
    pub description: String,
    pub satisfied: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Conclusion {
    pub assertion: String,
    pub passed: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Certified,
    NotApplicable,
    Failed,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Certified => "certified",
            Verdict::NotApplicable => "not applicable",
            Verdict::Failed => "FAILED",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub algebra: String,
    pub theorem: TheoremId,
    pub r: usize,
    pub n: usize,
    pub ell: Option<usize>,
    pub b_r: usize,
    pub hypotheses: Vec<HypothesisCheck>,
    pub conclusions: Vec<Conclusion>,
    pub environment: String,
    pub verdict: Verdict,
}

impl Certificate {
    fn finish(mut self) -> Certificate {
        self.verdict = if self.hypotheses.iter().any(|h| !h.satisfied) {
            Verdict::NotApplicable
        } else if self.conclusions.iter().any(|c| !c.passed) {
            Verdict::Failed
        } else {
            Verdict::Certified
        };
        self
    }

    pub fn render_text(&self) -> String {
        use std::fmt::Write as _;
        let mut out = String::new();
        writeln!(out, "certificate: theorem {} on {}", self.theorem, self.algebra).unwrap();
        writeln!(
            out,
            "parameters: r={} n={} b_r={}{}",
            self.r,
            self.n,
            self.b_r,
            self.ell.map(|l| format!(" ell={l}")).unwrap_or_default()
        )
        .unwrap();
        for h in &self.hypotheses {
            writeln!(
                out,
                "hypothesis: {} ... {}",
                h.description,
                if h.satisfied { "holds" } else { "fails" }
            )
            .unwrap();
        }
        if self.verdict == Verdict::NotApplicable {
            writeln!(out, "verdict: not applicable (no conclusion claimed)").unwrap();
            return out;
        }
        for c in &self.conclusions {
            writeln!(
                out,
                "conclusion: {} ... {}",
                c.assertion,
                if c.passed { "verified" } else { "FAILED" }
            )
            .unwrap();
        }
        writeln!(out, "environment: {}", self.environment).unwrap();
        writeln!(out, "verdict: {}", self.verdict).unwrap();
        out
    }

    pub fn render_machine(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }
}

/// Transferred structure on the cohomology ring plus the pieces most
/// verifications need.
pub struct Analysis {
    pub ring: CohomologyRing,
    pub structure: MinimalCInftyStructure,
    pub r: usize,
    pub n: usize,
    pub b_r: usize,
}

pub fn analyze(h: &HodgeHomotopy, max_arity: usize) -> Result<Analysis, String> {
    let ring = cohomology(&h.base)
        .map_err(|rep| format!("algebra is not a valid input: {}", rep.violations.join("; ")))?;
    let r = connectivity(&ring)?;
    let n = h.base.top_degree();
    let b_r = ring.betti[r];
    let s = transfer(h, max_arity);
    let structure = transfer_to_cohomology(h, &s, &ring);
    Ok(Analysis { ring, structure, r, n, b_r })
}

fn vanishing_conclusions(
    s: &MinimalCInftyStructure,
    from_arity: usize,
    conclusions: &mut Vec<Conclusion>,
) {
    for k in from_arity..=s.max_arity {
        let zero = s.mults.get(&k).map(|m| m.is_zero()).unwrap_or(true);
        conclusions.push(Conclusion {
            assertion: format!("m_{k} = 0 on all basis tuples"),
            passed: zero,
        });
    }
}

/// Runs the hypothesis arithmetic for one theorem and verifies its
/// conclusions exactly. `second` is required for `canonicity` and holds the
/// structure transferred from another homotopy on the same algebra.
pub fn certify(
    h: &HodgeHomotopy,
    theorem: TheoremId,
    ell: Option<usize>,
    max_arity: usize,
    second: Option<&HodgeHomotopy>,
) -> Result<Certificate, String> {
    let a = analyze(h, max_arity)?;
    let mut cert = Certificate {
        algebra: h.base.name.clone(),
        theorem,
        r: a.r,
        n: a.n,
        ell,
        b_r: a.b_r,
        hypotheses: Vec::new(),
        conclusions: Vec::new(),
        environment: format!("format={FORMAT_VERSION} max_arity={max_arity}"),
        verdict: Verdict::Certified,
    };
    let hyp = |desc: String, ok: bool| HypothesisCheck { description: desc, satisfied: ok };
    match theorem {
        TheoremId::A2 => {
            let ell = ell.ok_or("theorem A2 requires --ell")?;
            cert.hypotheses.push(hyp(format!("connectivity r = {} >= 2", a.r), a.r >= 2));
            cert.hypotheses.push(hyp(format!("ell = {ell} >= 4"), ell >= 4));
            cert.hypotheses.push(hyp(
                format!("n = {} <= ell(r-1)+2 = {}", a.n, ell * (a.r.max(1) - 1) + 2),
                a.r >= 1 && a.n <= ell * (a.r - 1) + 2,
            ));
            if a.r >= 2 && a2_hypothesis(a.r, a.n, ell) {
                if ell - 1 > max_arity {
                    return Err(format!(
                        "conclusion starts at arity {} but max_arity is {max_arity}",
                        ell - 1
                    ));
                }
                vanishing_conclusions(&a.structure, ell - 1, &mut cert.conclusions);
            }
        }
        TheoremId::Zhou => {
            let ell = ell.ok_or("theorem zhou requires --ell")?;
            cert.hypotheses.push(hyp(format!("connectivity r = {} >= 2", a.r), a.r >= 2));
            cert.hypotheses.push(hyp(format!("ell = {ell} >= 4"), ell >= 4));
            cert.hypotheses.push(hyp(
                format!("n = {} <= ell(r-1)+4 = {}", a.n, ell * (a.r.max(1) - 1) + 4),
                a.r >= 1 && a.n <= ell * (a.r - 1) + 4,
            ));
            cert.hypotheses.push(hyp(format!("b_r = {} = 1", a.b_r), a.b_r == 1));
            if a.r >= 2 && zhou_hypothesis(a.r, a.n, ell, a.b_r) {
                if ell - 1 > max_arity {
                    return Err(format!(
                        "conclusion starts at arity {} but max_arity is {max_arity}",
                        ell - 1
                    ));
                }
                vanishing_conclusions(&a.structure, ell - 1, &mut cert.conclusions);
            }
        }
        TheoremId::Miller => {
            cert.hypotheses.push(hyp(format!("connectivity r = {} >= 2", a.r), a.r >= 2));
            cert.hypotheses.push(hyp(
                format!("n = {} <= 4r-2 = {}", a.n, 4 * a.r.max(1) - 2),
                a.r >= 1 && a.n <= 4 * a.r - 2,
            ));
            if cert.hypotheses.iter().all(|h| h.satisfied) {
                vanishing_conclusions(&a.structure, 3, &mut cert.conclusions);
            }
        }
        TheoremId::Cavalcanti => {
            cert.hypotheses.push(hyp(format!("connectivity r = {} >= 2", a.r), a.r >= 2));
            cert.hypotheses.push(hyp(
                format!("n = {} <= 4r = {}", a.n, 4 * a.r.max(1)),
                a.r >= 1 && a.n <= 4 * a.r,
            ));
            cert.hypotheses.push(hyp(format!("b_r = {} = 1", a.b_r), a.b_r == 1));
            if cert.hypotheses.iter().all(|h| h.satisfied) {
                vanishing_conclusions(&a.structure, 3, &mut cert.conclusions);
            }
        }
        TheoremId::Qshape => {
            cert.hypotheses.push(hyp(format!("connectivity r = {} >= 2", a.r), a.r >= 2));
            if a.r >= 2 {
                let report = qshape_check(h, a.r)?;
                cert.conclusions.push(Conclusion {
                    assertion: "degree bands match the small-quotient shape".into(),
                    passed: report.is_valid(),
                });
                for (k, msg) in &report.violations {
                    cert.conclusions.push(Conclusion {
                        assertion: format!("degree {k}: {msg}"),
                        passed: false,
                    });
                }
            }
        }
        TheoremId::HarrBm => {
            let tensor = bianchi_massey(h, &a.ring);
            let mu3 = &a.structure.mults[&3];
            let report = verify_harr_to_sym(&tensor, &a.ring, mu3)?;
            cert.conclusions.push(Conclusion {
                assertion: "four-term identity matches the ternary operation on all triples"
                    .into(),
                passed: report.is_valid(),
            });
            for v in report.violations.iter().take(3) {
                cert.conclusions.push(Conclusion { assertion: v.clone(), passed: false });
            }
            let cochain = HochschildCochain::new(&a.ring, mu3.clone());
            let obstruction = solve_formality_obstruction(&a.ring, &cochain)?;
            let agree = bm_equivalence(&tensor, &a.ring, &obstruction)?;
            cert.conclusions.push(Conclusion {
                assertion: format!(
                    "detectors agree: restriction to the multiplication kernel is {}, obstruction is {}",
                    if tensor.f_is_zero() { "zero" } else { "nonzero" },
                    if obstruction.solvable { "solvable" } else { "unsolvable" }
                ),
                passed: agree,
            });
        }
        TheoremId::Canonicity => {
            let h2 = second.ok_or("theorem canonicity requires a second metric")?;
            if h2.base.space != h.base.space {
                return Err("second homotopy belongs to a different algebra".into());
            }
            let a2 = analyze(h2, max_arity)?;
            let diff = a.structure.mults[&3].sub(&a2.structure.mults[&3]);
            let cochain = HochschildCochain::new(&a.ring, diff);
            let obstruction = solve_formality_obstruction(&a.ring, &cochain)?;
            cert.conclusions.push(Conclusion {
                assertion: "ternary operations differ by an explicit coboundary".into(),
                passed: obstruction.solvable,
            });
            if let Some(witness) = obstruction.witness {
                // Gauge direction: d(phi2) = mu3 - mu3', so (id, phi2) maps
                // the first structure to the second.
                let phi2 = if witness.is_zero() {
                    MultilinearMap::new(2, -1)
                } else {
                    witness.map.clone()
                };
                let f = CInftyMorphism::with_phi2(
                    a.structure.clone(),
                    a2.structure.clone(),
                    phi2,
                );
                let p = max_arity.min(6);
                let report = check_morphism(&f, p);
                cert.conclusions.push(Conclusion {
                    assertion: format!(
                        "identity-linear morphism with the solved quadratic part passes p <= {p}"
                    ),
                    passed: report.is_valid(),
                });
                for v in report.violations.iter().take(3) {
                    cert.conclusions.push(Conclusion { assertion: v.clone(), passed: false });
                }
            }
        }
    }
    Ok(cert.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format;
    use crate::hodge::construct_hodge_from_metric;
    use crate::hodge::fixtures::identity_metric;
    use crate::pdgca::{fixtures, Pdgca};

    fn hodge_of(a: &Pdgca) -> HodgeHomotopy {
        construct_hodge_from_metric(a, &identity_metric(a)).unwrap()
    }

    #[test]
    fn miller_certifies_formal_low_dimensional_algebras() {
        for a in [fixtures::cp3(), fixtures::cp2(), fixtures::sphere3(), fixtures::s2s3()] {
            let cert = certify(&hodge_of(&a), TheoremId::Miller, None, 6, None).unwrap();
            assert_eq!(cert.verdict, Verdict::Certified, "{}: {:?}", a.name, cert);
            assert!(cert.conclusions.iter().all(|c| c.passed));
        }
        // One degree above the bound: nothing is claimed.
        let cert = certify(&hodge_of(&fixtures::dim7()), TheoremId::Miller, None, 6, None).unwrap();
        assert_eq!(cert.verdict, Verdict::NotApplicable);
    }

    #[test]
    fn a2_bound_arithmetic_on_the_nonformal_example() {
        let a = fixtures::dim11();
        let h = hodge_of(&a);
        // r = 3, n = 11 > 4*2+2 = 10: not applicable at ell = 4.
        let c4 = certify(&h, TheoremId::A2, Some(4), 6, None).unwrap();
        assert_eq!(c4.verdict, Verdict::NotApplicable);
        assert!(c4.conclusions.is_empty());
        // ell = 5 applies (11 <= 12) and certifies m_k = 0 for k >= 4.
        let c5 = certify(&h, TheoremId::A2, Some(5), 6, None).unwrap();
        assert_eq!(c5.verdict, Verdict::Certified);
        assert!(c5.conclusions.iter().any(|c| c.assertion.contains("m_4")));
    }

    #[test]
    fn zhou_and_cavalcanti_instances() {
        let d8 = fixtures::dim8();
        let cert = certify(&hodge_of(&d8), TheoremId::Cavalcanti, None, 6, None).unwrap();
        assert_eq!(cert.verdict, Verdict::Certified);
        let cert = certify(&hodge_of(&d8), TheoremId::Zhou, Some(4), 6, None).unwrap();
        assert_eq!(cert.verdict, Verdict::Certified);
        let d9 = fixtures::dim9();
        let cert = certify(&hodge_of(&d9), TheoremId::Zhou, Some(5), 6, None).unwrap();
        assert_eq!(cert.verdict, Verdict::Certified);
        assert!(cert.conclusions.iter().any(|c| c.assertion.contains("m_4")));
        assert!(cert.conclusions.iter().any(|c| c.assertion.contains("m_5")));
    }

    #[test]
    fn harr_bm_certificate_on_formal_and_nonformal() {
        for a in [fixtures::cp2(), fixtures::dim11()] {
            let cert = certify(&hodge_of(&a), TheoremId::HarrBm, None, 3, None).unwrap();
            assert_eq!(cert.verdict, Verdict::Certified, "{}", a.name);
        }
    }

    #[test]
    fn qshape_certificate_on_dim11() {
        let cert =
            certify(&hodge_of(&fixtures::dim11()), TheoremId::Qshape, None, 2, None).unwrap();
        assert_eq!(cert.verdict, Verdict::Certified);
    }

    #[test]
    fn canonicity_with_two_metrics_on_dim11() {
        let a = fixtures::dim11();
        let h1 = hodge_of(&a);
        let entries = format::parse_metric_file(
            &std::fs::read_to_string(concat!(
                env!("CARGO_MANIFEST_DIR"),
                "/../../corpus/dim11-scaled.metric"
            ))
            .unwrap(),
        )
        .unwrap();
        let mats = format::metric_matrices(&entries, &a).unwrap();
        let h2 = construct_hodge_from_metric(&a, &mats).unwrap();
        let cert = certify(&h1, TheoremId::Canonicity, None, 6, Some(&h2)).unwrap();
        assert_eq!(cert.verdict, Verdict::Certified, "{:?}", cert);
        // Mismatched algebras are rejected.
        let other = hodge_of(&fixtures::cp2());
        assert!(certify(&h1, TheoremId::Canonicity, None, 3, Some(&other)).is_err());
    }

    #[test]
    fn rendering_is_deterministic_and_explicit_about_applicability() {
        let cert =
            certify(&hodge_of(&fixtures::dim11()), TheoremId::A2, Some(4), 6, None).unwrap();
        let text = cert.render_text();
        assert!(text.contains("not applicable"));
        assert!(!text.contains("certified"));
        assert_eq!(text, cert.render_text());
        let machine = cert.render_machine();
        assert!(machine.contains("\"verdict\": \"not-applicable\""));
    }

    #[test]
    fn theorem_ids_round_trip() {
        for t in [
            TheoremId::A2,
            TheoremId::Zhou,
            TheoremId::Miller,
            TheoremId::Cavalcanti,
            TheoremId::Qshape,
            TheoremId::HarrBm,
            TheoremId::Canonicity,
        ] {
            assert_eq!(t.to_string().parse::<TheoremId>().unwrap(), t);
        }
        assert!("pentagon".parse::<TheoremId>().is_err());
    }
}
