//! Classification and witness reports.
//!
//! Floats are rounded to 12 decimals before they enter a report, so the
//! JSON text is stable across platforms and parses back to an equal value.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::classification::{classify, Class};
use crate::ellipsoid::{semiaxes, Containment};
use crate::pauli::TwoQubitOperator;
use crate::witness::{analyze_witness, FinerVerdict, WitnessProperties};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportInvariants {
    pub c: [f64; 3],
    pub semiaxes: [f64; 3],
    pub u: f64,
    pub q: f64,
    pub r: f64,
    pub chi: i8,
    #[serde(rename = "det_B")]
    pub det_b: f64,
    #[serde(rename = "det_B_TB")]
    pub det_b_tb: f64,
    /// `None` when no bounded ellipsoid exists.
    pub max_radius: Option<f64>,
    pub containment: Containment,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportWitness {
    pub is_witness: bool,
    pub optimal: bool,
    pub weakly_optimal: bool,
    pub in_ew4: bool,
    pub min_eigenvalue: f64,
}

/// Which computation decided each reported field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    pub class: String,
    pub cross_check: String,
    pub block_positivity: String,
    pub optimal: String,
    pub weakly_optimal: String,
    pub in_ew4: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassificationReport {
    pub label: Option<String>,
    pub class: Class,
    pub marginal: bool,
    pub summary: String,
    pub invariants: ReportInvariants,
    pub witness: ReportWitness,
    pub provenance: Provenance,
}

pub fn round12(x: f64) -> f64 {
    let y = (x * 1e12).round() / 1e12;
    if y == 0.0 {
        0.0
    } else {
        y
    }
}

fn round3(v: [f64; 3]) -> [f64; 3] {
    v.map(round12)
}

pub fn summary(class: Class, w: &WitnessProperties) -> String {
    match class {
        Class::NotBlockPositive => "not block positive".to_string(),
        Class::A => format!("{class}, separable state"),
        Class::B => format!("{class}, entangled state"),
        Class::C | Class::D => {
            let kind = if w.optimal {
                "optimal witness"
            } else if w.weakly_optimal {
                "weakly optimal witness"
            } else {
                "witness"
            };
            let ew4 = if w.in_ew4 { " in EW4" } else { "" };
            format!("{class}, {kind}{ew4}")
        }
    }
}

impl ClassificationReport {
    pub fn build(label: Option<String>, op: &TwoQubitOperator) -> Result<Self, CliError> {
        let cls = classify(op).map_err(|e| CliError::validation(e.to_string()))?;
        let w = analyze_witness(op);
        let class = cls.by_determinants.class;
        let e = &cls.ellipsoid;
        let t = &cls.invariants.terms;
        let axes = semiaxes(e);

        let agreement = if cls.routes_agree() {
            "agrees"
        } else {
            "disagrees"
        };
        let provenance = Provenance {
            class: "signs of det B and det B^T_B".into(),
            cross_check: format!(
                "ellipsoid inequalities give {} ({agreement})",
                cls.by_ellipsoid.class
            ),
            block_positivity: "largest distance of the ellipsoid from the origin".into(),
            optimal: "ellipsoid is the Bloch sphere with chi = +1".into(),
            weakly_optimal: "ellipsoid touches the Bloch sphere".into(),
            in_ew4: "W = W^T = W^T_B".into(),
        };

        Ok(Self {
            label,
            class,
            marginal: cls.marginal(),
            summary: summary(class, &w),
            invariants: ReportInvariants {
                c: round3([e.c.x, e.c.y, e.c.z]),
                semiaxes: round3([axes[0].length, axes[1].length, axes[2].length]),
                u: round12(t.u),
                q: round12(t.q),
                r: round12(t.r),
                chi: e.chi,
                det_b: round12(cls.invariants.det_b),
                det_b_tb: round12(cls.invariants.det_b_tb),
                max_radius: cls.max_radius.is_finite().then(|| round12(cls.max_radius)),
                containment: cls.containment,
            },
            witness: ReportWitness {
                is_witness: w.is_witness,
                optimal: w.optimal,
                weakly_optimal: w.weakly_optimal,
                in_ew4: w.in_ew4,
                min_eigenvalue: round12(w.negative_eigenvalue),
            },
            provenance,
        })
    }

    pub fn to_table(&self) -> String {
        let inv = &self.invariants;
        let v3 = |v: [f64; 3]| format!("({}, {}, {})", v[0], v[1], v[2]);
        let mut s = String::new();
        let mut row = |k: &str, v: String| {
            let _ = writeln!(s, "{k:<16}{v}");
        };
        row("label", self.label.clone().unwrap_or_else(|| "-".into()));
        row("class", self.summary.clone());
        row("marginal", if self.marginal { "yes" } else { "no" }.into());
        row("centre", v3(inv.c));
        row("semiaxes", v3(inv.semiaxes));
        row("chirality", format!("{:+}", inv.chi));
        row("u q r", format!("{} {} {}", inv.u, inv.q, inv.r));
        row("det B", inv.det_b.to_string());
        row("det B^T_B", inv.det_b_tb.to_string());
        row(
            "max radius",
            match inv.max_radius {
                Some(r) => format!("{r} ({:?})", inv.containment),
                None => "unbounded".into(),
            },
        );
        row("min eigenvalue", self.witness.min_eigenvalue.to_string());
        row("cross-check", self.provenance.cross_check.clone());
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FinerReport {
    pub against: String,
    /// `finer`, `not_finer` or `inconclusive`.
    pub verdict: String,
    /// Weight in `other = s * this + (1 - s) P` when certified.
    pub s: Option<f64>,
    /// Expectations of a state detected by the other witness only.
    pub counterexample: Option<[f64; 2]>,
}

impl FinerReport {
    pub fn new(
        against: String,
        this: &TwoQubitOperator,
        other: &TwoQubitOperator,
        v: &FinerVerdict,
    ) -> Self {
        let (verdict, s, counterexample) = match v {
            FinerVerdict::Finer { s } => ("finer", Some(round12(*s)), None),
            FinerVerdict::CounterexampleState(rho) => (
                "not_finer",
                None,
                Some([
                    round12(rho.trace_product(this)),
                    round12(rho.trace_product(other)),
                ]),
            ),
            FinerVerdict::Inconclusive => ("inconclusive", None, None),
        };
        Self {
            against,
            verdict: verdict.into(),
            s,
            counterexample,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub label: Option<String>,
    pub class: Class,
    pub summary: String,
    pub witness: ReportWitness,
    pub finer: Option<FinerReport>,
}

impl WitnessReport {
    pub fn build(label: Option<String>, op: &TwoQubitOperator, finer: Option<FinerReport>) -> Self {
        let w = analyze_witness(op);
        Self {
            label,
            class: w.class_label.class,
            summary: summary(w.class_label.class, &w),
            witness: ReportWitness {
                is_witness: w.is_witness,
                optimal: w.optimal,
                weakly_optimal: w.weakly_optimal,
                in_ew4: w.in_ew4,
                min_eigenvalue: round12(w.negative_eigenvalue),
            },
            finer,
        }
    }

    pub fn to_table(&self) -> String {
        let mut s = format!(
            "{:<16}{}\n{:<16}{}\n{:<16}{}\n",
            "label",
            self.label.as_deref().unwrap_or("-"),
            "class",
            self.summary,
            "min eigenvalue",
            self.witness.min_eigenvalue
        );
        if let Some(f) = &self.finer {
            let _ = writeln!(s, "{:<16}{} vs {}", "finer", f.verdict, f.against);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::{flip_witness, wp_witness};

    #[test]
    fn rounding_drops_noise_and_signed_zero() {
        assert_eq!(round12(-1e-17), 0.0);
        assert!(round12(-1e-17).is_sign_positive());
        assert_eq!(round12(0.6000000000000001), 0.6);
    }

    #[test]
    fn named_example_summaries() {
        let r = ClassificationReport::build(Some("flip".into()), &flip_witness()).unwrap();
        assert_eq!(r.summary, "Class C, optimal witness");
        let r = ClassificationReport::build(None, &wp_witness(0.2)).unwrap();
        assert_eq!(r.summary, "Class D, weakly optimal witness");
        assert_eq!(r.invariants.semiaxes, [1.0, 1.0, 0.6]);
    }

    #[test]
    fn json_round_trip() {
        let r = ClassificationReport::build(Some("wp".into()), &wp_witness(0.37)).unwrap();
        let text = serde_json::to_string_pretty(&r).unwrap();
        let back: ClassificationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(serde_json::to_string_pretty(&back).unwrap(), text);
    }
}
