//! The full per-polynomial analysis, serialized for the command line.

use serde::Serialize;
use serde_json::{json, Value};

use crate::coset::{largest_vanishing_coset, vanishing_cosets};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::lattice::{baseline_bound, coset_bound, degree_reduce, ReductionBranch, ReductionCertificate};
use crate::params::ParamReport;
use crate::tnomial::{TNomial, BRUTEFORCE_LIMIT, GCD_LIMIT};

pub const SCHEMA_VERSION: u32 = 1;
/// Longest coset witness list printed in a report.
pub const WITNESS_LIMIT: usize = 1024;
const VERDICT_SLACK: f64 = 1e-9;

/// Rounds to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

/// Integer for prime fields, coefficient list for extensions.
pub fn element_json(field: &FieldSpec, x: FieldElement) -> Value {
    if field.is_prime_field() {
        json!(x.index())
    } else {
        json!(field.coeffs(x))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FieldInfo {
    pub p: u64,
    pub k: u32,
    pub q: u64,
    pub modulus: Option<Vec<u64>>,
    pub generator: Value,
}

impl FieldInfo {
    pub fn of(field: &FieldSpec) -> Self {
        FieldInfo {
            p: field.p(),
            k: field.k(),
            q: field.q(),
            modulus: field.modulus().map(<[u64]>::to_vec),
            generator: element_json(field, field.generator()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RootCounts {
    pub bruteforce: Option<u64>,
    pub gcd: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessInfo {
    pub k: u64,
    pub beta: Value,
    pub representative: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReducedInfo {
    pub shift_index: u64,
    pub degree: u64,
    pub root_count: u64,
    pub polynomial: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionInfo {
    pub e: u64,
    pub range: u64,
    #[serde(rename = "N")]
    pub modulus: u64,
    pub shifts: Vec<i64>,
    #[serde(rename = "M")]
    pub norm: u64,
    pub k: u64,
    pub branch: ReductionBranch,
    pub coset_size: u64,
    pub root_count_sum: u64,
    pub reduced: Vec<ReducedInfo>,
}

impl ReductionInfo {
    fn of(field: &FieldSpec, cert: &ReductionCertificate) -> Self {
        ReductionInfo {
            e: cert.e,
            range: cert.range,
            modulus: cert.modulus,
            shifts: cert.shifts.clone(),
            norm: cert.norm,
            k: cert.k,
            branch: cert.branch,
            coset_size: cert.coset_size,
            root_count_sum: cert.root_count_sum,
            reduced: cert
                .reduced
                .iter()
                .map(|g| ReducedInfo {
                    shift_index: g.shift_index,
                    degree: g.degree,
                    root_count: g.root_count,
                    polynomial: g
                        .terms
                        .iter()
                        .map(|t| format!("{}*x^{}", field.format_element(t.coeff), t.exponent))
                        .collect::<Vec<_>>()
                        .join(" + "),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundInfo {
    #[serde(rename = "bound_C")]
    pub bound_c: f64,
    pub bound_delta: Option<f64>,
}

/// `R <= bound` for each bound that applies; `None` when it does not.
#[derive(Clone, Debug, Serialize)]
pub struct Verdicts {
    #[serde(rename = "R_le_bound_C")]
    pub bound_c: Option<bool>,
    #[serde(rename = "R_le_bound_delta")]
    pub bound_delta: Option<bool>,
    #[serde(rename = "R_le_baseline_bound")]
    pub baseline: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub field: FieldInfo,
    pub polynomial: String,
    pub t: usize,
    pub exponents: Vec<u64>,
    #[serde(rename = "R")]
    pub r: u64,
    #[serde(rename = "C")]
    pub c: u64,
    pub root_counts: RootCounts,
    pub params: Option<ParamReport>,
    pub coset_witnesses: Vec<WitnessInfo>,
    pub reduction: Option<ReductionInfo>,
    pub coset_bound: Option<BoundInfo>,
    pub baseline_bound: Option<f64>,
    pub verdicts: Verdicts,
    pub notes: Vec<String>,
}

fn within(r: u64, bound: f64) -> bool {
    r as f64 <= bound * (1.0 + VERDICT_SLACK)
}

impl AnalysisReport {
    /// Runs every analysis that applies to `f`.
    ///
    /// Fails with `InvariantViolation` if a bound is exceeded or the two root
    /// counts disagree.
    pub fn build(f: &TNomial) -> Result<Self> {
        let field = f.field();
        let q = field.q();
        let mut notes = Vec::new();

        let brute = if field.order() <= BRUTEFORCE_LIMIT { Some(f.count_roots_bruteforce()?) } else { None };
        let via_gcd = if q <= GCD_LIMIT { Some(f.count_roots_gcd()?) } else { None };
        let r = match (brute, via_gcd) {
            (Some(a), Some(b)) if a != b => {
                return Err(Error::InvariantViolation(format!("root counts disagree: scan {a}, gcd {b}")))
            }
            (Some(a), _) | (None, Some(a)) => a,
            (None, None) => return Err(Error::FieldTooLarge { q, limit: BRUTEFORCE_LIMIT + 1 }),
        };
        if via_gcd.is_none() {
            notes.push(format!("gcd root count skipped: q exceeds {GCD_LIMIT}"));
        }

        let c = largest_vanishing_coset(f)?;
        let (params, coset_witnesses, reduction, bound, baseline) = if f.t() < 2 {
            notes.push("parameters, reduction and bounds need at least 2 terms".into());
            (None, Vec::new(), None, None, None)
        } else {
            let params = ParamReport::compute(f)?;
            let mut witnesses = Vec::new();
            for &k in params.s.iter().filter(|&&k| k > 1) {
                for w in vanishing_cosets(f, k)? {
                    witnesses.push(WitnessInfo {
                        k,
                        beta: element_json(field, w.beta),
                        representative: element_json(field, w.representative),
                    });
                }
            }
            if witnesses.len() > WITNESS_LIMIT {
                notes.push(format!("coset witnesses truncated to {WITNESS_LIMIT} of {}", witnesses.len()));
                witnesses.truncate(WITNESS_LIMIT);
            }
            let reduction = match degree_reduce(f) {
                Ok(cert) => Some(ReductionInfo::of(field, &cert)),
                Err(e @ Error::InvariantViolation(_)) => return Err(e),
                Err(e) => {
                    notes.push(format!("degree reduction skipped: {e}"));
                    None
                }
            };
            let b = coset_bound(f)?;
            (Some(params), witnesses, reduction, Some(b), Some(baseline_bound(f)?))
        };

        let verdicts = Verdicts {
            bound_c: bound.map(|b| within(r, b.bound_c)),
            bound_delta: bound.and_then(|b| b.bound_delta).map(|b| within(r, b)),
            baseline: baseline.map(|b| within(r, b)),
        };
        if [verdicts.bound_c, verdicts.bound_delta, verdicts.baseline].contains(&Some(false)) {
            return Err(Error::InvariantViolation(format!("R = {r} exceeds a bound for {f}")));
        }

        Ok(AnalysisReport {
            schema_version: SCHEMA_VERSION,
            field: FieldInfo::of(field),
            polynomial: f.to_string(),
            t: f.t(),
            exponents: f.exponents(),
            r,
            c,
            root_counts: RootCounts { bruteforce: brute, gcd: via_gcd },
            params,
            coset_witnesses,
            reduction,
            coset_bound: bound.map(|b| BoundInfo {
                bound_c: round12(b.bound_c),
                bound_delta: b.bound_delta.map(round12),
            }),
            baseline_bound: baseline.map(round12),
            verdicts,
            notes,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(round12(2.0 * 2f64.sqrt()), 2.82842712475);
        assert_eq!(round12(6.0), 6.0);
        assert_eq!(round12(1.0 / 3.0), 0.333333333333);
        assert_eq!(round12(0.0), 0.0);
    }

    #[test]
    fn binomial_report() {
        let f7 = FieldSpec::prime(7).unwrap();
        let rep = AnalysisReport::build(&TNomial::parse(&f7, "x^3 + 1").unwrap()).unwrap();
        assert_eq!((rep.r, rep.c), (3, 3));
        let v: Value = serde_json::from_str(&rep.to_json()).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["params"]["delta"], 3);
        assert_eq!(v["params"]["S"], json!([1, 3]));
        assert_eq!(v["coset_bound"]["bound_C"], 6.0);
        assert_eq!(v["coset_witnesses"][0], json!({"k": 3, "beta": 6, "representative": 3}));
        assert_eq!(v["verdicts"]["R_le_bound_C"], true);
    }

    #[test]
    fn monomial_report_has_nulls() {
        let f7 = FieldSpec::prime(7).unwrap();
        let rep = AnalysisReport::build(&TNomial::parse(&f7, "x^4").unwrap()).unwrap();
        assert_eq!((rep.r, rep.c), (0, 0));
        let v: Value = serde_json::from_str(&rep.to_json()).unwrap();
        assert!(v["params"].is_null());
        assert!(v["coset_bound"].is_null());
        assert!(!rep.notes.is_empty());
    }

    #[test]
    fn extension_report() {
        let f9 = FieldSpec::extension(3, 2, Some(&[1, 0, 1])).unwrap();
        let rep = AnalysisReport::build(&TNomial::parse(&f9, "x^3 + x + 1").unwrap()).unwrap();
        assert_eq!((rep.r, rep.c), (3, 1));
        assert_eq!(rep.field.modulus, Some(vec![1, 0, 1]));
        assert_eq!(rep.root_counts.gcd, Some(3));
    }

    #[test]
    fn output_is_deterministic() {
        let f13 = FieldSpec::prime(13).unwrap();
        let f = TNomial::parse(&f13, "2*x^7 + x^3 - 5").unwrap();
        assert_eq!(AnalysisReport::build(&f).unwrap().to_json(), AnalysisReport::build(&f).unwrap().to_json());
    }
}
