//! Browser bindings: analyze a polynomial, place its roots on the unit group,
//! and tabulate the largest coset-free root counts.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use fq_sparse::arith::is_prime;
use fq_sparse::experiment::{max_roots_coset_free, work_estimate, EnumerationMode};
use fq_sparse::{vanishing_cosets, AnalysisReport, FieldSpec, ParamReport, TNomial};

/// Work budget per call, small enough to keep the page responsive.
pub const WEB_BUDGET: u128 = 200_000_000;
/// Largest group order drawn as a circle.
pub const CIRCLE_LIMIT: u64 = 4096;

fn field(p: u32, k: u32, modulus: &str) -> Result<FieldSpec, String> {
    let modulus = modulus.trim();
    if k <= 1 && modulus.is_empty() {
        return FieldSpec::prime(p as u64).map_err(|e| e.to_string());
    }
    let coeffs = if modulus.is_empty() {
        None
    } else {
        Some(
            modulus
                .split(',')
                .map(|c| c.trim().parse::<u64>().map_err(|_| format!("bad modulus coefficient '{c}'")))
                .collect::<Result<Vec<_>, _>>()?,
        )
    };
    FieldSpec::extension(p as u64, k.max(1), coeffs.as_deref()).map_err(|e| e.to_string())
}

fn parse(p: u32, k: u32, modulus: &str, poly: &str) -> Result<TNomial, String> {
    let field = field(p, k, modulus)?;
    TNomial::parse(&field, poly).map_err(|e| e.to_string())
}

fn wrap(result: Result<Value, String>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e }).to_string(),
    }
}

/// Full analysis report.
pub fn analyze_json(p: u32, k: u32, modulus: &str, poly: &str) -> Result<Value, String> {
    let f = parse(p, k, modulus, poly)?;
    let report = AnalysisReport::build(&f).map_err(|e| e.to_string())?;
    serde_json::to_value(&report).map_err(|e| e.to_string())
}

/// Roots as discrete logs `j` (root `g^j`, drawn at angle `2 pi j / (q-1)`),
/// plus every vanishing coset of size > 1 as its list of logs.
pub fn root_circle_json(p: u32, k: u32, modulus: &str, poly: &str) -> Result<Value, String> {
    let f = parse(p, k, modulus, poly)?;
    let order = f.field().order();
    if order > CIRCLE_LIMIT {
        return Err(format!("group order {order} is too large to draw (limit {CIRCLE_LIMIT})"));
    }
    let roots = f.root_exponents().map_err(|e| e.to_string())?;
    let mut cosets = Vec::new();
    if f.t() >= 2 {
        let params = ParamReport::compute(&f).map_err(|e| e.to_string())?;
        for &size in params.s.iter().filter(|&&s| s > 1) {
            let step = order / size;
            for w in vanishing_cosets(&f, size).map_err(|e| e.to_string())? {
                let base = roots
                    .iter()
                    .copied()
                    .find(|&j| f.field().gen_pow(j) == w.representative)
                    .unwrap_or(0);
                let members: Vec<u64> = (0..size).map(|i| (base + i * step) % order).collect();
                cosets.push(json!({ "size": size, "members": members }));
            }
        }
    }
    Ok(json!({ "order": order, "roots": roots, "cosets": cosets }))
}

/// `R_{p,t}` and `1.8 ln p` for every prime `p` in `[t + 2, p_max]`.
pub fn max_roots_curve_json(p_max: u32, t: u32) -> Result<Value, String> {
    if t < 2 {
        return Err("t must be at least 2".into());
    }
    let primes: Vec<u64> = (t as u64 + 2..=p_max as u64).filter(|&p| is_prime(p)).collect();
    if let Some(&last) = primes.last() {
        let estimate = work_estimate(last, t as usize, EnumerationMode::OrbitReduced);
        if estimate > WEB_BUDGET {
            return Err(format!("p = {last}, t = {t} needs about {estimate} steps; the page allows {WEB_BUDGET}"));
        }
    }
    let mut points = Vec::new();
    for p in primes {
        let m = max_roots_coset_free(p, t as usize, WEB_BUDGET).map_err(|e| format!("p = {p}: {e}"))?;
        points.push(json!({
            "p": p,
            "max_R": m.max_roots,
            "log_bound": 1.8 * (p as f64).ln(),
            "witness": m.witness.to_string(),
        }));
    }
    Ok(json!({ "t": t, "points": points }))
}

#[wasm_bindgen]
pub fn analyze(p: u32, k: u32, modulus: &str, poly: &str) -> String {
    wrap(analyze_json(p, k, modulus, poly))
}

#[wasm_bindgen]
pub fn root_circle(p: u32, k: u32, modulus: &str, poly: &str) -> String {
    wrap(root_circle_json(p, k, modulus, poly))
}

#[wasm_bindgen]
pub fn max_roots_curve(p_max: u32, t: u32) -> String {
    wrap(max_roots_curve_json(p_max, t))
}
