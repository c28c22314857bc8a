//! Exponent parameters of a t-nomial: `delta`, `D`, `Q`, `K` and the set `S`
//! of coset sizes on which some choice of coefficients can vanish.
//!
//! All of them depend only on the exponents and `q - 1`. Relations that hold
//! for every input: `delta ∈ S`, every `k ∈ S` divides `Q`, and
//! `max(S) <= K <= min(D, Q)`.

use serde::Serialize;

use crate::arith::{divisors_from_factors, factor_divisor, gcd, gcd_all, lcm};
use crate::error::{Error, Result};
use crate::tnomial::TNomial;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParamReport {
    pub delta: u64,
    #[serde(rename = "D")]
    pub d: u64,
    #[serde(rename = "Q")]
    pub q_param: u64,
    #[serde(rename = "K")]
    pub k: u64,
    #[serde(rename = "S")]
    pub s: Vec<u64>,
    pub t: usize,
    pub q: u64,
}

impl ParamReport {
    pub fn compute(f: &TNomial) -> Result<Self> {
        let exps = f.exponents();
        let order = f.field().order();
        let q_param = gcd_lcm_of(&exps, order)?;
        Ok(ParamReport {
            delta: exponent_gcd(f),
            d: min_max_gcd(&exps, order)?,
            q_param,
            k: min_max_gcd(&exps, q_param)?,
            s: admissible_coset_sizes(f),
            t: f.t(),
            q: f.field().q(),
        })
    }
}

/// `delta = gcd(a_1, ..., a_t, q - 1)`.
pub fn exponent_gcd(f: &TNomial) -> u64 {
    gcd_all(f.exponents().into_iter().chain([f.field().order()]))
}

/// `D = min_i max_{j != i} gcd(a_i - a_j, q - 1)`.
pub fn pairwise_gcd_minmax(f: &TNomial) -> Result<u64> {
    let order = f.field().order();
    min_max_gcd(&f.exponents(), order)
}

/// `Q = gcd_i lcm_{j != i} gcd(a_i - a_j, q - 1)`.
pub fn pairwise_gcd_lcm(f: &TNomial) -> Result<u64> {
    gcd_lcm_of(&f.exponents(), f.field().order())
}

/// `K = min_i max_{j != i} gcd(a_i - a_j, Q)`.
pub fn refined_minmax(f: &TNomial) -> Result<u64> {
    let order = f.field().order();
    let exps = f.exponents();
    let q_param = gcd_lcm_of(&exps, order)?;
    min_max_gcd(&exps, q_param)
}

/// `S`, enumerated over the divisors of `Q`. Empty for monomials.
pub fn admissible_coset_sizes(f: &TNomial) -> Vec<u64> {
    admissible_sizes(&f.exponents(), f.field().order(), f.field().group_order_factors())
}

/// `S`, enumerated over all divisors of `q - 1`; agrees with
/// [`admissible_coset_sizes`].
pub fn admissible_coset_sizes_by_group_order(f: &TNomial) -> Vec<u64> {
    if f.t() < 2 {
        return Vec::new();
    }
    let exps = f.exponents();
    divisors_from_factors(f.field().group_order_factors())
        .into_iter()
        .filter(|&k| every_exponent_paired(&exps, k))
        .collect()
}

fn diff(a: u64, b: u64) -> u64 {
    a.abs_diff(b)
}

pub(crate) fn min_max_gcd(exps: &[u64], modulus: u64) -> Result<u64> {
    if exps.len() < 2 {
        return Err(Error::TooFewTerms(exps.len()));
    }
    Ok(exps
        .iter()
        .enumerate()
        .map(|(i, &ai)| {
            exps.iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &aj)| gcd(diff(ai, aj), modulus))
                .max()
                .expect("t >= 2")
        })
        .min()
        .expect("t >= 2"))
}

pub(crate) fn gcd_lcm_of(exps: &[u64], order: u64) -> Result<u64> {
    if exps.len() < 2 {
        return Err(Error::TooFewTerms(exps.len()));
    }
    Ok(exps
        .iter()
        .enumerate()
        .map(|(i, &ai)| {
            exps.iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(1, |acc, (_, &aj)| lcm(acc, gcd(diff(ai, aj), order)))
        })
        .fold(0, gcd))
}

/// Whether every exponent has a different exponent congruent to it mod `k`.
pub(crate) fn every_exponent_paired(exps: &[u64], k: u64) -> bool {
    let mut residues: Vec<u64> = exps.iter().map(|&a| a % k).collect();
    residues.sort_unstable();
    residues.chunk_by(|a, b| a == b).all(|run| run.len() >= 2)
}

/// `S` for raw exponents (distinct, in `[0, order)`).
pub(crate) fn admissible_sizes(exps: &[u64], order: u64, order_factors: &[(u64, u32)]) -> Vec<u64> {
    let Ok(q_param) = gcd_lcm_of(exps, order) else {
        return Vec::new();
    };
    divisors_from_factors(&factor_divisor(q_param, order_factors))
        .into_iter()
        .filter(|&k| every_exponent_paired(exps, k))
        .collect()
}
