//! Small multiples modulo a lattice `N Z^m`, the degree reduction built on
//! them, and the numeric root-count bounds.
//!
//! For exponents `a_2, ..., a_t` (after dividing out `x^{a_1}`), a multiplier
//! `e` with every `e a_i` close to a multiple of `N = q - 1` turns `f(x^e)`
//! into a polynomial of degree at most `2M`, where `M` is the distance to the
//! lattice in the infinity norm. When `gcd(e, N) = k > 1` the substitution
//! covers only a subgroup, and the `k` shifted copies `f(g^i x^e)` account
//! for every root exactly `k` times.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::Serialize;

use crate::arith::{gcd, gcd_all};
use crate::coset::largest_vanishing_coset;
use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::params::{exponent_gcd, pairwise_gcd_minmax};
use crate::tnomial::{TNomial, Term};

/// Infinity-norm distance from `v` to the lattice `N Z^m`.
pub fn modular_norm(v: &[i64], modulus: u64) -> u64 {
    let n = modulus as i128;
    v.iter()
        .map(|&x| {
            let r = (x as i128).rem_euclid(n);
            r.min(n - r) as u64
        })
        .max()
        .unwrap_or(0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmallMultiple {
    pub e: u64,
    /// `v_i`, multiples of `N` with `e a_i + v_i` in `[-N/2, N/2]`.
    pub shifts: Vec<i64>,
    /// `M = max_i |e a_i + v_i|`.
    pub norm: u64,
}

/// `M^m * n <= N^m`, the packing guarantee `M <= N / n^{1/m}` in integers.
pub fn within_packing_bound(norm: u64, modulus: u64, dim: usize, range: u64) -> bool {
    let lhs = BigUint::from(norm).pow(dim as u32) * BigUint::from(range);
    lhs <= BigUint::from(modulus).pow(dim as u32)
}

/// The `e` in `1..range` minimizing the nonzero modular norm of `e a`
/// (smallest `e` on ties).
///
/// Requires `2 <= range <= N / gcd(a, N)`; under that hypothesis no
/// `e < range` maps `a` into the lattice and the optimum satisfies
/// `M <= N / range^{1/m}`, which is checked before returning.
pub fn find_small_multiple(a: &[u64], modulus: u64, range: u64) -> Result<SmallMultiple> {
    if a.is_empty() || modulus == 0 {
        return Err(Error::PreconditionViolated("need a nonempty vector and N >= 1".into()));
    }
    if range <= 1 {
        return Err(Error::EmptyRange(range));
    }
    let reduced: Vec<u64> = a.iter().map(|&x| x % modulus).collect();
    let limit = modulus / gcd_all(reduced.iter().copied().chain([modulus]));
    if range > limit {
        return Err(Error::PreconditionViolated(format!(
            "range {range} exceeds N / gcd(a, N) = {limit}"
        )));
    }

    let mut residues = vec![0u64; reduced.len()];
    let (mut best_e, mut best) = (0u64, u64::MAX);
    for e in 1..range {
        let mut norm = 0u64;
        for (r, &x) in residues.iter_mut().zip(&reduced) {
            *r += x;
            if *r >= modulus {
                *r -= modulus;
            }
            norm = norm.max((*r).min(modulus - *r));
        }
        if norm > 0 && norm < best {
            best = norm;
            best_e = e;
            if best == 1 {
                break;
            }
        }
    }
    debug_assert!(best_e > 0);

    let n = modulus as i128;
    let shifts = a
        .iter()
        .map(|&x| {
            let prod = best_e as i128 * x as i128;
            let r = prod.rem_euclid(n);
            let rep = if 2 * r <= n { r } else { r - n };
            i64::try_from(rep - prod).map_err(|_| Error::PreconditionViolated("shift overflows i64".into()))
        })
        .collect::<Result<Vec<_>>>()?;

    if !within_packing_bound(best, modulus, a.len(), range) {
        return Err(Error::InvariantViolation(format!(
            "norm {best} exceeds N / n^(1/m) for N={modulus}, n={range}, m={}",
            a.len()
        )));
    }
    Ok(SmallMultiple { e: best_e, shifts, norm: best })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionBranch {
    /// `gcd(e, q-1) = 1`: `x -> x^e` permutes `F_q^*`.
    Bijection,
    /// `gcd(e, q-1) = k > 1`: `k` shifted copies cover `F_q^*`.
    CosetSplit,
}

/// `x^M f(g^i x^e)` with its exponents shifted into `[0, 2M]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedPoly {
    pub shift_index: u64,
    pub terms: Vec<Term>,
    pub degree: u64,
    pub root_count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionCertificate {
    pub e: u64,
    /// Search range `n` handed to [`find_small_multiple`].
    pub range: u64,
    /// Lattice modulus `N = q - 1`.
    pub modulus: u64,
    pub shifts: Vec<i64>,
    pub norm: u64,
    /// `gcd(e, N)`.
    pub k: u64,
    pub branch: ReductionBranch,
    /// `C(f)` used to choose the range (0 is replaced by 1).
    pub coset_size: u64,
    pub reduced: Vec<ReducedPoly>,
    pub root_count: u64,
    pub root_count_sum: u64,
}

/// Reduces `f` to `gcd(e, q-1)` polynomials of degree at most `2M` whose root
/// counts sum to `gcd(e, q-1) R(f)`.
///
/// The range is `n = (q-1)/C`; for root-free `f` with `delta > 1` it is capped
/// at `(q-1)/delta` so the packing hypothesis holds.
pub fn degree_reduce(f: &TNomial) -> Result<ReductionCertificate> {
    if f.t() < 2 {
        return Err(Error::TooFewTerms(f.t()));
    }
    let field = f.field();
    let norm_f = f.normalize_lowest();
    let modulus = field.order();
    let coset_size = largest_vanishing_coset(&norm_f)?.max(1);
    let delta = exponent_gcd(&norm_f);
    let range = (modulus / coset_size).min(modulus / delta);
    if range <= 1 {
        return Err(Error::EmptyRange(range));
    }

    let exps: Vec<u64> = norm_f.terms()[1..].iter().map(|t| t.exponent).collect();
    let sm = find_small_multiple(&exps, modulus, range)?;
    let k = gcd(sm.e, modulus);
    let m = sm.norm as i64;

    let mut reduced = Vec::with_capacity(k as usize);
    for i in 0..k {
        let mut merged: BTreeMap<u64, FieldElement> = BTreeMap::new();
        merged.insert(sm.norm, norm_f.terms()[0].coeff);
        for (t, &v) in norm_f.terms()[1..].iter().zip(&sm.shifts) {
            let exponent = (sm.e as i64 * t.exponent as i64 + v + m) as u64;
            let coeff = field.mul(t.coeff, field.gen_pow(i * t.exponent % modulus));
            let slot = merged.entry(exponent).or_insert(field.zero());
            *slot = field.add(*slot, coeff);
        }
        let terms: Vec<Term> = merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(exponent, coeff)| Term { exponent, coeff })
            .collect();
        let Some(degree) = terms.last().map(|t| t.exponent) else {
            return Err(Error::InvariantViolation(format!("reduced polynomial {i} is identically zero")));
        };
        if degree > 2 * sm.norm {
            return Err(Error::InvariantViolation(format!("reduced degree {degree} exceeds 2M")));
        }
        let as_function = TNomial::build(field, terms.iter().map(|t| (t.exponent as i64, t.coeff)))
            .map_err(|e| Error::InvariantViolation(format!("reduced polynomial {i}: {e}")))?;
        reduced.push(ReducedPoly {
            shift_index: i,
            terms,
            degree,
            root_count: as_function.count_roots_bruteforce()?,
        });
    }

    let root_count = f.count_roots_bruteforce()?;
    let root_count_sum: u64 = reduced.iter().map(|g| g.root_count).sum();
    if root_count_sum != k * root_count {
        return Err(Error::InvariantViolation(format!(
            "reduced root counts sum to {root_count_sum}, expected {k} * {root_count}"
        )));
    }
    Ok(ReductionCertificate {
        e: sm.e,
        range,
        modulus,
        shifts: sm.shifts,
        norm: sm.norm,
        k,
        branch: if k == 1 { ReductionBranch::Bijection } else { ReductionBranch::CosetSplit },
        coset_size,
        reduced,
        root_count,
        root_count_sum,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CosetBound {
    /// `2 (q-1)^{1-1/(t-1)} C^{1/(t-1)}`.
    #[serde(rename = "bound_C")]
    pub bound_c: f64,
    /// `2 (q-1)^{1-1/(t-1)} delta^{1/(t-1)}`, present iff
    /// `C < delta^{1-1/(t-1)} (q-1)^{1/(t-1)}`.
    pub bound_delta: Option<f64>,
}

/// Evaluates both bound branches for group order `order`, term count `t >= 2`,
/// coset size `c >= 1` and `delta` of the normalized polynomial.
pub fn coset_bound_for(order: u64, t: usize, c: u64, delta: u64) -> CosetBound {
    debug_assert!(t >= 2 && c >= 1);
    let inv = 1.0 / (t as f64 - 1.0);
    let main = 2.0 * (order as f64).powf(1.0 - inv);
    // c < delta^{1-1/(t-1)} N^{1/(t-1)}  <=>  c^{t-1} < delta^{t-2} N
    let m = (t - 1) as u32;
    let fires = BigUint::from(c).pow(m) < BigUint::from(delta).pow(m - 1) * BigUint::from(order);
    CosetBound {
        bound_c: main * (c as f64).powf(inv),
        bound_delta: fires.then(|| main * (delta as f64).powf(inv)),
    }
}

/// The coset-size bound on `R(f)`, with `C = 0` treated as `C = 1`.
pub fn coset_bound(f: &TNomial) -> Result<CosetBound> {
    if f.t() < 2 {
        return Err(Error::TooFewTerms(f.t()));
    }
    let norm = f.normalize_lowest();
    let c = largest_vanishing_coset(&norm)?.max(1);
    Ok(coset_bound_for(f.field().order(), f.t(), c, exponent_gcd(&norm)))
}

/// Main term `2 (q-1)^{1-1/(t-1)} D^{1/(t-1)}` of the earlier `D`-based bound.
pub fn baseline_bound(f: &TNomial) -> Result<f64> {
    let d = pairwise_gcd_minmax(f)?;
    let inv = 1.0 / (f.t() as f64 - 1.0);
    Ok(2.0 * (f.field().order() as f64).powf(1.0 - inv) * (d as f64).powf(inv))
}
