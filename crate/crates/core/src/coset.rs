//! Full-coset vanishing: the `x^k - beta` divisibility test, the largest
//! vanishing coset size `C(f)`, and the decomposition of root sets into
//! cosets of the order-`delta` subgroup.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::FieldElement;
use crate::params::{admissible_coset_sizes, exponent_gcd};
use crate::tnomial::TNomial;

/// A coset `{x : x^k = beta}` of the order-`k` subgroup, with one member.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CosetWitness {
    pub k: u64,
    pub beta: FieldElement,
    pub representative: FieldElement,
}

fn check_divisor(f: &TNomial, k: u64) -> Result<()> {
    let order = f.field().order();
    if k == 0 || order % k != 0 {
        return Err(Error::NotADivisor { d: k, order });
    }
    Ok(())
}

/// Whether `x^k - beta` divides `f`, i.e. `f` vanishes on the whole coset
/// `{x : x^k = beta}`.
///
/// Modulo `x^k - beta` each term `c x^a` becomes `c beta^{a div k} x^{a mod k}`,
/// so the test is that every residue class of exponents mod `k` has a zero
/// coefficient sum.
pub fn vanishes_on_coset(f: &TNomial, k: u64, beta: FieldElement) -> Result<bool> {
    check_divisor(f, k)?;
    let cofactor = f.field().order() / k;
    if !f.field().in_subgroup(beta, cofactor) {
        return Err(Error::BetaNotInSubgroup(cofactor));
    }
    Ok(residue_sums_vanish(f, k, beta))
}

fn residue_sums_vanish(f: &TNomial, k: u64, beta: FieldElement) -> bool {
    let field = f.field();
    let mut sums: BTreeMap<u64, FieldElement> = BTreeMap::new();
    for t in f.terms() {
        let w = field.mul(t.coeff, field.pow_u(beta, t.exponent / k));
        let slot = sums.entry(t.exponent % k).or_insert(field.zero());
        *slot = field.add(*slot, w);
    }
    sums.values().all(|c| c.is_zero())
}

/// Direct check: `f(alpha h) = 0` for every `h` in the subgroup of order `k`.
pub fn vanishes_on_coset_direct(f: &TNomial, k: u64, alpha: FieldElement) -> Result<bool> {
    let field = f.field();
    let h = field.subgroup_generator(k)?;
    let mut x = alpha;
    for _ in 0..k {
        if !f.evaluate(x).is_zero() {
            return Ok(false);
        }
        x = field.mul(x, h);
    }
    Ok(true)
}

/// Every coset of size `k` on which `f` vanishes, ascending by `beta`.
///
/// `beta` runs over `g^{kj}`, `0 <= j < (q-1)/k`; `g^j` is then a `k`-th root
/// of `beta` and serves as the representative.
pub fn vanishing_cosets(f: &TNomial, k: u64) -> Result<Vec<CosetWitness>> {
    check_divisor(f, k)?;
    let mut out = Vec::new();
    scan_cosets(f, k, |w| {
        out.push(w);
        true
    });
    out.sort_by_key(|w| w.beta);
    Ok(out)
}

pub(crate) fn first_vanishing_coset(f: &TNomial, k: u64) -> Result<Option<CosetWitness>> {
    check_divisor(f, k)?;
    let mut found = None;
    scan_cosets(f, k, |w| {
        found = Some(w);
        false
    });
    Ok(found)
}

fn scan_cosets(f: &TNomial, k: u64, mut visit: impl FnMut(CosetWitness) -> bool) {
    let field = f.field();
    if f.t() < 2 {
        return;
    }
    let count = field.order() / k;
    let step = field.gen_pow(k);
    let mut beta = field.one();
    let mut alpha = field.one();
    let g = field.generator();
    for _ in 0..count {
        if residue_sums_vanish(f, k, beta) && !visit(CosetWitness { k, beta, representative: alpha }) {
            return;
        }
        beta = field.mul(beta, step);
        alpha = field.mul(alpha, g);
    }
}

/// `C(f)`: the size of the largest coset on which `f` vanishes.
///
/// Only sizes in `S(f)` can occur, so those are scanned from the top. Returns
/// 1 when `f` has roots but no vanishing coset of size > 1, and 0 when `f`
/// has no nonzero roots.
pub fn largest_vanishing_coset(f: &TNomial) -> Result<u64> {
    let norm = f.normalize_lowest();
    for &k in admissible_coset_sizes(&norm).iter().rev() {
        if k > 1 && first_vanishing_coset(&norm, k)?.is_some() {
            return Ok(k);
        }
    }
    Ok(if norm.count_roots_bruteforce()? > 0 { 1 } else { 0 })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct H1Decomposition {
    pub delta: u64,
    /// Number of distinct cosets of the order-`delta` subgroup met by the roots.
    pub coset_count: u64,
    /// `2 ((q-1)/delta)^{1 - 1/(t-1)}`.
    pub bound: f64,
}

/// Groups the roots of `f` (normalized first) into cosets of the subgroup of
/// order `delta`. Every coset met is checked to be contained in the root set.
pub fn h1_coset_decomposition(f: &TNomial) -> Result<H1Decomposition> {
    if f.t() < 2 {
        return Err(Error::TooFewTerms(f.t()));
    }
    let norm = f.normalize_lowest();
    let delta = exponent_gcd(&norm);
    let order = norm.field().order();
    let classes = order / delta;
    let mut per_class: BTreeMap<u64, u64> = BTreeMap::new();
    for j in norm.root_exponents()? {
        *per_class.entry(j % classes).or_default() += 1;
    }
    if let Some((&c, &n)) = per_class.iter().find(|&(_, &n)| n != delta) {
        return Err(Error::InvariantViolation(format!(
            "coset class {c} of the order-{delta} subgroup holds {n} roots"
        )));
    }
    let t = norm.t() as f64;
    Ok(H1Decomposition {
        delta,
        coset_count: per_class.len() as u64,
        bound: 2.0 * (classes as f64).powf(1.0 - 1.0 / (t - 1.0)),
    })
}
