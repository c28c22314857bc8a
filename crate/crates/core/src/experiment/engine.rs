//! Table-filling root counter for all t-nomials sharing an exponent set.
//!
//! With the lowest coefficient fixed to 1 and the others written as `g^gamma`,
//! every nonzero `x` and every choice of all but the last coefficient fixes
//! the last coefficient of the unique polynomial vanishing at `x`. Looping over
//! `x` and the free coefficients therefore visits each (polynomial, root)
//! pair exactly once, with no evaluation of the polynomial itself.

use crate::arith::binomial;
use crate::error::{Error, Result};
use crate::params::admissible_sizes;

use super::enumerate::{scalar_weight, EnumerationMode, WeightedExponents};

/// Largest `p` for the table engine (root counts are stored as `u16`).
pub const ENGINE_LIMIT: u64 = 1 << 16;

pub(crate) struct PrimeLogs {
    pub p: u64,
    pub n: usize,
    pub exp: Vec<u32>,
    pub log: Vec<u32>,
    pub factors: Vec<(u64, u32)>,
}

impl PrimeLogs {
    pub fn new(p: u64, generator: u64, factors: &[(u64, u32)]) -> Self {
        let n = (p - 1) as usize;
        let mut exp = vec![0u32; n];
        let mut log = vec![0u32; p as usize];
        let mut x = 1u64;
        for (i, e) in exp.iter_mut().enumerate() {
            *e = x as u32;
            log[x as usize] = i as u32;
            x = x * generator % p;
        }
        PrimeLogs { p, n, exp, log, factors: factors.to_vec() }
    }

    fn neg_log(&self) -> usize {
        // log(-1) is n/2 for odd p and 0 in F_2
        self.n / 2
    }
}

/// Root-count histogram of one exponent set, unweighted.
#[derive(Clone, Debug, Default)]
pub(crate) struct SetHistogram {
    pub all: Vec<u64>,
    pub coset_free: Vec<u64>,
    /// `(R, table index)` of the first coset-free polynomial with the most roots.
    pub best: Option<(u64, usize)>,
}

pub(crate) struct Buffers {
    roots: Vec<u16>,
    marked: Vec<bool>,
}

impl Buffers {
    pub fn new(size: usize) -> Self {
        Buffers { roots: vec![0; size], marked: vec![false; size] }
    }
}

/// Coefficient tuples `(g^{gamma_1}, ..., g^{gamma_{t-1}})`, index
/// `sum gamma_i n^{t-1-i}`.
fn table_size(n: usize, t: usize) -> usize {
    n.pow(t as u32 - 1)
}

fn fill_roots(logs: &PrimeLogs, exps: &[u64], roots: &mut [u16]) {
    let n = logs.n;
    let t = exps.len();
    let p = logs.p as u32;
    roots.fill(0);
    if t == 1 {
        return;
    }
    let neg = logs.neg_log();
    let mut e = vec![0usize; t];
    for j in 0..n {
        for (ei, &a) in e.iter_mut().zip(exps) {
            *ei = (a as usize * j) % n;
        }
        if t == 2 {
            roots[(neg + n - e[1]) % n] += 1;
            continue;
        }
        let off_a = (n - e[t - 2]) % n;
        let off_b = (neg + n - e[t - 1]) % n;
        let prefix_len = t - 3;
        let prefix_count = n.pow(prefix_len as u32);
        for code in 0..prefix_count {
            let mut s = 1u32;
            let mut rest = code;
            let mut base = 0usize;
            let mut scale = n * n;
            for i in (1..=prefix_len).rev() {
                let digit = rest % n;
                rest /= n;
                base += digit * scale;
                scale *= n;
                let mut idx = digit + e[i];
                if idx >= n {
                    idx -= n;
                }
                s += logs.exp[idx];
                if s >= p {
                    s -= p;
                }
            }
            let row = &mut roots[base..base + n * n];
            for (w, &val) in logs.exp.iter().enumerate() {
                let mut sum = s + val;
                if sum >= p {
                    sum -= p;
                }
                if sum == 0 {
                    continue;
                }
                let mut ga = w + off_a;
                if ga >= n {
                    ga -= n;
                }
                let mut gb = logs.log[sum as usize] as usize + off_b;
                if gb >= n {
                    gb -= n;
                }
                row[ga * n + gb] += 1;
            }
        }
    }
}

/// Marks every coefficient tuple whose polynomial vanishes on some coset of
/// order `l`, for each prime `l` in the admissible set. A coset of composite
/// order contains cosets of each prime order dividing it, so primes suffice.
fn mark_coset_vanishing(logs: &PrimeLogs, exps: &[u64], marked: &mut [bool]) {
    marked.fill(false);
    let n = logs.n;
    let t = exps.len();
    let p = logs.p;
    if t < 2 {
        return;
    }
    let sizes = admissible_sizes(exps, n as u64, &logs.factors);
    let primes: Vec<u64> = sizes.into_iter().filter(|&k| k > 1 && logs.factors.iter().any(|&(q, _)| q == k)).collect();
    let last = t - 1;
    let free_count = n.pow(t as u32 - 2);
    let mut w = vec![0usize; t];
    let mut gamma = vec![0usize; t];
    for l in primes {
        let class: Vec<u64> = exps.iter().map(|&a| a % l).collect();
        let cofactor = n / l as usize;
        for b in 0..cofactor {
            let beta_log = l as usize * b;
            for (wi, &a) in w.iter_mut().zip(exps) {
                *wi = (beta_log * (a / l) as usize) % n;
            }
            for code in 0..free_count {
                let mut rest = code;
                for g in gamma[1..last].iter_mut().rev() {
                    *g = rest % n;
                    rest /= n;
                }
                gamma[0] = 0;
                let term = |i: usize, gamma: &[usize]| logs.exp[(gamma[i] + w[i]) % n] as u64;
                let mut other = 0u64;
                for i in 0..last {
                    if class[i] == class[last] {
                        other = (other + term(i, &gamma)) % p;
                    }
                }
                if other == 0 {
                    continue;
                }
                let target = (logs.log[(p - other) as usize] as usize + n - w[last]) % n;
                gamma[last] = target;
                let ok = class.iter().enumerate().all(|(ci, &r)| {
                    if r == class[last] || class[..ci].contains(&r) {
                        return true;
                    }
                    let mut s = 0u64;
                    for i in 0..t {
                        if class[i] == r {
                            s = (s + term(i, &gamma)) % p;
                        }
                    }
                    s == 0
                });
                if ok {
                    let idx = gamma[1..].iter().fold(0usize, |acc, &g| acc * n + g);
                    marked[idx] = true;
                }
            }
        }
    }
}

pub(crate) fn histogram_for_set(logs: &PrimeLogs, exps: &[u64], buf: &mut Buffers) -> SetHistogram {
    let n = logs.n;
    let size = table_size(n, exps.len());
    // dividing by x^{a_1} changes neither roots nor cosets
    let shifted: Vec<u64> = exps.iter().map(|&a| a - exps[0]).collect();
    fill_roots(logs, &shifted, &mut buf.roots[..size]);
    mark_coset_vanishing(logs, &shifted, &mut buf.marked[..size]);
    let mut hist = SetHistogram { all: vec![0; n + 1], coset_free: vec![0; n + 1], best: None };
    for (idx, (&r, &m)) in buf.roots[..size].iter().zip(&buf.marked[..size]).enumerate() {
        let r = r as usize;
        hist.all[r] += 1;
        if !m {
            hist.coset_free[r] += 1;
            if hist.best.is_none_or(|(b, _)| (r as u64) > b) {
                hist.best = Some((r as u64, idx));
            }
        }
    }
    hist
}

/// Work estimate for the given mode, in inner-loop steps.
pub fn work_estimate(p: u64, t: usize, mode: EnumerationMode) -> u128 {
    let n = (p - 1) as u128;
    let sets = binomial(p - 1, t as u64);
    match mode {
        EnumerationMode::Full => sets * n.pow(t as u32) * n * t as u128,
        EnumerationMode::ScalarReduced => sets * n.pow((t as u32).saturating_sub(1)) * t as u128,
        EnumerationMode::OrbitReduced => sets.div_ceil(n.max(1)) * n.pow((t as u32).saturating_sub(1)) * t as u128,
    }
}

pub(crate) fn check_budget(p: u64, t: usize, mode: EnumerationMode, budget: u128) -> Result<()> {
    let estimate = work_estimate(p, t, mode);
    if estimate > budget {
        return Err(Error::BudgetExceeded { estimate, budget });
    }
    Ok(())
}

pub(crate) fn weight_of(set: &WeightedExponents, p: u64, mode: EnumerationMode) -> u64 {
    set.multiplicity * scalar_weight(p, mode)
}
