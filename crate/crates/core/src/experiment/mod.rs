//! Exhaustive and sampled experiments over small fields.

mod engine;
mod enumerate;
mod sampling;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::factorial_f64;
use crate::coset::largest_vanishing_coset;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::report::round12;
use crate::tnomial::TNomial;

pub use engine::{work_estimate, ENGINE_LIMIT};
pub use enumerate::{enumerate_tnomials, exponent_sets, EnumerationMode, WeightedExponents};
pub use sampling::{
    dense_root_count, exact_vanishing_proportion, root_distribution_sample, sample_vanishing_proportion,
    vanishing_comparator, RootDistribution, RootDistributionRow, VanishingSample, RNG_SCHEME, ROOT_DIST_CSV_HEADER,
    SAMPLE_FIELD_LIMIT,
    SHARD_SIZE,
};

use engine::{check_budget, histogram_for_set, weight_of, Buffers, PrimeLogs};

/// Default work budget, in inner-loop steps.
pub const DEFAULT_BUDGET: u128 = 10_000_000_000;

/// Weighted counts of t-nomials over `F_p` by number of distinct nonzero roots.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BucketCounts {
    pub p: u64,
    pub t: usize,
    pub mode: EnumerationMode,
    /// `all[r]`: polynomials with exactly `r` roots.
    pub all: Vec<u64>,
    /// `coset_free[r]`: the same, restricted to `C(f) <= 1`.
    pub coset_free: Vec<u64>,
    pub max_coset_free_roots: u64,
    #[serde(skip)]
    pub witness: Option<TNomial>,
}

impl BucketCounts {
    pub fn total(&self) -> u64 {
        self.all.iter().sum()
    }

    pub fn total_coset_free(&self) -> u64 {
        self.coset_free.iter().sum()
    }
}

fn prime_field(p: u64, t: usize) -> Result<FieldSpec> {
    let field = FieldSpec::prime(p)?;
    enumerate::check_t(p, t)?;
    if p >= ENGINE_LIMIT {
        return Err(Error::FieldTooLarge { q: p, limit: ENGINE_LIMIT });
    }
    Ok(field)
}

/// Counts every t-nomial over `F_p` by root number, with and without a
/// vanishing coset of size > 1.
///
/// `OrbitReduced` and `ScalarReduced` run the table engine on each exponent
/// set. `Full` walks every polynomial and counts roots by evaluation, which
/// is slow and meant as an independent check.
pub fn bucket_counts(p: u64, t: usize, mode: EnumerationMode, budget: u128) -> Result<BucketCounts> {
    let field = prime_field(p, t)?;
    check_budget(p, t, mode, budget)?;
    let n = (p - 1) as usize;
    let mut out = BucketCounts {
        p,
        t,
        mode,
        all: vec![0; n + 1],
        coset_free: vec![0; n + 1],
        max_coset_free_roots: 0,
        witness: None,
    };

    if mode == EnumerationMode::Full {
        for (f, w) in enumerate_tnomials(p, t, mode)? {
            let r = f.count_roots_bruteforce()?;
            out.all[r as usize] += w;
            if largest_vanishing_coset(&f)? <= 1 {
                out.coset_free[r as usize] += w;
                if out.witness.is_none() || r > out.max_coset_free_roots {
                    out.max_coset_free_roots = r;
                    out.witness = Some(f);
                }
            }
        }
        return Ok(out);
    }

    let sets = exponent_sets(p, t, mode)?;
    let logs = PrimeLogs::new(p, field.generator().index(), field.group_order_factors());
    let size = n.pow(t as u32 - 1);
    let hists: Vec<_> = sets
        .par_iter()
        .map_init(|| Buffers::new(size), |buf, set| histogram_for_set(&logs, &set.exponents, buf))
        .collect();

    let mut best: Option<(u64, usize, usize)> = None;
    for (si, (set, h)) in sets.iter().zip(&hists).enumerate() {
        let w = weight_of(set, p, mode);
        for r in 0..=n {
            out.all[r] += h.all[r] * w;
            out.coset_free[r] += h.coset_free[r] * w;
        }
        if let Some((r, idx)) = h.best {
            if best.is_none_or(|(b, _, _)| r > b) {
                best = Some((r, si, idx));
            }
        }
    }
    if let Some((r, si, idx)) = best {
        out.max_coset_free_roots = r;
        out.witness = Some(enumerate::decode_tuple(&field, &sets[si].exponents, idx));
    }
    Ok(out)
}

/// Largest root count among t-nomials over `F_p` with no vanishing coset of
/// size > 1, with one polynomial attaining it.
#[derive(Clone, Debug, PartialEq)]
pub struct MaxRoots {
    pub p: u64,
    pub t: usize,
    pub max_roots: u64,
    pub witness: TNomial,
}

pub fn max_roots_coset_free(p: u64, t: usize, budget: u128) -> Result<MaxRoots> {
    let counts = bucket_counts(p, t, EnumerationMode::OrbitReduced, budget)?;
    let witness = counts
        .witness
        .ok_or_else(|| Error::InvariantViolation(format!("no coset-free {t}-nomial over F_{p}")))?;
    Ok(MaxRoots { p, t, max_roots: counts.max_coset_free_roots, witness })
}

/// One row of the tail-proportion table: among coset-free t-nomials, the
/// share with exactly `r` roots, against `(1/r!)^gamma`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentRecord {
    pub p: u64,
    pub t: usize,
    pub r: u64,
    pub count_all: u64,
    pub count_c1: u64,
    pub ratio: f64,
    pub rhs: f64,
    pub gamma: f64,
    #[serde(rename = "max_R")]
    pub max_r: u64,
}

impl ExperimentRecord {
    pub fn passes(&self) -> bool {
        self.ratio <= self.rhs
    }
}

pub const CONJECTURE_CSV_HEADER: &str = "p,t,r,count_all,count_c1,ratio,rhs,gamma,max_R";

pub fn conjecture_table(p: u64, t: usize, gamma: f64, budget: u128) -> Result<Vec<ExperimentRecord>> {
    let counts = bucket_counts(p, t, EnumerationMode::OrbitReduced, budget)?;
    let total = counts.total_coset_free();
    if total == 0 {
        return Err(Error::InvariantViolation(format!("no coset-free {t}-nomial over F_{p}")));
    }
    Ok((0..counts.all.len())
        .map(|r| ExperimentRecord {
            p,
            t,
            r: r as u64,
            count_all: counts.all[r],
            count_c1: counts.coset_free[r],
            ratio: counts.coset_free[r] as f64 / total as f64,
            rhs: (1.0 / factorial_f64(r as u64)).powf(gamma),
            gamma,
            max_r: counts.max_coset_free_roots,
        })
        .collect())
}

pub fn conjecture_csv(records: &[ExperimentRecord]) -> String {
    let mut out = String::from(CONJECTURE_CSV_HEADER);
    out.push('\n');
    for rec in records {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{}\n",
            rec.p,
            rec.t,
            rec.r,
            rec.count_all,
            rec.count_c1,
            round12(rec.ratio),
            round12(rec.rhs),
            round12(rec.gamma),
            rec.max_r
        ));
    }
    out
}
