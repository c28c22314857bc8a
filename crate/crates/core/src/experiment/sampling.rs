//! Seeded Monte Carlo over dense polynomials of degree `< q-1`.
//!
//! Samples are split into shards of [`SHARD_SIZE`]; shard `s` draws from
//! `ChaCha8Rng::seed_from_u64(seed)` on stream `s`. Results depend only on
//! `(seed, samples)` and not on the number of worker threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::factorial_f64;
use crate::coset::first_vanishing_coset;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::tnomial::TNomial;

pub const SHARD_SIZE: u64 = 4096;
pub const RNG_SCHEME: &str = "chacha8; seed_from_u64(seed); stream = shard index; shard size 4096";
/// Largest field for the samplers.
pub const SAMPLE_FIELD_LIMIT: u64 = 1 << 12;
/// Largest number of coefficient vectors for the exhaustive proportion.
const EXACT_LIMIT: u128 = 10_000_000;

fn shard_rng(seed: u64, shard: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shard);
    rng
}

fn shards(samples: u64) -> impl ParallelIterator<Item = (u64, u64)> {
    let count = samples.div_ceil(SHARD_SIZE);
    (0..count).into_par_iter().map(move |s| (s, SHARD_SIZE.min(samples - s * SHARD_SIZE)))
}

/// Uniform coefficient indices in `[0, q)`, resampled until not all zero.
fn draw_nonzero(rng: &mut ChaCha8Rng, q: u64, out: &mut [u32]) {
    loop {
        for c in out.iter_mut() {
            *c = rng.gen_range(0..q as u32);
        }
        if out.iter().any(|&c| c != 0) {
            return;
        }
    }
}

fn dense_tnomial(field: &FieldSpec, coeffs: &[u32]) -> Result<TNomial> {
    TNomial::build(
        field,
        coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i as i64, field.from_index(c as u64).expect("index below q"))),
    )
}

fn vanishes_on_prime_coset(f: &TNomial) -> Result<bool> {
    for &(l, _) in f.field().group_order_factors() {
        if first_vanishing_coset(f, l)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `1/q + sum_{l | q-1 prime, l > 2} q^{1-l}`.
pub fn vanishing_comparator(field: &FieldSpec) -> f64 {
    let q = field.q() as f64;
    1.0 / q
        + field
            .group_order_factors()
            .iter()
            .filter(|&&(l, _)| l > 2)
            .map(|&(l, _)| q.powf(1.0 - l as f64))
            .sum::<f64>()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VanishingSample {
    pub q: u64,
    pub samples: u64,
    pub seed: u64,
    pub vanishing: u64,
    pub estimate: f64,
    pub comparator: f64,
    /// `sqrt(c (1 - c) / samples)` at the comparator `c`.
    pub sigma: f64,
    pub rng: &'static str,
}

impl VanishingSample {
    pub fn within_comparator(&self, sigmas: f64) -> bool {
        self.estimate <= self.comparator + sigmas * self.sigma
    }
}

/// Share of uniformly random nonzero polynomials of degree `< q-1` that
/// vanish on some coset of prime order dividing `q-1`.
pub fn sample_vanishing_proportion(field: &FieldSpec, samples: u64, seed: u64) -> Result<VanishingSample> {
    let q = field.q();
    if q > SAMPLE_FIELD_LIMIT {
        return Err(Error::FieldTooLarge { q, limit: SAMPLE_FIELD_LIMIT });
    }
    if samples == 0 {
        return Err(Error::InvalidSampleCount);
    }
    let n = field.order() as usize;
    let vanishing = shards(samples)
        .map(|(shard, count)| -> Result<u64> {
            let mut rng = shard_rng(seed, shard);
            let mut coeffs = vec![0u32; n];
            let mut hits = 0;
            for _ in 0..count {
                draw_nonzero(&mut rng, q, &mut coeffs);
                if vanishes_on_prime_coset(&dense_tnomial(field, &coeffs)?)? {
                    hits += 1;
                }
            }
            Ok(hits)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .sum::<u64>();
    let comparator = vanishing_comparator(field);
    let c = comparator.min(1.0);
    Ok(VanishingSample {
        q,
        samples,
        seed,
        vanishing,
        estimate: vanishing as f64 / samples as f64,
        comparator,
        sigma: (c * (1.0 - c) / samples as f64).sqrt(),
        rng: RNG_SCHEME,
    })
}

/// Exact `(vanishing, total)` over all nonzero polynomials of degree `< q-1`.
///
/// Uses the root set rather than residue sums: `f` vanishes on `alpha <zeta_l>`
/// iff `g^{j + i (q-1)/l}` is a root for all `i`, where `alpha = g^j`.
pub fn exact_vanishing_proportion(field: &FieldSpec) -> Result<(u64, u64)> {
    let q = field.q();
    let n = field.order() as usize;
    let total = (q as u128).pow(n as u32) - 1;
    if total > EXACT_LIMIT {
        return Err(Error::FieldTooLarge { q, limit: q - 1 });
    }
    let primes: Vec<usize> = field.group_order_factors().iter().map(|&(l, _)| l as usize).collect();
    let mut coeffs = vec![0u32; n];
    let mut vanishing = 0u64;
    for code in 1..=total as u64 {
        let mut rest = code;
        for c in coeffs.iter_mut() {
            *c = (rest % q) as u32;
            rest /= q;
        }
        let f = dense_tnomial(field, &coeffs)?;
        let mut is_root = vec![false; n];
        for j in f.root_exponents()? {
            is_root[j as usize] = true;
        }
        let hit = primes.iter().any(|&l| {
            let step = n / l;
            (0..step).any(|j| (0..l).all(|i| is_root[j + i * step]))
        });
        vanishing += hit as u64;
    }
    Ok((vanishing, total as u64))
}

/// Distinct nonzero roots of `sum c_a x^a` over `F_p` by direct evaluation.
pub fn dense_root_count(p: u64, coeffs: &[u32]) -> u64 {
    let mut count = 0;
    for x in 1..p {
        let mut acc = 0u64;
        for &c in coeffs.iter().rev() {
            acc = (acc * x + c as u64) % p;
        }
        count += (acc == 0) as u64;
    }
    count
}

/// Power table `x^a mod p` for `x in [1, p)`, `a in [0, p-1)`, row-major.
fn power_table(p: u64) -> Vec<u32> {
    let n = (p - 1) as usize;
    let mut table = vec![0u32; n * n];
    for (xi, row) in table.chunks_exact_mut(n).enumerate() {
        let x = xi as u64 + 1;
        let mut v = 1u64;
        for e in row.iter_mut() {
            *e = v as u32;
            v = v * x % p;
        }
    }
    table
}

/// Products below `2^20` and at most 1023 of them: the sum fits in `u32`.
const TABLE_LIMIT: u64 = 1024;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootDistributionRow {
    pub r: u64,
    pub count: u64,
    pub proportion: f64,
    pub inv_factorial: f64,
    /// `sqrt(b (1 - b) / samples)` at `b = 1/r!`.
    pub sigma: f64,
}

impl RootDistributionRow {
    pub fn passes(&self, sigmas: f64) -> bool {
        self.proportion <= self.inv_factorial + sigmas * self.sigma
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootDistribution {
    pub p: u64,
    pub samples: u64,
    pub seed: u64,
    pub rows: Vec<RootDistributionRow>,
    pub rng: &'static str,
}

pub const ROOT_DIST_CSV_HEADER: &str = "p,r,count,proportion,inv_factorial,sigma,pass";

/// Histogram of `R(f)` for uniformly random nonzero dense `f` over `F_p`.
pub fn root_distribution_sample(p: u64, samples: u64, seed: u64) -> Result<RootDistribution> {
    let field = FieldSpec::prime(p)?;
    if p > SAMPLE_FIELD_LIMIT {
        return Err(Error::FieldTooLarge { q: p, limit: SAMPLE_FIELD_LIMIT });
    }
    if samples == 0 {
        return Err(Error::InvalidSampleCount);
    }
    let n = field.order() as usize;
    let table = (p <= TABLE_LIMIT).then(|| power_table(p));
    let hist = shards(samples)
        .map(|(shard, count)| {
            let mut rng = shard_rng(seed, shard);
            let mut coeffs = vec![0u32; n];
            let mut local = vec![0u64; n + 1];
            for _ in 0..count {
                draw_nonzero(&mut rng, p, &mut coeffs);
                let r = match &table {
                    Some(table) => table
                        .chunks_exact(n)
                        .filter(|row| {
                            let s: u32 = row.iter().zip(&coeffs).map(|(&a, &b)| a * b).sum();
                            s % p as u32 == 0
                        })
                        .count() as u64,
                    None => dense_root_count(p, &coeffs),
                };
                local[r as usize] += 1;
            }
            local
        })
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    let rows = hist
        .iter()
        .enumerate()
        .map(|(r, &count)| {
            let b = 1.0 / factorial_f64(r as u64);
            RootDistributionRow {
                r: r as u64,
                count,
                proportion: count as f64 / samples as f64,
                inv_factorial: b,
                sigma: (b * (1.0 - b) / samples as f64).sqrt(),
            }
        })
        .collect();
    Ok(RootDistribution { p, samples, seed, rows, rng: RNG_SCHEME })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_at_five() {
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(exact_vanishing_proportion(&f5).unwrap(), (48, 624));
    }

    #[test]
    fn exhaustive_matches_residue_test_at_seven() {
        // independent routes: root-set inspection vs. residue sums, all of F_7
        let f7 = FieldSpec::prime(7).unwrap();
        let (v, total) = exact_vanishing_proportion(&f7).unwrap();
        assert_eq!(total, 7u64.pow(6) - 1);
        let mut coeffs = vec![0u32; 6];
        let mut count = 0;
        for code in 1..=total {
            let mut rest = code;
            for c in coeffs.iter_mut() {
                *c = (rest % 7) as u32;
                rest /= 7;
            }
            count += vanishes_on_prime_coset(&dense_tnomial(&f7, &coeffs).unwrap()).unwrap() as u64;
        }
        assert_eq!(v, count);
    }

    #[test]
    fn sampling_is_reproducible() {
        let f7 = FieldSpec::prime(7).unwrap();
        let a = sample_vanishing_proportion(&f7, 10_000, 1).unwrap();
        let b = sample_vanishing_proportion(&f7, 10_000, 1).unwrap();
        assert_eq!(a, b);
        let c = sample_vanishing_proportion(&f7, 10_000, 2).unwrap();
        assert_ne!(a.vanishing, c.vanishing);
    }

    #[test]
    fn comparator_values() {
        let f7 = FieldSpec::prime(7).unwrap();
        assert!((vanishing_comparator(&f7) - (1.0 / 7.0 + 7f64.powi(-2))).abs() < 1e-15);
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(vanishing_comparator(&f5), 0.2);
    }

    #[test]
    fn table_and_horner_agree() {
        let p = 53;
        let table = power_table(p);
        let mut rng = shard_rng(9, 0);
        let mut coeffs = vec![0u32; 52];
        for _ in 0..200 {
            draw_nonzero(&mut rng, p, &mut coeffs);
            let via_table = table
                .chunks_exact(52)
                .filter(|row| row.iter().zip(&coeffs).map(|(&a, &b)| a * b).sum::<u32>() % 53 == 0)
                .count() as u64;
            let f = dense_tnomial(&FieldSpec::prime(p).unwrap(), &coeffs).unwrap();
            assert_eq!(via_table, dense_root_count(p, &coeffs));
            assert_eq!(via_table, f.count_roots_bruteforce().unwrap());
        }
    }

    #[test]
    fn histogram_mass() {
        let d = root_distribution_sample(13, 5000, 3).unwrap();
        assert_eq!(d.rows.iter().map(|r| r.count).sum::<u64>(), 5000);
        assert_eq!(d.rows.len(), 13);
        assert!(d.rows.iter().all(|r| r.passes(5.0)));
    }

    #[test]
    fn bad_inputs() {
        let f = FieldSpec::prime(7).unwrap();
        assert_eq!(sample_vanishing_proportion(&f, 0, 1).unwrap_err(), Error::InvalidSampleCount);
        assert!(matches!(root_distribution_sample(4099, 1, 1).unwrap_err(), Error::FieldTooLarge { .. }));
    }
}
