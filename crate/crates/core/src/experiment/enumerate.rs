//! Exponent sets and t-nomial streams over `F_p`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::tnomial::{TNomial, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EnumerationMode {
    /// Every exponent set and every coefficient tuple, weight 1.
    Full,
    /// Coefficient of the lowest term fixed to 1, weight `p - 1`.
    ScalarReduced,
    /// Additionally one exponent set per translation orbit, weight
    /// `(p - 1) * orbit size`.
    OrbitReduced,
}

impl std::str::FromStr for EnumerationMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Self::Full),
            "scalar_reduced" | "scalar-reduced" => Ok(Self::ScalarReduced),
            "orbit_reduced" | "orbit-reduced" => Ok(Self::OrbitReduced),
            _ => Err(Error::Parse(format!("unknown enumeration mode '{s}'"))),
        }
    }
}

/// An exponent set with the number of exponent sets it stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedExponents {
    pub exponents: Vec<u64>,
    pub multiplicity: u64,
}

pub(crate) fn check_t(p: u64, t: usize) -> Result<()> {
    if t == 0 || t as u64 > p.saturating_sub(1) {
        return Err(Error::InvalidT { p, t });
    }
    Ok(())
}

/// Lexicographic `t`-subsets of `lo..hi`.
fn combinations(lo: u64, hi: u64, t: usize) -> impl Iterator<Item = Vec<u64>> {
    let mut cur: Option<Vec<u64>> = if (hi - lo) as usize >= t { Some((lo..lo + t as u64).collect()) } else { None };
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let mut next = out.clone();
        let mut i = t;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if next[i] < hi - (t - i) as u64 {
                next[i] += 1;
                for j in i + 1..t {
                    next[j] = next[j - 1] + 1;
                }
                cur = Some(next);
                break;
            }
        }
        Some(out)
    })
}

/// Smallest translate containing 0 and the stabilizer size of `set`
/// (sorted, containing 0) under `a -> a + s mod n`.
fn canonical_translate(set: &[u64], n: u64) -> (Vec<u64>, u64) {
    let mut best: Option<Vec<u64>> = None;
    let mut stab = 0;
    for &a in set {
        let mut tr: Vec<u64> = set.iter().map(|&x| (x + n - a) % n).collect();
        tr.sort_unstable();
        if tr == set {
            stab += 1;
        }
        if best.as_ref().is_none_or(|b| tr < *b) {
            best = Some(tr);
        }
    }
    (best.expect("nonempty set"), stab)
}

/// Exponent sets in `[0, p-2]` of size `t` for the given mode.
///
/// `Full` and `ScalarReduced` list every set (multiplicity 1). `OrbitReduced`
/// lists the smallest translate of each orbit, with multiplicity equal to the
/// orbit size `(p-1) / stabilizer`.
pub fn exponent_sets(p: u64, t: usize, mode: EnumerationMode) -> Result<Vec<WeightedExponents>> {
    check_t(p, t)?;
    let n = p - 1;
    Ok(match mode {
        EnumerationMode::Full | EnumerationMode::ScalarReduced => combinations(0, n, t)
            .map(|exponents| WeightedExponents { exponents, multiplicity: 1 })
            .collect(),
        EnumerationMode::OrbitReduced => combinations(1, n, t - 1)
            .filter_map(|rest| {
                let mut set = Vec::with_capacity(t);
                set.push(0);
                set.extend(rest);
                let (canon, stab) = canonical_translate(&set, n);
                (canon == set).then(|| WeightedExponents { exponents: set, multiplicity: n / stab })
            })
            .collect(),
    })
}

/// Per-polynomial weight on top of the exponent-set multiplicity.
pub(crate) fn scalar_weight(p: u64, mode: EnumerationMode) -> u64 {
    match mode {
        EnumerationMode::Full => 1,
        _ => p - 1,
    }
}

/// Every t-nomial of degree `< p-1` over `F_p` (up to the symmetry the mode
/// quotients by), with the number of polynomials each one stands for.
pub fn enumerate_tnomials(
    p: u64,
    t: usize,
    mode: EnumerationMode,
) -> Result<impl Iterator<Item = (TNomial, u64)>> {
    let field = FieldSpec::prime(p)?;
    let sets = exponent_sets(p, t, mode)?;
    let n = p - 1;
    let free = if mode == EnumerationMode::Full { t } else { t - 1 };
    let tuples = n.pow(free as u32);
    let scalar = scalar_weight(p, mode);
    Ok(sets.into_iter().flat_map(move |set| {
        let field = field.clone();
        let weight = set.multiplicity * scalar;
        (0..tuples).map(move |code| {
            let mut code = code;
            let mut coeffs = vec![1u64; t];
            for c in coeffs[t - free..].iter_mut().rev() {
                *c = 1 + code % n;
                code /= n;
            }
            let terms = set
                .exponents
                .iter()
                .zip(&coeffs)
                .map(|(&exponent, &c)| Term { exponent, coeff: field.element(c as i64) })
                .collect();
            (TNomial::from_canonical(&field, terms), weight)
        })
    }))
}

/// Coefficient vector for a table index of the counting engine: the lowest
/// term has coefficient 1, the others `g^{gamma_i}` with `gamma` read as base-`n`
/// digits, most significant first.
pub(crate) fn decode_tuple(field: &FieldSpec, exps: &[u64], mut idx: usize) -> TNomial {
    let n = field.order() as usize;
    let t = exps.len();
    let mut coeffs: Vec<FieldElement> = vec![field.one(); t];
    for c in coeffs[1..].iter_mut().rev() {
        *c = field.gen_pow((idx % n) as u64);
        idx /= n;
    }
    let terms = exps
        .iter()
        .zip(coeffs)
        .map(|(&exponent, coeff)| Term { exponent, coeff })
        .collect();
    TNomial::from_canonical(field, terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::binomial;

    #[test]
    fn combination_counts() {
        assert_eq!(combinations(0, 5, 2).count(), 10);
        assert_eq!(combinations(0, 3, 3).collect::<Vec<_>>(), vec![vec![0, 1, 2]]);
        assert_eq!(combinations(0, 2, 3).count(), 0);
    }

    #[test]
    fn stream_sizes() {
        let all: Vec<_> = enumerate_tnomials(5, 1, EnumerationMode::Full).unwrap().collect();
        assert_eq!(all.len(), 16);
        assert!(all.iter().all(|(_, w)| *w == 1));

        let red: Vec<_> = enumerate_tnomials(5, 2, EnumerationMode::ScalarReduced).unwrap().collect();
        assert_eq!(red.len(), 24);
        assert_eq!(red.iter().map(|(_, w)| w).sum::<u64>(), 96);
    }

    #[test]
    fn orbit_weights_are_mass_preserving() {
        for (p, t) in [(7u64, 2usize), (7, 3), (11, 3), (13, 4), (13, 6)] {
            let full = binomial(p - 1, t as u64) * ((p - 1) as u128).pow(t as u32);
            let orbit: u128 = enumerate_tnomials(p, t, EnumerationMode::OrbitReduced)
                .unwrap()
                .map(|(_, w)| w as u128)
                .sum();
            assert_eq!(orbit, full, "p={p} t={t}");
        }
    }

    #[test]
    fn stabilizers_are_exact() {
        // {0, 3} in Z/6 is fixed by translation by 3
        let sets = exponent_sets(7, 2, EnumerationMode::OrbitReduced).unwrap();
        let half = sets.iter().find(|s| s.exponents == vec![0, 3]).unwrap();
        assert_eq!(half.multiplicity, 3);
        let sets = exponent_sets(13, 4, EnumerationMode::OrbitReduced).unwrap();
        let quarter = sets.iter().find(|s| s.exponents == vec![0, 3, 6, 9]).unwrap();
        assert_eq!(quarter.multiplicity, 3);
        let total: u64 = sets.iter().map(|s| s.multiplicity).sum();
        assert_eq!(total as u128, binomial(12, 4));
    }

    #[test]
    fn invalid_t() {
        assert_eq!(exponent_sets(5, 0, EnumerationMode::Full).unwrap_err(), Error::InvalidT { p: 5, t: 0 });
        assert_eq!(exponent_sets(5, 5, EnumerationMode::Full).unwrap_err(), Error::InvalidT { p: 5, t: 5 });
    }
}
