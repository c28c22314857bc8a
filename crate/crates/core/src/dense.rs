//! Dense univariate polynomials over a [`FieldSpec`], coefficients lowest
//! degree first with no trailing zeros (the zero polynomial is empty).

use crate::field::{FieldElement, FieldSpec};

pub fn trim(v: &mut Vec<FieldElement>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

pub fn degree(a: &[FieldElement]) -> Option<usize> {
    a.iter().rposition(|c| !c.is_zero())
}

pub fn eval(field: &FieldSpec, a: &[FieldElement], x: FieldElement) -> FieldElement {
    a.iter().rev().fold(field.zero(), |acc, &c| field.add(field.mul(acc, x), c))
}

pub fn sub(field: &FieldSpec, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let n = a.len().max(b.len());
    let mut out: Vec<FieldElement> = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or_default();
            let y = b.get(i).copied().unwrap_or_default();
            field.sub(x, y)
        })
        .collect();
    trim(&mut out);
    out
}

pub fn mul(field: &FieldSpec, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = field.add(out[i + j], field.mul(x, y));
        }
    }
    trim(&mut out);
    out
}

/// Remainder of `a` modulo a nonzero `m`.
pub fn rem(field: &FieldSpec, a: &[FieldElement], m: &[FieldElement]) -> Vec<FieldElement> {
    let dm = degree(m).expect("division by the zero polynomial");
    let lead_inv = field.inv(m[dm]).expect("leading coefficient is nonzero");
    let mut r = a.to_vec();
    trim(&mut r);
    while let Some(dr) = degree(&r) {
        if dr < dm {
            break;
        }
        let c = field.mul(r[dr], lead_inv);
        let shift = dr - dm;
        for (i, &mi) in m[..=dm].iter().enumerate() {
            r[shift + i] = field.sub(r[shift + i], field.mul(c, mi));
        }
        trim(&mut r);
    }
    r
}

pub fn mul_mod(
    field: &FieldSpec,
    a: &[FieldElement],
    b: &[FieldElement],
    m: &[FieldElement],
) -> Vec<FieldElement> {
    rem(field, &mul(field, a, b), m)
}

pub fn pow_mod(field: &FieldSpec, base: &[FieldElement], mut e: u64, m: &[FieldElement]) -> Vec<FieldElement> {
    let mut acc = rem(field, &[field.one()], m);
    let mut b = rem(field, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(field, &acc, &b, m);
        }
        b = mul_mod(field, &b, &b, m);
        e >>= 1;
    }
    acc
}

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(field: &FieldSpec, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(field, &x, &y);
        x = y;
        y = r;
    }
    if let Some(d) = degree(&x) {
        let inv = field.inv(x[d]).expect("nonzero leading coefficient");
        for c in x.iter_mut() {
            *c = field.mul(*c, inv);
        }
    }
    x
}

/// `x^e` modulo the monic polynomial `x^d + sum lower`, where `lower` lists
/// `(exponent < d, coefficient)` pairs. Reduction costs one pass over the
/// sparse tail per eliminated coefficient.
pub fn x_pow_mod_sparse(
    field: &FieldSpec,
    lower: &[(usize, FieldElement)],
    d: usize,
    e: u64,
) -> Vec<FieldElement> {
    assert!(d >= 1);
    if field.is_prime_field() && field.p() < (1 << 16) {
        let lower: Vec<(usize, u64)> = lower.iter().map(|&(a, c)| (a, c.index())).collect();
        let out = x_pow_mod_sparse_prime(field.p(), &lower, d, e);
        let mut v: Vec<FieldElement> = out.into_iter().map(|c| field.element(c as i64)).collect();
        trim(&mut v);
        return v;
    }

    let reduce = |poly: &mut Vec<FieldElement>| {
        for j in (d..poly.len()).rev() {
            let c = poly[j];
            if c.is_zero() {
                continue;
            }
            poly[j] = field.zero();
            for &(a, m) in lower {
                let idx = j - d + a;
                poly[idx] = field.sub(poly[idx], field.mul(c, m));
            }
        }
        poly.truncate(d);
    };

    let mut acc = vec![field.zero(); d];
    let mut started = false;
    for bit in (0..64).rev() {
        if started {
            let mut sq = vec![field.zero(); 2 * d - 1];
            for i in 0..d {
                if acc[i].is_zero() {
                    continue;
                }
                for j in 0..d {
                    sq[i + j] = field.add(sq[i + j], field.mul(acc[i], acc[j]));
                }
            }
            reduce(&mut sq);
            acc = sq;
        }
        if (e >> bit) & 1 == 1 {
            if !started {
                started = true;
                // acc = x
                let mut v = vec![field.zero(); d.max(2)];
                v[1] = field.one();
                reduce(&mut v);
                v.resize(d, field.zero());
                acc = v;
            } else {
                acc.insert(0, field.zero());
                reduce(&mut acc);
            }
        }
    }
    if !started {
        acc[0] = field.one();
    }
    trim(&mut acc);
    acc
}

/// Prime-field specialization of [`x_pow_mod_sparse`]: squaring accumulates
/// unreduced products in u64, valid while `p^2 * d < 2^64`.
fn x_pow_mod_sparse_prime(p: u64, lower: &[(usize, u64)], d: usize, e: u64) -> Vec<u64> {
    debug_assert!((p as u128) * (p as u128) * (d as u128 + 1) < (1u128 << 64));
    let reduce = |poly: &mut Vec<u64>| {
        for j in (d..poly.len()).rev() {
            let c = poly[j] % p;
            poly[j] = 0;
            if c == 0 {
                continue;
            }
            let neg = p - c;
            for &(a, m) in lower {
                let idx = j - d + a;
                poly[idx] = (poly[idx] + neg * m) % p;
            }
        }
        poly.truncate(d);
    };

    let mut acc = vec![0u64; d];
    let mut started = false;
    let mut sq = vec![0u64; 2 * d];
    for bit in (0..64).rev() {
        if started {
            sq.clear();
            sq.resize(2 * d - 1, 0);
            for i in 0..d {
                let ai = acc[i];
                if ai == 0 {
                    continue;
                }
                for (s, &aj) in sq[2 * i + 1..].iter_mut().zip(&acc[i + 1..]) {
                    *s += ai * aj;
                }
            }
            for (i, &ai) in acc.iter().enumerate() {
                let doubled = (sq[2 * i] % p) * 2;
                sq[2 * i] = doubled + ai * ai;
                if 2 * i + 1 < sq.len() {
                    sq[2 * i + 1] = (sq[2 * i + 1] % p) * 2;
                }
            }
            for s in sq.iter_mut() {
                *s %= p;
            }
            reduce(&mut sq);
            std::mem::swap(&mut acc, &mut sq);
        }
        if (e >> bit) & 1 == 1 {
            if !started {
                started = true;
                let mut v = vec![0u64; d.max(2)];
                v[1] = 1;
                reduce(&mut v);
                v.resize(d, 0);
                acc = v;
            } else {
                acc.insert(0, 0);
                reduce(&mut acc);
            }
        }
    }
    if !started {
        acc[0] = 1 % p;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(f: &FieldSpec, c: &[i64]) -> Vec<FieldElement> {
        let mut v: Vec<FieldElement> = c.iter().map(|&x| f.element(x)).collect();
        trim(&mut v);
        v
    }

    #[test]
    fn gcd_of_products() {
        let f = FieldSpec::prime(7).unwrap();
        // (x-1)(x-2) and (x-1)(x-3)
        let a = mul(&f, &poly(&f, &[-1, 1]), &poly(&f, &[-2, 1]));
        let b = mul(&f, &poly(&f, &[-1, 1]), &poly(&f, &[-3, 1]));
        assert_eq!(gcd(&f, &a, &b), poly(&f, &[-1, 1]));
    }

    #[test]
    fn sparse_power_matches_dense_power() {
        for p in [3u64, 7, 13, 101] {
            let f = FieldSpec::prime(p).unwrap();
            // m = x^5 + 3x^2 + 1
            let m = poly(&f, &[1, 0, 3, 0, 0, 1]);
            let lower = vec![(0usize, f.element(1)), (2, f.element(3))];
            for e in [0u64, 1, 4, 5, 6, 17, p - 1, p * p + 3] {
                let dense = pow_mod(&f, &poly(&f, &[0, 1]), e, &m);
                assert_eq!(x_pow_mod_sparse(&f, &lower, 5, e), dense, "p={p} e={e}");
            }
        }
    }

    #[test]
    fn sparse_power_generic_path() {
        let f = FieldSpec::extension(3, 2, None).unwrap();
        let g = f.generator();
        // m = x^4 + g x + 2
        let m = vec![f.element(2), g, f.zero(), f.zero(), f.one()];
        let lower = vec![(0usize, f.element(2)), (1, g)];
        for e in [0u64, 1, 3, 4, 8, 100] {
            let dense = pow_mod(&f, &[f.zero(), f.one()], e, &m);
            assert_eq!(x_pow_mod_sparse(&f, &lower, 4, e), dense, "e={e}");
        }
        // degree-one modulus
        let lower = vec![(0usize, f.element(1))];
        assert_eq!(x_pow_mod_sparse(&f, &lower, 1, 7), pow_mod(&f, &[f.zero(), f.one()], 7, &[f.one(), f.one()]));
    }
}
