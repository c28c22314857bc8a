//! Exact arithmetic in `F_p` and `F_{p^k}`.
//!
//! Elements are stored as a single canonical integer: the residue itself for
//! prime fields, and `c_0 + c_1 p + ... + c_{k-1} p^{k-1}` for an extension
//! element `c_0 + c_1 x + ... + c_{k-1} x^{k-1}`. Integer order on this index
//! is the lexicographic order on coefficient vectors read from the top
//! coefficient down, which is the order used for generator and modulus search.
//!
//! Extension fields carry exp/log tables built from the generator, so
//! multiplication is two lookups; the size ceiling keeps the tables small.

use std::fmt;
use std::sync::Arc;

use crate::arith::{factorize, is_prime, pow_mod};
use crate::dense;
use crate::error::{Error, Result};

/// Largest prime accepted for `F_p`.
pub const PRIME_FIELD_LIMIT: u64 = 1 << 31;
/// Largest cardinality accepted for `F_{p^k}`, `k >= 2`.
pub const EXTENSION_FIELD_LIMIT: u64 = 1 << 20;

/// A field element in canonical form. Only meaningful together with the
/// [`FieldSpec`] that produced it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u64);

impl FieldElement {
    /// Canonical index in `[0, q)`.
    pub fn index(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct LogTables {
    // exp[i] = g^i for i in [0, q-1)
    exp: Vec<u32>,
    // log[x] for x in [1, q); log[0] unused
    log: Vec<u32>,
}

struct Inner {
    p: u64,
    k: u32,
    modulus: Option<Vec<u64>>,
    q: u64,
    generator: FieldElement,
    factors: Vec<(u64, u32)>,
    tables: Option<LogTables>,
}

/// A concrete finite field with a fixed generator of its unit group.
///
/// Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct FieldSpec(Arc<Inner>);

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.0.p)
            .field("k", &self.0.k)
            .field("modulus", &self.0.modulus)
            .field("q", &self.0.q)
            .field("generator", &self.0.generator.0)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

impl FieldSpec {
    /// The prime field `F_p` with its smallest primitive root.
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > PRIME_FIELD_LIMIT {
            return Err(Error::FieldTooLarge { q: p, limit: PRIME_FIELD_LIMIT });
        }
        let order = p - 1;
        let factors = factorize(order);
        let generator = (1..p)
            .find(|&c| factors.iter().all(|&(l, _)| pow_mod(c, order / l, p) != 1))
            .expect("F_p^* is cyclic");
        Ok(FieldSpec(Arc::new(Inner {
            p,
            k: 1,
            modulus: None,
            q: p,
            generator: FieldElement(generator),
            factors,
            tables: None,
        })))
    }

    /// The extension `F_{p^k}`, `k >= 2`.
    ///
    /// `modulus` is the coefficient list `[m_0, ..., m_{k-1}, 1]` of a monic
    /// degree-`k` polynomial, lowest degree first. Without one, the smallest
    /// monic irreducible of degree `k` is used.
    pub fn extension(p: u64, k: u32, modulus: Option<&[u64]>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k < 2 {
            return Err(Error::InvalidDegree(k));
        }
        let q = p
            .checked_pow(k)
            .filter(|&q| q <= EXTENSION_FIELD_LIMIT)
            .ok_or(Error::FieldTooLarge { q: p.saturating_pow(k), limit: EXTENSION_FIELD_LIMIT })?;
        let base = FieldSpec::prime(p)?;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != k as usize + 1 {
                    return Err(Error::InvalidModulus(format!(
                        "expected {} coefficients for degree {k}, got {}",
                        k + 1,
                        m.len()
                    )));
                }
                if m[k as usize] != 1 {
                    return Err(Error::InvalidModulus("modulus must be monic".into()));
                }
                if let Some(&c) = m.iter().find(|&&c| c >= p) {
                    return Err(Error::InvalidModulus(format!("coefficient {c} is not reduced mod {p}")));
                }
                if !is_irreducible(&base, m) {
                    return Err(Error::ReducibleModulus(p));
                }
                m.to_vec()
            }
            None => smallest_irreducible(&base, k),
        };

        let order = q - 1;
        let factors = factorize(order);
        let ctx = PolyCtx { p, modulus: &modulus };
        let generator = (1..q)
            .find(|&c| {
                let c = ctx.unpack(c);
                factors.iter().all(|&(l, _)| ctx.pow(&c, order / l) != ctx.one())
            })
            .expect("the unit group of a field is cyclic");

        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; q as usize];
        let g = ctx.unpack(generator);
        let mut cur = ctx.one();
        for i in 0..order {
            let idx = ctx.pack(&cur);
            exp.push(idx as u32);
            log[idx as usize] = i as u32;
            cur = ctx.mul(&cur, &g);
        }

        Ok(FieldSpec(Arc::new(Inner {
            p,
            k,
            modulus: Some(modulus),
            q,
            generator: FieldElement(generator),
            factors,
            tables: Some(LogTables { exp, log }),
        })))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn k(&self) -> u32 {
        self.0.k
    }

    pub fn q(&self) -> u64 {
        self.0.q
    }

    /// Order of the unit group, `q - 1`.
    pub fn order(&self) -> u64 {
        self.0.q - 1
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.k == 1
    }

    /// Modulus coefficients lowest degree first (extension fields only).
    pub fn modulus(&self) -> Option<&[u64]> {
        self.0.modulus.as_deref()
    }

    pub fn generator(&self) -> FieldElement {
        self.0.generator
    }

    /// Prime factorization of `q - 1`.
    pub fn group_order_factors(&self) -> &[(u64, u32)] {
        &self.0.factors
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// The image of an integer in the prime subfield.
    pub fn element(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.0.p as i64) as u64)
    }

    /// The element with the given big-integer value, reduced into the prime subfield.
    pub fn element_from_i128(&self, n: i128) -> FieldElement {
        FieldElement(n.rem_euclid(self.0.p as i128) as u64)
    }

    /// Element from a coefficient vector `[c_0, c_1, ...]` (at most `k` entries).
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<FieldElement> {
        if coeffs.len() > self.0.k as usize {
            return Err(Error::Parse(format!(
                "element has {} coefficients but the field has degree {}",
                coeffs.len(),
                self.0.k
            )));
        }
        let p = self.0.p;
        let idx = coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * p + c.rem_euclid(p as i64) as u64);
        Ok(FieldElement(idx))
    }

    /// Element from its canonical index, if `index < q`.
    pub fn from_index(&self, index: u64) -> Option<FieldElement> {
        (index < self.0.q).then_some(FieldElement(index))
    }

    /// Coefficient vector of length `k`, lowest degree first.
    pub fn coeffs(&self, x: FieldElement) -> Vec<u64> {
        let p = self.0.p;
        let mut v = x.0;
        (0..self.0.k)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    }

    /// Canonical text form: an integer for prime fields, `[c0,c1,...]` otherwise.
    pub fn format_element(&self, x: FieldElement) -> String {
        if self.is_prime_field() {
            x.0.to_string()
        } else {
            let parts: Vec<String> = self.coeffs(x).iter().map(u64::to_string).collect();
            format!("[{}]", parts.join(","))
        }
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.0.p;
        if self.0.k == 1 {
            let s = a.0 + b.0;
            return FieldElement(if s >= p { s - p } else { s });
        }
        if p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        let (mut x, mut y, mut place, mut out) = (a.0, b.0, 1u64, 0u64);
        for _ in 0..self.0.k {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let p = self.0.p;
        if self.0.k == 1 {
            return FieldElement(if a.0 == 0 { 0 } else { p - a.0 });
        }
        if p == 2 {
            return a;
        }
        let (mut x, mut place, mut out) = (a.0, 1u64, 0u64);
        for _ in 0..self.0.k {
            out += ((p - x % p) % p) * place;
            x /= p;
            place *= p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.0.tables {
            None => FieldElement(a.0 * b.0 % self.0.p),
            Some(t) => {
                if a.0 == 0 || b.0 == 0 {
                    return FieldElement(0);
                }
                let order = self.order();
                let s = t.log[a.0 as usize] as u64 + t.log[b.0 as usize] as u64;
                FieldElement(t.exp[(if s >= order { s - order } else { s }) as usize] as u64)
            }
        }
    }

    /// `a^e` by square-and-multiply, `e >= 0`.
    pub fn pow_u(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return self.one();
        }
        if a.0 == 0 {
            return a;
        }
        let mut e = e % self.order();
        let (mut base, mut acc) = (a, self.one());
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^e` for any integer `e`; negative exponents go through the inverse.
    pub fn pow(&self, a: FieldElement, e: i64) -> Result<FieldElement> {
        if e >= 0 {
            return Ok(self.pow_u(a, e as u64));
        }
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let r = (e as i128).rem_euclid(self.order() as i128) as u64;
        Ok(self.pow_u(a, r))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow_u(a, self.order() - 1))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `g^i` for the field's generator.
    pub fn gen_pow(&self, i: u64) -> FieldElement {
        match &self.0.tables {
            Some(t) => FieldElement(t.exp[(i % self.order()) as usize] as u64),
            None => self.pow_u(self.0.generator, i),
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: FieldElement) -> Result<u64> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let mut ord = self.order();
        for &(l, m) in &self.0.factors {
            for _ in 0..m {
                if self.pow_u(a, ord / l) == self.one() {
                    ord /= l;
                } else {
                    break;
                }
            }
        }
        Ok(ord)
    }

    /// Generator `g^{(q-1)/d}` of the unique subgroup of order `d`.
    pub fn subgroup_generator(&self, d: u64) -> Result<FieldElement> {
        let order = self.order();
        if d == 0 || order % d != 0 {
            return Err(Error::NotADivisor { d, order });
        }
        Ok(self.gen_pow(order / d))
    }

    /// Whether `x` lies in the subgroup of order `d` (`d | q-1`).
    pub fn in_subgroup(&self, x: FieldElement, d: u64) -> bool {
        !x.is_zero() && self.pow_u(x, d) == self.one()
    }
}

/// Arithmetic on packed extension elements during construction, before the
/// log tables exist.
struct PolyCtx<'a> {
    p: u64,
    modulus: &'a [u64],
}

impl PolyCtx<'_> {
    fn k(&self) -> usize {
        self.modulus.len() - 1
    }

    fn one(&self) -> Vec<u64> {
        let mut v = vec![0; self.k()];
        v[0] = 1;
        v
    }

    fn unpack(&self, mut idx: u64) -> Vec<u64> {
        (0..self.k())
            .map(|_| {
                let d = idx % self.p;
                idx /= self.p;
                d
            })
            .collect()
    }

    fn pack(&self, v: &[u64]) -> u64 {
        v.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let k = self.k();
        let p = self.p;
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        // x^k = -(m_0 + ... + m_{k-1} x^{k-1})
        for d in (k..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (i, &m) in self.modulus[..k].iter().enumerate() {
                let idx = d - k + i;
                prod[idx] = (prod[idx] + (p - c) * m) % p;
            }
        }
        prod.truncate(k);
        prod
    }

    fn pow(&self, a: &[u64], mut e: u64) -> Vec<u64> {
        let mut acc = self.one();
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// Irreducibility of a monic polynomial over the prime field `base`.
///
/// Degrees up to 3 are irreducible iff root-free; higher degrees use the
/// Frobenius test `gcd(x^{p^i} - x, m) = 1` for `1 <= i < k`.
pub fn is_irreducible(base: &FieldSpec, modulus: &[u64]) -> bool {
    let k = modulus.len() - 1;
    let m: Vec<FieldElement> = modulus.iter().map(|&c| base.element(c as i64)).collect();
    if k <= 1 {
        return k == 1;
    }
    if k <= 3 {
        let p = base.p();
        return (0..p).all(|x| !dense::eval(base, &m, FieldElement(x)).is_zero());
    }
    let x = vec![base.zero(), base.one()];
    let mut frob = x.clone();
    for _ in 1..k {
        frob = dense::pow_mod(base, &frob, base.p(), &m);
        let diff = dense::sub(base, &frob, &x);
        let g = dense::gcd(base, &m, &diff);
        if dense::degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

fn smallest_irreducible(base: &FieldSpec, k: u32) -> Vec<u64> {
    let p = base.p();
    let count = p.pow(k);
    (0..count)
        .map(|low| {
            let mut m = Vec::with_capacity(k as usize + 1);
            let mut v = low;
            for _ in 0..k {
                m.push(v % p);
                v /= p;
            }
            m.push(1);
            m
        })
        .find(|m| is_irreducible(base, m))
        .expect("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f7() -> FieldSpec {
        FieldSpec::prime(7).unwrap()
    }

    #[test]
    fn prime_field_construction() {
        let f = f7();
        assert_eq!(f.q(), 7);
        assert_eq!(f.generator().index(), 3);
        assert_eq!(f.group_order_factors(), &[(2, 1), (3, 1)]);

        let f2 = FieldSpec::prime(2).unwrap();
        assert_eq!(f2.generator().index(), 1);
        assert_eq!(f2.order(), 1);

        assert_eq!(FieldSpec::prime(6).unwrap_err(), Error::NotPrime(6));
    }

    #[test]
    fn smallest_generator_is_chosen() {
        for p in [3u64, 5, 11, 13, 101, 4093] {
            let f = FieldSpec::prime(p).unwrap();
            let g = f.generator();
            assert_eq!(f.element_order(g).unwrap(), p - 1);
            for c in 1..g.index() {
                assert!(f.element_order(FieldElement(c)).unwrap() < p - 1);
            }
        }
    }

    #[test]
    fn extension_construction() {
        let f9 = FieldSpec::extension(3, 2, Some(&[1, 0, 1])).unwrap();
        assert_eq!(f9.q(), 9);
        let x = f9.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(f9.mul(x, x), f9.element(-1));
        assert_eq!(f9.mul(x, x), f9.element(2));

        assert_eq!(
            FieldSpec::extension(3, 2, Some(&[2, 0, 1])).unwrap_err(),
            Error::ReducibleModulus(3)
        );

        let f8 = FieldSpec::extension(2, 3, None).unwrap();
        assert_eq!(f8.modulus(), Some(&[1, 1, 0, 1][..]));
        assert_eq!(f8.element_order(f8.generator()).unwrap(), 7);
    }

    #[test]
    fn extension_errors() {
        assert_eq!(FieldSpec::extension(4, 2, None).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(
            FieldSpec::extension(3, 2, Some(&[1, 0, 2])),
            Err(Error::InvalidModulus(_))
        ));
        assert!(matches!(FieldSpec::extension(2, 21, None), Err(Error::FieldTooLarge { .. })));
    }

    #[test]
    fn frobenius_test_on_degree_four() {
        let f2 = FieldSpec::prime(2).unwrap();
        // x^4 + x + 1 is irreducible; (x^2 + x + 1)^2 = x^4 + x^2 + 1 is root-free but reducible.
        assert!(is_irreducible(&f2, &[1, 1, 0, 0, 1]));
        assert!(!is_irreducible(&f2, &[1, 0, 1, 0, 1]));
        let f16 = FieldSpec::extension(2, 4, None).unwrap();
        assert_eq!(f16.modulus(), Some(&[1, 1, 0, 0, 1][..]));
        let f81 = FieldSpec::extension(3, 4, None).unwrap();
        assert_eq!(f81.element_order(f81.generator()).unwrap(), 80);
    }

    #[test]
    fn arithmetic_examples() {
        let f = f7();
        assert_eq!(f.inv(f.element(3)).unwrap(), f.element(5));
        assert_eq!(f.inv(f.zero()).unwrap_err(), Error::DivisionByZero);
        for x in 1..7 {
            assert_eq!(f.pow(f.element(x), 0).unwrap(), f.one());
        }
        assert_eq!(f.pow(f.element(3), -1).unwrap(), f.element(5));
        assert_eq!(f.pow(f.zero(), -2).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn subgroups() {
        let f = f7();
        let h = f.subgroup_generator(3).unwrap();
        assert_eq!(h, f.element(2));
        assert_eq!(f.subgroup_generator(1).unwrap(), f.one());
        assert_eq!(f.subgroup_generator(4).unwrap_err(), Error::NotADivisor { d: 4, order: 6 });
    }

    #[test]
    fn extension_field_axioms() {
        let f = FieldSpec::extension(5, 2, None).unwrap();
        for a in 0..25 {
            let a = FieldElement(a);
            assert_eq!(f.add(a, f.neg(a)), f.zero());
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            }
            for b in 0..25 {
                let b = FieldElement(b);
                assert_eq!(f.add(a, b), f.add(b, a));
                let c = f.element(3);
                assert_eq!(f.mul(f.add(a, b), c), f.add(f.mul(a, c), f.mul(b, c)));
            }
        }
    }

    proptest! {
        #[test]
        fn pow_adds_exponents(p_idx in 0usize..4, x in 1u64..1000, m in -50i64..50, n in -50i64..50) {
            let fields = [
                FieldSpec::prime(13).unwrap(),
                FieldSpec::prime(1009).unwrap(),
                FieldSpec::extension(3, 3, None).unwrap(),
                FieldSpec::extension(2, 5, None).unwrap(),
            ];
            let f = &fields[p_idx];
            let x = FieldElement(1 + x % (f.q() - 1));
            let lhs = f.mul(f.pow(x, m).unwrap(), f.pow(x, n).unwrap());
            prop_assert_eq!(lhs, f.pow(x, m + n).unwrap());
        }

        #[test]
        fn generator_has_full_order(start in 2u64..PRIME_FIELD_LIMIT - 1000) {
            let p = (start..).find(|&n| is_prime(n)).unwrap();
            let f = FieldSpec::prime(p).unwrap();
            let g = f.generator();
            prop_assert_eq!(f.pow_u(g, p - 1), f.one());
            for &(l, _) in f.group_order_factors() {
                prop_assert_ne!(pow_mod(g.index(), (p - 1) / l, p), 1);
            }
        }

        #[test]
        fn extension_generator_has_full_order(
            (p, k) in prop::sample::select(vec![(2u64, 2u32), (2, 7), (2, 10), (3, 3), (3, 5), (5, 3), (7, 2), (11, 3), (31, 2), (251, 2)])
        ) {
            let f = FieldSpec::extension(p, k, None).unwrap();
            let g = f.generator();
            let n = f.order();
            // schoolbook multiplication mod the modulus, independent of the log tables
            let m = f.modulus().unwrap().to_vec();
            let gc = f.coeffs(g);
            let mul = |a: &[u64], b: &[u64]| -> Vec<u64> {
                let mut r = vec![0u64; 2 * k as usize];
                for (i, &x) in a.iter().enumerate() {
                    for (j, &y) in b.iter().enumerate() {
                        r[i + j] = (r[i + j] + x * y) % p;
                    }
                }
                for d in (k as usize..r.len()).rev() {
                    let c = r[d];
                    for (i, &mi) in m.iter().enumerate().take(k as usize) {
                        r[d - k as usize + i] = (r[d - k as usize + i] + (p - mi) * c) % p;
                    }
                    r[d] = 0;
                }
                r.truncate(k as usize);
                r
            };
            let mut one = vec![0u64; k as usize];
            one[0] = 1;
            let mut x = one.clone();
            let mut first_return = 0;
            for i in 1..=n {
                x = mul(&x, &gc);
                if x == one {
                    first_return = i;
                    break;
                }
            }
            prop_assert_eq!(first_return, n);
        }

        #[test]
        fn subgroup_generator_has_exact_order(p in prop::sample::select(vec![7u64, 13, 31, 97, 241, 1009])) {
            let f = FieldSpec::prime(p).unwrap();
            for d in (1..p).filter(|d| (p - 1) % d == 0) {
                let h = f.subgroup_generator(d).unwrap();
                prop_assert_eq!(f.pow_u(h, d), f.one());
                for &(l, _) in &factorize(d) {
                    prop_assert_ne!(f.pow_u(h, d / l), f.one());
                }
            }
        }
    }
}
