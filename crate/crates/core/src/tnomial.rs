//! Sparse polynomials `c_1 x^{a_1} + ... + c_t x^{a_t}` viewed as functions
//! on `F_q^*`, and their distinct nonzero roots.

use std::collections::BTreeMap;
use std::fmt;

use crate::dense;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// Largest `q - 1` for the exhaustive root scan.
pub const BRUTEFORCE_LIMIT: u64 = 1 << 22;
/// Largest `q` for the gcd root count (dense intermediates of degree `< q-1`).
pub const GCD_LIMIT: u64 = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Term {
    pub exponent: u64,
    pub coeff: FieldElement,
}

/// A sparse polynomial in canonical functional form: exponents strictly
/// increasing in `[0, q-2]`, every coefficient nonzero, at least one term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TNomial {
    field: FieldSpec,
    terms: Vec<Term>,
}

impl TNomial {
    /// Canonicalizes raw `(exponent, coefficient)` pairs.
    ///
    /// Exponents (negative allowed) are reduced mod `q-1` and colliding terms
    /// merged; merged terms that cancel are dropped. An input coefficient of
    /// zero is rejected outright since it would silently change `t`.
    pub fn build<I>(field: &FieldSpec, raw: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, FieldElement)>,
    {
        let order = field.order() as i128;
        let mut merged: BTreeMap<u64, FieldElement> = BTreeMap::new();
        let mut any = false;
        for (a, c) in raw {
            any = true;
            if c.is_zero() {
                return Err(Error::ZeroCoefficient(a));
            }
            let e = (a as i128).rem_euclid(order) as u64;
            let slot = merged.entry(e).or_insert(field.zero());
            *slot = field.add(*slot, c);
        }
        if !any {
            return Err(Error::EmptyInput);
        }
        let terms: Vec<Term> = merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(exponent, coeff)| Term { exponent, coeff })
            .collect();
        if terms.is_empty() {
            return Err(Error::ZeroFunction);
        }
        Ok(TNomial { field: field.clone(), terms })
    }

    /// Builds from terms already in canonical form.
    pub(crate) fn from_canonical(field: &FieldSpec, terms: Vec<Term>) -> Self {
        debug_assert!(!terms.is_empty());
        debug_assert!(terms.windows(2).all(|w| w[0].exponent < w[1].exponent));
        debug_assert!(terms.iter().all(|t| !t.coeff.is_zero() && t.exponent < field.order().max(1)));
        TNomial { field: field.clone(), terms }
    }

    /// Parses the text form `c1*x^a1 + c2*x^a2 - ...`.
    pub fn parse(field: &FieldSpec, text: &str) -> Result<Self> {
        let raw = Parser::new(field, text).parse()?;
        Self::build(field, raw)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Number of terms `t`.
    pub fn t(&self) -> usize {
        self.terms.len()
    }

    pub fn exponents(&self) -> Vec<u64> {
        self.terms.iter().map(|t| t.exponent).collect()
    }

    pub fn degree(&self) -> u64 {
        self.terms.last().map_or(0, |t| t.exponent)
    }

    /// Divides out `x^{a_1}` so the lowest exponent is 0.
    pub fn normalize_lowest(&self) -> TNomial {
        let low = self.terms[0].exponent;
        let terms = self
            .terms
            .iter()
            .map(|t| Term { exponent: t.exponent - low, coeff: t.coeff })
            .collect();
        TNomial { field: self.field.clone(), terms }
    }

    pub fn is_normalized(&self) -> bool {
        self.terms[0].exponent == 0
    }

    pub fn evaluate(&self, x: FieldElement) -> FieldElement {
        let f = &self.field;
        self.terms
            .iter()
            .fold(f.zero(), |acc, t| f.add(acc, f.mul(t.coeff, f.pow_u(x, t.exponent))))
    }

    /// `c * f` for a nonzero scalar.
    pub fn scale(&self, c: FieldElement) -> Result<TNomial> {
        if c.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term { exponent: t.exponent, coeff: self.field.mul(t.coeff, c) })
            .collect();
        Ok(TNomial { field: self.field.clone(), terms })
    }

    /// `f(g^s x)`.
    pub fn substitute_shift(&self, s: u64) -> TNomial {
        let f = &self.field;
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                exponent: t.exponent,
                coeff: f.mul(t.coeff, f.gen_pow(s.wrapping_mul(t.exponent) % f.order().max(1))),
            })
            .collect();
        TNomial { field: f.clone(), terms }
    }

    /// Indices `j` with `f(g^j) = 0`, ascending.
    ///
    /// Walks `x = g^0, g^1, ...` keeping each term's running value
    /// `c_i x^{a_i}` and multiplying it by `g^{a_i}` at each step.
    pub fn root_exponents(&self) -> Result<Vec<u64>> {
        let mut out = Vec::new();
        self.scan_roots(|j| out.push(j))?;
        Ok(out)
    }

    /// `R(f)`: number of distinct roots in `F_q^*`, by exhaustive scan.
    pub fn count_roots_bruteforce(&self) -> Result<u64> {
        let mut count = 0;
        self.scan_roots(|_| count += 1)?;
        Ok(count)
    }

    fn scan_roots(&self, mut on_root: impl FnMut(u64)) -> Result<()> {
        let f = &self.field;
        let n = f.order();
        if n > BRUTEFORCE_LIMIT {
            return Err(Error::FieldTooLarge { q: f.q(), limit: BRUTEFORCE_LIMIT + 1 });
        }
        if self.terms.len() == 1 {
            return Ok(());
        }
        let g = f.generator();
        if f.is_prime_field() {
            let p = f.p();
            let mut cur: Vec<u64> = self.terms.iter().map(|t| t.coeff.index()).collect();
            let step: Vec<u64> = self.terms.iter().map(|t| f.pow_u(g, t.exponent).index()).collect();
            for j in 0..n {
                let mut s = 0u64;
                for (c, st) in cur.iter_mut().zip(&step) {
                    s += *c;
                    *c = *c * st % p;
                }
                if s % p == 0 {
                    on_root(j);
                }
            }
        } else {
            let mut cur: Vec<FieldElement> = self.terms.iter().map(|t| t.coeff).collect();
            let step: Vec<FieldElement> = self.terms.iter().map(|t| f.pow_u(g, t.exponent)).collect();
            for j in 0..n {
                let mut s = f.zero();
                for (c, &st) in cur.iter_mut().zip(&step) {
                    s = f.add(s, *c);
                    *c = f.mul(*c, st);
                }
                if s.is_zero() {
                    on_root(j);
                }
            }
        }
        Ok(())
    }

    /// `R(f)` as `deg gcd(f, x^{q-1} - 1)`.
    ///
    /// Computes `x^{q-1}` modulo the normalized, monic `f` by square-and-multiply
    /// with sparse reduction, then takes one dense gcd.
    pub fn count_roots_gcd(&self) -> Result<u64> {
        let f = &self.field;
        if f.q() > GCD_LIMIT {
            return Err(Error::FieldTooLarge { q: f.q(), limit: GCD_LIMIT });
        }
        let norm = self.normalize_lowest();
        let d = norm.degree() as usize;
        if d == 0 {
            return Ok(0);
        }
        let lead_inv = f.inv(norm.terms[norm.t() - 1].coeff)?;
        let lower: Vec<(usize, FieldElement)> = norm.terms[..norm.t() - 1]
            .iter()
            .map(|t| (t.exponent as usize, f.mul(t.coeff, lead_inv)))
            .collect();
        let xq = dense::x_pow_mod_sparse(f, &lower, d, f.order());
        let h = dense::sub(f, &xq, &[f.one()]);

        let mut monic = vec![f.zero(); d + 1];
        for &(a, c) in &lower {
            monic[a] = c;
        }
        monic[d] = f.one();
        if h.is_empty() {
            return Ok(d as u64);
        }
        let g = dense::gcd(f, &monic, &h);
        Ok(dense::degree(&g).unwrap_or(0) as u64)
    }
}

impl fmt::Display for TNomial {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                out.write_str(" + ")?;
            }
            write!(out, "{}*x^{}", self.field.format_element(t.coeff), t.exponent)?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    field: &'a FieldSpec,
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(field: &'a FieldSpec, text: &'a str) -> Self {
        Parser { field, src: text.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse(format!("{msg} at offset {}", self.pos)))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<i128> {
        let neg = self.eat(b'-');
        self.skip_ws();
        let start = self.pos;
        let mut v: i128 = 0;
        while let Some(&b) = self.src.get(self.pos) {
            if !b.is_ascii_digit() {
                break;
            }
            v = v
                .checked_mul(10)
                .and_then(|v| v.checked_add((b - b'0') as i128))
                .ok_or_else(|| Error::Parse("integer too large".into()))?;
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected integer");
        }
        Ok(if neg { -v } else { v })
    }

    fn coefficient(&mut self) -> Result<Option<FieldElement>> {
        match self.peek() {
            Some(b'[') => {
                self.pos += 1;
                let mut parts = vec![self.integer()?];
                while self.eat(b',') {
                    parts.push(self.integer()?);
                }
                if !self.eat(b']') {
                    return self.err("expected ']'");
                }
                let p = self.field.p() as i128;
                let reduced: Vec<i64> = parts.iter().map(|c| c.rem_euclid(p) as i64).collect();
                Ok(Some(self.field.from_coeffs(&reduced)?))
            }
            Some(b) if b.is_ascii_digit() => Ok(Some(self.field.element_from_i128(self.integer()?))),
            _ => Ok(None),
        }
    }

    fn term(&mut self) -> Result<(i64, FieldElement)> {
        let coeff = self.coefficient()?;
        let has_star = coeff.is_some() && self.eat(b'*');
        let exponent = if self.eat(b'x') {
            if self.eat(b'^') {
                let paren = self.eat(b'(');
                let e = self.integer()?;
                if paren && !self.eat(b')') {
                    return self.err("expected ')'");
                }
                e
            } else {
                1
            }
        } else if has_star || coeff.is_none() {
            return self.err("expected 'x'");
        } else {
            0
        };
        let order = self.field.order().max(1) as i128;
        let exponent = exponent.rem_euclid(order) as i64;
        Ok((exponent, coeff.unwrap_or(self.field.one())))
    }

    fn parse(mut self) -> Result<Vec<(i64, FieldElement)>> {
        let mut out = Vec::new();
        let mut negate = self.eat(b'-');
        if !negate {
            self.eat(b'+');
        }
        loop {
            let (e, c) = self.term()?;
            out.push((e, if negate { self.field.neg(c) } else { c }));
            if self.eat(b'+') {
                negate = false;
            } else if self.eat(b'-') {
                negate = true;
            } else {
                break;
            }
        }
        if self.peek().is_some() {
            return self.err("unexpected trailing input");
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f7() -> FieldSpec {
        FieldSpec::prime(7).unwrap()
    }

    fn poly(f: &FieldSpec, s: &str) -> TNomial {
        TNomial::parse(f, s).unwrap()
    }

    #[test]
    fn build_canonicalizes() {
        let f = f7();
        let one = f.one();
        let p = TNomial::build(&f, [(0, one), (6, one)]).unwrap();
        assert_eq!(p.terms(), &[Term { exponent: 0, coeff: f.element(2) }]);
        assert_eq!(TNomial::build(&f, [(0, one), (6, f.element(6))]).unwrap_err(), Error::ZeroFunction);
        let p = TNomial::build(&f, [(3, one), (0, one)]).unwrap();
        assert_eq!(p.exponents(), vec![0, 3]);
        assert_eq!(TNomial::build(&f, []).unwrap_err(), Error::EmptyInput);
        assert_eq!(TNomial::build(&f, [(2, f.zero())]).unwrap_err(), Error::ZeroCoefficient(2));
        let laurent = TNomial::build(&f, [(-3, one), (0, one)]).unwrap();
        assert_eq!(laurent.exponents(), vec![0, 3]);
    }

    #[test]
    fn normalize_examples() {
        let f = f7();
        assert_eq!(poly(&f, "x^5 + x^3").normalize_lowest(), poly(&f, "x^2 + 1"));
        assert_eq!(poly(&f, "x^3 + 1").normalize_lowest(), poly(&f, "x^3 + 1"));
        let m = poly(&f, "x^4").normalize_lowest();
        assert_eq!(m, poly(&f, "1"));
        assert_eq!(m.count_roots_bruteforce().unwrap(), 0);
    }

    #[test]
    fn evaluate_examples() {
        let f = f7();
        let p = poly(&f, "x^3 + 1");
        assert_eq!(p.evaluate(f.element(3)), f.zero());
        assert_eq!(p.evaluate(f.element(2)), f.element(2));
        let q = poly(&f, "2x^5 + 3x + 4");
        assert_eq!(q.evaluate(f.one()), f.element(9));
    }

    #[test]
    fn root_count_examples() {
        let f = f7();
        let p = poly(&f, "x^3 + 1");
        assert_eq!(p.count_roots_bruteforce().unwrap(), 3);
        let roots: Vec<u64> = p.root_exponents().unwrap().iter().map(|&j| f.gen_pow(j).index()).collect();
        let mut roots = roots;
        roots.sort();
        assert_eq!(roots, vec![3, 5, 6]);
        assert_eq!(p.count_roots_gcd().unwrap(), 3);

        assert_eq!(poly(&f, "5x^4").count_roots_bruteforce().unwrap(), 0);
        assert_eq!(poly(&f, "x^4 + x^2 + 1").count_roots_bruteforce().unwrap(), 4);
        assert_eq!(poly(&f, "x^2 + 1").count_roots_gcd().unwrap(), 0);
        assert_eq!(poly(&f, "x^2 + 1").count_roots_bruteforce().unwrap(), 0);
        for q in [3u64, 7, 101] {
            let fq = FieldSpec::prime(q).unwrap();
            assert_eq!(poly(&fq, "x - 1").count_roots_gcd().unwrap(), 1);
        }
    }

    #[test]
    fn extension_root_count() {
        let f9 = FieldSpec::extension(3, 2, Some(&[1, 0, 1])).unwrap();
        let p = poly(&f9, "x^3 + x + 1");
        assert_eq!(p.count_roots_bruteforce().unwrap(), 3);
        assert_eq!(p.count_roots_gcd().unwrap(), 3);
        let c = poly(&f9, "[1,2]*x^2 + [0,1]");
        assert_eq!(c.count_roots_gcd().unwrap(), c.count_roots_bruteforce().unwrap());
    }

    #[test]
    fn size_limits() {
        let big = FieldSpec::prime(65537).unwrap();
        assert!(matches!(poly(&big, "x + 1").count_roots_gcd(), Err(Error::FieldTooLarge { .. })));
        let huge = FieldSpec::prime(2147483647).unwrap();
        assert!(matches!(poly(&huge, "x + 1").count_roots_bruteforce(), Err(Error::FieldTooLarge { .. })));
    }

    #[test]
    fn parse_and_display() {
        let f = f7();
        let p = poly(&f, "3*x^2 - x + 5");
        assert_eq!(p.to_string(), "5*x^0 + 6*x^1 + 3*x^2");
        assert_eq!(poly(&f, &p.to_string()), p);
        assert_eq!(poly(&f, "-x^(-1) + 2"), poly(&f, "6x^5 + 2"));
        assert_eq!(poly(&f, "x^9"), poly(&f, "x^3"));
        assert!(matches!(TNomial::parse(&f, "x^"), Err(Error::Parse(_))));
        assert!(matches!(TNomial::parse(&f, "3*"), Err(Error::Parse(_))));
        assert!(matches!(TNomial::parse(&f, "x + y"), Err(Error::Parse(_))));
        assert!(matches!(TNomial::parse(&f, "0*x"), Err(Error::ZeroCoefficient(1))));

        let f9 = FieldSpec::extension(3, 2, None).unwrap();
        let e = poly(&f9, "[1,2]*x^3 + [0,1]");
        assert_eq!(e.to_string(), "[0,1]*x^0 + [1,2]*x^3");
        assert_eq!(poly(&f9, &e.to_string()), e);
    }

    fn arb_poly(q: u64) -> impl Strategy<Value = Vec<(i64, i64)>> {
        prop::collection::vec((0i64..3 * q as i64, 1i64..q as i64), 1..7)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn gcd_matches_bruteforce(q in prop::sample::select(vec![5u64, 13, 31, 257, 1021, 8191]), raw in arb_poly(8191)) {
            let f = FieldSpec::prime(q).unwrap();
            let raw: Vec<(i64, FieldElement)> = raw.iter().map(|&(a, c)| (a, f.element(1 + c % (q as i64 - 1)))).collect();
            if let Ok(p) = TNomial::build(&f, raw) {
                prop_assert_eq!(p.count_roots_gcd().unwrap(), p.count_roots_bruteforce().unwrap());
            }
        }

        #[test]
        fn root_count_invariances(raw in arb_poly(101), s in 0u64..100, c in 1i64..101, bump in 0usize..6) {
            let f = FieldSpec::prime(101).unwrap();
            let terms: Vec<(i64, FieldElement)> = raw.iter().map(|&(a, c)| (a, f.element(c))).collect();
            let Ok(p) = TNomial::build(&f, terms.clone()) else { return Ok(()); };
            let r = p.count_roots_bruteforce().unwrap();
            prop_assert_eq!(p.normalize_lowest().count_roots_bruteforce().unwrap(), r);
            prop_assert_eq!(p.scale(f.element(c)).unwrap().count_roots_bruteforce().unwrap(), r);
            prop_assert_eq!(p.substitute_shift(s).count_roots_bruteforce().unwrap(), r);
            let mut shifted = terms;
            let i = bump % shifted.len();
            shifted[i].0 += 100;
            prop_assert_eq!(TNomial::build(&f, shifted).unwrap().count_roots_bruteforce().unwrap(), r);
        }
    }
}
