//! Integer helpers: gcd/lcm, trial-division factorization, divisor lists.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

pub fn gcd_all<I: IntoIterator<Item = u64>>(values: I) -> u64 {
    values.into_iter().fold(0, gcd)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization by trial division, primes ascending.
///
/// `factorize(1)` is empty. Intended for `n < 2^63`; cost is `O(sqrt(n))`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorize requires n >= 1");
    let mut out = Vec::new();
    let mut push = |p: u64, n: &mut u64| {
        let mut m = 0;
        while *n % p == 0 {
            *n /= p;
            m += 1;
        }
        if m > 0 {
            out.push((p, m));
        }
    };
    push(2, &mut n);
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        push(d, &mut n);
        d += 2;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All divisors of the number with the given factorization, ascending.
pub fn divisors_from_factors(factors: &[(u64, u32)]) -> Vec<u64> {
    let mut divs = vec![1u64];
    for &(p, m) in factors {
        let len = divs.len();
        let mut pk = 1u64;
        for _ in 0..m {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}

/// Factorization of a divisor `d` of a number whose primes are `primes`.
pub fn factor_divisor(mut d: u64, primes: &[(u64, u32)]) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for &(p, _) in primes {
        let mut m = 0;
        while d % p == 0 {
            d /= p;
            m += 1;
        }
        if m > 0 {
            out.push((p, m));
        }
    }
    debug_assert_eq!(d, 1, "argument was not a divisor");
    out
}

/// Modular exponentiation `base^exp mod m` for `m < 2^32` (products fit in u64).
pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// `n!` as a float; exact for the `r` values that occur in root histograms.
pub fn factorial_f64(n: u64) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * i as f64)
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(6), vec![(2, 1), (3, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(139570), vec![(2, 1), (5, 1), (17, 1), (821, 1)]);
        assert_eq!(factorize(1 << 20), vec![(2, 20)]);
    }

    #[test]
    fn divisors_of_twelve() {
        assert_eq!(divisors_from_factors(&factorize(12)), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors_from_factors(&[]), vec![1]);
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(139571));
        assert!(!is_prime(6));
        assert!(is_prime(2147483647));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(198, 3), 1_274_196);
        assert_eq!(binomial(3, 5), 0);
    }

    proptest! {
        #[test]
        fn factorization_multiplies_out(n in 1u64..5_000_000) {
            let f = factorize(n);
            let prod: u64 = f.iter().map(|&(p, m)| p.pow(m)).product();
            prop_assert_eq!(prod, n);
            for &(p, _) in &f {
                prop_assert!(is_prime(p));
            }
        }

        #[test]
        fn gcd_lcm_product(a in 1u64..100_000, b in 1u64..100_000) {
            prop_assert_eq!(gcd(a, b) as u128 * lcm(a, b) as u128, a as u128 * b as u128);
        }
    }
}
