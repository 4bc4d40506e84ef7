//! Exact arbitrary-precision arithmetic: rationals, combinatorial
//! primitives, and the precision-tagged real type.
//!
//! [`Rational`] (an alias for `num::BigRational`) is the coefficient field of
//! every series in the crate; it is always kept in lowest terms with a
//! positive denominator by construction. [`PrecReal`] is a binary big-float
//! with an explicit precision tag; see [`precreal`].

mod consts;
mod precreal;

pub use consts::{const_real, ln2, mu0, parse_constant, pi, zeta_int, Constant};
pub use precreal::PrecReal;

use num::bigint::Sign;
use num::{BigInt, BigRational, Integer, One, Signed, Zero};

/// Exact rational number in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Shorthand for a small rational p/q.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Shorthand for an integer as a rational.
pub fn rat_int(p: i64) -> Rational {
    Rational::from(BigInt::from(p))
}

/// True when `r` is an integer `<= 0`.
pub fn is_nonpositive_integer(r: &Rational) -> bool {
    r.is_integer() && !r.numer().is_positive()
}

/// Binomial coefficient C(n, k), zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// n! as a big integer.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for j in 2..=n {
        acc *= BigInt::from(j);
    }
    acc
}

/// Rising factorial (a)_n = a(a+1)...(a+n-1), with (a)_0 = 1.
pub fn pochhammer(a: &Rational, n: u64) -> Rational {
    let mut acc = Rational::one();
    let mut term = a.clone();
    for _ in 0..n {
        acc *= &term;
        term += Rational::one();
    }
    acc
}

/// Least common multiple of 1..=n.
pub fn lcm_upto(n: u64) -> BigInt {
    assert!(n >= 1, "lcm_upto requires n >= 1");
    let mut acc = BigInt::one();
    for j in 2..=n {
        acc = acc.lcm(&BigInt::from(j));
    }
    acc
}

/// Sum of the k-th powers of the divisors of n.
///
/// Computed from the prime factorization (the tests cross-check against a
/// plain divisor enumeration).
pub fn divisor_sigma(k: u32, n: u64) -> BigInt {
    assert!(n >= 1, "divisor_sigma requires n >= 1");
    let mut acc = BigInt::one();
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            acc *= sigma_prime_power(k, p, e);
        }
        p += 1;
    }
    if m > 1 {
        acc *= sigma_prime_power(k, m, 1);
    }
    acc
}

/// sigma_k over a prime power: 1 + p^k + ... + p^(ek).
fn sigma_prime_power(k: u32, p: u64, e: u32) -> BigInt {
    let mut acc = BigInt::one();
    let pk = BigInt::from(p).pow(k);
    let mut cur = BigInt::one();
    for _ in 0..e {
        cur *= &pk;
        acc += &cur;
    }
    acc
}

/// Greatest integer r with r*r <= n, for big integers `n >= 0`.
pub fn isqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "isqrt of a negative integer");
    BigInt::from_biguint(Sign::Plus, n.magnitude().sqrt())
}

/// If n is a perfect square, its exact square root.
pub fn perfect_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = isqrt(n);
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Pascal-triangle oracle, independent of the multiplicative formula.
    fn binomial_pascal(n: u64, k: u64) -> BigInt {
        let mut row = vec![BigInt::one()];
        for _ in 0..n {
            let mut next = vec![BigInt::one()];
            for i in 1..row.len() {
                next.push(&row[i - 1] + &row[i]);
            }
            next.push(BigInt::one());
            row = next;
        }
        row[k as usize].clone()
    }

    #[test]
    fn binomial_small_cases() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(10, 0), BigInt::from(1));
        assert_eq!(binomial(6, 3), binomial_pascal(6, 3));
        assert_eq!(binomial(6, 3), BigInt::from(20));
        assert_eq!(binomial(5, -1), BigInt::zero());
        assert_eq!(binomial(5, 6), BigInt::zero());
    }

    #[test]
    fn binomial_matches_pascal() {
        for n in 0..=12 {
            for k in 0..=n {
                assert_eq!(binomial(n, k as i64), binomial_pascal(n, k));
            }
        }
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&rat_int(1), 5), rat_int(120));
        assert_eq!(pochhammer(&rat(1, 2), 2), rat(3, 4));
        assert_eq!(pochhammer(&rat(-7, 3), 0), Rational::one());
    }

    #[test]
    fn lcm_examples() {
        // brute-force oracle: fold lcm over 1..=n by trial multiples
        fn lcm_brute(n: u64) -> BigInt {
            let mut m = 1u128;
            for j in 1..=n as u128 {
                let mut c = m;
                while c % j != 0 {
                    c += m;
                }
                m = c;
            }
            BigInt::from(m)
        }
        assert_eq!(lcm_upto(1), BigInt::one());
        assert_eq!(lcm_upto(6), lcm_brute(6));
        assert_eq!(lcm_upto(6), BigInt::from(60));
        assert_eq!(lcm_upto(10), lcm_brute(10));
        assert_eq!(lcm_upto(10), BigInt::from(2520));
    }

    #[test]
    fn lcm_divisibility_chain() {
        let mut prev = lcm_upto(1);
        for n in 2..=200 {
            let cur = lcm_upto(n);
            assert!(
                (&cur % &prev).is_zero(),
                "lcm_upto({}) not divisible by lcm_upto({})",
                n,
                n - 1
            );
            prev = cur;
        }
    }

    #[test]
    fn divisor_sigma_examples() {
        // divisor-enumeration oracle
        fn sigma_brute(k: u32, n: u64) -> BigInt {
            let mut s = BigInt::zero();
            for d in 1..=n {
                if n % d == 0 {
                    s += BigInt::from(d).pow(k);
                }
            }
            s
        }
        assert_eq!(divisor_sigma(0, 6), BigInt::from(4));
        assert_eq!(divisor_sigma(2, 4), BigInt::from(21));
        assert_eq!(divisor_sigma(2, 1), BigInt::from(1));
        for n in 1..=200 {
            for k in 0..=3 {
                assert_eq!(divisor_sigma(k, n), sigma_brute(k, n), "sigma_{}({})", k, n);
            }
        }
    }

    #[test]
    fn perfect_square_detection() {
        assert_eq!(perfect_sqrt(&BigInt::from(1)), Some(BigInt::from(1)));
        assert_eq!(perfect_sqrt(&BigInt::from(1152)), None);
        assert_eq!(perfect_sqrt(&BigInt::from(1156)), Some(BigInt::from(34)));
    }

    proptest! {
        // (a)_{m+n} = (a)_m (a+m)_n
        #[test]
        fn pochhammer_composition(p in -20i64..20, q in 1i64..7, m in 0u64..20, n in 0u64..20) {
            let a = rat(p, q);
            let lhs = pochhammer(&a, m + n);
            let rhs = pochhammer(&a, m) * pochhammer(&(a.clone() + rat_int(m as i64)), n);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
