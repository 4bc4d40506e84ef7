//! Named constants and transcendental evaluation for [`PrecReal`]:
//! pi by the arithmetic-geometric mean, zeta(s) at integer s by
//! Euler-Maclaurin summation with an explicit tail bound, and natural
//! logarithms by argument reduction plus the atanh series.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num::{BigInt, One, Signed, Zero};

use crate::error::Error;
use crate::exactnum::{PrecReal, Rational};
use crate::Result;

/// Named constants accepted by [`const_real`].
#[derive(Clone, Debug, PartialEq)]
pub enum Constant {
    Pi,
    /// zeta(s) for integer s >= 2.
    Zeta(u32),
    /// sqrt(r) for rational r > 0.
    Sqrt(Rational),
    /// log(r) for rational r > 0.
    Log(Rational),
    /// The irrationality-exponent constant 1 + (4 log(sqrt(2)+1) + 3) / (4 log(sqrt(2)+1) - 3).
    Mu0,
}

/// Evaluates a named constant at `prec` bits.
pub fn const_real(c: &Constant, prec: u32) -> Result<PrecReal> {
    match c {
        Constant::Pi => Ok(pi(prec)),
        Constant::Zeta(s) => {
            if *s < 2 {
                return Err(Error::InvalidParameter(format!("zeta({}) needs s >= 2", s)));
            }
            Ok(zeta_int(*s, prec))
        }
        Constant::Sqrt(r) => {
            if !r.is_positive() {
                return Err(Error::InvalidParameter(format!("sqrt of nonpositive {}", r)));
            }
            Ok(PrecReal::from_rational(r, prec + 8).sqrt().round_to(prec))
        }
        Constant::Log(r) => {
            if !r.is_positive() {
                return Err(Error::InvalidParameter(format!("log of nonpositive {}", r)));
            }
            Ok(PrecReal::from_rational(r, prec + 16).ln().round_to(prec))
        }
        Constant::Mu0 => Ok(mu0(prec)),
    }
}

/// Parses a constant name as used by the CLI: `pi`, `mu0`, `zeta(3)`,
/// `sqrt(2)`, `sqrt(5/3)`, `log(2)`, ...
pub fn parse_constant(name: &str) -> Result<Constant> {
    let name = name.trim();
    match name {
        "pi" => return Ok(Constant::Pi),
        "mu0" => return Ok(Constant::Mu0),
        _ => {}
    }
    let parse_rat = |s: &str| -> Result<Rational> {
        let mk_err = || Error::UnknownConstant(name.to_string());
        if let Some((p, q)) = s.split_once('/') {
            let pn: i64 = p.trim().parse().map_err(|_| mk_err())?;
            let qn: i64 = q.trim().parse().map_err(|_| mk_err())?;
            if qn == 0 {
                return Err(mk_err());
            }
            Ok(Rational::new(BigInt::from(pn), BigInt::from(qn)))
        } else {
            let pn: i64 = s.trim().parse().map_err(|_| mk_err())?;
            Ok(Rational::from(BigInt::from(pn)))
        }
    };
    for (prefix, build) in [
        ("zeta(", 0u8),
        ("sqrt(", 1u8),
        ("log(", 2u8),
    ] {
        if let Some(rest) = name.strip_prefix(prefix) {
            if let Some(inner) = rest.strip_suffix(')') {
                return match build {
                    0 => {
                        let s: u32 = inner
                            .trim()
                            .parse()
                            .map_err(|_| Error::UnknownConstant(name.to_string()))?;
                        Ok(Constant::Zeta(s))
                    }
                    1 => Ok(Constant::Sqrt(parse_rat(inner)?)),
                    _ => Ok(Constant::Log(parse_rat(inner)?)),
                };
            }
        }
    }
    Err(Error::UnknownConstant(name.to_string()))
}

// ---------------------------------------------------------------------------
// pi via the Gauss-Legendre AGM iteration
// ---------------------------------------------------------------------------

fn pi_cache() -> &'static Mutex<HashMap<u32, PrecReal>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, PrecReal>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// pi at `prec` bits.
pub fn pi(prec: u32) -> PrecReal {
    if let Some(v) = pi_cache().lock().unwrap().get(&prec) {
        return v.clone();
    }
    let w = prec + 32;
    let mut a = PrecReal::one(w);
    let mut b = PrecReal::from_rational(&Rational::new(BigInt::one(), BigInt::from(2)), w).sqrt();
    let mut t = PrecReal::one(w).mul_pow2(-2);
    let mut pow = 0i64;
    for _ in 0..(64 + w.ilog2()) {
        let an = a.add(&b).mul_pow2(-1);
        let bn = a.mul(&b).sqrt();
        let d = a.sub(&an);
        t = t.sub(&d.mul(&d).mul_pow2(pow));
        pow += 1;
        let gap = a.sub(&b).abs();
        a = an;
        b = bn;
        if !gap.is_zero() && gap.hi_exp() < -(w as i64) {
            break;
        }
        if gap.is_zero() {
            break;
        }
    }
    let s = a.add(&b);
    let out = s.mul(&s).div(&t).mul_pow2(-2).round_to(prec);
    pi_cache().lock().unwrap().insert(prec, out.clone());
    out
}

// ---------------------------------------------------------------------------
// Natural logarithm: x = f * 2^g with f in [sqrt(2)/2, sqrt(2)), then
// ln x = g ln 2 + 2 atanh((f-1)/(f+1)), |u| <= 3 - 2 sqrt(2) ~ 0.1716.
// ---------------------------------------------------------------------------

fn ln2_cache() -> &'static Mutex<HashMap<u32, PrecReal>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, PrecReal>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// ln 2 = 2 atanh(1/3).
pub fn ln2(prec: u32) -> PrecReal {
    if let Some(v) = ln2_cache().lock().unwrap().get(&prec) {
        return v.clone();
    }
    let w = prec + 32;
    let third = PrecReal::from_rational(&Rational::new(BigInt::one(), BigInt::from(3)), w);
    let out = atanh_series(&third).mul_pow2(1).round_to(prec);
    ln2_cache().lock().unwrap().insert(prec, out.clone());
    out
}

/// atanh by its odd power series; requires |u| < 1/2.
fn atanh_series(u: &PrecReal) -> PrecReal {
    let w = u.prec();
    let u2 = u.mul(u);
    let mut upow = u.clone();
    let mut acc = PrecReal::zero(w);
    let mut k = 0i64;
    loop {
        let term = upow.div(&PrecReal::from_int(2 * k + 1, w));
        acc = acc.add(&term);
        if term.is_zero() || term.hi_exp() < -(w as i64) - 4 {
            return acc;
        }
        upow = upow.mul(&u2);
        k += 1;
        assert!(k < 10 * w as i64, "atanh series failed to converge");
    }
}

impl PrecReal {
    /// Natural logarithm; panics on nonpositive input.
    pub fn ln(&self) -> PrecReal {
        assert!(self.is_positive(), "ln of a nonpositive PrecReal");
        let prec = self.prec();
        let w = prec + 32;
        let x = self.round_to(w);
        // f = x scaled into [1/2, 1), then into [sqrt(2)/2, sqrt(2))
        let r = x.hi_exp();
        let mut f = x.mul_pow2(-r);
        let mut g = r;
        // if f^2 < 1/2, double f
        let half = PrecReal::one(w).mul_pow2(-1);
        if f.mul(&f).cmp_value(&half) == std::cmp::Ordering::Less {
            f = f.mul_pow2(1);
            g -= 1;
        }
        let one = PrecReal::one(w);
        let u = f.sub(&one).div(&f.add(&one));
        let mut acc = if u.is_zero() {
            PrecReal::zero(w)
        } else if u.is_negative() {
            atanh_series(&u.neg()).neg()
        } else {
            atanh_series(&u)
        };
        acc = acc.mul_pow2(1);
        if g != 0 {
            acc = acc.add(&ln2(w).mul(&PrecReal::from_int(g, w)));
        }
        acc.round_to(prec)
    }
}

// ---------------------------------------------------------------------------
// Bernoulli numbers through tangent numbers (integer-only recurrence)
// ---------------------------------------------------------------------------

fn bernoulli_cache() -> &'static Mutex<Vec<Rational>> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(Vec::new()))
}

/// B_{2n} for n = 1..=count, via the tangent-number triangle.
fn bernoulli_even(count: usize) -> Vec<Rational> {
    let mut cache = bernoulli_cache().lock().unwrap();
    if cache.len() >= count {
        return cache[..count].to_vec();
    }
    let m = count;
    let mut t: Vec<BigInt> = Vec::with_capacity(m);
    t.push(BigInt::one());
    for k in 1..m {
        let prev = t[k - 1].clone();
        t.push(prev * BigInt::from(k));
    }
    for k in 1..m {
        for j in k..m {
            let a = &t[j - 1] * BigInt::from(j - k);
            let b = &t[j] * BigInt::from(j - k + 2);
            t[j] = a + b;
        }
    }
    // B_{2n} = (-1)^(n-1) * 2n * T_{2n-1} / (4^n (4^n - 1))
    let mut out = Vec::with_capacity(m);
    for (i, tn) in t.iter().enumerate() {
        let n = i + 1;
        let four_n = BigInt::from(4).pow(n as u32);
        let den = &four_n * (&four_n - BigInt::one());
        let mut num = tn * BigInt::from(2 * n);
        if n % 2 == 0 {
            num = -num;
        }
        out.push(Rational::new(num, den));
    }
    *cache = out.clone();
    out
}

// ---------------------------------------------------------------------------
// zeta(s) for integer s >= 2 by Euler-Maclaurin: every intermediate is an
// exact rational, and the remainder is bounded by the first omitted
// correction term.
// ---------------------------------------------------------------------------

fn zeta_cache() -> &'static Mutex<HashMap<(u32, u32), PrecReal>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), PrecReal>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// zeta(s) at `prec` bits for integer s >= 2.
pub fn zeta_int(s: u32, prec: u32) -> PrecReal {
    assert!(s >= 2, "zeta_int requires s >= 2");
    if let Some(v) = zeta_cache().lock().unwrap().get(&(s, prec)) {
        return v.clone();
    }
    let target = Rational::new(BigInt::one(), BigInt::one() << (prec as u64 + 8));
    let mut k = (prec as usize) / 6 + 8;
    let value = loop {
        let n = k;
        let bern = bernoulli_even(k + 1);
        // remainder bound: |B_{2K+2}/(2K+2)! * (s)_{2K+1} * N^{-s-2K-1}|
        let bound = em_term(&bern[k], s, k + 1, n).abs();
        if bound <= target {
            break euler_maclaurin_value(s, n, k, &bern);
        }
        k += k / 2 + 8;
        assert!(k < 1_000_000, "Euler-Maclaurin failed to reach tolerance");
    };
    let out = PrecReal::from_rational(&value, prec);
    zeta_cache().lock().unwrap().insert((s, prec), out.clone());
    out
}

/// The i-th Euler-Maclaurin correction term B_{2i}/(2i)! * (s)_{2i-1} * N^{1-s-2i}.
fn em_term(b2i: &Rational, s: u32, i: usize, n: usize) -> Rational {
    let mut poch = Rational::one();
    for j in 0..(2 * i - 1) {
        poch *= Rational::from(BigInt::from(s as i64 + j as i64));
    }
    let mut fact = BigInt::one();
    for j in 2..=(2 * i) {
        fact *= BigInt::from(j);
    }
    let npow = Rational::new(BigInt::one(), BigInt::from(n).pow((s as usize + 2 * i - 1) as u32));
    b2i * poch / Rational::from(fact) * npow
}

fn euler_maclaurin_value(s: u32, n: usize, k: usize, bern: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for j in 1..n {
        acc += Rational::new(BigInt::one(), BigInt::from(j).pow(s));
    }
    let npow_s = Rational::new(BigInt::one(), BigInt::from(n).pow(s));
    // integral tail N^(1-s)/(s-1) and the midpoint correction N^(-s)/2
    acc += &npow_s * Rational::from(BigInt::from(n as i64)) / Rational::from(BigInt::from(s as i64 - 1));
    acc += &npow_s / Rational::from(BigInt::from(2));
    for i in 1..=k {
        acc += em_term(&bern[i - 1], s, i, n);
    }
    acc
}

// ---------------------------------------------------------------------------
// mu0
// ---------------------------------------------------------------------------

/// 1 + (4 log(sqrt(2)+1) + 3) / (4 log(sqrt(2)+1) - 3) = 13.417820...
pub fn mu0(prec: u32) -> PrecReal {
    let w = prec + 24;
    let sqrt2 = PrecReal::from_int(2, w).sqrt();
    let l = sqrt2.add(&PrecReal::one(w)).ln();
    let four_l = l.mul_pow2(2);
    let three = PrecReal::from_int(3, w);
    let one = PrecReal::one(w);
    one.add(&four_l.add(&three).div(&four_l.sub(&three))).round_to(prec)
}
