//! Precision-tagged binary big-float.
//!
//! A [`PrecReal`] is an exact dyadic value `mantissa * 2^exp` whose mantissa
//! is kept normalized to `prec` bits. Every arithmetic operation rounds its
//! result back to the minimum of the operand precisions, so a value of
//! precision `p` carries a relative error at most `2^(4-p)` with respect to
//! the exact real it approximates (quasi-interval contract; the bound is
//! generous, individual operations stay within one or two ulps).
//!
//! The type deliberately has no transcendental methods beyond `ln`
//! (constants such as pi and zeta(s) live in the sibling `consts` module);
//! everything downstream is built from field operations, `sqrt` and integer
//! roots.

use std::cmp::Ordering;
use std::fmt;

use num::bigint::Sign;
use num::{BigInt, BigUint, One, Signed, ToPrimitive, Zero};

use crate::exactnum::{isqrt, Rational};

/// High-precision real number tagged with its working precision in bits.
#[derive(Clone, Debug)]
pub struct PrecReal {
    mantissa: BigInt,
    exp: i64,
    prec: u32,
}

impl PrecReal {
    /// Builds and normalizes a value `m * 2^e` at `prec` bits.
    pub fn make(m: BigInt, e: i64, prec: u32) -> Self {
        assert!(prec >= 8, "precision below 8 bits is not supported");
        let mut out = PrecReal { mantissa: m, exp: e, prec };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        if self.mantissa.is_zero() {
            self.exp = 0;
            return;
        }
        let p = self.prec as i64;
        let bits = self.mantissa.magnitude().bits() as i64;
        if bits > p {
            let shift = (bits - p) as u64;
            let neg = self.mantissa.is_negative();
            let half = BigUint::one() << (shift - 1);
            let rounded = (self.mantissa.magnitude() + &half) >> shift;
            self.mantissa =
                BigInt::from_biguint(if neg { Sign::Minus } else { Sign::Plus }, rounded);
            self.exp += shift as i64;
            // a rounding carry can overflow to p+1 bits; the value is then
            // an exact power of two
            if self.mantissa.magnitude().bits() as i64 > p {
                let mag = self.mantissa.magnitude() >> 1u8;
                let neg = self.mantissa.is_negative();
                self.mantissa =
                    BigInt::from_biguint(if neg { Sign::Minus } else { Sign::Plus }, mag);
                self.exp += 1;
            }
        } else if bits < p {
            let shift = (p - bits) as u64;
            self.mantissa <<= shift;
            self.exp -= shift as i64;
        }
    }

    pub fn zero(prec: u32) -> Self {
        PrecReal { mantissa: BigInt::zero(), exp: 0, prec }
    }

    pub fn one(prec: u32) -> Self {
        Self::from_int(1, prec)
    }

    pub fn from_int(v: i64, prec: u32) -> Self {
        Self::make(BigInt::from(v), 0, prec)
    }

    pub fn from_bigint(v: &BigInt, prec: u32) -> Self {
        Self::make(v.clone(), 0, prec)
    }

    /// Rounds an exact rational to `prec` bits.
    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        if r.numer().is_zero() {
            return Self::zero(prec);
        }
        let num = r.numer();
        let den = r.denom();
        let nb = num.magnitude().bits() as i64;
        let db = den.magnitude().bits() as i64;
        let shift = (prec as i64 + 3 + db - nb).max(0) as u64;
        let q = (num << shift) / den;
        Self::make(q, -(shift as i64), prec)
    }

    pub fn from_f64(x: f64, prec: u32) -> Self {
        assert!(x.is_finite(), "from_f64 requires a finite value");
        if x == 0.0 {
            return Self::zero(prec);
        }
        let bits = x.to_bits();
        let neg = bits >> 63 == 1;
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mag, e) = if biased == 0 {
            (BigUint::from(frac), -1074i64)
        } else {
            (BigUint::from(frac | (1u64 << 52)), biased - 1075)
        };
        let m = BigInt::from_biguint(if neg { Sign::Minus } else { Sign::Plus }, mag);
        Self::make(m, e, prec)
    }

    /// Nearest f64 (saturates to 0 or +/-inf far outside the f64 range).
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mantissa.magnitude().bits();
        let (top, e) = if bits > 53 {
            let shift = bits - 53;
            (self.mantissa.magnitude() >> shift, self.exp + shift as i64)
        } else {
            (self.mantissa.magnitude().clone(), self.exp)
        };
        let mut v = top.to_f64().unwrap_or(f64::INFINITY);
        if self.mantissa.is_negative() {
            v = -v;
        }
        let e_clamped = e.clamp(-2000, 2000) as i32;
        v * f64::powi(2.0, e_clamped)
    }

    /// Exact rational value of this dyadic number.
    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from(&self.mantissa << self.exp as u64)
        } else {
            Rational::new(self.mantissa.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Re-rounds to a (usually lower) precision.
    pub fn round_to(&self, prec: u32) -> Self {
        Self::make(self.mantissa.clone(), self.exp, prec)
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.mantissa.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.mantissa.is_negative()
    }

    /// Position of the most significant bit: value is in
    /// `[2^(hi_exp-1), 2^hi_exp)` for positive values. Zero has no meaningful
    /// hi_exp; returns i64::MIN.
    pub fn hi_exp(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.exp + self.mantissa.magnitude().bits() as i64
        }
    }

    pub fn neg(&self) -> Self {
        PrecReal { mantissa: -self.mantissa.clone(), exp: self.exp, prec: self.prec }
    }

    pub fn abs(&self) -> Self {
        PrecReal { mantissa: self.mantissa.abs(), exp: self.exp, prec: self.prec }
    }

    /// Exact scaling by 2^k.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        PrecReal { mantissa: self.mantissa.clone(), exp: self.exp + k, prec: self.prec }
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = self.prec.min(other.prec);
        if self.is_zero() {
            return other.round_to(prec);
        }
        if other.is_zero() {
            return self.round_to(prec);
        }
        // an operand entirely below the other's rounding tail cannot move it
        let (hi_a, hi_b) = (self.hi_exp(), other.hi_exp());
        if hi_a > hi_b + prec as i64 + 4 {
            return self.round_to(prec);
        }
        if hi_b > hi_a + prec as i64 + 4 {
            return other.round_to(prec);
        }
        let e = self.exp.min(other.exp);
        let ma = &self.mantissa << (self.exp - e) as u64;
        let mb = &other.mantissa << (other.exp - e) as u64;
        Self::make(ma + mb, e, prec)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prec = self.prec.min(other.prec);
        if self.is_zero() || other.is_zero() {
            return Self::zero(prec);
        }
        Self::make(&self.mantissa * &other.mantissa, self.exp + other.exp, prec)
    }

    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by zero PrecReal");
        let prec = self.prec.min(other.prec);
        if self.is_zero() {
            return Self::zero(prec);
        }
        let extra = prec as u64 + other.mantissa.magnitude().bits() + 3;
        let q = (&self.mantissa << extra) / &other.mantissa;
        Self::make(q, self.exp - other.exp - extra as i64, prec)
    }

    /// Integer power with binary powering (negative exponents via 1/x).
    pub fn powi(&self, k: i64) -> Self {
        let prec = self.prec;
        if k == 0 {
            return Self::one(prec);
        }
        if k < 0 {
            return Self::one(prec).div(&self.powi(-k));
        }
        let w = prec + 32;
        let mut base = self.round_to(w);
        let mut acc = Self::one(w);
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc.round_to(prec)
    }

    /// Square root; panics on negative input.
    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "sqrt of a negative PrecReal");
        if self.is_zero() {
            return self.clone();
        }
        let p = self.prec;
        let target = 2 * (p as i64 + 3);
        let bits = self.mantissa.magnitude().bits() as i64;
        let mut shift = (target - bits).max(0);
        if (self.exp - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let m = &self.mantissa << shift as u64;
        let r = isqrt(&m);
        Self::make(r, (self.exp - shift) / 2, p)
    }

    /// Positive n-th root by Newton iteration with an f64 seed.
    pub fn nth_root(&self, n: u32) -> Self {
        assert!(n >= 1, "nth_root requires n >= 1");
        assert!(self.is_positive(), "nth_root requires a positive value");
        if n == 1 {
            return self.clone();
        }
        if n == 2 {
            return self.sqrt();
        }
        let prec = self.prec;
        let w = prec + 48;
        let x = self.round_to(w);

        // seed from the base-2 logarithm, which is representable even when
        // the value itself is far outside f64 range
        let bits = self.mantissa.magnitude().bits();
        let top = if bits > 53 {
            (self.mantissa.magnitude() >> (bits - 53)).to_f64().unwrap()
        } else {
            self.mantissa.magnitude().to_f64().unwrap()
        };
        let log2x = top.log2() + (self.exp + bits as i64 - bits.min(53) as i64) as f64
            - if bits > 53 { 0.0 } else { 0.0 };
        let log2y = log2x / n as f64;
        let e_int = log2y.floor();
        let frac = (log2y - e_int).exp2();
        let mut y = PrecReal::from_f64(frac, w).mul_pow2(e_int as i64);

        let nn = PrecReal::from_int(n as i64, w);
        let n1 = PrecReal::from_int(n as i64 - 1, w);
        let tol_exp = -(prec as i64 + 8);
        for _ in 0..500 {
            // y <- ((n-1) y + x / y^(n-1)) / n
            let yp = y.round_to(w).powi(n as i64 - 1);
            let next = n1.mul(&y).add(&x.div(&yp)).div(&nn);
            let delta = next.sub(&y);
            y = next;
            if delta.is_zero() || delta.hi_exp() <= y.hi_exp() + tol_exp {
                return y.round_to(prec);
            }
        }
        panic!("nth_root failed to converge at precision {}", prec);
    }

    pub fn cmp_value(&self, other: &Self) -> Ordering {
        let sa = self.mantissa.sign();
        let sb = other.mantissa.sign();
        let rank = |s: Sign| match s {
            Sign::Minus => 0,
            Sign::NoSign => 1,
            Sign::Plus => 2,
        };
        if rank(sa) != rank(sb) {
            return rank(sa).cmp(&rank(sb));
        }
        if sa == Sign::NoSign {
            return Ordering::Equal;
        }
        let mag = self.cmp_abs(other);
        if sa == Sign::Plus {
            mag
        } else {
            mag.reverse()
        }
    }

    /// Compares |self| and |other|.
    pub fn cmp_abs(&self, other: &Self) -> Ordering {
        if self.is_zero() || other.is_zero() {
            let za = if self.is_zero() { 0 } else { 1 };
            let zb = if other.is_zero() { 0 } else { 1 };
            return za.cmp(&zb);
        }
        let (hi_a, hi_b) = (self.hi_exp(), other.hi_exp());
        if hi_a != hi_b {
            return hi_a.cmp(&hi_b);
        }
        // equal leading-bit position: exponent gap equals the mantissa
        // length gap, which is bounded by the precisions
        let e = self.exp.min(other.exp);
        let ma = self.mantissa.magnitude() << (self.exp - e) as u64;
        let mb = other.mantissa.magnitude() << (other.exp - e) as u64;
        ma.cmp(&mb)
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.is_zero() {
            return "0".to_string();
        }
        // decimal exponent estimate from the binary magnitude
        let approx_log10 = (self.hi_exp() as f64 - 0.5) * std::f64::consts::LN_2
            / std::f64::consts::LN_10;
        let mut dec_exp = approx_log10.floor() as i64;
        let mut scaled = self.scale_decimal(digits as i64 - 1 - dec_exp);
        // fix the estimate if we landed one digit short or long
        let lo = BigUint::from(10u32).pow(digits as u32 - 1);
        let hi = BigUint::from(10u32).pow(digits as u32);
        while scaled.magnitude() >= &hi {
            dec_exp += 1;
            scaled = self.scale_decimal(digits as i64 - 1 - dec_exp);
        }
        while scaled.magnitude() < &lo {
            dec_exp -= 1;
            scaled = self.scale_decimal(digits as i64 - 1 - dec_exp);
        }
        let sign = if self.is_negative() { "-" } else { "" };
        let ds = scaled.magnitude().to_string();
        if dec_exp >= 0 && (dec_exp as usize) < digits {
            let point = dec_exp as usize + 1;
            format!("{}{}.{}", sign, &ds[..point], &ds[point..])
        } else if dec_exp < 0 && dec_exp >= -4 {
            let zeros = "0".repeat((-dec_exp - 1) as usize);
            format!("{}0.{}{}", sign, zeros, ds)
        } else {
            format!("{}{}.{}e{}", sign, &ds[..1], &ds[1..], dec_exp)
        }
    }

    /// round(value * 10^k) as a big integer.
    fn scale_decimal(&self, k: i64) -> BigInt {
        let mut num = self.mantissa.magnitude().clone();
        let mut shift = self.exp;
        if k >= 0 {
            num *= BigUint::from(10u32).pow(k as u32);
        }
        let mut den = if k < 0 { BigUint::from(10u32).pow((-k) as u32) } else { BigUint::one() };
        if shift > 0 {
            num <<= shift as u64;
            shift = 0;
        }
        if shift < 0 {
            den <<= (-shift) as u64;
        }
        let q = (&num + (&den >> 1u8)) / &den;
        BigInt::from_biguint(self.mantissa.sign(), q)
    }
}

impl fmt::Display for PrecReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = ((self.prec as f64) * 0.30103).floor().max(6.0) as usize;
        write!(f, "{}", self.to_decimal_string(digits))
    }
}

impl PartialEq for PrecReal {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl PartialOrd for PrecReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_value(other))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $f:ident) => {
        impl std::ops::$trait for &PrecReal {
            type Output = PrecReal;
            fn $method(self, rhs: &PrecReal) -> PrecReal {
                PrecReal::$f(self, rhs)
            }
        }
        impl std::ops::$trait for PrecReal {
            type Output = PrecReal;
            fn $method(self, rhs: PrecReal) -> PrecReal {
                PrecReal::$f(&self, &rhs)
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);
binop!(Div, div, div);

impl std::ops::Neg for &PrecReal {
    type Output = PrecReal;
    fn neg(self) -> PrecReal {
        PrecReal::neg(self)
    }
}
