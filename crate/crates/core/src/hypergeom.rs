//! Generalized hypergeometric series in one variable: exact evaluation of
//! terminating series, high-precision evaluation of convergent series with a
//! certified tail bound, Legendre polynomials, and the classical
//! transformation checks (Whipple's terminating 4F3-to-5F4 transformation
//! and Clausen's square identity).

use num::{BigInt, One, Signed, Zero};

use crate::error::Error;
use crate::exactnum::{is_nonpositive_integer, rat_int, PrecReal, Rational};
use crate::linform::Poly;
use crate::Result;

/// Argument of a hypergeometric series.
#[derive(Clone, Debug)]
pub enum HgArgument {
    Rat(Rational),
    Real(PrecReal),
}

impl HgArgument {
    /// Exact rational value of the argument (dyadic reals are exact).
    fn to_rational(&self) -> Rational {
        match self {
            HgArgument::Rat(r) => r.clone(),
            HgArgument::Real(x) => x.to_rational(),
        }
    }
}

/// Parameters of mF(m-1): upper a_1..a_m, lower b_2..b_m, argument z.
#[derive(Clone, Debug)]
pub struct HGSpec {
    pub upper: Vec<Rational>,
    pub lower: Vec<Rational>,
    pub argument: HgArgument,
}

impl HGSpec {
    pub fn new_rat(upper: Vec<Rational>, lower: Vec<Rational>, z: Rational) -> Self {
        HGSpec { upper, lower, argument: HgArgument::Rat(z) }
    }

    /// Smallest termination index from a nonpositive-integer upper
    /// parameter, if any.
    pub fn termination_index(&self) -> Option<u64> {
        self.upper
            .iter()
            .filter(|a| is_nonpositive_integer(a))
            .map(|a| (-a.numer().clone()).try_into().unwrap_or(u64::MAX))
            .min()
    }

    /// Cancels upper/lower parameter pairs that are exactly equal.
    fn cancelled(&self) -> HGSpec {
        let mut upper = self.upper.clone();
        let mut lower = Vec::new();
        'outer: for b in &self.lower {
            for (i, a) in upper.iter().enumerate() {
                if a == b {
                    upper.remove(i);
                    continue 'outer;
                }
            }
            lower.push(b.clone());
        }
        HGSpec { upper, lower, argument: self.argument.clone() }
    }
}

// ---------------------------------------------------------------------------
// Exact terminating evaluation
// ---------------------------------------------------------------------------

/// Exact finite sum of a terminating series (some upper parameter is a
/// nonpositive integer, rational argument).
pub fn pfq_terminating(spec: &HGSpec) -> Result<Rational> {
    let spec = spec.cancelled();
    let n_term = spec.termination_index().ok_or_else(|| {
        Error::InvalidParameter("no nonpositive-integer upper parameter".into())
    })?;
    let z = spec.argument.to_rational();
    let mut acc = Rational::one();
    let mut term = Rational::one();
    for n in 0..n_term {
        let nr = rat_int(n as i64);
        let mut num = z.clone();
        for a in &spec.upper {
            num *= a + &nr;
        }
        let mut den = &nr + Rational::one();
        for b in &spec.lower {
            let f = b + &nr;
            if f.is_zero() {
                return Err(Error::LowerParameterPole { param: b.to_string(), index: n + 1 });
            }
            den *= f;
        }
        term = term * num / den;
        acc += &term;
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Convergent evaluation with certified tails
// ---------------------------------------------------------------------------

/// Smallest integer above the largest real root of `p` (Cauchy bound).
fn cauchy_bound(p: &Poly) -> u64 {
    let lead = p.0.last().expect("nonempty polynomial");
    assert!(!lead.is_zero(), "zero leading coefficient");
    let mut best = Rational::zero();
    for c in &p.0[..p.0.len() - 1] {
        let q = (c / lead).abs();
        if q > best {
            best = q;
        }
    }
    let b = Rational::one() + best;
    let c = b.ceil();
    c.numer().try_into().unwrap_or(u64::MAX)
}

fn prod_linear(shifts: &[Rational]) -> Poly {
    let mut p = Poly::constant(Rational::one());
    for c in shifts {
        p = p.mul(&Poly::linear(c.clone()));
    }
    p
}

/// Certified start index and ratio bound for |z| < 1: beyond the returned
/// index, successive term ratios are at most rho = (1 + |z|)/2.
fn geometric_tail_start(
    upper: &[Rational],
    lower: &[Rational],
    z_abs: &Rational,
) -> Result<(u64, Rational)> {
    assert!(z_abs < &Rational::one());
    let rho = (z_abs + Rational::one()) / rat_int(2);
    // |r_n| <= |z| prod(n + ceil|a_i|) / ((n+1) prod(n - |b_j|)) <= rho
    // for all n past the Cauchy bound of the difference polynomial
    let num = prod_linear(&upper.iter().map(|a| a.abs().ceil()).collect::<Vec<_>>());
    let mut den_shifts: Vec<Rational> = lower.iter().map(|b| -b.abs()).collect();
    den_shifts.push(Rational::one());
    let den = prod_linear(&den_shifts);
    let mut diff = Poly::constant(Rational::zero());
    diff.add_scaled(&den, &rho);
    diff.add_scaled(&num, &(-z_abs.clone()));
    let diff = diff.trimmed();
    if diff.0.last().map(|c| !c.is_positive()).unwrap_or(true) {
        return Err(Error::Divergent("ratio bound has nonpositive leading coefficient".into()));
    }
    let n0 = lower
        .iter()
        .map(|b| {
            let c = b.abs().ceil();
            let v: u64 = c.numer().try_into().unwrap_or(u64::MAX);
            v + 1
        })
        .max()
        .unwrap_or(1);
    Ok((cauchy_bound(&diff).max(n0), rho))
}

/// Certified data for z = 1 with parameter excess delta > 1: beyond the
/// returned index, t_{n+1}/t_n <= (n+1)/(n+1+beta) with beta = (1+delta)/2,
/// all terms positive; the tail from index M is at most t_M (M+1)/(beta-1).
fn unit_tail_start(upper: &[Rational], lower: &[Rational]) -> Result<(u64, Rational)> {
    let excess = lower.iter().sum::<Rational>() + Rational::one()
        - upper.iter().sum::<Rational>();
    if excess <= Rational::one() {
        return Err(Error::Divergent(format!(
            "parameter excess {} at z = 1 is too small for a certified tail (needs > 1)",
            excess
        )));
    }
    let beta = (&excess + Rational::one()) / rat_int(2);
    // D(n) = (n+1)^2 prod(n+b_j) - (n+1+beta) prod(n+a_i) > 0 eventually
    let mut rhs_shifts: Vec<Rational> = lower.to_vec();
    rhs_shifts.push(Rational::one());
    rhs_shifts.push(Rational::one());
    let rhs = prod_linear(&rhs_shifts);
    let mut lhs = prod_linear(upper).mul(&Poly::linear(Rational::one() + &beta));
    let mut diff = Poly::constant(Rational::zero());
    diff.add_scaled(&rhs, &Rational::one());
    lhs = lhs.mul(&Poly::constant(-Rational::one()));
    diff.add_scaled(&lhs, &Rational::one());
    // the top-degree terms of both products cancel; trim before testing
    // the surviving leading coefficient (which is delta - beta)
    let diff = diff.trimmed();
    if diff.0.last().map(|c| !c.is_positive()).unwrap_or(true) {
        return Err(Error::Divergent("unit-argument bound degenerates".into()));
    }
    let n0 = upper
        .iter()
        .chain(lower.iter())
        .map(|c| {
            let v: u64 = c.abs().ceil().numer().try_into().unwrap_or(u64::MAX);
            v + 1
        })
        .max()
        .unwrap_or(1);
    Ok((cauchy_bound(&diff).max(n0), beta))
}

const MAX_TERMS: u64 = 4_000_000;

/// High-precision evaluation of a convergent series: |z| < 1, or z = 1 with
/// parameter excess > 1, or terminating. The partial sum carries a
/// certified tail bound at most 2^(4-prec) of the result.
pub fn pfq_numeric(spec: &HGSpec, prec: u32) -> Result<PrecReal> {
    let spec = spec.cancelled();
    if spec.termination_index().is_some() {
        if let HgArgument::Rat(_) = spec.argument {
            let v = pfq_terminating(&spec)?;
            return Ok(PrecReal::from_rational(&v, prec));
        }
    }
    let w = prec + 24;
    let z = spec.argument.to_rational();
    let z_abs = z.abs();
    if z_abs < Rational::one() {
        let (start, rho) = geometric_tail_start(&spec.upper, &spec.lower, &z_abs)?;
        // tail factor rho/(1-rho) as PrecReal
        let tail_factor = PrecReal::from_rational(&(&rho / (Rational::one() - &rho)), w);
        let mut acc = PrecReal::zero(w);
        let mut term = Rational::one();
        let mut n = 0u64;
        loop {
            acc = acc.add(&PrecReal::from_rational(&term, w));
            let nr = rat_int(n as i64);
            let mut num = z.clone();
            for a in &spec.upper {
                num *= a + &nr;
            }
            let mut den = &nr + Rational::one();
            for b in &spec.lower {
                let f = b + &nr;
                if f.is_zero() {
                    return Err(Error::LowerParameterPole {
                        param: b.to_string(),
                        index: n + 1,
                    });
                }
                den *= f;
            }
            term = term * num / den;
            n += 1;
            if n >= start {
                let t = PrecReal::from_rational(&term.abs(), w);
                let tail = t.mul(&tail_factor).add(&t);
                if !acc.is_zero() && tail.hi_exp() <= acc.hi_exp() - (prec as i64 + 6) {
                    return Ok(acc.round_to(prec));
                }
            }
            if n > MAX_TERMS {
                return Err(Error::BudgetExceeded(format!(
                    "series tail not below 2^-{} after {} terms",
                    prec + 6,
                    n
                )));
            }
        }
    }
    if z == Rational::one() {
        let (start, beta) = unit_tail_start(&spec.upper, &spec.lower)?;
        // the tail decays only polynomially here, so the term count can be
        // large; iterate the ratio in PrecReal (bounded size) with enough
        // guard bits to absorb the per-step rounding drift
        let w = prec + 56;
        let mut acc = PrecReal::zero(w);
        let mut term = PrecReal::one(w);
        let beta_m1 = PrecReal::from_rational(&(&beta - Rational::one()), w);
        let mut n = 0u64;
        loop {
            acc = acc.add(&term);
            let nr = rat_int(n as i64);
            let mut num = Rational::one();
            for a in &spec.upper {
                num *= a + &nr;
            }
            let mut den = &nr + Rational::one();
            for b in &spec.lower {
                let f = b + &nr;
                if f.is_zero() {
                    return Err(Error::LowerParameterPole {
                        param: b.to_string(),
                        index: n + 1,
                    });
                }
                den *= f;
            }
            term = term.mul(&PrecReal::from_rational(&(num / den), w));
            n += 1;
            if n >= start {
                // tail <= t_n (n+1)/(beta-1)
                let tail =
                    term.abs().mul(&PrecReal::from_int(n as i64 + 1, w)).div(&beta_m1);
                if !acc.is_zero() && tail.hi_exp() <= acc.hi_exp() - (prec as i64 + 6) {
                    return Ok(acc.round_to(prec));
                }
            }
            if n > MAX_TERMS {
                return Err(Error::BudgetExceeded(format!(
                    "unit-argument series needs more than {} terms for 2^-{}",
                    MAX_TERMS,
                    prec + 6
                )));
            }
        }
    }
    Err(Error::Divergent(format!("argument {} outside |z| < 1 and z != 1", z)))
}

/// Convenience wrapper for 2F1(a, b; c | z) at `prec` bits.
pub fn gauss_2f1(a: &Rational, b: &Rational, c: &Rational, z: &HgArgument, prec: u32) -> Result<PrecReal> {
    pfq_numeric(
        &HGSpec {
            upper: vec![a.clone(), b.clone()],
            lower: vec![c.clone()],
            argument: z.clone(),
        },
        prec,
    )
}

// ---------------------------------------------------------------------------
// Legendre polynomials
// ---------------------------------------------------------------------------

/// P_n(x) evaluated exactly through the terminating 2F1 with argument (1-x)/2.
pub fn legendre(n: u64, x: &Rational) -> Rational {
    let arg = (Rational::one() - x) / rat_int(2);
    let spec = HGSpec::new_rat(
        vec![rat_int(-(n as i64)), rat_int(n as i64 + 1)],
        vec![Rational::one()],
        arg,
    );
    pfq_terminating(&spec).expect("terminating Legendre series has no lower poles")
}

/// Exact coefficient vector of P_n (index = power of x), by the three-term
/// recursion (n+1) P_{n+1} = (2n+1) x P_n - n P_{n-1}.
pub fn legendre_coeffs(n: u64) -> Vec<Rational> {
    let mut p0 = vec![Rational::one()];
    if n == 0 {
        return p0;
    }
    let mut p1 = vec![Rational::zero(), Rational::one()];
    for m in 1..n {
        let mut next = vec![Rational::zero(); m as usize + 2];
        for (i, c) in p1.iter().enumerate() {
            next[i + 1] += c * rat_int(2 * m as i64 + 1);
        }
        for (i, c) in p0.iter().enumerate() {
            next[i] -= c * rat_int(m as i64);
        }
        for c in &mut next {
            *c = &*c / rat_int(m as i64 + 1);
        }
        p0 = p1;
        p1 = next;
    }
    p1
}

// ---------------------------------------------------------------------------
// Whipple's terminating transformation
// ---------------------------------------------------------------------------

/// Exact check of the terminating transformation
/// 4F3(f, 1+f-h, h-a, -N; h, 1+f+a-h, g | 1)
///   = ((g-f)_N/(g)_N) 5F4(a, -N, 1+f-g, f/2, (f+1)/2;
///                         h, 1+f+a-h, (1+f-N-g)/2, (2+f-N-g)/2 | 1).
pub fn whipple_check(f: &Rational, h: &Rational, a: &Rational, g: &Rational, n: u64) -> Result<bool> {
    let one = Rational::one();
    let nn = rat_int(n as i64);
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    let w = (&one + f - &nn - g) * &half;
    // every lower parameter of either side must stay off the poles
    // {0, -1, ..., -(N-1)}; degenerate sets are outside the transformation's
    // validity and get rejected rather than evaluated through a 0/0
    let lowers = [
        h.clone(),
        &one + f + a - h,
        g.clone(),
        w.clone(),
        &w + &half,
    ];
    for b in &lowers {
        if is_nonpositive_integer(b) {
            let k: i64 = (-b.numer().clone()).try_into().unwrap_or(i64::MAX);
            if (k as u64) < n {
                return Err(Error::InvalidParameter(format!(
                    "lower parameter {} poles within {} steps",
                    b, n
                )));
            }
        }
    }
    let lhs = pfq_terminating(&HGSpec::new_rat(
        vec![f.clone(), &one + f - h, h - a, -nn.clone()],
        vec![h.clone(), &one + f + a - h, g.clone()],
        one.clone(),
    ))?;
    let gn = crate::exactnum::pochhammer(g, n);
    if gn.is_zero() {
        return Err(Error::InvalidParameter(format!("(g)_N vanishes for g = {}, N = {}", g, n)));
    }
    let prefactor = crate::exactnum::pochhammer(&(g - f), n) / gn;
    let rhs_series = pfq_terminating(&HGSpec::new_rat(
        vec![a.clone(), -nn.clone(), &one + f - g, f * &half, f * &half + &half],
        vec![h.clone(), &one + f + a - h, w.clone(), &w + &half],
        one.clone(),
    ))?;
    Ok(lhs == prefactor * rhs_series)
}

// ---------------------------------------------------------------------------
// Clausen's identity
// ---------------------------------------------------------------------------

/// Numeric check of 3F2(1/2, r, 1-r; 1, 1 | 4x(1-x)) = 2F1(r, 1-r; 1 | x)^2
/// for rational 0 <= x < 1/2, within 2^(10-prec).
pub fn clausen_check(r: &Rational, x: &Rational, prec: u32) -> Result<bool> {
    if x < &Rational::zero() || x >= &Rational::new(BigInt::one(), BigInt::from(2)) {
        return Err(Error::InvalidParameter(format!("x = {} outside [0, 1/2)", x)));
    }
    let one = Rational::one();
    let w = prec + 16;
    let inner = rat_int(4) * x * (&one - x);
    let lhs = pfq_numeric(
        &HGSpec::new_rat(
            vec![Rational::new(BigInt::one(), BigInt::from(2)), r.clone(), &one - r],
            vec![one.clone(), one.clone()],
            inner,
        ),
        w,
    )?;
    let f = gauss_2f1(r, &(&one - r), &one, &HgArgument::Rat(x.clone()), w)?;
    let rhs = f.mul(&f);
    let diff = lhs.sub(&rhs).abs();
    Ok(diff.is_zero() || diff.hi_exp() <= 10 - prec as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{pochhammer, rat};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn spec(upper: &[Rational], lower: &[Rational], z: Rational) -> HGSpec {
        HGSpec::new_rat(upper.to_vec(), lower.to_vec(), z)
    }

    #[test]
    fn terminating_one_step() {
        // 2F1(-1, b; c | z) = 1 - bz/c
        let b = rat(5, 3);
        let c = rat(7, 2);
        let z = rat(2, 9);
        let got = pfq_terminating(&spec(&[rat_int(-1), b.clone()], &[c.clone()], z.clone())).unwrap();
        assert_eq!(got, Rational::one() - b * z / c);
    }

    #[test]
    fn terminating_at_zero_argument() {
        let got =
            pfq_terminating(&spec(&[rat_int(-4), rat_int(5)], &[rat_int(1)], rat_int(0))).unwrap();
        assert_eq!(got, Rational::one());
    }

    #[test]
    fn terminating_matches_brute_force() {
        // 2F1(-2, 3; 1 | 1/2) summed by hand: 1 + (-2)(3)/(1)/1 * 1/2 + ...
        let got = pfq_terminating(&spec(&[rat_int(-2), rat_int(3)], &[rat_int(1)], rat(1, 2)))
            .unwrap();
        let mut brute = Rational::zero();
        for n in 0..=2u64 {
            let t = pochhammer(&rat_int(-2), n) * pochhammer(&rat_int(3), n)
                / (pochhammer(&rat_int(1), n) * Rational::from(crate::exactnum::factorial(n)))
                * pow(rat(1, 2), n);
            brute += t;
        }
        assert_eq!(got, brute);
        fn pow(r: Rational, n: u64) -> Rational {
            let mut acc = Rational::one();
            for _ in 0..n {
                acc *= &r;
            }
            acc
        }
    }

    #[test]
    fn lower_pole_detected() {
        let r = pfq_terminating(&spec(&[rat_int(-3), rat(1, 2)], &[rat_int(-1)], rat(1, 3)));
        assert!(matches!(r, Err(Error::LowerParameterPole { .. })));
        // but an earlier-terminating upper parameter protects it
        let r = pfq_terminating(&spec(&[rat_int(-1), rat(1, 2)], &[rat_int(-2)], rat(1, 3)));
        assert!(r.is_ok());
        // an exactly matching upper/lower pair cancels instead of poling
        let sp = spec(&[rat_int(-1), rat(1, 2)], &[rat_int(-1)], rat(1, 3));
        assert!(pfq_terminating(&sp).is_err()); // cancellation leaves nothing terminating
        let v = pfq_numeric(&sp, 64).unwrap().to_f64();
        assert!((v - (1.0 - 1.0 / 3.0f64).powf(-0.5)).abs() < 1e-12);
    }

    #[test]
    fn geometric_series_value() {
        // 1F0(1; | 1/3) = 3/2
        let got = pfq_numeric(&spec(&[rat_int(1)], &[], rat(1, 3)), 96).unwrap();
        let expect = PrecReal::from_rational(&rat(3, 2), 96);
        assert!(got.sub(&expect).abs().hi_exp() < -88);
    }

    #[test]
    fn two_f_one_log_value() {
        // 2F1(1, 1; 2 | 1/2) = 2 log 2, against the independent atanh route
        let p = 160;
        let got = pfq_numeric(&spec(&[rat_int(1), rat_int(1)], &[rat_int(2)], rat(1, 2)), p).unwrap();
        let expect = crate::exactnum::ln2(p).mul_pow2(1);
        assert!(got.sub(&expect).abs().hi_exp() < 6 - p as i64);
    }

    #[test]
    fn unit_argument_with_excess_two() {
        // 3F2(1/2, 1/3, 1/4; 3/2, 5/3 | 1), excess = 37/12 - 13/12 = 2;
        // brute-force partial sum in f64 as the oracle. The polynomially
        // decaying tail makes high precision infeasible; 12 bits certify.
        let upper = [rat(1, 2), rat(1, 3), rat(1, 4)];
        let lower = [rat(3, 2), rat(5, 3)];
        let got = pfq_numeric(&spec(&upper, &lower, rat_int(1)), 16).unwrap().to_f64();
        let mut acc = 0.0f64;
        let mut term = 1.0f64;
        for n in 0..2_000_000u64 {
            acc += term;
            let nf = n as f64;
            term *= (nf + 0.5) * (nf + 1.0 / 3.0) * (nf + 0.25)
                / ((nf + 1.0) * (nf + 1.5) * (nf + 5.0 / 3.0));
        }
        // the documented bound is relative 2^(4-prec)
        assert!((got - acc).abs() < 2.0f64.powi(-12) * acc, "got {} oracle {}", got, acc);
    }

    #[test]
    fn unit_argument_small_excess_rejected() {
        // excess exactly 1: converges but with no certifiable budget here
        let r = pfq_numeric(&spec(&[rat(1, 2), rat_int(1)], &[rat(3, 2)], rat_int(1)), 32);
        assert!(matches!(r, Err(Error::Divergent(_))));
        // |z| > 1 rejected outright
        let r = pfq_numeric(&spec(&[rat(1, 2)], &[rat(3, 2)], rat_int(2)), 32);
        assert!(matches!(r, Err(Error::Divergent(_))));
    }

    #[test]
    fn terminating_and_numeric_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut done = 0;
        while done < 100 {
            let n = rng.gen_range(0..6) as i64;
            let a = rat(rng.gen_range(-8..8), rng.gen_range(1..5));
            let b = rat(rng.gen_range(1..9), rng.gen_range(1..5));
            let z = rat(rng.gen_range(-3..4), 7);
            let sp = spec(&[rat_int(-n), a], &[b], z);
            let exact = match pfq_terminating(&sp) {
                Ok(v) => v,
                Err(_) => continue,
            };
            let numeric = pfq_numeric(&sp, 96).unwrap();
            let expect = PrecReal::from_rational(&exact, 96);
            let diff = numeric.sub(&expect).abs();
            assert!(
                diff.is_zero() || diff.hi_exp() <= expect.hi_exp().max(0) - 90,
                "mismatch for n={}",
                n
            );
            done += 1;
        }
    }

    #[test]
    fn hypergeometric_ode_residual_small() {
        // z(1-z) F'' + (c - (a+b+1) z) F' - ab F = 0 via exact rational
        // finite differences at 10 sample points
        let (a, b, c) = (rat(1, 3), rat(1, 2), rat(5, 4));
        let h = Rational::new(BigInt::one(), BigInt::one() << 24u8);
        let p = 192u32;
        for i in 1..=10 {
            let z = rat(i, 25); // z in (0, 0.41)
            let f = |zz: &Rational| -> PrecReal {
                gauss_2f1(&a, &b, &c, &HgArgument::Rat(zz.clone()), p).unwrap()
            };
            let fz = f(&z);
            let fp = f(&(&z + &h));
            let fm = f(&(&z - &h));
            let h_r = PrecReal::from_rational(&h, p);
            let d1 = fp.sub(&fm).div(&h_r).mul_pow2(-1);
            let d2 = fp.add(&fm).sub(&fz.mul_pow2(1)).div(&h_r.mul(&h_r));
            let zr = PrecReal::from_rational(&z, p);
            let one = PrecReal::one(p);
            let t1 = zr.mul(&one.sub(&zr)).mul(&d2);
            let coeff = PrecReal::from_rational(&(&c - (&a + &b + Rational::one()) * &z), p);
            let t2 = coeff.mul(&d1);
            let t3 = PrecReal::from_rational(&(&a * &b), p).mul(&fz);
            let resid = t1.add(&t2).sub(&t3).abs();
            // central differences leave O(h^2) ~ 2^-48 residual
            assert!(resid.hi_exp() < -40, "ODE residual 2^{} at z = {}", resid.hi_exp(), z);
        }
    }

    #[test]
    fn legendre_values() {
        assert_eq!(legendre(7, &rat_int(1)), Rational::one());
        assert_eq!(legendre(2, &rat(1, 3)), rat(-1, 3));
        assert_eq!(legendre(1, &rat(7, 5)), rat(7, 5));
        // Bonnet recursion oracle
        let x = rat(3, 7);
        let mut p0 = Rational::one();
        let mut p1 = x.clone();
        for m in 1..8u64 {
            let next = (rat_int(2 * m as i64 + 1) * &x * &p1 - rat_int(m as i64) * &p0)
                / rat_int(m as i64 + 1);
            p0 = p1;
            p1 = next;
            assert_eq!(legendre(m + 1, &x), p1, "P_{}", m + 1);
        }
    }

    #[test]
    fn legendre_coeffs_match_evaluation() {
        for n in 0..=12u64 {
            let cs = legendre_coeffs(n);
            let x = rat(5, 9);
            let mut acc = Rational::zero();
            let mut xp = Rational::one();
            for c in &cs {
                acc += c * &xp;
                xp *= &x;
            }
            assert_eq!(acc, legendre(n, &x), "n = {}", n);
        }
    }

    #[test]
    fn legendre_bounded_on_interval() {
        for n in 0..=30u64 {
            for i in -10..=10 {
                let x = rat(i, 10);
                let v = legendre(n, &x).abs();
                assert!(v <= Rational::one(), "|P_{}({})| = {}", n, x, v);
            }
        }
    }

    #[test]
    fn whipple_degenerate_and_sample() {
        assert!(whipple_check(&rat(1, 2), &rat_int(2), &rat(1, 3), &rat_int(3), 0).unwrap());
        assert!(whipple_check(&rat(1, 2), &rat_int(2), &rat(1, 3), &rat_int(3), 3).unwrap());
        assert!(whipple_check(&rat(2, 3), &rat(5, 3), &rat(1, 5), &rat(7, 3), 5).unwrap());
    }

    #[test]
    fn whipple_random_sweep() {
        let mut rng = ChaCha8Rng::seed_from_u64(20240229);
        let mut done = 0;
        while done < 50 {
            let d = *[3i64, 5, 7].iter().nth(rng.gen_range(0..3)).unwrap();
            let f = rat(rng.gen_range(1..2 * d), d);
            let h = rat(rng.gen_range(1..3 * d), d);
            let a = rat(rng.gen_range(1..2 * d), d + 2);
            let g = rat(rng.gen_range(1..3 * d), d);
            let n = rng.gen_range(1..=8u64);
            match whipple_check(&f, &h, &a, &g, n) {
                Ok(ok) => {
                    assert!(ok, "whipple fails at f={}, h={}, a={}, g={}, N={}", f, h, a, g, n);
                    done += 1;
                }
                Err(_) => continue, // parameter hit a pole; resample
            }
        }
    }

    #[test]
    fn clausen_trivial_and_arithmetic_cases() {
        let r = rat(1, 3);
        assert!(clausen_check(&r, &rat_int(0), 64).unwrap());
        assert!(clausen_check(&rat(1, 3), &rat(1, 5), 128).unwrap());
        for num in [rat(1, 2), rat(1, 3), rat(1, 4), rat(1, 6)] {
            assert!(clausen_check(&num, &rat(1, 7), 128).unwrap(), "r = {}", num);
        }
        assert!(clausen_check(&r, &rat(1, 2), 64).is_err());
    }
}
