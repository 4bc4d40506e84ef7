//! Exact algebra of rational functions with nonpositive-integer poles:
//! partial-fraction decomposition, termwise differentiation, and summation
//! over the positive integers into linear forms c_0 + sum_j c_j zeta(j).
//!
//! The summand families here are the ones producing the rational
//! approximations to zeta(3) (and, for odd s > 3, to linear forms in odd
//! zeta values): the squared-factorial-ratio summand whose derivative sums
//! to u_n zeta(3) - v_n, the symmetric summand with the half-integer shift,
//! and its (s, r) generalization.

use std::collections::BTreeMap;

use num::{BigInt, One, Signed, Zero};

use crate::error::Error;
use crate::exactnum::{factorial, lcm_upto, rat_int, zeta_int, PrecReal, Rational};
use crate::Result;

// ---------------------------------------------------------------------------
// Dense polynomials over the rationals (internal helper)
// ---------------------------------------------------------------------------

/// Dense polynomial, coefficient of t^i at index i; used only for the exact
/// reconstruction check.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Poly(pub Vec<Rational>);

impl Poly {
    pub fn constant(c: Rational) -> Self {
        Poly(vec![c])
    }

    /// The linear factor t + c.
    pub fn linear(c: Rational) -> Self {
        Poly(vec![c, Rational::one()])
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = vec![Rational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Poly(out)
    }

    pub fn add_scaled(&mut self, other: &Poly, k: &Rational) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), Rational::zero());
        }
        for (i, b) in other.0.iter().enumerate() {
            self.0[i] += b * k;
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant(Rational::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub(crate) fn trimmed(mut self) -> Poly {
        while self.0.len() > 1 && self.0.last().unwrap().is_zero() {
            self.0.pop();
        }
        self
    }
}

// ---------------------------------------------------------------------------
// Factored rational functions
// ---------------------------------------------------------------------------

/// A rational function kept in factored form:
/// scalar * prod (t - root)^mult / prod (t + k)^(m_k).
///
/// Numerator roots may be arbitrary rationals; poles sit at nonpositive
/// integers -k with k >= 0.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFunctionFactored {
    pub scalar: Rational,
    /// (root, multiplicity) meaning the factor (t - root)^multiplicity.
    pub numerator_roots: Vec<(Rational, u32)>,
    /// (k, m_k) meaning the factor (t + k)^(m_k) in the denominator; the k
    /// are distinct and sorted.
    pub pole_list: Vec<(u64, u32)>,
}

impl RationalFunctionFactored {
    pub fn numerator_degree(&self) -> usize {
        self.numerator_roots.iter().map(|(_, m)| *m as usize).sum()
    }

    pub fn denominator_degree(&self) -> usize {
        self.pole_list.iter().map(|(_, m)| *m as usize).sum()
    }

    pub fn is_proper(&self) -> bool {
        self.numerator_degree() < self.denominator_degree()
    }

    /// Exact evaluation at a rational point; `None` on a pole.
    pub fn eval(&self, t: &Rational) -> Option<Rational> {
        let mut den = Rational::one();
        for (k, m) in &self.pole_list {
            let f = t + rat_int(*k as i64);
            if f.is_zero() {
                return None;
            }
            den *= pow_rat(&f, *m);
        }
        let mut num = self.scalar.clone();
        for (root, m) in &self.numerator_roots {
            num *= pow_rat(&(t - root), *m);
        }
        Some(num / den)
    }

    /// Squares the function in factored form (multiplicities double).
    pub fn squared(&self) -> Self {
        RationalFunctionFactored {
            scalar: &self.scalar * &self.scalar,
            numerator_roots: self.numerator_roots.iter().map(|(r, m)| (r.clone(), 2 * m)).collect(),
            pole_list: self.pole_list.iter().map(|(k, m)| (*k, 2 * m)).collect(),
        }
    }
}

fn pow_rat(r: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= r;
    }
    acc
}

// ---------------------------------------------------------------------------
// Partial fractions
// ---------------------------------------------------------------------------

/// Exact partial-fraction data: terms[(k, j)] = A_{k,j} meaning
/// sum A_{k,j} / (t + k)^j.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct PartialFraction {
    pub terms: BTreeMap<(u64, u32), Rational>,
}

impl PartialFraction {
    pub fn coeff(&self, k: u64, j: u32) -> Rational {
        self.terms.get(&(k, j)).cloned().unwrap_or_else(Rational::zero)
    }
}

/// Truncated power-series arithmetic in the local variable u (internal).
fn series_mul(a: &[Rational], b: &[Rational], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn series_invert(a: &[Rational], len: usize) -> Vec<Rational> {
    assert!(!a[0].is_zero());
    let mut out = vec![Rational::zero(); len];
    out[0] = Rational::one() / &a[0];
    for n in 1..len {
        let mut s = Rational::zero();
        for k in 1..=n {
            if k < a.len() && !a[k].is_zero() {
                s += &a[k] * &out[n - k];
            }
        }
        out[n] = -s / &a[0];
    }
    out
}

/// Exact partial-fraction decomposition of a proper factored rational
/// function, via exact Taylor expansion of (t+k)^(m_k) * rf at t = -k.
pub fn partial_fractions(rf: &RationalFunctionFactored) -> Result<PartialFraction> {
    if !rf.is_proper() {
        return Err(Error::ImproperRational {
            num: rf.numerator_degree(),
            den: rf.denominator_degree(),
        });
    }
    let mut out = PartialFraction::default();
    for &(k, m) in &rf.pole_list {
        let len = m as usize;
        // numerator as a series in u = t + k: factors (u - (k + root))^mult
        let mut num = vec![Rational::zero(); len];
        num[0] = rf.scalar.clone();
        for (root, mult) in &rf.numerator_roots {
            let c = -(rat_int(k as i64) + root);
            for _ in 0..*mult {
                // multiply by (c + u)
                let mut next = vec![Rational::zero(); len];
                for i in 0..len {
                    if num[i].is_zero() {
                        continue;
                    }
                    next[i] += &num[i] * &c;
                    if i + 1 < len {
                        next[i + 1] += &num[i];
                    }
                }
                num = next;
            }
        }
        // denominator factors (u + (k' - k))^(m') for k' != k, as truncated
        // binomial series
        let mut den = vec![Rational::zero(); len];
        den[0] = Rational::one();
        for &(kp, mp) in &rf.pole_list {
            if kp == k {
                continue;
            }
            let c = rat_int(kp as i64 - k as i64);
            let mut factor = vec![Rational::zero(); len];
            let mut coef = pow_rat(&c, mp); // C(mp, i) c^(mp - i)
            factor[0] = coef.clone();
            for i in 1..len.min(mp as usize + 1) {
                coef = coef / &c * rat_int(mp as i64 - i as i64 + 1) / rat_int(i as i64);
                factor[i] = coef.clone();
            }
            den = series_mul(&den, &factor, len);
        }
        let g = series_mul(&num, &series_invert(&den, len), len);
        // g(u) = sum_i g_i u^i  =>  A_{k, m-i} = g_i
        for (i, gi) in g.into_iter().enumerate() {
            if !gi.is_zero() {
                out.terms.insert((k, m - i as u32), gi);
            }
        }
    }
    Ok(out)
}

/// Termwise derivative: A/(t+k)^j maps to -j A/(t+k)^(j+1).
pub fn pf_derivative(pf: &PartialFraction) -> PartialFraction {
    let mut out = PartialFraction::default();
    for (&(k, j), a) in &pf.terms {
        out.terms.insert((k, j + 1), a * rat_int(-(j as i64)));
    }
    out
}

/// Exact reconstruction check: recombining the decomposition over the common
/// denominator must reproduce the factored numerator identically.
pub fn verify_decomposition(rf: &RationalFunctionFactored, pf: &PartialFraction) -> bool {
    // left: sum A_{k,j} (t+k)^(m_k - j) prod_{k' != k} (t+k')^(m_k')
    let mut lhs = Poly::constant(Rational::zero());
    for (&(k, j), a) in &pf.terms {
        let mk = rf.pole_list.iter().find(|(kk, _)| *kk == k).map(|(_, m)| *m).unwrap_or(0);
        if j > mk {
            return false;
        }
        let mut p = Poly::linear(rat_int(k as i64)).pow(mk - j);
        for &(kp, mp) in &rf.pole_list {
            if kp != k {
                p = p.mul(&Poly::linear(rat_int(kp as i64)).pow(mp));
            }
        }
        lhs.add_scaled(&p, a);
    }
    // right: scalar * prod (t - root)^mult
    let mut rhs = Poly::constant(rf.scalar.clone());
    for (root, m) in &rf.numerator_roots {
        rhs = rhs.mul(&Poly::linear(-root.clone()).pow(*m));
    }
    lhs.trimmed() == rhs.trimmed()
}

// ---------------------------------------------------------------------------
// Linear forms in zeta values
// ---------------------------------------------------------------------------

/// Exact element constant + sum_{j>=2} zeta_coeffs[j] * zeta(j).
#[derive(Clone, Debug, PartialEq, Default)]
pub struct LinearForm {
    pub constant: Rational,
    pub zeta_coeffs: BTreeMap<u32, Rational>,
}

impl LinearForm {
    /// Coefficient of zeta(j) (zero when absent).
    pub fn zeta_coeff(&self, j: u32) -> Rational {
        self.zeta_coeffs.get(&j).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, k: &Rational) -> LinearForm {
        LinearForm {
            constant: &self.constant * k,
            zeta_coeffs: self
                .zeta_coeffs
                .iter()
                .map(|(j, c)| (*j, c * k))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Numeric evaluation with zeta values at `prec` bits.
    ///
    /// These forms cancel catastrophically (that is their whole point), so
    /// the working precision is raised until the result still carries
    /// `prec` certified bits past the cancellation.
    pub fn eval_numeric(&self, prec: u32) -> PrecReal {
        let mut w = prec + 16;
        loop {
            let mut acc = PrecReal::from_rational(&self.constant, w);
            let mut max_hi = acc.hi_exp();
            for (j, c) in &self.zeta_coeffs {
                if !c.is_zero() {
                    let term = PrecReal::from_rational(c, w).mul(&zeta_int(*j, w));
                    max_hi = max_hi.max(term.hi_exp());
                    acc = acc.add(&term);
                }
            }
            if acc.is_zero() && max_hi == i64::MIN {
                return PrecReal::zero(prec);
            }
            let err_exp = max_hi + 6 - w as i64;
            if !acc.is_zero() && acc.hi_exp() - err_exp >= prec as i64 {
                return acc.round_to(prec);
            }
            let deficit = (prec as i64 + err_exp - acc.hi_exp().max(err_exp)).max(64);
            w += deficit as u32 + 32;
            assert!(w < 1 << 20, "linear form evaluation cannot stabilize");
        }
    }

    fn insert_nonzero(&mut self, j: u32, c: Rational) {
        if !c.is_zero() {
            self.zeta_coeffs.insert(j, c);
        }
    }
}

/// Sums sum_{nu >= 1} of a partial-fraction expression exactly into a
/// linear form: zeta-coefficient j picks up sum_k A_{k,j}, the constant is
/// -sum_{k,j} A_{k,j} H_k^(j) with H_k^(j) the generalized harmonic numbers.
///
/// Requires the simple-pole residues to cancel (sum_k A_{k,1} = 0),
/// otherwise the sum diverges.
pub fn sum_over_positive_integers(pf: &PartialFraction) -> Result<LinearForm> {
    let residue_sum: Rational =
        pf.terms.iter().filter(|((_, j), _)| *j == 1).map(|(_, a)| a.clone()).sum();
    if !residue_sum.is_zero() {
        return Err(Error::DivergentSum { residue_sum: residue_sum.to_string() });
    }
    // harmonic numbers H_k^(j) for every needed (k, j)
    let kmax = pf.terms.keys().map(|(k, _)| *k).max().unwrap_or(0);
    let jmax = pf.terms.keys().map(|(_, j)| *j).max().unwrap_or(1);
    let mut harmonic: Vec<Vec<Rational>> = Vec::with_capacity(jmax as usize + 1);
    for j in 0..=jmax {
        let mut row = Vec::with_capacity(kmax as usize + 1);
        row.push(Rational::zero());
        for k in 1..=kmax {
            let term = Rational::new(BigInt::one(), BigInt::from(k).pow(j));
            let prev = row.last().unwrap().clone();
            row.push(prev + term);
        }
        harmonic.push(row);
    }
    let mut out = LinearForm::default();
    let mut zeta: BTreeMap<u32, Rational> = BTreeMap::new();
    let mut constant = Rational::zero();
    for (&(k, j), a) in &pf.terms {
        if j >= 2 {
            *zeta.entry(j).or_insert_with(Rational::zero) += a;
        }
        constant -= a * &harmonic[j as usize][k as usize];
    }
    out.constant = constant;
    for (j, c) in zeta {
        out.insert_nonzero(j, c);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// The zeta(3) / odd-zeta summand families
// ---------------------------------------------------------------------------

/// The symmetric rational summand
/// n!^(s+1-2r) (t + n/2) prod_{j=1..rn}(t-j) prod_{j=1..rn}(t+n+j)
///   / prod_{j=0..n}(t+j)^(s+1)
/// in factored form. Requires odd s >= 3 and 1 <= r < s/2.
pub fn rivoal_rational(n: u64, s: u32, r: u32) -> Result<RationalFunctionFactored> {
    if s < 3 || s % 2 == 0 {
        return Err(Error::InvalidParameter(format!("s must be odd and >= 3, got {}", s)));
    }
    if r < 1 || 2 * r >= s {
        return Err(Error::InvalidParameter(format!("r must satisfy 1 <= r < s/2, got {}", r)));
    }
    let scalar = Rational::from(factorial(n).pow(s + 1 - 2 * r));
    let mut roots = vec![(Rational::new(BigInt::from(n as i64), BigInt::from(-2)), 1)];
    for j in 1..=(r as u64 * n) {
        roots.push((rat_int(j as i64), 1));
        roots.push((rat_int(-((n + j) as i64)), 1));
    }
    let pole_list = (0..=n).map(|k| (k, s + 1)).collect();
    Ok(RationalFunctionFactored { scalar, numerator_roots: roots, pole_list })
}

/// The squared summand prod(t-j)^2 / prod(t+j)^2 behind the
/// derivative-series representation of u_n zeta(3) - v_n.
pub fn gn_rational_squared(n: u64) -> RationalFunctionFactored {
    assert!(n >= 1);
    let base = RationalFunctionFactored {
        scalar: Rational::one(),
        numerator_roots: (1..=n).map(|j| (rat_int(j as i64), 1)).collect(),
        pole_list: (0..=n).map(|k| (k, 1)).collect(),
    };
    base.squared()
}

/// u_n zeta(3) - v_n as an exact linear form, from the derivative series:
/// -(1/2) sum_{nu>=1} d/dt (prod(t-j)/prod(t+j))^2 at t = nu.
pub fn linear_form_gn(n: u64) -> LinearForm {
    let rf = gn_rational_squared(n);
    let pf = partial_fractions(&rf).expect("squared summand is proper");
    let d = pf_derivative(&pf);
    let lf = sum_over_positive_integers(&d).expect("derivative has no simple poles left");
    lf.scale(&Rational::new(BigInt::from(-1), BigInt::from(2)))
}

/// The same linear form from the symmetric summand with (s, r) = (3, 1).
pub fn linear_form_ball(n: u64) -> LinearForm {
    linear_form_rivoal(n, 3, 1).expect("(s, r) = (3, 1) is always valid")
}

/// Linear form sum_{nu>=1} of the (s, r) summand; for odd s all even-index
/// zeta coefficients vanish.
pub fn linear_form_rivoal(n: u64, s: u32, r: u32) -> Result<LinearForm> {
    let rf = rivoal_rational(n, s, r)?;
    let pf = partial_fractions(&rf)?;
    sum_over_positive_integers(&pf)
}

/// True when 2 d_n^(s+1) times every coefficient of the form is an integer.
pub fn has_scaled_integer_coeffs(lf: &LinearForm, n: u64, s: u32) -> bool {
    let scale = Rational::from(BigInt::from(2) * lcm_upto(n.max(1)).pow(s + 1));
    let ok = |c: &Rational| (c * &scale).is_integer();
    ok(&lf.constant) && lf.zeta_coeffs.values().all(ok)
}
