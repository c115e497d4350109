//! Exact arithmetic helpers.
//!
//! Two closed-form representations let structural identities be checked
//! without rounding:
//!
//! * [`LogForm`]: a real number `Σ c_p · log2(p)` over primes `p` with
//!   rational coefficients. Logarithms of distinct primes are linearly
//!   independent over the rationals, so two forms denote the same real iff
//!   their coefficient maps are equal. Entropies, divergences and
//!   self-information of rational measures all live in this space.
//! * [`Surd`] / [`SurdSum`]: products `c · Π p^e` with rational `c` and
//!   fractional exponents `0 < e < 1`, and finite sums of them. Distinct
//!   radicals are linearly independent over the rationals (Besicovitch), so
//!   sums compare exactly by grouping on the radical. Gale values with a
//!   rational payoff exponent `s` live here.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Parses `"num/den"`, an integer, or a plain decimal such as `"0.75"` into
/// an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || Error::Parse(format!("not a rational number: `{text}`"));
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{text}`")));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let int = int.trim_start_matches(['-', '+']);
        let digits = format!("{}{}", if int.is_empty() { "0" } else { int }, frac);
        let mut n: BigInt = digits.parse().map_err(|_| bad())?;
        if negative {
            n = -n;
        }
        let d = num_traits::pow(BigInt::from(10u32), frac.len());
        return Ok(BigRational::new(n, d));
    }
    let n: BigInt = t.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

/// Recovers `p/q` with `q <= max_den` when it reproduces `x` bit-for-bit.
pub fn small_rational(x: f64, max_den: u64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    for q in 1..=max_den {
        let p = (x * q as f64).round();
        if p.abs() > 1e15 {
            return None;
        }
        if p / q as f64 == x {
            return Some(BigRational::new(BigInt::from(p as i64), BigInt::from(q)));
        }
    }
    None
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    match r.to_f64() {
        Some(v) if v.is_finite() && (v != 0.0 || r.is_zero()) => v,
        _ => {
            let sign = if r.is_negative() { -1.0 } else { 1.0 };
            sign * rational_log2(&r.abs()).exp2()
        }
    }
}

/// `log2(n)` for a positive big integer without overflowing `f64`.
pub fn bigint_log2(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 63 {
        return n.to_u64().map(|v| (v as f64).log2()).unwrap_or(f64::NAN);
    }
    let shift = bits - 63;
    let top = (n >> shift).to_u64().unwrap_or(u64::MAX);
    (top as f64).log2() + shift as f64
}

/// `log2(r)` for a positive rational; `-inf` for zero.
pub fn rational_log2(r: &BigRational) -> f64 {
    if r.is_zero() {
        return f64::NEG_INFINITY;
    }
    bigint_log2(r.numer()) - bigint_log2(r.denom())
}

/// Smallest `L >= 0` with `p · 2^L >= 1`, i.e. `⌈log2(1/p)⌉` for `0 < p <= 1`.
pub fn ceil_log2_inverse(p: &BigRational) -> u32 {
    debug_assert!(p.is_positive());
    let estimate = -rational_log2(p);
    let near = estimate.round();
    if (estimate - near).abs() > 1e-6 {
        return estimate.ceil().max(0.0) as u32;
    }
    // Close to an integer: decide exactly.
    let mut l = (near as i64 - 1).max(0) as u32;
    loop {
        let scaled = p.numer() << l as usize;
        if scaled >= *p.denom() {
            return l;
        }
        l += 1;
    }
}

pub fn pow2(e: u32) -> BigRational {
    BigRational::from_integer(BigInt::one() << e as usize)
}

pub fn inv_pow2(e: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << e as usize)
}

/// Trial-division factorisation. Adequate for the small numerators and
/// denominators of rational measures.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

const MAX_FACTOR: u64 = 1 << 40;

fn bigint_factors(n: &BigInt, sign: i64, into: &mut BTreeMap<u64, i64>) -> Result<()> {
    let v = n
        .to_u64()
        .filter(|v| *v <= MAX_FACTOR)
        .ok_or_else(|| Error::NotExact(format!("{n} is too large to factor")))?;
    for (p, e) in factorize(v) {
        *into.entry(p).or_insert(0) += sign * e as i64;
    }
    Ok(())
}

/// Prime exponents of a positive rational: `r = Π p^e`.
pub fn rational_factors(r: &BigRational) -> Result<BTreeMap<u64, i64>> {
    if !r.is_positive() {
        return Err(Error::NotExact(format!("cannot factor non-positive {r}")));
    }
    let mut map = BTreeMap::new();
    bigint_factors(r.numer(), 1, &mut map)?;
    bigint_factors(r.denom(), -1, &mut map)?;
    map.retain(|_, e| *e != 0);
    Ok(map)
}

fn prime_power(p: u64, e: i64) -> BigRational {
    let base = BigInt::from(p);
    let mag = num_traits::pow(base, e.unsigned_abs() as usize);
    if e >= 0 {
        BigRational::from_integer(mag)
    } else {
        BigRational::new(BigInt::one(), mag)
    }
}

/// Exact real of the form `Σ c_p · log2(p)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LogForm {
    terms: BTreeMap<u64, BigRational>,
}

impl LogForm {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `log2(r)` for a positive rational `r`.
    pub fn log2_of(r: &BigRational) -> Result<Self> {
        let terms = rational_factors(r)?
            .into_iter()
            .map(|(p, e)| (p, BigRational::from_integer(BigInt::from(e))))
            .collect();
        Ok(Self { terms })
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero();
        if c.is_zero() {
            return out;
        }
        for (p, v) in &self.terms {
            out.terms.insert(*p, v * c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(p, c)| rational_to_f64(c) * (*p as f64).log2())
            .sum()
    }

    /// The rational `q` with `self = q · other`, if one exists.
    pub fn ratio_to(&self, other: &LogForm) -> Option<BigRational> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if self.terms.len() != other.terms.len() {
            return None;
        }
        let mut ratio: Option<BigRational> = None;
        for (p, c) in &self.terms {
            let d = other.terms.get(p)?;
            let q = c / d;
            match &ratio {
                None => ratio = Some(q),
                Some(r) if *r == q => {}
                Some(_) => return None,
            }
        }
        ratio
    }

    fn combine(mut self, other: &LogForm, sign: i32) -> Self {
        for (p, c) in &other.terms {
            let entry = self.terms.entry(*p).or_insert_with(BigRational::zero);
            if sign > 0 {
                *entry += c;
            } else {
                *entry -= c;
            }
        }
        self.terms.retain(|_, c| !c.is_zero());
        self
    }
}

impl Add for LogForm {
    type Output = LogForm;
    fn add(self, rhs: LogForm) -> LogForm {
        self.combine(&rhs, 1)
    }
}

impl Sub for LogForm {
    type Output = LogForm;
    fn sub(self, rhs: LogForm) -> LogForm {
        self.combine(&rhs, -1)
    }
}

impl Neg for LogForm {
    type Output = LogForm;
    fn neg(self) -> LogForm {
        LogForm::zero().combine(&self, -1)
    }
}

impl std::iter::Sum for LogForm {
    fn sum<I: Iterator<Item = LogForm>>(iter: I) -> LogForm {
        iter.fold(LogForm::zero(), |acc, x| acc + x)
    }
}

type Radical = BTreeMap<u64, BigRational>;

/// `coeff · Π p^e` with every exponent strictly between 0 and 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    coeff: BigRational,
    radical: Radical,
}

impl Surd {
    pub fn rational(coeff: BigRational) -> Self {
        Self { coeff, radical: Radical::new() }
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    /// `base^exp` for a non-negative rational base and rational exponent.
    pub fn power(base: &BigRational, exp: &BigRational) -> Result<Self> {
        if base.is_negative() {
            return Err(Error::NotExact(format!("negative base {base}")));
        }
        if exp.is_zero() {
            return Ok(Self::one());
        }
        if base.is_zero() {
            if exp.is_positive() {
                return Ok(Self::rational(BigRational::zero()));
            }
            return Err(Error::NotExact("zero raised to a negative power".into()));
        }
        let mut coeff = BigRational::one();
        let mut radical = Radical::new();
        for (p, e) in rational_factors(base)? {
            let total = BigRational::from_integer(BigInt::from(e)) * exp;
            let whole = total.floor();
            let frac = &total - &whole;
            let whole = whole.to_integer().to_i64().ok_or_else(|| {
                Error::NotExact(format!("exponent {total} out of range"))
            })?;
            coeff *= prime_power(p, whole);
            if !frac.is_zero() {
                radical.insert(p, frac);
            }
        }
        Ok(Self { coeff, radical })
    }

    pub fn coeff(&self) -> &BigRational {
        &self.coeff
    }

    pub fn is_rational(&self) -> bool {
        self.radical.is_empty()
    }

    pub fn mul(&self, other: &Surd) -> Surd {
        let mut coeff = &self.coeff * &other.coeff;
        if coeff.is_zero() {
            return Surd::rational(coeff);
        }
        let mut radical = self.radical.clone();
        for (p, e) in &other.radical {
            let entry = radical.entry(*p).or_insert_with(BigRational::zero);
            *entry += e;
            if *entry >= BigRational::one() {
                *entry -= BigRational::one();
                coeff *= BigRational::from_integer(BigInt::from(*p));
            }
        }
        radical.retain(|_, e| !e.is_zero());
        Surd { coeff, radical }
    }

    pub fn mul_rational(&self, r: &BigRational) -> Surd {
        if r.is_zero() {
            return Surd::rational(BigRational::zero());
        }
        Surd { coeff: &self.coeff * r, radical: self.radical.clone() }
    }

    pub fn log2(&self) -> f64 {
        let base = rational_log2(&self.coeff.abs());
        base + self
            .radical
            .iter()
            .map(|(p, e)| rational_to_f64(e) * (*p as f64).log2())
            .sum::<f64>()
    }

    pub fn to_f64(&self) -> f64 {
        if self.coeff.is_zero() {
            return 0.0;
        }
        let sign = if self.coeff.is_negative() { -1.0 } else { 1.0 };
        sign * self.log2().exp2()
    }
}

/// Finite sum of [`Surd`]s, grouped by radical.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SurdSum {
    terms: BTreeMap<Radical, BigRational>,
}

impl SurdSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, s: &Surd) {
        if s.coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(s.radical.clone()).or_insert_with(BigRational::zero);
        *entry += &s.coeff;
        if entry.is_zero() {
            self.terms.remove(&s.radical);
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(r, c)| Surd { coeff: c.clone(), radical: r.clone() }.to_f64())
            .sum()
    }
}

impl From<&Surd> for SurdSum {
    fn from(s: &Surd) -> Self {
        let mut sum = SurdSum::new();
        sum.add(s);
        sum
    }
}

/// Exact `Σ 2^{-len}` for a list of code lengths.
pub fn kraft_sum(lengths: &[u32]) -> BigRational {
    let Some(&max) = lengths.iter().max() else {
        return BigRational::zero();
    };
    let mut total = BigUint::zero();
    for &l in lengths {
        total += BigUint::one() << (max - l) as usize;
    }
    BigRational::new(BigInt::from_biguint(Sign::Plus, total), BigInt::one() << max as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parses_rational_forms() {
        assert_eq!(parse_rational("3/4").unwrap(), q(3, 4));
        assert_eq!(parse_rational(" 0.75 ").unwrap(), q(3, 4));
        assert_eq!(parse_rational("2").unwrap(), q(2, 1));
        assert_eq!(parse_rational("-.5").unwrap(), q(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn small_rational_recovers_simple_fractions() {
        assert_eq!(small_rational(0.5, 64), Some(q(1, 2)));
        assert_eq!(small_rational(2.0, 64), Some(q(2, 1)));
        assert_eq!(small_rational(1.0 / 3.0, 64), Some(q(1, 3)));
        assert_eq!(small_rational(std::f64::consts::PI, 64), None);
    }

    #[test]
    fn factorizes() {
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(97), vec![(97, 1)]);
        assert!(factorize(1).is_empty());
    }

    #[test]
    fn ceil_log2_inverse_is_exact_at_powers_of_two() {
        assert_eq!(ceil_log2_inverse(&q(1, 1)), 0);
        assert_eq!(ceil_log2_inverse(&q(1, 2)), 1);
        assert_eq!(ceil_log2_inverse(&q(1, 8)), 3);
        assert_eq!(ceil_log2_inverse(&q(3, 16)), 3);
        assert_eq!(ceil_log2_inverse(&q(1, 9)), 4);
        let just_below = BigRational::new(
            (BigInt::one() << 80usize) - 1,
            BigInt::one() << 100usize,
        );
        assert_eq!(ceil_log2_inverse(&just_below), 21);
    }

    #[test]
    fn log_forms_add_exactly() {
        // log2(3/4) + log2(4/3) = 0
        let a = LogForm::log2_of(&q(3, 4)).unwrap();
        let b = LogForm::log2_of(&q(4, 3)).unwrap();
        assert!((a.clone() + b).is_zero());
        let two = LogForm::log2_of(&q(2, 1)).unwrap();
        assert_eq!(a.ratio_to(&two), None);
        let eight = LogForm::log2_of(&q(8, 1)).unwrap();
        assert_eq!(eight.ratio_to(&two), Some(q(3, 1)));
        assert!((a.to_f64() - (0.75f64).log2()).abs() < 1e-15);
    }

    #[test]
    fn surds_normalise_integer_exponent_parts() {
        // (1/2)^(1/2) = 2^{-1} · 2^{1/2}
        let s = Surd::power(&q(1, 2), &q(1, 2)).unwrap();
        assert_eq!(s.coeff(), &q(1, 2));
        let squared = s.mul(&s);
        assert!(squared.is_rational());
        assert_eq!(squared.coeff(), &q(1, 2));
        assert!((s.to_f64() - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn surd_sums_distinguish_radicals() {
        let half = Surd::power(&q(1, 2), &q(1, 2)).unwrap();
        let mut lhs = SurdSum::new();
        lhs.add(&half);
        lhs.add(&half);
        // 2 · 2^{-1/2} = 2^{1/2} ≠ 1
        assert_ne!(lhs, SurdSum::from(&Surd::one()));
        assert_eq!(lhs, SurdSum::from(&Surd::power(&q(2, 1), &q(1, 2)).unwrap()));
    }

    #[test]
    fn kraft_sum_of_complete_code_is_one() {
        assert_eq!(kraft_sum(&[1, 2, 3, 3]), q(1, 1));
        assert_eq!(kraft_sum(&[2, 2, 2]), q(3, 4));
    }
}
