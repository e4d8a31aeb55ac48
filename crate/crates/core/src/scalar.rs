//! Exact scalars of the form `sign * prod p^(e/2) * pi^m`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{GvError, Result};

/// Trial division bound used when factoring rationals.
const FACTOR_BOUND: u64 = 1 << 20;

/// An element of `{0} ∪ ±Q_{>0}^{1/2} π^Z`.
///
/// Prime exponents are stored doubled, so `3^(69/2)` is stored as `3 -> 69`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExactScalar {
    zero: bool,
    negative: bool,
    primes: BTreeMap<u64, i64>,
    pi: i64,
}

impl ExactScalar {
    pub fn zero() -> Self {
        ExactScalar { zero: true, negative: false, primes: BTreeMap::new(), pi: 0 }
    }

    pub fn one() -> Self {
        ExactScalar { zero: false, negative: false, primes: BTreeMap::new(), pi: 0 }
    }

    /// `pi^m`.
    pub fn pi_pow(m: i64) -> Self {
        ExactScalar { pi: m, ..Self::one() }
    }

    /// `p^(num/2)` for a prime `p`. The caller is responsible for primality.
    pub fn prime_half_pow(p: u64, twice: i64) -> Self {
        let mut s = Self::one();
        if twice != 0 {
            s.primes.insert(p, twice);
        }
        s
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_bigint(&BigInt::from(n)).expect("machine integers factor")
    }

    pub fn from_bigint(n: &BigInt) -> Result<Self> {
        Self::from_ratio(&BigRational::from_integer(n.clone()))
    }

    pub fn from_ratio(q: &BigRational) -> Result<Self> {
        if q.is_zero() {
            return Ok(Self::zero());
        }
        let negative = q.is_negative();
        let mut primes = BTreeMap::new();
        for (p, e) in factor(q.numer().magnitude())? {
            *primes.entry(p).or_insert(0) += 2 * e as i64;
        }
        for (p, e) in factor(q.denom().magnitude())? {
            *primes.entry(p).or_insert(0) -= 2 * e as i64;
        }
        primes.retain(|_, e| *e != 0);
        Ok(ExactScalar { zero: false, negative, primes, pi: 0 })
    }

    /// Positive square root of a nonnegative rational.
    pub fn sqrt_of(q: &BigRational) -> Result<Self> {
        if q.is_negative() {
            return Err(GvError::NotRepresentable(format!("sqrt of negative {q}")));
        }
        Self::from_ratio(q)?.sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i8 {
        if self.zero {
            0
        } else if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn pi_exponent(&self) -> i64 {
        self.pi
    }

    /// Doubled prime exponents, ascending by prime.
    pub fn doubled_exponents(&self) -> &BTreeMap<u64, i64> {
        &self.primes
    }

    /// Exponent of `p` as `(numerator, denominator)` with denominator 1 or 2.
    pub fn prime_exponent(&self, p: u64) -> (i64, i64) {
        let t = self.primes.get(&p).copied().unwrap_or(0);
        if t % 2 == 0 {
            (t / 2, 1)
        } else {
            (t, 2)
        }
    }

    pub fn abs(&self) -> Self {
        ExactScalar { negative: false, ..self.clone() }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.zero {
            return Err(GvError::DivisionByZero);
        }
        Ok(ExactScalar {
            zero: false,
            negative: self.negative,
            primes: self.primes.iter().map(|(p, e)| (*p, -e)).collect(),
            pi: -self.pi,
        })
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.zero || other.zero {
            return Self::zero();
        }
        let mut primes = self.primes.clone();
        for (p, e) in &other.primes {
            *primes.entry(*p).or_insert(0) += e;
        }
        primes.retain(|_, e| *e != 0);
        ExactScalar {
            zero: false,
            negative: self.negative != other.negative,
            primes,
            pi: self.pi + other.pi,
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        if self.zero {
            return match k.cmp(&0) {
                std::cmp::Ordering::Greater => Ok(Self::zero()),
                std::cmp::Ordering::Equal => Ok(Self::one()),
                std::cmp::Ordering::Less => Err(GvError::DivisionByZero),
            };
        }
        Ok(ExactScalar {
            zero: false,
            negative: self.negative && k % 2 != 0,
            primes: self.primes.iter().filter(|_| k != 0).map(|(p, e)| (*p, e * k)).collect(),
            pi: self.pi * k,
        })
    }

    /// Positive square root; fails when an exponent would leave the half-integers.
    pub fn sqrt(&self) -> Result<Self> {
        if self.zero {
            return Ok(Self::zero());
        }
        if self.negative {
            return Err(GvError::NotRepresentable(format!("sqrt of {self}")));
        }
        if self.pi % 2 != 0 || self.primes.values().any(|e| e % 2 != 0) {
            return Err(GvError::NotRepresentable(format!("sqrt of {self}")));
        }
        Ok(ExactScalar {
            zero: false,
            negative: false,
            primes: self.primes.iter().map(|(p, e)| (*p, e / 2)).collect(),
            pi: self.pi / 2,
        })
    }

    /// The value as a rational, if it has no surd or pi part.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.zero {
            return Some(BigRational::zero());
        }
        if self.pi != 0 || self.primes.values().any(|e| e % 2 != 0) {
            return None;
        }
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (p, e) in &self.primes {
            let b = BigInt::from(*p).pow((e.unsigned_abs() / 2) as u32);
            if *e > 0 {
                num *= b;
            } else {
                den *= b;
            }
        }
        if self.negative {
            num = -num;
        }
        Some(BigRational::new(num, den))
    }

    pub fn mul_rational(&self, q: &BigRational) -> Result<Self> {
        Ok(self.mul(&Self::from_ratio(q)?))
    }

    /// Decimal approximation with `digits` digits after the point.
    pub fn to_decimal(&self, digits: usize) -> String {
        if self.zero {
            return "0".to_string();
        }
        // value = r * sqrt(c) * pi^m
        let mut r_num = BigInt::one();
        let mut r_den = BigInt::one();
        let mut c = BigInt::one();
        for (p, t) in &self.primes {
            let fl = t.div_floor(&2);
            let rem = t - 2 * fl;
            let b = BigInt::from(*p).pow(fl.unsigned_abs() as u32);
            if fl >= 0 {
                r_num *= b;
            } else {
                r_den *= b;
            }
            if rem == 1 {
                c *= *p;
            }
        }
        let r = BigRational::new(r_num, r_den);
        let mag = decimal_magnitude(&r) + (self.pi.unsigned_abs() as usize) + 1;
        let work = digits + mag + 20;
        let pi = pi_rational(work);
        let mut v = r;
        let pim = pow_rational(&pi, self.pi);
        v *= pim;
        // round(sqrt(v^2 * c) * 10^digits)
        let ten = BigInt::from(10).pow(digits as u32);
        let t = &v * &v * BigRational::from_integer(c) * BigRational::from_integer(&ten * &ten);
        let four_t = (t * BigRational::from_integer(BigInt::from(4))).floor().to_integer();
        let s = four_t.sqrt();
        let n: BigInt = (s + BigInt::one()) / BigInt::from(2);
        let int_part = &n / &ten;
        let frac = &n % &ten;
        let sign = if self.negative { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{:0>width$}", frac.to_string(), width = digits)
        }
    }

    pub fn to_json(&self) -> Value {
        let primes: serde_json::Map<String, Value> = self
            .primes
            .iter()
            .map(|(p, t)| (p.to_string(), Value::String(exp_string(*t))))
            .collect();
        json!({ "sign": self.signum(), "primes": primes, "pi": self.pi })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| GvError::Parse(v.to_string(), m.to_string());
        let sign = v.get("sign").and_then(Value::as_i64).ok_or_else(|| bad("sign"))?;
        if sign == 0 {
            return Ok(Self::zero());
        }
        let pi = v.get("pi").and_then(Value::as_i64).ok_or_else(|| bad("pi"))?;
        let mut s = Self::pi_pow(pi);
        if sign < 0 {
            s = -s;
        }
        let primes = v.get("primes").and_then(Value::as_object).ok_or_else(|| bad("primes"))?;
        for (p, e) in primes {
            let p: u64 = p.parse().map_err(|_| bad("prime key"))?;
            let e = e.as_str().ok_or_else(|| bad("exponent"))?;
            s = s.mul(&Self::prime_half_pow(p, parse_doubled_exp(e).ok_or_else(|| bad("exponent"))?));
        }
        Ok(s)
    }
}

fn exp_string(t: i64) -> String {
    if t % 2 == 0 {
        (t / 2).to_string()
    } else {
        format!("{t}/2")
    }
}

fn parse_doubled_exp(s: &str) -> Option<i64> {
    let s = s.trim();
    let s = s.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(s);
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().ok()?;
            let d: i64 = d.trim().parse().ok()?;
            match d {
                1 => Some(2 * n),
                2 => Some(n),
                _ => None,
            }
        }
        None => Some(2 * s.parse::<i64>().ok()?),
    }
}

fn decimal_magnitude(r: &BigRational) -> usize {
    let n = r.numer().magnitude().to_string().len();
    let d = r.denom().magnitude().to_string().len();
    n.saturating_sub(d) + 1
}

fn pow_rational(x: &BigRational, k: i64) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..k.unsigned_abs() {
        acc *= x;
    }
    if k < 0 {
        acc.recip()
    } else {
        acc
    }
}

/// Rational approximation of pi with absolute error below `10^-digits`.
pub(crate) fn pi_rational(digits: usize) -> BigRational {
    let guard = digits + 10;
    let scale = BigInt::from(10).pow(guard as u32);
    let atan_inv = |x: u32| -> BigInt {
        let x2 = BigInt::from(x * x);
        let mut term = &scale / BigInt::from(x);
        let mut sum = term.clone();
        let mut k = 1u32;
        while !term.is_zero() {
            term = &term / &x2;
            let t = &term / BigInt::from(2 * k + 1);
            if k % 2 == 1 {
                sum -= t;
            } else {
                sum += t;
            }
            k += 1;
        }
        sum
    };
    let p = BigInt::from(16) * atan_inv(5) - BigInt::from(4) * atan_inv(239);
    BigRational::new(p, scale)
}

/// Factor a positive integer by trial division.
fn factor(n: &BigUint) -> Result<Vec<(u64, u32)>> {
    let mut out = Vec::new();
    let mut n = n.clone();
    if n.is_zero() {
        return Err(GvError::NotRepresentable("factor of zero".into()));
    }
    let mut d: u64 = 2;
    while !n.is_one() {
        if d > FACTOR_BOUND {
            // remaining cofactor must be prime to be accepted
            if n < BigUint::from(FACTOR_BOUND) * BigUint::from(FACTOR_BOUND) {
                let p = n.to_u64().expect("below bound squared");
                out.push((p, 1));
                break;
            }
            return Err(GvError::Unfactorable(n.to_string()));
        }
        if BigUint::from(d) * BigUint::from(d) > n {
            let p = n.to_u64().ok_or_else(|| GvError::Unfactorable(n.to_string()))?;
            out.push((p, 1));
            break;
        }
        let mut e = 0u32;
        loop {
            let (q, r) = n.div_rem(&BigUint::from(d));
            if r.is_zero() {
                n = q;
                e += 1;
            } else {
                break;
            }
        }
        if e > 0 {
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    Ok(out)
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zero {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = Vec::new();
        for (p, t) in &self.primes {
            parts.push(if *t == 2 {
                p.to_string()
            } else if t % 2 == 0 {
                format!("{p}^{}", t / 2)
            } else {
                format!("{p}^({t}/2)")
            });
        }
        match self.pi {
            0 => {}
            1 => parts.push("pi".into()),
            m => parts.push(format!("pi^{m}")),
        }
        let body = if parts.is_empty() { "1".to_string() } else { parts.join("*") };
        if self.negative {
            write!(f, "-{body}")
        } else {
            write!(f, "{body}")
        }
    }
}

impl FromStr for ExactScalar {
    type Err = GvError;

    fn from_str(s: &str) -> Result<Self> {
        let err = |m: &str| GvError::Parse(s.to_string(), m.to_string());
        let t = s.trim();
        if t == "0" {
            return Ok(Self::zero());
        }
        let (neg, body) = match t.strip_prefix('-') {
            Some(b) => (true, b),
            None => (false, t),
        };
        if body.is_empty() {
            return Err(err("empty"));
        }
        let mut acc = Self::one();
        for factor_str in body.split('*') {
            let (base, exp) = match factor_str.split_once('^') {
                Some((b, e)) => (b.trim(), Some(e.trim())),
                None => (factor_str.trim(), None),
            };
            if base == "pi" {
                let m = match exp {
                    Some(e) => e.trim_matches(|c| c == '(' || c == ')').parse::<i64>().map_err(|_| err("pi exponent"))?,
                    None => 1,
                };
                acc = acc.mul(&Self::pi_pow(m));
                continue;
            }
            let b: BigInt = base.parse().map_err(|_| err("base"))?;
            if b.sign() != Sign::Plus {
                return Err(err("base must be positive"));
            }
            let twice = match exp {
                Some(e) => parse_doubled_exp(e).ok_or_else(|| err("exponent"))?,
                None => 2,
            };
            let bs = Self::from_bigint(&b)?;
            let doubled = bs.pow(twice)?;
            // bs^twice has doubled exponents 2*e*twice; halve them back
            let half = ExactScalar {
                zero: false,
                negative: false,
                primes: doubled.primes.iter().map(|(p, e)| (*p, e / 2)).collect(),
                pi: 0,
            };
            acc = acc.mul(&half);
        }
        Ok(if neg { -acc } else { acc })
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        if self.zero {
            self
        } else {
            ExactScalar { negative: !self.negative, ..self }
        }
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -(self.clone())
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar::mul(self, rhs)
    }
}

impl serde::Serialize for ExactScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        Self::from_i64(n)
    }
}

/// `n!` as an exact scalar.
pub fn factorial(n: u64) -> ExactScalar {
    let mut acc = ExactScalar::one();
    for k in 2..=n {
        acc = acc.mul(&ExactScalar::from_i64(k as i64));
    }
    acc
}

/// `base^(twice/2)` for a positive integer base.
pub fn int_half_pow(base: i64, twice: i64) -> ExactScalar {
    let b = ExactScalar::from_i64(base);
    let doubled = b.pow(twice).expect("nonzero base");
    ExactScalar {
        zero: false,
        negative: false,
        primes: doubled.primes.iter().map(|(p, e)| (*p, e / 2)).collect(),
        pi: 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> ExactScalar {
        x.parse().unwrap()
    }

    #[test]
    fn surd_square() {
        let r2 = s("2^(1/2)");
        assert_eq!(r2.mul(&r2), ExactScalar::from_i64(2));
    }

    #[test]
    fn cancellation() {
        let a = s("-3*2^-1*pi^-2");
        let b = s("2^2*3^-1*pi^2");
        assert_eq!(a.mul(&b), ExactScalar::from_i64(-2));
    }

    #[test]
    fn exponent_addition() {
        let x = s("2^(3/2)").mul(&s("2^(1/2)")).mul(&s("3"));
        assert_eq!(x, ExactScalar::from_i64(12));
    }

    #[test]
    fn divisions() {
        assert_eq!(s("81").div(&s("81")).unwrap(), ExactScalar::one());
        assert_eq!(s("2^19*3^(69/2)").div(&s("3^(1/2)")).unwrap(), s("2^19*3^34"));
        assert_eq!(s("pi^3").div(&s("pi")).unwrap(), s("pi^2"));
        assert_eq!(s("5").div(&ExactScalar::zero()), Err(GvError::DivisionByZero));
    }

    #[test]
    fn decimals() {
        assert_eq!(s("2^(1/2)").to_decimal(4), "1.4142");
        assert_eq!(s("pi^2").to_decimal(3), "9.870");
        assert_eq!(ExactScalar::zero().to_decimal(5), "0");
        assert_eq!(s("-pi^-1").to_decimal(6), "-0.318310");
    }

    #[test]
    fn canonical_rendering() {
        let x = s("-2^19*3^(69/2)*7^4*11^16*13");
        assert_eq!(x.to_string(), "-2^19*3^(69/2)*7^4*11^16*13");
        assert_eq!(s("6").to_string(), "2*3");
        assert_eq!(s("3^(-1/2)*pi^-3").to_string(), "3^(-1/2)*pi^-3");
        assert_eq!(ExactScalar::one().to_string(), "1");
        assert_eq!((-ExactScalar::one()).to_string(), "-1");
    }

    #[test]
    fn zero_is_unique() {
        let z = ExactScalar::zero();
        assert_eq!(z.mul(&s("pi^4*7")), ExactScalar::zero());
        assert_eq!(-z.clone(), z);
    }

    #[test]
    fn json_round_trip() {
        let x = s("-2^19*3^(69/2)*pi^-16");
        assert_eq!(ExactScalar::from_json(&x.to_json()).unwrap(), x);
        assert_eq!(ExactScalar::from_json(&ExactScalar::zero().to_json()).unwrap(), ExactScalar::zero());
    }

    #[test]
    fn non_canonical_input_normalizes() {
        assert_eq!(s("4^(3/2)"), s("2^3"));
        assert_eq!(s("72^8"), s("2^24*3^16"));
    }

    #[test]
    fn rational_extraction() {
        let q = s("-2^3*3^-2").to_rational().unwrap();
        assert_eq!(q, BigRational::new(BigInt::from(-8), BigInt::from(9)));
        assert!(s("2^(1/2)").to_rational().is_none());
        assert!(s("pi").to_rational().is_none());
    }

    #[test]
    fn large_prime_factor() {
        let p = ExactScalar::from_i64(1_000_003);
        assert_eq!(p.to_string(), "1000003");
    }
}
