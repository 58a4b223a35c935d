//! Exact arithmetic over the rationals and real quadratic fields Q(√d).
//!
//! A [`QuadNum`] is always kept in canonical form: the radicand `d` is
//! square-free, and a value with no irrational part has `b = 0` and `d = 0`.
//! Comparisons never touch floating point; the sign of `a + b√d` is decided
//! by comparing `a²` against `b²d`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(numer.into(), denom.into())
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Parses `"p/q"` or `"n"`. Decimal points and exponents are rejected.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::ParseRational(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let numer: BigInt = num.parse().map_err(|_| bad())?;
    let denom: BigInt = den.parse().map_err(|_| bad())?;
    if denom.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(numer, denom))
}

pub fn format_rat(r: &Rat) -> String {
    r.to_string()
}

/// Splits `n = m² · d` with `d` square-free and returns `(m², d)`.
///
/// Trial division; fine for the magnitudes that show up in desk-scale
/// intersection numbers.
pub fn squarefree_decompose(n: &BigUint) -> (BigUint, BigUint) {
    assert!(!n.is_zero(), "squarefree_decompose requires n >= 1");
    let mut rest = n.clone();
    let mut square = BigUint::one();
    let mut free = BigUint::one();
    let mut p = BigUint::from(2u32);
    while &p * &p <= rest {
        let mut exp = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            exp += 1;
        }
        if exp > 0 {
            square *= p.pow(2 * (exp / 2));
            if exp % 2 == 1 {
                free *= &p;
            }
        }
        p += if p == BigUint::from(2u32) { 1u32 } else { 2u32 };
    }
    free *= rest;
    (square, free)
}

fn squarefree_u64(n: u64) -> (u64, u64) {
    let (sq, free) = squarefree_decompose(&BigUint::from(n));
    let m = sq.sqrt();
    (
        m.to_u64().expect("root of a u64 square fits"),
        free.to_u64().expect("square-free part of a u64 fits"),
    )
}

/// Exact value `a + b·√d` in a real quadratic field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "QuadNumRepr", into = "QuadNumRepr")]
pub struct QuadNum {
    a: Rat,
    b: Rat,
    d: u64,
}

#[derive(Serialize, Deserialize)]
struct QuadNumRepr {
    a: String,
    b: String,
    d: u64,
}

impl From<QuadNum> for QuadNumRepr {
    fn from(x: QuadNum) -> Self {
        QuadNumRepr {
            a: format_rat(&x.a),
            b: format_rat(&x.b),
            d: x.d,
        }
    }
}

impl TryFrom<QuadNumRepr> for QuadNum {
    type Error = Error;

    fn try_from(r: QuadNumRepr) -> Result<Self> {
        Ok(QuadNum::new(parse_rat(&r.a)?, parse_rat(&r.b)?, r.d))
    }
}

impl QuadNum {
    /// Builds `a + b√radicand`, pulling square factors out of the radicand.
    pub fn new(a: Rat, b: Rat, radicand: u64) -> Self {
        if radicand == 0 || b.is_zero() {
            return QuadNum::rational(a);
        }
        let (m, d) = squarefree_u64(radicand);
        let b = b * Rat::from_integer(m.into());
        if d == 1 {
            return QuadNum::rational(a + b);
        }
        QuadNum { a, b, d }
    }

    pub fn rational(a: Rat) -> Self {
        QuadNum {
            a,
            b: Rat::zero(),
            d: 0,
        }
    }

    pub fn from_int(n: i64) -> Self {
        QuadNum::rational(int(n))
    }

    pub fn zero() -> Self {
        QuadNum::rational(Rat::zero())
    }

    /// `√r` for a non-negative rational `r`.
    pub fn sqrt_rat(r: &Rat) -> Result<Self> {
        if r.is_negative() {
            return Err(Error::InvalidArgument(format!("square root of negative {r}")));
        }
        if r.is_zero() {
            return Ok(QuadNum::zero());
        }
        // √(p/q) = √(p·q) / q
        let p = r.numer().to_biguint().expect("non-negative");
        let q = r.denom().to_biguint().expect("positive");
        let (square, free) = squarefree_decompose(&(p * &q));
        let m = BigInt::from(square.sqrt());
        let coeff = Rat::new(m, BigInt::from(q));
        if free.is_one() {
            return Ok(QuadNum::rational(coeff));
        }
        let d = free
            .to_u64()
            .ok_or_else(|| Error::RadicandTooLarge(free.to_string()))?;
        Ok(QuadNum { a: Rat::zero(), b: coeff, d })
    }

    pub fn a(&self) -> &Rat {
        &self.a
    }

    pub fn b(&self) -> &Rat {
        &self.b
    }

    /// Square-free radicand; 0 for rational values.
    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.d == 0
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        self.is_rational().then_some(&self.a)
    }

    fn common_field(&self, other: &QuadNum) -> Result<u64> {
        match (self.d, other.d) {
            (0, d) | (d, 0) => Ok(d),
            (x, y) if x == y => Ok(x),
            (x, y) => Err(Error::MixedFields(x, y)),
        }
    }

    fn canonical(a: Rat, b: Rat, d: u64) -> Self {
        if b.is_zero() || d == 0 {
            QuadNum::rational(a)
        } else {
            QuadNum { a, b, d }
        }
    }

    pub fn try_add(&self, other: &QuadNum) -> Result<QuadNum> {
        let d = self.common_field(other)?;
        Ok(QuadNum::canonical(&self.a + &other.a, &self.b + &other.b, d))
    }

    pub fn try_sub(&self, other: &QuadNum) -> Result<QuadNum> {
        let d = self.common_field(other)?;
        Ok(QuadNum::canonical(&self.a - &other.a, &self.b - &other.b, d))
    }

    pub fn try_mul(&self, other: &QuadNum) -> Result<QuadNum> {
        let d = self.common_field(other)?;
        let rd = Rat::from_integer(d.into());
        let a = &self.a * &other.a + &self.b * &other.b * rd;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(QuadNum::canonical(a, b, d))
    }

    pub fn try_div(&self, other: &QuadNum) -> Result<QuadNum> {
        let inv = other.recip()?;
        self.try_mul(&inv)
    }

    pub fn recip(&self) -> Result<QuadNum> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(QuadNum::canonical(&self.a / &n, -&self.b / &n, self.d))
    }

    pub fn add_rat(&self, r: &Rat) -> QuadNum {
        QuadNum::canonical(&self.a + r, self.b.clone(), self.d)
    }

    pub fn scale(&self, r: &Rat) -> QuadNum {
        QuadNum::canonical(&self.a * r, &self.b * r, self.d)
    }

    pub fn conjugate(&self) -> QuadNum {
        QuadNum::canonical(self.a.clone(), -&self.b, self.d)
    }

    /// `a² − b²d`, the field norm.
    pub fn norm(&self) -> Rat {
        &self.a * &self.a - &self.b * &self.b * Rat::from_integer(self.d.into())
    }

    pub fn sign(&self) -> Ordering {
        let sa = self.a.cmp(&Rat::zero());
        let sb = self.b.cmp(&Rat::zero());
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        // opposite signs: the larger of |a| and |b|√d wins
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * Rat::from_integer(self.d.into());
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => unreachable!("√d is irrational for square-free d > 1"),
        }
    }

    pub fn signum(&self) -> i32 {
        match self.sign() {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    pub fn try_cmp(&self, other: &QuadNum) -> Result<Ordering> {
        Ok(self.try_sub(other)?.sign())
    }

    pub fn floor(&self) -> BigInt {
        let mut g = self.a.floor().to_integer() + floor_b_sqrt_d(&self.b, self.d);
        loop {
            let below = self.add_rat(&-Rat::from_integer(g.clone()));
            if below.sign() == Ordering::Less {
                g -= 1;
                continue;
            }
            let above = self.add_rat(&-Rat::from_integer(&g + 1));
            if above.sign() != Ordering::Less {
                g += 1;
                continue;
            }
            return g;
        }
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        if self.is_rational() {
            return a;
        }
        a + self.b.to_f64().unwrap_or(f64::NAN) * (self.d as f64).sqrt()
    }

    /// Decimal rendering rounded half-up at `digits` places, computed exactly.
    pub fn approx(&self, digits: u32) -> String {
        let scale = BigInt::from(10u32).pow(digits);
        let shifted = self
            .scale(&Rat::from_integer(scale.clone()))
            .add_rat(&rat(1, 2))
            .floor();
        let neg = shifted.is_negative();
        let mag = shifted.abs();
        let whole = &mag / &scale;
        let frac = &mag % &scale;
        let sign = if neg { "-" } else { "" };
        if digits == 0 {
            return format!("{sign}{whole}");
        }
        format!("{sign}{whole}.{frac:0>width$}", frac = frac.to_string(), width = digits as usize)
    }

    /// `"<exact> ≈ x.xxxxxx"`.
    pub fn render(&self) -> String {
        format!("{self} ≈ {}", self.approx(6))
    }
}

fn floor_b_sqrt_d(b: &Rat, d: u64) -> BigInt {
    if d == 0 || b.is_zero() {
        return BigInt::zero();
    }
    let y = b * b * Rat::from_integer(d.into());
    let s = y.floor().to_integer().sqrt();
    if b.is_positive() { s } else { -s - 1 }
}

impl std::ops::Neg for QuadNum {
    type Output = QuadNum;

    fn neg(self) -> QuadNum {
        QuadNum::canonical(-self.a, -self.b, self.d)
    }
}

impl std::ops::Neg for &QuadNum {
    type Output = QuadNum;

    fn neg(self) -> QuadNum {
        -self.clone()
    }
}

impl From<Rat> for QuadNum {
    fn from(r: Rat) -> Self {
        QuadNum::rational(r)
    }
}

impl PartialOrd for QuadNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.try_cmp(other).ok()
    }
}

impl fmt::Display for QuadNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "({} + {}·√{})", self.a, self.b, self.d)
        }
    }
}
