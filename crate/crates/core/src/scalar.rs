//! Exact arithmetic in the field ℚ(i, √2).
//!
//! A [`Scalar`] is `a + b·√2 + c·i + d·i·√2` with rational components. All
//! operations are exact; equality is component-wise.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Element of ℚ(√2), the real subfield used internally.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
struct Real2 {
    a: Rational,
    b: Rational,
}

impl Real2 {
    fn zero() -> Self {
        Real2 { a: Rational::zero(), b: Rational::zero() }
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        Real2 { a: &self.a + &o.a, b: &self.b + &o.b }
    }
    fn sub(&self, o: &Self) -> Self {
        Real2 { a: &self.a - &o.a, b: &self.b - &o.b }
    }
    fn mul(&self, o: &Self) -> Self {
        if self.b.is_zero() && o.b.is_zero() {
            return Real2 { a: &self.a * &o.a, b: Rational::zero() };
        }
        let two = Rational::from_integer(BigInt::from(2));
        Real2 {
            a: &self.a * &o.a + two * (&self.b * &o.b),
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.b.is_zero() {
            return Some(Real2 { a: self.a.recip(), b: Rational::zero() });
        }
        let two = Rational::from_integer(BigInt::from(2));
        let norm = &self.a * &self.a - two * (&self.b * &self.b);
        Some(Real2 { a: &self.a / &norm, b: -(&self.b / &norm) })
    }
}

/// Exact element of ℚ(i, √2).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    re: Real2,
    im: Real2,
}

impl Scalar {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Scalar { re: Real2 { a, b }, im: Real2 { a: c, b: d } }
    }

    /// `a + b√2 + ci + di√2` with integer components.
    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        let r = |x: i64| Rational::from_integer(BigInt::from(x));
        Scalar::new(r(a), r(b), r(c), r(d))
    }

    pub fn zero() -> Self {
        Scalar { re: Real2::zero(), im: Real2::zero() }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(r: Rational) -> Self {
        Scalar { re: Real2 { a: r, b: Rational::zero() }, im: Real2::zero() }
    }

    /// `num / den` as a scalar. Panics if `den == 0`.
    pub fn frac(num: i64, den: i64) -> Self {
        Scalar::from_rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn sqrt2() -> Self {
        Scalar::new(Rational::zero(), Rational::one(), Rational::zero(), Rational::zero())
    }

    pub fn i() -> Self {
        Scalar::new(Rational::zero(), Rational::zero(), Rational::one(), Rational::zero())
    }

    /// Components `(a, b, c, d)` of `a + b√2 + c i + d i√2`.
    pub fn components(&self) -> [&Rational; 4] {
        [&self.re.a, &self.re.b, &self.im.a, &self.im.b]
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.a.is_one() && self.re.b.is_zero() && self.im.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.re.b.is_zero() && self.im.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.re.a)
    }

    /// Integer value, if this scalar is a rational integer that fits in `i64`.
    pub fn as_i64(&self) -> Option<i64> {
        let r = self.as_rational()?;
        if !r.is_integer() {
            return None;
        }
        i64::try_from(r.to_integer()).ok()
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() {
            return Some(Scalar { re: self.re.inv()?, im: Real2::zero() });
        }
        // 1/(u + iv) = (u - iv)/(u² + v²), with u, v ∈ ℚ(√2).
        let norm = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        let n_inv = norm.inv()?;
        Some(Scalar {
            re: self.re.mul(&n_inv),
            im: Real2::zero().sub(&self.im.mul(&n_inv)),
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        let inv = other.inv().ok_or(Error::DivisionByZero)?;
        Ok(self * &inv)
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// A square root inside ℚ(√2) of a nonnegative rational `r`, when one exists
    /// (i.e. `r` or `2r` is the square of a rational).
    pub fn sqrt_of_rational(r: &Rational) -> Option<Scalar> {
        if r.is_negative() {
            return None;
        }
        if let Some(s) = rational_sqrt(r) {
            return Some(Scalar::from_rational(s));
        }
        // r = 2 t²  ⇒  √r = t√2
        let half = r / Rational::from_integer(BigInt::from(2));
        rational_sqrt(&half).map(|t| Scalar::from_rational(t) * Scalar::sqrt2())
    }
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    let cand = Rational::new(n, d);
    (&cand * &cand == *r).then_some(cand)
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        Scalar { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        Scalar { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.im.is_zero() && o.im.is_zero() {
            return Scalar { re: self.re.mul(&o.re), im: Real2::zero() };
        }
        Scalar {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }
}

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        self.checked_div(o).expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { re: Real2::zero().sub(&self.re), im: Real2::zero().sub(&self.im) }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = &*self + o;
    }
}
impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, o: Scalar) {
        *self = &*self + &o;
    }
}
impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = &*self - o;
    }
}
impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |acc, x| acc * x)
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Renders as `a+b*r2+c*i+d*i*r2`, omitting zero components; zero is `0`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts = [
            (&self.re.a, ""),
            (&self.re.b, "*r2"),
            (&self.im.a, "*i"),
            (&self.im.b, "*i*r2"),
        ];
        let mut first = true;
        for (r, suffix) in parts {
            if r.is_zero() {
                continue;
            }
            let body = fmt_rational(&r.abs());
            if r.is_negative() {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            write!(f, "{body}{suffix}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

/// Parses the rendering of [`fmt::Display`]. Also accepts a bare `r2`, `i`,
/// `i*r2` (implicit coefficient 1) and surrounding whitespace.
impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Scalar> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        // Split into signed chunks at top-level +/- (never inside a/b).
        let mut chunks: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (idx, ch) in s.chars().enumerate() {
            if (ch == '+' || ch == '-') && idx > 0 {
                chunks.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if (ch == '+' || ch == '-') && idx == 0 {
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        chunks.push((neg, cur));

        let mut out = Scalar::zero();
        for (neg, chunk) in chunks {
            if chunk.is_empty() {
                return Err(Error::Parse(format!("dangling sign in `{s}`")));
            }
            let (coef, unit) = if let Some(c) = chunk.strip_suffix("i*r2") {
                (c, Scalar::i() * Scalar::sqrt2())
            } else if let Some(c) = chunk.strip_suffix("r2") {
                (c, Scalar::sqrt2())
            } else if let Some(c) = chunk.strip_suffix('i') {
                (c, Scalar::i())
            } else {
                (chunk.as_str(), Scalar::one())
            };
            let coef = coef.strip_suffix('*').unwrap_or(coef);
            let r = if coef.is_empty() { Rational::one() } else { parse_rational(coef)? };
            let term = Scalar::from_rational(if neg { -r } else { r }) * unit;
            out += term;
        }
        Ok(out)
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
