//! Exact arithmetic over the rationals and real quadratic fields Q(sqrt d).
//!
//! Elements of Q(sqrt d) are stored as `r + s*sqrt(d)` with rational parts;
//! the radicand lives in a [`QuadField`] context so that addition and
//! negation need no context, while multiplication, division and sign do.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::sign::Sign;

/// Arbitrary-precision rational, always stored reduced with positive denominator.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rational_sign(x: &Rational) -> Sign {
    if x.is_zero() {
        Sign::Zero
    } else if x.is_positive() {
        Sign::Pos
    } else {
        Sign::Neg
    }
}

/// Exact value of a finite float.
pub fn rational_from_f64(x: f64) -> Result<Rational> {
    Rational::from_float(x).ok_or_else(|| Error::domain(format!("non-finite value {x}")))
}

pub fn rational_to_f64(x: &Rational) -> f64 {
    match (x.numer().to_f64(), x.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // scale both down to keep the quotient representable
            let shift = x.denom().bits().max(x.numer().bits()).saturating_sub(1000);
            let n = (x.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (x.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

/// Best rational approximation of `x` with denominator at most `max_denominator`.
///
/// Walks the continued fraction of the exact binary value of `x`; the answer
/// is either the last convergent within the bound or the semiconvergent that
/// exhausts it. Ties go to the smaller denominator.
pub fn rational_round(x: f64, max_denominator: u128) -> Result<Rational> {
    if !x.is_finite() {
        return Err(Error::domain(format!("cannot round non-finite value {x}")));
    }
    if max_denominator < 1 {
        return Err(Error::domain("max_denominator must be at least 1"));
    }
    let exact = rational_from_f64(x)?;
    let max_den = BigInt::from(max_denominator);
    if exact.denom() <= &max_den {
        return Ok(exact);
    }
    let (mut p0, mut q0, mut p1, mut q1) = (
        BigInt::zero(),
        BigInt::one(),
        BigInt::one(),
        BigInt::zero(),
    );
    let mut n = exact.numer().clone();
    let mut d = exact.denom().clone();
    loop {
        let a = n.div_floor(&d);
        let q2 = &q0 + &a * &q1;
        if q2 > max_den {
            break;
        }
        let p2 = &p0 + &a * &p1;
        p0 = std::mem::replace(&mut p1, p2);
        q0 = std::mem::replace(&mut q1, q2);
        let rem = &n - &a * &d;
        n = std::mem::replace(&mut d, rem);
        if d.is_zero() {
            break;
        }
    }
    let k = (&max_den - &q0).div_floor(&q1);
    let semi = Rational::new(&p0 + &k * &p1, &q0 + &k * &q1);
    let conv = Rational::new(p1, q1);
    let e_semi = (&semi - &exact).abs();
    let e_conv = (&conv - &exact).abs();
    Ok(match e_semi.cmp(&e_conv) {
        std::cmp::Ordering::Less => semi,
        std::cmp::Ordering::Greater => conv,
        std::cmp::Ordering::Equal => {
            if semi.denom() < conv.denom() {
                semi
            } else {
                conv
            }
        }
    })
}

/// `r + s*sqrt(d)` for the `d` of an enclosing [`QuadField`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QuadElem {
    pub r: Rational,
    pub s: Rational,
}

impl QuadElem {
    pub fn new(r: Rational, s: Rational) -> Self {
        QuadElem { r, s }
    }

    pub fn rational(r: Rational) -> Self {
        QuadElem {
            r,
            s: Rational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        QuadElem::rational(int(n))
    }

    pub fn zero() -> Self {
        QuadElem::default()
    }

    pub fn one() -> Self {
        QuadElem::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero() && self.s.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.s.is_zero()
    }

    pub fn scale(&self, k: &Rational) -> QuadElem {
        QuadElem {
            r: &self.r * k,
            s: &self.s * k,
        }
    }
}

impl Add for QuadElem {
    type Output = QuadElem;
    fn add(self, rhs: QuadElem) -> QuadElem {
        QuadElem {
            r: self.r + rhs.r,
            s: self.s + rhs.s,
        }
    }
}

impl<'a> Add<&'a QuadElem> for &'a QuadElem {
    type Output = QuadElem;
    fn add(self, rhs: &QuadElem) -> QuadElem {
        QuadElem {
            r: &self.r + &rhs.r,
            s: &self.s + &rhs.s,
        }
    }
}

impl Sub for QuadElem {
    type Output = QuadElem;
    fn sub(self, rhs: QuadElem) -> QuadElem {
        QuadElem {
            r: self.r - rhs.r,
            s: self.s - rhs.s,
        }
    }
}

impl<'a> Sub<&'a QuadElem> for &'a QuadElem {
    type Output = QuadElem;
    fn sub(self, rhs: &QuadElem) -> QuadElem {
        QuadElem {
            r: &self.r - &rhs.r,
            s: &self.s - &rhs.s,
        }
    }
}

impl Neg for QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem {
            r: -self.r,
            s: -self.s,
        }
    }
}

impl Neg for &QuadElem {
    type Output = QuadElem;
    fn neg(self) -> QuadElem {
        QuadElem {
            r: -&self.r,
            s: -&self.s,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Field context Q(sqrt d). `d = 1` degenerates to the plain rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadField {
    d: u64,
}

impl QuadField {
    pub const RATIONALS: QuadField = QuadField { d: 1 };

    pub fn new(d: u64) -> Result<Self> {
        if d == 0 {
            return Err(Error::domain("radicand must be positive"));
        }
        let mut k = 2u64;
        while k.saturating_mul(k) <= d {
            if d.is_multiple_of(k * k) {
                return Err(Error::domain(format!("radicand {d} is not square-free")));
            }
            k += 1;
        }
        Ok(QuadField { d })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    fn d_rat(&self) -> Rational {
        Rational::from_integer(BigInt::from(self.d))
    }

    /// Normalizes an element: in Q(sqrt 1) the surd part folds into the rational part.
    pub fn canon(&self, x: QuadElem) -> QuadElem {
        if self.d == 1 && !x.s.is_zero() {
            QuadElem::rational(x.r + x.s)
        } else {
            x
        }
    }

    pub fn mul(&self, a: &QuadElem, b: &QuadElem) -> QuadElem {
        let r = &a.r * &b.r + &a.s * &b.s * self.d_rat();
        let s = &a.r * &b.s + &a.s * &b.r;
        self.canon(QuadElem { r, s })
    }

    pub fn norm(&self, a: &QuadElem) -> Rational {
        &a.r * &a.r - &a.s * &a.s * self.d_rat()
    }

    pub fn recip(&self, a: &QuadElem) -> Result<QuadElem> {
        let a = self.canon(a.clone());
        if a.is_zero() {
            return Err(Error::domain("division by zero"));
        }
        let n = self.norm(&a);
        Ok(QuadElem {
            r: &a.r / &n,
            s: -(&a.s / &n),
        })
    }

    pub fn div(&self, a: &QuadElem, b: &QuadElem) -> Result<QuadElem> {
        Ok(self.mul(a, &self.recip(b)?))
    }

    pub fn arith(&self, a: &QuadElem, b: &QuadElem, op: ArithOp) -> Result<QuadElem> {
        Ok(match op {
            ArithOp::Add => self.canon(a + b),
            ArithOp::Sub => self.canon(a - b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Div => self.div(a, b)?,
        })
    }

    /// Exact sign of `r + s*sqrt(d)` by comparing `r^2` with `d*s^2`.
    pub fn sign(&self, x: &QuadElem) -> Sign {
        let sr = rational_sign(&x.r);
        let ss = rational_sign(&x.s);
        if ss == Sign::Zero {
            return sr;
        }
        if sr == Sign::Zero || sr == ss {
            return ss;
        }
        let lhs = &x.r * &x.r;
        let rhs = &x.s * &x.s * self.d_rat();
        match lhs.cmp(&rhs) {
            std::cmp::Ordering::Greater => sr,
            std::cmp::Ordering::Less => ss,
            std::cmp::Ordering::Equal => Sign::Zero,
        }
    }

    pub fn cmp(&self, a: &QuadElem, b: &QuadElem) -> std::cmp::Ordering {
        match self.sign(&(a - b)) {
            Sign::Neg => std::cmp::Ordering::Less,
            Sign::Zero => std::cmp::Ordering::Equal,
            Sign::Pos => std::cmp::Ordering::Greater,
        }
    }

    pub fn max(&self, a: QuadElem, b: QuadElem) -> QuadElem {
        if self.cmp(&a, &b) == std::cmp::Ordering::Less {
            b
        } else {
            a
        }
    }

    pub fn to_f64(&self, x: &QuadElem) -> f64 {
        rational_to_f64(&x.r) + rational_to_f64(&x.s) * (self.d as f64).sqrt()
    }
}

impl Default for QuadField {
    fn default() -> Self {
        QuadField::RATIONALS
    }
}

pub fn format_rational(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::domain(format!("invalid rational literal {text:?}"));
    let (n, d) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::domain(format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(n, d))
}

/// Scalar in the JSON file syntax: `"p/q"`, an integer, or `{"r": .., "s": ..}`.
pub fn scalar_from_json(v: &Value) -> Result<QuadElem> {
    match v {
        Value::String(s) => Ok(QuadElem::rational(parse_rational(s)?)),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(QuadElem::from_int(i))
            } else if n.is_u64() {
                parse_rational(&n.to_string()).map(QuadElem::rational)
            } else {
                Err(Error::domain(format!(
                    "non-integer number {n}; write exact scalars as \"p/q\""
                )))
            }
        }
        Value::Object(map) => {
            let part = |key: &str| -> Result<Rational> {
                match map.get(key) {
                    None => Ok(Rational::zero()),
                    Some(p) => {
                        let q = scalar_from_json(p)?;
                        if q.is_rational() {
                            Ok(q.r)
                        } else {
                            Err(Error::domain("nested surd in scalar"))
                        }
                    }
                }
            };
            for key in map.keys() {
                if key != "r" && key != "s" {
                    return Err(Error::domain(format!("unexpected scalar key {key:?}")));
                }
            }
            Ok(QuadElem::new(part("r")?, part("s")?))
        }
        other => Err(Error::domain(format!("invalid scalar {other}"))),
    }
}

pub fn scalar_to_json(x: &QuadElem) -> Value {
    if x.is_rational() {
        Value::String(format_rational(&x.r))
    } else {
        serde_json::json!({"r": format_rational(&x.r), "s": format_rational(&x.s)})
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.s.is_zero() {
            write!(f, "{}", format_rational(&self.r))
        } else {
            write!(
                f,
                "{} + {}*sqrt",
                format_rational(&self.r),
                format_rational(&self.s)
            )
        }
    }
}
