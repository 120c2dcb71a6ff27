//! The quaternion algebra `(a,b/Q)` with `i^2 = a`, `j^2 = b`, `ij = -ji`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{fmt_rat, parse_rat, rat, Rat};
use crate::symbols::ramified_primes;

/// `(a,b/Q)` together with its finite ramification, computed once at construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuaternionAlgebra {
    a: i64,
    b: i64,
    ramified: Vec<u64>,
}

impl QuaternionAlgebra {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::ZeroArgument);
        }
        Ok(QuaternionAlgebra {
            a,
            b,
            ramified: ramified_primes(a, b)?,
        })
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    /// Ram_f(A), ascending.
    pub fn ramified_primes(&self) -> &[u64] {
        &self.ramified
    }

    pub fn is_ramified_at(&self, p: u64) -> bool {
        self.ramified.binary_search(&p).is_ok()
    }

    /// Local index: 2 at ramified primes, 1 elsewhere.
    pub fn local_index(&self, p: u64) -> u32 {
        if self.is_ramified_at(p) {
            2
        } else {
            1
        }
    }

    /// The reduced discriminant of the algebra: the product of ramified primes.
    pub fn discriminant(&self) -> u64 {
        self.ramified.iter().product()
    }

    pub fn is_totally_definite(&self) -> bool {
        self.a < 0 && self.b < 0
    }

    pub fn mul(&self, x: &QElem, y: &QElem) -> QElem {
        let a = rat(self.a);
        let b = rat(self.b);
        let ab = &a * &b;
        let [x0, x1, x2, x3] = &x.0;
        let [y0, y1, y2, y3] = &y.0;
        QElem([
            x0 * y0 + &a * x1 * y1 + &b * x2 * y2 - &ab * x3 * y3,
            x0 * y1 + x1 * y0 - &b * x2 * y3 + &b * x3 * y2,
            x0 * y2 + x2 * y0 + &a * x1 * y3 - &a * x3 * y1,
            x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1,
        ])
    }

    pub fn nrd(&self, x: &QElem) -> Rat {
        let [x0, x1, x2, x3] = &x.0;
        let a = rat(self.a);
        let b = rat(self.b);
        x0 * x0 - &a * x1 * x1 - &b * x2 * x2 + &a * &b * x3 * x3
    }

    /// Two-sided inverse `conj(x) / nrd(x)`; `None` for a zero divisor.
    pub fn inverse(&self, x: &QElem) -> Option<QElem> {
        let n = self.nrd(x);
        (!n.is_zero()).then(|| x.conj().scale(&(Rat::one() / n)))
    }

    /// `x y x^-1`.
    pub fn conjugate_by(&self, x: &QElem, y: &QElem) -> Option<QElem> {
        let inv = self.inverse(x)?;
        Some(self.mul(&self.mul(x, y), &inv))
    }

    pub fn pow(&self, x: &QElem, e: u32) -> QElem {
        (0..e).fold(QElem::one(), |acc, _| self.mul(&acc, x))
    }
}

/// `x0 + x1 i + x2 j + x3 ij` with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QElem(pub [Rat; 4]);

impl QElem {
    pub fn new(x0: Rat, x1: Rat, x2: Rat, x3: Rat) -> Self {
        QElem([x0, x1, x2, x3])
    }

    pub fn from_i64(c: [i64; 4]) -> Self {
        QElem(c.map(rat))
    }

    /// Integer coordinates divided by a common denominator.
    pub fn from_ratio(c: [i64; 4], den: i64) -> Self {
        QElem(c.map(|x| Rat::new(x.into(), den.into())))
    }

    pub fn scalar(s: Rat) -> Self {
        QElem([s, Rat::zero(), Rat::zero(), Rat::zero()])
    }

    pub fn zero() -> Self {
        Self::scalar(Rat::zero())
    }

    pub fn one() -> Self {
        Self::scalar(Rat::one())
    }

    pub fn i() -> Self {
        Self::from_i64([0, 1, 0, 0])
    }

    pub fn j() -> Self {
        Self::from_i64([0, 0, 1, 0])
    }

    pub fn ij() -> Self {
        Self::from_i64([0, 0, 0, 1])
    }

    pub fn coords(&self) -> &[Rat; 4] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn conj(&self) -> Self {
        let [x0, x1, x2, x3] = &self.0;
        QElem([x0.clone(), -x1, -x2, -x3])
    }

    pub fn trd(&self) -> Rat {
        &self.0[0] * rat(2)
    }

    pub fn scale(&self, s: &Rat) -> Self {
        QElem(self.0.clone().map(|x| x * s))
    }

    /// Parses `"x0,x1,x2,x3"`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 4 {
            return Err(Error::Parse(format!(
                "expected 4 comma-separated rationals, got {s:?}"
            )));
        }
        let c: Vec<Rat> = parts.into_iter().map(parse_rat).collect::<Result<_>>()?;
        Ok(QElem(c.try_into().expect("four coordinates")))
    }

    pub fn to_strings(&self) -> [String; 4] {
        self.0.clone().map(|x| fmt_rat(&x))
    }
}

impl Add for &QElem {
    type Output = QElem;
    fn add(self, rhs: &QElem) -> QElem {
        QElem(std::array::from_fn(|k| &self.0[k] + &rhs.0[k]))
    }
}

impl Sub for &QElem {
    type Output = QElem;
    fn sub(self, rhs: &QElem) -> QElem {
        QElem(std::array::from_fn(|k| &self.0[k] - &rhs.0[k]))
    }
}

impl Neg for &QElem {
    type Output = QElem;
    fn neg(self) -> QElem {
        QElem(std::array::from_fn(|k| -&self.0[k]))
    }
}

impl fmt::Debug for QElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for QElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

impl Serialize for QElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for QElem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = <[String; 4]>::deserialize(d)?;
        QElem::parse(&parts.join(",")).map_err(serde::de::Error::custom)
    }
}
