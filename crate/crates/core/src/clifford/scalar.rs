use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact field scalars usable as Clifford coefficients.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    fn from_rational(q: BigRational) -> Self;
    /// `(a, b)` with the value `a + b·sqrt(d)`; `b = 0` over Q.
    fn parts(&self) -> (BigRational, BigRational);
    fn from_parts(a: BigRational, b: BigRational) -> Option<Self>;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn from_rational(q: BigRational) -> Self {
        q
    }
    fn parts(&self) -> (BigRational, BigRational) {
        (self.clone(), Zero::zero())
    }
    fn from_parts(a: BigRational, b: BigRational) -> Option<Self> {
        Zero::is_zero(&b).then_some(a)
    }
}

/// `a + b·sqrt(D)` with rational `a`, `b`; `D` must not be a rational square.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadRational<const D: i64> {
    pub a: BigRational,
    pub b: BigRational,
}

impl<const D: i64> QuadRational<D> {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Self { a, b }
    }

    pub fn sqrt_d() -> Self {
        Self::new(Zero::zero(), One::one())
    }

    /// Field norm `a^2 - D b^2`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(BigInt::from(D)) * &self.b * &self.b
    }

    pub fn conjugate(&self) -> Self {
        Self::new(self.a.clone(), -&self.b)
    }
}

impl<const D: i64> fmt::Display for QuadRational<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if Zero::is_zero(&self.b) {
            return write!(f, "{}", self.a);
        }
        if Zero::is_zero(&self.a) {
            return write!(f, "{}*sqrt({D})", self.b);
        }
        if self.b.is_negative() {
            write!(f, "({} - {}*sqrt({D}))", self.a, -&self.b)
        } else {
            write!(f, "({} + {}*sqrt({D}))", self.a, self.b)
        }
    }
}

impl<const D: i64> Add for QuadRational<D> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.a + o.a, self.b + o.b)
    }
}

impl<const D: i64> Sub for QuadRational<D> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.a - o.a, self.b - o.b)
    }
}

impl<const D: i64> Neg for QuadRational<D> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }
}

impl<const D: i64> Mul for QuadRational<D> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let d = BigRational::from_integer(BigInt::from(D));
        Self::new(
            &self.a * &o.a + d * &self.b * &o.b,
            &self.a * &o.b + &self.b * &o.a,
        )
    }
}

impl<const D: i64> Scalar for QuadRational<D> {
    fn zero() -> Self {
        Self::new(Zero::zero(), Zero::zero())
    }
    fn one() -> Self {
        Self::new(One::one(), Zero::zero())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.a) && Zero::is_zero(&self.b)
    }
    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        if Zero::is_zero(&n) {
            return None;
        }
        let c = self.conjugate();
        Some(Self::new(c.a / &n, c.b / n))
    }
    fn from_rational(q: BigRational) -> Self {
        Self::new(q, Zero::zero())
    }
    fn parts(&self) -> (BigRational, BigRational) {
        (self.a.clone(), self.b.clone())
    }
    fn from_parts(a: BigRational, b: BigRational) -> Option<Self> {
        Some(Self::new(a, b))
    }
}
