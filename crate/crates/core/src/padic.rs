//! p-adic units, square classes, Legendre symbols and Hensel lifting.
//!
//! Everything here is exact. A [`PAdicScalar`] is `p^valuation * unit` where the
//! unit is known modulo `p^precision`; products keep the smaller precision of
//! their inputs, so every result states how many digits it actually carries.
//!
//! Square classes of `Q_p^*` use fixed representatives:
//!
//! * real place: `+1`, `-1`
//! * odd `p`: `1, u, p, u*p` where `u` is the least positive quadratic non-residue
//! * `p = 2`: `±1, ±5, ±2, ±10`

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, big_mod_u64, big_pow, split_valuation};
use crate::error::{Error, Result};

/// Digits of p-adic precision used when the caller does not ask for any.
pub const DEFAULT_PRECISION: u32 = 64;

/// Candidates scanned by [`primes_in_progression`] before giving up.
pub const PRIME_SEARCH_LIMIT: u64 = 10_000_000;

/// A place of Q: the real embedding or a prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Place {
    Real,
    Prime(u64),
}

impl Place {
    pub fn prime(p: u64) -> Result<Self> {
        if arith::is_prime(p) {
            Ok(Place::Prime(p))
        } else {
            Err(Error::invalid(format!("{p} is not prime")))
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Place::Prime(_))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => f.write_str("inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

impl FromStr for Place {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "oo" | "real" | "r" | "∞" => Ok(Place::Real),
            other => {
                let p: u64 = other.parse().map_err(|_| Error::Parse {
                    position: 0,
                    message: format!("`{t}` is neither `inf` nor a prime"),
                })?;
                Place::prime(p)
            }
        }
    }
}

impl From<Place> for String {
    fn from(p: Place) -> String {
        p.to_string()
    }
}

impl TryFrom<String> for Place {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Element of `Q_p^* / (Q_p^*)^2` (or `R^* / (R^*)^2`) given by its canonical representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SquareClass {
    pub place: Place,
    #[serde(with = "crate::serde_big::wide_int")]
    pub representative: i128,
}

impl SquareClass {
    pub fn is_trivial(&self) -> bool {
        self.representative == 1
    }

    pub fn representative_rational(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.representative))
    }

    /// Every class at the place, in a fixed order starting with the trivial one.
    pub fn all(place: Place) -> Vec<SquareClass> {
        let reps: Vec<i128> = match place {
            Place::Real => vec![1, -1],
            Place::Prime(2) => vec![1, -1, 5, -5, 2, -2, 10, -10],
            Place::Prime(p) => {
                let u = arith::least_nonresidue(p) as i128;
                let p = p as i128;
                vec![1, u, p, u * p]
            }
        };
        reps.into_iter()
            .map(|representative| SquareClass {
                place,
                representative,
            })
            .collect()
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]_{}", self.representative, self.place)
    }
}

/// `p^valuation * unit`, the unit known modulo `p^precision`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PAdicScalar {
    pub prime: u64,
    pub valuation: i64,
    #[serde(with = "crate::serde_big")]
    pub unit: BigInt,
    pub precision: u32,
}

impl PAdicScalar {
    pub fn new(prime: u64, valuation: i64, unit: BigInt, precision: u32) -> Result<Self> {
        if prime < 2 || !arith::is_prime(prime) {
            return Err(Error::invalid(format!("{prime} is not prime")));
        }
        if precision == 0 {
            return Err(Error::invalid("precision must be at least 1"));
        }
        let modulus = big_pow(prime, precision);
        let unit = unit.mod_floor(&modulus);
        if big_mod_u64(&unit, prime) == 0 {
            return Err(Error::invalid(format!(
                "unit {unit} is not invertible mod {prime}^{precision}"
            )));
        }
        Ok(Self {
            prime,
            valuation,
            unit,
            precision,
        })
    }

    pub fn from_rational(x: &BigRational, prime: u64, precision: u32) -> Result<Self> {
        if x.is_zero() {
            return Err(Error::invalid("zero has no p-adic unit part"));
        }
        let (vn, un) = split_valuation(x.numer(), prime);
        let (vd, ud) = split_valuation(x.denom(), prime);
        let modulus = big_pow(prime, precision);
        let inv = arith::mod_inverse(&ud, &modulus).expect("denominator unit is invertible");
        Self::new(prime, vn as i64 - vd as i64, un * inv, precision)
    }

    pub fn from_integer(n: i64, prime: u64, precision: u32) -> Result<Self> {
        Self::from_rational(&BigRational::from_integer(n.into()), prime, precision)
    }

    pub fn modulus(&self) -> BigInt {
        big_pow(self.prime, self.precision)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.prime != other.prime {
            return Err(Error::invalid(format!(
                "cannot multiply elements of Q_{} and Q_{}",
                self.prime, other.prime
            )));
        }
        let precision = self.precision.min(other.precision);
        Self::new(
            self.prime,
            self.valuation + other.valuation,
            &self.unit * &other.unit,
            precision,
        )
    }

    pub fn square(&self) -> Self {
        self.mul(self).expect("same prime")
    }

    pub fn neg(&self) -> Self {
        Self::new(self.prime, self.valuation, -&self.unit, self.precision).expect("unit stays a unit")
    }

    /// Truncates to a lower precision.
    pub fn with_precision(&self, precision: u32) -> Result<Self> {
        if precision > self.precision {
            return Err(Error::InsufficientPrecision {
                requested: precision,
                available: self.precision,
            });
        }
        Self::new(self.prime, self.valuation, self.unit.clone(), precision)
    }

    /// Value modulo `p^digits`; requires a nonnegative valuation.
    pub fn residue(&self, digits: u32) -> Result<BigInt> {
        if self.valuation < 0 {
            return Err(Error::invalid("element is not p-integral"));
        }
        let v = self.valuation as u32;
        if digits > self.precision + v {
            return Err(Error::InsufficientPrecision {
                requested: digits,
                available: self.precision + v,
            });
        }
        let m = big_pow(self.prime, digits);
        Ok((big_pow(self.prime, v) * &self.unit).mod_floor(&m))
    }

    /// True when `self` and `x` agree to the precision carried by `self`.
    pub fn congruent_to(&self, x: &BigRational) -> bool {
        match Self::from_rational(x, self.prime, self.precision) {
            Ok(other) => other.valuation == self.valuation && other.unit == self.unit,
            Err(_) => false,
        }
    }
}

/// Flags recording why a prime belongs to the progression 17 + 24N above the bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProgressionPrime {
    pub value: u64,
    pub one_mod_8: bool,
    pub two_mod_3: bool,
    pub at_least_89: bool,
}

impl ProgressionPrime {
    pub fn new(value: u64) -> Self {
        Self {
            value,
            one_mod_8: value % 8 == 1,
            two_mod_3: value % 3 == 2,
            at_least_89: value >= 89,
        }
    }

    pub fn all_checks(&self) -> bool {
        self.one_mod_8 && self.two_mod_3 && self.at_least_89
    }
}

fn require_odd_prime(p: u64) -> Result<()> {
    if p % 2 == 0 || !arith::is_prime(p) {
        return Err(Error::invalid(format!("{p} is not an odd prime")));
    }
    Ok(())
}

/// Legendre symbol `(a/p)` for an odd prime `p`.
pub fn legendre(a: &BigInt, p: u64) -> Result<i8> {
    require_odd_prime(p)?;
    Ok(arith::jacobi(big_mod_u64(a, p) as i128, p))
}

/// Convenience wrapper over [`legendre`] for machine integers.
pub fn legendre_i64(a: i64, p: u64) -> Result<i8> {
    legendre(&BigInt::from(a), p)
}

/// Canonical square class of a nonzero rational in the completion at `place`.
pub fn square_class(x: &BigRational, place: Place) -> Result<SquareClass> {
    if x.is_zero() {
        return Err(Error::invalid("zero has no square class"));
    }
    let n = arith::square_class_integer(x);
    let representative = match place {
        Place::Real => {
            if n.is_positive() {
                1
            } else {
                -1
            }
        }
        Place::Prime(2) => {
            let (v, u) = split_valuation(&n, 2);
            let unit_rep: i128 = match big_mod_u64(&u, 8) {
                1 => 1,
                3 => -5,
                5 => 5,
                7 => -1,
                _ => unreachable!("unit is odd"),
            };
            if v % 2 == 1 {
                2 * unit_rep
            } else {
                unit_rep
            }
        }
        Place::Prime(p) => {
            let (v, u) = split_valuation(&n, p);
            let unit_rep = if legendre(&u, p)? == 1 {
                1
            } else {
                arith::least_nonresidue(p) as i128
            };
            if v % 2 == 1 {
                unit_rep * p as i128
            } else {
                unit_rep
            }
        }
    };
    Ok(SquareClass {
        place,
        representative,
    })
}

pub fn square_class_i64(x: i64, place: Place) -> Result<SquareClass> {
    square_class(&BigRational::from_integer(x.into()), place)
}

/// Whether a nonzero rational is a square in the completion at `place`.
pub fn is_square_local(x: &BigRational, place: Place) -> Result<bool> {
    Ok(square_class(x, place)?.is_trivial())
}

/// A square root of `x` in `Z_p` (or `Q_p`) to `precision` digits.
///
/// The branch is fixed: for odd `p` the root reduces modulo `p` to the smallest
/// nonnegative root of the unit part; for `p = 2` it is the root `≡ 1 (mod 4)`.
pub fn hensel_sqrt(x: &BigRational, p: u64, precision: u32) -> Result<PAdicScalar> {
    if !arith::is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    if precision == 0 {
        return Err(Error::invalid("precision must be at least 1"));
    }
    if x.is_zero() {
        return Err(Error::invalid("zero has no square class"));
    }
    // one spare digit at p = 2 so the truncated root is a truncation of a true root
    let work = if p == 2 { (precision + 1).max(3) } else { precision };
    let xs = PAdicScalar::from_rational(x, p, work)?;
    let not_square = |witness: String| Error::NotASquare {
        value: x.to_string(),
        prime: p,
        witness,
    };
    if xs.valuation % 2 != 0 {
        return Err(not_square(format!(
            "v_{p}(x) = {} is odd",
            xs.valuation
        )));
    }
    let modulus = big_pow(p, work);
    let u = xs.unit.clone();
    let root = if p == 2 {
        let r8 = big_mod_u64(&u, 8);
        if r8 != 1 {
            return Err(not_square(format!(
                "unit part ≡ {r8} (mod 8), but 2-adic unit squares are ≡ 1 (mod 8)"
            )));
        }
        // r^2 ≡ u (mod 2^k) for k >= 3; one of r, r + 2^(k-1) works mod 2^(k+1).
        let mut r = BigInt::one();
        for k in 3..work {
            let next = big_pow(2, k + 1);
            if !(&r * &r - &u).mod_floor(&next).is_zero() {
                r += big_pow(2, k - 1);
            }
        }
        r.mod_floor(&modulus)
    } else {
        let u_mod_p = big_mod_u64(&u, p);
        let seed = arith::sqrt_mod_prime(u_mod_p, p).ok_or_else(|| {
            not_square(format!(
                "unit part ≡ {u_mod_p} (mod {p}) is a quadratic non-residue"
            ))
        })?;
        newton_sqrt(BigInt::from(seed), &u, p, work)
    };
    let result = PAdicScalar::new(p, xs.valuation / 2, root, work)?;
    result.with_precision(precision)
}

/// Newton iteration for `r^2 = u` over `Z_p`, odd `p`, starting from a root mod `p`.
fn newton_sqrt(seed: BigInt, u: &BigInt, p: u64, precision: u32) -> BigInt {
    let modulus = big_pow(p, precision);
    let mut r = seed;
    let mut correct = 1u32;
    while correct < precision {
        correct = (2 * correct).min(precision);
        let m = big_pow(p, correct);
        let two_r = (BigInt::from(2) * &r).mod_floor(&m);
        let inv = arith::mod_inverse(&two_r, &m).expect("2r is a unit for odd p");
        r = (&r - (&r * &r - u) * inv).mod_floor(&m);
    }
    r.mod_floor(&modulus)
}

/// Raises the precision of a square root of `x`, continuing the same branch.
pub fn lift_sqrt(root: &PAdicScalar, x: &BigRational, precision: u32) -> Result<PAdicScalar> {
    if precision <= root.precision {
        return root.with_precision(precision);
    }
    let fresh = hensel_sqrt(x, root.prime, precision)?;
    let truncated = fresh.with_precision(root.precision)?;
    if truncated == *root {
        return Ok(fresh);
    }
    let other = fresh.neg();
    if other.with_precision(root.precision)? == *root {
        Ok(other)
    } else {
        Err(Error::invalid("supplied value is not a truncated square root of x"))
    }
}

/// Both congruences that carve out 17 + 24N: `p ≡ 1 (mod 8)` and `p ≡ 2 (mod 3)`.
pub fn verify_progression_congruences(p: u64) -> bool {
    p % 8 == 1 && p % 3 == 2
}

/// The first `count` primes `≡ 17 (mod 24)` that are at least `min`, ascending.
pub fn primes_in_progression(count: usize, min: u64) -> Result<Vec<ProgressionPrime>> {
    primes_in_progression_bounded(count, min, PRIME_SEARCH_LIMIT)
}

pub fn primes_in_progression_bounded(
    count: usize,
    min: u64,
    max_candidates: u64,
) -> Result<Vec<ProgressionPrime>> {
    if count == 0 {
        return Err(Error::invalid("count must be at least 1"));
    }
    let mut candidate = if min <= 17 {
        17
    } else {
        min + (17 + 24 - min % 24) % 24
    };
    let mut out = Vec::with_capacity(count);
    let mut scanned = 0u64;
    while out.len() < count {
        if scanned >= max_candidates {
            return Err(Error::SearchExhausted { scanned });
        }
        scanned += 1;
        if arith::is_prime(candidate) {
            out.push(ProgressionPrime::new(candidate));
        }
        candidate = candidate
            .checked_add(24)
            .ok_or(Error::SearchExhausted { scanned })?;
    }
    Ok(out)
}
