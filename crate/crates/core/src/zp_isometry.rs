//! Certified `Z_p`-isometries between `<1,1,1,P>` and `<-1,-1,-1,-P>`.
//!
//! `P` is a product of distinct primes `≡ 1 (mod 8)`. Three cases occur:
//!
//! * `p ≡ 1 (mod 4)`: `-1 = r^2` in `Z_p`, and scaling every basis vector by `r`
//!   negates the form. Certificate: the diagonal `(r, r, r, r)`.
//! * `p ≡ 3 (mod 4)`: `p ∤ P`, both lattices are unimodular of equal rank with the
//!   same unit discriminant. Certificate: the matched Jordan blocks.
//! * `p = 2`: `P ≡ 1 (mod 8)` is a 2-adic square, so it suffices to map
//!   `<1,1,1,1>` onto `<-1,-1,-1,-1>`. Certificate: a 4×4 matrix `M` over
//!   `Z[s]/(s^2 + 7)` with `Mᵀ·(-I)·M = I`, checked exactly, plus the 2-adic
//!   roots of `-7` and `P` that embed it into `Z_2`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, big_mod_u64, big_pow, split_valuation};
use crate::error::{Error, Result};
use crate::padic::{self, hensel_sqrt, square_class, PAdicScalar, Place, SquareClass};

/// A diagonal `Z_p`-lattice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZpDiagonalLattice {
    #[serde(with = "crate::serde_big::vec")]
    pub coefficients: Vec<BigInt>,
    pub prime: u64,
}

impl ZpDiagonalLattice {
    pub fn new(coefficients: Vec<BigInt>, prime: u64) -> Result<Self> {
        if !arith::is_prime(prime) {
            return Err(Error::invalid(format!("{prime} is not prime")));
        }
        if coefficients.is_empty() || coefficients.iter().any(Zero::is_zero) {
            return Err(Error::invalid("lattice coefficients must be nonzero"));
        }
        Ok(Self {
            coefficients,
            prime,
        })
    }

    pub fn from_i64(coefficients: &[i64], prime: u64) -> Result<Self> {
        Self::new(coefficients.iter().map(|&c| BigInt::from(c)).collect(), prime)
    }

    pub fn negated(&self) -> Self {
        Self {
            coefficients: self.coefficients.iter().map(|c| -c).collect(),
            prime: self.prime,
        }
    }
}

/// The entries of a diagonal lattice of one `p`-adic scale, with `p^scale` removed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JordanBlock {
    pub scale: u32,
    #[serde(with = "crate::serde_big::vec")]
    pub unit_entries: Vec<BigInt>,
}

impl JordanBlock {
    pub fn rank(&self) -> usize {
        self.unit_entries.len()
    }

    pub fn unit_discriminant(&self, p: u64) -> Result<SquareClass> {
        let prod: BigInt = self.unit_entries.iter().product();
        square_class(&BigRational::from_integer(prod), Place::Prime(p))
    }
}

/// Groups the entries of a diagonal lattice by valuation (odd `p` only).
pub fn jordan_decompose(lattice: &ZpDiagonalLattice) -> Result<Vec<JordanBlock>> {
    let p = lattice.prime;
    if p == 2 {
        return Err(Error::UnsupportedCase(
            "Jordan splitting over Z_2 is not implemented".into(),
        ));
    }
    let mut blocks: Vec<JordanBlock> = Vec::new();
    for c in &lattice.coefficients {
        let (v, u) = split_valuation(c, p);
        match blocks.iter_mut().find(|b| b.scale == v) {
            Some(b) => b.unit_entries.push(u),
            None => blocks.push(JordanBlock {
                scale: v,
                unit_entries: vec![u],
            }),
        }
    }
    blocks.sort_by_key(|b| b.scale);
    Ok(blocks)
}

/// Unimodular (same-scale) blocks over odd `p` are isometric iff they have equal
/// rank and equal unit discriminant.
pub fn unimodular_isometric_odd_p(a: &JordanBlock, b: &JordanBlock, p: u64) -> Result<bool> {
    if p % 2 == 0 || !arith::is_prime(p) {
        return Err(Error::invalid(format!("{p} is not an odd prime")));
    }
    if a.scale != b.scale {
        return Err(Error::invalid(format!(
            "blocks live at different scales ({} vs {})",
            a.scale, b.scale
        )));
    }
    for entry in a.unit_entries.iter().chain(&b.unit_entries) {
        if big_mod_u64(entry, p) == 0 {
            return Err(Error::invalid(format!("{entry} is not a {p}-adic unit")));
        }
    }
    Ok(a.rank() == b.rank() && a.unit_discriminant(p)? == b.unit_discriminant(p)?)
}

/// Blockwise comparison of two diagonal lattices over odd `p`.
pub fn jordan_isometric_odd_p(a: &ZpDiagonalLattice, b: &ZpDiagonalLattice) -> Result<bool> {
    if a.prime != b.prime {
        return Err(Error::invalid("lattices over different primes"));
    }
    let ja = jordan_decompose(a)?;
    let jb = jordan_decompose(b)?;
    if ja.len() != jb.len() {
        return Ok(false);
    }
    for (x, y) in ja.iter().zip(&jb) {
        if x.scale != y.scale || !unimodular_isometric_odd_p(x, y, a.prime)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `re + s_coeff * s` in `Z[s]/(s^2 + 7)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "[i64; 2]", from = "[i64; 2]")]
pub struct QuadInt {
    pub re: i64,
    pub s: i64,
}

impl QuadInt {
    /// The square of the adjoined generator.
    pub const S_SQUARED: i64 = -7;

    pub const fn new(re: i64, s: i64) -> Self {
        Self { re, s }
    }

    pub const fn int(re: i64) -> Self {
        Self { re, s: 0 }
    }

    pub const fn zero() -> Self {
        Self::int(0)
    }

    pub fn is_zero(&self) -> bool {
        self.re == 0 && self.s == 0
    }

    /// Image in `Z/p^n` under a chosen root `s0` of `s^2 = -7`.
    pub fn evaluate_mod(&self, s0: &BigInt, modulus: &BigInt) -> BigInt {
        (BigInt::from(self.re) + BigInt::from(self.s) * s0).mod_floor(modulus)
    }
}

impl From<QuadInt> for [i64; 2] {
    fn from(q: QuadInt) -> Self {
        [q.re, q.s]
    }
}

impl From<[i64; 2]> for QuadInt {
    fn from(v: [i64; 2]) -> Self {
        QuadInt::new(v[0], v[1])
    }
}

impl Add for QuadInt {
    type Output = QuadInt;
    fn add(self, o: QuadInt) -> QuadInt {
        QuadInt::new(self.re + o.re, self.s + o.s)
    }
}

impl Sub for QuadInt {
    type Output = QuadInt;
    fn sub(self, o: QuadInt) -> QuadInt {
        QuadInt::new(self.re - o.re, self.s - o.s)
    }
}

impl Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt::new(-self.re, -self.s)
    }
}

impl Mul for QuadInt {
    type Output = QuadInt;
    fn mul(self, o: QuadInt) -> QuadInt {
        QuadInt::new(
            self.re * o.re + Self::S_SQUARED * self.s * o.s,
            self.re * o.s + self.s * o.re,
        )
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re, self.s) {
            (r, 0) => write!(f, "{r}"),
            (0, 1) => write!(f, "s"),
            (0, -1) => write!(f, "-s"),
            (0, s) => write!(f, "{s}s"),
            (r, s) if s < 0 => write!(f, "{r}-{}s", -s),
            (r, s) => write!(f, "{r}+{s}s"),
        }
    }
}

/// Square matrix over `Z[s]/(s^2 + 7)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadExtMatrix {
    pub entries: Vec<Vec<QuadInt>>,
}

impl QuadExtMatrix {
    pub fn new(entries: Vec<Vec<QuadInt>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 || entries.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("matrix must be square and nonempty"));
        }
        Ok(Self { entries })
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![vec![QuadInt::zero(); n]; n];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = QuadInt::int(1);
        }
        Self { entries }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn transpose(&self) -> Self {
        let n = self.size();
        let entries = (0..n)
            .map(|i| (0..n).map(|j| self.entries[j][i]).collect())
            .collect();
        Self { entries }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.size();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).fold(QuadInt::zero(), |acc, k| {
                            acc + self.entries[i][k] * other.entries[k][j]
                        })
                    })
                    .collect()
            })
            .collect();
        Self { entries }
    }

    pub fn diagonal(d: &[i64]) -> Self {
        let mut m = Self::identity(d.len());
        for (i, &x) in d.iter().enumerate() {
            m.entries[i][i] = QuadInt::int(x);
        }
        m
    }

    /// Exact determinant by cofactor expansion (sizes here are tiny).
    pub fn determinant(&self) -> QuadInt {
        fn det(m: &[Vec<QuadInt>]) -> QuadInt {
            let n = m.len();
            if n == 1 {
                return m[0][0];
            }
            let mut acc = QuadInt::zero();
            for col in 0..n {
                let minor: Vec<Vec<QuadInt>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(j, _)| *j != col)
                            .map(|(_, x)| *x)
                            .collect()
                    })
                    .collect();
                let term = m[0][col] * det(&minor);
                acc = if col % 2 == 0 { acc + term } else { acc - term };
            }
            acc
        }
        det(&self.entries)
    }
}

/// The 2-adic isometry from `<-1,-1,-1,-1>`-coordinates onto `<1,1,1,1>`.
pub fn two_adic_matrix() -> QuadExtMatrix {
    let q = QuadInt::new;
    QuadExtMatrix {
        entries: vec![
            vec![q(2, 0), q(1, 0), q(1, 0), q(0, 1)],
            vec![q(-1, 0), q(2, 0), q(0, -1), q(1, 0)],
            vec![q(-1, 0), q(0, 1), q(2, 0), q(-1, 0)],
            vec![q(0, -1), q(-1, 0), q(1, 0), q(2, 0)],
        ],
    }
}

/// Exact check of `Mᵀ·A·M = B` for diagonal `A`, `B`.
pub fn verify_gram_identity(m: &QuadExtMatrix, a: &[i64], b: &[i64]) -> bool {
    let n = m.size();
    if a.len() != n || b.len() != n {
        return false;
    }
    let lhs = m
        .transpose()
        .mul(&QuadExtMatrix::diagonal(a))
        .mul(m);
    lhs == QuadExtMatrix::diagonal(b)
}

/// Witness for a `Z_p`-isometry `<1,1,1,P> ≅ <-1,-1,-1,-P>`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "method")]
pub enum IsometryCertificate {
    /// Basis vector `e_i ↦ d_i e_i`; valid when `d_i^2 = -1`.
    Scaling { prime: u64, diagonal: Vec<PAdicScalar> },
    /// Matching Jordan blocks of equal rank and unit discriminant.
    UnimodularDiscriminant {
        prime: u64,
        blocks_source: Vec<JordanBlock>,
        blocks_target: Vec<JordanBlock>,
        discriminants: Vec<(SquareClass, SquareClass)>,
    },
    /// `Mᵀ·diag(target_sign)·M = diag(source_sign)` over `Z[s]/(s^2+7)`, with
    /// `s = sqrt(-7)` and `sqrt(P)` supplied in `Z_2`.
    ExplicitMatrix {
        matrix: QuadExtMatrix,
        source_sign: Vec<i64>,
        target_sign: Vec<i64>,
        sqrt_minus_seven: PAdicScalar,
        #[serde(with = "crate::serde_big")]
        unit: BigInt,
        sqrt_unit: PAdicScalar,
    },
}

impl IsometryCertificate {
    pub fn method(&self) -> &'static str {
        match self {
            IsometryCertificate::Scaling { .. } => "Scaling",
            IsometryCertificate::UnimodularDiscriminant { .. } => "UnimodularDiscriminant",
            IsometryCertificate::ExplicitMatrix { .. } => "ExplicitMatrix",
        }
    }

    pub fn prime(&self) -> u64 {
        match self {
            IsometryCertificate::Scaling { prime, .. }
            | IsometryCertificate::UnimodularDiscriminant { prime, .. } => *prime,
            IsometryCertificate::ExplicitMatrix { .. } => 2,
        }
    }

    /// Raises the p-adic precision of every root carried by the certificate.
    pub fn lift(&self, precision: u32) -> Result<Self> {
        let minus_one = BigRational::from_integer(BigInt::from(-1));
        match self {
            IsometryCertificate::Scaling { prime, diagonal } => Ok(IsometryCertificate::Scaling {
                prime: *prime,
                diagonal: diagonal
                    .iter()
                    .map(|d| padic::lift_sqrt(d, &minus_one, precision))
                    .collect::<Result<_>>()?,
            }),
            IsometryCertificate::UnimodularDiscriminant { .. } => Ok(self.clone()),
            IsometryCertificate::ExplicitMatrix {
                matrix,
                source_sign,
                target_sign,
                sqrt_minus_seven,
                unit,
                sqrt_unit,
            } => Ok(IsometryCertificate::ExplicitMatrix {
                matrix: matrix.clone(),
                source_sign: source_sign.clone(),
                target_sign: target_sign.clone(),
                sqrt_minus_seven: padic::lift_sqrt(
                    sqrt_minus_seven,
                    &BigRational::from_integer(BigInt::from(-7)),
                    precision,
                )?,
                unit: unit.clone(),
                sqrt_unit: padic::lift_sqrt(
                    sqrt_unit,
                    &BigRational::from_integer(unit.clone()),
                    precision,
                )?,
            }),
        }
    }
}

/// Checks that the lattice is `<1,1,1,P>` with `P` a product of distinct primes
/// `≡ 1 (mod 8)`; returns `P`.
pub fn validate_negation_shape(coefficients: &[BigInt]) -> Result<BigInt> {
    let mut failures = Vec::new();
    if coefficients.len() != 4 {
        return Err(Error::Validation {
            failures: vec![format!(
                "expected 4 coefficients <1,1,1,P>, got {}",
                coefficients.len()
            )],
        });
    }
    for (i, c) in coefficients[..3].iter().enumerate() {
        if !c.is_one() {
            failures.push(format!("coefficient {} is {c}, expected 1", i + 1));
        }
    }
    let product = coefficients[3].clone();
    if !product.is_positive() {
        failures.push(format!("P = {product} is not positive"));
    } else {
        match product.to_u64() {
            None => failures.push(format!("P = {product} is too large to factor")),
            Some(pv) => {
                for (q, e) in arith::factor(pv) {
                    if e > 1 {
                        failures.push(format!("P = {product}: prime {q} repeated"));
                    }
                    if q % 8 != 1 {
                        failures.push(format!("P = {product}: prime factor {q} is not ≡ 1 (mod 8)"));
                    }
                }
            }
        }
    }
    if failures.is_empty() {
        Ok(product)
    } else {
        Err(Error::Validation { failures })
    }
}

/// Decides `<1,1,1,P> ≅ <-1,-1,-1,-P>` over `Z_p` and returns a checkable witness.
pub fn negation_isometric_zp(
    coefficients: &[BigInt],
    p: u64,
    precision: u32,
) -> Result<(bool, IsometryCertificate)> {
    if !arith::is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    let product = validate_negation_shape(coefficients)?;
    let minus_one = BigRational::from_integer(BigInt::from(-1));
    let cert = if p == 2 {
        let matrix = two_adic_matrix();
        let sqrt_minus_seven =
            hensel_sqrt(&BigRational::from_integer(BigInt::from(-7)), 2, precision)?;
        let sqrt_unit = hensel_sqrt(&BigRational::from_integer(product.clone()), 2, precision)?;
        IsometryCertificate::ExplicitMatrix {
            matrix,
            source_sign: vec![1; 4],
            target_sign: vec![-1; 4],
            sqrt_minus_seven,
            unit: product,
            sqrt_unit,
        }
    } else if p % 4 == 1 {
        let r = hensel_sqrt(&minus_one, p, precision)?;
        IsometryCertificate::Scaling {
            prime: p,
            diagonal: vec![r; coefficients.len()],
        }
    } else {
        let source = ZpDiagonalLattice::new(coefficients.to_vec(), p)?;
        let target = source.negated();
        let blocks_source = jordan_decompose(&source)?;
        let blocks_target = jordan_decompose(&target)?;
        let discriminants = blocks_source
            .iter()
            .zip(&blocks_target)
            .map(|(a, b)| Ok((a.unit_discriminant(p)?, b.unit_discriminant(p)?)))
            .collect::<Result<_>>()?;
        IsometryCertificate::UnimodularDiscriminant {
            prime: p,
            blocks_source,
            blocks_target,
            discriminants,
        }
    };
    let ok = verify_certificate(&cert, coefficients, p, precision)?;
    Ok((ok, cert))
}

/// `d_i^2 · a_i ≡ -a_i (mod p^N)` for every coefficient.
pub fn verify_scaling_certificate(
    cert: &IsometryCertificate,
    coefficients: &[BigInt],
    p: u64,
    precision: u32,
) -> Result<bool> {
    let IsometryCertificate::Scaling { prime, diagonal } = cert else {
        return Err(Error::invalid("not a scaling certificate"));
    };
    if *prime != p || diagonal.len() != coefficients.len() {
        return Ok(false);
    }
    let modulus = big_pow(p, precision);
    for (d, a) in diagonal.iter().zip(coefficients) {
        if d.prime != p || d.valuation != 0 {
            return Ok(false);
        }
        if precision > d.precision {
            return Err(Error::InsufficientPrecision {
                requested: precision,
                available: d.precision,
            });
        }
        let lhs = (&d.unit * &d.unit + BigInt::one()) * a;
        if !lhs.mod_floor(&modulus).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn root_checks(root: &PAdicScalar, square: &BigInt, precision: u32) -> Result<bool> {
    if root.prime != 2 || root.valuation != 0 {
        return Ok(false);
    }
    if precision > root.precision {
        return Err(Error::InsufficientPrecision {
            requested: precision,
            available: root.precision,
        });
    }
    let modulus = big_pow(2, precision);
    Ok((&root.unit * &root.unit - square).mod_floor(&modulus).is_zero())
}

/// Independently re-checks any certificate against the source lattice.
pub fn verify_certificate(
    cert: &IsometryCertificate,
    coefficients: &[BigInt],
    p: u64,
    precision: u32,
) -> Result<bool> {
    match cert {
        IsometryCertificate::Scaling { .. } => {
            verify_scaling_certificate(cert, coefficients, p, precision)
        }
        IsometryCertificate::UnimodularDiscriminant {
            prime,
            blocks_source,
            blocks_target,
            ..
        } => {
            if *prime != p {
                return Ok(false);
            }
            let source = ZpDiagonalLattice::new(coefficients.to_vec(), p)?;
            let target = source.negated();
            if jordan_decompose(&source)? != *blocks_source
                || jordan_decompose(&target)? != *blocks_target
                || blocks_source.len() != blocks_target.len()
            {
                return Ok(false);
            }
            for (a, b) in blocks_source.iter().zip(blocks_target) {
                if a.scale != b.scale || !unimodular_isometric_odd_p(a, b, p)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        IsometryCertificate::ExplicitMatrix {
            matrix,
            source_sign,
            target_sign,
            sqrt_minus_seven,
            unit,
            sqrt_unit,
        } => {
            if p != 2 || coefficients.len() != 4 || coefficients[3] != *unit {
                return Ok(false);
            }
            if coefficients[..3].iter().any(|c| !c.is_one()) {
                return Ok(false);
            }
            // Mᵀ·diag(target)·M = diag(source) exactly, and M invertible over Z_2
            if !verify_gram_identity(matrix, target_sign, source_sign) {
                return Ok(false);
            }
            let det = matrix.determinant();
            if (det.re + det.s).rem_euclid(2) != 1 {
                return Ok(false);
            }
            if source_sign.iter().any(|&x| x != 1) || target_sign.iter().any(|&x| x != -1) {
                return Ok(false);
            }
            Ok(root_checks(sqrt_minus_seven, &BigInt::from(-7), precision)?
                && root_checks(sqrt_unit, unit, precision)?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    const P: i64 = 89 * 113;

    #[test]
    fn jordan_examples() {
        let l = ZpDiagonalLattice::from_i64(&[1, 1, 1, P], 89).unwrap();
        let blocks = jordan_decompose(&l).unwrap();
        assert_eq!(blocks.len(), 2);
        assert_eq!(blocks[0].scale, 0);
        assert_eq!(blocks[0].unit_entries, big(&[1, 1, 1]));
        assert_eq!(blocks[1].scale, 1);
        assert_eq!(blocks[1].unit_entries, big(&[113]));

        let unimod = ZpDiagonalLattice::from_i64(&[1, 2, 3], 5).unwrap();
        let b = jordan_decompose(&unimod).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].scale, 0);

        let l = ZpDiagonalLattice::from_i64(&[89 * 89, 1], 89).unwrap();
        let scales: Vec<u32> = jordan_decompose(&l).unwrap().iter().map(|b| b.scale).collect();
        assert_eq!(scales, vec![0, 2]);

        let two = ZpDiagonalLattice::from_i64(&[1, 2], 2).unwrap();
        assert!(matches!(jordan_decompose(&two), Err(Error::UnsupportedCase(_))));
    }

    #[test]
    fn unimodular_comparison() {
        let blk = |v: &[i64]| JordanBlock {
            scale: 0,
            unit_entries: big(v),
        };
        // p ≡ 3 (mod 4), P' a unit
        assert!(unimodular_isometric_odd_p(&blk(&[1, 1, 1, P]), &blk(&[-1, -1, -1, -P]), 7).unwrap());
        assert!(unimodular_isometric_odd_p(&blk(&[1, 2]), &blk(&[1, 2]), 5).unwrap());
        assert!(!unimodular_isometric_odd_p(&blk(&[1]), &blk(&[3]), 7).unwrap());
        let shifted = JordanBlock {
            scale: 1,
            unit_entries: big(&[1]),
        };
        assert!(matches!(
            unimodular_isometric_odd_p(&blk(&[1]), &shifted, 7),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn gram_identity_examples() {
        let m = two_adic_matrix();
        assert!(verify_gram_identity(&m, &[-1; 4], &[1; 4]));
        let id = QuadExtMatrix::identity(4);
        assert!(verify_gram_identity(&id, &[-1; 4], &[-1; 4]));
        let mut flipped = m.clone();
        flipped.entries[0][0] = -flipped.entries[0][0];
        assert!(!verify_gram_identity(&flipped, &[-1; 4], &[1; 4]));
        // first column: 4 + 1 + 1 + s^2 = -1
        let col: QuadInt = (0..4).fold(QuadInt::zero(), |acc, i| acc + m.entries[i][0] * m.entries[i][0]);
        assert_eq!(col, QuadInt::int(-1));
        let det = m.determinant();
        assert!(det == QuadInt::int(1) || det == QuadInt::int(-1));
    }

    #[test]
    fn negation_cases() {
        let form = big(&[1, 1, 1, P]);
        let (ok, cert) = negation_isometric_zp(&form, 2, 64).unwrap();
        assert!(ok);
        assert_eq!(cert.method(), "ExplicitMatrix");

        let (ok, cert) = negation_isometric_zp(&form, 5, 64).unwrap();
        assert!(ok);
        assert_eq!(cert.method(), "Scaling");

        let (ok, cert) = negation_isometric_zp(&form, 89, 64).unwrap();
        assert!(ok);
        assert_eq!(cert.method(), "Scaling");

        let (ok, cert) = negation_isometric_zp(&form, 7, 64).unwrap();
        assert!(ok);
        assert_eq!(cert.method(), "UnimodularDiscriminant");

        assert!(matches!(
            negation_isometric_zp(&big(&[1, 1, 1, 3]), 5, 64),
            Err(Error::Validation { .. })
        ));
        assert!(matches!(
            negation_isometric_zp(&big(&[1, 1, 2, 17]), 5, 64),
            Err(Error::Validation { .. })
        ));
    }

    #[test]
    fn scaling_verifier() {
        let form = big(&[1, 1, 1, P]);
        let (_, cert) = negation_isometric_zp(&form, 5, 20).unwrap();
        assert!(verify_scaling_certificate(&cert, &form, 5, 20).unwrap());

        let bogus = IsometryCertificate::Scaling {
            prime: 5,
            diagonal: vec![PAdicScalar::from_integer(1, 5, 20).unwrap(); 4],
        };
        assert!(!verify_scaling_certificate(&bogus, &form, 5, 20).unwrap());

        assert!(matches!(
            verify_scaling_certificate(&cert, &form, 5, 40),
            Err(Error::InsufficientPrecision { requested: 40, available: 20 })
        ));
        let lifted = cert.lift(40).unwrap();
        assert!(verify_scaling_certificate(&lifted, &form, 5, 40).unwrap());
    }

    #[test]
    fn certificate_json_shape() {
        let form = big(&[1, 1, 1, P]);
        let (_, cert) = negation_isometric_zp(&form, 2, 16).unwrap();
        let v = serde_json::to_value(&cert).unwrap();
        assert_eq!(v["method"], "ExplicitMatrix");
        assert_eq!(v["matrix"]["entries"][0][3], serde_json::json!([0, 1]));
        let back: IsometryCertificate = serde_json::from_value(v).unwrap();
        assert_eq!(back, cert);
    }
}
