//! Diagonal quadratic forms over Q and their local invariants.
//!
//! Hilbert symbols use the explicit formulas for `Q_p` (odd `p` and `p = 2`)
//! and sign analysis at the real place. Isotropy at a finite place is decided
//! from `(rank, discriminant, Hasse invariant)`; the Witt index follows by
//! repeatedly splitting off hyperbolic planes at the level of invariants.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{self, big_mod_u64, split_valuation};
use crate::error::{Error, Result};
use crate::padic::{legendre, square_class, Place, SquareClass};

/// `<a1, ..., an>` with nonzero rational entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalForm {
    coefficients: Vec<BigRational>,
    pub label: Option<String>,
}

impl DiagonalForm {
    pub fn new(coefficients: Vec<BigRational>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::invalid("a form needs at least one coefficient"));
        }
        if let Some(i) = coefficients.iter().position(|c| c.is_zero()) {
            return Err(Error::invalid(format!(
                "coefficient {} is zero (degenerate form)",
                i + 1
            )));
        }
        Ok(Self {
            coefficients,
            label: None,
        })
    }

    pub fn from_integers(coefficients: &[i64]) -> Result<Self> {
        Self::new(
            coefficients
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn from_big_integers(coefficients: &[BigInt]) -> Result<Self> {
        Self::new(
            coefficients
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    pub fn rank(&self) -> usize {
        self.coefficients.len()
    }

    pub fn orthogonal_sum(&self, other: &DiagonalForm) -> DiagonalForm {
        let mut coefficients = self.coefficients.clone();
        coefficients.extend(other.coefficients.iter().cloned());
        DiagonalForm {
            coefficients,
            label: None,
        }
    }

    /// The `w`-fold sum of hyperbolic planes `<1,-1>`.
    pub fn hyperbolic(w: usize) -> Option<DiagonalForm> {
        if w == 0 {
            return None;
        }
        let mut c = Vec::with_capacity(2 * w);
        for _ in 0..w {
            c.push(BigRational::one());
            c.push(-BigRational::one());
        }
        Some(DiagonalForm {
            coefficients: c,
            label: None,
        })
    }

    /// Value of the form at a coordinate vector.
    pub fn evaluate(&self, x: &[BigRational]) -> BigRational {
        self.coefficients
            .iter()
            .zip(x)
            .map(|(a, xi)| a * xi * xi)
            .fold(BigRational::zero(), |acc, t| acc + t)
    }

    pub fn product(&self) -> BigRational {
        self.coefficients
            .iter()
            .fold(BigRational::one(), |acc, c| acc * c)
    }
}

impl fmt::Display for DiagonalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, c) in self.coefficients.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(">")
    }
}

impl FromStr for DiagonalForm {
    type Err = Error;

    /// Grammar: `<a1,a2,...,an>` where each entry is an integer or `num/den`.
    /// Whitespace is ignored everywhere.
    fn from_str(s: &str) -> Result<Self> {
        let chars: Vec<(usize, char)> = s
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        let err = |position: usize, message: &str| Error::Parse {
            position,
            message: message.to_string(),
        };
        let end = s.len();
        let mut i = 0;
        match chars.first() {
            Some((_, '<')) => i += 1,
            Some((pos, _)) => return Err(err(*pos, "expected `<`")),
            None => return Err(err(0, "empty form literal")),
        }
        let mut coefficients = Vec::new();
        loop {
            let start_pos = chars.get(i).map_or(end, |c| c.0);
            let mut token = String::new();
            while let Some(&(_, c)) = chars.get(i) {
                if c == ',' || c == '>' {
                    break;
                }
                if !(c.is_ascii_digit() || c == '-' || c == '+' || c == '/') {
                    return Err(err(chars[i].0, &format!("unexpected character `{c}`")));
                }
                token.push(c);
                i += 1;
            }
            if token.is_empty() {
                return Err(err(start_pos, "expected a coefficient"));
            }
            let value = parse_rational(&token).ok_or_else(|| {
                err(start_pos, &format!("`{token}` is not an integer or num/den"))
            })?;
            if value.is_zero() {
                return Err(err(start_pos, "coefficient is zero (degenerate form)"));
            }
            coefficients.push(value);
            match chars.get(i) {
                Some((_, ',')) => i += 1,
                Some((_, '>')) => {
                    i += 1;
                    break;
                }
                _ => return Err(err(end, "expected `,` or `>`")),
            }
        }
        if let Some((pos, _)) = chars.get(i) {
            return Err(err(*pos, "trailing characters after `>`"));
        }
        DiagonalForm::new(coefficients)
    }
}

pub(crate) fn parse_rational(token: &str) -> Option<BigRational> {
    let (num, den) = match token.split_once('/') {
        Some((n, d)) => (n, d),
        None => (token, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() || den.is_negative() {
        return None;
    }
    Some(BigRational::new(num, den))
}

#[derive(Serialize, Deserialize)]
struct FormRepr {
    literal: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

impl Serialize for DiagonalForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FormRepr {
            literal: self.to_string(),
            label: self.label.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DiagonalForm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = FormRepr::deserialize(d)?;
        let mut form: DiagonalForm = repr.literal.parse().map_err(serde::de::Error::custom)?;
        form.label = repr.label;
        Ok(form)
    }
}

/// Rank, discriminant, Hasse invariant and (at the real place) signature.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalInvariants {
    pub place: Place,
    pub rank: usize,
    pub discriminant: SquareClass,
    pub hasse: i8,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signature: Option<(usize, usize)>,
}

/// `w` hyperbolic planes plus an anisotropic kernel at one place.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WittDecomposition {
    pub place: Place,
    pub witt_index: usize,
    pub anisotropic_invariants: LocalInvariants,
    /// A diagonal form over Q realizing the kernel at this place; `None` when it is zero.
    pub kernel: Option<DiagonalForm>,
}

impl WittDecomposition {
    /// `w<1,-1> ⊥ kernel`, which is locally equivalent to the decomposed form.
    pub fn recompose(&self) -> Option<DiagonalForm> {
        match (DiagonalForm::hyperbolic(self.witt_index), &self.kernel) {
            (Some(h), Some(k)) => Some(h.orthogonal_sum(k)),
            (Some(h), None) => Some(h),
            (None, Some(k)) => Some(k.clone()),
            (None, None) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

fn nonzero_int(x: &BigRational, what: &str) -> Result<BigInt> {
    if x.is_zero() {
        return Err(Error::invalid(format!("{what} must be nonzero")));
    }
    Ok(arith::square_class_integer(x))
}

/// Hilbert symbol `(a, b)_v`: `+1` iff `z^2 = a x^2 + b y^2` has a nonzero solution over `Q_v`.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, place: Place) -> Result<i8> {
    let a = nonzero_int(a, "a")?;
    let b = nonzero_int(b, "b")?;
    hilbert_symbol_int(&a, &b, place)
}

pub fn hilbert_symbol_i64(a: i64, b: i64, place: Place) -> Result<i8> {
    hilbert_symbol_int(&BigInt::from(a), &BigInt::from(b), place)
}

pub(crate) fn hilbert_symbol_int(a: &BigInt, b: &BigInt, place: Place) -> Result<i8> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::invalid("Hilbert symbol arguments must be nonzero"));
    }
    match place {
        Place::Real => Ok(if a.is_negative() && b.is_negative() {
            -1
        } else {
            1
        }),
        Place::Prime(2) => {
            let (alpha, u) = split_valuation(a, 2);
            let (beta, v) = split_valuation(b, 2);
            let eps = |x: &BigInt| u32::from(big_mod_u64(x, 4) == 3);
            let omega = |x: &BigInt| u32::from(matches!(big_mod_u64(x, 8), 3 | 5));
            let e = eps(&u) * eps(&v) + alpha * omega(&v) + beta * omega(&u);
            Ok(if e % 2 == 0 { 1 } else { -1 })
        }
        Place::Prime(p) => {
            let (alpha, u) = split_valuation(a, p);
            let (beta, v) = split_valuation(b, p);
            let eps_p = ((p - 1) / 2) % 2;
            let mut sign = if (alpha as u64 * beta as u64 * eps_p) % 2 == 0 {
                1
            } else {
                -1
            };
            if beta % 2 == 1 {
                sign *= legendre(&u, p)?;
            }
            if alpha % 2 == 1 {
                sign *= legendre(&v, p)?;
            }
            Ok(sign)
        }
    }
}

fn form_integers(form: &DiagonalForm) -> Vec<BigInt> {
    form.coefficients
        .iter()
        .map(arith::square_class_integer)
        .collect()
}

/// Product of `(a_i, a_j)_v` over `i < j`.
pub fn hasse_invariant(form: &DiagonalForm, place: Place) -> Result<i8> {
    let a = form_integers(form);
    let mut h = 1;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            h *= hilbert_symbol_int(&a[i], &a[j], place)?;
        }
    }
    Ok(h)
}

/// Square class of the product of the coefficients.
pub fn discriminant(form: &DiagonalForm, place: Place) -> Result<SquareClass> {
    square_class(&form.product(), place)
}

/// `(n+, n-)`, the counts of positive and negative coefficients.
pub fn real_signature(form: &DiagonalForm) -> (usize, usize) {
    let pos = form.coefficients.iter().filter(|c| c.is_positive()).count();
    (pos, form.rank() - pos)
}

pub fn local_invariants(form: &DiagonalForm, place: Place) -> Result<LocalInvariants> {
    Ok(LocalInvariants {
        place,
        rank: form.rank(),
        discriminant: discriminant(form, place)?,
        hasse: hasse_invariant(form, place)?,
        signature: match place {
            Place::Real => Some(real_signature(form)),
            Place::Prime(_) => None,
        },
    })
}

pub fn witt_index_real(form: &DiagonalForm) -> usize {
    let (pos, neg) = real_signature(form);
    pos.min(neg)
}

/// Isotropy over `Q_p` from the classification data of a form of the given rank.
pub fn isotropic_from_invariants(rank: usize, disc: &SquareClass, hasse: i8, p: u64) -> Result<bool> {
    let place = Place::Prime(p);
    let d = BigInt::from(disc.representative);
    let minus_one = BigInt::from(-1);
    Ok(match rank {
        0 | 1 => false,
        2 => square_class(&BigRational::from_integer(-d), place)?.is_trivial(),
        3 => hasse == hilbert_symbol_int(&minus_one, &-d, place)?,
        4 => !(disc.is_trivial() && hasse == -hilbert_symbol_int(&minus_one, &minus_one, place)?),
        _ => true,
    })
}

/// Whether the form represents zero nontrivially over `Q_p`.
pub fn is_isotropic_local(form: &DiagonalForm, p: u64) -> Result<bool> {
    let place = Place::prime(p)?;
    let inv = local_invariants(form, place)?;
    isotropic_from_invariants(inv.rank, &inv.discriminant, inv.hasse, p)
}

/// Invariants after removing one hyperbolic plane: if `q = H ⊥ q'`
/// then `d(q') = -d(q)` and `hasse(q') = hasse(q) * (-1, d(q'))`.
fn split_hyperbolic(rank: usize, disc: &SquareClass, hasse: i8) -> Result<(usize, SquareClass, i8)> {
    let d_new = square_class(
        &BigRational::from_integer(BigInt::from(-disc.representative)),
        disc.place,
    )?;
    let h = hilbert_symbol_int(
        &BigInt::from(-1),
        &BigInt::from(d_new.representative),
        disc.place,
    )?;
    Ok((rank - 2, d_new, hasse * h))
}

fn anisotropic_kernel_invariants(form: &DiagonalForm, p: u64) -> Result<(usize, LocalInvariants)> {
    let place = Place::prime(p)?;
    let inv = local_invariants(form, place)?;
    let (mut rank, mut disc, mut hasse) = (inv.rank, inv.discriminant, inv.hasse);
    let mut w = 0;
    while isotropic_from_invariants(rank, &disc, hasse, p)? {
        (rank, disc, hasse) = split_hyperbolic(rank, &disc, hasse)?;
        w += 1;
    }
    Ok((
        w,
        LocalInvariants {
            place,
            rank,
            discriminant: disc,
            hasse,
            signature: None,
        },
    ))
}

/// Witt index over `Q_p`.
pub fn witt_index_local(form: &DiagonalForm, p: u64) -> Result<usize> {
    Ok(anisotropic_kernel_invariants(form, p)?.0)
}

/// Witt index at any place.
pub fn witt_index(form: &DiagonalForm, place: Place) -> Result<usize> {
    match place {
        Place::Real => Ok(witt_index_real(form)),
        Place::Prime(p) => witt_index_local(form, p),
    }
}

/// Witt decomposition at `place`, with an explicit diagonal kernel built from
/// square-class representatives.
pub fn witt_decompose(form: &DiagonalForm, place: Place) -> Result<WittDecomposition> {
    match place {
        Place::Real => {
            let (pos, neg) = real_signature(form);
            let w = pos.min(neg);
            let mut coeffs = vec![BigRational::one(); pos - w];
            coeffs.extend(std::iter::repeat(-BigRational::one()).take(neg - w));
            let kernel = if coeffs.is_empty() {
                None
            } else {
                Some(DiagonalForm::new(coeffs)?)
            };
            let anisotropic_invariants = match &kernel {
                Some(k) => local_invariants(k, place)?,
                None => empty_invariants(place),
            };
            Ok(WittDecomposition {
                place,
                witt_index: w,
                anisotropic_invariants,
                kernel,
            })
        }
        Place::Prime(p) => {
            let (w, inv) = anisotropic_kernel_invariants(form, p)?;
            let kernel = if inv.rank == 0 {
                None
            } else {
                Some(realize_anisotropic(&inv, p)?)
            };
            Ok(WittDecomposition {
                place,
                witt_index: w,
                anisotropic_invariants: inv,
                kernel,
            })
        }
    }
}

fn empty_invariants(place: Place) -> LocalInvariants {
    LocalInvariants {
        place,
        rank: 0,
        discriminant: SquareClass {
            place,
            representative: 1,
        },
        hasse: 1,
        signature: match place {
            Place::Real => Some((0, 0)),
            Place::Prime(_) => None,
        },
    }
}

/// Searches tuples of square-class representatives for an anisotropic form
/// with the requested invariants (unique up to isometry by Witt cancellation).
fn realize_anisotropic(target: &LocalInvariants, p: u64) -> Result<DiagonalForm> {
    let place = Place::Prime(p);
    let classes = SquareClass::all(place);
    let m = target.rank;
    let mut idx = vec![0usize; m];
    loop {
        let coeffs: Vec<i64> = idx
            .iter()
            .map(|&i| classes[i].representative as i64)
            .collect();
        let cand = DiagonalForm::from_integers(&coeffs)?;
        let inv = local_invariants(&cand, place)?;
        if inv.discriminant == target.discriminant
            && inv.hasse == target.hasse
            && !isotropic_from_invariants(m, &inv.discriminant, inv.hasse, p)?
        {
            return Ok(cand);
        }
        // next nondecreasing index tuple
        let mut k = m;
        loop {
            if k == 0 {
                return Err(Error::UnsupportedCase(format!(
                    "no anisotropic form of rank {m} with invariants {target:?}"
                )));
            }
            k -= 1;
            if idx[k] + 1 < classes.len() {
                idx[k] += 1;
                let v = idx[k];
                for j in idx.iter_mut().skip(k + 1) {
                    *j = v;
                }
                break;
            }
        }
    }
}

/// Isotropy over Q for forms of rank at least five, where only the real place matters.
pub fn is_isotropic_over_q(form: &DiagonalForm) -> Result<bool> {
    if form.rank() < 5 {
        return Err(Error::UnsupportedRank {
            rank: form.rank(),
            reason: "isotropy over Q is only decided for forms in five or more variables".into(),
        });
    }
    let (pos, neg) = real_signature(form);
    Ok(pos > 0 && neg > 0)
}

/// Checks a list of primes for membership in 17 + 24N above 89, pairwise distinct.
pub fn validate_progression_primes(primes: &[u64]) -> Result<()> {
    let mut failures = Vec::new();
    if primes.is_empty() {
        failures.push("no primes given".to_string());
    }
    for (i, &p) in primes.iter().enumerate() {
        if !arith::is_prime(p) {
            failures.push(format!("{p}: not prime"));
        }
        if p < 89 {
            failures.push(format!("{p}: smaller than 89"));
        }
        if p % 8 != 1 {
            failures.push(format!("{p}: not ≡ 1 (mod 8)"));
        }
        if p % 3 != 2 {
            failures.push(format!("{p}: not ≡ 2 (mod 3)"));
        }
        if primes[..i].contains(&p) {
            failures.push(format!("{p}: repeated"));
        }
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Error::Validation { failures })
    }
}

/// `<±1, ±1, ±1, ±P, 3>` with `P` the product of the given primes.
pub fn build_signed_form(sign: Sign, primes: &[u64]) -> Result<DiagonalForm> {
    validate_progression_primes(primes)?;
    let product: BigInt = primes.iter().map(|&p| BigInt::from(p)).product();
    let s = BigInt::from(sign.as_i64());
    let coeffs = vec![s.clone(), s.clone(), s.clone(), s * product, BigInt::from(3)];
    Ok(DiagonalForm::from_big_integers(&coeffs)?.with_label(format!("q{sign}")))
}

/// Reduces every coefficient modulo squares of `p` (valuation 0 or 1, unit part kept).
pub fn local_squarefree(form: &DiagonalForm, p: u64) -> Vec<BigInt> {
    form_integers(form)
        .iter()
        .map(|a| arith::strip_square_p(a, p))
        .collect()
}
