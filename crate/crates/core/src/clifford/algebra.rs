use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::scalar::Scalar;
use crate::error::{Error, Result};
use crate::qform::{parse_rational, DiagonalForm};

/// Largest supported number of generators (algebra dimension 256).
pub const MAX_RANK: usize = 8;

/// Subset of `{0, .., n-1}` encoded as a bitmask.
pub type Blade = u32;

/// `C(V, q)` for `q = <a_1, .., a_n>` in the orthogonal basis `e_1, .., e_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct CliffordAlgebra<S> {
    metric: Vec<S>,
    basis: Vec<Blade>,
}

fn blade_indices(b: Blade) -> Vec<usize> {
    (0..32).filter(|i| b & (1 << i) != 0).collect()
}

/// Subsets ordered by size, then lexicographically on their sorted index lists.
fn basis_order(a: &Blade, b: &Blade) -> Ordering {
    a.count_ones()
        .cmp(&b.count_ones())
        .then_with(|| blade_indices(*a).cmp(&blade_indices(*b)))
}

/// Sign of `e_S · e_T` relative to `e_{S △ T}` before the metric factor:
/// `(-1)^#{(i, j) : i ∈ S, j ∈ T, i > j}`.
fn reorder_sign(s: Blade, t: Blade) -> bool {
    let mut swaps = 0u32;
    let mut rest = t;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        swaps += (s >> (j + 1)).count_ones();
    }
    swaps % 2 == 1
}

impl<S: Scalar> CliffordAlgebra<S> {
    pub fn new(metric: Vec<S>) -> Result<Arc<Self>> {
        if metric.is_empty() || metric.len() > MAX_RANK {
            return Err(Error::invalid(format!(
                "Clifford algebras are supported for 1 to {MAX_RANK} generators, got {}",
                metric.len()
            )));
        }
        if metric.iter().any(Scalar::is_zero) {
            return Err(Error::invalid("degenerate metric"));
        }
        let mut basis: Vec<Blade> = (0..(1u32 << metric.len())).collect();
        basis.sort_by(basis_order);
        Ok(Arc::new(Self { metric, basis }))
    }

    pub fn from_form(form: &DiagonalForm) -> Result<Arc<Self>> {
        Self::new(
            form.coefficients()
                .iter()
                .map(|c| S::from_rational(c.clone()))
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.metric.len()
    }

    pub fn metric(&self) -> &[S] {
        &self.metric
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// Blades in the fixed basis order.
    pub fn basis(&self) -> &[Blade] {
        &self.basis
    }

    pub fn basis_position(&self, blade: Blade) -> usize {
        self.basis
            .iter()
            .position(|&b| b == blade)
            .expect("blade inside the algebra")
    }

    /// `e_S · e_T = ± (Π_{i ∈ S∩T} a_i) e_{S △ T}`.
    pub fn blade_product(&self, s: Blade, t: Blade) -> (S, Blade) {
        let mut coeff = S::one();
        let mut common = s & t;
        while common != 0 {
            let i = common.trailing_zeros() as usize;
            common &= common - 1;
            coeff = coeff * self.metric[i].clone();
        }
        if reorder_sign(s, t) {
            coeff = -coeff;
        }
        (coeff, s ^ t)
    }
}

/// Finitely supported combination of basis blades.
#[derive(Debug, Clone)]
pub struct CliffordElem<S> {
    algebra: Arc<CliffordAlgebra<S>>,
    coeffs: BTreeMap<Blade, S>,
}

impl<S: Scalar> PartialEq for CliffordElem<S> {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra)
            && self.coeffs == other.coeffs
    }
}

/// Even and odd components of an element.
#[derive(Debug, Clone)]
pub struct GradedParts<S> {
    pub even: CliffordElem<S>,
    pub odd: CliffordElem<S>,
}

impl<S: Scalar> PartialEq for GradedParts<S> {
    fn eq(&self, other: &Self) -> bool {
        self.even == other.even && self.odd == other.odd
    }
}

impl<S: Scalar> CliffordElem<S> {
    pub fn zero(algebra: &Arc<CliffordAlgebra<S>>) -> Self {
        Self {
            algebra: Arc::clone(algebra),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn scalar(algebra: &Arc<CliffordAlgebra<S>>, c: S) -> Self {
        Self::blade(algebra, 0, c)
    }

    pub fn one(algebra: &Arc<CliffordAlgebra<S>>) -> Self {
        Self::scalar(algebra, S::one())
    }

    pub fn blade(algebra: &Arc<CliffordAlgebra<S>>, blade: Blade, c: S) -> Self {
        let mut e = Self::zero(algebra);
        e.add_term(blade, c);
        e
    }

    /// The generator `e_{i+1}` (indices are 0-based here).
    pub fn generator(algebra: &Arc<CliffordAlgebra<S>>, i: usize) -> Self {
        Self::blade(algebra, 1 << i, S::one())
    }

    /// `Σ x_i e_i`.
    pub fn vector(algebra: &Arc<CliffordAlgebra<S>>, coords: &[S]) -> Result<Self> {
        if coords.len() != algebra.rank() {
            return Err(Error::invalid("vector length differs from the rank"));
        }
        let mut e = Self::zero(algebra);
        for (i, c) in coords.iter().enumerate() {
            e.add_term(1 << i, c.clone());
        }
        Ok(e)
    }

    /// Coordinates in the algebra's basis order.
    pub fn from_coords(algebra: &Arc<CliffordAlgebra<S>>, coords: &[S]) -> Result<Self> {
        if coords.len() != algebra.dimension() {
            return Err(Error::invalid("coordinate vector has the wrong length"));
        }
        let mut e = Self::zero(algebra);
        for (b, c) in algebra.basis().iter().zip(coords) {
            e.add_term(*b, c.clone());
        }
        Ok(e)
    }

    pub fn coords(&self) -> Vec<S> {
        self.algebra
            .basis()
            .iter()
            .map(|b| self.coefficient(*b))
            .collect()
    }

    pub fn algebra(&self) -> &Arc<CliffordAlgebra<S>> {
        &self.algebra
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &S)> {
        self.coeffs.iter()
    }

    pub fn coefficient(&self, blade: Blade) -> S {
        self.coeffs.get(&blade).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add_term(&mut self, blade: Blade, c: S) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(blade).or_insert_with(S::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.coeffs.remove(&blade);
        }
    }

    fn same_algebra(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::invalid("elements live in different Clifford algebras"))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_algebra(other)?;
        let mut out = self.clone();
        for (b, c) in &other.coeffs {
            out.add_term(*b, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-S::one())
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(&self.algebra);
        for (b, x) in &self.coeffs {
            out.add_term(*b, x.clone() * c.clone());
        }
        out
    }

    /// Clifford product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_algebra(other)?;
        let mut out = Self::zero(&self.algebra);
        for (s, x) in &self.coeffs {
            for (t, y) in &other.coeffs {
                let (sign, blade) = self.algebra.blade_product(*s, *t);
                out.add_term(blade, sign * x.clone() * y.clone());
            }
        }
        Ok(out)
    }

    /// The reversal involution: `(x_1 ⋯ x_r)^* = x_r ⋯ x_1`.
    pub fn star(&self) -> Self {
        let mut out = Self::zero(&self.algebra);
        for (b, x) in &self.coeffs {
            let r = b.count_ones();
            let flip = (r * r.saturating_sub(1) / 2) % 2 == 1;
            out.add_term(*b, if flip { -x.clone() } else { x.clone() });
        }
        out
    }

    pub fn graded_parts(&self) -> GradedParts<S> {
        let mut even = Self::zero(&self.algebra);
        let mut odd = Self::zero(&self.algebra);
        for (b, x) in &self.coeffs {
            if b.count_ones() % 2 == 0 {
                even.add_term(*b, x.clone());
            } else {
                odd.add_term(*b, x.clone());
            }
        }
        GradedParts { even, odd }
    }

    pub fn is_even(&self) -> bool {
        self.coeffs.keys().all(|b| b.count_ones() % 2 == 0)
    }

    pub fn is_odd(&self) -> bool {
        self.coeffs.keys().all(|b| b.count_ones() % 2 == 1)
    }

    /// `Some(0)` / `Some(1)` for homogeneous nonzero elements.
    pub fn parity(&self) -> Option<u32> {
        if self.is_zero() {
            None
        } else if self.is_even() {
            Some(0)
        } else if self.is_odd() {
            Some(1)
        } else {
            None
        }
    }

    /// Coordinates when the element lies in `V = span(e_i)`.
    pub fn as_vector(&self) -> Option<Vec<S>> {
        if self.coeffs.keys().any(|b| b.count_ones() != 1) {
            return None;
        }
        Some(
            (0..self.algebra.rank())
                .map(|i| self.coefficient(1 << i))
                .collect(),
        )
    }

    /// Image under the algebra map induced by `e_i ↦ c_i e'_i`, where the target
    /// metric must satisfy `a'_i c_i^2 = a_i`.
    pub fn transport_diagonal(
        &self,
        scales: &[S],
        target: &Arc<CliffordAlgebra<S>>,
    ) -> Result<Self> {
        let n = self.algebra.rank();
        if scales.len() != n || target.rank() != n {
            return Err(Error::invalid("scaling length differs from the rank"));
        }
        for i in 0..n {
            let lhs = target.metric()[i].clone() * scales[i].clone() * scales[i].clone();
            if lhs != self.algebra.metric()[i] {
                return Err(Error::invalid(format!(
                    "e_{} ↦ c e'_{} is not an isometry",
                    i + 1,
                    i + 1
                )));
            }
        }
        let mut out = Self::zero(target);
        for (b, x) in &self.coeffs {
            let factor = blade_indices(*b)
                .into_iter()
                .fold(S::one(), |acc, i| acc * scales[i].clone());
            out.add_term(*b, x.clone() * factor);
        }
        Ok(out)
    }
}

fn blade_name(b: Blade) -> String {
    let idx: String = blade_indices(b).iter().map(|i| (i + 1).to_string()).collect();
    format!("e{idx}")
}

impl<S: Scalar> fmt::Display for CliffordElem<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut ordered: Vec<(&Blade, &S)> = self.coeffs.iter().collect();
        ordered.sort_by(|a, b| basis_order(a.0, b.0));
        for (k, (b, x)) in ordered.into_iter().enumerate() {
            let (re, im) = x.parts();
            let negative = Zero::is_zero(&im) && re.is_negative();
            let x = &if negative { -x.clone() } else { x.clone() };
            match (k > 0, negative) {
                (true, true) => f.write_str(" - ")?,
                (true, false) => f.write_str(" + ")?,
                (false, true) => f.write_str("-")?,
                (false, false) => {}
            }
            if *b == 0 {
                write!(f, "{x}")?;
            } else if *x == S::one() {
                write!(f, "{}", blade_name(*b))?;
            } else {
                write!(f, "{x}*{}", blade_name(*b))?;
            }
        }
        Ok(())
    }
}

/// Wire record for one term: `value = (num/den) + (s_num/s_den)·sqrt(d)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub mask: Blade,
    pub num: String,
    pub den: String,
    pub s_num: String,
    pub s_den: String,
}

impl<S: Scalar> CliffordElem<S> {
    pub fn to_records(&self) -> Vec<TermRecord> {
        let mut ordered: Vec<(&Blade, &S)> = self.coeffs.iter().collect();
        ordered.sort_by(|a, b| basis_order(a.0, b.0));
        ordered
            .into_iter()
            .map(|(b, x)| {
                let (a, s) = x.parts();
                TermRecord {
                    mask: *b,
                    num: a.numer().to_string(),
                    den: a.denom().to_string(),
                    s_num: s.numer().to_string(),
                    s_den: s.denom().to_string(),
                }
            })
            .collect()
    }

    pub fn from_records(algebra: &Arc<CliffordAlgebra<S>>, records: &[TermRecord]) -> Result<Self> {
        let rat = |n: &str, d: &str| -> Result<BigRational> {
            let n: BigInt = n.parse().map_err(|_| Error::invalid(format!("bad numerator `{n}`")))?;
            let d: BigInt = d.parse().map_err(|_| Error::invalid(format!("bad denominator `{d}`")))?;
            if d == BigInt::from(0) {
                return Err(Error::invalid("zero denominator"));
            }
            Ok(BigRational::new(n, d))
        };
        let mut e = Self::zero(algebra);
        for r in records {
            if r.mask >= (1 << algebra.rank()) {
                return Err(Error::invalid(format!("mask {} outside the algebra", r.mask)));
            }
            let value = S::from_parts(rat(&r.num, &r.den)?, rat(&r.s_num, &r.s_den)?)
                .ok_or_else(|| Error::invalid("irrational coefficient over Q"))?;
            e.add_term(r.mask, value);
        }
        Ok(e)
    }
}

impl<S: Scalar> Serialize for CliffordElem<S> {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> std::result::Result<Ser::Ok, Ser::Error> {
        self.to_records().serialize(s)
    }
}

/// The symmetrization map on `e_{i_1} ∧ ⋯ ∧ e_{i_r}` (0-based, distinct indices):
/// `(1/r!) Σ_σ sign(σ) e_{i_σ(1)} ⋯ e_{i_σ(r)}`, expanded term by term.
pub fn symmetrize<S: Scalar>(
    algebra: &Arc<CliffordAlgebra<S>>,
    indices: &[usize],
) -> Result<CliffordElem<S>> {
    for (k, &i) in indices.iter().enumerate() {
        if i >= algebra.rank() {
            return Err(Error::invalid(format!("index {} outside 1..={}", i + 1, algebra.rank())));
        }
        if indices[..k].contains(&i) {
            return Err(Error::invalid(format!("index {} repeated", i + 1)));
        }
    }
    let r = indices.len();
    let mut acc = CliffordElem::zero(algebra);
    let mut factorial = 1i64;
    for (perm, odd) in permutations(r) {
        let mut word = CliffordElem::one(algebra);
        for &k in &perm {
            word = word.mul(&CliffordElem::generator(algebra, indices[k]))?;
        }
        acc = if odd { acc.sub(&word)? } else { acc.add(&word)? };
    }
    for k in 2..=r as i64 {
        factorial *= k;
    }
    let inv = S::from_i64(factorial).inv().expect("r! is nonzero");
    Ok(acc.scale(&inv))
}

/// All permutations of `0..n` with their parity (true = odd), via Heap's algorithm.
fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    let mut a: Vec<usize> = (0..n).collect();
    let mut out = vec![(a.clone(), false)];
    let mut c = vec![0usize; n];
    let mut odd = false;
    let mut i = 1;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            odd = !odd;
            out.push((a.clone(), odd));
            c[i] += 1;
            i = 1;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Parses `"1 + 2*e12 - 1/2*e1e3"`: each term is an optional rational
/// coefficient and a word of generators `e<i><j>..` (1-based digits, product
/// taken in the written order).
pub fn parse_element(
    algebra: &Arc<CliffordAlgebra<BigRational>>,
    text: &str,
) -> Result<CliffordElem<BigRational>> {
    let err = |position: usize, message: String| Error::Parse { position, message };
    let chars: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    if chars.is_empty() {
        return Err(err(0, "empty element".into()));
    }
    let mut acc = CliffordElem::zero(algebra);
    let mut i = 0;
    while i < chars.len() {
        let term_start = chars[i].0;
        let mut negative = false;
        while i < chars.len() && (chars[i].1 == '+' || chars[i].1 == '-') {
            if chars[i].1 == '-' {
                negative = !negative;
            }
            i += 1;
        }
        let mut coeff_text = String::new();
        while i < chars.len() && (chars[i].1.is_ascii_digit() || chars[i].1 == '/') {
            coeff_text.push(chars[i].1);
            i += 1;
        }
        let mut coeff = if coeff_text.is_empty() {
            BigRational::from_integer(1.into())
        } else {
            parse_rational(&coeff_text)
                .ok_or_else(|| err(term_start, format!("bad coefficient `{coeff_text}`")))?
        };
        if negative {
            coeff = -coeff;
        }
        if i < chars.len() && chars[i].1 == '*' {
            i += 1;
        }
        let mut word = CliffordElem::one(algebra);
        let mut has_word = false;
        while i < chars.len() && chars[i].1 == 'e' {
            let pos = chars[i].0;
            i += 1;
            let mut any = false;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                let d = chars[i].1.to_digit(10).unwrap() as usize;
                if d == 0 || d > algebra.rank() {
                    return Err(err(chars[i].0, format!("generator e{d} outside e1..e{}", algebra.rank())));
                }
                word = word.mul(&CliffordElem::generator(algebra, d - 1))?;
                any = true;
                i += 1;
            }
            if !any {
                return Err(err(pos, "`e` must be followed by generator digits".into()));
            }
            has_word = true;
        }
        if !has_word && coeff_text.is_empty() {
            let pos = chars.get(i).map_or(text.len(), |c| c.0);
            return Err(err(pos, "expected a coefficient or a generator word".into()));
        }
        acc = acc.add(&word.scale(&coeff))?;
        if i < chars.len() && chars[i].1 != '+' && chars[i].1 != '-' {
            return Err(err(chars[i].0, format!("unexpected character `{}`", chars[i].1)));
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn alg(m: &[i64]) -> Arc<CliffordAlgebra<BigRational>> {
        CliffordAlgebra::new(m.iter().map(|&x| q(x)).collect()).unwrap()
    }

    #[test]
    fn basis_is_ordered_by_size_then_lex() {
        let a = alg(&[1, 1, 1]);
        assert_eq!(a.basis(), &[0b000, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111]);
    }

    #[test]
    fn defining_relations() {
        let a = alg(&[2, -3, 5]);
        for i in 0..3 {
            let e = CliffordElem::generator(&a, i);
            assert_eq!(e.mul(&e).unwrap(), CliffordElem::scalar(&a, a.metric()[i].clone()));
        }
        let e1 = CliffordElem::generator(&a, 0);
        let e2 = CliffordElem::generator(&a, 1);
        assert_eq!(e1.mul(&e2).unwrap(), e2.mul(&e1).unwrap().neg());
    }

    #[test]
    fn star_examples() {
        let a = alg(&[1, 1]);
        let e12 = CliffordElem::blade(&a, 0b11, q(1));
        let e2e1 = CliffordElem::generator(&a, 1).mul(&CliffordElem::generator(&a, 0)).unwrap();
        assert_eq!(e12.star(), e2e1);
        assert_eq!(e12.star(), e12.neg());
        assert_eq!(CliffordElem::one(&a).star(), CliffordElem::one(&a));
    }

    #[test]
    fn symmetrization_expansion() {
        let a = alg(&[3, 5, 7]);
        let e12 = symmetrize(&a, &[0, 1]).unwrap();
        assert_eq!(e12, CliffordElem::blade(&a, 0b011, q(1)));
        assert_eq!(symmetrize(&a, &[]).unwrap(), CliffordElem::one(&a));
        assert_eq!(symmetrize(&a, &[0, 1, 2]).unwrap(), CliffordElem::blade(&a, 0b111, q(1)));
        // e2 ∧ e1 = -e1 ∧ e2
        assert_eq!(symmetrize(&a, &[1, 0]).unwrap(), CliffordElem::blade(&a, 0b011, q(-1)));
        assert!(symmetrize(&a, &[0, 0]).is_err());
        assert_eq!(permutations(4).len(), 24);
    }

    #[test]
    fn mismatched_algebras_are_rejected() {
        let a = alg(&[1, 1]);
        let b = alg(&[1, 2]);
        let x = CliffordElem::generator(&a, 0);
        let y = CliffordElem::generator(&b, 0);
        assert!(matches!(x.mul(&y), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn element_literals() {
        let a = alg(&[1, 1, 3]);
        let x = parse_element(&a, "1 + 2*e12 - 1/2 e3").unwrap();
        assert_eq!(x.coefficient(0), q(1));
        assert_eq!(x.coefficient(0b011), q(2));
        assert_eq!(x.coefficient(0b100), BigRational::new((-1).into(), 2.into()));
        let y = parse_element(&a, "e21").unwrap();
        assert_eq!(y, CliffordElem::blade(&a, 0b011, q(-1)));
        let z = parse_element(&a, "e3e3").unwrap();
        assert_eq!(z, CliffordElem::scalar(&a, q(3)));
        assert!(matches!(parse_element(&a, "e4"), Err(Error::Parse { position: 1, .. })));
        assert!(parse_element(&a, "2x").is_err());
        assert_eq!(x.to_string(), "1 - 1/2*e3 + 2*e12");
        assert_eq!(parse_element(&a, &x.to_string()).unwrap(), x);
    }

    #[test]
    fn records_round_trip() {
        let a = alg(&[1, -1, 2]);
        let x = parse_element(&a, "3/4 - e12 + 5 e123").unwrap();
        let back = CliffordElem::from_records(&a, &x.to_records()).unwrap();
        assert_eq!(back, x);
    }
}
