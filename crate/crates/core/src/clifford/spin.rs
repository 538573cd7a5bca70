use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::algebra::{Blade, CliffordElem};
use super::linalg::Matrix;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Outcome of the four spin-group membership checks for one element.
#[derive(Debug, Clone, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct SpinWitness<S> {
    pub element: CliffordElem<S>,
    pub even: bool,
    pub invertible: bool,
    pub inverse: Option<CliffordElem<S>>,
    pub preserves_v: bool,
    /// Matrix of `v ↦ g v g^{-1}` when every image lies in `V`.
    pub conjugation_matrix: Option<Matrix<S>>,
    pub star_unital: bool,
    pub star_product: CliffordElem<S>,
}

impl<S: Scalar> SpinWitness<S> {
    pub fn passes(&self) -> bool {
        self.even && self.invertible && self.preserves_v && self.star_unital
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.even {
            out.push("evenness");
        }
        if !self.invertible {
            out.push("invertibility");
        }
        if !self.preserves_v {
            out.push("V-preservation");
        }
        if !self.star_unital {
            out.push("star-unitality");
        }
        out
    }
}

/// Matrix of `x ↦ x·g` in the algebra's basis order: column `j` holds the
/// coordinates of `b_j · g`. With this convention `matrix(g h) = matrix(h) · matrix(g)`.
pub fn right_mult_matrix<S: Scalar>(g: &CliffordElem<S>) -> Matrix<S> {
    let alg = g.algebra();
    let dim = alg.dimension();
    let mut m = Matrix::zeros(dim, dim);
    for (j, b) in alg.basis().iter().enumerate() {
        let image = CliffordElem::blade(alg, *b, S::one())
            .mul(g)
            .expect("same algebra");
        for (i, c) in image.coords().into_iter().enumerate() {
            m.set(i, j, c);
        }
    }
    m
}

/// Two-sided inverse, found by solving `x · g = 1` exactly.
///
/// Right multiplication by an even element preserves parity, so for even `g`
/// only the block on the even subalgebra is solved. An invertible `g` has an
/// even inverse in that case.
pub fn inverse<S: Scalar>(g: &CliffordElem<S>) -> Option<CliffordElem<S>> {
    let alg = g.algebra();
    let x = if g.is_even() {
        let even: Vec<Blade> = alg.basis().iter().copied().filter(|b| b.count_ones() % 2 == 0).collect();
        let mut block = Matrix::zeros(even.len(), even.len());
        for (j, b) in even.iter().enumerate() {
            let image = CliffordElem::blade(alg, *b, S::one()).mul(g).expect("same algebra");
            for (i, r) in even.iter().enumerate() {
                block.set(i, j, image.coefficient(*r));
            }
        }
        let mut rhs = vec![S::zero(); even.len()];
        rhs[0] = S::one();
        let sol = block.solve(&rhs)?;
        let mut x = CliffordElem::zero(alg);
        for (b, c) in even.iter().zip(sol) {
            x = x.add(&CliffordElem::blade(alg, *b, c)).expect("same algebra");
        }
        x
    } else {
        let mut rhs = vec![S::zero(); alg.dimension()];
        rhs[0] = S::one();
        CliffordElem::from_coords(alg, &right_mult_matrix(g).solve(&rhs)?).ok()?
    };
    // A one-sided inverse in a finite-dimensional algebra is two-sided.
    debug_assert!(g.mul(&x).ok()? == CliffordElem::one(alg));
    Some(x)
}

fn conjugation_matrix<S: Scalar>(g: &CliffordElem<S>, g_inv: &CliffordElem<S>) -> Option<Matrix<S>> {
    let alg = g.algebra();
    let n = alg.rank();
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        let image = g
            .mul(&CliffordElem::generator(alg, i))
            .and_then(|x| x.mul(g_inv))
            .ok()?;
        let col = image.as_vector()?;
        for (r, c) in col.into_iter().enumerate() {
            m.set(r, i, c);
        }
    }
    Some(m)
}

pub fn is_spin<S: Scalar>(g: &CliffordElem<S>) -> SpinWitness<S> {
    let even = g.is_even();
    let inv = inverse(g);
    let conj = inv.as_ref().and_then(|x| conjugation_matrix(g, x));
    let star_product = g.star().mul(g).expect("same algebra");
    SpinWitness {
        element: g.clone(),
        even,
        invertible: inv.is_some(),
        preserves_v: conj.is_some(),
        conjugation_matrix: conj,
        star_unital: star_product == CliffordElem::one(g.algebra()),
        inverse: inv,
        star_product,
    }
}

/// The covering map to `SO(q)`: column `i` of the result is `g e_i g^{-1}`.
pub fn pi<S: Scalar>(g: &CliffordElem<S>) -> Result<Matrix<S>> {
    let w = is_spin(g);
    if !w.passes() {
        return Err(Error::NotSpin(format!(
            "{g} fails {}",
            w.failures().join(", ")
        )));
    }
    Ok(w.conjugation_matrix.expect("checked above"))
}

/// Whether `g` and `g^{-1}` both act by matrices with entries in `Z[1/P]`,
/// `P` the product of `inverted_primes`.
pub fn is_integral_point(g: &CliffordElem<BigRational>, inverted_primes: &[u64]) -> Result<bool> {
    let w = is_spin(g);
    if !w.passes() {
        return Err(Error::NotSpin(format!("{g} fails {}", w.failures().join(", "))));
    }
    let g_inv = w.inverse.expect("spin elements are invertible");
    let ok = |m: &Matrix<BigRational>| {
        m.entries().all(|x| {
            let mut d = x.denom().clone();
            for &p in inverted_primes {
                let p = BigInt::from(p);
                while d.is_multiple_of(&p) {
                    d /= &p;
                }
            }
            d.is_one()
        })
    };
    Ok(ok(&right_mult_matrix(g)) && ok(&right_mult_matrix(&g_inv)))
}

/// `q(x) = Σ a_i x_i^2` on a vector of the algebra.
pub fn quadratic_value<S: Scalar>(v: &CliffordElem<S>) -> Option<S> {
    let coords = v.as_vector()?;
    Some(
        coords
            .iter()
            .zip(v.algebra().metric())
            .fold(S::zero(), |acc, (x, a)| acc + a.clone() * x.clone() * x.clone()),
    )
}

/// The spin element `v · σ_w(v) / q(v)`, where `σ_w` is the reflection in `w^⊥`.
/// Requires `q(v) ≠ 0` and `q(w) ≠ 0`.
pub fn spin_from_vectors<S: Scalar>(v: &CliffordElem<S>, w: &CliffordElem<S>) -> Result<CliffordElem<S>> {
    let qv = quadratic_value(v).ok_or_else(|| Error::invalid("v is not a vector"))?;
    let qw = quadratic_value(w).ok_or_else(|| Error::invalid("w is not a vector"))?;
    if qv.is_zero() || qw.is_zero() {
        return Err(Error::invalid("isotropic vector"));
    }
    // 2 B(v, w) = q(v + w) - q(v) - q(w)
    let two_b = quadratic_value(&v.add(w)?).expect("vector") - qv.clone() - qw.clone();
    let reflected = v.sub(&w.scale(&(two_b * qw.inv().expect("nonzero"))))?;
    Ok(v.mul(&reflected)?.scale(&qv.inv().expect("nonzero")))
}
