//! Brute-force oracles shared by the integration and acceptance tests.
//!
//! None of these call into the library's number theory. They only enumerate
//! residues and reduce words, so they serve as independent checks.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use wittlab::clifford::{spin_from_vectors, CliffordAlgebra, CliffordElem};
use wittlab::Place;

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn qr(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn small_primes(bound: u64) -> Vec<u64> {
    (2..=bound)
        .filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0))
        .collect()
}

/// Removes square factors of `p` so the valuation becomes 0 or 1.
pub fn strip_p_squares(mut a: i64, p: u64) -> i64 {
    let pp = (p * p) as i64;
    while a % pp == 0 {
        a /= pp;
    }
    a
}

fn valuation(mut a: i64, p: u64) -> u32 {
    let mut v = 0;
    while a % p as i64 == 0 {
        a /= p as i64;
        v += 1;
    }
    v
}

/// Digits of precision at which a primitive zero of a diagonal form with
/// coefficient valuations at most 1 lifts to a true zero. A primitive solution
/// mod `p^k` has a unit coordinate whose partial derivative `2 a_i x_i` has
/// valuation `d <= v(2) + 1`, and Hensel applies once `k >= 2d + 1`.
pub fn hensel_digits(p: u64) -> u32 {
    if p == 2 {
        6
    } else {
        3
    }
}

/// Whether `Σ a_i x_i^2 = 0` has a nonzero solution in `Q_p`, decided by
/// searching primitive solutions modulo `p^k`.
pub fn isotropic_oracle(coeffs: &[i64], p: u64) -> bool {
    let coeffs: Vec<i64> = coeffs.iter().map(|&a| strip_p_squares(a, p)).collect();
    assert!(coeffs.iter().all(|&a| a != 0 && valuation(a, p) <= 1));
    if coeffs.len() < 2 {
        return false;
    }
    let k = hensel_digits(p);
    let m = p.pow(k) as i64;
    let red = |x: i64| x.rem_euclid(m);
    let (last, rest) = coeffs.split_last().unwrap();
    // value of `last * z^2` -> (reachable, reachable with z a unit)
    let mut last_values = vec![(false, false); m as usize];
    for z in 0..m {
        let v = red(last * z % m * z) as usize;
        last_values[v].0 = true;
        if z % p as i64 != 0 {
            last_values[v].1 = true;
        }
    }
    let n = rest.len();
    let mut x = vec![0i64; n];
    loop {
        let s = rest
            .iter()
            .zip(&x)
            .fold(0i64, |acc, (a, xi)| red(acc + red(a % m * xi % m * xi)));
        let need = red(-s) as usize;
        let has_unit = x.iter().any(|xi| xi % p as i64 != 0);
        if (has_unit && last_values[need].0) || last_values[need].1 {
            return true;
        }
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            x[i] += 1;
            if x[i] < m {
                break;
            }
            x[i] = 0;
            i += 1;
        }
    }
}

/// `(a, b)_v` as solvability of `z^2 = a x^2 + b y^2`.
pub fn hilbert_oracle(a: i64, b: i64, place: Place) -> i8 {
    match place {
        // Real solvability: some nonzero (x, y) with a x^2 + b y^2 >= 0.
        Place::Real => {
            let solvable = [(1i64, 0i64), (0, 1), (1, 1)]
                .iter()
                .any(|(x, y)| a * x * x + b * y * y >= 0);
            if solvable {
                1
            } else {
                -1
            }
        }
        Place::Prime(p) => {
            if isotropic_oracle(&[a, b, -1], p) {
                1
            } else {
                -1
            }
        }
    }
}

/// Witt index over `Q_p` by splitting off hyperbolic planes:
/// an isotropic binary sub-form is a hyperbolic plane, and an isotropic
/// ternary `<a,b,c>` is `H ⊥ <-abc>`. At odd `p` this always finds a split
/// when one exists; at `p = 2` it is used only for rank <= 3.
pub fn witt_index_oracle(coeffs: &[i64], p: u64) -> usize {
    let c: Vec<i64> = coeffs.iter().map(|&a| strip_p_squares(a, p)).collect();
    if p == 2 {
        assert!(c.len() <= 3, "2-adic oracle covers rank <= 3 only");
    }
    let n = c.len();
    for i in 0..n {
        for j in i + 1..n {
            if isotropic_oracle(&[c[i], c[j]], p) {
                let rest: Vec<i64> = (0..n).filter(|&t| t != i && t != j).map(|t| c[t]).collect();
                return 1 + witt_index_oracle(&rest, p);
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for l in j + 1..n {
                if isotropic_oracle(&[c[i], c[j], c[l]], p) {
                    let mut rest: Vec<i64> =
                        (0..n).filter(|&t| t != i && t != j && t != l).map(|t| c[t]).collect();
                    rest.push(strip_p_squares(-c[i] * c[j] * c[l], p));
                    return 1 + witt_index_oracle(&rest, p);
                }
            }
        }
    }
    0
}

/// Clifford products by rewriting words in the generators: adjacent
/// out-of-order generators swap with a sign, and equal neighbours contract
/// to the metric coefficient.
pub fn word_product(metric: &[BigRational], x: &[(Vec<usize>, BigRational)], y: &[(Vec<usize>, BigRational)]) -> BTreeMap<Vec<usize>, BigRational> {
    let mut out: BTreeMap<Vec<usize>, BigRational> = BTreeMap::new();
    for (wx, cx) in x {
        for (wy, cy) in y {
            let mut word: Vec<usize> = wx.iter().chain(wy).copied().collect();
            let mut coeff = cx * cy;
            // bubble sort with contraction
            let mut changed = true;
            while changed {
                changed = false;
                let mut i = 0;
                while i + 1 < word.len() {
                    if word[i] == word[i + 1] {
                        coeff *= &metric[word[i]];
                        word.drain(i..i + 2);
                        changed = true;
                    } else if word[i] > word[i + 1] {
                        word.swap(i, i + 1);
                        coeff = -coeff;
                        changed = true;
                        i += 1;
                    } else {
                        i += 1;
                    }
                }
            }
            let e = out.entry(word).or_insert_with(|| q(0));
            *e += coeff;
        }
    }
    out.retain(|_, c| *c != q(0));
    out
}

/// Element as a list of (sorted generator word, coefficient).
pub fn to_words(x: &CliffordElem<BigRational>) -> Vec<(Vec<usize>, BigRational)> {
    x.terms()
        .map(|(b, c)| ((0..32).filter(|i| b & (1 << i) != 0).collect(), c.clone()))
        .collect()
}

pub fn from_words(
    alg: &Arc<CliffordAlgebra<BigRational>>,
    words: &BTreeMap<Vec<usize>, BigRational>,
) -> CliffordElem<BigRational> {
    let mut acc = CliffordElem::zero(alg);
    for (w, c) in words {
        let mask = w.iter().fold(0u32, |m, i| m | (1 << i));
        acc = acc.add(&CliffordElem::blade(alg, mask, c.clone())).unwrap();
    }
    acc
}

pub fn random_rational(rng: &mut ChaCha8Rng, range: i64) -> BigRational {
    let n = rng.gen_range(-range..=range);
    let d = rng.gen_range(1..=3);
    qr(n, d)
}

pub fn random_element(
    rng: &mut ChaCha8Rng,
    alg: &Arc<CliffordAlgebra<BigRational>>,
    terms: usize,
) -> CliffordElem<BigRational> {
    let mut x = CliffordElem::zero(alg);
    let dim = 1u32 << alg.rank();
    for _ in 0..terms {
        let b = rng.gen_range(0..dim);
        x = x.add(&CliffordElem::blade(alg, b, random_rational(rng, 5))).unwrap();
    }
    x
}

pub fn random_homogeneous(
    rng: &mut ChaCha8Rng,
    alg: &Arc<CliffordAlgebra<BigRational>>,
    parity: u32,
) -> CliffordElem<BigRational> {
    loop {
        let x = random_element(rng, alg, 4);
        let parts = x.graded_parts();
        let h = if parity == 0 { parts.even } else { parts.odd };
        if !h.is_zero() {
            return h;
        }
    }
}

fn random_anisotropic_vector(
    rng: &mut ChaCha8Rng,
    alg: &Arc<CliffordAlgebra<BigRational>>,
) -> CliffordElem<BigRational> {
    loop {
        let coords: Vec<BigRational> = (0..alg.rank()).map(|_| q(rng.gen_range(-3..=3))).collect();
        let norm: BigRational = coords
            .iter()
            .zip(alg.metric())
            .map(|(x, a)| a * x * x)
            .sum();
        if norm != q(0) {
            return CliffordElem::vector(alg, &coords).unwrap();
        }
    }
}

/// Product of `factors` spin elements of the form `v·σ_w(v)/q(v)`.
pub fn random_spin(
    rng: &mut ChaCha8Rng,
    alg: &Arc<CliffordAlgebra<BigRational>>,
    factors: usize,
) -> CliffordElem<BigRational> {
    let mut g = CliffordElem::one(alg);
    for _ in 0..factors {
        let v = random_anisotropic_vector(rng, alg);
        let w = random_anisotropic_vector(rng, alg);
        g = g.mul(&spin_from_vectors(&v, &w).unwrap()).unwrap();
    }
    g
}

pub fn random_metric(rng: &mut ChaCha8Rng, n: usize) -> Vec<BigRational> {
    (0..n)
        .map(|_| loop {
            let a = rng.gen_range(-7i64..=7);
            if a != 0 {
                break q(a);
            }
        })
        .collect()
}
