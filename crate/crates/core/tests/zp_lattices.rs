mod common;

use common::*;
use num_bigint::BigInt;
use num_rational::BigRational;

use wittlab::padic::square_class;
use wittlab::zp_isometry::{
    jordan_decompose, negation_isometric_zp, two_adic_matrix, unimodular_isometric_odd_p,
    verify_certificate, verify_gram_identity, IsometryCertificate, JordanBlock, QuadInt,
    ZpDiagonalLattice,
};
use wittlab::Place;

fn block(units: &[i64]) -> JordanBlock {
    JordanBlock {
        scale: 0,
        unit_entries: units.iter().map(|&u| BigInt::from(u)).collect(),
    }
}

/// Searches for `U` with `Uᵀ diag(a) U ≡ diag(b) (mod p^3)` and `det U` a unit,
/// for rank 1 and 2.
fn isometric_mod_p3(a: &[i64], b: &[i64], p: u64) -> bool {
    let m = (p * p * p) as i64;
    let red = |x: i64| x.rem_euclid(m);
    let unit = |x: i64| x % p as i64 != 0;
    match (a, b) {
        ([a1], [b1]) => (0..m).any(|u| unit(u) && red(a1 * u % m * u - b1) == 0),
        ([a1, a2], [b1, b2]) => {
            let qa = |x: i64, y: i64| red(a1 * x % m * x + a2 * y % m * y);
            for x1 in 0..m {
                for y1 in 0..m {
                    if qa(x1, y1) != red(*b1) {
                        continue;
                    }
                    // u2 = (x2, y2) with a1 x1 x2 + a2 y1 y2 ≡ 0 and q(u2) ≡ b2
                    for x2 in 0..m {
                        for y2 in 0..m {
                            if red(a1 * x1 % m * x2 + a2 * y1 % m * y2) == 0
                                && qa(x2, y2) == red(*b2)
                                && unit(x1 * y2 - x2 * y1)
                            {
                                return true;
                            }
                        }
                    }
                }
            }
            false
        }
        _ => unreachable!(),
    }
}

#[test]
fn unimodular_criterion_matches_search() {
    for p in [3u64, 7, 11] {
        // least non-residue
        let u = (2..p as i64)
            .find(|&x| (1..p as i64).all(|y| (y * y - x).rem_euclid(p as i64) != 0))
            .unwrap();
        let units = [1, u, -1, -u, 1 + p as i64];
        for &a in &units {
            for &b in &units {
                assert_eq!(
                    unimodular_isometric_odd_p(&block(&[a]), &block(&[b]), p).unwrap(),
                    isometric_mod_p3(&[a], &[b], p),
                    "<{a}> vs <{b}> at {p}"
                );
            }
        }
        if p == 11 {
            continue; // the rank-2 search is p^12 in the worst case
        }
        let pairs = [[1, 1], [1, u], [u, u], [-1, u], [1, -1]];
        for a in &pairs {
            for b in &pairs {
                assert_eq!(
                    unimodular_isometric_odd_p(&block(a), &block(b), p).unwrap(),
                    isometric_mod_p3(a, b, p),
                    "{a:?} vs {b:?} at {p}"
                );
            }
        }
    }
}

#[test]
fn jordan_blocks_recompose() {
    let cases: [(&[i64], u64); 5] = [
        (&[1, 1, 1, 89 * 113], 89),
        (&[89 * 89, 1], 89),
        (&[2, 6, 9, 45, 7], 3),
        (&[-5, 25, 250, 3], 5),
        (&[1, -1, 3], 7),
    ];
    for (coeffs, p) in cases {
        let lattice = ZpDiagonalLattice::from_i64(coeffs, p).unwrap();
        let blocks = jordan_decompose(&lattice).unwrap();
        let class = |x: BigInt| square_class(&BigRational::from_integer(x), Place::Prime(p)).unwrap().representative;
        let mut rebuilt: Vec<i128> = blocks
            .iter()
            .flat_map(|b| {
                let scale = BigInt::from(p).pow(b.scale);
                b.unit_entries.iter().map(move |u| (u * &scale, b.scale))
            })
            .map(|(x, _)| class(x))
            .collect();
        let mut original: Vec<i128> = coeffs.iter().map(|&c| class(BigInt::from(c))).collect();
        rebuilt.sort_unstable();
        original.sort_unstable();
        assert_eq!(rebuilt, original, "{coeffs:?} at {p}");
        assert!(blocks.iter().all(|b| b.unit_entries.iter().all(|u| u % p != BigInt::from(0))));
    }
    let scales: Vec<u32> = jordan_decompose(&ZpDiagonalLattice::from_i64(&[89 * 89, 1], 89).unwrap())
        .unwrap()
        .iter()
        .map(|b| b.scale)
        .collect();
    assert_eq!(scales, vec![0, 2]);
}

#[test]
fn certificates_verify_and_lift() {
    let lattice: Vec<BigInt> = [1, 1, 1, 89 * 113].iter().map(|&x| BigInt::from(x)).collect();
    for p in small_primes(300) {
        let (ok, cert) = negation_isometric_zp(&lattice, p, 16).unwrap();
        assert!(ok, "p = {p}");
        assert!(verify_certificate(&cert, &lattice, p, 16).unwrap());
        // Asking for more than the certificate carries is flagged, never passed.
        if cert.method() != "UnimodularDiscriminant" {
            assert!(verify_certificate(&cert, &lattice, p, 40).is_err());
        }
        let lifted = cert.lift(40).unwrap();
        assert!(verify_certificate(&lifted, &lattice, p, 40).unwrap());
        let json = serde_json::to_string(&cert).unwrap();
        let back: IsometryCertificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cert);
        let expected = match p {
            2 => "ExplicitMatrix",
            _ if p % 4 == 1 => "Scaling",
            _ => "UnimodularDiscriminant",
        };
        assert_eq!(cert.method(), expected, "p = {p}");
    }
}

#[test]
fn two_adic_gram_identity_is_exact() {
    let m = two_adic_matrix();
    assert!(verify_gram_identity(&m, &[-1; 4], &[1; 4]));
    let mut flipped = m.clone();
    flipped.entries[0][0] = QuadInt::new(-2, 0);
    assert!(!verify_gram_identity(&flipped, &[-1; 4], &[1; 4]));
    let id = wittlab::zp_isometry::QuadExtMatrix::identity(4);
    assert!(verify_gram_identity(&id, &[1, -1, 1, -1], &[1, -1, 1, -1]));
    // s^2 = -7 in every entry product: the first column alone gives 4 + 1 + 1 - 7.
    let s = QuadInt::new(0, 1);
    assert_eq!(s * s, QuadInt::new(-7, 0));
}
