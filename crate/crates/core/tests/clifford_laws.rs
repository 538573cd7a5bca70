mod common;

use common::*;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wittlab::clifford::{
    inverse, is_spin, parse_element, pi, right_mult_matrix, symmetrize, CliffordAlgebra,
    CliffordElem, Matrix, QuadRational, Scalar,
};

#[test]
fn products_match_word_rewriting() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for rank in 1..=3 {
        for _ in 0..60 {
            let alg = CliffordAlgebra::new(random_metric(&mut rng, rank)).unwrap();
            let x = random_element(&mut rng, &alg, 4);
            let y = random_element(&mut rng, &alg, 4);
            let expected = word_product(alg.metric(), &to_words(&x), &to_words(&y));
            assert_eq!(x.mul(&y).unwrap(), from_words(&alg, &expected));
        }
    }
}

#[test]
fn associativity_at_rank_five() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..300 {
        let alg = CliffordAlgebra::new(random_metric(&mut rng, 5)).unwrap();
        let [x, y, z] = [0, 1, 2].map(|_| random_element(&mut rng, &alg, 3));
        assert_eq!(
            x.mul(&y).unwrap().mul(&z).unwrap(),
            x.mul(&y.mul(&z).unwrap()).unwrap()
        );
    }
}

#[test]
fn star_is_an_involutive_anti_homomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..500 {
        let alg = CliffordAlgebra::new(random_metric(&mut rng, 2 + i % 4)).unwrap();
        let x = random_element(&mut rng, &alg, 4);
        let y = random_element(&mut rng, &alg, 4);
        assert_eq!(x.mul(&y).unwrap().star(), y.star().mul(&x.star()).unwrap());
        assert_eq!(x.star().star(), x);
    }
}

#[test]
fn grading_is_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for i in 0..200 {
        let alg = CliffordAlgebra::new(random_metric(&mut rng, 2 + i % 4)).unwrap();
        let (px, py) = (rng.gen_range(0..2), rng.gen_range(0..2));
        let x = random_homogeneous(&mut rng, &alg, px);
        let y = random_homogeneous(&mut rng, &alg, py);
        let xy = x.mul(&y).unwrap();
        if !xy.is_zero() {
            assert_eq!(xy.parity(), Some(px ^ py));
        }
        let parts = x.add(&y).unwrap().graded_parts();
        assert_eq!(parts.even.add(&parts.odd).unwrap(), x.add(&y).unwrap());
    }
}

#[test]
fn defining_relations_on_random_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for rank in 2..=5 {
        for _ in 0..10 {
            let alg = CliffordAlgebra::new(random_metric(&mut rng, rank)).unwrap();
            for i in 0..rank {
                let ei = CliffordElem::generator(&alg, i);
                assert_eq!(ei.mul(&ei).unwrap(), CliffordElem::scalar(&alg, alg.metric()[i].clone()));
                for j in 0..rank {
                    if i != j {
                        let ej = CliffordElem::generator(&alg, j);
                        let anti = ei.mul(&ej).unwrap().add(&ej.mul(&ei).unwrap()).unwrap();
                        assert!(anti.is_zero());
                    }
                }
            }
        }
    }
}

#[test]
fn even_center_is_the_scalars() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for rank in 2..=5 {
        let alg = CliffordAlgebra::new(random_metric(&mut rng, rank)).unwrap();
        let even: Vec<u32> = alg.basis().iter().copied().filter(|b| b.count_ones() % 2 == 0).collect();
        // Rows: coordinates of [b, e_i] for every generator, stacked.
        let dim = alg.dimension();
        let mut system = Matrix::zeros(dim * rank, even.len());
        for (col, &b) in even.iter().enumerate() {
            let x = CliffordElem::blade(&alg, b, q(1));
            for i in 0..rank {
                let e = CliffordElem::generator(&alg, i);
                let comm = x.mul(&e).unwrap().sub(&e.mul(&x).unwrap()).unwrap();
                for (r, c) in comm.coords().into_iter().enumerate() {
                    system.set(i * dim + r, col, c);
                }
            }
        }
        assert_eq!(even.len() - system.rank(), 1, "rank {rank}");
    }
}

#[test]
fn symmetrization_is_the_ordered_product() {
    let alg = CliffordAlgebra::new(vec![q(2), q(-3), q(5), q(7)]).unwrap();
    let orders: [&[usize]; 5] = [&[0, 1], &[2, 0], &[3, 1, 0], &[1, 3, 2, 0], &[2]];
    for idx in orders {
        let mut prod = CliffordElem::one(&alg);
        for &i in idx {
            prod = prod.mul(&CliffordElem::generator(&alg, i)).unwrap();
        }
        assert_eq!(symmetrize(&alg, idx).unwrap(), prod, "{idx:?}");
    }
}

#[test]
fn covering_map_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for rank in 2..=4 {
        let alg = CliffordAlgebra::new(random_metric(&mut rng, rank)).unwrap();
        let d = Matrix::diagonal(alg.metric());
        for _ in 0..8 {
            let g = random_spin(&mut rng, &alg, 2);
            let h = random_spin(&mut rng, &alg, 1);
            let (pg, ph) = (pi(&g).unwrap(), pi(&h).unwrap());
            assert_eq!(pg.transpose().mul(&d).mul(&pg), d);
            assert_eq!(pg.determinant(), q(1));
            assert_eq!(pi(&g.neg()).unwrap(), pg);
            assert_eq!(pi(&g.mul(&h).unwrap()).unwrap(), pg.mul(&ph));
        }
    }
}

#[test]
fn right_multiplication_composes() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for rank in 1..=4 {
        let alg = CliffordAlgebra::new(random_metric(&mut rng, rank)).unwrap();
        for _ in 0..10 {
            let g = random_element(&mut rng, &alg, 3);
            let h = random_element(&mut rng, &alg, 3);
            assert_eq!(
                right_mult_matrix(&g.mul(&h).unwrap()),
                right_mult_matrix(&h).mul(&right_mult_matrix(&g))
            );
            if let Some(gi) = inverse(&g) {
                assert!(right_mult_matrix(&g).mul(&right_mult_matrix(&gi)).is_identity());
                assert_eq!(gi.mul(&g).unwrap(), CliffordElem::one(&alg));
            } else {
                assert!(right_mult_matrix(&g).determinant() == q(0));
            }
        }
    }
}

#[test]
fn functoriality_under_diagonal_rescaling() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut checked = 0;
    while checked < 50 {
        let rank = rng.gen_range(2..=3);
        let metric = random_metric(&mut rng, rank);
        let scales: Vec<BigRational> = (0..rank)
            .map(|_| {
                let s = [1i64, -1, 2, 3, -5][rng.gen_range(0..5)];
                q(s)
            })
            .collect();
        let target_metric: Vec<BigRational> =
            metric.iter().zip(&scales).map(|(a, c)| a / (c * c)).collect();
        let src = CliffordAlgebra::new(metric).unwrap();
        let dst = CliffordAlgebra::new(target_metric).unwrap();
        let g = random_spin(&mut rng, &src, 2);
        let image = g.transport_diagonal(&scales, &dst).unwrap();
        let c = Matrix::diagonal(&scales);
        let expected = c.mul(&pi(&g).unwrap()).mul(&c.inverse().unwrap());
        assert!(is_spin(&image).passes());
        assert_eq!(pi(&image).unwrap(), expected);
        checked += 1;
    }
}

#[test]
fn quadratic_extension_coefficients() {
    type Q7 = QuadRational<-7>;
    let alg = CliffordAlgebra::<Q7>::new(vec![Q7::from_i64(1), Q7::from_i64(1), Q7::from_i64(2)]).unwrap();
    let s = Q7::sqrt_d();
    let e1 = CliffordElem::generator(&alg, 0);
    let e2 = CliffordElem::generator(&alg, 1);
    // (s e1)^2 = -7
    let se1 = e1.scale(&s);
    assert_eq!(se1.mul(&se1).unwrap(), CliffordElem::scalar(&alg, Q7::from_i64(-7)));
    let g = e1.mul(&e2).unwrap();
    assert!(is_spin(&g).passes());
    let records = se1.to_records();
    assert_eq!(records[0].s_num, "1");
    assert_eq!(CliffordElem::from_records(&alg, &records).unwrap(), se1);
}

#[test]
fn elements_round_trip_through_text() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..50 {
        let alg = CliffordAlgebra::new(random_metric(&mut rng, 4)).unwrap();
        let x = random_element(&mut rng, &alg, 5);
        assert_eq!(parse_element(&alg, &x.to_string()).unwrap(), x);
    }
}
