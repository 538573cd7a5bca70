//! Clifford products, a spin element built from two reflections, and its image in SO(q).

use num_bigint::BigInt;
use num_rational::BigRational;
use wittlab::clifford::{
    is_integral_point, is_spin, parse_element, pi, spin_from_vectors, CliffordAlgebra, CliffordElem, Matrix,
};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn main() -> wittlab::Result<()> {
    let alg = CliffordAlgebra::new(vec![q(1), q(1), q(1), q(10057), q(3)])?;
    let x = parse_element(&alg, "1 + e12")?;
    let y = parse_element(&alg, "e3 - 1/2 e45")?;
    println!("({x}) * ({y}) = {}", x.mul(&y)?);
    println!("star({y}) = {}", y.star());

    let v = CliffordElem::vector(&alg, &[q(1), q(0), q(2), q(0), q(1)])?;
    let w = CliffordElem::vector(&alg, &[q(0), q(1), q(0), q(0), q(-1)])?;
    let g = spin_from_vectors(&v, &w)?;
    let witness = is_spin(&g);
    println!("g = {g}\nspin checks pass: {}", witness.passes());
    let m = pi(&g)?;
    println!("pi(g) =\n{m}");
    let d = Matrix::diagonal(alg.metric());
    println!("pi(g) preserves q: {}", m.transpose().mul(&d).mul(&m) == d);
    println!("integral away from 2, 3: {}", is_integral_point(&g, &[2, 3])?);
    Ok(())
}
