//! Certificates that <1,1,1,P> and <-1,-1,-1,-P> are isometric over Z_p.

use num_bigint::BigInt;
use wittlab::zp_isometry::{negation_isometric_zp, two_adic_matrix, verify_gram_identity};

fn main() -> wittlab::Result<()> {
    let product = BigInt::from(89 * 113);
    let coeffs = vec![BigInt::from(1), BigInt::from(1), BigInt::from(1), product];
    for p in [2, 3, 5, 7, 11, 89, 113] {
        let (ok, cert) = negation_isometric_zp(&coeffs, p, 32)?;
        println!("p = {p:>3}: {} via {}", if ok { "isometric" } else { "not isometric" }, cert.method());
    }
    let m = two_adic_matrix();
    println!("2-adic matrix over Z[s]/(s^2+7), det = {}", m.determinant());
    println!("Gram identity exact: {}", verify_gram_identity(&m, &[1, 1, 1, 1], &[-1, -1, -1, -1]));
    Ok(())
}
