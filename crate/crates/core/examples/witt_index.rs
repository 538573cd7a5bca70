//! Witt indices and decompositions of the two signed rank-5 forms.

use wittlab::qform::{build_signed_form, is_isotropic_over_q, witt_decompose, Sign};
use wittlab::Place;

fn main() -> wittlab::Result<()> {
    let primes = [89, 113];
    for sign in [Sign::Plus, Sign::Minus] {
        let form = build_signed_form(sign, &primes)?;
        println!("{form}: isotropic over Q = {}", is_isotropic_over_q(&form)?);
        for place in [Place::Real, Place::Prime(2), Place::Prime(3), Place::Prime(89), Place::Prime(113)] {
            let d = witt_decompose(&form, place)?;
            let kernel = d.kernel.as_ref().map_or("0".to_string(), ToString::to_string);
            println!("  at {place:>3}: index {}, anisotropic kernel {kernel}", d.witt_index);
        }
    }
    Ok(())
}
