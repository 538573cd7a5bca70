//! Hilbert symbols, the product formula, and Hasse invariants.

use wittlab::qform::{hasse_invariant, hilbert_symbol_i64};
use wittlab::{DiagonalForm, Place};

fn main() -> wittlab::Result<()> {
    let places = [Place::Real, Place::Prime(2), Place::Prime(3), Place::Prime(5), Place::Prime(7)];
    for (a, b) in [(-1, -1), (2, 5), (3, -7), (10057, 3)] {
        let symbols: Vec<i8> = places.iter().map(|&v| hilbert_symbol_i64(a, b, v)).collect::<Result<_, _>>()?;
        println!("({a}, {b}) at inf,2,3,5,7: {symbols:?}");
    }
    // Only 89 and 113 besides inf and 2, 3 can be ramified here.
    let (a, b) = (10057, 3);
    let mut product = 1;
    for v in [Place::Real, Place::Prime(2), Place::Prime(3), Place::Prime(89), Place::Prime(113)] {
        product *= hilbert_symbol_i64(a, b, v)?;
    }
    println!("product over all places of ({a}, {b}) = {product}");

    let form = DiagonalForm::from_integers(&[1, 10057, 3])?;
    for p in [3, 89, 113] {
        println!("Hasse invariant of {form} at {p}: {}", hasse_invariant(&form, Place::Prime(p))?);
    }
    Ok(())
}
