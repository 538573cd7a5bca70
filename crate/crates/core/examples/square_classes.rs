//! Square classes at a few places, plus a Hensel-lifted square root.

use num_bigint::BigInt;
use num_rational::BigRational;
use wittlab::padic::{hensel_sqrt, square_class_i64, Place, SquareClass};

fn main() -> wittlab::Result<()> {
    for place in [Place::Real, Place::Prime(2), Place::Prime(3), Place::Prime(89)] {
        let reps: Vec<String> = SquareClass::all(place).iter().map(ToString::to_string).collect();
        println!("Q_{place}^x / squares: {}", reps.join(" "));
    }
    for x in [-7, 12, 10057, 18] {
        println!("{x:>6} lies in {} and {}", square_class_i64(x, Place::Prime(2))?, square_class_i64(x, Place::Prime(3))?);
    }
    let minus_seven = BigRational::from_integer(BigInt::from(-7));
    let root = hensel_sqrt(&minus_seven, 2, 20)?;
    println!("sqrt(-7) mod 2^20 = {}", root.residue(20)?);
    Ok(())
}
