//! Local l2-Betti supports and the Künneth sumset for S = {inf, 89, 113}.

use wittlab::l2betti::{csp_hypotheses, describe_factor, kunneth_support, local_l2_support};
use wittlab::qform::{build_signed_form, Sign};
use wittlab::Place;

fn main() -> wittlab::Result<()> {
    let places = [Place::Real, Place::Prime(89), Place::Prime(113)];
    for sign in [Sign::Plus, Sign::Minus] {
        let form = build_signed_form(sign, &[89, 113])?;
        let csp = csp_hypotheses(&form, &places)?;
        println!("{form}: CSP {} (Witt sum {})", csp.conclusion, csp.witt_sum);
        let mut supports = Vec::new();
        for &place in &places {
            let local = local_l2_support(&describe_factor(&form, place)?, false)?;
            println!("  {place:>3}: {}  ({})", local.support, local.citation);
            supports.push(local.support);
        }
        println!("  product support: {}", kunneth_support(&supports));
    }
    Ok(())
}
