//! Exact computations around spinor groups of rational quadratic forms.
//!
//! The crate is organized bottom-up:
//!
//! * [`padic`]: square classes, Legendre symbols, Hensel lifting, progression primes
//! * [`qform`]: diagonal forms over Q, Hilbert symbols, Hasse invariants, Witt indices
//! * [`zp_isometry`]: certified `Z_p`-isometries between `<1,1,1,P>` and its negative
//! * [`clifford`]: Clifford algebras, the spin group and its covering map to `SO(q)`
//! * [`l2betti`]: local l2-Betti supports, the Künneth sum rule and CSP hypotheses
//! * [`repro`]: the end-to-end pipeline producing a JSON report
//! * [`cli`]: the `wittlab` command line
//!
//! Runnable walkthroughs of each layer live in the crate's `examples/` directory.

pub mod arith;
pub mod cli;
pub mod clifford;
pub mod error;
pub mod l2betti;
pub mod padic;
pub mod qform;
pub mod repro;
pub mod zp_isometry;
mod serde_big;

pub use error::{Error, Result};
pub use padic::{Place, SquareClass};
pub use qform::{DiagonalForm, Sign};
