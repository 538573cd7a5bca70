//! Exact Clifford algebras of diagonal forms and their spin groups.
//!
//! Elements are stored as maps from basis blades (bitmasks over the
//! generators) to exact scalars. Scalars are rationals, or rationals with one
//! adjoined square root via [`QuadRational`].
//!
//! Matrices acting on the algebra use the basis ordered by subset size and
//! then lexicographically. Right multiplication `x ↦ x·g` is written as a
//! column action, so `right_mult_matrix(g·h) = right_mult_matrix(h) · right_mult_matrix(g)`.

mod algebra;
mod linalg;
mod scalar;
mod spin;

pub use algebra::{
    parse_element, symmetrize, Blade, CliffordAlgebra, CliffordElem, GradedParts, TermRecord,
    MAX_RANK,
};
pub use linalg::Matrix;
pub use scalar::{QuadRational, Scalar};
pub use spin::{
    inverse, is_integral_point, is_spin, pi, quadratic_value, right_mult_matrix,
    spin_from_vectors, SpinWitness,
};
