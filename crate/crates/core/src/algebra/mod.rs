//! Exact commutative algebra over the rationals: polynomials, global and
//! local monomial orders, standard bases, ideal operations, and the
//! Jacobian criterion.

mod budget;
mod engine;
mod error;
mod groebner;
mod ideal;
mod jet;
mod linalg;
mod order;
mod poly;
mod ring;
mod smooth;
pub mod univariate;
pub mod zerodim;

pub use budget::Budget;
pub use error::{AlgebraError, Result};
pub use ideal::{Colength, Ideal, StandardBasis};
pub use jet::{jet_colength_oracle, JetColength, ModulePresentation, TruncatedQuotient};
pub use linalg::{kernel, mat_mul, rank, rref, Echelon, SparseRow};
pub use order::MonomialOrder;
pub use poly::{int, rat, Polynomial};
pub use ring::{Monomial, Rational, Ring, RingRef};
pub use smooth::{is_smooth, jacobian_minors, reduce_linear, vanishes_at, LinearReduction, SmoothnessCertificate, Verdict};

/// Ring operations bundled as one call: sum, product, `∂f/∂x_var`, and `f`
/// with `g` substituted for `x_var`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingOps {
    pub sum: Polynomial,
    pub product: Polynomial,
    pub derivative: Polynomial,
    pub substituted: Polynomial,
}

pub fn ring_ops(f: &Polynomial, g: &Polynomial, var: usize) -> Result<RingOps> {
    Ok(RingOps {
        sum: f.try_add(g)?,
        product: f.try_mul(g)?,
        derivative: f.derivative(var)?,
        substituted: f.substitute_var(var, g)?,
    })
}
