//! Exact integer polynomials, high-precision polynomials, Chebyshev
//! polynomials and verified rounding between the two worlds.

mod chebyshev;
mod hp;
mod hp_poly;
mod int_poly;

pub use chebyshev::{cheb_u, cheb_u_explicit, cheb_u_product_value, cheb_v, cheb_v_product_value};
pub use hp::{
    with_escalation, HpComplex, HpReal, HpScalar, Precision, RootTable, PIPELINE_TOLERANCE,
};
pub use hp_poly::{HpPoly, RoundedPoly};
pub use int_poly::IntPoly;
