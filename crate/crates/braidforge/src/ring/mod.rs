//! Exact Laurent polynomials, rational functions, quantum integers and the
//! root-of-unity specializations used across the crate.

pub mod cmat;
mod laurent;
mod quantum;
mod rational;

pub use cmat::ComplexMatrix;
pub use laurent::{LaurentPoly, Var};
pub use quantum::{
    chebyshev, chebyshev_in, quantum_int, quantum_int_formal, quantum_int_sqrt, series_expand, unitary_params,
    Branch, UnitaryParams,
};
pub use rational::RationalFunction;

/// Numeric evaluation of `p` at `z`.
pub fn eval(p: &LaurentPoly, z: num_complex::Complex64) -> crate::Result<num_complex::Complex64> {
    p.eval(z)
}
