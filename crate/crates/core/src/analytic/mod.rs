//! Functional equations, poles, differential equations and algebraic
//! relations for cluster and avoider generating functions.

mod algebraic;
pub mod hp;
mod fit;
mod iterate;
mod ode;
mod poles;
mod roots;

pub use iterate::{eval_t, iterate_t, v_constant, v_iterates, MapChain, VConstant};
pub use poles::{
    certificate, divergence_profile, pole_chain, preimages, quadratic_preimages, Pole, PoleMode,
    PoleSet,
};
pub use roots::{eval_poly, poly_roots};
pub use ode::{normalize_coeffs, ode_library, ode_series_solve, LinearODE, OdeDocument, OdeSource};
pub use algebraic::{
    algebraic_verify, hypergeometric_series, t_from_g, tree_witness, AlgebraicWitness,
};
pub use fit::{dfinite_fit, HELD_OUT, MIN_EXCESS};
