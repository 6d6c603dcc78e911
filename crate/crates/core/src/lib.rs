//! Numerical toolkit for Fekete polynomials and Littlewood-class
//! polynomials on the unit circle.
//!
//! The crate builds the polynomials exactly over the integers
//! ([`fekete`], [`rudin_shapiro`], [`random_littlewood`]), evaluates them
//! on root-of-unity grids of any size through a chirp transform, and
//! verifies the quantitative statements that govern them at desk scale:
//!
//! - Gauss evaluations `|f_p(zeta_p^j)| = sqrt(p)` and the grid product
//!   identities behind them ([`poly`], [`certify`]);
//! - Mahler measures `M_q` by quadrature and by root products, and the
//!   grid-product bounds that relate them ([`mahler`]);
//! - zeros and sign structure of the real renormalization `H_p` on the
//!   circle, arc-by-arc nonvanishing, and the large sieve inequality
//!   ([`circlezeros`]);
//! - the limiting midpoint-value distribution, its constant `c(delta)`,
//!   and the empirical fractions it predicts ([`asymptotics`]);
//! - a per-prime certificate chaining all of the above into a verified
//!   Mahler-measure lower bound ([`certify`]).
//!
//! Everything is deterministic: randomized constructions take explicit
//! seeds and parallel reductions run in fixed order, so identical inputs
//! give bit-identical outputs regardless of thread count.

// Guards written as `!(x > 0.0)` are deliberate: they reject NaN along with
// non-positive values, while the "readable" rewrite `x <= 0.0` silently
// admits NaN. Keep the negated comparisons.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod certify;
pub mod circlezeros;
pub mod dft;
pub mod error;
pub mod mahler;
pub mod numtheory;
pub mod poly;
pub mod rng;
pub mod roots;
mod sum;

pub use asymptotics::{
    c_delta, c_product, c_product_with_truncation, empirical_midpoint_fraction, CdeltaResult,
    MidpointFraction,
};
pub use certify::{
    build_certificate, certificate_sweep, Certificate, SweepSummary, ROOTS_ROUTE_MAX_P,
};
pub use circlezeros::{
    arc_classify, gp_sieve_coefficients, h_eval, h_grid, large_sieve_check, locate_zeros,
    max_modulus, sign_agreements, ArcClassification, ArcReport, HFunction, HGrid,
    LargeSieveCheck,
};
pub use dft::dft_arbitrary;
pub use error::{Error, Result};
pub use mahler::{
    default_m0_nodes, grid_product_check, refined_grid_product_check, littlewood_ensemble,
    littlewood_ensemble_values, m0_from_roots, m0_uniform, mq_uniform, MahlerEstimate,
    MahlerMethod, ProductBoundCheck,
};
pub use numtheory::{is_prime, legendre, legendre_table, primes_in_range, Prime};
pub use poly::{fekete, random_littlewood, rudin_shapiro, ComplexSampleGrid, IntPolynomial};
pub use rng::{SplitMix64, GENERATOR_ID};
pub use roots::{find_roots, RootSet};
