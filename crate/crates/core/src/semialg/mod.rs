//! Certified inner approximations of volumes of bounded basic open
//! semi-algebraic domains `{x ∈ [0, r]^ℓ : G_1(x) > 0, ..., G_q(x) > 0}`.

pub mod bernstein;
pub mod domain;
pub mod poly;
pub mod volume;

pub use bernstein::{bernstein_coefficients, BernsteinArray};
pub use domain::{BasicDomain, GridCube};
pub use poly::IntPolynomial;
pub use volume::{
    approximate_volume, contained_cubes, cube_contained, riemann_volume, Approximation, Certificate,
    RiemannSum, Verdict, DEFAULT_MAX_DEPTH,
};
