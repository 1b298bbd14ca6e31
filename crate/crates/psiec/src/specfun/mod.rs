//! Special functions and harmonic-analysis primitives.

pub mod bessel;
pub mod gaunt;
pub mod hankel;
pub mod legendre;

pub use bessel::{bessel_j, bessel_j_all, spherical_bessel_all, spherical_bessel_j};
pub use gaunt::{gaunt, gaunt_allowed, GauntTable};
pub use hankel::{hankel_profile, HankelKind, HankelTable, RadialKernel};
pub use legendre::{
    gauss_legendre, normalized_assoc_legendre, normalized_assoc_legendre_all, sph_harm,
    sph_harm_all, wigner_zonal, SphereQuadrature, SphIndex,
};
