//! Scalar polar wavelets: atoms, evaluation, and the tight-frame transform.

pub mod atom;
pub mod frame;

pub use atom::{ScalarAtom, ScalarContext, Windows};
pub use frame::{
    analyze_band_hat, analyze_hat, lattice_size, lattice_stride, level_range, roundtrip, translate_sum,
    synthesize_band_hat, synthesize_hat, BandCoefficients, RoundTrip, ScalarCoefficients,
};
