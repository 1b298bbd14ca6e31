//! Frame transforms of sampled form fields, fiber integration, and the
//! Stokes machinery on characteristic forms.

pub mod analyze;
pub mod characteristic;
pub mod fiber;
pub mod field;

pub use analyze::{
    analyze, analyze_spectral, degree_keys, random_typed_field, roundtrip_form, synthesize,
    synthesize_spectral, FormBand, FormRoundTrip, FrameCoefficients,
};
pub use characteristic::{
    characteristic_coefficients, stokes_residual, CharacteristicShape, ShapeCoefficients,
    StokesReport,
};
pub use fiber::{fiber_integrate, RestrictedAtom};
pub use field::{
    plancherel_pair_freq, plancherel_pair_spatial, wedge_sampled, SampledFormField,
    SpectralFormField,
};
