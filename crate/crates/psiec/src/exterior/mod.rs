//! A small exact exterior algebra over `n <= 3` with the Fourier transform
//! of differential forms and the frequency-domain operator calculus.

pub mod coeff;
pub mod form;
pub mod ops;
pub mod print;

pub use coeff::{Coeff, CoeffKey};
pub use form::{MixedForm, Monomial, SpaceTag, SymbolicForm};
pub use ops::{
    codifferential, derivative_sign, exterior_derivative_freq, form_basis_exponential, ft_basis,
    ft_form, hodge, ift_form, interior_xi, laplace_symbol,
};
pub use print::{format_coeff, format_form, format_monomial};
