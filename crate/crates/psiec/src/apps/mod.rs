//! End-to-end demo problems: the resonant cavity eigenproblem and the
//! circulation study.

pub mod cavity;
pub mod circulation;

pub use cavity::{cavity_solve, reference_spectrum, CavityProblem, CavitySolution};
pub use circulation::{circulation_study, CirculationReport, VortexProfile};
