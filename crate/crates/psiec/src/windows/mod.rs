//! Radial and angular localization windows with admissibility checks.

pub mod angular2;
pub mod angular3;
pub mod config;
pub mod radial;

pub use angular2::{admissibility_2d, Admissibility2, Angular2Kind, AngularWindow2};
pub use angular3::{admissibility_3d, Admissibility3, Angular3Kind, AngularWindow3, Orientation3};
pub use config::{WindowConfig, WindowSet2, WindowSet3};
pub use radial::{calderon_check, BandWindow, RadialProfile, RadialWindowKind, ScalingWindow};
