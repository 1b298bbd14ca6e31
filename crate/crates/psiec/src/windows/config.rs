//! JSON window configuration.
//!
//! ```json
//! {
//!   "radial":    { "kind": "steerable" },
//!   "angular2d": { "kind": "cospower", "power": 1 },
//!   "angular3d": { "kind": "isotropic" }
//! }
//! ```
//!
//! `radial.kind` is one of `steerable`, `box`, `smooth`;
//! angular kinds are `isotropic` or `cospower` (with `power`).

use super::angular2::{Angular2Kind, AngularWindow2};
use super::angular3::{Angular3Kind, AngularWindow3};
use super::radial::{RadialProfile, RadialWindowKind};
use crate::Result;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WindowConfig {
    pub radial: RadialWindowKind,
    #[serde(default = "default_angular2")]
    pub angular2d: Angular2Kind,
    #[serde(default = "default_angular3")]
    pub angular3d: Angular3Kind,
}

fn default_angular2() -> Angular2Kind {
    Angular2Kind::Isotropic
}

fn default_angular3() -> Angular3Kind {
    Angular3Kind::Isotropic
}

impl Default for WindowConfig {
    fn default() -> Self {
        WindowConfig {
            radial: RadialWindowKind::Smooth,
            angular2d: Angular2Kind::Isotropic,
            angular3d: Angular3Kind::Isotropic,
        }
    }
}

impl WindowConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn build_2d(&self) -> WindowSet2 {
        WindowSet2 {
            radial: RadialProfile::new(self.radial),
            angular: AngularWindow2::from_kind(self.angular2d),
        }
    }

    pub fn build_3d(&self) -> WindowSet3 {
        WindowSet3 {
            radial: RadialProfile::new(self.radial),
            angular: AngularWindow3::from_kind(self.angular3d),
        }
    }
}

/// Radial plus angular windows for the plane.
#[derive(Debug, Clone)]
pub struct WindowSet2 {
    pub radial: RadialProfile,
    pub angular: AngularWindow2,
}

/// Radial plus angular windows for space.
#[derive(Debug, Clone)]
pub struct WindowSet3 {
    pub radial: RadialProfile,
    pub angular: AngularWindow3,
}
