//! The path loss observation record shared by every module.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::models::Condition;

/// One omnidirectional path loss observation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathLossSample {
    /// Center frequency in GHz, > 0.
    pub frequency_ghz: f64,
    /// 3D TX-RX separation distance in meters, > 0.
    pub distance_m: f64,
    /// Omnidirectional path loss in dB.
    pub path_loss_db: f64,
    pub condition: Condition,
    /// Free-form labels (polarization, campaign, ...).
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub tags: BTreeMap<String, String>,
}

impl PathLossSample {
    pub fn new(
        frequency_ghz: f64,
        distance_m: f64,
        path_loss_db: f64,
        condition: Condition,
    ) -> PathLossSample {
        PathLossSample {
            frequency_ghz,
            distance_m,
            path_loss_db,
            condition,
            tags: BTreeMap::new(),
        }
    }

    /// Checks the field invariants, returning the first violation as a
    /// human-readable reason.
    pub fn validate(&self) -> Result<(), String> {
        if !(self.frequency_ghz.is_finite() && self.frequency_ghz > 0.0) {
            return Err("frequency_ghz must be > 0".to_string());
        }
        if !(self.distance_m.is_finite() && self.distance_m > 0.0) {
            return Err("distance_m must be > 0".to_string());
        }
        if !self.path_loss_db.is_finite() {
            return Err("path_loss_db must be finite".to_string());
        }
        Ok(())
    }
}
