//! Model constants left symbolic by the latency and profit model.

use serde::{Deserialize, Serialize};

use crate::error::ModelError;

/// Every tunable constant of the latency, cost and revenue model.
///
/// The defaults are chosen so that a four-VNF chain with a 10-20 ms budget is
/// feasible on an idle node with a few cores per VNF. They are this crate's own
/// calibration, not measured values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelParams {
    /// Layer-1 polynomial coefficients `a_0, a_1, a_2` (in MCS index).
    pub a: [f64; 3],
    /// Scale of the Layer-1 term in the aggregate demand.
    pub theta1: f64,
    /// Scale of the rate-dependent term in the aggregate demand.
    pub theta2: f64,
    /// GHz delivered by one CPU core.
    pub core_freq: f64,
    /// Cost per allocated core.
    pub alpha_cpu: f64,
    /// Cost per allocated GB of memory.
    pub alpha_mem: f64,
    /// Cost per allocated Mbit/s on a virtual link.
    pub beta: f64,
    /// Revenue per Mbit/s of requested data rate.
    pub delta: f64,
    /// Revenue scale on `1 / latency_bound`.
    pub omega: f64,
    /// Signal propagation speed, km/ms.
    pub prop_speed: f64,
    /// Admissible shortfall below the latency bound, as a fraction of the bound.
    pub latency_band: f64,
    pub max_cores_per_vnf: u32,
    /// Virtual-link bandwidth as a multiple of the request data rate.
    pub bw_overprovision: f64,
}

impl Default for ModelParams {
    fn default() -> Self {
        ModelParams {
            a: [1.6, 0.16, 0.016],
            theta1: 1.0,
            theta2: 1.0,
            core_freq: 2.0,
            alpha_cpu: 0.2,
            alpha_mem: 0.05,
            beta: 0.002,
            delta: 0.05,
            omega: 100.0,
            prop_speed: 200.0,
            latency_band: 0.05,
            max_cores_per_vnf: 8,
            bw_overprovision: 1.0,
        }
    }
}

impl ModelParams {
    pub fn validate(&self) -> Result<(), ModelError> {
        fn positive(key: &'static str, v: f64) -> Result<(), ModelError> {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(ModelError::InvalidParam { key, reason: format!("must be positive and finite, got {v}") })
            }
        }
        fn non_negative(key: &'static str, v: f64) -> Result<(), ModelError> {
            if v >= 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(ModelError::InvalidParam { key, reason: format!("must be non-negative and finite, got {v}") })
            }
        }
        for (i, &c) in self.a.iter().enumerate() {
            non_negative(["a[0]", "a[1]", "a[2]"][i], c)?;
        }
        if self.a.iter().all(|&c| c == 0.0) {
            return Err(ModelError::InvalidParam {
                key: "a",
                reason: "at least one coefficient must be positive".into(),
            });
        }
        non_negative("theta1", self.theta1)?;
        non_negative("theta2", self.theta2)?;
        positive("core_freq", self.core_freq)?;
        non_negative("alpha_cpu", self.alpha_cpu)?;
        non_negative("alpha_mem", self.alpha_mem)?;
        non_negative("beta", self.beta)?;
        non_negative("delta", self.delta)?;
        non_negative("omega", self.omega)?;
        positive("prop_speed", self.prop_speed)?;
        positive("latency_band", self.latency_band)?;
        if self.latency_band >= 1.0 {
            return Err(ModelError::InvalidParam { key: "latency_band", reason: "must be below 1".into() });
        }
        if self.max_cores_per_vnf == 0 {
            return Err(ModelError::InvalidParam { key: "max_cores_per_vnf", reason: "must be at least 1".into() });
        }
        if !(self.bw_overprovision >= 1.0 && self.bw_overprovision.is_finite()) {
            return Err(ModelError::InvalidParam {
                key: "bw_overprovision",
                reason: format!("must be >= 1, got {}", self.bw_overprovision),
            });
        }
        Ok(())
    }

    /// Absolute band width ε in ms for a given latency bound.
    pub fn band_for(&self, latency_bound: f64) -> f64 {
        self.latency_band * latency_bound
    }

    /// Frequency π delivered by `cores` cores.
    pub fn frequency(&self, cores: u32) -> f64 {
        cores as f64 * self.core_freq
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        ModelParams::default().validate().unwrap();
    }

    #[test]
    fn rejects_underprovisioned_bandwidth() {
        let p = ModelParams { bw_overprovision: 0.9, ..Default::default() };
        let err = p.validate().unwrap_err();
        assert!(matches!(err, ModelError::InvalidParam { key: "bw_overprovision", .. }));
    }

    #[test]
    fn rejects_zero_cores_and_band() {
        let p = ModelParams { max_cores_per_vnf: 0, ..Default::default() };
        assert!(p.validate().is_err());
        let p = ModelParams { latency_band: 0.0, ..Default::default() };
        assert!(p.validate().is_err());
    }
}
