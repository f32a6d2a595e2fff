use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::detsfcd::{self, Rejection};
use crate::model::{Deployment, SfcRequest};
use crate::params::ModelParams;
use crate::sphle;
use crate::state::NetworkState;

/// Admission strategy driving a simulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum StrategyKind {
    #[serde(rename = "det-sfcd")]
    DetSfcd,
    #[serde(rename = "sph-le")]
    SphLe,
}

impl StrategyKind {
    pub const ALL: [StrategyKind; 2] = [StrategyKind::DetSfcd, StrategyKind::SphLe];

    pub fn name(self) -> &'static str {
        match self {
            StrategyKind::DetSfcd => "det-sfcd",
            StrategyKind::SphLe => "sph-le",
        }
    }

    pub fn deploy(self, state: &mut NetworkState, req: &SfcRequest, p: &ModelParams) -> Result<Deployment, Rejection> {
        match self {
            StrategyKind::DetSfcd => detsfcd::deploy(state, req, p),
            StrategyKind::SphLe => sphle::deploy_sphle(state, req, p),
        }
    }
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StrategyKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "det-sfcd" => Ok(StrategyKind::DetSfcd),
            "sph-le" => Ok(StrategyKind::SphLe),
            other => Err(format!("unknown strategy `{other}` (expected det-sfcd or sph-le)")),
        }
    }
}
