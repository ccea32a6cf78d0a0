//! The machine-readable result of one command. Every key is always present;
//! sections a command does not produce are `null`. Class vectors are
//! codimension first: `coeffs[i]` multiplies `[P^{n-i}]`.

use segreta::chow::{ChowClass, EffectivityReport, SegreZeta, TwistedSegreClass};
use segreta::engine::ResidualReport;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultEnvelope {
    pub schema_version: u32,
    pub command: String,
    /// Arguments after the program name.
    pub argv: Vec<String>,
    pub seed: u64,
    /// `flag`, `env` or `input-hash`.
    pub seed_source: String,
    pub field: String,
    /// True over `F_p`, where results hold with high probability only.
    pub probabilistic: bool,
    /// Wall-clock time of the computation; the only nondeterministic key.
    pub timing_ms: f64,
    pub ambient_dim: usize,
    pub degree: u32,
    pub counts: Option<Vec<i64>>,
    pub tensored_class: Option<ClassOut>,
    pub ordinary_class: Option<ClassOut>,
    pub zeta: Option<ZetaOut>,
    pub expansion: Option<ClassOut>,
    pub join_class: Option<ClassOut>,
    pub csm: Option<CsmOut>,
    pub checks: Option<ChecksOut>,
    pub residual: Option<ResidualReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassOut {
    pub ambient_dim: usize,
    /// `m` for a class tensored by `O(mH)`; 0 for ordinary classes.
    pub twist: i64,
    pub coeffs: Vec<i64>,
}

impl ClassOut {
    pub fn ordinary(c: &ChowClass) -> Self {
        Self {
            ambient_dim: c.ambient_dim(),
            twist: 0,
            coeffs: c.coeffs().to_vec(),
        }
    }

    pub fn twisted(s: &TwistedSegreClass) -> Self {
        Self {
            ambient_dim: s.ambient_dim(),
            twist: s.twist,
            coeffs: s.cls.coeffs().to_vec(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZetaOut {
    pub d: u32,
    pub n: usize,
    pub numerator: Vec<i64>,
}

impl From<&SegreZeta> for ZetaOut {
    fn from(z: &SegreZeta) -> Self {
        Self {
            d: z.d,
            n: z.n,
            numerator: z.numerator.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CsmOut {
    pub ambient_dim: usize,
    pub coeffs: Vec<i64>,
    pub euler_characteristic: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChecksOut {
    pub effective: bool,
    /// Indices `i` with a negative coefficient of `[P^{n-i}]`.
    pub offending: Vec<usize>,
    pub log_concave: bool,
}

impl ChecksOut {
    pub fn new(eff: EffectivityReport, log_concave: bool) -> Self {
        Self {
            effective: eff.effective,
            offending: eff.offending,
            log_concave,
        }
    }
}
