use std::path::Path;

use serde::{Deserialize, Serialize};

use hecke_core::lattice::DominantCoweight;
use hecke_core::orbits::CoordinateChange;
use hecke_core::ringcore::ChainRing;
use hecke_core::{Error, Result};

/// Job settings shared by the config file and the command line; flags win.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct JobConfig {
    pub ring: Option<String>,
    pub n: Option<usize>,
    pub lambda: Vec<String>,
    pub sigma: Vec<String>,
    pub mode: Option<String>,
    pub jmax: Option<u32>,
    pub jobs: Option<usize>,
    pub out: Option<String>,
    pub max_points: Option<u64>,
    pub max_level: Option<u32>,
}

pub const DEFAULT_RING: &str = "Fp[x]/x^N:p=5,N=1";

impl JobConfig {
    pub fn from_toml(s: &str) -> Result<Self> {
        let c: JobConfig = toml::from_str(s).map_err(|e| Error::Parse(format!("config: {e}")))?;
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let s = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("config {}: {e}", path.display())))?;
        JobConfig::from_toml(&s)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// Values set in `flags` replace those in `self`.
    pub fn merge(self, flags: JobConfig) -> JobConfig {
        JobConfig {
            ring: flags.ring.or(self.ring),
            n: flags.n.or(self.n),
            lambda: if flags.lambda.is_empty() { self.lambda } else { flags.lambda },
            sigma: if flags.sigma.is_empty() { self.sigma } else { flags.sigma },
            mode: flags.mode.or(self.mode),
            jmax: flags.jmax.or(self.jmax),
            jobs: flags.jobs.or(self.jobs),
            out: flags.out.or(self.out),
            max_points: flags.max_points.or(self.max_points),
            max_level: flags.max_level.or(self.max_level),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let zero = |name: &str| Err(Error::Parse(format!("{name} must be positive")));
        if self.n == Some(0) {
            return zero("n");
        }
        if self.jobs == Some(0) {
            return zero("jobs");
        }
        if self.max_points == Some(0) {
            return zero("max_points");
        }
        if self.max_level == Some(0) {
            return zero("max_level");
        }
        Ok(())
    }

    pub fn ring(&self) -> Result<ChainRing> {
        let r: ChainRing = self.ring.as_deref().unwrap_or(DEFAULT_RING).parse()?;
        if let Some(m) = self.max_level {
            if r.len() > m {
                return Err(Error::TooLarge { what: "ring length", size: r.len() as u128, limit: m as u128 });
            }
        }
        Ok(r)
    }

    pub fn n(&self) -> usize {
        self.n.unwrap_or(2)
    }

    pub fn lambdas(&self) -> Result<Vec<DominantCoweight>> {
        self.lambda.iter().map(|s| s.parse()).collect()
    }

    pub fn sigmas(&self, ring: &ChainRing) -> Result<Vec<CoordinateChange>> {
        self.sigma
            .iter()
            .map(|s| {
                let coeffs = s.split(',').map(|c| ring.parse_elem(c)).collect::<Result<Vec<_>>>()?;
                CoordinateChange::new(*ring, coeffs)
            })
            .collect()
    }

    pub fn jmax(&self) -> u32 {
        self.jmax.unwrap_or(4)
    }
}
