//! JSON run configurations for the command-line harness.

use serde::{Deserialize, Serialize};

use crate::duality::MAX_RADIUS;
use crate::error::{Error, Result};
use crate::expr::DEFAULT_DOMAIN_FLOOR;
use crate::families::{
    maximal_isotropic_subspace, so4_deformation, so_family_special, so_family_v, sp_family,
    su_family, u_family, Eigenfamily,
};
use crate::group::GroupId;
use crate::matrix::C64;
use crate::morphisms::{power_family, MorphismSpec};
use crate::sampling::{DEFAULT_RADIUS, DEFAULT_SEED};

pub const DEFAULT_SAMPLES: usize = 100;
pub const DEFAULT_TOL: f64 = 1e-8;

fn default_samples() -> usize {
    DEFAULT_SAMPLES
}
fn default_seed() -> u64 {
    DEFAULT_SEED
}
fn default_radius() -> f64 {
    DEFAULT_RADIUS
}
fn default_tol() -> f64 {
    DEFAULT_TOL
}
fn default_floor() -> f64 {
    DEFAULT_DOMAIN_FLOOR
}

/// How to build an eigenfamily.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilySpec {
    /// `trace(pᵗa·xᵗ)` for `a` in an isotropic subspace of ℂⁿ (default: the
    /// maximal one spanned by `e_{2k−1} + i·e_{2k}`).
    IsotropicSubspace {
        n: usize,
        p: Vec<C64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        v: Option<Vec<Vec<C64>>>,
    },
    /// `trace(pᵗa·xᵗ)` for isotropic `p` and all `a`.
    IsotropicVector { n: usize, p: Vec<C64> },
    /// The isotropic-vector family on SO(4) with `p = p(z, w)`.
    So4Deformation { z: C64, w: C64 },
    Unitary { n: usize, p: Vec<C64> },
    SpecialUnitary { n: usize, p: Vec<C64> },
    Quaternionic { n: usize, p: Vec<C64> },
    Power { base: Box<FamilySpec>, k: u32 },
}

impl FamilySpec {
    pub fn build(&self) -> Result<Eigenfamily> {
        match self {
            FamilySpec::IsotropicSubspace { n, p, v } => {
                let v = v.clone().unwrap_or_else(|| maximal_isotropic_subspace(*n));
                so_family_v(*n, p, &v)
            }
            FamilySpec::IsotropicVector { n, p } => so_family_special(*n, p),
            FamilySpec::So4Deformation { z, w } => so_family_special(4, &so4_deformation(*z, *w)),
            FamilySpec::Unitary { n, p } => u_family(*n, p),
            FamilySpec::SpecialUnitary { n, p } => su_family(*n, p),
            FamilySpec::Quaternionic { n, p } => sp_family(*n, p),
            FamilySpec::Power { base, k } => Ok(power_family(&base.build()?, *k)?.as_eigenfamily()),
        }
    }
}

/// Parameters shared by every subcommand. Absent blocks are simply unused.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_radius")]
    pub radius: f64,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "default_floor")]
    pub floor: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilySpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub morphism: Option<MorphismSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<GroupId>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
            radius: DEFAULT_RADIUS,
            tol: DEFAULT_TOL,
            floor: DEFAULT_DOMAIN_FLOOR,
            group: None,
            family: None,
            morphism: None,
            pair: None,
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: RunConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples < 1 {
            return Err(Error::Config("field `samples` must be at least 1".into()));
        }
        if !(self.radius > 0.0 && self.radius <= MAX_RADIUS) {
            return Err(Error::Config(format!(
                "field `radius` must lie in (0, {MAX_RADIUS}], got {}",
                self.radius
            )));
        }
        if !(self.tol > 0.0) {
            return Err(Error::Config(format!("field `tol` must be positive, got {}", self.tol)));
        }
        if !(self.floor > 0.0) {
            return Err(Error::Config(format!("field `floor` must be positive, got {}", self.floor)));
        }
        for (name, g) in [("group", &self.group), ("pair", &self.pair)] {
            if let Some(g) = g {
                g.validate()
                    .map_err(|e| Error::Config(format!("field `{name}`: {e}")))?;
            }
        }
        Ok(())
    }

    pub fn require_family(&self) -> Result<Eigenfamily> {
        let spec = self
            .family
            .as_ref()
            .ok_or_else(|| Error::Config("field `family` is required".into()))?;
        spec.build()
            .map_err(|e| Error::Config(format!("field `family`: {e}")))
    }

    pub fn require_pair(&self) -> Result<GroupId> {
        self.pair
            .ok_or_else(|| Error::Config("field `pair` is required".into()))
    }

    pub fn require_morphism(&self) -> Result<&MorphismSpec> {
        self.morphism
            .as_ref()
            .ok_or_else(|| Error::Config("field `morphism` is required".into()))
    }
}
