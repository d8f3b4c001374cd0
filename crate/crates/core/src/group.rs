//! Identifiers for the classical groups handled by the crate.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A classical matrix group together with its size parameters.
///
/// `SuStar` and `SoStar` carry the full (even) matrix dimension, so
/// `SuStar { n: 4 }` is SU*(4). `SpR { n }` and `Sp { n }` act on ℂ²ⁿ.
/// `GlcSplit` is GL(n,ℂ) with the split metric `Re trace(ZW)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum GroupId {
    So { n: usize },
    U { n: usize },
    Su { n: usize },
    Sp { n: usize },
    GlcSplit { n: usize },
    SlR { n: usize },
    SuStar { n: usize },
    SpR { n: usize },
    SoStar { n: usize },
    SoPq { p: usize, q: usize },
    SuPq { p: usize, q: usize },
    SpPq { p: usize, q: usize },
}

impl GroupId {
    pub fn validate(&self) -> Result<()> {
        use GroupId::*;
        match *self {
            So { n } | U { n } | Su { n } | Sp { n } | GlcSplit { n } | SlR { n } | SpR { n } => {
                if n == 0 {
                    return Err(Error::Argument(format!("{self}: n must be positive")));
                }
            }
            SuStar { n } | SoStar { n } => {
                if n == 0 || n % 2 != 0 {
                    return Err(Error::Argument(format!(
                        "{self}: dimension must be positive and even"
                    )));
                }
            }
            SoPq { p, q } | SuPq { p, q } | SpPq { p, q } => {
                if p == 0 || q == 0 {
                    return Err(Error::Argument(format!("{self}: p and q must be positive")));
                }
            }
        }
        Ok(())
    }

    /// Size of the (complex) matrices representing group elements.
    pub fn matrix_dim(&self) -> usize {
        use GroupId::*;
        match *self {
            So { n } | U { n } | Su { n } | GlcSplit { n } | SlR { n } | SuStar { n } | SoStar { n } => n,
            Sp { n } | SpR { n } => 2 * n,
            SoPq { p, q } | SuPq { p, q } => p + q,
            SpPq { p, q } => 2 * (p + q),
        }
    }

    /// Real dimension of the Lie algebra.
    pub fn algebra_dim(&self) -> usize {
        match self.compact_form() {
            Some(GroupId::So { n }) => n * (n - 1) / 2,
            Some(GroupId::U { n }) => n * n,
            Some(GroupId::Su { n }) => n * n - 1,
            Some(GroupId::Sp { n }) => n * (2 * n + 1),
            _ => {
                let GroupId::GlcSplit { n } = *self else {
                    unreachable!("every non-split group has a compact form")
                };
                2 * n * n
            }
        }
    }

    pub fn is_compact(&self) -> bool {
        matches!(
            self,
            GroupId::So { .. } | GroupId::U { .. } | GroupId::Su { .. } | GroupId::Sp { .. }
        )
    }

    /// The compact dual sharing the same complexification (the group itself if compact).
    pub fn compact_form(&self) -> Option<GroupId> {
        use GroupId::*;
        Some(match *self {
            So { .. } | U { .. } | Su { .. } | Sp { .. } => *self,
            GlcSplit { .. } => return None,
            SlR { n } => Su { n },
            SuStar { n } => Su { n },
            SpR { n } => Sp { n },
            SoStar { n } => So { n },
            SoPq { p, q } => So { n: p + q },
            SuPq { p, q } => Su { n: p + q },
            SpPq { p, q } => Sp { n: p + q },
        })
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GroupId::*;
        match *self {
            So { n } => write!(f, "SO({n})"),
            U { n } => write!(f, "U({n})"),
            Su { n } => write!(f, "SU({n})"),
            Sp { n } => write!(f, "Sp({n})"),
            GlcSplit { n } => write!(f, "GL({n},C)"),
            SlR { n } => write!(f, "SL({n},R)"),
            SuStar { n } => write!(f, "SU*({n})"),
            SpR { n } => write!(f, "Sp({n},R)"),
            SoStar { n } => write!(f, "SO*({n})"),
            SoPq { p, q } => write!(f, "SO({p},{q})"),
            SuPq { p, q } => write!(f, "SU({p},{q})"),
            SpPq { p, q } => write!(f, "Sp({p},{q})"),
        }
    }
}
