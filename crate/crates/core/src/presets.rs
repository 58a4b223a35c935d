//! Built-in surfaces. Each preset is expressed as a [`ConfigFile`] and built
//! through the ordinary config loader.

use std::fmt;
use std::str::FromStr;

use crate::config::{ConeConfig, ConfigFile, CoverConfig, LatticeConfig};
use crate::error::{Error, Result};
use crate::exactnum::{Rat, format_rat, parse_rat};
use crate::singularity::ConeSingularity;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PresetId {
    /// Double cover of `E × E` branched along `6(f₁ + f₂)`, polarized by
    /// `3f₁ + 6f₂ + 6δ`.
    AbelianCover,
    /// `P¹ × E` with an ample bundle of the given degree on `E`.
    P1xE { degree: u32 },
    /// Hyperbolic-plane lattice with the first-quadrant cone, polarization
    /// `(1, 1)` and the given canonical class.
    QuadrantSynthetic { canonical: [Rat; 2] },
}

impl PresetId {
    pub fn config(&self) -> ConfigFile {
        match self {
            PresetId::AbelianCover => ConfigFile {
                name: self.to_string(),
                lattice: LatticeConfig {
                    rank: 3,
                    basis: vec!["f1".into(), "f2".into(), "delta".into()],
                    form: vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]],
                },
                cone: ConeConfig::Quadratic {
                    ample: vec![1, 1, 1],
                },
                canonical_class: vec!["0".into(), "0".into(), "0".into()],
                polarization: vec![3, 6, 6],
                cover: Some(CoverConfig {
                    degree: 2,
                    branch: vec![6, 6, 0],
                }),
            },
            PresetId::P1xE { degree } => ConfigFile {
                name: self.to_string(),
                lattice: hyperbolic_plane(["P1_point", "E_point"]),
                cone: quadrant(),
                canonical_class: vec!["-2".into(), "0".into()],
                polarization: vec![2, 2 * i64::from(*degree)],
                cover: None,
            },
            PresetId::QuadrantSynthetic { canonical } => ConfigFile {
                name: self.to_string(),
                lattice: hyperbolic_plane(["a", "b"]),
                cone: quadrant(),
                canonical_class: canonical.iter().map(format_rat).collect(),
                polarization: vec![1, 1],
                cover: None,
            },
        }
    }

    pub fn build(&self) -> Result<ConeSingularity> {
        self.config().singularity()
    }

    pub fn all_builtin() -> Vec<PresetId> {
        vec![
            PresetId::AbelianCover,
            PresetId::P1xE { degree: 1 },
            PresetId::QuadrantSynthetic {
                canonical: [Rat::from_integer((-1).into()), Rat::from_integer((-1).into())],
            },
        ]
    }
}

fn hyperbolic_plane(labels: [&str; 2]) -> LatticeConfig {
    LatticeConfig {
        rank: 2,
        basis: labels.iter().map(|s| s.to_string()).collect(),
        form: vec![vec![0, 1], vec![1, 0]],
    }
}

fn quadrant() -> ConeConfig {
    ConeConfig::Polyhedral {
        inequalities: vec![vec![1, 0], vec![0, 1]],
    }
}

impl fmt::Display for PresetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PresetId::AbelianCover => write!(f, "abelian-cover"),
            PresetId::P1xE { degree } => write!(f, "p1xE:{degree}"),
            PresetId::QuadrantSynthetic { canonical } => {
                write!(f, "quadrant-synthetic:{},{}", canonical[0], canonical[1])
            }
        }
    }
}

impl FromStr for PresetId {
    type Err = Error;

    /// Accepts `abelian-cover`, `p1xE[:d]` and `quadrant-synthetic[:k1,k2]`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidArgument(format!("preset {s:?}: {msg}"));
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        match head {
            "abelian-cover" if arg.is_none() => Ok(PresetId::AbelianCover),
            "p1xE" => {
                let degree = match arg {
                    None => 1,
                    Some(a) => a.parse().map_err(|_| bad("degree must be a positive integer"))?,
                };
                if degree == 0 {
                    return Err(bad("degree must be at least 1"));
                }
                Ok(PresetId::P1xE { degree })
            }
            "quadrant-synthetic" => {
                let canonical = match arg {
                    None => [parse_rat("-1")?, parse_rat("-1")?],
                    Some(a) => {
                        let parts: Vec<&str> = a.split(',').collect();
                        let [k1, k2] = parts.as_slice() else {
                            return Err(bad("expected two canonical coordinates k1,k2"));
                        };
                        [parse_rat(k1)?, parse_rat(k2)?]
                    }
                };
                Ok(PresetId::QuadrantSynthetic { canonical })
            }
            _ => Err(bad("unknown preset (abelian-cover, p1xE[:d], quadrant-synthetic[:k1,k2])")),
        }
    }
}
