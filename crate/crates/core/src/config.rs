//! JSON surface configuration files.
//!
//! Rationals are written as strings (`"3/4"`); integer data is plain JSON.
//! Every invariant of [`SurfaceDatum`] is re-checked on load and failures are
//! reported with the path of the offending field.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::parse_rat;
use crate::singularity::ConeSingularity;
use crate::surface::{ConeModel, DivClass, NsLattice, SurfaceDatum};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub name: String,
    pub lattice: LatticeConfig,
    pub cone: ConeConfig,
    pub canonical_class: Vec<String>,
    pub polarization: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover: Option<CoverConfig>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeConfig {
    pub rank: usize,
    pub basis: Vec<String>,
    pub form: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum ConeConfig {
    Quadratic { ample: Vec<i64> },
    Polyhedral { inequalities: Vec<Vec<i64>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverConfig {
    pub degree: u32,
    pub branch: Vec<i64>,
}

impl ConfigFile {
    pub fn from_json(text: &str) -> Result<ConfigFile> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            Error::Config {
                path: if path == "." { "<root>".into() } else { path },
                message: e.into_inner().to_string(),
            }
        })
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn surface(&self) -> Result<SurfaceDatum> {
        let lat = &self.lattice;
        if lat.rank != lat.form.len() {
            return Err(Error::Config {
                path: "lattice.rank".into(),
                message: format!("rank {} but form has {} rows", lat.rank, lat.form.len()),
            });
        }
        if lat.basis.len() != lat.rank {
            return Err(Error::DimensionMismatch {
                expected: lat.rank,
                found: lat.basis.len(),
            }
            .at("lattice.basis"));
        }
        let lattice =
            NsLattice::new(lat.basis.clone(), lat.form.clone()).map_err(|e| e.at("lattice.form"))?;

        let cone = match &self.cone {
            ConeConfig::Quadratic { ample } => ConeModel::Quadratic {
                ample_selector: DivClass::from_ints(ample),
            },
            ConeConfig::Polyhedral { inequalities } => ConeModel::Polyhedral {
                inequalities: inequalities.clone(),
            },
        };

        let canonical = self
            .canonical_class
            .iter()
            .enumerate()
            .map(|(i, s)| parse_rat(s).map_err(|e| e.at(format!("canonical_class[{i}]"))))
            .collect::<Result<Vec<_>>>()?;
        if canonical.len() != lat.rank {
            return Err(Error::DimensionMismatch {
                expected: lat.rank,
                found: canonical.len(),
            }
            .at("canonical_class"));
        }
        if self.polarization.len() != lat.rank {
            return Err(Error::DimensionMismatch {
                expected: lat.rank,
                found: self.polarization.len(),
            }
            .at("polarization"));
        }

        let base = SurfaceDatum::new(
            self.name.clone(),
            lattice,
            cone,
            DivClass::new(canonical),
            DivClass::from_ints(&self.polarization),
        )
        .map_err(|e| match e {
            Error::NotInterior(_) => e.at("polarization"),
            other => other.at("cone"),
        })?;

        match &self.cover {
            None => Ok(base),
            Some(cover) => {
                if cover.degree != 2 {
                    return Err(Error::UnsupportedCoverDegree(cover.degree).at("cover.degree"));
                }
                base.double_cover(&DivClass::from_ints(&cover.branch))
                    .map_err(|e| e.at("cover.branch"))
            }
        }
    }

    pub fn singularity(&self) -> Result<ConeSingularity> {
        Ok(ConeSingularity::new(self.surface()?, self.name.clone()))
    }
}
