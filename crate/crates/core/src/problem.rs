//! JSON problem and modes files.
//!
//! ```json
//! {"d": 2, "alpha": 0, "angular": {"type": "ab", "flux": 0.5},
//!  "exclude": [1], "weight_role": "hardy-rellich"}
//! ```

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::constants::{
    hardy_constant, hardy_rellich_constant, one_d_hardy_rellich_constant, rellich_product_constant, Branch,
    ConstantResult, ProblemSpec,
};
use crate::error::{Error, Result};
use crate::quotient::ModeFunction;
use crate::radial::{ProfileSpec, RadialProfile, ScaledProfile};
use crate::spectra::{resample_periodic, AngularOperator, AngularSpectrum};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum AngularSpec {
    Free,
    ElectricConst {
        a: f64,
    },
    /// Potential samples on a uniform grid of the circle, optionally
    /// resampled to `grid` points.
    ElectricProfile {
        samples: Vec<f64>,
        #[serde(default)]
        grid: Option<usize>,
    },
    Ab {
        flux: f64,
    },
    Monopole {
        g: f64,
    },
    Explicit {
        eigenvalues: Vec<f64>,
    },
}

impl AngularSpec {
    pub fn operator(&self, d: u32) -> Result<AngularOperator> {
        Ok(match self {
            AngularSpec::Free => AngularOperator::Free { dim: d },
            AngularSpec::ElectricConst { a } => AngularOperator::ElectricConst { dim: d, a: *a },
            AngularSpec::ElectricProfile { samples, grid } => AngularOperator::ElectricProfile {
                samples: match grid {
                    Some(n) => resample_periodic(samples, *n),
                    None => samples.clone(),
                },
            },
            AngularSpec::Ab { flux } => AngularOperator::AharonovBohm { dim: d, flux: *flux },
            AngularSpec::Monopole { g } => AngularOperator::Monopole { g: *g },
            AngularSpec::Explicit { eigenvalues } => {
                AngularOperator::Explicit(AngularSpectrum::explicit(eigenvalues.clone())?)
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightRole {
    #[default]
    HardyRellich,
    /// `alpha` is read as the Hardy weight `β`.
    Hardy,
    RellichProduct,
}

fn default_angular() -> AngularSpec {
    AngularSpec::Free
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub d: u32,
    #[serde(default)]
    pub alpha: f64,
    #[serde(default = "default_angular")]
    pub angular: AngularSpec,
    #[serde(default)]
    pub exclude: Vec<usize>,
    #[serde(default)]
    pub weight_role: WeightRole,
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::arg(format!("malformed problem file: {e}")))
    }

    pub fn spec(&self) -> Result<ProblemSpec> {
        if self.d < 2 {
            return Err(Error::arg("an angular problem needs d >= 2"));
        }
        Ok(ProblemSpec::new(self.d, self.alpha, self.angular.operator(self.d)?)
            .with_exclusion(self.exclude.iter().copied().collect()))
    }

    /// The constant selected by `weight_role`. In `d = 1` only the
    /// Hardy-Rellich constant `(α+1)²/4` is defined.
    pub fn constant(&self) -> Result<ConstantResult> {
        if self.d == 0 {
            return Err(Error::arg("dimension must be positive"));
        }
        if self.d == 1 {
            if self.weight_role != WeightRole::HardyRellich {
                return Err(Error::arg("only the Hardy-Rellich constant is available in d = 1"));
            }
            if self.angular != AngularSpec::Free || !self.exclude.is_empty() {
                return Err(Error::arg("d = 1 has no angular operator"));
            }
            return Ok(ConstantResult {
                value: one_d_hardy_rellich_constant(self.alpha),
                argmin_index: None,
                argmin_eigenvalue: None,
                branch: Branch::Generic,
                modes_examined: 0,
            });
        }
        let p = self.spec()?;
        match self.weight_role {
            WeightRole::HardyRellich => hardy_rellich_constant(&p),
            WeightRole::Hardy => hardy_constant(&p),
            WeightRole::RellichProduct => {
                let mut r = hardy_rellich_constant(&p)?;
                r.value = rellich_product_constant(&p)?;
                Ok(r)
            }
        }
    }
}

/// One entry of a modes file: the enumeration index of the eigenvalue in the
/// problem's spectrum and the radial profile carried by it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeSpec {
    pub index: usize,
    pub profile: ProfileSpec,
    #[serde(default)]
    pub scale: Option<f64>,
}

pub fn parse_modes(text: &str) -> Result<Vec<ModeSpec>> {
    let modes: Vec<ModeSpec> =
        serde_json::from_str(text).map_err(|e| Error::arg(format!("malformed modes file: {e}")))?;
    if modes.is_empty() {
        return Err(Error::arg("modes file lists no modes"));
    }
    Ok(modes)
}

/// Resolves mode specs against the problem's spectrum.
pub fn build_modes(p: &ProblemSpec, specs: &[ModeSpec]) -> Result<Vec<ModeFunction>> {
    let needed = specs.iter().map(|m| m.index + 1).max().unwrap_or(1);
    let spectrum = p.operator.spectrum(needed)?;
    specs
        .iter()
        .map(|m| {
            if p.exclusion.contains(m.index) {
                return Err(Error::arg(format!("mode index {} is excluded by the problem", m.index)));
            }
            let mut profile: Arc<dyn RadialProfile> = m.profile.build(p.d, p.alpha)?;
            if let Some(k) = m.scale {
                if k == 0.0 || !k.is_finite() {
                    return Err(Error::arg("profile scale must be finite and nonzero"));
                }
                profile = Arc::new(ScaledProfile::new(profile, k));
            }
            ModeFunction::new(spectrum.eigenvalues()[m.index], profile)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_problem_files() {
        let p = ProblemFile::from_json(r#"{"d": 2, "alpha": 0, "angular": {"type": "ab", "flux": 0.5}}"#).unwrap();
        assert!((p.constant().unwrap().value - 0.45).abs() < 1e-12);
        let p = ProblemFile::from_json(r#"{"d": 2, "exclude": [1]}"#).unwrap();
        assert_eq!(p.constant().unwrap().value, 1.0);
        let p = ProblemFile::from_json(r#"{"d": 1, "alpha": 2}"#).unwrap();
        assert_eq!(p.constant().unwrap().value, 2.25);
        let p = ProblemFile::from_json(r#"{"d": 5, "weight_role": "rellich-product"}"#).unwrap();
        assert_eq!(p.constant().unwrap().value, 25.0 / 16.0);
        let p = ProblemFile::from_json(
            r#"{"d": 2, "angular": {"type": "electric-profile", "samples": [1,1,1,1,1,1,1,1], "grid": 16}}"#,
        )
        .unwrap();
        assert!(p.constant().is_ok());
        assert!(ProblemFile::from_json(r#"{"d": 2, "angular": {"type": "bogus"}}"#).is_err());
        assert!(ProblemFile::from_json(r#"{"alpha": 0}"#).is_err());
    }

    #[test]
    fn parses_modes() {
        let specs = parse_modes(r#"[{"index": 1, "profile": {"kind": "bump", "knots": [1,2,3,4,5]}, "scale": 2}]"#).unwrap();
        let p = ProblemFile::from_json(r#"{"d": 3}"#).unwrap().spec().unwrap();
        let modes = build_modes(&p, &specs).unwrap();
        assert_eq!(modes[0].eigenvalue, 2.0);
        assert!((modes[0].profile.value(3.0) - 4.0 / 3.0).abs() < 1e-14);
        assert!(parse_modes("[]").is_err());
        assert!(parse_modes("{").is_err());
    }
}
