//! Experiment configuration: which object to sample, by which method, from
//! which generator — resolved and validated before any draw happens.

use std::str::FromStr;

use crate::rng::RngAlgorithm;
use crate::simplex::RpvMethod;
use crate::states::{RdmMethod, RsvMethod};
use crate::unitary::RuMethod;
use crate::{Error, Result};

/// The families of objects the harness can sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleObject {
    /// Raw uniform draws on [0, 1).
    Rn,
    /// Random probability vectors.
    Rpv,
    /// Random unitary matrices.
    Ru,
    /// Random state vectors.
    Rsv,
    /// Random density matrices.
    Rdm,
}

impl SampleObject {
    pub const OPTIONS: &'static str = "rn, rpv, ru, rsv, rdm";
}

impl FromStr for SampleObject {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rn" => Ok(SampleObject::Rn),
            "rpv" => Ok(SampleObject::Rpv),
            "ru" => Ok(SampleObject::Ru),
            "rsv" => Ok(SampleObject::Rsv),
            "rdm" => Ok(SampleObject::Rdm),
            other => Err(Error::UnsupportedObject {
                given: other.to_string(),
            }),
        }
    }
}

impl std::fmt::Display for SampleObject {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SampleObject::Rn => "rn",
            SampleObject::Rpv => "rpv",
            SampleObject::Ru => "ru",
            SampleObject::Rsv => "rsv",
            SampleObject::Rdm => "rdm",
        })
    }
}

/// An object paired with a validated method for sampling it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResolvedMethod {
    Rn,
    Rpv(RpvMethod),
    Ru(RuMethod),
    Rsv(RsvMethod),
    Rdm(RdmMethod),
}

impl ResolvedMethod {
    /// The method's option string; "none" for raw draws, which have no
    /// method axis.
    pub fn method_name(&self) -> String {
        match self {
            ResolvedMethod::Rn => "none".into(),
            ResolvedMethod::Rpv(m) => m.to_string(),
            ResolvedMethod::Ru(m) => m.to_string(),
            ResolvedMethod::Rsv(m) => m.to_string(),
            ResolvedMethod::Rdm(m) => m.to_string(),
        }
    }
}

/// A complete description of one sampling run.
///
/// The output destination is deliberately not part of the configuration:
/// drivers write to any [`std::io::Write`], and the CLI owns path handling.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub object: SampleObject,
    /// Method option string; `None` selects the object's default method.
    pub method: Option<String>,
    pub algorithm: RngAlgorithm,
    pub dim: usize,
    pub samples: usize,
    pub seed: u64,
}

impl ExperimentConfig {
    /// Validates the method against the object and resolves defaults
    /// (`zhsl`, `gso`, `std`, `std` for rpv/ru/rsv/rdm respectively).
    pub fn resolve_method(&self) -> Result<ResolvedMethod> {
        match self.object {
            SampleObject::Rn => match &self.method {
                None => Ok(ResolvedMethod::Rn),
                Some(m) => Err(Error::Usage(format!(
                    "object 'rn' takes no --method (got '{m}'); it samples raw uniform draws"
                ))),
            },
            SampleObject::Rpv => Ok(ResolvedMethod::Rpv(match &self.method {
                None => RpvMethod::default(),
                Some(m) => RpvMethod::from_str(m)?,
            })),
            SampleObject::Ru => Ok(ResolvedMethod::Ru(match &self.method {
                None => RuMethod::default(),
                Some(m) => RuMethod::from_str(m)?,
            })),
            SampleObject::Rsv => Ok(ResolvedMethod::Rsv(match &self.method {
                None => RsvMethod::default(),
                Some(m) => RsvMethod::from_str(m)?,
            })),
            SampleObject::Rdm => Ok(ResolvedMethod::Rdm(match &self.method {
                None => RdmMethod::default(),
                Some(m) => RdmMethod::from_str(m)?,
            })),
        }
    }

    /// Rejects configurations that cannot produce output.
    pub fn validate(&self) -> Result<ResolvedMethod> {
        if self.dim == 0 {
            return Err(Error::InvalidDimension(0));
        }
        if self.samples == 0 {
            return Err(Error::Usage("--samples must be at least 1".into()));
        }
        self.resolve_method()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(object: SampleObject, method: Option<&str>) -> ExperimentConfig {
        ExperimentConfig {
            object,
            method: method.map(String::from),
            algorithm: RngAlgorithm::Mt,
            dim: 4,
            samples: 10,
            seed: 1,
        }
    }

    #[test]
    fn defaults_follow_the_standard_methods() {
        assert_eq!(
            config(SampleObject::Rpv, None).validate().unwrap(),
            ResolvedMethod::Rpv(RpvMethod::Zhsl)
        );
        assert_eq!(
            config(SampleObject::Ru, None).validate().unwrap(),
            ResolvedMethod::Ru(RuMethod::Gso)
        );
        assert_eq!(
            config(SampleObject::Rsv, None).validate().unwrap(),
            ResolvedMethod::Rsv(RsvMethod::Std)
        );
        assert_eq!(
            config(SampleObject::Rdm, None).validate().unwrap(),
            ResolvedMethod::Rdm(RdmMethod::Std)
        );
        assert_eq!(
            config(SampleObject::Rn, None).validate().unwrap(),
            ResolvedMethod::Rn
        );
    }

    #[test]
    fn methods_are_validated_per_object() {
        assert_eq!(
            config(SampleObject::Rpv, Some("kraemer"))
                .validate()
                .unwrap(),
            ResolvedMethod::Rpv(RpvMethod::Kraemer)
        );
        // A method from the wrong family is rejected with the right options.
        let err = config(SampleObject::Rpv, Some("gso"))
            .validate()
            .unwrap_err();
        assert!(err
            .to_string()
            .contains("trig, norm, zhsl, iid, devroye, kraemer"));
        // rn takes no method at all.
        let err = config(SampleObject::Rn, Some("zhsl"))
            .validate()
            .unwrap_err();
        assert!(matches!(err, Error::Usage(_)));
    }

    #[test]
    fn degenerate_configs_are_rejected() {
        let mut c = config(SampleObject::Rpv, None);
        c.dim = 0;
        assert!(matches!(c.validate(), Err(Error::InvalidDimension(0))));
        let mut c = config(SampleObject::Rpv, None);
        c.samples = 0;
        assert!(matches!(c.validate(), Err(Error::Usage(_))));
    }

    #[test]
    fn object_strings_round_trip() {
        for (s, o) in [
            ("rn", SampleObject::Rn),
            ("rpv", SampleObject::Rpv),
            ("ru", SampleObject::Ru),
            ("rsv", SampleObject::Rsv),
            ("rdm", SampleObject::Rdm),
        ] {
            assert_eq!(SampleObject::from_str(s).unwrap(), o);
            assert_eq!(o.to_string(), s);
        }
        let err = SampleObject::from_str("rho").unwrap_err();
        assert!(err.to_string().contains("rn, rpv, ru, rsv, rdm"));
    }
}
