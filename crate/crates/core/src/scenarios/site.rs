use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ScenarioError;

/// Label of one of the special fibres: 0, a finite index, or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Site {
    Zero,
    Finite(u32),
    Inf,
}

impl Site {
    pub fn is_special(self) -> bool {
        matches!(self, Site::Zero | Site::Inf)
    }

    pub fn label(self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Site::Zero => write!(f, "0"),
            Site::Finite(i) => write!(f, "{i}"),
            Site::Inf => write!(f, "inf"),
        }
    }
}

impl FromStr for Site {
    type Err = ScenarioError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "∞" => Ok(Site::Inf),
            t => match t.parse::<u32>() {
                Ok(0) => Ok(Site::Zero),
                Ok(i) => Ok(Site::Finite(i)),
                Err(_) => Err(ScenarioError::Validation(format!("bad point label {t:?}"))),
            },
        }
    }
}

/// Parses a comma separated list such as `0,inf` (empty string for none).
pub fn parse_sites(s: &str) -> Result<Vec<Site>, ScenarioError> {
    s.split(',').filter(|t| !t.trim().is_empty()).map(str::parse).collect()
}

impl Serialize for Site {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        match self {
            Site::Zero => ser.serialize_u32(0),
            Site::Finite(i) => ser.serialize_u32(*i),
            Site::Inf => ser.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Site {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u32),
            Text(String),
        }
        match Raw::deserialize(de)? {
            Raw::Num(0) => Ok(Site::Zero),
            Raw::Num(i) => Ok(Site::Finite(i)),
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}
