//! Built-in verification suites. The scenario files live in `scenarios/` and
//! are embedded at compile time.

use std::fmt;
use std::str::FromStr;

use crate::error::CliResult;
use crate::scenario::Scenario;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    /// Reduced probe counts.
    Quick,
    /// Every acceptance scenario at full size.
    All,
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "quick" => Ok(Suite::Quick),
            "all" => Ok(Suite::All),
            _ => Err(format!("unknown suite `{s}` (all|quick)")),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Quick => "quick",
            Suite::All => "all",
        })
    }
}

macro_rules! embedded {
    ($dir:literal: $($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../scenarios/", $dir, "/", $name, ".toml")))),*]
    };
}

const ALL: &[(&str, &str)] = embedded!("all":
    "rgflow", "ode", "burgers", "burgers-weak", "nlo-flat", "nlo-cyl", "plasma-hot", "plasma-cold");
const QUICK: &[(&str, &str)] = embedded!("quick":
    "rgflow", "ode", "burgers", "burgers-weak", "nlo-flat", "nlo-cyl", "plasma-hot", "plasma-cold");

impl Suite {
    /// (name, TOML text) of each scenario.
    pub fn sources(self) -> &'static [(&'static str, &'static str)] {
        match self {
            Suite::Quick => QUICK,
            Suite::All => ALL,
        }
    }

    pub fn scenarios(self) -> CliResult<Vec<Scenario>> {
        self.sources().iter().map(|(name, text)| Scenario::parse(text, name)).collect()
    }
}
