//! Example scenarios shipped with the binary.

use crate::config::{parse_scenario, ScenarioConfig};
use crate::error::{Error, Result};

/// `(name, document)` for every bundled scenario.
pub const BUNDLED: [(&str, &str); 4] = [
    ("discrepancy", include_str!("../scenarios/discrepancy.toml")),
    ("dlocal-agreement", include_str!("../scenarios/dlocal_agreement.toml")),
    ("bcl-qubit", include_str!("../scenarios/bcl_qubit.toml")),
    ("rule2-comparison", include_str!("../scenarios/rule2_comparison.toml")),
];

pub fn names() -> Vec<&'static str> {
    BUNDLED.iter().map(|(name, _)| *name).collect()
}

pub fn bundled(name: &str) -> Result<ScenarioConfig> {
    let (_, text) = BUNDLED
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::UnknownDemo {
            name: name.to_string(),
            available: names().join(", "),
        })?;
    parse_scenario(text)
}
