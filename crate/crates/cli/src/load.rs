//! Group configuration loading.

use std::path::Path;

use forge_core::groups::{Group, GroupSpec, DEFAULT_GROUP_CAP};
use forge_core::{ForgeError, Result};

/// Enumeration cap from `FORGE_MAX_GROUP`, else the library default.
pub fn group_cap() -> Result<usize> {
    match std::env::var("FORGE_MAX_GROUP") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| ForgeError::Invalid(format!("FORGE_MAX_GROUP must be a positive integer, got '{v}'"))),
        Err(_) => Ok(DEFAULT_GROUP_CAP),
    }
}

/// A group from a JSON file, or a built-in name such as `Z3` or `S3`.
pub fn load_group(arg: &str) -> Result<(String, Group)> {
    let path = Path::new(arg);
    if path.exists() {
        let text = std::fs::read_to_string(path).map_err(|e| ForgeError::Invalid(format!("{arg}: {e}")))?;
        let spec: GroupSpec = serde_json::from_str(&text).map_err(|e| ForgeError::Parse(format!("{arg}: {e}")))?;
        let label = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| arg.to_string());
        return Ok((label, spec.build(group_cap()?)?));
    }
    let g = Group::named(arg).ok_or_else(|| ForgeError::InvalidGroup(format!("'{arg}' is neither a file nor a built-in group")))?;
    if g.order() > group_cap()? {
        return Err(ForgeError::GroupTooLarge(group_cap()?));
    }
    Ok((arg.to_string(), g))
}
