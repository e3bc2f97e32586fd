use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde::Serialize;

/// Package version plus `git describe` output captured at build time.
pub const BUILD_ID: &str = concat!(env!("CARGO_PKG_VERSION"), "+", env!("BDL_GIT_DESCRIBE"));

/// Writes pretty JSON to `path`, or to stdout.
pub fn emit<T: Serialize>(path: Option<&Path>, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match path {
        Some(p) => fs::write(p, text + "\n").with_context(|| format!("writing {}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}
