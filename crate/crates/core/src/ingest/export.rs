use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::sampling::{CumulativeCurve, SamplePlan};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExportPaths {
    pub plan: PathBuf,
    pub curve: Option<PathBuf>,
}

fn write(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))
}

/// Writes the plan as one line of JSON and, when both a curve and a path
/// are given, the curve as CSV. Output is byte-stable for equal inputs.
pub fn export_outputs(
    plan: &SamplePlan,
    curve: Option<&CumulativeCurve>,
    paths: &ExportPaths,
) -> Result<()> {
    let mut json = plan.to_json();
    json.push('\n');
    write(&paths.plan, &json)?;
    if let (Some(curve), Some(path)) = (curve, &paths.curve) {
        write(path, &curve.to_csv())?;
    }
    Ok(())
}
