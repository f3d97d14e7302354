use std::io::Write;
use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

use super::{HarnessError, RunConfig};

/// Provenance block embedded in every JSON artifact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArtifactHeader {
    pub command: String,
    pub config_hash: String,
    pub seed: u64,
}

impl ArtifactHeader {
    pub fn new(command: &str, inputs: &[(&Path, &[u8])], cfg: &RunConfig) -> Self {
        ArtifactHeader {
            command: command.to_string(),
            config_hash: config_hash(command, inputs, cfg),
            seed: cfg.seed,
        }
    }

    /// Leading comment line for CSV artifacts.
    pub fn csv_comment(&self) -> String {
        format!(
            "# augdim {} config_hash={} seed={}\n",
            self.command, self.config_hash, self.seed
        )
    }
}

/// SHA-256 over the command, every input's name and bytes, and the
/// serialized config.
pub fn config_hash(command: &str, inputs: &[(&Path, &[u8])], cfg: &RunConfig) -> String {
    let mut h = Sha256::new();
    let mut field = |bytes: &[u8]| {
        h.update((bytes.len() as u64).to_le_bytes());
        h.update(bytes);
    };
    field(command.as_bytes());
    for (path, bytes) in inputs {
        let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        field(name.as_bytes());
        field(bytes);
    }
    field(serde_json::to_string(cfg).expect("config serializes").as_bytes());
    hex::encode(h.finalize())
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<(), HarnessError> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    std::fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.tmp-{}", std::process::id()));
    let result = std::fs::File::create(&tmp)
        .and_then(|mut f| {
            f.write_all(contents)?;
            f.sync_all()
        })
        .and_then(|_| std::fs::rename(&tmp, path));
    if let Err(e) = result {
        let _ = std::fs::remove_file(&tmp);
        return Err(HarnessError::io(path, e));
    }
    Ok(())
}

pub(crate) fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), HarnessError> {
    let mut text = serde_json::to_string_pretty(value).expect("report serializes");
    text.push('\n');
    write_atomic(path, text.as_bytes())
}
