//! JSON files holding enumerated monoid tables.

use std::fs::{self, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use origami_core::{Alphabet, Family, MonoidTable, Word};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const FORMAT_VERSION: u32 = 1;

/// Serialized form of a [`MonoidTable`]; also the `export --format json` output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableFile {
    pub format_version: u32,
    pub family: String,
    pub n: usize,
    pub include_redundant: bool,
    pub size: usize,
    pub reps: Vec<String>,
    pub right_cayley: Vec<Vec<u32>>,
    pub left_cayley: Vec<Vec<u32>>,
}

impl TableFile {
    pub fn from_table(m: &MonoidTable, include_redundant: bool) -> Self {
        let k = m.generator_count();
        TableFile {
            format_version: FORMAT_VERSION,
            family: m.family().name().to_string(),
            n: m.rank(),
            include_redundant,
            size: m.size(),
            reps: m.reps().iter().map(|w| w.to_string()).collect(),
            right_cayley: m.right_table().chunks(k).map(<[u32]>::to_vec).collect(),
            left_cayley: m.left_table().chunks(k).map(<[u32]>::to_vec).collect(),
        }
    }

    pub fn into_table(self) -> Result<MonoidTable, String> {
        if self.format_version != FORMAT_VERSION {
            return Err(format!(
                "format version {} (expected {FORMAT_VERSION})",
                self.format_version
            ));
        }
        let family = match self.family.as_str() {
            "jones" => Family::Jones,
            "origami" => Family::Origami,
            other => return Err(format!("unknown family {other}")),
        };
        let alphabet = Alphabet::new(family, self.n).map_err(|e| e.to_string())?;
        let reps = self
            .reps
            .iter()
            .map(|s| s.parse::<Word>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        if reps.len() != self.size {
            return Err("size does not match the representative list".into());
        }
        let flat = |rows: Vec<Vec<u32>>| rows.into_iter().flatten().collect::<Vec<_>>();
        let m = MonoidTable::from_parts(
            alphabet,
            reps,
            flat(self.right_cayley),
            flat(self.left_cayley),
        )
        .map_err(|e| e.to_string())?;
        if !m.validate() {
            return Err("tables are inconsistent with the representatives".into());
        }
        Ok(m)
    }
}

pub fn cache_path(dir: &Path, family: Family, n: usize, include_redundant: bool) -> PathBuf {
    let variant = match (family, include_redundant) {
        (Family::Jones, _) => "std",
        (Family::Origami, true) => "full",
        (Family::Origami, false) => "lean",
    };
    dir.join(format!(
        "{}-{n}-{variant}-v{FORMAT_VERSION}.json",
        family.name()
    ))
}

pub fn load(path: &Path) -> CliResult<Option<MonoidTable>> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
        Err(source) => {
            return Err(CliError::Io {
                path: path.to_path_buf(),
                source,
            })
        }
    };
    let bad = |reason: String| CliError::Cache {
        path: path.to_path_buf(),
        reason,
    };
    let file: TableFile = serde_json::from_str(&text).map_err(|e| bad(e.to_string()))?;
    file.into_table().map(Some).map_err(bad)
}

/// Writes through a temporary file and a rename. A `.lock` file keeps a
/// second writer out; if it is present the store is skipped and `false`
/// returned.
pub fn store(path: &Path, m: &MonoidTable, include_redundant: bool) -> CliResult<bool> {
    let io_err = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(io_err)?;
    }
    let lock = path.with_extension("json.lock");
    match OpenOptions::new().write(true).create_new(true).open(&lock) {
        Ok(_) => {}
        Err(e) if e.kind() == io::ErrorKind::AlreadyExists => return Ok(false),
        Err(e) => return Err(io_err(e)),
    }
    let result = (|| {
        let tmp = path.with_extension("json.tmp");
        let text = serde_json::to_string(&TableFile::from_table(m, include_redundant))
            .map_err(|e| io_err(io::Error::other(e)))?;
        let mut f = fs::File::create(&tmp).map_err(io_err)?;
        f.write_all(text.as_bytes()).map_err(io_err)?;
        f.sync_all().map_err(io_err)?;
        fs::rename(&tmp, path).map_err(io_err)
    })();
    let _ = fs::remove_file(&lock);
    result.map(|_| true)
}
