//! Versioned on-disk cache for subgraph spectra. Cache file names encode the
//! canonical form directly, so lookups need no hashing and no index file.
//! A missing or unreadable file just means recomputation; the cache can
//! never change a result.

use std::fs;
use std::path::{Path, PathBuf};

use crate::graph::canon::CanonKey;
use crate::hom::spectrum::{SpectrumFile, SubgraphSpectrum};

pub(crate) const SCHEMA_VERSION: u32 = 1;

fn file_for(dir: &Path, key: CanonKey) -> PathBuf {
    dir.join(format!(
        "spectrum_v{}_n{}_{:032x}.json",
        SCHEMA_VERSION, key.node_count, key.mask
    ))
}

pub(crate) fn load(dir: &Path, key: CanonKey) -> Option<SubgraphSpectrum> {
    let path = file_for(dir, key);
    let text = fs::read_to_string(path).ok()?;
    let file: SpectrumFile = serde_json::from_str(&text).ok()?;
    if file.version != SCHEMA_VERSION {
        return None;
    }
    SubgraphSpectrum::from_file(file).ok()
}

/// Best effort: cache write failures are ignored (results are recomputed
/// next time).
pub(crate) fn store(dir: &Path, key: CanonKey, spec: &SubgraphSpectrum) {
    if fs::create_dir_all(dir).is_err() {
        return;
    }
    let path = file_for(dir, key);
    if let Ok(text) = serde_json::to_string(&spec.to_file()) {
        let _ = fs::write(path, text);
    }
}
