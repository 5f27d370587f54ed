use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::request::Request;

pub const VERSION_TAG: &str = concat!("kgroth-", env!("CARGO_PKG_VERSION"));

#[derive(Serialize, Deserialize)]
struct Entry {
    version: String,
    request: String,
    output: String,
}

/// Rendered outputs keyed by the hash of the canonical request.
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn from_env() -> Option<Cache> {
        std::env::var_os("KGROTH_CACHE").filter(|v| !v.is_empty()).map(|d| Cache { dir: d.into() })
    }

    pub fn key(req: &Request) -> String {
        let mut h = Sha256::new();
        h.update(VERSION_TAG.as_bytes());
        h.update(b"\n");
        h.update(req.canonical().as_bytes());
        hex::encode(h.finalize())
    }

    fn path(&self, req: &Request) -> PathBuf {
        self.dir.join(format!("{}.json", Self::key(req)))
    }

    /// A stored output, if present and written for the same request and version.
    pub fn get(&self, req: &Request) -> Option<String> {
        let bytes = fs::read(self.path(req)).ok()?;
        let e: Entry = serde_json::from_slice(&bytes).ok()?;
        (e.version == VERSION_TAG && e.request == req.canonical()).then_some(e.output)
    }

    pub fn put(&self, req: &Request, output: &str) -> std::io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let e = Entry { version: VERSION_TAG.into(), request: req.canonical(), output: output.into() };
        write_atomic(&self.dir, &self.path(req), &serde_json::to_vec(&e)?)
    }
}

fn write_atomic(dir: &Path, target: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(target).map_err(|e| e.error)?;
    Ok(())
}
