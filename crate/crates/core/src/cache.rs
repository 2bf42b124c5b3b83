//! On-disk cache of canonical forms keyed by a digest of the colored edge list.
//!
//! Files are written to a temporary name and renamed into place, so readers
//! never see a partial entry; writers within one process take a lock.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use sha2::{Digest, Sha256};

use crate::error::Result;
use crate::graph::Graph;
use crate::symmetry::{canonical_form_colored, CanonicalForm, SearchOptions};

/// Environment variable naming the default cache directory.
pub const CACHE_DIR_ENV: &str = "KCOVER_CACHE_DIR";

#[derive(Debug, Default)]
pub struct CanonCache {
    dir: Option<PathBuf>,
    write_lock: Mutex<()>,
}

impl CanonCache {
    /// A cache that always recomputes.
    pub fn disabled() -> Self {
        CanonCache::default()
    }

    pub fn at(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(CanonCache {
            dir: Some(dir),
            write_lock: Mutex::new(()),
        })
    }

    /// Uses `dir` if given, else the environment variable, else disabled.
    pub fn from_option_or_env(dir: Option<&Path>) -> Result<Self> {
        match dir.map(Path::to_path_buf).or_else(|| std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from)) {
            Some(d) => CanonCache::at(d),
            None => Ok(CanonCache::disabled()),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn key(g: &Graph, colors: &[u64]) -> String {
        let mut h = Sha256::new();
        h.update((g.order() as u64).to_le_bytes());
        for c in colors {
            h.update(c.to_le_bytes());
        }
        for (u, v) in g.edges() {
            h.update((u as u64).to_le_bytes());
            h.update((v as u64).to_le_bytes());
        }
        hex::encode(h.finalize())
    }

    pub fn canonical_form(&self, g: &Graph, colors: &[u64], opts: SearchOptions) -> Result<CanonicalForm> {
        let Some(dir) = &self.dir else {
            return canonical_form_colored(g, colors, opts);
        };
        let key = Self::key(g, colors);
        let path = dir.join(format!("{key}.json"));
        if let Ok(text) = fs::read_to_string(&path) {
            if let Ok(form) = serde_json::from_str::<CanonicalForm>(&text) {
                // an entry is trusted only if its labeling reproduces its certificate
                if form.labeling.degree() == g.order() && relabeled_edges(g, &form) == form.certificate.edges {
                    return Ok(form);
                }
            }
        }
        let form = canonical_form_colored(g, colors, opts)?;
        let _guard = self.write_lock.lock().unwrap_or_else(|e| e.into_inner());
        let tmp = dir.join(format!("{key}.{}.tmp", std::process::id()));
        fs::write(&tmp, serde_json::to_string(&form)?)?;
        fs::rename(&tmp, &path)?;
        Ok(form)
    }

    pub fn canonical_form_plain(&self, g: &Graph, opts: SearchOptions) -> Result<CanonicalForm> {
        self.canonical_form(g, &vec![0; g.order()], opts)
    }
}

fn relabeled_edges(g: &Graph, form: &CanonicalForm) -> Vec<(u32, u32)> {
    let mut edges: Vec<(u32, u32)> = g
        .edges()
        .into_iter()
        .map(|(u, v)| {
            let (a, b) = (form.labeling.apply(u) as u32, form.labeling.apply(v) as u32);
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_unstable();
    edges
}
