//! Disk cache for searched base embeddings and drawings. One rotation- or
//! drawing-file per entry plus a JSON sidecar carrying the graph spec,
//! surface, payload checksum and the search statistics that produced it.
//! Entries are re-verified on read; anything corrupt or stale is treated
//! as a miss and recomputed, never propagated.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::drawing::Drawing;
use crate::search::SearchStats;
use crate::surface::SurfaceId;
use crate::Result;

pub const CACHE_ENV: &str = "SURFACES_CACHE_DIR";

/// Cache root: the environment variable when set, else `cache/` under the
/// current directory.
pub fn default_cache_root() -> PathBuf {
    std::env::var_os(CACHE_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("cache"))
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct CacheEntry {
    pub graph: String,
    pub surface: String,
    pub checksum: String,
    pub stats: SearchStats,
    pub provenance: String,
}

pub struct EmbeddingCache {
    root: Option<PathBuf>,
}

impl EmbeddingCache {
    pub fn new(root: Option<PathBuf>) -> Self {
        EmbeddingCache { root }
    }

    pub fn disabled() -> Self {
        EmbeddingCache { root: None }
    }

    pub fn at_default() -> Self {
        EmbeddingCache {
            root: Some(default_cache_root()),
        }
    }

    fn paths(&self, key: &str) -> Option<(PathBuf, PathBuf)> {
        let root = self.root.as_ref()?;
        Some((root.join(format!("{key}.rot")), root.join(format!("{key}.json"))))
    }

    /// Loads a drawing for `key`, re-verifying with `check`; on miss or
    /// verification failure runs `compute` and stores its result.
    pub fn drawing(
        &self,
        key: &str,
        graph_spec: &str,
        surface: SurfaceId,
        check: impl Fn(&Drawing) -> bool,
        compute: impl FnOnce() -> Result<(Drawing, SearchStats, String)>,
    ) -> Result<Drawing> {
        if let Some((payload_path, meta_path)) = self.paths(key) {
            if let Some(d) = read_verified(&payload_path, &meta_path, &check) {
                return Ok(d);
            }
        }
        let (drawing, stats, provenance) = compute()?;
        debug_assert!(check(&drawing), "computed entry fails its own check");
        if let Some((payload_path, meta_path)) = self.paths(key) {
            let payload = drawing.to_text()?;
            let entry = CacheEntry {
                graph: graph_spec.to_string(),
                surface: surface.to_string(),
                checksum: checksum(&payload),
                stats,
                provenance,
            };
            let _ = write_atomic(&payload_path, payload.as_bytes());
            let _ = write_atomic(
                &meta_path,
                serde_json::to_string_pretty(&entry)
                    .unwrap_or_default()
                    .as_bytes(),
            );
        }
        Ok(drawing)
    }
}

fn read_verified(
    payload_path: &Path,
    meta_path: &Path,
    check: &impl Fn(&Drawing) -> bool,
) -> Option<Drawing> {
    let payload = fs::read_to_string(payload_path).ok()?;
    let meta: CacheEntry = serde_json::from_str(&fs::read_to_string(meta_path).ok()?).ok()?;
    if meta.checksum != checksum(&payload) {
        return None;
    }
    let d = Drawing::from_text(&payload).ok()?;
    if check(&d) {
        Some(d)
    } else {
        None
    }
}

/// FNV-1a, hex encoded: enough to catch corrupted or hand-edited payloads.
fn checksum(text: &str) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in text.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}

/// Single-writer atomic replace: write a sibling temp file, then rename.
fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_rotation_system;
    use crate::graph::Graph;

    #[test]
    fn cache_round_trip_and_corruption_detection() {
        let dir = tempfile::tempdir().unwrap();
        let cache = EmbeddingCache::new(Some(dir.path().to_path_buf()));
        let text = "0. 1 4 3 2\n1. 0 2 5 4\n2. 1 0 3 5\n3. 2 0 4 5\n4. 3 0 1 5\n5. 1 2 3 4\n";
        let check = |d: &Drawing| d.graph().edge_count() == 12;
        let mut computed = 0;
        let d1 = cache
            .drawing("octa", "K6-3K2", SurfaceId::sphere(), check, || {
                computed += 1;
                Ok((
                    Drawing::from_rotation_system(&parse_rotation_system(text).unwrap()).unwrap(),
                    SearchStats::default(),
                    "test fixture".into(),
                ))
            })
            .unwrap();
        assert_eq!(computed, 1);
        // second read hits the disk entry
        let d2 = cache
            .drawing("octa", "K6-3K2", SurfaceId::sphere(), check, || {
                computed += 1;
                unreachable!("must not recompute")
            })
            .unwrap();
        assert_eq!(d1, d2);
        // corrupt the payload: the checksum mismatch forces a recompute
        std::fs::write(dir.path().join("octa.rot"), "0. 1\n1. 0\n").unwrap();
        let mut recomputed = false;
        let _ = cache
            .drawing("octa", "K6-3K2", SurfaceId::sphere(), check, || {
                recomputed = true;
                Ok((
                    Drawing::from_rotation_system(&parse_rotation_system(text).unwrap()).unwrap(),
                    SearchStats::default(),
                    "test fixture".into(),
                ))
            })
            .unwrap();
        assert!(recomputed);
        let _ = Graph::complete(3);
    }
}
