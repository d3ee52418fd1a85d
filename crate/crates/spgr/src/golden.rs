//! Golden regression tables: the reference expansions shipped as JSON,
//! loaded from the embedded copies or from a directory override via the
//! `SPGR_GOLDEN_DIR` environment variable. Each file carries a recorded
//! SHA-256 transcription checksum.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;

/// One reference table: `kind` is `pp` (special elements, rows keyed by
/// degree, columns by reduced word), `qfun` (Stanley functions, rows keyed
/// by Grassmannian word, columns by partition), or `pfun` (dual Schubert
/// polynomials, same keys, Schur-P coefficients).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenTable {
    pub kind: String,
    pub n: u32,
    pub rows: BTreeMap<String, BTreeMap<String, i64>>,
}

pub const ENV_GOLDEN_DIR: &str = "SPGR_GOLDEN_DIR";

const EMBEDDED: &[(&str, &str)] = &[
    ("pp_n2.json", include_str!("../data/pp_n2.json")),
    ("pp_n3.json", include_str!("../data/pp_n3.json")),
    ("pp_n4.json", include_str!("../data/pp_n4.json")),
    ("qfun_n2.json", include_str!("../data/qfun_n2.json")),
    ("qfun_n3.json", include_str!("../data/qfun_n3.json")),
    ("pfun_n2.json", include_str!("../data/pfun_n2.json")),
    ("pfun_n3.json", include_str!("../data/pfun_n3.json")),
];

const CHECKSUMS: &str = include_str!("../data/CHECKSUMS.json");

/// Raw JSON text of a golden file, honoring the directory override.
pub fn load_raw(name: &str) -> Result<String> {
    if let Ok(dir) = std::env::var(ENV_GOLDEN_DIR) {
        let path = std::path::Path::new(&dir).join(name);
        return std::fs::read_to_string(&path)
            .map_err(|e| Error::Domain(format!("cannot read {}: {e}", path.display())));
    }
    EMBEDDED
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, body)| body.to_string())
        .ok_or_else(|| Error::Domain(format!("no golden table named {name}")))
}

pub fn load(name: &str) -> Result<GoldenTable> {
    let raw = load_raw(name)?;
    serde_json::from_str(&raw).map_err(|e| Error::Domain(format!("parsing {name}: {e}")))
}

pub fn table_name(kind: &str, n: usize) -> String {
    format!("{kind}_n{n}.json")
}

pub fn sha256_hex(data: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(data);
    format!("{:x}", h.finalize())
}

/// Recorded transcription checksums.
pub fn recorded_checksums() -> Result<BTreeMap<String, String>> {
    serde_json::from_str(CHECKSUMS).map_err(|e| Error::Domain(format!("CHECKSUMS.json: {e}")))
}

/// Verifies every golden file against its recorded checksum.
pub fn verify_checksums() -> Result<Vec<(String, bool)>> {
    let recorded = recorded_checksums()?;
    let mut out = Vec::new();
    for (name, _) in EMBEDDED {
        let raw = load_raw(name)?;
        let ok = recorded
            .get(*name)
            .is_some_and(|expect| *expect == sha256_hex(raw.as_bytes()));
        out.push(((*name).to_string(), ok));
    }
    Ok(out)
}
