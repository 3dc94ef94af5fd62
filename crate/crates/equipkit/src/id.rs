//! Deterministic identifiers.
//!
//! Every object constructed by the kernel names its parts by hashing the
//! construction provenance, so repeated runs emit bit-identical results.
//! Equality of ids is plain string equality; the kernel never introspects
//! an id beyond that.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fmt;

/// An opaque identifier for objects, morphisms, simplices, elements.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Id(String);

impl Id {
    pub fn new(raw: impl Into<String>) -> Self {
        Id(raw.into())
    }

    /// Derive a fresh id from a tag and the parts it is built from.
    ///
    /// The id is `tag:` followed by twelve hex digits of a SHA-256 over the
    /// parts; distinct provenance gives distinct ids for all practical
    /// purposes, and identical provenance always gives the same id.
    pub fn derive<S: AsRef<str>>(tag: &str, parts: &[S]) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(tag.as_bytes());
        for part in parts {
            hasher.update([0u8]);
            hasher.update(part.as_ref().as_bytes());
        }
        let digest = hasher.finalize();
        let hex: String = digest[..6].iter().map(|b| format!("{b:02x}")).collect();
        Id(format!("{tag}:{hex}"))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Id {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Id {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Id({})", self.0)
    }
}

impl From<&str> for Id {
    fn from(s: &str) -> Self {
        Id(s.to_owned())
    }
}

impl From<String> for Id {
    fn from(s: String) -> Self {
        Id(s)
    }
}
