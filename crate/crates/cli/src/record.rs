//! Outcome records: one JSON object per line on stdout.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Field order is the serialization order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutcomeRecord {
    pub command: Vec<String>,
    /// SHA-256 (hex) of the input file bytes, or of the canonical generator
    /// spec for generated instances.
    pub input_digest: String,
    pub variant: String,
    pub certificate: Value,
    pub sizes: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
    pub seed: Option<u64>,
    pub version: String,
}

impl OutcomeRecord {
    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// What a verb produced, before the run metadata is attached.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub variant: String,
    pub certificate: Value,
    pub sizes: BTreeMap<String, usize>,
    pub exit: u8,
}

impl Outcome {
    pub fn new(variant: impl Into<String>, certificate: Value) -> Self {
        Outcome {
            variant: variant.into(),
            certificate,
            sizes: BTreeMap::new(),
            exit: 0,
        }
    }

    pub fn size(mut self, key: &str, v: usize) -> Self {
        self.sizes.insert(key.to_string(), v);
        self
    }

    pub fn exit(mut self, code: u8) -> Self {
        self.exit = code;
        self
    }

    pub fn into_record(
        self,
        command: Vec<String>,
        input_digest: String,
        seed: Option<u64>,
        elapsed_ms: Option<u64>,
    ) -> OutcomeRecord {
        OutcomeRecord {
            command,
            input_digest,
            variant: self.variant,
            certificate: self.certificate,
            sizes: self.sizes,
            elapsed_ms,
            seed,
            version: VERSION.to_string(),
        }
    }
}
