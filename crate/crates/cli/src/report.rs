use serde::Serialize;
use sha2::{Digest, Sha256};

/// Summary of one invocation. `digest` covers every field except the wall
/// time, so equal inputs and seed give equal digests.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub input_digest: String,
    pub seed: Option<u64>,
    pub outcome: String,
    pub samples: usize,
    pub circuits_examined: u64,
    pub version: String,
    pub wall_time_ms: f64,
    pub digest: String,
}

#[derive(Serialize)]
struct Stable<'a> {
    command: &'a str,
    input_digest: &'a str,
    seed: Option<u64>,
    outcome: &'a str,
    samples: usize,
    circuits_examined: u64,
    version: &'a str,
}

/// SHA-256 over the inputs, each prefixed by its length.
pub fn digest_inputs<'a>(inputs: impl IntoIterator<Item = &'a [u8]>) -> String {
    let mut h = Sha256::new();
    for bytes in inputs {
        h.update((bytes.len() as u64).to_le_bytes());
        h.update(bytes);
    }
    hex::encode(h.finalize())
}

impl RunReport {
    pub fn new(
        command: &str,
        input_digest: String,
        seed: Option<u64>,
        outcome: &str,
        samples: usize,
        circuits_examined: u64,
        wall_time: std::time::Duration,
    ) -> Self {
        let version = env!("CARGO_PKG_VERSION").to_string();
        let stable = Stable {
            command,
            input_digest: &input_digest,
            seed,
            outcome,
            samples,
            circuits_examined,
            version: &version,
        };
        let digest = hex::encode(Sha256::digest(serde_json::to_vec(&stable).expect("report serializes")));
        Self {
            command: command.to_string(),
            input_digest,
            seed,
            outcome: outcome.to_string(),
            samples,
            circuits_examined,
            version,
            wall_time_ms: wall_time.as_secs_f64() * 1e3,
            digest,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::time::Duration;

    #[test]
    fn digest_ignores_wall_time() {
        let a = RunReport::new("solve", "ab".into(), Some(1), "found", 3, 7, Duration::from_millis(1));
        let b = RunReport::new("solve", "ab".into(), Some(1), "found", 3, 7, Duration::from_secs(9));
        assert_eq!(a.digest, b.digest);
        let c = RunReport::new("solve", "ab".into(), Some(2), "found", 3, 7, Duration::from_millis(1));
        assert_ne!(a.digest, c.digest);
    }
}
