//! Optional cross-check of computed sequences against the OEIS.
//!
//! The HTTP layer is a [`Transport`] so tests never touch the network.
//! Successful responses are cached on disk, one JSON file per query named by
//! the SHA-256 of the term list. When the network is unreachable, or when the
//! client is configured offline, lookups are answered from a small built-in
//! table covering the four sequences this crate computes itself.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::exact;
use crate::formulas::{SequenceName, SequenceTable};

pub const DEFAULT_ENDPOINT: &str = "https://oeis.org/search";
pub const ENV_ENDPOINT: &str = "VINCULUM_OEIS_ENDPOINT";
pub const ENV_TIMEOUT: &str = "VINCULUM_OEIS_TIMEOUT";
pub const ENV_CACHE_DIR: &str = "VINCULUM_CACHE_DIR";
const MIN_TERMS: usize = 4;
const SEED_LEN: usize = 40;

#[derive(Debug, Error)]
pub enum OeisError {
    #[error("need at least {MIN_TERMS} terms, got {0}")]
    TooFewTerms(usize),
    #[error("unexpected response: {0}")]
    BadResponse(String),
    #[error("cache: {0}")]
    Cache(#[from] std::io::Error),
}

#[derive(Debug, Error)]
#[error("{0}")]
pub struct TransportError(pub String);

pub trait Transport: Send + Sync {
    fn get(&self, url: &str, timeout: Duration) -> Result<String, TransportError>;
}

/// Blocking HTTPS transport.
#[derive(Debug, Default, Clone, Copy)]
pub struct HttpTransport;

impl Transport for HttpTransport {
    fn get(&self, url: &str, timeout: Duration) -> Result<String, TransportError> {
        let agent: ureq::Agent = ureq::Agent::config_builder()
            .timeout_global(Some(timeout))
            .build()
            .into();
        agent
            .get(url)
            .call()
            .map_err(|e| TransportError(e.to_string()))?
            .body_mut()
            .read_to_string()
            .map_err(|e| TransportError(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SequenceHit {
    /// `A` followed by six digits.
    pub id: String,
    pub name: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Network,
    Cache,
    OfflineSeed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lookup {
    pub hits: Vec<SequenceHit>,
    pub source: Source,
    /// Set when the network was wanted but failed.
    pub degraded: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CacheEntry {
    #[serde(with = "exact::list")]
    terms: Vec<BigUint>,
    hits: Vec<SequenceHit>,
}

#[derive(Debug, Clone)]
pub struct OeisConfig {
    pub endpoint: String,
    pub timeout: Duration,
    pub cache_dir: Option<PathBuf>,
    pub offline: bool,
}

impl Default for OeisConfig {
    fn default() -> Self {
        OeisConfig {
            endpoint: DEFAULT_ENDPOINT.to_string(),
            timeout: Duration::from_secs(10),
            cache_dir: None,
            offline: false,
        }
    }
}

impl OeisConfig {
    /// Defaults overridden by `VINCULUM_OEIS_ENDPOINT`,
    /// `VINCULUM_OEIS_TIMEOUT` (seconds) and `VINCULUM_CACHE_DIR`.
    pub fn from_env() -> Self {
        let mut c = OeisConfig::default();
        if let Ok(e) = std::env::var(ENV_ENDPOINT) {
            c.endpoint = e;
        }
        if let Some(secs) = std::env::var(ENV_TIMEOUT).ok().and_then(|s| s.parse().ok()) {
            c.timeout = Duration::from_secs(secs);
        }
        c.cache_dir = std::env::var_os(ENV_CACHE_DIR).map(PathBuf::from);
        c
    }
}

pub struct OeisClient<T: Transport = HttpTransport> {
    config: OeisConfig,
    transport: T,
}

impl OeisClient<HttpTransport> {
    pub fn new(config: OeisConfig) -> Self {
        OeisClient {
            config,
            transport: HttpTransport,
        }
    }
}

impl<T: Transport> OeisClient<T> {
    pub fn with_transport(config: OeisConfig, transport: T) -> Self {
        OeisClient { config, transport }
    }

    pub fn config(&self) -> &OeisConfig {
        &self.config
    }

    pub fn query_url(&self, terms: &[BigUint]) -> String {
        format!("{}?q={}&fmt=json", self.config.endpoint, join(terms))
    }

    pub fn lookup(&self, terms: &[BigUint]) -> Result<Lookup, OeisError> {
        if terms.len() < MIN_TERMS {
            return Err(OeisError::TooFewTerms(terms.len()));
        }
        let cache_path = self
            .config
            .cache_dir
            .as_deref()
            .map(|d| cache_file(d, terms));
        if let Some(path) = cache_path.as_deref().filter(|p| p.exists()) {
            let entry: CacheEntry = serde_json::from_slice(&fs::read(path)?)
                .map_err(|e| OeisError::BadResponse(format!("{}: {e}", path.display())))?;
            return Ok(Lookup {
                hits: entry.hits,
                source: Source::Cache,
                degraded: false,
            });
        }
        if self.config.offline {
            return Ok(Lookup {
                hits: seed_hits(terms),
                source: Source::OfflineSeed,
                degraded: false,
            });
        }
        let body = match self
            .transport
            .get(&self.query_url(terms), self.config.timeout)
        {
            Ok(body) => body,
            Err(_) => {
                return Ok(Lookup {
                    hits: seed_hits(terms),
                    source: Source::OfflineSeed,
                    degraded: true,
                })
            }
        };
        let hits = parse_response(&body)?;
        if let Some(path) = cache_path {
            write_atomic(
                &path,
                &CacheEntry {
                    terms: terms.to_vec(),
                    hits: hits.clone(),
                },
            )?;
        }
        Ok(Lookup {
            hits,
            source: Source::Network,
            degraded: false,
        })
    }
}

fn join(terms: &[BigUint]) -> String {
    terms
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

pub fn cache_key(terms: &[BigUint]) -> String {
    hex::encode(Sha256::digest(join(terms).as_bytes()))
}

fn cache_file(dir: &Path, terms: &[BigUint]) -> PathBuf {
    dir.join(format!("{}.json", cache_key(terms)))
}

fn write_atomic(path: &Path, entry: &CacheEntry) -> Result<(), OeisError> {
    let dir = path.parent().unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    serde_json::to_writer_pretty(&mut tmp, entry)
        .map_err(|e| OeisError::Cache(std::io::Error::other(e)))?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| OeisError::Cache(e.error))?;
    Ok(())
}

/// Accepts both the bare result array and the older `{"results": [...]}`
/// envelope; `null` means no match.
pub fn parse_response(body: &str) -> Result<Vec<SequenceHit>, OeisError> {
    let value: Value =
        serde_json::from_str(body).map_err(|e| OeisError::BadResponse(e.to_string()))?;
    let results = match &value {
        Value::Null => return Ok(Vec::new()),
        Value::Array(items) => items.as_slice(),
        Value::Object(obj) => match obj.get("results") {
            None | Some(Value::Null) => return Ok(Vec::new()),
            Some(Value::Array(items)) => items.as_slice(),
            Some(other) => return Err(OeisError::BadResponse(format!("results = {other}"))),
        },
        other => return Err(OeisError::BadResponse(format!("top level = {other}"))),
    };
    results
        .iter()
        .map(|r| {
            let number = r
                .get("number")
                .and_then(Value::as_u64)
                .ok_or_else(|| OeisError::BadResponse("result without a number".into()))?;
            let name = r.get("name").and_then(Value::as_str).unwrap_or_default();
            Ok(SequenceHit {
                id: format!("A{number:06}"),
                name: name.to_string(),
            })
        })
        .collect()
}

/// The built-in table: `(id, name, sequence)`.
pub fn seed_table() -> Vec<(SequenceHit, SequenceName)> {
    [
        (
            "A000110",
            "Bell or exponential numbers: number of ways to partition a set of n labeled elements.",
            SequenceName::Bell,
        ),
        (
            "A000108",
            "Catalan numbers: C(n) = binomial(2n,n)/(n+1) = (2n)!/(n!(n+1)!).",
            SequenceName::Catalan,
        ),
        (
            "A001006",
            "Motzkin numbers: number of ways of drawing any number of nonintersecting chords joining n (labeled) points on a circle.",
            SequenceName::Motzkin,
        ),
        (
            "A000085",
            "Number of self-inverse permutations on n letters, also known as involutions; number of standard Young tableaux with n cells.",
            SequenceName::Involution,
        ),
    ]
    .into_iter()
    .map(|(id, name, seq)| {
        (
            SequenceHit {
                id: id.to_string(),
                name: name.to_string(),
            },
            seq,
        )
    })
    .collect()
}

/// Seed sequences containing `terms` as a contiguous run.
pub fn seed_hits(terms: &[BigUint]) -> Vec<SequenceHit> {
    seed_table()
        .into_iter()
        .filter(|(_, seq)| {
            let values = SequenceTable::compute(*seq, SEED_LEN).values;
            values.windows(terms.len()).any(|w| w == terms)
        })
        .map(|(hit, _)| hit)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::atomic::{AtomicUsize, Ordering};

    fn terms(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    fn ids(hits: &[SequenceHit]) -> Vec<&str> {
        hits.iter().map(|h| h.id.as_str()).collect()
    }

    struct NoNetwork;

    impl Transport for NoNetwork {
        fn get(&self, url: &str, _: Duration) -> Result<String, TransportError> {
            panic!("network access in offline mode: {url}");
        }
    }

    struct Down;

    impl Transport for Down {
        fn get(&self, _: &str, _: Duration) -> Result<String, TransportError> {
            Err(TransportError("connection refused".into()))
        }
    }

    struct Canned {
        body: &'static str,
        calls: AtomicUsize,
    }

    impl Transport for Canned {
        fn get(&self, url: &str, _: Duration) -> Result<String, TransportError> {
            assert!(url.contains("q=1,1,2,5,15,52,203"));
            assert!(url.ends_with("&fmt=json"));
            self.calls.fetch_add(1, Ordering::SeqCst);
            Ok(self.body.to_string())
        }
    }

    const BELL_RESPONSE: &str = r#"[
        {"number": 110, "name": "Bell or exponential numbers", "data": "1,1,2,5,15,52,203"},
        {"number": 203, "name": "something else"}
    ]"#;

    #[test]
    fn offline_seed_answers() {
        let client = OeisClient::with_transport(
            OeisConfig {
                offline: true,
                ..OeisConfig::default()
            },
            NoNetwork,
        );
        let bell = client.lookup(&terms(&[1, 1, 2, 5, 15, 52, 203])).unwrap();
        assert_eq!(bell.source, Source::OfflineSeed);
        assert!(ids(&bell.hits).contains(&"A000110"));
        let motzkin = client
            .lookup(&terms(&[1, 1, 2, 4, 9, 21, 51, 127]))
            .unwrap();
        assert_eq!(ids(&motzkin.hits), ["A001006"]);
        let involution = client.lookup(&terms(&[1, 2, 4, 10])).unwrap();
        assert_eq!(ids(&involution.hits), ["A000085"]);
        let none = client.lookup(&terms(&[3, 1, 4, 1, 5])).unwrap();
        assert!(none.hits.is_empty());
    }

    #[test]
    fn too_few_terms() {
        let client = OeisClient::with_transport(OeisConfig::default(), NoNetwork);
        assert!(matches!(client.lookup(&[]), Err(OeisError::TooFewTerms(0))));
        assert!(matches!(
            client.lookup(&terms(&[1, 2, 3])),
            Err(OeisError::TooFewTerms(3))
        ));
    }

    #[test]
    fn network_failure_degrades() {
        let client = OeisClient::with_transport(OeisConfig::default(), Down);
        let r = client.lookup(&terms(&[1, 2, 5, 14, 42])).unwrap();
        assert!(r.degraded);
        assert_eq!(r.source, Source::OfflineSeed);
        assert_eq!(ids(&r.hits), ["A000108"]);
    }

    #[test]
    fn responses_are_cached() {
        let dir = tempfile::tempdir().unwrap();
        let config = OeisConfig {
            cache_dir: Some(dir.path().join("cache")),
            ..OeisConfig::default()
        };
        let client = OeisClient::with_transport(
            config,
            Canned {
                body: BELL_RESPONSE,
                calls: AtomicUsize::new(0),
            },
        );
        let q = terms(&[1, 1, 2, 5, 15, 52, 203]);
        let first = client.lookup(&q).unwrap();
        assert_eq!(first.source, Source::Network);
        assert_eq!(ids(&first.hits), ["A000110", "A000203"]);
        let second = client.lookup(&q).unwrap();
        assert_eq!(second.source, Source::Cache);
        assert_eq!(second.hits, first.hits);
        assert_eq!(client.transport.calls.load(Ordering::SeqCst), 1);
        assert!(dir
            .path()
            .join("cache")
            .join(format!("{}.json", cache_key(&q)))
            .exists());
    }

    #[test]
    fn response_shapes() {
        assert!(parse_response("null").unwrap().is_empty());
        assert!(parse_response(r#"{"results": null}"#).unwrap().is_empty());
        let old = parse_response(r#"{"results": [{"number": 1006, "name": "Motzkin"}]}"#).unwrap();
        assert_eq!(old[0].id, "A001006");
        assert!(parse_response("<html>").is_err());
        assert!(parse_response(r#"[{"name": "x"}]"#).is_err());
    }
}
