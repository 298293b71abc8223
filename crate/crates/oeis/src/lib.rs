//! OEIS lookups with a vendored fixture set and a JSON-lines disk cache.
//!
//! A query matches an entry when the query terms occur as a contiguous run
//! of the entry's terms, so differing offsets do not matter. Lookups are
//! cache-first; in [`Mode::Network`] a miss goes to the public JSON search
//! endpoint and the normalized answer (including "no match") is appended to
//! the cache file.

use std::fs::{self, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::thread;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const MIN_QUERY_TERMS: usize = 6;
pub const SEARCH_ENDPOINT: &str = "https://oeis.org/search";

const FIXTURES: &str = include_str!("../fixtures/oeis_fixtures.jsonl");

#[derive(Debug, Error)]
pub enum OeisError {
    #[error("a lookup needs at least {MIN_QUERY_TERMS} terms, got {0}")]
    TooFewTerms(usize),
    #[error("OEIS is unreachable: {0}")]
    NetworkUnavailable(String),
    #[error("malformed OEIS response: {0}")]
    MalformedResponse(String),
    #[error("invalid A-number {0:?}")]
    InvalidANumber(String),
    #[error("cache file {path}: {source}")]
    Cache {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("unknown lookup mode {0:?}; expected off, cache-only or network")]
    UnknownMode(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OeisEntry {
    pub a_number: String,
    pub terms: Vec<i128>,
    pub name: String,
}

fn valid_a_number(id: &str) -> bool {
    id.len() == 7 && id.starts_with('A') && id[1..].bytes().all(|b| b.is_ascii_digit())
}

impl OeisEntry {
    pub fn new(a_number: impl Into<String>, terms: Vec<i128>, name: impl Into<String>) -> Result<Self, OeisError> {
        let a_number = a_number.into();
        if !valid_a_number(&a_number) {
            return Err(OeisError::InvalidANumber(a_number));
        }
        if terms.is_empty() {
            return Err(OeisError::MalformedResponse(format!("{a_number} has no terms")));
        }
        Ok(OeisEntry {
            a_number,
            terms,
            name: name.into(),
        })
    }

    /// True iff `query` occurs as a contiguous run of the terms.
    pub fn contains_run(&self, query: &[i128]) -> bool {
        !query.is_empty()
            && query.len() <= self.terms.len()
            && self.terms.windows(query.len()).any(|w| w == query)
    }
}

/// The bundled entries: the classical path-counting sequences plus those
/// that the class tables are known to hit.
pub fn fixtures() -> Vec<OeisEntry> {
    FIXTURES
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).expect("vendored fixture line is valid JSON"))
        .collect()
}

/// A bundled entry by A-number.
pub fn fixture(a_number: &str) -> Option<OeisEntry> {
    fixtures().into_iter().find(|e| e.a_number == a_number)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    Off,
    #[default]
    CacheOnly,
    Network,
}

impl FromStr for Mode {
    type Err = OeisError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "off" => Ok(Mode::Off),
            "cache-only" | "cache" => Ok(Mode::CacheOnly),
            "network" => Ok(Mode::Network),
            other => Err(OeisError::UnknownMode(other.to_string())),
        }
    }
}

/// Fetches a URL as text.
pub trait Transport {
    fn get(&self, url: &str) -> Result<String, OeisError>;
}

/// HTTPS transport over `ureq`.
pub struct HttpTransport {
    agent: ureq::Agent,
}

impl HttpTransport {
    pub fn new(timeout: Duration) -> Self {
        let agent = ureq::Agent::config_builder()
            .timeout_global(Some(timeout))
            .user_agent("latpath-oeis/0.1")
            .build()
            .into();
        HttpTransport { agent }
    }
}

impl Default for HttpTransport {
    fn default() -> Self {
        HttpTransport::new(Duration::from_secs(15))
    }
}

impl Transport for HttpTransport {
    fn get(&self, url: &str) -> Result<String, OeisError> {
        let mut response = self
            .agent
            .get(url)
            .call()
            .map_err(|e| OeisError::NetworkUnavailable(e.to_string()))?;
        response
            .body_mut()
            .read_to_string()
            .map_err(|e| OeisError::NetworkUnavailable(e.to_string()))
    }
}

pub fn search_url(terms: &[i128]) -> String {
    let q: Vec<String> = terms.iter().map(i128::to_string).collect();
    format!("{SEARCH_ENDPOINT}?q={}&fmt=json", q.join(","))
}

#[derive(Deserialize)]
struct RawResult {
    number: u64,
    #[serde(default)]
    data: String,
    #[serde(default)]
    name: String,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawResponse {
    List(Option<Vec<RawResult>>),
    Wrapped { results: Option<Vec<RawResult>> },
}

/// Parses a search response. Both the bare-array and the older
/// `{"results": [...]}` shapes are accepted; `null` means no match. Terms
/// too large for `i128` end the term list.
pub fn parse_search_response(body: &str) -> Result<Vec<OeisEntry>, OeisError> {
    let raw: RawResponse =
        serde_json::from_str(body).map_err(|e| OeisError::MalformedResponse(e.to_string()))?;
    let results = match raw {
        RawResponse::List(r) | RawResponse::Wrapped { results: r } => r.unwrap_or_default(),
    };
    results
        .into_iter()
        .map(|r| {
            let terms: Vec<i128> = r
                .data
                .split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map_while(|t| t.parse().ok())
                .collect();
            OeisEntry::new(format!("A{:06}", r.number), terms, r.name)
        })
        .collect()
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum CacheRecord {
    Entry(OeisEntry),
    /// A network query that matched nothing.
    Miss(Vec<i128>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Disabled,
    Cache,
    Network,
}

#[derive(Debug)]
pub struct Lookup {
    pub entries: Vec<OeisEntry>,
    pub source: Source,
    /// Non-fatal problems, such as an unreachable network.
    pub warnings: Vec<String>,
}

pub struct OeisClient<T: Transport = HttpTransport> {
    transport: T,
    cache_path: Option<PathBuf>,
    retries: u32,
    backoff: Duration,
}

impl OeisClient<HttpTransport> {
    pub fn new(cache_path: Option<PathBuf>) -> Self {
        OeisClient::with_transport(HttpTransport::default(), cache_path)
    }
}

impl<T: Transport> OeisClient<T> {
    pub fn with_transport(transport: T, cache_path: Option<PathBuf>) -> Self {
        OeisClient {
            transport,
            cache_path,
            retries: 2,
            backoff: Duration::from_millis(250),
        }
    }

    pub fn retries(mut self, retries: u32, backoff: Duration) -> Self {
        self.retries = retries;
        self.backoff = backoff;
        self
    }

    pub fn transport(&self) -> &T {
        &self.transport
    }

    fn read_cache(&self) -> Result<Vec<CacheRecord>, OeisError> {
        let Some(path) = &self.cache_path else {
            return Ok(Vec::new());
        };
        let file = match fs::File::open(path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(source) => {
                return Err(OeisError::Cache {
                    path: path.clone(),
                    source,
                })
            }
        };
        let mut records = Vec::new();
        for line in BufReader::new(file).lines() {
            let line = line.map_err(|source| OeisError::Cache {
                path: path.clone(),
                source,
            })?;
            // a torn or foreign line is skipped, not fatal
            if let Ok(r) = serde_json::from_str(&line) {
                records.push(r);
            }
        }
        Ok(records)
    }

    fn append_cache(&self, records: &[CacheRecord]) -> Result<(), OeisError> {
        let Some(path) = &self.cache_path else {
            return Ok(());
        };
        let io = |source| OeisError::Cache {
            path: path.clone(),
            source,
        };
        if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir).map_err(io)?;
        }
        let mut file = OpenOptions::new().create(true).append(true).open(path).map_err(io)?;
        for r in records {
            // one write per record keeps lines whole under concurrent appends
            let mut line = serde_json::to_string(r).expect("cache records serialize");
            line.push('\n');
            file.write_all(line.as_bytes()).map_err(io)?;
        }
        Ok(())
    }

    /// Fixture and cache matches, plus whether the query is a recorded miss.
    fn local(&self, terms: &[i128]) -> Result<(Vec<OeisEntry>, bool), OeisError> {
        let mut hits: Vec<OeisEntry> = fixtures().into_iter().filter(|e| e.contains_run(terms)).collect();
        let mut known_miss = false;
        for record in self.read_cache()? {
            match record {
                CacheRecord::Entry(e) if e.contains_run(terms) => {
                    if !hits.iter().any(|h| h.a_number == e.a_number) {
                        hits.push(e);
                    }
                }
                CacheRecord::Miss(q) if q == terms => known_miss = true,
                _ => {}
            }
        }
        hits.sort_by(|a, b| a.a_number.cmp(&b.a_number));
        Ok((hits, known_miss))
    }

    fn fetch(&self, terms: &[i128]) -> Result<Vec<OeisEntry>, OeisError> {
        let url = search_url(terms);
        let mut delay = self.backoff;
        let mut attempt = 0;
        loop {
            match self.transport.get(&url) {
                Ok(body) => return parse_search_response(&body),
                Err(OeisError::NetworkUnavailable(_)) if attempt < self.retries => {
                    attempt += 1;
                    thread::sleep(delay);
                    delay *= 2;
                }
                Err(e) => return Err(e),
            }
        }
    }

    pub fn lookup(&self, terms: &[i128], mode: Mode) -> Result<Lookup, OeisError> {
        if terms.len() < MIN_QUERY_TERMS {
            return Err(OeisError::TooFewTerms(terms.len()));
        }
        if mode == Mode::Off {
            return Ok(Lookup {
                entries: Vec::new(),
                source: Source::Disabled,
                warnings: Vec::new(),
            });
        }
        let (hits, known_miss) = self.local(terms)?;
        if mode == Mode::CacheOnly || !hits.is_empty() || known_miss {
            return Ok(Lookup {
                entries: hits,
                source: Source::Cache,
                warnings: Vec::new(),
            });
        }
        match self.fetch(terms) {
            Ok(found) => {
                let mut entries: Vec<OeisEntry> = found.into_iter().filter(|e| e.contains_run(terms)).collect();
                entries.sort_by(|a, b| a.a_number.cmp(&b.a_number));
                let records: Vec<CacheRecord> = if entries.is_empty() {
                    vec![CacheRecord::Miss(terms.to_vec())]
                } else {
                    entries.iter().cloned().map(CacheRecord::Entry).collect()
                };
                self.append_cache(&records)?;
                Ok(Lookup {
                    entries,
                    source: Source::Network,
                    warnings: Vec::new(),
                })
            }
            Err(e @ (OeisError::NetworkUnavailable(_) | OeisError::MalformedResponse(_))) => Ok(Lookup {
                entries: hits,
                source: Source::Cache,
                warnings: vec![format!("{e}; falling back to cached data")],
            }),
            Err(e) => Err(e),
        }
    }
}

/// Default cache location: `$LATPATH_OEIS_CACHE`, else none.
pub fn default_cache_path() -> Option<PathBuf> {
    std::env::var_os("LATPATH_OEIS_CACHE").map(PathBuf::from)
}

/// Reads every cached entry (not misses) from a cache file.
pub fn cached_entries(path: &Path) -> Result<Vec<OeisEntry>, OeisError> {
    let client = OeisClient::with_transport(Offline, Some(path.to_path_buf()));
    Ok(client
        .read_cache()?
        .into_iter()
        .filter_map(|r| match r {
            CacheRecord::Entry(e) => Some(e),
            CacheRecord::Miss(_) => None,
        })
        .collect())
}

/// A transport that never connects.
pub struct Offline;

impl Transport for Offline {
    fn get(&self, _url: &str) -> Result<String, OeisError> {
        Err(OeisError::NetworkUnavailable("offline transport".into()))
    }
}
