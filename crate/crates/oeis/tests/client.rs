use std::cell::{Cell, RefCell};
use std::time::Duration;

use latpath_oeis::{
    cached_entries, fixture, Mode, OeisClient, OeisError, Source, Transport,
};

/// Serves canned bodies and counts requests.
struct Scripted {
    calls: Cell<usize>,
    urls: RefCell<Vec<String>>,
    reply: Box<dyn Fn(usize) -> Result<String, OeisError>>,
}

impl Scripted {
    fn new(reply: impl Fn(usize) -> Result<String, OeisError> + 'static) -> Self {
        Scripted {
            calls: Cell::new(0),
            urls: RefCell::new(Vec::new()),
            reply: Box::new(reply),
        }
    }
}

impl Transport for Scripted {
    fn get(&self, url: &str) -> Result<String, OeisError> {
        let n = self.calls.get();
        self.calls.set(n + 1);
        self.urls.borrow_mut().push(url.to_string());
        (self.reply)(n)
    }
}

const CENTRAL: &str =
    r#"[{"number": 1700, "data": "1,3,10,35,126,462,1716,6435,24310", "name": "binomial(2n+1, n+1)"}]"#;

fn panicking() -> Scripted {
    Scripted::new(|_| panic!("cache-only lookups must not touch the transport"))
}

#[test]
fn motzkin_and_a026418_prefixes_are_found_offline() {
    let client = OeisClient::with_transport(panicking(), None);
    let hit = client.lookup(&[1, 1, 2, 4, 9, 21, 51], Mode::CacheOnly).unwrap();
    assert!(hit.entries.iter().any(|e| e.a_number == "A001006"));
    let hit = client.lookup(&[1, 2, 4, 9, 21, 51, 127, 323], Mode::CacheOnly).unwrap();
    assert!(hit.entries.iter().any(|e| e.a_number == "A001006"));
    let hit = client.lookup(&[1, 2, 3, 6, 11, 22, 43], Mode::CacheOnly).unwrap();
    assert_eq!(hit.entries.len(), 1);
    assert_eq!(hit.entries[0].a_number, "A026418");
    assert_eq!(hit.source, Source::Cache);
}

#[test]
fn skew_row_has_no_fixture_match() {
    let client = OeisClient::with_transport(panicking(), None);
    let miss = client.lookup(&[1, 3, 10, 35, 126, 463, 1728], Mode::CacheOnly).unwrap();
    assert!(miss.entries.is_empty());
}

#[test]
fn short_queries_are_rejected() {
    let client = OeisClient::with_transport(panicking(), None);
    assert!(matches!(client.lookup(&[], Mode::CacheOnly), Err(OeisError::TooFewTerms(0))));
    assert!(matches!(
        client.lookup(&[1, 2, 3], Mode::Network),
        Err(OeisError::TooFewTerms(3))
    ));
}

#[test]
fn off_mode_does_nothing() {
    let client = OeisClient::with_transport(panicking(), None);
    let r = client.lookup(&[1, 1, 2, 4, 9, 21], Mode::Off).unwrap();
    assert!(r.entries.is_empty());
    assert_eq!(r.source, Source::Disabled);
}

#[test]
fn network_results_are_cached_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("nested").join("oeis.jsonl");
    let client = OeisClient::with_transport(Scripted::new(|_| Ok(CENTRAL.to_string())), Some(cache.clone()));
    let query = [1, 3, 10, 35, 126, 462];

    let first = client.lookup(&query, Mode::Network).unwrap();
    assert_eq!(first.source, Source::Network);
    assert_eq!(first.entries[0].a_number, "A001700");
    assert_eq!(client.transport().calls.get(), 1);
    assert_eq!(
        client.transport().urls.borrow()[0],
        "https://oeis.org/search?q=1,3,10,35,126,462&fmt=json"
    );

    let second = client.lookup(&query, Mode::Network).unwrap();
    assert_eq!(second.source, Source::Cache);
    assert_eq!(second.entries, first.entries);
    assert_eq!(client.transport().calls.get(), 1);

    // a fresh client (and cache-only mode) sees the cached entry too
    let offline = OeisClient::with_transport(panicking(), Some(cache.clone()));
    let third = offline.lookup(&[10, 35, 126, 462, 1716, 6435], Mode::CacheOnly).unwrap();
    assert_eq!(third.entries, first.entries);
    assert_eq!(cached_entries(&cache).unwrap().len(), 1);
}

#[test]
fn misses_are_cached_too() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("oeis.jsonl");
    let client = OeisClient::with_transport(Scripted::new(|_| Ok("null".to_string())), Some(cache.clone()));
    let query = [1, 3, 10, 35, 126, 463, 1728];
    assert!(client.lookup(&query, Mode::Network).unwrap().entries.is_empty());
    assert!(client.lookup(&query, Mode::Network).unwrap().entries.is_empty());
    assert_eq!(client.transport().calls.get(), 1);
    assert!(cached_entries(&cache).unwrap().is_empty());
}

#[test]
fn network_failure_degrades_to_a_warning() {
    let client = OeisClient::with_transport(
        Scripted::new(|_| Err(OeisError::NetworkUnavailable("connection refused".into()))),
        None,
    )
    .retries(2, Duration::from_millis(1));
    let r = client.lookup(&[1, 3, 10, 35, 126, 463], Mode::Network).unwrap();
    assert!(r.entries.is_empty());
    assert_eq!(r.warnings.len(), 1);
    assert!(r.warnings[0].contains("connection refused"));
    assert_eq!(client.transport().calls.get(), 3);
}

#[test]
fn transient_failure_is_retried() {
    let client = OeisClient::with_transport(
        Scripted::new(|n| {
            if n == 0 {
                Err(OeisError::NetworkUnavailable("timeout".into()))
            } else {
                Ok(CENTRAL.to_string())
            }
        }),
        None,
    )
    .retries(3, Duration::from_millis(1));
    let r = client.lookup(&[1, 3, 10, 35, 126, 462], Mode::Network).unwrap();
    assert_eq!(r.entries.len(), 1);
    assert!(r.warnings.is_empty());
    assert_eq!(client.transport().calls.get(), 2);
}

#[test]
fn entries_not_containing_the_query_are_dropped() {
    // the search engine also returns near matches
    let body = r#"[{"number": 108, "data": "1,1,2,5,14,42,132", "name": "Catalan"},
                   {"number": 1700, "data": "1,3,10,35,126,462", "name": "central"}]"#;
    let client = OeisClient::with_transport(Scripted::new(move |_| Ok(body.to_string())), None);
    let r = client.lookup(&[1, 3, 10, 35, 126, 462], Mode::Network).unwrap();
    let ids: Vec<_> = r.entries.iter().map(|e| e.a_number.as_str()).collect();
    assert_eq!(ids, ["A001700"]);
}

#[test]
fn corrupt_cache_lines_are_skipped() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("oeis.jsonl");
    let good = r#"{"entry":{"a_number":"A001700","terms":[1,3,10,35,126,462],"name":"c"}}"#;
    std::fs::write(&cache, format!("{{not json\n{good}\n")).unwrap();
    let client = OeisClient::with_transport(panicking(), Some(cache));
    let r = client.lookup(&[1, 3, 10, 35, 126, 462], Mode::CacheOnly).unwrap();
    assert_eq!(r.entries.len(), 1);
}

#[test]
fn fixture_prefixes() {
    assert_eq!(fixture("A000071").unwrap().terms[..8], [0, 0, 1, 2, 4, 7, 12, 20]);
    assert_eq!(fixture("A026418").unwrap().terms, [1, 2, 3, 6, 11, 22, 43, 87, 176]);
    assert!(fixture("A999999").is_none());
}
