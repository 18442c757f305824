//! Remote providers against a loopback HTTP stub: the wire contract, the
//! cache interplay, and the degraded-mode fallbacks when the service is
//! down. Everything runs on 127.0.0.1; no external network is involved.

use std::io::{BufRead, BufReader, Write};
use std::net::TcpListener;
use std::sync::{Arc, Mutex};
use std::thread;

use chaff_core::lexicon::{
    FrequencySource, GrammarChecker, GrammarVerdict, RemoteFrequency, RemoteGrammar,
    RemoteReplacements, Relation, ReplacementCache, ReplacementProvider,
};
use chaff_core::text::tokenize;

type Handler = Box<dyn Fn(&str) -> String + Send>;

/// Serves canned JSON per path until the process exits. Every request is
/// logged as (path, decoded word) so tests can count provider calls.
fn spawn_stub(routes: Vec<(&'static str, Handler)>) -> (String, Arc<Mutex<Vec<(String, String)>>>) {
    let listener = TcpListener::bind("127.0.0.1:0").expect("loopback listener");
    let url = format!("http://{}", listener.local_addr().unwrap());
    let log = Arc::new(Mutex::new(Vec::new()));
    let seen = log.clone();
    thread::spawn(move || {
        for stream in listener.incoming() {
            let Ok(mut stream) = stream else { continue };
            let mut reader = BufReader::new(match stream.try_clone() {
                Ok(s) => s,
                Err(_) => continue,
            });
            let mut request = String::new();
            if reader.read_line(&mut request).is_err() {
                continue;
            }
            loop {
                let mut header = String::new();
                match reader.read_line(&mut header) {
                    Ok(0) | Err(_) => break,
                    Ok(_) if header == "\r\n" => break,
                    Ok(_) => {}
                }
            }
            let target = request.split_whitespace().nth(1).unwrap_or("/");
            let (path, query) = target.split_once('?').unwrap_or((target, ""));
            let word = query
                .split('&')
                .find_map(|kv| kv.strip_prefix("word="))
                .map(url_decode)
                .unwrap_or_default();
            seen.lock().unwrap().push((path.to_string(), word.clone()));
            let body = routes
                .iter()
                .find(|(p, _)| *p == path)
                .map(|(_, handler)| handler(&word));
            let response = match body {
                Some(body) => format!(
                    "HTTP/1.1 200 OK\r\ncontent-type: application/json\r\n\
                     content-length: {}\r\nconnection: close\r\n\r\n{body}",
                    body.len()
                ),
                None => "HTTP/1.1 404 Not Found\r\ncontent-length: 0\r\nconnection: close\r\n\r\n"
                    .to_string(),
            };
            let _ = stream.write_all(response.as_bytes());
        }
    });
    (url, log)
}

fn url_decode(s: &str) -> String {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'+' {
            out.push(b' ');
            i += 1;
        } else if bytes[i] == b'%' && i + 2 < bytes.len() {
            let hex = std::str::from_utf8(&bytes[i + 1..i + 3]).unwrap_or("");
            match u8::from_str_radix(hex, 16) {
                Ok(v) => {
                    out.push(v);
                    i += 3;
                }
                Err(_) => {
                    out.push(b'%');
                    i += 1;
                }
            }
        } else {
            out.push(bytes[i]);
            i += 1;
        }
    }
    String::from_utf8_lossy(&out).into_owned()
}

/// A port with nothing listening; connections are refused immediately.
fn dead_url() -> String {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let url = format!("http://{}", listener.local_addr().unwrap());
    drop(listener);
    url
}

#[test]
fn replacement_provider_merges_both_services_and_caches() {
    let (url, log) = spawn_stub(vec![
        (
            "/thesaurus",
            Box::new(|word: &str| {
                assert_eq!(word, "addition");
                r#"{"synonyms":["gain","Increase"],"antonyms":["loss"]}"#.to_string()
            }),
        ),
        (
            "/assoc",
            Box::new(|_: &str| r#"{"associated":["arithmetic","addition"]}"#.to_string()),
        ),
    ]);
    let provider =
        RemoteReplacements::new(&format!("{url}/thesaurus"), &format!("{url}/assoc"));
    let cache = ReplacementCache::in_memory();

    let set = cache.lookup("Addition", &provider);
    let got: Vec<(&str, Relation)> =
        set.candidates.iter().map(|c| (c.text.as_str(), c.relation)).collect();
    // Lowercased, merged across both services, and the word itself dropped.
    assert_eq!(
        got,
        vec![
            ("gain", Relation::Synonym),
            ("increase", Relation::Synonym),
            ("loss", Relation::Antonym),
            ("arithmetic", Relation::Associated),
        ]
    );
    assert_eq!(log.lock().unwrap().len(), 2, "one call per service");

    let again = cache.lookup("addition", &provider);
    assert_eq!(again.candidates, set.candidates);
    assert_eq!(log.lock().unwrap().len(), 2, "cache hit makes no calls");
}

#[test]
fn replacement_miss_on_a_dead_service_degrades_to_empty_with_warning() {
    let provider = RemoteReplacements::new(&dead_url(), &dead_url());
    let cache = ReplacementCache::in_memory();
    let set = cache.lookup("tonnage", &provider);
    assert!(set.is_empty());
    assert!(!cache.contains("tonnage"), "failures are not cached");
    let warnings = cache.warnings();
    assert!(
        warnings.iter().any(|w| w.contains("tonnage") && w.contains("unreachable")),
        "{warnings:?}"
    );
}

#[test]
fn malformed_service_json_also_degrades_to_empty() {
    let (url, _) = spawn_stub(vec![
        ("/thesaurus", Box::new(|_: &str| "not json at all".to_string())),
        ("/assoc", Box::new(|_: &str| "{}".to_string())),
    ]);
    let provider =
        RemoteReplacements::new(&format!("{url}/thesaurus"), &format!("{url}/assoc"));
    let cache = ReplacementCache::in_memory();
    assert!(cache.lookup("cargo", &provider).is_empty());
    assert!(cache.warnings().iter().any(|w| w.contains("cargo")));
}

#[test]
fn frequency_provider_queries_space_joined_bigrams() {
    let (url, log) = spawn_stub(vec![(
        "/freq",
        Box::new(|word: &str| {
            let count = match word {
                "of the" => 99,
                "of" => 12,
                _ => 0,
            };
            format!("{{\"count\":{count}}}")
        }),
    )]);
    let remote = RemoteFrequency::new(&format!("{url}/freq"));
    assert_eq!(remote.bigram("of", "the"), 99);
    assert_eq!(remote.unigram("of"), 12);
    assert_eq!(remote.unigram("qzv"), 0);
    let calls = log.lock().unwrap();
    assert_eq!(calls[0], ("/freq".to_string(), "of the".to_string()));
    assert!(remote.warnings().is_empty());
}

#[test]
fn dead_frequency_service_falls_back_to_the_bundled_table() {
    let remote = RemoteFrequency::new(&dead_url());
    // 15 is the bundled of-the count; the remote answer would differ.
    assert_eq!(remote.bigram("of", "the"), 15);
    let warnings = remote.warnings();
    assert!(warnings.iter().any(|w| w.contains("unreachable")), "{warnings:?}");
}

#[test]
fn grammar_provider_is_authoritative_when_up() {
    let (url, log) = spawn_stub(vec![(
        "/grammar",
        Box::new(|sentence: &str| {
            if sentence.contains("anomaly") {
                r#"{"ok":false,"violations":["flagged by service"]}"#.to_string()
            } else {
                r#"{"ok":true}"#.to_string()
            }
        }),
    )]);
    let remote = RemoteGrammar::new(&format!("{url}/grammar"));

    let doc = tokenize("The anomaly spread. The ledger balanced.");
    let sentences: Vec<_> = doc.sentences().collect();
    match remote.check(&sentences[0].tokens) {
        GrammarVerdict::Violations(v) => assert_eq!(v, vec!["flagged by service"]),
        GrammarVerdict::Ok => panic!("service said not ok"),
    }
    assert!(remote.check(&sentences[1].tokens).is_ok());
    // The whole sentence travels as one query parameter.
    assert_eq!(log.lock().unwrap()[0].1, "The anomaly spread .");
}

#[test]
fn dead_grammar_service_falls_back_to_local_rules_with_warning() {
    let remote = RemoteGrammar::new(&dead_url());
    let doc = tokenize("The the ledger balanced.");
    let sentence = &doc.sentences().next().unwrap().tokens;
    match remote.check(sentence) {
        GrammarVerdict::Violations(v) => {
            assert!(v.iter().any(|m| m.contains("duplicate adjacent")), "{v:?}");
        }
        GrammarVerdict::Ok => panic!("local rules flag the duplicate"),
    }
    assert!(remote.warnings().iter().any(|w| w.contains("unreachable")));
}

#[test]
fn fetch_error_type_is_provider() {
    let provider = RemoteReplacements::new(&dead_url(), &dead_url());
    match provider.fetch("word") {
        Err(chaff_core::Error::Provider(msg)) => assert!(msg.contains("word")),
        other => panic!("want Provider error, got {other:?}"),
    }
}
