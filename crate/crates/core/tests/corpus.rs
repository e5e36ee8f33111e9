mod common;

use common::corpus_dir;
use jetforge::text::parse_system;

fn documents() -> Vec<(String, String)> {
    let mut docs: Vec<(String, String)> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "sys"))
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read_to_string(&p).unwrap()))
        .collect();
    docs.sort();
    docs
}

#[test]
fn corpus_round_trips() {
    let docs = documents();
    assert!(docs.len() >= 10);
    for (name, text) in docs {
        let doc = parse_system(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let printed = doc.to_string();
        let again = parse_system(&printed).unwrap_or_else(|e| panic!("{name} reprinted: {e}"));
        assert_eq!(doc, again, "{name}");
        assert_eq!(printed, again.to_string(), "{name}");
    }
}

#[test]
fn broken_documents_report_positions() {
    let dir = corpus_dir().join("bad");
    let want = [("juxtaposed.sys", (4, 2)), ("modulus.sys", (1, 10)), ("syntax.sys", (4, 7)), ("unknown.sys", (4, 5))];
    for (name, pos) in want {
        let text = std::fs::read_to_string(dir.join(name)).unwrap();
        match parse_system(&text) {
            Err(jetforge::Error::Parse { line, column, .. }) => assert_eq!((line, column), pos, "{name}"),
            other => panic!("{name}: {other:?}"),
        }
    }
}
