use std::path::PathBuf;

use kostant::report::{paper_report, Report, PAPER_EXAMPLES};

fn golden(id: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{id}.json"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn fixed_examples_match_golden_files() {
    for id in PAPER_EXAMPLES {
        let report = paper_report(id).unwrap();
        assert_eq!(report.to_json() + "\n", golden(id), "{id} drifted from its golden file");
    }
}

#[test]
fn golden_files_parse_back() {
    for id in PAPER_EXAMPLES {
        let text = golden(id);
        let parsed = Report::from_json(&text).unwrap();
        assert_eq!(parsed.to_json() + "\n", text, "{id}");
    }
}
