//! Guards the book/doctest coupling: every chapter listed in the guide's
//! SUMMARY must be included as a doctest module in lib.rs, so its code
//! blocks run under `cargo test --doc`.

use std::path::Path;

#[test]
fn every_chapter_runs_as_doctests() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let book_src = manifest.join("../../book/src");
    let lib_rs = std::fs::read_to_string(manifest.join("src/lib.rs")).unwrap();
    let summary = std::fs::read_to_string(book_src.join("SUMMARY.md")).unwrap();

    let mut chapters = Vec::new();
    for line in summary.lines() {
        if let Some(open) = line.find('(') {
            if let Some(close) = line[open..].find(')') {
                chapters.push(line[open + 1..open + close].to_string());
            }
        }
    }
    assert!(!chapters.is_empty(), "SUMMARY.md lists no chapters");

    for chapter in &chapters {
        let path = book_src.join(chapter);
        assert!(path.exists(), "chapter file {chapter} is missing");
        assert!(
            lib_rs.contains(&format!("book/src/{chapter}")),
            "chapter {chapter} is not included as a doctest module in lib.rs"
        );
    }
}

#[test]
fn chapters_contain_runnable_snippets() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let book_src = manifest.join("../../book/src");
    // The concept chapters must carry at least one runnable snippet each.
    for chapter in [
        "introduction.md",
        "exact-arithmetic.md",
        "groups.md",
        "dirac-heat.md",
        "relations.md",
        "models-actions.md",
        "real-structure.md",
        "laplacian.md",
    ] {
        let text = std::fs::read_to_string(book_src.join(chapter)).unwrap();
        assert!(
            text.contains("```rust"),
            "chapter {chapter} has no runnable snippet"
        );
    }
}
