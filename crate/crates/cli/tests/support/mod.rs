#![allow(dead_code)]

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use coauthnet_core::evolve::GrowthRow;
use coauthnet_core::ingest::{write_records, BiblioRecord};

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

pub fn coauthnet(args: &[&str]) -> Output {
    coauthnet_with_env(args, &[])
}

pub fn coauthnet_with_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_coauthnet"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

/// Runs a subcommand with `--output-dir dir` appended; panics on failure.
pub fn run_ok(args: &[&str], dir: &Path) {
    let mut full: Vec<&str> = args.to_vec();
    full.extend(["--output-dir", dir.to_str().unwrap()]);
    let out = coauthnet(&full);
    assert!(
        out.status.success(),
        "{:?} failed: {}",
        full,
        String::from_utf8_lossy(&out.stderr)
    );
}

pub fn read_rows(path: &Path) -> Vec<Vec<String>> {
    let mut reader = csv::ReaderBuilder::new().has_headers(false).from_path(path).unwrap();
    reader
        .records()
        .map(|r| r.unwrap().iter().map(str::to_owned).collect())
        .collect()
}

/// `author -> score` from a centrality CSV.
pub fn read_centrality(path: &Path) -> BTreeMap<String, f64> {
    read_rows(path)
        .into_iter()
        .skip(1)
        .map(|r| (r[0].clone(), r[2].parse().unwrap()))
        .collect()
}

pub fn write_corpus(path: &Path, records: &[BiblioRecord]) {
    let mut buf = Vec::new();
    write_records(records, &mut buf).unwrap();
    fs::write(path, buf).unwrap();
}

/// All files in `dir` with their contents, sorted by name.
pub fn snapshot(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), fs::read(e.path()).unwrap())
        })
        .collect()
}

/// A corpus whose yearly cumulative paper and author counts equal `table`.
/// Each year's papers first take one new author each; surplus new authors
/// join as coauthors, and papers without a new author reuse existing ones.
pub fn corpus_matching_growth(table: &[GrowthRow]) -> Vec<BiblioRecord> {
    let mut records = Vec::new();
    let mut authors_so_far = 0u64;
    let (mut prev_p, mut prev_a) = (0u64, 0u64);
    let name = |i: u64| format!("AUTHOR{i:05}, X");
    for row in table {
        let new_papers = row.papers - prev_p;
        let new_authors = row.authors - prev_a;
        let mut papers: Vec<Vec<String>> = vec![Vec::new(); new_papers as usize];
        for j in 0..new_authors {
            papers[(j % new_papers) as usize].push(name(authors_so_far + j));
        }
        for (k, p) in papers.iter_mut().enumerate() {
            if p.is_empty() {
                // any earlier author keeps the author count unchanged
                p.push(name(k as u64 % authors_so_far.max(1)));
            }
        }
        for authors in papers {
            records.push(BiblioRecord {
                record_id: format!("G{:06}", records.len()),
                authors,
                year: row.year,
                doc_type: "Article".to_owned(),
                times_cited: 0,
                source: "SYNTH".to_owned(),
            });
        }
        authors_so_far += new_authors;
        prev_p = row.papers;
        prev_a = row.authors;
    }
    records
}
