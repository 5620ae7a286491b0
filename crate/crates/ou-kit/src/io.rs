//! Versioned text file formats: matrices, assembled forms, generator words,
//! campaign reports, and counterexamples. All documents are JSON with exact
//! element literals; serialization is byte-stable for canonical literals.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::campaign::{Counterexample, Report, ReportBody};
use crate::matrix::{Mat, RowVec};
use crate::ring::Ring;
use crate::vaserstein::HyperbolicFormData;
use crate::words::{ElementaryWord, GeneratorLetter, GeneratorWord};
use crate::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

fn check_version(found: u32) -> Result<()> {
    if found != FORMAT_VERSION {
        return Err(Error::Format(format!(
            "unsupported format_version {found} (expected {FORMAT_VERSION})"
        )));
    }
    Ok(())
}

/// Errors when a document's ring header differs from the session ring.
pub fn expect_ring(session: &Ring, found: &Ring) -> Result<()> {
    if session != found {
        return Err(Error::Format(format!(
            "ring mismatch: file carries `{found}`, session uses `{session}`"
        )));
    }
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct MatrixDoc {
    format_version: u32,
    ring: String,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

fn matrix_entries(m: &Mat) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.at(i, j).to_string()).collect())
        .collect()
}

fn entries_to_matrix(
    ring: &Ring,
    rows: usize,
    cols: usize,
    entries: &[Vec<String>],
) -> Result<Mat> {
    if entries.len() != rows {
        return Err(Error::Format(format!(
            "expected {rows} entry rows, found {}",
            entries.len()
        )));
    }
    let mut parsed = Vec::with_capacity(rows * cols);
    for (i, row) in entries.iter().enumerate() {
        if row.len() != cols {
            return Err(Error::Format(format!(
                "row {}: expected {cols} entries, found {}",
                i + 1,
                row.len()
            )));
        }
        for (j, lit) in row.iter().enumerate() {
            let e = ring.parse(lit).map_err(|err| {
                Error::Format(format!("entry ({},{}): {err}", i + 1, j + 1))
            })?;
            parsed.push(e);
        }
    }
    Mat::new(ring.clone(), rows, cols, parsed)
}

/// Canonical JSON text of a matrix document.
pub fn matrix_to_json(m: &Mat) -> String {
    let doc = MatrixDoc {
        format_version: FORMAT_VERSION,
        ring: m.ring().to_string(),
        rows: m.rows(),
        cols: m.cols(),
        entries: matrix_entries(m),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("matrix serializes");
    s.push('\n');
    s
}

pub fn matrix_from_json(text: &str) -> Result<Mat> {
    let doc: MatrixDoc = serde_json::from_str(text)?;
    check_version(doc.format_version)?;
    let ring = Ring::from_descriptor(&doc.ring)?;
    entries_to_matrix(&ring, doc.rows, doc.cols, &doc.entries)
}

pub fn write_matrix_file(path: &Path, m: &Mat) -> Result<()> {
    fs::write(path, matrix_to_json(m))?;
    Ok(())
}

pub fn parse_matrix_file(path: &Path) -> Result<Mat> {
    matrix_from_json(&fs::read_to_string(path)?)
}

#[derive(Serialize, Deserialize)]
struct FormDoc {
    format_version: u32,
    ring: String,
    m: usize,
    n: usize,
    phi: Vec<Vec<String>>,
    phi_inv: Vec<Vec<String>>,
}

/// Form files persist (ring, m, n, φ, φ⁻¹); the derived blocks are rebuilt
/// on load, re-running the assembly invariants.
pub fn form_to_json(data: &HyperbolicFormData) -> String {
    let doc = FormDoc {
        format_version: FORMAT_VERSION,
        ring: data.ring().to_string(),
        m: data.rank(),
        n: data.v0_dim(),
        phi: matrix_entries(data.phi()),
        phi_inv: matrix_entries(data.phi_inv()),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("form serializes");
    s.push('\n');
    s
}

pub fn form_from_json(text: &str) -> Result<HyperbolicFormData> {
    let doc: FormDoc = serde_json::from_str(text)?;
    check_version(doc.format_version)?;
    let ring = Ring::from_descriptor(&doc.ring)?;
    let phi = entries_to_matrix(&ring, doc.n, doc.n, &doc.phi)?;
    let phi_inv = entries_to_matrix(&ring, doc.n, doc.n, &doc.phi_inv)?;
    HyperbolicFormData::assemble(&ring, doc.m, doc.n, phi, Some(phi_inv))
}

pub fn write_form_file(path: &Path, data: &HyperbolicFormData) -> Result<()> {
    fs::write(path, form_to_json(data))?;
    Ok(())
}

pub fn parse_form_file(path: &Path) -> Result<HyperbolicFormData> {
    form_from_json(&fs::read_to_string(path)?)
}

/// Either word flavor, for serialization.
#[derive(Debug, Clone)]
pub enum WordFile {
    Elementary(ElementaryWord),
    Generator(GeneratorWord),
}

#[derive(Serialize, Deserialize)]
struct WordDoc {
    format_version: u32,
    ring: String,
    size: usize,
    kind: String,
    letters: Vec<Value>,
}

fn vec_to_literals(v: &RowVec) -> Value {
    Value::Array(v.entries().iter().map(|e| Value::String(e.to_string())).collect())
}

/// Words serialize as tagged arrays: ["E", i, j, "a"] for elementary letters,
/// ["THETA"/"ETA", ["a1", …, "aN"]] for generator letters.
pub fn word_to_json(word: &WordFile) -> String {
    let (ring, size, kind, letters) = match word {
        WordFile::Elementary(w) => (
            w.ring().to_string(),
            w.size(),
            "elementary",
            w.letters()
                .iter()
                .map(|l| {
                    Value::Array(vec![
                        Value::String("E".into()),
                        Value::from(l.i),
                        Value::from(l.j),
                        Value::String(l.a.to_string()),
                    ])
                })
                .collect(),
        ),
        WordFile::Generator(w) => (
            w.ring().to_string(),
            w.n_dim(),
            "generator",
            w.letters()
                .iter()
                .map(|l| match l {
                    GeneratorLetter::Theta(v) => {
                        Value::Array(vec![Value::String("THETA".into()), vec_to_literals(v)])
                    }
                    GeneratorLetter::Eta(v) => {
                        Value::Array(vec![Value::String("ETA".into()), vec_to_literals(v)])
                    }
                })
                .collect(),
        ),
    };
    let doc = WordDoc {
        format_version: FORMAT_VERSION,
        ring,
        size,
        kind: kind.into(),
        letters,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("word serializes");
    s.push('\n');
    s
}

fn letter_error(idx: usize, what: &str) -> Error {
    Error::Format(format!("letter {}: {what}", idx + 1))
}

fn parse_vector_value(ring: &Ring, size: usize, idx: usize, value: &Value) -> Result<RowVec> {
    let arr = value
        .as_array()
        .ok_or_else(|| letter_error(idx, "expected an array of literals"))?;
    if arr.len() != size {
        return Err(letter_error(idx, &format!("expected {size} coordinates, found {}", arr.len())));
    }
    let mut entries = Vec::with_capacity(size);
    for (k, lit) in arr.iter().enumerate() {
        let s = lit
            .as_str()
            .ok_or_else(|| letter_error(idx, &format!("coordinate {}: expected a string", k + 1)))?;
        entries.push(
            ring.parse(s)
                .map_err(|e| letter_error(idx, &format!("coordinate {}: {e}", k + 1)))?,
        );
    }
    Ok(RowVec::new(ring.clone(), entries))
}

pub fn word_from_json(text: &str) -> Result<WordFile> {
    let doc: WordDoc = serde_json::from_str(text)?;
    check_version(doc.format_version)?;
    let ring = Ring::from_descriptor(&doc.ring)?;
    match doc.kind.as_str() {
        "elementary" => {
            let mut word = ElementaryWord::new(ring.clone(), doc.size);
            for (idx, letter) in doc.letters.iter().enumerate() {
                let arr = letter
                    .as_array()
                    .ok_or_else(|| letter_error(idx, "expected a tagged array"))?;
                if arr.len() != 4 || arr[0].as_str() != Some("E") {
                    return Err(letter_error(idx, "expected [\"E\", i, j, \"a\"]"));
                }
                let i = arr[1]
                    .as_u64()
                    .ok_or_else(|| letter_error(idx, "i must be an integer"))?
                    as usize;
                let j = arr[2]
                    .as_u64()
                    .ok_or_else(|| letter_error(idx, "j must be an integer"))?
                    as usize;
                let a = arr[3]
                    .as_str()
                    .ok_or_else(|| letter_error(idx, "a must be a string literal"))?;
                let a = ring
                    .parse(a)
                    .map_err(|e| letter_error(idx, &format!("{e}")))?;
                word.push(i, j, a)
                    .map_err(|e| letter_error(idx, &format!("{e}")))?;
            }
            Ok(WordFile::Elementary(word))
        }
        "generator" => {
            let mut word = GeneratorWord::new(ring.clone(), doc.size);
            for (idx, letter) in doc.letters.iter().enumerate() {
                let arr = letter
                    .as_array()
                    .ok_or_else(|| letter_error(idx, "expected a tagged array"))?;
                if arr.len() != 2 {
                    return Err(letter_error(idx, "expected [tag, vector]"));
                }
                let v = parse_vector_value(&ring, doc.size, idx, &arr[1])?;
                let l = match arr[0].as_str() {
                    Some("THETA") => GeneratorLetter::Theta(v),
                    Some("ETA") => GeneratorLetter::Eta(v),
                    _ => return Err(letter_error(idx, "tag must be THETA or ETA")),
                };
                word.push(l).map_err(|e| letter_error(idx, &format!("{e}")))?;
            }
            Ok(WordFile::Generator(word))
        }
        other => Err(Error::Format(format!("unknown word kind `{other}`"))),
    }
}

pub fn write_word_file(path: &Path, word: &WordFile) -> Result<()> {
    fs::write(path, word_to_json(word))?;
    Ok(())
}

pub fn parse_word_file(path: &Path) -> Result<WordFile> {
    word_from_json(&fs::read_to_string(path)?)
}

#[derive(Serialize)]
struct ReportDoc<'a> {
    body: &'a ReportBody,
    timings_ms: &'a [(String, u128)],
}

#[derive(Deserialize)]
struct ReportDocOwned {
    body: ReportBody,
    timings_ms: Vec<(String, u128)>,
}

/// The report file holds the deterministic body plus a timing appendix; only
/// the body is seed-reproducible.
pub fn report_to_json(report: &Report) -> String {
    let doc = ReportDoc { body: &report.body, timings_ms: &report.timings_ms };
    let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
    s.push('\n');
    s
}

pub fn write_report_file(path: &Path, report: &Report) -> Result<()> {
    fs::write(path, report_to_json(report))?;
    Ok(())
}

pub fn report_from_json(text: &str) -> Result<Report> {
    let doc: ReportDocOwned = serde_json::from_str(text)?;
    Ok(Report { body: doc.body, timings_ms: doc.timings_ms })
}

pub fn write_counterexample_file(path: &Path, ce: &Counterexample) -> Result<()> {
    let mut s = serde_json::to_string_pretty(ce)?;
    s.push('\n');
    fs::write(path, s)?;
    Ok(())
}

pub fn parse_counterexample_file(path: &Path) -> Result<Counterexample> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vaserstein::psi_tilde;
    use proptest::prelude::*;

    #[test]
    fn matrix_round_trip_is_byte_stable() {
        let z = Ring::integers();
        let psi2 = psi_tilde(&z, 2).unwrap();
        let text = matrix_to_json(&psi2);
        let parsed = matrix_from_json(&text).unwrap();
        assert_eq!(parsed, psi2);
        assert_eq!(matrix_to_json(&parsed), text);
    }

    #[test]
    fn quadratic_literals_round_trip() {
        let q = Ring::quadratic(-1);
        let m = Mat::new(
            q.clone(),
            1,
            2,
            vec![q.parse("2+3w").unwrap(), q.parse("-1-1w").unwrap()],
        )
        .unwrap();
        let text = matrix_to_json(&m);
        assert!(text.contains("\"2+3w\""));
        let parsed = matrix_from_json(&text).unwrap();
        assert_eq!(parsed, m);
    }

    #[test]
    fn ring_mismatch_is_detected() {
        let m7 = Ring::modular(7).unwrap();
        let m = Mat::identity(m7.clone(), 2);
        let parsed = matrix_from_json(&matrix_to_json(&m)).unwrap();
        let session = Ring::integers();
        assert!(matches!(
            expect_ring(&session, parsed.ring()),
            Err(Error::Format(_))
        ));
    }

    #[test]
    fn version_and_literal_errors() {
        let bad_version = r#"{"format_version": 9, "ring": "int", "rows": 0, "cols": 0, "entries": []}"#;
        match matrix_from_json(bad_version) {
            Err(Error::Format(msg)) => assert!(msg.contains("format_version 9")),
            other => panic!("expected version error, got {other:?}"),
        }

        let bad_entry =
            r#"{"format_version": 1, "ring": "int", "rows": 1, "cols": 1, "entries": [["x"]]}"#;
        match matrix_from_json(bad_entry) {
            Err(Error::Format(msg)) => assert!(msg.contains("entry (1,1)"), "{msg}"),
            other => panic!("expected entry error, got {other:?}"),
        }
    }

    #[test]
    fn form_file_round_trip() {
        let z = Ring::integers();
        let phi = Mat::from_i64_rows(&z, &[&[1]]);
        let data = HyperbolicFormData::assemble(&z, 2, 1, phi, None).unwrap();
        let text = form_to_json(&data);
        let parsed = form_from_json(&text).unwrap();
        assert_eq!(parsed.psi(), data.psi());
        assert_eq!(form_to_json(&parsed), text);
    }

    #[test]
    fn word_files_round_trip() {
        let z = Ring::integers();
        let mut ew = ElementaryWord::new(z.clone(), 4);
        ew.push(1, 2, z.from_i64(3)).unwrap();
        ew.push(4, 1, z.from_i64(-2)).unwrap();
        let text = word_to_json(&WordFile::Elementary(ew.clone()));
        match word_from_json(&text).unwrap() {
            WordFile::Elementary(parsed) => assert_eq!(parsed, ew),
            _ => panic!("wrong kind"),
        }

        let mut gw = GeneratorWord::new(z.clone(), 4);
        gw.push(GeneratorLetter::Theta(RowVec::from_i64(&z, &[0, 0, 5, 0]))).unwrap();
        gw.push(GeneratorLetter::Eta(RowVec::from_i64(&z, &[0, 1, 0, -1]))).unwrap();
        let text = word_to_json(&WordFile::Generator(gw.clone()));
        assert!(text.contains("THETA"));
        match word_from_json(&text).unwrap() {
            WordFile::Generator(parsed) => assert_eq!(parsed, gw),
            _ => panic!("wrong kind"),
        }
    }

    proptest! {
        #[test]
        fn random_matrices_round_trip(seed in 0u64..300) {
            use rand_chacha::rand_core::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            for ring in Ring::shipped() {
                let entries: Vec<_> = (0..6).map(|_| ring.sample(&mut rng)).collect();
                let m = Mat::new(ring.clone(), 2, 3, entries).unwrap();
                let text = matrix_to_json(&m);
                let parsed = matrix_from_json(&text).unwrap();
                prop_assert_eq!(&parsed, &m);
                prop_assert_eq!(matrix_to_json(&parsed), text);
            }
        }
    }
}
