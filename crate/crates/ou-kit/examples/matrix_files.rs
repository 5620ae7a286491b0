//! The exact, versioned file formats: matrices, assembled forms, and
//! generator words, with byte-stable round trips.
//!
//!     cargo run --example matrix_files

use ou_kit::io;
use ou_kit::matrix::Mat;
use ou_kit::ring::Ring;
use ou_kit::vaserstein::{psi_tilde, HyperbolicFormData};
use ou_kit::words::decompose_elementary;

fn main() -> ou_kit::Result<()> {
    let dir = std::env::temp_dir().join("ou-kit-example");
    std::fs::create_dir_all(&dir)?;

    // Matrix file: psi_2 over the integers.
    let z = Ring::integers();
    let psi2 = psi_tilde(&z, 2)?;
    let path = dir.join("psi2.json");
    io::write_matrix_file(&path, &psi2)?;
    println!("{}", io::matrix_to_json(&psi2));
    let parsed = io::parse_matrix_file(&path)?;
    assert_eq!(parsed, psi2);
    assert_eq!(io::matrix_to_json(&parsed), io::matrix_to_json(&psi2));
    println!("matrix round trip: byte-stable\n");

    // Quadratic literals like "2+3w" survive the trip.
    let q = Ring::quadratic(-1);
    let m = Mat::new(q.clone(), 1, 1, vec![q.parse("2+3w")?])?;
    let qpath = dir.join("quad.json");
    io::write_matrix_file(&qpath, &m)?;
    assert_eq!(io::parse_matrix_file(&qpath)?, m);

    // Ring headers are enforced against the session ring.
    let session = Ring::integers();
    match io::expect_ring(&session, &q) {
        Err(e) => println!("expected mismatch: {e}\n"),
        Ok(()) => unreachable!(),
    }

    // Form file and a generator word file.
    let data = HyperbolicFormData::assemble(&z, 2, 1, Mat::from_i64_rows(&z, &[&[1]]), None)?;
    let fpath = dir.join("form.json");
    io::write_form_file(&fpath, &data)?;
    let loaded = io::parse_form_file(&fpath)?;
    assert_eq!(loaded.psi(), data.psi());

    let word = decompose_elementary(&data, 2, 3, &z.from_i64(5))?;
    let wpath = dir.join("word.json");
    io::write_word_file(&wpath, &io::WordFile::Generator(word.clone()))?;
    println!("{}", io::word_to_json(&io::WordFile::Generator(word)));
    match io::parse_word_file(&wpath)? {
        io::WordFile::Generator(parsed) => {
            assert_eq!(parsed.evaluate(&loaded)?, Mat::elementary(&z, 4, 2, 3, &z.from_i64(5))?)
        }
        _ => unreachable!(),
    }
    println!("word round trip: ok (files in {})", dir.display());
    Ok(())
}
