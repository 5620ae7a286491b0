//! The generation machinery in both directions: factoring theta(v)/eta(v)
//! into elementary letters, recovering generator preimages, and decomposing
//! arbitrary elementary words into theta/eta words.
//!
//!     cargo run --example elementary_generators

use ou_kit::matrix::{Mat, RowVec};
use ou_kit::ring::Ring;
use ou_kit::vaserstein::HyperbolicFormData;
use ou_kit::words::{
    decompose_elementary, decompose_word, factorize_theta, generator_preimage, ElementaryWord,
    Side,
};

fn main() -> ou_kit::Result<()> {
    let z = Ring::integers();
    let data = HyperbolicFormData::assemble(&z, 2, 1, Mat::from_i64_rows(&z, &[&[1]]), None)?;
    let n = data.n_dim();

    // Forward: theta(v) as a product of E_{1,j} letters.
    let v = RowVec::from_i64(&z, &[5, 7, 11, 13]);
    let word = factorize_theta(&data, &v)?;
    for l in word.letters() {
        println!("E_({},{})({})", l.i, l.j, l.a);
    }
    assert_eq!(word.evaluate()?, data.theta(&v)?);
    println!("product equals theta(v): true\n");

    // Converse: each generator E_{1,i}(a) / E_{i,1}(a) is a single theta/eta.
    let a = z.from_i64(3);
    let pre = generator_preimage(&data, Side::Row, 2, &a)?;
    println!("theta({pre}) = E_(1,2)(3)");
    assert_eq!(data.theta(&pre)?, Mat::elementary(&z, n, 1, 2, &a)?);

    // Interior positions need the Steinberg commutator: four letters.
    let word = decompose_elementary(&data, 2, 3, &z.from_i64(5))?;
    for l in word.letters() {
        match l {
            ou_kit::words::GeneratorLetter::Theta(v) => println!("THETA {v}"),
            ou_kit::words::GeneratorLetter::Eta(v) => println!("ETA   {v}"),
        }
    }
    assert_eq!(word.evaluate(&data)?, Mat::elementary(&z, n, 2, 3, &z.from_i64(5))?);
    println!("word evaluates to E_(2,3)(5): true\n");

    // Whole words decompose letter by letter, then merge adjacent tags.
    let mut ew = ElementaryWord::new(z.clone(), n);
    ew.push(1, 2, z.from_i64(3))?;
    ew.push(1, 3, z.from_i64(4))?;
    ew.push(4, 1, z.from_i64(-2))?;
    let gen = decompose_word(&data, &ew)?;
    println!("{} elementary letters -> {} generator letters", ew.len(), gen.len());
    assert_eq!(gen.evaluate(&data)?, ew.evaluate()?);
    println!("evaluations agree: true");
    Ok(())
}
