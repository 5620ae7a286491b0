//! Assembles the block form data (c, mu, d, rho, Psi) and builds the
//! Vaserstein-type matrices theta(v), eta(v), L(v), L(v)*, checking the
//! rank-1 formulas against their printed displays.
//!
//!     cargo run --example vaserstein_matrices

use ou_kit::matrix::{Mat, RowVec};
use ou_kit::ring::Ring;
use ou_kit::vaserstein::{psi_tilde, psi_tilde_prime, HyperbolicFormData};

fn main() -> ou_kit::Result<()> {
    let z = Ring::integers();

    println!("psi_1 =\n{}", psi_tilde(&z, 1)?);
    println!("psi'_1 =\n{}", psi_tilde_prime(&z, 1)?);
    println!("psi_2 · psi'_2 =\n{}", psi_tilde(&z, 2)?.mul(&psi_tilde_prime(&z, 2)?)?);

    // m = 2 hyperbolic pairs, one extra V0 dimension with phi = [[1]].
    let data = HyperbolicFormData::assemble(&z, 2, 1, Mat::from_i64_rows(&z, &[&[1]]), None)?;
    println!("N = {}", data.n_dim());
    println!("Psi =\n{}", data.psi());
    println!("Psi^-1 =\n{}", data.psi_inv());

    let v = RowVec::from_i64(&z, &[5, 7, 11, 13]);
    let theta = data.theta(&v)?;
    println!("theta({v}) =\n{theta}");
    assert_eq!(theta, data.theta_explicit(&v)?);
    println!("matches the entrywise display: true");

    let eta = data.eta(&v)?;
    println!("eta({v}) =\n{eta}");
    assert_eq!(eta, data.eta_explicit(&v)?);

    // theta and eta are homomorphisms in v.
    let w = RowVec::from_i64(&z, &[1, -2, 0, 4]);
    assert_eq!(data.theta(&v)?.mul(&data.theta(&w)?)?, data.theta(&v.add(&w)?)?);
    println!("theta(v)·theta(w) = theta(v+w): true");

    println!("L(v) =\n{}", data.l_of(&v)?);
    println!("L(v)* =\n{}", data.l_star_of(&v)?);

    // The same construction over the twisted instance, where lambda = w != 1.
    let t = Ring::twisted();
    let data_t = HyperbolicFormData::assemble(&t, 2, 0, Mat::empty(t.clone()), None)?;
    let vt = RowVec::new(
        t.clone(),
        vec![t.parse("1+1w")?, t.parse("2-1w")?, t.parse("0+3w")?],
    );
    println!("twisted theta(v) =\n{}", data_t.theta(&vt)?);
    assert_eq!(data_t.theta(&vt)?, data_t.theta_explicit(&vt)?);
    println!("twisted display matches: true");
    Ok(())
}
