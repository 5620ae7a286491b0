//! Vaserstein's original construction: for an invertible alternating form,
//! two rank-1 perturbations of the identity border into symplectic matrices.
//!
//!     cargo run --example symplectic_pair

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ou_kit::campaign::random_alternating;
use ou_kit::matrix::{Mat, RowVec};
use ou_kit::ring::Ring;
use ou_kit::vaserstein::{is_symplectic, symplectic_pair};

fn main() -> ou_kit::Result<()> {
    let z = Ring::integers();

    // The standard alternating form of size 4.
    let phi = Mat::from_i64_rows(
        &z,
        &[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]],
    );
    let phi_inv = phi.inverse()?;
    let v = RowVec::from_i64(&z, &[1, 2, 3]);
    let pair = symplectic_pair(&phi, &phi_inv, &v)?;
    println!("alpha =\n{}", pair.alpha);
    println!("beta =\n{}", pair.beta);
    println!("lower bordered matrix =\n{}", pair.m_lower);
    println!("symplectic for phi: {}", is_symplectic(&phi, &pair.m_lower)?);
    println!("upper symplectic:   {}", is_symplectic(&phi, &pair.m_upper)?);

    // Random alternating forms over Z and Z/7, sizes 4 and 6.
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for ring in [Ring::integers(), Ring::modular(7)?] {
        for size in [4usize, 6] {
            let (phi, phi_inv) = random_alternating(&ring, size, &mut rng).unwrap();
            let v = RowVec::new(
                ring.clone(),
                (0..size - 1).map(|_| ring.sample(&mut rng)).collect(),
            );
            let pair = symplectic_pair(&phi, &phi_inv, &v)?;
            assert!(is_symplectic(&phi, &pair.m_lower)?);
            assert!(is_symplectic(&phi, &pair.m_upper)?);
            println!("ring {ring}, size {size}: bordered pair is symplectic");
        }
    }
    Ok(())
}
