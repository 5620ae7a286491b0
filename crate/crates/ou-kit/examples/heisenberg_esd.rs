//! The Heisenberg group of an odd quadratic space, its trace and form
//! parameters, and ESD / elementary transvections as exact matrices.
//!
//!     cargo run --example heisenberg_esd

use ou_kit::quadratic::{FormParameterMode, HeisenbergElement, OddQuadraticSpace};
use ou_kit::matrix::{Mat, RowVec};
use ou_kit::ring::Ring;

fn main() -> ou_kit::Result<()> {
    let z = Ring::integers();

    // Hyperbolic plane with the minimal form parameter (even integers).
    let plane = OddQuadraticSpace::hyperbolic(&z, 1, None, FormParameterMode::Min)?;
    let e1 = RowVec::from_i64(&z, &[1, 0]);
    let e2 = RowVec::from_i64(&z, &[0, 1]);
    println!("<e1, e-1> = {}", plane.form(&e1, &e2)?);
    println!("<e-1, e1> = {}", plane.form(&e2, &e1)?);

    let za = HeisenbergElement::new(e1.clone(), z.zero());
    let zb = HeisenbergElement::new(e2.clone(), z.zero());
    println!("(e1,0) + (e-1,0) = {}", plane.h_add(&za, &zb)?);
    println!("tr((e1,0) + (e-1,0)) = {}", plane.h_trace(&plane.h_add(&za, &zb)?)?);

    // An ESD transvection along e1: the shear [[1, r], [0, 1]].
    let shear = plane.esd_matrix(&e1, &RowVec::zeros(z.clone(), 2), &z.from_i64(2))?;
    println!("T_(e1,0)(2) =\n{shear}");
    println!("preserves the form: {}", plane.preserves_form(&shear)?);

    // Rank-2 space with a V0 part; long and short elementary transvections.
    let phi = Mat::from_i64_rows(&z, &[&[0, 1], &[-1, 0]]);
    let space = OddQuadraticSpace::hyperbolic(&z, 2, Some(phi), FormParameterMode::Max)?;
    let t_short = space.transvection_short(1, 2, &z.from_i64(5))?;
    println!("T_(1,2)(5) =\n{t_short}");
    println!("preserves the form: {}", space.preserves_form(&t_short)?);

    let v = RowVec::from_i64(&z, &[0, 0, 0, 0, 3, -2]);
    let t_long = space.transvection_long(1, &v, &z.from_i64(7))?;
    println!("T_1(v, 7) with v in V0 =\n{t_long}");
    println!("preserves the form: {}", space.preserves_form(&t_long)?);
    println!(
        "identity-equivalent mod the parameter: {}",
        space.equiv_identity_mod_param(&t_long)?
    );
    Ok(())
}
