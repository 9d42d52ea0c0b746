//! Winding indices of symbols and Fredholm indices of shifted operators,
//! through the product-symbol route for finite-order points.
//!
//! ```bash
//! cargo run --example fredholm_indices
//! ```

use lambda_toeplitz::group::{Angle, Character, GroupPoint, GroupSpec};
use lambda_toeplitz::operator::LambdaToeplitz;
use lambda_toeplitz::spectral::fredholm_index;
use lambda_toeplitz::symbol::Symbol;
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn main() -> lambda_toeplitz::Result<()> {
    let spec = GroupSpec::lattice_lex(1)?;
    let chi0 = Character::from_exponents(&[1]);

    // windings of a few symbols on the circle
    for (label, coeffs) in [
        ("z + 2", vec![(1i64, c(1.0, 0.0)), (0, c(2.0, 0.0))]),
        ("z - 1/2", vec![(1, c(1.0, 0.0)), (0, c(-0.5, 0.0))]),
        ("z^3 + z/4", vec![(3, c(1.0, 0.0)), (1, c(0.25, 0.0))]),
        (
            "1/z + 3 + z",
            vec![(-1, c(1.0, 0.0)), (0, c(3.0, 0.0)), (1, c(1.0, 0.0))],
        ),
    ] {
        let phi = Symbol::from_laurent(spec.clone(), &coeffs)?;
        println!("winding of {label}: {:?}", phi.winding_index()?);
    }

    // the classical shift: index -1 at the origin
    let one = GroupPoint::torus(vec![Angle::rational(0, 1)?]);
    let shift = LambdaToeplitz::new(
        one.clone(),
        Symbol::from_laurent(spec.clone(), &[(1, c(1.0, 0.0))])?,
    )?;
    println!(
        "\nclassical shift at mu=0: index {:?}",
        fredholm_index(&shift, c(0.0, 0.0), 1, &chi0)?
    );

    // order-2 twist of z + 2: the product symbol is 4 - z^2
    let half = GroupPoint::torus(vec![Angle::rational(1, 2)?]);
    let affine = LambdaToeplitz::new(
        half.clone(),
        Symbol::from_laurent(spec.clone(), &[(1, c(1.0, 0.0)), (0, c(2.0, 0.0))])?,
    )?;
    for mu in [c(0.0, 0.0), c(1.0, 0.0), c(2.05, 0.0)] {
        println!(
            "order-2 twist of z+2 at mu={mu}: index {:?}",
            fredholm_index(&affine, mu, 2, &chi0)?
        );
    }

    // the index is blind to rotating mu by the primitive root
    let twisted_shift =
        LambdaToeplitz::new(half, Symbol::from_laurent(spec, &[(1, c(1.0, 0.0))])?)?;
    for mu in [c(0.5, 0.0), c(-0.5, 0.0)] {
        println!(
            "order-2 twist of z at mu={mu}: index {:?}",
            fredholm_index(&twisted_shift, mu, 2, &chi0)?
        );
    }

    // on the essential curve there is no index to compute
    let classical = LambdaToeplitz::new(
        one,
        Symbol::from_laurent(
            GroupSpec::lattice_lex(1)?,
            &[(1, c(1.0, 0.0)), (0, c(2.0, 0.0))],
        )?,
    )?;
    match fredholm_index(&classical, c(3.0, 0.0), 1, &chi0) {
        Err(e) => println!("\nz+2 at mu=3 (on the curve): {e}"),
        Ok(v) => println!("\nunexpected index {v:?}"),
    }
    Ok(())
}
