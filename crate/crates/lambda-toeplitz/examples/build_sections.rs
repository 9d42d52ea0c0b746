//! Build an operator from (point, symbol) data, compress it to a finite
//! section, read entries, and pull the symbol back out of the matrix.
//!
//! ```bash
//! cargo run --example build_sections
//! ```

use lambda_toeplitz::group::{Angle, Character, GroupPoint, GroupSpec};
use lambda_toeplitz::operator::{
    build_finite_section, extract_symbol, LambdaToeplitz, TruncationWindow,
};
use lambda_toeplitz::symbol::Symbol;
use num_complex::Complex64;

fn main() -> lambda_toeplitz::Result<()> {
    let spec = GroupSpec::lattice_lex(1)?;
    // phi(z) = z + 2, twisted by the order-4 point
    let phi = Symbol::from_laurent(
        spec.clone(),
        &[(1, Complex64::new(1.0, 0.0)), (0, Complex64::new(2.0, 0.0))],
    )?;
    let lambda = GroupPoint::torus(vec![Angle::rational(1, 4)?]);
    let op = LambdaToeplitz::new(lambda, phi)?;

    let window = TruncationWindow::first_n(&spec, 6)?;
    let section = build_finite_section(&op, &window)?;
    println!("section over the first 6 cone characters:");
    for i in 0..section.size() {
        let row: Vec<String> = (0..section.size())
            .map(|j| {
                let v = section.matrix()[(i, j)];
                format!("{:+.2}{:+.2}i", v.re, v.im)
            })
            .collect();
        println!("  [{}]", row.join("  "));
    }

    // single entries straight from the closed form
    let e32 = op.entry(
        &Character::from_exponents(&[2]),
        &Character::from_exponents(&[3]),
    )?;
    println!(
        "\nentry (col z^2 -> row z^3): {:+.4}{:+.4}i",
        e32.re, e32.im
    );

    // adjoint is an involution
    let back = section.adjoint().adjoint();
    assert_eq!(back.matrix(), section.matrix());
    println!("adjoint twice returns the section exactly");

    // the first column and first row determine the symbol
    let recovered = extract_symbol(&op, &window)?;
    assert_eq!(&recovered, op.phi());
    println!("symbol recovered from the section, coefficient-exact");

    // the weighted-shift action for analytic symbols, at coefficient level
    let f = Symbol::from_laurent(spec, &[(2, Complex64::new(1.0, 0.0))])?;
    let g = op.apply_weighted_shift(&f)?;
    println!("\naction on z^2 (analytic route):");
    for (chi, c) in g.support() {
        println!("  coefficient at {:?}: {c}", chi.dense(1));
    }

    // CSV export of the section, the same format the CLI writes
    let mut csv = Vec::new();
    section.write_csv(&mut csv)?;
    let text = String::from_utf8(csv).expect("ascii");
    println!("\nfirst CSV rows:");
    for line in text.lines().take(4) {
        println!("  {line}");
    }
    Ok(())
}
