//! The operator norm is the sup norm of the modified symbol; finite
//! sections approach it monotonically from below.
//!
//! ```bash
//! cargo run --example norm_convergence
//! ```

use lambda_toeplitz::group::{Angle, GroupPoint, GroupSpec};
use lambda_toeplitz::linalg::sigma_max;
use lambda_toeplitz::operator::{build_finite_section, LambdaToeplitz, TruncationWindow};
use lambda_toeplitz::symbol::Symbol;
use num_complex::Complex64;

fn main() -> lambda_toeplitz::Result<()> {
    let spec = GroupSpec::lattice_lex(1)?;
    let phi = Symbol::from_laurent(
        spec.clone(),
        &[(1, Complex64::new(1.0, 0.0)), (0, Complex64::new(2.0, 0.0))],
    )?;
    let lambda = GroupPoint::torus(vec![Angle::real(0.618_033_988_749_894_9)]);
    let op = LambdaToeplitz::new(lambda, phi)?;

    let sup = op.modified_symbol()?.sup_norm();
    println!("sup norm of the modified symbol: {sup:.12}");
    println!("{:>6}  {:>18}  {:>12}", "window", "sigma_max", "gap");
    for n in [8usize, 16, 32, 64, 128, 256] {
        let window = TruncationWindow::first_n(&spec, n)?;
        let section = build_finite_section(&op, &window)?;
        let sigma = sigma_max(section.matrix(), 0);
        println!("{n:>6}  {sigma:>18.12}  {:>12.3e}", sup - sigma);
    }

    // the same picture over the lex plane, with boxed windows
    let spec2 = GroupSpec::lattice_lex(2)?;
    let phi2 = Symbol::from_coeffs(
        spec2.clone(),
        vec![
            (
                lambda_toeplitz::group::Character::from_exponents(&[0, 1]),
                Complex64::new(1.0, 0.0),
            ),
            (
                lambda_toeplitz::group::Character::from_exponents(&[0, 0]),
                Complex64::new(2.0, 0.0),
            ),
        ],
    )?;
    let lambda2 = GroupPoint::torus(vec![Angle::rational(0, 1)?, Angle::rational(1, 3)?]);
    let op2 = LambdaToeplitz::new(lambda2, phi2)?;
    let sup2 = op2.modified_symbol()?.sup_norm();
    println!("\nlex plane, sup norm {sup2:.12}");
    println!(
        "{:>10}  {:>6}  {:>18}  {:>12}",
        "box", "size", "sigma_max", "gap"
    );
    for b in [2i64, 4, 6, 10] {
        let window = TruncationWindow::cone_box(&spec2, &[b, b])?;
        let section = build_finite_section(&op2, &window)?;
        let sigma = sigma_max(section.matrix(), 0);
        println!(
            "{:>10}  {:>6}  {sigma:>18.12}  {:>12.3e}",
            format!("[{b},{b}]"),
            window.size(),
            sup2 - sigma
        );
    }
    Ok(())
}
