//! Why the primitive-root hypothesis matters: forcing the order-2 root
//! lift onto the identity point (whose value is not a primitive square
//! root of unity) produces the wrong essential spectrum, while the genuine
//! order-2 point is self-consistent and probe-supported.
//!
//! ```bash
//! cargo run --example root_lift_pitfall
//! ```

use lambda_toeplitz::group::{Angle, GroupPoint, GroupSpec};
use lambda_toeplitz::operator::{LambdaToeplitz, TruncationWindow};
use lambda_toeplitz::spectral::{
    check_circularity, essential_spectrum, hausdorff, resolvent_probe, SpectrumDescriptor,
};
use lambda_toeplitz::symbol::{big_phi, Symbol};
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn main() -> lambda_toeplitz::Result<()> {
    let spec = GroupSpec::lattice_lex(1)?;
    let phi = Symbol::from_laurent(spec.clone(), &[(1, c(1.0, 0.0)), (0, c(2.0, 0.0))])?;
    let res = 2048;

    // identity point, q = 2 forced by hand
    let one = GroupPoint::torus(vec![Angle::rational(0, 1)?]);
    let product = big_phi(&phi, &one, 2)?;
    println!("product symbol at the identity, q = 2:");
    for (chi, coeff) in product.support() {
        println!("  coefficient at z^{}: {coeff}", chi.exponent(0));
    }

    let lift = SpectrumDescriptor::RootLift {
        q: 2,
        base: Box::new(SpectrumDescriptor::Curve {
            samples: product.circle_samples(res)?,
        }),
    };
    let truth = essential_spectrum(&LambdaToeplitz::new(one, phi.clone())?, res)?;
    let mismatch = hausdorff(&lift.boundary_samples(res), &truth.boundary_samples(res));
    println!("\nforced 2-fold lift vs the true essential curve: Hausdorff {mismatch:.3}");
    println!("(the value at the cone generator is 1, not a primitive square root, and");
    println!(" the lift grabs a spurious mirror component around -2)");

    // the genuine order-2 point: the same construction is the truth
    let half = GroupPoint::torus(vec![Angle::rational(1, 2)?]);
    let twin = LambdaToeplitz::new(half, phi)?;
    let desc = essential_spectrum(&twin, res)?;
    let samples = desc.boundary_samples(res);
    let sym = check_circularity(&samples, c(-1.0, 0.0))?;
    println!("\ngenuine order-2 twist:");
    println!("  half-turn symmetry of the lifted set: Hausdorff {sym:.2e}");

    let windows = [64usize, 128, 256]
        .iter()
        .map(|&n| TruncationWindow::first_n(&spec, n))
        .collect::<lambda_toeplitz::Result<Vec<_>>>()?;
    for (mu, label) in [
        (c(5f64.sqrt(), 0.0), "on the lifted set"),
        (c(7f64.sqrt(), 0.0), "off the lifted set"),
    ] {
        let probe = resolvent_probe(&twin, mu, &windows, 0)?;
        let vals: Vec<String> = probe
            .min_singular_values
            .iter()
            .map(|v| format!("{v:.3e}"))
            .collect();
        println!("  probe at mu = {mu:.6} ({label}): [{}]", vals.join(", "));
    }
    Ok(())
}
