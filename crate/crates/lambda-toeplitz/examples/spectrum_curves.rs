//! Essential spectra of finite-order twists: symbol curves and their
//! root lifts, written as CSV for plotting.
//!
//! ```bash
//! cargo run --example spectrum_curves
//! ```

use std::io::Write;

use lambda_toeplitz::group::{Angle, GroupPoint, GroupSpec};
use lambda_toeplitz::operator::LambdaToeplitz;
use lambda_toeplitz::spectral::{essential_spectrum, SpectrumDescriptor};
use lambda_toeplitz::symbol::Symbol;
use num_complex::Complex64;

fn describe(desc: &SpectrumDescriptor) -> String {
    match desc {
        SpectrumDescriptor::Curve { samples } => format!("curve, {} samples", samples.len()),
        SpectrumDescriptor::RootLift { q, .. } => format!("{q}-fold root lift"),
        other => format!("{other:?}"),
    }
}

fn main() -> lambda_toeplitz::Result<()> {
    let spec = GroupSpec::lattice_lex(1)?;
    let affine = Symbol::from_laurent(
        spec.clone(),
        &[(1, Complex64::new(1.0, 0.0)), (0, Complex64::new(2.0, 0.0))],
    )?;
    let resolution = 2048;

    let out_dir = std::env::temp_dir().join("lambda-toeplitz-curves");
    std::fs::create_dir_all(&out_dir)?;

    for (label, angle) in [
        ("identity", Angle::rational(0, 1)?),
        ("half_turn", Angle::rational(1, 2)?),
        ("third_turn", Angle::rational(1, 3)?),
    ] {
        let lambda = GroupPoint::torus(vec![angle]);
        let op = LambdaToeplitz::new(lambda, affine.clone())?;
        let desc = essential_spectrum(&op, resolution)?;
        let samples = desc.boundary_samples(resolution);
        let radius_min = samples.iter().map(|z| z.norm()).fold(f64::MAX, f64::min);
        let radius_max = samples.iter().map(|z| z.norm()).fold(0.0, f64::max);
        println!(
            "{label:>10}: {} | moduli in [{radius_min:.4}, {radius_max:.4}]",
            describe(&desc)
        );

        let path = out_dir.join(format!("essential_{label}.csv"));
        let mut f = std::fs::File::create(&path)?;
        writeln!(f, "re,im")?;
        for z in &samples {
            writeln!(f, "{:.16e},{:.16e}", z.re, z.im)?;
        }
        println!("{:>10}  wrote {}", "", path.display());
    }

    // lifted samples power back onto the base curve
    let half = GroupPoint::torus(vec![Angle::rational(1, 2)?]);
    let op = LambdaToeplitz::new(half, affine)?;
    if let SpectrumDescriptor::RootLift { q, base } = essential_spectrum(&op, resolution)? {
        let lifted = SpectrumDescriptor::RootLift {
            q,
            base: base.clone(),
        }
        .boundary_samples(resolution);
        let powered: Vec<Complex64> = lifted.iter().map(|z| z.powu(q)).collect();
        let h = lambda_toeplitz::spectral::hausdorff(&powered, &base.boundary_samples(resolution));
        println!("\nroot-lift consistency: powered samples return to the curve, H = {h:.2e}");
    }
    Ok(())
}
