//! For a generator of the group (irrational rotation), the spectrum is a
//! circle when the symbol is invertible in the analytic algebra and the
//! full disk when it is not. Resolvent probes supply the numerical
//! evidence.
//!
//! ```bash
//! cargo run --example circle_or_disk
//! ```

use lambda_toeplitz::config::ExperimentConfig;
use lambda_toeplitz::group::{Angle, GroupPoint, GroupSpec};
use lambda_toeplitz::operator::LambdaToeplitz;
use lambda_toeplitz::spectral::{full_spectrum, resolvent_probe, SpectrumDescriptor};
use lambda_toeplitz::symbol::Symbol;
use num_complex::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn main() -> lambda_toeplitz::Result<()> {
    let spec = GroupSpec::lattice_lex(1)?;
    let golden = GroupPoint::torus(vec![Angle::real(0.618_033_988_749_894_9)]);

    let cases = [
        (
            "z + 2 (outer)",
            vec![(1i64, c(1.0, 0.0)), (0, c(2.0, 0.0))],
            vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)],
        ),
        (
            "z - 1/2 (inner zero)",
            vec![(1, c(1.0, 0.0)), (0, c(-0.5, 0.0))],
            vec![c(0.5, 0.0), c(1.0, 0.0), c(1.5, 0.0)],
        ),
    ];

    for (label, coeffs, probes) in cases {
        let phi = Symbol::from_laurent(spec.clone(), &coeffs)?;
        let report = phi.invertibility_report()?;
        let op = LambdaToeplitz::new(golden.clone(), phi)?;
        let desc = full_spectrum(&op, 1024)?;
        let shape = match &desc {
            SpectrumDescriptor::Circle { radius } => format!("circle of radius {radius:.9}"),
            SpectrumDescriptor::Disk { radius } => format!("closed disk of radius {radius:.9}"),
            other => format!("{other:?}"),
        };
        println!("{label}");
        println!(
            "  invertible among continuous functions: {}, in the analytic algebra: {:?}",
            report.in_c_inv, report.in_a_inv
        );
        println!("  spectrum: {shape}");

        let windows = [64usize, 128, 256, 512]
            .iter()
            .map(|&n| ExperimentConfig::probe_window(&spec, n))
            .collect::<lambda_toeplitz::Result<Vec<_>>>()?;
        println!("  resolvent evidence (smallest singular value per window):");
        for mu in probes {
            let probe = resolvent_probe(&op, mu, &windows, 0)?;
            let vals: Vec<String> = probe
                .min_singular_values
                .iter()
                .map(|v| format!("{v:.3e}"))
                .collect();
            let verdict = if desc.encloses(mu, 1e-9) {
                "in the spectrum: decay"
            } else {
                "resolvent point: floor"
            };
            println!("    mu = {mu}: [{}]  ({verdict})", vals.join(", "));
        }
        println!();
    }
    Ok(())
}
