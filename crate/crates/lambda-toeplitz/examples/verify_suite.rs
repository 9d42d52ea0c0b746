//! Run the bundled verification catalog from library code; the CLI's
//! `verify` subcommand wraps exactly this.
//!
//! ```bash
//! cargo run --example verify_suite            # everything
//! cargo run --example verify_suite -- index_suite negative_control
//! ```

use lambda_toeplitz::verify::{bundled_catalog, run_checks};

fn main() -> lambda_toeplitz::Result<()> {
    let which: Vec<String> = {
        let args: Vec<String> = std::env::args().skip(1).collect();
        if args.is_empty() {
            vec!["all".into()]
        } else {
            args
        }
    };
    let catalog = bundled_catalog()?;
    let reports = run_checks(&catalog, &which, 0)?;
    for r in &reports {
        println!("{r}");
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    println!("{} checks, {} failed", reports.len(), failed);
    if failed > 0 {
        std::process::exit(1);
    }
    Ok(())
}
