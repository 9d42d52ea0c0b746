//! Spectra, essential spectra, Fredholm indices, and spectral radii of the
//! twisted operators: exact closed forms where the theory supplies them,
//! resolvent singular-value probes as numerical evidence elsewhere.
//!
//! Membership is never decided from finite-section eigenvalues; analytic
//! Toeplitz truncations are defective (a triangular section of z + 2 shows
//! an N-fold eigenvalue 2 regardless of the spectrum), so invertibility
//! evidence comes from smallest singular values across growing windows.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::Character;
use crate::linalg;
use crate::operator::{build_finite_section, LambdaToeplitz, TruncationWindow};
use crate::symbol::big_phi;

/// Default number of curve samples.
pub const CURVE_RESOLUTION: usize = 8192;

/// A computed spectrum, in the shapes the closed forms produce.
///
/// `RootLift { q, base }` denotes `{mu : mu^q in base}`. For full spectra
/// returned as curves the set is the curve together with every point the
/// curve winds about; [`SpectrumDescriptor::encloses`] implements that
/// reading, while [`SpectrumDescriptor::boundary_samples`] exposes the
/// curve itself.
#[derive(Debug, Clone, PartialEq)]
pub enum SpectrumDescriptor {
    Curve {
        samples: Vec<Complex64>,
    },
    Circle {
        radius: f64,
    },
    Disk {
        radius: f64,
    },
    RootLift {
        q: u32,
        base: Box<SpectrumDescriptor>,
    },
    PointCloud {
        points: Vec<Complex64>,
    },
}

/// Flat serialization of a descriptor: variant name, optional radius and
/// root-lift order, boundary samples as (re, im) pairs.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumRecord {
    pub variant: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base: Option<Box<SpectrumRecord>>,
    pub samples: Vec<[f64; 2]>,
}

fn circle_points(radius: f64, resolution: usize) -> Vec<Complex64> {
    (0..resolution)
        .map(|k| {
            Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / resolution as f64)
        })
        .collect()
}

/// All q-th roots of every sample.
fn lift_points(points: &[Complex64], q: u32) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(points.len() * q as usize);
    for w in points {
        let r = w.norm().powf(1.0 / q as f64);
        let base_arg = w.arg() / q as f64;
        for k in 0..q {
            out.push(Complex64::from_polar(
                r,
                base_arg + std::f64::consts::TAU * k as f64 / q as f64,
            ));
        }
    }
    out
}

/// Winding number of the sampled closed curve about `mu`.
fn polyline_winding(samples: &[Complex64], mu: Complex64) -> i64 {
    let mut total = 0.0f64;
    for k in 0..samples.len() {
        let a = samples[k] - mu;
        let b = samples[(k + 1) % samples.len()] - mu;
        total += (b / a).arg();
    }
    (total / std::f64::consts::TAU).round() as i64
}

fn min_distance(samples: &[Complex64], mu: Complex64) -> f64 {
    samples
        .iter()
        .map(|s| (s - mu).norm())
        .fold(f64::INFINITY, f64::min)
}

impl SpectrumDescriptor {
    /// Boundary point samples for plotting and set comparisons. Curves and
    /// clouds return their own samples; circles and disk boundaries are
    /// sampled at `resolution`; root lifts lift their base.
    pub fn boundary_samples(&self, resolution: usize) -> Vec<Complex64> {
        match self {
            SpectrumDescriptor::Curve { samples } => samples.clone(),
            SpectrumDescriptor::PointCloud { points } => points.clone(),
            SpectrumDescriptor::Circle { radius } | SpectrumDescriptor::Disk { radius } => {
                circle_points(*radius, resolution)
            }
            SpectrumDescriptor::RootLift { q, base } => {
                lift_points(&base.boundary_samples(resolution), *q)
            }
        }
    }

    /// Whether `mu` belongs to the set itself (curves are read as curves).
    pub fn contains(&self, mu: Complex64, tol: f64) -> bool {
        match self {
            SpectrumDescriptor::Curve { samples } => min_distance(samples, mu) <= tol,
            SpectrumDescriptor::PointCloud { points } => min_distance(points, mu) <= tol,
            SpectrumDescriptor::Circle { radius } => (mu.norm() - radius).abs() <= tol,
            SpectrumDescriptor::Disk { radius } => mu.norm() <= radius + tol,
            SpectrumDescriptor::RootLift { q, base } => base.contains(mu.powu(*q), tol),
        }
    }

    /// Region reading for full spectra: curves count their nonzero-winding
    /// interior as enclosed.
    pub fn encloses(&self, mu: Complex64, tol: f64) -> bool {
        match self {
            SpectrumDescriptor::Curve { samples } => {
                min_distance(samples, mu) <= tol || polyline_winding(samples, mu) != 0
            }
            SpectrumDescriptor::RootLift { q, base } => base.encloses(mu.powu(*q), tol),
            other => other.contains(mu, tol),
        }
    }

    pub fn to_record(&self, resolution: usize) -> SpectrumRecord {
        let samples = self
            .boundary_samples(resolution)
            .iter()
            .map(|z| [z.re, z.im])
            .collect();
        match self {
            SpectrumDescriptor::Curve { .. } => SpectrumRecord {
                variant: "curve".into(),
                radius: None,
                q: None,
                base: None,
                samples,
            },
            SpectrumDescriptor::PointCloud { .. } => SpectrumRecord {
                variant: "point_cloud".into(),
                radius: None,
                q: None,
                base: None,
                samples,
            },
            SpectrumDescriptor::Circle { radius } => SpectrumRecord {
                variant: "circle".into(),
                radius: Some(*radius),
                q: None,
                base: None,
                samples,
            },
            SpectrumDescriptor::Disk { radius } => SpectrumRecord {
                variant: "disk".into(),
                radius: Some(*radius),
                q: None,
                base: None,
                samples,
            },
            SpectrumDescriptor::RootLift { q, base } => SpectrumRecord {
                variant: "root_lift".into(),
                radius: None,
                q: Some(*q),
                base: Some(Box::new(base.to_record(resolution))),
                samples,
            },
        }
    }
}

/// Resolvent evidence at one point: smallest singular value of
/// `section - mu I` per window size. Decay toward zero across sizes is
/// evidence that `mu` lies in the spectrum; stabilization above a floor is
/// evidence that it does not. No claim beyond evidence is made here;
/// classification thresholds live in the verification catalog.
#[derive(Debug, Clone, Serialize)]
pub struct ResolventProbe {
    pub mu: (f64, f64),
    pub window_sizes: Vec<usize>,
    pub min_singular_values: Vec<f64>,
}

/// Preconditions shared by the finite-order closed forms: one-dimensional
/// dual, finite order q, primitive value at the cone generator, analytic
/// symbol. Returns q.
fn finite_order_preconditions(op: &LambdaToeplitz) -> Result<u64> {
    let spec = op.group();
    if spec.dim() != 1 {
        return Err(Error::NotApplicable(
            "closed-form spectra are implemented for one-dimensional duals only".into(),
        ));
    }
    let q = op.lambda().order().ok_or_else(|| {
        Error::NotApplicable("the group point has infinite order; use the generator route".into())
    })?;
    let chi0 = spec
        .smallest_positive()
        .expect("one-dimensional duals have a cone generator");
    if !op.lambda().is_primitive_root_at(&chi0, q, spec)? {
        return Err(Error::NotApplicable(
            "value at the cone generator is not a primitive root of the point's order".into(),
        ));
    }
    if !op.phi().is_analytic()? {
        return Err(Error::NotApplicable(
            "the closed form needs an analytic symbol".into(),
        ));
    }
    Ok(q)
}

/// Essential spectrum in the finite-order primitive case: the q-th-root
/// lift of the curve traced by the q-fold twisted product symbol. For
/// q = 1 (classical Toeplitz) this is the symbol curve itself.
pub fn essential_spectrum(op: &LambdaToeplitz, resolution: usize) -> Result<SpectrumDescriptor> {
    let q = finite_order_preconditions(op)?;
    let product = big_phi(op.phi(), op.lambda(), q)?;
    let samples = product.circle_samples(resolution)?;
    let curve = SpectrumDescriptor::Curve { samples };
    if q == 1 {
        Ok(curve)
    } else {
        Ok(SpectrumDescriptor::RootLift {
            q: q as u32,
            base: Box::new(curve),
        })
    }
}

/// Full spectrum.
///
/// Finite-order primitive case: the root lift of the full spectrum of the
/// product Toeplitz operator, whose boundary is the product-symbol curve;
/// the returned curve descriptor is to be read with its enclosed region
/// (see [`SpectrumDescriptor::encloses`]).
///
/// Infinite-order (monothetic generator) case with analytic, continuously
/// invertible symbol: a circle of radius `exp(log-mean)` when the symbol is
/// invertible in the analytic algebra, the full disk when it is not. For
/// real-embedded duals of dimension >= 2 that invertibility is reported
/// undecided and no shape is guessed.
pub fn full_spectrum(op: &LambdaToeplitz, resolution: usize) -> Result<SpectrumDescriptor> {
    if op.lambda().order().is_some() {
        return essential_spectrum(op, resolution);
    }
    // generator route
    if !op.phi().is_analytic()? {
        return Err(Error::NotApplicable(
            "the generator route needs an analytic symbol".into(),
        ));
    }
    let report = op.phi().invertibility_report()?;
    if !report.in_c_inv {
        return Err(Error::NotApplicable(
            "symbol is not invertible among continuous functions".into(),
        ));
    }
    let radius = spectral_radius(op)?;
    match report.in_a_inv {
        Some(true) => Ok(SpectrumDescriptor::Circle { radius }),
        Some(false) => Ok(SpectrumDescriptor::Disk { radius }),
        None => Err(Error::NotApplicable(
            "invertibility in the analytic algebra is undecided for dimension >= 2".into(),
        )),
    }
}

/// Fredholm index of `T - mu` for a point of order q whose value at `chi0`
/// is a primitive q-th root of unity: minus the winding index of the
/// product symbol shifted by `mu^q`, divided by q. `None` when that symbol
/// has no index (the operator is not Fredholm there).
pub fn fredholm_index(
    op: &LambdaToeplitz,
    mu: Complex64,
    q: u64,
    chi0: &Character,
) -> Result<Option<i64>> {
    let spec = op.group();
    match op.lambda().order() {
        Some(actual) if actual == q => {}
        Some(actual) => {
            return Err(Error::NotApplicable(format!(
                "the group point has order {actual}, not {q}"
            )))
        }
        None => {
            return Err(Error::NotApplicable(
                "the group point has infinite order".into(),
            ))
        }
    }
    if !op.lambda().is_primitive_root_at(chi0, q, spec)? {
        return Err(Error::NotApplicable(
            "value at chi0 is not a primitive q-th root of unity".into(),
        ));
    }
    let product = big_phi(op.phi(), op.lambda(), q)?;
    let shifted = product.sub_constant(mu.powu(q as u32));
    let winding = match shifted.winding_index()? {
        Some(w) => w,
        None => return Ok(None),
    };
    if winding.rem_euclid(q as i64) != 0 {
        return Err(Error::WindingUnresolved(format!(
            "winding {winding} of the shifted product symbol is not divisible by q = {q}"
        )));
    }
    Ok(Some(-winding / q as i64))
}

/// Spectral radius over a monothetic group with generator `lambda` and
/// analytic symbol: `exp` of the Haar log-mean of the symbol.
pub fn spectral_radius(op: &LambdaToeplitz) -> Result<f64> {
    if !op.phi().is_analytic()? {
        return Err(Error::NotApplicable(
            "the log-mean radius formula needs an analytic symbol".into(),
        ));
    }
    if op.lambda().order().is_some() {
        return Err(Error::NotApplicable(
            "the log-mean radius formula needs a generator (infinite order)".into(),
        ));
    }
    Ok(op.phi().log_mean(None)?.exp())
}

/// Finite-section Gelfand estimate `||S^k||^(1/k)`: the k-th power of the
/// compression, overflow discarded outside the window. For analytic
/// symbols the compression power equals the compression of the operator
/// power, which makes this a lower-bound estimator for `||T^k||^(1/k)`.
pub fn spectral_radius_gelfand(
    op: &LambdaToeplitz,
    window: &TruncationWindow,
    k: u32,
    seed: u64,
) -> Result<f64> {
    if !op.phi().is_analytic()? {
        return Err(Error::NonAnalyticSymbol);
    }
    if k == 0 {
        return Err(Error::InvalidSpec("power k must be >= 1".into()));
    }
    let section = build_finite_section(op, window)?;
    Ok(linalg::power_norm_root(section.matrix(), k, seed))
}

/// Smallest singular values of `section - mu I` across the given windows
/// (sizes must increase).
pub fn resolvent_probe(
    op: &LambdaToeplitz,
    mu: Complex64,
    windows: &[TruncationWindow],
    seed: u64,
) -> Result<ResolventProbe> {
    if windows.is_empty() {
        return Err(Error::InvalidSpec("at least one window required".into()));
    }
    for pair in windows.windows(2) {
        if pair[1].size() <= pair[0].size() {
            return Err(Error::InvalidSpec(
                "window sizes must be strictly increasing".into(),
            ));
        }
    }
    let mut sizes = Vec::with_capacity(windows.len());
    let mut values = Vec::with_capacity(windows.len());
    for (i, w) in windows.iter().enumerate() {
        let mut m = build_finite_section(op, w)?.matrix().clone();
        m.sub_scalar_diagonal(mu);
        sizes.push(w.size());
        values.push(linalg::sigma_min(&m, seed.wrapping_add(i as u64)));
    }
    Ok(ResolventProbe {
        mu: (mu.re, mu.im),
        window_sizes: sizes,
        min_singular_values: values,
    })
}

/// Hausdorff distance between two finite point sets.
pub fn hausdorff(a: &[Complex64], b: &[Complex64]) -> f64 {
    fn directed(from: &[Complex64], to: &[Complex64]) -> f64 {
        let mut worst = 0.0f64;
        for p in from {
            let mut best = f64::INFINITY;
            for q in to {
                let d = (p - q).norm_sqr();
                if d < best {
                    best = d;
                    if best == 0.0 {
                        break;
                    }
                }
            }
            worst = worst.max(best);
        }
        worst.sqrt()
    }
    directed(a, b).max(directed(b, a))
}

/// Hausdorff distance between a point set and its rotation by a unit
/// factor; small values certify rotational invariance of a computed
/// spectrum at the sampling resolution.
pub fn check_circularity(points: &[Complex64], factor: Complex64) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::InvalidSpec("empty point set".into()));
    }
    let rotated: Vec<Complex64> = points.iter().map(|p| p * factor).collect();
    Ok(hausdorff(&rotated, points))
}
