//! Trigonometric-polynomial symbols: finite Fourier-coefficient maps over
//! an ordered dual, with the modified symbol, rotations, products, sup
//! norms, log means, and winding indices.
//!
//! Symbols with finitely supported spectra see only finitely many basis
//! directions, so real-embedded symbols evaluate on the d-torus through
//! their exponent coordinates and Haar integration over the group reduces
//! to torus integration.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::{Character, GroupPoint, GroupSpec};

/// Coefficients below this modulus are dropped.
pub const PRUNE_TOL: f64 = 1e-15;
/// A grid sample below this modulus counts as a zero of the symbol.
pub const VANISH_TOL: f64 = 1e-13;
/// Default quadrature resolution per coordinate for the log mean.
pub const LOG_MEAN_RESOLUTION: usize = 4096;
/// Modulus floor along winding loops.
const WINDING_VANISH_TOL: f64 = 1e-12;
/// Nonvanishing threshold for invertibility reports.
const INVERTIBILITY_TOL: f64 = 1e-9;
/// Hard cap on winding loop refinement.
const WINDING_RESOLUTION_CAP: usize = 1 << 20;

/// A trigonometric polynomial on the compact group, as a finite map from
/// characters to complex coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Symbol {
    spec: GroupSpec,
    coeffs: BTreeMap<Character, Complex64>,
}

/// Invertibility evidence for a symbol: membership in the invertible
/// continuous functions, and (where decidable) in the invertibles of the
/// analytic subalgebra. `in_a_inv` stays `None` when the question cannot be
/// settled: symbol not analytic, dimension at least two, or not even
/// continuously invertible.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvertibilityReport {
    pub in_c_inv: bool,
    pub in_a_inv: Option<bool>,
}

impl Symbol {
    pub fn zero(spec: GroupSpec) -> Self {
        Symbol {
            spec,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(spec: GroupSpec, c: Complex64) -> Self {
        let mut s = Symbol::zero(spec);
        if c.norm() >= PRUNE_TOL {
            s.coeffs.insert(Character::identity(), c);
        }
        s
    }

    pub fn from_coeffs(spec: GroupSpec, coeffs: Vec<(Character, Complex64)>) -> Result<Self> {
        let mut map: BTreeMap<Character, Complex64> = BTreeMap::new();
        for (chi, c) in coeffs {
            spec.validate_character(&chi)?;
            *map.entry(chi).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        map.retain(|_, c| c.norm() >= PRUNE_TOL);
        Ok(Symbol { spec, coeffs: map })
    }

    /// One-dimensional convenience: coefficients by integer exponent.
    pub fn from_laurent(spec: GroupSpec, coeffs: &[(i64, Complex64)]) -> Result<Self> {
        if spec.dim() != 1 {
            return Err(Error::InvalidSpec(
                "laurent constructor needs a one-dimensional dual".into(),
            ));
        }
        Symbol::from_coeffs(
            spec,
            coeffs
                .iter()
                .map(|&(e, c)| (Character::from_exponents(&[e]), c))
                .collect(),
        )
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn coeff(&self, chi: &Character) -> Complex64 {
        self.coeffs
            .get(chi)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn support(&self) -> impl Iterator<Item = (&Character, &Complex64)> {
        self.coeffs.iter()
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest |exponent| in the given coordinate over the support.
    pub fn max_abs_exponent(&self, coord: u32) -> i64 {
        self.coeffs
            .keys()
            .map(|chi| chi.exponent(coord).abs())
            .max()
            .unwrap_or(0)
    }

    pub fn is_analytic(&self) -> Result<bool> {
        for chi in self.coeffs.keys() {
            if !self.spec.is_positive(chi)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Restriction of the coefficients to the positive cone.
    pub fn analytic_part(&self) -> Result<Symbol> {
        let mut coeffs = BTreeMap::new();
        for (chi, c) in &self.coeffs {
            if self.spec.is_positive(chi)? {
                coeffs.insert(chi.clone(), *c);
            }
        }
        Ok(Symbol {
            spec: self.spec.clone(),
            coeffs,
        })
    }

    /// Restriction of the coefficients to the strictly negative part.
    pub fn coanalytic_part(&self) -> Result<Symbol> {
        let mut coeffs = BTreeMap::new();
        for (chi, c) in &self.coeffs {
            if !self.spec.is_positive(chi)? {
                coeffs.insert(chi.clone(), *c);
            }
        }
        Ok(Symbol {
            spec: self.spec.clone(),
            coeffs,
        })
    }

    /// The modified symbol: cone coefficients twisted by `conj(lambda(chi))`,
    /// the rest untouched.
    pub fn modified(&self, lambda: &GroupPoint) -> Result<Symbol> {
        lambda.check_compatible(&self.spec)?;
        let mut coeffs = BTreeMap::new();
        for (chi, c) in &self.coeffs {
            let twisted = if self.spec.is_positive(chi)? {
                c * lambda.evaluate(chi, &self.spec)?.conj()
            } else {
                *c
            };
            coeffs.insert(chi.clone(), twisted);
        }
        Ok(Symbol {
            spec: self.spec.clone(),
            coeffs,
        })
    }

    /// Composition with the j-th power of the rotation x -> lambda^{-1} x:
    /// every coefficient picks up `conj(lambda(chi))^j`.
    pub fn rotated(&self, lambda: &GroupPoint, j: u64) -> Result<Symbol> {
        lambda.check_compatible(&self.spec)?;
        if j == 0 {
            return Ok(self.clone());
        }
        let mut coeffs = BTreeMap::new();
        for (chi, c) in &self.coeffs {
            let factor = lambda.evaluate_power(chi, -(j as i64), &self.spec)?;
            coeffs.insert(chi.clone(), c * factor);
        }
        Ok(Symbol {
            spec: self.spec.clone(),
            coeffs,
        })
    }

    /// Pointwise product: coefficient convolution.
    pub fn multiply(&self, other: &Symbol) -> Result<Symbol> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch);
        }
        let mut coeffs: BTreeMap<Character, Complex64> = BTreeMap::new();
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                let chi = a.mul(b);
                *coeffs.entry(chi).or_insert(Complex64::new(0.0, 0.0)) += ca * cb;
            }
        }
        coeffs.retain(|_, c| c.norm() >= PRUNE_TOL);
        Ok(Symbol {
            spec: self.spec.clone(),
            coeffs,
        })
    }

    pub fn add(&self, other: &Symbol) -> Result<Symbol> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch);
        }
        let mut coeffs = self.coeffs.clone();
        for (chi, c) in &other.coeffs {
            *coeffs
                .entry(chi.clone())
                .or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        coeffs.retain(|_, c| c.norm() >= PRUNE_TOL);
        Ok(Symbol {
            spec: self.spec.clone(),
            coeffs,
        })
    }

    pub fn sub_constant(&self, c: Complex64) -> Symbol {
        let mut coeffs = self.coeffs.clone();
        let id = Character::identity();
        *coeffs.entry(id.clone()).or_insert(Complex64::new(0.0, 0.0)) -= c;
        if coeffs.get(&id).is_some_and(|v| v.norm() < PRUNE_TOL) {
            coeffs.remove(&id);
        }
        Symbol {
            spec: self.spec.clone(),
            coeffs,
        }
    }

    pub fn scale(&self, s: Complex64) -> Symbol {
        let mut coeffs = self.coeffs.clone();
        coeffs.retain(|_, c| {
            *c *= s;
            c.norm() >= PRUNE_TOL
        });
        Symbol {
            spec: self.spec.clone(),
            coeffs,
        }
    }

    /// Value at torus angles (in turns), one per coordinate.
    pub fn eval_at_angles(&self, theta: &[f64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (chi, c) in &self.coeffs {
            let mut phase = 0.0;
            for &(coord, e) in chi.exponents() {
                phase += (e as f64) * theta[coord as usize];
            }
            acc += c * Complex64::cis(TAU * phase.rem_euclid(1.0));
        }
        acc
    }

    fn grid_resolution(&self, coord: u32, floor: usize) -> usize {
        let deg = self.max_abs_exponent(coord) as usize;
        (8 * deg + 8).max(floor)
    }

    /// Sup norm over the group: grid scan at a resolution comfortably past
    /// exact trigonometric interpolation, then coordinate-wise golden
    /// section refinement around the best sample. Accurate to about 1e-6
    /// for trigonometric polynomials.
    pub fn sup_norm(&self) -> f64 {
        self.extremal_modulus(true)
    }

    /// Refined minimum modulus over the group; same scheme as `sup_norm`.
    pub fn inf_modulus(&self) -> f64 {
        self.extremal_modulus(false)
    }

    fn extremal_modulus(&self, maximize: bool) -> f64 {
        if self.coeffs.is_empty() {
            return 0.0;
        }
        let d = self.spec.dim();
        let res: Vec<usize> = (0..d).map(|c| self.grid_resolution(c as u32, 64)).collect();
        let mut best = if maximize { f64::MIN } else { f64::MAX };
        let mut best_theta = vec![0.0; d];
        let mut idx = vec![0usize; d];
        loop {
            let theta: Vec<f64> = idx
                .iter()
                .zip(res.iter())
                .map(|(&i, &r)| i as f64 / r as f64)
                .collect();
            let v = self.eval_at_angles(&theta).norm();
            if (maximize && v > best) || (!maximize && v < best) {
                best = v;
                best_theta = theta;
            }
            let mut k = 0;
            loop {
                if k == d {
                    return self.refine_extremum(best_theta, &res, maximize);
                }
                idx[k] += 1;
                if idx[k] < res[k] {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }

    fn refine_extremum(&self, mut theta: Vec<f64>, res: &[usize], maximize: bool) -> f64 {
        let d = theta.len();
        let golden = 0.618_033_988_749_894_9;
        let mut best = self.eval_at_angles(&theta).norm();
        for _ in 0..4 {
            for c in 0..d {
                let span = 1.0 / res[c] as f64;
                let mut lo = theta[c] - span;
                let mut hi = theta[c] + span;
                let value = |t: f64, theta: &mut Vec<f64>| {
                    let old = theta[c];
                    theta[c] = t.rem_euclid(1.0);
                    let v = self.eval_at_angles(theta).norm();
                    theta[c] = old;
                    v
                };
                let mut x1 = hi - golden * (hi - lo);
                let mut x2 = lo + golden * (hi - lo);
                let mut f1 = value(x1, &mut theta);
                let mut f2 = value(x2, &mut theta);
                for _ in 0..48 {
                    let keep_left = if maximize { f1 > f2 } else { f1 < f2 };
                    if keep_left {
                        hi = x2;
                        x2 = x1;
                        f2 = f1;
                        x1 = hi - golden * (hi - lo);
                        f1 = value(x1, &mut theta);
                    } else {
                        lo = x1;
                        x1 = x2;
                        f1 = f2;
                        x2 = lo + golden * (hi - lo);
                        f2 = value(x2, &mut theta);
                    }
                }
                let mid = 0.5 * (lo + hi);
                let fm = value(mid, &mut theta);
                let better = if maximize { fm > best } else { fm < best };
                if better {
                    best = fm;
                    theta[c] = mid.rem_euclid(1.0);
                }
            }
        }
        best
    }

    /// Haar integral of log|phi| by tensor trapezoidal quadrature on the
    /// torus (trapezoid = uniform mean for periodic integrands), at the
    /// given resolution per coordinate (default 4096). Errors out when a
    /// grid sample is numerically zero; the integral may still exist, the
    /// caller may refine.
    pub fn log_mean(&self, resolution: Option<usize>) -> Result<f64> {
        let res = resolution.unwrap_or(LOG_MEAN_RESOLUTION);
        if res < 2 {
            return Err(Error::InvalidSpec(
                "log-mean resolution must be >= 2".into(),
            ));
        }
        let d = self.spec.dim();
        let total = (res as u128).pow(d as u32);
        if total > (1 << 26) {
            return Err(Error::InvalidSpec(format!(
                "log-mean grid {res}^{d} too large; lower the resolution"
            )));
        }
        let mut idx = vec![0usize; d];
        let mut theta = vec![0.0f64; d];
        // Neumaier-compensated mean of ln|phi|
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        loop {
            for (t, &i) in theta.iter_mut().zip(idx.iter()) {
                *t = i as f64 / res as f64;
            }
            let m = self.eval_at_angles(&theta).norm();
            if m < VANISH_TOL {
                return Err(Error::SymbolVanishesOnGrid {
                    value: m,
                    tol: VANISH_TOL,
                    sample: theta.clone(),
                });
            }
            let term = m.ln();
            let t = sum + term;
            if sum.abs() >= term.abs() {
                comp += (sum - t) + term;
            } else {
                comp += (term - t) + sum;
            }
            sum = t;
            let mut k = 0;
            loop {
                if k == d {
                    return Ok((sum + comp) / total as f64);
                }
                idx[k] += 1;
                if idx[k] < res {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }

    /// Winding number of the symbol along one coordinate loop, other
    /// coordinates pinned at `base`. Adaptive dyadic refinement until all
    /// argument increments stay below pi/2, capped at 2^20 samples.
    fn winding_along(&self, coord: usize, base: &[f64]) -> Result<i64> {
        let mut res = self.grid_resolution(coord as u32, 256);
        loop {
            match self.try_winding(coord, base, res)? {
                Some(w) => return Ok(w),
                None => {
                    res *= 2;
                    if res > WINDING_RESOLUTION_CAP {
                        return Err(Error::WindingUnresolved(format!(
                            "argument jumps persist at the {WINDING_RESOLUTION_CAP}-sample cap on coordinate {coord}"
                        )));
                    }
                }
            }
        }
    }

    fn try_winding(&self, coord: usize, base: &[f64], res: usize) -> Result<Option<i64>> {
        let mut theta = base.to_vec();
        theta[coord] = 0.0;
        let mut prev = self.eval_at_angles(&theta);
        self.winding_vanish_check(prev, &theta)?;
        let mut total = 0.0f64;
        for k in 1..=res {
            theta[coord] = k as f64 / res as f64;
            let v = self.eval_at_angles(&theta);
            self.winding_vanish_check(v, &theta)?;
            let inc = (v / prev).arg();
            if inc.abs() > std::f64::consts::FRAC_PI_2 {
                return Ok(None);
            }
            total += inc;
            prev = v;
        }
        let turns = total / TAU;
        let rounded = turns.round();
        if (turns - rounded).abs() > 1e-3 {
            return Ok(None);
        }
        Ok(Some(rounded as i64))
    }

    fn winding_vanish_check(&self, v: Complex64, theta: &[f64]) -> Result<()> {
        if v.norm() < WINDING_VANISH_TOL {
            Err(Error::SymbolVanishesOnGrid {
                value: v.norm(),
                tol: WINDING_VANISH_TOL,
                sample: theta.to_vec(),
            })
        } else {
            Ok(())
        }
    }

    /// Coordinate winding vector. Multi-coordinate loops run at three
    /// generic slices drawn from a fixed seeded generator; homotopy
    /// invariance makes the slices equivalent for nonvanishing symbols, so
    /// disagreement flags a grid failure and errors out.
    pub fn winding_vector(&self, seed: u64) -> Result<Vec<i64>> {
        if self.coeffs.is_empty() {
            return Err(Error::SymbolVanishesOnGrid {
                value: 0.0,
                tol: WINDING_VANISH_TOL,
                sample: vec![0.0; self.spec.dim()],
            });
        }
        let d = self.spec.dim();
        let mut out = Vec::with_capacity(d);
        for coord in 0..d {
            let slices = if d == 1 { 1 } else { 3 };
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (0x00A5_1CE5 + coord as u64));
            let mut agreed: Option<i64> = None;
            for _ in 0..slices {
                let base: Vec<f64> = (0..d).map(|_| rng.gen_range(0.0..1.0)).collect();
                let w = self.winding_along(coord, &base)?;
                match agreed {
                    None => agreed = Some(w),
                    Some(prev) if prev != w => {
                        return Err(Error::WindingUnresolved(format!(
                            "slices disagree on coordinate {coord}: {prev} vs {w}"
                        )))
                    }
                    _ => {}
                }
            }
            out.push(agreed.unwrap());
        }
        Ok(out)
    }

    /// Index of a nonvanishing symbol: rotation index of the character
    /// carrying its winding vector, `None` when that character has no index.
    pub fn winding_index(&self) -> Result<Option<i64>> {
        let w = self.winding_vector(0x57ab1e)?;
        let chi = Character::from_exponents(&w);
        self.spec.rotation_index(&chi)
    }

    /// Invertibility evidence; see [`InvertibilityReport`].
    pub fn invertibility_report(&self) -> Result<InvertibilityReport> {
        let in_c_inv = self.inf_modulus() > INVERTIBILITY_TOL;
        let analytic = self.is_analytic()?;
        let in_a_inv = if self.spec.dim() == 1 && analytic && in_c_inv {
            Some(self.winding_index()? == Some(0))
        } else {
            None
        };
        Ok(InvertibilityReport { in_c_inv, in_a_inv })
    }

    /// Samples along the full-resolution loop of a one-dimensional symbol.
    pub fn circle_samples(&self, resolution: usize) -> Result<Vec<Complex64>> {
        if self.spec.dim() != 1 {
            return Err(Error::InvalidSpec(
                "circle sampling needs a one-dimensional dual".into(),
            ));
        }
        Ok((0..resolution)
            .map(|k| self.eval_at_angles(&[k as f64 / resolution as f64]))
            .collect())
    }
}

/// The partial product of twisted rotates used by operator powers:
/// `prod_{j=0}^{q-1} (modified symbol rotated j times)`.
pub fn big_phi(phi: &Symbol, lambda: &GroupPoint, q: u64) -> Result<Symbol> {
    if q == 0 {
        return Err(Error::InvalidSpec("q must be >= 1".into()));
    }
    let modified = phi.modified(lambda)?;
    let mut acc = modified.rotated(lambda, 0)?;
    for j in 1..q {
        acc = acc.multiply(&modified.rotated(lambda, j)?)?;
    }
    Ok(acc)
}

/// Tensor-grid samples of a symbol, for inspection and grid cross-checks.
/// The resolution must be past exact trigonometric interpolation in every
/// coordinate (at least 2 * max |exponent| + 1).
#[derive(Debug, Clone)]
pub struct SampledFunction {
    pub resolution: Vec<usize>,
    pub values: Vec<Complex64>,
}

impl SampledFunction {
    pub fn sample(symbol: &Symbol, resolution: &[usize]) -> Result<Self> {
        let d = symbol.spec().dim();
        if resolution.len() != d {
            return Err(Error::InvalidSpec(
                "one resolution per coordinate required".into(),
            ));
        }
        for (c, &r) in resolution.iter().enumerate() {
            let need = 2 * symbol.max_abs_exponent(c as u32) as usize + 1;
            if r < need {
                return Err(Error::InvalidSpec(format!(
                    "resolution {r} below exact interpolation ({need}) in coordinate {c}"
                )));
            }
        }
        let total: usize = resolution.iter().product();
        let mut values = Vec::with_capacity(total);
        let mut idx = vec![0usize; d];
        let mut theta = vec![0.0f64; d];
        loop {
            for (t, (&i, &r)) in theta.iter_mut().zip(idx.iter().zip(resolution.iter())) {
                *t = i as f64 / r as f64;
            }
            values.push(symbol.eval_at_angles(&theta));
            let mut k = 0;
            loop {
                if k == d {
                    return Ok(SampledFunction {
                        resolution: resolution.to_vec(),
                        values,
                    });
                }
                idx[k] += 1;
                if idx[k] < resolution[k] {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }
}
