//! The twisted Toeplitz operator as `(lambda, phi)` data, and its finite
//! sections over windows of the positive cone.
//!
//! The entry rule is the closed form obtained by composing the translation
//! unitary with the plain Toeplitz entry rule for the modified symbol:
//! with `delta = chi1^{-1} chi2`,
//! `<T chi1, chi2> = lambda(chi1) phihat(delta)` for `delta` in the cone and
//! `lambda(chi2) phihat(delta)` otherwise. The composition route is kept in
//! the verification harness as an independent path.

use std::collections::HashMap;
use std::io::Write;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::{Character, GroupPoint, GroupSpec};
use crate::linalg::CMat;
use crate::symbol::Symbol;

/// Hard cap on section size; desk-scale verification needs no more.
pub const MAX_WINDOW: usize = 4096;

/// The operator, uniquely determined by the pair `(lambda, phi)`. The
/// symbol is a trigonometric polynomial, so the modified symbol is bounded
/// by construction and the operator is well defined.
#[derive(Debug, Clone)]
pub struct LambdaToeplitz {
    lambda: GroupPoint,
    phi: Symbol,
}

impl LambdaToeplitz {
    pub fn new(lambda: GroupPoint, phi: Symbol) -> Result<Self> {
        lambda.check_compatible(phi.spec())?;
        Ok(LambdaToeplitz { lambda, phi })
    }

    pub fn lambda(&self) -> &GroupPoint {
        &self.lambda
    }

    pub fn phi(&self) -> &Symbol {
        &self.phi
    }

    pub fn group(&self) -> &GroupSpec {
        self.phi.spec()
    }

    pub fn modified_symbol(&self) -> Result<Symbol> {
        self.phi.modified(&self.lambda)
    }

    /// `<T chi1, chi2>` for cone characters.
    pub fn entry(&self, chi1: &Character, chi2: &Character) -> Result<Complex64> {
        let spec = self.group();
        if !spec.is_positive(chi1)? || !spec.is_positive(chi2)? {
            return Err(Error::CharacterOutsideCone);
        }
        let delta = chi2.div(chi1);
        let coeff = self.phi.coeff(&delta);
        if coeff == Complex64::new(0.0, 0.0) {
            return Ok(coeff);
        }
        let carrier = if spec.is_positive(&delta)? {
            chi1
        } else {
            chi2
        };
        Ok(self.lambda.evaluate(carrier, spec)? * coeff)
    }

    /// Coefficient-level weighted-shift action for analytic symbols:
    /// `f` maps to `phi * (f compose translation by lambda)`, i.e. the
    /// output coefficient at eta is `sum_xi phihat(eta xi^{-1}) lambda(xi)
    /// fhat(xi)`.
    pub fn apply_weighted_shift(&self, f: &Symbol) -> Result<Symbol> {
        if f.spec() != self.group() {
            return Err(Error::SpecMismatch);
        }
        if !self.phi.is_analytic()? || !f.is_analytic()? {
            return Err(Error::NonAnalyticSymbol);
        }
        let spec = self.group();
        let mut twisted = Vec::with_capacity(f.support_len());
        for (xi, c) in f.support() {
            twisted.push((xi.clone(), c * self.lambda.evaluate(xi, spec)?));
        }
        let g = Symbol::from_coeffs(spec.clone(), twisted)?;
        self.phi.multiply(&g)
    }
}

/// An ordered window of cone characters used for finite sections: a lower
/// set of the cone within a declared exponent box, listed ascending, with
/// the identity first.
#[derive(Debug, Clone)]
pub struct TruncationWindow {
    spec: GroupSpec,
    chars: Vec<Character>,
    index: HashMap<Character, usize>,
}

impl TruncationWindow {
    /// All cone characters of the exponent box `[-b_c, b_c]` per
    /// coordinate, in ascending group order. The lex order type on the cone
    /// is not a plain sequence for d >= 2, so boxed lower sets are the
    /// canonical reproducible compressions.
    pub fn cone_box(spec: &GroupSpec, bounds: &[i64]) -> Result<Self> {
        if bounds.len() != spec.dim() {
            return Err(Error::InvalidWindow(format!(
                "expected {} box bounds, got {}",
                spec.dim(),
                bounds.len()
            )));
        }
        if bounds.iter().any(|&b| b < 0) {
            return Err(Error::InvalidWindow("box bounds must be >= 0".into()));
        }
        let mut chars = Vec::new();
        let d = spec.dim();
        let mut exps: Vec<i64> = bounds.iter().map(|&b| -b).collect();
        loop {
            let chi = Character::from_exponents(&exps);
            if spec.is_positive(&chi)? {
                chars.push(chi);
            }
            let mut k = 0;
            loop {
                if k == d {
                    return Self::sorted(spec.clone(), chars);
                }
                exps[k] += 1;
                if exps[k] <= bounds[k] {
                    break;
                }
                exps[k] = -bounds[k];
                k += 1;
            }
        }
    }

    /// The first n cone characters of a one-dimensional dual.
    pub fn first_n(spec: &GroupSpec, n: usize) -> Result<Self> {
        if spec.dim() != 1 {
            return Err(Error::InvalidWindow(
                "first_n needs a one-dimensional dual; use cone_box".into(),
            ));
        }
        if n == 0 {
            return Err(Error::InvalidWindow("window must be nonempty".into()));
        }
        let chars: Vec<Character> = (0..n as i64)
            .map(|k| Character::from_exponents(&[k]))
            .collect();
        Self::sorted(spec.clone(), chars)
    }

    fn sorted(spec: GroupSpec, mut chars: Vec<Character>) -> Result<Self> {
        if chars.len() > MAX_WINDOW {
            return Err(Error::InvalidWindow(format!(
                "window size {} exceeds the cap {MAX_WINDOW}",
                chars.len()
            )));
        }
        match &spec {
            GroupSpec::LatticeLex { dim } => {
                // ascending group order = ascending dense lex order
                chars.sort_by_key(|chi| chi.dense(*dim));
            }
            GroupSpec::RealEmbedded { guard, .. } => {
                let mut keyed: Vec<(f64, f64, Character)> = Vec::with_capacity(chars.len());
                for chi in chars {
                    let img = spec.real_image(&chi)?;
                    keyed.push((img, img.abs(), chi));
                }
                keyed.sort_by(|a, b| a.0.total_cmp(&b.0));
                for pair in keyed.windows(2) {
                    let gap = pair[1].0 - pair[0].0;
                    if gap <= guard * pair[1].1.max(1.0) {
                        return Err(Error::AmbiguousOrder {
                            diff: gap,
                            guard: *guard,
                        });
                    }
                }
                chars = keyed.into_iter().map(|(_, _, chi)| chi).collect();
            }
        }
        if chars.first().is_none_or(|c| !c.is_identity()) {
            return Err(Error::InvalidWindow(
                "window must start at the identity character".into(),
            ));
        }
        let index = chars
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), i))
            .collect();
        Ok(TruncationWindow { spec, chars, index })
    }

    /// Validate and adopt an explicit character list: ascending, identity
    /// first, all in the cone, and a lower set within its own exponent box.
    pub fn from_chars(spec: &GroupSpec, chars: Vec<Character>) -> Result<Self> {
        for chi in &chars {
            if !spec.is_positive(chi)? {
                return Err(Error::InvalidWindow(
                    "window contains a character outside the cone".into(),
                ));
            }
        }
        let win = Self::sorted(spec.clone(), chars)?;
        // lower-set check against the box spanned by the window itself
        let mut bounds = vec![0i64; spec.dim()];
        for chi in &win.chars {
            for &(c, e) in chi.exponents() {
                bounds[c as usize] = bounds[c as usize].max(e.abs());
            }
        }
        let top = win.chars.last().unwrap();
        let probe = TruncationWindow::cone_box(spec, &bounds)?;
        for chi in probe.chars() {
            if spec.compare(chi, top)? != std::cmp::Ordering::Greater
                && !win.index.contains_key(chi)
            {
                return Err(Error::InvalidWindow(format!(
                    "missing {:?}: window is not a lower set within its box",
                    chi.dense(spec.dim())
                )));
            }
        }
        Ok(win)
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn size(&self) -> usize {
        self.chars.len()
    }

    pub fn chars(&self) -> &[Character] {
        &self.chars
    }

    pub fn char_at(&self, i: usize) -> &Character {
        &self.chars[i]
    }

    pub fn index_of(&self, chi: &Character) -> Option<usize> {
        self.index.get(chi).copied()
    }
}

/// A dense finite section over a truncation window;
/// `matrix[(row of chi2, col of chi1)] = <T chi1, chi2>`.
#[derive(Debug, Clone)]
pub struct FiniteSection {
    window: TruncationWindow,
    matrix: CMat,
}

impl FiniteSection {
    pub fn window(&self) -> &TruncationWindow {
        &self.window
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    /// Mutable access, mainly for fault-injection controls in the harness.
    pub fn matrix_mut(&mut self) -> &mut CMat {
        &mut self.matrix
    }

    pub fn size(&self) -> usize {
        self.window.size()
    }

    pub fn adjoint(&self) -> FiniteSection {
        FiniteSection {
            window: self.window.clone(),
            matrix: self.matrix.adjoint(),
        }
    }

    /// CSV rows `row,col,re,im`, 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "row,col,re,im")?;
        for i in 0..self.size() {
            for j in 0..self.size() {
                let v = self.matrix[(i, j)];
                writeln!(w, "{},{},{:.16e},{:.16e}", i, j, v.re, v.im)?;
            }
        }
        Ok(())
    }
}

/// Compression of the operator to the window, via the closed-form entries.
pub fn build_finite_section(
    op: &LambdaToeplitz,
    window: &TruncationWindow,
) -> Result<FiniteSection> {
    if window.spec() != op.group() {
        return Err(Error::SpecMismatch);
    }
    let n = window.size();
    let spec = op.group();
    let mut lam_vals = Vec::with_capacity(n);
    for chi in window.chars() {
        lam_vals.push(op.lambda().evaluate(chi, spec)?);
    }
    let mut m = CMat::zeros(n, n);
    for (delta, &coeff) in op.phi().support() {
        let positive = spec.is_positive(delta)?;
        for (col, chi1) in window.chars().iter().enumerate() {
            let chi2 = chi1.mul(delta);
            if let Some(row) = window.index_of(&chi2) {
                m[(row, col)] = coeff
                    * if positive {
                        lam_vals[col]
                    } else {
                        lam_vals[row]
                    };
            }
        }
    }
    Ok(FiniteSection {
        window: window.clone(),
        matrix: m,
    })
}

/// Reconstruct the symbol from the first column and first row of the
/// finite section over `probe`; errors when the probe cannot see the whole
/// declared support.
pub fn extract_symbol(op: &LambdaToeplitz, probe: &TruncationWindow) -> Result<Symbol> {
    let spec = op.group();
    for (delta, _) in op.phi().support() {
        let covered = if spec.is_positive(delta)? {
            probe.index_of(delta).is_some()
        } else {
            probe.index_of(&delta.inverse()).is_some()
        };
        if !covered {
            return Err(Error::ProbeTooSmall);
        }
    }
    let section = build_finite_section(op, probe)?;
    let mut coeffs = Vec::with_capacity(2 * probe.size());
    for (i, chi) in probe.chars().iter().enumerate() {
        // column of the identity: <T 1, chi> = phihat(chi) on the cone
        coeffs.push((chi.clone(), section.matrix[(i, 0)]));
        // row of the identity: <T xi, 1> = phihat(xi^{-1}) off the cone
        if i > 0 {
            coeffs.push((chi.inverse(), section.matrix[(0, i)]));
        }
    }
    Symbol::from_coeffs(spec.clone(), coeffs)
}
