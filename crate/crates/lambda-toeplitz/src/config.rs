//! Experiment configuration files: one human-writable TOML document per
//! experiment. The schema is validated up front and unknown fields are
//! rejected.
//!
//! Angles are exact when written as strings ("1/2", "0.25"); bare TOML
//! floats are taken at face value as binary floats and treated as
//! irrational. Rationality is declared through syntax, never inferred from
//! a float.

use std::path::Path;

use num_complex::Complex64;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::group::{Angle, Character, GroupPoint, GroupSpec};
use crate::operator::{LambdaToeplitz, TruncationWindow};
use crate::symbol::Symbol;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub group: GroupDef,
    pub lambda: PointDef,
    pub symbol: SymbolDef,
    #[serde(default)]
    pub window: Option<WindowDef>,
    #[serde(default)]
    pub index: Option<IndexParams>,
    #[serde(default)]
    pub spectrum: Option<SpectrumParams>,
    #[serde(default)]
    pub verify: Option<VerifyParams>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDef {
    /// "lattice_lex" or "real_embedded"
    pub kind: String,
    #[serde(default)]
    pub dimension: Option<usize>,
    #[serde(default)]
    pub basis: Option<Vec<f64>>,
    #[serde(default)]
    pub guard: Option<f64>,
}

impl GroupDef {
    pub fn build(&self) -> Result<GroupSpec> {
        match self.kind.as_str() {
            "lattice_lex" => {
                let dim = self
                    .dimension
                    .ok_or_else(|| Error::Config("lattice_lex group needs `dimension`".into()))?;
                if self.basis.is_some() {
                    return Err(Error::Config("`basis` is a real_embedded field".into()));
                }
                GroupSpec::lattice_lex(dim)
            }
            "real_embedded" => {
                let basis = self
                    .basis
                    .clone()
                    .ok_or_else(|| Error::Config("real_embedded group needs `basis`".into()))?;
                if self.dimension.is_some_and(|d| d != basis.len()) {
                    return Err(Error::Config(
                        "`dimension` disagrees with the basis length".into(),
                    ));
                }
                match self.guard {
                    Some(g) => GroupSpec::real_embedded_with_guard(basis, g),
                    None => GroupSpec::real_embedded(basis),
                }
            }
            other => Err(Error::Config(format!(
                "unknown group kind {other:?}; expected lattice_lex or real_embedded"
            ))),
        }
    }
}

/// An angle literal: a string is parsed exactly, a number is a binary
/// float treated as irrational.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum AngleDef {
    Exact(String),
    Float(f64),
}

impl AngleDef {
    pub fn build(&self) -> Result<Angle> {
        match self {
            AngleDef::Exact(s) => Angle::parse(s),
            AngleDef::Float(t) if t.is_finite() => Ok(Angle::real(*t)),
            AngleDef::Float(t) => Err(Error::Config(format!("angle {t} is not finite"))),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDef {
    /// Torus angles, one per coordinate (lattice_lex groups).
    #[serde(default)]
    pub angles: Option<Vec<AngleDef>>,
    /// Real parameter (real_embedded groups).
    #[serde(default)]
    pub t: Option<f64>,
}

impl PointDef {
    pub fn build(&self) -> Result<GroupPoint> {
        match (&self.angles, self.t) {
            (Some(angles), None) => Ok(GroupPoint::torus(
                angles.iter().map(|a| a.build()).collect::<Result<_>>()?,
            )),
            (None, Some(t)) if t.is_finite() => Ok(GroupPoint::real_parameter(t)),
            (None, Some(t)) => Err(Error::Config(format!("parameter t = {t} is not finite"))),
            _ => Err(Error::Config(
                "give exactly one of `angles` (torus) or `t` (real parameter)".into(),
            )),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffDef {
    pub exponents: Vec<i64>,
    #[serde(default)]
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolDef {
    pub coeffs: Vec<CoeffDef>,
}

impl SymbolDef {
    pub fn build(&self, spec: &GroupSpec) -> Result<Symbol> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                (
                    Character::from_exponents(&c.exponents),
                    Complex64::new(c.re, c.im),
                )
            })
            .collect();
        Symbol::from_coeffs(spec.clone(), coeffs)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WindowDef {
    /// First-n window (one-dimensional duals).
    #[serde(default)]
    pub size: Option<usize>,
    /// Exponent box bounds, one per coordinate.
    #[serde(default, rename = "box")]
    pub box_bounds: Option<Vec<i64>>,
}

impl WindowDef {
    pub fn build(&self, spec: &GroupSpec) -> Result<TruncationWindow> {
        match (self.size, &self.box_bounds) {
            (Some(n), None) => TruncationWindow::first_n(spec, n),
            (None, Some(b)) => TruncationWindow::cone_box(spec, b),
            _ => Err(Error::Config(
                "give exactly one of `size` or `box` for the window".into(),
            )),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IndexParams {
    /// Characters whose rotation indices to print, as dense exponents.
    #[serde(default)]
    pub characters: Vec<Vec<i64>>,
    /// Also enumerate the oracle up to this exponent bound.
    #[serde(default)]
    pub bruteforce_bound: Option<i64>,
    /// Report the winding index of the configured symbol.
    #[serde(default = "default_true")]
    pub symbol_winding: bool,
    /// Points at which to compute Fredholm indices.
    #[serde(default)]
    pub mu: Vec<[f64; 2]>,
    /// Order of the group point; defaults to the computed order.
    #[serde(default)]
    pub q: Option<u64>,
    /// Primitive-root witness character; defaults to the cone generator.
    #[serde(default)]
    pub chi0: Option<Vec<i64>>,
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumParams {
    #[serde(default)]
    pub resolution: Option<usize>,
    /// "essential", "full", or "both" (default).
    #[serde(default)]
    pub which: Option<String>,
    #[serde(default)]
    pub probe_mu: Vec<[f64; 2]>,
    /// Window sizes for resolvent probes. One-dimensional duals read these
    /// as first-n sizes; higher dimensions as symmetric box bounds.
    #[serde(default)]
    pub probe_windows: Vec<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyParams {
    #[serde(default)]
    pub checks: Vec<String>,
}

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    pub fn build_group(&self) -> Result<GroupSpec> {
        self.group.build()
    }

    pub fn build_operator(&self) -> Result<LambdaToeplitz> {
        let spec = self.build_group()?;
        let lambda = self.lambda.build()?;
        let phi = self.symbol.build(&spec)?;
        LambdaToeplitz::new(lambda, phi)
    }

    pub fn build_window(&self) -> Result<Option<TruncationWindow>> {
        let spec = self.build_group()?;
        self.window.as_ref().map(|w| w.build(&spec)).transpose()
    }

    /// A probe window from a size hint: first-n in one dimension, a
    /// symmetric exponent box otherwise.
    pub fn probe_window(spec: &GroupSpec, hint: usize) -> Result<TruncationWindow> {
        if spec.dim() == 1 {
            TruncationWindow::first_n(spec, hint)
        } else {
            TruncationWindow::cone_box(spec, &vec![hint as i64; spec.dim()])
        }
    }
}
