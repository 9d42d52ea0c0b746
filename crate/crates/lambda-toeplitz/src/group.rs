//! Totally ordered discrete duals of compact abelian groups.
//!
//! A group element of the dual is a [`Character`], stored as a finitely
//! supported exponent vector. A [`GroupSpec`] fixes the total order: either
//! the lexicographic order on a lattice `Z^d` (dual of the d-torus) or the
//! order pulled back from an embedding `n -> sum n_j beta_j` into the real
//! line (dual of a Bohr compactification). [`GroupPoint`] carries the data
//! of a point of the compact group itself, enough to evaluate characters.

use std::cmp::Ordering;

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A character of the compact group: finitely supported exponent vector.
///
/// Exponents are stored sparsely, sorted by coordinate, zeros never kept, so
/// equality and hashing are structural.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    exps: Vec<(u32, i64)>,
}

impl Character {
    pub fn identity() -> Self {
        Character { exps: Vec::new() }
    }

    /// Build from a dense exponent slice; index = coordinate.
    pub fn from_exponents(dense: &[i64]) -> Self {
        let exps = dense
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| (i as u32, e))
            .collect();
        Character { exps }
    }

    /// Build from (coordinate, exponent) pairs; duplicates are summed.
    pub fn from_pairs(pairs: &[(u32, i64)]) -> Self {
        let mut v: Vec<(u32, i64)> = pairs.to_vec();
        v.sort_by_key(|&(c, _)| c);
        let mut exps: Vec<(u32, i64)> = Vec::with_capacity(v.len());
        for (c, e) in v {
            match exps.last_mut() {
                Some(last) if last.0 == c => last.1 += e,
                _ => exps.push((c, e)),
            }
        }
        exps.retain(|&(_, e)| e != 0);
        Character { exps }
    }

    /// The character with exponent 1 at `coord` and 0 elsewhere.
    pub fn generator(coord: u32) -> Self {
        Character {
            exps: vec![(coord, 1)],
        }
    }

    pub fn is_identity(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, coord: u32) -> i64 {
        self.exps
            .binary_search_by_key(&coord, |&(c, _)| c)
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }

    pub fn exponents(&self) -> &[(u32, i64)] {
        &self.exps
    }

    pub fn max_coord(&self) -> Option<u32> {
        self.exps.last().map(|&(c, _)| c)
    }

    pub fn max_abs_exponent(&self) -> i64 {
        self.exps.iter().map(|&(_, e)| e.abs()).max().unwrap_or(0)
    }

    pub fn dense(&self, dim: usize) -> Vec<i64> {
        let mut out = vec![0; dim];
        for &(c, e) in &self.exps {
            if (c as usize) < dim {
                out[c as usize] = e;
            }
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut exps = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() || j < other.exps.len() {
            let next = match (self.exps.get(i), other.exps.get(j)) {
                (Some(&(ca, ea)), Some(&(cb, eb))) => match ca.cmp(&cb) {
                    Ordering::Less => {
                        i += 1;
                        (ca, ea)
                    }
                    Ordering::Greater => {
                        j += 1;
                        (cb, eb)
                    }
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                        (ca, ea + eb)
                    }
                },
                (Some(&(ca, ea)), None) => {
                    i += 1;
                    (ca, ea)
                }
                (None, Some(&(cb, eb))) => {
                    j += 1;
                    (cb, eb)
                }
                (None, None) => unreachable!(),
            };
            if next.1 != 0 {
                exps.push(next);
            }
        }
        Character { exps }
    }

    pub fn inverse(&self) -> Self {
        Character {
            exps: self.exps.iter().map(|&(c, e)| (c, -e)).collect(),
        }
    }

    /// self * other^{-1}
    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inverse())
    }

    pub fn pow(&self, n: i64) -> Self {
        if n == 0 {
            return Character::identity();
        }
        Character {
            exps: self.exps.iter().map(|&(c, e)| (c, e * n)).collect(),
        }
    }

    pub fn dense_string(&self, dim: usize) -> String {
        let d = self.dense(dim);
        let parts: Vec<String> = d.iter().map(|e| e.to_string()).collect();
        format!("({})", parts.join(","))
    }
}

/// Result of the enumerative rotation-index computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BruteForceIndex {
    Finite(u64),
    ExceedsBound,
}

/// The ordered dual group.
#[derive(Debug, Clone, PartialEq)]
pub enum GroupSpec {
    /// `Z^d` with lexicographic order, earlier coordinates dominating.
    /// The compact group is the d-torus.
    LatticeLex { dim: usize },
    /// `Z^d` ordered through `n -> sum n_j beta_j`, `beta_1 = 1`. Rational
    /// independence of the basis is the caller's responsibility; only
    /// pairwise distinctness of images on a small exponent box is checked,
    /// because independence is undecidable from floating data.
    RealEmbedded { basis: Vec<f64>, guard: f64 },
}

pub const DEFAULT_ORDER_GUARD: f64 = 1e-15;

impl GroupSpec {
    pub fn lattice_lex(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidSpec("dimension must be >= 1".into()));
        }
        Ok(GroupSpec::LatticeLex { dim })
    }

    pub fn real_embedded(basis: Vec<f64>) -> Result<Self> {
        Self::real_embedded_with_guard(basis, DEFAULT_ORDER_GUARD)
    }

    pub fn real_embedded_with_guard(basis: Vec<f64>, guard: f64) -> Result<Self> {
        if basis.is_empty() {
            return Err(Error::InvalidSpec("basis must be nonempty".into()));
        }
        if basis[0] != 1.0 {
            return Err(Error::InvalidSpec("first basis element must be 1".into()));
        }
        if !basis.iter().all(|b| b.is_finite()) {
            return Err(Error::InvalidSpec("basis entries must be finite".into()));
        }
        let spec = GroupSpec::RealEmbedded { basis, guard };
        // Distinctness probe: no nonzero character in a small box may map to
        // (numerically) zero. This catches blatant rational dependence like
        // basis (1, 1/2) without pretending to decide independence.
        for chi in spec.box_characters(3) {
            if chi.is_identity() {
                continue;
            }
            let (img, scale) = spec.real_image_scaled(&chi)?;
            if img.abs() <= spec.order_guard() * scale.max(1.0) {
                return Err(Error::InvalidSpec(format!(
                    "basis images collide on the sampled box at exponents {:?}",
                    chi.dense(spec.dim())
                )));
            }
        }
        Ok(spec)
    }

    pub fn dim(&self) -> usize {
        match self {
            GroupSpec::LatticeLex { dim } => *dim,
            GroupSpec::RealEmbedded { basis, .. } => basis.len(),
        }
    }

    fn order_guard(&self) -> f64 {
        match self {
            GroupSpec::LatticeLex { .. } => 0.0,
            GroupSpec::RealEmbedded { guard, .. } => *guard,
        }
    }

    pub fn validate_character(&self, chi: &Character) -> Result<()> {
        match chi.max_coord() {
            Some(c) if (c as usize) >= self.dim() => Err(Error::DimensionMismatch {
                coord: c,
                dim: self.dim(),
            }),
            _ => Ok(()),
        }
    }

    /// Real image and magnitude scale of a character under the embedding.
    fn real_image_scaled(&self, chi: &Character) -> Result<(f64, f64)> {
        let basis = match self {
            GroupSpec::RealEmbedded { basis, .. } => basis,
            GroupSpec::LatticeLex { .. } => {
                return Err(Error::InvalidSpec(
                    "real image undefined for the lexicographic order".into(),
                ))
            }
        };
        self.validate_character(chi)?;
        // Compensated dot product: exact products via fma, Neumaier sum.
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        let mut scale = 0.0f64;
        for &(c, e) in chi.exponents() {
            let x = e as f64;
            let b = basis[c as usize];
            let p = x * b;
            let perr = x.mul_add(b, -p);
            scale += p.abs();
            for term in [p, perr] {
                let t = sum + term;
                if sum.abs() >= term.abs() {
                    comp += (sum - t) + term;
                } else {
                    comp += (term - t) + sum;
                }
                sum = t;
            }
        }
        Ok((sum + comp, scale))
    }

    pub fn real_image(&self, chi: &Character) -> Result<f64> {
        self.real_image_scaled(chi).map(|(img, _)| img)
    }

    /// Membership in the positive cone X+ (identity included).
    pub fn is_positive(&self, chi: &Character) -> Result<bool> {
        self.validate_character(chi)?;
        if chi.is_identity() {
            return Ok(true);
        }
        match self {
            GroupSpec::LatticeLex { .. } => {
                // First nonzero exponent in coordinate order decides the sign.
                Ok(chi.exponents()[0].1 > 0)
            }
            GroupSpec::RealEmbedded { guard, .. } => {
                let (img, scale) = self.real_image_scaled(chi)?;
                if img.abs() <= guard * scale.max(1.0) {
                    return Err(Error::AmbiguousOrder {
                        diff: img.abs(),
                        guard: *guard,
                    });
                }
                Ok(img > 0.0)
            }
        }
    }

    /// Total order: `Less` iff chi1^{-1} chi2 lies in X+ \ {1}.
    pub fn compare(&self, chi1: &Character, chi2: &Character) -> Result<Ordering> {
        let delta = chi2.div(chi1);
        self.validate_character(&delta)?;
        self.validate_character(chi1)?;
        self.validate_character(chi2)?;
        if delta.is_identity() {
            return Ok(Ordering::Equal);
        }
        Ok(if self.is_positive(&delta)? {
            Ordering::Less
        } else {
            Ordering::Greater
        })
    }

    /// The least element of X+ \ {1} when one exists.
    ///
    /// Lexicographic order: the last-coordinate generator. Real-embedded
    /// order with d >= 2: the image group is dense in the line, so there is
    /// no smallest strictly positive element.
    pub fn smallest_positive(&self) -> Option<Character> {
        match self {
            GroupSpec::LatticeLex { dim } => Some(Character::generator(*dim as u32 - 1)),
            GroupSpec::RealEmbedded { basis, .. } => {
                if basis.len() == 1 {
                    Some(Character::generator(0))
                } else {
                    None
                }
            }
        }
    }

    /// Rotation index of a character: the position of `chi` in the cyclic
    /// subgroup generated by the smallest strictly positive element, `None`
    /// when `chi` lies outside that subgroup ("has no index").
    ///
    /// The enumerative definition counts `X+ \ chi X+`, i.e. the order
    /// interval `[1, chi)`; that set is finite exactly on the cyclic
    /// subgroup, which is why the subgroup shortcut is used here and the
    /// enumeration is kept as the independent oracle.
    pub fn rotation_index(&self, chi: &Character) -> Result<Option<i64>> {
        self.validate_character(chi)?;
        if chi.is_identity() {
            return Ok(Some(0));
        }
        let zeta = match self.smallest_positive() {
            Some(z) => z,
            None => return Ok(None),
        };
        let coord = zeta.exponents()[0].0;
        if chi.exponents().len() == 1 && chi.exponents()[0].0 == coord {
            Ok(Some(chi.exponents()[0].1))
        } else {
            Ok(None)
        }
    }

    /// Independent oracle for the rotation index of a cone character:
    /// enumerate the order interval `[1, chi)` inside the exponent box
    /// `[-bound, bound]^d`. Returns `Finite` only when the interval provably
    /// fits in the box: no member may touch the box shell. For the
    /// real-embedded order with d >= 2 the interval is never finite (the
    /// image group is dense), so anything but the identity exceeds every
    /// bound.
    pub fn rotation_index_bruteforce(
        &self,
        chi: &Character,
        bound: i64,
    ) -> Result<BruteForceIndex> {
        if bound < 1 {
            return Err(Error::InvalidSpec("bound must be >= 1".into()));
        }
        if !self.is_positive(chi)? {
            return Err(Error::CharacterOutsideCone);
        }
        if chi.is_identity() {
            return Ok(BruteForceIndex::Finite(0));
        }
        if let GroupSpec::RealEmbedded { basis, .. } = self {
            if basis.len() >= 2 {
                return Ok(BruteForceIndex::ExceedsBound);
            }
        }
        let mut count = 0u64;
        let mut touches_shell = false;
        for xi in self.box_characters(bound) {
            if !self.is_positive(&xi)? {
                continue;
            }
            if self.compare(&xi, chi)? == Ordering::Less {
                count += 1;
                if xi.max_abs_exponent() == bound {
                    touches_shell = true;
                }
            }
        }
        if touches_shell {
            Ok(BruteForceIndex::ExceedsBound)
        } else {
            Ok(BruteForceIndex::Finite(count))
        }
    }

    /// All characters with every exponent in `[-bound, bound]`.
    pub fn box_characters(&self, bound: i64) -> Vec<Character> {
        let d = self.dim();
        let width = (2 * bound + 1) as usize;
        let total = width.pow(d as u32);
        let mut out = Vec::with_capacity(total);
        let mut exps = vec![-bound; d];
        loop {
            out.push(Character::from_exponents(&exps));
            let mut k = 0;
            loop {
                if k == d {
                    return out;
                }
                exps[k] += 1;
                if exps[k] <= bound {
                    break;
                }
                exps[k] = -bound;
                k += 1;
            }
        }
    }
}

/// A torus angle: exact rational (as a fraction of a full turn) or a plain
/// float, which the library treats as irrational. Rationality has to be
/// declared through the exact constructor; it is never inferred from a
/// float value.
#[derive(Debug, Clone, PartialEq)]
pub enum Angle {
    Rational(Ratio<i64>),
    Real(f64),
}

impl Angle {
    pub fn rational(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidSpec("angle denominator is zero".into()));
        }
        let r = Ratio::new(num, den);
        Ok(Angle::Rational(r - r.floor()))
    }

    pub fn real(t: f64) -> Self {
        if !t.is_finite() {
            return Angle::Real(f64::NAN);
        }
        let f = t.rem_euclid(1.0);
        if f == 0.0 {
            Angle::Rational(Ratio::zero())
        } else {
            Angle::Real(f)
        }
    }

    /// Parse "p/q", a decimal string ("0.25"), or an integer string, all
    /// exact rationals. Float syntax in config files maps to `real`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |m: &str| Error::Config(format!("bad angle {s:?}: {m}"));
        if let Some((p, q)) = s.split_once('/') {
            let num: i64 = p.trim().parse().map_err(|_| bad("numerator"))?;
            let den: i64 = q.trim().parse().map_err(|_| bad("denominator"))?;
            return Angle::rational(num, den);
        }
        if let Some((int, frac)) = s.split_once('.') {
            if frac.len() > 17 || !frac.chars().all(|c| c.is_ascii_digit()) {
                return Err(bad("decimal part"));
            }
            let int: i64 = if int.is_empty() || int == "-" {
                0
            } else {
                int.parse().map_err(|_| bad("integer part"))?
            };
            let neg = s.starts_with('-');
            let scale = 10i64
                .checked_pow(frac.len() as u32)
                .ok_or_else(|| bad("too long"))?;
            let fnum: i64 = if frac.is_empty() {
                0
            } else {
                frac.parse().map_err(|_| bad("decimal part"))?
            };
            let signed = int
                .checked_mul(scale)
                .and_then(|v| {
                    if neg {
                        v.checked_sub(fnum)
                    } else {
                        v.checked_add(fnum)
                    }
                })
                .ok_or_else(|| bad("overflow"))?;
            return Angle::rational(signed, scale);
        }
        let int: i64 = s.parse().map_err(|_| bad("expected p/q or decimal"))?;
        Angle::rational(int, 1)
    }

    pub fn as_f64(&self) -> f64 {
        match self {
            Angle::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            Angle::Real(t) => *t,
        }
    }
}

/// A point of the compact group, given by the data needed to evaluate
/// characters at it.
#[derive(Debug, Clone, PartialEq)]
pub enum GroupPoint {
    /// Point of the d-torus; pairs with `LatticeLex` of matching dimension.
    TorusAngles(Vec<Angle>),
    /// Point of the real-embedded Bohr group; pairs with `RealEmbedded`.
    RealParameter(f64),
}

/// Angle of an evaluated character, split into an exact rational part and a
/// float remainder. The represented angle is `frac(rat + real)` turns.
#[derive(Debug, Clone, Copy)]
pub struct PointAngle {
    rat: Ratio<i64>,
    real: f64,
}

fn frac_ratio(r: Ratio<i64>) -> Ratio<i64> {
    r - r.floor()
}

/// acc + n * r reduced mod 1, exact in i128.
fn add_mul_frac(acc: Ratio<i64>, n: i64, r: &Ratio<i64>) -> Result<Ratio<i64>> {
    let num = (*acc.numer() as i128) * (*r.denom() as i128)
        + (n as i128) * (*r.numer() as i128) * (*acc.denom() as i128);
    let den = (*acc.denom() as i128) * (*r.denom() as i128);
    let g = num.gcd(&den);
    let (mut num, den) = if g != 0 {
        (num / g, den / g)
    } else {
        (num, den)
    };
    num = num.rem_euclid(den);
    let num =
        i64::try_from(num).map_err(|_| Error::InvalidSpec("angle numerator overflow".into()))?;
    let den =
        i64::try_from(den).map_err(|_| Error::InvalidSpec("angle denominator overflow".into()))?;
    Ok(Ratio::new(num, den))
}

impl PointAngle {
    const ZERO: PointAngle = PointAngle {
        rat: Ratio::new_raw(0, 1),
        real: 0.0,
    };

    fn fraction(&self) -> f64 {
        (self.rat.to_f64().unwrap_or(0.0) + self.real).rem_euclid(1.0)
    }

    /// Distance from `k * angle` to the nearest integer, in turns.
    pub fn multiple_distance_to_integer(&self, k: i64) -> f64 {
        let rat = frac_ratio(self.rat * Ratio::from_integer(k));
        let f = (rat.to_f64().unwrap_or(0.0) + (k as f64) * self.real).rem_euclid(1.0);
        f.min(1.0 - f)
    }

    pub fn is_exactly_rational(&self) -> bool {
        self.real == 0.0
    }

    pub fn rational_part(&self) -> Ratio<i64> {
        frac_ratio(self.rat)
    }

    /// exp(2 pi i * angle)
    pub fn unit_value(&self) -> Complex64 {
        Complex64::cis(std::f64::consts::TAU * self.fraction())
    }

    /// exp(2 pi i * k * angle), with the multiple reduced before trig.
    pub fn unit_power(&self, k: i64) -> Complex64 {
        let rat = frac_ratio(self.rat * Ratio::from_integer(k));
        let f = (rat.to_f64().unwrap_or(0.0) + ((k as f64) * self.real).rem_euclid(1.0))
            .rem_euclid(1.0);
        Complex64::cis(std::f64::consts::TAU * f)
    }
}

impl GroupPoint {
    pub fn torus(angles: Vec<Angle>) -> Self {
        GroupPoint::TorusAngles(angles)
    }

    pub fn real_parameter(t: f64) -> Self {
        GroupPoint::RealParameter(t)
    }

    /// The identity of the group, in the representation matching `spec`.
    pub fn identity_for(spec: &GroupSpec) -> Self {
        match spec {
            GroupSpec::LatticeLex { dim } => {
                GroupPoint::TorusAngles(vec![Angle::Rational(Ratio::zero()); *dim])
            }
            GroupSpec::RealEmbedded { .. } => GroupPoint::RealParameter(0.0),
        }
    }

    pub fn check_compatible(&self, spec: &GroupSpec) -> Result<()> {
        match (self, spec) {
            (GroupPoint::TorusAngles(a), GroupSpec::LatticeLex { dim }) => {
                if a.len() == *dim {
                    Ok(())
                } else {
                    Err(Error::VariantMismatch(format!(
                        "point has {} angles, lattice has dimension {}",
                        a.len(),
                        dim
                    )))
                }
            }
            (GroupPoint::RealParameter(_), GroupSpec::RealEmbedded { .. }) => Ok(()),
            (GroupPoint::TorusAngles(_), GroupSpec::RealEmbedded { .. }) => Err(
                Error::VariantMismatch("torus angles paired with real-embedded order".into()),
            ),
            (GroupPoint::RealParameter(_), GroupSpec::LatticeLex { .. }) => Err(
                Error::VariantMismatch("real parameter paired with lattice order".into()),
            ),
        }
    }

    /// The angle (in turns) of `chi(lambda)`.
    pub fn angle_of(&self, chi: &Character, spec: &GroupSpec) -> Result<PointAngle> {
        self.check_compatible(spec)?;
        spec.validate_character(chi)?;
        match self {
            GroupPoint::TorusAngles(angles) => {
                let mut pa = PointAngle::ZERO;
                for &(c, e) in chi.exponents() {
                    match &angles[c as usize] {
                        Angle::Rational(r) => pa.rat = add_mul_frac(pa.rat, e, r)?,
                        Angle::Real(t) => pa.real += (e as f64) * t,
                    }
                }
                pa.real = pa.real.rem_euclid(1.0);
                Ok(pa)
            }
            GroupPoint::RealParameter(t) => {
                let img = spec.real_image(chi)?;
                Ok(PointAngle {
                    rat: Ratio::zero(),
                    real: (t * img).rem_euclid(1.0),
                })
            }
        }
    }

    /// chi(lambda) as a unit complex number.
    pub fn evaluate(&self, chi: &Character, spec: &GroupSpec) -> Result<Complex64> {
        Ok(self.angle_of(chi, spec)?.unit_value())
    }

    /// chi(lambda)^k with the angle multiple reduced exactly where possible.
    pub fn evaluate_power(&self, chi: &Character, k: i64, spec: &GroupSpec) -> Result<Complex64> {
        Ok(self.angle_of(chi, spec)?.unit_power(k))
    }

    /// Order of the point in the group: least q with lambda^q = identity.
    /// Exists exactly when every angle datum is rational (real-parameter
    /// points only at t = 0).
    pub fn order(&self) -> Option<u64> {
        match self {
            GroupPoint::TorusAngles(angles) => {
                let mut l: u128 = 1;
                for a in angles {
                    match a {
                        Angle::Rational(r) => {
                            let den = *r.denom() as u128;
                            l = l.lcm(&den);
                        }
                        Angle::Real(_) => return None,
                    }
                }
                u64::try_from(l).ok()
            }
            GroupPoint::RealParameter(t) => {
                if *t == 0.0 {
                    Some(1)
                } else {
                    None
                }
            }
        }
    }

    /// Whether `chi0(lambda)` is a primitive q-th root of unity.
    pub fn is_primitive_root_at(&self, chi0: &Character, q: u64, spec: &GroupSpec) -> Result<bool> {
        if q == 0 {
            return Err(Error::InvalidSpec("order q must be >= 1".into()));
        }
        let pa = self.angle_of(chi0, spec)?;
        if pa.is_exactly_rational() {
            let a = pa.rational_part();
            return Ok(*a.denom() as u64 == q);
        }
        const TOL: f64 = 1e-9;
        for k in 1..q {
            if pa.multiple_distance_to_integer(k as i64) <= TOL {
                return Ok(false);
            }
        }
        Ok(pa.multiple_distance_to_integer(q as i64) <= TOL)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z() -> GroupSpec {
        GroupSpec::lattice_lex(1).unwrap()
    }

    fn z2() -> GroupSpec {
        GroupSpec::lattice_lex(2).unwrap()
    }

    fn sqrt2_embedding() -> GroupSpec {
        GroupSpec::real_embedded(vec![1.0, std::f64::consts::SQRT_2]).unwrap()
    }

    #[test]
    fn one_dimensional_real_embedding_is_the_integer_line() {
        let spec = GroupSpec::real_embedded(vec![1.0]).unwrap();
        assert_eq!(spec.smallest_positive(), Some(Character::generator(0)));
        let chi = Character::from_exponents(&[3]);
        assert_eq!(spec.rotation_index(&chi).unwrap(), Some(3));
        assert_eq!(
            spec.rotation_index_bruteforce(&chi, 10).unwrap(),
            BruteForceIndex::Finite(3)
        );
        assert_eq!(
            spec.compare(&chi, &Character::from_exponents(&[4])).unwrap(),
            Ordering::Less
        );
    }

    #[test]
    fn character_algebra() {
        let a = Character::from_exponents(&[2, -1]);
        let b = Character::from_exponents(&[-2, 1]);
        assert_eq!(a.mul(&b), Character::identity());
        assert_eq!(a.inverse(), b);
        assert_eq!(a.pow(3), Character::from_exponents(&[6, -3]));
        assert_eq!(a.exponent(0), 2);
        assert_eq!(a.exponent(5), 0);
        assert!(Character::from_exponents(&[0, 0]).is_identity());
    }

    #[test]
    fn lex_compare_first_coordinate_dominates() {
        let spec = z2();
        let a = Character::from_exponents(&[0, 5]);
        let b = Character::from_exponents(&[1, -100]);
        assert_eq!(spec.compare(&a, &b).unwrap(), Ordering::Less);
        let c = Character::from_exponents(&[3]);
        assert_eq!(z().compare(&c, &c).unwrap(), Ordering::Equal);
    }

    #[test]
    fn real_embedded_compare_matches_images() {
        let spec = sqrt2_embedding();
        let a = Character::from_exponents(&[1, 0]);
        let b = Character::from_exponents(&[0, 1]);
        // oracle: 1 < sqrt(2)
        assert_eq!(spec.compare(&a, &b).unwrap(), Ordering::Less);
        assert_eq!(spec.compare(&b, &a).unwrap(), Ordering::Greater);
    }

    #[test]
    fn real_embedded_rejects_colliding_basis() {
        assert!(GroupSpec::real_embedded(vec![1.0, 0.5]).is_err());
        assert!(GroupSpec::real_embedded(vec![1.0, 2.0]).is_err());
        assert!(GroupSpec::real_embedded(vec![1.0, std::f64::consts::SQRT_2, 1.0]).is_err());
    }

    #[test]
    fn smallest_positive_cases() {
        assert_eq!(z().smallest_positive(), Some(Character::generator(0)));
        assert_eq!(z2().smallest_positive(), Some(Character::generator(1)));
        assert_eq!(sqrt2_embedding().smallest_positive(), None);
    }

    #[test]
    fn smallest_positive_brute_minimum_on_box() {
        // oracle: minimum of X+ \ {1} over the exponent box
        for spec in [z(), z2(), GroupSpec::lattice_lex(3).unwrap()] {
            let zeta = spec.smallest_positive().unwrap();
            let mut best: Option<Character> = None;
            for chi in spec.box_characters(4) {
                if chi.is_identity() || !spec.is_positive(&chi).unwrap() {
                    continue;
                }
                best = match best {
                    None => Some(chi),
                    Some(b) => {
                        if spec.compare(&chi, &b).unwrap() == Ordering::Less {
                            Some(chi)
                        } else {
                            Some(b)
                        }
                    }
                };
            }
            assert_eq!(best.unwrap(), zeta);
        }
    }

    #[test]
    fn real_embedding_has_no_minimum() {
        // oracle: a strictly decreasing chain of positives inside the box
        let spec = sqrt2_embedding();
        let chain = [
            Character::from_exponents(&[1, 0]),  // 1
            Character::from_exponents(&[-1, 1]), // 0.4142
            Character::from_exponents(&[3, -2]), // 0.1716
            Character::from_exponents(&[-7, 5]), // 0.0711
        ];
        for w in chain.windows(2) {
            assert!(spec.is_positive(&w[0]).unwrap());
            assert!(spec.is_positive(&w[1]).unwrap());
            assert_eq!(spec.compare(&w[1], &w[0]).unwrap(), Ordering::Less);
        }
        assert_eq!(spec.smallest_positive(), None);
    }

    #[test]
    fn rotation_index_examples() {
        let spec = z();
        for n in 0..6i64 {
            let chi = Character::from_exponents(&[n]);
            assert_eq!(spec.rotation_index(&chi).unwrap(), Some(n));
        }
        let spec2 = z2();
        assert_eq!(
            spec2
                .rotation_index(&Character::from_exponents(&[0, 3]))
                .unwrap(),
            Some(3)
        );
        assert_eq!(
            spec2
                .rotation_index(&Character::from_exponents(&[1, 0]))
                .unwrap(),
            None
        );
        let re = sqrt2_embedding();
        assert_eq!(
            re.rotation_index(&Character::from_exponents(&[1, 1]))
                .unwrap(),
            None
        );
        assert_eq!(re.rotation_index(&Character::identity()).unwrap(), Some(0));
    }

    #[test]
    fn bruteforce_examples() {
        let spec = z();
        assert_eq!(
            spec.rotation_index_bruteforce(&Character::from_exponents(&[5]), 100)
                .unwrap(),
            BruteForceIndex::Finite(5)
        );
        let spec2 = z2();
        assert_eq!(
            spec2
                .rotation_index_bruteforce(&Character::from_exponents(&[0, 3]), 10)
                .unwrap(),
            BruteForceIndex::Finite(3)
        );
        assert_eq!(
            spec2
                .rotation_index_bruteforce(&Character::from_exponents(&[1, 0]), 10)
                .unwrap(),
            BruteForceIndex::ExceedsBound
        );
        assert!(matches!(
            spec2.rotation_index_bruteforce(&Character::from_exponents(&[-1, 0]), 10),
            Err(Error::CharacterOutsideCone)
        ));
        let re = sqrt2_embedding();
        assert_eq!(
            re.rotation_index_bruteforce(&Character::from_exponents(&[1, 1]), 8)
                .unwrap(),
            BruteForceIndex::ExceedsBound
        );
    }

    #[test]
    fn evaluate_examples() {
        let spec = z();
        let lam = GroupPoint::torus(vec![Angle::rational(1, 2).unwrap()]);
        let v = lam
            .evaluate(&Character::from_exponents(&[3]), &spec)
            .unwrap();
        assert!((v - Complex64::new(-1.0, 0.0)).norm() < 1e-14);

        let spec2 = z2();
        let lam2 = GroupPoint::torus(vec![
            Angle::rational(0, 1).unwrap(),
            Angle::rational(1, 3).unwrap(),
        ]);
        let v2 = lam2
            .evaluate(&Character::from_exponents(&[2, 1]), &spec2)
            .unwrap();
        let expected = Complex64::cis(std::f64::consts::TAU / 3.0);
        assert!((v2 - expected).norm() < 1e-14);

        let re = sqrt2_embedding();
        let lam3 = GroupPoint::real_parameter(1.0);
        let v3 = lam3
            .evaluate(&Character::from_exponents(&[1, 1]), &re)
            .unwrap();
        let expected3 = Complex64::cis(std::f64::consts::TAU * (1.0 + std::f64::consts::SQRT_2));
        assert!((v3 - expected3).norm() < 1e-12);
        assert!((v3.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn evaluate_variant_mismatch() {
        let spec = z();
        let lam = GroupPoint::real_parameter(0.3);
        assert!(lam
            .evaluate(&Character::from_exponents(&[1]), &spec)
            .is_err());
    }

    #[test]
    fn order_of_point_cases() {
        let half = GroupPoint::torus(vec![Angle::rational(1, 2).unwrap()]);
        assert_eq!(half.order(), Some(2));
        let p = GroupPoint::torus(vec![
            Angle::rational(1, 2).unwrap(),
            Angle::rational(1, 3).unwrap(),
        ]);
        assert_eq!(p.order(), Some(6));
        let golden = GroupPoint::torus(vec![Angle::real(0.618_033_988_749_894_9)]);
        assert_eq!(golden.order(), None);
        assert_eq!(GroupPoint::real_parameter(0.0).order(), Some(1));
        assert_eq!(GroupPoint::real_parameter(1.25).order(), None);
    }

    #[test]
    fn primitive_root_cases() {
        let spec = z();
        let half = GroupPoint::torus(vec![Angle::rational(1, 2).unwrap()]);
        assert!(half
            .is_primitive_root_at(&Character::from_exponents(&[1]), 2, &spec)
            .unwrap());
        assert!(!half
            .is_primitive_root_at(&Character::from_exponents(&[2]), 2, &spec)
            .unwrap());
        let spec2 = z2();
        let p = GroupPoint::torus(vec![
            Angle::rational(0, 1).unwrap(),
            Angle::rational(1, 3).unwrap(),
        ]);
        assert!(p
            .is_primitive_root_at(&Character::from_exponents(&[0, 1]), 3, &spec2)
            .unwrap());
    }

    #[test]
    fn angle_parsing() {
        assert_eq!(Angle::parse("1/2").unwrap(), Angle::rational(1, 2).unwrap());
        assert_eq!(
            Angle::parse("0.25").unwrap(),
            Angle::rational(1, 4).unwrap()
        );
        assert_eq!(Angle::parse("3").unwrap(), Angle::rational(0, 1).unwrap());
        assert_eq!(
            Angle::parse("-1/3").unwrap(),
            Angle::rational(2, 3).unwrap()
        );
        assert!(Angle::parse("x").is_err());
        assert!(Angle::parse("1/0").is_err());
    }

    fn specs_under_test() -> Vec<GroupSpec> {
        vec![
            z(),
            z2(),
            GroupSpec::lattice_lex(3).unwrap(),
            sqrt2_embedding(),
        ]
    }

    proptest! {
        #[test]
        fn order_total_and_translation_invariant(
            a in prop::collection::vec(-8i64..=8, 3),
            b in prop::collection::vec(-8i64..=8, 3),
            c in prop::collection::vec(-8i64..=8, 3),
        ) {
            for spec in specs_under_test() {
                let d = spec.dim();
                let (x, y, t) = (
                    Character::from_exponents(&a[..d]),
                    Character::from_exponents(&b[..d]),
                    Character::from_exponents(&c[..d]),
                );
                let ord = spec.compare(&x, &y).unwrap();
                let rev = spec.compare(&y, &x).unwrap();
                prop_assert_eq!(ord, rev.reverse());
                prop_assert_eq!(
                    spec.compare(&t.mul(&x), &t.mul(&y)).unwrap(),
                    ord
                );
            }
        }

        #[test]
        fn cone_axioms(a in prop::collection::vec(-8i64..=8, 3)) {
            for spec in specs_under_test() {
                let d = spec.dim();
                let x = Character::from_exponents(&a[..d]);
                let pos = spec.is_positive(&x).unwrap();
                let neg = spec.is_positive(&x.inverse()).unwrap();
                // X+ union X+^{-1} = X, intersection = {1}
                prop_assert!(pos || neg);
                if pos && neg {
                    prop_assert!(x.is_identity());
                }
            }
        }

        #[test]
        fn rotation_index_homomorphism(m in -20i64..=20, n in -20i64..=20) {
            for spec in specs_under_test() {
                if let Some(zeta) = spec.smallest_positive() {
                    let (x, y) = (zeta.pow(m), zeta.pow(n));
                    let ix = spec.rotation_index(&x).unwrap().unwrap();
                    let iy = spec.rotation_index(&y).unwrap().unwrap();
                    let ixy = spec.rotation_index(&x.mul(&y)).unwrap().unwrap();
                    prop_assert_eq!(ixy, ix + iy);
                }
            }
        }

        #[test]
        fn evaluate_is_multiplicative(
            a in prop::collection::vec(-30i64..=30, 2),
            b in prop::collection::vec(-30i64..=30, 2),
            num in 0i64..=11,
        ) {
            let spec = z2();
            let lam = GroupPoint::torus(vec![
                Angle::rational(num, 12).unwrap(),
                Angle::real(0.618_033_988_749_894_9),
            ]);
            let x = Character::from_exponents(&a);
            let y = Character::from_exponents(&b);
            let lhs = lam.evaluate(&x.mul(&y), &spec).unwrap();
            let rhs = lam.evaluate(&x, &spec).unwrap() * lam.evaluate(&y, &spec).unwrap();
            prop_assert!((lhs - rhs).norm() < 1e-12);
            prop_assert!((lhs.norm() - 1.0).abs() < 1e-12);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn rotation_index_agrees_with_bruteforce(a in prop::collection::vec(-8i64..=8, 3)) {
            for spec in [z(), z2(), GroupSpec::lattice_lex(3).unwrap()] {
                let d = spec.dim();
                let chi = Character::from_exponents(&a[..d]);
                if !spec.is_positive(&chi).unwrap() {
                    continue;
                }
                if let BruteForceIndex::Finite(n) =
                    spec.rotation_index_bruteforce(&chi, 8).unwrap()
                {
                    prop_assert_eq!(spec.rotation_index(&chi).unwrap(), Some(n as i64));
                }
            }
        }
    }
}
