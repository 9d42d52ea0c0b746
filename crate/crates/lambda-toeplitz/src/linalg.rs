//! Dense complex linear algebra kernels: row-major storage, LU with partial
//! pivoting (plus adjoint solves reusing the same factorization),
//! Golub-Kahan-Lanczos for the largest singular value, and LU-based inverse
//! iteration for the smallest. Everything here is deterministic for a
//! fixed seed.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl CMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMat {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c));
        CMat {
            rows: r,
            cols: c,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn adjoint(&self) -> CMat {
        let mut out = CMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Complex64::new(0.0, 0.0);
                for (a, b) in self.row(i).iter().zip(x.iter()) {
                    acc += a * b;
                }
                acc
            })
            .collect()
    }

    /// y = A^H x, streamed over rows so access stays contiguous.
    pub fn adjoint_matvec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.rows);
        let mut y = vec![Complex64::new(0.0, 0.0); self.cols];
        for (i, xi) in x.iter().enumerate() {
            let xi = xi.conj();
            let row = self.row(i);
            for (yj, a) in y.iter_mut().zip(row.iter()) {
                *yj += (a * xi).conj();
            }
        }
        y
    }

    /// C = self * other, ikj loop order.
    pub fn mul(&self, other: &CMat) -> CMat {
        assert_eq!(self.cols, other.rows);
        let mut c = CMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            let arow = self.row(i);
            let crow = &mut c.data[i * other.cols..(i + 1) * other.cols];
            for (k, &aik) in arow.iter().enumerate() {
                if aik == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let brow = other.row(k);
                for (cij, &bkj) in crow.iter_mut().zip(brow.iter()) {
                    *cij += aik * bkj;
                }
            }
        }
        c
    }

    pub fn scale(&mut self, s: f64) {
        for v in &mut self.data {
            *v *= s;
        }
    }

    pub fn sub_scalar_diagonal(&mut self, mu: Complex64) {
        let n = self.rows.min(self.cols);
        for i in 0..n {
            self[(i, i)] -= mu;
        }
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

impl std::ops::Index<(usize, usize)> for CMat {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

/// LU factorization with partial pivoting: P A = L U, unit lower L.
pub struct LuFactors {
    lu: CMat,
    perm: Vec<usize>,
    singular: bool,
}

pub fn lu_decompose(a: &CMat) -> LuFactors {
    assert_eq!(a.nrows(), a.ncols());
    let n = a.nrows();
    let mut lu = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut singular = false;
    for k in 0..n {
        let mut pivot_row = k;
        let mut pivot_mag = lu[(k, k)].norm_sqr();
        for i in k + 1..n {
            let mag = lu[(i, k)].norm_sqr();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = i;
            }
        }
        if pivot_mag == 0.0 {
            singular = true;
            continue;
        }
        if pivot_row != k {
            perm.swap(k, pivot_row);
            for j in 0..n {
                let t = lu[(k, j)];
                lu[(k, j)] = lu[(pivot_row, j)];
                lu[(pivot_row, j)] = t;
            }
        }
        let inv_pivot = Complex64::new(1.0, 0.0) / lu[(k, k)];
        for i in k + 1..n {
            let l = lu[(i, k)] * inv_pivot;
            lu[(i, k)] = l;
            if l != Complex64::new(0.0, 0.0) {
                // row update, contiguous in row-major layout
                let (top, bottom) = lu.data.split_at_mut(i * n);
                let krow = &top[k * n..k * n + n];
                let irow = &mut bottom[..n];
                for j in k + 1..n {
                    irow[j] -= l * krow[j];
                }
            }
        }
    }
    LuFactors { lu, perm, singular }
}

impl LuFactors {
    pub fn is_singular(&self) -> bool {
        self.singular
    }

    /// Solve A x = b.
    pub fn solve(&self, b: &[Complex64]) -> Option<Vec<Complex64>> {
        if self.singular {
            return None;
        }
        let n = self.lu.nrows();
        // forward: L y = P b
        let mut y: Vec<Complex64> = (0..n).map(|i| b[self.perm[i]]).collect();
        for i in 0..n {
            let row = self.lu.row(i);
            let mut acc = y[i];
            for j in 0..i {
                acc -= row[j] * y[j];
            }
            y[i] = acc;
        }
        // back: U x = y
        for i in (0..n).rev() {
            let row = self.lu.row(i);
            let mut acc = y[i];
            for j in i + 1..n {
                acc -= row[j] * y[j];
            }
            y[i] = acc / row[i];
        }
        Some(y)
    }

    /// Solve A^H x = b with the same factors: A^H = U^H L^H P.
    #[allow(clippy::needless_range_loop)]
    pub fn solve_adjoint(&self, b: &[Complex64]) -> Option<Vec<Complex64>> {
        if self.singular {
            return None;
        }
        let n = self.lu.nrows();
        // forward: U^H w = b (U^H is lower triangular)
        let mut w = b.to_vec();
        for i in 0..n {
            let mut acc = w[i];
            for j in 0..i {
                acc -= self.lu[(j, i)].conj() * w[j];
            }
            w[i] = acc / self.lu[(i, i)].conj();
        }
        // back: L^H y = w (unit upper triangular)
        for i in (0..n).rev() {
            let mut acc = w[i];
            for j in i + 1..n {
                acc -= self.lu[(j, i)].conj() * w[j];
            }
            w[i] = acc;
        }
        // x = P^T y
        let mut x = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            x[self.perm[i]] = w[i];
        }
        Some(x)
    }
}

fn seeded_unit_vector(n: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut v: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    normalize(&mut v);
    v
}

fn normalize(v: &mut [Complex64]) -> f64 {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 {
        for z in v.iter_mut() {
            *z /= norm;
        }
    }
    norm
}

fn orthogonalize_against(w: &mut [Complex64], basis: &[Vec<Complex64>]) {
    // two classical Gram-Schmidt passes
    for _ in 0..2 {
        for b in basis {
            let mut dot = Complex64::new(0.0, 0.0);
            for (bi, wi) in b.iter().zip(w.iter()) {
                dot += bi.conj() * wi;
            }
            for (bi, wi) in b.iter().zip(w.iter_mut()) {
                *wi -= dot * bi;
            }
        }
    }
}

/// Largest eigenvalue of a symmetric tridiagonal matrix by Sturm-sequence
/// bisection. `diag` and `off` (off has len n-1) must be real.
fn tridiag_lambda_max(diag: &[f64], off: &[f64]) -> f64 {
    let n = diag.len();
    if n == 0 {
        return 0.0;
    }
    // Gershgorin upper/lower bounds
    let mut hi = f64::MIN;
    let mut lo = f64::MAX;
    for i in 0..n {
        let r =
            if i > 0 { off[i - 1].abs() } else { 0.0 } + if i < n - 1 { off[i].abs() } else { 0.0 };
        hi = hi.max(diag[i] + r);
        lo = lo.min(diag[i] - r);
    }
    // count of eigenvalues < x via the LDL^T recurrence
    let count_below = |x: f64| -> usize {
        let mut count = 0;
        let mut q = diag[0] - x;
        if q < 0.0 {
            count += 1;
        }
        for i in 1..n {
            let denom = if q == 0.0 { 1e-300 } else { q };
            q = diag[i] - x - off[i - 1] * off[i - 1] / denom;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    };
    let (mut lo, mut hi) = (lo, hi + 1e-12 * hi.abs().max(1.0));
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if count_below(mid) >= n {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Largest eigenvalue of B^H B for the Golub-Kahan bidiagonal B built from
/// `alphas` (diagonal) and `betas` (superdiagonal). When a breakdown at the
/// alpha step leaves one more beta than the square shape would have, B is
/// k x (k+1) and the trailing beta contributes a final row of its own.
fn gk_lambda_max(alphas: &[f64], betas: &[f64]) -> f64 {
    let ka = alphas.len();
    let kb = betas.len();
    debug_assert!(kb == ka || kb + 1 == ka);
    let dim = if kb == ka { ka + 1 } else { ka };
    let mut diag = Vec::with_capacity(dim);
    for j in 0..ka {
        diag.push(
            alphas[j] * alphas[j]
                + if j > 0 {
                    betas[j - 1] * betas[j - 1]
                } else {
                    0.0
                },
        );
    }
    if kb == ka {
        diag.push(betas[ka - 1] * betas[ka - 1]);
    }
    let off: Vec<f64> = (0..kb).map(|j| alphas[j] * betas[j]).collect();
    tridiag_lambda_max(&diag, &off)
}

/// Largest singular value by Golub-Kahan-Lanczos bidiagonalization with
/// full reorthogonalization. Ritz values approach sigma_max from below, so
/// estimates of nested compressions inherit their monotonicity.
pub fn sigma_max(a: &CMat, seed: u64) -> f64 {
    sigma_max_capped(a, seed, a.nrows().min(a.ncols()))
}

/// `sigma_max` with an explicit cap on the Krylov dimension.
pub fn sigma_max_capped(a: &CMat, seed: u64, cap: usize) -> f64 {
    let (m, n) = (a.nrows(), a.ncols());
    if n == 0 || m == 0 {
        return 0.0;
    }
    let kmax = n.min(m).min(cap);
    let mut vs: Vec<Vec<Complex64>> = Vec::new();
    let mut us: Vec<Vec<Complex64>> = Vec::new();
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();

    let v1 = seeded_unit_vector(n, seed);
    let mut u = a.matvec(&v1);
    vs.push(v1);
    let alpha1 = normalize(&mut u);
    if alpha1 == 0.0 {
        return 0.0;
    }
    alphas.push(alpha1);
    us.push(u);

    let mut last = 0.0f64;
    let mut stall = 0;
    const BREAKDOWN: f64 = 1e-14;
    for k in 0..kmax {
        // next v
        let mut w = a.adjoint_matvec(&us[k]);
        for (wi, vi) in w.iter_mut().zip(vs[k].iter()) {
            *wi -= alphas[k] * vi;
        }
        orthogonalize_against(&mut w, &vs);
        let beta = normalize(&mut w);
        let scale = alphas
            .iter()
            .chain(betas.iter())
            .fold(0.0f64, |m, &x| m.max(x));
        if beta <= BREAKDOWN * scale.max(1.0) {
            break; // invariant subspace: Ritz values exact
        }
        betas.push(beta);
        vs.push(w);
        // next u
        let mut unext = a.matvec(&vs[k + 1]);
        for (ui, prev) in unext.iter_mut().zip(us[k].iter()) {
            *ui -= beta * prev;
        }
        orthogonalize_against(&mut unext, &us);
        let alpha = normalize(&mut unext);
        if alpha <= BREAKDOWN * scale.max(1.0) {
            break;
        }
        alphas.push(alpha);
        us.push(unext);

        let lam = gk_lambda_max(&alphas, &betas);
        if (lam - last).abs() <= 1e-13 * lam.max(1e-300) {
            stall += 1;
            if stall >= 5 {
                last = lam;
                break;
            }
        } else {
            stall = 0;
        }
        last = lam;
    }
    gk_lambda_max(&alphas, &betas).max(last).sqrt()
}

/// Smallest singular value by inverse power iteration on (A^H A)^{-1},
/// reusing one LU factorization for both solves. Returns 0 when the matrix
/// is numerically singular.
pub fn sigma_min(a: &CMat, seed: u64) -> f64 {
    let n = a.nrows();
    if n == 0 {
        return 0.0;
    }
    let lu = lu_decompose(a);
    if lu.is_singular() {
        return 0.0;
    }
    let mut v = seeded_unit_vector(n, seed);
    let mut rho_prev = 0.0f64;
    let mut stall = 0;
    for _ in 0..2000 {
        let w = match lu.solve_adjoint(&v) {
            Some(w) => w,
            None => return 0.0,
        };
        let mut u = match lu.solve(&w) {
            Some(u) => u,
            None => return 0.0,
        };
        if u.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return 0.0;
        }
        // rho = v^H (A^H A)^{-1} v = ||A^{-H} v||^2 for unit v
        let rho = w.iter().map(|z| z.norm_sqr()).sum::<f64>();
        let unorm = normalize(&mut u);
        if unorm == 0.0 || !unorm.is_finite() {
            return 0.0;
        }
        v = u;
        if rho > 1e280 {
            return 0.0;
        }
        if (rho - rho_prev).abs() <= 1e-11 * rho.max(1e-300) {
            stall += 1;
            if stall >= 3 {
                rho_prev = rho;
                break;
            }
        } else {
            stall = 0;
        }
        rho_prev = rho;
    }
    if rho_prev <= 0.0 {
        0.0
    } else {
        1.0 / rho_prev.sqrt()
    }
}

/// ||A^k||^(1/k) via scaled binary powering followed by a singular-value
/// estimate. Intermediate products are rescaled by their Frobenius norm
/// with the log of the scale accumulated, so large powers stay inside f64
/// range.
pub fn power_norm_root(a: &CMat, k: u32, seed: u64) -> f64 {
    assert!(k >= 1);
    assert_eq!(a.nrows(), a.ncols());
    let mut result: Option<(CMat, f64)> = None; // (matrix, log_scale)
    let mut base = a.clone();
    let mut base_log = 0.0f64;
    let renorm = |m: &mut CMat, log: &mut f64| {
        let f = m.frobenius();
        if f > 0.0 && f.is_finite() {
            m.scale(1.0 / f);
            *log += f.ln();
        }
    };
    renorm(&mut base, &mut base_log);
    let mut bits = k;
    while bits > 0 {
        if bits & 1 == 1 {
            result = Some(match result {
                None => (base.clone(), base_log),
                Some((r, rlog)) => {
                    let mut m = r.mul(&base);
                    let mut log = rlog + base_log;
                    renorm(&mut m, &mut log);
                    (m, log)
                }
            });
        }
        bits >>= 1;
        if bits > 0 {
            let mut m = base.mul(&base);
            base_log *= 2.0;
            renorm(&mut m, &mut base_log);
            base = m;
        }
    }
    let (m, log) = result.expect("k >= 1");
    let sig = sigma_max(&m, seed);
    if sig <= 0.0 {
        return 0.0;
    }
    ((sig.ln() + log) / k as f64).exp()
}

pub fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_matrix(n: usize, seed: u64) -> CMat {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
        }
        m
    }

    /// Slow independent oracle: power iteration on A^H A run to exhaustion.
    /// Fine for small random matrices with separated singular values.
    fn sigma_max_oracle(a: &CMat, seed: u64) -> f64 {
        let mut v = seeded_unit_vector(a.ncols(), seed);
        let mut rho = 0.0;
        for _ in 0..200_000 {
            let w = a.matvec(&v);
            rho = w.iter().map(|z| z.norm_sqr()).sum::<f64>();
            let mut u = a.adjoint_matvec(&w);
            if normalize(&mut u) == 0.0 {
                return 0.0;
            }
            v = u;
        }
        rho.sqrt()
    }

    #[test]
    fn lu_solve_roundtrip() {
        let n = 24;
        let a = random_matrix(n, 7);
        let lu = lu_decompose(&a);
        let b: Vec<Complex64> = (0..n).map(|i| c(i as f64 + 0.5, -(i as f64))).collect();
        let x = lu.solve(&b).unwrap();
        let r = a.matvec(&x);
        let err: f64 = r
            .iter()
            .zip(b.iter())
            .map(|(u, v)| (u - v).norm())
            .fold(0.0, f64::max);
        assert!(err < 1e-10, "residual {err}");
    }

    #[test]
    fn lu_adjoint_solve_roundtrip() {
        let n = 24;
        let a = random_matrix(n, 8);
        let lu = lu_decompose(&a);
        let b: Vec<Complex64> = (0..n).map(|i| c(1.0, i as f64 * 0.1)).collect();
        let x = lu.solve_adjoint(&b).unwrap();
        let r = a.adjoint().matvec(&x);
        let err: f64 = r
            .iter()
            .zip(b.iter())
            .map(|(u, v)| (u - v).norm())
            .fold(0.0, f64::max);
        assert!(err < 1e-10, "residual {err}");
    }

    #[test]
    fn singular_values_of_known_2x2() {
        // A = [[2, 0], [1, 2]]: A^H A has eigenvalues (9 +- sqrt(17)) / 2.
        let a = CMat::from_rows(&[
            vec![c(2.0, 0.0), c(0.0, 0.0)],
            vec![c(1.0, 0.0), c(2.0, 0.0)],
        ]);
        let smax_expected = ((9.0 + 17f64.sqrt()) / 2.0).sqrt();
        let smin_expected = ((9.0 - 17f64.sqrt()) / 2.0).sqrt();
        assert!((sigma_max(&a, 1) - smax_expected).abs() < 1e-10);
        assert!((sigma_min(&a, 1) - smin_expected).abs() < 1e-10);
    }

    #[test]
    fn sigma_max_matches_independent_oracle() {
        for seed in [3u64, 4, 5] {
            let a = random_matrix(8, seed);
            let fast = sigma_max(&a, 17);
            let slow = sigma_max_oracle(&a, 18);
            assert!(
                (fast - slow).abs() < 1e-9 * slow,
                "seed {seed}: {fast} vs {slow}"
            );
        }
    }

    #[test]
    fn sigma_max_of_clustered_toeplitz_section() {
        // lower bidiagonal section of z + 2 at n = 128: singular values
        // cluster just below 3. Reference value from LAPACK zgesdd.
        let n = 128;
        let mut a = CMat::zeros(n, n);
        for i in 0..n {
            a[(i, i)] = c(2.0, 0.0);
            if i + 1 < n {
                a[(i + 1, i)] = c(1.0, 0.0);
            }
        }
        let expected = 2.999801281111672;
        let got = sigma_max(&a, 9);
        assert!((got - expected).abs() < 1e-9, "{got} vs {expected}");
    }

    #[test]
    fn sigma_min_of_singular_matrix_is_zero() {
        let a = CMat::from_rows(&[
            vec![c(1.0, 0.0), c(2.0, 0.0)],
            vec![c(2.0, 0.0), c(4.0, 0.0)],
        ]);
        assert_eq!(sigma_min(&a, 3), 0.0);
    }

    #[test]
    fn shifted_identity_probe_values() {
        // A = 0 matrix, probe at mu=1: singular values of -I are all 1.
        let n = 16;
        let mut a = CMat::zeros(n, n);
        a.sub_scalar_diagonal(c(1.0, 0.0));
        assert!((sigma_min(&a, 5) - 1.0).abs() < 1e-12);
        assert!((sigma_max(&a, 5) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn shift_section_norm_is_one() {
        let n = 32;
        let mut a = CMat::zeros(n, n);
        for i in 0..n - 1 {
            a[(i + 1, i)] = Complex64::cis(0.4 * i as f64);
        }
        assert!((sigma_max(&a, 2) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn power_norm_root_of_scaled_unitary() {
        // diag(e^{i th_j}) * 3: every power has norm 3^k exactly.
        let n = 12;
        let mut a = CMat::zeros(n, n);
        for i in 0..n {
            a[(i, i)] = Complex64::cis(0.37 * i as f64) * 3.0;
        }
        for k in [1u32, 5, 64] {
            let v = power_norm_root(&a, k, 2);
            assert!((v - 3.0).abs() < 1e-9, "k={k} v={v}");
        }
    }

    #[test]
    fn adjoint_matvec_matches_adjoint() {
        let a = random_matrix(9, 11);
        let x: Vec<Complex64> = (0..9).map(|i| c(0.3 * i as f64, 1.0 - i as f64)).collect();
        let y1 = a.adjoint_matvec(&x);
        let y2 = a.adjoint().matvec(&x);
        for (u, v) in y1.iter().zip(y2.iter()) {
            assert!((u - v).norm() < 1e-12);
        }
    }

    #[test]
    fn mul_matches_matvec_composition() {
        let a = random_matrix(7, 21);
        let b = random_matrix(7, 22);
        let x: Vec<Complex64> = (0..7).map(|i| c(i as f64, -0.5)).collect();
        let y1 = a.mul(&b).matvec(&x);
        let y2 = a.matvec(&b.matvec(&x));
        for (u, v) in y1.iter().zip(y2.iter()) {
            assert!((u - v).norm() < 1e-12);
        }
    }

    #[test]
    fn tridiag_lambda_max_known() {
        // [[2,1],[1,2]]: eigenvalues 1 and 3
        assert!((tridiag_lambda_max(&[2.0, 2.0], &[1.0]) - 3.0).abs() < 1e-10);
        // 1x1
        assert!((tridiag_lambda_max(&[5.0], &[]) - 5.0).abs() < 1e-10);
    }
}
