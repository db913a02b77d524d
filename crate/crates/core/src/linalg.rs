//! Dense Hermitian matrices and their eigendecomposition.
//!
//! The solver reduces the matrix to real symmetric tridiagonal form with
//! complex Householder reflectors and then runs the implicit QL algorithm
//! with Wilkinson-style shifts, accumulating the reflectors and rotations
//! into the eigenvector matrix. Everything is sequential and allocation is
//! bounded by a few `n × n` buffers, so results are bit-reproducible for a
//! given input.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // supplies libm-backed float methods when std is absent
use num_traits::Float;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

/// Dense Hermitian operator, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl HermitianMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![ZERO; dim * dim] }
    }

    /// Builds a real diagonal matrix.
    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.data[i * m.dim + i] = Complex64::new(d, 0.0);
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.dim + col]
    }

    /// Sets `(row, col)` to `value` and `(col, row)` to its conjugate.
    ///
    /// Diagonal entries keep only the real part.
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        if row == col {
            self.data[row * self.dim + col] = Complex64::new(value.re, 0.0);
        } else {
            self.data[row * self.dim + col] = value;
            self.data[col * self.dim + row] = value.conj();
        }
    }

    /// Adds `value` at `(row, col)` and its conjugate at `(col, row)`.
    pub fn add(&mut self, row: usize, col: usize, value: Complex64) {
        if row == col {
            self.data[row * self.dim + col].re += value.re;
        } else {
            self.data[row * self.dim + col] += value;
            self.data[col * self.dim + row] += value.conj();
        }
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.get(i, i).re).collect()
    }

    /// Largest `|A_ij − conj(A_ji)|`; zero for matrices built through this API.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim, "vector length must match matrix dimension");
        self.data
            .chunks_exact(self.dim)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `⟨u|A|v⟩`.
    pub fn expectation(&self, u: &[Complex64], v: &[Complex64]) -> Complex64 {
        inner(u, &self.mul_vec(v))
    }
}

/// `⟨u|v⟩ = Σ conj(u_i) v_i`.
pub fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

/// Eigenvalues in ascending order with orthonormal eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigensystem {
    dim: usize,
    values: Vec<f64>,
    // eigenvector j occupies vectors[j * dim..(j + 1) * dim]
    vectors: Vec<Complex64>,
}

impl Eigensystem {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn vector(&self, index: usize) -> &[Complex64] {
        &self.vectors[index * self.dim..(index + 1) * self.dim]
    }

    pub fn vectors(&self) -> impl Iterator<Item = &[Complex64]> {
        self.vectors.chunks_exact(self.dim.max(1)).take(self.values.len())
    }

    /// Keeps only the lowest `count` eigenpairs.
    pub fn truncate(&mut self, count: usize) {
        self.values.truncate(count);
        self.vectors.truncate(count * self.dim);
    }
}

/// Full eigendecomposition of a Hermitian matrix.
///
/// Each eigenvector's global phase is fixed so that its largest-magnitude
/// component (first one on ties) is real and positive.
pub fn eigh(matrix: &HermitianMatrix) -> Result<Eigensystem> {
    let n = matrix.dim();
    if !matrix.is_finite() {
        return Err(Error::NoConvergence(format!("matrix of dimension {n} has non-finite entries")));
    }
    if n == 0 {
        return Ok(Eigensystem { dim: 0, values: Vec::new(), vectors: Vec::new() });
    }

    let mut a = matrix.data.clone();
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n];
    let mut q = identity(n);

    tridiagonalize(n, &mut a, &mut diag, &mut off, &mut q);

    // Rotations act on columns of Q; keep them contiguous by working on Qᵀ.
    let mut zt = vec![ZERO; n * n];
    for r in 0..n {
        for c in 0..n {
            zt[c * n + r] = q[r * n + c];
        }
    }
    implicit_ql(n, &mut diag, &mut off, &mut zt)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]).then(i.cmp(&j)));

    let mut values = Vec::with_capacity(n);
    let mut vectors = Vec::with_capacity(n * n);
    for &k in &order {
        values.push(diag[k]);
        let v = &zt[k * n..(k + 1) * n];
        vectors.extend_from_slice(v);
        let start = vectors.len() - n;
        fix_phase(&mut vectors[start..]);
    }
    Ok(Eigensystem { dim: n, values, vectors })
}

fn identity(n: usize) -> Vec<Complex64> {
    let mut q = vec![ZERO; n * n];
    for i in 0..n {
        q[i * n + i] = ONE;
    }
    q
}

/// Rotates `v` so that its largest-magnitude entry is real and positive.
pub fn fix_phase(v: &mut [Complex64]) {
    let mut best = 0;
    let mut best_norm = -1.0;
    for (i, z) in v.iter().enumerate() {
        let m = z.norm_sqr();
        if m > best_norm {
            best_norm = m;
            best = i;
        }
    }
    if best_norm <= 0.0 {
        return;
    }
    let pivot = v[best];
    let phase = pivot.conj() / pivot.norm();
    for z in v.iter_mut() {
        *z *= phase;
    }
    v[best] = Complex64::new(v[best].re, 0.0);
}

/// Householder reduction `A = Q T Qᴴ` with `T` real symmetric tridiagonal.
///
/// On exit `diag` holds `T_ii` and `off[i]` holds `T_{i,i+1}` (`off[n-1] = 0`).
fn tridiagonalize(n: usize, a: &mut [Complex64], diag: &mut [f64], off: &mut [f64], q: &mut [Complex64]) {
    let mut v = vec![ZERO; n];
    let mut w = vec![ZERO; n];
    for k in 0..n.saturating_sub(1) {
        let m = n - k - 1;
        let alpha = a[(k + 1) * n + k];
        let xnorm = (k + 2..n).map(|i| a[i * n + k].norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 && alpha.im == 0.0 {
            off[k] = alpha.re;
            continue;
        }
        let beta = -hypot3(alpha.re, alpha.im, xnorm).copysign(alpha.re);
        let tau = Complex64::new((beta - alpha.re) / beta, -alpha.im / beta);
        let scale = ONE / (alpha - beta);
        v[0] = ONE;
        for j in 1..m {
            v[j] = a[(k + 1 + j) * n + k] * scale;
        }
        off[k] = beta;

        // Two-sided update of the trailing block: B = A − u vᴴ − v uᴴ,
        // with u = τ A v − ½ τ̄ (vᴴ τ A v) v.
        let base = k + 1;
        for i in 0..m {
            let row = &a[(base + i) * n + base..(base + i) * n + n];
            w[i] = tau * row.iter().zip(&v[..m]).map(|(x, y)| x * y).sum::<Complex64>();
        }
        let vw: Complex64 = v[..m].iter().zip(&w[..m]).map(|(x, y)| x.conj() * y).sum();
        let c = tau.conj() * vw * 0.5;
        for i in 0..m {
            w[i] -= c * v[i];
        }
        for i in 0..m {
            let (ui, vi) = (w[i], v[i]);
            let row = &mut a[(base + i) * n + base..(base + i) * n + n];
            for j in 0..m {
                row[j] -= ui * v[j].conj() + vi * w[j].conj();
            }
        }

        // Q ← Q H_k with H_k = I − τ v vᴴ on indices k+1..n.
        for r in 0..n {
            let row = &mut q[r * n + base..r * n + n];
            let s: Complex64 = row.iter().zip(&v[..m]).map(|(x, y)| x * y).sum();
            let ts = tau * s;
            for j in 0..m {
                row[j] -= ts * v[j].conj();
            }
        }
    }
    for i in 0..n {
        diag[i] = a[i * n + i].re;
    }
    off[n - 1] = 0.0;
}

fn hypot3(a: f64, b: f64, c: f64) -> f64 {
    a.hypot(b).hypot(c)
}

/// Implicit QL iteration on a symmetric tridiagonal matrix.
///
/// `zt` holds the transformation rows-as-vectors: row `i` is the current
/// `i`-th column of the accumulated eigenvector matrix.
fn implicit_ql(n: usize, d: &mut [f64], e: &mut [f64], zt: &mut [Complex64]) -> Result<()> {
    const MAX_SWEEPS: usize = 60;
    let eps = f64::EPSILON;
    let mut shift_acc = 0.0;
    let mut tst1 = 0.0_f64;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > MAX_SWEEPS {
                    return Err(Error::NoConvergence(format!(
                        "implicit QL exceeded {MAX_SWEEPS} sweeps at index {l} of {n}"
                    )));
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().take(n).skip(l + 2) {
                    *di -= h;
                }
                shift_acc += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);

                    let (lo, hi) = zt.split_at_mut((i + 1) * n);
                    let zi = &mut lo[i * n..];
                    let zi1 = &mut hi[..n];
                    for (a, b) in zi.iter_mut().zip(zi1.iter_mut()) {
                        let hb = *b;
                        *b = *a * s + hb * c;
                        *a = *a * c - hb * s;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += shift_acc;
        e[l] = 0.0;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn check_decomposition(m: &HermitianMatrix, es: &Eigensystem) {
        let n = m.dim();
        let norm = m.frobenius_norm().max(1e-300);
        for (j, &lam) in es.values().iter().enumerate() {
            let v = es.vector(j);
            let hv = m.mul_vec(v);
            let res: f64 = hv.iter().zip(v).map(|(a, b)| (a - b * lam).norm_sqr()).sum::<f64>().sqrt();
            assert!(res <= 1e-9 * norm, "residual {res} for eigenpair {j}");
            for k in 0..n {
                let ip = inner(es.vector(k), v);
                let want = if k == j { 1.0 } else { 0.0 };
                assert!((ip - want).norm() < 1e-10, "orthonormality ({k},{j}) = {ip}");
            }
        }
        assert!(es.values().windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn two_by_two_complex() {
        let mut m = HermitianMatrix::zeros(2);
        m.set(0, 0, c(1.0, 0.0));
        m.set(1, 1, c(-1.0, 0.0));
        m.set(0, 1, c(0.0, 1.0));
        let es = eigh(&m).unwrap();
        let s = 2.0_f64.sqrt();
        assert!((es.values()[0] + s).abs() < 1e-14);
        assert!((es.values()[1] - s).abs() < 1e-14);
        check_decomposition(&m, &es);
    }

    #[test]
    fn complex_hermitian_with_phases() {
        let n = 7;
        let mut m = HermitianMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let x = ((i * 7 + j * 3) % 11) as f64 - 5.0;
                let y = if i == j { 0.0 } else { ((i * 5 + j) % 7) as f64 - 3.0 };
                m.set(i, j, c(x, y));
            }
        }
        let es = eigh(&m).unwrap();
        check_decomposition(&m, &es);
        let trace: f64 = m.diagonal().iter().sum();
        let sum: f64 = es.values().iter().sum();
        assert!((trace - sum).abs() < 1e-10 * m.frobenius_norm());
    }

    #[test]
    fn diagonal_and_degenerate() {
        let m = HermitianMatrix::from_diagonal(&[3.0, 1.0, 1.0, -2.0]);
        let es = eigh(&m).unwrap();
        assert_eq!(es.values(), &[-2.0, 1.0, 1.0, 3.0]);
        check_decomposition(&m, &es);
    }

    #[test]
    fn phase_convention() {
        let mut m = HermitianMatrix::zeros(3);
        m.set(0, 1, c(0.3, -0.8));
        m.set(1, 2, c(-0.5, 0.2));
        m.set(2, 2, c(0.7, 0.0));
        let es = eigh(&m).unwrap();
        for v in es.vectors() {
            let big = v.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()));
            let pivot = v.iter().find(|z| (z.norm() - big).abs() < 1e-15).unwrap();
            assert!(pivot.im == 0.0 && pivot.re > 0.0);
        }
    }

    #[test]
    fn rejects_non_finite() {
        let mut m = HermitianMatrix::zeros(2);
        m.set(0, 1, c(f64::NAN, 0.0));
        assert!(matches!(eigh(&m), Err(Error::NoConvergence(_))));
    }

    #[test]
    fn trivial_sizes() {
        assert!(eigh(&HermitianMatrix::zeros(0)).unwrap().values().is_empty());
        let es = eigh(&HermitianMatrix::from_diagonal(&[4.5])).unwrap();
        assert_eq!(es.values(), &[4.5]);
        assert_eq!(es.vector(0), &[ONE]);
    }
}
