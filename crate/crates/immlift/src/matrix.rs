//! Dense complex matrices with exactly the operations the rest of the crate
//! needs: arithmetic, Kronecker products, a self-contained Hermitian
//! eigensolver, positive-semidefinite checks and square roots, permutation
//! operators on tensor powers, and seeded random ensembles.

use crate::error::{Error, Result};
use crate::perm::Permutation;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

const ZERO_C: Complex64 = Complex64::new(0.0, 0.0);
const ONE_C: Complex64 = Complex64::new(1.0, 0.0);

/// Largest tensor-power dimension `m^n` a permutation operator will be
/// materialized at.
pub const TENSOR_DIM_CAP: usize = 4096;

/// A dense row-major complex matrix. Serializes as a nested array of
/// `[re, im]` pairs, one inner array per row.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<[f64; 2]>>", into = "Vec<Vec<[f64; 2]>>")]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl TryFrom<Vec<Vec<[f64; 2]>>> for ComplexMatrix {
    type Error = Error;
    fn try_from(rows: Vec<Vec<[f64; 2]>>) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::invalid("matrix", "at least one row and column required"));
        }
        let cols = rows[0].len();
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in &rows {
            if row.len() != cols {
                return Err(Error::invalid("matrix", "rows have unequal lengths"));
            }
            for &[re, im] in row {
                if !re.is_finite() || !im.is_finite() {
                    return Err(Error::invalid("matrix", "entries must be finite"));
                }
                data.push(Complex64::new(re, im));
            }
        }
        Ok(ComplexMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }
}

impl From<ComplexMatrix> for Vec<Vec<[f64; 2]>> {
    fn from(m: ComplexMatrix) -> Vec<Vec<[f64; 2]>> {
        (0..m.rows)
            .map(|i| (0..m.cols).map(|j| [m.get(i, j).re, m.get(i, j).im]).collect())
            .collect()
    }
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ComplexMatrix {
            rows,
            cols,
            data: vec![ZERO_C; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, ONE_C);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::invalid("matrix", "at least one row and column required"));
        }
        let cols = rows[0].len();
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::invalid("matrix", "rows have unequal lengths"));
        }
        Ok(ComplexMatrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_real_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        ComplexMatrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(|x| Complex64::new(x, 0.0)).collect())
                .collect(),
        )
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ComplexMatrix { rows, cols, data }
    }

    /// A single column as an `m x 1` matrix.
    pub fn column_matrix(v: &[Complex64]) -> Self {
        ComplexMatrix {
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    /// Rank-one matrix `u v*` with entries `u_i conj(v_j)`.
    pub fn outer(u: &[Complex64], v: &[Complex64]) -> Self {
        ComplexMatrix::from_fn(u.len(), v.len(), |i, j| u[i] * v[j].conj())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn add(&self, other: &ComplexMatrix) -> ComplexMatrix {
        self.zip_entries(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &ComplexMatrix) -> ComplexMatrix {
        self.zip_entries(other, |a, b| a - b)
    }

    fn zip_entries(
        &self,
        other: &ComplexMatrix,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> ComplexMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "matrix shapes must agree"
        );
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn scaled(&self, c: Complex64) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| a * c).collect(),
        }
    }

    pub fn matmul(&self, other: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik == ZERO_C {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + aik * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    pub fn trace(&self) -> Complex64 {
        assert!(self.is_square(), "trace requires a square matrix");
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    /// `tr(self * other)` without forming the product.
    pub fn trace_of_product(&self, other: &ComplexMatrix) -> Complex64 {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        assert_eq!(self.rows, other.cols, "product must be square for a trace");
        let mut acc = ZERO_C;
        for i in 0..self.rows {
            for k in 0..self.cols {
                acc += self.get(i, k) * other.get(k, i);
            }
        }
        acc
    }

    pub fn fro_norm(&self) -> f64 {
        self.data.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "matrix shapes must agree"
        );
        self.data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Frobenius norm of `M - M*`; exactly zero for exactly Hermitian data.
    pub fn hermiticity_defect(&self) -> f64 {
        assert!(self.is_square(), "Hermiticity is defined for square matrices");
        let mut acc = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                acc += (self.get(i, j) - self.get(j, i).conj()).norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// `(M + M*)/2`, filled so the result is Hermitian to the last bit.
    pub fn hermitian_part(&self) -> ComplexMatrix {
        assert!(self.is_square(), "Hermiticity is defined for square matrices");
        let mut h = ComplexMatrix::zeros(self.rows, self.rows);
        for i in 0..self.rows {
            h.set(i, i, Complex64::new(self.get(i, i).re, 0.0));
            for j in (i + 1)..self.rows {
                let v = (self.get(i, j) + self.get(j, i).conj()) * 0.5;
                h.set(i, j, v);
                h.set(j, i, v.conj());
            }
        }
        h
    }

    /// Kronecker product; indices are big-endian, so
    /// `kron(A, B)[i1*m + i2][j1*n + j2] = A[i1][j1] * B[i2][j2]`.
    pub fn kron(&self, other: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                if a == ZERO_C {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        out.set(
                            i1 * other.rows + i2,
                            j1 * other.cols + j2,
                            a * other.get(i2, j2),
                        );
                    }
                }
            }
        }
        out
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                if i != j {
                    acc += self.get(i, j).norm_sqr();
                }
            }
        }
        acc.sqrt()
    }

    /// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
    ///
    /// Returns eigenvalues in ascending order and a unitary `V` with
    /// `M = V diag(lambda) V*`. Fails if the input is detectably
    /// non-Hermitian.
    pub fn hermitian_eigen(&self) -> Result<(Vec<f64>, ComplexMatrix)> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let scale = self.fro_norm().max(1.0);
        let defect = self.hermiticity_defect();
        let bound = 1e-10 * scale;
        if defect > bound {
            return Err(Error::NotHermitian { defect, bound });
        }
        let n = self.rows;
        let mut a = self.hermitian_part();
        let mut v = ComplexMatrix::identity(n);
        let off_tol = 1e-13 * scale;
        let mut converged = false;
        for _sweep in 0..64 {
            if a.off_diagonal_norm() <= off_tol {
                converged = true;
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = a.get(p, q);
                    let m = apq.norm();
                    if m < f64::MIN_POSITIVE {
                        a.set(p, q, ZERO_C);
                        a.set(q, p, ZERO_C);
                        continue;
                    }
                    // Unitary Jacobi rotation J in the (p,q) plane chosen to
                    // annihilate a_pq: diagonal entries c, off-diagonal
                    // +s*u / -s*conj(u) with u the phase of a_pq.
                    let u = apq / m;
                    let app = a.get(p, p).re;
                    let aqq = a.get(q, q).re;
                    let tau = (aqq - app) / (2.0 * m);
                    let t = if tau == 0.0 {
                        1.0
                    } else {
                        tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    let su = s * u;
                    let su_bar = s * u.conj();
                    // A <- J* A (rows p, q)
                    for j in 0..n {
                        let apj = a.get(p, j);
                        let aqj = a.get(q, j);
                        a.set(p, j, apj * c - su * aqj);
                        a.set(q, j, apj * su_bar + aqj * c);
                    }
                    // A <- A J (columns p, q)
                    for i in 0..n {
                        let aip = a.get(i, p);
                        let aiq = a.get(i, q);
                        a.set(i, p, aip * c - su_bar * aiq);
                        a.set(i, q, aip * su + aiq * c);
                    }
                    // V <- V J
                    for i in 0..n {
                        let vip = v.get(i, p);
                        let viq = v.get(i, q);
                        v.set(i, p, vip * c - su_bar * viq);
                        v.set(i, q, vip * su + viq * c);
                    }
                    a.set(p, q, ZERO_C);
                    a.set(q, p, ZERO_C);
                    a.set(p, p, Complex64::new(a.get(p, p).re, 0.0));
                    a.set(q, q, Complex64::new(a.get(q, q).re, 0.0));
                }
            }
        }
        if !converged && a.off_diagonal_norm() > off_tol {
            return Err(Error::invalid(
                "eigensolver",
                format!(
                    "sweep limit reached with off-diagonal norm {:.3e}",
                    a.off_diagonal_norm()
                ),
            ));
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| {
            a.get(i, i)
                .re
                .partial_cmp(&a.get(j, j).re)
                .expect("eigenvalues of finite input are finite")
        });
        let eigenvalues: Vec<f64> = order.iter().map(|&i| a.get(i, i).re).collect();
        let vectors = ComplexMatrix::from_fn(n, n, |i, j| v.get(i, order[j]));
        Ok((eigenvalues, vectors))
    }

    /// Tests positive semidefiniteness within `tol`, relative to
    /// `max(1, ||M||_F)`. Reports the smallest eigenvalue of the Hermitian
    /// part and the Hermiticity defect either way.
    pub fn is_psd(&self, tol: f64) -> Result<PsdCheck> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let scale = self.fro_norm().max(1.0);
        let defect = self.hermiticity_defect();
        let (eigenvalues, _) = self.hermitian_part().hermitian_eigen()?;
        let min_eigenvalue = eigenvalues[0];
        Ok(PsdCheck {
            psd: defect <= tol * scale && min_eigenvalue >= -tol * scale,
            min_eigenvalue,
            hermiticity_defect: defect,
        })
    }

    /// The Hermitian PSD square root `B` with `B * B = M`, for PSD `M`
    /// (within the default tolerance `1e-9`). Slightly negative eigenvalues
    /// inside the tolerance are clamped to zero.
    pub fn matrix_sqrt(&self) -> Result<ComplexMatrix> {
        let check = self.is_psd(1e-9)?;
        if !check.psd {
            let scale = self.fro_norm().max(1.0);
            if check.hermiticity_defect > 1e-9 * scale {
                return Err(Error::NotHermitian {
                    defect: check.hermiticity_defect,
                    bound: 1e-9 * scale,
                });
            }
            return Err(Error::NotPsd {
                min_eigenvalue: check.min_eigenvalue,
            });
        }
        let (eigenvalues, v) = self.hermitian_part().hermitian_eigen()?;
        let roots: Vec<f64> = eigenvalues.iter().map(|&l| l.max(0.0).sqrt()).collect();
        let n = self.rows;
        let mut b = ComplexMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let mut acc = ZERO_C;
                for (k, &r) in roots.iter().enumerate() {
                    acc += r * v.get(i, k) * v.get(j, k).conj();
                }
                if i == j {
                    b.set(i, i, Complex64::new(acc.re, 0.0));
                } else {
                    b.set(i, j, acc);
                    b.set(j, i, acc.conj());
                }
            }
        }
        Ok(b)
    }

    /// Gram vectors of a PSD matrix: columns of its square root, so that
    /// `m_ij = <v_i, v_j>` with the inner product conjugate-linear in the
    /// first slot.
    pub fn gram_vectors(&self) -> Result<GramDecomposition> {
        let root = self.matrix_sqrt()?;
        let vectors = (0..root.cols()).map(|j| root.column(j)).collect();
        Ok(GramDecomposition { root, vectors })
    }
}

/// Result of a positive-semidefiniteness test.
#[derive(Clone, Copy, Debug)]
pub struct PsdCheck {
    pub psd: bool,
    /// Smallest eigenvalue of the Hermitian part.
    pub min_eigenvalue: f64,
    /// Frobenius norm of `M - M*`.
    pub hermiticity_defect: f64,
}

/// A PSD matrix factored through its Hermitian square root.
#[derive(Clone, Debug)]
pub struct GramDecomposition {
    /// The square root `B` itself, with `B * B` equal to the source matrix.
    pub root: ComplexMatrix,
    /// Columns of `B`; the source matrix is their Gram matrix.
    pub vectors: Vec<Vec<Complex64>>,
}

/// The operator on `(C^m)^{tensor n}` permuting tensor slots: slot `t` of the
/// output carries factor `sigma^{-1}(t)` of the input, so simple tensors map
/// by `v_1 x ... x v_n -> v_{sigma^{-1}(1)} x ... x v_{sigma^{-1}(n)}`.
///
/// Basis indices are big-endian in the factors, matching [`ComplexMatrix::kron`].
pub fn permutation_operator(sigma: &Permutation, m: usize) -> Result<ComplexMatrix> {
    if m == 0 {
        return Err(Error::invalid("tensor factor", "dimension must be at least 1"));
    }
    let n = sigma.degree();
    let dim = match m.checked_pow(n as u32) {
        Some(d) if d <= TENSOR_DIM_CAP => d,
        Some(d) => {
            return Err(Error::TensorDimCap {
                dim: d,
                cap: TENSOR_DIM_CAP,
            })
        }
        None => {
            return Err(Error::TensorDimCap {
                dim: usize::MAX,
                cap: TENSOR_DIM_CAP,
            })
        }
    };
    let inv = sigma.inverse();
    let mut p = ComplexMatrix::zeros(dim, dim);
    let mut digits = vec![0usize; n + 1];
    for col in 0..dim {
        let mut rem = col;
        for t in (1..=n).rev() {
            digits[t] = rem % m;
            rem /= m;
        }
        let mut row = 0usize;
        for t in 1..=n {
            row = row * m + digits[inv.image_of(t)];
        }
        p.set(row, col, ONE_C);
    }
    Ok(p)
}

/// Square or rectangular complex Ginibre matrix: independent entries
/// `(x + iy)/sqrt(2)` with standard normal `x`, `y`, drawn from a ChaCha8
/// stream seeded with `seed`.
pub fn random_ginibre(rows: usize, cols: usize, seed: u64) -> ComplexMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = StandardNormal;
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = normal.sample(&mut rng);
        let im: f64 = normal.sample(&mut rng);
        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    })
}

/// Wishart-distributed PSD matrix `G G*` from a seeded Ginibre `G`, stored
/// exactly Hermitian. With `trace_one` the matrix is divided by its trace.
pub fn random_psd(m: usize, seed: u64, trace_one: bool) -> ComplexMatrix {
    let g = random_ginibre(m, m, seed);
    let mut a = ComplexMatrix::zeros(m, m);
    for i in 0..m {
        for j in i..m {
            let mut acc = ZERO_C;
            for k in 0..m {
                acc += g.get(i, k) * g.get(j, k).conj();
            }
            if i == j {
                a.set(i, i, Complex64::new(acc.re, 0.0));
            } else {
                a.set(i, j, acc);
                a.set(j, i, acc.conj());
            }
        }
    }
    if trace_one {
        let t = a.trace().re;
        a = a.scaled(Complex64::new(1.0 / t, 0.0));
    }
    a
}

/// A seeded Haar-direction unit vector in `C^m`.
pub fn random_unit_vector(m: usize, seed: u64) -> Vec<Complex64> {
    let g = random_ginibre(m, 1, seed);
    let mut v = g.column(0);
    let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    for x in &mut v {
        *x /= norm;
    }
    v
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Stable per-(trial, slot) seed derivation, so every trial of a verification
/// run draws an independent stream regardless of scheduling order.
pub fn derive_seed(seed: u64, trial: u64, slot: u64) -> u64 {
    let a = splitmix64(seed ^ 0xD1B5_4A32_D192_ED03u64.wrapping_mul(trial.wrapping_add(1)));
    splitmix64(a ^ 0x9E6D_62D0_6F6A_9A9Bu64.wrapping_mul(slot.wrapping_add(1)))
}
