//! Generalized matrix functions: for a subgroup `H` of `S_n` and a function
//! `f` on `H`, the value `d_f(A) = sum_{sigma in H} f(sigma) prod_t a_{t, sigma(t)}`.
//! Determinant, permanent, and immanants are the special cases `f = sign`,
//! `f = 1` on the full symmetric group, and `f` an irreducible character.
//! A brute-force tensor-space oracle cross-checks the defining sum on PSD
//! inputs at small degree.

use crate::characters::GroupFunction;
use crate::error::{Error, Result};
use crate::matrix::{permutation_operator, ComplexMatrix};
use crate::partition::Partition;
use num_complex::Complex64;

const ZERO_C: Complex64 = Complex64::new(0.0, 0.0);
const ONE_C: Complex64 = Complex64::new(1.0, 0.0);

/// Largest matrix dimension the Ryser permanent evaluates.
pub const PERMANENT_MAX_DIM: usize = 20;

/// Largest degree the tensor-space oracle brute-forces.
pub const ORACLE_MAX_DEGREE: usize = 4;

/// Determinant by LU factorization with partial pivoting.
pub fn determinant(a: &ComplexMatrix) -> Result<Complex64> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    let mut lu = a.clone();
    let mut det = ONE_C;
    for k in 0..n {
        let mut pivot = k;
        let mut best = lu.get(k, k).norm();
        for i in (k + 1)..n {
            let v = lu.get(i, k).norm();
            if v > best {
                pivot = i;
                best = v;
            }
        }
        if best == 0.0 {
            return Ok(ZERO_C);
        }
        if pivot != k {
            for j in 0..n {
                let tmp = lu.get(pivot, j);
                lu.set(pivot, j, lu.get(k, j));
                lu.set(k, j, tmp);
            }
            det = -det;
        }
        let pv = lu.get(k, k);
        det *= pv;
        for i in (k + 1)..n {
            let factor = lu.get(i, k) / pv;
            for j in (k + 1)..n {
                let v = lu.get(i, j) - factor * lu.get(k, j);
                lu.set(i, j, v);
            }
        }
    }
    Ok(det)
}

/// Permanent by Ryser's inclusion-exclusion formula with Gray-code subset
/// updates, `O(2^n n)`; capped at dimension [`PERMANENT_MAX_DIM`].
pub fn permanent(a: &ComplexMatrix) -> Result<Complex64> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    if n > PERMANENT_MAX_DIM {
        return Err(Error::invalid(
            "permanent",
            format!("dimension {n} exceeds the cap of {PERMANENT_MAX_DIM}"),
        ));
    }
    let mut row_sums = vec![ZERO_C; n];
    let mut total = ZERO_C;
    let mut prev_gray = 0usize;
    for k in 1usize..(1 << n) {
        let gray = k ^ (k >> 1);
        let changed = gray ^ prev_gray;
        let j = changed.trailing_zeros() as usize;
        if gray & changed != 0 {
            for (i, rs) in row_sums.iter_mut().enumerate() {
                *rs += a.get(i, j);
            }
        } else {
            for (i, rs) in row_sums.iter_mut().enumerate() {
                *rs -= a.get(i, j);
            }
        }
        prev_gray = gray;
        let prod = row_sums.iter().copied().fold(ONE_C, |acc, x| acc * x);
        if (n as u32 - gray.count_ones()) % 2 == 0 {
            total += prod;
        } else {
            total -= prod;
        }
    }
    Ok(total)
}

/// Immanant indexed by a partition of the matrix dimension:
/// `sum_sigma chi_lambda(sigma) prod_t a_{t, sigma(t)}`.
pub fn immanant(lambda: &Partition, a: &ComplexMatrix) -> Result<Complex64> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if lambda.sum() != a.rows() {
        return Err(Error::SizeMismatch(format!(
            "index {lambda} has weight {} but the matrix has dimension {}",
            lambda.sum(),
            a.rows()
        )));
    }
    let chi = GroupFunction::sn_character(lambda)?;
    gmf_value(&chi, a)
}

/// The defining sum `d_f(A) = sum_{sigma in H} f(sigma) prod_t a_{t, sigma(t)}`
/// over the domain of `f`. Zero coefficients are skipped, so functions
/// extended by zero cost only their support.
pub fn gmf_value(f: &GroupFunction, a: &ComplexMatrix) -> Result<Complex64> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = f.degree();
    if n != a.rows() {
        return Err(Error::ArityMismatch(format!(
            "function on permutations of degree {n} applied to a matrix of dimension {}",
            a.rows()
        )));
    }
    let mut acc = ZERO_C;
    for (sigma, coeff) in f.iter() {
        if coeff == ZERO_C {
            continue;
        }
        let mut prod = ONE_C;
        for t in 1..=n {
            prod *= a.get(t - 1, sigma.image_of(t) - 1);
        }
        acc += coeff * prod;
    }
    Ok(acc)
}

/// Brute-force evaluation of `d_f(A)` for PSD `A` through its Gram vectors:
/// with `X_i` the rank-one projector onto the `i`-th Gram vector,
/// `d_f(A) = sum_sigma f(sigma) tr(op(sigma^{-1}) X_1 x ... x X_n)`.
///
/// Exponential in the degree; capped at [`ORACLE_MAX_DEGREE`]. This is the
/// independent reference the direct sum is tested against.
pub fn gmf_tensor_oracle(f: &GroupFunction, a: &ComplexMatrix) -> Result<Complex64> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = f.degree();
    if n != a.rows() {
        return Err(Error::ArityMismatch(format!(
            "function on permutations of degree {n} applied to a matrix of dimension {}",
            a.rows()
        )));
    }
    if n > ORACLE_MAX_DEGREE {
        return Err(Error::invalid(
            "tensor oracle",
            format!("degree {n} exceeds the brute-force cap of {ORACLE_MAX_DEGREE}"),
        ));
    }
    let gram = a.gram_vectors()?;
    let projectors: Vec<ComplexMatrix> = gram
        .vectors
        .iter()
        .map(|v| ComplexMatrix::outer(v, v))
        .collect();
    let mut tensor = projectors[0].clone();
    for x in &projectors[1..] {
        tensor = tensor.kron(x);
    }
    let mut acc = ZERO_C;
    for (sigma, coeff) in f.iter() {
        if coeff == ZERO_C {
            continue;
        }
        let op = permutation_operator(&sigma.inverse(), n)?;
        acc += coeff * op.trace_of_product(&tensor);
    }
    Ok(acc)
}
