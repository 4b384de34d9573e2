//! Integer partitions and Young-diagram combinatorics.

use crate::error::{Error, Result};
use crate::MAX_DEGREE;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// A partition of a positive integer: weakly decreasing, strictly positive parts.
///
/// Serializes as a plain JSON array of parts, e.g. `[2,1]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.parts
    }
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::invalid("partition", "must have at least one part"));
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::invalid("partition", "parts must be positive"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::invalid("partition", "parts must be weakly decreasing"));
        }
        Ok(Partition { parts })
    }

    /// The single-hook shape `(n-k, 1^k)`, `0 <= k <= n-1`.
    pub fn single_hook(n: usize, k: usize) -> Result<Self> {
        if n == 0 || k >= n {
            return Err(Error::invalid("single hook", format!("need 0 <= k < n, got n={n}, k={k}")));
        }
        let mut parts = vec![n - k];
        parts.extend(std::iter::repeat(1).take(k));
        Partition::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn sum(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    /// Transposed diagram.
    pub fn conjugate(&self) -> Partition {
        let cols = self.parts[0];
        let parts = (0..cols)
            .map(|j| self.parts.iter().filter(|&&p| p > j).count())
            .collect();
        Partition { parts }
    }

    /// Product of all hook lengths of the diagram.
    pub fn hook_product(&self) -> u64 {
        let conj = self.conjugate();
        let mut prod = 1u64;
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                let arm = row - j - 1;
                let leg = conj.parts[j] - i - 1;
                prod *= (arm + leg + 1) as u64;
            }
        }
        prod
    }

    /// Dimension of the irreducible symmetric-group representation with this
    /// shape: `n! / ∏ hooks`.
    pub fn hook_degree(&self) -> u64 {
        factorial(self.sum()) / self.hook_product()
    }

    /// Number of permutations in `S_n` whose cycle type is this partition:
    /// `n! / ∏_k k^{m_k} m_k!` where `m_k` is the multiplicity of part `k`.
    pub fn class_size(&self) -> u64 {
        let mut z = 1u64;
        let mut i = 0;
        while i < self.parts.len() {
            let part = self.parts[i];
            let mut m = 0u32;
            while i < self.parts.len() && self.parts[i] == part {
                m += 1;
                i += 1;
            }
            z *= (part as u64).pow(m) * factorial(m as usize);
        }
        factorial(self.sum()) / z
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `"2,1"` or `"(2,1)"`.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<usize> = trimmed
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::invalid("partition", format!("bad part `{t}`: {e}")))
            })
            .collect::<Result<_>>()?;
        Partition::new(parts)
    }
}

/// All partitions of `n` in reverse-lexicographic order, `(n)` first and
/// `(1,…,1)` last. Supported for `1 <= n <= 8`.
pub fn partitions_of(n: usize) -> Result<Vec<Partition>> {
    if n == 0 || n > MAX_DEGREE {
        return Err(Error::DegreeOutOfRange(n));
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(remaining: usize, max_part: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        let top = max_part.min(remaining);
        for p in (1..=top).rev() {
            cur.push(p);
            rec(remaining - p, p, cur, out);
            cur.pop();
        }
    }
    rec(n, n, &mut cur, &mut out);
    Ok(out)
}

pub(crate) fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}
