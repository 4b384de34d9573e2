//! Symbolic trace polynomials in noncommuting matrix variables, and the lift
//! taking a function on `S_n` to a matrix-valued polynomial in `n - 1`
//! variables.
//!
//! For a permutation with canonical cycle decomposition
//! `(c_1) ... (c_k) (w n)` — every cycle rotated to end on its largest
//! element, the cycle containing `n` last — the lift of `sigma` is the
//! monomial
//!
//! ```text
//! lift(sigma) = tr(X_{c_1}) ... tr(X_{c_k}) · X_w
//! ```
//!
//! where `X_c` multiplies the variables along a cycle and `X_w` is the open
//! (untraced) word from the final cycle with `n` removed. Linearly extending
//! over a function `f` on `S_n` gives `lift(f) = sum_sigma f(sigma) lift(sigma)`,
//! the matrix-valued polynomial whose evaluation at Gram data reproduces
//! `d_f` after one more trace.

use crate::characters::GroupFunction;
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::perm::Permutation;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

const ZERO_C: Complex64 = Complex64::new(0.0, 0.0);
const ONE_C: Complex64 = Complex64::new(1.0, 0.0);

/// Coefficients with absolute value at or below this are dropped when terms
/// are combined.
const COEFF_EPS: f64 = 1e-14;

/// One monomial `coefficient · tr(word) ... tr(word) · open-word`, with
/// variables numbered from 1. Traced words are stored in their
/// lexicographically least cyclic rotation and sorted, so equal monomials
/// have equal representations; the open word is order-sensitive and kept
/// as given.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceTerm {
    coefficient: Complex64,
    traced_words: Vec<Vec<usize>>,
    open_word: Vec<usize>,
}

/// Lexicographically least cyclic rotation of a word.
fn least_rotation(word: &[usize]) -> Vec<usize> {
    let k = word.len();
    let mut best: Option<Vec<usize>> = None;
    for start in 0..k {
        let rot: Vec<usize> = (0..k).map(|i| word[(start + i) % k]).collect();
        if best.as_ref().map_or(true, |b| rot < *b) {
            best = Some(rot);
        }
    }
    best.unwrap_or_default()
}

impl TraceTerm {
    pub fn new(
        coefficient: Complex64,
        traced_words: Vec<Vec<usize>>,
        open_word: Vec<usize>,
    ) -> Self {
        let mut traced: Vec<Vec<usize>> = traced_words
            .into_iter()
            .filter(|w| !w.is_empty())
            .map(|w| least_rotation(&w))
            .collect();
        traced.sort();
        TraceTerm {
            coefficient,
            traced_words: traced,
            open_word,
        }
    }

    pub fn coefficient(&self) -> Complex64 {
        self.coefficient
    }

    pub fn traced_words(&self) -> &[Vec<usize>] {
        &self.traced_words
    }

    pub fn open_word(&self) -> &[usize] {
        &self.open_word
    }

    fn key(&self) -> (Vec<Vec<usize>>, Vec<usize>) {
        (self.traced_words.clone(), self.open_word.clone())
    }

    fn max_letter(&self) -> usize {
        self.traced_words
            .iter()
            .flatten()
            .chain(self.open_word.iter())
            .copied()
            .max()
            .unwrap_or(0)
    }

    fn min_letter(&self) -> usize {
        self.traced_words
            .iter()
            .flatten()
            .chain(self.open_word.iter())
            .copied()
            .min()
            .unwrap_or(1)
    }

    fn body_text(&self, trace_one: bool) -> String {
        let mut s = String::new();
        for w in &self.traced_words {
            if trace_one && w.len() == 1 {
                continue;
            }
            s.push_str("tr(");
            for &l in w {
                s.push('X');
                s.push_str(&l.to_string());
            }
            s.push(')');
        }
        if self.open_word.is_empty() {
            if s.is_empty() {
                "1".to_string()
            } else {
                s.push_str("·1");
                s
            }
        } else {
            if !s.is_empty() {
                s.push('·');
            }
            for &l in &self.open_word {
                s.push('X');
                s.push_str(&l.to_string());
            }
            s
        }
    }

    fn body_latex(&self, trace_one: bool) -> String {
        let letter = |l: usize| format!("X_{{{l}}}");
        let mut s = String::new();
        for w in &self.traced_words {
            if trace_one && w.len() == 1 {
                continue;
            }
            s.push_str("\\operatorname{tr}(");
            for &l in w {
                s.push_str(&letter(l));
            }
            s.push(')');
        }
        if self.open_word.is_empty() {
            if s.is_empty() {
                "\\mathbb{1}".to_string()
            } else {
                s.push_str("\\,\\mathbb{1}");
                s
            }
        } else {
            if !s.is_empty() {
                s.push_str("\\,");
            }
            for &l in &self.open_word {
                s.push_str(&letter(l));
            }
            s
        }
    }
}

fn fmt_num(x: f64, unicode_minus: bool) -> String {
    let s = format!("{x}");
    if unicode_minus {
        s.replace('-', "\u{2212}")
    } else {
        s
    }
}

/// Splits a coefficient into a leading sign and an optional magnitude
/// string; `None` magnitude means an implicit 1. Complex coefficients keep
/// their sign inside parentheses.
fn coeff_parts(c: Complex64, unicode_minus: bool) -> (bool, Option<String>) {
    if c.im.abs() <= 1e-12 {
        let neg = c.re < 0.0;
        let a = c.re.abs();
        if (a - 1.0).abs() <= 1e-12 {
            (neg, None)
        } else {
            (neg, Some(fmt_num(a, unicode_minus)))
        }
    } else {
        let re = fmt_num(c.re, unicode_minus);
        let sign = if c.im < 0.0 {
            if unicode_minus {
                "\u{2212}"
            } else {
                "-"
            }
        } else {
            "+"
        };
        let im = fmt_num(c.im.abs(), unicode_minus);
        (false, Some(format!("({re}{sign}{im}i)")))
    }
}

/// A finite sum of trace terms in `n - 1` matrix variables, attached to
/// permutation degree `n`. Terms are kept merged, sorted, and free of
/// (numerically) zero coefficients.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawPoly", into = "RawPoly")]
pub struct TracePolynomial {
    n: usize,
    terms: Vec<TraceTerm>,
}

#[derive(Serialize, Deserialize)]
struct RawTerm {
    coeff: [f64; 2],
    traced: Vec<Vec<usize>>,
    open: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawPoly {
    n: usize,
    terms: Vec<RawTerm>,
}

impl From<TracePolynomial> for RawPoly {
    fn from(p: TracePolynomial) -> RawPoly {
        RawPoly {
            n: p.n,
            terms: p
                .terms
                .into_iter()
                .map(|t| RawTerm {
                    coeff: [t.coefficient.re, t.coefficient.im],
                    traced: t.traced_words,
                    open: t.open_word,
                })
                .collect(),
        }
    }
}

impl TryFrom<RawPoly> for TracePolynomial {
    type Error = Error;
    fn try_from(raw: RawPoly) -> Result<TracePolynomial> {
        for t in &raw.terms {
            if !t.coeff[0].is_finite() || !t.coeff[1].is_finite() {
                return Err(Error::invalid("trace polynomial", "coefficients must be finite"));
            }
        }
        TracePolynomial::from_terms(
            raw.n,
            raw.terms
                .into_iter()
                .map(|t| {
                    TraceTerm::new(
                        Complex64::new(t.coeff[0], t.coeff[1]),
                        t.traced,
                        t.open,
                    )
                })
                .collect(),
        )
    }
}

impl TracePolynomial {
    /// The zero polynomial at degree `n`.
    pub fn zero(n: usize) -> Self {
        TracePolynomial { n, terms: Vec::new() }
    }

    /// Builds a polynomial from raw terms: validates letters against the
    /// degree, merges equal monomials, drops vanished ones, and sorts.
    pub fn from_terms(n: usize, terms: Vec<TraceTerm>) -> Result<Self> {
        if n == 0 {
            return Err(Error::DegreeOutOfRange(0));
        }
        for t in &terms {
            if t.min_letter() < 1 || t.max_letter() > n.saturating_sub(1) {
                return Err(Error::invalid(
                    "trace polynomial",
                    format!(
                        "a term uses variables outside X1..X{} (degree {n})",
                        n - 1
                    ),
                ));
            }
        }
        let mut merged: BTreeMap<(Vec<Vec<usize>>, Vec<usize>), Complex64> = BTreeMap::new();
        for t in terms {
            *merged.entry(t.key()).or_insert(ZERO_C) += t.coefficient;
        }
        let mut out: Vec<TraceTerm> = merged
            .into_iter()
            .filter(|(_, c)| c.norm() > COEFF_EPS)
            .map(|((traced_words, open_word), coefficient)| TraceTerm {
                coefficient,
                traced_words,
                open_word,
            })
            .collect();
        out.sort_by(|a, b| {
            a.open_word
                .len()
                .cmp(&b.open_word.len())
                .then(b.traced_words.len().cmp(&a.traced_words.len()))
                .then(a.traced_words.cmp(&b.traced_words))
                .then(a.open_word.cmp(&b.open_word))
        });
        Ok(TracePolynomial { n, terms: out })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Number of matrix variables, one fewer than the degree.
    pub fn num_variables(&self) -> usize {
        self.n - 1
    }

    pub fn terms(&self) -> &[TraceTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        TracePolynomial::from_terms(
            self.n,
            self.terms
                .iter()
                .map(|t| TraceTerm {
                    coefficient: t.coefficient * c,
                    traced_words: t.traced_words.clone(),
                    open_word: t.open_word.clone(),
                })
                .collect(),
        )
        .expect("scaling preserves validity")
    }

    pub fn add(&self, other: &TracePolynomial) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DegreeMismatch(self.n, other.n));
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        TracePolynomial::from_terms(self.n, terms)
    }

    pub fn sub(&self, other: &TracePolynomial) -> Result<Self> {
        self.add(&other.scaled(Complex64::new(-1.0, 0.0)))
    }

    /// Largest coefficient difference against another polynomial, taken over
    /// the union of their monomials.
    pub fn coefficient_distance(&self, other: &TracePolynomial) -> Result<f64> {
        Ok(self
            .sub(other)?
            .terms
            .iter()
            .map(|t| t.coefficient.norm())
            .fold(0.0, f64::max))
    }

    /// Evaluates at `n - 1` square matrices of equal dimension (at least one,
    /// to fix the dimension).
    pub fn evaluate(&self, xs: &[ComplexMatrix]) -> Result<ComplexMatrix> {
        Ok(self.evaluate_with_scale(xs)?.0)
    }

    /// Evaluates and also returns the magnitude `sum |coeff| prod |tr| ||open||_F`,
    /// the natural scale for relative tolerances on the result.
    pub fn evaluate_with_scale(&self, xs: &[ComplexMatrix]) -> Result<(ComplexMatrix, f64)> {
        if xs.len() != self.n - 1 {
            return Err(Error::ArityMismatch(format!(
                "polynomial of degree {} takes {} matrices, got {}",
                self.n,
                self.n - 1,
                xs.len()
            )));
        }
        if xs.is_empty() {
            return Err(Error::ArityMismatch(
                "evaluation needs at least one matrix to fix the dimension".to_string(),
            ));
        }
        let m = xs[0].rows();
        for x in xs {
            if !x.is_square() {
                return Err(Error::NotSquare {
                    rows: x.rows(),
                    cols: x.cols(),
                });
            }
            if x.rows() != m {
                return Err(Error::SizeMismatch(format!(
                    "variables have mixed dimensions {m} and {}",
                    x.rows()
                )));
            }
        }
        let word_product = |word: &[usize]| -> ComplexMatrix {
            let mut prod = ComplexMatrix::identity(m);
            for &l in word {
                prod = prod.matmul(&xs[l - 1]);
            }
            prod
        };
        let mut acc = ComplexMatrix::zeros(m, m);
        let mut scale = 0.0f64;
        for term in &self.terms {
            let mut factor = term.coefficient;
            let mut magnitude = term.coefficient.norm();
            for w in &term.traced_words {
                let t = word_product(w).trace();
                factor *= t;
                magnitude *= t.norm();
            }
            let open = word_product(&term.open_word);
            magnitude *= open.fro_norm();
            acc = acc.add(&open.scaled(factor));
            scale += magnitude;
        }
        Ok((acc, scale))
    }

    pub fn render_text(&self, trace_one: bool) -> String {
        self.render(trace_one, true)
    }

    pub fn render_latex(&self, trace_one: bool) -> String {
        self.render(trace_one, false)
    }

    fn render(&self, trace_one: bool, text: bool) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, term) in self.terms.iter().enumerate() {
            let (neg, mag) = coeff_parts(term.coefficient, text);
            if i == 0 {
                if neg {
                    out.push_str(if text { "\u{2212}" } else { "-" });
                }
            } else if neg {
                out.push_str(if text { " \u{2212} " } else { " - " });
            } else {
                out.push_str(" + ");
            }
            let body = if text {
                term.body_text(trace_one)
            } else {
                term.body_latex(trace_one)
            };
            match mag {
                None => out.push_str(&body),
                Some(m) => {
                    if text {
                        out.push_str(&format!("{m}·{body}"));
                    } else {
                        out.push_str(&format!("{m}\\,{body}"));
                    }
                }
            }
        }
        out
    }
}

/// The lift of a single permutation: traced words from its non-final
/// canonical cycles, the open word from the final cycle with `n` removed.
pub fn lift_sigma(sigma: &Permutation) -> TracePolynomial {
    let n = sigma.degree();
    let cc = sigma.canonical_cycles();
    let cycles = cc.cycles();
    let traced: Vec<Vec<usize>> = cycles[..cycles.len() - 1].to_vec();
    let mut open = cc.last_cycle().to_vec();
    let popped = open.pop();
    debug_assert_eq!(popped, Some(n));
    TracePolynomial::from_terms(n, vec![TraceTerm::new(ONE_C, traced, open)])
        .expect("cycle letters lie in range")
}

/// The linear extension `lift(f) = sum_sigma f(sigma) lift(sigma)` over the
/// full symmetric group. Functions supported on a subgroup must be extended
/// by zero first.
pub fn lift_function(f: &GroupFunction) -> Result<TracePolynomial> {
    if !f.domain().is_symmetric_group() {
        return Err(Error::DomainNotSymmetric(f.degree()));
    }
    let n = f.degree();
    let mut terms = Vec::new();
    for (sigma, coeff) in f.iter() {
        if coeff == ZERO_C {
            continue;
        }
        let cc = sigma.canonical_cycles();
        let cycles = cc.cycles();
        let traced: Vec<Vec<usize>> = cycles[..cycles.len() - 1].to_vec();
        let mut open = cc.last_cycle().to_vec();
        open.pop();
        terms.push(TraceTerm::new(coeff, traced, open));
    }
    TracePolynomial::from_terms(n, terms)
}

/// The scalar trace monomial of a permutation over `n` matrices: one trace
/// per canonical cycle, including the final cycle. Satisfies
/// `T_sigma(X_1..X_n) = tr(lift(sigma)(X_1..X_{n-1}) · X_n)`.
pub fn evaluate_t_scalar(sigma: &Permutation, xs: &[ComplexMatrix]) -> Result<Complex64> {
    let n = sigma.degree();
    if xs.len() != n {
        return Err(Error::ArityMismatch(format!(
            "trace monomial of degree {n} takes {n} matrices, got {}",
            xs.len()
        )));
    }
    let m = xs[0].rows();
    for x in xs {
        if !x.is_square() || x.rows() != m {
            return Err(Error::SizeMismatch(
                "trace monomials need equal square matrices".to_string(),
            ));
        }
    }
    let mut acc = ONE_C;
    for cycle in sigma.canonical_cycles().cycles() {
        let mut prod = xs[cycle[0] - 1].clone();
        for &l in &cycle[1..] {
            prod = prod.matmul(&xs[l - 1]);
        }
        acc *= prod.trace();
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{builtin_a4_table, GroupFunction};
    use crate::matrix::{permutation_operator, random_ginibre, random_psd};
    use crate::partition::Partition;
    use crate::perm::{enumerate_symmetric, Subgroup};
    use std::sync::Arc;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn perm(n: usize, cycles: &[&[usize]]) -> Permutation {
        let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(n, &cycles).unwrap()
    }

    #[test]
    fn lift_of_single_permutations() {
        // (14)(23) -> tr(X2X3) X1
        let p = lift_sigma(&perm(4, &[&[1, 4], &[2, 3]]));
        assert_eq!(p.terms().len(), 1);
        let t = &p.terms()[0];
        assert_eq!(t.traced_words(), &[vec![2, 3]]);
        assert_eq!(t.open_word(), &[1]);

        // identity in S2 -> tr(X1) 1 ; transposition -> X1
        let e = lift_sigma(&Permutation::identity(2));
        assert_eq!(e.terms()[0].traced_words(), &[vec![1]]);
        assert!(e.terms()[0].open_word().is_empty());
        let t12 = lift_sigma(&perm(2, &[&[1, 2]]));
        assert!(t12.terms()[0].traced_words().is_empty());
        assert_eq!(t12.terms()[0].open_word(), &[1]);

        // 4-cycle (1 2 3 4) -> open word X1X2X3 and nothing traced
        let c4 = lift_sigma(&perm(4, &[&[1, 2, 3, 4]]));
        assert!(c4.terms()[0].traced_words().is_empty());
        assert_eq!(c4.terms()[0].open_word(), &[1, 2, 3]);
    }

    #[test]
    fn sign_lift_renders_exactly() {
        let s2 = Subgroup::symmetric(2).unwrap();
        let p = lift_function(&GroupFunction::sign_function(s2)).unwrap();
        assert_eq!(p.terms().len(), 2);
        assert_eq!(p.render_text(false), "tr(X1)·1 \u{2212} X1");
        assert_eq!(p.render_text(true), "1 \u{2212} X1");
        assert_eq!(
            p.render_latex(false),
            "\\operatorname{tr}(X_{1})\\,\\mathbb{1} - X_{1}"
        );
    }

    #[test]
    fn permanent_lift_has_six_terms() {
        let s3 = Subgroup::symmetric(3).unwrap();
        let p = lift_function(&GroupFunction::trivial(s3)).unwrap();
        assert_eq!(p.terms().len(), 6);
        assert_eq!(
            p.render_text(false),
            "tr(X1)tr(X2)·1 + tr(X1X2)·1 + tr(X1)·X2 + tr(X2)·X1 + X1X2 + X2X1"
        );
    }

    #[test]
    fn degree_three_character_lift() {
        // the degree-3 character of A4, extended by zero to S4, lifts to
        // 3 tr(X1)tr(X2)tr(X3) 1 - tr(X1X2) X3 - tr(X1X3) X2 - tr(X2X3) X1
        let table = builtin_a4_table();
        let chi1 = table
            .character_by_label("chi1")
            .unwrap()
            .zero_extend(Subgroup::symmetric(4).unwrap())
            .unwrap();
        let p = lift_function(&chi1).unwrap();
        assert_eq!(p.terms().len(), 4);
        assert_eq!(
            p.render_text(false),
            "3·tr(X1)tr(X2)tr(X3)·1 \u{2212} tr(X1X2)·X3 \u{2212} tr(X1X3)·X2 \u{2212} tr(X2X3)·X1"
        );
        let expect = TracePolynomial::from_terms(
            4,
            vec![
                TraceTerm::new(c(3.0, 0.0), vec![vec![1], vec![2], vec![3]], vec![]),
                TraceTerm::new(c(-1.0, 0.0), vec![vec![1, 2]], vec![3]),
                TraceTerm::new(c(-1.0, 0.0), vec![vec![1, 3]], vec![2]),
                TraceTerm::new(c(-1.0, 0.0), vec![vec![2, 3]], vec![1]),
            ],
        )
        .unwrap();
        assert!(p.coefficient_distance(&expect).unwrap() < 1e-14);
    }

    #[test]
    fn lift_requires_full_symmetric_domain() {
        let table = builtin_a4_table();
        assert!(matches!(
            lift_function(&table.character(0)),
            Err(Error::DomainNotSymmetric(4))
        ));
    }

    #[test]
    fn identity_indicator_evaluates_to_scaled_identity() {
        let s3 = Subgroup::symmetric(3).unwrap();
        let p = lift_function(&GroupFunction::identity_indicator(s3)).unwrap();
        for m in 1..=3 {
            let xs = vec![ComplexMatrix::identity(m), ComplexMatrix::identity(m)];
            let v = p.evaluate(&xs).unwrap();
            let expect = ComplexMatrix::identity(m).scaled(c((m * m) as f64, 0.0));
            assert!(v.max_abs_diff(&expect) < 1e-12);
        }
    }

    #[test]
    fn zero_polynomial_renders_and_evaluates() {
        let s2 = Subgroup::symmetric(2).unwrap();
        let p = lift_function(&GroupFunction::sign_function(Arc::clone(&s2))).unwrap();
        let z = p.sub(&p).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.render_text(false), "0");
        let v = z.evaluate(&[random_ginibre(3, 3, 1)]).unwrap();
        assert_eq!(v.fro_norm(), 0.0);
    }

    #[test]
    fn scalar_trace_monomials() {
        let xs: Vec<ComplexMatrix> = (0..3).map(|k| random_ginibre(2, 2, 60 + k)).collect();
        // identity: product of traces
        let t = evaluate_t_scalar(&Permutation::identity(3), &xs).unwrap();
        let expect = xs[0].trace() * xs[1].trace() * xs[2].trace();
        assert!((t - expect).norm() < 1e-12);
        // 3-cycle: single trace of the ordered product
        let t = evaluate_t_scalar(&perm(3, &[&[1, 2, 3]]), &xs).unwrap();
        let expect = xs[0].matmul(&xs[1]).matmul(&xs[2]).trace();
        assert!((t - expect).norm() < 1e-12);
        // transposition (1 2): tr(X1X2) tr(X3)
        let t = evaluate_t_scalar(&perm(3, &[&[1, 2]]), &xs).unwrap();
        let expect = xs[0].matmul(&xs[1]).trace() * xs[2].trace();
        assert!((t - expect).norm() < 1e-12);
    }

    #[test]
    fn scalar_monomial_matches_tensor_trace() {
        // T_sigma(X_1..X_n) = tr(op(sigma^{-1}) (X_1 x ... x X_n))
        let xs: Vec<ComplexMatrix> = (0..3).map(|k| random_ginibre(2, 2, 70 + k)).collect();
        let tensor = xs[0].kron(&xs[1]).kron(&xs[2]);
        for sigma in enumerate_symmetric(3).unwrap() {
            let direct = evaluate_t_scalar(&sigma, &xs).unwrap();
            let op = permutation_operator(&sigma.inverse(), 2).unwrap();
            let via_tensor = op.trace_of_product(&tensor);
            assert!(
                (direct - via_tensor).norm() < 1e-10,
                "{sigma}: {direct} vs {via_tensor}"
            );
        }
    }

    #[test]
    fn closure_under_final_multiplication() {
        // T_sigma(X_1..X_n) = tr(lift(sigma)(X_1..X_{n-1}) X_n)
        let xs: Vec<ComplexMatrix> = (0..4).map(|k| random_ginibre(2, 2, 80 + k)).collect();
        for sigma in enumerate_symmetric(4).unwrap() {
            let full = evaluate_t_scalar(&sigma, &xs).unwrap();
            let partial = lift_sigma(&sigma).evaluate(&xs[..3]).unwrap();
            let closed = partial.matmul(&xs[3]).trace();
            assert!(
                (full - closed).norm() < 1e-10,
                "{sigma}: {full} vs {closed}"
            );
        }
    }

    #[test]
    fn lift_is_linear() {
        let s3 = Subgroup::symmetric(3).unwrap();
        let f = GroupFunction::from_fn(Arc::clone(&s3), |p| {
            c(p.images()[0] as f64, p.images()[1] as f64 - 2.0)
        });
        let g = GroupFunction::sign_function(Arc::clone(&s3));
        let sum_lift = lift_function(&f.add(&g).unwrap()).unwrap();
        let lift_sum = lift_function(&f).unwrap().add(&lift_function(&g).unwrap()).unwrap();
        assert!(sum_lift.coefficient_distance(&lift_sum).unwrap() < 1e-14);
        let scaled = lift_function(&f.scaled(c(0.0, 2.0))).unwrap();
        assert!(
            scaled
                .coefficient_distance(&lift_function(&f).unwrap().scaled(c(0.0, 2.0)))
                .unwrap()
                < 1e-14
        );
    }

    #[test]
    fn character_lifts_evaluate_hermitian() {
        // any function with f(sigma^{-1}) = conj(f(sigma)) lifts to a
        // polynomial that is Hermitian on Hermitian inputs
        let xs: Vec<ComplexMatrix> = (0..3)
            .map(|k| random_psd(3, 110 + k, false).hermitian_part())
            .collect();
        let chi = GroupFunction::sn_character(&Partition::new(vec![2, 1, 1]).unwrap()).unwrap();
        let p = lift_function(&chi).unwrap();
        let (v, scale) = p.evaluate_with_scale(&xs).unwrap();
        assert!(v.hermiticity_defect() <= 1e-12 * scale.max(1.0));

        let table = builtin_a4_table();
        let s4 = Subgroup::symmetric(4).unwrap();
        for i in 0..4 {
            let ext = table.character(i).zero_extend(Arc::clone(&s4)).unwrap();
            let p = lift_function(&ext).unwrap();
            let (v, scale) = p.evaluate_with_scale(&xs).unwrap();
            assert!(
                v.hermiticity_defect() <= 1e-12 * scale.max(1.0),
                "character {i}"
            );
        }
    }

    #[test]
    fn traced_words_merge_up_to_rotation() {
        let a = TraceTerm::new(c(1.0, 0.0), vec![vec![2, 3, 1]], vec![]);
        let b = TraceTerm::new(c(2.0, 0.0), vec![vec![1, 2, 3]], vec![]);
        let p = TracePolynomial::from_terms(4, vec![a, b]).unwrap();
        assert_eq!(p.terms().len(), 1);
        assert_eq!(p.terms()[0].coefficient(), c(3.0, 0.0));
        assert_eq!(p.terms()[0].traced_words(), &[vec![1, 2, 3]]);
        // open words are order-sensitive and do not merge
        let a = TraceTerm::new(c(1.0, 0.0), vec![], vec![1, 2]);
        let b = TraceTerm::new(c(1.0, 0.0), vec![], vec![2, 1]);
        let p = TracePolynomial::from_terms(3, vec![a, b]).unwrap();
        assert_eq!(p.terms().len(), 2);
    }

    #[test]
    fn from_terms_validates_letters() {
        let t = TraceTerm::new(c(1.0, 0.0), vec![], vec![3]);
        assert!(TracePolynomial::from_terms(3, vec![t.clone()]).is_err());
        assert!(TracePolynomial::from_terms(4, vec![t]).is_ok());
        let zero_letter = TraceTerm::new(c(1.0, 0.0), vec![vec![0]], vec![]);
        assert!(TracePolynomial::from_terms(3, vec![zero_letter]).is_err());
    }

    #[test]
    fn evaluation_shape_checks() {
        let s3 = Subgroup::symmetric(3).unwrap();
        let p = lift_function(&GroupFunction::trivial(s3)).unwrap();
        assert!(p.evaluate(&[random_ginibre(2, 2, 1)]).is_err(), "needs 2 matrices");
        assert!(
            p.evaluate(&[random_ginibre(2, 2, 1), random_ginibre(3, 3, 2)])
                .is_err(),
            "mixed dimensions"
        );
        let s1 = Subgroup::symmetric(1).unwrap();
        let constant = lift_function(&GroupFunction::trivial(s1)).unwrap();
        assert!(constant.evaluate(&[]).is_err(), "dimension is undetermined");
    }

    #[test]
    fn json_roundtrip() {
        let table = builtin_a4_table();
        let chi2 = table
            .character_by_label("chi2")
            .unwrap()
            .zero_extend(Subgroup::symmetric(4).unwrap())
            .unwrap();
        let p = lift_function(&chi2).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        let back: TracePolynomial = serde_json::from_str(&s).unwrap();
        assert_eq!(back.degree(), 4);
        assert_eq!(back.terms().len(), p.terms().len());
        assert!(p.coefficient_distance(&back).unwrap() < 1e-12);
        // malformed letters are rejected
        assert!(serde_json::from_str::<TracePolynomial>(
            "{\"n\":3,\"terms\":[{\"coeff\":[1,0],\"traced\":[],\"open\":[5]}]}"
        )
        .is_err());
    }

    #[test]
    fn complex_coefficients_render_in_parentheses() {
        let p = TracePolynomial::from_terms(
            3,
            vec![
                TraceTerm::new(c(-0.5, 0.75), vec![], vec![1]),
                TraceTerm::new(c(0.0, -1.0), vec![], vec![2]),
            ],
        )
        .unwrap();
        assert_eq!(
            p.render_text(false),
            "(\u{2212}0.5+0.75i)·X1 + (0\u{2212}1i)·X2"
        );
    }
}
