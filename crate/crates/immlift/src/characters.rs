//! Symmetric-group characters via the Murnaghan–Nakayama rule, complex-valued
//! functions on permutation subgroups, and character tables for groups whose
//! irreducible characters are supplied explicitly.

use crate::error::{Error, Result};
use crate::partition::{partitions_of, Partition};
use crate::perm::{Permutation, Subgroup};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::Arc;

/// Irreducible character of `S_n` indexed by `lambda`, evaluated on the
/// conjugacy class of cycle type `mu`, by the Murnaghan–Nakayama rule.
///
/// Values are exact integers.
pub fn mn_character(lambda: &Partition, mu: &Partition) -> Result<i64> {
    if lambda.sum() != mu.sum() {
        return Err(Error::SizeMismatch(format!(
            "character index {lambda} and cycle type {mu} have different weights"
        )));
    }
    // Beta set of lambda: strictly decreasing first-column hook lengths.
    let r = lambda.rows();
    let mut betas: Vec<usize> = lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &part)| part + (r - 1 - i))
        .collect();
    Ok(mn_rec(&mut betas, mu.parts()))
}

/// Recursive strip removal on the beta set. Removing a border strip of
/// length `k` replaces some beta `b >= k` with `b - k`, provided `b - k` is
/// not already present; the strip height is the number of betas strictly
/// between the old and new values.
fn mn_rec(betas: &mut Vec<usize>, mu: &[usize]) -> i64 {
    let Some((&k, rest)) = mu.split_first() else {
        return 1;
    };
    let mut total = 0i64;
    for i in 0..betas.len() {
        let b = betas[i];
        if b < k {
            continue;
        }
        let target = b - k;
        if betas.contains(&target) {
            continue;
        }
        let height = betas.iter().filter(|&&x| x > target && x < b).count();
        let sign = if height % 2 == 0 { 1 } else { -1 };
        betas[i] = target;
        total += sign * mn_rec(betas, rest);
        betas[i] = b;
    }
    total
}

/// A complex-valued function on a permutation subgroup, stored densely over
/// the group's element list.
#[derive(Clone, Debug)]
pub struct GroupFunction {
    domain: Arc<Subgroup>,
    values: Vec<Complex64>,
}

impl GroupFunction {
    pub fn new(domain: Arc<Subgroup>, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != domain.order() {
            return Err(Error::SizeMismatch(format!(
                "{} values supplied for a group of order {}",
                values.len(),
                domain.order()
            )));
        }
        Ok(GroupFunction { domain, values })
    }

    pub fn from_fn(domain: Arc<Subgroup>, f: impl Fn(&Permutation) -> Complex64) -> Self {
        let values = domain.elements().iter().map(f).collect();
        GroupFunction { domain, values }
    }

    /// Constant `1` on every element.
    pub fn trivial(domain: Arc<Subgroup>) -> Self {
        GroupFunction::from_fn(domain, |_| Complex64::new(1.0, 0.0))
    }

    /// `sigma -> sign(sigma)` restricted to the domain.
    pub fn sign_function(domain: Arc<Subgroup>) -> Self {
        GroupFunction::from_fn(domain, |p| Complex64::new(p.sign() as f64, 0.0))
    }

    /// `1` at the identity, `0` elsewhere.
    pub fn identity_indicator(domain: Arc<Subgroup>) -> Self {
        GroupFunction::from_fn(domain, |p| {
            if p.is_identity() {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// The irreducible character of `S_n` indexed by `lambda`, as a function
    /// on the full symmetric group.
    pub fn sn_character(lambda: &Partition) -> Result<Self> {
        let n = lambda.sum();
        let domain = Subgroup::symmetric(n)?;
        let mut by_type: HashMap<Vec<usize>, Complex64> = HashMap::new();
        for mu in partitions_of(n)? {
            let v = mn_character(lambda, &mu)?;
            by_type.insert(mu.parts().to_vec(), Complex64::new(v as f64, 0.0));
        }
        let values = domain
            .elements()
            .iter()
            .map(|p| by_type[p.cycle_type().parts()])
            .collect();
        Ok(GroupFunction { domain, values })
    }

    /// Builds a class function from one value per conjugacy class, classes
    /// ordered as `domain.conjugacy_classes()` returns them.
    pub fn from_class_values(domain: Arc<Subgroup>, class_values: &[Complex64]) -> Result<Self> {
        let classes = domain.conjugacy_classes();
        if classes.len() != class_values.len() {
            return Err(Error::SizeMismatch(format!(
                "{} class values supplied for {} conjugacy classes",
                class_values.len(),
                classes.len()
            )));
        }
        let mut values = vec![Complex64::new(0.0, 0.0); domain.order()];
        for (class, &v) in classes.iter().zip(class_values) {
            for m in &class.members {
                values[domain.index_of(m).expect("class members lie in the group")] = v;
            }
        }
        Ok(GroupFunction { domain, values })
    }

    pub fn domain(&self) -> &Arc<Subgroup> {
        &self.domain
    }

    /// Degree of the underlying permutations.
    pub fn degree(&self) -> usize {
        self.domain.degree()
    }

    /// Value at the element with index `i` in the domain's element list.
    pub fn value(&self, i: usize) -> Complex64 {
        self.values[i]
    }

    pub fn value_of(&self, p: &Permutation) -> Option<Complex64> {
        self.domain.index_of(p).map(|i| self.values[i])
    }

    pub fn at_identity(&self) -> Complex64 {
        self.values[self.domain.identity_index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Permutation, Complex64)> {
        self.domain
            .elements()
            .iter()
            .zip(self.values.iter().copied())
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        GroupFunction {
            domain: Arc::clone(&self.domain),
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    pub fn add(&self, other: &GroupFunction) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &GroupFunction) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &GroupFunction,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<Self> {
        if !same_domain(&self.domain, &other.domain) {
            return Err(Error::DomainMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(GroupFunction {
            domain: Arc::clone(&self.domain),
            values,
        })
    }

    /// Entrywise complex conjugate.
    pub fn conjugated(&self) -> Self {
        GroupFunction {
            domain: Arc::clone(&self.domain),
            values: self.values.iter().map(|v| v.conj()).collect(),
        }
    }

    /// Extends by zero to a larger subgroup of the same `S_n`.
    pub fn zero_extend(&self, target: Arc<Subgroup>) -> Result<Self> {
        if target.degree() != self.domain.degree() {
            return Err(Error::DegreeMismatch(self.domain.degree(), target.degree()));
        }
        for p in self.domain.elements() {
            if !target.contains(p) {
                return Err(Error::invalid(
                    "zero extension",
                    format!("target group does not contain {p}"),
                ));
            }
        }
        let values = target
            .elements()
            .iter()
            .map(|p| self.value_of(p).unwrap_or_else(|| Complex64::new(0.0, 0.0)))
            .collect();
        Ok(GroupFunction {
            domain: target,
            values,
        })
    }

    /// Whether the function is constant on each conjugacy class of its domain.
    pub fn is_class_function(&self, tol: f64) -> bool {
        self.domain.conjugacy_classes().iter().all(|class| {
            let v0 = self
                .value_of(&class.representative)
                .expect("representative lies in the group");
            class.members.iter().all(|m| {
                (self.value_of(m).expect("member lies in the group") - v0).norm() <= tol
            })
        })
    }

    /// Sum of absolute values, a crude magnitude for tolerance scaling.
    pub fn abs_sum(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).sum()
    }
}

pub(crate) fn same_domain(a: &Arc<Subgroup>, b: &Arc<Subgroup>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// The function `sigma -> (chi(e) / |H|) * chi(sigma^{-1})`. When `chi` is an
/// irreducible character this is the central projection idempotent under
/// convolution.
pub fn idempotent_function(chi: &GroupFunction) -> GroupFunction {
    let scale = chi.at_identity() / Complex64::new(chi.domain().order() as f64, 0.0);
    let values = chi
        .domain()
        .elements()
        .iter()
        .map(|p| {
            scale
                * chi
                    .value_of(&p.inverse())
                    .expect("groups are closed under inversion")
        })
        .collect();
    GroupFunction {
        domain: Arc::clone(chi.domain()),
        values,
    }
}

/// Group-algebra convolution `(f * g)(sigma) = sum_tau f(tau) g(tau^{-1} sigma)`.
pub fn convolve(f: &GroupFunction, g: &GroupFunction) -> Result<GroupFunction> {
    if !same_domain(f.domain(), g.domain()) {
        return Err(Error::DomainMismatch);
    }
    let domain = Arc::clone(f.domain());
    let values = domain
        .elements()
        .iter()
        .map(|sigma| {
            domain
                .elements()
                .iter()
                .enumerate()
                .map(|(ti, tau)| {
                    let rest = tau
                        .inverse()
                        .compose(sigma)
                        .expect("elements share one degree");
                    f.value(ti)
                        * g.value_of(&rest)
                            .expect("groups are closed under composition")
                })
                .sum()
        })
        .collect();
    Ok(GroupFunction { domain, values })
}

/// A character table: a permutation group given by generators, conjugacy
/// class representatives in a fixed display order, and one row of class
/// values per irreducible character.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawTable", into = "RawTable")]
pub struct CharacterTable {
    group: Arc<Subgroup>,
    generators: Vec<Permutation>,
    class_reps: Vec<Permutation>,
    labels: Vec<String>,
    rows: Vec<Vec<Complex64>>,
}

#[derive(Serialize, Deserialize)]
struct RawTable {
    n: usize,
    generators: Vec<Vec<usize>>,
    classes: Vec<Vec<usize>>,
    labels: Vec<String>,
    rows: Vec<Vec<[f64; 2]>>,
}

impl From<CharacterTable> for RawTable {
    fn from(t: CharacterTable) -> RawTable {
        RawTable {
            n: t.group.degree(),
            generators: t.generators.iter().map(|p| p.images().to_vec()).collect(),
            classes: t.class_reps.iter().map(|p| p.images().to_vec()).collect(),
            labels: t.labels.clone(),
            rows: t
                .rows
                .iter()
                .map(|row| row.iter().map(|v| [v.re, v.im]).collect())
                .collect(),
        }
    }
}

impl TryFrom<RawTable> for CharacterTable {
    type Error = Error;
    fn try_from(raw: RawTable) -> Result<CharacterTable> {
        let generators: Vec<Permutation> = raw
            .generators
            .into_iter()
            .map(Permutation::from_images)
            .collect::<Result<_>>()?;
        let class_reps: Vec<Permutation> = raw
            .classes
            .into_iter()
            .map(Permutation::from_images)
            .collect::<Result<_>>()?;
        let rows: Vec<Vec<Complex64>> = raw
            .rows
            .into_iter()
            .map(|row| row.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
            .collect();
        CharacterTable::new(raw.n, generators, class_reps, raw.labels, rows)
    }
}

impl CharacterTable {
    /// Validates group/class/row consistency and character orthogonality.
    pub fn new(
        n: usize,
        generators: Vec<Permutation>,
        class_reps: Vec<Permutation>,
        labels: Vec<String>,
        rows: Vec<Vec<Complex64>>,
    ) -> Result<CharacterTable> {
        let group = Subgroup::generate(n, &generators)?;
        let classes = group.conjugacy_classes();
        if class_reps.len() != classes.len() {
            return Err(Error::invalid(
                "character table",
                format!(
                    "{} class representatives for a group with {} conjugacy classes",
                    class_reps.len(),
                    classes.len()
                ),
            ));
        }
        if labels.len() != rows.len() || rows.len() != classes.len() {
            return Err(Error::invalid(
                "character table",
                "row, label, and class counts must all agree".to_string(),
            ));
        }
        // Each listed representative must pick out a distinct class.
        let mut seen = vec![false; classes.len()];
        let mut class_sizes = Vec::with_capacity(class_reps.len());
        for rep in &class_reps {
            let Some(pos) = classes.iter().position(|c| c.contains(rep)) else {
                return Err(Error::invalid(
                    "character table",
                    format!("listed representative {rep} is not a group element"),
                ));
            };
            if seen[pos] {
                return Err(Error::invalid(
                    "character table",
                    format!("two representatives name the class of {rep}"),
                ));
            }
            seen[pos] = true;
            class_sizes.push(classes[pos].len() as f64);
        }
        for row in &rows {
            if row.len() != class_reps.len() {
                return Err(Error::invalid(
                    "character table",
                    "each row needs one value per class".to_string(),
                ));
            }
        }
        // First orthogonality relation, within a small tolerance.
        let order = group.order() as f64;
        for i in 0..rows.len() {
            for j in 0..rows.len() {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..class_reps.len() {
                    acc += class_sizes[k] * rows[i][k] * rows[j][k].conj();
                }
                let expect = if i == j { order } else { 0.0 };
                if (acc - Complex64::new(expect, 0.0)).norm() > 1e-9 * order {
                    return Err(Error::invalid(
                        "character table",
                        format!("rows {i} and {j} violate orthogonality"),
                    ));
                }
            }
        }
        Ok(CharacterTable {
            group,
            generators,
            class_reps,
            labels,
            rows,
        })
    }

    pub fn group(&self) -> &Arc<Subgroup> {
        &self.group
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn class_reps(&self) -> &[Permutation] {
        &self.class_reps
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn num_characters(&self) -> usize {
        self.rows.len()
    }

    /// Row `i` as a function on the whole group.
    pub fn character(&self, i: usize) -> GroupFunction {
        let classes = self.group.conjugacy_classes();
        // Map each canonical class to the table column whose rep it contains.
        let columns: Vec<usize> = classes
            .iter()
            .map(|c| {
                self.class_reps
                    .iter()
                    .position(|rep| c.contains(rep))
                    .expect("validated tables cover every class")
            })
            .collect();
        let class_values: Vec<Complex64> =
            columns.iter().map(|&col| self.rows[i][col]).collect();
        GroupFunction::from_class_values(Arc::clone(&self.group), &class_values)
            .expect("validated tables have one value per class")
    }

    pub fn character_by_label(&self, label: &str) -> Option<GroupFunction> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| self.character(i))
    }
}

/// Primitive cube root of unity `exp(2 pi i / 3)`.
pub fn omega() -> Complex64 {
    Complex64::new(-0.5, 3f64.sqrt() / 2.0)
}

/// The alternating group `A_4`, generated by `(12)(34)` and `(123)`.
pub fn a4_group() -> Arc<Subgroup> {
    let gens = [
        Permutation::from_cycles(4, &[vec![1, 2], vec![3, 4]]).expect("valid cycles"),
        Permutation::from_cycles(4, &[vec![1, 2, 3]]).expect("valid cycles"),
    ];
    Subgroup::generate(4, &gens).expect("degree 4 is in range")
}

/// The character table of `A_4`: classes in the order `e`, `(12)(34)`,
/// `(123)`, `(132)`; characters `triv`, `chi1` (degree 3), and the two
/// conjugate linear characters `chi2`, `chi3` taking values in cube roots of
/// unity.
pub fn builtin_a4_table() -> CharacterTable {
    let one = Complex64::new(1.0, 0.0);
    let w = omega();
    let wbar = w.conj();
    let e = Permutation::identity(4);
    let d = Permutation::from_cycles(4, &[vec![1, 2], vec![3, 4]]).expect("valid cycles");
    let c123 = Permutation::from_cycles(4, &[vec![1, 2, 3]]).expect("valid cycles");
    let c132 = Permutation::from_cycles(4, &[vec![1, 3, 2]]).expect("valid cycles");
    CharacterTable::new(
        4,
        vec![d.clone(), c123.clone()],
        vec![e, d, c123, c132],
        vec![
            "triv".to_string(),
            "chi1".to_string(),
            "chi2".to_string(),
            "chi3".to_string(),
        ],
        vec![
            vec![one, one, one, one],
            vec![3.0 * one, -one, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)],
            vec![one, one, w, wbar],
            vec![one, one, wbar, w],
        ],
    )
    .expect("the built-in table is orthogonal")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::factorial;

    fn part(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn mn_small_values() {
        // chi_(2,1): 2 at identity, 0 on transpositions, -1 on 3-cycles
        assert_eq!(mn_character(&part(&[2, 1]), &part(&[1, 1, 1])).unwrap(), 2);
        assert_eq!(mn_character(&part(&[2, 1]), &part(&[2, 1])).unwrap(), 0);
        assert_eq!(mn_character(&part(&[2, 1]), &part(&[3])).unwrap(), -1);
        // sign character of S3
        assert_eq!(mn_character(&part(&[1, 1, 1]), &part(&[2, 1])).unwrap(), -1);
        assert_eq!(mn_character(&part(&[1, 1, 1]), &part(&[3])).unwrap(), 1);
        // trivial character is 1 everywhere
        for mu in partitions_of(4).unwrap() {
            assert_eq!(mn_character(&part(&[4]), &mu).unwrap(), 1);
        }
        // a weight mismatch is an error
        assert!(mn_character(&part(&[2, 1]), &part(&[2, 2])).is_err());
    }

    #[test]
    fn mn_identity_value_is_hook_degree() {
        for n in 1..=7 {
            let ones = part(&vec![1; n]);
            for lambda in partitions_of(n).unwrap() {
                assert_eq!(
                    mn_character(&lambda, &ones).unwrap(),
                    lambda.hook_degree() as i64,
                    "degree of chi_{lambda}"
                );
            }
        }
    }

    #[test]
    fn mn_sign_twist() {
        // chi_{lambda'}(mu) = sign(mu) * chi_lambda(mu)
        for n in 2..=6 {
            for lambda in partitions_of(n).unwrap() {
                for mu in partitions_of(n).unwrap() {
                    let sign: i64 = mu
                        .parts()
                        .iter()
                        .map(|&k| if k % 2 == 0 { -1 } else { 1 })
                        .product();
                    assert_eq!(
                        mn_character(&lambda.conjugate(), &mu).unwrap(),
                        sign * mn_character(&lambda, &mu).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn sn_orthogonality_exact() {
        // sum_mu |C_mu| chi_lambda(mu) chi_nu(mu) = n! [lambda = nu]
        for n in 1..=5 {
            let lambdas = partitions_of(n).unwrap();
            for a in &lambdas {
                for b in &lambdas {
                    let mut acc: i128 = 0;
                    for mu in partitions_of(n).unwrap() {
                        let size = mu.class_size() as i128;
                        acc += size
                            * mn_character(a, &mu).unwrap() as i128
                            * mn_character(b, &mu).unwrap() as i128;
                    }
                    let expect = if a == b { factorial(n) as i128 } else { 0 };
                    assert_eq!(acc, expect, "lambda={a} nu={b}");
                }
            }
        }
    }

    #[test]
    fn sn_character_matches_rule() {
        let chi = GroupFunction::sn_character(&part(&[2, 1])).unwrap();
        assert_eq!(chi.degree(), 3);
        assert_eq!(chi.at_identity(), Complex64::new(2.0, 0.0));
        for (p, v) in chi.iter() {
            let expect = mn_character(&part(&[2, 1]), &p.cycle_type()).unwrap();
            assert_eq!(v, Complex64::new(expect as f64, 0.0));
        }
        assert!(chi.is_class_function(0.0));
    }

    #[test]
    fn a4_table_values() {
        let table = builtin_a4_table();
        assert_eq!(table.group().order(), 12);
        assert_eq!(table.num_characters(), 4);
        let w = omega();
        let chi2 = table.character_by_label("chi2").unwrap();
        let c123 = Permutation::from_cycles(4, &[vec![1, 2, 3]]).unwrap();
        let c132 = Permutation::from_cycles(4, &[vec![1, 3, 2]]).unwrap();
        assert!((chi2.value_of(&c123).unwrap() - w).norm() < 1e-15);
        assert!((chi2.value_of(&c132).unwrap() - w.conj()).norm() < 1e-15);
        // conjugation swaps the two linear characters
        let chi3 = table.character_by_label("chi3").unwrap();
        for (p, v) in chi2.conjugated().iter() {
            assert!((chi3.value_of(p).unwrap() - v).norm() < 1e-15);
        }
        // the class of (142) is the class of (123)
        let c142 = Permutation::from_cycles(4, &[vec![1, 4, 2]]).unwrap();
        assert!((chi2.value_of(&c142).unwrap() - w).norm() < 1e-15);
        let chi1 = table.character_by_label("chi1").unwrap();
        assert_eq!(chi1.value_of(&c123).unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(chi1.at_identity(), Complex64::new(3.0, 0.0));
    }

    #[test]
    fn a4_hermitian_orthogonality() {
        let table = builtin_a4_table();
        for i in 0..4 {
            for j in 0..4 {
                let fi = table.character(i);
                let fj = table.character(j);
                let acc: Complex64 = fi
                    .iter()
                    .map(|(p, v)| v * fj.value_of(p).unwrap().conj())
                    .sum();
                let expect = if i == j { 12.0 } else { 0.0 };
                assert!(
                    (acc - Complex64::new(expect, 0.0)).norm() < 1e-12,
                    "rows {i},{j}: {acc}"
                );
            }
        }
    }

    #[test]
    fn table_json_roundtrip() {
        let table = builtin_a4_table();
        let s = serde_json::to_string(&table).unwrap();
        let back: CharacterTable = serde_json::from_str(&s).unwrap();
        assert_eq!(back.group().order(), 12);
        for i in 0..4 {
            for (p, v) in table.character(i).iter() {
                assert!((back.character(i).value_of(p).unwrap() - v).norm() < 1e-15);
            }
        }
        // corrupting a value breaks orthogonality and is rejected on load
        let bad = s.replace("[3.0,0.0]", "[2.5,0.0]");
        assert_ne!(bad, s);
        assert!(serde_json::from_str::<CharacterTable>(&bad).is_err());
    }

    #[test]
    fn idempotent_values() {
        // sign of S2: 1/2 at e, -1/2 at the transposition
        let s2 = Subgroup::symmetric(2).unwrap();
        let p = idempotent_function(&GroupFunction::sign_function(Arc::clone(&s2)));
        assert_eq!(p.at_identity(), Complex64::new(0.5, 0.0));
        let t = Permutation::from_cycles(2, &[vec![1, 2]]).unwrap();
        assert_eq!(p.value_of(&t).unwrap(), Complex64::new(-0.5, 0.0));

        // chi_(2,1) of S3: 2/3 at e, -1/3 on 3-cycles, 0 on transpositions
        let chi = GroupFunction::sn_character(&part(&[2, 1])).unwrap();
        let p = idempotent_function(&chi);
        assert!((p.at_identity() - Complex64::new(2.0 / 3.0, 0.0)).norm() < 1e-15);
        let c3 = Permutation::from_cycles(3, &[vec![1, 2, 3]]).unwrap();
        let t12 = Permutation::from_cycles(3, &[vec![1, 2]]).unwrap();
        assert!((p.value_of(&c3).unwrap() - Complex64::new(-1.0 / 3.0, 0.0)).norm() < 1e-15);
        assert!(p.value_of(&t12).unwrap().norm() < 1e-15);
    }

    #[test]
    fn idempotents_are_idempotent() {
        for lambda in partitions_of(3).unwrap() {
            let p = idempotent_function(&GroupFunction::sn_character(&lambda).unwrap());
            let pp = convolve(&p, &p).unwrap();
            for (q, v) in pp.iter() {
                assert!(
                    (v - p.value_of(q).unwrap()).norm() < 1e-12,
                    "p*p != p for {lambda} at {q}"
                );
            }
        }
        let table = builtin_a4_table();
        for i in 0..4 {
            let p = idempotent_function(&table.character(i));
            let pp = convolve(&p, &p).unwrap();
            for (q, v) in pp.iter() {
                assert!((v - p.value_of(q).unwrap()).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn distinct_idempotents_annihilate() {
        let lambdas = partitions_of(3).unwrap();
        for a in &lambdas {
            for b in &lambdas {
                if a == b {
                    continue;
                }
                let pa = idempotent_function(&GroupFunction::sn_character(a).unwrap());
                let pb = idempotent_function(&GroupFunction::sn_character(b).unwrap());
                let prod = convolve(&pa, &pb).unwrap();
                for (_, v) in prod.iter() {
                    assert!(v.norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn delta_e_is_convolution_identity() {
        let s3 = Subgroup::symmetric(3).unwrap();
        let delta = GroupFunction::identity_indicator(Arc::clone(&s3));
        let f = GroupFunction::from_fn(Arc::clone(&s3), |p| {
            Complex64::new(p.images()[0] as f64, p.images()[1] as f64)
        });
        for conv in [convolve(&delta, &f).unwrap(), convolve(&f, &delta).unwrap()] {
            for (p, v) in conv.iter() {
                assert!((v - f.value_of(p).unwrap()).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn zero_extension() {
        let a4 = a4_group();
        let s4 = Subgroup::symmetric(4).unwrap();
        let table = builtin_a4_table();
        let ext = table
            .character_by_label("triv")
            .unwrap()
            .zero_extend(Arc::clone(&s4))
            .unwrap();
        let t12 = Permutation::from_cycles(4, &[vec![1, 2]]).unwrap();
        assert_eq!(ext.value_of(&t12).unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(ext.at_identity(), Complex64::new(1.0, 0.0));
        assert!(ext.is_class_function(1e-15), "indicator of A4 is a class function on S4");

        // chi2 takes different values on the two A4 classes of 3-cycles,
        // which fuse in S4, so its extension is not an S4 class function.
        let ext2 = table
            .character_by_label("chi2")
            .unwrap()
            .zero_extend(Arc::clone(&s4))
            .unwrap();
        assert!(!ext2.is_class_function(1e-3));

        // extending to a group that misses elements of the domain fails
        let triv = Subgroup::trivial(4).unwrap();
        assert!(GroupFunction::trivial(a4).zero_extend(triv).is_err());
    }

    #[test]
    fn arithmetic_and_domains() {
        let s3 = Subgroup::symmetric(3).unwrap();
        let one = GroupFunction::trivial(Arc::clone(&s3));
        let sgn = GroupFunction::sign_function(Arc::clone(&s3));
        let sum = one.add(&sgn).unwrap();
        let t = Permutation::from_cycles(3, &[vec![1, 2]]).unwrap();
        assert_eq!(sum.value_of(&t).unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(sum.at_identity(), Complex64::new(2.0, 0.0));
        assert_eq!(
            sum.sub(&one).unwrap().value_of(&t).unwrap(),
            sgn.value_of(&t).unwrap()
        );
        let a4 = a4_group();
        assert!(one.add(&GroupFunction::trivial(a4)).is_err());
        // identical contents in distinct allocations still count as one domain
        let s3_again = Subgroup::symmetric(3).unwrap();
        assert!(one.add(&GroupFunction::trivial(s3_again)).is_ok());
    }
}
