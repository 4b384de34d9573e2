//! Permutations of `{1..n}`, canonical cycle decompositions, subgroup
//! generation and conjugacy classes.
//!
//! Permutations are stored as 1-based image arrays: entry `t` is `σ(t)`.
//! Composition is right-to-left, `(p ∘ q)(t) = p(q(t))`.

use crate::error::{Error, Result};
use crate::partition::{factorial, Partition};
use crate::MAX_DEGREE;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

/// A permutation of `{1..n}`. Serializes as a JSON array of 1-based images,
/// e.g. `(123)` in `S_4` is `[2,3,1,4]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::from_images(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.images
    }
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "permutation degree must be at least 1");
        Permutation { images: (1..=n).collect() }
    }

    /// Builds a permutation from its 1-based image array.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::invalid("permutation", "empty image array"));
        }
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n {
                return Err(Error::invalid(
                    "permutation",
                    format!("image {v} out of range 1..={n}"),
                ));
            }
            if seen[v] {
                return Err(Error::invalid("permutation", format!("image {v} repeated")));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation of `{1..n}` from disjoint cycles written with
    /// 1-based entries; elements not mentioned are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=n).collect();
        let mut used = vec![false; n + 1];
        if n == 0 {
            return Err(Error::invalid("permutation", "degree must be at least 1"));
        }
        for cycle in cycles {
            for &v in cycle {
                if v == 0 || v > n {
                    return Err(Error::invalid(
                        "cycle",
                        format!("entry {v} out of range 1..={n}"),
                    ));
                }
                if used[v] {
                    return Err(Error::invalid("cycle", format!("entry {v} repeated")));
                }
                used[v] = true;
            }
            for (i, &v) in cycle.iter().enumerate() {
                images[v - 1] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `σ(t)` for 1-based `t`.
    pub fn image_of(&self, t: usize) -> usize {
        self.images[t - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// `(self ∘ other)(t) = self(other(t))` — `other` acts first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        let images = other.images.iter().map(|&v| self.images[v - 1]).collect();
        Ok(Permutation { images })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v - 1] = i + 1;
        }
        Permutation { images }
    }

    /// `g ∘ self ∘ g⁻¹`.
    pub fn conjugate_by(&self, g: &Permutation) -> Result<Permutation> {
        g.compose(self)?.compose(&g.inverse())
    }

    /// `(-1)^(n - #cycles)`, returned as `+1` or `-1`.
    pub fn sign(&self) -> i64 {
        let cycles = self.raw_cycles().len();
        if (self.degree() - cycles) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Cycle lengths, sorted decreasingly, as a partition of `n`.
    pub fn cycle_type(&self) -> Partition {
        let mut lens: Vec<usize> = self.raw_cycles().iter().map(|c| c.len()).collect();
        lens.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(lens).expect("cycle lengths form a partition")
    }

    /// Disjoint cycles, each starting at its smallest element, discovered in
    /// increasing order of that element. Fixed points are included.
    fn raw_cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n + 1];
        let mut cycles = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = start;
            loop {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.image_of(cur);
                if cur == start {
                    break;
                }
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Canonical cycle decomposition: fixed points appear as explicit
    /// 1-cycles; the cycle containing `n` comes last, rotated so `n` is its
    /// final element; the remaining cycles are ordered by their largest
    /// element ascending, each rotated so its largest element is last.
    pub fn canonical_cycles(&self) -> CanonicalCycles {
        let n = self.degree();
        let mut last = None;
        let mut rest = Vec::new();
        for cycle in self.raw_cycles() {
            if cycle.contains(&n) {
                last = Some(rotate_to_end(cycle, n));
            } else {
                let max = *cycle.iter().max().expect("cycles are nonempty");
                rest.push(rotate_to_end(cycle, max));
            }
        }
        rest.sort_by_key(|c| *c.last().expect("cycles are nonempty"));
        rest.push(last.expect("some cycle contains n"));
        CanonicalCycles { n, cycles: rest }
    }
}

fn rotate_to_end(mut cycle: Vec<usize>, target: usize) -> Vec<usize> {
    let pos = cycle
        .iter()
        .position(|&v| v == target)
        .expect("target element present in cycle");
    let len = cycle.len();
    cycle.rotate_left((pos + 1) % len);
    debug_assert_eq!(*cycle.last().unwrap(), target);
    cycle
}

impl fmt::Display for Permutation {
    /// Cycle notation with fixed points omitted; the identity prints as `e`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "e");
        }
        for cycle in self.raw_cycles() {
            if cycle.len() == 1 {
                continue;
            }
            write!(f, "(")?;
            for (i, v) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} {:?}", self.images)
    }
}

/// The canonical cycle decomposition of a permutation of `{1..n}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CanonicalCycles {
    n: usize,
    cycles: Vec<Vec<usize>>,
}

impl CanonicalCycles {
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    /// The final cycle, the one containing `n`.
    pub fn last_cycle(&self) -> &[usize] {
        self.cycles.last().expect("decomposition is nonempty")
    }

    pub fn to_permutation(&self) -> Permutation {
        Permutation::from_cycles(self.n, &self.cycles).expect("canonical cycles are disjoint")
    }
}

/// All `n!` permutations of `{1..n}` in lexicographic order of their image
/// arrays (so the identity is first). Supported for `1 <= n <= 8`.
pub fn enumerate_symmetric(n: usize) -> Result<Vec<Permutation>> {
    if n == 0 || n > MAX_DEGREE {
        return Err(Error::DegreeOutOfRange(n));
    }
    let mut cur: Vec<usize> = (1..=n).collect();
    let mut out = Vec::with_capacity(factorial(n) as usize);
    loop {
        out.push(Permutation { images: cur.clone() });
        if !next_permutation(&mut cur) {
            break;
        }
    }
    Ok(out)
}

/// Advances `a` to the next lexicographic permutation; returns `false` if `a`
/// was the last one.
fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// A subgroup of `S_n`, stored as its full element list sorted
/// lexicographically by image array, with an index for O(1) membership.
#[derive(Clone, Debug)]
pub struct Subgroup {
    n: usize,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.elements == other.elements
    }
}
impl Eq for Subgroup {}

impl Subgroup {
    fn from_elements(n: usize, mut elements: Vec<Permutation>) -> Arc<Subgroup> {
        elements.sort();
        let index = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        Arc::new(Subgroup { n, elements, index })
    }

    /// Closure of the generators (plus the identity) under composition.
    pub fn generate(n: usize, generators: &[Permutation]) -> Result<Arc<Subgroup>> {
        if n == 0 || n > MAX_DEGREE {
            return Err(Error::DegreeOutOfRange(n));
        }
        for g in generators {
            if g.degree() != n {
                return Err(Error::DegreeMismatch(n, g.degree()));
            }
        }
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        let e = Permutation::identity(n);
        seen.insert(e.clone());
        queue.push_back(e);
        while let Some(p) = queue.pop_front() {
            for g in generators {
                let q = g.compose(&p)?;
                if seen.insert(q.clone()) {
                    queue.push_back(q);
                }
            }
        }
        Ok(Subgroup::from_elements(n, seen.into_iter().collect()))
    }

    /// The full symmetric group `S_n`.
    pub fn symmetric(n: usize) -> Result<Arc<Subgroup>> {
        Ok(Subgroup::from_elements(n, enumerate_symmetric(n)?))
    }

    /// The trivial subgroup `{e}` of `S_n`.
    pub fn trivial(n: usize) -> Result<Arc<Subgroup>> {
        Subgroup::generate(n, &[])
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    pub fn identity_index(&self) -> usize {
        self.index_of(&Permutation::identity(self.n))
            .expect("subgroups contain the identity")
    }

    pub fn is_symmetric_group(&self) -> bool {
        self.order() as u64 == factorial(self.n)
    }

    /// Conjugacy classes, ordered by their lexicographically smallest member
    /// (which is also the representative); members are sorted.
    pub fn conjugacy_classes(&self) -> Vec<ConjugacyClass> {
        let mut classes = Vec::new();
        let mut assigned = vec![false; self.order()];
        for i in 0..self.order() {
            if assigned[i] {
                continue;
            }
            let rep = self.elements[i].clone();
            let mut members = BTreeSet::new();
            for g in &self.elements {
                let h = rep
                    .conjugate_by(g)
                    .expect("all elements share one degree");
                members.insert(h);
            }
            for m in &members {
                let idx = self.index_of(m).expect("classes stay inside the group");
                assigned[idx] = true;
            }
            classes.push(ConjugacyClass {
                representative: rep,
                members: members.into_iter().collect(),
            });
        }
        classes
    }

    /// The class containing `p`, if `p` is a member of the group.
    pub fn class_of(&self, p: &Permutation) -> Option<ConjugacyClass> {
        if !self.contains(p) {
            return None;
        }
        self.conjugacy_classes()
            .into_iter()
            .find(|c| c.members.binary_search(p).is_ok())
    }
}

/// A conjugacy class: its lexicographically smallest element as
/// representative, plus all members sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub representative: Permutation,
    pub members: Vec<Permutation>,
}

impl ConjugacyClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.members.binary_search(p).is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(n: usize, cycles: &[&[usize]]) -> Permutation {
        let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(n, &cycles).unwrap()
    }

    #[test]
    fn compose_examples() {
        // (123)∘(123) = (132)
        let c3 = perm(3, &[&[1, 2, 3]]);
        assert_eq!(c3.compose(&c3).unwrap(), perm(3, &[&[1, 3, 2]]));
        // (12)∘(13) = (132): apply (13) first
        let t12 = perm(3, &[&[1, 2]]);
        let t13 = perm(3, &[&[1, 3]]);
        assert_eq!(t12.compose(&t13).unwrap(), perm(3, &[&[1, 3, 2]]));
        // identity is neutral
        let e = Permutation::identity(3);
        assert_eq!(e.compose(&c3).unwrap(), c3);
        assert_eq!(c3.compose(&e).unwrap(), c3);
        // degree mismatch errors
        assert!(c3.compose(&Permutation::identity(4)).is_err());
    }

    #[test]
    fn inverse_and_sign() {
        let c3 = perm(3, &[&[1, 2, 3]]);
        assert_eq!(c3.inverse(), perm(3, &[&[1, 3, 2]]));
        assert!(c3.compose(&c3.inverse()).unwrap().is_identity());
        assert_eq!(Permutation::identity(4).sign(), 1);
        assert_eq!(perm(4, &[&[1, 2]]).sign(), -1);
        assert_eq!(perm(4, &[&[1, 2], &[3, 4]]).sign(), 1);
        assert_eq!(perm(4, &[&[1, 2, 3, 4]]).sign(), -1);
        assert_eq!(c3.sign(), 1);
    }

    #[test]
    fn cycle_types() {
        assert_eq!(Permutation::identity(4).cycle_type().parts(), &[1, 1, 1, 1]);
        assert_eq!(perm(4, &[&[1, 2], &[3, 4]]).cycle_type().parts(), &[2, 2]);
        assert_eq!(perm(5, &[&[1, 4, 3]]).cycle_type().parts(), &[3, 1, 1]);
    }

    #[test]
    fn canonical_cycle_order() {
        // (14)(23) in S4: the cycle with 4 goes last; (23) precedes it.
        let p = perm(4, &[&[1, 4], &[2, 3]]);
        let cc = p.canonical_cycles();
        assert_eq!(cc.cycles(), &[vec![2, 3], vec![1, 4]]);
        // identity in S3 lists its fixed points in order
        let cc = Permutation::identity(3).canonical_cycles();
        assert_eq!(cc.cycles(), &[vec![1], vec![2], vec![3]]);
        // (132) in S4: non-final cycle rotated so its largest element is last
        let p = perm(4, &[&[1, 3, 2]]);
        let cc = p.canonical_cycles();
        assert_eq!(cc.cycles(), &[vec![2, 1, 3], vec![4]]);
        // (143)(2): single non-fixed cycle contains 4, rotated 4-last
        let p = perm(4, &[&[1, 4, 3]]);
        let cc = p.canonical_cycles();
        assert_eq!(cc.cycles(), &[vec![2], vec![3, 1, 4]]);
    }

    #[test]
    fn canonical_cycles_roundtrip() {
        for p in enumerate_symmetric(5).unwrap() {
            assert_eq!(p.canonical_cycles().to_permutation(), p);
        }
    }

    #[test]
    fn enumerate_symmetric_basics() {
        assert_eq!(enumerate_symmetric(1).unwrap().len(), 1);
        let s3 = enumerate_symmetric(3).unwrap();
        assert_eq!(s3.len(), 6);
        assert!(s3[0].is_identity());
        let mut sorted = s3.clone();
        sorted.sort();
        assert_eq!(s3, sorted, "lexicographic order");
        assert_eq!(enumerate_symmetric(4).unwrap().len(), 24);
        assert!(enumerate_symmetric(0).is_err());
        assert!(enumerate_symmetric(9).is_err());
    }

    #[test]
    fn subgroup_generation() {
        // A4 from (12)(34) and (123)
        let a4 = Subgroup::generate(
            4,
            &[perm(4, &[&[1, 2], &[3, 4]]), perm(4, &[&[1, 2, 3]])],
        )
        .unwrap();
        assert_eq!(a4.order(), 12);
        assert!(a4.elements().iter().all(|p| p.sign() == 1));
        assert!(a4.contains(&perm(4, &[&[1, 3], &[2, 4]])));
        assert!(!a4.contains(&perm(4, &[&[1, 2]])));
        // Lagrange: 12 divides 24
        assert_eq!(24 % a4.order(), 0);

        // empty generating set gives the trivial group
        let triv = Subgroup::trivial(3).unwrap();
        assert_eq!(triv.order(), 1);
        assert!(triv.element(0).is_identity());

        // a transposition generates S2's copy inside S2
        let s2 = Subgroup::generate(2, &[perm(2, &[&[1, 2]])]).unwrap();
        assert_eq!(s2.order(), 2);
        assert!(s2.is_symmetric_group());
    }

    #[test]
    fn conjugacy_classes_s3() {
        let s3 = Subgroup::symmetric(3).unwrap();
        let classes = s3.conjugacy_classes();
        let mut sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert!(classes[0].representative.is_identity());
    }

    #[test]
    fn conjugacy_classes_a4() {
        let a4 = Subgroup::generate(
            4,
            &[perm(4, &[&[1, 2], &[3, 4]]), perm(4, &[&[1, 2, 3]])],
        )
        .unwrap();
        let classes = a4.conjugacy_classes();
        let mut sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 4, 4]);
        // the 3-cycle class containing (123) is exactly {(123),(142),(243),(134)}
        let c123 = a4.class_of(&perm(4, &[&[1, 2, 3]])).unwrap();
        let expect: BTreeSet<Permutation> = [
            perm(4, &[&[1, 2, 3]]),
            perm(4, &[&[1, 4, 2]]),
            perm(4, &[&[2, 4, 3]]),
            perm(4, &[&[1, 3, 4]]),
        ]
        .into_iter()
        .collect();
        let got: BTreeSet<Permutation> = c123.members.iter().cloned().collect();
        assert_eq!(got, expect);
        // and (132) lands in the other 3-cycle class
        let c132 = a4.class_of(&perm(4, &[&[1, 3, 2]])).unwrap();
        assert!(!c132.contains(&perm(4, &[&[1, 2, 3]])));
        assert!(c132.contains(&perm(4, &[&[1, 2, 4]])));
    }

    #[test]
    fn serde_roundtrip() {
        let p = perm(4, &[&[1, 4, 3]]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[4,2,1,3]");
        let back: Permutation = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<Permutation>("[1,1,2]").is_err());
        assert!(serde_json::from_str::<Permutation>("[0,1]").is_err());
    }

    #[test]
    fn display_forms() {
        assert_eq!(Permutation::identity(3).to_string(), "e");
        assert_eq!(perm(4, &[&[1, 4, 3]]).to_string(), "(1 4 3)");
        assert_eq!(perm(4, &[&[1, 2], &[3, 4]]).to_string(), "(1 2)(3 4)");
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
            Just(()).prop_perturb(move |_, mut rng| {
                let mut images: Vec<usize> = (1..=n).collect();
                for i in (1..n).rev() {
                    let j = (rng.next_u64() % (i as u64 + 1)) as usize;
                    images.swap(i, j);
                }
                Permutation { images }
            })
        }

        proptest! {
            #[test]
            fn inverse_cancels(p in arb_perm(6)) {
                prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
                prop_assert!(p.inverse().compose(&p).unwrap().is_identity());
            }

            #[test]
            fn sign_is_a_homomorphism(p in arb_perm(6), q in arb_perm(6)) {
                prop_assert_eq!(p.compose(&q).unwrap().sign(), p.sign() * q.sign());
            }

            #[test]
            fn canonical_cycles_reconstruct(p in arb_perm(7)) {
                let cc = p.canonical_cycles();
                prop_assert_eq!(cc.to_permutation(), p.clone());
                // last cycle ends with n, the others with their own maximum
                prop_assert_eq!(*cc.last_cycle().last().unwrap(), 7usize);
                for c in &cc.cycles()[..cc.cycles().len() - 1] {
                    prop_assert_eq!(*c.last().unwrap(), *c.iter().max().unwrap());
                }
            }

            #[test]
            fn cycle_type_is_conjugation_invariant(p in arb_perm(6), g in arb_perm(6)) {
                prop_assert_eq!(p.conjugate_by(&g).unwrap().cycle_type(), p.cycle_type());
            }
        }
    }
}
