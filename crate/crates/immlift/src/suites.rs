//! Built-in verification suites: named bundles of inequality and identity
//! specs covering nonnegativity of generalized matrix functions, their
//! matrix-valued lifts, the degree-4 alternating-group closed forms, the
//! anticommutator sandwich, the vanishing of low-rank lifted immanants, and
//! the classical scalar inequality families (Hadamard, Schur, Marcus,
//! Heyfron, Watkins, permanent dominance).
//!
//! Closed-form polynomials are written out term by term rather than derived
//! through [`lift_function`], so the equivalence specs genuinely cross-check
//! the symbolic lift against independently transcribed expressions.

use crate::characters::{builtin_a4_table, idempotent_function, omega, GroupFunction};
use crate::error::{Error, Result};
use crate::partition::{partitions_of, Partition};
use crate::perm::Subgroup;
use crate::tracepoly::{lift_function, TracePolynomial, TraceTerm};
use crate::verifier::{Ensemble, InequalitySpec, Payload, SamplerConfig, ScalarTerm, SpecKind};
use num_complex::Complex64;
use std::sync::Arc;

/// Names accepted by [`builtin_suite`], in presentation order.
pub fn suite_names() -> &'static [&'static str] {
    &[
        "gmf-nonneg",
        "a4-examples",
        "watkins-a4",
        "anticommutator",
        "lew-identity",
        "appendix-scalar",
        "appendix-lifted",
        "perm-dominance",
    ]
}

/// Builds the named suite.
pub fn builtin_suite(name: &str) -> Result<Vec<InequalitySpec>> {
    match name {
        "gmf-nonneg" => gmf_nonneg(),
        "a4-examples" => a4_examples(),
        "watkins-a4" => watkins_a4(),
        "anticommutator" => anticommutator(),
        "lew-identity" => lew_identity(),
        "appendix-scalar" => appendix_scalar(),
        "appendix-lifted" => appendix_lifted(),
        "perm-dominance" => perm_dominance(),
        _ => Err(Error::UnknownSuite(name.to_string())),
    }
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn psd(trace_one: bool) -> SamplerConfig {
    SamplerConfig {
        ensemble: Ensemble::Psd { trace_one },
        fixed_dim: None,
    }
}

fn scalar_spec(
    name: String,
    terms: Vec<(f64, GroupFunction)>,
    conjecture: bool,
) -> InequalitySpec {
    let kind = if terms.len() == 1 {
        SpecKind::ScalarNonneg
    } else {
        SpecKind::ScalarDifference
    };
    InequalitySpec {
        name,
        kind,
        payload: Payload::Scalar(
            terms
                .into_iter()
                .map(|(weight, function)| ScalarTerm { weight, function })
                .collect(),
        ),
        sampler: psd(true),
        conjecture,
    }
}

fn loewner_spec(
    name: String,
    kind: SpecKind,
    poly: TracePolynomial,
    trace_one: bool,
    conjecture: bool,
) -> InequalitySpec {
    InequalitySpec {
        name,
        kind,
        payload: Payload::Loewner(vec![(1.0, poly)]),
        sampler: psd(trace_one),
        conjecture,
    }
}

fn identity_spec(
    name: String,
    terms: Vec<(f64, TracePolynomial)>,
    sampler: SamplerConfig,
) -> InequalitySpec {
    InequalitySpec {
        name,
        kind: SpecKind::MatrixIdentity,
        payload: Payload::Identity(terms),
        sampler,
        conjecture: false,
    }
}

/// Nonnegativity of every irreducible immanant at degrees 2–5, and of the
/// four alternating-group characters at degree 4, at both the scalar and the
/// lifted level.
fn gmf_nonneg() -> Result<Vec<InequalitySpec>> {
    let mut specs = Vec::new();
    for n in 2..=5 {
        for lambda in partitions_of(n)? {
            let chi = GroupFunction::sn_character(&lambda)?;
            specs.push(scalar_spec(
                format!("gmf-nonneg/scalar/n{n}/{lambda}"),
                vec![(1.0, chi.clone())],
                false,
            ));
            specs.push(loewner_spec(
                format!("gmf-nonneg/lift/n{n}/{lambda}"),
                SpecKind::LoewnerNonneg,
                lift_function(&chi)?,
                false,
                false,
            ));
        }
    }
    let table = builtin_a4_table();
    let s4 = Subgroup::symmetric(4)?;
    for label in table.labels().to_vec() {
        let chi = table
            .character_by_label(&label)
            .expect("label comes from the table");
        specs.push(scalar_spec(
            format!("gmf-nonneg/scalar/a4/{label}"),
            vec![(1.0, chi.clone())],
            false,
        ));
        let extended = chi.zero_extend(Arc::clone(&s4))?;
        specs.push(loewner_spec(
            format!("gmf-nonneg/lift/a4/{label}"),
            SpecKind::LoewnerNonneg,
            lift_function(&extended)?,
            false,
            false,
        ));
    }
    Ok(specs)
}

/// The unit-trace closed form `a·1 + l·L + m·M + s·M*` in variables
/// X1, X2, X3, with
/// `L  = tr(X1X2)X3 + tr(X1X3)X2 + tr(X2X3)X1`,
/// `M  = tr(X3X2X1)·1 + X1X2 + X2X3 + X3X1`, and
/// `M* = tr(X1X2X3)·1 + X2X1 + X3X2 + X1X3`.
fn a4_closed_form(
    a: Complex64,
    l: Complex64,
    m: Complex64,
    s: Complex64,
) -> Result<TracePolynomial> {
    let mut terms = vec![TraceTerm::new(a, vec![], vec![])];
    terms.extend([
        TraceTerm::new(l, vec![vec![1, 2]], vec![3]),
        TraceTerm::new(l, vec![vec![1, 3]], vec![2]),
        TraceTerm::new(l, vec![vec![2, 3]], vec![1]),
    ]);
    terms.extend(m_terms(m));
    terms.extend(m_star_terms(s));
    TracePolynomial::from_terms(4, terms)
}

fn m_terms(m: Complex64) -> Vec<TraceTerm> {
    vec![
        TraceTerm::new(m, vec![vec![3, 2, 1]], vec![]),
        TraceTerm::new(m, vec![], vec![1, 2]),
        TraceTerm::new(m, vec![], vec![2, 3]),
        TraceTerm::new(m, vec![], vec![3, 1]),
    ]
}

fn m_star_terms(s: Complex64) -> Vec<TraceTerm> {
    vec![
        TraceTerm::new(s, vec![vec![1, 2, 3]], vec![]),
        TraceTerm::new(s, vec![], vec![2, 1]),
        TraceTerm::new(s, vec![], vec![3, 2]),
        TraceTerm::new(s, vec![], vec![1, 3]),
    ]
}

/// Degree-4 alternating-group examples: the three displayed closed forms are
/// PSD on unit-trace PSD triples, and the lift of the zero-extended complex
/// character matches a closed form after unit-trace substitution. The two
/// complex-conjugate characters swap closed forms relative to the usual
/// display: the form shown with coefficient pattern (ω, ω̄) is the lift of
/// the character taking ω̄ on the class of (1 2 3), and vice versa; the
/// equivalence spec uses the pairing that holds identically.
fn a4_examples() -> Result<Vec<InequalitySpec>> {
    let w = omega();
    let wb = w.conj();
    let one = c(1.0);
    let zero = c(0.0);
    let chi1_form = a4_closed_form(c(3.0), c(-1.0), zero, zero)?;
    let chi2_form = a4_closed_form(one, one, w, wb)?;
    let chi3_form = a4_closed_form(one, one, wb, w)?;

    let table = builtin_a4_table();
    let s4 = Subgroup::symmetric(4)?;
    let chi2 = table
        .character_by_label("chi2")
        .expect("built-in label")
        .zero_extend(Arc::clone(&s4))?;
    let lifted_chi2 = lift_function(&chi2)?;

    Ok(vec![
        loewner_spec(
            "a4-examples/chi1".to_string(),
            SpecKind::LoewnerNonneg,
            chi1_form,
            true,
            false,
        ),
        loewner_spec(
            "a4-examples/chi2".to_string(),
            SpecKind::LoewnerNonneg,
            chi2_form,
            true,
            false,
        ),
        loewner_spec(
            "a4-examples/chi3".to_string(),
            SpecKind::LoewnerNonneg,
            chi3_form.clone(),
            true,
            false,
        ),
        identity_spec(
            "a4-examples/lift-vs-closed".to_string(),
            vec![(1.0, lifted_chi2), (-1.0, chi3_form)],
            psd(true),
        ),
    ])
}

/// The degree-4 Watkins-type expression
/// `(ω−1)M + (ω̄−1)M* + [tr(X1X2)+tr(X1X3)+tr(X2X3)]·1 + X1 + X2 + X3 + Σ₆`
/// (Σ₆ = all six products of X1, X2, X3), in unit-trace form.
fn watkins_written(m: Complex64, s: Complex64) -> Result<TracePolynomial> {
    let one = c(1.0);
    let mut terms = m_terms(m);
    terms.extend(m_star_terms(s));
    terms.extend([
        TraceTerm::new(one, vec![vec![1, 2]], vec![]),
        TraceTerm::new(one, vec![vec![1, 3]], vec![]),
        TraceTerm::new(one, vec![vec![2, 3]], vec![]),
        TraceTerm::new(one, vec![], vec![1]),
        TraceTerm::new(one, vec![], vec![2]),
        TraceTerm::new(one, vec![], vec![3]),
    ]);
    for open in [
        vec![1, 2, 3],
        vec![1, 3, 2],
        vec![2, 1, 3],
        vec![2, 3, 1],
        vec![3, 1, 2],
        vec![3, 2, 1],
    ] {
        terms.push(TraceTerm::new(one, vec![], open));
    }
    TracePolynomial::from_terms(4, terms)
}

/// Watkins's bound specialized to the degree-4 alternating group: the
/// displayed expression and its conjugate are PSD on unit-trace triples, each
/// matches the lift of `χ − χ(e)·sign` for one of the two complex characters
/// (the displayed coefficient pattern pairs with the character taking ω̄ on
/// the class of (1 2 3)), and the scalar bound `d_χ ≥ χ(e)·det` holds for
/// all four characters.
fn watkins_a4() -> Result<Vec<InequalitySpec>> {
    let w = omega();
    let wb = w.conj();
    let as_written = watkins_written(w - 1.0, wb - 1.0)?;
    let conjugate = watkins_written(wb - 1.0, w - 1.0)?;

    let table = builtin_a4_table();
    let s4 = Subgroup::symmetric(4)?;
    let sign4 = GroupFunction::sign_function(Arc::clone(&s4));
    let lift_diff = |label: &str| -> Result<TracePolynomial> {
        let chi = table
            .character_by_label(label)
            .expect("built-in label")
            .zero_extend(Arc::clone(&s4))?;
        lift_function(&chi.sub(&sign4)?)
    };

    let mut specs = vec![
        loewner_spec(
            "watkins-a4/as-written".to_string(),
            SpecKind::LoewnerDifference,
            as_written.clone(),
            true,
            false,
        ),
        loewner_spec(
            "watkins-a4/conjugate".to_string(),
            SpecKind::LoewnerDifference,
            conjugate.clone(),
            true,
            false,
        ),
        identity_spec(
            "watkins-a4/as-written-vs-lift".to_string(),
            vec![(1.0, as_written), (-1.0, lift_diff("chi3")?)],
            psd(true),
        ),
        identity_spec(
            "watkins-a4/conjugate-vs-lift".to_string(),
            vec![(1.0, conjugate), (-1.0, lift_diff("chi2")?)],
            psd(true),
        ),
    ];
    for label in table.labels().to_vec() {
        let chi = table
            .character_by_label(&label)
            .expect("label comes from the table");
        let degree = chi.at_identity().re;
        specs.push(scalar_spec(
            format!("watkins-a4/scalar/{label}"),
            vec![(1.0, chi), (-degree, sign4.clone())],
            false,
        ));
    }
    Ok(specs)
}

/// The anticommutator sandwich for unit-trace PSD X1, X2:
/// `X1 + X2 + [tr(X1X2) − 1]·1 ⪯ X1X2 + X2X1 ⪯ (2/3)[X1 + X2 + tr(X1X2)·1]`.
/// The lower margin is the unit-trace form of the lifted degree-3
/// determinant; the upper margin is the unit-trace form of the lift of
/// `p − (2/3)·sign` with `p` the idempotent coefficient function of (2,1).
fn anticommutator() -> Result<Vec<InequalitySpec>> {
    let one = c(1.0);
    let lower = TracePolynomial::from_terms(
        3,
        vec![
            TraceTerm::new(one, vec![], vec![1, 2]),
            TraceTerm::new(one, vec![], vec![2, 1]),
            TraceTerm::new(-one, vec![], vec![1]),
            TraceTerm::new(-one, vec![], vec![2]),
            TraceTerm::new(-one, vec![vec![1, 2]], vec![]),
            TraceTerm::new(one, vec![], vec![]),
        ],
    )?;
    let two_thirds = c(2.0 / 3.0);
    let upper = TracePolynomial::from_terms(
        3,
        vec![
            TraceTerm::new(two_thirds, vec![], vec![1]),
            TraceTerm::new(two_thirds, vec![], vec![2]),
            TraceTerm::new(two_thirds, vec![vec![1, 2]], vec![]),
            TraceTerm::new(-one, vec![], vec![1, 2]),
            TraceTerm::new(-one, vec![], vec![2, 1]),
        ],
    )?;

    let s3 = Subgroup::symmetric(3)?;
    let sign3 = GroupFunction::sign_function(Arc::clone(&s3));
    let hook = Partition::new(vec![2, 1])?;
    let p21 = idempotent_function(&GroupFunction::sn_character(&hook)?);
    let upper_function = p21.sub(&sign3.scaled(two_thirds))?;

    Ok(vec![
        loewner_spec(
            "anticommutator/lower".to_string(),
            SpecKind::LoewnerDifference,
            lower.clone(),
            true,
            false,
        ),
        loewner_spec(
            "anticommutator/upper".to_string(),
            SpecKind::LoewnerDifference,
            upper.clone(),
            true,
            false,
        ),
        identity_spec(
            "anticommutator/lower-vs-lift".to_string(),
            vec![(1.0, lower), (-1.0, lift_function(&sign3)?)],
            psd(true),
        ),
        identity_spec(
            "anticommutator/upper-vs-lift".to_string(),
            vec![(1.0, upper), (-1.0, lift_function(&upper_function)?)],
            psd(true),
        ),
    ])
}

/// Vanishing of lifted single-column immanants when the column is longer
/// than the matrix dimension: the lifted degree-3 determinant is identically
/// zero on 2×2 matrices (the polarized Cayley–Hamilton identity), and the
/// lifted (2,1) immanant is identically zero on 1×1 matrices.
fn lew_identity() -> Result<Vec<InequalitySpec>> {
    let s3 = Subgroup::symmetric(3)?;
    let sign3 = GroupFunction::sign_function(s3);
    let hook = Partition::new(vec![2, 1])?;
    let chi21 = GroupFunction::sn_character(&hook)?;
    let ginibre_at = |dim: usize| SamplerConfig {
        ensemble: Ensemble::Ginibre,
        fixed_dim: Some(dim),
    };
    Ok(vec![
        InequalitySpec {
            name: "lew-identity/rows3-dim2".to_string(),
            kind: SpecKind::MatrixIdentity,
            payload: Payload::Identity(vec![(1.0, lift_function(&sign3)?)]),
            sampler: ginibre_at(2),
            conjecture: false,
        },
        InequalitySpec {
            name: "lew-identity/rows2-dim1".to_string(),
            kind: SpecKind::MatrixIdentity,
            payload: Payload::Identity(vec![(1.0, lift_function(&chi21)?)]),
            sampler: ginibre_at(1),
            conjecture: false,
        },
    ])
}

/// Normalized immanant `d_χ/χ(e)` as a weighted scalar term.
fn normalized_character(lambda: &Partition) -> Result<(f64, GroupFunction)> {
    let chi = GroupFunction::sn_character(lambda)?;
    let degree = chi.at_identity().re;
    Ok((1.0 / degree, chi))
}

/// Classical scalar inequalities on PSD matrices: Hadamard
/// (`Π a_ii ≥ det`), Marcus (`per ≥ Π a_ii`), Schur
/// (`d_χ/χ(e) ≥ det` for every irreducible character), the Heyfron chain of
/// single-hook normalized immanants, and Watkins's bound
/// (`d_f ≥ f(e)·det` for characters and idempotent coefficient functions).
fn appendix_scalar() -> Result<Vec<InequalitySpec>> {
    let mut specs = Vec::new();
    for n in 2..=5 {
        let sn = Subgroup::symmetric(n)?;
        let diag = GroupFunction::identity_indicator(Arc::clone(&sn));
        let det = GroupFunction::sign_function(Arc::clone(&sn));
        let per = GroupFunction::trivial(Arc::clone(&sn));
        specs.push(scalar_spec(
            format!("appendix-scalar/hadamard/n{n}"),
            vec![(1.0, diag.clone()), (-1.0, det.clone())],
            false,
        ));
        specs.push(scalar_spec(
            format!("appendix-scalar/marcus/n{n}"),
            vec![(1.0, per), (-1.0, diag)],
            false,
        ));
        for lambda in partitions_of(n)? {
            let (weight, chi) = normalized_character(&lambda)?;
            specs.push(scalar_spec(
                format!("appendix-scalar/schur/n{n}/{lambda}"),
                vec![(weight, chi), (-1.0, det.clone())],
                false,
            ));
        }
    }
    for n in [4usize, 5] {
        for k in 0..n - 1 {
            let upper = Partition::single_hook(n, k)?;
            let lower = Partition::single_hook(n, k + 1)?;
            let (wu, cu) = normalized_character(&upper)?;
            let (wl, cl) = normalized_character(&lower)?;
            specs.push(scalar_spec(
                format!("appendix-scalar/heyfron/n{n}/k{k}"),
                vec![(wu, cu), (-wl, cl)],
                false,
            ));
        }
    }
    for n in [3usize, 4] {
        let sn = Subgroup::symmetric(n)?;
        let det = GroupFunction::sign_function(sn);
        for lambda in partitions_of(n)? {
            let chi = GroupFunction::sn_character(&lambda)?;
            let chi_e = chi.at_identity().re;
            specs.push(scalar_spec(
                format!("appendix-scalar/watkins/n{n}/{lambda}"),
                vec![(1.0, chi.clone()), (-chi_e, det.clone())],
                false,
            ));
            let p = idempotent_function(&chi);
            let p_e = p.at_identity().re;
            specs.push(scalar_spec(
                format!("appendix-scalar/watkins-idem/n{n}/{lambda}"),
                vec![(1.0, p), (-p_e, det.clone())],
                false,
            ));
        }
    }
    Ok(specs)
}

/// Lifts of the scalar families expressible as a single weight function:
/// Hadamard (`δ_e − sign`), Marcus (`1 − δ_e`), Schur (`χ/χ(e) − sign`),
/// the Heyfron differences, and permanent dominance (`1 − χ/χ(e)`, kept as
/// a conjecture search).
fn appendix_lifted() -> Result<Vec<InequalitySpec>> {
    let mut specs = Vec::new();
    for n in 2..=5 {
        let sn = Subgroup::symmetric(n)?;
        let diag = GroupFunction::identity_indicator(Arc::clone(&sn));
        let det = GroupFunction::sign_function(Arc::clone(&sn));
        let per = GroupFunction::trivial(Arc::clone(&sn));
        specs.push(loewner_spec(
            format!("appendix-lifted/hadamard/n{n}"),
            SpecKind::LoewnerDifference,
            lift_function(&diag.sub(&det)?)?,
            false,
            false,
        ));
        specs.push(loewner_spec(
            format!("appendix-lifted/marcus/n{n}"),
            SpecKind::LoewnerDifference,
            lift_function(&per.sub(&diag)?)?,
            false,
            false,
        ));
        for lambda in partitions_of(n)? {
            let (weight, chi) = normalized_character(&lambda)?;
            let g = chi.scaled(c(weight)).sub(&det)?;
            specs.push(loewner_spec(
                format!("appendix-lifted/schur/n{n}/{lambda}"),
                SpecKind::LoewnerDifference,
                lift_function(&g)?,
                false,
                false,
            ));
        }
    }
    for n in [4usize, 5] {
        for k in 0..n - 1 {
            let (wu, cu) = normalized_character(&Partition::single_hook(n, k)?)?;
            let (wl, cl) = normalized_character(&Partition::single_hook(n, k + 1)?)?;
            let g = cu.scaled(c(wu)).sub(&cl.scaled(c(wl)))?;
            specs.push(loewner_spec(
                format!("appendix-lifted/heyfron/n{n}/k{k}"),
                SpecKind::LoewnerDifference,
                lift_function(&g)?,
                false,
                false,
            ));
        }
    }
    for n in [3usize, 4] {
        specs.extend(perm_dominance_lifted_at(n, "appendix-lifted/perm-dominance")?);
    }
    Ok(specs)
}

/// Permanent dominance conjecture search (`per ≥ d_χ/χ(e)`), at the scalar
/// or the lifted level, for all partitions of `n` except the trivial one.
pub fn perm_dominance_specs(n: usize, lifted: bool) -> Result<Vec<InequalitySpec>> {
    if lifted {
        perm_dominance_lifted_at(n, "perm-dominance/lift")
    } else {
        let sn = Subgroup::symmetric(n)?;
        let per = GroupFunction::trivial(sn);
        let mut specs = Vec::new();
        for lambda in nontrivial_partitions(n)? {
            let (weight, chi) = normalized_character(&lambda)?;
            specs.push(scalar_spec(
                format!("perm-dominance/scalar/n{n}/{lambda}"),
                vec![(1.0, per.clone()), (-weight, chi)],
                true,
            ));
        }
        Ok(specs)
    }
}

fn nontrivial_partitions(n: usize) -> Result<Vec<Partition>> {
    Ok(partitions_of(n)?
        .into_iter()
        .filter(|lambda| lambda.rows() > 1)
        .collect())
}

fn perm_dominance_lifted_at(n: usize, prefix: &str) -> Result<Vec<InequalitySpec>> {
    let sn = Subgroup::symmetric(n)?;
    let per = GroupFunction::trivial(sn);
    let mut specs = Vec::new();
    for lambda in nontrivial_partitions(n)? {
        let (weight, chi) = normalized_character(&lambda)?;
        let g = per.sub(&chi.scaled(c(weight)))?;
        specs.push(loewner_spec(
            format!("{prefix}/n{n}/{lambda}"),
            SpecKind::LoewnerDifference,
            lift_function(&g)?,
            false,
            true,
        ));
    }
    Ok(specs)
}

fn perm_dominance() -> Result<Vec<InequalitySpec>> {
    let mut specs = Vec::new();
    for n in 3..=5 {
        specs.extend(perm_dominance_specs(n, false)?);
    }
    for n in 3..=5 {
        specs.extend(perm_dominance_specs(n, true)?);
    }
    Ok(specs)
}
