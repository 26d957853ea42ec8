//! The acceptance corpus: golden classifications, the classical-Zariski
//! counts, the manual-symmetry cases, and the property suites that stand in
//! for a paper-scale experiment. `run_all` returns one result per criterion;
//! the CLI's `selftest` subcommand and the acceptance test both drive it.

use crate::classify::{rigid_isotopy_classes, Complement, Symmetry};
use crate::config::Limits;
use crate::error::Error;
use crate::fqf::{
    self, brown_blocks, brown_gauss, from_blocks, is_isomorphic, FiniteQuadraticForm, FormBlock,
};
use crate::lattice::{AdeSymbol, GramLattice};
use crate::nikulin::{exists_even_lattice, GenusSymbol, OntoVerdict, UniquenessVerdict};
use crate::rank2::{enumerate_genus, orthogonal_group, reduce, ReducedForm};
use crate::rootdata::{build_s, make_root_lattice, parse_singularities, SingularitySet};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: String,
    pub passed: bool,
    pub detail: String,
}

fn result(id: &str, passed: bool, detail: String) -> CriterionResult {
    CriterionResult {
        id: id.to_string(),
        passed,
        detail,
    }
}

/// Run the whole acceptance corpus. Deterministic given the seed in `limits`.
pub fn run_all(limits: &Limits) -> Vec<CriterionResult> {
    let mut out = Vec::new();
    out.extend(golden_classifications(limits));
    out.extend(classical_zariski(limits));
    out.extend(manual_symmetry_cases(limits));
    out.push(brown_oracle(limits));
    out.push(van_der_blij(limits));
    out.push(extension_coherence(limits));
    out.push(imprimitive_root_growth(limits));
    out.push(rank2_reduction_stability(limits));
    out.push(orthogonal_case_table(limits));
    out.push(genus_predicate_soundness(limits));
    out.push(fast_path_sampling(limits));
    out
}

// ---------------------------------------------------------------------------
// Criterion 1: golden classifications
// ---------------------------------------------------------------------------

struct Golden {
    sigma: &'static str,
    configurations: usize,
    /// per configuration: (index, complements, per-type symmetry)
    shape: &'static [(u64, &'static [(i64, i64, i64)], &'static [&'static str])],
    classes: u64,
    reducible: &'static [bool],
}

const GOLDENS: &[Golden] = &[
    Golden {
        sigma: "D19",
        configurations: 1,
        shape: &[(1, &[(1, 0, 2)], &["symmetric"])],
        classes: 1,
        reducible: &[false],
    },
    Golden {
        sigma: "A19",
        configurations: 1,
        shape: &[(1, &[(1, 0, 10)], &["symmetric", "symmetric"])],
        classes: 2,
        reducible: &[false],
    },
    Golden {
        sigma: "A18+A1",
        configurations: 1,
        shape: &[(1, &[(1, 0, 19), (4, 2, 5)], &["symmetric", "asymmetric"])],
        classes: 3,
        reducible: &[false],
    },
    Golden {
        sigma: "2A9+A1",
        configurations: 2,
        shape: &[
            (2, &[(5, 0, 5)], &["symmetric", "symmetric"]),
            (10, &[(1, 0, 1)], &["symmetric"]),
        ],
        classes: 3,
        reducible: &[true, true],
    },
    Golden {
        sigma: "E6+A7+A3+A2+A1",
        configurations: 1,
        shape: &[(2, &[(6, 0, 12)], &["symmetric", "symmetric"])],
        classes: 2,
        reducible: &[true],
    },
];

fn golden_classifications(limits: &Limits) -> Vec<CriterionResult> {
    let mut out = Vec::new();
    for g in GOLDENS {
        let id = format!("1:classify {}", g.sigma);
        let sigma = match parse_singularities(g.sigma) {
            Ok(s) => s,
            Err(e) => {
                out.push(result(&id, false, format!("parse failed: {e}")));
                continue;
            }
        };
        let report = match rigid_isotopy_classes(&sigma, limits) {
            Ok(r) => r,
            Err(e) => {
                out.push(result(&id, false, format!("pipeline failed: {e}")));
                continue;
            }
        };
        let mut ok = report.configurations.len() == g.configurations;
        let mut notes = Vec::new();
        if !ok {
            notes.push(format!(
                "expected {} configurations, got {}",
                g.configurations,
                report.configurations.len()
            ));
        }
        for (ci, (index, complements, symmetries)) in g.shape.iter().enumerate() {
            let Some(c) = report.configurations.get(ci) else {
                ok = false;
                continue;
            };
            if c.configuration.index != *index {
                ok = false;
                notes.push(format!(
                    "config {ci}: index {} ≠ {index}",
                    c.configuration.index
                ));
            }
            let expected: Vec<ReducedForm> = complements
                .iter()
                .map(|&(a, b, cc)| ReducedForm::new(a, b, cc).unwrap())
                .collect();
            match &c.complement {
                Complement::Definite { representatives } => {
                    if representatives != &expected {
                        ok = false;
                        notes.push(format!("config {ci}: complements {representatives:?}"));
                    }
                }
                Complement::Certificate { .. } => {
                    ok = false;
                    notes.push(format!("config {ci}: expected explicit complements"));
                }
            }
            let got: Vec<&str> = c.types.iter().map(|t| t.symmetry.as_str()).collect();
            if got != *symmetries {
                ok = false;
                notes.push(format!("config {ci}: symmetries {got:?} ≠ {symmetries:?}"));
            }
            if c.reducible != g.reducible[ci] {
                ok = false;
                notes.push(format!("config {ci}: reducible = {}", c.reducible));
            }
        }
        let (lo, hi) = report.class_range();
        if lo != g.classes || hi != g.classes {
            ok = false;
            notes.push(format!("classes [{lo},{hi}] ≠ {}", g.classes));
        }
        let detail = if ok {
            format!("{} classes, structure matches", g.classes)
        } else {
            notes.join("; ")
        };
        out.push(result(&id, ok, detail));
    }
    out
}

// ---------------------------------------------------------------------------
// Criterion 2: classical Zariski counts
// ---------------------------------------------------------------------------

/// All shape sets e·E₆ ⊕ Σ a_i·A_{3i−1}, n = 0, e ≤ 1 (μ ≤ 19 throughout).
const ZARISKI_SETS: &[&str] = &[
    "A17",
    "A14+A2",
    "A11+A5",
    "A11+2A2",
    "2A8",
    "A8+A5+A2",
    "A8+3A2",
    "3A5",
    "2A5+2A2",
    "A5+4A2",
    "6A2",
    "E6+A11",
    "E6+A8+A2",
    "E6+2A5",
    "E6+A5+2A2",
    "E6+4A2",
];

fn classical_zariski(limits: &Limits) -> Vec<CriterionResult> {
    let mut out = Vec::new();
    for name in ZARISKI_SETS {
        let id = format!("2:zariski {name}");
        let report = match rigid_isotopy_classes(&parse_singularities(name).unwrap(), limits) {
            Ok(r) => r,
            Err(e) => {
                out.push(result(&id, false, format!("pipeline failed: {e}")));
                continue;
            }
        };
        // restrict to configurations that can correspond to irreducible
        // sextics: kernels without 2-torsion
        let irreducible: Vec<_> = report
            .configurations
            .iter()
            .filter(|c| !c.reducible)
            .collect();
        let mut ok = irreducible.len() == 2;
        let mut notes = Vec::new();
        if !ok {
            notes.push(format!(
                "{} irreducible-capable configurations",
                irreducible.len()
            ));
        }
        let abundant_count = irreducible
            .iter()
            .filter(|c| c.abundant == Some(true))
            .count();
        if abundant_count != 1 {
            ok = false;
            notes.push(format!("{abundant_count} abundant configurations"));
        }
        // fast path: each certified unique and symmetric, one class
        let mut classes = 0;
        for c in &irreducible {
            let (lo, hi) = c.class_range();
            if lo != 1 || hi != 1 || !c.type_count_certified {
                ok = false;
                notes.push(format!(
                    "configuration with kernel {:?} not a certified single class",
                    c.configuration.kernel_invariants
                ));
            }
            classes += lo;
        }
        if classes != 2 {
            ok = false;
            notes.push(format!(
                "classes over irreducible-capable configurations = {classes}"
            ));
        }
        if *name == "6A2" {
            let (lo, hi) = report.class_range();
            if lo != 2 || hi != 2 {
                ok = false;
                notes.push(format!("6A2 total class count [{lo},{hi}] ≠ 2"));
            }
        }
        let detail = if ok {
            "2 configurations (one abundant), 2 classes".to_string()
        } else {
            notes.join("; ")
        };
        out.push(result(&id, ok, detail));
    }
    out
}

// ---------------------------------------------------------------------------
// Criterion 3: manual-symmetry cases (paper-asserted layer)
// ---------------------------------------------------------------------------

/// Final class counts for the e ≥ 2 non-abundant cases are PAPER-ASSERTED:
/// the automatic path must stop at `undetermined`, and the published answer
/// (symmetric, hence two classes per set) is pinned here as a labeled
/// fixture, not derived.
const PAPER_ASSERTED: &[(&str, u64)] = &[("2E6+A5", 2), ("2E6+2A2", 2), ("3E6", 2)];

fn manual_symmetry_cases(limits: &Limits) -> Vec<CriterionResult> {
    let mut out = Vec::new();
    for (name, final_classes) in PAPER_ASSERTED {
        let id = format!("3:manual {name}");
        let report = match rigid_isotopy_classes(&parse_singularities(name).unwrap(), limits) {
            Ok(r) => r,
            Err(e) => {
                out.push(result(&id, false, format!("pipeline failed: {e}")));
                continue;
            }
        };
        let mut ok = true;
        let mut notes = Vec::new();
        let non_abundant: Vec<_> = report
            .configurations
            .iter()
            .filter(|c| c.abundant == Some(false))
            .collect();
        if non_abundant.len() != 1 {
            ok = false;
            notes.push(format!(
                "{} non-abundant configurations",
                non_abundant.len()
            ));
        } else {
            let c = non_abundant[0];
            match &c.complement {
                Complement::Certificate { unique, onto, .. } => {
                    if *unique != UniquenessVerdict::Unique {
                        ok = false;
                        notes.push("uniqueness-in-genus not established".into());
                    }
                    if *onto != OntoVerdict::Unknown {
                        ok = false;
                        notes.push("automatic path unexpectedly certified surjectivity".into());
                    }
                }
                _ => {
                    ok = false;
                    notes.push("expected a genus certificate".into());
                }
            }
            if c.types.len() != 1 || c.types[0].symmetry != Symmetry::Undetermined {
                ok = false;
                notes.push("automatic symmetry verdict should be undetermined".into());
            }
        }
        // paper-asserted resolution: undetermined → symmetric
        let resolved: u64 = report
            .configurations
            .iter()
            .map(|c| {
                c.types
                    .iter()
                    .map(|t| match t.symmetry {
                        Symmetry::Asymmetric => 2,
                        _ => 1,
                    })
                    .sum::<u64>()
            })
            .sum();
        if resolved != *final_classes {
            ok = false;
            notes.push(format!(
                "paper-asserted resolution gives {resolved} classes"
            ));
        }
        let detail = if ok {
            format!(
                "unique genus, undetermined symmetry from the automatic path; \
                 {final_classes} classes pinned by the PAPER-ASSERTED layer (not derived)"
            )
        } else {
            notes.join("; ")
        };
        out.push(result(&id, ok, detail));
    }
    out
}

// ---------------------------------------------------------------------------
// Criterion 4: property suites
// ---------------------------------------------------------------------------

/// ≥ 500 generated forms over the full block vocabulary: Gauss-sum Brown
/// equals block-formula Brown, exactly, mod 8.
fn brown_oracle(limits: &Limits) -> CriterionResult {
    let mut rng = StdRng::seed_from_u64(limits.seed ^ 0xb10c5);
    let mut count = 0usize;
    let mut failures = Vec::new();
    while count < 500 {
        let blocks = random_blocks(&mut rng);
        let order: u64 = blocks.iter().map(|b| b.order()).product();
        if order > 4096 || blocks.is_empty() {
            continue;
        }
        let f = from_blocks(&blocks).unwrap();
        count += 1;
        let g = brown_gauss(&f);
        let b = brown_blocks(&f);
        if g != b {
            failures.push(format!("{blocks:?}: gauss {g} ≠ blocks {b}"));
            if failures.len() > 3 {
                break;
            }
        }
    }
    result(
        "4:brown-oracle",
        failures.is_empty(),
        if failures.is_empty() {
            format!("{count} forms, gauss = blocks (seed {})", limits.seed)
        } else {
            failures.join("; ")
        },
    )
}

fn random_blocks(rng: &mut StdRng) -> Vec<FormBlock> {
    let n = rng.gen_range(1..=4);
    let mut out = Vec::new();
    for _ in 0..n {
        let pick = rng.gen_range(0..10);
        let block = match pick {
            0..=5 => {
                // cyclic over a prime power
                let p = [2u64, 2, 3, 3, 5, 7, 11, 13][rng.gen_range(0..8)];
                let k = match p {
                    2 => rng.gen_range(1..=5),
                    3 | 5 | 7 => rng.gen_range(1..=2),
                    _ => 1,
                };
                let den = p.pow(k);
                loop {
                    let m = rng.gen_range(1..2 * den) as i64;
                    if let Ok(b) = FormBlock::cyclic(m, den) {
                        break b;
                    }
                }
            }
            6 | 7 => FormBlock::u(rng.gen_range(1..=3)).unwrap(),
            _ => FormBlock::v(rng.gen_range(1..=3)).unwrap(),
        };
        out.push(block);
    }
    out
}

/// Every fixture lattice: Br(discr L) ≡ σ₊ − σ₋ (mod 8), exactly.
fn van_der_blij(limits: &Limits) -> CriterionResult {
    let mut lattices: Vec<(String, GramLattice)> = fixture_lattices();
    // all reduced M(a,b,c) with det ≤ 400
    for m in all_reduced_forms(400) {
        lattices.push((m.to_string(), m.to_lattice()));
    }
    let _ = limits;
    let mut checked = 0;
    for (name, l) in &lattices {
        let inv = l.invariants();
        if inv.det == num_bigint::BigInt::from(0) {
            continue;
        }
        let d = match l.discriminant_form() {
            Ok(d) => d.form,
            Err(_) => FiniteQuadraticForm::trivial(),
        };
        let br = brown_gauss(&d) as i64;
        let sig = inv.sig_plus as i64 - inv.sig_minus as i64;
        if (br - sig).rem_euclid(8) != 0 {
            return result(
                "4:van-der-blij",
                false,
                format!("{name}: Br {br} ≠ σ₊−σ₋ = {sig} (mod 8)"),
            );
        }
        checked += 1;
    }
    result("4:van-der-blij", true, format!("{checked} lattices"))
}

fn fixture_lattices() -> Vec<(String, GramLattice)> {
    let mut out = Vec::new();
    for p in 1..=19u32 {
        out.push((format!("A{p}"), make_root_lattice(AdeSymbol::A(p)).unwrap()));
    }
    for q in 4..=19u32 {
        out.push((format!("D{q}"), make_root_lattice(AdeSymbol::D(q)).unwrap()));
    }
    for n in 6..=8u32 {
        out.push((format!("E{n}"), make_root_lattice(AdeSymbol::E(n)).unwrap()));
    }
    out.push(("U".into(), GramLattice::hyperbolic()));
    out.push(("U(2)".into(), GramLattice::hyperbolic().rescale(2)));
    out.push(("U(3)".into(), GramLattice::hyperbolic().rescale(3)));
    out.push((
        "A2(-2)".into(),
        make_root_lattice(AdeSymbol::A(2)).unwrap().rescale(2),
    ));
    out.push(("2E8+3U".into(), k3_lattice()));
    out
}

/// The K3 lattice 2E₈ ⊕ 3𝐔 (signature (3,19), unimodular).
pub fn k3_lattice() -> GramLattice {
    let e8 = make_root_lattice(AdeSymbol::E(8)).unwrap();
    let u = GramLattice::hyperbolic();
    e8.copies(2).direct_sum(&u.copies(3))
}

/// Lattice-level extension vs discriminant-level quotient, for every
/// isotropic kernel of every (small) fixture lattice.
fn extension_coherence(limits: &Limits) -> CriterionResult {
    let mut lattices: Vec<(String, GramLattice)> = Vec::new();
    for p in 1..=9u32 {
        lattices.push((format!("A{p}"), make_root_lattice(AdeSymbol::A(p)).unwrap()));
    }
    for q in 4..=9u32 {
        lattices.push((format!("D{q}"), make_root_lattice(AdeSymbol::D(q)).unwrap()));
    }
    lattices.push(("E6".into(), make_root_lattice(AdeSymbol::E(6)).unwrap()));
    lattices.push(("E7".into(), make_root_lattice(AdeSymbol::E(7)).unwrap()));
    lattices.push((
        "3A2".into(),
        make_root_lattice(AdeSymbol::A(2)).unwrap().copies(3),
    ));
    lattices.push((
        "E6+A2".into(),
        make_root_lattice(AdeSymbol::E(6))
            .unwrap()
            .direct_sum(&make_root_lattice(AdeSymbol::A(2)).unwrap()),
    ));
    for (a, b, c) in [
        (1, 0, 1),
        (1, 0, 2),
        (1, 0, 10),
        (1, 0, 19),
        (4, 2, 5),
        (5, 0, 5),
        (6, 0, 12),
    ] {
        let m = ReducedForm::new(a, b, c).unwrap();
        lattices.push((m.to_string(), m.to_lattice()));
    }
    let mut checked = 0;
    for (name, l) in &lattices {
        let disc = l.discriminant_form().unwrap();
        let kernels = match fqf::isotropic_subgroups(&disc.form, limits) {
            Ok(k) => k,
            Err(e) => return result("4:extension-coherence", false, format!("{name}: {e}")),
        };
        for k in kernels {
            let quotient = match fqf::quotient_form(&disc.form, &k) {
                Ok(q) => q,
                Err(e) => return result("4:extension-coherence", false, format!("{name}: {e}")),
            };
            let lifts: Vec<Vec<num_rational::BigRational>> = k
                .gens
                .iter()
                .map(|g| combine_lifts(&disc, g, l.rank()))
                .collect();
            let ext = match l.finite_index_extension(&lifts) {
                Ok(e) => e,
                Err(e) => return result("4:extension-coherence", false, format!("{name}: {e}")),
            };
            if ext.index != k.order() {
                return result(
                    "4:extension-coherence",
                    false,
                    format!("{name}: index {} ≠ |K| = {}", ext.index, k.order()),
                );
            }
            // det(ext) = det(L) / index²
            let det_l = l.det();
            let det_e = ext.lattice.det();
            if det_e.clone() * num_bigint::BigInt::from(ext.index * ext.index) != det_l {
                return result(
                    "4:extension-coherence",
                    false,
                    format!("{name}: det bookkeeping failed for |K| = {}", k.order()),
                );
            }
            let ext_disc = if det_e.magnitude() == &num_bigint::BigUint::from(1u8) {
                FiniteQuadraticForm::trivial()
            } else {
                ext.lattice.discriminant_form().unwrap().form
            };
            if !is_isomorphic(&ext_disc, &quotient.form) {
                return result(
                    "4:extension-coherence",
                    false,
                    format!("{name}: discr(ext) ≇ 𝒦⊥/𝒦 for |K| = {}", k.order()),
                );
            }
            checked += 1;
        }
    }
    result(
        "4:extension-coherence",
        true,
        format!("{checked} (lattice, kernel) pairs"),
    )
}

fn combine_lifts(
    disc: &crate::lattice::DiscriminantData,
    element: &[u64],
    rank: usize,
) -> Vec<num_rational::BigRational> {
    use num_traits::Zero;
    let mut acc = vec![num_rational::BigRational::zero(); rank];
    for (c, lift) in element.iter().zip(&disc.lifts) {
        if *c == 0 {
            continue;
        }
        for i in 0..rank {
            acc[i] +=
                num_rational::BigRational::from_integer(num_bigint::BigInt::from(*c)) * &lift[i];
        }
    }
    acc
}

/// Each listed root system's nontrivial finite-index extensions gain roots.
fn imprimitive_root_growth(limits: &Limits) -> CriterionResult {
    let sets = [
        "3A2", "A5+A2", "A8", "E6+A2", "2A4", "A5+A1", "A7", "D8", "E7+A1", "4A1", "A3+2A1",
        "D4+2A1", "D5+2A1", "D6+2A1", "D7+2A1",
    ];
    let mut checked = 0;
    for name in sets {
        let sigma = parse_singularities(name).unwrap();
        let l = sigma.lattice();
        let base_roots = sigma.total_roots();
        let disc = l.discriminant_form().unwrap();
        let kernels = match fqf::isotropic_subgroups(&disc.form, limits) {
            Ok(k) => k,
            Err(e) => return result("4:imprimitive-roots", false, format!("{name}: {e}")),
        };
        let mut nontrivial = 0;
        for k in kernels.iter().filter(|k| k.order() > 1) {
            let lifts: Vec<Vec<num_rational::BigRational>> = k
                .gens
                .iter()
                .map(|g| combine_lifts(&disc, g, l.rank()))
                .collect();
            let ext = l.finite_index_extension(&lifts).unwrap();
            let roots = ext.lattice.roots(limits).unwrap().len() as u64;
            if roots <= base_roots {
                return result(
                    "4:imprimitive-roots",
                    false,
                    format!("{name}: extension by |K| = {} has {roots} roots", k.order()),
                );
            }
            nontrivial += 1;
            checked += 1;
        }
        if nontrivial == 0 {
            return result(
                "4:imprimitive-roots",
                false,
                format!("{name}: no nontrivial isotropic kernel found"),
            );
        }
    }
    result(
        "4:imprimitive-roots",
        true,
        format!("{checked} nontrivial extensions grow"),
    )
}

/// 1000 random unimodular rebases reduce back to the original (a,b,c).
fn rank2_reduction_stability(limits: &Limits) -> CriterionResult {
    let fixtures = [
        ReducedForm::new(1, 0, 1).unwrap(),
        ReducedForm::new(1, 0, 2).unwrap(),
        ReducedForm::new(1, 0, 10).unwrap(),
        ReducedForm::new(1, 0, 19).unwrap(),
        ReducedForm::new(4, 2, 5).unwrap(),
        ReducedForm::new(5, 0, 5).unwrap(),
        ReducedForm::new(6, 0, 12).unwrap(),
        ReducedForm::new(1, 1, 1).unwrap(),
        ReducedForm::new(2, 1, 2).unwrap(),
        ReducedForm::new(1, 1, 2).unwrap(),
    ];
    let mut rng = StdRng::seed_from_u64(limits.seed ^ 0x2ba5e5);
    let total = 1000;
    for i in 0..total {
        let m = fixtures[i % fixtures.len()];
        // random element of GL₂(Z) as a short product of generators
        let mut t = [[1i64, 0], [0, 1]];
        for _ in 0..rng.gen_range(1..=8) {
            let op = rng.gen_range(0..3);
            let k = rng.gen_range(-3i64..=3);
            let g = match op {
                0 => [[0, 1], [1, 0]],
                1 => [[1, k], [0, 1]],
                _ => [[1, 0], [k, 1]],
            };
            t = [
                [
                    t[0][0] * g[0][0] + t[0][1] * g[1][0],
                    t[0][0] * g[0][1] + t[0][1] * g[1][1],
                ],
                [
                    t[1][0] * g[0][0] + t[1][1] * g[1][0],
                    t[1][0] * g[0][1] + t[1][1] * g[1][1],
                ],
            ];
        }
        let g = m.to_lattice().gram_i64();
        // Tᵀ G T
        let mut rebased = [[0i64; 2]; 2];
        for r in 0..2 {
            for c in 0..2 {
                let mut acc = 0;
                for i2 in 0..2 {
                    for j2 in 0..2 {
                        acc += t[i2][r] * g[i2][j2] * t[j2][c];
                    }
                }
                rebased[r][c] = acc;
            }
        }
        match reduce(&[
            vec![rebased[0][0], rebased[0][1]],
            vec![rebased[1][0], rebased[1][1]],
        ]) {
            Ok((back, _)) => {
                if back != m {
                    return result("4:rank2-reduction", false, format!("{m} rebased to {back}"));
                }
            }
            Err(e) => return result("4:rank2-reduction", false, format!("{m}: {e}")),
        }
    }
    result(
        "4:rank2-reduction",
        true,
        format!("{total} rebases stable (seed {})", limits.seed),
    )
}

/// Orthogonal-group orders match the case table {2,4,4,8,4,12}.
fn orthogonal_case_table(limits: &Limits) -> CriterionResult {
    let cases: [(ReducedForm, u64); 6] = [
        (ReducedForm::new(4, 2, 5).unwrap(), 2),
        (ReducedForm::new(2, 1, 2).unwrap(), 4),
        (ReducedForm::new(1, 0, 2).unwrap(), 4),
        (ReducedForm::new(5, 0, 5).unwrap(), 8),
        (ReducedForm::new(1, 1, 2).unwrap(), 4),
        (ReducedForm::new(6, 6, 6).unwrap(), 12),
    ];
    for (m, expected) in cases {
        let case = orthogonal_group(&m);
        if case.order != expected {
            return result(
                "4:orthogonal-table",
                false,
                format!("{m}: order {}", case.order),
            );
        }
        let brute = match m.to_lattice().definite_isometries(limits) {
            Ok(b) => b.len() as u64,
            Err(e) => return result("4:orthogonal-table", false, format!("{m}: {e}")),
        };
        if brute != expected {
            return result(
                "4:orthogonal-table",
                false,
                format!("{m}: brute force {brute} ≠ {expected}"),
            );
        }
    }
    result(
        "4:orthogonal-table",
        true,
        "all six cases match {2,4,4,8,4,12}".into(),
    )
}

/// exists_even_lattice((2,0); f) agrees with brute-force rank-2 genus
/// non-emptiness for every even positive definite target with det ≤ 400.
fn genus_predicate_soundness(limits: &Limits) -> CriterionResult {
    // positive side: every realized discriminant form must pass
    let mut checked = 0;
    for m in all_reduced_forms(400) {
        let f = m.discriminant_form();
        let g = GenusSymbol::new(2, 0, f);
        if !exists_even_lattice(&g).exists {
            return result(
                "4:genus-soundness",
                false,
                format!("{m}: predicate rejects a realized genus"),
            );
        }
        checked += 1;
    }
    // negative/positive side on candidate targets: predicate ⇔ enumeration
    let mut candidates: Vec<FiniteQuadraticForm> = Vec::new();
    for m in all_reduced_forms(120) {
        let f = m.discriminant_form();
        candidates.push(f.negate());
        candidates.push(f);
    }
    // hand-picked convention witnesses (see the det_p cofactor note)
    for expr in [
        "<2/3>+<4/3>+<2/11>",
        "<2/3>+<2/3>+<1/4>+<1/4>",
        "V(2)+<2/3>",
        "U(2)+<2/3>",
        "<2/3>+<4/3>+<1/4>+<1/4>",
        "<1/2>+<1/6>",
        "<-1/2>+<-1/6>",
    ] {
        candidates.push(from_blocks(&fqf::parse_form_expression(expr).unwrap()).unwrap());
    }
    for f in &candidates {
        let order = f.group_order().unwrap();
        if order > 400 {
            continue;
        }
        let predicted = exists_even_lattice(&GenusSymbol::new(2, 0, f.clone())).exists;
        let found = match enumerate_genus(f, limits) {
            Ok(v) => !v.is_empty(),
            Err(e) => return result("4:genus-soundness", false, format!("{e}")),
        };
        if predicted != found {
            return result(
                "4:genus-soundness",
                false,
                format!(
                    "det {order}: predicate {predicted} vs enumeration {found} on {}",
                    fqf::render_blocks(&fqf::normal_form(f))
                ),
            );
        }
        checked += 1;
    }
    result(
        "4:genus-soundness",
        true,
        format!("{checked} targets agree"),
    )
}

fn all_reduced_forms(max_det: i64) -> Vec<ReducedForm> {
    let mut out = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= 4 * a * a && a * a <= max_det {
        let mut c = a;
        while 4 * a * c - a * a <= max_det || c == a {
            for b in 0..=a {
                let det = 4 * a * c - b * b;
                if det > 0 && det <= max_det {
                    out.push(ReducedForm::new(a, b, c).unwrap());
                }
            }
            c += 1;
            if 4 * a * c - a * a > max_det && c > a {
                break;
            }
        }
        a += 1;
        if 3 * a * a > max_det {
            break;
        }
    }
    out.sort();
    out.dedup();
    out
}

// ---------------------------------------------------------------------------
// Criterion 5: fast-path sampling
// ---------------------------------------------------------------------------

/// 50 sampled Σ with ℓ(discr Σ) + rk Σ ≤ 19: every configuration is realized
/// by exactly one certified symmetric class.
fn fast_path_sampling(limits: &Limits) -> CriterionResult {
    let mut rng = StdRng::seed_from_u64(limits.seed ^ 0xfa57);
    let mut sampled = 0;
    let mut attempts = 0;
    while sampled < 50 && attempts < 10_000 {
        attempts += 1;
        let Some(sigma) = random_sigma(&mut rng) else {
            continue;
        };
        let s = build_s(&sigma).expect("valid sigma");
        let disc_sigma_l = {
            // ℓ(discr Σ): drop the γ generator
            let mut orders = s.s_form.orders().to_vec();
            orders.remove(s.gamma);
            let mut l = 0;
            for p in [2u64, 3, 5, 7, 11, 13, 17, 19] {
                l = l.max(orders.iter().filter(|&&d| d % p == 0).count());
            }
            l
        };
        if disc_sigma_l + sigma.mu() as usize > 19 {
            continue;
        }
        if s.s_form
            .group_order()
            .map(|o| o > limits.max_group_order)
            .unwrap_or(true)
        {
            continue;
        }
        let report = match rigid_isotopy_classes(&sigma, limits) {
            Ok(r) => r,
            Err(Error::BoundExceeded { .. }) => continue,
            Err(e) => return result("5:fast-path", false, format!("{sigma}: {e}")),
        };
        for c in &report.configurations {
            let (lo, hi) = c.class_range();
            if lo != 1 || hi != 1 || !c.type_count_certified {
                return result(
                    "5:fast-path",
                    false,
                    format!(
                        "{sigma}: configuration with kernel {:?} gives [{lo},{hi}]",
                        c.configuration.kernel_invariants
                    ),
                );
            }
        }
        sampled += 1;
    }
    result(
        "5:fast-path",
        sampled == 50,
        format!(
            "{sampled} sampled sets, 1 class per configuration (seed {})",
            limits.seed
        ),
    )
}

fn random_sigma(rng: &mut StdRng) -> Option<SingularitySet> {
    let mut components = Vec::new();
    let mut mu = 0u32;
    let count = rng.gen_range(1..=4);
    for _ in 0..count {
        let c = match rng.gen_range(0..6) {
            0 | 1 => AdeSymbol::A(rng.gen_range(1..=16)),
            2 | 3 => AdeSymbol::A(rng.gen_range(1..=6)),
            4 => AdeSymbol::D(rng.gen_range(4..=12)),
            _ => AdeSymbol::E(rng.gen_range(6..=8)),
        };
        if mu + c.rank() > 19 {
            break;
        }
        mu += c.rank();
        components.push(c);
    }
    if components.is_empty() {
        return None;
    }
    SingularitySet::new(components).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_form_sweep_is_complete_for_small_det() {
        let forms = all_reduced_forms(20);
        // dets ≤ 20 by hand: M(1,0,1)=4, M(1,1,1)=3, M(1,0,2)=8, M(1,1,2)=7,
        // M(1,0,3)=12, M(1,1,3)=11, M(1,0,4)=16, M(1,1,4)=15, M(1,0,5)=20,
        // M(1,1,5)=19, M(2,1,2)=15, M(2,2,2)=12, M(2,0,2)=16, M(2,1,1)… (a≤c)
        assert!(forms.contains(&ReducedForm::new(1, 1, 1).unwrap()));
        assert!(forms.contains(&ReducedForm::new(2, 2, 2).unwrap()));
        assert!(forms.contains(&ReducedForm::new(1, 0, 5).unwrap()));
        assert!(forms.iter().all(|m| m.det() <= 20));
        // uniqueness of representatives
        let mut sorted = forms.clone();
        sorted.dedup();
        assert_eq!(sorted.len(), forms.len());
    }
}
