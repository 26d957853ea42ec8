//! The classification pipeline for plane sextics with simple singularities:
//! enumerate configurations (isotropic kernels up to admissible isometry,
//! with the root conditions), find complement representatives (explicit
//! reduced rank-2 forms at μ = 19, genus certificates below), enumerate
//! gluing double cosets, and decide symmetry. Rigid isotopy classes are
//! counted as one per symmetric type and two per asymmetric type.

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::fqf::{
    self, automorphisms, normal_form, render_blocks, Element, FiniteQuadraticForm,
    FormAutomorphism, QuotientData, Subgroup,
};
use crate::lattice::{AdeSymbol, GramLattice};
use crate::nikulin::{
    aut_onto, exists_even_lattice, guaranteed_square_two, unique_in_genus, ExistenceReport,
    GenusSymbol, OntoVerdict, UniquenessVerdict,
};
use crate::rank2::{enumerate_genus, orthogonal_elements, ReducedForm};
use crate::rootdata::{admissible_automorphisms, build_s, SData, SingularitySet};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::{BTreeMap, BTreeSet};

/// A configuration: the finite-index extension S̃ ⊃ S = Σ ⊕ ⟨h⟩ determined
/// by an isotropic kernel 𝒦 ⊂ 𝒮, satisfying both root conditions.
#[derive(Debug, Clone)]
pub struct Configuration {
    pub sigma: SingularitySet,
    pub kernel: Subgroup,
    pub kernel_invariants: Vec<u64>,
    /// [S̃ : S] = |𝒦|
    pub index: u64,
    /// 𝒮̃ = 𝒦⊥/𝒦 with projection data.
    pub s_tilde: QuotientData,
    /// Gram matrix of S̃ itself.
    pub s_tilde_lattice: GramLattice,
    /// Root count of Σ̃ = h⊥ in S̃ (equals the root count of Σ).
    pub sigma_tilde_roots: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Symmetry {
    Symmetric,
    Asymmetric,
    Undetermined,
}

impl Symmetry {
    pub fn as_str(&self) -> &'static str {
        match self {
            Symmetry::Symmetric => "symmetric",
            Symmetry::Asymmetric => "asymmetric",
            Symmetry::Undetermined => "undetermined",
        }
    }

    /// Rigid isotopy classes contributed by a type with this verdict.
    fn class_range(&self) -> (u64, u64) {
        match self {
            Symmetry::Symmetric => (1, 1),
            Symmetry::Asymmetric => (2, 2),
            Symmetry::Undetermined => (1, 2),
        }
    }
}

/// An abstract homological type over one configuration.
#[derive(Debug, Clone)]
pub struct HomologicalType {
    /// `Some` when the complement is an explicit rank-2 lattice (μ = 19).
    pub complement: Option<ReducedForm>,
    pub coset_id: usize,
    pub symmetry: Symmetry,
}

/// Complement data for a configuration.
#[derive(Debug, Clone)]
pub enum Complement {
    /// μ = 19: explicit positive definite rank-2 representatives.
    Definite { representatives: Vec<ReducedForm> },
    /// μ < 19: genus certificate from the Nikulin predicates.
    Certificate {
        unique: UniquenessVerdict,
        onto: OntoVerdict,
        square_two_guaranteed: bool,
    },
}

#[derive(Debug, Clone)]
pub struct ConfigurationReport {
    pub configuration: Configuration,
    pub genus: GenusSymbol,
    pub genus_checks: ExistenceReport,
    pub complement: Complement,
    pub types: Vec<HomologicalType>,
    /// True when the number of types is proven (always at μ = 19; needs the
    /// surjectivity certificate below).
    pub type_count_certified: bool,
    pub reducible: bool,
    pub abundant: Option<bool>,
}

impl ConfigurationReport {
    pub fn class_range(&self) -> (u64, u64) {
        let mut low = 0;
        let mut high = 0;
        for t in &self.types {
            let (l, h) = t.symmetry.class_range();
            low += l;
            high += h;
        }
        (low, high)
    }
}

/// Decomposition parameters of the classical-Zariski shape
/// Σ = e·E₆ ⊕ ⊕ a_i·A_{3i−1} ⊕ n·A₁ with 2e + Σ i·a_i = 6.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZariskiInfo {
    pub e: u32,
    pub a: [u32; 6],
    pub n: u32,
    /// Virtual genus g(Σ) = 10 − 3e − Σ a_i·⌊3i/2⌋ − n (floor convention).
    pub virtual_genus: i64,
}

#[derive(Debug, Clone)]
pub struct ClassificationReport {
    pub sigma: SingularitySet,
    pub mu: u32,
    pub configurations: Vec<ConfigurationReport>,
    /// Configurations passing the root conditions whose complement genus is
    /// empty; they extend to no homological type and are not listed.
    pub non_realizable_configurations: usize,
    pub zariski: Option<ZariskiInfo>,
}

impl ClassificationReport {
    pub fn class_range(&self) -> (u64, u64) {
        let mut low = 0;
        let mut high = 0;
        for c in &self.configurations {
            let (l, h) = c.class_range();
            low += l;
            high += h;
        }
        (low, high)
    }

    /// True when every type count is certified and every symmetry decided.
    pub fn complete(&self) -> bool {
        self.configurations.iter().all(|c| {
            c.type_count_certified && c.types.iter().all(|t| t.symmetry != Symmetry::Undetermined)
        })
    }
}

// ---------------------------------------------------------------------------
// Step 1: configurations
// ---------------------------------------------------------------------------

/// Enumerate the configurations extending Σ: isotropic subgroups of 𝒮 up to
/// Aut_h 𝒮, filtered by the two root conditions.
pub fn configurations(sigma: &SingularitySet, limits: &Limits) -> Result<Vec<Configuration>> {
    if sigma.mu() > 19 {
        return Err(Error::Domain(format!("μ = {} exceeds 19", sigma.mu())));
    }
    let s = build_s(sigma)?;
    let iso_subs = fqf::isotropic_subgroups(&s.s_form, limits)?;
    let adm = admissible_automorphisms(&s)?;
    let reps = orbit_representatives(&s.s_form, &iso_subs, &adm.generator_autos());

    let mut out = Vec::new();
    for kernel in reps {
        if let Some(config) = check_configuration(&s, &kernel, limits)? {
            out.push(config);
        }
    }
    out.sort_by(|a, b| {
        (a.index, &a.kernel_invariants, &a.kernel.elements).cmp(&(
            b.index,
            &b.kernel_invariants,
            &b.kernel.elements,
        ))
    });
    Ok(out)
}

/// Orbit representatives (lexicographically least element set per orbit) of
/// the subgroup list under the generated action.
fn orbit_representatives(
    form: &FiniteQuadraticForm,
    subgroups: &[Subgroup],
    generators: &[FormAutomorphism],
) -> Vec<Subgroup> {
    let index: BTreeMap<Vec<Element>, usize> = subgroups
        .iter()
        .enumerate()
        .map(|(i, s)| (s.elements.clone(), i))
        .collect();
    let mut assigned = vec![false; subgroups.len()];
    let mut reps = Vec::new();
    for start in 0..subgroups.len() {
        if assigned[start] {
            continue;
        }
        // breadth-first orbit
        let mut orbit = vec![start];
        assigned[start] = true;
        let mut frontier = 0;
        while frontier < orbit.len() {
            let cur = orbit[frontier];
            frontier += 1;
            for g in generators {
                let mut image: Vec<Element> = subgroups[cur]
                    .elements
                    .iter()
                    .map(|x| g.apply(form, x))
                    .collect();
                image.sort();
                let &target = index
                    .get(&image)
                    .expect("action must permute isotropic subgroups");
                if !assigned[target] {
                    assigned[target] = true;
                    orbit.push(target);
                }
            }
        }
        let best = orbit
            .iter()
            .map(|&i| &subgroups[i])
            .min_by(|a, b| a.elements.cmp(&b.elements))
            .unwrap();
        reps.push(best.clone());
    }
    reps.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
    reps
}

/// Apply the two conditions of the configuration definition; build the
/// associated lattices when they pass.
fn check_configuration(
    s: &SData,
    kernel: &Subgroup,
    limits: &Limits,
) -> Result<Option<Configuration>> {
    // Condition (2) at A₁ direct summands: the class of (r + h)/2 must not
    // lie in the kernel.
    for class in s.a1_half_sum_classes() {
        if kernel.contains(&class) {
            return Ok(None);
        }
    }
    if limits.debug_full_root_check && !full_root_condition(s, kernel, limits)? {
        return Err(Error::Inconsistency(
            "full root check rejected a configuration the A₁ reduction accepted".into(),
        ));
    }

    // Condition (1): Σ̃ = h⊥ in S̃ gains no roots. Σ̃ is the extension of Σ
    // by the part of the kernel with trivial γ-component.
    let mu = s.sigma.mu() as usize;
    let sigma_lattice = s.sigma.lattice();
    let sigma_kernel_lifts: Vec<Vec<BigRational>> = kernel
        .elements
        .iter()
        .filter(|x| x[s.gamma] == 0)
        .map(|x| element_lift(s, x, mu, true))
        .collect();
    let sigma_ext = sigma_lattice.finite_index_extension(&sigma_kernel_lifts)?;
    let expected_roots = s.sigma.total_roots();
    let sigma_tilde_roots = if sigma_ext.index == 1 {
        expected_roots
    } else {
        sigma_ext.lattice.roots(limits)?.len() as u64
    };
    if sigma_tilde_roots != expected_roots {
        return Ok(None);
    }

    // Build S̃ and 𝒮̃.
    let s_kernel_lifts: Vec<Vec<BigRational>> = kernel
        .gens
        .iter()
        .map(|x| element_lift(s, x, mu + 1, false))
        .collect();
    let s_ext = s.s_lattice.finite_index_extension(&s_kernel_lifts)?;
    if s_ext.index != kernel.order() {
        return Err(Error::Inconsistency(
            "extension index differs from |𝒦|".into(),
        ));
    }
    let s_tilde = fqf::quotient_form(&s.s_form, kernel)?;
    // coherence: discr S̃ ≅ 𝒦⊥/𝒦
    let s_tilde_disc = s_ext.lattice.discriminant_form()?;
    if !fqf::is_isomorphic(&s_tilde_disc.form, &s_tilde.form) {
        return Err(Error::Inconsistency(
            "lattice-level extension discriminant disagrees with 𝒦⊥/𝒦".into(),
        ));
    }
    Ok(Some(Configuration {
        sigma: s.sigma.clone(),
        kernel_invariants: kernel.invariant_factors(&s.s_form),
        kernel: kernel.clone(),
        index: s_ext.index,
        s_tilde,
        s_tilde_lattice: s_ext.lattice,
        sigma_tilde_roots,
    }))
}

/// Debug mode: condition (2) checked on every root of Σ, not only on A₁
/// summands. Returns false if some non-A₁ root violates it (which would
/// contradict the reduction).
fn full_root_condition(s: &SData, kernel: &Subgroup, limits: &Limits) -> Result<bool> {
    let a1_classes = s.a1_half_sum_classes();
    for (ci, range) in s.comp_coord_ranges.iter().enumerate() {
        let (symbol, gen_range) = &s.comp_gen_ranges[ci];
        let comp = crate::rootdata::make_root_lattice(*symbol)?;
        for root in comp.roots(limits)? {
            // r/2 ∈ Σ* iff it pairs integrally with the component
            let half: Vec<BigRational> = root
                .iter()
                .map(|&c| BigRational::new(BigInt::from(c), BigInt::from(2)))
                .collect();
            let disc = comp.discriminant_form()?;
            let Ok(class) = disc.class_of(&half) else {
                continue;
            };
            // embed: component generators sit at gen_range, γ added
            let mut full = vec![0u64; s.s_form.generator_count()];
            for (k, g) in gen_range.clone().enumerate() {
                full[g] = class[k];
            }
            full[s.gamma] = 1;
            if kernel.contains(&full) && !a1_classes.contains(&full) {
                return Ok(false);
            }
            let _ = range;
        }
    }
    Ok(true)
}

/// Lift a 𝒮-element to a rational vector; `sigma_only` drops the h
/// coordinate (for elements with trivial γ-component).
fn element_lift(s: &SData, x: &Element, dim: usize, sigma_only: bool) -> Vec<BigRational> {
    let total = s.sigma.mu() as usize + 1;
    let mut acc = vec![BigRational::zero(); total];
    for (c, lift) in x.iter().zip(&s.lifts) {
        if *c == 0 {
            continue;
        }
        for i in 0..total {
            acc[i] += BigRational::from_integer(BigInt::from(*c)) * &lift[i];
        }
    }
    if sigma_only {
        debug_assert!(acc[total - 1].is_integer());
        acc.truncate(dim);
    }
    debug_assert_eq!(acc.len(), dim);
    acc
}

// ---------------------------------------------------------------------------
// Step 2: complements
// ---------------------------------------------------------------------------

/// The genus of the orthogonal complement N = S̃⊥ ⊂ L: (2, 19 − μ; −𝒮̃).
pub fn complement_genus(c: &Configuration) -> GenusSymbol {
    GenusSymbol::new(2, 19 - c.sigma.mu() as usize, c.s_tilde.form.negate())
}

/// Step 2 as a standalone operation: explicit reduced representatives at
/// μ = 19, a certificate below. `None` when the genus is empty (the
/// configuration extends to no homological type).
pub fn complement_representatives(
    c: &Configuration,
    limits: &Limits,
) -> Result<Option<Complement>> {
    let genus = complement_genus(c);
    if c.sigma.mu() == 19 {
        let reps = enumerate_genus(&genus.form, limits)?;
        if reps.is_empty() {
            return Ok(None);
        }
        Ok(Some(Complement::Definite {
            representatives: reps,
        }))
    } else {
        if !exists_even_lattice(&genus).exists {
            return Ok(None);
        }
        Ok(Some(Complement::Certificate {
            unique: unique_in_genus(&genus)?,
            onto: aut_onto(&genus)?,
            square_two_guaranteed: guaranteed_square_two(&genus),
        }))
    }
}

/// Steps 3–4 as a standalone operation: the abstract homological types over
/// one configuration, with symmetry verdicts.
pub fn homological_types(c: &Configuration, limits: &Limits) -> Result<Vec<HomologicalType>> {
    let s = build_s(&c.sigma)?;
    match complement_representatives(c, limits)? {
        None => Ok(vec![]),
        Some(Complement::Definite { representatives }) => {
            let h1 = admissible_image_on_quotient(&s, c, limits)?;
            let mut types = Vec::new();
            for n in &representatives {
                types.extend(definite_types(c, n, &h1, limits)?);
            }
            Ok(types)
        }
        Some(Complement::Certificate {
            square_two_guaranteed,
            ..
        }) => {
            let symmetry = if square_two_guaranteed {
                Symmetry::Symmetric
            } else {
                Symmetry::Undetermined
            };
            Ok(vec![HomologicalType {
                complement: None,
                coset_id: 0,
                symmetry,
            }])
        }
    }
}

// ---------------------------------------------------------------------------
// Steps 3–4: types and symmetry
// ---------------------------------------------------------------------------

/// An anti-isometry κ: 𝒮̃ → 𝒩 (negates q), as generator images in 𝒩.
struct AntiIsometry {
    images: Vec<Element>,
}

impl AntiIsometry {
    fn apply(&self, n_form: &FiniteQuadraticForm, x: &Element) -> Element {
        let mut acc = n_form.zero_element();
        for (c, img) in x.iter().zip(&self.images) {
            if *c != 0 {
                acc = n_form.add(&acc, &n_form.scale(img, *c));
            }
        }
        acc
    }
}

/// Find one anti-isometry 𝒮̃ → 𝒩 by backtracking (an isomorphism onto the
/// negated form).
fn find_anti_isometry(
    s_tilde: &FiniteQuadraticForm,
    n_form: &FiniteQuadraticForm,
) -> Option<AntiIsometry> {
    let negated = s_tilde.negate();
    if !fqf::is_isomorphic(&negated, n_form) {
        return None;
    }
    let n_elements: Vec<Element> = n_form.elements().collect();
    let order = n_form.group_order().ok()?;
    let mut images = Vec::new();
    if anti_backtrack(&negated, n_form, &n_elements, order, &mut images) {
        Some(AntiIsometry { images })
    } else {
        None
    }
}

fn anti_backtrack(
    negated: &FiniteQuadraticForm,
    n_form: &FiniteQuadraticForm,
    n_elements: &[Element],
    order: u64,
    images: &mut Vec<Element>,
) -> bool {
    let i = images.len();
    let k = negated.generator_count();
    if i == k {
        return generated_order(n_form, images) == order;
    }
    let mut gi = vec![0u64; k];
    gi[i] = 1;
    let want_order = negated.orders()[i];
    let want_q = negated.q_of(&gi);
    for y in n_elements {
        if n_form.order_of(y) != want_order || n_form.q_of(y) != want_q {
            continue;
        }
        let mut ok = true;
        for (j, im) in images.iter().enumerate() {
            let mut gj = vec![0u64; k];
            gj[j] = 1;
            if n_form.b_of(y, im) != negated.b_of(&gi, &gj) {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        images.push(y.clone());
        if anti_backtrack(negated, n_form, n_elements, order, images) {
            return true;
        }
        images.pop();
    }
    false
}

fn generated_order(g: &FiniteQuadraticForm, gens: &[Element]) -> u64 {
    let mut seen: BTreeSet<Element> = BTreeSet::new();
    let mut stack = vec![g.zero_element()];
    seen.insert(g.zero_element());
    while let Some(x) = stack.pop() {
        for gen in gens {
            let y = g.add(&x, gen);
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    seen.len() as u64
}

/// The image of O_h(S̃) in Aut 𝒮̃: kernel-stabilizing admissible
/// automorphisms of 𝒮 pushed down to 𝒦⊥/𝒦.
fn admissible_image_on_quotient(
    s: &SData,
    config: &Configuration,
    limits: &Limits,
) -> Result<Vec<FormAutomorphism>> {
    let adm = admissible_automorphisms(s)?;
    let all = adm.elements(&s.s_form, limits)?;
    let q_form = &config.s_tilde.form;
    let mut keys = BTreeSet::new();
    let mut out = Vec::new();
    for g in &all {
        if !g.maps_set_to_itself(&s.s_form, &config.kernel.elements) {
            continue;
        }
        // push to the quotient: image of each generator lift
        let images: Result<Vec<Element>> = config
            .s_tilde
            .gen_lifts
            .iter()
            .map(|lift| config.s_tilde.project(&g.apply(&s.s_form, lift)))
            .collect();
        let auto = FormAutomorphism::from_images(q_form, &images?);
        if !auto.preserves(q_form) {
            return Err(Error::Inconsistency(
                "stabilizer element does not act on the quotient form".into(),
            ));
        }
        if keys.insert(auto.key(q_form)) {
            out.push(auto);
        }
    }
    Ok(out)
}

/// Types over one configuration at μ = 19, for one complement representative.
fn definite_types(
    config: &Configuration,
    n: &ReducedForm,
    h1: &[FormAutomorphism],
    limits: &Limits,
) -> Result<Vec<HomologicalType>> {
    let q_form = &config.s_tilde.form;
    let n_lattice = n.to_lattice();
    let n_disc = n_lattice.discriminant_form()?;
    let kappa = find_anti_isometry(q_form, &n_disc.form)
        .ok_or_else(|| Error::Inconsistency(format!("no anti-isometry 𝒮̃ → discr {n}")))?;

    // O(N) images on 𝒩, with determinant tags.
    let mut h2_plus: Vec<FormAutomorphism> = Vec::new();
    let mut h2_minus: Vec<FormAutomorphism> = Vec::new();
    for t in orthogonal_elements(n) {
        let act = n_lattice.discriminant_action(&n_disc, &t)?;
        if t.det() == BigInt::from(1) {
            push_unique(&mut h2_plus, act, &n_disc.form);
        } else {
            push_unique(&mut h2_minus, act, &n_disc.form);
        }
    }

    // transport through κ into Aut 𝒮̃
    let transport = |tau: &FormAutomorphism| -> Result<FormAutomorphism> {
        conjugate_through(&kappa, tau, q_form, &n_disc.form)
    };
    let h2k_plus: Vec<FormAutomorphism> = h2_plus.iter().map(transport).collect::<Result<_>>()?;
    let h2k_minus: Vec<FormAutomorphism> = h2_minus.iter().map(transport).collect::<Result<_>>()?;
    let h2k_all: Vec<FormAutomorphism> = {
        let mut v = h2k_plus.clone();
        for a in &h2k_minus {
            push_unique(&mut v, a.clone(), q_form);
        }
        v
    };

    // Double cosets H₂ᵏ \ Aut 𝒮̃ / H₁: one abstract homological type per coset.
    let g_all = automorphisms(q_form, limits)?;
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut types = Vec::new();
    let mut coset_id = 0;
    // H₁ and H₂ᵏ are groups (closed); scan in deterministic order
    let mut g_sorted = g_all.clone();
    g_sorted.sort_by_key(|g| g.key(q_form));
    let has_square_two = !n_lattice.short_vectors(2, limits)?.is_empty();
    for g in &g_sorted {
        if seen.contains(&g.key(q_form)) {
            continue;
        }
        // mark the whole double coset of g
        for tau in &h2k_all {
            for s_el in h1 {
                let prod = tau
                    .compose(q_form, &g.compose(q_form, s_el))
                    .normalized(q_form);
                seen.insert(prod.key(q_form));
            }
        }
        let symmetry = if has_square_two {
            Symmetry::Symmetric
        } else {
            symmetric_by_full_test(q_form, g, h1, &h2k_plus, &h2k_minus)?
        };
        types.push(HomologicalType {
            complement: Some(*n),
            coset_id,
            symmetry,
        });
        coset_id += 1;
    }
    Ok(types)
}

fn push_unique(list: &mut Vec<FormAutomorphism>, a: FormAutomorphism, form: &FiniteQuadraticForm) {
    let a = a.normalized(form);
    if !list.iter().any(|b| b.key(form) == a.key(form)) {
        list.push(a);
    }
}

/// κ⁻¹ ∘ τ ∘ κ as an automorphism of 𝒮̃.
fn conjugate_through(
    kappa: &AntiIsometry,
    tau: &FormAutomorphism,
    s_tilde: &FiniteQuadraticForm,
    n_form: &FiniteQuadraticForm,
) -> Result<FormAutomorphism> {
    // build κ as an element dictionary 𝒮̃ → 𝒩 and invert on the image of
    // generators of 𝒮̃ after applying τ
    let mut n_to_s: BTreeMap<Element, Element> = BTreeMap::new();
    for x in s_tilde.elements() {
        n_to_s.insert(kappa.apply(n_form, &x), x);
    }
    let k = s_tilde.generator_count();
    let mut images = Vec::with_capacity(k);
    for i in 0..k {
        let mut gi = vec![0u64; k];
        gi[i] = 1;
        let in_n = kappa.apply(n_form, &gi);
        let moved = tau.apply(n_form, &in_n);
        let back = n_to_s
            .get(&moved)
            .ok_or_else(|| Error::Inconsistency("κ is not a bijection".into()))?;
        images.push(back.clone());
    }
    let auto = FormAutomorphism::from_images(s_tilde, &images);
    if !auto.preserves(s_tilde) {
        return Err(Error::Inconsistency(
            "transported automorphism broke the form".into(),
        ));
    }
    Ok(auto)
}

/// Full Step-4 test: a type with anti-isometry κ∘g is symmetric iff some
/// determinant −1 class τ⁻ satisfies g⁻¹τ⁻g ∈ H₁ · g⁻¹H₂⁺g  (membership in
/// the product set, computed exactly).
fn symmetric_by_full_test(
    q_form: &FiniteQuadraticForm,
    g: &FormAutomorphism,
    h1: &[FormAutomorphism],
    h2k_plus: &[FormAutomorphism],
    h2k_minus: &[FormAutomorphism],
) -> Result<Symmetry> {
    if h2k_minus.is_empty() {
        return Ok(Symmetry::Asymmetric);
    }
    let g_inv = g.inverse(q_form);
    let conj = |tau: &FormAutomorphism| {
        g_inv
            .compose(q_form, &tau.compose(q_form, g))
            .normalized(q_form)
    };
    // product set H₁ · (g⁻¹ H₂⁺ g)
    let mut product: BTreeSet<Vec<u64>> = BTreeSet::new();
    for s_el in h1 {
        for tau in h2k_plus {
            let prod = s_el.compose(q_form, &conj(tau)).normalized(q_form);
            product.insert(prod.key(q_form));
        }
    }
    for tau in h2k_minus {
        if product.contains(&conj(tau).key(q_form)) {
            return Ok(Symmetry::Symmetric);
        }
    }
    Ok(Symmetry::Asymmetric)
}

// ---------------------------------------------------------------------------
// Geometric predicates
// ---------------------------------------------------------------------------

/// A curve with this configuration is reducible iff 𝒦 has 2-torsion.
pub fn is_reducible(c: &Configuration) -> bool {
    c.kernel.order() % 2 == 0
}

/// Shape decomposition of Σ per the classical-Zariski family, when it exists.
pub fn zariski_info(sigma: &SingularitySet) -> Option<ZariskiInfo> {
    let mut e = 0u32;
    let mut a = [0u32; 6];
    let mut n = 0u32;
    for &c in sigma.components() {
        match c {
            AdeSymbol::E(6) => e += 1,
            AdeSymbol::A(1) => n += 1,
            AdeSymbol::A(p) if (p + 1) % 3 == 0 && (p + 1) / 3 <= 6 => {
                a[((p + 1) / 3 - 1) as usize] += 1;
            }
            _ => return None,
        }
    }
    let weight: u32 = 2 * e
        + a.iter()
            .enumerate()
            .map(|(i, &m)| (i as u32 + 1) * m)
            .sum::<u32>();
    if weight != 6 {
        return None;
    }
    let genus_drop: i64 = a
        .iter()
        .enumerate()
        .map(|(i, &m)| m as i64 * ((3 * (i as i64 + 1)) / 2))
        .sum();
    let virtual_genus = 10 - 3 * e as i64 - genus_drop - n as i64;
    Some(ZariskiInfo {
        e,
        a,
        n,
        virtual_genus,
    })
}

/// For Σ of the classical-Zariski shape: the curve is abundant iff 𝒦 has
/// 3-torsion; the 3-primary part must then be Z/3 with kernel generator
/// touching every singular point other than A₁.
pub fn is_abundant(c: &Configuration, s: &SData) -> Result<Option<bool>> {
    if zariski_info(&c.sigma).is_none() {
        return Ok(None);
    }
    let has_3 = c.kernel.order() % 3 == 0;
    if !has_3 {
        return Ok(Some(false));
    }
    // structure assertions (violations would contradict the abundancy
    // characterization): 3-part is Z/3 and its generator projects
    // nontrivially to every component other than A₁.
    let three_part: Vec<&Element> = c
        .kernel
        .elements
        .iter()
        .filter(|x| {
            let o = s.s_form.order_of(x);
            o == 3
        })
        .collect();
    if three_part.len() != 2 {
        return Err(Error::Inconsistency(format!(
            "abundant kernel has {} order-3 elements, expected 2",
            three_part.len()
        )));
    }
    let gen = three_part[0];
    for (symbol, range) in &s.comp_gen_ranges {
        if *symbol == AdeSymbol::A(1) {
            continue;
        }
        let touches = range.clone().any(|i| gen[i] != 0);
        if !touches {
            return Err(Error::Inconsistency(
                "abundant kernel generator misses a non-A₁ singular point".into(),
            ));
        }
    }
    Ok(Some(true))
}

// ---------------------------------------------------------------------------
// The full pipeline
// ---------------------------------------------------------------------------

/// Classify rigid isotopy classes of sextics with the given singularities.
pub fn rigid_isotopy_classes(
    sigma: &SingularitySet,
    limits: &Limits,
) -> Result<ClassificationReport> {
    let s = build_s(sigma)?;
    let configs = configurations(sigma, limits)?;
    let mu = sigma.mu();
    let mut reports = Vec::new();
    let mut non_realizable = 0usize;

    for config in configs {
        let genus = complement_genus(&config);
        let genus_checks = exists_even_lattice(&genus);
        let Some(complement) = complement_representatives(&config, limits)? else {
            non_realizable += 1;
            continue;
        };
        if mu == 19 && !genus_checks.exists {
            return Err(Error::Inconsistency(
                "existence predicate rejected a genus with explicit representatives".into(),
            ));
        }
        let (types, type_count_certified) = match &complement {
            Complement::Definite { representatives } => {
                let h1 = admissible_image_on_quotient(&s, &config, limits)?;
                let mut types = Vec::new();
                for n in representatives {
                    types.extend(definite_types(&config, n, &h1, limits)?);
                }
                (types, true)
            }
            Complement::Certificate {
                onto,
                square_two_guaranteed,
                ..
            } => {
                let symmetry = if *square_two_guaranteed {
                    Symmetry::Symmetric
                } else {
                    Symmetry::Undetermined
                };
                (
                    vec![HomologicalType {
                        complement: None,
                        coset_id: 0,
                        symmetry,
                    }],
                    *onto == OntoVerdict::UniqueAndOnto,
                )
            }
        };
        let abundant = is_abundant(&config, &s)?;
        reports.push(ConfigurationReport {
            reducible: is_reducible(&config),
            abundant,
            configuration: config,
            genus,
            genus_checks,
            complement,
            types,
            type_count_certified,
        });
    }

    Ok(ClassificationReport {
        sigma: sigma.clone(),
        mu,
        configurations: reports,
        non_realizable_configurations: non_realizable,
        zariski: zariski_info(sigma),
    })
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

impl ClassificationReport {
    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::json;
        let configs: Vec<serde_json::Value> = self
            .configurations
            .iter()
            .map(|c| {
                let complement = match &c.complement {
                    Complement::Definite { representatives } => json!({
                        "representatives": representatives
                            .iter()
                            .map(|m| m.to_string())
                            .collect::<Vec<_>>(),
                    }),
                    Complement::Certificate {
                        unique,
                        onto,
                        square_two_guaranteed,
                    } => json!({
                        "certificate": {
                            "unique": match unique {
                                UniquenessVerdict::Unique => "unique",
                                UniquenessVerdict::Unknown => "unknown",
                            },
                            "onto": match onto {
                                OntoVerdict::UniqueAndOnto => "unique_and_onto",
                                OntoVerdict::Unknown => "unknown",
                            },
                            "square_two_guaranteed": square_two_guaranteed,
                        }
                    }),
                };
                let mut complement_obj = complement;
                complement_obj["genus"] = json!({
                    "sig_plus": c.genus.sig_plus,
                    "sig_minus": c.genus.sig_minus,
                    "det": c.genus.form.group_order().unwrap_or(0),
                    "discr": render_blocks(&normal_form(&c.genus.form)),
                });
                complement_obj["genus_checks"] = json!(c
                    .genus_checks
                    .conditions
                    .iter()
                    .map(|cond| json!({
                        "condition": cond.condition,
                        "holds": cond.holds,
                        "detail": cond.detail,
                    }))
                    .collect::<Vec<_>>());
                let (lo, hi) = c.class_range();
                json!({
                    "kernel_order": c.configuration.kernel.order(),
                    "kernel_invariants": c.configuration.kernel_invariants,
                    "index": c.configuration.index,
                    "s_tilde_discr": render_blocks(&normal_form(&c.configuration.s_tilde.form)),
                    "complement": complement_obj,
                    "types": c.types.iter().map(|t| json!({
                        "N": t.complement.map(|m| m.to_string()),
                        "coset_id": t.coset_id,
                        "symmetry": t.symmetry.as_str(),
                    })).collect::<Vec<_>>(),
                    "type_count_certified": c.type_count_certified,
                    "reducible": c.reducible,
                    "abundant": c.abundant,
                    "class_count": if lo == hi { json!(lo) } else { json!([lo, hi]) },
                })
            })
            .collect();
        let (lo, hi) = self.class_range();
        serde_json::json!({
            "sigma": self.sigma.to_string(),
            "mu": self.mu,
            "configurations": configs,
            "non_realizable_configurations": self.non_realizable_configurations,
            "class_count": if lo == hi { serde_json::json!(lo) } else { serde_json::json!([lo, hi]) },
            "complete": self.complete(),
            "zariski": self.zariski.as_ref().map(|z| serde_json::json!({
                "e": z.e,
                "a": z.a.to_vec(),
                "n": z.n,
                "virtual_genus": z.virtual_genus,
            })),
        })
    }

    /// Human-readable table in the classical notation
    /// (M(a,b,c), ⟨m/n⟩ as <m/n>, U/V), checkable against the literature by eye.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("sigma: {}   mu = {}\n", self.sigma, self.mu));
        if let Some(z) = &self.zariski {
            out.push_str(&format!(
                "classical Zariski shape: e = {}, a = {:?}, n = {}, virtual genus (floor convention) = {}\n",
                z.e, z.a, z.n, z.virtual_genus
            ));
        }
        for (i, c) in self.configurations.iter().enumerate() {
            out.push_str(&format!(
                "configuration {}: [S~:S] = {}, kernel {:?}, S~ discr = {}\n",
                i + 1,
                c.configuration.index,
                c.configuration.kernel_invariants,
                render_blocks(&normal_form(&c.configuration.s_tilde.form)),
            ));
            out.push_str(&format!(
                "  reducible: {}   abundant: {}\n",
                c.reducible,
                c.abundant.map_or("n/a".to_string(), |b| b.to_string()),
            ));
            match &c.complement {
                Complement::Definite { representatives } => {
                    let reps: Vec<String> = representatives.iter().map(|m| m.to_string()).collect();
                    out.push_str(&format!("  complements: {}\n", reps.join(", ")));
                }
                Complement::Certificate {
                    unique,
                    onto,
                    square_two_guaranteed,
                } => {
                    out.push_str(&format!(
                        "  complement genus certificate: unique = {:?}, onto = {:?}, square-2 guaranteed = {}\n",
                        unique, onto, square_two_guaranteed
                    ));
                }
            }
            for t in &c.types {
                out.push_str(&format!(
                    "  type {}: over {}  — {}\n",
                    t.coset_id,
                    t.complement
                        .map_or("certified genus".to_string(), |m| m.to_string()),
                    t.symmetry.as_str()
                ));
            }
            let (lo, hi) = c.class_range();
            if lo == hi {
                out.push_str(&format!("  classes: {lo}\n"));
            } else {
                out.push_str(&format!("  classes: [{lo}, {hi}]\n"));
            }
        }
        if self.non_realizable_configurations > 0 {
            out.push_str(&format!(
                "(root-valid configurations with empty complement genus: {})\n",
                self.non_realizable_configurations
            ));
        }
        let (lo, hi) = self.class_range();
        if lo == hi {
            out.push_str(&format!("rigid isotopy classes: {lo}\n"));
        } else {
            out.push_str(&format!("rigid isotopy classes: [{lo}, {hi}]\n"));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::parse_singularities;

    fn classify(text: &str) -> ClassificationReport {
        rigid_isotopy_classes(&parse_singularities(text).unwrap(), &Limits::default()).unwrap()
    }

    #[test]
    fn d19_unique_symmetric() {
        let r = classify("D19");
        assert_eq!(r.configurations.len(), 1);
        let c = &r.configurations[0];
        assert_eq!(c.configuration.index, 1);
        match &c.complement {
            Complement::Definite { representatives } => {
                assert_eq!(representatives, &[ReducedForm::new(1, 0, 2).unwrap()]);
            }
            _ => panic!("μ = 19 must give explicit complements"),
        }
        assert_eq!(c.types.len(), 1);
        assert_eq!(c.types[0].symmetry, Symmetry::Symmetric);
        assert_eq!(r.class_range(), (1, 1));
        assert!(!c.reducible);
    }

    #[test]
    fn a19_two_types() {
        let r = classify("A19");
        assert_eq!(r.configurations.len(), 1);
        let c = &r.configurations[0];
        match &c.complement {
            Complement::Definite { representatives } => {
                assert_eq!(representatives, &[ReducedForm::new(1, 0, 10).unwrap()]);
            }
            _ => panic!(),
        }
        assert_eq!(c.types.len(), 2);
        assert!(c.types.iter().all(|t| t.symmetry == Symmetry::Symmetric));
        assert_eq!(r.class_range(), (2, 2));
    }

    #[test]
    fn empty_sigma_is_one_class() {
        let r = classify("");
        assert_eq!(r.mu, 0);
        assert_eq!(r.configurations.len(), 1);
        assert_eq!(r.class_range(), (1, 1));
        assert!(r.complete());
    }

    #[test]
    fn orbit_partition_is_sound() {
        // every isotropic subgroup lies in the orbit of exactly one returned
        // representative (brute-force double count on small 𝒮)
        for name in ["2A2", "2A9+A1", "A5+A1"] {
            let limits = Limits::default();
            let s = crate::rootdata::build_s(&parse_singularities(name).unwrap()).unwrap();
            let subs = fqf::isotropic_subgroups(&s.s_form, &limits).unwrap();
            let adm = crate::rootdata::admissible_automorphisms(&s).unwrap();
            let gens = adm.generator_autos();
            let reps = orbit_representatives(&s.s_form, &subs, &gens);
            let group = adm.elements(&s.s_form, &limits).unwrap();
            for sub in &subs {
                let mut hits = 0;
                for rep in &reps {
                    let equivalent = group.iter().any(|g| {
                        let mut image: Vec<Element> =
                            rep.elements.iter().map(|x| g.apply(&s.s_form, x)).collect();
                        image.sort();
                        image == sub.elements
                    });
                    if equivalent {
                        hits += 1;
                    }
                }
                assert_eq!(hits, 1, "{name}: subgroup hit {hits} orbits");
            }
        }
    }

    #[test]
    fn anti_isometry_requires_negated_form() {
        // succeeds iff negate(𝒮̃) ≅ 𝒩
        let q = crate::fqf::from_blocks(&crate::fqf::parse_form_expression("<-19/20>").unwrap())
            .unwrap();
        let good = crate::fqf::from_blocks(&crate::fqf::parse_form_expression("<19/20>").unwrap())
            .unwrap();
        let bad = crate::fqf::from_blocks(&crate::fqf::parse_form_expression("<-19/20>").unwrap())
            .unwrap();
        assert!(find_anti_isometry(&q, &good).is_some());
        assert!(find_anti_isometry(&q, &bad).is_none());
    }

    #[test]
    fn zariski_shapes() {
        let z = zariski_info(&parse_singularities("6A2").unwrap()).unwrap();
        assert_eq!((z.e, z.n), (0, 0));
        assert_eq!(z.a, [6, 0, 0, 0, 0, 0]);
        assert_eq!(z.virtual_genus, 4);
        let z = zariski_info(&parse_singularities("3E6").unwrap()).unwrap();
        assert_eq!(z.e, 3);
        assert_eq!(z.virtual_genus, 1);
        assert!(zariski_info(&parse_singularities("A18+A1").unwrap()).is_none());
        // A₁₇ = A_{3·6−1}
        let z = zariski_info(&parse_singularities("A17").unwrap()).unwrap();
        assert_eq!(z.a[5], 1);
        assert_eq!(z.virtual_genus, 10 - 9);
    }
}
