//! Automorphisms of a finite quadratic form: integer matrices acting on
//! generator coordinates, preserving q and b exactly.
//!
//! Aut 𝓛 = ∏_p Aut 𝓛_p, so enumeration runs prime by prime (backtracking on
//! generator images constrained by orders, squares and pairings) and the
//! per-prime groups are recombined through CRT coefficients.

use super::{Element, FiniteQuadraticForm};
use crate::arith::{mod_inverse, p_part};
use crate::config::Limits;
use crate::error::{Error, Result};
use std::collections::BTreeSet;

/// An automorphism given by an integer matrix: column i is the image of the
/// i-th generator in generator coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormAutomorphism {
    pub matrix: Vec<Vec<i64>>,
}

impl FormAutomorphism {
    pub fn identity(n: usize) -> Self {
        let mut m = vec![vec![0i64; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        FormAutomorphism { matrix: m }
    }

    /// Build from explicit generator images.
    pub fn from_images(f: &FiniteQuadraticForm, images: &[Element]) -> Self {
        let n = f.generator_count();
        let mut m = vec![vec![0i64; n]; n];
        for (i, img) in images.iter().enumerate() {
            for j in 0..n {
                m[j][i] = img[j] as i64;
            }
        }
        FormAutomorphism { matrix: m }.normalized(f)
    }

    /// Apply to an element (coordinates mod orders).
    pub fn apply(&self, f: &FiniteQuadraticForm, x: &[u64]) -> Element {
        let n = f.generator_count();
        let mut out = vec![0i128; n];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for j in 0..n {
                out[j] += self.matrix[j][i] as i128 * xi as i128;
            }
        }
        f.reduce(&out)
    }

    /// self ∘ other (apply `other` first).
    pub fn compose(&self, f: &FiniteQuadraticForm, other: &FormAutomorphism) -> FormAutomorphism {
        let n = f.generator_count();
        let mut m = vec![vec![0i64; n]; n];
        for i in 0..n {
            // image of generator i under the composition
            let col: Vec<u64> = (0..n)
                .map(|j| other.matrix[j][i].rem_euclid(f.orders()[j] as i64) as u64)
                .collect();
            let img = self.apply(f, &col);
            for j in 0..n {
                m[j][i] = img[j] as i64;
            }
        }
        FormAutomorphism { matrix: m }
    }

    /// Entries reduced into [0, d_row): canonical representative for hashing.
    pub fn normalized(&self, f: &FiniteQuadraticForm) -> FormAutomorphism {
        let n = f.generator_count();
        let mut m = vec![vec![0i64; n]; n];
        for j in 0..n {
            let d = f.orders()[j] as i64;
            for i in 0..n {
                m[j][i] = self.matrix[j][i].rem_euclid(d);
            }
        }
        FormAutomorphism { matrix: m }
    }

    pub fn key(&self, f: &FiniteQuadraticForm) -> Vec<u64> {
        let norm = self.normalized(f);
        norm.matrix.iter().flatten().map(|&x| x as u64).collect()
    }

    pub fn is_identity(&self, f: &FiniteQuadraticForm) -> bool {
        self.key(f) == FormAutomorphism::identity(f.generator_count()).key(f)
    }

    /// Inverse by running the cyclic group generated by self.
    pub fn inverse(&self, f: &FiniteQuadraticForm) -> FormAutomorphism {
        let mut prev = FormAutomorphism::identity(f.generator_count());
        let mut cur = self.clone();
        while !cur.is_identity(f) {
            let next = self.compose(f, &cur);
            prev = cur;
            cur = next;
        }
        prev
    }

    /// True iff q and b are preserved on all generator pairs.
    pub fn preserves(&self, f: &FiniteQuadraticForm) -> bool {
        let n = f.generator_count();
        for i in 0..n {
            let mut gi = vec![0u64; n];
            gi[i] = 1;
            let ii = self.apply(f, &gi);
            if f.q_of(&ii) != f.q_of(&gi) {
                return false;
            }
            for j in i..n {
                let mut gj = vec![0u64; n];
                gj[j] = 1;
                let ij = self.apply(f, &gj);
                if f.b_of(&ii, &ij) != f.b_of(&gi, &gj) {
                    return false;
                }
            }
        }
        true
    }

    /// Setwise action on a sorted element list.
    pub fn maps_set_to_itself(&self, f: &FiniteQuadraticForm, elements: &[Element]) -> bool {
        let mut image: Vec<Element> = elements.iter().map(|x| self.apply(f, x)).collect();
        image.sort();
        image == elements
    }
}

/// Complete automorphism group of f, as an explicit element list.
/// Errors with the offending prime when a component exceeds the bound.
pub fn automorphisms(f: &FiniteQuadraticForm, limits: &Limits) -> Result<Vec<FormAutomorphism>> {
    let n = f.generator_count();
    if n == 0 {
        return Ok(vec![FormAutomorphism::identity(0)]);
    }
    let order = f.group_order()?;
    if order > limits.max_group_order {
        return Err(Error::BoundExceeded {
            what: format!("automorphism enumeration on group of order {order}"),
            bound: limits.max_group_order,
        });
    }

    let mut per_prime: Vec<(u64, Vec<Vec<Element>>)> = Vec::new(); // (p, list of image tuples for p-part gens)
    for p in f.primes() {
        let gens = primary_generators(f, p);
        let images = enumerate_part_automorphisms(f, &gens, p, limits)?;
        per_prime.push((p, images));
    }

    // CRT recombination: for generator g_i of order d_i = ∏ p^{k}, pick the
    // coefficient c_p with Σ_p c_p · (d_i/p^k) ≡ 1 (mod d_i); then
    // σ(g_i) = Σ_p c_p · σ_p(m_p · g_i).
    let mut combos: Vec<Vec<usize>> = vec![vec![]];
    for (_, images) in &per_prime {
        let mut next = Vec::new();
        for c in &combos {
            for idx in 0..images.len() {
                let mut cc = c.clone();
                cc.push(idx);
                next.push(cc);
            }
        }
        combos = next;
        if combos.len() as u64 > limits.max_group_order {
            return Err(Error::BoundExceeded {
                what: "automorphism group order (product over primes)".into(),
                bound: limits.max_group_order,
            });
        }
    }

    let mut out = Vec::with_capacity(combos.len());
    for combo in combos {
        let mut columns: Vec<Vec<i128>> = vec![vec![0i128; n]; n];
        for (pi, (p, images)) in per_prime.iter().enumerate() {
            let gens = primary_generators(f, *p);
            let chosen = &images[combo[pi]];
            for (a, &gi) in gens.indices.iter().enumerate() {
                let d = f.orders()[gi];
                let pk = p_part(d, *p);
                let m = d / pk; // cofactor: h_a = m · g_{gi}
                                // CRT coefficient for the p-component of g_{gi}
                let c = crt_coefficient(d, pk, m);
                // chosen[a] is σ_p(h_a) in part coordinates; convert to group coords
                for (b, &gj) in gens.indices.iter().enumerate() {
                    let mb = f.orders()[gj] / p_part(f.orders()[gj], *p);
                    columns[gi][gj] += c as i128 * chosen[a][b] as i128 * mb as i128;
                }
            }
        }
        let mut matrix = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let d = f.orders()[j] as i128;
                matrix[j][i] = (columns[i][j].rem_euclid(d)) as i64;
            }
        }
        let auto = FormAutomorphism { matrix };
        debug_assert!(auto.preserves(f));
        out.push(auto);
    }
    Ok(out)
}

/// λ with λ·m ≡ 1 (mod p^k), for the cofactor m = d/p^k. The combined
/// automorphism is σ(g) = Σ_p λ_p · σ_p(m_p·g): multiplying by λ_p·m_p is the
/// CRT idempotent onto the p-component of Z/d.
fn crt_coefficient(d: u64, pk: u64, m: u64) -> u64 {
    debug_assert_eq!(pk * m, d);
    mod_inverse(m as i64, pk as i64).expect("cofactor invertible mod p^k") as u64
}

struct PrimaryGens {
    indices: Vec<usize>,
}

fn primary_generators(f: &FiniteQuadraticForm, p: u64) -> PrimaryGens {
    PrimaryGens {
        indices: (0..f.generator_count())
            .filter(|&i| f.orders()[i] % p == 0)
            .collect(),
    }
}

/// Enumerate automorphisms of the p-primary part by backtracking; image
/// tuples are in part coordinates (same index order as `primary_generators`).
fn enumerate_part_automorphisms(
    f: &FiniteQuadraticForm,
    gens: &PrimaryGens,
    p: u64,
    limits: &Limits,
) -> Result<Vec<Vec<Element>>> {
    let part = f.primary_part(p);
    let k = part.generator_count();
    debug_assert_eq!(k, gens.indices.len());
    if k == 0 {
        return Ok(vec![vec![]]);
    }
    let all: Vec<Element> = part.elements().collect();
    let order = part.group_order()?;
    let mut results: Vec<Vec<Element>> = Vec::new();
    let mut images: Vec<Element> = Vec::new();
    backtrack_part(&part, &all, order, &mut images, &mut results)?;
    if results.len() as u64 > limits.max_group_order {
        return Err(Error::BoundExceeded {
            what: format!("automorphism enumeration at p = {p}"),
            bound: limits.max_group_order,
        });
    }
    Ok(results)
}

fn backtrack_part(
    part: &FiniteQuadraticForm,
    all: &[Element],
    order: u64,
    images: &mut Vec<Element>,
    results: &mut Vec<Vec<Element>>,
) -> Result<()> {
    let i = images.len();
    let k = part.generator_count();
    if i == k {
        if generated_order_of(part, images) == order {
            results.push(images.clone());
        }
        return Ok(());
    }
    let mut gi = vec![0u64; k];
    gi[i] = 1;
    let want_order = part.orders()[i];
    let want_q = part.q_of(&gi);
    for y in all {
        if part.order_of(y) != want_order || part.q_of(y) != want_q {
            continue;
        }
        let mut ok = true;
        for (j, im) in images.iter().enumerate() {
            let mut gj = vec![0u64; k];
            gj[j] = 1;
            if part.b_of(y, im) != part.b_of(&gi, &gj) {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        images.push(y.clone());
        backtrack_part(part, all, order, images, results)?;
        images.pop();
    }
    Ok(())
}

fn generated_order_of(g: &FiniteQuadraticForm, gens: &[Element]) -> u64 {
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

/// Closure of a generating set inside Aut f, deduplicated; errors past cap.
pub fn close_generated(
    f: &FiniteQuadraticForm,
    generators: &[FormAutomorphism],
    limits: &Limits,
) -> Result<Vec<FormAutomorphism>> {
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    let id = FormAutomorphism::identity(f.generator_count());
    seen.insert(id.key(f));
    let mut out = vec![id];
    let mut frontier = 0;
    while frontier < out.len() {
        let cur = out[frontier].clone();
        frontier += 1;
        for g in generators {
            let next = g.compose(f, &cur).normalized(f);
            if seen.insert(next.key(f)) {
                out.push(next);
                if out.len() as u64 > limits.max_group_order {
                    return Err(Error::BoundExceeded {
                        what: "automorphism subgroup closure".into(),
                        bound: limits.max_group_order,
                    });
                }
            }
        }
    }
    Ok(out)
}
