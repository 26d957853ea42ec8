//! Subgroups of a finite quadratic form: isotropic kernels 𝒦, orthogonal
//! complements 𝒦⊥, and the induced nonsingular form on 𝒦⊥/𝒦.
//!
//! Subgroup/quotient presentations go through exact integer linear algebra:
//! a subgroup of ⊕ Z/d_i is the sublattice of Z^n (containing diag(d)·Z^n)
//! spanned by the lifts of its generators, and quotients are read off a Smith
//! normal form of the relation matrix.

use super::{Element, FiniteQuadraticForm, Rational};
use crate::config::{Limits, WorkBudget};
use crate::error::{Error, Result};
use crate::mat::{self, IMat};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use std::collections::{BTreeSet, VecDeque};

/// A subgroup given by generators and its full (sorted) element list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    pub gens: Vec<Element>,
    pub elements: Vec<Element>,
}

impl Subgroup {
    pub fn trivial(f: &FiniteQuadraticForm) -> Subgroup {
        Subgroup {
            gens: vec![],
            elements: vec![f.zero_element()],
        }
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.elements.binary_search(x).is_ok()
    }

    /// Generate from a generator list by additive closure.
    pub fn generate(f: &FiniteQuadraticForm, gens: &[Element]) -> Subgroup {
        let mut seen: BTreeSet<Element> = BTreeSet::new();
        seen.insert(f.zero_element());
        let mut queue: VecDeque<Element> = VecDeque::new();
        queue.push_back(f.zero_element());
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = f.add(&x, g);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        Subgroup {
            gens: gens.to_vec(),
            elements: seen.into_iter().collect(),
        }
    }

    /// Invariant factors (d_1 | d_2 | …) of the subgroup as an abstract group.
    pub fn invariant_factors(&self, f: &FiniteQuadraticForm) -> Vec<u64> {
        let n = f.generator_count();
        if n == 0 || self.order() == 1 {
            return vec![];
        }
        let mut cols: Vec<Vec<BigInt>> = Vec::new();
        for g in &self.gens {
            cols.push(g.iter().map(|&c| BigInt::from(c)).collect());
        }
        let lattice = sublattice_basis(n, &cols, f.orders());
        // Relations of Λ/DZ^n: columns of D in Λ-coordinates.
        let relations = express_in_basis(&lattice, &diagonal_of(f.orders()));
        let sf = mat::smith_normal_form(&relations);
        sf.diagonal()
            .iter()
            .filter_map(|d| d.to_u64())
            .filter(|&d| d > 1)
            .collect()
    }

    /// True iff q vanishes identically (in Q/2Z) on the subgroup.
    pub fn is_isotropic(&self, f: &FiniteQuadraticForm) -> bool {
        self.elements
            .iter()
            .all(|x| f.q_of(x) == Rational::from_integer(0))
    }
}

fn diagonal_of(orders: &[u64]) -> IMat {
    let n = orders.len();
    let mut d = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        d[i][i] = BigInt::from(orders[i]);
    }
    d
}

/// Basis of the sublattice of Z^n spanned by the given columns together with
/// diag(orders)·Z^n.
fn sublattice_basis(n: usize, cols: &[Vec<BigInt>], orders: &[u64]) -> IMat {
    let mut all: IMat = vec![vec![BigInt::zero(); cols.len() + n]; n];
    for (j, c) in cols.iter().enumerate() {
        for i in 0..n {
            all[i][j] = c[i].clone();
        }
    }
    for i in 0..n {
        all[i][cols.len() + i] = BigInt::from(orders[i]);
    }
    mat::column_basis(&all)
}

/// Solve basis · w = y exactly; panics if y is not in the basis's span over Z.
fn express_in_basis(basis: &IMat, targets: &IMat) -> IMat {
    let n = basis.len();
    let cols = if targets.is_empty() {
        0
    } else {
        targets[0].len()
    };
    let mut out = vec![vec![BigInt::zero(); cols]; n];
    for j in 0..cols {
        let y: Vec<BigInt> = (0..n).map(|i| targets[i][j].clone()).collect();
        let w = solve_integral(basis, &y).expect("target vector not in sublattice span");
        for i in 0..n {
            out[i][j] = w[i].clone();
        }
    }
    out
}

/// Solve a · x = b over the rationals and return x only if integral.
pub fn solve_integral(a: &IMat, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| BigRational::from_integer(a[i][j].clone()))
                .chain(std::iter::once(BigRational::from_integer(b[i].clone())))
                .collect()
        })
        .collect();
    // Gaussian elimination with partial pivoting by nonzero.
    let mut row = 0;
    let mut pivots = Vec::new();
    for col in 0..n {
        let Some(p) = (row..n).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].clone();
        for c in col..=n {
            m[row][c] = &m[row][c] / &inv;
        }
        for r in 0..n {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..=n {
                    let t = &factor * &m[row][c];
                    m[r][c] = &m[r][c] - t;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == n {
            break;
        }
    }
    if row < n {
        // Singular: solvable only if consistent; reject (bases are square
        // full-rank everywhere this is used).
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (r, &col) in pivots.iter().enumerate() {
        x[col] = m[r][n].clone();
    }
    let mut out = Vec::with_capacity(n);
    for v in x {
        if !v.is_integer() {
            return None;
        }
        out.push(v.to_integer());
    }
    Some(out)
}

/// All isotropic subgroups of f (including the trivial one), deduplicated.
pub fn isotropic_subgroups(f: &FiniteQuadraticForm, limits: &Limits) -> Result<Vec<Subgroup>> {
    let order = f.group_order()?;
    if order > limits.max_group_order {
        return Err(Error::BoundExceeded {
            what: format!("isotropic subgroup enumeration on group of order {order}"),
            bound: limits.max_group_order,
        });
    }
    let mut budget = WorkBudget::new(limits, "isotropic subgroup closure");
    let zero_q = Rational::from_integer(0);
    let isotropic_elements: Vec<Element> = f.elements().filter(|x| f.q_of(x) == zero_q).collect();

    let mut seen: BTreeSet<Vec<Element>> = BTreeSet::new();
    let trivial = Subgroup::trivial(f);
    seen.insert(trivial.elements.clone());
    let mut out = vec![trivial];
    let mut queue: VecDeque<usize> = VecDeque::new();
    queue.push_back(0);
    while let Some(idx) = queue.pop_front() {
        let current = out[idx].clone();
        for x in &isotropic_elements {
            if current.contains(x) {
                continue;
            }
            budget.spend(current.elements.len() as u64 + 1)?;
            let mut gens = current.gens.clone();
            gens.push(x.clone());
            let bigger = Subgroup::generate(f, &gens);
            if !bigger.is_isotropic(f) {
                continue;
            }
            if seen.insert(bigger.elements.clone()) {
                out.push(bigger);
                queue.push_back(out.len() - 1);
            }
        }
    }
    out.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
    Ok(out)
}

/// K⊥ = {x : b(x, k) = 0 for all k ∈ K}, by direct scan.
pub fn subgroup_perp(f: &FiniteQuadraticForm, k: &Subgroup) -> Subgroup {
    let zero = Rational::from_integer(0);
    let elements: Vec<Element> = f
        .elements()
        .filter(|x| k.gens.iter().all(|g| f.b_of(x, g) == zero))
        .collect();
    let mut sorted = elements;
    sorted.sort();
    Subgroup {
        gens: sorted.clone(),
        elements: sorted,
    }
}

/// The induced form on 𝒦⊥/𝒦 together with the projection data needed to
/// push automorphisms of the ambient form down to the quotient.
#[derive(Debug, Clone)]
pub struct QuotientData {
    pub form: FiniteQuadraticForm,
    /// Lifts of the quotient generators, as elements of the ambient group.
    pub gen_lifts: Vec<Element>,
    lattice: IMat, // basis of Λ = lifts(𝒦⊥) + D·Z^n
    u: IMat,       // SNF transform: coordinates in Λ-basis → quotient coords
    quotient_orders: Vec<u64>,
    kept: Vec<usize>, // indices of diagonal entries > 1
}

impl QuotientData {
    /// Express the class of an ambient element y ∈ 𝒦⊥ in quotient coordinates.
    pub fn project(&self, y: &Element) -> Result<Element> {
        let lift: Vec<BigInt> = y.iter().map(|&c| BigInt::from(c)).collect();
        let w = solve_integral(&self.lattice, &lift)
            .ok_or_else(|| Error::Domain("element is not in 𝒦⊥".into()))?;
        let n = self.lattice.len();
        let mut full = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = BigInt::zero();
            for j in 0..n {
                acc += &self.u[i][j] * &w[j];
            }
            full.push(acc);
        }
        Ok(self
            .kept
            .iter()
            .zip(&self.quotient_orders)
            .map(|(&i, &d)| {
                let m = BigInt::from(d);
                let r = ((&full[i] % &m) + &m) % &m;
                r.to_u64().unwrap()
            })
            .collect())
    }
}

/// discr-level quotient: the nonsingular form on 𝒦⊥/𝒦 for isotropic 𝒦.
pub fn quotient_form(f: &FiniteQuadraticForm, k: &Subgroup) -> Result<QuotientData> {
    if !k.is_isotropic(f) {
        return Err(Error::Domain("kernel is not isotropic".into()));
    }
    let n = f.generator_count();
    if n == 0 {
        return Ok(QuotientData {
            form: FiniteQuadraticForm::trivial(),
            gen_lifts: vec![],
            lattice: vec![],
            u: vec![],
            quotient_orders: vec![],
            kept: vec![],
        });
    }
    let perp = subgroup_perp(f, k);
    let perp_cols: Vec<Vec<BigInt>> = perp
        .elements
        .iter()
        .map(|e| e.iter().map(|&c| BigInt::from(c)).collect())
        .collect();
    let lattice = sublattice_basis(n, &perp_cols, f.orders());

    // Relations: 𝒦-generator lifts and D·Z^n, in Λ-coordinates.
    let mut rel_cols: IMat = vec![vec![]; n];
    for g in &k.gens {
        for i in 0..n {
            rel_cols[i].push(BigInt::from(g[i]));
        }
    }
    for j in 0..n {
        for i in 0..n {
            rel_cols[i].push(if i == j {
                BigInt::from(f.orders()[i])
            } else {
                BigInt::zero()
            });
        }
    }
    let relations = express_in_basis(&lattice, &rel_cols);
    let sf = mat::smith_normal_form(&relations);
    let diag = sf.diagonal();
    let uinv = mat::invert_unimodular(&sf.u);

    let mut kept = Vec::new();
    let mut quotient_orders = Vec::new();
    for (i, d) in diag.iter().enumerate() {
        let d = d
            .to_u64()
            .ok_or_else(|| Error::Inconsistency("quotient order overflow".into()))?;
        if d > 1 {
            kept.push(i);
            quotient_orders.push(d);
        }
    }

    // Generator lifts: Λ · U^{-1} columns (reduced into the group).
    let mut gen_lifts = Vec::with_capacity(kept.len());
    for &j in &kept {
        let mut col = vec![BigInt::zero(); n];
        for i in 0..n {
            let mut acc = BigInt::zero();
            for l in 0..n {
                acc += &lattice[i][l] * &uinv[l][j];
            }
            col[i] = acc;
        }
        let elem: Element = col
            .iter()
            .zip(f.orders())
            .map(|(c, &d)| {
                let m = BigInt::from(d);
                (((c % &m) + &m) % &m).to_u64().unwrap()
            })
            .collect();
        gen_lifts.push(elem);
    }

    // The induced q-matrix on the quotient generators.
    let m = kept.len();
    let zero = Rational::from_integer(0);
    let mut q = vec![vec![zero; m]; m];
    for a in 0..m {
        q[a][a] = f.q_of(&gen_lifts[a]);
        for b in a + 1..m {
            let v = f.b_of(&gen_lifts[a], &gen_lifts[b]);
            q[a][b] = v;
            q[b][a] = v;
        }
    }
    let form = FiniteQuadraticForm::new_unchecked(quotient_orders.clone(), q);

    let expected = f.group_order()? / (k.order() * k.order());
    if form.group_order()? != expected {
        return Err(Error::Inconsistency(format!(
            "quotient order {} != |f|/|K|^2 = {expected}",
            form.group_order()?
        )));
    }
    Ok(QuotientData {
        form,
        gen_lifts,
        lattice,
        u: sf.u,
        quotient_orders,
        kept,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fqf::{from_blocks, FormBlock};

    fn form(expr: &str) -> FiniteQuadraticForm {
        from_blocks(&crate::fqf::parse_form_expression(expr).unwrap()).unwrap()
    }

    #[test]
    fn isotropic_scan_3x3() {
        // ⟨2/3⟩ ⊕ ⟨-2/3⟩: exhaustive scan of all 9 elements finds the 4
        // nonzero isotropic ones, (±1, ±1); subgroups: trivial plus two
        // diagonal Z/3's.
        let f = form("<2/3>+<-2/3>");
        let limits = Limits::default();
        let nonzero_iso = f
            .elements()
            .filter(|x| x.iter().any(|&c| c != 0) && f.q_of(x) == Rational::from_integer(0))
            .count();
        assert_eq!(nonzero_iso, 4);
        let subs = isotropic_subgroups(&f, &limits).unwrap();
        assert_eq!(subs.len(), 3);
        assert_eq!(subs.iter().filter(|s| s.order() == 3).count(), 2);
    }

    #[test]
    fn perp_of_diagonal_is_itself() {
        let f = form("<2/3>+<-2/3>");
        let diag = Subgroup::generate(&f, &[vec![1, 1]]);
        assert!(diag.is_isotropic(&f));
        let perp = subgroup_perp(&f, &diag);
        assert_eq!(perp.order(), 3);
        assert_eq!(perp.elements, diag.elements);
        // |K⊥| · |K| = |f|
        assert_eq!(perp.order() * diag.order(), f.group_order().unwrap());
    }

    #[test]
    fn quotient_of_diagonal_is_trivial() {
        let f = form("<2/3>+<-2/3>");
        let diag = Subgroup::generate(&f, &[vec![1, 1]]);
        let q = quotient_form(&f, &diag).unwrap();
        assert_eq!(q.form.group_order().unwrap(), 1);
    }

    #[test]
    fn quotient_with_trivial_kernel_is_the_form() {
        let f = form("<2/3>+<1/2>");
        let k = Subgroup::trivial(&f);
        let q = quotient_form(&f, &k).unwrap();
        assert_eq!(q.form.group_order().unwrap(), 6);
        // projection of each original generator matches its class
        for (i, lift) in q.gen_lifts.iter().enumerate() {
            let coords = q.project(lift).unwrap();
            let mut expected = vec![0; q.form.generator_count()];
            expected[i] = 1;
            assert_eq!(coords, expected);
        }
    }

    #[test]
    fn quotient_rejects_non_isotropic() {
        let f = form("<1/2>+<-1/2>");
        let k = Subgroup::generate(&f, &[vec![1, 0]]); // q = 1/2 ≠ 0
        assert!(quotient_form(&f, &k).is_err());
    }

    #[test]
    fn invariant_factors_of_kernel() {
        let f = form("<2/3>+<-2/3>");
        let diag = Subgroup::generate(&f, &[vec![1, 1]]);
        assert_eq!(diag.invariant_factors(&f), vec![3]);
        let full = Subgroup::generate(&f, &[vec![1, 0], vec![0, 1]]);
        assert_eq!(full.invariant_factors(&f), vec![3, 3]);
    }

    #[test]
    fn brown_preserved_under_quotient() {
        // 𝒦 isotropic ⇒ Br(𝒦⊥/𝒦) = Br(f); checked here on a small case via
        // the Gauss sum.
        let f = form("<2/3>+<-2/3>+<1/2>");
        let limits = Limits::default();
        for k in isotropic_subgroups(&f, &limits).unwrap() {
            let q = quotient_form(&f, &k).unwrap();
            assert_eq!(
                crate::fqf::brown_gauss(&q.form),
                crate::fqf::brown_gauss(&f),
                "kernel {:?}",
                k.gens
            );
        }
        let _ = FormBlock::cyclic(1, 2); // keep import used
    }
}
