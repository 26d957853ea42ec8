//! Even integral lattices as exact integer Gram matrices: invariants,
//! discriminant forms via Smith normal form, short-vector and root
//! enumeration, reflections, finite-index extensions, and finite isometry
//! groups of definite lattices.
//!
//! Sign convention: root systems are negative definite (roots have square
//! −2); rank-2 complements are kept positive definite and negated where a
//! genus requires it.

use crate::config::{Limits, WorkBudget};
use crate::error::{Error, Result};
use crate::fqf::{FiniteQuadraticForm, FormAutomorphism, Rational};
use crate::mat::{self, IMat};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Definite isometry groups are enumerated only up to this rank; the
/// classification itself needs them for rank ≤ 2 complements.
pub const ISOMETRY_RANK_BOUND: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramLattice {
    gram: IMat,
}

/// An isometry T of a lattice: TᵀGT = G (hence det T = ±1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isometry {
    pub matrix: IMat,
}

#[derive(Debug, Clone)]
pub struct LatticeInvariants {
    pub det: BigInt,
    pub sig_plus: usize,
    pub sig_minus: usize,
    pub radical: usize,
    pub even: bool,
}

/// Discriminant group data: the finite quadratic form on L*/L plus exact
/// rational lifts of its generators into L* ⊂ L ⊗ Q.
#[derive(Debug, Clone)]
pub struct DiscriminantData {
    pub form: FiniteQuadraticForm,
    pub lifts: Vec<Vec<BigRational>>,
    u: IMat,
    full_orders: Vec<BigInt>,
    kept: Vec<usize>,
    gram: IMat,
}

impl GramLattice {
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<GramLattice> {
        let gram = mat::from_i64(rows);
        Self::from_gram(gram)
    }

    pub fn from_gram(gram: IMat) -> Result<GramLattice> {
        let n = gram.len();
        for row in &gram {
            if row.len() != n {
                return Err(Error::Domain("Gram matrix must be square".into()));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::Domain("Gram matrix must be symmetric".into()));
                }
            }
            if (&gram[i][i] % 2u8) != BigInt::zero() {
                return Err(Error::Domain(
                    "lattice must be even (diagonal entries even)".into(),
                ));
            }
        }
        Ok(GramLattice { gram })
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &IMat {
        &self.gram
    }

    pub fn gram_i64(&self) -> Vec<Vec<i64>> {
        self.gram
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.to_i64().expect("Gram entry out of i64"))
                    .collect()
            })
            .collect()
    }

    /// The zero-rank lattice.
    pub fn zero() -> GramLattice {
        GramLattice { gram: vec![] }
    }

    /// Rank-1 lattice ⟨c⟩ (c even).
    pub fn rank1(c: i64) -> Result<GramLattice> {
        Self::from_rows(&[vec![c]])
    }

    /// The hyperbolic plane 𝐔: u² = v² = 0, u·v = 1.
    pub fn hyperbolic() -> GramLattice {
        GramLattice {
            gram: mat::from_i64(&[vec![0, 1], vec![1, 0]]),
        }
    }

    /// L(n): same group, all products scaled by n.
    pub fn rescale(&self, n: i64) -> GramLattice {
        let gram = self
            .gram
            .iter()
            .map(|row| row.iter().map(|x| x * n).collect())
            .collect();
        GramLattice { gram }
    }

    pub fn direct_sum(&self, other: &GramLattice) -> GramLattice {
        let n = self.rank();
        let m = other.rank();
        let mut gram = vec![vec![BigInt::zero(); n + m]; n + m];
        for i in 0..n {
            for j in 0..n {
                gram[i][j] = self.gram[i][j].clone();
            }
        }
        for i in 0..m {
            for j in 0..m {
                gram[n + i][n + j] = other.gram[i][j].clone();
            }
        }
        GramLattice { gram }
    }

    /// nL: orthogonal sum of n copies.
    pub fn copies(&self, n: usize) -> GramLattice {
        let mut acc = GramLattice::zero();
        for _ in 0..n {
            acc = acc.direct_sum(self);
        }
        acc
    }

    pub fn det(&self) -> BigInt {
        mat::determinant(&self.gram)
    }

    /// Exact signature by symmetric diagonalization over Q (no floats).
    pub fn invariants(&self) -> LatticeInvariants {
        let n = self.rank();
        let mut m: Vec<Vec<BigRational>> = self
            .gram
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| BigRational::from_integer(x.clone()))
                    .collect()
            })
            .collect();
        let mut plus = 0;
        let mut minus = 0;
        let mut radical = 0;
        for i in 0..n {
            if m[i][i].is_zero() {
                if let Some(j) = (i + 1..n).find(|&j| !m[j][j].is_zero()) {
                    symmetric_swap(&mut m, i, j);
                } else if let Some(j) = (i + 1..n).find(|&j| !m[i][j].is_zero()) {
                    // add row/col j into i: new diagonal = 2·m[i][j]
                    for c in 0..n {
                        let t = m[j][c].clone();
                        m[i][c] += t;
                    }
                    for r in 0..n {
                        let t = m[r][j].clone();
                        m[r][i] += t;
                    }
                }
            }
            if m[i][i].is_zero() {
                radical += 1;
                continue;
            }
            let pivot = m[i][i].clone();
            for j in i + 1..n {
                if m[i][j].is_zero() {
                    continue;
                }
                let factor = &m[i][j] / &pivot;
                for c in 0..n {
                    let t = &factor * &m[i][c];
                    m[j][c] -= t;
                }
                for r in 0..n {
                    let t = &factor * &m[r][i];
                    m[r][j] -= t;
                }
            }
            if pivot.is_positive() {
                plus += 1;
            } else {
                minus += 1;
            }
        }
        LatticeInvariants {
            det: self.det(),
            sig_plus: plus,
            sig_minus: minus,
            radical,
            even: true,
        }
    }

    /// Inner product of two integer coordinate vectors.
    pub fn dot(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        let n = self.rank();
        let mut acc = BigInt::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                acc += &x[i] * &self.gram[i][j] * &y[j];
            }
        }
        acc
    }

    pub fn dot_i64(&self, x: &[i64], y: &[i64]) -> i64 {
        let xb: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
        let yb: Vec<BigInt> = y.iter().map(|&v| BigInt::from(v)).collect();
        self.dot(&xb, &yb).to_i64().expect("product out of i64")
    }

    /// Discriminant form via Smith normal form of the Gram matrix.
    pub fn discriminant_form(&self) -> Result<DiscriminantData> {
        let n = self.rank();
        let det = self.det();
        if det.is_zero() {
            return Err(Error::Domain(
                "discriminant form needs a nondegenerate lattice".into(),
            ));
        }
        let sf = mat::smith_normal_form(&self.gram);
        let diag = sf.diagonal();
        let vinv_free = (); // V columns are used directly; no inverse needed
        let _ = vinv_free;
        let mut kept = Vec::new();
        let mut orders = Vec::new();
        let mut lifts: Vec<Vec<BigRational>> = Vec::new();
        for (i, d) in diag.iter().enumerate() {
            if d > &BigInt::one() {
                kept.push(i);
                orders.push(d.to_u64().ok_or_else(|| Error::BoundExceeded {
                    what: "discriminant order".into(),
                    bound: u64::MAX,
                })?);
                let lift: Vec<BigRational> = (0..n)
                    .map(|r| BigRational::new(sf.v[r][i].clone(), d.clone()))
                    .collect();
                lifts.push(lift);
            }
        }
        let k = kept.len();
        let zero = Rational::from_integer(0);
        let mut q = vec![vec![zero; k]; k];
        for a in 0..k {
            let qa = self.dot_rational(&lifts[a], &lifts[a]);
            q[a][a] = crate::fqf::mod2(big_to_small(&qa)?);
            for b in a + 1..k {
                let v = self.dot_rational(&lifts[a], &lifts[b]);
                let v = crate::fqf::mod1(big_to_small(&v)?);
                q[a][b] = v;
                q[b][a] = v;
            }
        }
        let form = FiniteQuadraticForm::new_unchecked(orders, q);
        if BigInt::from(form.group_order()?) != det.abs() {
            return Err(Error::Inconsistency("|discr L| != |det L|".into()));
        }
        Ok(DiscriminantData {
            form,
            lifts,
            u: sf.u,
            full_orders: diag,
            kept,
            gram: self.gram.clone(),
        })
    }

    /// Rational inner product extended to L ⊗ Q.
    pub fn dot_rational(&self, x: &[BigRational], y: &[BigRational]) -> BigRational {
        let n = self.rank();
        let mut acc = BigRational::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                acc += &x[i] * BigRational::from_integer(self.gram[i][j].clone()) * &y[j];
            }
        }
        acc
    }

    /// All vectors of the given square in a definite lattice, both signs.
    pub fn short_vectors(&self, norm_target: i64, limits: &Limits) -> Result<Vec<Vec<i64>>> {
        let inv = self.invariants();
        let n = self.rank();
        if n == 0 {
            return Ok(vec![]);
        }
        let (gram, target) = if inv.sig_minus == n && inv.radical == 0 {
            (self.rescale(-1).gram, -norm_target)
        } else if inv.sig_plus == n && inv.radical == 0 {
            (self.gram.clone(), norm_target)
        } else {
            return Err(Error::Unsupported(
                "short-vector enumeration needs a definite lattice".into(),
            ));
        };
        if target < 0 {
            return Ok(vec![]);
        }
        if target == 0 {
            return Ok(vec![]);
        }
        // Rational LDL decomposition: q(x) = Σ d_k (x_k + Σ_{j>k} μ_kj x_j)².
        let mut a: Vec<Vec<BigRational>> = gram
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| BigRational::from_integer(x.clone()))
                    .collect()
            })
            .collect();
        let mut d = vec![BigRational::zero(); n];
        let mut mu = vec![vec![BigRational::zero(); n]; n];
        for k in 0..n {
            d[k] = a[k][k].clone();
            if d[k].is_zero() || d[k].is_negative() {
                return Err(Error::Inconsistency(
                    "definite Gram with nonpositive pivot".into(),
                ));
            }
            for j in k + 1..n {
                mu[k][j] = &a[k][j] / &d[k];
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &mu[k][i] * &a[k][j];
                    a[i][j] = &a[i][j] - t;
                }
            }
        }
        let mut budget = WorkBudget::new(limits, "short-vector enumeration");
        let mut out: Vec<Vec<i64>> = Vec::new();
        let mut x = vec![0i64; n];
        let target_r = BigRational::from_integer(BigInt::from(target));
        enumerate_level(&d, &mu, n, &mut x, &target_r, &mut out, &mut budget)?;
        // Keep exactly the vectors of the requested square (signs included),
        // excluding zero.
        out.retain(|v| v.iter().any(|&c| c != 0));
        let mut checked = Vec::new();
        for v in out {
            if self.dot_i64(&v, &v) == norm_target {
                checked.push(v);
            }
        }
        checked.sort();
        Ok(checked)
    }

    /// Roots (square −2) of a negative definite lattice.
    pub fn roots(&self, limits: &Limits) -> Result<Vec<Vec<i64>>> {
        self.short_vectors(-2, limits)
    }

    /// The sublattice 𝔯L generated by all roots, with its ADE decomposition.
    pub fn root_sublattice(&self, limits: &Limits) -> Result<RootDecomposition> {
        let inv = self.invariants();
        if inv.sig_minus != self.rank() || inv.radical != 0 {
            return Err(Error::Unsupported(
                "root sublattice needs negative definite".into(),
            ));
        }
        let roots = self.roots(limits)?;
        // one representative per ± pair
        let mut reps: Vec<Vec<i64>> = Vec::new();
        for r in &roots {
            let first = r.iter().find(|&&c| c != 0).copied().unwrap_or(0);
            if first > 0 {
                reps.push(r.clone());
            }
        }
        // connected components of the non-orthogonality graph
        let m = reps.len();
        let mut component = vec![usize::MAX; m];
        let mut count = 0;
        for s in 0..m {
            if component[s] != usize::MAX {
                continue;
            }
            let id = count;
            count += 1;
            let mut stack = vec![s];
            component[s] = id;
            while let Some(v) = stack.pop() {
                for w in 0..m {
                    if component[w] == usize::MAX && self.dot_i64(&reps[v], &reps[w]) != 0 {
                        component[w] = id;
                        stack.push(w);
                    }
                }
            }
        }
        let mut symbols = Vec::new();
        let mut all_cols: IMat = vec![vec![]; self.rank()];
        for id in 0..count {
            let members: Vec<&Vec<i64>> = reps
                .iter()
                .zip(&component)
                .filter(|(_, &c)| c == id)
                .map(|(r, _)| r)
                .collect();
            let mut cols: IMat = vec![vec![]; self.rank()];
            for r in &members {
                for i in 0..self.rank() {
                    cols[i].push(BigInt::from(r[i]));
                    all_cols[i].push(BigInt::from(r[i]));
                }
            }
            let basis = mat::column_span_basis(&cols);
            let rank = if basis.is_empty() { 0 } else { basis[0].len() };
            let sub = self.restrict_to(&basis);
            let det = sub.det().abs().to_u64().unwrap();
            let root_count = 2 * members.len() as u64;
            symbols.push(identify_ade(rank, det, root_count)?);
        }
        symbols.sort();
        let basis = mat::column_span_basis(&all_cols);
        let sublattice = self.restrict_to(&basis);
        Ok(RootDecomposition {
            symbols,
            sublattice,
            root_count: roots.len() as u64,
        })
    }

    /// Gram matrix of the sublattice spanned by the given (independent) columns.
    fn restrict_to(&self, basis: &IMat) -> GramLattice {
        let r = if basis.is_empty() { 0 } else { basis[0].len() };
        let n = self.rank();
        let mut gram = vec![vec![BigInt::zero(); r]; r];
        for a in 0..r {
            for b in 0..r {
                let mut acc = BigInt::zero();
                for i in 0..n {
                    for j in 0..n {
                        acc += &basis[i][a] * &self.gram[i][j] * &basis[j][b];
                    }
                }
                gram[a][b] = acc;
            }
        }
        GramLattice { gram }
    }

    /// Reflection t_a: x ↦ x − 2(a·x / a²)·a; defined iff a ∈ (a²/2)L*.
    pub fn reflection(&self, a: &[i64]) -> Result<Isometry> {
        let n = self.rank();
        let ab: Vec<BigInt> = a.iter().map(|&v| BigInt::from(v)).collect();
        let norm = self.dot(&ab, &ab);
        if norm.is_zero() {
            return Err(Error::Domain(
                "cannot reflect in an isotropic vector".into(),
            ));
        }
        let mut cols = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            let mut e = vec![BigInt::zero(); n];
            e[i] = BigInt::one();
            let prod = self.dot(&ab, &e);
            for r in 0..n {
                let num = BigInt::from(2) * &prod * &ab[r];
                let (q, rem) = num_integer::div_rem(num, norm.clone());
                if !rem.is_zero() {
                    return Err(Error::Domain(
                        "reflection is not integral: a ∉ (a²/2)L*".into(),
                    ));
                }
                cols[r][i] = if r == i { BigInt::one() - q } else { -q };
            }
        }
        let t = Isometry { matrix: cols };
        if !t.is_isometry_of(self) {
            return Err(Error::Inconsistency(
                "reflection failed isometry check".into(),
            ));
        }
        Ok(t)
    }

    /// Finite-index extension defined by isotropic kernel lifts in L* ⊗ Q.
    pub fn finite_index_extension(
        &self,
        kernel_lifts: &[Vec<BigRational>],
    ) -> Result<ExtensionResult> {
        let n = self.rank();
        if n == 0 || kernel_lifts.is_empty() {
            return Ok(ExtensionResult {
                lattice: self.clone(),
                basis: identity_rational(n),
                index: 1,
            });
        }
        // common denominator
        let mut denom = BigInt::one();
        for lift in kernel_lifts {
            if lift.len() != n {
                return Err(Error::Domain("kernel lift has wrong length".into()));
            }
            for v in lift {
                denom = num_integer::lcm(denom.clone(), v.denom().clone());
            }
        }
        // integer columns: denom·e_i and denom·lift
        let mut cols: IMat = vec![vec![]; n];
        for i in 0..n {
            for j in 0..n {
                cols[j].push(if i == j {
                    denom.clone()
                } else {
                    BigInt::zero()
                });
            }
        }
        for lift in kernel_lifts {
            for j in 0..n {
                let scaled = &lift[j] * BigRational::from_integer(denom.clone());
                debug_assert!(scaled.is_integer());
                cols[j].push(scaled.to_integer());
            }
        }
        let b = mat::column_basis(&cols);
        // T = B / denom; index = denom^n / |det B|
        let det_b = mat::determinant(&b).abs();
        let denom_pow = num_traits::pow(denom.clone(), n);
        let (index, rem) = num_integer::div_rem(denom_pow, det_b);
        if !rem.is_zero() {
            return Err(Error::Inconsistency("extension index not integral".into()));
        }
        let basis: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| BigRational::new(b[i][j].clone(), denom.clone()))
                    .collect()
            })
            .collect();
        // new Gram = Tᵀ G T — must be integral and even
        let mut gram = vec![vec![BigInt::zero(); n]; n];
        for a in 0..n {
            let col_a: Vec<BigRational> = (0..n).map(|i| basis[i][a].clone()).collect();
            for c in a..n {
                let col_c: Vec<BigRational> = (0..n).map(|i| basis[i][c].clone()).collect();
                let v = self.dot_rational(&col_a, &col_c);
                if !v.is_integer() {
                    return Err(Error::Domain(
                        "kernel is not isotropic: extension not integral".into(),
                    ));
                }
                let v = v.to_integer();
                if a == c && (&v % 2u8) != BigInt::zero() {
                    return Err(Error::Domain(
                        "kernel is not isotropic: extension not even".into(),
                    ));
                }
                gram[a][c] = v.clone();
                gram[c][a] = v;
            }
        }
        let index = index.to_u64().ok_or_else(|| Error::BoundExceeded {
            what: "extension index".into(),
            bound: u64::MAX,
        })?;
        Ok(ExtensionResult {
            lattice: GramLattice { gram },
            basis,
            index,
        })
    }

    /// Complete isometry group O(L) of a definite lattice by backtracking
    /// over images of basis vectors among vectors of equal norm.
    pub fn definite_isometries(&self, limits: &Limits) -> Result<Vec<Isometry>> {
        let n = self.rank();
        if n == 0 {
            return Ok(vec![Isometry { matrix: vec![] }]);
        }
        if n > ISOMETRY_RANK_BOUND {
            return Err(Error::BoundExceeded {
                what: format!("definite isometry enumeration at rank {n}"),
                bound: ISOMETRY_RANK_BOUND as u64,
            });
        }
        let inv = self.invariants();
        if inv.radical != 0 || (inv.sig_plus != n && inv.sig_minus != n) {
            return Err(Error::Unsupported(
                "isometry enumeration needs a definite lattice".into(),
            ));
        }
        // candidate images per basis vector: vectors of equal norm
        let mut candidates: Vec<Vec<Vec<i64>>> = Vec::with_capacity(n);
        for i in 0..n {
            let norm = self.gram[i][i].to_i64().unwrap();
            candidates.push(self.short_vectors(norm, limits)?);
        }
        let mut budget = WorkBudget::new(limits, "definite isometry enumeration");
        let mut out = Vec::new();
        let mut chosen: Vec<Vec<i64>> = Vec::new();
        self.isometry_backtrack(&candidates, &mut chosen, &mut out, &mut budget, limits)?;
        Ok(out)
    }

    fn isometry_backtrack(
        &self,
        candidates: &[Vec<Vec<i64>>],
        chosen: &mut Vec<Vec<i64>>,
        out: &mut Vec<Isometry>,
        budget: &mut WorkBudget,
        limits: &Limits,
    ) -> Result<()> {
        let n = self.rank();
        let i = chosen.len();
        if i == n {
            let matrix: IMat = (0..n)
                .map(|r| (0..n).map(|c| BigInt::from(chosen[c][r])).collect())
                .collect();
            let t = Isometry { matrix };
            // Gram conditions were enforced incrementally; the matrix is a
            // full isometry iff it is invertible over Z, which TᵀGT = G
            // already forces for nondegenerate G.
            out.push(t);
            if out.len() as u64 > limits.max_group_order {
                return Err(Error::BoundExceeded {
                    what: "definite isometry group order".into(),
                    bound: limits.max_group_order,
                });
            }
            return Ok(());
        }
        'next: for cand in &candidates[i] {
            budget.spend(1)?;
            for (j, prev) in chosen.iter().enumerate() {
                if self.dot_i64(cand, prev) != self.gram[i][j].to_i64().unwrap() {
                    continue 'next;
                }
            }
            chosen.push(cand.clone());
            self.isometry_backtrack(candidates, chosen, out, budget, limits)?;
            chosen.pop();
        }
        Ok(())
    }

    /// The induced automorphism of discr L given an isometry of L.
    pub fn discriminant_action(
        &self,
        disc: &DiscriminantData,
        t: &Isometry,
    ) -> Result<FormAutomorphism> {
        let mut images = Vec::with_capacity(disc.lifts.len());
        for lift in &disc.lifts {
            let moved = t.apply_rational(lift);
            images.push(disc.class_of(&moved)?);
        }
        let auto = FormAutomorphism::from_images(&disc.form, &images);
        if !auto.preserves(&disc.form) {
            return Err(Error::Inconsistency(
                "isometry induced a non-automorphism on the discriminant".into(),
            ));
        }
        Ok(auto)
    }

    /// +1 iff t preserves the orientation of maximal positive definite
    /// subspaces; implemented for positive definite lattices, where it is
    /// det T.
    pub fn orientation_character(&self, t: &Isometry) -> Result<i8> {
        let inv = self.invariants();
        if inv.sig_plus != self.rank() || inv.radical != 0 {
            return Err(Error::Unsupported(
                "orientation character implemented for positive definite lattices only".into(),
            ));
        }
        let det = mat::determinant(&t.matrix);
        if det == BigInt::one() {
            Ok(1)
        } else if det == -BigInt::one() {
            Ok(-1)
        } else {
            Err(Error::Domain("not an isometry (det ≠ ±1)".into()))
        }
    }
}

fn enumerate_level(
    d: &[BigRational],
    mu: &[Vec<BigRational>],
    level: usize,
    x: &mut Vec<i64>,
    remaining: &BigRational,
    out: &mut Vec<Vec<i64>>,
    budget: &mut WorkBudget,
) -> Result<()> {
    if level == 0 {
        if remaining.is_zero() {
            out.push(x.clone());
        }
        return Ok(());
    }
    let k = level - 1;
    let n = x.len();
    // center c_k = Σ_{j>k} μ_kj x_j
    let mut c = BigRational::zero();
    for j in k + 1..n {
        if x[j] != 0 {
            c += &mu[k][j] * BigRational::from_integer(BigInt::from(x[j]));
        }
    }
    // d_k (x_k + c)² ≤ remaining
    let bound2 = remaining / &d[k];
    if bound2.is_negative() {
        return Ok(());
    }
    let r_up = sqrt_upper_bound(&bound2);
    let lo = ceil_rational(&(-&c - &r_up));
    let hi = floor_rational(&(-&c + &r_up));
    let mut v = lo;
    while v <= hi {
        budget.spend(1)?;
        x[k] = v.to_i64().ok_or_else(|| Error::BoundExceeded {
            what: "short-vector coordinate".into(),
            bound: u64::MAX,
        })?;
        let off = BigRational::from_integer(v.clone()) + &c;
        let term = &d[k] * &off * &off;
        if term <= *remaining {
            let next = remaining - term;
            enumerate_level(d, mu, k, x, &next, out, budget)?;
        }
        v += BigInt::one();
    }
    x[k] = 0;
    Ok(())
}

/// An upper bound for √r, exact enough for pruning (candidates are verified).
fn sqrt_upper_bound(r: &BigRational) -> BigRational {
    if r.is_negative() {
        return BigRational::zero();
    }
    let prod = r.numer() * r.denom();
    let s = prod.sqrt() + BigInt::one();
    BigRational::new(s, r.denom().clone())
}

fn floor_rational(r: &BigRational) -> BigInt {
    r.floor().to_integer()
}

fn ceil_rational(r: &BigRational) -> BigInt {
    r.ceil().to_integer()
}

fn symmetric_swap(m: &mut [Vec<BigRational>], i: usize, j: usize) {
    m.swap(i, j);
    for row in m.iter_mut() {
        row.swap(i, j);
    }
}

fn big_to_small(v: &BigRational) -> Result<Rational> {
    let n = v.numer().to_i128().ok_or_else(|| Error::BoundExceeded {
        what: "rational numerator".into(),
        bound: u64::MAX,
    })?;
    let d = v.denom().to_i128().ok_or_else(|| Error::BoundExceeded {
        what: "rational denominator".into(),
        bound: u64::MAX,
    })?;
    Ok(Rational::new(n, d))
}

fn identity_rational(n: usize) -> Vec<Vec<BigRational>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

impl Isometry {
    pub fn identity(n: usize) -> Isometry {
        Isometry {
            matrix: mat::identity(n),
        }
    }

    pub fn minus_identity(n: usize) -> Isometry {
        let mut m = mat::identity(n);
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = -BigInt::one();
        }
        Isometry { matrix: m }
    }

    pub fn det(&self) -> BigInt {
        mat::determinant(&self.matrix)
    }

    pub fn is_isometry_of(&self, l: &GramLattice) -> bool {
        let tt = mat::transpose(&self.matrix);
        let prod = mat::mul(&mat::mul(&tt, l.gram()), &self.matrix);
        prod == *l.gram()
    }

    pub fn compose(&self, other: &Isometry) -> Isometry {
        Isometry {
            matrix: mat::mul(&self.matrix, &other.matrix),
        }
    }

    pub fn apply_rational(&self, x: &[BigRational]) -> Vec<BigRational> {
        let n = self.matrix.len();
        (0..n)
            .map(|i| {
                let mut acc = BigRational::zero();
                for j in 0..n {
                    acc += BigRational::from_integer(self.matrix[i][j].clone()) * &x[j];
                }
                acc
            })
            .collect()
    }
}

impl DiscriminantData {
    /// Coordinates of the class of a dual vector x ∈ L* in the generator
    /// basis of the discriminant form.
    pub fn class_of(&self, x: &[BigRational]) -> Result<Vec<u64>> {
        let n = self.gram.len();
        // G·x must be integral (x ∈ L*)
        let mut gx = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = BigRational::zero();
            for j in 0..n {
                acc += BigRational::from_integer(self.gram[i][j].clone()) * &x[j];
            }
            if !acc.is_integer() {
                return Err(Error::Domain("vector is not in the dual lattice".into()));
            }
            gx.push(acc.to_integer());
        }
        // coordinates: U·(G·x) mod diag
        let mut coords = Vec::with_capacity(self.kept.len());
        for (pos, &i) in self.kept.iter().enumerate() {
            let mut acc = BigInt::zero();
            for j in 0..n {
                acc += &self.u[i][j] * &gx[j];
            }
            let d = &self.full_orders[i];
            let r = ((acc % d) + d) % d;
            let _ = pos;
            coords.push(r.to_u64().unwrap());
        }
        Ok(coords)
    }
}

/// Result of a finite-index extension: the extended lattice, its basis
/// expressed in the old rational coordinates, and the index [L' : L].
#[derive(Debug, Clone)]
pub struct ExtensionResult {
    pub lattice: GramLattice,
    pub basis: Vec<Vec<BigRational>>,
    pub index: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AdeSymbol {
    A(u32),
    D(u32),
    E(u32),
}

impl AdeSymbol {
    pub fn rank(&self) -> u32 {
        match *self {
            AdeSymbol::A(n) | AdeSymbol::D(n) | AdeSymbol::E(n) => n,
        }
    }
}

impl std::fmt::Display for AdeSymbol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            AdeSymbol::A(n) => write!(f, "A{n}"),
            AdeSymbol::D(n) => write!(f, "D{n}"),
            AdeSymbol::E(n) => write!(f, "E{n}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RootDecomposition {
    pub symbols: Vec<AdeSymbol>,
    pub sublattice: GramLattice,
    pub root_count: u64,
}

/// Identify an irreducible root lattice by (rank, |det|, root count).
fn identify_ade(rank: usize, det: u64, root_count: u64) -> Result<AdeSymbol> {
    let n = rank as u64;
    if det == n + 1 && root_count == n * (n + 1) {
        return Ok(AdeSymbol::A(rank as u32));
    }
    if rank >= 4 && det == 4 && root_count == 2 * n * (n - 1) {
        return Ok(AdeSymbol::D(rank as u32));
    }
    match (rank, det, root_count) {
        (6, 3, 72) => return Ok(AdeSymbol::E(6)),
        (7, 2, 126) => return Ok(AdeSymbol::E(7)),
        (8, 1, 240) => return Ok(AdeSymbol::E(8)),
        _ => {}
    }
    Err(Error::Inconsistency(format!(
        "component (rank {rank}, det {det}, {root_count} roots) is not an ADE fingerprint"
    )))
}

// ---------------------------------------------------------------------------
// Gram text format: a leading rank header, then the rows.
// ---------------------------------------------------------------------------

pub fn render_gram(l: &GramLattice) -> String {
    let mut out = format!("{}\n", l.rank());
    for row in l.gram() {
        let line: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_gram(text: &str) -> Result<GramLattice> {
    let mut tokens = text.split_whitespace();
    let n: usize = tokens
        .next()
        .ok_or_else(|| Error::Domain("empty Gram text".into()))?
        .parse()
        .map_err(|_| Error::Domain("bad rank header".into()))?;
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let mut row = Vec::with_capacity(n);
        for _ in 0..n {
            let v: i64 = tokens
                .next()
                .ok_or_else(|| Error::Domain("truncated Gram text".into()))?
                .parse()
                .map_err(|_| Error::Domain("bad Gram entry".into()))?;
            row.push(v);
        }
        rows.push(row);
    }
    if tokens.next().is_some() {
        return Err(Error::Domain("trailing tokens after Gram matrix".into()));
    }
    GramLattice::from_rows(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fqf::{is_isomorphic, parse_form_expression};

    fn form(expr: &str) -> FiniteQuadraticForm {
        crate::fqf::from_blocks(&parse_form_expression(expr).unwrap()).unwrap()
    }

    fn a2_neg() -> GramLattice {
        GramLattice::from_rows(&[vec![-2, 1], vec![1, -2]]).unwrap()
    }

    #[test]
    fn hyperbolic_invariants() {
        let u = GramLattice::hyperbolic();
        let inv = u.invariants();
        assert_eq!(inv.det, BigInt::from(-1));
        assert_eq!((inv.sig_plus, inv.sig_minus), (1, 1));
        let zero = GramLattice::zero();
        assert_eq!(zero.det(), BigInt::one());
        assert_eq!(
            (zero.invariants().sig_plus, zero.invariants().sig_minus),
            (0, 0)
        );
    }

    #[test]
    fn m425_invariants() {
        let m = GramLattice::from_rows(&[vec![8, 2], vec![2, 10]]).unwrap();
        let inv = m.invariants();
        assert_eq!(inv.det, BigInt::from(76));
        assert_eq!((inv.sig_plus, inv.sig_minus), (2, 0));
    }

    #[test]
    fn discr_a2_is_table_entry() {
        let d = a2_neg().discriminant_form().unwrap();
        assert!(is_isomorphic(&d.form, &form("<-2/3>")));
    }

    #[test]
    fn discr_rank1() {
        // ⟨2⟩ → ⟨1/2⟩
        let l = GramLattice::rank1(2).unwrap();
        let d = l.discriminant_form().unwrap();
        assert!(is_isomorphic(&d.form, &form("<1/2>")));
    }

    #[test]
    fn roots_of_a2() {
        let roots = a2_neg().roots(&Limits::default()).unwrap();
        assert_eq!(roots.len(), 6);
        let dec = a2_neg().root_sublattice(&Limits::default()).unwrap();
        assert_eq!(dec.symbols, vec![AdeSymbol::A(2)]);
    }

    #[test]
    fn square_two_vectors() {
        // M(1,0,19) = [[2,0],[0,38]]: 2x² + 38y² = 2 forces y = 0, x = ±1.
        let m = GramLattice::from_rows(&[vec![2, 0], vec![0, 38]]).unwrap();
        let v = m.short_vectors(2, &Limits::default()).unwrap();
        assert_eq!(v.len(), 2);
        // M(4,2,5): minimum is 8, no vectors of square 2.
        let m = GramLattice::from_rows(&[vec![8, 2], vec![2, 10]]).unwrap();
        assert!(m.short_vectors(2, &Limits::default()).unwrap().is_empty());
    }

    #[test]
    fn reflection_involution_and_trivial_discr_action() {
        let a2 = a2_neg();
        let t = a2.reflection(&[1, 0]).unwrap();
        assert!(t.is_isometry_of(&a2));
        let sq = t.compose(&t);
        assert_eq!(sq, Isometry::identity(2));
        // a² = ±2 acts trivially on the discriminant
        let d = a2.discriminant_form().unwrap();
        let act = a2.discriminant_action(&d, &t).unwrap();
        assert!(act.is_identity(&d.form));
        // reflection in u on M(1,0,2) is diag(-1, 1)
        let m = GramLattice::from_rows(&[vec![2, 0], vec![0, 4]]).unwrap();
        let tu = m.reflection(&[1, 0]).unwrap();
        assert_eq!(tu.matrix, mat::from_i64(&[vec![-1, 0], vec![0, 1]]));
    }

    #[test]
    fn extension_3a2_to_e6() {
        // 3A₂ extended by the isotropic diagonal Z/3 is E₆: rank 6, det 3,
        // 72 roots.
        let l = a2_neg().copies(3);
        let d = l.discriminant_form().unwrap();
        // find an isotropic order-3 element of 3⟨-2/3⟩ involving all parts
        let limits = Limits::default();
        let iso = crate::fqf::isotropic_subgroups(&d.form, &limits).unwrap();
        let order3 = iso
            .iter()
            .find(|s| s.order() == 3)
            .expect("isotropic Z/3 exists");
        let lifts: Vec<Vec<BigRational>> = order3
            .gens
            .iter()
            .map(|g| {
                let mut acc = vec![BigRational::zero(); 6];
                for (c, lift) in g.iter().zip(&d.lifts) {
                    for i in 0..6 {
                        acc[i] += BigRational::from_integer(BigInt::from(*c)) * &lift[i];
                    }
                }
                acc
            })
            .collect();
        let ext = l.finite_index_extension(&lifts).unwrap();
        assert_eq!(ext.index, 3);
        assert_eq!(ext.lattice.det().abs(), BigInt::from(3));
        let dec = ext.lattice.root_sublattice(&limits).unwrap();
        assert_eq!(dec.symbols, vec![AdeSymbol::E(6)]);
        assert_eq!(dec.root_count, 72);
    }

    #[test]
    fn definite_isometry_groups_rank2() {
        let limits = Limits::default();
        // M(1,0,1) = 2A₁(-1)-type positive: dihedral of order 8.
        let m = GramLattice::from_rows(&[vec![2, 0], vec![0, 2]]).unwrap();
        assert_eq!(m.definite_isometries(&limits).unwrap().len(), 8);
        // M(4,2,5): only ±id.
        let m = GramLattice::from_rows(&[vec![8, 2], vec![2, 10]]).unwrap();
        assert_eq!(m.definite_isometries(&limits).unwrap().len(), 2);
        // M(1,1,1) = A₂(-1)-type: order 12.
        let m = GramLattice::from_rows(&[vec![2, 1], vec![1, 2]]).unwrap();
        assert_eq!(m.definite_isometries(&limits).unwrap().len(), 12);
    }

    #[test]
    fn orientation_character_positive_definite() {
        let m = GramLattice::from_rows(&[vec![2, 0], vec![0, 4]]).unwrap();
        let minus = Isometry::minus_identity(2);
        assert_eq!(m.orientation_character(&minus).unwrap(), 1);
        let refl = m.reflection(&[1, 0]).unwrap();
        assert_eq!(m.orientation_character(&refl).unwrap(), -1);
        // multiplicative
        let prod = refl.compose(&minus);
        assert_eq!(m.orientation_character(&prod).unwrap(), -1);
    }

    #[test]
    fn gram_text_round_trip() {
        let u = GramLattice::hyperbolic();
        let text = render_gram(&u);
        assert_eq!(text, "2\n0 1\n1 0\n");
        let back = parse_gram(&text).unwrap();
        assert_eq!(back, u);
        assert!(parse_gram("2\n0 1\n1").is_err());
    }

    #[test]
    fn discr_of_direct_sum_is_sum_of_discrs() {
        let a = a2_neg();
        let b = GramLattice::rank1(-4).unwrap();
        let sum = a.direct_sum(&b);
        let lhs = sum.discriminant_form().unwrap().form;
        let rhs = a
            .discriminant_form()
            .unwrap()
            .form
            .direct_sum(&b.discriminant_form().unwrap().form);
        assert!(is_isomorphic(&lhs, &rhs));
    }

    #[test]
    fn det_multiplicative_under_sum() {
        let a = a2_neg();
        let b = GramLattice::rank1(2).unwrap();
        assert_eq!(a.direct_sum(&b).det(), a.det() * b.det());
    }

    #[test]
    fn van_der_blij_smoke() {
        // Br(discr L) ≡ σ₊ − σ₋ (mod 8) on a few lattices.
        for l in [
            a2_neg(),
            GramLattice::rank1(2).unwrap(),
            GramLattice::rank1(-6).unwrap(),
            GramLattice::hyperbolic(),
            GramLattice::from_rows(&[vec![2, 1], vec![1, 50]]).unwrap(),
        ] {
            let inv = l.invariants();
            let d = l.discriminant_form().unwrap();
            let br = crate::fqf::brown_gauss(&d.form) as i64;
            let sig = inv.sig_plus as i64 - inv.sig_minus as i64;
            assert_eq!(
                br.rem_euclid(8),
                sig.rem_euclid(8),
                "lattice {:?}",
                l.gram()
            );
        }
    }
}
