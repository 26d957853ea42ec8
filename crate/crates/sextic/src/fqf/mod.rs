//! Finite quadratic forms: a finite abelian group together with a
//! nonsingular quadratic form q: G → Q/2Z and its associated bilinear form
//! b: G × G → Q/Z, satisfying q(x+y) = q(x) + q(y) + 2b(x,y).
//!
//! These are the discriminant forms of even integral lattices. All values are
//! exact rationals; there is no floating point anywhere in the module.

mod auto;
mod blocks;
mod brown;
mod normal;
mod sub;

pub use auto::{automorphisms, close_generated, FormAutomorphism};
pub use blocks::{from_blocks, parse_form_expression, render_blocks, FormBlock};
pub use brown::{brown_blocks, brown_gauss};
pub use normal::{
    brute_isomorphic, det_2_class, det_p_class, group_invariants, is_isomorphic, normal_form,
    Det2Class, DetClass,
};
pub use sub::{isotropic_subgroups, quotient_form, subgroup_perp, QuotientData, Subgroup};

use crate::config::Limits;
use crate::error::{Error, Result};
use num_rational::Ratio;

pub type Rational = Ratio<i128>;
/// Element of the group, as generator coordinates reduced modulo the orders.
pub type Element = Vec<u64>;

/// Reduce a rational into [0, 2) — values of q live in Q/2Z.
pub fn mod2(r: Rational) -> Rational {
    let two = Rational::from_integer(2);
    let f = (r / two).floor();
    r - f * two
}

/// Reduce a rational into [0, 1) — values of b live in Q/Z.
pub fn mod1(r: Rational) -> Rational {
    r - r.floor()
}

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteQuadraticForm {
    /// Generator orders d_1, …, d_n (each ≥ 2); the group is ⊕ Z/d_i.
    orders: Vec<u64>,
    /// Symmetric matrix: diagonal = q(g_i) mod 2, off-diagonal = b(g_i, g_j) mod 1.
    q: Vec<Vec<Rational>>,
}

impl std::fmt::Debug for FiniteQuadraticForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FQF(orders={:?}, q={:?})", self.orders, self.q)
    }
}

impl FiniteQuadraticForm {
    /// The trivial form on the trivial group.
    pub fn trivial() -> Self {
        FiniteQuadraticForm {
            orders: vec![],
            q: vec![],
        }
    }

    /// Construct without validation; callers guarantee the invariants.
    pub fn new_unchecked(orders: Vec<u64>, q: Vec<Vec<Rational>>) -> Self {
        debug_assert_eq!(orders.len(), q.len());
        let mut f = FiniteQuadraticForm { orders, q };
        f.normalize_entries();
        f
    }

    /// Construct with full validation of shape, denominators, and (for groups
    /// within the enumeration bound) nonsingularity.
    pub fn new(orders: Vec<u64>, q: Vec<Vec<Rational>>, limits: &Limits) -> Result<Self> {
        if orders.iter().any(|&d| d < 2) {
            return Err(Error::Domain("generator orders must be >= 2".into()));
        }
        let n = orders.len();
        if q.len() != n || q.iter().any(|row| row.len() != n) {
            return Err(Error::Domain("q matrix shape mismatch".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if q[i][j] != q[j][i] {
                    return Err(Error::Domain("q matrix must be symmetric".into()));
                }
            }
        }
        let f = Self::new_unchecked(orders, q);
        f.validate(limits)?;
        Ok(f)
    }

    fn normalize_entries(&mut self) {
        let n = self.orders.len();
        for i in 0..n {
            for j in 0..n {
                self.q[i][j] = if i == j {
                    mod2(self.q[i][j])
                } else {
                    mod1(self.q[i][j])
                };
            }
        }
    }

    /// Re-run the constructor checks on an existing form (shape,
    /// denominator compatibility, nonsingularity within the bound).
    pub fn validated(self, limits: &Limits) -> Result<Self> {
        self.validate(limits)?;
        Ok(self)
    }

    fn validate(&self, limits: &Limits) -> Result<()> {
        let n = self.orders.len();
        for i in 0..n {
            let d = self.orders[i] as i128;
            // q(d_i g_i) = d_i^2 q_ii must vanish in Q/2Z.
            if mod2(self.q[i][i] * Rational::from_integer(d * d)) != Rational::from_integer(0) {
                return Err(Error::Domain(format!(
                    "q(g_{i}) = {} incompatible with order {d}",
                    self.q[i][i]
                )));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if mod1(self.q[i][j] * Rational::from_integer(d)) != Rational::from_integer(0) {
                    return Err(Error::Domain(format!(
                        "b(g_{i}, g_{j}) = {} incompatible with order {d}",
                        self.q[i][j]
                    )));
                }
            }
        }
        let order = self.group_order()?;
        if order <= limits.max_group_order {
            for x in self.elements() {
                if x.iter().all(|&c| c == 0) {
                    continue;
                }
                let in_radical =
                    (0..n).all(|j| self.b_of(&x, &unit_element(n, j)) == Rational::from_integer(0));
                if in_radical {
                    return Err(Error::Domain(format!(
                        "form is singular: radical contains {x:?}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn generator_count(&self) -> usize {
        self.orders.len()
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn group_order(&self) -> Result<u64> {
        let mut acc: u64 = 1;
        for &d in &self.orders {
            acc = acc.checked_mul(d).ok_or_else(|| Error::BoundExceeded {
                what: "group order overflow".into(),
                bound: u64::MAX,
            })?;
        }
        Ok(acc)
    }

    /// q(x) reduced into [0, 2).
    pub fn q_of(&self, x: &[u64]) -> Rational {
        let n = self.orders.len();
        let mut acc = Rational::from_integer(0);
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            let xi = Rational::from_integer(x[i] as i128);
            acc += self.q[i][i] * xi * xi;
            for j in i + 1..n {
                if x[j] == 0 {
                    continue;
                }
                let xj = Rational::from_integer(x[j] as i128);
                acc += Rational::from_integer(2) * self.q[i][j] * xi * xj;
            }
        }
        mod2(acc)
    }

    /// b(x, y) reduced into [0, 1).
    pub fn b_of(&self, x: &[u64], y: &[u64]) -> Rational {
        let n = self.orders.len();
        let mut acc = Rational::from_integer(0);
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n {
                if y[j] == 0 {
                    continue;
                }
                acc += self.q[i][j]
                    * Rational::from_integer(x[i] as i128)
                    * Rational::from_integer(y[j] as i128);
            }
        }
        mod1(acc)
    }

    pub fn reduce(&self, x: &[i128]) -> Element {
        x.iter()
            .zip(&self.orders)
            .map(|(&c, &d)| c.rem_euclid(d as i128) as u64)
            .collect()
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Element {
        x.iter()
            .zip(y)
            .zip(&self.orders)
            .map(|((&a, &b), &d)| (a + b) % d)
            .collect()
    }

    pub fn neg(&self, x: &[u64]) -> Element {
        x.iter()
            .zip(&self.orders)
            .map(|(&a, &d)| (d - a % d) % d)
            .collect()
    }

    pub fn scale(&self, x: &[u64], k: u64) -> Element {
        x.iter()
            .zip(&self.orders)
            .map(|(&a, &d)| ((a as u128 * k as u128) % d as u128) as u64)
            .collect()
    }

    pub fn zero_element(&self) -> Element {
        vec![0; self.orders.len()]
    }

    pub fn order_of(&self, x: &[u64]) -> u64 {
        let mut acc: u64 = 1;
        for (&c, &d) in x.iter().zip(&self.orders) {
            let o = d / crate::arith::gcd_i64(c as i64, d as i64) as u64;
            acc = crate::arith::lcm_u64(acc, o);
        }
        acc
    }

    /// Iterate over all group elements (mixed-radix counting).
    pub fn elements(&self) -> ElementIter {
        ElementIter {
            orders: self.orders.clone(),
            current: Some(vec![0; self.orders.len()]),
        }
    }

    /// Orthogonal direct sum.
    pub fn direct_sum(&self, other: &FiniteQuadraticForm) -> FiniteQuadraticForm {
        let n = self.orders.len();
        let m = other.orders.len();
        let mut orders = self.orders.clone();
        orders.extend_from_slice(&other.orders);
        let zero = Rational::from_integer(0);
        let mut q = vec![vec![zero; n + m]; n + m];
        for i in 0..n {
            for j in 0..n {
                q[i][j] = self.q[i][j];
            }
        }
        for i in 0..m {
            for j in 0..m {
                q[n + i][n + j] = other.q[i][j];
            }
        }
        FiniteQuadraticForm::new_unchecked(orders, q)
    }

    /// The form with all values negated (discriminant of L(-1)).
    pub fn negate(&self) -> FiniteQuadraticForm {
        let q = self
            .q
            .iter()
            .map(|row| row.iter().map(|&v| -v).collect())
            .collect();
        FiniteQuadraticForm::new_unchecked(self.orders.clone(), q)
    }

    /// Primes dividing the group order.
    pub fn primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = Vec::new();
        for &d in &self.orders {
            for (p, _) in crate::arith::factorize(d) {
                if !ps.contains(&p) {
                    ps.push(p);
                }
            }
        }
        ps.sort_unstable();
        ps
    }

    /// Restriction to the p-primary component, re-orthogonalized.
    pub fn primary_part(&self, p: u64) -> FiniteQuadraticForm {
        let mut gens: Vec<(usize, u64, u64)> = Vec::new(); // (index, cofactor m, p-order)
        for (i, &d) in self.orders.iter().enumerate() {
            let pp = crate::arith::p_part(d, p);
            if pp > 1 {
                gens.push((i, d / pp, pp));
            }
        }
        let k = gens.len();
        let zero = Rational::from_integer(0);
        let mut q = vec![vec![zero; k]; k];
        for a in 0..k {
            let (i, m_i, _) = gens[a];
            let mi = Rational::from_integer(m_i as i128);
            q[a][a] = mod2(self.q[i][i] * mi * mi);
            for b in a + 1..k {
                let (j, m_j, _) = gens[b];
                let v = mod1(self.q[i][j] * mi * Rational::from_integer(m_j as i128));
                q[a][b] = v;
                q[b][a] = v;
            }
        }
        let orders = gens.iter().map(|&(_, _, pp)| pp).collect();
        FiniteQuadraticForm::new_unchecked(orders, q)
    }

    /// Minimal generator counts: ℓ(𝓛) and ℓ_p(𝓛) per prime, plus parity.
    pub fn rank_invariants(&self) -> RankInvariants {
        let mut l_p = Vec::new();
        let mut l = 0usize;
        for p in self.primes() {
            let lp = self.orders.iter().filter(|&&d| d % p == 0).count();
            l = l.max(lp);
            l_p.push((p, lp));
        }
        RankInvariants {
            l,
            l_p,
            even: self.is_even(),
        }
    }

    pub fn l_p(&self, p: u64) -> usize {
        self.orders.iter().filter(|&&d| d % p == 0).count()
    }

    /// Even iff x² is an integer for every element x of order dividing 2.
    pub fn is_even(&self) -> bool {
        let idx: Vec<usize> = (0..self.orders.len())
            .filter(|&i| self.orders[i] % 2 == 0)
            .collect();
        let m = idx.len();
        for mask in 1u64..(1 << m) {
            let mut x = self.zero_element();
            for (bit, &i) in idx.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    x[i] = self.orders[i] / 2;
                }
            }
            if !self.q_of(&x).is_integer() {
                return false;
            }
        }
        true
    }

    /// Lift an element to integer coordinates.
    pub fn lift(&self, x: &[u64]) -> Vec<i128> {
        x.iter().map(|&c| c as i128).collect()
    }
}

fn unit_element(n: usize, j: usize) -> Element {
    let mut e = vec![0; n];
    e[j] = 1;
    e
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankInvariants {
    pub l: usize,
    pub l_p: Vec<(u64, usize)>,
    pub even: bool,
}

pub struct ElementIter {
    orders: Vec<u64>,
    current: Option<Element>,
}

impl Iterator for ElementIter {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        let current = self.current.take()?;
        let mut next = current.clone();
        let mut i = 0;
        loop {
            if i == self.orders.len() {
                self.current = None;
                break;
            }
            next[i] += 1;
            if next[i] < self.orders[i] {
                self.current = Some(next);
                break;
            }
            next[i] = 0;
            i += 1;
        }
        Some(current)
    }
}
