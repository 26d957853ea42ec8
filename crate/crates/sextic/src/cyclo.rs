//! Exact arithmetic in cyclotomic rings `Z[ζ_L]`, used to evaluate Gauss sums
//! without floating point.
//!
//! Elements are integer coefficient vectors in `Z[x]/(x^L - 1)` with x standing
//! for ζ_L; equality in `Z[ζ_L]` is divisibility of the difference by the L-th
//! cyclotomic polynomial Φ_L. Coefficients are checked i128: inputs are
//! desk-scale and every operation aborts loudly on overflow instead of
//! wrapping.

use crate::arith::{factorize, legendre};
use std::collections::HashMap;
use std::sync::Mutex;
use std::sync::OnceLock;

#[inline]
fn cadd(a: i128, b: i128) -> i128 {
    a.checked_add(b).expect("cyclotomic coefficient overflow")
}

#[inline]
fn cmul(a: i128, b: i128) -> i128 {
    a.checked_mul(b).expect("cyclotomic coefficient overflow")
}

/// An element of `Z[ζ_L]` as a length-L coefficient vector over the basis
/// 1, ζ, ζ², …, ζ^{L-1} (redundant; equality goes through Φ_L).
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    pub level: usize,
    pub coeffs: Vec<i128>,
}

impl Cyclotomic {
    pub fn zero(level: usize) -> Self {
        Cyclotomic {
            level,
            coeffs: vec![0; level],
        }
    }

    pub fn from_integer(level: usize, n: i128) -> Self {
        let mut z = Self::zero(level);
        z.coeffs[0] = n;
        z
    }

    /// ζ_L^k as an element.
    pub fn root_power(level: usize, k: i64) -> Self {
        let mut z = Self::zero(level);
        let idx = k.rem_euclid(level as i64) as usize;
        z.coeffs[idx] = 1;
        z
    }

    /// Add n · ζ_L^k in place.
    pub fn add_root_power(&mut self, k: i64, n: i64) {
        let idx = k.rem_euclid(self.level as i64) as usize;
        self.coeffs[idx] = cadd(self.coeffs[idx], n as i128);
    }

    pub fn sub(&self, other: &Cyclotomic) -> Cyclotomic {
        debug_assert_eq!(self.level, other.level);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| cadd(a, -b))
            .collect();
        Cyclotomic {
            level: self.level,
            coeffs,
        }
    }

    pub fn mul(&self, other: &Cyclotomic) -> Cyclotomic {
        debug_assert_eq!(self.level, other.level);
        let l = self.level;
        let mut out = Cyclotomic::zero(l);
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let idx = (i + j) % l;
                out.coeffs[idx] = cadd(out.coeffs[idx], cmul(a, b));
            }
        }
        out
    }

    /// True iff this element is zero in `Z[ζ_L]`, i.e. Φ_L divides it.
    pub fn is_zero_exact(&self) -> bool {
        if self.coeffs.iter().all(|&c| c == 0) {
            return true;
        }
        let phi = cyclotomic_polynomial(self.level);
        poly_divisible(&self.coeffs, &phi)
    }

    pub fn equals(&self, other: &Cyclotomic) -> bool {
        self.sub(other).is_zero_exact()
    }
}

/// Φ_n as a monic integer polynomial (coefficient vector, low degree first).
/// Computed by exact division of x^n − 1 by all Φ_d, d | n, d < n; memoized.
pub fn cyclotomic_polynomial(n: usize) -> Vec<i128> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Vec<i128>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return hit.clone();
    }
    let result = if n == 1 {
        vec![-1, 1] // x − 1
    } else {
        let mut num = vec![0i128; n + 1];
        num[0] = -1;
        num[n] = 1;
        let mut q = num;
        for d in 1..n {
            if n % d == 0 {
                let phi_d = cyclotomic_polynomial(d);
                q = poly_div_exact(&q, &phi_d);
            }
        }
        q
    };
    cache.lock().unwrap().insert(n, result.clone());
    result
}

/// Exact division of integer polynomials (panics if not exact).
fn poly_div_exact(num: &[i128], den: &[i128]) -> Vec<i128> {
    let mut rem: Vec<i128> = num.to_vec();
    let dd = poly_degree(den);
    assert!(den[dd] == 1, "divisor must be monic");
    let nd = poly_degree(&rem);
    if nd < dd {
        assert!(rem.iter().all(|&c| c == 0));
        return vec![0];
    }
    let mut quot = vec![0i128; nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd];
        if c == 0 {
            continue;
        }
        quot[k] = c;
        for (i, &dc) in den.iter().enumerate().take(dd + 1) {
            rem[k + i] = cadd(rem[k + i], -cmul(c, dc));
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "division not exact");
    quot
}

fn poly_degree(p: &[i128]) -> usize {
    p.iter().rposition(|&c| c != 0).unwrap_or(0)
}

/// True iff den (monic) divides num exactly over Z.
fn poly_divisible(num: &[i128], den: &[i128]) -> bool {
    let mut rem: Vec<i128> = num.to_vec();
    let dd = poly_degree(den);
    debug_assert!(den[dd] == 1);
    loop {
        let nd = poly_degree(&rem);
        if rem.iter().all(|&c| c == 0) {
            return true;
        }
        if nd < dd {
            return false;
        }
        let c = rem[nd];
        for (i, &dc) in den.iter().enumerate().take(dd + 1) {
            rem[nd - dd + i] = cadd(rem[nd - dd + i], -cmul(c, dc));
        }
    }
}

/// √n as an element of `Z[ζ_L]`. Requires 8 | L and p | L for every odd prime
/// p dividing n to odd multiplicity. Built from quadratic Gauss sums:
/// g_p = Σ (t/p) ζ_p^t equals √p for p ≡ 1 (mod 4) and i√p for p ≡ 3
/// (mod 4); √2 = ζ₈ + ζ₈⁻¹.
pub fn sqrt_as_cyclotomic(n: u64, level: usize) -> Cyclotomic {
    assert!(level % 8 == 0);
    let mut out = Cyclotomic::from_integer(level, 1);
    let mut i_power: i64 = 0; // accumulated power of i to divide out
    for (p, e) in factorize(n) {
        let half = (p as i128)
            .checked_pow(e / 2)
            .expect("sqrt magnitude overflow");
        out = out.mul(&Cyclotomic::from_integer(level, half));
        if e % 2 == 1 {
            if p == 2 {
                let step = (level / 8) as i64;
                let mut s2 = Cyclotomic::zero(level);
                s2.add_root_power(step, 1);
                s2.add_root_power(-step, 1);
                out = out.mul(&s2);
            } else {
                assert!(level % (p as usize) == 0, "level must contain ζ_p");
                let step = (level / p as usize) as i64;
                let mut g = Cyclotomic::zero(level);
                for t in 1..p as i64 {
                    g.add_root_power(step * t, legendre(t, p as i64));
                }
                out = out.mul(&g);
                if p % 4 == 3 {
                    i_power += 1; // g_p = i·√p
                }
            }
        }
    }
    if i_power % 4 != 0 {
        // divide by i^k == multiply by i^(4−k); i = ζ_L^(L/4)
        let k = (4 - i_power % 4) % 4;
        let quarter = (level / 4) as i64;
        out = out.mul(&Cyclotomic::root_power(level, quarter * k));
    }
    out
}
