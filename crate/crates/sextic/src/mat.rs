//! Exact integer matrix algebra: Smith normal form with unimodular
//! transforms, Hermite column bases, and fraction-free determinants.
//!
//! All entries are `BigInt`; intermediate growth in elimination is unbounded
//! in general, so no fixed-width shortcuts are taken.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IMat = Vec<Vec<BigInt>>;

pub fn from_i64(m: &[Vec<i64>]) -> IMat {
    m.iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

pub fn identity(n: usize) -> IMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn mul(a: &IMat, b: &IMat) -> IMat {
    let n = a.len();
    let k = if n > 0 { a[0].len() } else { 0 };
    let m = if b.is_empty() { 0 } else { b[0].len() };
    debug_assert!(b.len() == k);
    let mut out = vec![vec![BigInt::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                let t = &a[i][l] * &b[l][j];
                out[i][j] += t;
            }
        }
    }
    out
}

pub fn transpose(a: &IMat) -> IMat {
    let n = a.len();
    let m = if n > 0 { a[0].len() } else { 0 };
    (0..m)
        .map(|j| (0..n).map(|i| a[i][j].clone()).collect())
        .collect()
}

/// Fraction-free (Bareiss) determinant of a square matrix.
pub fn determinant(a: &IMat) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let swap = (k + 1..n).find(|&i| !m[i][k].is_zero());
            match swap {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = &t / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Result of a Smith normal form computation: `u * a * v = d` with
/// `u`, `v` unimodular and `d` diagonal, each diagonal entry nonnegative
/// and dividing the next.
pub struct SmithForm {
    pub u: IMat,
    pub d: IMat,
    pub v: IMat,
}

impl SmithForm {
    /// Diagonal entries of `d` (length = min(rows, cols)).
    pub fn diagonal(&self) -> Vec<BigInt> {
        let r = self.d.len().min(if self.d.is_empty() {
            0
        } else {
            self.d[0].len()
        });
        (0..r).map(|i| self.d[i][i].clone()).collect()
    }
}

/// Smith normal form with transform tracking.
pub fn smith_normal_form(a: &IMat) -> SmithForm {
    let rows = a.len();
    let cols = if rows > 0 { a[0].len() } else { 0 };
    let mut d = a.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);

    let swap_rows = |d: &mut IMat, u: &mut IMat, i: usize, j: usize| {
        d.swap(i, j);
        u.swap(i, j);
    };
    let swap_cols = |d: &mut IMat, v: &mut IMat, i: usize, j: usize| {
        for row in d.iter_mut() {
            row.swap(i, j);
        }
        for row in v.iter_mut() {
            row.swap(i, j);
        }
    };
    // row[i] -= q * row[j]
    let add_row = |d: &mut IMat, u: &mut IMat, i: usize, j: usize, q: &BigInt| {
        for c in 0..cols {
            let t = q * &d[j][c];
            d[i][c] -= t;
        }
        for c in 0..rows {
            let t = q * &u[j][c];
            u[i][c] -= t;
        }
    };
    let add_col = |d: &mut IMat, v: &mut IMat, i: usize, j: usize, q: &BigInt| {
        for r in 0..rows {
            let t = q * &d[r][j];
            d[r][i] -= t;
        }
        for r in 0..cols {
            let t = q * &v[r][j];
            v[r][i] -= t;
        }
    };

    let mut t = 0;
    while t < rows.min(cols) {
        // Find a pivot of least absolute value in the trailing block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !d[i][j].is_zero()
                    && pivot.map_or(true, |(pi, pj)| d[i][j].abs() < d[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        swap_rows(&mut d, &mut u, t, pi);
        swap_cols(&mut d, &mut v, t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !d[i][t].is_zero() {
                    let q = d[i][t].div_floor(&d[t][t]);
                    add_row(&mut d, &mut u, i, t, &q);
                    if !d[i][t].is_zero() {
                        swap_rows(&mut d, &mut u, t, i);
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !d[t][j].is_zero() {
                    let q = d[t][j].div_floor(&d[t][t]);
                    add_col(&mut d, &mut v, j, t, &q);
                    if !d[t][j].is_zero() {
                        swap_cols(&mut d, &mut v, t, j);
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }

        // Enforce the divisibility chain: d[t][t] must divide every entry
        // of the trailing block.
        let mut redo = false;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(&d[i][j] % &d[t][t]).is_zero() {
                    let one = BigInt::one();
                    let minus = -&one;
                    add_col(&mut d, &mut v, t, j, &minus); // col t += col j
                    redo = true;
                    break 'scan;
                }
            }
        }
        if redo {
            continue;
        }
        if d[t][t].is_negative() {
            for c in 0..cols {
                let x = -d[t][c].clone();
                d[t][c] = x;
            }
            for c in 0..rows {
                let x = -u[t][c].clone();
                u[t][c] = x;
            }
        }
        t += 1;
    }
    SmithForm { u, d, v }
}

/// Hermite-style column basis of the column span of an integer matrix whose
/// span has full rank n (rows = n). Returns an n × n basis matrix.
pub fn column_basis(a: &IMat) -> IMat {
    let sf = smith_normal_form(a);
    // u * a * v = d  =>  span(a) = u^{-1} * span(d) = u^{-1} * D' where D' is
    // the diagonal restricted to nonzero entries; the basis is u^{-1} * d_part.
    let n = a.len();
    let uinv = invert_unimodular(&sf.u);
    let mut basis = vec![vec![BigInt::zero(); n]; n];
    for j in 0..n {
        let dj = &sf.d[j][j];
        assert!(!dj.is_zero(), "column span does not have full rank");
        for i in 0..n {
            basis[i][j] = &uinv[i][j] * dj;
        }
    }
    basis
}

/// Basis of the column span (any rank r ≤ n): an n × r integer matrix.
pub fn column_span_basis(a: &IMat) -> IMat {
    let n = a.len();
    let sf = smith_normal_form(a);
    let uinv = invert_unimodular(&sf.u);
    let diag = sf.diagonal();
    let mut cols = Vec::new();
    for (j, d) in diag.iter().enumerate() {
        if d.is_zero() {
            break;
        }
        cols.push(j);
    }
    (0..n)
        .map(|i| cols.iter().map(|&j| &uinv[i][j] * &sf.d[j][j]).collect())
        .collect()
}

/// Inverse of a unimodular integer matrix (det = ±1), computed exactly.
pub fn invert_unimodular(a: &IMat) -> IMat {
    let n = a.len();
    // Gauss-Jordan over rationals would do; over Z, use adjugate via
    // cofactors for small n, or solve by SNF. Desk-scale n keeps this cheap.
    let det = determinant(a);
    assert!(det.abs().is_one(), "matrix is not unimodular");
    let mut adj = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor = minor_matrix(a, i, j);
            let c = determinant(&minor);
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[j][i] = c * sign * &det; // det = ±1, so dividing = multiplying
        }
    }
    adj
}

fn minor_matrix(a: &IMat, skip_r: usize, skip_c: usize) -> IMat {
    let n = a.len();
    let mut out = Vec::with_capacity(n - 1);
    for i in 0..n {
        if i == skip_r {
            continue;
        }
        let mut row = Vec::with_capacity(n - 1);
        for j in 0..n {
            if j == skip_c {
                continue;
            }
            row.push(a[i][j].clone());
        }
        out.push(row);
    }
    out
}
