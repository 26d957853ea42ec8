//! Positive definite even lattices of rank 2: canonical reduction to
//! M(a,b,c) = [[2a, b], [b, 2c]] with 0 < a ≤ c, 0 ≤ b ≤ a, the six-case
//! orthogonal-group table, and genus enumeration by discriminant form.

use crate::arith::perfect_sqrt;
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::fqf::{group_invariants, is_isomorphic, FiniteQuadraticForm};
use crate::lattice::{GramLattice, Isometry};
use crate::mat;
use std::fmt;

/// The reduced representative M(a, b, c) of a positive definite even rank-2
/// lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ReducedForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl fmt::Display for ReducedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M({},{},{})", self.a, self.b, self.c)
    }
}

impl ReducedForm {
    pub fn new(a: i64, b: i64, c: i64) -> Result<ReducedForm> {
        let m = ReducedForm { a, b, c };
        if !(0 < a && a <= c && 0 <= b && b <= a) {
            return Err(Error::Domain(format!("{m} violates 0 < a ≤ c, 0 ≤ b ≤ a")));
        }
        Ok(m)
    }

    pub fn det(&self) -> i64 {
        4 * self.a * self.c - self.b * self.b
    }

    pub fn to_lattice(&self) -> GramLattice {
        GramLattice::from_rows(&[vec![2 * self.a, self.b], vec![self.b, 2 * self.c]])
            .expect("M(a,b,c) is even symmetric")
    }

    pub fn discriminant_form(&self) -> FiniteQuadraticForm {
        self.to_lattice()
            .discriminant_form()
            .expect("positive definite")
            .form
    }
}

/// Gauss reduction of an even positive definite 2×2 Gram matrix; returns the
/// unique reduced form and the unimodular change of basis T with
/// Tᵀ·G·T = Gram(M(a,b,c)).
pub fn reduce(gram: &[Vec<i64>]) -> Result<(ReducedForm, Vec<Vec<i64>>)> {
    if gram.len() != 2 || gram[0].len() != 2 || gram[1].len() != 2 {
        return Err(Error::Domain("reduce expects a 2×2 Gram matrix".into()));
    }
    if gram[0][1] != gram[1][0] {
        return Err(Error::Domain("Gram matrix must be symmetric".into()));
    }
    if gram[0][0] % 2 != 0 || gram[1][1] % 2 != 0 {
        return Err(Error::Domain("lattice must be even".into()));
    }
    let (g00, g01, g11) = (gram[0][0], gram[0][1], gram[1][1]);
    if g00 <= 0 || (g00 * g11 - g01 * g01) <= 0 {
        return Err(Error::Domain("form is not positive definite".into()));
    }
    let mut a = g00 / 2;
    let mut b = g01;
    let mut c = g11 / 2;
    // column basis (u, v); T columns track the original coordinates
    let mut t = [[1i64, 0], [0i64, 1]];
    let apply = |t: &mut [[i64; 2]; 2], m: [[i64; 2]; 2]| {
        let n = [
            [
                t[0][0] * m[0][0] + t[0][1] * m[1][0],
                t[0][0] * m[0][1] + t[0][1] * m[1][1],
            ],
            [
                t[1][0] * m[0][0] + t[1][1] * m[1][0],
                t[1][0] * m[0][1] + t[1][1] * m[1][1],
            ],
        ];
        *t = n;
    };
    loop {
        if a > c {
            std::mem::swap(&mut a, &mut c);
            apply(&mut t, [[0, 1], [1, 0]]);
            continue;
        }
        if b.abs() > a {
            // v ← v − k·u with k = round(b / 2a), computed in integers
            let k = (2 * b + 2 * a).div_euclid(4 * a);
            let (nb, nc) = (b - 2 * a * k, c - b * k + a * k * k);
            b = nb;
            c = nc;
            apply(&mut t, [[1, -k], [0, 1]]);
            continue;
        }
        if b < 0 {
            b = -b;
            apply(&mut t, [[1, 0], [0, -1]]);
            continue;
        }
        if a > c {
            continue;
        }
        break;
    }
    let reduced = ReducedForm::new(a, b, c)?;
    // verify Tᵀ G T = Gram(M)
    let tm = mat::from_i64(&[vec![t[0][0], t[0][1]], vec![t[1][0], t[1][1]]]);
    let gm = mat::from_i64(&[vec![g00, g01], vec![g01, g11]]);
    let prod = mat::mul(&mat::mul(&mat::transpose(&tm), &gm), &tm);
    if prod != *reduced.to_lattice().gram() {
        return Err(Error::Inconsistency(
            "reduction basis bookkeeping failed".into(),
        ));
    }
    Ok((
        reduced,
        vec![vec![t[0][0], t[0][1]], vec![t[1][0], t[1][1]]],
    ))
}

/// The six cases of O(M(a,b,c)).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrthCaseTag {
    /// 0 < b < a < c: O ≅ Z/2 = {±id}
    Generic,
    /// 0 < b < a = c: Z/2 × Z/2, −id and the transposition
    Transposition,
    /// b = 0, a < c: Z/2 × Z/2, t_u and t_v
    Rectangular,
    /// b = 0, a = c: N = 2A₁(−a), dihedral of order 8
    Square,
    /// b = a < c: Z/2 × Z/2, −id and t_u
    BEqualsA,
    /// b = a = c: N = A₂(−a), dihedral of order 12
    Hexagonal,
}

#[derive(Debug, Clone)]
pub struct OrthCase {
    pub tag: OrthCaseTag,
    pub generators: Vec<Isometry>,
    pub order: u64,
}

/// Case table for the orthogonal group of a reduced form.
pub fn orthogonal_group(m: &ReducedForm) -> OrthCase {
    let swap = Isometry {
        matrix: mat::from_i64(&[vec![0, 1], vec![1, 0]]),
    };
    let minus = Isometry::minus_identity(2);
    let t_u_rect = Isometry {
        matrix: mat::from_i64(&[vec![-1, 0], vec![0, 1]]),
    };
    // for b = a: t_u sends v ↦ v − u
    let t_u_skew = Isometry {
        matrix: mat::from_i64(&[vec![-1, -1], vec![0, 1]]),
    };
    let (tag, generators, order) = match (m.b == 0, m.b == m.a, m.a == m.c) {
        (true, _, false) => (
            OrthCaseTag::Rectangular,
            vec![
                t_u_rect.clone(),
                Isometry {
                    matrix: mat::from_i64(&[vec![1, 0], vec![0, -1]]),
                },
            ],
            4,
        ),
        (true, _, true) => (OrthCaseTag::Square, vec![t_u_rect.clone(), swap.clone()], 8),
        (false, true, false) => (
            OrthCaseTag::BEqualsA,
            vec![minus.clone(), t_u_skew.clone()],
            4,
        ),
        // t_u and the transposition alone generate only the S₃ of axis
        // reflections here (their product is a 120° rotation); −id completes
        // the full hexagon group of order 12.
        (false, true, true) => (
            OrthCaseTag::Hexagonal,
            vec![t_u_skew.clone(), swap.clone(), minus.clone()],
            12,
        ),
        (false, false, true) => (
            OrthCaseTag::Transposition,
            vec![minus.clone(), swap.clone()],
            4,
        ),
        (false, false, false) => (OrthCaseTag::Generic, vec![minus.clone()], 2),
    };
    OrthCase {
        tag,
        generators,
        order,
    }
}

/// All isometries, from the case generators by closure.
pub fn orthogonal_elements(m: &ReducedForm) -> Vec<Isometry> {
    let case = orthogonal_group(m);
    let l = m.to_lattice();
    let mut seen: Vec<Isometry> = vec![Isometry::identity(2)];
    let mut frontier = 0;
    while frontier < seen.len() {
        let cur = seen[frontier].clone();
        frontier += 1;
        for g in &case.generators {
            let next = g.compose(&cur);
            debug_assert!(next.is_isometry_of(&l));
            if !seen.contains(&next) {
                seen.push(next);
            }
        }
    }
    debug_assert_eq!(seen.len() as u64, case.order);
    seen
}

/// True iff O(m) contains a determinant −1 element (a +disorienting
/// isometry of the positive definite plane); false exactly in the generic
/// case 0 < b < a < c.
pub fn has_disorienting_isometry(m: &ReducedForm) -> bool {
    orthogonal_group(m).tag != OrthCaseTag::Generic
}

/// All reduced forms with the given discriminant form (genus enumeration
/// for positive definite even rank-2 lattices): candidates satisfy
/// |𝒩|/4 ≤ ac ≤ |𝒩|/3, b² = 4ac − |𝒩|.
pub fn enumerate_genus(target: &FiniteQuadraticForm, limits: &Limits) -> Result<Vec<ReducedForm>> {
    let det = target.group_order()? as i64;
    let mut out = Vec::new();
    if det <= 0 {
        return Ok(out);
    }
    let target_invariants = group_invariants(target);
    let target_brown = crate::fqf::brown_gauss(target);
    if target_brown != 2 {
        // van der Blij: a (2,0) lattice has Br ≡ 2; no candidate can match.
        return Ok(out);
    }
    let _ = limits;
    let mut a = 1i64;
    while 3 * a * a <= det {
        let c_min = (det + 4 * a - 1) / (4 * a); // smallest c with 4ac ≥ det
        let c_max = det / (3 * a);
        for c in c_min.max(a)..=c_max {
            let b2 = 4 * a * c - det;
            let Some(b) = perfect_sqrt(b2) else { continue };
            if b > a {
                continue;
            }
            let m = ReducedForm::new(a, b, c)?;
            let disc = m.discriminant_form();
            if group_invariants(&disc) != target_invariants {
                continue;
            }
            if is_isomorphic(&disc, target) {
                out.push(m);
            }
        }
        a += 1;
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fqf::{from_blocks, parse_form_expression};

    fn form(expr: &str) -> FiniteQuadraticForm {
        from_blocks(&parse_form_expression(expr).unwrap()).unwrap()
    }

    #[test]
    fn reduce_examples() {
        // [[4,3],[3,4]] → M(1,1,2): shortest vector (1,−1) has norm 2, det 7
        let (m, _) = reduce(&[vec![4, 3], vec![3, 4]]).unwrap();
        assert_eq!(m, ReducedForm { a: 1, b: 1, c: 2 });
        assert_eq!(m.det(), 7);
        // already reduced stays put
        let (m, t) = reduce(&[vec![2, 0], vec![0, 4]]).unwrap();
        assert_eq!(m, ReducedForm { a: 1, b: 0, c: 2 });
        assert_eq!(t, vec![vec![1, 0], vec![0, 1]]);
        // reorder to a ≤ c
        let (m, _) = reduce(&[vec![38, 0], vec![0, 2]]).unwrap();
        assert_eq!(m, ReducedForm { a: 1, b: 0, c: 19 });
        // errors
        assert!(reduce(&[vec![2, 1], vec![1, -2]]).is_err());
        assert!(reduce(&[vec![3, 1], vec![1, 4]]).is_err());
    }

    #[test]
    fn reduction_is_idempotent_and_class_invariant() {
        let m = ReducedForm::new(4, 2, 5).unwrap();
        let g = m.to_lattice().gram_i64();
        let (m2, _) = reduce(&g).unwrap();
        assert_eq!(m, m2);
    }

    #[test]
    fn orth_case_table() {
        let cases = [
            (ReducedForm::new(4, 2, 5).unwrap(), OrthCaseTag::Generic, 2),
            (
                ReducedForm::new(2, 1, 2).unwrap(),
                OrthCaseTag::Transposition,
                4,
            ),
            (
                ReducedForm::new(1, 0, 2).unwrap(),
                OrthCaseTag::Rectangular,
                4,
            ),
            (ReducedForm::new(5, 0, 5).unwrap(), OrthCaseTag::Square, 8),
            (ReducedForm::new(1, 1, 2).unwrap(), OrthCaseTag::BEqualsA, 4),
            (
                ReducedForm::new(6, 6, 6).unwrap(),
                OrthCaseTag::Hexagonal,
                12,
            ),
        ];
        let limits = Limits::default();
        for (m, tag, order) in cases {
            let case = orthogonal_group(&m);
            assert_eq!(case.tag, tag, "{m}");
            assert_eq!(case.order, order, "{m}");
            // closure of the tabulated generators has the tabulated order
            assert_eq!(orthogonal_elements(&m).len() as u64, order, "{m}");
            // cross-check against brute-force isometry enumeration
            let brute = m.to_lattice().definite_isometries(&limits).unwrap();
            assert_eq!(brute.len() as u64, order, "{m}");
        }
    }

    #[test]
    fn disorienting_cases() {
        assert!(!has_disorienting_isometry(
            &ReducedForm::new(4, 2, 5).unwrap()
        ));
        assert!(has_disorienting_isometry(
            &ReducedForm::new(1, 0, 19).unwrap()
        ));
        assert!(has_disorienting_isometry(
            &ReducedForm::new(6, 0, 12).unwrap()
        ));
        // matches "some element has det −1" on the enumerated group
        for m in [
            ReducedForm::new(4, 2, 5).unwrap(),
            ReducedForm::new(5, 0, 5).unwrap(),
        ] {
            let any_det_minus = orthogonal_elements(&m)
                .iter()
                .any(|t| t.det() == num_bigint::BigInt::from(-1));
            assert_eq!(any_det_minus, has_disorienting_isometry(&m));
        }
    }

    #[test]
    fn genus_of_det76_has_two_classes() {
        // the A₁₈ ⊕ A₁ complement genus: M(1,0,19) and M(4,2,5)
        let target = ReducedForm::new(1, 0, 19).unwrap().discriminant_form();
        let genus = enumerate_genus(&target, &Limits::default()).unwrap();
        assert_eq!(
            genus,
            vec![
                ReducedForm::new(1, 0, 19).unwrap(),
                ReducedForm::new(4, 2, 5).unwrap()
            ]
        );
    }

    #[test]
    fn genus_examples_from_maximal_sets() {
        let limits = Limits::default();
        // det 8: only M(1,0,2) (the D₁₉ complement)
        let target = ReducedForm::new(1, 0, 2).unwrap().discriminant_form();
        assert_eq!(
            enumerate_genus(&target, &limits).unwrap(),
            vec![ReducedForm::new(1, 0, 2).unwrap()]
        );
        // det 4: only M(1,0,1)
        let target = form("<1/2>+<1/2>");
        assert_eq!(
            enumerate_genus(&target, &limits).unwrap(),
            vec![ReducedForm::new(1, 0, 1).unwrap()]
        );
        // det 40: only M(1,0,10) (the A₁₉ complement)
        let target = ReducedForm::new(1, 0, 10).unwrap().discriminant_form();
        assert_eq!(
            enumerate_genus(&target, &limits).unwrap(),
            vec![ReducedForm::new(1, 0, 10).unwrap()]
        );
        // a genus-less target: wrong Brown invariant
        let empty = enumerate_genus(&form("<-1/2>+<-1/2>"), &limits).unwrap();
        assert!(empty.is_empty());
    }

    #[test]
    fn minimum_norm_is_2a() {
        let limits = Limits::default();
        for m in [
            ReducedForm::new(1, 0, 19).unwrap(),
            ReducedForm::new(4, 2, 5).unwrap(),
            ReducedForm::new(5, 0, 5).unwrap(),
            ReducedForm::new(1, 1, 2).unwrap(),
        ] {
            let l = m.to_lattice();
            // no nonzero vector shorter than 2a, and u realizes 2a
            for n in 1..2 * m.a {
                assert!(
                    l.short_vectors(n, &limits).unwrap().is_empty(),
                    "{m} norm {n}"
                );
            }
            assert!(
                !l.short_vectors(2 * m.a, &limits).unwrap().is_empty(),
                "{m}"
            );
        }
    }
}
