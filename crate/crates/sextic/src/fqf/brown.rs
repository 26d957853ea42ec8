//! The Brown invariant Br ∈ Z/8Z of a finite quadratic form, computed two
//! independent ways:
//!
//! * `brown_gauss` — straight from the defining Gauss sum
//!   Σ_x exp(iπ x²) = |𝓛|^{1/2} exp(iπ Br/4), evaluated exactly in a
//!   cyclotomic ring (no floating point);
//! * `brown_blocks` — through the normal form and the per-block closed
//!   formulas, relying on additivity.
//!
//! The two must agree on every form; the property suite enforces this.

use super::{normal_form, FiniteQuadraticForm};
use crate::cyclo::{sqrt_as_cyclotomic, Cyclotomic};
use num_integer::Integer;

/// Brown invariant via the Gauss sum, one primary component at a time
/// (the sum factors over primary components and Br is additive).
pub fn brown_gauss(f: &FiniteQuadraticForm) -> u8 {
    let mut total: i64 = 0;
    for p in f.primes() {
        total += primary_brown(&f.primary_part(p)) as i64;
    }
    (total.rem_euclid(8)) as u8
}

fn primary_brown(part: &FiniteQuadraticForm) -> u8 {
    if part.generator_count() == 0 {
        return 0;
    }
    // Common denominator D of all q-values: q(x) = t/D mod 2.
    let mut d: i128 = 1;
    for i in 0..part.generator_count() {
        let mut e = vec![0u64; part.generator_count()];
        e[i] = 1;
        d = d.lcm(part.q_of(&e).denom());
        for j in i + 1..part.generator_count() {
            let mut e2 = vec![0u64; part.generator_count()];
            e2[j] = 1;
            d = d.lcm(part.b_of(&e, &e2).denom());
        }
    }
    let d = d as usize;
    // Work in Z[ζ_L] with L = lcm(8, 2D): contains exp(iπ/D) and ζ₈ and the
    // Gauss-sum representation of √|part|.
    let two_d = 2 * d;
    let level = lcm_usize(8, two_d);
    let mut sum = Cyclotomic::zero(level);
    for x in part.elements() {
        let q = part.q_of(&x); // in [0, 2)
        let t = q.numer() * (d as i128 / q.denom()); // q = t/D, 0 ≤ t < 2D
        let exponent = (t as i64) * (level as i64 / two_d as i64);
        sum.add_root_power(exponent, 1);
    }
    let order = part.group_order().unwrap();
    let sqrt_n = sqrt_as_cyclotomic(order, level);
    let eighth = (level / 8) as i64;
    let mut hit: Option<u8> = None;
    for r in 0..8u8 {
        let target = sqrt_n.mul(&Cyclotomic::root_power(level, eighth * r as i64));
        if sum.equals(&target) {
            assert!(
                hit.is_none(),
                "Gauss sum matched two residues — form must be singular"
            );
            hit = Some(r);
        }
    }
    hit.expect("Gauss sum has wrong modulus — form must be singular")
}

fn lcm_usize(a: usize, b: usize) -> usize {
    a / gcd_usize(a, b) * b
}

fn gcd_usize(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd_usize(b, a % b)
    }
}

/// Brown invariant via normal form and per-block formulas.
pub fn brown_blocks(f: &FiniteQuadraticForm) -> u8 {
    let mut total: i64 = 0;
    for b in normal_form(f) {
        total += super::blocks::block_brown(&b);
    }
    (total.rem_euclid(8)) as u8
}
