//! Elementary blocks of finite quadratic forms — cyclic forms ⟨m/n⟩ and the
//! rank-2 blocks U(2^k), V(2^k) — with the token grammar used by the CLI and
//! golden fixtures: `<m/n>`, `U(2^k)`, `V(2^k)`, joined by `+`.

use super::{mod2, FiniteQuadraticForm, Rational};
use crate::arith::{gcd_i64, is_prime, p_part};
use crate::error::{Error, Result};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FormBlock {
    /// ⟨m/n⟩ on Z/n: q(generator) = m/n mod 2, gcd(m,n) = 1, mn even.
    Cyclic { num: i64, den: u64 },
    /// U_{2^k} on (Z/2^k)²: matrix [[0, α_k], [α_k, 0]], α_k = 1/2^k.
    U { k: u32 },
    /// V_{2^k} on (Z/2^k)²: matrix [[α_{k-1}, α_k], [α_k, α_{k-1}]].
    V { k: u32 },
}

impl FormBlock {
    pub fn cyclic(num: i64, den: u64) -> Result<FormBlock> {
        if den < 2 {
            return Err(Error::InvalidBlock(format!(
                "<{num}/{den}>: order must be >= 2"
            )));
        }
        if gcd_i64(num, den as i64) != 1 {
            return Err(Error::InvalidBlock(format!(
                "<{num}/{den}>: fraction not reduced"
            )));
        }
        if (num * den as i64) % 2 != 0 {
            return Err(Error::InvalidBlock(format!(
                "<{num}/{den}>: mn must be even"
            )));
        }
        Ok(FormBlock::Cyclic { num, den })
    }

    pub fn u(k: u32) -> Result<FormBlock> {
        if k < 1 {
            return Err(Error::InvalidBlock("U exponent must be >= 1".into()));
        }
        Ok(FormBlock::U { k })
    }

    pub fn v(k: u32) -> Result<FormBlock> {
        if k < 1 {
            return Err(Error::InvalidBlock("V exponent must be >= 1".into()));
        }
        Ok(FormBlock::V { k })
    }

    /// Group order contributed by this block.
    pub fn order(&self) -> u64 {
        match *self {
            FormBlock::Cyclic { den, .. } => den,
            FormBlock::U { k } | FormBlock::V { k } => 1u64 << (2 * k),
        }
    }

    /// The block as a standalone form.
    pub fn to_form(&self) -> FiniteQuadraticForm {
        match *self {
            FormBlock::Cyclic { num, den } => FiniteQuadraticForm::new_unchecked(
                vec![den],
                vec![vec![mod2(Rational::new(num as i128, den as i128))]],
            ),
            FormBlock::U { k } => {
                let a = Rational::new(1, 1i128 << k);
                let zero = Rational::from_integer(0);
                FiniteQuadraticForm::new_unchecked(
                    vec![1 << k, 1 << k],
                    vec![vec![zero, a], vec![a, zero]],
                )
            }
            FormBlock::V { k } => {
                let a = Rational::new(1, 1i128 << k);
                let d = Rational::new(1, 1i128 << (k - 1));
                FiniteQuadraticForm::new_unchecked(
                    vec![1 << k, 1 << k],
                    vec![vec![d, a], vec![a, d]],
                )
            }
        }
    }

    /// Sort key giving the canonical ordering of block multisets:
    /// by prime, then level, then kind, then numerator.
    pub fn sort_key(&self) -> (u64, u64, u8, i64) {
        match *self {
            FormBlock::Cyclic { num, den } => {
                let p = smallest_prime_factor(den);
                (p, den, 0, num.rem_euclid(2 * den as i64))
            }
            FormBlock::U { k } => (2, 1 << k, 1, 0),
            FormBlock::V { k } => (2, 1 << k, 2, 0),
        }
    }
}

fn smallest_prime_factor(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return d;
        }
        d += 2;
    }
    n
}

impl fmt::Display for FormBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FormBlock::Cyclic { num, den } => write!(f, "<{num}/{den}>"),
            FormBlock::U { k } => write!(f, "U({})", 1u64 << k),
            FormBlock::V { k } => write!(f, "V({})", 1u64 << k),
        }
    }
}

/// Orthogonal sum of blocks. Errors on any malformed block; blocks over
/// cyclic groups of prime-power order are NOT required — any ⟨m/n⟩ with the
/// reduced-fraction and parity conditions is accepted.
pub fn from_blocks(blocks: &[FormBlock]) -> Result<FiniteQuadraticForm> {
    let mut acc = FiniteQuadraticForm::trivial();
    for b in blocks {
        // Re-run the constructor checks so hand-built enum values are vetted.
        match *b {
            FormBlock::Cyclic { num, den } => {
                FormBlock::cyclic(num, den)?;
            }
            FormBlock::U { k } => {
                FormBlock::u(k)?;
            }
            FormBlock::V { k } => {
                FormBlock::v(k)?;
            }
        }
        acc = acc.direct_sum(&b.to_form());
    }
    Ok(acc)
}

/// Canonical rendering of a block multiset: sorted, joined by `+`;
/// the trivial form renders as `0`.
pub fn render_blocks(blocks: &[FormBlock]) -> String {
    if blocks.is_empty() {
        return "0".to_string();
    }
    let mut sorted = blocks.to_vec();
    sorted.sort_by_key(|b| b.sort_key());
    sorted
        .iter()
        .map(|b| b.to_string())
        .collect::<Vec<_>>()
        .join("+")
}

/// Parse a form expression in the token grammar, e.g. `<4/5>+<1/4>+<1/2>`,
/// `U(2)+V(4)`, or `0` for the trivial form. Whitespace-insensitive.
pub fn parse_form_expression(text: &str) -> Result<Vec<FormBlock>> {
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() || cleaned == "0" {
        return Ok(vec![]);
    }
    let mut blocks = Vec::new();
    for token in split_top_level(&cleaned) {
        blocks.push(parse_token(token)?);
    }
    Ok(blocks)
}

fn split_top_level(s: &str) -> Vec<&str> {
    // '+' only appears as a separator: inside <m/n> the sign is leading '-'.
    s.split('+').filter(|t| !t.is_empty()).collect()
}

fn parse_token(tok: &str) -> Result<FormBlock> {
    let err = || Error::Domain(format!("cannot parse form token `{tok}`"));
    if let Some(body) = tok.strip_prefix('<').and_then(|t| t.strip_suffix('>')) {
        let (m, n) = body.split_once('/').ok_or_else(err)?;
        let num: i64 = m.parse().map_err(|_| err())?;
        let den: u64 = n.parse().map_err(|_| err())?;
        return FormBlock::cyclic(num, den);
    }
    let upper = tok.to_ascii_uppercase();
    if let Some(body) = upper
        .strip_prefix("U(")
        .or_else(|| upper.strip_prefix("V("))
        .and_then(|t| t.strip_suffix(')'))
    {
        let value: u64 = body.parse().map_err(|_| err())?;
        if value < 2 || value != p_part(value, 2) {
            return Err(Error::InvalidBlock(format!(
                "{tok}: argument must be a power of 2 >= 2"
            )));
        }
        let k = value.trailing_zeros();
        return if upper.starts_with('U') {
            FormBlock::u(k)
        } else {
            FormBlock::v(k)
        };
    }
    Err(err())
}

/// Brown invariant of a single block, by the closed-form table:
/// Br⟨2a/p^{2s-1}⟩ = 2(a/p) − (−1/p) − 1 and Br⟨2a/p^{2s}⟩ = 0 for odd p;
/// Br⟨a/2^k⟩ = a + k(a²−1)/2 mod 8; Br U = 0; Br V_{2^k} = 4k mod 8.
pub fn block_brown(block: &FormBlock) -> i64 {
    match *block {
        FormBlock::Cyclic { num, den } => {
            if den % 2 == 0 {
                // den = 2^k (the caller decomposes into prime-power blocks);
                // for mixed orders fall back to primary decomposition.
                debug_assert_eq!(den, p_part(den, 2), "block_brown needs prime-power blocks");
                let k = den.trailing_zeros() as i64;
                let a = num.rem_euclid(2 * den as i64);
                (a + k * (a * a - 1) / 2).rem_euclid(8)
            } else {
                let p = smallest_prime_factor(den);
                debug_assert_eq!(den, p_part(den, p), "block_brown needs prime-power blocks");
                debug_assert!(is_prime(p));
                let k = {
                    let mut k = 0;
                    let mut d = den;
                    while d > 1 {
                        d /= p;
                        k += 1;
                    }
                    k
                };
                if k % 2 == 0 {
                    0
                } else {
                    // num = 2a mod den (num is even since den is odd)
                    let half = crate::arith::mod_inverse(2, den as i64).unwrap();
                    let a = (num.rem_euclid(den as i64) * half).rem_euclid(den as i64);
                    let ls = crate::arith::legendre(a, p as i64);
                    (2 * ls - crate::arith::legendre(-1, p as i64) - 1).rem_euclid(8)
                }
            }
        }
        FormBlock::U { .. } => 0,
        FormBlock::V { k } => (4 * k as i64).rem_euclid(8),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_validation() {
        assert!(FormBlock::cyclic(-2, 3).is_ok());
        assert!(FormBlock::cyclic(1, 3).is_err()); // mn odd
        assert!(FormBlock::cyclic(2, 4).is_err()); // not reduced
        assert!(FormBlock::cyclic(1, 2).is_ok());
        assert!(FormBlock::u(0).is_err());
    }

    #[test]
    fn v2_matrix() {
        // 𝒱_2 on (Z/2)²: q-matrix [[1, 1/2], [1/2, 1]].
        let v = FormBlock::v(1).unwrap().to_form();
        assert_eq!(v.q_of(&[1, 0]), Rational::from_integer(1));
        assert_eq!(v.q_of(&[0, 1]), Rational::from_integer(1));
        assert_eq!(v.b_of(&[1, 0], &[0, 1]), Rational::new(1, 2));
        assert_eq!(v.q_of(&[1, 1]), Rational::from_integer(1)); // 1+1+2·(1/2) = 3 ≡ 1
    }

    #[test]
    fn grammar_round_trip() {
        let blocks = parse_form_expression("<4/5> + <1/4> + <1/2>").unwrap();
        assert_eq!(blocks.len(), 3);
        assert_eq!(render_blocks(&blocks), "<1/2>+<1/4>+<4/5>");
        let uv = parse_form_expression("u(2)+V(4)").unwrap();
        assert_eq!(uv, vec![FormBlock::U { k: 1 }, FormBlock::V { k: 2 }]);
        assert_eq!(render_blocks(&[]), "0");
        assert!(parse_form_expression("<1/3>").is_err());
        assert!(parse_form_expression("U(3)").is_err());
        assert!(parse_form_expression("garbage").is_err());
    }

    #[test]
    fn brown_table_values() {
        // Br⟨-2/3⟩: 2a ≡ -2, a ≡ 2 mod 3, (2/3) = -1 ⇒ 2(-1) - (-1) - 1 = -4…
        // (−1/3) = −1, so Br = −2 − (−1) − 1 = −2 ≡ 6.
        assert_eq!(block_brown(&FormBlock::cyclic(-2, 3).unwrap()), 6);
        assert_eq!(block_brown(&FormBlock::cyclic(1, 2).unwrap()), 1);
        assert_eq!(block_brown(&FormBlock::cyclic(-1, 2).unwrap()), 7);
        for k in 1..=3 {
            assert_eq!(block_brown(&FormBlock::u(k).unwrap()), 0);
            assert_eq!(block_brown(&FormBlock::v(k).unwrap()), (4 * k as i64) % 8);
        }
        // Br⟨2a/p^{2s}⟩ = 0
        assert_eq!(block_brown(&FormBlock::cyclic(2, 9).unwrap()), 0);
    }

    #[test]
    fn from_blocks_orders() {
        let f = from_blocks(&[
            FormBlock::cyclic(-19, 20).unwrap(),
            FormBlock::cyclic(1, 2).unwrap(),
        ])
        .unwrap();
        assert_eq!(f.group_order().unwrap(), 40);
        let trivial = from_blocks(&[]).unwrap();
        assert_eq!(trivial.group_order().unwrap(), 1);
    }
}
