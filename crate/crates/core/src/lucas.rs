//! Multinomial coefficients modulo a prime via Lucas' theorem, and the
//! coefficient of `x^(2^t - 1)` in `f^k mod (x^(2^t) - x)` for the trinomial
//! `f = x^(2^s+1) + x^(2^(s-1)+1) + alpha*x`, both as a sum over exponent
//! triples and in closed form.

use serde::Serialize;

use crate::error::{guard, Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// Largest `k` accepted by [`exponent_triples`]; the enumeration is O(k^2).
pub const MAX_TRIPLE_K: u64 = 1 << 13;

/// Hamming weight of `a`.
pub fn weight(a: u64) -> u32 {
    a.count_ones()
}

fn is_small_prime(p: u64) -> bool {
    (2..=64).contains(&p) && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn check_sum(k: u64, parts: &[u64]) -> Result<()> {
    let sum = parts.iter().try_fold(0u64, |acc, &x| acc.checked_add(x));
    match sum {
        Some(s) if s == k => Ok(()),
        Some(s) => Err(Error::SumMismatch { k, sum: s }),
        None => Err(Error::SumMismatch { k, sum: u64::MAX }),
    }
}

/// Exact `C(n, r)` for `n < 64`.
fn small_binomial(n: u64, r: u64) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// The multinomial coefficient `k! / (parts[0]! parts[1]! ...)` mod `p`,
/// as the product of the digit-wise multinomials in base `p`.
pub fn multinomial_mod_p(k: u64, parts: &[u64], p: u64) -> Result<u64> {
    if !is_small_prime(p) {
        return Err(Error::NotPrime(p));
    }
    check_sum(k, parts)?;
    let mut k = k;
    let mut parts = parts.to_vec();
    let mut acc = 1u64;
    while k > 0 {
        let top = k % p;
        let mut remaining = top;
        let mut digit = 1u128;
        for part in parts.iter_mut() {
            let d = *part % p;
            *part /= p;
            if d > remaining {
                return Ok(0);
            }
            digit = digit * small_binomial(remaining, d) % p as u128;
            remaining -= d;
        }
        if remaining != 0 {
            return Ok(0);
        }
        acc = acc * digit as u64 % p;
        if acc == 0 {
            return Ok(0);
        }
        k /= p;
    }
    Ok(acc)
}

/// Nonzero mod 2 iff the parts' bits are pairwise disjoint and cover `k`.
pub fn multinomial_nonzero_mod2(k: u64, parts: &[u64]) -> Result<bool> {
    check_sum(k, parts)?;
    Ok(nonzero_mod2_unchecked(k, parts))
}

#[inline]
fn nonzero_mod2_unchecked(k: u64, parts: &[u64]) -> bool {
    let mut seen = 0u64;
    for &p in parts {
        if seen & p != 0 {
            return false;
        }
        seen |= p;
    }
    seen == k
}

/// `(u, v, w)` with `u + v + w = k` and
/// `(2^s + 1) u + (2^(s-1) + 1) v + w = ell (2^t - 1)`, `ell >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ExponentTriple {
    pub u: u64,
    pub v: u64,
    pub w: u64,
    pub ell: u64,
}

/// All exponent triples for `f^k`, by a double loop over `(u, v)`.
pub fn exponent_triples(s: u32, t: u32, k: u64) -> Result<Vec<ExponentTriple>> {
    if s == 0 || s > 62 || t == 0 || t > 63 {
        return Err(Error::Domain(
            "exponent triples need 1 <= s <= 62 and 1 <= t <= 63",
        ));
    }
    guard("exponent-triple k", k, MAX_TRIPLE_K)?;
    let a = (1u128 << s) + 1;
    let b = (1u128 << (s - 1)) + 1;
    let modulus = (1u128 << t) - 1;
    let mut out = Vec::new();
    for u in 0..=k {
        for v in 0..=k - u {
            let w = k - u - v;
            let total = a * u as u128 + b * v as u128 + w as u128;
            if total > 0 && total.is_multiple_of(modulus) {
                out.push(ExponentTriple {
                    u,
                    v,
                    w,
                    ell: (total / modulus) as u64,
                });
            }
        }
    }
    Ok(out)
}

fn check_alpha(t: u32, alpha: FieldElement, field: &FieldSpec) -> Result<()> {
    if field.n() != t {
        return Err(Error::Domain("alpha must live in a field of degree t"));
    }
    if !field.contains(alpha) {
        return Err(Error::OutOfField {
            value: alpha.0 as u64,
            degree: t,
        });
    }
    Ok(())
}

/// Sums `alpha^w` over the triples whose multinomial is odd.
pub fn top_coeff_from_triples(
    triples: &[ExponentTriple],
    k: u64,
    alpha: FieldElement,
    field: &FieldSpec,
) -> FieldElement {
    triples
        .iter()
        .filter(|tr| nonzero_mod2_unchecked(k, &[tr.u, tr.v, tr.w]))
        .fold(FieldElement::ZERO, |acc, tr| acc + field.pow(alpha, tr.w))
}

/// Coefficient of `x^(2^t - 1)` in `f^k mod (x^(2^t) - x)` by the multinomial
/// expansion and Lucas' theorem.
pub fn top_coeff_combinatorial(
    s: u32,
    t: u32,
    alpha: FieldElement,
    k: u64,
    field: &FieldSpec,
) -> Result<FieldElement> {
    check_alpha(t, alpha, field)?;
    let triples = exponent_triples(s, t, k)?;
    Ok(top_coeff_from_triples(&triples, k, alpha, field))
}

fn check_regime(s: u32, t: u32) -> Result<()> {
    if 3 <= s && s < t {
        Ok(())
    } else {
        Err(Error::OutOfRegime { s, t })
    }
}

/// `sum_{i=lo}^{hi} alpha^(2^i)`; zero when `hi < lo`.
fn frobenius_sum(alpha: FieldElement, lo: u32, hi: u32, field: &FieldSpec) -> FieldElement {
    (lo..=hi).fold(FieldElement::ZERO, |acc, i| acc + field.frobenius(alpha, i))
}

/// `sum_{i=2}^{t-s+1} alpha^(2^i)`; the `f^(2^t-3)` coefficient vanishes
/// (for nonzero alpha) exactly when this equals 1.
pub fn case1_sum(s: u32, t: u32, alpha: FieldElement, field: &FieldSpec) -> Result<FieldElement> {
    check_regime(s, t)?;
    check_alpha(t, alpha, field)?;
    Ok(frobenius_sum(alpha, 2, t - s + 1, field))
}

/// `alpha^(2^t - 2^(t-s+2) - 3) (1 + sum_{i=2}^{t-s+1} alpha^(2^i))`.
pub fn closed_form_2t3(
    s: u32,
    t: u32,
    alpha: FieldElement,
    field: &FieldSpec,
) -> Result<FieldElement> {
    check_regime(s, t)?;
    check_alpha(t, alpha, field)?;
    let e = (1u64 << t) - (1u64 << (t - s + 2)) - 3;
    let sum = frobenius_sum(alpha, 2, t - s + 1, field);
    Ok(field.mul(field.pow(alpha, e), FieldElement::ONE + sum))
}

/// `alpha^(2^t - 2^(t-s+2) - 2^(t-s+1) - 4) (1 + S) + alpha^(2^t - 2^(t-s+2) - 4) S`
/// with `S = sum_{i=2}^{t-s} alpha^(2^i)`.
pub fn closed_form_2t4(
    s: u32,
    t: u32,
    alpha: FieldElement,
    field: &FieldSpec,
) -> Result<FieldElement> {
    check_regime(s, t)?;
    check_alpha(t, alpha, field)?;
    let e1 = (1u64 << t) - (1u64 << (t - s + 2)) - (1u64 << (t - s + 1)) - 4;
    let e2 = (1u64 << t) - (1u64 << (t - s + 2)) - 4;
    let sum = frobenius_sum(alpha, 2, t - s, field);
    Ok(field.mul(field.pow(alpha, e1), FieldElement::ONE + sum)
        + field.mul(field.pow(alpha, e2), sum))
}

/// `alpha^(2^t - 2^(t-s+2) + 2^(t-s+1) - 4)`, the value the `f^(2^t-4)`
/// coefficient takes once [`case1_sum`] equals 1.
pub fn nonvanishing_value(
    s: u32,
    t: u32,
    alpha: FieldElement,
    field: &FieldSpec,
) -> Result<FieldElement> {
    check_regime(s, t)?;
    check_alpha(t, alpha, field)?;
    let e = (1u64 << t) - (1u64 << (t - s + 2)) + (1u64 << (t - s + 1)) - 4;
    Ok(field.pow(alpha, e))
}

/// The only multipliers `ell` that can occur for `k = 2^t - 3` (offset 3)
/// or `k = 2^t - 4` (offset 4) when `3 <= s < t`.
pub fn admissible_ells(s: u32, offset: u64) -> [u64; 2] {
    [offset, (1u64 << (s - 1)) + offset]
}

/// Independent multinomial oracle: Pascal's rule mod `p` up to a fixed row.
pub mod oracle {
    /// `C(n, r) mod p` for `n <= max_n`, built row by row.
    pub struct PascalTable {
        p: u64,
        rows: Vec<Vec<u8>>,
    }

    impl PascalTable {
        pub fn new(max_n: usize, p: u64) -> PascalTable {
            assert!(p < 256);
            let mut rows: Vec<Vec<u8>> = Vec::with_capacity(max_n + 1);
            for n in 0..=max_n {
                let mut row = vec![0u8; n + 1];
                row[0] = 1;
                row[n] = 1;
                for r in 1..n {
                    row[r] = ((rows[n - 1][r - 1] as u64 + rows[n - 1][r] as u64) % p) as u8;
                }
                rows.push(row);
            }
            PascalTable { p, rows }
        }

        pub fn binomial(&self, n: u64, r: u64) -> u64 {
            if r > n {
                0
            } else {
                self.rows[n as usize][r as usize] as u64
            }
        }

        /// `k! / prod(parts!) mod p` as a product of binomials.
        pub fn multinomial(&self, k: u64, parts: &[u64]) -> u64 {
            let mut remaining = k;
            let mut acc = 1u64;
            for &part in parts {
                if part > remaining {
                    return 0;
                }
                acc = acc * self.binomial(remaining, part) % self.p;
                remaining -= part;
            }
            if remaining == 0 {
                acc
            } else {
                0
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::poly::SparsePoly;

    #[test]
    fn multinomial_examples() {
        assert_eq!(multinomial_mod_p(3, &[1, 2], 2).unwrap(), 1);
        assert_eq!(multinomial_mod_p(2, &[1, 1], 2).unwrap(), 0);
        assert_eq!(multinomial_mod_p(509, &[16, 224, 269], 2).unwrap(), 1);
        assert_eq!(multinomial_mod_p(6, &[2, 2, 2], 7).unwrap(), 90 % 7);
        assert_eq!(
            multinomial_mod_p(3, &[1, 1], 2),
            Err(Error::SumMismatch { k: 3, sum: 2 })
        );
        assert_eq!(multinomial_mod_p(3, &[1, 2], 4), Err(Error::NotPrime(4)));
        assert_eq!(multinomial_mod_p(3, &[1, 2], 67), Err(Error::NotPrime(67)));
    }

    #[test]
    fn mod2_examples() {
        assert!(multinomial_nonzero_mod2(3, &[1, 2]).unwrap());
        assert!(!multinomial_nonzero_mod2(2, &[1, 1]).unwrap());
        assert!(multinomial_nonzero_mod2(2044, &[32, 704, 1308]).unwrap());
        assert!(multinomial_nonzero_mod2(4, &[1, 1]).is_err());
    }

    #[test]
    fn lucas_matches_pascal_small() {
        let tables: Vec<_> = [2u64, 3, 5, 7]
            .iter()
            .map(|&p| (p, oracle::PascalTable::new(64, p)))
            .collect();
        for k in 0..=64u64 {
            for u in 0..=k {
                for v in 0..=k - u {
                    let parts = [u, v, k - u - v];
                    for (p, table) in &tables {
                        assert_eq!(
                            multinomial_mod_p(k, &parts, *p).unwrap(),
                            table.multinomial(k, &parts)
                        );
                    }
                    assert_eq!(
                        multinomial_nonzero_mod2(k, &parts).unwrap(),
                        tables[0].1.multinomial(k, &parts) != 0
                    );
                }
            }
        }
    }

    #[test]
    fn triple_examples() {
        let tr = exponent_triples(3, 5, 29).unwrap();
        assert!(!tr.is_empty());
        assert!(tr.iter().all(|x| [3, 7].contains(&x.ell)));
        let tr = exponent_triples(3, 5, 28).unwrap();
        assert!(tr.iter().all(|x| [4, 8].contains(&x.ell)));
        assert_eq!(
            exponent_triples(1, 2, 1).unwrap(),
            vec![ExponentTriple {
                u: 1,
                v: 0,
                w: 0,
                ell: 1
            }]
        );
        assert!(exponent_triples(3, 5, MAX_TRIPLE_K + 1).is_err());
    }

    fn trinomial(s: u32, alpha: FieldElement, field: &FieldSpec) -> SparsePoly {
        SparsePoly::from_terms(
            field,
            [
                ((1u64 << s) + 1, FieldElement::ONE),
                ((1u64 << (s - 1)) + 1, FieldElement::ONE),
                (1, alpha),
            ],
        )
    }

    #[test]
    fn combinatorial_examples() {
        let f8 = make_field(3, None).unwrap();
        let c = top_coeff_combinatorial(1, 3, FieldElement::ZERO, 5, &f8).unwrap();
        assert_eq!(
            c,
            trinomial(1, FieldElement::ZERO, &f8).pow_mod(5).coeff_top()
        );

        let f16 = make_field(4, None).unwrap();
        let one = FieldElement::ONE;
        assert_eq!(
            top_coeff_combinatorial(3, 4, one, 13, &f16).unwrap(),
            FieldElement::ZERO
        );
        assert_eq!(
            closed_form_2t3(3, 4, one, &f16).unwrap(),
            FieldElement::ZERO
        );
        assert_eq!(top_coeff_combinatorial(3, 4, one, 12, &f16).unwrap(), one);
        assert_eq!(closed_form_2t4(3, 4, one, &f16).unwrap(), one);
        assert_eq!(trinomial(3, one, &f16).pow_mod(12).coeff_top(), one);
    }

    #[test]
    fn closed_form_instances() {
        let f16 = make_field(4, None).unwrap();
        let f32_ = make_field(5, None).unwrap();
        for a in f16.elements() {
            let expect = f16.mul(f16.pow(a, 5), FieldElement::ONE + f16.pow(a, 4));
            assert_eq!(closed_form_2t3(3, 4, a, &f16).unwrap(), expect);
            assert_eq!(closed_form_2t4(3, 4, a, &f16).unwrap(), FieldElement::ONE);
        }
        for a in f32_.elements() {
            let expect = f32_.mul(
                f32_.pow(a, 13),
                FieldElement::ONE + f32_.pow(a, 4) + f32_.pow(a, 8),
            );
            assert_eq!(closed_form_2t3(3, 5, a, &f32_).unwrap(), expect);
            let expect4 = f32_.pow(a, 4) + f32_.pow(a, 8) + f32_.pow(a, 16);
            assert_eq!(closed_form_2t4(3, 5, a, &f32_).unwrap(), expect4);
        }
        assert_eq!(
            closed_form_2t3(2, 5, FieldElement::ONE, &f32_),
            Err(Error::OutOfRegime { s: 2, t: 5 })
        );
        assert_eq!(
            closed_form_2t4(5, 5, FieldElement::ONE, &f32_),
            Err(Error::OutOfRegime { s: 5, t: 5 })
        );
    }

    #[test]
    fn observations_on_low_bits() {
        // bit 1 of 2^t - 3 is clear; bits 0 and 1 of 2^t - 4 are clear.
        for t in 2..=10u32 {
            let k3 = (1u64 << t) - 3;
            let k4 = (1u64 << t) - 4;
            for u in 0..=k3 {
                for v in 0..=k3 - u {
                    let parts = [u, v, k3 - u - v];
                    if parts.iter().any(|x| x % 4 >= 2) {
                        assert!(!multinomial_nonzero_mod2(k3, &parts).unwrap());
                    }
                }
            }
            for u in 0..=k4 {
                for v in 0..=k4 - u {
                    let parts = [u, v, k4 - u - v];
                    if parts.iter().any(|x| x % 4 != 0) {
                        assert!(!multinomial_nonzero_mod2(k4, &parts).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn weight_counts_bits() {
        assert_eq!(weight(0), 0);
        assert_eq!(weight(0b1011), 3);
    }
}
