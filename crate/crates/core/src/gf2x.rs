//! Arithmetic on polynomials over F_2 packed into machine words.
//!
//! Bit `i` of a word is the coefficient of `x^i`. Only what the field
//! constructor needs is here: carry-less products, remainders, gcd and the
//! Rabin irreducibility test.

/// Carry-less product of two polynomials of degree < 32.
#[inline]
pub(crate) fn clmul(a: u32, b: u32) -> u64 {
    let a = a as u64;
    let mut b = b;
    let mut acc = 0u64;
    let mut shift = 0;
    while b != 0 {
        let tz = b.trailing_zeros();
        shift += tz;
        b >>= tz;
        acc ^= a << shift;
        b >>= 1;
        shift += 1;
    }
    acc
}

pub(crate) fn degree(p: u64) -> Option<u32> {
    if p == 0 {
        None
    } else {
        Some(63 - p.leading_zeros())
    }
}

/// Remainder of `a` modulo a nonzero `m`.
pub(crate) fn rem(mut a: u64, m: u64) -> u64 {
    let dm = degree(m).expect("division by the zero polynomial");
    while let Some(da) = degree(a) {
        if da < dm {
            break;
        }
        a ^= m << (da - dm);
    }
    a
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = rem(a, b);
        a = b;
        b = r;
    }
    a
}

/// `a * b mod m` for `deg a, deg b < deg m <= 32`.
pub(crate) fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    rem(clmul(a as u32, b as u32), m)
}

/// `x^(2^k) mod m`, by `k` repeated squarings.
pub(crate) fn x_pow_2k(k: u32, m: u64) -> u64 {
    let mut acc = rem(0b10, m);
    for _ in 0..k {
        acc = mulmod(acc, acc, m);
    }
    acc
}

pub(crate) fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test: `m` of degree `n` is irreducible iff `x^(2^n) = x mod m`
/// and `gcd(x^(2^(n/p)) - x, m) = 1` for every prime `p | n`.
pub(crate) fn is_irreducible(m: u64) -> bool {
    let n = match degree(m) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    if x_pow_2k(n, m) != rem(0b10, m) {
        return false;
    }
    prime_divisors(n as u64).into_iter().all(|p| {
        let h = x_pow_2k(n / p as u32, m) ^ rem(0b10, m);
        gcd(m, h) == 1
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_irreducible(m: u64) -> bool {
        let n = degree(m).unwrap();
        (2u64..(1 << (n / 2 + 1))).all(|d| degree(d).unwrap() > n / 2 || rem(m, d) != 0)
    }

    #[test]
    fn clmul_small() {
        assert_eq!(clmul(0b11, 0b11), 0b101);
        assert_eq!(clmul(0b111, 0b10), 0b1110);
        assert_eq!(clmul(u32::MAX, 1), u32::MAX as u64);
    }

    #[test]
    fn rabin_matches_trial_division() {
        for m in 2u64..(1 << 11) {
            assert_eq!(
                is_irreducible(m),
                trial_division_irreducible(m),
                "m = {m:#b}"
            );
        }
    }
}
