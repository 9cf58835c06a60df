//! Binary fields F_{2^n}, 1 <= n <= 32, in a polynomial basis.
//!
//! A [`FieldSpec`] is immutable and cheap to clone; fields of degree up to
//! [`LOG_TABLE_MAX_DEGREE`] carry discrete log/antilog tables built from the
//! primitive element, and larger ones fall back to carry-less multiplication.

use std::fmt;
use std::ops::Add;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf2x;

/// Largest degree for which log/antilog tables are built (2 x 4 MiB at 20).
pub const LOG_TABLE_MAX_DEGREE: u32 = 20;

pub const MAX_DEGREE: u32 = 32;

/// An element of some F_{2^n}: bit `i` is the coefficient of `x^i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Parses lowercase (or uppercase) hex, with or without a `0x` prefix.
    pub fn from_hex(s: &str) -> Result<FieldElement> {
        parse_hex(s)
            .and_then(|v| u32::try_from(v).ok())
            .map(FieldElement)
            .ok_or_else(|| Error::Parse(format!("`{s}` is not a 32-bit hex value")))
    }
}

impl Add for FieldElement {
    type Output = FieldElement;

    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: FieldElement) -> FieldElement {
        FieldElement(self.0 ^ rhs.0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:x}", self.0)
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

pub(crate) fn parse_hex(s: &str) -> Option<u64> {
    let s = s.trim();
    let digits = s
        .strip_prefix("0x")
        .or_else(|| s.strip_prefix("0X"))
        .unwrap_or(s);
    if digits.is_empty() {
        return None;
    }
    u64::from_str_radix(digits, 16).ok()
}

/// Field addition (bitwise xor).
#[inline]
pub fn add(x: FieldElement, y: FieldElement) -> FieldElement {
    x + y
}

struct LogTables {
    /// `exp[i] = gamma^i` for `0 <= i < q - 1`.
    exp: Vec<u32>,
    /// `log[x]` for nonzero `x`; `log[0]` is unused.
    log: Vec<u32>,
}

struct Inner {
    n: u32,
    modulus: u64,
    gamma: FieldElement,
    factors: Vec<u64>,
    tables: Option<LogTables>,
}

/// An immutable description of F_{2^n}.
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<Inner>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("n", &self.n())
            .field("modulus", &format_args!("{:#x}", self.modulus()))
            .field("gamma", &self.gamma())
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.n() == other.n() && self.modulus() == other.modulus())
    }
}

impl Eq for FieldSpec {}

#[derive(Serialize)]
struct FieldInfo {
    n: u32,
    modulus: String,
    gamma: FieldElement,
    factors: Vec<u64>,
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        FieldInfo {
            n: self.n(),
            modulus: format!("{:x}", self.modulus()),
            gamma: self.gamma(),
            factors: self.q_minus_1_factors().to_vec(),
        }
        .serialize(serializer)
    }
}

/// The monic irreducible polynomial of degree `n` with the numerically
/// smallest encoding.
pub fn find_irreducible(n: u32) -> Result<u64> {
    check_degree(n)?;
    let lo = 1u64 << n;
    (lo..lo << 1)
        .find(|&m| gf2x::is_irreducible(m))
        .ok_or(Error::Domain("no irreducible polynomial found"))
}

fn check_degree(n: u32) -> Result<()> {
    if (1..=MAX_DEGREE).contains(&n) {
        Ok(())
    } else {
        Err(Error::DegreeOutOfRange(n))
    }
}

/// Prime factorization of `v` by trial division, with multiplicity.
pub fn factorize(mut v: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= v {
        while v.is_multiple_of(p) {
            out.push(p);
            v /= p;
        }
        p += 1;
    }
    if v > 1 {
        out.push(v);
    }
    out
}

/// Builds F_{2^n}, using the smallest irreducible modulus unless one is given.
pub fn make_field(n: u32, modulus: Option<u64>) -> Result<FieldSpec> {
    check_degree(n)?;
    let modulus = match modulus {
        Some(m) => {
            if gf2x::degree(m) != Some(n) {
                return Err(Error::NotMonic {
                    modulus: m,
                    degree: n,
                });
            }
            if !gf2x::is_irreducible(m) {
                return Err(Error::Reducible(m));
            }
            m
        }
        None => find_irreducible(n)?,
    };
    let order = (1u64 << n) - 1;
    let mut spec = FieldSpec {
        inner: Arc::new(Inner {
            n,
            modulus,
            gamma: FieldElement::ONE,
            factors: factorize(order),
            tables: None,
        }),
    };
    let gamma = find_primitive(&spec);
    let tables = (n <= LOG_TABLE_MAX_DEGREE).then(|| build_tables(&spec, gamma));
    let inner = Arc::get_mut(&mut spec.inner).expect("freshly built field is unshared");
    inner.gamma = gamma;
    inner.tables = tables;
    Ok(spec)
}

fn build_tables(spec: &FieldSpec, gamma: FieldElement) -> LogTables {
    let order = spec.order() as usize;
    let mut exp = Vec::with_capacity(order);
    let mut log = vec![0u32; order + 1];
    let mut x = FieldElement::ONE;
    for i in 0..order {
        exp.push(x.0);
        log[x.0 as usize] = i as u32;
        x = spec.mul_clmul(x, gamma);
    }
    LogTables { exp, log }
}

/// The smallest element (by encoding) whose multiplicative order is `2^n - 1`.
pub fn find_primitive(spec: &FieldSpec) -> FieldElement {
    let order = spec.order();
    (1..=spec.max_bits())
        .map(FieldElement)
        .find(|&x| {
            spec.q_minus_1_factors()
                .iter()
                .all(|&p| spec.pow_clmul(x, order / p) != FieldElement::ONE)
        })
        .expect("the multiplicative group of a finite field is cyclic")
}

impl FieldSpec {
    #[inline]
    pub fn n(&self) -> u32 {
        self.inner.n
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.inner.modulus
    }

    #[inline]
    pub fn gamma(&self) -> FieldElement {
        self.inner.gamma
    }

    /// Field size `q = 2^n`.
    #[inline]
    pub fn q(&self) -> u64 {
        1u64 << self.inner.n
    }

    /// `q - 1`, the order of the multiplicative group.
    #[inline]
    pub fn order(&self) -> u64 {
        self.q() - 1
    }

    /// Prime factors of `2^n - 1` with multiplicity, ascending.
    pub fn q_minus_1_factors(&self) -> &[u64] {
        &self.inner.factors
    }

    #[inline]
    pub(crate) fn max_bits(&self) -> u32 {
        self.order() as u32
    }

    pub fn has_log_tables(&self) -> bool {
        self.inner.tables.is_some()
    }

    pub fn contains(&self, x: FieldElement) -> bool {
        (x.0 as u64) < self.q()
    }

    pub fn element(&self, bits: u64) -> Result<FieldElement> {
        if bits < self.q() {
            Ok(FieldElement(bits as u32))
        } else {
            Err(Error::OutOfField {
                value: bits,
                degree: self.n(),
            })
        }
    }

    /// Every element in increasing encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (0..self.q()).map(|b| FieldElement(b as u32))
    }

    /// Reduces `e` modulo `2^n - 1` by folding the high bits onto the low ones.
    #[inline]
    pub fn reduce_exponent(&self, mut e: u64) -> u64 {
        let n = self.inner.n;
        let mask = self.order();
        while e > mask {
            e = (e & mask) + (e >> n);
        }
        if e == mask {
            0
        } else {
            e
        }
    }

    #[inline]
    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        x + y
    }

    #[inline]
    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        match &self.inner.tables {
            Some(t) => {
                if x.0 == 0 || y.0 == 0 {
                    return FieldElement::ZERO;
                }
                let l = t.log[x.0 as usize] as u64 + t.log[y.0 as usize] as u64;
                FieldElement(t.exp[self.reduce_exponent(l) as usize])
            }
            None => self.mul_clmul(x, y),
        }
    }

    #[inline]
    fn mul_clmul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        FieldElement(gf2x::rem(gf2x::clmul(x.0, y.0), self.inner.modulus) as u32)
    }

    #[inline]
    pub fn square(&self, x: FieldElement) -> FieldElement {
        self.mul(x, x)
    }

    /// `x^e` with `0^0 = 1`.
    pub fn pow(&self, x: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if x.0 == 0 {
            return FieldElement::ZERO;
        }
        match &self.inner.tables {
            Some(t) => {
                let l = t.log[x.0 as usize] as u64 * self.reduce_exponent(e);
                FieldElement(t.exp[self.reduce_exponent(l) as usize])
            }
            None => self.pow_clmul(x, self.reduce_exponent(e)),
        }
    }

    fn pow_clmul(&self, x: FieldElement, e: u64) -> FieldElement {
        let mut base = x;
        let mut e = e;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_clmul(acc, base);
            }
            base = self.mul_clmul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `x^(2^k)`, the `k`-th Frobenius iterate.
    pub fn frobenius(&self, x: FieldElement, k: u32) -> FieldElement {
        (0..k % self.n()).fold(x, |acc, _| self.square(acc))
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        if x.is_zero() {
            return Err(Error::Domain("zero has no multiplicative inverse"));
        }
        Ok(self.pow(x, self.order() - 1))
    }

    pub fn div(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(x, self.inv(y)?))
    }

    /// `gamma^i`.
    #[inline]
    pub fn gamma_pow(&self, i: u64) -> FieldElement {
        match &self.inner.tables {
            Some(t) => FieldElement(t.exp[self.reduce_exponent(i) as usize]),
            None => self.pow(self.gamma(), i),
        }
    }

    /// Discrete log base gamma, available only on tabulated fields.
    #[inline]
    pub(crate) fn log(&self, x: FieldElement) -> Option<u64> {
        match &self.inner.tables {
            Some(t) if x.0 != 0 => Some(t.log[x.0 as usize] as u64),
            _ => None,
        }
    }

    #[inline]
    pub(crate) fn exp_table(&self) -> Option<&[u32]> {
        self.inner.tables.as_ref().map(|t| t.exp.as_slice())
    }

    #[inline]
    pub(crate) fn log_table(&self) -> Option<&[u32]> {
        self.inner.tables.as_ref().map(|t| t.log.as_slice())
    }

    /// Least `k >= 1` with `x^k = 1`.
    pub fn multiplicative_order(&self, x: FieldElement) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::Domain("zero has no multiplicative order"));
        }
        let mut k = self.order();
        for &p in self.q_minus_1_factors() {
            if k.is_multiple_of(p) && self.pow(x, k / p) == FieldElement::ONE {
                k /= p;
            }
        }
        Ok(k)
    }
}

/// Standalone form of [`FieldSpec::multiplicative_order`].
pub fn multiplicative_order(x: FieldElement, spec: &FieldSpec) -> Result<u64> {
    spec.multiplicative_order(x)
}

pub fn mul(x: FieldElement, y: FieldElement, spec: &FieldSpec) -> FieldElement {
    spec.mul(x, y)
}

pub fn pow(x: FieldElement, e: u64, spec: &FieldSpec) -> FieldElement {
    spec.pow(x, e)
}

pub fn inv(x: FieldElement, spec: &FieldSpec) -> Result<FieldElement> {
    spec.inv(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(b: u32) -> FieldElement {
        FieldElement(b)
    }

    #[test]
    fn smallest_irreducibles() {
        assert_eq!(find_irreducible(1).unwrap(), 0b10);
        assert_eq!(find_irreducible(2).unwrap(), 0b111);
        assert_eq!(find_irreducible(3).unwrap(), 0b1011);
        assert_eq!(find_irreducible(6).unwrap(), 0b1000011);
        assert!(find_irreducible(0).is_err());
        assert!(find_irreducible(33).is_err());
    }

    #[test]
    fn degree_six_scan_by_brute_division() {
        // Independent scan: a degree-6 polynomial is irreducible iff no
        // polynomial of degree 1..=3 divides it.
        let smallest = (64u64..128)
            .find(|&m| (2u64..16).all(|d| gf2x::rem(m, d) != 0))
            .unwrap();
        assert_eq!(smallest, 0b1000011);
    }

    #[test]
    fn small_fields() {
        let f4 = make_field(2, None).unwrap();
        assert_eq!(f4.modulus(), 0b111);
        assert_eq!(f4.gamma(), fe(0b10));
        let f8 = make_field(3, None).unwrap();
        assert_eq!(f8.multiplicative_order(f8.gamma()).unwrap(), 7);
        let f2 = make_field(1, None).unwrap();
        assert_eq!(f2.gamma(), FieldElement::ONE);
        assert_eq!(f2.q_minus_1_factors(), &[] as &[u64]);
    }

    #[test]
    fn alternative_modulus() {
        let f16 = make_field(4, Some(0b11111)).unwrap();
        assert_ne!(f16.gamma(), fe(0b10));
        assert_eq!(f16.multiplicative_order(fe(0b10)).unwrap(), 5);
        assert_eq!(f16.multiplicative_order(f16.gamma()).unwrap(), 15);
        assert_eq!(make_field(4, Some(0b10101)), Err(Error::Reducible(0b10101)));
        assert!(matches!(
            make_field(4, Some(0b1011)),
            Err(Error::NotMonic { .. })
        ));
    }

    #[test]
    fn f4_and_f8_arithmetic() {
        let f4 = make_field(2, None).unwrap();
        assert_eq!(f4.mul(fe(2), fe(2)), fe(3));
        assert_eq!(f4.mul(fe(2), fe(3)), FieldElement::ONE);
        assert_eq!(f4.inv(fe(2)).unwrap(), fe(3));
        assert!(f4.inv(FieldElement::ZERO).is_err());
        let f8 = make_field(3, None).unwrap();
        assert_eq!(f8.pow(fe(2), 7), FieldElement::ONE);
        assert_eq!(f8.pow(FieldElement::ZERO, 0), FieldElement::ONE);
        assert_eq!(f8.pow(FieldElement::ZERO, 5), FieldElement::ZERO);
    }

    #[test]
    fn orders() {
        let f16 = make_field(4, None).unwrap();
        assert_eq!(f16.multiplicative_order(FieldElement::ONE).unwrap(), 1);
        let g3 = f16.pow(f16.gamma(), 3);
        assert_eq!(f16.multiplicative_order(g3).unwrap(), 5);
        assert!(f16.multiplicative_order(FieldElement::ZERO).is_err());
        let f4 = make_field(2, None).unwrap();
        assert_eq!(f4.multiplicative_order(fe(2)).unwrap(), 3);
    }

    #[test]
    fn primitive_is_smallest_of_full_order() {
        for n in 1..=10 {
            let f = make_field(n, None).unwrap();
            let by_scan = (1..f.q() as u32)
                .map(FieldElement)
                .find(|&x| {
                    // naive order: smallest k with x^k = 1
                    let mut y = x;
                    let mut k = 1;
                    while y != FieldElement::ONE {
                        y = f.mul(y, x);
                        k += 1;
                    }
                    k == f.order()
                })
                .unwrap();
            assert_eq!(f.gamma(), by_scan, "n = {n}");
        }
    }

    #[test]
    fn table_and_clmul_paths_agree() {
        let f = make_field(12, None).unwrap();
        assert!(f.has_log_tables());
        for x in (0..f.q() as u32).step_by(37) {
            for y in (0..f.q() as u32).step_by(53) {
                assert_eq!(f.mul(fe(x), fe(y)), f.mul_clmul(fe(x), fe(y)));
            }
            if x != 0 {
                assert_eq!(f.pow(fe(x), 1234567), f.pow_clmul(fe(x), 1234567));
            }
        }
    }

    #[test]
    fn large_fields_without_tables() {
        for n in [21, 24, 28, 31, 32] {
            let f = make_field(n, None).unwrap();
            assert!(!f.has_log_tables());
            let product: u64 = f.q_minus_1_factors().iter().product();
            assert_eq!(product, f.order());
            assert_eq!(f.multiplicative_order(f.gamma()).unwrap(), f.order());
            let x = fe(0x1234_5678 & f.max_bits());
            assert_eq!(f.frobenius(x, n), x);
            assert_eq!(f.pow(x, f.q()), x);
            assert_eq!(f.mul(x, f.inv(x).unwrap()), FieldElement::ONE);
        }
    }

    #[test]
    fn hex_roundtrip() {
        assert_eq!(FieldElement::from_hex("1f").unwrap(), fe(31));
        assert_eq!(FieldElement::from_hex("0x1F").unwrap(), fe(31));
        assert!(FieldElement::from_hex("").is_err());
        assert!(FieldElement::from_hex("1_0000_0000").is_err());
        assert_eq!(fe(0xabc).to_string(), "abc");
    }
}
