//! Sparse univariate polynomials over F_q, reduced modulo `x^q - x`.
//!
//! Reduction sends every positive exponent `e` to `((e - 1) mod (q - 1)) + 1`,
//! so positive multiples of `q - 1` land on `q - 1` and the constant term is
//! left alone. This keeps the induced map on F_q unchanged.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// Above this field size products never use a dense scratch vector.
const DENSE_LIMIT: u64 = 1 << 20;

/// Canonical representative of `x^e` modulo `x^q - x`.
#[inline]
pub fn canonical_exponent(e: u64, field: &FieldSpec) -> u64 {
    if e == 0 {
        0
    } else {
        field.reduce_exponent(e - 1) + 1
    }
}

/// A polynomial over F_q as an exponent -> nonzero coefficient map.
#[derive(Clone, PartialEq, Eq)]
pub struct SparsePoly {
    field: FieldSpec,
    terms: BTreeMap<u64, FieldElement>,
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparsePoly[n={}]({})", self.field.n(), self)
    }
}

/// `EXP:COEFHEX` pairs, highest exponent first, comma separated.
impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{e}:{c}")?;
            first = false;
        }
        Ok(())
    }
}

impl SparsePoly {
    pub fn zero(field: &FieldSpec) -> SparsePoly {
        SparsePoly {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: &FieldSpec) -> SparsePoly {
        Self::monomial(field, 0, FieldElement::ONE)
    }

    pub fn monomial(field: &FieldSpec, e: u64, c: FieldElement) -> SparsePoly {
        Self::from_terms(field, [(e, c)])
    }

    /// Collects raw terms; equal exponents are summed, zeros dropped.
    /// Exponents are not reduced.
    pub fn from_terms<I>(field: &FieldSpec, terms: I) -> SparsePoly
    where
        I: IntoIterator<Item = (u64, FieldElement)>,
    {
        let mut p = SparsePoly::zero(field);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: u64, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert(FieldElement::ZERO);
        *slot = *slot + c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Parses the `EXP:COEFHEX,...` text form; the empty string is zero.
    pub fn parse(field: &FieldSpec, text: &str) -> Result<SparsePoly> {
        let mut terms = Vec::new();
        for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (e, c) = part
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("term `{part}` is not EXP:COEFHEX")))?;
            let e: u64 = e
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in `{part}`")))?;
            let c = FieldElement::from_hex(c)?;
            if !field.contains(c) {
                return Err(Error::OutOfField {
                    value: c.0 as u64,
                    degree: field.n(),
                });
            }
            terms.push((e, c));
        }
        Ok(Self::from_terms(field, terms))
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, e: u64) -> FieldElement {
        self.terms.get(&e).copied().unwrap_or_default()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, FieldElement)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn canonicalize(&self) -> SparsePoly {
        Self::from_terms(
            &self.field,
            self.terms()
                .map(|(e, c)| (canonical_exponent(e, &self.field), c)),
        )
    }

    pub fn is_canonical(&self) -> bool {
        self.degree().is_none_or(|d| d < self.field.q())
    }

    pub fn add(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.same_field(other)?;
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c);
        }
        Ok(out)
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: FieldElement) -> SparsePoly {
        Self::from_terms(
            &self.field,
            self.terms().map(|(e, a)| (e, self.field.mul(a, c))),
        )
    }

    fn same_field(&self, other: &SparsePoly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    /// Product reduced modulo `x^q - x`.
    pub fn mul(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.same_field(other)?;
        let f = &self.field;
        let q = f.q();
        let work = (self.len() as u64).saturating_mul(other.len() as u64);
        if q <= DENSE_LIMIT && q <= work.saturating_mul(4) {
            let mut acc = vec![FieldElement::ZERO; q as usize];
            for (e1, c1) in self.terms() {
                let e1 = canonical_exponent(e1, f);
                for (e2, c2) in other.terms() {
                    let e = canonical_exponent(e1 + canonical_exponent(e2, f), f);
                    acc[e as usize] = acc[e as usize] + f.mul(c1, c2);
                }
            }
            Ok(Self::from_dense(f, &acc))
        } else {
            let mut out = SparsePoly::zero(f);
            for (e1, c1) in self.terms() {
                let e1 = canonical_exponent(e1, f);
                for (e2, c2) in other.terms() {
                    let e = canonical_exponent(e1 + canonical_exponent(e2, f), f);
                    out.add_term(e, f.mul(c1, c2));
                }
            }
            Ok(out)
        }
    }

    /// Squaring in characteristic 2 is the coefficient-wise Frobenius.
    pub fn square(&self) -> SparsePoly {
        let f = &self.field;
        Self::from_terms(
            f,
            self.terms().map(|(e, c)| {
                (
                    canonical_exponent(2 * canonical_exponent(e, f), f),
                    f.square(c),
                )
            }),
        )
    }

    /// `self^k mod (x^q - x)` by square-and-multiply.
    pub fn pow_mod(&self, k: u64) -> SparsePoly {
        let mut acc = SparsePoly::one(&self.field);
        if k == 0 {
            return acc;
        }
        let mut base = self.canonicalize();
        let mut k = k;
        loop {
            if k & 1 == 1 {
                acc = acc.mul(&base).expect("same field");
            }
            k >>= 1;
            if k == 0 {
                break acc;
            }
            base = base.square();
        }
    }

    /// `self^k mod (x^q - x)` by `k` successive multiplications.
    pub fn pow_mod_incremental(&self, k: u64) -> SparsePoly {
        let base = self.canonicalize();
        (0..k).fold(SparsePoly::one(&self.field), |acc, _| {
            acc.mul(&base).expect("same field")
        })
    }

    pub fn eval(&self, x0: FieldElement) -> FieldElement {
        let f = &self.field;
        self.terms().fold(FieldElement::ZERO, |acc, (e, c)| {
            if e == 0 {
                acc + c
            } else {
                acc + f.mul(c, f.pow(x0, e))
            }
        })
    }

    /// Coefficient of `x^(q-1)`; zero if absent.
    pub fn coeff_top(&self) -> FieldElement {
        self.coeff(self.field.order())
    }

    pub(crate) fn to_dense(&self) -> Vec<FieldElement> {
        let mut v = vec![FieldElement::ZERO; self.field.q() as usize];
        for (e, c) in self.canonicalize().terms() {
            v[e as usize] = c;
        }
        v
    }

    pub(crate) fn from_dense(field: &FieldSpec, coeffs: &[FieldElement]) -> SparsePoly {
        SparsePoly {
            field: field.clone(),
            terms: coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, &c)| (e as u64, c))
                .collect(),
        }
    }
}

pub fn canonicalize(p: &SparsePoly) -> SparsePoly {
    p.canonicalize()
}

pub fn poly_mul(p1: &SparsePoly, p2: &SparsePoly) -> Result<SparsePoly> {
    p1.mul(p2)
}

pub fn poly_pow_mod(p: &SparsePoly, k: u64) -> SparsePoly {
    p.pow_mod(k)
}

pub fn eval(p: &SparsePoly, x0: FieldElement) -> FieldElement {
    p.eval(x0)
}

pub fn coeff_top(p: &SparsePoly) -> FieldElement {
    p.coeff_top()
}

/// `out = h * f mod (x^q - x)` for dense `h` (length `q`) and sparse,
/// canonical `f` terms. `out` is overwritten.
pub(crate) fn mul_dense_sparse(
    field: &FieldSpec,
    h: &[FieldElement],
    f_terms: &[(u64, FieldElement)],
    out: &mut [FieldElement],
) {
    let order = field.order() as usize;
    out.fill(FieldElement::ZERO);
    for (i, &hc) in h.iter().enumerate() {
        if hc.is_zero() {
            continue;
        }
        for &(e, c) in f_terms {
            let mut s = i + e as usize;
            if s > order {
                s -= order;
            }
            out[s] = out[s] + field.mul(hc, c);
        }
    }
}

/// Repeated evaluation of a fixed polynomial, using log tables when the
/// field has them.
#[derive(Debug, Clone)]
pub struct Evaluator {
    field: FieldSpec,
    constant: FieldElement,
    /// (log of coefficient, exponent mod q-1) on tabulated fields,
    /// (coefficient bits, exponent) otherwise.
    terms: Vec<(u64, u64)>,
}

impl Evaluator {
    pub fn new(p: &SparsePoly) -> Evaluator {
        let f = p.field();
        let constant = p.coeff(0);
        let terms = p
            .terms()
            .filter(|&(e, _)| e > 0)
            .map(|(e, c)| match f.log(c) {
                Some(lc) => (lc, f.reduce_exponent(e)),
                None => (c.0 as u64, e),
            })
            .collect();
        Evaluator {
            field: f.clone(),
            constant,
            terms,
        }
    }

    #[inline]
    pub fn eval(&self, x: FieldElement) -> FieldElement {
        if x.is_zero() {
            return self.constant;
        }
        let f = &self.field;
        match (f.exp_table(), f.log_table()) {
            (Some(exp), Some(log)) => {
                let lx = log[x.0 as usize] as u64;
                let mut acc = self.constant.0;
                for &(lc, e) in &self.terms {
                    acc ^= exp[f.reduce_exponent(lc + e * lx) as usize];
                }
                FieldElement(acc)
            }
            _ => self.terms.iter().fold(self.constant, |acc, &(c, e)| {
                acc + f.mul(FieldElement(c as u32), f.pow(x, e))
            }),
        }
    }

    /// `p(gamma^l)`; on tabulated fields this skips the discrete log of `x`.
    #[inline]
    pub fn eval_gamma_pow(&self, l: u64) -> FieldElement {
        let f = &self.field;
        match f.exp_table() {
            Some(exp) => {
                let l = f.reduce_exponent(l);
                let mut acc = self.constant.0;
                for &(lc, e) in &self.terms {
                    acc ^= exp[f.reduce_exponent(lc + e * l) as usize];
                }
                FieldElement(acc)
            }
            None => self.eval(f.gamma_pow(l)),
        }
    }

    /// `(x, p(x))` for `x = 0, gamma^0, gamma^1, ...` on tabulated fields,
    /// where each step costs one table lookup per term.
    pub fn power_walk(&self) -> Option<PowerWalk<'_>> {
        let len = self.field.exp_table()?.len() as u64;
        let mut walk = self.power_range(0, len)?;
        walk.with_zero = true;
        Some(walk)
    }

    /// Like [`power_walk`](Self::power_walk) over `x = gamma^i`,
    /// `lo <= i < hi`, without `x = 0`.
    pub fn power_range(&self, lo: u64, hi: u64) -> Option<PowerWalk<'_>> {
        let exp = self.field.exp_table()?;
        let order = exp.len() as u64;
        Some(PowerWalk {
            exp,
            constant: self.constant.0,
            terms: &self.terms,
            idx: self
                .terms
                .iter()
                .map(|&(lc, e)| ((lc as u128 + e as u128 * lo as u128) % order as u128) as u64)
                .collect(),
            with_zero: false,
            i: lo.min(order) as usize,
            end: hi.min(order) as usize,
        })
    }
}

#[derive(Debug, Clone)]
pub struct PowerWalk<'a> {
    exp: &'a [u32],
    constant: u32,
    terms: &'a [(u64, u64)],
    idx: Vec<u64>,
    with_zero: bool,
    i: usize,
    end: usize,
}

impl Iterator for PowerWalk<'_> {
    type Item = (FieldElement, FieldElement);

    #[inline]
    fn next(&mut self) -> Option<(FieldElement, FieldElement)> {
        if self.with_zero {
            self.with_zero = false;
            return Some((FieldElement::ZERO, FieldElement(self.constant)));
        }
        if self.i >= self.end {
            return None;
        }
        let i = self.i;
        self.i += 1;
        let order = self.exp.len() as u64;
        let mut acc = self.constant;
        for (j, &(_, e)) in self.terms.iter().enumerate() {
            let k = self.idx[j];
            acc ^= self.exp[k as usize];
            let next = k + e;
            self.idx[j] = if next >= order { next - order } else { next };
        }
        Some((FieldElement(self.exp[i]), FieldElement(acc)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use proptest::prelude::*;

    fn fe(b: u32) -> FieldElement {
        FieldElement(b)
    }

    fn poly(f: &FieldSpec, terms: &[(u64, u32)]) -> SparsePoly {
        SparsePoly::from_terms(f, terms.iter().map(|&(e, c)| (e, fe(c))))
    }

    #[test]
    fn canonicalize_examples() {
        let f8 = make_field(3, None).unwrap();
        let q = f8.q();
        assert_eq!(poly(&f8, &[(q, 1)]).canonicalize(), poly(&f8, &[(1, 1)]));
        assert!(poly(&f8, &[(q - 1, 1), (2 * (q - 1), 1)])
            .canonicalize()
            .is_zero());
        assert_eq!(poly(&f8, &[(17, 1)]).canonicalize(), poly(&f8, &[(3, 1)]));
        assert_eq!(poly(&f8, &[(0, 5)]).canonicalize(), poly(&f8, &[(0, 5)]));
    }

    #[test]
    fn mul_examples() {
        let f4 = make_field(2, None).unwrap();
        let p = poly(&f4, &[(3, 2), (1, 1)]);
        assert_eq!(p.mul(&SparsePoly::one(&f4)).unwrap(), p.canonicalize());
        assert!(p.mul(&SparsePoly::zero(&f4)).unwrap().is_zero());
        let x1 = poly(&f4, &[(1, 1), (0, 1)]);
        assert_eq!(x1.mul(&x1).unwrap(), poly(&f4, &[(2, 1), (0, 1)]));
        let f8 = make_field(3, None).unwrap();
        assert_eq!(x1.mul(&SparsePoly::one(&f8)), Err(Error::FieldMismatch));
    }

    #[test]
    fn pow_examples() {
        let f4 = make_field(2, None).unwrap();
        let x2 = poly(&f4, &[(2, 1)]);
        assert_eq!(x2.pow_mod(0), SparsePoly::one(&f4));
        assert_eq!(x2.pow_mod(2), poly(&f4, &[(1, 1)]));
        let f8 = make_field(3, None).unwrap();
        let dickson = poly(&f8, &[(5, 1), (3, 1), (1, 1)]);
        let p6 = dickson.pow_mod(6);
        assert!(p6.degree().unwrap() < 7);
        assert_eq!(p6, dickson.pow_mod_incremental(6));
    }

    #[test]
    fn eval_and_top() {
        let f8 = make_field(3, None).unwrap();
        assert_eq!(SparsePoly::zero(&f8).eval(fe(5)), FieldElement::ZERO);
        assert_eq!(
            poly(&f8, &[(3, 1), (2, 1), (1, 1)]).eval(FieldElement::ONE),
            FieldElement::ONE
        );
        assert_eq!(poly(&f8, &[(7, 1), (1, 1)]).coeff_top(), FieldElement::ONE);
        assert_eq!(poly(&f8, &[(0, 6)]).eval(FieldElement::ZERO), fe(6));
    }

    #[test]
    fn text_form() {
        let f8 = make_field(3, None).unwrap();
        let p = SparsePoly::parse(&f8, "5:1,3:1,1:1").unwrap();
        assert_eq!(p, poly(&f8, &[(5, 1), (3, 1), (1, 1)]));
        assert_eq!(p.to_string(), "5:1,3:1,1:1");
        assert_eq!(
            SparsePoly::parse(&f8, " 2:a ").unwrap_err(),
            Error::OutOfField {
                value: 10,
                degree: 3
            }
        );
        assert!(SparsePoly::parse(&f8, "2-1").is_err());
        assert!(SparsePoly::parse(&f8, "").unwrap().is_zero());
    }

    #[test]
    fn evaluator_matches_eval() {
        for n in [4, 9, 22] {
            let f = make_field(n, None).unwrap();
            let p = poly(&f, &[(0, 3), (1, 7), (1000, 1), (1 << 40, 9)]);
            let ev = Evaluator::new(&p);
            for x in (0..1u32 << n.min(12)).step_by(7) {
                assert_eq!(ev.eval(fe(x)), p.eval(fe(x)));
            }
        }
    }

    #[test]
    fn power_walk_matches_eval() {
        let f = make_field(9, None).unwrap();
        let p = poly(&f, &[(33, 5), (17, 1), (1, 0x1ff), (0, 3)]);
        let ev = Evaluator::new(&p);
        let walk: Vec<_> = ev.power_walk().unwrap().collect();
        assert_eq!(walk.len() as u64, f.q());
        assert_eq!(walk[0], (fe(0), fe(3)));
        for &(x, y) in &walk {
            assert_eq!(y, p.eval(x));
        }
        let tail: Vec<_> = ev.power_range(300, 400).unwrap().collect();
        assert_eq!(tail, walk[301..401]);
        assert!(
            Evaluator::new(&poly(&make_field(24, None).unwrap(), &[(1, 1)]))
                .power_walk()
                .is_none()
        );
    }

    fn arb_terms() -> impl Strategy<Value = Vec<(u64, u32)>> {
        prop::collection::vec((0u64..(1 << 40), 0u32..64), 0..6)
    }

    proptest! {
        #[test]
        fn canonicalize_is_idempotent(terms in arb_terms()) {
            let f = make_field(6, None).unwrap();
            let p = poly(&f, &terms).canonicalize();
            prop_assert!(p.is_canonical());
            prop_assert_eq!(p.canonicalize(), p);
        }

        #[test]
        fn canonicalize_preserves_the_map(terms in arb_terms(), n in 1u32..=12) {
            let f = make_field(n, None).unwrap();
            let terms: Vec<_> = terms.into_iter().map(|(e, c)| (e, c & f.order() as u32)).collect();
            let p = poly(&f, &terms);
            let c = p.canonicalize();
            for x in f.elements().step_by(1 + (f.q() as usize >> 6)) {
                prop_assert_eq!(c.eval(x), p.eval(x));
            }
        }

        #[test]
        fn square_multiply_matches_incremental(k in 0u64..=4096, a in 0u32..32, b in 1u64..32, c in 1u64..32) {
            let f = make_field(5, None).unwrap();
            let p = poly(&f, &[(b, 1), (c, 3), (1, a)]);
            prop_assert_eq!(p.pow_mod(k), p.pow_mod_incremental(k));
        }

        #[test]
        fn product_stays_reduced(t1 in arb_terms(), t2 in arb_terms()) {
            let f = make_field(6, None).unwrap();
            let prod = poly(&f, &t1).mul(&poly(&f, &t2)).unwrap();
            prop_assert!(prod.degree().is_none_or(|d| d <= f.order()));
        }
    }
}
