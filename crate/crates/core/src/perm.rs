//! Permutation testers: exhaustive evaluation, the Hermite-Dickson
//! criterion and the Wan-Lidl criterion for cyclotomic polynomials
//! `x^r f(x^((q-1)/d))`. Every negative verdict carries a witness that can
//! be re-checked by direct evaluation.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{guard, Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::poly::{canonical_exponent, mul_dense_sparse, Evaluator, SparsePoly};

/// Largest field degree accepted by the exhaustive tester.
pub const BRUTE_MAX_DEGREE: u32 = 28;
/// Largest field degree accepted by the Hermite-Dickson tester.
pub const HERMITE_MAX_DEGREE: u32 = 12;
/// Largest `d` accepted by the Wan-Lidl tester.
pub const WANLIDL_MAX_D: u64 = 1 << 28;

#[cfg(feature = "parallel")]
const PARALLEL_MIN_DEGREE: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Method {
    #[serde(rename = "brute")]
    Brute,
    #[serde(rename = "hermite")]
    Hermite,
    #[serde(rename = "wanlidl")]
    WanLidl,
    #[serde(rename = "roots-of-unity")]
    RootsOfUnity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `f(x1) = f(x2) = image` with `x1 != x2`.
    Collision {
        x1: FieldElement,
        x2: FieldElement,
        image: FieldElement,
    },
    /// The polynomial does not have exactly one root.
    RootCount { count: u64 },
    /// `f^k mod (x^q - x)` has a nonzero `x^(q-1)` coefficient.
    TopCoefficient { k: u64, coefficient: FieldElement },
    /// Wan-Lidl (a): `gcd(r, (q-1)/d) != 1`.
    ConditionA { r: u64, index: u64, gcd: u64 },
    /// Wan-Lidl (b): `f(gamma^(i(q-1)/d)) = 0`.
    ConditionB { i: u64, root: FieldElement },
    /// Wan-Lidl (c): `g(gamma^i)^((q-1)/d) = g(gamma^j)^((q-1)/d)`, `i < j`.
    ConditionC { i: u64, j: u64, value: FieldElement },
    /// The image of the `i`-th root of unity is not a `d`-th root of unity.
    OutsideRoots { i: u64, value: FieldElement },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PermVerdict {
    pub is_pp: bool,
    pub method: Method,
    pub witness: Option<Witness>,
}

impl PermVerdict {
    fn bijective(method: Method) -> PermVerdict {
        PermVerdict {
            is_pp: true,
            method,
            witness: None,
        }
    }

    fn rejected(method: Method, witness: Witness) -> PermVerdict {
        PermVerdict {
            is_pp: false,
            method,
            witness: Some(witness),
        }
    }
}

/// A membership bitset over a field that is cleared by undoing only the
/// bits that were set, so it can be reused across many cheap scans.
#[derive(Debug, Default)]
pub struct BruteScratch {
    bits: Vec<u64>,
    touched: Vec<u32>,
}

impl BruteScratch {
    pub fn new() -> BruteScratch {
        BruteScratch::default()
    }

    fn prepare(&mut self, q: u64) {
        let words = q.div_ceil(64) as usize;
        if self.bits.len() < words {
            self.bits = vec![0; words];
            self.touched.clear();
        }
    }

    /// Marks `y`; returns false if it was already marked.
    #[inline]
    fn insert(&mut self, y: u32) -> bool {
        let (w, b) = ((y >> 6) as usize, y & 63);
        let word = &mut self.bits[w];
        if *word >> b & 1 == 1 {
            return false;
        }
        if *word == 0 {
            self.touched.push(w as u32);
        }
        *word |= 1 << b;
        true
    }

    fn reset(&mut self) {
        for &w in &self.touched {
            self.bits[w as usize] = 0;
        }
        self.touched.clear();
    }
}

/// Scans `domain` in order and returns the first repeated image together
/// with the earliest preimage that produced it.
pub fn first_collision<D, F>(
    q: u64,
    domain: D,
    map: F,
    scratch: &mut BruteScratch,
) -> Option<(FieldElement, FieldElement, FieldElement)>
where
    D: Iterator<Item = FieldElement> + Clone,
    F: Fn(FieldElement) -> FieldElement + Clone,
{
    first_repeated_pair(q, domain.map(move |x| (x, map(x))), scratch)
}

/// Like [`first_collision`] over precomputed `(x, image)` pairs.
pub fn first_repeated_pair<I>(
    q: u64,
    pairs: I,
    scratch: &mut BruteScratch,
) -> Option<(FieldElement, FieldElement, FieldElement)>
where
    I: Iterator<Item = (FieldElement, FieldElement)> + Clone,
{
    scratch.prepare(q);
    let mut hit = None;
    for (x, y) in pairs.clone() {
        if !scratch.insert(y.0) {
            hit = Some((x, y));
            break;
        }
    }
    scratch.reset();
    let (x2, image) = hit?;
    let (x1, _) = pairs
        .take_while(|&(x, _)| x != x2)
        .find(|&(_, y)| y == image)
        .expect("a repeated image has an earlier preimage");
    Some((x1, x2, image))
}

fn brute_guard(field: &FieldSpec) -> Result<()> {
    guard(
        "brute-force field degree",
        field.n() as u64,
        BRUTE_MAX_DEGREE as u64,
    )
}

/// Exhaustive bijectivity test; parallel on large fields when the
/// `parallel` feature is enabled.
pub fn is_pp_brute(p: &SparsePoly) -> Result<PermVerdict> {
    #[cfg(feature = "parallel")]
    if p.field().n() >= PARALLEL_MIN_DEGREE && crate::par::current_workers() > 1 {
        return is_pp_brute_par(p);
    }
    is_pp_brute_seq(p)
}

pub fn is_pp_brute_seq(p: &SparsePoly) -> Result<PermVerdict> {
    is_pp_brute_with(p, &mut BruteScratch::new())
}

/// Sequential exhaustive test reusing caller-provided scratch space. On
/// tabulated fields the domain is scanned as 0, gamma^0, gamma^1, ...; the
/// collision witness refers to that order.
pub fn is_pp_brute_with(p: &SparsePoly, scratch: &mut BruteScratch) -> Result<PermVerdict> {
    let field = p.field();
    brute_guard(field)?;
    let ev = Evaluator::new(p);
    let hit = match ev.power_walk() {
        Some(walk) => first_repeated_pair(field.q(), walk, scratch),
        None => first_collision(field.q(), field.elements(), |x| ev.eval(x), scratch),
    };
    Ok(brute_verdict(hit))
}

fn brute_verdict(hit: Option<(FieldElement, FieldElement, FieldElement)>) -> PermVerdict {
    match hit {
        None => PermVerdict::bijective(Method::Brute),
        Some((x1, x2, image)) => {
            PermVerdict::rejected(Method::Brute, Witness::Collision { x1, x2, image })
        }
    }
}

/// Exhaustive test with the domain split across the rayon pool. Workers
/// share an atomic image bitset; when any collision is seen the witness is
/// recomputed by an ordered sequential scan so it does not depend on
/// scheduling.
#[cfg(feature = "parallel")]
pub fn is_pp_brute_par(p: &SparsePoly) -> Result<PermVerdict> {
    use rayon::prelude::*;
    use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

    const CHUNK: u64 = 1 << 12;
    let field = p.field();
    brute_guard(field)?;
    let q = field.q();
    let ev = Evaluator::new(p);
    let bits: Vec<AtomicU64> = (0..q.div_ceil(64)).map(|_| AtomicU64::new(0)).collect();
    let collided = AtomicBool::new(false);
    let mark = |y: FieldElement| {
        let mask = 1u64 << (y.0 & 63);
        bits[(y.0 >> 6) as usize].fetch_or(mask, Ordering::Relaxed) & mask == 0
    };
    mark(ev.eval(FieldElement::ZERO));
    (0..q.div_ceil(CHUNK)).into_par_iter().for_each(|chunk| {
        if collided.load(Ordering::Relaxed) {
            return;
        }
        let (lo, hi) = (chunk * CHUNK, ((chunk + 1) * CHUNK).min(q - 1));
        let fresh = match ev.power_range(lo, hi) {
            Some(mut walk) => walk.all(|(_, y)| mark(y)),
            None => (lo + 1..=hi).all(|x| mark(ev.eval(FieldElement(x as u32)))),
        };
        if !fresh {
            collided.store(true, Ordering::Relaxed);
        }
    });
    if !collided.into_inner() {
        return Ok(PermVerdict::bijective(Method::Brute));
    }
    is_pp_brute_seq(p)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct HermiteOptions {
    /// Check only odd `k`; valid in characteristic 2 but off by default.
    pub skip_even_powers: bool,
}

pub fn is_pp_hermite(p: &SparsePoly) -> Result<PermVerdict> {
    is_pp_hermite_with(p, HermiteOptions::default())
}

/// Hermite-Dickson: exactly one root, and `coeff_top(f^k) = 0` for every
/// `1 <= k <= q - 2`. Powers are built incrementally.
pub fn is_pp_hermite_with(p: &SparsePoly, opts: HermiteOptions) -> Result<PermVerdict> {
    let field = p.field();
    guard(
        "Hermite-Dickson field degree",
        field.n() as u64,
        HERMITE_MAX_DEGREE as u64,
    )?;
    let f = p.canonicalize();
    let ev = Evaluator::new(&f);
    let roots = field.elements().filter(|&x| ev.eval(x).is_zero()).count() as u64;
    if roots != 1 {
        return Ok(PermVerdict::rejected(
            Method::Hermite,
            Witness::RootCount { count: roots },
        ));
    }
    let q = field.q();
    let top = field.order() as usize;
    let (step, step_k) = if opts.skip_even_powers {
        (f.square(), 2)
    } else {
        (f.clone(), 1)
    };
    let step_terms: Vec<_> = step.terms().collect();
    let mut h = f.to_dense();
    let mut next = vec![FieldElement::ZERO; q as usize];
    let mut k = 1u64;
    while k + 2 <= q {
        if !h[top].is_zero() {
            return Ok(PermVerdict::rejected(
                Method::Hermite,
                Witness::TopCoefficient {
                    k,
                    coefficient: h[top],
                },
            ));
        }
        k += step_k;
        if k + 2 <= q {
            mul_dense_sparse(field, &h, &step_terms, &mut next);
            std::mem::swap(&mut h, &mut next);
        }
    }
    Ok(PermVerdict::bijective(Method::Hermite))
}

/// `g(x) = x^r f(x^((q-1)/d))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WanLidlInstance {
    pub r: u64,
    pub d: u64,
    pub f: SparsePoly,
}

impl WanLidlInstance {
    pub fn new(r: u64, d: u64, f: SparsePoly) -> Result<WanLidlInstance> {
        let order = f.field().order();
        if d == 0 || !order.is_multiple_of(d) {
            return Err(Error::NotDivisor { m: d, n: order });
        }
        if r == 0 {
            return Err(Error::Domain("r must be a positive integer"));
        }
        Ok(WanLidlInstance { r, d, f })
    }

    pub fn field(&self) -> &FieldSpec {
        self.f.field()
    }

    /// `(q - 1) / d`.
    pub fn index(&self) -> u64 {
        self.field().order() / self.d
    }

    /// The expanded polynomial `g`, canonicalized.
    pub fn g(&self) -> SparsePoly {
        let field = self.field();
        let m = self.index() as u128;
        let order = field.order() as u128;
        SparsePoly::from_terms(
            field,
            self.f.terms().map(|(e, c)| {
                let shifted = (e as u128 * m % order) as u64 + field.reduce_exponent(self.r);
                // the true exponent r + e*m is positive
                let ce = if shifted == 0 {
                    field.order()
                } else {
                    canonical_exponent(shifted, field)
                };
                (ce, c)
            }),
        )
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The first zero of `f` on the roots of unity `y_i = gamma^(i(q-1)/d)`.
fn root_on_unit_circle(inst: &WanLidlInstance, ev: &Evaluator) -> Option<Witness> {
    let field = inst.field();
    let m = inst.index();
    (0..inst.d)
        .find(|&i| ev.eval_gamma_pow(i * m).is_zero())
        .map(|i| Witness::ConditionB {
            i,
            root: field.gamma_pow(i * m),
        })
}

/// Lazily yields `h(y_i) = y_i^r f(y_i)^((q-1)/d)`.
fn root_images<'a>(
    inst: &'a WanLidlInstance,
    ev: &'a Evaluator,
) -> impl Iterator<Item = FieldElement> + 'a {
    let field = inst.field();
    let m = inst.index();
    let r = field.reduce_exponent(inst.r);
    (0..inst.d).map(move |i| {
        let l = field.reduce_exponent(i * m);
        let fy = ev.eval_gamma_pow(l);
        match field.log(fy) {
            Some(lf) => field.gamma_pow(r * l + field.reduce_exponent(m * lf)),
            None => field.mul(field.pow(field.gamma_pow(l), r), field.pow(fy, m)),
        }
    })
}

/// First repeat among `d` values that are all `d`-th roots of unity.
fn first_repeat(
    field: &FieldSpec,
    d: u64,
    values: impl Iterator<Item = FieldElement>,
) -> Option<(u64, u64, FieldElement)> {
    let m = field.order() / d;
    if field.has_log_tables() {
        let mut seen = vec![u32::MAX; d as usize];
        for (j, v) in values.enumerate() {
            let k = (field.log(v).unwrap_or(0) / m) as usize;
            if seen[k] != u32::MAX {
                return Some((seen[k] as u64, j as u64, v));
            }
            seen[k] = j as u32;
        }
        return None;
    }
    let mut seen = HashMap::with_capacity(d as usize);
    for (j, v) in values.enumerate() {
        if let Some(&i) = seen.get(&v) {
            return Some((i, j as u64, v));
        }
        seen.insert(v, j as u64);
    }
    None
}

/// Wan-Lidl criterion: (a) `gcd(r, (q-1)/d) = 1`, (b) `f` has no zero on
/// the `d`-th roots of unity, (c) the `d` values `g(gamma^i)^((q-1)/d)` are
/// pairwise distinct.
pub fn wan_lidl(inst: &WanLidlInstance) -> Result<PermVerdict> {
    guard("Wan-Lidl d", inst.d, WANLIDL_MAX_D)?;
    let m = inst.index();
    let g = gcd(inst.r, m);
    if g != 1 {
        return Ok(PermVerdict::rejected(
            Method::WanLidl,
            Witness::ConditionA {
                r: inst.r,
                index: m,
                gcd: g,
            },
        ));
    }
    let ev = Evaluator::new(&inst.f);
    if let Some(w) = root_on_unit_circle(inst, &ev) {
        return Ok(PermVerdict::rejected(Method::WanLidl, w));
    }
    // g(gamma^i)^m = gamma^(irm) f(gamma^(im))^m, the same list as the
    // images of the roots of unity under x^r f(x)^m.
    Ok(
        match first_repeat(inst.field(), inst.d, root_images(inst, &ev)) {
            Some((i, j, value)) => {
                PermVerdict::rejected(Method::WanLidl, Witness::ConditionC { i, j, value })
            }
            None => PermVerdict::bijective(Method::WanLidl),
        },
    )
}

/// Whether `x^r f(x)^((q-1)/d)` permutes `{x : x^d = 1}`, as a verdict.
pub fn roots_of_unity_verdict(inst: &WanLidlInstance) -> Result<PermVerdict> {
    guard("Wan-Lidl d", inst.d, WANLIDL_MAX_D)?;
    let field = inst.field();
    let ev = Evaluator::new(&inst.f);
    if let Some(Witness::ConditionB { i, .. }) = root_on_unit_circle(inst, &ev) {
        return Ok(PermVerdict::rejected(
            Method::RootsOfUnity,
            Witness::OutsideRoots {
                i,
                value: FieldElement::ZERO,
            },
        ));
    }
    let values: Vec<FieldElement> = root_images(inst, &ev).collect();
    if let Some((i, &value)) = values
        .iter()
        .enumerate()
        .find(|(_, &v)| field.pow(v, inst.d) != FieldElement::ONE)
    {
        return Ok(PermVerdict::rejected(
            Method::RootsOfUnity,
            Witness::OutsideRoots { i: i as u64, value },
        ));
    }
    Ok(match first_repeat(field, inst.d, values.into_iter()) {
        Some((i, j, value)) => {
            PermVerdict::rejected(Method::RootsOfUnity, Witness::ConditionC { i, j, value })
        }
        None => PermVerdict::bijective(Method::RootsOfUnity),
    })
}

pub fn roots_of_unity_check(inst: &WanLidlInstance) -> Result<bool> {
    Ok(roots_of_unity_verdict(inst)?.is_pp)
}

/// Re-checks a negative verdict's witness against `p` by direct evaluation.
/// Wan-Lidl witnesses are checked against `inst` instead.
pub fn witness_holds(p: &SparsePoly, witness: &Witness) -> bool {
    let field = p.field();
    match *witness {
        Witness::Collision { x1, x2, image } => {
            x1 != x2 && p.eval(x1) == image && p.eval(x2) == image
        }
        Witness::RootCount { count } => {
            field.elements().filter(|&x| p.eval(x).is_zero()).count() as u64 == count && count != 1
        }
        Witness::TopCoefficient { k, coefficient } => {
            let c = p.pow_mod(k).coeff_top();
            c == coefficient && !c.is_zero()
        }
        _ => false,
    }
}

/// Re-checks a Wan-Lidl or roots-of-unity witness against its instance.
pub fn wan_lidl_witness_holds(inst: &WanLidlInstance, witness: &Witness) -> bool {
    let field = inst.field();
    let m = inst.index();
    let image = |i: u64| {
        let x = field.gamma_pow(i);
        field.pow(inst.g().eval(x), m)
    };
    match *witness {
        Witness::ConditionA { r, index, gcd: g } => {
            r == inst.r && index == m && g != 1 && gcd(r, index) == g
        }
        Witness::ConditionB { i, root } => {
            i < inst.d && root == field.gamma_pow(i * m) && inst.f.eval(root).is_zero()
        }
        Witness::ConditionC { i, j, value } => {
            i < j && j < inst.d && image(i) == value && image(j) == value
        }
        Witness::OutsideRoots { i, value } => {
            let y = field.gamma_pow(i * m);
            let v = field.mul(field.pow(y, inst.r), field.pow(inst.f.eval(y), m));
            v == value && field.pow(v, inst.d) != FieldElement::ONE
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::subfield::omega;

    fn fe(b: u32) -> FieldElement {
        FieldElement(b)
    }

    fn poly(f: &FieldSpec, terms: &[(u64, u32)]) -> SparsePoly {
        SparsePoly::from_terms(f, terms.iter().map(|&(e, c)| (e, fe(c))))
    }

    #[test]
    fn brute_examples() {
        let f4 = make_field(2, None).unwrap();
        assert!(is_pp_brute(&poly(&f4, &[(1, 1)])).unwrap().is_pp);
        let cube = poly(&f4, &[(3, 1)]);
        let v = is_pp_brute(&cube).unwrap();
        assert!(!v.is_pp);
        assert_eq!(
            v.witness,
            Some(Witness::Collision {
                x1: fe(1),
                x2: fe(2),
                image: fe(1)
            })
        );
        assert!(witness_holds(&cube, v.witness.as_ref().unwrap()));
        let f8 = make_field(3, None).unwrap();
        assert!(
            is_pp_brute(&poly(&f8, &[(5, 1), (3, 1), (1, 1)]))
                .unwrap()
                .is_pp
        );
    }

    #[test]
    fn brute_guard_rejects_large_fields() {
        let f = make_field(29, None).unwrap();
        assert!(matches!(
            is_pp_brute(&poly(&f, &[(1, 1)])),
            Err(Error::ResourceGuard { .. })
        ));
    }

    #[test]
    fn hermite_examples() {
        let f4 = make_field(2, None).unwrap();
        assert!(is_pp_hermite(&poly(&f4, &[(2, 1)])).unwrap().is_pp);
        let v = is_pp_hermite(&poly(&f4, &[(3, 1)])).unwrap();
        match v.witness {
            Some(Witness::TopCoefficient { k, .. }) => assert!(k <= 2),
            other => panic!("unexpected witness {other:?}"),
        }
        let f8 = make_field(3, None).unwrap();
        let d5 = poly(&f8, &[(5, 1), (3, 1), (1, 1)]);
        assert!(is_pp_hermite(&d5).unwrap().is_pp);
        assert!(is_pp_brute(&d5).unwrap().is_pp);
        let two_roots = poly(&f8, &[(2, 1), (1, 1)]);
        let v = is_pp_hermite(&two_roots).unwrap();
        assert_eq!(v.witness, Some(Witness::RootCount { count: 2 }));
        assert!(is_pp_hermite(&poly(&make_field(13, None).unwrap(), &[(1, 1)])).is_err());
    }

    #[test]
    fn hermite_skip_even_agrees() {
        let f16 = make_field(4, None).unwrap();
        for a in 0..16 {
            for e in [3u64, 5, 7, 9] {
                let p = poly(&f16, &[(e, 1), (2, a), (1, 1)]);
                let full = is_pp_hermite(&p).unwrap().is_pp;
                let odd = is_pp_hermite_with(
                    &p,
                    HermiteOptions {
                        skip_even_powers: true,
                    },
                )
                .unwrap()
                .is_pp;
                assert_eq!(full, odd);
                assert_eq!(full, is_pp_brute(&p).unwrap().is_pp);
            }
        }
    }

    #[test]
    fn wan_lidl_examples() {
        let f64_ = make_field(6, None).unwrap();
        let one = WanLidlInstance::new(1, 1, SparsePoly::one(&f64_)).unwrap();
        assert_eq!(one.g(), poly(&f64_, &[(1, 1)]));
        assert!(wan_lidl(&one).unwrap().is_pp);
        assert!(roots_of_unity_check(&one).unwrap());

        let (w, _) = omega(&f64_).unwrap();
        let inst = WanLidlInstance::new(1, 7, poly(&f64_, &[(1, 1), (0, w.0)])).unwrap();
        assert_eq!(inst.g(), poly(&f64_, &[(10, 1), (1, w.0)]));
        assert!(wan_lidl(&inst).unwrap().is_pp);
        assert!(roots_of_unity_check(&inst).unwrap());
        assert!(is_pp_brute(&inst.g()).unwrap().is_pp);

        let f8 = crate::subfield::subfield_view(&f64_, 3).unwrap();
        for a in f8.elements().filter(|a| !a.is_zero()) {
            let inst = WanLidlInstance::new(1, 7, poly(&f64_, &[(1, 1), (0, a.0)])).unwrap();
            let v = wan_lidl(&inst).unwrap();
            assert!(matches!(v.witness, Some(Witness::ConditionB { .. })));
            assert!(wan_lidl_witness_holds(&inst, v.witness.as_ref().unwrap()));
            assert!(!roots_of_unity_check(&inst).unwrap());
        }
        let plus_one = WanLidlInstance::new(1, 7, poly(&f64_, &[(1, 1), (0, 1)])).unwrap();
        assert!(!roots_of_unity_check(&plus_one).unwrap());

        assert!(WanLidlInstance::new(1, 5, SparsePoly::one(&f64_)).is_err());
        let bad_gcd = WanLidlInstance::new(3, 7, SparsePoly::one(&f64_)).unwrap();
        let v = wan_lidl(&bad_gcd).unwrap();
        assert_eq!(
            v.witness,
            Some(Witness::ConditionA {
                r: 3,
                index: 9,
                gcd: 3
            })
        );
    }

    #[test]
    fn three_way_agreement_on_cyclotomic_binomials() {
        // x^r (x^(m s) + a) for every divisor d of q-1, small r, all a.
        for n in [4u32, 6] {
            let f = make_field(n, None).unwrap();
            let order = f.order();
            for d in (1..=order).filter(|d| order.is_multiple_of(*d)) {
                for r in 1..4 {
                    for a in f.elements() {
                        let inner = poly(&f, &[(1, 1), (0, a.0)]);
                        let inst = WanLidlInstance::new(r, d, inner).unwrap();
                        let g = inst.g();
                        let brute = is_pp_brute(&g).unwrap();
                        let wl = wan_lidl(&inst).unwrap();
                        assert_eq!(brute.is_pp, wl.is_pp, "n={n} d={d} r={r} a={a}");
                        assert_eq!(brute.is_pp, is_pp_hermite(&g).unwrap().is_pp);
                        if gcd(r, inst.index()) == 1 {
                            assert_eq!(roots_of_unity_check(&inst).unwrap(), wl.is_pp);
                        }
                        if let Some(w) = &wl.witness {
                            assert!(wan_lidl_witness_holds(&inst, w));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn monomial_law() {
        for n in 1..=8 {
            let f = make_field(n, None).unwrap();
            for e in 1..f.q() {
                let v = is_pp_brute(&poly(&f, &[(e, 1)])).unwrap();
                assert_eq!(v.is_pp, gcd(e, f.order()) == 1, "n={n} e={e}");
            }
        }
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_and_sequential_brute_agree() {
        let f = make_field(16, None).unwrap();
        for p in [
            poly(&f, &[(1, 1)]),
            poly(&f, &[(3, 1)]),
            poly(&f, &[(2, 1), (1, 1)]),
            poly(&f, &[(4, 1), (1, 7)]),
        ] {
            assert_eq!(is_pp_brute_par(&p).unwrap(), is_pp_brute_seq(&p).unwrap());
        }
    }
}
