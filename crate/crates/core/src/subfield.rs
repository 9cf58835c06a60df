//! Subfields of a binary field, the cube roots of unity, the quadratic
//! decomposition `a = b + c*zeta` over F_{2^t}, and embeddings of a
//! standalone small field into a larger one.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// The subfield F_{2^m} of a field F_{2^n}, `m | n`, generated by
/// `beta = gamma^((2^n - 1) / (2^m - 1))`.
#[derive(Debug, Clone)]
pub struct SubfieldView {
    parent: FieldSpec,
    m: u32,
    beta: FieldElement,
}

pub fn subfield_view(spec: &FieldSpec, m: u32) -> Result<SubfieldView> {
    if m == 0 || !spec.n().is_multiple_of(m) {
        return Err(Error::NotDivisor {
            m: m as u64,
            n: spec.n() as u64,
        });
    }
    let cofactor = spec.order() / ((1u64 << m) - 1);
    Ok(SubfieldView {
        parent: spec.clone(),
        m,
        beta: spec.gamma_pow(cofactor),
    })
}

impl SubfieldView {
    pub fn parent(&self) -> &FieldSpec {
        &self.parent
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn beta(&self) -> FieldElement {
        self.beta
    }

    pub fn size(&self) -> u64 {
        1u64 << self.m
    }

    /// `0`, then `beta^k` for `0 <= k < 2^m - 1`.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + Clone + '_ {
        let mut x = FieldElement::ONE;
        std::iter::once(FieldElement::ZERO).chain((0..self.size() - 1).map(move |_| {
            let cur = x;
            x = self.parent.mul(x, self.beta);
            cur
        }))
    }

    /// Frobenius fixed-point test `x^(2^m) = x`.
    pub fn contains(&self, x: FieldElement) -> bool {
        self.parent.contains(x) && self.parent.frobenius(x, self.m) == x
    }
}

/// The two roots of `x^2 + x + 1`, ordered by encoding.
pub fn omega(spec: &FieldSpec) -> Result<(FieldElement, FieldElement)> {
    if !spec.n().is_multiple_of(2) {
        return Err(Error::Domain(
            "F_4 is a subfield only of even-degree fields",
        ));
    }
    let w = spec.gamma_pow(spec.order() / 3);
    let w2 = spec.square(w);
    Ok((w.min(w2), w.max(w2)))
}

/// `a = b + c * zeta` with `b, c` in F_{2^t} and `theta = zeta^2 + zeta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub b: FieldElement,
    pub c: FieldElement,
    pub zeta: FieldElement,
    pub theta: FieldElement,
}

/// The fixed `zeta` with `zeta + zeta^(2^t) = 1`, built from the
/// smallest-encoding element of F_{2^{2t}} outside F_{2^t}.
pub fn zeta(tview: &SubfieldView) -> Result<FieldElement> {
    let parent = &tview.parent;
    let t = tview.m;
    if !parent.n().is_multiple_of(2 * t) {
        return Err(Error::NotDivisor {
            m: 2 * t as u64,
            n: parent.n() as u64,
        });
    }
    let eta = if parent.n() == 2 * t {
        parent.elements().find(|&x| !tview.contains(x))
    } else {
        subfield_view(parent, 2 * t)?
            .elements()
            .filter(|&x| !tview.contains(x))
            .min()
    }
    .ok_or(Error::Domain(
        "F_{2^t} has no proper quadratic extension here",
    ))?;
    let trace = eta + parent.frobenius(eta, t);
    parent.div(eta, trace)
}

/// Splits `a` in F_{2^{2t}} \ F_{2^t} into its coordinates over F_{2^t}.
pub fn decompose(a: FieldElement, tview: &SubfieldView) -> Result<Decomposition> {
    let z = zeta(tview)?;
    decompose_with_zeta(a, tview, z)
}

pub fn decompose_with_zeta(
    a: FieldElement,
    tview: &SubfieldView,
    zeta: FieldElement,
) -> Result<Decomposition> {
    let f = &tview.parent;
    let t = tview.m;
    if !f.contains(a) || f.frobenius(a, 2 * t) != a {
        return Err(Error::Domain(
            "element is not in the quadratic extension F_{2^{2t}}",
        ));
    }
    let c = a + f.frobenius(a, t);
    if c.is_zero() {
        return Err(Error::Degenerate(a.to_string()));
    }
    let b = a + f.mul(c, zeta);
    Ok(Decomposition {
        b,
        c,
        zeta,
        theta: f.square(zeta) + zeta,
    })
}

/// An injective field homomorphism from a standalone F_{2^m} into a field
/// F_{2^n} with `m | n`, sending `x` to the smallest-encoding root of the
/// small field's modulus.
#[derive(Debug, Clone)]
pub struct Embedding {
    small: FieldSpec,
    big: FieldSpec,
    images: Vec<u32>,
    /// Echelon rows indexed by leading bit: (image combination, source bits).
    echelon: Vec<Option<(u32, u32)>>,
}

impl Embedding {
    pub fn new(small: &FieldSpec, big: &FieldSpec) -> Result<Embedding> {
        let view = subfield_view(big, small.n())?;
        let modulus = small.modulus();
        let is_root = |r: FieldElement| {
            let mut acc = FieldElement::ZERO;
            for i in (0..=small.n()).rev() {
                acc = big.mul(acc, r);
                if modulus >> i & 1 == 1 {
                    acc = acc + FieldElement::ONE;
                }
            }
            acc.is_zero()
        };
        let root = view
            .elements()
            .filter(|&r| is_root(r))
            .min()
            .ok_or(Error::Domain(
                "small modulus has no root in the large field",
            ))?;
        let mut images = Vec::with_capacity(small.n() as usize);
        let mut p = FieldElement::ONE;
        for _ in 0..small.n() {
            images.push(p.0);
            p = big.mul(p, root);
        }
        let mut echelon = vec![None; 32];
        for (i, &img) in images.iter().enumerate() {
            let (mut v, mut c) = (img, 1u32 << i);
            while v != 0 {
                let lead = 31 - v.leading_zeros() as usize;
                match echelon[lead] {
                    Some((rv, rc)) => {
                        v ^= rv;
                        c ^= rc;
                    }
                    None => {
                        echelon[lead] = Some((v, c));
                        break;
                    }
                }
            }
            debug_assert!(v != 0, "powers of a root of an irreducible are independent");
        }
        Ok(Embedding {
            small: small.clone(),
            big: big.clone(),
            images,
            echelon,
        })
    }

    pub fn small(&self) -> &FieldSpec {
        &self.small
    }

    pub fn big(&self) -> &FieldSpec {
        &self.big
    }

    pub fn forward(&self, x: FieldElement) -> FieldElement {
        let mut acc = 0u32;
        let mut bits = x.0;
        while bits != 0 {
            let i = bits.trailing_zeros();
            acc ^= self.images[i as usize];
            bits &= bits - 1;
        }
        FieldElement(acc)
    }

    /// Inverse of [`forward`](Self::forward); `None` outside the image.
    pub fn backward(&self, y: FieldElement) -> Option<FieldElement> {
        let mut v = y.0;
        let mut src = 0u32;
        while v != 0 {
            let lead = 31 - v.leading_zeros() as usize;
            let (rv, rc) = self.echelon[lead]?;
            v ^= rv;
            src ^= rc;
        }
        Some(FieldElement(src))
    }
}

/// Cached context for F_{2^t} inside F_{2^{2t}}: the subfield view, `zeta`,
/// `theta` and the cube roots of unity.
#[derive(Debug, Clone)]
pub struct QuadraticTower {
    pub field: FieldSpec,
    pub tview: SubfieldView,
    pub zeta: FieldElement,
    pub theta: FieldElement,
    pub omega: (FieldElement, FieldElement),
}

impl QuadraticTower {
    /// Builds the tower over the standalone field F_{2^{2t}}.
    pub fn new(t: u32) -> Result<QuadraticTower> {
        if t == 0 || 2 * t > crate::field::MAX_DEGREE {
            return Err(Error::DegreeOutOfRange(2 * t));
        }
        let field = crate::field::make_field(2 * t, None)?;
        Self::over(&field, t)
    }

    pub fn over(field: &FieldSpec, t: u32) -> Result<QuadraticTower> {
        let tview = subfield_view(field, t)?;
        let zeta = zeta(&tview)?;
        Ok(QuadraticTower {
            field: field.clone(),
            theta: field.square(zeta) + zeta,
            omega: omega(field)?,
            tview,
            zeta,
        })
    }

    pub fn t(&self) -> u32 {
        self.tview.m()
    }

    pub fn decompose(&self, a: FieldElement) -> Result<Decomposition> {
        decompose_with_zeta(a, &self.tview, self.zeta)
    }

    pub fn in_base(&self, a: FieldElement) -> bool {
        self.tview.contains(a)
    }
}
