//! Closed-form classifiers for the trinomials
//! `x^(2^s+1) + x^(2^(s-1)+1) + alpha*x` over F_{2^t} and the binomials
//! `x^((2^n-1)/(2^t-1)+1) + a*x` over F_{2^n}, `n = 2^s t`, together with the
//! reduction of the latter to the former.
//!
//! Elements are carried in standalone fields: `alpha` in `make_field(t)`,
//! `a` in `make_field(2t)`. [`BinomialContext`] holds the embeddings needed
//! to move between them and into a concrete F_{2^n}.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{guard, Error, Result};
use crate::field::{make_field, FieldElement, FieldSpec, MAX_DEGREE};
use crate::perm::{Method, PermVerdict, WanLidlInstance, Witness, BRUTE_MAX_DEGREE};
use crate::poly::SparsePoly;
use crate::subfield::{subfield_view, Embedding, QuadraticTower};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Literal,
    #[default]
    Canonical,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Literal => "literal",
            Mode::Canonical => "canonical",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "literal" => Ok(Mode::Literal),
            "canonical" => Ok(Mode::Canonical),
            other => Err(Error::Parse(format!("unknown mode `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailedCondition {
    TParity,
    SRange,
    AlphaValue,
    AMembership,
    AZero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassifierDecision {
    pub is_pp: bool,
    pub failed_condition: Option<FailedCondition>,
    pub mode: Mode,
}

impl ClassifierDecision {
    fn from_checks(mode: Mode, checks: &[(bool, FailedCondition)]) -> ClassifierDecision {
        let failed_condition = checks.iter().find(|(ok, _)| !ok).map(|&(_, tag)| tag);
        ClassifierDecision {
            is_pp: failed_condition.is_none(),
            failed_condition,
            mode,
        }
    }
}

/// `f(x) = x^(2^s+1) + x^(2^(s-1)+1) + alpha*x` over F_{2^t}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TrinomialParams {
    pub s: u32,
    pub t: u32,
    pub alpha: FieldElement,
}

impl TrinomialParams {
    /// The trinomial reduced mod `x^q - x` over `field`, which must have
    /// degree `t`. Works for any `s` since `2^s mod (2^t - 1) = 2^(s mod t)`.
    pub fn poly(&self, field: &FieldSpec) -> Result<SparsePoly> {
        if self.s == 0 {
            return Err(Error::Domain("s must be positive"));
        }
        if field.n() != self.t {
            return Err(Error::Domain("trinomial field must have degree t"));
        }
        if !field.contains(self.alpha) {
            return Err(Error::OutOfField {
                value: self.alpha.0 as u64,
                degree: self.t,
            });
        }
        let two_pow = |k: u32| field.reduce_exponent(1u64 << (k % self.t));
        // e > 0 reduces to ((e - 1) mod (q - 1)) + 1
        let e1 = two_pow(self.s) + 1;
        let e2 = two_pow(self.s - 1) + 1;
        Ok(SparsePoly::from_terms(
            field,
            [
                (e1, FieldElement::ONE),
                (e2, FieldElement::ONE),
                (1, self.alpha),
            ],
        ))
    }
}

/// `g(x) = x^((2^n-1)/(2^t-1)+1) + a*x` with `n = 2^s t` and `a` in F_{2^{2t}}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BinomialParams {
    pub s: u32,
    pub t: u32,
    pub a: FieldElement,
}

impl BinomialParams {
    /// `2^s t`, or `None` on overflow.
    pub fn n(&self) -> Option<u64> {
        1u64.checked_shl(self.s)
            .and_then(|p| p.checked_mul(self.t as u64))
    }
}

pub fn classify_trinomial_literal(p: &TrinomialParams) -> ClassifierDecision {
    ClassifierDecision::from_checks(
        Mode::Literal,
        &[
            (p.t % 2 == 1, FailedCondition::TParity),
            (p.alpha == FieldElement::ONE, FailedCondition::AlphaValue),
            (p.s == 1 || p.s == 2, FailedCondition::SRange),
        ],
    )
}

/// Decides with `r = s mod t`, which induces the same map on F_{2^t}. When
/// `r = 0` the map is that of `x^3 + x^2 + alpha x` (after squaring), a PP
/// only for `t = 1, alpha = 1`.
pub fn classify_trinomial_canonical(p: &TrinomialParams) -> ClassifierDecision {
    let r = if p.t == 0 { p.s } else { p.s % p.t };
    ClassifierDecision::from_checks(
        Mode::Canonical,
        &[
            (p.t % 2 == 1, FailedCondition::TParity),
            (p.alpha == FieldElement::ONE, FailedCondition::AlphaValue),
            (r == 1 || r == 2 || p.t == 1, FailedCondition::SRange),
        ],
    )
}

pub fn classify_trinomial(p: &TrinomialParams, mode: Mode) -> ClassifierDecision {
    match mode {
        Mode::Literal => classify_trinomial_literal(p),
        Mode::Canonical => classify_trinomial_canonical(p),
    }
}

/// The four equivalent formulations of the binomial condition on `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MembershipConditions {
    /// `b^2 + bc + c^2 theta = c^2`; false for `a` in F_{2^t}.
    pub alpha_condition: bool,
    /// `a^(2^(t+1)) + a^2 + a^(2^t+1) = 0`.
    pub poly_condition: bool,
    /// `a^(2^t-1)` is a primitive cube root of unity.
    pub root_condition: bool,
    /// `a` lies in `omega F_{2^t}^* U omega^2 F_{2^t}^*` but not in F_{2^t}.
    pub coset_condition: bool,
    pub agree: bool,
    pub verdict: bool,
}

/// The fields used to classify binomials for one `t`: the tower
/// F_{2^t} < F_{2^{2t}} and the standalone F_{2^t} that holds `alpha`.
#[derive(Debug, Clone)]
pub struct BinomialContext {
    pub tower: QuadraticTower,
    pub base: FieldSpec,
    lift: Embedding,
}

impl BinomialContext {
    pub fn new(t: u32) -> Result<BinomialContext> {
        let tower = QuadraticTower::new(t)?;
        let base = make_field(t, None)?;
        let lift = Embedding::new(&base, &tower.field)?;
        Ok(BinomialContext { tower, base, lift })
    }

    pub fn t(&self) -> u32 {
        self.tower.t()
    }

    /// The field F_{2^{2t}} in which `a` is given.
    pub fn field(&self) -> &FieldSpec {
        &self.tower.field
    }

    fn check_params(&self, p: &BinomialParams) -> Result<()> {
        if p.t != self.t() {
            return Err(Error::Domain("binomial t does not match the context"));
        }
        if p.s == 0 {
            return Err(Error::Domain("s must be positive"));
        }
        self.check_a(p.a)
    }

    fn check_a(&self, a: FieldElement) -> Result<()> {
        if !self.field().contains(a) {
            return Err(Error::OutOfField {
                value: a.0 as u64,
                degree: 2 * self.t(),
            });
        }
        if a.is_zero() {
            return Err(Error::Domain("a must be nonzero"));
        }
        Ok(())
    }

    /// `a^(2^t - 1)` is `omega` or `omega^2`.
    pub fn membership(&self, a: FieldElement) -> bool {
        let f = self.field();
        let u = f.pow(a, (1u64 << self.t()) - 1);
        u == self.tower.omega.0 || u == self.tower.omega.1
    }

    pub fn classify(&self, p: &BinomialParams, mode: Mode) -> Result<ClassifierDecision> {
        self.check_params(p)?;
        let t_odd = (p.t % 2 == 1, FailedCondition::TParity);
        let member = (self.membership(p.a), FailedCondition::AMembership);
        Ok(match mode {
            Mode::Literal => ClassifierDecision::from_checks(
                Mode::Literal,
                &[
                    t_odd,
                    (p.s == 1 || p.s == 2, FailedCondition::SRange),
                    member,
                ],
            ),
            Mode::Canonical => {
                if self.tower.in_base(p.a) {
                    return Ok(ClassifierDecision::from_checks(
                        Mode::Canonical,
                        &[t_odd, (false, FailedCondition::AMembership)],
                    ));
                }
                let (tri, _) = self.reduce(p)?;
                let mut d = classify_trinomial_canonical(&tri);
                if d.failed_condition == Some(FailedCondition::AlphaValue) {
                    d.failed_condition = Some(FailedCondition::AMembership);
                }
                d
            }
        })
    }

    /// Reduces `g` to the trinomial with
    /// `alpha = ((b^2 + bc + c^2 theta) / c^2)^(2^(s-1))` over F_{2^t}; `c`
    /// is returned in F_{2^{2t}}.
    pub fn reduce(&self, p: &BinomialParams) -> Result<(TrinomialParams, FieldElement)> {
        self.check_params(p)?;
        let f = self.field();
        if self.tower.in_base(p.a) {
            return Err(Error::Degenerate(p.a.to_string()));
        }
        let dec = self.tower.decompose(p.a)?;
        let (b, c) = (dec.b, dec.c);
        let c2 = f.square(c);
        let num = f.square(b) + f.mul(b, c) + f.mul(c2, dec.theta);
        let x = f.div(num, c2)?;
        let alpha_big = f.frobenius(x, (p.s - 1) % (2 * p.t));
        let alpha = self
            .lift
            .backward(alpha_big)
            .ok_or(Error::Domain("reduced alpha left the base field"))?;
        Ok((
            TrinomialParams {
                s: p.s,
                t: p.t,
                alpha,
            },
            c,
        ))
    }

    pub fn membership_conditions(&self, a: FieldElement) -> Result<MembershipConditions> {
        self.check_a(a)?;
        let f = self.field();
        let t = self.t();
        let in_base = self.tower.in_base(a);

        let alpha_condition = !in_base && {
            let dec = self.tower.decompose(a)?;
            let c2 = f.square(dec.c);
            f.square(dec.b) + f.mul(dec.b, dec.c) + f.mul(c2, dec.theta) == c2
        };
        let poly_condition =
            (f.frobenius(a, t + 1) + f.square(a) + f.pow(a, (1u64 << t) + 1)).is_zero();
        let root_condition = self.membership(a);

        let (w, w2) = self.tower.omega;
        let cosets: HashSet<FieldElement> = self
            .tower
            .tview
            .elements()
            .skip(1)
            .flat_map(|beta| [f.mul(w, beta), f.mul(w2, beta)])
            .filter(|&x| !self.tower.in_base(x))
            .collect();
        let coset_condition = cosets.contains(&a);

        let all = [
            alpha_condition,
            poly_condition,
            root_condition,
            coset_condition,
        ];
        Ok(MembershipConditions {
            alpha_condition,
            poly_condition,
            root_condition,
            coset_condition,
            agree: all.iter().all(|&c| c == all[0]),
            verdict: root_condition,
        })
    }
}

/// A concrete F_{2^n}, `n = 2^s t`, with F_{2^{2t}} embedded in it.
#[derive(Debug, Clone)]
pub struct AmbientField {
    pub s: u32,
    pub t: u32,
    pub field: FieldSpec,
    embed: Embedding,
}

impl AmbientField {
    pub fn new(s: u32, ctx: &BinomialContext) -> Result<AmbientField> {
        let t = ctx.t();
        let n = BinomialParams {
            s,
            t,
            a: FieldElement::ONE,
        }
        .n()
        .filter(|&n| n <= MAX_DEGREE as u64)
        .ok_or(Error::ResourceGuard {
            what: "ambient field degree 2^s t",
            limit: MAX_DEGREE as u64,
            actual: if s < 32 {
                (1u64 << s) * t as u64
            } else {
                u64::MAX
            },
        })?;
        let field = make_field(n as u32, None)?;
        let embed = Embedding::new(ctx.field(), &field)?;
        Ok(AmbientField { s, t, field, embed })
    }

    /// `(2^n - 1) / (2^t - 1)`.
    pub fn index(&self) -> u64 {
        self.field.order() / ((1u64 << self.t) - 1)
    }

    /// The image of `a` in F_{2^n}.
    pub fn embed(&self, a: FieldElement) -> FieldElement {
        self.embed.forward(a)
    }

    /// `g = x^(index + 1) + a x` over F_{2^n}.
    pub fn binomial(&self, a: FieldElement) -> SparsePoly {
        SparsePoly::from_terms(
            &self.field,
            [(self.index() + 1, FieldElement::ONE), (1, self.embed(a))],
        )
    }

    /// `g` as `x * f(x^index)` with `f = x + a` and `d = 2^t - 1`.
    pub fn wan_lidl_instance(&self, a: FieldElement) -> Result<WanLidlInstance> {
        let f = SparsePoly::from_terms(&self.field, [(1, FieldElement::ONE), (0, self.embed(a))]);
        WanLidlInstance::new(1, (1u64 << self.t) - 1, f)
    }

    /// Whether `x -> x (x + a)^index` permutes the subfield F_{2^t}.
    pub fn subfield_map_verdict(&self, a: FieldElement) -> Result<PermVerdict> {
        guard(
            "subfield map field degree",
            self.field.n() as u64,
            BRUTE_MAX_DEGREE as u64,
        )?;
        let f = &self.field;
        let a = self.embed(a);
        let m = self.index();
        let view = subfield_view(f, self.t)?;
        let mut seen: HashMap<FieldElement, FieldElement> =
            HashMap::with_capacity(view.size() as usize);
        for x in view.elements() {
            let y = f.mul(x, f.pow(x + a, m));
            debug_assert!(view.contains(y));
            if let Some(&x1) = seen.get(&y) {
                return Ok(PermVerdict {
                    is_pp: false,
                    method: Method::RootsOfUnity,
                    witness: Some(Witness::Collision {
                        x1,
                        x2: x,
                        image: y,
                    }),
                });
            }
            seen.insert(y, x);
        }
        Ok(PermVerdict {
            is_pp: true,
            method: Method::RootsOfUnity,
            witness: None,
        })
    }
}

pub fn classify_binomial(p: &BinomialParams, mode: Mode) -> Result<ClassifierDecision> {
    BinomialContext::new(p.t)?.classify(p, mode)
}

pub fn reduce_binomial(p: &BinomialParams) -> Result<(TrinomialParams, FieldElement)> {
    BinomialContext::new(p.t)?.reduce(p)
}

pub fn subfield_map_verdict(p: &BinomialParams) -> Result<PermVerdict> {
    let ctx = BinomialContext::new(p.t)?;
    ctx.check_params(p)?;
    AmbientField::new(p.s, &ctx)?.subfield_map_verdict(p.a)
}

pub fn membership_conditions_agree(a: FieldElement, t: u32) -> Result<MembershipConditions> {
    BinomialContext::new(t)?.membership_conditions(a)
}

/// `2(2^t - 1)` when the canonical classifier admits `(s, t)`, else 0.
pub fn expected_pp_count(s: u32, t: u32) -> u64 {
    let r = s % t;
    if t % 2 == 1 && (t == 1 || r == 1 || r == 2) {
        2 * ((1u64 << t) - 1)
    } else {
        0
    }
}
