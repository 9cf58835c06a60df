//! Permutation binomials `x^((2^n-1)/(2^t-1)+1) + a*x` and trinomials
//! `x^(2^s+1) + x^(2^(s-1)+1) + alpha*x` over binary fields: field
//! arithmetic, sparse polynomials mod `x^q - x`, three permutation testers,
//! Lucas-theorem coefficient machinery, closed-form classifiers and the
//! suites that cross-check all of them.

pub mod classify;
pub mod error;
pub mod field;
mod gf2x;
pub mod harness;
pub mod lucas;
pub mod par;
pub mod perm;
pub mod poly;
pub mod subfield;

pub use classify::{
    classify_binomial, classify_trinomial_canonical, classify_trinomial_literal,
    membership_conditions_agree, reduce_binomial, subfield_map_verdict, BinomialParams,
    ClassifierDecision, FailedCondition, Mode, TrinomialParams,
};
pub use error::{Error, Result};
pub use field::{find_irreducible, find_primitive, make_field, FieldElement, FieldSpec};
pub use harness::{
    audit_literal, enumerate_binomials, verify_suite, verify_trith, Bounds, Oracle, Profile,
    Report, Suite,
};
pub use perm::{
    is_pp_brute, is_pp_hermite, roots_of_unity_check, wan_lidl, Method, PermVerdict,
    WanLidlInstance, Witness,
};
pub use poly::SparsePoly;
pub use subfield::{
    decompose, omega, subfield_view, Decomposition, Embedding, QuadraticTower, SubfieldView,
};
