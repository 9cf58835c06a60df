use serde_json::json;

use super::report::{Case, Report, ReportBuilder, Retention, Tally};
use super::Oracle;
use crate::classify::{
    classify_trinomial_canonical, classify_trinomial_literal, AmbientField, BinomialContext,
    BinomialParams, Mode, TrinomialParams,
};
use crate::error::{guard, Error, Result};
use crate::field::{make_field, FieldSpec};
use crate::par;
use crate::perm::{is_pp_brute_with, wan_lidl, BruteScratch};

/// Largest `t` accepted by [`verify_trith`] and [`audit_literal`].
pub const TRITH_MAX_T: u32 = 11;

const MAX_S: u32 = 64;

fn check_grid(s_max: u32, t_max: u32) -> Result<Vec<FieldSpec>> {
    if s_max == 0 || t_max == 0 {
        return Err(Error::Domain("s_max and t_max must be positive"));
    }
    guard("t_max", t_max as u64, TRITH_MAX_T as u64)?;
    guard("s_max", s_max as u64, MAX_S as u64)?;
    (1..=t_max).map(|t| make_field(t, None)).collect()
}

/// The canonical classifier against brute force on every
/// `(s, t, alpha)` with `1 <= s <= min(t, s_max)`, `t <= t_max`.
pub fn verify_trith(s_max: u32, t_max: u32, retention: Retention) -> Result<Report> {
    let fields = check_grid(s_max, t_max)?;
    let mut pairs = Vec::new();
    let mut offset = 0u64;
    let mut expected = 0u64;
    for t in 1..=t_max {
        for s in 1..=s_max.min(t) {
            pairs.push((s, t, offset));
            offset += 1u64 << t;
            expected += (t % 2 == 1 && s <= 2) as u64;
        }
    }
    let mut builder = ReportBuilder::new(
        "verify-trith",
        json!({ "s_max": s_max, "t_max": t_max, "mode": Mode::Canonical, "retention": retention }),
    );
    builder.expect_pp_count(expected);
    let tallies = par::map_collect_init(
        pairs,
        BruteScratch::new,
        |scratch, (s, t, offset)| -> Result<Tally> {
            let field = &fields[t as usize - 1];
            let mut tally = Tally::default();
            for (i, alpha) in field.elements().enumerate() {
                let p = TrinomialParams { s, t, alpha };
                let truth = is_pp_brute_with(&p.poly(field)?, scratch)?.is_pp;
                let case = Case::new(offset + i as u64, json!({ "s": s, "t": t, "alpha": alpha }))
                    .classifier("canonical", classify_trinomial_canonical(&p).is_pp)
                    .oracle("brute", truth)
                    .classifier_matches_oracles();
                tally.push(case, retention);
            }
            Ok(tally)
        },
    );
    builder.extend(tallies.into_iter().collect::<Result<Vec<_>>>()?);
    Ok(builder.finish())
}

fn family(t: u32) -> &'static str {
    if t == 1 {
        "t=1"
    } else {
        "s>t"
    }
}

/// Every trinomial `(s, t, alpha)` and binomial `(s, t, a)` with
/// `s <= s_max`, `t <= t_max` on which the literal and canonical
/// classifiers differ, each with an oracle verdict attached. A case
/// disagrees when the canonical classifier contradicts the oracle.
pub fn audit_literal(s_max: u32, t_max: u32) -> Result<Report> {
    let fields = check_grid(s_max, t_max)?;
    let mut scratch = BruteScratch::new();
    let mut tally = Tally::default();
    let mut scanned_trinomials = 0u64;
    let mut scanned_binomials = 0u64;

    for t in 1..=t_max {
        let field = &fields[t as usize - 1];
        for s in 1..=s_max {
            for alpha in field.elements() {
                scanned_trinomials += 1;
                let p = TrinomialParams { s, t, alpha };
                let (lit, can) = (
                    classify_trinomial_literal(&p),
                    classify_trinomial_canonical(&p),
                );
                if lit.is_pp == can.is_pp {
                    continue;
                }
                let truth = is_pp_brute_with(&p.poly(field)?, &mut scratch)?.is_pp;
                let case = Case::new(
                    tally.total,
                    json!({ "kind": "trinomial", "s": s, "t": t, "alpha": alpha, "family": family(t) }),
                )
                .classifier("literal", lit.is_pp)
                .classifier("canonical", can.is_pp)
                .oracle("brute", truth)
                .agree(can.is_pp == truth);
                tally.push(case, Retention::All);
            }
        }
    }

    for t in 1..=t_max {
        let ctx = BinomialContext::new(t)?;
        let members: Vec<_> = ctx
            .field()
            .elements()
            .skip(1)
            .filter(|&a| ctx.membership(a))
            .collect();
        for s in 1..=s_max {
            scanned_binomials += ctx.field().order();
            // Both modes require t odd and membership; they can differ only
            // through the condition on s, and then exactly on the members.
            let probe = |mode| {
                members
                    .first()
                    .map(|&a| ctx.classify(&BinomialParams { s, t, a }, mode))
                    .transpose()
            };
            let (lit, can) = match (probe(Mode::Literal)?, probe(Mode::Canonical)?) {
                (Some(l), Some(c)) if l.is_pp != c.is_pp => (l, c),
                _ => continue,
            };
            let n = BinomialParams {
                s,
                t,
                a: members[0],
            }
            .n();
            let routed = Oracle::Auto.route(n);
            let ambient = match routed {
                Oracle::Brute | Oracle::WanLidl => Some(AmbientField::new(s, &ctx)?),
                _ => None,
            };
            for &a in &members {
                let p = BinomialParams { s, t, a };
                let truth = match (routed, &ambient) {
                    (Oracle::Brute, Some(amb)) => {
                        is_pp_brute_with(&amb.binomial(a), &mut scratch)?.is_pp
                    }
                    (Oracle::WanLidl, Some(amb)) => wan_lidl(&amb.wan_lidl_instance(a)?)?.is_pp,
                    _ => {
                        let (tri, _) = ctx.reduce(&p)?;
                        is_pp_brute_with(&tri.poly(&ctx.base)?, &mut scratch)?.is_pp
                    }
                };
                let case = Case::new(
                    tally.total,
                    json!({ "kind": "binomial", "s": s, "t": t, "a": a, "n": n, "family": family(t) }),
                )
                .classifier("literal", lit.is_pp)
                .classifier("canonical", can.is_pp)
                .oracle(routed.name(), truth)
                .agree(can.is_pp == truth);
                tally.push(case, Retention::All);
            }
        }
    }

    let mut builder = ReportBuilder::new(
        "audit-literal",
        json!({
            "s_max": s_max,
            "t_max": t_max,
            "scanned_trinomials": scanned_trinomials,
            "scanned_binomials": scanned_binomials,
        }),
    );
    builder.absorb(tally);
    Ok(builder.finish())
}
