use serde_json::json;

use super::report::{Case, Report, ReportBuilder, Retention, Tally};
use super::{slices, Bounds, Oracle};
use crate::classify::{expected_pp_count, AmbientField, BinomialContext, BinomialParams, Mode};
use crate::error::{guard, Error, Result};
use crate::field::{FieldElement, MAX_DEGREE};
use crate::par;
use crate::perm::{is_pp_brute_with, wan_lidl, BruteScratch, Witness, BRUTE_MAX_DEGREE};

const SLICE: u64 = 1024;

/// Largest `t` in the reduction grid; the grid visits all of F_{2^{2t}}.
pub const REDUCTION_MAX_T: u32 = 10;

fn check_st(s: u32, t: u32) -> Result<()> {
    if s == 0 || t == 0 {
        return Err(Error::Domain("s and t must be positive"));
    }
    if 2 * t as u64 > MAX_DEGREE as u64 {
        return Err(Error::DegreeOutOfRange(2 * t));
    }
    Ok(())
}

/// Decides `g` through the reduced trinomial over F_{2^t}; `a` in F_{2^t}
/// fails Wan-Lidl condition (b) and is never a PP.
fn reduction_truth(
    ctx: &BinomialContext,
    p: &BinomialParams,
    scratch: &mut BruteScratch,
) -> Result<bool> {
    if ctx.tower.in_base(p.a) {
        return Ok(false);
    }
    let (tri, _) = ctx.reduce(p)?;
    Ok(is_pp_brute_with(&tri.poly(&ctx.base)?, scratch)?.is_pp)
}

/// Runs `oracle` on every `a` in F_{2^{2t}}^* for `g = x^((2^n-1)/(2^t-1)+1) + a x`,
/// `n = 2^s t`, next to the canonical classifier.
pub fn enumerate_binomials(s: u32, t: u32, oracle: Oracle, retention: Retention) -> Result<Report> {
    check_st(s, t)?;
    let n = BinomialParams {
        s,
        t,
        a: FieldElement::ONE,
    }
    .n();
    let routed = oracle.route(n);
    let ctx = BinomialContext::new(t)?;
    let ambient = match routed {
        Oracle::Brute => {
            guard(
                "brute-force field degree",
                n.unwrap_or(u64::MAX),
                BRUTE_MAX_DEGREE as u64,
            )?;
            Some(AmbientField::new(s, &ctx)?)
        }
        Oracle::WanLidl => Some(AmbientField::new(s, &ctx)?),
        _ => None,
    };

    let mut builder = ReportBuilder::new(
        "binomial-enumerate",
        json!({
            "s": s,
            "t": t,
            "n": n,
            "oracle": oracle,
            "routed_oracle": routed,
            "mode": Mode::Canonical,
            "retention": retention,
            "field": ctx.field(),
        }),
    );
    builder.expect_pp_count(expected_pp_count(s, t));

    let tallies = par::map_collect_init(
        slices(1, ctx.field().q(), SLICE),
        BruteScratch::new,
        |scratch, (lo, hi)| -> Result<Tally> {
            let mut tally = Tally::default();
            for bits in lo..hi {
                let a = FieldElement(bits as u32);
                let p = BinomialParams { s, t, a };
                let predicted = ctx.classify(&p, Mode::Canonical)?.is_pp;
                let truth = match (routed, &ambient) {
                    (Oracle::Brute, Some(amb)) => {
                        is_pp_brute_with(&amb.binomial(a), scratch)?.is_pp
                    }
                    (Oracle::WanLidl, Some(amb)) => wan_lidl(&amb.wan_lidl_instance(a)?)?.is_pp,
                    _ => reduction_truth(&ctx, &p, scratch)?,
                };
                let case = Case::new(bits - 1, json!({ "s": s, "t": t, "a": a }))
                    .classifier("canonical", predicted)
                    .oracle(routed.name(), truth)
                    .classifier_matches_oracles();
                tally.push(case, retention);
            }
            Ok(tally)
        },
    );
    builder.extend(tallies.into_iter().collect::<Result<Vec<_>>>()?);
    Ok(builder.finish())
}

/// For every `(s, t)` with `2^s t <= max_n`, `t <= REDUCTION_MAX_T`, and
/// every `a` in F_{2^{2t}}^*: brute force on `g`, Wan-Lidl on `g`, the
/// subfield map, and brute force on the reduced trinomial (or condition (b)
/// for `a` in F_{2^t}) must all agree, and agree with the canonical
/// classifier.
pub fn reduction_suite(bounds: &Bounds, retention: Retention) -> Result<Report> {
    let max_n = bounds.max_n.min(BRUTE_MAX_DEGREE);
    let mut pairs = Vec::new();
    for t in 1..=REDUCTION_MAX_T {
        for s in 1.. {
            if (1u64 << s) * t as u64 > max_n as u64 {
                break;
            }
            pairs.push((s, t));
        }
    }
    let mut contexts: Vec<(BinomialContext, AmbientField, u64)> = Vec::with_capacity(pairs.len());
    let mut offset = 0;
    for &(s, t) in &pairs {
        let ctx = match contexts.iter().find(|(c, _, _)| c.t() == t) {
            Some((c, _, _)) => c.clone(),
            None => BinomialContext::new(t)?,
        };
        let amb = AmbientField::new(s, &ctx)?;
        let size = ctx.field().order();
        contexts.push((ctx, amb, offset));
        offset += size;
    }

    let tasks: Vec<(usize, u64, u64)> = contexts
        .iter()
        .enumerate()
        .flat_map(|(i, (ctx, _, _))| {
            slices(1, ctx.field().q(), SLICE)
                .into_iter()
                .map(move |(lo, hi)| (i, lo, hi))
        })
        .collect();

    let mut builder = ReportBuilder::new(
        "verify-reduction",
        json!({ "max_n": max_n, "max_t": REDUCTION_MAX_T, "pairs": pairs, "retention": retention }),
    );
    let tallies = par::map_collect_init(
        tasks,
        BruteScratch::new,
        |scratch, (i, lo, hi)| -> Result<Tally> {
            let (ctx, amb, offset) = &contexts[i];
            let (s, t) = (amb.s, amb.t);
            let mut tally = Tally::default();
            for bits in lo..hi {
                let a = FieldElement(bits as u32);
                let p = BinomialParams { s, t, a };
                let predicted = ctx.classify(&p, Mode::Canonical)?.is_pp;
                let brute = is_pp_brute_with(&amb.binomial(a), scratch)?.is_pp;
                let wl = wan_lidl(&amb.wan_lidl_instance(a)?)?;
                let sub = amb.subfield_map_verdict(a)?.is_pp;
                let mut case = Case::new(offset + bits - 1, json!({ "s": s, "t": t, "a": a }))
                    .classifier("canonical", predicted)
                    .oracle("brute", brute)
                    .oracle("wanlidl", wl.is_pp)
                    .oracle("subfield-map", sub);
                let cond_b = matches!(wl.witness, Some(Witness::ConditionB { .. }));
                let agree = if ctx.tower.in_base(a) {
                    case = case.detail(json!({ "condition_b": cond_b }));
                    cond_b && !brute && !wl.is_pp && !sub && !predicted
                } else {
                    let reduced = reduction_truth(ctx, &p, scratch)?;
                    case = case.oracle("reduced-brute", reduced);
                    !cond_b
                        && [wl.is_pp, sub, reduced, predicted]
                            .iter()
                            .all(|&v| v == brute)
                };
                tally.push(case.agree(agree), retention);
            }
            Ok(tally)
        },
    );
    builder.extend(tallies.into_iter().collect::<Result<Vec<_>>>()?);
    Ok(builder.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_examples() {
        let r = enumerate_binomials(1, 3, Oracle::Brute, Retention::Notable).unwrap();
        assert_eq!(r.summary.pp_count, 14);
        assert_eq!(r.summary.total, 63);
        assert!(r.passed());

        let r = enumerate_binomials(1, 1, Oracle::Brute, Retention::All).unwrap();
        assert_eq!(r.summary.pp_count, 2);
        let pp: Vec<_> = r
            .cases
            .iter()
            .filter(|c| c.is_positive())
            .map(|c| c.input["a"].clone())
            .collect();
        assert_eq!(pp, vec![json!("2"), json!("3")]);
    }

    #[test]
    fn oracles_agree_on_counts() {
        for oracle in [Oracle::Brute, Oracle::WanLidl, Oracle::Reduction] {
            for (s, t) in [(1, 2), (2, 1), (1, 3), (3, 1)] {
                let r = enumerate_binomials(s, t, oracle, Retention::Notable).unwrap();
                assert!(r.passed(), "{oracle} s={s} t={t}: {:?}", r.summary);
            }
        }
    }

    #[test]
    fn large_n_routes_to_reduction() {
        let r = enumerate_binomials(4, 3, Oracle::Auto, Retention::Notable).unwrap();
        assert_eq!(r.params["routed_oracle"], json!("reduction"));
        assert_eq!(r.summary.pp_count, 14);
        assert!(r.passed());
    }

    #[test]
    fn small_reduction_grid() {
        let bounds = Bounds {
            max_n: 8,
            ..Bounds::default()
        };
        let r = reduction_suite(&bounds, Retention::Notable).unwrap();
        assert_eq!(r.summary.disagreements, 0);
        assert!(r.summary.total > 0);
    }
}
