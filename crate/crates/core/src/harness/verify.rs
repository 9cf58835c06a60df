use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::report::{Case, Report, ReportBuilder, Retention, Tally};
use super::{reduction_suite, Bounds, Suite, SEED};
use crate::classify::{classify_trinomial_canonical, TrinomialParams};
use crate::error::{guard, Result};
use crate::field::{make_field, FieldElement, FieldSpec, MAX_DEGREE};
use crate::lucas::{
    admissible_ells, case1_sum, closed_form_2t3, closed_form_2t4, exponent_triples,
    multinomial_mod_p, multinomial_nonzero_mod2, nonvanishing_value, oracle::PascalTable,
    top_coeff_from_triples,
};
use crate::par;
use crate::perm::{
    is_pp_brute_with, is_pp_hermite_with, BruteScratch, HermiteOptions, HERMITE_MAX_DEGREE,
};
use crate::poly::SparsePoly;

const COEFFS_MAX_T: u32 = 12;
const LUCAS_MAX_K: u64 = 1024;
const LUCAS_PRIMES: [u64; 3] = [2, 3, 5];
const RANDOM_TRINOMIALS: usize = 1000;

/// Runs the named invariant grid.
pub fn verify_suite(suite: Suite, bounds: &Bounds, retention: Retention) -> Result<Report> {
    match suite {
        Suite::Coeffs => coeffs(bounds, retention),
        Suite::Lucas => lucas(bounds, retention),
        Suite::FieldAxioms => field_axioms(bounds, retention),
        Suite::PermTesters => perm_testers(bounds, retention),
        Suite::Reduction => reduction_suite(bounds, retention),
    }
}

fn collect(builder: &mut ReportBuilder, tallies: Vec<Result<Tally>>) -> Result<()> {
    builder.extend(tallies.into_iter().collect::<Result<Vec<_>>>()?);
    Ok(())
}

fn fields(degrees: impl Iterator<Item = u32>) -> Result<Vec<FieldSpec>> {
    degrees.map(|n| make_field(n, None)).collect()
}

/// The alphas visited for one `(s, t)`: all of F_{2^t}, or a fixed
/// pseudorandom sample once `t` exceeds the exhaustive bound.
fn alphas(field: &FieldSpec, s: u32, bounds: &Bounds) -> Vec<FieldElement> {
    if field.n() <= bounds.exhaustive_t {
        return field.elements().collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ ((s as u64) << 8 | field.n() as u64));
    (0..bounds.samples)
        .map(|_| FieldElement(rng.gen_range(0..field.q()) as u32))
        .collect()
}

/// Coefficient of `x^(2^t-1)` in `f^k`, `k` in `{2^t-3, 2^t-4}`: the
/// multinomial sum against polynomial powering for every `1 <= s < t`, and
/// against the closed forms (plus the simplified nonvanishing value) when
/// `3 <= s < t`.
fn coeffs(bounds: &Bounds, retention: Retention) -> Result<Report> {
    guard(
        "coefficient grid t",
        bounds.max_t as u64,
        COEFFS_MAX_T as u64,
    )?;
    let fields = fields(1..=bounds.max_t)?;
    let mut tasks = Vec::new();
    for t in 2..=bounds.max_t {
        for s in 1..t {
            for offset in [3u64, 4] {
                tasks.push((s, t, offset));
            }
        }
    }
    let mut builder = ReportBuilder::new(
        "verify-coeffs",
        json!({ "max_t": bounds.max_t, "exhaustive_t": bounds.exhaustive_t, "samples": bounds.samples, "seed": SEED }),
    );
    let tallies = par::map_collect(tasks, |(s, t, offset)| -> Result<Tally> {
        let field = &fields[t as usize - 1];
        let k = (1u64 << t) - offset;
        let triples = exponent_triples(s, t, k)?;
        let regime = 3 <= s && s < t;
        let ells_ok = !regime
            || triples
                .iter()
                .all(|tr| admissible_ells(s, offset).contains(&tr.ell));
        let mut tally = Tally::default();
        for (i, alpha) in alphas(field, s, bounds).into_iter().enumerate() {
            let comb = top_coeff_from_triples(&triples, k, alpha, field);
            let poly = TrinomialParams { s, t, alpha }
                .poly(field)?
                .pow_mod(k)
                .coeff_top();
            let mut ok = ells_ok && comb == poly;
            let mut detail = json!({ "combinatorial": comb, "poly": poly, "ells_ok": ells_ok });
            if regime {
                let closed = if offset == 3 {
                    closed_form_2t3(s, t, alpha, field)?
                } else {
                    closed_form_2t4(s, t, alpha, field)?
                };
                ok &= closed == comb;
                detail["closed_form"] = json!(closed);
                if offset == 4 && case1_sum(s, t, alpha, field)? == FieldElement::ONE {
                    let nv = nonvanishing_value(s, t, alpha, field)?;
                    ok &= nv == closed && !nv.is_zero();
                    detail["nonvanishing"] = json!(nv);
                }
            }
            let case = Case::new(
                ((s as u64) << 40) | ((t as u64) << 32) | (offset << 28) | i as u64,
                json!({ "s": s, "t": t, "k": k, "alpha": alpha }),
            )
            .agree(ok)
            .detail(detail);
            tally.push(case, retention);
        }
        Ok(tally)
    });
    collect(&mut builder, tallies)?;
    Ok(builder.finish())
}

/// Lucas digit products against Pascal's rule for every three-part
/// composition of every `k <= max_k`, plus two fixed mod-2 vectors.
fn lucas(bounds: &Bounds, retention: Retention) -> Result<Report> {
    guard("multinomial grid k", bounds.max_k, LUCAS_MAX_K)?;
    let tables: Vec<PascalTable> = LUCAS_PRIMES
        .iter()
        .map(|&p| PascalTable::new(bounds.max_k as usize, p))
        .collect();
    let mut builder = ReportBuilder::new(
        "verify-lucas",
        json!({ "max_k": bounds.max_k, "primes": LUCAS_PRIMES }),
    );
    let tallies = par::map_collect((0..=bounds.max_k).collect(), |k| -> Result<Tally> {
        let mut mismatches = [0u64; 3];
        let mut mod2_mismatches = 0u64;
        for u in 0..=k {
            for v in 0..=k - u {
                let parts = [u, v, k - u - v];
                for (j, (&p, table)) in LUCAS_PRIMES.iter().zip(&tables).enumerate() {
                    if multinomial_mod_p(k, &parts, p)? != table.multinomial(k, &parts) {
                        mismatches[j] += 1;
                    }
                }
                if multinomial_nonzero_mod2(k, &parts)? != (tables[0].multinomial(k, &parts) != 0) {
                    mod2_mismatches += 1;
                }
            }
        }
        let ok = mismatches.iter().all(|&m| m == 0) && mod2_mismatches == 0;
        let mut tally = Tally::default();
        tally.push(
            Case::new(k, json!({ "k": k, "parts": 3 }))
                .agree(ok)
                .detail(json!({ "mismatches": mismatches, "mod2_mismatches": mod2_mismatches })),
            retention,
        );
        Ok(tally)
    });
    collect(&mut builder, tallies)?;

    let mut fixed = Tally::default();
    for (i, (k, parts)) in [(509u64, [16u64, 224, 269]), (2044, [32, 704, 1308])]
        .into_iter()
        .enumerate()
    {
        let nonzero = multinomial_nonzero_mod2(k, &parts)?;
        let residue = multinomial_mod_p(k, &parts, 2)?;
        fixed.push(
            Case::new(
                bounds.max_k + 1 + i as u64,
                json!({ "k": k, "parts": parts }),
            )
            .agree(nonzero && residue == 1)
            .detail(json!({ "nonzero_mod2": nonzero, "residue_mod2": residue })),
            retention,
        );
    }
    builder.absorb(fixed);
    Ok(builder.finish())
}

/// Shift-and-add product reduced by `modulus`, independent of the field's
/// tables.
fn schoolbook_mul(x: u32, y: u32, modulus: u64, n: u32) -> u32 {
    let mut acc = 0u64;
    let mut a = x as u64;
    for i in 0..n {
        if y >> i & 1 == 1 {
            acc ^= a;
        }
        a <<= 1;
        if a >> n & 1 == 1 {
            a ^= modulus;
        }
    }
    acc as u32
}

fn field_axioms(bounds: &Bounds, retention: Retention) -> Result<Report> {
    let mut builder = ReportBuilder::new(
        "verify-fieldaxioms",
        json!({ "max_n": MAX_DEGREE, "samples": bounds.axiom_samples, "seed": SEED }),
    );
    let tallies = par::map_collect((1..=MAX_DEGREE).collect(), |n| -> Result<Tally> {
        let f = make_field(n, None)?;
        let mut failures: Vec<&str> = Vec::new();
        let mut fail = |ok: bool, name: &'static str| {
            if !ok && !failures.contains(&name) {
                failures.push(name);
            }
        };
        fail(
            f.multiplicative_order(f.gamma())? == f.order(),
            "gamma-order",
        );
        fail(
            f.q_minus_1_factors().iter().product::<u64>() == f.order(),
            "factorization",
        );
        fail(make_field(n, Some(f.modulus()))? == f, "explicit-modulus");
        let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ n as u64);
        let mut draw = || FieldElement(rng.gen_range(0..f.q()) as u32);
        for _ in 0..bounds.axiom_samples {
            let (x, y, z) = (draw(), draw(), draw());
            fail(f.mul(x, y) == f.mul(y, x), "mul-commutative");
            fail(
                f.mul(f.mul(x, y), z) == f.mul(x, f.mul(y, z)),
                "mul-associative",
            );
            fail(f.mul(x, y + z) == f.mul(x, y) + f.mul(x, z), "distributive");
            fail(
                f.mul(x, y).0 == schoolbook_mul(x.0, y.0, f.modulus(), n),
                "schoolbook",
            );
            fail(f.frobenius(x, n) == x, "frobenius-period");
            let (a, b) = (y.0 as u64, z.0 as u64);
            fail(
                f.mul(f.pow(x, a), f.pow(x, b)) == f.pow(x, a + b),
                "pow-additive",
            );
            if !x.is_zero() {
                fail(f.mul(x, f.inv(x)?) == FieldElement::ONE, "inverse");
                fail(f.pow(x, f.order()) == FieldElement::ONE, "lagrange");
            }
        }
        let mut tally = Tally::default();
        tally.push(
            Case::new(
                n as u64,
                json!({ "n": n, "modulus": format!("{:x}", f.modulus()) }),
            )
            .agree(failures.is_empty())
            .detail(json!({ "failed": failures })),
            retention,
        );
        Ok(tally)
    });
    collect(&mut builder, tallies)?;
    Ok(builder.finish())
}

#[derive(Debug, Clone, Copy)]
enum Family {
    Random,
    Trinomial,
    Monomial,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn random_trinomial(f: &FieldSpec, rng: &mut ChaCha8Rng) -> SparsePoly {
    let mut exps: Vec<u64> = Vec::with_capacity(3);
    while exps.len() < 3 {
        let e = rng.gen_range(1..f.q());
        if !exps.contains(&e) {
            exps.push(e);
        }
    }
    SparsePoly::from_terms(
        f,
        exps.into_iter()
            .map(|e| (e, FieldElement(rng.gen_range(1..f.q()) as u32))),
    )
}

/// Brute force against Hermite-Dickson (with and without the even-power
/// shortcut) on random trinomials (fields of size 8 and up), the trinomial
/// family, and monomials, whose verdict is also predicted by
/// `gcd(e, q - 1) = 1`.
fn perm_testers(bounds: &Bounds, retention: Retention) -> Result<Report> {
    guard(
        "tester grid degree",
        bounds.max_perm_degree as u64,
        HERMITE_MAX_DEGREE as u64,
    )?;
    let fields = fields(1..=bounds.max_perm_degree)?;
    let tasks: Vec<(usize, Family)> = (0..fields.len())
        .flat_map(|i| [Family::Random, Family::Trinomial, Family::Monomial].map(|fam| (i, fam)))
        .collect();
    let mut builder = ReportBuilder::new(
        "verify-permtesters",
        json!({
            "degrees": [1, bounds.max_perm_degree],
            "random_trinomials": RANDOM_TRINOMIALS,
            "seed": SEED,
        }),
    );
    let tallies = par::map_collect_init(
        tasks,
        BruteScratch::new,
        |scratch, (i, fam)| -> Result<Tally> {
            let f = &fields[i];
            let n = f.n();
            let mut items: Vec<(SparsePoly, Option<(&str, bool)>)> = Vec::new();
            match fam {
                Family::Random if n >= 3 => {
                    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ (0x100 | n as u64));
                    for _ in 0..RANDOM_TRINOMIALS {
                        items.push((random_trinomial(f, &mut rng), None));
                    }
                }
                Family::Random => {}
                Family::Trinomial => {
                    for s in 1..=n {
                        for alpha in f.elements() {
                            let p = TrinomialParams { s, t: n, alpha };
                            items.push((
                                p.poly(f)?,
                                Some(("canonical", classify_trinomial_canonical(&p).is_pp)),
                            ));
                        }
                    }
                }
                Family::Monomial => {
                    for e in 1..f.q() {
                        let mono = SparsePoly::monomial(f, e, FieldElement::ONE);
                        items.push((mono, Some(("gcd", gcd(e, f.order()) == 1))));
                    }
                }
            }
            let base = ((i as u64) << 32) | ((fam as u64) << 28);
            let mut tally = Tally::default();
            for (j, (p, predicted)) in items.into_iter().enumerate() {
                let brute = is_pp_brute_with(&p, scratch)?.is_pp;
                let hermite = is_pp_hermite_with(&p, HermiteOptions::default())?.is_pp;
                let skip_even = is_pp_hermite_with(
                    &p,
                    HermiteOptions {
                        skip_even_powers: true,
                    },
                )?
                .is_pp;
                let mut case = Case::new(
                    base | j as u64,
                    json!({ "n": n, "family": format!("{fam:?}").to_lowercase(), "poly": p.to_string() }),
                );
                if let Some((name, v)) = predicted {
                    case = case.classifier(name, v);
                }
                let agree = brute == hermite
                    && brute == skip_even
                    && predicted.is_none_or(|(_, v)| v == brute);
                case = case
                    .oracle("brute", brute)
                    .oracle("hermite", hermite)
                    .oracle("hermite-skip-even", skip_even)
                    .agree(agree);
                tally.push(case, retention);
            }
            Ok(tally)
        },
    );
    collect(&mut builder, tallies)?;
    Ok(builder.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> Bounds {
        Bounds {
            max_t: 6,
            max_n: 8,
            max_k: 40,
            max_perm_degree: 5,
            exhaustive_t: 5,
            samples: 8,
            axiom_samples: 50,
        }
    }

    #[test]
    fn every_suite_passes_on_small_bounds() {
        for suite in Suite::ALL {
            let r = verify_suite(suite, &small(), Retention::Notable).unwrap();
            assert!(r.passed(), "{suite}: {:?}", r.summary);
            assert!(r.summary.total > 0, "{suite}");
        }
    }

    #[test]
    fn schoolbook_agrees_on_f4() {
        assert_eq!(schoolbook_mul(2, 2, 0b111, 2), 3);
        assert_eq!(schoolbook_mul(2, 3, 0b111, 2), 1);
    }

    #[test]
    fn suites_are_deterministic() {
        let a = verify_suite(Suite::Coeffs, &small(), Retention::All)
            .unwrap()
            .without_timing();
        let b = verify_suite(Suite::Coeffs, &small(), Retention::All)
            .unwrap()
            .without_timing();
        assert_eq!(a.to_json(), b.to_json());
    }
}
