//! One checking routine per theorem id.

use super::{CaseResult, Routine, RunOptions, TheoremId, VerifierError};
use crate::inverses::{
    classify, drazin, drazin_scan, group_inverse, group_scan, polar_decomposition,
    decomposition_to_inverse, strongly_clean_decompositions, PolarVariant, Property, Variant,
};
use crate::ring::FiniteRing;
use crate::structure::{bicommutant, StructureCache};
use crate::transfer::{
    cline, corner_equivalence, jacobson_inverse, one_minus_clean_transfer,
    pseudo_one_minus_transfer, strongly_clean_transfer, CornerContext,
};
use std::sync::Arc;

pub(crate) fn routine<'a>(
    id: TheoremId,
    ring: &'a Arc<FiniteRing>,
    cache: &'a StructureCache,
    opts: &RunOptions,
) -> Result<Routine<'a>, VerifierError> {
    let r = ring.as_ref();
    let n = r.order();
    let pair_describe =
        move |i: usize| format!("a={}, b={}", r.label(i / n), r.label(i % n));

    let routine = match id {
        TheoremId::JacobsonLemma => Routine {
            domain: n * n,
            describe: Box::new(pair_describe),
            case: Box::new(move |i| {
                let (a, b) = (i / n, i % n);
                match jacobson_inverse(r, cache, a, b) {
                    Ok(None) => CaseResult::NotApplicable,
                    Err(e) => CaseResult::Fail(e.to_string()),
                    Ok(Some(w)) => {
                        // independent oracle: the unit scan's stored inverse
                        let one_ba = r.add(r.one(), r.mul(b, a));
                        if cache.inverse_of(one_ba) == Some(w) {
                            CaseResult::Pass
                        } else {
                            CaseResult::Fail(
                                "formula inverse differs from the unit-scan inverse".into(),
                            )
                        }
                    }
                }
            }),
        },
        TheoremId::ClineD | TheoremId::ClineGd | TheoremId::ClinePd => {
            let variant = match id {
                TheoremId::ClineD => Variant::Drazin,
                TheoremId::ClineGd => Variant::Generalized,
                _ => Variant::Pseudo,
            };
            Routine {
                domain: n * n,
                describe: Box::new(pair_describe),
                case: Box::new(move |i| {
                    let (a, b) = (i / n, i % n);
                    match cline(r, cache, a, b, variant) {
                        Ok(None) => CaseResult::NotApplicable,
                        Err(e) => CaseResult::Fail(e.to_string()),
                        Ok(Some(res_ba)) => {
                            let idx_ab = drazin(r, cache, r.mul(a, b), variant)
                                .expect("cline precondition")
                                .index;
                            if res_ba.index.abs_diff(idx_ab) > 1 {
                                CaseResult::PassNote(format!(
                                    "index jump |{}-{}| > 1 at a={}, b={} (relation not \
                                     claimed by the theorem)",
                                    idx_ab,
                                    res_ba.index,
                                    r.label(a),
                                    r.label(b)
                                ))
                            } else {
                                CaseResult::Pass
                            }
                        }
                    }
                }),
            }
        }
        TheoremId::StronglyCleanTransfer => Routine {
            domain: n * n,
            describe: Box::new(pair_describe),
            case: Box::new(move |i| {
                let (a, b) = (i / n, i % n);
                let decs = strongly_clean_decompositions(r, cache, r.mul(a, b));
                if decs.is_empty() {
                    return CaseResult::NotApplicable;
                }
                for d in &decs {
                    if let Err(e) = strongly_clean_transfer(r, cache, a, b, d) {
                        return CaseResult::Fail(format!(
                            "decomposition (e={}, u={}): {e}",
                            r.label(d.idempotent),
                            r.label(d.unit)
                        ));
                    }
                }
                CaseResult::Pass
            }),
        },
        TheoremId::OneMinusClean => Routine {
            domain: n * n,
            describe: Box::new(pair_describe),
            case: Box::new(move |i| {
                let (a, b) = (i / n, i % n);
                let x = r.sub(r.one(), r.mul(a, b));
                let decs = strongly_clean_decompositions(r, cache, x);
                if decs.is_empty() {
                    return CaseResult::NotApplicable;
                }
                for d in &decs {
                    if let Err(e) = one_minus_clean_transfer(r, cache, a, b, d) {
                        return CaseResult::Fail(format!(
                            "decomposition (e={}, u={}): {e}",
                            r.label(d.idempotent),
                            r.label(d.unit)
                        ));
                    }
                }
                CaseResult::Pass
            }),
        },
        TheoremId::PseudoOneMinus => Routine {
            domain: n * n,
            describe: Box::new(pair_describe),
            case: Box::new(move |i| {
                let (a, b) = (i / n, i % n);
                match pseudo_one_minus_transfer(r, cache, a, b) {
                    Ok(None) => CaseResult::NotApplicable,
                    Ok(Some(_)) => CaseResult::Pass,
                    Err(e) => CaseResult::Fail(e.to_string()),
                }
            }),
        },
        TheoremId::CornerClean
        | TheoremId::CornerPiRegular
        | TheoremId::CornerQuasipolar
        | TheoremId::CornerPseudopolar => {
            let property = match id {
                TheoremId::CornerClean => Property::StronglyClean,
                TheoremId::CornerPiRegular => Property::StronglyPiRegular,
                TheoremId::CornerQuasipolar => Property::Quasipolar,
                _ => Property::Pseudopolar,
            };
            let idems = cache.idempotents();
            let ctxs: Vec<CornerContext> = idems
                .iter()
                .map(|&e| CornerContext::new(ring, e))
                .collect::<Result<_, _>>()?;
            let weakened = opts.weaken_corner_converse;
            let describe_idems = idems.clone();
            Routine {
                domain: idems.len() * n,
                describe: Box::new(move |i| {
                    format!(
                        "e={}, a={}",
                        r.label(describe_idems[i / n]),
                        r.label(i % n)
                    )
                }),
                case: Box::new(move |i| {
                    let ctx = &ctxs[i / n];
                    let a = i % n;
                    let report = corner_equivalence(r, cache, ctx, a, property);
                    if !report.passed() {
                        CaseResult::Fail(format!(
                            "violated: {}",
                            report.failed.join("; ")
                        ))
                    } else if weakened && report.p3 && !report.p1 {
                        CaseResult::Fail(
                            "unclaimed converse P3 => P1 fails for a non-central idempotent"
                                .into(),
                        )
                    } else if report.converse_not_claimed {
                        CaseResult::PassNote(format!(
                            "converse not claimed at e={}, a={} (P3 holds, P1 fails, e \
                             non-central)",
                            r.label(ctx.e),
                            r.label(a)
                        ))
                    } else {
                        CaseResult::Pass
                    }
                }),
            }
        }
        TheoremId::DecompEquiv11 | TheoremId::DecompEquiv12 | TheoremId::DecompEquiv13 => {
            let pv = match id {
                TheoremId::DecompEquiv11 => PolarVariant::PiRegular,
                TheoremId::DecompEquiv12 => PolarVariant::Quasipolar,
                _ => PolarVariant::Pseudopolar,
            };
            let strongly_regular = strongly_regular_mask(r);
            Routine {
                domain: n,
                describe: Box::new(move |a| format!("a={}", r.label(a))),
                case: Box::new(move |a| {
                    let present =
                        !drazin_scan(r, cache, a, pv.matching_drazin()).is_empty();
                    let exists =
                        !decomposition_candidates(r, cache, a, pv, &strongly_regular)
                            .is_empty();
                    if present != exists {
                        return CaseResult::Fail(format!(
                            "inverse present = {present} but decomposition exists = {exists}"
                        ));
                    }
                    if present {
                        let d = polar_decomposition(r, cache, a, pv)
                            .expect("presence was just established");
                        if let Err(e) = decomposition_to_inverse(r, cache, a, &d) {
                            return CaseResult::Fail(e);
                        }
                    }
                    CaseResult::Pass
                }),
            }
        }
        TheoremId::LemmaSSharp => {
            let variants = [
                PolarVariant::PiRegular,
                PolarVariant::Quasipolar,
                PolarVariant::Pseudopolar,
            ];
            let strongly_regular = strongly_regular_mask(r);
            Routine {
                domain: 3 * n,
                describe: Box::new(move |i| {
                    format!(
                        "variant={}, a={}",
                        variants[i / n].matching_drazin().name(),
                        r.label(i % n)
                    )
                }),
                case: Box::new(move |i| {
                    let (pv, a) = (variants[i / n], i % n);
                    let candidates =
                        decomposition_candidates(r, cache, a, pv, &strongly_regular);
                    if candidates.is_empty() {
                        return CaseResult::NotApplicable;
                    }
                    let Some(oracle) = drazin(r, cache, a, pv.matching_drazin()) else {
                        return CaseResult::Fail(
                            "decomposition exists but the inverse scan finds nothing".into(),
                        );
                    };
                    for s in candidates {
                        let sharp = group_inverse(r, s)
                            .expect("candidate regular part is strongly regular");
                        if sharp.inverse != oracle.inverse {
                            return CaseResult::Fail(format!(
                                "s = {} gives s^# = {} but the scanned inverse is {}",
                                r.label(s),
                                r.label(sharp.inverse),
                                r.label(oracle.inverse)
                            ));
                        }
                    }
                    CaseResult::Pass
                }),
            }
        }
        TheoremId::Uniqueness => Routine {
            domain: n,
            describe: Box::new(move |a| format!("a={}", r.label(a))),
            case: Box::new(move |a| {
                let hits = group_scan(r, a);
                if hits.len() > 1 {
                    return CaseResult::Fail(format!(
                        "group scan found {} solutions",
                        hits.len()
                    ));
                }
                for v in [Variant::Drazin, Variant::Pseudo, Variant::Generalized] {
                    let hits = drazin_scan(r, cache, a, v);
                    if hits.len() > 1 {
                        return CaseResult::Fail(format!(
                            "{} scan found {} solutions",
                            v.name(),
                            hits.len()
                        ));
                    }
                }
                CaseResult::Pass
            }),
        },
        TheoremId::RadicalChain => Routine {
            domain: n,
            describe: Box::new(move |x| format!("x={}", r.label(x))),
            case: Box::new(move |x| {
                if cache.in_jacobson(x) && !cache.in_j_sharp(x) {
                    return CaseResult::Fail("x in J(R) but not in J#(R)".into());
                }
                if cache.in_j_sharp(x) && !cache.in_qnil(x) {
                    return CaseResult::Fail("x in J#(R) but not in R^qnil".into());
                }
                if cache.is_nilpotent(x) && !cache.in_qnil(x) {
                    return CaseResult::Fail("x nilpotent but not quasinilpotent".into());
                }
                CaseResult::Pass
            }),
        },
    };
    Ok(routine)
}

fn strongly_regular_mask(r: &FiniteRing) -> Vec<bool> {
    (0..r.order()).map(|s| !group_scan(r, s).is_empty()).collect()
}

/// All s with: s strongly regular, q = a - s, sq = qs = 0, q in the
/// variant's radical set, and (for quasipolar/pseudopolar) s in comm^2(a).
/// Independent of the s = a^2 b construction in `polar_decomposition`.
fn decomposition_candidates(
    r: &FiniteRing,
    cache: &StructureCache,
    a: usize,
    pv: PolarVariant,
    strongly_regular: &[bool],
) -> Vec<usize> {
    let comm2 = pv.needs_bicommutant().then(|| bicommutant(r, a));
    (0..r.order())
        .filter(|&s| {
            if !strongly_regular[s] {
                return false;
            }
            let q = r.sub(a, s);
            if r.mul(s, q) != r.zero() || r.mul(q, s) != r.zero() {
                return false;
            }
            let in_radical = match pv {
                PolarVariant::PiRegular => cache.is_nilpotent(q),
                PolarVariant::Quasipolar => cache.in_qnil(q),
                PolarVariant::Pseudopolar => cache.in_j_sharp(q),
            };
            in_radical && comm2.as_ref().map_or(true, |c| c[s])
        })
        .collect()
}

/// Koliha / Koliha-Patricio / Wang-Chen equivalences: the classify flags
/// computed from the polar-style definitions must coincide with presence
/// of the matching inverse. Also checks the spectral idempotent laws and
/// comm^2 membership of the group inverse.
pub(crate) fn classify_equivalence_routine<'a>(
    ring: &'a Arc<FiniteRing>,
    cache: &'a StructureCache,
) -> Routine<'a> {
    let r = ring.as_ref();
    Routine {
        domain: r.order(),
        describe: Box::new(move |a| format!("CLASSIFY_EQUIV: a={}", r.label(a))),
        case: Box::new(move |a| {
            let p = classify(r, cache, a);
            for (name, flag, present) in [
                ("strongly_pi_regular <=> Drazin", p.strongly_pi_regular, p.drazin_invertible),
                ("quasipolar <=> generalized Drazin", p.quasipolar, p.generalized_drazin_invertible),
                ("pseudopolar <=> pseudo Drazin", p.pseudopolar, p.pseudo_drazin_invertible),
            ] {
                if flag != present {
                    return CaseResult::Fail(format!(
                        "{name} fails: {flag} vs {present}"
                    ));
                }
            }
            if let Some(g) = group_inverse(r, a) {
                if !bicommutant(r, a)[g.inverse] {
                    return CaseResult::Fail("group inverse not in comm^2(a)".into());
                }
            }
            for v in [Variant::Drazin, Variant::Pseudo, Variant::Generalized] {
                if let Some(d) = drazin(r, cache, a, v) {
                    let p_idem = d.spectral_idempotent;
                    if r.mul(p_idem, p_idem) != p_idem || !bicommutant(r, a)[p_idem] {
                        return CaseResult::Fail(format!(
                            "{} spectral idempotent is not an idempotent in comm^2(a)",
                            v.name()
                        ));
                    }
                    if !cache.is_unit(r.add(a, p_idem)) {
                        return CaseResult::Fail(format!(
                            "a + p is not a unit for the {} inverse",
                            v.name()
                        ));
                    }
                    let ap = r.mul(a, p_idem);
                    let ok = match v {
                        Variant::Drazin => cache.is_nilpotent(ap),
                        Variant::Pseudo => cache.in_j_sharp(ap),
                        Variant::Generalized => cache.in_qnil(ap),
                        Variant::Group => unreachable!(),
                    };
                    if !ok {
                        return CaseResult::Fail(format!(
                            "ap outside the {} radical set",
                            v.name()
                        ));
                    }
                }
            }
            CaseResult::Pass
        }),
    }
}

/// Finite rings are strongly pi-regular, so the three Drazin variants and
/// their radical sets coincide elementwise. This check is specific to the
/// finite backend and is kept separate from the radical chain so a future
/// non-finite backend does not inherit it.
pub(crate) fn finite_coincidence_routine<'a>(
    ring: &'a Arc<FiniteRing>,
    cache: &'a StructureCache,
) -> Routine<'a> {
    let r = ring.as_ref();
    Routine {
        domain: r.order(),
        describe: Box::new(move |a| format!("FINITE_COINCIDENCE: a={}", r.label(a))),
        case: Box::new(move |a| {
            let d = drazin(r, cache, a, Variant::Drazin);
            let pd = drazin(r, cache, a, Variant::Pseudo);
            let gd = drazin(r, cache, a, Variant::Generalized);
            let inv = |x: &Option<crate::inverses::DrazinResult>| {
                x.as_ref().map(|d| d.inverse)
            };
            if inv(&d) != inv(&pd) || inv(&d) != inv(&gd) {
                return CaseResult::Fail(
                    "the three Drazin variants disagree on a finite ring".into(),
                );
            }
            if cache.in_qnil(a) && !cache.is_nilpotent(a) {
                return CaseResult::Fail(
                    "quasinilpotent but not nilpotent on a finite ring".into(),
                );
            }
            CaseResult::Pass
        }),
    }
}
