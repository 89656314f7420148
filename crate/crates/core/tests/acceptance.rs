//! Acceptance suite: one test per gate criterion, each printing its own
//! pass/fail line (visible with `cargo test --test acceptance -- --nocapture`).

use word_operads::axioms;
use word_operads::bijections as bij;
use word_operads::families::{
    enumerate_by_membership, generate_by_arity, hilbert_prefix, per_partial_graft, FamilyId,
    PerGraftOutcome,
};
use word_operads::monoid::MonoidSpec;
use word_operads::presentations::{
    catalog, check_isomorphism_dias_trias, da_cubic_relation_is_necessary, verify_presentation,
};
use word_operads::word::OperadWord;

struct Gate {
    label: &'static str,
    failures: Vec<String>,
}

impl Gate {
    fn new(label: &'static str) -> Self {
        Gate {
            label,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(detail());
        }
    }

    fn finish(self) {
        if self.failures.is_empty() {
            println!("{}: PASS", self.label);
        } else {
            println!("{}: FAIL ({})", self.label, self.failures.join("; "));
            panic!("{}: {:?}", self.label, self.failures);
        }
    }
}

fn word(family: FamilyId, s: &str) -> OperadWord {
    OperadWord::parse(family.monoid_spec(), s).unwrap()
}

#[test]
fn criterion_01_dimension_tables() {
    let mut gate = Gate::new("criterion 01 dimension-tables");
    let started = std::time::Instant::now();
    let rows: &[(FamilyId, &[u64])] = &[
        (FamilyId::End, &[1, 4, 27, 256, 3125]),
        (FamilyId::Pf, &[1, 3, 16, 125, 1296]),
        (FamilyId::Pw, &[1, 3, 13, 75, 541]),
        (FamilyId::Per, &[1, 2, 6, 24, 120]),
        (FamilyId::Prt, &[1, 1, 2, 5, 14, 42]),
        (FamilyId::Schr, &[1, 3, 11, 45, 197]),
        (FamilyId::Motz, &[1, 1, 2, 4, 9, 21, 51]),
        (FamilyId::Comp, &[1, 2, 4, 8, 16, 32]),
        (FamilyId::Da, &[1, 2, 5, 13, 35, 96]),
        (FamilyId::Di, &[1, 2, 3, 4, 5]),
        (FamilyId::Tr, &[1, 3, 7, 15, 31]),
        // Segmented compositions number 3^(n-1).
        (FamilyId::SComp, &[1, 3, 9, 27, 81]),
    ];
    for (family, expected) in rows {
        let counts = enumerate_by_membership(*family, expected.len(), None).counts();
        gate.check(counts == *expected, || {
            format!("{family}: got {counts:?}, expected {expected:?}")
        });
    }
    let elapsed = started.elapsed();
    gate.check(elapsed.as_secs() < 60, || {
        format!("enumeration took {elapsed:?}, budget is 60s")
    });
    gate.finish();
}

#[test]
fn criterion_02_fuss_catalan() {
    let mut gate = Gate::new("criterion 02 fuss-catalan");
    for k in 0..=3u32 {
        let counts = enumerate_by_membership(FamilyId::FCat(k), 7, None).counts();
        let formula: Vec<u64> = (1..=7u64)
            .map(|n| {
                let kk = k as u64;
                let binom = |n: u64, r: u64| -> u64 {
                    let r = r.min(n - r);
                    let mut acc: u128 = 1;
                    for j in 0..r {
                        acc = acc * (n - j) as u128 / (j + 1) as u128;
                    }
                    acc as u64
                };
                binom(kk * n + n, n) / (kk * n + 1)
            })
            .collect();
        gate.check(counts == formula, || {
            format!("fcat:{k}: got {counts:?}, formula {formula:?}")
        });
    }
    gate.finish();
}

#[test]
fn criterion_03_presentations_verified() {
    let mut gate = Gate::new("criterion 03 presentations");
    let cases: &[(&str, Option<u32>)] = &[
        ("fcat", Some(0)),
        ("fcat", Some(1)),
        ("fcat", Some(2)),
        ("fcat", Some(3)),
        ("schr", None),
        ("motz", None),
        ("comp", None),
        ("da", None),
        ("scomp", None),
    ];
    for (name, k) in cases {
        let p = catalog(name, *k).unwrap();
        let report = verify_presentation(&p, 7).unwrap();
        gate.check(report.soundness, || format!("{}: relations unsound", p.name));
        gate.check(report.termination_bounded == Some(true), || {
            format!("{}: rewrite graph has a cycle within 7 leaves", p.name)
        });
        gate.check(report.measure_certified == Some(true), || {
            format!("{}: measure certificate fails", p.name)
        });
        for c in &report.counts {
            gate.check(c.matches, || {
                format!(
                    "{}: arity {} normal forms {} != dimension {}",
                    p.name, c.n, c.presented, c.dimension
                )
            });
        }
    }
    gate.finish();
}

#[test]
fn criterion_04_da_not_quadratic() {
    let mut gate = Gate::new("criterion 04 da-cubic-necessary");
    gate.check(da_cubic_relation_is_necessary(5).unwrap(), || {
        "dropping the cubic relation does not change normal-form counts".into()
    });
    gate.finish();
}

#[test]
fn criterion_05_dias_trias() {
    let mut gate = Gate::new("criterion 05 dias-trias");
    let (dias, trias) = check_isomorphism_dias_trias(7).unwrap();
    for outcome in [&dias, &trias] {
        gate.check(outcome.soundness, || format!("{}: relations unsound", outcome.name));
        gate.check(outcome.dims_ok, || {
            format!("{}: dimensions {:?}", outcome.name, outcome.dims)
        });
    }
    gate.check(dias.dims == [1, 2, 3, 4, 5, 6, 7], || format!("{:?}", dias.dims));
    gate.check(trias.dims == [1, 3, 7, 15, 31, 63, 127], || {
        format!("{:?}", trias.dims)
    });
    gate.finish();
}

#[test]
fn criterion_06_operad_axioms() {
    let mut gate = Gate::new("criterion 06 operad-axioms");
    // Exhaustive sweep: additive words, letters <= 2, arities <= 3.
    let exhaustive = axioms::exhaustive_suite(MonoidSpec::AdditiveNat, 3, 2);
    for law in &exhaustive.laws {
        gate.check(law.passed(), || {
            format!("exhaustive {}: {:?}", law.law, law.failure)
        });
        gate.check(law.cases > 0, || format!("exhaustive {} ran no cases", law.law));
    }
    // 10,000 seeded random cases per ground monoid.
    for spec in [
        MonoidSpec::AdditiveNat,
        MonoidSpec::CyclicNat(3),
        MonoidSpec::MultiplicativeNat,
    ] {
        let random = axioms::random_suite(spec, 0x5EED, 10_000);
        for law in &random.laws {
            gate.check(law.passed(), || {
                format!("random {spec} {}: {:?}", law.law, law.failure)
            });
        }
    }
    gate.finish();
}

#[test]
fn criterion_07_bijection_round_trips() {
    let mut gate = Gate::new("criterion 07 bijections");

    // Worked instances drawn from the six figure fixtures.
    let prt_word = word(FamilyId::Prt, "0112333212");
    let prt_tree = bij::phi_prt(&prt_word).unwrap();
    gate.check(prt_tree.size() == 10 && bij::phi_prt_inv(&prt_tree) == prt_word, || {
        "planar-rooted-tree fixture".into()
    });

    let fcat_word = word(FamilyId::FCat(2), "024021121");
    let fcat_tree = bij::phi_fcat(2, &fcat_word).unwrap();
    gate.check(
        fcat_tree.size() == 9 && bij::phi_fcat_inv(2, &fcat_tree).unwrap() == fcat_word,
        || "2-leafy-tree fixture".into(),
    );

    let schr_word = word(FamilyId::Schr, "1132002122");
    let schr_tree = bij::phi_schr(&schr_word).unwrap();
    gate.check(
        schr_tree.leaf_count() == 11 && bij::phi_schr_inv(&schr_tree).unwrap() == schr_word,
        || "Schröder-tree fixture".into(),
    );

    let motz_word = word(FamilyId::Motz, "001123221010");
    let motz_path = bij::phi_motz(&motz_word).unwrap();
    gate.check(
        motz_path.steps() == [0, 1, 0, 1, 1, -1, 0, -1, -1, 1, -1]
            && bij::phi_motz_inv(&motz_path) == motz_word,
        || "Motzkin fixture".into(),
    );

    let comp_word = word(FamilyId::Comp, "0100001011011010");
    let ribbon = bij::phi_comp(&comp_word).unwrap();
    gate.check(
        ribbon.columns() == [2, 1, 1, 1, 2, 3, 3, 2, 1] && bij::phi_comp_inv(&ribbon) == comp_word,
        || "ribbon fixture".into(),
    );

    let scomp_word = word(FamilyId::SComp, "0102012210");
    let seg = bij::phi_scomp(&scomp_word).unwrap();
    let cols: Vec<Vec<u64>> = seg.segments.iter().map(|d| d.columns().to_vec()).collect();
    gate.check(
        cols == [vec![1, 1], vec![2], vec![1, 3, 1], vec![1]]
            && bij::phi_scomp_inv(&seg).unwrap() == scomp_word,
        || "segmented-composition fixture".into(),
    );

    // Exhaustive round trips at the module arities.
    let mut round_trip = |family: FamilyId, max_n: usize, go: &dyn Fn(&OperadWord) -> OperadWord| {
        for n in 1..=max_n {
            for x in enumerate_by_membership(family, n, None).level(n) {
                if &go(x) != x {
                    gate.failures.push(format!("{family} round trip fails at {x}"));
                    return;
                }
            }
        }
    };
    round_trip(FamilyId::Prt, 7, &|x| {
        bij::phi_prt_inv(&bij::phi_prt(x).unwrap())
    });
    for k in 1..=2u32 {
        round_trip(FamilyId::FCat(k), 6, &move |x| {
            bij::phi_fcat_inv(k, &bij::phi_fcat(k, x).unwrap()).unwrap()
        });
    }
    round_trip(FamilyId::Schr, 6, &|x| {
        bij::phi_schr_inv(&bij::phi_schr(x).unwrap()).unwrap()
    });
    round_trip(FamilyId::Motz, 9, &|x| {
        bij::phi_motz_inv(&bij::phi_motz(x).unwrap())
    });
    round_trip(FamilyId::Comp, 8, &|x| {
        bij::phi_comp_inv(&bij::phi_comp(x).unwrap())
    });
    round_trip(FamilyId::Da, 8, &|x| bij::phi_da_inv(&bij::phi_da(x).unwrap()));
    round_trip(FamilyId::SComp, 7, &|x| {
        bij::phi_scomp_inv(&bij::phi_scomp(x).unwrap()).unwrap()
    });

    // Image counts agree with the Hilbert prefixes (the maps are onto).
    use std::collections::BTreeSet;
    for (family, max_n) in [
        (FamilyId::Prt, 7),
        (FamilyId::Motz, 9),
        (FamilyId::Comp, 8),
        (FamilyId::Da, 8),
        (FamilyId::SComp, 7),
    ] {
        for n in 1..=max_n {
            let images: BTreeSet<String> = enumerate_by_membership(family, n, None)
                .level(n)
                .iter()
                .map(|x| match family {
                    FamilyId::Prt => bij::phi_prt(x).unwrap().to_json().to_string(),
                    FamilyId::Motz => bij::phi_motz(x).unwrap().to_json().to_string(),
                    FamilyId::Comp => bij::phi_comp(x).unwrap().to_json().to_string(),
                    FamilyId::Da => bij::phi_da(x).unwrap().to_json().to_string(),
                    _ => bij::phi_scomp(x).unwrap().to_json().to_string(),
                })
                .collect();
            let dim = hilbert_prefix(family, n)[n - 1] as usize;
            gate.check(images.len() == dim, || {
                format!("{family} images at arity {n}: {} != {dim}", images.len())
            });
        }
    }

    gate.finish();
}

#[test]
fn criterion_08_graft_commutation() {
    let mut gate = Gate::new("criterion 08 graft-commutation");

    // Planar rooted trees.
    'prt: for p in 1..=4usize {
        for q in 1..=4usize {
            for x in enumerate_by_membership(FamilyId::Prt, p, None).level(p) {
                for y in enumerate_by_membership(FamilyId::Prt, q, None).level(q) {
                    for i in 1..=p {
                        let words = bij::phi_prt(&x.graft(i, y).unwrap()).unwrap();
                        let trees =
                            bij::prt_graft(&bij::phi_prt(x).unwrap(), i, &bij::phi_prt(y).unwrap())
                                .unwrap();
                        if words != trees {
                            gate.failures.push(format!("prt {x} ∘_{i} {y}"));
                            break 'prt;
                        }
                    }
                }
            }
        }
    }

    // k-leafy trees, k <= 2.
    'fcat: for k in 1..=2u32 {
        let f = FamilyId::FCat(k);
        for p in 1..=4usize {
            for q in 1..=4usize {
                for x in enumerate_by_membership(f, p, None).level(p) {
                    for y in enumerate_by_membership(f, q, None).level(q) {
                        for i in 1..=p {
                            let words = bij::phi_fcat(k, &x.graft(i, y).unwrap()).unwrap();
                            let trees = bij::kleafy_graft(
                                k,
                                &bij::phi_fcat(k, x).unwrap(),
                                i,
                                &bij::phi_fcat(k, y).unwrap(),
                            )
                            .unwrap();
                            if words != trees {
                                gate.failures.push(format!("fcat:{k} {x} ∘_{i} {y}"));
                                break 'fcat;
                            }
                        }
                    }
                }
            }
        }
    }

    // Motzkin paths.
    'motz: for p in 1..=4usize {
        for q in 1..=4usize {
            for x in enumerate_by_membership(FamilyId::Motz, p, None).level(p) {
                for y in enumerate_by_membership(FamilyId::Motz, q, None).level(q) {
                    for i in 1..=p {
                        let words = bij::phi_motz(&x.graft(i, y).unwrap()).unwrap();
                        let paths = bij::motzkin_graft(
                            &bij::phi_motz(x).unwrap(),
                            i,
                            &bij::phi_motz(y).unwrap(),
                        )
                        .unwrap();
                        if words != paths {
                            gate.failures.push(format!("motz {x} ∘_{i} {y}"));
                            break 'motz;
                        }
                    }
                }
            }
        }
    }

    // Ribbon diagrams, including both figure cases (top box and non-top box).
    'comp: for p in 1..=4usize {
        for q in 1..=4usize {
            for x in enumerate_by_membership(FamilyId::Comp, p, None).level(p) {
                for y in enumerate_by_membership(FamilyId::Comp, q, None).level(q) {
                    for i in 1..=p {
                        let words = bij::phi_comp(&x.graft(i, y).unwrap()).unwrap();
                        let ribbons = bij::ribbon_graft(
                            &bij::phi_comp(x).unwrap(),
                            i,
                            &bij::phi_comp(y).unwrap(),
                        )
                        .unwrap();
                        if words != ribbons {
                            gate.failures.push(format!("comp {x} ∘_{i} {y}"));
                            break 'comp;
                        }
                    }
                }
            }
        }
    }
    let c = bij::RibbonDiagram::new(vec![2, 1, 3, 2, 1]).unwrap();
    let d = bij::RibbonDiagram::new(vec![1, 1, 2, 3, 1]).unwrap();
    gate.check(
        bij::ribbon_graft(&c, 4, &d).unwrap()
            == bij::RibbonDiagram::new(vec![2, 1, 1, 1, 2, 3, 3, 2, 1]).unwrap(),
        || "ribbon graft in a top box".into(),
    );
    gate.check(
        bij::ribbon_graft(&c, 5, &d).unwrap()
            == bij::RibbonDiagram::new(vec![2, 1, 4, 2, 1, 3, 2, 1]).unwrap(),
        || "ribbon graft in a non-top box".into(),
    );

    gate.finish();
}

#[test]
fn criterion_09_per_quotient() {
    let mut gate = Gate::new("criterion 09 per-quotient");
    let x = word(FamilyId::Per, "20431");
    let y = word(FamilyId::Per, "102");
    gate.check(
        per_partial_graft(&x, 1, &y).unwrap() == PerGraftOutcome::Zero,
        || "graft at a non-maximal letter should be zero".into(),
    );
    gate.check(
        per_partial_graft(&x, 3, &y).unwrap()
            == PerGraftOutcome::Word(word(FamilyId::Per, "2054631")),
        || "graft at the maximal letter".into(),
    );
    // Ideal closure: a repeated letter survives any graft on either side,
    // exhaustively up to arity 5.
    let has_repeat = |x: &OperadWord| {
        let mut seen = std::collections::BTreeSet::new();
        x.letters().iter().any(|v| !seen.insert(*v))
    };
    for p in 1..=4usize {
        for q in 1..=(6 - p).min(4) {
            for x in enumerate_by_membership(FamilyId::Pw, p, None).level(p) {
                for y in enumerate_by_membership(FamilyId::Pw, q, None).level(q) {
                    if !has_repeat(y) {
                        continue;
                    }
                    for i in 1..=p {
                        gate.check(has_repeat(&x.graft(i, y).unwrap()), || {
                            format!("{x} ∘_{i} {y} lost its repeat")
                        });
                    }
                    for j in 1..=q {
                        gate.check(has_repeat(&y.graft(j, x).unwrap()), || {
                            format!("{y} ∘_{j} {x} lost its repeat")
                        });
                    }
                }
            }
        }
    }
    gate.finish();
}

#[test]
fn criterion_10_generation_equals_characterization() {
    let mut gate = Gate::new("criterion 10 generation");
    let families = [
        FamilyId::Pw,
        FamilyId::Prt,
        FamilyId::FCat(0),
        FamilyId::FCat(1),
        FamilyId::FCat(2),
        FamilyId::FCat(3),
        FamilyId::Schr,
        FamilyId::Motz,
        FamilyId::Comp,
        FamilyId::Da,
        FamilyId::SComp,
        FamilyId::Di,
        FamilyId::Tr,
    ];
    for family in families {
        let generated = generate_by_arity(family, 7).unwrap();
        let characterized = enumerate_by_membership(family, 7, None);
        for n in 1..=7 {
            gate.check(generated.level(n) == characterized.level(n), || {
                format!(
                    "{family} at arity {n}: generated {} vs characterized {}",
                    generated.level(n).len(),
                    characterized.level(n).len()
                )
            });
        }
    }
    gate.finish();
}
