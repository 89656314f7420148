//! The catalog of presentations by generators and relations, and the
//! verification procedure: a presented free quotient matches its target
//! family when every relation is sound under evaluation and a terminating
//! orientation has exactly as many normal forms per arity as the family has
//! elements.
//!
//! Generator symbols are named after the words they evaluate to (`g01`
//! evaluates to the word `01`), which keeps rule files and traces plain
//! ASCII.  The diassociative and triassociative presentations ship without an
//! orientation; they are verified instead by counting congruence classes of
//! trees directly, which is finite on each arity.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::families::{enumerate_by_membership, hilbert_prefix, FamilyId};
use crate::monoid::MonoidSpec;
use crate::rewrite::{
    check_measure, check_termination_bounded, count_normal_forms, rewrite_step_all, Measure,
    NodeMeasure, RewriteError, RewriteRule, RewriteSystem,
};
use crate::tree::{enumerate_trees, evaluate, EvaluationAssignment, GradedSymbol, SyntaxTree, TreeError};
use crate::word::OperadWord;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("unknown presentation `{0}`")]
    Unknown(String),
    #[error("presentation `fcat` needs the parameter k")]
    MissingK,
    #[error("presentation `{0}` takes no parameter k")]
    UnexpectedK(String),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

/// How a presentation is checked against its target family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VerificationRoute {
    /// Count normal forms of the terminating orientation.
    NormalForms,
    /// Count congruence classes of trees under the unoriented relations.
    CongruenceClosure,
}

/// A presentation: alphabet, relations, an optional terminating orientation
/// with its certificate, and the evaluation into the target family.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub name: String,
    pub alphabet: Vec<GradedSymbol>,
    pub relations: Vec<(SyntaxTree, SyntaxTree)>,
    pub orientation: RewriteSystem,
    pub certificate: Option<Measure>,
    pub assignment: EvaluationAssignment,
    pub target: FamilyId,
    pub route: VerificationRoute,
}

fn sym(name: &str, arity: usize) -> GradedSymbol {
    GradedSymbol::new(name, arity).unwrap()
}

/// `x ∘_i y` on corollas and small trees.
fn o(x: &SyntaxTree, i: usize, y: &SyntaxTree) -> SyntaxTree {
    x.graft_tree(i, y).unwrap()
}

fn assignment_for(
    spec: MonoidSpec,
    pairs: &[(&GradedSymbol, &str)],
) -> EvaluationAssignment {
    EvaluationAssignment::new(
        spec,
        pairs
            .iter()
            .map(|(g, w)| ((*g).clone(), OperadWord::parse(spec, w).unwrap()))
            .collect(),
    )
    .unwrap()
}

/// Build the named presentation.  `k` is required exactly for `fcat`.
pub fn catalog(name: &str, k: Option<u32>) -> Result<Presentation, PresentationError> {
    if name != "fcat" && k.is_some() {
        return Err(PresentationError::UnexpectedK(name.to_string()));
    }
    match name {
        "prt" => {
            let g01 = sym("g01", 2);
            Ok(Presentation {
                name: "prt".into(),
                alphabet: vec![g01.clone()],
                relations: vec![],
                orientation: RewriteSystem::new(vec![]),
                certificate: Some(Measure::WeightIncreases),
                assignment: assignment_for(MonoidSpec::AdditiveNat, &[(&g01, "01")]),
                target: FamilyId::Prt,
                route: VerificationRoute::NormalForms,
            })
        }
        "fcat" => {
            let k = k.ok_or(PresentationError::MissingK)?;
            let symbols: Vec<GradedSymbol> =
                (0..=k).map(|h| sym(&format!("g0{h}"), 2)).collect();
            let mut relations = Vec::new();
            for i in 0..=k {
                for j in 0..=(k - i) {
                    let top = SyntaxTree::corolla(&symbols[(i + j) as usize]);
                    let ai = SyntaxTree::corolla(&symbols[i as usize]);
                    let aj = SyntaxTree::corolla(&symbols[j as usize]);
                    relations.push((o(&top, 1, &ai), o(&ai, 2, &aj)));
                }
            }
            let orientation = RewriteSystem::new(
                relations
                    .iter()
                    .map(|(l, r)| RewriteRule::new(l.clone(), r.clone()).unwrap())
                    .collect(),
            );
            let spec = MonoidSpec::AdditiveNat;
            let assignment = EvaluationAssignment::new(
                spec,
                symbols
                    .iter()
                    .enumerate()
                    .map(|(h, g)| {
                        (g.clone(), OperadWord::new(spec, vec![0, h as u64]).unwrap())
                    })
                    .collect(),
            )
            .unwrap();
            Ok(Presentation {
                name: format!("fcat:{k}"),
                alphabet: symbols,
                relations,
                orientation,
                certificate: Some(Measure::WeightIncreases),
                assignment,
                target: FamilyId::FCat(k),
                route: VerificationRoute::NormalForms,
            })
        }
        "schr" => {
            let a = sym("g00", 2);
            let b = sym("g01", 2);
            let c = sym("g10", 2);
            let (ca, cb, cc) = (
                SyntaxTree::corolla(&a),
                SyntaxTree::corolla(&b),
                SyntaxTree::corolla(&c),
            );
            let relations = vec![
                (o(&ca, 1, &ca), o(&ca, 2, &ca)),
                (o(&cb, 1, &cc), o(&cc, 2, &cb)),
                (o(&ca, 1, &cb), o(&ca, 2, &cc)),
                (o(&cb, 1, &ca), o(&ca, 2, &cb)),
                (o(&ca, 1, &cc), o(&cc, 2, &ca)),
                (o(&cb, 1, &cb), o(&cb, 2, &ca)),
                (o(&cc, 1, &ca), o(&cc, 2, &cc)),
            ];
            // All relations are oriented left-to-right except the last,
            // whose proof orients it the other way.
            let mut rules: Vec<RewriteRule> = relations[..6]
                .iter()
                .map(|(l, r)| RewriteRule::new(l.clone(), r.clone()).unwrap())
                .collect();
            rules.push(RewriteRule::new(o(&cc, 2, &cc), o(&cc, 1, &ca)).unwrap());
            Ok(Presentation {
                name: "schr".into(),
                alphabet: vec![a.clone(), b.clone(), c.clone()],
                relations,
                orientation: RewriteSystem::new(rules),
                certificate: Some(Measure::LexPair {
                    primary: NodeMeasure::LabelCount(a.clone()),
                    secondary: Box::new(Measure::WeightIncreases),
                }),
                assignment: assignment_for(
                    MonoidSpec::AdditiveNat,
                    &[(&a, "00"), (&b, "01"), (&c, "10")],
                ),
                target: FamilyId::Schr,
                route: VerificationRoute::NormalForms,
            })
        }
        "motz" => {
            let a = sym("g00", 2);
            let b = sym("g010", 3);
            let (ca, cb) = (SyntaxTree::corolla(&a), SyntaxTree::corolla(&b));
            let relations = vec![
                (o(&ca, 1, &ca), o(&ca, 2, &ca)),
                (o(&cb, 1, &ca), o(&ca, 2, &cb)),
                (o(&ca, 1, &cb), o(&cb, 3, &ca)),
                (o(&cb, 1, &cb), o(&cb, 3, &cb)),
            ];
            let orientation = RewriteSystem::new(
                relations
                    .iter()
                    .map(|(l, r)| RewriteRule::new(l.clone(), r.clone()).unwrap())
                    .collect(),
            );
            Ok(Presentation {
                name: "motz".into(),
                alphabet: vec![a.clone(), b.clone()],
                relations,
                orientation,
                certificate: Some(Measure::WeightIncreases),
                assignment: assignment_for(
                    MonoidSpec::AdditiveNat,
                    &[(&a, "00"), (&b, "010")],
                ),
                target: FamilyId::Motz,
                route: VerificationRoute::NormalForms,
            })
        }
        "comp" => {
            let a = sym("g00", 2);
            let b = sym("g01", 2);
            let (ca, cb) = (SyntaxTree::corolla(&a), SyntaxTree::corolla(&b));
            let relations = vec![
                (o(&ca, 1, &ca), o(&ca, 2, &ca)),
                (o(&cb, 1, &ca), o(&ca, 2, &cb)),
                (o(&cb, 1, &cb), o(&cb, 2, &ca)),
                (o(&ca, 1, &cb), o(&cb, 2, &cb)),
            ];
            let orientation = RewriteSystem::new(
                relations
                    .iter()
                    .map(|(l, r)| RewriteRule::new(l.clone(), r.clone()).unwrap())
                    .collect(),
            );
            Ok(Presentation {
                name: "comp".into(),
                alphabet: vec![a.clone(), b.clone()],
                relations,
                orientation,
                certificate: Some(Measure::WeightIncreases),
                assignment: assignment_for(
                    MonoidSpec::CyclicNat(2),
                    &[(&a, "00"), (&b, "01")],
                ),
                target: FamilyId::Comp,
                route: VerificationRoute::NormalForms,
            })
        }
        "da" => {
            let a = sym("g00", 2);
            let b = sym("g01", 2);
            let (ca, cb) = (SyntaxTree::corolla(&a), SyntaxTree::corolla(&b));
            let cubic_l = o(&o(&ca, 1, &cb), 2, &cb); // g00(g01(L,g01(L,L)),L)
            let cubic_r = o(&o(&cb, 2, &cb), 3, &cb); // g01(L,g01(L,g01(L,L)))
            let relations = vec![
                (o(&ca, 1, &ca), o(&ca, 2, &ca)),
                (o(&cb, 1, &ca), o(&ca, 2, &cb)),
                (o(&cb, 1, &cb), o(&cb, 2, &ca)),
                (cubic_l.clone(), cubic_r.clone()),
            ];
            // The proof orients the third and fourth relations right-to-left.
            let rules = vec![
                RewriteRule::new(relations[0].0.clone(), relations[0].1.clone()).unwrap(),
                RewriteRule::new(relations[1].0.clone(), relations[1].1.clone()).unwrap(),
                RewriteRule::new(relations[2].1.clone(), relations[2].0.clone()).unwrap(),
                RewriteRule::new(cubic_r, cubic_l).unwrap(),
            ];
            Ok(Presentation {
                name: "da".into(),
                alphabet: vec![a.clone(), b.clone()],
                relations,
                orientation: RewriteSystem::new(rules),
                certificate: Some(Measure::LexPair {
                    primary: NodeMeasure::NegRightSubtreeInternalSum(b.clone()),
                    secondary: Box::new(Measure::WeightIncreases),
                }),
                assignment: assignment_for(
                    MonoidSpec::CyclicNat(3),
                    &[(&a, "00"), (&b, "01")],
                ),
                target: FamilyId::Da,
                route: VerificationRoute::NormalForms,
            })
        }
        "scomp" => {
            let s = sym("g00", 2);
            let a = sym("g01", 2);
            let b = sym("g02", 2);
            let (cs, ca, cb) = (
                SyntaxTree::corolla(&s),
                SyntaxTree::corolla(&a),
                SyntaxTree::corolla(&b),
            );
            let relations = vec![
                (o(&cs, 1, &cs), o(&cs, 2, &cs)),
                (o(&ca, 1, &cs), o(&cs, 2, &ca)),
                (o(&ca, 1, &ca), o(&ca, 2, &cs)),
                (o(&cs, 1, &ca), o(&ca, 2, &cb)),
                (o(&ca, 1, &cb), o(&cb, 2, &cb)),
                (o(&cs, 1, &cb), o(&cb, 2, &ca)),
                (o(&cb, 1, &cs), o(&cs, 2, &cb)),
                (o(&cb, 1, &ca), o(&ca, 2, &ca)),
                (o(&cb, 1, &cb), o(&cb, 2, &cs)),
            ];
            let orientation = RewriteSystem::new(
                relations
                    .iter()
                    .map(|(l, r)| RewriteRule::new(l.clone(), r.clone()).unwrap())
                    .collect(),
            );
            Ok(Presentation {
                name: "scomp".into(),
                alphabet: vec![s.clone(), a.clone(), b.clone()],
                relations,
                orientation,
                certificate: Some(Measure::WeightIncreases),
                assignment: assignment_for(
                    MonoidSpec::CyclicNat(3),
                    &[(&s, "00"), (&a, "01"), (&b, "02")],
                ),
                target: FamilyId::SComp,
                route: VerificationRoute::NormalForms,
            })
        }
        "dias" => {
            let l = sym("g10", 2);
            let r = sym("g01", 2);
            let (cl, cr) = (SyntaxTree::corolla(&l), SyntaxTree::corolla(&r));
            // Three-way chains stored as pairwise links.
            let relations = vec![
                (o(&cl, 1, &cl), o(&cl, 2, &cl)),
                (o(&cl, 2, &cl), o(&cl, 2, &cr)),
                (o(&cr, 2, &cr), o(&cr, 1, &cr)),
                (o(&cr, 1, &cr), o(&cr, 1, &cl)),
                (o(&cl, 1, &cr), o(&cr, 2, &cl)),
            ];
            Ok(Presentation {
                name: "dias".into(),
                alphabet: vec![l.clone(), r.clone()],
                relations,
                orientation: RewriteSystem::new(vec![]),
                certificate: None,
                assignment: assignment_for(
                    MonoidSpec::MultiplicativeNat,
                    &[(&l, "10"), (&r, "01")],
                ),
                target: FamilyId::Di,
                route: VerificationRoute::CongruenceClosure,
            })
        }
        "trias" => {
            let l = sym("g10", 2);
            let r = sym("g01", 2);
            let p = sym("g11", 2);
            let (cl, cr, cp) = (
                SyntaxTree::corolla(&l),
                SyntaxTree::corolla(&r),
                SyntaxTree::corolla(&p),
            );
            let relations = vec![
                (o(&cl, 1, &cr), o(&cr, 2, &cl)),
                (o(&cp, 1, &cp), o(&cp, 2, &cp)),
                (o(&cl, 1, &cp), o(&cp, 2, &cl)),
                (o(&cp, 1, &cl), o(&cp, 2, &cr)),
                (o(&cp, 1, &cr), o(&cr, 2, &cp)),
                (o(&cl, 1, &cl), o(&cl, 2, &cl)),
                (o(&cl, 2, &cl), o(&cl, 2, &cr)),
                (o(&cl, 2, &cr), o(&cl, 2, &cp)),
                (o(&cr, 2, &cr), o(&cr, 1, &cr)),
                (o(&cr, 1, &cr), o(&cr, 1, &cl)),
                (o(&cr, 1, &cl), o(&cr, 1, &cp)),
            ];
            Ok(Presentation {
                name: "trias".into(),
                alphabet: vec![l.clone(), r.clone(), p.clone()],
                relations,
                orientation: RewriteSystem::new(vec![]),
                certificate: None,
                assignment: assignment_for(
                    MonoidSpec::MultiplicativeNat,
                    &[(&l, "10"), (&r, "01"), (&p, "11")],
                ),
                target: FamilyId::Tr,
                route: VerificationRoute::CongruenceClosure,
            })
        }
        other => Err(PresentationError::Unknown(other.to_string())),
    }
}

pub const CATALOG_NAMES: &[&str] = &[
    "prt", "fcat", "schr", "motz", "comp", "da", "scomp", "dias", "trias",
];

#[derive(Debug, Clone)]
pub struct SoundnessOutcome {
    pub sound: bool,
    /// Index and rendered sides of the first failing relation.
    pub failing: Option<(usize, String, String)>,
}

/// Evaluate both sides of every relation in the target word operad.
pub fn check_relation_soundness(p: &Presentation) -> Result<SoundnessOutcome, PresentationError> {
    check_soundness_with(p, &p.assignment)
}

/// As [`check_relation_soundness`] with an explicit assignment, so variant
/// assignments can be compared.
pub fn check_soundness_with(
    p: &Presentation,
    assignment: &EvaluationAssignment,
) -> Result<SoundnessOutcome, PresentationError> {
    for (idx, (lhs, rhs)) in p.relations.iter().enumerate() {
        let lv = evaluate(lhs, assignment)?;
        let rv = evaluate(rhs, assignment)?;
        if lv != rv {
            return Ok(SoundnessOutcome {
                sound: false,
                failing: Some((idx, format!("{lhs} = {lv}"), format!("{rhs} = {rv}"))),
            });
        }
    }
    Ok(SoundnessOutcome {
        sound: true,
        failing: None,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ArityCount {
    pub n: usize,
    pub presented: u64,
    pub dimension: u64,
    pub matches: bool,
}

/// The full verification report for one presentation.
#[derive(Debug, Clone, Serialize)]
pub struct PresentationReport {
    pub name: String,
    pub target: String,
    pub route: VerificationRoute,
    pub soundness: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_relation: Option<String>,
    /// `None` when the presentation has no orientation to check.
    pub termination_bounded: Option<bool>,
    pub measure_certified: Option<bool>,
    pub counts: Vec<ArityCount>,
    pub max_arity: usize,
}

impl PresentationReport {
    pub fn verified(&self) -> bool {
        self.soundness
            && self.termination_bounded.unwrap_or(true)
            && self.measure_certified.unwrap_or(true)
            && self.counts.iter().all(|c| c.matches)
    }
}

/// Run soundness, bounded termination, the measure certificate, and the
/// per-arity count comparison against the target family.
pub fn verify_presentation(
    p: &Presentation,
    max_arity: usize,
) -> Result<PresentationReport, PresentationError> {
    let soundness = check_relation_soundness(p)?;
    let (termination, measure) = match p.route {
        VerificationRoute::NormalForms => {
            let term = check_termination_bounded(&p.alphabet, &p.orientation, max_arity)?;
            let meas = match &p.certificate {
                Some(cert) => Some(
                    check_measure(&p.alphabet, &p.orientation, cert, max_arity)?.holds,
                ),
                None => None,
            };
            (Some(term.terminating), meas)
        }
        VerificationRoute::CongruenceClosure => (None, None),
    };
    let presented: Vec<u64> = match p.route {
        VerificationRoute::NormalForms => {
            count_normal_forms(&p.alphabet, &p.orientation, max_arity)?
        }
        VerificationRoute::CongruenceClosure => congruence_class_counts(p, max_arity)?,
    };
    let dims = hilbert_prefix(p.target, max_arity);
    let counts = (1..=max_arity)
        .map(|n| ArityCount {
            n,
            presented: presented[n - 1],
            dimension: dims[n - 1],
            matches: presented[n - 1] == dims[n - 1],
        })
        .collect();
    Ok(PresentationReport {
        name: p.name.clone(),
        target: p.target.to_string(),
        route: p.route,
        soundness: soundness.sound,
        failing_relation: soundness.failing.map(|(i, l, r)| format!("#{i}: {l} vs {r}")),
        termination_bounded: termination,
        measure_certified: measure,
        counts,
        max_arity,
    })
}

/// Number of equivalence classes of trees per arity under the congruence
/// generated by the relations (applied at any node, in both directions).
pub fn congruence_class_counts(
    p: &Presentation,
    max_arity: usize,
) -> Result<Vec<u64>, PresentationError> {
    let mut both = Vec::new();
    for (l, r) in &p.relations {
        both.push(RewriteRule::new(l.clone(), r.clone())?);
        both.push(RewriteRule::new(r.clone(), l.clone())?);
    }
    let sys = RewriteSystem::new(both);
    let mut counts = Vec::new();
    for n in 1..=max_arity {
        let trees = enumerate_trees(&p.alphabet, n)?;
        let index: HashMap<SyntaxTree, usize> = trees
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        let mut parent: Vec<usize> = (0..trees.len()).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for (i, tree) in trees.iter().enumerate() {
            for next in rewrite_step_all(tree, &sys) {
                let j = index[&next];
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let classes = (0..trees.len())
            .filter(|&i| find(&mut parent, i) == i)
            .count();
        counts.push(classes as u64);
    }
    Ok(counts)
}

/// Verification of the diassociative and triassociative realizations:
/// relation soundness under the generator assignments plus dimension
/// equality (`n` and `2^n - 1`) of the word families.
#[derive(Debug, Clone, Serialize)]
pub struct IsoOutcome {
    pub name: String,
    pub soundness: bool,
    pub dims_ok: bool,
    pub dims: Vec<u64>,
}

pub fn check_isomorphism_dias_trias(
    max_arity: usize,
) -> Result<(IsoOutcome, IsoOutcome), PresentationError> {
    let mut out = Vec::new();
    for name in ["dias", "trias"] {
        let p = catalog(name, None)?;
        let soundness = check_relation_soundness(&p)?.sound;
        let dims = enumerate_by_membership(p.target, max_arity, None).counts();
        let expected: Vec<u64> = (1..=max_arity as u64)
            .map(|n| match p.target {
                FamilyId::Di => n,
                _ => (1 << n) - 1,
            })
            .collect();
        out.push(IsoOutcome {
            name: name.to_string(),
            soundness,
            dims_ok: dims == expected,
            dims,
        });
    }
    let trias = out.pop().unwrap();
    let dias = out.pop().unwrap();
    Ok((dias, trias))
}

/// Dropping the degree-3 relation from the directed-animal presentation must
/// strictly inflate the normal-form count somewhere at or below `max_arity`.
pub fn da_cubic_relation_is_necessary(max_arity: usize) -> Result<bool, PresentationError> {
    let p = catalog("da", None)?;
    let quadratic_only = RewriteSystem::new(p.orientation.rules()[..3].to_vec());
    let full = count_normal_forms(&p.alphabet, &p.orientation, max_arity)?;
    let dropped = count_normal_forms(&p.alphabet, &quadratic_only, max_arity)?;
    Ok(full
        .iter()
        .zip(&dropped)
        .all(|(f, d)| d >= f)
        && full.iter().zip(&dropped).any(|(f, d)| d > f))
}

/// No two distinct degree-2 trees over the planar-rooted-tree generator
/// evaluate to the same word, so the family satisfies no quadratic relation.
pub fn prt_has_no_quadratic_relation() -> Result<bool, PresentationError> {
    let p = catalog("prt", None)?;
    let trees = enumerate_trees(&p.alphabet, 3)?;
    let mut seen = std::collections::BTreeSet::new();
    for t in &trees {
        if t.internal_count() == 2 && !seen.insert(evaluate(t, &p.assignment)?) {
            return Ok(false);
        }
    }
    Ok(true)
}
