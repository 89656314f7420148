//! Rewrite rules on syntax trees, normal-form enumeration, and bounded
//! termination checking.
//!
//! A rule `lhs ↦ rhs` requires `lhs` and `rhs` to have the same leaf count;
//! pattern leaves are wildcards, bound in depth-first order, so rewriting a
//! tree never changes its leaf count (its degree may change).  Rewriting is
//! therefore confined, for each leaf count, to a finite graph, which is what
//! makes the bounded termination and measure checks exhaustive.
//!
//! Termination certificates follow the proofs they check: the measures
//! strictly *increase* along every rewriting while staying bounded on each
//! fixed leaf count, which forbids infinite chains just as well as a
//! decreasing order would.

use std::collections::HashMap;

use thiserror::Error;

use crate::tree::{GradedSymbol, SyntaxTree, TreeError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RewriteError {
    #[error("rule sides must have equal leaf counts ({lhs} vs {rhs})")]
    LeafCountMismatch { lhs: usize, rhs: usize },
    #[error("rule left-hand side must contain an internal node")]
    LeafLhs,
    #[error("step cap {0} exceeded; the system may not terminate")]
    StepCapExceeded(usize),
    #[error("cannot parse rule line `{0}` (expected `lhs -> rhs`)")]
    ParseRule(String),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// An oriented rule on syntax trees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteRule {
    lhs: SyntaxTree,
    rhs: SyntaxTree,
}

impl RewriteRule {
    pub fn new(lhs: SyntaxTree, rhs: SyntaxTree) -> Result<Self, RewriteError> {
        if lhs.is_leaf() {
            return Err(RewriteError::LeafLhs);
        }
        if lhs.leaf_count() != rhs.leaf_count() {
            return Err(RewriteError::LeafCountMismatch {
                lhs: lhs.leaf_count(),
                rhs: rhs.leaf_count(),
            });
        }
        Ok(RewriteRule { lhs, rhs })
    }

    pub fn lhs(&self) -> &SyntaxTree {
        &self.lhs
    }

    pub fn rhs(&self) -> &SyntaxTree {
        &self.rhs
    }
}

/// An ordered list of rules over one alphabet.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RewriteSystem {
    rules: Vec<RewriteRule>,
}

impl RewriteSystem {
    pub fn new(rules: Vec<RewriteRule>) -> Self {
        RewriteSystem { rules }
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// The symbols appearing in the rules.
    pub fn alphabet(&self) -> Vec<GradedSymbol> {
        let mut out: Vec<GradedSymbol> = Vec::new();
        for rule in &self.rules {
            for s in rule.lhs.symbols().into_iter().chain(rule.rhs.symbols()) {
                if !out.contains(&s) {
                    out.push(s);
                }
            }
        }
        out
    }

    /// Parse a rule file: one `lhs -> rhs` per line, `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, RewriteError> {
        let mut rules = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (lhs, rhs) = line
                .split_once("->")
                .ok_or_else(|| RewriteError::ParseRule(line.to_string()))?;
            rules.push(RewriteRule::new(
                SyntaxTree::parse(lhs.trim())?,
                SyntaxTree::parse(rhs.trim())?,
            )?);
        }
        Ok(RewriteSystem::new(rules))
    }
}

impl std::fmt::Display for RewriteSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for rule in &self.rules {
            writeln!(f, "{} -> {}", rule.lhs, rule.rhs)?;
        }
        Ok(())
    }
}

/// Apply `rule` at internal node `idx` if its left-hand side occurs there.
fn apply_at(tree: &SyntaxTree, idx: usize, rule: &RewriteRule) -> Option<SyntaxTree> {
    let sub = tree.subtree_at(idx).ok()?;
    let bound = sub.bind_occurrence(&rule.lhs)?;
    let replacement = rule.rhs.instantiate(&bound).ok()?;
    tree.replace_at(idx, &replacement).ok()
}

/// Every tree reachable in exactly one rewriting step: any rule, any
/// occurrence.  Empty exactly when `tree` is a normal form.
pub fn rewrite_step_all(tree: &SyntaxTree, sys: &RewriteSystem) -> Vec<SyntaxTree> {
    let mut out = Vec::new();
    let nodes = tree.internal_count();
    for idx in 1..=nodes {
        for rule in sys.rules() {
            if let Some(next) = apply_at(tree, idx, rule) {
                debug_assert_eq!(next.leaf_count(), tree.leaf_count());
                out.push(next);
            }
        }
    }
    out
}

pub fn is_normal_form(tree: &SyntaxTree, sys: &RewriteSystem) -> bool {
    sys.rules()
        .iter()
        .all(|rule| tree.find_occurrences(&rule.lhs).is_empty())
}

/// Rewrite to a normal form with the deterministic strategy: smallest
/// depth-first node index first, then first matching rule in declaration
/// order.  Fails if `step_cap` steps do not reach a normal form.
pub fn normalize(
    tree: &SyntaxTree,
    sys: &RewriteSystem,
    step_cap: usize,
) -> Result<(SyntaxTree, usize), RewriteError> {
    let trace = normalize_trace(tree, sys, step_cap)?;
    let steps = trace.len() - 1;
    Ok((trace.into_iter().last().unwrap(), steps))
}

/// As [`normalize`], returning the whole chain including the start tree.
pub fn normalize_trace(
    tree: &SyntaxTree,
    sys: &RewriteSystem,
    step_cap: usize,
) -> Result<Vec<SyntaxTree>, RewriteError> {
    let mut trace = vec![tree.clone()];
    'outer: for _ in 0..step_cap {
        let current = trace.last().unwrap();
        let nodes = current.internal_count();
        for idx in 1..=nodes {
            for rule in sys.rules() {
                if let Some(next) = apply_at(current, idx, rule) {
                    trace.push(next);
                    continue 'outer;
                }
            }
        }
        return Ok(trace);
    }
    if is_normal_form(trace.last().unwrap(), sys) {
        return Ok(trace);
    }
    Err(RewriteError::StepCapExceeded(step_cap))
}

pub const DEFAULT_STEP_CAP: usize = 10_000;

// --- compact tree codes -----------------------------------------------------
//
// 0x00 is a leaf, `i + 1` the i-th alphabet symbol, children following in
// preorder.  Used as hash keys when whole rewrite graphs are explored.

struct TreeCoder {
    alphabet: Vec<GradedSymbol>,
}

impl TreeCoder {
    fn new(alphabet: &[GradedSymbol]) -> Self {
        TreeCoder {
            alphabet: alphabet.to_vec(),
        }
    }

    fn encode(&self, tree: &SyntaxTree) -> Vec<u8> {
        let mut out = Vec::with_capacity(8);
        self.encode_into(tree, &mut out);
        out
    }

    fn encode_into(&self, tree: &SyntaxTree, out: &mut Vec<u8>) {
        match tree {
            SyntaxTree::Leaf => out.push(0),
            SyntaxTree::Node { symbol, children } => {
                let idx = self
                    .alphabet
                    .iter()
                    .position(|s| s == symbol)
                    .expect("symbol outside coder alphabet");
                out.push(idx as u8 + 1);
                for c in children {
                    self.encode_into(c, out);
                }
            }
        }
    }

    fn decode(&self, code: &[u8]) -> SyntaxTree {
        let mut pos = 0;
        let t = self.decode_at(code, &mut pos);
        debug_assert_eq!(pos, code.len());
        t
    }

    fn decode_at(&self, code: &[u8], pos: &mut usize) -> SyntaxTree {
        let byte = code[*pos];
        *pos += 1;
        if byte == 0 {
            return SyntaxTree::Leaf;
        }
        let symbol = self.alphabet[(byte - 1) as usize].clone();
        let children = (0..symbol.arity())
            .map(|_| self.decode_at(code, pos))
            .collect();
        SyntaxTree::Node { symbol, children }
    }

    /// Codes of every tree with exactly `n` leaves, smallest leaf counts
    /// memoized along the way.
    fn codes_by_leaves(&self, n: usize) -> Result<Vec<Vec<Vec<u8>>>, TreeError> {
        for s in &self.alphabet {
            if s.arity() < 2 {
                return Err(TreeError::UnaryEnumeration {
                    symbol: s.name().to_string(),
                });
            }
        }
        let mut memo: Vec<Vec<Vec<u8>>> = vec![vec![], vec![vec![0u8]]];
        for size in 2..=n {
            let mut level: Vec<Vec<u8>> = Vec::new();
            for (s_idx, symbol) in self.alphabet.iter().enumerate() {
                let k = symbol.arity();
                if k > size {
                    continue;
                }
                let mut parts = Vec::new();
                crate::tree::compositions(size, k, &mut vec![], &mut parts);
                for comp in &parts {
                    let mut prefix = vec![s_idx as u8 + 1];
                    fn expand(
                        memo: &[Vec<Vec<u8>>],
                        comp: &[usize],
                        slot: usize,
                        prefix: &mut Vec<u8>,
                        out: &mut Vec<Vec<u8>>,
                    ) {
                        if slot == comp.len() {
                            out.push(prefix.clone());
                            return;
                        }
                        for child in &memo[comp[slot]] {
                            let mark = prefix.len();
                            prefix.extend_from_slice(child);
                            expand(memo, comp, slot + 1, prefix, out);
                            prefix.truncate(mark);
                        }
                    }
                    expand(&memo, comp, 0, &mut prefix, &mut level);
                }
            }
            memo.push(level);
        }
        memo.truncate(n + 1);
        Ok(memo)
    }
}

/// Normal forms with exactly `n_leaves` leaves, built recursively: a tree is
/// a normal form exactly when all children are and no left-hand side occurs
/// at the root.
pub fn enumerate_normal_forms(
    alphabet: &[GradedSymbol],
    sys: &RewriteSystem,
    n_leaves: usize,
) -> Result<Vec<SyntaxTree>, RewriteError> {
    Ok(normal_forms_by_leaves(alphabet, sys, n_leaves)?
        .pop()
        .unwrap_or_default())
}

/// Normal-form counts for every leaf count `1..=max_leaves`.
pub fn count_normal_forms(
    alphabet: &[GradedSymbol],
    sys: &RewriteSystem,
    max_leaves: usize,
) -> Result<Vec<u64>, RewriteError> {
    let levels = normal_forms_by_leaves(alphabet, sys, max_leaves)?;
    Ok(levels.iter().skip(1).map(|l| l.len() as u64).collect())
}

fn normal_forms_by_leaves(
    alphabet: &[GradedSymbol],
    sys: &RewriteSystem,
    max_leaves: usize,
) -> Result<Vec<Vec<SyntaxTree>>, RewriteError> {
    for s in alphabet {
        if s.arity() < 2 {
            return Err(RewriteError::Tree(TreeError::UnaryEnumeration {
                symbol: s.name().to_string(),
            }));
        }
    }
    let lhss: Vec<&SyntaxTree> = sys.rules().iter().map(RewriteRule::lhs).collect();
    let mut memo: Vec<Vec<SyntaxTree>> = vec![vec![], vec![SyntaxTree::Leaf]];
    for n in 2..=max_leaves {
        let mut level = Vec::new();
        for symbol in alphabet {
            let k = symbol.arity();
            if k > n {
                continue;
            }
            let mut parts = Vec::new();
            crate::tree::compositions(n, k, &mut vec![], &mut parts);
            for comp in &parts {
                let mut kids: Vec<SyntaxTree> = Vec::with_capacity(k);
                fn expand(
                    memo: &[Vec<SyntaxTree>],
                    comp: &[usize],
                    symbol: &GradedSymbol,
                    lhss: &[&SyntaxTree],
                    kids: &mut Vec<SyntaxTree>,
                    out: &mut Vec<SyntaxTree>,
                ) {
                    if kids.len() == comp.len() {
                        let candidate = SyntaxTree::Node {
                            symbol: symbol.clone(),
                            children: kids.clone(),
                        };
                        if lhss
                            .iter()
                            .all(|l| !candidate.admits_occurrence_at_root(l))
                        {
                            out.push(candidate);
                        }
                        return;
                    }
                    for child in &memo[comp[kids.len()]] {
                        kids.push(child.clone());
                        expand(memo, comp, symbol, lhss, kids, out);
                        kids.pop();
                    }
                }
                expand(&memo, comp, symbol, &lhss, &mut kids, &mut level);
            }
        }
        memo.push(level);
    }
    memo.truncate(max_leaves + 1);
    Ok(memo)
}

/// Result of exploring the full rewrite graph on every tree with at most
/// `max_leaves` leaves.
#[derive(Debug, Clone)]
pub struct TerminationOutcome {
    pub terminating: bool,
    /// A closed chain `t_0 → t_1 → … → t_0` when one exists.
    pub cycle: Option<Vec<SyntaxTree>>,
}

/// Exhaustive bounded termination: leaf count is invariant under rewriting,
/// so each leaf count induces a finite rewrite graph; the system terminates
/// on trees of at most `max_leaves` leaves exactly when all those graphs are
/// acyclic.
pub fn check_termination_bounded(
    alphabet: &[GradedSymbol],
    sys: &RewriteSystem,
    max_leaves: usize,
) -> Result<TerminationOutcome, RewriteError> {
    let coder = TreeCoder::new(alphabet);
    let levels = coder.codes_by_leaves(max_leaves)?;

    const GRAY: u8 = 1;
    const BLACK: u8 = 2;
    let mut state: HashMap<Vec<u8>, u8> = HashMap::new();

    for level in &levels {
        for start in level {
            if state.get(start) == Some(&BLACK) {
                continue;
            }
            // Iterative depth-first search with a gray/black coloring.
            struct Frame {
                code: Vec<u8>,
                succs: Vec<Vec<u8>>,
                next: usize,
            }
            let succs_of = |code: &[u8]| -> Vec<Vec<u8>> {
                let tree = coder.decode(code);
                rewrite_step_all(&tree, sys)
                    .iter()
                    .map(|t| coder.encode(t))
                    .collect()
            };
            state.insert(start.clone(), GRAY);
            let mut stack = vec![Frame {
                code: start.clone(),
                succs: succs_of(start),
                next: 0,
            }];
            while let Some(top) = stack.last_mut() {
                if top.next < top.succs.len() {
                    let succ = top.succs[top.next].clone();
                    top.next += 1;
                    match state.get(&succ) {
                        Some(&BLACK) => {}
                        Some(&GRAY) => {
                            // Reconstruct the cycle from the gray stack.
                            let from = stack
                                .iter()
                                .position(|f| f.code == succ)
                                .expect("gray node on stack");
                            let mut cycle: Vec<SyntaxTree> = stack[from..]
                                .iter()
                                .map(|f| coder.decode(&f.code))
                                .collect();
                            cycle.push(coder.decode(&succ));
                            return Ok(TerminationOutcome {
                                terminating: false,
                                cycle: Some(cycle),
                            });
                        }
                        _ => {
                            state.insert(succ.clone(), GRAY);
                            let s = succs_of(&succ);
                            stack.push(Frame {
                                code: succ,
                                succs: s,
                                next: 0,
                            });
                        }
                    }
                } else {
                    state.insert(top.code.clone(), BLACK);
                    stack.pop();
                }
            }
        }
    }
    Ok(TerminationOutcome {
        terminating: true,
        cycle: None,
    })
}

/// A per-node statistic used as the primary component of a lexicographic
/// termination measure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeMeasure {
    /// Number of internal nodes carrying the given symbol.
    LabelCount(GradedSymbol),
    /// Minus the sum, over nodes carrying the given symbol, of the
    /// internal-node count of their rightmost subtree.
    NegRightSubtreeInternalSum(GradedSymbol),
}

impl NodeMeasure {
    pub fn eval(&self, tree: &SyntaxTree) -> i64 {
        match self {
            NodeMeasure::LabelCount(g) => {
                fn count(t: &SyntaxTree, g: &GradedSymbol) -> i64 {
                    match t {
                        SyntaxTree::Leaf => 0,
                        SyntaxTree::Node { symbol, children } => {
                            (symbol == g) as i64
                                + children.iter().map(|c| count(c, g)).sum::<i64>()
                        }
                    }
                }
                count(tree, g)
            }
            NodeMeasure::NegRightSubtreeInternalSum(g) => {
                fn sum(t: &SyntaxTree, g: &GradedSymbol) -> i64 {
                    match t {
                        SyntaxTree::Leaf => 0,
                        SyntaxTree::Node { symbol, children } => {
                            let here = if symbol == g {
                                children.last().map_or(0, |c| c.internal_count() as i64)
                            } else {
                                0
                            };
                            here + children.iter().map(|c| sum(c, g)).sum::<i64>()
                        }
                    }
                }
                -sum(tree, g)
            }
        }
    }
}

/// A termination certificate: a statistic that must strictly increase (or
/// decrease) along every rewriting, possibly refined lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Measure {
    WeightIncreases,
    WeightDecreases,
    LexPair {
        primary: NodeMeasure,
        secondary: Box<Measure>,
    },
}

impl Measure {
    /// Does the measure strictly improve from `before` to `after`?
    pub fn strictly_improves(&self, before: &SyntaxTree, after: &SyntaxTree) -> bool {
        match self {
            Measure::WeightIncreases => before.weight() < after.weight(),
            Measure::WeightDecreases => before.weight() > after.weight(),
            Measure::LexPair { primary, secondary } => {
                let (p0, p1) = (primary.eval(before), primary.eval(after));
                p0 < p1 || (p0 == p1 && secondary.strictly_improves(before, after))
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct MeasureOutcome {
    pub holds: bool,
    pub counterexample: Option<(SyntaxTree, SyntaxTree)>,
}

/// Check a certificate on every rewriting edge among trees with at most
/// `max_leaves` leaves.  Together with the boundedness of the measure on
/// each fixed leaf count this certifies termination at that scale.
pub fn check_measure(
    alphabet: &[GradedSymbol],
    sys: &RewriteSystem,
    cert: &Measure,
    max_leaves: usize,
) -> Result<MeasureOutcome, RewriteError> {
    let coder = TreeCoder::new(alphabet);
    let levels = coder.codes_by_leaves(max_leaves)?;
    for level in &levels {
        for code in level {
            let tree = coder.decode(code);
            for next in rewrite_step_all(&tree, sys) {
                if !cert.strictly_improves(&tree, &next) {
                    return Ok(MeasureOutcome {
                        holds: false,
                        counterexample: Some((tree, next)),
                    });
                }
            }
        }
    }
    Ok(MeasureOutcome {
        holds: true,
        counterexample: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations;
    use crate::tree::enumerate_trees;

    fn t(s: &str) -> SyntaxTree {
        SyntaxTree::parse(s).unwrap()
    }

    fn rule(l: &str, r: &str) -> RewriteRule {
        RewriteRule::new(t(l), t(r)).unwrap()
    }

    /// The mixed-arity demonstration system: collapse a nested binary `1`
    /// into a ternary `3`, and relabel a binary `1` into a binary `2`.
    fn demo_system() -> RewriteSystem {
        RewriteSystem::new(vec![
            rule("1(1(L,L),L)", "3(L,L,L)"),
            rule("1(L,L)", "2(L,L)"),
        ])
    }

    #[test]
    fn rule_validation() {
        assert!(matches!(
            RewriteRule::new(t("a(L,L)"), t("a(L,a(L,L))")),
            Err(RewriteError::LeafCountMismatch { .. })
        ));
        assert!(matches!(
            RewriteRule::new(SyntaxTree::Leaf, SyntaxTree::Leaf),
            Err(RewriteError::LeafLhs)
        ));
    }

    #[test]
    fn demo_rewriting_chain() {
        let sys = demo_system();
        let t0 = t("1(1(1(L,L),L),1(2(L,L),3(L,L,L)))");
        let t1 = t("3(1(L,L),L,1(2(L,L),3(L,L,L)))");
        let t2 = t("3(2(L,L),L,1(2(L,L),3(L,L,L)))");
        let t3 = t("3(2(L,L),L,2(2(L,L),3(L,L,L)))");
        for (a, b) in [(&t0, &t1), (&t1, &t2), (&t2, &t3)] {
            let succs = rewrite_step_all(a, &sys);
            assert!(succs.contains(b), "{a} should rewrite to {b}");
            for s in &succs {
                assert_eq!(s.leaf_count(), a.leaf_count());
            }
        }
        // The normal form has no binary node labeled 1.
        let (nf, _) = normalize(&t0, &sys, DEFAULT_STEP_CAP).unwrap();
        assert!(is_normal_form(&nf, &sys));
        assert!(nf.find_occurrences(&t("1(L,L)")).is_empty());
        // A normal form normalizes to itself in zero steps.
        let (same, steps) = normalize(&t3, &sys, DEFAULT_STEP_CAP).unwrap();
        assert_eq!(same, t3);
        assert_eq!(steps, 0);
        assert!(rewrite_step_all(&t3, &sys).is_empty());
    }

    #[test]
    fn rewriting_whole_tree() {
        let sys = RewriteSystem::new(vec![rule("a(L,L)", "b(L,L)")]);
        let tree = t("a(L,L)");
        assert_eq!(rewrite_step_all(&tree, &sys), vec![t("b(L,L)")]);
    }

    #[test]
    fn normalize_single_step() {
        let p = presentations::catalog("fcat", Some(1)).unwrap();
        let before = t("g00(g00(L,L),L)");
        let after = t("g00(L,g00(L,L))");
        let trace = normalize_trace(&before, &p.orientation, DEFAULT_STEP_CAP).unwrap();
        assert_eq!(trace, vec![before, after]);
    }

    #[test]
    fn normal_form_counts_match_known_series() {
        let motz = presentations::catalog("motz", None).unwrap();
        assert_eq!(
            enumerate_normal_forms(&motz.alphabet, &motz.orientation, 5)
                .unwrap()
                .len(),
            9
        );
        let comp = presentations::catalog("comp", None).unwrap();
        assert_eq!(
            enumerate_normal_forms(&comp.alphabet, &comp.orientation, 4)
                .unwrap()
                .len(),
            8
        );
        let schr = presentations::catalog("schr", None).unwrap();
        assert_eq!(
            enumerate_normal_forms(&schr.alphabet, &schr.orientation, 3)
                .unwrap()
                .len(),
            11
        );
    }

    #[test]
    fn recursive_normal_forms_match_naive_filter() {
        for (name, k) in [("fcat", Some(1)), ("schr", None), ("motz", None), ("da", None)] {
            let p = presentations::catalog(name, k).unwrap();
            for n in 1..=5 {
                let fast = count_normal_forms(&p.alphabet, &p.orientation, n).unwrap()[n - 1];
                let naive = enumerate_trees(&p.alphabet, n)
                    .unwrap()
                    .into_iter()
                    .filter(|tr| is_normal_form(tr, &p.orientation))
                    .count() as u64;
                assert_eq!(fast, naive, "{name:?} at {n} leaves");
            }
        }
    }

    #[test]
    fn fcat_normal_forms_have_increasing_left_labels() {
        // In a normal form, a node's label index is smaller than the label
        // index of any internal left child.
        let p = presentations::catalog("fcat", Some(2)).unwrap();
        for tree in enumerate_normal_forms(&p.alphabet, &p.orientation, 5).unwrap() {
            fn ok(t: &SyntaxTree) -> bool {
                match t {
                    SyntaxTree::Leaf => true,
                    SyntaxTree::Node { symbol, children } => {
                        let my_idx = symbol.name().trim_start_matches("g0").to_string();
                        if let SyntaxTree::Node { symbol: left, .. } = &children[0] {
                            let left_idx = left.name().trim_start_matches("g0").to_string();
                            if left_idx <= my_idx {
                                return false;
                            }
                        }
                        children.iter().all(ok)
                    }
                }
            }
            assert!(ok(&tree), "{tree}");
        }
    }

    #[test]
    fn termination_checks() {
        let a = GradedSymbol::new("a", 2).unwrap();
        // A self-loop is caught with its witness.
        let looping = RewriteSystem::new(vec![rule("a(L,L)", "a(L,L)")]);
        let out = check_termination_bounded(std::slice::from_ref(&a), &looping, 3).unwrap();
        assert!(!out.terminating);
        let cycle = out.cycle.unwrap();
        assert!(cycle.len() >= 2);
        assert_eq!(cycle.first(), cycle.last());

        let fcat2 = presentations::catalog("fcat", Some(2)).unwrap();
        assert!(
            check_termination_bounded(&fcat2.alphabet, &fcat2.orientation, 5)
                .unwrap()
                .terminating
        );
        let da = presentations::catalog("da", None).unwrap();
        assert!(
            check_termination_bounded(&da.alphabet, &da.orientation, 6)
                .unwrap()
                .terminating
        );
        // A two-cycle via an intermediate tree.
        let swap = RewriteSystem::new(vec![rule("a(a(L,L),L)", "a(L,a(L,L))"), rule("a(L,a(L,L))", "a(a(L,L),L)")]);
        assert!(!check_termination_bounded(&[a], &swap, 3).unwrap().terminating);
    }

    #[test]
    fn measure_checks() {
        for k in 0..=2 {
            let p = presentations::catalog("fcat", Some(k)).unwrap();
            let out =
                check_measure(&p.alphabet, &p.orientation, &Measure::WeightIncreases, 5).unwrap();
            assert!(out.holds, "fcat:{k}");
        }
        let schr = presentations::catalog("schr", None).unwrap();
        let out = check_measure(
            &schr.alphabet,
            &schr.orientation,
            schr.certificate.as_ref().unwrap(),
            5,
        )
        .unwrap();
        assert!(out.holds);
        // Weight decrease alone fails on the composition system.
        let comp = presentations::catalog("comp", None).unwrap();
        let out = check_measure(
            &comp.alphabet,
            &comp.orientation,
            &Measure::WeightDecreases,
            4,
        )
        .unwrap();
        assert!(!out.holds);
        let (before, after) = out.counterexample.unwrap();
        assert!(rewrite_step_all(&before, &comp.orientation).contains(&after));
    }

    #[test]
    fn leaves_are_normal_forms() {
        let sys = demo_system();
        assert!(is_normal_form(&SyntaxTree::Leaf, &sys));
        for rule in sys.rules() {
            assert!(!is_normal_form(rule.lhs(), &sys));
        }
    }

    #[test]
    fn every_tree_reaches_a_normal_form() {
        // Under a terminating system the deterministic strategy lands on a
        // normal form from every start tree; exhaustive at small leaf counts.
        for (name, k) in [("comp", None), ("motz", None), ("da", None), ("fcat", Some(2))] {
            let p = presentations::catalog(name, k).unwrap();
            for n in 1..=5 {
                for tree in enumerate_trees(&p.alphabet, n).unwrap() {
                    let (nf, _) = normalize(&tree, &p.orientation, DEFAULT_STEP_CAP).unwrap();
                    assert!(is_normal_form(&nf, &p.orientation), "{name:?} {tree}");
                    assert_eq!(nf.leaf_count(), tree.leaf_count());
                }
            }
        }
    }

    #[test]
    fn rules_file_round_trip() {
        let sys = demo_system();
        let text = sys.to_string();
        assert_eq!(RewriteSystem::parse(&text).unwrap(), sys);
        assert!(RewriteSystem::parse("a(L,L) = b(L,L)").is_err());
    }
}
