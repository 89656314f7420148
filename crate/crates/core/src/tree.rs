//! Syntax trees over a graded alphabet: the elements of free operads.
//!
//! A tree is either a leaf or an internal node carrying a [`GradedSymbol`]
//! whose arity fixes the number of children.  The arity of a tree is its leaf
//! count, its degree the internal-node count.  Leaves and internal nodes are
//! addressed by 1-based depth-first indices; the same addressing is used by
//! the rewrite engine.
//!
//! Term syntax for I/O: `name(child,…)` with `L` for a leaf, for example
//! `g01(L,g00(L,L))`.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::monoid::MonoidSpec;
use crate::word::{OperadWord, WordError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("symbol arity must be at least 1")]
    ZeroArity,
    #[error("symbol {symbol} expects {expected} children, found {found}")]
    ChildCount {
        symbol: String,
        expected: usize,
        found: usize,
    },
    #[error("leaf position {i} out of range 1..={leaves}")]
    LeafOutOfRange { i: usize, leaves: usize },
    #[error("internal node position {i} out of range 1..={nodes}")]
    NodeOutOfRange { i: usize, nodes: usize },
    #[error("no word assigned to symbol {0}")]
    Unassigned(String),
    #[error("assignment for {symbol} has arity {word_arity}, symbol has arity {symbol_arity}")]
    AssignmentArity {
        symbol: String,
        word_arity: usize,
        symbol_arity: usize,
    },
    #[error("cannot parse tree term `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error("tree enumeration requires every symbol arity >= 2, found {symbol} of arity 1")]
    UnaryEnumeration { symbol: String },
    #[error(transparent)]
    Word(#[from] WordError),
}

/// An alphabet symbol with a fixed arity.  Two symbols are the same exactly
/// when both name and arity agree, so one display name may be reused at
/// several arities.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradedSymbol {
    name: String,
    arity: usize,
}

impl GradedSymbol {
    pub fn new(name: impl Into<String>, arity: usize) -> Result<Self, TreeError> {
        if arity == 0 {
            return Err(TreeError::ZeroArity);
        }
        Ok(GradedSymbol {
            name: name.into(),
            arity,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }
}

impl fmt::Display for GradedSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

/// A syntax tree: a leaf, or a node labelled by a symbol with exactly
/// `arity` children.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SyntaxTree {
    Leaf,
    Node {
        symbol: GradedSymbol,
        children: Vec<SyntaxTree>,
    },
}

impl SyntaxTree {
    pub fn node(symbol: GradedSymbol, children: Vec<SyntaxTree>) -> Result<Self, TreeError> {
        if children.len() != symbol.arity() {
            return Err(TreeError::ChildCount {
                symbol: symbol.name().to_string(),
                expected: symbol.arity(),
                found: children.len(),
            });
        }
        Ok(SyntaxTree::Node { symbol, children })
    }

    /// The corolla of a symbol: one internal node, all children leaves.
    pub fn corolla(symbol: &GradedSymbol) -> Self {
        SyntaxTree::Node {
            symbol: symbol.clone(),
            children: vec![SyntaxTree::Leaf; symbol.arity()],
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, SyntaxTree::Leaf)
    }

    /// Leaf count; the arity of the tree as an operation.
    pub fn leaf_count(&self) -> usize {
        match self {
            SyntaxTree::Leaf => 1,
            SyntaxTree::Node { children, .. } => children.iter().map(Self::leaf_count).sum(),
        }
    }

    /// Internal-node count; the degree of the tree.
    pub fn internal_count(&self) -> usize {
        match self {
            SyntaxTree::Leaf => 0,
            SyntaxTree::Node { children, .. } => {
                1 + children.iter().map(Self::internal_count).sum::<usize>()
            }
        }
    }

    /// Sum over internal nodes of the internal-node count of their rightmost
    /// subtree.
    pub fn weight(&self) -> usize {
        match self {
            SyntaxTree::Leaf => 0,
            SyntaxTree::Node { children, .. } => {
                let here = children.last().map_or(0, Self::internal_count);
                here + children.iter().map(Self::weight).sum::<usize>()
            }
        }
    }

    /// Graft `other` onto the `i`-th leaf (1-based, depth-first order).
    pub fn graft_tree(&self, i: usize, other: &SyntaxTree) -> Result<SyntaxTree, TreeError> {
        let leaves = self.leaf_count();
        if i == 0 || i > leaves {
            return Err(TreeError::LeafOutOfRange { i, leaves });
        }
        fn go(t: &SyntaxTree, target: usize, counter: &mut usize, y: &SyntaxTree) -> SyntaxTree {
            match t {
                SyntaxTree::Leaf => {
                    *counter += 1;
                    if *counter == target {
                        y.clone()
                    } else {
                        SyntaxTree::Leaf
                    }
                }
                SyntaxTree::Node { symbol, children } => SyntaxTree::Node {
                    symbol: symbol.clone(),
                    children: children
                        .iter()
                        .map(|c| go(c, target, counter, y))
                        .collect(),
                },
            }
        }
        let mut counter = 0;
        Ok(go(self, i, &mut counter, other))
    }

    /// Does `pattern` match at the root?  A pattern leaf matches any subtree;
    /// internal nodes must agree in symbol (name and arity) and match
    /// recursively.
    pub fn admits_occurrence_at_root(&self, pattern: &SyntaxTree) -> bool {
        match pattern {
            SyntaxTree::Leaf => true,
            SyntaxTree::Node { symbol, children } => match self {
                SyntaxTree::Leaf => false,
                SyntaxTree::Node {
                    symbol: s,
                    children: cs,
                } => s == symbol && cs.iter().zip(children).all(|(c, p)| c.admits_occurrence_at_root(p)),
            },
        }
    }

    /// 1-based depth-first indices of the internal nodes where `pattern`
    /// occurs.  Overlapping occurrences are all reported.
    pub fn find_occurrences(&self, pattern: &SyntaxTree) -> Vec<usize> {
        let mut found = Vec::new();
        let mut idx = 0;
        fn walk(t: &SyntaxTree, pattern: &SyntaxTree, idx: &mut usize, found: &mut Vec<usize>) {
            if let SyntaxTree::Node { children, .. } = t {
                *idx += 1;
                if t.admits_occurrence_at_root(pattern) {
                    found.push(*idx);
                }
                for c in children {
                    walk(c, pattern, idx, found);
                }
            }
        }
        walk(self, pattern, &mut idx, &mut found);
        found
    }

    /// The subtree rooted at the `i`-th internal node (1-based, depth-first).
    pub fn subtree_at(&self, i: usize) -> Result<&SyntaxTree, TreeError> {
        fn walk<'a>(t: &'a SyntaxTree, target: usize, idx: &mut usize) -> Option<&'a SyntaxTree> {
            if let SyntaxTree::Node { children, .. } = t {
                *idx += 1;
                if *idx == target {
                    return Some(t);
                }
                for c in children {
                    if let Some(hit) = walk(c, target, idx) {
                        return Some(hit);
                    }
                }
            }
            None
        }
        let mut idx = 0;
        walk(self, i, &mut idx).ok_or(TreeError::NodeOutOfRange {
            i,
            nodes: self.internal_count(),
        })
    }

    /// Rebuild the tree with the subtree at internal node `i` replaced by the
    /// result of `f`.
    pub fn replace_at(
        &self,
        i: usize,
        replacement: &SyntaxTree,
    ) -> Result<SyntaxTree, TreeError> {
        fn walk(
            t: &SyntaxTree,
            target: usize,
            idx: &mut usize,
            replacement: &SyntaxTree,
        ) -> SyntaxTree {
            match t {
                SyntaxTree::Leaf => SyntaxTree::Leaf,
                SyntaxTree::Node { symbol, children } => {
                    *idx += 1;
                    if *idx == target {
                        return replacement.clone();
                    }
                    // Children before the target still advance the counter,
                    // so recurse even once the target has been passed.
                    SyntaxTree::Node {
                        symbol: symbol.clone(),
                        children: children
                            .iter()
                            .map(|c| walk(c, target, idx, replacement))
                            .collect(),
                    }
                }
            }
        }
        let nodes = self.internal_count();
        if i == 0 || i > nodes {
            return Err(TreeError::NodeOutOfRange { i, nodes });
        }
        let mut idx = 0;
        Ok(walk(self, i, &mut idx, replacement))
    }

    /// The subtrees hanging below a root occurrence of `pattern`, in the
    /// depth-first order of the pattern's leaves.
    pub fn bind_occurrence(&self, pattern: &SyntaxTree) -> Option<Vec<SyntaxTree>> {
        let mut bound = Vec::new();
        fn walk(t: &SyntaxTree, pattern: &SyntaxTree, bound: &mut Vec<SyntaxTree>) -> bool {
            match pattern {
                SyntaxTree::Leaf => {
                    bound.push(t.clone());
                    true
                }
                SyntaxTree::Node { symbol, children } => match t {
                    SyntaxTree::Leaf => false,
                    SyntaxTree::Node {
                        symbol: s,
                        children: cs,
                    } => {
                        s == symbol
                            && cs
                                .iter()
                                .zip(children)
                                .all(|(c, p)| walk(c, p, bound))
                    }
                },
            }
        }
        if walk(self, pattern, &mut bound) {
            Some(bound)
        } else {
            None
        }
    }

    /// Instantiate a pattern: graft `subtrees[j]` onto the `j`-th leaf.
    pub fn instantiate(&self, subtrees: &[SyntaxTree]) -> Result<SyntaxTree, TreeError> {
        if subtrees.len() != self.leaf_count() {
            return Err(TreeError::LeafOutOfRange {
                i: subtrees.len(),
                leaves: self.leaf_count(),
            });
        }
        fn go(t: &SyntaxTree, subtrees: &[SyntaxTree], next: &mut usize) -> SyntaxTree {
            match t {
                SyntaxTree::Leaf => {
                    let s = subtrees[*next].clone();
                    *next += 1;
                    s
                }
                SyntaxTree::Node { symbol, children } => SyntaxTree::Node {
                    symbol: symbol.clone(),
                    children: children.iter().map(|c| go(c, subtrees, next)).collect(),
                },
            }
        }
        let mut next = 0;
        Ok(go(self, subtrees, &mut next))
    }

    /// Every symbol occurring in the tree.
    pub fn symbols(&self) -> Vec<GradedSymbol> {
        let mut out = Vec::new();
        fn walk(t: &SyntaxTree, out: &mut Vec<GradedSymbol>) {
            if let SyntaxTree::Node { symbol, children } = t {
                if !out.contains(symbol) {
                    out.push(symbol.clone());
                }
                for c in children {
                    walk(c, out);
                }
            }
        }
        walk(self, &mut out);
        out
    }

    /// Parse the term syntax, inferring each symbol's arity from its child
    /// count.  `L` is the leaf.
    pub fn parse(input: &str) -> Result<SyntaxTree, TreeError> {
        let err = |reason: &str| TreeError::Parse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let chars: Vec<char> = input.chars().filter(|c| !c.is_whitespace()).collect();
        fn parse_term(
            chars: &[char],
            pos: &mut usize,
            input: &str,
        ) -> Result<SyntaxTree, TreeError> {
            let fail = |reason: String| TreeError::Parse {
                input: input.to_string(),
                reason,
            };
            let start = *pos;
            while *pos < chars.len()
                && (chars[*pos].is_alphanumeric() || chars[*pos] == '_')
            {
                *pos += 1;
            }
            if start == *pos {
                return Err(fail(format!("expected a symbol at offset {start}")));
            }
            let name: String = chars[start..*pos].iter().collect();
            if *pos >= chars.len() || chars[*pos] != '(' {
                return if name == "L" {
                    Ok(SyntaxTree::Leaf)
                } else {
                    Err(fail(format!("symbol `{name}` must be followed by `(`")))
                };
            }
            if name == "L" {
                return Err(fail("`L` is the leaf and takes no children".into()));
            }
            *pos += 1; // consume '('
            let mut children = Vec::new();
            loop {
                children.push(parse_term(chars, pos, input)?);
                if *pos >= chars.len() {
                    return Err(fail("unterminated `(`".into()));
                }
                match chars[*pos] {
                    ',' => *pos += 1,
                    ')' => {
                        *pos += 1;
                        break;
                    }
                    c => return Err(fail(format!("unexpected `{c}`"))),
                }
            }
            SyntaxTree::node(GradedSymbol::new(name, children.len())?, children)
        }
        let mut pos = 0;
        let tree = parse_term(&chars, &mut pos, input)?;
        if pos != chars.len() {
            return Err(err("trailing input"));
        }
        Ok(tree)
    }
}

impl fmt::Display for SyntaxTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SyntaxTree::Leaf => write!(f, "L"),
            SyntaxTree::Node { symbol, children } => {
                write!(f, "{}(", symbol.name())?;
                for (k, c) in children.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl Serialize for SyntaxTree {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            SyntaxTree::Leaf => serializer.serialize_none(),
            SyntaxTree::Node { symbol, children } => {
                let mut s = serializer.serialize_struct("node", 2)?;
                s.serialize_field("sym", symbol.name())?;
                s.serialize_field("children", children)?;
                s.end()
            }
        }
    }
}

/// A map from alphabet symbols to words of the same arity, the data of an
/// evaluation into a word operad.
#[derive(Debug, Clone)]
pub struct EvaluationAssignment {
    spec: MonoidSpec,
    map: BTreeMap<GradedSymbol, OperadWord>,
}

impl EvaluationAssignment {
    pub fn new(
        spec: MonoidSpec,
        pairs: Vec<(GradedSymbol, OperadWord)>,
    ) -> Result<Self, TreeError> {
        let mut map = BTreeMap::new();
        for (symbol, word) in pairs {
            if word.arity() != symbol.arity() {
                return Err(TreeError::AssignmentArity {
                    symbol: symbol.name().to_string(),
                    word_arity: word.arity(),
                    symbol_arity: symbol.arity(),
                });
            }
            if word.spec() != spec {
                return Err(TreeError::Word(WordError::SpecMismatch {
                    expected: spec,
                    found: word.spec(),
                }));
            }
            map.insert(symbol, word);
        }
        Ok(EvaluationAssignment { spec, map })
    }

    pub fn spec(&self) -> MonoidSpec {
        self.spec
    }

    pub fn get(&self, symbol: &GradedSymbol) -> Option<&OperadWord> {
        self.map.get(symbol)
    }
}

/// Evaluate a tree in the word operad: leaves become the unit and each node
/// completely grafts its children's values into its assigned word.
pub fn evaluate(tree: &SyntaxTree, assignment: &EvaluationAssignment) -> Result<OperadWord, TreeError> {
    match tree {
        SyntaxTree::Leaf => Ok(OperadWord::unit(assignment.spec())),
        SyntaxTree::Node { symbol, children } => {
            let word = assignment
                .get(symbol)
                .ok_or_else(|| TreeError::Unassigned(symbol.name().to_string()))?;
            let args: Vec<OperadWord> = children
                .iter()
                .map(|c| evaluate(c, assignment))
                .collect::<Result<_, _>>()?;
            Ok(word.complete_graft(&args)?)
        }
    }
}

/// All syntax trees over `alphabet` with exactly `n_leaves` leaves, in a
/// deterministic order (by leaf count decomposition, then symbol, then
/// children).  Symbols of arity 1 are rejected: they would make the set
/// infinite.
pub fn enumerate_trees(
    alphabet: &[GradedSymbol],
    n_leaves: usize,
) -> Result<Vec<SyntaxTree>, TreeError> {
    for s in alphabet {
        if s.arity() < 2 {
            return Err(TreeError::UnaryEnumeration {
                symbol: s.name().to_string(),
            });
        }
    }
    let mut memo: Vec<Vec<SyntaxTree>> = vec![vec![], vec![SyntaxTree::Leaf]];
    for n in 2..=n_leaves {
        let mut level = Vec::new();
        for symbol in alphabet {
            let k = symbol.arity();
            if k > n {
                continue;
            }
            let mut parts = Vec::new();
            compositions(n, k, &mut vec![], &mut parts);
            for comp in &parts {
                let mut children_sets: Vec<&[SyntaxTree]> =
                    comp.iter().map(|&p| memo[p].as_slice()).collect();
                cartesian(&mut children_sets, &mut |kids| {
                    level.push(SyntaxTree::Node {
                        symbol: symbol.clone(),
                        children: kids.to_vec(),
                    });
                });
            }
        }
        memo.push(level);
    }
    Ok(memo.swap_remove(n_leaves.min(memo.len() - 1)))
}

/// All ordered ways to write `n` as `k` positive parts.
pub(crate) fn compositions(n: usize, k: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if k == 1 {
        if n >= 1 {
            prefix.push(n);
            out.push(prefix.clone());
            prefix.pop();
        }
        return;
    }
    for first in 1..=(n.saturating_sub(k - 1)) {
        prefix.push(first);
        compositions(n - first, k - 1, prefix, out);
        prefix.pop();
    }
}

fn cartesian(sets: &mut [&[SyntaxTree]], f: &mut impl FnMut(&[SyntaxTree])) {
    fn go(sets: &[&[SyntaxTree]], acc: &mut Vec<SyntaxTree>, f: &mut impl FnMut(&[SyntaxTree])) {
        if acc.len() == sets.len() {
            f(acc);
            return;
        }
        let idx = acc.len();
        for item in sets[idx] {
            acc.push(item.clone());
            go(sets, acc, f);
            acc.pop();
        }
    }
    go(sets, &mut Vec::new(), f);
}
