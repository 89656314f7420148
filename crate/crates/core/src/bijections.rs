//! Bijections between the word families and classical combinatorial objects,
//! together with the object-level grafting operations that the word grafts
//! induce.
//!
//! | words   | objects                        |
//! |---------|--------------------------------|
//! | prt     | planar rooted trees            |
//! | fcat:k  | k-leafy trees                  |
//! | schr    | Schröder trees                 |
//! | motz    | Motzkin words (±1/0 steps)     |
//! | comp    | ribbon diagrams of compositions|
//! | da      | prefixes of Motzkin words      |
//! | scomp   | segmented compositions         |
//!
//! A word of arity `n` corresponds to an object of size `n`, except for
//! Schröder trees where it corresponds to a tree with `n + 1` leaves (each
//! letter of the word labels one gap between adjacent leaves).

use serde_json::{json, Value};
use thiserror::Error;

use crate::families::{FamilyError, FamilyId};
use crate::monoid::MonoidSpec;
use crate::word::{OperadWord, WordError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BijectionError {
    #[error("{word} is not a member of {family}")]
    NotAMember { family: FamilyId, word: String },
    #[error("position {i} out of range 1..={size}")]
    IndexOutOfRange { i: usize, size: usize },
    #[error("invalid {kind}: {reason}")]
    InvalidObject { kind: &'static str, reason: String },
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Word(#[from] WordError),
}

fn require_member(family: FamilyId, x: &OperadWord) -> Result<(), BijectionError> {
    if !family.member(x)? {
        return Err(BijectionError::NotAMember {
            family,
            word: x.to_string(),
        });
    }
    Ok(())
}

// --- planar rooted trees -----------------------------------------------------

/// A planar rooted tree; its size is its node count.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlanarRootedTree {
    pub children: Vec<PlanarRootedTree>,
}

impl PlanarRootedTree {
    pub fn leaf_node() -> Self {
        PlanarRootedTree { children: vec![] }
    }

    pub fn size(&self) -> usize {
        1 + self.children.iter().map(Self::size).sum::<usize>()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.children.iter().map(Self::to_json).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self, BijectionError> {
        let arr = v.as_array().ok_or_else(|| BijectionError::InvalidObject {
            kind: "planar rooted tree",
            reason: "expected nested arrays".into(),
        })?;
        Ok(PlanarRootedTree {
            children: arr.iter().map(Self::from_json).collect::<Result<_, _>>()?,
        })
    }
}

/// Word to planar rooted tree: the word lists node depths in depth-first
/// order, so children are the blocks opened by each occurrence of
/// `depth + 1`.
pub fn phi_prt(x: &OperadWord) -> Result<PlanarRootedTree, BijectionError> {
    require_member(FamilyId::Prt, x)?;
    fn build(letters: &[u64], depth: u64) -> PlanarRootedTree {
        debug_assert_eq!(letters[0], depth);
        let mut children = Vec::new();
        let mut start = 1;
        for j in 1..=letters.len() {
            if j == letters.len() || (j > start && letters[j] == depth + 1) {
                if start < j {
                    children.push(build(&letters[start..j], depth + 1));
                }
                start = j;
            }
        }
        PlanarRootedTree { children }
    }
    Ok(build(x.letters(), 0))
}

/// Planar rooted tree to word: read node depths in depth-first order.
pub fn phi_prt_inv(t: &PlanarRootedTree) -> OperadWord {
    fn read(t: &PlanarRootedTree, depth: u64, out: &mut Vec<u64>) {
        out.push(depth);
        for c in &t.children {
            read(c, depth + 1, out);
        }
    }
    let mut out = Vec::with_capacity(t.size());
    read(t, 0, &mut out);
    OperadWord::new(MonoidSpec::AdditiveNat, out).unwrap()
}

/// Graft on planar rooted trees: the `i`-th node (depth-first) is replaced by
/// the root of `t`, and its children are appended as rightmost children of
/// that root.
pub fn prt_graft(
    s: &PlanarRootedTree,
    i: usize,
    t: &PlanarRootedTree,
) -> Result<PlanarRootedTree, BijectionError> {
    let size = s.size();
    if i == 0 || i > size {
        return Err(BijectionError::IndexOutOfRange { i, size });
    }
    fn go(s: &PlanarRootedTree, target: usize, counter: &mut usize, t: &PlanarRootedTree) -> PlanarRootedTree {
        *counter += 1;
        if *counter == target {
            let mut children = t.children.clone();
            children.extend(s.children.iter().cloned());
            return PlanarRootedTree { children };
        }
        PlanarRootedTree {
            children: s
                .children
                .iter()
                .map(|c| go(c, target, counter, t))
                .collect(),
        }
    }
    let mut counter = 0;
    Ok(go(s, i, &mut counter, t))
}

// --- k-leafy trees -----------------------------------------------------------

/// A planar rooted tree whose internal nodes all have exactly `k + 1`
/// children; its size is its internal-node count.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum KLeafyTree {
    Leaf,
    Node(Vec<KLeafyTree>),
}

impl KLeafyTree {
    pub fn size(&self) -> usize {
        match self {
            KLeafyTree::Leaf => 0,
            KLeafyTree::Node(children) => {
                1 + children.iter().map(Self::size).sum::<usize>()
            }
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            KLeafyTree::Leaf => 1,
            KLeafyTree::Node(children) => children.iter().map(Self::leaf_count).sum(),
        }
    }

    fn validate(&self, k: u32) -> Result<(), BijectionError> {
        match self {
            KLeafyTree::Leaf => Ok(()),
            KLeafyTree::Node(children) => {
                if children.len() != k as usize + 1 {
                    return Err(BijectionError::InvalidObject {
                        kind: "k-leafy tree",
                        reason: format!(
                            "internal node has {} children, expected {}",
                            children.len(),
                            k + 1
                        ),
                    });
                }
                children.iter().try_for_each(|c| c.validate(k))
            }
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            KLeafyTree::Leaf => Value::Null,
            KLeafyTree::Node(children) => {
                Value::Array(children.iter().map(Self::to_json).collect())
            }
        }
    }

    pub fn from_json(v: &Value) -> Result<Self, BijectionError> {
        match v {
            Value::Null => Ok(KLeafyTree::Leaf),
            Value::Array(arr) => Ok(KLeafyTree::Node(
                arr.iter().map(Self::from_json).collect::<Result<_, _>>()?,
            )),
            _ => Err(BijectionError::InvalidObject {
                kind: "k-leafy tree",
                reason: "expected nested arrays with null leaves".into(),
            }),
        }
    }
}

/// The well-labelling of a k-leafy tree is forced by its shape: the root is
/// labelled 0 and the children of a node labelled `a` are labelled
/// `a+k, …, a+1, a` from left to right.  A word maps to the unique tree
/// whose depth-first internal labels read back the word, each letter
/// attaching as deep as possible along the right spine.
pub fn phi_fcat(k: u32, x: &OperadWord) -> Result<KLeafyTree, BijectionError> {
    require_member(FamilyId::FCat(k), x)?;
    let letters = x.letters();
    // Parse children of a node labelled `label`, starting at slot `slot`,
    // consuming letters from `pos`; nesting is tried before leaving a slot
    // empty, so the first complete parse attaches letters as deep as
    // possible.
    fn parse_children(
        k: u64,
        label: u64,
        slot: u64,
        letters: &[u64],
        pos: usize,
        out: &mut Vec<(Vec<KLeafyTree>, usize)>,
    ) {
        if slot == k + 1 {
            out.push((Vec::new(), pos));
            return;
        }
        let slot_label = label + k - slot;
        if pos < letters.len() && letters[pos] == slot_label {
            let mut nested = Vec::new();
            parse_children(k, slot_label, 0, letters, pos + 1, &mut nested);
            for (sub, p2) in nested {
                let mut rest = Vec::new();
                parse_children(k, label, slot + 1, letters, p2, &mut rest);
                for (mut siblings, p3) in rest {
                    siblings.insert(0, KLeafyTree::Node(sub.clone()));
                    out.push((siblings, p3));
                }
            }
        }
        let mut rest = Vec::new();
        parse_children(k, label, slot + 1, letters, pos, &mut rest);
        for (mut siblings, p3) in rest {
            siblings.insert(0, KLeafyTree::Leaf);
            out.push((siblings, p3));
        }
    }
    let mut parses = Vec::new();
    parse_children(k as u64, 0, 0, letters, 1, &mut parses);
    parses
        .into_iter()
        .find(|(_, consumed)| *consumed == letters.len())
        .map(|(children, _)| KLeafyTree::Node(children))
        .ok_or_else(|| BijectionError::InvalidObject {
            kind: "k-leafy tree",
            reason: format!("word {x} admits no well-labelled parse"),
        })
}

/// Read the forced labels of the internal nodes in depth-first order.
pub fn phi_fcat_inv(k: u32, t: &KLeafyTree) -> Result<OperadWord, BijectionError> {
    t.validate(k)?;
    if t.size() == 0 {
        return Err(BijectionError::InvalidObject {
            kind: "k-leafy tree",
            reason: "a bare leaf has no word".into(),
        });
    }
    fn read(t: &KLeafyTree, label: u64, k: u64, out: &mut Vec<u64>) {
        if let KLeafyTree::Node(children) = t {
            out.push(label);
            for (j, c) in children.iter().enumerate() {
                read(c, label + k - j as u64, k, out);
            }
        }
    }
    let mut out = Vec::new();
    read(t, 0, k as u64, &mut out);
    Ok(OperadWord::new(MonoidSpec::AdditiveNat, out).unwrap())
}

/// Graft on k-leafy trees: the `i`-th internal node of `s` is replaced by
/// `t`, and its `k + 1` children are grafted, from right to left, onto the
/// rightmost leaves of `t`.
pub fn kleafy_graft(
    k: u32,
    s: &KLeafyTree,
    i: usize,
    t: &KLeafyTree,
) -> Result<KLeafyTree, BijectionError> {
    s.validate(k)?;
    t.validate(k)?;
    let size = s.size();
    if i == 0 || i > size {
        return Err(BijectionError::IndexOutOfRange { i, size });
    }
    if t.size() == 0 {
        return Err(BijectionError::InvalidObject {
            kind: "k-leafy tree",
            reason: "cannot graft a bare leaf".into(),
        });
    }
    // Replace the last `k + 1` leaves of `t` (depth-first) by the children
    // of the grafted node, keeping their order.
    fn replace_last_leaves(
        t: &KLeafyTree,
        start: usize,
        counter: &mut usize,
        replacements: &[KLeafyTree],
    ) -> KLeafyTree {
        match t {
            KLeafyTree::Leaf => {
                let idx = *counter;
                *counter += 1;
                if idx >= start {
                    replacements[idx - start].clone()
                } else {
                    KLeafyTree::Leaf
                }
            }
            KLeafyTree::Node(children) => KLeafyTree::Node(
                children
                    .iter()
                    .map(|c| replace_last_leaves(c, start, counter, replacements))
                    .collect(),
            ),
        }
    }
    fn go(
        s: &KLeafyTree,
        target: usize,
        counter: &mut usize,
        t: &KLeafyTree,
    ) -> KLeafyTree {
        match s {
            KLeafyTree::Leaf => KLeafyTree::Leaf,
            KLeafyTree::Node(children) => {
                *counter += 1;
                if *counter == target {
                    let start = t.leaf_count() - children.len();
                    let mut leaf_counter = 0;
                    return replace_last_leaves(t, start, &mut leaf_counter, children);
                }
                KLeafyTree::Node(
                    children
                        .iter()
                        .map(|c| go(c, target, counter, t))
                        .collect(),
                )
            }
        }
    }
    let mut counter = 0;
    Ok(go(s, i, &mut counter, t))
}

// --- Schröder trees ----------------------------------------------------------

/// A planar rooted tree with no unary node; its size here is its leaf count.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SchroderTree {
    Leaf,
    Node(Vec<SchroderTree>),
}

impl SchroderTree {
    pub fn leaf_count(&self) -> usize {
        match self {
            SchroderTree::Leaf => 1,
            SchroderTree::Node(children) => children.iter().map(Self::leaf_count).sum(),
        }
    }

    fn validate(&self) -> Result<(), BijectionError> {
        match self {
            SchroderTree::Leaf => Ok(()),
            SchroderTree::Node(children) => {
                if children.len() < 2 {
                    return Err(BijectionError::InvalidObject {
                        kind: "Schröder tree",
                        reason: "internal nodes need at least two children".into(),
                    });
                }
                children.iter().try_for_each(Self::validate)
            }
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            SchroderTree::Leaf => Value::Null,
            SchroderTree::Node(children) => {
                Value::Array(children.iter().map(Self::to_json).collect())
            }
        }
    }

    pub fn from_json(v: &Value) -> Result<Self, BijectionError> {
        match v {
            Value::Null => Ok(SchroderTree::Leaf),
            Value::Array(arr) => {
                let t = SchroderTree::Node(
                    arr.iter().map(Self::from_json).collect::<Result<_, _>>()?,
                );
                t.validate()?;
                Ok(t)
            }
            _ => Err(BijectionError::InvalidObject {
                kind: "Schröder tree",
                reason: "expected nested arrays with null leaves".into(),
            }),
        }
    }
}

/// Word to Schröder tree: split at every occurrence of the smallest letter;
/// the blocks (possibly empty) become the subtrees, empty blocks becoming
/// leaves.  An arity-`n` word yields a tree with `n + 1` leaves.
pub fn phi_schr(x: &OperadWord) -> Result<SchroderTree, BijectionError> {
    require_member(FamilyId::Schr, x)?;
    fn build(letters: &[u64]) -> SchroderTree {
        if letters.is_empty() {
            return SchroderTree::Leaf;
        }
        let min = *letters.iter().min().unwrap();
        let mut children = Vec::new();
        let mut start = 0;
        for (j, &v) in letters.iter().enumerate() {
            if v == min {
                children.push(build(&letters[start..j]));
                start = j + 1;
            }
        }
        children.push(build(&letters[start..]));
        SchroderTree::Node(children)
    }
    Ok(build(x.letters()))
}

/// Schröder tree to word: between each pair of adjacent children of a node
/// write the node's depth, reading the whole tree left to right.
pub fn phi_schr_inv(t: &SchroderTree) -> Result<OperadWord, BijectionError> {
    t.validate()?;
    fn read(t: &SchroderTree, depth: u64, out: &mut Vec<u64>) {
        if let SchroderTree::Node(children) = t {
            for (j, c) in children.iter().enumerate() {
                if j > 0 {
                    out.push(depth);
                }
                read(c, depth + 1, out);
            }
        }
    }
    let mut out = Vec::new();
    read(t, 0, &mut out);
    if out.is_empty() {
        return Err(BijectionError::InvalidObject {
            kind: "Schröder tree",
            reason: "a bare leaf has no word".into(),
        });
    }
    Ok(OperadWord::new(MonoidSpec::AdditiveNat, out).unwrap())
}

// --- Motzkin words -----------------------------------------------------------

/// A sequence of steps in `{-1, 0, +1}` with nonnegative prefix sums and
/// total sum zero; its size is its length plus one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MotzkinWord {
    steps: Vec<i8>,
}

impl MotzkinWord {
    pub fn new(steps: Vec<i8>) -> Result<Self, BijectionError> {
        let mut height: i64 = 0;
        for &s in &steps {
            if !(-1..=1).contains(&s) {
                return Err(BijectionError::InvalidObject {
                    kind: "Motzkin word",
                    reason: format!("step {s} outside -1..=1"),
                });
            }
            height += s as i64;
            if height < 0 {
                return Err(BijectionError::InvalidObject {
                    kind: "Motzkin word",
                    reason: "a prefix sum is negative".into(),
                });
            }
        }
        if height != 0 {
            return Err(BijectionError::InvalidObject {
                kind: "Motzkin word",
                reason: "total sum is not zero".into(),
            });
        }
        Ok(MotzkinWord { steps })
    }

    pub fn steps(&self) -> &[i8] {
        &self.steps
    }

    pub fn size(&self) -> usize {
        self.steps.len() + 1
    }

    pub fn to_json(&self) -> Value {
        json!(self.steps)
    }

    pub fn from_json(v: &Value) -> Result<Self, BijectionError> {
        let steps = int_steps(v, "Motzkin word")?;
        MotzkinWord::new(steps)
    }
}

/// A sequence of steps in `{-1, 0, +1}` with nonnegative prefix sums.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MotzkinPrefix {
    steps: Vec<i8>,
}

impl MotzkinPrefix {
    pub fn new(steps: Vec<i8>) -> Result<Self, BijectionError> {
        let mut height: i64 = 0;
        for &s in &steps {
            if !(-1..=1).contains(&s) {
                return Err(BijectionError::InvalidObject {
                    kind: "Motzkin prefix",
                    reason: format!("step {s} outside -1..=1"),
                });
            }
            height += s as i64;
            if height < 0 {
                return Err(BijectionError::InvalidObject {
                    kind: "Motzkin prefix",
                    reason: "a prefix sum is negative".into(),
                });
            }
        }
        Ok(MotzkinPrefix { steps })
    }

    pub fn steps(&self) -> &[i8] {
        &self.steps
    }

    pub fn to_json(&self) -> Value {
        json!(self.steps)
    }

    pub fn from_json(v: &Value) -> Result<Self, BijectionError> {
        MotzkinPrefix::new(int_steps(v, "Motzkin prefix")?)
    }
}

fn int_steps(v: &Value, kind: &'static str) -> Result<Vec<i8>, BijectionError> {
    v.as_array()
        .ok_or_else(|| BijectionError::InvalidObject {
            kind,
            reason: "expected an array of integers".into(),
        })?
        .iter()
        .map(|x| {
            x.as_i64()
                .and_then(|n| i8::try_from(n).ok())
                .ok_or_else(|| BijectionError::InvalidObject {
                    kind,
                    reason: format!("bad step {x}"),
                })
        })
        .collect()
}

/// Word to Motzkin word: consecutive letter differences.
pub fn phi_motz(x: &OperadWord) -> Result<MotzkinWord, BijectionError> {
    require_member(FamilyId::Motz, x)?;
    let steps = x
        .letters()
        .windows(2)
        .map(|w| (w[1] as i64 - w[0] as i64) as i8)
        .collect();
    MotzkinWord::new(steps)
}

/// Motzkin word to word: prefix sums, starting from zero.
pub fn phi_motz_inv(u: &MotzkinWord) -> OperadWord {
    let mut letters = Vec::with_capacity(u.size());
    let mut height: i64 = 0;
    letters.push(0);
    for &s in u.steps() {
        height += s as i64;
        letters.push(height as u64);
    }
    OperadWord::new(MonoidSpec::AdditiveNat, letters).unwrap()
}

/// Graft on Motzkin words: splice `v` in front of the `i`-th step of `u`
/// (after all of `u` when `i` is the size of `u`).
pub fn motzkin_graft(
    u: &MotzkinWord,
    i: usize,
    v: &MotzkinWord,
) -> Result<MotzkinWord, BijectionError> {
    let size = u.size();
    if i == 0 || i > size {
        return Err(BijectionError::IndexOutOfRange { i, size });
    }
    let mut steps = Vec::with_capacity(u.steps.len() + v.steps.len());
    steps.extend_from_slice(&u.steps[..i - 1]);
    steps.extend_from_slice(&v.steps);
    steps.extend_from_slice(&u.steps[i - 1..]);
    MotzkinWord::new(steps)
}

// --- ribbon diagrams ---------------------------------------------------------

/// The ribbon diagram of an integer composition: each part is a column of
/// boxes, each next column attached at the right of the previous column's
/// bottom box.  Boxes are numbered column by column, top to bottom.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RibbonDiagram {
    columns: Vec<u64>,
}

impl RibbonDiagram {
    pub fn new(columns: Vec<u64>) -> Result<Self, BijectionError> {
        if columns.is_empty() || columns.contains(&0) {
            return Err(BijectionError::InvalidObject {
                kind: "ribbon diagram",
                reason: "composition parts must be positive".into(),
            });
        }
        Ok(RibbonDiagram { columns })
    }

    pub fn single_box() -> Self {
        RibbonDiagram { columns: vec![1] }
    }

    pub fn columns(&self) -> &[u64] {
        &self.columns
    }

    pub fn size(&self) -> usize {
        self.columns.iter().sum::<u64>() as usize
    }

    /// The attachment direction of each box after the first: `false` is
    /// "to the right", `true` is "below".
    fn dirs(&self) -> Vec<bool> {
        let mut out = Vec::with_capacity(self.size() - 1);
        for (j, &col) in self.columns.iter().enumerate() {
            if j > 0 {
                out.push(false);
            }
            out.extend(std::iter::repeat_n(true, col as usize - 1));
        }
        out
    }

    fn from_dirs(dirs: &[bool]) -> Self {
        let mut columns = vec![1u64];
        for &below in dirs {
            if below {
                *columns.last_mut().unwrap() += 1;
            } else {
                columns.push(1);
            }
        }
        RibbonDiagram { columns }
    }

    /// Is box `i` (1-based) the top box of its column?
    pub fn is_top_box(&self, i: usize) -> Result<bool, BijectionError> {
        let size = self.size();
        if i == 0 || i > size {
            return Err(BijectionError::IndexOutOfRange { i, size });
        }
        Ok(i == 1 || !self.dirs()[i - 2])
    }

    pub fn to_json(&self) -> Value {
        json!(self.columns)
    }

    pub fn from_json(v: &Value) -> Result<Self, BijectionError> {
        let cols = v
            .as_array()
            .ok_or_else(|| BijectionError::InvalidObject {
                kind: "ribbon diagram",
                reason: "expected an array of positive integers".into(),
            })?
            .iter()
            .map(|x| {
                x.as_u64().ok_or_else(|| BijectionError::InvalidObject {
                    kind: "ribbon diagram",
                    reason: format!("bad part {x}"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        RibbonDiagram::new(cols)
    }
}

/// Word to ribbon diagram: letter 1 adds a box below, letter 0 a box to the
/// right.
pub fn phi_comp(x: &OperadWord) -> Result<RibbonDiagram, BijectionError> {
    require_member(FamilyId::Comp, x)?;
    let dirs: Vec<bool> = x.letters()[1..].iter().map(|&v| v == 1).collect();
    Ok(RibbonDiagram::from_dirs(&dirs))
}

/// Ribbon diagram to word: label each box 0 when the previous box sits to
/// its left and 1 when it sits above, the first box getting 0.
pub fn phi_comp_inv(d: &RibbonDiagram) -> OperadWord {
    let mut letters = vec![0u64];
    letters.extend(d.dirs().iter().map(|&below| below as u64));
    OperadWord::new(MonoidSpec::CyclicNat(2), letters).unwrap()
}

/// Reflection through the line of the first and last boxes; columns and rows
/// exchange, which at the word level complements every letter after the
/// first.
pub fn ribbon_transpose(d: &RibbonDiagram) -> RibbonDiagram {
    let flipped: Vec<bool> = d.dirs().iter().map(|b| !b).collect();
    RibbonDiagram::from_dirs(&flipped)
}

/// Graft on ribbon diagrams: box `i` of `c` is replaced by `d` when it is
/// the top box of its column and by the transpose of `d` otherwise, the
/// remaining boxes keeping their attachment directions.
pub fn ribbon_graft(
    c: &RibbonDiagram,
    i: usize,
    d: &RibbonDiagram,
) -> Result<RibbonDiagram, BijectionError> {
    let inserted = if c.is_top_box(i)? {
        d.clone()
    } else {
        ribbon_transpose(d)
    };
    let c_dirs = c.dirs();
    let mut dirs = Vec::with_capacity(c.size() + d.size() - 2);
    dirs.extend_from_slice(&c_dirs[..i - 1]);
    dirs.extend(inserted.dirs());
    dirs.extend_from_slice(&c_dirs[i - 1..]);
    Ok(RibbonDiagram::from_dirs(&dirs))
}

// --- segmented compositions --------------------------------------------------

/// A nonempty sequence of ribbon diagrams; its size is the sum of theirs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SegmentedComposition {
    pub segments: Vec<RibbonDiagram>,
}

impl SegmentedComposition {
    pub fn new(segments: Vec<RibbonDiagram>) -> Result<Self, BijectionError> {
        if segments.is_empty() {
            return Err(BijectionError::InvalidObject {
                kind: "segmented composition",
                reason: "needs at least one segment".into(),
            });
        }
        Ok(SegmentedComposition { segments })
    }

    pub fn size(&self) -> usize {
        self.segments.iter().map(RibbonDiagram::size).sum()
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.segments.iter().map(RibbonDiagram::to_json).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self, BijectionError> {
        let segs = v
            .as_array()
            .ok_or_else(|| BijectionError::InvalidObject {
                kind: "segmented composition",
                reason: "expected an array of compositions".into(),
            })?
            .iter()
            .map(RibbonDiagram::from_json)
            .collect::<Result<Vec<_>, _>>()?;
        SegmentedComposition::new(segs)
    }
}

/// Word to segmented composition: split before every 0; in each block drop
/// the letters to `{0, 1}` by decrementing the nonzero tail letters and read
/// a ribbon diagram.
pub fn phi_scomp(x: &OperadWord) -> Result<SegmentedComposition, BijectionError> {
    require_member(FamilyId::SComp, x)?;
    let ls = x.letters();
    let mut segments = Vec::new();
    let mut start = 0;
    for j in 1..=ls.len() {
        if j == ls.len() || ls[j] == 0 {
            let mut block: Vec<u64> = vec![0];
            block.extend(ls[start + 1..j].iter().map(|&v| v - 1));
            let w = OperadWord::new(MonoidSpec::CyclicNat(2), block).unwrap();
            segments.push(phi_comp(&w)?);
            start = j;
        }
    }
    SegmentedComposition::new(segments)
}

/// Segmented composition to word: per segment take the composition word,
/// increment every letter except the first, and concatenate.
pub fn phi_scomp_inv(s: &SegmentedComposition) -> Result<OperadWord, BijectionError> {
    let mut letters = Vec::new();
    for seg in &s.segments {
        let w = phi_comp_inv(seg);
        letters.push(0);
        letters.extend(w.letters()[1..].iter().map(|&v| v + 1));
    }
    Ok(OperadWord::new(MonoidSpec::CyclicNat(3), letters).unwrap())
}

// --- directed-animal words ---------------------------------------------------

/// Word to Motzkin prefix: successive letter differences mod 3, the residues
/// 0, 1, 2 rendered as the steps 0, +1, -1.
pub fn phi_da(x: &OperadWord) -> Result<MotzkinPrefix, BijectionError> {
    require_member(FamilyId::Da, x)?;
    let steps = x
        .letters()
        .windows(2)
        .map(|w| match (w[1] + 3 - w[0]) % 3 {
            0 => 0i8,
            1 => 1,
            _ => -1,
        })
        .collect();
    MotzkinPrefix::new(steps)
}

/// Motzkin prefix to word: rebuild the letters as partial sums mod 3,
/// starting from 0.
pub fn phi_da_inv(u: &MotzkinPrefix) -> OperadWord {
    let mut letters = vec![0u64];
    let mut current = 0u64;
    for &s in u.steps() {
        let residue = match s {
            0 => 0u64,
            1 => 1,
            _ => 2,
        };
        current = (current + residue) % 3;
        letters.push(current);
    }
    OperadWord::new(MonoidSpec::CyclicNat(3), letters).unwrap()
}
