//! The named suboperads and quotients of the word operads: membership
//! characterizations, generator sets, generation by arity, exact enumeration
//! and Hilbert-series prefixes.
//!
//! All families over the additive naturals use the 0-based letter convention
//! throughout (an endofunction-like word has letters in `{0, …, n-1}`), since
//! grafting is only closed in that form; `OperadWord::untwisted_string`
//! renders the 1-based reading.
//!
//! | family  | ground monoid | symmetric | generators        | dimensions           |
//! |---------|---------------|-----------|-------------------|----------------------|
//! | end     | add           | yes       | —                 | n^n                  |
//! | pf      | add           | yes       | —                 | (n+1)^(n-1)          |
//! | pw      | add           | yes       | 00, 01            | ordered Bell         |
//! | per     | add           | yes       | —                 | n!                   |
//! | prt     | add           | no        | 01                | Catalan              |
//! | fcat:k  | add           | no        | 00, …, 0k         | Fuss–Catalan         |
//! | schr    | add           | no        | 00, 01, 10        | super-Catalan        |
//! | motz    | add           | no        | 00, 010           | Motzkin              |
//! | comp    | cyclic:2      | no        | 00, 01            | 2^(n-1)              |
//! | da      | cyclic:3      | no        | 00, 01            | directed animals     |
//! | scomp   | cyclic:3      | no        | 00, 01, 02        | 3^(n-1)              |
//! | di      | mult          | no        | 01, 10            | n                    |
//! | tr      | mult          | no        | 01, 10, 11        | 2^n - 1              |
//!
//! Segmented compositions of size `n` number `3^(n-1)`: a word over
//! `{0, 1, 2}` of length `n` starting with `0` chooses one of three
//! continuations at each of the remaining `n - 1` positions.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::monoid::MonoidSpec;
use crate::word::{next_permutation, words_of_arity, OperadWord, WordError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("unknown family `{0}`")]
    Unknown(String),
    #[error("family {0} is not finitely generated; use enumeration by membership instead")]
    NotFinitelyGenerated(FamilyId),
    #[error("word {word} is over {found}, family {family} lives over {expected}")]
    WrongMonoid {
        family: FamilyId,
        word: String,
        expected: MonoidSpec,
        found: MonoidSpec,
    },
    #[error("{word} is not a member of {family}")]
    NotAMember { family: FamilyId, word: String },
    #[error(transparent)]
    Word(#[from] WordError),
}

/// One of the thirteen named families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyId {
    /// Endofunction words: letters below the arity.
    End,
    /// Parking-function words.
    Pf,
    /// Packed words.
    Pw,
    /// Permutation words.
    Per,
    /// Planar-rooted-tree words.
    Prt,
    /// The Fuss–Catalan family with parameter `k`.
    FCat(u32),
    /// Schröder-tree words.
    Schr,
    /// Motzkin words.
    Motz,
    /// Integer-composition words.
    Comp,
    /// Directed-animal words.
    Da,
    /// Segmented-composition words.
    SComp,
    /// Words with exactly one letter 1 (diassociative realization).
    Di,
    /// Words with at least one letter 1 (triassociative realization).
    Tr,
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyId::End => write!(f, "end"),
            FamilyId::Pf => write!(f, "pf"),
            FamilyId::Pw => write!(f, "pw"),
            FamilyId::Per => write!(f, "per"),
            FamilyId::Prt => write!(f, "prt"),
            FamilyId::FCat(k) => write!(f, "fcat:{k}"),
            FamilyId::Schr => write!(f, "schr"),
            FamilyId::Motz => write!(f, "motz"),
            FamilyId::Comp => write!(f, "comp"),
            FamilyId::Da => write!(f, "da"),
            FamilyId::SComp => write!(f, "scomp"),
            FamilyId::Di => write!(f, "di"),
            FamilyId::Tr => write!(f, "tr"),
        }
    }
}

impl FamilyId {
    pub fn parse(s: &str) -> Result<Self, FamilyError> {
        Ok(match s {
            "end" => FamilyId::End,
            "pf" => FamilyId::Pf,
            "pw" => FamilyId::Pw,
            "per" => FamilyId::Per,
            "prt" => FamilyId::Prt,
            "schr" => FamilyId::Schr,
            "motz" => FamilyId::Motz,
            "comp" => FamilyId::Comp,
            "da" => FamilyId::Da,
            "scomp" => FamilyId::SComp,
            "di" => FamilyId::Di,
            "tr" => FamilyId::Tr,
            _ => {
                let k = s
                    .strip_prefix("fcat:")
                    .and_then(|r| r.parse::<u32>().ok())
                    .ok_or_else(|| FamilyError::Unknown(s.to_string()))?;
                FamilyId::FCat(k)
            }
        })
    }

    pub fn all(max_fcat: u32) -> Vec<FamilyId> {
        let mut out = vec![
            FamilyId::End,
            FamilyId::Pf,
            FamilyId::Pw,
            FamilyId::Per,
            FamilyId::Prt,
        ];
        out.extend((0..=max_fcat).map(FamilyId::FCat));
        out.extend([
            FamilyId::Schr,
            FamilyId::Motz,
            FamilyId::Comp,
            FamilyId::Da,
            FamilyId::SComp,
            FamilyId::Di,
            FamilyId::Tr,
        ]);
        out
    }

    pub fn monoid_spec(&self) -> MonoidSpec {
        match self {
            FamilyId::Comp => MonoidSpec::CyclicNat(2),
            FamilyId::Da | FamilyId::SComp => MonoidSpec::CyclicNat(3),
            FamilyId::Di | FamilyId::Tr => MonoidSpec::MultiplicativeNat,
            _ => MonoidSpec::AdditiveNat,
        }
    }

    /// Is the family closed under (and generated with) the symmetric-group
    /// action?
    pub fn symmetric(&self) -> bool {
        matches!(
            self,
            FamilyId::End | FamilyId::Pf | FamilyId::Pw | FamilyId::Per
        )
    }

    /// The finite generator list, when one exists.
    pub fn generators(&self) -> Option<Vec<OperadWord>> {
        let spec = self.monoid_spec();
        let words = |ss: &[&str]| {
            ss.iter()
                .map(|s| OperadWord::parse(spec, s).unwrap())
                .collect()
        };
        match self {
            FamilyId::End | FamilyId::Pf | FamilyId::Per => None,
            FamilyId::Pw => Some(words(&["00", "01"])),
            FamilyId::Prt => Some(words(&["01"])),
            FamilyId::FCat(k) => Some(
                (0..=*k)
                    .map(|h| OperadWord::new(spec, vec![0, h as u64]).unwrap())
                    .collect(),
            ),
            FamilyId::Schr => Some(words(&["00", "01", "10"])),
            FamilyId::Motz => Some(words(&["00", "010"])),
            FamilyId::Comp => Some(words(&["00", "01"])),
            FamilyId::Da => Some(words(&["00", "01"])),
            FamilyId::SComp => Some(words(&["00", "01", "02"])),
            FamilyId::Di => Some(words(&["01", "10"])),
            FamilyId::Tr => Some(words(&["01", "10", "11"])),
        }
    }

    /// Membership in the family.
    pub fn member(&self, x: &OperadWord) -> Result<bool, FamilyError> {
        let expected = self.monoid_spec();
        if x.spec() != expected {
            return Err(FamilyError::WrongMonoid {
                family: *self,
                word: x.to_string(),
                expected,
                found: x.spec(),
            });
        }
        let ls = x.letters();
        let n = ls.len() as u64;
        Ok(match self {
            FamilyId::End => ls.iter().all(|&v| v < n),
            FamilyId::Pf => {
                let mut sorted = ls.to_vec();
                sorted.sort_unstable();
                sorted.iter().enumerate().all(|(i, &v)| v <= i as u64)
            }
            FamilyId::Pw => ls
                .iter()
                .all(|&v| v == 0 || ls.contains(&(v - 1))),
            FamilyId::Per => {
                let mut sorted = ls.to_vec();
                sorted.sort_unstable();
                sorted.iter().enumerate().all(|(i, &v)| v == i as u64)
            }
            FamilyId::Prt => {
                ls[0] == 0
                    && ls
                        .windows(2)
                        .all(|w| 1 <= w[1] && w[1] <= w[0] + 1)
            }
            FamilyId::FCat(k) => {
                ls[0] == 0 && ls.windows(2).all(|w| w[1] <= w[0] + *k as u64)
            }
            FamilyId::Schr => is_schroeder_word(ls),
            FamilyId::Motz => {
                ls[0] == 0
                    && *ls.last().unwrap() == 0
                    && ls.windows(2).all(|w| w[0].abs_diff(w[1]) <= 1)
            }
            FamilyId::Comp => ls[0] == 0,
            FamilyId::Da => ls[0] == 0 && da_prefix_condition(ls),
            FamilyId::SComp => ls[0] == 0,
            FamilyId::Di => {
                ls.iter().all(|&v| v <= 1) && ls.iter().filter(|&&v| v == 1).count() == 1
            }
            FamilyId::Tr => ls.iter().all(|&v| v <= 1) && ls.contains(&1),
        })
    }
}

/// Every occurrence of a letter `b >= 1` must sit in a factor `(b-1) u b` or
/// `b u (b-1)` whose inner letters are all at least `b`, and `0` must occur.
/// Equivalently: on at least one side of the occurrence, the nearest letter
/// below `b` is exactly `b - 1`.
fn is_schroeder_word(ls: &[u64]) -> bool {
    if !ls.contains(&0) {
        return false;
    }
    'occurrence: for (q, &b) in ls.iter().enumerate() {
        if b == 0 {
            continue;
        }
        for &v in ls[..q].iter().rev() {
            if v < b {
                if v == b - 1 {
                    continue 'occurrence;
                }
                break;
            }
        }
        for &v in &ls[q + 1..] {
            if v < b {
                if v == b - 1 {
                    continue 'occurrence;
                }
                break;
            }
        }
        return false;
    }
    true
}

/// Letterwise successive differences mod 3, read as steps 0, +1, -1, must
/// keep all partial sums nonnegative.
fn da_prefix_condition(ls: &[u64]) -> bool {
    let mut height: i64 = 0;
    for w in ls.windows(2) {
        let step = match (w[1] + 3 - w[0]) % 3 {
            0 => 0,
            1 => 1,
            _ => -1,
        };
        height += step;
        if height < 0 {
            return false;
        }
    }
    true
}

/// Per-arity element sets of a family, sorted lexicographically.
#[derive(Debug, Clone, Serialize)]
pub struct ArityLevel {
    pub n: usize,
    pub count: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
}

#[derive(Debug, Clone)]
pub struct EnumerationTable {
    pub family: FamilyId,
    pub levels: Vec<(usize, Vec<OperadWord>)>,
}

impl EnumerationTable {
    pub fn counts(&self) -> Vec<u64> {
        self.levels.iter().map(|(_, v)| v.len() as u64).collect()
    }

    pub fn level(&self, n: usize) -> &[OperadWord] {
        &self.levels[n - 1].1
    }

    pub fn to_json(&self, counts_only: bool) -> serde_json::Value {
        let arities: Vec<ArityLevel> = self
            .levels
            .iter()
            .map(|(n, elems)| ArityLevel {
                n: *n,
                count: elems.len() as u64,
                elements: if counts_only {
                    None
                } else {
                    Some(elems.iter().map(|w| w.to_string()).collect())
                },
            })
            .collect();
        serde_json::json!({ "family": self.family.to_string(), "arities": arities })
    }
}

/// Build the family arity by arity from its generators: every element other
/// than the unit is some smaller element grafted with a generator, and
/// symmetric families are additionally closed under the full symmetric-group
/// action at each arity.
pub fn generate_by_arity(
    family: FamilyId,
    max_arity: usize,
) -> Result<EnumerationTable, FamilyError> {
    let gens = family
        .generators()
        .ok_or(FamilyError::NotFinitelyGenerated(family))?;
    let spec = family.monoid_spec();
    let mut levels: Vec<BTreeSet<Vec<u64>>> = vec![BTreeSet::new(); max_arity + 1];
    if max_arity >= 1 {
        levels[1].insert(OperadWord::unit(spec).letters().to_vec());
    }
    for n in 2..=max_arity {
        let mut set: BTreeSet<Vec<u64>> = BTreeSet::new();
        for g in &gens {
            let m = g.arity();
            if n + 1 < m {
                continue;
            }
            let source = n + 1 - m;
            if source == 0 || source > max_arity {
                continue;
            }
            let source_words: Vec<Vec<u64>> = levels[source].iter().cloned().collect();
            for letters in source_words {
                let y = OperadWord::new(spec, letters).unwrap();
                for i in 1..=source {
                    set.insert(y.graft(i, g)?.letters().to_vec());
                }
            }
        }
        if family.symmetric() {
            // Orbit closure under the full symmetric group: every distinct
            // rearrangement of each element.
            let mut closed: BTreeSet<Vec<u64>> = BTreeSet::new();
            for letters in &set {
                let mut sorted = letters.clone();
                sorted.sort_unstable();
                loop {
                    closed.insert(sorted.clone());
                    if !next_permutation(&mut sorted) {
                        break;
                    }
                }
            }
            set = closed;
        }
        levels[n] = set;
    }
    Ok(EnumerationTable {
        family,
        levels: (1..=max_arity)
            .map(|n| {
                (
                    n,
                    levels[n]
                        .iter()
                        .map(|ls| OperadWord::new(spec, ls.clone()).unwrap())
                        .collect(),
                )
            })
            .collect(),
    })
}

/// Exact per-arity element sets computed from the membership
/// characterization alone; works for every family, including the
/// non-finitely-generated ones.
pub fn enumerate_by_membership(
    family: FamilyId,
    max_arity: usize,
    letter_cap: Option<u64>,
) -> EnumerationTable {
    let spec = family.monoid_spec();
    let levels = (1..=max_arity)
        .map(|n| {
            let mut words: Vec<OperadWord> = match family {
                FamilyId::Prt | FamilyId::FCat(_) | FamilyId::Motz => {
                    bounded_step_words(family, n)
                }
                FamilyId::Per => {
                    let mut out = Vec::new();
                    let mut letters: Vec<u64> = (0..n as u64).collect();
                    loop {
                        out.push(OperadWord::new(spec, letters.clone()).unwrap());
                        if !next_permutation(&mut letters) {
                            break;
                        }
                    }
                    out
                }
                _ => {
                    // The characterizations bound letters by the arity (or
                    // the monoid bounds them already); a caller cap can only
                    // tighten the box.
                    let derived = match family {
                        FamilyId::Di | FamilyId::Tr | FamilyId::Comp => 1,
                        FamilyId::Da | FamilyId::SComp => 2,
                        _ => n as u64 - 1,
                    };
                    let cap = letter_cap.map_or(derived, |c| c.min(derived));
                    words_of_arity(spec, n, cap)
                        .into_iter()
                        .filter(|w| family.member(w).unwrap())
                        .collect()
                }
            };
            if let Some(cap) = letter_cap {
                words.retain(|w| w.letters().iter().all(|&v| v <= cap));
            }
            words.sort();
            (n, words)
        })
        .collect();
    EnumerationTable { family, levels }
}

/// Depth-first enumeration for the families whose characterization bounds
/// each letter by its predecessor (planar-rooted-tree, Fuss–Catalan and
/// Motzkin words).
fn bounded_step_words(family: FamilyId, n: usize) -> Vec<OperadWord> {
    let spec = family.monoid_spec();
    let mut out = Vec::new();
    let mut letters: Vec<u64> = vec![0];
    fn extend(
        family: FamilyId,
        spec: MonoidSpec,
        n: usize,
        letters: &mut Vec<u64>,
        out: &mut Vec<OperadWord>,
    ) {
        if letters.len() == n {
            let ok = match family {
                FamilyId::Motz => *letters.last().unwrap() == 0,
                _ => true,
            };
            if ok {
                out.push(OperadWord::new(spec, letters.clone()).unwrap());
            }
            return;
        }
        let prev = *letters.last().unwrap();
        let candidates: Vec<u64> = match family {
            FamilyId::Prt => (1..=prev + 1).collect(),
            FamilyId::FCat(k) => (0..=prev + k as u64).collect(),
            FamilyId::Motz => {
                let remaining = (n - letters.len() - 1) as u64;
                let mut c = Vec::new();
                // Must be able to come back down to 0 by the last letter.
                if prev >= 1 && prev - 1 <= remaining {
                    c.push(prev - 1);
                }
                if prev <= remaining {
                    c.push(prev);
                }
                if prev < remaining {
                    c.push(prev + 1);
                }
                c.sort_unstable();
                c
            }
            _ => unreachable!("bounded_step_words only handles prt/fcat/motz"),
        };
        for v in candidates {
            letters.push(v);
            extend(family, spec, n, letters, out);
            letters.pop();
        }
    }
    extend(family, spec, n, &mut letters, &mut out);
    out
}

/// A grafting in the permutation-word quotient: defined when the host letter
/// is the greatest letter of the host word, absorbed to zero otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PerGraftOutcome {
    Word(OperadWord),
    Zero,
}

/// The partial graft of permutation words: keep `x ∘_i y` when `x_i` is the
/// greatest letter of `x` (which for a permutation word of arity `n` is
/// `n - 1`), and return the absorbing [`PerGraftOutcome::Zero`] otherwise.
pub fn per_partial_graft(
    x: &OperadWord,
    i: usize,
    y: &OperadWord,
) -> Result<PerGraftOutcome, FamilyError> {
    for w in [x, y] {
        if !FamilyId::Per.member(w)? {
            return Err(FamilyError::NotAMember {
                family: FamilyId::Per,
                word: w.to_string(),
            });
        }
    }
    let max_letter = x.arity() as u64 - 1;
    if x.letter(i)? == max_letter {
        Ok(PerGraftOutcome::Word(x.graft(i, y)?))
    } else {
        Ok(PerGraftOutcome::Zero)
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        acc = acc * (n - j) as u128 / (j + 1) as u128;
    }
    acc as u64
}

/// The first `max_arity` coefficients of the family's Hilbert series, by
/// closed formula where one is known and by enumeration otherwise.
pub fn hilbert_prefix(family: FamilyId, max_arity: usize) -> Vec<u64> {
    let closed = |f: fn(u64) -> u64| (1..=max_arity as u64).map(f).collect::<Vec<u64>>();
    match family {
        FamilyId::End => closed(|n| n.pow(n as u32)),
        FamilyId::Pf => closed(|n| (n + 1).pow(n as u32 - 1)),
        FamilyId::Per => closed(|n| (1..=n).product()),
        FamilyId::Prt => closed(|n| binomial(2 * n - 2, n - 1) / n),
        FamilyId::FCat(k) => (1..=max_arity as u64)
            .map(|n| {
                let k = k as u64;
                binomial(k * n + n, n) / (k * n + 1)
            })
            .collect(),
        FamilyId::Comp => closed(|n| 1 << (n - 1)),
        FamilyId::SComp => closed(|n| 3u64.pow(n as u32 - 1)),
        FamilyId::Di => closed(|n| n),
        FamilyId::Tr => closed(|n| (1 << n) - 1),
        FamilyId::Pw | FamilyId::Schr | FamilyId::Motz | FamilyId::Da => {
            enumerate_by_membership(family, max_arity, None).counts()
        }
    }
}
