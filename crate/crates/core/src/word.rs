//! The operad of nonempty words over a ground monoid, together with the
//! permutation operad that acts on it.
//!
//! A word `x = (x_1, …, x_n)` has arity `n`.  Grafting `y` into position `i`
//! replaces the letter `x_i` by the letters of `y` multiplied by `x_i`:
//!
//! ```text
//! x ∘_i y = (x_1, …, x_{i-1}, x_i·y_1, …, x_i·y_m, x_{i+1}, …, x_n)
//! ```
//!
//! Positions are 1-based throughout, matching the usual `∘_i` notation; the
//! only 0-based surface is the `letters()` slice accessor.
//!
//! When the ground monoid is generated by a set `G`, the whole word operad
//! is generated by the one-letter words `(g)` together with the two-letter
//! unit word.  An algebra over it therefore amounts to a set with an
//! associative product `⋆` and one unary operation `↑_g` per generator,
//! where each `↑_g` distributes over `⋆` and the `↑_g` compose according to
//! the relations of the monoid.  This crate works with the operads
//! themselves and does not model their algebras.

use std::fmt;

use crate::monoid::{MonoidError, MonoidMorphism, MonoidSpec};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("a word must have at least one letter")]
    Empty,
    #[error("monoid mismatch: expected {expected}, found {found}")]
    SpecMismatch {
        expected: MonoidSpec,
        found: MonoidSpec,
    },
    #[error("position {i} out of range 1..={arity}")]
    IndexOutOfRange { i: usize, arity: usize },
    #[error("expected {expected} arguments, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("arity mismatch: word has arity {word}, permutation degree {perm}")]
    ArityMismatch { word: usize, perm: usize },
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error("cannot parse `{0}` as a word")]
    Parse(String),
    #[error("`{0}` is not a permutation word")]
    BadPermutation(String),
}

/// A nonempty word over a ground monoid; an operation of arity `len`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OperadWord {
    spec: MonoidSpec,
    letters: Vec<u64>,
}

impl OperadWord {
    pub fn new(spec: MonoidSpec, letters: Vec<u64>) -> Result<Self, WordError> {
        if letters.is_empty() {
            return Err(WordError::Empty);
        }
        for &v in &letters {
            if !spec.contains(v) {
                return Err(WordError::Monoid(MonoidError::OutsideCarrier {
                    value: v,
                    spec,
                }));
            }
        }
        Ok(OperadWord { spec, letters })
    }

    /// The unit `(1)`: the one-letter word holding the monoid unit.
    pub fn unit(spec: MonoidSpec) -> Self {
        OperadWord {
            spec,
            letters: vec![spec.unit()],
        }
    }

    pub fn arity(&self) -> usize {
        self.letters.len()
    }

    pub fn spec(&self) -> MonoidSpec {
        self.spec
    }

    pub fn letters(&self) -> &[u64] {
        &self.letters
    }

    /// The `i`-th letter, 1-based.
    pub fn letter(&self, i: usize) -> Result<u64, WordError> {
        if i == 0 || i > self.arity() {
            return Err(WordError::IndexOutOfRange {
                i,
                arity: self.arity(),
            });
        }
        Ok(self.letters[i - 1])
    }

    /// Graft `y` into position `i`: multiply every letter of `y` by `x_i` and
    /// splice the result in place of `x_i`.
    pub fn graft(&self, i: usize, y: &OperadWord) -> Result<OperadWord, WordError> {
        if self.spec != y.spec {
            return Err(WordError::SpecMismatch {
                expected: self.spec,
                found: y.spec,
            });
        }
        let xi = self.letter(i)?;
        let mut letters = Vec::with_capacity(self.arity() + y.arity() - 1);
        letters.extend_from_slice(&self.letters[..i - 1]);
        for &yj in &y.letters {
            letters.push(self.spec.product(xi, yj)?);
        }
        letters.extend_from_slice(&self.letters[i..]);
        Ok(OperadWord {
            spec: self.spec,
            letters,
        })
    }

    /// Complete grafting `x ∘ [y_1, …, y_n]`, the right-to-left fold
    /// `(…((x ∘_n y_n) ∘_{n-1} y_{n-1})…) ∘_1 y_1`.
    pub fn complete_graft(&self, ys: &[OperadWord]) -> Result<OperadWord, WordError> {
        if ys.len() != self.arity() {
            return Err(WordError::LengthMismatch {
                expected: self.arity(),
                found: ys.len(),
            });
        }
        let mut acc = self.clone();
        for (i, y) in ys.iter().enumerate().rev() {
            acc = acc.graft(i + 1, y)?;
        }
        Ok(acc)
    }

    /// Right action of a permutation: `x·σ = (x_{σ_1}, …, x_{σ_n})`.
    pub fn act(&self, sigma: &Permutation) -> Result<OperadWord, WordError> {
        if sigma.degree() != self.arity() {
            return Err(WordError::ArityMismatch {
                word: self.arity(),
                perm: sigma.degree(),
            });
        }
        let letters = sigma
            .images()
            .iter()
            .map(|&j| self.letters[j - 1])
            .collect();
        Ok(OperadWord {
            spec: self.spec,
            letters,
        })
    }

    /// Parse a word literal: a digit string like `0112`, or a comma form like
    /// `0,11,2` for letters above 9.
    pub fn parse(spec: MonoidSpec, s: &str) -> Result<Self, WordError> {
        if s.is_empty() {
            return Err(WordError::Parse(s.into()));
        }
        let letters: Vec<u64> = if s.contains(',') {
            s.split(',')
                .map(|p| p.trim().parse::<u64>())
                .collect::<Result<_, _>>()
                .map_err(|_| WordError::Parse(s.into()))?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(u64::from))
                .collect::<Option<_>>()
                .ok_or_else(|| WordError::Parse(s.into()))?
        };
        OperadWord::new(spec, letters)
    }

    /// Display with every letter incremented by one (the 1-based reading of
    /// endofunction-like words).
    pub fn untwisted_string(&self) -> String {
        let shifted: Vec<u64> = self.letters.iter().map(|&v| v + 1).collect();
        render_letters(&shifted)
    }
}

fn render_letters(letters: &[u64]) -> String {
    if letters.iter().all(|&v| v < 10) {
        letters.iter().map(|v| v.to_string()).collect()
    } else {
        letters
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for OperadWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_letters(&self.letters))
    }
}

/// A permutation of `{1, …, n}` written as the word of its images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, WordError> {
        let n = images.len();
        if n == 0 {
            return Err(WordError::BadPermutation("empty".into()));
        }
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(WordError::BadPermutation(format!("{images:?}")));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v - 1] = i + 1;
        }
        Permutation { images }
    }

    /// Grafting in the permutation operad:
    /// the block of `ν` is shifted by `σ_i - 1` and spliced into position `i`,
    /// and every image of `σ` at least `σ_i` is pushed up by `m - 1`.
    pub fn pm_graft(&self, i: usize, nu: &Permutation) -> Result<Permutation, WordError> {
        let n = self.degree();
        if i == 0 || i > n {
            return Err(WordError::IndexOutOfRange { i, arity: n });
        }
        let m = nu.degree();
        let si = self.images[i - 1];
        let mut images = Vec::with_capacity(n + m - 1);
        for (j, &sj) in self.images.iter().enumerate() {
            if j + 1 == i {
                for &nj in &nu.images {
                    images.push(nj + si - 1);
                }
            } else {
                images.push(if sj < si { sj } else { sj + m - 1 });
            }
        }
        Ok(Permutation { images })
    }

    /// All permutations of degree `n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut images: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation {
                images: images.clone(),
            });
            if !next_permutation(&mut images) {
                break;
            }
        }
        out
    }

    pub fn parse(s: &str) -> Result<Self, WordError> {
        let images: Vec<usize> = if s.contains(',') {
            s.split(',')
                .map(|p| p.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| WordError::BadPermutation(s.into()))?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect::<Option<_>>()
                .ok_or_else(|| WordError::BadPermutation(s.into()))?
        };
        Permutation::new(images)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() <= 9 {
            for v in &self.images {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.images.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

/// Advance `items` to the next lexicographic permutation; false at the last.
pub(crate) fn next_permutation<T: Ord>(items: &mut [T]) -> bool {
    let n = items.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && items[i - 1] >= items[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while items[j] <= items[i - 1] {
        j -= 1;
    }
    items.swap(i - 1, j);
    items[i..].reverse();
    true
}

/// Letterwise image of a word under a monoid morphism.
pub fn lift_morphism(theta: &MonoidMorphism, x: &OperadWord) -> Result<OperadWord, WordError> {
    if x.spec() != theta.source {
        return Err(WordError::SpecMismatch {
            expected: theta.source,
            found: x.spec(),
        });
    }
    OperadWord::new(
        theta.target,
        x.letters().iter().map(|&v| theta.apply_value(v)).collect(),
    )
}

/// All words over `spec` of the given arity with letters `0..=value_cap`
/// (intersected with the carrier), in lexicographic order.
pub fn words_of_arity(spec: MonoidSpec, arity: usize, value_cap: u64) -> Vec<OperadWord> {
    let cap = match spec {
        MonoidSpec::CyclicNat(l) => value_cap.min(l - 1),
        _ => value_cap,
    };
    let mut out = Vec::new();
    let mut letters = vec![0u64; arity];
    loop {
        out.push(OperadWord {
            spec,
            letters: letters.clone(),
        });
        let mut pos = arity;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if letters[pos] < cap {
                letters[pos] += 1;
                for v in &mut letters[pos + 1..] {
                    *v = 0;
                }
                break;
            }
        }
    }
}

/// Bounded probe of basicness: every complete-grafting map
/// `γ_{y_1,…,y_n}(x) = x ∘ [y_1, …, y_n]` must be injective in `x`.
///
/// `x` ranges over words of arity `n ≤ arity_cap` with letters `≤ value_cap`,
/// and each `y_i` over words of arity `≤ arity_cap` with letters
/// `≤ value_cap`.  Two words `x ≠ x'` collide under some tuple exactly when
/// at some position a single word `y` merges two distinct letters, so the
/// probe reduces to scanning single words; `probe_basic_naive` in the tests
/// checks the reduction against the direct tuple enumeration.
pub fn check_basic_probe(spec: MonoidSpec, arity_cap: usize, value_cap: u64) -> bool {
    let cap = match spec {
        MonoidSpec::CyclicNat(l) => value_cap.min(l - 1),
        _ => value_cap,
    };
    for arity in 1..=arity_cap {
        for y in words_of_arity(spec, arity, cap) {
            for v in 0..=cap {
                'next: for w in (v + 1)..=cap {
                    for &yj in y.letters() {
                        match (spec.product(v, yj), spec.product(w, yj)) {
                            (Ok(a), Ok(b)) if a == b => {}
                            _ => continue 'next,
                        }
                    }
                    // v and w agree against every letter of y: γ with y in
                    // that slot merges two words differing only there.
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::MonoidSpec::*;
    use proptest::prelude::*;

    fn w(spec: MonoidSpec, s: &str) -> OperadWord {
        OperadWord::parse(spec, s).unwrap()
    }

    #[test]
    fn graft_examples() {
        // 2123 ∘_2 30313 over the additive naturals.
        let x = w(AdditiveNat, "2123");
        let y = w(AdditiveNat, "30313");
        assert_eq!(x.graft(2, &y).unwrap(), w(AdditiveNat, "24142423"));
        // Grafting the unit anywhere is the identity.
        for i in 1..=4 {
            assert_eq!(x.graft(i, &OperadWord::unit(AdditiveNat)).unwrap(), x);
        }
        assert_eq!(OperadWord::unit(AdditiveNat).graft(1, &x).unwrap(), x);
        // Multiplicative: the host letter multiplies the inserted letters.
        let a = w(MultiplicativeNat, "12");
        assert_eq!(a.graft(2, &a).unwrap(), w(MultiplicativeNat, "124"));
        assert_eq!(a.graft(1, &a).unwrap(), w(MultiplicativeNat, "122"));
    }

    #[test]
    fn graft_errors() {
        let x = w(AdditiveNat, "01");
        assert!(matches!(
            x.graft(3, &x),
            Err(WordError::IndexOutOfRange { .. })
        ));
        let y = w(CyclicNat(2), "01");
        assert!(matches!(
            x.graft(1, &y),
            Err(WordError::SpecMismatch { .. })
        ));
    }

    #[test]
    fn complete_graft_examples() {
        let x = w(AdditiveNat, "01");
        let ys = [w(AdditiveNat, "01"), w(AdditiveNat, "01")];
        assert_eq!(x.complete_graft(&ys).unwrap(), w(AdditiveNat, "0112"));
        let x2 = w(AdditiveNat, "00");
        let ys2 = [w(AdditiveNat, "0"), w(AdditiveNat, "01")];
        assert_eq!(x2.complete_graft(&ys2).unwrap(), w(AdditiveNat, "001"));
        // Unit arguments leave the word unchanged.
        let units = [OperadWord::unit(AdditiveNat), OperadWord::unit(AdditiveNat)];
        assert_eq!(x.complete_graft(&units).unwrap(), x);
        assert!(matches!(
            x.complete_graft(&[w(AdditiveNat, "0")]),
            Err(WordError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn action_examples() {
        let x = w(AdditiveNat, "11210");
        let sigma = Permutation::parse("23514").unwrap();
        assert_eq!(x.act(&sigma).unwrap(), w(AdditiveNat, "12011"));
        assert_eq!(x.act(&Permutation::identity(5)).unwrap(), x);
        let back = x.act(&sigma).unwrap().act(&sigma.inverse()).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn pm_graft_examples() {
        let s = Permutation::parse("123").unwrap();
        let n = Permutation::parse("12").unwrap();
        assert_eq!(s.pm_graft(2, &n).unwrap(), Permutation::parse("1234").unwrap());
        let s = Permutation::parse("7415623").unwrap();
        let n = Permutation::parse("231").unwrap();
        assert_eq!(
            s.pm_graft(4, &n).unwrap(),
            Permutation::parse("941675823").unwrap()
        );
        // The unit of the permutation operad.
        let id1 = Permutation::identity(1);
        for p in Permutation::all(4) {
            for i in 1..=4 {
                assert_eq!(p.pm_graft(i, &id1).unwrap(), p);
            }
            assert_eq!(id1.pm_graft(1, &p).unwrap(), p);
        }
    }

    #[test]
    fn lift_examples() {
        let m2 = MonoidMorphism::reduce_mod(AdditiveNat, 2).unwrap();
        assert_eq!(
            lift_morphism(&m2, &w(AdditiveNat, "0123")).unwrap(),
            w(CyclicNat(2), "0101")
        );
        let m3 = MonoidMorphism::reduce_mod(AdditiveNat, 3).unwrap();
        assert_eq!(
            lift_morphism(&m3, &w(AdditiveNat, "0345")).unwrap(),
            w(CyclicNat(3), "0012")
        );
        let id = MonoidMorphism::identity(AdditiveNat);
        let x = w(AdditiveNat, "0112");
        assert_eq!(lift_morphism(&id, &x).unwrap(), x);
        assert!(lift_morphism(&m2, &w(CyclicNat(3), "01")).is_err());
    }

    /// Direct tuple enumeration of the basicness probe, used as the oracle
    /// for the single-word reduction in `check_basic_probe`.
    fn probe_basic_naive(spec: MonoidSpec, arity_cap: usize, value_cap: u64) -> bool {
        let cap = match spec {
            CyclicNat(l) => value_cap.min(l - 1),
            _ => value_cap,
        };
        let pool: Vec<OperadWord> = (1..=arity_cap)
            .flat_map(|a| words_of_arity(spec, a, cap))
            .collect();
        fn advance(idx: &mut [usize], base: usize) -> bool {
            for pos in (0..idx.len()).rev() {
                idx[pos] += 1;
                if idx[pos] < base {
                    return true;
                }
                idx[pos] = 0;
            }
            false
        }
        for n in 1..=arity_cap {
            let xs = words_of_arity(spec, n, cap);
            let mut tuple_idx = vec![0usize; n];
            loop {
                let ys: Vec<OperadWord> =
                    tuple_idx.iter().map(|&k| pool[k].clone()).collect();
                let mut images = std::collections::HashSet::new();
                for x in &xs {
                    if let Ok(img) = x.complete_graft(&ys) {
                        if !images.insert(img) {
                            return false;
                        }
                    }
                }
                if !advance(&mut tuple_idx, pool.len()) {
                    break;
                }
            }
        }
        true
    }

    #[test]
    fn basic_probe_examples() {
        assert!(check_basic_probe(AdditiveNat, 3, 3));
        assert!(check_basic_probe(CyclicNat(3), 3, 2));
        assert!(!check_basic_probe(MultiplicativeNat, 2, 2));
    }

    #[test]
    fn basic_probe_matches_naive_oracle() {
        for spec in [AdditiveNat, CyclicNat(3), MultiplicativeNat] {
            assert_eq!(
                check_basic_probe(spec, 2, 2),
                probe_basic_naive(spec, 2, 2),
                "{spec}"
            );
        }
    }

    #[test]
    fn display_and_parse() {
        let x = OperadWord::new(AdditiveNat, vec![0, 11, 2]).unwrap();
        assert_eq!(x.to_string(), "0,11,2");
        assert_eq!(OperadWord::parse(AdditiveNat, "0,11,2").unwrap(), x);
        let y = w(AdditiveNat, "0112");
        assert_eq!(y.to_string(), "0112");
        assert_eq!(y.untwisted_string(), "1223");
        assert!(OperadWord::parse(CyclicNat(2), "02").is_err());
        assert!(OperadWord::parse(AdditiveNat, "").is_err());
    }

    fn small_word(spec: MonoidSpec) -> impl Strategy<Value = OperadWord> {
        prop::collection::vec(0u64..4, 1..5).prop_map(move |mut ls| {
            if let CyclicNat(l) = spec {
                for v in &mut ls {
                    *v %= l;
                }
            }
            OperadWord::new(spec, ls).unwrap()
        })
    }

    proptest! {
        #[test]
        fn sequential_associativity(
            x in small_word(AdditiveNat),
            y in small_word(AdditiveNat),
            z in small_word(AdditiveNat),
            raw_i in 0usize..64,
            raw_j in 0usize..64,
        ) {
            let i = 1 + raw_i % x.arity();
            let j = 1 + raw_j % y.arity();
            let left = x.graft(i, &y).unwrap().graft(i + j - 1, &z).unwrap();
            let right = x.graft(i, &y.graft(j, &z).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn parallel_associativity(
            x in small_word(AdditiveNat),
            y in small_word(AdditiveNat),
            z in small_word(AdditiveNat),
            raw_i in 0usize..64,
            raw_j in 0usize..64,
        ) {
            prop_assume!(x.arity() >= 2);
            let i = 1 + raw_i % (x.arity() - 1);
            let j = i + 1 + raw_j % (x.arity() - i);
            let m = y.arity();
            let left = x.graft(i, &y).unwrap().graft(j + m - 1, &z).unwrap();
            let right = x.graft(j, &z).unwrap().graft(i, &y).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn word_parse_display_round_trip(x in small_word(AdditiveNat)) {
            let s = x.to_string();
            prop_assert_eq!(OperadWord::parse(AdditiveNat, &s).unwrap(), x);
        }
    }
}
