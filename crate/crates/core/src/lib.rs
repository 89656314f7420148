//! Operads of words over a monoid.
//!
//! Starting from a monoid `M`, the nonempty words with letters in `M` form a
//! symmetric operad: the arity of a word is its length, grafting a word into
//! position `i` multiplies the inserted letters by the host letter, and
//! permutations act by rearranging letters.  This crate implements that
//! construction together with:
//!
//! * the ground monoids ([`monoid`]) and the word operad itself ([`word`]),
//! * thirteen named suboperads and quotients with membership tests,
//!   generation, enumeration and Hilbert-series prefixes ([`families`]),
//! * syntax trees over a graded alphabet, i.e. free operads ([`tree`]),
//! * rewriting systems on syntax trees with termination and normal-form
//!   machinery ([`rewrite`]),
//! * a catalog of presentations by generators and relations, verified by
//!   normal-form counting ([`presentations`]),
//! * bijections between the word families and classical combinatorial
//!   objects such as planar rooted trees, Motzkin words and ribbon
//!   diagrams ([`bijections`]).
//!
//! The `word-operads` binary exposes the same functionality on the command
//! line; see the crate README for usage.

pub mod axioms;
pub mod bijections;
pub mod families;
pub mod monoid;
pub mod presentations;
pub mod rewrite;
pub mod tree;
pub mod word;

pub use families::FamilyId;
pub use monoid::{MonoidElement, MonoidMorphism, MonoidSpec};
pub use tree::{GradedSymbol, SyntaxTree};
pub use word::{OperadWord, Permutation};
