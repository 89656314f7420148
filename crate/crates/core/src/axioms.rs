//! Executable checks of the operad laws on word operads and on the
//! permutation operad: sequential and parallel associativity, the unit law,
//! and equivariance of the symmetric-group action.
//!
//! Two drivers are provided: an exhaustive sweep over all words up to given
//! arity and letter caps, and a seeded random sampler for larger shapes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::monoid::MonoidSpec;
use crate::word::{words_of_arity, OperadWord, Permutation};

/// Outcome of one law over many cases.
#[derive(Debug, Clone)]
pub struct LawReport {
    pub law: &'static str,
    pub cases: u64,
    pub failure: Option<String>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub laws: Vec<LawReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.laws.iter().all(LawReport::passed)
    }
}

struct Recorder {
    law: &'static str,
    cases: u64,
    failure: Option<String>,
}

impl Recorder {
    fn new(law: &'static str) -> Self {
        Recorder {
            law,
            cases: 0,
            failure: None,
        }
    }

    fn check<L: PartialEq + std::fmt::Debug>(
        &mut self,
        left: L,
        right: L,
        describe: impl FnOnce() -> String,
    ) {
        self.cases += 1;
        if self.failure.is_none() && left != right {
            self.failure = Some(format!("{}: {left:?} != {right:?}", describe()));
        }
    }

    fn finish(self) -> LawReport {
        LawReport {
            law: self.law,
            cases: self.cases,
            failure: self.failure,
        }
    }
}

struct Recorders {
    seq: Recorder,
    par: Recorder,
    unit: Recorder,
    equi: Recorder,
}

impl Recorders {
    fn new() -> Self {
        Recorders {
            seq: Recorder::new("sequential associativity"),
            par: Recorder::new("parallel associativity"),
            unit: Recorder::new("unit"),
            equi: Recorder::new("equivariance"),
        }
    }

    fn finish(self) -> SuiteReport {
        SuiteReport {
            laws: vec![
                self.seq.finish(),
                self.par.finish(),
                self.unit.finish(),
                self.equi.finish(),
            ],
        }
    }
}

/// The two associativity laws and the unit law on one tuple.
fn check_graft_laws(
    rec: &mut Recorders,
    x: &OperadWord,
    y: &OperadWord,
    z: &OperadWord,
    i: usize,
    j: usize,
) {
    // Sequential associativity: (x ∘_i y) ∘_{i+j-1} z = x ∘_i (y ∘_j z).
    if i <= x.arity() && j <= y.arity() {
        let left = x.graft(i, y).unwrap().graft(i + j - 1, z).unwrap();
        let right = x.graft(i, &y.graft(j, z).unwrap()).unwrap();
        rec.seq
            .check(left, right, || format!("x={x} y={y} z={z} i={i} j={j}"));
    }
    // Parallel associativity: (x ∘_i y) ∘_{j+m-1} z = (x ∘_j z) ∘_i y, i < j.
    if i < j && j <= x.arity() {
        let m = y.arity();
        let left = x.graft(i, y).unwrap().graft(j + m - 1, z).unwrap();
        let right = x.graft(j, z).unwrap().graft(i, y).unwrap();
        rec.par
            .check(left, right, || format!("x={x} y={y} z={z} i={i} j={j}"));
    }
    // Unit law.
    if i <= x.arity() {
        let one = OperadWord::unit(x.spec());
        rec.unit.check(x.graft(i, &one).unwrap(), x.clone(), || {
            format!("x={x} i={i}")
        });
        rec.unit
            .check(one.graft(1, x).unwrap(), x.clone(), || format!("x={x}"));
    }
}

/// Equivariance on one tuple: (x·σ) ∘_i (y·ν) = (x ∘_{σ_i} y) · (σ ∘_i ν).
fn check_equivariance(
    rec: &mut Recorders,
    x: &OperadWord,
    y: &OperadWord,
    sigma: &Permutation,
    nu: &Permutation,
    i: usize,
) {
    if i > x.arity() || sigma.degree() != x.arity() || nu.degree() != y.arity() {
        return;
    }
    let left = x
        .act(sigma)
        .unwrap()
        .graft(i, &y.act(nu).unwrap())
        .unwrap();
    let si = sigma.images()[i - 1];
    let right = x
        .graft(si, y)
        .unwrap()
        .act(&sigma.pm_graft(i, nu).unwrap())
        .unwrap();
    rec.equi
        .check(left, right, || format!("x={x} y={y} σ={sigma} ν={nu} i={i}"));
}

/// Exhaustive sweep of the four operad laws over every word of arity
/// `1..=arity_cap` with letters `0..=letter_cap`.
pub fn exhaustive_suite(spec: MonoidSpec, arity_cap: usize, letter_cap: u64) -> SuiteReport {
    let mut rec = Recorders::new();

    let words: Vec<OperadWord> = (1..=arity_cap)
        .flat_map(|a| words_of_arity(spec, a, letter_cap))
        .collect();
    let perms: Vec<Vec<Permutation>> = (0..=arity_cap)
        .map(|n| if n == 0 { vec![] } else { Permutation::all(n) })
        .collect();

    for x in &words {
        for y in &words {
            for z in &words {
                for i in 1..=x.arity() {
                    for j in 1..=y.arity() {
                        check_graft_laws(&mut rec, x, y, z, i, j);
                    }
                }
            }
        }
    }
    // Equivariance over every permutation pair.
    for x in &words {
        for y in &words {
            for sigma in &perms[x.arity()] {
                for nu in &perms[y.arity()] {
                    for i in 1..=x.arity() {
                        check_equivariance(&mut rec, x, y, sigma, nu, i);
                    }
                }
            }
        }
    }

    rec.finish()
}

fn random_word(rng: &mut ChaCha8Rng, spec: MonoidSpec, max_arity: usize) -> OperadWord {
    let arity = rng.gen_range(1..=max_arity);
    let cap = match spec {
        MonoidSpec::CyclicNat(l) => l - 1,
        _ => 6,
    };
    let letters = (0..arity).map(|_| rng.gen_range(0..=cap)).collect();
    OperadWord::new(spec, letters).unwrap()
}

fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
    let mut images: Vec<usize> = (1..=n).collect();
    for i in (1..n).rev() {
        images.swap(i, rng.gen_range(0..=i));
    }
    Permutation::new(images).unwrap()
}

/// Seeded random sampling of the four laws, `cases` tuples.
pub fn random_suite(spec: MonoidSpec, seed: u64, cases: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rec = Recorders::new();

    for _ in 0..cases {
        let x = random_word(&mut rng, spec, 6);
        let y = random_word(&mut rng, spec, 6);
        let z = random_word(&mut rng, spec, 6);
        let i = rng.gen_range(1..=x.arity());
        let j = rng.gen_range(1..=y.arity());
        let sigma = random_permutation(&mut rng, x.arity());
        let nu = random_permutation(&mut rng, y.arity());
        check_graft_laws(&mut rec, &x, &y, &z, i, j);
        check_equivariance(&mut rec, &x, &y, &sigma, &nu, i);
    }

    rec.finish()
}

/// The permutation operad is itself an operad: check its three laws
/// exhaustively up to `degree_cap`.
pub fn pm_suite(degree_cap: usize) -> SuiteReport {
    let mut seq = Recorder::new("pm sequential associativity");
    let mut par = Recorder::new("pm parallel associativity");
    let mut unit = Recorder::new("pm unit");

    let perms: Vec<Permutation> = (1..=degree_cap).flat_map(Permutation::all).collect();
    let id1 = Permutation::identity(1);
    for x in &perms {
        for i in 1..=x.degree() {
            unit.check(x.pm_graft(i, &id1).unwrap(), x.clone(), || format!("σ={x}"));
        }
        unit.check(id1.pm_graft(1, x).unwrap(), x.clone(), || format!("σ={x}"));
        for y in &perms {
            for z in &perms {
                for i in 1..=x.degree() {
                    for j in 1..=y.degree() {
                        let left = x.pm_graft(i, y).unwrap().pm_graft(i + j - 1, z).unwrap();
                        let right = x.pm_graft(i, &y.pm_graft(j, z).unwrap()).unwrap();
                        seq.check(left, right, || format!("σ={x} ν={y} τ={z} i={i} j={j}"));
                    }
                    for jj in (i + 1)..=x.degree() {
                        let m = y.degree();
                        let left = x.pm_graft(i, y).unwrap().pm_graft(jj + m - 1, z).unwrap();
                        let right = x.pm_graft(jj, z).unwrap().pm_graft(i, y).unwrap();
                        par.check(left, right, || format!("σ={x} ν={y} τ={z} i={i} j={jj}"));
                    }
                }
            }
        }
    }

    SuiteReport {
        laws: vec![seq.finish(), par.finish(), unit.finish()],
    }
}

/// Functoriality of letterwise morphism lifting: it commutes with grafting
/// and with the symmetric-group action, and reduction mod `l` is onto the
/// words with letters below `l`.
pub fn functoriality_suite(modulus: u64, arity_cap: usize, letter_cap: u64) -> SuiteReport {
    use crate::monoid::MonoidMorphism;
    use crate::word::lift_morphism;

    let src = MonoidSpec::AdditiveNat;
    let theta = MonoidMorphism::reduce_mod(src, modulus).unwrap();
    let mut graft_law = Recorder::new("lift commutes with graft");
    let mut act_law = Recorder::new("lift commutes with action");
    let mut onto = Recorder::new("reduction lift is onto");

    let words: Vec<OperadWord> = (1..=arity_cap)
        .flat_map(|a| words_of_arity(src, a, letter_cap))
        .collect();
    for x in &words {
        for sigma in Permutation::all(x.arity()) {
            act_law.check(
                lift_morphism(&theta, &x.act(&sigma).unwrap()).unwrap(),
                lift_morphism(&theta, x).unwrap().act(&sigma).unwrap(),
                || format!("x={x} σ={sigma}"),
            );
        }
        for y in &words {
            for i in 1..=x.arity() {
                graft_law.check(
                    lift_morphism(&theta, &x.graft(i, y).unwrap()).unwrap(),
                    lift_morphism(&theta, x)
                        .unwrap()
                        .graft(i, &lift_morphism(&theta, y).unwrap())
                        .unwrap(),
                    || format!("x={x} y={y} i={i}"),
                );
            }
        }
    }
    // Surjectivity at each arity: every word over the cyclic target is hit.
    for n in 1..=arity_cap {
        let mut images: std::collections::BTreeSet<OperadWord> = std::collections::BTreeSet::new();
        for x in words_of_arity(src, n, letter_cap.max(modulus - 1)) {
            images.insert(lift_morphism(&theta, &x).unwrap());
        }
        let target_count = (modulus as u128).pow(n as u32) as usize;
        onto.check(images.len(), target_count, || format!("arity {n}"));
    }

    SuiteReport {
        laws: vec![graft_law.finish(), act_law.finish(), onto.finish()],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_small_domains_pass() {
        for spec in [
            MonoidSpec::AdditiveNat,
            MonoidSpec::CyclicNat(3),
            MonoidSpec::MultiplicativeNat,
        ] {
            let report = exhaustive_suite(spec, 3, 2);
            for law in &report.laws {
                assert!(law.passed(), "{spec} {}: {:?}", law.law, law.failure);
                assert!(law.cases > 0);
            }
        }
    }

    #[test]
    fn random_suites_pass() {
        for spec in [
            MonoidSpec::AdditiveNat,
            MonoidSpec::CyclicNat(2),
            MonoidSpec::MultiplicativeNat,
        ] {
            let report = random_suite(spec, 0xC0FFEE, 2000);
            assert!(report.passed(), "{spec}: {:?}", report.laws);
        }
    }

    #[test]
    fn pm_is_an_operad() {
        let report = pm_suite(4);
        assert!(report.passed(), "{:?}", report.laws);
    }

    #[test]
    fn lifts_are_functorial() {
        for l in [2, 3] {
            let report = functoriality_suite(l, 3, 3);
            assert!(report.passed(), "mod {l}: {:?}", report.laws);
        }
    }
}
