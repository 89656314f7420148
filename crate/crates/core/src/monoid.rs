//! Ground monoids: additive naturals, cyclic quotients, multiplicative
//! naturals.
//!
//! Values are plain `u64`s interpreted through a [`MonoidSpec`]; arithmetic on
//! the two infinite carriers is overflow-checked and reports an error instead
//! of wrapping.  Adding a new ground monoid means adding a `MonoidSpec`
//! variant and extending `product`, `unit` and `carrier_upper_bound`; the
//! three built-ins are the only ones shipped.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonoidError {
    #[error("integer overflow computing {a} {op} {b}")]
    Overflow { a: u64, b: u64, op: &'static str },
    #[error("monoid mismatch: expected {expected}, found {found}")]
    SpecMismatch {
        expected: MonoidSpec,
        found: MonoidSpec,
    },
    #[error("value {value} is outside the carrier of {spec}")]
    OutsideCarrier { value: u64, spec: MonoidSpec },
    #[error("cyclic modulus must be at least 1")]
    InvalidModulus,
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("cannot parse monoid spec `{0}` (expected `add`, `cyclic:<L>` or `mult`)")]
    Parse(String),
}

/// One of the three ground monoids.
///
/// * `AdditiveNat` — nonnegative integers under addition, unit 0.
/// * `CyclicNat(l)` — `{0, …, l-1}` under addition mod `l`, unit 0.
/// * `MultiplicativeNat` — nonnegative integers under multiplication, unit 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MonoidSpec {
    AdditiveNat,
    CyclicNat(u64),
    MultiplicativeNat,
}

impl MonoidSpec {
    pub fn cyclic(modulus: u64) -> Result<Self, MonoidError> {
        if modulus == 0 {
            return Err(MonoidError::InvalidModulus);
        }
        Ok(MonoidSpec::CyclicNat(modulus))
    }

    pub fn unit(&self) -> u64 {
        match self {
            MonoidSpec::AdditiveNat | MonoidSpec::CyclicNat(_) => 0,
            MonoidSpec::MultiplicativeNat => 1,
        }
    }

    pub fn contains(&self, value: u64) -> bool {
        match self {
            MonoidSpec::CyclicNat(l) => value < *l,
            _ => true,
        }
    }

    pub fn product(&self, a: u64, b: u64) -> Result<u64, MonoidError> {
        match self {
            MonoidSpec::AdditiveNat => a
                .checked_add(b)
                .ok_or(MonoidError::Overflow { a, b, op: "+" }),
            MonoidSpec::CyclicNat(l) => {
                if *l == 0 {
                    return Err(MonoidError::InvalidModulus);
                }
                // Operands are already reduced, so the sum fits in u128.
                Ok(((a as u128 + b as u128) % (*l as u128)) as u64)
            }
            MonoidSpec::MultiplicativeNat => a
                .checked_mul(b)
                .ok_or(MonoidError::Overflow { a, b, op: "*" }),
        }
    }

    /// Right regularity: `y * x = z * x` implies `y = z`.
    ///
    /// For a cyclic monoid the check is exhaustive over the full carrier and
    /// therefore exact.  For the two infinite monoids the triple loop runs
    /// over `{0, …, probe_bound}`; this decides the additive monoid correctly
    /// (addition is cancellative on every segment) and finds the
    /// multiplicative counterexample `y·0 = z·0` as soon as `probe_bound >= 1`.
    pub fn is_right_regular(&self, probe_bound: u64) -> bool {
        let bound = match self {
            MonoidSpec::CyclicNat(l) => l.saturating_sub(1),
            _ => probe_bound,
        };
        for x in 0..=bound {
            for y in 0..=bound {
                for z in (y + 1)..=bound {
                    let yx = self.product(y, x);
                    let zx = self.product(z, x);
                    match (yx, zx) {
                        (Ok(a), Ok(b)) if a == b => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    pub fn parse(s: &str) -> Result<Self, MonoidError> {
        match s {
            "add" => Ok(MonoidSpec::AdditiveNat),
            "mult" => Ok(MonoidSpec::MultiplicativeNat),
            _ => {
                if let Some(rest) = s.strip_prefix("cyclic:") {
                    let l: u64 = rest.parse().map_err(|_| MonoidError::Parse(s.into()))?;
                    MonoidSpec::cyclic(l)
                } else {
                    Err(MonoidError::Parse(s.into()))
                }
            }
        }
    }
}

impl fmt::Display for MonoidSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonoidSpec::AdditiveNat => write!(f, "add"),
            MonoidSpec::CyclicNat(l) => write!(f, "cyclic:{l}"),
            MonoidSpec::MultiplicativeNat => write!(f, "mult"),
        }
    }
}

/// A monoid value tagged with the monoid it lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MonoidElement {
    pub spec: MonoidSpec,
    pub value: u64,
}

impl MonoidElement {
    pub fn new(spec: MonoidSpec, value: u64) -> Result<Self, MonoidError> {
        if !spec.contains(value) {
            return Err(MonoidError::OutsideCarrier { value, spec });
        }
        Ok(MonoidElement { spec, value })
    }

    pub fn unit(spec: MonoidSpec) -> Self {
        MonoidElement {
            spec,
            value: spec.unit(),
        }
    }
}

/// Product of two elements of the same monoid.
pub fn product(a: &MonoidElement, b: &MonoidElement) -> Result<MonoidElement, MonoidError> {
    if a.spec != b.spec {
        return Err(MonoidError::SpecMismatch {
            expected: a.spec,
            found: b.spec,
        });
    }
    Ok(MonoidElement {
        spec: a.spec,
        value: a.spec.product(a.value, b.value)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MorphismKind {
    Identity,
    /// Reduction mod `l`, valid additive -> cyclic(l) and cyclic(k·l) -> cyclic(l).
    ReduceMod(u64),
}

/// A monoid morphism between two ground monoids.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonoidMorphism {
    pub source: MonoidSpec,
    pub target: MonoidSpec,
    pub kind: MorphismKind,
}

impl MonoidMorphism {
    pub fn identity(spec: MonoidSpec) -> Self {
        MonoidMorphism {
            source: spec,
            target: spec,
            kind: MorphismKind::Identity,
        }
    }

    pub fn reduce_mod(source: MonoidSpec, modulus: u64) -> Result<Self, MonoidError> {
        if modulus == 0 {
            return Err(MonoidError::InvalidModulus);
        }
        match source {
            MonoidSpec::AdditiveNat => {}
            MonoidSpec::CyclicNat(k) if k % modulus == 0 => {}
            _ => {
                return Err(MonoidError::InvalidMorphism(format!(
                    "reduction mod {modulus} is not defined on {source}"
                )))
            }
        }
        Ok(MonoidMorphism {
            source,
            target: MonoidSpec::CyclicNat(modulus),
            kind: MorphismKind::ReduceMod(modulus),
        })
    }

    pub fn apply_value(&self, value: u64) -> u64 {
        match self.kind {
            MorphismKind::Identity => value,
            MorphismKind::ReduceMod(l) => value % l,
        }
    }

    pub fn apply(&self, a: &MonoidElement) -> Result<MonoidElement, MonoidError> {
        if a.spec != self.source {
            return Err(MonoidError::SpecMismatch {
                expected: self.source,
                found: a.spec,
            });
        }
        MonoidElement::new(self.target, self.apply_value(a.value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn add(v: u64) -> MonoidElement {
        MonoidElement::new(MonoidSpec::AdditiveNat, v).unwrap()
    }

    #[test]
    fn products_match_each_ground_monoid() {
        let c3 = MonoidSpec::CyclicNat(3);
        assert_eq!(product(&add(2), &add(3)).unwrap().value, 5);
        assert_eq!(
            product(
                &MonoidElement::new(c3, 2).unwrap(),
                &MonoidElement::new(c3, 2).unwrap()
            )
            .unwrap()
            .value,
            1
        );
        let m = MonoidSpec::MultiplicativeNat;
        for x in 0..6 {
            let one = MonoidElement::unit(m);
            let e = MonoidElement::new(m, x).unwrap();
            assert_eq!(product(&one, &e).unwrap().value, x);
        }
    }

    #[test]
    fn units() {
        assert_eq!(MonoidSpec::AdditiveNat.unit(), 0);
        assert_eq!(MonoidSpec::CyclicNat(5).unit(), 0);
        assert_eq!(MonoidSpec::MultiplicativeNat.unit(), 1);
    }

    #[test]
    fn overflow_is_an_error() {
        assert!(matches!(
            MonoidSpec::AdditiveNat.product(u64::MAX, 1),
            Err(MonoidError::Overflow { .. })
        ));
        assert!(matches!(
            MonoidSpec::MultiplicativeNat.product(u64::MAX, 2),
            Err(MonoidError::Overflow { .. })
        ));
    }

    #[test]
    fn spec_mismatch_is_an_error() {
        let a = add(1);
        let b = MonoidElement::new(MonoidSpec::CyclicNat(3), 1).unwrap();
        assert!(matches!(
            product(&a, &b),
            Err(MonoidError::SpecMismatch { .. })
        ));
    }

    #[test]
    fn right_regularity() {
        assert!(MonoidSpec::AdditiveNat.is_right_regular(20));
        assert!(MonoidSpec::CyclicNat(4).is_right_regular(0));
        assert!(!MonoidSpec::MultiplicativeNat.is_right_regular(5));
        // Every cyclic monoid is right regular; exhaustive up to modulus 12.
        for l in 1..=12 {
            assert!(MonoidSpec::CyclicNat(l).is_right_regular(0), "modulus {l}");
        }
    }

    #[test]
    fn morphism_examples() {
        let m3 = MonoidMorphism::reduce_mod(MonoidSpec::AdditiveNat, 3).unwrap();
        assert_eq!(m3.apply(&add(7)).unwrap().value, 1);
        let m2 = MonoidMorphism::reduce_mod(MonoidSpec::AdditiveNat, 2).unwrap();
        assert_eq!(m2.apply(&add(4)).unwrap().value, 0);
        let id = MonoidMorphism::identity(MonoidSpec::AdditiveNat);
        assert_eq!(id.apply(&add(9)).unwrap().value, 9);
        // cyclic(6) -> cyclic(3) is fine, cyclic(5) -> cyclic(3) is not.
        assert!(MonoidMorphism::reduce_mod(MonoidSpec::CyclicNat(6), 3).is_ok());
        assert!(MonoidMorphism::reduce_mod(MonoidSpec::CyclicNat(5), 3).is_err());
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["add", "cyclic:7", "mult"] {
            assert_eq!(MonoidSpec::parse(s).unwrap().to_string(), s);
        }
        assert!(MonoidSpec::parse("cyclic:0").is_err());
        assert!(MonoidSpec::parse("bogus").is_err());
    }

    fn spec_strategy() -> impl Strategy<Value = MonoidSpec> {
        prop_oneof![
            Just(MonoidSpec::AdditiveNat),
            (1u64..8).prop_map(MonoidSpec::CyclicNat),
            Just(MonoidSpec::MultiplicativeNat),
        ]
    }

    proptest! {
        #[test]
        fn associativity(spec in spec_strategy(), a in 0u64..50, b in 0u64..50, c in 0u64..50) {
            let reduce = |v: u64| match spec {
                MonoidSpec::CyclicNat(l) => v % l,
                _ => v,
            };
            let (a, b, c) = (reduce(a), reduce(b), reduce(c));
            let left = spec.product(spec.product(a, b).unwrap(), c).unwrap();
            let right = spec.product(a, spec.product(b, c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn unit_laws(spec in spec_strategy(), a in 0u64..50) {
            let a = match spec {
                MonoidSpec::CyclicNat(l) => a % l,
                _ => a,
            };
            let e = spec.unit();
            prop_assert_eq!(spec.product(e, a).unwrap(), a);
            prop_assert_eq!(spec.product(a, e).unwrap(), a);
        }

        #[test]
        fn reduce_mod_is_a_morphism(l in 1u64..8, a in 0u64..60, b in 0u64..60) {
            let theta = MonoidMorphism::reduce_mod(MonoidSpec::AdditiveNat, l).unwrap();
            let src = MonoidSpec::AdditiveNat;
            let tgt = MonoidSpec::CyclicNat(l);
            prop_assert_eq!(theta.apply_value(src.unit()), tgt.unit());
            prop_assert_eq!(
                theta.apply_value(src.product(a, b).unwrap()),
                tgt.product(theta.apply_value(a), theta.apply_value(b)).unwrap()
            );
        }
    }
}
