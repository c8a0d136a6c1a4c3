//! The semiring interface and the concrete instances used by the rest of the
//! crate.
//!
//! A semiring `(K, +, ·, 0, 1)` is a commutative additive monoid and a
//! multiplicative monoid glued together by distributivity, with `0`
//! annihilating products. Every weight, coefficient, and value in this crate
//! lives in some semiring:
//!
//! * [`bool`] — the Boolean semiring (or / and),
//! * [`BigUint`] — the natural numbers with arbitrary precision,
//! * [`words::WordSet`] — finite languages under union / concatenation,
//! * `(A, B)` — the direct product of two semirings, component-wise.
//!
//! [`check_semiring_axioms`] evaluates every axiom over a finite sample set
//! and reports violations with witnesses; the property suites run it against
//! randomized samples for each instance above.

use std::fmt::Debug;

use num_bigint::BigUint;
use num_traits::{One, Zero};

pub mod series;
pub mod words;

/// A semiring element.
///
/// `add` must be associative and commutative with identity [`zero`];
/// `mul` must be associative with identity [`one`], distribute over `add`
/// on both sides, and be annihilated by `zero`.
///
/// [`zero`]: Semiring::zero
/// [`one`]: Semiring::one
pub trait Semiring: Clone + Debug + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }
}

/// The Boolean semiring: addition is `||`, multiplication is `&&`.
impl Semiring for bool {
    fn zero() -> Self {
        false
    }

    fn one() -> Self {
        true
    }

    fn add(&self, other: &Self) -> Self {
        *self || *other
    }

    fn mul(&self, other: &Self) -> Self {
        *self && *other
    }

    fn is_zero(&self) -> bool {
        !*self
    }
}

/// The semiring of natural numbers, at arbitrary precision.
///
/// Density values grow exponentially for some languages, so fixed-width
/// integers are not an option here.
impl Semiring for BigUint {
    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

/// The direct product of two semirings, with component-wise operations.
impl<A: Semiring, B: Semiring> Semiring for (A, B) {
    fn zero() -> Self {
        (A::zero(), B::zero())
    }

    fn one() -> Self {
        (A::one(), B::one())
    }

    fn add(&self, other: &Self) -> Self {
        (self.0.add(&other.0), self.1.add(&other.1))
    }

    fn mul(&self, other: &Self) -> Self {
        (self.0.mul(&other.0), self.1.mul(&other.1))
    }
}

/// One of the defining semiring axioms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    AddAssociative,
    AddCommutative,
    AddIdentity,
    MulAssociative,
    MulIdentity,
    LeftDistributive,
    RightDistributive,
    ZeroAnnihilates,
}

impl Axiom {
    pub const ALL: [Axiom; 8] = [
        Axiom::AddAssociative,
        Axiom::AddCommutative,
        Axiom::AddIdentity,
        Axiom::MulAssociative,
        Axiom::MulIdentity,
        Axiom::LeftDistributive,
        Axiom::RightDistributive,
        Axiom::ZeroAnnihilates,
    ];
}

/// A failed axiom instance together with the elements that witnessed it.
#[derive(Debug, Clone)]
pub struct AxiomViolation<K> {
    pub axiom: Axiom,
    pub witness: Vec<K>,
}

/// Result of evaluating the semiring axioms over a sample set.
#[derive(Debug, Clone)]
pub struct AxiomReport<K> {
    violations: Vec<AxiomViolation<K>>,
}

impl<K> AxiomReport<K> {
    pub fn all_passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[AxiomViolation<K>] {
        &self.violations
    }
}

/// Evaluates every semiring axiom over all tuples drawn from `samples`.
///
/// At most one witness is recorded per axiom. Identity and annihilation
/// axioms range over single elements, commutativity over pairs, and
/// associativity and distributivity over triples, so the cost is cubic in
/// the sample count.
///
/// Panics if `samples` is empty.
pub fn check_semiring_axioms<K: Semiring>(samples: &[K]) -> AxiomReport<K> {
    assert!(!samples.is_empty(), "axiom check needs at least one sample");

    let zero = K::zero();
    let one = K::one();
    let mut violations = Vec::new();
    let mut record = |axiom: Axiom, witness: &[&K]| {
        violations.push(AxiomViolation {
            axiom,
            witness: witness.iter().map(|k| (*k).clone()).collect(),
        });
    };

    'unary: for axiom in [Axiom::AddIdentity, Axiom::MulIdentity, Axiom::ZeroAnnihilates] {
        for a in samples {
            let holds = match axiom {
                Axiom::AddIdentity => zero.add(a) == *a && a.add(&zero) == *a,
                Axiom::MulIdentity => one.mul(a) == *a && a.mul(&one) == *a,
                Axiom::ZeroAnnihilates => zero.mul(a) == zero && a.mul(&zero) == zero,
                _ => unreachable!(),
            };
            if !holds {
                record(axiom, &[a]);
                continue 'unary;
            }
        }
    }

    'pairs: for a in samples {
        for b in samples {
            if a.add(b) != b.add(a) {
                record(Axiom::AddCommutative, &[a, b]);
                break 'pairs;
            }
        }
    }

    for axiom in [
        Axiom::AddAssociative,
        Axiom::MulAssociative,
        Axiom::LeftDistributive,
        Axiom::RightDistributive,
    ] {
        'triples: for a in samples {
            for b in samples {
                for c in samples {
                    let holds = match axiom {
                        Axiom::AddAssociative => a.add(&b.add(c)) == a.add(b).add(c),
                        Axiom::MulAssociative => a.mul(&b.mul(c)) == a.mul(b).mul(c),
                        Axiom::LeftDistributive => a.mul(&b.add(c)) == a.mul(b).add(&a.mul(c)),
                        Axiom::RightDistributive => a.add(b).mul(c) == a.mul(c).add(&b.mul(c)),
                        _ => unreachable!(),
                    };
                    if !holds {
                        record(axiom, &[a, b, c]);
                        break 'triples;
                    }
                }
            }
        }
    }

    AxiomReport { violations }
}
