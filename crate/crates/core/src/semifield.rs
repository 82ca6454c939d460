//! Commutative semifields and the two built-in instances.
//!
//! A semifield is a commutative semiring `⟨K, ⊕, ⊗, 0, 1⟩` whose non-zero
//! elements form a commutative group under `⊗`. The weighted algorithms in
//! this crate additionally require the semifield to be *zero-sum-free*
//! (`x ⊕ y = 0` forces `x = y = 0`), which guarantees that the normalizer of
//! a non-empty successor set is invertible.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Element type of a commutative, multiplicatively invertible semiring.
///
/// `Eq` is semifield equality and must be exact: power-state deduplication in
/// weighted determinization compares residual vectors with it.
pub trait Semifield: Clone + Eq + Hash + fmt::Debug {
    /// ⊕ identity; also the implicit weight of an absent transition.
    fn zero() -> Self;
    /// ⊗ identity.
    fn one() -> Self;
    fn plus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    /// ⊗-inverse of a non-zero element. Panics on zero.
    fn times_inv(&self) -> Self;
    /// Whether `x ⊕ y = 0` implies `x = y = 0` in this semifield.
    const ZERO_SUM_FREE: bool;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// The Boolean semifield `⟨{0,1}, ∨, ∧, 0, 1⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Boolean(pub bool);

impl Semifield for Boolean {
    fn zero() -> Self {
        Boolean(false)
    }

    fn one() -> Self {
        Boolean(true)
    }

    fn plus(&self, rhs: &Self) -> Self {
        Boolean(self.0 || rhs.0)
    }

    fn times(&self, rhs: &Self) -> Self {
        Boolean(self.0 && rhs.0)
    }

    fn times_inv(&self) -> Self {
        assert!(self.0, "Boolean zero has no ⊗-inverse");
        *self
    }

    const ZERO_SUM_FREE: bool = true;
}

impl fmt::Display for Boolean {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if self.0 { 1 } else { 0 })
    }
}

/// The tropical semifield `⟨ℚ ∪ {∞}, min, +, ∞, 0⟩` over exact rationals.
///
/// Weights are exact `p/q` rationals rather than floats: residual-vector
/// equality decides termination of weighted determinization, and inexact
/// comparison would merge or split power states erratically.
///
/// The derived `Ord` places every finite value below `Infinity`, which makes
/// `min` the correct ⊕.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tropical {
    Finite(BigRational),
    Infinity,
}

impl Tropical {
    pub fn from_int(v: i64) -> Self {
        Tropical::Finite(BigRational::from_integer(BigInt::from(v)))
    }

    /// `num/den` as an exact rational. Panics when `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Tropical::Finite(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Tropical::Finite(_))
    }
}

impl Semifield for Tropical {
    fn zero() -> Self {
        Tropical::Infinity
    }

    fn one() -> Self {
        Tropical::from_int(0)
    }

    fn plus(&self, rhs: &Self) -> Self {
        self.min(rhs).clone()
    }

    fn times(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (Tropical::Infinity, _) | (_, Tropical::Infinity) => Tropical::Infinity,
            (Tropical::Finite(a), Tropical::Finite(b)) => Tropical::Finite(a + b),
        }
    }

    fn times_inv(&self) -> Self {
        match self {
            Tropical::Infinity => panic!("tropical zero (∞) has no ⊗-inverse"),
            Tropical::Finite(a) => Tropical::Finite(-a),
        }
    }

    const ZERO_SUM_FREE: bool = true;
}

impl fmt::Display for Tropical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tropical::Infinity => write!(f, "inf"),
            Tropical::Finite(r) => write!(f, "{r}"),
        }
    }
}
