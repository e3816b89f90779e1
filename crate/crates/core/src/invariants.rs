//! Seifert invariants of orientable Seifert fibered 3-manifolds.
//!
//! A descriptor `(g, o1 | (q1,p1), ..., (qk,pk), (1,b))` is stored as a base
//! surface, the ordered list of exceptional pairs, and the integer term `b`.
//! Pairs with `q = 1` may appear in the list; they are only folded into `b`
//! by [`SeifertInvariants::normalize`], never implicitly.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::admissibility;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("fiber order must be positive, got {q}")]
    NonPositiveOrder { q: BigInt },
    #[error("pair ({q},{p}) is not coprime")]
    NotCoprime { q: BigInt, p: BigInt },
    #[error("a non-orientable base surface has genus at least 1")]
    NonOrientableGenusZero,
}

/// Underlying surface of the base orbifold.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BaseSurface {
    genus: BigUint,
    orientable: bool,
}

impl BaseSurface {
    pub fn orientable(genus: impl Into<BigUint>) -> Self {
        Self {
            genus: genus.into(),
            orientable: true,
        }
    }

    /// Non-orientable surface of genus `k` (connected sum of `k` projective planes).
    pub fn non_orientable(genus: impl Into<BigUint>) -> Result<Self, InvariantError> {
        let genus = genus.into();
        if genus.is_zero() {
            return Err(InvariantError::NonOrientableGenusZero);
        }
        Ok(Self {
            genus,
            orientable: false,
        })
    }

    pub fn genus(&self) -> &BigUint {
        &self.genus
    }

    pub fn is_orientable(&self) -> bool {
        self.orientable
    }

    /// Euler characteristic of the closed underlying surface.
    pub fn euler_characteristic(&self) -> BigInt {
        let g = BigInt::from(self.genus.clone());
        if self.orientable {
            BigInt::from(2) - g * 2
        } else {
            BigInt::from(2) - g
        }
    }
}

/// One `(q, p)` pair: a fiber of order `q` with invariant `p`.
///
/// Field order makes the derived ordering sort by `q`, then `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeifertPair {
    q: BigInt,
    p: BigInt,
}

impl SeifertPair {
    pub fn new(q: impl Into<BigInt>, p: impl Into<BigInt>) -> Result<Self, InvariantError> {
        let (q, p) = (q.into(), p.into());
        if !q.is_positive() {
            return Err(InvariantError::NonPositiveOrder { q });
        }
        if !q.gcd(&p).is_one() {
            return Err(InvariantError::NotCoprime { q, p });
        }
        Ok(Self { q, p })
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    /// `p / q` as an exact rational.
    pub fn slope(&self) -> Rational {
        rational::ratio(&self.p, &self.q)
    }
}

impl fmt::Display for SeifertPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.q, self.p)
    }
}

/// Geometry of an admissible manifold, read off the sign of the orbifold
/// Euler characteristic of the base.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeometryType {
    S2xR,
    E3,
    H2xR,
    Other,
}

impl GeometryType {
    pub fn as_str(self) -> &'static str {
        match self {
            GeometryType::S2xR => "S2xR",
            GeometryType::E3 => "E3",
            GeometryType::H2xR => "H2xR",
            GeometryType::Other => "Other",
        }
    }
}

impl fmt::Display for GeometryType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A Seifert fibered manifold descriptor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeifertInvariants {
    base: BaseSurface,
    pairs: Vec<SeifertPair>,
    b: BigInt,
}

impl SeifertInvariants {
    pub fn new(base: BaseSurface, pairs: Vec<SeifertPair>, b: impl Into<BigInt>) -> Self {
        Self {
            base,
            pairs,
            b: b.into(),
        }
    }

    /// `(g, o1 | (2,1) x n, (1, -n/2))`, the admissible family. `n` must be even.
    pub fn admissible_family(genus: u64, n: usize) -> Self {
        assert!(n.is_multiple_of(2), "order-two fibers come in pairs");
        let pair = SeifertPair::new(2, 1).expect("(2,1) is coprime");
        Self::new(
            BaseSurface::orientable(genus),
            vec![pair; n],
            -BigInt::from(n / 2),
        )
    }

    pub fn base(&self) -> &BaseSurface {
        &self.base
    }

    pub fn pairs(&self) -> &[SeifertPair] {
        &self.pairs
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    /// Number of pairs with `q = 2`. Meaningful on normalized descriptors.
    pub fn order_two_count(&self) -> usize {
        self.pairs
            .iter()
            .filter(|pair| pair.q == BigInt::from(2))
            .count()
    }

    pub fn is_normalized(&self) -> bool {
        self.pairs
            .iter()
            .all(|pair| pair.q > BigInt::one() && pair.p.is_positive() && pair.p < pair.q)
    }

    /// Canonical form: every pair has `q >= 2` and `0 < p < q`, `(1, .)` pairs
    /// are folded into `b`, and pairs are sorted by `(q, p)`.
    pub fn normalize(&self) -> SeifertInvariants {
        let mut b = self.b.clone();
        let mut pairs = Vec::with_capacity(self.pairs.len());
        for pair in &self.pairs {
            let (shift, rem) = pair.p.div_mod_floor(&pair.q);
            b += shift;
            if !rem.is_zero() {
                pairs.push(SeifertPair {
                    q: pair.q.clone(),
                    p: rem,
                });
            }
        }
        pairs.sort();
        SeifertInvariants {
            base: self.base.clone(),
            pairs,
            b,
        }
    }

    /// `e = -(b + sum p_i / q_i)`.
    pub fn euler_number(&self) -> Rational {
        let sum = self
            .pairs
            .iter()
            .fold(rational::from_int(self.b.clone()), |acc, pair| {
                acc + pair.slope()
            });
        -sum
    }

    /// `chi(B_U) - sum (1 - 1/q_i)`. Pairs with `q = 1` contribute nothing, so
    /// the value is the same before and after normalization.
    pub fn orbifold_euler_characteristic(&self) -> Rational {
        let one = rational::from_int(1);
        self.pairs.iter().fold(
            rational::from_int(self.base.euler_characteristic()),
            |acc, pair| acc - (&one - rational::ratio(&BigInt::one(), &pair.q)),
        )
    }

    /// Geometry of an admissible manifold. Anything with `e != 0` or failing one
    /// of the admissibility conditions is reported as [`GeometryType::Other`].
    pub fn geometry(&self) -> GeometryType {
        let normalized = self.normalize();
        if !normalized.euler_number().is_zero()
            || !admissibility::condition_violations(&normalized).is_empty()
        {
            return GeometryType::Other;
        }
        let chi = normalized.orbifold_euler_characteristic();
        if chi.is_positive() {
            GeometryType::S2xR
        } else if chi.is_zero() {
            GeometryType::E3
        } else {
            GeometryType::H2xR
        }
    }

    /// `(g, o1|)` with `b = 0` after normalization, i.e. `S^1 x S`.
    pub fn is_trivial_product(&self) -> bool {
        let normalized = self.normalize();
        normalized.base.orientable && normalized.pairs.is_empty() && normalized.b.is_zero()
    }
}
