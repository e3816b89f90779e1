//! Integer 2x2 matrices as mapping classes of the torus.
//!
//! Matrices act on column vectors. On a framed boundary torus the ordered basis
//! is (fiber class, section class).

use std::fmt;
use std::ops::{Mul, Neg};

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix with determinant {det} is not invertible over the integers")]
    NotInvertible { det: i64 },
    #[error("matrix {matrix} is not an involution")]
    NotInvolution { matrix: IntMatrix2 },
    #[error("integer overflow in matrix arithmetic")]
    Overflow,
}

/// Row-major `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

/// Integer column vector.
pub type Vec2 = [i64; 2];

impl IntMatrix2 {
    pub const IDENTITY: IntMatrix2 = IntMatrix2::new(1, 0, 0, 1);
    pub const MINUS_IDENTITY: IntMatrix2 = IntMatrix2::new(-1, 0, 0, -1);
    /// Representative of the reflection class, `diag(1, -1)`.
    pub const REFLECTION: IntMatrix2 = IntMatrix2::new(1, 0, 0, -1);
    /// Representative of the coordinate-swap class.
    pub const SWAP: IntMatrix2 = IntMatrix2::new(0, 1, 1, 0);

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self { a, b, c, d }
    }

    /// Matrix whose columns are `first` and `second`.
    pub const fn from_columns(first: Vec2, second: Vec2) -> Self {
        Self::new(first[0], second[0], first[1], second[1])
    }

    pub fn entries(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn det(&self) -> i64 {
        self.checked_det().expect("determinant overflows i64")
    }

    pub fn checked_det(&self) -> Result<i64, MatrixError> {
        let det = i128::from(self.a) * i128::from(self.d) - i128::from(self.b) * i128::from(self.c);
        i64::try_from(det).map_err(|_| MatrixError::Overflow)
    }

    pub fn trace(&self) -> i64 {
        self.a.checked_add(self.d).expect("trace overflows i64")
    }

    pub fn is_unimodular(&self) -> bool {
        matches!(self.checked_det(), Ok(1) | Ok(-1))
    }

    pub fn checked_mul(&self, rhs: &IntMatrix2) -> Result<IntMatrix2, MatrixError> {
        let dot = |x: i64, y: i64, z: i64, w: i64| -> Result<i64, MatrixError> {
            let v = i128::from(x) * i128::from(y) + i128::from(z) * i128::from(w);
            i64::try_from(v).map_err(|_| MatrixError::Overflow)
        };
        Ok(IntMatrix2::new(
            dot(self.a, rhs.a, self.b, rhs.c)?,
            dot(self.a, rhs.b, self.b, rhs.d)?,
            dot(self.c, rhs.a, self.d, rhs.c)?,
            dot(self.c, rhs.b, self.d, rhs.d)?,
        ))
    }

    /// Inverse in GL2(Z); defined only when `|det| = 1`.
    pub fn inverse(&self) -> Result<IntMatrix2, MatrixError> {
        let det = self.checked_det()?;
        if det != 1 && det != -1 {
            return Err(MatrixError::NotInvertible { det });
        }
        let neg = |x: i64| x.checked_neg().ok_or(MatrixError::Overflow);
        let adj = IntMatrix2::new(self.d, neg(self.b)?, neg(self.c)?, self.a);
        if det == 1 {
            Ok(adj)
        } else {
            Ok(IntMatrix2::new(
                neg(adj.a)?,
                neg(adj.b)?,
                neg(adj.c)?,
                neg(adj.d)?,
            ))
        }
    }

    pub fn apply(&self, v: Vec2) -> Vec2 {
        [self.a * v[0] + self.b * v[1], self.c * v[0] + self.d * v[1]]
    }

    /// `self * x * self^-1`.
    pub fn conjugate(&self, x: &IntMatrix2) -> Result<IntMatrix2, MatrixError> {
        self.checked_mul(x)?.checked_mul(&self.inverse()?)
    }

    /// Homological involution test: `A * A = I`.
    pub fn is_involution(&self) -> bool {
        self.checked_mul(self)
            .is_ok_and(|square| square == IntMatrix2::IDENTITY)
    }

    /// Entrywise reduction into `{0, 1}`.
    pub fn mod2(&self) -> [i64; 4] {
        self.entries().map(|x| x.rem_euclid(2))
    }
}

impl Mul for IntMatrix2 {
    type Output = IntMatrix2;

    fn mul(self, rhs: IntMatrix2) -> IntMatrix2 {
        self.checked_mul(&rhs)
            .expect("matrix product overflows i64")
    }
}

impl Neg for IntMatrix2 {
    type Output = IntMatrix2;

    fn neg(self) -> IntMatrix2 {
        IntMatrix2::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl fmt::Display for IntMatrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

/// Conjugacy classes of involutions in GL2(Z).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InvolutionClassLabel {
    Identity,
    MinusIdentity,
    /// Class of `diag(1, -1)`.
    ReflType,
    /// Class of `[[0, 1], [1, 0]]`.
    AntiType,
}

impl InvolutionClassLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            InvolutionClassLabel::Identity => "Identity",
            InvolutionClassLabel::MinusIdentity => "MinusIdentity",
            InvolutionClassLabel::ReflType => "ReflType",
            InvolutionClassLabel::AntiType => "AntiType",
        }
    }

    pub fn representative(self) -> IntMatrix2 {
        match self {
            InvolutionClassLabel::Identity => IntMatrix2::IDENTITY,
            InvolutionClassLabel::MinusIdentity => IntMatrix2::MINUS_IDENTITY,
            InvolutionClassLabel::ReflType => IntMatrix2::REFLECTION,
            InvolutionClassLabel::AntiType => IntMatrix2::SWAP,
        }
    }
}

impl fmt::Display for InvolutionClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Classifies an involution by determinant, trace and reduction mod 2.
///
/// Over the integers a determinant-one involution is `I` or `-I`. A
/// determinant `-1` involution has trace 0 and is conjugate to `diag(1,-1)`
/// exactly when it reduces to the identity mod 2; otherwise it is conjugate to
/// the swap.
pub fn involution_class(m: &IntMatrix2) -> Result<InvolutionClassLabel, MatrixError> {
    if !m.is_involution() {
        return Err(MatrixError::NotInvolution { matrix: *m });
    }
    Ok(match *m {
        IntMatrix2::IDENTITY => InvolutionClassLabel::Identity,
        IntMatrix2::MINUS_IDENTITY => InvolutionClassLabel::MinusIdentity,
        _ if m.mod2() == [1, 0, 0, 1] => InvolutionClassLabel::ReflType,
        _ => InvolutionClassLabel::AntiType,
    })
}

/// Exhaustive search for `H` with `H * A * H^-1 = B` among unimodular matrices
/// with entries in `[-bound, bound]`.
///
/// Candidates are tried in order of their L1 distance from the identity, ties
/// broken lexicographically on `(a, b, c, d)`, so `A = B` always yields `I`.
#[derive(Debug, Clone)]
pub struct ConjugatorSearch {
    candidates: Vec<IntMatrix2>,
}

impl ConjugatorSearch {
    pub fn new(bound: u32) -> Self {
        let bound = i64::from(bound);
        let range = -bound..=bound;
        let mut candidates = Vec::new();
        for a in range.clone() {
            for b in range.clone() {
                for c in range.clone() {
                    for d in range.clone() {
                        let h = IntMatrix2::new(a, b, c, d);
                        if h.is_unimodular() {
                            candidates.push(h);
                        }
                    }
                }
            }
        }
        candidates.sort_by_key(|h| {
            let distance = (h.a - 1).abs() + h.b.abs() + h.c.abs() + (h.d - 1).abs();
            (distance, *h)
        });
        Self { candidates }
    }

    pub fn candidates(&self) -> &[IntMatrix2] {
        &self.candidates
    }

    pub fn find(&self, a: &IntMatrix2, b: &IntMatrix2) -> Option<IntMatrix2> {
        // H A H^-1 = B  <=>  H A = B H  for invertible H.
        self.candidates.iter().copied().find(|h| {
            matches!(
                (h.checked_mul(a), b.checked_mul(h)),
                (Ok(left), Ok(right)) if left == right
            )
        })
    }
}

pub fn find_conjugator(a: &IntMatrix2, b: &IntMatrix2, bound: u32) -> Option<IntMatrix2> {
    ConjugatorSearch::new(bound).find(a, b)
}

/// All involutions with entries in `[-bound, bound]`, in lexicographic order.
pub fn involutions_in_window(bound: i64) -> Vec<IntMatrix2> {
    let mut out = Vec::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            for c in -bound..=bound {
                for d in -bound..=bound {
                    let m = IntMatrix2::new(a, b, c, d);
                    if m.is_involution() {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(a: i64, b: i64, c: i64, d: i64) -> IntMatrix2 {
        IntMatrix2::new(a, b, c, d)
    }

    #[test]
    fn product_inverse_determinant() {
        assert_eq!(m(0, 1, 1, 2) * m(1, 0, -1, -1), m(-1, -1, -1, -2));
        assert_eq!(m(0, 1, 1, 2).inverse().unwrap(), m(-2, 1, 1, 0));
        let a = m(3, 5, -2, 7);
        assert_eq!(IntMatrix2::IDENTITY * a, a);
        assert_eq!(m(0, 1, 1, 2).det(), -1);
        assert!(matches!(
            m(2, 0, 0, 1).inverse(),
            Err(MatrixError::NotInvertible { det: 2 })
        ));
    }

    #[test]
    fn overflow_is_reported() {
        let big = m(i64::MAX, 1, 1, 1);
        assert_eq!(big.checked_mul(&big), Err(MatrixError::Overflow));
        assert!(!big.is_involution());
        assert_eq!(
            m(i64::MIN, 0, 0, 1).inverse(),
            Err(MatrixError::NotInvertible { det: i64::MIN })
        );
    }

    #[test]
    fn involution_detection() {
        assert!(m(1, -1, 0, -1).is_involution());
        assert!(!m(0, -1, 1, 0).is_involution());
        assert!(m(1, 0, -1, -1).is_involution());
    }

    #[test]
    fn classification_examples() {
        assert_eq!(
            involution_class(&m(1, 0, -1, -1)).unwrap(),
            InvolutionClassLabel::AntiType
        );
        assert_eq!(
            involution_class(&m(1, 0, 0, -1)).unwrap(),
            InvolutionClassLabel::ReflType
        );
        assert_eq!(
            involution_class(&m(-1, 0, 0, -1)).unwrap(),
            InvolutionClassLabel::MinusIdentity
        );
        assert!(involution_class(&m(0, -1, 1, 0)).is_err());
    }

    #[test]
    fn conjugator_examples() {
        let a = m(1, 0, -1, -1);
        let h = find_conjugator(&a, &IntMatrix2::SWAP, 3).expect("conjugate to swap");
        assert!(h.is_unimodular());
        assert_eq!(h * a * h.inverse().unwrap(), IntMatrix2::SWAP);

        assert_eq!(
            find_conjugator(&IntMatrix2::IDENTITY, &IntMatrix2::IDENTITY, 1),
            Some(IntMatrix2::IDENTITY)
        );
        assert_eq!(
            find_conjugator(&IntMatrix2::REFLECTION, &IntMatrix2::SWAP, 5),
            None
        );
    }

    #[test]
    fn class_is_conjugation_invariant() {
        let involutions = involutions_in_window(3);
        let search = ConjugatorSearch::new(3);
        for a in &involutions {
            let label = involution_class(a).unwrap();
            for h in search.candidates() {
                let conj = h.conjugate(a).unwrap();
                assert_eq!(involution_class(&conj).unwrap(), label, "{h} . {a}");
            }
        }
    }

    #[test]
    fn determinant_minus_one_involutions_have_trace_zero() {
        for a in involutions_in_window(4) {
            if a.det() == -1 {
                assert_eq!(a.trace(), 0, "{a}");
            } else {
                assert!(a == IntMatrix2::IDENTITY || a == IntMatrix2::MINUS_IDENTITY);
            }
        }
    }

    #[test]
    fn determinant_is_multiplicative_and_inverse_is_involutive() {
        let search = ConjugatorSearch::new(2);
        let sample: Vec<_> = search.candidates().iter().step_by(7).copied().collect();
        for x in &sample {
            assert_eq!(x.inverse().unwrap().inverse().unwrap(), *x);
            for y in &sample {
                assert_eq!((*x * *y).det(), x.det() * y.det());
            }
        }
    }
}
