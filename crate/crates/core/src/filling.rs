//! Extension of fiber-preserving orientation-reversing involutions across Dehn
//! fillings, and the homological checks for the `V(2,2;-1)` block.
//!
//! Conventions: on the boundary torus of the product piece the basis is
//! (fiber, section). On a filling solid torus the basis is the one induced by
//! its own product structure, and the gluing matrix maps it into the outer
//! frame. A slope `(m, l)` means the meridian is glued to `m * fiber + l * section`,
//! so the Seifert pair `(q, p)` corresponds to the slope `(p, q)`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::rational::Rational;
use crate::torus::{IntMatrix2, MatrixError, Vec2};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FillingError {
    #[error("slope ({m},{l}) is not a primitive vector")]
    InvalidSlope { m: i64, l: i64 },
    #[error("slope {slope} is outside the supported families (1,2) and (x,1)")]
    Unsupported { slope: FillingSlope },
    #[error("vector ({x},{y}) is not primitive")]
    NotPrimitive { x: i64, y: i64 },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// A Dehn filling slope, stored up to global sign with `l >= 0`, and `m > 0`
/// when `l = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FillingSlope {
    m: i64,
    l: i64,
}

/// The two slope families whose extension conditions are known.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlopeFamily {
    /// The `(1, 2)` filling, i.e. a `(2, 1)` exceptional fiber.
    OneTwo,
    /// An `(x, 1)` filling, i.e. a `(1, x)` integer term.
    Integral(i64),
}

impl FillingSlope {
    pub fn new(m: i64, l: i64) -> Result<Self, FillingError> {
        let invalid = FillingError::InvalidSlope { m, l };
        if (m, l) == (0, 0) || !m.gcd(&l).is_one() {
            return Err(invalid);
        }
        if l < 0 || (l == 0 && m < 0) {
            match (m.checked_neg(), l.checked_neg()) {
                (Some(m), Some(l)) => Ok(Self { m, l }),
                _ => Err(invalid),
            }
        } else {
            Ok(Self { m, l })
        }
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn l(&self) -> i64 {
        self.l
    }

    pub fn family(&self) -> Result<SlopeFamily, FillingError> {
        match (self.m, self.l) {
            (1, 2) => Ok(SlopeFamily::OneTwo),
            (x, 1) => Ok(SlopeFamily::Integral(x)),
            _ => Err(FillingError::Unsupported { slope: *self }),
        }
    }
}

impl fmt::Display for FillingSlope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.l)
    }
}

/// Frame of a filling solid torus seen from the outer boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FillingFrame {
    /// Fiber class of the filling torus in its own frame.
    pub fiber: Vec2,
    /// Meridian class of the filling torus in its own frame.
    pub meridian: Vec2,
    /// Gluing map from the filling torus frame to the outer frame.
    pub gluing: IntMatrix2,
}

impl FillingFrame {
    /// Same filling after re-framing the outer torus by `h`.
    pub fn reframed(&self, h: &IntMatrix2) -> Result<FillingFrame, MatrixError> {
        Ok(FillingFrame {
            gluing: h.checked_mul(&self.gluing)?,
            ..*self
        })
    }

    pub fn constraint(&self) -> Result<ExtensionConstraint, FillingError> {
        ExtensionConstraint::new(self.fiber, self.meridian)
    }

    /// The outer-boundary actions that extend over this filling.
    pub fn extension_condition(&self) -> Result<BTreeSet<IntMatrix2>, FillingError> {
        solve_boundary_involutions(&self.constraint()?)
            .iter()
            .map(|inner| transport_through_gluing(inner, &self.gluing).map_err(Into::into))
            .collect()
    }

    pub fn admits(&self, action: &IntMatrix2) -> Result<bool, FillingError> {
        Ok(self.extension_condition()?.contains(action))
    }
}

/// Frame and gluing of the filling torus for a supported slope.
pub fn induced_filling_frame(slope: &FillingSlope) -> Result<FillingFrame, FillingError> {
    match slope.family()? {
        SlopeFamily::OneTwo => Ok(FillingFrame {
            fiber: [-2, 1],
            meridian: [0, 1],
            gluing: IntMatrix2::new(0, 1, 1, 2),
        }),
        SlopeFamily::Integral(x) => Ok(FillingFrame {
            fiber: [1, 0],
            meridian: [0, 1],
            gluing: IntMatrix2::new(-1, x, 0, 1),
        }),
    }
}

/// `A * v_fix = eps * v_fix` and `A * v_flip = -eps * v_flip`, `eps = +-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtensionConstraint {
    v_fix: Vec2,
    v_flip: Vec2,
}

impl ExtensionConstraint {
    pub fn new(v_fix: Vec2, v_flip: Vec2) -> Result<Self, FillingError> {
        for [x, y] in [v_fix, v_flip] {
            if !x.gcd(&y).is_one() {
                return Err(FillingError::NotPrimitive { x, y });
            }
        }
        Ok(Self { v_fix, v_flip })
    }

    pub fn v_fix(&self) -> Vec2 {
        self.v_fix
    }

    pub fn v_flip(&self) -> Vec2 {
        self.v_flip
    }
}

/// All integral `A` with `|det A| = 1` satisfying the constraint for some sign.
///
/// The two vectors determine `A = P diag(eps, -eps) P^-1` with `P = [v_fix | v_flip]`,
/// solved exactly over the rationals and then filtered for integrality.
/// Parallel vectors leave no solution.
pub fn solve_boundary_involutions(constraint: &ExtensionConstraint) -> BTreeSet<IntMatrix2> {
    let p = IntMatrix2::from_columns(constraint.v_fix, constraint.v_flip);
    let det = BigInt::from(p.det());
    if det.is_zero() {
        return BTreeSet::new();
    }
    let q = |x: i64| Rational::from_integer(BigInt::from(x));
    let p_entries = [[q(p.a), q(p.b)], [q(p.c), q(p.d)]];
    let inv = [
        [
            Rational::new(BigInt::from(p.d), det.clone()),
            Rational::new(BigInt::from(-p.b), det.clone()),
        ],
        [
            Rational::new(BigInt::from(-p.c), det.clone()),
            Rational::new(BigInt::from(p.a), det.clone()),
        ],
    ];

    let mut solutions = BTreeSet::new();
    for eps in [1i64, -1] {
        let diag = [q(eps), q(-eps)];
        let mut entries = [0i64; 4];
        let mut integral = true;
        for row in 0..2 {
            for col in 0..2 {
                let value: Rational = (0..2)
                    .map(|k| &p_entries[row][k] * &diag[k] * &inv[k][col])
                    .sum();
                match value
                    .is_integer()
                    .then(|| value.to_integer().to_i64())
                    .flatten()
                {
                    Some(v) => entries[row * 2 + col] = v,
                    None => integral = false,
                }
            }
        }
        if !integral {
            continue;
        }
        let a = IntMatrix2::new(entries[0], entries[1], entries[2], entries[3]);
        if a.is_unimodular() {
            solutions.insert(a);
        }
    }
    solutions
}

/// `G * A * G^-1`: the action seen in the outer frame.
pub fn transport_through_gluing(
    action: &IntMatrix2,
    gluing: &IntMatrix2,
) -> Result<IntMatrix2, MatrixError> {
    gluing.conjugate(action)
}

/// Outer-boundary matrices that extend over the filling, derived by solving the
/// filling-torus constraint and transporting through the gluing.
pub fn extension_condition(slope: &FillingSlope) -> Result<BTreeSet<IntMatrix2>, FillingError> {
    induced_filling_frame(slope)?.extension_condition()
}

pub fn check_extends(action: &IntMatrix2, slope: &FillingSlope) -> Result<bool, FillingError> {
    Ok(action.is_involution() && extension_condition(slope)?.contains(action))
}

/// Action of the product involution `(u, x) -> (u^-1, x)` on a boundary torus.
pub const FIBER_REVERSAL: IntMatrix2 = IntMatrix2::new(-1, 0, 0, 1);

/// Boundary matrices of the fiber-reversing involution on the three inner
/// tori of the block, in slot order.
pub const PSI_MATRICES: [IntMatrix2; 3] = [
    IntMatrix2::new(-1, 1, 0, 1),
    IntMatrix2::new(-1, -2, 0, 1),
    IntMatrix2::new(-1, 1, 0, 1),
];

/// Fillings of the block: two `(2,1)` fibers and one `(1,-1)` term.
pub fn block_fillings() -> [FillingSlope; 3] {
    [
        FillingSlope { m: 1, l: 2 },
        FillingSlope { m: 1, l: 2 },
        FillingSlope { m: -1, l: 1 },
    ]
}

/// One inner boundary torus of a block: the action and how it is filled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockSlot {
    pub action: IntMatrix2,
    pub frame: FillingFrame,
}

/// Homological data of an involution on a `V(2,2;-1)` block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockData {
    pub slots: [BlockSlot; 3],
    pub outer: IntMatrix2,
}

/// Per-check results of [`verify_block`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockReport {
    pub involutions: [bool; 3],
    pub extends: [bool; 3],
    /// Outer action matches the product involution under the trivial gluing.
    pub outer_agrees: bool,
    /// The section class of the outer torus is sent where the outer action says.
    pub homology_closes: bool,
}

impl BlockReport {
    pub fn passed(&self) -> bool {
        self.involutions.iter().all(|&ok| ok)
            && self.extends.iter().all(|&ok| ok)
            && self.outer_agrees
            && self.homology_closes
    }
}

/// Image of the outer section class `alpha = -(alpha_1 + alpha_2 + alpha_3)`
/// as exponents over `(alpha_1, alpha_2, alpha_3, t)`, together with the
/// image of the fiber `t` when it is the same multiple of `t` on every torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HomologyImage {
    pub alpha: [i64; 4],
    /// Per-torus `t` exponents contributed by the images of `alpha_i^-1`.
    pub t_terms: [i64; 3],
    pub fiber: Option<i64>,
}

/// Pushes `alpha` through three inner-torus actions given in (fiber, section)
/// frames where the section of torus `i` is `alpha_i`.
pub fn apply_boundary_actions(actions: &[IntMatrix2; 3]) -> HomologyImage {
    let mut alpha = [0i64; 4];
    let mut t_terms = [0i64; 3];
    for (i, a) in actions.iter().enumerate() {
        // f(alpha_i^-1) = -(b t + d alpha_i)
        alpha[i] -= a.d;
        t_terms[i] = -a.b;
        alpha[3] -= a.b;
    }
    let fiber_consistent = actions.iter().all(|a| a.c == 0 && a.a == actions[0].a);
    HomologyImage {
        alpha,
        t_terms,
        fiber: fiber_consistent.then_some(actions[0].a),
    }
}

pub fn verify_block(data: &BlockData) -> BlockReport {
    let involutions = data.slots.map(|slot| slot.action.is_involution());
    let extends = data
        .slots
        .map(|slot| slot.frame.admits(&slot.action).unwrap_or(false));
    let image = apply_boundary_actions(&data.slots.map(|slot| slot.action));
    let outer = data.outer;
    let expected_alpha = [-outer.d, -outer.d, -outer.d, outer.b];
    let homology_closes =
        outer.c == 0 && image.fiber == Some(outer.a) && image.alpha == expected_alpha;
    let outer_agrees = transport_through_gluing(&FIBER_REVERSAL, &IntMatrix2::IDENTITY)
        .is_ok_and(|product| product == outer);
    BlockReport {
        involutions,
        extends,
        outer_agrees,
        homology_closes,
    }
}

/// Boundary data of the block involution with the filling assigned to each slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PsiBoundaryData {
    pub slots: [(IntMatrix2, FillingSlope); 3],
    pub outer: IntMatrix2,
}

impl PsiBoundaryData {
    pub fn block(&self) -> Result<BlockData, FillingError> {
        let mut slots = Vec::with_capacity(3);
        for (action, slope) in self.slots {
            slots.push(BlockSlot {
                action,
                frame: induced_filling_frame(&slope)?,
            });
        }
        Ok(BlockData {
            slots: slots.try_into().expect("three slots"),
            outer: self.outer,
        })
    }
}

/// Outcome of checking three candidate block matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct V221Report {
    pub matrices: [IntMatrix2; 3],
    /// First assignment of the block fillings to the slots under which every
    /// slot extends, if any.
    pub assignment: Option<[FillingSlope; 3]>,
    /// Per-slot checks under `assignment`, or under the nominal filling order
    /// when no assignment works.
    pub block: BlockReport,
}

impl V221Report {
    pub fn passed(&self) -> bool {
        self.assignment.is_some() && self.block.passed()
    }
}

const PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Checks candidate boundary matrices against the block fillings, searching
/// every assignment of fillings to slots.
pub fn verify_v221(matrices: [IntMatrix2; 3]) -> V221Report {
    let fillings = block_fillings();
    let data_for = |slopes: [FillingSlope; 3]| PsiBoundaryData {
        slots: [
            (matrices[0], slopes[0]),
            (matrices[1], slopes[1]),
            (matrices[2], slopes[2]),
        ],
        outer: FIBER_REVERSAL,
    };
    let assignment = PERMUTATIONS
        .iter()
        .map(|perm| perm.map(|i| fillings[i]))
        .find(|slopes| {
            matrices
                .iter()
                .zip(slopes)
                .all(|(m, s)| check_extends(m, s).unwrap_or(false))
        });
    let block = data_for(assignment.unwrap_or(fillings))
        .block()
        .map(|data| verify_block(&data))
        .expect("block fillings are supported");
    V221Report {
        matrices,
        assignment,
        block,
    }
}

/// Verifies the block involution built from [`PSI_MATRICES`].
pub fn verify_v221_construction() -> V221Report {
    verify_v221(PSI_MATRICES)
}

/// Boundary data of the block involution, fillings assigned by
/// [`verify_v221_construction`].
pub fn psi_boundary_data() -> PsiBoundaryData {
    let report = verify_v221_construction();
    let slopes = report
        .assignment
        .expect("block matrices admit a filling assignment");
    PsiBoundaryData {
        slots: [
            (PSI_MATRICES[0], slopes[0]),
            (PSI_MATRICES[1], slopes[1]),
            (PSI_MATRICES[2], slopes[2]),
        ],
        outer: FIBER_REVERSAL,
    }
}

/// Result of pushing the outer section class through a block involution
/// chosen from the extension conditions of the block fillings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HomologyIdentityReport {
    pub fiber_reversed: bool,
    pub actions: [IntMatrix2; 3],
    pub image: HomologyImage,
    /// `alpha^-1` when the fiber is preserved, `alpha` when reversed.
    pub expected: [i64; 4],
}

impl HomologyIdentityReport {
    pub fn net_t_exponent(&self) -> i64 {
        self.image.t_terms.iter().sum()
    }

    pub fn holds(&self) -> bool {
        self.image.alpha == self.expected && self.net_t_exponent() == 0
    }
}

pub fn boundary_homology_identity(
    fiber_reversed: bool,
) -> Result<HomologyIdentityReport, FillingError> {
    let fiber_sign = if fiber_reversed { -1 } else { 1 };
    let mut actions = Vec::with_capacity(3);
    for slope in block_fillings() {
        let action = extension_condition(&slope)?
            .into_iter()
            .find(|m| m.a == fiber_sign)
            .ok_or(FillingError::Unsupported { slope })?;
        actions.push(action);
    }
    let actions: [IntMatrix2; 3] = actions.try_into().expect("three fillings");
    let image = apply_boundary_actions(&actions);
    let expected = if fiber_reversed {
        [-1, -1, -1, 0]
    } else {
        [1, 1, 1, 0]
    };
    Ok(HomologyIdentityReport {
        fiber_reversed,
        actions,
        image,
        expected,
    })
}
