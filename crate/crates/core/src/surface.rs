//! Conjugacy classes of involutions on the closed orientable genus-g surface.

use std::fmt;

use thiserror::Error;

use crate::torus::InvolutionClassLabel;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("{kind} class needs 0 <= r <= {max}, got r = {r} at genus {g}")]
    ParameterOutOfRange {
        kind: InvolutionKind,
        g: u64,
        r: u64,
        max: u64,
    },
    #[error("rot exists only at odd genus, got {g}")]
    RotNeedsOddGenus { g: u64 },
    #[error("torus action is defined for orientation-reversing classes at genus 1, got {class}")]
    NotTorusReversing { class: SurfaceInvolutionClass },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InvolutionKind {
    Id,
    Spit,
    Rot,
    Refl,
    Anti,
}

impl InvolutionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            InvolutionKind::Id => "id",
            InvolutionKind::Spit => "spit",
            InvolutionKind::Rot => "rot",
            InvolutionKind::Refl => "refl",
            InvolutionKind::Anti => "anti",
        }
    }

    pub fn orientation_preserving(self) -> bool {
        matches!(
            self,
            InvolutionKind::Id | InvolutionKind::Spit | InvolutionKind::Rot
        )
    }
}

impl fmt::Display for InvolutionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurfaceInvolutionClass {
    kind: InvolutionKind,
    g: u64,
    r: u64,
}

impl SurfaceInvolutionClass {
    pub fn id(g: u64) -> Self {
        Self {
            kind: InvolutionKind::Id,
            g,
            r: 0,
        }
    }

    pub fn rot(g: u64) -> Result<Self, SurfaceError> {
        if g.is_multiple_of(2) {
            return Err(SurfaceError::RotNeedsOddGenus { g });
        }
        Ok(Self {
            kind: InvolutionKind::Rot,
            g,
            r: 0,
        })
    }

    pub fn spit(g: u64, r: u64) -> Result<Self, SurfaceError> {
        Self::with_r(InvolutionKind::Spit, g, r, g / 2)
    }

    pub fn refl(g: u64, r: u64) -> Result<Self, SurfaceError> {
        Self::with_r(InvolutionKind::Refl, g, r, g / 2)
    }

    pub fn anti(g: u64, r: u64) -> Result<Self, SurfaceError> {
        Self::with_r(InvolutionKind::Anti, g, r, g)
    }

    fn with_r(kind: InvolutionKind, g: u64, r: u64, max: u64) -> Result<Self, SurfaceError> {
        if r > max {
            return Err(SurfaceError::ParameterOutOfRange { kind, g, r, max });
        }
        Ok(Self { kind, g, r })
    }

    pub fn kind(&self) -> InvolutionKind {
        self.kind
    }

    pub fn genus(&self) -> u64 {
        self.g
    }

    /// Always 0 for `id` and `rot`.
    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn orientation_preserving(&self) -> bool {
        self.kind.orientation_preserving()
    }
}

impl fmt::Display for SurfaceInvolutionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            InvolutionKind::Id => write!(f, "id({})", self.g),
            InvolutionKind::Rot => write!(f, "rot({})", self.g),
            kind => write!(f, "{kind}({},{})", self.g, self.r),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ClassFilter {
    #[default]
    All,
    Preserving,
    Reversing,
}

impl ClassFilter {
    fn accepts(self, class: &SurfaceInvolutionClass) -> bool {
        match self {
            ClassFilter::All => true,
            ClassFilter::Preserving => class.orientation_preserving(),
            ClassFilter::Reversing => !class.orientation_preserving(),
        }
    }
}

/// The complete list of classes at genus `g`, in the order
/// id, spit, rot, refl, anti.
pub fn classes_for_genus(g: u64, filter: ClassFilter) -> Vec<SurfaceInvolutionClass> {
    let build = |kind, r| SurfaceInvolutionClass { kind, g, r };
    let mut all = vec![SurfaceInvolutionClass::id(g)];
    all.extend((0..=g / 2).map(|r| build(InvolutionKind::Spit, r)));
    if g % 2 == 1 {
        all.push(build(InvolutionKind::Rot, 0));
    }
    all.extend((0..=g / 2).map(|r| build(InvolutionKind::Refl, r)));
    all.extend((0..=g).map(|r| build(InvolutionKind::Anti, r)));
    all.retain(|class| filter.accepts(class));
    all
}

/// Counts taken from the list, next to the closed forms `2 + ceil(g/2)`,
/// `2 + g + floor(g/2)` and `4 + 2g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassCounts {
    pub preserving: u64,
    pub reversing: u64,
    pub total: u64,
    pub closed_form_preserving: u64,
    pub closed_form_reversing: u64,
    pub closed_form_total: u64,
}

impl ClassCounts {
    pub fn closed_forms_agree(&self) -> bool {
        self.preserving == self.closed_form_preserving
            && self.reversing == self.closed_form_reversing
            && self.total == self.closed_form_total
    }
}

pub fn count_classes(g: u64) -> ClassCounts {
    let all = classes_for_genus(g, ClassFilter::All);
    let preserving = all.iter().filter(|c| c.orientation_preserving()).count() as u64;
    let total = all.len() as u64;
    ClassCounts {
        preserving,
        reversing: total - preserving,
        total,
        closed_form_preserving: 2 + g.div_ceil(2),
        closed_form_reversing: 2 + g + g / 2,
        closed_form_total: 4 + 2 * g,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FixedPointData {
    pub isolated_points: u64,
    pub circles: u64,
    pub free: bool,
    /// Set for the identity, whose fixed set is the whole surface.
    pub whole_surface: bool,
}

impl FixedPointData {
    fn points(isolated_points: u64) -> Self {
        Self {
            isolated_points,
            circles: 0,
            free: isolated_points == 0,
            whole_surface: false,
        }
    }

    fn circles(circles: u64) -> Self {
        Self {
            isolated_points: 0,
            circles,
            free: circles == 0,
            whole_surface: false,
        }
    }
}

/// Isolated fixed points of `spit(g,r)`: `2(g - 2r) + 2`.
///
/// The quotient of a genus-g surface by an involution with `F` fixed points has
/// genus `(2 + 2g - F) / 4` by Riemann-Hurwitz, which is `r` exactly for this
/// count. The hyperelliptic involution (`r = 0`) has `2g + 2` fixed points.
pub fn spit_fixed_points(g: u64, r: u64) -> u64 {
    2 * (g - 2 * r) + 2
}

pub fn fixed_point_data(class: &SurfaceInvolutionClass) -> FixedPointData {
    let (g, r) = (class.g, class.r);
    match class.kind {
        InvolutionKind::Id => FixedPointData {
            isolated_points: 0,
            circles: 0,
            free: false,
            whole_surface: true,
        },
        InvolutionKind::Spit => FixedPointData::points(spit_fixed_points(g, r)),
        InvolutionKind::Rot => FixedPointData::points(0),
        InvolutionKind::Refl => FixedPointData::circles(g - 2 * r + 1),
        InvolutionKind::Anti => FixedPointData::circles(r),
    }
}

/// Action on `H_1` of the torus for the orientation-reversing genus-1 classes.
pub fn induced_torus_action(
    class: &SurfaceInvolutionClass,
) -> Result<InvolutionClassLabel, SurfaceError> {
    match (class.g, class.kind, class.r) {
        (1, InvolutionKind::Refl, 0) | (1, InvolutionKind::Anti, 0) => {
            Ok(InvolutionClassLabel::ReflType)
        }
        (1, InvolutionKind::Anti, 1) => Ok(InvolutionClassLabel::AntiType),
        _ => Err(SurfaceError::NotTorusReversing { class: *class }),
    }
}

/// Classes that can appear as the base action of a fiber-preserving
/// orientation-reversing involution: everything except the free ones.
pub fn usable(class: &SurfaceInvolutionClass) -> bool {
    !matches!(
        (class.kind, class.r),
        (InvolutionKind::Rot, _) | (InvolutionKind::Anti, 0)
    )
}
