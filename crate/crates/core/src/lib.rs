//! Seifert fibered manifolds and their fiber-preserving orientation-reversing
//! involutions: invariants, admissibility, torus mapping classes, Dehn filling
//! extension conditions, surface involution classes and a small census.

pub mod admissibility;
pub mod census;
pub mod filling;
pub mod invariants;
pub mod notation;
pub mod rational;
pub mod surface;
pub mod torus;

pub use admissibility::{
    check_admissible, classify_case, enumerate_admissible, exclude_fixed_point_free,
    AdmissibilityError, AdmissibilityReport, CaseLabel, Violation,
};
pub use census::{
    commutation_obstruction, enumerate_factorizations, lift_to_double_cover,
    psi_is_conjugacy_class_check, CensusError, CensusReport, FactorizationRecord, FiberOrientation,
    LiftReport, PsiDescriptor,
};
pub use filling::{
    boundary_homology_identity, check_extends, extension_condition, induced_filling_frame,
    solve_boundary_involutions, transport_through_gluing, verify_v221, verify_v221_construction,
    ExtensionConstraint, FillingError, FillingSlope,
};
pub use invariants::{BaseSurface, GeometryType, InvariantError, SeifertInvariants, SeifertPair};
pub use notation::{parse_matrix, parse_seifert, parse_slope, print_seifert, ParseError};
pub use rational::{format_rational, Rational};
pub use surface::{
    classes_for_genus, count_classes, fixed_point_data, ClassFilter, FixedPointData,
    SurfaceInvolutionClass,
};
pub use torus::{find_conjugator, involution_class, IntMatrix2, InvolutionClassLabel, MatrixError};
