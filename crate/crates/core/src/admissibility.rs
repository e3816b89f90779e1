//! Which descriptors admit a fiber-preserving orientation-reversing involution.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::invariants::{GeometryType, SeifertInvariants};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdmissibilityError {
    #[error("base is non-orientable; lift to the orientable double cover first")]
    NonOrientableBase,
    #[error("descriptor is not admissible ({})", join(.violations))]
    NotAdmissible { violations: Vec<Violation> },
}

fn join(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| v.as_str())
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Violation {
    NonzeroEuler,
    OrderGreaterThanTwo,
    OddCount,
    WrongBTerm,
    /// Kept for schema compatibility; no orientable-base descriptor produces it.
    FixedPointFreeOnly,
}

impl Violation {
    pub fn as_str(self) -> &'static str {
        match self {
            Violation::NonzeroEuler => "NonzeroEuler",
            Violation::OrderGreaterThanTwo => "OrderGreaterThanTwo",
            Violation::OddCount => "OddCount",
            Violation::WrongBTerm => "WrongBTerm",
            Violation::FixedPointFreeOnly => "FixedPointFreeOnly",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseLabel {
    C1a,
    C1b,
    C2a,
    C2b,
    C3a,
    C3b,
    C3c,
}

impl CaseLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseLabel::C1a => "1a",
            CaseLabel::C1b => "1b",
            CaseLabel::C2a => "2a",
            CaseLabel::C2b => "2b",
            CaseLabel::C3a => "3a",
            CaseLabel::C3b => "3b",
            CaseLabel::C3c => "3c",
        }
    }

    /// Top-level case number, 1 to 3, matching the sign of `chi_orb`.
    pub fn case_number(self) -> u8 {
        match self {
            CaseLabel::C1a | CaseLabel::C1b => 1,
            CaseLabel::C2a | CaseLabel::C2b => 2,
            _ => 3,
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub violations: Vec<Violation>,
    pub case_label: Option<CaseLabel>,
    pub geometry: GeometryType,
}

/// Conditions violated by the normalized descriptor, for either kind of base.
///
/// `e = 0`, all `q = 2` and `n` even are always evaluated. The `b = -n/2`
/// condition is only meaningful once every fiber has order two, so it is
/// skipped when higher-order fibers are present.
pub fn condition_violations(m: &SeifertInvariants) -> Vec<Violation> {
    let m = m.normalize();
    let two = BigInt::from(2);
    let mut violations = Vec::new();
    if !m.euler_number().is_zero() {
        violations.push(Violation::NonzeroEuler);
    }
    let higher_order = m.pairs().iter().any(|pair| *pair.q() > two);
    if higher_order {
        violations.push(Violation::OrderGreaterThanTwo);
    }
    let n = m.order_two_count();
    if n % 2 == 1 {
        violations.push(Violation::OddCount);
    }
    // 2b = -n, which also fails whenever n is odd
    if !higher_order && &two * m.b() != -BigInt::from(n) {
        violations.push(Violation::WrongBTerm);
    }
    violations
}

pub fn check_admissible(m: &SeifertInvariants) -> Result<AdmissibilityReport, AdmissibilityError> {
    if !m.base().is_orientable() {
        return Err(AdmissibilityError::NonOrientableBase);
    }
    let violations = condition_violations(m);
    let admissible = violations.is_empty();
    Ok(AdmissibilityReport {
        admissible,
        case_label: admissible.then(|| case_of(m)),
        geometry: m.geometry(),
        violations,
    })
}

/// False only for `S^1 x S` (no pairs, `b = 0`), which does carry free involutions.
pub fn exclude_fixed_point_free(m: &SeifertInvariants) -> bool {
    !m.is_trivial_product()
}

pub fn classify_case(m: &SeifertInvariants) -> Result<CaseLabel, AdmissibilityError> {
    let report = check_admissible(m)?;
    match report.case_label {
        Some(label) => Ok(label),
        None => Err(AdmissibilityError::NotAdmissible {
            violations: report.violations,
        }),
    }
}

// Split by the sign of chi_orb first, then by (genus, n).
fn case_of(m: &SeifertInvariants) -> CaseLabel {
    let m = m.normalize();
    let chi = m.orbifold_euler_characteristic();
    let genus_zero = m.base().genus().is_zero();
    let n = m.order_two_count();
    if chi.is_positive() {
        if n == 0 {
            CaseLabel::C1a
        } else {
            CaseLabel::C1b
        }
    } else if chi.is_zero() {
        if genus_zero {
            CaseLabel::C2a
        } else {
            CaseLabel::C2b
        }
    } else if genus_zero {
        CaseLabel::C3c
    } else if *m.base().genus() == 1u32.into() {
        CaseLabel::C3b
    } else {
        CaseLabel::C3a
    }
}

/// Every admissible orientable-base descriptor with `genus <= g_max` and
/// `n <= n_max`, normalized and sorted by `(genus, n)`.
pub fn enumerate_admissible(g_max: u64, n_max: u64) -> Vec<SeifertInvariants> {
    let mut out = Vec::new();
    for genus in 0..=g_max {
        for n in (0..=n_max).step_by(2) {
            out.push(SeifertInvariants::admissible_family(genus, n as usize));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse_seifert;

    fn parse(text: &str) -> SeifertInvariants {
        parse_seifert(text).unwrap()
    }

    #[test]
    fn report_examples() {
        let report = check_admissible(&parse("(0,o1|(2,1),(2,1),(2,1),(2,1),(1,-2))")).unwrap();
        assert!(report.admissible);
        assert_eq!(report.case_label, Some(CaseLabel::C2a));
        assert_eq!(report.geometry, GeometryType::E3);

        let report = check_admissible(&parse("(0,o1|(3,1),(3,1),(3,1),(1,-1))")).unwrap();
        assert!(!report.admissible);
        assert_eq!(report.violations, vec![Violation::OrderGreaterThanTwo]);
        assert_eq!(report.case_label, None);

        let report = check_admissible(&parse("(1,o1|(1,1))")).unwrap();
        assert_eq!(
            report.violations,
            vec![Violation::NonzeroEuler, Violation::WrongBTerm]
        );
        assert_eq!(report.geometry, GeometryType::Other);
    }

    #[test]
    fn odd_count_is_reported() {
        let report = check_admissible(&parse("(0,o1|(2,1),(2,1),(2,1))")).unwrap();
        assert_eq!(
            report.violations,
            vec![
                Violation::NonzeroEuler,
                Violation::OddCount,
                Violation::WrongBTerm
            ]
        );
    }

    #[test]
    fn non_orientable_base_is_refused() {
        assert_eq!(
            check_admissible(&parse("(2,n1|)")),
            Err(AdmissibilityError::NonOrientableBase)
        );
    }

    #[test]
    fn fixed_point_free_examples() {
        assert!(!exclude_fixed_point_free(&parse("(2,o1|)")));
        assert!(exclude_fixed_point_free(&parse(
            "(0,o1|(2,1),(2,1),(1,-1))"
        )));
        assert!(exclude_fixed_point_free(&parse("(0,o1|(1,3))")));
    }

    #[test]
    fn case_examples() {
        assert_eq!(classify_case(&parse("(0,o1|)")), Ok(CaseLabel::C1a));
        assert_eq!(
            classify_case(&parse("(0,o1|(2,1),(2,1),(1,-1))")),
            Ok(CaseLabel::C1b)
        );
        assert_eq!(classify_case(&parse("(1,o1|)")), Ok(CaseLabel::C2b));
        assert_eq!(
            classify_case(&parse("(1,o1|(2,1),(2,1),(1,-1))")),
            Ok(CaseLabel::C3b)
        );
        assert_eq!(classify_case(&parse("(2,o1|)")), Ok(CaseLabel::C3a));
        assert_eq!(
            classify_case(&SeifertInvariants::admissible_family(0, 6)),
            Ok(CaseLabel::C3c)
        );
        assert!(matches!(
            classify_case(&parse("(0,o1|(1,1))")),
            Err(AdmissibilityError::NotAdmissible { .. })
        ));
    }

    #[test]
    fn enumeration_examples() {
        let printed = |g, n| {
            enumerate_admissible(g, n)
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
        };
        assert_eq!(printed(0, 2), ["(0,o1|)", "(0,o1|(2,1),(2,1),(1,-1))"]);
        assert_eq!(printed(0, 0), ["(0,o1|)"]);
        assert_eq!(enumerate_admissible(1, 4).len(), 6);
        assert_eq!(enumerate_admissible(3, 9).len(), 4 * 5);
    }

    #[test]
    fn case_partition_follows_chi_sign() {
        for m in enumerate_admissible(4, 12) {
            let report = check_admissible(&m).unwrap();
            assert!(report.admissible);
            let chi = m.orbifold_euler_characteristic();
            let expected = if chi.is_positive() {
                1
            } else if chi.is_zero() {
                2
            } else {
                3
            };
            assert_eq!(report.case_label.unwrap().case_number(), expected, "{m}");
            assert!(m.is_trivial_product() || exclude_fixed_point_free(&m));
        }
    }

    #[test]
    fn report_ignores_presentation() {
        let forms = [
            "(0,o1|(2,1),(2,-1),(2,3),(2,1),(1,-2))",
            "(0,o1|(2,3),(2,1),(1,-3),(2,1),(2,-1),(1,1))",
        ];
        let normal = check_admissible(&parse(forms[0]).normalize()).unwrap();
        for text in forms {
            assert_eq!(check_admissible(&parse(text)).unwrap(), normal);
        }
    }
}
