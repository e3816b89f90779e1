//! Fiber-preserving orientation-reversing involutions written as `f = psi . g`,
//! and the double cover of a non-orientable base.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::admissibility::{self, AdmissibilityError, AdmissibilityReport};
use crate::filling::{self, verify_block, BlockData, FillingError, PsiBoundaryData};
use crate::invariants::{BaseSurface, SeifertInvariants};
use crate::rational::Rational;
use crate::surface::{ClassFilter, InvolutionKind, SurfaceInvolutionClass};
use crate::torus::IntMatrix2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("census is implemented for base genus 0 only, got genus {genus}")]
    OutOfScope { genus: String },
    #[error(transparent)]
    Admissibility(#[from] AdmissibilityError),
    #[error("the trivial product carries no such involution with a block structure")]
    TrivialProduct,
    #[error("double cover needs a non-orientable base")]
    OrientableBase,
    #[error(transparent)]
    Filling(#[from] FillingError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FiberOrientation {
    Preserved,
    Reversed,
}

impl FiberOrientation {
    pub fn as_str(self) -> &'static str {
        match self {
            FiberOrientation::Preserved => "preserved",
            FiberOrientation::Reversed => "reversed",
        }
    }
}

/// One `V(2,2;-1)` block: two order-two fibers (by index into the normalized
/// pair list) and the boundary data of the involution on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PsiBlock {
    pub fibers: [usize; 2],
    pub boundary: PsiBoundaryData,
}

/// The fiber-reversing involution acting trivially on the base, presented
/// block by block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PsiDescriptor {
    pub manifold: SeifertInvariants,
    pub blocks: Vec<PsiBlock>,
}

impl PsiDescriptor {
    /// Pairs consecutive order-two fibers of the normalized descriptor.
    pub fn for_manifold(m: &SeifertInvariants) -> Result<Self, CensusError> {
        require_admissible(m)?;
        let manifold = m.normalize();
        let boundary = filling::psi_boundary_data();
        let blocks = (0..manifold.order_two_count() / 2)
            .map(|i| PsiBlock {
                fibers: [2 * i, 2 * i + 1],
                boundary,
            })
            .collect();
        Ok(Self { manifold, blocks })
    }

    /// Blocks partition the order-two fibers.
    pub fn partitions_fibers(&self) -> bool {
        let n = self.manifold.order_two_count();
        let mut seen = vec![false; n];
        for index in self.blocks.iter().flat_map(|block| block.fibers) {
            match seen.get_mut(index) {
                Some(slot) if !*slot => *slot = true,
                _ => return false,
            }
        }
        seen.into_iter().all(|s| s) && self.blocks.len() * 2 == n
    }

    pub fn block_data(&self) -> Result<Vec<BlockData>, FillingError> {
        self.blocks
            .iter()
            .map(|block| block.boundary.block())
            .collect()
    }

    pub fn verify(&self) -> bool {
        self.partitions_fibers()
            && self
                .block_data()
                .is_ok_and(|blocks| blocks.iter().all(|b| verify_block(b).passed()))
    }
}

fn require_admissible(m: &SeifertInvariants) -> Result<AdmissibilityReport, CensusError> {
    let report = admissibility::check_admissible(m)?;
    if !report.admissible {
        return Err(AdmissibilityError::NotAdmissible {
            violations: report.violations,
        }
        .into());
    }
    Ok(report)
}

/// One conjugacy case of `f = psi . g`: how `g` acts on the fiber and on the
/// marked base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationRecord {
    pub fiber_orientation: FiberOrientation,
    pub surface_class: SurfaceInvolutionClass,
    pub fixed_boundary_count: usize,
    /// Action of `g` on the marked points (order-two fibers).
    pub marked_permutation: Vec<usize>,
    /// Fiber pairing of the blocks of `psi`.
    pub psi_pairing: Vec<[usize; 2]>,
}

impl FactorizationRecord {
    /// `g` commutes with `psi` when it carries blocks to blocks.
    pub fn commutes(&self) -> bool {
        let sigma = &self.marked_permutation;
        let normal = |[a, b]: [usize; 2]| [a.min(b), a.max(b)];
        let mut before: Vec<_> = self.psi_pairing.iter().map(|&p| normal(p)).collect();
        let image: Option<Vec<_>> = self
            .psi_pairing
            .iter()
            .map(|&[a, b]| Some(normal([*sigma.get(a)?, *sigma.get(b)?])))
            .collect();
        let Some(mut after) = image else {
            return false;
        };
        before.sort();
        after.sort();
        before == after
    }
}

/// A record whose `g` preserves the fiber and the base orientation while
/// leaving a critical fiber invariant cannot be composed with `psi` into an
/// involution unless the two commute.
pub fn commutation_obstruction(record: &FactorizationRecord) -> bool {
    record.fiber_orientation == FiberOrientation::Preserved
        && record.surface_class.orientation_preserving()
        && record.fixed_boundary_count > 0
        && !record.commutes()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    pub manifold: SeifertInvariants,
    pub records: Vec<FactorizationRecord>,
    pub count: usize,
}

/// `n` marked points, the first `fixed` fixed and the rest swapped in
/// consecutive pairs.
fn marked_involution(n: usize, fixed: usize) -> Vec<usize> {
    (0..n)
        .map(|i| {
            if i < fixed {
                i
            } else if (i - fixed).is_multiple_of(2) {
                i + 1
            } else {
                i - 1
            }
        })
        .collect()
}

/// Consecutive pairs, which are preserved by [`marked_involution`].
fn invariant_pairing(n: usize) -> Vec<[usize; 2]> {
    (0..n / 2).map(|i| [2 * i, 2 * i + 1]).collect()
}

/// Base genus 0 census. `g` preserving the fiber acts on the base by `spit`,
/// `g` reversing it by `refl` or `anti`; each fixes none or two marked points.
pub fn enumerate_factorizations(m: &SeifertInvariants) -> Result<CensusReport, CensusError> {
    require_admissible(m)?;
    let manifold = m.normalize();
    if !manifold.base().genus().is_zero() {
        return Err(CensusError::OutOfScope {
            genus: manifold.base().genus().to_string(),
        });
    }
    if manifold.is_trivial_product() {
        return Err(CensusError::TrivialProduct);
    }
    let n = manifold.order_two_count();
    let pairing = invariant_pairing(n);
    let mut records = Vec::new();
    for class in crate::surface::classes_for_genus(0, ClassFilter::All) {
        let orientation = match class.kind() {
            InvolutionKind::Spit => FiberOrientation::Preserved,
            InvolutionKind::Refl | InvolutionKind::Anti => FiberOrientation::Reversed,
            _ => continue,
        };
        for fixed in [0, 2].into_iter().filter(|&k| k <= n) {
            records.push(FactorizationRecord {
                fiber_orientation: orientation,
                surface_class: class,
                fixed_boundary_count: fixed,
                marked_permutation: marked_involution(n, fixed),
                psi_pairing: pairing.clone(),
            });
        }
    }
    records.sort_by_key(|r| (r.fiber_orientation, r.surface_class, r.fixed_boundary_count));
    records.retain(|r| !commutation_obstruction(r));
    Ok(CensusReport {
        manifold,
        count: records.len(),
        records,
    })
}

fn shear(k: i64) -> IntMatrix2 {
    IntMatrix2::new(1, k, 0, 1)
}

/// Re-frames each inner torus of a block by a fiber-fixing shear, keeping the
/// outer torus fixed, and relabels the inner tori.
fn random_reframing(block: &BlockData, rng: &mut ChaCha8Rng) -> Option<BlockData> {
    let k1 = rng.gen_range(-5i64..=5);
    let k2 = rng.gen_range(-5i64..=5);
    let shears = [k1, k2, -k1 - k2];
    let mut out = *block;
    for (slot, k) in out.slots.iter_mut().zip(shears) {
        let h = shear(k);
        slot.action = h.conjugate(&slot.action).ok()?;
        slot.frame = slot.frame.reframed(&h).ok()?;
    }
    out.slots.shuffle(rng);
    Some(out)
}

/// Randomized check that re-framed copies of every block still verify.
pub fn psi_descriptor_check(descriptor: &PsiDescriptor, trials: u64, seed: u64) -> bool {
    if trials == 0 {
        return true;
    }
    if !descriptor.partitions_fibers() {
        return false;
    }
    let Ok(blocks) = descriptor.block_data() else {
        return false;
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials).all(|_| {
        blocks.iter().all(|block| {
            random_reframing(block, &mut rng).is_some_and(|moved| verify_block(&moved).passed())
        })
    })
}

pub fn psi_is_conjugacy_class_check(
    m: &SeifertInvariants,
    trials: u64,
    seed: u64,
) -> Result<bool, CensusError> {
    let descriptor = PsiDescriptor::for_manifold(m)?;
    Ok(psi_descriptor_check(&descriptor, trials, seed))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftReport {
    pub cover: SeifertInvariants,
    pub chi_orb: Rational,
    pub chi_orb_cover: Rational,
    pub euler_number: Rational,
    pub euler_number_cover: Rational,
    pub chi_doubles: bool,
    pub euler_doubles: bool,
    pub cover_admissibility: AdmissibilityReport,
}

/// Orientable double cover: base genus `k - 1`, every pair twice, `b` doubled.
pub fn lift_to_double_cover(m: &SeifertInvariants) -> Result<LiftReport, CensusError> {
    if m.base().is_orientable() {
        return Err(CensusError::OrientableBase);
    }
    let genus = m.base().genus() - 1u32;
    let pairs = m
        .pairs()
        .iter()
        .flat_map(|pair| [pair.clone(), pair.clone()])
        .collect();
    let cover = SeifertInvariants::new(
        BaseSurface::orientable(genus),
        pairs,
        m.b() * BigInt::from(2),
    );
    let two = Rational::from_integer(BigInt::from(2));
    let chi_orb = m.orbifold_euler_characteristic();
    let chi_orb_cover = cover.orbifold_euler_characteristic();
    let euler_number = m.euler_number();
    let euler_number_cover = cover.euler_number();
    let cover_admissibility = admissibility::check_admissible(&cover)?;
    Ok(LiftReport {
        chi_doubles: chi_orb_cover == &chi_orb * &two,
        euler_doubles: euler_number_cover == &euler_number * &two,
        cover,
        chi_orb,
        chi_orb_cover,
        euler_number,
        euler_number_cover,
        cover_admissibility,
    })
}
