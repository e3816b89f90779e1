//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fail.

use std::collections::BTreeSet;
use std::panic;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use seifert_core::admissibility::{check_admissible, enumerate_admissible};
use seifert_core::census::{
    commutation_obstruction, enumerate_factorizations, lift_to_double_cover, FiberOrientation,
};
use seifert_core::filling::{
    boundary_homology_identity, extension_condition, induced_filling_frame,
    solve_boundary_involutions, transport_through_gluing, verify_v221, verify_v221_construction,
    ExtensionConstraint, PSI_MATRICES,
};
use seifert_core::surface::{classes_for_genus, count_classes, ClassFilter};
use seifert_core::torus::{involution_class, involutions_in_window, ConjugatorSearch, IntMatrix2};
use seifert_core::{
    parse_seifert, BaseSurface, FillingSlope, GeometryType, Rational, SeifertInvariants,
    SeifertPair,
};

const GOLDEN: &str = include_str!("golden/enumerate_g3_n8.txt");
const MALFORMED: &str = include_str!("data/malformed_descriptors.txt");

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, detail: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(detail.into())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    check(
        elapsed < limit,
        format!("took {elapsed:?}, limit {limit:?}"),
    )
}

fn m(a: i64, b: i64, c: i64, d: i64) -> IntMatrix2 {
    IntMatrix2::new(a, b, c, d)
}

fn pm(x: IntMatrix2) -> BTreeSet<IntMatrix2> {
    [x, -x].into_iter().collect()
}

/// Admissible descriptors found by brute force over a window of normalized
/// descriptors with fibers of order 2 to 4.
fn brute_force_admissible(g_max: u64, n_max: usize) -> BTreeSet<String> {
    let kinds = [(2, 1), (3, 1), (3, 2), (4, 1), (4, 3)];
    let mut multisets: Vec<Vec<(i64, i64)>> = vec![vec![]];
    for kind in kinds {
        let mut grown = Vec::new();
        for base in &multisets {
            for count in 0..=n_max.saturating_sub(base.len()) {
                let mut next = base.clone();
                next.extend(std::iter::repeat_n(kind, count));
                grown.push(next);
            }
        }
        multisets = grown;
    }
    let mut found = BTreeSet::new();
    for genus in 0..=g_max {
        for pairs in &multisets {
            let n = pairs.iter().filter(|p| p.0 == 2).count();
            if n > n_max {
                continue;
            }
            for b in -(n_max as i64)..=3 {
                let m = SeifertInvariants::new(
                    BaseSurface::orientable(genus),
                    pairs
                        .iter()
                        .map(|&(q, p)| SeifertPair::new(q, p).unwrap())
                        .collect(),
                    b,
                );
                if check_admissible(&m).unwrap().admissible {
                    found.insert(m.normalize().to_string());
                }
            }
        }
    }
    found
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let result = seifert_cli::run_with_env_seed(
        ["seifert", "enumerate", "--gmax", "3", "--nmax", "8"],
        None,
    );
    let elapsed = start.elapsed();
    check(result.exit_code == 0, "enumerate failed")?;
    check(result.output == GOLDEN, "output differs from golden file")?;
    within(elapsed, Duration::from_secs(1))?;

    let list = enumerate_admissible(3, 8);
    for desc in &list {
        let n = desc.order_two_count();
        check(
            desc.euler_number() == Rational::from_integer(0.into()),
            format!("{desc}: e != 0"),
        )?;
        check(
            desc.pairs().iter().all(|p| *p.q() == 2.into()),
            format!("{desc}: q != 2"),
        )?;
        check(n % 2 == 0, format!("{desc}: odd n"))?;
        check(
            desc.b() * 2i64 + n as i64 == 0.into(),
            format!("{desc}: b != -n/2"),
        )?;
        let chi = desc.orbifold_euler_characteristic();
        let zero = Rational::from_integer(0.into());
        let (want_geometry, want_case) = if chi > zero {
            (GeometryType::S2xR, 1)
        } else if chi == zero {
            (GeometryType::E3, 2)
        } else {
            (GeometryType::H2xR, 3)
        };
        let report = check_admissible(desc).unwrap();
        check(
            report.geometry == want_geometry,
            format!("{desc}: geometry"),
        )?;
        check(
            report.case_label.map(|c| c.case_number()) == Some(want_case),
            format!("{desc}: case"),
        )?;
    }
    let listed: BTreeSet<String> = list.iter().map(ToString::to_string).collect();
    let oracle = brute_force_admissible(3, 8);
    check(
        listed == oracle,
        format!(
            "oracle found {} descriptors, enumeration {}",
            oracle.len(),
            listed.len()
        ),
    )?;
    Ok(format!(
        "{} descriptors match golden file and brute-force oracle in {elapsed:?}",
        list.len()
    ))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    for g in 0..=20u64 {
        let counts = count_classes(g);
        let listed = classes_for_genus(g, ClassFilter::All).len() as u64;
        check(
            listed == 4 + 2 * g && counts.total == listed,
            format!("genus {g}: {listed} classes"),
        )?;
        check(
            counts.closed_forms_agree(),
            format!("genus {g}: closed forms disagree"),
        )?;
    }
    let one = count_classes(1);
    check((one.preserving, one.reversing) == (3, 3), "genus 1 split")?;
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!(
        "4+2g classes for g=0..20, genus 1 splits 3/3, {elapsed:?}"
    ))
}

fn criterion_3() -> Outcome {
    let mut slopes = vec![(FillingSlope::new(1, 2).unwrap(), pm(m(1, -1, 0, -1)))];
    for x in -5i64..=5 {
        slopes.push((FillingSlope::new(x, 1).unwrap(), pm(m(1, -2 * x, 0, -1))));
    }
    for (slope, printed) in &slopes {
        let frame = induced_filling_frame(slope).map_err(|e| e.to_string())?;
        let constraint =
            ExtensionConstraint::new(frame.fiber, frame.meridian).map_err(|e| e.to_string())?;
        let derived: BTreeSet<IntMatrix2> = solve_boundary_involutions(&constraint)
            .iter()
            .map(|a| transport_through_gluing(a, &frame.gluing).unwrap())
            .collect();
        check(
            &derived == printed,
            format!("slope {slope}: derived {derived:?}"),
        )?;
        let library = extension_condition(slope).map_err(|e| e.to_string())?;
        check(
            &library == printed,
            format!("slope {slope}: extension_condition {library:?}"),
        )?;
    }
    Ok(format!(
        "{} slopes derived by solve + transport match the printed matrices",
        slopes.len()
    ))
}

fn exhaustive_solutions(v_fix: [i64; 2], v_flip: [i64; 2], bound: i64) -> BTreeSet<IntMatrix2> {
    let mut out = BTreeSet::new();
    let range = -bound..=bound;
    for a in range.clone() {
        for b in range.clone() {
            for c in range.clone() {
                for d in range.clone() {
                    let x = m(a, b, c, d);
                    if !x.is_unimodular() {
                        continue;
                    }
                    for eps in [1, -1] {
                        let fix = x.apply(v_fix) == [eps * v_fix[0], eps * v_fix[1]];
                        let flip = x.apply(v_flip) == [-eps * v_flip[0], -eps * v_flip[1]];
                        if fix && flip {
                            out.insert(x);
                        }
                    }
                }
            }
        }
    }
    out
}

fn criterion_4() -> Outcome {
    let systems = [
        ([-2, 1], [0, 1], pm(m(1, 0, -1, -1))),
        ([1, 0], [0, 1], pm(m(1, 0, 0, -1))),
    ];
    for (v_fix, v_flip, expected) in systems {
        let constraint = ExtensionConstraint::new(v_fix, v_flip).map_err(|e| e.to_string())?;
        let solved = solve_boundary_involutions(&constraint);
        check(
            solved == expected,
            format!("{v_fix:?}/{v_flip:?}: solver gave {solved:?}"),
        )?;
        let searched = exhaustive_solutions(v_fix, v_flip, 4);
        check(
            searched == expected,
            format!("{v_fix:?}/{v_flip:?}: search found {searched:?}"),
        )?;
    }
    Ok("both systems have exactly the +- pair; exhaustive [-4,4] search agrees".to_string())
}

fn criterion_5() -> Outcome {
    let report = verify_v221_construction();
    check(report.passed(), format!("construction fails: {report:?}"))?;
    let mut perturbations = 0;
    for slot in 0..3 {
        for entry in 0..4 {
            for delta in [-1i64, 1] {
                let mut matrices = PSI_MATRICES;
                let mut e = matrices[slot].entries();
                e[entry] += delta;
                matrices[slot] = m(e[0], e[1], e[2], e[3]);
                check(
                    !verify_v221(matrices).passed(),
                    format!("perturbation slot {slot} entry {entry} by {delta} still passes"),
                )?;
                perturbations += 1;
            }
        }
    }
    for reversed in [false, true] {
        let identity = boundary_homology_identity(reversed).map_err(|e| e.to_string())?;
        check(
            identity.holds(),
            format!("homology identity fails, reversed = {reversed}"),
        )?;
        check(identity.net_t_exponent() == 0, "net t exponent")?;
    }
    Ok(format!("construction verified; all {perturbations} perturbations rejected; f(alpha) = alpha^-+1 with net t-exponent 0"))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let involutions = involutions_in_window(3);
    let search = ConjugatorSearch::new(5);
    let mut pairs = 0usize;
    for a in &involutions {
        let class_a = involution_class(a).map_err(|e| e.to_string())?;
        for b in &involutions {
            let same = class_a == involution_class(b).map_err(|e| e.to_string())?;
            let reachable = search.find(a, b).is_some();
            check(
                same == reachable,
                format!("{a} vs {b}: class says {same}, search says {reachable}"),
            )?;
            pairs += 1;
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(60))?;
    Ok(format!(
        "{} involutions, {pairs} pairs, 100% agreement in {elapsed:?}",
        involutions.len()
    ))
}

fn criterion_7() -> Outcome {
    let m = parse_seifert("(0,o1|(2,1),(2,1),(2,1),(2,1),(1,-2))").map_err(|e| e.to_string())?;
    let report = enumerate_factorizations(&m).map_err(|e| e.to_string())?;
    check(
        report.count == 6 && report.records.len() == 6,
        format!("count {}", report.count),
    )?;
    let preserved = report
        .records
        .iter()
        .filter(|r| r.fiber_orientation == FiberOrientation::Preserved)
        .count();
    check(
        preserved == 2,
        format!("{preserved} fiber-preserving records"),
    )?;
    check(report.count - preserved == 4, "fiber-reversing records")?;
    check(
        report.records.iter().all(|r| !commutation_obstruction(r)),
        "obstructed record emitted",
    )?;
    Ok("6 records, 2 fiber-preserving and 4 fiber-reversing, none obstructed".to_string())
}

fn random_non_orientable(rng: &mut ChaCha8Rng) -> SeifertInvariants {
    let k = rng.gen_range(1u64..=6);
    let count = rng.gen_range(0..=5);
    let pairs = (0..count)
        .map(|_| loop {
            let q = rng.gen_range(1i64..=9);
            let p = rng.gen_range(-12i64..=12);
            if let Ok(pair) = SeifertPair::new(q, p) {
                break pair;
            }
        })
        .collect();
    SeifertInvariants::new(
        BaseSurface::non_orientable(k).unwrap(),
        pairs,
        rng.gen_range(-6i64..=6),
    )
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let two = Rational::from_integer(2.into());
    for _ in 0..50 {
        let m = random_non_orientable(&mut rng);
        let lift = lift_to_double_cover(&m).map_err(|e| e.to_string())?;
        let chi = lift.cover.orbifold_euler_characteristic();
        let e = lift.cover.euler_number();
        check(
            chi == m.orbifold_euler_characteristic() * &two,
            format!("{m}: chi_orb not doubled"),
        )?;
        check(e == m.euler_number() * &two, format!("{m}: e not doubled"))?;
        check(
            lift.chi_doubles && lift.euler_doubles,
            format!("{m}: report flags"),
        )?;
        check(lift.cover.base().is_orientable(), "cover base")?;
    }
    let klein = parse_seifert("(2,n1|)").map_err(|e| e.to_string())?;
    let torus = parse_seifert("(1,o1|)").map_err(|e| e.to_string())?;
    let lifted = lift_to_double_cover(&klein).map_err(|e| e.to_string())?;
    check(
        lifted.cover == torus,
        format!("Klein bottle lifts to {}", lifted.cover),
    )?;
    Ok(
        "50 random descriptors double chi_orb and e; Klein bottle base lifts to torus base"
            .to_string(),
    )
}

fn random_descriptor(rng: &mut ChaCha8Rng) -> SeifertInvariants {
    let base = if rng.gen_bool(0.25) {
        BaseSurface::non_orientable(rng.gen_range(1u64..=40)).unwrap()
    } else {
        BaseSurface::orientable(rng.gen_range(0u64..=40))
    };
    let count = rng.gen_range(0..=7);
    let pairs = (0..count)
        .map(|_| loop {
            let q = rng.gen_range(1i64..=50);
            let p = rng.gen_range(-100i64..=100);
            if let Ok(pair) = SeifertPair::new(q, p) {
                break pair;
            }
        })
        .collect();
    SeifertInvariants::new(base, pairs, rng.gen_range(-30i64..=30))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for i in 0..10_000 {
        let m = random_descriptor(&mut rng);
        let printed = m.to_string();
        let parsed = parse_seifert(&printed).map_err(|e| format!("#{i} {printed}: {e}"))?;
        check(
            parsed == m,
            format!("#{i} {printed}: round-trip changed the descriptor"),
        )?;
        check(
            parsed.to_string() == printed,
            format!("#{i} {printed}: reprint differs"),
        )?;
    }
    let entries: Vec<&str> = MALFORMED
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .collect();
    let previous_hook = panic::take_hook();
    panic::set_hook(Box::new(|_| {}));
    let mut failure = None;
    for entry in &entries {
        match panic::catch_unwind(|| parse_seifert(entry)) {
            Err(_) => failure = Some(format!("{entry}: panicked")),
            Ok(Ok(m)) => failure = Some(format!("{entry}: accepted as {m}")),
            Ok(Err(e)) if e.position > entry.len() => {
                failure = Some(format!("{entry}: position {} out of range", e.position))
            }
            Ok(Err(_)) => {}
        }
        if failure.is_some() {
            break;
        }
    }
    panic::set_hook(previous_hook);
    if let Some(detail) = failure {
        return Err(detail);
    }
    Ok(format!(
        "10000 round-trips; {} malformed entries rejected with positions",
        entries.len()
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("case table enumeration", criterion_1),
        ("surface class counts", criterion_2),
        ("extension conditions", criterion_3),
        ("constraint solver uniqueness", criterion_4),
        ("V(2,2;-1) verification", criterion_5),
        ("conjugacy oracle agreement", criterion_6),
        ("census of the four-fiber example", criterion_7),
        ("double cover", criterion_8),
        ("parser round-trip and malformed corpus", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
