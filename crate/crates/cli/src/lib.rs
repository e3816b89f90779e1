//! Command dispatch for the `seifert` binary. [`run`] never prints; it returns
//! the exit code and the text destined for stdout or stderr.

use std::ffi::OsString;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use seifert_core::admissibility::{self, AdmissibilityReport};
use seifert_core::census::{self, FactorizationRecord, LiftReport};
use seifert_core::filling::{self, HomologyIdentityReport, V221Report};
use seifert_core::surface::{self, ClassFilter, SurfaceInvolutionClass};
use seifert_core::torus::{self, ConjugatorSearch, IntMatrix2};
use seifert_core::{format_rational, FillingSlope, SeifertInvariants};

pub const DEFAULT_SEED: u64 = 0x05e1_fe47;
pub const SEED_ENV: &str = "SEIFERT_SEED";
const SCHEMA: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Error,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommandResult {
    pub status: Status,
    /// Absent on error.
    pub payload: Option<Value>,
    /// One human-readable line; the error text when `status` is `Error`.
    pub message: String,
    /// Everything to write to stdout (on success) or stderr (on error).
    pub output: String,
    pub exit_code: i32,
}

impl CommandResult {
    fn ok(payload: Value, message: String, output: String) -> Self {
        Self {
            status: Status::Ok,
            payload: Some(payload),
            message,
            output,
            exit_code: 0,
        }
    }

    fn error(message: String, exit_code: i32) -> Self {
        Self {
            status: Status::Error,
            payload: None,
            output: message.clone(),
            message,
            exit_code,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "seifert",
    version,
    about = "Seifert fibered manifolds and their orientation-reversing involutions"
)]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Euler number, orbifold Euler characteristic, geometry and case.
    Classify { descriptor: String },
    /// Admissibility report (always JSON).
    Admissible { descriptor: String },
    /// Admissible descriptors with genus <= G and n <= N.
    Enumerate {
        #[arg(long)]
        gmax: u64,
        #[arg(long)]
        nmax: u64,
    },
    /// Involutions of the torus in GL(2,Z).
    Mcg {
        #[command(subcommand)]
        command: McgCommand,
    },
    /// Extension condition of a filling slope, optionally testing a matrix.
    Extend {
        #[arg(long, allow_hyphen_values = true)]
        slope: String,
        #[arg(long, allow_hyphen_values = true)]
        matrix: Option<String>,
    },
    /// Check the boundary data of the V(2,2;-1) block involution.
    #[command(name = "verify-v221")]
    VerifyV221 {
        /// Three replacement matrices `a,b;c,d`.
        #[arg(long = "matrix", allow_hyphen_values = true, num_args = 3)]
        matrices: Option<Vec<String>>,
    },
    /// Involution classes of the genus-G surface (always JSON).
    #[command(name = "surface-classes")]
    SurfaceClasses {
        #[arg(long)]
        genus: u64,
        #[arg(long, value_enum, default_value_t = FilterArg::All)]
        filter: FilterArg,
    },
    /// Factorizations f = psi . g up to conjugacy (base genus 0).
    Census { descriptor: String },
    /// Orientable double cover of a non-orientable base (always JSON).
    Lift { descriptor: String },
    /// Randomized re-framing check of the psi block data (always JSON).
    #[command(name = "psi-check")]
    PsiCheck {
        descriptor: String,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Debug, Subcommand)]
enum McgCommand {
    /// Conjugacy class label of an involution.
    Class {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
    },
    /// Smallest-entry H with H A H^-1 = B inside the window.
    Conjugate {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value_t = 5)]
        bound: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FilterArg {
    All,
    Preserving,
    Reversing,
}

impl From<FilterArg> for ClassFilter {
    fn from(f: FilterArg) -> Self {
        match f {
            FilterArg::All => ClassFilter::All,
            FilterArg::Preserving => ClassFilter::Preserving,
            FilterArg::Reversing => ClassFilter::Reversing,
        }
    }
}

/// Runs with the seed taken from `SEIFERT_SEED` when set.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let env_seed = std::env::var(SEED_ENV).ok();
    run_with_env_seed(argv, env_seed.as_deref())
}

pub fn run_with_env_seed<I, T>(argv: I, env_seed: Option<&str>) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let text = err.render().to_string();
            return if err.use_stderr() {
                CommandResult::error(text, 2)
            } else {
                // --help and --version
                CommandResult {
                    status: Status::Ok,
                    payload: Some(Value::Null),
                    message: String::new(),
                    output: text,
                    exit_code: 0,
                }
            };
        }
    };
    match dispatch(&cli, env_seed) {
        Ok(out) => {
            let output = if cli.json || out.always_json {
                format!(
                    "{}\n",
                    serde_json::to_string_pretty(&out.payload).expect("json")
                )
            } else {
                out.text
            };
            CommandResult::ok(out.payload, out.message, output)
        }
        Err(message) => CommandResult::error(format!("error: {message}\n"), 1),
    }
}

struct Output {
    payload: Value,
    message: String,
    text: String,
    always_json: bool,
}

impl Output {
    fn text(payload: Value, message: String, text: String) -> Self {
        Self {
            payload,
            message,
            text,
            always_json: false,
        }
    }

    fn json(payload: Value, message: String) -> Self {
        Self {
            payload,
            message,
            text: String::new(),
            always_json: true,
        }
    }
}

fn dispatch(cli: &Cli, env_seed: Option<&str>) -> Result<Output, String> {
    match &cli.command {
        Command::Classify { descriptor } => classify(descriptor),
        Command::Admissible { descriptor } => {
            let m = parse(descriptor)?;
            let report = admissibility::check_admissible(&m).map_err(|e| e.to_string())?;
            let mut payload = report_json(&report);
            payload["schema"] = json!(SCHEMA);
            payload["input"] = json!(descriptor);
            payload["normalized"] = json!(m.normalize().to_string());
            let verdict = if report.admissible {
                "admissible"
            } else {
                "not admissible"
            };
            Ok(Output::json(
                payload,
                format!("{} {verdict}", m.normalize()),
            ))
        }
        Command::Enumerate { gmax, nmax } => Ok(enumerate(*gmax, *nmax)),
        Command::Mcg { command } => mcg(command),
        Command::Extend { slope, matrix } => extend(slope, matrix.as_deref()),
        Command::VerifyV221 { matrices } => verify(matrices.as_deref()),
        Command::SurfaceClasses { genus, filter } => Ok(surface_classes(*genus, (*filter).into())),
        Command::Census { descriptor } => census_cmd(descriptor),
        Command::Lift { descriptor } => {
            let m = parse(descriptor)?;
            let report = census::lift_to_double_cover(&m).map_err(|e| e.to_string())?;
            Ok(Output::json(
                lift_json(descriptor, &report),
                format!("cover {}", report.cover),
            ))
        }
        Command::PsiCheck {
            descriptor,
            trials,
            seed,
        } => {
            let seed = match (seed, env_seed) {
                (Some(seed), _) => *seed,
                (None, Some(text)) => text
                    .trim()
                    .parse()
                    .map_err(|_| format!("{SEED_ENV} must be an unsigned integer, got {text:?}"))?,
                (None, None) => DEFAULT_SEED,
            };
            let m = parse(descriptor)?;
            let descriptor_data =
                census::PsiDescriptor::for_manifold(&m).map_err(|e| e.to_string())?;
            let passed = census::psi_descriptor_check(&descriptor_data, *trials, seed);
            let payload = json!({
                "schema": SCHEMA,
                "manifold": descriptor_data.manifold.to_string(),
                "blocks": descriptor_data.blocks.iter().map(|b| b.fibers).collect::<Vec<_>>(),
                "trials": trials,
                "seed": seed,
                "passed": passed,
            });
            Ok(Output::json(payload, format!("psi check passed: {passed}")))
        }
    }
}

fn parse(descriptor: &str) -> Result<SeifertInvariants, String> {
    descriptor
        .parse()
        .map_err(|e: seifert_core::ParseError| e.to_string())
}

fn parse_matrix(text: &str) -> Result<IntMatrix2, String> {
    text.parse()
        .map_err(|e: seifert_core::ParseError| e.to_string())
}

fn matrix_json(m: &IntMatrix2) -> Value {
    json!([[m.a, m.b], [m.c, m.d]])
}

fn report_json(report: &AdmissibilityReport) -> Value {
    json!({
        "admissible": report.admissible,
        "violations": report.violations.iter().map(|v| v.as_str()).collect::<Vec<_>>(),
        "case_label": report.case_label.map(|c| c.as_str()),
        "geometry": report.geometry.as_str(),
    })
}

fn invariants_json(input: &str, m: &SeifertInvariants) -> Value {
    json!({
        "input": input,
        "normalized": m.normalize().to_string(),
        "euler_number": format_rational(&m.euler_number()),
        "chi_orb": format_rational(&m.orbifold_euler_characteristic()),
        "geometry": m.geometry().as_str(),
    })
}

fn classify(descriptor: &str) -> Result<Output, String> {
    let m = parse(descriptor)?;
    let mut payload = invariants_json(descriptor, &m);
    payload["schema"] = json!(SCHEMA);
    let case = if m.base().is_orientable() {
        admissibility::classify_case(&m).ok()
    } else {
        None
    };
    payload["case"] = json!(case.map(|c| c.case_number()));
    payload["case_label"] = json!(case.map(|c| c.as_str()));
    let case_text = match case {
        Some(c) => format!("case {} ({})", c.case_number(), c),
        None => "no case".to_string(),
    };
    let message = format!(
        "geometry {}, e={}, chi_orb={}, {case_text}",
        payload["geometry"].as_str().unwrap_or_default(),
        payload["euler_number"].as_str().unwrap_or_default(),
        payload["chi_orb"].as_str().unwrap_or_default(),
    );
    let text = format!("{}\n{message}\n", m.normalize());
    Ok(Output::text(payload, message, text))
}

fn enumerate(gmax: u64, nmax: u64) -> Output {
    let list = admissibility::enumerate_admissible(gmax, nmax);
    let mut text = String::new();
    let mut rows = Vec::with_capacity(list.len());
    for m in &list {
        let case = admissibility::classify_case(m).expect("enumerated descriptors are admissible");
        text.push_str(&format!(
            "{}\t{}\t{}\t{}\n",
            m,
            m.geometry(),
            case,
            format_rational(&m.orbifold_euler_characteristic())
        ));
        rows.push(json!({
            "descriptor": m.to_string(),
            "genus": m.base().genus().to_string(),
            "n": m.order_two_count(),
            "euler_number": format_rational(&m.euler_number()),
            "chi_orb": format_rational(&m.orbifold_euler_characteristic()),
            "geometry": m.geometry().as_str(),
            "case_label": case.as_str(),
        }));
    }
    let payload = json!({
        "schema": SCHEMA,
        "g_max": gmax,
        "n_max": nmax,
        "count": list.len(),
        "descriptors": rows,
    });
    Output::text(
        payload,
        format!("{} admissible descriptors", list.len()),
        text,
    )
}

fn mcg(command: &McgCommand) -> Result<Output, String> {
    match command {
        McgCommand::Class { matrix } => {
            let m = parse_matrix(matrix)?;
            let label = torus::involution_class(&m).map_err(|e| e.to_string())?;
            let payload = json!({
                "schema": SCHEMA,
                "matrix": matrix_json(&m),
                "class": label.as_str(),
                "representative": matrix_json(&label.representative()),
            });
            let message = format!("{m} is {label}");
            Ok(Output::text(
                payload,
                message.clone(),
                format!("{message}\n"),
            ))
        }
        McgCommand::Conjugate { a, b, bound } => {
            let (a, b) = (parse_matrix(a)?, parse_matrix(b)?);
            let found = ConjugatorSearch::new(*bound).find(&a, &b);
            let payload = json!({
                "schema": SCHEMA,
                "a": matrix_json(&a),
                "b": matrix_json(&b),
                "bound": bound,
                "conjugator": found.as_ref().map(matrix_json),
            });
            let message = match found {
                Some(h) => format!("H = {h}"),
                None => format!("no conjugator with entries in [-{bound},{bound}]"),
            };
            Ok(Output::text(
                payload,
                message.clone(),
                format!("{message}\n"),
            ))
        }
    }
}

fn extend(slope: &str, matrix: Option<&str>) -> Result<Output, String> {
    let slope: FillingSlope = slope
        .parse()
        .map_err(|e: seifert_core::ParseError| e.to_string())?;
    let condition = filling::extension_condition(&slope).map_err(|e| e.to_string())?;
    let mut payload = json!({
        "schema": SCHEMA,
        "slope": [slope.m(), slope.l()],
        "extension_condition": condition.iter().map(matrix_json).collect::<Vec<_>>(),
    });
    let listed = condition
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ");
    let mut message = format!("slope {slope}: {listed}");
    if let Some(text) = matrix {
        let m = parse_matrix(text)?;
        let extends = filling::check_extends(&m, &slope).map_err(|e| e.to_string())?;
        payload["matrix"] = matrix_json(&m);
        payload["extends"] = json!(extends);
        message = format!("{m} extends over slope {slope}: {extends}");
    }
    Ok(Output::text(
        payload,
        message.clone(),
        format!("{message}\n"),
    ))
}

fn homology_json(report: &HomologyIdentityReport) -> Value {
    json!({
        "fiber_reversed": report.fiber_reversed,
        "actions": report.actions.iter().map(matrix_json).collect::<Vec<_>>(),
        "alpha_image": report.image.alpha,
        "expected": report.expected,
        "t_terms": report.image.t_terms,
        "net_t_exponent": report.net_t_exponent(),
        "holds": report.holds(),
    })
}

fn v221_json(report: &V221Report) -> Value {
    json!({
        "matrices": report.matrices.iter().map(matrix_json).collect::<Vec<_>>(),
        "assignment": report.assignment.map(|slopes| slopes.map(|s| [s.m(), s.l()])),
        "involutions": report.block.involutions,
        "extends": report.block.extends,
        "outer_agrees": report.block.outer_agrees,
        "homology_closes": report.block.homology_closes,
        "passed": report.passed(),
    })
}

fn verify(matrices: Option<&[String]>) -> Result<Output, String> {
    let matrices = match matrices {
        Some(texts) => {
            let parsed = texts
                .iter()
                .map(|t| parse_matrix(t))
                .collect::<Result<Vec<_>, _>>()?;
            parsed
                .try_into()
                .map_err(|_| "expected three matrices".to_string())?
        }
        None => filling::PSI_MATRICES,
    };
    let report = filling::verify_v221(matrices);
    let identities = [false, true]
        .map(|reversed| filling::boundary_homology_identity(reversed).map_err(|e| e.to_string()));
    let [kept, reversed] = identities;
    let (kept, reversed) = (kept?, reversed?);
    let mut payload = v221_json(&report);
    payload["schema"] = json!(SCHEMA);
    payload["homology_identity"] = json!({
        "fiber_preserved": homology_json(&kept),
        "fiber_reversed": homology_json(&reversed),
    });
    let message = format!(
        "V(2,2;-1) block {}; homology identity {}",
        if report.passed() {
            "verified"
        } else {
            "FAILED"
        },
        if kept.holds() && reversed.holds() {
            "holds"
        } else {
            "fails"
        },
    );
    let mut text = String::new();
    for (i, m) in report.matrices.iter().enumerate() {
        let slope = report
            .assignment
            .map(|a| a[i].to_string())
            .unwrap_or_else(|| "-".to_string());
        text.push_str(&format!(
            "slot {}: {m} filling {slope} involution {} extends {}\n",
            i + 1,
            report.block.involutions[i],
            report.block.extends[i]
        ));
    }
    text.push_str(&format!(
        "outer agrees {}, homology closes {}\n{message}\n",
        report.block.outer_agrees, report.block.homology_closes
    ));
    Ok(Output::text(payload, message, text))
}

fn class_json(class: &SurfaceInvolutionClass) -> Value {
    let fixed = surface::fixed_point_data(class);
    json!({
        "class": class.to_string(),
        "kind": class.kind().as_str(),
        "g": class.genus(),
        "r": class.r(),
        "orientation_preserving": class.orientation_preserving(),
        "usable": surface::usable(class),
        "fixed_points": {
            "isolated_points": fixed.isolated_points,
            "circles": fixed.circles,
            "free": fixed.free,
            "whole_surface": fixed.whole_surface,
        },
        "torus_action": surface::induced_torus_action(class).ok().map(|l| l.as_str()),
    })
}

fn surface_classes(genus: u64, filter: ClassFilter) -> Output {
    let classes = surface::classes_for_genus(genus, filter);
    let counts = surface::count_classes(genus);
    let payload = json!({
        "schema": SCHEMA,
        "genus": genus,
        "count": classes.len(),
        "counts": {
            "preserving": counts.preserving,
            "reversing": counts.reversing,
            "total": counts.total,
            "closed_forms_agree": counts.closed_forms_agree(),
        },
        "classes": classes.iter().map(class_json).collect::<Vec<_>>(),
    });
    Output::json(
        payload,
        format!("{} classes at genus {genus}", classes.len()),
    )
}

fn record_json(record: &FactorizationRecord) -> Value {
    json!({
        "fiber_orientation": record.fiber_orientation.as_str(),
        "surface_class": record.surface_class.to_string(),
        "fixed_boundary_count": record.fixed_boundary_count,
        "marked_permutation": record.marked_permutation,
        "psi_pairing": record.psi_pairing,
        "obstructed": census::commutation_obstruction(record),
    })
}

fn census_cmd(descriptor: &str) -> Result<Output, String> {
    let m = parse(descriptor)?;
    let report = census::enumerate_factorizations(&m).map_err(|e| e.to_string())?;
    let payload = json!({
        "schema": SCHEMA,
        "manifold": report.manifold.to_string(),
        "count": report.count,
        "records": report.records.iter().map(record_json).collect::<Vec<_>>(),
    });
    let message = format!("{}: count {}", report.manifold, report.count);
    let mut text = String::new();
    for r in &report.records {
        text.push_str(&format!(
            "{}\t{}\tfixes {}\n",
            r.fiber_orientation.as_str(),
            r.surface_class,
            r.fixed_boundary_count
        ));
    }
    text.push_str(&format!("count {}\n", report.count));
    Ok(Output::text(payload, message, text))
}

fn lift_json(input: &str, report: &LiftReport) -> Value {
    let mut cover_report = report_json(&report.cover_admissibility);
    cover_report["descriptor"] = json!(report.cover.to_string());
    json!({
        "schema": SCHEMA,
        "input": input,
        "cover": report.cover.to_string(),
        "chi_orb": format_rational(&report.chi_orb),
        "chi_orb_cover": format_rational(&report.chi_orb_cover),
        "euler_number": format_rational(&report.euler_number),
        "euler_number_cover": format_rational(&report.euler_number_cover),
        "chi_doubles": report.chi_doubles,
        "euler_doubles": report.euler_doubles,
        "cover_admissibility": cover_report,
    })
}
