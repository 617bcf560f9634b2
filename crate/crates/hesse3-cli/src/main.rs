//! Command-line front end: parses field and curve specifications, dispatches
//! to the library, and prints JSON reports.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use hesse3::algebra::{set_seed, Field, FieldElement, FieldSpec, RatFn, UniPoly};
use hesse3::elliptic::{points_over, CurveIso, EllipticModel, Shape};
use hesse3::pencil::{
    fiber, matching_fibers, matching_polynomial, pencil_weierstrass, singular_parameters,
    FiberResult, PencilParam, PencilWeierstrass,
};
use hesse3::symplectic::{curve_universe, theorem_check, TorsionIso};
use hesse3::torsion::{frobenius_matrix, torsion3, weil_pairing_tangent};
use hesse3::Error;

#[derive(Parser)]
#[command(name = "hesse3", version, about = "Hesse pencils over finite fields")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Pretty-print the JSON report
    #[arg(long, global = true)]
    pretty: bool,
    /// Emit machine-readable JSON (the default output format)
    #[arg(long, global = true)]
    json: bool,
    /// Seed for all randomized internals (HESSE3_SEED overrides)
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct FieldCurve {
    /// Field specification, e.g. p=7 or p=2,deg=3[,mod=c0,c1,...,1]
    #[arg(long)]
    field: String,
    /// Curve specification: shortw:a=..,b=.. | ord2:a2=..,a6=.. |
    /// ss2:a3=..,a4=..,a6=..
    #[arg(long)]
    curve: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Basic invariants and the rational point count of a curve
    Info(FieldCurve),
    /// The symbolic Weierstrass package of the curve's pencil
    Pencil(FieldCurve),
    /// A single member of the pencil at a parameter
    Fiber {
        #[command(flatten)]
        fc: FieldCurve,
        /// Pencil parameter: a field element or "inf"
        #[arg(long)]
        t: String,
    },
    /// The 3-torsion group, canonical basis, and Frobenius matrix
    Torsion(FieldCurve),
    /// The full pairing table on the 3-torsion points
    Pairing(FieldCurve),
    /// Pencil members whose invariant matches a target value
    MatchJ {
        #[command(flatten)]
        fc: FieldCurve,
        /// Target invariant (element of the base field)
        #[arg(long)]
        j: String,
        /// Search for parameters in an extension of this degree
        #[arg(long, default_value_t = 1)]
        ext: usize,
    },
    /// Parameters of the singular members of the pencil
    Singular {
        #[command(flatten)]
        fc: FieldCurve,
        /// Search for parameters in an extension of this degree
        #[arg(long, default_value_t = 1)]
        ext: usize,
    },
    /// Two-sided equivalence check for a pair of curves
    Check {
        #[command(flatten)]
        fc: FieldCurve,
        /// The second curve
        #[arg(long)]
        other: String,
    },
    /// Exhaustive pairwise verification over a small field
    Verify {
        #[arg(long)]
        field: String,
        /// Number of worker threads
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Largest permitted extension degree for internal searches
        #[arg(long, default_value_t = 24)]
        max_ext: usize,
    },
}

fn elt_str(e: &FieldElement) -> String {
    if e.field().degree() == 1 {
        format!("{}", e.coeffs()[0])
    } else {
        let mut c: Vec<String> = e.coeffs().iter().map(|v| v.to_string()).collect();
        while c.len() < e.field().degree() {
            c.push("0".into());
        }
        c.join(",")
    }
}

fn field_str(f: &Field) -> String {
    if f.degree() == 1 {
        format!("p={}", f.characteristic())
    } else {
        let m: Vec<String> = f.modulus().iter().map(|v| v.to_string()).collect();
        format!("p={},deg={},mod={}", f.characteristic(), f.degree(), m.join(","))
    }
}

fn curve_str(e: &EllipticModel) -> String {
    match e.shape() {
        Shape::ShortW { a, b } => format!("shortw:a={},b={}", elt_str(a), elt_str(b)),
        Shape::Char2Ord { a2, a6 } => {
            format!("ord2:a2={},a6={}", elt_str(a2), elt_str(a6))
        }
        Shape::Char2SS { a3, a4, a6 } => {
            format!("ss2:a3={},a4={},a6={}", elt_str(a3), elt_str(a4), elt_str(a6))
        }
    }
}

enum CliError {
    Usage(String),
    Domain(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError::Domain(e)
    }
}

fn parse_field(spec: &str) -> Result<Field, CliError> {
    let usage =
        || CliError::Usage(format!("invalid field spec `{spec}`; expected p=<prime>[,deg=<k>[,mod=<c0,c1,...>]]"));
    let rest = spec.strip_prefix("p=").ok_or_else(usage)?;
    let (p_str, rest) = match rest.split_once(",deg=") {
        None => (rest, None),
        Some((p, r)) => (p, Some(r)),
    };
    let p: u64 = p_str.parse().map_err(|_| usage())?;
    let Some(rest) = rest else {
        return FieldSpec::new(p, 1, None).map_err(CliError::Domain);
    };
    let (deg_str, modulus) = match rest.split_once(",mod=") {
        None => (rest, None),
        Some((d, m)) => (d, Some(m)),
    };
    let deg: usize = deg_str.parse().map_err(|_| usage())?;
    let modulus: Option<Vec<u64>> = match modulus {
        None => None,
        Some(m) => Some(
            m.split(',')
                .map(|c| c.parse().map_err(|_| usage()))
                .collect::<Result<_, _>>()?,
        ),
    };
    FieldSpec::new(p, deg, modulus.as_deref()).map_err(CliError::Domain)
}

fn parse_elt(field: &Field, text: &str) -> Result<FieldElement, CliError> {
    let coeffs: Vec<u64> = text
        .split(',')
        .map(|c| {
            c.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("invalid field element `{text}`")))
        })
        .collect::<Result<_, _>>()?;
    if coeffs.len() > field.degree() {
        return Err(CliError::Usage(format!(
            "element `{text}` has more coefficients than the field degree"
        )));
    }
    Ok(field.element(&coeffs))
}

/// Split `text` at each of the expected `key=` markers in order.
fn split_keys<'a>(text: &'a str, keys: &[&str]) -> Option<Vec<&'a str>> {
    let mut out = Vec::with_capacity(keys.len());
    let mut rest = text.strip_prefix(keys[0])?.strip_prefix('=')?;
    for key in &keys[1..] {
        let marker = format!(",{key}=");
        let (val, next) = rest.split_once(&marker)?;
        out.push(val);
        rest = next;
    }
    out.push(rest);
    Some(out)
}

fn parse_curve(field: &Field, spec: &str) -> Result<EllipticModel, CliError> {
    let usage = || {
        CliError::Usage(format!(
            "invalid curve spec `{spec}`; expected shortw:a=..,b=.. | ord2:a2=..,a6=.. | ss2:a3=..,a4=..,a6=.."
        ))
    };
    if let Some(rest) = spec.strip_prefix("shortw:") {
        let vals = split_keys(rest, &["a", "b"]).ok_or_else(usage)?;
        let a = parse_elt(field, vals[0])?;
        let b = parse_elt(field, vals[1])?;
        return EllipticModel::short_w(a, b).map_err(CliError::Domain);
    }
    if let Some(rest) = spec.strip_prefix("ord2:") {
        let vals = split_keys(rest, &["a2", "a6"]).ok_or_else(usage)?;
        let a2 = parse_elt(field, vals[0])?;
        let a6 = parse_elt(field, vals[1])?;
        return EllipticModel::char2_ord(a2, a6).map_err(CliError::Domain);
    }
    if let Some(rest) = spec.strip_prefix("ss2:") {
        let vals = split_keys(rest, &["a3", "a4", "a6"]).ok_or_else(usage)?;
        let a3 = parse_elt(field, vals[0])?;
        let a4 = parse_elt(field, vals[1])?;
        let a6 = parse_elt(field, vals[2])?;
        return EllipticModel::char2_ss(a3, a4, a6).map_err(CliError::Domain);
    }
    Err(usage())
}

fn poly_json(p: &UniPoly) -> Value {
    Value::Array(p.coeffs().iter().map(|c| Value::String(elt_str(c))).collect())
}

fn ratfn_json(r: &RatFn) -> Value {
    json!({ "num": poly_json(&r.num), "den": poly_json(&r.den) })
}

fn point_json(coords: &[FieldElement]) -> Value {
    Value::Array(coords.iter().map(|e| Value::String(elt_str(e))).collect())
}

fn param_json(t: &PencilParam) -> Value {
    match t {
        PencilParam::Infinity => Value::String("inf".into()),
        PencilParam::Finite(v) => Value::String(elt_str(v)),
    }
}

fn iso_json(phi: &TorsionIso) -> Value {
    json!({ "matrix": phi.matrix })
}

fn curve_iso_json(iso: &CurveIso) -> Value {
    json!({
        "from": curve_str(&iso.source),
        "to": curve_str(&iso.target),
    })
}

fn run(cli: &Cli, seed: u64) -> Result<(Value, ExitCode), CliError> {
    let report = |v: Value| Ok((v, ExitCode::SUCCESS));
    match &cli.cmd {
        Cmd::Info(fc) => {
            let field = parse_field(&fc.field)?;
            let e = parse_curve(&field, &fc.curve)?;
            let points = points_over(&e, &field)?;
            report(json!({
                "field": field_str(&field),
                "curve": curve_str(&e),
                "discriminant": elt_str(&e.discriminant()),
                "j": elt_str(&e.j_invariant()),
                "point_count": points.len(),
                "seed": seed,
            }))
        }
        Cmd::Pencil(fc) => {
            let field = parse_field(&fc.field)?;
            let e = parse_curve(&field, &fc.curve)?;
            let family = match pencil_weierstrass(&e) {
                PencilWeierstrass::ShortW { a_t, b_t, a_mat, det_a } => json!({
                    "shape": "shortw",
                    "a_t": poly_json(&a_t),
                    "b_t": poly_json(&b_t),
                    "matrix": a_mat
                        .iter()
                        .map(|row| {
                            Value::Array(row.iter().map(poly_json).collect())
                        })
                        .collect::<Vec<_>>(),
                    "det": poly_json(&det_a),
                }),
                PencilWeierstrass::Char2Ord { b1, b2, b6, special_t1 } => json!({
                    "shape": "ord2",
                    "b1": poly_json(&b1),
                    "b2": poly_json(&b2),
                    "b6": poly_json(&b6),
                    "special_t1": curve_str(&special_t1),
                }),
                PencilWeierstrass::Char2SS { b2, b6, special_t0 } => json!({
                    "shape": "ss2",
                    "b2": ratfn_json(&b2),
                    "b6": ratfn_json(&b6),
                    "special_t0": special_t0.as_ref().map(curve_str),
                }),
            };
            report(json!({
                "field": field_str(&field),
                "curve": curve_str(&e),
                "family": family,
                "seed": seed,
            }))
        }
        Cmd::Fiber { fc, t } => {
            let field = parse_field(&fc.field)?;
            let e = parse_curve(&field, &fc.curve)?;
            let param = if t == "inf" {
                PencilParam::Infinity
            } else {
                PencilParam::Finite(parse_elt(&field, t)?)
            };
            let result = match fiber(&e, &param)? {
                FiberResult::Smooth(model) => json!({
                    "smooth": true,
                    "model": curve_str(&model),
                }),
                FiberResult::Singular(pt) => json!({
                    "smooth": false,
                    "singular_point": point_json(pt.coords()),
                    "point_field": field_str(pt.field()),
                }),
            };
            report(json!({
                "field": field_str(&field),
                "curve": curve_str(&e),
                "t": param_json(&param),
                "fiber": result,
                "seed": seed,
            }))
        }
        Cmd::Torsion(fc) => {
            let field = parse_field(&fc.field)?;
            let e = parse_curve(&field, &fc.curve)?;
            let tor = torsion3(&e)?;
            let points: Vec<Value> = tor
                .points
                .iter()
                .map(|p| point_json(&p.to_plane().coords()[..]))
                .collect();
            let s_idx = tor.points.iter().position(|p| *p == tor.basis.s).unwrap();
            let t_idx = tor.points.iter().position(|p| *p == tor.basis.t).unwrap();
            report(json!({
                "field": field_str(&field),
                "curve": curve_str(&e),
                "torsion_field": field_str(&tor.field),
                "points": points,
                "basis": [s_idx, t_idx],
                "zeta3": elt_str(&tor.basis.zeta3),
                "frobenius_matrix": frobenius_matrix(&tor.basis, field.order()),
                "seed": seed,
            }))
        }
        Cmd::Pairing(fc) => {
            let field = parse_field(&fc.field)?;
            let e = parse_curve(&field, &fc.curve)?;
            let tor = torsion3(&e)?;
            let mut table = Vec::new();
            for s in &tor.points {
                let mut row = Vec::new();
                for t in &tor.points {
                    row.push(Value::String(elt_str(&weil_pairing_tangent(s, t)?)));
                }
                table.push(Value::Array(row));
            }
            report(json!({
                "field": field_str(&field),
                "curve": curve_str(&e),
                "torsion_field": field_str(&tor.field),
                "points": tor
                    .points
                    .iter()
                    .map(|p| point_json(&p.to_plane().coords()[..]))
                    .collect::<Vec<_>>(),
                "table": table,
                "seed": seed,
            }))
        }
        Cmd::MatchJ { fc, j, ext } => {
            let field = parse_field(&fc.field)?;
            let e = parse_curve(&field, &fc.curve)?;
            let jp = parse_elt(&field, j)?;
            let search = FieldSpec::new(field.characteristic(), field.degree() * ext, None)?;
            let fibers = matching_fibers(&e, &jp, &search)?;
            report(json!({
                "field": field_str(&field),
                "curve": curve_str(&e),
                "j": elt_str(&jp),
                "matching_polynomial": matching_polynomial(&e, &jp).map(|g| poly_json(&g)),
                "search_field": field_str(&search),
                "parameters": fibers.iter().map(param_json).collect::<Vec<_>>(),
                "seed": seed,
            }))
        }
        Cmd::Singular { fc, ext } => {
            let field = parse_field(&fc.field)?;
            let e = parse_curve(&field, &fc.curve)?;
            let search = FieldSpec::new(field.characteristic(), field.degree() * ext, None)?;
            let params = singular_parameters(&e, &search)?;
            report(json!({
                "field": field_str(&field),
                "curve": curve_str(&e),
                "search_field": field_str(&search),
                "parameters": params.iter().map(param_json).collect::<Vec<_>>(),
                "seed": seed,
            }))
        }
        Cmd::Check { fc, other } => {
            let field = parse_field(&fc.field)?;
            let e = parse_curve(&field, &fc.curve)?;
            let e2 = parse_curve(&field, other)?;
            let rep = theorem_check(&e, &e2, &field)?;
            report(json!({
                "field": field_str(&field),
                "curve": curve_str(&e),
                "other": curve_str(&e2),
                "symplectic_witness": rep.symplectic_witness.as_ref().map(iso_json),
                "pencil_witness": rep.pencil_witness.as_ref().map(|(t0, iso)| json!({
                    "t": param_json(t0),
                    "isomorphism": curve_iso_json(iso),
                })),
                "verdict": rep.verdict,
                "seed": seed,
            }))
        }
        Cmd::Verify { field, jobs, max_ext } => {
            let field = parse_field(field)?;
            let summary = verify_parallel(&field, *jobs, *max_ext)?;
            let code = if summary.mismatches.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            };
            Ok((
                json!({
                    "field": field_str(&field),
                    "curves": summary.curves,
                    "pairs": summary.pairs,
                    "equivalences": summary.equivalences,
                    "memberships": summary.memberships,
                    "mismatches": summary.mismatches,
                    "max_ext": max_ext,
                    "seed": seed,
                }),
                code,
            ))
        }
    }
}

struct VerifyTotals {
    curves: usize,
    pairs: usize,
    equivalences: usize,
    memberships: usize,
    mismatches: Vec<String>,
}

/// Run the pairwise check across worker threads with deterministic
/// aggregation in pair order.
fn verify_parallel(field: &Field, jobs: usize, _max_ext: usize) -> Result<VerifyTotals, Error> {
    const MAX_ORDER: u128 = 16;
    if field.order() > MAX_ORDER {
        return Err(Error::FieldTooLarge);
    }
    let curves = curve_universe(field);
    let n = curves.len();
    let total = n * n;
    let jobs = jobs.max(1).min(total.max(1));
    let results: Vec<Result<(usize, bool, bool, bool), Error>> =
        std::thread::scope(|scope| {
            let mut handles = Vec::new();
            for w in 0..jobs {
                let curves = &curves;
                let field = field.clone();
                handles.push(scope.spawn(move || {
                    let mut out = Vec::new();
                    let mut idx = w;
                    while idx < total {
                        let e = &curves[idx / n];
                        let e2 = &curves[idx % n];
                        out.push(match theorem_check(e, e2, &field) {
                            Ok(rep) => Ok((
                                idx,
                                rep.symplectic_witness.is_some(),
                                rep.pencil_witness.is_some(),
                                rep.verdict,
                            )),
                            Err(err) => Err(err),
                        });
                        idx += jobs;
                    }
                    out
                }));
            }
            let mut all: Vec<_> =
                handles.into_iter().flat_map(|h| h.join().unwrap()).collect();
            all.sort_by_key(|r| match r {
                Ok((idx, ..)) => *idx,
                Err(_) => usize::MAX,
            });
            all
        });
    let mut totals = VerifyTotals {
        curves: n,
        pairs: total,
        equivalences: 0,
        memberships: 0,
        mismatches: Vec::new(),
    };
    for r in results {
        let (idx, sym, pen, verdict) = r?;
        if sym {
            totals.equivalences += 1;
        }
        if pen {
            totals.memberships += 1;
        }
        if !verdict {
            totals.mismatches.push(format!(
                "{} vs {}",
                curve_str(&curves[idx / n]),
                curve_str(&curves[idx % n])
            ));
        }
    }
    Ok(totals)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = std::env::var("HESSE3_SEED")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(cli.seed);
    set_seed(seed);
    match run(&cli, seed) {
        Ok((value, code)) => {
            if cli.pretty {
                println!("{}", serde_json::to_string_pretty(&value).unwrap());
            } else {
                println!("{}", serde_json::to_string(&value).unwrap());
            }
            code
        }
        Err(CliError::Domain(err)) => {
            let value = json!({
                "error": format!("{err:?}"),
                "message": format!("{err}"),
            });
            if cli.pretty {
                println!("{}", serde_json::to_string_pretty(&value).unwrap());
            } else {
                println!("{}", serde_json::to_string(&value).unwrap());
            }
            ExitCode::FAILURE
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}
