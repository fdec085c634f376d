//! Batch front end: load spaces and elements from JSON, run any decision,
//! run named theorem-verification suites, emit machine-readable reports.
//!
//! Exit codes: 0 = decision computed (whatever the verdict), 1 = usage or
//! validation error, 2 = route disagreement or theorem-suite failure.

use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use orderunit::adjoined;
use orderunit::jsonio;
use orderunit::ortho::{self, OrthKind};
use orderunit::projections;
use orderunit::suites::{self, SuiteName, SuiteSpec};
use orderunit::{Element, Error, SpaceRef};

#[derive(Parser)]
#[command(name = "orderunit", version, about = "Decision procedures for finite-dimensional order unit spaces")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// seed for every randomized route and suite
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// geometric depth of the k-grid used by the definition oracle
    #[arg(long, global = true, default_value_t = 5)]
    grid_depth: i32,
    /// include runtime_ms in the report (off keeps reports byte-identical)
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Order-unit norm of an element
    Norm {
        #[arg(long)]
        space: String,
        #[arg(long)]
        element: String,
    },
    /// Positive-cone membership of an element
    Contains {
        #[arg(long)]
        space: String,
        #[arg(long)]
        element: String,
    },
    /// Vertex-enumerated order interval [a, b] (polyhedral spaces)
    Interval {
        #[arg(long)]
        space: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Orthogonality decisions: one | inf | abs | ext | point-set
    Perp {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        space: String,
        /// first argument (the point for point-set), alias --x
        #[arg(long, visible_alias = "x")]
        u: String,
        /// second argument (the interval generator for point-set), alias --y
        #[arg(long, visible_alias = "y")]
        v: String,
    },
    /// Order unit property of a positive contraction
    Oup {
        #[arg(long)]
        space: String,
        #[arg(long)]
        element: String,
    },
    /// Order projection decision (all routes, agreement enforced)
    OrderProjection {
        #[arg(long)]
        space: String,
        #[arg(long)]
        element: String,
    },
    /// Membership in S_V
    Sv {
        #[arg(long)]
        space: String,
        #[arg(long)]
        element: String,
    },
    /// Ideal decomposition along an order projection
    Decompose {
        #[arg(long)]
        space: String,
        #[arg(long)]
        element: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Sum-splitting biconditional for u = v + w
    SumCheck {
        #[arg(long)]
        space: String,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        w: String,
    },
    /// Is the element a vertex of V₁⁺ = [0, e]?
    ExtremeCheck {
        #[arg(long)]
        space: String,
        #[arg(long)]
        element: String,
    },
    /// Build and validate the adjoined space over a norm description
    Adjoin {
        #[arg(long)]
        norm: String,
        /// also export the polyhedral form when the ball is polyhedral
        #[arg(long)]
        export: bool,
    },
    /// Strict convexity of a norm, cross-checked by per-point decisions
    StrictConvexity {
        #[arg(long)]
        norm: String,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Run a named verification suite
    Verify {
        #[arg(long)]
        suite: String,
        /// dimension cap for generated instances
        #[arg(long, default_value_t = 5)]
        dim: usize,
        /// override the pinned instance counts (quick runs)
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Search random polyhedral spaces for extreme points of V₁⁺ without
    /// the order unit property; candidates are logged, nothing is asserted
    Counterexample {
        #[arg(long, default_value_t = 1000)]
        spaces: usize,
        #[arg(long, default_value_t = 4)]
        dim: usize,
    },
}

fn read_arg(text: &str) -> Result<String, Error> {
    let t = text.trim();
    if t.starts_with('{') || t.starts_with('[') {
        Ok(t.to_string())
    } else {
        std::fs::read_to_string(t).map_err(|e| Error::Parse(format!("cannot read {t:?}: {e}")))
    }
}

fn load_space_arg(text: &str) -> Result<SpaceRef, Error> {
    jsonio::load_space(&read_arg(text)?)
}

fn load_element(space: &SpaceRef, text: &str) -> Result<Element, Error> {
    jsonio::parse_element(space, &read_arg(text)?)
}

fn load_norm_spec(text: &str) -> Result<orderunit::NormSpec, Error> {
    let raw = read_arg(text)?;
    let value = serde_json::from_str::<Value>(&raw)
        .map_err(|e| Error::Parse(format!("norm spec is not JSON: {e}")))?;
    jsonio::norm_spec_from_value(&value)
}

struct Ctx {
    command: &'static str,
    input: Value,
    seed: u64,
}

fn run(cli: &Cli) -> Result<(Value, Ctx, i32), (Error, Ctx)> {
    let (name, input_echo): (&'static str, Value) = match &cli.cmd {
        Cmd::Norm { space, element } => ("norm", json!({"space": space, "element": element})),
        Cmd::Contains { space, element } => {
            ("contains", json!({"space": space, "element": element}))
        }
        Cmd::Interval { space, a, b } => ("interval", json!({"space": space, "a": a, "b": b})),
        Cmd::Perp { kind, space, u, v } => {
            ("perp", json!({"kind": kind, "space": space, "u": u, "v": v}))
        }
        Cmd::Oup { space, element } => ("oup", json!({"space": space, "element": element})),
        Cmd::OrderProjection { space, element } => {
            ("order-projection", json!({"space": space, "element": element}))
        }
        Cmd::Sv { space, element } => ("sv", json!({"space": space, "element": element})),
        Cmd::Decompose { space, element, samples } => {
            ("decompose", json!({"space": space, "element": element, "samples": samples}))
        }
        Cmd::SumCheck { space, u, v, w } => {
            ("sum-check", json!({"space": space, "u": u, "v": v, "w": w}))
        }
        Cmd::ExtremeCheck { space, element } => {
            ("extreme-check", json!({"space": space, "element": element}))
        }
        Cmd::Adjoin { norm, export } => ("adjoin", json!({"norm": norm, "export": export})),
        Cmd::StrictConvexity { norm, samples } => {
            ("strict-convexity", json!({"norm": norm, "samples": samples}))
        }
        Cmd::Verify { suite, dim, trials } => {
            ("verify", json!({"suite": suite, "dim": dim, "trials": trials}))
        }
        Cmd::Counterexample { spaces, dim } => {
            ("counterexample", json!({"spaces": spaces, "dim": dim}))
        }
    };
    let ctx = Ctx { command: name, input: input_echo, seed: cli.seed };
    match dispatch(cli) {
        Ok((value, code)) => Ok((value, ctx, code)),
        Err(e) => Err((e, ctx)),
    }
}

fn dispatch(cli: &Cli) -> Result<(Value, i32), Error> {
    match &cli.cmd {
        Cmd::Norm { space, element } => {
            let s = load_space_arg(space)?;
            let e = load_element(&s, element)?;
            let n = s.norm(&e)?;
            Ok((json!({"norm": jsonio::scalar_to_value(&n)}), 0))
        }
        Cmd::Contains { space, element } => {
            let s = load_space_arg(space)?;
            let e = load_element(&s, element)?;
            Ok((json!({"contains": s.cone_contains(&e)?}), 0))
        }
        Cmd::Interval { space, a, b } => {
            let s = load_space_arg(space)?;
            let ea = load_element(&s, a)?;
            let eb = load_element(&s, b)?;
            let p = orderunit::polyhedral::interval(&s, &ea, &eb)?;
            Ok((jsonio::polytope_to_value(&p), 0))
        }
        Cmd::Perp { kind, space, u, v } => {
            let k = OrthKind::parse(kind)?;
            let s = load_space_arg(space)?;
            let eu = load_element(&s, u)?;
            let ev = load_element(&s, v)?;
            let d = match k {
                OrthKind::One => ortho::perp_one(&eu, &ev)?,
                OrthKind::Inf => ortho::perp_inf(&eu, &ev)?,
                OrthKind::Abs => ortho::perp_abs(&eu, &ev)?,
                OrthKind::Ext => ortho::perp_ext(&eu, &ev)?,
                OrthKind::PointSet => ortho::perp_inf_point_set(&eu, &ev)?,
            };
            Ok((jsonio::decision_to_value(&d), 0))
        }
        Cmd::Oup { space, element } => {
            let s = load_space_arg(space)?;
            let e = load_element(&s, element)?;
            let rep = projections::has_oup(&s, &e)?;
            Ok((jsonio::oup_report_to_value(&rep), 0))
        }
        Cmd::OrderProjection { space, element } => {
            let s = load_space_arg(space)?;
            let e = load_element(&s, element)?;
            Ok((jsonio::decision_to_value(&projections::is_order_projection(&s, &e)?), 0))
        }
        Cmd::Sv { space, element } => {
            let s = load_space_arg(space)?;
            let e = load_element(&s, element)?;
            Ok((jsonio::decision_to_value(&projections::sv_membership(&s, &e)?), 0))
        }
        Cmd::Decompose { space, element, samples } => {
            let s = load_space_arg(space)?;
            let e = load_element(&s, element)?;
            let rep = projections::decompose(&s, &e, *samples, cli.seed)?;
            Ok((jsonio::decomposition_to_value(&rep), 0))
        }
        Cmd::SumCheck { space, u, v, w } => {
            let s = load_space_arg(space)?;
            let eu = load_element(&s, u)?;
            let ev = load_element(&s, v)?;
            let ew = load_element(&s, w)?;
            let d = projections::sum_split_check(&s, &eu, &ev, &ew)?;
            Ok((jsonio::decision_to_value(&d), 0))
        }
        Cmd::ExtremeCheck { space, element } => {
            let s = load_space_arg(space)?;
            let e = load_element(&s, element)?;
            let d = projections::is_extreme_positive_contraction(&s, &e)?;
            Ok((jsonio::decision_to_value(&d), 0))
        }
        Cmd::Adjoin { norm, export } => {
            let spec = load_norm_spec(norm)?;
            let s = adjoined::adjoin(spec)?;
            let mut out = json!({
                "space": jsonio::space_to_value(&s),
                "validation": jsonio::validation_to_value(&s.validate()),
            });
            if *export {
                let exported = adjoined::export_polyhedral(&s)?;
                out["export"] = jsonio::space_to_value(&exported);
            }
            Ok((out, 0))
        }
        Cmd::StrictConvexity { norm, samples } => {
            let spec = load_norm_spec(norm)?;
            let d = adjoined::strict_convexity(&spec, *samples, cli.seed)?;
            Ok((jsonio::decision_to_value(&d), 0))
        }
        Cmd::Verify { suite, dim, trials } => {
            let sn = SuiteName::parse(suite)?;
            let spec = SuiteSpec { name: sn, dim_max: *dim, trials: *trials, seed: cli.seed };
            let report = suites::run_suite(&spec)?;
            for o in &report.outcomes {
                eprintln!(
                    "criterion {}: {} — {}",
                    o.id,
                    if o.pass { "PASS" } else { "FAIL" },
                    o.label
                );
            }
            let code = if report.pass() { 0 } else { 2 };
            Ok((report.to_value(), code))
        }
        Cmd::Counterexample { spaces, dim } => {
            let found = suites::converse_search(*spaces, *dim, cli.seed);
            Ok((
                json!({
                    "spaces_searched": spaces,
                    "candidates_found": found.len(),
                    "candidates": found.iter().take(20).collect::<Vec<_>>(),
                    "note": "candidates are logged; the converse is not asserted either way",
                }),
                0,
            ))
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let started = Instant::now();
    let (report, code) = match run(&cli) {
        Ok((result, ctx, code)) => {
            let mut rep = json!({
                "command": ctx.command,
                "input": ctx.input,
                "result": result,
                "seed": ctx.seed,
            });
            if cli.timings {
                rep["runtime_ms"] = json!(started.elapsed().as_millis() as u64);
            }
            (rep, code)
        }
        Err((err, ctx)) => {
            let mut rep = json!({
                "command": ctx.command,
                "input": ctx.input,
                "error": err.to_string(),
                "seed": ctx.seed,
            });
            if cli.timings {
                rep["runtime_ms"] = json!(started.elapsed().as_millis() as u64);
            }
            (rep, err.exit_code())
        }
    };
    println!("{}", serde_json::to_string(&report).expect("report serializes"));
    std::process::exit(code);
}
