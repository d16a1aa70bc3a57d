//! Command-line front end: Milnor rings, Koszul truncations, Schouten
//! brackets, one application of a BV operator, seeded identity sweeps,
//! Maurer-Cartan schemes and finite deformation checks.
//!
//! Output is a text summary or, with `--format json`, an envelope
//! `{"subcommand", "inputs", "result"}` whose inputs echo every parsed
//! expression in canonical form.  The JSON carries no timing and is
//! byte-identical across runs of the same invocation and seed.
//!
//! Exit status: 0 when the run completes and every verdict is true,
//! 1 when a check ran to completion but found a counterexample or a
//! disagreement, 2 on malformed input, unreadable files or bad flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use polyvec::bv::{bv_from_connection, connection_from_volume};
use polyvec::calculus::gradient_one_form;
use polyvec::cocom::{compare_h0_invariants, compare_h0_local_ring};
use polyvec::context::context_from_algebroid_json;
use polyvec::deform::{
    check_associativity_bracket, check_deformation, deformation_moduli_truncated,
};
use polyvec::identity::{check_identities, CheckConfig, IdentityKind, IdentityReport};
use polyvec::koszul::{build_koszul, truncated_cohomology};
use polyvec::mc::{mc_cocycle, mc_equations};
use polyvec::milnor::{milnor_ring, MilnorNumber};
use polyvec::parse::{parse_form, parse_polynomial, parse_polyvector};
use polyvec::schouten::schouten_bracket;
use polyvec::{
    ArtinianScalar, Context, DifferentialForm, Error, FiniteAlgebra, GradedLieAlgebra,
    Perturbation, Result,
};

#[derive(Parser)]
#[command(name = "polyvec", version, about = "Exact calculus of polyvector fields")]
struct Cli {
    /// Output style.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Seed for the sample stream of `check`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Milnor ring of a polynomial at the origin.
    Milnor {
        /// Comma-separated variable names.
        #[arg(long)]
        vars: String,
        /// The polynomial, e.g. "x^3 - y^2".
        #[arg(long)]
        poly: String,
        /// Monomial-basis cap used when the singularity is not isolated.
        #[arg(long)]
        degree_cap: Option<u32>,
    },

    /// Koszul complex on a list of generators, with truncated ranks.
    Koszul {
        #[arg(long)]
        vars: String,
        /// Semicolon-separated generators, e.g. "x^2;x*y".
        #[arg(long)]
        gens: String,
        /// Total-degree cap for the exact rank computation.
        #[arg(long)]
        truncate: u32,
    },

    /// Schouten bracket of two polyvectors.
    Schouten {
        #[arg(long)]
        vars: String,
        /// Left operand; generators are written `@name`.
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        /// Lie algebroid presentation file; without it the bracket is
        /// taken over tangent polyvectors.
        #[arg(long)]
        algebroid: Option<PathBuf>,
    },

    /// One application of the BV operator of a volume datum.
    Bv {
        #[arg(long)]
        vars: String,
        /// Localization denominator; `1` for the plain polynomial ring.
        #[arg(long)]
        c: String,
        /// Connection one-form: `df:<poly>` for an exact differential,
        /// or a raw one-form such as "x*d(y)".
        #[arg(long)]
        phi: String,
        /// The polyvector the operator is applied to.
        #[arg(long)]
        input: String,
    },

    /// Seeded sweep of one operator identity over random inputs.
    Check {
        /// One of: gerstenhaber, bv, dg_leibniz, d_squared, cartan,
        /// transfer_equality, lemma_2_13, roundtrip_4_3.
        #[arg(long)]
        kind: String,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Exterior-degree cap for sampled polyvectors.
        #[arg(long, default_value_t = 3)]
        max_ext: usize,
        /// Total-degree cap for sampled polynomial coefficients.
        #[arg(long, default_value_t = 2)]
        max_deg: u32,
        #[arg(long)]
        vars: String,
        /// Localization denominator of the coefficient ring.
        #[arg(long, default_value = "1")]
        c: String,
        /// Fixed one-form for the sweep; when omitted, each sample
        /// draws its own.
        #[arg(long)]
        phi: Option<String>,
    },

    /// Maurer-Cartan scheme of a graded Lie algebra presentation.
    Mc {
        #[arg(value_enum)]
        action: McAction,
        /// Presentation file.
        #[arg(long)]
        dgla: PathBuf,
        /// Truncation cutoff; required by compare and cocycle.
        #[arg(long)]
        cutoff: Option<usize>,
        /// Semicolon-separated solution coordinates in `Q[e]`, one per
        /// degree-1 basis element, e.g. "e;0"; required by cocycle.
        #[arg(long)]
        solution: Option<String>,
    },

    /// Associativity and deformation checks for a finite algebra.
    Deform {
        /// Algebra presentation file.
        #[arg(long)]
        algebra: PathBuf,
        /// Perturbation tensor file, checked as a deformation.
        #[arg(long, conflicts_with = "moduli")]
        perturb: Option<PathBuf>,
        /// Compare the two moduli filtrations up to this cutoff.
        #[arg(long)]
        moduli: Option<usize>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum McAction {
    Equations,
    Compare,
    Cocycle,
}

impl McAction {
    fn as_str(self) -> &'static str {
        match self {
            McAction::Equations => "equations",
            McAction::Compare => "compare",
            McAction::Cocycle => "cocycle",
        }
    }
}

/// A finished run: what to print and whether every verdict held.
struct Outcome {
    subcommand: &'static str,
    inputs: BTreeMap<String, String>,
    result: Value,
    text: String,
    verdict: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => print!("{}", out.text),
                Format::Json => {
                    let envelope = json!({
                        "subcommand": out.subcommand,
                        "inputs": out.inputs,
                        "result": out.result,
                    });
                    println!("{}", serde_json::to_string_pretty(&envelope).expect("json"));
                }
            }
            if out.verdict {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Milnor { vars, poly, degree_cap } => run_milnor(vars, poly, *degree_cap),
        Command::Koszul { vars, gens, truncate } => run_koszul(vars, gens, *truncate),
        Command::Schouten { vars, lhs, rhs, algebroid } => {
            run_schouten(vars, lhs, rhs, algebroid.as_deref())
        }
        Command::Bv { vars, c, phi, input } => run_bv(vars, c, phi, input),
        Command::Check { kind, samples, max_ext, max_deg, vars, c, phi } => {
            let cfg = CheckConfig {
                samples: *samples,
                seed: cli.seed,
                max_ext_degree: *max_ext,
                max_poly_degree: *max_deg,
            };
            run_check(kind, vars, c, phi.as_deref(), &cfg)
        }
        Command::Mc { action, dgla, cutoff, solution } => {
            run_mc(*action, dgla, *cutoff, solution.as_deref())
        }
        Command::Deform { algebra, perturb, moduli } => {
            run_deform(algebra, perturb.as_deref(), *moduli)
        }
    }
}

/// Splits a comma-separated name list, rejecting empty entries.
fn split_names(list: &str) -> Result<Vec<String>> {
    let out: Vec<String> = list.split(',').map(|s| s.trim().to_string()).collect();
    if out.iter().any(String::is_empty) {
        return Err(Error::InvalidInput(format!("malformed variable list {list:?}")));
    }
    Ok(out)
}

/// Tangent context over `vars`, localized at `c`.  A denominator of 1
/// leaves the plain polynomial ring; zero is rejected.
fn localized_context(vars: Vec<String>, c_src: &str) -> Result<(Context, String)> {
    let c = parse_polynomial(c_src, &vars)?;
    let echoed = c.to_canonical_string(&vars);
    let ctx = Context::tangent(vars).with_denominator(c)?;
    Ok((ctx, echoed))
}

/// The `df:<poly>` shorthand builds the exact differential of the
/// polynomial, closed by construction; anything else is parsed as a raw
/// one-form.
fn parse_phi(src: &str, ctx: &Context) -> Result<(DifferentialForm, String)> {
    let vars = ctx.var_names();
    if let Some(body) = src.strip_prefix("df:") {
        let f = parse_polynomial(body, vars)?;
        let phi = gradient_one_form(ctx, &f);
        Ok((phi, format!("df:{}", f.to_canonical_string(vars))))
    } else {
        let phi = parse_form(src, vars)?;
        if !phi.is_zero() && phi.homogeneous_degree() != Some(1) {
            return Err(Error::Degree("the connection form must have degree 1".into()));
        }
        let echoed = phi.to_canonical_string_named(vars, ctx.denominator());
        Ok((phi, echoed))
    }
}

fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

fn to_value<T: Serialize>(report: &T) -> Value {
    serde_json::to_value(report).expect("report serialization")
}

fn run_milnor(vars: &str, poly: &str, degree_cap: Option<u32>) -> Result<Outcome> {
    let vars = split_names(vars)?;
    let ctx = Context::tangent(vars.clone());
    let f = parse_polynomial(poly, &vars)?;
    let report = milnor_ring(&ctx, &f, degree_cap)?;

    let mut inputs = BTreeMap::new();
    inputs.insert("vars".into(), vars.join(","));
    inputs.insert("poly".into(), f.to_canonical_string(&vars));
    if let Some(cap) = degree_cap {
        inputs.insert("degree_cap".into(), cap.to_string());
    }

    let mut text = String::new();
    text.push_str(&format!("f = {}\n", report.f));
    match report.milnor_number {
        MilnorNumber::Finite(mu) => {
            text.push_str(&format!("isolated singularity, milnor number {mu}\n"));
            text.push_str(&format!("basis: {}\n", report.basis.join(", ")));
        }
        MilnorNumber::Infinite => {
            text.push_str("not isolated, milnor number infinite\n");
            text.push_str(&format!(
                "standard monomials up to the cap: {}\n",
                report.basis.join(", ")
            ));
        }
    }

    Ok(Outcome {
        subcommand: "milnor",
        inputs,
        result: to_value(&report),
        text,
        verdict: true,
    })
}

fn run_koszul(vars: &str, gens: &str, truncate: u32) -> Result<Outcome> {
    let vars = split_names(vars)?;
    let ctx = Context::tangent(vars.clone());
    let gen_polys: Vec<_> = gens
        .split(';')
        .map(|src| parse_polynomial(src, &vars))
        .collect::<Result<_>>()?;
    let echoed: Vec<String> = gen_polys.iter().map(|f| f.to_canonical_string(&vars)).collect();
    let cplx = build_koszul(&ctx, gen_polys)?;
    let d_squared_zero = cplx.d_squared_vanishes()?;
    let report = truncated_cohomology(&cplx, truncate);

    let mut inputs = BTreeMap::new();
    inputs.insert("vars".into(), vars.join(","));
    inputs.insert("gens".into(), echoed.join(";"));
    inputs.insert("truncate".into(), truncate.to_string());

    let mut text = String::new();
    text.push_str(&format!("koszul complex on {} generators\n", echoed.len()));
    text.push_str(&format!("d^2 = 0: {d_squared_zero}\n"));
    text.push_str(&format!(
        "truncation cap {}, reliable through total degree {}\n",
        report.degree_cap, report.reliable_bound
    ));
    for (deg, row) in &report.cells {
        let cells: Vec<String> = row
            .iter()
            .map(|(t, cell)| {
                let mark = if cell.reliable { "" } else { "?" };
                format!("t={t}: {}{mark}", cell.cohomology_dim)
            })
            .collect();
        text.push_str(&format!("H^{deg}  {}\n", cells.join("  ")));
    }

    Ok(Outcome {
        subcommand: "koszul",
        inputs,
        result: json!({ "d_squared_zero": d_squared_zero, "cohomology": to_value(&report) }),
        text,
        verdict: d_squared_zero,
    })
}

fn run_schouten(
    vars: &str,
    lhs: &str,
    rhs: &str,
    algebroid: Option<&Path>,
) -> Result<Outcome> {
    let vars = split_names(vars)?;
    let ctx = match algebroid {
        None => Context::tangent(vars.clone()),
        Some(path) => {
            let ctx = context_from_algebroid_json(&read_file(path)?)?;
            if ctx.var_names() != vars.as_slice() {
                return Err(Error::ContextMismatch(format!(
                    "--vars says [{}] but the algebroid file declares [{}]",
                    vars.join(", "),
                    ctx.var_names().join(", ")
                )));
            }
            ctx
        }
    };
    let gens = ctx.generator_names();
    let u = parse_polyvector(lhs, &vars, &gens)?;
    let v = parse_polyvector(rhs, &vars, &gens)?;
    let bracket = schouten_bracket(&ctx, &u, &v)?;

    let canon =
        |w: &polyvec::Polyvector| w.to_canonical_string_named(&vars, &gens, ctx.denominator());
    let mut inputs = BTreeMap::new();
    inputs.insert("vars".into(), vars.join(","));
    inputs.insert("lhs".into(), canon(&u));
    inputs.insert("rhs".into(), canon(&v));
    if let Some(path) = algebroid {
        inputs.insert("algebroid".into(), path.display().to_string());
    }

    let rendered = canon(&bracket);
    let text = format!("[{}, {}] = {rendered}\n", canon(&u), canon(&v));

    Ok(Outcome {
        subcommand: "schouten",
        inputs,
        result: json!({ "bracket": rendered }),
        text,
        verdict: true,
    })
}

fn run_bv(vars: &str, c: &str, phi: &str, input: &str) -> Result<Outcome> {
    let vars = split_names(vars)?;
    let (ctx, c_echo) = localized_context(vars.clone(), c)?;
    let (phi_form, phi_echo) = parse_phi(phi, &ctx)?;
    let u = parse_polyvector(input, &vars, &vars)?;
    let conn = connection_from_volume(&ctx, &phi_form)?;
    let image = bv_from_connection(&ctx, &conn, &u)?;

    let canon =
        |w: &polyvec::Polyvector| w.to_canonical_string_named(&vars, &vars, ctx.denominator());
    let mut inputs = BTreeMap::new();
    inputs.insert("vars".into(), vars.join(","));
    inputs.insert("c".into(), c_echo);
    inputs.insert("phi".into(), phi_echo);
    inputs.insert("input".into(), canon(&u));

    let rendered = canon(&image);
    let text = format!("d({}) = {rendered}\n", canon(&u));

    Ok(Outcome {
        subcommand: "bv",
        inputs,
        result: json!({ "image": rendered }),
        text,
        verdict: true,
    })
}

fn run_check(
    kind: &str,
    vars: &str,
    c: &str,
    phi: Option<&str>,
    cfg: &CheckConfig,
) -> Result<Outcome> {
    let kind = IdentityKind::parse(kind)?;
    let vars = split_names(vars)?;
    let (ctx, c_echo) = localized_context(vars.clone(), c)?;
    let parsed_phi = phi.map(|src| parse_phi(src, &ctx)).transpose()?;
    let report = check_identities(&ctx, kind, parsed_phi.as_ref().map(|(f, _)| f), cfg)?;

    let mut inputs = BTreeMap::new();
    inputs.insert("kind".into(), kind.as_str().to_string());
    inputs.insert("vars".into(), vars.join(","));
    inputs.insert("c".into(), c_echo);
    if let Some((_, echo)) = parsed_phi {
        inputs.insert("phi".into(), echo);
    }
    inputs.insert("samples".into(), cfg.samples.to_string());
    inputs.insert("seed".into(), cfg.seed.to_string());
    inputs.insert("max_ext".into(), cfg.max_ext_degree.to_string());
    inputs.insert("max_deg".into(), cfg.max_poly_degree.to_string());

    let text = render_identity_text(&report);
    let verdict = report.passed();
    Ok(Outcome {
        subcommand: "check",
        inputs,
        result: to_value(&report),
        text,
        verdict,
    })
}

fn render_identity_text(report: &IdentityReport) -> String {
    let mut text = String::new();
    text.push_str(&format!(
        "check {}: {} of {} samples failed\n",
        report.kind, report.failures, report.samples
    ));
    if let Some(ce) = &report.counterexample {
        text.push_str(&format!("counterexample at sample {}:\n", ce.sample_index));
        for b in &ce.inputs {
            text.push_str(&format!("  {} = {}\n", b.name, b.value));
        }
        text.push_str(&format!("  lhs = {}\n  rhs = {}\n", ce.lhs, ce.rhs));
    }
    text
}

fn run_mc(
    action: McAction,
    dgla: &Path,
    cutoff: Option<usize>,
    solution: Option<&str>,
) -> Result<Outcome> {
    let g = GradedLieAlgebra::from_json(&read_file(dgla)?)?;
    let mut inputs = BTreeMap::new();
    inputs.insert("action".into(), action.as_str().to_string());
    inputs.insert("dgla".into(), dgla.display().to_string());

    let need_cutoff = || {
        cutoff.ok_or_else(|| {
            Error::InvalidInput(format!("mc {} needs --cutoff", action.as_str()))
        })
    };

    match action {
        McAction::Equations => {
            let scheme = mc_equations(&g);
            let equations: Vec<Value> = scheme
                .equation_names
                .iter()
                .zip(&scheme.equations)
                .map(|(name, f)| {
                    json!({ "name": name, "poly": f.to_canonical_string(&scheme.coordinates) })
                })
                .collect();
            let mut text = String::new();
            text.push_str(&format!("coordinates: {}\n", scheme.coordinates.join(", ")));
            for (name, f) in scheme.equation_names.iter().zip(&scheme.equations) {
                text.push_str(&format!(
                    "{name}: {} = 0\n",
                    f.to_canonical_string(&scheme.coordinates)
                ));
            }
            Ok(Outcome {
                subcommand: "mc",
                inputs,
                result: json!({ "coordinates": scheme.coordinates, "equations": equations }),
                text,
                verdict: true,
            })
        }
        McAction::Compare => {
            let cutoff = need_cutoff()?;
            inputs.insert("cutoff".into(), cutoff.to_string());
            // The presentation window picks the comparison: {1, 2} pairs
            // the complex against the local ring of the equation scheme,
            // {0, 1} against the invariants of the vector fields.
            let (result, lhs_name, lhs, rhs, agree) = if g.concentrated_in(&[1, 2]) {
                let r = compare_h0_local_ring(&g, cutoff)?;
                (to_value(&r), "local ring", r.local_ring_dims.clone(), r.h0_dims.clone(), r.agree)
            } else if g.concentrated_in(&[0, 1]) {
                let r = compare_h0_invariants(&g, cutoff)?;
                (to_value(&r), "invariants", r.invariant_dims.clone(), r.h0_dims.clone(), r.agree)
            } else {
                return Err(Error::Unsupported(
                    "the comparison needs a presentation concentrated in {1, 2} or {0, 1}".into(),
                ));
            };
            let mut text = String::new();
            text.push_str(&format!("{lhs_name} dims: {lhs:?}\n"));
            text.push_str(&format!("complex dims:   {rhs:?}\n"));
            text.push_str(&format!("agree: {agree}\n"));
            Ok(Outcome { subcommand: "mc", inputs, result, text, verdict: agree })
        }
        McAction::Cocycle => {
            let cutoff = need_cutoff()?;
            let src = solution.ok_or_else(|| {
                Error::InvalidInput("mc cocycle needs --solution, one scalar per coordinate".into())
            })?;
            inputs.insert("cutoff".into(), cutoff.to_string());
            let a = parse_solution(src)?;
            let echoed: Vec<String> = a.iter().map(ArtinianScalar::to_canonical_string).collect();
            inputs.insert("solution".into(), echoed.join(";"));
            let report = mc_cocycle(&g, &a, cutoff)?;
            let mut text = String::new();
            text.push_str(&format!("solution: {}\n", echoed.join("; ")));
            text.push_str(&format!(
                "cocycle through symmetric degree {}: {}\n",
                report.safe_degree, report.is_cocycle
            ));
            for (label, value) in &report.differential_terms {
                text.push_str(&format!("  d-term {label} = {value}\n"));
            }
            let verdict = report.is_cocycle;
            Ok(Outcome {
                subcommand: "mc",
                inputs,
                result: to_value(&report),
                text,
                verdict,
            })
        }
    }
}

/// Cap for inferring a truncation order from the literals themselves.
const SOLUTION_INFERENCE_ORDER: usize = 33;

/// Parses semicolon-separated scalars in `Q[e]`, truncating one order
/// above the largest epsilon power that occurs anywhere in the list.
fn parse_solution(src: &str) -> Result<Vec<ArtinianScalar>> {
    let probes: Vec<ArtinianScalar> = src
        .split(';')
        .map(|s| ArtinianScalar::parse(s, SOLUTION_INFERENCE_ORDER))
        .collect::<Result<_>>()?;
    let zero = polyvec::rat::rat(0);
    let order = probes
        .iter()
        .flat_map(|x| (0..x.order()).filter(|&k| x.coeff(k) != zero))
        .max()
        .map_or(1, |m| m + 1);
    src.split(';').map(|s| ArtinianScalar::parse(s, order)).collect()
}

fn run_deform(
    algebra: &Path,
    perturb: Option<&Path>,
    moduli: Option<usize>,
) -> Result<Outcome> {
    let alg = FiniteAlgebra::from_json(&read_file(algebra)?)?;
    let mut inputs = BTreeMap::new();
    inputs.insert("algebra".into(), algebra.display().to_string());

    if let Some(path) = perturb {
        let h = Perturbation::from_json(alg.dim(), &read_file(path)?)?;
        inputs.insert("perturb".into(), path.display().to_string());
        let report = check_deformation(&alg, &h)?;
        let verdict = report.deformed_associative && report.mc_holds && report.agree;
        let text = format!(
            "deformation to order {}\nassociative over the base: {}\nmaurer-cartan holds: {}\nroutes agree: {}\n",
            report.order, report.deformed_associative, report.mc_holds, report.agree
        );
        return Ok(Outcome {
            subcommand: "deform",
            inputs,
            result: to_value(&report),
            text,
            verdict,
        });
    }

    if let Some(cutoff) = moduli {
        inputs.insert("moduli".into(), cutoff.to_string());
        let report = deformation_moduli_truncated(&alg, cutoff)?;
        let text = format!(
            "complex dims:    {:?}\nlocal ring dims: {:?}\nagree: {}\n",
            report.complex_dims, report.local_ring_dims, report.agree
        );
        let verdict = report.agree;
        return Ok(Outcome {
            subcommand: "deform",
            inputs,
            result: to_value(&report),
            text,
            verdict,
        });
    }

    let report = check_associativity_bracket(&alg)?;
    let verdict = report.direct && report.bracket && report.agree;
    let mut text = format!(
        "associative by direct scan: {}\nhalf self-bracket vanishes: {}\nroutes agree: {}\n",
        report.direct, report.bracket, report.agree
    );
    if let Some((a, b, c)) = report.witness {
        text.push_str(&format!("failing triple: ({a}, {b}, {c})\n"));
    }
    Ok(Outcome {
        subcommand: "deform",
        inputs,
        result: to_value(&report),
        text,
        verdict,
    })
}
