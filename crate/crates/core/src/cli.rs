//! The `nogo` command line.
//!
//! Exit codes: 0 on success, 1 when a check fails, 2 on bad input
//! (unparsable files, usage errors, unsupported settings).

use crate::certificate::{verify, Certificate, LoadError, Payload};
use crate::liealg::{AlgebraJson, Builtin, LieAlgebra, StructureConstants};
use crate::nogo::{feasibility_probe, nogo_report, ParamValue, ReportStep, Verdict};
use crate::orbit::{
    closure_steps, is_regular, isotropy_decomposition, minimality_witness, OrbitError, OrbitPoint,
};
use crate::poisson::{OrbitIdeal, DEFAULT_MAX_DIM};
use crate::rational::{parse_rational, Rational};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::{Signed, Zero};
use serde_json::{json, Value};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Debug, Parser)]
#[command(
    name = "nogo",
    version,
    about = "Exact Lie-Poisson checks and no-go certificates"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Largest polynomial basis any step may build.
    #[arg(long, env = "NOGO_MAX_DIM", default_value_t = DEFAULT_MAX_DIM, global = true)]
    pub max_dim: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Structural checks on a Lie algebra.
    Algebra {
        #[command(subcommand)]
        action: AlgebraAction,
    },
    /// Isotropy, regularity and minimality at a base point.
    Orbit {
        #[command(flatten)]
        source: AlgebraSource,
        /// Base point as comma-separated rationals.
        #[arg(long, required = true, value_delimiter = ',', value_parser = parse_rational_arg, allow_hyphen_values = true)]
        h: Vec<Rational>,
    },
    /// Run the no-go chain and write its certificates.
    Certify {
        #[command(flatten)]
        source: AlgebraSource,
        /// Radius of the sphere relation on each su(2) block.
        #[arg(long, value_parser = parse_rational_arg, allow_hyphen_values = true)]
        sphere: Option<Rational>,
        #[arg(long, default_value_t = 3)]
        k: u32,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Re-check a certificate file.
    Verify { file: PathBuf },
    /// Finite-dimensional feasibility probe for spin `j`.
    Probe {
        #[arg(long, value_parser = parse_spin, allow_hyphen_values = true)]
        j: Rational,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum AlgebraAction {
    Check {
        #[command(flatten)]
        source: AlgebraSource,
    },
}

#[derive(Debug, Clone, Args)]
#[group(required = true, multiple = false)]
pub struct AlgebraSource {
    /// Built-in algebra: su2, so3, so4, su3, sl2r, abelianN, or `a+b`.
    #[arg(long)]
    pub builtin: Option<String>,
    /// JSON algebra description.
    #[arg(long)]
    pub algebra: Option<PathBuf>,
}

fn parse_rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s.trim()).map_err(|e| e.to_string())
}

fn parse_spin(s: &str) -> Result<Rational, String> {
    let j = parse_rational_arg(s)?;
    if j.is_negative() || !(&j + &j).is_integer() {
        return Err(format!("{s} is not a nonnegative half-integer"));
    }
    Ok(j)
}

/// A failure with its exit code.
#[derive(Debug)]
enum Exit {
    Check(String),
    Input(String),
}

impl Exit {
    fn code(&self) -> i32 {
        match self {
            Exit::Check(_) => 1,
            Exit::Input(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            Exit::Check(m) | Exit::Input(m) => m,
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 {
                write!(out, "{}", e.render())
            } else {
                write!(err, "{}", e.render())
            };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.code()
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<(), Exit> {
    match &cli.command {
        Command::Algebra {
            action: AlgebraAction::Check { source },
        } => cmd_algebra_check(source, cli.format, out),
        Command::Orbit { source, h } => cmd_orbit(source, h, cli.format, out),
        Command::Certify {
            source,
            sphere,
            k,
            out: dir,
        } => cmd_certify(
            source,
            sphere.as_ref(),
            *k,
            dir,
            cli.max_dim,
            cli.format,
            out,
        ),
        Command::Verify { file } => cmd_verify(file, cli.format, out),
        Command::Probe { j, k, out: dir } => cmd_probe(j, *k, dir, cli.format, out),
    }
}

fn emit(out: &mut dyn Write, text: impl std::fmt::Display) -> Result<(), Exit> {
    writeln!(out, "{text}").map_err(|e| Exit::Input(format!("cannot write output: {e}")))
}

fn emit_json(out: &mut dyn Write, v: &Value) -> Result<(), Exit> {
    emit(
        out,
        serde_json::to_string_pretty(v).expect("json values serialize"),
    )
}

/// Name and unvalidated structure constants.
fn load_constants(src: &AlgebraSource) -> Result<(String, StructureConstants), Exit> {
    if let Some(name) = &src.builtin {
        let b: Builtin = name.parse().map_err(|e| Exit::Input(format!("{e}")))?;
        let l = b.build().map_err(|e| Exit::Input(format!("{e}")))?;
        return Ok((b.to_string(), l.constants().clone()));
    }
    let path = src.algebra.as_ref().expect("clap requires one source");
    let text = std::fs::read_to_string(path)
        .map_err(|e| Exit::Input(format!("cannot read {}: {e}", path.display())))?;
    let sc = AlgebraJson::parse(&text)
        .and_then(|a| a.to_constants())
        .map_err(|e| Exit::Input(format!("{}: {e}", path.display())))?;
    Ok((path.display().to_string(), sc))
}

fn load_algebra(src: &AlgebraSource) -> Result<(String, LieAlgebra), Exit> {
    let (name, sc) = load_constants(src)?;
    let l = LieAlgebra::new(sc).map_err(|e| Exit::Check(format!("{name}: {e}")))?;
    Ok((name, l))
}

fn cited(step: ReportStep, line: impl std::fmt::Display) -> String {
    format!("{line:<40} [{}]", step.cites())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cmd_algebra_check(src: &AlgebraSource, format: Format, out: &mut dyn Write) -> Result<(), Exit> {
    let (name, sc) = load_constants(src)?;
    let antisym = sc.check_antisymmetry();
    let jacobi = sc.check_jacobi();
    let structure_ok = antisym.is_ok() && jacobi.is_ok();
    let l = if structure_ok {
        LieAlgebra::new(sc.clone()).ok()
    } else {
        None
    };
    let Some(l) = l else {
        let reason = antisym
            .err()
            .or(jacobi.err())
            .map(|e| e.to_string())
            .unwrap_or_default();
        match format {
            Format::Json => emit_json(
                out,
                &json!({"algebra": name, "dim": sc.dim(), "structure": false, "reason": reason}),
            )?,
            Format::Text => {
                emit(out, format!("algebra: {name} (dim {})", sc.dim()))?;
                emit(
                    out,
                    cited(
                        ReportStep::Structure,
                        format!("structure: FAILED ({reason})"),
                    ),
                )?;
            }
        }
        return Err(Exit::Check(format!(
            "{name} is not a Lie algebra: {reason}"
        )));
    };
    let inertia = l.killing_form().inertia();
    let semisimple = l.is_semisimple();
    let compact = l.is_compact_type();
    let center = l.center().dim();
    let ok = semisimple && compact && center == 0;
    let verdict = if ok {
        "compact semisimple, center 0".to_string()
    } else {
        format!(
            "{}{}, center {center}",
            if compact { "compact " } else { "not compact, " },
            if semisimple {
                "semisimple"
            } else {
                "not semisimple"
            }
        )
    };
    match format {
        Format::Json => emit_json(
            out,
            &json!({
                "algebra": name,
                "dim": l.dim(),
                "antisymmetry": true,
                "jacobi": true,
                "killing_signature": {
                    "positive": inertia.positive,
                    "negative": inertia.negative,
                    "zero": inertia.zero,
                },
                "semisimple": semisimple,
                "compact": compact,
                "center_dim": center,
                "verdict": verdict,
            }),
        )?,
        Format::Text => {
            emit(out, format!("algebra: {name} (dim {})", l.dim()))?;
            emit(
                out,
                cited(ReportStep::Structure, "antisymmetry: ok, Jacobi: ok"),
            )?;
            emit(
                out,
                format!(
                    "Killing signature: (+{}, -{}, 0x{})",
                    inertia.positive, inertia.negative, inertia.zero
                ),
            )?;
            emit(
                out,
                cited(
                    ReportStep::Semisimplicity,
                    format!("semisimple: {}", yes_no(semisimple)),
                ),
            )?;
            emit(
                out,
                cited(
                    ReportStep::Compactness,
                    format!("compact: {}", yes_no(compact)),
                ),
            )?;
            emit(
                out,
                cited(ReportStep::Center, format!("center: dimension {center}")),
            )?;
            emit(out, format!("verdict: {verdict}"))?;
        }
    }
    if ok {
        Ok(())
    } else {
        Err(Exit::Check(format!("{name}: {verdict}")))
    }
}

fn cmd_orbit(
    src: &AlgebraSource,
    h: &[Rational],
    format: Format,
    out: &mut dyn Write,
) -> Result<(), Exit> {
    let (name, l) = load_algebra(src)?;
    let p = OrbitPoint::new(l, h.to_vec()).map_err(|e| Exit::Input(e.to_string()))?;
    if p.is_zero() {
        return Err(Exit::Input(OrbitError::ZeroPoint.to_string()));
    }
    let dec = isotropy_decomposition(&p).map_err(|e| Exit::Check(e.to_string()))?;
    let reg = is_regular(&p);
    let (minimal, minimal_text) = match minimality_witness(&p) {
        Ok(cert) => {
            let steps = closure_steps(&cert).unwrap_or(0);
            (Some(steps), "minimal".to_string())
        }
        Err(OrbitError::NotSimple) => (
            None,
            "algebra not simple, minimality check skipped".to_string(),
        ),
        Err(e) => return Err(Exit::Check(e.to_string())),
    };
    let summary = if reg.is_regular() {
        format!("orbit dim {}, regular, {minimal_text}", reg.orbit_dim)
    } else {
        format!("orbit dim {}, not regular; {minimal_text}", reg.orbit_dim)
    };
    let h_text: Vec<String> = h.iter().map(|q| q.to_string()).collect();
    match format {
        Format::Json => emit_json(
            out,
            &json!({
                "algebra": name,
                "h": h_text,
                "isotropy_dim": dec.isotropy.dim(),
                "tangent_dim": dec.tangent.dim(),
                "direct": dec.direct,
                "containment": dec.containment,
                "orbit_dim": reg.orbit_dim,
                "max_sampled_dim": reg.max_sampled_dim,
                "isotropy_abelian": reg.isotropy_abelian,
                "regular": reg.is_regular(),
                "minimality_closure_steps": minimal,
                "summary": summary,
            }),
        )?,
        Format::Text => {
            emit(out, format!("algebra: {name}, h = ({})", h_text.join(", ")))?;
            emit(
                out,
                format!(
                    "isotropy dim {}, tangent dim {}, direct sum: {}, [isotropy, tangent] in tangent: {}",
                    dec.isotropy.dim(),
                    dec.tangent.dim(),
                    yes_no(dec.direct),
                    yes_no(dec.containment)
                ),
            )?;
            emit(
                out,
                format!(
                    "regularity: orbit dim {} vs sampled max {}, isotropy abelian: {}",
                    reg.orbit_dim,
                    reg.max_sampled_dim,
                    yes_no(reg.isotropy_abelian)
                ),
            )?;
            if let Some(steps) = minimal {
                emit(
                    out,
                    format!("minimality: [b, h] generates b after {steps} bracket step(s)"),
                )?;
            }
            emit(out, summary)?;
        }
    }
    Ok(())
}

fn sphere_ideal(sc: &StructureConstants, r: &Rational) -> Result<OrbitIdeal, Exit> {
    OrbitIdeal::block_spheres(sc.dim(), r).map_err(|e| Exit::Input(e.to_string()))
}

fn write_file(dir: &Path, name: &str, cert: &Certificate) -> Result<PathBuf, Exit> {
    std::fs::create_dir_all(dir)
        .map_err(|e| Exit::Input(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    std::fs::write(&path, cert.to_json() + "\n")
        .map_err(|e| Exit::Input(format!("cannot write {}: {e}", path.display())))?;
    Ok(path)
}

fn cmd_certify(
    src: &AlgebraSource,
    sphere: Option<&Rational>,
    k: u32,
    dir: &Path,
    max_dim: usize,
    format: Format,
    out: &mut dyn Write,
) -> Result<(), Exit> {
    let (name, sc) = load_constants(src)?;
    let ideal = sphere.map(|r| sphere_ideal(&sc, r)).transpose()?;
    let report = nogo_report(&sc, ideal.as_ref(), k, max_dim);
    let (steps, files, failure) = match &report {
        Ok(cert) => {
            let Payload::TrivialityConclusion(t) = &cert.body else {
                unreachable!("nogo_report returns a triviality conclusion")
            };
            let files = vec![
                write_file(dir, "derived_ideal.json", &t.derived_ideal)?,
                write_file(dir, "gram_positivity.json", &t.gram_positivity)?,
                write_file(dir, "ad_invariance.json", &t.ad_invariance)?,
                write_file(dir, "nogo_report.json", cert)?,
            ];
            (t.steps.clone(), files, None)
        }
        Err(f) => (f.steps.clone(), Vec::new(), Some(f)),
    };
    match format {
        Format::Json => emit_json(
            out,
            &json!({
                "algebra": name,
                "k": k,
                "sphere": sphere.map(|r| r.to_string()),
                "complete": failure.is_none(),
                "steps": steps,
                "failed_step": failure.map(|f| f.step.name()),
                "files": files.iter().map(|p| p.display().to_string()).collect::<Vec<_>>(),
            }),
        )?,
        Format::Text => {
            emit(out, format!("no-go chain for {name} at k = {k}"))?;
            for s in &steps {
                let status = if s.passed { "ok" } else { "FAILED" };
                emit(
                    out,
                    format!("{:<40} [{}]", format!("{}: {status}", s.step), s.cites),
                )?;
                emit(out, format!("    {}", s.detail))?;
            }
            for p in &files {
                emit(out, format!("wrote {}", p.display()))?;
            }
            if failure.is_none() {
                emit(out, "chain complete")?;
            }
        }
    }
    match failure {
        None => Ok(()),
        Some(f) => Err(Exit::Check(f.to_string())),
    }
}

fn cmd_verify(file: &Path, format: Format, out: &mut dyn Write) -> Result<(), Exit> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Exit::Input(format!("cannot read {}: {e}", file.display())))?;
    let cert = Certificate::from_json(&text).map_err(|e| match e {
        LoadError::Shape(_) => Exit::Check(format!("{}: {e}", file.display())),
        LoadError::Syntax(_) | LoadError::Schema { .. } => {
            Exit::Input(format!("{}: {e}", file.display()))
        }
    })?;
    let kind = cert.kind();
    let result = verify(&cert);
    match format {
        Format::Json => emit_json(
            out,
            &json!({
                "file": file.display().to_string(),
                "kind": kind.to_string(),
                "valid": result.is_ok(),
                "error": result.as_ref().err().map(|e| e.to_string()),
            }),
        )?,
        Format::Text => emit(
            out,
            match &result {
                Ok(_) => format!("valid {kind} certificate: {}", file.display()),
                Err(e) => format!("INVALID {kind} certificate: {}: {e}", file.display()),
            },
        )?,
    }
    result
        .map(|_| ())
        .map_err(|e| Exit::Check(format!("{}: {e}", file.display())))
}

fn param_text(v: &ParamValue) -> String {
    match v {
        ParamValue::Rational(q) => q.to_string(),
        ParamValue::Root(c) => {
            let terms: Vec<String> = c
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, q)| !q.is_zero())
                .map(|(d, q)| match d {
                    0 => format!("({q})"),
                    1 => format!("({q}) t"),
                    _ => format!("({q}) t^{d}"),
                })
                .collect();
            format!("real root of {} = 0", terms.join(" + "))
        }
    }
}

fn verdict_detail(v: &Verdict) -> String {
    match v {
        Verdict::Feasible { values } if values.is_empty() => "no free scales".into(),
        Verdict::Feasible { values } => values
            .iter()
            .enumerate()
            .map(|(p, v)| format!("t{} = {}", p + 1, param_text(v)))
            .collect::<Vec<_>>()
            .join("; "),
        Verdict::LinearInfeasible { multipliers } => {
            format!(
                "polynomial combination of {} equations equals 1",
                multipliers.len()
            )
        }
        Verdict::NoRealSolution { param, target, .. } => {
            format!(
                "equations imply {target} = 0, which has no real root in t{}",
                param + 1
            )
        }
        Verdict::ResidualObstruction {
            constraint, name, ..
        } => {
            format!("constraint {constraint} ({name}) leaves a nonzero constant residual")
        }
        Verdict::Inconclusive { reason } => reason.clone(),
    }
}

fn cmd_probe(
    j: &Rational,
    k: u32,
    dir: &Path,
    format: Format,
    out: &mut dyn Write,
) -> Result<(), Exit> {
    let payload = feasibility_probe(j, k).map_err(|e| Exit::Input(e.to_string()))?;
    let verdict = payload.verdict.clone();
    let cert = verify(&Certificate::new(Payload::FeasibilityVerdict(payload)))
        .map_err(|e| Exit::Check(format!("probe certificate failed its own check: {e}")))?;
    let file_name = format!("feasibility_j{}_k{k}.json", j.to_string().replace('/', "_"));
    let path = write_file(dir, &file_name, &cert)?;
    let trivial = j.is_zero();
    let detail = verdict_detail(&verdict);
    match format {
        Format::Json => emit_json(
            out,
            &json!({
                "j": j.to_string(),
                "k_domain": k,
                "verdict": verdict.class(),
                "definite": verdict.is_definite(),
                "detail": detail,
                "trivial_representation": trivial,
                "certificate": path.display().to_string(),
            }),
        )?,
        Format::Text => {
            emit(out, format!("spin j = {j}, domain degree k = {k}"))?;
            if trivial {
                emit(
                    out,
                    "degenerate case: the one-dimensional representation only carries the \
                     trivial prequantization Q(f) = mean(f)",
                )?;
            }
            emit(out, format!("verdict: {} ({detail})", verdict.class()))?;
            emit(out, format!("certificate: {}", path.display()))?;
        }
    }
    if verdict.is_definite() {
        Ok(())
    } else {
        Err(Exit::Check(format!("probe inconclusive: {detail}")))
    }
}
