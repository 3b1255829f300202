//! Command-line front end: job files in, canonical JSON reports out.
//!
//! Exit codes: 0 when the computation succeeds and its verdict (if any) is
//! positive, 2 when it succeeds with a negative verdict, 1 on errors.

mod job;
mod report;

use std::str::FromStr;

use num_rational::BigRational;
use serde::Serialize;
use serde_json::{json, Value};

pub use job::{CommandLine, Definition, JobSpec, Settings};
pub use report::{canonical_json, ReportEnvelope, Status, Tool, Warning, TOOL_NAME, TOOL_VERSION};

use crate::analyze::{
    analyze_family, euler_vector, expansion_check, homogeneous_relation_check,
    hyperplane_from_form, le_numbers, limiting_hyperplane_test, rees_test, slice_check,
    tangent_cone_analysis, ReesVerdict, SAMPLE_CAVEAT,
};
use crate::basis::Budget;
use crate::error::{Error, Result};
use crate::ideal::{hat_ideal, Ideal};
use crate::ring::{Coeff, FieldSpec, PolyRing, Polynomial};
use crate::segre::{segre_polar_profile, SegreOptions};

use report::to_value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    /// Segre numbers, polar multiplicities and component classification.
    Segre,
    /// Polar multiplicities only.
    Polar,
    /// Lê numbers of a hypersurface.
    Le,
    /// Lê numbers and the vector χ*, cross-checked on generic slices.
    Chi,
    /// Segre numbers of m·I against I.
    ExpansionCheck,
    /// Segre numbers on a generic linear slice.
    SliceCheck,
    /// Integral-closure equality of I ⊆ J via Segre numbers.
    Rees,
    /// Is the hyperplane H a limiting tangent hyperplane of V(f)?
    TangentHyperplane,
    /// Lê data over parameter samples and equisingularity verdicts.
    Family,
    /// Deformation to the tangent cone.
    TangentCone,
    /// The Lê-number relation for homogeneous f.
    HomogCheck,
    /// The hat ideal (I, y) and its Segre numbers.
    Hat,
    /// Whatever the job's `cmd` line names.
    Run,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Segre => "segre",
            Command::Polar => "polar",
            Command::Le => "le",
            Command::Chi => "chi",
            Command::ExpansionCheck => "expansion-check",
            Command::SliceCheck => "slice-check",
            Command::Rees => "rees",
            Command::TangentHyperplane => "tangent-hyperplane",
            Command::Family => "family",
            Command::TangentCone => "tangent-cone",
            Command::HomogCheck => "homog-check",
            Command::Hat => "hat",
            Command::Run => "run",
        }
    }

    /// Argument roles and their default names.
    fn roles(self) -> &'static [&'static str] {
        match self {
            Command::Segre
            | Command::Polar
            | Command::ExpansionCheck
            | Command::SliceCheck
            | Command::Hat => &["I", "X"],
            Command::Rees => &["I", "J", "X"],
            Command::TangentHyperplane => &["f", "H"],
            Command::Le
            | Command::Chi
            | Command::Family
            | Command::TangentCone
            | Command::HomogCheck => &["f"],
            Command::Run => &[],
        }
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        <Command as clap::ValueEnum>::value_variants()
            .iter()
            .copied()
            .find(|c| c.name() == s && *c != Command::Run)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown command `{s}`")))
    }
}

/// Everything the command line contributes on top of the job file.
#[derive(Clone, Debug, Default)]
pub struct Invocation {
    pub command: Option<Command>,
    pub names: Vec<String>,
    pub field: Option<String>,
    pub settings: Settings,
    pub verbose_trace: bool,
    pub json_indent: usize,
    pub sequential: bool,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub json: String,
    pub exit_code: u8,
}

/// `qq` or `fp:P`.
pub fn parse_field(s: &str) -> Result<FieldSpec> {
    let t = s.trim();
    if t.eq_ignore_ascii_case("qq") || t == "Q" {
        return Ok(FieldSpec::Rationals);
    }
    let p = t
        .strip_prefix("fp:")
        .ok_or_else(|| Error::InvalidField(format!("`{s}`; expected qq or fp:P")))?;
    let p: u64 = p
        .parse()
        .map_err(|_| Error::InvalidField(format!("`{p}` is not an integer")))?;
    FieldSpec::prime_field(p)
}

/// `t=0;t=1/2` or, with several parameters, `s=0,t=0;s=1,t=-2`. Every
/// parameter must be assigned in every sample.
pub fn parse_samples(s: &str, ring: &PolyRing) -> Result<Vec<Vec<Coeff>>> {
    let params = ring.param_vars();
    if params.is_empty() {
        return Err(Error::InvalidArgument(
            "samples given but the ring declares no parameters".into(),
        ));
    }
    let field = ring.field();
    let mut out = Vec::new();
    for sample in s.split(';').map(str::trim).filter(|t| !t.is_empty()) {
        let mut values: Vec<Option<Coeff>> = vec![None; params.len()];
        for assignment in sample.split(',') {
            let (name, value) = assignment.split_once('=').ok_or_else(|| {
                Error::InvalidArgument(format!("`{assignment}` is not of the form name=value"))
            })?;
            let (name, value) = (name.trim(), value.trim());
            let idx = params.iter().position(|p| p == name).ok_or_else(|| {
                Error::InvalidArgument(format!("`{name}` is not a parameter"))
            })?;
            let q = BigRational::from_str(value).map_err(|_| {
                Error::InvalidArgument(format!("`{value}` is not a rational number"))
            })?;
            if values[idx].replace(field.from_rational(&q)?).is_some() {
                return Err(Error::InvalidArgument(format!(
                    "`{name}` assigned twice in `{sample}`"
                )));
            }
        }
        let complete: Option<Vec<Coeff>> = values.into_iter().collect();
        out.push(complete.ok_or_else(|| {
            Error::InvalidArgument(format!("sample `{sample}` leaves a parameter unassigned"))
        })?);
    }
    if out.is_empty() {
        return Err(Error::InvalidArgument("no samples given".into()));
    }
    Ok(out)
}

/// Parses the job, runs the command and renders the report.
pub fn run(job_text: &str, inv: &Invocation) -> Result<Outcome> {
    let field = inv.field.as_deref().map(parse_field).transpose()?;
    let job = JobSpec::parse(job_text, field)?;
    let settings = job.settings.overridden_by(&inv.settings);

    let (command, job_args) = match inv.command {
        Some(Command::Run) | None => {
            let c = job.command.as_ref().ok_or_else(|| {
                Error::InvalidArgument("the job has no cmd line and no command was given".into())
            })?;
            (c.name.parse::<Command>()?, c.args.clone())
        }
        Some(c) => (c, Vec::new()),
    };
    let given = if inv.names.is_empty() {
        job_args
    } else {
        inv.names.clone()
    };
    let roles = command.roles();
    if given.len() > roles.len() {
        return Err(Error::InvalidArgument(format!(
            "`{}` takes at most {} names ({}), got {}",
            command.name(),
            roles.len(),
            roles.join(", "),
            given.len()
        )));
    }
    let names: Vec<String> = roles
        .iter()
        .enumerate()
        .map(|(k, d)| given.get(k).cloned().unwrap_or_else(|| d.to_string()))
        .collect();
    for (k, n) in given.iter().enumerate() {
        if job.get(n).is_none() {
            return Err(Error::InvalidArgument(format!(
                "`{n}` (for {}) is not defined in the job",
                roles[k]
            )));
        }
    }

    let budget = {
        let d = Budget::default();
        Budget {
            max_basis_size: settings.max_basis_size.unwrap_or(d.max_basis_size),
            max_degree: settings.max_degree.unwrap_or(d.max_degree),
            max_reductions: settings.max_reductions.unwrap_or(d.max_reductions),
        }
    };
    let opts = SegreOptions {
        trials: settings.trials.unwrap_or(SegreOptions::default().trials),
        seed: settings.seed.unwrap_or(0),
        parallel: !inv.sequential,
        budget: Some(budget),
    };
    if opts.trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }

    let ctx = Context {
        job: &job,
        names: &names,
        opts,
        settings: &settings,
    };
    let mut warnings = Vec::new();
    let out = dispatch(command, &ctx, &mut warnings)?;

    let field = job.ring.field();
    if field.is_probabilistic() {
        warnings.push(Warning::new(
            "fp_probabilistic",
            format!("computed over {field}; results hold with high probability only"),
        ));
    }
    if opts.trials == 1 {
        warnings.push(Warning::new(
            "single_trial",
            "one trial only: a non-generic random choice cannot be detected",
        ));
    }
    if settings.samples.is_some() && command != Command::Family {
        warnings.push(Warning::new(
            "samples_ignored",
            format!("samples are only used by `family`, not `{}`", command.name()),
        ));
    }
    warnings.sort_by(|a, b| a.code.cmp(b.code));

    let envelope = ReportEnvelope {
        tool: Tool::default(),
        job: job_echo(&job, command, &names, &opts, &settings)?,
        result: out.result,
        status: out.status,
        traces: if inv.verbose_trace {
            Some(out.traces.unwrap_or(Value::Null))
        } else {
            None
        },
        warnings,
    };
    let json = canonical_json(&envelope, inv.json_indent)?;
    let exit_code = match out.status {
        Status::Ok => 0,
        Status::Negative => 2,
    };
    Ok(Outcome { json, exit_code })
}

struct Context<'a> {
    job: &'a JobSpec,
    names: &'a [String],
    opts: SegreOptions,
    settings: &'a Settings,
}

impl Context<'_> {
    fn ring(&self) -> &std::sync::Arc<PolyRing> {
        &self.job.ring
    }

    /// The ideal bound to argument `k`; an undefined `X` is the whole space.
    fn ideal(&self, k: usize) -> Result<Ideal> {
        let name = &self.names[k];
        match self.job.get(name) {
            Some(d) => Ok(d.as_ideal(self.ring())),
            None if name == "X" => Ok(Ideal::zero(self.ring())),
            None => Err(Error::InvalidArgument(format!("`{name}` is not defined"))),
        }
    }

    fn x_is_space(&self, k: usize) -> bool {
        self.job.get(&self.names[k]).is_none()
    }

    fn polynomial(&self, k: usize) -> Result<Polynomial> {
        let name = &self.names[k];
        let d = self
            .job
            .get(name)
            .ok_or_else(|| Error::InvalidArgument(format!("`{name}` is not defined")))?;
        d.as_polynomial().cloned().ok_or_else(|| {
            Error::InvalidArgument(format!("`{name}` must be a single polynomial"))
        })
    }
}

struct Output {
    result: Value,
    status: Status,
    traces: Option<Value>,
}

fn verdict(ok: bool) -> Status {
    if ok {
        Status::Ok
    } else {
        Status::Negative
    }
}

fn reduced_x_warning(warnings: &mut Vec<Warning>, name: &str) {
    warnings.push(Warning::new(
        "reduced_x_assumed",
        format!("`{name}` is assumed to define a reduced equidimensional germ; this is not checked"),
    ));
}

#[derive(Serialize)]
struct PolarResult<'a> {
    n: usize,
    m: &'a [u64],
    top_polar: u64,
    trials: usize,
    seeds: &'a [u64],
    agreement: bool,
}

fn dispatch(command: Command, ctx: &Context, warnings: &mut Vec<Warning>) -> Result<Output> {
    let opts = &ctx.opts;
    let ok = |result: Value| Output {
        result,
        status: Status::Ok,
        traces: None,
    };
    match command {
        Command::Segre | Command::Polar => {
            let (i, x) = (ctx.ideal(0)?, ctx.ideal(1)?);
            if !ctx.x_is_space(1) {
                reduced_x_warning(warnings, &ctx.names[1]);
            }
            let run = segre_polar_profile(&i, &x, opts)?;
            let p = &run.profile;
            let result = if command == Command::Segre {
                let mut v = to_value(p)?;
                v["components"] = to_value(&run.components)?;
                v
            } else {
                to_value(&PolarResult {
                    n: p.n,
                    m: &p.m,
                    top_polar: p.top_polar,
                    trials: p.trials,
                    seeds: &p.seeds,
                    agreement: p.agreement,
                })?
            };
            Ok(Output {
                result,
                status: Status::Ok,
                traces: Some(to_value(&run.traces)?),
            })
        }
        Command::Hat => {
            let (i, x) = (ctx.ideal(0)?, ctx.ideal(1)?);
            let hat = hat_ideal(&i)?;
            let ext = hat.ring().clone();
            let map: Vec<usize> = (0..ctx.ring().nvars())
                .map(|v| if v < ctx.ring().nz() { v } else { v + 1 })
                .collect();
            let x_hat = Ideal::new(&ext, x.gens().iter().map(|g| g.embed(&ext, &map)).collect());
            let run = segre_polar_profile(&hat, &x_hat, opts)?;
            Ok(Output {
                result: json!({
                    "ring": ext.to_string(),
                    "fresh_variable": ext.z_vars().last().cloned(),
                    "hat_ideal": to_value(&hat)?,
                    "ambient": to_value(&x_hat)?,
                    "profile": to_value(&run.profile)?,
                }),
                status: Status::Ok,
                traces: Some(to_value(&run.traces)?),
            })
        }
        Command::Le => Ok(ok(to_value(&le_numbers(&ctx.polynomial(0)?, opts)?)?)),
        Command::Chi => Ok(ok(to_value(&euler_vector(&ctx.polynomial(0)?, opts)?)?)),
        Command::ExpansionCheck => {
            let (i, x) = (ctx.ideal(0)?, ctx.ideal(1)?);
            if !ctx.x_is_space(1) {
                reduced_x_warning(warnings, &ctx.names[1]);
            }
            let rep = expansion_check(&i, &x, opts)?;
            Ok(Output {
                status: verdict(rep.all_hold),
                result: to_value(&rep)?,
                traces: None,
            })
        }
        Command::SliceCheck => {
            let (i, x) = (ctx.ideal(0)?, ctx.ideal(1)?);
            if !ctx.x_is_space(1) {
                reduced_x_warning(warnings, &ctx.names[1]);
            }
            let k = ctx.settings.k.ok_or_else(|| {
                Error::InvalidArgument("slice-check needs --k or `set k` in the job".into())
            })?;
            let rep = slice_check(&i, &x, k, opts)?;
            Ok(Output {
                status: verdict(rep.all_hold),
                result: to_value(&rep)?,
                traces: None,
            })
        }
        Command::Rees => {
            let (i, j, x) = (ctx.ideal(0)?, ctx.ideal(1)?, ctx.ideal(2)?);
            if !ctx.x_is_space(2) {
                reduced_x_warning(warnings, &ctx.names[2]);
            }
            let rep = rees_test(&i, &j, &x, opts)?;
            Ok(Output {
                status: verdict(rep.verdict == ReesVerdict::ClosureEqual),
                result: to_value(&rep)?,
                traces: None,
            })
        }
        Command::TangentHyperplane => {
            let f = ctx.polynomial(0)?;
            let h = hyperplane_from_form(&ctx.polynomial(1)?)?;
            let rep = limiting_hyperplane_test(&f, &h, opts)?;
            Ok(Output {
                status: verdict(rep.limiting),
                result: to_value(&rep)?,
                traces: None,
            })
        }
        Command::Family => {
            let f = ctx.polynomial(0)?;
            let text = ctx.settings.samples.as_deref().ok_or_else(|| {
                Error::InvalidArgument("family needs --samples or `set samples` in the job".into())
            })?;
            let samples = parse_samples(text, ctx.ring())?;
            let rep = analyze_family(&f, &samples, opts)?;
            warnings.push(Warning::new("sample_witness", SAMPLE_CAVEAT));
            if !rep.semicontinuity_holds {
                warnings.push(Warning::new(
                    "semicontinuity_violated",
                    "λ(0) is lexicographically below some sample: a non-generic sample or an input error",
                ));
            }
            Ok(Output {
                status: verdict(rep.verdicts.af && rep.verdicts.wf),
                result: to_value(&rep)?,
                traces: None,
            })
        }
        Command::TangentCone => {
            let rep = tangent_cone_analysis(&ctx.polynomial(0)?, opts)?;
            Ok(Output {
                status: verdict(rep.relations_hold),
                result: to_value(&rep)?,
                traces: None,
            })
        }
        Command::HomogCheck => {
            let rep = homogeneous_relation_check(&ctx.polynomial(0)?, opts)?;
            Ok(Output {
                status: verdict(rep.holds),
                result: to_value(&rep)?,
                traces: None,
            })
        }
        Command::Run => unreachable!("resolved before dispatch"),
    }
}

fn job_echo(
    job: &JobSpec,
    command: Command,
    names: &[String],
    opts: &SegreOptions,
    settings: &Settings,
) -> Result<Value> {
    let definitions: serde_json::Map<String, Value> = job
        .definitions
        .iter()
        .map(|(n, d)| Ok((n.clone(), to_value(d)?)))
        .collect::<Result<_>>()?;
    let budget = opts.budget.unwrap_or_default();
    Ok(json!({
        "ring": job.ring.to_string(),
        "declared_field": job.declared_field.to_string(),
        "field": job.ring.field().to_string(),
        "definitions": definitions,
        "command": command.name(),
        "arguments": names,
        "options": {
            "seed": opts.seed,
            "trials": opts.trials,
            "k": settings.k,
            "samples": settings.samples,
            "budget": {
                "max_basis_size": budget.max_basis_size,
                "max_degree": budget.max_degree,
                "max_reductions": budget.max_reductions,
            },
        },
    }))
}
