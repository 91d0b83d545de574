//! Command-line front end for `qtype-core`.
//!
//! [`run`] maps a [`RunConfig`] to a [`Report`] and an exit code: 0 for a
//! resolved, certified result, 2 for an unresolved or uncertified one, and 1
//! for input errors.

pub mod config;
pub mod corpus;
pub mod model_file;
pub mod report;

use num_traits::Zero;
use serde_json::json;

use qtype_core::algebra::{translate, translate_holo, GaussianRational as GQ, HermPoly};
use qtype_core::curves::{nu_along, CurveGerm};
use qtype_core::decomp::{decompose, square_pieces, truncate, twisted_ideal, union_basis, RationalUnitary};
use qtype_core::ideals::{mult, HoloIdeal, MultStatus};
use qtype_core::types::{
    bound_check, delta_q_ideal, dq_via_slices, GenericValueReport, HypersurfaceModel, IdealInput, Params, SearchBudget,
    Status,
};
use qtype_core::Error;

pub use config::{Budgets, Command, ConfigView, Format, RunConfig};
pub use model_file::{load_model, InputError, LoadedModel, Model};
pub use report::{EstimateView, LemmaCheck, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_UNRESOLVED: i32 = 2;

/// Result of a run: the exit code and either a report or an input error.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub report: Option<Report>,
    pub error: Option<InputError>,
}

impl Outcome {
    /// The report rendered in the configured format.
    pub fn render(&self, format: Format) -> Option<String> {
        self.report.as_ref().map(|r| match format {
            Format::Json => r.to_json(),
            Format::Table => r.to_table(),
        })
    }
}

pub fn run(cfg: &RunConfig) -> Outcome {
    match dispatch(cfg) {
        Ok(report) => {
            let code = report.exit_code;
            Outcome {
                code,
                report: Some(report),
                error: None,
            }
        }
        Err(e) => Outcome {
            code: EXIT_INPUT,
            report: None,
            error: Some(e),
        },
    }
}

fn dispatch(cfg: &RunConfig) -> Result<Report, InputError> {
    validate_budgets(cfg)?;
    match cfg.command {
        Command::Corpus => corpus::run_corpus(cfg),
        _ => {
            let path = cfg
                .model
                .as_deref()
                .ok_or_else(|| InputError::new("--model", "a model file is required"))?;
            let model = load_model(path)?;
            match cfg.command {
                Command::Type => cmd_type(cfg, &model),
                Command::Slice => cmd_slice(cfg, &model),
                Command::Decompose => cmd_decompose(cfg, &model),
                Command::Mult => cmd_mult(cfg, &model),
                Command::Nu => cmd_nu(cfg, &model),
                Command::VerifyBound => cmd_verify_bound(cfg, &model),
                Command::DemoUsc => cmd_demo_usc(cfg, &model),
                Command::Corpus => unreachable!(),
            }
        }
    }
}

fn validate_budgets(cfg: &RunConfig) -> Result<(), InputError> {
    let b = &cfg.budgets;
    if b.k == Some(0) || b.max_curve_degree == 0 || b.num_samples == 0 || b.min_agreement == 0 || b.max_mult_degree == 0 {
        return Err(InputError::new("budgets", "all budget fields must be positive"));
    }
    if b.min_agreement < 3 || b.num_samples < b.min_agreement {
        return Err(InputError::new(
            "budgets",
            format!("need --samples >= --min-agreement >= 3 (got {} and {})", b.num_samples, b.min_agreement),
        ));
    }
    if cfg.q == Some(0) {
        return Err(InputError::new("--q", "q must be at least 1"));
    }
    Ok(())
}

pub fn params(cfg: &RunConfig) -> Params {
    Params {
        k: cfg.budgets.k,
        budget: SearchBudget {
            max_curve_degree: cfg.budgets.max_curve_degree,
            ..SearchBudget::default()
        },
        max_mult_degree: cfg.budgets.max_mult_degree,
        num_samples: cfg.budgets.num_samples,
        min_agreement: cfg.budgets.min_agreement,
        seed: cfg.seed,
        ..Params::default()
    }
}

fn core_err(source: &str, e: Error) -> InputError {
    InputError::new(source, e.to_string())
}

fn q_of(cfg: &RunConfig, model: &Model) -> Result<usize, InputError> {
    let q = cfg.q.or(model.file.default_q).unwrap_or(1);
    if q == 0 || q > model.n() {
        return Err(InputError::new("--q", format!("q must satisfy 1 <= q <= n = {}, got {q}", model.n())));
    }
    Ok(q)
}

fn point_of(flag: &str, src: Option<&str>, n: usize) -> Result<Vec<GQ>, InputError> {
    match src {
        Some(s) => model_file::parse_point(flag, s, n),
        None => Ok(vec![GQ::zero(); n]),
    }
}

fn invariant_name(q: usize) -> &'static str {
    if q == 1 {
        "Delta_1"
    } else {
        "D_q"
    }
}

/// Exit code of a generic-value computation.
pub fn generic_exit(r: &GenericValueReport) -> i32 {
    match r.agreed_status {
        Some(Status::Exact) | Some(Status::Interval) => EXIT_OK,
        _ => EXIT_UNRESOLVED,
    }
}

fn truncation_check(r: &GenericValueReport) -> Option<LemmaCheck> {
    let e = r.estimate.as_ref()?;
    let v = e.truncation.as_ref()?;
    Some(LemmaCheck {
        name: "truncation_stability".into(),
        holds: Some(v.is_stable()),
        detail: serde_json::to_value(v).unwrap_or_default(),
    })
}

pub fn generic_value(cfg: &RunConfig, model: &HypersurfaceModel, p: &[GQ], q: usize) -> Result<GenericValueReport, InputError> {
    dq_via_slices(model, p, q, &params(cfg)).map_err(|e| core_err("model", e))
}

fn cmd_type(cfg: &RunConfig, model: &Model) -> Result<Report, InputError> {
    let m = model.real()?;
    let q = q_of(cfg, model)?;
    let p = point_of("--point", cfg.point.as_deref(), model.n())?;
    let r = generic_value(cfg, m, &p, q)?;
    let mut rep = Report::new(invariant_name(q), &cfg.view()).with_generic(&r);
    rep.lemma_checks.extend(truncation_check(&r));
    rep.exit_code = generic_exit(&r);
    Ok(rep)
}

fn cmd_slice(cfg: &RunConfig, model: &Model) -> Result<Report, InputError> {
    let q = q_of(cfg, model)?;
    let p = point_of("--point", cfg.point.as_deref(), model.n())?;
    let input = match &model.model {
        LoadedModel::Real(m) => IdealInput::Herm(m.at(&p).map_err(|e| core_err("--point", e))?),
        LoadedModel::Holo(i) => {
            let gens = i
                .gens()
                .iter()
                .map(|g| translate_holo(g, &p))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| core_err("--point", e))?;
            IdealInput::Holo(HoloIdeal::new(i.nvars(), gens).map_err(|e| core_err("model", e))?)
        }
    };
    let (e, samples) = delta_q_ideal(&input, q, &params(cfg)).map_err(|e| core_err("model", e))?;
    let mut rep = Report::new("Delta_q", &cfg.view());
    rep.q = Some(q);
    rep.point = Some(p.iter().map(ToString::to_string).collect());
    rep.estimate = Some(EstimateView::from_estimate(&e));
    rep.witnesses = e.witnesses.iter().map(Into::into).collect();
    rep.samples = samples.iter().map(Into::into).collect();
    rep.seeds.samples = samples.iter().map(|s| s.seed).collect();
    rep.notes = e.notes.clone();
    rep.exit_code = if e.status == Status::LowerOnly { EXIT_UNRESOLVED } else { EXIT_OK };
    Ok(rep)
}

fn k_of(cfg: &RunConfig, m: &HypersurfaceModel) -> u32 {
    cfg.budgets.k.unwrap_or_else(|| m.default_k())
}

fn cmd_decompose(cfg: &RunConfig, model: &Model) -> Result<Report, InputError> {
    let m = model.real()?;
    let p = point_of("--point", cfg.point.as_deref(), model.n())?;
    let k = k_of(cfg, m);
    let local = m.at(&p).map_err(|e| core_err("--point", e))?;
    let mut items = Vec::new();
    for r in &local {
        let d = decompose(r, k).map_err(|e| core_err("--k", e))?;
        let pieces = square_pieces(&d).map(|s| {
            json!({
                "weights": s.weights.iter().map(qtype_core::serde_util::ratio_string).collect::<Vec<_>>(),
                "pieces": s.pieces.iter().map(ToString::to_string).collect::<Vec<_>>(),
            })
        });
        let reconstructs = d.reconstruct() == truncate(r, k).map_err(|e| core_err("--k", e))?;
        items.push(json!({
            "decomposition": serde_json::to_value(&d).unwrap_or_default(),
            "square_pieces": pieces,
            "reconstructs": reconstructs,
        }));
    }
    let mut rep = Report::new("decomposition", &cfg.view());
    rep.point = Some(p.iter().map(ToString::to_string).collect());
    rep.result = json!({ "k": k, "generators": items });
    Ok(rep)
}

fn cmd_mult(cfg: &RunConfig, model: &Model) -> Result<Report, InputError> {
    let p = point_of("--point", cfg.point.as_deref(), model.n())?;
    let mut rep = Report::new("mult", &cfg.view());
    let ideal = match &model.model {
        LoadedModel::Holo(i) => {
            let gens = i
                .gens()
                .iter()
                .map(|g| translate_holo(g, &p))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| core_err("--point", e))?;
            HoloIdeal::new(i.nvars(), gens).map_err(|e| core_err("model", e))?
        }
        LoadedModel::Real(m) => {
            let k = k_of(cfg, m);
            let local = m.at(&p).map_err(|e| core_err("--point", e))?;
            let size = union_basis(&local, k).map_err(|e| core_err("--k", e))?.len();
            rep.notes.push(format!("real model: multiplicity of the twisted ideal I(U = I, k = {k})"));
            twisted_ideal(&local, &RationalUnitary::identity(size), k).map_err(|e| core_err("model", e))?
        }
    };
    let res = mult(&ideal, cfg.budgets.max_mult_degree).map_err(|e| core_err("model", e))?;
    rep.point = Some(p.iter().map(ToString::to_string).collect());
    rep.exit_code = match res.status {
        MultStatus::Certified | MultStatus::CertifiedInfinite => EXIT_OK,
        _ => EXIT_UNRESOLVED,
    };
    rep.result = json!({
        "generators": ideal.gens().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "mult": serde_json::to_value(&res).unwrap_or_default(),
    });
    Ok(rep)
}

fn cmd_nu(cfg: &RunConfig, model: &Model) -> Result<Report, InputError> {
    let p = point_of("--point", cfg.point.as_deref(), model.n())?;
    let src = cfg.curve.as_deref().ok_or_else(|| InputError::new("--curve", "a curve is required"))?;
    let gamma = CurveGerm::from_text(src, Some(p.clone())).map_err(|e| match e {
        Error::Parse { pos, msg } => InputError::new("--curve", msg).at(1, pos + 1),
        other => core_err("--curve", other),
    })?;
    if gamma.nvars() != model.n() {
        return Err(InputError::new("--curve", format!("curve has {} components, model has n = {}", gamma.nvars(), model.n())));
    }
    let per: Vec<qtype_core::Order> = match &model.model {
        LoadedModel::Real(m) => {
            let local: Vec<HermPoly> = m.gens.iter().map(|r| translate(r, &p)).collect::<Result<_, _>>().map_err(|e| core_err("--point", e))?;
            local.iter().map(|r| nu_along(r, &gamma)).collect::<Result<_, _>>().map_err(|e| core_err("--curve", e))?
        }
        LoadedModel::Holo(i) => i
            .gens()
            .iter()
            .map(|g| translate_holo(g, &p).and_then(|g| qtype_core::curves::holo_nu_along(&g, &gamma)))
            .collect::<Result<_, _>>()
            .map_err(|e| core_err("--curve", e))?,
    };
    let order = per.iter().copied().min().unwrap_or(qtype_core::Order::Infinity);
    let mut rep = Report::new("nu", &cfg.view());
    rep.point = Some(p.iter().map(ToString::to_string).collect());
    rep.result = json!({
        "curve": gamma.to_string(),
        "nu_curve": gamma.nu(),
        "order": order,
        "per_generator": per,
        "ratio": order.ratio(gamma.nu()),
    });
    Ok(rep)
}

fn cmd_verify_bound(cfg: &RunConfig, model: &Model) -> Result<Report, InputError> {
    let m = model.real()?;
    let q = q_of(cfg, model)?;
    let p0 = point_of("--p0", cfg.p0.as_deref(), model.n())?;
    let src = cfg.p.as_deref().ok_or_else(|| InputError::new("--p", "the nearby point is required"))?;
    let p = point_of("--p", Some(src), model.n())?;
    let r0 = generic_value(cfg, m, &p0, q)?;
    let r1 = generic_value(cfg, m, &p, q)?;
    let mut rep = Report::new("bound", &cfg.view()).with_generic(&r1);
    rep.seeds.samples.extend(r0.samples.iter().map(|s| s.seed));
    let resolved = r0.resolved() && r1.resolved();
    let check = match (&r0.estimate, &r1.estimate) {
        (Some(a), Some(b)) => Some(bound_check(a, b, m.n, q)),
        _ => None,
    };
    rep.result = json!({
        "p0": { "point": r0.point.iter().map(ToString::to_string).collect::<Vec<_>>(), "estimate": EstimateView::from_generic(&r0) },
        "p": { "point": r1.point.iter().map(ToString::to_string).collect::<Vec<_>>(), "estimate": EstimateView::from_generic(&r1) },
        "bound": check,
    });
    rep.lemma_checks.push(LemmaCheck {
        name: "local_bound".into(),
        holds: check.as_ref().filter(|c| !c.vacuous).map(|c| c.holds),
        detail: serde_json::to_value(&check).unwrap_or_default(),
    });
    rep.exit_code = match &check {
        Some(c) if resolved && !c.vacuous && c.holds => EXIT_OK,
        _ => EXIT_UNRESOLVED,
    };
    if !resolved {
        rep.notes.push("a generic value is UNRESOLVED; the bound is not checked".into());
    }
    Ok(rep)
}

fn cmd_demo_usc(cfg: &RunConfig, model: &Model) -> Result<Report, InputError> {
    let m = model.real()?;
    let q = q_of(cfg, model)?;
    let dir = model
        .usc_direction
        .clone()
        .ok_or_else(|| InputError::new(model.path.display().to_string(), "model has no usc_direction"))?;
    let base = point_of("--point", cfg.point.as_deref(), model.n())?;
    let r0 = generic_value(cfg, m, &base, q)?;
    let mut rows = vec![json!({
        "eps": "0",
        "point": base.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "value": report::agreed_text(&r0),
        "status": r0.agreed_status,
        "bound": null,
        "bound_holds": null,
    })];
    let mut ok = r0.resolved() && generic_exit(&r0) == EXIT_OK;
    let mut rep = Report::new("D_q", &cfg.view()).with_generic(&r0);
    for eps in &cfg.eps {
        let e = qtype_core::algebra::scalar_from_text(eps).map_err(|e| InputError::new("--eps", e.to_string()))?;
        let p: Vec<GQ> = base.iter().zip(&dir).map(|(b, d)| b + &(&e * d)).collect();
        let r = generic_value(cfg, m, &p, q)?;
        rep.seeds.samples.extend(r.samples.iter().map(|s| s.seed));
        let check = match (&r0.estimate, &r.estimate) {
            (Some(a), Some(b)) => Some(bound_check(a, b, m.n, q)),
            _ => None,
        };
        ok &= r.resolved() && generic_exit(&r) == EXIT_OK && check.as_ref().is_some_and(|c| c.holds && !c.vacuous);
        rows.push(json!({
            "eps": eps,
            "point": p.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "value": report::agreed_text(&r),
            "status": r.agreed_status,
            "bound": check.as_ref().and_then(|c| c.bound.clone()),
            "bound_holds": check.as_ref().map(|c| c.holds),
        }));
        rep.lemma_checks.push(LemmaCheck {
            name: format!("local_bound(eps={eps})"),
            holds: check.as_ref().filter(|c| !c.vacuous).map(|c| c.holds),
            detail: serde_json::to_value(&check).unwrap_or_default(),
        });
    }
    rep.result = json!({ "direction": dir.iter().map(ToString::to_string).collect::<Vec<_>>(), "rows": rows });
    rep.exit_code = if ok { EXIT_OK } else { EXIT_UNRESOLVED };
    Ok(rep)
}

/// Writes the rendered report to `--out` or stdout.
pub fn emit(cfg: &RunConfig, outcome: &Outcome) -> std::io::Result<()> {
    if let Some(text) = outcome.render(cfg.format) {
        match &cfg.out {
            Some(path) => std::fs::write(path, text)?,
            None => print!("{text}"),
        }
    }
    Ok(())
}
