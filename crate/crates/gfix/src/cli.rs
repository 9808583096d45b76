//! Batch front end: load space / map / coefficient descriptions from JSON,
//! dispatch to the library, and emit a deterministic JSON report.
//!
//! Exit codes: 0 = valid / converged, 2 = hypotheses failed, 3 =
//! non-convergence, 1 = input error. Reports are byte-stable for identical
//! inputs apart from the `generated_at_ms` timestamp field.

use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::analysis::{
    check_local_contractive, check_phi_condition, check_sequential_condition,
    common_coefficient_check, iterated_lipschitz, lambda_sequence_check, lipschitz_constant,
    minimal_uniform_lambda, product_series_check, series_converges, CoefficientSeq,
    CoefficientTensor, Convergence, LambdaOutcome, PhiFunction, SeqFamily, TensorBundleFile,
    TensorFamily,
};
use crate::chains::{chainability_threshold, is_chainable};
use crate::error::{Error, Result};
use crate::gspace::{
    diameter, validate_axioms, AnySpace, AnalyticGSpace, FiniteGSpace, GMetricSpace, GValue,
    SpaceFile,
};
use crate::map::{AnyMap, MapFile, SelfMap};
use crate::oracle::{brute_common_fixed_points, brute_fixed_points, verify_cauchy};
use crate::solver::{
    certify, certify_family, certify_generic, common_fixed_point, picard, Certificate,
    CertifyOptions, IterationTrace, TheoremId,
};

/// Grid cap applied when an analytic space is materialized for the
/// table-driven subcommands (axiom validation is quartic in grid size).
pub const SAMPLED_GRID_CAP: usize = 65;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Validate,
    Chains,
    Analyze,
    Certify,
    Solve,
    Oracle,
}

impl CommandKind {
    fn as_str(&self) -> &'static str {
        match self {
            CommandKind::Validate => "validate",
            CommandKind::Chains => "chains",
            CommandKind::Analyze => "analyze",
            CommandKind::Certify => "certify",
            CommandKind::Solve => "solve",
            CommandKind::Oracle => "oracle",
        }
    }
}

/// Flat run configuration assembled by the binary (or tests) from CLI flags.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CommandKind,
    pub space: PathBuf,
    pub map: Option<PathBuf>,
    pub coeffs: Option<PathBuf>,
    pub tensors: Option<PathBuf>,
    pub theorem: Option<String>,
    pub check: Option<String>,
    pub eps: Option<f64>,
    pub lambda: Option<f64>,
    pub phi_s: Option<f64>,
    pub phi_c: Option<f64>,
    pub tol: f64,
    pub max_iter: usize,
    pub horizon: usize,
    pub n_check: usize,
    pub idx_n: usize,
    pub cutoff: Option<usize>,
    pub grid: Option<usize>,
    pub x0: Option<String>,
    pub eps_grid: Vec<f64>,
    pub relaxed: bool,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: CommandKind, space: impl Into<PathBuf>) -> Self {
        RunConfig {
            command,
            space: space.into(),
            map: None,
            coeffs: None,
            tensors: None,
            theorem: None,
            check: None,
            eps: None,
            lambda: None,
            phi_s: None,
            phi_c: None,
            tol: 1e-12,
            max_iter: 1000,
            horizon: 16,
            n_check: 8,
            idx_n: 4,
            cutoff: None,
            grid: None,
            x0: None,
            eps_grid: vec![0.1, 0.01, 0.001],
            relaxed: false,
            out: None,
        }
    }
}

#[derive(Debug)]
pub struct CliOutcome {
    pub code: i32,
    pub report: Value,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Ok,
    HypothesesFailed,
    NoConvergence,
}

impl Status {
    fn code(&self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::HypothesesFailed => 2,
            Status::NoConvergence => 3,
        }
    }

    fn as_str(&self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::HypothesesFailed => "hypotheses_failed",
            Status::NoConvergence => "no_convergence",
        }
    }
}

struct LoadedFile<T> {
    value: T,
    path: String,
    sha256: String,
}

fn load_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<LoadedFile<T>> {
    let bytes = std::fs::read(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    let value: T = serde_json::from_slice(&bytes).map_err(|e| Error::Parse {
        path: path.display().to_string(),
        detail: e.to_string(),
    })?;
    Ok(LoadedFile {
        value,
        path: path.display().to_string(),
        sha256: hex::encode(Sha256::digest(&bytes)),
    })
}

fn input_entry<T>(f: &LoadedFile<T>) -> Value {
    json!({ "path": f.path, "sha256": f.sha256 })
}

/// A finite table for the table-driven subcommands: finite spaces directly,
/// analytic spaces through a capped sample grid.
fn materialize(space: &AnySpace, grid_override: Option<usize>) -> Result<(FiniteGSpace, Value)> {
    match space {
        AnySpace::Finite(s) => Ok((s.clone(), json!({ "sampled": s.sampled() }))),
        AnySpace::Analytic(a) => {
            let cap = grid_override.unwrap_or(SAMPLED_GRID_CAP);
            let fin = FiniteGSpace::sample_analytic_capped(a, cap)?;
            let used = fin.len();
            Ok((
                fin,
                json!({ "sampled": true, "validation_grid_n": used, "declared_grid_n": a.grid_n() }),
            ))
        }
    }
}

fn parse_x0_finite(space: &FiniteGSpace, x0: &Option<String>) -> Result<usize> {
    match x0 {
        None => {
            if space.is_empty() {
                Err(Error::EmptySpace)
            } else {
                Ok(0)
            }
        }
        Some(label) => space
            .index_of(label)
            .ok_or_else(|| Error::UnknownPoint(label.clone())),
    }
}

fn parse_x0_analytic(space: &AnalyticGSpace, x0: &Option<String>) -> Result<f64> {
    match x0 {
        None => Ok(space.lo()),
        Some(text) => {
            let v: f64 = text
                .parse()
                .map_err(|_| Error::UnknownPoint(text.clone()))?;
            space.check_point(&v)?;
            Ok(v)
        }
    }
}

fn phi_from(config: &RunConfig, default_sqrt: bool) -> Result<PhiFunction> {
    match (config.phi_s, config.phi_c) {
        (None, None) if default_sqrt => Ok(PhiFunction::sqrt()),
        (s, c) => PhiFunction::new(s.unwrap_or(1.0), c.unwrap_or(1.0)),
    }
}

fn seq_from(config: &RunConfig) -> Result<(CoefficientSeq, Value)> {
    let path = config
        .coeffs
        .as_ref()
        .ok_or(Error::MissingTheoremParam("analyze/certify", "--coeffs file"))?;
    let loaded: LoadedFile<SeqFamily> = load_json(path)?;
    let horizon = match &loaded.value {
        SeqFamily::Tabulated { values } => values.len(),
        _ => config.horizon,
    };
    let seq = CoefficientSeq::new(loaded.value.clone(), horizon)?;
    Ok((seq, input_entry(&loaded)))
}

struct Tensors {
    delta: Option<CoefficientTensor>,
    gamma: Option<CoefficientTensor>,
    theta: Option<CoefficientTensor>,
    lambda: Option<CoefficientTensor>,
    entry: Value,
}

fn tensors_from(config: &RunConfig) -> Result<Tensors> {
    let path = config
        .tensors
        .as_ref()
        .ok_or(Error::MissingTheoremParam("analyze/certify", "--tensors file"))?;
    let loaded: LoadedFile<TensorBundleFile> = load_json(path)?;
    let h = config.horizon;
    let build = |fam: &Option<TensorFamily>| -> Result<Option<CoefficientTensor>> {
        fam.as_ref()
            .map(|f| CoefficientTensor::new(f.clone(), h))
            .transpose()
    };
    Ok(Tensors {
        delta: build(&loaded.value.delta)?,
        gamma: build(&loaded.value.gamma)?,
        theta: build(&loaded.value.theta)?,
        lambda: build(&loaded.value.lambda)?,
        entry: input_entry(&loaded),
    })
}

fn trace_json<P: serde::Serialize>(
    trace: &IterationTrace<P>,
    labels: Vec<String>,
) -> Value {
    json!({
        "points": labels,
        "steps": trace.steps,
        "residual": trace.residual,
        "converged": trace.converged,
        "iterations": trace.iterations,
    })
}

fn certificate_json(cert: &Certificate) -> Value {
    let bound_samples: Vec<Value> = (1..=10)
        .map(|m| match cert.bound_at(m) {
            Some(v) => json!(v.get()),
            None => Value::Null,
        })
        .collect();
    json!({
        "certificate": cert,
        "bound_first_values": bound_samples,
    })
}

fn now_ms() -> u128 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_millis())
        .unwrap_or(0)
}

/// Execute exactly one subcommand and assemble the report.
pub fn run(config: &RunConfig) -> Result<CliOutcome> {
    let space_file: LoadedFile<SpaceFile> = load_json(&config.space)?;
    let space = space_file.value.build()?;
    let mut inputs = serde_json::Map::new();
    inputs.insert("space".into(), input_entry(&space_file));

    let (status, result) = match config.command {
        CommandKind::Validate => run_validate(config, &space)?,
        CommandKind::Chains => run_chains(config, &space)?,
        CommandKind::Analyze => run_analyze(config, &space, &mut inputs)?,
        CommandKind::Certify => run_certify(config, &space, &mut inputs)?,
        CommandKind::Solve => run_solve(config, &space, &mut inputs)?,
        CommandKind::Oracle => run_oracle(config, &space, &mut inputs)?,
    };

    let report = json!({
        "version": env!("CARGO_PKG_VERSION"),
        "generated_at_ms": now_ms() as u64,
        "command": config.command.as_str(),
        "inputs": Value::Object(inputs),
        "status": status.as_str(),
        "result": result,
    });
    if let Some(out) = &config.out {
        let text = serde_json::to_string_pretty(&report).map_err(|e| Error::Parse {
            path: out.display().to_string(),
            detail: e.to_string(),
        })?;
        std::fs::write(out, text + "\n").map_err(|source| Error::Io {
            path: out.display().to_string(),
            source,
        })?;
    }
    Ok(CliOutcome {
        code: status.code(),
        report,
    })
}

fn run_validate(config: &RunConfig, space: &AnySpace) -> Result<(Status, Value)> {
    let (fin, sampling) = materialize(space, config.grid)?;
    let default_cutoff = if fin.sampled() {
        1
    } else {
        (fin.len().saturating_sub(1)).max(1)
    };
    let cutoff = config.cutoff.unwrap_or(default_cutoff).min(fin.len()).max(1);
    let report = validate_axioms(&fin, cutoff)?;
    let status = if report.all_hold() {
        Status::Ok
    } else {
        Status::HypothesesFailed
    };
    let mut result = json!({
        "axioms": report,
        "points": fin.len(),
        "K": fin.relaxation(),
    });
    if !fin.is_empty() {
        result["diameter"] = json!(diameter(&fin)?.get());
    }
    merge(&mut result, sampling);
    Ok((status, result))
}

fn run_chains(config: &RunConfig, space: &AnySpace) -> Result<(Status, Value)> {
    let (fin, sampling) = materialize(space, config.grid)?;
    let threshold = if fin.len() >= 2 {
        Some(chainability_threshold(&fin)?.get())
    } else {
        None
    };
    let eps = match config.eps {
        Some(e) => GValue::new(e)?,
        None => GValue::new(threshold.unwrap_or(0.0))?,
    };
    let verdict = is_chainable(&fin, eps)?;
    let witnesses: Vec<Value> = verdict
        .witness_chains
        .iter()
        .map(|((x, y), chain)| {
            json!({
                "from": fin.point_label(x),
                "to": fin.point_label(y),
                "nodes": chain.nodes.iter().map(|n| fin.point_label(n)).collect::<Vec<_>>(),
            })
        })
        .collect();
    let status = if verdict.chainable {
        Status::Ok
    } else {
        Status::HypothesesFailed
    };
    let mut result = json!({
        "chainable": verdict.chainable,
        "epsilon": eps.get(),
        "threshold": threshold,
        "max_degree": verdict.max_degree,
        "witnesses": witnesses,
        "blocking_pair": verdict.blocking_pair.map(|(a, b)| {
            json!([fin.point_label(&a), fin.point_label(&b)])
        }),
    });
    merge(&mut result, sampling);
    Ok((status, result))
}

enum LoadedMap {
    None,
    Loaded(AnyMap),
}

fn map_from(config: &RunConfig, inputs: &mut serde_json::Map<String, Value>) -> Result<LoadedMap> {
    match &config.map {
        None => Ok(LoadedMap::None),
        Some(path) => {
            let loaded: LoadedFile<MapFile> = load_json(path)?;
            let map = loaded.value.build()?;
            inputs.insert("map".into(), input_entry(&loaded));
            Ok(LoadedMap::Loaded(map))
        }
    }
}

fn require_map(loaded: LoadedMap) -> Result<AnyMap> {
    match loaded {
        LoadedMap::Loaded(m) => Ok(m),
        LoadedMap::None => Err(Error::MissingTheoremParam("this command", "--map file")),
    }
}

/// Pair the parsed map against the space kind.
fn pair_finite(map: &AnyMap, space: &FiniteGSpace) -> Result<()> {
    match map {
        AnyMap::Tabulated(t) => t.check_against(space),
        AnyMap::TabulatedFamily(f) => {
            for m in f.distinct() {
                m.check_against(space)?;
            }
            Ok(())
        }
        _ => Err(Error::InvalidMap(
            "an affine map cannot act on a finite tabulated space".into(),
        )),
    }
}

fn pair_analytic(map: &AnyMap, space: &AnalyticGSpace) -> Result<()> {
    match map {
        AnyMap::Affine(a) => a.check_against(space),
        AnyMap::AffineFamily(f) => {
            for m in f.distinct() {
                m.check_against(space)?;
            }
            Ok(())
        }
        _ => Err(Error::InvalidMap(
            "a tabulated map cannot act on an analytic space".into(),
        )),
    }
}

fn run_analyze(
    config: &RunConfig,
    space: &AnySpace,
    inputs: &mut serde_json::Map<String, Value>,
) -> Result<(Status, Value)> {
    let check = config
        .check
        .clone()
        .ok_or(Error::MissingTheoremParam("analyze", "--check name"))?;
    let loaded = map_from(config, inputs)?;

    // Embed digests for every auxiliary input the run reads.
    if let Some(path) = &config.coeffs {
        let raw: LoadedFile<Value> = load_json(path)?;
        inputs.insert("coeffs".into(), input_entry(&raw));
    }
    if let Some(path) = &config.tensors {
        let raw: LoadedFile<Value> = load_json(path)?;
        inputs.insert("tensors".into(), input_entry(&raw));
    }

    // Scalar checks that need no space or map.
    match check.as_str() {
        "series" => {
            let (seq, _) = seq_from(config)?;
            let rep = series_converges(&seq)?;
            let ok = rep.verdict == Convergence::CertifiedConvergent;
            return Ok((status_of(ok), json!({ "check": check, "series": rep })));
        }
        "lambda-seq" => {
            let (seq, _) = seq_from(config)?;
            let out = lambda_sequence_check(&seq)?;
            let ok = matches!(out, LambdaOutcome::Certified(_));
            return Ok((status_of(ok), json!({ "check": check, "lambda": out })));
        }
        "product-series" => {
            let (seq, _) = seq_from(config)?;
            let rep = product_series_check(&seq)?;
            let ok = rep.series.verdict == Convergence::CertifiedConvergent;
            return Ok((status_of(ok), json!({ "check": check, "product_series": rep })));
        }
        "common-coeffs" => {
            let t = tensors_from(config)?;
            let (d, th, l) = (
                t.delta.ok_or(Error::MissingTheoremParam("common-coeffs", "delta tensor"))?,
                t.theta.ok_or(Error::MissingTheoremParam("common-coeffs", "theta tensor"))?,
                t.lambda.ok_or(Error::MissingTheoremParam("common-coeffs", "lambda tensor"))?,
            );
            let rep = common_coefficient_check(&d, &th, &l, config.horizon)?;
            let ok = rep.bound_holds
                && matches!(rep.lambda, Some(LambdaOutcome::Certified(_)));
            return Ok((status_of(ok), json!({ "check": check, "common_coefficients": rep })));
        }
        _ => {}
    }

    // Space/map checks, dispatched on the space kind.
    match space {
        AnySpace::Finite(s) => {
            let any = require_map(loaded)?;
            pair_finite(&any, s)?;
            let map = match &any {
                AnyMap::Tabulated(t) => t.clone(),
                _ => {
                    return Err(Error::InvalidMap(
                        "this check needs a single tabulated map".into(),
                    ))
                }
            };
            let x0 = parse_x0_finite(s, &config.x0)?;
            analyze_on(config, s, &map, x0, &check)
        }
        AnySpace::Analytic(a) => {
            let any = require_map(loaded)?;
            pair_analytic(&any, a)?;
            let map = match &any {
                AnyMap::Affine(m) => m.clone(),
                _ => {
                    return Err(Error::InvalidMap(
                        "this check needs a single affine map".into(),
                    ))
                }
            };
            let x0 = parse_x0_analytic(a, &config.x0)?;
            analyze_on(config, a, &map, x0, &check)
        }
    }
}

fn status_of(ok: bool) -> Status {
    if ok {
        Status::Ok
    } else {
        Status::HypothesesFailed
    }
}

fn analyze_on<S, M>(
    config: &RunConfig,
    space: &S,
    map: &M,
    x0: S::Point,
    check: &str,
) -> Result<(Status, Value)>
where
    S: GMetricSpace,
    S::Point: serde::Serialize,
    M: SelfMap<S::Point>,
{
    match check {
        "lipschitz" => match lipschitz_constant(space, map) {
            Ok(v) => Ok((
                Status::Ok,
                json!({ "check": check, "lipschitz": v.get(), "sampled": space.sampled() }),
            )),
            Err(Error::UnboundedLipschitz(a, b, c)) => Ok((
                Status::HypothesesFailed,
                json!({ "check": check, "unbounded": true, "witness": [a, b, c] }),
            )),
            Err(e) => Err(e),
        },
        "iterated-lipschitz" => {
            let lips = iterated_lipschitz(space, map, config.horizon)?;
            Ok((
                Status::Ok,
                json!({
                    "check": check,
                    "lipschitz": lips.iter().map(|v| v.get()).collect::<Vec<_>>(),
                    "sampled": space.sampled(),
                }),
            ))
        }
        "local-contractive" => {
            let eps = GValue::new(config.eps.ok_or(Error::MissingTheoremParam(
                "local-contractive",
                "--eps",
            ))?)?;
            let lam = config.lambda.ok_or(Error::MissingTheoremParam(
                "local-contractive",
                "--lambda",
            ))?;
            let v = check_local_contractive(space, map, eps, lam)?;
            Ok((status_of(v.holds), json!({ "check": check, "verdict": v })))
        }
        "min-lambda" => {
            let eps = GValue::new(
                config
                    .eps
                    .ok_or(Error::MissingTheoremParam("min-lambda", "--eps"))?,
            )?;
            let v = minimal_uniform_lambda(space, map, eps)?;
            Ok((
                status_of(v.is_some()),
                json!({ "check": check, "minimal_lambda": v, "sampled": space.sampled() }),
            ))
        }
        "sequential" => {
            let (seq, _) = seq_from(config)?;
            let v = check_sequential_condition(space, map, &seq, config.n_check)?;
            Ok((status_of(v.holds), json!({ "check": check, "verdict": v })))
        }
        "phi" => {
            let (seq, _) = seq_from(config)?;
            let phi = phi_from(config, true)?;
            let v = check_phi_condition(space, map, &seq, &phi, config.n_check)?;
            Ok((
                status_of(v.holds),
                json!({ "check": check, "phi": phi, "verdict": v }),
            ))
        }
        "cauchy" => {
            let tol = GValue::new(config.tol)?;
            let trace = picard(space, map, x0, tol, config.max_iter)?;
            let eps_grid: Result<Vec<GValue>> =
                config.eps_grid.iter().map(|&e| GValue::new(e)).collect();
            let verdict = verify_cauchy(space, &trace.points, &eps_grid?)?;
            let labels: Vec<String> =
                trace.points.iter().map(|p| space.point_label(p)).collect();
            Ok((
                status_of(trace.converged),
                json!({
                    "check": check,
                    "trace": trace_json(&trace, labels),
                    "cauchy": verdict,
                }),
            ))
        }
        other => Err(Error::Parse {
            path: "--check".into(),
            detail: format!("unknown check {other:?}"),
        }),
    }
}

fn build_options<P>(config: &RunConfig, theorem: TheoremId, inputs: &mut serde_json::Map<String, Value>) -> Result<CertifyOptions<P>> {
    let mut opts = CertifyOptions::<P> {
        horizon: config.horizon,
        condition_n: config.n_check,
        idx_n: config.idx_n,
        orbit_window: config.max_iter.min(256),
        eps: config.eps,
        lambda: config.lambda,
        relaxed_series: config.relaxed,
        ..CertifyOptions::default()
    };

    let needs_seq = matches!(
        theorem,
        TheoremId::SeqAn | TheoremId::SeqAnBoundedOrbit | TheoremId::PhiAn | TheoremId::PhiAnBoundedOrbit
    );
    if needs_seq {
        let (seq, entry) = seq_from(config)?;
        inputs.insert("coeffs".into(), entry);
        opts.seq = Some(seq);
    }
    let needs_phi = matches!(
        theorem,
        TheoremId::PhiAn
            | TheoremId::PhiAnBoundedOrbit
            | TheoremId::LambdaSeq
            | TheoremId::LambdaCor
            | TheoremId::LambdaVarSum
            | TheoremId::CommonPhi
    );
    if needs_phi {
        opts.phi = Some(phi_from(config, true)?);
    }
    let needs_tensors = matches!(
        theorem,
        TheoremId::LambdaSeq
            | TheoremId::LambdaCor
            | TheoremId::LambdaVarSum
            | TheoremId::Common
            | TheoremId::CommonPhi
    );
    if needs_tensors {
        let t = tensors_from(config)?;
        inputs.insert("tensors".into(), t.entry.clone());
        opts.delta = t.delta;
        opts.gamma = t.gamma;
        opts.theta = t.theta;
        opts.lam_tensor = t.lambda;
    }
    Ok(opts)
}

fn run_certify(
    config: &RunConfig,
    space: &AnySpace,
    inputs: &mut serde_json::Map<String, Value>,
) -> Result<(Status, Value)> {
    let theorem: TheoremId = config
        .theorem
        .as_deref()
        .ok_or(Error::MissingTheoremParam("certify", "--theorem"))?
        .parse()?;
    let loaded = map_from(config, inputs)?;
    let any = require_map(loaded)?;

    let cert = match space {
        AnySpace::Finite(s) => {
            pair_finite(&any, s)?;
            let mut opts: CertifyOptions<usize> = build_options(config, theorem, inputs)?;
            if config.x0.is_some() {
                opts.x0 = Some(parse_x0_finite(s, &config.x0)?);
            }
            match (&any, theorem.needs_family()) {
                (AnyMap::Tabulated(m), false) => certify(s, m, theorem, &opts)?,
                (AnyMap::TabulatedFamily(f), true) => certify_family(s, f, theorem, &opts)?,
                (AnyMap::Tabulated(_), true) => {
                    return Err(Error::MissingTheoremParam(theorem.as_str(), "a map family"))
                }
                _ => {
                    return Err(Error::InvalidMap(
                        "this theorem needs a single map, not a family".into(),
                    ))
                }
            }
        }
        AnySpace::Analytic(a) => {
            pair_analytic(&any, a)?;
            let mut opts: CertifyOptions<f64> = build_options(config, theorem, inputs)?;
            if config.x0.is_some() {
                opts.x0 = Some(parse_x0_analytic(a, &config.x0)?);
            }
            match (&any, theorem.needs_family()) {
                (AnyMap::Affine(m), false) => certify_generic(a, m, theorem, &opts)?,
                (AnyMap::AffineFamily(f), true) => certify_family(a, f, theorem, &opts)?,
                (AnyMap::Affine(_), true) => {
                    return Err(Error::MissingTheoremParam(theorem.as_str(), "a map family"))
                }
                _ => {
                    return Err(Error::InvalidMap(
                        "this theorem needs a single map, not a family".into(),
                    ))
                }
            }
        }
    };

    let status = status_of(cert.valid);
    Ok((status, certificate_json(&cert)))
}

fn run_solve(
    config: &RunConfig,
    space: &AnySpace,
    inputs: &mut serde_json::Map<String, Value>,
) -> Result<(Status, Value)> {
    let loaded = map_from(config, inputs)?;
    let any = require_map(loaded)?;
    let tol = GValue::new(config.tol)?;

    let (converged, result) = match space {
        AnySpace::Finite(s) => {
            pair_finite(&any, s)?;
            let x0 = parse_x0_finite(s, &config.x0)?;
            match &any {
                AnyMap::Tabulated(m) => {
                    let trace = picard(s, m, x0, tol, config.max_iter)?;
                    let labels = trace.points.iter().map(|p| s.point_label(p)).collect();
                    (trace.converged, json!({ "trace": trace_json(&trace, labels) }))
                }
                AnyMap::TabulatedFamily(f) => {
                    let run = common_fixed_point(s, f, x0, tol, config.max_iter)?;
                    let labels = run.trace.points.iter().map(|p| s.point_label(p)).collect();
                    (
                        run.trace.converged,
                        json!({
                            "trace": trace_json(&run.trace, labels),
                            "fixed_point": run.fixed_point.map(|p| s.point_label(&p)),
                            "per_map_residuals": run.residuals,
                        }),
                    )
                }
                _ => unreachable!("pair_finite filtered affine maps"),
            }
        }
        AnySpace::Analytic(a) => {
            pair_analytic(&any, a)?;
            let x0 = parse_x0_analytic(a, &config.x0)?;
            match &any {
                AnyMap::Affine(m) => {
                    let trace = picard(a, m, x0, tol, config.max_iter)?;
                    let labels = trace.points.iter().map(|p| a.point_label(p)).collect();
                    (trace.converged, json!({ "trace": trace_json(&trace, labels) }))
                }
                AnyMap::AffineFamily(f) => {
                    let run = common_fixed_point(a, f, x0, tol, config.max_iter)?;
                    let labels = run.trace.points.iter().map(|p| a.point_label(p)).collect();
                    (
                        run.trace.converged,
                        json!({
                            "trace": trace_json(&run.trace, labels),
                            "fixed_point": run.fixed_point,
                            "per_map_residuals": run.residuals,
                        }),
                    )
                }
                _ => unreachable!("pair_analytic filtered tabulated maps"),
            }
        }
    };
    let status = if converged {
        Status::Ok
    } else {
        Status::NoConvergence
    };
    Ok((status, result))
}

fn run_oracle(
    config: &RunConfig,
    space: &AnySpace,
    inputs: &mut serde_json::Map<String, Value>,
) -> Result<(Status, Value)> {
    let s = match space {
        AnySpace::Finite(s) => s,
        AnySpace::Analytic(_) => {
            return Err(Error::UnsupportedSpace {
                op: "oracle",
                why: "sampling cannot certify uniqueness on analytic spaces",
            })
        }
    };
    let loaded = map_from(config, inputs)?;
    let any = require_map(loaded)?;
    pair_finite(&any, s)?;
    let result = match &any {
        AnyMap::Tabulated(m) => brute_fixed_points(s, m)?,
        AnyMap::TabulatedFamily(f) => brute_common_fixed_points(s, f, config.horizon)?,
        _ => unreachable!("pair_finite filtered affine maps"),
    };
    Ok((Status::Ok, json!({ "oracle": result })))
}

fn merge(target: &mut Value, extra: Value) {
    if let (Value::Object(t), Value::Object(e)) = (target, extra) {
        for (k, v) in e {
            t.insert(k, v);
        }
    }
}
