//! Bodies of the subcommands.

use std::path::Path;

use nalgebra::DMatrix;
use serde_json::json;
use unital::algebra::{self, matrix_rows, AlgebraDef};
use unital::protonorm;
use unital::regularizer::{self, ExperimentSpec, LoadedProblem, Method, ProblemFile, Synthetic};
use unital::unorm::{self, PathPolicy, UnitalNormEvaluator};
use unital::Element;

use crate::args::{
    AlgebraCmd, AntiwedgeCmd, Cli, Command, Expectation, FunctorCmd, ProblemArgs, ProtonormCmd, RegCmd, ToeplitzCmd,
    UnormCmd,
};
use crate::output::{float_text, vector_text, Cell, Format, Table};
use crate::suite;

/// Failure modes that end a run before any verification verdict.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(std::io::Error),
    Compute(unital::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
            CliError::Compute(e) => write!(f, "error: {e}"),
        }
    }
}

impl From<unital::Error> for CliError {
    fn from(e: unital::Error) -> Self {
        CliError::Compute(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Rendered output plus the verification verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub body: String,
    pub passed: bool,
    /// Lines for the error stream when a check fails.
    pub notes: Vec<String>,
}

impl Outcome {
    fn table(t: &Table, format: Format) -> Self {
        Outcome { body: t.render(format), passed: true, notes: Vec::new() }
    }

    fn verdict(mut self, passed: bool, note: impl FnOnce() -> String) -> Self {
        if !passed {
            self.passed = false;
            self.notes.push(note());
        }
        self
    }
}

/// Catalog id, or a path to an algebra JSON file.
pub fn load_algebra(spec: &str) -> CliResult<AlgebraDef> {
    let path = Path::new(spec);
    if spec.ends_with(".json") || path.is_file() {
        let text = std::fs::read_to_string(path)?;
        return Ok(AlgebraDef::from_json(&text)?);
    }
    Ok(algebra::lookup(spec)?)
}

fn is_catalog(spec: &str) -> bool {
    !spec.ends_with(".json") && !Path::new(spec).is_file() && algebra::lookup(spec).is_ok()
}

fn parse_list(text: &str, what: &str) -> CliResult<Vec<f64>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| CliError::Usage(format!("{what}: `{t}` is not a number"))))
        .collect()
}

fn matrix_cells(t: &mut Table, prefix: &[Cell], m: &DMatrix<f64>) {
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let mut row = prefix.to_vec();
            row.extend([i.into(), j.into(), m[(i, j)].into()]);
            t.push(row);
        }
    }
}

pub fn execute(cli: &Cli) -> CliResult<Outcome> {
    let (seed, fmt) = (cli.seed, cli.format);
    match &cli.command {
        Command::Algebra(AlgebraCmd::List) => algebra_list(fmt),
        Command::Algebra(AlgebraCmd::Show(a)) => algebra_show(&a.algebra, fmt),
        Command::Protonorm(ProtonormCmd::Solve { algebra, samples }) => {
            protonorm_solve(&algebra.algebra, *samples, seed, fmt)
        }
        Command::Protonorm(ProtonormCmd::TransposeInduced(a)) => transpose_induced(&a.algebra, seed, cli.tol, fmt),
        Command::Unorm(UnormCmd::Eval { algebra, params, point, path }) => {
            unorm_eval(&algebra.algebra, params, point, path, seed, cli.tol, fmt)
        }
        Command::Unorm(UnormCmd::VerifyTable1 { rows, trials }) => verify_table1(rows, *trials, seed, cli.tol, fmt),
        Command::Toeplitz(ToeplitzCmd::Verify { trials, max_n }) => {
            toeplitz_verify(*trials, *max_n, seed, cli.tol, fmt)
        }
        Command::Functor(FunctorCmd::Check { algebra, ideal, target, expect }) => {
            functor_check(&algebra.algebra, ideal.as_deref(), target.as_deref(), *expect, seed, fmt)
        }
        Command::Functor(FunctorCmd::Examples) => functor_examples(seed, fmt),
        Command::Reg(RegCmd::Run { problem, method, k }) => reg_run(problem, method, *k, seed, fmt),
        Command::Reg(RegCmd::Converge { spectrum, x_true, n, delta }) => {
            reg_converge(spectrum, x_true, *n, delta, seed, fmt)
        }
        Command::Antiwedge(AntiwedgeCmd::Verify { trials, v }) => antiwedge_verify(*trials, *v, seed, cli.tol, fmt),
        Command::Suite => run_suite(seed, fmt),
    }
}

fn algebra_list(fmt: Format) -> CliResult<Outcome> {
    let mut t = Table::new(&["id", "dim", "table_row", "associative", "inverse_rule", "one_norm_sq", "description"]);
    for e in algebra::entries() {
        let a = algebra::lookup(&e.id)?;
        t.push(vec![
            e.id.clone().into(),
            a.dim().into(),
            e.table_row.map(|r| r as usize).into(),
            a.is_associative().into(),
            a.inverse_rule().to_string().into(),
            a.one_norm_sq().ok().into(),
            e.description.into(),
        ]);
    }
    Ok(Outcome::table(&t, fmt))
}

fn algebra_show(spec: &str, fmt: Format) -> CliResult<Outcome> {
    let a = load_algebra(spec)?;
    let mut t = Table::new(&["field", "value"]);
    t.push(vec!["name".into(), a.name().into()]);
    t.push(vec!["dim".into(), a.dim().to_string().into()]);
    t.push(vec!["associative".into(), a.is_associative().to_string().into()]);
    t.push(vec!["inverse_rule".into(), a.inverse_rule().to_string().into()]);
    t.push(vec!["one_norm_sq".into(), a.one_norm_sq().ok().map(float_text).into()]);
    t.push(vec!["unity".into(), vector_text(a.unity().as_slice()).into()]);
    t.push(vec!["matrix_rep".into(), a.matrix_rep().is_some().to_string().into()]);
    let d = a.dim();
    for i in 0..d {
        for j in 0..d {
            let prod = a.multiply(&algebra::basis(d, i), &algebra::basis(d, j))?;
            if prod.iter().any(|&c| c != 0.0) {
                t.push(vec![format!("e{i}*e{j}").into(), vector_text(prod.as_slice()).into()]);
            }
        }
    }
    Ok(Outcome::table(&t, fmt))
}

fn protonorm_solve(spec: &str, samples: Option<usize>, seed: u64, fmt: Format) -> CliResult<Outcome> {
    let a = load_algebra(spec)?;
    let d = a.dim();
    let family = protonorm::solve_family(&a, samples.unwrap_or(3 * d * d), seed)?;
    let normalized = protonorm::normalize_family(&family).ok();
    let point = normalized.as_ref().and_then(|f| f.normalized_point.clone());
    let directions = normalized.as_ref().map(|f| f.normalized_directions.clone()).unwrap_or_default();
    if fmt == Format::Json {
        let export = json!({
            "algebra": a.name(),
            "basis": family.basis.iter().map(matrix_rows).collect::<Vec<_>>(),
            "normalized_point": point.as_ref().map(matrix_rows),
            "normalized_directions": directions.iter().map(matrix_rows).collect::<Vec<_>>(),
        });
        let mut body = serde_json::to_string_pretty(&export).expect("json serializes");
        body.push('\n');
        return Ok(Outcome { body, passed: true, notes: Vec::new() });
    }
    let mut t = Table::new(&["algebra", "family_dim", "member", "i", "j", "value"]);
    let head = |member: String| -> Vec<Cell> { vec![a.name().into(), family.dim().into(), member.into()] };
    for (k, b) in family.basis.iter().enumerate() {
        matrix_cells(&mut t, &head(format!("basis{k}")), b);
    }
    if let Some(p) = &point {
        matrix_cells(&mut t, &head("normalized_point".into()), p);
    }
    for (k, dir) in directions.iter().enumerate() {
        matrix_cells(&mut t, &head(format!("normalized_direction{k}")), dir);
    }
    Ok(Outcome::table(&t, fmt))
}

fn transpose_induced(spec: &str, seed: u64, tol: Option<f64>, fmt: Format) -> CliResult<Outcome> {
    let a = load_algebra(spec)?;
    let tmat = protonorm::transpose_induced(&a)?;
    let d = a.dim();
    let family = protonorm::solve_family(&a, 3 * d * d, seed)?;
    let residual = family.span_residual(&tmat) / tmat.norm().max(1.0);
    let mut t = Table::new(&["algebra", "i", "j", "value"]);
    matrix_cells(&mut t, &[a.name().into()], &tmat);
    let tol = tol.unwrap_or(1e-8);
    Ok(Outcome::table(&t, fmt)
        .verdict(residual < tol, || format!("transpose-induced map leaves the family span (residual {residual:.3e})")))
}

fn unorm_eval(
    spec: &str,
    params: &str,
    point: &str,
    path: &str,
    seed: u64,
    tol: Option<f64>,
    fmt: Format,
) -> CliResult<Outcome> {
    let a = load_algebra(spec)?;
    let params = parse_list(params, "--params")?;
    let s = Element::from_vec(parse_list(point, "--point")?);
    let policy: PathPolicy = path.parse()?;
    let catalog = is_catalog(spec);
    let l = if catalog {
        unorm::table_protonorm(spec, &params)?
    } else {
        let fam = protonorm::normalize_family(&protonorm::solve_family(&a, 3 * a.dim() * a.dim(), seed)?)?;
        fam.normalized_point.expect("normalized family carries a point")
    };
    let numeric = UnitalNormEvaluator::new(&a, l)?.with_path_policy(policy).evaluate(&s)?;
    let exact = if catalog {
        match unorm::closed_form(spec, &params, &s) {
            Ok(v) => Some(v),
            Err(unital::Error::OutOfDomain(_)) => None,
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };
    let rel = exact.map(|e| (numeric - e).abs() / e.abs());
    let mut t = Table::new(&["algebra", "params", "point", "numeric", "closed_form", "rel_err"]);
    t.push(vec![
        a.name().into(),
        vector_text(&params).into(),
        vector_text(s.as_slice()).into(),
        numeric.into(),
        exact.into(),
        rel.into(),
    ]);
    let tol = tol.unwrap_or(suite::CLOSED_FORM_REL_TOL);
    let ok = rel.map_or(true, |r| r < tol);
    Ok(Outcome::table(&t, fmt)
        .verdict(ok, || format!("relative error {:.3e} exceeds {tol:e}", rel.unwrap_or(f64::NAN))))
}

fn verify_table1(rows: &str, trials: usize, seed: u64, tol: Option<f64>, fmt: Format) -> CliResult<Outcome> {
    let ids: Vec<String> = if rows.trim() == "all" {
        suite::table1_ids()
    } else {
        rows.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
    };
    for id in &ids {
        unorm::param_count(id)?;
    }
    let tol = tol.unwrap_or(suite::CLOSED_FORM_REL_TOL);
    let mut t = Table::new(&["algebra", "trials", "max_rel_err", "max_inverse_product", "max_homogeneity", "passed"]);
    let mut notes = Vec::new();
    for id in &ids {
        match suite::table1_row(id, trials, seed) {
            Ok(r) => {
                let ok = r.max_rel_err < tol
                    && r.max_inverse_product < suite::INVERSE_PRODUCT_TOL
                    && r.max_homogeneity < suite::HOMOGENEITY_TOL;
                if !ok {
                    notes.push(format!("{id}: max relative error {:.3e}", r.max_rel_err));
                }
                t.push(vec![
                    id.clone().into(),
                    trials.into(),
                    r.max_rel_err.into(),
                    r.max_inverse_product.into(),
                    r.max_homogeneity.into(),
                    ok.into(),
                ]);
            }
            Err(e) => {
                notes.push(format!("{id}: {e}"));
                t.push(vec![id.clone().into(), trials.into(), Cell::Null, Cell::Null, Cell::Null, false.into()]);
            }
        }
    }
    Ok(Outcome { body: t.render(fmt), passed: notes.is_empty(), notes })
}

fn toeplitz_verify(trials: usize, max_n: usize, seed: u64, tol: Option<f64>, fmt: Format) -> CliResult<Outcome> {
    if max_n < 2 {
        return Err(CliError::Usage("--max-n must be at least 2".into()));
    }
    let tol = tol.unwrap_or(suite::LOG_SERIES_REL_TOL);
    let mut t = Table::new(&["n", "trials", "max_series_rel_err", "max_inverse_abs_err", "passed"]);
    let mut notes = Vec::new();
    for n in 2..=max_n {
        let r = suite::toeplitz_row(n, trials, seed)?;
        let ok = r.max_series_rel_err < tol && r.max_inverse_abs_err < suite::TOEPLITZ_INVERSE_TOL;
        if !ok {
            notes.push(format!("uT{n}: series {:.3e}, inverse {:.3e}", r.max_series_rel_err, r.max_inverse_abs_err));
        }
        t.push(vec![n.into(), trials.into(), r.max_series_rel_err.into(), r.max_inverse_abs_err.into(), ok.into()]);
    }
    Ok(Outcome { body: t.render(fmt), passed: notes.is_empty(), notes })
}

fn functor_check(
    spec: &str,
    ideal: Option<&Path>,
    target: Option<&str>,
    expect: Option<Expectation>,
    seed: u64,
    fmt: Format,
) -> CliResult<Outcome> {
    let source = load_algebra(spec)?;
    let target_alg = target.map(load_algebra).transpose()?;
    let (verdict, ideal_dim) = match ideal {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            let vectors: Vec<Vec<f64>> = serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("{}: expected a JSON list of vectors ({e})", path.display())))?;
            let vectors: Vec<Element> = vectors.into_iter().map(Element::from_vec).collect();
            let verdict = match &target_alg {
                Some(t) => suite::quotient_verdict(&source, &vectors, t, seed)?,
                None => {
                    let q = unital::functor::quotient_algebra(&unital::functor::IdealSpec::new(&source, &vectors)?)?;
                    suite::map_verdict(&source, &q.algebra, &q.k, true, seed)?
                }
            };
            (verdict, Some(vectors.len()))
        }
        None => {
            let t = target_alg.ok_or_else(|| CliError::Usage("functor check needs --ideal or --target".into()))?;
            (suite::exclusion_verdict(&source, &t, seed)?, None)
        }
    };
    let mut t = Table::new(&["source", "target", "ideal_dim", "exists", "excluded", "homomorphism_defect", "residual"]);
    t.push(vec![
        verdict.source.clone().into(),
        verdict.target.clone().into(),
        ideal_dim.into(),
        verdict.exists.into(),
        verdict.excluded.into(),
        verdict.homomorphism_defect.into(),
        verdict.residual.into(),
    ]);
    let ok = match expect {
        None => true,
        Some(Expectation::Exists) => verdict.exists,
        Some(Expectation::Excluded) => verdict.excluded,
    };
    Ok(Outcome::table(&t, fmt)
        .verdict(ok, || format!("verdict for {} -> {} differs from --expect", verdict.source, verdict.target)))
}

fn functor_examples(seed: u64, fmt: Format) -> CliResult<Outcome> {
    let mut t = Table::new(&["case", "expected", "exists", "excluded", "correct"]);
    let mut notes = Vec::new();
    for (case, v) in suite::functor_verdicts(seed) {
        match v {
            Ok(v) => {
                if !v.correct() {
                    notes.push(format!("{case}: wrong verdict"));
                }
                let expected = if v.expect_exists { "exists" } else { "excluded" };
                t.push(vec![case.into(), expected.into(), v.exists.into(), v.excluded.into(), v.correct().into()]);
            }
            Err(e) => {
                notes.push(format!("{case}: {e}"));
                t.push(vec![case.into(), Cell::Null, Cell::Null, Cell::Null, false.into()]);
            }
        }
    }
    Ok(Outcome { body: t.render(fmt), passed: notes.is_empty(), notes })
}

fn load_problem(a: &ProblemArgs, seed: u64) -> CliResult<LoadedProblem> {
    if a.problem == "none" {
        let delta = a.delta.ok_or_else(|| CliError::Usage("synthetic problems need --delta".into()))?;
        let spec = ExperimentSpec {
            n: a.n,
            spectrum: a.spectrum.parse()?,
            x_true: a.x_true.parse()?,
            deltas: vec![delta],
            seed,
            ..ExperimentSpec::default()
        };
        let syn = Synthetic::build(&spec)?;
        return Ok(LoadedProblem { problem: syn.at(delta, a.epsilon.unwrap_or(delta))?, x_true: Some(syn.x_true) });
    }
    let text = std::fs::read_to_string(&a.problem)?;
    let mut file = ProblemFile::from_json(&text)?;
    if let Some(d) = a.delta {
        file.delta = d;
    }
    if a.epsilon.is_some() {
        file.epsilon = a.epsilon;
    }
    if file.seed.is_none() {
        file.seed = Some(seed);
    }
    Ok(file.load()?)
}

fn reg_table() -> Table {
    Table::new(&["method", "delta", "epsilon", "gamma", "retained_count", "discrepancy", "error"])
}

fn reg_run(args: &ProblemArgs, method: &str, k: Option<usize>, seed: u64, fmt: Format) -> CliResult<Outcome> {
    let method: Method = method.parse()?;
    let loaded = load_problem(args, seed)?;
    let p = &loaded.problem;
    let sol = match method {
        Method::Tikhonov => regularizer::tikhonov_discrepancy(p)?,
        Method::Tsvd => k.map_or_else(|| regularizer::tsvd_discrepancy(p), |k| regularizer::tsvd(p, k)),
        Method::Geomfp => regularizer::geometric_fixed_point(p),
    };
    let gamma = (method == Method::Tikhonov).then_some(sol.gamma_or_epsilon);
    let error = loaded.x_true.as_ref().map(|x| (x - &sol.x).norm());
    let mut t = reg_table();
    t.push(vec![
        method.to_string().into(),
        p.delta().into(),
        p.epsilon().into(),
        gamma.into(),
        sol.retained_indices.len().into(),
        sol.discrepancy.into(),
        error.into(),
    ]);
    Ok(Outcome::table(&t, fmt))
}

fn reg_converge(spectrum: &str, x_true: &str, n: usize, deltas: &[f64], seed: u64, fmt: Format) -> CliResult<Outcome> {
    let spec = ExperimentSpec {
        n,
        spectrum: spectrum.parse()?,
        x_true: x_true.parse()?,
        deltas: deltas.to_vec(),
        seed,
        ..ExperimentSpec::default()
    };
    let rows = regularizer::convergence_experiment(&spec)?;
    let mut t = reg_table();
    for r in &rows {
        t.push(vec![
            Method::Geomfp.to_string().into(),
            r.delta.into(),
            r.epsilon.into(),
            Cell::Null,
            r.retained_count.into(),
            r.discrepancy.into(),
            r.error.into(),
        ]);
    }
    let decreasing = rows.windows(2).all(|w| w[1].error < w[0].error);
    let reduction = match (rows.first(), rows.last()) {
        (Some(f), Some(l)) if rows.len() > 1 => f.error / l.error,
        _ => f64::INFINITY,
    };
    Ok(Outcome::table(&t, fmt)
        .verdict(decreasing, || "error column is not strictly decreasing".into())
        .verdict(reduction >= suite::ERROR_REDUCTION, || format!("error shrank only by a factor {reduction:.3}")))
}

fn antiwedge_verify(trials: usize, v: Option<f64>, seed: u64, tol: Option<f64>, fmt: Format) -> CliResult<Outcome> {
    let s = suite::antiwedge_trials(trials, seed, v)?;
    let tol = tol.unwrap_or(suite::ANTIWEDGE_TOL);
    let mut t = Table::new(&[
        "trials",
        "v",
        "parallel",
        "parallel_boost",
        "identity",
        "identity_boost",
        "identity_reflection",
        "pluecker",
        "passed",
    ]);
    let ok = s.max() < tol;
    t.push(vec![
        trials.into(),
        v.into(),
        s.parallel.into(),
        s.parallel_boost.into(),
        s.identity.into(),
        s.identity_boost.into(),
        s.identity_reflection.into(),
        s.pluecker.into(),
        ok.into(),
    ]);
    Ok(Outcome::table(&t, fmt).verdict(ok, || format!("largest residual {:.3e} exceeds {tol:e}", s.max())))
}

fn run_suite(seed: u64, fmt: Format) -> CliResult<Outcome> {
    let reports = suite::run_all(seed);
    let mut notes: Vec<String> = reports.iter().map(suite::CriterionReport::summary_line).collect();
    for r in &reports {
        for c in r.failures() {
            notes.push(format!("  criterion {}: {} = {} (needs {} {})", r.id, c.name, c.value, c.relation, c.bound));
        }
    }
    let passed = reports.iter().all(suite::CriterionReport::passed);
    Ok(Outcome { body: suite::report_table(&reports).render(fmt), passed, notes })
}
