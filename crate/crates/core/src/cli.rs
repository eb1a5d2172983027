//! Command-line front end: argument and config-file parsing, dispatch and
//! output.
//!
//! Every subcommand declares a parameter schema. Values come from `--key`
//! flags, then from the `--config` file (`key = value` lines, `#` comments),
//! then from schema defaults. Required keys are checked before any
//! computation starts.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use clap::{Arg, ArgAction, ArgMatches, Command};

use crate::characters::{make_tuple, primitive_inducing, CharacterGroup, CharacterSpec, CharacterTuple};
use crate::error::{Error, Result};
use crate::factors::{factor_report, find_alpha, search_negative_xi, xi_j_factors, Weights};
use crate::model::{afiq_compare, mc_joint_tail, mgf_product, sample_model, RandomModelConfig};
use crate::record::{write_csv, write_records, Record, Table, Value};
use crate::scan::{empirical_psi, find_simultaneous_max, scan, ScanConfig, DEFAULT_RENORM};
use crate::special::g_sigma_with_tolerance;
use crate::tail::predict_log_psi;
use crate::verify::run_suite;
use crate::VERSION;

/// Environment variable holding the default worker count.
pub const THREADS_ENV: &str = "DJOINT_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Real,
    /// Non-negative integer.
    Int,
    /// Positive integer.
    Count,
    Flag,
    Reals,
    Chars,
    /// `;`-separated vectors of `,`-separated reals.
    Vectors,
    Text,
}

struct Param {
    key: &'static str,
    kind: Kind,
    required: bool,
    default: Option<&'static str>,
    help: &'static str,
}

const fn p(key: &'static str, kind: Kind, help: &'static str) -> Param {
    Param { key, kind, required: false, default: None, help }
}

const fn req(key: &'static str, kind: Kind, help: &'static str) -> Param {
    Param { key, kind, required: true, default: None, help }
}

const fn def(key: &'static str, kind: Kind, default: &'static str, help: &'static str) -> Param {
    Param { key, kind, required: false, default: Some(default), help }
}

const TUPLE: [Param; 2] = [
    req("chars", Kind::Chars, "characters as modulus:label, comma separated (e.g. 5:1,5:2)"),
    p("thetas", Kind::Reals, "twist angles, one per character (default 0)"),
];

struct CommandSpec {
    name: &'static str,
    about: &'static str,
    params: Vec<Param>,
}

fn commands() -> Vec<CommandSpec> {
    let tuple = || TUPLE.iter().map(|q| Param { ..*q }).collect::<Vec<_>>();
    let with = |mut a: Vec<Param>, b: Vec<Param>| {
        a.extend(b);
        a
    };
    vec![
        CommandSpec {
            name: "gsigma",
            about: "Bessel-integral constants G(sigma) and A(sigma)",
            params: vec![
                req("sigma", Kind::Reals, "one or more sigma values"),
                def("tol", Kind::Real, "1e-10", "absolute quadrature tolerance"),
            ],
        },
        CommandSpec {
            name: "characters",
            about: "enumerate the Dirichlet characters of a modulus",
            params: vec![req("modulus", Kind::Count, "modulus q")],
        },
        CommandSpec {
            name: "factors",
            about: "arithmetic factors of a character tuple",
            params: with(
                tuple(),
                vec![
                    req("sigma", Kind::Real, "real part sigma in [1/2, 1)"),
                    p("alpha", Kind::Reals, "weights (default all 1)"),
                    p("find-alpha", Kind::Flag, "use weights (a, 1, ..., 1) from the doubling search"),
                ],
            ),
        },
        CommandSpec {
            name: "search",
            about: "exhaustive search for tuples with a negative Xi_j",
            params: vec![
                req("modulus", Kind::Count, "modulus q"),
                req("r", Kind::Count, "tuple size"),
                req("sigma", Kind::Reals, "sigma grid"),
                p("thetas", Kind::Reals, "fixed angles (default 0)"),
            ],
        },
        CommandSpec {
            name: "predict",
            about: "saddle point and tail prediction",
            params: with(
                tuple(),
                vec![
                    req("sigma", Kind::Real, "sigma"),
                    req("v", Kind::Real, "common scale V >= 3"),
                    p("alpha", Kind::Reals, "weights (default all 1)"),
                    p("t", Kind::Real, "height T, enables the range warning"),
                ],
            ),
        },
        CommandSpec {
            name: "mc",
            about: "sample the random Euler-product model",
            params: with(
                tuple(),
                vec![
                    req("sigma", Kind::Real, "sigma"),
                    req("cutoff", Kind::Count, "prime cutoff X"),
                    req("samples", Kind::Count, "number of samples N"),
                    p("thresholds", Kind::Vectors, "threshold vectors for joint tails, e.g. 0.5,0.5;1,1"),
                    p("x", Kind::Reals, "point for the moment generating function check"),
                ],
            ),
        },
        CommandSpec {
            name: "scan",
            about: "evaluate the Dirichlet polynomial vector on a t-grid",
            params: with(
                tuple(),
                vec![
                    req("sigma", Kind::Real, "sigma"),
                    req("t-start", Kind::Real, "T >= 5"),
                    p("t-end", Kind::Real, "end of the range (default 2T)"),
                    def("step", Kind::Real, "0.05", "grid spacing"),
                    p("cutoff", Kind::Count, "prime cutoff X (default (log T)^2)"),
                    p("squares", Kind::Flag, "include prime-square terms"),
                    def("renorm", Kind::Count, "4096", "rotor rebuild interval"),
                    def("decimation", Kind::Int, "0", "store every k-th point for --output (0: none)"),
                    p("thresholds", Kind::Vectors, "threshold vectors, e.g. 0.5,0.5;1,1"),
                    p("v", Kind::Reals, "scales V; adds thresholds Xi_j * V at unit weights"),
                ],
            ),
        },
        CommandSpec {
            name: "verify",
            about: "run an invariant suite",
            params: vec![req("suite", Kind::Text, "characters, special, factors, tail, model, scan or all")],
        },
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Record,
    Csv,
}

/// A fully resolved invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub command: String,
    /// Resolved parameters in schema order, as text.
    pub parameters: Vec<(String, String)>,
    pub seed: Option<u64>,
    pub output_path: Option<PathBuf>,
    pub format: Format,
    pub threads: Option<usize>,
}

impl ExperimentSpec {
    pub fn get(&self, key: &str) -> Option<&str> {
        self.parameters.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    fn real(&self, key: &str) -> Result<Option<f64>> {
        self.get(key).map(|v| parse_real(key, v)).transpose()
    }

    fn must_real(&self, key: &str) -> Result<f64> {
        self.real(key)?.ok_or_else(|| missing(key))
    }

    fn int(&self, key: &str) -> Result<Option<u64>> {
        self.get(key).map(|v| parse_int(key, v)).transpose()
    }

    fn must_int(&self, key: &str) -> Result<u64> {
        self.int(key)?.ok_or_else(|| missing(key))
    }

    fn reals(&self, key: &str) -> Result<Option<Vec<f64>>> {
        self.get(key).map(|v| parse_reals(key, v)).transpose()
    }

    fn vectors(&self, key: &str) -> Result<Vec<Vec<f64>>> {
        self.get(key).map_or(Ok(Vec::new()), |v| parse_vectors(key, v))
    }

    fn flag(&self, key: &str) -> bool {
        self.get(key) == Some("true")
    }
}

fn missing(key: &str) -> Error {
    Error::Usage(format!("missing required parameter --{key}"))
}

fn parse_real(key: &str, v: &str) -> Result<f64> {
    v.trim().parse().map_err(|_| Error::Usage(format!("--{key}: expected a number, got {v:?}")))
}

fn parse_int(key: &str, v: &str) -> Result<u64> {
    let t = v.trim();
    // accept integral scientific notation such as 1e6
    t.parse::<u64>()
        .ok()
        .or_else(|| t.parse::<f64>().ok().filter(|x| x.fract() == 0.0 && *x >= 0.0 && *x < 1.8e19).map(|x| x as u64))
        .ok_or_else(|| Error::Usage(format!("--{key}: expected a non-negative integer, got {v:?}")))
}

fn parse_reals(key: &str, v: &str) -> Result<Vec<f64>> {
    v.split(',').filter(|s| !s.trim().is_empty()).map(|s| parse_real(key, s)).collect()
}

fn parse_vectors(key: &str, v: &str) -> Result<Vec<Vec<f64>>> {
    v.split(';').filter(|s| !s.trim().is_empty()).map(|s| parse_reals(key, s)).collect()
}

fn parse_chars(key: &str, v: &str) -> Result<Vec<CharacterSpec>> {
    v.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| CharacterSpec::from_str(s.trim()).map_err(|e| Error::Usage(format!("--{key}: {e}"))))
        .collect()
}

fn check_kind(param: &Param, v: &str) -> Result<()> {
    match param.kind {
        Kind::Real => parse_real(param.key, v).map(drop),
        Kind::Int => parse_int(param.key, v).map(drop),
        Kind::Count => match parse_int(param.key, v)? {
            0 => Err(Error::Usage(format!("--{} must be at least 1", param.key))),
            _ => Ok(()),
        },
        Kind::Flag => match v {
            "true" | "false" => Ok(()),
            _ => Err(Error::Usage(format!("--{}: expected true or false, got {v:?}", param.key))),
        },
        Kind::Reals => parse_reals(param.key, v).map(drop),
        Kind::Vectors => parse_vectors(param.key, v).map(drop),
        Kind::Chars => parse_chars(param.key, v).map(drop),
        Kind::Text => Ok(()),
    }
}

fn build_cli(specs: &[CommandSpec]) -> Command {
    let mut cmd = Command::new("djoint")
        .version(VERSION)
        .about("Joint value distribution of Dirichlet L-functions")
        .subcommand_required(true)
        .arg(Arg::new("config").long("config").global(true).value_name("PATH").help("key = value parameter file"))
        .arg(Arg::new("seed").long("seed").global(true).value_name("U64").help("seed for all randomness"))
        .arg(Arg::new("output").long("output").global(true).value_name("PATH").help("bulk CSV output"))
        .arg(
            Arg::new("format")
                .long("format")
                .global(true)
                .value_parser(["record", "csv"])
                .help("stdout format (default record)"),
        )
        .arg(Arg::new("threads").long("threads").global(true).value_name("N").help("worker thread cap"));
    for spec in specs {
        let mut sub = Command::new(spec.name).about(spec.about);
        for param in &spec.params {
            let mut arg = Arg::new(param.key).long(param.key).help(param.help);
            arg = match param.kind {
                Kind::Flag => arg.action(ArgAction::SetTrue),
                _ => arg.value_name("VALUE").allow_hyphen_values(true),
            };
            sub = sub.arg(arg);
        }
        cmd = cmd.subcommand(sub);
    }
    cmd
}

fn read_config(path: &str) -> Result<Vec<(String, String)>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Usage(format!("cannot read config {path}: {e}")))?;
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) =
            line.split_once('=').ok_or_else(|| Error::Usage(format!("{path}:{}: expected key = value", n + 1)))?;
        let v = v.trim().trim_matches('"');
        out.push((k.trim().replace('_', "-"), v.to_string()));
    }
    Ok(out)
}

const GLOBAL_KEYS: [&str; 4] = ["seed", "output", "format", "threads"];

/// Parses `argv` (including the program name) into a validated spec.
pub fn parse_cli<I, S>(argv: I) -> Result<ExperimentSpec>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let matches = build_cli(&commands()).try_get_matches_from(argv).map_err(|e| Error::Usage(e.to_string()))?;
    from_matches(&matches)
}

fn from_matches(matches: &ArgMatches) -> Result<ExperimentSpec> {
    let specs = commands();
    let (name, sub) = matches.subcommand().expect("subcommand required");
    let spec = specs.iter().find(|s| s.name == name).expect("known subcommand");

    let config = match sub.get_one::<String>("config") {
        Some(path) => read_config(path)?,
        None => Vec::new(),
    };
    for (k, _) in &config {
        if !spec.params.iter().any(|p| p.key == k) && !GLOBAL_KEYS.contains(&k.as_str()) {
            return Err(Error::Usage(format!("unknown key {k:?} in config for {name}")));
        }
    }
    let from_config = |key: &str| config.iter().rev().find(|(k, _)| k == key).map(|(_, v)| v.clone());
    let global = |key: &str| sub.get_one::<String>(key).cloned().or_else(|| from_config(key));

    let mut parameters = Vec::new();
    let mut missing_keys = Vec::new();
    for param in &spec.params {
        let value = flag_value(sub, param).or_else(|| from_config(param.key)).or(param.default.map(String::from));
        match value {
            Some(v) => {
                check_kind(param, &v)?;
                parameters.push((param.key.to_string(), v));
            }
            None if param.required => missing_keys.push(format!("--{}", param.key)),
            None => {}
        }
    }
    if !missing_keys.is_empty() {
        return Err(Error::Usage(format!("{name}: missing required parameters: {}", missing_keys.join(", "))));
    }

    let seed = global("seed").map(|v| parse_int("seed", &v)).transpose()?;
    let threads = match global("threads") {
        Some(v) => Some(parse_int("threads", &v)? as usize),
        None => std::env::var(THREADS_ENV).ok().map(|v| parse_int(THREADS_ENV, &v).map(|n| n as usize)).transpose()?,
    };
    if threads == Some(0) {
        return Err(Error::Usage("--threads must be at least 1".into()));
    }
    let format = match global("format").as_deref() {
        None | Some("record") => Format::Record,
        Some("csv") => Format::Csv,
        Some(other) => return Err(Error::Usage(format!("--format: expected record or csv, got {other:?}"))),
    };
    Ok(ExperimentSpec {
        command: name.to_string(),
        parameters,
        seed,
        output_path: global("output").map(PathBuf::from),
        format,
        threads,
    })
}

fn flag_value(sub: &ArgMatches, param: &Param) -> Option<String> {
    match param.kind {
        Kind::Flag => sub.get_flag(param.key).then(|| "true".to_string()),
        _ => sub.get_one::<String>(param.key).cloned(),
    }
}

/// Result of one command before printing.
#[derive(Debug, Default)]
pub struct Output {
    pub summary: Record,
    pub items: Vec<Record>,
    pub table: Option<Table>,
}

fn tuple_from(spec: &ExperimentSpec) -> Result<CharacterTuple> {
    let chars = parse_chars("chars", spec.get("chars").ok_or_else(|| missing("chars"))?)?;
    let resolved = chars.iter().map(CharacterSpec::resolve).collect::<Result<Vec<_>>>()?;
    let r = resolved.len();
    let thetas = spec.reals("thetas")?.unwrap_or_else(|| vec![0.0; r]);
    make_tuple(resolved, thetas, true)
}

fn weights_from(spec: &ExperimentSpec, r: usize) -> Result<Weights> {
    match spec.reals("alpha")? {
        Some(a) if a.len() != r => Err(Error::Usage(format!("--alpha has {} entries for {r} characters", a.len()))),
        Some(a) => Weights::new(a),
        None => Ok(Weights::ones(r)),
    }
}

fn specs_value(t: &CharacterTuple) -> Value {
    Value::List(t.specs().iter().map(|s| Value::Str(s.to_string())).collect())
}

fn run_gsigma(spec: &ExperimentSpec) -> Result<Output> {
    let tol = spec.must_real("tol")?;
    let mut out = Output::default();
    for s in spec.reals("sigma")?.unwrap_or_default() {
        let c = g_sigma_with_tolerance(s, tol)?;
        out.items.push(
            Record::new()
                .with("sigma", c.sigma)
                .with("g", c.g_value)
                .with("a", c.a_value)
                .with("quadrature_error_estimate", c.quadrature_error_estimate),
        );
    }
    Ok(out)
}

fn run_characters(spec: &ExperimentSpec) -> Result<Output> {
    let group = CharacterGroup::new(spec.must_int("modulus")?)?;
    let mut out = Output::default();
    out.summary.push("order", group.order());
    out.summary.push("exponent", group.exponent());
    out.summary.push("generators", group.lifted_generators());
    for chi in group.characters() {
        let prim = primitive_inducing(&chi);
        out.items.push(
            Record::new()
                .with("character", CharacterSpec::from(&chi).to_string())
                .with("conductor", chi.conductor())
                .with("primitive", chi.is_primitive())
                .with("order", chi.order())
                .with("inducing", CharacterSpec::from(&prim).to_string()),
        );
    }
    Ok(out)
}

fn run_factors(spec: &ExperimentSpec) -> Result<Output> {
    let tuple = tuple_from(spec)?;
    let sigma = spec.must_real("sigma")?;
    let weights = if spec.flag("find-alpha") { find_alpha(&tuple, sigma)? } else { weights_from(spec, tuple.r())? };
    let rep = factor_report(&tuple, sigma, &weights)?;
    let mut out = Output::default();
    out.summary
        .with_fields(&[("characters", specs_value(&tuple))])
        .push("alpha", weights.alphas())
        .push("xi", rep.xi)
        .push("xi_j", rep.xi_js.as_slice())
        .push("tilde_xi", rep.tilde_xi)
        .push("b_factor", rep.b_factor)
        .push("gap", rep.gap)
        .push("star_excluded_count", rep.star_excluded_count);
    Ok(out)
}

fn run_search(spec: &ExperimentSpec) -> Result<Output> {
    let q = spec.must_int("modulus")?;
    let r = spec.must_int("r")? as usize;
    let grid = spec.reals("sigma")?.unwrap_or_default();
    let thetas = spec.reals("thetas")?;
    let hits = search_negative_xi(q, r, &grid, thetas.as_deref())?;
    let mut out = Output::default();
    out.summary.push("hits", hits.len());
    for h in hits {
        out.items.push(
            Record::new()
                .with("subset_index", h.subset_index)
                .with("characters", Value::List(h.characters.iter().map(|c| Value::Str(c.to_string())).collect()))
                .with("sigma", h.sigma)
                .with("min_xi_j", h.min_xi_j)
                .with("argmin_j", h.argmin + 1),
        );
    }
    Ok(out)
}

fn run_predict(spec: &ExperimentSpec) -> Result<Output> {
    let tuple = tuple_from(spec)?;
    let weights = weights_from(spec, tuple.r())?;
    let p = predict_log_psi(&tuple, spec.must_real("sigma")?, &weights, spec.must_real("v")?, spec.real("t")?)?;
    let mut out = Output::default();
    out.summary
        .with_fields(&[("characters", specs_value(&tuple))])
        .push("xi", p.xi)
        .push("y", p.y)
        .push("x", p.x.as_slice())
        .push("thresholds", p.thresholds.as_slice())
        .push("log_psi_leading", p.log_psi_leading)
        .push("log_psi_saddle", p.log_psi_saddle)
        .push("warning", p.warning);
    Ok(out)
}

fn run_mc(spec: &ExperimentSpec) -> Result<Output> {
    let tuple = tuple_from(spec)?;
    let sigma = spec.must_real("sigma")?;
    let cutoff = spec.must_int("cutoff")?;
    let config = RandomModelConfig {
        tuple: tuple.clone(),
        sigma,
        prime_cutoff: cutoff,
        samples: spec.must_int("samples")? as usize,
        seed: spec.seed.unwrap_or(0),
    };
    let dist = sample_model(&config)?;
    let mut out = Output::default();
    out.summary.push("characters", specs_value(&tuple));
    let means: Vec<f64> =
        (0..dist.dim).map(|j| crate::numeric::compensated_sum(dist.column(j)) / dist.len() as f64).collect();
    out.summary.push("means", means);
    if let Some(x) = spec.reals("x")? {
        let est = dist.mgf_estimate(&x);
        out.summary.push("mgf_mc", est.mean).push("mgf_mc_stderr", est.stderr);
        out.summary.push("mgf_exact", mgf_product(&tuple, sigma, &x, cutoff)?.exp());
        if cutoff >= 30 {
            if let Ok(c) = afiq_compare(&tuple, sigma, &x, cutoff) {
                out.summary.push("afiq_rel_error", c.rel_error);
            }
        }
    }
    for th in spec.vectors("thresholds")? {
        let e = mc_joint_tail(&dist, &th)?;
        out.items.push(
            Record::new().with("thresholds", th).with("p_hat", e.p_hat).with("stderr", e.stderr).with("count", e.count),
        );
    }
    if spec.output_path.is_some() {
        out.table = Some(Table {
            header: (1..=dist.dim).map(|j| format!("s{j}")).collect(),
            rows: dist.rows().map(<[f64]>::to_vec).collect(),
        });
    }
    Ok(out)
}

fn run_scan(spec: &ExperimentSpec) -> Result<Output> {
    let tuple = tuple_from(spec)?;
    let sigma = spec.must_real("sigma")?;
    let mut config = ScanConfig::new(tuple.clone(), sigma, spec.must_real("t-start")?, spec.must_real("step")?);
    config.t_end = spec.real("t-end")?;
    if let Some(x) = spec.int("cutoff")? {
        config.prime_cutoff = x;
    }
    config.include_prime_squares = spec.flag("squares");
    config.renorm_interval = spec.int("renorm")?.unwrap_or(DEFAULT_RENORM as u64) as usize;
    config.decimation = if spec.output_path.is_some() { spec.int("decimation")?.unwrap_or(0) } else { 0 };
    let mut thresholds = spec.vectors("thresholds")?;
    if let Some(vs) = spec.reals("v")? {
        let f = xi_j_factors(&tuple, sigma.clamp(0.5, 0.999_999), &Weights::ones(tuple.r()))?.values;
        thresholds.extend(vs.iter().map(|v| f.iter().map(|x| x * v).collect::<Vec<f64>>()));
    }
    let res = scan(&config, &thresholds)?;
    let best = find_simultaneous_max(&res);
    let mut out = Output::default();
    out.summary
        .with_fields(&[("characters", specs_value(&tuple))])
        .push("prime_cutoff", config.prime_cutoff)
        .push("grid_count", res.grid_count)
        .push("means", res.means.as_slice())
        .push("max_min", best.value)
        .push("t_star", best.t_star)
        .push("normalized", best.normalized);
    for th in &res.thresholds {
        let e = empirical_psi(&res, th)?;
        out.items.push(
            Record::new()
                .with("thresholds", th.as_slice())
                .with("fraction", e.fraction)
                .with("count", e.count)
                .with("stderr_proxy", e.stderr_proxy)
                .with("stderr_batch", e.stderr_batch)
                .with("correlated_grid", e.correlated),
        );
    }
    if config.decimation > 0 {
        let mut header = vec!["t".to_string()];
        header.extend((1..=res.dim).map(|j| format!("s{j}")));
        let rows = res
            .stored_indices
            .iter()
            .enumerate()
            .map(|(i, &k)| {
                let mut row = vec![res.t_at(k)];
                row.extend_from_slice(res.stored_row(i));
                row
            })
            .collect();
        out.table = Some(Table { header, rows });
    }
    Ok(out)
}

fn run_verify(spec: &ExperimentSpec) -> Result<Output> {
    let checks = run_suite(spec.get("suite").unwrap_or("all"))?;
    let failed = checks.iter().filter(|c| !c.passed).count();
    let mut out = Output::default();
    out.summary.push("checks", checks.len()).push("failed", failed);
    for c in checks {
        out.items.push(
            Record::new()
                .with("suite", c.suite)
                .with("check", c.name)
                .with("passed", c.passed)
                .with("detail", c.detail),
        );
    }
    Ok(out)
}

impl Record {
    fn with_fields(&mut self, fields: &[(&str, Value)]) -> &mut Self {
        for (k, v) in fields {
            self.push(*k, v.clone());
        }
        self
    }
}

fn dispatch(spec: &ExperimentSpec) -> Result<Output> {
    match spec.command.as_str() {
        "gsigma" => run_gsigma(spec),
        "characters" => run_characters(spec),
        "factors" => run_factors(spec),
        "search" => run_search(spec),
        "predict" => run_predict(spec),
        "mc" => run_mc(spec),
        "scan" => run_scan(spec),
        "verify" => run_verify(spec),
        other => Err(Error::Usage(format!("unknown command {other:?}"))),
    }
}

/// Runs a parsed spec, printing to `stdout`; returns the exit code.
pub fn run<W: Write>(spec: &ExperimentSpec, stdout: &mut W) -> Result<i32> {
    let start = Instant::now();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = spec.threads {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| Error::Usage(format!("thread pool: {e}")))?;
    let out = pool.install(|| dispatch(spec))?;

    let mut summary = Record::new().with("command", spec.command.as_str());
    for (k, v) in &spec.parameters {
        summary.push(format!("param.{k}"), v.as_str());
    }
    summary.push("seed", spec.seed.unwrap_or(0));
    summary.push("threads", pool.current_num_threads());
    summary.extend(out.summary);
    summary.push("wall_time", start.elapsed().as_secs_f64());
    summary.push("version", VERSION);

    let failed = matches!(summary.get("failed"), Some(Value::Int(n)) if *n > 0);
    if let (Some(path), Some(table)) = (&spec.output_path, &out.table) {
        table.write(BufWriter::new(File::create(path)?))?;
        summary.push("output", path.display().to_string());
    }
    match spec.format {
        Format::Record => {
            let mut all = vec![summary];
            all.extend(out.items);
            write_records(&mut *stdout, &all)?;
        }
        Format::Csv if out.items.is_empty() => write_csv(&mut *stdout, &[summary])?,
        Format::Csv => {
            write_csv(&mut *stdout, &out.items)?;
            eprint!("{summary}");
        }
    }
    Ok(if spec.command == "verify" && failed { 1 } else { 0 })
}

/// Entry point used by the binary: parses, runs and maps errors to exit codes.
pub fn main_with_args<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    // clap reports --help and --version as errors with exit code 0
    let matches = match build_cli(&commands()).try_get_matches_from(argv) {
        Ok(m) => m,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let spec = match from_matches(&matches) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{e}");
            return e.exit_code();
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match run(&spec, &mut lock) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<ExperimentSpec> {
        parse_cli(std::iter::once("djoint").chain(args.iter().copied()))
    }

    #[test]
    fn simple_command() {
        let s = parse(&["gsigma", "--sigma", "0.75"]).unwrap();
        assert_eq!(s.command, "gsigma");
        assert_eq!(s.get("sigma"), Some("0.75"));
        assert_eq!(s.get("tol"), Some("1e-10"));
        assert_eq!(s.format, Format::Record);
    }

    #[test]
    fn explicit_flags_override_config() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.cfg");
        std::fs::write(&path, "# constants\nsigma = 0.7\ntol=1e-9\n").unwrap();
        let p = path.to_str().unwrap();
        let s = parse(&["gsigma", "--config", p, "--sigma", "0.8"]).unwrap();
        assert_eq!(s.get("sigma"), Some("0.8"));
        assert_eq!(s.get("tol"), Some("1e-9"));
        std::fs::write(&path, "sigma = 0.7\nbogus = 1\n").unwrap();
        assert!(matches!(parse(&["gsigma", "--config", p]), Err(Error::Usage(_))));
    }

    #[test]
    fn missing_keys_are_listed() {
        let e = parse(&["scan", "--chars", "5:1", "--sigma", "0.75"]).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert!(e.to_string().contains("--t-start"), "{e}");
    }

    #[test]
    fn type_errors_are_usage_errors() {
        assert!(matches!(parse(&["gsigma", "--sigma", "abc"]), Err(Error::Usage(_))));
        assert!(matches!(
            parse(&["mc", "--chars", "5:1", "--sigma", "0.7", "--cutoff", "100", "--samples", "0"]),
            Err(Error::Usage(_))
        ));
        assert!(matches!(parse(&["gsigma", "--sigma", "0.7", "--nope", "1"]), Err(Error::Usage(_))));
        assert!(matches!(parse(&["frobnicate"]), Err(Error::Usage(_))));
    }

    #[test]
    fn run_factors_record() {
        let s = parse(&["factors", "--chars", "5:1,5:2", "--sigma", "0.5"]).unwrap();
        let mut buf = Vec::new();
        assert_eq!(run(&s, &mut buf).unwrap(), 0);
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("command = \"factors\"\nparam.chars = \"5:1,5:2\"\n"), "{text}");
        assert!(text.contains("\nxi = 2.0") || text.contains("\nxi = 1.99999999"), "{text}");
        assert!(text.contains("\nversion = "));
    }

    #[test]
    fn domain_and_budget_exit_codes() {
        let s = parse(&["gsigma", "--sigma", "0.3"]).unwrap();
        assert_eq!(run(&s, &mut Vec::new()).unwrap_err().exit_code(), 1);
        let s = parse(&["search", "--modulus", "61", "--r", "6", "--sigma", "0.9"]).unwrap();
        assert_eq!(run(&s, &mut Vec::new()).unwrap_err().exit_code(), 3);
    }
}
