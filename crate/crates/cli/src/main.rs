//! `alcove`: admissible and permissible sets, statement checks, counterexamples
//! and alcove pictures from the command line.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 configuration error,
//! 3 guard exceeded. Errors are written to stderr as one JSON object.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use alcove_core::affine::{self, LOWER_INTERVAL_MAX_LENGTH};
use alcove_core::alcoves::svg::{self, SvgOptions};
use alcove_core::alcoves::{alcove_of, in_acute_cone, Alcove};
use alcove_core::musets::{self, BOX_GUARD, ESCALATION_LIMIT};
use alcove_core::report::{self, vector_json};
use alcove_core::verify::{self, VerifyParams, STATEMENTS};
use alcove_core::{build_root_datum, Error, ExtAffineElement, Family, RationalVector, RootDatum};

#[derive(Parser, Debug)]
#[command(
    name = "alcove",
    version,
    about = "Alcove combinatorics for extended affine Weyl groups"
)]
struct Cli {
    /// worker threads; defaults to the available cores
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct DatumArgs {
    /// GL, A, B, C, D, F4, G2 or GSp
    #[arg(long)]
    family: Family,
    /// matrix size for GL and GSp, rank otherwise
    #[arg(long)]
    size: usize,
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// write here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Roots, coroots and alcove vertices of a datum.
    Describe {
        #[command(flatten)]
        datum: DatumArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Adm(μ), Perm(μ) and Perm^st(μ) with their comparison.
    Enumerate {
        #[command(flatten)]
        datum: DatumArgs,
        /// ambient coordinates, comma separated
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        /// largest l(t_μ) accepted
        #[arg(long, default_value_t = LOWER_INTERVAL_MAX_LENGTH)]
        max_length: usize,
        /// largest lattice box scanned per finite Weyl element
        #[arg(long, default_value_t = BOX_GUARD)]
        max_points: u128,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Check one statement (`list` shows the ids, `all` runs every one).
    Verify {
        statement: String,
        #[arg(long)]
        family: Option<Family>,
        #[arg(long)]
        size: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
        /// random instances for randomized statements
        #[arg(long)]
        instances: Option<usize>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// An element of Perm(μ) outside Adm(μ) from a pair w, w' of equal length
    /// with w(λ) − w'(λ) ≥ 0.
    Counterexample {
        #[command(flatten)]
        datum: DatumArgs,
        /// largest multiple of the regular step tried
        #[arg(long, default_value_t = ESCALATION_LIMIT)]
        limit: i64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// SVG of a rank-2 arrangement with a set of alcoves shaded.
    Draw {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, value_enum)]
        set: DrawSet,
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
        /// reduced word of w for `--set cone`, e.g. `1,2`
        #[arg(long, default_value = "")]
        w: String,
        /// walls with |k| ≤ radius are drawn
        #[arg(long, default_value_t = 3)]
        radius: i64,
        #[arg(long, default_value_t = 600)]
        pixels: u32,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Table,
    Json,
    Csv,
    Svg,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum DrawSet {
    Adm,
    Perm,
    PermSt,
    Cone,
}

/// Everything that determines a run's output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct RunConfig {
    command: String,
    family: Option<Family>,
    size: Option<usize>,
    mu: Option<Vec<i64>>,
    format: Format,
    max_length: usize,
    max_points: u128,
    output: Option<PathBuf>,
}

/// Failure of a command, carrying its exit code.
enum Failure {
    Core(Error),
    /// a statement was checked and found false
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn config_error(msg: impl Into<String>) -> Failure {
    Failure::Core(Error::Config(msg.into()))
}

fn parse_mu(s: &str) -> Result<Vec<i64>, Failure> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| config_error(format!("μ entry `{}` is not an integer", t.trim())))
        })
        .collect()
}

/// Checks dimension, dominance and lattice membership.
fn checked_mu(d: &RootDatum, raw: &[i64]) -> Result<RationalVector, Failure> {
    let mu = RationalVector::from_ints(raw);
    d.check_dim(&mu)?;
    d.require_dominant(&mu)?;
    if !d.in_lattice(&mu) {
        return Err(config_error(format!(
            "{mu} is not in the cocharacter lattice of {}",
            d.label()
        )));
    }
    Ok(mu)
}

fn emit(out: &OutputArgs, body: &str) -> Result<(), Failure> {
    match &out.output {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| config_error(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(body.as_bytes())
                .map_err(|e| config_error(format!("cannot write to stdout: {e}")))
        }
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn reject_format(out: &OutputArgs, allowed: &[Format]) -> Result<(), Failure> {
    if allowed.contains(&out.format) {
        Ok(())
    } else {
        Err(config_error(
            format!("format {:?} is not available here", out.format).to_lowercase(),
        ))
    }
}

fn describe(datum: &DatumArgs, out: &OutputArgs) -> Result<(), Failure> {
    reject_format(out, &[Format::Table, Format::Json])?;
    let d = build_root_datum(datum.family, datum.size)?;
    let vecs = |vs: &[RationalVector]| Value::Array(vs.iter().map(vector_json).collect());
    let body = match out.format {
        Format::Json => json_text(&json!({
            "datum": d.label(),
            "fingerprint": d.fingerprint(),
            "cartan_type": d.cartan_type(),
            "rank": d.rank(),
            "ambient_dim": d.ambient_dim(),
            "weyl_order": d.weyl_order().to_string(),
            "simple_roots": vecs(d.simple_roots()),
            "simple_coroots": vecs(d.simple_coroots()),
            "highest_root": vector_json(d.highest_root()),
            "lattice_basis": vecs(d.lattice_basis()),
            "vertices": vecs(d.vertices()),
        })),
        _ => {
            let mut s = String::new();
            let _ = writeln!(s, "datum        {}  [{}]", d.label(), d.fingerprint());
            let _ = writeln!(
                s,
                "type         {}, rank {}, ambient {}",
                d.cartan_type(),
                d.rank(),
                d.ambient_dim()
            );
            let _ = writeln!(s, "|W_0|        {}", d.weyl_order());
            let _ = writeln!(s, "highest root {}", d.highest_root());
            for (i, (a, c)) in d.simple_roots().iter().zip(d.simple_coroots()).enumerate() {
                let _ = writeln!(s, "α_{}          {a}   coroot {c}", i + 1);
            }
            for v in d.vertices() {
                let _ = writeln!(s, "vertex       {v}");
            }
            s
        }
    };
    emit(out, &body)
}

fn enumerate(cfg: &RunConfig, out: &OutputArgs) -> Result<(), Failure> {
    reject_format(out, &[Format::Table, Format::Json, Format::Csv])?;
    let d = build_root_datum(
        cfg.family.expect("datum flags are required"),
        cfg.size.expect("required"),
    )?;
    let mu = checked_mu(&d, cfg.mu.as_deref().expect("required"))?;
    let tmu = ExtAffineElement::translation(&d, &mu)?;
    let len = affine::length(&d, &tmu);
    if len > cfg.max_length {
        return Err(Failure::Core(Error::Guard(format!(
            "l(t_μ) = {len} exceeds --max-length {}",
            cfg.max_length
        ))));
    }
    let r = musets::compare_with_guard(&d, &mu, cfg.max_points)?;
    let body = match out.format {
        Format::Json => json_text(&report::musets_json(&d, &r)),
        Format::Csv => format!("{}\n{}\n", report::CSV_HEADER, report::musets_csv_row(&r)),
        _ => {
            let adm: std::collections::HashSet<_> = r.adm.iter().collect();
            let st: std::collections::HashSet<_> = r.perm_st.iter().collect();
            let mut s = String::new();
            let _ = writeln!(s, "{}  μ = {}  [{}]", r.datum, r.mu, r.fingerprint);
            let _ = writeln!(
                s,
                "|Adm| = {}  |Perm| = {}  |Perm^st| = {}",
                r.adm.len(),
                r.perm.len(),
                r.perm_st.len()
            );
            let v = &r.verdicts;
            let _ = writeln!(
                s,
                "Adm ⊆ Perm: {}  Adm = Perm: {}",
                v.adm_subset_perm, v.adm_eq_perm
            );
            let _ = writeln!(
                s,
                "Perm = Perm^st: {}  Perm^st ⊆ Adm: {}",
                v.perm_eq_perm_st, v.perm_st_subset_adm
            );
            let _ = writeln!(s, "\n adm  st  len  element");
            for x in &r.perm {
                let mark = |b: bool| if b { "*" } else { "." };
                let _ = writeln!(
                    s,
                    "  {}    {}  {:>3}  {}",
                    mark(adm.contains(x)),
                    mark(st.contains(x)),
                    affine::length(&d, x),
                    affine::describe(&d, x)
                );
            }
            s
        }
    };
    emit(out, &body)
}

fn verdict_table(v: &verify::Verdict) -> String {
    let mut s = format!(
        "{:<13} {:<4} {:<10} checked {}",
        v.statement,
        if v.pass { "PASS" } else { "FAIL" },
        v.datum,
        v.checked
    );
    if let Some(w) = &v.witness {
        let _ = write!(s, "\n    witness: {w}");
    }
    for n in &v.notes {
        let _ = write!(s, "\n    note: {n}");
    }
    s.push('\n');
    s
}

fn run_verify(statement: &str, params: &VerifyParams, out: &OutputArgs) -> Result<(), Failure> {
    reject_format(out, &[Format::Table, Format::Json])?;
    if statement == "list" {
        let body = match out.format {
            Format::Json => json_text(&Value::Array(
                STATEMENTS
                    .iter()
                    .map(|(id, what)| json!({"id": id, "statement": what}))
                    .collect(),
            )),
            _ => STATEMENTS
                .iter()
                .map(|(id, what)| format!("{id:<13} {what}\n"))
                .collect(),
        };
        return emit(out, &body);
    }
    let ids: Vec<&str> = if statement == "all" {
        STATEMENTS.iter().map(|(id, _)| *id).collect()
    } else {
        vec![statement]
    };
    let mut verdicts = Vec::new();
    for id in ids {
        verdicts.push(verify::run(id, params)?);
    }
    let body = match out.format {
        Format::Json if verdicts.len() == 1 => {
            json_text(&serde_json::to_value(&verdicts[0]).expect("serializable"))
        }
        Format::Json => json_text(&serde_json::to_value(&verdicts).expect("serializable")),
        _ => verdicts.iter().map(verdict_table).collect(),
    };
    emit(out, &body)?;
    if verdicts.iter().all(|v| v.pass) {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn counterexample(datum: &DatumArgs, limit: i64, out: &OutputArgs) -> Result<(), Failure> {
    reject_format(out, &[Format::Table, Format::Json])?;
    let d = build_root_datum(datum.family, datum.size)?;
    let found = if d.rank() <= 3 || d.family().is_type_a() {
        None
    } else {
        musets::find_counterexample(&d, limit)?
    };
    let g = d.weyl()?;
    let (value, ok) = match &found {
        None => {
            let reason = if d.family().is_type_a() {
                "type A: w' ≤ w exactly when w'(λ) − w(λ) ≥ 0 for all dominant λ, so Adm = Perm"
            } else if d.rank() <= 3 {
                "rank ≤ 3: the Bruhat order is detected by dominant coweights"
            } else {
                "no pair w ≠ w' of equal length with w(λ) − w'(λ) ≥ 0"
            };
            (
                json!({"datum": d.label(), "fingerprint": d.fingerprint(), "found": false, "reason": reason}),
                true,
            )
        }
        Some(c) => (
            json!({
                "datum": d.label(),
                "fingerprint": d.fingerprint(),
                "found": true,
                "w": g.word(c.w),
                "w_prime": g.word(c.w2),
                "multiple": c.multiple,
                "mu": vector_json(&c.mu),
                "x": report::element_json(&d, &c.x),
                "checks": {
                    "in_perm": c.in_perm,
                    "in_adm": c.in_adm,
                    "length": c.length,
                    "length_t_mu": c.length_t_mu,
                },
                "verified": c.verified(),
            }),
            c.verified(),
        ),
    };
    let body = match out.format {
        Format::Json => json_text(&value),
        _ => match &found {
            None => format!("{}: none exists ({})\n", d.label(), value["reason"].as_str().unwrap_or_default()),
            Some(c) => format!(
                "{}: w = {:?}, w' = {:?}, μ = {} ({} × regular step)\nx = {}\nx ∈ Perm(μ): {}\nx ∉ Adm(μ): {}\nl(x) = {}, l(t_μ) = {}\nverified: {}\n",
                d.label(),
                g.word(c.w),
                g.word(c.w2),
                c.mu,
                c.multiple,
                affine::describe(&d, &c.x),
                c.in_perm,
                !c.in_adm,
                c.length,
                c.length_t_mu,
                c.verified()
            ),
        },
    };
    emit(out, &body)?;
    if ok {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn parse_word(s: &str) -> Result<Vec<u8>, Failure> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u8>()
                .map_err(|_| config_error(format!("word entry `{t}` is not an index")))
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn draw(
    datum: &DatumArgs,
    set: DrawSet,
    mu: Option<&str>,
    w: &str,
    radius: i64,
    pixels: u32,
    output: Option<PathBuf>,
) -> Result<(), Failure> {
    let d = build_root_datum(datum.family, datum.size)?;
    if d.rank() != 2 {
        return Err(config_error(format!(
            "drawing needs a rank-2 datum, {} has rank {}",
            d.label(),
            d.rank()
        )));
    }
    if radius < 1 {
        return Err(config_error("--radius must be at least 1"));
    }
    let shaded: Vec<Alcove> = match set {
        DrawSet::Cone => {
            let g = d.weyl()?;
            let word = parse_word(w)?;
            if word.iter().any(|&i| i == 0 || i as usize > d.rank()) {
                return Err(config_error(format!("w uses generators 1..={}", d.rank())));
            }
            let dir = g.from_word(&word);
            let base = Alcove::base(&d);
            affine::affine_ball(&d, 4 * radius as usize)
                .iter()
                .map(|x| alcove_of(&d, x))
                .filter(|a| in_acute_cone(&d, &base, dir, a))
                .collect()
        }
        _ => {
            let raw = mu.ok_or_else(|| config_error("--mu is required for this set"))?;
            let mu = checked_mu(&d, &parse_mu(raw)?)?;
            let elements = match set {
                DrawSet::Adm => musets::enumerate_adm(&d, &mu)?,
                DrawSet::Perm => musets::enumerate_perm(&d, &mu)?,
                _ => musets::enumerate_perm_st(&d, &mu)?,
            };
            elements.iter().map(|x| alcove_of(&d, x)).collect()
        }
    };
    let opts = SvgOptions {
        radius,
        size: pixels,
    };
    let body = svg::render(&d, &shaded, &opts)?;
    emit(
        &OutputArgs {
            format: Format::Svg,
            output,
        },
        &body,
    )
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(config_error("--threads must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| config_error(format!("thread pool: {e}")))?;
    }
    match cli.command {
        Command::Describe { datum, out } => describe(&datum, &out),
        Command::Enumerate {
            datum,
            mu,
            max_length,
            max_points,
            out,
        } => {
            let cfg = RunConfig {
                command: "enumerate".into(),
                family: Some(datum.family),
                size: Some(datum.size),
                mu: Some(parse_mu(&mu)?),
                format: out.format,
                max_length,
                max_points,
                output: out.output.clone(),
            };
            enumerate(&cfg, &out)
        }
        Command::Verify {
            statement,
            family,
            size,
            mu,
            instances,
            out,
        } => {
            if !matches!(statement.as_str(), "list" | "all") && !verify::is_known(&statement) {
                return Err(config_error(format!(
                    "unknown statement `{statement}`; try `verify list`"
                )));
            }
            let params = VerifyParams {
                family,
                size,
                mu: mu.as_deref().map(parse_mu).transpose()?,
                instances,
            };
            run_verify(&statement, &params, &out)
        }
        Command::Counterexample { datum, limit, out } => counterexample(&datum, limit, &out),
        Command::Draw {
            datum,
            set,
            mu,
            w,
            radius,
            pixels,
            output,
        } => draw(&datum, set, mu.as_deref(), &w, radius, pixels, output),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Core(e)) => {
            let code = if matches!(e, Error::Guard(_)) { 3 } else { 2 };
            let body =
                json!({"error": {"kind": e.kind(), "message": e.to_string(), "exit_code": code}});
            eprintln!("{body}");
            ExitCode::from(code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_round_trips() {
        let cfg = RunConfig {
            command: "enumerate".into(),
            family: Some(Family::GSp),
            size: Some(4),
            mu: Some(vec![1, 1, 0, 0]),
            format: Format::Csv,
            max_length: 25,
            max_points: BOX_GUARD,
            output: Some("out.csv".into()),
        };
        let text = serde_json::to_string(&cfg).unwrap();
        assert_eq!(serde_json::from_str::<RunConfig>(&text).unwrap(), cfg);
    }

    #[test]
    fn mu_parsing() {
        assert_eq!(parse_mu("1, 0,-1").ok(), Some(vec![1, 0, -1]));
        assert!(parse_mu("1,x").is_err());
    }

    #[test]
    fn words() {
        assert_eq!(parse_word("").ok(), Some(vec![]));
        assert_eq!(parse_word("1,2").ok(), Some(vec![1, 2]));
    }
}
