//! The `wblowup` command line.
//!
//! One verb per invocation. Output is TSV by default and JSON with
//! `--format json`; every rational is printed as `p/q`. Exit status is 0 on
//! success, 1 on a domain error (its name goes to stderr) and 2 when an input
//! cannot be read or parsed.

use crate::arith::{format_rational, parse_rational, Rational};
use crate::correspondence::{
    assemble_l, linear_extension, psi_forward, psi_inverse, solve_lower_triangular, AbsoluteData, CoefficientRule,
    FormalPairModel, Matrix, OffDiagonalEntry, RationalVector, RelativeData, SearchOptions,
};
use crate::error::Error;
use crate::invariants::{h_invariant, h_prime_oracle, localization_sum, relative_invariant, ProperInsertionPair};
use crate::local_model::LocalModel;
use crate::rank::{c_bounds, c_to_rd, d_s, moduli_dim, moduli_dim_oracle, rk_pair, window, FiberClassLabel, RankedLabel};
use clap::{Parser, ValueEnum};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    /// Twisted sectors of a local model with supports and degree shifts.
    Sectors,
    /// Degree shift of one sector `(b, R)`.
    Degshift,
    /// Ranking data: `--R` for one label, `--c` for the label of a descendant power, `--k` for a window.
    Rank,
    /// Moduli dimensions, closed form next to the direct count.
    Dims,
    /// Fiber-class invariants, single or batch.
    Invariant,
    /// The data correspondence and its inverse.
    Correspond,
    /// A linear extension of the order on a list of data.
    Order,
    /// The triangular matrix on a basis of data.
    Assemble,
    /// Forward substitution with a lower triangular matrix.
    Solve,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Tsv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "wblowup", version, about = "Exact combinatorics of weighted blowups")]
pub struct Command {
    pub verb: Verb,
    #[arg(long)]
    pub model: Option<PathBuf>,
    #[arg(long = "pair-model")]
    pub pair_model: Option<PathBuf>,
    #[arg(long)]
    pub data: Option<PathBuf>,
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    #[arg(long)]
    pub vector: Option<PathBuf>,
    #[arg(long)]
    pub c: Option<u64>,
    #[arg(long = "R", value_parser = parse_rational_arg, allow_hyphen_values = true)]
    pub big_r: Option<Rational>,
    #[arg(long)]
    pub d: Option<u32>,
    #[arg(long)]
    pub i: Option<usize>,
    #[arg(long)]
    pub j: Option<usize>,
    /// Window index.
    #[arg(long)]
    pub k: Option<u64>,
    /// Sector twist for `degshift`.
    #[arg(long)]
    pub b: Option<u32>,
    /// For `correspond`: read absolute data and map back.
    #[arg(long)]
    pub inverse: bool,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long = "max-components", default_value_t = SearchOptions::default().max_components)]
    pub max_components: usize,
}

fn parse_rational_arg(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Debug)]
enum Failure {
    Domain(Error),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(msg) => Failure::Input(msg),
            e => Failure::Domain(e),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn missing(flag: &str, verb: Verb) -> Failure {
    Failure::Input(format!("{} needs --{flag}", format!("{verb:?}").to_lowercase()))
}

fn read(path: &Path) -> Outcome<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Outcome<T> {
    serde_json::from_str(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

#[derive(Deserialize)]
struct RawModel {
    r: u32,
    beta: Vec<u32>,
    alpha: Vec<u32>,
}

/// Shape errors are input errors; a well-formed but invalid model is a domain error.
fn read_model(path: &Path) -> Outcome<LocalModel> {
    let raw: RawModel = read_json(path)?;
    Ok(LocalModel::new(raw.r, raw.beta, raw.alpha)?)
}

fn label(model: &LocalModel, r: &Rational) -> Outcome<FiberClassLabel> {
    Ok(FiberClassLabel::new(model, r.clone())?)
}

fn q(x: &Rational) -> String {
    format_rational(x)
}

fn qs(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn tsv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut s = header.join("\t");
    s.push('\n');
    for row in rows {
        s.push_str(&row.join("\t"));
        s.push('\n');
    }
    s
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

/// Header plus rows, rendered as TSV or as a JSON list of objects.
fn table(format: Format, header: &[&str], rows: Vec<Vec<String>>) -> String {
    match format {
        Format::Tsv => tsv(header, &rows),
        Format::Json => {
            let objs: Vec<Value> = rows
                .iter()
                .map(|row| Value::Object(header.iter().map(|h| h.to_string()).zip(row.iter().map(|c| json!(c))).collect()))
                .collect();
            json_text(&Value::Array(objs))
        }
    }
}

fn join(v: &[String]) -> String {
    v.join(",")
}

fn sectors(cmd: &Command) -> Outcome<String> {
    let model = read_model(cmd.model.as_deref().ok_or_else(|| missing("model", cmd.verb))?)?;
    let mut rows = vec![];
    for s in model.sector_index_set() {
        let support: Vec<String> = model.sector_support(&s)?.iter().map(|u| u.to_string()).collect();
        rows.push(vec![s.b.to_string(), q(&s.phase), join(&support), q(&model.degree_shift(s.b, &s.phase))]);
    }
    Ok(table(cmd.format, &["b", "R", "support", "degshift"], rows))
}

fn degshift(cmd: &Command) -> Outcome<String> {
    let model = read_model(cmd.model.as_deref().ok_or_else(|| missing("model", cmd.verb))?)?;
    let b = cmd.b.ok_or_else(|| missing("b", cmd.verb))?;
    let r = cmd.big_r.clone().ok_or_else(|| missing("R", cmd.verb))?;
    if b >= model.r() {
        return Err(Failure::Domain(Error::InvalidData(format!("b = {b} must lie in 0..{}", model.r()))));
    }
    let value = model.degree_shift(b, &r);
    Ok(match cmd.format {
        Format::Tsv => format!("{}\n", q(&value)),
        Format::Json => json_text(&json!(q(&value))),
    })
}

fn rank(cmd: &Command) -> Outcome<String> {
    let model = read_model(cmd.model.as_deref().ok_or_else(|| missing("model", cmd.verb))?)?;
    if let Some(r) = &cmd.big_r {
        let l = label(&model, r)?;
        let (upper, lower) = rk_pair(&model, r);
        let taus: Vec<Rational> = (1..=model.n()).map(|u| model.tau(r, u)).collect::<Result<_, _>>()?;
        let row = vec![q(r), upper.to_string(), lower.to_string(), d_s(&model, &l).to_string(), join(&qs(&taus))];
        return Ok(table(cmd.format, &["R", "rk_upper", "rk_lower", "D_s", "tau"], vec![row]));
    }
    if let Some(c) = cmd.c {
        let (l, d) = c_to_rd(&model, c);
        let ranked = RankedLabel::new(&model, l.value().clone(), d)?;
        let row = vec![c.to_string(), q(l.value()), d.to_string(), ranked.rank(&model).to_string()];
        return Ok(table(cmd.format, &["c", "R", "d", "rank"], vec![row]));
    }
    if let Some(k) = cmd.k {
        let rows = window(&model, k).into_iter().map(|(r, m)| vec![q(&r), m.to_string()]).collect();
        return Ok(table(cmd.format, &["R", "multiplicity"], rows));
    }
    Err(missing("R, --c or --k", cmd.verb))
}

fn dims(cmd: &Command) -> Outcome<String> {
    let model = read_model(cmd.model.as_deref().ok_or_else(|| missing("model", cmd.verb))?)?;
    let values: Vec<Rational> = match (&cmd.big_r, cmd.k) {
        (Some(r), _) => vec![r.clone()],
        (None, Some(k)) => window(&model, k).into_iter().map(|(r, _)| r).collect(),
        (None, None) => return Err(missing("R or --k", cmd.verb)),
    };
    let mut rows = vec![];
    for r in &values {
        let l = label(&model, r)?;
        let (mins, maxs) = c_bounds(&model, &l);
        rows.push(vec![
            q(r),
            moduli_dim(&model, &l).to_string(),
            moduli_dim_oracle(&model, &l).to_string(),
            model.d_top().to_string(),
            join(&qs(&mins)),
            join(&qs(&maxs)),
        ]);
    }
    Ok(table(cmd.format, &["R", "dim", "dim_oracle", "D_t", "c_min", "c_max"], rows))
}

/// Batch queries: one per line, `model<TAB>c<TAB>d<TAB>i<TAB>j`, with `d` either
/// a number (checked against `c`) or `-`. Model paths are relative to the batch file.
fn invariant_batch(path: &Path, format: Format) -> Outcome<String> {
    let text = read(path)?;
    let base = path.parent().unwrap_or(Path::new("."));
    let mut rows = vec![];
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').map(str::trim).collect();
        let bad = || Failure::Input(format!("{}:{}: expected model, c, d, i, j", path.display(), n + 1));
        if cols.len() != 5 {
            return Err(bad());
        }
        let num = |s: &str| s.parse::<u64>().map_err(|_| bad());
        let model = read_model(&base.join(cols[0]))?;
        let (c, i, j) = (num(cols[1])?, num(cols[3])? as usize, num(cols[4])? as usize);
        let mut pair = ProperInsertionPair::from_c(&model, c, i, j);
        if cols[2] != "-" {
            pair.d = num(cols[2])? as u32;
        }
        let value = relative_invariant(&model, &pair)?;
        rows.push(vec![cols[0].to_string(), c.to_string(), pair.d.to_string(), i.to_string(), j.to_string(), q(&value)]);
    }
    Ok(table(format, &["model", "c", "d", "i", "j", "value"], rows))
}

fn invariant(cmd: &Command) -> Outcome<String> {
    if let Some(path) = &cmd.data {
        return invariant_batch(path, cmd.format);
    }
    if let Some(path) = &cmd.vector {
        let lambdas: RationalVector = read_json(path)?;
        let d = cmd.d.ok_or_else(|| missing("d", cmd.verb))?;
        let value = localization_sum(&lambdas.0, d)?;
        return Ok(scalar(cmd.format, &value));
    }
    let model = read_model(cmd.model.as_deref().ok_or_else(|| missing("model", cmd.verb))?)?;
    if let Some(c) = cmd.c {
        let i = cmd.i.ok_or_else(|| missing("i", cmd.verb))?;
        let j = cmd.j.ok_or_else(|| missing("j", cmd.verb))?;
        let mut pair = ProperInsertionPair::from_c(&model, c, i, j);
        if let Some(d) = cmd.d {
            pair.d = d;
        }
        return Ok(scalar(cmd.format, &relative_invariant(&model, &pair)?));
    }
    let r = cmd.big_r.clone().ok_or_else(|| missing("c or --R", cmd.verb))?;
    let d = cmd.d.ok_or_else(|| missing("d", cmd.verb))?;
    let l = label(&model, &r)?;
    let h = h_invariant(&model, &l, d)?;
    let oracle = h_prime_oracle(&model, &l, d)?;
    Ok(table(cmd.format, &["R", "d", "H", "H_prime"], vec![vec![q(&r), d.to_string(), q(&h), q(&oracle)]]))
}

fn scalar(format: Format, value: &Rational) -> String {
    match format {
        Format::Tsv => format!("{}\n", q(value)),
        Format::Json => json_text(&json!(q(value))),
    }
}

fn pair_model(cmd: &Command) -> Outcome<FormalPairModel> {
    read_json(cmd.pair_model.as_deref().ok_or_else(|| missing("pair-model", cmd.verb))?)
}

fn listing<T: std::fmt::Display + serde::Serialize>(format: Format, items: &[T]) -> String {
    match format {
        Format::Tsv => items.iter().fold(String::new(), |mut s, x| {
            let _ = writeln!(s, "{x}");
            s
        }),
        Format::Json => json_text(&serde_json::to_value(items).expect("data serialize")),
    }
}

fn correspond(cmd: &Command) -> Outcome<String> {
    let model = pair_model(cmd)?;
    let path = cmd.data.as_deref().ok_or_else(|| missing("data", cmd.verb))?;
    if cmd.inverse {
        let ad: AbsoluteData = read_json(path)?;
        Ok(listing(cmd.format, &[psi_inverse(&model, &ad)?]))
    } else {
        let rd: RelativeData = read_json(path)?;
        Ok(listing(cmd.format, &[psi_forward(&model, &rd)?]))
    }
}

fn options(cmd: &Command) -> SearchOptions {
    SearchOptions { max_components: cmd.max_components }
}

fn order(cmd: &Command) -> Outcome<String> {
    let model = pair_model(cmd)?;
    let data: Vec<RelativeData> = read_json(cmd.data.as_deref().ok_or_else(|| missing("data", cmd.verb))?)?;
    Ok(listing(cmd.format, &linear_extension(&model, &data, options(cmd))?))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum AssembleInput {
    Basis(Vec<RelativeData>),
    Full {
        basis: Vec<RelativeData>,
        #[serde(default)]
        offdiag: Vec<OffDiagonalEntry>,
        #[serde(default)]
        rule: RuleName,
    },
}

#[derive(Deserialize, Default, Clone, Copy)]
#[serde(rename_all = "snake_case")]
enum RuleName {
    #[default]
    ContactProduct,
    Unit,
}

/// Sorts the basis into a linear extension, carries the off-diagonal entries
/// along and assembles `L` in that order.
fn assemble(cmd: &Command) -> Outcome<String> {
    let model = pair_model(cmd)?;
    let input: AssembleInput = read_json(cmd.data.as_deref().ok_or_else(|| missing("data", cmd.verb))?)?;
    let (basis, offdiag, rule) = match input {
        AssembleInput::Basis(b) => (b, vec![], RuleName::default()),
        AssembleInput::Full { basis, offdiag, rule } => (basis, offdiag, rule),
    };
    let sorted = linear_extension(&model, &basis, options(cmd))?;
    let position = |k: usize| -> Outcome<usize> {
        let rd = basis
            .get(k)
            .ok_or_else(|| Failure::Domain(Error::DimensionMismatch(format!("entry index {k} outside the basis"))))?;
        Ok(sorted.iter().position(|x| x == rd).expect("every basis element is sorted"))
    };
    let moved = offdiag
        .iter()
        .map(|e| Ok(OffDiagonalEntry { row: position(e.row)?, col: position(e.col)?, value: e.value.clone() }))
        .collect::<Outcome<Vec<_>>>()?;
    let rule = match rule {
        RuleName::ContactProduct => CoefficientRule::ContactProduct,
        RuleName::Unit => CoefficientRule::Unit,
    };
    let l = assemble_l(&model, &sorted, &moved, &rule, options(cmd))?;
    Ok(match cmd.format {
        Format::Tsv => {
            let mut s = listing(Format::Tsv, &sorted);
            s.push('\n');
            for row in &l.rows {
                s.push_str(&qs(row).join("\t"));
                s.push('\n');
            }
            s
        }
        Format::Json => json_text(&json!({ "basis": sorted, "L": l })),
    })
}

fn solve(cmd: &Command) -> Outcome<String> {
    let l: Matrix = read_json(cmd.matrix.as_deref().ok_or_else(|| missing("matrix", cmd.verb))?)?;
    let v: RationalVector = read_json(cmd.vector.as_deref().ok_or_else(|| missing("vector", cmd.verb))?)?;
    let x = solve_lower_triangular(&l, &v.0)?;
    Ok(match cmd.format {
        Format::Tsv => qs(&x).iter().map(|s| format!("{s}\n")).collect(),
        Format::Json => json_text(&serde_json::to_value(RationalVector(x)).expect("vector serializes")),
    })
}

/// Executes one command and returns its text output.
fn execute(cmd: &Command) -> Outcome<String> {
    match cmd.verb {
        Verb::Sectors => sectors(cmd),
        Verb::Degshift => degshift(cmd),
        Verb::Rank => rank(cmd),
        Verb::Dims => dims(cmd),
        Verb::Invariant => invariant(cmd),
        Verb::Correspond => correspond(cmd),
        Verb::Order => order(cmd),
        Verb::Assemble => assemble(cmd),
        Verb::Solve => solve(cmd),
    }
}

/// Runs the command line `args` (program name first) and returns the exit status.
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cmd = match Command::try_parse_from(args) {
        Ok(cmd) => cmd,
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{e}");
            return status;
        }
    };
    match execute(&cmd) {
        Ok(text) => {
            let written = match &cmd.out {
                Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
                None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => 0,
                Err(msg) => {
                    let _ = writeln!(stderr, "error: {msg}");
                    2
                }
            }
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(stderr, "{}: {e}", e.name());
            1
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data(name: &str) -> String {
        format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
    }

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (vec![], vec![]);
        let argv = std::iter::once("wblowup").chain(args.iter().copied());
        let status = run(argv, &mut out, &mut err);
        (status, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn sectors_table() {
        let (status, out, _) = call(&["sectors", "--model", &data("local_r2.json")]);
        assert_eq!(status, 0);
        assert_eq!(out, "b\tR\tsupport\tdegshift\n0\t0\t1,2\t0\n1\t0\t2\t1/2\n1\t1/2\t1\t1/2\n");
    }

    #[test]
    fn invariant_single() {
        let (status, out, _) = call(&["invariant", "--model", &data("local_r2.json"), "--c", "0", "--i", "1", "--j", "1"]);
        assert_eq!((status, out.as_str()), (0, "2\n"));
        let (status, out, _) = call(&["invariant", "--model", &data("local_r2.json"), "--c", "0", "--i", "1", "--j", "2"]);
        assert_eq!((status, out.as_str()), (0, "0\n"));
    }

    #[test]
    fn negative_rational_flag() {
        let (status, out, _) = call(&["degshift", "--model", &data("local_r2.json"), "--b", "1", "--R", "-1/2"]);
        assert_eq!((status, out.as_str()), (0, "1/2\n"));
    }

    #[test]
    fn unknown_verb_is_a_usage_error() {
        let (status, _, err) = call(&["frobnicate", "--model", "/nonexistent"]);
        assert_eq!(status, 2);
        assert!(err.contains("frobnicate"));
    }

    #[test]
    fn domain_errors_exit_one_with_name() {
        let (status, _, err) = call(&["dims", "--model", &data("local_r2.json"), "--R", "1/3"]);
        assert_eq!(status, 1);
        assert!(err.starts_with("NotInImage"), "{err}");
    }

    #[test]
    fn io_errors_exit_two() {
        let (status, _, _) = call(&["sectors", "--model", "/nonexistent/model.json"]);
        assert_eq!(status, 2);
        let (status, _, err) = call(&["sectors"]);
        assert_eq!(status, 2);
        assert!(err.contains("--model"));
    }
}
