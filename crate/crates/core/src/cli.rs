//! The `n2vx` command line.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::affine::{affine_modes_within, enumerate_p, enumerate_s, jacobi_violation, AffineMode};
use crate::classification::{casimir_witness_check, classify, enumerate_w};
use crate::coset::{casimir_identity_check, resolve_antiks, resolve_ks, resolved_y_sign, verify_antiks, SpeciesAssignment};
use crate::error::Error;
use crate::free_field::verify_prop_fminus;
use crate::n2::{modes_within, super_jacobi_violation, N2Mode};
use crate::rational::{fmt_rational, parse_rational, ExactRational, HalfInt};
use crate::verma::{HighestWeightN2, VermaModule};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAIL: i32 = 2;

pub const MAX_DEPTH_VAR: &str = "N2VX_MAX_DEPTH";

#[derive(Parser, Debug)]
#[command(name = "n2vx", version, about = "Exact N=2 vertex algebra computations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the record here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EnumWhat {
    #[value(name = "W")]
    W,
    #[value(name = "S")]
    S,
    #[value(name = "P")]
    P,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Ks,
    AntiKs,
    Fminus,
    Jacobi,
    CasimirIdentity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModuleKind {
    N2,
}

fn rat(s: &str) -> Result<ExactRational, Error> {
    parse_rational(s)
}

#[derive(clap::Args, Debug, Clone)]
pub struct WeightArgs {
    #[arg(long = "m-module", value_enum, default_value_t = ModuleKind::N2)]
    pub module: ModuleKind,
    #[arg(long, value_parser = rat, allow_hyphen_values = true)]
    pub h: ExactRational,
    #[arg(long, value_parser = rat, allow_hyphen_values = true)]
    pub q: ExactRational,
    #[arg(long, value_parser = rat, allow_hyphen_values = true)]
    pub c: ExactRational,
    #[arg(long)]
    pub level: HalfInt,
    #[arg(long, allow_hyphen_values = true)]
    pub charge: i64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide whether L_{h,q,c_m} is an L_{c_m}-module.
    Classify {
        #[arg(long, value_parser = rat, allow_hyphen_values = true)]
        m: ExactRational,
        #[arg(long, value_parser = rat, allow_hyphen_values = true)]
        h: ExactRational,
        #[arg(long, value_parser = rat, allow_hyphen_values = true)]
        q: ExactRational,
    },
    /// List W^{c_m}, S^m or P^m.
    Enum {
        #[arg(long, value_enum)]
        what: EnumWhat,
        #[arg(long, value_parser = rat, allow_hyphen_values = true)]
        m: ExactRational,
    },
    /// Gram matrix of a Verma weight space.
    Gram(WeightArgs),
    /// Singular vectors of a Verma weight space.
    Singular(WeightArgs),
    /// Run a verification harness.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, value_parser = rat, allow_hyphen_values = true)]
        m: Option<ExactRational>,
        #[arg(long)]
        depth: Option<HalfInt>,
    },
}

/// A command's result: the JSON record, a table view and whether it passed.
#[derive(Clone, Debug)]
pub struct Output {
    pub record: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub passed: bool,
}

impl Output {
    fn new(record: Value) -> Self {
        Output { record, header: Vec::new(), rows: Vec::new(), passed: true }
    }

    fn table(mut self, header: &[&str], rows: Vec<Vec<String>>) -> Self {
        self.header = header.iter().map(|s| s.to_string()).collect();
        self.rows = rows;
        self
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.record).expect("json values serialize") + "\n",
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header).expect("in-memory write");
                for r in &self.rows {
                    w.write_record(r).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8")
            }
            Format::Table => {
                let widths: Vec<usize> = (0..self.header.len())
                    .map(|i| {
                        self.rows.iter().map(|r| r[i].chars().count()).chain([self.header[i].chars().count()]).max().unwrap_or(0)
                    })
                    .collect();
                let line = |cells: &[String]| {
                    let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                    padded.join("  ").trim_end().to_string() + "\n"
                };
                let mut s = line(&self.header);
                s += &line(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>());
                for r in &self.rows {
                    s += &line(r);
                }
                s
            }
        }
    }
}

fn fr(x: &ExactRational) -> String {
    fmt_rational(x)
}

pub const DEFAULT_MAX_DEPTH: HalfInt = HalfInt::from_twice(5);

fn max_depth_cap() -> HalfInt {
    std::env::var(MAX_DEPTH_VAR).ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_MAX_DEPTH)
}

pub fn execute(cmd: &Command) -> Result<Output, Error> {
    match cmd {
        Command::Classify { m, h, q } => {
            let v = classify(h, q, m);
            let rec = json!({
                "command": "classify",
                "inputs": {"m": fr(m), "h": fr(h), "q": fr(q)},
                "result": v,
            });
            let witness = match &v.witness_json() {
                Value::Null => String::new(),
                w => w.to_string(),
            };
            Ok(Output::new(rec).table(&["m", "h", "q", "verdict", "witness"], vec![vec![fr(m), fr(h), fr(q), v.tag().into(), witness]]))
        }
        Command::Enum { what, m } => enum_command(*what, m),
        Command::Gram(a) => {
            let module = VermaModule::new(HighestWeightN2::new(a.h.clone(), a.q.clone(), a.c.clone()));
            let basis = module.weight_space_basis(a.level, a.charge);
            let g = module.gram_matrix(a.level, a.charge).to_dense();
            let matrix: Vec<Vec<String>> = g.iter().map(|r| r.iter().map(fr).collect()).collect();
            let names: Vec<String> = basis.iter().map(|b| b.to_string()).collect();
            let rec = json!({
                "command": "gram",
                "inputs": weight_inputs(a),
                "result": {"basis": names, "matrix": matrix},
            });
            let mut header = vec!["basis"];
            header.extend(names.iter().map(String::as_str));
            let rows = names.iter().zip(&matrix).map(|(n, r)| [vec![n.clone()], r.clone()].concat()).collect();
            Ok(Output::new(rec).table(&header, rows))
        }
        Command::Singular(a) => {
            let module = VermaModule::new(HighestWeightN2::new(a.h.clone(), a.q.clone(), a.c.clone()));
            let vs: Vec<String> = module.singular_vectors(a.level, a.charge).iter().map(|v| module.display(v)).collect();
            let rec = json!({
                "command": "singular",
                "inputs": weight_inputs(a),
                "result": {"count": vs.len(), "vectors": vs},
            });
            let rows = vs.iter().enumerate().map(|(i, v)| vec![i.to_string(), v.clone()]).collect();
            Ok(Output::new(rec).table(&["index", "vector"], rows))
        }
        Command::Verify { suite, m, depth } => verify_command(*suite, m.as_ref(), *depth),
    }
}

fn weight_inputs(a: &WeightArgs) -> Value {
    json!({"module": "n2", "h": fr(&a.h), "q": fr(&a.q), "c": fr(&a.c), "level": a.level.to_string(), "charge": a.charge})
}

fn enum_command(what: EnumWhat, m: &ExactRational) -> Result<Output, Error> {
    let inputs = json!({"m": fr(m)});
    Ok(match what {
        EnumWhat::W => {
            let w = enumerate_w(m)?;
            let rows: Vec<Vec<String>> = w
                .iter()
                .map(|e| vec![e.r.to_string(), e.i.to_string(), fr(&e.j), fr(&e.k), fr(&e.h), fr(&e.q)])
                .collect();
            let entries: Vec<Value> = w
                .iter()
                .map(|e| json!({"r": e.r, "i": e.i, "j": fr(&e.j), "k": fr(&e.k), "h": fr(&e.h), "q": fr(&e.q)}))
                .collect();
            let rec = json!({"command": "enum", "what": "W", "inputs": inputs, "result": {"count": w.len(), "entries": entries}});
            Output::new(rec).table(&["r", "i", "j", "k", "h", "q"], rows)
        }
        EnumWhat::S => {
            let s: Vec<String> = enumerate_s(m)?.iter().map(fr).collect();
            let rec = json!({"command": "enum", "what": "S", "inputs": inputs, "result": {"count": s.len(), "values": s}});
            Output::new(rec).table(&["s"], s.iter().map(|x| vec![x.clone()]).collect())
        }
        EnumWhat::P => {
            let p = enumerate_p(m)?;
            let rows: Vec<Vec<String>> =
                p.iter().map(|w| vec![w.k.to_string(), w.n.to_string(), fr(&w.lambda0), fr(&w.lambda1)]).collect();
            let entries: Vec<Value> = p
                .iter()
                .map(|w| json!({"k": w.k, "n": w.n, "lambda0": fr(&w.lambda0), "lambda1": fr(&w.lambda1)}))
                .collect();
            let rec = json!({"command": "enum", "what": "P", "inputs": inputs, "result": {"count": p.len(), "weights": entries}});
            Output::new(rec).table(&["k", "n", "lambda0", "lambda1"], rows)
        }
    })
}

fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::Ks => "ks",
        Suite::AntiKs => "anti-ks",
        Suite::Fminus => "fminus",
        Suite::Jacobi => "jacobi",
        Suite::CasimirIdentity => "casimir-identity",
    }
}

fn verify_command(suite: Suite, m: Option<&ExactRational>, depth: Option<HalfInt>) -> Result<Output, Error> {
    let requested = depth.unwrap_or(HalfInt::int(2));
    let depth = match suite {
        // the Jacobi sweep is pure algebra and cheap at any depth
        Suite::Jacobi => requested,
        _ => requested.min(max_depth_cap()),
    };
    let m = m.cloned().unwrap_or_else(|| crate::rational::q(1));
    let mut inputs = json!({"suite": suite_name(suite), "m": fr(&m), "depth": depth.to_string()});
    if depth != requested {
        inputs["requested_depth"] = json!(requested.to_string());
    }
    let (passed, result, rows): (bool, Value, Vec<Vec<String>>) = match suite {
        Suite::Ks => {
            let res = resolve_ks(&m, depth)?;
            let passing: Vec<String> = res.passing().iter().map(|v| v.describe()).collect();
            let rows = res
                .tried
                .iter()
                .filter(|(_, ok)| *ok)
                .map(|(v, _)| vec![v.describe(), "pass".into()])
                .chain([
                    vec!["as printed".into(), pass_str(res.assignment_passes(SpeciesAssignment::AsPrinted))],
                    vec!["species swapped".into(), pass_str(res.assignment_passes(SpeciesAssignment::SpeciesSwapped))],
                ])
                .collect();
            let checked: usize = res.reports.iter().map(|r| r.sweep.checked).sum();
            let result = json!({
                "c": fr(&res.c),
                "variants_tried": res.tried.len(),
                "as_printed": res.assignment_passes(SpeciesAssignment::AsPrinted),
                "species_swapped": res.assignment_passes(SpeciesAssignment::SpeciesSwapped),
                "resolved": passing,
                "relations_checked": checked,
            });
            (!passing.is_empty(), result, rows)
        }
        Suite::AntiKs => {
            let reports = resolve_antiks(&m, depth)?;
            let mut rows = Vec::new();
            let per_sign: Vec<Value> = reports
                .iter()
                .map(|r| {
                    for c in &r.clauses {
                        rows.push(vec![format!("y sign {}", r.y_sign), format!("({}) {}", c.clause, c.statement), pass_str(c.pass)]);
                    }
                    rows.push(vec![format!("y sign {}", r.y_sign), "affine brackets".into(), pass_str(r.sweep.passed())]);
                    json!({
                        "y_sign": r.y_sign,
                        "clauses": r.clauses.iter().map(|c| json!({"clause": c.clause.to_string(), "statement": c.statement, "pass": c.pass})).collect::<Vec<_>>(),
                        "brackets_checked": r.sweep.checked,
                        "brackets_pass": r.sweep.passed(),
                        "first_failure": r.sweep.failure.as_ref().map(|f| format!("[{}, {}] on {}", f.a, f.b, f.state)),
                        "pass": r.passed(),
                    })
                })
                .collect();
            let resolved = resolved_y_sign(&reports);
            let c = reports[0].c.clone();
            (resolved.is_some(), json!({"c": fr(&c), "resolved_y_sign": resolved, "normalizations": per_sign}), rows)
        }
        Suite::Fminus => {
            let clauses = verify_prop_fminus()?;
            let rows = clauses.iter().map(|c| vec![format!("({})", c.clause), c.statement.clone(), pass_str(c.pass)]).collect();
            let all = clauses.iter().all(|c| c.pass);
            let list: Vec<Value> =
                clauses.iter().map(|c| json!({"clause": c.clause.to_string(), "statement": c.statement, "pass": c.pass})).collect();
            (all, json!({"clauses": list}), rows)
        }
        Suite::Jacobi => {
            let mut n2_modes = modes_within(depth);
            n2_modes.push(N2Mode::CENTRAL);
            let mut aff = affine_modes_within(depth.floor());
            aff.push(AffineMode::K);
            let n2 = super_jacobi_violation(&n2_modes);
            let af = jacobi_violation(&aff);
            let rows = vec![
                vec!["n2".into(), n2_modes.len().to_string(), pass_str(n2.is_none())],
                vec!["affine sl2".into(), aff.len().to_string(), pass_str(af.is_none())],
            ];
            let result = json!({
                "n2": {"modes": n2_modes.len(), "violation": n2.map(|(a, b, c)| format!("{a} {b} {c}"))},
                "affine": {"modes": aff.len(), "violation": af.map(|(a, b, c)| format!("{a} {b} {c}"))},
            });
            (n2.is_none() && af.is_none(), result, rows)
        }
        Suite::CasimirIdentity => {
            let sign = [-1, 1]
                .into_iter()
                .find(|&s| verify_antiks(&m, HalfInt::int(1), s).map(|r| r.passed()).unwrap_or(false))
                .unwrap_or(1);
            let mut rows = Vec::new();
            let mut entries = Vec::new();
            let mut all = true;
            let points: Vec<(ExactRational, ExactRational, Option<i64>)> = match enumerate_w(&m) {
                Ok(w) => w.into_iter().map(|e| (e.h, e.q, Some(e.r))).collect(),
                Err(_) => vec![(crate::rational::q(0), crate::rational::q(0), None)],
            };
            for (h, qq, r) in points {
                let rep = casimir_identity_check(&h, &qq, &m, sign)?;
                let lemma = r.map(|r| casimir_witness_check(&h, &qq, &m, r));
                let ok = rep.passed() && lemma.unwrap_or(true);
                all &= ok;
                let computed = rep.computed.as_ref().map(fr);
                rows.push(vec![fr(&h), fr(&qq), fr(&rep.expected), computed.clone().unwrap_or_else(|| "-".into()), pass_str(ok)]);
                entries.push(json!({"h": fr(&h), "q": fr(&qq), "expected": fr(&rep.expected), "computed": computed, "witness_r": r, "pass": ok}));
            }
            (all, json!({"y_sign": sign, "points": entries}), rows)
        }
    };
    let header: &[&str] = match suite {
        Suite::Ks => &["variant", "status"],
        Suite::AntiKs => &["normalization", "check", "status"],
        Suite::Fminus => &["clause", "statement", "status"],
        Suite::Jacobi => &["algebra", "modes", "status"],
        Suite::CasimirIdentity => &["h", "q", "expected", "computed", "status"],
    };
    let rec = json!({"command": "verify", "inputs": inputs, "result": result, "pass": passed});
    let mut out = Output::new(rec).table(header, rows);
    out.passed = passed;
    Ok(out)
}

fn pass_str(b: bool) -> String {
    if b { "pass" } else { "FAIL" }.to_string()
}

/// Parse, execute and emit; returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = if code == EXIT_OK { write!(stdout, "{e}") } else { write!(stderr, "{e}") };
            return code;
        }
    };
    let out = match execute(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let text = out.render(cli.format);
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                return EXIT_USAGE;
            }
        }
        None => {
            let _ = stdout.write_all(text.as_bytes());
        }
    }
    if out.passed {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}
