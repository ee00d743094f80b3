//! `hitcube` command-line front end.
//!
//! Exit codes: 0 success, 1 a claim or check failed, 2 usage or input
//! error, 3 a budget ran out, 4 a certified value contradicts a proven bound.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use hitcube::clause::{Clause, ClauseSet};
use hitcube::constructions::{self, ConstructionError, DEFAULT_FK_CAP};
use hitcube::dimacs::{parse_any, to_dimacs_string};
use hitcube::report::WitnessReport;
use hitcube::sat::{self, Budget, KernelError};
use hitcube::search::{self, Quantity, SearchError, SearchMode, SearchOptions};
use hitcube::sequences::{self, A2Table, S2PrimeTable, SeqError};
use hitcube::transforms::{self, TransformError};

const SCHEMA: u64 = 1;

#[derive(Parser, Debug)]
#[command(name = "hitcube", version, about = "Hitting clause-sets, full clauses and the S2 sequence family")]
struct Cli {
    /// Largest 2^n the exhaustive SAT path may enumerate.
    #[arg(long, global = true, env = "HITCUBE_ASSIGNMENT_CAP", default_value_t = Budget::default().max_assignments,
          value_parser = clap::value_parser!(u64).range(1..))]
    assignment_cap: u64,
    /// Decision nodes the backtracking SAT path may open.
    #[arg(long, global = true, env = "HITCUBE_NODE_CAP", default_value_t = Budget::default().max_nodes,
          value_parser = clap::value_parser!(u64).range(1..))]
    node_cap: u64,
    /// Diagnostics on standard error (repeat for more).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tabulate a sequence, or check the identities between them.
    Seq(SeqArgs),
    /// Measures and kernel verdicts for a clause-set.
    Inspect(InspectArgs),
    /// Check claims about a clause-set; exit 1 if one fails.
    Verify(VerifyArgs),
    /// Apply one clause-set operation.
    Transform(TransformArgs),
    /// Build a witness clause-set.
    Construct(ConstructArgs),
    /// Brute-force search for one of the four extremal quantities.
    Search(SearchArgs),
    /// Table of extremal values for deficiencies 1..=kmax.
    Table1(TableArgs),
    /// Run the built-in invariant suite.
    Selftest,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Tsv,
    Json,
    Dimacs,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SeqName {
    S2,
    A2,
    S2prime,
    Index,
    Slack,
    Ruler,
    Nm,
    Nm1,
    Check,
}

#[derive(Args, Debug)]
struct SeqArgs {
    #[arg(value_enum)]
    name: SeqName,
    #[arg(long, default_value_t = 30)]
    upto: u64,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    format: Format,
}

#[derive(Args, Debug)]
struct InspectArgs {
    /// DIMACS or JSON file; `-` for standard input.
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Claim {
    Hitting,
    Unsat,
    Mu,
    Uhit,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    input: PathBuf,
    #[arg(long, value_enum, value_delimiter = ',', required = true)]
    claims: Vec<Claim>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Op {
    Resolve,
    Extend,
    Expand,
    Dp,
}

#[derive(Args, Debug)]
struct TransformArgs {
    input: PathBuf,
    #[arg(long, value_enum)]
    op: Op,
    /// Clause as space- or comma-separated literals, e.g. "1 -2".
    #[arg(long, allow_hyphen_values = true)]
    clause: Option<String>,
    #[arg(long)]
    var: Option<u32>,
    #[arg(long)]
    m: Option<usize>,
    /// Report measures before and after on standard error.
    #[arg(long)]
    audit: bool,
    #[arg(long, value_enum, default_value_t = Format::Dimacs)]
    format: Format,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum Which {
    Fk,
    Mu7,
    Uhit7,
    A4chain,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    #[arg(value_enum)]
    which: Which,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_FK_CAP)]
    cap: u64,
    #[arg(long, value_enum, default_value_t = Format::Dimacs)]
    format: Format,
    /// Write each clause-set to a file in this directory instead of stdout.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// Include the expansion steps (fk, json only).
    #[arg(long)]
    trace: bool,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long, value_parser = parse_quantity)]
    quantity: Quantity,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    k: u64,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    nmax: u32,
    /// Node cap for MU enumeration.
    #[arg(long, env = "HITCUBE_SEARCH_BUDGET", default_value_t = search::DEFAULT_NODE_BUDGET,
          value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    /// Seed for sampled mode; exhaustive modes ignore it.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = search::DEFAULT_SAMPLES)]
    samples: u64,
    /// Also write the witness as DIMACS to this file.
    #[arg(long)]
    witness_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long, default_value_t = 13, value_parser = clap::value_parser!(u64).range(1..=64))]
    kmax: u64,
    /// Cube dimension for the partition landscape feeding lower bounds.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..=4))]
    nmax: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn parse_quantity(s: &str) -> Result<Quantity, String> {
    s.parse()
}

#[derive(Debug)]
enum Failure {
    Claim(String),
    Usage(String),
    Budget(String),
    Contradiction(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Claim(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Budget(_) => 3,
            Failure::Contradiction(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Claim(m) | Failure::Usage(m) | Failure::Budget(m) | Failure::Contradiction(m) => m,
        }
    }
}

impl From<KernelError> for Failure {
    fn from(e: KernelError) -> Self {
        match e {
            KernelError::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            KernelError::Inconsistent(_) => Failure::Claim(e.to_string()),
        }
    }
}

impl From<SeqError> for Failure {
    fn from(e: SeqError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<TransformError> for Failure {
    fn from(e: TransformError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<ConstructionError> for Failure {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::Kernel(k) => k.into(),
            ConstructionError::Verification(m) => Failure::Claim(m),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::Contradiction(m) => Failure::Contradiction(m),
            SearchError::Kernel(k) => k.into(),
            SearchError::Construction(c) => c.into(),
            SearchError::WitnessRejected(m) => Failure::Claim(m),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = Budget { max_assignments: cli.assignment_cap, max_nodes: cli.node_cap };
    let res = match cli.command {
        Command::Seq(a) => run_seq(a),
        Command::Inspect(a) => run_inspect(a, &budget),
        Command::Verify(a) => run_verify(a, &budget),
        Command::Transform(a) => run_transform(a),
        Command::Construct(a) => run_construct(a, &budget),
        Command::Search(a) => run_search(a, &budget, cli.verbose),
        Command::Table1(a) => run_table(a, &budget),
        Command::Selftest => run_selftest(&budget),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("hitcube: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn emit_json(command: &str, payload: impl Serialize) -> Outcome {
    let mut v = serde_json::to_value(payload).expect("payload serializes");
    let obj = match v {
        Value::Object(ref mut m) => m,
        _ => unreachable!("payloads are objects"),
    };
    obj.insert("schema".into(), json!(SCHEMA));
    obj.insert("command".into(), json!(command));
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, &v).map_err(io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

fn read_input(path: &Path) -> Result<ClauseSet, Failure> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
    };
    parse_any(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn parse_clause(s: &str) -> Result<Clause, Failure> {
    let ints = s
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty() && *t != "0")
        .map(|t| t.parse::<i32>().map_err(|_| Failure::Usage(format!("bad literal `{t}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    Clause::from_ints(&ints).map_err(|e| Failure::Usage(e.to_string()))
}

fn dimacs_with_report(f: &ClauseSet, r: &WitnessReport) -> String {
    format!("c report {}\n{}", serde_json::to_string(r).expect("report serializes"), to_dimacs_string(f))
}

fn run_seq(a: SeqArgs) -> Outcome {
    let upto = a.upto;
    if upto > 10_000_000 {
        return Err(Failure::Usage("--upto is limited to 10^7".into()));
    }
    let (name, start, values): (&str, u64, Vec<u64>) = match a.name {
        SeqName::S2 => ("s2", 0, sequences::s2_table(upto as usize).values),
        SeqName::A2 => ("a2", 0, A2Table::with_prefix(upto as usize).to_table().values),
        SeqName::S2prime => {
            let mut v = S2PrimeTable::with_prefix(upto as usize).to_table().values;
            v.truncate(upto as usize + 1);
            ("s2prime", 0, v)
        }
        SeqName::Index | SeqName::Slack => {
            let mut t = S2PrimeTable::with_prefix(upto as usize + 1);
            let v = (0..=upto)
                .map(|k| if matches!(a.name, SeqName::Index) { t.index(k) } else { t.slack(k) })
                .collect::<Result<Vec<_>, _>>()?;
            (if matches!(a.name, SeqName::Index) { "index" } else { "slack" }, 0, v)
        }
        SeqName::Ruler => {
            ("ruler", 1, (1..=upto).map(|n| sequences::ruler(n).map(u64::from)).collect::<Result<_, _>>()?)
        }
        SeqName::Nm => ("nm", 1, (1..=upto).map(sequences::non_mersenne).collect::<Result<_, _>>()?),
        SeqName::Nm1 => ("nm1", 1, (1..=upto).map(sequences::non_mersenne1).collect::<Result<_, _>>()?),
        SeqName::Check => {
            let findings = sequences::check_identities(upto as usize)?;
            if a.format == Format::Json {
                emit_json("seq", json!({ "sequence": "check", "upto": upto, "findings": findings }))?;
            } else {
                for f in &findings {
                    println!("{}\t{}\t{}", f.law, f.k, f.detail);
                }
                println!("checked 0..={upto}: {} finding(s)", findings.len());
            }
            return if findings.is_empty() {
                Ok(())
            } else {
                Err(Failure::Claim(format!("{} identity violation(s)", findings.len())))
            };
        }
    };
    match a.format {
        Format::Json => emit_json("seq", json!({ "sequence": name, "start": start, "values": values })),
        Format::Tsv | Format::Text => {
            let mut out = io::stdout().lock();
            for (i, v) in values.iter().enumerate() {
                writeln!(out, "{}\t{v}", start + i as u64)?;
            }
            Ok(())
        }
        Format::Dimacs => Err(Failure::Usage("seq supports --format tsv or json".into())),
    }
}

fn print_report_text(r: &WitnessReport) {
    let opt = |b: Option<bool>| b.map_or("unknown (budget)".to_string(), |b| b.to_string());
    println!("n\t{}", r.n);
    println!("c\t{}", r.c);
    println!("deficiency\t{}", r.deficiency);
    println!("nfc\t{}", r.nfc);
    println!("min_var_degree\t{}", r.min_var_degree.map_or("-".to_string(), |d| d.to_string()));
    println!("hitting\t{}", r.is_hitting);
    println!("weight_sum_is_one\t{}", r.weight_sum_is_one);
    println!("unsat\t{}", opt(r.is_unsat));
    println!("mu\t{}", opt(r.is_mu));
    println!("uhit\t{}", opt(r.is_uhit));
}

fn run_inspect(a: InspectArgs, budget: &Budget) -> Outcome {
    let f = read_input(&a.input)?;
    let r = WitnessReport::verify(&f, budget)?;
    match a.format {
        Format::Json => {
            let degrees: Vec<(u32, usize)> = f.var_degrees().iter().map(|(&v, &d)| (v, d)).collect();
            emit_json("inspect", json!({ "report": r, "var_degrees": degrees }))
        }
        _ => {
            print_report_text(&r);
            Ok(())
        }
    }
}

fn run_verify(a: VerifyArgs, budget: &Budget) -> Outcome {
    let f = read_input(&a.input)?;
    let mut results = Vec::new();
    let mut undecided = false;
    for &claim in &a.claims {
        let verdict = match claim {
            Claim::Hitting => Ok(f.is_hitting()),
            Claim::Unsat => sat::is_satisfiable(&f, budget).map(|s| !s),
            Claim::Mu => sat::is_mu(&f, budget),
            Claim::Uhit => sat::is_uhit(&f, budget),
        };
        let v = match verdict {
            Ok(b) => Some(b),
            Err(KernelError::BudgetExceeded { .. }) => {
                undecided = true;
                None
            }
            Err(e) => return Err(e.into()),
        };
        results.push((claim, v));
    }
    if a.format == Format::Json {
        let claims: Vec<Value> = results.iter().map(|(c, v)| json!({ "claim": c, "holds": v })).collect();
        emit_json("verify", json!({ "claims": claims }))?;
    } else {
        for (c, v) in &results {
            let s = v.map_or("unknown", |b| if b { "holds" } else { "fails" });
            println!("{}\t{s}", serde_json::to_value(c).unwrap().as_str().unwrap());
        }
    }
    if results.iter().any(|(_, v)| *v == Some(false)) {
        Err(Failure::Claim("a claim does not hold".into()))
    } else if undecided {
        Err(Failure::Budget("a claim could not be decided within the budget".into()))
    } else {
        Ok(())
    }
}

fn run_transform(a: TransformArgs) -> Outcome {
    let f = read_input(&a.input)?;
    let need_var = || a.var.ok_or_else(|| Failure::Usage("--var is required".into()));
    let need_clause =
        || a.clause.as_deref().ok_or_else(|| Failure::Usage("--clause is required".into())).and_then(parse_clause);
    let (g, info): (ClauseSet, Value) = match a.op {
        Op::Resolve => {
            let (g, s) = transforms::full_subsumption_resolution(&f, &need_clause()?, need_var()?)?;
            (g, json!({ "strictness": s }))
        }
        Op::Extend => {
            let (g, s) = transforms::full_subsumption_extension(&f, &need_clause()?, need_var()?)?;
            (g, json!({ "strictness": s }))
        }
        Op::Expand => {
            let m = a.m.ok_or_else(|| Failure::Usage("--m is required".into()))?;
            let (g, step) = transforms::full_m_expansion(&f, m, None)?;
            (g, json!({ "step": step }))
        }
        Op::Dp => {
            let d = transforms::dp_reduction(&f, need_var()?)?;
            let skipped: Vec<_> = d.skipped_pairs.iter().map(|(c, e)| (c.to_ints(), e.to_ints())).collect();
            (d.result, json!({ "skipped_pairs": skipped }))
        }
    };
    if a.audit {
        let before = WitnessReport::measure(&f);
        let after = WitnessReport::measure(&g);
        eprintln!(
            "audit: n {} -> {}, c {} -> {}, deficiency {} -> {}, nfc {} -> {}",
            before.n, after.n, before.c, after.c, before.deficiency, after.deficiency, before.nfc, after.nfc
        );
    }
    match a.format {
        Format::Json => emit_json("transform", json!({ "result": g, "info": info })),
        _ => {
            print!("c transform {}\n{}", info, to_dimacs_string(&g));
            Ok(())
        }
    }
}

fn write_or_print(out_dir: Option<&Path>, file: &str, body: &str) -> Outcome {
    match out_dir {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            fs::write(dir.join(file), body)?;
            Ok(())
        }
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn run_construct(a: ConstructArgs, budget: &Budget) -> Outcome {
    if a.k.is_some() && a.which != Which::Fk {
        return Err(Failure::Usage("--k only applies to fk".into()));
    }
    if a.trace && a.which != Which::Fk {
        return Err(Failure::Usage("--trace only applies to fk".into()));
    }
    let json_mode = match a.format {
        Format::Json => true,
        Format::Dimacs => false,
        _ => return Err(Failure::Usage("construct supports --format dimacs or json".into())),
    };
    let out_dir = a.out_dir.as_deref();
    let single = |name: &str, f: &ClauseSet, r: &WitnessReport, extra: Value| -> Outcome {
        if json_mode {
            let mut v = json!({ "name": name, "clause_set": f, "report": r });
            if let (Value::Object(m), Value::Object(e)) = (&mut v, extra) {
                m.extend(e);
            }
            v["schema"] = json!(SCHEMA);
            v["command"] = json!("construct");
            let body = serde_json::to_string_pretty(&v).expect("serializes") + "\n";
            write_or_print(out_dir, &format!("{name}.json"), &body)
        } else {
            write_or_print(out_dir, &format!("{name}.cnf"), &dimacs_with_report(f, r))
        }
    };
    match a.which {
        Which::Fk => {
            let k = a.k.ok_or_else(|| Failure::Usage("--k is required for fk".into()))?;
            let t = constructions::build_fk_with_cap(k, a.cap, budget)?;
            let extra = if a.trace { json!({ "chain": t.chain, "steps": t.steps }) } else { json!({}) };
            single(&format!("F_{k}"), &t.final_set, &t.report, extra)
        }
        Which::Mu7 | Which::Uhit7 => {
            let (name, f) = if a.which == Which::Mu7 {
                ("mu7", constructions::witness_mu_def7())
            } else {
                ("uhit7", constructions::witness_uhit_def7())
            };
            let r = WitnessReport::verify(&f, budget)?;
            single(name, &f, &r, json!({}))
        }
        Which::A4chain => {
            let chain = constructions::a4_chain(budget)?;
            if json_mode {
                let steps: Vec<Value> = chain
                    .iter()
                    .map(|s| json!({ "pivot": s.pivot, "resolvent": s.resolvent, "clause_set": s.clause_set, "report": s.report }))
                    .collect();
                let body = serde_json::to_string_pretty(
                    &json!({ "schema": SCHEMA, "command": "construct", "name": "a4chain", "steps": steps }),
                )
                .expect("serializes")
                    + "\n";
                write_or_print(out_dir, "a4chain.json", &body)
            } else {
                let dir = out_dir.ok_or_else(|| Failure::Usage("a4chain in DIMACS form needs --out-dir".into()))?;
                for (i, s) in chain.iter().enumerate() {
                    write_or_print(
                        Some(dir),
                        &format!("a4chain_{i}.cnf"),
                        &dimacs_with_report(&s.clause_set, &s.report),
                    )?;
                }
                Ok(())
            }
        }
    }
}

fn run_search(a: SearchArgs, budget: &Budget, verbose: u8) -> Outcome {
    let sampled = a.quantity.hitting() && a.nmax > search::EXHAUSTIVE_UHIT_MAX_N;
    if a.seed.is_some() && !sampled {
        eprintln!("hitcube: --seed ignored, this search is exhaustive");
    }
    let opts = SearchOptions {
        node_budget: a.budget,
        samples: a.samples,
        seed: a.seed.unwrap_or(search::DEFAULT_SEED),
        kernel: *budget,
    };
    let cert = search::search(a.quantity, a.k, a.nmax, &opts)?;
    if verbose > 0 {
        eprintln!("hitcube: {} nodes, mode {:?}", cert.nodes, cert.mode);
    }
    let witness_dimacs = cert.witness.as_ref().map(to_dimacs_string);
    if let (Some(path), Some(w)) = (&a.witness_out, &witness_dimacs) {
        fs::write(path, w)?;
    }
    emit_json("search", json!({ "certificate": cert, "witness_dimacs": witness_dimacs }))?;
    if cert.budget_exhausted {
        return Err(Failure::Budget("search node budget exhausted; certificate is partial".into()));
    }
    debug_assert!(cert.mode != SearchMode::SampledExpansions || !cert.exhaustive_over_n_max);
    Ok(())
}

fn run_table(a: TableArgs, budget: &Budget) -> Outcome {
    let land = search::uhit_landscape(a.nmax, true)?;
    let t = search::table1(a.kmax, Some(&land), &[], budget)?;
    match a.format {
        Format::Json => emit_json("table1", &t)?,
        Format::Text | Format::Tsv => print!("{}", t.render_text()),
        Format::Dimacs => return Err(Failure::Usage("table1 supports --format text or json".into())),
    }
    if t.findings.is_empty() {
        Ok(())
    } else {
        Err(Failure::Claim(format!("{} table finding(s)", t.findings.len())))
    }
}

fn run_selftest(budget: &Budget) -> Outcome {
    let mut failed = Vec::new();
    let mut check = |name: &str, ok: Result<bool, String>| {
        let ok = ok.unwrap_or_else(|e| {
            eprintln!("{name}: {e}");
            false
        });
        println!("{}\t{name}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            failed.push(name.to_string());
        }
    };
    check(
        "sequence identities to 10^4",
        sequences::check_identities(10_000).map(|f| f.is_empty()).map_err(|e| e.to_string()),
    );
    check(
        "F_k for k <= 13",
        (1..=13u64)
            .map(|k| {
                let t = constructions::build_fk(k, budget).map_err(|e| e.to_string())?;
                let replay = t.replay().map_err(|e| e.to_string())?;
                Ok(t.report.is_uhit == Some(true)
                    && t.report.deficiency == k as i64
                    && t.report.nfc as u64 == sequences::s2_direct(k)
                    && replay == t.final_set)
            })
            .try_fold(true, |acc, r: Result<bool, String>| r.map(|b| acc && b)),
    );
    check(
        "MU deficiency-7 witness",
        WitnessReport::verify(&constructions::witness_mu_def7(), budget)
            .map(|r| r.deficiency == 7 && r.nfc == 9 && r.is_mu == Some(true) && !r.is_hitting)
            .map_err(|e| e.to_string()),
    );
    check(
        "UHIT deficiency-7 witness",
        WitnessReport::verify(&constructions::witness_uhit_def7(), budget)
            .map(|r| r.deficiency == 7 && r.is_uhit == Some(true) && r.min_var_degree == Some(10))
            .map_err(|e| e.to_string()),
    );
    check(
        "A_4 resolution chain",
        constructions::a4_chain(budget)
            .map(|c| {
                c[1..].iter().map(|s| (s.report.deficiency, s.report.min_var_degree)).collect::<Vec<_>>()
                    == vec![(11, Some(14)), (10, Some(13)), (9, Some(12)), (8, Some(11))]
            })
            .map_err(|e| e.to_string()),
    );
    check(
        "table of extremal values",
        search::uhit_landscape(3, true)
            .and_then(|l| search::table1(13, Some(&l), &[], budget))
            .map(|t| t.findings.is_empty())
            .map_err(|e| e.to_string()),
    );
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Claim(format!("selftest failed: {}", failed.join(", "))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_kinds_map_to_exit_codes() {
        let contradiction: Failure = SearchError::Contradiction("x".into()).into();
        assert_eq!(contradiction.code(), 4);
        let budget: Failure = KernelError::BudgetExceeded { what: "nodes", cap: 1 }.into();
        assert_eq!(budget.code(), 3);
        let nested: Failure = SearchError::Kernel(KernelError::BudgetExceeded { what: "nodes", cap: 1 }).into();
        assert_eq!(nested.code(), 3);
        let usage: Failure = SearchError::ZeroK.into();
        assert_eq!(usage.code(), 2);
        let claim: Failure = ConstructionError::Verification("x".into()).into();
        assert_eq!(claim.code(), 1);
    }

    #[test]
    fn clause_arguments() {
        assert_eq!(parse_clause("1 -2").unwrap().to_ints(), vec![1, -2]);
        assert_eq!(parse_clause("3,-1,0").unwrap().to_ints(), vec![-1, 3]);
        assert!(parse_clause("1 -1").is_err());
        assert!(parse_clause("x").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
