use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use g2flop::bundles::{cohomology_f, parse_expr, BundleCohomology, BundleExpr, ParseError};
use g2flop::checks::{self, Status};
use g2flop::coxring::{self, GradedSeries, Side};
use g2flop::rootdata::{RootSystem, Weight, G2_CARTAN};
use g2flop::sod::{self, Certificate, ReplayOptions};
use g2flop::totalspace::hom_v;
use g2flop::weylbott::{weyl_dim, CohomologyProfile, FilteredOutcome, ProfileEntry};

/// Exact cohomology, Ext and mutation checks for the G2 flag variety.
///
/// Bundle syntax: O(a,b) or O(H-2h), U, S, E(a,b), F(a,b), Sym^m X,
/// postfix ' for the dual and (twist), * for tensor, [..] for grouping.
#[derive(Parser, Debug)]
#[command(name = "g2flop", version)]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Truncation bound for Hilbert functions and check-all.
    #[arg(long, global = true, default_value_t = 8, value_name = "M")]
    trunc: u64,

    /// Print the compiled-in conventions and exit.
    #[arg(long)]
    convention_dump: bool,

    /// Override the Cartan matrix, row-major "a,b,c,d".
    #[arg(long, global = true, value_name = "MATRIX")]
    cartan: Option<String>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Root data: simple and positive roots, ρ, Weyl group.
    Roots,
    /// Dimension of the irreducible representation with highest weight (a,b).
    Dim {
        #[arg(allow_negative_numbers = true)]
        a: i64,
        #[arg(allow_negative_numbers = true)]
        b: i64,
    },
    /// Cohomology of a bundle on the flag variety.
    Coh { expr: String },
    /// Ext groups on V between two bundles pushed forward from F.
    Homv { a: String, b: String },
    /// Hilbert functions of the Cox rings.
    Hilbert {
        #[arg(value_enum)]
        ring: Ring,
        /// (k,l) for r and s; (side, n) for git. Omit for a table up to --trunc.
        #[arg(allow_negative_numbers = true)]
        args: Vec<String>,
    },
    /// Replay the mutation sequence between the two decompositions.
    SodReplay {
        /// Leave out a step (for negative controls).
        #[arg(long, value_name = "STEP")]
        skip_step: Vec<usize>,
    },
    /// Run every verification suite.
    CheckAll,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Ring {
    R,
    S,
    Git,
}

#[derive(Serialize)]
#[serde(rename_all = "lowercase")]
enum RunStatus {
    Pass,
    Fail,
    Indeterminate,
}

#[derive(Serialize)]
struct Report {
    command: String,
    inputs: Value,
    status: RunStatus,
    profile: Vec<ProfileEntry>,
    certificates: Vec<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<Value>,
}

struct Output {
    report: Report,
    text: String,
}

enum CliError {
    Usage(String),
    Parse { input: String, err: ParseError },
    Engine(g2flop::Error),
}

impl From<g2flop::Error> for CliError {
    fn from(e: g2flop::Error) -> Self {
        match e {
            g2flop::Error::Parse(p) => CliError::Parse {
                input: String::new(),
                err: p,
            },
            other => CliError::Engine(other),
        }
    }
}

fn parse(text: &str) -> Result<BundleExpr, CliError> {
    parse_expr(text).map_err(|err| CliError::Parse {
        input: text.to_string(),
        err,
    })
}

fn root_system(cartan: Option<&str>) -> Result<RootSystem, CliError> {
    let Some(text) = cartan else {
        return Ok(RootSystem::g2());
    };
    let nums: Vec<i64> = text
        .split(|c: char| c == ',' || c == ';' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| CliError::Usage(format!("bad Cartan entry '{s}'"))))
        .collect::<Result<_, _>>()?;
    if nums.len() != 4 {
        return Err(CliError::Usage(format!(
            "--cartan needs 4 entries for a rank-2 matrix, got {}",
            nums.len()
        )));
    }
    Ok(RootSystem::new(vec![nums[0..2].to_vec(), nums[2..4].to_vec()])?)
}

fn report(command: &str, inputs: Value, status: RunStatus) -> Report {
    Report {
        command: command.to_string(),
        inputs,
        status,
        profile: Vec::new(),
        certificates: Vec::new(),
        result: None,
    }
}

fn conventions(rs: &RootSystem) -> Output {
    let value = json!({
        "cartan": rs.cartan,
        "cartan_convention": "c_ij = <alpha_i, alpha_j^vee>; row i is alpha_i in fundamental-weight coordinates",
        "simple_roots": rs.simple_roots.iter().map(|r| &r.weight_coords).collect::<Vec<_>>(),
        "long_root": "alpha_1",
        "symmetrizer": rs.symmetrizer,
        "rho": rs.rho,
        "H": [1, 0],
        "h": [0, 1],
        "degree_orientation": "dominant weights have sections in degree 0",
        "profile_labels": "H^d is the dual of V(nu)",
        "koszul": "O_V(h+H) -> O_V -> O_F; second term of hom_V in degree 1",
        "default_cartan": G2_CARTAN.iter().map(|r| r.to_vec()).collect::<Vec<_>>(),
    });
    let mut text = String::new();
    for (k, v) in value.as_object().unwrap() {
        let _ = writeln!(text, "{k}: {v}");
    }
    let mut r = report("convention-dump", json!({}), RunStatus::Pass);
    r.result = Some(value);
    Output { report: r, text }
}

fn roots(rs: &RootSystem) -> Output {
    let mut text = String::new();
    let _ = writeln!(text, "cartan: {:?}", rs.cartan);
    let _ = writeln!(text, "rho: {}", rs.rho);
    let _ = writeln!(text, "|W|: {}", rs.weyl_order);
    let _ = writeln!(text, "longest element length: {}", rs.longest_element().length);
    let _ = writeln!(text, "positive roots ({}):", rs.positive_roots.len());
    let mut rows = Vec::new();
    for r in &rs.positive_roots {
        let _ = writeln!(
            text,
            "  {:>8}  simple {:?}  |α|² {}",
            r.weight_coords.to_string(),
            r.simple_coords,
            r.length_sq
        );
        rows.push(json!({
            "weight": r.weight_coords,
            "simple": r.simple_coords,
            "length_sq": r.length_sq,
        }));
    }
    let mut rep = report("roots", json!({}), RunStatus::Pass);
    rep.result = Some(json!({
        "cartan": rs.cartan,
        "rho": rs.rho,
        "weyl_order": rs.weyl_order,
        "longest_length": rs.longest_element().length,
        "positive_roots": rows,
    }));
    Output { report: rep, text }
}

fn dim(rs: &RootSystem, a: i64, b: i64) -> Result<Output, CliError> {
    let d = weyl_dim(rs, &Weight::g2(a, b))?;
    let mut rep = report("dim", json!({ "weight": [a, b] }), RunStatus::Pass);
    rep.result = Some(json!(d));
    Ok(Output {
        report: rep,
        text: format!("{d}\n"),
    })
}

fn describe_routes(c: &BundleCohomology, text: &mut String) {
    match &c.filtration {
        FilteredOutcome::Determined(p) => {
            let _ = writeln!(text, "  line-bundle filtration: {p}");
        }
        FilteredOutcome::Indeterminate(terms) => {
            let _ = writeln!(text, "  line-bundle filtration: undetermined, pieces");
            for t in terms {
                let _ = writeln!(text, "    O{}: {}", t.weight, t.profile);
            }
        }
    }
    if let Some(r) = &c.levi {
        let hws: Vec<String> = r.summands.iter().map(|w| w.to_string()).collect();
        let _ = writeln!(text, "  Levi summands on {:?} {}: {}", r.parabolic, hws.join(" "), r.profile);
    }
    if let Some(r) = &c.fibre {
        let _ = writeln!(text, "  acyclic along the fibres over G/{:?}", r.parabolic);
    }
    if let Some(r) = &c.pieces {
        let _ = writeln!(text, "  filtration from U ⊂ S:");
        for p in &r.pieces {
            let shown = p.profile.as_ref().map_or("undetermined".to_string(), |x| x.to_string());
            let _ = writeln!(text, "    {}: {}", p.expr, shown);
        }
    }
}

fn status_of(p: Option<&CohomologyProfile>) -> RunStatus {
    if p.is_some() {
        RunStatus::Pass
    } else {
        RunStatus::Indeterminate
    }
}

fn coh(rs: &RootSystem, text_in: &str) -> Result<Output, CliError> {
    let e = parse(text_in)?;
    let c = cohomology_f(rs, &e)?;
    let resolved = c.resolved().cloned();
    let mut text = format!("H({e}) = {}\n", resolved.as_ref().map_or("indeterminate".into(), |p| p.to_string()));
    describe_routes(&c, &mut text);
    let mut rep = report("coh", json!({ "expr": e.to_string() }), status_of(resolved.as_ref()));
    rep.profile = resolved.map(|p| p.entries().to_vec()).unwrap_or_default();
    rep.result = Some(serde_json::to_value(&c).expect("serializable"));
    Ok(Output { report: rep, text })
}

fn homv(rs: &RootSystem, a: &str, b: &str) -> Result<Output, CliError> {
    let (ea, eb) = (parse(a)?, parse(b)?);
    let r = hom_v(rs, &ea, &eb)?;
    let mut text = format!("hom_V({ea}, {eb}) = {r}\n");
    let _ = writeln!(text, "  χ = {}", r.euler_characteristic);
    let _ = writeln!(text, " degree 0 term:");
    describe_routes(&r.first, &mut text);
    let _ = writeln!(text, " degree 1 term (twisted by -h-H):");
    describe_routes(&r.second, &mut text);
    let mut rep = report(
        "homv",
        json!({ "a": ea.to_string(), "b": eb.to_string() }),
        status_of(r.profile.as_ref()),
    );
    rep.profile = r.profile.as_ref().map(|p| p.entries().to_vec()).unwrap_or_default();
    rep.result = Some(serde_json::to_value(&r).expect("serializable"));
    Ok(Output { report: rep, text })
}

fn int_arg(s: &str) -> Result<i64, CliError> {
    s.parse().map_err(|_| CliError::Usage(format!("expected an integer, got '{s}'")))
}

fn series_text(s: &GradedSeries) -> String {
    let mut text = format!("{:?} truncated at M = {}\n", s.grading, s.truncation);
    for e in &s.entries {
        let deg: Vec<String> = e.degree.iter().map(|d| d.to_string()).collect();
        let _ = writeln!(text, "  ({}) {}", deg.join(","), e.dim);
    }
    text
}

fn hilbert(rs: &RootSystem, ring: Ring, args: &[String], trunc: u64) -> Result<Output, CliError> {
    let single = |d: u64, inputs: Value| {
        let mut rep = report("hilbert", inputs, RunStatus::Pass);
        rep.result = Some(json!(d));
        Output {
            report: rep,
            text: format!("{d}\n"),
        }
    };
    match (ring, args) {
        (Ring::R, [k, l]) => {
            let (k, l) = (int_arg(k)?, int_arg(l)?);
            Ok(single(coxring::r_dim(rs, k, l)?, json!({ "ring": "r", "k": k, "l": l })))
        }
        (Ring::S, [k, l]) => {
            let (k, l) = (int_arg(k)?, int_arg(l)?);
            if k < 0 || l < 0 {
                return Err(CliError::Usage("s needs k, l >= 0".into()));
            }
            Ok(single(
                coxring::s_dim(rs, k, l, trunc)?,
                json!({ "ring": "s", "k": k, "l": l, "trunc": trunc }),
            ))
        }
        (Ring::Git, [side, n]) => {
            let side: Side = side.parse()?;
            let n = u64::try_from(int_arg(n)?).map_err(|_| CliError::Usage("git needs n >= 0".into()))?;
            Ok(single(
                coxring::git_piece(rs, side, n, trunc)?,
                json!({ "ring": "git", "side": side, "n": n, "trunc": trunc }),
            ))
        }
        (ring, []) | (ring @ Ring::Git, [_]) => {
            let series = match (ring, args) {
                (Ring::R, _) => coxring::r_series(rs, trunc)?,
                (Ring::S, _) => coxring::s_series(rs, trunc)?,
                (Ring::Git, [side]) => coxring::git_series(rs, side.parse()?, trunc)?,
                (Ring::Git, _) => coxring::git_series(rs, Side::Plus, trunc)?,
            };
            let mut rep = report("hilbert", json!({ "ring": format!("{ring:?}").to_lowercase(), "trunc": trunc }), RunStatus::Pass);
            let text = series_text(&series);
            rep.result = Some(serde_json::to_value(&series).expect("serializable"));
            Ok(Output { report: rep, text })
        }
        _ => Err(CliError::Usage(
            "usage: hilbert r K L | hilbert s K L | hilbert git SIDE N | hilbert {r|s|git [SIDE]}".into(),
        )),
    }
}

fn sod_replay(rs: &RootSystem, skip: &[usize]) -> Output {
    let r = sod::replay(
        rs,
        &ReplayOptions {
            skip_steps: skip.to_vec(),
        },
    );
    let mut text = String::new();
    for s in &r.steps {
        let _ = writeln!(text, "step {:>2}: {}", s.index, s.description);
        for c in &s.certificates {
            let _ = writeln!(text, "         {c}");
        }
        let _ = writeln!(text, "         [{}]", s.state.join(", "));
    }
    if let Some(f) = &r.failure {
        let _ = writeln!(text, "FAILED at step {}: {}", f.step, f.message);
    } else {
        let _ = writeln!(text, "final:  [{}]", r.final_state.join(", "));
        let _ = writeln!(text, "target: [{}]", r.target.join(", "));
        if r.target_match {
            let _ = writeln!(text, "match: {}", r.conclusion.as_deref().unwrap_or(""));
        } else {
            let _ = writeln!(text, "MISMATCH at positions {:?}", r.mismatches);
        }
    }
    let mut rep = report(
        "sod-replay",
        json!({ "skip_steps": skip }),
        if r.pass { RunStatus::Pass } else { RunStatus::Fail },
    );
    rep.certificates = r.certificates().cloned().collect();
    rep.result = Some(serde_json::to_value(&r).expect("serializable"));
    Output { report: rep, text }
}

fn check_all(rs: &RootSystem, trunc: u64) -> Result<Output, CliError> {
    let suites = checks::check_all(rs, trunc)?;
    let mut text = String::new();
    let mut ok = true;
    for s in &suites {
        ok &= s.passed();
        let _ = writeln!(
            text,
            "{} {:<24} {:>5} checks, {} failed, {} indeterminate",
            if s.passed() { "ok  " } else { "FAIL" },
            s.name,
            s.checks.len(),
            s.count(Status::Fail),
            s.count(Status::Indeterminate)
        );
        for c in s.checks.iter().filter(|c| c.status != Status::Pass) {
            let _ = writeln!(text, "       {:?} {}: expected {}, computed {}", c.status, c.name, c.expected, c.computed);
        }
    }
    let mut rep = report(
        "check-all",
        json!({ "trunc": trunc }),
        if ok { RunStatus::Pass } else { RunStatus::Fail },
    );
    rep.result = Some(serde_json::to_value(&suites).expect("serializable"));
    Ok(Output { report: rep, text })
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let rs = root_system(cli.cartan.as_deref())?;
    if cli.convention_dump {
        return Ok(conventions(&rs));
    }
    match &cli.command {
        None => Err(CliError::Usage("no command given; see --help".into())),
        Some(Command::Roots) => Ok(roots(&rs)),
        Some(Command::Dim { a, b }) => dim(&rs, *a, *b),
        Some(Command::Coh { expr }) => coh(&rs, expr),
        Some(Command::Homv { a, b }) => homv(&rs, a, b),
        Some(Command::Hilbert { ring, args }) => hilbert(&rs, *ring, args, cli.trunc),
        Some(Command::SodReplay { skip_step }) => Ok(sod_replay(&rs, skip_step)),
        Some(Command::CheckAll) => check_all(&rs, cli.trunc),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.report).expect("serializable"));
            } else {
                print!("{}", out.text);
            }
            match out.report.status {
                RunStatus::Fail => ExitCode::from(1),
                RunStatus::Pass | RunStatus::Indeterminate => ExitCode::SUCCESS,
            }
        }
        Err(CliError::Parse { input, err }) => {
            eprintln!("error: {err}");
            if !input.is_empty() {
                eprintln!("  {input}");
                eprintln!("  {}^", " ".repeat(input[..err.pos.min(input.len())].chars().count()));
            }
            ExitCode::from(2)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Engine(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
