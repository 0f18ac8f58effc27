//! Command-line front end: argument definitions, the knot record format, and
//! the report printer. `main` only forwards to [`run`].

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use lmo_splice::checks::{self, SUITES};
use lmo_splice::dedekind::symbol;
use lmo_splice::rational::{fmt_q, parse_q};
use lmo_splice::sl2z::{decompose, Mat2Z};
use lmo_splice::splice::{
    casson_walker, extract_invariants, hopf_chain, is_qhs, kappa, lambda2_splice, lens, linking_matrix,
    rational_surgery, single_color_space, splice_lmo_general, splice_lmo_truncated, unwheel_frame,
    wheeled_invariant, FramingFraction, GluingMatrix, KnotRecord, Parity,
};
use lmo_splice::tridiag::{inverse_corners, kirby_melvin, signature_recursive, Tridiagonal};
use lmo_splice::{Error, Q};

pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NOT_QHS: i32 = 3;
pub const EXIT_CONSISTENCY: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "lmo-splice", version, about = "Exact low-degree LMO invariants of spliced knots")]
pub struct Cli {
    /// Append a `key=value` block after the report.
    #[arg(long, global = true)]
    pub machine: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dedekind symbol S(p/q).
    #[command(allow_negative_numbers = true)]
    Dedekind { p: i64, q: i64 },

    /// Factor (a, b; c, d) in SL2(Z) as G(a_1) ... G(a_n).
    #[command(allow_negative_numbers = true)]
    Decompose { a: i64, b: i64, c: i64, d: i64 },

    /// Signature of the tridiagonal matrix with the given diagonal.
    Signature {
        #[arg(required = true, allow_hyphen_values = true)]
        diagonal: Vec<String>,
    },

    /// Corners of the inverse of a tridiagonal matrix.
    Corners {
        #[arg(required = true, allow_hyphen_values = true)]
        diagonal: Vec<String>,
    },

    /// Both sides of the Kirby-Melvin identity for an integer diagonal.
    #[command(name = "kirby-melvin", allow_negative_numbers = true)]
    KirbyMelvin {
        #[arg(required = true)]
        diagonal: Vec<i64>,
    },

    /// Hopf chain, linking matrix and kappa of a gluing (p, r; q, s).
    #[command(allow_negative_numbers = true)]
    Chain {
        p: i64,
        q: i64,
        r: i64,
        s: i64,
        #[arg(long, default_value = "0/1", allow_hyphen_values = true)]
        framing1: String,
        #[arg(long, default_value = "0/1", allow_hyphen_values = true)]
        framing2: String,
    },

    /// Invariants of the splice of two knots from a record file.
    #[command(allow_negative_numbers = true)]
    Splice {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        knot1: String,
        #[arg(long)]
        knot2: String,
        p: i64,
        q: i64,
        r: i64,
        s: i64,
        /// Print every coefficient of the truncated invariant.
        #[arg(long)]
        general: bool,
        /// Degree cap of the diagram space (4 or 5).
        #[arg(long, default_value_t = 5)]
        cap: usize,
    },

    /// r/s-surgery on a null-framed knot from a record file.
    #[command(allow_negative_numbers = true)]
    Surgery {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        knot: String,
        r: i64,
        s: i64,
    },

    /// Invariants of the lens space L(r, s).
    #[command(allow_negative_numbers = true)]
    Lens { r: i64, s: i64 },

    /// Run property suites; `all` runs every one.
    Verify {
        #[arg(default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(String),
    Failed(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::NotQhs) => EXIT_NOT_QHS,
            CliError::Core(Error::Consistency(_)) | CliError::Failed(_) => EXIT_CONSISTENCY,
            _ => EXIT_VALIDATION,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Failed(e) => write!(f, "{e}"),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// Human-readable lines plus the `key=value` pairs of the machine block.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Report {
    pub lines: Vec<String>,
    pub machine: Vec<(String, String)>,
}

impl Report {
    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn value(&mut self, key: &str, v: impl Into<String>) {
        self.machine.push((key.to_string(), v.into()));
    }

    fn rational(&mut self, label: &str, key: &str, x: &Q) {
        self.line(format!("{label} = {}", fmt_q(x)));
        self.value(key, fmt_q(x));
    }

    pub fn render(&self, machine: bool) -> String {
        let mut out = String::new();
        for l in &self.lines {
            let _ = writeln!(out, "{l}");
        }
        if machine {
            let _ = writeln!(out, "--");
            for (k, v) in &self.machine {
                let _ = writeln!(out, "{k}={v}");
            }
        }
        out
    }
}

/// Parses arguments, runs the command, prints, and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_VALIDATION } else { 0 };
        }
    };
    match execute(&cli.command) {
        Ok(report) => {
            print!("{}", report.render(cli.machine));
            0
        }
        Err(CliError::Failed(report)) => {
            print!("{report}");
            eprintln!("error: property suite failed");
            EXIT_CONSISTENCY
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cmd: &Command) -> CliResult<Report> {
    let mut rep = Report::default();
    match cmd {
        Command::Dedekind { p, q } => {
            let x = symbol(*p, *q)?;
            rep.rational(&format!("S({p}/{q})"), "symbol", &x);
        }
        Command::Decompose { a, b, c, d } => {
            let m = Mat2Z::new(*a, *b, *c, *d);
            let seq = decompose(&m)?;
            let parts: Vec<String> = seq.as_slice().iter().map(|x| format!("G({x})")).collect();
            rep.line(format!("({a}, {b}; {c}, {d}) = {}", parts.join(" ")));
            rep.value("generators", join(seq.as_slice()));
        }
        Command::Signature { diagonal } => {
            let t = tridiagonal(diagonal)?;
            let sig = signature_recursive(&t);
            rep.line(format!("signature = {sig}"));
            rep.value("signature", sig.to_string());
        }
        Command::Corners { diagonal } => {
            let t = tridiagonal(diagonal)?;
            let (a, b, c) = inverse_corners(&t)?;
            rep.rational("inverse[1][1]", "first", &a);
            rep.rational("inverse[1][l]", "off", &b);
            rep.rational("inverse[l][l]", "last", &c);
        }
        Command::KirbyMelvin { diagonal } => {
            let t = Tridiagonal::from_ints(diagonal)?;
            let (lhs, rhs) = kirby_melvin(&t)?;
            rep.rational("lhs", "lhs", &lhs);
            rep.rational("rhs", "rhs", &rhs);
            if lhs != rhs {
                return Err(Error::Consistency("Kirby-Melvin sides differ".into()).into());
            }
        }
        Command::Chain { p, q, r, s, framing1, framing2 } => {
            let g = GluingMatrix::from_i64(*p, *q, *r, *s)?;
            let (f1, f2) = (framing(framing1)?, framing(framing2)?);
            chain_report(&mut rep, &g, &f1, &f2)?;
        }
        Command::Splice { file, knot1, knot2, p, q, r, s, general, cap } => {
            let records = read_records(file)?;
            let k1 = lookup(&records, knot1)?;
            let k2 = lookup(&records, knot2)?;
            let g = GluingMatrix::from_i64(*p, *q, *r, *s)?;
            splice_report(&mut rep, &g, k1, k2, *general, *cap)?;
        }
        Command::Surgery { file, knot, r, s } => {
            let records = read_records(file)?;
            let k = lookup(&records, knot)?;
            let z = rational_surgery(k, *r, *s)?;
            rep.rational("lambda_w", "lambda_w", &z.lambda_w);
            rep.rational("lambda2", "lambda2", &z.lambda2);
        }
        Command::Lens { r, s } => {
            let z = lens(*r, *s)?;
            rep.rational(&format!("lambda_w(L({r}, {s}))"), "lambda_w", &z.lambda_w);
            rep.rational(&format!("lambda2(L({r}, {s}))"), "lambda2", &z.lambda2);
        }
        Command::Verify { suite, seed } => {
            let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite.as_str()] };
            let mut failed = false;
            for name in names {
                let r = checks::run_suite(name, *seed)?;
                rep.line(r.to_string());
                rep.value(&format!("{name}.cases"), r.cases.to_string());
                rep.value(&format!("{name}.failed"), r.failed.to_string());
                failed |= !r.passed();
            }
            if failed {
                return Err(CliError::Failed(rep.render(false)));
            }
        }
    }
    Ok(rep)
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

fn tridiagonal(entries: &[String]) -> CliResult<Tridiagonal> {
    let diag = entries.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>, _>>()?;
    Ok(Tridiagonal::new(diag)?)
}

fn framing(s: &str) -> CliResult<FramingFraction> {
    let x = parse_q(s)?;
    Ok(FramingFraction::from_q(&x))
}

fn chain_report(rep: &mut Report, g: &GluingMatrix, f1: &FramingFraction, f2: &FramingFraction) -> CliResult<()> {
    let (chain, parity) = hopf_chain(g)?;
    let parity = match parity {
        Parity::Even => "even",
        Parity::Odd => "odd",
    };
    rep.line(format!("chain = [{}] ({parity})", join(chain.as_slice())));
    rep.value("chain", join(chain.as_slice()));
    let (ok, lambda) = is_qhs(g, f1, f2);
    rep.rational("lambda", "lambda", &lambda);
    if !ok {
        return Err(Error::NotQhs.into());
    }
    let t = linking_matrix(g, f1, f2)?;
    let diag: Vec<String> = t.diagonal().iter().map(fmt_q).collect();
    rep.line(format!("linking diagonal = [{}]", diag.join(", ")));
    rep.value("linking", diag.join(","));
    rep.rational("kappa", "kappa", &kappa(g, f1, f2)?);
    Ok(())
}

fn splice_report(
    rep: &mut Report,
    g: &GluingMatrix,
    k1: &KnotRecord,
    k2: &KnotRecord,
    general: bool,
    cap: usize,
) -> CliResult<()> {
    chain_report(rep, g, &k1.framing, &k2.framing)?;
    let null = k1.framing.is_null() && k2.framing.is_null();
    let z = if null {
        let res = splice_lmo_truncated(g, k1, k2, cap)?;
        let (lw, l2) = (casson_walker(g, k1, k2)?, lambda2_splice(g, k1, k2)?);
        if lw != res.lambda_w || (cap == 5 && l2 != res.lambda2) {
            return Err(Error::Consistency(format!(
                "engine gives {res}, closed forms give lambda_w = {}, lambda2 = {}",
                fmt_q(&lw),
                fmt_q(&l2)
            ))
            .into());
        }
        res.raw.expect("engine keeps the element")
    } else {
        if cap != 5 {
            return Err(Error::InvalidInput("framed knots need --cap 5".into()).into());
        }
        let z1 = unframed(k1)?;
        let z2 = unframed(k2)?;
        splice_lmo_general(g, &k1.framing, &k2.framing, &z1, &z2)?
    };
    let (lw, l2) = extract_invariants(&z)?;
    rep.rational("lambda_w", "lambda_w", &lw);
    rep.rational("lambda2", "lambda2", &l2);
    if general {
        let b = z.basis();
        for (m, c) in z.terms() {
            let name = if m.classes().is_empty() {
                "1".to_string()
            } else {
                m.classes().iter().map(|i| format!("D{i}")).collect::<Vec<_>>().join("*")
            };
            rep.line(format!("  [{name}] {}", fmt_q(c)));
            rep.value(&format!("coeff.{name}"), fmt_q(c));
        }
        for (i, class) in b.classes().iter().enumerate() {
            rep.line(format!("  D{i}: degree {} {}", class.degree, class.graph()));
        }
    }
    Ok(())
}

// A record with self-linking `u/v` carries the data of the knot as if it
// were null-framed; the framing is then moved into the strut exponent.
fn unframed(k: &KnotRecord) -> CliResult<lmo_splice::diagrams::DiagramElement> {
    let b = single_color_space(5)?;
    let color = b.color("k")?;
    let null = KnotRecord {
        framing: FramingFraction::null(),
        ..k.clone()
    };
    let z = wheeled_invariant(&null, &b, color)?;
    Ok(unwheel_frame(&z, &k.framing.value())?.element)
}

fn lookup<'a>(records: &'a BTreeMap<String, KnotRecord>, name: &str) -> CliResult<&'a KnotRecord> {
    records
        .get(name)
        .ok_or_else(|| Error::InvalidInput(format!("no record named `{name}`")).into())
}

fn read_records(path: &PathBuf) -> CliResult<BTreeMap<String, KnotRecord>> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok(parse_records(&text)?)
}

/// Parses blank-line separated blocks of `key: value` lines.
///
/// ```
/// let recs = lmo_splice_cli::parse_records("name: trefoil\na2: 1\n\nname: unknot\n").unwrap();
/// assert_eq!(recs["trefoil"].a2, lmo_splice::rational::q(1));
/// assert!(recs["unknot"].framing.is_null());
/// ```
pub fn parse_records(text: &str) -> lmo_splice::Result<BTreeMap<String, KnotRecord>> {
    let mut out = BTreeMap::new();
    let mut block: Vec<(usize, &str)> = Vec::new();
    let lines = text.lines().enumerate().map(|(i, l)| (i + 1, l)).chain(std::iter::once((0, "")));
    for (n, line) in lines {
        let line = line.trim();
        if line.starts_with('#') {
            continue;
        }
        if !line.is_empty() {
            block.push((n, line));
            continue;
        }
        if block.is_empty() {
            continue;
        }
        let (name, rec) = parse_block(&block)?;
        if out.insert(name.clone(), rec).is_some() {
            return Err(Error::InvalidInput(format!("duplicate record `{name}`")));
        }
        block.clear();
    }
    Ok(out)
}

fn parse_block(block: &[(usize, &str)]) -> lmo_splice::Result<(String, KnotRecord)> {
    let mut name = None;
    let mut rec = KnotRecord::default();
    let mut seen = HashSet::new();
    for &(n, line) in block {
        let bad = |msg: &str| Error::InvalidInput(format!("line {n}: {msg}"));
        let (key, value) = line.split_once(':').ok_or_else(|| bad("expected `key: value`"))?;
        let (key, value) = (key.trim(), value.trim());
        if !seen.insert(key) {
            return Err(bad(&format!("repeated key `{key}`")));
        }
        match key {
            "name" => name = Some(value.to_string()),
            "lambda_w" => rec.ambient_lambda_w = parse_q(value)?,
            "lambda2" => rec.ambient_lambda2 = parse_q(value)?,
            "a2" => rec.a2 = parse_q(value)?,
            "a4" => rec.a4 = parse_q(value)?,
            "v" => rec.v_coeff = parse_q(value)?,
            "framing" => {
                let (u, v) = value.split_once('/').unwrap_or((value, "1"));
                let u = u.trim().parse::<i64>().map_err(|_| bad("framing must be u/v"))?;
                let v = v.trim().parse::<i64>().map_err(|_| bad("framing must be u/v"))?;
                rec.framing = FramingFraction::from_i64(u, v)?;
            }
            other => return Err(bad(&format!("unknown key `{other}`"))),
        }
    }
    let name = name.ok_or_else(|| Error::InvalidInput(format!("line {}: record without a name", block[0].0)))?;
    Ok((name, rec))
}
