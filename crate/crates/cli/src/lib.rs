//! The `decmin` command line. [`run`] is the whole program minus process
//! exit, so tests can drive it in-process.
//!
//! Exit codes: 0 success, 1 failed verification / refused certification /
//! failed demo assertion, 2 malformed input or flags.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use decmin_core::certificate::{
    base_price, certify_face, certify_fenchel, duality_gap, enlarged_box, farkas_system,
    smallest_box, verify_certificate,
};
use decmin_core::generators::{
    gen_base_polyhedron, gen_cube_subset, gen_difference_bounded, gen_m2_intersection,
    gen_random_candidate, random_difference_bounded, GenSpec, SubmodularTable,
};
use decmin_core::geometry::{is_integrally_convex_with, linf_diameter, midpoint_prefilter};
use decmin_core::io::{emit_certificate, emit_instance, parse_certificate, parse_instance, parse_rat};
use decmin_core::lexorder::decmin_profile;
use decmin_core::ratlp::{solve_feasibility, FeasibilityOutcome};
use decmin_core::types::display_rat_vec;
use decmin_core::{
    decmin_set, fixtures, Error, IntVec, Limits, PointSet, PowerPotential, Rat,
};
use rayon::prelude::*;

#[derive(Parser, Debug)]
#[command(name = "decmin", version, about = "Exact dec-min sets, integral convexity and certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the dec-min elements, their sorted profile and L∞ diameter.
    Decmin { file: PathBuf },
    /// Midpoint prefilter, then the exact cell oracle (with --exact or n ≤ 4).
    CheckIc {
        file: PathBuf,
        #[arg(long)]
        exact: bool,
    },
    /// Build a certificate decmin(S) = F ∩ B°.
    Certify {
        file: PathBuf,
        #[arg(long)]
        base: u64,
        #[arg(long, value_enum)]
        method: MethodArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check certificates against instances, pairwise in order.
    Verify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long = "cert", required = true)]
        certs: Vec<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Write generated instances.
    Gen(GenArgs),
    /// Reproduce and assert the numbers of a built-in worked instance.
    Demo {
        #[arg(long, value_parser = ["1.4", "3.2", "4.9"])]
        example: String,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum MethodArg {
    Face,
    Fenchel,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Cube,
    Basepoly,
    M2,
    Diffbound,
    Random,
}

#[derive(clap::Args, Debug)]
struct GenArgs {
    /// Generator kind; required unless --spec is given.
    #[arg(long, value_enum, required_unless_present = "spec")]
    kind: Option<Kind>,
    /// JSON generator document (tagged by "kind"); replaces the other flags.
    #[arg(long, conflicts_with = "kind")]
    spec: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Inclusion probability for `cube`, as `num/den`.
    #[arg(long, default_value = "1/2")]
    density: String,
    /// Bitmask-indexed set-function values for `basepoly` / first `m2` side.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    values: Option<Vec<i64>>,
    /// Second `m2` side.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    values2: Option<Vec<i64>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    lo: Option<Vec<i64>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    hi: Option<Vec<i64>>,
    /// Row-major n×n bounds for `diffbound`, rows separated by `;`.
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<String>,
    #[arg(long, default_value_t = 1)]
    radius: u32,
    /// Number of points for `random`.
    #[arg(long, default_value_t = 2)]
    count: usize,
    /// Number of instances, seeds `seed, seed+1, …`; with K > 1 the output
    /// is a directory receiving `instance-<seed>.json`.
    #[arg(long, default_value_t = 1)]
    instances: u64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(short, long)]
    output: PathBuf,
}

/// Outcome classes mapped onto exit codes.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Refused(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Refused(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Refused(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::DimensionMismatch { .. }
            | Error::EmptySet
            | Error::CapExceeded { .. }
            | Error::BaseTooSmall { .. }
            | Error::NotSubmodular { .. }
            | Error::Precondition(_) => Failure::Usage(e.to_string()),
            other => Failure::Refused(other.to_string()),
        }
    }
}

type CliResult = std::result::Result<i32, Failure>;

/// Runs one invocation; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let mut buf = String::new();
    let result = dispatch(cli.command, &mut buf);
    let _ = out.write_all(buf.as_bytes());
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}

fn dispatch(cmd: Command, out: &mut String) -> CliResult {
    match cmd {
        Command::Decmin { file } => cmd_decmin(&file, out),
        Command::CheckIc { file, exact } => cmd_check_ic(&file, exact, out),
        Command::Certify {
            file,
            base,
            method,
            output,
        } => cmd_certify(&file, base, method, output.as_deref(), out),
        Command::Verify { files, certs, jobs } => cmd_verify(&files, &certs, jobs, out),
        Command::Gen(args) => cmd_gen(&args, out),
        Command::Demo { example } => cmd_demo(&example, out),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text)
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<PointSet, Failure> {
    parse_instance(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn cmd_decmin(file: &Path, out: &mut String) -> CliResult {
    let s = load_instance(file)?;
    let m = decmin_set(&s)?;
    writeln!(out, "dec-min elements: {}", m.len()).unwrap();
    for x in &m {
        writeln!(out, "  {x}").unwrap();
    }
    writeln!(out, "sorted profile: {}", decmin_profile(&s)?).unwrap();
    writeln!(out, "linf diameter: {}", linf_diameter(&m)?).unwrap();
    Ok(0)
}

fn cmd_check_ic(file: &Path, exact: bool, out: &mut String) -> CliResult {
    let s = load_instance(file)?;
    let pre = midpoint_prefilter(&s)?;
    match &pre.witness {
        None => writeln!(out, "prefilter: pass").unwrap(),
        Some((u, v)) => writeln!(out, "prefilter: fail (midpoint of {u} and {v})").unwrap(),
    }
    if exact || s.dim() <= 4 {
        let v = is_integrally_convex_with(&s, &Limits::from_env())?;
        writeln!(out, "integrally convex: {}", v.verdict).unwrap();
        if let Some(w) = v.witness {
            writeln!(
                out,
                "witness: {} in cell {} lies in conv(S) but not in conv(S ∩ N(x))",
                display_rat_vec(&w.point),
                w.cell
            )
            .unwrap();
        }
    } else {
        writeln!(out, "integrally convex: not decided (n > 4; pass --exact)").unwrap();
    }
    Ok(0)
}

fn cmd_certify(
    file: &Path,
    base: u64,
    method: MethodArg,
    output: Option<&Path>,
    out: &mut String,
) -> CliResult {
    let s = load_instance(file)?;
    let pot = PowerPotential::new(base, s.dim())?;
    let cert = match method {
        MethodArg::Face => certify_face(&s, &pot)?,
        MethodArg::Fenchel => certify_fenchel(&s, &pot)?,
    };
    let text = emit_certificate(&cert);
    match output {
        Some(p) => write_file(p, &text)?,
        None => out.push_str(&text),
    }
    Ok(0)
}

fn cmd_verify(files: &[PathBuf], certs: &[PathBuf], jobs: usize, out: &mut String) -> CliResult {
    if files.len() != certs.len() {
        return Err(Failure::Usage(format!(
            "{} instance files but {} certificates",
            files.len(),
            certs.len()
        )));
    }
    let load = |(f, c): (&PathBuf, &PathBuf)| -> Result<(String, bool), Failure> {
        let s = load_instance(f)?;
        let cert = parse_certificate(&read(c)?)
            .map_err(|e| Failure::Usage(format!("{}: {e}", c.display())))?;
        let report = verify_certificate(&s, &cert);
        let mut text = String::new();
        if files.len() > 1 {
            writeln!(text, "== {} with {}", f.display(), c.display()).unwrap();
        }
        text.push_str(&report.to_string());
        writeln!(text, "{}", if report.passed() { "verified" } else { "NOT verified" }).unwrap();
        Ok((text, report.passed()))
    };
    let pairs: Vec<_> = files.iter().zip(certs).collect();
    let results: Vec<Result<(String, bool), Failure>> = with_jobs(jobs, || {
        pairs.par_iter().map(|&p| load(p)).collect()
    })?;
    let mut ok = true;
    for r in results {
        let (text, passed) = r?;
        ok &= passed;
        out.push_str(&text);
    }
    Ok(if ok { 0 } else { 1 })
}

fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T, Failure> {
    if jobs == 0 {
        return Err(Failure::Usage("--jobs must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(pool.install(f))
}

fn require<T: Clone>(v: &Option<T>, flag: &str, kind: &str) -> Result<T, Failure> {
    v.clone()
        .ok_or_else(|| Failure::Usage(format!("--{flag} is required for --kind {kind}")))
}

fn parse_gamma(text: &str) -> Result<Vec<Vec<i64>>, Failure> {
    text.split(';')
        .map(|row| {
            row.split(',')
                .map(|v| {
                    v.trim()
                        .parse::<i64>()
                        .map_err(|_| Failure::Usage(format!("invalid gamma entry {v:?}")))
                })
                .collect()
        })
        .collect()
}

/// One instance for `seed`, from flags.
fn generate(args: &GenArgs, kind: Kind, seed: u64) -> Result<PointSet, Failure> {
    let name = format!("{kind:?}").to_lowercase();
    let n = require(&args.n, "n", &name)?;
    let table = |values: &Option<Vec<i64>>, seed: u64| match values {
        Some(v) => SubmodularTable::new(n, v.clone()),
        None => SubmodularTable::random(n, seed),
    };
    let set = match kind {
        Kind::Cube => {
            let density: Rat = parse_rat(&args.density)?;
            gen_cube_subset(n, &density, seed)?
        }
        Kind::Basepoly => gen_base_polyhedron(&table(&args.values, seed)?)?,
        Kind::M2 => {
            let f1 = table(&args.values, seed)?;
            let f2 = table(&args.values2, seed.wrapping_add(0x5EED))?;
            gen_m2_intersection(&f1, &f2)?.set
        }
        Kind::Diffbound => match (&args.lo, &args.hi, &args.gamma) {
            (Some(lo), Some(hi), Some(g)) => {
                if lo.len() != n || hi.len() != n {
                    return Err(Failure::Usage(format!("--lo/--hi must have {n} entries")));
                }
                gen_difference_bounded(&IntVec::from_i64s(lo), &IntVec::from_i64s(hi), &parse_gamma(g)?)?
            }
            (None, None, None) => random_difference_bounded(n, seed)?,
            _ => return Err(Failure::Usage("--lo, --hi and --gamma go together".into())),
        },
        Kind::Random => gen_random_candidate(n, args.radius, args.count, seed)?,
    };
    Ok(set)
}

fn cmd_gen(args: &GenArgs, out: &mut String) -> CliResult {
    let spec = match &args.spec {
        Some(p) => Some(GenSpec::from_json(&read(p)?)?),
        None => None,
    };
    let base_seed = spec.as_ref().map_or(args.seed, GenSpec::seed);
    let seeds: Vec<u64> = (0..args.instances.max(1)).map(|k| base_seed.wrapping_add(k)).collect();
    let make = |seed: u64| -> Result<PointSet, Failure> {
        match &spec {
            Some(s) => Ok(s.with_seed(seed).generate()?),
            None => generate(args, args.kind.expect("clap enforces kind or spec"), seed),
        }
    };
    let results: Vec<Result<PointSet, Failure>> =
        with_jobs(args.jobs, || seeds.par_iter().map(|&s| make(s)).collect())?;
    if seeds.len() == 1 {
        let set = results.into_iter().next().expect("one seed")?;
        write_file(&args.output, &emit_instance(&set))?;
        writeln!(out, "wrote {} ({} points)", args.output.display(), set.len()).unwrap();
        return Ok(0);
    }
    std::fs::create_dir_all(&args.output)
        .map_err(|e| Failure::Usage(format!("cannot create {}: {e}", args.output.display())))?;
    for (seed, r) in seeds.iter().zip(results) {
        let set = r?;
        let path = args.output.join(format!("instance-{seed}.json"));
        write_file(&path, &emit_instance(&set))?;
        writeln!(out, "wrote {} ({} points)", path.display(), set.len()).unwrap();
    }
    Ok(0)
}

// ---------------------------------------------------------------------------
// demo

struct Asserts<'a> {
    out: &'a mut String,
    failed: usize,
}

impl Asserts<'_> {
    fn check(&mut self, what: &str, ok: bool, shown: impl std::fmt::Display) {
        let mark = if ok { "ok" } else { "FAILED" };
        writeln!(self.out, "{mark:>6}  {what}: {shown}").unwrap();
        if !ok {
            self.failed += 1;
        }
    }
}

fn ints(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| Rat::from_integer(x.into())).collect()
}

fn cmd_demo(label: &str, out: &mut String) -> CliResult {
    let s = fixtures::by_label(label).expect("clap restricts labels");
    let pot = PowerPotential::new(10, 4)?;
    writeln!(out, "instance {label}: {} points in Z^4, base 10", s.len()).unwrap();
    for x in &s {
        writeln!(out, "  {x}").unwrap();
    }
    let mut a = Asserts { out, failed: 0 };
    match label {
        "1.4" => demo_pair(&s, &pot, &mut a)?,
        "3.2" => demo_five(&s, &pot, &mut a)?,
        _ => demo_parallelogram(&s, &pot, &mut a)?,
    }
    Ok(if a.failed == 0 { 0 } else { 1 })
}

fn demo_pair(s: &PointSet, pot: &PowerPotential, a: &mut Asserts) -> Result<(), Failure> {
    let m = decmin_set(s)?;
    a.check("both points dec-min", m == *s, m.len());
    let d = linf_diameter(&m)?;
    a.check("dec-min diameter 2", d == 2.into(), &d);
    let v = is_integrally_convex_with(s, &Limits::default())?;
    let shown = v
        .witness
        .as_ref()
        .map_or("none".to_string(), |w| display_rat_vec(&w.point));
    a.check("not integrally convex", !v.verdict && v.witness.is_some(), shown);
    let refused = matches!(certify_face(s, pot), Err(Error::DiameterExceeds { .. }));
    a.check("certificate refused (diameter)", refused, refused);
    Ok(())
}

fn demo_five(s: &PointSet, pot: &PowerPotential, a: &mut Asserts) -> Result<(), Failure> {
    let m = decmin_set(s)?;
    a.check("4 dec-min elements", m.len() == 4, m.len());
    let phis: Vec<String> = s
        .iter()
        .map(|x| pot.phi_rap_value(x).map(|v| v.to_string()))
        .collect::<Result<_, _>>()?;
    let ok = s.iter().all(|x| {
        let v = pot.phi_rap_value(x).unwrap();
        if m.contains(x) {
            v == Rat::from_integer(121.into())
        } else {
            v == Rat::from_integer(202.into())
        }
    });
    a.check("Φ = 121 on dec-min, 202 otherwise", ok, phis.join(", "));
    let c = certify_fenchel(s, pot)?;
    a.check("p* = (90,90,9,9)", c.price == ints(&[90, 90, 9, 9]), display_rat_vec(&c.price));
    let bx_ok = c.inner_box.lo == IntVec::from([1, 1, 0, 0]) && c.inner_box.hi == IntVec::from([2, 2, 1, 1]);
    a.check("box {1,2}²×{0,1}²", bx_ok, &c.inner_box);
    a.check("argmin ⟨p*, ·⟩ = dec-min", c.face_members == m, c.face_members.len());
    let report = verify_certificate(s, &c);
    a.check("certificate verifies", report.passed(), report.checks.len());
    let g = duality_gap(s, pot, &c.price)?;
    a.check(
        "duality gap 0 (121 = 279 − 158)",
        g.gap == Rat::from_integer(0.into()) && g.primal == Rat::from_integer(121.into()),
        format!("primal {} dual {}", g.primal, g.dual),
    );
    Ok(())
}

fn demo_parallelogram(s: &PointSet, pot: &PowerPotential, a: &mut Asserts) -> Result<(), Failure> {
    let order = [[2, 0, 0, 0], [1, 1, 0, 1], [1, 0, 1, 1], [0, 1, 1, 2]].map(IntVec::from);
    let phis: Vec<Rat> = order.iter().map(|x| pot.phi_rap_value(x)).collect::<Result<_, _>>()?;
    a.check("Φ = (103,31,31,121)", phis == ints(&[103, 31, 31, 121]), display_rat_vec(&phis));
    let m = decmin_set(s)?;
    let (inner, n0, n1) = smallest_box(&m)?;
    a.check(
        "B° = [(1,0,0,1),(1,1,1,1)], N0 = {1,4}",
        inner.lo == IntVec::from([1, 0, 0, 1]) && inner.hi == IntVec::from([1, 1, 1, 1]) && n0 == [0, 3] && n1 == [1, 2],
        &inner,
    );
    let outer = enlarged_box(&inner, &n0, &n1)?;
    a.check(
        "B = [(0,0,0,0),(2,1,1,2)]",
        outer.lo == IntVec::from([0, 0, 0, 0]) && outer.hi == IntVec::from([2, 1, 1, 2]),
        &outer,
    );
    let p = base_price(pot, &inner.lo)?;
    a.check("p = (90,9,9,90)", p == ints(&[90, 9, 9, 90]), display_rat_vec(&p));
    let shifted: Vec<Rat> = order.iter().map(|x| pot.shifted_value(x, &p)).collect::<Result<_, _>>()?;
    a.check(
        "Φ[−p] = (−77,−158,−158,−77)",
        shifted == ints(&[-77, -158, -158, -77]),
        display_rat_vec(&shifted),
    );
    let bundle = farkas_system(s, pot, &IntVec::from([1, 1, 0, 1]))?;
    a.check("d = (9,−9)", bundle.system.rhs() == ints(&[9, -9]).as_slice(), display_rat_vec(bundle.system.rhs()));
    let q = match solve_feasibility(&bundle.system) {
        FeasibilityOutcome::Solution(q) => q,
        FeasibilityOutcome::Farkas(r) => return Err(Error::Infeasible { farkas: r }.into()),
    };
    a.check("q₁ − q₂ = 9", &q[0] - &q[1] == Rat::from_integer(9.into()), display_rat_vec(&q));
    let c = certify_face(s, pot)?;
    let pr = &c.price;
    let family = pr[1] == Rat::from_integer(9.into())
        && pr[2] == Rat::from_integer(9.into())
        && &pr[0] - Rat::from_integer(99.into()) == &pr[3] - Rat::from_integer(90.into());
    a.check("p* = (99+α, 9, 9, 90+α)", family, display_rat_vec(pr));
    let common = s.iter().all(|x| x.dot(pr) == c.beta);
    a.check("common inner product ⟨p*, x⟩ = β", common, &c.beta);
    a.check("face = S", c.face_members == *s, c.face_members.len());
    let report = verify_certificate(s, &c);
    a.check("certificate verifies", report.passed(), report.checks.len());
    let c = certify_fenchel(s, pot)?;
    let report = verify_certificate(s, &c);
    a.check("fenchel certificate verifies", report.passed(), display_rat_vec(&c.price));
    Ok(())
}
