//! `semichain` command-line driver.
//!
//! Exit status: 0 on success, 1 on usage errors, 2 on domain errors. Output
//! files are computed in full before any is written, then written atomically.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use semichain::deformation::{self, DeformationResult};
use semichain::homology::{self, HomologyGroup, RelativePair};
use semichain::minimize::{self, Method, OhcpInstance, Options};
use semichain::rational::{self, fmt as qfmt};
use semichain::selftest::{self, Config, Scale};
use semichain::semialg::{self, Scheme};
use semichain::{axioms, io, ops, retract, Cell, CellComplex, Chain, CubicalGrid, Error, Exec, Q};

#[derive(Parser, Debug)]
#[command(name = "semichain", version, about = "Exact integer chains on cubical and simplicial complexes")]
struct Cli {
    /// Random seed.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Report::Text)]
    report: Report,
    /// Directory that relative output paths are resolved against.
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    /// Run data-parallel work on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Report {
    Text,
    Lines,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rasterize a semi-algebraic formula onto a cubical grid.
    Rasterize {
        /// Formula file (s-expression).
        formula: PathBuf,
        #[arg(long, value_parser = parse_q, allow_hyphen_values = true)]
        edge: Q,
        /// Bounding box `x0,y0,..,x1,y1,..`.
        #[arg(long, value_parser = parse_qs, allow_hyphen_values = true)]
        bbox: Coords,
        #[arg(long, value_parser = parse_qs, allow_hyphen_values = true)]
        offset: Option<Coords>,
        #[arg(long, default_value = "center", value_parser = parse_scheme)]
        scheme: Scheme,
        /// Thicken by this many cells after rasterizing.
        #[arg(long, default_value_t = 0)]
        thicken: u32,
        #[arg(short, long, default_value = "raster.cx")]
        out: PathBuf,
    },
    /// Integral homology groups.
    Homology {
        #[arg(long)]
        complex: PathBuf,
        /// Only this dimension.
        #[arg(long)]
        dim: Option<usize>,
        /// Write generator chains as `H<k>_<i>.chain`.
        #[arg(long)]
        generators: bool,
    },
    /// Relative homology of a pair.
    Relhomology {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        sub: PathBuf,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        generators: bool,
    },
    /// Least-mass cycle homologous to the input.
    Minimize {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        cycle: PathBuf,
        #[arg(long, default_value = "auto", value_parser = parse_method)]
        method: Method,
        #[arg(long, default_value_t = minimize::DEFAULT_NODE_BUDGET)]
        node_budget: usize,
        #[arg(short, long, default_value = "minimizer.chain")]
        out: PathBuf,
    },
    /// Least mass of a non-bounding cycle.
    Systole {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        dim: usize,
        /// Free class coordinates range over `[-box, box]`.
        #[arg(long = "box", default_value_t = 1)]
        coord_box: i64,
        #[arg(long, default_value_t = minimize::DEFAULT_NODE_BUDGET)]
        node_budget: usize,
        #[arg(short, long, default_value = "systole.chain")]
        out: PathBuf,
    },
    /// Deform a fine cubical chain onto a coarse grid: T = P + Q + dL.
    Deform {
        #[arg(long, value_parser = parse_q, allow_hyphen_values = true)]
        fine: Q,
        #[arg(long, value_parser = parse_q, allow_hyphen_values = true)]
        coarse: Q,
        /// Coarse grid offset (default zero).
        #[arg(long, value_parser = parse_qs, allow_hyphen_values = true)]
        coarse_offset: Option<Coords>,
        #[arg(long, value_parser = parse_q, allow_hyphen_values = true)]
        kappa_ceiling: Option<Q>,
        input: PathBuf,
        /// Output prefix; writes `<prefix>.P.chain`, `.Q.chain` and `.L.chain`.
        out: PathBuf,
    },
    /// Slice a cycle by the sup-distance from a point.
    Slice {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long, value_parser = parse_qs, allow_hyphen_values = true)]
        center: Coords,
        #[arg(long, value_parser = parse_q, allow_hyphen_values = true)]
        radius: Q,
        input: PathBuf,
        out: PathBuf,
    },
    /// Retract a chain in a regular neighborhood onto a full subcomplex.
    Retract {
        #[arg(long)]
        complex: PathBuf,
        #[arg(long)]
        sub: PathBuf,
        input: PathBuf,
        out: PathBuf,
    },
    /// Check the homology axioms on the built-in corpus.
    Axioms,
    /// Run the fast acceptance subset.
    Selftest {
        /// Full-size acceptance run.
        #[arg(long)]
        full: bool,
    },
}

fn parse_q(s: &str) -> Result<Q, String> {
    rational::parse(s.trim()).ok_or_else(|| format!("not a rational: `{s}`"))
}

/// Comma-separated rationals.
#[derive(Debug, Clone)]
struct Coords(Vec<Q>);

fn parse_qs(s: &str) -> Result<Coords, String> {
    s.split(',').map(parse_q).collect::<Result<_, _>>().map(Coords)
}

fn parse_scheme(s: &str) -> Result<Scheme, String> {
    s.parse().map_err(|_| format!("expected center, corners or both, got `{s}`"))
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|_| format!("expected auto, lp, ilp or exhaustive, got `{s}`"))
}

/// A report record: its human form and its `key=value` form.
struct Record {
    text: String,
    pairs: Vec<(&'static str, String)>,
}

impl Record {
    fn new(text: impl Into<String>) -> Self {
        Record { text: text.into(), pairs: vec![] }
    }

    fn kv(mut self, k: &'static str, v: impl ToString) -> Self {
        self.pairs.push((k, v.to_string()));
        self
    }

    fn line(&self) -> String {
        self.pairs.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
    }
}

/// Fatal outcome of a command.
enum Failure {
    Domain(Error),
    /// A check ran and failed.
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

#[derive(Default)]
struct Output {
    files: Vec<(PathBuf, String)>,
    records: Vec<Record>,
    warnings: Vec<String>,
}

impl Output {
    fn file(&mut self, path: PathBuf, contents: String) {
        self.files.push((path, contents));
    }

    fn record(&mut self, r: Record) {
        self.records.push(r);
    }
}

fn opt_q(x: &Option<Q>) -> String {
    x.as_ref().map_or_else(|| "inf".into(), qfmt)
}

fn group_record(h: &HomologyGroup) -> Record {
    let torsion: Vec<String> = h.torsion.iter().map(ToString::to_string).collect();
    Record::new(h.to_string())
        .kv("dim", h.dim)
        .kv("betti", h.betti)
        .kv("torsion", if torsion.is_empty() { "-".into() } else { torsion.join(",") })
}

fn report_groups(out: &mut Output, groups: &[HomologyGroup], generators: bool) {
    for h in groups {
        out.record(group_record(h));
        if generators {
            for (i, g) in h.generators.iter().chain(&h.torsion_generators).enumerate() {
                out.file(PathBuf::from(format!("H{}_{i}.chain", h.dim)), io::write_chain(g));
            }
        }
    }
}

fn top_dim(x: &CellComplex) -> usize {
    x.dim().unwrap_or(0)
}

/// Grid of edge `edge` covering `bbox = x0,y0,..,x1,y1,..`.
fn bbox_grid(edge: Q, bbox: Vec<Q>, offset: Option<Vec<Q>>) -> Result<CubicalGrid, Error> {
    if bbox.is_empty() || bbox.len() % 2 == 1 {
        return Err(Error::DimensionMismatch(format!("bbox needs 2n values, got {}", bbox.len())));
    }
    let n = bbox.len() / 2;
    let offset = offset.unwrap_or_else(|| vec![rational::int(0); n]);
    if offset.len() != n {
        return Err(Error::DimensionMismatch(format!("offset has {} values, bbox has dimension {n}", offset.len())));
    }
    let lattice = |x: &Q, o: &Q, up: bool| {
        let t = (x - o) / &edge;
        let v = if up { t.ceil() } else { t.floor() };
        v.to_integer().try_into().map_err(|_| Error::BBoxOverflow)
    };
    let lo = (0..n).map(|i| lattice(&bbox[i], &offset[i], false)).collect::<Result<Vec<i64>, Error>>()?;
    let hi = (0..n).map(|i| lattice(&bbox[n + i], &offset[i], true)).collect::<Result<Vec<i64>, Error>>()?;
    CubicalGrid::new(edge, offset, lo, hi)
}

fn rasterize(formula: &Path, grid: CubicalGrid, scheme: Scheme, r: u32, out_path: PathBuf, exec: Exec) -> Result<Output, Failure> {
    let src = std::fs::read_to_string(formula).map_err(|e| Error::Parse { line: 0, msg: format!("{}: {e}", formula.display()) })?;
    let f = semialg::parse_formula(&src)?;
    let ras = semialg::rasterize(&f, &grid, scheme, exec)?;
    let complex = if r > 0 { semialg::thicken(&ras.complex, r, exec)? } else { ras.complex };
    let mut out = Output::default();
    if f.has_equality() {
        out.warnings.push("formula has `=` atoms and sampling usually misses thin sets; replace (= p 0) by (<= (^ p 2) t) for a small t".into());
    }
    out.record(
        Record::new(format!("{} top cells included, {} cells total, scheme {scheme}", ras.included.len(), complex.total_cells()))
            .kv("top_cells", ras.included.len())
            .kv("cells", complex.total_cells())
            .kv("scheme", scheme),
    );
    out.file(out_path, io::write_complex(&complex));
    Ok(out)
}

fn homology_cmd(complex: &Path, dim: Option<usize>, generators: bool, exec: Exec) -> Result<Output, Failure> {
    let x = io::read_complex(complex)?;
    let groups = match dim {
        Some(k) => vec![homology::homology(&x, k)?],
        None => homology::homology_all(&x, exec)?,
    };
    let mut out = Output::default();
    report_groups(&mut out, &groups, generators);
    Ok(out)
}

fn relhomology_cmd(complex: &Path, sub: &Path, dim: Option<usize>, generators: bool) -> Result<Output, Failure> {
    let x = io::read_complex(complex)?;
    let a = io::read_complex(sub)?;
    let top = top_dim(&x);
    let pair = RelativePair::new(x, a)?;
    let dims: Vec<usize> = dim.map_or_else(|| (0..=top).collect(), |k| vec![k]);
    let groups = dims.into_iter().map(|k| homology::relative_homology(&pair, k)).collect::<Result<Vec<_>, _>>()?;
    let mut out = Output::default();
    report_groups(&mut out, &groups, generators);
    Ok(out)
}

fn minimize_cmd(complex: &Path, cycle: &Path, opts: Options, out_path: PathBuf) -> Result<Output, Failure> {
    let x = io::read_complex(complex)?;
    let z = io::read_chain(cycle)?;
    let inst = OhcpInstance::new(&x, z)?;
    let r = minimize::optimal_homologous(&inst, opts)?;
    let mut out = Output::default();
    out.record(
        Record::new(r.report())
            .kv("optimal_mass", qfmt(&r.optimal_mass))
            .kv("method", r.method)
            .kv("nodes", r.nodes),
    );
    out.file(out_path, io::write_chain(&r.minimizer));
    Ok(out)
}

fn systole_cmd(complex: &Path, k: usize, coord_box: i64, opts: Options, out_path: PathBuf, exec: Exec) -> Result<Output, Failure> {
    let x = io::read_complex(complex)?;
    let mut out = Output::default();
    match minimize::systole(&x, k, coord_box, opts, exec)? {
        Some(s) => {
            let pattern: Vec<String> = s.pattern.iter().map(ToString::to_string).collect();
            out.record(
                Record::new(format!("systole in dimension {k}: mass {} (class {})", qfmt(&s.mass), pattern.join(",")))
                    .kv("dim", k)
                    .kv("systole", qfmt(&s.mass))
                    .kv("pattern", pattern.join(",")),
            );
            out.file(out_path, io::write_chain(&s.cycle));
        }
        None => out.record(Record::new(format!("H_{k} = 0, no systole")).kv("dim", k).kv("systole", "none")),
    }
    Ok(out)
}

/// Smallest box holding every cube of `t`, padded by one cell.
fn chain_box(t: &Chain) -> Result<(Vec<i64>, Vec<i64>), Error> {
    let cubes: Vec<_> = t.cells().filter_map(Cell::as_cube).collect();
    let first = cubes.first().ok_or_else(|| Error::DimensionMismatch("deformation needs a nonempty cubical chain".into()))?;
    let n = first.ambient();
    let lo = (0..n).map(|i| cubes.iter().map(|c| c.anchor[i]).min().unwrap_or(0) - 1).collect();
    let hi = (0..n).map(|i| cubes.iter().map(|c| c.anchor[i]).max().unwrap_or(0) + 2).collect();
    Ok((lo, hi))
}

fn deform_cmd(fine_edge: Q, coarse_edge: Q, coarse_offset: Option<Vec<Q>>, ceiling: Option<Q>, input: &Path, prefix: &Path, seed: u64) -> Result<Output, Failure> {
    let t = io::read_chain(input)?;
    let (lo, hi) = chain_box(&t)?;
    let n = lo.len();
    let fine = CubicalGrid::boxed(fine_edge, lo, hi)?;
    let offset = coarse_offset.unwrap_or_else(|| vec![rational::int(0); n]);
    let coarse = CubicalGrid::new(coarse_edge, offset, vec![0; n], vec![1; n])?;
    let (a, results) = deformation::deform_batch(std::slice::from_ref(&t), &fine, &coarse, seed, Exec::Sequential)?;
    let r: &DeformationResult = &results[0];
    let ceiling = ceiling.unwrap_or_else(|| deformation::default_kappa_ceiling(n));
    let (observed, within) = deformation::kappa_within(&results, &ceiling);
    if !within {
        return Err(Failure::Check(format!("kappa_observed={} exceeds kappa_ceiling={}", opt_q(&observed), qfmt(&ceiling))));
    }
    let k = &r.kappa;
    let mut out = Output::default();
    out.record(
        Record::new(format!(
            "offset {}; kappa observed {} (ceiling {}); support radius {} (bound {})",
            rational::fmt_vec(&a),
            opt_q(&observed),
            qfmt(&ceiling),
            qfmt(&r.support_radius),
            qfmt(&r.support_bound)
        ))
        .kv("offset", a.iter().map(qfmt).collect::<Vec<_>>().join(","))
        .kv("kappa_p", opt_q(&k.p))
        .kv("kappa_boundary", opt_q(&k.boundary))
        .kv("kappa_q", opt_q(&k.q))
        .kv("kappa_l", opt_q(&k.l))
        .kv("kappa_observed", opt_q(&observed))
        .kv("kappa_ceiling", qfmt(&ceiling))
        .kv("support_radius", qfmt(&r.support_radius))
        .kv("support_bound", qfmt(&r.support_bound)),
    );
    let name = |part: &str| {
        let mut s = prefix.as_os_str().to_owned();
        s.push(format!(".{part}.chain"));
        PathBuf::from(s)
    };
    out.file(name("P"), io::write_chain(&r.p));
    out.file(name("Q"), io::write_chain(&r.q));
    out.file(name("L"), io::write_chain(&r.l));
    Ok(out)
}

fn slice_cmd(complex: &Path, center: &[Q], radius: &Q, input: &Path, out_path: PathBuf) -> Result<Output, Failure> {
    let x = io::read_complex(complex)?;
    let c = io::read_chain(input)?;
    let s = ops::slice(&c, center, radius, &x)?;
    let mut out = Output::default();
    out.record(Record::new(format!("slice has {} cells", s.len())).kv("dim", s.dim()).kv("cells", s.len()));
    out.file(out_path, io::write_chain(&s));
    Ok(out)
}

fn retract_cmd(complex: &Path, sub: &Path, input: &Path, out_path: PathBuf) -> Result<Output, Failure> {
    let k = io::read_complex(complex)?;
    let l = io::read_complex(sub)?;
    let c = io::read_chain(input)?;
    let r = retract::retract_chain(&c, &k, &l)?;
    let mut out = Output::default();
    out.record(Record::new(format!("retracted chain has {} cells", r.len())).kv("dim", r.dim()).kv("cells", r.len()));
    out.file(out_path, io::write_chain(&r));
    Ok(out)
}

fn axioms_cmd(seed: u64, exec: Exec) -> Result<Output, Failure> {
    let reports = axioms::run_all(seed, exec)?;
    let mut out = Output::default();
    let mut failed = vec![];
    for r in &reports {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        out.record(
            Record::new(format!("{} {status} ({} checks, {} failures)", r.name, r.checks, r.failures.len()))
                .kv("axiom", r.name)
                .kv("status", status)
                .kv("checks", r.checks)
                .kv("failures", r.failures.len()),
        );
        if !r.passed() {
            failed.push(r.name);
            out.warnings.extend(r.failures.iter().map(|f| format!("{}: {f}", r.name)));
        }
    }
    if failed.is_empty() {
        Ok(out)
    } else {
        emit(&out, Report::Text);
        Err(Failure::Check(format!("axioms failed: {}", failed.join(", "))))
    }
}

fn selftest_cmd(seed: u64, exec: Exec, full: bool) -> Result<Output, Failure> {
    let cfg = Config { seed, exec, scale: if full { Scale::Full } else { Scale::Fast } };
    let outcomes = selftest::run_all(&cfg);
    let mut out = Output::default();
    for o in &outcomes {
        out.record(
            Record::new(o.line())
                .kv("criterion", o.id)
                .kv("name", o.name)
                .kv("status", if o.passed { "PASS" } else { "FAIL" })
                .kv("elapsed_ms", o.elapsed.as_millis()),
        );
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    out.record(Record::new(format!("passed {passed}/{}", outcomes.len())).kv("passed", passed).kv("total", outcomes.len()));
    if passed == outcomes.len() {
        Ok(out)
    } else {
        emit(&out, Report::Text);
        Err(Failure::Check(format!("{} of {} criteria failed", outcomes.len() - passed, outcomes.len())))
    }
}

fn run(cli: Cli) -> Result<Output, Failure> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::Parallel };
    let budget = |method, node_budget| Options { method, node_budget };
    match cli.command {
        Command::Rasterize { formula, edge, bbox, offset, scheme, thicken, out } => rasterize(&formula, bbox_grid(edge, bbox.0, offset.map(|o| o.0))?, scheme, thicken, out, exec),
        Command::Homology { complex, dim, generators } => homology_cmd(&complex, dim, generators, exec),
        Command::Relhomology { complex, sub, dim, generators } => relhomology_cmd(&complex, &sub, dim, generators),
        Command::Minimize { complex, cycle, method, node_budget, out } => minimize_cmd(&complex, &cycle, budget(method, node_budget), out),
        Command::Systole { complex, dim, coord_box, node_budget, out } => systole_cmd(&complex, dim, coord_box, budget(Method::Auto, node_budget), out, exec),
        Command::Deform { fine, coarse, coarse_offset, kappa_ceiling, input, out } => deform_cmd(fine, coarse, coarse_offset.map(|o| o.0), kappa_ceiling, &input, &out, cli.seed),
        Command::Slice { complex, center, radius, input, out } => slice_cmd(&complex, &center.0, &radius, &input, out),
        Command::Retract { complex, sub, input, out } => retract_cmd(&complex, &sub, &input, out),
        Command::Axioms => axioms_cmd(cli.seed, exec),
        Command::Selftest { full } => selftest_cmd(cli.seed, exec, full),
    }
}

fn emit(out: &Output, report: Report) {
    for w in &out.warnings {
        eprintln!("warning: {w}");
    }
    for r in &out.records {
        match report {
            Report::Text => println!("{}", r.text),
            Report::Lines => println!("{}", r.line()),
        }
    }
}

fn write_files(out: &Output, dir: Option<&Path>) -> std::io::Result<()> {
    if let Some(d) = dir {
        std::fs::create_dir_all(d)?;
    }
    for (path, contents) in &out.files {
        let path = match dir {
            Some(d) if path.is_relative() => d.join(path),
            _ => path.clone(),
        };
        io::write_atomic(&path, contents)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return if usage { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let report = cli.report;
    let dir = cli.out_dir.clone();
    match run(cli) {
        Ok(out) => {
            if let Err(e) = write_files(&out, dir.as_deref()) {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
            emit(&out, report);
            ExitCode::SUCCESS
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
