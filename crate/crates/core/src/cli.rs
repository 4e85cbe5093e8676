//! Command-line front end.
//!
//! Groups are named by a file path or `corpus:NAME`. Exit codes: `0` on
//! success and positive verdicts, `2` on negative or uncertified verdicts,
//! `1` on errors, including usage errors.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use serde_json::{json, Value};

use crate::bieberbach::{diagonal_status, is_diagonal_type, is_orientable, torsion_free_check, BieberbachGroup};
use crate::corpus;
use crate::error::{Error, Result};
use crate::exact::rational::{parse_rational, to_f64};
use crate::exact::Rational;
use crate::geodesics::{compare_length_spectra, conjugacy_classes, injectivity_radius_sq, LengthComparison, LengthMode};
use crate::group_file::GroupDefinition;
use crate::spectrum::{betti_numbers, compare_p_spectra, diagonal_isospectrality_criterion, spectra, sunada_numbers};
use crate::verdict::{compare_pair, Sunada};
use crate::zeta::{diagonal_zeta, poisson_check_many};

#[derive(Parser)]
#[command(name = "flatspec", version, about = "Spectra and closed geodesics of compact flat manifolds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Reject groups with torsion instead of warning.
    #[arg(long)]
    strict: bool,
}

#[derive(Clone, Copy, Debug)]
enum PSelect {
    All,
    One(usize),
}

impl PSelect {
    fn values(self, n: usize) -> Result<Vec<usize>> {
        match self {
            PSelect::All => Ok((0..=n).collect()),
            PSelect::One(p) if p <= n => Ok(vec![p]),
            PSelect::One(p) => Err(Error::InvalidArgument(format!("p = {p} exceeds the dimension {n}"))),
        }
    }
}

fn parse_p(text: &str) -> std::result::Result<PSelect, String> {
    if text == "all" {
        return Ok(PSelect::All);
    }
    text.parse().map(PSelect::One).map_err(|_| format!("expected an integer or `all`, got `{text}`"))
}

fn parse_rat(text: &str) -> std::result::Result<Rational, String> {
    parse_rational(text).map_err(|e| e.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum LengthsMode {
    Weak,
    Counted,
    Complex,
    ComplexCounted,
}

impl LengthsMode {
    fn mode(self) -> LengthMode {
        match self {
            LengthsMode::Weak => LengthMode::Weak,
            LengthsMode::Counted => LengthMode::Counted,
            LengthsMode::Complex => LengthMode::ComplexWeak,
            LengthsMode::ComplexCounted => LengthMode::ComplexCounted,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CompareMode {
    /// Every notion at once, one row each.
    All,
    Weak,
    Counted,
    Complex,
    ComplexCounted,
    Sunada,
    PSpectrum,
    Criterion,
}

#[derive(Subcommand)]
enum Command {
    /// Holonomy, orientability, diagonal type, Betti numbers, injectivity radius.
    Info {
        group: String,
        #[command(flatten)]
        common: Common,
    },
    /// Eigenvalue multiplicities `d_{p,μ}` of the Laplacian on p-forms.
    Spectrum {
        group: String,
        #[arg(long, value_parser = parse_p, default_value = "all")]
        p: PSelect,
        #[arg(long, value_parser = parse_rat, default_value = "6")]
        max_mu: Rational,
        #[command(flatten)]
        common: Common,
    },
    /// Closed geodesics up to a squared-length cutoff.
    Lengths {
        group: String,
        #[arg(long, value_parser = parse_rat, default_value = "4")]
        max_len2: Rational,
        #[arg(long, value_enum, default_value = "counted")]
        mode: LengthsMode,
        /// Report the identity class at length 0.
        #[arg(long)]
        include_zero: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Compares two groups under one notion of isospectrality.
    Compare {
        a: String,
        b: String,
        #[arg(long, value_enum, default_value = "all")]
        mode: CompareMode,
        #[arg(long, value_parser = parse_p, default_value = "all")]
        p: PSelect,
        #[arg(long, value_parser = parse_rat, default_value = "6")]
        max_mu: Rational,
        #[arg(long, value_parser = parse_rat, default_value = "4")]
        max_len2: Rational,
        #[command(flatten)]
        common: Common,
    },
    /// Heat trace from both sides of Poisson summation.
    Zeta {
        group: String,
        #[arg(long, value_parser = parse_p, default_value = "all")]
        p: PSelect,
        #[arg(long, value_delimiter = ',', default_value = "0.1,0.2,0.5")]
        s: Vec<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Built-in groups.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// Names of the built-in groups.
    List,
    /// Prints a built-in group in the definition file format.
    Emit { name: String },
}

/// An ordered row; serialises as a JSON object with keys in insertion order.
#[derive(Clone, Debug, Default)]
struct Row(Vec<(&'static str, Value)>);

impl Row {
    fn with(mut self, key: &'static str, value: impl Into<Value>) -> Self {
        self.0.push((key, value.into()));
        self
    }
}

impl Serialize for Row {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

/// The machine-readable output shared by every command.
#[derive(Serialize, Default)]
struct Report {
    name: String,
    dimension: usize,
    verdict: Option<String>,
    witnesses: Vec<Row>,
    classes: Vec<Row>,
    table: Vec<Row>,
    #[serde(skip)]
    text: String,
    #[serde(skip)]
    exit: i32,
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        // a closed downstream pipe is not a failure of the computation
        Err(Error::Io(m)) if m == BROKEN_PIPE => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let (report, format) = match command {
        Command::Corpus { action } => {
            match action {
                CorpusAction::List => {
                    for name in corpus::names() {
                        writeln!(out, "{name}").map_err(io)?;
                    }
                }
                CorpusAction::Emit { name } => write!(out, "{}", corpus::get(&name)?.emit()).map_err(io)?,
            }
            return Ok(0);
        }
        Command::Info { group, common } => (info(&load(&group, common.strict, err)?)?, common.format),
        Command::Spectrum { group, p, max_mu, common } => {
            (spectrum(&load(&group, common.strict, err)?, p, &max_mu)?, common.format)
        }
        Command::Lengths {
            group,
            max_len2,
            mode,
            include_zero,
            common,
        } => (lengths(&load(&group, common.strict, err)?, &max_len2, mode, include_zero)?, common.format),
        Command::Compare {
            a,
            b,
            mode,
            p,
            max_mu,
            max_len2,
            common,
        } => {
            let a = load(&a, common.strict, err)?;
            let b = load(&b, common.strict, err)?;
            (compare(&a, &b, mode, p, &max_mu, &max_len2)?, common.format)
        }
        Command::Zeta { group, p, s, common } => (zeta(&load(&group, common.strict, err)?, p, &s)?, common.format),
    };
    emit(&report, format, out)?;
    Ok(report.exit)
}

const BROKEN_PIPE: &str = "broken pipe";

fn io(e: std::io::Error) -> Error {
    if e.kind() == std::io::ErrorKind::BrokenPipe {
        Error::Io(BROKEN_PIPE.into())
    } else {
        Error::Io(e.to_string())
    }
}

struct Loaded {
    def: GroupDefinition,
    group: BieberbachGroup,
    torsion_free: bool,
}

impl Loaded {
    /// Geodesic and geometric-side computations assume every element moves every point.
    fn require_torsion_free(&self, what: &str) -> Result<()> {
        if self.torsion_free {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("{what} needs a torsion-free group; `{}` has torsion", self.def.name)))
        }
    }
}

/// Resolves `corpus:NAME` or a file path, closes the group and checks torsion.
fn load(source: &str, strict: bool, err: &mut dyn Write) -> Result<Loaded> {
    let def = match source.strip_prefix("corpus:") {
        Some(name) => corpus::get(name)?,
        None => {
            let text = std::fs::read_to_string(source).map_err(|e| Error::Io(format!("{source}: {e}")))?;
            GroupDefinition::parse(&text)?
        }
    };
    let group = def.build()?;
    let torsion = torsion_free_check(&group).err();
    if let Some(v) = &torsion {
        let msg = format!("`{}` has torsion: coset {} contains an element with a fixed point", def.name, v.coset);
        if strict {
            return Err(Error::InvalidArgument(msg));
        }
        let _ = writeln!(err, "warning: {msg}");
    }
    Ok(Loaded { def, group, torsion_free: torsion.is_none() })
}

fn rat(r: &Rational) -> Value {
    Value::String(r.to_string())
}

/// `"11/4 (1.658312)"`: squared length with the decimal length.
fn show_length(len2: &Rational) -> String {
    format!("{len2} ({:.6})", to_f64(len2).sqrt())
}

fn info(l: &Loaded) -> Result<Report> {
    let g = &l.group;
    let status = serde_json::to_value(diagonal_status(g)).expect("enum serialises");
    let status = status.as_str().unwrap_or_default().to_string();
    let rows = vec![
        ("holonomy_order", json!(g.holonomy_order())),
        ("orientable", json!(is_orientable(g))),
        ("diagonal_type", json!(status)),
        ("torsion_free", json!(l.torsion_free)),
        ("injectivity_radius_sq", if l.torsion_free { rat(&injectivity_radius_sq(g)) } else { Value::Null }),
        ("betti_numbers", json!(betti_numbers(g))),
    ];
    let mut text = format!("{} (dimension {})\n", l.def.name, g.dimension());
    if let Some(d) = &l.def.description {
        text.push_str(&format!("  {d}\n"));
    }
    let mut table = Vec::new();
    for (k, v) in rows {
        let shown = match &v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        text.push_str(&format!("  {k:<22} {shown}\n"));
        table.push(Row::default().with("property", k).with("value", v));
    }
    if is_diagonal_type(g) {
        let cells: Vec<Value> = sunada_numbers(g)?
            .nonzero()
            .into_iter()
            .map(|(d, t, c)| json!([d, t, c]))
            .collect();
        let shown: Vec<String> = cells.iter().map(|c| format!("c{}{}={}", c[0], c[1], c[2])).collect();
        text.push_str(&format!("  {:<22} {}\n", "sunada_numbers", shown.join(" ")));
        table.push(Row::default().with("property", "sunada_numbers").with("value", cells));
    }
    Ok(Report {
        name: l.def.name.clone(),
        dimension: g.dimension(),
        table,
        text,
        ..Report::default()
    })
}

fn spectrum(l: &Loaded, p: PSelect, max_mu: &Rational) -> Result<Report> {
    let g = &l.group;
    let ps = p.values(g.dimension())?;
    let tables = spectra(g, max_mu)?;
    let mut text = format!("{}: multiplicities d_(p,mu) for mu <= {max_mu}\n", l.def.name);
    let mut table = Vec::new();
    for &p in &ps {
        text.push_str(&format!("p = {p}\n"));
        for (mu, d) in &tables[p].entries {
            text.push_str(&format!("  {:>8}  {d}\n", mu.to_string()));
            table.push(Row::default().with("p", p).with("mu", rat(mu)).with("multiplicity", *d));
        }
    }
    Ok(Report {
        name: l.def.name.clone(),
        dimension: g.dimension(),
        table,
        text,
        ..Report::default()
    })
}

fn lengths(l: &Loaded, max_len2: &Rational, mode: LengthsMode, include_zero: bool) -> Result<Report> {
    l.require_torsion_free("counting closed geodesics")?;
    let g = &l.group;
    let report = conjugacy_classes(g, max_len2);
    let mode = mode.mode();
    let counted = matches!(mode, LengthMode::Counted | LengthMode::ComplexCounted);
    let mut text = format!("{}: closed geodesics with squared length <= {max_len2}\n", l.def.name);
    let mut classes = Vec::new();
    for ((len2, hol), count) in report.keyed(mode) {
        if !include_zero && num_traits::Zero::is_zero(&len2) {
            continue;
        }
        let mut row = Row::default()
            .with("squared_length", rat(&len2))
            .with("length", to_f64(&len2).sqrt());
        let mut line = format!("  {:<24}", show_length(&len2));
        if let Some(h) = &hol {
            row = row.with("holonomy_poly", h.to_string());
            line.push_str(&format!("  {:<28}", h.to_string()));
        }
        if counted {
            row = row.with("count", count);
            line.push_str(&format!("  {count}"));
        }
        text.push_str(line.trim_end());
        text.push('\n');
        classes.push(row);
    }
    Ok(Report {
        name: l.def.name.clone(),
        dimension: g.dimension(),
        classes,
        text,
        ..Report::default()
    })
}

fn length_witness(c: &LengthComparison) -> Option<Row> {
    c.divergence.as_ref().map(|d| {
        let mut row = Row::default().with("squared_length", rat(&d.squared_length));
        if let Some(h) = &d.holonomy_poly {
            row = row.with("holonomy_poly", h.to_string());
        }
        row.with("left", d.left).with("right", d.right)
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn compare(a: &Loaded, b: &Loaded, mode: CompareMode, p: PSelect, max_mu: &Rational, max_len2: &Rational) -> Result<Report> {
    let (ga, gb) = (&a.group, &b.group);
    if ga.dimension() != gb.dimension() {
        return Err(Error::DimensionMismatch(format!(
            "`{}` has dimension {} and `{}` has {}",
            a.def.name,
            ga.dimension(),
            b.def.name,
            gb.dimension()
        )));
    }
    let mut report = Report {
        name: format!("{} vs {}", a.def.name, b.def.name),
        dimension: ga.dimension(),
        ..Report::default()
    };
    let header = format!("{} vs {}\n", a.def.name, b.def.name);
    if !matches!(mode, CompareMode::PSpectrum | CompareMode::Criterion | CompareMode::Sunada) {
        a.require_torsion_free("comparing length spectra")?;
        b.require_torsion_free("comparing length spectra")?;
    }
    let positive = match mode {
        CompareMode::All => {
            let v = compare_pair(ga, gb, max_mu, max_len2)?;
            let iso_p = v.isospectral_p();
            let rows: Vec<(&str, String)> = vec![
                ("p_isospectral", format!("{iso_p:?}")),
                ("sunada", format!("{:?}", v.sunada).to_lowercase()),
                ("counted", yes_no(v.counted.equal()).into()),
                ("weak", yes_no(v.weak.equal()).into()),
                ("complex", yes_no(v.complex_weak.equal()).into()),
                ("complex_counted", yes_no(v.complex_counted.equal()).into()),
            ];
            report.text = header;
            for (k, val) in rows {
                report.text.push_str(&format!("  {k:<16} {val}\n"));
                report.table.push(Row::default().with("notion", k).with("verdict", val));
            }
            for c in &v.p_spectra {
                if let Some(d) = &c.divergence {
                    report
                        .witnesses
                        .push(Row::default().with("p", c.p).with("mu", rat(&d.mu)).with("left", d.left).with("right", d.right));
                }
            }
            for (name, c) in [("counted", &v.counted), ("weak", &v.weak), ("complex", &v.complex_weak), ("complex_counted", &v.complex_counted)] {
                if let Some(w) = length_witness(c) {
                    let mut row = Row::default().with("notion", name);
                    row.0.extend(w.0);
                    report.witnesses.push(row);
                }
            }
            None
        }
        CompareMode::Weak | CompareMode::Counted | CompareMode::Complex | CompareMode::ComplexCounted => {
            let lm = match mode {
                CompareMode::Weak => LengthMode::Weak,
                CompareMode::Counted => LengthMode::Counted,
                CompareMode::Complex => LengthMode::ComplexWeak,
                _ => LengthMode::ComplexCounted,
            };
            let c = compare_length_spectra(ga, gb, max_len2, lm)?;
            report.text = header;
            match &c.divergence {
                None => report.text.push_str(&format!("  equal up to squared length {max_len2}\n")),
                Some(d) => {
                    let hol = d.holonomy_poly.as_ref().map(|h| format!(", holonomy {h}")).unwrap_or_default();
                    report.text.push_str(&format!(
                        "  diverge at squared length {}{hol}: {} vs {}\n",
                        show_length(&d.squared_length),
                        d.left,
                        d.right
                    ));
                }
            }
            report.witnesses.extend(length_witness(&c));
            report.table.push(Row::default().with("cutoff", rat(max_len2)).with("equal", c.equal()));
            Some(c.equal())
        }
        CompareMode::PSpectrum => {
            report.text = header;
            let mut all_equal = true;
            for p in p.values(ga.dimension())? {
                let c = compare_p_spectra(ga, gb, p, max_mu)?;
                all_equal &= c.equal();
                match &c.divergence {
                    None => report.text.push_str(&format!("  p = {p}: equal up to mu = {max_mu}\n")),
                    Some(d) => {
                        report
                            .text
                            .push_str(&format!("  p = {p}: diverge at mu = {}: {} vs {}\n", d.mu, d.left, d.right));
                        report
                            .witnesses
                            .push(Row::default().with("p", p).with("mu", rat(&d.mu)).with("left", d.left).with("right", d.right));
                    }
                }
                report.table.push(Row::default().with("p", p).with("equal", c.equal()));
            }
            Some(all_equal)
        }
        CompareMode::Criterion => {
            report.text = header;
            let mut all_equal = true;
            for p in p.values(ga.dimension())? {
                let c = diagonal_isospectrality_criterion(ga, gb, p)?;
                all_equal &= c.isospectral;
                report.text.push_str(&format!("  p = {p}: {}\n", if c.isospectral { "isospectral" } else { "not isospectral" }));
                for &(d, t, x, y) in &c.witnesses {
                    report.text.push_str(&format!("    c{d}{t}: {x} vs {y}\n"));
                    report
                        .witnesses
                        .push(Row::default().with("p", p).with("d", d).with("t", t).with("left", x).with("right", y));
                }
                report.table.push(Row::default().with("p", p).with("equal", c.isospectral));
            }
            Some(all_equal)
        }
        CompareMode::Sunada => {
            let v = compare_pair(ga, gb, max_mu, &Rational::from_integer(0))?;
            if is_diagonal_type(ga) && is_diagonal_type(gb) {
                let (sa, sb) = (sunada_numbers(ga)?, sunada_numbers(gb)?);
                for d in 0..=ga.dimension() {
                    for t in 0..=ga.dimension() {
                        if sa.get(d, t) != sb.get(d, t) {
                            report.witnesses.push(
                                Row::default().with("d", d).with("t", t).with("left", sa.get(d, t)).with("right", sb.get(d, t)),
                            );
                        }
                    }
                }
            }
            let verdict = format!("{:?}", v.sunada).to_lowercase();
            report.text = format!("{header}  sunada: {verdict}\n");
            report.table.push(Row::default().with("sunada", verdict));
            Some(v.sunada == Sunada::Yes)
        }
    };
    if let Some(ok) = positive {
        report.verdict = Some(if ok { "isospectral" } else { "not-isospectral" }.to_string());
        report.exit = if ok { 0 } else { 2 };
    }
    Ok(report)
}

fn zeta(l: &Loaded, p: PSelect, s_list: &[f64]) -> Result<Report> {
    l.require_torsion_free("the geometric side")?;
    let g = &l.group;
    let ps = p.values(g.dimension())?;
    let reports = poisson_check_many(g, &ps, s_list)?;
    let diagonal = is_diagonal_type(g);
    let mut text = format!("{}: heat trace Z_p(s), spectral vs geometric side\n", l.def.name);
    let mut table = Vec::new();
    let mut pass = true;
    for r in &reports {
        for pt in &r.points {
            pass &= pt.pass;
            let diag = if diagonal { Some(diagonal_zeta(g, r.p, pt.s)?.value) } else { None };
            text.push_str(&format!(
                "  p={:<2} s={:<5} spectral={:.12} geometric={:.12} |diff|={:.2e} <= {:.2e} {}\n",
                r.p,
                pt.s,
                pt.spectral.value,
                pt.geometric.value,
                pt.difference,
                pt.tolerance,
                if pt.pass { "ok" } else { "FAIL" }
            ));
            table.push(
                Row::default()
                    .with("p", r.p)
                    .with("s", pt.s)
                    .with("route", serde_json::to_value(r.route).expect("enum serialises"))
                    .with("spectral", pt.spectral.value)
                    .with("spectral_tail", pt.spectral.tail)
                    .with("geometric", pt.geometric.value)
                    .with("geometric_tail", pt.geometric.tail)
                    .with("diagonal", diag)
                    .with("difference", pt.difference)
                    .with("tolerance", pt.tolerance)
                    .with("pass", pt.pass),
            );
        }
    }
    Ok(Report {
        name: l.def.name.clone(),
        dimension: g.dimension(),
        verdict: Some(if pass { "pass" } else { "fail" }.to_string()),
        table,
        text,
        exit: if pass { 0 } else { 1 },
        ..Report::default()
    })
}

fn emit(report: &Report, format: Format, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Text => write!(out, "{}", report.text).map_err(io),
        Format::Json => {
            let s = serde_json::to_string_pretty(report).map_err(|e| Error::Io(e.to_string()))?;
            writeln!(out, "{s}").map_err(io)
        }
        Format::Csv => {
            let rows = if report.classes.is_empty() { &report.table } else { &report.classes };
            let mut w = csv::Writer::from_writer(Vec::new());
            if let Some(first) = rows.first() {
                w.write_record(first.0.iter().map(|(k, _)| *k)).map_err(|e| Error::Io(e.to_string()))?;
            }
            for row in rows {
                let cells: Vec<String> = row
                    .0
                    .iter()
                    .map(|(_, v)| match v {
                        Value::String(s) => s.clone(),
                        Value::Null => String::new(),
                        other => other.to_string(),
                    })
                    .collect();
                w.write_record(&cells).map_err(|e| Error::Io(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
            out.write_all(&bytes).map_err(io)
        }
    }
}
