use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use tusv::cache::{CacheStatus, MaskCache};
use tusv::classifier::{self, CandidateSurvey, Caps, FamilyKind, TheoremList};
use tusv::grammar::{parse_form, parse_term};
use tusv::sieve::{check_nonrep, form_mask, ValueMask, WITNESS_STREAM_THRESHOLD};
use tusv::theorems::{self, Conjecture, ScanReport};
use tusv::verdict::Verdict;
use tusv::{Error, TernaryForm};

#[derive(Parser)]
#[command(
    name = "tusv",
    version,
    about = "Representation sieves for ternary sums of squares, triangular and polygonal numbers"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Upper bound N of the sieved range.
    #[arg(long, global = true)]
    bound: Option<u64>,
    /// Worker threads (defaults to available parallelism).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,
    /// Mask cache directory.
    #[arg(long, global = true, env = "TUSV_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    /// Reject gp(c,d) with d dividing c.
    #[arg(long, global = true)]
    strict: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a term at z, or a form at (x, y[, z]).
    Eval {
        spec: String,
        #[arg(allow_negative_numbers = true, required = true)]
        args: Vec<i64>,
    },
    /// Sieve a form and summarise its attained set.
    Sieve {
        #[arg(long)]
        form: String,
    },
    /// List non-attained values, or certify a single value with --check.
    Witness {
        #[arg(long)]
        form: String,
        #[arg(long)]
        check: Option<u64>,
    },
    /// Sweep a parameter family and compare survivors with a published list.
    Classify {
        #[arg(long)]
        family: String,
        /// List to compare against: 1.1, 1.2, 1.3i, 1.3ii or liouville.
        #[arg(long)]
        expect: Option<String>,
        /// Parameter ranges, e.g. `a=1..2,b=1..6,c=1..35,d=1..5`.
        #[arg(long)]
        caps: Option<String>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// Bounded universality scan of a conjecture's forms.
    Conjectures {
        #[arg(long, default_value = "1.2")]
        which: String,
    },
    /// Manage the mask cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Euler,
    GaussLegendre,
    Reductions,
    Tables,
    S07,
    Thm14,
    Witnesses,
    Anchors,
    Lists,
    All,
}

#[derive(Subcommand)]
enum CacheAction {
    /// Build (or load) the mask for a form.
    Build {
        #[arg(long)]
        form: String,
    },
    /// Print the file a form's mask is stored in.
    Path {
        #[arg(long)]
        form: String,
    },
    /// Delete every cached mask.
    Clear,
}

/// A run that finished: either every check passed or a mismatch was found.
enum Outcome {
    Pass,
    Mismatch,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.global.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j as usize).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

type Res<T> = Result<T, Error>;

fn run(cli: &Cli) -> Res<Outcome> {
    let g = &cli.global;
    let out = io::stdout().lock();
    let mut out = BufWriter::new(out);
    let outcome = match &cli.command {
        Command::Eval { spec, args } => eval(g, spec, args, &mut out)?,
        Command::Sieve { form } => sieve(g, &parse(g, form)?, &mut out)?,
        Command::Witness { form, check: Some(n) } => witness_check(g, &parse(g, form)?, *n, &mut out)?,
        Command::Witness { form, check: None } => witnesses(g, &parse(g, form)?, &mut out)?,
        Command::Classify { family, expect, caps } => {
            classify(g, family, expect.as_deref(), caps.as_deref(), &mut out)?
        }
        Command::Verify { suite } => verify(g, *suite, &mut out)?,
        Command::Conjectures { which } => conjectures(g, which.parse()?, &mut out)?,
        Command::Cache { action } => cache(g, action, &mut out)?,
    };
    out.flush()?;
    Ok(outcome)
}

fn parse(g: &Global, form: &str) -> Res<TernaryForm> {
    parse_form(form, g.strict)
}

fn no_csv(g: &Global, what: &str) -> Res<()> {
    if g.output == Output::Csv {
        return Err(Error::Config(format!(
            "csv output is only available for witness lists and survivor tables, not {what}"
        )));
    }
    Ok(())
}

fn write_json<W: Write, T: Serialize>(out: &mut W, value: &T) -> Res<()> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

fn eval<W: Write>(g: &Global, spec: &str, args: &[i64], out: &mut W) -> Res<Outcome> {
    no_csv(g, "eval")?;
    let value = if spec.contains('+') {
        let f = parse(g, spec)?;
        if !(2..=3).contains(&args.len()) {
            return Err(Error::Config("a form takes two or three arguments".into()));
        }
        let mut total = 0i64;
        for (t, &z) in f.terms().iter().zip(args.iter().chain(std::iter::repeat(&0))) {
            total = total.checked_add(t.eval(z)?).ok_or_else(|| Error::Overflow(spec.to_string()))?;
        }
        total
    } else {
        let t = parse_term(spec, g.strict)?;
        match args {
            [z] => t.eval(*z)?,
            _ => return Err(Error::Config("a term takes one argument".into())),
        }
    };
    match g.output {
        Output::Json => write_json(out, &json!({ "spec": spec, "args": args, "value": value }))?,
        _ => writeln!(out, "{value}")?,
    }
    Ok(Outcome::Pass)
}

fn bound_or(g: &Global, default: u64) -> u64 {
    g.bound.unwrap_or(default)
}

fn cached_mask(g: &Global, f: &TernaryForm, bound: u64) -> Res<(ValueMask, &'static str)> {
    let Some(dir) = &g.cache_dir else {
        return Ok((form_mask(f, bound)?, "off"));
    };
    let (mask, status) = MaskCache::new(dir).get_or_build(f, bound)?;
    Ok((
        mask,
        match status {
            CacheStatus::Hit => "hit",
            CacheStatus::Miss => "miss",
            CacheStatus::Rebuilt(why) => {
                eprintln!("warning: cached mask unusable ({why}); rebuilt");
                "rebuilt"
            }
        },
    ))
}

fn sieve<W: Write>(g: &Global, f: &TernaryForm, out: &mut W) -> Res<Outcome> {
    no_csv(g, "sieve summaries")?;
    let bound = bound_or(g, 1_000_000);
    let (mask, cache) = cached_mask(g, f, bound)?;
    let attained = mask.count_ones();
    let first = mask.first_zero();
    match g.output {
        Output::Json => write_json(
            out,
            &json!({
                "form": f.to_string(),
                "pretty": f.pretty(),
                "bound": bound,
                "attained": attained,
                "missing": bound + 1 - attained,
                "first_witness": first,
                "cache": cache,
            }),
        )?,
        _ => {
            writeln!(out, "form      {}", f.pretty())?;
            writeln!(out, "bound     {bound}")?;
            writeln!(out, "attained  {attained} of {}", bound + 1)?;
            match first {
                Some(w) => writeln!(out, "first witness {w}")?,
                None => writeln!(out, "universal up to {bound}")?,
            }
        }
    }
    Ok(Outcome::Pass)
}

/// Writes witnesses straight from the mask, so memory stays flat however
/// many there are.
fn witnesses<W: Write>(g: &Global, f: &TernaryForm, out: &mut W) -> Res<Outcome> {
    let bound = bound_or(g, 1000);
    let (mask, _) = cached_mask(g, f, bound)?;
    let count = bound + 1 - mask.count_ones();
    if count as usize > WITNESS_STREAM_THRESHOLD {
        eprintln!("note: streaming {count} witnesses");
    }
    match g.output {
        Output::Json => {
            write!(
                out,
                "{{\"form\":{},\"bound\":{bound},\"exhaustive\":true,\"count\":{count},\"witnesses\":[",
                json!(f.to_string())
            )?;
            for (i, w) in mask.iter_zeros().enumerate() {
                write!(out, "{}{w}", if i == 0 { "" } else { "," })?;
            }
            writeln!(out, "]}}")?;
        }
        Output::Csv => {
            writeln!(out, "witness")?;
            for w in mask.iter_zeros() {
                writeln!(out, "{w}")?;
            }
        }
        Output::Text => {
            writeln!(out, "{}: {count} non-attained values up to {bound}", f.pretty())?;
            for w in mask.iter_zeros() {
                writeln!(out, "{w}")?;
            }
        }
    }
    Ok(Outcome::Pass)
}

fn witness_check<W: Write>(g: &Global, f: &TernaryForm, n: u64, out: &mut W) -> Res<Outcome> {
    no_csv(g, "certificates")?;
    let c = check_nonrep(f, n)?;
    match g.output {
        Output::Json => write_json(out, &c)?,
        _ => match c.representation {
            Some(r) => writeln!(out, "{n} = {} at {:?}", f.pretty(), r)?,
            None => writeln!(out, "{n} is not attained by {}", f.pretty())?,
        },
    }
    Ok(Outcome::Pass)
}

fn parse_caps(s: &str) -> Res<Caps> {
    let mut caps = Caps { a: (1, 1), b: (1, 1), c: (1, 1), d: (1, 1), excluded_ab: Vec::new() };
    let bad = || Error::Config(format!("caps `{s}`: expected name=lo..hi entries"));
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, range) = part.split_once('=').ok_or_else(bad)?;
        let (lo, hi) = match range.split_once("..") {
            Some((lo, hi)) => (lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?),
            None => (1, range.trim().parse().map_err(|_| bad())?),
        };
        match name.trim() {
            "a" => caps.a = (lo, hi),
            "b" => caps.b = (lo, hi),
            "c" => caps.c = (lo, hi),
            "d" => caps.d = (lo, hi),
            other => return Err(Error::Config(format!("unknown cap `{other}`"))),
        }
    }
    caps.validate()?;
    Ok(caps)
}

#[derive(Serialize)]
struct SurvivorRow {
    a: u32,
    b: u32,
    c: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    d: Option<u32>,
    display: String,
}

fn classify<W: Write>(g: &Global, family: &str, expect: Option<&str>, caps: Option<&str>, out: &mut W) -> Res<Outcome> {
    let family: FamilyKind = family.parse()?;
    let list: Option<TheoremList> = expect.map(str::parse).transpose()?;
    if let Some(l) = list {
        if l.family() != family {
            return Err(Error::Config(format!("list {} belongs to family {}, not {family}", l.key(), l.family())));
        }
    }
    let default_list = list.or(match family {
        FamilyKind::TypeI => Some(TheoremList::SquaresSquares),
        FamilyKind::TypeII => Some(TheoremList::TriangularTriangular),
        FamilyKind::TriTriple => Some(TheoremList::Liouville),
        FamilyKind::TypeIII => None,
    });
    let caps = match (caps, default_list) {
        (Some(s), _) => parse_caps(s)?,
        (None, Some(l)) => l.default_caps(),
        (None, None) => return Err(Error::Config("family III needs --caps or --expect".into())),
    };
    let w = g.bound.or(default_list.map(TheoremList::default_witness_bound)).unwrap_or(1000);
    let mut survey = classifier::enumerate_survivors(family, &caps, w)?;
    if let Some(l) = list {
        survey = survey.compare(l.expected());
    }
    write_survey(g, &survey, out)?;
    Ok(if list.is_some() && !survey.expected_match() { Outcome::Mismatch } else { Outcome::Pass })
}

fn write_survey<W: Write>(g: &Global, s: &CandidateSurvey, out: &mut W) -> Res<()> {
    let rows: Vec<SurvivorRow> = s
        .survivors
        .iter()
        .map(|t| SurvivorRow { a: t.a, b: t.b, c: t.c, d: t.d, display: s.family.display(*t) })
        .collect();
    match g.output {
        Output::Json => write_json(
            out,
            &json!({
                "family": s.family.to_string(),
                "caps": s.caps,
                "witness_bound": s.witness_bound,
                "survivors": rows,
                "expected_match": s.expected_match(),
                "diff": s.diff.clone().unwrap_or_default(),
            }),
        )?,
        Output::Csv => {
            writeln!(out, "a,b,c,d,display")?;
            for r in &rows {
                let d = r.d.map(|d| d.to_string()).unwrap_or_default();
                writeln!(out, "{},{},{},{d},{}", r.a, r.b, r.c, r.display)?;
            }
        }
        Output::Text => {
            writeln!(out, "family {}: {} survivors at W={}", s.family, rows.len(), s.witness_bound)?;
            for r in &rows {
                writeln!(out, "  {}", r.display)?;
            }
            if let Some(d) = &s.diff {
                if d.is_empty() {
                    writeln!(out, "matches the expected list")?;
                }
                for t in &d.missing {
                    writeln!(out, "MISSING {}", s.family.display(*t))?;
                }
                for t in &d.extra {
                    writeln!(out, "EXTRA   {}", s.family.display(*t))?;
                }
            }
        }
    }
    Ok(())
}

fn scan_verdict(r: &ScanReport) -> Verdict {
    let mut v = Verdict::new(format!("{} up to {}", r.name, r.bound));
    for e in &r.entries {
        v.check(e.witness.is_none(), || format!("{} misses {}", e.pretty, e.witness.unwrap_or_default()));
    }
    v
}

fn suite(g: &Global, s: Suite) -> Res<Vec<Verdict>> {
    Ok(match s {
        Suite::Euler => vec![theorems::euler_identity_check(bound_or(g, 1_000_000), 1000)?],
        Suite::GaussLegendre => vec![theorems::gauss_legendre_check(bound_or(g, 100_000))?],
        Suite::Reductions => {
            let n = bound_or(g, 10_000);
            theorems::standard_reductions().iter().map(|r| theorems::shift_reduction_equiv(r, n)).collect::<Res<_>>()?
        }
        Suite::Tables => theorems::decomposition_tables_verify(g.bound.map_or(1000, |b| b as i64))?,
        Suite::S07 => vec![theorems::s07_parity_scan(bound_or(g, 10_000))?],
        Suite::Thm14 => vec![scan_verdict(&theorems::proved_scan(bound_or(g, 1_000_000))?)],
        Suite::Witnesses => vec![classifier::confirm_paper_witnesses()?.verdict()],
        Suite::Anchors => vec![classifier::anchor_caps_check()?],
        Suite::Lists => TheoremList::ALL
            .into_iter()
            .map(|l| {
                let mut v = classifier::reproduce_theorem_list(l)?.verdict();
                v.name = format!("list {}: {}", l.key(), v.name);
                Ok(v)
            })
            .collect::<Res<_>>()?,
        Suite::All => {
            let all = [
                Suite::Euler,
                Suite::GaussLegendre,
                Suite::Reductions,
                Suite::Tables,
                Suite::S07,
                Suite::Thm14,
                Suite::Witnesses,
                Suite::Anchors,
                Suite::Lists,
            ];
            let mut out = Vec::new();
            for s in all {
                out.extend(suite(g, s)?);
            }
            out
        }
    })
}

fn write_verdicts<W: Write>(g: &Global, vs: &[Verdict], out: &mut W) -> Res<()> {
    match g.output {
        Output::Json => write_json(out, &json!({ "passed": vs.iter().all(|v| v.passed), "verdicts": vs }))?,
        _ => {
            for v in vs {
                writeln!(out, "{} {} ({} checks)", if v.passed { "PASS" } else { "FAIL" }, v.name, v.checked)?;
                for f in &v.failures {
                    writeln!(out, "    {f}")?;
                }
                if v.failure_count > v.failures.len() as u64 {
                    writeln!(out, "    ... {} failures in total", v.failure_count)?;
                }
                for n in &v.notes {
                    writeln!(out, "    note: {n}")?;
                }
            }
        }
    }
    Ok(())
}

fn verify<W: Write>(g: &Global, s: Suite, out: &mut W) -> Res<Outcome> {
    no_csv(g, "verdicts")?;
    let vs = suite(g, s)?;
    write_verdicts(g, &vs, out)?;
    Ok(if vs.iter().all(|v| v.passed) { Outcome::Pass } else { Outcome::Mismatch })
}

fn conjectures<W: Write>(g: &Global, which: Conjecture, out: &mut W) -> Res<Outcome> {
    let r = theorems::conjecture_scan(which, bound_or(g, 1_000_000))?;
    match g.output {
        Output::Json => write_json(out, &json!({ "passed": r.passed(), "report": r }))?,
        Output::Csv => {
            writeln!(out, "form,witness")?;
            for e in &r.entries {
                writeln!(out, "{},{}", e.pretty, e.witness.map(|w| w.to_string()).unwrap_or_default())?;
            }
        }
        Output::Text => {
            writeln!(out, "{}: {} forms up to {}", r.name, r.entries.len(), r.bound)?;
            for e in &r.entries {
                match e.witness {
                    Some(w) => writeln!(out, "COUNTEREXAMPLE {} misses {w}", e.pretty)?,
                    None => writeln!(out, "  ok {}", e.pretty)?,
                }
            }
        }
    }
    Ok(if r.passed() { Outcome::Pass } else { Outcome::Mismatch })
}

fn cache<W: Write>(g: &Global, action: &CacheAction, out: &mut W) -> Res<Outcome> {
    no_csv(g, "cache actions")?;
    let dir = g
        .cache_dir
        .as_ref()
        .ok_or_else(|| Error::Config("no cache directory (--cache-dir or TUSV_CACHE_DIR)".into()))?;
    let cache = MaskCache::new(dir);
    let bound = bound_or(g, 1_000_000);
    let report = match action {
        CacheAction::Build { form } => {
            let f = parse(g, form)?;
            let (mask, status) = cached_mask(g, &f, bound)?;
            json!({ "path": cache.path(&f, bound), "bound": bound, "attained": mask.count_ones(), "status": status })
        }
        CacheAction::Path { form } => json!({ "path": cache.path(&parse(g, form)?, bound) }),
        CacheAction::Clear => json!({ "removed": cache.clear()? }),
    };
    match g.output {
        Output::Json => write_json(out, &report)?,
        _ => {
            for (k, v) in report.as_object().expect("object") {
                writeln!(out, "{k}: {}", v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string()))?;
            }
        }
    }
    Ok(Outcome::Pass)
}
