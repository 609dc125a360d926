//! Command-line front end. [`run`] takes the arguments and output streams
//! explicitly and returns the exit status: 0 for yes, 1 for no, 2 for usage
//! or input errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::dot::hasse_dot;
use crate::enumerate::{
    all_congruences, all_posets, all_tolerances, family_poset, ToleranceFamily,
};
use crate::quotient::{quotient_poset, QuotientPoset};
use crate::refinement::{exists_order_preserving_bijection, order_violation, RefinementPair};
use crate::relation::{blocks, first_violation, is_tolerance};
use crate::text::{format_cliques, format_poset, parse_poset, parse_relation};
use crate::verify::{sweep, Claim, SweepOptions, DEFAULT_FAILURE_CAP};
use crate::{Error, Poset, Relation};

#[derive(Parser, Debug)]
#[command(name = "posetol", version, about = "Tolerances on finite posets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct Input {
    /// Poset file (`elements:` and `covers:` lines).
    #[arg(long)]
    poset: PathBuf,
    /// Relation file (`cliques:` line).
    #[arg(long)]
    rel: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a relation is a tolerance (or a congruence).
    Check {
        #[command(flatten)]
        input: Input,
        /// Decide congruence instead of tolerance.
        #[arg(long)]
        congruence: bool,
    },
    /// Print the blocks of a relation, one per line.
    Blocks {
        #[command(flatten)]
        input: Input,
    },
    /// Print the quotient poset of a tolerance.
    Quotient {
        #[command(flatten)]
        input: Input,
        /// Emit the Hasse diagram as DOT instead.
        #[arg(long)]
        dot: bool,
    },
    /// List every poset, tolerance or congruence.
    Enumerate {
        #[arg(long, value_enum)]
        what: What,
        /// Poset file, for tolerances and congruences.
        #[arg(long)]
        poset: Option<PathBuf>,
        /// Poset size, for posets.
        #[arg(long)]
        size: Option<usize>,
    },
    /// Compare two tolerances under the refinement order.
    Refine {
        #[arg(long)]
        poset: PathBuf,
        #[arg(long = "rel-s")]
        rel_s: PathBuf,
        #[arg(long = "rel-t")]
        rel_t: PathBuf,
    },
    /// Replay the structural claims on every poset up to a size.
    Verify {
        #[arg(long = "max-n", default_value_t = 4)]
        max_n: usize,
        /// Comma-separated claim ids; all claims when omitted.
        #[arg(long, value_delimiter = ',')]
        claims: Vec<String>,
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long = "failure-cap", default_value_t = DEFAULT_FAILURE_CAP)]
        failure_cap: usize,
        /// Emit the full report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Emit the Hasse diagram of a poset, or of a quotient with `--rel`.
    Dot {
        #[arg(long)]
        poset: PathBuf,
        #[arg(long)]
        rel: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum What {
    Posets,
    Tolerances,
    Congruences,
}

/// A failure to produce an answer; always exit status 2.
#[derive(Debug)]
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<(String, i32), Failure>;

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let stream: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(stream, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn dispatch(command: Command) -> Outcome {
    match command {
        Command::Check { input, congruence } => check(&input, congruence),
        Command::Blocks { input } => {
            let (p, t) = load_pair(&input.poset, &input.rel)?;
            let text = blocks(&t)
                .iter()
                .map(|b| crate::quotient::block_label(&p, b) + "\n")
                .collect();
            Ok((text, 0))
        }
        Command::Quotient { input, dot } => quotient(&input, dot),
        Command::Enumerate { what, poset, size } => enumerate(what, poset.as_deref(), size),
        Command::Refine {
            poset,
            rel_s,
            rel_t,
        } => refine(&poset, &rel_s, &rel_t),
        Command::Verify {
            max_n,
            claims,
            threads,
            failure_cap,
            json,
        } => {
            let mut options = SweepOptions::new(max_n);
            if !claims.is_empty() {
                options.claims = claims
                    .iter()
                    .map(|c| c.trim().parse::<Claim>())
                    .collect::<Result<_, _>>()
                    .map_err(Failure)?;
            }
            options.threads = threads;
            options.failure_cap = failure_cap;
            let report = sweep(&options)?;
            let text = if json {
                report.to_json()
            } else {
                report.summary_table()
            };
            Ok((text, if report.passed() { 0 } else { 1 }))
        }
        Command::Dot { poset, rel } => {
            let p = load_poset(&poset)?;
            let name = stem(&poset);
            match rel {
                None => Ok((hasse_dot(&p, &name), 0)),
                Some(rel) => {
                    let t = load_relation(&p, &poset, &rel)?;
                    let q = quotient_poset(&p, &t)
                        .map_err(|e| Failure(format!("{}: {e}", rel.display())))?;
                    Ok((hasse_dot(q.poset(), &format!("{name}/{}", stem(&rel))), 0))
                }
            }
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

fn load_poset(path: &Path) -> Result<Poset, Failure> {
    parse_poset(&read(path)?).map_err(|e| {
        Failure(format!(
            "{}:{}:{}: {}",
            path.display(),
            e.line,
            e.column,
            e.message
        ))
    })
}

/// Parses a relation file, checking any `poset:` line against the name of
/// the poset file (with or without its extension).
fn load_relation(p: &Poset, poset_path: &Path, path: &Path) -> Result<Relation, Failure> {
    let parsed = parse_relation(&read(path)?, p).map_err(|e| {
        Failure(format!(
            "{}:{}:{}: {}",
            path.display(),
            e.line,
            e.column,
            e.message
        ))
    })?;
    if let Some(name) = &parsed.poset_name {
        let file_name = poset_path
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        if *name != stem(poset_path) && *name != file_name {
            return Err(Failure(format!(
                "{} is for poset `{name}`, not `{}`",
                path.display(),
                poset_path.display()
            )));
        }
    }
    Ok(parsed.relation)
}

fn load_pair(poset: &Path, rel: &Path) -> Result<(Poset, Relation), Failure> {
    let p = load_poset(poset)?;
    let t = load_relation(&p, poset, rel)?;
    Ok((p, t))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn check(input: &Input, congruence: bool) -> Outcome {
    let (p, t) = load_pair(&input.poset, &input.rel)?;
    let mut out = String::new();
    let witness = first_violation(&p, &t);
    let tolerance = witness.is_none();
    let _ = writeln!(out, "tolerance: {}", yes_no(tolerance));
    if let Some(w) = &witness {
        let _ = writeln!(out, "witness: {}", w.describe(&p));
    }
    let transitive = t.is_transitive();
    let _ = writeln!(out, "congruence: {}", yes_no(tolerance && transitive));
    if congruence && tolerance && !transitive {
        if let Some((x, y, z)) = intransitive_triple(&t) {
            let _ = writeln!(
                out,
                "witness: ({0},{1}) and ({1},{2}) related but ({0},{2}) not",
                p.label(x),
                p.label(y),
                p.label(z)
            );
        }
    }
    let verdict = if congruence {
        tolerance && transitive
    } else {
        tolerance
    };
    Ok((out, if verdict { 0 } else { 1 }))
}

fn intransitive_triple(t: &Relation) -> Option<(usize, usize, usize)> {
    (0..t.len()).find_map(|x| {
        t.related(x).iter().find_map(|y| {
            t.related(y)
                .iter()
                .find(|&z| !t.contains(x, z))
                .map(|z| (x, y, z))
        })
    })
}

fn not_a_tolerance(p: &Poset, t: &Relation, out: &mut String) {
    let _ = writeln!(out, "tolerance: no");
    if let Some(w) = first_violation(p, t) {
        let _ = writeln!(out, "witness: {}", w.describe(p));
    }
}

fn quotient(input: &Input, dot: bool) -> Outcome {
    let (p, t) = load_pair(&input.poset, &input.rel)?;
    let mut out = String::new();
    if !is_tolerance(&p, &t) {
        not_a_tolerance(&p, &t, &mut out);
        return Ok((out, 1));
    }
    let q = quotient_poset(&p, &t)?;
    if dot {
        let name = format!("{}/{}", stem(&input.poset), stem(&input.rel));
        return Ok((hasse_dot(q.poset(), &name), 0));
    }
    for label in q.poset().labels() {
        let _ = writeln!(out, "{label}");
    }
    let _ = writeln!(out, "{}", covers_line(q.poset()));
    Ok((out, 0))
}

fn covers_line(p: &Poset) -> String {
    let covers: Vec<String> = p
        .covers()
        .into_iter()
        .map(|(a, b)| format!("{}<{}", p.label(a), p.label(b)))
        .collect();
    if covers.is_empty() {
        "covers:".to_string()
    } else {
        format!("covers: {}", covers.join(" "))
    }
}

fn print_family(family: &ToleranceFamily, prefix: &str, out: &mut String) {
    let p = family.poset();
    let _ = writeln!(out, "count: {}", family.len());
    for (i, t) in family.members().iter().enumerate() {
        let cliques = format_cliques(p, t);
        let _ = writeln!(
            out,
            "{prefix}{}: {}",
            i + 1,
            if cliques.is_empty() {
                "(diagonal)"
            } else {
                &cliques
            }
        );
    }
    let order = relabel(&family_poset(family), prefix);
    let _ = writeln!(out, "{}", covers_line(&order));
}

fn enumerate(what: What, poset: Option<&Path>, size: Option<usize>) -> Outcome {
    let mut out = String::new();
    match what {
        What::Posets => {
            let n = size.ok_or_else(|| Failure("--size is required for posets".into()))?;
            let posets = all_posets(n)?;
            let _ = writeln!(out, "count: {}", posets.len());
            for p in posets {
                let form = p.canonical_form()?;
                let text = format_poset(&p);
                let covers = text.lines().nth(1).unwrap_or("covers:");
                let _ = writeln!(out, "{form}  {covers}");
            }
        }
        What::Tolerances | What::Congruences => {
            let path = poset.ok_or_else(|| Failure("--poset is required".into()))?;
            let p = load_poset(path)?;
            let family = if what == What::Tolerances {
                all_tolerances(&p)?
            } else {
                all_congruences(&p)?
            };
            let prefix = if what == What::Tolerances { "T" } else { "C" };
            print_family(&family, prefix, &mut out);
        }
    }
    Ok((out, 0))
}

/// The same order with labels `prefix1`, `prefix2`, ...
fn relabel(p: &Poset, prefix: &str) -> Poset {
    let labels = (1..=p.len()).map(|i| format!("{prefix}{i}")).collect();
    let leq: Vec<Vec<bool>> = (0..p.len())
        .map(|i| (0..p.len()).map(|j| p.leq(i, j)).collect())
        .collect();
    Poset::from_leq(labels, &leq).expect("relabelling keeps the order")
}

fn named_blocks(q: &QuotientPoset, named: &Poset) -> String {
    (0..q.len())
        .map(|i| format!("{}={}", named.label(i), q.poset().label(i)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn refine(poset: &Path, rel_s: &Path, rel_t: &Path) -> Outcome {
    let p = load_poset(poset)?;
    let s = load_relation(&p, poset, rel_s)?;
    let t = load_relation(&p, poset, rel_t)?;
    let mut out = String::new();
    for (name, r) in [("S", &s), ("T", &t)] {
        if !is_tolerance(&p, r) {
            let _ = write!(out, "{name} ");
            not_a_tolerance(&p, r, &mut out);
            return Ok((out, 1));
        }
    }
    let pair = RefinementPair::new(&p, &s, &t)?;
    let b = relabel(pair.s_quotient().poset(), "B");
    let c = relabel(pair.t_quotient().poset(), "C");
    let _ = writeln!(out, "S blocks: {}", named_blocks(pair.s_quotient(), &b));
    let _ = writeln!(out, "T blocks: {}", named_blocks(pair.t_quotient(), &c));
    let refines = pair.refines()?;
    let _ = writeln!(out, "S <= T: {}", yes_no(refines));
    if !refines {
        return Ok((out, 1));
    }
    let ts = pair.quotient_relation()?;
    let _ = writeln!(out, "T/S cliques: {}", blocks_in(&b, &ts));
    let ts_tolerance = is_tolerance(&b, &ts);
    let _ = writeln!(out, "T/S tolerance: {}", yes_no(ts_tolerance));
    if !ts_tolerance {
        if let Some(w) = first_violation(&b, &ts) {
            let _ = writeln!(out, "witness: {}", w.describe(&b));
        }
        return Ok((out, 0));
    }
    let (f, double) = pair.injection()?;
    let d = relabel(double.poset(), "D");
    let _ = writeln!(
        out,
        "(P/S)/(T/S) blocks: {}",
        (0..double.len())
            .map(|i| format!("{}={}", d.label(i), blocks_label(&b, &double.blocks()[i])))
            .collect::<Vec<_>>()
            .join(" ")
    );
    let _ = writeln!(out, "(P/S)/(T/S) {}", covers_line(&d));
    let _ = writeln!(out, "P/T {}", covers_line(&c));
    let _ = writeln!(
        out,
        "f: {}",
        f.images
            .iter()
            .enumerate()
            .map(|(i, &j)| format!("{}->{}", c.label(i), d.label(j)))
            .collect::<Vec<_>>()
            .join(" ")
    );
    let _ = writeln!(
        out,
        "|(P/S)/(T/S)| >= |P/T|: {} >= {}",
        double.len(),
        c.len()
    );
    if pair.is_congruence_pair() {
        let (g, _) = pair.bijection()?;
        let _ = writeln!(
            out,
            "g: {}",
            g.images
                .iter()
                .enumerate()
                .map(|(i, &j)| format!("{}->{}", d.label(i), c.label(j)))
                .collect::<Vec<_>>()
                .join(" ")
        );
        let _ = writeln!(
            out,
            "g order-preserving: {}",
            yes_no(order_violation(&g, &d, &c).is_none())
        );
        let inverse = g.inverse().expect("g is bijective");
        match order_violation(&inverse, &c, &d) {
            None => {
                let _ = writeln!(out, "g inverse order-preserving: yes");
            }
            Some((x, y)) => {
                let _ = writeln!(
                    out,
                    "g inverse order-preserving: no ({} ⊑ {} but {} ⋢ {})",
                    c.label(x),
                    c.label(y),
                    d.label(inverse.images[x]),
                    d.label(inverse.images[y])
                );
            }
        }
    } else {
        let _ = writeln!(out, "g: not defined (S and T are not both congruences)");
    }
    if c.len() == d.len() {
        let forward = exists_order_preserving_bijection(&c, &d)?;
        let backward = exists_order_preserving_bijection(&d, &c)?;
        let _ = writeln!(
            out,
            "order-preserving bijection P/T -> (P/S)/(T/S): {}",
            yes_no(forward)
        );
        let _ = writeln!(
            out,
            "order-preserving bijection (P/S)/(T/S) -> P/T: {}",
            yes_no(backward)
        );
    }
    Ok((out, 0))
}

fn blocks_label(named: &Poset, set: &crate::ElementSet) -> String {
    crate::quotient::block_label(named, set)
}

/// Every block of `r`, singletons included.
fn blocks_in(named: &Poset, r: &Relation) -> String {
    blocks(r)
        .iter()
        .map(|bl| blocks_label(named, bl))
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("posetol").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_args(&[]).0, 2);
        assert_eq!(run_args(&["check"]).0, 2);
        assert_eq!(run_args(&["verify", "--claims", "nope"]).0, 2);
        assert_eq!(run_args(&["verify", "--max-n", "9"]).0, 2);
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("refine"));
    }

    #[test]
    fn verify_small() {
        let (code, out, _) = run_args(&["verify", "--max-n", "2"]);
        assert_eq!(code, 0);
        assert!(out.ends_with("PASS: 0 failures\n"), "{out}");
    }

    #[test]
    fn enumerate_posets() {
        let (code, out, _) = run_args(&["enumerate", "--what", "posets", "--size", "3"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("count: 5\n"), "{out}");
    }
}
