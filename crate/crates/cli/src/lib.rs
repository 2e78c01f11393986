//! Command-line surface over the `ainfty` library, plus the HTTP session
//! used by the explorer.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use ainfty::diagcat::{ar_triangle, ext1_nonzero, hom_dim, is_weak_cluster_tilting, CObj, DiagError};
use ainfty::infgon::{congruent, Arc, ArcQuiver, InfgonError, TriPresentation};
use ainfty::quiver::{Quiver, QuiverError};
use ainfty::seeds::{enumerate_variables_an, ArGrid, SeedError, DEFAULT_CAP};
use ainfty::tower::{
    check_cluster_morphism, check_stability, proj, random_sequences, SequenceOutcome, TowerError,
};
use ainfty::{LaurentError, LaurentPoly};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;

pub mod serve;

#[derive(Debug, Parser)]
#[command(name = "ainfty", version, about = "Cluster combinatorics of type A-infinity")]
pub struct Cli {
    /// Print a JSON envelope `{ok, result, error}` instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cluster variables of type A_n, one per line.
    Enumerate { n: u32 },
    /// The mesh grid of type A_n.
    Grid { n: u32 },
    /// Applies p(i, j) to a Laurent polynomial.
    Project { i: u32, j: u32, expr: String },
    /// Checks the images of the rank n grid under p(n-1, n).
    TowerCheck { n: u32 },
    /// Checks that p(i, j) is a rooted cluster morphism.
    CmCheck {
        i: u32,
        j: u32,
        /// Mutation sequences such as `1,2,1`; `-` is the empty sequence.
        seqs: Vec<String>,
        /// Also check this many random sequences.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Type of a presented triangulation.
    Classify { file: PathBuf },
    /// Flips an arc and prints the new presentation.
    Flip {
        file: PathBuf,
        #[arg(allow_hyphen_values = true)]
        arc: String,
    },
    /// Quiver of the triangulation on a window.
    Quiver {
        file: PathBuf,
        #[arg(allow_negative_numbers = true)]
        lo: i64,
        #[arg(allow_negative_numbers = true)]
        hi: i64,
    },
    /// Mutates a quiver file at a vertex.
    Mutate {
        file: PathBuf,
        #[arg(allow_negative_numbers = true)]
        k: i64,
    },
    /// Dimension and kind of Hom(x, y).
    Hom {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Dimension of Ext^1(x, y).
    Ext {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// The Auslander-Reiten triangle starting at x.
    Ar {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// Weak cluster tilting check on a window, by Ext and by crossings.
    TiltingCheck {
        file: PathBuf,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true, required = true)]
        window: Vec<i64>,
    },
    /// Whether two triangulations are congruent.
    Congruent { a: PathBuf, b: PathBuf },
    /// Serves the explorer session over HTTP on localhost.
    Serve {
        #[arg(default_value_t = 7878)]
        port: u16,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl From<LaurentError> for CliError {
    fn from(e: LaurentError) -> Self {
        match e {
            LaurentError::NotDivisible | LaurentError::DivisionByZero => CliError::Internal(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<SeedError> for CliError {
    fn from(e: SeedError) -> Self {
        match e {
            SeedError::NotDivisible(_) | SeedError::CapExceeded(_) | SeedError::RecurrenceFailure(..) => {
                CliError::Internal(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<TowerError> for CliError {
    fn from(e: TowerError) -> Self {
        match e {
            TowerError::Seed(s) => s.into(),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

macro_rules! usage_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Usage(e.to_string())
            }
        }
    )*};
}

usage_from!(InfgonError, DiagError, QuiverError, serde_json::Error);

/// Outcome of a command: a verdict (false only for failed predicates), the
/// text output, and the structured result.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub verdict: bool,
    pub text: String,
    pub result: Value,
}

impl Report {
    fn ok(text: String, result: Value) -> Self {
        Report { verdict: true, text, result }
    }

    pub fn exit_code(&self) -> u8 {
        if self.verdict {
            0
        } else {
            1
        }
    }
}

/// Exit code and printed output for a finished command.
pub fn render(outcome: &Result<Report, CliError>, as_json: bool) -> (u8, String) {
    match (outcome, as_json) {
        (Ok(r), false) => (r.exit_code(), r.text.clone()),
        (Ok(r), true) => (r.exit_code(), json!({"ok": true, "result": r.result, "error": null}).to_string() + "\n"),
        (Err(e), false) => (e.exit_code(), format!("error: {e}\n")),
        (Err(e), true) => {
            (e.exit_code(), json!({"ok": false, "result": null, "error": e.to_string()}).to_string() + "\n")
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub fn load_presentation(path: &Path) -> Result<TriPresentation, CliError> {
    serde_json::from_str(&read(path)?).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn parse_arc(s: &str) -> Result<Arc, CliError> {
    s.parse().map_err(|_| CliError::Usage(format!("expected an arc (m,n), got {s:?}")))
}

fn parse_obj(s: &str) -> Result<CObj, CliError> {
    Ok(s.parse()?)
}

fn parse_sequence(s: &str) -> Result<Vec<i64>, CliError> {
    let s = s.trim();
    if s == "-" || s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|k| k.trim().parse().map_err(|_| CliError::Usage(format!("bad mutation sequence {s:?}"))))
        .collect()
}

fn lines<I: IntoIterator<Item = String>>(items: I) -> String {
    items.into_iter().map(|l| l + "\n").collect()
}

/// Window quiver as JSON: arcs as pairs, arrows with multiplicities.
pub fn quiver_json(q: &ArcQuiver) -> Value {
    let arrows: Vec<Value> = q
        .arc_arrows()
        .into_iter()
        .map(|(a, b, m)| json!({"from": a, "to": b, "multiplicity": m}))
        .collect();
    json!({"vertices": q.arcs, "arrows": arrows})
}

pub fn run(cmd: &Command) -> Result<Report, CliError> {
    match cmd {
        Command::Enumerate { n } => {
            let vars = enumerate_variables_an(*n, DEFAULT_CAP)?;
            let shown: Vec<String> = vars.iter().map(LaurentPoly::to_string).collect();
            Ok(Report::ok(lines(shown.clone()), json!(shown)))
        }
        Command::Grid { n } => {
            let g = ArGrid::new(*n)?;
            let mut text = String::new();
            let mut rows = Vec::new();
            for (&(i, j), v) in g.entries() {
                writeln!(text, "y({i},{j}) = {v}").expect("string write");
                rows.push(json!({"i": i, "j": j, "value": v.to_string()}));
            }
            Ok(Report::ok(text, json!(rows)))
        }
        Command::Project { i, j, expr } => {
            let a: LaurentPoly = expr.parse()?;
            let image = proj(*i, *j, &a)?;
            Ok(Report::ok(format!("{image}\n"), json!(image.to_string())))
        }
        Command::TowerCheck { n } => {
            let r = check_stability(*n)?;
            let mut text = String::new();
            for c in &r.cells {
                let mark = if c.pass { "ok" } else { "FAIL" };
                writeln!(text, "y({},{}) {:?} {} {mark}", c.i, c.j, c.zone, c.image).expect("string write");
            }
            match r.step_c_variant {
                Some(v) => writeln!(text, "step (c): {v}"),
                None => writeln!(text, "step (c): neither variant holds"),
            }
            .expect("string write");
            Ok(Report { verdict: r.passed(), text, result: serde_json::to_value(&r)? })
        }
        Command::CmCheck { i, j, seqs, random, max_len, seed } => {
            let mut all: Vec<Vec<i64>> = seqs.iter().map(|s| parse_sequence(s)).collect::<Result<_, _>>()?;
            if let Some(count) = random {
                all.extend(random_sequences(*i, *count, *max_len, *seed));
            }
            if all.is_empty() {
                return Err(CliError::Usage("give mutation sequences or --random N".into()));
            }
            let r = check_cluster_morphism(*i, *j, &all)?;
            let failed = r.sequences.iter().filter(|(_, o)| matches!(o, SequenceOutcome::Failed { .. })).count();
            let skipped = r.sequences.iter().filter(|(_, o)| *o == SequenceOutcome::Skipped).count();
            let mut text = format!("CM1 {}\nCM2 {}\n", r.cm1, r.cm2);
            writeln!(text, "CM3 {} passed, {failed} failed, {skipped} skipped", r.checked()).expect("string write");
            for (s, o) in &r.sequences {
                if let SequenceOutcome::Failed { position } = o {
                    writeln!(text, "  {s:?} differs at position {position}").expect("string write");
                }
            }
            Ok(Report { verdict: r.passed(), text, result: serde_json::to_value(&r)? })
        }
        Command::Classify { file } => {
            let t = load_presentation(file)?;
            let ty = t.classify();
            let (left, right) = t.fountains();
            let result = json!({
                "type": ty.to_string(),
                "fountains": {"left": left, "right": right},
                "frozen": t.frozen_arc(),
            });
            Ok(Report::ok(format!("{ty}\n"), result))
        }
        Command::Flip { file, arc } => {
            let t = load_presentation(file)?;
            let a = parse_arc(arc)?;
            let produced = t.arcs().flip_target(a)?;
            let u = t.flip(a)?;
            let text = serde_json::to_string(&u)? + "\n";
            Ok(Report::ok(text, json!({"presentation": u, "produced": produced})))
        }
        Command::Quiver { file, lo, hi } => {
            let t = load_presentation(file)?;
            let q = t.quiver_of(*lo, *hi)?;
            let text = lines(q.arc_arrows().into_iter().map(|(a, b, m)| {
                if m == 1 {
                    format!("{a} -> {b}")
                } else {
                    format!("{a} -> {b} x{m}")
                }
            }));
            Ok(Report::ok(text, quiver_json(&q)))
        }
        Command::Mutate { file, k } => {
            let q: Quiver = serde_json::from_str(&read(file)?)?;
            let r = q.mutate(*k)?;
            Ok(Report::ok(serde_json::to_string(&r)? + "\n", serde_json::to_value(&r)?))
        }
        Command::Hom { x, y } => {
            let (d, kind) = hom_dim(parse_obj(x)?, parse_obj(y)?);
            Ok(Report::ok(format!("{d} {kind}\n"), json!({"dim": d, "kind": kind.to_string()})))
        }
        Command::Ext { x, y } => {
            let d = u8::from(ext1_nonzero(parse_obj(x)?, parse_obj(y)?));
            Ok(Report::ok(format!("{d}\n"), json!({"dim": d})))
        }
        Command::Ar { x } => {
            let t = ar_triangle(parse_obj(x)?)?;
            let text = format!("{} -> {} + {} -> {} -> {}\n", t.start, t.middle.0, t.middle.1, t.cone, t.end);
            Ok(Report::ok(text, serde_json::to_value(t)?))
        }
        Command::TiltingCheck { file, window } => {
            let t = load_presentation(file)?;
            let (lo, hi) = (window[0], window[1]);
            let r = is_weak_cluster_tilting(t.arcs(), lo, hi)?;
            if !r.agree() {
                return Err(CliError::Internal(format!(
                    "Ext route says {}, crossing route says {} on [{lo}, {hi}]",
                    r.ext_route, r.crossing_route
                )));
            }
            let text = format!(
                "ext route: {}\ncrossing route: {}\nweak cluster tilting on [{lo}, {hi}]: {}\n",
                r.ext_route, r.crossing_route, r.ext_route
            );
            Ok(Report { verdict: r.ext_route, text, result: serde_json::to_value(r)? })
        }
        Command::Congruent { a, b } => {
            let (s, t) = (load_presentation(a)?, load_presentation(b)?);
            let verdict = congruent(&s, &t);
            let (ts, tt) = (s.classify(), t.classify());
            let text = format!("{verdict} ({ts} vs {tt})\n");
            Ok(Report {
                verdict,
                text,
                result: json!({"congruent": verdict, "types": [ts.to_string(), tt.to_string()]}),
            })
        }
        Command::Serve { .. } => Err(CliError::Usage("serve runs through the binary".into())),
    }
}
