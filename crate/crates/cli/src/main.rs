//! `detpaths`: Schur polynomials, Jacobi–Trudi matrices, identity verdicts, enumeration
//! and SVG rendering from the command line.
//!
//! Exit codes: 0 pass, 1 fail, 2 usage or parameter error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use detpaths::identities::{self, mutation_self_test, Identity, Params, Request, Route};
use detpaths::jacobitrudi::{check_minor_deletion, jt_indices, jt_matrix};
use detpaths::linalg::det;
use detpaths::overlays::{trail_from, verify_dodgson_bijection, DodgsonLayout, DodgsonTerm};
use detpaths::paths::{enumerate_signed_tuples, signed_weight_sum, tableau_to_paths};
use detpaths::svg::{render_overlay, render_tuple, SvgOptions};
use detpaths::tableaux::{enumerate_ssyt, skew_schur_bounded};
use detpaths::{Error, IndexSet, Semipartition, Shape};

const DEFAULT_BUDGET: &str = "200000";

#[derive(Parser)]
#[command(name = "detpaths", version, about = "Determinants and nonintersecting lattice paths")]
struct Cli {
    /// Maximum number of tableaux a command may enumerate.
    #[arg(long, global = true, env = "DETPATHS_BUDGET", default_value = DEFAULT_BUDGET)]
    max_tableaux: usize,
    /// Maximum number of path tuples a command may enumerate.
    #[arg(long, global = true, env = "DETPATHS_BUDGET", default_value = DEFAULT_BUDGET)]
    max_tuples: usize,
    /// Maximum number of overlays a command may enumerate.
    #[arg(long, global = true, env = "DETPATHS_BUDGET", default_value = DEFAULT_BUDGET)]
    max_overlays: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the skew Schur polynomial of a shape in x1..xn.
    Schur {
        shape: Shape,
        n: u32,
        #[arg(long, value_enum, default_value = "both")]
        route: SchurRoute,
        #[arg(long)]
        json: bool,
    },
    /// Jacobi–Trudi matrices.
    Jt {
        #[command(subcommand)]
        cmd: JtCmd,
    },
    /// Verify an identity and print its JSON verdict.
    Verify(VerifyArgs),
    /// Seeded integer fuzzing of an identity, or the mutation self-test.
    Fuzz {
        /// Identity to fuzz; omit with --self-test.
        #[arg(required_unless_present = "self_test")]
        identity: Option<Identity>,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = identities::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = identities::DEFAULT_RANGE.0, allow_hyphen_values = true)]
        lo: i64,
        #[arg(long, default_value_t = identities::DEFAULT_RANGE.1, allow_hyphen_values = true)]
        hi: i64,
        /// Fuzz the sign-flipped Laplace and Dodgson checkers; both must fail.
        #[arg(long)]
        self_test: bool,
    },
    /// Enumerate tableaux, path families or overlays.
    Enumerate {
        #[command(subcommand)]
        cmd: EnumCmd,
    },
    /// Write an SVG drawing.
    Render {
        #[command(subcommand)]
        cmd: RenderCmd,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SchurRoute {
    Tableaux,
    Jacobitrudi,
    Both,
}

#[derive(Subcommand)]
enum JtCmd {
    /// Print the matrix of h-indices (h0 = 1, negative index = 0).
    Show {
        shape: Shape,
        n: u32,
        /// Also print every entry as a polynomial.
        #[arg(long)]
        expand: bool,
    },
    /// Check det(jt) against the tableau sum, and minor/part deletion.
    Verify {
        shape: Shape,
        n: u32,
        /// Rows (parts of mu) to delete.
        #[arg(long, default_value = "")]
        rows: IndexSet,
        /// Columns (parts of lambda) to delete.
        #[arg(long, default_value = "")]
        cols: IndexSet,
    },
}

#[derive(Args, Default)]
struct ParamArgs {
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    j: Option<usize>,
    #[arg(long = "R")]
    r: Option<IndexSet>,
    #[arg(long = "C")]
    c: Option<IndexSet>,
    #[arg(long = "I")]
    i: Option<IndexSet>,
    #[arg(long)]
    fixed: Option<IndexSet>,
    /// Partition for dodgson-schur, e.g. 3,2,1.
    #[arg(long, value_delimiter = ',')]
    lambda: Option<Vec<i64>>,
}

impl ParamArgs {
    fn to_params(&self) -> Params {
        Params {
            m: self.m,
            n: self.n,
            k: self.k,
            j: self.j,
            r: self.r.clone(),
            c: self.c.clone(),
            i: self.i.clone(),
            fixed: self.fixed.clone(),
            lambda: self.lambda.clone(),
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    identity: Identity,
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = identities::DEFAULT_SEED)]
    seed: u64,
    /// generic-symbolic, schur-symbolic or integer-fuzz.
    #[arg(long)]
    route: Option<Route>,
    #[arg(long, default_value_t = identities::DEFAULT_RANGE.0, allow_hyphen_values = true)]
    lo: i64,
    #[arg(long, default_value_t = identities::DEFAULT_RANGE.1, allow_hyphen_values = true)]
    hi: i64,
}

#[derive(Subcommand)]
enum EnumCmd {
    /// Semistandard tableaux of a shape with entries in 1..=n.
    Tableaux {
        shape: Shape,
        n: u32,
        #[arg(long)]
        json: bool,
    },
    /// Nonintersecting families (one per tableau), or the whole signed set.
    Paths {
        shape: Shape,
        n: u32,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        shift: i64,
        /// Enumerate every tuple with every permutation and print the signed sum.
        #[arg(long)]
        signed: bool,
    },
    /// Overlays of one term of Dodgson's condensation for a partition.
    Overlays {
        #[arg(long, value_delimiter = ',', required = true)]
        lambda: Vec<i64>,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "full")]
        term: Term,
        /// Run the exhaustive recolouring bijection check instead of listing.
        #[arg(long)]
        bijection: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Term {
    Full,
    Minors,
    Cross,
}

impl From<Term> for DodgsonTerm {
    fn from(t: Term) -> Self {
        match t {
            Term::Full => DodgsonTerm::Full,
            Term::Minors => DodgsonTerm::Minors,
            Term::Cross => DodgsonTerm::Cross,
        }
    }
}

#[derive(Args)]
struct Style {
    #[arg(long)]
    no_labels: bool,
    #[arg(long)]
    green: Option<String>,
    #[arg(long)]
    red: Option<String>,
    #[arg(long)]
    colour: Option<String>,
}

impl Style {
    fn options(&self) -> SvgOptions {
        let mut o = SvgOptions::default();
        o.labels = !self.no_labels;
        if let Some(g) = &self.green {
            o.green = g.clone();
        }
        if let Some(r) = &self.red {
            o.red = r.clone();
        }
        if let Some(c) = &self.colour {
            o.path = c.clone();
        }
        o
    }
}

#[derive(Subcommand)]
enum RenderCmd {
    /// The path family of the `index`-th tableau of a shape.
    Paths {
        shape: Shape,
        n: u32,
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        shift: i64,
        #[arg(long, short)]
        out: PathBuf,
        #[command(flatten)]
        style: Style,
    },
    /// The `index`-th overlay of a Dodgson term, with the recolouring trail marked.
    Overlay {
        #[arg(long, value_delimiter = ',', required = true)]
        lambda: Vec<i64>,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "full")]
        term: Term,
        #[arg(long, default_value_t = 0)]
        index: usize,
        /// Do not highlight the trail from the rightmost upper point.
        #[arg(long)]
        no_trail: bool,
        #[arg(long, short)]
        out: PathBuf,
        #[command(flatten)]
        style: Style,
    },
}

enum Outcome {
    Pass,
    Fail,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn outcome(pass: bool) -> Outcome {
    if pass {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

fn run(cli: &Cli) -> Result<Outcome, Box<dyn std::error::Error>> {
    match &cli.cmd {
        Cmd::Schur { shape, n, route, json } => schur(cli, shape, *n, *route, *json),
        Cmd::Jt { cmd } => jt(cli, cmd),
        Cmd::Verify(v) => {
            let req = Request {
                identity: v.identity,
                params: v.params.to_params(),
                route: v.route,
                trials: v.trials,
                seed: v.seed,
                range: (v.lo, v.hi),
                budget: cli.max_tableaux,
            };
            let verdict = identities::verify(&req)?;
            println!("{}", verdict.to_json());
            Ok(outcome(verdict.passed()))
        }
        Cmd::Fuzz { identity, params, trials, seed, lo, hi, self_test } => {
            if *self_test {
                let reports = mutation_self_test(*trials, *seed)?;
                println!("{}", serde_json::to_string_pretty(&reports)?);
                return Ok(outcome(reports.iter().all(|r| r.detected)));
            }
            let identity = identity.ok_or_else(|| Error::InvalidParameters("missing identity".into()))?;
            let req = Request {
                identity,
                params: params.to_params(),
                route: Some(Route::IntegerFuzz),
                trials: *trials,
                seed: *seed,
                range: (*lo, *hi),
                budget: cli.max_tableaux,
            };
            let verdict = identities::verify(&req)?;
            println!("{}", verdict.to_json());
            Ok(outcome(verdict.passed()))
        }
        Cmd::Enumerate { cmd } => enumerate(cli, cmd),
        Cmd::Render { cmd } => render(cli, cmd),
    }
}

fn schur(cli: &Cli, shape: &Shape, n: u32, route: SchurRoute, as_json: bool) -> Result<Outcome, Box<dyn std::error::Error>> {
    let by_tableaux = match route {
        SchurRoute::Tableaux | SchurRoute::Both => Some(skew_schur_bounded(shape, n, cli.max_tableaux)?),
        SchurRoute::Jacobitrudi => None,
    };
    let by_jt = match route {
        SchurRoute::Jacobitrudi | SchurRoute::Both => Some(det(&jt_matrix(shape, n)?)?),
        SchurRoute::Tableaux => None,
    };
    let agree = match (&by_tableaux, &by_jt) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    let poly = by_tableaux.or(by_jt).expect("one route ran");
    if as_json {
        let mut out = json!({ "shape": shape.to_string(), "n": n, "polynomial": poly.to_string() });
        if let Some(a) = agree {
            out["routes_agree"] = json!(a);
            out["status"] = json!(if a { "pass" } else { "fail" });
        }
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        println!("{poly}");
        if let Some(a) = agree {
            println!("tableaux and jacobi-trudi routes agree: {}", if a { "pass" } else { "fail" });
        }
    }
    Ok(outcome(agree.unwrap_or(true)))
}

fn jt(cli: &Cli, cmd: &JtCmd) -> Result<Outcome, Box<dyn std::error::Error>> {
    match cmd {
        JtCmd::Show { shape, n, expand } => {
            let idx = jt_indices(shape);
            let cells: Vec<Vec<String>> = idx
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|&r| match r {
                            r if r < 0 => "0".to_string(),
                            0 => "1".to_string(),
                            r => format!("h{r}"),
                        })
                        .collect()
                })
                .collect();
            let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
            for row in &cells {
                let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
                println!("{}", line.join("  "));
            }
            if *expand {
                let a = jt_matrix(shape, *n)?;
                for i in 1..=a.rows() {
                    for j in 1..=a.cols() {
                        println!("({i},{j}) = {}", a.get(i, j));
                    }
                }
            }
            Ok(Outcome::Pass)
        }
        JtCmd::Verify { shape, n, rows, cols } => {
            let tableau_sum = skew_schur_bounded(shape, *n, cli.max_tableaux)?;
            let determinant = det(&jt_matrix(shape, *n)?)?;
            let deletion = check_minor_deletion(shape, *n, rows.as_slice(), cols.as_slice())?;
            let pass = tableau_sum == determinant && deletion.pass;
            let out = json!({
                "shape": shape.to_string(),
                "n": n,
                "det_equals_tableau_sum": tableau_sum == determinant,
                "deleted_rows": rows.to_string(),
                "deleted_cols": cols.to_string(),
                "minor_deletion": deletion,
                "status": if pass { "pass" } else { "fail" },
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
            Ok(outcome(pass))
        }
    }
}

fn bounded<T>(it: impl Iterator<Item = T>, budget: usize, what: &'static str, flag: &'static str) -> Result<Vec<T>, Error> {
    let v: Vec<T> = it.take(budget.saturating_add(1)).collect();
    if v.len() > budget {
        return Err(Error::BudgetExceeded { what, limit: budget, flag });
    }
    Ok(v)
}

fn enumerate(cli: &Cli, cmd: &EnumCmd) -> Result<Outcome, Box<dyn std::error::Error>> {
    match cmd {
        EnumCmd::Tableaux { shape, n, json: as_json } => {
            let ts = bounded(enumerate_ssyt(shape, *n), cli.max_tableaux, "tableau", "max-tableaux")?;
            if *as_json {
                let out = json!({
                    "shape": shape.to_string(),
                    "n": n,
                    "count": ts.len(),
                    "tableaux": ts.iter().map(|t| t.rows().to_vec()).collect::<Vec<_>>(),
                });
                println!("{}", serde_json::to_string_pretty(&out)?);
            } else {
                for t in &ts {
                    println!("{t}");
                }
                println!("count: {}", ts.len());
            }
            Ok(Outcome::Pass)
        }
        EnumCmd::Paths { shape, n, shift, signed } => {
            if *signed {
                let tuples = enumerate_signed_tuples(shape, *n as i64, cli.max_tuples)?;
                let sum = signed_weight_sum(&tuples);
                let schur = skew_schur_bounded(shape, *n, cli.max_tableaux)?;
                println!("tuples: {}", tuples.len());
                println!("signed sum: {sum}");
                println!("equals tableau sum: {}", if sum == schur { "pass" } else { "fail" });
                return Ok(outcome(sum == schur));
            }
            let ts = bounded(enumerate_ssyt(shape, *n), cli.max_tuples, "path tuple", "max-tuples")?;
            for (k, t) in ts.iter().enumerate() {
                println!("# {k}");
                print!("{}", tableau_to_paths(t, *shift));
            }
            println!("count: {}", ts.len());
            Ok(Outcome::Pass)
        }
        EnumCmd::Overlays { lambda, n, term, bijection } => {
            let lambda = Semipartition::partition(lambda)?;
            if *bijection {
                let report = verify_dodgson_bijection(&lambda, *n, cli.max_overlays)?;
                println!("{}", serde_json::to_string_pretty(&report)?);
                return Ok(outcome(report.passed()));
            }
            let layout = DodgsonLayout::new(&lambda, *n)?;
            let os = layout.overlays((*term).into(), cli.max_overlays)?;
            for (k, o) in os.iter().enumerate() {
                let t = trail_from(o, layout.handle())?;
                println!("# {k}  weight {}  trail {} -> {}", o.weight(), t.start, t.end);
                print!("{o}");
            }
            println!("count: {}", os.len());
            Ok(Outcome::Pass)
        }
    }
}

fn render(cli: &Cli, cmd: &RenderCmd) -> Result<Outcome, Box<dyn std::error::Error>> {
    match cmd {
        RenderCmd::Paths { shape, n, index, shift, out, style } => {
            let t = enumerate_ssyt(shape, *n)
                .take(cli.max_tableaux)
                .nth(*index)
                .ok_or_else(|| Error::InvalidParameters(format!("{shape} has no tableau with index {index}")))?;
            fs::write(out, render_tuple(&tableau_to_paths(&t, *shift), &style.options()))?;
        }
        RenderCmd::Overlay { lambda, n, term, index, no_trail, out, style } => {
            let layout = DodgsonLayout::new(&Semipartition::partition(lambda)?, *n)?;
            let os = layout.overlays((*term).into(), cli.max_overlays)?;
            let o = os
                .get(*index)
                .ok_or_else(|| Error::InvalidParameters(format!("the term has {} overlays", os.len())))?;
            let trail = if *no_trail { None } else { Some(trail_from(o, layout.handle())?) };
            fs::write(out, render_overlay(o, trail.as_ref(), &style.options()))?;
        }
    }
    Ok(Outcome::Pass)
}
