//! Command-line front end.
//!
//! Exit codes: 0 success, 2 syntax or unreadable input, 3 validation,
//! 4 resource cap, 5 selftest failure, 1 internal error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::{Error, ErrorClass};
use crate::finite::{build_skeleton, full_transformation_monoid, FiniteSemigroup, Strategy};
use crate::landscape::{enumerate_mountains, enumerate_uphills, validate_landscape, Landscape};
use crate::model::{self, GreenRel, Mountain, Tri};
use crate::landscape::beta1;
use crate::rewrite::{beta2_traced, trace_json};
use crate::terms::{infer_alphabet, GenStore, KindFilter, DEFAULT_HEIGHT_CAP};
use crate::word::GWord;
use crate::{render, selftest};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_SYNTAX: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;
pub const EXIT_SELFTEST: i32 = 5;

pub fn exit_code(e: &Error) -> i32 {
    match e.class() {
        ErrorClass::Syntax => EXIT_SYNTAX,
        ErrorClass::Validation => EXIT_VALIDATION,
        ErrorClass::Resource => EXIT_RESOURCE,
        ErrorClass::Internal => EXIT_INTERNAL,
    }
}

#[derive(Parser, Debug)]
#[command(name = "weakfree", version, about = "Normal forms and structure of the free regular semigroup weakly generated by X")]
pub struct Cli {
    /// Comma-separated alphabet; inferred from the inputs when omitted.
    #[arg(long, global = true, value_delimiter = ',')]
    alphabet: Option<Vec<String>>,
    /// Largest generator height that may be created.
    #[arg(long, global = true, default_value_t = DEFAULT_HEIGHT_CAP)]
    cap: u32,
    /// State limit for gorge searches.
    #[arg(long, global = true, default_value_t = crate::rewrite::DEFAULT_MAX_STATES)]
    max_states: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    E,
    D,
    All,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Ascii,
    Svg,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    First,
    Seeded,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Print the normal form β(w) of a word.
    Normalize {
        word: String,
        /// Print the uplift trace as JSON instead.
        #[arg(long)]
        trace: bool,
    },
    /// Decide whether two words are equal in the semigroup.
    Eq { u: String, v: String },
    /// Product of the normal forms of two words.
    Mul { u: String, v: String },
    /// Green's relation test: R, L, J, H, D, leqR, leqL, leqJ (u rel v).
    Green { rel: String, u: String, v: String },
    /// Natural partial order v ≤ u.
    Order {
        v: String,
        u: String,
        /// Use the gorge characterisation (may answer unknown).
        #[arg(long)]
        gorge: bool,
    },
    /// Decide whether u is idempotent.
    Idempotent {
        u: String,
        /// Use the gorge characterisation (may answer unknown).
        #[arg(long)]
        gorge: bool,
    },
    /// List the inverses of u.
    Inverses { u: String },
    /// Sandwich set S(e, f) of two idempotents.
    Sandwich { e: String, f: String },
    /// Shape data of a landscape: class, rivers, peaks, height.
    Info { landscape: String },
    /// Count uphills and mountains with a given peak.
    Count {
        #[arg(long)]
        peak: String,
    },
    /// List generators of one height.
    Gens {
        #[arg(long)]
        height: u32,
        #[arg(long, value_enum, default_value_t = Kind::All)]
        kind: Kind,
    },
    /// Draw a landscape as a line graph.
    Render {
        input: String,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
        /// Treat the input as a word and draw its normal form.
        #[arg(long)]
        normalize: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Print the multiplication table of the full transformation monoid T_n.
    Transformations { n: usize },
    /// Build a skeleton mapping into a finite regular semigroup.
    Skeleton {
        #[arg(long)]
        table: PathBuf,
        /// Letter images, e.g. x=5,y=3.
        #[arg(long, value_delimiter = ',')]
        map: Vec<String>,
        #[arg(long, value_enum, default_value_t = StrategyArg::First)]
        strategy: StrategyArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        height: u32,
    },
    /// Run the property suite.
    Selftest {
        #[arg(long, default_value_t = 3)]
        max_height: u32,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

enum Failure {
    Core(Error),
    Input(String),
    Selftest,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Res<T> = std::result::Result<T, Failure>;

struct Session {
    store: GenStore,
    max_states: usize,
}

impl Session {
    fn new(cli: &Cli, texts: &[&str]) -> Res<Session> {
        let alphabet = match &cli.alphabet {
            Some(a) => a.clone(),
            None => {
                let mut a = Vec::new();
                for t in texts {
                    for x in infer_alphabet(t) {
                        if !a.contains(&x) {
                            a.push(x);
                        }
                    }
                }
                log::info!("inferred alphabet {{{}}}", a.join(","));
                a
            }
        };
        if cli.cap == 0 {
            return Err(Error::InvalidArgument("cap must be positive".into()).into());
        }
        let store = GenStore::new(alphabet)?.with_height_cap(cli.cap);
        Ok(Session {
            store,
            max_states: cli.max_states,
        })
    }

    fn word(&self, t: &str) -> Res<GWord> {
        Ok(GWord::parse(&self.store, t)?)
    }

    fn mountain(&self, t: &str) -> Res<Mountain> {
        Ok(Mountain::of_word(&self.store, &self.word(t)?)?)
    }
}

fn bool_line(b: bool) -> &'static str {
    if b {
        "true"
    } else {
        "false"
    }
}

fn tri_line(t: Tri) -> &'static str {
    match t {
        Tri::True => "true",
        Tri::False => "false",
        Tri::Unknown => "unknown",
    }
}

fn lines(out: &mut dyn Write, items: &[Mountain]) -> std::io::Result<()> {
    for m in items {
        writeln!(out, "{m}")?;
    }
    Ok(())
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Res<()> {
    let io = |e: std::io::Error| Failure::Input(e.to_string());
    match &cli.cmd {
        Cmd::Normalize { word, trace } => {
            let s = Session::new(cli, &[word])?;
            let start = beta1(&s.store, &s.word(word)?)?;
            let (m, steps) = beta2_traced(&s.store, &start)?;
            if *trace {
                writeln!(out, "{}", serde_json::to_string_pretty(&trace_json(&start, &steps)).unwrap()).map_err(io)?;
            } else {
                writeln!(out, "{m}").map_err(io)?;
            }
        }
        Cmd::Eq { u, v } => {
            let s = Session::new(cli, &[u, v])?;
            writeln!(out, "{}", bool_line(s.mountain(u)? == s.mountain(v)?)).map_err(io)?;
        }
        Cmd::Mul { u, v } => {
            let s = Session::new(cli, &[u, v])?;
            let p = model::mul(&s.store, &s.mountain(u)?, &s.mountain(v)?)?;
            writeln!(out, "{p}").map_err(io)?;
        }
        Cmd::Green { rel, u, v } => {
            let r: GreenRel = rel.parse()?;
            let s = Session::new(cli, &[u, v])?;
            writeln!(out, "{}", bool_line(model::green(r, &s.mountain(u)?, &s.mountain(v)?))).map_err(io)?;
        }
        Cmd::Order { v, u, gorge } => {
            let s = Session::new(cli, &[u, v])?;
            let (mv, mu) = (s.mountain(v)?, s.mountain(u)?);
            let ans = if *gorge {
                tri_line(model::natural_leq_gorge(&s.store, &mv, &mu, s.max_states)?)
            } else {
                bool_line(model::natural_leq(&s.store, &mv, &mu)?)
            };
            writeln!(out, "{ans}").map_err(io)?;
        }
        Cmd::Idempotent { u, gorge } => {
            let s = Session::new(cli, &[u])?;
            let m = s.mountain(u)?;
            let ans = if *gorge {
                tri_line(model::is_idempotent_gorge(&s.store, &m, s.max_states)?)
            } else {
                bool_line(model::is_idempotent(&s.store, &m)?)
            };
            writeln!(out, "{ans}").map_err(io)?;
        }
        Cmd::Inverses { u } => {
            let s = Session::new(cli, &[u])?;
            lines(out, &model::inverses(&s.store, &s.mountain(u)?)?).map_err(io)?;
        }
        Cmd::Sandwich { e, f } => {
            let s = Session::new(cli, &[e, f])?;
            lines(out, &model::sandwich_set(&s.store, &s.mountain(e)?, &s.mountain(f)?)?).map_err(io)?;
        }
        Cmd::Info { landscape } => {
            let s = Session::new(cli, &[landscape])?;
            let l = validate_landscape(&s.word(landscape)?)?;
            let kappa = l.kappa().map(|g| g.text().to_string()).ok();
            let info = json!({
                "class": format!("{:?}", l.classify()),
                "height": l.height(),
                "rivers": l.rivers(),
                "peaks": l.peaks(),
                "kappa": kappa,
                "length": l.len(),
            });
            writeln!(out, "{info}").map_err(io)?;
        }
        Cmd::Count { peak } => {
            let s = Session::new(cli, &[peak])?;
            let g = s.store.parse_gen(peak)?;
            let n = g.height();
            let ups = enumerate_uphills(&g).len();
            let ms = enumerate_mountains(&g).len();
            let (eu, em) = (1usize << n, 1usize << (2 * n));
            let ok = if ups == eu && ms == em { "OK" } else { "MISMATCH" };
            writeln!(out, "uphills={ups} mountains={ms} expected={eu},{em} {ok}").map_err(io)?;
        }
        Cmd::Gens { height, kind } => {
            let s = Session::new(cli, &[])?;
            let filter = match kind {
                Kind::E => KindFilter::E,
                Kind::D => KindFilter::D,
                Kind::All => KindFilter::All,
            };
            for g in s.store.enumerate(*height, filter)? {
                writeln!(out, "{g}").map_err(io)?;
            }
        }
        Cmd::Render {
            input,
            format,
            normalize,
            output,
        } => {
            let s = Session::new(cli, &[input])?;
            let l: Landscape = if *normalize {
                s.mountain(input)?.into_landscape()
            } else {
                validate_landscape(&s.word(input)?)?
            };
            let text = match format {
                Format::Ascii => render::ascii(&l),
                Format::Svg => render::svg(&l),
                Format::Json => render::json(&l) + "\n",
            };
            match output {
                Some(p) => std::fs::write(p, text).map_err(io)?,
                None => out.write_all(text.as_bytes()).map_err(io)?,
            }
        }
        Cmd::Transformations { n } => {
            let t = full_transformation_monoid(*n)?;
            writeln!(out, "{}", t.to_json()).map_err(io)?;
        }
        Cmd::Skeleton {
            table,
            map,
            strategy,
            seed,
            height,
        } => {
            let text = std::fs::read_to_string(table).map_err(|e| Failure::Input(format!("{}: {e}", table.display())))?;
            let sg = FiniteSemigroup::from_json(&text)?;
            let mut pairs = Vec::new();
            for m in map {
                let (x, v) = m
                    .split_once('=')
                    .ok_or_else(|| Error::syntax(0, format!("map entry `{m}` is not letter=element")))?;
                let v: usize = v
                    .trim()
                    .parse()
                    .map_err(|_| Error::syntax(0, format!("element `{v}` is not a number")))?;
                pairs.push((x.trim().to_string(), v));
            }
            let names: Vec<&str> = pairs.iter().map(|(x, _)| x.as_str()).collect();
            let s = Session::new(cli, &[&names.join(" ")])?;
            let images = pairs
                .iter()
                .map(|(x, v)| Ok((s.store.letter(x)?, *v)))
                .collect::<Result<Vec<_>, Error>>()?;
            let strat = match strategy {
                StrategyArg::First => Strategy::First,
                StrategyArg::Seeded => Strategy::Seeded(*seed),
            };
            let mut sk = build_skeleton(&sg, &images, strat, *height)?;
            let report = sk.report(&s.store)?;
            writeln!(out, "{}", serde_json::to_string_pretty(&report).unwrap()).map_err(io)?;
        }
        Cmd::Selftest { max_height, seed } => {
            let res = selftest::run(*max_height, *seed)?;
            for l in &res {
                writeln!(out, "{l}").map_err(io)?;
            }
            if res.iter().any(|l| !l.pass) {
                return Err(Failure::Selftest);
            }
        }
    }
    Ok(())
}

/// Runs the CLI on `args` (program name first), writing results to `out` and
/// diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_SYNTAX;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    match execute(&cli, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Core(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_SYNTAX
        }
        Err(Failure::Selftest) => EXIT_SELFTEST,
    }
}
