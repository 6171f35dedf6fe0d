//! `gorq`: ideal I/O, classification, construction recipes, conjecture checks and census runs.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand, ValueEnum};
use gorq::experiments::{summary_markdown, write_csv};
use gorq::{
    check_injectivity_conjecture, check_wlp, classify, gin, link, run_census, run_recipe, CensusConfig,
    CensusMode, CiStyle, Error, Field, FieldSpec, GenericityPolicy, Ideal, PolyRing, PrimeField,
    Rationals, Result, RingHeader,
};

#[derive(Parser)]
#[command(name = "gorq", version, about = "Artinian Gorenstein algebras presented by quadrics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hilbert function and quadric classification of an ideal file (`-` reads stdin).
    Hilbert {
        file: PathBuf,
        /// `q` or a prime; defaults to the file header, then `q`.
        #[arg(long)]
        field: Option<FieldSpec>,
        #[arg(long)]
        vars: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run a recipe file and print the resulting ideal.
    Construct {
        recipe: PathBuf,
        #[arg(long, default_value = "q")]
        field: FieldSpec,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Colon ideals `c : F` of a quadric complete intersection, classified form by form.
    Census {
        #[arg(long, default_value = "2")]
        field: FieldSpec,
        #[arg(long, default_value_t = 6)]
        r: usize,
        /// `monomial`, `random` or `random:SEED`.
        #[arg(long, default_value = "monomial")]
        ci: String,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        #[arg(long, default_value_t = 30_000)]
        samples: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Re-run every n-th form through the generic path.
        #[arg(long, default_value_t = 0)]
        cross_check: usize,
        /// CSV output path.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Conjecture and property checks on an ideal file.
    Check {
        #[arg(long, value_enum)]
        what: What,
        file: PathBuf,
        #[arg(long)]
        field: Option<FieldSpec>,
        #[arg(long)]
        vars: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Sample,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Inj,
    Wlp,
    Gin,
    LinkDuality,
}

macro_rules! with_field {
    ($spec:expr, |$k:ident| $body:expr) => {
        match $spec {
            FieldSpec::Rationals => {
                let $k = Rationals;
                $body
            }
            FieldSpec::Prime(p) => {
                let $k = PrimeField::new(p as u64)?;
                $body
            }
        }
    };
}

fn seed_or_fresh(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(|| {
        let s = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_nanos() as u64)
            .unwrap_or(0);
        eprintln!("seed: {s}");
        s
    })
}

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

struct IdealInput {
    text: String,
    field: FieldSpec,
    vars: usize,
}

fn ideal_input(path: &Path, field: Option<FieldSpec>, vars: Option<usize>) -> Result<IdealInput> {
    let text = read_input(path)?;
    let header = RingHeader::read(&text);
    let field = match (field, &header.field) {
        (Some(f), _) => f,
        (None, Some(h)) => h.parse()?,
        (None, None) => FieldSpec::Rationals,
    };
    let vars = vars.unwrap_or_else(|| header.vars_or_scan(&text));
    Ok(IdealInput { text, field, vars })
}

fn load<K: Field>(field: K, input: &IdealInput) -> Result<Ideal<K>> {
    let ring = PolyRing::graded(input.vars, field)?;
    Ideal::parse(&ring, &input.text)
}

fn hilbert_report<K: Field>(ideal: &Ideal<K>, seed: u64) -> Result<String> {
    let c = classify(ideal, seed)?;
    let mut s = c.headline();
    s.push('\n');
    match c.socle_degree {
        Some(e) => s.push_str(&format!("socle degree: {e}\n")),
        None => s.push_str("socle degree: none\n"),
    }
    let nu: Vec<String> = c.nu_by_degree.iter().map(|(d, n)| format!("{d}:{n}")).collect();
    s.push_str(&format!("generators by degree: {}\n", nu.join(" ")));
    s.push_str(&format!("alpha: {}\n", c.alpha()));
    s.push_str(&format!("quadric regular sequence: {}\n", yes_no(c.contains_quadric_rs)));
    Ok(s)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn check_report<K: Field>(ideal: &Ideal<K>, what: What, seed: u64) -> Result<String> {
    let policy = GenericityPolicy::seeded(seed);
    let mut s = String::new();
    match what {
        What::Inj => {
            let v = check_injectivity_conjecture(ideal, &policy)?;
            let verdict = if v.holds { "holds" } else { "not injective for any sampled L" };
            s.push_str(&format!("injectivity: {verdict}\n"));
            s.push_str(&format!("rank of xL in degree 1: {} of {}\n", v.best_rank, v.h1));
            s.push_str(&format!("L = {}\n", v.form.to_poly(ideal.ring())));
            warnings(&mut s, &v.warnings);
        }
        What::Wlp => {
            let w = check_wlp(ideal, &policy)?;
            if w.has_wlp {
                s.push_str("WLP: holds\n");
            } else {
                s.push_str("WLP: fails\n");
            }
            for (rep, e) in w.reports.iter().zip(&w.expected) {
                s.push_str(&format!(
                    "degree {} -> {}: rank {} expected {}\n",
                    rep.degree,
                    rep.degree + 1,
                    rep.rank,
                    e
                ));
            }
            s.push_str(&format!("L = {}\n", w.form.to_poly(ideal.ring())));
            warnings(&mut s, &w.warnings);
        }
        What::Gin => {
            let g = gin(ideal, seed)?;
            s.push_str(&format!(
                "gin: certified, {} coordinate changes agree, borel-fixed: {}\n",
                g.attempts_agreed,
                yes_no(g.borel_fixed)
            ));
            for m in g.ideal.gens() {
                s.push_str(&format!("{m}\n"));
            }
        }
        What::LinkDuality => {
            let d = ideal.max_gen_degree().max(1);
            let step = gorq::constructions::general_link_step(ideal, &vec![d; ideal.nvars()], seed)?;
            let j = link(ideal, &step)?;
            let back = link(&j, &step)?;
            let holds = back.same_ideal(ideal)?;
            s.push_str(&format!("link-duality: {}\n", if holds { "holds" } else { "fails" }));
            s.push_str(&format!(
                "{} -> {}\n",
                gorq::hvector(ideal)?,
                gorq::hvector(&j)?
            ));
            s.push_str(&format!("{step}\n"));
        }
    }
    Ok(s)
}

fn warnings(s: &mut String, w: &[String]) {
    for line in w {
        s.push_str(&format!("warning: {line}\n"));
    }
}

fn parse_ci(text: &str) -> Result<CiStyle> {
    match text.split_once(':') {
        None if text == "monomial" => Ok(CiStyle::Monomial),
        None if text == "random" => Ok(CiStyle::Random(seed_or_fresh(None))),
        Some(("random", seed)) => seed
            .parse()
            .map(CiStyle::Random)
            .map_err(|_| Error::OutOfRange(format!("bad ci seed {seed:?}"))),
        _ => Err(Error::OutOfRange(format!(
            "--ci expects monomial, random or random:SEED, got {text:?}"
        ))),
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Hilbert { file, field, vars, seed } => {
            let input = ideal_input(&file, field, vars)?;
            let seed = seed.unwrap_or(0);
            let text = with_field!(input.field, |k| hilbert_report(&load(k, &input)?, seed)?);
            emit(None, &text)
        }
        Command::Construct { recipe, field, seed, out } => {
            let src = read_input(&recipe)?;
            let seed = seed_or_fresh(seed);
            let base = recipe.parent().filter(|p| !p.as_os_str().is_empty());
            let text = with_field!(field, |k| {
                run_recipe(&k, &src, seed, base)?
                    .with_meta("recipe", recipe.display())
                    .to_text()
            });
            emit(out.as_deref(), &text)
        }
        Command::Census { field, r, ci, mode, samples, seed, jobs, cross_check, out } => {
            let mode = match mode {
                Mode::Exhaustive => CensusMode::ExhaustiveSquarefree,
                Mode::Sample => CensusMode::RandomSample {
                    count: samples,
                    seed: seed_or_fresh(seed),
                },
            };
            let cfg = CensusConfig {
                field,
                r,
                ci_style: parse_ci(&ci)?,
                mode,
                jobs,
                cross_check_every: cross_check,
            };
            let run = run_census(&cfg)?;
            if let Some(path) = out {
                let f = fs::File::create(&path)
                    .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                write_csv(&run, io::BufWriter::new(f))?;
            }
            emit(None, &summary_markdown(&run))
        }
        Command::Check { what, file, field, vars, seed } => {
            let input = ideal_input(&file, field, vars)?;
            let seed = seed_or_fresh(seed);
            let text = with_field!(input.field, |k| check_report(&load(k, &input)?, what, seed)?);
            emit(None, &text)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(1)
        }
    }
}
