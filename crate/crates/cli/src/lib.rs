//! Command-line front end: space files in, JSON reports out.

pub mod spacefile;
pub mod suite;
pub mod svg;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use mvse_core::auerbach::{
    lower_auerbach_bases_with, upper_auerbach_bases_with, AuerbachConfig, AuerbachFamily,
    DEFAULT_TUPLE_CAP,
};
use mvse_core::exactlin::{RVector, Rational};
use mvse_core::mvse::{
    construct_nonparallelepipedal_with, decide_with, hexagon_regular_equiv, SEARCH_MODE,
};
use mvse_core::polytope::{section2, SectionPolygon};
use mvse_core::projections::exists_norm_one_projection;
use serde::Serialize;

use spacefile::SpaceFile;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Input(String),
    Capacity(String),
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Capacity(_) => EXIT_CAPACITY,
            CliError::Failed(_) => EXIT_FAILED,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Capacity(m) | CliError::Failed(m) => m,
        }
    }
}

impl From<mvse_core::Error> for CliError {
    fn from(e: mvse_core::Error) -> Self {
        use mvse_core::Error as E;
        match e {
            E::Capacity { .. } => CliError::Capacity(e.to_string()),
            E::Construction(_) => CliError::Failed(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "mvse",
    version,
    about = "Exact geometry of polyhedral normed spaces"
)]
pub struct Cli {
    /// Cap on vertex tuples visited by the Auerbach enumeration.
    #[arg(long, env = "MVSE_TUPLE_CAP", global = true)]
    pub tuple_cap: Option<String>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether the space has a non-parallelepipedal MVSE.
    Decide(DecideArgs),
    /// Upper or lower Auerbach bases.
    Auerbach(AuerbachArgs),
    /// Central section by the plane span{x1, x2}.
    Section(SectionArgs),
    /// Decision and zonotope construction.
    #[command(subcommand)]
    Mvse(MvseCommand),
    /// Shorthand for `mvse construct`.
    Construct(SpaceArg),
    /// Is the subspace the range of a norm-one projection?
    Project(ProjectArgs),
    /// Run the built-in claim suite.
    VerifyPaper,
    /// Draw the section spanned by two basis vectors as SVG.
    Render(RenderArgs),
}

#[derive(Debug, Subcommand)]
pub enum MvseCommand {
    Decide(DecideArgs),
    Construct(SpaceArg),
}

#[derive(Debug, Args)]
pub struct SpaceArg {
    pub space: PathBuf,
}

#[derive(Debug, Args)]
pub struct DecideArgs {
    pub space: PathBuf,
    /// Also draw the witness section.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct Which {
    #[arg(long)]
    pub upper: bool,
    #[arg(long)]
    pub lower: bool,
}

#[derive(Debug, Args)]
pub struct AuerbachArgs {
    pub space: PathBuf,
    #[command(flatten)]
    pub which: Which,
}

#[derive(Debug, Args)]
pub struct SectionArgs {
    pub space: PathBuf,
    /// Comma-separated rationals.
    #[arg(long, allow_hyphen_values = true)]
    pub x1: String,
    #[arg(long, allow_hyphen_values = true)]
    pub x2: String,
}

#[derive(Debug, Args)]
pub struct ProjectArgs {
    #[arg(long)]
    pub space: PathBuf,
    /// Basis of the subspace: vectors separated by `;`, entries by `,`.
    #[arg(long, allow_hyphen_values = true)]
    pub subspace: String,
    /// Vectors are given in the ambient ℓ∞^m coordinates of the space.
    #[arg(long)]
    pub ambient: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum BasisChoice {
    /// First lower Auerbach basis.
    Lower,
    /// Standard coordinate vectors.
    Standard,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    pub space: PathBuf,
    #[arg(long, num_args = 2, value_names = ["I", "J"])]
    pub pair: Vec<usize>,
    #[arg(long, value_enum, default_value = "lower")]
    pub basis: BasisChoice,
    #[arg(long)]
    pub out: PathBuf,
}

/// Outcome of one invocation: what goes to stdout, and the exit code.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn config(cli_cap: &Option<String>) -> Result<AuerbachConfig, CliError> {
    let tuple_cap = match cli_cap {
        None => DEFAULT_TUPLE_CAP,
        Some(s) => s
            .trim()
            .parse::<u128>()
            .map_err(|_| CliError::Input(format!("invalid tuple cap {s:?}")))?,
    };
    Ok(AuerbachConfig { tuple_cap })
}

fn parse_vector(s: &str) -> Result<RVector, CliError> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<Rational>()
                .map_err(|e| CliError::Input(e.to_string()))
        })
        .collect()
}

fn parse_vectors(s: &str) -> Result<Vec<RVector>, CliError> {
    s.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(parse_vector)
        .collect()
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct AuerbachReport<'a> {
    space: &'a str,
    search: &'static str,
    #[serde(flatten)]
    family: &'a AuerbachFamily,
}

#[derive(Serialize)]
struct SectionReport<'a> {
    space: &'a str,
    section: &'a SectionPolygon,
    hexagon_triple: Option<[RVector; 3]>,
}

#[derive(Serialize)]
struct ProjectReport<'a, T: Serialize> {
    space: &'a str,
    subspace: &'a [RVector],
    #[serde(flatten)]
    report: T,
}

fn cmd_decide(args: &DecideArgs, cfg: AuerbachConfig) -> Result<String, CliError> {
    let space = SpaceFile::load(&args.space)?.to_space()?;
    let report = decide_with(&space, cfg)?;
    if let Some(out) = &args.svg {
        let w = report
            .witness
            .as_ref()
            .ok_or_else(|| CliError::Input("no witness section to draw".into()))?;
        let title = format!(
            "{}: columns {} and {}",
            space.name, w.basis_pair.0, w.basis_pair.1
        );
        write_file(out, &svg::render_section(&w.section, &title))?;
    }
    Ok(to_json(&report))
}

fn cmd_construct(args: &SpaceArg, cfg: AuerbachConfig) -> Result<String, CliError> {
    let space = SpaceFile::load(&args.space)?.to_space()?;
    let report = decide_with(&space, cfg)?;
    let w = report.witness.ok_or_else(|| {
        CliError::Input(format!("{}: {}", space.name, mvse_core::Error::NoWitness))
    })?;
    Ok(to_json(&construct_nonparallelepipedal_with(
        &space, &w, cfg,
    )?))
}

fn cmd_auerbach(args: &AuerbachArgs, cfg: AuerbachConfig) -> Result<String, CliError> {
    let space = SpaceFile::load(&args.space)?.to_space()?;
    let family = if args.which.upper {
        upper_auerbach_bases_with(&space.ball, cfg)?
    } else {
        lower_auerbach_bases_with(&space.ball, cfg)?
    };
    Ok(to_json(&AuerbachReport {
        space: &space.name,
        search: SEARCH_MODE,
        family: &family,
    }))
}

fn cmd_section(args: &SectionArgs) -> Result<String, CliError> {
    let space = SpaceFile::load(&args.space)?.to_space()?;
    let s = section2(
        &space.ball,
        &parse_vector(&args.x1)?,
        &parse_vector(&args.x2)?,
    )?;
    Ok(to_json(&SectionReport {
        space: &space.name,
        hexagon_triple: hexagon_regular_equiv(&s),
        section: &s,
    }))
}

fn cmd_project(args: &ProjectArgs) -> Result<String, CliError> {
    let space = SpaceFile::load(&args.space)?.to_space()?;
    let mut vs = parse_vectors(&args.subspace)?;
    if args.ambient {
        let emb = space
            .embedding
            .as_ref()
            .ok_or_else(|| CliError::Input("--ambient needs a subspace of ℓ∞^m".into()))?;
        vs = vs
            .iter()
            .map(|x| {
                emb.to_basis_coords(x)?
                    .ok_or_else(|| mvse_core::Error::Invalid(format!("{x} is not in the space")))
            })
            .collect::<mvse_core::Result<_>>()?;
    }
    let report = exists_norm_one_projection(&space.ball, &vs)?;
    Ok(to_json(&ProjectReport {
        space: &space.name,
        subspace: &vs,
        report,
    }))
}

fn cmd_render(args: &RenderArgs, cfg: AuerbachConfig) -> Result<String, CliError> {
    let space = SpaceFile::load(&args.space)?.to_space()?;
    let n = space.dim();
    let (i, j) = (args.pair[0], args.pair[1]);
    if i >= n || j >= n || i == j {
        return Err(CliError::Input(format!(
            "pair ({i}, {j}) is not two distinct indices below {n}"
        )));
    }
    let (x1, x2) = match args.basis {
        BasisChoice::Standard => (RVector::unit(n, i), RVector::unit(n, j)),
        BasisChoice::Lower => {
            let fam = lower_auerbach_bases_with(&space.ball, cfg)?;
            (fam.first().column(i), fam.first().column(j))
        }
    };
    let s = section2(&space.ball, &x1, &x2)?;
    let title = format!("{}: section by {x1} and {x2}", space.name);
    write_file(&args.out, &svg::render_section(&s, &title))?;
    Ok(to_json(&SectionReport {
        space: &space.name,
        hexagon_triple: hexagon_regular_equiv(&s),
        section: &s,
    }))
}

pub fn execute(cli: &Cli) -> Result<(String, i32), CliError> {
    let cfg = config(&cli.tuple_cap)?;
    let out = match &cli.command {
        Command::Decide(a) | Command::Mvse(MvseCommand::Decide(a)) => cmd_decide(a, cfg)?,
        Command::Construct(a) | Command::Mvse(MvseCommand::Construct(a)) => cmd_construct(a, cfg)?,
        Command::Auerbach(a) => cmd_auerbach(a, cfg)?,
        Command::Section(a) => cmd_section(a)?,
        Command::Project(a) => cmd_project(a)?,
        Command::Render(a) => cmd_render(a, cfg)?,
        Command::VerifyPaper => {
            let r = suite::run(cfg);
            let code = if r.pass { EXIT_OK } else { EXIT_FAILED };
            return Ok((to_json(&r), code));
        }
    };
    Ok((out, EXIT_OK))
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match execute(&cli) {
        Ok((stdout, code)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {}\n", e.message()),
        },
    }
}
