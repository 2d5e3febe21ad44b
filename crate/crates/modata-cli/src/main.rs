use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use modata::classify::{
    catalog, classify_rank2, classify_rank3_asymmetric, classify_rank3_symmetric,
    classify_rank4_linear, classify_rank5_linear, integral_nonexistence, ClassificationResult,
};
use modata::format::{parse_input, parse_table, write_table, InputFile};
use modata::screen::{first_rejection, screen_all, Hypotheses, ScreenInput};
use modata::tables::{
    allen_from_eigen, allen_from_fourier, eigen_from_allen, fourier_from_allen,
    fourier_from_allen_radicands, full_suite, verify_allen, verify_fourier,
    verify_integral_fourier, ExactMatrix, Role, TableError,
};
use modata::Integer;

const PASS: u8 = 0;
const FAIL: u8 = 1;
const PARSE: u8 = 2;
const FIELD: u8 = 3;

#[derive(Parser)]
#[command(
    name = "modata",
    version,
    about = "Exact checks for Fourier, Allen and eigenmatrix tables"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suite for one table file.
    Verify {
        path: PathBuf,
        /// Which axioms to check; defaults to the role in the file header.
        #[arg(long = "as", value_enum)]
        as_: Option<VerifyAs>,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Convert a table between Fourier, Allen and eigenmatrix forms.
    Convert {
        path: PathBuf,
        /// Reinterpret the file's entries as this role.
        #[arg(long, value_enum)]
        from: Option<Form>,
        /// Target role; repeat to chain conversions.
        #[arg(long, value_enum, required = true)]
        to: Vec<Form>,
    },
    /// Screen table or degree files against the necessary conditions.
    Screen {
        /// Files or directories; directories are read non-recursively.
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[command(flatten)]
        hyp: HypothesisFlags,
    },
    /// Run a classification engine.
    Classify {
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, value_enum)]
        mode: Mode,
        /// Bound for the enumerating route of `integral`.
        #[arg(long, env = "MODATA_MAX_DEGREE", default_value_t = 10_000)]
        max_degree: u64,
        /// List every rejected candidate with its witness.
        #[arg(long)]
        explain: bool,
        /// Directory for survivor table files.
        #[arg(long, default_value = "survivors")]
        out: PathBuf,
    },
    /// Print the built-in tables, or write them to a directory.
    Catalog {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyAs {
    Fourier,
    Allen,
    IntegralFourier,
    Eigen,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Structured,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Form {
    Fourier,
    Allen,
    Eigen,
}

impl Form {
    fn role(self) -> Role {
        match self {
            Form::Fourier => Role::Fourier,
            Form::Allen => Role::Allen,
            Form::Eigen => Role::Eigen,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Rank2,
    Rank3Sym,
    Rank3Asym,
    Rank4Linear,
    Rank5Linear,
    Integral,
}

#[derive(Args)]
struct HypothesisFlags {
    /// Assume the table is real.
    #[arg(long)]
    real: bool,
    /// Assume lambda_iij and lambda_ii*j are nonnegative.
    #[arg(long)]
    nonneg_lambda: bool,
    /// Assume |p_ij| <= p_0j.
    #[arg(long)]
    entry_bound: bool,
    /// Assume the Allen matrix is an integral Fourier matrix.
    #[arg(long)]
    integral_fourier: bool,
    /// Use only the flags given, even for table files.
    #[arg(long)]
    no_derive: bool,
}

impl HypothesisFlags {
    fn base(&self) -> Hypotheses {
        Hypotheses {
            real: self.real,
            nonneg_lambda: self.nonneg_lambda,
            entry_bound: self.entry_bound,
            integral_fourier: self.integral_fourier,
        }
    }

    fn for_table(&self, p: &ExactMatrix<Integer>) -> Hypotheses {
        let mut h = self.base();
        if !self.no_derive {
            let d = Hypotheses::derive(p);
            h.real |= d.real;
            h.nonneg_lambda |= d.nonneg_lambda;
            h.entry_bound |= d.entry_bound;
            h.integral_fourier |= d.integral_fourier;
        }
        h
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Verify { path, as_, format } => verify(&path, as_, format),
        Command::Convert { path, from, to } => convert(&path, from, &to),
        Command::Screen { paths, hyp } => screen(&paths, &hyp),
        Command::Classify {
            rank,
            mode,
            max_degree,
            explain,
            out,
        } => classify(rank, mode, max_degree, explain, &out),
        Command::Catalog { out } => dump_catalog(out.as_deref()),
    };
    ExitCode::from(code)
}

/// Writes to stdout; a closed pipe ends the process quietly.
fn say(text: &str) {
    let mut out = io::stdout().lock();
    if out
        .write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .is_err()
    {
        std::process::exit(FAIL as i32);
    }
}

fn read_table(path: &Path) -> Result<ExactMatrix<Integer>, u8> {
    let text = fs::read_to_string(path).map_err(|e| {
        eprintln!("{}: {e}", path.display());
        PARSE
    })?;
    parse_table(&text).map_err(|e| {
        eprintln!("{}: parse error: {e}", path.display());
        PARSE
    })
}

fn verify(path: &Path, as_: Option<VerifyAs>, format: Format) -> u8 {
    let p = match read_table(path) {
        Ok(p) => p,
        Err(code) => return code,
    };
    let as_ = as_.unwrap_or(match p.role() {
        Role::Fourier => VerifyAs::Fourier,
        Role::Allen => VerifyAs::Allen,
        Role::Eigen => VerifyAs::Eigen,
    });
    let report = match as_ {
        VerifyAs::Fourier => verify_fourier(&p.with_role(Role::Fourier)),
        VerifyAs::Allen => verify_allen(&p.with_role(Role::Allen)),
        VerifyAs::IntegralFourier => verify_integral_fourier(&p.with_role(Role::Allen)),
        VerifyAs::Eigen => full_suite(&p.with_role(Role::Eigen)),
    };
    match format {
        Format::Human => say(&format!("{report}\n")),
        Format::Structured => say(&report.to_structured()),
    }
    if report.passed() {
        PASS
    } else {
        FAIL
    }
}

fn convert_step(m: &ExactMatrix<Integer>, to: Form) -> Result<ExactMatrix<Integer>, TableError> {
    match (m.role(), to.role()) {
        (a, b) if a == b => Ok(m.clone()),
        (Role::Fourier, Role::Allen) => allen_from_fourier(m),
        (Role::Fourier, Role::Eigen) => eigen_from_allen(&allen_from_fourier(m)?),
        (Role::Allen, Role::Fourier) => fourier_in_field_or_scaled(m),
        (Role::Allen, Role::Eigen) => eigen_from_allen(m),
        (Role::Eigen, Role::Allen) => allen_from_eigen(m),
        (Role::Eigen, Role::Fourier) => fourier_in_field_or_scaled(&allen_from_eigen(m)?),
        _ => unreachable!("roles are exhausted"),
    }
}

/// Row normalisers outside the field are kept as a `rowscale` line.
fn fourier_in_field_or_scaled(
    s: &ExactMatrix<Integer>,
) -> Result<ExactMatrix<Integer>, TableError> {
    match fourier_from_allen(s) {
        Err(e) if e.is_field_extension() => fourier_from_allen_radicands(s),
        r => r,
    }
}

fn convert(path: &Path, from: Option<Form>, to: &[Form]) -> u8 {
    let mut m = match read_table(path) {
        Ok(p) => p,
        Err(code) => return code,
    };
    if let Some(f) = from {
        m = m.with_role(f.role());
    }
    for &step in to {
        m = match convert_step(&m, step) {
            Ok(next) => next,
            Err(e) => {
                eprintln!("{}: {e}", path.display());
                return if e.is_field_extension() { FIELD } else { FAIL };
            }
        };
    }
    say(&write_table(&m));
    PASS
}

enum Line {
    Verdict { admissible: bool, text: String },
    ParseError(String),
}

fn screen_file(path: &Path, flags: &HypothesisFlags) -> Line {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return Line::ParseError(format!("{}: error: {e}", path.display())),
    };
    let input = match parse_input::<Integer>(&text) {
        Ok(i) => i,
        Err(e) => return Line::ParseError(format!("{}: parse error: {e}", path.display())),
    };
    let verdicts = match &input {
        InputFile::Table(p) => screen_all(ScreenInput::Table(p), &flags.for_table(p)),
        InputFile::Degrees(d) => screen_all(ScreenInput::Degrees(d), &flags.base()),
    };
    if first_rejection(&verdicts).is_none() {
        return Line::Verdict {
            admissible: true,
            text: format!("{}: admissible", path.display()),
        };
    }
    let why: Vec<String> = verdicts
        .iter()
        .filter(|v| !v.admissible())
        .map(|v| format!("{}: {}", v.rule, v.witness))
        .collect();
    Line::Verdict {
        admissible: false,
        text: format!("{}: rejected {}", path.display(), why.join("; ")),
    }
}

fn screen(paths: &[PathBuf], flags: &HypothesisFlags) -> u8 {
    let mut files = Vec::new();
    let mut batch = paths.len() > 1;
    for p in paths {
        if p.is_dir() {
            batch = true;
            match fs::read_dir(p) {
                Ok(rd) => files.extend(
                    rd.filter_map(|e| e.ok())
                        .map(|e| e.path())
                        .filter(|f| f.is_file()),
                ),
                Err(e) => {
                    eprintln!("{}: {e}", p.display());
                    return PARSE;
                }
            }
        } else {
            files.push(p.clone());
        }
    }
    files.sort();
    let lines: Vec<Line> = files.par_iter().map(|f| screen_file(f, flags)).collect();
    let mut code = PASS;
    for line in lines {
        match line {
            Line::Verdict { admissible, text } => {
                say(&format!("{text}\n"));
                if !admissible {
                    code = code.max(FAIL);
                }
            }
            Line::ParseError(text) => {
                say(&format!("{text}\n"));
                code = code.max(if batch { FAIL } else { PARSE });
            }
        }
    }
    code
}

fn classify(rank: Option<usize>, mode: Mode, max_degree: u64, explain: bool, out: &Path) -> u8 {
    let fixed = match mode {
        Mode::Rank2 => Some(2),
        Mode::Rank3Sym | Mode::Rank3Asym => Some(3),
        Mode::Rank4Linear => Some(4),
        Mode::Rank5Linear => Some(5),
        Mode::Integral => None,
    };
    let rank = match (fixed, rank) {
        (Some(f), Some(r)) if f != r => {
            eprintln!("mode runs rank {f} only, not rank {r}");
            return PARSE;
        }
        (Some(f), _) => f,
        (None, Some(r)) if (3..=5).contains(&r) => r,
        (None, _) => {
            eprintln!("integral mode needs --rank 3, 4 or 5");
            return PARSE;
        }
    };
    let result: ClassificationResult<Integer> = match mode {
        Mode::Rank2 => classify_rank2(),
        Mode::Rank3Sym => classify_rank3_symmetric(),
        Mode::Rank3Asym => classify_rank3_asymmetric(),
        Mode::Rank4Linear => classify_rank4_linear(),
        Mode::Rank5Linear => classify_rank5_linear(),
        Mode::Integral => integral_nonexistence(rank, max_degree),
    };
    say(&result.summary(explain));
    if !result.survivors.is_empty() {
        if let Err(e) = fs::create_dir_all(out) {
            eprintln!("{}: {e}", out.display());
            return FAIL;
        }
        for (i, s) in result.survivors.iter().enumerate() {
            let file = out.join(format!("rank{rank}-survivor-{:02}.txt", i + 1));
            let mut text = String::new();
            if let Some(tag) = &s.tag {
                text.push_str(&format!("# {tag}\n"));
            }
            text.push_str(&write_table(&s.table));
            if let Err(e) = fs::write(&file, text) {
                eprintln!("{}: {e}", file.display());
                return FAIL;
            }
            say(&format!("wrote {}\n", file.display()));
        }
    }
    if result.unresolved.is_empty() {
        PASS
    } else {
        FAIL
    }
}

fn file_stem(name: &str) -> String {
    name.chars()
        .filter_map(|c| match c {
            '[' | ']' => None,
            ',' => Some('-'),
            c => Some(c),
        })
        .collect()
}

fn dump_catalog(out: Option<&Path>) -> u8 {
    for e in catalog::<Integer>() {
        let mut text = format!("# {}", e.tag());
        if let Some(s) = &e.scheme_tag {
            text.push_str(&format!(", {s}"));
        }
        if let Some(f) = &e.expected_failure {
            text.push_str(&format!(", expected to fail {f}"));
        }
        text.push('\n');
        text.push_str(&write_table(&e.table));
        match out {
            None => say(&format!("{text}\n")),
            Some(dir) => {
                let file = dir.join(format!("{}.txt", file_stem(&e.name)));
                if let Err(err) = fs::create_dir_all(dir).and_then(|_| fs::write(&file, &text)) {
                    eprintln!("{}: {err}", file.display());
                    return FAIL;
                }
            }
        }
    }
    PASS
}
