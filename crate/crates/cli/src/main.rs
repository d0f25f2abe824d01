//! `quiverdt`: series arithmetic, string combinatorics, stability,
//! point counts and the table identities from the command line.
//!
//! Exit status is 0 on success or equality, 1 on a verified mismatch or a
//! classification disagreement, 2 on bad input.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use quiverdt::dt::{self, DtError, TrajectoryCounts};
use quiverdt::fqoracle::{self, count_reps, Flags, OracleError, StabilityFilter, Strategy};
use quiverdt::qtorus::{dump, factorize_ray, parse_dump, qdilog, DimVec, QTorusError, QTorusSeries, SkewForm};
use quiverdt::quiver::{jacobian_relations, parse_quiver, Potential, Quiver, QuiverError, RelationSet};
use quiverdt::stability::{classify_stables, CentralCharge, ClassifyMode, ClassifyOptions, StabilityError};
use quiverdt::strings::{enumerate_bands, enumerate_strings, ext1_dim, ext_string_band_vanishes, StringAlgebra, StringError};

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    QuiverFile { path: PathBuf, source: QuiverError },
    #[error("{path}: {source}")]
    ChargeFile { path: PathBuf, source: StabilityError },
    #[error("{path}: {source}")]
    SeriesFile { path: PathBuf, source: QTorusError },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Series(#[from] QTorusError),
    #[error(transparent)]
    Strings(#[from] StringError),
    #[error(transparent)]
    Stability(#[from] StabilityError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Dt(#[from] DtError),
}

#[derive(Parser)]
#[command(name = "quiverdt", version, about = "Exact refined DT invariants of quivers with potential")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dump E((−q^{1/2})^k t^d) truncated at total degree N.
    Qdilog {
        /// Class, e.g. `(1,0)`.
        class: String,
        #[arg(short, long, default_value_t = 0, allow_negative_numbers = true)]
        k: i32,
        #[arg(short = 'n', long)]
        truncation: u32,
        /// Skew matrix as rows `0,-1;1,0`; zero if omitted.
        #[arg(long)]
        skew: Option<String>,
    },
    /// Product of two series dumps.
    Multiply { left: PathBuf, right: PathBuf },
    /// Inverse of a series dump.
    Invert { series: PathBuf },
    /// Refined invariants of a series supported on one ray.
    Factorize {
        series: PathBuf,
        #[arg(long)]
        ray: String,
    },
    /// Strings of the Jacobian algebra up to a length.
    Strings {
        quiver: PathBuf,
        #[arg(short = 'L', long)]
        max_len: usize,
    },
    /// Bands of the Jacobian algebra up to a length.
    Bands {
        quiver: PathBuf,
        #[arg(short = 'L', long)]
        max_len: usize,
    },
    /// dim Ext¹(M(first), M(second)) for strings; certified vanishing when
    /// one side is a band `band:...`.
    Ext {
        quiver: PathBuf,
        first: String,
        second: String,
    },
    /// Stable (or semistable) string and band modules of one phase.
    Stables {
        quiver: PathBuf,
        charge: PathBuf,
        /// Class whose phase is classified.
        #[arg(long)]
        class: String,
        #[arg(short = 'L', long)]
        max_len: usize,
        /// List semistable indecomposables instead of stables.
        #[arg(long)]
        semistable: bool,
        /// Expected result, words separated by `;`; exit 1 on disagreement.
        #[arg(long)]
        expect: Option<String>,
    },
    /// Point count of representations over F_p.
    Count {
        quiver: PathBuf,
        #[arg(long)]
        dim: String,
        #[arg(short, long)]
        p: u64,
        #[command(flatten)]
        filters: FilterArgs,
    },
    /// Compares a series coefficient with stacky point counts.
    OracleMatch {
        quiver: PathBuf,
        series: PathBuf,
        #[arg(long)]
        dim: String,
        #[arg(long, value_delimiter = ',', default_value = "2,3,5")]
        primes: Vec<u64>,
        #[command(flatten)]
        filters: FilterArgs,
    },
    /// Barbell assembly of C₁ and C₂ against the expected series.
    Barbell {
        #[arg(short = 'n', long, default_value_t = 8)]
        truncation: u32,
        /// Place C₂ on this class instead of (2,2).
        #[arg(long)]
        c2_class: Option<String>,
    },
    /// Wall-crossing identity for the barbell.
    Wallcross {
        #[arg(short = 'n', long, default_value_t = 7)]
        truncation: u32,
        /// Drop the factor with this index (see --list).
        #[arg(long)]
        drop: Option<usize>,
        /// List the factors and exit.
        #[arg(long)]
        list: bool,
    },
    /// Refined and numerical invariant from trajectory counts.
    Invariant {
        #[arg(long, default_value_t = 0)]
        ni: u32,
        #[arg(long, default_value_t = 0)]
        nii: u32,
        #[arg(long, default_value_t = 0)]
        niii: u32,
        #[arg(long, default_value_t = 0)]
        ndrd: u32,
        #[arg(long, default_value_t = 0)]
        nnrd: u32,
    },
    /// The eight trajectory presets with their series and invariants.
    Table,
}

#[derive(Args)]
struct FilterArgs {
    #[arg(long)]
    nilpotent: bool,
    /// Impose the Jacobian relations of the potential.
    #[arg(long)]
    relations: bool,
    /// Charge file; keep semistable representations only.
    #[arg(long, conflicts_with = "stable")]
    semistable: Option<PathBuf>,
    /// Charge file; keep stable representations only.
    #[arg(long)]
    stable: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_quiver(path: &Path) -> Result<(Quiver, Potential), CliError> {
    parse_quiver(&read(path)?).map_err(|source| CliError::QuiverFile {
        path: path.to_path_buf(),
        source,
    })
}

fn load_charge(path: &Path, q: &Quiver) -> Result<CentralCharge, CliError> {
    CentralCharge::parse(&read(path)?, q.vertex_count()).map_err(|source| CliError::ChargeFile {
        path: path.to_path_buf(),
        source,
    })
}

fn load_series(path: &Path) -> Result<QTorusSeries, CliError> {
    parse_dump(&read(path)?).map_err(|source| CliError::SeriesFile {
        path: path.to_path_buf(),
        source,
    })
}

fn load_algebra(path: &Path) -> Result<StringAlgebra, CliError> {
    let (q, w) = load_quiver(path)?;
    let rel = jacobian_relations(&q, &w);
    Ok(StringAlgebra::new(q, &rel)?)
}

fn dim_vector(text: &str, rank: usize) -> Result<DimVec, CliError> {
    let d = DimVec::parse(text)?;
    if d.rank() != rank {
        return Err(CliError::Usage(format!("{d} has rank {}, expected {rank}", d.rank())));
    }
    Ok(d)
}

fn parse_skew(text: &str) -> Result<SkewForm, CliError> {
    let rows = text
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|x| x.trim().parse::<i64>())
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| CliError::Usage(format!("bad skew matrix `{text}`")))?;
    Ok(SkewForm::new(rows)?)
}

fn flags(f: &FilterArgs, q: &Quiver) -> Result<Flags, CliError> {
    let stability = match (&f.semistable, &f.stable) {
        (Some(p), _) => StabilityFilter::Semistable(load_charge(p, q)?),
        (_, Some(p)) => StabilityFilter::Stable(load_charge(p, q)?),
        _ => StabilityFilter::None,
    };
    Ok(Flags {
        nilpotent: f.nilpotent,
        relations: f.relations,
        stability,
    })
}

fn relations(f: &FilterArgs, q: &Quiver, w: &Potential) -> RelationSet {
    if f.relations {
        jacobian_relations(q, w)
    } else {
        RelationSet::empty()
    }
}

/// Runs one command and returns its exit status.
fn execute(cmd: Command) -> Result<u8, CliError> {
    match cmd {
        Command::Qdilog {
            class,
            k,
            truncation,
            skew,
        } => {
            let d = DimVec::parse(&class)?;
            let skew = match skew {
                Some(s) => parse_skew(&s)?,
                None => SkewForm::zero(d.rank()),
            };
            print!("{}", dump(&qdilog(&skew, &d, k, truncation)?));
        }
        Command::Multiply { left, right } => {
            let product = load_series(&left)?.mul(&load_series(&right)?)?;
            print!("{}", dump(&product));
        }
        Command::Invert { series } => print!("{}", dump(&load_series(&series)?.inv()?)),
        Command::Factorize { series, ray } => {
            let s = load_series(&series)?;
            let spectrum = factorize_ray(&s, &dim_vector(&ray, s.rank())?)?;
            for (n, omega) in &spectrum.omegas {
                if !omega.is_zero() {
                    println!("omega {} {}", spectrum.ray.scale(*n), omega.to_q_string());
                }
            }
        }
        Command::Strings { quiver, max_len } => {
            let alg = load_algebra(&quiver)?;
            for w in enumerate_strings(&alg, max_len) {
                println!("{}\t{}", w.display(alg.quiver()), w.dim_vector(alg.quiver()));
            }
        }
        Command::Bands { quiver, max_len } => {
            let alg = load_algebra(&quiver)?;
            for v in enumerate_bands(&alg, max_len) {
                println!("{}\t{}", v.display(alg.quiver()), v.dim_vector(alg.quiver(), 1));
            }
        }
        Command::Ext { quiver, first, second } => {
            let alg = load_algebra(&quiver)?;
            match (first.starts_with("band:"), second.starts_with("band:")) {
                (false, false) => {
                    let a = alg.parse_string(&first)?;
                    let b = alg.parse_string(&second)?;
                    println!("ext1 {}", ext1_dim(&alg, &a, &b));
                }
                (false, true) => {
                    let (_, from) = ext_string_band_vanishes(&alg, &alg.parse_string(&first)?, &alg.parse_band(&second)?);
                    println!("ext1 {}", if from { "0" } else { "uncertified" });
                }
                (true, false) => {
                    let (into, _) = ext_string_band_vanishes(&alg, &alg.parse_string(&second)?, &alg.parse_band(&first)?);
                    println!("ext1 {}", if into { "0" } else { "uncertified" });
                }
                (true, true) => return Err(CliError::Usage("band against band is not supported".into())),
            }
        }
        Command::Stables {
            quiver,
            charge,
            class,
            max_len,
            semistable,
            expect,
        } => {
            let alg = load_algebra(&quiver)?;
            let z = load_charge(&charge, alg.quiver())?;
            let phi = z.phase(&dim_vector(&class, alg.quiver().vertex_count())?)?;
            let mut opts = ClassifyOptions::new(max_len);
            if semistable {
                opts.mode = ClassifyMode::SemistableIndecomposable;
            }
            let found: Vec<String> = classify_stables(&alg, &z, &phi, &opts)?
                .iter()
                .map(|c| c.display(&alg))
                .collect();
            for w in &found {
                println!("{w}");
            }
            if let Some(expect) = expect {
                let mut want: Vec<String> = expect.split(';').map(|w| w.trim().to_string()).collect();
                want.sort();
                let mut got = found.clone();
                got.sort();
                if want != got {
                    println!("disagreement: expected {}", want.join("; "));
                    return Ok(1);
                }
            }
        }
        Command::Count { quiver, dim, p, filters } => {
            let (q, w) = load_quiver(&quiver)?;
            let d = dim_vector(&dim, q.vertex_count())?;
            let report = count_reps(&q, &relations(&filters, &q, &w), &d, p, &flags(&filters, &q)?, Strategy::Pruned)?;
            println!("{report}");
        }
        Command::OracleMatch {
            quiver,
            series,
            dim,
            primes,
            filters,
        } => {
            let (q, w) = load_quiver(&quiver)?;
            let s = load_series(&series)?;
            let d = dim_vector(&dim, q.vertex_count())?;
            let m = fqoracle::oracle_match(&s, &q, &relations(&filters, &q, &w), &d, &primes, &flags(&filters, &q)?)?;
            for row in &m.rows {
                let verdict = if row.ok() { "ok" } else { "MISMATCH" };
                println!("p={} d={} predicted={} stacky={} {verdict}", row.p, m.d, row.predicted, row.stacky);
            }
            if !m.ok() {
                return Ok(1);
            }
        }
        Command::Barbell { truncation, c2_class } => {
            let c2 = match c2_class {
                Some(c) => dim_vector(&c, 2)?,
                None => DimVec(vec![2, 2]),
            };
            let a = dt::barbell_assemble_with(truncation, &c2)?;
            return Ok(report_equality("barbell", truncation, a.mismatch.as_ref()));
        }
        Command::Wallcross { truncation, drop, list } => {
            if list {
                for (i, f) in dt::wallcross_factors(truncation).iter().enumerate() {
                    println!("{i}\t{:?}\t{}", f.side, f.factor);
                }
                return Ok(0);
            }
            let r = dt::wallcross_with(truncation, drop)?;
            return Ok(report_equality("wallcross", truncation, r.mismatch.as_ref()));
        }
        Command::Invariant {
            ni,
            nii,
            niii,
            ndrd,
            nnrd,
        } => {
            let (refined, numerical) = dt::invariant(&TrajectoryCounts {
                n_i: ni,
                n_ii: nii,
                n_iii: niii,
                n_drd: ndrd,
                n_nrd: nnrd,
            });
            println!("refined: {}  numerical: {numerical}", refined.to_q_string());
        }
        Command::Table => {
            println!("name\tquiver\tpotential\tstability\tseries\tomega");
            let mut status = 0;
            for p in dt::presets() {
                println!(
                    "{}\t{}\t{}\t{}\t{}\t{}",
                    p.name,
                    p.quiver_text(),
                    p.potential_text,
                    p.stability_text(),
                    p.series_text(),
                    p.omega_text()
                );
                if let Err(e) = dt::verify_preset(&p) {
                    eprintln!("{e}");
                    status = 1;
                }
            }
            return Ok(status);
        }
    }
    Ok(0)
}

fn report_equality(what: &str, n: u32, mismatch: Option<&DimVec>) -> u8 {
    match mismatch {
        None => {
            println!("{what} N={n}: equal");
            0
        }
        Some(d) => {
            println!("{what} N={n}: mismatch at {d}");
            1
        }
    }
}

fn run<I: IntoIterator<Item = OsString>>(args: I) -> u8 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn main() -> ExitCode {
    ExitCode::from(run(std::env::args_os()))
}
