use super::{parse_list, show_ratio};
use crate::error::{domain, CliError};
use crate::scheme_file::SchemeFile;
use codedcache::caching::{placement, scheme_from_eq_subfile, simulate, CachingError, EquationSubfileMatrix, SimulationConfig, SimulationReport};
use codedcache::design::resolvable_design;
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::path::PathBuf;
use std::str::FromStr;

/// Designs with more points than this are refused; simulation materializes every subfile.
const MAX_POINTS: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Demands {
    /// Each user draws a file uniformly from the seeded generator.
    UniformRandom,
    /// Every user requests file `i`.
    AllSame(usize),
    List(Vec<usize>),
}

impl FromStr for Demands {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "uniform-random" {
            Ok(Demands::UniformRandom)
        } else if let Some(i) = s.strip_prefix("all-same:") {
            i.parse().map(Demands::AllSame).map_err(|_| format!("bad file index in `{s}`"))
        } else {
            parse_list(s, "--demands").map(Demands::List).map_err(|e| e.to_string())
        }
    }
}

impl Demands {
    fn vector(&self, users: usize, files: usize, seed: u64) -> Vec<usize> {
        match self {
            Demands::UniformRandom => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                (0..users).map(|_| rng.gen_range(0..files)).collect()
            }
            Demands::AllSame(i) => vec![*i; users],
            Demands::List(v) => v.clone(),
        }
    }
}

#[derive(Debug, clap::Args)]
pub struct Args {
    pub file: PathBuf,
    /// Window width (default: k + 1, or k_min for a CRT code).
    #[arg(long)]
    pub alpha: Option<usize>,
    /// Library size N.
    #[arg(long, default_value_t = 2)]
    pub files: usize,
    /// Bytes per subfile.
    #[arg(long, default_value_t = 8)]
    pub bytes: usize,
    /// Seeds both the payload bytes and random demands.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// `uniform-random`, `all-same:i`, or a comma-separated file index per user.
    #[arg(long, default_value = "uniform-random")]
    pub demands: Demands,
    /// Simulate the scheme read off the transposed equation-subfile matrix.
    #[arg(long)]
    pub transpose: bool,
}

#[derive(Serialize)]
struct UserJson {
    user: usize,
    demanded_file: usize,
    recovered: usize,
    missing: usize,
    duplicates: usize,
    complete: bool,
    exact: bool,
}

#[derive(Serialize)]
struct Report {
    schema_version: u32,
    code: String,
    alpha: usize,
    transposed: bool,
    users: usize,
    num_files: usize,
    subfile_bytes: usize,
    seed: u64,
    demands: Vec<usize>,
    subpacketization: usize,
    /// Δ, the number of transmitted equations.
    num_equations: usize,
    rate: String,
    expected_rate: String,
    load_bytes: u64,
    all_exact: bool,
    user_results: Vec<UserJson>,
}

fn caching_error(e: CachingError) -> CliError {
    match e {
        CachingError::DecodeFailure { .. } | CachingError::NotCcp { .. } | CachingError::InvalidEquationSubfile(_) => CliError::Failed(e.to_string()),
        other => domain(other),
    }
}

pub fn run(args: Args) -> Result<(), CliError> {
    let (_, code) = SchemeFile::load(&args.file)?;
    if args.files == 0 || args.bytes == 0 {
        return Err(CliError::Usage("--files and --bytes must be positive".into()));
    }
    if code.num_points() > BigUint::from(MAX_POINTS) {
        return Err(CliError::domain("TooLarge", format!("{} points exceed the simulation limit of {MAX_POINTS}", code.num_points())));
    }
    let alpha = args.alpha.unwrap_or_else(|| code.default_alpha());
    let design = resolvable_design(&code.codeword_matrix()?).map_err(domain)?;
    let scheme = placement(design, alpha).map_err(caching_error)?;
    let users = scheme.design().num_blocks();
    let demands = args.demands.vector(users, args.files, args.seed);
    let cfg = SimulationConfig { num_files: args.files, subfile_bytes: args.bytes, seed: args.seed };
    let plan = scheme.delivery(&demands).map_err(caching_error)?;
    let params = code.params(alpha);

    let (report, expected): (SimulationReport, _) = if args.transpose {
        let t = EquationSubfileMatrix::from_plan(&plan).transpose();
        let (tscheme, tplan) = scheme_from_eq_subfile(&t).map_err(caching_error)?;
        let tplan = tplan.with_demands(demands.clone()).map_err(caching_error)?;
        (simulate(&tscheme, &tplan, &cfg).map_err(caching_error)?, params.transposed_point().rate)
    } else {
        (simulate(&scheme, &plan, &cfg).map_err(caching_error)?, params.base_point().rate)
    };

    let out = Report {
        schema_version: 1,
        code: code.describe(),
        alpha,
        transposed: args.transpose,
        users,
        num_files: args.files,
        subfile_bytes: args.bytes,
        seed: args.seed,
        demands,
        subpacketization: report.num_subfiles,
        num_equations: report.num_equations,
        rate: show_ratio(&report.rate),
        expected_rate: show_ratio(&expected),
        load_bytes: report.load_bytes,
        all_exact: report.all_exact,
        user_results: report
            .users
            .iter()
            .map(|u| UserJson {
                user: u.user,
                demanded_file: u.demanded_file,
                recovered: u.recovered,
                missing: u.missing,
                duplicates: u.duplicates,
                complete: u.complete,
                exact: u.exact,
            })
            .collect(),
    };
    println!("{}", serde_json::to_string_pretty(&out).expect("reports serialize"));
    if report.all_exact {
        Ok(())
    } else {
        let failed = report.users.iter().filter(|u| !u.exact).count();
        Err(CliError::Failed(format!("{failed} of {users} users did not reconstruct their file")))
    }
}
