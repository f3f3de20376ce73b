use crate::error::CliError;
use codedcache::analysis::{construct_candidate_set, k_max_from_candidates, AnalysisError, CandidateEntry, Route};
use codedcache::codes::DEFAULT_CYCLIC_LIMIT;
use num_bigint::BigUint;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Code length (number of parallel classes).
    #[arg(long)]
    pub n: usize,
    /// Alphabet size; prime powers give fields, other values Z/qZ.
    #[arg(long)]
    pub q: u32,
    /// Subpacketization budget; marks the largest feasible k.
    #[arg(long)]
    pub budget: Option<BigUint>,
    /// Candidate polynomials examined per cyclic search before giving up.
    #[arg(long, default_value_t = DEFAULT_CYCLIC_LIMIT)]
    pub cyclic_limit: u64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
}

#[derive(Debug, Serialize)]
struct Row {
    k: usize,
    n_prime: usize,
    z: usize,
    alpha: usize,
    construction: String,
    found: bool,
    inconclusive: bool,
    /// `q^k z`.
    subpacketization: String,
    k_max: bool,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    schema_version: u32,
    n: usize,
    q: u32,
    budget: Option<String>,
    k_max: Option<usize>,
    rows: &'a [Row],
}

fn construction(e: &CandidateEntry) -> String {
    let Some(route) = &e.route else { return "-".into() };
    let base = match route {
        Route::Cyclic { length, gen_poly } => {
            format!("cyclic({length}, g={})", gen_poly.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
        }
        Route::Spc => "spc".into(),
        Route::IdentityBand { t, z } => format!("identity-band(t={t}, z={z})"),
        Route::Mds { length } => format!("mds({length})"),
        Route::BlockVandermonde { t, z, alpha_cols } => format!("block-vandermonde(t={t}, z={z}, cols={alpha_cols})"),
        Route::RingBand { t } => format!("ring-band(t={t})"),
    };
    match e.extension {
        0 => base,
        1 => format!("{base} + 1 copy"),
        s => format!("{base} + {s} copies"),
    }
}

pub fn run(args: Args) -> Result<(), CliError> {
    let set = construct_candidate_set(args.n, args.q, args.cyclic_limit).map_err(crate::error::domain)?;
    let choice = args.budget.as_ref().map(|b| k_max_from_candidates(&set, b));
    let k_max = match &choice {
        Some(Ok(c)) => Some(c.k),
        _ => None,
    };
    let rows: Vec<Row> = set
        .entries
        .iter()
        .map(|e| Row {
            k: e.k,
            n_prime: e.n_prime,
            z: e.z,
            alpha: e.alpha,
            construction: construction(e),
            found: e.found(),
            inconclusive: e.inconclusive,
            subpacketization: (BigUint::from(args.q).pow(e.k as u32) * BigUint::from(e.z)).to_string(),
            k_max: Some(e.k) == k_max,
        })
        .collect();

    match args.format {
        Format::Table => {
            let width = rows.iter().map(|r| r.construction.len()).max().unwrap_or(0).max(12);
            println!("{:>1} {:>3} {:>4} {:>3} {:>5}  {:<width$}  {:<5}  F_s", "", "k", "n'", "z", "alpha", "construction", "found");
            for r in &rows {
                let found = if r.inconclusive { "?" } else if r.found { "yes" } else { "no" };
                let mark = if r.k_max { "*" } else { "" };
                println!(
                    "{mark:>1} {:>3} {:>4} {:>3} {:>5}  {:<width$}  {found:<5}  {}",
                    r.k, r.n_prime, r.z, r.alpha, r.construction, r.subpacketization
                );
            }
            if let Some(Ok(c)) = &choice {
                println!(
                    "k_max = {} within budget {}: F_s = {}, gain = {}",
                    c.k,
                    args.budget.as_ref().expect("budget given"),
                    c.subpacketization,
                    c.max_gain
                );
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(std::io::stdout());
            for r in &rows {
                w.serialize(r).map_err(|e| CliError::domain("Io", e.to_string()))?;
            }
            w.flush().map_err(|e| CliError::domain("Io", e.to_string()))?;
        }
        Format::Json => {
            let r = JsonReport {
                schema_version: 1,
                n: args.n,
                q: args.q,
                budget: args.budget.as_ref().map(BigUint::to_string),
                k_max,
                rows: &rows,
            };
            println!("{}", serde_json::to_string_pretty(&r).expect("reports serialize"));
        }
    }
    match choice {
        Some(Err(AnalysisError::NoFeasibleK)) => Err(CliError::domain(
            "NoFeasibleK",
            format!("no feasible k: every found code needs more than {} subfiles", args.budget.expect("budget given")),
        )),
        Some(Err(e)) => Err(crate::error::domain(e)),
        _ => Ok(()),
    }
}
