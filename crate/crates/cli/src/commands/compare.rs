use super::write_file;
use crate::error::CliError;
use crate::scheme_file::SchemeFile;
use codedcache::analysis::{compare, spc_family, Baselines, ComparisonRow, COMPARISON_HEADER};
use codedcache::caching::SchemeParams;
use serde::Serialize;
use std::path::PathBuf;

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Scheme files; each contributes its base and transposed points.
    pub files: Vec<PathBuf>,
    /// Window width applied to every file (default: each file's certificate, else k + 1).
    #[arg(long)]
    pub alpha: Option<usize>,
    /// Add every single parity check scheme of length N over an alphabet of size Q, as `N:Q`.
    #[arg(long, value_name = "N:Q")]
    pub spc_family: Vec<String>,
    /// Add the subset-placement scheme at each listed point's memory.
    #[arg(long)]
    pub mn: bool,
    /// Add the memory-sharing lower bound on subpacketization at each listed point.
    #[arg(long)]
    pub memory_sharing: bool,
    /// Add every integral subset-placement point for this many users.
    #[arg(long, value_name = "K")]
    pub mn_curve: Option<u64>,
    /// Also write the table as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Also write the table as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Serialize)]
struct JsonRow {
    scheme_id: String,
    users: u64,
    mem: String,
    rate: String,
    subpacketization: String,
    gain: String,
}

#[derive(Serialize)]
struct JsonReport {
    schema_version: u32,
    rows: Vec<JsonRow>,
}

fn parse_family(s: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Usage(format!("--spc-family expects N:Q, got `{s}`"));
    let (n, q) = s.split_once(':').ok_or_else(bad)?;
    Ok((n.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?))
}

fn render_csv(rows: &[ComparisonRow]) -> Result<Vec<u8>, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| CliError::domain("Io", e.to_string());
    w.write_record(COMPARISON_HEADER).map_err(err)?;
    for r in rows {
        w.write_record(r.fields()).map_err(err)?;
    }
    w.into_inner().map_err(|e| CliError::domain("Io", e.to_string()))
}

pub fn run(args: Args) -> Result<(), CliError> {
    if args.files.is_empty() && args.spc_family.is_empty() && args.mn_curve.is_none() {
        return Err(CliError::Usage("nothing to compare: give scheme files, --spc-family or --mn-curve".into()));
    }
    let mut schemes: Vec<(String, SchemeParams)> = Vec::new();
    for path in &args.files {
        let (file, code) = SchemeFile::load(path)?;
        let stored = file.certificate.as_ref().or(file.component_certificates.first()).map(|c| c.alpha);
        let alpha = args.alpha.or(stored).unwrap_or_else(|| code.default_alpha());
        let id = path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned());
        schemes.push((id, code.params(alpha)));
    }
    for fam in &args.spc_family {
        let (n, q) = parse_family(fam)?;
        if n < 2 || q < 2 {
            return Err(CliError::domain("InvalidParameters", format!("--spc-family needs N >= 2 and Q >= 2, got {fam}")));
        }
        for (id, k) in spc_family(n) {
            schemes.push((format!("{id}/q={q}"), SchemeParams::from_code(n, k, q, k + 1)));
        }
    }
    let rows = compare(&schemes, Baselines { mn: args.mn, memory_sharing: args.memory_sharing, mn_curve: args.mn_curve });

    let table: Vec<[String; 6]> = rows.iter().map(ComparisonRow::fields).collect();
    let widths: Vec<usize> =
        (0..6).map(|c| table.iter().map(|r| r[c].len()).chain([COMPARISON_HEADER[c].len()]).max().unwrap_or(0)).collect();
    let line = |cells: &[String]| cells.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect::<Vec<_>>().join("  ").trim_end().to_string();
    println!("{}", line(&COMPARISON_HEADER.map(String::from)));
    for r in &table {
        println!("{}", line(r));
    }

    if let Some(p) = &args.csv {
        write_file(p, &render_csv(&rows)?)?;
    }
    if let Some(p) = &args.json {
        let report = JsonReport {
            schema_version: 1,
            rows: table
                .into_iter()
                .map(|[scheme_id, users, mem, rate, subpacketization, gain]| JsonRow {
                    scheme_id,
                    users: users.parse().expect("user counts are integers"),
                    mem,
                    rate,
                    subpacketization,
                    gain,
                })
                .collect(),
        };
        write_file(p, serde_json::to_string_pretty(&report).expect("reports serialize").as_bytes())?;
    }
    Ok(())
}
