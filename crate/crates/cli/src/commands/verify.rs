use crate::error::{domain, CliError};
use crate::scheme_file::{Code, SchemeFile};
use codedcache::codes::{check_ccp_cyclic_shortcut, CcpCertificate, CheckMethod, Probe};
use serde::Serialize;
use std::path::PathBuf;

#[derive(Debug, clap::Args)]
pub struct Args {
    pub file: PathBuf,
    /// Window width (default: k + 1, or k_min for a CRT code).
    #[arg(long)]
    pub alpha: Option<usize>,
    /// Use the cyclic shortcut instead of the exhaustive check (cyclic codes, alpha = k + 1).
    #[arg(long)]
    pub shortcut: bool,
    /// Print the certificates as JSON.
    #[arg(long)]
    pub json: bool,
}

#[derive(Serialize)]
struct Report<'a> {
    schema_version: u32,
    file: String,
    alpha: usize,
    satisfied: bool,
    certificates: &'a [CcpCertificate],
}

fn probe_name(p: &Probe) -> String {
    match p {
        Probe::DeletedColumn { position } => format!("without column {position}"),
        Probe::AllColumns => "all columns".into(),
        Probe::RowSubset { rows } if rows.is_empty() => "no unit minor".into(),
        Probe::RowSubset { rows } => format!("rows {rows:?}"),
        Probe::Condition { position } => format!("condition matrix {position}"),
    }
}

pub fn run(args: Args) -> Result<(), CliError> {
    let (_, code) = SchemeFile::load(&args.file)?;
    let alpha = args.alpha.unwrap_or_else(|| code.default_alpha());
    let certs = match (&code, args.shortcut) {
        (Code::Linear(g), true) => {
            if alpha != g.k() + 1 {
                return Err(CliError::Usage(format!("--shortcut checks alpha = k + 1 = {}, not {alpha}", g.k() + 1)));
            }
            vec![check_ccp_cyclic_shortcut(g).map_err(domain)?]
        }
        (Code::Crt(_), true) => return Err(CliError::Usage("--shortcut applies to linear cyclic codes only".into())),
        (_, false) => code.certify(alpha)?,
    };
    let satisfied = certs.iter().all(|c| c.satisfied);

    if args.json {
        let r = Report { schema_version: 1, file: args.file.display().to_string(), alpha, satisfied, certificates: &certs };
        println!("{}", serde_json::to_string_pretty(&r).expect("reports serialize"));
    } else {
        println!("code: {}", code.describe());
        for (i, cert) in certs.iter().enumerate() {
            let method = match cert.method {
                CheckMethod::Exhaustive => "exhaustive",
                CheckMethod::CyclicShortcut => "cyclic shortcut",
            };
            if certs.len() > 1 {
                println!("component {i}:");
            }
            println!("alpha = {}, z = {}, method = {method}, {} windows", cert.alpha, cert.z, cert.windows.len());
            for w in &cert.windows {
                let failed: Vec<String> = w.probes.iter().filter(|p| !p.ok).map(|p| probe_name(&p.probe)).collect();
                let verdict = if w.ok { "ok".to_string() } else { format!("FAIL ({})", failed.join("; ")) };
                println!("  window {:>3} columns {:?}: {verdict}", w.index, w.columns);
            }
        }
        println!("{}", if satisfied { "satisfied" } else { "NOT satisfied" });
    }
    if satisfied {
        Ok(())
    } else {
        Err(CliError::Failed(format!("window property fails at alpha = {alpha}")))
    }
}
