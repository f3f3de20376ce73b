use super::parse_list;
use crate::error::{domain, CliError};
use codedcache::analysis::{finite_exponent, mn_metrics, scaling_exponent, Regime};
use codedcache::caching::SchemeParams;
use serde::Serialize;

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Alphabet sizes, comma-separated.
    #[arg(long, default_value = "2,3,4,5")]
    pub q: String,
    /// Code rates k/n in (0, 1), comma-separated.
    #[arg(long, default_value = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9")]
    pub eta: String,
    /// Code lengths at which to also evaluate the finite-size exponent, with k = round(eta n).
    #[arg(long)]
    pub finite: Option<String>,
}

/// One CSV row. `n` and `users` are empty for the limiting exponent.
#[derive(Debug, Serialize)]
struct Row {
    q: u32,
    eta: f64,
    regime: &'static str,
    n: Option<usize>,
    users: Option<u64>,
    exponent: f64,
}

fn regime_name(r: Regime) -> &'static str {
    match r {
        Regime::LowMemory => "low-memory",
        Regime::HighMemory => "high-memory",
    }
}

/// `(1/K) log2(F_s^baseline / F_s)` at the scheme's operating point in `regime`.
fn finite_row(q: u32, eta: f64, n: usize, regime: Regime) -> Result<Option<Row>, CliError> {
    let k = (eta * n as f64).round() as usize;
    if k == 0 || k >= n {
        return Ok(None);
    }
    let params = SchemeParams::from_code(n, k, q as usize, k + 1);
    let point = match regime {
        Regime::LowMemory => params.base_point(),
        Regime::HighMemory => params.transposed_point(),
    };
    let baseline = mn_metrics(point.users, &point.mem).map_err(domain)?;
    Ok(Some(Row {
        q,
        eta,
        regime: regime_name(regime),
        n: Some(n),
        users: Some(point.users),
        exponent: finite_exponent(point.users, &baseline.subpacketization, &point.subpacketization),
    }))
}

pub fn run(args: Args) -> Result<(), CliError> {
    let qs: Vec<u32> = parse_list(&args.q, "--q")?;
    let etas: Vec<f64> = parse_list(&args.eta, "--eta")?;
    let ns: Vec<usize> = args.finite.as_deref().map(|s| parse_list(s, "--finite")).transpose()?.unwrap_or_default();
    if let Some(q) = qs.iter().find(|&&q| q < 2) {
        return Err(CliError::domain("InvalidParameters", format!("q = {q} must be at least 2")));
    }
    if let Some(e) = etas.iter().find(|&&e| !(e > 0.0 && e < 1.0)) {
        return Err(CliError::domain("InvalidParameters", format!("eta = {e} must lie in (0, 1)")));
    }
    let mut w = csv::Writer::from_writer(std::io::stdout());
    let err = |e: csv::Error| CliError::domain("Io", e.to_string());
    for &q in &qs {
        for &eta in &etas {
            for regime in [Regime::LowMemory, Regime::HighMemory] {
                let exponent = scaling_exponent(q, eta, regime);
                w.serialize(Row { q, eta, regime: regime_name(regime), n: None, users: None, exponent }).map_err(err)?;
                for &n in &ns {
                    if let Some(row) = finite_row(q, eta, n, regime)? {
                        w.serialize(row).map_err(err)?;
                    }
                }
            }
        }
    }
    w.flush().map_err(|e| CliError::domain("Io", e.to_string()))
}
