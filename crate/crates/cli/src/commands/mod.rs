pub mod compare;
pub mod construct;
pub mod exponent;
pub mod search;
pub mod simulate;
pub mod verify;

use crate::error::CliError;
use codedcache::analysis::fmt_ratio;
use codedcache::caching::OperatingPoint;
use num_rational::BigRational;
use std::path::Path;

/// Comma-separated integers, e.g. `2,1,0,1,1`.
pub fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, CliError> {
    s.split(',')
        .map(|x| x.trim().parse().map_err(|_| CliError::Usage(format!("{what}: cannot parse `{x}` in `{s}`"))))
        .collect()
}

/// `p/q`, or `p` when the denominator is 1.
pub fn show_ratio(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        fmt_ratio(r)
    }
}

pub fn describe_point(p: &OperatingPoint) -> String {
    format!(
        "K = {}, M/N = {}, F_s = {}, R = {}, gain = {}",
        p.users,
        show_ratio(&p.mem),
        p.subpacketization,
        show_ratio(&p.rate),
        show_ratio(&p.gain)
    )
}

pub fn write_file(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| crate::error::io(path, e))
}
