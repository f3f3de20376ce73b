//! Parameter search and comparison against the uncapped-subpacketization baseline.
//!
//! Exact arithmetic throughout, except the memory-sharing root finder and
//! the asymptotic exponents, which use `f64`.

mod candidates;

pub use candidates::*;

use crate::caching::{OperatingPoint, SchemeParams};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("no constructible k fits the subpacketization budget")]
    NoFeasibleK,
    #[error("K * M / N = {0} is not an integer in 0..=K")]
    NonIntegralCachePoint(String),
    #[error("no memory-sharing solution: the point lies outside the achievable region")]
    NoSolutionInRange,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error(transparent)]
    Codes(#[from] crate::codes::CodesError),
}

/// `C(n, r)`.
pub fn binomial(n: u64, r: u64) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Subset-placement baseline at an integral cache point `t = K M / N`:
/// `R = K (1 - M/N) / (1 + t)`, `F_s = C(K, t)`.
pub fn mn_metrics(users: u64, mem: &BigRational) -> Result<OperatingPoint, AnalysisError> {
    let t = mem * BigRational::from_integer(BigInt::from(users));
    if !t.is_integer() || t < BigRational::zero() || t > BigRational::from_integer(users.into()) {
        return Err(AnalysisError::NonIntegralCachePoint(t.to_string()));
    }
    let t = t.to_integer().to_u64().expect("within 0..=K");
    let rate = BigRational::from_integer(users.into()) * (BigRational::one() - mem) / BigRational::from_integer((t + 1).into());
    Ok(OperatingPoint::new(users, mem.clone(), binomial(users, t), rate))
}

/// Rate of the subset-placement baseline as a function of `x = M / N` (not necessarily integral).
fn mn_rate(users: f64, x: f64) -> f64 {
    users * (1.0 - x) / (1.0 + users * x)
}

/// Memory sharing between the cache points `M*/N` and `1 - M*/N` reaching `(M/N, R)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MemorySharingBound {
    pub m_star: f64,
    pub lambda: f64,
    /// `ceil(K M*) / K`.
    pub m_prime: BigRational,
    /// `C(K, K M')`.
    pub subpacketization_lower: BigUint,
    /// Absolute residuals of the rate and memory equations at the returned root.
    pub rate_residual: f64,
    pub mem_residual: f64,
}

fn lambda_at(x: f64, m: f64) -> f64 {
    let den = 1.0 - 2.0 * x;
    if den.abs() < 1e-15 {
        0.5
    } else {
        (1.0 - x - m) / den
    }
}

/// Solves
/// `R = λ h(x) + (1 - λ) h(1 - x)` and `M/N = λ x + (1 - λ)(1 - x)`
/// for `x = M*/N` in `[0, min(M/N, 1 - M/N)]`, with `h` the baseline rate
/// curve, by bisection to a residual below `1e-12`. The lower bound on the
/// subpacketization is `C(K, K M')` with `M' = ceil(K x) / K`.
pub fn memory_sharing_bound(users: u64, mem: &BigRational, rate: &BigRational) -> Result<MemorySharingBound, AnalysisError> {
    let k = users as f64;
    let m = mem.to_f64().ok_or(AnalysisError::NoSolutionInRange)?;
    let r = rate.to_f64().ok_or(AnalysisError::NoSolutionInRange)?;
    if !(0.0..=1.0).contains(&m) {
        return Err(AnalysisError::NoSolutionInRange);
    }
    let f = |x: f64| {
        let l = lambda_at(x, m);
        l * mn_rate(k, x) + (1.0 - l) * mn_rate(k, 1.0 - x) - r
    };
    let (mut lo, mut hi) = (0.0f64, m.min(1.0 - m));
    let (flo, fhi) = (f(lo), f(hi));
    const TOL: f64 = 1e-12;
    let x = if flo.abs() <= TOL {
        lo
    } else if fhi.abs() <= TOL {
        hi
    } else if flo < 0.0 || fhi > 0.0 {
        return Err(AnalysisError::NoSolutionInRange);
    } else {
        let mut mid = 0.5 * (lo + hi);
        for _ in 0..200 {
            mid = 0.5 * (lo + hi);
            let v = f(mid);
            if v.abs() <= TOL || hi - lo < 1e-300 {
                break;
            }
            if v > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        mid
    };
    let lambda = lambda_at(x, m);
    // Guard against K x landing a rounding error above an integer.
    let t_prime = (k * x - 1e-9).ceil().max(0.0) as u64;
    Ok(MemorySharingBound {
        m_star: x,
        lambda,
        m_prime: BigRational::new(BigInt::from(t_prime), BigInt::from(users)),
        subpacketization_lower: binomial(users, t_prime),
        rate_residual: f(x).abs(),
        mem_residual: (lambda * x + (1.0 - lambda) * (1.0 - x) - m).abs(),
    })
}

/// Memory sharing between integral baseline points `(weight, M/N)` with weights summing to 1.
/// Subpacketization is the sum of the parts'.
pub fn mn_memory_sharing(users: u64, parts: &[(BigRational, BigRational)]) -> Result<OperatingPoint, AnalysisError> {
    let mut mem = BigRational::zero();
    let mut rate = BigRational::zero();
    let mut fs = BigUint::zero();
    for (w, m) in parts {
        let p = mn_metrics(users, m)?;
        mem += w * &p.mem;
        rate += w * &p.rate;
        fs += p.subpacketization;
    }
    Ok(OperatingPoint::new(users, mem, fs, rate))
}

/// Binary entropy.
pub fn h2(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        0.0
    } else {
        -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// Base point `M/N = 1/q`.
    LowMemory,
    /// Transposed point.
    HighMemory,
}

/// Limit of `(1/K) log2(F_s^baseline / F_s)` as `K` grows with rate `eta = k / n` fixed.
pub fn scaling_exponent(q: u32, eta: f64, regime: Regime) -> f64 {
    let q = q as f64;
    let penalty = eta / q * q.log2();
    match regime {
        Regime::LowMemory => h2(1.0 / q) - penalty,
        Regime::HighMemory => h2(eta / q) - penalty,
    }
}

/// `log2` of a big integer.
pub fn log2_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().map_or(f64::INFINITY, f64::log2);
    }
    let shift = bits - 64;
    (x >> shift).to_f64().expect("64 bits").log2() + shift as f64
}

/// `(1/K) log2(a / b)`.
pub fn finite_exponent(users: u64, a: &BigUint, b: &BigUint) -> f64 {
    (log2_big(a) - log2_big(b)) / users as f64
}

/// A row of the comparison table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonRow {
    pub scheme_id: String,
    pub point: OperatingPoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Baselines {
    /// Add the subset-placement point at each scheme's `M/N` when `K M / N` is integral.
    pub mn: bool,
    /// Add the memory-sharing lower bound on subpacketization at each scheme point.
    pub memory_sharing: bool,
    /// Add the subset-placement point at every integral cache point for this many users.
    pub mn_curve: Option<u64>,
}

/// Subset-placement points at `M/N = t / K` for `t = 0..=K`.
pub fn mn_curve(users: u64) -> Vec<OperatingPoint> {
    (0..=users).map(|t| mn_metrics(users, &rat(t as i64, users as i64)).expect("integral cache point")).collect()
}

/// Both operating points of every scheme plus the requested baselines,
/// sorted by `M/N` then `R`.
pub fn compare(schemes: &[(String, SchemeParams)], baselines: Baselines) -> Vec<ComparisonRow> {
    let mut rows: Vec<ComparisonRow> = baselines
        .mn_curve
        .map(|k| mn_curve(k).into_iter().map(|point| ComparisonRow { scheme_id: format!("mn(K={k})"), point }).collect())
        .unwrap_or_default();
    for (id, params) in schemes {
        for (suffix, point) in [("", params.base_point()), ("^T", params.transposed_point())] {
            let scheme_id = format!("{id}{suffix}");
            if baselines.mn {
                if let Ok(p) = mn_metrics(point.users, &point.mem) {
                    rows.push(ComparisonRow { scheme_id: format!("mn[{scheme_id}]"), point: p });
                }
            }
            if baselines.memory_sharing {
                if let Ok(b) = memory_sharing_bound(point.users, &point.mem, &point.rate) {
                    let p = OperatingPoint::new(point.users, point.mem.clone(), b.subpacketization_lower, point.rate.clone());
                    rows.push(ComparisonRow { scheme_id: format!("mn-sharing-bound[{scheme_id}]"), point: p });
                }
            }
            rows.push(ComparisonRow { scheme_id, point });
        }
    }
    rows.sort_by(|a, b| a.point.mem.cmp(&b.point.mem).then_with(|| a.point.rate.cmp(&b.point.rate)).then_with(|| a.scheme_id.cmp(&b.scheme_id)));
    rows.dedup_by(|a, b| a.scheme_id == b.scheme_id && a.point == b.point);
    rows
}

/// Rational as `p/q` (always with a denominator).
pub fn fmt_ratio(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub const COMPARISON_HEADER: [&str; 6] = ["scheme_id", "K", "M_over_N", "R", "F_s", "gain"];

impl ComparisonRow {
    pub fn fields(&self) -> [String; 6] {
        [
            self.scheme_id.clone(),
            self.point.users.to_string(),
            fmt_ratio(&self.point.mem),
            fmt_ratio(&self.point.rate),
            self.point.subpacketization.to_string(),
            fmt_ratio(&self.point.gain),
        ]
    }
}
