use super::AnalysisError;
use crate::codes::{
    build_block_vandermonde, build_cyclic, build_identity_band, build_mds, build_ring_band, build_spc, check_ccp_cyclic_shortcut,
    extend_ccp, search_cyclic_generators, CodesError, GeneratorMatrix,
};
use crate::gf::{gcd, prime_power, ScalarDomain};
use num_bigint::BigUint;
use rayon::prelude::*;

/// Base construction of length `n'` (or `n' + i (k + 1)` for cyclic codes)
/// before prepending copies of its leading `k + 1` columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Route {
    Cyclic { length: usize, gen_poly: Vec<u32> },
    Spc,
    IdentityBand { t: usize, z: usize },
    Mds { length: usize },
    BlockVandermonde { t: usize, z: usize, alpha_cols: usize },
    RingBand { t: usize },
}

impl Route {
    pub fn base_length(&self, k: usize) -> usize {
        match self {
            Route::Cyclic { length, .. } | Route::Mds { length } => *length,
            Route::Spc => k + 1,
            Route::IdentityBand { t, z } => (z + 1) * t,
            Route::BlockVandermonde { t, alpha_cols, .. } => t * alpha_cols,
            Route::RingBand { t } => 3 * t,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Route::Cyclic { .. } => "cyclic",
            Route::Spc => "spc",
            Route::IdentityBand { .. } => "identity-band",
            Route::Mds { .. } => "mds",
            Route::BlockVandermonde { .. } => "block-vandermonde",
            Route::RingBand { .. } => "ring-band",
        }
    }
}

/// Outcome of the construction search for one `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateEntry {
    pub k: usize,
    /// `(n mod (k + 1)) + k + 1`.
    pub n_prime: usize,
    pub z: usize,
    /// `n' / gcd(n', k + 1)`.
    pub alpha: usize,
    pub route: Option<Route>,
    /// Copies of the leading `k + 1` columns prepended to reach length `n`.
    pub extension: usize,
    /// Some cyclic search hit its limit.
    pub inconclusive: bool,
}

impl CandidateEntry {
    pub fn found(&self) -> bool {
        self.route.is_some()
    }

    /// Builds the length-`n` generator matrix this entry describes.
    pub fn replay(&self, q: u32) -> Result<Option<GeneratorMatrix>, CodesError> {
        let Some(route) = &self.route else { return Ok(None) };
        let domain = ScalarDomain::for_order(q)?;
        let base = match route {
            Route::Cyclic { length, gen_poly } => build_cyclic(*length, gen_poly, &domain)?,
            Route::Spc => build_spc(self.k, &domain)?,
            Route::IdentityBand { t, z } => build_identity_band(*t, *z, &domain)?,
            Route::Mds { length } => build_mds(*length, self.k, &domain)?,
            Route::BlockVandermonde { t, z, alpha_cols } => build_block_vandermonde(*t, *z, *alpha_cols, &domain)?,
            Route::RingBand { t } => build_ring_band(*t, &domain)?,
        };
        extend_ccp(&base, self.extension).map(Some)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateSet {
    pub n: usize,
    pub q: u32,
    pub entries: Vec<CandidateEntry>,
}

impl CandidateSet {
    /// Values of `k` with a known `(n, k)` code having the `(k, k + 1)`-CCP.
    pub fn found_ks(&self) -> Vec<usize> {
        self.entries.iter().filter(|e| e.found()).map(|e| e.k).collect()
    }

    pub fn entry(&self, k: usize) -> Option<&CandidateEntry> {
        self.entries.iter().find(|e| e.k == k)
    }
}

/// For every `1 <= k < n`, looks for a length-`n` code over an alphabet of
/// size `q` with the `(k, k + 1)`-CCP, trying constructions in a fixed order.
///
/// Over a field: a cyclic code of length `n' + i (k + 1) <= n` accepted by the
/// shortcut check; then SPC (`z = 1`) or the identity band (`z = 2`); then a
/// Vandermonde code when `q >= n'`; then the identity band when
/// `alpha = z + 1` and `q >= z`, or the block Vandermonde construction when
/// `alpha > z + 1` and `q > alpha`. Over Z/qZ only `z <= 2` is covered.
/// Each base is extended to length `n`.
pub fn construct_candidate_set(n: usize, q: u32, cyclic_limit: u64) -> Result<CandidateSet, AnalysisError> {
    if n < 2 {
        return Err(AnalysisError::InvalidParameters(format!("need n >= 2, got {n}")));
    }
    let domain = ScalarDomain::for_order(q).map_err(|e| AnalysisError::InvalidParameters(e.to_string()))?;
    let field = prime_power(q).is_some();
    let entries = (1..n)
        .into_par_iter()
        .map(|k| candidate_for(n, k, &domain, field, cyclic_limit))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CandidateSet { n, q, entries })
}

fn candidate_for(n: usize, k: usize, domain: &ScalarDomain, field: bool, limit: u64) -> Result<CandidateEntry, AnalysisError> {
    let q = domain.order() as usize;
    let n_prime = n % (k + 1) + k + 1;
    let g = gcd(n_prime as u64, (k + 1) as u64) as usize;
    let (z, alpha) = ((k + 1) / g, n_prime / g);
    let mut inconclusive = false;
    let mut route = None;
    if field {
        let mut length = n_prime;
        'lengths: while length <= n {
            let search = search_cyclic_generators(length, k, domain, limit)?;
            inconclusive |= search.inconclusive;
            for gp in search.generators {
                let code = build_cyclic(length, &gp, domain)?;
                if check_ccp_cyclic_shortcut(&code)?.satisfied {
                    route = Some(Route::Cyclic { length, gen_poly: gp });
                    break 'lengths;
                }
            }
            length += k + 1;
        }
        if route.is_none() {
            route = if z == 1 {
                Some(Route::Spc)
            } else if z == 2 {
                Some(Route::IdentityBand { t: k.div_ceil(2), z: 2 })
            } else if q >= n_prime {
                Some(Route::Mds { length: n_prime })
            } else if alpha == z + 1 && q >= z {
                Some(Route::IdentityBand { t: g, z })
            } else if alpha > z + 1 && q > alpha {
                Some(Route::BlockVandermonde { t: g, z, alpha_cols: alpha })
            } else {
                None
            };
        }
    } else if z == 1 {
        route = Some(Route::Spc);
    } else if z == 2 {
        route = Some(Route::RingBand { t: k.div_ceil(2) });
    }
    let extension = route.as_ref().map_or(0, |r| (n - r.base_length(k)) / (k + 1));
    if inconclusive && route.is_some() {
        inconclusive = false;
    }
    Ok(CandidateEntry { k, n_prime, z, alpha, route, extension, inconclusive })
}

/// Largest feasible `k` whose subpacketization fits the budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BudgetChoice {
    pub k: usize,
    /// `q^k z`.
    pub subpacketization: BigUint,
    /// Coded caching gain `k + 1`.
    pub max_gain: usize,
}

/// Picks the largest found `k` with `q^k z <= budget`.
pub fn k_max_from_candidates(set: &CandidateSet, budget: &BigUint) -> Result<BudgetChoice, AnalysisError> {
    set.entries
        .iter()
        .filter(|e| e.found())
        .map(|e| (e.k, BigUint::from(set.q).pow(e.k as u32) * BigUint::from(e.z)))
        .filter(|(_, fs)| fs <= budget)
        .max_by_key(|(k, _)| *k)
        .map(|(k, subpacketization)| BudgetChoice { k, subpacketization, max_gain: k + 1 })
        .ok_or(AnalysisError::NoFeasibleK)
}

/// [`construct_candidate_set`] with the default cyclic limit followed by [`k_max_from_candidates`].
pub fn k_max_for_budget(n: usize, q: u32, budget: &BigUint) -> Result<BudgetChoice, AnalysisError> {
    let set = construct_candidate_set(n, q, crate::codes::DEFAULT_CYCLIC_LIMIT)?;
    k_max_from_candidates(&set, budget)
}

/// The single parity check family of length `n`: one `(n, k)` code with the
/// `(k, k + 1)`-CCP for every `k + 1` dividing `n`, as `(label, k)` pairs.
pub fn spc_family(n: usize) -> Vec<(String, usize)> {
    (1..n).filter(|k| n.is_multiple_of(k + 1)).map(|k| (format!("spc({n},{k})"), k)).collect()
}
