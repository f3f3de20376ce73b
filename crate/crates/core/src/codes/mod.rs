//! Generator matrices with the consecutive column property (CCP) and the
//! constructions that produce them.
//!
//! A `k x n` generator matrix has the `(k, alpha)`-CCP when every cyclic
//! window of `alpha` consecutive columns starting at a multiple of `alpha`
//! behaves like an MDS code: for `alpha = k + 1` every `k` of the window's
//! columns are independent; for `alpha <= k` the window's columns are
//! independent. Over Z/qZ "independent" means some maximal minor is a unit.

mod builders;
mod ccp;
mod crt;
pub mod poly;

pub use builders::*;
pub use ccp::*;
pub use crt::*;

use crate::gf::{gcd, GfError, Matrix, ScalarDomain};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodesError {
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error("alpha = {alpha} must lie in 1..={max}")]
    InvalidAlpha { alpha: usize, max: usize },
    #[error("the shortcut check only applies to cyclic codes")]
    NotCyclic,
    #[error("alphabet of size {q} is too small, need at least {need}")]
    FieldTooSmall { q: u32, need: u32 },
    #[error("generator polynomial does not divide X^{n} - 1")]
    NotADivisor { n: usize },
    #[error("generator polynomial is not monic")]
    NotMonic,
    #[error("generator polynomial has zero constant term")]
    ZeroConstantTerm,
    #[error("base matrix does not satisfy the CCP required for this operation")]
    BaseNotCcp,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("CRT components must use distinct prime moduli with product at most 1024")]
    ModuliNotCoprimePrimes,
    #[error("invalid CRT component {index}: {reason}")]
    ComponentInvalid { index: usize, reason: String },
    #[error("invalid generator matrix: {0}")]
    InvalidGenerator(String),
    #[error("operation requires a field alphabet, got {0}")]
    RequiresField(String),
    #[error("search limit of {limit} candidates exceeded")]
    SearchLimit { limit: u64 },
}

/// How a generator matrix was produced. Kept through wrapping operations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    /// Vandermonde matrix on the first `n` field elements.
    Mds,
    /// Cyclic code with the given generator polynomial (constant term first).
    Cyclic { gen_poly: Vec<u32> },
    /// `[I_k | 1]`.
    Spc,
    /// `base ⊗ I_t`.
    KronIdentity { t: usize, base: Box<Provenance> },
    /// Vandermonde-block construction for `alpha > z + 1`.
    BlockVandermonde { t: usize, z: usize, alpha_cols: usize },
    /// Identity-band construction for `alpha = z + 1` over a field.
    IdentityBand { t: usize, z: usize },
    /// Identity-band construction with `z = 2` over Z/qZ.
    RingBand { t: usize },
    /// `base` with `s` copies of its leading `width` columns prepended.
    Extended { s: usize, width: usize, base: Box<Provenance> },
    /// Componentwise CRT lift of cyclic codes over prime fields.
    CrtCyclic { moduli: Vec<u32>, gen_polys: Vec<Vec<u32>> },
    UserSupplied,
}

/// A `k x n` generator matrix with `1 <= k < n`.
///
/// Every column is nonzero over a field; over Z/qZ the gcd of each column
/// with `q` is 1, so every symbol is uniformly distributed over codewords.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMatrix {
    matrix: Matrix,
    provenance: Provenance,
}

impl GeneratorMatrix {
    pub fn new(matrix: Matrix, provenance: Provenance) -> Result<Self, CodesError> {
        let (k, n) = (matrix.rows(), matrix.cols());
        if k == 0 || k >= n {
            return Err(CodesError::InvalidGenerator(format!("need 1 <= k < n, got k = {k}, n = {n}")));
        }
        let q = matrix.domain().order() as u64;
        for c in 0..n {
            let col = matrix.column(c);
            let ok = if matrix.domain().is_field() {
                col.iter().any(|&x| x != 0)
            } else {
                col.iter().fold(q, |g, &x| gcd(g, x as u64)) == 1
            };
            if !ok {
                let why = if matrix.domain().is_field() { "is zero" } else { "has gcd with q different from 1" };
                return Err(CodesError::InvalidGenerator(format!("column {c} {why}")));
            }
        }
        Ok(Self { matrix, provenance })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn domain(&self) -> &ScalarDomain {
        self.matrix.domain()
    }

    pub fn k(&self) -> usize {
        self.matrix.rows()
    }

    pub fn n(&self) -> usize {
        self.matrix.cols()
    }

    pub fn q(&self) -> u32 {
        self.matrix.domain().order()
    }

    /// Codeword `u G` for a message `u` of length `k`.
    pub fn encode(&self, message: &[u32]) -> Vec<u32> {
        self.matrix.left_mul_vec(message)
    }

    /// Message with index `j`: base-q digits of `j`, `u_0` most significant.
    pub fn message(&self, j: u64) -> Vec<u32> {
        message_digits(self.q(), self.k(), j)
    }
}

pub(crate) fn message_digits(q: u32, k: usize, mut j: u64) -> Vec<u32> {
    let mut u = vec![0u32; k];
    for d in u.iter_mut().rev() {
        *d = (j % q as u64) as u32;
        j /= q as u64;
    }
    u
}

/// Least positive `z` with `alpha | n z`.
pub fn window_multiplier(n: usize, alpha: usize) -> usize {
    alpha / gcd(n as u64, alpha as u64) as usize
}
