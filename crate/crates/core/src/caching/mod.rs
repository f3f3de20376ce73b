//! Placement, delivery and end-to-end simulation of coded caching schemes.
//!
//! Users are the blocks of a resolvable design (user `i q + l` is block
//! `B_{i,l}`). Each file is split into `F_s = N z` subfiles indexed by
//! `(point, superscript)`, flattened as `point * z + superscript`. A user
//! caches every subfile whose point lies in its block, so `M / N = 1 / q`.

mod delivery;
mod eqsub;
mod graph;
mod metrics;
mod simulate;

pub use delivery::*;
pub use eqsub::*;
pub use graph::*;
pub use metrics::*;
pub use simulate::*;

use crate::codes::window_multiplier;
use crate::design::ResolvableDesign;
use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CachingError {
    #[error("alpha = {alpha} must lie in 1..={n}")]
    InvalidAlpha { alpha: usize, n: usize },
    #[error("demand vector has {got} entries for {users} users")]
    IncompleteDemands { got: usize, users: usize },
    #[error("user {user} demands file {file} but only {files} files exist")]
    UnknownFile { user: usize, file: usize, files: usize },
    #[error("equation {equation}: user {user} does not cache subfile {subfile} needed to decode")]
    DecodeFailure { equation: usize, user: usize, subfile: usize },
    #[error("recovery set {recovery_set} yields unequal residual sets; alpha is not certified for this design")]
    NotCcp { recovery_set: usize },
    #[error("equation-subfile matrix violates the validity conditions ({0} violations)")]
    InvalidEquationSubfile(usize),
    #[error("entry {value} at ({row}, {col}) exceeds the user count {users}")]
    EntryOutOfRange { row: usize, col: usize, value: u32, users: usize },
}

/// Which subfiles each user stores.
pub trait Placement {
    fn num_users(&self) -> usize;
    fn num_subfiles(&self) -> usize;
    fn caches(&self, user: usize, subfile: usize) -> bool;
}

/// Design-based placement with a certified window width `alpha`.
#[derive(Debug, Clone)]
pub struct CachingScheme {
    design: ResolvableDesign,
    alpha: usize,
    z: usize,
    graph: RecoverySetGraph,
}

/// Every user caches the subfiles of every point in its block, for all `z` superscripts.
pub fn placement(design: ResolvableDesign, alpha: usize) -> Result<CachingScheme, CachingError> {
    let n = design.n();
    if alpha == 0 || alpha > n {
        return Err(CachingError::InvalidAlpha { alpha, n });
    }
    let graph = recovery_set_graph(n, alpha);
    Ok(CachingScheme { z: window_multiplier(n, alpha), design, alpha, graph })
}

impl CachingScheme {
    pub fn design(&self) -> &ResolvableDesign {
        &self.design
    }

    pub fn graph(&self) -> &RecoverySetGraph {
        &self.graph
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn z(&self) -> usize {
        self.z
    }

    pub fn n(&self) -> usize {
        self.design.n()
    }

    pub fn q(&self) -> usize {
        self.design.q()
    }

    /// `F_s = N z` with `N` the number of points.
    pub fn subpacketization(&self) -> usize {
        self.design.num_points() * self.z
    }

    pub fn subfile(&self, point: usize, superscript: usize) -> usize {
        point * self.z + superscript
    }

    /// Inverse of [`CachingScheme::subfile`].
    pub fn subfile_parts(&self, subfile: usize) -> (usize, usize) {
        (subfile / self.z, subfile % self.z)
    }

    /// Subfiles cached by `user`, ascending.
    pub fn cache_of(&self, user: usize) -> Vec<usize> {
        let (class, label) = self.design.block_at(user);
        self.design.block(class, label).iter().flat_map(|&p| (0..self.z).map(move |s| (p, s))).map(|(p, s)| self.subfile(p, s)).collect()
    }

    pub fn params(&self) -> SchemeParams {
        SchemeParams::new(self.n(), self.q(), self.alpha, BigUint::from(self.design.num_points()))
    }

    /// Delivery for `demands` using this scheme's recovery sets.
    pub fn delivery(&self, demands: &[usize]) -> Result<DeliveryPlan, CachingError> {
        generate_delivery(self, &self.graph, demands)
    }
}

impl Placement for CachingScheme {
    fn num_users(&self) -> usize {
        self.design.num_blocks()
    }

    fn num_subfiles(&self) -> usize {
        self.subpacketization()
    }

    fn caches(&self, user: usize, subfile: usize) -> bool {
        let (class, label) = self.design.block_at(user);
        self.design.contains(class, label, subfile / self.z)
    }
}
