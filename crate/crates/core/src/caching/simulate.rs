use super::{CachingError, DeliveryPlan, Placement};
use num_bigint::BigInt;
use num_rational::BigRational;

/// 64-bit linear congruential generator (Knuth's MMIX constants). Each byte
/// is the top eight bits of one step, so payloads are identical on every platform.
#[derive(Debug, Clone)]
pub struct Lcg(u64);

impl Lcg {
    pub const MULTIPLIER: u64 = 6_364_136_223_846_793_005;
    pub const INCREMENT: u64 = 1_442_695_040_888_963_407;

    pub fn new(seed: u64) -> Self {
        Lcg(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(Self::MULTIPLIER).wrapping_add(Self::INCREMENT);
        self.0
    }

    pub fn next_byte(&mut self) -> u8 {
        (self.next_u64() >> 56) as u8
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SimulationConfig {
    pub num_files: usize,
    pub subfile_bytes: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UserOutcome {
    pub user: usize,
    pub demanded_file: usize,
    /// Distinct subfiles recovered from transmissions.
    pub recovered: usize,
    /// Subfiles the user neither cached nor recovered.
    pub missing: usize,
    /// Transmissions that re-delivered an already recovered subfile.
    pub duplicates: usize,
    /// Recovered set equals the set of uncached subfiles.
    pub complete: bool,
    /// Reassembled file equals the original byte for byte.
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimulationReport {
    pub users: Vec<UserOutcome>,
    pub num_equations: usize,
    pub num_subfiles: usize,
    /// Transmitted load in units of a file: `Δ / F_s`.
    pub rate: BigRational,
    pub load_bytes: u64,
    pub all_exact: bool,
}

/// Library of `num_files` files, each `F_s` subfiles of `b` bytes, drawn
/// from [`Lcg`] file by file, subfile by subfile.
pub fn generate_library(num_files: usize, num_subfiles: usize, subfile_bytes: usize, seed: u64) -> Vec<u8> {
    let mut rng = Lcg::new(seed);
    (0..num_files * num_subfiles * subfile_bytes).map(|_| rng.next_byte()).collect()
}

/// Runs placement and delivery on random files and decodes at every user.
///
/// Fails with [`CachingError::DecodeFailure`] if some participant of an
/// equation lacks another participant's subfile.
pub fn simulate<P: Placement + ?Sized>(placement: &P, plan: &DeliveryPlan, cfg: &SimulationConfig) -> Result<SimulationReport, CachingError> {
    let users = placement.num_users();
    let fs = placement.num_subfiles();
    let b = cfg.subfile_bytes;
    if plan.demands.len() != users {
        return Err(CachingError::IncompleteDemands { got: plan.demands.len(), users });
    }
    for (user, &file) in plan.demands.iter().enumerate() {
        if file >= cfg.num_files {
            return Err(CachingError::UnknownFile { user, file, files: cfg.num_files });
        }
    }
    let library = generate_library(cfg.num_files, fs, b, cfg.seed);
    let chunk = |file: usize, sub: usize| &library[(file * fs + sub) * b..(file * fs + sub + 1) * b];

    let mut rebuilt = vec![vec![0u8; fs * b]; users];
    let mut have = vec![vec![false; fs]; users];
    let mut duplicates = vec![0usize; users];
    let mut recovered = vec![0usize; users];
    for (u, buf) in rebuilt.iter_mut().enumerate() {
        for j in 0..fs {
            if placement.caches(u, j) {
                buf[j * b..(j + 1) * b].copy_from_slice(chunk(plan.demands[u], j));
                have[u][j] = true;
            }
        }
    }

    let mut payload = vec![0u8; b];
    for (e, eq) in plan.equations.iter().enumerate() {
        payload.iter_mut().for_each(|x| *x = 0);
        for t in &eq.terms {
            xor_into(&mut payload, chunk(plan.demands[t.user], t.subfile));
        }
        for (i, t) in eq.terms.iter().enumerate() {
            let mut piece = payload.clone();
            for (m, other) in eq.terms.iter().enumerate() {
                if m == i {
                    continue;
                }
                if !placement.caches(t.user, other.subfile) {
                    return Err(CachingError::DecodeFailure { equation: e, user: t.user, subfile: other.subfile });
                }
                // The user reads its own cached copy of the other file's subfile.
                xor_into(&mut piece, chunk(plan.demands[other.user], other.subfile));
            }
            let slot = t.subfile;
            if have[t.user][slot] {
                duplicates[t.user] += 1;
                continue;
            }
            have[t.user][slot] = true;
            recovered[t.user] += 1;
            rebuilt[t.user][slot * b..(slot + 1) * b].copy_from_slice(&piece);
        }
    }

    let outcomes: Vec<UserOutcome> = (0..users)
        .map(|u| {
            let file = plan.demands[u];
            let uncached = (0..fs).filter(|&j| !placement.caches(u, j)).count();
            let missing = have[u].iter().filter(|&&h| !h).count();
            let complete = missing == 0 && recovered[u] == uncached;
            let exact = complete && rebuilt[u][..] == library[file * fs * b..(file + 1) * fs * b];
            UserOutcome { user: u, demanded_file: file, recovered: recovered[u], missing, duplicates: duplicates[u], complete, exact }
        })
        .collect();
    let all_exact = outcomes.iter().all(|o| o.exact);
    Ok(SimulationReport {
        users: outcomes,
        num_equations: plan.equations.len(),
        num_subfiles: fs,
        rate: BigRational::new(BigInt::from(plan.equations.len()), BigInt::from(fs.max(1))),
        load_bytes: (plan.equations.len() * b) as u64,
        all_exact,
    })
}

fn xor_into(dst: &mut [u8], src: &[u8]) {
    dst.iter_mut().zip(src).for_each(|(d, s)| *d ^= s);
}
