//! Shared oracles for the integration suites. Each check recomputes its
//! expectation from the codeword array, independently of the library's
//! placement and delivery code.

#![allow(dead_code)]

use codedcache::caching::{
    placement, simulate, CachingScheme, DeliveryPlan, EquationSubfileMatrix, Placement, SchemeParams, SimulationConfig,
};
use codedcache::codes::{check_ccp, GeneratorMatrix, Provenance};
use codedcache::design::{codeword_matrix, resolvable_design, CodewordMatrix};
use codedcache::gf::{Matrix, ScalarDomain};
use std::collections::BTreeSet;

/// Every generator `[I_k | P]` over `domain` of length `n` whose columns are all nonzero.
pub fn systematic_generators(domain: &ScalarDomain, n: usize, k: usize) -> Vec<GeneratorMatrix> {
    let q = domain.order() as u64;
    let free = k * (n - k);
    let total = q.pow(free as u32);
    (0..total)
        .filter_map(|mut idx| {
            let mut rows = vec![vec![0u32; n]; k];
            for (i, row) in rows.iter_mut().enumerate() {
                row[i] = 1;
            }
            for slot in 0..free {
                rows[slot / (n - k)][k + slot % (n - k)] = (idx % q) as u32;
                idx /= q;
            }
            let m = Matrix::from_rows(domain, &rows).ok()?;
            GeneratorMatrix::new(m, Provenance::UserSupplied).ok()
        })
        .collect()
}

/// `(generator, alpha)` for every systematic code with `q <= max_q` (fields only),
/// `n <= max_n`, `k <= max_k` and every certified `alpha` in `1..=k+1`.
pub fn certified_schemes(qs: &[u32], max_n: usize, max_k: usize) -> Vec<(GeneratorMatrix, usize)> {
    let mut out = Vec::new();
    for &q in qs {
        let domain = ScalarDomain::for_order(q).unwrap();
        for n in 2..=max_n {
            for k in 1..=max_k.min(n - 1) {
                for g in systematic_generators(&domain, n, k) {
                    for alpha in 1..=(k + 1).min(n) {
                        if check_ccp(&g, alpha).unwrap().satisfied {
                            out.push((g.clone(), alpha));
                        }
                    }
                }
            }
        }
    }
    out
}

/// Block `B_{class,label}` as a point bitmask, read straight from the codeword array.
pub fn block_masks(t: &CodewordMatrix) -> Vec<Vec<u64>> {
    assert!(t.num_codewords() <= 64, "bitmask oracle handles at most 64 points");
    (0..t.n())
        .map(|c| {
            let mut masks = vec![0u64; t.q() as usize];
            for p in 0..t.num_codewords() {
                masks[t.get(c, p) as usize] |= 1 << p;
            }
            masks
        })
        .collect()
}

/// Any `a' <= min(alpha, k)` blocks from distinct classes of one window meet in `q^(k - a')` points.
pub fn check_intersections(g: &GeneratorMatrix, alpha: usize, scheme: &CachingScheme) -> Result<u64, String> {
    let t = codeword_matrix(g).unwrap();
    let masks = block_masks(&t);
    let (q, k) = (g.q() as usize, g.k());
    let mut checked = 0u64;
    for (a, classes) in scheme.graph().sets().iter().enumerate() {
        for subset in 1u32..(1 << classes.len()) {
            let chosen: Vec<usize> = (0..classes.len()).filter(|i| subset >> i & 1 == 1).map(|i| classes[i]).collect();
            let size = chosen.len();
            if size > alpha.min(k) {
                continue;
            }
            let expected = q.pow((k - size) as u32) as u32;
            for mut tuple in 0..q.pow(size as u32) {
                let mut acc = u64::MAX;
                for &c in &chosen {
                    acc &= masks[c][tuple % q];
                    tuple /= q;
                }
                if acc.count_ones() != expected {
                    return Err(format!("window {a}, classes {chosen:?}: {} points, expected {expected}", acc.count_ones()));
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

/// Each participant caches every co-participant's subfile, and each user
/// recovers exactly its uncached subfiles once. Caches come from the codeword array.
pub fn check_coverage(t: &CodewordMatrix, z: usize, plan: &DeliveryPlan) -> Result<(), String> {
    let q = t.q() as usize;
    let caches = |user: usize, subfile: usize| t.get(user / q, subfile / z) as usize == user % q;
    let users = t.n() * q;
    let mut recovered: Vec<Vec<usize>> = vec![Vec::new(); users];
    for (i, eq) in plan.equations.iter().enumerate() {
        for u in &eq.terms {
            if caches(u.user, u.subfile) {
                return Err(format!("equation {i}: user {} already caches subfile {}", u.user, u.subfile));
            }
            for v in &eq.terms {
                if v.user != u.user && !caches(u.user, v.subfile) {
                    return Err(format!("equation {i}: user {} cannot cancel subfile {}", u.user, v.subfile));
                }
            }
            recovered[u.user].push(u.subfile);
        }
    }
    for (user, got) in recovered.iter_mut().enumerate() {
        let n_got = got.len();
        let set: BTreeSet<usize> = got.drain(..).collect();
        let missing: BTreeSet<usize> = (0..t.num_codewords() * z).filter(|&j| !caches(user, j)).collect();
        if set.len() != n_got || set != missing {
            return Err(format!("user {user}: recovered {n_got} ({} distinct), missing {}", set.len(), missing.len()));
        }
    }
    Ok(())
}

/// Byte-level simulation for demand vector `d` with `n_files` files.
pub fn simulate_exact(scheme: &dyn Placement, plan: &DeliveryPlan, d: Vec<usize>, n_files: usize, seed: u64) -> Result<(), String> {
    let plan = plan.clone().with_demands(d.clone()).map_err(|e| e.to_string())?;
    let report = simulate(scheme, &plan, &SimulationConfig { num_files: n_files, subfile_bytes: 4, seed }).map_err(|e| e.to_string())?;
    if !report.all_exact || report.users.iter().any(|u| !u.complete || u.duplicates != 0) {
        return Err(format!("demands {d:?} not reconstructed"));
    }
    Ok(())
}

/// Demand vectors over two files: all of them when `users <= exhaustive_up_to`,
/// otherwise the all-zero vector and every unit vector. Each decoded value is an
/// affine function of the demand bits, so agreement on `0` and every `e_v`
/// implies agreement on all `2^K` vectors.
pub fn binary_demand_vectors(users: usize, exhaustive_up_to: usize) -> Vec<Vec<usize>> {
    if users <= exhaustive_up_to {
        (0..1usize << users).map(|m| (0..users).map(|u| m >> u & 1).collect()).collect()
    } else {
        std::iter::once(vec![0; users])
            .chain((0..users).map(|v| (0..users).map(|u| usize::from(u == v)).collect()))
            .collect()
    }
}

#[derive(Debug, Default, Clone, Copy)]
pub struct OracleStats {
    pub schemes: u64,
    pub intersections: u64,
    pub equations: u64,
    pub simulations: u64,
}

impl std::ops::Add for OracleStats {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self {
            schemes: self.schemes + o.schemes,
            intersections: self.intersections + o.intersections,
            equations: self.equations + o.equations,
            simulations: self.simulations + o.simulations,
        }
    }
}

/// Intersection cardinalities, coverage, the closed-form `Δ`, the validity
/// conditions on the equation-subfile matrix and its transpose, and byte-exact
/// decoding for every demand vector over at most two files.
pub fn check_scheme(g: &GeneratorMatrix, alpha: usize, exhaustive_up_to: usize) -> Result<OracleStats, String> {
    let t = codeword_matrix(g).unwrap();
    let scheme = placement(resolvable_design(&t).unwrap(), alpha).map_err(|e| e.to_string())?;
    let intersections = check_intersections(g, alpha, &scheme)?;
    let users = scheme.num_users();
    let plan = scheme.delivery(&vec![0; users]).map_err(|e| e.to_string())?;
    let params = SchemeParams::from_code(g.n(), g.k(), g.q() as usize, alpha);
    let delta = plan.equations.len();
    if num_bigint::BigUint::from(delta) != params.num_equations() {
        return Err(format!("Δ = {delta}, closed form {}", params.num_equations()));
    }
    check_coverage(&t, scheme.z(), &plan)?;
    let s = EquationSubfileMatrix::from_plan(&plan);
    if !s.verify_validity().is_valid() || !s.transpose().verify_validity().is_valid() {
        return Err("equation-subfile matrix or its transpose violates the validity conditions".into());
    }
    let mut simulations = 1;
    simulate_exact(&scheme, &plan, vec![0; users], 1, 7)?;
    for d in binary_demand_vectors(users, exhaustive_up_to) {
        simulate_exact(&scheme, &plan, d, 2, 11)?;
        simulations += 1;
    }
    Ok(OracleStats { schemes: 1, intersections, equations: delta as u64, simulations })
}
