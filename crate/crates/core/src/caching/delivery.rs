use super::{CachingError, CachingScheme, RecoverySetGraph};
use rayon::prelude::*;

/// User `user` recovers `subfile` of its demanded file from this term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub user: usize,
    pub subfile: usize,
}

/// XOR of one subfile per participating user; every participant caches
/// the other participants' subfiles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub recovery_set: Option<usize>,
    pub terms: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeliveryPlan {
    pub num_users: usize,
    pub num_subfiles: usize,
    pub demands: Vec<usize>,
    pub equations: Vec<Equation>,
}

impl DeliveryPlan {
    /// Same transmissions for another demand vector; the structure is demand independent.
    pub fn with_demands(mut self, demands: Vec<usize>) -> Result<Self, CachingError> {
        if demands.len() != self.num_users {
            return Err(CachingError::IncompleteDemands { got: demands.len(), users: self.num_users });
        }
        self.demands = demands;
        Ok(self)
    }
}

/// Delivery over every recovery set.
///
/// Within recovery set `S_a` (classes `c_0 .. c_{alpha-1}` in window order)
/// block tuples `(l_0, .., l_{alpha-1})` are visited in lexicographic order.
/// For each position `s`, the residual set is the points of
/// `∩_{j != s} B_{c_j, l_j}` outside `∩_j B_{c_j, l_j}`, sorted ascending.
/// Under the CCP all residual sets of a tuple have the same size `m`, and the
/// tuple emits `m` equations; the `t`-th pairs the `t`-th point of every
/// residual set, tagged with the edge label of its class in `S_a`.
///
/// For `alpha = k + 1` residual sets are singletons exactly when the full
/// intersection is empty, and empty otherwise.
pub fn generate_delivery(scheme: &CachingScheme, graph: &RecoverySetGraph, demands: &[usize]) -> Result<DeliveryPlan, CachingError> {
    let d = scheme.design();
    let users = d.num_blocks();
    if demands.len() != users {
        return Err(CachingError::IncompleteDemands { got: demands.len(), users });
    }
    let q = d.q();
    let z = scheme.z();
    let per_set: Vec<Result<Vec<Equation>, CachingError>> = graph
        .sets()
        .par_iter()
        .enumerate()
        .map(|(a, classes)| {
            let alpha = classes.len();
            let tuples = q.pow(alpha as u32);
            let place: Vec<usize> = (0..alpha).map(|u| q.pow((alpha - 1 - u) as u32)).collect();
            let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); tuples];
            for p in 0..d.num_points() {
                let key: usize = classes
                    .iter()
                    .zip(&place)
                    .map(|(&c, &w)| d.label(c, p).expect("resolvable design") as usize * w)
                    .sum();
                buckets[key].push(p);
            }
            let labels = graph.labels(a);
            let mut out = Vec::new();
            for key in 0..tuples {
                let digit = |u: usize| (key / place[u]) % q;
                let residual: Vec<Vec<usize>> = (0..alpha)
                    .map(|u| {
                        let base = key - digit(u) * place[u];
                        let mut pts: Vec<usize> =
                            (0..q).filter(|&x| x != digit(u)).flat_map(|x| buckets[base + x * place[u]].iter().copied()).collect();
                        pts.sort_unstable();
                        pts
                    })
                    .collect();
                let m = residual[0].len();
                if residual.iter().any(|r| r.len() != m) {
                    return Err(CachingError::NotCcp { recovery_set: a });
                }
                // The t-th equation reads column t across all residual sets.
                #[allow(clippy::needless_range_loop)]
                for t in 0..m {
                    let terms = (0..alpha)
                        .map(|u| super::Term {
                            user: d.block_index(classes[u], digit(u)),
                            subfile: residual[u][t] * z + labels[u],
                        })
                        .collect();
                    out.push(Equation { recovery_set: Some(a), terms });
                }
            }
            Ok(out)
        })
        .collect();
    let mut equations = Vec::new();
    for r in per_set {
        equations.extend(r?);
    }
    Ok(DeliveryPlan { num_users: users, num_subfiles: scheme.subpacketization(), demands: demands.to_vec(), equations })
}

/// Renders an equation as `W^s_{d_B,t} ⊕ ...` where `B` lists the user's block.
pub fn render_equation(scheme: &CachingScheme, eq: &Equation) -> String {
    let d = scheme.design();
    let parts: Vec<String> = eq
        .terms
        .iter()
        .map(|term| {
            let (class, label) = d.block_at(term.user);
            let block = d.block(class, label);
            let name = if d.num_points() <= 10 {
                block.iter().map(usize::to_string).collect::<String>()
            } else {
                format!("{{{}}}", block.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
            };
            let (point, sup) = scheme.subfile_parts(term.subfile);
            format!("W^{sup}_{{d_{name},{point}}}")
        })
        .collect();
    parts.join(" ⊕ ")
}
