use crate::codes::{window_columns, window_multiplier};

/// Bipartite graph between parallel classes and recovery sets.
///
/// Recovery set `a` is the window `{(a alpha + i) mod n : i < alpha}` for
/// `a < z n / alpha`. Every class lies in exactly `z` recovery sets; the
/// edges at a class are labelled `0..z` in increasing order of `a`, and the
/// label is the superscript that class's users recover through that set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecoverySetGraph {
    n: usize,
    alpha: usize,
    z: usize,
    sets: Vec<Vec<usize>>,
    labels: Vec<Vec<usize>>,
    incident: Vec<Vec<(usize, usize)>>,
}

pub fn recovery_set_graph(n: usize, alpha: usize) -> RecoverySetGraph {
    let z = window_multiplier(n, alpha);
    let sets: Vec<Vec<usize>> = (0..z * n / alpha).map(|a| window_columns(n, alpha, a)).collect();
    let mut incident = vec![Vec::with_capacity(z); n];
    let mut labels = Vec::with_capacity(sets.len());
    for (a, set) in sets.iter().enumerate() {
        let mut row = Vec::with_capacity(alpha);
        for &class in set {
            let label = incident[class].len();
            incident[class].push((a, label));
            row.push(label);
        }
        labels.push(row);
    }
    RecoverySetGraph { n, alpha, z, sets, labels, incident }
}

impl RecoverySetGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn z(&self) -> usize {
        self.z
    }

    /// Recovery sets, each listed in window order.
    pub fn sets(&self) -> &[Vec<usize>] {
        &self.sets
    }

    /// Edge labels of set `a`, aligned with `sets()[a]`.
    pub fn labels(&self, a: usize) -> &[usize] {
        &self.labels[a]
    }

    /// `(set, label)` pairs at `class`, by increasing set index.
    pub fn incident(&self, class: usize) -> &[(usize, usize)] {
        &self.incident[class]
    }

    /// Label of the edge between `class` and set `a`, if any.
    pub fn edge_label(&self, class: usize, a: usize) -> Option<usize> {
        self.incident[class].iter().find(|(s, _)| *s == a).map(|&(_, l)| l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_classes_windows_of_three() {
        let g = recovery_set_graph(4, 3);
        assert_eq!(g.sets(), &[vec![0, 1, 2], vec![3, 0, 1], vec![2, 3, 0], vec![1, 2, 3]]);
        assert_eq!(g.incident(1), &[(0, 0), (1, 1), (3, 2)]);
        assert_eq!(g.edge_label(3, 1), Some(0));
        assert_eq!(g.labels(1), &[0, 1, 1]);
    }

    #[test]
    fn every_class_has_degree_z() {
        for n in 1..=20 {
            for alpha in 1..=n {
                let g = recovery_set_graph(n, alpha);
                for c in 0..n {
                    let labels: Vec<usize> = g.incident(c).iter().map(|e| e.1).collect();
                    assert_eq!(labels, (0..g.z()).collect::<Vec<_>>(), "n={n} alpha={alpha} class={c}");
                }
            }
        }
    }
}
