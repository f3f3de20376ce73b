use super::{window_multiplier, CodesError, GeneratorMatrix, Provenance};
use crate::gf::{DomainKind, Matrix};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Which square (or tall) submatrix of a window was examined.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Probe {
    /// The window minus its `position`-th column (`alpha = k + 1`).
    DeletedColumn { position: usize },
    /// All window columns (`alpha <= k`, field rank test).
    AllColumns,
    /// All window columns restricted to `rows`; `rows` is the first row
    /// subset with a unit determinant, or empty when none exists.
    RowSubset { rows: Vec<usize> },
    /// Condition matrix of the cyclic shortcut for deleted position `position`.
    Condition { position: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeVerdict {
    pub probe: Probe,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowVerdict {
    /// Window index `a`; the window starts at column `a * alpha mod n`.
    pub index: usize,
    pub columns: Vec<usize>,
    pub probes: Vec<ProbeVerdict>,
    pub ok: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMethod {
    Exhaustive,
    CyclicShortcut,
}

/// Per-window evidence for a `(k, alpha)`-CCP verdict.
///
/// An exhaustive certificate lists windows `0..z n / alpha` exactly once and
/// `satisfied` is the conjunction of their verdicts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CcpCertificate {
    pub alpha: usize,
    pub z: usize,
    pub method: CheckMethod,
    pub windows: Vec<WindowVerdict>,
    pub satisfied: bool,
}

impl CcpCertificate {
    /// Windows whose verdict is negative.
    pub fn failing_windows(&self) -> impl Iterator<Item = &WindowVerdict> {
        self.windows.iter().filter(|w| !w.ok)
    }
}

/// Columns of window `a`: `(a alpha + i) mod n` for `i < alpha`.
pub fn window_columns(n: usize, alpha: usize, a: usize) -> Vec<usize> {
    (0..alpha).map(|i| (a * alpha + i) % n).collect()
}

/// All `size`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, size: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = (size <= n).then(|| (0..size).collect());
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let c = cur.as_mut().expect("checked above");
        let mut i = size;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if c[i] < n - size + i {
                c[i] += 1;
                for j in i + 1..size {
                    c[j] = c[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    })
}

fn nonsingular(m: &Matrix) -> bool {
    m.is_invertible().expect("square by construction")
}

fn check_window(g: &GeneratorMatrix, alpha: usize, a: usize) -> WindowVerdict {
    let k = g.k();
    let columns = window_columns(g.n(), alpha, a);
    let sub = g.matrix().select_columns(&columns);
    let probes: Vec<ProbeVerdict> = if alpha == k + 1 {
        (0..alpha)
            .map(|pos| {
                let keep: Vec<usize> = (0..alpha).filter(|&i| i != pos).collect();
                ProbeVerdict { probe: Probe::DeletedColumn { position: pos }, ok: nonsingular(&sub.select_columns(&keep)) }
            })
            .collect()
    } else if g.domain().kind() == DomainKind::Field {
        let ok = sub.rank().expect("field") == alpha;
        vec![ProbeVerdict { probe: Probe::AllColumns, ok }]
    } else {
        let witness = combinations(k, alpha).find(|rows| sub.select_rows(rows).det_is_unit().expect("square"));
        vec![ProbeVerdict { ok: witness.is_some(), probe: Probe::RowSubset { rows: witness.unwrap_or_default() } }]
    };
    let ok = probes.iter().all(|p| p.ok);
    WindowVerdict { index: a, columns, probes, ok }
}

/// Exhaustive `(k, alpha)`-CCP check over every window.
pub fn check_ccp(g: &GeneratorMatrix, alpha: usize) -> Result<CcpCertificate, CodesError> {
    let (k, n) = (g.k(), g.n());
    if alpha == 0 || alpha > k + 1 {
        return Err(CodesError::InvalidAlpha { alpha, max: k + 1 });
    }
    let z = window_multiplier(n, alpha);
    let count = z * n / alpha;
    let windows: Vec<WindowVerdict> = (0..count).into_par_iter().map(|a| check_window(g, alpha, a)).collect();
    let satisfied = windows.iter().all(|w| w.ok);
    Ok(CcpCertificate { alpha, z, method: CheckMethod::Exhaustive, windows, satisfied })
}

/// Condition matrix for deleting position `j` (`0 < j < k`) from the window
/// starting at `n - floor(k/2) - 1` of a cyclic code with generator `g`
/// (degree `r = n - k`), with `g_i = 0` outside `0..=r`.
///
/// For `j <= floor(k/2)` it is the `j x j` matrix with entry `(a, b) = g_{r-1-a+b}`;
/// otherwise the `(k-j) x (k-j)` matrix with entry `(a, b) = g_{1-a+b}`.
/// The window minus position `j` is block triangular with this matrix as its
/// only block whose diagonal is not `g_0` or `g_r = 1`.
pub fn cyclic_condition_matrix(g: &GeneratorMatrix, gen_poly: &[u32], j: usize) -> Matrix {
    let k = g.k();
    let r = g.n() - k;
    let coef = |i: isize| -> u32 {
        if i < 0 || i as usize > r {
            0
        } else {
            gen_poly.get(i as usize).copied().unwrap_or(0)
        }
    };
    let (size, offset) = if j <= k / 2 { (j, r as isize - 1) } else { (k - j, 1) };
    let mut m = Matrix::zeros(g.domain(), size, size);
    for a in 0..size {
        for b in 0..size {
            m.set(a, b, coef(offset - a as isize + b as isize));
        }
    }
    m
}

/// `(k, k + 1)`-CCP check for a cyclic code through a single window.
///
/// All `k + 1`-windows of a cyclic code are equivalent under the cyclic
/// shift, so one window decides the property. That window is tested through
/// the condition matrices of [`cyclic_condition_matrix`]; the two end
/// deletions leave `k` consecutive columns, which are triangular with `g_0`
/// or `1` on the diagonal.
pub fn check_ccp_cyclic_shortcut(g: &GeneratorMatrix) -> Result<CcpCertificate, CodesError> {
    let Provenance::Cyclic { gen_poly } = g.provenance() else { return Err(CodesError::NotCyclic) };
    let (k, n) = (g.k(), g.n());
    let alpha = k + 1;
    let start = n - k / 2 - 1;
    let g0_unit = g.domain().is_unit(gen_poly[0]);
    let probes: Vec<ProbeVerdict> = (0..=k)
        .map(|j| {
            let ok = if j == 0 || j == k {
                g0_unit
            } else {
                g0_unit && nonsingular(&cyclic_condition_matrix(g, gen_poly, j))
            };
            ProbeVerdict { probe: Probe::Condition { position: j }, ok }
        })
        .collect();
    let ok = probes.iter().all(|p| p.ok);
    let window = WindowVerdict { index: 0, columns: (0..alpha).map(|i| (start + i) % n).collect(), probes, ok };
    Ok(CcpCertificate { alpha, z: window_multiplier(n, alpha), method: CheckMethod::CyclicShortcut, windows: vec![window], satisfied: ok })
}
