//! Resolvable designs read off the codeword array of a linear code.
//!
//! The codeword array `T` has one column per codeword and one row per code
//! coordinate. Points are codeword indices; row `i` partitions them into the
//! `q` blocks `B_{i,l} = {j : T_{i,j} = l}`, which form parallel class `i`.

use crate::codes::{message_digits, CrtCyclicCode, GeneratorMatrix};
use crate::gf::Matrix;
use thiserror::Error;

/// Largest codeword array this module materialises.
pub const MAX_POINTS: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DesignError {
    #[error("row {row}: symbol {label} occurs {count} times, expected {expected}")]
    RingConditionViolated { row: usize, label: u32, count: usize, expected: usize },
    #[error("{0} codewords exceed the materialisation limit")]
    TooLarge(u64),
}

/// `n x N` array of all codewords, column `j` being codeword number `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodewordMatrix {
    n: usize,
    q: u32,
    num_codewords: usize,
    data: Vec<u32>,
}

impl CodewordMatrix {
    fn from_fn(n: usize, q: u32, count: u64, mut word: impl FnMut(u64) -> Vec<u32>) -> Result<Self, DesignError> {
        if count > MAX_POINTS {
            return Err(DesignError::TooLarge(count));
        }
        let num = count as usize;
        let mut data = vec![0u32; n * num];
        for j in 0..num {
            for (i, v) in word(j as u64).into_iter().enumerate() {
                data[i * num + j] = v;
            }
        }
        Ok(Self { n, q, num_codewords: num, data })
    }

    /// Codeword array of `G`. Column `j` is `u G` where `u` holds the base-q
    /// digits of `j`, `u_0` most significant.
    pub fn from_generator(g: &GeneratorMatrix) -> Result<Self, DesignError> {
        Self::from_matrix(g.matrix())
    }

    /// Same enumeration for an arbitrary `k x n` matrix; no column conditions are assumed.
    pub fn from_matrix(m: &Matrix) -> Result<Self, DesignError> {
        let q = m.domain().order();
        let k = m.rows();
        let count = (q as u64).checked_pow(k as u32).unwrap_or(u64::MAX);
        Self::from_fn(m.cols(), q, count, |j| m.left_mul_vec(&message_digits(q, k, j)))
    }

    pub fn from_crt(c: &CrtCyclicCode) -> Result<Self, DesignError> {
        Self::from_fn(c.n(), c.modulus(), c.num_codewords(), |j| c.codeword(j))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn num_codewords(&self) -> usize {
        self.num_codewords
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.data[row * self.num_codewords + col]
    }

    pub fn row(&self, row: usize) -> &[u32] {
        &self.data[row * self.num_codewords..(row + 1) * self.num_codewords]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }
}

/// Shorthand for [`CodewordMatrix::from_generator`].
pub fn codeword_matrix(g: &GeneratorMatrix) -> Result<CodewordMatrix, DesignError> {
    CodewordMatrix::from_generator(g)
}

/// A design on points `0..num_points` with `n` parallel classes of `q` blocks.
///
/// Block `(i, l)` has flat index `i q + l`; blocks are ordered class-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvableDesign {
    num_points: usize,
    q: usize,
    classes: Vec<Vec<Vec<usize>>>,
    /// `label[i * num_points + p]`: block of class `i` containing `p`, or `u32::MAX`.
    label: Vec<u32>,
}

/// Reads the design off a codeword array.
///
/// Over Z/qZ every symbol must appear equally often in each row; this holds
/// for any generator matrix whose columns are coprime to `q`.
pub fn resolvable_design(t: &CodewordMatrix) -> Result<ResolvableDesign, DesignError> {
    let q = t.q() as usize;
    let num = t.num_codewords();
    let expected = num / q;
    let mut classes = Vec::with_capacity(t.n());
    for i in 0..t.n() {
        let mut blocks = vec![Vec::with_capacity(expected); q];
        for (p, &l) in t.row(i).iter().enumerate() {
            blocks[l as usize].push(p);
        }
        if let Some((l, b)) = blocks.iter().enumerate().find(|(_, b)| b.len() * q != num) {
            return Err(DesignError::RingConditionViolated { row: i, label: l as u32, count: b.len(), expected });
        }
        classes.push(blocks);
    }
    Ok(ResolvableDesign::from_classes(num, q, classes))
}

impl ResolvableDesign {
    /// Wraps explicit classes without validating them; see [`verify_resolvable`].
    pub fn from_classes(num_points: usize, q: usize, classes: Vec<Vec<Vec<usize>>>) -> Self {
        let mut label = vec![u32::MAX; classes.len() * num_points];
        for (i, class) in classes.iter().enumerate() {
            for (l, block) in class.iter().enumerate() {
                for &p in block {
                    if p < num_points {
                        label[i * num_points + p] = l as u32;
                    }
                }
            }
        }
        Self { num_points, q, classes, label }
    }

    /// Number of parallel classes (code length).
    pub fn n(&self) -> usize {
        self.classes.len()
    }

    /// Blocks per class (alphabet size).
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    pub fn num_blocks(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }

    pub fn classes(&self) -> &[Vec<Vec<usize>>] {
        &self.classes
    }

    pub fn block(&self, class: usize, label: usize) -> &[usize] {
        &self.classes[class][label]
    }

    /// Block of `class` containing `point`.
    pub fn label(&self, class: usize, point: usize) -> Option<u32> {
        let l = self.label[class * self.num_points + point];
        (l != u32::MAX).then_some(l)
    }

    pub fn contains(&self, class: usize, label: usize, point: usize) -> bool {
        self.label(class, point) == Some(label as u32)
    }

    pub fn block_index(&self, class: usize, label: usize) -> usize {
        class * self.q + label
    }

    pub fn block_at(&self, index: usize) -> (usize, usize) {
        (index / self.q, index % self.q)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DesignViolation {
    WrongClassSize { class: usize, blocks: usize },
    UnequalBlockSize { class: usize, label: usize, size: usize, expected: usize },
    PointOutOfRange { class: usize, label: usize, point: usize },
    Overlap { class: usize, point: usize },
    Uncovered { class: usize, point: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ResolvabilityReport {
    pub violations: Vec<DesignViolation>,
}

impl ResolvabilityReport {
    pub fn is_resolvable(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that every class partitions the point set into `q` blocks of size `N / q`.
pub fn verify_resolvable(d: &ResolvableDesign) -> ResolvabilityReport {
    let mut violations = Vec::new();
    let expected = d.num_points / d.q.max(1);
    for (i, class) in d.classes.iter().enumerate() {
        if class.len() != d.q {
            violations.push(DesignViolation::WrongClassSize { class: i, blocks: class.len() });
        }
        let mut seen = vec![0usize; d.num_points];
        for (l, block) in class.iter().enumerate() {
            if block.len() != expected {
                violations.push(DesignViolation::UnequalBlockSize { class: i, label: l, size: block.len(), expected });
            }
            for &p in block {
                match seen.get_mut(p) {
                    Some(c) => *c += 1,
                    None => violations.push(DesignViolation::PointOutOfRange { class: i, label: l, point: p }),
                }
            }
        }
        for (p, &c) in seen.iter().enumerate() {
            if c == 0 {
                violations.push(DesignViolation::Uncovered { class: i, point: p });
            } else if c > 1 {
                violations.push(DesignViolation::Overlap { class: i, point: p });
            }
        }
    }
    ResolvabilityReport { violations }
}

/// 0/1 point-by-block incidence matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Incidence {
    rows: usize,
    cols: usize,
    bits: Vec<u8>,
}

/// Points index rows, blocks index columns in class-major order.
pub fn incidence_matrix(d: &ResolvableDesign) -> Incidence {
    let cols = d.num_blocks();
    let mut bits = vec![0u8; d.num_points * cols];
    let mut c = 0;
    for class in &d.classes {
        for block in class {
            for &p in block {
                bits[p * cols + c] = 1;
            }
            c += 1;
        }
    }
    Incidence { rows: d.num_points, cols, bits }
}

impl Incidence {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.bits[r * self.cols + c]
    }

    /// Exchanges the roles of points and blocks.
    pub fn transpose(&self) -> Self {
        let mut bits = vec![0u8; self.bits.len()];
        for r in 0..self.rows {
            for c in 0..self.cols {
                bits[c * self.rows + r] = self.get(r, c);
            }
        }
        Incidence { rows: self.cols, cols: self.rows, bits }
    }

    /// Support of each column, in row order.
    pub fn column_supports(&self) -> Vec<Vec<usize>> {
        (0..self.cols).map(|c| (0..self.rows).filter(|&r| self.get(r, c) == 1).collect()).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for r in 0..self.rows {
            let line: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            s.push_str(&line.join(","));
            s.push('\n');
        }
        s
    }
}
