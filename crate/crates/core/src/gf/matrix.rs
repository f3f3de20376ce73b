use super::{DomainKind, GfError, ScalarDomain};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// Dense row-major matrix whose entries are canonical elements of `domain`.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
    domain: ScalarDomain,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.domain)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn new(domain: &ScalarDomain, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self, GfError> {
        if data.len() != rows * cols {
            return Err(GfError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        for &x in &data {
            domain.check(x)?;
        }
        Ok(Self { rows, cols, data, domain: domain.clone() })
    }

    pub fn from_rows(domain: &ScalarDomain, rows: &[Vec<u32>]) -> Result<Self, GfError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(GfError::DimensionMismatch("ragged rows".into()));
        }
        Self::new(domain, rows.len(), cols, rows.concat())
    }

    /// Builds a matrix from signed integers mapped into the domain.
    pub fn from_ints(domain: &ScalarDomain, rows: &[Vec<i64>]) -> Result<Self, GfError> {
        let mapped: Vec<Vec<u32>> = rows.iter().map(|r| r.iter().map(|&v| domain.from_int(v)).collect()).collect();
        Self::from_rows(domain, &mapped)
    }

    pub fn zeros(domain: &ScalarDomain, rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols], domain: domain.clone() }
    }

    pub fn identity(domain: &ScalarDomain, n: usize) -> Self {
        let mut m = Self::zeros(domain, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn domain(&self) -> &ScalarDomain {
        &self.domain
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    /// Panics if `v` is not canonical.
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        assert!(v < self.domain.order(), "non-canonical entry {v}");
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.domain, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for r in 0..self.rows {
            data.extend(cols.iter().map(|&c| self.get(r, c)));
        }
        Self { rows: self.rows, cols: cols.len(), data, domain: self.domain.clone() }
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        Self { rows: rows.len(), cols: self.cols, data, domain: self.domain.clone() }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Result<Self, GfError> {
        self.domain.ensure_same(&other.domain)?;
        if self.rows != other.rows {
            return Err(GfError::DimensionMismatch(format!("{} rows vs {} rows", self.rows, other.rows)));
        }
        let mut data = Vec::with_capacity(self.rows * (self.cols + other.cols));
        for r in 0..self.rows {
            data.extend_from_slice(self.row(r));
            data.extend_from_slice(other.row(r));
        }
        Ok(Self { rows: self.rows, cols: self.cols + other.cols, data, domain: self.domain.clone() })
    }

    pub fn mul(&self, other: &Matrix) -> Result<Self, GfError> {
        self.domain.ensure_same(&other.domain)?;
        if self.cols != other.rows {
            return Err(GfError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let d = &self.domain;
        let mut out = Self::zeros(d, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let idx = r * other.cols + c;
                    out.data[idx] = d.add(out.data[idx], d.mul(a, other.get(k, c)));
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn left_mul_vec(&self, v: &[u32]) -> Vec<u32> {
        let d = &self.domain;
        let mut out = vec![0u32; self.cols];
        for (r, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (c, o) in out.iter_mut().enumerate() {
                *o = d.add(*o, d.mul(a, self.get(r, c)));
            }
        }
        out
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Matrix) -> Result<Self, GfError> {
        self.domain.ensure_same(&other.domain)?;
        let d = &self.domain;
        let (rows, cols) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Self::zeros(d, rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.data[(i * other.rows + k) * cols + j * other.cols + l] = d.mul(a, other.get(k, l));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Rank over a field by fraction-free elimination; the pivot in each
    /// column is the first remaining row holding a nonzero entry.
    pub fn rank(&self) -> Result<usize, GfError> {
        if self.domain.kind() != DomainKind::Field {
            return Err(GfError::RingNotSupported(self.domain.to_string()));
        }
        let d = &self.domain;
        let mut a = self.data.clone();
        let cols = self.cols;
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..self.rows).find(|&r| a[r * cols + c] != 0) else { continue };
            if p != rank {
                for j in 0..cols {
                    a.swap(p * cols + j, rank * cols + j);
                }
            }
            let pivot = a[rank * cols + c];
            for r in rank + 1..self.rows {
                let e = a[r * cols + c];
                if e == 0 {
                    continue;
                }
                // row_r <- pivot * row_r - e * row_rank
                for j in c..cols {
                    let v = d.sub(d.mul(pivot, a[r * cols + j]), d.mul(e, a[rank * cols + j]));
                    a[r * cols + j] = v;
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        Ok(rank)
    }

    /// Determinant of a square matrix.
    ///
    /// Cofactor expansion up to 4x4. Larger rings and prime fields use
    /// Bareiss elimination over the integers, reduced at the end; larger
    /// extension fields use Gaussian elimination in the field.
    pub fn det(&self) -> Result<u32, GfError> {
        if self.rows != self.cols {
            return Err(GfError::NonSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        if n <= 4 {
            let idx: Vec<usize> = (0..n).collect();
            return Ok(self.cofactor(&idx, &idx));
        }
        if self.domain.degree() == 1 {
            Ok(self.det_bareiss())
        } else {
            Ok(self.det_gauss())
        }
    }

    /// Whether the determinant is a unit of the domain.
    pub fn det_is_unit(&self) -> Result<bool, GfError> {
        Ok(self.domain.is_unit(self.det()?))
    }

    /// Square and nonsingular: full rank over a field, unit determinant over a ring.
    pub fn is_invertible(&self) -> Result<bool, GfError> {
        if self.rows != self.cols {
            return Err(GfError::NonSquare { rows: self.rows, cols: self.cols });
        }
        match self.domain.kind() {
            DomainKind::Field => Ok(self.rank()? == self.rows),
            DomainKind::Ring => self.det_is_unit(),
        }
    }

    fn cofactor(&self, rows: &[usize], cols: &[usize]) -> u32 {
        let d = &self.domain;
        match rows.len() {
            0 => 1,
            1 => self.get(rows[0], cols[0]),
            _ => {
                let r0 = rows[0];
                let rest = &rows[1..];
                let mut acc = 0;
                for (i, &c) in cols.iter().enumerate() {
                    let a = self.get(r0, c);
                    if a == 0 {
                        continue;
                    }
                    let sub: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let term = d.mul(a, self.cofactor(rest, &sub));
                    acc = if i % 2 == 0 { d.add(acc, term) } else { d.sub(acc, term) };
                }
                acc
            }
        }
    }

    /// Integer Bareiss elimination on canonical representatives, reduced
    /// modulo the order. Valid for rings and prime fields.
    pub(crate) fn det_bareiss(&self) -> u32 {
        let n = self.rows;
        let mut a: Vec<BigInt> = self.data.iter().map(|&x| BigInt::from(x)).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n.saturating_sub(1) {
            if a[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else { return 0 };
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = v / &prev;
                }
            }
            prev = a[k * n + k].clone();
        }
        let det = if n == 0 { BigInt::one() } else { sign * &a[n * n - 1] };
        let q = BigInt::from(self.domain.order());
        let r = det.mod_floor(&q);
        debug_assert!(!r.is_negative());
        r.to_u32().expect("reduced below the order")
    }

    fn det_gauss(&self) -> u32 {
        let d = &self.domain;
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = 1;
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| a[r * n + c] != 0) else { return 0 };
            if p != c {
                for j in 0..n {
                    a.swap(p * n + j, c * n + j);
                }
                det = d.neg(det);
            }
            let pivot = a[c * n + c];
            det = d.mul(det, pivot);
            let inv = d.inv(pivot).expect("nonzero in a field");
            for r in c + 1..n {
                let f = d.mul(a[r * n + c], inv);
                if f == 0 {
                    continue;
                }
                for j in c..n {
                    a[r * n + j] = d.sub(a[r * n + j], d.mul(f, a[c * n + j]));
                }
            }
        }
        det
    }

    /// Some `x` with `self * x = b` over a field, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>, GfError> {
        self.domain.ensure_same(&b.domain)?;
        if self.domain.kind() != DomainKind::Field {
            return Err(GfError::RingNotSupported(self.domain.to_string()));
        }
        if b.rows != self.rows {
            return Err(GfError::DimensionMismatch(format!("{} equations, {} right-hand rows", self.rows, b.rows)));
        }
        let d = &self.domain;
        let aug = self.hstack(b)?;
        let (rows, cols) = (aug.rows, aug.cols);
        let mut a = aug.data;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..rows).find(|&i| a[i * cols + c] != 0) else { continue };
            for j in 0..cols {
                a.swap(p * cols + j, r * cols + j);
            }
            let inv = d.inv(a[r * cols + c])?;
            for j in 0..cols {
                a[r * cols + j] = d.mul(a[r * cols + j], inv);
            }
            for i in 0..rows {
                let f = a[i * cols + c];
                if i == r || f == 0 {
                    continue;
                }
                for j in 0..cols {
                    a[i * cols + j] = d.sub(a[i * cols + j], d.mul(f, a[r * cols + j]));
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows {
                break;
            }
        }
        if (r..rows).any(|i| (self.cols..cols).any(|j| a[i * cols + j] != 0)) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(d, self.cols, b.cols);
        for (i, &c) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.data[c * b.cols + j] = a[i * cols + self.cols + j];
            }
        }
        Ok(Some(x))
    }
}
