use super::{CachingError, DeliveryPlan, Equation, Placement, Term};
use num_bigint::BigInt;
use num_rational::BigRational;

/// `Δ x F_s` matrix with `S(i, j) = t` when user `t - 1` recovers subfile `j`
/// from equation `i`, and `0` otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationSubfileMatrix {
    rows: usize,
    cols: usize,
    num_users: usize,
    data: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidityViolation {
    /// A user appears twice in one column.
    RepeatedInColumn { col: usize, user: u32, rows: (usize, usize) },
    /// A user appears twice in one row.
    RepeatedInRow { row: usize, user: u32, cols: (usize, usize) },
    /// `S(i1, j1) = S(i2, j2) = t` but one of `S(i1, j2)`, `S(i2, j1)` is nonzero.
    Crossing { user: u32, first: (usize, usize), second: (usize, usize) },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidityReport {
    pub violations: Vec<ValidityViolation>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl EquationSubfileMatrix {
    /// Entries are `0` or 1-based user numbers up to `num_users`.
    pub fn new(rows: usize, cols: usize, num_users: usize, data: Vec<u32>) -> Result<Self, CachingError> {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows * cols");
        if let Some(i) = data.iter().position(|&v| v as usize > num_users) {
            return Err(CachingError::EntryOutOfRange { row: i / cols, col: i % cols, value: data[i], users: num_users });
        }
        Ok(Self { rows, cols, num_users, data })
    }

    pub fn from_rows(num_users: usize, rows: &[Vec<u32>]) -> Result<Self, CachingError> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::new(rows.len(), cols, num_users, rows.concat())
    }

    /// One row per equation, one column per subfile.
    pub fn from_plan(plan: &DeliveryPlan) -> Self {
        let (rows, cols) = (plan.equations.len(), plan.num_subfiles);
        let mut data = vec![0u32; rows * cols];
        for (i, eq) in plan.equations.iter().enumerate() {
            for t in &eq.terms {
                let cell = &mut data[i * cols + t.subfile];
                debug_assert_eq!(*cell, 0, "two users recover one subfile in one equation");
                *cell = t.user as u32 + 1;
            }
        }
        Self { rows, cols, num_users: plan.num_users, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn num_users(&self) -> usize {
        self.num_users
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.data[r * self.cols..(r + 1) * self.cols].to_vec()).collect()
    }

    /// Matrix transpose: subfiles become equations and vice versa.
    pub fn transpose(&self) -> Self {
        let mut data = vec![0u32; self.data.len()];
        for r in 0..self.rows {
            for c in 0..self.cols {
                data[c * self.rows + r] = self.get(r, c);
            }
        }
        Self { rows: self.cols, cols: self.rows, num_users: self.num_users, data }
    }

    /// Swaps the roles of users and subfiles: `S'(i, t) = j + 1` iff `S(i, j) = t + 1`.
    /// Requires each user at most once per row.
    pub fn exchange_users_and_subfiles(&self) -> Self {
        let mut data = vec![0u32; self.rows * self.num_users];
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = self.get(r, c);
                if v != 0 {
                    data[r * self.num_users + (v as usize - 1)] = c as u32 + 1;
                }
            }
        }
        Self { rows: self.rows, cols: self.num_users, num_users: self.cols, data }
    }

    /// Checks the three validity conditions and lists every violation.
    pub fn verify_validity(&self) -> ValidityReport {
        let mut violations = Vec::new();
        let mut positions: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.num_users + 1];
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = self.get(r, c);
                if v != 0 {
                    positions[v as usize].push((r, c));
                }
            }
        }
        for (user, pos) in positions.iter().enumerate().skip(1) {
            let user = user as u32;
            for (x, &(i1, j1)) in pos.iter().enumerate() {
                for &(i2, j2) in &pos[x + 1..] {
                    if j1 == j2 {
                        violations.push(ValidityViolation::RepeatedInColumn { col: j1, user, rows: (i1, i2) });
                    } else if i1 == i2 {
                        violations.push(ValidityViolation::RepeatedInRow { row: i1, user, cols: (j1, j2) });
                    } else if self.get(i1, j2) != 0 || self.get(i2, j1) != 0 {
                        violations.push(ValidityViolation::Crossing { user, first: (i1, j1), second: (i2, j2) });
                    }
                }
            }
        }
        ValidityReport { violations }
    }
}

/// Placement read off an equation-subfile matrix: user `t` caches column `j`
/// iff `t` does not appear in column `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixScheme {
    num_users: usize,
    num_subfiles: usize,
    num_equations: usize,
    cached: Vec<bool>,
}

impl MatrixScheme {
    /// `M_t / N = L_t / F_s`, with `L_t` the number of columns without `t`.
    pub fn cache_fraction(&self, user: usize) -> BigRational {
        let l = (0..self.num_subfiles).filter(|&j| self.caches(user, j)).count();
        BigRational::new(BigInt::from(l), BigInt::from(self.num_subfiles))
    }

    /// `R = Δ / F_s`.
    pub fn rate(&self) -> BigRational {
        BigRational::new(BigInt::from(self.num_equations), BigInt::from(self.num_subfiles))
    }
}

impl Placement for MatrixScheme {
    fn num_users(&self) -> usize {
        self.num_users
    }

    fn num_subfiles(&self) -> usize {
        self.num_subfiles
    }

    fn caches(&self, user: usize, subfile: usize) -> bool {
        self.cached[user * self.num_subfiles + subfile]
    }
}

/// Placement and one all-but-one equation per row. The plan's demands
/// default to file 0 for everyone; see [`DeliveryPlan::with_demands`].
pub fn scheme_from_eq_subfile(s: &EquationSubfileMatrix) -> Result<(MatrixScheme, DeliveryPlan), CachingError> {
    let report = s.verify_validity();
    if !report.is_valid() {
        return Err(CachingError::InvalidEquationSubfile(report.violations.len()));
    }
    let (users, fs) = (s.num_users(), s.cols());
    let mut cached = vec![true; users * fs];
    let mut equations = Vec::with_capacity(s.rows());
    for r in 0..s.rows() {
        let mut terms = Vec::new();
        for c in 0..fs {
            let v = s.get(r, c);
            if v != 0 {
                let user = v as usize - 1;
                cached[user * fs + c] = false;
                terms.push(Term { user, subfile: c });
            }
        }
        equations.push(Equation { recovery_set: None, terms });
    }
    let scheme = MatrixScheme { num_users: users, num_subfiles: fs, num_equations: s.rows(), cached };
    let plan = DeliveryPlan { num_users: users, num_subfiles: fs, demands: vec![0; users], equations };
    Ok((scheme, plan))
}
