use super::poly::{self, Poly};
use super::{check_ccp, CodesError, GeneratorMatrix, Provenance};
use crate::gf::{Matrix, ScalarDomain};

fn require_field(d: &ScalarDomain) -> Result<(), CodesError> {
    if d.is_field() {
        Ok(())
    } else {
        Err(CodesError::RequiresField(d.to_string()))
    }
}

/// Vandermonde generator on evaluation points `0, 1, .., n-1` (canonical
/// element codes): entry `(i, j)` is `x_j^i`. Any `k` columns are independent.
pub fn build_mds(n: usize, k: usize, domain: &ScalarDomain) -> Result<GeneratorMatrix, CodesError> {
    require_field(domain)?;
    if (domain.order() as usize) < n {
        return Err(CodesError::FieldTooSmall { q: domain.order(), need: n as u32 });
    }
    shape_check(k, n)?;
    let mut m = Matrix::zeros(domain, k, n);
    for j in 0..n {
        for i in 0..k {
            m.set(i, j, domain.pow(j as u32, i as u64));
        }
    }
    GeneratorMatrix::new(m, Provenance::Mds)
}

fn shape_check(k: usize, n: usize) -> Result<(), CodesError> {
    if k == 0 || k >= n {
        return Err(CodesError::ShapeMismatch(format!("need 1 <= k < n, got k = {k}, n = {n}")));
    }
    Ok(())
}

/// Banded generator of the cyclic code with generator polynomial `gen_poly`
/// (constant term first): row `i` holds the coefficients at columns `i..=i+n-k`.
pub fn build_cyclic(n: usize, gen_poly: &[u32], domain: &ScalarDomain) -> Result<GeneratorMatrix, CodesError> {
    for &c in gen_poly {
        domain.check(c)?;
    }
    let g = poly::trim(gen_poly.to_vec());
    let deg = g.len().checked_sub(1).ok_or(CodesError::NotMonic)?;
    if g[deg] != 1 {
        return Err(CodesError::NotMonic);
    }
    if g[0] == 0 {
        return Err(CodesError::ZeroConstantTerm);
    }
    if deg == 0 || deg >= n {
        return Err(CodesError::ShapeMismatch(format!("generator degree {deg} for length {n}")));
    }
    let (_, rem) = poly::divmod_monic(domain, &poly::x_pow_minus_one(domain, n), &g);
    if !rem.is_empty() {
        return Err(CodesError::NotADivisor { n });
    }
    let k = n - deg;
    let mut m = Matrix::zeros(domain, k, n);
    for i in 0..k {
        for (j, &c) in g.iter().enumerate() {
            m.set(i, i + j, c);
        }
    }
    GeneratorMatrix::new(m, Provenance::Cyclic { gen_poly: g })
}

/// Outcome of [`search_cyclic_generators`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicSearch {
    /// Monic divisors of `X^n - 1` of degree `n - k`, lexicographic by coefficient vector.
    pub generators: Vec<Poly>,
    /// Candidates examined.
    pub examined: u64,
    /// True when the limit stopped the search before it was exhaustive.
    pub inconclusive: bool,
}

/// Default bound on candidates examined by [`search_cyclic_generators`].
pub const DEFAULT_CYCLIC_LIMIT: u64 = 1_000_000;

/// All generator polynomials of `(n, k)` cyclic codes.
///
/// Over a field the candidates are products of the irreducible factors of
/// `X^n - 1`; over a ring every monic polynomial with nonzero constant term is
/// tried. Either way at most `limit` candidates are examined.
pub fn search_cyclic_generators(n: usize, k: usize, domain: &ScalarDomain, limit: u64) -> Result<CyclicSearch, CodesError> {
    shape_check(k, n)?;
    let deg = n - k;
    let target = poly::x_pow_minus_one(domain, n);
    let mut found = Vec::new();
    let mut examined = 0u64;
    let mut inconclusive = false;
    if domain.is_field() {
        let factors = poly::factor_monic(domain, &target);
        let mut stack: Vec<(usize, Poly, usize)> = vec![(0, vec![1], 0)];
        // Depth-first over exponent vectors, pruned by degree.
        while let Some((idx, acc, acc_deg)) = stack.pop() {
            if idx == factors.len() {
                examined += 1;
                if examined > limit {
                    inconclusive = true;
                    break;
                }
                if acc_deg == deg {
                    found.push(acc);
                }
                continue;
            }
            let (f, mult) = &factors[idx];
            let fdeg = f.len() - 1;
            let mut cur = acc;
            let mut cur_deg = acc_deg;
            for e in 0..=*mult {
                if cur_deg > deg {
                    break;
                }
                stack.push((idx + 1, cur.clone(), cur_deg));
                if e < *mult {
                    cur = poly::mul(domain, &cur, f);
                    cur_deg += fdeg;
                }
            }
        }
    } else {
        let q = domain.order() as u64;
        let total = (q - 1) * q.pow(deg as u32 - 1);
        let inv_nonzero_start = q.pow(deg as u32 - 1);
        // Index order is lexicographic with the constant term most significant;
        // skipping the first block skips the zero constant term.
        for idx in inv_nonzero_start..inv_nonzero_start + total {
            examined += 1;
            if examined > limit {
                inconclusive = true;
                break;
            }
            let g = poly::monic_from_index(domain.order(), deg, idx);
            if poly::divmod_monic(domain, &target, &g).1.is_empty() {
                found.push(g);
            }
        }
    }
    found.sort();
    found.dedup();
    Ok(CyclicSearch { generators: found, examined: examined.min(limit), inconclusive })
}

/// `[I_k | 1]`, the single parity check code of length `k + 1`.
pub fn build_spc(k: usize, domain: &ScalarDomain) -> Result<GeneratorMatrix, CodesError> {
    if k == 0 {
        return Err(CodesError::ShapeMismatch("k must be positive".into()));
    }
    let ones = Matrix::new(domain, k, 1, vec![1; k])?;
    let m = Matrix::identity(domain, k).hstack(&ones)?;
    GeneratorMatrix::new(m, Provenance::Spc)
}

/// `base ⊗ I_t`. The base must be a `z x alpha` matrix with the `(z, z)`-CCP;
/// the result then has the `(k, k)`-CCP with `k = zt`.
pub fn kron_identity(base: &GeneratorMatrix, t: usize) -> Result<GeneratorMatrix, CodesError> {
    if t == 0 {
        return Err(CodesError::ShapeMismatch("t must be positive".into()));
    }
    if !check_ccp(base, base.k())?.satisfied {
        return Err(CodesError::BaseNotCcp);
    }
    let m = base.matrix().kron(&Matrix::identity(base.domain(), t))?;
    GeneratorMatrix::new(m, Provenance::KronIdentity { t, base: Box::new(base.provenance().clone()) })
}

/// The `a x b` matrix whose first row is `[c1, c2, 0, ..]` and whose every
/// further row is the previous one shifted right by one place.
fn shifted_pair(domain: &ScalarDomain, a: usize, b: usize, c1: u32, c2: u32) -> Matrix {
    let mut m = Matrix::zeros(domain, a, b);
    for r in 0..a {
        if r < b {
            m.set(r, r, c1);
        }
        if r + 1 < b {
            m.set(r, r + 1, c2);
        }
    }
    m
}

fn place(dst: &mut Matrix, src: &Matrix, r0: usize, c0: usize) {
    for r in 0..src.rows() {
        for c in 0..src.cols() {
            dst.set(r0 + r, c0 + c, src.get(r, c));
        }
    }
}

fn scaled_identity(domain: &ScalarDomain, t: usize, s: u32) -> Matrix {
    let mut m = Matrix::zeros(domain, t, t);
    for i in 0..t {
        m.set(i, i, s);
    }
    m
}

/// Block Vandermonde construction with `n = t * alpha_cols`, `k + 1 = t * z`,
/// `gcd(z, alpha_cols) = 1` and `alpha_cols > z + 1`, over a field with
/// `q > alpha_cols`.
///
/// With `b` the `z x alpha_cols` Vandermonde matrix on the first
/// `alpha_cols` nonzero elements, the top `(z - 1) t` rows are the blocks
/// `b_ij I_t` for `i < z - 1` and the last `t - 1` rows are the blocks
/// `C(b_{z-1,j}, b_{z-1,j})` of shape `(t - 1) x t`. Satisfies the
/// `(k, k + 1)`-CCP.
pub fn build_block_vandermonde(t: usize, z: usize, alpha_cols: usize, domain: &ScalarDomain) -> Result<GeneratorMatrix, CodesError> {
    require_field(domain)?;
    if t == 0 || z == 0 || z >= alpha_cols || crate::gf::gcd(z as u64, alpha_cols as u64) != 1 {
        return Err(CodesError::ShapeMismatch(format!(
            "need t >= 1, 1 <= z < alpha_cols and gcd(z, alpha_cols) = 1; got t = {t}, z = {z}, alpha_cols = {alpha_cols}"
        )));
    }
    if (domain.order() as usize) <= alpha_cols {
        return Err(CodesError::FieldTooSmall { q: domain.order(), need: alpha_cols as u32 + 1 });
    }
    let k = t * z - 1;
    let n = t * alpha_cols;
    shape_check(k, n)?;
    let points: Vec<u32> = (1..=alpha_cols as u32).collect();
    let b = |i: usize, j: usize| domain.pow(points[j], i as u64);
    let mut m = Matrix::zeros(domain, k, n);
    for i in 0..z - 1 {
        for j in 0..alpha_cols {
            place(&mut m, &scaled_identity(domain, t, b(i, j)), i * t, j * t);
        }
    }
    for j in 0..alpha_cols {
        let v = b(z - 1, j);
        place(&mut m, &shifted_pair(domain, t - 1, t, v, v), (z - 1) * t, j * t);
    }
    GeneratorMatrix::new(m, Provenance::BlockVandermonde { t, z, alpha_cols })
}

/// Identity band layout shared by the field and ring variants:
///
/// ```text
/// [ I_t            0_{t x (t-1)}  1_t      b_1 I_t ]
/// [      ...        ...           ...      ...     ]
/// [          I_t   0_{t x (t-1)}  1_t  b_{z-1} I_t ]
/// [ 0  ..  0       I_{t-1}        1_{t-1}  C(c1, c2) ]
/// ```
///
/// giving `k = zt - 1` and `n = (z + 1) t`.
fn identity_band(t: usize, z: usize, bs: &[u32], c1: u32, c2: u32, domain: &ScalarDomain) -> Result<Matrix, CodesError> {
    let k = z * t - 1;
    let n = (z + 1) * t;
    let mut m = Matrix::zeros(domain, k, n);
    let ones_col = (z - 1) * t + (t - 1);
    let tail = ones_col + 1;
    for (i, &b) in bs.iter().enumerate().take(z - 1) {
        place(&mut m, &Matrix::identity(domain, t), i * t, i * t);
        for r in 0..t {
            m.set(i * t + r, ones_col, 1);
        }
        place(&mut m, &scaled_identity(domain, t, b), i * t, tail);
    }
    let r0 = (z - 1) * t;
    place(&mut m, &Matrix::identity(domain, t - 1), r0, (z - 1) * t);
    for r in 0..t - 1 {
        m.set(r0 + r, ones_col, 1);
    }
    place(&mut m, &shifted_pair(domain, t - 1, t, c1, c2), r0, tail);
    Ok(m)
}

/// Identity band construction over a field with `q >= z`: `k = zt - 1`,
/// `n = (z + 1) t`, `b_i` the first `z - 1` nonzero elements, `c = (1, -1)`.
/// Satisfies the `(k, k + 1)`-CCP.
pub fn build_identity_band(t: usize, z: usize, domain: &ScalarDomain) -> Result<GeneratorMatrix, CodesError> {
    require_field(domain)?;
    if t == 0 || z == 0 || (t == 1 && z == 1) {
        return Err(CodesError::ShapeMismatch(format!("need t, z >= 1 and zt >= 2; got t = {t}, z = {z}")));
    }
    if (domain.order() as usize) < z {
        return Err(CodesError::FieldTooSmall { q: domain.order(), need: z as u32 });
    }
    let bs: Vec<u32> = (1..z as u32).collect();
    let m = identity_band(t, z, &bs, 1, domain.neg(1), domain)?;
    GeneratorMatrix::new(m, Provenance::IdentityBand { t, z })
}

/// The `z = 2` identity band over any alphabet, including Z/qZ:
/// `[I_t 0 1_t I_t ; 0 I_{t-1} 1_{t-1} C(1, -1)]`, a `(2t - 1) x 3t` matrix
/// with the `(k, k + 1)`-CCP.
pub fn build_ring_band(t: usize, domain: &ScalarDomain) -> Result<GeneratorMatrix, CodesError> {
    if t == 0 {
        return Err(CodesError::ShapeMismatch("t must be positive".into()));
    }
    let m = identity_band(t, 2, &[1], 1, domain.neg(1), domain)?;
    GeneratorMatrix::new(m, Provenance::RingBand { t })
}

/// Prepends `s` copies of the first `k + 1` columns. Requires the
/// `(k, k + 1)`-CCP and preserves it.
pub fn extend_ccp(g: &GeneratorMatrix, s: usize) -> Result<GeneratorMatrix, CodesError> {
    extend_with_width(g, s, g.k() + 1)
}

/// Prepends `s` copies of the first `alpha` columns. Requires the
/// `(k, alpha)`-CCP with `alpha | n` and preserves it.
pub fn extend_ccp_alpha(g: &GeneratorMatrix, s: usize, alpha: usize) -> Result<GeneratorMatrix, CodesError> {
    if alpha == 0 || alpha > g.k() || !g.n().is_multiple_of(alpha) {
        return Err(CodesError::ShapeMismatch(format!("alpha = {alpha} must satisfy 1 <= alpha <= k and alpha | n")));
    }
    extend_with_width(g, s, alpha)
}

fn extend_with_width(g: &GeneratorMatrix, s: usize, width: usize) -> Result<GeneratorMatrix, CodesError> {
    if width > g.n() {
        return Err(CodesError::ShapeMismatch(format!("width {width} exceeds n = {}", g.n())));
    }
    if !check_ccp(g, width)?.satisfied {
        return Err(CodesError::BaseNotCcp);
    }
    if s == 0 {
        return Ok(g.clone());
    }
    let lead: Vec<usize> = (0..width).collect();
    let block = g.matrix().select_columns(&lead);
    let mut m = block.clone();
    for _ in 1..s {
        m = m.hstack(&block)?;
    }
    let m = m.hstack(g.matrix())?;
    GeneratorMatrix::new(m, Provenance::Extended { s, width, base: Box::new(g.provenance().clone()) })
}
