//! Univariate polynomials over a [`ScalarDomain`], stored constant term first
//! with no trailing zeros (the zero polynomial is empty).

use crate::gf::ScalarDomain;

pub type Poly = Vec<u32>;

pub fn trim(mut p: Poly) -> Poly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

pub fn degree(p: &[u32]) -> Option<usize> {
    p.iter().rposition(|&c| c != 0)
}

pub fn mul(d: &ScalarDomain, a: &[u32], b: &[u32]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = d.add(out[i + j], d.mul(x, y));
        }
    }
    trim(out)
}

/// Quotient and remainder by a monic divisor.
pub fn divmod_monic(d: &ScalarDomain, a: &[u32], b: &[u32]) -> (Poly, Poly) {
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    debug_assert_eq!(b[db], 1, "divisor must be monic");
    let mut r = trim(a.to_vec());
    if r.len() <= db {
        return (vec![], r);
    }
    let mut quot = vec![0u32; r.len() - db];
    while r.len() > db {
        let lead = *r.last().expect("nonempty");
        let shift = r.len() - 1 - db;
        quot[shift] = lead;
        for (i, &c) in b.iter().enumerate() {
            r[shift + i] = d.sub(r[shift + i], d.mul(lead, c));
        }
        r = trim(r);
    }
    (trim(quot), r)
}

/// `X^n - 1`.
pub fn x_pow_minus_one(d: &ScalarDomain, n: usize) -> Poly {
    let mut p = vec![0u32; n + 1];
    p[0] = d.neg(1);
    p[n] = 1;
    p
}

/// The `index`-th monic polynomial of degree `deg` when the lower
/// coefficients are read as base-q digits, constant term most significant.
/// Enumerating `index` upwards visits coefficient vectors in lexicographic order.
pub fn monic_from_index(q: u32, deg: usize, mut index: u64) -> Poly {
    let mut p = vec![0u32; deg + 1];
    for i in (0..deg).rev() {
        p[i] = (index % q as u64) as u32;
        index /= q as u64;
    }
    p[deg] = 1;
    p
}

/// Factorisation of a monic polynomial over a field into monic irreducibles
/// with multiplicities, by trial division in increasing degree.
pub fn factor_monic(d: &ScalarDomain, f: &[u32]) -> Vec<(Poly, usize)> {
    assert!(d.is_field(), "factorisation needs a field");
    let q = d.order();
    let mut rest = trim(f.to_vec());
    let mut out = Vec::new();
    let mut deg = 1;
    while degree(&rest).unwrap_or(0) >= 2 * deg {
        let count = (q as u64).pow(deg as u32);
        for idx in 0..count {
            let g = monic_from_index(q, deg, idx);
            let mut mult = 0;
            loop {
                let (quot, rem) = divmod_monic(d, &rest, &g);
                if !rem.is_empty() {
                    break;
                }
                rest = quot;
                mult += 1;
            }
            if mult > 0 {
                out.push((g, mult));
            }
        }
        deg += 1;
    }
    if degree(&rest).unwrap_or(0) >= 1 {
        // What remains has no factor of degree <= deg/2, so it is irreducible.
        match out.iter_mut().find(|(g, _)| *g == rest) {
            Some((_, m)) => *m += 1,
            None => out.push((rest, 1)),
        }
    }
    out
}
