//! Finite scalar domains and dense matrices over them.
//!
//! A [`ScalarDomain`] is either a finite field GF(p^m) or the residue ring
//! Z/qZ. Elements are canonical integer codes in `0..q`: residues for rings
//! and prime fields, base-p digit vectors (digit `i` is the coefficient of
//! `x^i`) for extension fields.

mod matrix;

pub use matrix::Matrix;

use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// Largest supported alphabet size.
pub const MAX_ORDER: u32 = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("{element} is not a unit in {domain}")]
    NotAUnit { element: u32, domain: String },
    #[error("operation requires a field, got {0}")]
    RingNotSupported(String),
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NonSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operands live in different domains: {0} vs {1}")]
    DomainMismatch(String, String),
    #[error("element {element} is not canonical for a domain of order {order}")]
    NonCanonical { element: u32, order: u32 },
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
}

/// Whether the domain is a field or a residue ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DomainKind {
    Field,
    Ring,
}

/// First monic irreducible of each degree, ordered by integer code.
/// Coefficients are listed constant term first.
const IRREDUCIBLES: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 0, 0, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 1, 0, 1, 1, 0, 0, 0, 1]),
    (2, 9, &[1, 1, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 10, &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1]),
    (3, 2, &[1, 0, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 1, 0, 0, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (3, 6, &[2, 1, 0, 0, 0, 0, 1]),
    (5, 2, &[2, 0, 1]),
    (5, 3, &[1, 1, 0, 1]),
    (5, 4, &[2, 0, 0, 0, 1]),
    (7, 2, &[1, 0, 1]),
    (7, 3, &[2, 0, 0, 1]),
    (11, 2, &[1, 0, 1]),
    (13, 2, &[2, 0, 1]),
    (17, 2, &[3, 0, 1]),
    (19, 2, &[1, 0, 1]),
    (23, 2, &[1, 0, 1]),
    (29, 2, &[2, 0, 1]),
    (31, 2, &[1, 0, 1]),
];

/// Multiplication tables for GF(p^m), m > 1.
#[derive(Debug)]
struct ExtTables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

#[derive(Debug)]
struct Inner {
    kind: DomainKind,
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    ext: Option<ExtTables>,
}

/// A finite field or residue ring of order at most [`MAX_ORDER`].
///
/// Cheap to clone. Two domains compare equal iff they have the same kind,
/// order and (for extension fields) the same defining polynomial.
#[derive(Clone)]
pub struct ScalarDomain(Arc<Inner>);

impl fmt::Debug for ScalarDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ScalarDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0.kind {
            DomainKind::Ring => write!(f, "Z/{}Z", self.0.q),
            DomainKind::Field if self.0.m == 1 => write!(f, "GF({})", self.0.p),
            DomainKind::Field => write!(f, "GF({}^{})", self.0.p, self.0.m),
        }
    }
}

impl PartialEq for ScalarDomain {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.kind == other.0.kind && self.0.q == other.0.q && self.0.modulus == other.0.modulus)
    }
}

impl Eq for ScalarDomain {}

/// Returns `(p, m)` when `q = p^m` for a prime `p`.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut r, mut m) = (q, 0);
    while r % p == 0 {
        r /= p;
        m += 1;
    }
    (r == 1).then_some((p, m))
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    num_integer::Integer::gcd(&a, &b)
}

impl ScalarDomain {
    /// The residue ring Z/qZ for `2 <= q <= 1024`.
    pub fn ring(q: u32) -> Result<Self, GfError> {
        if !(2..=MAX_ORDER).contains(&q) {
            return Err(GfError::InvalidDomain(format!("ring order {q} outside 2..=1024")));
        }
        Ok(Self(Arc::new(Inner { kind: DomainKind::Ring, p: q, m: 1, q, modulus: vec![], ext: None })))
    }

    /// GF(q) using the built-in defining polynomial.
    pub fn field(q: u32) -> Result<Self, GfError> {
        let (p, m) = prime_power(q)
            .ok_or_else(|| GfError::InvalidDomain(format!("{q} is not a prime power")))?;
        if q > MAX_ORDER {
            return Err(GfError::InvalidDomain(format!("field order {q} exceeds 1024")));
        }
        if m == 1 {
            return Ok(Self(Arc::new(Inner { kind: DomainKind::Field, p, m, q, modulus: vec![], ext: None })));
        }
        let modulus = IRREDUCIBLES
            .iter()
            .find(|(pp, mm, _)| *pp == p && *mm == m)
            .map(|(_, _, f)| f.to_vec())
            .expect("table covers every prime power up to 1024");
        Self::extension(p, m, modulus)
    }

    /// GF(p^m) defined by a caller-supplied monic polynomial (constant term first).
    pub fn extension(p: u32, m: u32, modulus: Vec<u32>) -> Result<Self, GfError> {
        if prime_power(p) != Some((p, 1)) || m < 1 {
            return Err(GfError::InvalidDomain(format!("{p} is not prime")));
        }
        let q = p.checked_pow(m).filter(|q| *q <= MAX_ORDER).ok_or_else(|| {
            GfError::InvalidDomain(format!("{p}^{m} exceeds 1024"))
        })?;
        if m == 1 {
            return Self::field(p);
        }
        if modulus.len() != m as usize + 1 || modulus[m as usize] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(GfError::InvalidDomain(format!(
                "defining polynomial must be monic of degree {m} over GF({p})"
            )));
        }
        if !is_irreducible(&modulus, p) {
            return Err(GfError::InvalidDomain(format!("{modulus:?} is reducible over GF({p})")));
        }
        let ext = build_tables(p, m, q, &modulus);
        Ok(Self(Arc::new(Inner { kind: DomainKind::Field, p, m, q, modulus, ext: Some(ext) })))
    }

    /// GF(q) when `q` is a prime power, Z/qZ otherwise.
    pub fn for_order(q: u32) -> Result<Self, GfError> {
        if prime_power(q).is_some() {
            Self::field(q)
        } else {
            Self::ring(q)
        }
    }

    pub fn kind(&self) -> DomainKind {
        self.0.kind
    }

    pub fn is_field(&self) -> bool {
        self.0.kind == DomainKind::Field
    }

    /// Number of elements.
    pub fn order(&self) -> u32 {
        self.0.q
    }

    /// Characteristic for fields, the modulus for rings.
    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    /// Extension degree (1 for prime fields and rings).
    pub fn degree(&self) -> u32 {
        self.0.m
    }

    /// Defining polynomial of an extension field, constant term first; empty otherwise.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn check(&self, x: u32) -> Result<u32, GfError> {
        if x < self.0.q {
            Ok(x)
        } else {
            Err(GfError::NonCanonical { element: x, order: self.0.q })
        }
    }

    /// Image of an integer under the canonical map Z -> domain.
    pub fn from_int(&self, v: i64) -> u32 {
        let p = self.0.p as i64;
        let r = v.rem_euclid(p) as u32;
        // In GF(p^m) the integer n maps to n * 1, which is the constant digit.
        r
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn one(&self) -> u32 {
        1
    }

    pub fn is_zero(&self, x: u32) -> bool {
        x == 0
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let inner = &*self.0;
        if inner.ext.is_none() {
            return (a + b) % inner.q;
        }
        if inner.p == 2 {
            return a ^ b;
        }
        digitwise(a, b, inner.p, inner.m, |x, y| (x + y) % inner.p)
    }

    pub fn neg(&self, a: u32) -> u32 {
        let inner = &*self.0;
        if inner.ext.is_none() {
            return (inner.q - a) % inner.q;
        }
        if inner.p == 2 {
            return a;
        }
        digitwise(a, 0, inner.p, inner.m, |x, _| (inner.p - x) % inner.p)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let inner = &*self.0;
        match &inner.ext {
            None => ((a as u64 * b as u64) % inner.q as u64) as u32,
            Some(_) if a == 0 || b == 0 => 0,
            Some(t) => {
                let e = (t.log[a as usize] + t.log[b as usize]) % (inner.q - 1);
                t.exp[e as usize]
            }
        }
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (a, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Nonzero in a field; coprime to the modulus in a ring.
    pub fn is_unit(&self, x: u32) -> bool {
        match self.0.kind {
            DomainKind::Field => x != 0,
            DomainKind::Ring => gcd(x as u64, self.0.q as u64) == 1,
        }
    }

    pub fn inv(&self, x: u32) -> Result<u32, GfError> {
        if !self.is_unit(x) {
            return Err(GfError::NotAUnit { element: x, domain: self.to_string() });
        }
        let inner = &*self.0;
        if let Some(t) = &inner.ext {
            let l = t.log[x as usize];
            return Ok(t.exp[((inner.q - 1 - l) % (inner.q - 1)) as usize]);
        }
        // Extended Euclid on (x, q).
        let (mut r0, mut r1) = (inner.q as i64, x as i64);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let qt = r0 / r1;
            (r0, r1) = (r1, r0 - qt * r1);
            (s0, s1) = (s1, s0 - qt * s1);
        }
        Ok(s0.rem_euclid(inner.q as i64) as u32)
    }

    /// All elements in canonical order `0..q`.
    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.0.q
    }

    /// Fails unless both domains are equal.
    pub fn ensure_same(&self, other: &ScalarDomain) -> Result<(), GfError> {
        if self == other {
            Ok(())
        } else {
            Err(GfError::DomainMismatch(self.to_string(), other.to_string()))
        }
    }
}

fn digitwise(a: u32, b: u32, p: u32, m: u32, f: impl Fn(u32, u32) -> u32) -> u32 {
    let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
    for _ in 0..m {
        out += f(a % p, b % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

/// Remainder of `a` modulo the monic `b` over GF(p); both constant term first.
fn poly_rem_mod_p(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = r.pop().expect("nonempty");
        if lead != 0 {
            let off = r.len() - db;
            for (i, &c) in b[..db].iter().enumerate() {
                r[off + i] = (r[off + i] + p - (lead * c) % p) % p;
            }
        }
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut g: Vec<u32> = (0..d).map(|i| ((code / (p as u64).pow(i as u32)) % p as u64) as u32).collect();
            g.push(1);
            if poly_rem_mod_p(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn build_tables(p: u32, m: u32, q: u32, modulus: &[u32]) -> ExtTables {
    let mul_x_poly = |a: u32, b: u32| -> u32 {
        // Schoolbook product of digit vectors reduced by the modulus.
        let da: Vec<u32> = (0..m).map(|i| (a / p.pow(i)) % p).collect();
        let db: Vec<u32> = (0..m).map(|i| (b / p.pow(i)) % p).collect();
        let mut prod = vec![0u32; 2 * m as usize];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        let r = poly_rem_mod_p(&prod, modulus, p);
        r.iter().enumerate().map(|(i, &c)| c * p.pow(i as u32)).sum()
    };
    let order = q - 1;
    for g in 2..q {
        let mut exp = Vec::with_capacity(order as usize);
        let mut x = 1;
        let mut ok = true;
        for i in 0..order {
            if i > 0 && x == 1 {
                ok = false;
                break;
            }
            exp.push(x);
            x = mul_x_poly(x, g);
        }
        if ok && x == 1 {
            let mut log = vec![0u32; q as usize];
            for (i, &v) in exp.iter().enumerate() {
                log[v as usize] = i as u32;
            }
            return ExtTables { exp, log };
        }
    }
    unreachable!("the multiplicative group of a finite field is cyclic")
}
