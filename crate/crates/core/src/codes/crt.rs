use super::{build_cyclic, message_digits, CodesError, GeneratorMatrix, Provenance};
use crate::gf::{prime_power, ScalarDomain, MAX_ORDER};

/// A length-`n` code over Z/qZ with `q = q_1 .. q_d` (distinct primes) whose
/// codewords are the componentwise CRT lifts of codewords of cyclic codes
/// over each GF(q_i).
///
/// Codeword `j` is indexed in mixed radix: component 0 is most significant,
/// and inside each component the message digits follow the usual order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrtCyclicCode {
    n: usize,
    modulus: u32,
    components: Vec<GeneratorMatrix>,
}

/// Builds the CRT lift of the cyclic codes `(gen_poly_i, q_i)`, all of length `n`.
pub fn build_crt_cyclic(components: &[(Vec<u32>, u32)], n: usize) -> Result<CrtCyclicCode, CodesError> {
    if components.is_empty() {
        return Err(CodesError::ModuliNotCoprimePrimes);
    }
    let mut moduli: Vec<u32> = components.iter().map(|c| c.1).collect();
    let mut built = Vec::with_capacity(components.len());
    for (index, (gp, q)) in components.iter().enumerate() {
        if prime_power(*q) != Some((*q, 1)) {
            return Err(CodesError::ModuliNotCoprimePrimes);
        }
        let field = ScalarDomain::field(*q)?;
        let g = build_cyclic(n, gp, &field).map_err(|e| CodesError::ComponentInvalid { index, reason: e.to_string() })?;
        built.push(g);
    }
    moduli.sort_unstable();
    if moduli.windows(2).any(|w| w[0] == w[1]) {
        return Err(CodesError::ModuliNotCoprimePrimes);
    }
    let modulus = moduli.iter().try_fold(1u32, |acc, &m| acc.checked_mul(m).filter(|&p| p <= MAX_ORDER));
    let modulus = modulus.ok_or(CodesError::ModuliNotCoprimePrimes)?;
    Ok(CrtCyclicCode { n, modulus, components: built })
}

impl CrtCyclicCode {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Alphabet size `q = prod q_i`.
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn components(&self) -> &[GeneratorMatrix] {
        &self.components
    }

    /// Smallest component dimension; the code has the `(k_min, k_min)`-CCP
    /// whenever every component has it.
    pub fn k_min(&self) -> usize {
        self.components.iter().map(GeneratorMatrix::k).min().expect("nonempty")
    }

    /// `prod q_i^{k_i}`.
    pub fn num_codewords(&self) -> u64 {
        self.components.iter().map(|g| (g.q() as u64).pow(g.k() as u32)).product()
    }

    pub fn provenance(&self) -> Provenance {
        Provenance::CrtCyclic {
            moduli: self.components.iter().map(GeneratorMatrix::q).collect(),
            gen_polys: self
                .components
                .iter()
                .map(|g| match g.provenance() {
                    Provenance::Cyclic { gen_poly } => gen_poly.clone(),
                    _ => unreachable!("components are cyclic"),
                })
                .collect(),
        }
    }

    /// Codeword with index `j` over Z/qZ.
    pub fn codeword(&self, mut j: u64) -> Vec<u32> {
        let mut parts = Vec::with_capacity(self.components.len());
        for g in self.components.iter().rev() {
            let size = (g.q() as u64).pow(g.k() as u32);
            parts.push(g.encode(&message_digits(g.q(), g.k(), j % size)));
            j /= size;
        }
        parts.reverse();
        (0..self.n)
            .map(|i| {
                let residues: Vec<(u32, u32)> = self.components.iter().zip(&parts).map(|(g, c)| (c[i], g.q())).collect();
                crt_combine(&residues, self.modulus)
            })
            .collect()
    }
}

/// The unique `x mod prod m_i` with `x = r_i mod m_i`, for pairwise coprime `m_i`.
pub fn crt_combine(residues: &[(u32, u32)], modulus: u32) -> u32 {
    let big = modulus as u64;
    let mut x = 0u64;
    for &(r, m) in residues {
        let rest = big / m as u64;
        // rest^{-1} mod m by brute force; m <= 1024.
        let inv = (1..m as u64).find(|v| (rest % m as u64) * v % m as u64 == 1).unwrap_or(0);
        x = (x + r as u64 * rest % big * inv) % big;
    }
    x as u32
}
