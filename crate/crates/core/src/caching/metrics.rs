use crate::codes::window_multiplier;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Parameters of a design-based scheme: `n` classes of `q` blocks on
/// `num_points` points (`q^k` for a linear code) with window width `alpha`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeParams {
    pub n: usize,
    pub q: usize,
    pub alpha: usize,
    pub num_points: BigUint,
}

/// One point of the memory/rate trade-off.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperatingPoint {
    pub users: u64,
    pub mem: BigRational,
    pub subpacketization: BigUint,
    pub rate: BigRational,
    /// `K (1 - M/N) / R`; `1 + K M / N` by convention when `R = 0`.
    pub gain: BigRational,
}

pub(crate) fn ratio(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}

impl OperatingPoint {
    pub fn new(users: u64, mem: BigRational, subpacketization: BigUint, rate: BigRational) -> Self {
        let uncoded = ratio(users, 1u32) * (BigRational::one() - &mem);
        let gain = if rate.is_zero() { BigRational::one() + ratio(users, 1u32) * &mem } else { uncoded / &rate };
        Self { users, mem, subpacketization, rate, gain }
    }
}

impl SchemeParams {
    pub fn new(n: usize, q: usize, alpha: usize, num_points: BigUint) -> Self {
        Self { n, q, alpha, num_points }
    }

    /// Linear `(n, k)` code over an alphabet of size `q`.
    pub fn from_code(n: usize, k: usize, q: usize, alpha: usize) -> Self {
        Self::new(n, q, alpha, BigUint::from(q).pow(k as u32))
    }

    pub fn z(&self) -> usize {
        window_multiplier(self.n, self.alpha)
    }

    /// `Δ = (q - 1) N z n / alpha`.
    pub fn num_equations(&self) -> BigUint {
        BigUint::from(self.q - 1) * &self.num_points * BigUint::from(self.z() * self.n) / BigUint::from(self.alpha)
    }

    /// `K = nq`, `M/N = 1/q`, `F_s = N z`, `R = (q - 1) n / alpha`; the gain is `alpha`.
    pub fn base_point(&self) -> OperatingPoint {
        OperatingPoint::new(
            (self.n * self.q) as u64,
            ratio(1u32, self.q),
            &self.num_points * BigUint::from(self.z()),
            ratio((self.q - 1) * self.n, self.alpha),
        )
    }

    /// The transposed equation-subfile matrix: `M/N = 1 - alpha/(nq)`,
    /// `F_s = Δ`, `R = alpha / ((q - 1) n)`.
    pub fn transposed_point(&self) -> OperatingPoint {
        OperatingPoint::new(
            (self.n * self.q) as u64,
            BigRational::one() - ratio(self.alpha, self.n * self.q),
            self.num_equations(),
            ratio(self.alpha, (self.q - 1) * self.n),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_five_binary_points() {
        let p = SchemeParams::from_code(9, 5, 2, 6);
        let base = p.base_point();
        assert_eq!(base.users, 18);
        assert_eq!(base.mem, ratio(1, 2));
        assert_eq!(base.rate, ratio(3, 2));
        assert_eq!(base.subpacketization, BigUint::from(64u32));
        let t = p.transposed_point();
        assert_eq!(t.mem, ratio(2, 3));
        assert_eq!(t.rate, ratio(2, 3));
        assert_eq!(t.subpacketization, BigUint::from(96u32));
    }

    #[test]
    fn gain_equals_alpha_at_base_point() {
        for (n, k, q) in [(4, 2, 3), (16, 15, 4), (12, 8, 5), (6, 3, 6)] {
            let p = SchemeParams::from_code(n, k, q, k + 1);
            assert_eq!(p.base_point().gain, ratio(k + 1, 1));
            assert_eq!(p.transposed_point().gain, ratio((q - 1) * n, 1));
        }
    }
}
