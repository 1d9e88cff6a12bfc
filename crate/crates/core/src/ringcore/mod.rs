pub mod laurent;
pub mod linalg;
pub mod ring;

pub use laurent::{Laurent, LaurentMatrix};
pub use ring::{invert_elem, make_ring, ChainRing, Flavor, RingElem};

pub type Rational = num_rational::BigRational;

/// `q^{-e}` as an exact rational.
pub fn q_pow_neg(q: u32, e: u32) -> Rational {
    use num_bigint::BigInt;
    let den = num_traits::pow(BigInt::from(q), e as usize);
    Rational::new(BigInt::from(1), den)
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `b^e mod m` for small integers.
pub fn ring_pow_mod(b: u32, e: u32, m: u32) -> u32 {
    ring::mod_pow(b as u64, e as u64, m as u64) as u32
}
