//! Shared brute-force oracle for convolution.

use hecke_core::hecke::Distribution;
use hecke_core::lattice::LatticeRep;
use hecke_core::ringcore::{ChainRing, Laurent, LaurentMatrix, Rational};
use num_traits::Zero;

/// `M Lambda0` for a truncated matrix whose lattice contains `t^w Lambda0`: an
/// error in `t^{w+1}` entries is absorbed by `K`, so the known part suffices.
fn lattice_of_truncated(r: &ChainRing, m: &LaurentMatrix) -> LatticeRep {
    let exact = LaurentMatrix::from_fn(m.n(), |i, j| {
        let f = m.get(i, j);
        match f.val() {
            Some(lo) => Laurent::from_coeffs(lo, (lo..=f.top().unwrap()).map(|k| f.coeff(k)).collect()),
            None => Laurent::zero(),
        }
    });
    LatticeRep::from_generators(r, &exact).unwrap()
}

/// `sum_y mu1(y) mu2(g_y^{-1} x)` with a truncated series inverse of `g_y`.
pub fn oracle_value(mu1: &Distribution, mu2: &Distribution, x: &LatticeRep) -> Rational {
    let r = mu1.ring();
    let gx = x.to_generators();
    let mut acc = Rational::zero();
    for (y, v) in mu1.entries() {
        let w = (x.window() + y.window()) as i64;
        let inv = y.to_generators().inverse(&r, 2 * w + 4 + x.window() as i64).unwrap();
        let m = inv.mul(&gx, &r);
        assert!(m.prec().is_none_or(|p| p >= 2 * w + 4));
        acc += v * mu2.get(&lattice_of_truncated(&r, &m));
    }
    acc
}

