use std::collections::BTreeSet;

use hecke_core::hecke::{check_biinvariance, commutator, commutator_trusted, convolve, convolve_trusted, find_noncommuting_pair, Distribution};
use hecke_core::lattice::{enumerate_schubert, enumerate_window, DominantCoweight, LatticeRep};
use hecke_core::orbits::{decompose, required_level, CoordinateChange, OrbitDecomposition};
use hecke_core::ringcore::{make_ring, ChainRing, Flavor, Laurent, LaurentMatrix, Rational};
use hecke_core::Error;
use num_traits::{One, Zero};
use proptest::prelude::*;

mod common;
use common::oracle_value;

fn lam(s: &str) -> DominantCoweight {
    s.parse().unwrap()
}

fn int(k: i64) -> Rational {
    Rational::from_integer(k.into())
}

fn closure_indicator(r: &ChainRing, s: &str) -> Distribution {
    Distribution::indicator(*r, 2, &enumerate_schubert(r, 2, &lam(s)).unwrap().points)
}

fn assert_matches_oracle(mu1: &Distribution, mu2: &Distribution, candidates: &[LatticeRep]) {
    let got = convolve_trusted(mu1, mu2).unwrap();
    let cands: BTreeSet<&LatticeRep> = candidates.iter().collect();
    assert!(got.support().all(|x| cands.contains(x)), "support leaves the candidate window");
    for x in candidates {
        assert_eq!(got.get(x), oracle_value(mu1, mu2, x), "value at {x}");
    }
}

fn decomposition(r: &ChainRing, w: u32) -> (Vec<LatticeRep>, OrbitDecomposition) {
    let pts = enumerate_window(r, 2, w).unwrap();
    let d = decompose(&pts, r, 2, required_level(&pts)).unwrap();
    (pts, d)
}

#[test]
fn unit_law_and_classical_square() {
    let r = make_ring(Flavor::EqualChar, 5, 1).unwrap();
    let one = closure_indicator(&r, "1,0");
    let unit = Distribution::delta(&LatticeRep::base(r, 2));
    assert_eq!(convolve(&unit, &one).unwrap(), one);
    assert_eq!(convolve(&one, &unit).unwrap(), one);
    let sq = convolve(&one, &one).unwrap();
    assert_eq!(sq.get(&LatticeRep::cocharacter(r, &[1, 1])), int(6));
    assert_eq!(sq.len(), 31);
    assert_eq!(sq.total_mass(), int(36));
    // T_{(1,0)}^2 = T_{(2,0)} + (q+1) T_{(1,1)}
    let expected = closure_indicator(&r, "2,0").add(&Distribution::delta(&LatticeRep::cocharacter(r, &[1, 1])).scale(&int(5)));
    assert_eq!(sq, expected);
}

#[test]
fn delta_off_fixed_point_is_not_invariant() {
    let r = make_ring(Flavor::EqualChar, 5, 1).unwrap();
    let p1 = enumerate_schubert(&r, 2, &lam("1,0")).unwrap();
    let d = decompose(&p1.points, &r, 2, 3).unwrap();
    let mu = Distribution::delta(&p1.points[0]);
    assert!(!check_biinvariance(&mu, &d).unwrap());
    assert_eq!(convolve(&mu, &mu), Err(Error::NotBiInvariant));
    let far = Distribution::delta(&LatticeRep::cocharacter(r, &[2, 0]));
    assert_eq!(check_biinvariance(&far, &d), Err(Error::SupportNotCovered));
}

#[test]
fn convolution_matches_brute_force() {
    for flavor in [Flavor::EqualChar, Flavor::MixedChar] {
        for len in [1, 2] {
            let r = make_ring(flavor, 3, len).unwrap();
            let (w1, d) = decomposition(&r, 1);
            let inds: Vec<Distribution> = (0..d.orbit_count()).map(|o| Distribution::orbit_indicator(r, 2, &d, o)).collect();
            let small: Vec<&Distribution> = inds.iter().filter(|m| m.len() <= 12).take(6).collect();
            let window2 = if len == 1 { Some(enumerate_window(&r, 2, 2).unwrap()) } else { None };
            for a in &small {
                for b in &small {
                    match &window2 {
                        Some(w2) => assert_matches_oracle(a, b, w2),
                        None => {
                            let mut cands: BTreeSet<LatticeRep> = convolve_trusted(a, b).unwrap().support().cloned().collect();
                            cands.extend(w1.iter().filter(|x| x.degree() == a.support().next().unwrap().degree() + b.support().next().unwrap().degree()).cloned());
                            let cands: Vec<LatticeRep> = cands.into_iter().collect();
                            assert_matches_oracle(a, b, &cands);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn algebra_laws() {
    let r = make_ring(Flavor::MixedChar, 5, 1).unwrap();
    let a = closure_indicator(&r, "1,0");
    let b = closure_indicator(&r, "0,-1");
    let c = Distribution::delta(&LatticeRep::cocharacter(r, &[1, 1]));
    let ab = convolve(&a, &b).unwrap();
    // T_{(1,0)} T_{(0,-1)} = T_{(1,-1)} + (q+1) T_0
    assert_eq!(ab.get(&LatticeRep::base(r, 2)), int(6));
    assert_eq!(ab.total_mass(), int(36));
    assert_eq!(convolve(&a, &b.add(&c)).unwrap(), ab.add(&convolve(&a, &c).unwrap()));
    assert_eq!(convolve(&a.scale(&int(3)), &b).unwrap(), ab.scale(&int(3)));
    assert!(commutator(&a, &b).unwrap().is_zero());
    assert!(commutator_trusted(&a, &c).unwrap().is_zero());
    // masses multiply: the total mass is a character on the algebra
    assert_eq!(ab.total_mass(), a.total_mass() * b.total_mass());
}

#[test]
fn witness_exists_at_level_two_only() {
    for flavor in [Flavor::EqualChar, Flavor::MixedChar] {
        let r1 = make_ring(flavor, 5, 1).unwrap();
        let (_, d1) = decomposition(&r1, 1);
        assert!(find_noncommuting_pair(&d1, &r1, 2).unwrap().is_none());
        let r2 = make_ring(flavor, 5, 2).unwrap();
        let (_, d2) = decomposition(&r2, 1);
        let w = find_noncommuting_pair(&d2, &r2, 2).unwrap().expect("a non-commuting pair");
        let mut sizes = [d2.sizes[w.orbit_a], d2.sizes[w.orbit_b]];
        sizes.sort();
        assert_eq!(sizes, [20, 30]);
        assert!(!w.commutator.is_zero());
        assert_eq!(w.commutator.total_mass(), Rational::zero());
        let a = Distribution::orbit_indicator(r2, 2, &d2, w.orbit_a);
        let b = Distribution::orbit_indicator(r2, 2, &d2, w.orbit_b);
        assert_eq!(commutator(&a, &b).unwrap(), w.commutator);
    }
}

#[test]
fn small_commutative_at_level_one() {
    let r = make_ring(Flavor::EqualChar, 3, 1).unwrap();
    let (_, d) = decomposition(&r, 2);
    let inds: Vec<Distribution> = (0..d.orbit_count()).map(|o| Distribution::orbit_indicator(r, 2, &d, o)).collect();
    for i in 0..inds.len() {
        for j in i + 1..inds.len() {
            assert!(commutator_trusted(&inds[i], &inds[j]).unwrap().is_zero(), "orbits {i}, {j}");
        }
    }
}

#[test]
fn json_is_sorted_and_exact() {
    let r = make_ring(Flavor::EqualChar, 5, 1).unwrap();
    let mu = closure_indicator(&r, "1,0").scale(&Rational::new(1.into(), 25.into()));
    let v = serde_json::to_value(mu.to_json()).unwrap();
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 6);
    assert_eq!(entries[0]["value_num"], 1);
    assert_eq!(entries[0]["value_den"], 25);
    let points: Vec<String> = entries.iter().map(|e| e["point"].as_str().unwrap().to_string()).collect();
    assert_eq!(points, mu.support().map(|l| l.to_string()).collect::<Vec<_>>());
}

fn orbits_level2() -> (ChainRing, OrbitDecomposition) {
    let r = make_ring(Flavor::MixedChar, 3, 1).unwrap();
    let (_, d) = decomposition(&r, 1);
    (r, d)
}

/// Direct double sum over arbitrary lifts `g_y k_y`, `g_z k_z`.
fn convolve_with_lifts(mu1: &Distribution, mu2: &Distribution, seed: &[u32]) -> Distribution {
    let r = mu1.ring();
    let k = |i: usize| {
        let c = |j: usize| seed[(i * 3 + j) % seed.len()] % r.size();
        let unit = if r.is_unit(c(2)) { c(2) } else { r.add(c(2), 1) };
        LaurentMatrix::from_fn(2, |a, b| match (a, b) {
            (0, 0) => Laurent::constant(unit),
            (0, 1) => Laurent::from_coeffs(0, vec![c(0), c(1)]),
            (1, 1) => Laurent::constant(1),
            _ => Laurent::zero(),
        })
    };
    let mut out = Distribution::zero(r, 2);
    for (i, (y, vy)) in mu1.entries().enumerate() {
        let gy = y.to_generators().mul(&k(i), &r);
        for (j, (z, vz)) in mu2.entries().enumerate() {
            let gz = z.to_generators().mul(&k(i + j + 1), &r);
            out.add_at(LatticeRep::from_generators(&r, &gy.mul(&gz, &r)).unwrap(), vy * vz);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn associativity_on_orbit_indicators(i in 0usize..100, j in 0usize..100, k in 0usize..100) {
        let (r, d) = orbits_level2();
        let n = d.orbit_count();
        let ind = |o: usize| Distribution::orbit_indicator(r, 2, &d, o % n);
        let (a, b, c) = (ind(i), ind(j), ind(k));
        let left = convolve_trusted(&convolve_trusted(&a, &b).unwrap(), &c).unwrap();
        let right = convolve_trusted(&a, &convolve_trusted(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn transport_commutes_with_convolution(i in 0usize..100, j in 0usize..100, a1 in 1u32..3, a2 in 0u32..9) {
        let r = make_ring(Flavor::EqualChar, 3, 2).unwrap();
        let (_, d) = decomposition(&r, 1);
        let n = d.orbit_count();
        let sigma = CoordinateChange::new(r, vec![a1, a2]).unwrap();
        let a = Distribution::orbit_indicator(r, 2, &d, i % n);
        let b = Distribution::orbit_indicator(r, 2, &d, j % n);
        prop_assume!(a.len() * b.len() <= 2000);
        let lhs = convolve_trusted(&a, &b).unwrap().transport(&sigma).unwrap();
        let rhs = convolve_trusted(&a.transport(&sigma).unwrap(), &b.transport(&sigma).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn unit_is_two_sided(i in 0usize..100) {
        let (r, d) = orbits_level2();
        let a = Distribution::orbit_indicator(r, 2, &d, i % d.orbit_count());
        let e = Distribution::delta(&LatticeRep::base(r, 2));
        prop_assert_eq!(&convolve_trusted(&a, &e).unwrap(), &a);
        prop_assert_eq!(&convolve_trusted(&e, &a).unwrap(), &a);
        prop_assert!(a.total_mass() > Rational::zero() || a.is_zero());
        prop_assert_eq!(convolve_trusted(&a, &e).unwrap().total_mass() * Rational::one(), a.total_mass());
    }

    #[test]
    fn convolution_is_independent_of_lifts(i in 0usize..100, j in 0usize..100, seed in prop::collection::vec(any::<u32>(), 5..12)) {
        let (r, d) = orbits_level2();
        let n = d.orbit_count();
        let a = Distribution::orbit_indicator(r, 2, &d, i % n);
        let b = Distribution::orbit_indicator(r, 2, &d, j % n);
        prop_assert_eq!(convolve_with_lifts(&a, &b, &seed), convolve_trusted(&a, &b).unwrap());
    }
}
