use hecke_core::ringcore::linalg::{affine_points, fp_rank, fp_solve, summand_echelon};
use hecke_core::ringcore::{make_ring, ChainRing, Flavor, Laurent, LaurentMatrix};
use hecke_core::Error;
use proptest::prelude::*;

fn mono(c: u32, k: i64) -> Laurent {
    Laurent::monomial(c, k)
}

/// Digits of an element of `F_p[x]/x^N` in the base-p code.
fn digits(p: u32, len: u32, a: u32) -> Vec<u32> {
    (0..len).map(|k| a / p.pow(k) % p).collect()
}

fn undigits(p: u32, d: &[u32]) -> u32 {
    d.iter().rev().fold(0, |acc, c| acc * p + c)
}

/// Schoolbook product in `F_p[x]/x^N`.
fn poly_mul_oracle(p: u32, len: u32, a: u32, b: u32) -> u32 {
    let (da, db) = (digits(p, len, a), digits(p, len, b));
    let mut out = vec![0u32; len as usize];
    for i in 0..len as usize {
        for j in 0..len as usize - i {
            out[i + j] = (out[i + j] + da[i] * db[j]) % p;
        }
    }
    undigits(p, &out)
}

fn ring_strategy() -> impl Strategy<Value = ChainRing> {
    (prop::sample::select(vec![2u32, 3, 5, 7]), 1u32..4, any::<bool>()).prop_map(|(p, len, mixed)| {
        make_ring(if mixed { Flavor::MixedChar } else { Flavor::EqualChar }, p, len).unwrap()
    })
}

#[test]
fn ring_strings_round_trip() {
    for s in ["Fp[x]/x^N:p=5,N=2", "Z/p^N:p=7,N=3"] {
        let r: ChainRing = s.parse().unwrap();
        assert_eq!(r.to_string(), s);
    }
    assert!("Q:p=5,N=2".parse::<ChainRing>().is_err());
    assert!("Z/p^N:p=4,N=2".parse::<ChainRing>().is_err());
}

#[test]
fn small_inverses() {
    let r = make_ring(Flavor::EqualChar, 5, 2).unwrap();
    // 1 + x has code 6; 1 - x = 1 + 4x has code 21
    assert_eq!(r.inv(6).unwrap(), 21);
    assert_eq!(r.inv(5), Err(Error::NotAUnit));
    let z = make_ring(Flavor::MixedChar, 5, 2).unwrap();
    assert_eq!(z.inv(7).unwrap(), 18);
    assert_eq!(make_ring(Flavor::EqualChar, 4, 1), Err(Error::NotPrime(4)));
    assert_eq!(make_ring(Flavor::EqualChar, 5, 0), Err(Error::BadLength(0)));
}

#[test]
fn pi_is_nilpotent_of_exact_order() {
    for flavor in [Flavor::EqualChar, Flavor::MixedChar] {
        let r = make_ring(flavor, 5, 3).unwrap();
        let pi = r.pi_pow(1);
        assert_ne!(r.pow(pi, 2), 0);
        assert_eq!(r.pow(pi, 3), 0);
    }
}

#[test]
fn element_parser() {
    let r = make_ring(Flavor::EqualChar, 5, 3).unwrap();
    assert_eq!(r.parse_elem("1").unwrap(), 1);
    assert_eq!(r.parse_elem("x").unwrap(), 5);
    assert_eq!(r.parse_elem("3 + 2*x^2").unwrap(), 3 + 2 * 25);
    assert!(r.parse_elem("y").is_err());
    let z = make_ring(Flavor::MixedChar, 5, 2).unwrap();
    assert_eq!(z.parse_elem("2 + x").unwrap(), 7);
}

#[test]
fn triangular_inverse() {
    let r = make_ring(Flavor::EqualChar, 5, 1).unwrap();
    let g = LaurentMatrix::from_fn(2, |i, j| match (i, j) {
        (0, 0) => mono(1, 1),
        (0, 1) | (1, 1) => mono(1, 0),
        _ => Laurent::zero(),
    });
    let inv = g.inverse(&r, 6).unwrap();
    assert_eq!(inv.get(0, 0).terms().collect::<Vec<_>>(), vec![(-1, 1)]);
    assert_eq!(inv.get(0, 1).terms().collect::<Vec<_>>(), vec![(-1, 4)]);
    assert!(inv.get(1, 0).is_zero());
    assert_eq!(inv.get(1, 1).terms().collect::<Vec<_>>(), vec![(0, 1)]);
    let id = g.mul(&inv, &r);
    for i in 0..2 {
        for j in 0..2 {
            let expect = if i == j { vec![(0, 1)] } else { vec![] };
            assert_eq!(id.get(i, j).terms().collect::<Vec<_>>(), expect);
        }
    }
}

#[test]
fn nilpotent_residue_is_not_invertible() {
    let r = make_ring(Flavor::EqualChar, 5, 2).unwrap();
    let g = LaurentMatrix::from_fn(2, |i, j| match (i, j) {
        (0, 0) => mono(1, 1),
        (1, 1) => mono(5, 0),
        _ => Laurent::zero(),
    });
    assert_eq!(g.inverse(&r, 4), Err(Error::NotInGroup));
    assert!(!g.is_group_valid(&r));
}

#[test]
fn inverse_with_nilpotent_tail_below_unit() {
    // (t - x)^{-1} = t^{-1} + x t^{-2} when x^2 = 0
    let r = make_ring(Flavor::EqualChar, 5, 2).unwrap();
    let f = Laurent::from_coeffs(0, vec![r.neg(5), 1]);
    let inv = f.inverse(&r, 3).unwrap();
    assert_eq!(inv.terms().collect::<Vec<_>>(), vec![(-2, 5), (-1, 1)]);
    assert_eq!(f.mul(&inv, &r).terms().collect::<Vec<_>>(), vec![(0, 1)]);
}

#[test]
fn echelon_allows_nilpotent_entries_before_pivot() {
    let r = make_ring(Flavor::MixedChar, 5, 2).unwrap();
    // span of (5, 1) in (Z/25)^2 is a summand with pivot in column 1
    let e = summand_echelon(&r, vec![vec![5, 1], vec![10, 2]], 2).unwrap();
    assert_eq!(e.pivots, vec![1]);
    assert_eq!(e.rows, vec![vec![5, 1]]);
    assert_eq!(summand_echelon(&r, vec![vec![5, 0]], 2), Err(Error::NotASummand));
}

#[test]
fn fp_solver_counts_solutions() {
    let a = vec![vec![1, 1, 0], vec![0, 0, 0]];
    let (part, ker) = fp_solve(5, &a, &[3, 0], 3).unwrap();
    assert_eq!((part[0] + part[1]) % 5, 3);
    assert_eq!(ker.len(), 2);
    assert_eq!(affine_points(5, &part, &ker).len(), 25);
    assert!(fp_solve(5, &a, &[3, 1], 3).is_none());
}

proptest! {
    #[test]
    fn arithmetic_matches_oracle(r in ring_strategy(), a in any::<u32>(), b in any::<u32>()) {
        let (a, b) = (a % r.size(), b % r.size());
        let (p, len) = (r.p(), r.len());
        match r.flavor() {
            Flavor::MixedChar => {
                let m = r.size() as u64;
                prop_assert_eq!(r.mul(a, b) as u64, a as u64 * b as u64 % m);
                prop_assert_eq!(r.add(a, b) as u64, (a as u64 + b as u64) % m);
            }
            Flavor::EqualChar => {
                prop_assert_eq!(r.mul(a, b), poly_mul_oracle(p, len, a, b));
                let s: Vec<u32> = digits(p, len, a).iter().zip(digits(p, len, b)).map(|(x, y)| (x + y) % p).collect();
                prop_assert_eq!(r.add(a, b), undigits(p, &s));
            }
        }
        prop_assert_eq!(r.add(r.sub(a, b), b), a);
        prop_assert_eq!(r.add(a, r.neg(a)), 0);
    }

    #[test]
    fn ring_axioms(r in ring_strategy(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let (a, b, c) = (a % r.size(), b % r.size(), c % r.size());
        prop_assert_eq!(r.mul(r.mul(a, b), c), r.mul(a, r.mul(b, c)));
        prop_assert_eq!(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)));
        prop_assert_eq!(r.mul(a, b), r.mul(b, a));
        prop_assert_eq!(r.valuation(r.mul(a, b)), (r.valuation(a) + r.valuation(b)).min(r.len()));
        if r.is_unit(a) {
            prop_assert_eq!(r.mul(a, r.inv(a).unwrap()), 1);
        } else {
            prop_assert!(r.inv(a).is_err());
        }
    }

    #[test]
    fn laurent_inverse_is_inverse(r in ring_strategy(), coef in prop::collection::vec(any::<u32>(), 1..5), lo in -3i64..3, unit in 0usize..4) {
        let mut coef: Vec<u32> = coef.into_iter().map(|c| c % r.size()).collect();
        let u = unit.min(coef.len() - 1);
        if !r.is_unit(coef[u]) {
            coef[u] = r.add(coef[u], 1);
        }
        let f = Laurent::from_coeffs(lo, coef);
        let g = f.inverse(&r, 6).unwrap();
        let one = f.mul(&g, &r);
        let known = one.prec().unwrap_or(6);
        prop_assert!(known > 0);
        for k in -12..known {
            prop_assert_eq!(one.coeff(k), (k == 0) as u32, "coefficient {}", k);
        }
    }

    #[test]
    fn det_is_multiplicative(r in ring_strategy(), a in prop::collection::vec(any::<u32>(), 8)) {
        let m = |off: usize| LaurentMatrix::from_fn(2, |i, j| Laurent::from_coeffs(0, vec![a[off + 2 * i + j] % r.size(), (i == j) as u32]));
        let (x, y) = (m(0), m(4));
        prop_assert_eq!(x.mul(&y, &r).det(&r), x.det(&r).mul(&y.det(&r), &r));
        let adj = x.adjugate(&r);
        let prod = x.mul(&adj, &r);
        let d = x.det(&r);
        prop_assert_eq!(prod.get(0, 0), &d);
        prop_assert_eq!(prod.get(1, 1), &d);
        prop_assert!(prod.get(0, 1).is_zero() && prod.get(1, 0).is_zero());
    }

    #[test]
    fn fp_solve_matches_brute_force(rows in prop::collection::vec(prop::collection::vec(0u32..3, 3), 1..3), b in prop::collection::vec(0u32..3, 2)) {
        let p = 3;
        let b = &b[..rows.len()];
        let count = (0..27u32)
            .filter(|code| {
                let x = [code % 3, code / 3 % 3, code / 9];
                rows.iter().zip(b).all(|(row, bi)| row.iter().zip(&x).map(|(a, x)| a * x).sum::<u32>() % p == *bi)
            })
            .count();
        match fp_solve(p, &rows, b, 3) {
            Some((part, ker)) => {
                prop_assert_eq!(affine_points(p, &part, &ker).len(), count);
                prop_assert_eq!(ker.len(), 3 - fp_rank(p, &rows, 3));
            }
            None => prop_assert_eq!(count, 0),
        }
    }
}
