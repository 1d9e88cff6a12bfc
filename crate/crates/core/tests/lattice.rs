use hecke_core::lattice::{
    enumerate_schubert, enumerate_window, fiber_counts, gr_membership, lift_fiber, smith_invariants, DominantCoweight, LatticeRep,
};
use hecke_core::ringcore::{make_ring, ChainRing, Flavor, Laurent, LaurentMatrix};
use proptest::prelude::*;

fn lam(s: &str) -> DominantCoweight {
    s.parse().unwrap()
}

fn poly(r: &ChainRing, c: &[u32]) -> Laurent {
    Laurent::from_coeffs(0, c.iter().map(|x| x % r.size()).collect())
}

/// A random element of `GL_2(R[t])` as a product of elementary matrices and a unit diagonal.
fn random_k(r: &ChainRing, seed: &[u32]) -> LaurentMatrix {
    let upper = LaurentMatrix::from_fn(2, |i, j| match (i, j) {
        (0, 1) => poly(r, &seed[0..3]),
        (i, j) if i == j => Laurent::constant(1),
        _ => Laurent::zero(),
    });
    let lower = LaurentMatrix::from_fn(2, |i, j| match (i, j) {
        (1, 0) => poly(r, &seed[3..6]),
        (i, j) if i == j => Laurent::constant(1),
        _ => Laurent::zero(),
    });
    let unit = |c: u32| if r.is_unit(c % r.size()) { c % r.size() } else { r.add(c % r.size(), 1) };
    let diag = LaurentMatrix::from_fn(2, |i, j| if i == j { Laurent::constant(unit(seed[6 + i])) } else { Laurent::zero() });
    upper.mul(&lower, r).mul(&diag, r)
}

/// `(vdet - vmin, vmin)` from the entry valuations of a basis over a field.
fn smith_oracle(r: &ChainRing, l: &LatticeRep) -> DominantCoweight {
    let g = l.to_generators();
    let vmin = g.entries().iter().filter_map(|x| x.val()).min().unwrap() as i32;
    let vdet = g.det(r).val().unwrap() as i32;
    DominantCoweight::new(vec![vdet - vmin, vmin]).unwrap()
}

#[test]
fn membership_examples() {
    let r = make_ring(Flavor::EqualChar, 5, 1).unwrap();
    assert!(gr_membership(&LatticeRep::base(r, 2), &lam("0,0")).unwrap());
    assert!(gr_membership(&LatticeRep::cocharacter(r, &[1, 0]), &lam("1,0")).unwrap());
    assert!(!gr_membership(&LatticeRep::cocharacter(r, &[1, 1]), &lam("1,0")).unwrap());
    assert!(gr_membership(&LatticeRep::cocharacter(r, &[1, 1]), &lam("2,0")).unwrap());
    assert!(gr_membership(&LatticeRep::cocharacter(r, &[-1, 0]), &lam("0,-1")).unwrap());
}

#[test]
fn projective_line_counts() {
    for flavor in [Flavor::EqualChar, Flavor::MixedChar] {
        for (len, count) in [(1, 6), (2, 30), (3, 150)] {
            let r = make_ring(flavor, 5, len).unwrap();
            assert_eq!(enumerate_schubert(&r, 2, &lam("1,0")).unwrap().points.len(), count);
        }
    }
}

#[test]
fn closure_and_window_counts() {
    for flavor in [Flavor::EqualChar, Flavor::MixedChar] {
        let r1 = make_ring(flavor, 5, 1).unwrap();
        let r2 = make_ring(flavor, 5, 2).unwrap();
        // q^2 + q + 1 over F_5
        assert_eq!(enumerate_schubert(&r1, 2, &lam("2,0")).unwrap().points.len(), 31);
        assert_eq!(enumerate_schubert(&r2, 2, &lam("2,0")).unwrap().points.len(), 875);
        // submodules of (F_5[t]/t^2)^2: 1 + 6 + 31 + 6 + 1
        assert_eq!(enumerate_window(&r1, 2, 1).unwrap().len(), 45);
        assert_eq!(enumerate_window(&r2, 2, 1).unwrap().len(), 1677);
    }
    let r = make_ring(Flavor::EqualChar, 3, 1).unwrap();
    // P^2(F_3)
    assert_eq!(enumerate_schubert(&r, 3, &lam("1,0,0")).unwrap().points.len(), 13);
}

#[test]
fn strata_of_the_closure() {
    let r = make_ring(Flavor::EqualChar, 5, 2).unwrap();
    let s = enumerate_schubert(&r, 2, &lam("2,0")).unwrap();
    let open = s.strata.iter().filter(|m| **m == lam("2,0")).count();
    let small = s.strata.iter().filter(|m| **m == lam("1,1")).count();
    assert_eq!((open, small), (750, 125));
}

#[test]
fn smith_on_diagonals() {
    let r = make_ring(Flavor::EqualChar, 5, 1).unwrap();
    assert_eq!(smith_invariants(&LatticeRep::cocharacter(r, &[0, 2])).unwrap(), lam("2,0"));
    assert_eq!(smith_invariants(&LatticeRep::cocharacter(r, &[1, 1])).unwrap(), lam("1,1"));
    assert_eq!(smith_invariants(&LatticeRep::cocharacter(r, &[-1, 3])).unwrap(), lam("3,-1"));
}

#[test]
fn smith_agrees_with_membership_and_oracle() {
    let r = make_ring(Flavor::EqualChar, 5, 1).unwrap();
    let shapes: Vec<DominantCoweight> = ["1,-1", "0,0", "1,0", "0,-1", "2,0", "1,1", "-1,-1", "0,-2"].iter().map(|s| lam(s)).collect();
    for l in enumerate_window(&r, 2, 1).unwrap() {
        let mu = smith_invariants(&l).unwrap();
        assert_eq!(mu, smith_oracle(&r, &l), "{l}");
        for shape in &shapes {
            let member = gr_membership(&l, shape).unwrap();
            let expected = mu.size() == shape.size() && shape.dominates(&mu);
            assert_eq!(member, expected, "{l} against {shape}");
        }
    }
}

#[test]
fn text_round_trip() {
    let r = make_ring(Flavor::MixedChar, 5, 2).unwrap();
    for l in enumerate_schubert(&r, 2, &lam("1,-1")).unwrap().points.iter().take(40) {
        assert_eq!(&l.to_string().parse::<LatticeRep>().unwrap(), l);
    }
    assert!("garbage".parse::<LatticeRep>().is_err());
}

#[test]
fn lifts_reduce_to_their_base() {
    let r = make_ring(Flavor::MixedChar, 3, 1).unwrap();
    let base = LatticeRep::cocharacter(r, &[1, 1]);
    let fiber = lift_fiber(&base, &lam("2,0"), 1).unwrap();
    assert!(fiber.iter().all(|x| x.reduce(1).unwrap() == base));
    let counts = fiber_counts(&base, &lam("2,0"), 2).unwrap();
    assert_eq!(counts[0], 1);
    assert_eq!(counts[1], fiber.len() as u64);
    // the whole closure over R_2 is the disjoint union of the fibers
    let r2 = r.with_len(2).unwrap();
    let total: usize = enumerate_schubert(&r, 2, &lam("2,0"))
        .unwrap()
        .points
        .iter()
        .map(|p| lift_fiber(p, &lam("2,0"), 1).unwrap().len())
        .sum();
    assert_eq!(total, enumerate_schubert(&r2, 2, &lam("2,0")).unwrap().points.len());
}

fn flavor_ring() -> impl Strategy<Value = ChainRing> {
    (any::<bool>(), prop::sample::select(vec![2u32, 3, 5]), 1u32..3)
        .prop_map(|(m, p, len)| make_ring(if m { Flavor::MixedChar } else { Flavor::EqualChar }, p, len).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_is_right_k_invariant(
        r in flavor_ring(),
        a in 0i32..3,
        b in 0i32..3,
        s1 in prop::collection::vec(any::<u32>(), 8),
        s2 in prop::collection::vec(any::<u32>(), 8),
        s3 in prop::collection::vec(any::<u32>(), 8),
    ) {
        let g = random_k(&r, &s1).mul(&LaurentMatrix::cocharacter(&[a, -b]), &r);
        let l = LatticeRep::from_generators(&r, &g).unwrap();
        let k = random_k(&r, &s2);
        prop_assert_eq!(&LatticeRep::from_generators(&r, &g.mul(&k, &r)).unwrap(), &l);
        prop_assert_eq!(&LatticeRep::from_generators(&r, &l.to_generators()).unwrap(), &l);
        prop_assert_eq!(&l.to_string().parse::<LatticeRep>().unwrap(), &l);
        let shape = DominantCoweight::new(if a >= -b { vec![a, -b] } else { vec![-b, a] }).unwrap();
        prop_assert_eq!(l.degree(), a - b);
        prop_assert!(gr_membership(&l, &shape).unwrap());
        let moved = l.act(&random_k(&r, &s3)).unwrap();
        prop_assert!(gr_membership(&moved, &shape).unwrap());
        prop_assert_eq!(smith_invariants(&l.residue()).unwrap(), shape);
    }
}
