//! Orbits of `K = GL_n(R[[t]])` on finite sets of lattices.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::LatticeRep;
use crate::ringcore::{ChainRing, Laurent, LaurentMatrix};

fn primitive_root(p: u32) -> u32 {
    if p == 2 {
        return 1;
    }
    let mut fac = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            fac.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        fac.push(m);
    }
    (2..p)
        .find(|&g| fac.iter().all(|&f| crate::ringcore::ring_pow_mod(g, (p - 1) / f, p) != 1))
        .expect("primitive root exists")
}

fn elementary(n: usize, i: usize, j: usize, x: Laurent) -> LaurentMatrix {
    let mut g = LaurentMatrix::identity(n);
    g.set(i, j, x);
    g
}

/// Generators of the image of `K` in `GL_n(R[t]/t^M)`.
pub fn k_generators(ring: &ChainRing, n: usize, m: usize) -> Vec<LaurentMatrix> {
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for l in 0..ring.len() {
                for s in 0..m {
                    gens.push(elementary(n, i, j, Laurent::monomial(ring.pi_pow(l), s as i64)));
                }
            }
        }
    }
    let g = ring.from_int(primitive_root(ring.p()) as i64);
    gens.push(elementary(n, 0, 0, Laurent::constant(g)));
    for l in 0..ring.len() {
        for s in 0..m {
            if l == 0 && s == 0 {
                continue;
            }
            let u = Laurent::constant(1).add(&Laurent::monomial(ring.pi_pow(l), s as i64), ring);
            gens.push(elementary(n, 0, 0, u));
        }
    }
    if n > 1 {
        let perm = |sigma: &dyn Fn(usize) -> usize| {
            LaurentMatrix::from_fn(n, |i, j| if i == sigma(j) { Laurent::constant(1) } else { Laurent::zero() })
        };
        gens.push(perm(&|j| match j {
            0 => 1,
            1 => 0,
            k => k,
        }));
        if n > 2 {
            gens.push(perm(&|j| (j + 1) % n));
        }
    }
    gens
}

/// Partition of a `K`-stable point set into orbits.
#[derive(Clone, Debug)]
pub struct OrbitDecomposition {
    pub points: Vec<LatticeRep>,
    pub orbit_of: Vec<usize>,
    pub reps: Vec<LatticeRep>,
    pub sizes: Vec<usize>,
    pub level: usize,
    index: HashMap<LatticeRep, usize>,
}

impl OrbitDecomposition {
    pub fn orbit_count(&self) -> usize {
        self.reps.len()
    }

    pub fn orbit_id(&self, l: &LatticeRep) -> Option<usize> {
        self.index.get(l).map(|&i| self.orbit_of[i])
    }

    pub fn members(&self, orbit: usize) -> Vec<&LatticeRep> {
        self.points.iter().zip(&self.orbit_of).filter(|(_, o)| **o == orbit).map(|(p, _)| p).collect()
    }

    pub fn contains(&self, l: &LatticeRep) -> bool {
        self.index.contains_key(l)
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Smallest level through which `K` acts faithfully enough on the points.
pub fn required_level(points: &[LatticeRep]) -> usize {
    2 * points.iter().map(|p| p.window() as usize).max().unwrap_or(0) + 1
}

pub fn decompose(points: &[LatticeRep], ring: &ChainRing, n: usize, m: usize) -> Result<OrbitDecomposition> {
    let needed = required_level(points);
    if m < needed {
        return Err(Error::InsufficientTruncation { needed, got: m });
    }
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    let index: HashMap<LatticeRep, usize> = pts.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let gens = k_generators(ring, n, m);
    let edges: Vec<Vec<usize>> = pts
        .par_iter()
        .map(|p| {
            gens.iter()
                .map(|g| {
                    let img = p.act(g)?;
                    index.get(&img).copied().ok_or(Error::NotKStable)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut parent: Vec<usize> = (0..pts.len()).collect();
    for (i, es) in edges.iter().enumerate() {
        for &j in es {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    // points are sorted, so each root's smallest member comes first
    let mut root_to_orbit = HashMap::new();
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    let mut orbit_of = vec![0usize; pts.len()];
    for i in 0..pts.len() {
        let root = find(&mut parent, i);
        let id = *root_to_orbit.entry(root).or_insert_with(|| {
            reps.push(pts[i].clone());
            sizes.push(0);
            reps.len() - 1
        });
        orbit_of[i] = id;
        sizes[id] += 1;
    }
    Ok(OrbitDecomposition { points: pts, orbit_of, reps, sizes, level: m, index })
}

/// A change of uniformizer `t -> a_1 t + a_2 t^2 + ...` with `a_1` a unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoordinateChange {
    ring: ChainRing,
    coeffs: Vec<u32>,
}

impl CoordinateChange {
    pub fn new(ring: ChainRing, coeffs: Vec<u32>) -> Result<Self> {
        match coeffs.first() {
            Some(a1) if ring.is_unit(*a1) => Ok(CoordinateChange { ring, coeffs }),
            _ => Err(Error::NotAnAutomorphism),
        }
    }

    pub fn identity(ring: ChainRing) -> Self {
        CoordinateChange { ring, coeffs: vec![1] }
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    fn series(&self) -> Laurent {
        Laurent::from_coeffs(1, self.coeffs.clone())
    }

    fn substitute(&self, f: &Laurent, powers: &mut Vec<Laurent>) -> Laurent {
        let r = &self.ring;
        let mut acc = Laurent::zero();
        for (k, c) in f.terms() {
            assert!(k >= 0, "substitution into a polynomial");
            while powers.len() <= k as usize {
                let next = powers.last().unwrap().mul(&self.series(), r);
                powers.push(next);
            }
            acc = acc.add(&powers[k as usize].scale(c, r), r);
        }
        acc
    }

    /// Image of a lattice: substitute in an integral generator matrix, keep the
    /// power of `t` (the scalar `(sigma(t)/t)^s` lies in `K`).
    pub fn apply(&self, l: &LatticeRep) -> Result<LatticeRep> {
        if l.ring() != self.ring {
            return Err(Error::Dimension("coordinate change over a different ring".into()));
        }
        let s = l.shift();
        let g0 = l.to_generators().shift(s as i64);
        let mut powers = vec![Laurent::constant(1)];
        let n = g0.n();
        let mut h = LaurentMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                h.set(i, j, self.substitute(g0.get(i, j), &mut powers));
            }
        }
        LatticeRep::from_generators(&self.ring, &h.shift(-s as i64))
    }
}

pub fn apply_coordinate_automorphism(sigma: &CoordinateChange, l: &LatticeRep) -> Result<LatticeRep> {
    sigma.apply(l)
}

/// Transport of a whole decomposition; orbits map to orbits.
pub fn transport_decomposition(sigma: &CoordinateChange, d: &OrbitDecomposition, ring: &ChainRing, n: usize) -> Result<OrbitDecomposition> {
    let imgs = d.points.par_iter().map(|p| sigma.apply(p)).collect::<Result<Vec<_>>>()?;
    decompose(&imgs, ring, n, d.level)
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitRow {
    pub rep: String,
    pub size: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitTable {
    pub lambda: String,
    pub ring: String,
    pub orbit_count: usize,
    pub orbits: Vec<OrbitRow>,
}

impl OrbitTable {
    pub fn new(lambda: String, ring: &ChainRing, d: &OrbitDecomposition) -> Self {
        OrbitTable {
            lambda,
            ring: ring.to_string(),
            orbit_count: d.orbit_count(),
            orbits: d.reps.iter().zip(&d.sizes).map(|(r, s)| OrbitRow { rep: r.to_string(), size: *s }).collect(),
        }
    }
}
