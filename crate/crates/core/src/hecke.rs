//! The big Hecke algebra: finitely supported `K`-invariant functions on `Gr(R)`.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{guard_limit, LatticeRep};
use crate::orbits::{k_generators, required_level, CoordinateChange, OrbitDecomposition};
use crate::ringcore::{ChainRing, LaurentMatrix, Rational};

/// A rational-valued function on `Gr(R)` with finite support, against counting
/// measure with `vol(K) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distribution {
    ring: ChainRing,
    n: usize,
    values: BTreeMap<LatticeRep, Rational>,
}

impl Distribution {
    pub fn zero(ring: ChainRing, n: usize) -> Self {
        Distribution { ring, n, values: BTreeMap::new() }
    }

    pub fn delta(l: &LatticeRep) -> Self {
        let mut d = Distribution::zero(l.ring(), l.n());
        d.add_at(l.clone(), Rational::one());
        d
    }

    /// `c` times the indicator of `points`.
    pub fn constant_on<'a>(ring: ChainRing, n: usize, points: impl IntoIterator<Item = &'a LatticeRep>, c: &Rational) -> Self {
        let mut d = Distribution::zero(ring, n);
        for p in points {
            d.add_at(p.clone(), c.clone());
        }
        d
    }

    pub fn indicator<'a>(ring: ChainRing, n: usize, points: impl IntoIterator<Item = &'a LatticeRep>) -> Self {
        Distribution::constant_on(ring, n, points, &Rational::one())
    }

    pub fn orbit_indicator(ring: ChainRing, n: usize, d: &OrbitDecomposition, orbit: usize) -> Self {
        Distribution::indicator(ring, n, d.members(orbit))
    }

    pub fn ring(&self) -> ChainRing {
        self.ring
    }
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_at(&mut self, l: LatticeRep, v: Rational) {
        if v.is_zero() {
            return;
        }
        match self.values.entry(l) {
            Entry::Vacant(e) => {
                e.insert(v);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += v;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn get(&self, l: &LatticeRep) -> Rational {
        self.values.get(l).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = &LatticeRep> {
        self.values.keys()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&LatticeRep, &Rational)> {
        self.values.iter()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn total_mass(&self) -> Rational {
        self.values.values().fold(Rational::zero(), |a, b| a + b)
    }

    /// Largest `|value|`.
    pub fn max_abs(&self) -> Rational {
        self.values.values().map(|v| v.abs()).max().unwrap_or_else(Rational::zero)
    }

    /// Support window: `t^w Lambda0 ⊆ L ⊆ t^{-w} Lambda0` on the support.
    pub fn window(&self) -> u32 {
        self.values.keys().map(|l| l.window()).max().unwrap_or(0)
    }

    pub fn sub(&self, o: &Distribution) -> Distribution {
        let mut d = self.clone();
        for (k, v) in &o.values {
            d.add_at(k.clone(), -v.clone());
        }
        d
    }

    pub fn add(&self, o: &Distribution) -> Distribution {
        let mut d = self.clone();
        for (k, v) in &o.values {
            d.add_at(k.clone(), v.clone());
        }
        d
    }

    pub fn scale(&self, c: &Rational) -> Distribution {
        let mut d = Distribution::zero(self.ring, self.n);
        for (k, v) in &self.values {
            d.add_at(k.clone(), v * c);
        }
        d
    }

    /// Push-forward along a coordinate change: `(sigma_* mu)(sigma x) = mu(x)`.
    pub fn transport(&self, sigma: &CoordinateChange) -> Result<Distribution> {
        let imgs = self.values.par_iter().map(|(k, v)| Ok((sigma.apply(k)?, v.clone()))).collect::<Result<Vec<_>>>()?;
        let mut d = Distribution::zero(self.ring, self.n);
        for (k, v) in imgs {
            d.add_at(k, v);
        }
        Ok(d)
    }

    /// Check invariance under the `K`-generators acting on the support.
    pub fn is_left_invariant(&self) -> Result<bool> {
        let pts: Vec<LatticeRep> = self.values.keys().cloned().collect();
        let gens = k_generators(&self.ring, self.n, required_level(&pts));
        let ok = self
            .values
            .par_iter()
            .map(|(k, v)| -> Result<bool> {
                for g in &gens {
                    if &self.get(&k.act(g)?) != v {
                        return Ok(false);
                    }
                }
                Ok(true)
            })
            .collect::<Result<Vec<bool>>>()?;
        Ok(ok.into_iter().all(|b| b))
    }

    pub fn to_json(&self) -> DistributionJson {
        DistributionJson {
            ring: self.ring.to_string(),
            n: self.n,
            entries: self
                .values
                .iter()
                .map(|(k, v)| EntryJson { point: k.to_string(), value_num: int_json(v.numer()), value_den: int_json(v.denom()) })
                .collect(),
        }
    }
}

/// Integers as JSON numbers when they fit in `i64`, decimal strings otherwise.
pub fn int_json(x: &BigInt) -> serde_json::Value {
    match i64::try_from(x.clone()) {
        Ok(v) => serde_json::Value::from(v),
        Err(_) => serde_json::Value::from(x.to_string()),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RationalJson {
    pub num: serde_json::Value,
    pub den: serde_json::Value,
}

impl From<&Rational> for RationalJson {
    fn from(r: &Rational) -> Self {
        RationalJson { num: int_json(r.numer()), den: int_json(r.denom()) }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryJson {
    pub point: String,
    pub value_num: serde_json::Value,
    pub value_den: serde_json::Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct DistributionJson {
    pub ring: String,
    pub n: usize,
    pub entries: Vec<EntryJson>,
}

fn convolve_inner(a: &Distribution, b: &Distribution) -> Result<Distribution> {
    if a.ring != b.ring || a.n != b.n {
        return Err(Error::Dimension("convolution of distributions over different groups".into()));
    }
    let work = a.len() as u128 * b.len() as u128;
    let limit = guard_limit().saturating_mul(10);
    if work > limit {
        return Err(Error::TooLarge { what: "convolution pairs", size: work, limit });
    }
    let r = a.ring;
    let zs: Vec<(LaurentMatrix, &Rational)> = b.values.iter().map(|(k, v)| (k.to_generators(), v)).collect();
    let ys: Vec<(LaurentMatrix, &Rational)> = a.values.iter().map(|(k, v)| (k.to_generators(), v)).collect();
    let partial: Vec<HashMap<LatticeRep, Rational>> = ys
        .par_iter()
        .map(|(gy, vy)| -> Result<HashMap<LatticeRep, Rational>> {
            let mut acc: HashMap<LatticeRep, Rational> = HashMap::new();
            for (gz, vz) in &zs {
                let x = LatticeRep::from_generators(&r, &gy.mul(gz, &r))?;
                *acc.entry(x).or_insert_with(Rational::zero) += *vz;
            }
            for v in acc.values_mut() {
                *v *= *vy;
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    let mut out = Distribution::zero(r, a.n);
    for m in partial {
        for (k, v) in m {
            out.add_at(k, v);
        }
    }
    Ok(out)
}

/// `(mu1 * mu2)(x) = sum_y mu1(y) mu2(y^{-1} x)`, summed as
/// `sum_{y, z} mu1(y) mu2(z) [x = y z]` over canonical lifts.
pub fn convolve(mu1: &Distribution, mu2: &Distribution) -> Result<Distribution> {
    if !mu1.is_left_invariant()? || !mu2.is_left_invariant()? {
        return Err(Error::NotBiInvariant);
    }
    convolve_inner(mu1, mu2)
}

/// Convolution for inputs already known to be invariant (orbit indicators,
/// outputs of the satake constructors).
pub fn convolve_trusted(mu1: &Distribution, mu2: &Distribution) -> Result<Distribution> {
    convolve_inner(mu1, mu2)
}

pub fn commutator(mu1: &Distribution, mu2: &Distribution) -> Result<Distribution> {
    Ok(convolve(mu1, mu2)?.sub(&convolve(mu2, mu1)?))
}

pub fn commutator_trusted(mu1: &Distribution, mu2: &Distribution) -> Result<Distribution> {
    Ok(convolve_trusted(mu1, mu2)?.sub(&convolve_trusted(mu2, mu1)?))
}

/// True iff `mu` is constant on every orbit of `d` (points of `d` outside the
/// support count as value zero).
pub fn check_biinvariance(mu: &Distribution, d: &OrbitDecomposition) -> Result<bool> {
    if mu.support().any(|l| !d.contains(l)) {
        return Err(Error::SupportNotCovered);
    }
    let mut seen: Vec<Option<Rational>> = vec![None; d.orbit_count()];
    for (p, &o) in d.points.iter().zip(&d.orbit_of) {
        let v = mu.get(p);
        match &seen[o] {
            None => seen[o] = Some(v),
            Some(w) if *w != v => return Ok(false),
            _ => {}
        }
    }
    Ok(true)
}

/// A non-commuting pair of orbit indicators.
#[derive(Clone, Debug)]
pub struct Witness {
    pub orbit_a: usize,
    pub orbit_b: usize,
    pub commutator: Distribution,
}

/// Search orbit pairs (smallest orbits first) for a nonzero commutator.
pub fn find_noncommuting_pair(d: &OrbitDecomposition, ring: &ChainRing, n: usize) -> Result<Option<Witness>> {
    let mut order: Vec<usize> = (0..d.orbit_count()).collect();
    order.sort_by_key(|&o| (d.sizes[o], o));
    let inds: Vec<Distribution> = (0..d.orbit_count()).map(|o| Distribution::orbit_indicator(*ring, n, d, o)).collect();
    let mut pairs = Vec::new();
    for (i, &a) in order.iter().enumerate() {
        for &b in &order[i + 1..] {
            pairs.push((a, b));
        }
    }
    pairs.sort_by_key(|&(a, b)| (d.sizes[a] * d.sizes[b], a.min(b), a.max(b)));
    for (a, b) in pairs {
        if d.sizes[a] == 1 && d.reps[a].rows().is_empty() || d.sizes[b] == 1 && d.reps[b].rows().is_empty() {
            // central translates t^k Lambda0 commute with everything
            continue;
        }
        let c = commutator_trusted(&inds[a], &inds[b])?;
        if !c.is_zero() {
            return Ok(Some(Witness { orbit_a: a, orbit_b: b, commutator: c }));
        }
    }
    Ok(None)
}
