//! The small Hecke elements `h^lam_N` as distributions on `Gr(R)`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hecke::{Distribution, RationalJson};
use crate::lattice::{enumerate_schubert, fiber_counts, DominantCoweight, LatticeRep};
use crate::orbits::{decompose, required_level, CoordinateChange};
use crate::ringcore::{q_pow_neg, ChainRing, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Mode {
    Exact,
    Resolution,
    Counting,
}

/// One stratum `{e(z) = e}` of the resolution above a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderStratum {
    pub e: u32,
    pub level: u32,
    pub count: u64,
    pub measure: Rational,
    pub weighted: Rational,
}

/// Certified geometric tail of a sequence of partial sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailCertificate {
    pub period: usize,
    pub offset: usize,
    pub ratio: Rational,
    pub limit: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolumeReport {
    pub point: LatticeRep,
    pub mode: Mode,
    pub value: Option<Rational>,
    pub counts: Vec<u64>,
    pub partial_sums: Vec<Rational>,
    pub ratios: Vec<Option<Rational>>,
    pub tail: Option<TailCertificate>,
    pub ladder: Vec<LadderStratum>,
}

impl VolumeReport {
    fn exact(point: LatticeRep, mode: Mode, value: Rational) -> Self {
        VolumeReport { point, mode, value: Some(value), counts: vec![], partial_sums: vec![], ratios: vec![], tail: None, ladder: vec![] }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rat = |r: &Rational| serde_json::to_value(RationalJson::from(r)).expect("serializable");
        serde_json::json!({
            "point": self.point.to_string(),
            "mode": self.mode,
            "value": self.value.as_ref().map(rat),
            "counts": self.counts,
            "partial_sums": self.partial_sums.iter().map(rat).collect::<Vec<_>>(),
            "ratios": self.ratios.iter().map(|r| r.as_ref().map(rat)).collect::<Vec<_>>(),
            "tail": self.tail.as_ref().map(|t| serde_json::json!({
                "period": t.period, "offset": t.offset, "ratio": rat(&t.ratio), "limit": rat(&t.limit)
            })),
            "ladder": self.ladder.iter().map(|s| serde_json::json!({
                "e": s.e, "level": s.level, "count": s.count, "measure": rat(&s.measure), "weighted": rat(&s.weighted)
            })).collect::<Vec<_>>(),
        })
    }
}

/// `d_lam = <lam, 2 rho>`, the dimension of `Gr_lam`.
pub fn weil_dimension(lam: &DominantCoweight) -> u32 {
    lam.dim()
}

/// `q^{-N d_lam}` on `Gr_lam(R)`; requires `lam` minuscule.
pub fn h_minuscule(lam: &DominantCoweight, ring: &ChainRing) -> Result<Distribution> {
    if !lam.is_minuscule() {
        return Err(Error::WrongMode(format!("{lam} is not minuscule")));
    }
    let set = enumerate_schubert(ring, lam.n(), lam)?;
    let v = q_pow_neg(ring.q(), ring.len() * weil_dimension(lam));
    Ok(Distribution::constant_on(*ring, lam.n(), &set.points, &v))
}

fn two_zero() -> DominantCoweight {
    DominantCoweight::new(vec![2, 0]).expect("dominant")
}

fn vertex(ring: &ChainRing) -> LatticeRep {
    LatticeRep::cocharacter(*ring, &[1, 1])
}

/// Image counts of `Z(R) -> Gr_{<=(2,0)}(R)`, where `Z` is the space of flags
/// `Lambda0 ⊇ L1 ⊇ L` with both steps of colength one.
pub fn resolution_pair_counts(ring: &ChainRing) -> Result<BTreeMap<LatticeRep, u64>> {
    let p1 = enumerate_schubert(ring, 2, &DominantCoweight::new(vec![1, 0])?)?.points;
    let gens: Vec<_> = p1.iter().map(|l| l.to_generators()).collect();
    let images: Vec<Vec<LatticeRep>> = gens
        .par_iter()
        .map(|g1| gens.iter().map(|g2| LatticeRep::from_generators(ring, &g1.mul(g2, ring))).collect())
        .collect::<Result<_>>()?;
    let mut out = BTreeMap::new();
    for x in images.into_iter().flatten() {
        *out.entry(x).or_insert(0u64) += 1;
    }
    Ok(out)
}

/// A polynomial in the chart coordinates `(a, b)`, as exponent pair -> coefficient.
type Poly2 = BTreeMap<(u32, u32), i64>;

fn poly(terms: &[((u32, u32), i64)]) -> Poly2 {
    terms.iter().copied().filter(|(_, c)| *c != 0).collect()
}

fn poly_mul(f: &Poly2, g: &Poly2) -> Poly2 {
    let mut out = Poly2::new();
    for (&(i, j), &c) in f {
        for (&(k, l), &d) in g {
            *out.entry((i + k, j + l)).or_insert(0) += c * d;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn poly_sub(f: &Poly2, g: &Poly2) -> Poly2 {
    let mut out = f.clone();
    for (&k, &c) in g {
        *out.entry(k).or_insert(0) -= c;
    }
    out.retain(|_, c| *c != 0);
    out
}

fn poly_diff(f: &Poly2, var: usize) -> Poly2 {
    let mut out = Poly2::new();
    for (&(i, j), &c) in f {
        let (e, m) = if var == 0 { (i, (i.saturating_sub(1), j)) } else { (j, (i, j.saturating_sub(1))) };
        if e > 0 {
            *out.entry(m).or_insert(0) += c * e as i64;
        }
    }
    out
}

fn ord_b(f: &Poly2) -> Option<u32> {
    f.keys().map(|&(_, j)| j).min()
}

/// The resolution chart near the exceptional curve.
///
/// With `g1 = [[t, a], [0, 1]]` and `g'' = [[1, 0], [b, t]]` the product
/// lattice is `(t - A) Lambda0` for `A = [[alpha, beta], [gamma, -alpha]]`
/// tracing out the cone `alpha^2 + beta gamma = 0`. `E` is `b = 0`.
pub struct ResolutionChart {
    pub alpha: Poly2,
    pub beta: Poly2,
    pub gamma: Poly2,
}

impl ResolutionChart {
    pub fn standard() -> Self {
        ResolutionChart {
            alpha: poly(&[((1, 1), -1)]),
            beta: poly(&[((2, 1), 1)]),
            gamma: poly(&[((0, 1), -1)]),
        }
    }

    /// `alpha^2 + beta gamma`, which must vanish identically.
    pub fn cone_equation(&self) -> Poly2 {
        let a2 = poly_mul(&self.alpha, &self.alpha);
        let bg = poly_mul(&self.beta, &self.gamma);
        poly_sub(&a2, &poly_sub(&Poly2::new(), &bg))
    }

    /// Order along `E` of the pullback of the residue form
    /// `d alpha ^ d gamma / gamma` on the cone.
    pub fn discrepancy(&self) -> Result<i64> {
        let jac = poly_sub(
            &poly_mul(&poly_diff(&self.alpha, 0), &poly_diff(&self.gamma, 1)),
            &poly_mul(&poly_diff(&self.alpha, 1), &poly_diff(&self.gamma, 0)),
        );
        match (ord_b(&jac), ord_b(&self.gamma)) {
            (Some(j), Some(g)) => Ok(j as i64 - g as i64),
            _ => Err(Error::Audit("degenerate resolution chart".into())),
        }
    }

    fn eval(f: &Poly2, a: u32, b: u32, r: &ChainRing) -> u32 {
        f.iter().fold(0, |acc, (&(i, j), &c)| r.add(acc, r.mul(r.from_int(c), r.mul(r.pow(a, i as u64), r.pow(b, j as u64)))))
    }

    /// Check the chart against lattice arithmetic at every `(a, b)` over `r`.
    pub fn audit(&self, r: &ChainRing) -> Result<bool> {
        use crate::ringcore::{Laurent, LaurentMatrix};
        if !self.cone_equation().is_empty() {
            return Ok(false);
        }
        for a in r.elements() {
            for b in r.elements() {
                let g1 = LaurentMatrix::from_fn(2, |i, j| match (i, j) {
                    (0, 0) => Laurent::monomial(1, 1),
                    (0, 1) => Laurent::constant(a),
                    (1, 1) => Laurent::constant(1),
                    _ => Laurent::zero(),
                });
                let g2 = LaurentMatrix::from_fn(2, |i, j| match (i, j) {
                    (0, 0) => Laurent::constant(1),
                    (1, 0) => Laurent::constant(b),
                    (1, 1) => Laurent::monomial(1, 1),
                    _ => Laurent::zero(),
                });
                let (al, be, ga) = (Self::eval(&self.alpha, a, b, r), Self::eval(&self.beta, a, b, r), Self::eval(&self.gamma, a, b, r));
                let m = LaurentMatrix::from_fn(2, |i, j| {
                    let c = match (i, j) {
                        (0, 0) => al,
                        (0, 1) => be,
                        (1, 0) => ga,
                        _ => r.neg(al),
                    };
                    let t = if i == j { Laurent::monomial(1, 1) } else { Laurent::zero() };
                    t.sub(&Laurent::constant(c), r)
                });
                if LatticeRep::from_generators(r, &g1.mul(&g2, r))? != LatticeRep::from_generators(r, &m)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Measures of the strata `e(z) = e` of the resolution over the vertex,
/// `e = N, N+1, N+2`, each counted at level `e + 1`.
pub fn vertex_ladder(ring: &ChainRing, m_d: i64) -> Result<Vec<LadderStratum>> {
    let q = ring.q();
    let n0 = ring.len();
    let mut out = Vec::new();
    for e in n0..n0 + 3 {
        let r = ring.with_len(e + 1)?;
        let p1 = enumerate_schubert(&r, 2, &DominantCoweight::new(vec![1, 0])?)?.points;
        let mut group: HashMap<LatticeRep, u64> = HashMap::new();
        for l in &p1 {
            *group.entry(l.reduce(e)?).or_insert(0) += 1;
        }
        let count: u64 = p1
            .par_iter()
            .map(|l1| -> Result<u64> {
                let t = LatticeRep::from_generators(&r, &l1.to_generators().adjugate(&r))?;
                Ok(group.get(&t.reduce(e)?).copied().unwrap_or(0) - 1)
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .sum();
        let measure = Rational::from_integer(BigInt::from(count)) * q_pow_neg(q, 2 * (e + 1));
        let weight = if m_d >= 0 { q_pow_neg(q, e * m_d as u32) } else { Rational::from_integer(num_traits::pow(BigInt::from(q), (e * (-m_d) as u32) as usize)) };
        out.push(LadderStratum { e, level: e + 1, count, weighted: &measure * weight, measure });
    }
    Ok(out)
}

/// Closed-form sum of a ladder whose consecutive ratios all equal `predicted`.
pub fn sum_ladder(ladder: &[LadderStratum], predicted: &Rational) -> Result<Rational> {
    if ladder.len() < 3 || ladder[0].weighted.is_zero() {
        return Err(Error::LadderNotGeometric("fewer than three nonzero strata".into()));
    }
    for w in ladder.windows(2) {
        if w[1].weighted != &w[0].weighted * predicted {
            return Err(Error::LadderNotGeometric(format!("ratio at e = {} differs from {predicted}", w[1].e)));
        }
    }
    Ok(&ladder[0].weighted / (Rational::one() - predicted))
}

/// Resolution-mode volumes at every point of `Gr_{<=(2,0)}(R)` for `GL_2`.
pub fn resolution_reports_gl2_20(ring: &ChainRing) -> Result<Vec<VolumeReport>> {
    let chart = ResolutionChart::standard();
    let m_d = chart.discrepancy()?;
    let q = ring.q();
    let n0 = ring.len();
    let pairs = resolution_pair_counts(ring)?;
    let set = enumerate_schubert(ring, 2, &two_zero())?;
    let ball = q_pow_neg(q, 2 * n0);
    let vtx = vertex(ring);
    let mut reports = Vec::with_capacity(set.points.len());
    for x in &set.points {
        let count = pairs.get(x).copied().unwrap_or(0);
        let direct = Rational::from_integer(BigInt::from(count)) * &ball;
        if *x == vtx {
            let ladder = vertex_ladder(ring, m_d)?;
            let ratio = if 1 + m_d >= 0 { q_pow_neg(q, (1 + m_d) as u32) } else { return Err(Error::LadderNotGeometric(format!("discrepancy {m_d}"))) };
            let value = sum_ladder(&ladder, &ratio)?;
            if m_d == 0 && value != direct {
                return Err(Error::Audit(format!("ladder {value} differs from direct count {direct}")));
            }
            reports.push(VolumeReport { ladder, ..VolumeReport::exact(x.clone(), Mode::Resolution, value) });
        } else {
            // single stratum e_x < N, determined at level N
            let e = (1..=n0).rev().find(|&k| x.reduce(k).map(|y| y == vtx.reduce(k).expect("reducible")).unwrap_or(false)).unwrap_or(0);
            let w = if e == 0 { Rational::one() } else { q_pow_neg(q, (e as i64 * m_d.max(0)) as u32) };
            let stratum = LadderStratum { e, level: n0, count, measure: direct.clone(), weighted: &direct * &w };
            reports.push(VolumeReport { ladder: vec![stratum.clone()], ..VolumeReport::exact(x.clone(), Mode::Resolution, stratum.weighted) });
        }
    }
    Ok(reports)
}

pub fn h_resolution_gl2_20(ring: &ChainRing) -> Result<Distribution> {
    let mut d = Distribution::zero(*ring, 2);
    for r in resolution_reports_gl2_20(ring)? {
        d.add_at(r.point, r.value.expect("resolution value"));
    }
    Ok(d)
}

/// `|Z(F_q)| q^{-2}`: the total volume of `Gr_{(2,0)}(O)`, independent of `N`.
pub fn whole_space_volume_gl2_20(ring: &ChainRing) -> Result<Rational> {
    let k = ring.residue_field();
    let pairs: u64 = resolution_pair_counts(&k)?.values().sum();
    Ok(Rational::from_integer(BigInt::from(pairs)) * q_pow_neg(k.q(), 2))
}

/// Certify a geometric tail in the differences `D_i = S_{i+1} - S_i`.
///
/// Stationary sequences (last three differences zero) converge to the last
/// term. Otherwise periods 1 and 2 are tried from offsets 0 and 1, requiring
/// `D_{i+P} = r D_i` on every available pair with some `D_i` nonzero.
pub fn certify_tail(partial: &[Rational], r: &Rational) -> Option<TailCertificate> {
    let d: Vec<Rational> = partial.windows(2).map(|w| &w[1] - &w[0]).collect();
    let last = partial.last()?.clone();
    if d.len() >= 3 && d[d.len() - 3..].iter().all(|x| x.is_zero()) {
        return Some(TailCertificate { period: 1, offset: d.len() - 3, ratio: Rational::zero(), limit: last });
    }
    for period in 1..=2usize {
        for offset in 0..=1usize {
            if d.len() < offset + period + 1 {
                continue;
            }
            let idx: Vec<usize> = (offset..d.len() - period).collect();
            let geometric = idx.iter().all(|&i| d[i + period] == r * &d[i]);
            let nonzero = idx.iter().any(|&i| !d[i].is_zero());
            if geometric && nonzero {
                let tail: Rational = d[d.len() - period..].iter().fold(Rational::zero(), |a, b| a + b);
                let limit = last + r / (Rational::one() - r) * tail;
                return Some(TailCertificate { period, offset, ratio: r.clone(), limit });
            }
        }
    }
    None
}

/// Normalized lift counts `S_j = C_j / q^{(N+j) d_lam}` at every point of
/// `Gr_{<=lam}(R)`, computed once per `K`-orbit.
pub fn h_counting(lam: &DominantCoweight, ring: &ChainRing, j_max: u32) -> Result<Vec<VolumeReport>> {
    let n = lam.n();
    let set = enumerate_schubert(ring, n, lam)?;
    let dec = decompose(&set.points, ring, n, required_level(&set.points))?;
    let d = weil_dimension(lam);
    let q = ring.q();
    let r = q_pow_neg(q, 1);
    let per_orbit: Vec<VolumeReport> = dec
        .reps
        .par_iter()
        .map(|x| -> Result<VolumeReport> {
            let counts = fiber_counts(x, lam, j_max)?;
            let partial: Vec<Rational> = counts
                .iter()
                .enumerate()
                .map(|(j, &c)| Rational::from_integer(BigInt::from(c)) * q_pow_neg(q, (ring.len() + j as u32) * d))
                .collect();
            let ratios = partial.windows(2).map(|w| if w[0].is_zero() { None } else { Some(&w[1] / &w[0]) }).collect();
            let tail = certify_tail(&partial, &r);
            Ok(VolumeReport {
                point: x.clone(),
                mode: Mode::Counting,
                value: tail.as_ref().map(|t| t.limit.clone()),
                counts,
                partial_sums: partial,
                ratios,
                tail,
                ladder: vec![],
            })
        })
        .collect::<Result<_>>()?;
    Ok(dec
        .points
        .iter()
        .zip(&dec.orbit_of)
        .map(|(p, &o)| VolumeReport { point: p.clone(), ..per_orbit[o].clone() })
        .collect())
}

/// `h^lam_N` by the exact mode available for `lam`.
pub fn h_element(lam: &DominantCoweight, ring: &ChainRing) -> Result<Distribution> {
    if lam.is_minuscule() {
        h_minuscule(lam, ring)
    } else if lam.parts() == [2, 0] {
        h_resolution_gl2_20(ring)
    } else {
        Err(Error::WrongMode(format!("no exact mode for {lam}")))
    }
}

/// The elements `h^lam_N` followed by their transports under each `sigma`.
pub fn small_algebra_generators(ring: &ChainRing, n: usize, lams: &[DominantCoweight], sigmas: &[CoordinateChange]) -> Result<Vec<Distribution>> {
    let mut out = Vec::new();
    for lam in lams {
        if lam.n() != n {
            return Err(Error::Dimension(format!("coweight {lam} for GL_{n}")));
        }
        out.push(h_element(lam, ring)?);
    }
    let base = out.clone();
    for s in sigmas {
        for h in &base {
            out.push(h.transport(s)?);
        }
    }
    Ok(out)
}
