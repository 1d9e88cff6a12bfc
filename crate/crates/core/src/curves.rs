//! Hyperelliptic curves `y^2 = f(x)` over `F_p` and Riemann-Roch spaces for
//! divisors supported over `x in {0, 1, inf}`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ringcore::is_prime;
use crate::ringcore::linalg::fp_kernel;

/// Dense polynomials over `F_p`, lowest coefficient first, no trailing zeros.
pub mod poly {
    pub type Poly = Vec<u32>;

    pub fn trim(mut f: Poly) -> Poly {
        while f.last() == Some(&0) {
            f.pop();
        }
        f
    }

    pub fn deg(f: &[u32]) -> Option<usize> {
        f.iter().rposition(|c| *c != 0)
    }

    pub fn inv(a: u32, p: u32) -> u32 {
        crate::ringcore::ring_pow_mod(a, p - 2, p)
    }

    pub fn add(f: &[u32], g: &[u32], p: u32) -> Poly {
        let n = f.len().max(g.len());
        trim((0..n).map(|i| (f.get(i).copied().unwrap_or(0) + g.get(i).copied().unwrap_or(0)) % p).collect())
    }

    pub fn sub(f: &[u32], g: &[u32], p: u32) -> Poly {
        let n = f.len().max(g.len());
        trim((0..n).map(|i| (f.get(i).copied().unwrap_or(0) + p - g.get(i).copied().unwrap_or(0)) % p).collect())
    }

    pub fn mul(f: &[u32], g: &[u32], p: u32) -> Poly {
        if f.is_empty() || g.is_empty() {
            return vec![];
        }
        let mut out = vec![0u64; f.len() + g.len() - 1];
        for (i, &a) in f.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in g.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u64 * b as u64) % p as u64;
            }
        }
        trim(out.into_iter().map(|v| v as u32).collect())
    }

    pub fn scale(f: &[u32], c: u32, p: u32) -> Poly {
        trim(f.iter().map(|a| (*a as u64 * c as u64 % p as u64) as u32).collect())
    }

    pub fn divrem(f: &[u32], g: &[u32], p: u32) -> (Poly, Poly) {
        let dg = deg(g).expect("division by zero polynomial");
        let lead = inv(g[dg], p) as u64;
        let mut r: Vec<u32> = trim(f.to_vec());
        if r.len() <= dg {
            return (vec![], r);
        }
        let mut q = vec![0u32; r.len() - dg];
        while let Some(dr) = deg(&r) {
            if dr < dg {
                break;
            }
            let c = (r[dr] as u64 * lead % p as u64) as u32;
            q[dr - dg] = c;
            for (i, &b) in g.iter().enumerate() {
                let sub = (c as u64 * b as u64 % p as u64) as u32;
                r[dr - dg + i] = (r[dr - dg + i] + p - sub) % p;
            }
            r = trim(r);
        }
        (trim(q), r)
    }

    pub fn rem(f: &[u32], g: &[u32], p: u32) -> Poly {
        divrem(f, g, p).1
    }

    pub fn gcd(f: &[u32], g: &[u32], p: u32) -> Poly {
        let (mut a, mut b) = (trim(f.to_vec()), trim(g.to_vec()));
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        match deg(&a) {
            Some(d) => scale(&a, inv(a[d], p), p),
            None => a,
        }
    }

    pub fn derivative(f: &[u32], p: u32) -> Poly {
        trim(f.iter().enumerate().skip(1).map(|(i, c)| (*c as u64 * i as u64 % p as u64) as u32).collect())
    }

    pub fn powmod(b: &[u32], mut e: u64, m: &[u32], p: u32) -> Poly {
        let mut base = rem(b, m, p);
        let mut acc = rem(&[1], m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &base, p), m, p);
            }
            base = rem(&mul(&base, &base, p), m, p);
            e >>= 1;
        }
        acc
    }

    pub fn eval(f: &[u32], x: u32, p: u32) -> u32 {
        f.iter().rev().fold(0u64, |acc, c| (acc * x as u64 + *c as u64) % p as u64) as u32
    }

    /// Coefficients of `f(z + c)`.
    pub fn shift(f: &[u32], c: u32, p: u32) -> Poly {
        let mut out: Poly = vec![];
        for &a in f.iter().rev() {
            out = add(&mul(&out, &[c % p, 1], p), &[a], p);
        }
        out
    }

    fn prime_factors(mut n: usize) -> Vec<usize> {
        let mut out = vec![];
        let mut d = 2;
        while d * d <= n {
            if n.is_multiple_of(d) {
                out.push(d);
                while n.is_multiple_of(d) {
                    n /= d;
                }
            }
            d += 1;
        }
        if n > 1 {
            out.push(n);
        }
        out
    }

    /// Rabin's test.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let Some(n) = deg(f) else { return false };
        if n == 0 {
            return false;
        }
        let x: Poly = vec![0, 1];
        let mut frob = vec![rem(&x, f, p)];
        for _ in 0..n {
            let next = powmod(frob.last().expect("nonempty"), p as u64, f, p);
            frob.push(next);
        }
        if frob[n] != rem(&x, f, p) {
            return false;
        }
        prime_factors(n).into_iter().all(|r| deg(&gcd(&sub(&frob[n / r], &x, p), f, p)) == Some(0))
    }

    pub fn is_squarefree(f: &[u32], p: u32) -> bool {
        deg(&gcd(f, &derivative(f, p), p)) == Some(0)
    }
}

use poly::Poly;

/// Whether `a` is a nonzero square mod `p`.
pub fn is_square(a: u32, p: u32) -> bool {
    !a.is_multiple_of(p) && crate::ringcore::ring_pow_mod(a % p, (p - 1) / 2, p) == 1
}

/// The square root in `[1, (p-1)/2]` of a nonzero square.
pub fn sqrt_mod(a: u32, p: u32) -> Option<u32> {
    (1..=p / 2).find(|&r| (r as u64 * r as u64 % p as u64) as u32 == a % p)
}

/// Tracked places: the two points over `0`, over `1` and over `inf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Place {
    ZeroPlus,
    ZeroMinus,
    OnePlus,
    OneMinus,
    InfPlus,
    InfMinus,
}

impl Place {
    pub const ALL: [Place; 6] = [Place::ZeroPlus, Place::ZeroMinus, Place::OnePlus, Place::OneMinus, Place::InfPlus, Place::InfMinus];

    pub fn index(self) -> usize {
        self as usize
    }

    fn sign(self) -> bool {
        matches!(self, Place::ZeroPlus | Place::OnePlus | Place::InfPlus)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Place::ZeroPlus => "0+",
            Place::ZeroMinus => "0-",
            Place::OnePlus => "1+",
            Place::OneMinus => "1-",
            Place::InfPlus => "inf+",
            Place::InfMinus => "inf-",
        };
        f.write_str(s)
    }
}

/// `y^2 = f(x)` with `f` monic, squarefree, of even degree `2g + 2`, and
/// `f(0)`, `f(1)` nonzero squares.
///
/// On the `+` place over `c in {0, 1}` the function `y` expands as
/// `s_c(x - c)` with `s_c(0)` the root of `f(c)` in `[1, (p-1)/2]`; on `inf+`
/// it expands as `x^{g+1} (1 + O(1/x))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperellipticCurve {
    pub p: u32,
    pub f: Poly,
    pub genus: usize,
}

impl HyperellipticCurve {
    pub fn new(p: u32, f: Poly) -> Result<Self> {
        if !is_prime(p) || p == 2 {
            return Err(Error::NotPrime(p));
        }
        let f = poly::trim(f.into_iter().map(|c| c % p).collect());
        let d = poly::deg(&f).unwrap_or(0);
        let mut bad = Vec::new();
        if d < 4 || !d.is_multiple_of(2) {
            bad.push(format!("degree {d} is not even and at least 4"));
        }
        if f.last() != Some(&1) {
            bad.push("f is not monic".to_string());
        }
        if !poly::is_squarefree(&f, p) {
            bad.push("f is not separable".to_string());
        }
        for c in [0, 1] {
            if !is_square(poly::eval(&f, c, p), p) {
                bad.push(format!("f({c}) is not a nonzero square"));
            }
        }
        if !bad.is_empty() {
            return Err(Error::FailedHypothesis(bad));
        }
        Ok(HyperellipticCurve { p, genus: d / 2 - 1, f })
    }

    /// Local expansion of `y` at a place, in the uniformizer `x - c` or `1/x`
    /// (at infinity the series is `y / x^{g+1}`).
    fn y_series(&self, place: Place, prec: usize) -> Vec<u32> {
        let p = self.p;
        let local: Poly = match place {
            Place::ZeroPlus | Place::ZeroMinus => self.f.clone(),
            Place::OnePlus | Place::OneMinus => poly::shift(&self.f, 1, p),
            Place::InfPlus | Place::InfMinus => self.f.iter().rev().copied().collect(),
        };
        let c0 = local.first().copied().unwrap_or(0);
        let s0 = sqrt_mod(c0, p).expect("square by construction");
        let inv2s = poly::inv(2 * s0 % p, p) as u64;
        let mut s = vec![s0];
        for k in 1..prec {
            let mut acc = local.get(k).copied().unwrap_or(0) as u64;
            for i in 1..k {
                acc = (acc + p as u64 * p as u64 - s[i] as u64 * s[k - i] as u64) % p as u64;
            }
            s.push((acc * inv2s % p as u64) as u32);
        }
        if place.sign() {
            s
        } else {
            s.iter().map(|c| (p - c) % p).collect()
        }
    }

    pub fn canonical_divisor(&self) -> Divisor {
        let g = self.genus as i64 - 1;
        let mut d = Divisor::zero();
        d.0[Place::InfPlus.index()] = g;
        d.0[Place::InfMinus.index()] = g;
        d
    }
}

/// Integer multiplicities at the six tracked places, in [`Place::ALL`] order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize)]
pub struct Divisor(pub [i64; 6]);

impl Divisor {
    pub fn zero() -> Self {
        Divisor([0; 6])
    }

    pub fn at(place: Place, m: i64) -> Self {
        let mut d = Divisor::zero();
        d.0[place.index()] = m;
        d
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn get(&self, place: Place) -> i64 {
        self.0[place.index()]
    }
}

impl std::ops::Add for Divisor {
    type Output = Divisor;
    fn add(self, o: Divisor) -> Divisor {
        let mut d = self;
        for i in 0..6 {
            d.0[i] += o.0[i];
        }
        d
    }
}

impl std::ops::Sub for Divisor {
    type Output = Divisor;
    fn sub(self, o: Divisor) -> Divisor {
        self + o * -1
    }
}

impl std::ops::Mul<i64> for Divisor {
    type Output = Divisor;
    fn mul(self, k: i64) -> Divisor {
        Divisor(self.0.map(|c| c * k))
    }
}

/// `(a + y b) / (x^m0 (x - 1)^m1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveFunction {
    pub a: Poly,
    pub b: Poly,
    pub m0: u32,
    pub m1: u32,
}

impl CurveFunction {
    pub fn poly(a: Poly, b: Poly) -> Self {
        CurveFunction { a: poly::trim(a), b: poly::trim(b), m0: 0, m1: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_empty() && self.b.is_empty()
    }
}

/// Coefficient vector of `A(z) + sigma s(z) B(z)` modulo `z^prec`, where
/// `A`, `B` are the local forms of `a`, `b` at the place.
fn local_expansion(curve: &HyperellipticCurve, place: Place, a: &[u32], b: &[u32], top: usize, prec: usize) -> Vec<u32> {
    let p = curve.p;
    let g1 = curve.genus + 1;
    let s = curve.y_series(place, prec);
    let (la, lb): (Poly, Poly) = match place {
        Place::ZeroPlus | Place::ZeroMinus => (a.to_vec(), b.to_vec()),
        Place::OnePlus | Place::OneMinus => (poly::shift(a, 1, p), poly::shift(b, 1, p)),
        Place::InfPlus | Place::InfMinus => {
            // u^top a(1/u) and u^{top - g - 1} b(1/u)
            let mut ra = vec![0u32; top + 1];
            for (k, c) in a.iter().enumerate() {
                ra[top - k] = *c;
            }
            let mut rb = vec![0u32; top + 1 - g1.min(top + 1)];
            for (k, c) in b.iter().enumerate() {
                rb[top - g1 - k] = *c;
            }
            (poly::trim(ra), poly::trim(rb))
        }
    };
    let sb = poly::mul(&s, &lb, p);
    let tot = poly::add(&la, &sb, p);
    (0..prec).map(|k| tot.get(k).copied().unwrap_or(0)).collect()
}

/// Exact valuations of a nonzero function at the six tracked places.
pub fn place_valuations(curve: &HyperellipticCurve, h: &CurveFunction) -> Result<[i64; 6]> {
    if h.is_zero() {
        return Err(Error::InsufficientSeriesPrecision);
    }
    let g1 = curve.genus + 1;
    let top = poly::deg(&h.a).unwrap_or(0).max(poly::deg(&h.b).map(|d| d + g1).unwrap_or(0));
    // the zero divisor of a + y b has degree at most 2 top
    let prec = 2 * top + 2;
    let mut out = [0i64; 6];
    for place in Place::ALL {
        let e = local_expansion(curve, place, &h.a, &h.b, top, prec);
        let ord = e.iter().position(|c| *c != 0).ok_or(Error::InsufficientSeriesPrecision)? as i64;
        out[place.index()] = match place {
            Place::ZeroPlus | Place::ZeroMinus => ord - h.m0 as i64,
            Place::OnePlus | Place::OneMinus => ord - h.m1 as i64,
            _ => ord - top as i64 + h.m0 as i64 + h.m1 as i64,
        };
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct RRBasis {
    pub divisor: Divisor,
    pub basis: Vec<CurveFunction>,
}

impl RRBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub const RR_UNKNOWN_LIMIT: usize = 4096;

/// Basis of `L(D) = {h : div h >= -D}` for `D` on the tracked places.
pub fn rr_space(curve: &HyperellipticCurve, d: &Divisor) -> Result<RRBasis> {
    let p = curve.p;
    let g1 = curve.genus as i64 + 1;
    let m0 = d.get(Place::ZeroPlus).max(d.get(Place::ZeroMinus)).max(0);
    let m1 = d.get(Place::OnePlus).max(d.get(Place::OneMinus)).max(0);
    let ninf = d.get(Place::InfPlus).max(d.get(Place::InfMinus));
    let top = ninf + m0 + m1;
    if top < 0 {
        return Ok(RRBasis { divisor: *d, basis: vec![] });
    }
    let na = top as usize + 1;
    let nb = (top - g1 + 1).max(0) as usize;
    let unknowns = na + nb;
    if unknowns > RR_UNKNOWN_LIMIT {
        return Err(Error::TooLarge { what: "Riemann-Roch ansatz", size: unknowns as u128, limit: RR_UNKNOWN_LIMIT as u128 });
    }
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for place in Place::ALL {
        let need = match place {
            Place::ZeroPlus | Place::ZeroMinus => m0 - d.get(place),
            Place::OnePlus | Place::OneMinus => m1 - d.get(place),
            _ => ninf - d.get(place),
        };
        if need <= 0 {
            continue;
        }
        let need = need as usize;
        let mut cols: Vec<Vec<u32>> = Vec::with_capacity(unknowns);
        for k in 0..na {
            let mut a = vec![0u32; k + 1];
            a[k] = 1;
            cols.push(local_expansion(curve, place, &a, &[], top as usize, need));
        }
        for k in 0..nb {
            let mut b = vec![0u32; k + 1];
            b[k] = 1;
            cols.push(local_expansion(curve, place, &[], &b, top as usize, need));
        }
        for r in 0..need {
            rows.push(cols.iter().map(|c| c[r]).collect());
        }
    }
    let kernel = if rows.is_empty() {
        (0..unknowns).map(|i| (0..unknowns).map(|j| (i == j) as u32).collect()).collect()
    } else {
        fp_kernel(p, &rows, unknowns)
    };
    let basis = kernel
        .into_iter()
        .map(|v| CurveFunction { a: poly::trim(v[..na].to_vec()), b: poly::trim(v[na..].to_vec()), m0: m0 as u32, m1: m1 as u32 })
        .collect();
    Ok(RRBasis { divisor: *d, basis })
}

pub fn h0(curve: &HyperellipticCurve, d: &Divisor) -> Result<usize> {
    Ok(rr_space(curve, d)?.dim())
}

/// Monic polynomial of degree `deg` drawn uniformly.
fn random_monic(rng: &mut ChaCha8Rng, p: u32, deg: usize) -> Poly {
    let mut f: Poly = (0..deg).map(|_| rng.gen_range(0..p)).collect();
    f.push(1);
    f
}

#[derive(Clone, Debug, Serialize)]
pub struct SquareSelection {
    pub factors: Vec<Poly>,
    /// Square classes `(chi(f_i(0)) != 1, chi(f_i(1)) != 1)` of the factors.
    pub classes: Vec<(bool, bool)>,
    /// Indices of the factors multiplied into `f`.
    pub chosen: Vec<usize>,
    pub f: Poly,
    pub seed: u64,
}

pub const IRREDUCIBLE_BUDGET: usize = 100_000;

/// A monic separable `f` of even degree at least `min_even_deg` with `f(0)`,
/// `f(1)` nonzero squares, from three irreducible factors of equal even degree
/// and the first of the 7 nonempty products with trivial square class.
pub fn find_square_compatible_poly(p: u32, min_even_deg: usize, seed: u64) -> Result<SquareSelection> {
    if !is_prime(p) || p == 2 {
        return Err(Error::NotPrime(p));
    }
    let d = min_even_deg.max(2).div_ceil(2) * 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors: Vec<Poly> = Vec::new();
    let mut tries = 0;
    while factors.len() < 3 {
        tries += 1;
        if tries > IRREDUCIBLE_BUDGET {
            return Err(Error::SearchExhausted(tries));
        }
        let f = random_monic(&mut rng, p, d);
        if poly::eval(&f, 0, p) == 0 || poly::eval(&f, 1, p) == 0 || factors.contains(&f) || !poly::is_irreducible(&f, p) {
            continue;
        }
        factors.push(f);
    }
    let classes: Vec<(bool, bool)> = factors.iter().map(|f| (!is_square(poly::eval(f, 0, p), p), !is_square(poly::eval(f, 1, p), p))).collect();
    let subsets: [&[usize]; 7] = [&[0], &[1], &[2], &[0, 1], &[0, 2], &[1, 2], &[0, 1, 2]];
    let chosen = subsets
        .iter()
        .find(|s| s.iter().fold((false, false), |acc, &i| (acc.0 ^ classes[i].0, acc.1 ^ classes[i].1)) == (false, false))
        .expect("Klein four-group pigeonhole")
        .to_vec();
    let f = chosen.iter().fold(vec![1u32], |acc, &i| poly::mul(&acc, &factors[i], p));
    Ok(SquareSelection { factors, classes, chosen, f, seed })
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub value: i64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct NiceCertificate {
    pub q: u32,
    pub n: u32,
    pub d: u32,
    pub f: Poly,
    pub genus: usize,
    pub places: Vec<String>,
    pub checks: Vec<Check>,
    pub seed: Option<u64>,
}

/// Check the line-bundle hypotheses for `p = 0+`, `L = O(p1 - p2)` with
/// `p1 = 1+`, `p2 = inf+`.
pub fn certify_nice_hypotheses(curve: &HyperellipticCurve, n: u32, d: u32) -> Result<NiceCertificate> {
    let np = Divisor::at(Place::ZeroPlus, n as i64);
    let l = Divisor::at(Place::OnePlus, 1) - Divisor::at(Place::InfPlus, 1);
    let mut checks = Vec::new();
    let g = curve.genus as i64;
    checks.push(Check { name: format!("genus g >= n+2 (g = {g})"), value: g, pass: g >= n as i64 + 2 });
    checks.push(Check { name: format!("characteristic p > d/2 (p = {})", curve.p), value: curve.p as i64, pass: 2 * curve.p > d });
    let h = h0(curve, &np)? as i64;
    checks.push(Check { name: "h0(O(np)) = 1".into(), value: h, pass: h == 1 });
    for i in 1..=d as i64 {
        for s in [1, -1] {
            let h = h0(curve, &(np + l * (s * i)))? as i64;
            checks.push(Check { name: format!("h0(L^{}(np)) = 0", s * i), value: h, pass: h == 0 });
        }
    }
    let ext = curve.canonical_divisor() - l * 2 - np;
    let h = h0(curve, &ext)? as i64;
    checks.push(Check { name: "h0(omega L^-2(-np)) >= 1".into(), value: h, pass: h >= 1 });
    let failed: Vec<String> = checks.iter().filter(|c| !c.pass).map(|c| format!("{} [got {}]", c.name, c.value)).collect();
    if !failed.is_empty() {
        return Err(Error::FailedHypothesis(failed));
    }
    Ok(NiceCertificate {
        q: curve.p,
        n,
        d,
        f: curve.f.clone(),
        genus: curve.genus,
        places: vec!["p = 0+".into(), "p1 = 1+".into(), "p2 = inf+".into()],
        checks,
        seed: None,
    })
}

/// Even degree forcing `g >= n + d + 2`.
pub fn nice_min_degree(n: u32, d: u32) -> usize {
    2 * (n + d + 2) as usize + 2
}

/// Search seeds `seed, seed+1, ...` for a curve passing every hypothesis.
pub fn nice_search(q: u32, n: u32, d: u32, seed: u64, attempts: usize) -> Result<NiceCertificate> {
    if 2 * q <= d {
        return Err(Error::FailedHypothesis(vec![format!("characteristic p > d/2 (p = {q}, d = {d})")]));
    }
    let mut last = None;
    for k in 0..attempts as u64 {
        let sel = find_square_compatible_poly(q, nice_min_degree(n, d), seed + k)?;
        let curve = HyperellipticCurve::new(q, sel.f)?;
        match certify_nice_hypotheses(&curve, n, d) {
            Ok(mut c) => {
                c.seed = Some(seed + k);
                return Ok(c);
            }
            Err(e) => last = Some(e),
        }
    }
    Err(last.unwrap_or(Error::SearchExhausted(attempts)))
}
