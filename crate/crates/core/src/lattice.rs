//! Points of the affine Grassmannian `Gr(R)` for `GL_n` as `R[[t]]`-lattices.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ringcore::linalg::{affine_points, fp_rank, fp_solve, summand_echelon, Echelon};
use crate::ringcore::{ChainRing, Laurent, LaurentMatrix};

pub const DEFAULT_GUARD: u128 = 10_000_000;

/// Global enumeration guard, overridable through `HECKE_GUARD_POINTS`.
pub fn guard_limit() -> u128 {
    std::env::var("HECKE_GUARD_POINTS").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_GUARD)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DominantCoweight(Vec<i32>);

impl DominantCoweight {
    pub fn new(parts: Vec<i32>) -> Result<Self> {
        if parts.is_empty() || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("{parts:?} is not a dominant coweight")));
        }
        Ok(DominantCoweight(parts))
    }

    pub fn zero(n: usize) -> Self {
        DominantCoweight(vec![0; n])
    }

    pub fn parts(&self) -> &[i32] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> i32 {
        self.0.iter().sum()
    }

    pub fn is_minuscule(&self) -> bool {
        self.0[0] - self.0[self.0.len() - 1] <= 1
    }

    /// `<lambda, 2 rho>`, the dimension of `Gr_lambda`.
    pub fn dim(&self) -> u32 {
        let mut d = 0;
        for i in 0..self.0.len() {
            for j in i + 1..self.0.len() {
                d += self.0[i] - self.0[j];
            }
        }
        d as u32
    }

    /// Central twist `c = -lambda_n` and the twisted coweight with last part 0.
    pub fn twist(&self) -> (i32, DominantCoweight) {
        let c = -self.0[self.0.len() - 1];
        (c, DominantCoweight(self.0.iter().map(|x| x + c).collect()))
    }

    /// `mu <= self` in the dominance order.
    pub fn dominates(&self, mu: &DominantCoweight) -> bool {
        if mu.n() != self.n() || mu.size() != self.size() {
            return false;
        }
        let (mut a, mut b) = (0, 0);
        for i in 0..self.n() {
            a += self.0[i];
            b += mu.0[i];
            if b > a {
                return false;
            }
        }
        true
    }

    /// All dominant `mu <= self`.
    pub fn dominated(&self) -> Vec<DominantCoweight> {
        let n = self.n();
        let (lo, hi) = (self.0[n - 1], self.0[0]);
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(cur: &mut Vec<i32>, n: usize, lo: i32, hi: i32, lam: &DominantCoweight, out: &mut Vec<DominantCoweight>) {
            if cur.len() == n {
                let mu = DominantCoweight(cur.clone());
                if lam.dominates(&mu) {
                    out.push(mu);
                }
                return;
            }
            let top = cur.last().copied().unwrap_or(hi);
            for v in (lo..=top).rev() {
                cur.push(v);
                rec(cur, n, lo, hi, lam, out);
                cur.pop();
            }
        }
        rec(&mut cur, n, lo, hi, self, &mut out);
        out
    }
}

impl fmt::Display for DominantCoweight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for DominantCoweight {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .trim()
            .trim_matches(|c| c == '(' || c == ')')
            .split(',')
            .map(|x| x.trim().parse::<i32>().map_err(|_| Error::Parse(format!("bad coweight '{s}'"))))
            .collect::<Result<Vec<_>>>()?;
        DominantCoweight::new(parts)
    }
}

/// Canonical form of a lattice `L = t^{-s} L0` with `t^b Lambda0 ⊆ L0 ⊆ Lambda0`,
/// `L0 ⊄ t Lambda0`, `b` minimal. The image of `L0` in `(R[t]/t^b)^n = R^{nb}`
/// is stored as its echelon basis; coordinate `k*n + i` is the `t^k` coefficient
/// of component `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeRep {
    ring: ChainRing,
    n: usize,
    shift: i32,
    depth: u32,
    pivots: Vec<usize>,
    rows: Vec<Vec<u32>>,
}

/// Which spanning vector is used as a lattice generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Choice {
    Row(usize),
    Top(usize),
}

fn vector_from_column(g: &LaurentMatrix, j: usize, k: u32, a: u32) -> Vec<u32> {
    let n = g.n();
    let mut v = vec![0u32; n * a as usize];
    for i in 0..n {
        for (e, c) in g.get(i, j).terms() {
            let m = e + k as i64;
            if m >= 0 && m < a as i64 {
                v[m as usize * n + i] = c;
            }
        }
    }
    v
}

/// Echelon form of the image of `g Lambda0` in `(R[t]/t^a)^n`; `g` integral.
fn window_echelon(r: &ChainRing, g: &LaurentMatrix, a: u32) -> Result<Echelon> {
    let n = g.n();
    let mut vecs = Vec::with_capacity(n * a as usize);
    for j in 0..n {
        for k in 0..a {
            vecs.push(vector_from_column(g, j, k, a));
        }
    }
    summand_echelon(r, vecs, n * a as usize)
}

/// Pick `n` vectors among the echelon rows and `t^a e_i` whose residues give an
/// `F_q[[t]]`-basis of the residue lattice (a basis of `L/tL`).
fn choose_basis(r: &ChainRing, n: usize, a: u32, rows: &[Vec<u32>]) -> Vec<Choice> {
    let p = r.p();
    let w = n * (a as usize + 1);
    let cand: Vec<(Choice, Vec<u32>)> = rows
        .iter()
        .enumerate()
        .map(|(k, row)| {
            let mut v: Vec<u32> = row.iter().map(|c| r.residue(*c)).collect();
            v.resize(w, 0);
            (Choice::Row(k), v)
        })
        .chain((0..n).map(|i| {
            let mut v = vec![0u32; w];
            v[a as usize * n + i] = 1;
            (Choice::Top(i), v)
        }))
        .collect();
    let shifted: Vec<Vec<u32>> = cand
        .iter()
        .map(|(_, v)| {
            let mut s = vec![0u32; w];
            s[n..].copy_from_slice(&v[..w - n]);
            s
        })
        .collect();
    let mut basis: Vec<Vec<u32>> = shifted.into_iter().filter(|v| v.iter().any(|c| *c != 0)).collect();
    let mut rank = fp_rank(p, &basis, w);
    let mut out = Vec::with_capacity(n);
    for (choice, v) in cand {
        if out.len() == n {
            break;
        }
        basis.push(v);
        let nr = fp_rank(p, &basis, w);
        if nr > rank {
            rank = nr;
            out.push(choice);
        } else {
            basis.pop();
        }
    }
    debug_assert_eq!(out.len(), n);
    out
}

fn generators_from_rows(n: usize, a: u32, rows: &[Vec<u32>], choices: &[Choice]) -> LaurentMatrix {
    let mut g = LaurentMatrix::zeros(n);
    for (j, ch) in choices.iter().enumerate() {
        match *ch {
            Choice::Row(k) => {
                for i in 0..n {
                    let coef: Vec<u32> = (0..a as usize).map(|m| rows[k][m * n + i]).collect();
                    g.set(i, j, Laurent::from_coeffs(0, coef));
                }
            }
            Choice::Top(i) => g.set(i, j, Laurent::monomial(1, a as i64)),
        }
    }
    g
}

impl LatticeRep {
    pub fn base(ring: ChainRing, n: usize) -> Self {
        LatticeRep { ring, n, shift: 0, depth: 0, pivots: Vec::new(), rows: Vec::new() }
    }

    /// `t^lambda Lambda0`.
    pub fn cocharacter(ring: ChainRing, lam: &[i32]) -> Self {
        LatticeRep::from_generators(&ring, &LaurentMatrix::cocharacter(lam)).expect("diagonal lattice")
    }

    /// Canonical form of `g Lambda0`; `g` must be an exact group-valid matrix.
    pub fn from_generators(r: &ChainRing, g: &LaurentMatrix) -> Result<Self> {
        if g.prec().is_some() {
            return Err(Error::InsufficientWindow("canonicalization needs exact generators".into()));
        }
        let n = g.n();
        let s = -g.vmin().ok_or(Error::NotInGroup)?;
        let g0 = g.shift(s);
        let inv = g0.inverse(r, 0)?;
        let b = inv.vmin().map_or(0, |v| (-v).max(0)) as u32;
        let ech = window_echelon(r, &g0, b)?;
        debug_assert_eq!(
            g0.det(r).unit_val(r),
            Some((n * b as usize - ech.rank()) as i64),
            "colength must match residue determinant"
        );
        Ok(LatticeRep { ring: *r, n, shift: s as i32, depth: b, pivots: ech.pivots, rows: ech.rows })
    }

    pub fn ring(&self) -> ChainRing {
        self.ring
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn shift(&self) -> i32 {
        self.shift
    }
    pub fn depth(&self) -> u32 {
        self.depth
    }
    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Smallest `a >= 0` with `t^a Lambda0 ⊆ L ⊆ t^{-a} Lambda0`.
    pub fn window(&self) -> u32 {
        self.shift.max(self.depth as i32 - self.shift).max(0) as u32
    }

    /// Valuation of `det g`: `dim_R(Lambda0/L0) - n s`.
    pub fn degree(&self) -> i32 {
        (self.n * self.depth as usize - self.rows.len()) as i32 - self.n as i32 * self.shift
    }

    /// `t^k L`.
    pub fn scale_t(&self, k: i32) -> LatticeRep {
        LatticeRep { shift: self.shift - k, ..self.clone() }
    }

    /// An exact basis matrix: columns form an `R[[t]]`-basis of `L`.
    pub fn to_generators(&self) -> LaurentMatrix {
        if self.depth == 0 {
            return LaurentMatrix::identity(self.n).shift(-self.shift as i64);
        }
        let choices = choose_basis(&self.ring, self.n, self.depth, &self.rows);
        generators_from_rows(self.n, self.depth, &self.rows, &choices).shift(-self.shift as i64)
    }

    /// Image under `R_N -> R_len`.
    pub fn reduce(&self, len: u32) -> Result<LatticeRep> {
        let target = self.ring.with_len(len.min(self.ring.len()))?;
        let g = self.to_generators().map_entries(|x| x.map_coeffs(|c| self.ring.reduce(c, len)));
        LatticeRep::from_generators(&target, &g)
    }

    pub fn residue(&self) -> LatticeRep {
        self.reduce(1).expect("residue of a valid lattice")
    }

    /// Echelon form of `L/t^a Lambda0` for `t^a Lambda0 ⊆ L ⊆ Lambda0`.
    fn window_form(&self, a: u32) -> Result<Echelon> {
        if self.shift > 0 || self.depth as i32 - self.shift > a as i32 {
            return Err(Error::InsufficientWindow(format!("lattice {self} not inside window {a}")));
        }
        window_echelon(&self.ring, &self.to_generators(), a)
    }

    /// Action of a matrix on the left.
    pub fn act(&self, g: &LaurentMatrix) -> Result<LatticeRep> {
        LatticeRep::from_generators(&self.ring, &g.mul(&self.to_generators(), &self.ring))
    }
}

impl fmt::Display for LatticeRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        let body = if rows.is_empty() { "-".to_string() } else { rows.join(";") };
        write!(f, "{}|n={}|s={}|b={}|{}", self.ring, self.n, self.shift, self.depth, body)
    }
}

impl FromStr for LatticeRep {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad lattice text '{s}'"));
        let fields: Vec<&str> = s.split('|').collect();
        if fields.len() != 5 {
            return Err(bad());
        }
        let ring: ChainRing = fields[0].parse()?;
        let num = |f: &str, key: &str| -> Result<i64> {
            f.strip_prefix(key).and_then(|v| v.parse().ok()).ok_or_else(bad)
        };
        let n = num(fields[1], "n=")? as usize;
        let shift = num(fields[2], "s=")? as i32;
        let depth = num(fields[3], "b=")? as u32;
        let rows: Vec<Vec<u32>> = if fields[4] == "-" {
            Vec::new()
        } else {
            fields[4]
                .split(';')
                .map(|r| r.split(',').map(|c| c.parse::<u32>().map_err(|_| bad())).collect())
                .collect::<Result<_>>()?
        };
        if rows.iter().any(|r| r.len() != n * depth as usize || r.iter().any(|c| *c >= ring.size())) {
            return Err(bad());
        }
        let ech = summand_echelon(&ring, rows.clone(), n * depth as usize)?;
        if ech.rows != rows {
            return Err(Error::Parse(format!("'{s}' is not in canonical form")));
        }
        let out = LatticeRep { ring, n, shift, depth, pivots: ech.pivots, rows };
        if LatticeRep::from_generators(&ring, &out.to_generators())? != out {
            return Err(Error::Parse(format!("'{s}' is not in canonical form")));
        }
        Ok(out)
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Coefficients that must vanish for an integral `g` to lie in the
/// determinantal closure of `Gr_lam` (`lam` twisted, last part 0).
fn determinantal_residuals(r: &ChainRing, g: &LaurentMatrix, lam: &[i32], out: &mut Vec<u32>) {
    let n = g.n();
    let total: i32 = lam.iter().sum();
    let det = g.det(r);
    for m in 0..total {
        out.push(det.coeff(m as i64));
    }
    for k in 1..n {
        let need: i32 = lam[n - k..].iter().sum();
        if need == 0 {
            continue;
        }
        let sets = combinations(n, k);
        for rows in &sets {
            for cols in &sets {
                let sub = LaurentMatrix::from_fn(k, |i, j| g.get(rows[i], cols[j]).clone());
                let d = sub.det(r);
                for m in 0..need {
                    out.push(d.coeff(m as i64));
                }
            }
        }
    }
}

/// Determinantal closure membership.
pub fn gr_membership(l: &LatticeRep, lam: &DominantCoweight) -> Result<bool> {
    if lam.n() != l.n {
        return Err(Error::Dimension(format!("coweight of length {} for GL_{}", lam.n(), l.n)));
    }
    let (c, tw) = lam.twist();
    let lt = l.scale_t(c);
    if lt.shift > 0 {
        return Ok(false);
    }
    let r = l.ring;
    let g = lt.to_generators();
    if g.det(&r).unit_val(&r) != Some(tw.size() as i64) {
        return Ok(false);
    }
    let mut res = Vec::new();
    determinantal_residuals(&r, &g, tw.parts(), &mut res);
    Ok(res.iter().all(|c| *c == 0))
}

/// Elementary divisors over `F_q[[t]]` by pivoting elimination.
pub fn smith_invariants(l: &LatticeRep) -> Result<DominantCoweight> {
    let r = l.ring;
    if r.len() != 1 {
        return Err(Error::WrongMode("smith_invariants needs a field".into()));
    }
    let n = l.n;
    let g0 = l.scale_t(l.shift).to_generators();
    let dv = g0.det(&r).unit_val(&r).ok_or(Error::NotInGroup)?;
    let prec = 2 * dv + 2;
    let mut m: Vec<Vec<Laurent>> = (0..n).map(|i| (0..n).map(|j| g0.get(i, j).truncate(prec)).collect()).collect();
    let mut exps = Vec::with_capacity(n);
    for step in 0..n {
        let mut best: Option<(i64, usize, usize)> = None;
        for i in step..n {
            for j in step..n {
                if let Some(v) = m[i][j].val() {
                    if best.is_none_or(|b| v < b.0) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let (v, bi, bj) = best.ok_or_else(|| Error::InsufficientWindow("smith elimination ran out of precision".into()))?;
        m.swap(step, bi);
        for row in m.iter_mut() {
            row.swap(step, bj);
        }
        let unit = m[step][step].shift(-v);
        let uinv = unit.inverse(&r, prec - v)?;
        for i in step + 1..n {
            let f = m[i][step].shift(-v).mul(&uinv, &r);
            for j in step..n {
                let t = f.mul(&m[step][j], &r);
                m[i][j] = m[i][j].sub(&t, &r);
            }
        }
        for j in step + 1..n {
            let f = m[step][j].shift(-v).mul(&uinv, &r);
            for i in step..n {
                let t = f.mul(&m[i][step], &r);
                m[i][j] = m[i][j].sub(&t, &r);
            }
        }
        exps.push(v as i32 - l.shift);
    }
    exps.sort_unstable_by(|a, b| b.cmp(a));
    DominantCoweight::new(exps)
}

/// Enumerated closure `Gr_{<=lam}(R)` with the residue stratum of each point.
#[derive(Clone, Debug)]
pub struct SchubertSet {
    pub lam: DominantCoweight,
    pub ring: ChainRing,
    pub points: Vec<LatticeRep>,
    pub strata: Vec<DominantCoweight>,
}

/// Lifting data for one window echelon form at level `k` to level `k+1`.
struct LiftProblem<'a> {
    next: ChainRing,
    n: usize,
    a: u32,
    lam: Option<&'a [i32]>,
    choices: Vec<Choice>,
    free: Vec<(usize, usize)>,
}

impl<'a> LiftProblem<'a> {
    fn new(next: ChainRing, n: usize, a: u32, lam: Option<&'a [i32]>, ech: &Echelon) -> Self {
        let choices = choose_basis(&next, n, a, &ech.rows);
        let width = n * a as usize;
        let free = (0..ech.rows.len())
            .flat_map(|i| (0..width).filter(|c| !ech.pivots.contains(c)).map(move |c| (i, c)))
            .collect();
        LiftProblem { next, n, a, lam, choices, free }
    }

    fn residuals(&self, pivots: &[usize], rows: &[Vec<u32>]) -> Vec<u32> {
        let r = &self.next;
        let n = self.n;
        let width = n * self.a as usize;
        let mut out = Vec::new();
        for row in rows {
            let mut sh = vec![0u32; width];
            sh[n..].copy_from_slice(&row[..width - n]);
            let mut res = sh.clone();
            for (j, &pc) in pivots.iter().enumerate() {
                let c = sh[pc];
                if c != 0 {
                    for (x, y) in res.iter_mut().zip(rows[j].iter()) {
                        if *y != 0 {
                            *x = r.sub(*x, r.mul(c, *y));
                        }
                    }
                }
            }
            out.extend((0..width).filter(|c| !pivots.contains(c)).map(|c| res[c]));
        }
        if let Some(lam) = self.lam {
            let g = generators_from_rows(n, self.a, rows, &self.choices);
            determinantal_residuals(r, &g, lam, &mut out);
        }
        out
    }

    /// Affine solution space over `F_p` for the `pi^k` digits of the free entries.
    fn solve(&self, k: u32, ech: &Echelon) -> Result<Option<(Vec<u32>, Vec<Vec<u32>>)>> {
        let r = &self.next;
        let pk = r.pi_pow(k);
        let g0 = self.residuals(&ech.pivots, &ech.rows);
        if g0.iter().any(|c| c % pk != 0) {
            return Err(Error::InsufficientWindow("point does not satisfy its defining equations".into()));
        }
        let p = r.p();
        let mut cols = Vec::with_capacity(self.free.len());
        let mut rows = ech.rows.clone();
        for &(i, c) in &self.free {
            let old = rows[i][c];
            rows[i][c] = r.add(old, pk);
            let g1 = self.residuals(&ech.pivots, &rows);
            rows[i][c] = old;
            cols.push(g1.iter().zip(g0.iter()).map(|(x, y)| r.sub(*x, *y) / pk % p).collect::<Vec<u32>>());
        }
        let m = g0.len();
        let a: Vec<Vec<u32>> = (0..m).map(|e| cols.iter().map(|col| col[e]).collect()).collect();
        let rhs: Vec<u32> = g0.iter().map(|c| (p - (c / pk) % p) % p).collect();
        Ok(fp_solve(p, &a, &rhs, self.free.len()))
    }

    fn lifts(&self, k: u32, ech: &Echelon) -> Result<Vec<Echelon>> {
        let Some((part, ker)) = self.solve(k, ech)? else {
            return Ok(Vec::new());
        };
        let pk = self.next.pi_pow(k);
        Ok(affine_points(self.next.p(), &part, &ker)
            .into_iter()
            .map(|z| {
                let mut rows = ech.rows.clone();
                for (&(i, c), d) in self.free.iter().zip(z.iter()) {
                    rows[i][c] += d * pk;
                }
                Echelon { pivots: ech.pivots.clone(), rows }
            })
            .collect())
    }

    fn lift_count(&self, k: u32, ech: &Echelon) -> Result<u64> {
        Ok(match self.solve(k, ech)? {
            None => 0,
            Some((_, ker)) => (self.next.p() as u64).pow(ker.len() as u32),
        })
    }
}

fn echelon_to_point(r: &ChainRing, n: usize, a: u32, ech: &Echelon) -> Result<LatticeRep> {
    if ech.rows.is_empty() && a == 0 {
        return Ok(LatticeRep::base(*r, n));
    }
    let choices = choose_basis(r, n, a, &ech.rows);
    LatticeRep::from_generators(r, &generators_from_rows(n, a, &ech.rows, &choices))
}

/// All lattices `t^a Lambda0 ⊆ L ⊆ Lambda0` over `F_q` via column Hermite forms.
fn field_window_points(r: &ChainRing, n: usize, a: u32) -> Result<Vec<LatticeRep>> {
    let p = r.p();
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    loop {
        // off-diagonal (i, j), i < j: polynomial of degree < e_i
        let slots: Vec<(usize, usize, u32)> =
            (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).map(|(i, j)| (i, j, exps[i])).collect();
        let total: u32 = slots.iter().map(|s| s.2).sum();
        let count = (p as u64).pow(total);
        for idx in 0..count {
            let mut rem = idx;
            let mut g = LaurentMatrix::zeros(n);
            for (j, e) in exps.iter().enumerate() {
                g.set(j, j, Laurent::monomial(1, *e as i64));
            }
            for &(i, j, e) in &slots {
                let coef: Vec<u32> = (0..e)
                    .map(|_| {
                        let c = (rem % p as u64) as u32;
                        rem /= p as u64;
                        c
                    })
                    .collect();
                g.set(i, j, Laurent::from_coeffs(0, coef));
            }
            let l = LatticeRep::from_generators(r, &g)?;
            if l.depth as i32 - l.shift <= a as i32 {
                out.push(l);
            }
        }
        let mut pos = 0;
        loop {
            if pos == n {
                return Ok(out);
            }
            if exps[pos] < a {
                exps[pos] += 1;
                break;
            }
            exps[pos] = 0;
            pos += 1;
        }
    }
}

fn check_guard(r: &ChainRing, n: usize, a: u32) -> Result<()> {
    let size = (r.size() as u128).checked_pow(n as u32 * a).unwrap_or(u128::MAX);
    let limit = guard_limit();
    if size > limit {
        return Err(Error::TooLarge { what: "ambient window module", size, limit });
    }
    Ok(())
}

/// Points in the window `t^a Lambda0 ⊆ L ⊆ Lambda0` (optionally restricted to the
/// determinantal closure of a twisted coweight), as echelon forms over `ring`.
fn enumerate_echelons(ring: &ChainRing, n: usize, a: u32, lam: Option<&[i32]>) -> Result<Vec<Echelon>> {
    check_guard(ring, n, a)?;
    let field = ring.residue_field();
    let mut pts: Vec<Echelon> = field_window_points(&field, n, a)?
        .into_iter()
        .map(|l| -> Result<Option<Echelon>> {
            if let Some(lam) = lam {
                if !gr_membership(&l, &DominantCoweight(lam.to_vec()))? {
                    return Ok(None);
                }
            }
            Ok(Some(l.window_form(a)?))
        })
        .filter_map(|x| x.transpose())
        .collect::<Result<_>>()?;
    for k in 1..ring.len() {
        let next = ring.with_len(k + 1)?;
        pts = pts
            .par_iter()
            .map(|e| LiftProblem::new(next, n, a, lam, e).lifts(k, e))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
    }
    Ok(pts)
}

pub fn enumerate_schubert(ring: &ChainRing, n: usize, lam: &DominantCoweight) -> Result<SchubertSet> {
    if lam.n() != n || n > 3 {
        return Err(Error::Dimension(format!("coweight {lam} for GL_{n}")));
    }
    let (c, tw) = lam.twist();
    let a = tw.parts()[0] as u32;
    let echs = enumerate_echelons(ring, n, a, Some(tw.parts()))?;
    let mut points: Vec<LatticeRep> = echs
        .par_iter()
        .map(|e| echelon_to_point(ring, n, a, e).map(|l| l.scale_t(-c)))
        .collect::<Result<_>>()?;
    points.sort();
    let strata = points
        .par_iter()
        .map(|l| smith_invariants(&l.residue()))
        .collect::<Result<_>>()?;
    Ok(SchubertSet { lam: lam.clone(), ring: *ring, points, strata })
}

/// Every point with `t^w Lambda0 ⊆ L ⊆ t^{-w} Lambda0`.
pub fn enumerate_window(ring: &ChainRing, n: usize, w: u32) -> Result<Vec<LatticeRep>> {
    let echs = enumerate_echelons(ring, n, 2 * w, None)?;
    let mut points: Vec<LatticeRep> = echs
        .par_iter()
        .map(|e| echelon_to_point(ring, n, 2 * w, e).map(|l| l.scale_t(-(w as i32))))
        .collect::<Result<_>>()?;
    points.sort();
    Ok(points)
}

/// Window and twisted coweight used for lifting points of `Gr_{<=lam}`.
fn lift_setup(l: &LatticeRep, lam: &DominantCoweight) -> Result<(i32, DominantCoweight, u32, Echelon)> {
    let (c, tw) = lam.twist();
    let a = tw.parts()[0] as u32;
    let ech = l.scale_t(c).window_form(a)?;
    Ok((c, tw, a, ech))
}

/// All points of `Gr_{<=lam}(R_{N+j})` reducing to `l`.
pub fn lift_fiber(l: &LatticeRep, lam: &DominantCoweight, j: u32) -> Result<Vec<LatticeRep>> {
    if !gr_membership(l, lam)? {
        return Err(Error::InsufficientWindow(format!("{l} is not in the closure of {lam}")));
    }
    let (c, tw, a, ech) = lift_setup(l, lam)?;
    let ring = l.ring;
    let n = l.n;
    let mut cur = vec![ech];
    let limit = guard_limit();
    for k in ring.len()..ring.len() + j {
        let next = ring.with_len(k + 1)?;
        cur = cur
            .par_iter()
            .map(|e| LiftProblem::new(next, n, a, Some(tw.parts()), e).lifts(k, e))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        if cur.len() as u128 > limit {
            return Err(Error::TooLarge { what: "lift fiber", size: cur.len() as u128, limit });
        }
    }
    let top = ring.with_len(ring.len() + j)?;
    let mut out: Vec<LatticeRep> = cur
        .par_iter()
        .map(|e| echelon_to_point(&top, n, a, e).map(|x| x.scale_t(-c)))
        .collect::<Result<_>>()?;
    out.sort();
    Ok(out)
}

/// Fiber sizes `C_0, ..., C_jmax` of `Gr_{<=lam}(R_{N+j}) -> Gr_{<=lam}(R_N)` over `l`.
pub fn fiber_counts(l: &LatticeRep, lam: &DominantCoweight, jmax: u32) -> Result<Vec<u64>> {
    let (_, tw, a, ech) = lift_setup(l, lam)?;
    let ring = l.ring;
    let n = l.n;
    let limit = guard_limit();
    let mut counts = vec![1u64];
    let mut cur = vec![ech];
    for j in 0..jmax {
        let k = ring.len() + j;
        let next = ring.with_len(k + 1)?;
        if j + 1 == jmax {
            let total: u64 = cur
                .par_iter()
                .map(|e| LiftProblem::new(next, n, a, Some(tw.parts()), e).lift_count(k, e))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .sum();
            counts.push(total);
            break;
        }
        cur = cur
            .par_iter()
            .map(|e| LiftProblem::new(next, n, a, Some(tw.parts()), e).lifts(k, e))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        if cur.len() as u128 > limit {
            return Err(Error::TooLarge { what: "lift fiber", size: cur.len() as u128, limit });
        }
        counts.push(cur.len() as u64);
    }
    Ok(counts)
}
