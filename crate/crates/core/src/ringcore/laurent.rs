use std::fmt;

use super::ring::ChainRing;
use crate::error::{Error, Result};

const INF: i64 = i64::MAX / 4;

fn sat_add(a: i64, b: i64) -> i64 {
    if a >= INF || b >= INF {
        INF
    } else {
        a + b
    }
}

/// A truncated Laurent series over a chain ring.
///
/// `coef[i]` is the coefficient of `t^{lo+i}`. If `prec` is `Some(P)`, the
/// coefficients at indices `>= P` are unknown; `None` marks an exact
/// Laurent polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Laurent {
    lo: i64,
    coef: Vec<u32>,
    prec: Option<i64>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent { lo: 0, coef: Vec::new(), prec: None }
    }

    pub fn constant(c: u32) -> Self {
        Laurent::monomial(c, 0)
    }

    pub fn monomial(c: u32, k: i64) -> Self {
        Laurent::from_coeffs(k, vec![c])
    }

    pub fn from_coeffs(lo: i64, coef: Vec<u32>) -> Self {
        let mut f = Laurent { lo, coef, prec: None };
        f.normalize();
        f
    }

    pub fn with_prec(mut self, prec: i64) -> Self {
        self.prec = Some(self.prec.map_or(prec, |p| p.min(prec)));
        self.normalize();
        self
    }

    fn normalize(&mut self) {
        if let Some(p) = self.prec {
            let keep = (p - self.lo).clamp(0, self.coef.len() as i64) as usize;
            self.coef.truncate(keep);
        }
        while self.coef.last() == Some(&0) {
            self.coef.pop();
        }
        let lead = self.coef.iter().take_while(|c| **c == 0).count();
        if lead > 0 {
            self.coef.drain(..lead);
            self.lo += lead as i64;
        }
        if self.coef.is_empty() {
            self.lo = 0;
        }
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    pub fn prec(&self) -> Option<i64> {
        self.prec
    }

    fn pbound(&self) -> i64 {
        self.prec.unwrap_or(INF)
    }

    /// Coefficient of `t^i` (zero outside the stored range).
    pub fn coeff(&self, i: i64) -> u32 {
        if i < self.lo || i >= self.lo + self.coef.len() as i64 {
            0
        } else {
            self.coef[(i - self.lo) as usize]
        }
    }

    /// Lowest index with a nonzero coefficient.
    pub fn val(&self) -> Option<i64> {
        if self.coef.is_empty() {
            None
        } else {
            Some(self.lo)
        }
    }

    /// Highest index with a nonzero coefficient.
    pub fn top(&self) -> Option<i64> {
        if self.coef.is_empty() {
            None
        } else {
            Some(self.lo + self.coef.len() as i64 - 1)
        }
    }

    /// Valuation lower bound usable in the precision calculus.
    fn val_bound(&self) -> i64 {
        self.val().unwrap_or(self.pbound())
    }

    /// Lowest index with a unit coefficient: the valuation of the residue in `F_q((t))`.
    pub fn unit_val(&self, r: &ChainRing) -> Option<i64> {
        self.coef.iter().position(|c| r.is_unit(*c)).map(|i| self.lo + i as i64)
    }

    pub fn is_zero(&self) -> bool {
        self.coef.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, u32)> + '_ {
        self.coef.iter().enumerate().filter(|(_, c)| **c != 0).map(move |(i, c)| (self.lo + i as i64, *c))
    }

    pub fn add(&self, o: &Laurent, r: &ChainRing) -> Laurent {
        let prec = match (self.prec, o.prec) {
            (None, None) => None,
            (a, b) => Some(a.unwrap_or(INF).min(b.unwrap_or(INF))),
        };
        if self.coef.is_empty() && prec == o.prec {
            return o.clone();
        }
        if o.coef.is_empty() && prec == self.prec {
            return self.clone();
        }
        let lo = if self.coef.is_empty() {
            o.lo
        } else if o.coef.is_empty() {
            self.lo
        } else {
            self.lo.min(o.lo)
        };
        let hi = (self.lo + self.coef.len() as i64).max(o.lo + o.coef.len() as i64);
        let coef = (lo..hi.max(lo)).map(|i| r.add(self.coeff(i), o.coeff(i))).collect();
        let mut f = Laurent { lo, coef, prec };
        f.normalize();
        f
    }

    pub fn neg(&self, r: &ChainRing) -> Laurent {
        Laurent { lo: self.lo, coef: self.coef.iter().map(|c| r.neg(*c)).collect(), prec: self.prec }
    }

    pub fn sub(&self, o: &Laurent, r: &ChainRing) -> Laurent {
        self.add(&o.neg(r), r)
    }

    pub fn scale(&self, c: u32, r: &ChainRing) -> Laurent {
        let mut f = Laurent { lo: self.lo, coef: self.coef.iter().map(|x| r.mul(*x, c)).collect(), prec: self.prec };
        f.normalize();
        f
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> Laurent {
        Laurent { lo: self.lo + k, coef: self.coef.clone(), prec: self.prec.map(|p| p + k) }
    }

    /// Forget coefficients at indices `>= p`.
    pub fn truncate(&self, p: i64) -> Laurent {
        self.clone().with_prec(p)
    }

    /// Exact product on the window guaranteed by the operands' precisions:
    /// the result is known below `min(prec_a + val_b, prec_b + val_a)`.
    pub fn mul(&self, o: &Laurent, r: &ChainRing) -> Laurent {
        let prec = match (self.prec, o.prec) {
            (None, None) => None,
            _ => Some(sat_add(self.pbound(), o.val_bound()).min(sat_add(o.pbound(), self.val_bound()))),
        };
        if self.coef.is_empty() || o.coef.is_empty() {
            return Laurent { lo: 0, coef: Vec::new(), prec };
        }
        let mut coef = vec![0u32; self.coef.len() + o.coef.len() - 1];
        for (i, a) in self.coef.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in o.coef.iter().enumerate() {
                if *b != 0 {
                    coef[i + j] = r.add(coef[i + j], r.mul(*a, *b));
                }
            }
        }
        let mut f = Laurent { lo: self.lo + o.lo, coef, prec };
        f.normalize();
        f
    }

    pub fn map_coeffs(&self, f: impl Fn(u32) -> u32) -> Laurent {
        let mut g = Laurent { lo: self.lo, coef: self.coef.iter().map(|c| f(*c)).collect(), prec: self.prec };
        g.normalize();
        g
    }

    /// Inverse known below index `prec`.
    ///
    /// Writes `f = f_+ + f_-` where `f_+` starts at the lowest unit coefficient
    /// and `f_-` has nilpotent coefficients; then
    /// `1/f = (1/f_+) * sum_{k<N} (-f_-/f_+)^k`.
    pub fn inverse(&self, r: &ChainRing, prec: i64) -> Result<Laurent> {
        let v0 = self.unit_val(r).ok_or(Error::NotInGroup)?;
        let c0inv = r.inv(self.coeff(v0))?;
        let nil = Laurent::from_coeffs(self.lo, self.coef[..(v0 - self.lo) as usize].to_vec());
        let spread = nil.val().map_or(0, |v| v0 - v);
        let known = self.pbound().saturating_sub(v0);
        let mut q = (prec + v0 + (r.len() as i64) * (spread + 1) + 2).max(4);
        loop {
            let qe = q.min(known);
            let w: Vec<u32> = (0..qe).map(|i| self.coeff(v0 + i)).collect();
            let mut u = vec![0u32; qe as usize];
            if qe > 0 {
                u[0] = c0inv;
            }
            for m in 1..qe as usize {
                let mut acc = 0u32;
                for i in 1..=m {
                    if w[i] != 0 && u[m - i] != 0 {
                        acc = r.add(acc, r.mul(w[i], u[m - i]));
                    }
                }
                u[m] = r.neg(r.mul(c0inv, acc));
            }
            let exact_plus = self.is_exact() && w.iter().skip(1).all(|c| *c == 0) && self.top() == Some(v0);
            let mut inv_plus = Laurent::from_coeffs(-v0, u);
            if !exact_plus {
                inv_plus = inv_plus.with_prec(-v0 + qe);
            }
            let x = nil.mul(&inv_plus, r).neg(r);
            let mut sum = Laurent::constant(r.one());
            let mut term = Laurent::constant(r.one());
            for _ in 1..r.len() {
                term = term.mul(&x, r);
                if term.is_zero() && term.is_exact() {
                    break;
                }
                sum = sum.add(&term, r);
            }
            let res = inv_plus.mul(&sum, r);
            if res.pbound() >= prec {
                return Ok(if res.is_exact() { res } else { res.truncate(prec) });
            }
            if qe >= known {
                return Err(Error::InsufficientWindow(format!(
                    "series inverse needs precision {prec}, operand known to {}",
                    self.pbound()
                )));
            }
            q *= 2;
        }
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.terms().map(|(k, c)| format!("{c}t^{k}")).collect();
        let body = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        match self.prec {
            None => write!(f, "{body}"),
            Some(p) => write!(f, "{body} + O(t^{p})"),
        }
    }
}

/// An `n x n` matrix over `R((t))`, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentMatrix {
    n: usize,
    e: Vec<Laurent>,
}

impl LaurentMatrix {
    pub fn zeros(n: usize) -> Self {
        LaurentMatrix { n, e: vec![Laurent::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = LaurentMatrix::zeros(n);
        for i in 0..n {
            m.e[i * n + i] = Laurent::constant(1);
        }
        m
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Laurent) -> Self {
        LaurentMatrix { n, e: (0..n * n).map(|k| f(k / n, k % n)).collect() }
    }

    /// Diagonal `t^{lam_i}`.
    pub fn cocharacter(lam: &[i32]) -> Self {
        let n = lam.len();
        LaurentMatrix::from_fn(n, |i, j| if i == j { Laurent::monomial(1, lam[i] as i64) } else { Laurent::zero() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Laurent {
        &self.e[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Laurent) {
        self.e[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[Laurent] {
        &self.e
    }

    /// Lowest exponent present, if the matrix is nonzero.
    pub fn vmin(&self) -> Option<i64> {
        self.e.iter().filter_map(|x| x.val()).min()
    }

    pub fn vmax(&self) -> Option<i64> {
        self.e.iter().filter_map(|x| x.top()).max()
    }

    /// Working precision: the minimum over entries (`None` when exact).
    pub fn prec(&self) -> Option<i64> {
        self.e.iter().filter_map(|x| x.prec()).min()
    }

    pub fn mul(&self, o: &LaurentMatrix, r: &ChainRing) -> LaurentMatrix {
        assert_eq!(self.n, o.n);
        let n = self.n;
        LaurentMatrix::from_fn(n, |i, j| {
            let mut acc = Laurent::zero();
            for k in 0..n {
                let (a, b) = (self.get(i, k), o.get(k, j));
                if a.is_zero() && a.is_exact() || b.is_zero() && b.is_exact() {
                    continue;
                }
                acc = acc.add(&a.mul(b, r), r);
            }
            acc
        })
    }

    pub fn shift(&self, k: i64) -> LaurentMatrix {
        LaurentMatrix { n: self.n, e: self.e.iter().map(|x| x.shift(k)).collect() }
    }

    pub fn map_entries(&self, f: impl Fn(&Laurent) -> Laurent) -> LaurentMatrix {
        LaurentMatrix { n: self.n, e: self.e.iter().map(f).collect() }
    }

    pub fn truncate(&self, p: i64) -> LaurentMatrix {
        self.map_entries(|x| x.truncate(p))
    }

    fn minor_matrix(&self, skip_r: usize, skip_c: usize) -> LaurentMatrix {
        let n = self.n - 1;
        let rows: Vec<usize> = (0..self.n).filter(|i| *i != skip_r).collect();
        let cols: Vec<usize> = (0..self.n).filter(|j| *j != skip_c).collect();
        LaurentMatrix::from_fn(n, |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn det(&self, r: &ChainRing) -> Laurent {
        match self.n {
            0 => Laurent::constant(r.one()),
            1 => self.e[0].clone(),
            2 => self.e[0].mul(&self.e[3], r).sub(&self.e[1].mul(&self.e[2], r), r),
            n => {
                let mut acc = Laurent::zero();
                for j in 0..n {
                    let a = self.get(0, j);
                    if a.is_zero() && a.is_exact() {
                        continue;
                    }
                    let term = a.mul(&self.minor_matrix(0, j).det(r), r);
                    acc = if j % 2 == 0 { acc.add(&term, r) } else { acc.sub(&term, r) };
                }
                acc
            }
        }
    }

    pub fn adjugate(&self, r: &ChainRing) -> LaurentMatrix {
        let n = self.n;
        if n == 1 {
            return LaurentMatrix::identity(1);
        }
        LaurentMatrix::from_fn(n, |i, j| {
            let m = self.minor_matrix(j, i).det(r);
            if (i + j) % 2 == 0 {
                m
            } else {
                m.neg(r)
            }
        })
    }

    /// True iff the residue determinant in `F_q((t))` is nonzero.
    pub fn is_group_valid(&self, r: &ChainRing) -> bool {
        self.det(r).unit_val(r).is_some()
    }

    /// Inverse known below `out_prec` in every entry.
    pub fn inverse(&self, r: &ChainRing, out_prec: i64) -> Result<LaurentMatrix> {
        let det = self.det(r);
        if det.unit_val(r).is_none() {
            return Err(Error::NotInGroup);
        }
        let adj = self.adjugate(r);
        let va = adj.e.iter().map(|x| x.val_bound()).min().unwrap_or(0).min(INF / 2);
        let dinv = det.inverse(r, out_prec - va)?;
        let mut out = Vec::with_capacity(self.n * self.n);
        for a in &adj.e {
            let x = a.mul(&dinv, r);
            if x.pbound() < out_prec {
                return Err(Error::InsufficientWindow(format!(
                    "inverse entry known to {} < requested {out_prec}",
                    x.pbound()
                )));
            }
            out.push(if x.is_exact() { x } else { x.truncate(out_prec) });
        }
        Ok(LaurentMatrix { n: self.n, e: out })
    }
}

impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
