//! Root systems, Chevalley bases mod `p` and principal `sl2` triples.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ringcore::is_prime;
use crate::ringcore::linalg::{fp_kernel, fp_rank};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CartanType {
    pub family: char,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: char, rank: usize) -> Result<Self> {
        let ok = match family {
            'A' => rank >= 1,
            'B' | 'C' => rank >= 2,
            'D' => rank >= 4,
            'E' => (6..=8).contains(&rank),
            'F' => rank == 4,
            'G' => rank == 2,
            _ => false,
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(Error::InvalidType(format!("{family}{rank}")))
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let fam = chars.next().ok_or_else(|| Error::InvalidType(s.into()))?.to_ascii_uppercase();
        let rank = chars.as_str().parse().map_err(|_| Error::InvalidType(s.into()))?;
        CartanType::new(fam, rank)
    }
}

/// Gram matrix `(alpha_i, alpha_j)` of the simple roots, short roots of length 2.
fn gram(t: CartanType) -> Vec<Vec<i64>> {
    let r = t.rank;
    let mut b = vec![vec![0i64; r]; r];
    let link = |b: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
        b[i][j] = v;
        b[j][i] = v;
    };
    match t.family {
        'A' | 'D' | 'E' => {
            for i in 0..r {
                b[i][i] = 2;
            }
            match t.family {
                'A' => (0..r - 1).for_each(|i| link(&mut b, i, i + 1, -1)),
                'D' => {
                    (0..r - 2).for_each(|i| link(&mut b, i, i + 1, -1));
                    link(&mut b, r - 3, r - 1, -1);
                }
                _ => {
                    // Bourbaki labelling: 1-3-4-5-..., 2 attached to 4
                    link(&mut b, 0, 2, -1);
                    link(&mut b, 1, 3, -1);
                    (2..r - 1).for_each(|i| link(&mut b, i, i + 1, -1));
                }
            }
        }
        'B' => {
            for i in 0..r - 1 {
                b[i][i] = 4;
            }
            b[r - 1][r - 1] = 2;
            (0..r - 1).for_each(|i| link(&mut b, i, i + 1, -2));
        }
        'C' => {
            for i in 0..r - 1 {
                b[i][i] = 2;
            }
            b[r - 1][r - 1] = 4;
            (0..r - 2).for_each(|i| link(&mut b, i, i + 1, -1));
            link(&mut b, r - 2, r - 1, -2);
        }
        'F' => {
            b[0][0] = 4;
            b[1][1] = 4;
            b[2][2] = 2;
            b[3][3] = 2;
            link(&mut b, 0, 1, -2);
            link(&mut b, 1, 2, -2);
            link(&mut b, 2, 3, -1);
        }
        'G' => {
            b[0][0] = 2;
            b[1][1] = 6;
            link(&mut b, 0, 1, -3);
        }
        _ => unreachable!("validated type"),
    }
    b
}

#[derive(Clone, Debug, Serialize)]
pub struct RootSystemData {
    pub cartan_type: CartanType,
    pub rank: usize,
    /// `cartan[i][j] = <alpha_j, alpha_i^vee>`.
    pub cartan: Vec<Vec<i64>>,
    /// Positive roots in simple-root coordinates, ordered by height and then by
    /// decreasing lexicographic order, so `positive[i] = alpha_i` for `i < rank`.
    pub positive: Vec<Vec<i64>>,
    /// Coroots of the positive roots in simple-coroot coordinates.
    pub coroots: Vec<Vec<i64>>,
    pub gram: Vec<Vec<i64>>,
    /// `2 rho^vee = sum a_i alpha_i^vee`.
    pub a: Vec<i64>,
    pub coxeter: usize,
    pub exponents: Vec<usize>,
    pub a_g: i64,
    pub char_bound: u32,
}

impl RootSystemData {
    pub fn dim(&self) -> usize {
        self.rank + 2 * self.positive.len()
    }

    pub fn height(&self, i: usize) -> i64 {
        self.positive[i].iter().sum()
    }

    fn ip(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += x[i] * self.gram[i][j] * y[j];
            }
        }
        s
    }
}

pub fn build_root_system(t: CartanType) -> Result<RootSystemData> {
    let t = CartanType::new(t.family, t.rank)?;
    let r = t.rank;
    let g = gram(t);
    let cartan: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| 2 * g[i][j] / g[i][i]).collect()).collect();
    let pairing = |beta: &[i64], i: usize| -> i64 { (0..r).map(|j| beta[j] * cartan[i][j]).sum() };
    let mut positive: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| (i == j) as i64).collect()).collect();
    let mut layer = positive.clone();
    while !layer.is_empty() {
        let mut next: Vec<Vec<i64>> = Vec::new();
        for beta in &layer {
            for i in 0..r {
                // alpha_i-string through beta: beta - p alpha_i, ..., beta + q alpha_i
                let mut p = 0;
                loop {
                    let mut down = beta.clone();
                    down[i] -= p + 1;
                    if positive.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let q = p - pairing(beta, i);
                if q > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !positive.contains(&up) && !next.contains(&up) {
                        next.push(up);
                    }
                }
            }
        }
        positive.extend(next.iter().cloned());
        layer = next;
    }
    positive.sort_by(|x, y| (x.iter().sum::<i64>(), y).cmp(&(y.iter().sum::<i64>(), x)));
    let len2 = |x: &[i64]| -> i64 {
        let mut s = 0;
        for i in 0..r {
            for j in 0..r {
                s += x[i] * g[i][j] * x[j];
            }
        }
        s
    };
    let coroots: Vec<Vec<i64>> = positive.iter().map(|al| (0..r).map(|i| al[i] * g[i][i] / len2(al)).collect()).collect();
    let a: Vec<i64> = (0..r).map(|i| coroots.iter().map(|c| c[i]).sum()).collect();
    let max_ht = positive.iter().map(|x| x.iter().sum::<i64>()).max().unwrap_or(0) as usize;
    let coxeter = max_ht + 1;
    let n_k = |k: usize| positive.iter().filter(|x| x.iter().sum::<i64>() as usize == k).count();
    let mut exponents = Vec::new();
    for k in 1..coxeter {
        for _ in 0..n_k(k) - n_k(k + 1) {
            exponents.push(k);
        }
    }
    let a_g = *a.iter().max().expect("nonempty");
    let char_bound = a_g.max(4 * (coxeter as i64 - 1)) as u32;
    let rsd = RootSystemData { cartan_type: t, rank: r, cartan, positive, coroots, gram: g, a, coxeter, exponents, a_g, char_bound };
    if rsd.positive.len() * 2 != r * coxeter || rsd.exponents.len() != r || rsd.exponents.iter().map(|d| 2 * d + 1).sum::<usize>() != rsd.dim() {
        return Err(Error::Audit(format!("root system {t} fails counting identities")));
    }
    Ok(rsd)
}

/// Integer structure constants of a Chevalley basis.
///
/// Basis order: `H_1..H_r`, then `X_alpha` for positive roots in the order of
/// [`RootSystemData::positive`], then `X_{-alpha}` in the same order. On each
/// extraspecial pair `(alpha, beta)` (alpha least among special pairs with the
/// given sum) `N_{alpha,beta} = p + 1`, with `beta - p alpha` the bottom of the
/// `alpha`-string through `beta`.
#[derive(Clone, Debug)]
pub struct ChevalleyTable {
    pub rsd: RootSystemData,
    roots: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    n: HashMap<(usize, usize), i64>,
}

impl ChevalleyTable {
    fn m(&self) -> usize {
        self.rsd.positive.len()
    }

    fn neg(&self, i: usize) -> usize {
        let m = self.m();
        if i < m {
            i + m
        } else {
            i - m
        }
    }

    fn sum(&self, i: usize, j: usize) -> Option<usize> {
        let s: Vec<i64> = self.roots[i].iter().zip(&self.roots[j]).map(|(x, y)| x + y).collect();
        self.index.get(&s).copied()
    }

    fn len2(&self, i: usize) -> i64 {
        self.rsd.ip(&self.roots[i], &self.roots[i])
    }

    /// `N_{x,y}` for arbitrary roots (zero when `x + y` is not a root).
    pub fn n(&self, x: usize, y: usize) -> i64 {
        let Some(z) = self.sum(x, y).map(|s| self.neg(s)) else {
            return 0;
        };
        let m = self.m();
        let (px, py) = (x < m, y < m);
        match (px, py) {
            (true, true) => {
                if x < y {
                    self.n[&(x, y)]
                } else {
                    -self.n[&(y, x)]
                }
            }
            (false, false) => -self.n(self.neg(x), self.neg(y)),
            _ => {
                let pz = z < m;
                if pz == px {
                    self.len2(z) * self.n(z, x) / self.len2(y)
                } else {
                    self.len2(z) * self.n(y, z) / self.len2(x)
                }
            }
        }
    }

    /// Bracket of two basis elements as a sparse integer vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<(usize, i64)> {
        let r = self.rsd.rank;
        match (i < r, j < r) {
            (true, true) => vec![],
            (true, false) => {
                let c: i64 = (0..r).map(|k| self.roots[j - r][k] * self.rsd.cartan[i][k]).sum();
                if c == 0 {
                    vec![]
                } else {
                    vec![(j, c)]
                }
            }
            (false, true) => self.bracket_basis(j, i).into_iter().map(|(k, c)| (k, -c)).collect(),
            (false, false) => {
                let (x, y) = (i - r, j - r);
                if self.neg(x) == y {
                    let m = self.m();
                    let (cor, sign) = if x < m { (&self.rsd.coroots[x], 1) } else { (&self.rsd.coroots[x - m], -1) };
                    cor.iter().enumerate().filter(|(_, c)| **c != 0).map(|(k, c)| (k, sign * c)).collect()
                } else {
                    match self.sum(x, y) {
                        Some(s) => vec![(s + r, self.n(x, y))],
                        None => vec![],
                    }
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.rsd.dim()
    }

    /// Jacobi identity over `Z` on all basis triples.
    pub fn jacobi_holds(&self) -> bool {
        let d = self.dim();
        let br = |u: &[(usize, i64)], k: usize| -> HashMap<usize, i64> {
            let mut acc = HashMap::new();
            for &(i, c) in u {
                for (o, v) in self.bracket_basis(i, k) {
                    *acc.entry(o).or_insert(0) += c * v;
                }
            }
            acc
        };
        for i in 0..d {
            for j in i + 1..d {
                let ij = self.bracket_basis(i, j);
                for k in j + 1..d {
                    let jk = self.bracket_basis(j, k);
                    let ki = self.bracket_basis(k, i);
                    let mut tot = br(&ij, k);
                    for (o, v) in br(&jk, i).into_iter().chain(br(&ki, j)) {
                        *tot.entry(o).or_insert(0) += v;
                    }
                    if tot.values().any(|v| *v != 0) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `|N_{alpha,beta}| = p + 1` for every pair of roots with `alpha + beta` a root.
    pub fn string_rule_holds(&self) -> bool {
        let total = self.roots.len();
        for x in 0..total {
            for y in 0..total {
                if self.sum(x, y).is_none() {
                    continue;
                }
                let mut p = 0;
                loop {
                    let v: Vec<i64> = self.roots[y].iter().zip(&self.roots[x]).map(|(b, a)| b - (p + 1) * a).collect();
                    if self.index.contains_key(&v) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if self.n(x, y).abs() != p + 1 {
                    return false;
                }
            }
        }
        true
    }

    pub fn root_index(&self, root: &[i64]) -> Option<usize> {
        self.index.get(root).copied()
    }
}

pub fn chevalley_structure_constants(rsd: &RootSystemData) -> Result<ChevalleyTable> {
    let m = rsd.positive.len();
    let mut roots = rsd.positive.clone();
    roots.extend(rsd.positive.iter().map(|x| x.iter().map(|c| -c).collect::<Vec<_>>()));
    let index: HashMap<Vec<i64>, usize> = roots.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
    let mut tab = ChevalleyTable { rsd: rsd.clone(), roots, index, n: HashMap::new() };
    for xi in 0..m {
        let special: Vec<(usize, usize)> = (0..xi)
            .flat_map(|a| (a + 1..xi).map(move |b| (a, b)))
            .filter(|&(a, b)| tab.sum(a, b) == Some(xi))
            .collect();
        let Some(&(al, be)) = special.first() else { continue };
        let mut p = 0;
        while tab.index.contains_key(&tab.roots[be].iter().zip(&tab.roots[al]).map(|(b, a)| b - (p + 1) * a).collect::<Vec<_>>()) {
            p += 1;
        }
        tab.n.insert((al, be), p + 1);
        let nab = p + 1;
        let lxi = tab.len2(xi);
        for &(ga, de) in &special[1..] {
            let mut acc = Ratio::from_integer(0i64);
            let diff = |u: usize, v: usize| -> Option<usize> {
                let d: Vec<i64> = tab.roots[u].iter().zip(&tab.roots[v]).map(|(x, y)| x - y).collect();
                tab.index.get(&d).copied()
            };
            if let Some(bg) = diff(be, ga) {
                acc += Ratio::new(tab.n(be, tab.neg(ga)) * tab.n(al, tab.neg(de)), tab.len2(bg));
            }
            if let Some(ag) = diff(al, ga) {
                acc += Ratio::new(tab.n(tab.neg(ga), al) * tab.n(be, tab.neg(de)), tab.len2(ag));
            }
            let v = acc * Ratio::new(lxi, nab);
            if !v.is_integer() {
                return Err(Error::Audit(format!("non-integral structure constant in {}", rsd.cartan_type)));
            }
            tab.n.insert((ga, de), v.to_integer());
        }
    }
    if !tab.string_rule_holds() || !tab.jacobi_holds() {
        return Err(Error::Audit(format!("Chevalley basis of {} fails self-check", rsd.cartan_type)));
    }
    Ok(tab)
}

/// The Chevalley Lie algebra over `F_p`, optionally extended by a central summand.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    pub table: ChevalleyTable,
    pub p: u32,
    pub center: usize,
}

/// Coefficient vector over `F_p` in the basis of a [`LieAlgebra`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieElement(pub Vec<u32>);

impl LieAlgebra {
    pub fn new(table: ChevalleyTable, p: u32, center: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(LieAlgebra { table, p, center })
    }

    pub fn dim(&self) -> usize {
        self.table.dim() + self.center
    }

    fn reduce(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    pub fn zero(&self) -> LieElement {
        LieElement(vec![0; self.dim()])
    }

    pub fn basis(&self, i: usize) -> LieElement {
        let mut z = self.zero();
        z.0[i] = 1;
        z
    }

    pub fn add_scaled(&self, x: &mut LieElement, c: i64, i: usize) {
        x.0[i] = self.reduce(x.0[i] as i64 + c);
    }

    pub fn bracket(&self, x: &LieElement, y: &LieElement) -> LieElement {
        let p = self.p as u64;
        let core = self.table.dim();
        let mut out = vec![0u64; self.dim()];
        for (i, &a) in x.0.iter().enumerate().take(core).filter(|(_, a)| **a != 0) {
            for (j, &b) in y.0.iter().enumerate().take(core).filter(|(_, b)| **b != 0) {
                for (k, c) in self.table.bracket_basis(i, j) {
                    out[k] = (out[k] + a as u64 * b as u64 % p * self.reduce(c) as u64) % p;
                }
            }
        }
        LieElement(out.into_iter().map(|v| v as u32).collect())
    }

    /// Matrix of `ad x` with rows indexed by outputs.
    pub fn ad(&self, x: &LieElement) -> Vec<Vec<u32>> {
        let d = self.dim();
        let cols: Vec<LieElement> = (0..d).map(|j| self.bracket(x, &self.basis(j))).collect();
        (0..d).map(|i| cols.iter().map(|c| c.0[i]).collect()).collect()
    }

    pub fn centralizer_dim(&self, xs: &[&LieElement]) -> usize {
        let rows: Vec<Vec<u32>> = xs.iter().flat_map(|x| self.ad(x)).collect();
        self.dim() - fp_rank(self.p, &rows, self.dim())
    }
}

#[derive(Clone, Debug)]
pub struct Triple {
    pub e: LieElement,
    pub h0: LieElement,
    pub f: LieElement,
}

/// `h0 = sum a_i H_i`, `e = sum X_{alpha_i}`, `f = sum a_i X_{-alpha_i}`.
pub fn principal_triple(alg: &LieAlgebra) -> Result<Triple> {
    let rsd = &alg.table.rsd;
    if alg.p <= rsd.char_bound {
        return Err(Error::CharTooSmall { p: alg.p, bound: rsd.char_bound });
    }
    let r = rsd.rank;
    let m = rsd.positive.len();
    let (mut e, mut h0, mut f) = (alg.zero(), alg.zero(), alg.zero());
    for i in 0..r {
        alg.add_scaled(&mut h0, rsd.a[i], i);
        alg.add_scaled(&mut e, 1, r + i);
        alg.add_scaled(&mut f, rsd.a[i], r + m + i);
    }
    Ok(Triple { e, h0, f })
}

pub fn scale(alg: &LieAlgebra, x: &LieElement, c: i64) -> LieElement {
    let c = alg.reduce(c) as u64;
    LieElement(x.0.iter().map(|v| (*v as u64 * c % alg.p as u64) as u32).collect())
}

pub fn triple_relations_hold(alg: &LieAlgebra, t: &Triple) -> bool {
    alg.bracket(&t.h0, &t.e) == scale(alg, &t.e, 2) && alg.bracket(&t.h0, &t.f) == scale(alg, &t.f, -2) && alg.bracket(&t.e, &t.f) == t.h0
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sl2Decomposition {
    /// Highest weights, one per irreducible summand, ascending.
    pub highest_weights: Vec<u32>,
    pub multiplicity_free: bool,
    /// `(weight, dimension)` of the `ad h0` eigenspaces, ascending by weight.
    pub weight_dims: Vec<(i64, usize)>,
}

/// Decompose `g` under the triple by counting `ad e`-highest weight vectors
/// in each `ad h0`-eigenspace.
pub fn sl2_decomposition(alg: &LieAlgebra, t: &Triple) -> Result<Sl2Decomposition> {
    let d = alg.dim();
    let p = alg.p as i64;
    let adh = alg.ad(&t.h0);
    let mut eig: Vec<i64> = Vec::with_capacity(d);
    for j in 0..d {
        if (0..d).any(|i| i != j && adh[i][j] != 0) {
            return Err(Error::DecompositionFailure("ad h0 is not diagonal in the Chevalley basis".into()));
        }
        let v = adh[j][j] as i64;
        eig.push(if v > p / 2 { v - p } else { v });
    }
    let mut weights: Vec<i64> = eig.clone();
    weights.sort_unstable();
    weights.dedup();
    let ade = alg.ad(&t.e);
    let mut highest = Vec::new();
    let mut weight_dims = Vec::new();
    for &w in &weights {
        let cols: Vec<usize> = (0..d).filter(|&j| eig[j] == w).collect();
        weight_dims.push((w, cols.len()));
        let sub: Vec<Vec<u32>> = ade.iter().map(|row| cols.iter().map(|&j| row[j]).collect()).collect();
        let k = fp_kernel(alg.p, &sub, cols.len()).len();
        if k > 0 {
            if w < 0 || w % 2 != 0 {
                return Err(Error::DecompositionFailure(format!("highest weight {w}")));
            }
            highest.extend(std::iter::repeat_n(w as u32, k));
        }
    }
    if highest.iter().map(|w| *w as usize + 1).sum::<usize>() != d {
        return Err(Error::DecompositionFailure("summand dimensions do not add up".into()));
    }
    for &(w, dim) in &weight_dims {
        let predicted = highest.iter().filter(|&&h| h as i64 >= w.abs() && (h as i64 - w) % 2 == 0).count();
        if predicted != dim {
            return Err(Error::DecompositionFailure(format!("weight {w} has dimension {dim}, expected {predicted}")));
        }
    }
    let mut uniq = highest.clone();
    uniq.dedup();
    Ok(Sl2Decomposition { multiplicity_free: uniq.len() == highest.len(), highest_weights: highest, weight_dims })
}

/// Dimension of the joint centralizer of the triple.
pub fn centralizer_of_triple(alg: &LieAlgebra, t: &Triple) -> usize {
    alg.centralizer_dim(&[&t.e, &t.h0, &t.f])
}

/// Symmetric-power vanishing depth required of the `SL_2`-bundle.
pub fn nice_level_bound(rsd: &RootSystemData) -> usize {
    let d = &rsd.exponents;
    let r = d.len();
    if rsd.cartan_type.family == 'D' && rsd.rank.is_multiple_of(2) {
        4 * (2 * rsd.rank - 3)
    } else if r >= 2 {
        2 * d[r - 1] + 2 * d[r - 2]
    } else {
        2 * d[0]
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Sl2Certificate {
    pub cartan_type: String,
    pub p: u32,
    pub dim: usize,
    pub a: Vec<i64>,
    pub a_g: i64,
    pub coxeter: usize,
    pub exponents: Vec<usize>,
    pub char_bound: u32,
    pub jacobi: bool,
    pub relations: bool,
    pub e_centralizer_dim: usize,
    pub h0_centralizer_dim: usize,
    pub decomposition: Sl2Decomposition,
    pub expected_weights: Vec<u32>,
    pub weights_match: bool,
    pub centralizer_dim: usize,
    pub nice_level_bound: usize,
    pub pass: bool,
}

/// Run the whole suite for one type and prime.
pub fn sl2_check(t: CartanType, p: u32) -> Result<Sl2Certificate> {
    let rsd = build_root_system(t)?;
    let tab = chevalley_structure_constants(&rsd)?;
    let alg = LieAlgebra::new(tab, p, 0)?;
    let tr = principal_triple(&alg)?;
    let relations = triple_relations_hold(&alg, &tr);
    let e_c = alg.centralizer_dim(&[&tr.e]);
    let h_c = alg.centralizer_dim(&[&tr.h0]);
    let dec = sl2_decomposition(&alg, &tr)?;
    let expected: Vec<u32> = rsd.exponents.iter().map(|d| 2 * *d as u32).collect();
    let cz = centralizer_of_triple(&alg, &tr);
    let weights_match = dec.highest_weights == expected;
    let pass = relations && e_c == rsd.rank && h_c == rsd.rank && weights_match && dec.multiplicity_free && cz == 0;
    Ok(Sl2Certificate {
        cartan_type: t.to_string(),
        p,
        dim: rsd.dim(),
        a: rsd.a.clone(),
        a_g: rsd.a_g,
        coxeter: rsd.coxeter,
        exponents: rsd.exponents.clone(),
        char_bound: rsd.char_bound,
        jacobi: true,
        relations,
        e_centralizer_dim: e_c,
        h0_centralizer_dim: h_c,
        decomposition: dec,
        expected_weights: expected,
        weights_match,
        centralizer_dim: cz,
        nice_level_bound: nice_level_bound(&rsd),
        pass,
    })
}

/// The `k` smallest primes above the characteristic bound.
pub fn primes_above(bound: u32, k: usize) -> Vec<u32> {
    (bound + 1..).filter(|&n| is_prime(n)).take(k).collect()
}
