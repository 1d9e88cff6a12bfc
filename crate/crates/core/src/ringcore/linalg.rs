use super::ring::{mod_pow, ChainRing};
use crate::error::{Error, Result};

/// Reduced echelon basis of a direct summand of `R^width`.
///
/// Pivots are units normalized to 1 and each pivot column is a unit vector;
/// entries left of a pivot may be nilpotent. The form is unique per summand.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Echelon {
    pub pivots: Vec<usize>,
    pub rows: Vec<Vec<u32>>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Echelon form of the span of `rows`, which must be a direct summand.
pub fn summand_echelon(r: &ChainRing, rows: Vec<Vec<u32>>, width: usize) -> Result<Echelon> {
    let mut rows: Vec<Vec<u32>> = rows.into_iter().filter(|v| v.iter().any(|c| *c != 0)).collect();
    let mut pivots = Vec::new();
    let mut done = 0;
    for col in 0..width {
        let Some(i) = (done..rows.len()).find(|&i| r.is_unit(rows[i][col])) else {
            continue;
        };
        rows.swap(done, i);
        let inv = r.inv(rows[done][col])?;
        for c in rows[done].iter_mut() {
            *c = r.mul(*c, inv);
        }
        let piv = rows[done].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k == done || row[col] == 0 {
                continue;
            }
            let f = row[col];
            for (x, y) in row.iter_mut().zip(piv.iter()) {
                if *y != 0 {
                    *x = r.sub(*x, r.mul(f, *y));
                }
            }
        }
        pivots.push(col);
        done += 1;
    }
    if rows[done..].iter().any(|v| v.iter().any(|c| *c != 0)) {
        return Err(Error::NotASummand);
    }
    rows.truncate(done);
    Ok(Echelon { pivots, rows })
}

fn inv_mod(a: u32, p: u32) -> u32 {
    mod_pow(a as u64, (p - 2) as u64, p as u64) as u32
}

/// Row-reduce over `F_p` in place; returns pivot columns.
pub fn fp_rref(p: u32, m: &mut [Vec<u32>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut done = 0;
    for col in 0..ncols {
        let Some(i) = (done..m.len()).find(|&i| !m[i][col].is_multiple_of(p)) else {
            continue;
        };
        m.swap(done, i);
        let inv = inv_mod(m[done][col] % p, p) as u64;
        for c in m[done].iter_mut() {
            *c = ((*c as u64 * inv) % p as u64) as u32;
        }
        let piv = m[done].clone();
        for (k, row) in m.iter_mut().enumerate() {
            if k == done || row[col] % p == 0 {
                continue;
            }
            let f = (row[col] % p) as u64;
            for (x, y) in row.iter_mut().zip(piv.iter()) {
                let sub = (f * *y as u64) % p as u64;
                *x = ((*x as u64 % p as u64 + p as u64 - sub) % p as u64) as u32;
            }
        }
        pivots.push(col);
        done += 1;
    }
    pivots
}

pub fn fp_rank(p: u32, m: &[Vec<u32>], ncols: usize) -> usize {
    let mut m = m.to_vec();
    fp_rref(p, &mut m, ncols).len()
}

/// Basis of the right kernel `{z : m z = 0}`.
pub fn fp_kernel(p: u32, m: &[Vec<u32>], ncols: usize) -> Vec<Vec<u32>> {
    let mut m = m.to_vec();
    let pivots = fp_rref(p, &mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut z = vec![0u32; ncols];
            z[f] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                z[pc] = (p - m[row][f] % p) % p;
            }
            z
        })
        .collect()
}

/// Solution set of `a z = b` over `F_p`: a particular solution and a kernel basis.
pub fn fp_solve(p: u32, a: &[Vec<u32>], b: &[u32], ncols: usize) -> Option<(Vec<u32>, Vec<Vec<u32>>)> {
    let mut aug: Vec<Vec<u32>> = a
        .iter()
        .zip(b.iter())
        .map(|(row, rhs)| {
            let mut v = row.clone();
            v.push(*rhs % p);
            v
        })
        .collect();
    let pivots = fp_rref(p, &mut aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut part = vec![0u32; ncols];
    for (row, &pc) in pivots.iter().enumerate() {
        part[pc] = aug[row][ncols];
    }
    let coeffs: Vec<Vec<u32>> = aug.iter().map(|r| r[..ncols].to_vec()).collect();
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let kernel = free
        .iter()
        .map(|&f| {
            let mut z = vec![0u32; ncols];
            z[f] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                z[pc] = (p - coeffs[row][f] % p) % p;
            }
            z
        })
        .collect();
    Some((part, kernel))
}

/// Iterate every `F_p`-combination `part + sum c_i k_i`.
pub fn affine_points(p: u32, part: &[u32], kernel: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut out = vec![part.to_vec()];
    for k in kernel {
        let mut next = Vec::with_capacity(out.len() * p as usize);
        for base in &out {
            for c in 0..p {
                next.push(base.iter().zip(k.iter()).map(|(x, y)| (x + c * y) % p).collect());
            }
        }
        out = next;
    }
    out
}
