use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::is_prime;
use crate::error::{Error, Result};

const MAX_LEN: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Flavor {
    /// `F_p[x]/(x^N)`
    EqualChar,
    /// `Z/p^N`
    MixedChar,
}

/// A finite chain ring `O/m^N` with residue field `F_p`.
///
/// Elements are encoded as integers in `[0, p^N)`. For `MixedChar` the code is
/// the residue itself; for `EqualChar` the base-`p` digits of the code are the
/// coefficients of `1, x, ..., x^{N-1}`. In both flavors the `k`-th digit is the
/// coefficient of `pi^k`, reduction to length `e` is `code mod p^e`, and the
/// code of `pi^k` is `p^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainRing {
    flavor: Flavor,
    p: u32,
    len: u32,
    size: u32,
}

pub fn make_ring(flavor: Flavor, p: u32, len: u32) -> Result<ChainRing> {
    ChainRing::new(flavor, p, len)
}

impl ChainRing {
    pub fn new(flavor: Flavor, p: u32, len: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if len < 1 {
            return Err(Error::BadLength(len));
        }
        let size = (p as u64).checked_pow(len).filter(|s| *s < (1u64 << 31));
        match size {
            Some(size) if (len as usize) <= MAX_LEN => Ok(ChainRing { flavor, p, len, size: size as u32 }),
            _ => Err(Error::RingTooLarge { p, len }),
        }
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }
    pub fn p(&self) -> u32 {
        self.p
    }
    /// Residue field size.
    pub fn q(&self) -> u32 {
        self.p
    }
    /// Nilpotency length `N`.
    pub fn len(&self) -> u32 {
        self.len
    }
    pub fn size(&self) -> u32 {
        self.size
    }

    /// Same flavor and prime, length `len`.
    pub fn with_len(&self, len: u32) -> Result<ChainRing> {
        ChainRing::new(self.flavor, self.p, len)
    }

    pub fn residue_field(&self) -> ChainRing {
        ChainRing { flavor: self.flavor, p: self.p, len: 1, size: self.p }
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.size
    }

    pub fn zero(&self) -> u32 {
        0
    }
    pub fn one(&self) -> u32 {
        1 % self.size
    }

    /// Code of `pi^k` (zero once `k >= N`).
    pub fn pi_pow(&self, k: u32) -> u32 {
        if k >= self.len {
            0
        } else {
            self.p.pow(k)
        }
    }

    pub fn from_int(&self, v: i64) -> u32 {
        match self.flavor {
            Flavor::EqualChar => v.rem_euclid(self.p as i64) as u32,
            Flavor::MixedChar => v.rem_euclid(self.size as i64) as u32,
        }
    }

    pub fn residue(&self, a: u32) -> u32 {
        a % self.p
    }

    pub fn is_unit(&self, a: u32) -> bool {
        !a.is_multiple_of(self.p)
    }

    pub fn digit(&self, a: u32, k: u32) -> u32 {
        (a / self.p.pow(k)) % self.p
    }

    /// Largest `k` with `a` in `pi^k R`; `N` for zero.
    pub fn valuation(&self, a: u32) -> u32 {
        if a == 0 {
            return self.len;
        }
        let mut k = 0;
        let mut b = a;
        while b.is_multiple_of(self.p) {
            b /= self.p;
            k += 1;
        }
        k
    }

    pub fn reduce(&self, a: u32, len: u32) -> u32 {
        if len >= self.len {
            a
        } else {
            a % self.p.pow(len)
        }
    }

    fn digits(&self, a: u32) -> [u32; MAX_LEN] {
        let mut d = [0u32; MAX_LEN];
        let mut b = a;
        for slot in d.iter_mut().take(self.len as usize) {
            *slot = b % self.p;
            b /= self.p;
        }
        d
    }

    fn undigits(&self, d: &[u32; MAX_LEN]) -> u32 {
        let mut a = 0u32;
        for i in (0..self.len as usize).rev() {
            a = a * self.p + d[i];
        }
        a
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        match self.flavor {
            Flavor::MixedChar => ((a as u64 + b as u64) % self.size as u64) as u32,
            Flavor::EqualChar => {
                if self.len == 1 {
                    return (a + b) % self.p;
                }
                let (da, db) = (self.digits(a), self.digits(b));
                let mut d = [0u32; MAX_LEN];
                for i in 0..self.len as usize {
                    d[i] = (da[i] + db[i]) % self.p;
                }
                self.undigits(&d)
            }
        }
    }

    pub fn neg(&self, a: u32) -> u32 {
        match self.flavor {
            Flavor::MixedChar => (self.size - a) % self.size,
            Flavor::EqualChar => {
                if self.len == 1 {
                    return (self.p - a) % self.p;
                }
                let da = self.digits(a);
                let mut d = [0u32; MAX_LEN];
                for i in 0..self.len as usize {
                    d[i] = (self.p - da[i]) % self.p;
                }
                self.undigits(&d)
            }
        }
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match self.flavor {
            Flavor::MixedChar => ((a as u64 * b as u64) % self.size as u64) as u32,
            Flavor::EqualChar => {
                if self.len == 1 {
                    return ((a as u64 * b as u64) % self.p as u64) as u32;
                }
                let (da, db) = (self.digits(a), self.digits(b));
                let n = self.len as usize;
                let mut d = [0u64; MAX_LEN];
                for i in 0..n {
                    if da[i] == 0 {
                        continue;
                    }
                    for j in 0..n - i {
                        d[i + j] += da[i] as u64 * db[j] as u64;
                    }
                }
                let mut out = [0u32; MAX_LEN];
                for i in 0..n {
                    out[i] = (d[i] % self.p as u64) as u32;
                }
                self.undigits(&out)
            }
        }
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if !self.is_unit(a) {
            return Err(Error::NotAUnit);
        }
        // residue inverse by Fermat, then Newton steps y <- y(2 - a y)
        let r = a % self.p;
        let mut y = mod_pow(r as u64, (self.p - 2) as u64, self.p as u64) as u32;
        let two = self.from_int(2);
        let mut prec = 1;
        while prec < self.len {
            y = self.mul(y, self.sub(two, self.mul(a, y)));
            prec *= 2;
        }
        debug_assert_eq!(self.mul(a, y), self.one());
        Ok(y)
    }

    pub fn elem(&self, code: u32) -> RingElem {
        RingElem { ring: *self, code: code % self.size }
    }

    /// Parse sums of terms `c`, `x`, `x^k`, `c*x^k`, where `x` is the uniformizer.
    pub fn parse_elem(&self, s: &str) -> Result<u32> {
        let bad = || Error::Parse(format!("bad ring element '{s}'"));
        let mut acc = 0;
        for term in s.split('+').map(str::trim) {
            if term.is_empty() {
                return Err(bad());
            }
            let (coef, mono) = match term.find('x') {
                None => (term, None),
                Some(i) => (term[..i].trim_end_matches('*').trim(), Some(&term[i + 1..])),
            };
            let c = if coef.is_empty() { 1 } else { coef.parse::<i64>().map_err(|_| bad())? };
            let k = match mono {
                None => 0,
                Some("") => 1,
                Some(e) => e.strip_prefix('^').ok_or_else(bad)?.parse::<u32>().map_err(|_| bad())?,
            };
            acc = self.add(acc, self.mul(self.from_int(c), self.pi_pow(k)));
        }
        Ok(acc)
    }
}

pub(crate) fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

impl fmt::Display for ChainRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.flavor {
            Flavor::EqualChar => write!(f, "Fp[x]/x^N:p={},N={}", self.p, self.len),
            Flavor::MixedChar => write!(f, "Z/p^N:p={},N={}", self.p, self.len),
        }
    }
}

impl FromStr for ChainRing {
    type Err = Error;

    /// Accepts `Fp[x]/x^N:p=5,N=2` and `Z/p^N:p=5,N=2` (keys in any order).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, params) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("ring string '{s}' lacks ':'")))?;
        let flavor = match head.trim() {
            "Fp[x]/x^N" => Flavor::EqualChar,
            "Z/p^N" => Flavor::MixedChar,
            other => return Err(Error::Parse(format!("unknown ring family '{other}'"))),
        };
        let (mut p, mut len) = (None, None);
        for kv in params.split(',') {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad parameter '{kv}'")))?;
            let v: u32 = v.trim().parse().map_err(|_| Error::Parse(format!("bad value '{v}'")))?;
            match k.trim() {
                "p" => p = Some(v),
                "N" => len = Some(v),
                other => return Err(Error::Parse(format!("unknown key '{other}'"))),
            }
        }
        let p = p.ok_or_else(|| Error::Parse("missing p".into()))?;
        let len = len.ok_or_else(|| Error::Parse("missing N".into()))?;
        ChainRing::new(flavor, p, len)
    }
}

/// An element together with its ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RingElem {
    pub ring: ChainRing,
    pub code: u32,
}

impl RingElem {
    /// Coordinate vector: `N` coefficients for `EqualChar`, the residue for `MixedChar`.
    pub fn coords(&self) -> Vec<u32> {
        match self.ring.flavor {
            Flavor::EqualChar => (0..self.ring.len).map(|k| self.ring.digit(self.code, k)).collect(),
            Flavor::MixedChar => vec![self.code],
        }
    }
    pub fn is_unit(&self) -> bool {
        self.ring.is_unit(self.code)
    }
    pub fn residue(&self) -> u32 {
        self.ring.residue(self.code)
    }
    pub fn inv(&self) -> Result<RingElem> {
        Ok(RingElem { ring: self.ring, code: self.ring.inv(self.code)? })
    }
}

pub fn invert_elem(a: RingElem) -> Result<RingElem> {
    a.inv()
}

impl Add for RingElem {
    type Output = RingElem;
    fn add(self, o: RingElem) -> RingElem {
        assert_eq!(self.ring, o.ring);
        RingElem { ring: self.ring, code: self.ring.add(self.code, o.code) }
    }
}
impl Sub for RingElem {
    type Output = RingElem;
    fn sub(self, o: RingElem) -> RingElem {
        assert_eq!(self.ring, o.ring);
        RingElem { ring: self.ring, code: self.ring.sub(self.code, o.code) }
    }
}
impl Mul for RingElem {
    type Output = RingElem;
    fn mul(self, o: RingElem) -> RingElem {
        assert_eq!(self.ring, o.ring);
        RingElem { ring: self.ring, code: self.ring.mul(self.code, o.code) }
    }
}
impl Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem { ring: self.ring, code: self.ring.neg(self.code) }
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.ring.flavor {
            Flavor::MixedChar => write!(f, "{}", self.code),
            Flavor::EqualChar => {
                let terms: Vec<String> = self
                    .coords()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| **c != 0)
                    .map(|(k, c)| match k {
                        0 => format!("{c}"),
                        1 => format!("{c}x"),
                        _ => format!("{c}x^{k}"),
                    })
                    .collect();
                if terms.is_empty() {
                    write!(f, "0")
                } else {
                    write!(f, "{}", terms.join("+"))
                }
            }
        }
    }
}
