//! The residue field `F_q = F_{p^f}`.
//!
//! Elements are packed into a single `u32`: the element with coefficient
//! vector `(c_0, .., c_{f-1})` over the basis `1, t, .., t^{f-1}` is stored as
//! `c_0 + c_1 p + .. + c_{f-1} p^{f-1}`. The field itself owns the modulus and,
//! for small non-prime fields, log/exp tables for multiplication.

use crate::arith;
use crate::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 31;

const TABLE_LIMIT: u64 = 1 << 18;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElem(u32);

impl FqElem {
    /// Position of the element in the packed enumeration `0..q`.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn from_index(i: u32) -> Self {
        FqElem(i)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone, Debug)]
struct LogTables {
    log: Vec<u32>,
    // exp[i] = g^i for i in 0..2(q-1), so exp[log a + log b] needs no reduction.
    exp: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct FqField {
    p: u32,
    f: u32,
    q: u32,
    modulus: Vec<u32>,
    powers: Vec<u32>,
    tables: Option<LogTables>,
}

impl PartialEq for FqField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.f == other.f && self.modulus == other.modulus
    }
}

impl Eq for FqField {}

impl FqField {
    /// Builds `F_{p^f}` with the smallest monic irreducible modulus of degree
    /// `f`, ordering coefficient tuples lexicographically from the constant
    /// term. For `f = 1` the modulus is `x`.
    pub fn new(p: u64, f: u32) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if f == 0 {
            return Err(Error::InvalidParameter("residue degree must be positive".into()));
        }
        let q = (p as u128)
            .checked_pow(f)
            .filter(|&q| q <= MAX_ORDER as u128)
            .ok_or_else(|| Error::InvalidParameter(format!("field order {p}^{f} exceeds 2^31")))?
            as u32;
        let p = p as u32;
        let modulus = if f == 1 {
            vec![0, 1]
        } else {
            smallest_irreducible(p, f as usize)
        };
        let powers = (0..=f).map(|i| p.pow(i)).collect();
        let mut field = FqField {
            p,
            f,
            q,
            modulus,
            powers,
            tables: None,
        };
        if f > 1 && (q as u64) <= TABLE_LIMIT {
            field.tables = Some(field.build_tables());
        }
        Ok(field)
    }

    /// Field of order `q`, which must be a prime power.
    pub fn with_order(q: u64) -> Result<Self> {
        let (p, f) = arith::prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::new(p, f)
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn q(&self) -> u64 {
        self.q as u64
    }

    /// Monic defining polynomial over `F_p`, lowest degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FqElem {
        FqElem(0)
    }

    pub fn one(&self) -> FqElem {
        FqElem(1)
    }

    /// Image of an integer under `Z -> F_p -> F_q`.
    pub fn from_int(&self, n: i64) -> FqElem {
        FqElem(n.rem_euclid(self.p as i64) as u32)
    }

    /// Element with the given coefficients over `1, t, .., t^{f-1}`; entries
    /// are reduced modulo `p` and missing entries are zero.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> FqElem {
        assert!(coeffs.len() <= self.f as usize, "too many coefficients for F_q");
        let mut v = 0u32;
        for (i, &c) in coeffs.iter().enumerate() {
            v += (c % self.p as u64) as u32 * self.powers[i];
        }
        FqElem(v)
    }

    pub fn coeffs(&self, a: FqElem) -> Vec<u32> {
        let mut x = a.0;
        (0..self.f)
            .map(|_| {
                let d = x % self.p;
                x /= self.p;
                d
            })
            .collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.q).map(FqElem)
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        if self.f == 1 {
            let s = a.0 as u64 + b.0 as u64;
            return FqElem((s % self.p as u64) as u32);
        }
        let (mut x, mut y, mut out) = (a.0, b.0, 0u32);
        for i in 0..self.f as usize {
            let d = (x % self.p + y % self.p) % self.p;
            out += d * self.powers[i];
            x /= self.p;
            y /= self.p;
        }
        FqElem(out)
    }

    pub fn neg(&self, a: FqElem) -> FqElem {
        if self.f == 1 {
            return FqElem(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        let (mut x, mut out) = (a.0, 0u32);
        for i in 0..self.f as usize {
            let d = x % self.p;
            out += ((self.p - d) % self.p) * self.powers[i];
            x /= self.p;
        }
        FqElem(out)
    }

    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        if a.0 == 0 || b.0 == 0 {
            return FqElem(0);
        }
        if self.f == 1 {
            return FqElem(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        match &self.tables {
            Some(t) => FqElem(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => self.mul_slow(a, b),
        }
    }

    fn mul_slow(&self, a: FqElem, b: FqElem) -> FqElem {
        let p = self.p as u64;
        let f = self.f as usize;
        let (x, y) = (self.coeffs(a), self.coeffs(b));
        let mut prod = vec![0u64; 2 * f - 1];
        for (i, &xi) in x.iter().enumerate() {
            for (j, &yj) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi as u64 * yj as u64) % p;
            }
        }
        for d in (f..prod.len()).rev() {
            let c = prod[d];
            if c != 0 {
                for i in 0..f {
                    prod[d - f + i] = (prod[d - f + i] + (p - c) * self.modulus[i] as u64) % p;
                }
            }
        }
        let coeffs: Vec<u64> = prod[..f].to_vec();
        self.from_coeffs(&coeffs)
    }

    pub fn pow(&self, a: FqElem, mut e: u64) -> FqElem {
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

    pub fn inv(&self, a: FqElem) -> Result<FqElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(t) = &self.tables {
            let l = t.log[a.0 as usize];
            let n = self.q - 1;
            return Ok(FqElem(t.exp[((n - l) % n) as usize]));
        }
        Ok(self.pow(a, self.q as u64 - 2))
    }

    pub fn div(&self, a: FqElem, b: FqElem) -> Result<FqElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Quadratic-residue test by Euler's criterion; zero counts as a square.
    pub fn is_square(&self, a: FqElem) -> Result<bool> {
        if self.p == 2 {
            return Err(Error::Unsupported("square test in characteristic 2".into()));
        }
        if a.is_zero() {
            return Ok(true);
        }
        if let Some(t) = &self.tables {
            return Ok(t.log[a.0 as usize] % 2 == 0);
        }
        Ok(self.pow(a, (self.q as u64 - 1) / 2) == self.one())
    }

    /// Inverse of the Frobenius `a -> a^p`.
    pub fn pth_root(&self, a: FqElem) -> FqElem {
        self.pow(a, self.q as u64 / self.p as u64)
    }

    fn build_tables(&self) -> LogTables {
        let n = self.q as u64 - 1;
        let primes: Vec<u64> = arith::factorize(n).into_iter().map(|(r, _)| r).collect();
        let generator = (2..self.q)
            .map(FqElem)
            .find(|&g| primes.iter().all(|&r| self.pow(g, n / r) != self.one()))
            .unwrap_or(FqElem(1));
        let mut log = vec![0u32; self.q as usize];
        let mut exp = vec![0u32; 2 * n as usize];
        let mut x = self.one();
        for i in 0..n as usize {
            exp[i] = x.0;
            exp[i + n as usize] = x.0;
            log[x.0 as usize] = i as u32;
            x = self.mul_slow(x, generator);
        }
        LogTables { log, exp }
    }
}

// Minimal dense arithmetic over F_p, used only to find the field modulus.
mod prime_field {
    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    fn inv(a: u64, p: u64) -> u64 {
        let (mut e, mut base, mut acc) = (p - 2, a % p, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lead_inv = inv(m[dm], p);
        while r.len() > dm {
            let d = r.len() - 1;
            let c = r[d] * lead_inv % p;
            for i in 0..=dm {
                r[d - dm + i] = (r[d - dm + i] + (p - c) * m[i]) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        rem(&prod, m, p)
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut x, mut y) = (a.to_vec(), b.to_vec());
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        x
    }
}

fn is_irreducible_over_prime_field(g: &[u64], p: u64) -> bool {
    use prime_field::*;
    let deg = g.len() - 1;
    // Ben-Or: g is irreducible iff gcd(g, x^{p^i} - x) = 1 for i <= deg/2.
    let x = vec![0u64, 1];
    let mut h = x.clone();
    for _ in 0..deg / 2 {
        let mut acc = vec![1u64];
        let mut base = h.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &base, g, p);
            }
            base = mulmod(&base, &base, g, p);
            e >>= 1;
        }
        h = acc;
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(&mut diff);
        if gcd(g, &diff, p).len() != 1 {
            return false;
        }
    }
    true
}

fn smallest_irreducible(p: u32, f: usize) -> Vec<u32> {
    let p64 = p as u64;
    let count = p64.pow(f as u32);
    for idx in 0..count {
        // constant term is the most significant position of the ordering
        let mut coeffs = vec![0u64; f + 1];
        let mut x = idx;
        for i in (0..f).rev() {
            coeffs[i] = x % p64;
            x /= p64;
        }
        coeffs[f] = 1;
        if coeffs[0] != 0 && is_irreducible_over_prime_field(&coeffs, p64) {
            return coeffs.into_iter().map(|c| c as u32).collect();
        }
    }
    unreachable!("irreducible polynomials of every degree exist over F_p")
}
