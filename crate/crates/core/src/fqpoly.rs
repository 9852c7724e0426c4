//! Polynomials over `F_q`: arithmetic, factorization, splitting types, and
//! enumeration of monic polynomials.

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use rand::Rng;

use crate::arith;
use crate::ff::{FqElem, FqField};
use crate::split_types::SplittingType;
use crate::{Error, Result};

/// Default limit on the number of polynomials a census may visit.
pub const DEFAULT_CENSUS_CAP: u128 = 100_000_000;

/// Dense polynomial, lowest degree first, without trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FqPoly {
    coeffs: Vec<FqElem>,
}

impl FqPoly {
    pub fn new(mut coeffs: Vec<FqElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        FqPoly { coeffs }
    }

    pub fn zero() -> Self {
        FqPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: FqElem) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(FqElem::from_index(1))
    }

    pub fn x() -> Self {
        FqPoly {
            coeffs: vec![FqElem::from_index(0), FqElem::from_index(1)],
        }
    }

    /// Polynomial with integer coefficients (lowest degree first) mapped into `F_p`.
    pub fn from_ints(field: &FqField, coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FqElem {
        self.coeffs.get(i).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<FqElem> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(FqElem::from_index(1))
    }

    fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.is_monic()
    }
}

/// Arithmetic in `F_q[x]`.
#[derive(Clone, Copy, Debug)]
pub struct PolyRing<'a> {
    field: &'a FqField,
}

impl<'a> PolyRing<'a> {
    pub fn new(field: &'a FqField) -> Self {
        PolyRing { field }
    }

    pub fn field(&self) -> &'a FqField {
        self.field
    }

    pub fn add(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        let k = self.field;
        let n = a.coeffs.len().max(b.coeffs.len());
        FqPoly::new((0..n).map(|i| k.add(a.coeff(i), b.coeff(i))).collect())
    }

    pub fn sub(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        let k = self.field;
        let n = a.coeffs.len().max(b.coeffs.len());
        FqPoly::new((0..n).map(|i| k.sub(a.coeff(i), b.coeff(i))).collect())
    }

    pub fn scale(&self, a: &FqPoly, c: FqElem) -> FqPoly {
        FqPoly::new(a.coeffs.iter().map(|&x| self.field.mul(x, c)).collect())
    }

    pub fn mul(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        if a.is_zero() || b.is_zero() {
            return FqPoly::zero();
        }
        let k = self.field;
        let mut out = vec![k.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                out[i + j] = k.add(out[i + j], k.mul(x, y));
            }
        }
        FqPoly::new(out)
    }

    pub fn divrem(&self, a: &FqPoly, b: &FqPoly) -> Result<(FqPoly, FqPoly)> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let k = self.field;
        let lead_inv = k.inv(b.coeffs[db])?;
        let mut rem = a.coeffs.clone();
        if rem.len() <= db {
            return Ok((FqPoly::zero(), a.clone()));
        }
        let mut quot = vec![k.zero(); rem.len() - db];
        for d in (db..rem.len()).rev() {
            let c = k.mul(rem[d], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[d - db] = c;
            for (i, &bi) in b.coeffs.iter().enumerate() {
                rem[d - db + i] = k.sub(rem[d - db + i], k.mul(c, bi));
            }
        }
        rem.truncate(db);
        Ok((FqPoly::new(quot), FqPoly::new(rem)))
    }

    pub fn rem(&self, a: &FqPoly, b: &FqPoly) -> Result<FqPoly> {
        Ok(self.divrem(a, b)?.1)
    }

    /// Exact quotient; panics if `b` is zero.
    fn quo(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        self.divrem(a, b).expect("nonzero divisor").0
    }

    pub fn make_monic(&self, a: &FqPoly) -> FqPoly {
        match a.leading() {
            None => FqPoly::zero(),
            Some(l) => self.scale(a, self.field.inv(l).expect("nonzero leading coefficient")),
        }
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = self.rem(&x, &y).expect("nonzero divisor");
            x = y;
            y = r;
        }
        self.make_monic(&x)
    }

    pub fn derivative(&self, a: &FqPoly) -> FqPoly {
        let k = self.field;
        FqPoly::new(
            a.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| k.mul(k.from_int(i as i64), c))
                .collect(),
        )
    }

    pub fn eval(&self, a: &FqPoly, x: FqElem) -> FqElem {
        let k = self.field;
        a.coeffs.iter().rev().fold(k.zero(), |acc, &c| k.add(k.mul(acc, x), c))
    }

    fn mulmod(&self, a: &FqPoly, b: &FqPoly, m: &FqPoly) -> FqPoly {
        self.rem(&self.mul(a, b), m).expect("nonzero modulus")
    }

    /// `base^exp mod m`, with the exponent given as little-endian bits.
    fn pow_mod_bits(&self, base: &FqPoly, bits: impl DoubleEndedIterator<Item = bool>, m: &FqPoly) -> FqPoly {
        let mut acc = self.rem(&FqPoly::one(), m).expect("nonzero modulus");
        let base = self.rem(base, m).expect("nonzero modulus");
        for bit in bits.rev() {
            acc = self.mulmod(&acc, &acc, m);
            if bit {
                acc = self.mulmod(&acc, &base, m);
            }
        }
        acc
    }

    pub fn pow_mod(&self, base: &FqPoly, exp: u64, m: &FqPoly) -> FqPoly {
        self.pow_mod_bits(base, (0..64).map(|i| (exp >> i) & 1 == 1), m)
    }

    pub fn pow_mod_big(&self, base: &FqPoly, exp: &BigUint, m: &FqPoly) -> FqPoly {
        self.pow_mod_bits(base, (0..exp.bits()).map(|i| exp.bit(i)), m)
    }

    /// `a(x)^{1/p}` for `a` with `a' = 0`.
    fn pth_root(&self, a: &FqPoly) -> FqPoly {
        let p = self.field.p() as usize;
        FqPoly::new(a.coeffs.iter().step_by(p).map(|&c| self.field.pth_root(c)).collect())
    }

    pub fn is_squarefree(&self, g: &FqPoly) -> bool {
        let d = self.derivative(g);
        !d.is_zero() && self.gcd(g, &d).is_one()
    }

    /// `g = prod s_i^{m_i}` with every `s_i` square-free, monic and non-constant,
    /// pairwise coprime.
    pub fn squarefree_decomposition(&self, g: &FqPoly) -> Vec<(FqPoly, u32)> {
        let g = self.make_monic(g);
        let mut out = Vec::new();
        let mut c = self.gcd(&g, &self.derivative(&g));
        let mut w = self.quo(&g, &c);
        let mut i = 1u32;
        while !w.is_one() {
            let y = self.gcd(&w, &c);
            let fac = self.quo(&w, &y);
            if fac.degree() > Some(0) {
                out.push((fac, i));
            }
            w = y;
            c = self.quo(&c, &w);
            i += 1;
        }
        if c.degree() > Some(0) {
            let root = self.pth_root(&c);
            let p = self.field.p() as u32;
            out.extend(
                self.squarefree_decomposition(&root)
                    .into_iter()
                    .map(|(s, m)| (s, m * p)),
            );
        }
        out
    }

    /// Splits a square-free monic polynomial into `(product of all degree-d
    /// irreducible factors, d)` pairs.
    pub fn distinct_degree(&self, g: &FqPoly) -> Vec<(FqPoly, u32)> {
        let q = self.field.q();
        let x = FqPoly::x();
        let mut rest = self.make_monic(g);
        let mut h = self.rem(&x, &rest).expect("nonzero modulus");
        let mut out = Vec::new();
        let mut d = 1usize;
        while rest.degree().unwrap_or(0) >= 2 * d {
            h = self.pow_mod(&h, q, &rest);
            let t = self.gcd(&rest, &self.sub(&h, &x));
            if !t.is_one() {
                rest = self.quo(&rest, &t);
                h = self.rem(&h, &rest).expect("nonzero modulus");
                out.push((t, d as u32));
            }
            d += 1;
        }
        if let Some(deg) = rest.degree().filter(|&deg| deg > 0) {
            out.push((rest, deg as u32));
        }
        out
    }

    /// Splits a product of distinct degree-`d` irreducibles into its factors
    /// (Cantor–Zassenhaus, with the trace map in characteristic 2).
    pub fn equal_degree<R: Rng + ?Sized>(&self, g: &FqPoly, d: u32, rng: &mut R) -> Vec<FqPoly> {
        let n = g.degree().unwrap_or(0);
        if n <= d as usize {
            return vec![g.clone()];
        }
        let q = self.field.q();
        let odd_exp = (BigUint::from(q).pow(d) - 1u32) / 2u32;
        loop {
            let a = FqPoly::new((0..n).map(|_| FqElem::from_index(rng.gen_range(0..q as u32))).collect());
            if a.degree().unwrap_or(0) == 0 {
                continue;
            }
            let b = if self.field.p() == 2 {
                let steps = self.field.f() * d;
                let mut term = self.rem(&a, g).expect("nonzero modulus");
                let mut acc = term.clone();
                for _ in 1..steps {
                    term = self.mulmod(&term, &term, g);
                    acc = self.add(&acc, &term);
                }
                acc
            } else {
                self.sub(&self.pow_mod_big(&a, &odd_exp, g), &FqPoly::one())
            };
            let t = self.gcd(g, &b);
            let dt = t.degree().unwrap_or(0);
            if dt > 0 && dt < n {
                let other = self.quo(g, &t);
                let mut out = self.equal_degree(&t, d, rng);
                out.extend(self.equal_degree(&other, d, rng));
                return out;
            }
        }
    }

    /// Monic irreducible factorization with multiplicities.
    pub fn factor<R: Rng + ?Sized>(&self, g: &FqPoly, rng: &mut R) -> Vec<(FqPoly, u32)> {
        let mut out = Vec::new();
        for (s, m) in self.squarefree_decomposition(g) {
            for (block, d) in self.distinct_degree(&s) {
                for irr in self.equal_degree(&block, d, rng) {
                    out.push((irr, m));
                }
            }
        }
        out
    }

    /// Splitting type from a full factorization.
    pub fn splitting_type<R: Rng + ?Sized>(&self, g: &FqPoly, rng: &mut R) -> Result<SplittingType> {
        check_monic(g)?;
        let parts = self
            .factor(g, rng)
            .into_iter()
            .map(|(h, m)| (h.degree().unwrap() as u32, m))
            .collect();
        SplittingType::new(parts)
    }

    /// Splitting type read off the square-free and distinct-degree stages alone.
    pub fn splitting_type_by_degrees(&self, g: &FqPoly) -> Result<SplittingType> {
        check_monic(g)?;
        let mut parts = Vec::new();
        for (s, m) in self.squarefree_decomposition(g) {
            for (block, d) in self.distinct_degree(&s) {
                let count = block.degree().unwrap() as u32 / d;
                parts.extend(std::iter::repeat_n((d, m), count as usize));
            }
        }
        SplittingType::new(parts)
    }
}

fn check_monic(g: &FqPoly) -> Result<()> {
    if !g.is_monic() || g.degree() == Some(0) {
        return Err(Error::InvalidParameter(
            "expected a monic polynomial of degree >= 1".into(),
        ));
    }
    Ok(())
}

/// Gauss's count of monic irreducible polynomials of degree `m` over `F_q`.
pub fn count_irreducibles(q: u64, m: u32) -> BigUint {
    assert!(m >= 1, "degree must be positive");
    let q = BigInt::from(q);
    let total: BigInt = arith::divisors(m as u64)
        .into_iter()
        .map(|d| BigInt::from(arith::mobius(d)) * q.pow(m / d as u32))
        .sum();
    (total / BigInt::from(m)).to_biguint().expect("count is positive")
}

/// Number of monic degree-`n` polynomials over `F_q`.
pub fn monic_count(q: u64, n: u32) -> u128 {
    (q as u128).checked_pow(n).unwrap_or(u128::MAX)
}

/// The monic polynomial at position `index` of the lexicographic order on
/// `(c_0, .., c_{n-1})`, with `c_0` most significant.
pub fn monic_from_index(field: &FqField, n: u32, mut index: u128) -> FqPoly {
    let q = field.q() as u128;
    let mut coeffs = vec![field.zero(); n as usize + 1];
    coeffs[n as usize] = field.one();
    for i in (0..n as usize).rev() {
        coeffs[i] = FqElem::from_index((index % q) as u32);
        index /= q;
    }
    FqPoly::new(coeffs)
}

/// Iterator over every monic polynomial of one degree.
#[derive(Clone, Debug)]
pub struct MonicPolys<'a> {
    field: &'a FqField,
    n: u32,
    next: u128,
    end: u128,
}

impl Iterator for MonicPolys<'_> {
    type Item = FqPoly;

    fn next(&mut self) -> Option<FqPoly> {
        if self.next >= self.end {
            return None;
        }
        let g = monic_from_index(self.field, self.n, self.next);
        self.next += 1;
        Some(g)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next).to_usize().unwrap_or(usize::MAX);
        (left, Some(left))
    }
}

/// All `q^n` monic polynomials of degree `n`, refusing censuses above `cap`.
pub fn enumerate_monic(field: &FqField, n: u32, cap: u128) -> Result<MonicPolys<'_>> {
    if n == 0 {
        return Err(Error::InvalidParameter("degree must be positive".into()));
    }
    let total = monic_count(field.q(), n);
    if total > cap {
        return Err(Error::CensusCapExceeded { requested: total, cap });
    }
    Ok(MonicPolys {
        field,
        n,
        next: 0,
        end: total,
    })
}
