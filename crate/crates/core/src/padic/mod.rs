//! Truncated arithmetic in the ring of integers of a p-adic field.
//!
//! The field is modelled as the unramified degree-`f` extension of `Q_p`
//! with a uniformizer satisfying `π^e = p`. An element known modulo `π^k`
//! is stored as `e` components `c_0, .., c_{e-1}` in `Z_q = Z_p[t]/(g(t))`,
//! standing for `Σ c_j π^j`, where `g` is the residue field modulus lifted to
//! coefficients in `[0, p)`. Component `j` is reduced modulo `p^{m_j}` with
//! `m_j = ceil((k - j) / e)`, which makes the representation canonical.
//!
//! The `π`-adic digit at position `j + e s` is the base-`p` digit `s` of
//! `c_j`, read coefficientwise in `t`. Digits therefore range over the
//! representatives `Σ a_i t^i` with `0 <= a_i < p`.

mod poly;
mod stream;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

pub use poly::{hensel_lift, newton_polygon, reduce_poly, PadicPoly};
pub use stream::{haar_sample, DigitStream};

use crate::ff::{FqElem, FqField};
use crate::{Error, Result};

/// Default precision ceiling, in `π`-adic digits.
pub const DEFAULT_PRECISION_CAP: u32 = 64;

/// Valuation of a truncated element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    Exact(u32),
    /// Every known digit is zero.
    AtLeast(u32),
}

impl Valuation {
    pub fn exact(self) -> Option<u32> {
        match self {
            Valuation::Exact(v) => Some(v),
            Valuation::AtLeast(_) => None,
        }
    }

    /// The valuation if determined, otherwise a precision error.
    pub fn require(self) -> Result<u32> {
        self.exact().ok_or(Error::PrecisionExhausted)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PadicElem {
    prec: u32,
    c: Vec<u128>,
}

impl PadicElem {
    pub fn precision(&self) -> u32 {
        self.prec
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicField {
    residue: FqField,
    e: u32,
    p: u128,
    lift: Vec<u128>,
    pow: Vec<u128>,
    max_prec: u32,
}

fn addmod(a: u128, b: u128, n: u128) -> u128 {
    let s = a + b;
    if s >= n {
        s - n
    } else {
        s
    }
}

fn submod(a: u128, b: u128, n: u128) -> u128 {
    if a >= b {
        a - b
    } else {
        a + (n - b)
    }
}

fn mulmod(a: u128, b: u128, n: u128) -> u128 {
    if n <= 1 << 64 {
        a * b % n
    } else {
        (BigUint::from(a) * BigUint::from(b) % BigUint::from(n))
            .to_u128()
            .unwrap()
    }
}

impl PadicField {
    /// The model with residue field `F_{p^f}` and ramification index `e`.
    pub fn new(p: u64, f: u32, e: u32) -> Result<Self> {
        if e == 0 {
            return Err(Error::InvalidParameter("ramification index must be positive".into()));
        }
        if p == 2 {
            return Err(Error::Unsupported("p-adic arithmetic requires odd p".into()));
        }
        Self::with_residue(FqField::new(p, f)?, e)
    }

    pub fn with_residue(residue: FqField, e: u32) -> Result<Self> {
        if e == 0 {
            return Err(Error::InvalidParameter("ramification index must be positive".into()));
        }
        let p = residue.p() as u128;
        if p == 2 {
            return Err(Error::Unsupported("p-adic arithmetic requires odd p".into()));
        }
        let lift = residue.modulus().iter().map(|&c| c as u128).collect();
        // keep every modulus below 2^126 so sums of two residues fit in u128
        let mut pow = vec![1u128];
        while let Some(next) = pow.last().unwrap().checked_mul(p).filter(|&x| x < 1 << 126) {
            pow.push(next);
        }
        let max_prec = e.saturating_mul((pow.len() - 1) as u32);
        Ok(PadicField {
            residue,
            e,
            p,
            lift,
            pow,
            max_prec,
        })
    }

    pub fn residue(&self) -> &FqField {
        &self.residue
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn f(&self) -> u32 {
        self.residue.f()
    }

    pub fn q(&self) -> u64 {
        self.residue.q()
    }

    /// Largest precision the fixed-width representation can hold.
    pub fn max_precision(&self) -> u32 {
        self.max_prec
    }

    fn fdim(&self) -> usize {
        self.residue.f() as usize
    }

    fn m(&self, j: u32, k: u32) -> u32 {
        if k > j {
            (k - j).div_ceil(self.e)
        } else {
            0
        }
    }

    fn canonical(&self, mut c: Vec<u128>, k: u32) -> PadicElem {
        let f = self.fdim();
        for j in 0..self.e {
            let n = self.pow[self.m(j, k) as usize];
            for x in &mut c[j as usize * f..(j as usize + 1) * f] {
                *x %= n;
            }
        }
        PadicElem { prec: k, c }
    }

    pub fn zero(&self, k: u32) -> PadicElem {
        PadicElem {
            prec: k,
            c: vec![0; self.e as usize * self.fdim()],
        }
    }

    pub fn one(&self, k: u32) -> PadicElem {
        self.from_int(1, k)
    }

    pub fn from_int(&self, n: i64, k: u32) -> PadicElem {
        let mut c = vec![0u128; self.e as usize * self.fdim()];
        let modulus = self.pow[self.m(0, k) as usize];
        c[0] = (n as i128).rem_euclid(modulus as i128) as u128;
        self.canonical(c, k)
    }

    /// The representative of a residue class, as a single digit at position 0.
    pub fn from_fq(&self, a: FqElem, k: u32) -> PadicElem {
        let mut d = vec![self.residue.zero(); k as usize];
        if k > 0 {
            d[0] = a;
        }
        self.from_digits(&d)
    }

    /// `π` at precision `k`.
    pub fn uniformizer(&self, k: u32) -> PadicElem {
        let mut d = vec![self.residue.zero(); k as usize];
        if k > 1 {
            d[1] = self.residue.one();
        }
        self.from_digits(&d)
    }

    /// Element with the given `π`-adic digits; the precision is the number of digits.
    pub fn from_digits(&self, digits: &[FqElem]) -> PadicElem {
        let k = digits.len() as u32;
        assert!(k <= self.max_prec, "precision {k} exceeds {}", self.max_prec);
        let f = self.fdim();
        let e = self.e as usize;
        let mut c = vec![0u128; e * f];
        for (pos, &d) in digits.iter().enumerate().rev() {
            let j = pos % e;
            let s = pos / e;
            for (i, &a) in self.residue.coeffs(d).iter().enumerate() {
                c[j * f + i] += a as u128 * self.pow[s];
            }
        }
        PadicElem { prec: k, c }
    }

    pub fn digits(&self, a: &PadicElem) -> Vec<FqElem> {
        let f = self.fdim();
        let e = self.e as usize;
        let mut out = vec![self.residue.zero(); a.prec as usize];
        let mut buf = vec![0u64; f];
        for j in 0..e {
            let mut comp: Vec<u128> = a.c[j * f..(j + 1) * f].to_vec();
            let mut pos = j;
            while pos < a.prec as usize {
                for (b, x) in buf.iter_mut().zip(comp.iter_mut()) {
                    *b = (*x % self.p) as u64;
                    *x /= self.p;
                }
                out[pos] = self.residue.from_coeffs(&buf);
                pos += e;
            }
        }
        out
    }

    /// Digit `i`, which must be below the precision.
    pub fn digit(&self, a: &PadicElem, i: u32) -> FqElem {
        assert!(i < a.prec, "digit {i} beyond precision {}", a.prec);
        let f = self.fdim();
        let j = (i % self.e) as usize;
        let s = (i / self.e) as usize;
        let buf: Vec<u64> = a.c[j * f..(j + 1) * f]
            .iter()
            .map(|&x| (x / self.pow[s] % self.p) as u64)
            .collect();
        self.residue.from_coeffs(&buf)
    }

    /// Drops digits beyond `k`; asks for no more precision than `a` carries.
    pub fn truncate(&self, a: &PadicElem, k: u32) -> PadicElem {
        assert!(k <= a.prec, "cannot raise precision from {} to {k}", a.prec);
        self.canonical(a.c.clone(), k)
    }

    pub fn is_zero(&self, a: &PadicElem) -> bool {
        a.c.iter().all(|&x| x == 0)
    }

    pub fn valuation(&self, a: &PadicElem) -> Valuation {
        let f = self.fdim();
        let mut best: Option<u32> = None;
        for j in 0..self.e as usize {
            for &x in &a.c[j * f..(j + 1) * f] {
                if x == 0 {
                    continue;
                }
                let mut s = 0u32;
                let mut y = x;
                while y % self.p == 0 {
                    y /= self.p;
                    s += 1;
                }
                let pos = j as u32 + self.e * s;
                best = Some(best.map_or(pos, |b| b.min(pos)));
            }
        }
        match best {
            Some(v) => Valuation::Exact(v),
            None => Valuation::AtLeast(a.prec),
        }
    }

    /// Residue of the unit part `a / π^v(a)`.
    pub fn leading_digit(&self, a: &PadicElem) -> Result<FqElem> {
        let v = self.valuation(a).require()?;
        Ok(self.digit(a, v))
    }

    fn binop(&self, a: &PadicElem, b: &PadicElem, op: fn(u128, u128, u128) -> u128) -> PadicElem {
        let k = a.prec.min(b.prec);
        let f = self.fdim();
        let mut c = Vec::with_capacity(a.c.len());
        for j in 0..self.e {
            let n = self.pow[self.m(j, k) as usize];
            let r = j as usize * f..(j as usize + 1) * f;
            c.extend(a.c[r.clone()].iter().zip(&b.c[r]).map(|(&x, &y)| op(x % n, y % n, n)));
        }
        PadicElem { prec: k, c }
    }

    pub fn add(&self, a: &PadicElem, b: &PadicElem) -> PadicElem {
        self.binop(a, b, addmod)
    }

    pub fn sub(&self, a: &PadicElem, b: &PadicElem) -> PadicElem {
        self.binop(a, b, submod)
    }

    pub fn neg(&self, a: &PadicElem) -> PadicElem {
        self.sub(&self.zero(a.prec), a)
    }

    /// Product in `Z_q = Z[t]/(g)` modulo `n`.
    fn zq_mul(&self, a: &[u128], b: &[u128], n: u128) -> Vec<u128> {
        let f = self.fdim();
        let mut prod = vec![0u128; 2 * f - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = addmod(prod[i + j], mulmod(x, y, n), n);
            }
        }
        for d in (f..2 * f - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            for i in 0..f {
                prod[d - f + i] = submod(prod[d - f + i], mulmod(c, self.lift[i] % n, n), n);
            }
        }
        prod.truncate(f);
        prod
    }

    pub fn mul(&self, a: &PadicElem, b: &PadicElem) -> PadicElem {
        let k = a.prec.min(b.prec);
        let f = self.fdim();
        let e = self.e as usize;
        let n = self.pow[self.m(0, k) as usize];
        let mut c = vec![0u128; e * f];
        for j1 in 0..e {
            let x = &a.c[j1 * f..(j1 + 1) * f];
            if x.iter().all(|&v| v == 0) {
                continue;
            }
            for j2 in 0..e {
                let y = &b.c[j2 * f..(j2 + 1) * f];
                if y.iter().all(|&v| v == 0) {
                    continue;
                }
                let prod = self.zq_mul(x, y, n);
                let (j, carry) = if j1 + j2 < e {
                    (j1 + j2, false)
                } else {
                    (j1 + j2 - e, true)
                };
                for (i, &v) in prod.iter().enumerate() {
                    let v = if carry { mulmod(v, self.p, n) } else { v };
                    c[j * f + i] = addmod(c[j * f + i], v, n);
                }
            }
        }
        self.canonical(c, k)
    }

    /// `a / π^s`, valid when `π^s` divides `a`; the precision drops by `s`.
    pub fn shift_down(&self, a: &PadicElem, s: u32) -> Result<PadicElem> {
        if s >= a.prec {
            return Err(Error::PrecisionExhausted);
        }
        let d = self.digits(a);
        if d[..s as usize].iter().any(|x| !x.is_zero()) {
            return Err(Error::InvalidParameter(format!("element is not divisible by π^{s}")));
        }
        Ok(self.from_digits(&d[s as usize..]))
    }

    /// `π^s a`; the precision rises by `s` up to the representable maximum.
    pub fn shift_up(&self, a: &PadicElem, s: u32) -> PadicElem {
        let mut d = vec![self.residue.zero(); s as usize];
        d.extend(self.digits(a));
        d.truncate(self.max_prec as usize);
        self.from_digits(&d)
    }

    /// Inverse of a unit, by Newton iteration `x <- x (2 - a x)`.
    pub fn inv(&self, a: &PadicElem) -> Result<PadicElem> {
        if a.prec == 0 {
            return Err(Error::PrecisionExhausted);
        }
        let d0 = self.digit(a, 0);
        if d0.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let k = a.prec;
        let two = self.from_int(2, k);
        let mut x = self.from_fq(self.residue.inv(d0)?, k);
        let mut good = 1u32;
        while good < k {
            x = self.mul(&x, &self.sub(&two, &self.mul(a, &x)));
            good *= 2;
        }
        Ok(x)
    }

    /// `a / b` for a unit `b`.
    pub fn div_unit(&self, a: &PadicElem, b: &PadicElem) -> Result<PadicElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Whether a nonzero element is a square in the field.
    pub fn is_square_in_field(&self, a: &PadicElem) -> Result<bool> {
        let v = self.valuation(a).require()?;
        if v % 2 == 1 {
            return Ok(false);
        }
        self.residue.is_square(self.digit(a, v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(p: u64) -> PadicField {
        PadicField::new(p, 1, 1).unwrap()
    }

    fn ints(k: &FqField, d: &[i64]) -> Vec<FqElem> {
        d.iter().map(|&x| k.from_int(x)).collect()
    }

    #[test]
    fn arithmetic_examples() {
        let k = z(5);
        let s = k.add(&k.from_int(2, 6), &k.from_int(3, 6));
        assert_eq!(k.digits(&s), ints(k.residue(), &[0, 1, 0, 0, 0, 0]));

        let r = PadicField::new(5, 1, 2).unwrap();
        let pi = r.uniformizer(8);
        assert_eq!(r.mul(&pi, &pi), r.from_int(5, 8));
        assert_eq!(
            r.digits(&r.from_int(5, 8)),
            ints(r.residue(), &[0, 0, 1, 0, 0, 0, 0, 0])
        );

        for field in [z(7), r.clone(), PadicField::new(3, 2, 3).unwrap()] {
            let one = field.one(9);
            let pi = field.uniformizer(9);
            let lhs = field.mul(&field.add(&one, &pi), &field.sub(&one, &pi));
            assert_eq!(lhs, field.sub(&one, &field.mul(&pi, &pi)));
        }
    }

    #[test]
    fn valuation_examples() {
        let k = z(5);
        let a = k.from_digits(&ints(k.residue(), &[0, 0, 3, 1]));
        assert_eq!(k.valuation(&a), Valuation::Exact(2));
        assert_eq!(k.valuation(&k.zero(6)), Valuation::AtLeast(6));
        let r = PadicField::new(5, 1, 3).unwrap();
        assert_eq!(r.valuation(&r.from_int(5, 10)), Valuation::Exact(3));
        assert_eq!(r.valuation(&r.from_int(-25, 10)), Valuation::Exact(6));
    }

    #[test]
    fn square_examples() {
        let k = z(5);
        assert!(!k.is_square_in_field(&k.uniformizer(6)).unwrap());
        assert!(!k.is_square_in_field(&k.from_int(2, 6)).unwrap());
        assert!(k.is_square_in_field(&k.from_int(4 * 25, 6)).unwrap());
        assert_eq!(k.is_square_in_field(&k.zero(6)), Err(Error::PrecisionExhausted));
        let r = PadicField::new(5, 1, 2).unwrap();
        assert!(!r.is_square_in_field(&r.uniformizer(6)).unwrap());
        // p = π^2 is a square once e = 2
        assert!(r.is_square_in_field(&r.from_int(5, 6)).unwrap());
    }

    #[test]
    fn negative_integers() {
        let k = z(7);
        let m = k.from_int(-1, 5);
        assert_eq!(k.add(&m, &k.one(5)), k.zero(5));
        assert_eq!(k.digits(&m), vec![k.residue().from_int(6); 5]);
    }

    #[test]
    fn shifts_and_inverse() {
        let k = PadicField::new(3, 2, 2).unwrap();
        let res = k.residue();
        let a = k.from_digits(&[
            FqElem::from_index(4),
            FqElem::from_index(7),
            FqElem::from_index(2),
            res.zero(),
        ]);
        let up = k.shift_up(&a, 3);
        assert_eq!(up.precision(), 7);
        assert_eq!(k.valuation(&up), Valuation::Exact(3));
        assert_eq!(k.shift_down(&up, 3).unwrap(), a);
        assert!(k.shift_down(&a, 1).is_err());
        let inv = k.inv(&a).unwrap();
        assert_eq!(k.mul(&a, &inv), k.one(4));
        assert_eq!(k.inv(&up), Err(Error::DivisionByZero));
    }

    #[test]
    fn large_precision_uses_wide_path() {
        let k = z(5);
        let top = k.max_precision();
        assert!(top >= 50);
        let a = k.from_int(-3, top);
        let inv = k.inv(&a).unwrap();
        assert_eq!(k.mul(&a, &inv), k.one(top));
    }

    fn arb_digits(q: u32, len: usize) -> impl Strategy<Value = Vec<u32>> {
        proptest::collection::vec(0..q, len)
    }

    proptest! {
        #[test]
        fn digits_round_trip(d in arb_digits(9, 12), e in 1u32..4) {
            let k = PadicField::new(3, 2, e).unwrap();
            let digits: Vec<FqElem> = d.iter().map(|&x| FqElem::from_index(x)).collect();
            prop_assert_eq!(k.digits(&k.from_digits(&digits)), digits);
        }

        #[test]
        fn ring_laws(a in arb_digits(25, 10), b in arb_digits(25, 10), c in arb_digits(25, 10), e in 1u32..4) {
            let k = PadicField::new(5, 2, e).unwrap();
            let el = |d: &Vec<u32>| k.from_digits(&d.iter().map(|&x| FqElem::from_index(x)).collect::<Vec<_>>());
            let (a, b, c) = (el(&a), el(&b), el(&c));
            prop_assert_eq!(k.mul(&a, &b), k.mul(&b, &a));
            prop_assert_eq!(k.mul(&a, &k.add(&b, &c)), k.add(&k.mul(&a, &b), &k.mul(&a, &c)));
            prop_assert_eq!(k.mul(&k.mul(&a, &b), &c), k.mul(&a, &k.mul(&b, &c)));
            prop_assert_eq!(k.sub(&k.add(&a, &b), &b), a);
        }

        #[test]
        fn valuation_is_additive(a in arb_digits(7, 12), b in arb_digits(7, 12), e in 1u32..3) {
            let k = PadicField::new(7, 1, e).unwrap();
            let el = |d: &Vec<u32>| k.from_digits(&d.iter().map(|&x| FqElem::from_index(x)).collect::<Vec<_>>());
            let (a, b) = (el(&a), el(&b));
            if let (Valuation::Exact(va), Valuation::Exact(vb)) = (k.valuation(&a), k.valuation(&b)) {
                if va + vb < 12 {
                    prop_assert_eq!(k.valuation(&k.mul(&a, &b)), Valuation::Exact(va + vb));
                }
            }
        }

        #[test]
        fn squares_are_squares(d in arb_digits(25, 8), e in 1u32..3) {
            let k = PadicField::new(5, 2, e).unwrap();
            let a = k.from_digits(&d.iter().map(|&x| FqElem::from_index(x)).collect::<Vec<_>>());
            let v = k.valuation(&a);
            if let Valuation::Exact(v) = v {
                if 2 * v < 8 {
                    prop_assert!(k.is_square_in_field(&k.mul(&a, &a)).unwrap());
                }
            }
        }
    }
}
