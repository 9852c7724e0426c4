//! Monic polynomials over the truncated ring.

use num_bigint::BigInt;

use super::{PadicElem, PadicField, Valuation};
use crate::ff::FqElem;
use crate::fqpoly::{FqPoly, PolyRing};
use crate::split_types::Rat;
use crate::{Error, Result};

/// Monic polynomial `x^n + a_{n-1} x^{n-1} + .. + a_0`; every coefficient
/// carries the same precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicPoly {
    coeffs: Vec<PadicElem>,
}

impl PadicPoly {
    /// Builds the monic polynomial with lower coefficients `a_0, .., a_{n-1}`,
    /// truncating all of them to the smallest precision among them.
    pub fn monic(field: &PadicField, lower: Vec<PadicElem>) -> Self {
        assert!(!lower.is_empty(), "degree must be positive");
        let k = lower.iter().map(PadicElem::precision).min().unwrap();
        assert!(k >= 1, "precision must be positive");
        let mut coeffs: Vec<PadicElem> = lower.iter().map(|a| field.truncate(a, k)).collect();
        coeffs.push(field.one(k));
        PadicPoly { coeffs }
    }

    /// Integer coefficients, lowest degree first, ending with the leading 1.
    pub fn from_ints(field: &PadicField, coeffs: &[i64], k: u32) -> Result<Self> {
        match coeffs.split_last() {
            Some((1, lower)) if !lower.is_empty() => Ok(Self::monic(
                field,
                lower.iter().map(|&c| field.from_int(c, k)).collect(),
            )),
            _ => Err(Error::InvalidParameter(
                "expected a monic polynomial of degree >= 1".into(),
            )),
        }
    }

    pub fn degree(&self) -> u32 {
        self.coeffs.len() as u32 - 1
    }

    pub fn precision(&self) -> u32 {
        self.coeffs[0].precision()
    }

    pub fn coeff(&self, i: u32) -> &PadicElem {
        &self.coeffs[i as usize]
    }

    /// All coefficients including the leading one.
    pub fn coeffs(&self) -> &[PadicElem] {
        &self.coeffs
    }

    pub fn truncate(&self, field: &PadicField, k: u32) -> Self {
        PadicPoly {
            coeffs: self.coeffs.iter().map(|a| field.truncate(a, k)).collect(),
        }
    }

    pub fn eval(&self, field: &PadicField, x: &PadicElem) -> PadicElem {
        let k = self.precision().min(x.precision());
        self.coeffs
            .iter()
            .rev()
            .fold(field.zero(k), |acc, c| field.add(&field.mul(&acc, x), c))
    }

    pub fn eval_derivative(&self, field: &PadicField, x: &PadicElem) -> PadicElem {
        let k = self.precision().min(x.precision());
        let mut acc = field.zero(k);
        for i in (1..self.coeffs.len()).rev() {
            let term = field.mul(&field.from_int(i as i64, k), &self.coeffs[i]);
            acc = field.add(&field.mul(&acc, x), &term);
        }
        acc
    }

    /// `g(x + t)`.
    pub fn taylor_shift(&self, field: &PadicField, t: &PadicElem) -> Self {
        let k = self.precision().min(t.precision());
        let mut res: Vec<PadicElem> = vec![field.one(k)];
        for c in self.coeffs.iter().rev().skip(1) {
            // res <- res * (x + t) + c
            let mut next = vec![field.zero(k); res.len() + 1];
            for (j, r) in res.iter().enumerate() {
                next[j + 1] = field.add(&next[j + 1], r);
                next[j] = field.add(&next[j], &field.mul(r, t));
            }
            next[0] = field.add(&next[0], c);
            res = next;
        }
        PadicPoly { coeffs: res }
    }
}

/// Reduction modulo `π`.
pub fn reduce_poly(field: &PadicField, g: &PadicPoly) -> FqPoly {
    FqPoly::new(g.coeffs.iter().map(|a| field.digit(a, 0)).collect())
}

/// Segments of the Newton polygon of `g` from left to right, as
/// `(slope, horizontal length)`, built on the points `(i, ord a_i)`. Roots of
/// valuation `v` correspond to slope `-v`.
pub fn newton_polygon(field: &PadicField, g: &PadicPoly) -> Result<Vec<(Rat, u32)>> {
    let vals: Vec<Valuation> = g.coeffs.iter().map(|a| field.valuation(a)).collect();
    let pts: Vec<(i64, i64)> = vals
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.exact().map(|v| (i as i64, v as i64)))
        .collect();
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (a.0 - o.0) * (pt.1 - o.1) - (a.1 - o.1) * (pt.0 - o.0);
            if cross > 0 {
                break;
            }
            hull.pop();
        }
        hull.push(pt);
    }
    // an undetermined coefficient matters if its true point could lie below the hull
    for (i, v) in vals.iter().enumerate() {
        let Valuation::AtLeast(k) = *v else { continue };
        let i = i as i64;
        if i < hull[0].0 {
            return Err(Error::PrecisionExhausted);
        }
        if let Some(w) = hull.windows(2).find(|w| w[0].0 <= i && i <= w[1].0) {
            let ((x0, y0), (x1, y1)) = (w[0], w[1]);
            // k < y0 + (y1 - y0)(i - x0)/(x1 - x0)
            if (k as i64) * (x1 - x0) < y0 * (x1 - x0) + (y1 - y0) * (i - x0) {
                return Err(Error::PrecisionExhausted);
            }
        }
    }
    Ok(hull
        .windows(2)
        .map(|w| {
            let dx = w[1].0 - w[0].0;
            (Rat::new(BigInt::from(w[1].1 - w[0].1), BigInt::from(dx)), dx as u32)
        })
        .collect())
}

/// The unique root of `g` congruent to the simple residue root `r0`, modulo `π^k`.
pub fn hensel_lift(field: &PadicField, g: &PadicPoly, r0: FqElem, k: u32) -> Result<PadicElem> {
    if k == 0 || k > g.precision() {
        return Err(Error::InvalidParameter(format!(
            "target precision {k} not within 1..={}",
            g.precision()
        )));
    }
    let ring = PolyRing::new(field.residue());
    let gbar = reduce_poly(field, g);
    if !ring.eval(&gbar, r0).is_zero() {
        return Err(Error::InvalidParameter("not a root of the reduction".into()));
    }
    if ring.eval(&ring.derivative(&gbar), r0).is_zero() {
        return Err(Error::NotSimpleRoot);
    }
    let g = g.truncate(field, k);
    let mut r = field.from_fq(r0, k);
    loop {
        let val = g.eval(field, &r);
        if field.is_zero(&val) {
            return Ok(r);
        }
        let d = g.eval_derivative(field, &r);
        r = field.sub(&r, &field.div_unit(&val, &d)?);
    }
}
