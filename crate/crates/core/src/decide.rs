//! Per-instance splitting type, Galois group and ramification for monic
//! quadratics and cubics over the ring of integers, by the case analysis on
//! the depressed form `x^2 + A` or `x^3 + A x + B`.
//!
//! Every procedure works at the precision of its input and reports
//! [`Error::PrecisionExhausted`] when that is not enough; callers re-sample
//! with more digits.

use std::fmt;

use crate::fqpoly::PolyRing;
use crate::padic::{hensel_lift, reduce_poly, PadicElem, PadicField, PadicPoly, Valuation};
use crate::split_types::{GroupLabel, SplittingType};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseTag {
    /// Quadratic with unit normalized constant.
    QuadraticUnit,
    /// Quadratic whose normalized constant has valuation 1.
    QuadraticRamified,
    Case1,
    Case2,
    Case3,
    Case4,
    Case5A,
    Case5B,
    Case5C,
    Case5D,
}

impl CaseTag {
    pub const CUBIC: [CaseTag; 8] = [
        CaseTag::Case1,
        CaseTag::Case2,
        CaseTag::Case3,
        CaseTag::Case4,
        CaseTag::Case5A,
        CaseTag::Case5B,
        CaseTag::Case5C,
        CaseTag::Case5D,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CaseTag::QuadraticUnit => "unit",
            CaseTag::QuadraticRamified => "ramified",
            CaseTag::Case1 => "case1",
            CaseTag::Case2 => "case2",
            CaseTag::Case3 => "case3",
            CaseTag::Case4 => "case4",
            CaseTag::Case5A => "case5A",
            CaseTag::Case5B => "case5B",
            CaseTag::Case5C => "case5C",
            CaseTag::Case5D => "case5D",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub splitting_type: SplittingType,
    pub group: GroupLabel,
    pub unramified: bool,
    pub case: CaseTag,
    /// Number of rescalings `x -> π x` applied during normalization.
    pub rescale: u32,
}

/// Result of the square-free reduction shortcut.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FastPath {
    Squarefree {
        splitting_type: SplittingType,
        group: GroupLabel,
    },
    Deferred,
}

/// `g(x - a_{n-1}/n)`, which has no `x^{n-1}` term.
pub fn depress(field: &PadicField, g: &PadicPoly) -> Result<PadicPoly> {
    let n = g.degree();
    if (n as u64).is_multiple_of(field.p()) {
        return Err(Error::Unsupported(format!("p = {} divides the degree {n}", field.p())));
    }
    let k = g.precision();
    let t = field.neg(&field.div_unit(g.coeff(n - 1), &field.from_int(n as i64, k))?);
    let shifted = g.taylor_shift(field, &t);
    debug_assert!(field.is_zero(shifted.coeff(n - 1)));
    Ok(shifted)
}

/// `(A / π^{2r}, r)` with `2r` the largest even power of `π` dividing `A`.
pub fn normalize_quadratic(field: &PadicField, a: &PadicElem) -> Result<(PadicElem, u32)> {
    let v = field.valuation(a).require()?;
    let r = v / 2;
    Ok((field.shift_down(a, 2 * r)?, r))
}

/// Decision for the depressed quadratic `x^2 + A`.
pub fn decide_depressed_quadratic(field: &PadicField, a: &PadicElem) -> Result<Decision> {
    let (a, r) = normalize_quadratic(field, a)?;
    let res = field.residue();
    if field.valuation(&a) == Valuation::Exact(0) {
        // roots are ±sqrt(-A)
        let split = res.is_square(res.neg(field.digit(&a, 0)))?;
        let ty = if split {
            SplittingType::split(2)
        } else {
            SplittingType::irreducible(2)
        };
        Ok(Decision {
            group: GroupLabel::cyclic(&ty)?,
            splitting_type: ty,
            unramified: true,
            case: CaseTag::QuadraticUnit,
            rescale: r,
        })
    } else {
        let ty = SplittingType::irreducible(2);
        Ok(Decision {
            group: GroupLabel::cyclic(&ty)?,
            splitting_type: ty,
            unramified: false,
            case: CaseTag::QuadraticRamified,
            rescale: r,
        })
    }
}

pub fn decide_quadratic(field: &PadicField, g: &PadicPoly) -> Result<Decision> {
    if g.degree() != 2 {
        return Err(Error::InvalidParameter("expected a quadratic".into()));
    }
    let d = depress(field, g)?;
    decide_depressed_quadratic(field, d.coeff(0))
}

/// Lower bound on `floor(v / d)` and whether it is exact.
fn floor_div(v: Valuation, d: u32) -> (u32, bool) {
    match v {
        Valuation::Exact(x) => (x / d, true),
        Valuation::AtLeast(k) => (k / d, false),
    }
}

/// `(A', B', m)` with `A' = A / π^{2m}`, `B' = B / π^{3m}` and `m` maximal.
pub fn normalize_cubic(field: &PadicField, a: &PadicElem, b: &PadicElem) -> Result<(PadicElem, PadicElem, u32)> {
    let (la, ea) = floor_div(field.valuation(a), 2);
    let (lb, eb) = floor_div(field.valuation(b), 3);
    let m = la.min(lb);
    if !((ea && la == m) || (eb && lb == m)) {
        return Err(Error::PrecisionExhausted);
    }
    Ok((field.shift_down(a, 2 * m)?, field.shift_down(b, 3 * m)?, m))
}

/// `Some(true)` if `v >= t` is certain, `Some(false)` if `v < t`, `None` if unknown.
fn at_least(v: Valuation, t: u32) -> Option<bool> {
    match v {
        Valuation::Exact(x) => Some(x >= t),
        Valuation::AtLeast(k) if k >= t => Some(true),
        Valuation::AtLeast(_) => None,
    }
}

/// `-4A^3 - 27B^2`.
pub fn cubic_discriminant(field: &PadicField, a: &PadicElem, b: &PadicElem) -> PadicElem {
    let k = a.precision().min(b.precision());
    let a3 = field.mul(&field.mul(a, a), a);
    let b2 = field.mul(b, b);
    let t1 = field.mul(&field.from_int(4, k), &a3);
    let t2 = field.mul(&field.from_int(27, k), &b2);
    field.neg(&field.add(&t1, &t2))
}

fn cyclic_decision(ty: SplittingType, case: CaseTag, rescale: u32) -> Result<Decision> {
    Ok(Decision {
        group: GroupLabel::cyclic(&ty)?,
        splitting_type: ty,
        unramified: true,
        case,
        rescale,
    })
}

pub fn decide_cubic(field: &PadicField, g: &PadicPoly) -> Result<Decision> {
    if g.degree() != 3 {
        return Err(Error::InvalidParameter("expected a cubic".into()));
    }
    if field.p() <= 3 {
        return Err(Error::Unsupported("cubics need p > 3".into()));
    }
    let d = depress(field, g)?;
    decide_depressed_cubic(field, d.coeff(1), d.coeff(0))
}

/// Decision for `x^3 + A x + B`.
pub fn decide_depressed_cubic(field: &PadicField, a: &PadicElem, b: &PadicElem) -> Result<Decision> {
    let (a, b, m) = normalize_cubic(field, a, b)?;
    let (va, vb) = (field.valuation(&a), field.valuation(&b));
    let known = |x: Option<bool>| x.ok_or(Error::PrecisionExhausted);
    if vb == Valuation::Exact(0) {
        return decide_case5(field, &a, &b, m);
    }
    let case = if va == Valuation::Exact(0) {
        CaseTag::Case1
    } else if va == Valuation::Exact(1) {
        if known(at_least(vb, 2))? {
            CaseTag::Case2
        } else {
            CaseTag::Case4
        }
    } else if vb == Valuation::Exact(1) {
        CaseTag::Case4
    } else if known(at_least(va, 2))? && vb == Valuation::Exact(2) {
        CaseTag::Case3
    } else {
        return Err(Error::PrecisionExhausted);
    };
    match case {
        CaseTag::Case1 => {
            let k = a.precision().min(b.precision());
            let h = PadicPoly::monic(field, vec![field.truncate(&b, k), field.truncate(&a, k), field.zero(k)]);
            let ty = PolyRing::new(field.residue()).splitting_type_by_degrees(&reduce_poly(field, &h))?;
            assert!(ty.is_squarefree(), "case 1 reduction must be square-free");
            cyclic_decision(ty, case, m)
        }
        CaseTag::Case2 => Ok(Decision {
            splitting_type: SplittingType::from_degrees(&[2, 1])?,
            group: GroupLabel::cyclic(&SplittingType::from_degrees(&[2, 1])?)?,
            unramified: false,
            case,
            rescale: m,
        }),
        _ => {
            let disc = cubic_discriminant(field, &a, &b);
            let group = if field.is_square_in_field(&disc)? {
                GroupLabel::cyclic(&SplittingType::irreducible(3))?
            } else {
                GroupLabel::s3()
            };
            Ok(Decision {
                splitting_type: SplittingType::irreducible(3),
                group,
                unramified: false,
                case,
                rescale: m,
            })
        }
    }
}

fn decide_case5(field: &PadicField, a: &PadicElem, b: &PadicElem, m: u32) -> Result<Decision> {
    let k = a.precision().min(b.precision());
    let (a, b) = (field.truncate(a, k), field.truncate(b, k));
    let h = PadicPoly::monic(field, vec![b.clone(), a.clone(), field.zero(k)]);
    let red = reduce_poly(field, &h);
    let ty = PolyRing::new(field.residue()).splitting_type_by_degrees(&red)?;
    if ty.is_squarefree() {
        let case = match ty.parts().len() {
            1 => CaseTag::Case5A,
            2 => CaseTag::Case5B,
            _ => CaseTag::Case5C,
        };
        return cyclic_decision(ty, case, m);
    }
    assert_eq!(
        ty,
        SplittingType::new(vec![(1, 2), (1, 1)])?,
        "triple root with unit constant term"
    );
    // reduction (x + a)^2 (x - 2a): the simple root is 3b/a
    let res = field.residue();
    let (abar, bbar) = (field.digit(&a, 0), field.digit(&b, 0));
    let r0 = res.div(res.mul(res.from_int(3), bbar), abar)?;
    let r = hensel_lift(field, &h, r0, k)?;
    // x^3 + A x + B = (x - r)(x^2 + r x + r^2 + A); shifting by r/2 leaves x^2 + A + 3r^2/4
    let r2 = field.mul(&r, &r);
    let three_quarters = field.div_unit(&field.from_int(3, k), &field.from_int(4, k))?;
    let d = field.add(&a, &field.mul(&three_quarters, &r2));
    let quad = decide_depressed_quadratic(field, &d)?;
    let ty = if quad.splitting_type == SplittingType::split(2) {
        SplittingType::split(3)
    } else {
        SplittingType::from_degrees(&[2, 1])?
    };
    Ok(Decision {
        group: GroupLabel::cyclic(&ty)?,
        splitting_type: ty,
        unramified: quad.unramified,
        case: CaseTag::Case5D,
        rescale: m,
    })
}

/// Dispatch on degree 2 or 3.
pub fn decide(field: &PadicField, g: &PadicPoly) -> Result<Decision> {
    match g.degree() {
        2 => decide_quadratic(field, g),
        3 => decide_cubic(field, g),
        n => Err(Error::Unsupported(format!(
            "exact decisions need degree 2 or 3, got {n}"
        ))),
    }
}

/// Splitting type and cyclic group read off a square-free reduction.
pub fn fast_path(field: &PadicField, g: &PadicPoly) -> FastPath {
    let ring = PolyRing::new(field.residue());
    let red = reduce_poly(field, g);
    if !ring.is_squarefree(&red) {
        return FastPath::Deferred;
    }
    let ty = ring.splitting_type_by_degrees(&red).expect("monic reduction");
    FastPath::Squarefree {
        group: GroupLabel::cyclic(&ty).expect("square-free type"),
        splitting_type: ty,
    }
}
