//! Closed forms for monic quadratics and cubics over `O_p` with `p > n`.

use num_bigint::BigInt;
use num_traits::One;

use super::{Conditioning, Dist, GroupLabel, Label, Rat, SplittingType, Value};
use crate::arith;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct LowDegreeTable {
    pub types: Dist,
    pub groups: Dist,
}

#[derive(Clone, Debug)]
pub struct UnramifiedTable {
    /// Joint probabilities `P(unramified and type mu)`.
    pub types: Dist,
    /// `P(unramified)`.
    pub total: Rat,
    /// `P(trivial group | unramified)`.
    pub trivial_given_unramified: Rat,
}

fn r(x: i64) -> Rat {
    Rat::from_integer(BigInt::from(x))
}

fn residue_prime(q: u64, n: u32) -> Result<u64> {
    let (p, _) = arith::prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if p <= n as u64 {
        return Err(Error::Unsupported(format!(
            "degree {n} needs residue characteristic p > {n}, got p = {p}"
        )));
    }
    Ok(p)
}

/// `(q/3)`: `+1` if `q = 1 (mod 3)`, else `-1`.
pub fn legendre_q_over_3(q: u64) -> i64 {
    if q % 3 == 1 {
        1
    } else {
        -1
    }
}

fn ty(d: &[u32]) -> SplittingType {
    SplittingType::from_degrees(d).unwrap()
}

fn table(n: u32, q: u64, cond: Conditioning, rows: Vec<(Label, Rat)>) -> Dist {
    let mut d = Dist::new(n, q, cond);
    for (label, value) in rows {
        d.push(label, Value::Exact(value));
    }
    d
}

pub fn exact_quadratic(q: u64) -> Result<LowDegreeTable> {
    residue_prime(q, 2)?;
    let qq = r(q as i64);
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    let shift = Rat::one() / (r(2) * &qq + r(2));
    let split = &half - &shift;
    let inert = &half + &shift;
    let [id, c2] = [0, 1].map(|i| GroupLabel::named(2)[i].clone());
    Ok(LowDegreeTable {
        types: table(
            2,
            q,
            Conditioning::None,
            vec![
                (Label::Type(ty(&[1, 1])), split.clone()),
                (Label::Type(ty(&[2])), inert.clone()),
            ],
        ),
        groups: table(
            2,
            q,
            Conditioning::None,
            vec![(Label::Group(id), split), (Label::Group(c2), inert)],
        ),
    })
}

fn quintic(q: &Rat) -> Rat {
    q.pow(4) + q.pow(3) + q.pow(2) + q + r(1)
}

pub fn exact_cubic(q: u64) -> Result<LowDegreeTable> {
    residue_prime(q, 3)?;
    let qq = r(q as i64);
    let p5 = quintic(&qq);
    let legendre = r(legendre_q_over_3(q));
    let q2 = qq.pow(2);
    let q3 = qq.pow(3);
    let q4 = qq.pow(4);

    let t111 = Rat::new(1.into(), 6.into())
        - (r(3) * &q4 + &q3 + r(2) * &q2 + r(2) * &qq + r(1)) / (r(6) * (&qq + r(1)) * &p5);
    let t21 = Rat::new(1.into(), 2.into()) + (&q4 - &q3 - r(1)) / (r(2) * (&qq + r(1)) * &p5);
    let t3 = Rat::new(1.into(), 3.into()) + (r(2) * &q2 - &qq + r(2)) / (r(3) * &p5);
    let tail = (&q2 + r(1)) / &p5;
    let c3 = Rat::new(1.into(), 3.into()) - (&q2 + &qq + r(1)) / (r(3) * &p5) + (r(1) + &legendre) * &tail / r(2);
    let s3 = (r(1) - &legendre) * &tail / r(2);

    let named = GroupLabel::named(3);
    Ok(LowDegreeTable {
        types: table(
            3,
            q,
            Conditioning::None,
            vec![
                (Label::Type(ty(&[1, 1, 1])), t111.clone()),
                (Label::Type(ty(&[2, 1])), t21.clone()),
                (Label::Type(ty(&[3])), t3),
            ],
        ),
        groups: table(
            3,
            q,
            Conditioning::None,
            vec![
                (Label::Group(named[0].clone()), t111),
                (Label::Group(named[1].clone()), t21),
                (Label::Group(named[2].clone()), c3),
                (Label::Group(named[3].clone()), s3),
            ],
        ),
    })
}

/// Probabilities of an unramified splitting field, jointly with each
/// square-free splitting type, for `n` in `{2, 3}`.
pub fn exact_unramified(n: u32, q: u64) -> Result<UnramifiedTable> {
    let qq = r(q as i64);
    match n {
        2 => {
            residue_prime(q, 2)?;
            let row = Rat::new(1.into(), 2.into()) - Rat::one() / (r(2) * &qq + r(2));
            let total = r(1) - Rat::one() / (&qq + r(1));
            let trivial_given_unramified = &row / &total;
            Ok(UnramifiedTable {
                types: table(
                    2,
                    q,
                    Conditioning::Unramified,
                    vec![(Label::Type(ty(&[1, 1])), row.clone()), (Label::Type(ty(&[2])), row)],
                ),
                total,
                trivial_given_unramified,
            })
        }
        3 => {
            residue_prime(q, 3)?;
            let p5 = quintic(&qq);
            let (q2, q3, q4) = (qq.pow(2), qq.pow(3), qq.pow(4));
            let total = r(1) - (&q2 + &qq + r(1)) / &p5;
            let r111 = Rat::new(1.into(), 6.into())
                - (r(3) * &q4 + &q3 + r(2) * &q2 + r(2) * &qq + r(1)) / (r(6) * (&qq + r(1)) * &p5);
            let r21 = Rat::new(1.into(), 2.into())
                + (&q4 - &q3 - r(2) * &q2 - r(2) * &qq - r(1)) / (r(2) * (&qq + r(1)) * &p5);
            let r3 = Rat::new(1.into(), 3.into()) - (&q2 + &qq + r(1)) / (r(3) * &p5);
            let trivial_given_unramified = &r111 / &total;
            Ok(UnramifiedTable {
                types: table(
                    3,
                    q,
                    Conditioning::Unramified,
                    vec![
                        (Label::Type(ty(&[1, 1, 1])), r111),
                        (Label::Type(ty(&[2, 1])), r21),
                        (Label::Type(ty(&[3])), r3),
                    ],
                ),
                total,
                trivial_given_unramified,
            })
        }
        _ => Err(Error::Unsupported(format!("unramified table for degree {n}"))),
    }
}
