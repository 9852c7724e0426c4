use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use super::{all_types, GroupLabel, Rat, SplittingType, MAX_ENUMERATED_DEGREE};
use crate::arith::{self, binomial, factorial};
use crate::fqpoly::count_irreducibles;
use crate::{Error, Result};

fn rat(n: u64, d: u64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

fn check_star(n: u32, mu: &SplittingType) -> Result<()> {
    if !mu.is_squarefree() || mu.degree() != n {
        return Err(Error::InvalidParameter(format!("{mu} is not in T_{n}*")));
    }
    Ok(())
}

fn check_prime_power(q: u64) -> Result<()> {
    arith::prime_power(q).map(|_| ()).ok_or(Error::NotPrimePower(q))
}

/// Fraction of `S_n` with cycle type `mu`: `prod_i i^{-c_i} / c_i!`.
pub fn nu_n(mu: &SplittingType) -> Result<Rat> {
    check_star(mu.degree(), mu)?;
    let n = mu.degree();
    let mut den = BigUint::one();
    for i in 1..=n {
        let c = mu.count_of_degree(i);
        den *= BigUint::from(i).pow(c) * factorial(c as u64);
    }
    Ok(Rat::new(BigInt::one(), den.into()))
}

/// Number of monic square-free degree-`n` polynomials over `F_q` with
/// splitting type `mu`: `prod_i C(M(q; i), c_i(mu))`.
pub fn q_count(n: u32, q: u64, mu: &SplittingType) -> Result<BigUint> {
    check_star(n, mu)?;
    check_prime_power(q)?;
    Ok((1..=n)
        .map(|i| binomial(&count_irreducibles(q, i), mu.count_of_degree(i) as u64))
        .product())
}

/// Haar measure of the monic degree-`n` polynomials over `O_p` whose reduction
/// is square-free of type `mu`: `q_count / q^n`.
pub fn nu_star(n: u32, q: u64, mu: &SplittingType) -> Result<Rat> {
    let count = q_count(n, q, mu)?;
    Ok(Rat::new(count.into(), BigInt::from(q).pow(n)))
}

/// The Erdős–Turán weight of a conjugacy class of subgroups of `S_n`: the
/// cycle-type frequency of a generator for cyclic classes, zero otherwise.
pub fn erdos_turan(n: u32, g: &GroupLabel) -> Result<Rat> {
    if n == 0 || n > MAX_ENUMERATED_DEGREE {
        return Err(Error::InvalidParameter(format!("degree {n} out of range")));
    }
    match g {
        GroupLabel::Cyclic(mu) => {
            check_star(n, mu)?;
            nu_n(mu)
        }
        GroupLabel::NonCyclic(_) => Ok(Rat::zero()),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Bound {
    Feasible(Rat),
    Infeasible,
}

/// Upper bound on `|nu_star(n, q, mu) - nu_n(mu)|`: `n^2 / (q - n^2) * nu_n(mu)`
/// for `n >= 3`, and `(n^2 + n) / (q - n^2 - n) * nu_n(mu)` for `n = 2`.
/// The denominator must be positive.
pub fn error_bound(n: u32, q: u64, mu: &SplittingType) -> Result<Bound> {
    check_star(n, mu)?;
    let threshold = match n {
        0 | 1 => return Ok(Bound::Infeasible),
        2 => 6,
        _ => (n * n) as u64,
    };
    if q <= threshold {
        return Ok(Bound::Infeasible);
    }
    Ok(Bound::Feasible(rat(threshold, q - threshold) * nu_n(mu)?))
}

#[derive(Clone, Debug)]
pub struct BoundCheck {
    pub mu: SplittingType,
    pub nu_star: Rat,
    pub nu_n: Rat,
    pub deviation: Rat,
    pub bound: Rat,
    pub holds: bool,
}

impl BoundCheck {
    pub fn margin(&self) -> Rat {
        &self.bound - &self.deviation
    }
}

/// Compares `nu_star` with `nu_n` for every `mu` in `T_n*` against the bound.
pub fn verify_bounds(n: u32, q: u64) -> Result<Vec<BoundCheck>> {
    check_prime_power(q)?;
    let mut out = Vec::new();
    for mu in all_types(n, true)? {
        let bound = match error_bound(n, q, &mu)? {
            Bound::Feasible(b) => b,
            Bound::Infeasible => return Err(Error::InfeasibleBound { n, q }),
        };
        let ns = nu_star(n, q, &mu)?;
        let nn = nu_n(&mu)?;
        let deviation = (&ns - &nn).abs();
        let holds = deviation < bound;
        out.push(BoundCheck {
            mu,
            nu_star: ns,
            nu_n: nn,
            deviation,
            bound,
            holds,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(d: &[u32]) -> SplittingType {
        SplittingType::from_degrees(d).unwrap()
    }

    #[test]
    fn cycle_type_frequencies() {
        for n in 1..=8 {
            assert_eq!(nu_n(&SplittingType::irreducible(n)).unwrap(), rat(1, n as u64));
            let fact: u64 = (1..=n as u64).product();
            assert_eq!(nu_n(&SplittingType::split(n)).unwrap(), rat(1, fact));
        }
        assert_eq!(nu_n(&ty(&[2, 1])).unwrap(), rat(1, 2));
        assert!(nu_n(&SplittingType::new(vec![(1, 2)]).unwrap()).is_err());
    }

    #[test]
    fn cycle_type_frequencies_sum_to_one() {
        for n in 1..=MAX_ENUMERATED_DEGREE {
            let total: Rat = all_types(n, true).unwrap().iter().map(|m| nu_n(m).unwrap()).sum();
            assert_eq!(total, Rat::one(), "n = {n}");
        }
    }

    #[test]
    fn squarefree_counts() {
        assert_eq!(q_count(2, 3, &ty(&[1, 1])).unwrap(), BigUint::from(3u32));
        // more linear factors than elements of F_q
        assert!(q_count(4, 3, &ty(&[1, 1, 1, 1])).unwrap().is_zero());
        let total: BigUint = all_types(3, true)
            .unwrap()
            .iter()
            .map(|m| q_count(3, 5, m).unwrap())
            .sum();
        assert_eq!(total, BigUint::from(100u32));
        assert!(q_count(2, 6, &ty(&[2])).is_err());
    }

    #[test]
    fn star_mass_is_one_minus_one_over_q() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 25, 27, 49] {
            for n in 2..=7 {
                let total: Rat = all_types(n, true)
                    .unwrap()
                    .iter()
                    .map(|m| nu_star(n, q, m).unwrap())
                    .sum();
                assert_eq!(total, Rat::one() - rat(1, q), "n = {n}, q = {q}");
            }
        }
    }

    #[test]
    fn nu_star_examples() {
        assert_eq!(nu_star(2, 5, &ty(&[1, 1])).unwrap(), rat(10, 25));
        assert_eq!(
            nu_star(3, 7, &ty(&[3])).unwrap(),
            Rat::new(count_irreducibles(7, 3).into(), BigInt::from(343))
        );
    }

    #[test]
    fn erdos_turan_examples() {
        let g1 = GroupLabel::cyclic(&ty(&[2, 1, 1])).unwrap();
        let g2 = GroupLabel::cyclic(&ty(&[2, 2])).unwrap();
        assert_eq!(erdos_turan(4, &g1).unwrap(), rat(6, 24));
        assert_eq!(erdos_turan(4, &g2).unwrap(), rat(3, 24));
        assert_eq!(erdos_turan(3, &GroupLabel::s3()).unwrap(), Rat::zero());
        for n in 1..=8 {
            let total: Rat = all_types(n, true)
                .unwrap()
                .iter()
                .map(|m| erdos_turan(n, &GroupLabel::cyclic(m).unwrap()).unwrap())
                .sum();
            assert_eq!(total, Rat::one());
        }
    }

    #[test]
    fn bound_examples() {
        assert_eq!(error_bound(3, 25, &ty(&[3])).unwrap(), Bound::Feasible(rat(3, 16)));
        assert_eq!(error_bound(2, 7, &ty(&[2])).unwrap(), Bound::Feasible(rat(3, 1)));
        assert_eq!(error_bound(3, 9, &ty(&[3])).unwrap(), Bound::Infeasible);
        assert_eq!(error_bound(2, 6, &ty(&[2])).unwrap(), Bound::Infeasible);
        assert!(matches!(verify_bounds(3, 9), Err(Error::InfeasibleBound { .. })));
    }

    #[test]
    fn bounds_hold() {
        for (n, q) in [(3u32, 11u64), (2, 9), (4, 25)] {
            let checks = verify_bounds(n, q).unwrap();
            assert_eq!(checks.len(), all_types(n, true).unwrap().len());
            assert!(checks.iter().all(|c| c.holds && c.margin() > Rat::zero()));
        }
    }
}
