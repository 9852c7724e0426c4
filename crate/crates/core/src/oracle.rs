//! Brute-force counts used to validate the closed forms: complete censuses of
//! monic polynomials over `F_q`, cycle types in `S_n`, and the repeated-root
//! count behind the `1/(2q+2)` limit.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;

use crate::ff::{FqElem, FqField};
use crate::fqpoly::{enumerate_monic, monic_count, monic_from_index, PolyRing};
use crate::padic::PadicField;
use crate::split_types::SplittingType;
use crate::{Error, Result};

/// Largest `n` accepted by [`census_sn`].
pub const MAX_SN_DEGREE: u32 = 8;

const CHUNK: u128 = 4096;

fn merge(mut a: BTreeMap<SplittingType, u128>, b: BTreeMap<SplittingType, u128>) -> BTreeMap<SplittingType, u128> {
    for (k, v) in b {
        *a.entry(k).or_default() += v;
    }
    a
}

/// Splitting type counts over all `q^n` monic polynomials of degree `n`.
pub fn census_fq(n: u32, field: &FqField, cap: u128) -> Result<BTreeMap<SplittingType, u128>> {
    enumerate_monic(field, n, cap)?;
    let total = monic_count(field.q(), n);
    let chunks = total.div_ceil(CHUNK);
    let ring = PolyRing::new(field);
    let counts = (0..chunks as u64)
        .into_par_iter()
        .map(|c| {
            let mut local = BTreeMap::new();
            let start = c as u128 * CHUNK;
            for idx in start..(start + CHUNK).min(total) {
                let g = monic_from_index(field, n, idx);
                let t = ring.splitting_type_by_degrees(&g).expect("monic of positive degree");
                *local.entry(t).or_default() += 1;
            }
            local
        })
        .reduce(BTreeMap::new, merge);
    Ok(counts)
}

fn cycle_type(perm: &[usize]) -> SplittingType {
    let mut seen = vec![false; perm.len()];
    let mut lens = Vec::new();
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        lens.push(len);
    }
    SplittingType::from_degrees(&lens).expect("nonempty cycle list")
}

/// Cycle type counts over all `n!` permutations of `n` points.
pub fn census_sn(n: u32) -> Result<BTreeMap<SplittingType, u64>> {
    if n == 0 || n > MAX_SN_DEGREE {
        return Err(Error::InvalidParameter(format!(
            "census_sn needs 1 <= n <= {MAX_SN_DEGREE}"
        )));
    }
    let mut perm: Vec<usize> = (0..n as usize).collect();
    let mut counts = BTreeMap::new();
    loop {
        *counts.entry(cycle_type(&perm)).or_default() += 1;
        // next permutation in lexicographic order
        let Some(i) = (0..perm.len() - 1).rev().find(|&i| perm[i] < perm[i + 1]) else {
            break;
        };
        let j = (i + 1..perm.len()).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    Ok(counts)
}

/// Counts for cubics `x^3 + A x + B` over `O/π^k` (unramified model) with
/// reduction `(x + a)^2 (x - 2a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleCount {
    /// Number of `(A, B)` modulo `π^k` with that reduction: `q^{2k-2}`.
    pub shape_total: BigUint,
    /// How many of them factor as three linear factors modulo `π^k`.
    pub three_linear: BigUint,
}

/// Enumerates root triples `(α, β, -α-β)` with `α ≡ β ≡ -a (mod π)` and
/// collects the distinct coefficient pairs they produce.
pub fn triple_count(p: u64, f: u32, k: u32, a: FqElem, cap: u128) -> Result<TripleCount> {
    if p <= 3 {
        return Err(Error::Unsupported("needs p > 3".into()));
    }
    if k == 0 {
        return Err(Error::InvalidParameter("precision must be positive".into()));
    }
    if a.is_zero() {
        return Err(Error::InvalidParameter("a must be nonzero".into()));
    }
    let field = PadicField::new(p, f, 1)?;
    let q = field.q();
    let lifts = monic_count(q, k - 1);
    let pairs = lifts.saturating_mul(lifts);
    if pairs > cap {
        return Err(Error::CensusCapExceeded { requested: pairs, cap });
    }
    let res = field.residue();
    let minus_a = res.neg(a);
    // every element ≡ -a mod π, as digit strings
    let lift = |idx: u128| {
        let mut d = vec![minus_a];
        let mut x = idx;
        for _ in 1..k {
            d.push(FqElem::from_index((x % q as u128) as u32));
            x /= q as u128;
        }
        field.from_digits(&d)
    };
    let roots: Vec<_> = (0..lifts).map(lift).collect();
    let mut seen = HashSet::new();
    for (i, alpha) in roots.iter().enumerate() {
        for beta in &roots[i..] {
            let gamma = field.neg(&field.add(alpha, beta));
            let ab = field.mul(alpha, beta);
            let coef_a = field.add(&ab, &field.mul(&gamma, &field.add(alpha, beta)));
            let coef_b = field.neg(&field.mul(&ab, &gamma));
            seen.insert((coef_a, coef_b));
        }
    }
    Ok(TripleCount {
        shape_total: BigUint::from(q).pow(2 * (k - 1)),
        three_linear: BigUint::from(seen.len()),
    })
}

/// Closed form for the three-linear-factor count at precision `k`.
pub fn triple_count_closed_form(q: u64, k: u32) -> BigUint {
    assert!(k >= 1);
    let qq = BigUint::from(q);
    let base = qq.pow(k - 1);
    let sub = if k % 2 == 1 { BigUint::one() } else { qq.clone() };
    // (q^{k-1}/2) ((q^{k-1} - sub)/(q+1)) + q^{k-1}; the product is even
    &base * (&base - sub) / (BigUint::from(2u32) * (qq + 1u32)) + &base
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fqpoly::DEFAULT_CENSUS_CAP;
    use crate::split_types::{all_types, nu_n, q_count, Rat};
    use num_bigint::BigInt;

    fn ty(parts: &[(u32, u32)]) -> SplittingType {
        SplittingType::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn census_examples() {
        let f3 = FqField::new(3, 1).unwrap();
        let c = census_fq(2, &f3, DEFAULT_CENSUS_CAP).unwrap();
        assert_eq!(c[&ty(&[(1, 1), (1, 1)])], 3);
        assert_eq!(c[&ty(&[(2, 1)])], 3);
        assert_eq!(c[&ty(&[(1, 2)])], 3);
        let f5 = FqField::new(5, 1).unwrap();
        let c = census_fq(3, &f5, DEFAULT_CENSUS_CAP).unwrap();
        let sqf: u128 = c.iter().filter(|(t, _)| t.is_squarefree()).map(|(_, v)| v).sum();
        assert_eq!(sqf, 100);
        for q in [3u64, 4, 7] {
            let k = FqField::with_order(q).unwrap();
            let c = census_fq(1, &k, 10).unwrap();
            assert_eq!(c.into_iter().collect::<Vec<_>>(), vec![(ty(&[(1, 1)]), q as u128)]);
        }
        assert!(census_fq(4, &f5, 100).is_err());
    }

    #[test]
    fn census_matches_gauss_counts() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            let k = FqField::with_order(q).unwrap();
            for n in 1..=4 {
                if monic_count(q, n) > 100_000 {
                    continue;
                }
                let c = census_fq(n, &k, DEFAULT_CENSUS_CAP).unwrap();
                assert_eq!(c.values().sum::<u128>(), monic_count(q, n));
                for mu in all_types(n, true).unwrap() {
                    let got = BigUint::from(c.get(&mu).copied().unwrap_or(0));
                    assert_eq!(got, q_count(n, q, &mu).unwrap(), "q={q} n={n} {mu}");
                }
                if n >= 2 {
                    let nonsq: u128 = c.iter().filter(|(t, _)| !t.is_squarefree()).map(|(_, v)| v).sum();
                    assert_eq!(nonsq, monic_count(q, n - 1));
                }
            }
        }
    }

    #[test]
    fn census_is_thread_independent() {
        let k = FqField::new(7, 1).unwrap();
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let a = one.install(|| census_fq(4, &k, DEFAULT_CENSUS_CAP).unwrap());
        let b = four.install(|| census_fq(4, &k, DEFAULT_CENSUS_CAP).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn symmetric_group_examples() {
        let c = census_sn(3).unwrap();
        assert_eq!(c[&ty(&[(3, 1)])], 2);
        assert_eq!(c[&ty(&[(2, 1), (1, 1)])], 3);
        assert_eq!(c[&ty(&[(1, 1), (1, 1), (1, 1)])], 1);
        let c = census_sn(4).unwrap();
        assert_eq!(c[&SplittingType::from_degrees(&[2, 1, 1]).unwrap()], 6);
        assert_eq!(c[&SplittingType::from_degrees(&[2, 2]).unwrap()], 3);
        assert!(census_sn(9).is_err());
        for n in 1..=7 {
            let c = census_sn(n).unwrap();
            let fact = crate::arith::factorial(n as u64);
            for (mu, count) in c {
                let freq = Rat::new(BigInt::from(count), BigInt::from(fact.clone()));
                assert_eq!(freq, nu_n(&mu).unwrap());
            }
        }
    }

    #[test]
    fn triple_count_examples() {
        let a = FqElem::from_index(1);
        for (q, k, want) in [(5u64, 2u32, 5u32), (5, 3, 75), (7, 2, 7), (7, 3, 196)] {
            let got = triple_count(q, 1, k, a, DEFAULT_CENSUS_CAP).unwrap();
            assert_eq!(got.three_linear, BigUint::from(want), "q={q} k={k}");
            assert_eq!(got.three_linear, triple_count_closed_form(q, k));
            assert_eq!(got.shape_total, BigUint::from(q).pow(2 * (k - 1)));
        }
        assert_eq!(triple_count_closed_form(5, 4), BigUint::from(1375u32));
        assert!(triple_count(3, 1, 2, a, DEFAULT_CENSUS_CAP).is_err());
        assert!(triple_count(5, 1, 4, a, 100).is_err());
    }

    #[test]
    fn triple_count_shape_total_by_enumeration() {
        // every (A, B) mod π^2 reducing to (x + a)^2 (x - 2a), counted directly
        let field = PadicField::new(5, 1, 1).unwrap();
        let res = field.residue();
        let a = res.from_int(2);
        let want_a = res.neg(res.mul(res.from_int(3), res.mul(a, a)));
        let want_b = res.mul(res.from_int(2), res.pow(a, 3));
        let mut n = 0u32;
        for x in 0..25 {
            for y in 0..25 {
                if res.from_int(x) == want_a && res.from_int(y) == want_b {
                    n += 1;
                }
            }
        }
        assert_eq!(
            BigUint::from(n),
            triple_count(5, 1, 2, a, DEFAULT_CENSUS_CAP).unwrap().shape_total
        );
    }

    #[test]
    fn triple_count_independent_of_a_and_f() {
        let k = 3;
        let counts: Vec<BigUint> = (1..5u32)
            .map(|i| {
                triple_count(5, 1, k, FqElem::from_index(i), DEFAULT_CENSUS_CAP)
                    .unwrap()
                    .three_linear
            })
            .collect();
        assert!(counts.iter().all(|c| *c == counts[0]));
        let f2 = triple_count(5, 2, 2, FqElem::from_index(7), DEFAULT_CENSUS_CAP).unwrap();
        assert_eq!(f2.three_linear, triple_count_closed_form(25, 2));
    }
}
