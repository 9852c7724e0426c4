//! Splitting types, Galois group labels, and the closed-form distributions
//! built on them.

mod dist;
mod formulas;
mod lowdeg;

use std::cmp::Ordering;
use std::fmt;

use crate::{Error, Result};

pub use dist::{Conditioning, Dist, Label, Value};
pub use formulas::{erdos_turan, error_bound, nu_n, nu_star, q_count, verify_bounds, Bound, BoundCheck};
pub use lowdeg::{exact_cubic, exact_quadratic, exact_unramified, legendre_q_over_3, LowDegreeTable, UnramifiedTable};

/// Exact probabilities.
pub type Rat = num_rational::BigRational;

/// Largest degree for which splitting types are enumerated.
pub const MAX_ENUMERATED_DEGREE: u32 = 12;

/// The multiset of `(degree, exponent)` pairs of a monic factorization.
///
/// Canonical order: degrees decreasing, and within one degree exponents
/// decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SplittingType {
    parts: Vec<(u32, u32)>,
}

impl SplittingType {
    pub fn new(mut parts: Vec<(u32, u32)>) -> Result<Self> {
        if parts.is_empty() || parts.iter().any(|&(d, e)| d == 0 || e == 0) {
            return Err(Error::InvalidParameter(
                "splitting type needs at least one part with positive degree and exponent".into(),
            ));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(SplittingType { parts })
    }

    /// Square-free type with the given factor degrees (a partition of `n`).
    pub fn from_degrees(degrees: &[u32]) -> Result<Self> {
        Self::new(degrees.iter().map(|&d| (d, 1)).collect())
    }

    /// The type `(1, .., 1)` of a polynomial splitting into distinct linear factors.
    pub fn split(n: u32) -> Self {
        SplittingType {
            parts: vec![(1, 1); n as usize],
        }
    }

    /// The type `(n)` of an irreducible polynomial.
    pub fn irreducible(n: u32) -> Self {
        SplittingType { parts: vec![(n, 1)] }
    }

    pub fn parts(&self) -> &[(u32, u32)] {
        &self.parts
    }

    /// Total degree `sum deg * exp`.
    pub fn degree(&self) -> u32 {
        self.parts.iter().map(|&(d, e)| d * e).sum()
    }

    /// Membership in `T_n*`: every exponent equals one.
    pub fn is_squarefree(&self) -> bool {
        self.parts.iter().all(|&(_, e)| e == 1)
    }

    /// `c_i(mu)`: the number of irreducible factors of degree `i`.
    pub fn count_of_degree(&self, i: u32) -> u32 {
        self.parts.iter().filter(|&&(d, _)| d == i).count() as u32
    }

    fn max_exponent(&self) -> u32 {
        self.parts.iter().map(|&(_, e)| e).max().unwrap_or(1)
    }

    fn sort_key(&self) -> (u32, Vec<u32>, Vec<u32>) {
        let mut degrees: Vec<u32> = self.parts.iter().map(|&(d, _)| d).collect();
        let mut exps: Vec<u32> = self.parts.iter().map(|&(_, e)| e).collect();
        degrees.reverse();
        exps.reverse();
        (self.max_exponent(), degrees, exps)
    }
}

// Square-free types first, then by largest exponent, then by degrees read
// from the smallest factor. For n = 3 this lists (1,1,1), (2,1), (3),
// (1^2,1), (1^3).
impl Ord for SplittingType {
    fn cmp(&self, other: &Self) -> Ordering {
        let (ea, da, xa) = self.sort_key();
        let (eb, db, xb) = other.sort_key();
        ea.cmp(&eb)
            .then_with(|| da.len().cmp(&db.len()).reverse())
            .then_with(|| da.iter().rev().cmp(db.iter().rev()))
            .then_with(|| xa.cmp(&xb))
    }
}

impl PartialOrd for SplittingType {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|&(d, e)| if e == 1 { d.to_string() } else { format!("{d}^{e}") })
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A conjugacy class of subgroups of `S_n`.
///
/// Cyclic classes are labelled by the cycle type of a generator. For `n <= 3`
/// the classes are displayed as `Id`, `C2`, `C3` and `S3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupLabel {
    Cyclic(SplittingType),
    NonCyclic(String),
}

impl GroupLabel {
    pub fn trivial(n: u32) -> Self {
        GroupLabel::Cyclic(SplittingType::split(n))
    }

    /// Cyclic class generated by a permutation of cycle type `mu`.
    pub fn cyclic(mu: &SplittingType) -> Result<Self> {
        if !mu.is_squarefree() {
            return Err(Error::InvalidParameter(format!("{mu} is not a cycle type")));
        }
        Ok(GroupLabel::Cyclic(mu.clone()))
    }

    pub fn s3() -> Self {
        GroupLabel::NonCyclic("S3".into())
    }

    pub fn is_cyclic(&self) -> bool {
        matches!(self, GroupLabel::Cyclic(_))
    }

    /// Named labels for degree 2 and 3, in the order Id, C2, C3, S3.
    pub fn named(n: u32) -> Vec<GroupLabel> {
        let ty = |d: &[u32]| GroupLabel::Cyclic(SplittingType::from_degrees(d).unwrap());
        match n {
            1 => vec![ty(&[1])],
            2 => vec![ty(&[1, 1]), ty(&[2])],
            3 => vec![ty(&[1, 1, 1]), ty(&[2, 1]), ty(&[3]), GroupLabel::s3()],
            _ => Vec::new(),
        }
    }
}

impl fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupLabel::NonCyclic(name) => f.write_str(name),
            GroupLabel::Cyclic(mu) if mu.degree() <= 3 => {
                // the order of a permutation of this cycle type
                let order = mu.parts().iter().map(|&(d, _)| d).max().unwrap_or(1);
                if order == 1 {
                    f.write_str("Id")
                } else {
                    write!(f, "C{order}")
                }
            }
            GroupLabel::Cyclic(mu) => write!(f, "<{mu}>"),
        }
    }
}

/// `T_n` (all splitting types of degree `n`) or, with `star`, `T_n*` (the
/// partitions of `n`).
pub fn all_types(n: u32, star: bool) -> Result<Vec<SplittingType>> {
    if n == 0 || n > MAX_ENUMERATED_DEGREE {
        return Err(Error::InvalidParameter(format!(
            "degree must be in 1..={MAX_ENUMERATED_DEGREE}, got {n}"
        )));
    }
    // candidate parts in decreasing canonical order
    let mut candidates: Vec<(u32, u32)> = Vec::new();
    for d in (1..=n).rev() {
        let max_e = if star { 1 } else { n / d };
        for e in (1..=max_e).rev() {
            candidates.push((d, e));
        }
    }
    let mut out = Vec::new();
    let mut current = Vec::new();
    multisets(&candidates, 0, n, &mut current, &mut out);
    let mut types: Vec<SplittingType> = out
        .into_iter()
        .map(|parts| SplittingType::new(parts).unwrap())
        .collect();
    types.sort();
    Ok(types)
}

fn multisets(
    candidates: &[(u32, u32)],
    start: usize,
    remaining: u32,
    current: &mut Vec<(u32, u32)>,
    out: &mut Vec<Vec<(u32, u32)>>,
) {
    if remaining == 0 {
        out.push(current.clone());
        return;
    }
    for (i, &(d, e)) in candidates.iter().enumerate().skip(start) {
        if d * e <= remaining {
            current.push((d, e));
            multisets(candidates, i, remaining - d * e, current, out);
            current.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(types: &[SplittingType]) -> Vec<String> {
        types.iter().map(|t| t.to_string()).collect()
    }

    #[test]
    fn t3_and_t3_star() {
        assert_eq!(
            names(&all_types(3, false).unwrap()),
            vec!["(1,1,1)", "(2,1)", "(3)", "(1^2,1)", "(1^3)"]
        );
        assert_eq!(names(&all_types(3, true).unwrap()), vec!["(1,1,1)", "(2,1)", "(3)"]);
        assert_eq!(names(&all_types(1, true).unwrap()), vec!["(1)"]);
        assert!(all_types(0, true).is_err());
        assert!(all_types(13, true).is_err());
    }

    #[test]
    fn partition_counts() {
        let p: Vec<usize> = (1..=12).map(|n| all_types(n, true).unwrap().len()).collect();
        assert_eq!(p, vec![1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
        for n in 1..=8 {
            for t in all_types(n, false).unwrap() {
                assert_eq!(t.degree(), n);
            }
        }
        // T_4 adds (1^4), (1^3,1), (1^2,1,1), (1^2,1^2), (2,1^2), (2^2) to the partitions.
        assert_eq!(all_types(2, false).unwrap().len(), 3);
        assert_eq!(all_types(4, false).unwrap().len(), 11);
    }

    #[test]
    fn canonical_order_and_counts() {
        let t = SplittingType::new(vec![(1, 1), (1, 2), (3, 1)]).unwrap();
        assert_eq!(t.parts(), &[(3, 1), (1, 2), (1, 1)]);
        assert_eq!(t.degree(), 6);
        assert_eq!(t.count_of_degree(1), 2);
        assert!(!t.is_squarefree());
        assert!(SplittingType::new(vec![(0, 1)]).is_err());
    }

    #[test]
    fn group_names() {
        let labels: Vec<String> = GroupLabel::named(3).iter().map(|g| g.to_string()).collect();
        assert_eq!(labels, vec!["Id", "C2", "C3", "S3"]);
        let g = GroupLabel::cyclic(&SplittingType::from_degrees(&[2, 2]).unwrap()).unwrap();
        assert_eq!(g.to_string(), "<(2,2)>");
        assert!(GroupLabel::cyclic(&SplittingType::new(vec![(1, 2)]).unwrap()).is_err());
    }
}
