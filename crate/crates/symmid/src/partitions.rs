//! Integer partitions and the combinatorics behind the symmetric bases.
//!
//! Partitions index everything downstream: the monomial-type orbit sums
//! `m_lambda`, their Reynolds-normalized duals `M_lambda`, and the
//! coefficient vectors parametrizing invariant subspaces. The ordering used
//! throughout is lexicographic ascending, comparing zero-padded part vectors
//! by their first difference.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigUint;
use num::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("{0:?} is not a subpartition of {1:?}")]
    NotSubpartition(Vec<u32>, Vec<u32>),
    #[error("partition has {parts} parts but only {n} variables are available")]
    TooManyParts { parts: usize, n: usize },
}

/// A weakly decreasing tuple of positive integers. The empty partition is
/// allowed and has weight zero.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Panics unless `parts` is weakly decreasing and strictly positive.
    pub fn new(parts: Vec<u32>) -> Self {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "partition parts must be weakly decreasing: {parts:?}"
        );
        assert!(
            parts.iter().all(|&p| p > 0),
            "partition parts must be positive: {parts:?}"
        );
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Builds a partition from an unsorted multiset of parts, dropping zeros.
    pub fn from_multiset(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Sum of the parts.
    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn num_parts(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part at `i`, or 0 past the end (the zero-padding view).
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Multiset counts: how many parts equal each value.
    pub fn part_counts(&self) -> BTreeMap<u32, usize> {
        let mut counts = BTreeMap::new();
        for &p in &self.parts {
            *counts.entry(p).or_insert(0) += 1;
        }
        counts
    }

    /// True if the multiset of parts of `other` is contained in ours.
    pub fn contains_submultiset(&self, other: &Partition) -> bool {
        let own = self.part_counts();
        other
            .part_counts()
            .iter()
            .all(|(p, c)| own.get(p).is_some_and(|o| o >= c))
    }

    /// The multiset difference `self \ other` as a partition.
    /// Panics unless `other` is a subpartition.
    pub fn multiset_difference(&self, other: &Partition) -> Partition {
        assert!(self.contains_submultiset(other));
        let mut counts = self.part_counts();
        for (p, c) in other.part_counts() {
            *counts.get_mut(&p).unwrap() -= c;
        }
        let mut parts = Vec::new();
        for (p, c) in counts {
            parts.extend(std::iter::repeat(p).take(c));
        }
        Partition::from_multiset(parts)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Lexicographic order on zero-padded part vectors: the partition whose
/// first differing entry is larger is the larger one.
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        let len = self.parts.len().max(other.parts.len());
        for i in 0..len {
            match self.part(i).cmp(&other.part(i)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All partitions of `d` with at most `max_parts` parts, lex ascending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionTable {
    pub d: u32,
    pub max_parts: usize,
    pub entries: Vec<Partition>,
}

impl PartitionTable {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Position of `lambda` in the lex-ascending listing.
    pub fn index_of(&self, lambda: &Partition) -> Option<usize> {
        self.entries.binary_search(lambda).ok()
    }
}

/// Enumerates the partitions of `d` with at most `max_parts` parts,
/// sorted lex ascending. `d = 0` yields the empty partition alone.
pub fn enumerate(d: u32, max_parts: usize) -> PartitionTable {
    let mut entries = Vec::new();
    let mut current = Vec::new();
    descend(d, u32::MAX, max_parts, &mut current, &mut entries);
    entries.sort();
    PartitionTable {
        d,
        max_parts,
        entries,
    }
}

fn descend(
    remaining: u32,
    cap: u32,
    slots: usize,
    current: &mut Vec<u32>,
    out: &mut Vec<Partition>,
) {
    if remaining == 0 {
        out.push(Partition::new(current.clone()));
        return;
    }
    if slots == 0 {
        return;
    }
    let top = cap.min(remaining);
    for next in (1..=top).rev() {
        current.push(next);
        descend(remaining - next, next, slots - 1, current, out);
        current.pop();
    }
}

/// `P_n(d)`: the number of partitions of `d` with at most `n` parts.
/// Independent of `n` once `n >= d`.
pub fn count_with_max_parts(d: u32, n: usize) -> usize {
    enumerate(d, n).len()
}

/// `P(d)`, the plain partition count.
pub fn count(d: u32) -> usize {
    count_with_max_parts(d, d as usize)
}

/// All subpartitions of `lambda` (submultisets of its parts), lex
/// ascending, including the empty partition and `lambda` itself.
pub fn subpartitions(lambda: &Partition) -> Vec<Partition> {
    let counts: Vec<(u32, usize)> = lambda.part_counts().into_iter().collect();
    let mut out = Vec::new();
    let mut chosen: Vec<u32> = Vec::new();
    fn walk(counts: &[(u32, usize)], chosen: &mut Vec<u32>, out: &mut Vec<Partition>) {
        match counts.split_first() {
            None => out.push(Partition::from_multiset(chosen.clone())),
            Some((&(value, max), rest)) => {
                for take in 0..=max {
                    chosen.extend(std::iter::repeat(value).take(take));
                    walk(rest, chosen, out);
                    chosen.truncate(chosen.len() - take);
                }
            }
        }
    }
    walk(&counts, &mut chosen, &mut out);
    out.sort();
    out
}

/// The index set `T(lambda, gamma)`: for each part of `gamma` in order,
/// the smallest unused 1-based position of `lambda` holding that value.
pub fn t_indices(lambda: &Partition, gamma: &Partition) -> Result<Vec<usize>, PartitionError> {
    if !lambda.contains_submultiset(gamma) {
        return Err(PartitionError::NotSubpartition(
            gamma.parts().to_vec(),
            lambda.parts().to_vec(),
        ));
    }
    let mut used = vec![false; lambda.num_parts()];
    let mut indices = Vec::with_capacity(gamma.num_parts());
    for &g in gamma.parts() {
        let k = (0..lambda.num_parts())
            .find(|&k| !used[k] && lambda.part(k) == g)
            .expect("submultiset check guarantees an available slot");
        used[k] = true;
        indices.push(k + 1);
    }
    Ok(indices)
}

/// All distinct exponent vectors of length `n` whose nonzero entries, sorted
/// descending, equal `lambda`. These are the monomials of type `lambda`.
pub fn monomials_of_type(lambda: &Partition, n: usize) -> Vec<Vec<u32>> {
    let counts: Vec<(u32, usize)> = lambda.part_counts().into_iter().rev().collect();
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    fn place(
        counts: &[(u32, usize)],
        start_free: &mut Vec<usize>,
        exps: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        match counts.split_first() {
            None => out.push(exps.clone()),
            Some((&(value, mult), rest)) => {
                // choose `mult` of the still-free positions, ascending
                let free: Vec<usize> = start_free.clone();
                let mut combo = Vec::with_capacity(mult);
                fn choose(
                    free: &[usize],
                    from: usize,
                    left: usize,
                    combo: &mut Vec<usize>,
                    value: u32,
                    rest: &[(u32, usize)],
                    exps: &mut Vec<u32>,
                    out: &mut Vec<Vec<u32>>,
                ) {
                    if left == 0 {
                        for &pos in combo.iter() {
                            exps[pos] = value;
                        }
                        let remaining: Vec<usize> = free
                            .iter()
                            .copied()
                            .filter(|p| !combo.contains(p))
                            .collect();
                        let mut remaining = remaining;
                        place(rest, &mut remaining, exps, out);
                        for &pos in combo.iter() {
                            exps[pos] = 0;
                        }
                        return;
                    }
                    for i in from..free.len() {
                        combo.push(free[i]);
                        choose(free, i + 1, left - 1, combo, value, rest, exps, out);
                        combo.pop();
                    }
                }
                choose(&free, 0, mult, &mut combo, value, rest, exps, out);
            }
        }
    }
    if lambda.num_parts() > n {
        return out;
    }
    let mut free: Vec<usize> = (0..n).collect();
    place(&counts, &mut free, &mut exps, &mut out);
    out.sort();
    out.dedup();
    out
}

/// The number of distinct monomials of type `lambda` in `n` variables:
/// the multinomial `n! / (p_0! p_1! ... p_d!)` where `p_i` counts parts
/// equal to `i` and `p_0 = n - #lambda`.
pub fn stabilizer_multinomial(lambda: &Partition, n: usize) -> Result<BigUint, PartitionError> {
    let parts = lambda.num_parts();
    if parts > n {
        return Err(PartitionError::TooManyParts { parts, n });
    }
    let mut numerator = BigUint::one();
    for k in 1..=n {
        numerator *= BigUint::from(k);
    }
    let mut denominator = BigUint::one();
    let factorial = |m: usize| -> BigUint {
        let mut f = BigUint::one();
        for k in 1..=m {
            f *= BigUint::from(k);
        }
        f
    };
    denominator *= factorial(n - parts);
    for (_, c) in lambda.part_counts() {
        denominator *= factorial(c);
    }
    Ok(numerator / denominator)
}

/// Expands `m_mu * (x_1 + ... + x_n)` symbolically and reads off the
/// coefficients in the `m_lambda` basis. Returns only the nonzero ones.
///
/// The expansion is done on raw exponent vectors so this doubles as an
/// independent oracle for the box-adding combinatorics: every monomial of a
/// given type must come out with the same coefficient, and that coefficient
/// is the value reported for the type.
pub fn box_coefficients(mu: &Partition, n: usize) -> BTreeMap<Partition, u64> {
    let mut term_counts: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    for exps in monomials_of_type(mu, n) {
        for i in 0..n {
            let mut product = exps.clone();
            product[i] += 1;
            *term_counts.entry(product).or_insert(0) += 1;
        }
    }
    let mut by_type: BTreeMap<Partition, u64> = BTreeMap::new();
    for (exps, count) in term_counts {
        let ty = Partition::from_multiset(exps);
        match by_type.get(&ty) {
            None => {
                by_type.insert(ty, count);
            }
            Some(&prev) => assert_eq!(
                prev, count,
                "monomials of type {ty:?} received unequal coefficients"
            ),
        }
    }
    by_type
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn enumerate_small() {
        let t = enumerate(3, 3);
        assert_eq!(t.entries, vec![p(&[1, 1, 1]), p(&[2, 1]), p(&[3])]);
        assert_eq!(enumerate(4, 4).len(), 5);
        let t = enumerate(3, 2);
        assert_eq!(t.entries, vec![p(&[2, 1]), p(&[3])]);
        assert_eq!(enumerate(0, 0).entries, vec![Partition::empty()]);
    }

    #[test]
    fn enumerate_matches_brute_force() {
        // brute force: weakly decreasing positive tuples summing to d
        fn brute(d: u32) -> usize {
            fn go(remaining: u32, cap: u32) -> usize {
                if remaining == 0 {
                    return 1;
                }
                (1..=cap.min(remaining)).map(|k| go(remaining - k, k)).sum()
            }
            go(d, d)
        }
        for d in 0..=8 {
            assert_eq!(enumerate(d, d as usize).len(), brute(d), "d={d}");
        }
    }

    #[test]
    fn subpartitions_small() {
        assert_eq!(
            subpartitions(&p(&[2, 1])),
            vec![Partition::empty(), p(&[1]), p(&[2]), p(&[2, 1])]
        );
        assert_eq!(
            subpartitions(&p(&[1, 1])),
            vec![Partition::empty(), p(&[1]), p(&[1, 1])]
        );
        let subs = subpartitions(&p(&[5, 5, 2, 2, 1]));
        assert!(subs.contains(&p(&[5, 5, 2, 1])));
        assert_eq!(subs.len(), 3 * 3 * 2);
    }

    #[test]
    fn t_indices_examples() {
        assert_eq!(
            t_indices(&p(&[5, 5, 2, 2, 1]), &p(&[5, 5, 2, 1])).unwrap(),
            vec![1, 2, 3, 5]
        );
        assert_eq!(
            t_indices(&p(&[2, 1]), &Partition::empty()).unwrap(),
            Vec::<usize>::new()
        );
        assert_eq!(t_indices(&p(&[2, 1]), &p(&[2])).unwrap(), vec![1]);
        assert!(t_indices(&p(&[2, 1]), &p(&[3])).is_err());
    }

    #[test]
    fn t_indices_restriction_recovers_gamma() {
        for lambda in enumerate(6, 6).entries {
            for gamma in subpartitions(&lambda) {
                let t = t_indices(&lambda, &gamma).unwrap();
                let restricted: Vec<u32> = t.iter().map(|&k| lambda.part(k - 1)).collect();
                assert_eq!(Partition::from_multiset(restricted), gamma);
            }
        }
    }

    #[test]
    fn stabilizer_examples() {
        assert_eq!(
            stabilizer_multinomial(&p(&[1, 1, 1]), 5).unwrap(),
            BigUint::from(10u32)
        );
        assert_eq!(
            stabilizer_multinomial(&p(&[3]), 5).unwrap(),
            BigUint::from(5u32)
        );
        assert_eq!(
            stabilizer_multinomial(&p(&[2, 1]), 4).unwrap(),
            BigUint::from(12u32)
        );
        assert!(stabilizer_multinomial(&p(&[1, 1]), 1).is_err());
    }

    #[test]
    fn stabilizer_counts_brute_force() {
        // x_i^2 x_j with i != j, n = 4
        let monos = monomials_of_type(&p(&[2, 1]), 4);
        assert_eq!(monos.len(), 12);
    }

    #[test]
    fn stabilizers_sum_to_monomial_count() {
        fn binom(n: usize, k: usize) -> u64 {
            if k > n {
                return 0;
            }
            let mut result = 1u64;
            for i in 0..k {
                result = result * (n - i) as u64 / (i + 1) as u64;
            }
            result
        }
        for n in 1..=8usize {
            for d in 1..=5u32 {
                let total: BigUint = enumerate(d, n)
                    .entries
                    .iter()
                    .map(|l| stabilizer_multinomial(l, n).unwrap())
                    .sum();
                assert_eq!(total, BigUint::from(binom(n + d as usize - 1, d as usize)));
            }
        }
    }

    #[test]
    fn box_coefficients_examples() {
        let c = box_coefficients(&p(&[1]), 3);
        assert_eq!(c.get(&p(&[2])), Some(&1));
        assert_eq!(c.get(&p(&[1, 1])), Some(&2));
        assert_eq!(c.len(), 2);

        let c = box_coefficients(&Partition::empty(), 4);
        assert_eq!(c.get(&p(&[1])), Some(&1));
        assert_eq!(c.len(), 1);

        let c = box_coefficients(&p(&[2, 1]), 5);
        let expected: Vec<Partition> = vec![p(&[2, 1, 1]), p(&[2, 2]), p(&[3, 1])];
        assert_eq!(c.keys().cloned().collect::<Vec<_>>(), expected);
    }

    #[test]
    fn box_coefficients_stable_in_n() {
        for d in 2..=5u32 {
            for mu in enumerate(d - 1, (d - 1) as usize).entries {
                let base = box_coefficients(&mu, d as usize);
                for n in (d as usize + 1)..=(d as usize + 3) {
                    assert_eq!(box_coefficients(&mu, n), base, "mu={mu:?} n={n}");
                }
            }
        }
    }

    #[test]
    fn box_pivots_form_echelon() {
        // Row mu of the box-adding matrix has its first nonzero at mu with a
        // part of size 1 appended, and those pivots are strictly increasing
        // across rows, so the matrix has full row rank.
        for d in 2..=6u32 {
            let mus = enumerate(d - 1, (d - 1) as usize).entries;
            let lambdas = enumerate(d, d as usize).entries;
            let mut last_pivot = None;
            for mu in &mus {
                let coeffs = box_coefficients(mu, d as usize);
                let smallest = coeffs.keys().next().unwrap().clone();
                let mut boxed = mu.parts().to_vec();
                boxed.push(1);
                assert_eq!(smallest, Partition::from_multiset(boxed));
                let pivot = lambdas.binary_search(&smallest).unwrap();
                assert!(last_pivot.is_none_or(|p| pivot > p));
                last_pivot = Some(pivot);
            }
        }
    }

    proptest! {
        #[test]
        fn lex_order_total_and_consistent(a in proptest::collection::vec(1u32..6, 0..5),
                                          b in proptest::collection::vec(1u32..6, 0..5)) {
            let pa = Partition::from_multiset(a);
            let pb = Partition::from_multiset(b);
            // antisymmetry via the padded-difference definition
            let len = pa.num_parts().max(pb.num_parts());
            let first_diff = (0..len).find(|&i| pa.part(i) != pb.part(i));
            match first_diff {
                None => prop_assert_eq!(pa.cmp(&pb), Ordering::Equal),
                Some(i) => {
                    let expect = pa.part(i).cmp(&pb.part(i));
                    prop_assert_eq!(pa.cmp(&pb), expect);
                }
            }
        }

        #[test]
        fn subpartition_count_is_product_of_multiplicities(parts in proptest::collection::vec(1u32..5, 0..6)) {
            let lam = Partition::from_multiset(parts);
            let subs = subpartitions(&lam);
            let expected: usize = lam.part_counts().values().map(|c| c + 1).product();
            prop_assert_eq!(subs.len(), expected);
            // no duplicates
            let mut sorted = subs.clone();
            sorted.dedup();
            prop_assert_eq!(sorted.len(), subs.len());
        }
    }
}
