//! Index sets of noncommutative products and their exact rational weights.
//!
//! The coefficient `R_n` of the Maclaurin solution is a weighted sum of words
//! `A_{m_1} A_{m_2} ... A_{m_{n-q}}`. A word is selected by a [`MultiIndex`]
//! `m = (m_1, ..., m_{n-q})` with nonnegative entries summing to `q` (the
//! total index); its length `n - q` is the total exponent. The weight of the
//! word is
//!
//! ```text
//! pi_m = 1 / [ (m_{n-q} + 1) (m_{n-q-1} + m_{n-q} + 2) ... (m_1 + ... + m_{n-q} + n - q) ]
//! ```
//!
//! Restricting the entries to `{0, ..., p}` gives the index sets relevant to a
//! degree-`p` polynomial coefficient; those are nonempty exactly for
//! `q <= floor(p n / (p + 1))`.
//!
//! Index sets are streamed in lexicographic order by [`IndexSetIter`]; nothing
//! here materialises a whole set unless the caller collects it.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// Selector `m = (m_1, ..., m_{n-q})` of the product `A_{m_1} ... A_{m_{n-q}}`.
///
/// The `(n, q)` pair is not stored: `q` is [`total_index`](Self::total_index)
/// and `n = q + len`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(entries: Vec<usize>) -> Self {
        MultiIndex(entries)
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    /// Sum of the entries, `q`.
    pub fn total_index(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of factors in the product, `n - q`.
    pub fn total_exponent(&self) -> usize {
        self.0.len()
    }

    /// The series order `n` this index contributes to.
    pub fn order(&self) -> usize {
        self.total_index() + self.total_exponent()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&m| m == 0)
    }

    pub fn max_entry(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, ")")
    }
}

/// Largest total index with a nonempty restricted set: `floor(p n / (p + 1))`.
pub fn restricted_cutoff(n: usize, p: usize) -> usize {
    p * n / (p + 1)
}

/// Lexicographic stream of tuples of fixed length and sum, entries capped.
#[derive(Clone, Debug)]
pub struct IndexSetIter {
    cap: usize,
    current: Option<Vec<usize>>,
}

impl IndexSetIter {
    fn new(len: usize, sum: usize, cap: usize) -> Self {
        if len * cap < sum {
            return IndexSetIter { cap, current: None };
        }
        let mut first = vec![0; len];
        fill_from_right(&mut first, sum, cap);
        IndexSetIter { cap, current: Some(first) }
    }

    fn advance(&mut self) {
        let Some(a) = self.current.as_mut() else { return };
        let len = a.len();
        // rightmost position that can grow by taking one unit from its suffix
        let mut suffix = 0;
        for i in (0..len).rev() {
            if i + 1 < len && a[i] < self.cap && suffix >= 1 {
                a[i] += 1;
                fill_from_right(&mut a[i + 1..], suffix - 1, self.cap);
                return;
            }
            suffix += a[i];
        }
        self.current = None;
    }
}

/// Smallest lexicographic arrangement: mass packed at the right end.
fn fill_from_right(slots: &mut [usize], mut sum: usize, cap: usize) {
    for slot in slots.iter_mut().rev() {
        let v = sum.min(cap);
        *slot = v;
        sum -= v;
    }
    debug_assert_eq!(sum, 0);
}

impl Iterator for IndexSetIter {
    type Item = MultiIndex;

    fn next(&mut self) -> Option<MultiIndex> {
        let out = self.current.clone()?;
        self.advance();
        Some(MultiIndex(out))
    }
}

/// All `m` of length `n - q` with entries summing to `q`, lexicographic.
pub fn enumerate_index_set(n: usize, q: usize) -> Result<IndexSetIter> {
    if n < 1 || q >= n {
        return Err(Error::InvalidIndexSet { n, q });
    }
    Ok(IndexSetIter::new(n - q, q, q))
}

/// As [`enumerate_index_set`], with every entry in `{0, ..., p}`.
pub fn enumerate_restricted_index_set(n: usize, q: usize, p: usize) -> Result<IndexSetIter> {
    check_restricted(n, q, p)?;
    Ok(IndexSetIter::new(n - q, q, p))
}

fn check_restricted(n: usize, q: usize, p: usize) -> Result<()> {
    if n < 1 {
        return Err(Error::InvalidIndexSet { n, q });
    }
    if p == 0 {
        return Err(Error::ZeroOrder);
    }
    let max = restricted_cutoff(n, p);
    if q > max {
        return Err(Error::CutoffExceeded { n, q, p, max });
    }
    Ok(())
}

/// Exact weight `pi_m`, accumulated in one right-to-left pass over the
/// nested partial sums.
pub fn pi_coefficient(m: &MultiIndex) -> Result<Rational> {
    Ok(Rational::new(BigInt::one(), BigInt::from(pi_denominator(m.entries())?)))
}

/// Denominator of `pi_m` (its numerator is always 1).
pub fn pi_denominator(entries: &[usize]) -> Result<BigUint> {
    if entries.is_empty() {
        return Err(Error::EmptyIndex);
    }
    let mut partial = 0usize;
    let mut den = BigUint::one();
    for (offset, &m) in entries.iter().rev().enumerate() {
        partial += m;
        den *= BigUint::from(partial + offset + 1);
    }
    Ok(den)
}

/// `sum_{m in S_{n,q,p}} pi_m` by enumeration.
pub fn pi_sum(n: usize, q: usize, p: usize) -> Result<Rational> {
    sum_weights(enumerate_restricted_index_set(n, q, p)?)
}

/// `sum_{m in S_{n,q}} pi_m` over the unrestricted set.
pub fn pi_sum_unrestricted(n: usize, q: usize) -> Result<Rational> {
    sum_weights(enumerate_index_set(n, q)?)
}

fn sum_weights(set: IndexSetIter) -> Result<Rational> {
    let mut total = Rational::zero();
    for m in set {
        total += pi_coefficient(&m)?;
    }
    Ok(total)
}

/// Multinomial side of the weight-sum identity:
/// `sum 1 / (k_1! ... k_{p+1}! 2^{k_2} ... (p+1)^{k_{p+1}})` over exponent
/// tuples with `sum_j j k_j = n` and `sum_j k_j = n - q`.
pub fn multinomial_pi_sum(n: usize, q: usize, p: usize) -> Result<Rational> {
    check_restricted(n, q, p)?;
    Ok(multinomial_sum(n, n - q, (p + 1).min(n)))
}

/// Multinomial side for the unrestricted set (parts up to `n`).
pub fn multinomial_pi_sum_unrestricted(n: usize, q: usize) -> Result<Rational> {
    if n < 1 || q >= n {
        return Err(Error::InvalidIndexSet { n, q });
    }
    Ok(multinomial_sum(n, n - q, n))
}

fn multinomial_sum(weight: usize, count: usize, max_part: usize) -> Rational {
    fn go(part: usize, weight: usize, count: usize, den: &BigUint, acc: &mut Rational) {
        if part == 1 {
            // remaining parts all equal 1
            if weight == count {
                let d = den * factorial(count);
                *acc += Rational::new(BigInt::one(), BigInt::from(d));
            }
            return;
        }
        let mut k = 0;
        while k * part <= weight && k <= count {
            let d = den * factorial(k) * BigUint::from(part).pow(k as u32);
            go(part - 1, weight - k * part, count - k, &d, acc);
            k += 1;
        }
    }
    let mut acc = Rational::zero();
    if max_part == 0 {
        return acc;
    }
    go(max_part, weight, count, &BigUint::one(), &mut acc);
    acc
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// `|S_{n,q,p}|`: compositions of `q` into `n - q` parts, each at most `p`.
pub fn index_set_size(n: usize, q: usize, p: usize) -> u128 {
    if q >= n {
        return 0;
    }
    bounded_compositions(n - q, q, p)
}

fn bounded_compositions(len: usize, sum: usize, cap: usize) -> u128 {
    // ways[s] = number of length-i tuples with entries <= cap summing to s
    let mut ways = vec![0u128; sum + 1];
    ways[0] = 1;
    for _ in 0..len {
        let mut next = vec![0u128; sum + 1];
        for (s, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for v in 0..=cap.min(sum - s) {
                next[s + v] += w;
            }
        }
        ways = next;
    }
    ways[sum]
}

/// Number of product terms in `R_n` for a degree-`p` coefficient,
/// `sum_q |S_{n,q,p}|`. For `p = 1` this is the Fibonacci sequence 1, 2, 3, 5, 8, ...
pub fn term_count(n: usize, p: usize) -> u128 {
    if n == 0 || p == 0 {
        return u128::from(n >= 1);
    }
    (0..=restricted_cutoff(n, p)).map(|q| index_set_size(n, q, p)).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn collect(it: IndexSetIter) -> Vec<Vec<usize>> {
        it.map(|m| m.entries().to_vec()).collect()
    }

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    // Brute force: every tuple of {0..=cap}^len by mixed-radix counting,
    // filtered by sum. Counting order is already lexicographic.
    fn brute_force(len: usize, sum: usize, cap: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut a = vec![0; len];
        loop {
            if a.iter().sum::<usize>() == sum {
                out.push(a.clone());
            }
            let mut j = len;
            loop {
                if j == 0 {
                    return out;
                }
                j -= 1;
                if a[j] < cap {
                    a[j] += 1;
                    break;
                }
                a[j] = 0;
            }
        }
    }

    #[test]
    fn small_index_sets() {
        assert_eq!(collect(enumerate_index_set(1, 0).unwrap()), vec![vec![0]]);
        assert_eq!(
            collect(enumerate_index_set(4, 1).unwrap()),
            vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]
        );
        assert_eq!(collect(enumerate_index_set(4, 3).unwrap()), vec![vec![3]]);
        // S_{4,2} also contains (1,1)
        assert_eq!(
            collect(enumerate_index_set(4, 2).unwrap()),
            vec![vec![0, 2], vec![1, 1], vec![2, 0]]
        );
    }

    #[test]
    fn restricted_sets() {
        let s721 = collect(enumerate_restricted_index_set(7, 2, 1).unwrap());
        let listed = vec![
            vec![0, 0, 0, 1, 1],
            vec![0, 0, 1, 0, 1],
            vec![0, 0, 1, 1, 0],
            vec![0, 1, 0, 0, 1],
            vec![0, 1, 0, 1, 0],
            vec![0, 1, 1, 0, 0],
            vec![1, 0, 0, 0, 1],
            vec![1, 0, 0, 1, 0],
            vec![1, 0, 1, 0, 0],
            vec![1, 1, 0, 0, 0],
        ];
        assert_eq!(s721, listed);
        assert_eq!(collect(enumerate_restricted_index_set(4, 2, 1).unwrap()), vec![vec![1, 1]]);
        assert_eq!(collect(enumerate_restricted_index_set(2, 0, 3).unwrap()), vec![vec![0, 0]]);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for n in 1..=9 {
            for q in 0..n {
                assert_eq!(collect(enumerate_index_set(n, q).unwrap()), brute_force(n - q, q, q));
                for p in 1..=3 {
                    if q <= restricted_cutoff(n, p) {
                        let got = collect(enumerate_restricted_index_set(n, q, p).unwrap());
                        assert_eq!(got, brute_force(n - q, q, p), "n={n} q={q} p={p}");
                        assert_eq!(got.len() as u128, index_set_size(n, q, p));
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(enumerate_index_set(0, 0).unwrap_err(), Error::InvalidIndexSet { n: 0, q: 0 });
        assert_eq!(enumerate_index_set(3, 3).unwrap_err(), Error::InvalidIndexSet { n: 3, q: 3 });
        assert_eq!(
            enumerate_restricted_index_set(5, 3, 1).unwrap_err(),
            Error::CutoffExceeded { n: 5, q: 3, p: 1, max: 2 }
        );
        assert_eq!(enumerate_restricted_index_set(5, 0, 0).unwrap_err(), Error::ZeroOrder);
        assert_eq!(pi_coefficient(&MultiIndex::new(vec![])).unwrap_err(), Error::EmptyIndex);
    }

    #[test]
    fn pi_values() {
        assert_eq!(pi_coefficient(&MultiIndex::new(vec![0, 0, 0, 1, 1])).unwrap(), rat(1, 1680));
        assert_eq!(pi_coefficient(&MultiIndex::new(vec![0])).unwrap(), rat(1, 1));
        assert_eq!(pi_coefficient(&MultiIndex::new(vec![1, 1])).unwrap(), rat(1, 8));
        // R_4 for a quadratic-free pair: (0,2) -> 1/12, (2,0) -> 1/4, (3) -> 1/4
        assert_eq!(pi_coefficient(&MultiIndex::new(vec![0, 2])).unwrap(), rat(1, 12));
        assert_eq!(pi_coefficient(&MultiIndex::new(vec![2, 0])).unwrap(), rat(1, 4));
        assert_eq!(pi_coefficient(&MultiIndex::new(vec![3])).unwrap(), rat(1, 4));
    }

    #[test]
    fn pi_sums() {
        assert_eq!(pi_sum(7, 2, 1).unwrap(), rat(1, 48));
        assert_eq!(pi_sum(4, 2, 1).unwrap(), rat(1, 8));
        assert_eq!(multinomial_pi_sum(7, 2, 1).unwrap(), rat(1, 48));
        // both sides of the p = 2 identity, worked by hand: 1/12 + 1/8 + 1/4 and 1/8 + 1/3
        assert_eq!(pi_sum(4, 2, 2).unwrap(), rat(11, 24));
        assert_eq!(multinomial_pi_sum(4, 2, 2).unwrap(), rat(11, 24));
        for n in 1..=10usize {
            let inv_fact = Rational::new(BigInt::one(), BigInt::from(factorial(n)));
            for p in 1..=3 {
                assert_eq!(pi_sum(n, 0, p).unwrap(), inv_fact);
                assert_eq!(multinomial_pi_sum(n, 0, p).unwrap(), inv_fact);
            }
        }
    }

    #[test]
    fn unrestricted_identity() {
        for n in 1..=9 {
            for q in 0..n {
                assert_eq!(
                    pi_sum_unrestricted(n, q).unwrap(),
                    multinomial_pi_sum_unrestricted(n, q).unwrap(),
                    "n={n} q={q}"
                );
            }
        }
    }

    #[test]
    fn fibonacci_counts() {
        let expected = [1u128, 2, 3, 5, 8, 13, 21, 34];
        for (i, &e) in expected.iter().enumerate() {
            assert_eq!(term_count(i + 1, 1), e);
        }
        for p in 1..=4 {
            assert_eq!(term_count(1, p), 1);
        }
    }

    #[test]
    fn multi_index_accessors() {
        let m = MultiIndex::new(vec![0, 2, 1]);
        assert_eq!(m.total_index(), 3);
        assert_eq!(m.total_exponent(), 3);
        assert_eq!(m.order(), 6);
        assert_eq!(m.to_string(), "(0,2,1)");
        assert!(!m.is_zero());
    }
}
