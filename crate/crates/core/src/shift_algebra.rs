//! Words over `{U, S}` with the single relation `U S = I - S`, where `S` is
//! the downward (left) shift and `U = -I + S_r` the birth operator of a
//! birth-death chain. Every word reduces to a canonical sum of `S^s U^k`
//! with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::format::fmt_rational;
use crate::matrix::Matrix;
use crate::Rational;

/// Largest power accepted by [`binomial_group`] and [`power_expand`].
pub const MAX_POWER: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    U,
    S,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShiftWord(Vec<Letter>);

impl ShiftWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        ShiftWord(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `U^p (S U)^q`
    pub fn mixed_power(p: usize, q: usize) -> Self {
        let mut letters = vec![Letter::U; p];
        for _ in 0..q {
            letters.extend([Letter::S, Letter::U]);
        }
        ShiftWord(letters)
    }

    /// Positions `i` with `U` at `i` and `S` at `i + 1`.
    fn redexes(&self) -> Vec<usize> {
        self.0.windows(2).enumerate().filter(|(_, w)| w == &[Letter::U, Letter::S]).map(|(i, _)| i).collect()
    }

    /// `(s, k)` when the word is already `S^s U^k`.
    fn normal_key(&self) -> Option<(usize, usize)> {
        let s = self.0.iter().take_while(|&&l| l == Letter::S).count();
        self.0[s..].iter().all(|&l| l == Letter::U).then(|| (s, self.0.len() - s))
    }
}

impl FromStr for ShiftWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !c.is_whitespace() && *c != '*' && *c != '.')
            .map(|c| match c.to_ascii_uppercase() {
                'U' => Ok(Letter::U),
                'S' => Ok(Letter::S),
                other => Err(Error::InvalidArgument(format!("word letters must be U or S, found '{other}'"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(ShiftWord)
    }
}

impl fmt::Display for ShiftWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "I");
        }
        for l in &self.0 {
            write!(f, "{}", if *l == Letter::U { 'U' } else { 'S' })?;
        }
        Ok(())
    }
}

/// `sum c_{s,k} S^s U^k`, keyed by `(s, k)`; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ShiftPolynomial {
    terms: BTreeMap<(usize, usize), Rational>,
}

fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

impl ShiftPolynomial {
    pub fn zero() -> Self {
        ShiftPolynomial::default()
    }

    pub fn identity() -> Self {
        ShiftPolynomial::monomial(0, 0, Rational::one())
    }

    pub fn monomial(s: usize, k: usize, c: Rational) -> Self {
        let mut p = ShiftPolynomial::zero();
        p.add_term(s, k, c);
        p
    }

    /// `I - S`
    pub fn one_minus_s() -> Self {
        let mut p = ShiftPolynomial::identity();
        p.add_term(1, 0, -Rational::one());
        p
    }

    /// Build from `(s, k, coefficient)` triples, merging repeats.
    pub fn from_terms(terms: impl IntoIterator<Item = (usize, usize, i64)>) -> Self {
        let mut p = ShiftPolynomial::zero();
        for (s, k, c) in terms {
            p.add_term(s, k, int(c));
        }
        p
    }

    pub fn add_term(&mut self, s: usize, k: usize, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((s, k)).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(s, k));
        }
    }

    pub fn coefficient(&self, s: usize, k: usize) -> Rational {
        self.terms.get(&(s, k)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms sorted by `(s, k)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.terms.iter().map(|(&(s, k), c)| (s, k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_shift(&self) -> usize {
        self.terms.keys().map(|&(s, _)| s).max().unwrap_or(0)
    }

    pub fn max_u_power(&self) -> usize {
        self.terms.keys().map(|&(_, k)| k).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, k, c) in other.terms() {
            out.add_term(s, k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = ShiftPolynomial::zero();
        for (s, k, v) in self.terms() {
            out.add_term(s, k, v * c);
        }
        out
    }

    /// Right multiplication by `U`.
    fn times_u(&self) -> Self {
        ShiftPolynomial { terms: self.terms.iter().map(|(&(s, k), c)| ((s, k + 1), c.clone())).collect() }
    }

    /// Right multiplication by `S`, using
    /// `U^k S = U^{k-1} - U^{k-2} + ... + (-1)^{k-1} I + (-1)^k S`.
    fn times_s(&self) -> Self {
        let mut out = ShiftPolynomial::zero();
        for (s, k, c) in self.terms() {
            for i in 1..=k {
                let sign = if i % 2 == 1 { c.clone() } else { -c.clone() };
                out.add_term(s, k - i, sign);
            }
            out.add_term(s + 1, 0, if k % 2 == 0 { c.clone() } else { -c.clone() });
        }
        out
    }

    pub fn times_letter(&self, l: Letter) -> Self {
        match l {
            Letter::U => self.times_u(),
            Letter::S => self.times_s(),
        }
    }

    /// Normal form of the word, letter by letter from the left.
    pub fn from_word(word: &ShiftWord) -> Self {
        word.letters().iter().fold(ShiftPolynomial::identity(), |p, &l| p.times_letter(l))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = ShiftPolynomial::zero();
        for (s, k, c) in other.terms() {
            let mut part = self.clone();
            for _ in 0..s {
                part = part.times_s();
            }
            for _ in 0..k {
                part = part.times_u();
            }
            out = out.add(&part.scale(c));
        }
        out
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(ShiftPolynomial::identity(), |acc, _| acc.mul(self))
    }

    /// Pure-`U` part (`s = 0`).
    pub fn head(&self) -> Self {
        self.shift_slice(0)
    }

    /// Coefficients with shift power `s`, returned as a polynomial in `U`.
    pub fn shift_slice(&self, s: usize) -> Self {
        ShiftPolynomial {
            terms: self.terms.iter().filter(|(&(a, _), _)| a == s).map(|(&(_, k), c)| ((0, k), c.clone())).collect(),
        }
    }

    /// `S^s * self`; no reduction needed since `S` is already leftmost.
    pub fn delay(&self, s: usize) -> Self {
        ShiftPolynomial { terms: self.terms.iter().map(|(&(a, k), c)| ((a + s, k), c.clone())).collect() }
    }

    /// One `coeff * S^s U^k` line per term, sorted by `(s, k)`.
    pub fn lines(&self) -> Vec<String> {
        self.terms().map(|(s, k, c)| format!("{} * S^{s} U^{k}", fmt_rational(c))).collect()
    }
}

impl fmt::Display for ShiftPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (s, k, c)) in self.terms().enumerate() {
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else if i > 0 { "+" } else { "" };
            if i > 0 {
                write!(f, " {sign} ")?;
            } else {
                write!(f, "{sign}")?;
            }
            let factors: Vec<String> = [(s, "S"), (k, "U")]
                .iter()
                .filter(|(e, _)| *e > 0)
                .map(|&(e, l)| if e == 1 { l.to_string() } else { format!("{l}^{e}") })
                .collect();
            match (mag.is_one(), factors.is_empty()) {
                (true, true) => write!(f, "I")?,
                (true, false) => write!(f, "{}", factors.join(""))?,
                (false, true) => write!(f, "{}", fmt_rational(&mag))?,
                (false, false) => write!(f, "{}{}", fmt_rational(&mag), factors.join(""))?,
            }
        }
        Ok(())
    }
}

/// Literal rewriting: replace the leftmost `U S` by `I - S` until no word has
/// one left, merging equal words along the way.
pub fn reduce(word: &ShiftWord) -> ShiftPolynomial {
    reduce_with(word, |_| 0)
}

/// Rewriting where `choose` picks which of the available `U S` positions to
/// rewrite next (an index into the slice it is given).
pub fn reduce_with(word: &ShiftWord, mut choose: impl FnMut(&[usize]) -> usize) -> ShiftPolynomial {
    let mut pending: BTreeMap<ShiftWord, Rational> = BTreeMap::new();
    pending.insert(word.clone(), Rational::one());
    let mut done = ShiftPolynomial::zero();
    while let Some((w, c)) = pending.pop_first() {
        let redexes = w.redexes();
        if redexes.is_empty() {
            let (s, k) = w.normal_key().expect("word without U S is in normal form");
            done.add_term(s, k, c);
            continue;
        }
        let i = redexes[choose(&redexes).min(redexes.len() - 1)];
        let (left, right) = (&w.0[..i], &w.0[i + 2..]);
        let dropped = ShiftWord([left, right].concat());
        let shifted = ShiftWord([left, &[Letter::S], right].concat());
        for (nw, nc) in [(dropped, c.clone()), (shifted, -c)] {
            let entry = pending.entry(nw).or_insert_with(Rational::zero);
            *entry += nc;
        }
        pending.retain(|_, v| !v.is_zero());
    }
    done
}

fn binomial(n: usize, k: usize) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rational::from_integer(acc)
}

/// Closed-form normal form of `U^p (S U)^q`:
/// `sum_{k<p} (-1)^k C(q+k-1, k) U^{p-k} + sum_{k=p}^{q+p-1} (-1)^k C(q+p-1, k) S^{k-p+1} U`.
pub fn word_power_mixed(p: usize, q: usize) -> Result<ShiftPolynomial> {
    if p == 0 || q == 0 {
        return Err(Error::InvalidArgument(format!("need p >= 1 and q >= 1, got p = {p}, q = {q}")));
    }
    let sign = |k: usize, v: Rational| if k.is_multiple_of(2) { v } else { -v };
    let mut out = ShiftPolynomial::zero();
    for k in 0..p {
        out.add_term(0, p - k, sign(k, binomial(q + k - 1, k)));
    }
    for k in p..q + p {
        out.add_term(k - p + 1, 1, sign(k, binomial(q + p - 1, k)));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub q: usize,
    pub r: usize,
    /// `U^q S^{q+r-1} = (I - S)^q S^{r-1}`
    pub iv: bool,
    /// `U^{q+r} S^q = U^r (I - S)^q`
    pub v: bool,
    /// `U^r (I - S)^q = U^r (I - S)^{q-1} - U^{r-1} (I - S)^q`
    pub vi: bool,
}

impl IdentityReport {
    pub fn all_pass(&self) -> bool {
        self.iv && self.v && self.vi
    }
}

/// Check the three shift identities for `(q, r)`, reducing the left-hand
/// words by literal rewriting and the right-hand sides by polynomial algebra.
pub fn shift_identities_check(q: usize, r: usize) -> Result<IdentityReport> {
    if q == 0 || r == 0 {
        return Err(Error::InvalidArgument(format!("need q >= 1 and r >= 1, got q = {q}, r = {r}")));
    }
    let word = |u: usize, s: usize| ShiftWord([vec![Letter::U; u], vec![Letter::S; s]].concat());
    let u_pow = |e: usize| ShiftPolynomial::monomial(0, e, Rational::one());
    let s_pow = |e: usize| ShiftPolynomial::monomial(e, 0, Rational::one());
    let ims = ShiftPolynomial::one_minus_s();

    let iv = reduce(&word(q, q + r - 1)) == ims.pow(q).mul(&s_pow(r - 1));
    let v = reduce(&word(q + r, q)) == u_pow(r).mul(&ims.pow(q));
    let lhs = u_pow(r).mul(&ims.pow(q));
    let rhs = u_pow(r).mul(&ims.pow(q - 1)).sub(&u_pow(r - 1).mul(&ims.pow(q)));
    Ok(IdentityReport { q, r, iv, v, vi: lhs == rhs })
}

/// Head and delayed tails of the binomial group with `m` copies of `U` and
/// `k - m` copies of `S U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialGroupDecomposition {
    pub k: usize,
    pub m: usize,
    /// Terms without delay, a polynomial in `U`.
    pub head: ShiftPolynomial,
    /// `(s, T_s)` for each delay `s >= 1` with a nonzero tail, `T_s` a
    /// polynomial in `U`.
    pub tails: Vec<(usize, ShiftPolynomial)>,
}

impl BinomialGroupDecomposition {
    pub fn tail(&self, s: usize) -> ShiftPolynomial {
        self.tails.iter().find(|(d, _)| *d == s).map(|(_, p)| p.clone()).unwrap_or_default()
    }

    /// `head + sum_s S^s T_s`
    pub fn recombine(&self) -> ShiftPolynomial {
        self.tails.iter().fold(self.head.clone(), |acc, (s, t)| acc.add(&t.delay(*s)))
    }
}

/// Every arrangement of `m` atoms `U` and `j` atoms `S U`, in lexicographic
/// order with `U` before `S U`.
pub fn interleavings(m: usize, j: usize) -> Vec<ShiftWord> {
    fn go(m: usize, j: usize, prefix: &mut Vec<Letter>, out: &mut Vec<ShiftWord>) {
        if m == 0 && j == 0 {
            out.push(ShiftWord(prefix.clone()));
            return;
        }
        if m > 0 {
            prefix.push(Letter::U);
            go(m - 1, j, prefix, out);
            prefix.pop();
        }
        if j > 0 {
            prefix.extend([Letter::S, Letter::U]);
            go(m, j - 1, prefix, out);
            prefix.truncate(prefix.len() - 2);
        }
    }
    let mut out = Vec::new();
    go(m, j, &mut Vec::new(), &mut out);
    out
}

fn check_power(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("power must be at least 1".into()));
    }
    if k > MAX_POWER {
        return Err(Error::PowerGuard { k, limit: MAX_POWER });
    }
    Ok(())
}

fn group_polynomial(m: usize, j: usize) -> ShiftPolynomial {
    interleavings(m, j).iter().fold(ShiftPolynomial::zero(), |acc, w| acc.add(&ShiftPolynomial::from_word(w)))
}

pub fn binomial_group(m: usize, j: usize) -> Result<BinomialGroupDecomposition> {
    let k = m + j;
    check_power(k)?;
    let total = group_polynomial(m, j);
    let tails = (1..=total.max_shift())
        .map(|s| (s, total.shift_slice(s)))
        .filter(|(_, t)| !t.is_zero())
        .collect();
    Ok(BinomialGroupDecomposition { k, m, head: total.head(), tails })
}

/// Normal form of `(lam U - mu S U)^k`.
pub fn power_expand(k: usize, lam: &Rational, mu: &Rational) -> Result<ShiftPolynomial> {
    check_power(k)?;
    let mut out = ShiftPolynomial::zero();
    for m in 0..=k {
        let mut c = num_traits::pow(lam.clone(), m) * num_traits::pow(mu.clone(), k - m);
        if (k - m) % 2 == 1 {
            c = -c;
        }
        if c.is_zero() {
            continue;
        }
        out = out.add(&group_polynomial(m, k - m).scale(&c));
    }
    Ok(out)
}

/// `S` on the `N x N` truncation: ones on the subdiagonal.
pub fn shift_matrix(n: usize) -> Matrix {
    Matrix::from_fn(n, |i, j| if i == j + 1 { 1.0 } else { 0.0 })
}

/// `U = -I + S_r` on the `N x N` truncation, `S_r` with ones on the superdiagonal.
pub fn u_matrix(n: usize) -> Matrix {
    Matrix::from_fn(n, |i, j| if i == j { -1.0 } else if j == i + 1 { 1.0 } else { 0.0 })
}

pub fn letter_matrix(l: Letter, n: usize) -> Matrix {
    match l {
        Letter::U => u_matrix(n),
        Letter::S => shift_matrix(n),
    }
}

/// Instantiate the polynomial on the `N x N` truncation.
pub fn realize(poly: &ShiftPolynomial, n: usize) -> Result<Matrix> {
    let needed = poly.max_shift() + poly.max_u_power() + 1;
    if n < needed {
        return Err(Error::TruncationTooSmall { needed, got: n });
    }
    let u = u_matrix(n);
    let s = shift_matrix(n);
    let powers = |base: &Matrix, e: usize| {
        let mut v = vec![Matrix::identity(n)];
        for i in 0..e {
            v.push(v[i].matmul(base));
        }
        v
    };
    let up = powers(&u, poly.max_u_power());
    let sp = powers(&s, poly.max_shift());
    let mut out = Matrix::zeros(n);
    for (a, k, c) in poly.terms() {
        out.axpy(c.to_f64().unwrap_or(f64::NAN), &sp[a].matmul(&up[k]));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> ShiftWord {
        s.parse().unwrap()
    }

    #[test]
    fn parsing_and_display() {
        assert_eq!(w("us").letters(), &[Letter::U, Letter::S]);
        assert_eq!(w("").to_string(), "I");
        assert_eq!(w("S U S").to_string(), "SUS");
        assert!("UXS".parse::<ShiftWord>().is_err());
        assert_eq!(ShiftWord::mixed_power(1, 2), w("USUSU"));
    }

    #[test]
    fn basic_reductions() {
        assert_eq!(reduce(&w("US")), ShiftPolynomial::from_terms([(0, 0, 1), (1, 0, -1)]));
        assert_eq!(reduce(&w("")), ShiftPolynomial::identity());
        assert_eq!(reduce(&w("SUSU")), ShiftPolynomial::from_terms([(1, 1, 1), (2, 1, -1)]));
        assert_eq!(reduce(&w("SSUU")), ShiftPolynomial::from_terms([(2, 2, 1)]));
    }

    #[test]
    fn fast_product_agrees_with_rewriting() {
        for len in 0..=9 {
            for bits in 0..(1u32 << len) {
                let word = ShiftWord((0..len).map(|i| if bits >> i & 1 == 1 { Letter::S } else { Letter::U }).collect());
                assert_eq!(ShiftPolynomial::from_word(&word), reduce(&word), "{word}");
            }
        }
    }

    #[test]
    fn rewriting_order_does_not_matter() {
        let word = w("UUSUSSUSUS");
        let base = reduce(&word);
        assert_eq!(reduce_with(&word, |r| r.len() - 1), base);
        let mut state = 7usize;
        assert_eq!(
            reduce_with(&word, |r| {
                state = state.wrapping_mul(1103515245).wrapping_add(12345);
                (state >> 8) % r.len()
            }),
            base
        );
    }

    #[test]
    fn mixed_powers() {
        assert_eq!(word_power_mixed(1, 1).unwrap(), ShiftPolynomial::from_terms([(0, 1, 1), (1, 1, -1)]));
        for q in 1..=5 {
            let expected = ShiftPolynomial::one_minus_s().pow(q).mul(&ShiftPolynomial::monomial(0, 1, Rational::one()));
            assert_eq!(word_power_mixed(1, q).unwrap(), expected, "q={q}");
        }
        for p in 1..=8 {
            for q in 1..=4 {
                if p + 2 * q <= 10 {
                    assert_eq!(word_power_mixed(p, q).unwrap(), reduce(&ShiftWord::mixed_power(p, q)), "p={p} q={q}");
                }
            }
        }
        assert!(word_power_mixed(0, 1).is_err());
    }

    #[test]
    fn identities_hold() {
        for (q, r) in [(1, 1), (2, 1), (3, 2)] {
            assert!(shift_identities_check(q, r).unwrap().all_pass());
        }
        assert!(shift_identities_check(0, 1).is_err());
    }

    #[test]
    fn group_two_two() {
        let g = binomial_group(2, 2).unwrap();
        assert_eq!(g.head, ShiftPolynomial::from_terms([(0, 2, 3), (0, 1, -3)]));
        assert_eq!(g.tail(1), ShiftPolynomial::from_terms([(0, 3, 3), (0, 2, -5), (0, 1, 6)]));
        assert_eq!(g.tail(2), ShiftPolynomial::from_terms([(0, 3, -1), (0, 2, 2), (0, 1, -3)]));
        assert_eq!(g.tails.len(), 2);
        assert_eq!(g.recombine(), group_polynomial(2, 2));
    }

    #[test]
    fn group_edge_cases() {
        let g = binomial_group(4, 0).unwrap();
        assert_eq!(g.head, ShiftPolynomial::from_terms([(0, 4, 1)]));
        assert!(g.tails.is_empty());
        let g = binomial_group(1, 2).unwrap();
        assert_eq!(g.head, ShiftPolynomial::from_terms([(0, 1, 1)]));
        assert_eq!(g.tail(1), ShiftPolynomial::from_terms([(0, 2, 2), (0, 1, -3)]));
        assert_eq!(g.tail(2), ShiftPolynomial::from_terms([(0, 2, -1), (0, 1, 2)]));
        assert!(matches!(binomial_group(7, 6), Err(Error::PowerGuard { k: 13, limit: 12 })));
        assert!(binomial_group(0, 0).is_err());
        assert_eq!(interleavings(2, 2).len(), 6);
        assert_eq!(interleavings(2, 1), vec![w("UUSU"), w("USUU"), w("SUUU")]);
    }

    #[test]
    fn power_one() {
        let (l, m) = (int(2), int(1));
        assert_eq!(power_expand(1, &l, &m).unwrap(), ShiftPolynomial::from_terms([(0, 1, 2), (1, 1, -1)]));
        assert!(power_expand(0, &l, &m).is_err());
        assert!(matches!(power_expand(13, &l, &m), Err(Error::PowerGuard { .. })));
    }

    #[test]
    fn power_four_matches_word_expansion() {
        let atom = ShiftPolynomial::from_terms([(0, 1, 1), (1, 1, -1)]);
        assert_eq!(power_expand(4, &int(1), &int(1)).unwrap(), atom.pow(4));
    }

    #[test]
    fn realize_basics() {
        assert_eq!(realize(&ShiftPolynomial::identity(), 5).unwrap(), Matrix::identity(5));
        let us = realize(&reduce(&w("US")), 6).unwrap();
        assert_eq!(us, realize(&ShiftPolynomial::one_minus_s(), 6).unwrap());
        assert!(matches!(
            realize(&ShiftPolynomial::from_terms([(2, 3, 1)]), 5),
            Err(Error::TruncationTooSmall { needed: 6, got: 5 })
        ));
    }

    #[test]
    fn display_forms() {
        let p = ShiftPolynomial::from_terms([(0, 0, 1), (1, 0, -1), (2, 3, 5)]);
        assert_eq!(p.to_string(), "I - S + 5S^2U^3");
        assert_eq!(p.lines(), vec!["1 * S^0 U^0", "-1 * S^1 U^0", "5 * S^2 U^3"]);
        assert_eq!(ShiftPolynomial::zero().to_string(), "0");
    }
}
