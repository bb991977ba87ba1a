//! The quasi-shuffle Hopf algebra on words over the semigroup of
//! `(exponent, direction)` pairs.
//!
//! Letters multiply componentwise, `(s, r)·(s', r') = (s+s', r+r')`. Words
//! carry the quasi-shuffle product and the deconcatenation coproduct. The
//! stuffle-triple enumeration is an independent brute-force description of
//! the same product.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, Rational};
use crate::ratfunc::RatFunc;

/// A direction `r = c + m·δ` with `c, m ≥ 0`, not both zero, so `r > 0` for
/// every small `δ > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Direction {
    c: Rational,
    m: Rational,
}

impl Direction {
    pub fn new(c: Rational, m: Rational) -> Result<Self> {
        if c.is_negative() || m.is_negative() || (c.is_zero() && m.is_zero()) {
            return Err(Error::InvalidDirection(format!("{c}+{m}·d")));
        }
        Ok(Direction { c, m })
    }

    /// A concrete positive rational direction.
    pub fn constant(c: Rational) -> Result<Self> {
        Self::new(c, Rational::zero())
    }

    /// The direction `|s| + δ` used by the renormalized values.
    pub fn for_exponent(s: i64) -> Self {
        Direction { c: int(s.abs()), m: Rational::one() }
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn m(&self) -> &Rational {
        &self.m
    }

    pub fn is_concrete(&self) -> bool {
        self.m.is_zero()
    }

    pub fn to_ratfunc(&self) -> RatFunc {
        RatFunc::affine(self.c.clone(), self.m.clone())
    }

    pub fn add(&self, other: &Direction) -> Direction {
        Direction { c: &self.c + &other.c, m: &self.m + &other.m }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m.is_zero() {
            write!(f, "{}", self.c)
        } else {
            write!(f, "{}+{}·d", self.c, self.m)
        }
    }
}

/// One letter `(s | r)` of a word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LetterPair {
    pub s: i64,
    pub dir: Direction,
}

impl LetterPair {
    pub fn new(s: i64, dir: Direction) -> Self {
        LetterPair { s, dir }
    }

    /// The semigroup product.
    pub fn merge(&self, other: &LetterPair) -> LetterPair {
        LetterPair { s: self.s + other.s, dir: self.dir.add(&other.dir) }
    }
}

/// A word of letters; the empty word is the unit `𝟏`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<LetterPair>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn new(letters: Vec<LetterPair>) -> Self {
        Word { letters }
    }

    /// `(s₁,…,s_k | |s₁|+δ,…,|s_k|+δ)`.
    pub fn with_delta_directions(exponents: &[i64]) -> Self {
        Word::new(exponents.iter().map(|&s| LetterPair::new(s, Direction::for_exponent(s))).collect())
    }

    /// Exponents paired with concrete integer directions.
    pub fn with_directions(exponents: &[i64], dirs: &[i64]) -> Result<Self> {
        if exponents.len() != dirs.len() {
            return Err(Error::InvalidArgument(format!(
                "{} exponents but {} directions",
                exponents.len(),
                dirs.len()
            )));
        }
        let letters = exponents
            .iter()
            .zip(dirs)
            .map(|(&s, &r)| Ok(LetterPair::new(s, Direction::constant(int(r))?)))
            .collect::<Result<_>>()?;
        Ok(Word::new(letters))
    }

    pub fn letters(&self) -> &[LetterPair] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn depth(&self) -> usize {
        self.letters.len()
    }

    /// `Σ |s_i|`.
    pub fn weight(&self) -> u64 {
        self.letters.iter().map(|l| l.s.unsigned_abs()).sum()
    }

    pub fn exponents(&self) -> Vec<i64> {
        self.letters.iter().map(|l| l.s).collect()
    }

    pub fn is_nonpositive(&self) -> bool {
        self.letters.iter().all(|l| l.s <= 0)
    }

    pub fn prefix(&self, i: usize) -> Word {
        Word::new(self.letters[..i].to_vec())
    }

    pub fn suffix(&self, i: usize) -> Word {
        Word::new(self.letters[i..].to_vec())
    }

    /// `σ(w) = (w_{σ(1)}, …, w_{σ(k)})` for a 0-based index map `σ`.
    pub fn permuted(&self, sigma: &[usize]) -> Word {
        Word::new(sigma.iter().map(|&i| self.letters[i].clone()).collect())
    }
}

impl fmt::Display for Word {
    /// `[s1,...,sk | r1,...,rk]`; the unit prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        let s = self.letters.iter().map(|l| l.s.to_string()).join(",");
        let r = self.letters.iter().map(|l| l.dir.to_string()).join(",");
        write!(f, "[{s} | {r}]")
    }
}

/// A finite rational linear combination of words, sorted by word.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HopfElement {
    terms: BTreeMap<Word, Rational>,
}

impl HopfElement {
    pub fn zero() -> Self {
        HopfElement::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::empty())
    }

    pub fn from_word(w: Word) -> Self {
        let mut e = HopfElement::zero();
        e.add_term(w, Rational::one());
        e
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(w).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            // re-lookup to drop the cancelled entry
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &HopfElement) -> HopfElement {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> HopfElement {
        let mut out = HopfElement::zero();
        for (w, x) in self.terms() {
            out.add_term(w.clone(), x * c);
        }
        out
    }

    /// Bilinear extension of [`quasi_shuffle`].
    pub fn mul(&self, other: &HopfElement) -> HopfElement {
        let mut out = HopfElement::zero();
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                for (w, c) in quasi_shuffle(a, b).terms {
                    out.add_term(w, c * ca * cb);
                }
            }
        }
        out
    }
}

impl fmt::Display for HopfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let body = self
            .terms
            .iter()
            .map(|(w, c)| if c.is_one() { w.to_string() } else { format!("{c}*{w}") })
            .join(" + ");
        f.write_str(&body)
    }
}

/// The quasi-shuffle product of two words,
/// `a⧢b = (a₁, a′⧢b) + (b₁, a⧢b′) + (a₁b₁, a′⧢b′)`, with `𝟏` as unit.
pub fn quasi_shuffle(a: &Word, b: &Word) -> HopfElement {
    fn go(
        a: &[LetterPair],
        b: &[LetterPair],
        prefix: &mut Vec<LetterPair>,
        out: &mut BTreeMap<Word, Rational>,
    ) {
        if a.is_empty() || b.is_empty() {
            let mut w = prefix.clone();
            w.extend_from_slice(a);
            w.extend_from_slice(b);
            *out.entry(Word::new(w)).or_insert_with(Rational::zero) += Rational::one();
            return;
        }
        prefix.push(a[0].clone());
        go(&a[1..], b, prefix, out);
        prefix.pop();
        prefix.push(b[0].clone());
        go(a, &b[1..], prefix, out);
        prefix.pop();
        prefix.push(a[0].merge(&b[0]));
        go(&a[1..], &b[1..], prefix, out);
        prefix.pop();
    }
    let mut terms = BTreeMap::new();
    go(&a.letters, &b.letters, &mut Vec::new(), &mut terms);
    HopfElement { terms }
}

/// All `k+1` prefix/suffix splits of a word, from `(𝟏, a)` to `(a, 𝟏)`.
pub fn deconcat(a: &Word) -> Vec<(Word, Word)> {
    (0..=a.depth()).map(|i| (a.prefix(i), a.suffix(i))).collect()
}

/// The proper splits `Σ_(x) x′ ⊗ x″` of the reduced coproduct.
pub fn reduced_deconcat(a: &Word) -> Vec<(Word, Word)> {
    (1..a.depth()).map(|i| (a.prefix(i), a.suffix(i))).collect()
}

/// Coefficients of a three-fold tensor of words.
pub type TripleTerms = BTreeMap<(Word, Word, Word), Rational>;

/// Element of `ℋ ⊗ ℋ`, used to check the bialgebra laws.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HopfTensor {
    terms: BTreeMap<(Word, Word), Rational>,
}

impl HopfTensor {
    pub fn add_term(&mut self, l: Word, r: Word, c: Rational) {
        *self.terms.entry((l, r)).or_insert_with(Rational::zero) += c;
        self.terms.retain(|_, v| !v.is_zero());
    }

    /// `Δ` extended linearly.
    pub fn coproduct(x: &HopfElement) -> HopfTensor {
        let mut out = HopfTensor::default();
        for (w, c) in x.terms() {
            for (l, r) in deconcat(w) {
                out.add_term(l, r, c.clone());
            }
        }
        out
    }

    /// `(Δ ⊗ id)` or `(id ⊗ Δ)` applied to a tensor, flattened to triples.
    pub fn coassociativity_sides(x: &HopfElement) -> (TripleTerms, TripleTerms) {
        let mut left = BTreeMap::new();
        let mut right = BTreeMap::new();
        for ((l, r), c) in Self::coproduct(x).terms {
            for (ll, lr) in deconcat(&l) {
                *left.entry((ll, lr, r.clone())).or_insert_with(Rational::zero) += c.clone();
            }
            for (rl, rr) in deconcat(&r) {
                *right.entry((l.clone(), rl, rr)).or_insert_with(Rational::zero) += c.clone();
            }
        }
        left.retain(|_, v| !v.is_zero());
        right.retain(|_, v| !v.is_zero());
        (left, right)
    }

    /// Componentwise quasi-shuffle product on tensors.
    pub fn mul(&self, other: &HopfTensor) -> HopfTensor {
        let mut out = HopfTensor::default();
        for ((a1, a2), ca) in &self.terms {
            for ((b1, b2), cb) in &other.terms {
                let left = quasi_shuffle(a1, b1);
                let right = quasi_shuffle(a2, b2);
                for (l, cl) in left.terms() {
                    for (r, cr) in right.terms() {
                        out.add_term(l.clone(), r.clone(), cl * cr * ca * cb);
                    }
                }
            }
        }
        out
    }
}

/// A `(k, ℓ)`-stuffle triple `(r, α, β)`: order-preserving injections
/// `α: [k] → [r]`, `β: [ℓ] → [r]` whose images cover `[r]`. Images are
/// stored 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StuffleTriple {
    pub r: usize,
    pub alpha: Vec<usize>,
    pub beta: Vec<usize>,
}

impl StuffleTriple {
    /// `Φ_{r,α,β}(a, b)`: position `u` holds `a_{α⁻¹(u)}·b_{β⁻¹(u)}`, with a
    /// missing factor read as the unit.
    pub fn apply(&self, a: &Word, b: &Word) -> Word {
        let mut slots: Vec<Option<LetterPair>> = vec![None; self.r];
        for (i, &u) in self.alpha.iter().enumerate() {
            slots[u] = Some(a.letters[i].clone());
        }
        for (j, &u) in self.beta.iter().enumerate() {
            let y = &b.letters[j];
            slots[u] = Some(match slots[u].take() {
                Some(x) => x.merge(y),
                None => y.clone(),
            });
        }
        Word::new(slots.into_iter().map(|x| x.expect("images cover [r]")).collect())
    }
}

/// Enumerates every `(k, ℓ)`-stuffle triple by brute force.
pub fn stuffle_triples(k: usize, l: usize) -> Vec<StuffleTriple> {
    let mut out = Vec::new();
    for r in k.max(l)..=k + l {
        for alpha in (0..r).combinations(k) {
            for beta in (0..r).combinations(l) {
                let mut covered = vec![false; r];
                for &u in alpha.iter().chain(&beta) {
                    covered[u] = true;
                }
                if covered.iter().all(|&c| c) {
                    out.push(StuffleTriple { r, alpha: alpha.clone(), beta: beta.clone() });
                }
            }
        }
    }
    out
}

/// Largest combined depth the stuffle oracle will enumerate.
pub const STUFFLE_ORACLE_MAX_DEPTH: usize = 12;

/// `Σ_{(r,α,β)} Φ_{r,α,β}(a, b)` over all stuffle triples.
pub fn stuffle_oracle(a: &Word, b: &Word) -> Result<HopfElement> {
    let total = a.depth() + b.depth();
    if total > STUFFLE_ORACLE_MAX_DEPTH {
        return Err(Error::BoundExceeded(format!(
            "stuffle oracle limited to combined depth {STUFFLE_ORACLE_MAX_DEPTH}, got {total}"
        )));
    }
    if a.is_empty() || b.is_empty() {
        let w = if a.is_empty() { b.clone() } else { a.clone() };
        return Ok(HopfElement::from_word(w));
    }
    let mut out = HopfElement::zero();
    for t in stuffle_triples(a.depth(), b.depth()) {
        out.add_term(t.apply(a, b), Rational::one());
    }
    Ok(out)
}

/// The zero clusters of a non-positive exponent vector and the product of
/// symmetric groups acting within them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroClusters {
    len: usize,
    blocks: Vec<Vec<usize>>,
}

impl ZeroClusters {
    /// Maximal runs of zero entries, as 0-based index lists.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// `|Σ(s)| = Π (block length)!`.
    pub fn order(&self) -> u64 {
        self.blocks.iter().map(|b| (1..=b.len() as u64).product::<u64>()).product()
    }

    /// Every element of the group as a 0-based index map on `0..len`.
    pub fn permutations(&self) -> Vec<Vec<usize>> {
        let per_block: Vec<Vec<Vec<usize>>> =
            self.blocks.iter().map(|b| b.iter().copied().permutations(b.len()).collect()).collect();
        if per_block.is_empty() {
            return vec![(0..self.len).collect()];
        }
        per_block
            .into_iter()
            .multi_cartesian_product()
            .map(|choice| {
                let mut sigma: Vec<usize> = (0..self.len).collect();
                for (block, image) in self.blocks.iter().zip(choice) {
                    for (&i, j) in block.iter().zip(image) {
                        sigma[i] = j;
                    }
                }
                sigma
            })
            .collect()
    }
}

/// Zero-cluster symmetrization group `Σ(s)` of a non-positive vector.
pub fn symmetrization_group(s: &[i64]) -> Result<ZeroClusters> {
    if let Some(&bad) = s.iter().find(|&&x| x > 0) {
        return Err(Error::PositiveArgument(bad));
    }
    let mut blocks = Vec::new();
    let mut i = 0;
    while i < s.len() {
        if s[i] == 0 {
            let start = i;
            while i < s.len() && s[i] == 0 {
                i += 1;
            }
            blocks.push((start..i).collect());
        } else {
            i += 1;
        }
    }
    Ok(ZeroClusters { len: s.len(), blocks })
}

/// `w^(Σ_k) = Σ_{σ ∈ Σ_k} σ(w)`.
pub fn full_symmetrization(w: &Word) -> HopfElement {
    let mut out = HopfElement::zero();
    for sigma in (0..w.depth()).permutations(w.depth()) {
        out.add_term(w.permuted(&sigma), Rational::one());
    }
    out
}

/// Checks the partition identity
/// `a^(Σ_k) ⧢ (a_{k+1}) = (a, a_{k+1})^(Σ_{k+1}) + Σ_i (…, a_i a_{k+1}, …)^(Σ_k)`.
pub fn hoffman_identity_check(a: &[LetterPair], extra: &LetterPair) -> Result<bool> {
    if a.len() > 5 {
        return Err(Error::BoundExceeded(format!(
            "partition identity check limited to depth 5, got {}",
            a.len()
        )));
    }
    let base = Word::new(a.to_vec());
    let lhs = full_symmetrization(&base).mul(&HopfElement::from_word(Word::new(vec![extra.clone()])));
    let mut extended = a.to_vec();
    extended.push(extra.clone());
    let mut rhs = full_symmetrization(&Word::new(extended));
    for i in 0..a.len() {
        let mut merged = a.to_vec();
        merged[i] = merged[i].merge(extra);
        rhs = rhs.add(&full_symmetrization(&Word::new(merged)));
    }
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(s: i64, r: i64) -> LetterPair {
        LetterPair::new(s, Direction::constant(int(r)).unwrap())
    }

    fn w(letters: &[(i64, i64)]) -> Word {
        Word::new(letters.iter().map(|&(s, r)| lp(s, r)).collect())
    }

    #[test]
    fn depth_one_product() {
        let p = quasi_shuffle(&w(&[(-1, 1)]), &w(&[(-2, 3)]));
        let mut expect = HopfElement::zero();
        expect.add_term(w(&[(-1, 1), (-2, 3)]), int(1));
        expect.add_term(w(&[(-2, 3), (-1, 1)]), int(1));
        expect.add_term(w(&[(-3, 4)]), int(1));
        assert_eq!(p, expect);
        let sq = quasi_shuffle(&w(&[(1, 1)]), &w(&[(1, 1)]));
        assert_eq!(sq.coefficient(&w(&[(1, 1), (1, 1)])), int(2));
        assert_eq!(sq.coefficient(&w(&[(2, 2)])), int(1));
        assert_eq!(sq.len(), 2);
    }

    #[test]
    fn unit_laws() {
        let a = w(&[(0, 1), (-2, 5)]);
        assert_eq!(quasi_shuffle(&Word::empty(), &a), HopfElement::from_word(a.clone()));
        assert_eq!(quasi_shuffle(&a, &Word::empty()), HopfElement::from_word(a));
    }

    #[test]
    fn deconcat_splits() {
        let a = w(&[(0, 1), (-1, 2)]);
        let splits = deconcat(&a);
        assert_eq!(
            splits,
            vec![(Word::empty(), a.clone()), (w(&[(0, 1)]), w(&[(-1, 2)])), (a.clone(), Word::empty()),]
        );
        assert_eq!(deconcat(&Word::empty()), vec![(Word::empty(), Word::empty())]);
        assert_eq!(deconcat(&w(&[(0, 1), (0, 2), (0, 3)])).len(), 4);
    }

    #[test]
    fn triple_counts() {
        assert_eq!(stuffle_triples(1, 1).len(), 3);
        assert_eq!(stuffle_triples(2, 1).len(), 5);
        // Delannoy numbers D(k, ℓ) count the terms of a quasi-shuffle.
        assert_eq!(stuffle_triples(2, 2).len(), 13);
        assert_eq!(stuffle_triples(3, 3).len(), 63);
    }

    /// Counts triples by choosing which of the r slots are shared, then
    /// interleaving the rest: Σ_r C(r, k+ℓ−r)·C(2r−k−ℓ, r−ℓ).
    #[test]
    fn triple_count_formula() {
        fn binom(n: usize, k: usize) -> usize {
            if k > n {
                return 0;
            }
            (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
        }
        for k in 1..=5 {
            for l in 1..=5 {
                let count: usize = (k.max(l)..=k + l)
                    .map(|r| {
                        let shared = k + l - r;
                        binom(r, shared) * binom(r - shared, k - shared)
                    })
                    .sum();
                assert_eq!(stuffle_triples(k, l).len(), count, "k={k}, l={l}");
            }
        }
    }

    #[test]
    fn distinct_triples_give_distinct_words() {
        // Generic letters: distinct directions make every Φ distinguishable.
        let a = w(&[(0, 1), (0, 10), (0, 100)]);
        let b = w(&[(0, 1000), (0, 10000)]);
        let triples = stuffle_triples(3, 2);
        let words: std::collections::HashSet<Word> = triples.iter().map(|t| t.apply(&a, &b)).collect();
        assert_eq!(words.len(), triples.len());
    }

    #[test]
    fn oracle_bound() {
        let a = Word::new(vec![lp(0, 1); 7]);
        assert!(matches!(stuffle_oracle(&a, &a), Err(Error::BoundExceeded(_))));
    }

    #[test]
    fn zero_clusters() {
        let g = symmetrization_group(&[0, 0, -1, 0]).unwrap();
        assert_eq!(g.blocks(), &[vec![0, 1], vec![3]]);
        assert_eq!(g.order(), 2);
        assert_eq!(g.permutations().len(), 2);
        let g = symmetrization_group(&[-1, -2]).unwrap();
        assert!(g.blocks().is_empty());
        assert_eq!(g.order(), 1);
        assert_eq!(g.permutations(), vec![vec![0, 1]]);
        let g = symmetrization_group(&[0, 0, 0]).unwrap();
        assert_eq!(g.blocks(), &[vec![0, 1, 2]]);
        assert_eq!(g.order(), 6);
        assert!(symmetrization_group(&[1]).is_err());
    }

    #[test]
    fn partition_identity_small() {
        assert!(hoffman_identity_check(&[lp(-1, 1)], &lp(-2, 3)).unwrap());
        assert!(hoffman_identity_check(&[lp(0, 1), lp(-1, 2)], &lp(-2, 3)).unwrap());
        assert!(hoffman_identity_check(&[lp(0, 1), lp(-1, 2), lp(-3, 7)], &lp(0, 2)).unwrap());
    }

    #[test]
    fn direction_validation() {
        assert!(Direction::new(int(0), int(0)).is_err());
        assert!(Direction::new(int(-1), int(1)).is_err());
        assert!(Direction::new(int(0), int(1)).is_ok());
        assert_eq!(Direction::for_exponent(-3).to_string(), "3+1·d");
        assert_eq!(w(&[(0, 1), (-2, 3)]).to_string(), "[0,-2 | 1,3]");
    }

    fn letter() -> impl Strategy<Value = LetterPair> {
        (-3i64..=1, 1i64..=4).prop_map(|(s, r)| lp(s, r))
    }

    fn word(max: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(letter(), 0..=max).prop_map(Word::new)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn oracle_matches_recursion(a in word(3), b in word(3)) {
            prop_assert_eq!(stuffle_oracle(&a, &b).unwrap(), quasi_shuffle(&a, &b));
        }

        #[test]
        fn commutative_and_associative(a in word(2), b in word(2), c in word(2)) {
            prop_assert_eq!(quasi_shuffle(&a, &b), quasi_shuffle(&b, &a));
            let ea = HopfElement::from_word(a);
            let eb = HopfElement::from_word(b);
            let ec = HopfElement::from_word(c);
            prop_assert_eq!(ea.mul(&eb).mul(&ec), ea.mul(&eb.mul(&ec)));
        }

        #[test]
        fn bialgebra_compatibility(a in word(2), b in word(2)) {
            let ea = HopfElement::from_word(a);
            let eb = HopfElement::from_word(b);
            let lhs = HopfTensor::coproduct(&ea.mul(&eb));
            let rhs = HopfTensor::coproduct(&ea).mul(&HopfTensor::coproduct(&eb));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn coassociative(a in word(4)) {
            let (l, r) = HopfTensor::coassociativity_sides(&HopfElement::from_word(a));
            prop_assert_eq!(l, r);
        }

        #[test]
        fn permuting_inputs_permutes_triples(a in word(3), b in word(2)) {
            // Φ(σa, τb) = Φ_{α∘σ⁻¹, β∘τ⁻¹}(a, b): summing over all triples is
            // therefore invariant under reversing both inputs' letter order
            // combined with reversing each output word.
            prop_assume!(!a.is_empty() && !b.is_empty());
            let rev = |x: &Word| Word::new(x.letters().iter().rev().cloned().collect());
            let forward = stuffle_oracle(&a, &b).unwrap();
            let mut mirrored = HopfElement::zero();
            for (w, c) in stuffle_oracle(&rev(&a), &rev(&b)).unwrap().terms() {
                mirrored.add_term(rev(w), c.clone());
            }
            prop_assert_eq!(forward, mirrored);
        }

        #[test]
        fn partition_identity_random(
            a in prop::collection::vec(letter(), 1..=3), extra in letter()
        ) {
            prop_assert!(hoffman_identity_check(&a, &extra).unwrap());
        }
    }
}
