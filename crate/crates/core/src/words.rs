//! Words over `{0, .., q-1}`, the insertion/deletion metric, and ball enumeration.
//!
//! Distances here count insertions and deletions only; substitutions are not
//! an edit operation. `d_L(a, b) = |a| + |b| - 2 * lcs(a, b)`.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Symbol = u8;

/// Largest enumeration a ball may materialize unless the caller raises it.
pub const DEFAULT_BALL_CAP: u128 = 10_000_000;

/// A finite sequence of symbols over an alphabet of size `q`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Word {
    q: u16,
    symbols: Vec<Symbol>,
}

impl Word {
    pub fn new(symbols: Vec<Symbol>, q: u16) -> Result<Self> {
        check_alphabet(q)?;
        if let Some(&bad) = symbols.iter().find(|&&s| u16::from(s) >= q) {
            return Err(Error::SymbolOutOfRange {
                symbol: bad.into(),
                q,
            });
        }
        Ok(Self { q, symbols })
    }

    pub fn empty(q: u16) -> Result<Self> {
        Self::new(Vec::new(), q)
    }

    /// Skips validation; callers guarantee every symbol is below `q`.
    pub(crate) fn from_raw(symbols: Vec<Symbol>, q: u16) -> Self {
        debug_assert!(symbols.iter().all(|&s| u16::from(s) < q));
        Self { q, symbols }
    }

    /// Parses the comma-separated form produced by `Display`.
    pub fn parse(text: &str, q: u16) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Self::empty(q);
        }
        let symbols = text
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                let value: u32 = tok
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad symbol {tok:?}")))?;
                if value >= u32::from(q) {
                    return Err(Error::SymbolOutOfRange { symbol: value, q });
                }
                Ok(value as Symbol)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(symbols, q)
    }

    pub fn q(&self) -> u16 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.symbols
    }

    /// Every word of length `len` over `{0, .., q-1}`, in lexicographic order.
    pub fn all_of_length(q: u16, len: usize) -> impl Iterator<Item = Word> {
        let total = (q as u128).checked_pow(len as u32);
        let mut next = Some(vec![0 as Symbol; len]);
        if total.is_none() {
            next = None;
        }
        std::iter::from_fn(move || {
            let current = next.take()?;
            let mut succ = current.clone();
            let mut carried = true;
            for pos in (0..len).rev() {
                if u16::from(succ[pos]) + 1 < q {
                    succ[pos] += 1;
                    carried = false;
                    break;
                }
                succ[pos] = 0;
            }
            if !carried {
                next = Some(succ);
            }
            Some(Word::from_raw(current, q))
        })
    }

    /// Orders by length first, then lexicographically.
    pub fn shortlex_cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.symbols.cmp(&other.symbols))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

pub(crate) fn check_alphabet(q: u16) -> Result<()> {
    if !(2..=256).contains(&q) {
        return Err(Error::InvalidAlphabet(q.into()));
    }
    Ok(())
}

fn same_alphabet(a: &Word, b: &Word) -> Result<()> {
    if a.q != b.q {
        return Err(Error::AlphabetMismatch {
            left: a.q,
            right: b.q,
        });
    }
    Ok(())
}

/// Number of insertions and deletions turning one word into another.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct InsdelPair {
    pub insertions: usize,
    pub deletions: usize,
}

impl InsdelPair {
    pub fn new(insertions: usize, deletions: usize) -> Self {
        Self {
            insertions,
            deletions,
        }
    }

    pub fn total(&self) -> usize {
        self.insertions + self.deletions
    }

    /// Componentwise `<=`.
    pub fn within(&self, max_insertions: usize, max_deletions: usize) -> bool {
        self.insertions <= max_insertions && self.deletions <= max_deletions
    }
}

/// Quadratic LCS dynamic program with a single rolling row.
pub(crate) fn lcs_slices(a: &[Symbol], b: &[Symbol]) -> usize {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    if short.is_empty() {
        return 0;
    }
    let mut row = vec![0usize; short.len() + 1];
    for &x in long {
        let mut diag = 0;
        for (j, &y) in short.iter().enumerate() {
            let up = row[j + 1];
            row[j + 1] = if x == y { diag + 1 } else { up.max(row[j]) };
            diag = up;
        }
    }
    row[short.len()]
}

pub(crate) fn distance_slices(a: &[Symbol], b: &[Symbol]) -> usize {
    a.len() + b.len() - 2 * lcs_slices(a, b)
}

pub fn lcs_length(a: &Word, b: &Word) -> Result<usize> {
    same_alphabet(a, b)?;
    Ok(lcs_slices(&a.symbols, &b.symbols))
}

pub fn levenshtein_distance(a: &Word, b: &Word) -> Result<usize> {
    same_alphabet(a, b)?;
    Ok(distance_slices(&a.symbols, &b.symbols))
}

/// The componentwise-minimal `(insertions, deletions)` taking `a` to `b`.
pub fn minimal_insdel_pair(a: &Word, b: &Word) -> Result<InsdelPair> {
    let lcs = lcs_length(a, b)?;
    Ok(InsdelPair::new(b.len() - lcs, a.len() - lcs))
}

/// Membership test for `insdel_ball(center, max_insertions, max_deletions)`
/// that never enumerates the ball.
pub fn in_insdel_ball(
    center: &Word,
    candidate: &Word,
    max_insertions: usize,
    max_deletions: usize,
) -> Result<bool> {
    Ok(minimal_insdel_pair(center, candidate)?.within(max_insertions, max_deletions))
}

fn binomial_u128(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // exact at every step: acc * (n - i) is divisible by (i + 1)
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

/// Upper bound on the number of distinct words in `insdel_ball(x, t_i, t_d)`
/// for `|x| = len`. Saturates instead of overflowing.
pub fn insdel_ball_size_estimate(len: usize, q: u16, t_i: usize, t_d: usize) -> u128 {
    let q1 = u128::from(q.saturating_sub(1));
    let mut total: u128 = 0;
    for k in 0..=t_d.min(len) {
        let base = len - k;
        let mut supersequences: u128 = 0;
        for i in 0..=t_i {
            let mut exact: u128 = 0;
            let mut pow: u128 = 1;
            for j in 0..=i {
                exact = exact.saturating_add(binomial_u128(base + i, j).saturating_mul(pow));
                pow = pow.saturating_mul(q1);
            }
            supersequences = supersequences.saturating_add(exact);
        }
        total = total.saturating_add(binomial_u128(len, k).saturating_mul(supersequences));
    }
    total
}

/// Distinct subsequences reachable by exactly 0, 1, .., `max_deletions`
/// deletions, grouped by the number of deletions.
fn deletion_levels(x: &[Symbol], max_deletions: usize) -> Vec<HashSet<Vec<Symbol>>> {
    let mut levels = Vec::with_capacity(max_deletions + 1);
    let mut current: HashSet<Vec<Symbol>> = HashSet::from([x.to_vec()]);
    for _ in 0..max_deletions {
        let mut next = HashSet::new();
        for w in &current {
            for pos in 0..w.len() {
                // deleting any symbol of a run gives the same word
                if pos > 0 && w[pos - 1] == w[pos] {
                    continue;
                }
                let mut shorter = Vec::with_capacity(w.len() - 1);
                shorter.extend_from_slice(&w[..pos]);
                shorter.extend_from_slice(&w[pos + 1..]);
                next.insert(shorter);
            }
        }
        levels.push(current);
        current = next;
    }
    levels.push(current);
    levels
}

fn insert_one(w: &[Symbol], q: u16, out: &mut HashSet<Vec<Symbol>>) {
    for pos in 0..=w.len() {
        for a in 0..q {
            let a = a as Symbol;
            // inserting `a` right after an `a` duplicates inserting before it
            if pos > 0 && w[pos - 1] == a {
                continue;
            }
            let mut longer = Vec::with_capacity(w.len() + 1);
            longer.extend_from_slice(&w[..pos]);
            longer.push(a);
            longer.extend_from_slice(&w[pos..]);
            out.insert(longer);
        }
    }
}

/// Adds to `out` every word obtained from a member of `seeds` by at most
/// `max_insertions` insertions.
fn extend_by_insertions(
    seeds: &HashSet<Vec<Symbol>>,
    q: u16,
    max_insertions: usize,
    out: &mut HashSet<Vec<Symbol>>,
) {
    let mut current = seeds.clone();
    out.extend(current.iter().cloned());
    for _ in 0..max_insertions {
        let mut next = HashSet::new();
        for w in &current {
            insert_one(w, q, &mut next);
        }
        out.extend(next.iter().cloned());
        current = next;
    }
}

/// Raw form of the insdel ball used by the oracles: deletions first, then
/// insertions, deduplicated level by level.
pub(crate) fn insdel_ball_raw(
    x: &[Symbol],
    q: u16,
    max_insertions: usize,
    max_deletions: usize,
) -> HashSet<Vec<Symbol>> {
    let mut out = HashSet::new();
    for level in deletion_levels(x, max_deletions.min(x.len())) {
        extend_by_insertions(&level, q, max_insertions, &mut out);
    }
    out
}

pub fn insdel_ball(x: &Word, max_insertions: usize, max_deletions: usize) -> Result<BTreeSet<Word>> {
    insdel_ball_capped(x, max_insertions, max_deletions, DEFAULT_BALL_CAP)
}

/// Every word obtainable from `x` by at most `max_insertions` insertions and
/// at most `max_deletions` deletions. Fails fast when the size bound exceeds
/// `cap`.
pub fn insdel_ball_capped(
    x: &Word,
    max_insertions: usize,
    max_deletions: usize,
    cap: u128,
) -> Result<BTreeSet<Word>> {
    if max_deletions > x.len() {
        return Err(Error::TooManyDeletions {
            deletions: max_deletions,
            len: x.len(),
        });
    }
    let estimate = insdel_ball_size_estimate(x.len(), x.q, max_insertions, max_deletions);
    if estimate > cap {
        return Err(Error::CapExceeded { estimate, cap });
    }
    Ok(insdel_ball_raw(&x.symbols, x.q, max_insertions, max_deletions)
        .into_iter()
        .map(|s| Word::from_raw(s, x.q))
        .collect())
}

pub fn levenshtein_ball(x: &Word, radius: usize) -> Result<BTreeSet<Word>> {
    levenshtein_ball_capped(x, radius, DEFAULT_BALL_CAP)
}

/// `{y : d_L(x, y) <= radius}`.
pub fn levenshtein_ball_capped(x: &Word, radius: usize, cap: u128) -> Result<BTreeSet<Word>> {
    let max_del = radius.min(x.len());
    let estimate = (0..=max_del).fold(0u128, |acc, k| {
        acc.saturating_add(insdel_ball_size_estimate(x.len(), x.q, radius - k, k))
    });
    if estimate > cap {
        return Err(Error::CapExceeded { estimate, cap });
    }
    let mut out = HashSet::new();
    for (k, level) in deletion_levels(&x.symbols, max_del).into_iter().enumerate() {
        extend_by_insertions(&level, x.q, radius - k, &mut out);
    }
    Ok(out.into_iter().map(|s| Word::from_raw(s, x.q)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &[Symbol], q: u16) -> Word {
        Word::new(s.to_vec(), q).unwrap()
    }

    /// Brute force: is `sub` a subsequence of `sup`?
    fn is_subsequence(sub: &[Symbol], sup: &[Symbol]) -> bool {
        let mut it = sup.iter();
        sub.iter().all(|s| it.any(|t| t == s))
    }

    /// Independent LCS: longest word of `a`'s subsequences that also embeds in `b`.
    fn lcs_by_enumeration(a: &[Symbol], b: &[Symbol]) -> usize {
        let n = a.len();
        (0u32..(1 << n))
            .filter_map(|mask| {
                let sub: Vec<Symbol> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| a[i]).collect();
                is_subsequence(&sub, b).then_some(sub.len())
            })
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn lcs_examples() {
        assert_eq!(lcs_length(&w(&[1, 0, 0, 1], 2), &w(&[0, 1, 1, 0], 2)).unwrap(), 2);
        assert_eq!(lcs_by_enumeration(&[1, 0, 0, 1], &[0, 1, 1, 0]), 2);
        let x = w(&[2, 0, 1, 1, 2], 3);
        assert_eq!(lcs_length(&x, &x).unwrap(), 5);
        assert_eq!(lcs_length(&w(&[0, 1, 2], 3), &w(&[0, 2], 3)).unwrap(), 2);
    }

    #[test]
    fn lcs_matches_enumeration_exhaustively() {
        for la in 0..=5 {
            for lb in 0..=4 {
                for a in Word::all_of_length(2, la) {
                    for b in Word::all_of_length(2, lb) {
                        assert_eq!(
                            lcs_length(&a, &b).unwrap(),
                            lcs_by_enumeration(a.symbols(), b.symbols()),
                            "{a} vs {b}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn distance_examples() {
        assert_eq!(levenshtein_distance(&w(&[1, 0, 0, 1], 2), &w(&[0, 1, 1, 0], 2)).unwrap(), 4);
        let x = w(&[1, 1, 0], 2);
        assert_eq!(levenshtein_distance(&x, &x).unwrap(), 0);
    }

    #[test]
    fn mismatched_alphabets_rejected() {
        let err = lcs_length(&w(&[0], 2), &w(&[0], 3)).unwrap_err();
        assert_eq!(err, Error::AlphabetMismatch { left: 2, right: 3 });
        assert!(levenshtein_distance(&w(&[0], 2), &w(&[0], 3)).is_err());
        assert!(minimal_insdel_pair(&w(&[0], 2), &w(&[0], 3)).is_err());
    }

    #[test]
    fn minimal_pair_examples() {
        assert_eq!(minimal_insdel_pair(&w(&[0, 1], 2), &w(&[1, 0], 2)).unwrap(), InsdelPair::new(1, 1));
        let x = w(&[0, 1, 1], 2);
        assert_eq!(minimal_insdel_pair(&x, &x).unwrap(), InsdelPair::new(0, 0));
        assert_eq!(
            minimal_insdel_pair(&w(&[0, 0, 0], 2), &w(&[0, 0, 0, 1, 1], 2)).unwrap(),
            InsdelPair::new(2, 0)
        );
    }

    #[test]
    fn ball_examples() {
        let zero = w(&[0], 2);
        let ball = insdel_ball(&zero, 0, 1).unwrap();
        assert_eq!(ball, BTreeSet::from([w(&[0], 2), Word::empty(2).unwrap()]));

        let ball = insdel_ball(&zero, 1, 0).unwrap();
        let expected: BTreeSet<Word> =
            [vec![0], vec![0, 0], vec![0, 1], vec![1, 0]].into_iter().map(|s| w(&s, 2)).collect();
        assert_eq!(ball, expected);

        let x = w(&[1, 0, 2], 3);
        assert_eq!(insdel_ball(&x, 0, 0).unwrap(), BTreeSet::from([x.clone()]));
        assert_eq!(levenshtein_ball(&zero, 0).unwrap(), BTreeSet::from([zero.clone()]));
    }

    #[test]
    fn too_many_deletions() {
        let err = insdel_ball(&w(&[0, 1], 2), 0, 3).unwrap_err();
        assert_eq!(err, Error::TooManyDeletions { deletions: 3, len: 2 });
    }

    #[test]
    fn cap_is_enforced() {
        let x = w(&[0; 12], 4);
        match insdel_ball_capped(&x, 6, 6, 1000) {
            Err(Error::CapExceeded { estimate, cap }) => {
                assert!(estimate > cap);
                assert_eq!(cap, 1000);
            }
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn estimate_bounds_actual_size() {
        for n in 0..=5 {
            for x in Word::all_of_length(2, n) {
                for ti in 0..=2 {
                    for td in 0..=2.min(n) {
                        let size = insdel_ball(&x, ti, td).unwrap().len() as u128;
                        assert!(size <= insdel_ball_size_estimate(n, 2, ti, td));
                    }
                }
            }
        }
    }

    #[test]
    fn levenshtein_ball_matches_predicate_filter() {
        let x = w(&[0, 1], 2);
        let ball = levenshtein_ball(&x, 2).unwrap();
        let filtered: BTreeSet<Word> = (0..=4)
            .flat_map(|len| Word::all_of_length(2, len))
            .filter(|y| levenshtein_distance(&x, y).unwrap() <= 2)
            .collect();
        assert_eq!(ball, filtered);
        // lengths 0..4 suffice: anything longer than 4 is at distance > 2
        assert!(ball.iter().all(|y| y.len() <= 4));
    }

    #[test]
    fn levenshtein_ball_is_union_of_insdel_balls() {
        for n in 0..=3 {
            for x in Word::all_of_length(3, n) {
                for d in 0..=2 {
                    let mut union = BTreeSet::new();
                    for td in 0..=d.min(n) {
                        union.extend(insdel_ball(&x, d - td, td).unwrap());
                    }
                    assert_eq!(levenshtein_ball(&x, d).unwrap(), union);
                }
            }
        }
    }

    #[test]
    fn insdel_ball_matches_membership_predicate() {
        for n in 0..=4 {
            for x in Word::all_of_length(2, n) {
                for ti in 0..=2 {
                    for td in 0..=2.min(n) {
                        let ball = insdel_ball(&x, ti, td).unwrap();
                        let filtered: BTreeSet<Word> = (n - td..=n + ti)
                            .flat_map(|len| Word::all_of_length(2, len))
                            .filter(|y| in_insdel_ball(&x, y, ti, td).unwrap())
                            .collect();
                        assert_eq!(ball, filtered, "x={x} ti={ti} td={td}");
                    }
                }
            }
        }
    }

    #[test]
    fn insertion_ball_size_is_center_independent() {
        for q in 2..=3u16 {
            for n in 0..=5usize {
                if q == 3 && n == 5 {
                    continue;
                }
                for t in 1..=2 {
                    let sizes: BTreeSet<usize> = Word::all_of_length(q, n)
                        .map(|x| insdel_ball(&x, t, 0).unwrap().len())
                        .collect();
                    assert_eq!(sizes.len(), 1, "q={q} n={n} t={t}: {sizes:?}");
                }
            }
        }
    }

    #[test]
    fn deletion_ball_size_depends_on_center() {
        let constant = w(&[0, 0, 0], 2);
        let alternating = w(&[0, 1, 0], 2);
        let a = insdel_ball(&constant, 0, 1).unwrap().len();
        let b = insdel_ball(&alternating, 0, 1).unwrap().len();
        assert_eq!(a, 2);
        assert_eq!(b, 4);
    }

    #[test]
    fn parse_and_display() {
        let x = Word::parse("0, 2,1", 3).unwrap();
        assert_eq!(x.symbols(), &[0, 2, 1]);
        assert_eq!(x.to_string(), "0,2,1");
        assert_eq!(Word::parse("", 2).unwrap().to_string(), "");
        assert!(matches!(Word::parse("0,3", 3), Err(Error::SymbolOutOfRange { .. })));
        assert!(matches!(Word::parse("0,x", 3), Err(Error::Parse(_))));
        assert!(matches!(Word::new(vec![0], 1), Err(Error::InvalidAlphabet(1))));
    }

    #[test]
    fn all_of_length_counts() {
        assert_eq!(Word::all_of_length(3, 0).count(), 1);
        assert_eq!(Word::all_of_length(3, 4).count(), 81);
        let first_two: Vec<String> = Word::all_of_length(2, 2).map(|w| w.to_string()).collect();
        assert_eq!(first_two, ["0,0", "0,1", "1,0", "1,1"]);
    }
}
