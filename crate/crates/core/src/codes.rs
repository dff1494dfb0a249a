//! Code families: Reed-Solomon over prime fields, binary and q-ary
//! Varshamov-Tenengolts codes, and Helberg codes.

use std::fmt::Write as _;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::verify::min_distance_above;
use crate::words::{check_alphabet, Symbol, Word};

/// Largest code that is materialized without an explicit larger cap.
pub const DEFAULT_CODE_CAP: u128 = 1_000_000;

/// A non-empty set of distinct equal-length words, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Code {
    q: u16,
    n: usize,
    codewords: Vec<Word>,
}

impl Code {
    pub fn new(q: u16, n: usize, mut codewords: Vec<Word>) -> Result<Self> {
        check_alphabet(q)?;
        if codewords.is_empty() {
            return Err(Error::EmptyCode);
        }
        for c in &codewords {
            if c.q() != q {
                return Err(Error::AlphabetMismatch { left: q, right: c.q() });
            }
            if c.len() != n {
                return Err(invalid(format!("codeword {c} has length {} != {n}", c.len())));
            }
        }
        codewords.sort();
        let before = codewords.len();
        codewords.dedup();
        if codewords.len() != before {
            return Err(invalid("duplicate codewords"));
        }
        Ok(Self { q, n, codewords })
    }

    fn from_sorted_raw(q: u16, n: usize, words: Vec<Vec<Symbol>>) -> Result<Self> {
        if words.is_empty() {
            return Err(Error::EmptyCode);
        }
        let codewords = words.into_iter().map(|w| Word::from_raw(w, q)).collect();
        Ok(Self { q, n, codewords })
    }

    pub fn q(&self) -> u16 {
        self.q
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.codewords.len()
    }

    pub fn codewords(&self) -> &[Word] {
        &self.codewords
    }

    pub fn contains(&self, word: &Word) -> bool {
        self.codewords.binary_search(word).is_ok()
    }

    /// `log_q |C| / n`.
    pub fn rate(&self) -> f64 {
        if self.n == 0 {
            return 0.0;
        }
        (self.size() as f64).ln() / f64::from(self.q).ln() / self.n as f64
    }

    /// Header `q=<q> n=<n>` followed by one comma-separated codeword per line.
    pub fn to_file_string(&self) -> String {
        let mut out = format!("q={} n={}\n", self.q, self.n);
        for c in &self.codewords {
            let _ = writeln!(out, "{c}");
        }
        out
    }

    pub fn parse_file(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Parse("empty code file".into()))?;
        let mut q = None;
        let mut n = None;
        for field in header.split_whitespace() {
            match field.split_once('=') {
                Some(("q", v)) => q = v.parse::<u16>().ok(),
                Some(("n", v)) => n = v.parse::<usize>().ok(),
                _ => return Err(Error::Parse(format!("bad header field {field:?}"))),
            }
        }
        let (q, n) = match (q, n) {
            (Some(q), Some(n)) => (q, n),
            _ => return Err(Error::Parse(format!("bad header {header:?}"))),
        };
        check_alphabet(q)?;
        let mut words = Vec::new();
        for line in lines {
            // n = 0 codes have a single empty line per codeword
            if line.trim().is_empty() && n > 0 {
                continue;
            }
            words.push(Word::parse(line, q)?);
        }
        Self::new(q, n, words)
    }
}

fn check_space(q: u16, n: usize, cap: u128) -> Result<()> {
    let estimate = u128::from(q).checked_pow(n as u32).unwrap_or(u128::MAX);
    if estimate > cap {
        return Err(Error::CapExceeded { estimate, cap });
    }
    Ok(())
}

/// Keeps the words of `Sigma_q^n` accepted by `keep`, in lexicographic order.
fn filter_space(q: u16, n: usize, cap: u128, keep: impl Fn(&[Symbol]) -> bool) -> Result<Code> {
    check_space(q, n, cap)?;
    let words = Word::all_of_length(q, n)
        .map(Word::into_symbols)
        .filter(|w| keep(w))
        .collect();
    Code::from_sorted_raw(q, n, words)
}

/// `GF(p)` for a prime `p <= 256`, so that elements are valid symbols.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !(2..=256).contains(&p) || !is_prime(p) {
            return Err(invalid(format!("{p} is not a prime in [2, 256]")));
        }
        Ok(Self { p })
    }

    pub fn order(&self) -> u32 {
        self.p
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.p
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        (a * b) % self.p
    }

    pub fn neg(&self, a: u32) -> u32 {
        (self.p - a % self.p) % self.p
    }

    pub fn pow(&self, mut base: u32, mut exp: u32) -> u32 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        (a % self.p != 0).then(|| self.pow(a, self.p - 2))
    }

    /// Smallest generator of the multiplicative group.
    pub fn primitive_element(&self) -> u32 {
        (1..self.p)
            .find(|&g| {
                let mut x = 1;
                (1..self.p - 1).all(|_| {
                    x = self.mul(x, g);
                    x != 1
                })
            })
            .expect("every prime field has a generator")
    }

    /// Horner evaluation of `coeffs[0] + coeffs[1] x + ...`.
    pub fn eval(&self, coeffs: &[u32], x: u32) -> u32 {
        coeffs.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Evaluation-map view of a Reed-Solomon code: codewords are produced on
/// demand so that large `p^k` can still be streamed.
#[derive(Clone, Debug)]
pub struct ReedSolomon {
    field: PrimeField,
    k: usize,
    alpha: Vec<u32>,
}

impl ReedSolomon {
    pub fn new(field: PrimeField, k: usize, alpha: Vec<u32>) -> Result<Self> {
        let n = alpha.len();
        let p = field.order() as usize;
        if n == 0 || k == 0 {
            return Err(invalid("need n >= 1 and k >= 1"));
        }
        if k > n {
            return Err(invalid(format!("dimension k={k} exceeds length n={n}")));
        }
        if n > p {
            return Err(invalid(format!("length n={n} exceeds field size {p}")));
        }
        if alpha.iter().any(|&a| a >= field.order()) {
            return Err(invalid("evaluation point outside the field"));
        }
        if alpha.iter().duplicates().next().is_some() {
            return Err(invalid("evaluation points must be distinct"));
        }
        Ok(Self { field, k, alpha })
    }

    pub fn length(&self) -> usize {
        self.alpha.len()
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    pub fn alpha(&self) -> &[u32] {
        &self.alpha
    }

    /// `p^k`, saturating.
    pub fn size(&self) -> u128 {
        u128::from(self.field.order())
            .checked_pow(self.k as u32)
            .unwrap_or(u128::MAX)
    }

    pub fn encode(&self, message: &[u32]) -> Vec<Symbol> {
        self.alpha
            .iter()
            .map(|&x| self.field.eval(message, x) as Symbol)
            .collect()
    }

    /// Every codeword, one per polynomial of degree `< k`, in message order.
    pub fn codewords(&self) -> impl Iterator<Item = Vec<Symbol>> + '_ {
        let p = self.field.order();
        (0..self.k)
            .map(|_| 0..p)
            .multi_cartesian_product()
            .map(move |msg| self.encode(&msg))
    }

    pub fn to_code(&self, cap: u128) -> Result<Code> {
        let estimate = self.size();
        if estimate > cap {
            return Err(Error::CapExceeded { estimate, cap });
        }
        let mut words: Vec<Vec<Symbol>> = self.codewords().collect();
        words.sort();
        Code::from_sorted_raw(self.field.order() as u16, self.length(), words)
    }
}

pub fn rs_code(field: PrimeField, k: usize, alpha: Vec<u32>) -> Result<Code> {
    ReedSolomon::new(field, k, alpha)?.to_code(DEFAULT_CODE_CAP)
}

/// Outcome of searching evaluation vectors for a large Levenshtein distance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RsSearchReport {
    pub p: u32,
    pub n: usize,
    pub k: usize,
    pub best_alpha: Vec<u32>,
    pub achieved_distance: usize,
    /// `2n - 4k + 4`, which may be negative or exceed what is attainable.
    pub nominal_target: i64,
    /// The nominal target clipped into `[2, 2n]`.
    pub target: usize,
    pub met: bool,
    pub examined: u64,
    pub exhaustive: bool,
}

fn falling_factorial(p: u64, n: u64) -> Option<u64> {
    (0..n).try_fold(1u64, |acc, i| acc.checked_mul(p - i))
}

/// Searches ordered evaluation vectors, exhaustively when there are at most
/// `budget` of them and otherwise by `budget` seeded random draws, keeping
/// the one whose code has the largest minimum Levenshtein distance.
pub fn rs_search_eval_points(
    field: PrimeField,
    n: usize,
    k: usize,
    budget: u64,
    seed: u64,
) -> Result<RsSearchReport> {
    let p = field.order();
    // validates the parameters once up front
    ReedSolomon::new(field, k, (0..n as u32).collect())?;
    let size = u128::from(p).checked_pow(k as u32).unwrap_or(u128::MAX);
    if size > DEFAULT_CODE_CAP {
        return Err(Error::CapExceeded {
            estimate: size,
            cap: DEFAULT_CODE_CAP,
        });
    }
    let nominal_target = 2 * n as i64 - 4 * k as i64 + 4;
    let target = nominal_target.clamp(2, 2 * n as i64) as usize;

    let total = falling_factorial(p.into(), n as u64);
    let exhaustive = total.is_some_and(|t| t <= budget);
    let candidates: Box<dyn Iterator<Item = Vec<u32>>> = if exhaustive {
        Box::new((0..p).permutations(n))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pool: Vec<u32> = (0..p).collect();
        Box::new((0..budget).map(move |_| {
            let mut alpha: Vec<u32> = pool.choose_multiple(&mut rng, n).copied().collect();
            alpha.shuffle(&mut rng);
            alpha
        }))
    };

    let mut best: Option<(Vec<u32>, usize)> = None;
    let mut examined = 0u64;
    for alpha in candidates {
        examined += 1;
        let code = ReedSolomon::new(field, k, alpha.clone())?.to_code(DEFAULT_CODE_CAP)?;
        let floor = best.as_ref().map_or(0, |(_, d)| *d);
        if let Some(d) = min_distance_above(&code, floor) {
            best = Some((alpha, d));
            if d >= 2 * n {
                break;
            }
        }
    }
    let (best_alpha, achieved_distance) = best.expect("at least one candidate examined");
    Ok(RsSearchReport {
        p,
        n,
        k,
        best_alpha,
        achieved_distance,
        nominal_target,
        target,
        met: achieved_distance >= target,
        examined,
        exhaustive,
    })
}

/// `{c in Sigma_2^n : sum_i i c_i = a (mod n + 1)}` with 1-based `i`.
pub fn vt_binary(n: usize, a: usize) -> Result<Code> {
    vt_binary_capped(n, a, DEFAULT_CODE_CAP)
}

pub fn vt_binary_capped(n: usize, a: usize, cap: u128) -> Result<Code> {
    if n == 0 || a > n {
        return Err(invalid(format!("VT code needs n >= 1 and 0 <= a <= n, got n={n} a={a}")));
    }
    filter_space(2, n, cap, |c| vt_syndrome(c) == a)
}

/// `sum_i i c_i mod (n + 1)`.
pub fn vt_syndrome(c: &[Symbol]) -> usize {
    let m = c.len() + 1;
    c.iter()
        .enumerate()
        .map(|(i, &s)| (i + 1) * usize::from(s))
        .sum::<usize>()
        % m
}

/// The two syndromes of a q-ary VT code for `s = (s_0, .., s_{n-1})`:
/// `sum_{i=1}^{n-1} i alpha_i mod n` where `alpha_i = [s_i >= s_{i-1}]`, and
/// `sum_i s_i mod q`.
pub fn vt_qary_syndrome(s: &[Symbol], q: u16) -> (usize, usize) {
    let n = s.len();
    let weighted: usize = (1..n).filter(|&i| s[i] >= s[i - 1]).sum();
    let total: usize = s.iter().map(|&x| usize::from(x)).sum();
    (weighted % n.max(1), total % usize::from(q))
}

pub fn vt_qary(n: usize, q: u16, a: usize, b: usize) -> Result<Code> {
    vt_qary_capped(n, q, a, b, DEFAULT_CODE_CAP)
}

pub fn vt_qary_capped(n: usize, q: u16, a: usize, b: usize, cap: u128) -> Result<Code> {
    check_alphabet(q)?;
    if q <= 2 {
        return Err(invalid("q-ary VT code needs q > 2"));
    }
    if n == 0 || a >= n || b >= usize::from(q) {
        return Err(invalid(format!(
            "q-ary VT code needs n >= 1, 0 <= a < n, 0 <= b < q; got n={n} a={a} b={b}"
        )));
    }
    filter_space(q, n, cap, |s| vt_qary_syndrome(s, q) == (a, b))
}

/// `v_i = 1 + (q-1) sum_{j=1}^{s} v_{i-j}` with `v_i = 0` for `i <= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HelbergWeights {
    pub q: u16,
    pub s: usize,
    /// `values[i - 1] = v_i` for `i = 1..=len`.
    values: Vec<BigInt>,
}

impl HelbergWeights {
    /// Weights `v_1 .. v_len`.
    pub fn new(q: u16, s: usize, len: usize) -> Self {
        let mut values: Vec<BigInt> = Vec::with_capacity(len);
        let q1 = BigInt::from(q) - 1;
        for i in 0..len {
            let window: BigInt = values[i.saturating_sub(s)..i].iter().sum();
            values.push(BigInt::one() + &q1 * window);
        }
        Self { q, s, values }
    }

    /// `v_i` for 1-based `i`; zero for `i <= 0`.
    pub fn get(&self, i: usize) -> BigInt {
        if i == 0 {
            return BigInt::zero();
        }
        self.values[i - 1].clone()
    }

    pub fn as_slice(&self) -> &[BigInt] {
        &self.values
    }
}

/// `{x in Sigma_q^n : sum_i v_i(q,s) x_i = a (mod m)}`, with `m` defaulting
/// to `v_{n+1}(q, s)`.
pub fn helberg(q: u16, n: usize, s: usize, a: u64, modulus: Option<u64>) -> Result<Code> {
    helberg_capped(q, n, s, a, modulus, DEFAULT_CODE_CAP)
}

pub fn helberg_capped(
    q: u16,
    n: usize,
    s: usize,
    a: u64,
    modulus: Option<u64>,
    cap: u128,
) -> Result<Code> {
    check_alphabet(q)?;
    if s == 0 || s >= n {
        return Err(invalid(format!("Helberg code needs 1 <= s < n, got s={s} n={n}")));
    }
    check_space(q, n, cap)?;
    let weights = HelbergWeights::new(q, s, n + 1);
    let minimum = weights.get(n + 1);
    let m = match modulus {
        Some(m) if BigInt::from(m) < minimum => {
            return Err(invalid(format!("modulus {m} is below v_(n+1) = {minimum}")));
        }
        Some(m) => m,
        None => minimum
            .to_u64()
            .ok_or_else(|| invalid("v_(n+1) does not fit in 64 bits"))?,
    };
    if a >= m {
        return Err(invalid(format!("residue a={a} must be below the modulus {m}")));
    }
    let reduced: Vec<u128> = weights.as_slice()[..n]
        .iter()
        .map(|v| (v % BigInt::from(m)).to_u128().expect("reduced below m"))
        .collect();
    let m = u128::from(m);
    filter_space(q, n, cap, |x| {
        let syndrome = x
            .iter()
            .zip(&reduced)
            .fold(0u128, |acc, (&xi, &v)| (acc + u128::from(xi) * v) % m);
        syndrome == u128::from(a)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::min_levenshtein_distance;

    fn words(code: &Code) -> Vec<String> {
        code.codewords().iter().map(|c| c.to_string()).collect()
    }

    fn min_hamming(code: &Code) -> usize {
        let cw = code.codewords();
        let mut best = usize::MAX;
        for i in 0..cw.len() {
            for j in i + 1..cw.len() {
                let d = cw[i]
                    .symbols()
                    .iter()
                    .zip(cw[j].symbols())
                    .filter(|(a, b)| a != b)
                    .count();
                best = best.min(d);
            }
        }
        best
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        assert_eq!(f.inv(0), None);
        for a in 0..7 {
            for b in 0..7 {
                for c in 0..7 {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
            assert_eq!(f.add(a, f.neg(a)), 0);
        }
        assert_eq!(f.primitive_element(), 3);
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(257).is_err());
    }

    #[test]
    fn rs_constant_code() {
        let f = PrimeField::new(5).unwrap();
        let code = rs_code(f, 1, vec![0, 1, 2, 3]).unwrap();
        assert_eq!(words(&code), ["0,0,0,0", "1,1,1,1", "2,2,2,2", "3,3,3,3", "4,4,4,4"]);
    }

    #[test]
    fn rs_full_space() {
        let f = PrimeField::new(3).unwrap();
        let code = rs_code(f, 3, vec![0, 1, 2]).unwrap();
        assert_eq!(code.size(), 27);
    }

    #[test]
    fn rs_is_mds_on_small_instances() {
        let f = PrimeField::new(5).unwrap();
        let code = rs_code(f, 2, vec![0, 1, 2, 3]).unwrap();
        assert_eq!(code.size(), 25);
        assert_eq!(min_hamming(&code), 3);
        for (p, n, k) in [(5, 5, 3), (7, 5, 2), (7, 4, 3), (3, 3, 1)] {
            let f = PrimeField::new(p).unwrap();
            let code = rs_code(f, k, (0..n as u32).collect()).unwrap();
            assert_eq!(min_hamming(&code), n - k + 1, "p={p} n={n} k={k}");
        }
    }

    #[test]
    fn rs_parameter_errors() {
        let f = PrimeField::new(5).unwrap();
        assert!(rs_code(f, 2, vec![0, 1, 1]).is_err());
        assert!(rs_code(f, 4, vec![0, 1, 2]).is_err());
        assert!(rs_code(f, 1, vec![0, 1, 2, 3, 4, 0]).is_err());
        assert!(rs_code(f, 1, vec![0, 5]).is_err());
    }

    #[test]
    fn rs_streaming_matches_materialized() {
        let f = PrimeField::new(5).unwrap();
        let rs = ReedSolomon::new(f, 2, vec![4, 2, 0]).unwrap();
        assert_eq!(rs.codewords().count(), 25);
        assert!(matches!(rs.to_code(10), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn cyclic_rs_code_has_distance_two() {
        let f = PrimeField::new(5).unwrap();
        let g = f.primitive_element();
        let alpha: Vec<u32> = (0..4).map(|i| f.pow(g, i)).collect();
        let code = rs_code(f, 2, alpha).unwrap();
        // cyclic: every shift of a codeword is a codeword
        for c in code.codewords() {
            let mut shifted = c.symbols().to_vec();
            shifted.rotate_left(1);
            assert!(code.contains(&Word::new(shifted, 5).unwrap()));
        }
        assert_eq!(min_levenshtein_distance(&code).unwrap(), 2);
    }

    #[test]
    fn rs_search_constant_codes() {
        let f = PrimeField::new(7).unwrap();
        let report = rs_search_eval_points(f, 4, 1, 10_000, 1).unwrap();
        assert!(report.exhaustive);
        assert_eq!(report.achieved_distance, 8);
        assert_eq!(report.target, 8);
        assert!(report.met);
        // first candidate already reaches 2n, so the search stops there
        assert_eq!(report.examined, 1);
    }

    #[test]
    fn rs_search_target_clipping() {
        let f = PrimeField::new(5).unwrap();
        let report = rs_search_eval_points(f, 4, 1, 10_000, 1).unwrap();
        assert_eq!(report.nominal_target, 8);
        let report = rs_search_eval_points(f, 4, 3, 10, 1).unwrap();
        assert_eq!(report.nominal_target, 0);
        assert_eq!(report.target, 2);
        assert!(!report.exhaustive);
        assert_eq!(report.examined, 10);
    }

    #[test]
    fn rs_search_is_seed_deterministic() {
        let f = PrimeField::new(11).unwrap();
        let a = rs_search_eval_points(f, 5, 2, 40, 9).unwrap();
        let b = rs_search_eval_points(f, 5, 2, 40, 9).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn vt_examples() {
        assert_eq!(words(&vt_binary(4, 0).unwrap()), ["0,0,0,0", "0,1,1,0", "1,0,0,1", "1,1,1,1"]);
        assert_eq!(words(&vt_binary(1, 0).unwrap()), ["0"]);
        assert_eq!(words(&vt_binary(1, 1).unwrap()), ["1"]);
        assert!(vt_binary(3, 4).is_err());
        assert!(vt_binary(0, 0).is_err());
    }

    #[test]
    fn vt_syndromes_partition_the_space() {
        for n in 1..=8 {
            let total: usize = (0..=n).map(|a| vt_binary(n, a).map_or(0, |c| c.size())).sum();
            assert_eq!(total, 1 << n);
        }
    }

    #[test]
    fn vt_qary_small_instance() {
        let code = vt_qary(2, 3, 0, 0).unwrap();
        // alpha_1 = [s1 >= s0] must be even, so s1 < s0, and s0 + s1 = 0 (mod 3)
        assert_eq!(words(&code), ["2,1"]);
        for c in code.codewords() {
            assert_eq!(vt_qary_syndrome(c.symbols(), 3), (0, 0));
        }
    }

    #[test]
    fn vt_qary_constant_words() {
        let (n, q) = (4usize, 3u16);
        for c in 0..q as u8 {
            let w = vec![c; n];
            let weighted = (1..n).sum::<usize>() % n;
            let total = (n * usize::from(c)) % usize::from(q);
            assert_eq!(vt_qary_syndrome(&w, q), (weighted, total));
            let code = vt_qary(n, q, weighted, total).unwrap();
            assert!(code.contains(&Word::new(w, q).unwrap()));
        }
    }

    #[test]
    fn vt_qary_partitions_the_space() {
        for n in 1..=5 {
            let mut total = 0;
            for a in 0..n {
                for b in 0..3 {
                    total += vt_qary(n, 3, a, b).map_or(0, |c| c.size());
                }
            }
            assert_eq!(total, 3usize.pow(n as u32));
        }
    }

    #[test]
    fn vt_qary_parameter_errors() {
        assert!(vt_qary(3, 2, 0, 0).is_err());
        assert!(vt_qary(3, 3, 3, 0).is_err());
        assert!(vt_qary(3, 3, 0, 3).is_err());
    }

    #[test]
    fn helberg_weights() {
        let w = HelbergWeights::new(2, 2, 6);
        let got: Vec<i64> = w.as_slice().iter().map(|v| v.to_i64().unwrap()).collect();
        assert_eq!(got, [1, 2, 4, 7, 12, 20]);
        assert_eq!(w.get(0), BigInt::zero());
        // single-term recursion over GF(2) gives v_i = i
        let w = HelbergWeights::new(2, 1, 5);
        let got: Vec<i64> = w.as_slice().iter().map(|v| v.to_i64().unwrap()).collect();
        assert_eq!(got, [1, 2, 3, 4, 5]);
        let w = HelbergWeights::new(3, 2, 5);
        let got: Vec<i64> = w.as_slice().iter().map(|v| v.to_i64().unwrap()).collect();
        assert_eq!(got, [1, 3, 9, 25, 69]);
    }

    #[test]
    fn helberg_with_s1_is_vt() {
        for n in 2..=8 {
            for a in 0..=n {
                assert_eq!(helberg(2, n, 1, a as u64, None).unwrap(), vt_binary(n, a).unwrap());
            }
        }
    }

    #[test]
    fn helberg_parameter_errors() {
        assert!(helberg(2, 5, 0, 0, None).is_err());
        assert!(helberg(2, 5, 5, 0, None).is_err());
        assert!(helberg(2, 5, 2, 20, None).is_err());
        assert!(helberg(2, 5, 2, 0, Some(10)).is_err());
        assert!(helberg(2, 5, 2, 0, Some(25)).is_ok());
    }

    #[test]
    fn code_file_round_trip() {
        let code = vt_qary(3, 3, 1, 2).unwrap();
        let text = code.to_file_string();
        assert!(text.starts_with("q=3 n=3\n"));
        assert_eq!(Code::parse_file(&text).unwrap(), code);
        assert!(Code::parse_file("q=2\n0,1\n").is_err());
        assert!(Code::parse_file("q=2 n=2\n0,1,1\n").is_err());
        assert!(Code::parse_file("q=2 n=2\n0,1\n0,1\n").is_err());
    }

    #[test]
    fn rate_of_full_space_is_one() {
        let f = PrimeField::new(3).unwrap();
        let code = rs_code(f, 3, vec![0, 1, 2]).unwrap();
        assert!((code.rate() - 1.0).abs() < 1e-12);
    }
}
